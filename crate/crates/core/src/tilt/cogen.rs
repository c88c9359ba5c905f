//! The cogenerator-tilted algebra of a basic cogenerator `E`, computed twice:
//! as the opposite endomorphism ring of `(E -> Q(E)) (+) (0 -> DA)` in the
//! homotopy category, and as `End(T_P)^op` for the `P`-special tilting module
//! over `Gamma = End(E)^op`.

use super::category::{
    is_algebra_iso, CatAlgebra, ComplexCategory, ModuleCategory, TwoTermComplex,
};
use super::tilting::{verify_tilting, TiltingCertificate};
use crate::algebra::StructAlgebra;
use crate::error::{Error, Result};
use crate::linalg::matalg::Locality;
use crate::linalg::{Elem, Matrix};
use crate::module::decompose::iso_indecomposable;
use crate::module::standard::projective_basis;
use crate::module::{
    decompose, factorize, hom_space, injective, injective_envelope, is_injective, projective,
    simple, HomSpace, ModMap, Module, DEFAULT_SEED,
};
use crate::subrep::{ClosureStatus, GenClosureReport};
use std::sync::Arc;

/// A readable name for an indecomposable: `Q<v>`, `P<v>`, `S<v>` when it is
/// an indecomposable injective, projective or simple, else its dimensions.
pub fn summand_label(x: &Module) -> Result<String> {
    let alg = x.alg();
    for (prefix, make) in [
        ("S", simple as fn(_, _) -> _),
        ("Q", injective),
        ("P", projective),
    ] {
        for v in 0..alg.n_vertices() {
            let y: Module = make(alg, v);
            if y.dims() == x.dims() && iso_indecomposable(&y, x)?.is_some() {
                return Ok(format!("{prefix}{}", alg.vertices()[v]));
            }
        }
    }
    Ok(format!(
        "X{}",
        x.dims()
            .iter()
            .map(|d| d.to_string())
            .collect::<Vec<_>>()
            .join("")
    ))
}

/// Indecomposable summands of a basic module.
pub fn basic_summands(e: &Module) -> Result<Vec<Module>> {
    let d = decompose(e, DEFAULT_SEED)?;
    if d.classes.iter().any(|(_, k)| *k > 1) {
        return Err(Error::Precondition("module is not basic".into()));
    }
    Ok(d.classes.into_iter().map(|(x, _)| x).collect())
}

/// The summand isomorphic to `Q(v)` for every vertex `v`.
fn injective_positions(summands: &[Module]) -> Result<Vec<usize>> {
    let alg = summands
        .first()
        .map(|x| x.alg().clone())
        .ok_or_else(|| Error::Precondition("zero module".into()))?;
    (0..alg.n_vertices())
        .map(|v| {
            let q = injective(&alg, v);
            for (j, x) in summands.iter().enumerate() {
                if x.dims() == q.dims() && iso_indecomposable(&q, x)?.is_some() {
                    return Ok(j);
                }
            }
            Err(Error::Precondition(format!(
                "not a cogenerator: Q({}) is not a summand",
                alg.vertices()[v]
            )))
        })
        .collect()
}

/// `E` = the closure members together with the missing indecomposable
/// injectives.
pub fn cogenerator_completion(m: &Module, report: &GenClosureReport) -> Result<Module> {
    if report.status != ClosureStatus::CertifiedComplete {
        return Err(Error::CapReached(
            "closure is not certified complete".into(),
        ));
    }
    let alg = m.alg();
    let mut parts = report.members.clone();
    for v in 0..alg.n_vertices() {
        let q = injective(alg, v);
        if report.position(&q)?.is_none() {
            parts.push(q);
        }
    }
    if parts.is_empty() {
        return Ok(Module::zero(alg));
    }
    Module::direct_sum(&parts)
}

/// Right action of the basis element `a: s -> t` on `DA`, a map
/// `Q(t) -> Q(s)`; `a |-> rho(a)` identifies `A` with `End(DA)^op`.
pub fn right_action(alg: &Arc<StructAlgebra>, a: usize) -> Result<ModMap> {
    let f = alg.field().clone();
    let (s, t) = (alg.basis()[a].src, alg.basis()[a].tgt);
    let op = alg.opposite_arc();
    let (qt, qs) = (injective(alg, t), injective(alg, s));
    let (bt, bs) = (projective_basis(&op, t), projective_basis(&op, s));
    let comps = (0..alg.n_vertices())
        .map(|w| {
            let mut m = Matrix::zeros(&f, bs[w].len(), bt[w].len());
            for (r, &c) in bs[w].iter().enumerate() {
                for (x, coef) in alg.product(a, c) {
                    let col = bt[w]
                        .iter()
                        .position(|b| b == x)
                        .expect("homogeneous product");
                    m.set(r, col, coef.clone());
                }
            }
            m
        })
        .collect();
    ModMap::new(qt, qs, comps)
}

/// The cogenerator-tilted algebra `B` with its special idempotent (the
/// vertices `[v]`, listed first) and the identification of `eBe` with `A`.
pub struct CogenTilted {
    pub base: Arc<StructAlgebra>,
    pub e_mod: Module,
    pub summands: Vec<Module>,
    pub labels: Vec<String>,
    /// Summand isomorphic to `Q(v)`, per vertex.
    pub injective_at: Vec<usize>,
    /// Summands that are not injective; vertex `n + k` of `B` belongs to
    /// `non_injective[k]`.
    pub non_injective: Vec<usize>,
    pub cat: ComplexCategory,
    pub b: CatAlgebra,
    /// Image in `B` of every basis element of `A`.
    pub corner: Vec<Vec<Elem>>,
}

impl CogenTilted {
    pub fn alg(&self) -> &Arc<StructAlgebra> {
        &self.b.alg
    }

    pub fn n_special(&self) -> usize {
        self.base.n_vertices()
    }

    /// `eBe` as an algebra, with the images of the basis of `A` in it.
    pub fn corner_algebra(&self) -> Result<(StructAlgebra, Vec<Vec<Elem>>)> {
        let verts: Vec<usize> = (0..self.n_special()).collect();
        let (c, kept) = self.b.alg.corner(&verts)?;
        let phi = self
            .corner
            .iter()
            .map(|x| kept.iter().map(|&k| x[k].clone()).collect())
            .collect();
        Ok((c, phi))
    }

    pub fn corner_is_base(&self) -> Result<bool> {
        let (c, phi) = self.corner_algebra()?;
        Ok(is_algebra_iso(&self.base, &c, &phi))
    }
}

pub fn build_b(e_mod: &Module) -> Result<CogenTilted> {
    let alg = e_mod.alg().clone();
    let f = alg.field().clone();
    let summands = basic_summands(e_mod)?;
    let injective_at = injective_positions(&summands)?;
    let labels = summands
        .iter()
        .map(summand_label)
        .collect::<Result<Vec<_>>>()?;
    let non_injective: Vec<usize> = (0..summands.len())
        .filter(|&j| !is_injective(&summands[j]))
        .collect();
    let n = alg.n_vertices();
    let mut objects = vec![];
    let mut vlabels = vec![];
    for v in 0..n {
        objects.push(TwoTermComplex::stalk_top(&injective(&alg, v)));
        vlabels.push(format!("[{}]", alg.vertices()[v]));
    }
    for &j in &non_injective {
        objects.push(TwoTermComplex {
            d: injective_envelope(&summands[j])?.map,
        });
        vlabels.push(format!("<{}>", labels[j]));
    }
    let special = (0..objects.len()).map(|o| o < n).collect();
    let cat = ComplexCategory::new(objects)?;
    let b = CatAlgebra::build(&f, vlabels, special, &cat)?;
    for v in 0..b.alg.n_vertices() {
        let (c, _) = b.alg.corner(&[v])?;
        if c.regular().locality()? == Locality::NotLocal {
            return Err(Error::Falsified(format!(
                "idempotent {} is not primitive",
                b.alg.vertices()[v]
            )));
        }
    }
    let corner = (0..alg.dim())
        .map(|a| {
            let (s, t) = (alg.basis()[a].src, alg.basis()[a].tgt);
            let rho = right_action(&alg, a)?;
            let zero = ModMap::zero(&cat.objects[t].d.src, &cat.objects[s].d.src);
            let c = cat.homs[t][s].coords(&(zero, rho));
            b.element(t, s, &c)
        })
        .collect::<Result<Vec<_>>>()?;
    let out = CogenTilted {
        base: alg,
        e_mod: e_mod.clone(),
        summands,
        labels,
        injective_at,
        non_injective,
        cat,
        b,
        corner,
    };
    if !out.corner_is_base()? {
        return Err(Error::Falsified("eBe is not isomorphic to A".into()));
    }
    Ok(out)
}

/// A module `Hom(E, Y)` over `Gamma = End(E)^op`, with the Hom spaces
/// `Hom(E_k, Y)` giving its basis at each vertex.
pub struct YonedaModule {
    pub module: Module,
    pub spaces: Vec<HomSpace>,
}

/// `Gamma = End(E)^op` on the summands of `E` and the functor `Hom(E, -)`.
pub struct Yoneda {
    pub cat: ModuleCategory,
    pub gamma: CatAlgebra,
}

impl Yoneda {
    pub fn new(summands: Vec<Module>, labels: Vec<String>) -> Result<Yoneda> {
        let f = summands[0].field().clone();
        let special = summands.iter().map(is_injective).collect();
        let cat = ModuleCategory::new(summands)?;
        let gamma = CatAlgebra::build(&f, labels, special, &cat)?;
        Ok(Yoneda { cat, gamma })
    }

    pub fn module(&self, y: &Module) -> Result<YonedaModule> {
        let alg = &self.gamma.alg;
        let spaces = self
            .cat
            .objects
            .iter()
            .map(|x| hom_space(x, y))
            .collect::<Result<Vec<_>>>()?;
        let dims = spaces.iter().map(|h| h.dim()).collect();
        let maps = alg
            .gens()
            .iter()
            .map(|&gi| {
                let (s, t, c) = &self.gamma.under[gi];
                let u = self.cat.morphism(*s, *t, c);
                let cols: Vec<Vec<Elem>> = spaces[*t]
                    .basis
                    .iter()
                    .map(|psi| spaces[*s].coords(&u.then(psi)))
                    .collect();
                Matrix::from_cols(y.field(), spaces[*s].dim(), &cols)
            })
            .collect();
        Ok(YonedaModule {
            module: Module::new(alg.clone(), dims, maps)?,
            spaces,
        })
    }

    pub fn map(&self, a: &YonedaModule, b: &YonedaModule, f: &ModMap) -> Result<ModMap> {
        let comps = (0..a.spaces.len())
            .map(|k| {
                let cols: Vec<Vec<Elem>> = a.spaces[k]
                    .basis
                    .iter()
                    .map(|psi| b.spaces[k].coords(&psi.then(f)))
                    .collect();
                Matrix::from_cols(f.src.field(), b.spaces[k].dim(), &cols)
            })
            .collect();
        ModMap::new(a.module.clone(), b.module.clone(), comps)
    }
}

/// Per object of the homotopy category: `T_o = coker Hom(E, d_o)` with the
/// data needed to transport chain maps.
struct CokerData {
    top: YonedaModule,
    proj: ModMap,
    section: Vec<Matrix>,
}

/// The tilting route: `Gamma`, the special tilting module `T_P` and the
/// comparison of `End(T_P)^op` with `B`.
pub struct GammaRoute {
    pub yoneda: Yoneda,
    /// `P = Hom(E, DA)`.
    pub p: Module,
    /// Summands of `T_P` in the vertex order of `B`.
    pub t_parts: Vec<Module>,
    pub t: Module,
    pub certificate: TiltingCertificate,
    /// `End(T_P)^op`.
    pub end_t: CatAlgebra,
    /// Image in `End(T_P)^op` of every basis element of `B`.
    pub b_iso: Vec<Vec<Elem>>,
    cokers: Vec<CokerData>,
}

pub(crate) fn right_inverse(m: &Matrix) -> Result<Matrix> {
    let f = m.field().clone();
    let (x, _) = m
        .solve_affine(&Matrix::identity(&f, m.rows()))?
        .ok_or_else(|| Error::Falsified("projection is not surjective".into()))?;
    Ok(x)
}

impl GammaRoute {
    pub fn new(b: &CogenTilted) -> Result<GammaRoute> {
        let yoneda = Yoneda::new(b.summands.clone(), b.labels.clone())?;
        let mut cokers = vec![];
        for obj in &b.cat.objects {
            let bottom = yoneda.module(&obj.d.src)?;
            let top = yoneda.module(&obj.d.tgt)?;
            let dmap = yoneda.map(&bottom, &top, &obj.d)?;
            let proj = factorize(&dmap)?.cokernel;
            let section = proj
                .comps
                .iter()
                .map(right_inverse)
                .collect::<Result<Vec<_>>>()?;
            cokers.push(CokerData { top, proj, section });
        }
        let t_parts: Vec<Module> = cokers.iter().map(|c| c.proj.tgt.clone()).collect();
        let n = b.n_special();
        let p = Module::direct_sum(&t_parts[..n])?;
        let t = Module::direct_sum(&t_parts)?;
        let certificate = verify_tilting(&t, Some(&p))?;
        let tcat = ModuleCategory::new(t_parts.clone())?;
        let end_t = CatAlgebra::build(
            b.base.field(),
            b.alg().vertices().to_vec(),
            b.alg().special().to_vec(),
            &tcat,
        )?;
        let mut route = GammaRoute {
            yoneda,
            p,
            t_parts,
            t,
            certificate,
            end_t,
            b_iso: vec![],
            cokers,
        };
        let mut b_iso = vec![];
        for (s, t, c) in &b.b.under {
            let h = route.transport(b, *s, *t, c)?;
            b_iso.push(route.end_t.element(*s, *t, &tcat.homs[*s][*t].coords(&h))?);
        }
        route.b_iso = b_iso;
        Ok(route)
    }

    /// The map `T_s -> T_t` induced by a morphism `s -> t` of the homotopy
    /// category.
    pub fn transport(&self, b: &CogenTilted, s: usize, t: usize, c: &[Elem]) -> Result<ModMap> {
        let (_, phi1) = b.cat.morphism(s, t, c);
        let (cs, ct) = (&self.cokers[s], &self.cokers[t]);
        let y1 = self.yoneda.map(&cs.top, &ct.top, &phi1)?;
        let comps = (0..y1.comps.len())
            .map(|v| ct.proj.comps[v].mul(&y1.comps[v]).mul(&cs.section[v]))
            .collect();
        ModMap::new(cs.proj.tgt.clone(), ct.proj.tgt.clone(), comps)
    }

    pub fn gamma(&self) -> &Arc<StructAlgebra> {
        &self.yoneda.gamma.alg
    }

    /// Whether `b_iso` is an algebra isomorphism `B -> End(T_P)^op`.
    pub fn agrees_with(&self, b: &CogenTilted) -> bool {
        is_algebra_iso(b.alg(), &self.end_t.alg, &self.b_iso)
    }

    /// `D T_P` as a `B`-module: `D(T_o)` at each vertex.
    pub fn dual_t_over(&self, b: &CogenTilted) -> Result<Module> {
        let balg = b.alg();
        let dims = self.t_parts.iter().map(|x| x.dim()).collect();
        let maps = balg
            .gens()
            .iter()
            .map(|&gi| {
                let (s, t, c) = &b.b.under[gi];
                Ok(self.transport(b, *s, *t, c)?.full().transpose())
            })
            .collect::<Result<Vec<_>>>()?;
        Module::new(balg.clone(), dims, maps)
    }
}

/// Whether two modules have the same indecomposable summands up to
/// isomorphism.
pub fn same_add(x: &Module, y: &Module) -> Result<bool> {
    let a = decompose(x, DEFAULT_SEED)?.classes;
    let b = decompose(y, DEFAULT_SEED)?.classes;
    if a.len() != b.len() {
        return Ok(false);
    }
    for (p, _) in &a {
        let mut hit = false;
        for (q, _) in &b {
            if iso_indecomposable(p, q)?.is_some() {
                hit = true;
                break;
            }
        }
        if !hit {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A `P`-special tilting module from the left `add P`-approximation of
/// `Gamma` whose maps are taken in the given order; different orders give
/// different sequences with the same add-closure.
pub fn special_tilting_from(p: &Module, order: &[usize]) -> Result<Module> {
    use super::tilting::regular_module;
    let reg = regular_module(p)?;
    let h = hom_space(&reg, p)?;
    let f = p.field().clone();
    let maps: Vec<ModMap> = order
        .iter()
        .filter(|&&i| i < h.dim())
        .map(|&i| h.basis[i].clone())
        .collect();
    // greedy selection until the composites with End(P) span Hom(Gamma, P)
    let end = hom_space(p, p)?;
    let mut chosen: Vec<ModMap> = vec![];
    let mut span: Vec<Vec<Elem>> = vec![];
    let rank = |s: &[Vec<Elem>]| crate::algebra::structalg::basis_of_span(&f, h.dim(), s).len();
    for psi in maps {
        let mut trial = span.clone();
        trial.push(h.coords(&psi));
        if rank(&trial) == rank(&span) {
            continue;
        }
        for g in &end.basis {
            span.push(h.coords(&psi.then(g)));
        }
        chosen.push(psi);
    }
    let parts = vec![p.clone(); chosen.len()];
    let tgt = Module::direct_sum(&parts)?;
    let approx =
        crate::module::hom::block_map(&reg, &tgt, std::slice::from_ref(&reg), &parts, &|i, _| {
            Some(chosen[i].clone())
        });
    let coker = factorize(&approx)?.cokernel.tgt;
    p.direct_sum_with(&coker)
}
