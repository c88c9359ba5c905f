//! The generator-cotilted algebra of a basic generator `E`: the opposite
//! endomorphism ring of `(P(E) -> E) (+) (A -> 0)` in the homotopy category,
//! its intermediate extension `c(M)(P -> X) = coker(Hom(X, M) -> Hom(P, M))`,
//! the `Q`-special cotilting module over `End(E)^op`, and the comparison with
//! the cogenerator-tilted algebra of `DE` over the opposite algebra.

use super::category::{
    complex_iso, corner_is_iso, is_algebra_iso, CatAlgebra, ComplexCategory, ModuleCategory,
    TwoTermComplex,
};
use super::cogen::{basic_summands, right_inverse, summand_label, CogenTilted, Yoneda};
use super::intext::{restrict_to_corner, IdentityCheck};
use super::tilting::{verify_cotilting, TiltingCertificate};
use crate::algebra::StructAlgebra;
use crate::error::{Error, Result};
use crate::linalg::matalg::{Locality, Quotient};
use crate::linalg::{Elem, Matrix};
use crate::module::decompose::iso_indecomposable;
use crate::module::standard::projective_hom;
use crate::module::{
    ext1_dim, factorize, hom_space, is_isomorphic, is_projective, pdim, projective,
    projective_cover, HomSpace, ModMap, Module, DEFAULT_SEED,
};
use crate::subrep::{ClosureStatus, GenClosureReport};
use std::sync::Arc;

/// `E` = the closure members together with the missing indecomposable
/// projectives.
pub fn generator_completion(m: &Module, report: &GenClosureReport) -> Result<Module> {
    if report.status != ClosureStatus::CertifiedComplete {
        return Err(Error::CapReached(
            "closure is not certified complete".into(),
        ));
    }
    let alg = m.alg();
    let mut parts = report.members.clone();
    for v in 0..alg.n_vertices() {
        let p = projective(alg, v);
        if report.position(&p)?.is_none() {
            parts.push(p);
        }
    }
    if parts.is_empty() {
        return Ok(Module::zero(alg));
    }
    Module::direct_sum(&parts)
}

fn projective_positions(summands: &[Module]) -> Result<Vec<usize>> {
    let alg = summands
        .first()
        .map(|x| x.alg().clone())
        .ok_or_else(|| Error::Precondition("zero module".into()))?;
    (0..alg.n_vertices())
        .map(|v| {
            let p = projective(&alg, v);
            for (j, x) in summands.iter().enumerate() {
                if x.dims() == p.dims() && iso_indecomposable(&p, x)?.is_some() {
                    return Ok(j);
                }
            }
            Err(Error::Precondition(format!(
                "not a generator: P({}) is not a summand",
                alg.vertices()[v]
            )))
        })
        .collect()
}

/// The generator-cotilted algebra with its special idempotent (vertices
/// `[v]`, listed first) and the identification of `eBe` with `A`.
pub struct GenCotilted {
    pub base: Arc<StructAlgebra>,
    pub e_mod: Module,
    pub summands: Vec<Module>,
    pub labels: Vec<String>,
    pub projective_at: Vec<usize>,
    /// Vertex `n + k` belongs to `non_projective[k]`.
    pub non_projective: Vec<usize>,
    pub cat: ComplexCategory,
    pub b: CatAlgebra,
    pub corner: Vec<Vec<Elem>>,
}

impl GenCotilted {
    pub fn alg(&self) -> &Arc<StructAlgebra> {
        &self.b.alg
    }

    pub fn n_special(&self) -> usize {
        self.base.n_vertices()
    }

    pub fn corner_is_base(&self) -> Result<bool> {
        corner_is_iso(&self.base, &self.b.alg, &self.corner, self.n_special())
    }
}

pub fn build_b_generator(e_mod: &Module) -> Result<GenCotilted> {
    let alg = e_mod.alg().clone();
    let f = alg.field().clone();
    let summands = basic_summands(e_mod)?;
    let projective_at = projective_positions(&summands)?;
    let labels = summands
        .iter()
        .map(summand_label)
        .collect::<Result<Vec<_>>>()?;
    let non_projective: Vec<usize> = (0..summands.len())
        .filter(|&j| !is_projective(&summands[j]))
        .collect();
    let n = alg.n_vertices();
    let mut objects = vec![];
    let mut vlabels = vec![];
    for v in 0..n {
        objects.push(TwoTermComplex::stalk_bottom(&projective(&alg, v)));
        vlabels.push(format!("[{}]", alg.vertices()[v]));
    }
    for &j in &non_projective {
        objects.push(TwoTermComplex {
            d: projective_cover(&summands[j])?.map,
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
    let zero = Module::zero(&alg);
    let corner = (0..alg.dim())
        .map(|a| {
            let (s, t) = (alg.basis()[a].src, alg.basis()[a].tgt);
            // right multiplication by a: P(t) -> P(s)
            let rho = projective_hom(&alg, t, s, &alg.unit_vector(a));
            let c = cat.homs[t][s].coords(&(rho, ModMap::zero(&zero, &zero)));
            b.element(t, s, &c)
        })
        .collect::<Result<Vec<_>>>()?;
    let out = GenCotilted {
        base: alg,
        e_mod: e_mod.clone(),
        summands,
        labels,
        projective_at,
        non_projective,
        cat,
        b,
        corner,
    };
    if !out.corner_is_base()? {
        return Err(Error::Falsified("eBe is not isomorphic to A".into()));
    }
    Ok(out)
}

struct CokerSpace {
    top: HomSpace,
    quotient: Quotient,
}

/// `c(M)` over the generator-cotilted algebra.
pub fn intermediate_extension_generator(m: &Module, b: &GenCotilted) -> Result<Module> {
    m.same_algebra(&b.e_mod)?;
    let f = m.field().clone();
    let spaces = b
        .cat
        .objects
        .iter()
        .map(|o| {
            let top = hom_space(&o.d.src, m)?;
            let bottom = hom_space(&o.d.tgt, m)?;
            let sub: Vec<Vec<Elem>> = bottom
                .basis
                .iter()
                .map(|u| top.coords(&o.d.then(u)))
                .collect();
            let quotient = Quotient::new(&f, top.dim(), &sub);
            Ok(CokerSpace { top, quotient })
        })
        .collect::<Result<Vec<_>>>()?;
    let balg = b.alg();
    let dims = spaces.iter().map(|s| s.quotient.dim()).collect();
    let maps = balg
        .gens()
        .iter()
        .map(|&gi| {
            let (s, t, c) = &b.b.under[gi];
            let (phi0, _) = b.cat.morphism(*s, *t, c);
            let (xs, xt) = (&spaces[*s], &spaces[*t]);
            let cols: Vec<Vec<Elem>> = xt
                .quotient
                .complement
                .iter()
                .map(|&j| {
                    xs.quotient
                        .project(&xs.top.coords(&phi0.then(&xt.top.basis[j])))
                })
                .collect();
            Matrix::from_cols(&f, xs.quotient.dim(), &cols)
        })
        .collect();
    Module::new(balg.clone(), dims, maps)
}

pub fn restrict_e_generator(x: &Module, b: &GenCotilted) -> Result<Module> {
    restrict_to_corner(x, b.alg(), &b.base, &b.corner)
}

/// `Be`: the sum of the indecomposable projectives at the special vertices.
pub fn projective_eb(b: &GenCotilted) -> Result<Module> {
    let parts: Vec<Module> = (0..b.n_special()).map(|v| projective(b.alg(), v)).collect();
    Module::direct_sum(&parts)
}

/// `D Hom(Y, E)` over `Gamma = End(E)^op`, with the spaces `Hom(Y, E_k)`.
pub struct CoYonedaModule {
    pub module: Module,
    pub spaces: Vec<HomSpace>,
}

impl Yoneda {
    pub fn co_module(&self, y: &Module) -> Result<CoYonedaModule> {
        let alg = &self.gamma.alg;
        let spaces = self
            .cat
            .objects
            .iter()
            .map(|x| hom_space(y, x))
            .collect::<Result<Vec<_>>>()?;
        let dims = spaces.iter().map(|h| h.dim()).collect();
        let maps = alg
            .gens()
            .iter()
            .map(|&gi| {
                let (s, t, c) = &self.gamma.under[gi];
                let u = self.cat.morphism(*s, *t, c);
                let cols: Vec<Vec<Elem>> = spaces[*s]
                    .basis
                    .iter()
                    .map(|psi| spaces[*t].coords(&psi.then(&u)))
                    .collect();
                Matrix::from_cols(y.field(), spaces[*t].dim(), &cols).transpose()
            })
            .collect();
        Ok(CoYonedaModule {
            module: Module::new(alg.clone(), dims, maps)?,
            spaces,
        })
    }

    /// `D Hom(f, E)` for `f: Y -> Y'`.
    pub fn co_map(&self, a: &CoYonedaModule, b: &CoYonedaModule, f: &ModMap) -> Result<ModMap> {
        let comps = (0..a.spaces.len())
            .map(|k| {
                let cols: Vec<Vec<Elem>> = b.spaces[k]
                    .basis
                    .iter()
                    .map(|psi| a.spaces[k].coords(&f.then(psi)))
                    .collect();
                Matrix::from_cols(f.src.field(), a.spaces[k].dim(), &cols).transpose()
            })
            .collect();
        ModMap::new(a.module.clone(), b.module.clone(), comps)
    }
}

struct KernelData {
    top: CoYonedaModule,
    incl: ModMap,
    retract: Vec<Matrix>,
}

/// The cotilting route: `Gamma`, the `Q`-special cotilting module `C^Q`
/// and the comparison of `End(C^Q)^op` with the generator-cotilted algebra.
pub struct CoGammaRoute {
    pub yoneda: Yoneda,
    /// `Q = D Hom(A, E)`.
    pub q: Module,
    pub c_parts: Vec<Module>,
    pub c: Module,
    pub certificate: TiltingCertificate,
    pub end_c: CatAlgebra,
    pub b_iso: Vec<Vec<Elem>>,
    kernels: Vec<KernelData>,
}

impl CoGammaRoute {
    pub fn new(b: &GenCotilted) -> Result<CoGammaRoute> {
        let yoneda = Yoneda::new(b.summands.clone(), b.labels.clone())?;
        let mut kernels = vec![];
        for obj in &b.cat.objects {
            let top = yoneda.co_module(&obj.d.src)?;
            let bottom = yoneda.co_module(&obj.d.tgt)?;
            let dmap = yoneda.co_map(&top, &bottom, &obj.d)?;
            let incl = factorize(&dmap)?.kernel;
            let retract = incl
                .comps
                .iter()
                .map(|m| right_inverse(&m.transpose()).map(|r| r.transpose()))
                .collect::<Result<Vec<_>>>()?;
            kernels.push(KernelData { top, incl, retract });
        }
        let c_parts: Vec<Module> = kernels.iter().map(|k| k.incl.src.clone()).collect();
        let n = b.n_special();
        let q = Module::direct_sum(&c_parts[..n])?;
        let c = Module::direct_sum(&c_parts)?;
        let certificate = verify_cotilting(&c, Some(&q))?;
        let ccat = ModuleCategory::new(c_parts.clone())?;
        let end_c = CatAlgebra::build(
            b.base.field(),
            b.alg().vertices().to_vec(),
            b.alg().special().to_vec(),
            &ccat,
        )?;
        let mut route = CoGammaRoute {
            yoneda,
            q,
            c_parts,
            c,
            certificate,
            end_c,
            b_iso: vec![],
            kernels,
        };
        let mut b_iso = vec![];
        for (s, t, c) in &b.b.under {
            let h = route.transport(b, *s, *t, c)?;
            b_iso.push(route.end_c.element(*s, *t, &ccat.homs[*s][*t].coords(&h))?);
        }
        route.b_iso = b_iso;
        Ok(route)
    }

    /// The map `C_s -> C_t` induced by a morphism `s -> t`.
    pub fn transport(&self, b: &GenCotilted, s: usize, t: usize, c: &[Elem]) -> Result<ModMap> {
        let (phi0, _) = b.cat.morphism(s, t, c);
        let (ks, kt) = (&self.kernels[s], &self.kernels[t]);
        let y0 = self.yoneda.co_map(&ks.top, &kt.top, &phi0)?;
        let comps = (0..y0.comps.len())
            .map(|v| kt.retract[v].mul(&y0.comps[v]).mul(&ks.incl.comps[v]))
            .collect();
        ModMap::new(ks.incl.src.clone(), kt.incl.src.clone(), comps)
    }

    pub fn gamma(&self) -> &Arc<StructAlgebra> {
        &self.yoneda.gamma.alg
    }

    pub fn agrees_with(&self, b: &GenCotilted) -> bool {
        is_algebra_iso(b.alg(), &self.end_c.alg, &self.b_iso)
    }

    /// `D C^Q` as a module over the generator-cotilted algebra.
    pub fn dual_c_over(&self, b: &GenCotilted) -> Result<Module> {
        let balg = b.alg();
        let dims = self.c_parts.iter().map(|x| x.dim()).collect();
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

/// Checks `c(E) = D C^Q`, `c(A) = Be`, `pdim c(X) <= 1` and
/// `Ext^1(c(X), c(N)) = 0` for the summands `X` of `E` and the given `N`.
pub fn check_int_ext_theorem_generator(
    b: &GenCotilted,
    route: &CoGammaRoute,
    samples: &[Module],
) -> Result<Vec<IdentityCheck>> {
    let mut out = vec![];
    let ce = intermediate_extension_generator(&b.e_mod, b)?;
    let dc = route.dual_c_over(b)?;
    let iso = is_isomorphic(&ce, &dc, DEFAULT_SEED)?.is_some();
    out.push(IdentityCheck {
        name: "c(E) = D C^Q".into(),
        pass: iso,
        detail: format!("dims {:?}", ce.dims()),
    });
    let reg: Vec<Module> = (0..b.n_special()).map(|v| projective(&b.base, v)).collect();
    let ca = intermediate_extension_generator(&Module::direct_sum(&reg)?, b)?;
    let iso = is_isomorphic(&ca, &projective_eb(b)?, DEFAULT_SEED)?.is_some();
    out.push(IdentityCheck {
        name: "c(A) = Be".into(),
        pass: iso,
        detail: format!("dims {:?}", ca.dims()),
    });
    let cx: Vec<Module> = b
        .summands
        .iter()
        .map(|x| intermediate_extension_generator(x, b))
        .collect::<Result<_>>()?;
    let mut ok = true;
    let mut worst = 0;
    for c in &cx {
        match pdim(c, 1)? {
            Some(d) => worst = worst.max(d),
            None => ok = false,
        }
    }
    out.push(IdentityCheck {
        name: "pdim c(X) <= 1".into(),
        pass: ok,
        detail: if ok {
            format!("max {worst}")
        } else {
            "exceeds 1".into()
        },
    });
    let mut bad = vec![];
    for (i, n) in samples.iter().enumerate() {
        let cn = intermediate_extension_generator(n, b)?;
        for (j, c) in cx.iter().enumerate() {
            let e = ext1_dim(c, &cn)?;
            if e != 0 {
                bad.push(format!("summand {j} against sample {i}: {e}"));
            }
        }
    }
    out.push(IdentityCheck {
        name: "Ext^1(c(X), c(N)) = 0".into(),
        pass: bad.is_empty(),
        detail: if bad.is_empty() {
            format!("{} samples", samples.len())
        } else {
            bad.join("; ")
        },
    });
    Ok(out)
}

/// The anti-isomorphism between the cogenerator-tilted algebra of a
/// cogenerator `E` and the generator-cotilted algebra of a module
/// isomorphic to `DE`, induced by duality on complexes.
pub struct OppositeComparison {
    /// Vertex of the generator-cotilted algebra matching each vertex of the
    /// cogenerator-tilted one.
    pub vertex_map: Vec<usize>,
    /// Image of every basis element, read in the opposite algebra.
    pub phi: Vec<Vec<Elem>>,
}

pub fn compare_with_opposite(b: &CogenTilted, g: &GenCotilted) -> Result<OppositeComparison> {
    if !b.base.is_opposite_of(&g.base) {
        return Err(Error::Precondition("base algebras are not opposite".into()));
    }
    let n = b.n_special();
    let mut vertex_map: Vec<usize> = (0..n).collect();
    for &j in &b.non_injective {
        let dual = b.summands[j].dual();
        let mut hit = None;
        for (k, &jj) in g.non_projective.iter().enumerate() {
            if g.summands[jj].dims() == dual.dims()
                && iso_indecomposable(&g.summands[jj], &dual)?.is_some()
            {
                hit = Some(n + k);
                break;
            }
        }
        vertex_map.push(
            hit.ok_or_else(|| Error::Precondition("modules are not dual to each other".into()))?,
        );
    }
    if vertex_map.len() != g.alg().n_vertices() {
        return Err(Error::Precondition(
            "modules are not dual to each other".into(),
        ));
    }
    let isos = (0..vertex_map.len())
        .map(|o| {
            complex_iso(
                &b.cat.objects[o].dual(),
                &g.cat.objects[vertex_map[o]],
                DEFAULT_SEED,
            )?
            .ok_or_else(|| Error::Falsified("dual complexes are not isomorphic".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let phi =
        b.b.under
            .iter()
            .map(|(s, t, c)| {
                let (phi0, phi1) = b.cat.morphism(*s, *t, c);
                let (a_s, a_t) = (&isos[*s], &isos[*t]);
                let inv0 = a_t.0.inverse().expect("iso");
                let inv1 = a_t.1.inverse().expect("iso");
                let psi = (
                    inv0.then(&phi1.dual()).then(&a_s.0),
                    inv1.then(&phi0.dual()).then(&a_s.1),
                );
                let (ps, pt) = (vertex_map[*s], vertex_map[*t]);
                g.b.element(pt, ps, &g.cat.homs[pt][ps].coords(&psi))
            })
            .collect::<Result<Vec<_>>>()?;
    Ok(OppositeComparison { vertex_map, phi })
}

impl OppositeComparison {
    /// Whether `phi` is an isomorphism onto the opposite of the
    /// generator-cotilted algebra.
    pub fn is_anti_iso(&self, b: &CogenTilted, g: &GenCotilted) -> bool {
        is_algebra_iso(b.alg(), &g.alg().opposite(), &self.phi)
    }

    /// `DX` for a module `X` over the cogenerator-tilted algebra, as a
    /// module over the generator-cotilted one.
    pub fn dual_module(&self, x: &Module, b: &CogenTilted, g: &GenCotilted) -> Result<Module> {
        if x.alg().fingerprint() != b.alg().fingerprint() {
            return Err(Error::Precondition(
                "module is not over the cogenerator-tilted algebra".into(),
            ));
        }
        let f = x.field().clone();
        let dx = x.dual();
        let galg = g.alg();
        let inv = Matrix::from_cols(&f, galg.dim(), &self.phi)
            .inverse()
            .ok_or_else(|| Error::Falsified("comparison map is not bijective".into()))?;
        let mut dims = vec![0; galg.n_vertices()];
        for (o, &w) in self.vertex_map.iter().enumerate() {
            dims[w] = dx.dims()[o];
        }
        let maps = galg
            .gens()
            .iter()
            .map(|&gi| {
                let ge = &galg.basis()[gi];
                let mut acc = Matrix::zeros(&f, dims[ge.tgt], dims[ge.src]);
                for k in 0..inv.rows() {
                    let c = inv.get(k, gi);
                    if !f.is_zero(c) {
                        acc = acc.add(&dx.act(k).scale(c));
                    }
                }
                acc
            })
            .collect();
        Module::new(galg.clone(), dims, maps)
    }
}
