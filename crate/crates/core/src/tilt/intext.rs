//! The intermediate extension `c: mod A -> mod B` and restriction along the
//! special idempotent.
//!
//! A `B`-module is a contravariant functor on the objects `X -> Q` of the
//! homotopy category; `c(M)` sends `X -> Q` to the dual of
//! `Hom(M, Q) / d Hom(M, X)`.

use super::cogen::{CogenTilted, GammaRoute};
use crate::algebra::StructAlgebra;
use crate::error::{Error, Result};
use crate::linalg::matalg::Quotient;
use crate::linalg::{Elem, Matrix};
use crate::module::{
    ext1_dim, hom_dim, hom_space, idim, injective, is_isomorphic, socle_dims, top_dims, HomSpace,
    Module, DEFAULT_SEED,
};
use std::sync::Arc;

struct ObjectSpace {
    top: HomSpace,
    quotient: Quotient,
}

pub fn intermediate_extension(m: &Module, b: &CogenTilted) -> Result<Module> {
    m.same_algebra(&b.e_mod)?;
    let f = m.field().clone();
    let spaces = b
        .cat
        .objects
        .iter()
        .map(|o| {
            let top = hom_space(m, &o.d.tgt)?;
            let bottom = hom_space(m, &o.d.src)?;
            let sub: Vec<Vec<Elem>> = bottom
                .basis
                .iter()
                .map(|u| top.coords(&u.then(&o.d)))
                .collect();
            let quotient = Quotient::new(&f, top.dim(), &sub);
            Ok(ObjectSpace { top, quotient })
        })
        .collect::<Result<Vec<_>>>()?;
    let balg = b.alg();
    let dims = spaces.iter().map(|s| s.quotient.dim()).collect();
    let maps = balg
        .gens()
        .iter()
        .map(|&gi| {
            let (s, t, c) = &b.b.under[gi];
            let (_, phi1) = b.cat.morphism(*s, *t, c);
            let (xs, xt) = (&spaces[*s], &spaces[*t]);
            // covariant map on Hom(M, Q) / d Hom(M, X), then dualised
            let cols: Vec<Vec<Elem>> = xs
                .quotient
                .complement
                .iter()
                .map(|&j| {
                    xt.quotient
                        .project(&xt.top.coords(&xs.top.basis[j].then(&phi1)))
                })
                .collect();
            Matrix::from_cols(&f, xt.quotient.dim(), &cols).transpose()
        })
        .collect();
    Module::new(balg.clone(), dims, maps)
}

/// The `A`-module `eX` through the identification `eBe = A`.
pub fn restrict_e(x: &Module, b: &CogenTilted) -> Result<Module> {
    restrict_to_corner(x, b.alg(), &b.base, &b.corner)
}

/// `eX` as a module over `base`, where `corner[a]` is the image in `alg` of
/// the basis element `a` of `base` and `e` sums the first vertices.
pub fn restrict_to_corner(
    x: &Module,
    alg: &Arc<StructAlgebra>,
    base: &Arc<StructAlgebra>,
    corner: &[Vec<Elem>],
) -> Result<Module> {
    if x.alg().fingerprint() != alg.fingerprint() {
        return Err(Error::Precondition(
            "module is not over the algebra with this corner".into(),
        ));
    }
    let f = x.field().clone();
    let dims: Vec<usize> = (0..base.n_vertices()).map(|v| x.dims()[v]).collect();
    let maps = base
        .gens()
        .iter()
        .map(|&gi| {
            let g = &base.basis()[gi];
            let mut acc = Matrix::zeros(&f, dims[g.tgt], dims[g.src]);
            for (k, c) in corner[gi].iter().enumerate() {
                if !f.is_zero(c) {
                    acc = acc.add(&x.act(k).scale(c));
                }
            }
            acc
        })
        .collect();
    Module::new(base.clone(), dims, maps)
}

/// `D(eB)`: the sum of the indecomposable injectives at the special vertices.
pub fn dual_eb(b: &CogenTilted) -> Result<Module> {
    let parts: Vec<Module> = (0..b.n_special()).map(|v| injective(b.alg(), v)).collect();
    Module::direct_sum(&parts)
}

/// `DA` over the base algebra.
pub fn dual_regular(b: &CogenTilted) -> Result<Module> {
    let parts: Vec<Module> = (0..b.n_special()).map(|v| injective(&b.base, v)).collect();
    Module::direct_sum(&parts)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Stability {
    /// No socle at a non-special vertex: `x` is cogenerated by `D(eB)`.
    pub stable: bool,
    /// No top at a non-special vertex: `x` is generated by `Be`.
    pub costable: bool,
}

pub fn stability_flags(x: &Module, b: &CogenTilted) -> Stability {
    let n = b.n_special();
    Stability {
        stable: socle_dims(x).iter().skip(n).all(|&d| d == 0),
        costable: top_dims(x).iter().skip(n).all(|&d| d == 0),
    }
}

/// Dimension vector of `c(N)` predicted from `A`-side data: `dim N` at the
/// special vertices and `[N, Q(E_j)] - [N, E_j]` at the others.
pub fn predicted_dims(n: &Module, b: &CogenTilted) -> Result<Vec<usize>> {
    let mut out = n.dims().to_vec();
    for obj in b.cat.objects.iter().skip(b.n_special()) {
        out.push(hom_dim(n, &obj.d.tgt)? - hom_dim(n, &obj.d.src)?);
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct IdentityCheck {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

/// Checks `c(E) = D T_P`, `c(DA) = D(eB)`, `idim c(X) <= 1` and
/// `Ext^1(c(N), c(X)) = 0` for the summands `X` of `E` and the given `N`.
pub fn check_int_ext_theorem(
    b: &CogenTilted,
    route: &GammaRoute,
    samples: &[Module],
) -> Result<Vec<IdentityCheck>> {
    let mut out = vec![];
    let ce = intermediate_extension(&b.e_mod, b)?;
    let dt = route.dual_t_over(b)?;
    let iso = is_isomorphic(&ce, &dt, DEFAULT_SEED)?.is_some();
    out.push(IdentityCheck {
        name: "c(E) = D T_P".into(),
        pass: iso,
        detail: format!("dims {:?}", ce.dims()),
    });
    let cda = intermediate_extension(&dual_regular(b)?, b)?;
    let deb = dual_eb(b)?;
    let iso = is_isomorphic(&cda, &deb, DEFAULT_SEED)?.is_some();
    out.push(IdentityCheck {
        name: "c(DA) = D(eB)".into(),
        pass: iso,
        detail: format!("dims {:?}", cda.dims()),
    });
    let cx: Vec<Module> = b
        .summands
        .iter()
        .map(|x| intermediate_extension(x, b))
        .collect::<Result<_>>()?;
    let mut worst = 0;
    let mut ok = true;
    for c in &cx {
        match idim(c, 1)? {
            Some(d) => worst = worst.max(d),
            None => ok = false,
        }
    }
    out.push(IdentityCheck {
        name: "idim c(X) <= 1".into(),
        pass: ok,
        detail: if ok {
            format!("max {worst}")
        } else {
            "exceeds 1".into()
        },
    });
    let mut bad = vec![];
    for (i, n) in samples.iter().enumerate() {
        let cn = intermediate_extension(n, b)?;
        for (j, c) in cx.iter().enumerate() {
            let e = ext1_dim(&cn, c)?;
            if e != 0 {
                bad.push(format!("sample {i} against summand {j}: {e}"));
            }
        }
    }
    out.push(IdentityCheck {
        name: "Ext^1(c(N), c(X)) = 0".into(),
        pass: bad.is_empty(),
        detail: if bad.is_empty() {
            format!("{} samples", samples.len())
        } else {
            bad.join("; ")
        },
    });
    Ok(out)
}
