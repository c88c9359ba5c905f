//! Closure of a module under quotients of finite direct sums.
//!
//! A class `S` of indecomposables (containing the summands of `m`) is
//! quotient-closed as soon as every quotient `Y / <s>` of a sum `Y` of
//! members by a simple submodule `<s>` decomposes into members: an arbitrary
//! quotient factors through a chain of such steps. For a socle vector `s` at
//! vertex `v`, the components lying in copies of one member `X` span at most
//! `dim soc_v X` dimensions, so after a change of basis in the copies it
//! suffices to take `Y = (+)_X X^{dim soc_v X}`. Each round enumerates these
//! `s` up to scalars; the iteration stops at a fixed point or a cap.

use super::enumerate::subspaces;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::module::decompose::{invariant_key, iso_indecomposable};
use crate::module::standard::socle_bases;
use crate::module::{decompose, hom_space, quotient, Module, DEFAULT_SEED};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClosureStatus {
    CertifiedComplete,
    CapReached,
}

impl ClosureStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            ClosureStatus::CertifiedComplete => "CertifiedComplete",
            ClosureStatus::CapReached => "CapReached",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Largest dimension of a member.
    pub dim_cap: usize,
    /// Largest number of copies of one member in a sum.
    pub copy_cap: usize,
    /// Largest total number of socle vectors examined.
    pub budget: u64,
}

impl Caps {
    pub fn for_module(m: &Module) -> Caps {
        Caps {
            dim_cap: 4 * m.dim(),
            copy_cap: m.dim(),
            budget: 2_000_000,
        }
    }
}

#[derive(Clone, Debug)]
pub struct GenClosureReport {
    pub seed: Module,
    /// Indecomposable representatives, sorted by invariants.
    pub members: Vec<Module>,
    pub status: ClosureStatus,
    pub caps: Caps,
    /// Why the caps were hit, if they were.
    pub note: Option<String>,
    /// `dim Hom(seed, N)` per member; the evaluation map from that many
    /// copies of the seed onto `N` has been checked to be surjective.
    pub trace_copies: Vec<usize>,
}

impl GenClosureReport {
    /// Index of the member isomorphic to `x`, if any.
    pub fn position(&self, x: &Module) -> Result<Option<usize>> {
        find(&self.members, x)
    }
}

fn find(members: &[Module], x: &Module) -> Result<Option<usize>> {
    let key = invariant_key(x);
    for (i, y) in members.iter().enumerate() {
        if invariant_key(y) == key && iso_indecomposable(y, x)?.is_some() {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

/// Whether the images of all maps `m -> n` span `n`.
pub fn trace_surjective(m: &Module, n: &Module) -> Result<(bool, usize)> {
    let h = hom_space(m, n)?;
    let f = m.field();
    let ok = (0..n.dims().len()).all(|v| {
        let parts: Vec<Matrix> = h.basis.iter().map(|b| b.comps[v].clone()).collect();
        let d = n.dims()[v];
        d == 0 || (!parts.is_empty() && Matrix::hstack_all(f, d, &parts).rank() == d)
    });
    Ok((ok, h.dim()))
}

pub fn gen_closure(m: &Module, caps: Caps) -> Result<GenClosureReport> {
    let f = m.field().clone();
    let mut members: Vec<Module> = vec![];
    for x in decompose(m, DEFAULT_SEED)?.indecomposables() {
        if find(&members, &x)?.is_none() {
            members.push(x);
        }
    }
    let note = if f.is_finite() {
        close(&mut members, caps)?
    } else {
        Some("quotients cannot be enumerated over an infinite field".to_string())
    };
    members.sort_by_key(invariant_key);
    let mut trace_copies = vec![];
    for x in &members {
        let (ok, k) = trace_surjective(m, x)?;
        if !ok {
            return Err(Error::Falsified(
                "closure member is not generated by the seed".into(),
            ));
        }
        trace_copies.push(k);
    }
    let status = if note.is_some() {
        ClosureStatus::CapReached
    } else {
        ClosureStatus::CertifiedComplete
    };
    Ok(GenClosureReport {
        seed: m.clone(),
        members,
        status,
        caps,
        note,
        trace_copies,
    })
}

/// Runs the fixed-point iteration; returns the reason for stopping early.
fn close(members: &mut Vec<Module>, caps: Caps) -> Result<Option<String>> {
    let alg = members.first().map(|x| x.alg().clone());
    let Some(alg) = alg else { return Ok(None) };
    let f = alg.field().clone();
    let q = f.size().expect("finite field");
    let mut spent: u64 = 0;
    loop {
        let mut grew = false;
        for v in 0..alg.n_vertices() {
            let snapshot = members.clone();
            let mut parts = vec![];
            let mut socle_cols = vec![];
            for x in &snapshot {
                let s = socle_bases(x)[v].clone();
                let k = s.cols();
                if k > caps.copy_cap {
                    return Ok(Some(format!(
                        "{k} copies of a member needed, copy cap {}",
                        caps.copy_cap
                    )));
                }
                for _ in 0..k {
                    parts.push(x.clone());
                    socle_cols.push(s.clone());
                }
            }
            if parts.is_empty() {
                continue;
            }
            let y = Module::direct_sum(&parts)?;
            // socle of Y at v, block diagonal in the copies
            let soc = Matrix::block_diag(&f, &socle_cols);
            let d = soc.cols();
            let count = (q.saturating_pow(d as u32) - 1) / (q - 1);
            spent = spent.saturating_add(count);
            if spent > caps.budget {
                return Ok(Some(format!(
                    "enumeration budget {} exhausted",
                    caps.budget
                )));
            }
            for line in subspaces(&f, d, 1)? {
                let s = soc.mul(&line.transpose());
                let bases: Vec<Matrix> = (0..alg.n_vertices())
                    .map(|w| {
                        if w == v {
                            s.clone()
                        } else {
                            Matrix::zeros(&f, y.dims()[w], 0)
                        }
                    })
                    .collect();
                let quo = quotient(&y, &bases)?.tgt;
                for x in decompose(&quo, DEFAULT_SEED)?.indecomposables() {
                    if find(members, &x)?.is_none() {
                        if x.dim() > caps.dim_cap {
                            return Ok(Some(format!(
                                "member of dimension {} exceeds dimension cap {}",
                                x.dim(),
                                caps.dim_cap
                            )));
                        }
                        members.push(x);
                        grew = true;
                    }
                }
            }
        }
        if !grew {
            return Ok(None);
        }
    }
}

/// Closure under submodules of finite direct sums, via duality.
pub fn cogen_closure(m: &Module, caps: Caps) -> Result<GenClosureReport> {
    let r = gen_closure(&m.dual(), caps)?;
    let alg = m.alg();
    let mut members = r
        .members
        .iter()
        .map(|x| x.dual_over(alg))
        .collect::<Result<Vec<_>>>()?;
    members.sort_by_key(invariant_key);
    let trace_copies = members
        .iter()
        .map(|x| hom_space(x, m).map(|h| h.dim()))
        .collect::<Result<Vec<_>>>()?;
    Ok(GenClosureReport {
        seed: m.clone(),
        members,
        status: r.status,
        caps,
        note: r.note,
        trace_copies,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Field;
    use crate::module::{injective, projective, simple};
    use crate::subspace::{subspace_algebra, subspace_module};

    fn dims(r: &GenClosureReport) -> Vec<Vec<usize>> {
        r.members.iter().map(|x| x.dims().to_vec()).collect()
    }

    #[test]
    fn closure_of_example_is_add_m() {
        for n in [2usize, 3] {
            let a = subspace_algebra(n, Field::prime(3).unwrap()).unwrap();
            let m = subspace_module(&a).unwrap();
            let r = gen_closure(&m, Caps::for_module(&m)).unwrap();
            assert_eq!(r.status, ClosureStatus::CertifiedComplete);
            assert_eq!(r.members.len(), n + 2);
            let alg = a.structure();
            for v in 0..=n {
                assert!(r.position(&simple(alg, v)).unwrap().is_some());
            }
            assert!(r.position(&injective(alg, 0)).unwrap().is_some());
        }
    }

    #[test]
    fn projective_generator_reaches_everything() {
        let a = subspace_algebra(2, Field::prime(2).unwrap()).unwrap();
        let alg = a.structure();
        let ps: Vec<Module> = (0..3).map(|v| projective(alg, v)).collect();
        let g = Module::direct_sum(&ps).unwrap();
        let r = gen_closure(&g, Caps::for_module(&g)).unwrap();
        assert_eq!(r.status, ClosureStatus::CertifiedComplete);
        // type A_3: six indecomposables
        assert_eq!(r.members.len(), 6);
    }

    #[test]
    fn simple_injective_is_closed() {
        let a = subspace_algebra(2, Field::prime(2).unwrap()).unwrap();
        let s = simple(a.structure(), 1);
        let r = gen_closure(&s, Caps::for_module(&s)).unwrap();
        assert_eq!(dims(&r), vec![vec![0, 1, 0]]);
        let p = simple(a.structure(), 0);
        let c = cogen_closure(&p, Caps::for_module(&p)).unwrap();
        assert_eq!(dims(&c), vec![vec![1, 0, 0]]);
    }

    #[test]
    fn cogen_is_dual_of_gen() {
        let a = subspace_algebra(2, Field::prime(2).unwrap()).unwrap();
        let m = subspace_module(&a).unwrap();
        let c = cogen_closure(&m, Caps::for_module(&m)).unwrap();
        let g = gen_closure(&m.dual(), Caps::for_module(&m)).unwrap();
        assert_eq!(c.status, g.status);
        let mut from_g: Vec<Vec<usize>> = g.members.iter().map(|x| x.dims().to_vec()).collect();
        from_g.sort();
        let mut from_c = dims(&c);
        from_c.sort();
        assert_eq!(from_c, from_g);
    }

    #[test]
    fn kronecker_hits_a_cap() {
        use crate::algebra::{build_algebra, Arrow, Quiver};
        let f = Field::prime(2).unwrap();
        let qv = Quiver::new(
            vec!["0".into(), "1".into()],
            vec![
                Arrow {
                    name: "a".into(),
                    src: 0,
                    tgt: 1,
                },
                Arrow {
                    name: "b".into(),
                    src: 0,
                    tgt: 1,
                },
            ],
        )
        .unwrap();
        let a = build_algebra(qv, vec![], f).unwrap();
        let p = projective(a.structure(), 0);
        let caps = Caps {
            budget: 5_000,
            ..Caps::for_module(&p)
        };
        let r = gen_closure(&p, caps).unwrap();
        assert_eq!(r.status, ClosureStatus::CapReached);
        assert!(r.note.is_some());
    }
}
