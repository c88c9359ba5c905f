//! The `n`-subspace quiver (arrows `a_i: i -> 0`) and the module
//! `M = DA (+) S(0)` with every arrow acting by `diag(1, 0)` on `K^2`.

use crate::algebra::{build_algebra, Arrow, PathBasisAlgebra, Quiver};
use crate::error::Result;
use crate::linalg::{Field, Matrix};
use crate::module::Module;

pub fn subspace_quiver(n: usize) -> Quiver {
    let vertices = (0..=n).map(|i| i.to_string()).collect();
    let arrows = (1..=n)
        .map(|i| Arrow {
            name: format!("a{i}"),
            src: i,
            tgt: 0,
        })
        .collect();
    Quiver::new(vertices, arrows).expect("valid quiver")
}

pub fn subspace_algebra(n: usize, field: Field) -> Result<PathBasisAlgebra> {
    build_algebra(subspace_quiver(n), vec![], field)
}

/// `M` with `M_i = diag(1, 0)`, isomorphic to `(+)_i S(i) (+) Q(0)`.
pub fn subspace_module(a: &PathBasisAlgebra) -> Result<Module> {
    let f = a.field().clone();
    let n = a.n_vertices() - 1;
    let m = Matrix::from_i64(&f, &[vec![1, 0], vec![0, 0]]);
    Module::new(a.structure().clone(), vec![2; n + 1], vec![m; n])
}
