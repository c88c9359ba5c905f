//! Modules given by the action matrix of every algebra basis element.

use super::repr::Module;
use crate::algebra::StructAlgebra;
use crate::error::{Error, Result};
use crate::linalg::matrix::coords_in;
use crate::linalg::Matrix;
use std::sync::Arc;

#[derive(Clone, Debug)]
pub struct AlgMod {
    alg: Arc<StructAlgebra>,
    dim: usize,
    actions: Vec<Matrix>,
}

impl AlgMod {
    /// Validates shapes, the unit and the structure constants.
    pub fn new(alg: Arc<StructAlgebra>, dim: usize, actions: Vec<Matrix>) -> Result<AlgMod> {
        let f = alg.field().clone();
        if actions.len() != alg.dim() {
            return Err(Error::Dimension(format!(
                "{} actions for {} basis elements",
                actions.len(),
                alg.dim()
            )));
        }
        if actions.iter().any(|a| a.rows() != dim || a.cols() != dim) {
            return Err(Error::Dimension(
                "action matrices must be square of the module dimension".into(),
            ));
        }
        let mut unit = Matrix::zeros(&f, dim, dim);
        for v in 0..alg.n_vertices() {
            unit = unit.add(&actions[alg.idempotent(v)]);
        }
        if unit != Matrix::identity(&f, dim) {
            return Err(Error::Precondition(
                "the identity does not act as the identity".into(),
            ));
        }
        for i in 0..alg.dim() {
            for j in 0..alg.dim() {
                let lhs = actions[i].mul(&actions[j]);
                let mut rhs = Matrix::zeros(&f, dim, dim);
                for (r, c) in alg.product(i, j) {
                    rhs = rhs.add(&actions[*r].scale(c));
                }
                if lhs != rhs {
                    return Err(Error::Precondition(format!(
                        "action violates {} * {}",
                        alg.basis()[i].label,
                        alg.basis()[j].label
                    )));
                }
            }
        }
        Ok(AlgMod { alg, dim, actions })
    }

    pub fn from_module(m: &Module) -> AlgMod {
        let actions = (0..m.alg().dim()).map(|b| m.full_act(b)).collect();
        AlgMod {
            alg: m.alg().clone(),
            dim: m.dim(),
            actions,
        }
    }

    pub fn alg(&self) -> &Arc<StructAlgebra> {
        &self.alg
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn actions(&self) -> &[Matrix] {
        &self.actions
    }

    /// Dimension vector: ranks of the idempotent actions.
    pub fn dims(&self) -> Vec<usize> {
        (0..self.alg.n_vertices())
            .map(|v| self.actions[self.alg.idempotent(v)].rank())
            .collect()
    }

    /// The same module presented vertex by vertex, with the change of basis
    /// whose columns are the new basis vectors in the old coordinates.
    pub fn to_module(&self) -> Result<(Module, Matrix)> {
        let f = self.alg.field().clone();
        let bases: Vec<Matrix> = (0..self.alg.n_vertices())
            .map(|v| self.actions[self.alg.idempotent(v)].column_space())
            .collect();
        let dims: Vec<usize> = bases.iter().map(|b| b.cols()).collect();
        let maps = self
            .alg
            .gens()
            .iter()
            .map(|&gi| {
                let g = &self.alg.basis()[gi];
                let img = self.actions[gi].mul(&bases[g.src]);
                coords_in(&bases[g.tgt], &img).ok_or_else(|| {
                    Error::Precondition("generator leaves its target vertex space".into())
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let change = Matrix::hstack_all(&f, self.dim, &bases);
        Ok((Module::new(self.alg.clone(), dims, maps)?, change))
    }
}
