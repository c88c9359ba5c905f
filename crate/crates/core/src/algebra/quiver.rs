//! Finite quivers, paths and linear relations among parallel paths.

use crate::error::{Error, Result};
use crate::linalg::{Elem, Field};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub src: usize,
    pub tgt: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
}

/// A path, stored as arrow indices with the left (last traversed) arrow
/// first; trivial paths carry no arrows.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub src: usize,
    pub tgt: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Path {
        Path {
            src: v,
            tgt: v,
            arrows: vec![],
        }
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    /// `self` after `other` (right-to-left), if composable.
    pub fn compose(&self, other: &Path) -> Option<Path> {
        if self.src != other.tgt {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend(other.arrows.iter().cloned());
        Some(Path {
            src: other.src,
            tgt: self.tgt,
            arrows,
        })
    }

    pub fn reversed(&self) -> Path {
        Path {
            src: self.tgt,
            tgt: self.src,
            arrows: self.arrows.iter().rev().cloned().collect(),
        }
    }
}

/// A linear combination of parallel paths.
#[derive(Clone, Debug, PartialEq)]
pub struct Relation {
    pub terms: Vec<(Elem, Path)>,
}

impl Quiver {
    pub fn new(vertices: Vec<String>, arrows: Vec<Arrow>) -> Result<Quiver> {
        for (i, v) in vertices.iter().enumerate() {
            if vertices[..i].contains(v) {
                return Err(Error::Precondition(format!("duplicate vertex label {v}")));
            }
        }
        for (i, a) in arrows.iter().enumerate() {
            if a.src >= vertices.len() || a.tgt >= vertices.len() {
                return Err(Error::Precondition(format!(
                    "arrow {} has an undeclared endpoint",
                    a.name
                )));
            }
            if arrows[..i].iter().any(|b| b.name == a.name) {
                return Err(Error::Precondition(format!(
                    "duplicate arrow name {}",
                    a.name
                )));
            }
        }
        Ok(Quiver { vertices, arrows })
    }

    pub fn n_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_index(&self, label: &str) -> Result<usize> {
        self.vertices
            .iter()
            .position(|v| v == label)
            .ok_or_else(|| Error::Precondition(format!("unknown vertex {label}")))
    }

    pub fn arrow_index(&self, name: &str) -> Result<usize> {
        self.arrows
            .iter()
            .position(|a| a.name == name)
            .ok_or_else(|| Error::Precondition(format!("unknown arrow {name}")))
    }

    /// Path from arrow names listed left factor first.
    pub fn path(&self, names: &[&str]) -> Result<Path> {
        if names.is_empty() {
            return Err(Error::Precondition(
                "empty arrow list does not name a path".into(),
            ));
        }
        let idx: Vec<usize> = names
            .iter()
            .map(|n| self.arrow_index(n))
            .collect::<Result<_>>()?;
        self.path_from_indices(idx)
    }

    pub fn path_from_indices(&self, arrows: Vec<usize>) -> Result<Path> {
        for w in arrows.windows(2) {
            if self.arrows[w[0]].src != self.arrows[w[1]].tgt {
                return Err(Error::Precondition(format!(
                    "{} cannot follow {}",
                    self.arrows[w[0]].name, self.arrows[w[1]].name
                )));
            }
        }
        let first = *arrows.last().expect("nonempty");
        let last = arrows[0];
        Ok(Path {
            src: self.arrows[first].src,
            tgt: self.arrows[last].tgt,
            arrows,
        })
    }

    pub fn arrow_path(&self, a: usize) -> Path {
        Path {
            src: self.arrows[a].src,
            tgt: self.arrows[a].tgt,
            arrows: vec![a],
        }
    }

    pub fn label(&self, p: &Path) -> String {
        if p.is_trivial() {
            format!("e_{}", self.vertices[p.src])
        } else {
            p.arrows
                .iter()
                .map(|&a| self.arrows[a].name.as_str())
                .collect::<Vec<_>>()
                .join("*")
        }
    }

    pub fn opposite(&self) -> Quiver {
        Quiver {
            vertices: self.vertices.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| Arrow {
                    name: a.name.clone(),
                    src: a.tgt,
                    tgt: a.src,
                })
                .collect(),
        }
    }

    /// All paths of length exactly `len`.
    pub fn paths_of_length(&self, len: usize) -> Vec<Path> {
        let mut cur: Vec<Path> = (0..self.n_vertices()).map(Path::trivial).collect();
        for _ in 0..len {
            let mut next = vec![];
            for p in &cur {
                for (i, a) in self.arrows.iter().enumerate() {
                    if a.src == p.tgt {
                        let mut arrows = vec![i];
                        arrows.extend(p.arrows.iter().cloned());
                        next.push(Path {
                            src: p.src,
                            tgt: a.tgt,
                            arrows,
                        });
                    }
                }
            }
            cur = next;
        }
        cur
    }
}

impl Relation {
    /// Validates parallelism and admissibility (every path of length >= 2).
    pub fn new(field: &Field, terms: Vec<(Elem, Path)>) -> Result<Relation> {
        let terms: Vec<(Elem, Path)> = terms
            .into_iter()
            .filter(|(c, _)| !field.is_zero(c))
            .collect();
        if let Some((_, p0)) = terms.first() {
            for (_, p) in &terms {
                if p.src != p0.src || p.tgt != p0.tgt {
                    return Err(Error::Precondition(
                        "relation mixes non-parallel paths".into(),
                    ));
                }
                if p.len() < 2 {
                    return Err(Error::NonAdmissible(format!(
                        "path of length {} in a relation",
                        p.len()
                    )));
                }
            }
        }
        Ok(Relation { terms })
    }

    pub fn reversed(&self) -> Relation {
        Relation {
            terms: self
                .terms
                .iter()
                .map(|(c, p)| (c.clone(), p.reversed()))
                .collect(),
        }
    }

    pub fn min_len(&self) -> usize {
        self.terms
            .iter()
            .map(|(_, p)| p.len())
            .min()
            .unwrap_or(usize::MAX)
    }
}
