//! Based finite-dimensional spaces.
//!
//! A space is nothing but its ordered list of basis labels. Tensor products
//! flatten left-to-right: the basis vector `v_i ⊗ w_j` of `V ⊗ W` sits at
//! index `i * dim(W) + j`, and nested tensors flatten associatively, so all
//! coordinate associators and unitors are identity matrices.

use crate::error::Error;
use std::collections::HashSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasedSpace {
    labels: Vec<String>,
}

impl BasedSpace {
    pub fn new(labels: Vec<String>) -> Result<Self, Error> {
        let mut seen = HashSet::new();
        for l in &labels {
            if !seen.insert(l.clone()) {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        Ok(BasedSpace { labels })
    }

    /// Space with labels `prefix0`, `prefix1`, ...
    pub fn with_prefix(prefix: &str, dim: usize) -> Self {
        BasedSpace {
            labels: (0..dim).map(|i| format!("{prefix}{i}")).collect(),
        }
    }

    /// The one-dimensional space carrying the base field.
    pub fn line() -> Self {
        BasedSpace {
            labels: vec!["k".to_string()],
        }
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    /// Tensor product space with flattened indexing. Falls back to positional
    /// labels if the composite labels would collide.
    pub fn tensor(&self, other: &BasedSpace) -> BasedSpace {
        let mut labels = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.labels {
            for b in &other.labels {
                labels.push(format!("{a}⊗{b}"));
            }
        }
        match BasedSpace::new(labels) {
            Ok(space) => space,
            Err(_) => BasedSpace::with_prefix("t", self.dim() * other.dim()),
        }
    }

    /// Subspace of coordinates, keeping the selected labels.
    pub fn select(&self, indices: &[usize]) -> BasedSpace {
        BasedSpace {
            labels: indices.iter().map(|&i| self.labels[i].clone()).collect(),
        }
    }
}

/// Flattened index of `(i, j)` in `V ⊗ W`.
pub fn pair_index(i: usize, j: usize, dim_w: usize) -> usize {
    i * dim_w + j
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_duplicate_labels() {
        assert!(BasedSpace::new(vec!["a".into(), "a".into()]).is_err());
    }

    #[test]
    fn tensor_flattening_is_row_major() {
        let v = BasedSpace::with_prefix("v", 2);
        let w = BasedSpace::with_prefix("w", 3);
        let t = v.tensor(&w);
        assert_eq!(t.dim(), 6);
        assert_eq!(t.label(pair_index(1, 2, 3)), "v1⊗w2");
    }
}
