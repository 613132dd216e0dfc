//! Linear maps between based spaces: the carrier of every structure map.
//!
//! A `LinMap` stores a dense `codomain.dim × domain.dim` matrix of exact
//! scalars; column `j` is the image of the `j`-th domain basis vector.
//! Composition enforces dimension agreement; labels are advisory.

use crate::error::Error;
use crate::report::Witness;
use crate::scalar::{Field, Scalar};
use crate::space::BasedSpace;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinMap {
    domain: BasedSpace,
    codomain: BasedSpace,
    field: Field,
    /// Row-major, `codomain.dim()` rows by `domain.dim()` columns.
    entries: Vec<Scalar>,
}

impl LinMap {
    pub fn new(
        domain: BasedSpace,
        codomain: BasedSpace,
        field: Field,
        entries: Vec<Scalar>,
    ) -> Result<Self, Error> {
        if entries.len() != domain.dim() * codomain.dim() {
            return Err(Error::ShapeMismatch(format!(
                "matrix with {} entries for a {}×{} map",
                entries.len(),
                codomain.dim(),
                domain.dim()
            )));
        }
        if let Some(s) = entries.iter().find(|s| s.field() != field) {
            return Err(Error::FieldMismatch(format!(
                "entry over {} in a map over {}",
                s.field(),
                field
            )));
        }
        Ok(LinMap {
            domain,
            codomain,
            field,
            entries,
        })
    }

    pub fn zero(domain: BasedSpace, codomain: BasedSpace, field: Field) -> Self {
        let entries = vec![field.zero(); domain.dim() * codomain.dim()];
        LinMap {
            domain,
            codomain,
            field,
            entries,
        }
    }

    pub fn identity(space: BasedSpace, field: Field) -> Self {
        let n = space.dim();
        let mut map = LinMap::zero(space.clone(), space, field);
        for i in 0..n {
            map.entries[i * n + i] = field.one();
        }
        map
    }

    /// Builds the matrix entrywise from `f(row, col)`.
    pub fn from_fn(
        domain: BasedSpace,
        codomain: BasedSpace,
        field: Field,
        f: impl Fn(usize, usize) -> Scalar,
    ) -> Self {
        let cols = domain.dim();
        let rows = codomain.dim();
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        LinMap {
            domain,
            codomain,
            field,
            entries,
        }
    }

    /// Builds the map whose `j`-th column is `columns[j]`.
    pub fn from_columns(
        domain: BasedSpace,
        codomain: BasedSpace,
        field: Field,
        columns: &[Vec<Scalar>],
    ) -> Result<Self, Error> {
        if columns.len() != domain.dim() {
            return Err(Error::ShapeMismatch(format!(
                "{} columns for a domain of dimension {}",
                columns.len(),
                domain.dim()
            )));
        }
        let rows = codomain.dim();
        let mut map = LinMap::zero(domain, codomain, field);
        for (j, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(Error::ShapeMismatch(format!(
                    "column of length {} in a codomain of dimension {}",
                    col.len(),
                    rows
                )));
            }
            for (i, s) in col.iter().enumerate() {
                if s.field() != map.field {
                    return Err(Error::FieldMismatch(format!(
                        "entry over {} in a map over {}",
                        s.field(),
                        map.field
                    )));
                }
                map.entries[i * map.domain.dim() + j] = s.clone();
            }
        }
        Ok(map)
    }

    pub fn domain(&self) -> &BasedSpace {
        &self.domain
    }

    pub fn codomain(&self) -> &BasedSpace {
        &self.codomain
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn at(&self, row: usize, col: usize) -> &Scalar {
        &self.entries[row * self.domain.dim() + col]
    }

    pub fn column(&self, col: usize) -> Vec<Scalar> {
        (0..self.codomain.dim())
            .map(|r| self.at(r, col).clone())
            .collect()
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Scalar]> {
        self.entries.chunks(self.domain.dim().max(1)).take(
            if self.domain.dim() == 0 {
                0
            } else {
                self.codomain.dim()
            },
        )
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.domain.dim(), "vector/domain size mismatch");
        let mut out = vec![self.field.zero(); self.codomain.dim()];
        for (j, coef) in v.iter().enumerate() {
            if coef.is_zero() {
                continue;
            }
            for (i, slot) in out.iter_mut().enumerate() {
                let e = self.at(i, j);
                if !e.is_zero() {
                    *slot = &*slot + &(coef * e);
                }
            }
        }
        out
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &LinMap) -> LinMap {
        assert_eq!(
            other.codomain.dim(),
            self.domain.dim(),
            "composition dimension mismatch"
        );
        let columns: Vec<Vec<Scalar>> = (0..other.domain.dim())
            .map(|j| self.apply(&other.column(j)))
            .collect();
        LinMap::from_columns(
            other.domain.clone(),
            self.codomain.clone(),
            self.field,
            &columns,
        )
        .expect("composition shapes are consistent")
    }

    pub fn add(&self, other: &LinMap) -> LinMap {
        assert_eq!(self.domain.dim(), other.domain.dim());
        assert_eq!(self.codomain.dim(), other.codomain.dim());
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a + b)
            .collect();
        LinMap {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            field: self.field,
            entries,
        }
    }

    pub fn sub(&self, other: &LinMap) -> LinMap {
        assert_eq!(self.domain.dim(), other.domain.dim());
        assert_eq!(self.codomain.dim(), other.codomain.dim());
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a - b)
            .collect();
        LinMap {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            field: self.field,
            entries,
        }
    }

    pub fn scale(&self, s: &Scalar) -> LinMap {
        let entries = self.entries.iter().map(|e| e * s).collect();
        LinMap {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            field: self.field,
            entries,
        }
    }

    /// Kronecker product under left-to-right flattening:
    /// `(f ⊗ g)(v_i ⊗ w_j) = f(v_i) ⊗ g(w_j)`.
    pub fn tensor(&self, other: &LinMap) -> LinMap {
        let domain = self.domain.tensor(&other.domain);
        let codomain = self.codomain.tensor(&other.codomain);
        let oc = other.codomain.dim();
        let od = other.domain.dim();
        LinMap::from_fn(domain, codomain, self.field, |row, col| {
            let (i1, j1) = (row / oc, row % oc);
            let (i2, j2) = (col / od, col % od);
            self.at(i1, i2) * other.at(j1, j2)
        })
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|s| s.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        if self.domain.dim() != self.codomain.dim() {
            return false;
        }
        let n = self.domain.dim();
        (0..n).all(|i| (0..n).all(|j| if i == j { self.at(i, j).is_one() } else { self.at(i, j).is_zero() }))
    }

    /// Same matrix, ignoring labels.
    pub fn same_matrix(&self, other: &LinMap) -> bool {
        self.domain.dim() == other.domain.dim()
            && self.codomain.dim() == other.codomain.dim()
            && self.entries == other.entries
    }

    /// Stacks maps with a common domain on top of each other.
    pub fn vstack(maps: &[LinMap]) -> Result<LinMap, Error> {
        let first = maps
            .first()
            .ok_or_else(|| Error::ShapeMismatch("vstack of no maps".into()))?;
        let domain = first.domain.clone();
        let field = first.field;
        let mut entries = Vec::new();
        let mut total_rows = 0;
        for m in maps {
            if m.domain.dim() != domain.dim() {
                return Err(Error::ShapeMismatch("vstack domain mismatch".into()));
            }
            entries.extend(m.entries.iter().cloned());
            total_rows += m.codomain.dim();
        }
        LinMap::new(
            domain,
            BasedSpace::with_prefix("r", total_rows),
            field,
            entries,
        )
    }
}

/// Per-column comparison of two maps; one witness per differing column,
/// carrying the two image vectors.
pub fn compare_maps(lhs: &LinMap, rhs: &LinMap) -> Vec<Witness> {
    assert_eq!(lhs.domain().dim(), rhs.domain().dim());
    assert_eq!(lhs.codomain().dim(), rhs.codomain().dim());
    let mut witnesses = Vec::new();
    for j in 0..lhs.domain().dim() {
        let a = lhs.column(j);
        let b = rhs.column(j);
        if a != b {
            witnesses.push(Witness::new(vec![j], a, b));
        }
    }
    witnesses
}

pub fn zero_vec(field: Field, dim: usize) -> Vec<Scalar> {
    vec![field.zero(); dim]
}

pub fn basis_vec(field: Field, dim: usize, i: usize) -> Vec<Scalar> {
    let mut v = zero_vec(field, dim);
    v[i] = field.one();
    v
}

pub fn vec_is_zero(v: &[Scalar]) -> bool {
    v.iter().all(|s| s.is_zero())
}

pub fn vec_add(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_scale(s: &Scalar, v: &[Scalar]) -> Vec<Scalar> {
    v.iter().map(|x| s * x).collect()
}

/// Flattened coordinates of `u ⊗ v`.
pub fn tensor_vec(u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
    let mut out = Vec::with_capacity(u.len() * v.len());
    for a in u {
        for b in v {
            out.push(a * b);
        }
    }
    out
}

/// `(f ⊗ id)(v)` for `v ∈ X ⊗ Z` without materialising the Kronecker matrix.
pub fn apply_on_left(f: &LinMap, v: &[Scalar], right_dim: usize) -> Vec<Scalar> {
    let x_dim = f.domain().dim();
    assert_eq!(v.len(), x_dim * right_dim);
    let mut out = zero_vec(f.field(), f.codomain().dim() * right_dim);
    for i in 0..x_dim {
        for z in 0..right_dim {
            let coef = &v[i * right_dim + z];
            if coef.is_zero() {
                continue;
            }
            for r in 0..f.codomain().dim() {
                let e = f.at(r, i);
                if !e.is_zero() {
                    let slot = &mut out[r * right_dim + z];
                    *slot = &*slot + &(coef * e);
                }
            }
        }
    }
    out
}

/// `(id ⊗ f)(v)` for `v ∈ Z ⊗ X`.
pub fn apply_on_right(f: &LinMap, v: &[Scalar], left_dim: usize) -> Vec<Scalar> {
    let x_dim = f.domain().dim();
    assert_eq!(v.len(), left_dim * x_dim);
    let mut out = zero_vec(f.field(), left_dim * f.codomain().dim());
    for z in 0..left_dim {
        for i in 0..x_dim {
            let coef = &v[z * x_dim + i];
            if coef.is_zero() {
                continue;
            }
            for r in 0..f.codomain().dim() {
                let e = f.at(r, i);
                if !e.is_zero() {
                    let slot = &mut out[z * f.codomain().dim() + r];
                    *slot = &*slot + &(coef * e);
                }
            }
        }
    }
    out
}

/// The swap `V ⊗ W → W ⊗ V` in flattened coordinates.
pub fn swap_map(v: &BasedSpace, w: &BasedSpace, field: Field) -> LinMap {
    let domain = v.tensor(w);
    let codomain = w.tensor(v);
    let (dv, dw) = (v.dim(), w.dim());
    LinMap::from_fn(domain, codomain, field, |row, col| {
        let (j, i) = (row / dv, row % dv);
        let (i2, j2) = (col / dw, col % dw);
        if i == i2 && j == j2 {
            field.one()
        } else {
            field.zero()
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rationals
    }

    fn map2x2(entries: [i64; 4]) -> LinMap {
        let s = BasedSpace::with_prefix("e", 2);
        LinMap::new(
            s.clone(),
            s,
            q(),
            entries.iter().map(|&n| q().from_i64(n)).collect(),
        )
        .unwrap()
    }

    #[test]
    fn identity_tensor_identity_is_identity() {
        let v = BasedSpace::with_prefix("v", 2);
        let w = BasedSpace::with_prefix("w", 3);
        let idv = LinMap::identity(v, q());
        let idw = LinMap::identity(w, q());
        assert!(idv.tensor(&idw).is_identity());
    }

    #[test]
    fn tensor_acts_factorwise_on_basis_vectors() {
        let f = map2x2([1, 2, 3, 4]);
        let g = map2x2([0, 1, 1, 0]);
        let fg = f.tensor(&g);
        for i in 0..2 {
            for j in 0..2 {
                let e = tensor_vec(&basis_vec(q(), 2, i), &basis_vec(q(), 2, j));
                let expected = tensor_vec(
                    &f.apply(&basis_vec(q(), 2, i)),
                    &g.apply(&basis_vec(q(), 2, j)),
                );
                assert_eq!(fg.apply(&e), expected);
            }
        }
    }

    #[test]
    fn kronecker_shape_rule() {
        let f = LinMap::zero(
            BasedSpace::with_prefix("a", 3),
            BasedSpace::with_prefix("b", 2),
            q(),
        );
        let g = LinMap::zero(
            BasedSpace::with_prefix("c", 2),
            BasedSpace::with_prefix("d", 2),
            q(),
        );
        let fg = f.tensor(&g);
        assert_eq!(fg.codomain().dim(), 4);
        assert_eq!(fg.domain().dim(), 6);
    }

    #[test]
    fn partial_applications_match_full_kronecker() {
        let f = map2x2([1, 2, 3, 4]);
        let g = map2x2([5, 6, 7, 8]);
        let v: Vec<Scalar> = (0..4).map(|n| q().from_i64(n + 1)).collect();
        let full = f.tensor(&g).apply(&v);
        let left_then_right = apply_on_right(&g, &apply_on_left(&f, &v, 2), 2);
        assert_eq!(full, left_then_right);
    }

    #[test]
    fn swap_is_an_involution() {
        let v = BasedSpace::with_prefix("v", 2);
        let w = BasedSpace::with_prefix("w", 3);
        let s = swap_map(&v, &w, q());
        let back = swap_map(&w, &v, q());
        assert!(back.compose(&s).is_identity());
    }
}
