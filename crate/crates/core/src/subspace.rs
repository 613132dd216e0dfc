//! Subspaces in canonical echelon form.
//!
//! A subspace is stored as the reduced row-echelon basis of its span, so two
//! equal subspaces have identical stored bases and subspace equality is plain
//! matrix equality. Kernels, images, sums and intersections all canonicalise
//! through the same elimination.

use crate::error::Error;
use crate::linmap::{basis_vec, vec_is_zero, LinMap};
use crate::scalar::{Field, Scalar};
use crate::space::BasedSpace;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubSpace {
    ambient: BasedSpace,
    field: Field,
    /// Canonical basis vectors, each of length `ambient.dim()`, in reduced
    /// echelon form with strictly increasing pivots.
    basis: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl SubSpace {
    /// Canonicalises an arbitrary generating set.
    pub fn from_generators<I>(ambient: BasedSpace, field: Field, generators: I) -> Self
    where
        I: IntoIterator<Item = Vec<Scalar>>,
    {
        let rows: Vec<Vec<Scalar>> = generators
            .into_iter()
            .inspect(|g| assert_eq!(g.len(), ambient.dim(), "generator length mismatch"))
            .collect();
        let (basis, pivots) = reduced_row_echelon(rows, field, ambient.dim());
        SubSpace {
            ambient,
            field,
            basis,
            pivots,
        }
    }

    pub fn zero(ambient: BasedSpace, field: Field) -> Self {
        SubSpace {
            ambient,
            field,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: BasedSpace, field: Field) -> Self {
        let n = ambient.dim();
        SubSpace {
            ambient: ambient.clone(),
            field,
            basis: (0..n).map(|i| basis_vec(field, n, i)).collect(),
            pivots: (0..n).collect(),
        }
    }

    /// `{ v : f(v) = 0 }` in canonical form.
    pub fn kernel_of(f: &LinMap) -> Self {
        let n = f.domain().dim();
        let field = f.field();
        let rows: Vec<Vec<Scalar>> = (0..f.codomain().dim())
            .map(|r| (0..n).map(|c| f.at(r, c).clone()).collect())
            .collect();
        let (rref, pivots) = reduced_row_echelon(rows, field, n);
        let mut generators = Vec::new();
        for free in (0..n).filter(|c| !pivots.contains(c)) {
            let mut v = basis_vec(field, n, free);
            for (row, &p) in rref.iter().zip(&pivots) {
                v[p] = -&row[free];
            }
            generators.push(v);
        }
        SubSpace::from_generators(f.domain().clone(), field, generators)
    }

    /// Column span of `f` in canonical form.
    pub fn image_of(f: &LinMap) -> Self {
        let cols = (0..f.domain().dim()).map(|j| f.column(j));
        SubSpace::from_generators(f.codomain().clone(), f.field(), cols)
    }

    pub fn ambient(&self) -> &BasedSpace {
        &self.ambient
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.rank() == self.ambient.dim()
    }

    /// Inclusion of the span into the ambient space; columns are the
    /// canonical basis vectors.
    pub fn inclusion(&self) -> LinMap {
        let span = BasedSpace::with_prefix("w", self.rank());
        LinMap::from_columns(span, self.ambient.clone(), self.field, &self.basis)
            .expect("canonical basis has ambient length")
    }

    /// Coordinates of `v` in the canonical basis, or `None` if `v` is
    /// outside the subspace.
    pub fn coords(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(v.len(), self.ambient.dim());
        let mut rest = v.to_vec();
        let mut coords = Vec::with_capacity(self.rank());
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            let coef = rest[p].clone();
            if !coef.is_zero() {
                for (slot, b) in rest.iter_mut().zip(row) {
                    *slot = &*slot - &(&coef * b);
                }
            }
            coords.push(coef);
        }
        if vec_is_zero(&rest) {
            Some(coords)
        } else {
            None
        }
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.coords(v).is_some()
    }

    pub fn contains_subspace(&self, other: &SubSpace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &SubSpace) -> Result<SubSpace, Error> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch("sum of subspaces".into()));
        }
        Ok(SubSpace::from_generators(
            self.ambient.clone(),
            self.field,
            self.basis.iter().chain(&other.basis).cloned(),
        ))
    }

    /// Intersection of a family; the empty family gives the full ambient.
    pub fn intersect(subs: &[SubSpace]) -> Result<SubSpace, Error> {
        let Some(first) = subs.first() else {
            return Err(Error::AmbientMismatch(
                "intersection needs an ambient; use SubSpace::full for the empty family".into(),
            ));
        };
        for s in subs {
            if s.ambient != first.ambient {
                return Err(Error::AmbientMismatch("intersection of subspaces".into()));
            }
        }
        let projections: Vec<LinMap> = subs.iter().map(|s| s.quotient().projection).collect();
        let stacked = LinMap::vstack(&projections)?;
        Ok(SubSpace::kernel_of(&stacked))
    }

    /// The quotient of the ambient space by this subspace. The quotient basis
    /// is the non-pivot coordinates; `projection ∘ section` is the identity
    /// and the kernel of `projection` is exactly this subspace.
    pub fn quotient(&self) -> Quotient {
        let n = self.ambient.dim();
        let free: Vec<usize> = (0..n).filter(|c| !self.pivots.contains(c)).collect();
        let space = self.ambient.select(&free);
        let projection = LinMap::from_fn(self.ambient.clone(), space.clone(), self.field, |r, c| {
            // class of e_c: subtract the echelon rows that eliminate pivots
            let q = free[r];
            if c == q {
                return self.field.one();
            }
            match self.pivots.iter().position(|&p| p == c) {
                Some(i) => -&self.basis[i][q],
                None => self.field.zero(),
            }
        });
        let section = LinMap::from_fn(space.clone(), self.ambient.clone(), self.field, |r, c| {
            if r == free[c] {
                self.field.one()
            } else {
                self.field.zero()
            }
        });
        Quotient {
            space,
            projection,
            section,
        }
    }
}

/// A quotient presentation: a surjection with an explicit right inverse.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub space: BasedSpace,
    pub projection: LinMap,
    pub section: LinMap,
}

impl Quotient {
    /// Trivial quotient by the zero subspace.
    pub fn identity(space: BasedSpace, field: Field) -> Self {
        Quotient {
            space: space.clone(),
            projection: LinMap::identity(space.clone(), field),
            section: LinMap::identity(space, field),
        }
    }

    /// Factors `h` through the projection: the unique `g` with
    /// `g ∘ projection = h`, provided `h` kills the kernel of the projection.
    pub fn factor(&self, h: &LinMap) -> Result<LinMap, Error> {
        let composed = h.compose(&self.section).compose(&self.projection);
        if !composed.same_matrix(h) {
            return Err(Error::NotBalanced(
                "map does not vanish on the kernel of the projection".into(),
            ));
        }
        Ok(h.compose(&self.section))
    }
}

/// The coequalizer of a parallel pair: the quotient of the common codomain by
/// the image of `f − g`. Any `h` with `h∘f = h∘g` factors uniquely through it.
pub fn coequalizer(f: &LinMap, g: &LinMap) -> Result<Quotient, Error> {
    if f.domain().dim() != g.domain().dim() || f.codomain().dim() != g.codomain().dim() {
        return Err(Error::ShapeMismatch(
            "coequalizer of maps with different shapes".into(),
        ));
    }
    let difference = f.sub(g);
    Ok(SubSpace::image_of(&difference).quotient())
}

/// Solves `f(x) = target` exactly by augmented elimination; free variables
/// are set to zero. `None` when the target is outside the image.
pub fn solve(f: &LinMap, target: &[Scalar]) -> Option<Vec<Scalar>> {
    assert_eq!(target.len(), f.codomain().dim());
    let field = f.field();
    let n = f.domain().dim();
    let rows: Vec<Vec<Scalar>> = (0..f.codomain().dim())
        .map(|r| {
            let mut row: Vec<Scalar> = (0..n).map(|c| f.at(r, c).clone()).collect();
            row.push(target[r].clone());
            row
        })
        .collect();
    let (rref, pivots) = reduced_row_echelon(rows, field, n + 1);
    if pivots.contains(&n) {
        return None;
    }
    let mut x = vec![field.zero(); n];
    for (row, &p) in rref.iter().zip(&pivots) {
        x[p] = row[n].clone();
    }
    Some(x)
}

/// Reduced row echelon form over an exact field. Returns the nonzero rows
/// (pivot entries 1, zeros above and below) and their pivot columns.
pub(crate) fn reduced_row_echelon(
    mut rows: Vec<Vec<Scalar>>,
    field: Field,
    width: usize,
) -> (Vec<Vec<Scalar>>, Vec<usize>) {
    let _ = field;
    let mut pivots = Vec::new();
    let mut rank = 0usize;
    for col in 0..width {
        let Some(pivot_row) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot_row);
        let inv = rows[rank][col].inv().expect("pivot is nonzero");
        for c in col..width {
            rows[rank][c] = &rows[rank][c] * &inv;
        }
        for r in 0..rows.len() {
            if r == rank || rows[r][col].is_zero() {
                continue;
            }
            let factor = rows[r][col].clone();
            for c in col..width {
                let delta = &factor * &rows[rank][c];
                rows[r][c] = &rows[r][c] - &delta;
            }
        }
        pivots.push(col);
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rows.truncate(rank);
    (rows, pivots)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linmap::tensor_vec;
    use proptest::prelude::*;

    fn q() -> Field {
        Field::Rationals
    }

    fn qvec(ns: &[i64]) -> Vec<Scalar> {
        ns.iter().map(|&n| q().from_i64(n)).collect()
    }

    #[test]
    fn kernel_of_identity_is_zero() {
        let s = BasedSpace::with_prefix("e", 3);
        let k = SubSpace::kernel_of(&LinMap::identity(s, q()));
        assert!(k.is_zero());
    }

    #[test]
    fn kernel_of_zero_map_is_full() {
        let s = BasedSpace::with_prefix("e", 3);
        let k = SubSpace::kernel_of(&LinMap::zero(s.clone(), s, q()));
        assert!(k.is_full());
        assert_eq!(k.rank(), 3);
    }

    #[test]
    fn kernel_of_rank_one_matrix() {
        let s = BasedSpace::with_prefix("e", 2);
        let f = LinMap::new(s.clone(), s.clone(), q(), qvec(&[1, 1, 1, 1])).unwrap();
        let k = SubSpace::kernel_of(&f);
        let expected = SubSpace::from_generators(s, q(), vec![qvec(&[1, -1])]);
        assert_eq!(k, expected);
    }

    #[test]
    fn rank_nullity_on_a_concrete_map() {
        let d = BasedSpace::with_prefix("d", 3);
        let c = BasedSpace::with_prefix("c", 2);
        let f = LinMap::new(d, c, q(), qvec(&[1, 2, 3, 2, 4, 6])).unwrap();
        let ker = SubSpace::kernel_of(&f);
        let im = SubSpace::image_of(&f);
        assert_eq!(ker.rank() + im.rank(), 3);
    }

    #[test]
    fn quotient_by_zero_is_the_identity() {
        let s = BasedSpace::with_prefix("e", 3);
        let quot = SubSpace::zero(s.clone(), q()).quotient();
        assert!(quot.projection.is_identity());
        assert_eq!(quot.space, s);
    }

    #[test]
    fn quotient_by_the_full_space_is_zero_dimensional() {
        let s = BasedSpace::with_prefix("e", 3);
        let quot = SubSpace::full(s, q()).quotient();
        assert_eq!(quot.space.dim(), 0);
    }

    #[test]
    fn quotient_of_plane_by_antidiagonal_line() {
        let s = BasedSpace::with_prefix("e", 2);
        let w = SubSpace::from_generators(s, q(), vec![qvec(&[1, -1])]);
        let quot = w.quotient();
        assert_eq!(quot.space.dim(), 1);
        // projection ∘ section = id and ker(projection) = w
        assert!(quot.projection.compose(&quot.section).is_identity());
        assert_eq!(SubSpace::kernel_of(&quot.projection), w);
    }

    #[test]
    fn coequalizer_of_equal_maps_is_identity() {
        let s = BasedSpace::with_prefix("e", 2);
        let f = LinMap::new(s.clone(), s.clone(), q(), qvec(&[1, 2, 3, 4])).unwrap();
        let quot = coequalizer(&f, &f).unwrap();
        assert!(quot.projection.is_identity());
    }

    #[test]
    fn coequalizer_of_the_two_injections_into_the_plane() {
        let line = BasedSpace::line();
        let plane = BasedSpace::with_prefix("e", 2);
        let f = LinMap::new(line.clone(), plane.clone(), q(), qvec(&[1, 0])).unwrap();
        let g = LinMap::new(line, plane, q(), qvec(&[0, 1])).unwrap();
        let quot = coequalizer(&f, &g).unwrap();
        assert_eq!(quot.space.dim(), 1);
        assert_eq!(
            quot.projection.compose(&f),
            quot.projection.compose(&g)
        );
    }

    #[test]
    fn intersection_examples() {
        let s = BasedSpace::with_prefix("e", 2);
        let x = SubSpace::from_generators(s.clone(), q(), vec![qvec(&[1, 0])]);
        let y = SubSpace::from_generators(s.clone(), q(), vec![qvec(&[0, 1])]);
        assert_eq!(SubSpace::intersect(&[x.clone()]).unwrap(), x);
        assert!(SubSpace::intersect(&[x, y]).unwrap().is_zero());
    }

    #[test]
    fn flattening_associativity_of_tensor_vectors() {
        let u = qvec(&[1, 2]);
        let v = qvec(&[3, 4, 5]);
        let w = qvec(&[6, 7]);
        let a = tensor_vec(&tensor_vec(&u, &v), &w);
        let b = tensor_vec(&u, &tensor_vec(&v, &w));
        assert_eq!(a, b);
    }

    proptest! {
        #[test]
        fn echelon_form_is_generator_order_independent(
            entries in proptest::collection::vec(-5i64..=5, 12),
            perm in 0usize..24,
        ) {
            let s = BasedSpace::with_prefix("e", 4);
            let gens: Vec<Vec<Scalar>> = entries.chunks(4).map(qvec).collect();
            let mut shuffled = gens.clone();
            // a deterministic permutation of the three generators
            let order = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]][perm % 6];
            shuffled = order.iter().map(|&i| shuffled[i].clone()).collect();
            let a = SubSpace::from_generators(s.clone(), q(), gens);
            let b = SubSpace::from_generators(s, q(), shuffled);
            prop_assert_eq!(a, b);
        }

        #[test]
        fn rank_nullity_holds(entries in proptest::collection::vec(-4i64..=4, 12)) {
            let d = BasedSpace::with_prefix("d", 4);
            let c = BasedSpace::with_prefix("c", 3);
            let f = LinMap::new(d, c, q(), qvec(&entries)).unwrap();
            let ker = SubSpace::kernel_of(&f);
            let im = SubSpace::image_of(&f);
            prop_assert_eq!(ker.rank() + im.rank(), 4);
        }

        #[test]
        fn quotient_section_splits_projection(entries in proptest::collection::vec(-4i64..=4, 8)) {
            let s = BasedSpace::with_prefix("e", 4);
            let gens: Vec<Vec<Scalar>> = entries.chunks(4).map(qvec).collect();
            let w = SubSpace::from_generators(s, q(), gens);
            let quot = w.quotient();
            prop_assert!(quot.projection.compose(&quot.section).is_identity());
            prop_assert_eq!(SubSpace::kernel_of(&quot.projection), w);
        }

        #[test]
        fn coequalizer_factorisation_is_exact(
            fe in proptest::collection::vec(-3i64..=3, 6),
            ge in proptest::collection::vec(-3i64..=3, 6),
            he in proptest::collection::vec(-3i64..=3, 9),
        ) {
            let d = BasedSpace::with_prefix("d", 2);
            let c = BasedSpace::with_prefix("c", 3);
            let f = LinMap::new(d.clone(), c.clone(), q(), qvec(&fe)).unwrap();
            let g = LinMap::new(d, c.clone(), q(), qvec(&ge)).unwrap();
            let quot = coequalizer(&f, &g).unwrap();
            // any h that coequalizes the pair factors exactly; build one as h0 ∘ π
            let target = BasedSpace::with_prefix("t", 3);
            let h0_entries = qvec(&he[..3 * quot.space.dim()]);
            let h0 = LinMap::new(quot.space.clone(), target, q(), h0_entries).unwrap();
            let h = h0.compose(&quot.projection);
            let factored = quot.factor(&h).unwrap();
            prop_assert!(factored.compose(&quot.projection).same_matrix(&h));
            prop_assert!(factored.same_matrix(&h0));
        }
    }
}
