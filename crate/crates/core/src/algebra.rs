//! Finite-dimensional unital associative algebras given by structure
//! constants, and morphisms between them.

use crate::error::Error;
use crate::linmap::{basis_vec, tensor_vec, LinMap};
use crate::par::{index_pairs, index_triples, map_collect};
use crate::report::{Report, Witness};
use crate::scalar::{Field, Scalar};
use crate::space::BasedSpace;

/// A monoid in the category of based spaces: a space with a multiplication
/// map on its tensor square and a unit element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    space: BasedSpace,
    field: Field,
    /// `space ⊗ space → space`.
    mul: LinMap,
    unit: Vec<Scalar>,
}

impl Algebra {
    pub fn new(space: BasedSpace, mul: LinMap, unit: Vec<Scalar>) -> Result<Self, Error> {
        let n = space.dim();
        if mul.domain().dim() != n * n || mul.codomain().dim() != n {
            return Err(Error::ShapeMismatch(format!(
                "multiplication of shape {}×{} on a space of dimension {n}",
                mul.codomain().dim(),
                mul.domain().dim()
            )));
        }
        if unit.len() != n {
            return Err(Error::ShapeMismatch(format!(
                "unit of length {} on a space of dimension {n}",
                unit.len()
            )));
        }
        let field = mul.field();
        if let Some(s) = unit.iter().find(|s| s.field() != field) {
            return Err(Error::FieldMismatch(format!(
                "unit entry over {} in an algebra over {field}",
                s.field()
            )));
        }
        Ok(Algebra {
            space,
            field,
            mul,
            unit,
        })
    }

    /// Builds the multiplication from structure constants:
    /// `f(i, j)` is the product of the `i`-th and `j`-th basis vectors.
    pub fn from_structure(
        space: BasedSpace,
        field: Field,
        unit: Vec<Scalar>,
        f: impl Fn(usize, usize) -> Vec<Scalar>,
    ) -> Result<Self, Error> {
        let n = space.dim();
        let square = space.tensor(&space);
        let columns: Vec<Vec<Scalar>> = index_pairs(n, n)
            .into_iter()
            .map(|(i, j)| f(i, j))
            .collect();
        let mul = LinMap::from_columns(square, space.clone(), field, &columns)?;
        Algebra::new(space, mul, unit)
    }

    /// The base field as a one-dimensional algebra.
    pub fn base_field(field: Field) -> Self {
        let space = BasedSpace::line();
        Algebra::from_structure(space, field, vec![field.one()], |_, _| vec![field.one()])
            .expect("base field algebra is well formed")
    }

    pub fn space(&self) -> &BasedSpace {
        &self.space
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn mul_map(&self) -> &LinMap {
        &self.mul
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    pub fn mul_vec(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        self.mul.apply(&tensor_vec(a, b))
    }

    /// Product of two basis vectors, read off the structure constants.
    pub fn mul_basis(&self, i: usize, j: usize) -> Vec<Scalar> {
        self.mul.column(i * self.dim() + j)
    }

    /// Left multiplication `x ↦ v·x` as a map.
    pub fn left_mul(&self, v: &[Scalar]) -> LinMap {
        let cols: Vec<Vec<Scalar>> = (0..self.dim())
            .map(|j| self.mul_vec(v, &basis_vec(self.field, self.dim(), j)))
            .collect();
        LinMap::from_columns(self.space.clone(), self.space.clone(), self.field, &cols)
            .expect("square shape")
    }

    /// Right multiplication `x ↦ x·v` as a map.
    pub fn right_mul(&self, v: &[Scalar]) -> LinMap {
        let cols: Vec<Vec<Scalar>> = (0..self.dim())
            .map(|j| self.mul_vec(&basis_vec(self.field, self.dim(), j), v))
            .collect();
        LinMap::from_columns(self.space.clone(), self.space.clone(), self.field, &cols)
            .expect("square shape")
    }

    /// Factorwise product algebra on the tensor product of carriers.
    pub fn tensor(&self, other: &Algebra) -> Algebra {
        let space = self.space.tensor(&other.space);
        let field = self.field;
        let (_n, m) = (self.dim(), other.dim());
        let unit = tensor_vec(&self.unit, &other.unit);
        Algebra::from_structure(space, field, unit, |ij, kl| {
            let (i, j) = (ij / m, ij % m);
            let (k, l) = (kl / m, kl % m);
            tensor_vec(&self.mul_basis(i, k), &other.mul_basis(j, l))
        })
        .expect("tensor algebra is well formed")
    }
}

/// Factorwise product of two vectors of `A^{⊗k}` without materialising the
/// tensor-power algebra: `(x₁⊗…⊗x_k)·(y₁⊗…⊗y_k) = x₁y₁ ⊗ … ⊗ x_k y_k`.
pub fn product_in_tensor_power(a: &Algebra, k: usize, v: &[Scalar], w: &[Scalar]) -> Vec<Scalar> {
    let n = a.dim();
    let total = n.pow(k as u32);
    assert_eq!(v.len(), total);
    assert_eq!(w.len(), total);
    let field = a.field();
    let digits = |mut idx: usize| -> Vec<usize> {
        let mut d = vec![0; k];
        for slot in d.iter_mut().rev() {
            *slot = idx % n;
            idx /= n;
        }
        d
    };
    let mut out = vec![field.zero(); total];
    for (iv, cv) in v.iter().enumerate() {
        if cv.is_zero() {
            continue;
        }
        let dv = digits(iv);
        for (iw, cw) in w.iter().enumerate() {
            if cw.is_zero() {
                continue;
            }
            let dw = digits(iw);
            let mut term = vec![cv * cw];
            for pos in 0..k {
                term = tensor_vec(&term, &a.mul_basis(dv[pos], dw[pos]));
            }
            for (slot, t) in out.iter_mut().zip(&term) {
                if !t.is_zero() {
                    *slot = &*slot + t;
                }
            }
        }
    }
    out
}

/// Checks associativity on all basis triples and both unit laws on all basis
/// vectors. Every failing instance is reported with its basis indices.
pub fn check_algebra(a: &Algebra) -> Report {
    let n = a.dim();
    let mut report = Report::new();

    let triples = index_triples(n, n, n);
    let assoc: Vec<Option<Witness>> = map_collect(&triples, |&(i, j, k)| {
        let left = a.mul_vec(&a.mul_basis(i, j), &basis_vec(a.field, n, k));
        let right = a.mul_vec(&basis_vec(a.field, n, i), &a.mul_basis(j, k));
        if left == right {
            None
        } else {
            Some(Witness::new(vec![i, j, k], left, right))
        }
    });
    report.record("associativity", assoc.into_iter().flatten().collect());

    let idx: Vec<usize> = (0..n).collect();
    let left_unit: Vec<Option<Witness>> = map_collect(&idx, |&i| {
        let e = basis_vec(a.field, n, i);
        let got = a.mul_vec(&a.unit, &e);
        if got == e {
            None
        } else {
            Some(Witness::new(vec![i], got, e))
        }
    });
    report.record("left-unit", left_unit.into_iter().flatten().collect());

    let right_unit: Vec<Option<Witness>> = map_collect(&idx, |&i| {
        let e = basis_vec(a.field, n, i);
        let got = a.mul_vec(&e, &a.unit);
        if got == e {
            None
        } else {
            Some(Witness::new(vec![i], got, e))
        }
    });
    report.record("right-unit", right_unit.into_iter().flatten().collect());

    report
}

/// A linear map between algebras, checkable as a morphism or antimorphism.
#[derive(Clone, Debug)]
pub struct AlgMorphism {
    pub source: Algebra,
    pub target: Algebra,
    pub map: LinMap,
}

impl AlgMorphism {
    pub fn new(source: Algebra, target: Algebra, map: LinMap) -> Result<Self, Error> {
        if map.domain().dim() != source.dim() || map.codomain().dim() != target.dim() {
            return Err(Error::ShapeMismatch(
                "morphism shape does not match source/target".into(),
            ));
        }
        Ok(AlgMorphism {
            source,
            target,
            map,
        })
    }

    /// Unit preservation and multiplicativity on basis pairs.
    pub fn check(&self) -> Report {
        self.check_oriented(false)
    }

    /// Unit preservation and antimultiplicativity: `f(xy) = f(y)f(x)`.
    pub fn check_anti(&self) -> Report {
        self.check_oriented(true)
    }

    fn check_oriented(&self, anti: bool) -> Report {
        let mut report = Report::new();
        let n = self.source.dim();
        let field = self.source.field();

        let unit_image = self.map.apply(self.source.unit());
        let unit = if unit_image == self.target.unit() {
            Vec::new()
        } else {
            vec![Witness::new(
                vec![],
                unit_image.clone(),
                self.target.unit().to_vec(),
            )]
        };
        report.record("unit-preservation", unit);

        let pairs = index_pairs(n, n);
        let mult: Vec<Option<Witness>> = map_collect(&pairs, |&(i, j)| {
            let through = self.map.apply(&self.source.mul_basis(i, j));
            let fi = self.map.apply(&basis_vec(field, n, i));
            let fj = self.map.apply(&basis_vec(field, n, j));
            let outside = if anti {
                self.target.mul_vec(&fj, &fi)
            } else {
                self.target.mul_vec(&fi, &fj)
            };
            if through == outside {
                None
            } else {
                Some(Witness::new(vec![i, j], through, outside))
            }
        });
        report.record(
            if anti {
                "antimultiplicativity"
            } else {
                "multiplicativity"
            },
            mult.into_iter().flatten().collect(),
        );
        report
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rationals
    }

    /// ℚ² with pointwise product.
    pub(crate) fn diagonal_algebra(n: usize, field: Field) -> Algebra {
        let space = BasedSpace::with_prefix("e", n);
        let unit = vec![field.one(); n];
        Algebra::from_structure(space, field, unit, |i, j| {
            let mut v = crate::linmap::zero_vec(field, n);
            if i == j {
                v[i] = field.one();
            }
            v
        })
        .unwrap()
    }

    /// Full matrix algebra via matrix units `E_{ij}`, flattened row-major.
    pub(crate) fn matrix_algebra(n: usize, field: Field) -> Algebra {
        let space = BasedSpace::with_prefix("E", n * n);
        let mut unit = crate::linmap::zero_vec(field, n * n);
        for i in 0..n {
            unit[i * n + i] = field.one();
        }
        Algebra::from_structure(space, field, unit, |a, b| {
            let (i, j) = (a / n, a % n);
            let (k, l) = (b / n, b % n);
            let mut v = crate::linmap::zero_vec(field, n * n);
            if j == k {
                v[i * n + l] = field.one();
            }
            v
        })
        .unwrap()
    }

    #[test]
    fn pointwise_product_is_an_algebra() {
        assert!(check_algebra(&diagonal_algebra(2, q())).passed());
    }

    #[test]
    fn matrix_units_form_an_algebra() {
        assert!(check_algebra(&matrix_algebra(2, q())).passed());
    }

    #[test]
    fn perturbed_matrix_algebra_fails_with_a_witness() {
        let good = matrix_algebra(2, q());
        let n = good.dim();
        // zero out E11 · E12 (basis indices 0 and 1)
        let broken = Algebra::from_structure(
            good.space().clone(),
            q(),
            good.unit().to_vec(),
            |i, j| {
                if (i, j) == (0, 1) {
                    crate::linmap::zero_vec(q(), n)
                } else {
                    good.mul_basis(i, j)
                }
            },
        )
        .unwrap();
        let report = check_algebra(&broken);
        assert!(!report.passed());
        let left_unit = report
            .checks
            .iter()
            .find(|c| c.name == "left-unit")
            .unwrap();
        assert!(!left_unit.passed);
        // the unit law fails exactly on E12
        assert_eq!(left_unit.witnesses[0].indices, vec![1]);
    }

    #[test]
    fn base_field_algebra_passes() {
        assert!(check_algebra(&Algebra::base_field(q())).passed());
        assert!(check_algebra(&Algebra::base_field(Field::prime(5).unwrap())).passed());
    }

    #[test]
    fn tensor_algebra_of_two_matrix_algebras_is_associative() {
        let a = matrix_algebra(2, q());
        let b = diagonal_algebra(2, q());
        assert!(check_algebra(&a.tensor(&b)).passed());
    }

    #[test]
    fn identity_is_a_morphism_and_swap_is_an_automorphism_of_the_diagonal() {
        let a = diagonal_algebra(2, q());
        let id = AlgMorphism::new(
            a.clone(),
            a.clone(),
            LinMap::identity(a.space().clone(), q()),
        )
        .unwrap();
        assert!(id.check().passed());

        let swap = LinMap::new(
            a.space().clone(),
            a.space().clone(),
            q(),
            vec![q().zero(), q().one(), q().one(), q().zero()],
        )
        .unwrap();
        let sw = AlgMorphism::new(a.clone(), a, swap).unwrap();
        assert!(sw.check().passed());
        // commutative target: the antimorphism check agrees
        assert!(sw.check_anti().passed());
    }
}
