//! Right modules and bimodules over structure-constant algebras, and spaces
//! of module homomorphisms computed by exact linear solves.

use crate::algebra::Algebra;
use crate::error::Error;
use crate::linmap::{basis_vec, tensor_vec, LinMap};
use crate::par::{index_triples, map_collect};
use crate::report::{Report, Witness};
use crate::scalar::Scalar;
use crate::space::BasedSpace;
use crate::subspace::SubSpace;

/// A space with a right action `X ⊗ A → X`.
#[derive(Clone, Debug)]
pub struct RightModule {
    pub algebra: Algebra,
    pub space: BasedSpace,
    pub action: LinMap,
}

impl RightModule {
    pub fn new(algebra: Algebra, space: BasedSpace, action: LinMap) -> Result<Self, Error> {
        if action.domain().dim() != space.dim() * algebra.dim()
            || action.codomain().dim() != space.dim()
        {
            return Err(Error::ShapeMismatch("right action shape".into()));
        }
        Ok(RightModule {
            algebra,
            space,
            action,
        })
    }

    /// The algebra acting on itself by multiplication.
    pub fn regular(algebra: &Algebra) -> Self {
        RightModule {
            algebra: algebra.clone(),
            space: algebra.space().clone(),
            action: algebra.mul_map().clone(),
        }
    }

    pub fn act(&self, x: &[Scalar], a: &[Scalar]) -> Vec<Scalar> {
        self.action.apply(&tensor_vec(x, a))
    }

    pub fn act_basis(&self, i: usize, k: usize) -> Vec<Scalar> {
        self.action.column(i * self.algebra.dim() + k)
    }

    /// Associativity and unitality of the action on basis elements.
    pub fn check(&self) -> Report {
        let mut report = Report::new();
        let d = self.space.dim();
        let n = self.algebra.dim();
        let field = self.algebra.field();

        let triples = index_triples(d, n, n);
        let assoc: Vec<Option<Witness>> = map_collect(&triples, |&(i, j, k)| {
            let stepwise = self.act(&self.act_basis(i, j), &basis_vec(field, n, k));
            let combined = self.act(&basis_vec(field, d, i), &self.algebra.mul_basis(j, k));
            if stepwise == combined {
                None
            } else {
                Some(Witness::new(vec![i, j, k], stepwise, combined))
            }
        });
        report.record("action-associativity", assoc.into_iter().flatten().collect());

        let idx: Vec<usize> = (0..d).collect();
        let unit: Vec<Option<Witness>> = map_collect(&idx, |&i| {
            let e = basis_vec(field, d, i);
            let got = self.act(&e, self.algebra.unit());
            if got == e {
                None
            } else {
                Some(Witness::new(vec![i], got, e))
            }
        });
        report.record("action-unit", unit.into_iter().flatten().collect());
        report
    }
}

/// A space with commuting left and right actions of two algebras.
#[derive(Clone, Debug)]
pub struct Bimodule {
    pub left: Algebra,
    pub right: Algebra,
    pub space: BasedSpace,
    /// `left.space ⊗ space → space`.
    pub left_action: LinMap,
    /// `space ⊗ right.space → space`.
    pub right_action: LinMap,
}

impl Bimodule {
    pub fn new(
        left: Algebra,
        right: Algebra,
        space: BasedSpace,
        left_action: LinMap,
        right_action: LinMap,
    ) -> Result<Self, Error> {
        let d = space.dim();
        if left_action.domain().dim() != left.dim() * d || left_action.codomain().dim() != d {
            return Err(Error::ShapeMismatch("left action shape".into()));
        }
        if right_action.domain().dim() != d * right.dim() || right_action.codomain().dim() != d {
            return Err(Error::ShapeMismatch("right action shape".into()));
        }
        Ok(Bimodule {
            left,
            right,
            space,
            left_action,
            right_action,
        })
    }

    /// The algebra as a bimodule over itself by multiplication.
    pub fn regular(a: &Algebra) -> Self {
        Bimodule {
            left: a.clone(),
            right: a.clone(),
            space: a.space().clone(),
            left_action: a.mul_map().clone(),
            right_action: a.mul_map().clone(),
        }
    }

    /// Any space as a bimodule over the base field, acting by scalars.
    pub fn scalars(space: BasedSpace, field: crate::scalar::Field) -> Self {
        let k = Algebra::base_field(field);
        let id = LinMap::identity(space.clone(), field);
        // k ⊗ X and X ⊗ k flatten to X itself
        Bimodule {
            left: k.clone(),
            right: k,
            space,
            left_action: id.clone(),
            right_action: id,
        }
    }

    pub fn act_left(&self, r: &[Scalar], x: &[Scalar]) -> Vec<Scalar> {
        self.left_action.apply(&tensor_vec(r, x))
    }

    pub fn act_right(&self, x: &[Scalar], s: &[Scalar]) -> Vec<Scalar> {
        self.right_action.apply(&tensor_vec(x, s))
    }
}

/// All bimodule axioms on basis elements: associativity and unitality of each
/// action, plus commutation of the two actions.
pub fn check_bimodule(x: &Bimodule) -> Report {
    let mut report = Report::new();
    let d = x.space.dim();
    let nl = x.left.dim();
    let nr = x.right.dim();
    let field = x.left.field();

    let lt = index_triples(nl, nl, d);
    let left_assoc: Vec<Option<Witness>> = map_collect(&lt, |&(r, s, i)| {
        let stepwise = x.act_left(&basis_vec(field, nl, r), &x.act_left(&basis_vec(field, nl, s), &basis_vec(field, d, i)));
        let combined = x.act_left(&x.left.mul_basis(r, s), &basis_vec(field, d, i));
        if stepwise == combined {
            None
        } else {
            Some(Witness::new(vec![r, s, i], stepwise, combined))
        }
    });
    report.record("left-associativity", left_assoc.into_iter().flatten().collect());

    let idx: Vec<usize> = (0..d).collect();
    let left_unit: Vec<Option<Witness>> = map_collect(&idx, |&i| {
        let e = basis_vec(field, d, i);
        let got = x.act_left(x.left.unit(), &e);
        if got == e {
            None
        } else {
            Some(Witness::new(vec![i], got, e))
        }
    });
    report.record("left-unit", left_unit.into_iter().flatten().collect());

    let rt = index_triples(d, nr, nr);
    let right_assoc: Vec<Option<Witness>> = map_collect(&rt, |&(i, r, s)| {
        let stepwise = x.act_right(&x.act_right(&basis_vec(field, d, i), &basis_vec(field, nr, r)), &basis_vec(field, nr, s));
        let combined = x.act_right(&basis_vec(field, d, i), &x.right.mul_basis(r, s));
        if stepwise == combined {
            None
        } else {
            Some(Witness::new(vec![i, r, s], stepwise, combined))
        }
    });
    report.record("right-associativity", right_assoc.into_iter().flatten().collect());

    let right_unit: Vec<Option<Witness>> = map_collect(&idx, |&i| {
        let e = basis_vec(field, d, i);
        let got = x.act_right(&e, x.right.unit());
        if got == e {
            None
        } else {
            Some(Witness::new(vec![i], got, e))
        }
    });
    report.record("right-unit", right_unit.into_iter().flatten().collect());

    let ct = index_triples(nl, d, nr);
    let commute: Vec<Option<Witness>> = map_collect(&ct, |&(r, i, s)| {
        let left_first = x.act_right(&x.act_left(&basis_vec(field, nl, r), &basis_vec(field, d, i)), &basis_vec(field, nr, s));
        let right_first = x.act_left(&basis_vec(field, nl, r), &x.act_right(&basis_vec(field, d, i), &basis_vec(field, nr, s)));
        if left_first == right_first {
            None
        } else {
            Some(Witness::new(vec![r, i, s], left_first, right_first))
        }
    });
    report.record("actions-commute", commute.into_iter().flatten().collect());

    report
}

/// Basis of `Hom_A(X, Y)`, found by solving `f ∘ ρ_X = ρ_Y ∘ (f ⊗ id)`
/// entrywise. The basis is canonical (echelon form of the flattened
/// solution space, row-major `f[r][c] ↦ r·dim(X)+c`).
pub fn module_hom_space(x: &RightModule, y: &RightModule) -> Result<Vec<LinMap>, Error> {
    if x.algebra != y.algebra {
        return Err(Error::AlgebraMismatch(
            "module homomorphisms need a common algebra".into(),
        ));
    }
    let dx = x.space.dim();
    let dy = y.space.dim();
    let n = x.algebra.dim();
    let field = x.algebra.field();
    let unknowns = dy * dx;

    // One equation block per (domain basis i, algebra basis k), each a vector
    // equation in Y: sum_m F[r][m]·ρX[m,(i,k)] − sum_mY ρY[r,(m,k)]·F[m][i] = 0.
    let mut rows = Vec::with_capacity(dx * n * dy);
    for i in 0..dx {
        for k in 0..n {
            let xa = x.act_basis(i, k);
            for r in 0..dy {
                let mut row = vec![field.zero(); unknowns];
                for (m, coef) in xa.iter().enumerate() {
                    if !coef.is_zero() {
                        row[r * dx + m] = &row[r * dx + m] + coef;
                    }
                }
                for m in 0..dy {
                    let coef = y.action.at(r, m * n + k);
                    if !coef.is_zero() {
                        row[m * dx + i] = &row[m * dx + i] - coef;
                    }
                }
                rows.push(row);
            }
        }
    }

    let constraint_space = BasedSpace::with_prefix("f", unknowns);
    let kills = LinMap::new(
        constraint_space,
        BasedSpace::with_prefix("eq", rows.len()),
        field,
        rows.into_iter().flatten().collect(),
    )?;
    let solutions = SubSpace::kernel_of(&kills);

    let maps = solutions
        .basis()
        .iter()
        .map(|flat| {
            LinMap::from_fn(x.space.clone(), y.space.clone(), field, |r, c| {
                flat[r * dx + c].clone()
            })
        })
        .collect();
    Ok(maps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::check_algebra;
    use crate::corpus::{group_algebra_wba, GroupTable};
    use crate::scalar::Field;

    fn q() -> Field {
        Field::Rationals
    }

    #[test]
    fn regular_bimodule_passes() {
        let a = crate::corpus::groupoid_wba(2, &crate::corpus::GroupoidPattern::Pair, q())
            .unwrap()
            .algebra()
            .clone();
        assert!(check_algebra(&a).passed());
        assert!(check_bimodule(&Bimodule::regular(&a)).passed());
    }

    #[test]
    fn broken_left_unit_is_reported() {
        let a = Algebra::base_field(q());
        let space = BasedSpace::with_prefix("x", 2);
        let broken = Bimodule::new(
            a.clone(),
            a,
            space.clone(),
            LinMap::zero(space.clone(), space.clone(), q()),
            LinMap::identity(space, q()),
        )
        .unwrap();
        let report = check_bimodule(&broken);
        assert!(!report.passed());
        assert!(report.failed_names().contains(&"left-unit".to_string()));
    }

    #[test]
    fn endomorphisms_of_the_regular_module_of_a_group_algebra() {
        let w = group_algebra_wba(&GroupTable::cyclic(2), q()).unwrap();
        let reg = RightModule::regular(w.algebra());
        let homs = module_hom_space(&reg, &reg).unwrap();
        assert_eq!(homs.len(), 2);
    }

    #[test]
    fn endomorphisms_of_the_regular_pair_groupoid_module() {
        let w = crate::corpus::groupoid_wba(2, &crate::corpus::GroupoidPattern::Pair, q()).unwrap();
        let reg = RightModule::regular(w.algebra());
        let homs = module_hom_space(&reg, &reg).unwrap();
        assert_eq!(homs.len(), 4);
    }

    #[test]
    fn schur_for_the_simple_module_over_the_pair_groupoid_algebra() {
        let w = crate::corpus::groupoid_wba(2, &crate::corpus::GroupoidPattern::Pair, q()).unwrap();
        let a = w.algebra().clone();
        // row vectors with x ◁ m = x·m: basis r_0, r_1; r_x ◁ g_{uv} = δ_{x,u} r_v
        let space = BasedSpace::with_prefix("r", 2);
        let action = LinMap::from_fn(space.tensor(a.space()), space.clone(), q(), |row, col| {
            let (x, g) = (col / 4, col % 4);
            let (u, v) = (g / 2, g % 2);
            if x == u && row == v {
                q().one()
            } else {
                q().zero()
            }
        });
        let simple = RightModule::new(a, space, action).unwrap();
        assert!(simple.check().passed());
        let homs = module_hom_space(&simple, &simple).unwrap();
        assert_eq!(homs.len(), 1);
    }
}
