//! Separable Frobenius structures on algebras and the induced section of the
//! bimodule tensor projection.
//!
//! The data is a counit `ψ: R → k` and a Casimir element `e = Σᵢ eᵢ⊗fᵢ` in
//! `R ⊗ R`; the comultiplication is derived as `σ(r) = (r⊗1)·e` and the
//! Casimir identity `(r⊗1)e = e(1⊗r)` is checked so the mirror convention
//! would give the same map. A verified structure splits every projection
//! `X ⊗ Y → X ⊗_R Y` via `x⊗_R y ↦ Σᵢ x·eᵢ ⊗ fᵢ·y`.

use crate::algebra::Algebra;
use crate::error::Error;
use crate::linmap::{basis_vec, compare_maps, tensor_vec, vec_is_zero, LinMap};
use crate::module::Bimodule;
use crate::report::{Report, Witness};
use crate::scalar::Scalar;
use crate::tensor_over::{left_action_by, right_action_by, BimoduleTensor};

#[derive(Clone, Debug)]
pub struct SepFrobenius {
    pub base: Algebra,
    /// `ψ: R → k`.
    pub counit: LinMap,
    /// The Casimir element in flattened `R ⊗ R` coordinates.
    pub casimir: Vec<Scalar>,
}

impl SepFrobenius {
    pub fn new(base: Algebra, counit: LinMap, casimir: Vec<Scalar>) -> Result<Self, Error> {
        let n = base.dim();
        if counit.domain().dim() != n || counit.codomain().dim() != 1 {
            return Err(Error::ShapeMismatch("Frobenius counit must map R → k".into()));
        }
        if casimir.len() != n * n {
            return Err(Error::ShapeMismatch(
                "Casimir element must live in R ⊗ R".into(),
            ));
        }
        Ok(SepFrobenius {
            base,
            counit,
            casimir,
        })
    }

    /// The derived comultiplication `σ(r) = (r⊗1)·e`.
    pub fn comul(&self) -> LinMap {
        let n = self.base.dim();
        let field = self.base.field();
        let cols: Vec<Vec<Scalar>> = (0..n)
            .map(|i| {
                let mut out = vec![field.zero(); n * n];
                for u in 0..n {
                    for v in 0..n {
                        let coef = &self.casimir[u * n + v];
                        if coef.is_zero() {
                            continue;
                        }
                        let term = tensor_vec(&self.base.mul_basis(i, u), &basis_vec(field, n, v));
                        for (slot, t) in out.iter_mut().zip(&term) {
                            *slot = &*slot + &(coef * t);
                        }
                    }
                }
                out
            })
            .collect();
        LinMap::from_columns(
            self.base.space().clone(),
            self.base.space().tensor(self.base.space()),
            field,
            &cols,
        )
        .expect("comultiplication shape")
    }
}

fn first_witness(mut witnesses: Vec<Witness>) -> Vec<Witness> {
    witnesses.truncate(1);
    witnesses
}

/// Verifies, on all basis elements, the Casimir identity, coassociativity of
/// the derived `σ`, both counit laws with `ψ`, both Frobenius compatibilities
/// and the separability `μ∘σ = id`. Only the first witness per axiom is kept.
pub fn check_sep_frobenius(sf: &SepFrobenius) -> Report {
    let mut report = Report::new();
    let r = &sf.base;
    let n = r.dim();
    let field = r.field();
    let sigma = sf.comul();
    let id = LinMap::identity(r.space().clone(), field);
    let id2 = LinMap::identity(r.space().tensor(r.space()), field);
    let _ = id2;

    // (r⊗1)e = e(1⊗r)
    let mut casimir_witnesses = Vec::new();
    for i in 0..n {
        let left = sigma.column(i);
        let mut right = vec![field.zero(); n * n];
        for u in 0..n {
            for v in 0..n {
                let coef = &sf.casimir[u * n + v];
                if coef.is_zero() {
                    continue;
                }
                let term = tensor_vec(&basis_vec(field, n, u), &r.mul_basis(v, i));
                for (slot, t) in right.iter_mut().zip(&term) {
                    *slot = &*slot + &(coef * t);
                }
            }
        }
        if left != right {
            casimir_witnesses.push(Witness::new(vec![i], left, right));
        }
    }
    report.record("casimir", first_witness(casimir_witnesses));

    let coassoc_lhs = sigma.tensor(&id).compose(&sigma);
    let coassoc_rhs = id.tensor(&sigma).compose(&sigma);
    report.record(
        "coassociativity",
        first_witness(compare_maps(&coassoc_lhs, &coassoc_rhs)),
    );

    let counit_left = sf.counit.tensor(&id).compose(&sigma);
    report.record("counit-left", first_witness(compare_maps(&counit_left, &id)));
    let counit_right = id.tensor(&sf.counit).compose(&sigma);
    report.record(
        "counit-right",
        first_witness(compare_maps(&counit_right, &id)),
    );

    let mu = r.mul_map();
    let sigma_mu = sigma.compose(mu);
    let frob_left = mu.tensor(&id).compose(&id.tensor(&sigma));
    report.record(
        "frobenius-left",
        first_witness(compare_maps(&frob_left, &sigma_mu)),
    );
    let frob_right = id.tensor(mu).compose(&sigma.tensor(&id));
    report.record(
        "frobenius-right",
        first_witness(compare_maps(&frob_right, &sigma_mu)),
    );

    let mu_sigma = mu.compose(&sigma);
    report.record("separability", first_witness(compare_maps(&mu_sigma, &id)));

    report
}

/// The map `x⊗y ↦ Σᵢ (x◁eᵢ) ⊗ (fᵢ▷y)` on the flat tensor of two bimodules.
pub(crate) fn casimir_mixer(x: &Bimodule, y: &Bimodule, sf: &SepFrobenius) -> LinMap {
    let n = sf.base.dim();
    let field = sf.base.field();
    let mut acc = LinMap::zero(
        x.space.tensor(&y.space),
        x.space.tensor(&y.space),
        field,
    );
    for u in 0..n {
        for v in 0..n {
            let coef = &sf.casimir[u * n + v];
            if coef.is_zero() {
                continue;
            }
            let on_x = right_action_by(x, &basis_vec(field, n, u));
            let on_y = left_action_by(y, &basis_vec(field, n, v));
            acc = acc.add(&on_x.tensor(&on_y).scale(coef));
        }
    }
    acc
}

/// Section of the projection `X ⊗ Y → X ⊗_R Y` induced by a separable
/// Frobenius structure on `R`: the class of `x ⊗ y` goes to
/// `Σᵢ x·eᵢ ⊗ fᵢ·y`. Fails if the formula is not constant on classes, which
/// signals that `sf` is not separable Frobenius for these actions.
pub fn frobenius_section(
    tensor: &BimoduleTensor,
    sf: &SepFrobenius,
) -> Result<LinMap, Error> {
    if tensor.factors.len() != 2 {
        return Err(Error::ShapeMismatch(
            "the Frobenius section is defined for binary tensor products".into(),
        ));
    }
    if tensor.over != sf.base {
        return Err(Error::AlgebraMismatch(
            "Frobenius structure is over a different algebra than the tensor product".into(),
        ));
    }
    let mixer = casimir_mixer(&tensor.factors[0], &tensor.factors[1], sf);
    for (idx, w) in tensor.relations.basis().iter().enumerate() {
        if !vec_is_zero(&mixer.apply(w)) {
            return Err(Error::NotBalanced(format!(
                "Frobenius section is not constant on classes (relation generator {idx})"
            )));
        }
    }
    Ok(mixer.compose(&tensor.section))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{diagonal_algebra, groupoid_wba, matrix_frobenius, GroupoidPattern};
    use crate::scalar::Field;
    use crate::tensor_over::{induced_on_quotient, tensor_over};
    use crate::wba::{base_sep_frobenius, wba_to_bialgebroid};

    fn q() -> Field {
        Field::Rationals
    }

    #[test]
    fn base_field_structure_passes() {
        let k = Algebra::base_field(q());
        let psi = LinMap::identity(k.space().clone(), q());
        let sf = SepFrobenius::new(k, psi, vec![q().one()]).unwrap();
        assert!(check_sep_frobenius(&sf).passed());
    }

    #[test]
    fn diagonal_algebra_with_diagonal_casimir_passes() {
        let r = diagonal_algebra(3, q());
        let psi = LinMap::from_fn(r.space().clone(), crate::space::BasedSpace::line(), q(), |_, _| {
            q().one()
        });
        let mut casimir = crate::linmap::zero_vec(q(), 9);
        for x in 0..3 {
            casimir[x * 3 + x] = q().one();
        }
        let sf = SepFrobenius::new(r, psi, casimir).unwrap();
        assert!(check_sep_frobenius(&sf).passed());
    }

    #[test]
    fn matrix_algebra_structure_passes_over_q_and_fails_over_f2() {
        assert!(check_sep_frobenius(&matrix_frobenius(2, q()).unwrap()).passed());
        assert!(matches!(
            matrix_frobenius(2, Field::prime(2).unwrap()),
            Err(Error::CharacteristicDivides { p: 2, n: 2 })
        ));
    }

    #[test]
    fn section_over_the_base_field_is_the_identity() {
        let x = Bimodule::scalars(crate::space::BasedSpace::with_prefix("x", 2), q());
        let k = Algebra::base_field(q());
        let psi = LinMap::identity(k.space().clone(), q());
        let sf = SepFrobenius::new(k.clone(), psi, vec![q().one()]).unwrap();
        let t = tensor_over(&x, &x, &k).unwrap();
        let section = frobenius_section(&t, &sf).unwrap();
        assert!(section.is_identity());
    }

    #[test]
    fn pair_groupoid_section_splits_the_projection() {
        let w = groupoid_wba(2, &GroupoidPattern::Pair, q()).unwrap();
        let b = wba_to_bialgebroid(&w).unwrap();
        let sf = base_sep_frobenius(&w).unwrap();
        let section = frobenius_section(&b.tensor_square, &sf).unwrap();
        assert!(b.tensor_square.projection.compose(&section).is_identity());
    }

    #[test]
    fn section_is_natural_for_bimodule_maps() {
        let w = groupoid_wba(2, &GroupoidPattern::Pair, q()).unwrap();
        let b = wba_to_bialgebroid(&w).unwrap();
        let sf = base_sep_frobenius(&w).unwrap();
        let t = &b.tensor_square;
        let section = frobenius_section(t, &sf).unwrap();
        // left multiplications are bimodule endomorphisms for this structure
        let a = w.algebra();
        let f = a.left_mul(&basis_vec(q(), 4, 1));
        let g = a.left_mul(&basis_vec(q(), 4, 2));
        let descended = induced_on_quotient(t, &f, &g).unwrap();
        let lhs = f.tensor(&g).compose(&section);
        let rhs = section.compose(&descended);
        assert!(lhs.same_matrix(&rhs));
    }
}
