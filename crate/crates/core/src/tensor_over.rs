//! Tensor products of bimodules over an algebra, realised as coequalizer
//! quotients of the flat tensor product.
//!
//! The relation span of `X ⊗_R Y` is generated by `(x◁r)⊗y − x⊗(r▷y)` over
//! basis vectors. Longer chains quotient the flat tensor of all factors by
//! the relation spans of every adjacent position at once, so both bracketings
//! of a triple product are literally the same space and `⊗_R` is strictly
//! associative in coordinates.

use crate::algebra::Algebra;
use crate::error::Error;
use crate::linmap::{apply_on_left, apply_on_right, basis_vec, tensor_vec, vec_is_zero, vec_sub, LinMap};
use crate::module::Bimodule;
use crate::scalar::Scalar;
use crate::space::BasedSpace;
use crate::subspace::SubSpace;

/// The quotient `X_1 ⊗_R … ⊗_R X_n` with its projection, section, relation
/// span and induced outer bimodule structure.
#[derive(Clone, Debug)]
pub struct BimoduleTensor {
    pub factors: Vec<Bimodule>,
    pub over: Algebra,
    /// Carrier with the outer (leftmost/rightmost) actions.
    pub bimodule: Bimodule,
    /// Flat tensor of the factor spaces onto the carrier.
    pub projection: LinMap,
    /// Right inverse of the projection picking non-pivot representatives.
    pub section: LinMap,
    pub relations: SubSpace,
}

impl BimoduleTensor {
    pub fn carrier(&self) -> &BasedSpace {
        &self.bimodule.space
    }

    pub fn flat_space(&self) -> &BasedSpace {
        self.projection.domain()
    }

    pub fn dim(&self) -> usize {
        self.carrier().dim()
    }

    /// The coequalizer equation `π∘(ρ⊗id) = π∘(id⊗λ)` at one adjacent
    /// position, as a literal matrix identity.
    pub fn coequalizes_at(&self, position: usize) -> bool {
        let field = self.over.field();
        let n = self.over.dim();
        let pre: usize = self.factors[..position].iter().map(|f| f.space.dim()).product();
        let post: usize = self.factors[position + 2..].iter().map(|f| f.space.dim()).product();
        let dx = self.factors[position].space.dim();
        let dy = self.factors[position + 1].space.dim();

        for r in 0..n {
            let rv = basis_vec(field, n, r);
            let right_act = right_action_by(&self.factors[position], &rv);
            let left_act = left_action_by(&self.factors[position + 1], &rv);
            // (… x◁r … y …) and (… x … r▷y …) inside the flat tensor
            let via_right = embed_pair_map(&right_act, dy, pre, post, true);
            let via_left = embed_pair_map(&left_act, dx, pre, post, false);
            let lhs = self.projection.compose(&via_right);
            let rhs = self.projection.compose(&via_left);
            if !lhs.same_matrix(&rhs) {
                return false;
            }
        }
        true
    }
}

/// `x ↦ x◁r` on a bimodule.
pub(crate) fn right_action_by(x: &Bimodule, r: &[Scalar]) -> LinMap {
    let d = x.space.dim();
    let field = x.right.field();
    let cols: Vec<Vec<Scalar>> = (0..d)
        .map(|i| x.act_right(&basis_vec(field, d, i), r))
        .collect();
    LinMap::from_columns(x.space.clone(), x.space.clone(), field, &cols).expect("square")
}

/// `x ↦ r▷x` on a bimodule.
pub(crate) fn left_action_by(x: &Bimodule, r: &[Scalar]) -> LinMap {
    let d = x.space.dim();
    let field = x.left.field();
    let cols: Vec<Vec<Scalar>> = (0..d)
        .map(|i| x.act_left(r, &basis_vec(field, d, i)))
        .collect();
    LinMap::from_columns(x.space.clone(), x.space.clone(), field, &cols).expect("square")
}

/// Extends a map acting on one tensor slot (the left or right member of an
/// adjacent pair) to the flat tensor `pre ⊗ X ⊗ Y ⊗ post`.
fn embed_pair_map(f: &LinMap, other_dim: usize, pre: usize, post: usize, on_left: bool) -> LinMap {
    let field = f.field();
    let id_pre = LinMap::identity(BasedSpace::with_prefix("p", pre), field);
    let id_other = LinMap::identity(BasedSpace::with_prefix("o", other_dim), field);
    let id_post = LinMap::identity(BasedSpace::with_prefix("q", post), field);
    let middle = if on_left {
        f.tensor(&id_other)
    } else {
        id_other.tensor(f)
    };
    id_pre.tensor(&middle).tensor(&id_post)
}

/// `X ⊗_R Y` for bimodules with matching middle algebra.
pub fn tensor_over(x: &Bimodule, y: &Bimodule, over: &Algebra) -> Result<BimoduleTensor, Error> {
    if x.right != *over || y.left != *over {
        return Err(Error::AlgebraMismatch(
            "tensor product needs X-right and Y-left algebras equal to the given algebra".into(),
        ));
    }
    tensor_over_many(&[x.clone(), y.clone()], over)
}

/// `X_1 ⊗_R … ⊗_R X_n`, quotienting by every adjacent relation span at once.
pub fn tensor_over_many(factors: &[Bimodule], over: &Algebra) -> Result<BimoduleTensor, Error> {
    if factors.is_empty() {
        return Err(Error::ShapeMismatch("tensor product of no factors".into()));
    }
    let field = over.field();
    for w in factors.windows(2) {
        if w[0].right != *over || w[1].left != *over {
            return Err(Error::AlgebraMismatch(
                "adjacent factors must be bimodules over the given algebra".into(),
            ));
        }
    }

    let flat_space = factors
        .iter()
        .skip(1)
        .fold(factors[0].space.clone(), |acc, f| acc.tensor(&f.space));
    let flat_dim = flat_space.dim();

    let mut generators: Vec<Vec<Scalar>> = Vec::new();
    for position in 0..factors.len().saturating_sub(1) {
        let pre: usize = factors[..position].iter().map(|f| f.space.dim()).product();
        let post: usize = factors[position + 2..].iter().map(|f| f.space.dim()).product();
        let dx = factors[position].space.dim();
        let dy = factors[position + 1].space.dim();
        for i in 0..dx {
            for r in 0..over.dim() {
                for j in 0..dy {
                    let rv = basis_vec(field, over.dim(), r);
                    let moved_right = tensor_vec(
                        &factors[position].act_right(&basis_vec(field, dx, i), &rv),
                        &basis_vec(field, dy, j),
                    );
                    let moved_left = tensor_vec(
                        &basis_vec(field, dx, i),
                        &factors[position + 1].act_left(&rv, &basis_vec(field, dy, j)),
                    );
                    let mid = vec_sub(&moved_right, &moved_left);
                    if vec_is_zero(&mid) {
                        continue;
                    }
                    for pre_idx in 0..pre {
                        for post_idx in 0..post {
                            let mut v = vec![field.zero(); flat_dim];
                            for (ab, coef) in mid.iter().enumerate() {
                                if !coef.is_zero() {
                                    let idx = (pre_idx * dx * dy + ab) * post + post_idx;
                                    v[idx] = coef.clone();
                                }
                            }
                            generators.push(v);
                        }
                    }
                }
            }
        }
    }

    let relations = SubSpace::from_generators(flat_space.clone(), field, generators);
    let quotient = relations.quotient();

    let rest_dim: usize = factors[1..].iter().map(|f| f.space.dim()).product();
    let head_dim: usize = factors[..factors.len() - 1]
        .iter()
        .map(|f| f.space.dim())
        .product();
    let first = &factors[0];
    let last = &factors[factors.len() - 1];

    let left_cols: Vec<Vec<Scalar>> = {
        let mut cols = Vec::new();
        for l in 0..first.left.dim() {
            let lmap = left_action_by(first, &basis_vec(field, first.left.dim(), l));
            for q in 0..quotient.space.dim() {
                let flat = quotient.section.column(q);
                let acted = apply_on_left(&lmap, &flat, rest_dim);
                cols.push(quotient.projection.apply(&acted));
            }
        }
        cols
    };
    let left_action = LinMap::from_columns(
        first.left.space().tensor(&quotient.space),
        quotient.space.clone(),
        field,
        &left_cols,
    )?;

    let right_cols: Vec<Vec<Scalar>> = {
        let mut cols = Vec::new();
        for q in 0..quotient.space.dim() {
            let flat = quotient.section.column(q);
            for r in 0..last.right.dim() {
                let rmap = right_action_by(last, &basis_vec(field, last.right.dim(), r));
                let acted = apply_on_right(&rmap, &flat, head_dim);
                cols.push(quotient.projection.apply(&acted));
            }
        }
        cols
    };
    let right_action = LinMap::from_columns(
        quotient.space.tensor(last.right.space()),
        quotient.space.clone(),
        field,
        &right_cols,
    )?;

    let bimodule = Bimodule::new(
        first.left.clone(),
        last.right.clone(),
        quotient.space.clone(),
        left_action,
        right_action,
    )?;

    Ok(BimoduleTensor {
        factors: factors.to_vec(),
        over: over.clone(),
        bimodule,
        projection: quotient.projection,
        section: quotient.section,
        relations,
    })
}

/// Descends `f ⊗ g` to a map between quotients, verifying first that the
/// relation span is respected; failure means the pair is not balanced.
pub fn descend_tensor_map(
    src: &BimoduleTensor,
    dst: &BimoduleTensor,
    f: &LinMap,
    g: &LinMap,
) -> Result<LinMap, Error> {
    assert_eq!(src.factors.len(), 2, "descent is defined for binary tensors");
    assert_eq!(dst.factors.len(), 2, "descent is defined for binary tensors");
    let dy_src = src.factors[1].space.dim();
    let dx_dst = f.codomain().dim();

    let push = |flat: &[Scalar]| -> Vec<Scalar> {
        let half = apply_on_left(f, flat, dy_src);
        apply_on_right(g, &half, dx_dst)
    };

    for (idx, w) in src.relations.basis().iter().enumerate() {
        let moved = dst.projection.apply(&push(w));
        if !vec_is_zero(&moved) {
            return Err(Error::NotBalanced(format!(
                "relation generator {idx} is not sent into the target relation span"
            )));
        }
    }

    let cols: Vec<Vec<Scalar>> = (0..src.dim())
        .map(|q| dst.projection.apply(&push(&src.section.column(q))))
        .collect();
    LinMap::from_columns(
        src.carrier().clone(),
        dst.carrier().clone(),
        src.over.field(),
        &cols,
    )
}

/// The unique map `f ⊗_R g` on `X ⊗_R Y` induced by balanced bimodule
/// endomorphisms of the factors.
pub fn induced_on_quotient(
    tensor: &BimoduleTensor,
    f: &LinMap,
    g: &LinMap,
) -> Result<LinMap, Error> {
    descend_tensor_map(tensor, tensor, f, g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{groupoid_wba, GroupoidPattern};
    use crate::scalar::Field;
    use crate::wba::wba_to_bialgebroid;

    fn q() -> Field {
        Field::Rationals
    }

    #[test]
    fn tensor_over_the_base_field_is_the_plain_tensor() {
        let x = Bimodule::scalars(BasedSpace::with_prefix("x", 2), q());
        let y = Bimodule::scalars(BasedSpace::with_prefix("y", 3), q());
        let k = Algebra::base_field(q());
        let t = tensor_over(&x, &y, &k).unwrap();
        assert_eq!(t.dim(), 6);
        assert!(t.projection.is_identity());
        assert!(t.relations.is_zero());
    }

    #[test]
    fn diagonal_algebra_tensor_over_itself_identifies_matching_indices() {
        let w = groupoid_wba(2, &GroupoidPattern::Discrete, q()).unwrap();
        let a = w.algebra();
        let reg = Bimodule::regular(a);
        let t = tensor_over(&reg, &reg, a).unwrap();
        assert_eq!(t.dim(), 2);
        assert!(t.coequalizes_at(0));
        // dimension bookkeeping
        assert_eq!(t.dim() + t.relations.rank(), 4);
    }

    #[test]
    fn pair_groupoid_tensor_square_over_its_base_has_dimension_eight() {
        let w = groupoid_wba(2, &GroupoidPattern::Pair, q()).unwrap();
        let b = wba_to_bialgebroid(&w).unwrap();
        let t = &b.tensor_square;
        assert_eq!(t.dim(), 8);
        assert_eq!(t.dim() + t.relations.rank(), 16);
        assert!(t.coequalizes_at(0));
    }

    #[test]
    fn induced_map_of_identities_is_the_identity_and_of_zero_is_zero() {
        let w = groupoid_wba(2, &GroupoidPattern::Pair, q()).unwrap();
        let b = wba_to_bialgebroid(&w).unwrap();
        let t = &b.tensor_square;
        let a_space = w.algebra().space().clone();
        let id = LinMap::identity(a_space.clone(), q());
        assert!(induced_on_quotient(t, &id, &id).unwrap().is_identity());
        let zero = LinMap::zero(a_space.clone(), a_space, q());
        assert!(induced_on_quotient(t, &zero, &zero).unwrap().is_zero());
    }

    #[test]
    fn unbalanced_map_is_rejected() {
        let w = groupoid_wba(2, &GroupoidPattern::Pair, q()).unwrap();
        let b = wba_to_bialgebroid(&w).unwrap();
        let t = &b.tensor_square;
        // swapping the target object of each morphism is not right-linear
        let a_space = w.algebra().space().clone();
        let swap_target = LinMap::from_fn(a_space.clone(), a_space.clone(), q(), |r, c| {
            if r == (c ^ 1) {
                q().one()
            } else {
                q().zero()
            }
        });
        let id = LinMap::identity(a_space, q());
        assert!(matches!(
            induced_on_quotient(t, &swap_target, &id),
            Err(Error::NotBalanced(_))
        ));
    }

    #[test]
    fn iterated_quotients_have_the_same_relation_span() {
        let w = groupoid_wba(2, &GroupoidPattern::Pair, q()).unwrap();
        let b = wba_to_bialgebroid(&w).unwrap();
        let a_bim = b.base_bimodule().clone();
        let r = b.base.clone();

        let triple = tensor_over_many(&[a_bim.clone(), a_bim.clone(), a_bim.clone()], &r).unwrap();
        let pair = tensor_over(&a_bim, &a_bim, &r).unwrap();

        // left-then-right: ker of π_{(XY)Z} ∘ (π_XY ⊗ id)
        let id = LinMap::identity(a_bim.space.clone(), q());
        let left_first = {
            let outer = tensor_over(&pair.bimodule, &a_bim, &r).unwrap();
            outer.projection.compose(&pair.projection.tensor(&id))
        };
        let right_first = {
            let outer = tensor_over(&a_bim, &pair.bimodule, &r).unwrap();
            outer.projection.compose(&id.tensor(&pair.projection))
        };
        let k_left = SubSpace::kernel_of(&left_first);
        let k_right = SubSpace::kernel_of(&right_first);
        assert_eq!(k_left, k_right);
        assert_eq!(k_left, triple.relations);
    }
}
