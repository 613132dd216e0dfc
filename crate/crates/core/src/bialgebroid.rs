//! Right bialgebroids: the axiom checker, the Takeuchi product as an
//! intersection of equalizers, the monoidal product of right modules, the
//! unit module and reconstruction of the base algebra.
//!
//! Conventions are fixed once: the total algebra `A` is an `R`-`R`-bimodule
//! by right multiplication on both sides, `r▷a = a·t(r)` and `a◁r = a·s(r)`.
//! The coproduct is stored in quotient coordinates `A → A⊗_R A`; evaluations
//! lift through the canonical section, which is legitimate exactly when the
//! separately-checked bimodule-map and balance axioms hold.

use crate::algebra::{check_algebra, AlgMorphism, Algebra};
use crate::error::Error;
use crate::linmap::{
    apply_on_left, apply_on_right, basis_vec, compare_maps, tensor_vec, vec_is_zero, LinMap,
};
use crate::module::{check_bimodule, module_hom_space, Bimodule, RightModule};
use crate::par::{index_pairs, map_collect};
use crate::report::{Report, Witness};
use crate::scalar::Scalar;
use crate::space::BasedSpace;
use crate::subspace::{solve, SubSpace};
use crate::tensor_over::{tensor_over, tensor_over_many, BimoduleTensor};

#[derive(Clone, Debug)]
pub struct RightBialgebroid {
    pub total: Algebra,
    pub base: Algebra,
    /// `s: R → A`, an algebra morphism.
    pub source: AlgMorphism,
    /// `t: Rᵒᵖ → A`, stored as the underlying map `R → A`.
    pub target: AlgMorphism,
    /// `A ⊗_R A` for the bimodule structure above.
    pub tensor_square: BimoduleTensor,
    /// `δ: A → A ⊗_R A` in quotient coordinates.
    pub coproduct: LinMap,
    /// `ε: A → R`.
    pub counit: LinMap,
}

impl RightBialgebroid {
    /// Assembles the structure from a coproduct lift `A → A ⊗ A`; the lift is
    /// projected to quotient coordinates. Shapes are validated here, axioms
    /// are left to [`check_bialgebroid`].
    pub fn from_coproduct_lift(
        total: Algebra,
        base: Algebra,
        source_map: LinMap,
        target_map: LinMap,
        coproduct_lift: LinMap,
        counit: LinMap,
    ) -> Result<Self, Error> {
        let n = total.dim();
        let m = base.dim();
        if source_map.domain().dim() != m || source_map.codomain().dim() != n {
            return Err(Error::ShapeMismatch("source map must be R → A".into()));
        }
        if target_map.domain().dim() != m || target_map.codomain().dim() != n {
            return Err(Error::ShapeMismatch("target map must be R → A".into()));
        }
        if coproduct_lift.domain().dim() != n || coproduct_lift.codomain().dim() != n * n {
            return Err(Error::ShapeMismatch(
                "coproduct lift must be A → A ⊗ A".into(),
            ));
        }
        if counit.domain().dim() != n || counit.codomain().dim() != m {
            return Err(Error::ShapeMismatch("counit must be A → R".into()));
        }

        let source = AlgMorphism::new(base.clone(), total.clone(), source_map)?;
        let target = AlgMorphism::new(base.clone(), total.clone(), target_map)?;
        let bimodule = base_bimodule_of(&total, &base, &source.map, &target.map);
        let tensor_square = tensor_over(&bimodule, &bimodule, &base)?;
        let coproduct = tensor_square.projection.compose(&coproduct_lift);
        Ok(RightBialgebroid {
            total,
            base,
            source,
            target,
            tensor_square,
            coproduct,
            counit,
        })
    }

    /// `A` as an `R`-`R`-bimodule via `r▷a = a·t(r)` and `a◁r = a·s(r)`.
    pub fn base_bimodule(&self) -> &Bimodule {
        &self.tensor_square.factors[0]
    }

    /// The canonical lift `A → A ⊗ A` of the coproduct through the section.
    pub fn coproduct_lifted(&self) -> LinMap {
        self.tensor_square.section.compose(&self.coproduct)
    }
}

/// Builds the bimodule structure on `A` over `R` through `s` and `t`.
pub(crate) fn base_bimodule_of(
    total: &Algebra,
    base: &Algebra,
    source_map: &LinMap,
    target_map: &LinMap,
) -> Bimodule {
    let field = total.field();
    let n = total.dim();
    let m = base.dim();
    let left_cols: Vec<Vec<Scalar>> = index_pairs(m, n)
        .into_iter()
        .map(|(r, a)| {
            total.mul_vec(
                &basis_vec(field, n, a),
                &target_map.apply(&basis_vec(field, m, r)),
            )
        })
        .collect();
    let left_action = LinMap::from_columns(
        base.space().tensor(total.space()),
        total.space().clone(),
        field,
        &left_cols,
    )
    .expect("left action shape");
    let right_cols: Vec<Vec<Scalar>> = index_pairs(n, m)
        .into_iter()
        .map(|(a, r)| {
            total.mul_vec(
                &basis_vec(field, n, a),
                &source_map.apply(&basis_vec(field, m, r)),
            )
        })
        .collect();
    let right_action = LinMap::from_columns(
        total.space().tensor(base.space()),
        total.space().clone(),
        field,
        &right_cols,
    )
    .expect("right action shape");
    Bimodule::new(
        base.clone(),
        base.clone(),
        total.space().clone(),
        left_action,
        right_action,
    )
    .expect("bimodule shapes")
}

fn pair_product(a: &Algebra, v: &[Scalar], w: &[Scalar]) -> Vec<Scalar> {
    crate::algebra::product_in_tensor_power(a, 2, v, w)
}

/// Verifies every bialgebroid axiom on basis elements, including Takeuchi
/// containment of the coproduct image and lift-independence of the induced
/// multiplication. Witnesses are reported per axiom.
pub fn check_bialgebroid(b: &RightBialgebroid) -> Report {
    let mut report = Report::new();
    let field = b.total.field();
    let n = b.total.dim();
    let m = b.base.dim();

    report.absorb("total-algebra", check_algebra(&b.total));
    report.absorb("base-algebra", check_algebra(&b.base));
    report.absorb("source-morphism", b.source.check());
    report.absorb("target-antimorphism", b.target.check_anti());

    // elementwise commutation of the two images
    let pairs = index_pairs(m, m);
    let commute: Vec<Option<Witness>> = map_collect(&pairs, |&(r, rp)| {
        let sr = b.source.map.apply(&basis_vec(field, m, r));
        let trp = b.target.map.apply(&basis_vec(field, m, rp));
        let lhs = b.total.mul_vec(&sr, &trp);
        let rhs = b.total.mul_vec(&trp, &sr);
        if lhs == rhs {
            None
        } else {
            Some(Witness::new(vec![r, rp], lhs, rhs))
        }
    });
    report.record(
        "source-target-images-commute",
        commute.into_iter().flatten().collect(),
    );

    let bim = b.base_bimodule();
    report.absorb("base-bimodule", check_bimodule(bim));

    // δ and ε are bimodule maps
    let q_bim = &b.tensor_square.bimodule;
    let id_r = LinMap::identity(b.base.space().clone(), field);
    let delta_left_lhs = b.coproduct.compose(&bim.left_action);
    let delta_left_rhs = q_bim.left_action.compose(&id_r.tensor(&b.coproduct));
    report.record(
        "coproduct-left-linear",
        compare_maps(&delta_left_lhs, &delta_left_rhs),
    );
    let delta_right_lhs = b.coproduct.compose(&bim.right_action);
    let delta_right_rhs = q_bim.right_action.compose(&b.coproduct.tensor(&id_r));
    report.record(
        "coproduct-right-linear",
        compare_maps(&delta_right_lhs, &delta_right_rhs),
    );

    let mu_r = b.base.mul_map();
    let eps_left_lhs = b.counit.compose(&bim.left_action);
    let eps_left_rhs = mu_r.compose(&id_r.tensor(&b.counit));
    report.record(
        "counit-left-linear",
        compare_maps(&eps_left_lhs, &eps_left_rhs),
    );
    let eps_right_lhs = b.counit.compose(&bim.right_action);
    let eps_right_rhs = mu_r.compose(&b.counit.tensor(&id_r));
    report.record(
        "counit-right-linear",
        compare_maps(&eps_right_lhs, &eps_right_rhs),
    );

    // coassociativity through the flat triple quotient
    let lift = b.coproduct_lifted();
    match tensor_over_many(&[bim.clone(), bim.clone(), bim.clone()], &b.base) {
        Ok(triple) => {
            let idx: Vec<usize> = (0..n).collect();
            let coassoc: Vec<Option<Witness>> = map_collect(&idx, |&a| {
                let two = lift.apply(&basis_vec(field, n, a));
                let left = triple.projection.apply(&apply_on_left(&lift, &two, n));
                let right = triple.projection.apply(&apply_on_right(&lift, &two, n));
                if left == right {
                    None
                } else {
                    Some(Witness::new(vec![a], left, right))
                }
            });
            report.record("coassociativity", coassoc.into_iter().flatten().collect());
        }
        Err(_) => report.record(
            "coassociativity",
            vec![Witness::new(vec![], vec![], vec![])],
        ),
    }

    // counit laws: Σ a₍₁₎·s(ε(a₍₂₎)) = a = Σ a₍₂₎·t(ε(a₍₁₎))
    let idx: Vec<usize> = (0..n).collect();
    let counit_right: Vec<Option<Witness>> = map_collect(&idx, |&a| {
        let two = lift.apply(&basis_vec(field, n, a));
        let half = apply_on_right(&b.counit, &two, n);
        let got = bim.right_action.apply(&half);
        let expect = basis_vec(field, n, a);
        if got == expect {
            None
        } else {
            Some(Witness::new(vec![a], got, expect))
        }
    });
    report.record(
        "counit-law-source",
        counit_right.into_iter().flatten().collect(),
    );
    let counit_left: Vec<Option<Witness>> = map_collect(&idx, |&a| {
        let two = lift.apply(&basis_vec(field, n, a));
        let half = apply_on_left(&b.counit, &two, n);
        let got = bim.left_action.apply(&half);
        let expect = basis_vec(field, n, a);
        if got == expect {
            None
        } else {
            Some(Witness::new(vec![a], got, expect))
        }
    });
    report.record(
        "counit-law-target",
        counit_left.into_iter().flatten().collect(),
    );

    // ε(s(ε(a))·b) = ε(a·b) = ε(t(ε(a))·b)
    let weak_pairs = index_pairs(n, n);
    let eps_weak: Vec<(Option<Witness>, Option<Witness>)> = map_collect(&weak_pairs, |&(a, c)| {
        let ea = b.counit.apply(&basis_vec(field, n, a));
        let middle = b.counit.apply(&b.total.mul_basis(a, c));
        let via_s = b
            .counit
            .apply(&b.total.mul_vec(&b.source.map.apply(&ea), &basis_vec(field, n, c)));
        let via_t = b
            .counit
            .apply(&b.total.mul_vec(&b.target.map.apply(&ea), &basis_vec(field, n, c)));
        let w_s = if via_s == middle {
            None
        } else {
            Some(Witness::new(vec![a, c], via_s, middle.clone()))
        };
        let w_t = if via_t == middle {
            None
        } else {
            Some(Witness::new(vec![a, c], via_t, middle))
        };
        (w_s, w_t)
    });
    report.record(
        "counit-source-composition",
        eps_weak.iter().filter_map(|(s, _)| s.clone()).collect(),
    );
    report.record(
        "counit-target-composition",
        eps_weak.into_iter().filter_map(|(_, t)| t).collect(),
    );

    // ε(1) = 1_R and δ(1) = class of 1 ⊗ 1
    let eps_one = b.counit.apply(b.total.unit());
    report.record(
        "counit-unit",
        if eps_one == b.base.unit() {
            Vec::new()
        } else {
            vec![Witness::new(vec![], eps_one, b.base.unit().to_vec())]
        },
    );
    let delta_one = b.coproduct.apply(b.total.unit());
    let one_one = b
        .tensor_square
        .projection
        .apply(&tensor_vec(b.total.unit(), b.total.unit()));
    report.record(
        "coproduct-unit",
        if delta_one == one_one {
            Vec::new()
        } else {
            vec![Witness::new(vec![], delta_one, one_one)]
        },
    );

    // Takeuchi containment of the coproduct image
    let takeuchi = takeuchi_subspace(b);
    let containment: Vec<Option<Witness>> = map_collect(&idx, |&a| {
        let img = b.coproduct.apply(&basis_vec(field, n, a));
        if takeuchi.contains(&img) {
            None
        } else {
            Some(Witness::new(vec![a], img, vec![]))
        }
    });
    report.record(
        "takeuchi-containment",
        containment.into_iter().flatten().collect(),
    );

    // δ is multiplicative into the Takeuchi product (products via lifts)
    let mult_pairs = index_pairs(n, n);
    let mult: Vec<Option<Witness>> = map_collect(&mult_pairs, |&(x, y)| {
        let vx = lift.apply(&basis_vec(field, n, x));
        let vy = lift.apply(&basis_vec(field, n, y));
        let prod = b.tensor_square.projection.apply(&pair_product(&b.total, &vx, &vy));
        let direct = b.coproduct.apply(&b.total.mul_basis(x, y));
        if prod == direct {
            None
        } else {
            Some(Witness::new(vec![x, y], prod, direct))
        }
    });
    report.record(
        "coproduct-multiplicative",
        mult.into_iter().flatten().collect(),
    );

    // lift-independence of the induced Takeuchi multiplication
    report.record(
        "takeuchi-lift-independence",
        takeuchi_lift_witnesses(b, &takeuchi),
    );

    report
}

/// The subspace of `A ⊗_R A` on which left multiplication by `s(r)` in the
/// first factor agrees with left multiplication by `t(r)` in the second.
pub fn takeuchi_subspace(b: &RightBialgebroid) -> SubSpace {
    let field = b.total.field();
    let m = b.base.dim();
    let carrier = b.tensor_square.carrier().clone();
    let mut kernels = Vec::with_capacity(m);
    for r in 0..m {
        let sr = b.source.map.apply(&basis_vec(field, m, r));
        let tr = b.target.map.apply(&basis_vec(field, m, r));
        let left = descended_slot_map(b, &b.total.left_mul(&sr), true);
        let right = descended_slot_map(b, &b.total.left_mul(&tr), false);
        kernels.push(SubSpace::kernel_of(&left.sub(&right)));
    }
    if kernels.is_empty() {
        return SubSpace::full(carrier, field);
    }
    SubSpace::intersect(&kernels).expect("kernels share the carrier")
}

/// Descends `f ⊗ id` (or `id ⊗ f`) to the quotient `A ⊗_R A`.
fn descended_slot_map(b: &RightBialgebroid, f: &LinMap, first_slot: bool) -> LinMap {
    let n = b.total.dim();
    let t = &b.tensor_square;
    let cols: Vec<Vec<Scalar>> = (0..t.dim())
        .map(|q| {
            let flat = t.section.column(q);
            let moved = if first_slot {
                apply_on_left(f, &flat, n)
            } else {
                apply_on_right(f, &flat, n)
            };
            t.projection.apply(&moved)
        })
        .collect();
    LinMap::from_columns(
        t.carrier().clone(),
        t.carrier().clone(),
        b.total.field(),
        &cols,
    )
    .expect("square shape")
}

fn takeuchi_lift_witnesses(b: &RightBialgebroid, takeuchi: &SubSpace) -> Vec<Witness> {
    let t = &b.tensor_square;
    let mut witnesses = Vec::new();
    for (ti, tv) in takeuchi.basis().iter().enumerate() {
        let lifted = t.section.apply(tv);
        for (wi, w) in t.relations.basis().iter().enumerate() {
            let left = t.projection.apply(&pair_product(&b.total, w, &lifted));
            let right = t.projection.apply(&pair_product(&b.total, &lifted, w));
            if !vec_is_zero(&left) {
                witnesses.push(Witness::new(vec![ti, wi], left, vec![]));
            } else if !vec_is_zero(&right) {
                witnesses.push(Witness::new(vec![ti, wi], right, vec![]));
            }
        }
    }
    witnesses
}

/// The Takeuchi product with its induced multiplication in the coordinates of
/// the canonical subspace basis.
#[derive(Clone, Debug)]
pub struct TakeuchiProduct {
    pub subspace: SubSpace,
    pub algebra: Algebra,
}

/// Computes `A ×_R A` and certifies that it is closed under the factorwise
/// product of lifts and that the product is independent of the chosen lifts.
pub fn takeuchi_product(b: &RightBialgebroid) -> Result<TakeuchiProduct, Error> {
    let subspace = takeuchi_subspace(b);
    let t = &b.tensor_square;
    let field = b.total.field();
    let dim = subspace.rank();

    if !takeuchi_lift_witnesses(b, &subspace).is_empty() {
        return Err(Error::ClosureFailure(
            "Takeuchi multiplication depends on the choice of lifts".into(),
        ));
    }

    let unit_class = t.projection.apply(&tensor_vec(b.total.unit(), b.total.unit()));
    let unit = subspace.coords(&unit_class).ok_or_else(|| {
        Error::ClosureFailure("class of 1⊗1 is outside the Takeuchi subspace".into())
    })?;

    let space = BasedSpace::with_prefix("τ", dim);
    let mut structure: Vec<Vec<Scalar>> = Vec::with_capacity(dim * dim);
    for i in 0..dim {
        for j in 0..dim {
            let u = t.section.apply(&subspace.basis()[i]);
            let v = t.section.apply(&subspace.basis()[j]);
            let prod = t.projection.apply(&pair_product(&b.total, &u, &v));
            let coords = subspace.coords(&prod).ok_or_else(|| {
                Error::ClosureFailure(format!(
                    "product of Takeuchi basis classes {i} and {j} leaves the subspace"
                ))
            })?;
            structure.push(coords);
        }
    }
    let algebra = Algebra::from_structure(space, field, unit, |i, j| {
        structure[i * dim + j].clone()
    })?;
    Ok(TakeuchiProduct { subspace, algebra })
}

/// The product module `X ⊛ Y` together with its quotient presentation.
#[derive(Clone, Debug)]
pub struct ModuleProduct {
    pub module: RightModule,
    pub tensor: BimoduleTensor,
}

/// Pulls a right `A`-module back to an `R`-`R`-bimodule through `t` and `s`.
pub fn pullback_bimodule(b: &RightBialgebroid, x: &RightModule) -> Bimodule {
    let field = b.total.field();
    let m = b.base.dim();
    let d = x.space.dim();
    let left_cols: Vec<Vec<Scalar>> = index_pairs(m, d)
        .into_iter()
        .map(|(r, i)| {
            x.act(
                &basis_vec(field, d, i),
                &b.target.map.apply(&basis_vec(field, m, r)),
            )
        })
        .collect();
    let left_action = LinMap::from_columns(
        b.base.space().tensor(&x.space),
        x.space.clone(),
        field,
        &left_cols,
    )
    .expect("left action shape");
    let right_cols: Vec<Vec<Scalar>> = index_pairs(d, m)
        .into_iter()
        .map(|(i, r)| {
            x.act(
                &basis_vec(field, d, i),
                &b.source.map.apply(&basis_vec(field, m, r)),
            )
        })
        .collect();
    let right_action = LinMap::from_columns(
        x.space.tensor(b.base.space()),
        x.space.clone(),
        field,
        &right_cols,
    )
    .expect("right action shape");
    Bimodule::new(
        b.base.clone(),
        b.base.clone(),
        x.space.clone(),
        left_action,
        right_action,
    )
    .expect("bimodule shapes")
}

/// `(x ⊗_R y) ◁ a := (x ◁ a₍₁₎) ⊗_R (y ◁ a₍₂₎)` on the carrier `X ⊗_R Y`.
/// Well-definedness in both the class lift and the coproduct lift is
/// verified; the action's module axioms are checked before returning.
pub fn module_product(
    b: &RightBialgebroid,
    x: &RightModule,
    y: &RightModule,
) -> Result<ModuleProduct, Error> {
    if x.algebra != b.total || y.algebra != b.total {
        return Err(Error::AlgebraMismatch(
            "module product needs modules over the bialgebroid's total algebra".into(),
        ));
    }
    let field = b.total.field();
    let n = b.total.dim();
    let bx = pullback_bimodule(b, x);
    let by = pullback_bimodule(b, y);
    let tensor = tensor_over(&bx, &by, &b.base)?;
    let lift = b.coproduct_lifted();

    let dx = x.space.dim();
    let dy = y.space.dim();
    // (flat ⊗ pair of algebra elements) ↦ factorwise action on the flat part
    let act_flat = |flat: &[Scalar], two: &[Scalar]| -> Vec<Scalar> {
        let mut out = vec![field.zero(); dx * dy];
        for (ij, coef) in flat.iter().enumerate() {
            if coef.is_zero() {
                continue;
            }
            let (i, j) = (ij / dy, ij % dy);
            for (pq, c2) in two.iter().enumerate() {
                if c2.is_zero() {
                    continue;
                }
                let (p, qq) = (pq / n, pq % n);
                let weight = coef * c2;
                let term = tensor_vec(&x.act_basis(i, p), &y.act_basis(j, qq));
                for (slot, t) in out.iter_mut().zip(&term) {
                    if !t.is_zero() {
                        *slot = &*slot + &(&weight * t);
                    }
                }
            }
        }
        out
    };

    // class-lift independence
    for (wi, w) in tensor.relations.basis().iter().enumerate() {
        for a in 0..n {
            let two = lift.apply(&basis_vec(field, n, a));
            let moved = tensor.projection.apply(&act_flat(w, &two));
            if !vec_is_zero(&moved) {
                return Err(Error::NotBalanced(format!(
                    "module product action depends on the class lift (relation {wi}, algebra basis {a})"
                )));
            }
        }
    }
    // coproduct-lift independence
    for (wi, w) in b.tensor_square.relations.basis().iter().enumerate() {
        for qda in 0..tensor.dim() {
            let flat = tensor.section.column(qda);
            let moved = tensor.projection.apply(&act_flat(&flat, w));
            if !vec_is_zero(&moved) {
                return Err(Error::NotBalanced(format!(
                    "module product action depends on the coproduct lift (relation {wi}, class {qda})"
                )));
            }
        }
    }

    let cols: Vec<Vec<Scalar>> = index_pairs(tensor.dim(), n)
        .into_iter()
        .map(|(qc, a)| {
            let flat = tensor.section.column(qc);
            let two = lift.apply(&basis_vec(field, n, a));
            tensor.projection.apply(&act_flat(&flat, &two))
        })
        .collect();
    let action = LinMap::from_columns(
        tensor.carrier().tensor(b.total.space()),
        tensor.carrier().clone(),
        field,
        &cols,
    )?;
    let module = RightModule::new(b.total.clone(), tensor.carrier().clone(), action)?;
    let axioms = module.check();
    if !axioms.passed() {
        return Err(Error::CheckFailed {
            operation: "module_product".into(),
            report: axioms,
        });
    }
    Ok(ModuleProduct { module, tensor })
}

/// The monoidal unit: carrier `R` with `r ◁ a = ε(s(r)·a)`.
pub fn unit_module(b: &RightBialgebroid) -> Result<RightModule, Error> {
    let field = b.total.field();
    let m = b.base.dim();
    let n = b.total.dim();
    let cols: Vec<Vec<Scalar>> = index_pairs(m, n)
        .into_iter()
        .map(|(r, a)| {
            b.counit.apply(&b.total.mul_vec(
                &b.source.map.apply(&basis_vec(field, m, r)),
                &basis_vec(field, n, a),
            ))
        })
        .collect();
    let action = LinMap::from_columns(
        b.base.space().tensor(b.total.space()),
        b.base.space().clone(),
        field,
        &cols,
    )?;
    let module = RightModule::new(b.total.clone(), b.base.space().clone(), action)?;
    let axioms = module.check();
    if !axioms.passed() {
        return Err(Error::CheckFailed {
            operation: "unit_module".into(),
            report: axioms,
        });
    }
    Ok(module)
}

/// The base recovered from module data: `Hom_A(A, E)` with the convolution
/// product, compared against `R` through `ρ ↦ ρ(1)`.
#[derive(Clone, Debug)]
pub struct ReconstructedBase {
    pub algebra: Algebra,
    /// Convolution coordinates onto `R`; verified to be an isomorphism.
    pub comparison: LinMap,
    pub homs: Vec<LinMap>,
}

pub fn reconstruct_base(b: &RightBialgebroid) -> Result<ReconstructedBase, Error> {
    let field = b.total.field();
    let n = b.total.dim();
    let m = b.base.dim();
    let regular = RightModule::regular(&b.total);
    let unit_mod = unit_module(b)?;
    let homs = module_hom_space(&regular, &unit_mod)?;
    let dim = homs.len();
    let lift = b.coproduct_lifted();

    let convolve = |f: &LinMap, g: &LinMap| -> LinMap {
        let cols: Vec<Vec<Scalar>> = (0..n)
            .map(|a| {
                let two = lift.apply(&basis_vec(field, n, a));
                let half = apply_on_left(f, &two, n);
                let full = apply_on_right(g, &half, m);
                b.base.mul_map().apply(&full)
            })
            .collect();
        LinMap::from_columns(b.total.space().clone(), b.base.space().clone(), field, &cols)
            .expect("convolution shape")
    };

    // coordinates in the hom space via its flattened inclusion
    let flat_space = BasedSpace::with_prefix("f", m * n);
    let flatten = |f: &LinMap| -> Vec<Scalar> {
        let mut out = Vec::with_capacity(m * n);
        for r in 0..m {
            for c in 0..n {
                out.push(f.at(r, c).clone());
            }
        }
        out
    };
    let hom_columns: Vec<Vec<Scalar>> = homs.iter().map(&flatten).collect();
    let hom_inclusion = LinMap::from_columns(
        BasedSpace::with_prefix("h", dim),
        flat_space,
        field,
        &hom_columns,
    )?;
    let coords_of = |f: &LinMap| -> Option<Vec<Scalar>> { solve(&hom_inclusion, &flatten(f)) };

    let unit_coords = coords_of(&b.counit).ok_or_else(|| {
        Error::ClosureFailure("counit is not a module homomorphism A → E".into())
    })?;

    let mut structure = Vec::with_capacity(dim * dim);
    for i in 0..dim {
        for j in 0..dim {
            let conv = convolve(&homs[i], &homs[j]);
            let coords = coords_of(&conv).ok_or_else(|| {
                Error::ClosureFailure(format!(
                    "convolution of hom basis {i} and {j} leaves the hom space"
                ))
            })?;
            structure.push(coords);
        }
    }
    let algebra = Algebra::from_structure(
        BasedSpace::with_prefix("h", dim),
        field,
        unit_coords,
        |i, j| structure[i * dim + j].clone(),
    )?;
    let axioms = check_algebra(&algebra);
    if !axioms.passed() {
        return Err(Error::CheckFailed {
            operation: "reconstruct_base".into(),
            report: axioms,
        });
    }

    let comparison_cols: Vec<Vec<Scalar>> = homs.iter().map(|f| f.apply(b.total.unit())).collect();
    let comparison = LinMap::from_columns(
        algebra.space().clone(),
        b.base.space().clone(),
        field,
        &comparison_cols,
    )?;

    if dim != m || SubSpace::image_of(&comparison).rank() != m {
        return Err(Error::NotBijective(format!(
            "evaluation at 1 maps a {dim}-dimensional hom space onto a rank-{} subspace of the {m}-dimensional base",
            SubSpace::image_of(&comparison).rank()
        )));
    }

    // comparison is an algebra isomorphism
    let mut iso_report = Report::new();
    let unit_image = comparison.apply(algebra.unit());
    iso_report.record(
        "comparison-unital",
        if unit_image == b.base.unit() {
            Vec::new()
        } else {
            vec![Witness::new(vec![], unit_image, b.base.unit().to_vec())]
        },
    );
    let lhs = comparison.compose(algebra.mul_map());
    let rhs = b.base.mul_map().compose(&comparison.tensor(&comparison));
    iso_report.record("comparison-multiplicative", compare_maps(&lhs, &rhs));
    if !iso_report.passed() {
        return Err(Error::CheckFailed {
            operation: "reconstruct_base".into(),
            report: iso_report,
        });
    }

    Ok(ReconstructedBase {
        algebra,
        comparison,
        homs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{group_algebra_wba, groupoid_wba, GroupTable, GroupoidPattern};
    use crate::scalar::Field;
    use crate::wba::wba_to_bialgebroid;

    fn q() -> Field {
        Field::Rationals
    }

    fn pair2() -> RightBialgebroid {
        let w = groupoid_wba(2, &GroupoidPattern::Pair, q()).unwrap();
        wba_to_bialgebroid(&w).unwrap()
    }

    #[test]
    fn group_algebra_bialgebroid_over_the_base_field() {
        let w = group_algebra_wba(&GroupTable::cyclic(2), q()).unwrap();
        let b = wba_to_bialgebroid(&w).unwrap();
        assert_eq!(b.base.dim(), 1);
        assert!(check_bialgebroid(&b).passed());
        // bialgebra case: A ⊗_k A is all of A ⊗ A and so is the Takeuchi part
        assert_eq!(b.tensor_square.dim(), 4);
        assert!(takeuchi_subspace(&b).is_full());
    }

    #[test]
    fn pair_groupoid_bialgebroid_passes_with_expected_dimensions() {
        let b = pair2();
        assert_eq!(b.base.dim(), 2);
        assert!(check_bialgebroid(&b).passed());
        let tk = takeuchi_product(&b).unwrap();
        assert_eq!(b.tensor_square.dim(), 8);
        assert_eq!(tk.subspace.rank(), 4);
        assert!(check_algebra(&tk.algebra).passed());
    }

    #[test]
    fn discrete_groupoid_tensor_square_is_already_takeuchi() {
        let w = groupoid_wba(2, &GroupoidPattern::Discrete, q()).unwrap();
        let b = wba_to_bialgebroid(&w).unwrap();
        assert!(check_bialgebroid(&b).passed());
        assert_eq!(b.tensor_square.dim(), 2);
        let tk = takeuchi_product(&b).unwrap();
        assert_eq!(tk.subspace.rank(), 2);
    }

    #[test]
    fn trivialised_coproduct_fails_the_counit_law() {
        let w = group_algebra_wba(&GroupTable::cyclic(2), q()).unwrap();
        let good = wba_to_bialgebroid(&w).unwrap();
        let n = good.total.dim();
        let field = q();
        // δ'(a) = class of a ⊗ 1
        let lift = LinMap::from_columns(
            good.total.space().clone(),
            good.total.space().tensor(good.total.space()),
            field,
            &(0..n)
                .map(|a| tensor_vec(&basis_vec(field, n, a), good.total.unit()))
                .collect::<Vec<_>>(),
        )
        .unwrap();
        let broken = RightBialgebroid::from_coproduct_lift(
            good.total.clone(),
            good.base.clone(),
            good.source.map.clone(),
            good.target.map.clone(),
            lift,
            good.counit.clone(),
        )
        .unwrap();
        let report = check_bialgebroid(&broken);
        assert!(!report.passed());
        let failed = report.failed_names();
        assert!(failed.contains(&"counit-law-target".to_string()));
        // the witness is the group generator, basis index 1
        let check = report
            .checks
            .iter()
            .find(|c| c.name == "counit-law-target")
            .unwrap();
        assert_eq!(check.witnesses[0].indices, vec![1]);
    }

    #[test]
    fn unit_module_of_the_pair_groupoid() {
        let b = pair2();
        let e = unit_module(&b).unwrap();
        assert_eq!(e.space.dim(), 2);
        // e_x ◁ g_{uv} = δ_{x,u} e_v over basis g00, g01, g10, g11
        let field = q();
        for x in 0..2 {
            for u in 0..2 {
                for v in 0..2 {
                    let got = e.act(&basis_vec(field, 2, x), &basis_vec(field, 4, u * 2 + v));
                    let expect = if x == u {
                        basis_vec(field, 2, v)
                    } else {
                        crate::linmap::zero_vec(field, 2)
                    };
                    assert_eq!(got, expect);
                }
            }
        }
    }

    #[test]
    fn module_products_have_the_expected_carriers_and_unit_coherence() {
        let b = pair2();
        let reg = RightModule::regular(&b.total);
        let prod = module_product(&b, &reg, &reg).unwrap();
        assert_eq!(prod.module.space.dim(), 8);

        // E ⊛ X ≅ X through the left unitor q ↦ λ(sec q)
        let e = unit_module(&b).unwrap();
        let ex = module_product(&b, &e, &reg).unwrap();
        let unitor_cols: Vec<Vec<Scalar>> = (0..ex.module.space.dim())
            .map(|qc| {
                let flat = ex.tensor.section.column(qc);
                // r ⊗ x ↦ r ▷ x on the pullback bimodule of X
                let by = pullback_bimodule(&b, &reg);
                let mut out = crate::linmap::zero_vec(q(), 4);
                for (ri, coef) in flat.iter().enumerate() {
                    if coef.is_zero() {
                        continue;
                    }
                    let (r, i) = (ri / 4, ri % 4);
                    let term = by.act_left(&basis_vec(q(), 2, r), &basis_vec(q(), 4, i));
                    for (slot, t) in out.iter_mut().zip(&term) {
                        *slot = &*slot + &(coef * t);
                    }
                }
                out
            })
            .collect();
        let unitor = LinMap::from_columns(
            ex.module.space.clone(),
            reg.space.clone(),
            q(),
            &unitor_cols,
        )
        .unwrap();
        assert_eq!(SubSpace::image_of(&unitor).rank(), 4);
        assert_eq!(ex.module.space.dim(), 4);
        // intertwines the actions
        for qc in 0..4 {
            for a in 0..4 {
                let lhs = unitor.apply(&ex.module.act(
                    &basis_vec(q(), 4, qc),
                    &basis_vec(q(), 4, a),
                ));
                let rhs = reg.act(&unitor.apply(&basis_vec(q(), 4, qc)), &basis_vec(q(), 4, a));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn regular_square_of_a_group_algebra_acts_diagonally() {
        let w = group_algebra_wba(&GroupTable::cyclic(2), q()).unwrap();
        let b = wba_to_bialgebroid(&w).unwrap();
        let reg = RightModule::regular(&b.total);
        let prod = module_product(&b, &reg, &reg).unwrap();
        assert_eq!(prod.module.space.dim(), 4);
        // g ⊗ class acts factorwise: (a⊗b)◁g = ag⊗bg
        let g = basis_vec(q(), 2, 1);
        for i in 0..2 {
            for j in 0..2 {
                let class = prod
                    .tensor
                    .projection
                    .apply(&tensor_vec(&basis_vec(q(), 2, i), &basis_vec(q(), 2, j)));
                let acted = prod.module.act(&class, &g);
                let expect = prod.tensor.projection.apply(&tensor_vec(
                    &b.total.mul_vec(&basis_vec(q(), 2, i), &g),
                    &b.total.mul_vec(&basis_vec(q(), 2, j), &g),
                ));
                assert_eq!(acted, expect);
            }
        }
    }

    #[test]
    fn module_product_is_strictly_associative_in_coordinates() {
        let b = pair2();
        let reg = RightModule::regular(&b.total);
        let xy = module_product(&b, &reg, &reg).unwrap();
        let left = module_product(&b, &xy.module, &reg).unwrap();
        let right_inner = module_product(&b, &reg, &reg).unwrap();
        let right = module_product(&b, &reg, &right_inner.module).unwrap();
        assert_eq!(left.module.space.dim(), right.module.space.dim());

        // both are quotients of X⊗Y⊗Z with equal kernels; conjugating by the
        // canonical isomorphism matches the actions exactly
        let id4 = LinMap::identity(b.total.space().clone(), q());
        let pi_left = left
            .tensor
            .projection
            .compose(&xy.tensor.projection.tensor(&id4));
        let pi_right = right
            .tensor
            .projection
            .compose(&id4.tensor(&right_inner.tensor.projection));
        assert_eq!(
            SubSpace::kernel_of(&pi_left),
            SubSpace::kernel_of(&pi_right)
        );
        let sec_left = xy.tensor.section.tensor(&id4).compose(&left.tensor.section);
        let iso = pi_right.compose(&sec_left);
        // iso intertwines the two actions
        for qc in 0..left.module.space.dim() {
            for a in 0..4 {
                let lhs = iso.apply(&left.module.act(
                    &basis_vec(q(), left.module.space.dim(), qc),
                    &basis_vec(q(), 4, a),
                ));
                let rhs = right.module.act(
                    &iso.apply(&basis_vec(q(), left.module.space.dim(), qc)),
                    &basis_vec(q(), 4, a),
                );
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn reconstructed_bases_are_isomorphic_to_the_given_base() {
        for w in [
            group_algebra_wba(&GroupTable::cyclic(2), q()).unwrap(),
            groupoid_wba(2, &GroupoidPattern::Pair, q()).unwrap(),
            groupoid_wba(2, &GroupoidPattern::Discrete, q()).unwrap(),
        ] {
            let b = wba_to_bialgebroid(&w).unwrap();
            let rec = reconstruct_base(&b).unwrap();
            assert_eq!(rec.algebra.dim(), b.base.dim());
        }
    }
}
