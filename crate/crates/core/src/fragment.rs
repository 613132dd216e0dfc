//! Finite fragments of monoidal functors and the functor-level theorems:
//! canonical factorization through bimodules over the image of the unit
//! object, essential strength, the universal property of the comparison
//! morphism, and separable Frobenius structures on functors.
//!
//! A fragment is an explicitly enumerated diagram: finitely many objects with
//! their image spaces, a strictly unital product table, the structure maps
//! `G_{a,b}` and `G₀`, optional opmonoidal data and optional morphisms with
//! naturality instances. Unitors and associators are identities by the
//! flattening convention; products that are quotient spaces carry their
//! projections as the structure maps. Everything is verified per listed
//! object, pair and triple.

use std::collections::BTreeMap;

use crate::algebra::{check_algebra, AlgMorphism, Algebra};
use crate::error::Error;
use crate::frobenius::{check_sep_frobenius, SepFrobenius};
use crate::linmap::{compare_maps, LinMap};
use crate::module::{check_bimodule, Bimodule};
use crate::report::{Report, Witness};
use crate::scalar::Field;
use crate::space::BasedSpace;
use crate::subspace::SubSpace;
use crate::tensor_over::{tensor_over, BimoduleTensor};

#[derive(Clone, Debug)]
pub struct FragmentObject {
    pub name: String,
    pub space: BasedSpace,
}

#[derive(Clone, Debug)]
pub struct FragmentMorphism {
    pub name: String,
    pub source: String,
    pub target: String,
    pub map: LinMap,
}

/// States that the image of `first ⊛ second` under the functor is
/// `product_map`, for checking naturality of the pairings.
#[derive(Clone, Debug)]
pub struct NaturalityInstance {
    pub first: String,
    pub second: String,
    pub product_map: LinMap,
}

#[derive(Clone, Debug)]
pub struct MonoidalFunctorFragment {
    field: Field,
    objects: Vec<FragmentObject>,
    unit: String,
    products: BTreeMap<(String, String), String>,
    pairings: BTreeMap<(String, String), LinMap>,
    unit_map: LinMap,
    op_pairings: BTreeMap<(String, String), LinMap>,
    op_unit_map: Option<LinMap>,
    morphisms: Vec<FragmentMorphism>,
    naturality: Vec<NaturalityInstance>,
}

impl MonoidalFunctorFragment {
    pub fn new(
        field: Field,
        objects: Vec<FragmentObject>,
        unit: &str,
        products: Vec<(String, String, String)>,
        pairings: Vec<(String, String, LinMap)>,
        unit_map: LinMap,
    ) -> Result<Self, Error> {
        let mut names = std::collections::HashSet::new();
        for o in &objects {
            if !names.insert(o.name.clone()) {
                return Err(Error::InvalidInput(format!(
                    "duplicate fragment object `{}`",
                    o.name
                )));
            }
        }
        if !names.contains(unit) {
            return Err(Error::InvalidInput(format!(
                "unit object `{unit}` is not listed"
            )));
        }
        let lookup = |n: &str| -> Result<&FragmentObject, Error> {
            objects
                .iter()
                .find(|o| o.name == n)
                .ok_or_else(|| Error::InvalidInput(format!("unknown fragment object `{n}`")))
        };

        let mut product_table = BTreeMap::new();
        for (a, b, c) in products {
            lookup(&a)?;
            lookup(&b)?;
            lookup(&c)?;
            if a == unit && c != b {
                return Err(Error::InvalidInput(format!(
                    "fragment is not strictly unital: {unit} ⊛ {b} = {c}"
                )));
            }
            if b == unit && c != a {
                return Err(Error::InvalidInput(format!(
                    "fragment is not strictly unital: {a} ⊛ {unit} = {c}"
                )));
            }
            product_table.insert((a, b), c);
        }

        let mut pairing_table = BTreeMap::new();
        for (a, b, map) in pairings {
            let oa = lookup(&a)?.space.dim();
            let ob = lookup(&b)?.space.dim();
            let c = product_table.get(&(a.clone(), b.clone())).ok_or_else(|| {
                Error::InvalidInput(format!("pairing ({a},{b}) has no product entry"))
            })?;
            let oc = lookup(c)?.space.dim();
            if map.domain().dim() != oa * ob || map.codomain().dim() != oc {
                return Err(Error::ShapeMismatch(format!(
                    "pairing ({a},{b}) must map G{a} ⊗ G{b} → G{c}"
                )));
            }
            pairing_table.insert((a, b), map);
        }

        let ge = lookup(unit)?.space.dim();
        if unit_map.domain().dim() != 1 || unit_map.codomain().dim() != ge {
            return Err(Error::ShapeMismatch("unit map must be k → Ge".into()));
        }

        Ok(MonoidalFunctorFragment {
            field,
            objects,
            unit: unit.to_string(),
            products: product_table,
            pairings: pairing_table,
            unit_map,
            op_pairings: BTreeMap::new(),
            op_unit_map: None,
            morphisms: Vec::new(),
            naturality: Vec::new(),
        })
    }

    pub fn with_op_data(
        mut self,
        op_pairings: Vec<(String, String, LinMap)>,
        op_unit_map: LinMap,
    ) -> Result<Self, Error> {
        for (a, b, map) in op_pairings {
            let oa = self.space_of(&a)?.dim();
            let ob = self.space_of(&b)?.dim();
            let c = self.product_of(&a, &b)?.to_string();
            let oc = self.space_of(&c)?.dim();
            if map.domain().dim() != oc || map.codomain().dim() != oa * ob {
                return Err(Error::ShapeMismatch(format!(
                    "opmonoidal pairing ({a},{b}) must map G{c} → G{a} ⊗ G{b}"
                )));
            }
            self.op_pairings.insert((a, b), map);
        }
        let ge = self.space_of(&self.unit.clone())?.dim();
        if op_unit_map.domain().dim() != ge || op_unit_map.codomain().dim() != 1 {
            return Err(Error::ShapeMismatch("opmonoidal unit map must be Ge → k".into()));
        }
        self.op_unit_map = Some(op_unit_map);
        Ok(self)
    }

    pub fn with_morphisms(
        mut self,
        morphisms: Vec<FragmentMorphism>,
        naturality: Vec<NaturalityInstance>,
    ) -> Result<Self, Error> {
        for m in &morphisms {
            let src = self.space_of(&m.source)?.dim();
            let dst = self.space_of(&m.target)?.dim();
            if m.map.domain().dim() != src || m.map.codomain().dim() != dst {
                return Err(Error::ShapeMismatch(format!(
                    "morphism `{}` has the wrong shape",
                    m.name
                )));
            }
        }
        for nat in &naturality {
            if !morphisms.iter().any(|m| m.name == nat.first)
                || !morphisms.iter().any(|m| m.name == nat.second)
            {
                return Err(Error::InvalidInput(
                    "naturality instance references an unknown morphism".into(),
                ));
            }
        }
        self.morphisms = morphisms;
        self.naturality = naturality;
        Ok(self)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn objects(&self) -> &[FragmentObject] {
        &self.objects
    }

    pub fn unit_name(&self) -> &str {
        &self.unit
    }

    pub fn products(&self) -> &BTreeMap<(String, String), String> {
        &self.products
    }

    pub fn pairings(&self) -> &BTreeMap<(String, String), LinMap> {
        &self.pairings
    }

    pub fn unit_map(&self) -> &LinMap {
        &self.unit_map
    }

    pub fn op_pairings(&self) -> &BTreeMap<(String, String), LinMap> {
        &self.op_pairings
    }

    pub fn op_unit_map(&self) -> Option<&LinMap> {
        self.op_unit_map.as_ref()
    }

    pub fn morphisms(&self) -> &[FragmentMorphism] {
        &self.morphisms
    }

    pub fn naturality(&self) -> &[NaturalityInstance] {
        &self.naturality
    }

    pub fn has_op_data(&self) -> bool {
        self.op_unit_map.is_some()
    }

    pub fn space_of(&self, name: &str) -> Result<&BasedSpace, Error> {
        self.objects
            .iter()
            .find(|o| o.name == name)
            .map(|o| &o.space)
            .ok_or_else(|| Error::MissingFragmentData(format!("object `{name}`")))
    }

    pub fn product_of(&self, a: &str, b: &str) -> Result<&str, Error> {
        self.products
            .get(&(a.to_string(), b.to_string()))
            .map(|s| s.as_str())
            .ok_or_else(|| Error::MissingFragmentData(format!("product ({a},{b})")))
    }

    pub fn pairing(&self, a: &str, b: &str) -> Result<&LinMap, Error> {
        self.pairings
            .get(&(a.to_string(), b.to_string()))
            .ok_or_else(|| Error::MissingFragmentData(format!("pairing ({a},{b})")))
    }

    pub fn op_pairing(&self, a: &str, b: &str) -> Result<&LinMap, Error> {
        self.op_pairings
            .get(&(a.to_string(), b.to_string()))
            .ok_or_else(|| Error::MissingFragmentData(format!("opmonoidal pairing ({a},{b})")))
    }

    fn identity_on(&self, name: &str) -> LinMap {
        LinMap::identity(
            self.space_of(name).expect("object listed").clone(),
            self.field,
        )
    }

    /// Monoidal axioms on all listable pairs and triples, the dual axioms
    /// when opmonoidal data is present, and naturality on listed instances.
    pub fn check(&self) -> Report {
        let mut report = Report::new();
        let e = self.unit.clone();

        for obj in &self.objects {
            let c = &obj.name;
            if let Ok(g2) = self.pairing(&e, c) {
                let lhs = g2.compose(&self.unit_map.tensor(&self.identity_on(c)));
                report.record(
                    format!("unit-square-left[{c}]"),
                    compare_maps(&lhs, &self.identity_on(c)),
                );
            }
            if let Ok(g2) = self.pairing(c, &e) {
                let lhs = g2.compose(&self.identity_on(c).tensor(&self.unit_map));
                report.record(
                    format!("unit-square-right[{c}]"),
                    compare_maps(&lhs, &self.identity_on(c)),
                );
            }
        }

        for oa in &self.objects {
            for ob in &self.objects {
                for oc in &self.objects {
                    let (a, b, c) = (&oa.name, &ob.name, &oc.name);
                    let (Ok(ab), Ok(bc)) = (self.product_of(a, b), self.product_of(b, c)) else {
                        continue;
                    };
                    let (ab, bc) = (ab.to_string(), bc.to_string());
                    let (Ok(abc1), Ok(abc2)) = (self.product_of(&ab, c), self.product_of(a, &bc))
                    else {
                        continue;
                    };
                    if abc1 != abc2 {
                        report.record(
                            format!("strict-associativity[{a},{b},{c}]"),
                            vec![Witness::new(vec![], vec![], vec![])],
                        );
                        continue;
                    }
                    let (Ok(g_ab), Ok(g_ab_c), Ok(g_bc), Ok(g_a_bc)) = (
                        self.pairing(a, b),
                        self.pairing(&ab, c),
                        self.pairing(b, c),
                        self.pairing(a, &bc),
                    ) else {
                        continue;
                    };
                    let lhs = g_ab_c.compose(&g_ab.tensor(&self.identity_on(c)));
                    let rhs = g_a_bc.compose(&self.identity_on(a).tensor(g_bc));
                    report.record(format!("hexagon[{a},{b},{c}]"), compare_maps(&lhs, &rhs));
                }
            }
        }

        if let Some(op_unit) = &self.op_unit_map {
            for obj in &self.objects {
                let c = &obj.name;
                if let Ok(op) = self.op_pairing(&e, c) {
                    let lhs = op_unit.tensor(&self.identity_on(c)).compose(op);
                    report.record(
                        format!("op-unit-square-left[{c}]"),
                        compare_maps(&lhs, &self.identity_on(c)),
                    );
                }
                if let Ok(op) = self.op_pairing(c, &e) {
                    let lhs = self.identity_on(c).tensor(op_unit).compose(op);
                    report.record(
                        format!("op-unit-square-right[{c}]"),
                        compare_maps(&lhs, &self.identity_on(c)),
                    );
                }
            }
            for oa in &self.objects {
                for ob in &self.objects {
                    for oc in &self.objects {
                        let (a, b, c) = (&oa.name, &ob.name, &oc.name);
                        let (Ok(ab), Ok(bc)) = (self.product_of(a, b), self.product_of(b, c))
                        else {
                            continue;
                        };
                        let (ab, bc) = (ab.to_string(), bc.to_string());
                        let (Ok(abc1), Ok(abc2)) =
                            (self.product_of(&ab, c), self.product_of(a, &bc))
                        else {
                            continue;
                        };
                        if abc1 != abc2 {
                            continue;
                        }
                        let (Ok(op_ab), Ok(op_ab_c), Ok(op_bc), Ok(op_a_bc)) = (
                            self.op_pairing(a, b),
                            self.op_pairing(&ab, c),
                            self.op_pairing(b, c),
                            self.op_pairing(a, &bc),
                        ) else {
                            continue;
                        };
                        let lhs = op_ab.tensor(&self.identity_on(c)).compose(op_ab_c);
                        let rhs = self.identity_on(a).tensor(op_bc).compose(op_a_bc);
                        report
                            .record(format!("op-hexagon[{a},{b},{c}]"), compare_maps(&lhs, &rhs));
                    }
                }
            }
        }

        for nat in &self.naturality {
            let tau = self
                .morphisms
                .iter()
                .find(|m| m.name == nat.first)
                .expect("validated");
            let ups = self
                .morphisms
                .iter()
                .find(|m| m.name == nat.second)
                .expect("validated");
            let (Ok(g_src), Ok(g_dst)) = (
                self.pairing(&tau.source, &ups.source),
                self.pairing(&tau.target, &ups.target),
            ) else {
                report.record(
                    format!("naturality[{},{}]", nat.first, nat.second),
                    vec![Witness::new(vec![], vec![], vec![])],
                );
                continue;
            };
            let lhs = nat.product_map.compose(g_src);
            let rhs = g_dst.compose(&tau.map.tensor(&ups.map));
            report.record(
                format!("naturality[{},{}]", nat.first, nat.second),
                compare_maps(&lhs, &rhs),
            );
        }

        report
    }

    /// The monoid on the image of the unit object: carrier `Ge`,
    /// multiplication `G_{e,e}` and unit `G₀(1)`.
    pub fn canonical_base(&self) -> Result<Algebra, Error> {
        let e = self.unit.clone();
        let mul = self.pairing(&e, &e)?.clone();
        let one = vec![self.field.one()];
        let unit = self.unit_map.apply(&one);
        let algebra = Algebra::new(self.space_of(&e)?.clone(), mul, unit)?;
        let report = check_algebra(&algebra);
        if !report.passed() {
            return Err(Error::CheckFailed {
                operation: "canonical_base".into(),
                report,
            });
        }
        Ok(algebra)
    }

    /// The image of an object as a bimodule over the canonical base, with
    /// actions `λ = G_{e,c}` and `ρ = G_{c,e}`.
    pub fn canonical_bimodule(&self, c: &str) -> Result<Bimodule, Error> {
        let base = self.canonical_base()?;
        let e = self.unit.clone();
        let lambda = self.pairing(&e, c)?.clone();
        let rho = self.pairing(c, &e)?.clone();
        let bimodule = Bimodule::new(
            base.clone(),
            base,
            self.space_of(c)?.clone(),
            lambda,
            rho,
        )?;
        let report = check_bimodule(&bimodule);
        if !report.passed() {
            return Err(Error::CheckFailed {
                operation: format!("canonical_bimodule[{c}]"),
                report,
            });
        }
        Ok(bimodule)
    }

    /// The unique factorization of `G_{a,b}` through the coequalizer
    /// projection, with the essential-strength verdict at this pair.
    pub fn induced_strength(&self, a: &str, b: &str) -> Result<Strength, Error> {
        let base = self.canonical_base()?;
        let ua = self.canonical_bimodule(a)?;
        let ub = self.canonical_bimodule(b)?;
        let g2 = self.pairing(a, b)?;

        let rho_id = ua.right_action.tensor(&self.identity_on(b));
        let id_lambda = self.identity_on(a).tensor(&ub.left_action);
        if !g2.compose(&rho_id).same_matrix(&g2.compose(&id_lambda)) {
            return Err(Error::InvalidInput(format!(
                "fragment inconsistency: pairing ({a},{b}) does not coequalize the action pair"
            )));
        }

        let tensor = tensor_over(&ua, &ub, &base)?;
        let map = g2.compose(&tensor.section);
        let surjective = SubSpace::image_of(g2).rank() == g2.codomain().dim();
        let kernel_matches_relations = SubSpace::kernel_of(g2) == tensor.relations;
        Ok(Strength {
            essentially_strong: surjective && kernel_matches_relations,
            surjective,
            kernel_matches_relations,
            map,
            tensor,
        })
    }

    /// Computes the forced comparison morphism `σ = Γ^S V₀` of a
    /// factorization witness and verifies it is the unique monoid morphism
    /// with `Γ^σ U = V`. Any failed verification is an error naming the
    /// object and axiom.
    pub fn universal_sigma(
        &self,
        witness: &FactorizationWitness,
    ) -> Result<(AlgMorphism, Report), Error> {
        let mut report = Report::new();
        let base = self.canonical_base()?;
        let s = &witness.base;
        let field = self.field;

        report.absorb("witness-base-algebra", check_algebra(s));

        for (name, (lambda, rho)) in &witness.actions {
            let space = self.space_of(name)?.clone();
            let bim = Bimodule::new(s.clone(), s.clone(), space, lambda.clone(), rho.clone())?;
            report.absorb(&format!("witness-bimodule[{name}]"), check_bimodule(&bim));
        }

        let (lambda_e, rho_e) = witness
            .actions
            .get(&self.unit)
            .ok_or_else(|| Error::MissingFragmentData("witness action on the unit object".into()))?;
        let g0 = self.unit_map.apply(&[field.one()]);

        let sigma_cols: Vec<Vec<crate::scalar::Scalar>> = (0..s.dim())
            .map(|i| {
                lambda_e.apply(&crate::linmap::tensor_vec(
                    &crate::linmap::basis_vec(field, s.dim(), i),
                    &g0,
                ))
            })
            .collect();
        let sigma = LinMap::from_columns(
            s.space().clone(),
            base.space().clone(),
            field,
            &sigma_cols,
        )?;

        let sigma_mirror_cols: Vec<Vec<crate::scalar::Scalar>> = (0..s.dim())
            .map(|i| {
                rho_e.apply(&crate::linmap::tensor_vec(
                    &g0,
                    &crate::linmap::basis_vec(field, s.dim(), i),
                ))
            })
            .collect();
        let sigma_mirror = LinMap::from_columns(
            s.space().clone(),
            base.space().clone(),
            field,
            &sigma_mirror_cols,
        )?;
        report.record(
            "comparison-left-right-agree",
            compare_maps(&sigma, &sigma_mirror),
        );

        let morphism = AlgMorphism::new(s.clone(), base.clone(), sigma.clone())?;
        report.absorb("comparison-monoid-morphism", morphism.check());

        for (name, (lambda_v, rho_v)) in &witness.actions {
            let lambda_u = self.pairing(&self.unit, name)?;
            let rho_u = self.pairing(name, &self.unit)?;
            let lhs = lambda_u.compose(&sigma.tensor(&self.identity_on(name)));
            report.record(
                format!("pullback-left-action[{name}]"),
                compare_maps(&lhs, lambda_v),
            );
            let rhs = rho_u.compose(&self.identity_on(name).tensor(&sigma));
            report.record(
                format!("pullback-right-action[{name}]"),
                compare_maps(&rhs, rho_v),
            );
        }

        for ((a, b), g2) in &self.pairings {
            let (Some((_, rho_a)), Some((lambda_b, _))) =
                (witness.actions.get(a), witness.actions.get(b))
            else {
                continue;
            };
            let via_rho = g2.compose(&rho_a.tensor(&self.identity_on(b)));
            let via_lambda = g2.compose(&self.identity_on(a).tensor(lambda_b));
            report.record(
                format!("pairing-balanced-over-witness[{a},{b}]"),
                compare_maps(&via_rho, &via_lambda),
            );
        }

        if !report.passed() {
            return Err(Error::CheckFailed {
                operation: "universal_sigma".into(),
                report,
            });
        }
        Ok((morphism, report))
    }

    /// The four split-coequalizer identities at a pair, built from the
    /// monoidal and opmonoidal data.
    pub fn split_coequalizer_report(&self, x: &str, y: &str) -> Result<Report, Error> {
        let e = self.unit.clone();
        let d0 = self.identity_on(x).tensor(self.pairing(&e, y)?);
        let d1 = self.pairing(x, &e)?.tensor(&self.identity_on(y));
        let gamma = self.pairing(x, y)?;
        let sigma = self.op_pairing(x, y)?;
        let tau = self.identity_on(x).tensor(self.op_pairing(&e, y)?);

        let mut report = Report::new();
        report.record(
            format!("split-fork[{x},{y}]"),
            compare_maps(&gamma.compose(&d0), &gamma.compose(&d1)),
        );
        let xy = self.product_of(x, y)?.to_string();
        report.record(
            format!("split-retraction[{x},{y}]"),
            compare_maps(&gamma.compose(sigma), &self.identity_on(&xy)),
        );
        let id_xy_flat = LinMap::identity(
            self.space_of(x)?.tensor(self.space_of(y)?),
            self.field,
        );
        report.record(
            format!("split-section[{x},{y}]"),
            compare_maps(&d0.compose(&tau), &id_xy_flat),
        );
        report.record(
            format!("split-mixed[{x},{y}]"),
            compare_maps(&d1.compose(&tau), &sigma.compose(gamma)),
        );
        Ok(report)
    }

    /// The separable-Frobenius verification at a listed triple: monoidal and
    /// opmonoidal axioms, both Frobenius compatibilities, separability on the
    /// derived pairs, the split-coequalizer identities at `(x,y)`, and the
    /// induced separable Frobenius structure on the canonical base,
    /// cross-checked with the algebra-level verifier. Failures are reported,
    /// not raised; errors are reserved for missing data.
    pub fn frobenius_check(&self, x: &str, y: &str, z: &str) -> Result<FunctorFrobeniusCheck, Error> {
        if !self.has_op_data() {
            return Err(Error::MissingFragmentData(
                "opmonoidal data is required for a separable Frobenius check".into(),
            ));
        }
        let mut report = self.check();

        let xy = self.product_of(x, y)?.to_string();
        let yz = self.product_of(y, z)?.to_string();
        let xyz = self.product_of(&xy, z)?.to_string();
        if self.product_of(x, &yz)? != xyz {
            return Err(Error::InvalidInput(
                "fragment products are not strictly associative at the requested triple".into(),
            ));
        }

        let frob_lhs = self
            .pairing(x, y)?
            .tensor(&self.identity_on(z))
            .compose(&self.identity_on(x).tensor(self.op_pairing(y, z)?));
        let frob_rhs = self.op_pairing(&xy, z)?.compose(self.pairing(x, &yz)?);
        report.record(
            format!("frobenius-left[{x},{y},{z}]"),
            compare_maps(&frob_lhs, &frob_rhs),
        );

        let frob2_lhs = self
            .identity_on(x)
            .tensor(self.pairing(y, z)?)
            .compose(&self.op_pairing(x, y)?.tensor(&self.identity_on(z)));
        let frob2_rhs = self.op_pairing(x, &yz)?.compose(self.pairing(&xy, z)?);
        report.record(
            format!("frobenius-right[{x},{y},{z}]"),
            compare_maps(&frob2_lhs, &frob2_rhs),
        );

        let mut seen: Vec<(String, String)> = Vec::new();
        for (a, b) in [
            (x.to_string(), y.to_string()),
            (y.to_string(), z.to_string()),
            (x.to_string(), yz.clone()),
            (xy.clone(), z.to_string()),
        ] {
            if seen.contains(&(a.clone(), b.clone())) {
                continue;
            }
            seen.push((a.clone(), b.clone()));
            let c = self.product_of(&a, &b)?.to_string();
            let lhs = self.pairing(&a, &b)?.compose(self.op_pairing(&a, &b)?);
            report.record(
                format!("separability[{a},{b}]"),
                compare_maps(&lhs, &self.identity_on(&c)),
            );
        }

        let split = self.split_coequalizer_report(x, y)?;
        for check in split.checks {
            report.checks.push(check);
        }

        // induced separable Frobenius structure on the canonical base
        let e = self.unit.clone();
        let mul = self.pairing(&e, &e)?.clone();
        let unit_elt = self.unit_map.apply(&[self.field.one()]);
        let derived_base = match Algebra::new(self.space_of(&e)?.clone(), mul, unit_elt.clone()) {
            Ok(base_algebra) => {
                report.absorb("derived-base-algebra", check_algebra(&base_algebra));
                let psi = self.op_unit_map.clone().expect("op data present");
                let casimir = self.op_pairing(&e, &e)?.apply(&unit_elt);
                match SepFrobenius::new(base_algebra, psi, casimir) {
                    Ok(sf) => {
                        let frob = check_sep_frobenius(&sf);
                        let ok = frob.passed();
                        report.absorb("derived-base-frobenius", frob);
                        ok.then_some(sf)
                    }
                    Err(_) => None,
                }
            }
            Err(_) => None,
        };

        Ok(FunctorFrobeniusCheck {
            report,
            derived_base,
        })
    }
}

/// Outcome of the essential-strength computation at one pair: the induced
/// map `Ga ⊗_R Gb → G(a⊛b)` and its invertibility analysis.
#[derive(Clone, Debug)]
pub struct Strength {
    pub essentially_strong: bool,
    pub surjective: bool,
    pub kernel_matches_relations: bool,
    pub map: LinMap,
    pub tensor: BimoduleTensor,
}

/// A candidate factorization of the fragment through bimodules over another
/// algebra: the algebra and per-object actions whose underlying data must
/// reproduce the fragment.
#[derive(Clone, Debug)]
pub struct FactorizationWitness {
    pub base: Algebra,
    /// Object name to `(λ: S⊗Gc → Gc, ρ: Gc⊗S → Gc)`.
    pub actions: BTreeMap<String, (LinMap, LinMap)>,
}

/// Result of [`MonoidalFunctorFragment::frobenius_check`].
#[derive(Clone, Debug)]
pub struct FunctorFrobeniusCheck {
    pub report: Report,
    /// The verified separable Frobenius structure on the canonical base, when
    /// every derived-base check passed.
    pub derived_base: Option<SepFrobenius>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{forgetful_fragment, groupoid_wba, GroupoidPattern};
    use crate::linmap::basis_vec;
    use crate::tensor_over::induced_on_quotient;

    fn q() -> Field {
        Field::Rationals
    }

    fn pair2_fragment() -> crate::corpus::ForgetfulFragment {
        let w = groupoid_wba(2, &GroupoidPattern::Pair, q()).unwrap();
        forgetful_fragment(&w, 3).unwrap()
    }

    #[test]
    fn canonical_base_matches_the_bialgebroid_base() {
        let built = pair2_fragment();
        let base = built.fragment.canonical_base().unwrap();
        assert_eq!(base.dim(), 2);
        assert!(base.mul_map().same_matrix(built.bialgebroid.base.mul_map()));
        assert_eq!(base.unit(), built.bialgebroid.base.unit());
    }

    #[test]
    fn canonical_bimodule_actions_are_multiplication_through_source_and_target() {
        let built = pair2_fragment();
        let bim = built.fragment.canonical_bimodule("A").unwrap();
        let expected = built.bialgebroid.base_bimodule();
        assert!(bim.left_action.same_matrix(&expected.left_action));
        assert!(bim.right_action.same_matrix(&expected.right_action));
    }

    #[test]
    fn forgetful_fragments_are_essentially_strong_everywhere() {
        let built = pair2_fragment();
        let names: Vec<(String, String)> = built
            .fragment
            .pairings()
            .keys()
            .filter(|(a, b)| a != "E" && b != "E")
            .cloned()
            .collect();
        assert!(!names.is_empty());
        for (a, b) in names {
            let strength = built.fragment.induced_strength(&a, &b).unwrap();
            assert!(strength.essentially_strong, "({a},{b}) should be strong");
            // factorization identity: the induced map recomposes to G2
            let g2 = built.fragment.pairing(&a, &b).unwrap();
            assert!(strength
                .map
                .compose(&strength.tensor.projection)
                .same_matrix(g2));
        }
    }

    #[test]
    fn universal_sigma_for_the_canonical_witness_is_the_identity() {
        let built = pair2_fragment();
        let frag = &built.fragment;
        let mut actions = BTreeMap::new();
        for obj in frag.objects() {
            actions.insert(
                obj.name.clone(),
                (
                    frag.pairing("E", &obj.name).unwrap().clone(),
                    frag.pairing(&obj.name, "E").unwrap().clone(),
                ),
            );
        }
        let witness = FactorizationWitness {
            base: frag.canonical_base().unwrap(),
            actions,
        };
        let (sigma, report) = frag.universal_sigma(&witness).unwrap();
        assert!(report.passed());
        assert!(sigma.map.is_identity());
    }

    #[test]
    fn universal_sigma_for_scalar_actions_is_the_unit_map() {
        let built = pair2_fragment();
        let frag = &built.fragment;
        let k = Algebra::base_field(q());
        let mut actions = BTreeMap::new();
        for obj in frag.objects() {
            let id = LinMap::identity(obj.space.clone(), q());
            actions.insert(obj.name.clone(), (id.clone(), id));
        }
        let witness = FactorizationWitness { base: k, actions };
        let (sigma, _) = frag.universal_sigma(&witness).unwrap();
        // σ = η_R: 1 ↦ unit of the canonical base
        let base = frag.canonical_base().unwrap();
        assert_eq!(sigma.map.column(0), base.unit());
    }

    #[test]
    fn universal_sigma_for_the_swapped_witness_is_the_swap() {
        let built = pair2_fragment();
        let frag = &built.fragment;
        let base = frag.canonical_base().unwrap();
        // the swap of the two base idempotents is an algebra automorphism
        let swap = LinMap::from_fn(base.space().clone(), base.space().clone(), q(), |r, c| {
            if r == 1 - c {
                q().one()
            } else {
                q().zero()
            }
        });
        let mut actions = BTreeMap::new();
        for obj in frag.objects() {
            let id = LinMap::identity(obj.space.clone(), q());
            let lambda = frag
                .pairing("E", &obj.name)
                .unwrap()
                .compose(&swap.tensor(&id));
            let rho = frag
                .pairing(&obj.name, "E")
                .unwrap()
                .compose(&id.tensor(&swap));
            actions.insert(obj.name.clone(), (lambda, rho));
        }
        let witness = FactorizationWitness {
            base: base.clone(),
            actions,
        };
        let (sigma, _) = frag.universal_sigma(&witness).unwrap();
        assert!(sigma.map.same_matrix(&swap));
    }

    #[test]
    fn functor_frobenius_check_passes_on_the_forgetful_fragment() {
        let built = pair2_fragment();
        let outcome = built.fragment.frobenius_check("A", "A", "A").unwrap();
        assert!(outcome.report.passed(), "failed: {:?}", outcome.report.failed_names());
        let sf = outcome.derived_base.expect("derived base must verify");
        assert_eq!(sf.casimir, built.frobenius.casimir);
    }

    #[test]
    fn zeroed_op_unit_fails_the_op_unit_square_with_a_witness() {
        let built = pair2_fragment();
        let frag = &built.fragment;
        let zero_op_unit = LinMap::zero(
            frag.space_of("E").unwrap().clone(),
            BasedSpace::line(),
            q(),
        );
        let broken = MonoidalFunctorFragment::new(
            q(),
            frag.objects().to_vec(),
            "E",
            frag.products()
                .iter()
                .map(|((a, b), c)| (a.clone(), b.clone(), c.clone()))
                .collect(),
            frag.pairings()
                .iter()
                .map(|((a, b), m)| (a.clone(), b.clone(), m.clone()))
                .collect(),
            frag.unit_map().clone(),
        )
        .unwrap()
        .with_op_data(
            frag.op_pairings()
                .iter()
                .map(|((a, b), m)| (a.clone(), b.clone(), m.clone()))
                .collect(),
            zero_op_unit,
        )
        .unwrap();
        let outcome = broken.frobenius_check("A", "A", "A").unwrap();
        assert!(!outcome.report.passed());
        let failed = outcome.report.failed_names();
        assert!(failed.iter().any(|n| n.starts_with("op-unit-square")));
        let check = outcome
            .report
            .checks
            .iter()
            .find(|c| c.name.starts_with("op-unit-square") && !c.passed)
            .unwrap();
        assert!(!check.witnesses.is_empty());
    }

    #[test]
    fn split_coequalizer_identities_force_strength() {
        let built = pair2_fragment();
        for (a, b) in [("A", "A"), ("A", "A⊛A"), ("A⊛A", "A")] {
            let report = built.fragment.split_coequalizer_report(a, b).unwrap();
            assert!(report.passed());
            let strength = built.fragment.induced_strength(a, b).unwrap();
            assert!(strength.essentially_strong);
        }
    }

    #[test]
    fn naturality_holds_for_descended_module_morphisms() {
        let built = pair2_fragment();
        let frag = &built.fragment;
        let b = &built.bialgebroid;
        let a = &b.total;
        // left multiplications are module endomorphisms of the regular module
        let tau = a.left_mul(&basis_vec(q(), 4, 0));
        let ups = a.left_mul(&basis_vec(q(), 4, 3));
        let product_map = induced_on_quotient(&b.tensor_square, &tau, &ups).unwrap();
        let with_nat = MonoidalFunctorFragment::new(
            q(),
            frag.objects().to_vec(),
            "E",
            frag.products()
                .iter()
                .map(|((x, y), z)| (x.clone(), y.clone(), z.clone()))
                .collect(),
            frag.pairings()
                .iter()
                .map(|((x, y), m)| (x.clone(), y.clone(), m.clone()))
                .collect(),
            frag.unit_map().clone(),
        )
        .unwrap()
        .with_morphisms(
            vec![
                FragmentMorphism {
                    name: "tau".into(),
                    source: "A".into(),
                    target: "A".into(),
                    map: tau,
                },
                FragmentMorphism {
                    name: "ups".into(),
                    source: "A".into(),
                    target: "A".into(),
                    map: ups,
                },
            ],
            vec![NaturalityInstance {
                first: "tau".into(),
                second: "ups".into(),
                product_map,
            }],
        )
        .unwrap();
        assert!(with_nat.check().passed());
    }
}
