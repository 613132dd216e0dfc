//! Generators for the example corpus: groupoid algebras and their weak
//! bialgebra structures, dual group algebras, matrix Frobenius structures,
//! character modules, and fragment builders for forgetful and invariants
//! functors.

use crate::algebra::Algebra;
use crate::bialgebroid::RightBialgebroid;
use crate::error::Error;
use crate::fragment::{FragmentObject, MonoidalFunctorFragment};
use crate::frobenius::{casimir_mixer, check_sep_frobenius, SepFrobenius};
use crate::linmap::{basis_vec, tensor_vec, zero_vec, LinMap};
use crate::module::{Bimodule, RightModule};
use crate::scalar::{Field, Scalar};
use crate::space::BasedSpace;
use crate::subspace::SubSpace;
use crate::tensor_over::tensor_over_many;
use crate::wba::{base_sep_frobenius, wba_to_bialgebroid, WeakBialgebra};

/// A finite group as a validated multiplication table; element 0 is the
/// identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupTable {
    order: usize,
    mul: Vec<usize>,
}

impl GroupTable {
    pub fn new(order: usize, mul: Vec<usize>) -> Result<Self, Error> {
        if order == 0 || mul.len() != order * order {
            return Err(Error::InvalidInput("group table has the wrong size".into()));
        }
        let at = |i: usize, j: usize| mul[i * order + j];
        if mul.iter().any(|&v| v >= order) {
            return Err(Error::InvalidInput("group table entry out of range".into()));
        }
        for j in 0..order {
            if at(0, j) != j || at(j, 0) != j {
                return Err(Error::InvalidInput(
                    "element 0 of the group table is not an identity".into(),
                ));
            }
        }
        for i in 0..order {
            let mut row = vec![false; order];
            let mut col = vec![false; order];
            for j in 0..order {
                row[at(i, j)] = true;
                col[at(j, i)] = true;
            }
            if row.iter().any(|v| !v) || col.iter().any(|v| !v) {
                return Err(Error::InvalidInput(
                    "group table is not a Latin square".into(),
                ));
            }
        }
        for i in 0..order {
            for j in 0..order {
                for k in 0..order {
                    if at(at(i, j), k) != at(i, at(j, k)) {
                        return Err(Error::InvalidInput(
                            "group table is not associative".into(),
                        ));
                    }
                }
            }
        }
        Ok(GroupTable { order, mul })
    }

    pub fn cyclic(n: usize) -> Self {
        let mul = (0..n * n).map(|ij| (ij / n + ij % n) % n).collect();
        GroupTable::new(n, mul).expect("cyclic table is a group")
    }

    /// The symmetric group on three letters; elements are the permutations of
    /// `[0,1,2]` in lexicographic order, composed as `(p∘q)(x) = p[q[x]]`.
    pub fn symmetric3() -> Self {
        let perms: [[usize; 3]; 6] = [
            [0, 1, 2],
            [0, 2, 1],
            [1, 0, 2],
            [1, 2, 0],
            [2, 0, 1],
            [2, 1, 0],
        ];
        let index = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
        let mut mul = Vec::with_capacity(36);
        for p in perms {
            for q in perms {
                mul.push(index([p[q[0]], p[q[1]], p[q[2]]]));
            }
        }
        GroupTable::new(6, mul).expect("symmetric group table is a group")
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn product(&self, i: usize, j: usize) -> usize {
        self.mul[i * self.order + j]
    }
}

/// The shape of a generated groupoid: `n` isolated objects, the pair groupoid
/// on `n` objects, or a group viewed as a one-object groupoid.
#[derive(Clone, Debug)]
pub enum GroupoidPattern {
    Discrete,
    Pair,
    Group(GroupTable),
}

/// The groupoid algebra with its grouplike weak bialgebra structure: basis =
/// morphisms, product = composition or zero, `Δ(g) = g⊗g`, `ε(g) = 1`.
pub fn groupoid_wba(
    objects: usize,
    pattern: &GroupoidPattern,
    field: Field,
) -> Result<WeakBialgebra, Error> {
    if objects == 0 {
        return Err(Error::InvalidInput("a groupoid needs at least one object".into()));
    }
    let (space, unit, mul): (BasedSpace, Vec<Scalar>, Box<dyn Fn(usize, usize) -> Vec<Scalar>>) =
        match pattern {
            GroupoidPattern::Discrete => {
                let n = objects;
                let space = BasedSpace::new((0..n).map(|x| format!("e{x}")).collect())?;
                let unit = vec![field.one(); n];
                let mul = Box::new(move |i: usize, j: usize| {
                    let mut v = zero_vec(field, n);
                    if i == j {
                        v[i] = field.one();
                    }
                    v
                }) as Box<dyn Fn(usize, usize) -> Vec<Scalar>>;
                (space, unit, mul)
            }
            GroupoidPattern::Pair => {
                let n = objects;
                let dim = n * n;
                let labels = (0..n)
                    .flat_map(|x| (0..n).map(move |y| format!("g{x}{y}")))
                    .collect();
                let space = BasedSpace::new(labels)?;
                let mut unit = zero_vec(field, dim);
                for x in 0..n {
                    unit[x * n + x] = field.one();
                }
                let mul = Box::new(move |a: usize, b: usize| {
                    let (x, y) = (a / n, a % n);
                    let (u, v) = (b / n, b % n);
                    let mut out = zero_vec(field, dim);
                    if y == u {
                        out[x * n + v] = field.one();
                    }
                    out
                }) as Box<dyn Fn(usize, usize) -> Vec<Scalar>>;
                (space, unit, mul)
            }
            GroupoidPattern::Group(table) => {
                if objects != 1 {
                    return Err(Error::InvalidInput(
                        "a group is a groupoid with exactly one object".into(),
                    ));
                }
                let table = table.clone();
                let n = table.order();
                let space = BasedSpace::new((0..n).map(|g| format!("g{g}")).collect())?;
                let unit = basis_vec(field, n, 0);
                let mul = Box::new(move |i: usize, j: usize| {
                    basis_vec(field, n, table.product(i, j))
                }) as Box<dyn Fn(usize, usize) -> Vec<Scalar>>;
                (space, unit, mul)
            }
        };

    let dim = space.dim();
    let algebra = Algebra::from_structure(space.clone(), field, unit, |i, j| mul(i, j))?;
    let comul = LinMap::from_fn(space.clone(), space.tensor(&space), field, |row, col| {
        if row == col * dim + col {
            field.one()
        } else {
            field.zero()
        }
    });
    let counit = LinMap::from_fn(space, BasedSpace::line(), field, |_, _| field.one());
    WeakBialgebra::new(algebra, comul, counit)
}

/// Convenience: the group bialgebra of a finite group.
pub fn group_algebra_wba(table: &GroupTable, field: Field) -> Result<WeakBialgebra, Error> {
    groupoid_wba(1, &GroupoidPattern::Group(table.clone()), field)
}

/// Functions on a finite group: pointwise product, `Δ(δ_g) = Σ_{hk=g}
/// δ_h ⊗ δ_k`, `ε(δ_g) = [g = identity]`.
pub fn dual_group_wba(table: &GroupTable, field: Field) -> Result<WeakBialgebra, Error> {
    let n = table.order();
    let space = BasedSpace::new((0..n).map(|g| format!("d{g}")).collect())?;
    let algebra = Algebra::from_structure(space.clone(), field, vec![field.one(); n], |i, j| {
        let mut v = zero_vec(field, n);
        if i == j {
            v[i] = field.one();
        }
        v
    })?;
    let comul = LinMap::from_fn(space.clone(), space.tensor(&space), field, |row, col| {
        let (h, k) = (row / n, row % n);
        if table.product(h, k) == col {
            field.one()
        } else {
            field.zero()
        }
    });
    let counit = LinMap::from_fn(space, BasedSpace::line(), field, |_, col| {
        if col == 0 {
            field.one()
        } else {
            field.zero()
        }
    });
    WeakBialgebra::new(algebra, comul, counit)
}

/// The pointwise-product algebra on `n` coordinates.
pub fn diagonal_algebra(n: usize, field: Field) -> Algebra {
    let space = BasedSpace::with_prefix("e", n);
    Algebra::from_structure(space, field, vec![field.one(); n], |i, j| {
        let mut v = zero_vec(field, n);
        if i == j {
            v[i] = field.one();
        }
        v
    })
    .expect("diagonal algebra is well formed")
}

/// The full matrix algebra on matrix units `E_{ij}`, flattened row-major.
pub fn matrix_algebra(n: usize, field: Field) -> Algebra {
    let space = BasedSpace::new(
        (0..n)
            .flat_map(|i| (0..n).map(move |j| format!("E{i}{j}")))
            .collect(),
    )
    .expect("matrix unit labels are unique");
    let mut unit = zero_vec(field, n * n);
    for i in 0..n {
        unit[i * n + i] = field.one();
    }
    Algebra::from_structure(space, field, unit, |a, b| {
        let (i, j) = (a / n, a % n);
        let (k, l) = (b / n, b % n);
        let mut v = zero_vec(field, n * n);
        if j == k {
            v[i * n + l] = field.one();
        }
        v
    })
    .expect("matrix algebra is well formed")
}

/// The separable Frobenius structure on the matrix algebra: `ψ = n·tr`,
/// `e = (1/n) Σ_{ij} E_{ij} ⊗ E_{ji}`. Undefined when the characteristic
/// divides `n`; the returned structure is verified before being handed out.
pub fn matrix_frobenius(n: usize, field: Field) -> Result<SepFrobenius, Error> {
    let p = field.characteristic();
    if p != 0 && (n as u64) % p == 0 {
        return Err(Error::CharacteristicDivides { p, n: n as u64 });
    }
    let base = matrix_algebra(n, field);
    let psi = LinMap::from_fn(base.space().clone(), BasedSpace::line(), field, |_, col| {
        let (i, j) = (col / n, col % n);
        if i == j {
            field.from_i64(n as i64)
        } else {
            field.zero()
        }
    });
    let over_n = field.from_ratio(1, n as i64)?;
    let mut casimir = zero_vec(field, n * n * n * n);
    for i in 0..n {
        for j in 0..n {
            casimir[(i * n + j) * n * n + (j * n + i)] = over_n.clone();
        }
    }
    let sf = SepFrobenius::new(base, psi, casimir)?;
    let report = check_sep_frobenius(&sf);
    if !report.passed() {
        return Err(Error::CheckFailed {
            operation: "matrix_frobenius".into(),
            report,
        });
    }
    Ok(sf)
}

/// A one-dimensional module along a character `χ: A → k`.
pub fn character_module(a: &Algebra, chi: &LinMap) -> Result<RightModule, Error> {
    let field = a.field();
    let space = BasedSpace::new(vec!["v".into()])?;
    let n = a.dim();
    let action = LinMap::from_fn(space.tensor(a.space()), space.clone(), field, |_, col| {
        chi.at(0, col % n).clone()
    });
    RightModule::new(a.clone(), space, action)
}

/// A weak bialgebra's forgetful-functor fragment together with the data it
/// was built from.
#[derive(Clone, Debug)]
pub struct ForgetfulFragment {
    pub fragment: MonoidalFunctorFragment,
    pub bialgebroid: RightBialgebroid,
    pub frobenius: SepFrobenius,
}

/// Builds the fragment of the forgetful functor from modules over `w` down to
/// based spaces: objects are the unit `E` and the tensor words `A`, `A⊛A`, …
/// up to the given length, pairings are the canonical projections, and the
/// opmonoidal data is induced by the separable Frobenius structure on the
/// base. Products of words are realised as flat quotients, so the table is
/// strictly associative.
pub fn forgetful_fragment(w: &WeakBialgebra, depth: usize) -> Result<ForgetfulFragment, Error> {
    if depth == 0 {
        return Err(Error::InvalidInput("fragment depth must be at least 1".into()));
    }
    let b = wba_to_bialgebroid(w)?;
    let sf = base_sep_frobenius(w)?;
    let field = w.algebra().field();
    let r = b.base.clone();
    let a_bim = b.base_bimodule().clone();

    struct Word {
        name: String,
        bimodule: Bimodule,
        projection: LinMap,
        section: LinMap,
    }
    let mut words: Vec<Word> = Vec::with_capacity(depth);
    for k in 1..=depth {
        let name = vec!["A"; k].join("⊛");
        if k == 1 {
            let id = LinMap::identity(a_bim.space.clone(), field);
            words.push(Word {
                name,
                bimodule: a_bim.clone(),
                projection: id.clone(),
                section: id,
            });
        } else {
            let t = tensor_over_many(&vec![a_bim.clone(); k], &r)?;
            words.push(Word {
                name,
                bimodule: t.bimodule.clone(),
                projection: t.projection.clone(),
                section: t.section.clone(),
            });
        }
    }

    let unit_name = "E".to_string();
    let mut objects = vec![FragmentObject {
        name: unit_name.clone(),
        space: r.space().clone(),
    }];
    for word in &words {
        objects.push(FragmentObject {
            name: word.name.clone(),
            space: word.bimodule.space.clone(),
        });
    }

    let mut products = vec![(unit_name.clone(), unit_name.clone(), unit_name.clone())];
    let mut pairings = vec![(unit_name.clone(), unit_name.clone(), r.mul_map().clone())];
    let mut op_pairings = Vec::new();

    // (E, E): lift r ↦ r ⊗ 1 mixed by the Casimir element gives σ
    let insert_right_unit = |space: &BasedSpace| {
        LinMap::from_columns(
            space.clone(),
            space.tensor(r.space()),
            field,
            &(0..space.dim())
                .map(|i| tensor_vec(&basis_vec(field, space.dim(), i), r.unit()))
                .collect::<Vec<_>>(),
        )
        .expect("unit insertion shape")
    };
    let insert_left_unit = |space: &BasedSpace| {
        LinMap::from_columns(
            space.clone(),
            r.space().tensor(space),
            field,
            &(0..space.dim())
                .map(|i| tensor_vec(r.unit(), &basis_vec(field, space.dim(), i)))
                .collect::<Vec<_>>(),
        )
        .expect("unit insertion shape")
    };
    let r_regular = Bimodule::regular(&r);
    op_pairings.push((
        unit_name.clone(),
        unit_name.clone(),
        casimir_mixer(&r_regular, &r_regular, &sf).compose(&insert_right_unit(r.space())),
    ));

    for word in &words {
        products.push((unit_name.clone(), word.name.clone(), word.name.clone()));
        products.push((word.name.clone(), unit_name.clone(), word.name.clone()));
        pairings.push((
            unit_name.clone(),
            word.name.clone(),
            word.bimodule.left_action.clone(),
        ));
        pairings.push((
            word.name.clone(),
            unit_name.clone(),
            word.bimodule.right_action.clone(),
        ));
        op_pairings.push((
            unit_name.clone(),
            word.name.clone(),
            casimir_mixer(&r_regular, &word.bimodule, &sf)
                .compose(&insert_left_unit(&word.bimodule.space)),
        ));
        op_pairings.push((
            word.name.clone(),
            unit_name.clone(),
            casimir_mixer(&word.bimodule, &r_regular, &sf)
                .compose(&insert_right_unit(&word.bimodule.space)),
        ));
    }

    for (j, left) in words.iter().enumerate() {
        for (k, right) in words.iter().enumerate() {
            let total = (j + 1) + (k + 1);
            if total > depth {
                continue;
            }
            let target = &words[total - 1];
            products.push((left.name.clone(), right.name.clone(), target.name.clone()));
            pairings.push((
                left.name.clone(),
                right.name.clone(),
                target
                    .projection
                    .compose(&left.section.tensor(&right.section)),
            ));
            op_pairings.push((
                left.name.clone(),
                right.name.clone(),
                casimir_mixer(&left.bimodule, &right.bimodule, &sf)
                    .compose(&left.projection.tensor(&right.projection))
                    .compose(&target.section),
            ));
        }
    }

    let unit_map = LinMap::from_columns(
        BasedSpace::line(),
        r.space().clone(),
        field,
        &[r.unit().to_vec()],
    )?;
    let fragment = MonoidalFunctorFragment::new(
        field,
        objects,
        &unit_name,
        products,
        pairings,
        unit_map,
    )?
    .with_op_data(op_pairings, sf.counit.clone())?;

    Ok(ForgetfulFragment {
        fragment,
        bialgebroid: b,
        frobenius: sf,
    })
}

/// The invariants subspace `{x : x◁a = ε(a)·x for all a}` of a right module
/// over a weak bialgebra's algebra.
pub fn invariants_subspace(w: &WeakBialgebra, module: &RightModule) -> SubSpace {
    let field = module.algebra.field();
    let n = module.algebra.dim();
    let d = module.space.dim();
    let constraints: Vec<LinMap> = (0..n)
        .map(|k| {
            let act = LinMap::from_columns(
                module.space.clone(),
                module.space.clone(),
                field,
                &(0..d).map(|i| module.act_basis(i, k)).collect::<Vec<_>>(),
            )
            .expect("square");
            let eps = w.counit().at(0, k).clone();
            act.sub(&LinMap::identity(module.space.clone(), field).scale(&eps))
        })
        .collect();
    if d == 0 {
        return SubSpace::zero(module.space.clone(), field);
    }
    SubSpace::kernel_of(&LinMap::vstack(&constraints).expect("common domain"))
}

/// The invariants-functor fragment over the two-element group bialgebra:
/// objects are the trivial module, the sign module and their product, with
/// `G = Hom(triv, −)` realised as invariant subspaces. The pairing at
/// `(sign, sign)` is the zero map `0 → k`, so this fragment is the standard
/// example of a monoidal functor that is not essentially strong.
pub fn invariants_fragment_z2(field: Field) -> Result<MonoidalFunctorFragment, Error> {
    let w = group_algebra_wba(&GroupTable::cyclic(2), field)?;
    let a = w.algebra().clone();
    let b = wba_to_bialgebroid(&w)?;

    let trivial = character_module(&a, w.counit())?;
    let minus_one = field.from_i64(-1);
    let sign_chi = LinMap::from_fn(a.space().clone(), BasedSpace::line(), field, |_, col| {
        if col == 0 {
            field.one()
        } else {
            minus_one.clone()
        }
    });
    let sign = character_module(&a, &sign_chi)?;
    let sign_sq = crate::bialgebroid::module_product(&b, &sign, &sign)?.module;

    let modules: Vec<(&str, &RightModule)> =
        vec![("1", &trivial), ("sign", &sign), ("sign⊛sign", &sign_sq)];
    let invariants: Vec<(String, SubSpace)> = modules
        .iter()
        .map(|(name, m)| (name.to_string(), invariants_subspace(&w, m)))
        .collect();
    let inv_of = |name: &str| -> &SubSpace {
        &invariants.iter().find(|(n, _)| n == name).unwrap().1
    };

    let objects: Vec<FragmentObject> = invariants
        .iter()
        .map(|(name, inv)| FragmentObject {
            name: name.clone(),
            space: BasedSpace::with_prefix(&format!("inv({name})"), inv.rank()),
        })
        .collect();

    let product_names = vec![
        ("1", "1", "1"),
        ("1", "sign", "sign"),
        ("sign", "1", "sign"),
        ("1", "sign⊛sign", "sign⊛sign"),
        ("sign⊛sign", "1", "sign⊛sign"),
        ("sign", "sign", "sign⊛sign"),
    ];
    let mut products = Vec::new();
    let mut pairings = Vec::new();
    for (a_name, b_name, c_name) in product_names {
        products.push((a_name.to_string(), b_name.to_string(), c_name.to_string()));
        let inv_a = inv_of(a_name);
        let inv_b = inv_of(b_name);
        let inv_c = inv_of(c_name);
        let cols: Vec<Vec<Scalar>> = (0..inv_a.rank())
            .flat_map(|i| {
                (0..inv_b.rank()).map(move |j| {
                    let flat = tensor_vec(&inv_a.basis()[i], &inv_b.basis()[j]);
                    inv_c
                        .coords(&flat)
                        .expect("product of invariants is invariant")
                })
            })
            .collect();
        let map = LinMap::from_columns(
            BasedSpace::with_prefix("a", inv_a.rank())
                .tensor(&BasedSpace::with_prefix("b", inv_b.rank())),
            BasedSpace::with_prefix(&format!("inv({c_name})"), inv_c.rank()),
            field,
            &cols,
        )?;
        pairings.push((a_name.to_string(), b_name.to_string(), map));
    }

    let unit_inv = inv_of("1");
    let unit_coords = unit_inv
        .coords(&basis_vec(field, 1, 0))
        .expect("trivial module is invariant");
    let unit_map = LinMap::from_columns(
        BasedSpace::line(),
        BasedSpace::with_prefix("inv(1)", unit_inv.rank()),
        field,
        &[unit_coords],
    )?;

    MonoidalFunctorFragment::new(field, objects, "1", products, pairings, unit_map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wba::check_wba;

    fn q() -> Field {
        Field::Rationals
    }

    #[test]
    fn group_tables_validate() {
        assert!(GroupTable::new(2, vec![0, 1, 1, 0]).is_ok());
        assert!(GroupTable::new(2, vec![0, 1, 1, 1]).is_err());
        assert!(GroupTable::new(2, vec![1, 0, 0, 1]).is_err());
        GroupTable::symmetric3();
        // S3 is not abelian
        let s3 = GroupTable::symmetric3();
        assert_ne!(s3.product(1, 2), s3.product(2, 1));
    }

    #[test]
    fn generated_weak_bialgebras_pass_their_checker() {
        for field in [q(), Field::prime(5).unwrap(), Field::prime(7).unwrap()] {
            for n in 1..=4 {
                let w = groupoid_wba(n, &GroupoidPattern::Discrete, field).unwrap();
                assert!(check_wba(&w).passed());
            }
            for n in 2..=3 {
                let w = groupoid_wba(n, &GroupoidPattern::Pair, field).unwrap();
                assert!(check_wba(&w).passed());
            }
            for table in [
                GroupTable::cyclic(2),
                GroupTable::cyclic(3),
                GroupTable::symmetric3(),
            ] {
                let w = group_algebra_wba(&table, field).unwrap();
                assert!(check_wba(&w).passed());
                let d = dual_group_wba(&table, field).unwrap();
                assert!(check_wba(&d).passed());
            }
        }
    }

    #[test]
    fn group_pattern_requires_one_object() {
        assert!(groupoid_wba(2, &GroupoidPattern::Group(GroupTable::cyclic(2)), q()).is_err());
    }

    #[test]
    fn matrix_frobenius_base_cases() {
        let sf = matrix_frobenius(1, q()).unwrap();
        assert_eq!(sf.base.dim(), 1);
        assert!(matrix_frobenius(2, q()).is_ok());
        assert!(matrix_frobenius(3, Field::prime(3).unwrap()).is_err());
        assert!(matrix_frobenius(2, Field::prime(7).unwrap()).is_ok());
    }

    #[test]
    fn forgetful_fragment_of_the_pair_groupoid_verifies() {
        let w = groupoid_wba(2, &GroupoidPattern::Pair, q()).unwrap();
        let built = forgetful_fragment(&w, 2).unwrap();
        assert!(built.fragment.check().passed());
    }

    #[test]
    fn invariants_fragment_checks_and_fails_strength_at_the_sign_pair() {
        let frag = invariants_fragment_z2(q()).unwrap();
        assert!(frag.check().passed());
        assert_eq!(frag.space_of("sign").unwrap().dim(), 0);
        assert_eq!(frag.space_of("sign⊛sign").unwrap().dim(), 1);
        let strength = frag.induced_strength("sign", "sign").unwrap();
        assert!(!strength.essentially_strong);
        assert!(!strength.surjective);
        // the other pairs are fine
        let ok = frag.induced_strength("1", "sign").unwrap();
        assert!(ok.essentially_strong);
    }
}
