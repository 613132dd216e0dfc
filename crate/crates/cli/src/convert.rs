//! Conversions between documents and the in-memory structures.

use qgroupoid::algebra::Algebra;
use qgroupoid::bialgebroid::RightBialgebroid;
use qgroupoid::fragment::{
    FragmentMorphism, FragmentObject, MonoidalFunctorFragment, NaturalityInstance,
};
use qgroupoid::frobenius::SepFrobenius;
use qgroupoid::linmap::LinMap;
use qgroupoid::module::RightModule;
use qgroupoid::scalar::{Field, Scalar};
use qgroupoid::space::BasedSpace;
use qgroupoid::wba::WeakBialgebra;

use crate::doc::{
    AlgebraDoc, BialgebroidDoc, Entries, FragmentDoc, ModuleDoc, MorphismDoc, NaturalityDoc,
    ObjectDoc, PairingDoc, SepFrobeniusDoc, WbaDoc,
};
use crate::CliError;

fn space_from(dim: usize, labels: &Option<Vec<String>>, fallback: &str) -> Result<BasedSpace, CliError> {
    match labels {
        Some(ls) => {
            if ls.len() != dim {
                return Err(CliError::Input(format!(
                    "{fallback}: {} labels for dimension {dim}",
                    ls.len()
                )));
            }
            BasedSpace::new(ls.clone()).map_err(|e| CliError::Input(e.to_string()))
        }
        None => Ok(BasedSpace::with_prefix(fallback, dim)),
    }
}

fn entries_to_map(
    entries: &Entries,
    domain: BasedSpace,
    codomain: BasedSpace,
    field: Field,
    component: &str,
) -> Result<LinMap, CliError> {
    let rows = codomain.dim();
    let cols = domain.dim();
    let mut map = LinMap::zero(domain, codomain, field);
    for (i, &[row, col, num, den]) in entries.iter().enumerate() {
        let (r, c) = (
            usize::try_from(row).map_err(|_| bad_index(component, i, row))?,
            usize::try_from(col).map_err(|_| bad_index(component, i, col))?,
        );
        if r >= rows || c >= cols {
            return Err(CliError::Input(format!(
                "{component} entry {i}: index [{row},{col}] out of range for a {rows}×{cols} matrix"
            )));
        }
        let value = field.from_ratio(num, den).map_err(|e| {
            CliError::Input(format!("{component} entry {i}: {e}"))
        })?;
        let sum = map.at(r, c) + &value;
        map = add_entry(map, r, c, sum);
    }
    Ok(map)
}

fn bad_index(component: &str, i: usize, value: i64) -> CliError {
    CliError::Input(format!("{component} entry {i}: index {value} is negative"))
}

fn add_entry(map: LinMap, r: usize, c: usize, value: Scalar) -> LinMap {
    LinMap::from_fn(
        map.domain().clone(),
        map.codomain().clone(),
        map.field(),
        |row, col| {
            if row == r && col == c {
                value.clone()
            } else {
                map.at(row, col).clone()
            }
        },
    )
}

fn entries_to_vec(
    entries: &Entries,
    len: usize,
    field: Field,
    component: &str,
) -> Result<Vec<Scalar>, CliError> {
    let column = entries_to_map(
        entries,
        BasedSpace::with_prefix("c", 1),
        BasedSpace::with_prefix("r", len),
        field,
        component,
    )?;
    Ok(column.column(0))
}

fn scalar_to_pair(s: &Scalar, component: &str) -> Result<(i64, i64), CliError> {
    match s {
        Scalar::Rat(r) => {
            let num = i64::try_from(r.numer()).map_err(|_| overflow(component))?;
            let den = i64::try_from(r.denom()).map_err(|_| overflow(component))?;
            Ok((num, den))
        }
        Scalar::Fp { value, .. } => Ok((*value as i64, 1)),
    }
}

fn overflow(component: &str) -> CliError {
    CliError::Input(format!(
        "{component}: coefficient does not fit the 64-bit document format"
    ))
}

fn map_to_entries(map: &LinMap, component: &str) -> Result<Entries, CliError> {
    let mut entries = Vec::new();
    for r in 0..map.codomain().dim() {
        for c in 0..map.domain().dim() {
            let s = map.at(r, c);
            if s.is_zero() {
                continue;
            }
            let (num, den) = scalar_to_pair(s, component)?;
            entries.push([r as i64, c as i64, num, den]);
        }
    }
    Ok(entries)
}

fn vec_to_entries(v: &[Scalar], component: &str) -> Result<Entries, CliError> {
    let mut entries = Vec::new();
    for (r, s) in v.iter().enumerate() {
        if s.is_zero() {
            continue;
        }
        let (num, den) = scalar_to_pair(s, component)?;
        entries.push([r as i64, 0, num, den]);
    }
    Ok(entries)
}

pub fn algebra_from_doc(field: Field, doc: &AlgebraDoc) -> Result<Algebra, CliError> {
    let space = space_from(doc.dim, &doc.labels, "a")?;
    let mul = entries_to_map(
        &doc.mul,
        space.tensor(&space),
        space.clone(),
        field,
        "mul",
    )?;
    let unit = entries_to_vec(&doc.unit, doc.dim, field, "unit")?;
    Algebra::new(space, mul, unit).map_err(|e| CliError::Input(e.to_string()))
}

pub fn algebra_to_doc(a: &Algebra) -> Result<AlgebraDoc, CliError> {
    Ok(AlgebraDoc {
        dim: a.dim(),
        labels: Some(a.space().labels().to_vec()),
        mul: map_to_entries(a.mul_map(), "mul")?,
        unit: vec_to_entries(a.unit(), "unit")?,
    })
}

pub fn wba_from_doc(field: Field, doc: &WbaDoc) -> Result<WeakBialgebra, CliError> {
    let algebra = algebra_from_doc(
        field,
        &AlgebraDoc {
            dim: doc.dim,
            labels: doc.labels.clone(),
            mul: doc.mul.clone(),
            unit: doc.unit.clone(),
        },
    )?;
    let space = algebra.space().clone();
    let comul = entries_to_map(
        &doc.comul,
        space.clone(),
        space.tensor(&space),
        field,
        "comul",
    )?;
    let counit = entries_to_map(&doc.counit, space, BasedSpace::line(), field, "counit")?;
    WeakBialgebra::new(algebra, comul, counit).map_err(|e| CliError::Input(e.to_string()))
}

pub fn wba_to_doc(w: &WeakBialgebra) -> Result<WbaDoc, CliError> {
    Ok(WbaDoc {
        dim: w.dim(),
        labels: Some(w.algebra().space().labels().to_vec()),
        mul: map_to_entries(w.algebra().mul_map(), "mul")?,
        unit: vec_to_entries(w.algebra().unit(), "unit")?,
        comul: map_to_entries(w.comul(), "comul")?,
        counit: map_to_entries(w.counit(), "counit")?,
    })
}

pub fn bialgebroid_from_doc(
    field: Field,
    doc: &BialgebroidDoc,
) -> Result<RightBialgebroid, CliError> {
    let total = algebra_from_doc(field, &doc.total)?;
    let base = algebra_from_doc(field, &doc.base)?;
    let source = entries_to_map(
        &doc.source,
        base.space().clone(),
        total.space().clone(),
        field,
        "source",
    )?;
    let target = entries_to_map(
        &doc.target,
        base.space().clone(),
        total.space().clone(),
        field,
        "target",
    )?;
    let lift = entries_to_map(
        &doc.coproduct_lift,
        total.space().clone(),
        total.space().tensor(total.space()),
        field,
        "coproduct_lift",
    )?;
    let counit = entries_to_map(
        &doc.counit,
        total.space().clone(),
        base.space().clone(),
        field,
        "counit",
    )?;
    RightBialgebroid::from_coproduct_lift(total, base, source, target, lift, counit)
        .map_err(|e| CliError::Input(e.to_string()))
}

pub fn bialgebroid_to_doc(b: &RightBialgebroid) -> Result<BialgebroidDoc, CliError> {
    Ok(BialgebroidDoc {
        total: algebra_to_doc(&b.total)?,
        base: algebra_to_doc(&b.base)?,
        source: map_to_entries(&b.source.map, "source")?,
        target: map_to_entries(&b.target.map, "target")?,
        coproduct_lift: map_to_entries(&b.coproduct_lifted(), "coproduct_lift")?,
        counit: map_to_entries(&b.counit, "counit")?,
    })
}

pub fn sep_frobenius_from_doc(
    field: Field,
    doc: &SepFrobeniusDoc,
) -> Result<SepFrobenius, CliError> {
    let base = algebra_from_doc(field, &doc.base)?;
    let counit = entries_to_map(
        &doc.counit,
        base.space().clone(),
        BasedSpace::line(),
        field,
        "counit",
    )?;
    let casimir = entries_to_vec(&doc.casimir, base.dim() * base.dim(), field, "casimir")?;
    SepFrobenius::new(base, counit, casimir).map_err(|e| CliError::Input(e.to_string()))
}

pub fn sep_frobenius_to_doc(sf: &SepFrobenius) -> Result<SepFrobeniusDoc, CliError> {
    Ok(SepFrobeniusDoc {
        base: algebra_to_doc(&sf.base)?,
        counit: map_to_entries(&sf.counit, "counit")?,
        casimir: vec_to_entries(&sf.casimir, "casimir")?,
    })
}

pub fn module_from_doc(field: Field, doc: &ModuleDoc) -> Result<RightModule, CliError> {
    let algebra = algebra_from_doc(field, &doc.algebra)?;
    let space = space_from(doc.dim, &doc.labels, "x")?;
    let action = entries_to_map(
        &doc.action,
        space.tensor(algebra.space()),
        space.clone(),
        field,
        "action",
    )?;
    RightModule::new(algebra, space, action).map_err(|e| CliError::Input(e.to_string()))
}

pub fn fragment_from_doc(
    field: Field,
    doc: &FragmentDoc,
) -> Result<MonoidalFunctorFragment, CliError> {
    let mut objects = Vec::new();
    for o in &doc.objects {
        objects.push(FragmentObject {
            name: o.name.clone(),
            space: space_from(o.dim, &o.labels, &o.name)?,
        });
    }
    let space_of = |name: &str| -> Result<BasedSpace, CliError> {
        objects
            .iter()
            .find(|o| o.name == name)
            .map(|o| o.space.clone())
            .ok_or_else(|| CliError::Input(format!("fragment references unknown object `{name}`")))
    };
    let product_of = |a: &str, b: &str| -> Result<String, CliError> {
        doc.products
            .iter()
            .find(|[x, y, _]| x == a && y == b)
            .map(|[_, _, c]| c.clone())
            .ok_or_else(|| CliError::Input(format!("fragment has no product for ({a},{b})")))
    };

    let products = doc
        .products
        .iter()
        .map(|[a, b, c]| (a.clone(), b.clone(), c.clone()))
        .collect();

    let mut pairings = Vec::new();
    for p in &doc.pairings {
        let domain = space_of(&p.left)?.tensor(&space_of(&p.right)?);
        let codomain = space_of(&product_of(&p.left, &p.right)?)?;
        let map = entries_to_map(
            &p.entries,
            domain,
            codomain,
            field,
            &format!("pairing ({},{})", p.left, p.right),
        )?;
        pairings.push((p.left.clone(), p.right.clone(), map));
    }

    let ge = space_of(&doc.unit)?;
    let unit_map = entries_to_map(
        &doc.unit_map,
        BasedSpace::line(),
        ge.clone(),
        field,
        "unit_map",
    )?;

    let mut fragment = MonoidalFunctorFragment::new(
        field,
        objects.clone(),
        &doc.unit,
        products,
        pairings,
        unit_map,
    )
    .map_err(|e| CliError::Input(e.to_string()))?;

    if let (Some(op_pairings), Some(op_unit)) = (&doc.op_pairings, &doc.op_unit_map) {
        let mut ops = Vec::new();
        for p in op_pairings {
            let codomain = space_of(&p.left)?.tensor(&space_of(&p.right)?);
            let domain = space_of(&product_of(&p.left, &p.right)?)?;
            let map = entries_to_map(
                &p.entries,
                domain,
                codomain,
                field,
                &format!("op pairing ({},{})", p.left, p.right),
            )?;
            ops.push((p.left.clone(), p.right.clone(), map));
        }
        let op_unit_map = entries_to_map(op_unit, ge, BasedSpace::line(), field, "op_unit_map")?;
        fragment = fragment
            .with_op_data(ops, op_unit_map)
            .map_err(|e| CliError::Input(e.to_string()))?;
    } else if doc.op_pairings.is_some() || doc.op_unit_map.is_some() {
        return Err(CliError::Input(
            "opmonoidal data needs both op_pairings and op_unit_map".into(),
        ));
    }

    if let Some(morphisms) = &doc.morphisms {
        let mut ms = Vec::new();
        for m in morphisms {
            let map = entries_to_map(
                &m.entries,
                space_of(&m.source)?,
                space_of(&m.target)?,
                field,
                &format!("morphism `{}`", m.name),
            )?;
            ms.push(FragmentMorphism {
                name: m.name.clone(),
                source: m.source.clone(),
                target: m.target.clone(),
                map,
            });
        }
        let mut nats = Vec::new();
        for n in doc.naturality.as_deref().unwrap_or(&[]) {
            let tau = ms
                .iter()
                .find(|m| m.name == n.first)
                .ok_or_else(|| CliError::Input(format!("unknown morphism `{}`", n.first)))?;
            let ups = ms
                .iter()
                .find(|m| m.name == n.second)
                .ok_or_else(|| CliError::Input(format!("unknown morphism `{}`", n.second)))?;
            let domain = space_of(&product_of(&tau.source, &ups.source)?)?;
            let codomain = space_of(&product_of(&tau.target, &ups.target)?)?;
            let map = entries_to_map(
                &n.entries,
                domain,
                codomain,
                field,
                &format!("naturality ({},{})", n.first, n.second),
            )?;
            nats.push(NaturalityInstance {
                first: n.first.clone(),
                second: n.second.clone(),
                product_map: map,
            });
        }
        fragment = fragment
            .with_morphisms(ms, nats)
            .map_err(|e| CliError::Input(e.to_string()))?;
    }

    Ok(fragment)
}

pub fn fragment_to_doc(f: &MonoidalFunctorFragment) -> Result<FragmentDoc, CliError> {
    let objects = f
        .objects()
        .iter()
        .map(|o| ObjectDoc {
            name: o.name.clone(),
            dim: o.space.dim(),
            labels: Some(o.space.labels().to_vec()),
        })
        .collect();
    let products = f
        .products()
        .iter()
        .map(|((a, b), c)| [a.clone(), b.clone(), c.clone()])
        .collect();
    let mut pairings = Vec::new();
    for ((a, b), map) in f.pairings() {
        pairings.push(PairingDoc {
            left: a.clone(),
            right: b.clone(),
            entries: map_to_entries(map, &format!("pairing ({a},{b})"))?,
        });
    }
    let op_pairings = if f.has_op_data() {
        let mut ops = Vec::new();
        for ((a, b), map) in f.op_pairings() {
            ops.push(PairingDoc {
                left: a.clone(),
                right: b.clone(),
                entries: map_to_entries(map, &format!("op pairing ({a},{b})"))?,
            });
        }
        Some(ops)
    } else {
        None
    };
    let morphisms = if f.morphisms().is_empty() {
        None
    } else {
        let mut ms = Vec::new();
        for m in f.morphisms() {
            ms.push(MorphismDoc {
                name: m.name.clone(),
                source: m.source.clone(),
                target: m.target.clone(),
                entries: map_to_entries(&m.map, &format!("morphism `{}`", m.name))?,
            });
        }
        Some(ms)
    };
    let naturality = if f.naturality().is_empty() {
        None
    } else {
        let mut ns = Vec::new();
        for n in f.naturality() {
            ns.push(NaturalityDoc {
                first: n.first.clone(),
                second: n.second.clone(),
                entries: map_to_entries(
                    &n.product_map,
                    &format!("naturality ({},{})", n.first, n.second),
                )?,
            });
        }
        Some(ns)
    };
    Ok(FragmentDoc {
        unit: f.unit_name().to_string(),
        objects,
        products,
        pairings,
        unit_map: map_to_entries(f.unit_map(), "unit_map")?,
        op_pairings,
        op_unit_map: f
            .op_unit_map()
            .map(|m| map_to_entries(m, "op_unit_map"))
            .transpose()?,
        morphisms,
        naturality,
    })
}
