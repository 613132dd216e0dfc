//! Command implementations: each takes resolved input bytes and returns a
//! certificate (or a generated document) plus the overall verdict.

use std::collections::BTreeMap;

use sha2::{Digest, Sha256};

use qgroupoid::algebra::check_algebra;
use qgroupoid::bialgebroid::{check_bialgebroid, takeuchi_product};
use qgroupoid::corpus::{
    dual_group_wba, forgetful_fragment, group_algebra_wba, groupoid_wba, invariants_fragment_z2,
    matrix_frobenius, GroupTable, GroupoidPattern,
};
use qgroupoid::frobenius::check_sep_frobenius;
use qgroupoid::scalar::render;
use qgroupoid::wba::{
    base_sep_frobenius, bialgebroid_to_wba, check_wba, target_projection, wba_to_bialgebroid,
};
use qgroupoid::Error;

use crate::cert::{Certificate, CheckDoc, InputDigest};
use crate::convert;
use crate::doc::{parse_input, FieldDesc, InputDocument, Payload};
use crate::CliError;

/// Raw bytes of one input together with where they came from.
pub struct NamedInput {
    pub source: String,
    pub bytes: Vec<u8>,
}

impl NamedInput {
    pub fn digest(&self) -> InputDigest {
        let hash = Sha256::digest(&self.bytes);
        InputDigest {
            source: self.source.clone(),
            sha256: hash.iter().map(|b| format!("{b:02x}")).collect(),
        }
    }
}

/// What a command produced: a certificate or a generated document.
pub enum Rendered {
    Certificate(Certificate),
    Document(InputDocument),
}

pub struct CommandOutput {
    pub rendered: Rendered,
    pub passed: bool,
}

impl CommandOutput {
    fn from_certificate(cert: Certificate) -> Self {
        let cert = cert.finalize();
        let passed = cert.all_passed();
        CommandOutput {
            rendered: Rendered::Certificate(cert),
            passed,
        }
    }
}

/// Reads a document of the wanted kind, either directly or embedded in a
/// certificate under `derived.<kind>`.
pub fn extract_document(input: &NamedInput, want: &str) -> Result<InputDocument, CliError> {
    match parse_input(&input.bytes) {
        Ok(doc) => {
            if doc.payload.kind_name() == want {
                Ok(doc)
            } else {
                Err(CliError::Input(format!(
                    "{}: expected a {want} document, found {}",
                    input.source,
                    doc.payload.kind_name()
                )))
            }
        }
        Err(direct_err) => {
            let value: serde_json::Value = serde_json::from_slice(&input.bytes)
                .map_err(|_| direct_err)?;
            let embedded = value
                .get("derived")
                .and_then(|d| d.get(want))
                .ok_or_else(|| {
                    CliError::Input(format!(
                        "{}: not a {want} document and no derived.{want} payload",
                        input.source
                    ))
                })?;
            serde_json::from_value(embedded.clone()).map_err(|e| {
                CliError::Input(format!("{}: bad derived.{want} payload: {e}", input.source))
            })
        }
    }
}

pub fn check_algebra_cmd(input: &NamedInput) -> Result<CommandOutput, CliError> {
    let doc = extract_document(input, "algebra")?;
    let field = doc.field.to_field()?;
    let Payload::Algebra(body) = &doc.payload else {
        unreachable!()
    };
    let algebra = convert::algebra_from_doc(field, body)?;
    let mut cert = Certificate::new("check-algebra", doc.field.clone(), vec![input.digest()]);
    cert.absorb_report("", &check_algebra(&algebra));
    cert.set_data("dim", algebra.dim().into());
    Ok(CommandOutput::from_certificate(cert))
}

pub fn check_wba_cmd(input: &NamedInput) -> Result<CommandOutput, CliError> {
    let doc = extract_document(input, "wba")?;
    let field = doc.field.to_field()?;
    let Payload::Wba(body) = &doc.payload else {
        unreachable!()
    };
    let w = convert::wba_from_doc(field, body)?;
    let mut cert = Certificate::new("check-wba", doc.field.clone(), vec![input.digest()]);
    cert.absorb_report("", &check_wba(&w));
    cert.set_data("dim", w.dim().into());
    let eps_one = w.counit().apply(w.algebra().unit());
    cert.set_data("counit_of_unit", render(&eps_one[0]).into());
    match target_projection(&w) {
        Ok(tp) => {
            cert.set_data("target_subalgebra_dim", tp.subalgebra.dim().into());
            cert.embed(
                "target_subalgebra",
                InputDocument {
                    field: doc.field.clone(),
                    payload: Payload::Algebra(convert::algebra_to_doc(&tp.subalgebra)?),
                },
            );
        }
        Err(e) => cert.push_failure("target-subalgebra-closure", e.to_string()),
    }
    Ok(CommandOutput::from_certificate(cert))
}

pub fn check_bialgebroid_cmd(input: &NamedInput) -> Result<CommandOutput, CliError> {
    let doc = extract_document(input, "bialgebroid")?;
    let field = doc.field.to_field()?;
    let Payload::Bialgebroid(body) = &doc.payload else {
        unreachable!()
    };
    let b = convert::bialgebroid_from_doc(field, body)?;
    let mut cert = Certificate::new("check-bialgebroid", doc.field.clone(), vec![input.digest()]);
    cert.absorb_report("", &check_bialgebroid(&b));
    cert.set_data("total_dim", b.total.dim().into());
    cert.set_data("base_dim", b.base.dim().into());
    cert.set_data("tensor_square_dim", b.tensor_square.dim().into());
    match takeuchi_product(&b) {
        Ok(tk) => cert.set_data("takeuchi_dim", tk.subspace.rank().into()),
        Err(e) => cert.push_failure("takeuchi-closure", e.to_string()),
    }
    Ok(CommandOutput::from_certificate(cert))
}

pub fn check_frobenius_cmd(input: &NamedInput) -> Result<CommandOutput, CliError> {
    let doc = extract_document(input, "sep_frobenius")?;
    let field = doc.field.to_field()?;
    let Payload::SepFrobenius(body) = &doc.payload else {
        unreachable!()
    };
    let sf = convert::sep_frobenius_from_doc(field, body)?;
    let mut cert = Certificate::new("check-frobenius", doc.field.clone(), vec![input.digest()]);
    cert.absorb_report("base-algebra", &check_algebra(&sf.base));
    cert.absorb_report("", &check_sep_frobenius(&sf));
    cert.set_data("base_dim", sf.base.dim().into());
    Ok(CommandOutput::from_certificate(cert))
}

pub fn derive_bialgebroid_cmd(input: &NamedInput) -> Result<CommandOutput, CliError> {
    let doc = extract_document(input, "wba")?;
    let field = doc.field.to_field()?;
    let Payload::Wba(body) = &doc.payload else {
        unreachable!()
    };
    let w = convert::wba_from_doc(field, body)?;
    let mut cert = Certificate::new(
        "derive-bialgebroid",
        doc.field.clone(),
        vec![input.digest()],
    );
    let wba_report = check_wba(&w);
    let wba_ok = wba_report.passed();
    cert.absorb_report("wba", &wba_report);
    if !wba_ok {
        return Ok(CommandOutput::from_certificate(cert));
    }

    match wba_to_bialgebroid(&w) {
        Ok(b) => {
            cert.absorb_report("bialgebroid", &check_bialgebroid(&b));
            cert.set_data("base_dim", b.base.dim().into());
            cert.set_data("tensor_square_dim", b.tensor_square.dim().into());
            match takeuchi_product(&b) {
                Ok(tk) => cert.set_data("takeuchi_dim", tk.subspace.rank().into()),
                Err(e) => cert.push_failure("takeuchi-closure", e.to_string()),
            }
            cert.embed(
                "bialgebroid",
                InputDocument {
                    field: doc.field.clone(),
                    payload: Payload::Bialgebroid(convert::bialgebroid_to_doc(&b)?),
                },
            );
        }
        Err(Error::CheckFailed { report, .. }) => cert.absorb_report("bialgebroid", &report),
        Err(e) => return Err(CliError::Input(e.to_string())),
    }

    match base_sep_frobenius(&w) {
        Ok(sf) => {
            cert.absorb_report("base-frobenius", &check_sep_frobenius(&sf));
            cert.embed(
                "sep_frobenius",
                InputDocument {
                    field: doc.field.clone(),
                    payload: Payload::SepFrobenius(convert::sep_frobenius_to_doc(&sf)?),
                },
            );
        }
        Err(Error::CheckFailed { report, .. }) => cert.absorb_report("base-frobenius", &report),
        Err(e) => return Err(CliError::Input(e.to_string())),
    }
    Ok(CommandOutput::from_certificate(cert))
}

pub fn derive_wba_cmd(
    bialgebroid_input: &NamedInput,
    frobenius_input: Option<&NamedInput>,
) -> Result<CommandOutput, CliError> {
    let b_doc = extract_document(bialgebroid_input, "bialgebroid")?;
    let f_doc = match frobenius_input {
        Some(input) => extract_document(input, "sep_frobenius")?,
        None => extract_document(bialgebroid_input, "sep_frobenius")?,
    };
    if b_doc.field != f_doc.field {
        return Err(CliError::Input(
            "bialgebroid and Frobenius documents are over different fields".into(),
        ));
    }
    let field = b_doc.field.to_field()?;
    let Payload::Bialgebroid(b_body) = &b_doc.payload else {
        unreachable!()
    };
    let Payload::SepFrobenius(f_body) = &f_doc.payload else {
        unreachable!()
    };
    let b = convert::bialgebroid_from_doc(field, b_body)?;
    let sf = convert::sep_frobenius_from_doc(field, f_body)?;

    let mut digests = vec![bialgebroid_input.digest()];
    if let Some(f) = frobenius_input {
        digests.push(f.digest());
    }
    let mut cert = Certificate::new("derive-wba", b_doc.field.clone(), digests);

    let b_report = check_bialgebroid(&b);
    let f_report = check_sep_frobenius(&sf);
    let inputs_ok = b_report.passed() && f_report.passed();
    cert.absorb_report("bialgebroid", &b_report);
    cert.absorb_report("frobenius", &f_report);
    if !inputs_ok {
        return Ok(CommandOutput::from_certificate(cert));
    }

    match bialgebroid_to_wba(&b, &sf) {
        Ok(w) => {
            cert.absorb_report("wba", &check_wba(&w));
            cert.set_data("dim", w.dim().into());
            cert.embed(
                "wba",
                InputDocument {
                    field: b_doc.field.clone(),
                    payload: Payload::Wba(convert::wba_to_doc(&w)?),
                },
            );
        }
        Err(Error::NotBalanced(msg)) => {
            cert.push_failure("comultiplication-lift-independence", msg)
        }
        Err(Error::CheckFailed { report, .. }) => cert.absorb_report("wba", &report),
        Err(e) => return Err(CliError::Input(e.to_string())),
    }
    Ok(CommandOutput::from_certificate(cert))
}

pub fn factorize_cmd(input: &NamedInput) -> Result<CommandOutput, CliError> {
    let doc = extract_document(input, "fragment")?;
    let field = doc.field.to_field()?;
    let Payload::Fragment(body) = &doc.payload else {
        unreachable!()
    };
    let frag = convert::fragment_from_doc(field, body)?;
    let mut cert = Certificate::new("factorize", doc.field.clone(), vec![input.digest()]);
    cert.absorb_report("fragment", &frag.check());

    match frag.canonical_base() {
        Ok(base) => {
            cert.absorb_report("canonical-base", &check_algebra(&base));
            cert.set_data("base_dim", base.dim().into());
            cert.embed(
                "canonical_base",
                InputDocument {
                    field: doc.field.clone(),
                    payload: Payload::Algebra(convert::algebra_to_doc(&base)?),
                },
            );
        }
        Err(Error::CheckFailed { report, .. }) => {
            cert.absorb_report("canonical-base", &report);
            return Ok(CommandOutput::from_certificate(cert));
        }
        Err(e) => return Err(CliError::Input(e.to_string())),
    }

    let unit = frag.unit_name().to_string();
    for obj in frag.objects() {
        if obj.name == unit {
            continue;
        }
        match frag.canonical_bimodule(&obj.name) {
            Ok(bim) => cert.absorb_report(
                &format!("canonical-bimodule[{}]", obj.name),
                &qgroupoid::module::check_bimodule(&bim),
            ),
            Err(Error::CheckFailed { report, .. }) => {
                cert.absorb_report(&format!("canonical-bimodule[{}]", obj.name), &report)
            }
            Err(Error::MissingFragmentData(_)) => continue,
            Err(e) => return Err(CliError::Input(e.to_string())),
        }
    }

    let mut verdicts = BTreeMap::new();
    for (a, b) in frag.pairings().keys() {
        if a == &unit || b == &unit {
            continue;
        }
        match frag.induced_strength(a, b) {
            Ok(strength) => {
                let recomposed = strength.map.compose(&strength.tensor.projection);
                cert.push_check(CheckDoc {
                    name: format!("factorization-identity[{a},{b}]"),
                    passed: recomposed.same_matrix(frag.pairing(a, b).expect("listed")),
                    detail: None,
                    witnesses: Vec::new(),
                });
                verdicts.insert(
                    format!("{a},{b}"),
                    serde_json::Value::Bool(strength.essentially_strong),
                );
            }
            Err(Error::InvalidInput(msg)) => {
                cert.push_failure(format!("coequalizes[{a},{b}]"), msg)
            }
            Err(Error::MissingFragmentData(_)) => continue,
            Err(Error::CheckFailed { report, .. }) => {
                cert.absorb_report(&format!("strength[{a},{b}]"), &report)
            }
            Err(e) => return Err(CliError::Input(e.to_string())),
        }
    }
    cert.set_data(
        "essentially_strong",
        serde_json::Value::Object(verdicts.into_iter().collect()),
    );
    Ok(CommandOutput::from_certificate(cert))
}

pub fn strength_cmd(input: &NamedInput, pair: &str) -> Result<CommandOutput, CliError> {
    let (a, b) = pair
        .split_once(',')
        .ok_or_else(|| CliError::Input("--pair expects two object names, as `a,b`".into()))?;
    let (a, b) = (a.trim(), b.trim());
    let doc = extract_document(input, "fragment")?;
    let field = doc.field.to_field()?;
    let Payload::Fragment(body) = &doc.payload else {
        unreachable!()
    };
    let frag = convert::fragment_from_doc(field, body)?;
    let mut cert = Certificate::new("strength", doc.field.clone(), vec![input.digest()]);
    cert.absorb_report("fragment", &frag.check());

    match frag.induced_strength(a, b) {
        Ok(strength) => {
            cert.push_check(CheckDoc {
                name: format!("essentially-strong[{a},{b}]"),
                passed: strength.essentially_strong,
                detail: Some(if strength.essentially_strong {
                    "essentially strong".into()
                } else {
                    "not essentially strong".into()
                }),
                witnesses: Vec::new(),
            });
            cert.set_data("surjective", strength.surjective.into());
            cert.set_data(
                "kernel_matches_relations",
                strength.kernel_matches_relations.into(),
            );
            cert.set_data("quotient_dim", strength.tensor.dim().into());
            cert.set_data(
                "target_dim",
                strength.map.codomain().dim().into(),
            );
        }
        Err(Error::InvalidInput(msg)) => cert.push_failure(format!("coequalizes[{a},{b}]"), msg),
        Err(Error::CheckFailed { report, .. }) => {
            cert.absorb_report(&format!("strength[{a},{b}]"), &report)
        }
        Err(e) => return Err(CliError::Input(e.to_string())),
    }
    Ok(CommandOutput::from_certificate(cert))
}

pub fn frobenius_functor_cmd(input: &NamedInput) -> Result<CommandOutput, CliError> {
    let doc = extract_document(input, "fragment")?;
    let field = doc.field.to_field()?;
    let Payload::Fragment(body) = &doc.payload else {
        unreachable!()
    };
    let frag = convert::fragment_from_doc(field, body)?;
    if !frag.has_op_data() {
        return Err(CliError::Input(
            "frobenius-functor needs a fragment with opmonoidal data".into(),
        ));
    }
    let mut cert = Certificate::new("frobenius-functor", doc.field.clone(), vec![input.digest()]);

    let mut merged: BTreeMap<String, CheckDoc> = BTreeMap::new();
    let mut derived = None;
    let mut triples = 0usize;
    let names: Vec<String> = frag.objects().iter().map(|o| o.name.clone()).collect();
    for x in &names {
        for y in &names {
            for z in &names {
                match frag.frobenius_check(x, y, z) {
                    Ok(outcome) => {
                        triples += 1;
                        if derived.is_none() {
                            derived = outcome.derived_base;
                        }
                        for check in outcome.report.checks {
                            merged
                                .entry(check.name.clone())
                                .or_insert_with(|| CheckDoc {
                                    name: check.name.clone(),
                                    passed: check.passed,
                                    detail: None,
                                    witnesses: check
                                        .witnesses
                                        .iter()
                                        .map(|w| crate::cert::WitnessDoc {
                                            indices: w.indices.clone(),
                                            left: w.left.iter().map(render).collect(),
                                            right: w.right.iter().map(render).collect(),
                                        })
                                        .collect(),
                                });
                        }
                    }
                    Err(Error::MissingFragmentData(_)) | Err(Error::InvalidInput(_)) => continue,
                    Err(e) => return Err(CliError::Input(e.to_string())),
                }
            }
        }
    }
    if triples == 0 {
        return Err(CliError::Input(
            "fragment lists no triple with enough data for a Frobenius check".into(),
        ));
    }
    for check in merged.into_values() {
        cert.push_check(check);
    }
    cert.set_data("triples_checked", triples.into());
    if let Some(sf) = derived {
        cert.embed(
            "sep_frobenius",
            InputDocument {
                field: doc.field.clone(),
                payload: Payload::SepFrobenius(convert::sep_frobenius_to_doc(&sf)?),
            },
        );
    }
    Ok(CommandOutput::from_certificate(cert))
}

/// Options for the corpus generators.
pub struct GenOptions {
    pub kind: String,
    pub field: FieldDesc,
    pub pattern: String,
    pub objects: usize,
    pub group: String,
    pub size: usize,
    pub depth: usize,
}

fn parse_group(name: &str) -> Result<GroupTable, CliError> {
    if name == "s3" {
        return Ok(GroupTable::symmetric3());
    }
    if let Some(n) = name.strip_prefix('z') {
        let n: usize = n
            .parse()
            .map_err(|_| CliError::Input(format!("unknown group `{name}`")))?;
        if n == 0 {
            return Err(CliError::Input("cyclic group of order 0".into()));
        }
        return Ok(GroupTable::cyclic(n));
    }
    Err(CliError::Input(format!(
        "unknown group `{name}` (expected z<n> or s3)"
    )))
}

fn pattern_from(options: &GenOptions) -> Result<GroupoidPattern, CliError> {
    match options.pattern.as_str() {
        "discrete" => Ok(GroupoidPattern::Discrete),
        "pair" => Ok(GroupoidPattern::Pair),
        "group" => Ok(GroupoidPattern::Group(parse_group(&options.group)?)),
        other => Err(CliError::Input(format!(
            "unknown pattern `{other}` (expected discrete, pair or group)"
        ))),
    }
}

pub fn gen_cmd(options: &GenOptions) -> Result<CommandOutput, CliError> {
    let field = options.field.to_field()?;
    let payload = match options.kind.as_str() {
        "groupoid-wba" => {
            let pattern = pattern_from(options)?;
            let objects = match pattern {
                GroupoidPattern::Group(_) => 1,
                _ => options.objects,
            };
            let w = groupoid_wba(objects, &pattern, field)
                .map_err(|e| CliError::Input(e.to_string()))?;
            Payload::Wba(convert::wba_to_doc(&w)?)
        }
        "dual-group-wba" => {
            let w = dual_group_wba(&parse_group(&options.group)?, field)
                .map_err(|e| CliError::Input(e.to_string()))?;
            Payload::Wba(convert::wba_to_doc(&w)?)
        }
        "matrix-frobenius" => {
            let sf = matrix_frobenius(options.size, field)
                .map_err(|e| CliError::Input(e.to_string()))?;
            Payload::SepFrobenius(convert::sep_frobenius_to_doc(&sf)?)
        }
        "forgetful-fragment" => {
            let pattern = pattern_from(options)?;
            let objects = match pattern {
                GroupoidPattern::Group(_) => 1,
                _ => options.objects,
            };
            let w = groupoid_wba(objects, &pattern, field)
                .map_err(|e| CliError::Input(e.to_string()))?;
            let built =
                forgetful_fragment(&w, options.depth).map_err(|e| CliError::Input(e.to_string()))?;
            Payload::Fragment(convert::fragment_to_doc(&built.fragment)?)
        }
        "invariants-fragment" => {
            if options.group != "z2" {
                return Err(CliError::Input(
                    "the invariants fragment is built for the group z2".into(),
                ));
            }
            let frag =
                invariants_fragment_z2(field).map_err(|e| CliError::Input(e.to_string()))?;
            Payload::Fragment(convert::fragment_to_doc(&frag)?)
        }
        "group-wba" => {
            let w = group_algebra_wba(&parse_group(&options.group)?, field)
                .map_err(|e| CliError::Input(e.to_string()))?;
            Payload::Wba(convert::wba_to_doc(&w)?)
        }
        other => {
            return Err(CliError::Input(format!(
                "unknown generator `{other}` (expected groupoid-wba, group-wba, dual-group-wba, \
                 matrix-frobenius, forgetful-fragment or invariants-fragment)"
            )))
        }
    };
    Ok(CommandOutput {
        rendered: Rendered::Document(InputDocument {
            field: options.field.clone(),
            payload,
        }),
        passed: true,
    })
}
