//! The structure-constant file format: UTF-8 JSON documents with sparse
//! coefficient lists `[row, col, numerator, denominator]`.
//!
//! Serialization is canonical: entries are sorted by `(row, col)`, zeros are
//! dropped, rationals are reduced with positive denominators, and prime-field
//! values are reduced with denominator 1. Parsing accepts any entry order and
//! accumulates duplicates, so `parse ∘ serialize` is the identity on
//! documents and `serialize ∘ parse` is idempotent.

use serde::{Deserialize, Serialize};

use qgroupoid::scalar::Field;

use crate::CliError;

/// `"Q"` or `{"Fp": p}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FieldDesc {
    Named(String),
    Prime {
        #[serde(rename = "Fp")]
        fp: u64,
    },
}

impl FieldDesc {
    pub fn to_field(&self) -> Result<Field, CliError> {
        match self {
            FieldDesc::Named(name) if name == "Q" => Ok(Field::Rationals),
            FieldDesc::Named(name) => Err(CliError::Input(format!(
                "unknown field descriptor `{name}` (expected \"Q\" or {{\"Fp\": p}})"
            ))),
            FieldDesc::Prime { fp } => {
                Field::prime(*fp).map_err(|e| CliError::Input(e.to_string()))
            }
        }
    }

    pub fn of(field: Field) -> FieldDesc {
        match field {
            Field::Rationals => FieldDesc::Named("Q".into()),
            Field::Prime(p) => FieldDesc::Prime { fp: p },
        }
    }

    /// Parses the CLI flag syntax `Q` or `Fp:<p>`.
    pub fn from_flag(flag: &str) -> Result<FieldDesc, CliError> {
        if flag == "Q" {
            return Ok(FieldDesc::Named("Q".into()));
        }
        if let Some(p) = flag.strip_prefix("Fp:") {
            let p: u64 = p
                .parse()
                .map_err(|_| CliError::Input(format!("bad prime in field flag `{flag}`")))?;
            return Ok(FieldDesc::Prime { fp: p });
        }
        Err(CliError::Input(format!(
            "bad field flag `{flag}` (expected Q or Fp:<p>)"
        )))
    }
}

/// Sparse coefficients: `[row, col, numerator, denominator]`.
pub type Entries = Vec<[i64; 4]>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InputDocument {
    pub field: FieldDesc,
    #[serde(flatten)]
    pub payload: Payload,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Payload {
    Algebra(AlgebraDoc),
    Wba(WbaDoc),
    Bialgebroid(BialgebroidDoc),
    SepFrobenius(SepFrobeniusDoc),
    Module(ModuleDoc),
    Fragment(FragmentDoc),
}

impl Payload {
    pub fn kind_name(&self) -> &'static str {
        match self {
            Payload::Algebra(_) => "algebra",
            Payload::Wba(_) => "wba",
            Payload::Bialgebroid(_) => "bialgebroid",
            Payload::SepFrobenius(_) => "sep_frobenius",
            Payload::Module(_) => "module",
            Payload::Fragment(_) => "fragment",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDoc {
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    pub mul: Entries,
    pub unit: Entries,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WbaDoc {
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    pub mul: Entries,
    pub unit: Entries,
    pub comul: Entries,
    pub counit: Entries,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BialgebroidDoc {
    pub total: AlgebraDoc,
    pub base: AlgebraDoc,
    /// `s: R → A`.
    pub source: Entries,
    /// `t: R → A` (antimultiplicative).
    pub target: Entries,
    /// A lift `A → A ⊗ A` of the coproduct; it is projected on load.
    pub coproduct_lift: Entries,
    /// `ε: A → R`.
    pub counit: Entries,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SepFrobeniusDoc {
    pub base: AlgebraDoc,
    /// `ψ: R → k` as a single-row matrix.
    pub counit: Entries,
    /// The Casimir element of `R ⊗ R` as a column (col = 0).
    pub casimir: Entries,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleDoc {
    pub algebra: AlgebraDoc,
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    /// `X ⊗ A → X`.
    pub action: Entries,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObjectDoc {
    pub name: String,
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairingDoc {
    pub left: String,
    pub right: String,
    pub entries: Entries,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismDoc {
    pub name: String,
    pub source: String,
    pub target: String,
    pub entries: Entries,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NaturalityDoc {
    pub first: String,
    pub second: String,
    pub entries: Entries,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FragmentDoc {
    pub unit: String,
    pub objects: Vec<ObjectDoc>,
    /// `[a, b, a⊛b]` rows of the product table.
    pub products: Vec<[String; 3]>,
    pub pairings: Vec<PairingDoc>,
    /// `G₀: k → Ge` as a column.
    pub unit_map: Entries,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub op_pairings: Option<Vec<PairingDoc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub op_unit_map: Option<Entries>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub morphisms: Option<Vec<MorphismDoc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub naturality: Option<Vec<NaturalityDoc>>,
}

/// Parses a document, reporting malformed JSON or schema violations.
pub fn parse_input(bytes: &[u8]) -> Result<InputDocument, CliError> {
    let text = std::str::from_utf8(bytes)
        .map_err(|_| CliError::Input("input is not valid UTF-8".into()))?;
    serde_json::from_str(text).map_err(|e| CliError::Input(format!("malformed document: {e}")))
}

/// Canonical JSON rendering of a document.
pub fn to_canonical_json(doc: &InputDocument) -> String {
    let mut out = serde_json::to_string_pretty(doc).expect("documents serialize");
    out.push('\n');
    out
}
