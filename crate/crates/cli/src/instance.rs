//! On-disk instance files.
//!
//! An instance file is a JSON document describing a set family and,
//! optionally, a direct sum decomposition:
//!
//! ```json
//! {
//!   "field": "Q",
//!   "ambient_dim": 2,
//!   "sets": [
//!     { "finite": [["1", "1"], ["1/2", "1/2"]] },
//!     { "punctured_subspace": [["1", "0"]] }
//!   ],
//!   "decomposition": { "summands": [[["1", "0"], ["0", "1"]]], "n": 2 }
//! }
//! ```
//!
//! Scalars are strings, either an integer or `"a/b"`; vectors are coordinate
//! lists of length `ambient_dim`. Parsing canonicalizes scalars (lowest
//! terms, reduced residues) and drops duplicate finite members, so
//! parse -> serialize -> parse is the identity on the parsed value.

use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use lisf_matroid::constructions::DirectSumDecomposition;
use lisf_matroid::exactalg::{Field, Scalar, Subspace, Vector};
use lisf_matroid::setfamily::{SetFamily, VectorSet, VectorSetKind};

use crate::CliError;

/// Serialized form of one set: explicit members or a subspace basis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum SetEntry {
    Finite(Vec<Vec<String>>),
    PuncturedSubspace(Vec<Vec<String>>),
}

/// Serialized direct sum decomposition: one basis per summand plus the
/// declared common summand dimension `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecompositionEntry {
    pub summands: Vec<Vec<Vec<String>>>,
    pub n: usize,
}

/// The whole instance document.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub field: String,
    pub ambient_dim: usize,
    pub sets: Vec<SetEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub decomposition: Option<DecompositionEntry>,
}

impl InstanceFile {
    /// Reads and parses `path`. Syntax errors keep serde's line and column
    /// information.
    pub fn load(path: &Path) -> Result<InstanceFile, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
    }

    /// The canonical JSON rendering, pretty-printed with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("instance serialization");
        s.push('\n');
        s
    }

    /// Builds the family and the optional decomposition, validating scalars,
    /// dimensions, and the declared summand dimension. Error messages name
    /// the offending set and vector by position.
    pub fn to_family(&self) -> Result<(SetFamily, Option<DirectSumDecomposition>), CliError> {
        let field = Field::from_str(&self.field)
            .map_err(|e| CliError::Input(format!("field: {e}")))?;

        let mut sets = Vec::with_capacity(self.sets.len());
        for (i, entry) in self.sets.iter().enumerate() {
            let label = i + 1;
            let set = match entry {
                SetEntry::Finite(rows) => {
                    let members = parse_vectors(field, self.ambient_dim, rows, &format!("set {label}"))?;
                    VectorSet::finite(members)
                        .map_err(|e| CliError::Input(format!("set {label}: {e}")))?
                }
                SetEntry::PuncturedSubspace(rows) => {
                    let basis = parse_vectors(field, self.ambient_dim, rows, &format!("set {label}"))?;
                    let span = Subspace::span(field, self.ambient_dim, &basis)
                        .map_err(|e| CliError::Input(format!("set {label}: {e}")))?;
                    VectorSet::punctured(span)
                        .map_err(|e| CliError::Input(format!("set {label}: {e}")))?
                }
            };
            sets.push(set);
        }
        let family = SetFamily::new(field, self.ambient_dim, sets)
            .map_err(|e| CliError::Input(format!("sets: {e}")))?;

        let decomposition = match &self.decomposition {
            None => None,
            Some(entry) => {
                let mut summands = Vec::with_capacity(entry.summands.len());
                for (j, rows) in entry.summands.iter().enumerate() {
                    let context = format!("decomposition summand {}", j + 1);
                    let basis = parse_vectors(field, self.ambient_dim, rows, &context)?;
                    let span = Subspace::span(field, self.ambient_dim, &basis)
                        .map_err(|e| CliError::Input(format!("{context}: {e}")))?;
                    summands.push(span);
                }
                // Unequal dimensions and non-direct sums come back as
                // hypothesis failures, which the binary maps to exit code 4.
                let dec = DirectSumDecomposition::new(summands)?;
                if dec.summand_dim() != entry.n {
                    return Err(CliError::Input(format!(
                        "decomposition: declared n = {} but the summands have dimension {}",
                        entry.n,
                        dec.summand_dim()
                    )));
                }
                Some(dec)
            }
        };

        Ok((family, decomposition))
    }

    /// The serialized form of an in-memory family, using canonical scalar
    /// strings and the canonical basis of each subspace.
    pub fn from_family(
        family: &SetFamily,
        decomposition: Option<&DirectSumDecomposition>,
    ) -> InstanceFile {
        let sets = family
            .sets()
            .iter()
            .map(|s| match s.kind() {
                VectorSetKind::Finite(ms) => SetEntry::Finite(ms.iter().map(vector_strings).collect()),
                VectorSetKind::Punctured(w) => {
                    SetEntry::PuncturedSubspace(w.basis_rows().iter().map(vector_strings).collect())
                }
            })
            .collect();
        let decomposition = decomposition.map(|dec| DecompositionEntry {
            summands: dec
                .summands()
                .iter()
                .map(|u| u.basis_rows().iter().map(vector_strings).collect())
                .collect(),
            n: dec.summand_dim(),
        });
        InstanceFile {
            field: family.field().to_string(),
            ambient_dim: family.ambient_dim(),
            sets,
            decomposition,
        }
    }
}

fn parse_vectors(
    field: Field,
    ambient_dim: usize,
    rows: &[Vec<String>],
    context: &str,
) -> Result<Vec<Vector>, CliError> {
    rows.iter()
        .enumerate()
        .map(|(j, row)| {
            if row.len() != ambient_dim {
                return Err(CliError::Input(format!(
                    "{context}, vector {}: expected {ambient_dim} coordinates, got {}",
                    j + 1,
                    row.len()
                )));
            }
            let coords = row
                .iter()
                .map(|text| {
                    Scalar::parse(field, text).map_err(|e| {
                        CliError::Input(format!("{context}, vector {}: {e}", j + 1))
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            Vector::new(field, coords).map_err(|e| {
                CliError::Input(format!("{context}, vector {}: {e}", j + 1))
            })
        })
        .collect()
}

fn vector_strings(v: &Vector) -> Vec<String> {
    v.coords().iter().map(ToString::to_string).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn doc(text: &str) -> InstanceFile {
        serde_json::from_str(text).expect("test document parses")
    }

    #[test]
    fn parses_a_mixed_instance() {
        let d = doc(
            r#"{
                "field": "Q",
                "ambient_dim": 2,
                "sets": [
                    { "finite": [["1", "1"], ["2/4", "1/2"]] },
                    { "punctured_subspace": [["1", "0"], ["0", "1"]] }
                ]
            }"#,
        );
        let (family, dec) = d.to_family().unwrap();
        assert_eq!(family.len(), 2);
        assert_eq!(family.ambient_dim(), 2);
        assert!(family.sets()[0].is_finite());
        assert!(!family.sets()[1].is_finite());
        assert!(dec.is_none());
    }

    #[test]
    fn serialize_parse_round_trip_is_identity() {
        let d = doc(
            r#"{
                "field": "GF(5)",
                "ambient_dim": 2,
                "sets": [ { "finite": [["7", "-1"]] }, { "punctured_subspace": [["1", "2"]] } ]
            }"#,
        );
        let (family, _) = d.to_family().unwrap();
        let out = InstanceFile::from_family(&family, None);
        // Residues canonicalize: 7 -> 2 and -1 -> 4 mod 5.
        assert_eq!(out.sets[0], SetEntry::Finite(vec![vec!["2".into(), "4".into()]]));
        let (reparsed, _) = out.to_family().unwrap();
        assert_eq!(reparsed, family);
        assert_eq!(InstanceFile::from_family(&reparsed, None), out);
    }

    #[test]
    fn decomposition_round_trips_with_declared_n() {
        let d = doc(
            r#"{
                "field": "Q",
                "ambient_dim": 4,
                "sets": [ { "punctured_subspace": [["1", "0", "0", "0"], ["0", "1", "0", "0"]] } ],
                "decomposition": {
                    "summands": [
                        [["1", "0", "0", "0"], ["0", "1", "0", "0"]],
                        [["0", "0", "1", "0"], ["0", "0", "0", "1"]]
                    ],
                    "n": 2
                }
            }"#,
        );
        let (family, dec) = d.to_family().unwrap();
        let dec = dec.expect("decomposition present");
        assert_eq!(dec.summand_dim(), 2);
        let out = InstanceFile::from_family(&family, Some(&dec));
        assert_eq!(out.to_family().unwrap().1.unwrap(), dec);
    }

    #[test]
    fn bad_scalar_names_set_and_vector() {
        let d = doc(
            r#"{ "field": "Q", "ambient_dim": 1, "sets": [ { "finite": [["1/0"]] } ] }"#,
        );
        let err = d.to_family().unwrap_err();
        assert_eq!(err.exit_code(), 2);
        let msg = err.to_string();
        assert!(msg.contains("set 1, vector 1"), "{msg}");
        assert!(msg.contains("zero denominator"), "{msg}");
    }

    #[test]
    fn wrong_coordinate_count_is_an_input_error() {
        let d = doc(
            r#"{ "field": "Q", "ambient_dim": 3, "sets": [ { "finite": [["1", "2"]] } ] }"#,
        );
        let msg = d.to_family().unwrap_err().to_string();
        assert!(msg.contains("expected 3 coordinates, got 2"), "{msg}");
    }

    #[test]
    fn declared_n_must_match_summand_dimension() {
        let d = doc(
            r#"{
                "field": "Q",
                "ambient_dim": 2,
                "sets": [ { "finite": [["1", "0"]] } ],
                "decomposition": { "summands": [[["1", "0"], ["0", "1"]]], "n": 3 }
            }"#,
        );
        let err = d.to_family().unwrap_err();
        assert_eq!(err.exit_code(), 2);
        assert!(err.to_string().contains("declared n = 3"), "{err}");
    }

    #[test]
    fn non_direct_decomposition_maps_to_hypothesis_exit_code() {
        let d = doc(
            r#"{
                "field": "Q",
                "ambient_dim": 2,
                "sets": [ { "finite": [["1", "0"]] } ],
                "decomposition": { "summands": [[["1", "0"]], [["1", "0"]]], "n": 1 }
            }"#,
        );
        let err = d.to_family().unwrap_err();
        assert_eq!(err.exit_code(), 4);
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let r: Result<InstanceFile, _> = serde_json::from_str(
            r#"{ "field": "Q", "ambient_dim": 1, "sets": [], "extra": 0 }"#,
        );
        assert!(r.is_err());
    }
}
