//! Interchange documents.
//!
//! Input: `{ "genus": 5, "generators": [ {"kind": "dehn_twist", "class": [1,2]},
//! {"kind": "y_homeomorphism"} ] }`. Classes are accepted as sorted 1-based
//! index lists or as bit strings ("1100", leftmost = x1); index lists are
//! canonical on output. Output JSON is rendered with sorted keys and
//! contains only exact small integers.

use crate::certifier::{Certificate, CertificatePayload, GeneratorSet, Verdict};
use crate::error::{Error, Result};
use crate::gf2::Z2Vector;
use crate::quadform::Z4Form;
use serde::{Deserialize, Serialize};

/// A class either as a 1-based index list or a bit string.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum ClassRepr {
    Indices(Vec<usize>),
    BitString(String),
}

impl ClassRepr {
    pub fn resolve(&self, genus: usize) -> Result<Z2Vector> {
        match self {
            ClassRepr::Indices(ix) => Z2Vector::from_indices(genus, ix),
            ClassRepr::BitString(s) => {
                let v = Z2Vector::from_bitstring(s)?;
                if v.dim() != genus {
                    return Err(Error::DimensionMismatch {
                        left: genus,
                        right: v.dim(),
                    });
                }
                Ok(v)
            }
        }
    }

    pub fn canonical(v: &Z2Vector) -> ClassRepr {
        ClassRepr::Indices(v.support())
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum GeneratorEntry {
    DehnTwist { class: ClassRepr },
    YHomeomorphism,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    pub genus: usize,
    pub generators: Vec<GeneratorEntry>,
}

impl InputDocument {
    pub fn to_generator_set(&self) -> Result<GeneratorSet> {
        let mut twists = Vec::new();
        let mut y_count = 0;
        for entry in &self.generators {
            match entry {
                GeneratorEntry::DehnTwist { class } => twists.push(class.resolve(self.genus)?),
                GeneratorEntry::YHomeomorphism => y_count += 1,
            }
        }
        GeneratorSet::new(self.genus, twists, y_count)
    }

    pub fn from_generator_set(gs: &GeneratorSet) -> InputDocument {
        let mut generators: Vec<GeneratorEntry> = gs
            .twist_classes()
            .iter()
            .map(|c| GeneratorEntry::DehnTwist {
                class: ClassRepr::canonical(c),
            })
            .collect();
        generators.extend((0..gs.y_count()).map(|_| GeneratorEntry::YHomeomorphism));
        InputDocument {
            genus: gs.genus(),
            generators,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct FormDocument {
    pub genus: usize,
    pub basis_values: Vec<u8>,
}

impl FormDocument {
    pub fn from_form(q: &Z4Form) -> FormDocument {
        FormDocument {
            genus: q.genus(),
            basis_values: q.basis_values().to_vec(),
        }
    }

    pub fn to_form(&self) -> Result<Z4Form> {
        Z4Form::new(self.genus, self.basis_values.clone())
    }
}

/// Verdict-specific evidence in interchange form.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum CertificateDocument {
    NoY {
        citation: String,
    },
    Span {
        witness: Vec<usize>,
        echelon: Vec<Vec<usize>>,
        rank: usize,
    },
    QuadraticForm {
        form: FormDocument,
        axis: Vec<usize>,
        witness: Vec<usize>,
        discrepancy: u8,
        extended_criterion: bool,
    },
    Pass {
        rank: usize,
        note: String,
    },
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct OutputDocument {
    pub verdict: String,
    pub n: usize,
    pub k: usize,
    pub genus: usize,
    pub certificate: CertificateDocument,
    pub citations: Vec<String>,
}

impl OutputDocument {
    pub fn from_certificate(cert: &Certificate) -> OutputDocument {
        let certificate = match &cert.payload {
            CertificatePayload::NoY { citation } => CertificateDocument::NoY {
                citation: citation.clone(),
            },
            CertificatePayload::Span {
                witness,
                echelon,
                rank,
            } => CertificateDocument::Span {
                witness: witness.support(),
                echelon: echelon.iter().map(|v| v.support()).collect(),
                rank: *rank,
            },
            CertificatePayload::QuadraticForm {
                form,
                axis,
                witness,
                discrepancy,
                extended_criterion,
            } => CertificateDocument::QuadraticForm {
                form: FormDocument::from_form(form),
                axis: axis.support(),
                witness: witness.support(),
                discrepancy: *discrepancy,
                extended_criterion: *extended_criterion,
            },
            CertificatePayload::Pass { rank, note } => CertificateDocument::Pass {
                rank: *rank,
                note: note.clone(),
            },
        };
        OutputDocument {
            verdict: cert.verdict.as_str().to_string(),
            n: cert.n,
            k: cert.k,
            genus: cert.genus,
            certificate,
            citations: cert.citations.clone(),
        }
    }

    pub fn to_certificate(&self) -> Result<Certificate> {
        let genus = self.genus;
        let vec_of = |ix: &[usize]| Z2Vector::from_indices(genus, ix);
        let (verdict, payload) = match &self.certificate {
            CertificateDocument::NoY { citation } => (
                Verdict::FailNoY,
                CertificatePayload::NoY {
                    citation: citation.clone(),
                },
            ),
            CertificateDocument::Span {
                witness,
                echelon,
                rank,
            } => (
                Verdict::FailSpan,
                CertificatePayload::Span {
                    witness: vec_of(witness)?,
                    echelon: echelon
                        .iter()
                        .map(|ix| vec_of(ix))
                        .collect::<Result<Vec<_>>>()?,
                    rank: *rank,
                },
            ),
            CertificateDocument::QuadraticForm {
                form,
                axis,
                witness,
                discrepancy,
                extended_criterion,
            } => (
                Verdict::FailQuadraticForm,
                CertificatePayload::QuadraticForm {
                    form: form.to_form()?,
                    axis: vec_of(axis)?,
                    witness: vec_of(witness)?,
                    discrepancy: *discrepancy,
                    extended_criterion: *extended_criterion,
                },
            ),
            CertificateDocument::Pass { rank, note } => (
                Verdict::Pass,
                CertificatePayload::Pass {
                    rank: *rank,
                    note: note.clone(),
                },
            ),
        };
        let expected = match verdict {
            Verdict::Pass => "pass",
            Verdict::FailNoY => "fail_no_y",
            Verdict::FailSpan => "fail_span",
            Verdict::FailQuadraticForm => "fail_quadratic_form",
        };
        if self.verdict != expected {
            return Err(Error::MalformedCertificate(format!(
                "verdict {:?} does not match certificate payload shape ({expected})",
                self.verdict
            )));
        }
        Ok(Certificate {
            genus,
            verdict,
            n: self.n,
            k: self.k,
            payload,
            citations: self.citations.clone(),
        })
    }
}

/// Canonical JSON: route through `serde_json::Value`, whose object maps are
/// ordered, so keys come out sorted.
pub fn to_canonical_json<T: Serialize>(value: &T) -> Result<String> {
    let v = serde_json::to_value(value)
        .map_err(|e| Error::MalformedInput(format!("serialization failed: {e}")))?;
    serde_json::to_string_pretty(&v)
        .map_err(|e| Error::MalformedInput(format!("serialization failed: {e}")))
}

pub fn parse_input(text: &str) -> Result<InputDocument> {
    serde_json::from_str(text).map_err(|e| {
        Error::MalformedInput(format!(
            "bad input document at line {}, column {}: {e}",
            e.line(),
            e.column()
        ))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certifier::{bundled_sets, certify};

    #[test]
    fn parses_both_class_forms() {
        let doc = parse_input(
            r#"{ "genus": 5, "generators": [
                {"kind": "dehn_twist", "class": [1,2]},
                {"kind": "dehn_twist", "class": "01100"},
                {"kind": "y_homeomorphism"} ] }"#,
        )
        .unwrap();
        let gs = doc.to_generator_set().unwrap();
        assert_eq!(gs.twist_classes().len(), 2);
        assert_eq!(gs.twist_classes()[0].support(), vec![1, 2]);
        assert_eq!(gs.twist_classes()[1].support(), vec![2, 3]);
        assert_eq!(gs.y_count(), 1);
    }

    #[test]
    fn rejects_unknown_fields_and_bad_classes() {
        assert!(parse_input(r#"{ "genus": 5, "generators": [], "extra": 1 }"#).is_err());
        let doc = parse_input(
            r#"{ "genus": 4, "generators": [ {"kind": "dehn_twist", "class": [9]} ] }"#,
        )
        .unwrap();
        assert!(doc.to_generator_set().is_err());
    }

    #[test]
    fn certificates_round_trip_through_json() {
        for (_, gs) in bundled_sets(5).unwrap() {
            let cert = certify(&gs).unwrap();
            let doc = OutputDocument::from_certificate(&cert);
            let json = to_canonical_json(&doc).unwrap();
            let back: OutputDocument = serde_json::from_str(&json).unwrap();
            assert_eq!(back, doc);
            assert_eq!(back.to_certificate().unwrap(), cert);
        }
    }

    #[test]
    fn canonical_json_sorts_keys() {
        let doc = InputDocument {
            genus: 4,
            generators: vec![GeneratorEntry::YHomeomorphism],
        };
        let json = to_canonical_json(&doc).unwrap();
        let genus_pos = json.find("\"genus\"").unwrap();
        let generators_pos = json.find("\"generators\"").unwrap();
        assert!(generators_pos < genus_pos);
    }
}
