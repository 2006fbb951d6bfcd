//! Necessary-condition certifier for proposed generating sets.
//!
//! Given a genus, the homology classes of the Dehn-twist generators, and the
//! number of Y-homeomorphism generators, the pipeline checks, in order:
//! at least one Y-generator; the twist classes span H1+; no Z4-quadratic
//! form takes value 2 on every nonzero twist class. The first failing check
//! wins and produces a self-contained certificate that
//! [`verify_certificate`] re-validates from scratch.
//!
//! The verdicts are necessary conditions only: a Pass does not prove the
//! set generates the mapping class group.

use crate::error::{Error, Result};
use crate::gf2::{self, Z2Vector, MAX_GENUS};
use crate::homology::w1;
use crate::quadform::{
    evaluate, exists_invariant_form, find_violating_transvection, is_preserved_pointwise, Z4Form,
};
use crate::transvection::transvect;
use serde::{Deserialize, Serialize};

/// The k >= 1 rule is an encoded axiom, not a computation: Y-homeomorphisms
/// act trivially on Z2-homology, so the homology shadow cannot distinguish
/// twist-only subgroups. The citation names the source fact.
pub const CITATION_NO_Y: &str =
    "Lickorish: the mapping class group of a non-orientable surface is not generated by Dehn twists alone";
pub const CITATION_SPAN: &str =
    "if Dehn twists and Y-homeomorphisms generate the mapping class group, the twist classes must generate H1+ (the kernel of w1), so at least g-1 twists are needed";
pub const CITATION_QUADRATIC_FORM: &str =
    "g-1 spanning twist classes admit a Z4-quadratic form with value 2 on each class, preserved by every generator; no such form is preserved by the whole mapping class group, so some mapping class is missed";
pub const CITATION_PASS: &str =
    "a generating set by Dehn twists and Y-homeomorphisms needs at least g twists and one Y-homeomorphism; these conditions are necessary, not sufficient";

pub const PASS_NOTE: &str = "necessary conditions met; passing does not prove the set generates";

/// A proposed generating set, reduced to its homology shadow.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSet {
    genus: usize,
    twist_classes: Vec<Z2Vector>,
    y_count: usize,
}

impl GeneratorSet {
    /// Genus must be at least 4; every twist class must be two-sided
    /// (even weight) and live in dimension g.
    pub fn new(genus: usize, twist_classes: Vec<Z2Vector>, y_count: usize) -> Result<Self> {
        if genus < 4 {
            return Err(Error::GenusOutOfRange {
                genus,
                reason: "the certifier requires genus >= 4",
            });
        }
        if genus > MAX_GENUS {
            return Err(Error::GenusTooLarge {
                genus,
                max: MAX_GENUS,
            });
        }
        for c in &twist_classes {
            if c.dim() != genus {
                return Err(Error::DimensionMismatch {
                    left: genus,
                    right: c.dim(),
                });
            }
            if w1(c) == 1 {
                return Err(Error::OddWeightClass);
            }
        }
        Ok(Self {
            genus,
            twist_classes,
            y_count,
        })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn twist_classes(&self) -> &[Z2Vector] {
        &self.twist_classes
    }

    pub fn y_count(&self) -> usize {
        self.y_count
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    FailNoY,
    FailSpan,
    FailQuadraticForm,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::FailNoY => "fail_no_y",
            Verdict::FailSpan => "fail_span",
            Verdict::FailQuadraticForm => "fail_quadratic_form",
        }
    }
}

/// Per-verdict evidence; every claim is re-checkable without trusting the
/// certifying run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CertificatePayload {
    Pass {
        rank: usize,
        note: String,
    },
    NoY {
        citation: String,
    },
    Span {
        /// An H1+ class outside the span of the twist classes.
        witness: Z2Vector,
        /// Reduced echelon basis of the span, reproducible byte for byte.
        echelon: Vec<Z2Vector>,
        rank: usize,
    },
    QuadraticForm {
        /// A form preserved by every generator.
        form: Z4Form,
        /// Even-weight axis whose transvection moves the form: a Dehn twist
        /// about a curve in this class lies outside the constraint the
        /// generated subgroup satisfies.
        axis: Z2Vector,
        witness: Z2Vector,
        discrepancy: u8,
        /// True when the twist classes were not an independent (g-1)-set,
        /// so form existence was decided by constraint solving rather than
        /// the direct basis construction.
        extended_criterion: bool,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub genus: usize,
    pub verdict: Verdict,
    pub n: usize,
    pub k: usize,
    pub payload: CertificatePayload,
    pub citations: Vec<String>,
}

/// Standard basis of H1+: a_i = x_i + x_{i+1} for i = 1..g-1.
fn h1_plus_basis_vector(genus: usize, i: usize) -> Result<Z2Vector> {
    Z2Vector::from_indices(genus, &[i, i + 1])
}

/// Run the necessary-condition pipeline; first failure wins.
pub fn certify(gs: &GeneratorSet) -> Result<Certificate> {
    let g = gs.genus;
    let n = gs.twist_classes.len();
    let k = gs.y_count;

    if k == 0 {
        return Ok(Certificate {
            genus: g,
            verdict: Verdict::FailNoY,
            n,
            k,
            payload: CertificatePayload::NoY {
                citation: CITATION_NO_Y.to_string(),
            },
            citations: vec![CITATION_NO_Y.to_string()],
        });
    }

    let ech = gf2::echelon_of(&gs.twist_classes, g)?;
    let rank = ech.rank();
    if rank < g - 1 {
        let mut witness = None;
        for i in 1..g {
            let a = h1_plus_basis_vector(g, i)?;
            let (residual, _) = ech.express(&a)?;
            if !residual.is_zero() {
                witness = Some(a);
                break;
            }
        }
        // rank < g-1 means some a_i escapes the span
        let witness = witness.expect("span of rank < g-1 cannot contain all of H1+");
        return Ok(Certificate {
            genus: g,
            verdict: Verdict::FailSpan,
            n,
            k,
            payload: CertificatePayload::Span {
                witness,
                echelon: ech.basis(),
                rank,
            },
            citations: vec![CITATION_SPAN.to_string()],
        });
    }

    if let Some(form) = exists_invariant_form(g, &gs.twist_classes)? {
        let violation = find_violating_transvection(&form)?;
        return Ok(Certificate {
            genus: g,
            verdict: Verdict::FailQuadraticForm,
            n,
            k,
            payload: CertificatePayload::QuadraticForm {
                form,
                axis: violation.axis,
                witness: violation.witness,
                discrepancy: violation.discrepancy,
                extended_criterion: n != g - 1,
            },
            citations: vec![CITATION_QUADRATIC_FORM.to_string()],
        });
    }

    Ok(Certificate {
        genus: g,
        verdict: Verdict::Pass,
        n,
        k,
        payload: CertificatePayload::Pass {
            rank,
            note: PASS_NOTE.to_string(),
        },
        citations: vec![CITATION_PASS.to_string()],
    })
}

/// Re-validate every claim in a certificate from scratch. Returns false on
/// any mismatch; errors only on structural nonsense (wrong genus).
pub fn verify_certificate(gs: &GeneratorSet, cert: &Certificate) -> Result<bool> {
    if cert.genus != gs.genus {
        return Err(Error::MalformedCertificate(format!(
            "certificate genus {} does not match set genus {}",
            cert.genus, gs.genus
        )));
    }
    let g = gs.genus;
    if cert.n != gs.twist_classes.len() || cert.k != gs.y_count {
        return Ok(false);
    }
    match (&cert.verdict, &cert.payload) {
        (Verdict::FailNoY, CertificatePayload::NoY { .. }) => Ok(gs.y_count == 0),
        (Verdict::FailSpan, CertificatePayload::Span {
            witness,
            echelon,
            rank,
        }) => {
            if gs.y_count == 0 || witness.dim() != g || w1(witness) != 0 {
                return Ok(false);
            }
            let ech = gf2::echelon_of(&gs.twist_classes, g)?;
            if ech.rank() != *rank || *rank >= g - 1 {
                return Ok(false);
            }
            if ech.basis() != *echelon {
                return Ok(false);
            }
            Ok(gf2::in_span(witness, &gs.twist_classes)?.is_none())
        }
        (Verdict::FailQuadraticForm, CertificatePayload::QuadraticForm {
            form,
            axis,
            witness,
            discrepancy,
            ..
        }) => {
            if gs.y_count == 0 || form.genus() != g || axis.dim() != g || witness.dim() != g {
                return Ok(false);
            }
            if gf2::rank(&gs.twist_classes)? != g - 1 {
                return Ok(false);
            }
            // The form must be preserved by every generator, checked by
            // direct pointwise pullback, not the closed-form criterion.
            for c in &gs.twist_classes {
                if w1(c) == 1 || !is_preserved_pointwise(form, c)? {
                    return Ok(false);
                }
            }
            // The violating axis must be a legitimate two-sided class whose
            // transvection moves the form by exactly the claimed amount.
            if w1(axis) == 1 || axis.is_zero() || *discrepancy != 2 {
                return Ok(false);
            }
            if evaluate(form, axis)? != 0 {
                return Ok(false);
            }
            if crate::homology::pairing(witness, axis)? != 1 {
                return Ok(false);
            }
            let before = evaluate(form, witness)?;
            let after = evaluate(form, &transvect(axis, witness)?)?;
            if (after + 4 - before) % 4 != *discrepancy {
                return Ok(false);
            }
            Ok(!is_preserved_pointwise(form, axis)?)
        }
        (Verdict::Pass, CertificatePayload::Pass { rank, .. }) => {
            if gs.y_count == 0 || *rank != g - 1 {
                return Ok(false);
            }
            if gf2::rank(&gs.twist_classes)? != g - 1 {
                return Ok(false);
            }
            Ok(exists_invariant_form(g, &gs.twist_classes)?.is_none())
        }
        _ => Ok(false), // verdict and payload disagree
    }
}

/// One generator of a bundled set; `class` is None for a Y-homeomorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedGenerator {
    pub name: String,
    pub class: Option<Z2Vector>,
}

/// The homology shadow of Szepietowski's generating set: a_i = x_i + x_{i+1}
/// for i = 1..g-1, b2 = x1 + x2 + x3 + x4, and one Y-homeomorphism.
pub fn szepietowski_generators(genus: usize) -> Result<Vec<NamedGenerator>> {
    if genus < 4 {
        return Err(Error::GenusOutOfRange {
            genus,
            reason: "the bundled set is defined for genus >= 4",
        });
    }
    if genus > MAX_GENUS {
        return Err(Error::GenusTooLarge {
            genus,
            max: MAX_GENUS,
        });
    }
    let mut gens = Vec::with_capacity(genus + 1);
    for i in 1..genus {
        gens.push(NamedGenerator {
            name: format!("a{i}"),
            class: Some(Z2Vector::from_indices(genus, &[i, i + 1])?),
        });
    }
    gens.push(NamedGenerator {
        name: "b2".to_string(),
        class: Some(Z2Vector::from_indices(genus, &[1, 2, 3, 4])?),
    });
    gens.push(NamedGenerator {
        name: "y".to_string(),
        class: None,
    });
    Ok(gens)
}

/// Assemble a [`GeneratorSet`] from named generators, optionally dropping
/// one by name.
pub fn assemble_set(
    genus: usize,
    generators: &[NamedGenerator],
    drop: Option<&str>,
) -> Result<GeneratorSet> {
    if let Some(name) = drop {
        if !generators.iter().any(|g| g.name == name) {
            return Err(Error::MalformedInput(format!(
                "no generator named {name:?}; available: {}",
                generators
                    .iter()
                    .map(|g| g.name.as_str())
                    .collect::<Vec<_>>()
                    .join(", ")
            )));
        }
    }
    let kept: Vec<&NamedGenerator> = generators
        .iter()
        .filter(|g| drop != Some(g.name.as_str()))
        .collect();
    let twists: Vec<Z2Vector> = kept.iter().filter_map(|g| g.class).collect();
    let y_count = kept.iter().filter(|g| g.class.is_none()).count();
    GeneratorSet::new(genus, twists, y_count)
}

/// The bundled Szepietowski set and its single-removal proper subsets,
/// each under a stable name.
pub fn bundled_sets(genus: usize) -> Result<Vec<(String, GeneratorSet)>> {
    let gens = szepietowski_generators(genus)?;
    let mut out = vec![(
        "szepietowski".to_string(),
        assemble_set(genus, &gens, None)?,
    )];
    for g in &gens {
        out.push((
            format!("szepietowski-minus-{}", g.name),
            assemble_set(genus, &gens, Some(&g.name))?,
        ));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> Z2Vector {
        Z2Vector::from_bitstring(s).unwrap()
    }

    fn szep(genus: usize, drop: Option<&str>) -> GeneratorSet {
        assemble_set(genus, &szepietowski_generators(genus).unwrap(), drop).unwrap()
    }

    #[test]
    fn szepietowski_passes_at_g5() {
        let gs = szep(5, None);
        assert_eq!(
            gs.twist_classes(),
            &[v("11000"), v("01100"), v("00110"), v("00011"), v("11110")]
        );
        let cert = certify(&gs).unwrap();
        assert_eq!(cert.verdict, Verdict::Pass);
        assert_eq!((cert.n, cert.k), (5, 1));
        assert!(verify_certificate(&gs, &cert).unwrap());
    }

    #[test]
    fn dropping_b2_fails_quadratic_form() {
        let gs = szep(5, Some("b2"));
        let cert = certify(&gs).unwrap();
        assert_eq!(cert.verdict, Verdict::FailQuadraticForm);
        assert!(verify_certificate(&gs, &cert).unwrap());
        match &cert.payload {
            CertificatePayload::QuadraticForm {
                form, discrepancy, ..
            } => {
                for c in gs.twist_classes() {
                    assert_eq!(evaluate(form, c).unwrap(), 2);
                }
                assert_eq!(*discrepancy, 2);
            }
            other => panic!("unexpected payload {other:?}"),
        }
    }

    #[test]
    fn zero_y_count_fails_no_y() {
        let gs = szep(5, Some("y"));
        let cert = certify(&gs).unwrap();
        assert_eq!(cert.verdict, Verdict::FailNoY);
        assert!(verify_certificate(&gs, &cert).unwrap());
    }

    #[test]
    fn rank_deficit_fails_span() {
        let gs = GeneratorSet::new(4, vec![v("1100")], 1).unwrap();
        let cert = certify(&gs).unwrap();
        assert_eq!(cert.verdict, Verdict::FailSpan);
        match &cert.payload {
            CertificatePayload::Span { witness, rank, .. } => {
                assert_eq!(*rank, 1);
                assert!(gf2::in_span(witness, gs.twist_classes()).unwrap().is_none());
            }
            other => panic!("unexpected payload {other:?}"),
        }
        assert!(verify_certificate(&gs, &cert).unwrap());
    }

    #[test]
    fn rejects_small_genus_and_odd_classes() {
        assert!(GeneratorSet::new(3, vec![], 1).is_err());
        assert_eq!(
            GeneratorSet::new(4, vec![v("1000")], 1).unwrap_err(),
            Error::OddWeightClass
        );
    }

    #[test]
    fn tampered_form_is_rejected() {
        let gs = szep(5, Some("b2"));
        let mut cert = certify(&gs).unwrap();
        if let CertificatePayload::QuadraticForm { form, .. } = &mut cert.payload {
            let mut vals = form.basis_values().to_vec();
            vals[0] = if vals[0] == 1 { 3 } else { 1 };
            *form = Z4Form::new(form.genus(), vals).unwrap();
        }
        assert!(!verify_certificate(&gs, &cert).unwrap());
    }

    #[test]
    fn tampered_span_witness_is_rejected() {
        let gs = GeneratorSet::new(4, vec![v("1100")], 1).unwrap();
        let mut cert = certify(&gs).unwrap();
        if let CertificatePayload::Span { witness, .. } = &mut cert.payload {
            *witness = v("1100"); // actually in the span
        }
        assert!(!verify_certificate(&gs, &cert).unwrap());
    }

    #[test]
    fn genus_mismatch_is_malformed() {
        let gs4 = szep(4, None);
        let gs5 = szep(5, None);
        let cert = certify(&gs5).unwrap();
        assert!(matches!(
            verify_certificate(&gs4, &cert),
            Err(Error::MalformedCertificate(_))
        ));
    }

    #[test]
    fn trivial_axes_do_not_disturb_span_witness() {
        // adding 0 and u changes nothing about the H1+ span analysis
        let base = GeneratorSet::new(4, vec![v("1100")], 1).unwrap();
        let padded = GeneratorSet::new(
            4,
            vec![v("1100"), v("0000"), v("1111")],
            1,
        )
        .unwrap();
        let c1 = certify(&base).unwrap();
        let c2 = certify(&padded).unwrap();
        match (&c1.payload, &c2.payload) {
            (
                CertificatePayload::Span { witness: w1, .. },
                CertificatePayload::Span { witness: w2, .. },
            ) => assert_eq!(w1, w2),
            other => panic!("expected span failures, got {other:?}"),
        }
    }

    #[test]
    fn bundled_sets_shape() {
        let sets = bundled_sets(6).unwrap();
        assert_eq!(sets.len(), 1 + 7); // full set + one removal each
        let (name, full) = &sets[0];
        assert_eq!(name, "szepietowski");
        assert_eq!(full.twist_classes().len(), 6);
        assert_eq!(full.y_count(), 1);
        assert!(bundled_sets(3).is_err());
    }
}
