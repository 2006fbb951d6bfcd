//! The Z2-homology of the non-orientable surface N_g.
//!
//! On the standard basis x1..xg the intersection pairing has identity Gram
//! matrix and the first Stiefel-Whitney class w1 is the coordinate sum, so
//! both reduce to popcounts. H1+ is the kernel of w1 (the classes of
//! two-sided curves), of dimension g-1.

use crate::error::{Error, Result};
use crate::gf2::Z2Vector;
use serde::{Deserialize, Serialize};

/// Genus, standard basis, and characteristic element of H1(N_g; Z2).
#[derive(Clone, Debug)]
pub struct SurfaceHomology {
    genus: usize,
    basis: Vec<Z2Vector>,
    characteristic: Z2Vector,
}

impl SurfaceHomology {
    pub fn new(genus: usize) -> Result<Self> {
        let basis = (1..=genus)
            .map(|i| Z2Vector::standard(genus, i))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            genus,
            basis,
            characteristic: Z2Vector::characteristic(genus)?,
        })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn basis(&self) -> &[Z2Vector] {
        &self.basis
    }

    /// u = x1 + ... + xg; fixed by every induced automorphism.
    pub fn characteristic(&self) -> Z2Vector {
        self.characteristic
    }
}

/// Z2-intersection pairing; identity Gram matrix on the standard basis.
pub fn pairing(x: &Z2Vector, y: &Z2Vector) -> Result<u8> {
    if x.dim() != y.dim() {
        return Err(Error::DimensionMismatch {
            left: x.dim(),
            right: y.dim(),
        });
    }
    Ok(((x.bits() & y.bits()).count_ones() & 1) as u8)
}

/// First Stiefel-Whitney class: coordinate sum mod 2.
/// Equals pairing(x, x) and pairing(x, u).
pub fn w1(x: &Z2Vector) -> u8 {
    (x.weight() & 1) as u8
}

/// Whether a simple closed curve in this class is two-sided or one-sided.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Sidedness {
    OneSided,
    TwoSided,
}

/// What the homology class alone says about admissibility of curves
/// representing it. The non-admissibility direction is one-way: classes 0
/// and u may carry non-admissible representatives, every other two-sided
/// class cannot.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Admissibility {
    ForcedAdmissible,
    PossiblyNonAdmissible,
    NotACurveClassIssue,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveClassReport {
    pub class: Z2Vector,
    pub sidedness: Sidedness,
    pub admissibility: Admissibility,
}

/// Classify a homology class by sidedness and admissibility of its
/// representatives. Admissibility is only meaningful for two-sided classes.
pub fn classify(x: &Z2Vector) -> CurveClassReport {
    let class = *x;
    if w1(x) == 1 {
        return CurveClassReport {
            class,
            sidedness: Sidedness::OneSided,
            admissibility: Admissibility::NotACurveClassIssue,
        };
    }
    let u = Z2Vector::characteristic(x.dim()).expect("dim validated at construction");
    // u lies in H1+ only when g is even; for odd g only 0 remains suspect.
    let admissibility = if x.is_zero() || (*x == u && w1(&u) == 0) {
        Admissibility::PossiblyNonAdmissible
    } else {
        Admissibility::ForcedAdmissible
    };
    CurveClassReport {
        class,
        sidedness: Sidedness::TwoSided,
        admissibility,
    }
}

/// Split an even-weight class into weight-2 pieces, pairing support indices
/// in ascending order. Each piece is forced admissible and the pieces sum
/// back to the input.
pub fn decompose_even(x: &Z2Vector) -> Result<Vec<Z2Vector>> {
    if w1(x) == 1 {
        return Err(Error::OddWeightClass);
    }
    let support = x.support();
    support
        .chunks_exact(2)
        .map(|pair| Z2Vector::from_indices(x.dim(), pair))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> Z2Vector {
        Z2Vector::from_bitstring(s).unwrap()
    }

    #[test]
    fn pairing_examples() {
        let x1 = Z2Vector::standard(4, 1).unwrap();
        let x2 = Z2Vector::standard(4, 2).unwrap();
        assert_eq!(pairing(&x1, &x1).unwrap(), 1);
        assert_eq!(pairing(&x1, &x2).unwrap(), 0);
        assert_eq!(pairing(&v("1100"), &v("0110")).unwrap(), 1);
    }

    #[test]
    fn w1_examples() {
        for i in 1..=4 {
            assert_eq!(w1(&Z2Vector::standard(4, i).unwrap()), 1);
        }
        assert_eq!(w1(&Z2Vector::zero(4).unwrap()), 0);
        assert_eq!(w1(&v("1111")), 0);
    }

    #[test]
    fn classify_examples() {
        assert_eq!(
            classify(&Z2Vector::zero(4).unwrap()).admissibility,
            Admissibility::PossiblyNonAdmissible
        );
        assert_eq!(
            classify(&v("1111")).admissibility,
            Admissibility::PossiblyNonAdmissible
        );
        assert_eq!(
            classify(&v("1100")).admissibility,
            Admissibility::ForcedAdmissible
        );
        let one_sided = classify(&v("1000"));
        assert_eq!(one_sided.sidedness, Sidedness::OneSided);
        assert_eq!(one_sided.admissibility, Admissibility::NotACurveClassIssue);
    }

    #[test]
    fn classify_odd_genus_characteristic() {
        // For odd g, u is one-sided and admissibility is not a class issue.
        let u = Z2Vector::characteristic(5).unwrap();
        assert_eq!(classify(&u).sidedness, Sidedness::OneSided);
    }

    #[test]
    fn decompose_even_examples() {
        assert!(decompose_even(&Z2Vector::zero(4).unwrap())
            .unwrap()
            .is_empty());
        assert_eq!(
            decompose_even(&v("1111")).unwrap(),
            vec![v("1100"), v("0011")]
        );
        assert_eq!(decompose_even(&v("01001")).unwrap(), vec![v("01001")]);
        assert_eq!(decompose_even(&v("1000")).unwrap_err(), Error::OddWeightClass);
    }

    #[test]
    fn h1_plus_size_and_rank() {
        let g = 5;
        let even: Vec<Z2Vector> = (0u64..1 << g)
            .map(|b| Z2Vector::from_bits(g, b).unwrap())
            .filter(|x| w1(x) == 0)
            .collect();
        assert_eq!(even.len(), 1 << (g - 1));
        assert_eq!(crate::gf2::rank(&even).unwrap(), g - 1);
    }

    #[test]
    fn surface_invariants() {
        let h = SurfaceHomology::new(4).unwrap();
        for (i, xi) in h.basis().iter().enumerate() {
            for (j, xj) in h.basis().iter().enumerate() {
                assert_eq!(pairing(xi, xj).unwrap(), u8::from(i == j));
            }
        }
        assert_eq!(w1(&h.characteristic()), 0);
    }
}
