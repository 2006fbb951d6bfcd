//! Induced action on H1(N_g; Z2).
//!
//! A Dehn twist about a two-sided curve in class y acts as the transvection
//! x -> x + (x,y) y; a Y-homeomorphism acts trivially. Both are packaged as
//! [`InducedMap`]s carrying a provenance label so certificates can name the
//! generator responsible for a claim.

use crate::error::{Error, Result};
use crate::gf2::{GF2Matrix, Z2Vector};
use crate::homology::{pairing, w1};

/// The homology transvection of a Dehn twist about a two-sided curve.
///
/// Axis 0 and axis u are accepted; they act as the identity on H1+ and
/// arise from non-admissible curves.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Transvection {
    axis: Z2Vector,
}

impl Transvection {
    pub fn new(axis: Z2Vector) -> Result<Self> {
        if w1(&axis) == 1 {
            return Err(Error::OneSidedAxis);
        }
        Ok(Self { axis })
    }

    pub fn axis(&self) -> Z2Vector {
        self.axis
    }

    /// x -> x + (x, axis) axis.
    pub fn apply(&self, x: &Z2Vector) -> Result<Z2Vector> {
        if pairing(x, &self.axis)? == 1 {
            x.add(&self.axis)
        } else {
            Ok(*x)
        }
    }
}

/// Where an induced map came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    TwistAxis(Z2Vector),
    YHomeomorphism,
    Composite(String),
    Identity,
}

impl std::fmt::Display for Provenance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Provenance::TwistAxis(a) => write!(f, "twist axis {:?}", a),
            Provenance::YHomeomorphism => write!(f, "y-homeomorphism"),
            Provenance::Composite(s) => write!(f, "composite({s})"),
            Provenance::Identity => write!(f, "identity"),
        }
    }
}

/// An invertible matrix on H1(N_g; Z2) that preserves the pairing and
/// fixes u, together with its origin.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedMap {
    pub matrix: GF2Matrix,
    pub provenance: Provenance,
}

impl InducedMap {
    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn apply(&self, x: &Z2Vector) -> Result<Z2Vector> {
        self.matrix.apply(x)
    }
}

/// Apply the transvection with the given even-weight axis directly.
pub fn transvect(axis: &Z2Vector, x: &Z2Vector) -> Result<Z2Vector> {
    Transvection::new(*axis)?.apply(x)
}

/// Y-homeomorphisms act trivially on Z2-homology.
pub fn y_homeomorphism_action(genus: usize) -> Result<InducedMap> {
    Ok(InducedMap {
        matrix: GF2Matrix::identity(genus)?,
        provenance: Provenance::YHomeomorphism,
    })
}

/// Matrix of a transvection: column j is the image of x_j.
pub fn matrix_of(t: &Transvection) -> Result<InducedMap> {
    let g = t.axis().dim();
    let cols = (1..=g)
        .map(|j| t.apply(&Z2Vector::standard(g, j)?))
        .collect::<Result<Vec<_>>>()?;
    Ok(InducedMap {
        matrix: GF2Matrix::from_columns(&cols)?,
        provenance: Provenance::TwistAxis(t.axis()),
    })
}

/// Composition a after b as matrices.
pub fn compose(a: &InducedMap, b: &InducedMap) -> Result<InducedMap> {
    Ok(InducedMap {
        matrix: a.matrix.mul(&b.matrix)?,
        provenance: Provenance::Composite(format!("{} . {}", a.provenance, b.provenance)),
    })
}
