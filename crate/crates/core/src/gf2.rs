//! Word-packed linear algebra over the two-element field.
//!
//! Vectors live in (Z2)^g for g up to [`MAX_GENUS`] and are packed into a
//! single `u64`, so addition is one XOR and the pairing underneath is a
//! popcount. Elimination pivots left-to-right on the lowest set bit and
//! produces a fully reduced echelon form, so every derived artifact
//! (ranks, span witnesses, basis completions) is reproducible byte for byte.
//!
//! Basis indices are 1-based externally (x1..xg) and 0-based internally.

use crate::error::{Error, Result};

/// Largest supported genus: vectors must fit in one machine word.
pub const MAX_GENUS: usize = 64;

fn check_dim(dim: usize) -> Result<()> {
    if dim == 0 {
        return Err(Error::GenusOutOfRange {
            genus: 0,
            reason: "dimension must be at least 1",
        });
    }
    if dim > MAX_GENUS {
        return Err(Error::GenusTooLarge {
            genus: dim,
            max: MAX_GENUS,
        });
    }
    Ok(())
}

fn mask(dim: usize) -> u64 {
    if dim == 64 {
        u64::MAX
    } else {
        (1u64 << dim) - 1
    }
}

/// A homology class in H1(N_g; Z2) over the standard basis x1..xg.
///
/// Bit i-1 of `bits` is the coefficient of x_i.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Z2Vector {
    dim: usize,
    bits: u64,
}

impl Z2Vector {
    pub fn zero(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        Ok(Self { dim, bits: 0 })
    }

    /// Raw bit pattern; bits beyond `dim` must be clear.
    pub fn from_bits(dim: usize, bits: u64) -> Result<Self> {
        check_dim(dim)?;
        if bits & !mask(dim) != 0 {
            return Err(Error::IndexOutOfRange {
                index: 64 - bits.leading_zeros() as usize,
                genus: dim,
            });
        }
        Ok(Self { dim, bits })
    }

    /// The standard basis vector x_i (1-based).
    pub fn standard(dim: usize, i: usize) -> Result<Self> {
        check_dim(dim)?;
        if i == 0 || i > dim {
            return Err(Error::IndexOutOfRange {
                index: i,
                genus: dim,
            });
        }
        Ok(Self {
            dim,
            bits: 1u64 << (i - 1),
        })
    }

    /// Sum over a sorted or unsorted list of 1-based indices.
    /// Repeated indices cancel in characteristic two, so duplicates are rejected.
    pub fn from_indices(dim: usize, indices: &[usize]) -> Result<Self> {
        check_dim(dim)?;
        let mut bits = 0u64;
        for &i in indices {
            if i == 0 || i > dim {
                return Err(Error::IndexOutOfRange {
                    index: i,
                    genus: dim,
                });
            }
            let b = 1u64 << (i - 1);
            if bits & b != 0 {
                return Err(Error::MalformedInput(format!(
                    "duplicate basis index {i} in class"
                )));
            }
            bits |= b;
        }
        Ok(Self { dim, bits })
    }

    /// Parse a bit string like "1100"; leftmost character is x1.
    pub fn from_bitstring(s: &str) -> Result<Self> {
        let dim = s.len();
        check_dim(dim)?;
        let mut bits = 0u64;
        for (pos, ch) in s.chars().enumerate() {
            match ch {
                '1' => bits |= 1u64 << pos,
                '0' => {}
                _ => {
                    return Err(Error::MalformedInput(format!(
                        "bit string may contain only 0 and 1, found {ch:?}"
                    )))
                }
            }
        }
        Ok(Self { dim, bits })
    }

    /// The characteristic element u = x1 + ... + xg.
    pub fn characteristic(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        Ok(Self {
            dim,
            bits: mask(dim),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    /// Coefficient of x_i (1-based).
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i >= 1 && i <= self.dim);
        self.bits >> (i - 1) & 1 == 1
    }

    /// Number of nonzero coordinates.
    pub fn weight(&self) -> u32 {
        self.bits.count_ones()
    }

    /// Sorted 1-based indices of the nonzero coordinates.
    pub fn support(&self) -> Vec<usize> {
        (1..=self.dim).filter(|&i| self.get(i)).collect()
    }

    /// Componentwise sum mod 2.
    pub fn add(&self, rhs: &Z2Vector) -> Result<Z2Vector> {
        if self.dim != rhs.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: rhs.dim,
            });
        }
        Ok(Z2Vector {
            dim: self.dim,
            bits: self.bits ^ rhs.bits,
        })
    }
}

impl std::fmt::Debug for Z2Vector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for i in 1..=self.dim {
            write!(f, "{}", u8::from(self.get(i)))?;
        }
        Ok(())
    }
}

/// A g x g matrix over Z2; column j is the image of x_j.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GF2Matrix {
    dim: usize,
    cols: Vec<u64>,
}

impl GF2Matrix {
    pub fn identity(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        Ok(Self {
            dim,
            cols: (0..dim).map(|j| 1u64 << j).collect(),
        })
    }

    pub fn from_columns(cols: &[Z2Vector]) -> Result<Self> {
        let dim = cols.len();
        check_dim(dim)?;
        for c in cols {
            if c.dim != dim {
                return Err(Error::DimensionMismatch {
                    left: dim,
                    right: c.dim,
                });
            }
        }
        Ok(Self {
            dim,
            cols: cols.iter().map(|c| c.bits).collect(),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Column j, 1-based.
    pub fn column(&self, j: usize) -> Z2Vector {
        debug_assert!(j >= 1 && j <= self.dim);
        Z2Vector {
            dim: self.dim,
            bits: self.cols[j - 1],
        }
    }

    pub fn columns(&self) -> impl Iterator<Item = Z2Vector> + '_ {
        self.cols.iter().map(|&bits| Z2Vector {
            dim: self.dim,
            bits,
        })
    }

    /// Matrix-vector application over Z2.
    pub fn apply(&self, x: &Z2Vector) -> Result<Z2Vector> {
        if x.dim != self.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: x.dim,
            });
        }
        let mut bits = 0u64;
        let mut rest = x.bits;
        while rest != 0 {
            let j = rest.trailing_zeros() as usize;
            bits ^= self.cols[j];
            rest &= rest - 1;
        }
        Ok(Z2Vector {
            dim: self.dim,
            bits,
        })
    }

    /// Matrix product: (self * rhs)(x) = self(rhs(x)).
    pub fn mul(&self, rhs: &GF2Matrix) -> Result<GF2Matrix> {
        if self.dim != rhs.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: rhs.dim,
            });
        }
        let cols = rhs
            .columns()
            .map(|c| self.apply(&c).map(|v| v.bits))
            .collect::<Result<Vec<_>>>()?;
        Ok(GF2Matrix {
            dim: self.dim,
            cols,
        })
    }

    pub fn is_identity(&self) -> bool {
        self.cols.iter().enumerate().all(|(j, &c)| c == 1u64 << j)
    }

    pub fn is_invertible(&self) -> bool {
        let cols: Vec<Z2Vector> = self.columns().collect();
        rank(&cols).map(|r| r == self.dim).unwrap_or(false)
    }

    /// Canonical packed key for hashing and ordering: column bit patterns
    /// in column order.
    pub fn packed_key(&self) -> &[u64] {
        &self.cols
    }
}

impl std::fmt::Debug for GF2Matrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "cols[")?;
        for (j, c) in self.columns().enumerate() {
            if j > 0 {
                write!(f, " ")?;
            }
            write!(f, "{c:?}")?;
        }
        write!(f, "]")
    }
}

/// One echelon row with the combination of input vectors that produced it.
#[derive(Clone, Debug)]
struct EchelonRow {
    bits: u64,
    /// Bitset over input indices (0-based) whose sum equals `bits`.
    combo: Vec<u64>,
}

impl EchelonRow {
    fn xor_in(&mut self, other: &EchelonRow) {
        self.bits ^= other.bits;
        for (a, b) in self.combo.iter_mut().zip(&other.combo) {
            *a ^= *b;
        }
    }
}

/// Fully reduced echelon form with combination tracking, rows kept in
/// ascending pivot order.
#[derive(Clone, Debug)]
pub struct Echelon {
    dim: usize,
    combo_words: usize,
    rows: Vec<EchelonRow>,
}

impl Echelon {
    pub fn new(dim: usize, n_inputs: usize) -> Result<Self> {
        check_dim(dim)?;
        Ok(Self {
            dim,
            combo_words: n_inputs.div_ceil(64).max(1),
            rows: Vec::new(),
        })
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Echelon basis of the span, in pivot order.
    pub fn basis(&self) -> Vec<Z2Vector> {
        self.rows
            .iter()
            .map(|r| Z2Vector {
                dim: self.dim,
                bits: r.bits,
            })
            .collect()
    }

    fn reduce_row(&self, mut row: EchelonRow) -> EchelonRow {
        for r in &self.rows {
            let pivot = r.bits.trailing_zeros();
            if row.bits >> pivot & 1 == 1 {
                row.xor_in(r);
            }
        }
        row
    }

    /// Insert input vector number `index`; returns true if the rank grew.
    pub fn insert(&mut self, v: &Z2Vector, index: usize) -> Result<bool> {
        if v.dim != self.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: v.dim,
            });
        }
        let mut combo = vec![0u64; self.combo_words];
        combo[index / 64] |= 1u64 << (index % 64);
        let row = self.reduce_row(EchelonRow { bits: v.bits, combo });
        if row.bits == 0 {
            return Ok(false);
        }
        let pivot = row.bits.trailing_zeros();
        // Full reduction: clear the new pivot from every existing row.
        for r in &mut self.rows {
            if r.bits >> pivot & 1 == 1 {
                r.xor_in(&row);
            }
        }
        let pos = self
            .rows
            .partition_point(|r| r.bits.trailing_zeros() < pivot);
        self.rows.insert(pos, row);
        Ok(true)
    }

    /// Reduce `x` against the echelon; returns the residual and the set of
    /// input indices used (0-based).
    pub fn express(&self, x: &Z2Vector) -> Result<(Z2Vector, Vec<usize>)> {
        if x.dim != self.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: x.dim,
            });
        }
        let row = self.reduce_row(EchelonRow {
            bits: x.bits,
            combo: vec![0u64; self.combo_words],
        });
        let mut used = Vec::new();
        for (w, &word) in row.combo.iter().enumerate() {
            let mut rest = word;
            while rest != 0 {
                used.push(w * 64 + rest.trailing_zeros() as usize);
                rest &= rest - 1;
            }
        }
        used.sort_unstable();
        Ok((
            Z2Vector {
                dim: self.dim,
                bits: row.bits,
            },
            used,
        ))
    }
}

fn common_dim(vs: &[Z2Vector]) -> Result<Option<usize>> {
    let Some(first) = vs.first() else {
        return Ok(None);
    };
    for v in vs {
        if v.dim != first.dim {
            return Err(Error::DimensionMismatch {
                left: first.dim,
                right: v.dim,
            });
        }
    }
    Ok(Some(first.dim))
}

/// Build the reduced echelon form of a list of vectors.
pub fn echelon_of(vs: &[Z2Vector], dim: usize) -> Result<Echelon> {
    if let Some(d) = common_dim(vs)? {
        if d != dim {
            return Err(Error::DimensionMismatch {
                left: dim,
                right: d,
            });
        }
    }
    let mut ech = Echelon::new(dim, vs.len())?;
    for (i, v) in vs.iter().enumerate() {
        ech.insert(v, i)?;
    }
    Ok(ech)
}

/// Z2-rank of a list of vectors. The empty list has rank 0.
pub fn rank(vs: &[Z2Vector]) -> Result<usize> {
    match common_dim(vs)? {
        None => Ok(0),
        Some(dim) => Ok(echelon_of(vs, dim)?.rank()),
    }
}

/// Span membership with an exact witness: if `x` lies in the span of `vs`,
/// returns the sorted 1-based indices of a sublist summing to `x`.
pub fn in_span(x: &Z2Vector, vs: &[Z2Vector]) -> Result<Option<Vec<usize>>> {
    let ech = echelon_of(vs, x.dim)?;
    let (residual, used) = ech.express(x)?;
    if !residual.is_zero() {
        return Ok(None);
    }
    let indices: Vec<usize> = used.into_iter().map(|i| i + 1).collect();
    // The combination must re-sum to x exactly.
    debug_assert_eq!(
        indices.iter().fold(0u64, |acc, &i| acc ^ vs[i - 1].bits),
        x.bits
    );
    Ok(Some(indices))
}

/// Extend an independent list to a basis of (Z2)^g using standard basis
/// vectors, lowest index first. Returns only the added vectors.
pub fn complete_to_basis(vs: &[Z2Vector], dim: usize) -> Result<Vec<Z2Vector>> {
    let mut ech = echelon_of(vs, dim)?;
    if ech.rank() < vs.len() {
        return Err(Error::DependentInput);
    }
    let mut added = Vec::new();
    for i in 1..=dim {
        if ech.rank() == dim {
            break;
        }
        let e = Z2Vector::standard(dim, i)?;
        if ech.insert(&e, vs.len() + added.len())? {
            added.push(e);
        }
    }
    Ok(added)
}
