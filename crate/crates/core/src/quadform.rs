//! Z4-quadratic forms on H1(N_g; Z2).
//!
//! A form satisfies q(x+y) = q(x) + q(y) + 2(x,y) in Z4 and is determined
//! by its values on a basis. On the standard basis every value is odd, so a
//! form is a point of {1,3}^g. With the identity Gram matrix, evaluation is
//! a sum of basis values over the support; the general iterative expansion
//! is kept as an independent cross-check path.

use crate::error::{Error, Result};
use crate::gf2::{self, Z2Vector};
use crate::homology::{pairing, w1};
use crate::transvection::{transvect, InducedMap};

/// Default cap for exhaustive form enumeration (2^g forms).
pub const DEFAULT_ENUM_CAP: usize = 16;

/// A Z4-quadratic form stored by its values on the standard basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Z4Form {
    genus: usize,
    basis_values: Vec<u8>,
}

impl Z4Form {
    /// Every basis value must be odd: (x_i, x_i) = 1 forces q(x_i) in {1,3}.
    pub fn new(genus: usize, basis_values: Vec<u8>) -> Result<Self> {
        if basis_values.len() != genus {
            return Err(Error::DimensionMismatch {
                left: genus,
                right: basis_values.len(),
            });
        }
        for &v in &basis_values {
            if v != 1 && v != 3 {
                return Err(Error::MalformedInput(format!(
                    "basis value {v} not in {{1, 3}}"
                )));
            }
        }
        // genus bounds as for vectors
        Z2Vector::zero(genus)?;
        Ok(Self {
            genus,
            basis_values,
        })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn basis_values(&self) -> &[u8] {
        &self.basis_values
    }

    /// q(x_i), 1-based.
    pub fn basis_value(&self, i: usize) -> u8 {
        self.basis_values[i - 1]
    }
}

/// Evaluate q(x) as the sum of basis values over the support, mod 4.
/// Cross pairings of distinct basis vectors vanish, so no pairing term
/// appears. Result parity equals w1(x).
pub fn evaluate(q: &Z4Form, x: &Z2Vector) -> Result<u8> {
    if x.dim() != q.genus {
        return Err(Error::DimensionMismatch {
            left: q.genus,
            right: x.dim(),
        });
    }
    let mut acc = 0u32;
    let mut rest = x.bits();
    while rest != 0 {
        acc += u32::from(q.basis_values[rest.trailing_zeros() as usize]);
        rest &= rest - 1;
    }
    Ok((acc % 4) as u8)
}

/// Independent evaluation path: expand x one basis vector at a time with
/// q(v + x_i) = q(v) + q(x_i) + 2 (v, x_i).
pub fn evaluate_via_relation(q: &Z4Form, x: &Z2Vector) -> Result<u8> {
    if x.dim() != q.genus {
        return Err(Error::DimensionMismatch {
            left: q.genus,
            right: x.dim(),
        });
    }
    let mut partial = Z2Vector::zero(q.genus)?;
    let mut value = 0u8;
    for i in x.support() {
        let xi = Z2Vector::standard(q.genus, i)?;
        value = (value + q.basis_value(i) + 2 * pairing(&partial, &xi)?) % 4;
        partial = partial.add(&xi)?;
    }
    Ok(value)
}

/// The pullback q . M of a form along an induced map.
pub struct Pullback<'a> {
    form: &'a Z4Form,
    map: &'a InducedMap,
}

impl Pullback<'_> {
    pub fn evaluate(&self, x: &Z2Vector) -> Result<u8> {
        evaluate(self.form, &self.map.apply(x)?)
    }

    /// Pointwise equality with another form over all of (Z2)^g.
    pub fn equals_form(&self, other: &Z4Form) -> Result<bool> {
        let g = self.form.genus;
        for bits in 0u64..1 << g {
            let x = Z2Vector::from_bits(g, bits)?;
            if self.evaluate(&x)? != evaluate(other, &x)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

pub fn pullback<'a>(q: &'a Z4Form, m: &'a InducedMap) -> Result<Pullback<'a>> {
    if m.dim() != q.genus {
        return Err(Error::DimensionMismatch {
            left: q.genus,
            right: m.dim(),
        });
    }
    Ok(Pullback { form: q, map: m })
}

/// Closed-form invariance criterion: q . tau_y = q pointwise iff y = 0 or
/// q(y) = 2.
pub fn is_preserved_by(q: &Z4Form, y: &Z2Vector) -> Result<bool> {
    if w1(y) == 1 {
        return Err(Error::OneSidedAxis);
    }
    Ok(y.is_zero() || evaluate(q, y)? == 2)
}

/// Direct pointwise check of the same criterion, used to cross-validate
/// [`is_preserved_by`] and to verify certificates without trusting it.
pub fn is_preserved_pointwise(q: &Z4Form, y: &Z2Vector) -> Result<bool> {
    if w1(y) == 1 {
        return Err(Error::OneSidedAxis);
    }
    for bits in 0u64..1 << q.genus {
        let x = Z2Vector::from_bits(q.genus, bits)?;
        if evaluate(q, &transvect(y, &x)?)? != evaluate(q, &x)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A witness that q is not preserved by tau_y: some x with (x, y) = 1 whose
/// value moves. Returns None when q is preserved.
pub fn preservation_witness(q: &Z4Form, y: &Z2Vector) -> Result<Option<Z2Vector>> {
    if is_preserved_by(q, y)? {
        return Ok(None);
    }
    // Any x meeting y once works; take the lowest support index of y.
    let i = y.support()[0];
    Ok(Some(Z2Vector::standard(q.genus, i)?))
}

/// Build the form with value 2 on each of g-1 spanning even-weight classes
/// and value 1 on the deterministic basis completion, re-expressed over the
/// standard basis.
pub fn construct_invariant_form(classes: &[Z2Vector]) -> Result<Z4Form> {
    let Some(first) = classes.first() else {
        return Err(Error::RankDeficient { rank: 0, needed: 1 });
    };
    let g = first.dim();
    if classes.len() != g - 1 {
        return Err(Error::RankDeficient {
            rank: classes.len(),
            needed: g - 1,
        });
    }
    for c in classes {
        if w1(c) == 1 {
            return Err(Error::OddWeightClass);
        }
    }
    let r = gf2::rank(classes)?;
    if r < g - 1 {
        return Err(Error::RankDeficient {
            rank: r,
            needed: g - 1,
        });
    }
    // Lowest-index completion; a weight-1 standard vector, odd as required.
    let completion = gf2::complete_to_basis(classes, g)?;
    debug_assert_eq!(completion.len(), 1);
    let alpha = completion[0];

    let mut basis: Vec<Z2Vector> = classes.to_vec();
    basis.push(alpha);
    let mut basis_q: Vec<u8> = vec![2; g - 1];
    basis_q.push(1);

    // Express each standard x_i over the chosen basis and expand the
    // quadratic relation to read off q(x_i).
    let ech = gf2::echelon_of(&basis, g)?;
    let mut values = Vec::with_capacity(g);
    for i in 1..=g {
        let xi = Z2Vector::standard(g, i)?;
        let (residual, used) = ech.express(&xi)?;
        debug_assert!(residual.is_zero());
        let mut val = 0u32;
        for (a, &ja) in used.iter().enumerate() {
            val += u32::from(basis_q[ja]);
            for &jb in &used[a + 1..] {
                val += 2 * u32::from(pairing(&basis[ja], &basis[jb])?);
            }
        }
        values.push((val % 4) as u8);
    }
    let form = Z4Form::new(g, values)?;
    debug_assert!(classes
        .iter()
        .all(|c| evaluate(&form, c).unwrap() == 2));
    Ok(form)
}

/// A transvection that moves a given form, with the witness class and the
/// exact value discrepancy at the witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub axis: Z2Vector,
    pub witness: Z2Vector,
    pub discrepancy: u8,
}

/// Find an even-weight axis x != 0 with q(x) = 0 and a witness y meeting it
/// once, so that q(tau_x(y)) = q(y) + 2. Exists for every form once g >= 4.
pub fn find_violating_transvection(q: &Z4Form) -> Result<Violation> {
    let g = q.genus;
    if g < 4 {
        return Err(Error::GenusOutOfRange {
            genus: g,
            reason: "violating transvections are guaranteed only for genus >= 4",
        });
    }
    // Lexicographically smallest pair of basis indices with values summing
    // to 0 mod 4 (one value 1, one value 3).
    let mut axis = None;
    'outer: for i in 1..=g {
        for j in i + 1..=g {
            if (q.basis_value(i) + q.basis_value(j)) % 4 == 0 {
                axis = Some(Z2Vector::from_indices(g, &[i, j])?);
                break 'outer;
            }
        }
    }
    // All basis values equal: four odd values sum to 0 mod 4.
    let axis = match axis {
        Some(a) => a,
        None => Z2Vector::from_indices(g, &[1, 2, 3, 4])?,
    };
    debug_assert_eq!(evaluate(q, &axis)?, 0);
    let witness = Z2Vector::standard(g, axis.support()[0])?;
    let before = evaluate(q, &witness)?;
    let after = evaluate(q, &transvect(&axis, &witness)?)?;
    let discrepancy = (after + 4 - before) % 4;
    Ok(Violation {
        axis,
        witness,
        discrepancy,
    })
}

/// All 2^g forms in lexicographic order of their basis-value lists.
pub fn enumerate_forms(g: usize) -> Result<Vec<Z4Form>> {
    enumerate_forms_capped(g, DEFAULT_ENUM_CAP)
}

pub fn enumerate_forms_capped(g: usize, cap: usize) -> Result<Vec<Z4Form>> {
    if g > cap {
        return Err(Error::CapExceeded { genus: g, cap });
    }
    Z2Vector::zero(g)?;
    let mut forms = Vec::with_capacity(1 << g);
    for k in 0u64..1 << g {
        let values = (0..g)
            .map(|i| if k >> (g - 1 - i) & 1 == 1 { 3 } else { 1 })
            .collect();
        forms.push(Z4Form::new(g, values)?);
    }
    Ok(forms)
}

/// Find a form taking value 2 on every nonzero class in the list, if one
/// exists. Writing q(x_i) = 1 + 2 t_i, each class c imposes the affine
/// GF(2) constraint sum of t_i over supp(c) = 1 + weight(c)/2 mod 2, so
/// solvability is exact linear algebra, not enumeration.
pub fn exists_invariant_form(genus: usize, classes: &[Z2Vector]) -> Result<Option<Z4Form>> {
    Z2Vector::zero(genus)?;
    // Affine rows kept fully reduced; pivot is the lowest set bit.
    let mut rows: Vec<(u64, u8)> = Vec::new();
    for c in classes {
        if c.dim() != genus {
            return Err(Error::DimensionMismatch {
                left: genus,
                right: c.dim(),
            });
        }
        if w1(c) == 1 {
            return Err(Error::OddWeightClass);
        }
        if c.is_zero() {
            continue;
        }
        let mut bits = c.bits();
        let mut rhs = u8::from(c.weight() % 4 == 0);
        for &(rb, rr) in &rows {
            if bits >> rb.trailing_zeros() & 1 == 1 {
                bits ^= rb;
                rhs ^= rr;
            }
        }
        if bits == 0 {
            if rhs == 1 {
                return Ok(None); // contradictory constraints
            }
            continue;
        }
        let pivot = bits.trailing_zeros();
        for (rb, rr) in rows.iter_mut() {
            if *rb >> pivot & 1 == 1 {
                *rb ^= bits;
                *rr ^= rhs;
            }
        }
        rows.push((bits, rhs));
    }
    // Free variables zero; each fully reduced row fixes its pivot.
    let mut twists = vec![0u8; genus];
    for &(bits, rhs) in &rows {
        twists[bits.trailing_zeros() as usize] = rhs;
    }
    let values = twists.iter().map(|&t| 1 + 2 * t).collect();
    let form = Z4Form::new(genus, values)?;
    debug_assert!(classes
        .iter()
        .filter(|c| !c.is_zero())
        .all(|c| evaluate(&form, c).unwrap() == 2));
    Ok(Some(form))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transvection::{matrix_of, y_homeomorphism_action, Transvection};

    fn v(s: &str) -> Z2Vector {
        Z2Vector::from_bitstring(s).unwrap()
    }

    fn all_vectors(g: usize) -> impl Iterator<Item = Z2Vector> {
        (0u64..1 << g).map(move |b| Z2Vector::from_bits(g, b).unwrap())
    }

    #[test]
    fn evaluate_examples() {
        let q = Z4Form::new(4, vec![1, 3, 1, 1]).unwrap();
        assert_eq!(evaluate(&q, &Z2Vector::zero(4).unwrap()).unwrap(), 0);
        assert_eq!(evaluate(&q, &v("1100")).unwrap(), 0);
        // two orthogonal value-2 classes sum to a value-0 class
        let q2 = construct_invariant_form(&[v("1100"), v("0110"), v("0011")]).unwrap();
        let a1 = v("1100");
        let a3 = v("0011");
        assert_eq!(evaluate(&q2, &a1).unwrap(), 2);
        assert_eq!(evaluate(&q2, &a3).unwrap(), 2);
        assert_eq!(evaluate(&q2, &a1.add(&a3).unwrap()).unwrap(), 0);
    }

    #[test]
    fn evaluation_paths_agree() {
        for q in enumerate_forms(4).unwrap() {
            for x in all_vectors(4) {
                assert_eq!(
                    evaluate(&q, &x).unwrap(),
                    evaluate_via_relation(&q, &x).unwrap()
                );
            }
        }
    }

    #[test]
    fn pullback_examples() {
        let q = Z4Form::new(4, vec![1, 3, 1, 1]).unwrap();
        let id = y_homeomorphism_action(4).unwrap();
        let p = pullback(&q, &id).unwrap();
        assert!(p.equals_form(&q).unwrap());

        // axis with q(axis) = 0 shifts values across it by 2
        let axis = v("1100");
        assert_eq!(evaluate(&q, &axis).unwrap(), 0);
        let m = matrix_of(&Transvection::new(axis).unwrap()).unwrap();
        let p = pullback(&q, &m).unwrap();
        let y = v("1000");
        assert_eq!(
            p.evaluate(&y).unwrap(),
            (evaluate(&q, &y).unwrap() + 2) % 4
        );
    }

    #[test]
    fn preservation_criterion() {
        let q = construct_invariant_form(&[v("1100"), v("0110"), v("0011")]).unwrap();
        assert!(is_preserved_by(&q, &v("1100")).unwrap());
        assert!(is_preserved_by(&q, &Z2Vector::zero(4).unwrap()).unwrap());
        let bad = Z4Form::new(4, vec![1, 3, 1, 1]).unwrap();
        let axis = v("1100");
        assert_eq!(evaluate(&bad, &axis).unwrap(), 0);
        assert!(!is_preserved_by(&bad, &axis).unwrap());
        let w = preservation_witness(&bad, &axis).unwrap().unwrap();
        assert_eq!(pairing(&w, &axis).unwrap(), 1);
        assert!(is_preserved_by(&bad, &v("1000")).is_err());
    }

    #[test]
    fn criterion_matches_pointwise_exhaustively() {
        for q in enumerate_forms(4).unwrap() {
            for y in all_vectors(4).filter(|y| w1(y) == 0) {
                assert_eq!(
                    is_preserved_by(&q, &y).unwrap(),
                    is_preserved_pointwise(&q, &y).unwrap()
                );
            }
        }
    }

    #[test]
    fn construct_invariant_form_examples() {
        let classes = [v("1100"), v("0110"), v("0011")];
        let q = construct_invariant_form(&classes).unwrap();
        for c in &classes {
            assert_eq!(evaluate(&q, c).unwrap(), 2);
            assert!(is_preserved_pointwise(&q, c).unwrap());
        }
        assert_eq!(evaluate(&q, &v("1000")).unwrap(), 1);

        let err = construct_invariant_form(&[v("1100"), v("0110"), v("1010")]).unwrap_err();
        assert!(matches!(err, Error::RankDeficient { rank: 2, needed: 3 }));
    }

    #[test]
    fn violating_transvection_examples() {
        let q = Z4Form::new(4, vec![1, 3, 1, 1]).unwrap();
        let viol = find_violating_transvection(&q).unwrap();
        assert_eq!(viol.axis, v("1100"));
        assert_eq!(viol.witness, v("1000"));
        assert_eq!(viol.discrepancy, 2);

        let flat = Z4Form::new(4, vec![1, 1, 1, 1]).unwrap();
        let viol = find_violating_transvection(&flat).unwrap();
        assert_eq!(viol.axis, v("1111"));
        assert_eq!(viol.witness, v("1000"));
        assert_eq!(viol.discrepancy, 2);

        let small = Z4Form::new(3, vec![1, 1, 1]).unwrap();
        assert!(find_violating_transvection(&small).is_err());
    }

    #[test]
    fn enumerate_forms_counts() {
        assert_eq!(enumerate_forms(1).unwrap().len(), 2);
        assert_eq!(enumerate_forms(4).unwrap().len(), 16);
        assert!(matches!(
            enumerate_forms_capped(17, 16).unwrap_err(),
            Error::CapExceeded { .. }
        ));
        // lexicographic order
        let forms = enumerate_forms(2).unwrap();
        let values: Vec<_> = forms.iter().map(|f| f.basis_values().to_vec()).collect();
        assert_eq!(values, vec![vec![1, 1], vec![1, 3], vec![3, 1], vec![3, 3]]);
    }

    #[test]
    fn exists_invariant_form_examples() {
        assert!(exists_invariant_form(4, &[]).unwrap().is_some());

        let classes = [v("1100"), v("0110"), v("0011")];
        let q = exists_invariant_form(4, &classes).unwrap().unwrap();
        for c in &classes {
            assert_eq!(evaluate(&q, c).unwrap(), 2);
        }

        // b2 = a1 + a3 with vanishing mutual pairing forces q(b2) = 0
        let dependent = [v("1100"), v("0110"), v("0011"), v("1111")];
        assert!(exists_invariant_form(4, &dependent).unwrap().is_none());
        // cross-check against full enumeration
        for q in enumerate_forms(4).unwrap() {
            assert!(dependent
                .iter()
                .any(|c| evaluate(&q, c).unwrap() != 2));
        }
    }

    #[test]
    fn quadratic_relation_exhaustive_g4() {
        for q in enumerate_forms(4).unwrap() {
            for x in all_vectors(4) {
                for y in all_vectors(4) {
                    let lhs = evaluate(&q, &x.add(&y).unwrap()).unwrap();
                    let rhs = (evaluate(&q, &x).unwrap()
                        + evaluate(&q, &y).unwrap()
                        + 2 * pairing(&x, &y).unwrap())
                        % 4;
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn parity_law() {
        for g in [4usize, 5] {
            for q in enumerate_forms(g).unwrap() {
                for x in all_vectors(g) {
                    assert_eq!(evaluate(&q, &x).unwrap() % 2, w1(&x));
                }
            }
        }
    }
}
