//! Brute-force group oracle at small genus.
//!
//! Enumerates the subgroup of GF(2)-matrix automorphisms generated by given
//! transvections via breadth-first closure, hashed on packed matrix bits
//! and order-canonicalized at the end. Used to cross-validate the
//! certifier's obstructions independently of the quadratic-form calculus.

use crate::error::{Error, Result};
use crate::gf2::{GF2Matrix, Z2Vector};
use crate::homology::w1;
use crate::quadform::{evaluate, Z4Form};
use crate::transvection::{matrix_of, Transvection};
use std::collections::{HashSet, VecDeque};

#[derive(Clone, Debug)]
pub struct ExploreConfig {
    /// BFS refuses genus above this; the reference group grows quickly.
    pub max_genus: usize,
    pub memory_budget_mb: usize,
}

impl Default for ExploreConfig {
    fn default() -> Self {
        Self {
            max_genus: 8,
            memory_budget_mb: 512,
        }
    }
}

/// A finite matrix group given by an explicit, canonically ordered element
/// list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixGroup {
    genus: usize,
    elements: Vec<GF2Matrix>,
    generator_labels: Vec<String>,
}

impl MatrixGroup {
    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Elements in canonical (lexicographic packed-bits) order.
    pub fn elements(&self) -> &[GF2Matrix] {
        &self.elements
    }

    pub fn generator_labels(&self) -> &[String] {
        &self.generator_labels
    }

    pub fn contains(&self, m: &GF2Matrix) -> bool {
        self.elements
            .binary_search_by(|e| e.packed_key().cmp(m.packed_key()))
            .is_ok()
    }
}

// Rough per-element footprint: two Vec<u64> of dim words plus container
// overhead.
fn approx_bytes_per_element(dim: usize) -> usize {
    dim * 16 + 96
}

/// Breadth-first closure from the identity under left multiplication by
/// the transvection matrices of the given even-weight axes.
pub fn generate(genus: usize, axes: &[Z2Vector], config: &ExploreConfig) -> Result<MatrixGroup> {
    if genus > config.max_genus {
        return Err(Error::CapExceeded {
            genus,
            cap: config.max_genus,
        });
    }
    let mut gens = Vec::with_capacity(axes.len());
    let mut labels = Vec::with_capacity(axes.len());
    for axis in axes {
        if axis.dim() != genus {
            return Err(Error::DimensionMismatch {
                left: genus,
                right: axis.dim(),
            });
        }
        let t = Transvection::new(*axis)?; // rejects one-sided axes
        let m = matrix_of(&t)?;
        labels.push(m.provenance.to_string());
        gens.push(m.matrix);
    }

    let budget_bytes = config.memory_budget_mb.saturating_mul(1024 * 1024);
    let per_elem = approx_bytes_per_element(genus);

    let identity = GF2Matrix::identity(genus)?;
    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    seen.insert(identity.packed_key().to_vec());
    let mut elements = vec![identity.clone()];
    let mut frontier = VecDeque::from([identity]);
    while let Some(current) = frontier.pop_front() {
        for gen in &gens {
            let next = gen.mul(&current)?;
            if seen.insert(next.packed_key().to_vec()) {
                if (elements.len() + 1) * per_elem > budget_bytes {
                    return Err(Error::MemoryBudgetExceeded {
                        explored: elements.len(),
                        budget_mb: config.memory_budget_mb,
                    });
                }
                elements.push(next.clone());
                frontier.push_back(next);
            }
        }
    }
    elements.sort_unstable_by(|a, b| a.packed_key().cmp(b.packed_key()));
    Ok(MatrixGroup {
        genus,
        elements,
        generator_labels: labels,
    })
}

/// All nonzero even-weight classes, the axes of every homology transvection.
pub fn all_even_axes(genus: usize) -> Result<Vec<Z2Vector>> {
    let mut axes = Vec::new();
    for bits in 1u64..1 << genus {
        let v = Z2Vector::from_bits(genus, bits)?;
        if w1(&v) == 0 {
            axes.push(v);
        }
    }
    Ok(axes)
}

/// The twist-image group: closure over all 2^(g-1)-1 nonzero even-weight
/// axes. Whether this equals the full image of the mapping class group in
/// the automorphisms of H1 is not something this module claims.
pub fn reference_group(genus: usize, config: &ExploreConfig) -> Result<MatrixGroup> {
    generate(genus, &all_even_axes(genus)?, config)
}

/// Elements of G whose pullback leaves q unchanged pointwise.
pub fn stabilizer_of_form(group: &MatrixGroup, q: &Z4Form) -> Result<MatrixGroup> {
    if q.genus() != group.genus {
        return Err(Error::DimensionMismatch {
            left: group.genus,
            right: q.genus(),
        });
    }
    let g = group.genus;
    let mut elements = Vec::new();
    'outer: for m in &group.elements {
        for bits in 0u64..1 << g {
            let x = Z2Vector::from_bits(g, bits)?;
            if evaluate(q, &m.apply(&x)?)? != evaluate(q, &x)? {
                continue 'outer;
            }
        }
        elements.push(m.clone());
    }
    // already canonically ordered since the parent list was
    Ok(MatrixGroup {
        genus: group.genus,
        elements,
        generator_labels: vec![format!("stabilizer of form {:?}", q.basis_values())],
    })
}

/// H is a proper subgroup of G: every element contained and strictly fewer
/// elements.
pub fn is_subgroup_proper(h: &MatrixGroup, g: &MatrixGroup) -> Result<bool> {
    if h.genus != g.genus {
        return Err(Error::DimensionMismatch {
            left: h.genus,
            right: g.genus,
        });
    }
    Ok(h.order() < g.order() && h.elements.iter().all(|m| g.contains(m)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::pairing as pair;
    use crate::quadform::construct_invariant_form;

    fn v(s: &str) -> Z2Vector {
        Z2Vector::from_bitstring(s).unwrap()
    }

    fn cfg() -> ExploreConfig {
        ExploreConfig::default()
    }

    #[test]
    fn empty_axes_give_trivial_group() {
        let g = generate(4, &[], &cfg()).unwrap();
        assert_eq!(g.order(), 1);
        assert!(g.elements()[0].is_identity());
    }

    #[test]
    fn genus_two_reference_group_has_order_two() {
        let g = reference_group(2, &cfg()).unwrap();
        assert_eq!(g.order(), 2);
    }

    #[test]
    fn spanning_triple_generates_proper_subgroup_at_g4() {
        let axes = [v("1100"), v("0110"), v("0011")];
        let h = generate(4, &axes, &cfg()).unwrap();
        let g = reference_group(4, &cfg()).unwrap();
        assert!(is_subgroup_proper(&h, &g).unwrap());
        // the subgroup stabilizes the invariant form on those axes
        let q = construct_invariant_form(&axes).unwrap();
        let stab = stabilizer_of_form(&g, &q).unwrap();
        assert!(is_subgroup_proper(&stab, &g).unwrap());
        assert!(h.elements().iter().all(|m| stab.contains(m)));
    }

    #[test]
    fn every_element_is_an_isometry_fixing_u() {
        let g = reference_group(4, &cfg()).unwrap();
        let u = Z2Vector::characteristic(4).unwrap();
        for m in g.elements() {
            assert_eq!(m.apply(&u).unwrap(), u);
            for a_bits in 0u64..16 {
                let a = Z2Vector::from_bits(4, a_bits).unwrap();
                for b_bits in 0u64..16 {
                    let b = Z2Vector::from_bits(4, b_bits).unwrap();
                    assert_eq!(
                        pair(&m.apply(&a).unwrap(), &m.apply(&b).unwrap()).unwrap(),
                        pair(&a, &b).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn closure_under_product() {
        let g = generate(4, &[v("1100"), v("0110")], &cfg()).unwrap();
        for a in g.elements() {
            for b in g.elements() {
                assert!(g.contains(&a.mul(b).unwrap()));
            }
        }
    }

    #[test]
    fn determinism_across_runs() {
        let axes = all_even_axes(5).unwrap();
        let g1 = generate(5, &axes, &cfg()).unwrap();
        let g2 = generate(5, &axes, &cfg()).unwrap();
        assert_eq!(g1.elements(), g2.elements());
    }

    #[test]
    fn cap_and_budget_errors() {
        assert!(matches!(
            generate(9, &[], &cfg()).unwrap_err(),
            Error::CapExceeded { genus: 9, cap: 8 }
        ));
        let tiny = ExploreConfig {
            max_genus: 8,
            memory_budget_mb: 0,
        };
        let err = reference_group(4, &tiny).unwrap_err();
        assert!(matches!(err, Error::MemoryBudgetExceeded { .. }));
    }

    #[test]
    fn rejects_one_sided_axis() {
        assert_eq!(
            generate(4, &[v("1000")], &cfg()).unwrap_err(),
            Error::OneSidedAxis
        );
    }
}
