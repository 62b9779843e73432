//! Alignment conditions on reduced words and inversion sets, driven by the
//! skew form of the orientation.

use num_traits::Zero;

use crate::cartan::{Bond, CoxeterData, Orientation};
use crate::error::{Error, Result};
use crate::group::{Element, InversionSet};
use crate::order::positive_span_triples;
use crate::roots::Root;
use crate::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlignmentVerdict {
    pub pass: bool,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InversionAlignment {
    pub pass: bool,
    pub witness: Option<String>,
    pub universe_size: usize,
}

impl CoxeterData {
    /// Word condition: over all inversion-root pairs of the reduced word
    /// taken in order, the skew form is nonnegative, and strictly positive
    /// unless the two reflections commute.
    pub fn alignment_word_condition(
        &self,
        ori: &Orientation,
        word: &[usize],
    ) -> Result<AlignmentVerdict> {
        if self.element_of_word(word).length() as usize != word.len() {
            return Err(Error::NotReduced);
        }
        let roots: Vec<Root> = (1..=word.len())
            .map(|k| self.reflection_of_word(&word[..k]))
            .collect();
        for i in 0..roots.len() {
            for j in (i + 1)..roots.len() {
                let value = self.omega(ori, &roots[i], &roots[j]);
                if value < Rational::zero() {
                    return Ok(AlignmentVerdict {
                        pass: false,
                        witness: Some(format!(
                            "omega({:?},{:?}) = {} < 0 at positions ({},{})",
                            roots[i],
                            roots[j],
                            value,
                            i + 1,
                            j + 1
                        )),
                    });
                }
                if value.is_zero() {
                    let commute = roots[i] == roots[j]
                        || self.dihedral_order(&roots[i], &roots[j])? == Bond::Finite(2);
                    if !commute {
                        return Ok(AlignmentVerdict {
                            pass: false,
                            witness: Some(format!(
                                "omega({:?},{:?}) = 0 but the reflections do not commute",
                                roots[i], roots[j]
                            )),
                        });
                    }
                }
            }
        }
        Ok(AlignmentVerdict { pass: true, witness: None })
    }

    /// Inversion condition over a finite universe of positive roots: for
    /// every positive-span triple (r, s, t) with omega(r, t) >= 0, the
    /// inversion set meets {r, s, t} in one of the five allowed patterns.
    pub fn alignment_inversion_condition(
        &self,
        ori: &Orientation,
        w: &Element,
        universe: &[Root],
    ) -> InversionAlignment {
        let triples = positive_span_triples(universe);
        self.alignment_inversion_with_triples(ori, &self.inversions(w), universe, &triples)
    }

    /// Same check against precomputed span triples, for callers scanning
    /// many elements over one universe.
    pub fn alignment_inversion_with_triples(
        &self,
        ori: &Orientation,
        inv: &InversionSet,
        universe: &[Root],
        triples: &[(usize, usize, usize)],
    ) -> InversionAlignment {
        for &(x, s, y) in triples {
            // The outer pair is oriented by the sign of the skew form.
            for (r, t) in [(x, y), (y, x)] {
                if self.omega(ori, &universe[r], &universe[t]) < Rational::zero() {
                    continue;
                }
                let in_r = inv.contains(&universe[r]);
                let in_s = inv.contains(&universe[s]);
                let in_t = inv.contains(&universe[t]);
                let allowed = matches!(
                    (in_r, in_s, in_t),
                    (false, false, false)
                        | (true, false, false)
                        | (true, true, false)
                        | (true, true, true)
                        | (false, false, true)
                );
                if !allowed {
                    return InversionAlignment {
                        pass: false,
                        witness: Some(format!(
                            "triple r={:?}, s={:?}, t={:?} meets the inversion set as ({},{},{})",
                            universe[r], universe[s], universe[t], in_r, in_s, in_t
                        )),
                        universe_size: universe.len(),
                    };
                }
            }
        }
        InversionAlignment { pass: true, witness: None, universe_size: universe.len() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config;
    use crate::group::DEFAULT_CAP;

    fn ball_roots(data: &CoxeterData, l: u32) -> Vec<Root> {
        let mut set = std::collections::BTreeSet::new();
        for w in data.ball(l, DEFAULT_CAP).unwrap() {
            set.extend(data.inversions(&w));
        }
        set.into_iter().collect()
    }

    #[test]
    fn single_letter_word_passes() {
        let (data, ori) = config::bundled_group("a2").unwrap();
        assert!(data.alignment_word_condition(&ori, &[0]).unwrap().pass);
    }

    #[test]
    fn sorting_word_of_coxeter_element_passes() {
        let (data, ori) = config::bundled_group("a2").unwrap();
        assert!(data.alignment_word_condition(&ori, &[0, 1]).unwrap().pass);
        assert!(data.alignment_word_condition(&ori, &[0, 1, 0]).unwrap().pass);
    }

    #[test]
    fn reversed_word_fails() {
        let (data, ori) = config::bundled_group("a2").unwrap();
        let verdict = data.alignment_word_condition(&ori, &[1, 0]).unwrap();
        assert!(!verdict.pass);
        assert!(verdict.witness.unwrap().contains("< 0"));
    }

    #[test]
    fn non_reduced_word_is_rejected() {
        let (data, ori) = config::bundled_group("a2").unwrap();
        assert!(matches!(
            data.alignment_word_condition(&ori, &[0, 0]),
            Err(Error::NotReduced)
        ));
    }

    #[test]
    fn identity_passes_inversion_condition() {
        let (data, ori) = config::bundled_group("a2").unwrap();
        let universe = ball_roots(&data, 3);
        let verdict = data.alignment_inversion_condition(&ori, &data.identity(), &universe);
        assert!(verdict.pass);
        assert_eq!(verdict.universe_size, 3);
    }

    #[test]
    fn sortables_pass_inversion_condition() {
        let (data, ori) = config::bundled_group("a2").unwrap();
        let universe = ball_roots(&data, 3);
        for w in data.ball(3, DEFAULT_CAP).unwrap() {
            if data.is_omega_sortable(&ori, &w) {
                assert!(data.alignment_inversion_condition(&ori, &w, &universe).pass);
            }
        }
    }

    #[test]
    fn non_sortable_a2_element_fails_inversion_condition() {
        let (data, ori) = config::bundled_group("a2").unwrap();
        let universe = ball_roots(&data, 3);
        let s2s1 = data.element_of_word(&[1, 0]);
        let verdict = data.alignment_inversion_condition(&ori, &s2s1, &universe);
        assert!(!verdict.pass);
    }
}
