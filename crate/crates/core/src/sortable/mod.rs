//! Sorting words and sortability for arbitrary diagram orientations: the
//! feasible-set family L(w), its maximal member J(w), layered sorting words,
//! the downward projection onto sortable elements, and the factorization
//! generating data.

mod alignment;
mod antimatroid;

pub use alignment::{AlignmentVerdict, InversionAlignment};
pub use antimatroid::{verify_antimatroid, AntimatroidReport, Verdict};

use std::collections::BTreeMap;
use std::collections::HashSet;

use crate::cartan::{CoxeterData, GenSet, Orientation};
use crate::error::{Error, Result};
use crate::group::Element;
use crate::matrix::IntMat;
use crate::Word;

/// The sets J1, J2, ... produced by sorting; nesting is the sortability
/// certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LayerSequence {
    pub layers: Vec<GenSet>,
}

impl LayerSequence {
    pub fn is_nested(&self) -> bool {
        self.layers.windows(2).all(|w| w[1].is_subset(w[0]))
    }
}

/// A c-sorting word together with its positions in the repeated word and the
/// letter sets between dividers.
#[derive(Clone, Debug)]
pub struct CSortingWord {
    pub letters: Word,
    /// Absolute positions in the infinite repetition of the c-word.
    pub positions: Vec<usize>,
    pub layers: Vec<GenSet>,
}

impl CSortingWord {
    pub fn is_sortable(&self) -> bool {
        self.layers.windows(2).all(|w| w[1].is_subset(w[0]))
    }
}

/// Multiset of layer-size compositions over all length-additive
/// factorizations into nonempty acyclic factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorizationPolynomial {
    pub compositions: BTreeMap<Vec<u32>, u64>,
}

impl FactorizationPolynomial {
    pub fn total(&self) -> u64 {
        self.compositions.values().sum()
    }

    pub fn multiplicity(&self, comp: &[u32]) -> u64 {
        self.compositions.get(comp).copied().unwrap_or(0)
    }

    /// Lexicographically greatest composition.
    pub fn dominant(&self) -> Option<&Vec<u32>> {
        self.compositions.keys().max()
    }
}

impl CoxeterData {
    /// Every acyclic subset J with c(J) weakly below w, ascending by bitmask.
    pub fn enumerate_l(&self, ori: &Orientation, w: &Element) -> Result<Vec<GenSet>> {
        if self.rank() > 12 {
            return Err(Error::RankTooLarge(self.rank()));
        }
        let mut out = Vec::new();
        for j in GenSet::subsets(self.full_set()) {
            if !ori.is_acyclic(j) {
                continue;
            }
            let c = self.element_of_word(&ori.coxeter_word(j)?);
            if self.weak_leq(&c, w) {
                out.push(j);
            }
        }
        Ok(out)
    }

    /// The maximal acyclic J with c(J) <= w, grown greedily. The exchange
    /// property of L(w) makes the result independent of insertion order; the
    /// default scan is by ascending index.
    pub fn support_j(&self, ori: &Orientation, w: &Element) -> GenSet {
        let order: Vec<usize> = (0..self.rank()).collect();
        self.support_j_with_order(ori, w, &order)
    }

    /// Greedy growth along a caller-chosen scan order.
    pub fn support_j_with_order(
        &self,
        ori: &Orientation,
        w: &Element,
        order: &[usize],
    ) -> GenSet {
        let mut j = GenSet::EMPTY;
        loop {
            let mut grew = false;
            for &s in order {
                if j.contains(s) {
                    continue;
                }
                let cand = j.insert(s);
                if !ori.is_acyclic(cand) {
                    continue;
                }
                let word = ori.coxeter_word(cand).expect("candidate is acyclic");
                if self.weak_leq(&self.element_of_word(&word), w) {
                    j = cand;
                    grew = true;
                }
            }
            if !grew {
                return j;
            }
        }
    }

    /// Layered sorting word: repeatedly peel the maximal layer J(w_i) and
    /// multiply by the inverse of its canonical word. The concatenation is a
    /// reduced word for w.
    pub fn omega_sorting_word(&self, ori: &Orientation, w: &Element) -> (Word, LayerSequence) {
        let mut word = Word::new();
        let mut layers = Vec::new();
        let mut current = w.clone();
        while !current.is_identity() {
            let j = self.support_j(ori, &current);
            debug_assert!(!j.is_empty());
            let cw = ori.coxeter_word(j).expect("layer is acyclic");
            let c = self.element_of_word(&cw);
            current = self.mul(&self.inverse(&c), &current);
            word.extend_from_slice(&cw);
            layers.push(j);
        }
        debug_assert_eq!(word.len(), w.length() as usize);
        (word, LayerSequence { layers })
    }

    /// Sortable iff the layers weakly decrease under inclusion.
    pub fn is_omega_sortable(&self, ori: &Orientation, w: &Element) -> bool {
        self.omega_sorting_word(ori, w).1.is_nested()
    }

    /// Greedy subword scan of the infinite repetition of `c_word`: a letter
    /// is taken exactly when it is a left descent of the remaining quotient.
    pub fn c_sorting_word(&self, w: &Element, c_word: &[usize]) -> CSortingWord {
        debug_assert!(!c_word.is_empty());
        debug_assert!({
            let letters = GenSet::from_indices(c_word.iter().copied());
            letters.len() == c_word.len()
                && GenSet::from_indices(self.canonical_word(w)).is_subset(letters)
        });
        let mut remaining = w.clone();
        let mut letters = Word::new();
        let mut positions = Vec::new();
        let mut layers = Vec::new();
        let mut block = 0usize;
        while !remaining.is_identity() {
            let mut layer = GenSet::EMPTY;
            for (offset, &s) in c_word.iter().enumerate() {
                if self.is_left_descent(s, &remaining) {
                    remaining = self.mul(&self.gen(s), &remaining);
                    letters.push(s);
                    positions.push(block * c_word.len() + offset);
                    layer = layer.insert(s);
                }
            }
            debug_assert!(!layer.is_empty());
            layers.push(layer);
            block += 1;
        }
        CSortingWord { letters, positions, layers }
    }

    pub fn is_c_sortable(&self, w: &Element, c_word: &[usize]) -> bool {
        self.c_sorting_word(w, c_word).is_sortable()
    }

    /// Downward projection: with J = J(w) and c = c(J), recurse as
    /// c * project(c^{-1} w_J), fixing the identity.
    pub fn pi_down_omega(&self, ori: &Orientation, w: &Element) -> Element {
        let mut prefix = self.identity();
        let mut current = w.clone();
        while !current.is_identity() {
            let j = self.support_j(ori, &current);
            let c = self.element_of_word(&ori.coxeter_word(j).expect("layer is acyclic"));
            let wj = self.parabolic_proj(&current, j);
            current = self.mul(&self.inverse(&c), &wj);
            prefix = self.mul(&prefix, &c);
        }
        prefix
    }

    /// Stepwise projection along an acyclic c-word: grow J one letter at a
    /// time, testing w against the grown prefix times the next letter, then
    /// recurse on the projected quotient.
    pub fn pi_down_c(&self, w: &Element, c_word: &[usize]) -> Element {
        let mut prefix = self.identity();
        let mut current = w.clone();
        while !current.is_identity() {
            let mut j: Word = Vec::new();
            for &s in c_word {
                let mut cand = j.clone();
                cand.push(s);
                if self.weak_leq(&self.element_of_word(&cand), &current) {
                    j = cand;
                }
            }
            debug_assert!(!j.is_empty());
            let jset = GenSet::from_indices(j.iter().copied());
            let c = self.element_of_word(&j);
            let quotient = self.mul(&self.inverse(&c), &current);
            current = self.parabolic_proj(&quotient, jset);
            prefix = self.mul(&prefix, &c);
        }
        prefix
    }

    /// All elements weakly below w, by depth-first search over reduced-word
    /// prefixes with deduplication.
    pub fn lower_ideal(&self, w: &Element) -> Vec<Element> {
        let mut seen: HashSet<IntMat> = HashSet::new();
        let mut out = Vec::new();
        // Stack holds (prefix, quotient) with prefix * quotient = w.
        let mut stack = vec![(self.identity(), w.clone())];
        seen.insert(self.identity().fwd().clone());
        while let Some((u, q)) = stack.pop() {
            for s in 0..self.rank() {
                if !self.is_left_descent(s, &q) {
                    continue;
                }
                let g = self.gen(s);
                let u2 = self.mul(&u, &g);
                if seen.insert(u2.fwd().clone()) {
                    let q2 = self.mul(&g, &q);
                    stack.push((u2, q2));
                }
            }
            out.push(u);
        }
        out.sort();
        out
    }

    /// Brute-force oracle: enumerate everything weakly below w, keep the
    /// sortable elements, and verify they have a unique maximum.
    pub fn max_sortable_below(&self, ori: &Orientation, w: &Element) -> Result<Element> {
        let sortables: Vec<Element> = self
            .lower_ideal(w)
            .into_iter()
            .filter(|u| self.is_omega_sortable(ori, u))
            .collect();
        let top_len = sortables
            .iter()
            .map(Element::length)
            .max()
            .expect("identity is always sortable");
        let longest: Vec<&Element> = sortables
            .iter()
            .filter(|u| u.length() == top_len)
            .collect();
        if longest.len() != 1 {
            return Err(Error::NonUniqueMaximum(self.fmt_element(w)));
        }
        let max = longest[0];
        for u in &sortables {
            if !self.weak_leq(u, max) {
                return Err(Error::NonUniqueMaximum(self.fmt_element(w)));
            }
        }
        Ok(max.clone())
    }

    /// Whether the ball of radius `l` contains no common upper bound of the
    /// layer elements c(P) and c(Q). Requires the oriented-path hypothesis:
    /// some p in P reaches Q through P, and some q in Q reaches back through
    /// Q.
    pub fn check_no_chains(
        &self,
        ori: &Orientation,
        p: GenSet,
        q: GenSet,
        l: u32,
        cap: usize,
    ) -> Result<bool> {
        if p.is_empty() || q.is_empty() {
            return Err(Error::HypothesisNotSatisfied("P and Q must be nonempty".into()));
        }
        if !p.intersection(q).is_empty() {
            return Err(Error::HypothesisNotSatisfied("P and Q must be disjoint".into()));
        }
        if !ori.is_acyclic(p) || !ori.is_acyclic(q) {
            return Err(Error::HypothesisNotSatisfied("P and Q must be acyclic".into()));
        }
        if !no_chains_hypothesis(ori, p, q) {
            return Err(Error::HypothesisNotSatisfied(
                "no oriented round trip between P and Q".into(),
            ));
        }
        let ball = self.ball(l, cap)?;
        self.check_no_chains_in_ball(ori, p, q, &ball)
    }

    /// Same check against a precomputed ball. The hypothesis is re-verified.
    pub fn check_no_chains_in_ball(
        &self,
        ori: &Orientation,
        p: GenSet,
        q: GenSet,
        ball: &[Element],
    ) -> Result<bool> {
        if !no_chains_hypothesis(ori, p, q) {
            return Err(Error::HypothesisNotSatisfied(
                "no oriented round trip between P and Q".into(),
            ));
        }
        let cp = self.element_of_word(&ori.coxeter_word(p)?);
        let cq = self.element_of_word(&ori.coxeter_word(q)?);
        Ok(ball
            .iter()
            .all(|w| !(self.weak_leq(&cp, w) && self.weak_leq(&cq, w))))
    }

    /// Disjoint nonempty acyclic pairs satisfying the oriented-path
    /// hypothesis, ascending by bitmask.
    pub fn no_chains_instances(&self, ori: &Orientation) -> Vec<(GenSet, GenSet)> {
        let mut out = Vec::new();
        for p in GenSet::subsets(self.full_set()) {
            if p.is_empty() || !ori.is_acyclic(p) {
                continue;
            }
            for q in GenSet::subsets(self.full_set().difference(p)) {
                if q.is_empty() || !ori.is_acyclic(q) {
                    continue;
                }
                if no_chains_hypothesis(ori, p, q) {
                    out.push((p, q));
                }
            }
        }
        out
    }

    /// Every length-additive factorization of w into nonempty acyclic layer
    /// factors, recorded as the multiset of layer-size compositions.
    pub fn factorization_polynomial(
        &self,
        ori: &Orientation,
        w: &Element,
        max_terms: usize,
    ) -> Result<FactorizationPolynomial> {
        let mut compositions = BTreeMap::new();
        let mut prefix = Vec::new();
        let mut count = 0usize;
        self.factorizations_rec(ori, w, &mut prefix, &mut compositions, &mut count, max_terms)?;
        Ok(FactorizationPolynomial { compositions })
    }

    fn factorizations_rec(
        &self,
        ori: &Orientation,
        w: &Element,
        prefix: &mut Vec<u32>,
        out: &mut BTreeMap<Vec<u32>, u64>,
        count: &mut usize,
        max_terms: usize,
    ) -> Result<()> {
        if w.is_identity() {
            *count += 1;
            if *count > max_terms {
                return Err(Error::TooManyTerms(max_terms));
            }
            *out.entry(prefix.clone()).or_insert(0) += 1;
            return Ok(());
        }
        for j in self.enumerate_l(ori, w)? {
            if j.is_empty() {
                continue;
            }
            let c = self.element_of_word(&ori.coxeter_word(j)?);
            let rest = self.mul(&self.inverse(&c), w);
            prefix.push(j.len() as u32);
            self.factorizations_rec(ori, &rest, prefix, out, count, max_terms)?;
            prefix.pop();
        }
        Ok(())
    }
}

/// Oriented-path hypothesis: p reaches q inside P + {q} and q reaches p
/// inside Q + {p}, for some p in P, q in Q.
fn no_chains_hypothesis(ori: &Orientation, p: GenSet, q: GenSet) -> bool {
    for pp in p.iter() {
        for qq in q.iter() {
            if reaches(ori, pp, qq, p.insert(qq)) && reaches(ori, qq, pp, q.insert(pp)) {
                return true;
            }
        }
    }
    false
}

/// Directed path from `from` to `to` along stored arrows inside `within`.
fn reaches(ori: &Orientation, from: usize, to: usize, within: GenSet) -> bool {
    let mut seen = GenSet::singleton(from);
    let mut stack = vec![from];
    while let Some(x) = stack.pop() {
        for t in within.iter() {
            if ori.arrow(x, t) == 1 && !seen.contains(t) {
                if t == to {
                    return true;
                }
                seen = seen.insert(t);
                stack.push(t);
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config;
    use crate::group::DEFAULT_CAP;

    #[test]
    fn enumerate_l_examples() {
        let (data, ori) = config::bundled_group("a2").unwrap();
        let e = data.identity();
        assert_eq!(data.enumerate_l(&ori, &e).unwrap(), vec![GenSet::EMPTY]);
        let top = data.element_of_word(&[0, 1, 0]);
        assert_eq!(data.enumerate_l(&ori, &top).unwrap().len(), 4);

        let (fam, fam_ori, word) = config::s5_family(1).unwrap();
        let w = fam.element_of_word(&word);
        let p = fam.index_of("p").unwrap();
        let q = fam.index_of("q1").unwrap();
        assert_eq!(
            fam.enumerate_l(&fam_ori, &w).unwrap(),
            vec![
                GenSet::EMPTY,
                GenSet::singleton(p),
                GenSet::from_indices([p, q])
            ]
        );
    }

    #[test]
    fn support_j_examples() {
        let (data, ori) = config::bundled_group("hyperbolic-b3-mutation").unwrap();
        assert!(data.support_j(&ori, &data.identity()).is_empty());
        let q = data.index_of("q").unwrap();
        let r = data.index_of("r").unwrap();
        let v = data.element_of_word(&[q, r, q]);
        assert_eq!(data.support_j(&ori, &v), GenSet::from_indices([q, r]));

        for d in 1..=3 {
            let (fam, fam_ori, word) = config::s5_family(d).unwrap();
            let w = fam.element_of_word(&word);
            let expected = GenSet::from_indices(0..=d);
            assert_eq!(fam.support_j(&fam_ori, &w), expected);
        }
    }

    #[test]
    fn sorting_word_layers() {
        let (data, ori) = config::bundled_group("a2").unwrap();
        let e = data.identity();
        let (word, layers) = data.omega_sorting_word(&ori, &e);
        assert!(word.is_empty() && layers.layers.is_empty());

        let top = data.element_of_word(&[0, 1, 0]);
        let (word, layers) = data.omega_sorting_word(&ori, &top);
        assert_eq!(word, vec![0, 1, 0]);
        assert_eq!(
            layers.layers,
            vec![GenSet::from_indices([0, 1]), GenSet::singleton(0)]
        );
        assert!(layers.is_nested());

        let (fam, fam_ori, fam_word) = config::s5_family(1).unwrap();
        let w = fam.element_of_word(&fam_word);
        let (word, layers) = fam.omega_sorting_word(&fam_ori, &w);
        assert_eq!(word, fam_word);
        assert!(!layers.is_nested());
        assert!(!fam.is_omega_sortable(&fam_ori, &w));
    }

    #[test]
    fn sortability_examples() {
        let (data, ori) = config::bundled_group("hyperbolic-b3-mutation").unwrap();
        let q = data.index_of("q").unwrap();
        let r = data.index_of("r").unwrap();
        let v = data.element_of_word(&[q, r, q]);
        assert!(data.is_omega_sortable(&ori, &v));
        assert!(data.is_omega_sortable(&ori, &data.identity()));
    }

    #[test]
    fn c_sorting_examples() {
        let (data, _) = config::bundled_group("a2").unwrap();
        let c = data.element_of_word(&[0, 1]);
        let sw = data.c_sorting_word(&c, &[0, 1]);
        assert_eq!(sw.letters, vec![0, 1]);
        assert_eq!(sw.layers, vec![GenSet::from_indices([0, 1])]);
        assert!(sw.is_sortable());

        let top = data.element_of_word(&[0, 1, 0]);
        let sw = data.c_sorting_word(&top, &[0, 1]);
        assert_eq!(sw.letters, vec![0, 1, 0]);
        assert!(sw.is_sortable());

        let s2s1 = data.element_of_word(&[1, 0]);
        let sw = data.c_sorting_word(&s2s1, &[0, 1]);
        assert_eq!(sw.letters, vec![1, 0]);
        assert_eq!(sw.layers, vec![GenSet::singleton(1), GenSet::singleton(0)]);
        assert!(!sw.is_sortable());

        // Five of the six elements are sortable for this choice.
        let ball = data.ball(3, DEFAULT_CAP).unwrap();
        let count = ball
            .iter()
            .filter(|w| data.is_c_sortable(w, &[0, 1]))
            .count();
        assert_eq!(count, 5);
    }

    #[test]
    fn pi_down_examples() {
        let (data, ori) = config::bundled_group("a2").unwrap();
        assert!(data.pi_down_omega(&ori, &data.identity()).is_identity());
        let s2s1 = data.element_of_word(&[1, 0]);
        assert_eq!(data.pi_down_omega(&ori, &s2s1), data.gen(1));
        assert_eq!(data.pi_down_c(&s2s1, &[0, 1]), data.gen(1));
        let c = data.element_of_word(&[0, 1]);
        assert_eq!(data.pi_down_c(&c, &[0, 1]), c);
        // Sortable elements are fixed.
        for w in data.ball(3, DEFAULT_CAP).unwrap() {
            if data.is_omega_sortable(&ori, &w) {
                assert_eq!(data.pi_down_omega(&ori, &w), w);
            }
        }
    }

    #[test]
    fn max_sortable_below_examples() {
        let (data, ori) = config::bundled_group("a2").unwrap();
        assert!(data
            .max_sortable_below(&ori, &data.identity())
            .unwrap()
            .is_identity());
        for w in data.ball(3, DEFAULT_CAP).unwrap() {
            assert_eq!(
                data.max_sortable_below(&ori, &w).unwrap(),
                data.pi_down_omega(&ori, &w)
            );
        }
        let (fam, fam_ori, word) = config::s5_family(1).unwrap();
        let w = fam.element_of_word(&word);
        let pq = fam.element_of_word(&word[..2]);
        assert_eq!(fam.max_sortable_below(&fam_ori, &w).unwrap(), pq);
    }

    #[test]
    fn no_chains_affine_instance() {
        let (data, ori) = config::bundled_group("affine-a2-cyclic").unwrap();
        let p = data.index_of("p").unwrap();
        let q = data.index_of("q").unwrap();
        let r = data.index_of("r").unwrap();
        let res = data
            .check_no_chains(&ori, GenSet::singleton(r), GenSet::from_indices([p, q]), 12, DEFAULT_CAP)
            .unwrap();
        assert!(res);
        // Degenerate and hypothesis-free inputs are rejected.
        assert!(matches!(
            data.check_no_chains(&ori, GenSet::EMPTY, GenSet::singleton(q), 4, DEFAULT_CAP),
            Err(Error::HypothesisNotSatisfied(_))
        ));
        assert!(matches!(
            data.check_no_chains(
                &ori,
                GenSet::singleton(p),
                GenSet::singleton(p),
                4,
                DEFAULT_CAP
            ),
            Err(Error::HypothesisNotSatisfied(_))
        ));
    }

    #[test]
    fn factorization_examples() {
        let (data, ori) = config::bundled_group("a2").unwrap();
        let e = data.identity();
        let f = data.factorization_polynomial(&ori, &e, 1000).unwrap();
        assert_eq!(f.total(), 1);
        assert_eq!(f.multiplicity(&[]), 1);

        let c = data.element_of_word(&[0, 1]);
        let f = data.factorization_polynomial(&ori, &c, 1000).unwrap();
        assert_eq!(f.multiplicity(&[2]), 1);
        assert_eq!(f.multiplicity(&[1, 1]), 1);
        assert_eq!(f.dominant().unwrap(), &vec![2]);

        let (fam, fam_ori, word) = config::s5_family(1).unwrap();
        let w = fam.element_of_word(&word);
        let f = fam.factorization_polynomial(&fam_ori, &w, 1000).unwrap();
        let (_, layers) = fam.omega_sorting_word(&fam_ori, &w);
        let comp: Vec<u32> = layers.layers.iter().map(|j| j.len() as u32).collect();
        assert_eq!(comp, vec![2, 1]);
        assert_eq!(f.multiplicity(&comp), 1);
        assert_eq!(f.dominant().unwrap(), &comp);
        assert_eq!(f.total(), 3);
    }

    #[test]
    fn factorization_cap() {
        let (data, ori) = config::bundled_group("a3").unwrap();
        let top = data.ball(6, DEFAULT_CAP).unwrap().last().unwrap().clone();
        assert!(matches!(
            data.factorization_polynomial(&ori, &top, 3),
            Err(Error::TooManyTerms(3))
        ));
    }
}
