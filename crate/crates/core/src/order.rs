//! Weak-order lattice operations: meet, bounded join, reconstruction of an
//! element from its inversion set, and the positive-span triple test that
//! characterizes inversion sets.

use num_traits::Zero;

use crate::cartan::CoxeterData;
use crate::error::{Error, Result};
use crate::group::{Element, InversionSet};
use crate::roots::Root;
use crate::Rational;

/// Outcome of a bounded join search. `NoJoinWithinBound` is a verdict about
/// the bound, not a proof that no join exists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum JoinResult {
    Joined(Element),
    NoJoinWithinBound(u32),
}

impl JoinResult {
    pub fn joined(&self) -> Option<&Element> {
        match self {
            JoinResult::Joined(w) => Some(w),
            JoinResult::NoJoinWithinBound(_) => None,
        }
    }
}

impl CoxeterData {
    /// Greatest lower bound: peel shared left descents greedily; when none
    /// remain the meet is the identity prefix accumulated so far.
    pub fn meet(&self, u: &Element, v: &Element) -> Element {
        let mut u = u.clone();
        let mut v = v.clone();
        let mut word = Vec::new();
        loop {
            let shared = (0..self.rank())
                .find(|&s| self.is_left_descent(s, &u) && self.is_left_descent(s, &v));
            match shared {
                Some(s) => {
                    let g = self.gen(s);
                    u = self.mul(&g, &u);
                    v = self.mul(&g, &v);
                    word.push(s);
                }
                None => return self.element_of_word(&word),
            }
        }
    }

    pub fn meet_all(&self, elems: &[Element]) -> Result<Element> {
        let (first, rest) = elems.split_first().ok_or(Error::EmptyMeet)?;
        Ok(rest.iter().fold(first.clone(), |acc, w| self.meet(&acc, w)))
    }

    /// Join within the ball of radius `l`: collect the upper bounds of `u`
    /// and `v` there and meet them. Any upper bound in the ball dominates the
    /// true join, so the join itself lies in the ball and the meet is exact.
    pub fn join_bounded(&self, u: &Element, v: &Element, l: u32, cap: usize) -> Result<JoinResult> {
        let need = u.length().max(v.length());
        if l < need {
            return Err(Error::BoundTooSmall { bound: l, need });
        }
        let ball = self.ball(l, cap)?;
        self.join_all_in_ball(&[u.clone(), v.clone()], &ball, l)
    }

    pub fn join_all_bounded(&self, elems: &[Element], l: u32, cap: usize) -> Result<JoinResult> {
        let need = elems.iter().map(Element::length).max().unwrap_or(0);
        if l < need {
            return Err(Error::BoundTooSmall { bound: l, need });
        }
        let ball = self.ball(l, cap)?;
        self.join_all_in_ball(elems, &ball, l)
    }

    /// Same search against a precomputed ball.
    pub fn join_all_in_ball(
        &self,
        elems: &[Element],
        ball: &[Element],
        l: u32,
    ) -> Result<JoinResult> {
        let uppers: Vec<Element> = ball
            .iter()
            .filter(|w| elems.iter().all(|u| self.weak_leq(u, w)))
            .cloned()
            .collect();
        if uppers.is_empty() {
            Ok(JoinResult::NoJoinWithinBound(l))
        } else {
            Ok(JoinResult::Joined(self.meet_all(&uppers)?))
        }
    }

    /// Rebuild the unique element whose inversion set is `set`, by greedily
    /// peeling simple roots: pick a simple root in the set, reflect the rest
    /// by it, repeat. Success certifies the set; a nonempty remainder with no
    /// simple member, or a sign flip while peeling, certifies failure.
    pub fn reconstruct(&self, set: &InversionSet) -> Result<Element> {
        for beta in set {
            if !beta.is_positive() {
                return Err(Error::NegativeRootProduced);
            }
        }
        let mut current: Vec<Root> = set.iter().cloned().collect();
        let mut word = Vec::new();
        while !current.is_empty() {
            let simple = current
                .iter()
                .position(|beta| beta.coords().iter().sum::<i64>() == 1 && beta.is_positive());
            let Some(idx) = simple else {
                return Err(Error::PeelStuck);
            };
            let s = current[idx]
                .coords()
                .iter()
                .position(|&c| c == 1)
                .expect("simple root has a unit coordinate");
            current.swap_remove(idx);
            let mut next = Vec::with_capacity(current.len());
            for beta in &current {
                let image = self.simple_action(s, beta);
                if !image.is_positive() {
                    return Err(Error::NegativeRootProduced);
                }
                next.push(image);
            }
            word.push(s);
            current = next;
        }
        Ok(self.element_of_word(&word))
    }

    pub fn is_inversion_set(&self, set: &InversionSet) -> bool {
        self.reconstruct(set).is_ok()
    }

    /// Triple condition over a finite universe of positive roots: whenever
    /// the middle root of a triple lies in the positive span of the outer
    /// two, the set must not meet the triple in exactly the middle, nor in
    /// exactly the two outer roots.
    pub fn triple_condition_check(&self, set: &InversionSet, universe: &[Root]) -> bool {
        let triples = positive_span_triples(universe);
        for &(r, s, t) in &triples {
            let in_r = set.contains(&universe[r]);
            let in_s = set.contains(&universe[s]);
            let in_t = set.contains(&universe[t]);
            if (in_s && !in_r && !in_t) || (in_r && in_t && !in_s) {
                return false;
            }
        }
        true
    }
}

/// Coefficients (a, b) with a*r + b*t = s, if they exist and are unique.
pub fn span_coefficients(s: &Root, r: &Root, t: &Root) -> Option<(Rational, Rational)> {
    let n = s.coords().len();
    let mut pivot = None;
    'outer: for i in 0..n {
        for j in (i + 1)..n {
            let det = r.coords()[i] as i128 * t.coords()[j] as i128
                - r.coords()[j] as i128 * t.coords()[i] as i128;
            if det != 0 {
                pivot = Some((i, j));
                break 'outer;
            }
        }
    }
    let (i, j) = pivot?;
    let det = Rational::from_integer(r.coords()[i] * t.coords()[j] - r.coords()[j] * t.coords()[i]);
    let a = Rational::from_integer(s.coords()[i] * t.coords()[j] - s.coords()[j] * t.coords()[i]) / det;
    let b = Rational::from_integer(r.coords()[i] * s.coords()[j] - r.coords()[j] * s.coords()[i]) / det;
    for k in 0..n {
        let lhs = a * Rational::from_integer(r.coords()[k])
            + b * Rational::from_integer(t.coords()[k]);
        if lhs != Rational::from_integer(s.coords()[k]) {
            return None;
        }
    }
    Some((a, b))
}

/// True iff s = a*r + b*t with a, b > 0.
pub fn in_positive_span(s: &Root, r: &Root, t: &Root) -> bool {
    match span_coefficients(s, r, t) {
        Some((a, b)) => a > Rational::zero() && b > Rational::zero(),
        None => false,
    }
}

/// Indices (r, s, t) with r < t, s distinct from both, and universe[s] in the
/// positive span of universe[r] and universe[t].
pub fn positive_span_triples(universe: &[Root]) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for r in 0..universe.len() {
        for t in (r + 1)..universe.len() {
            for s in 0..universe.len() {
                if s == r || s == t {
                    continue;
                }
                if in_positive_span(&universe[s], &universe[r], &universe[t]) {
                    out.push((r, s, t));
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config;
    use crate::group::DEFAULT_CAP;

    #[test]
    fn meet_examples() {
        let (data, _) = config::bundled_group("a2").unwrap();
        let e = data.identity();
        let w = data.element_of_word(&[0, 1, 0]);
        assert_eq!(data.meet(&w, &e), e);
        assert_eq!(data.meet(&w, &w), w);
        let s1s2 = data.element_of_word(&[0, 1]);
        let s2s1 = data.element_of_word(&[1, 0]);
        assert!(data.meet(&s1s2, &s2s1).is_identity());
        assert_eq!(data.meet(&w, &s1s2), s1s2);
    }

    #[test]
    fn meet_is_greatest_lower_bound_on_a2() {
        let (data, _) = config::bundled_group("a2").unwrap();
        let ball = data.ball(3, DEFAULT_CAP).unwrap();
        for u in &ball {
            for v in &ball {
                let m = data.meet(u, v);
                assert!(data.weak_leq(&m, u) && data.weak_leq(&m, v));
                for x in &ball {
                    if data.weak_leq(x, u) && data.weak_leq(x, v) {
                        assert!(data.weak_leq(x, &m));
                    }
                }
            }
        }
    }

    #[test]
    fn join_examples() {
        let (data, _) = config::bundled_group("a2").unwrap();
        let s1 = data.gen(0);
        let s2 = data.gen(1);
        let top = data.element_of_word(&[0, 1, 0]);
        assert_eq!(
            data.join_bounded(&s1, &s2, 3, DEFAULT_CAP).unwrap(),
            JoinResult::Joined(top)
        );
        let e = data.identity();
        assert_eq!(
            data.join_bounded(&s1, &e, 3, DEFAULT_CAP).unwrap(),
            JoinResult::Joined(s1.clone())
        );
        assert!(matches!(
            data.join_bounded(&s1, &e, 0, DEFAULT_CAP),
            Err(Error::BoundTooSmall { .. })
        ));
    }

    #[test]
    fn no_join_in_infinite_dihedral() {
        let (data, _) = config::bundled_group("dihedral-infinite").unwrap();
        let s = data.gen(0);
        let t = data.gen(1);
        assert_eq!(
            data.join_bounded(&s, &t, 12, DEFAULT_CAP).unwrap(),
            JoinResult::NoJoinWithinBound(12)
        );
    }

    #[test]
    fn reconstruct_examples() {
        let (data, _) = config::bundled_group("a2").unwrap();
        assert!(data.reconstruct(&InversionSet::new()).unwrap().is_identity());
        let set = InversionSet::from([Root::simple(2, 1), Root::new(vec![1, 1])]);
        assert_eq!(data.reconstruct(&set).unwrap(), data.element_of_word(&[1, 0]));
        // Two simple roots without the middle one are not an inversion set.
        let bad = InversionSet::from([Root::simple(2, 0), Root::simple(2, 1)]);
        assert!(matches!(data.reconstruct(&bad), Err(Error::PeelStuck)));
        assert!(!data.is_inversion_set(&bad));
    }

    #[test]
    fn reconstruct_round_trips_on_ball() {
        let (data, _) = config::bundled_group("hyperbolic-b3-mutation").unwrap();
        for w in data.ball(5, DEFAULT_CAP).unwrap() {
            assert_eq!(data.reconstruct(&data.inversions(&w)).unwrap(), w);
        }
    }

    #[test]
    fn triple_condition_examples() {
        let (data, _) = config::bundled_group("a2").unwrap();
        let universe = vec![
            Root::simple(2, 0),
            Root::new(vec![1, 1]),
            Root::simple(2, 1),
        ];
        assert!(data.triple_condition_check(&InversionSet::new(), &universe));
        let bad = InversionSet::from([Root::simple(2, 0), Root::simple(2, 1)]);
        assert!(!data.triple_condition_check(&bad, &universe));
        for w in data.ball(3, DEFAULT_CAP).unwrap() {
            assert!(data.triple_condition_check(&data.inversions(&w), &universe));
        }
    }

    #[test]
    fn span_solver() {
        let r = Root::new(vec![1, 0]);
        let t = Root::new(vec![0, 1]);
        let s = Root::new(vec![1, 1]);
        assert!(in_positive_span(&s, &r, &t));
        assert!(!in_positive_span(&r, &s, &t));
        let (a, b) = span_coefficients(&s, &r, &t).unwrap();
        assert_eq!((a, b), (Rational::from_integer(1), Rational::from_integer(1)));
    }
}
