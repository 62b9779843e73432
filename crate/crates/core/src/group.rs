//! Group elements as pairs of unimodular integer matrices, with length,
//! reduced words, inversion sets, weak-order comparison, parabolic
//! projection, and breadth-first ball enumeration.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashSet};

use crate::cartan::{CoxeterData, GenSet};
use crate::error::{Error, Result};
use crate::matrix::IntMat;
use crate::roots::Root;

/// Default guardrail for ball enumeration.
pub const DEFAULT_CAP: usize = 1_000_000;

/// Finite set of positive roots; cardinality equals the length of the owner.
pub type InversionSet = BTreeSet<Root>;

/// A group element: `fwd` columns are the images of the simple roots, `inv`
/// is the matrix of the inverse element, and the length is cached.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Element {
    fwd: IntMat,
    inv: IntMat,
    len: u32,
}

impl Element {
    pub fn length(&self) -> u32 {
        self.len
    }

    pub fn is_identity(&self) -> bool {
        self.len == 0
    }

    /// Image of a root under this element.
    pub fn act(&self, x: &Root) -> Root {
        Root::new(self.fwd.apply(x.coords()))
    }

    /// Image of a root under the inverse element.
    pub fn act_inv(&self, x: &Root) -> Root {
        Root::new(self.inv.apply(x.coords()))
    }

    pub(crate) fn fwd(&self) -> &IntMat {
        &self.fwd
    }
}

impl PartialOrd for Element {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Element {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len
            .cmp(&other.len)
            .then_with(|| self.fwd.cmp(&other.fwd))
    }
}

impl std::fmt::Debug for Element {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Element(len={}, fwd={:?})", self.len, self.fwd)
    }
}

impl CoxeterData {
    pub fn identity(&self) -> Element {
        let n = self.rank();
        Element { fwd: IntMat::identity(n), inv: IntMat::identity(n), len: 0 }
    }

    pub fn gen(&self, s: usize) -> Element {
        let m = self.gen_mat(s).clone();
        Element { fwd: m.clone(), inv: m, len: 1 }
    }

    pub fn mul(&self, u: &Element, v: &Element) -> Element {
        let fwd = u.fwd.mul(&v.fwd);
        let inv = v.inv.mul(&u.inv);
        let len = self.length_of(&inv);
        Element { fwd, inv, len }
    }

    pub fn inverse(&self, u: &Element) -> Element {
        Element { fwd: u.inv.clone(), inv: u.fwd.clone(), len: u.len }
    }

    pub fn element_of_word(&self, word: &[usize]) -> Element {
        let mut fwd = IntMat::identity(self.rank());
        let mut inv = IntMat::identity(self.rank());
        for &s in word {
            fwd = fwd.mul(self.gen_mat(s));
            inv = self.gen_mat(s).mul(&inv);
        }
        let len = self.length_of(&inv);
        Element { fwd, inv, len }
    }

    /// s is a left descent of w iff w^{-1} alpha_s is negative.
    pub fn is_left_descent(&self, s: usize, w: &Element) -> bool {
        w.inv.col_is_nonpositive(s)
    }

    /// Length by peeling left descents off the inverse matrix.
    fn length_of(&self, inv: &IntMat) -> u32 {
        let mut inv = inv.clone();
        let mut len = 0u32;
        loop {
            let descent = (0..self.rank()).find(|&s| inv.col_is_nonpositive(s));
            match descent {
                Some(s) => {
                    inv = inv.mul(self.gen_mat(s));
                    len += 1;
                }
                None => {
                    debug_assert!(inv.is_identity());
                    return len;
                }
            }
        }
    }

    /// The reduced word obtained by repeatedly peeling the smallest-index
    /// left descent.
    pub fn canonical_word(&self, w: &Element) -> Vec<usize> {
        let mut inv = w.inv.clone();
        let mut word = Vec::with_capacity(w.len as usize);
        loop {
            let descent = (0..self.rank()).find(|&s| inv.col_is_nonpositive(s));
            match descent {
                Some(s) => {
                    word.push(s);
                    inv = inv.mul(self.gen_mat(s));
                }
                None => {
                    debug_assert!(inv.is_identity());
                    return word;
                }
            }
        }
    }

    pub fn fmt_element(&self, w: &Element) -> String {
        if w.is_identity() {
            "e".to_string()
        } else {
            self.fmt_word(&self.canonical_word(w))
        }
    }

    /// Positive roots inverted by w, read off prefixes of a reduced word.
    pub fn inversions(&self, w: &Element) -> InversionSet {
        let word = self.canonical_word(w);
        let mut out = InversionSet::new();
        let mut prefix = IntMat::identity(self.rank());
        for &a in &word {
            let beta = Root::new(prefix.apply(Root::simple(self.rank(), a).coords()));
            debug_assert!(beta.is_positive());
            out.insert(beta);
            prefix = prefix.mul(self.gen_mat(a));
        }
        debug_assert_eq!(out.len(), w.len as usize);
        out
    }

    /// Right weak order, by shared-descent peeling: u <= w iff every left
    /// descent taken off u can be taken off w as well.
    pub fn weak_leq(&self, u: &Element, w: &Element) -> bool {
        if u.len > w.len {
            return false;
        }
        let mut u_inv = u.inv.clone();
        let mut w_inv = w.inv.clone();
        let mut remaining = u.len;
        while remaining > 0 {
            let s = (0..self.rank())
                .find(|&s| u_inv.col_is_nonpositive(s))
                .expect("non-identity element has a left descent");
            if !w_inv.col_is_nonpositive(s) {
                return false;
            }
            u_inv = u_inv.mul(self.gen_mat(s));
            w_inv = w_inv.mul(self.gen_mat(s));
            remaining -= 1;
        }
        true
    }

    /// The projection onto the standard parabolic subgroup on J: peel left
    /// descents lying in J until none remain. Each peel preserves
    /// J-membership of the remaining J-supported inversions, so the peeled
    /// word multiplies to the element whose inversion set is exactly the
    /// J-supported part of inv(w).
    pub fn parabolic_proj(&self, w: &Element, j: GenSet) -> Element {
        let mut inv = w.inv.clone();
        let mut word = Vec::new();
        loop {
            let descent = j.iter().find(|&s| inv.col_is_nonpositive(s));
            match descent {
                Some(s) => {
                    word.push(s);
                    inv = inv.mul(self.gen_mat(s));
                }
                None => return self.element_of_word(&word),
            }
        }
    }

    /// All elements of length at most `l`, by breadth-first search over right
    /// covers, sorted by (length, matrix).
    pub fn ball(&self, l: u32, cap: usize) -> Result<Vec<Element>> {
        let mut seen: HashSet<IntMat> = HashSet::new();
        let mut out = vec![self.identity()];
        seen.insert(out[0].fwd.clone());
        let mut frontier = out.clone();
        for len in 1..=l {
            let mut next = Vec::new();
            for w in &frontier {
                for s in 0..self.rank() {
                    // ws covers w iff w sends alpha_s to a positive root.
                    if !w.fwd.col_is_nonnegative(s) {
                        continue;
                    }
                    let fwd = w.fwd.mul(self.gen_mat(s));
                    if seen.contains(&fwd) {
                        continue;
                    }
                    if seen.len() >= cap {
                        return Err(Error::BallTooLarge(cap));
                    }
                    let inv = self.gen_mat(s).mul(&w.inv);
                    seen.insert(fwd.clone());
                    next.push(Element { fwd, inv, len });
                }
            }
            if next.is_empty() {
                break;
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out.sort();
        Ok(out)
    }

    /// True when the ball of the given bound already contains the whole
    /// group (no element achieves the bound... the frontier died earlier).
    pub fn ball_is_whole_group(&self, ball: &[Element], l: u32) -> bool {
        ball.iter().all(|w| w.length() < l)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config;

    #[test]
    fn involution_and_braid() {
        let (data, _) = config::bundled_group("a2").unwrap();
        let s1 = data.gen(0);
        assert!(data.mul(&s1, &s1).is_identity());
        let lhs = data.element_of_word(&[0, 1, 0]);
        let rhs = data.element_of_word(&[1, 0, 1]);
        assert_eq!(lhs, rhs);
        assert_eq!(lhs.length(), 3);
        assert!(data.inverse(&data.identity()).is_identity());
    }

    #[test]
    fn descents_and_canonical_word() {
        let (data, _) = config::bundled_group("a2").unwrap();
        let e = data.identity();
        assert_eq!(data.canonical_word(&e), Vec::<usize>::new());
        assert!(!data.is_left_descent(0, &e));

        let w = data.element_of_word(&[0, 1, 0]);
        assert!(data.is_left_descent(0, &w));
        assert!(data.is_left_descent(1, &w));
        assert_eq!(data.canonical_word(&w), vec![0, 1, 0]);
    }

    #[test]
    fn family_word_has_unique_left_descent() {
        let (data, _, word) = config::s5_family(1).unwrap();
        let w = data.element_of_word(&word);
        let p = data.index_of("p").unwrap();
        for s in 0..data.rank() {
            assert_eq!(data.is_left_descent(s, &w), s == p);
        }
    }

    #[test]
    fn inversion_sets() {
        let (data, _) = config::bundled_group("a2").unwrap();
        let s1 = data.gen(0);
        assert_eq!(
            data.inversions(&s1),
            InversionSet::from([Root::simple(2, 0)])
        );
        let w = data.element_of_word(&[1, 0]);
        assert_eq!(
            data.inversions(&w),
            InversionSet::from([Root::simple(2, 1), Root::new(vec![1, 1])])
        );
        let (fam, _, word) = config::s5_family(1).unwrap();
        let w = fam.element_of_word(&word);
        assert_eq!(
            fam.inversions(&w),
            InversionSet::from([
                Root::new(vec![1, 0, 0]),
                Root::new(vec![1, 1, 0]),
                Root::new(vec![2, 1, 1]),
            ])
        );
    }

    #[test]
    fn weak_order_matches_inversion_containment() {
        let (data, _) = config::bundled_group("a2").unwrap();
        let ball = data.ball(3, DEFAULT_CAP).unwrap();
        assert_eq!(ball.len(), 6);
        for u in &ball {
            for w in &ball {
                let by_peel = data.weak_leq(u, w);
                let by_inv = data.inversions(u).is_subset(&data.inversions(w));
                assert_eq!(by_peel, by_inv);
            }
        }
        let s1s2 = data.element_of_word(&[0, 1]);
        let top = data.element_of_word(&[0, 1, 0]);
        let s2 = data.gen(1);
        assert!(data.weak_leq(&s1s2, &top));
        assert!(!data.weak_leq(&s2, &s1s2));
    }

    #[test]
    fn parabolic_projection_examples() {
        let (data, _) = config::bundled_group("a2").unwrap();
        let w = data.element_of_word(&[1, 0]);
        assert_eq!(data.parabolic_proj(&w, data.full_set()), w);
        assert!(data.parabolic_proj(&w, GenSet::singleton(0)).is_identity());
        assert_eq!(data.parabolic_proj(&w, GenSet::singleton(1)), data.gen(1));
        assert!(data
            .parabolic_proj(&data.identity(), GenSet::singleton(0))
            .is_identity());
        // Inversion-set contract on the full group.
        for w in data.ball(3, DEFAULT_CAP).unwrap() {
            for j in GenSet::subsets(data.full_set()) {
                let wj = data.parabolic_proj(&w, j);
                let expected: InversionSet = data
                    .inversions(&w)
                    .into_iter()
                    .filter(|beta| beta.support().is_subset(j))
                    .collect();
                assert_eq!(data.inversions(&wj), expected);
            }
        }
    }

    #[test]
    fn ball_sizes() {
        let (a2, _) = config::bundled_group("a2").unwrap();
        assert_eq!(a2.ball(0, DEFAULT_CAP).unwrap().len(), 1);
        assert_eq!(a2.ball(3, DEFAULT_CAP).unwrap().len(), 6);
        assert_eq!(a2.ball(9, DEFAULT_CAP).unwrap().len(), 6);
        assert!(a2.ball_is_whole_group(&a2.ball(9, DEFAULT_CAP).unwrap(), 9));

        let (a3, _) = config::bundled_group("a3").unwrap();
        assert_eq!(a3.ball(6, DEFAULT_CAP).unwrap().len(), 24);

        let (b3, _) = config::bundled_group("b3").unwrap();
        assert_eq!(b3.ball(9, DEFAULT_CAP).unwrap().len(), 48);

        let (inf, _) = config::bundled_group("dihedral-infinite").unwrap();
        for l in 0..=8 {
            assert_eq!(inf.ball(l, DEFAULT_CAP).unwrap().len(), (2 * l + 1) as usize);
        }
    }

    #[test]
    fn ball_cap_is_enforced() {
        let (inf, _) = config::bundled_group("dihedral-infinite").unwrap();
        assert!(matches!(inf.ball(10, 5), Err(Error::BallTooLarge(5))));
    }

    #[test]
    fn lengths_equal_inversion_counts() {
        let (data, _) = config::bundled_group("hyperbolic-b3-mutation").unwrap();
        for w in data.ball(5, DEFAULT_CAP).unwrap() {
            assert_eq!(data.inversions(&w).len(), w.length() as usize);
            let word = data.canonical_word(&w);
            assert_eq!(word.len(), w.length() as usize);
            assert_eq!(data.element_of_word(&word), w);
        }
    }
}
