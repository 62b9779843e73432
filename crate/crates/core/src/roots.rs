//! The reflection representation: integer root coordinates, the symmetric
//! form K, reflections, the root/reflection dictionary, and the
//! orientation-dependent skew form.

use std::fmt;

use num_traits::Zero;

use crate::cartan::{Bond, CoxeterData, GenSet, Orientation};
use crate::error::{Error, Result};
use crate::Rational;

/// Exact value of a bilinear form.
pub type FormValue = Rational;

/// Integer coordinate vector over the simple-root basis. Roots produced by
/// group actions are sign-coherent: all coordinates >= 0 or all <= 0.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Root(Vec<i64>);

impl Root {
    pub fn new(coords: Vec<i64>) -> Self {
        Root(coords)
    }

    pub fn simple(n: usize, s: usize) -> Self {
        let mut c = vec![0; n];
        c[s] = 1;
        Root(c)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn is_positive(&self) -> bool {
        !self.is_zero() && self.0.iter().all(|&x| x >= 0)
    }

    pub fn is_negative(&self) -> bool {
        !self.is_zero() && self.0.iter().all(|&x| x <= 0)
    }

    pub fn is_sign_coherent(&self) -> bool {
        self.is_positive() || self.is_negative()
    }

    #[must_use]
    pub fn negated(&self) -> Self {
        Root(self.0.iter().map(|&x| -x).collect())
    }

    /// Generators whose coordinate is nonzero.
    pub fn support(&self) -> GenSet {
        GenSet::from_indices(
            self.0
                .iter()
                .enumerate()
                .filter(|(_, &x)| x != 0)
                .map(|(i, _)| i),
        )
    }
}

impl fmt::Debug for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

pub fn is_proportional(a: &Root, b: &Root) -> bool {
    if a.is_zero() || b.is_zero() {
        return true;
    }
    let n = a.coords().len();
    for i in 0..n {
        for j in (i + 1)..n {
            let cross = a.coords()[i] as i128 * b.coords()[j] as i128
                - a.coords()[j] as i128 * b.coords()[i] as i128;
            if cross != 0 {
                return false;
            }
        }
    }
    // Rank one; proportional iff the signs line up on the common support.
    true
}

impl CoxeterData {
    /// Linear action of the generator s: only the s-coordinate changes,
    /// dropping by the pairing of the s-row with the input.
    pub fn simple_action(&self, s: usize, x: &Root) -> Root {
        let n = self.rank();
        let mut out = x.coords().to_vec();
        let mut pairing = 0i64;
        for t in 0..n {
            pairing += self.a(s, t) * x.coords()[t];
        }
        out[s] -= pairing;
        Root::new(out)
    }

    /// Symmetric bilinear form with K(alpha_r, alpha_s) = delta(r) A[r][s].
    pub fn k_pair(&self, x: &Root, y: &Root) -> FormValue {
        let n = self.rank();
        let mut acc = Rational::zero();
        for r in 0..n {
            if x.coords()[r] == 0 {
                continue;
            }
            let mut row = 0i64;
            for s in 0..n {
                row += self.a(r, s) * y.coords()[s];
            }
            acc += self.delta(r) * Rational::from_integer(x.coords()[r] * row);
        }
        acc
    }

    /// 2 K(t, x) / K(t, t): the coroot pairing of the reflection with root t
    /// against x, computed without materializing the coroot.
    pub fn coroot_pair(&self, t_root: &Root, x: &Root) -> Result<FormValue> {
        if t_root.is_zero() {
            return Err(Error::ZeroRoot);
        }
        let norm = self.k_pair(t_root, t_root);
        if norm.is_zero() {
            return Err(Error::IsotropicRoot);
        }
        Ok(Rational::from_integer(2) * self.k_pair(t_root, x) / norm)
    }

    /// Reflection in the root t: x - <t^vee, x> t. Crystallographic data keeps
    /// the result integral; anything else is an internal error.
    pub fn reflect(&self, t_root: &Root, x: &Root) -> Root {
        let c = self
            .coroot_pair(t_root, x)
            .expect("reflection requires a nonzero, non-isotropic root");
        let coords = x
            .coords()
            .iter()
            .zip(t_root.coords())
            .map(|(&xi, &ti)| {
                let v = Rational::from_integer(xi) - c * Rational::from_integer(ti);
                assert!(v.is_integer(), "non-integral reflection result");
                v.to_integer()
            })
            .collect();
        Root::new(coords)
    }

    /// Root of the palindromic reflection a1...ak...a1, i.e. the prefix
    /// a1...a(k-1) applied to the last letter's simple root. The word need
    /// not be reduced, so the result may be negative.
    pub fn reflection_of_word(&self, word: &[usize]) -> Root {
        let k = word.len();
        assert!(k > 0, "empty word has no reflection");
        let mut root = Root::simple(self.rank(), word[k - 1]);
        for &a in word[..k - 1].iter().rev() {
            root = self.simple_action(a, &root);
        }
        root
    }

    /// Order of the product of the two reflections, read off the integer
    /// invariant <t^vee,u><u^vee,t>.
    pub fn dihedral_order(&self, t: &Root, u: &Root) -> Result<Bond> {
        if is_proportional(t, u) {
            return Err(Error::ProportionalRoots);
        }
        let product = self.coroot_pair(t, u)? * self.coroot_pair(u, t)?;
        assert!(
            product.is_integer(),
            "non-integer dihedral invariant {product}"
        );
        let p = product.to_integer();
        debug_assert!(p >= 0);
        Ok(match p {
            0 => Bond::Finite(2),
            1 => Bond::Finite(3),
            2 => Bond::Finite(4),
            3 => Bond::Finite(6),
            _ => Bond::Infinite,
        })
    }

    /// Expand the palindromic reflection of `extension` as a sum over chains:
    /// every subsequence ending at the last letter whose consecutive pairs
    /// are diagram edges contributes the product of -A factors to the
    /// coordinate of its first letter. When J is acyclic the chains are
    /// exactly the directed paths into the last letter, and the word must be
    /// a linear extension of the induced order.
    pub fn path_expansion(
        &self,
        ori: &Orientation,
        j: GenSet,
        extension: &[usize],
    ) -> Result<Root> {
        if extension.len() != j.len() || GenSet::from_indices(extension.iter().copied()) != j {
            return Err(Error::NotLinearExtension);
        }
        if extension.is_empty() {
            return Err(Error::NotLinearExtension);
        }
        if ori.is_acyclic(j) {
            for i in 0..extension.len() {
                for l in (i + 1)..extension.len() {
                    if extension[i] != extension[l]
                        && ori.poset_leq(j, extension[l], extension[i])?
                    {
                        return Err(Error::NotLinearExtension);
                    }
                }
            }
        }
        let k = extension.len();
        // chain_sum[i]: sum over chains from position i to the last letter of
        // the product of factors -A[later][earlier].
        let mut chain_sum = vec![0i64; k];
        chain_sum[k - 1] = 1;
        for i in (0..k - 1).rev() {
            let mut acc = 0i64;
            for l in (i + 1)..k {
                let a = self.a(extension[l], extension[i]);
                if a != 0 {
                    acc += (-a) * chain_sum[l];
                }
            }
            chain_sum[i] = acc;
        }
        let mut coords = vec![0i64; self.rank()];
        for (i, &s) in extension.iter().enumerate() {
            coords[s] += chain_sum[i];
        }
        Ok(Root::new(coords))
    }

    /// Skew form encoding the orientation: on simple roots the value is
    /// delta(r) A[r][s], with positive sign exactly when the arrow r -> s is
    /// stored (equivalently, when s precedes r).
    pub fn omega(&self, ori: &Orientation, x: &Root, y: &Root) -> FormValue {
        let n = self.rank();
        let mut acc = Rational::zero();
        for r in 0..n {
            let xr = x.coords()[r];
            if xr == 0 {
                continue;
            }
            for s in 0..n {
                let ys = y.coords()[s];
                if ys == 0 || r == s {
                    continue;
                }
                let sign = ori.arrow(r, s) as i64;
                if sign == 0 {
                    continue;
                }
                acc += self.delta(r)
                    * Rational::from_integer(sign * self.a(r, s) * xr * ys);
            }
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config;

    #[test]
    fn simple_action_examples() {
        let (data, _) = config::bundled_group("a2").unwrap();
        let a1 = Root::simple(2, 0);
        let a2 = Root::simple(2, 1);
        assert_eq!(data.simple_action(0, &a1), a1.negated());
        assert_eq!(data.simple_action(0, &a2), Root::new(vec![1, 1]));
        // Zero pairing leaves the root unchanged.
        let (ortho, _) = {
            let spec = crate::cartan::CartanSpec {
                generators: vec!["a".into(), "b".into()],
                matrix: vec![vec![2, 0], vec![0, 2]],
                delta: None,
            };
            (CoxeterData::validate(&spec).unwrap(), ())
        };
        assert_eq!(ortho.simple_action(0, &a2), a2);
    }

    #[test]
    fn k_pair_examples() {
        let (data, _) = config::bundled_group("hyperbolic-b3-mutation").unwrap();
        let q = data.index_of("q").unwrap();
        let r = data.index_of("r").unwrap();
        let aq = Root::simple(3, q);
        let ar = Root::simple(3, r);
        assert_eq!(data.k_pair(&aq, &ar), Rational::from_integer(-2));
        assert_eq!(data.k_pair(&aq, &aq), Rational::from_integer(4)); // 2 delta(q)
        assert_eq!(data.coroot_pair(&aq, &aq).unwrap(), Rational::from_integer(2));
    }

    #[test]
    fn k_is_symmetric() {
        let (data, _) = config::bundled_group("hyperbolic-b3-mutation").unwrap();
        let x = Root::new(vec![1, 2, -1]);
        let y = Root::new(vec![3, 0, 5]);
        assert_eq!(data.k_pair(&x, &y), data.k_pair(&y, &x));
    }

    #[test]
    fn reflect_examples() {
        let (data, _) = config::bundled_group("a2").unwrap();
        let a1 = Root::simple(2, 0);
        let a2 = Root::simple(2, 1);
        assert_eq!(data.reflect(&a1, &a1), a1.negated());
        let highest = Root::new(vec![1, 1]);
        assert_eq!(data.reflect(&highest, &a1), a2.negated());
    }

    #[test]
    fn reflection_of_word_examples() {
        let (data, _) = config::bundled_group("a2").unwrap();
        assert_eq!(data.reflection_of_word(&[0]), Root::simple(2, 0));
        assert_eq!(data.reflection_of_word(&[0, 1]), Root::new(vec![1, 1]));
        let (fam, _, _) = config::s5_family(1).unwrap();
        let word = fam.word_from_names(&["p", "q1", "r"]).unwrap();
        assert_eq!(fam.reflection_of_word(&word), Root::new(vec![2, 1, 1]));
    }

    #[test]
    fn dihedral_orders() {
        let (a2, _) = config::bundled_group("a2").unwrap();
        let a1 = Root::simple(2, 0);
        let a2root = Root::simple(2, 1);
        assert_eq!(a2.dihedral_order(&a1, &a2root).unwrap(), Bond::Finite(3));
        assert!(matches!(
            a2.dihedral_order(&a1, &a1),
            Err(Error::ProportionalRoots)
        ));

        let (inf, _) = config::bundled_group("dihedral-infinite").unwrap();
        assert_eq!(
            inf.dihedral_order(&Root::simple(2, 0), &Root::simple(2, 1)).unwrap(),
            Bond::Infinite
        );

        let spec = crate::cartan::CartanSpec {
            generators: vec!["a".into(), "b".into()],
            matrix: vec![vec![2, 0], vec![0, 2]],
            delta: None,
        };
        let ortho = CoxeterData::validate(&spec).unwrap();
        assert_eq!(
            ortho.dihedral_order(&Root::simple(2, 0), &Root::simple(2, 1)).unwrap(),
            Bond::Finite(2)
        );
    }

    #[test]
    fn path_expansion_matches_reflection() {
        let (data, ori) = config::bundled_group("a2").unwrap();
        let j = data.full_set();
        let got = data.path_expansion(&ori, j, &[0, 1]).unwrap();
        assert_eq!(got, Root::new(vec![1, 1]));
        assert_eq!(got, data.reflection_of_word(&[0, 1]));
        // Single letter.
        let single = data.path_expansion(&ori, GenSet::singleton(1), &[1]).unwrap();
        assert_eq!(single, Root::simple(2, 1));
        // Wrong order is not a linear extension.
        assert!(matches!(
            data.path_expansion(&ori, j, &[1, 0]),
            Err(Error::NotLinearExtension)
        ));
    }

    #[test]
    fn path_expansion_family_word() {
        for d in 1..=3 {
            let (data, ori, word) = config::s5_family(d).unwrap();
            let j = GenSet::from_indices(word.iter().copied());
            let got = data.path_expansion(&ori, j, &word).unwrap();
            let mut expected = vec![0i64; d + 2];
            expected[0] = d as i64 + 1;
            for c in expected.iter_mut().skip(1) {
                *c = 1;
            }
            assert_eq!(got, Root::new(expected));
            assert_eq!(got, data.reflection_of_word(&word));
        }
    }

    #[test]
    fn omega_family_values() {
        let (data, ori, _) = config::s5_family(1).unwrap();
        let p = Root::simple(3, 0);
        let beta2 = Root::new(vec![1, 1, 0]);
        assert_eq!(data.omega(&ori, &p, &beta2), Rational::from_integer(1));
        assert_eq!(data.omega(&ori, &p, &p), Rational::from_integer(0));
        let (d2, ori2, _) = config::s5_family(2).unwrap();
        let b2a = Root::new(vec![1, 1, 0, 0]);
        let b2b = Root::new(vec![1, 0, 1, 0]);
        assert_eq!(d2.omega(&ori2, &b2a, &b2b), Rational::from_integer(0));
    }

    #[test]
    fn omega_is_skew() {
        let (data, ori) = config::bundled_group("hyperbolic-b3-mutation").unwrap();
        let x = Root::new(vec![1, -2, 3]);
        let y = Root::new(vec![4, 5, -6]);
        assert_eq!(data.omega(&ori, &x, &y) + data.omega(&ori, &y, &x), Rational::from_integer(0));
    }
}
