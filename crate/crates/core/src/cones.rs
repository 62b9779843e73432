//! Cambrian cone data attached to sortable elements, and the combinatorial
//! fiber test for the downward projection.
//!
//! No dual-space geometry is materialized: a chamber lies on the nonnegative
//! side of a wall root exactly when the corresponding reflection is not an
//! inversion, so every containment reduces to inversion-set membership.

use std::collections::BTreeMap;

use crate::cartan::{CoxeterData, GenSet, Orientation};
use crate::error::{Error, Result};
use crate::group::{Element, InversionSet};
use crate::matrix;
use crate::roots::Root;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Positive,
    Negative,
}

/// A wall root, kept with its sign class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedRoot(Root);

impl SignedRoot {
    pub fn new(root: Root) -> Self {
        assert!(root.is_sign_coherent(), "wall roots are sign-coherent");
        SignedRoot(root)
    }

    pub fn root(&self) -> &Root {
        &self.0
    }

    pub fn sign(&self) -> Sign {
        if self.0.is_positive() {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }

    /// The underlying positive root.
    pub fn unsigned(&self) -> Root {
        match self.sign() {
            Sign::Positive => self.0.clone(),
            Sign::Negative => self.0.negated(),
        }
    }
}

/// Wall roots per generator, defined exactly where the support stays
/// acyclic; the rest are listed as undefined.
#[derive(Clone, Debug)]
pub struct ConeSpec {
    pub defined: BTreeMap<usize, SignedRoot>,
    pub undefined: Vec<usize>,
}

impl ConeSpec {
    pub fn to_json(&self, data: &CoxeterData) -> serde_json::Value {
        let defined: BTreeMap<String, Vec<i64>> = self
            .defined
            .iter()
            .map(|(&r, c)| (data.name(r).to_string(), c.root().coords().to_vec()))
            .collect();
        let undefined: Vec<String> = self
            .undefined
            .iter()
            .map(|&r| data.name(r).to_string())
            .collect();
        serde_json::json!({ "defined": defined, "undefined": undefined })
    }
}

/// Per-element outcome of the fiber partition check.
#[derive(Clone, Debug)]
pub struct FiberReport {
    pub ball_size: usize,
    pub sortable_count: usize,
    pub violations: Vec<String>,
}

impl FiberReport {
    pub fn pass(&self) -> bool {
        self.violations.is_empty()
    }
}

impl CoxeterData {
    /// Wall root of `r` for a sortable element: act on alpha_r by the prefix
    /// of the sorting word preceding the first unused occurrence of r in the
    /// infinite repetition of the c-word.
    pub fn c_cone_root(&self, v: &Element, c_word: &[usize], r: usize) -> Result<SignedRoot> {
        let sorting = self.c_sorting_word(v, c_word);
        if !sorting.is_sortable() {
            return Err(Error::NotSortable(self.fmt_element(v)));
        }
        let k = sorting.letters.len();
        let width = c_word.len();
        let offset_of_r = c_word
            .iter()
            .position(|&s| s == r)
            .expect("r must occur in the c-word");
        let mut prefix_len = None;
        for block in 0.. {
            let pos = block * width + offset_of_r;
            if sorting.positions.binary_search(&pos).is_err() {
                // Count sorting-word letters strictly before this slot.
                let i = sorting.positions.partition_point(|&p| p < pos);
                prefix_len = Some(i);
                break;
            }
        }
        let i = prefix_len.expect("an unused occurrence always exists");
        debug_assert!(i <= k);
        let prefix = self.element_of_word(&sorting.letters[..i]);
        Ok(SignedRoot::new(prefix.act(&Root::simple(self.rank(), r))))
    }

    /// Wall roots of a sortable element: for each generator r whose union
    /// with the support layer stays acyclic, delegate to the c-cone root of
    /// that enlarged parabolic; everything else is recorded undefined.
    pub fn omega_cone_spec(&self, ori: &Orientation, v: &Element) -> Result<ConeSpec> {
        if !self.is_omega_sortable(ori, v) {
            return Err(Error::NotSortable(self.fmt_element(v)));
        }
        let j = self.support_j(ori, v);
        let mut defined = BTreeMap::new();
        let mut undefined = Vec::new();
        for r in 0..self.rank() {
            let enlarged = j.insert(r);
            if ori.is_acyclic(enlarged) {
                let c_word = ori.coxeter_word(enlarged)?;
                defined.insert(r, self.c_cone_root(v, &c_word, r)?);
            } else {
                undefined.push(r);
            }
        }
        Ok(ConeSpec { defined, undefined })
    }

    /// The chamber of w lies in the cone iff for every defined wall the sign
    /// matches the inversion dichotomy: positive walls are non-inversions of
    /// w, negative walls are inversions. Exact because chambers are
    /// full-dimensional and their interiors miss every reflection
    /// hyperplane.
    pub fn cone_contains_chamber(&self, spec: &ConeSpec, w: &Element) -> bool {
        let inv = self.inversions(w);
        self.cone_contains_chamber_with(spec, &inv)
    }

    pub fn cone_contains_chamber_with(&self, spec: &ConeSpec, inv: &InversionSet) -> bool {
        spec.defined.values().all(|wall| {
            let beta = wall.unsigned();
            match wall.sign() {
                Sign::Positive => !inv.contains(&beta),
                Sign::Negative => inv.contains(&beta),
            }
        })
    }

    /// Exhaustive fiber check over a ball: every element must satisfy the
    /// cone test of its projection and of no other sortable element.
    pub fn fiber_verify(&self, ori: &Orientation, l: u32, cap: usize) -> Result<FiberReport> {
        let ball = self.ball(l, cap)?;
        let sortables: Vec<(Element, ConeSpec)> = ball
            .iter()
            .filter(|v| self.is_omega_sortable(ori, v))
            .map(|v| Ok((v.clone(), self.omega_cone_spec(ori, v)?)))
            .collect::<Result<_>>()?;
        let mut violations = Vec::new();
        for w in &ball {
            let target = self.pi_down_omega(ori, w);
            let inv = self.inversions(w);
            let mut hits = 0usize;
            for (v, spec) in &sortables {
                let contains = self.cone_contains_chamber_with(spec, &inv);
                if contains {
                    hits += 1;
                }
                if contains != (*v == target) {
                    violations.push(format!(
                        "w={} v={} cone={} projection={}",
                        self.fmt_element(w),
                        self.fmt_element(v),
                        contains,
                        self.fmt_element(&target)
                    ));
                }
            }
            if hits != 1 {
                violations.push(format!(
                    "w={} lies in {} cones",
                    self.fmt_element(w),
                    hits
                ));
            }
        }
        Ok(FiberReport {
            ball_size: ball.len(),
            sortable_count: sortables.len(),
            violations,
        })
    }

    /// Rank of the defined wall roots; a full acyclic spec has rank n.
    pub fn cone_rank(&self, spec: &ConeSpec) -> usize {
        let rows: Vec<Vec<i64>> = spec
            .defined
            .values()
            .map(|wall| wall.root().coords().to_vec())
            .collect();
        matrix::rank(&rows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config;
    use crate::group::DEFAULT_CAP;

    #[test]
    fn identity_cone_is_dominant() {
        let (data, ori) = config::bundled_group("hyperbolic-b3-mutation").unwrap();
        let spec = data.omega_cone_spec(&ori, &data.identity()).unwrap();
        assert!(spec.undefined.is_empty());
        for (r, wall) in &spec.defined {
            assert_eq!(wall.root(), &Root::simple(3, *r));
        }
        assert!(data.cone_contains_chamber(&spec, &data.identity()));
        for w in data.ball(3, DEFAULT_CAP).unwrap() {
            if !w.is_identity() {
                assert!(!data.cone_contains_chamber(&spec, &w));
            }
        }
    }

    #[test]
    fn mutation_example_walls() {
        let (data, ori) = config::bundled_group("hyperbolic-b3-mutation").unwrap();
        let p = data.index_of("p").unwrap();
        let q = data.index_of("q").unwrap();
        let r = data.index_of("r").unwrap();
        let v = data.element_of_word(&[q, r, q]);
        let spec = data.omega_cone_spec(&ori, &v).unwrap();
        assert_eq!(spec.undefined, vec![p]);
        assert_eq!(spec.defined[&q].root(), &Root::new(vec![0, -1, -2]));
        assert_eq!(spec.defined[&r].root(), &Root::new(vec![0, 0, 1]));
        assert_eq!(spec.defined[&q].sign(), Sign::Negative);
        assert!(data.cone_contains_chamber(&spec, &v));
    }

    #[test]
    fn c_cone_root_rejects_non_sortable() {
        let (data, _) = config::bundled_group("a2").unwrap();
        let s2s1 = data.element_of_word(&[1, 0]);
        assert!(matches!(
            data.c_cone_root(&s2s1, &[0, 1], 0),
            Err(Error::NotSortable(_))
        ));
    }

    #[test]
    fn acyclic_spec_has_full_rank() {
        let (data, ori) = config::bundled_group("a3").unwrap();
        for v in data.ball(6, DEFAULT_CAP).unwrap() {
            if data.is_omega_sortable(&ori, &v) {
                let spec = data.omega_cone_spec(&ori, &v).unwrap();
                assert!(spec.undefined.is_empty());
                assert_eq!(data.cone_rank(&spec), 3);
            }
        }
    }

    #[test]
    fn fibers_partition_small_balls() {
        let (data, ori) = config::bundled_group("a2").unwrap();
        let report = data.fiber_verify(&ori, 0, DEFAULT_CAP).unwrap();
        assert!(report.pass());
        assert_eq!(report.ball_size, 1);
        let report = data.fiber_verify(&ori, 3, DEFAULT_CAP).unwrap();
        assert!(report.pass(), "{:?}", report.violations);
        assert_eq!(report.sortable_count, 5);
    }
}
