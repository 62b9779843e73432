//! Verification of the exchange axioms for a family of feasible sets, plus
//! the equivalent graded-chain and union formulations.

use std::collections::HashSet;

use crate::cartan::{CoxeterData, GenSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub pass: bool,
    pub witness: Option<String>,
}

impl Verdict {
    fn pass() -> Self {
        Verdict { pass: true, witness: None }
    }

    fn fail(witness: String) -> Self {
        Verdict { pass: false, witness: Some(witness) }
    }
}

/// Axiom and condition verdicts for one set family. The two axiom systems
/// are equivalent, so `axioms_agree` must always hold; `maximum` is present
/// exactly when the family has a unique inclusion-maximal member.
#[derive(Clone, Debug)]
pub struct AntimatroidReport {
    pub ground: GenSet,
    pub family_size: usize,
    /// The empty set belongs to the family.
    pub empty_member: bool,
    /// Exchange: Z not within Y yields some x in Z \ Y with Y + x feasible.
    pub exchange: Verdict,
    /// Graded chains between nested members.
    pub chains: Verdict,
    /// Two feasible one-element extensions combine.
    pub unions: Verdict,
    pub axioms_agree: bool,
    pub maximum: Option<GenSet>,
}

impl AntimatroidReport {
    pub fn all_pass(&self) -> bool {
        self.empty_member
            && self.exchange.pass
            && self.chains.pass
            && self.unions.pass
            && self.axioms_agree
            && self.maximum.is_some()
    }
}

/// Check both axiom systems independently on an explicit family.
pub fn verify_antimatroid(family: &[GenSet], ground: GenSet) -> AntimatroidReport {
    let members: HashSet<GenSet> = family.iter().copied().collect();
    let mut sorted: Vec<GenSet> = members.iter().copied().collect();
    sorted.sort();

    let empty_member = members.contains(&GenSet::EMPTY);
    let exchange = check_exchange(&sorted, &members);
    let chains = check_chains(&sorted, &members);
    let unions = check_unions(&sorted, &members, ground);

    let system_a = empty_member && exchange.pass;
    let system_b = empty_member && chains.pass && unions.pass;
    let axioms_agree = system_a == system_b;

    let maximum = if system_a {
        unique_maximum(&sorted)
    } else {
        None
    };

    AntimatroidReport {
        ground,
        family_size: sorted.len(),
        empty_member,
        exchange,
        chains,
        unions,
        axioms_agree,
        maximum,
    }
}

fn fmt_bits(set: GenSet) -> String {
    format!(
        "{{{}}}",
        set.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",")
    )
}

fn check_exchange(sorted: &[GenSet], members: &HashSet<GenSet>) -> Verdict {
    for &y in sorted {
        for &z in sorted {
            if z.is_subset(y) {
                continue;
            }
            let found = z
                .difference(y)
                .iter()
                .any(|x| members.contains(&y.insert(x)));
            if !found {
                return Verdict::fail(format!("Y={}, Z={}", fmt_bits(y), fmt_bits(z)));
            }
        }
    }
    Verdict::pass()
}

fn check_chains(sorted: &[GenSet], members: &HashSet<GenSet>) -> Verdict {
    for &y in sorted {
        for &z in sorted {
            if !y.is_subset(z) || y == z {
                continue;
            }
            if !chain_exists(y, z, members) {
                return Verdict::fail(format!("Y={}, Z={}", fmt_bits(y), fmt_bits(z)));
            }
        }
    }
    Verdict::pass()
}

fn chain_exists(y: GenSet, z: GenSet, members: &HashSet<GenSet>) -> bool {
    if y == z {
        return true;
    }
    z.difference(y).iter().any(|x| {
        let next = y.insert(x);
        members.contains(&next) && chain_exists(next, z, members)
    })
}

fn check_unions(sorted: &[GenSet], members: &HashSet<GenSet>, ground: GenSet) -> Verdict {
    for &x in sorted {
        let outside = ground.difference(x);
        for y in outside.iter() {
            if !members.contains(&x.insert(y)) {
                continue;
            }
            for z in outside.iter() {
                if z <= y || !members.contains(&x.insert(z)) {
                    continue;
                }
                if !members.contains(&x.insert(y).insert(z)) {
                    return Verdict::fail(format!(
                        "X={}, y={}, z={}",
                        fmt_bits(x),
                        y,
                        z
                    ));
                }
            }
        }
    }
    Verdict::pass()
}

fn unique_maximum(sorted: &[GenSet]) -> Option<GenSet> {
    let maximal: Vec<GenSet> = sorted
        .iter()
        .copied()
        .filter(|&j| !sorted.iter().any(|&k| j != k && j.is_subset(k)))
        .collect();
    if maximal.len() == 1 {
        Some(maximal[0])
    } else {
        None
    }
}

impl CoxeterData {
    pub fn fmt_antimatroid_witness(&self, report: &AntimatroidReport) -> String {
        let verdicts = [
            ("empty", report.empty_member, &None),
            ("exchange", report.exchange.pass, &report.exchange.witness),
            ("chains", report.chains.pass, &report.chains.witness),
            ("unions", report.unions.pass, &report.unions.witness),
        ];
        verdicts
            .iter()
            .filter(|(_, pass, _)| !pass)
            .map(|(name, _, witness)| match witness {
                Some(w) => format!("{name}: {w}"),
                None => (*name).to_string(),
            })
            .collect::<Vec<_>>()
            .join("; ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_family_passes() {
        let report = verify_antimatroid(&[GenSet::EMPTY], GenSet::full(2));
        assert!(report.all_pass());
        assert_eq!(report.maximum, Some(GenSet::EMPTY));
    }

    #[test]
    fn two_singletons_fail_exchange() {
        let family = [GenSet::EMPTY, GenSet::singleton(0), GenSet::singleton(1)];
        let report = verify_antimatroid(&family, GenSet::full(2));
        assert!(!report.exchange.pass);
        assert!(report.exchange.witness.is_some());
        assert!(report.axioms_agree);
        assert!(report.maximum.is_none());
    }

    #[test]
    fn missing_empty_set_fails_first_axiom() {
        let family = [GenSet::singleton(0)];
        let report = verify_antimatroid(&family, GenSet::full(1));
        assert!(!report.empty_member);
        assert!(!report.all_pass());
    }

    #[test]
    fn boolean_lattice_passes() {
        let family = GenSet::subsets(GenSet::full(3));
        let report = verify_antimatroid(&family, GenSet::full(3));
        assert!(report.all_pass());
        assert_eq!(report.maximum, Some(GenSet::full(3)));
    }

    #[test]
    fn union_condition_violation() {
        // {0} and {1} extend the empty set but their union is missing,
        // while the exchange axiom fails too; systems agree on failure.
        let family = [
            GenSet::EMPTY,
            GenSet::singleton(0),
            GenSet::singleton(1),
            GenSet::from_indices([0, 2]),
        ];
        let report = verify_antimatroid(&family, GenSet::full(3));
        assert!(!report.unions.pass);
        assert!(!report.exchange.pass);
        assert!(report.axioms_agree);
    }
}
