//! Validated Cartan data and diagram orientations.
//!
//! The diagram has an edge wherever two generators fail to commute. An
//! orientation assigns one direction to each edge; the target of an arrow
//! precedes its source, so every acyclic subset carries a precedence order
//! whose linear extensions all multiply to the same group element.

use std::collections::HashSet;
use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::IntMat;
use crate::Rational;

/// A subset of the generator index set, packed as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct GenSet(u32);

impl GenSet {
    pub const EMPTY: GenSet = GenSet(0);

    pub fn singleton(s: usize) -> Self {
        GenSet(1 << s)
    }

    pub fn full(n: usize) -> Self {
        if n == 32 {
            GenSet(u32::MAX)
        } else {
            GenSet((1u32 << n) - 1)
        }
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Self {
        let mut s = GenSet::EMPTY;
        for i in it {
            s = s.insert(i);
        }
        s
    }

    #[must_use]
    pub fn insert(self, s: usize) -> Self {
        GenSet(self.0 | (1 << s))
    }

    #[must_use]
    pub fn remove(self, s: usize) -> Self {
        GenSet(self.0 & !(1 << s))
    }

    pub fn contains(self, s: usize) -> bool {
        self.0 & (1 << s) != 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..32).filter(move |&i| self.0 & (1 << i) != 0)
    }

    #[must_use]
    pub fn union(self, other: GenSet) -> Self {
        GenSet(self.0 | other.0)
    }

    #[must_use]
    pub fn intersection(self, other: GenSet) -> Self {
        GenSet(self.0 & other.0)
    }

    #[must_use]
    pub fn difference(self, other: GenSet) -> Self {
        GenSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: GenSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// All subsets of `ground`, ascending by bitmask.
    pub fn subsets(ground: GenSet) -> Vec<GenSet> {
        let bits = ground.0;
        let mut out = Vec::with_capacity(1 << ground.len());
        let mut m: u32 = 0;
        loop {
            out.push(GenSet(m));
            if m == bits {
                break;
            }
            m = (m.wrapping_sub(bits)) & bits;
        }
        out.sort();
        out
    }

    pub fn bits(self) -> u32 {
        self.0
    }
}

impl fmt::Debug for GenSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        let mut first = true;
        for i in self.iter() {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
            first = false;
        }
        write!(f, "}}")
    }
}

/// Raw input: generator names, an integer Cartan matrix, and an optional
/// symmetrizer. When `delta` is omitted it is solved from the
/// symmetrizability equations, one free scale per connected component.
#[derive(Clone, Debug)]
pub struct CartanSpec {
    pub generators: Vec<String>,
    pub matrix: Vec<Vec<i64>>,
    pub delta: Option<Vec<Rational>>,
}

/// Bond order m(s,t) between two generators.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Bond {
    Finite(u32),
    Infinite,
}

impl fmt::Display for Bond {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bond::Finite(m) => write!(f, "{m}"),
            Bond::Infinite => write!(f, "inf"),
        }
    }
}

fn bond_from_product(p: i64) -> Bond {
    match p {
        0 => Bond::Finite(2),
        1 => Bond::Finite(3),
        2 => Bond::Finite(4),
        3 => Bond::Finite(6),
        _ => Bond::Infinite,
    }
}

/// Validated Cartan data: matrix, symmetrizer, diagram edges, bond orders,
/// and the cached generator matrices of the reflection representation.
#[derive(Clone)]
pub struct CoxeterData {
    names: Vec<String>,
    cartan: Vec<Vec<i64>>,
    delta: Vec<Rational>,
    edges: Vec<(usize, usize)>,
    gen_mats: Vec<IntMat>,
}

impl CoxeterData {
    /// Validate a raw spec. Conditions are checked in a fixed order and the
    /// first violation is reported: diagonal, sign, zero-symmetry,
    /// symmetrizability, positivity of delta.
    pub fn validate(spec: &CartanSpec) -> Result<CoxeterData> {
        let n = spec.generators.len();
        if n == 0 {
            return Err(Error::Config("at least one generator required".into()));
        }
        if n > 32 {
            return Err(Error::RankTooLarge(n));
        }
        let mut seen = HashSet::new();
        for g in &spec.generators {
            if !seen.insert(g.clone()) {
                return Err(Error::DuplicateGenerator(g.clone()));
            }
        }
        if spec.matrix.len() != n {
            return Err(Error::NotSquare { row: 0, got: spec.matrix.len(), expected: n });
        }
        for (i, row) in spec.matrix.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotSquare { row: i, got: row.len(), expected: n });
            }
        }
        let a = |s: usize, t: usize| spec.matrix[s][t];
        for s in 0..n {
            if a(s, s) != 2 {
                return Err(Error::DiagonalNotTwo {
                    s: spec.generators[s].clone(),
                    value: a(s, s),
                });
            }
        }
        for s in 0..n {
            for t in 0..n {
                if s != t && a(s, t) > 0 {
                    return Err(Error::PositiveOffDiagonal {
                        s: spec.generators[s].clone(),
                        t: spec.generators[t].clone(),
                        value: a(s, t),
                    });
                }
            }
        }
        for s in 0..n {
            for t in 0..n {
                if s != t && (a(s, t) == 0) != (a(t, s) == 0) {
                    let (s, t) = if a(s, t) == 0 { (s, t) } else { (t, s) };
                    return Err(Error::ZeroSymmetryViolated {
                        s: spec.generators[s].clone(),
                        t: spec.generators[t].clone(),
                        value: a(t, s),
                    });
                }
            }
        }
        let delta = match &spec.delta {
            Some(d) => {
                if d.len() != n {
                    return Err(Error::DeltaLength { got: d.len(), expected: n });
                }
                for s in 0..n {
                    for t in (s + 1)..n {
                        if d[s] * Rational::from_integer(a(s, t))
                            != d[t] * Rational::from_integer(a(t, s))
                        {
                            return Err(Error::NotSymmetrizable {
                                s: spec.generators[s].clone(),
                                t: spec.generators[t].clone(),
                            });
                        }
                    }
                }
                for (s, v) in d.iter().enumerate() {
                    if !v.is_positive() {
                        return Err(Error::NonPositiveDelta {
                            s: spec.generators[s].clone(),
                            value: v.to_string(),
                        });
                    }
                }
                d.clone()
            }
            None => solve_symmetrizer(&spec.matrix, &spec.generators)?,
        };
        let mut edges = Vec::new();
        for s in 0..n {
            for t in (s + 1)..n {
                if a(s, t) != 0 {
                    edges.push((s, t));
                }
            }
        }
        let gen_mats = (0..n)
            .map(|s| {
                IntMat::from_fn(n, |i, j| {
                    let id = if i == j { 1 } else { 0 };
                    if i == s {
                        id - a(s, j)
                    } else {
                        id
                    }
                })
            })
            .collect();
        Ok(CoxeterData {
            names: spec.generators.clone(),
            cartan: spec.matrix.clone(),
            delta,
            edges,
            gen_mats,
        })
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, s: usize) -> &str {
        &self.names[s]
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|g| g == name)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    pub fn a(&self, s: usize, t: usize) -> i64 {
        self.cartan[s][t]
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn delta(&self, s: usize) -> Rational {
        self.delta[s]
    }

    pub fn deltas(&self) -> &[Rational] {
        &self.delta
    }

    /// Undirected diagram edges, as index pairs (s, t) with s < t.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Bond order m(s,t); 2 for non-adjacent generators.
    pub fn bond(&self, s: usize, t: usize) -> Bond {
        if s == t {
            return Bond::Finite(1);
        }
        bond_from_product(self.a(s, t) * self.a(t, s))
    }

    pub fn full_set(&self) -> GenSet {
        GenSet::full(self.rank())
    }

    pub(crate) fn gen_mat(&self, s: usize) -> &IntMat {
        &self.gen_mats[s]
    }

    pub fn word_from_names(&self, names: &[&str]) -> Result<Vec<usize>> {
        names.iter().map(|n| self.index_of(n)).collect()
    }

    pub fn fmt_word(&self, word: &[usize]) -> String {
        word.iter()
            .map(|&s| self.name(s))
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn fmt_set(&self, set: GenSet) -> String {
        let inner = set
            .iter()
            .map(|s| self.name(s).to_string())
            .collect::<Vec<_>>()
            .join(",");
        format!("{{{inner}}}")
    }
}

/// Solve delta(s) A[s][t] = delta(t) A[t][s] with delta > 0, scaling each
/// connected component to the smallest positive integer solution.
fn solve_symmetrizer(matrix: &[Vec<i64>], names: &[String]) -> Result<Vec<Rational>> {
    let n = names.len();
    let a = |s: usize, t: usize| matrix[s][t];
    let mut delta: Vec<Option<Rational>> = vec![None; n];
    for root in 0..n {
        if delta[root].is_some() {
            continue;
        }
        delta[root] = Some(Rational::from_integer(1));
        let mut component = vec![root];
        let mut stack = vec![root];
        while let Some(s) = stack.pop() {
            for t in 0..n {
                if t == s || a(s, t) == 0 {
                    continue;
                }
                let forced = delta[s].unwrap() * Rational::new(a(s, t), a(t, s));
                match delta[t] {
                    None => {
                        delta[t] = Some(forced);
                        component.push(t);
                        stack.push(t);
                    }
                    Some(existing) => {
                        if existing != forced {
                            return Err(Error::NotSymmetrizable {
                                s: names[s].clone(),
                                t: names[t].clone(),
                            });
                        }
                    }
                }
            }
        }
        // Rescale the component to the primitive positive integer vector.
        let lcm = component
            .iter()
            .map(|&s| *delta[s].unwrap().denom())
            .fold(1i64, num_integer_lcm);
        let mut nums: Vec<i64> = Vec::new();
        for &s in &component {
            let scaled = delta[s].unwrap() * Rational::from_integer(lcm);
            debug_assert!(scaled.is_integer());
            nums.push(scaled.to_integer());
        }
        let g = nums.iter().fold(0i64, |acc, &x| num_integer_gcd(acc, x.abs()));
        for (&s, &num) in component.iter().zip(&nums) {
            delta[s] = Some(Rational::from_integer(num / g));
        }
    }
    let out: Vec<Rational> = delta.into_iter().map(|d| d.unwrap()).collect();
    for (s, v) in out.iter().enumerate() {
        if !v.is_positive() {
            return Err(Error::NonPositiveDelta { s: names[s].clone(), value: v.to_string() });
        }
    }
    Ok(out)
}

fn num_integer_gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        num_integer_gcd(b, a % b)
    }
}

fn num_integer_lcm(a: i64, b: i64) -> i64 {
    a / num_integer_gcd(a, b) * b
}

/// A direction for every diagram edge. The stored pair (s, t) is the arrow
/// s -> t, and the target t precedes the source s in the induced order.
#[derive(Clone, PartialEq, Eq)]
pub struct Orientation {
    n: usize,
    arrows: Vec<(usize, usize)>,
    // +1 if arrow s->t is stored, -1 if t->s, 0 if no edge.
    mat: Vec<i8>,
}

impl Orientation {
    pub fn new(data: &CoxeterData, arrows: &[(usize, usize)]) -> Result<Orientation> {
        let n = data.rank();
        let mut mat = vec![0i8; n * n];
        for &(s, t) in arrows {
            if s >= n || t >= n || s == t || data.a(s, t) == 0 {
                return Err(Error::EdgeOutsideDiagram {
                    s: data.name(s.min(n - 1)).to_string(),
                    t: data.name(t.min(n - 1)).to_string(),
                });
            }
            if mat[s * n + t] != 0 {
                return Err(Error::BothDirections {
                    s: data.name(s.min(t)).to_string(),
                    t: data.name(s.max(t)).to_string(),
                });
            }
            mat[s * n + t] = 1;
            mat[t * n + s] = -1;
        }
        for &(s, t) in data.edges() {
            if mat[s * n + t] == 0 {
                return Err(Error::MissingDirection {
                    s: data.name(s).to_string(),
                    t: data.name(t).to_string(),
                });
            }
        }
        let mut arrows = arrows.to_vec();
        arrows.sort();
        Ok(Orientation { n, arrows, mat })
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    /// Directed edges as stored, sorted.
    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    /// +1 if the arrow s -> t is stored, -1 for the reverse, 0 if no edge.
    pub fn arrow(&self, s: usize, t: usize) -> i8 {
        self.mat[s * self.n + t]
    }

    /// Direct precedence: a immediately precedes b when the arrow b -> a is
    /// stored.
    pub fn precedes_direct(&self, a: usize, b: usize) -> bool {
        self.arrow(b, a) == 1
    }

    /// No directed cycle in the induced subgraph on J.
    pub fn is_acyclic(&self, j: GenSet) -> bool {
        let mut remaining = j;
        loop {
            if remaining.is_empty() {
                return true;
            }
            let next = remaining.iter().find(|&s| {
                remaining
                    .iter()
                    .all(|t| t == s || self.arrow(s, t) != 1)
            });
            match next {
                Some(s) => remaining = remaining.remove(s),
                None => return false,
            }
        }
    }

    /// Canonical linear extension of the induced order on an acyclic J:
    /// repeatedly emit the least available generator, i.e. the lowest-index
    /// member all of whose predecessors have been emitted.
    pub fn coxeter_word(&self, j: GenSet) -> Result<Vec<usize>> {
        let mut remaining = j;
        let mut word = Vec::with_capacity(j.len());
        while !remaining.is_empty() {
            let next = remaining.iter().find(|&s| {
                remaining
                    .iter()
                    .all(|t| t == s || self.arrow(s, t) != 1)
            });
            match next {
                Some(s) => {
                    word.push(s);
                    remaining = remaining.remove(s);
                }
                None => return Err(Error::CyclicSubset),
            }
        }
        Ok(word)
    }

    /// a <= b in the induced order on J, i.e. a == b or there is a directed
    /// path b -> ... -> a inside J.
    pub fn poset_leq(&self, j: GenSet, a: usize, b: usize) -> Result<bool> {
        assert!(j.contains(a) && j.contains(b), "arguments must lie in J");
        if !self.is_acyclic(j) {
            return Err(Error::CyclicSubset);
        }
        if a == b {
            return Ok(true);
        }
        let mut seen = GenSet::singleton(b);
        let mut stack = vec![b];
        while let Some(x) = stack.pop() {
            for t in j.iter() {
                if self.arrow(x, t) == 1 && !seen.contains(t) {
                    if t == a {
                        return Ok(true);
                    }
                    seen = seen.insert(t);
                    stack.push(t);
                }
            }
        }
        Ok(false)
    }

    /// Every linear extension of the induced order on an acyclic J.
    pub fn linear_extensions(&self, j: GenSet) -> Result<Vec<Vec<usize>>> {
        if j.len() > 10 {
            return Err(Error::RankTooLarge(j.len()));
        }
        if !self.is_acyclic(j) {
            return Err(Error::CyclicSubset);
        }
        let mut out = Vec::new();
        let mut prefix = Vec::new();
        self.extensions_rec(j, &mut prefix, &mut out);
        Ok(out)
    }

    fn extensions_rec(&self, remaining: GenSet, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if remaining.is_empty() {
            out.push(prefix.clone());
            return;
        }
        for s in remaining.iter() {
            let available = remaining
                .iter()
                .all(|t| t == s || self.arrow(s, t) != 1);
            if available {
                prefix.push(s);
                self.extensions_rec(remaining.remove(s), prefix, out);
                prefix.pop();
            }
        }
    }

    pub fn fmt_arrows(&self, data: &CoxeterData) -> String {
        self.arrows
            .iter()
            .map(|&(s, t)| format!("{}->{}", data.name(s), data.name(t)))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Build a Cartan spec and orientation from a skew-symmetrizable integer
/// matrix B: off-diagonal entries become -|B[i][j]| and each edge is directed
/// j -> i exactly when B[i][j] > 0.
pub fn from_b_matrix(
    generators: Vec<String>,
    b: &[Vec<i64>],
    delta_hint: Option<&[Rational]>,
) -> Result<(CartanSpec, Orientation)> {
    let n = generators.len();
    if b.len() != n {
        return Err(Error::NotSquare { row: 0, got: b.len(), expected: n });
    }
    for (i, row) in b.iter().enumerate() {
        if row.len() != n {
            return Err(Error::NotSquare { row: i, got: row.len(), expected: n });
        }
    }
    for i in 0..n {
        if b[i][i] != 0 {
            return Err(Error::NotSkewSymmetrizable(format!(
                "diagonal entry B[{i}][{i}] = {} must be 0",
                b[i][i]
            )));
        }
        for j in 0..n {
            if i != j && (b[i][j] == 0) != (b[j][i] == 0) {
                return Err(Error::NotSkewSymmetrizable(format!(
                    "B[{i}][{j}] = {} but B[{j}][{i}] = {}",
                    b[i][j], b[j][i]
                )));
            }
            if i != j && b[i][j] != 0 && (b[i][j] > 0) == (b[j][i] > 0) {
                return Err(Error::NotSkewSymmetrizable(format!(
                    "B[{i}][{j}] and B[{j}][{i}] have the same sign"
                )));
            }
        }
    }
    let matrix: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { 2 } else { -b[i][j].abs() })
                .collect()
        })
        .collect();
    // The same positive vector that skew-symmetrizes B symmetrizes the
    // Cartan matrix, so validation doubles as the existence check.
    let spec = CartanSpec {
        generators,
        matrix,
        delta: delta_hint.map(|d| d.to_vec()),
    };
    let data = CoxeterData::validate(&spec).map_err(|e| match e {
        Error::NotSymmetrizable { s, t } => Error::NotSkewSymmetrizable(format!(
            "no positive symmetrizer exists (pair {s},{t})"
        )),
        Error::NonPositiveDelta { s, value } => {
            Error::DeltaHintInconsistent(format!("delta({s}) = {value}"))
        }
        other => other,
    })?;
    if let Some(hint) = delta_hint {
        for (i, d) in hint.iter().enumerate() {
            for (j, e) in hint.iter().enumerate() {
                if i != j
                    && *d * Rational::from_integer(b[i][j])
                        != -(*e * Rational::from_integer(b[j][i]))
                {
                    return Err(Error::DeltaHintInconsistent(format!(
                        "delta does not skew-symmetrize B at ({i},{j})"
                    )));
                }
            }
        }
    }
    let mut arrows = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if b[i][j] > 0 {
                arrows.push((j, i));
            }
        }
    }
    let spec2 = CartanSpec {
        generators: data.names().to_vec(),
        matrix: data.cartan_matrix().to_vec(),
        delta: Some(data.deltas().to_vec()),
    };
    let ori = Orientation::new(&data, &arrows)?;
    Ok((spec2, ori))
}

/// All 2^|edges| orientations of the diagram.
pub fn all_orientations(data: &CoxeterData) -> Vec<Orientation> {
    let edges = data.edges();
    assert!(edges.len() <= 16, "too many edges to enumerate orientations");
    let mut out = Vec::with_capacity(1 << edges.len());
    for mask in 0u32..(1 << edges.len()) {
        let arrows: Vec<(usize, usize)> = edges
            .iter()
            .enumerate()
            .map(|(k, &(s, t))| if mask & (1 << k) == 0 { (s, t) } else { (t, s) })
            .collect();
        out.push(Orientation::new(data, &arrows).expect("diagram edges are covered"));
    }
    out
}

impl fmt::Debug for CoxeterData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CoxeterData")
            .field("names", &self.names)
            .field("cartan", &self.cartan)
            .field("delta", &self.delta)
            .finish()
    }
}

impl fmt::Debug for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Orientation{:?}", self.arrows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config;

    fn a2_spec() -> CartanSpec {
        CartanSpec {
            generators: vec!["s1".into(), "s2".into()],
            matrix: vec![vec![2, -1], vec![-1, 2]],
            delta: Some(vec![Rational::from_integer(1), Rational::from_integer(1)]),
        }
    }

    #[test]
    fn validate_a2() {
        let data = CoxeterData::validate(&a2_spec()).unwrap();
        assert_eq!(data.bond(0, 1), Bond::Finite(3));
        assert_eq!(data.edges(), &[(0, 1)]);
    }

    #[test]
    fn validate_mutation_matrix_with_solved_delta() {
        let spec = CartanSpec {
            generators: vec!["p".into(), "q".into(), "r".into()],
            matrix: vec![vec![2, -1, -1], vec![-1, 2, -1], vec![-2, -2, 2]],
            delta: None,
        };
        let data = CoxeterData::validate(&spec).unwrap();
        assert_eq!(
            data.deltas(),
            &[
                Rational::from_integer(2),
                Rational::from_integer(2),
                Rational::from_integer(1)
            ]
        );
        assert_eq!(data.bond(1, 2), Bond::Finite(4));
        assert_eq!(data.bond(0, 1), Bond::Finite(3));
    }

    #[test]
    fn validate_rejects_zero_symmetry_violation() {
        let spec = CartanSpec {
            generators: vec!["s1".into(), "s2".into()],
            matrix: vec![vec![2, 0], vec![-1, 2]],
            delta: None,
        };
        let err = CoxeterData::validate(&spec).unwrap_err();
        assert!(err.to_string().contains("zero-symmetry violated"), "{err}");
    }

    #[test]
    fn validate_rejects_bad_diagonal_and_sign() {
        let mut spec = a2_spec();
        spec.matrix[0][0] = 1;
        assert!(matches!(
            CoxeterData::validate(&spec),
            Err(Error::DiagonalNotTwo { .. })
        ));
        let mut spec = a2_spec();
        spec.matrix[0][1] = 1;
        spec.matrix[1][0] = 1;
        assert!(matches!(
            CoxeterData::validate(&spec),
            Err(Error::PositiveOffDiagonal { .. })
        ));
    }

    #[test]
    fn from_b_matrix_mutation_example() {
        let b = vec![vec![0, 1, -1], vec![-1, 0, 1], vec![2, -2, 0]];
        let (spec, ori) =
            from_b_matrix(vec!["p".into(), "q".into(), "r".into()], &b, None).unwrap();
        assert_eq!(
            spec.matrix,
            vec![vec![2, -1, -1], vec![-1, 2, -1], vec![-2, -2, 2]]
        );
        // Arrows r->q, q->p, p->r: a directed 3-cycle.
        let mut arrows = ori.arrows().to_vec();
        arrows.sort();
        assert_eq!(arrows, vec![(0, 2), (1, 0), (2, 1)]);
        let data = CoxeterData::validate(&spec).unwrap();
        assert!(!ori.is_acyclic(data.full_set()));
    }

    #[test]
    fn from_b_matrix_zero_and_a2() {
        let (spec, ori) = from_b_matrix(
            vec!["x".into(), "y".into()],
            &[vec![0, 0], vec![0, 0]],
            None,
        )
        .unwrap();
        assert_eq!(spec.matrix, vec![vec![2, 0], vec![0, 2]]);
        assert!(ori.arrows().is_empty());

        let (spec, ori) = from_b_matrix(
            vec!["s1".into(), "s2".into()],
            &[vec![0, 1], vec![-1, 0]],
            None,
        )
        .unwrap();
        assert_eq!(spec.matrix, vec![vec![2, -1], vec![-1, 2]]);
        // B[1][2] > 0 directs 1 <- 2, stored as the arrow s2 -> s1.
        assert_eq!(ori.arrows(), &[(1, 0)]);
    }

    #[test]
    fn from_b_matrix_rejects_sign_mismatch() {
        let err = from_b_matrix(
            vec!["x".into(), "y".into()],
            &[vec![0, 1], vec![1, 0]],
            None,
        )
        .unwrap_err();
        assert!(matches!(err, Error::NotSkewSymmetrizable(_)));
    }

    #[test]
    fn acyclicity_on_mutation_cycle() {
        let (data, ori) = config::bundled_group("hyperbolic-b3-mutation").unwrap();
        let full = data.full_set();
        assert!(!ori.is_acyclic(full));
        for s in 0..3 {
            assert!(ori.is_acyclic(GenSet::singleton(s)));
        }
        let q = data.index_of("q").unwrap();
        let r = data.index_of("r").unwrap();
        assert!(ori.is_acyclic(GenSet::from_indices([q, r])));
    }

    #[test]
    fn coxeter_word_follows_precedence() {
        let (data, ori) = config::bundled_group("hyperbolic-b3-mutation").unwrap();
        let q = data.index_of("q").unwrap();
        let r = data.index_of("r").unwrap();
        let w = ori.coxeter_word(GenSet::from_indices([q, r])).unwrap();
        assert_eq!(w, vec![q, r]);
        assert!(ori.coxeter_word(GenSet::EMPTY).unwrap().is_empty());
        assert!(matches!(
            ori.coxeter_word(data.full_set()),
            Err(Error::CyclicSubset)
        ));
    }

    #[test]
    fn coxeter_word_on_affine_pair() {
        let (data, ori) = config::bundled_group("affine-a2-cyclic").unwrap();
        let p = data.index_of("p").unwrap();
        let q = data.index_of("q").unwrap();
        let w = ori.coxeter_word(GenSet::from_indices([p, q])).unwrap();
        assert_eq!(w, vec![p, q]);
    }

    #[test]
    fn poset_leq_examples() {
        let (data, ori) = config::bundled_group("hyperbolic-b3-mutation").unwrap();
        let q = data.index_of("q").unwrap();
        let r = data.index_of("r").unwrap();
        let j = GenSet::from_indices([q, r]);
        assert!(ori.poset_leq(j, q, q).unwrap());
        assert!(ori.poset_leq(j, q, r).unwrap());
        assert!(!ori.poset_leq(j, r, q).unwrap());
        assert!(matches!(
            ori.poset_leq(data.full_set(), q, r),
            Err(Error::CyclicSubset)
        ));
    }

    #[test]
    fn disconnected_generators_incomparable() {
        let spec = CartanSpec {
            generators: vec!["a".into(), "b".into()],
            matrix: vec![vec![2, 0], vec![0, 2]],
            delta: None,
        };
        let data = CoxeterData::validate(&spec).unwrap();
        let ori = Orientation::new(&data, &[]).unwrap();
        let j = data.full_set();
        assert!(!ori.poset_leq(j, 0, 1).unwrap());
        assert!(!ori.poset_leq(j, 1, 0).unwrap());
    }

    #[test]
    fn acyclicity_is_monotone_under_inclusion() {
        let (data, ori) = config::bundled_group("hyperbolic-b3-mutation").unwrap();
        for j in GenSet::subsets(data.full_set()) {
            if !ori.is_acyclic(j) {
                for sup in GenSet::subsets(data.full_set()) {
                    if j.is_subset(sup) {
                        assert!(!ori.is_acyclic(sup));
                    }
                }
            }
        }
    }

    #[test]
    fn orientation_rejects_incomplete_or_doubled_edges() {
        let data = CoxeterData::validate(&a2_spec()).unwrap();
        assert!(matches!(
            Orientation::new(&data, &[]),
            Err(Error::MissingDirection { .. })
        ));
        assert!(matches!(
            Orientation::new(&data, &[(0, 1), (1, 0)]),
            Err(Error::BothDirections { .. })
        ));
    }

    #[test]
    fn all_orientations_of_a_path_diagram() {
        let (data, _) = config::bundled_group("a3").unwrap();
        let oris = all_orientations(&data);
        assert_eq!(oris.len(), 4);
        for ori in &oris {
            assert!(ori.is_acyclic(data.full_set()));
        }
    }

    #[test]
    fn subsets_enumeration() {
        let ground = GenSet::from_indices([0, 2]);
        let subs = GenSet::subsets(ground);
        assert_eq!(subs.len(), 4);
        assert!(subs.contains(&GenSet::EMPTY));
        assert!(subs.contains(&ground));
    }
}
