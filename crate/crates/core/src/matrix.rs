use std::fmt;

/// Square integer matrix, row-major. Small ranks only; no allocation tricks.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntMat {
    n: usize,
    entries: Vec<i64>,
}

impl IntMat {
    pub fn identity(n: usize) -> Self {
        let mut m = IntMat { n, entries: vec![0; n * n] };
        for i in 0..n {
            m.entries[i * n + i] = 1;
        }
        m
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> i64) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(f(i, j));
            }
        }
        IntMat { n, entries }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.n + j]
    }

    pub fn mul(&self, rhs: &IntMat) -> IntMat {
        debug_assert_eq!(self.n, rhs.n);
        let n = self.n;
        let mut out = vec![0i64; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.entries[i * n + k];
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    out[i * n + j] += a * rhs.entries[k * n + j];
                }
            }
        }
        IntMat { n, entries: out }
    }

    /// Matrix times column vector.
    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        let n = self.n;
        let mut out = vec![0i64; n];
        for i in 0..n {
            let mut acc = 0i64;
            for j in 0..n {
                acc += self.entries[i * n + j] * v[j];
            }
            out[i] = acc;
        }
        out
    }

    /// Column `j` as a vector (the image of the j-th basis vector).
    pub fn col(&self, j: usize) -> Vec<i64> {
        (0..self.n).map(|i| self.get(i, j)).collect()
    }

    pub fn col_is_nonpositive(&self, j: usize) -> bool {
        (0..self.n).all(|i| self.get(i, j) <= 0)
    }

    pub fn col_is_nonnegative(&self, j: usize) -> bool {
        (0..self.n).all(|i| self.get(i, j) >= 0)
    }

    pub fn is_identity(&self) -> bool {
        let n = self.n;
        self.entries
            .iter()
            .enumerate()
            .all(|(k, &v)| v == if k / n == k % n { 1 } else { 0 })
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }
}

impl fmt::Debug for IntMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<i64>> = (0..self.n)
            .map(|i| self.entries[i * self.n..(i + 1) * self.n].to_vec())
            .collect();
        write!(f, "{rows:?}")
    }
}

/// Rank over the rationals of a list of integer row vectors, by fraction-free
/// elimination in i128.
pub fn rank(rows: &[Vec<i64>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let ncols = rows[0].len();
    let mut m: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut rank = 0;
    let mut col = 0;
    while rank < m.len() && col < ncols {
        let pivot = (rank..m.len()).find(|&i| m[i][col] != 0);
        let Some(p) = pivot else {
            col += 1;
            continue;
        };
        m.swap(rank, p);
        let pv = m[rank][col];
        for i in 0..m.len() {
            if i == rank || m[i][col] == 0 {
                continue;
            }
            let f = m[i][col];
            for j in 0..ncols {
                m[i][j] = m[i][j] * pv - m[rank][j] * f;
            }
        }
        rank += 1;
        col += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mul_identity() {
        let a = IntMat::from_fn(3, |i, j| (i * 3 + j) as i64);
        assert_eq!(a.mul(&IntMat::identity(3)), a);
        assert_eq!(IntMat::identity(3).mul(&a), a);
    }

    #[test]
    fn rank_of_dependent_rows() {
        assert_eq!(rank(&[vec![1, 2], vec![2, 4]]), 1);
        assert_eq!(rank(&[vec![1, 0, 0], vec![0, 1, 0], vec![1, 1, 0]]), 2);
        assert_eq!(rank(&[vec![1, 0], vec![0, 1]]), 2);
    }
}
