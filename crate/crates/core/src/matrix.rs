//! Exchange matrices, symmetrizers and matrix mutation.

use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{parse_err, Error, Result};

/// Positive diagonal `d` with `B·diag(d)` skew-symmetric, i.e. `b_ij d_j = -b_ji d_i`.
/// Normalized so that the entries of each connected component have gcd 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Symmetrizer(pub Vec<i64>);

impl Symmetrizer {
    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }
}

/// Square skew-symmetrizable integer matrix, stored row-major.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ExchangeMatrix {
    n: usize,
    entries: Vec<i64>,
}

impl fmt::Debug for ExchangeMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExchangeMatrix{:?}", self.rows())
    }
}

impl fmt::Display for ExchangeMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Returns the symmetrizer of `m` if one exists.
pub fn is_skew_symmetrizable(m: &[Vec<i64>]) -> Option<Symmetrizer> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return None;
    }
    for i in 0..n {
        if m[i][i] != 0 {
            return None;
        }
        for j in 0..n {
            if m[i][j].signum() != -m[j][i].signum() {
                return None;
            }
        }
    }
    // Propagate d_j / d_i = -b_ji / b_ij over each connected component.
    let mut d: Vec<Option<Ratio<i128>>> = vec![None; n];
    let mut out = vec![0i64; n];
    for root in 0..n {
        if d[root].is_some() {
            continue;
        }
        d[root] = Some(Ratio::from_integer(1));
        let mut comp = vec![root];
        let mut stack = vec![root];
        while let Some(i) = stack.pop() {
            let di = d[i].unwrap();
            for j in 0..n {
                if m[i][j] == 0 {
                    continue;
                }
                let dj = di * Ratio::new(-(m[j][i] as i128), m[i][j] as i128);
                match d[j] {
                    None => {
                        d[j] = Some(dj);
                        comp.push(j);
                        stack.push(j);
                    }
                    Some(old) if old != dj => return None,
                    Some(_) => {}
                }
            }
        }
        let lcm = comp.iter().fold(1i128, |acc, &i| acc.lcm(d[i].unwrap().denom()));
        let ints: Vec<i128> = comp.iter().map(|&i| (d[i].unwrap() * lcm).to_integer()).collect();
        let g = ints.iter().fold(0i128, |acc, x| acc.gcd(x));
        for (&i, v) in comp.iter().zip(ints) {
            out[i] = i64::try_from(v / g).ok()?;
        }
    }
    Some(Symmetrizer(out))
}

impl ExchangeMatrix {
    /// Builds a matrix from rows, rejecting anything that is not skew-symmetrizable.
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::NotSquare);
        }
        if is_skew_symmetrizable(&rows).is_none() {
            return Err(Error::NotSkewSymmetrizable);
        }
        Ok(Self { n, entries: rows.into_iter().flatten().collect() })
    }

    pub fn zero(n: usize) -> Self {
        Self { n, entries: vec![0; n * n] }
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    /// Entry `b_ij`, 0-based indices.
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.n + j]
    }

    pub fn flat(&self) -> &[i64] {
        &self.entries
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.entries.chunks(self.n.max(1)).take(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn symmetrizer(&self) -> Symmetrizer {
        is_skew_symmetrizable(&self.rows()).expect("constructed matrices are skew-symmetrizable")
    }

    pub fn is_skew_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| self.get(i, j) == -self.get(j, i)))
    }

    pub fn negate(&self) -> Self {
        Self { n: self.n, entries: self.entries.iter().map(|x| -x).collect() }
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let mut entries = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                entries[j * n + i] = self.get(i, j);
            }
        }
        Self { n, entries }
    }

    /// Relabels vertices: vertex `i` of `self` becomes vertex `perm[i]` of the result.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        let n = self.n;
        let mut entries = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                entries[perm[i] * n + perm[j]] = self.get(i, j);
            }
        }
        Self { n, entries }
    }

    /// Mutation in direction `k` (1-based).
    pub fn mutate(&self, k: usize) -> Result<Self> {
        if k == 0 || k > self.n {
            return Err(Error::Direction { k, n: self.n });
        }
        let mut out = self.clone();
        mutate_block(&mut out.entries, self.n, self.n, &self.entries, k - 1, true)?;
        Ok(out)
    }

    pub fn max_abs_product(&self) -> i64 {
        let mut best = 0;
        for i in 0..self.n {
            for j in 0..self.n {
                best = best.max(-(self.get(i, j) * self.get(j, i)));
            }
        }
        best
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{}\n", self.n);
        for r in self.rows() {
            let line: Vec<String> = r.iter().map(|x| x.to_string()).collect();
            s.push_str(&line.join(" "));
            s.push('\n');
        }
        s
    }

    /// Parses the matrix text format: rank on the first line, then `n` rows; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (ln, first) = lines.next().ok_or_else(|| parse_err(1, "empty input"))?;
        let n: usize = first.parse().map_err(|_| parse_err(ln, "expected rank"))?;
        let mut rows = Vec::with_capacity(n);
        for _ in 0..n {
            let (ln, l) = lines.next().ok_or_else(|| parse_err(ln, "missing matrix row"))?;
            let row: std::result::Result<Vec<i64>, _> = l.split_whitespace().map(str::parse).collect();
            let row = row.map_err(|_| parse_err(ln, "bad integer"))?;
            if row.len() != n {
                return Err(parse_err(ln, format!("expected {n} entries")));
            }
            rows.push(row);
        }
        if let Some((ln, _)) = lines.next() {
            return Err(parse_err(ln, "trailing content"));
        }
        Self::new(rows)
    }
}

/// Applies the mutation rule at column `k` (0-based) to the `rows × cols` block `m`,
/// where `b` is a copy of the current `cols × cols` exchange matrix supplying row `k`.
/// With `exchange` set, `m` is the exchange matrix itself and its row `k` is negated too.
pub(crate) fn mutate_block(m: &mut [i64], rows: usize, cols: usize, b: &[i64], k: usize, exchange: bool) -> Result<()> {
    for i in 0..rows {
        let mik = m[i * cols + k];
        if mik == 0 {
            continue;
        }
        for j in 0..cols {
            if j == k {
                continue;
            }
            let prod = mik.checked_mul(b[k * cols + j]).ok_or(Error::Overflow)?;
            if prod > 0 {
                let delta = if mik > 0 { prod } else { -prod };
                let v = &mut m[i * cols + j];
                *v = v.checked_add(delta).ok_or(Error::Overflow)?;
            }
        }
        m[i * cols + k] = -mik;
    }
    if exchange {
        for j in 0..cols {
            m[k * cols + j] = -m[k * cols + j];
        }
    }
    Ok(())
}

/// Standalone mutation: `mutate_matrix(b, k)` with `k` 1-based.
pub fn mutate_matrix(b: &ExchangeMatrix, k: usize) -> Result<ExchangeMatrix> {
    b.mutate(k)
}
