//! Seeds with principal coefficients: an exchange matrix stacked over its C-matrix.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{mutate_block, ExchangeMatrix};
use crate::word::MutationWord;

/// Exchange matrix `b` together with the C-matrix `c` (rows are initial directions,
/// columns are current cluster positions).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Seed {
    pub b: ExchangeMatrix,
    c: Vec<i64>,
    pub depth: usize,
}

impl Seed {
    /// The initial seed `(b, I)`.
    pub fn initial(b: ExchangeMatrix) -> Self {
        let n = b.rank();
        let mut c = vec![0; n * n];
        for i in 0..n {
            c[i * n + i] = 1;
        }
        Self { b, c, depth: 0 }
    }

    pub fn rank(&self) -> usize {
        self.b.rank()
    }

    #[inline]
    pub fn c(&self, i: usize, j: usize) -> i64 {
        self.c[i * self.rank() + j]
    }

    pub fn c_flat(&self) -> &[i64] {
        &self.c
    }

    pub fn c_rows(&self) -> Vec<Vec<i64>> {
        let n = self.rank();
        self.c.chunks(n.max(1)).take(n).map(|r| r.to_vec()).collect()
    }

    pub fn c_is_identity(&self) -> bool {
        let n = self.rank();
        (0..n).all(|i| (0..n).all(|j| self.c(i, j) == i64::from(i == j)))
    }

    /// Mutation in direction `k` (1-based). Fails loudly if a C-column loses sign-coherence.
    pub fn mutate(&self, k: usize) -> Result<Self> {
        let n = self.rank();
        let b = self.b.mutate(k)?;
        let mut c = self.c.clone();
        mutate_block(&mut c, n, n, self.b.flat(), k - 1, false)?;
        let out = Self { b, c, depth: self.depth + 1 };
        out.check_sign_coherence()?;
        Ok(out)
    }

    pub fn check_sign_coherence(&self) -> Result<()> {
        let n = self.rank();
        for col in 0..n {
            let (mut pos, mut neg) = (false, false);
            for i in 0..n {
                let v = self.c(i, col);
                pos |= v > 0;
                neg |= v < 0;
            }
            if pos && neg {
                return Err(Error::SignCoherence { col });
            }
        }
        Ok(())
    }

    /// Determinant of the C-matrix, computed exactly by fraction-free elimination.
    pub fn c_determinant(&self) -> i128 {
        determinant(&self.c_rows())
    }

    /// Permutes cluster positions: position `j` moves to `perm[j]`.
    pub fn relabel_positions(&self, perm: &[usize]) -> Self {
        let n = self.rank();
        let mut c = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                c[i * n + perm[j]] = self.c(i, j);
            }
        }
        Self { b: self.b.relabel(perm), c, depth: self.depth }
    }
}

/// Bareiss determinant over `i128`.
pub fn determinant(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            let Some(p) = (k + 1..n).find(|&r| a[r][k] != 0) else { return 0 };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    if n == 0 {
        1
    } else {
        sign * a[n - 1][n - 1]
    }
}

pub fn mutate_seed(s: &Seed, k: usize) -> Result<Seed> {
    s.mutate(k)
}

/// Applies `w` left to right: the first letter is mutated first.
pub fn apply_word(s: &Seed, w: &MutationWord) -> Result<Seed> {
    let mut cur = s.clone();
    for &k in w.letters() {
        cur = cur.mutate(k)?;
    }
    Ok(cur)
}

/// Applies `w` to the exchange matrix alone.
pub fn apply_word_matrix(b: &ExchangeMatrix, w: &MutationWord) -> Result<ExchangeMatrix> {
    let mut cur = b.clone();
    for &k in w.letters() {
        cur = cur.mutate(k)?;
    }
    Ok(cur)
}

/// `w` preserves the exchange matrix entry-wise.
pub fn is_mutationally_trivial(b: &ExchangeMatrix, w: &MutationWord) -> Result<bool> {
    Ok(apply_word_matrix(b, w)? == *b)
}

/// `w` returns the principal-coefficient seed to `(b, I)`.
pub fn is_trivial_word(b: &ExchangeMatrix, w: &MutationWord) -> Result<bool> {
    let s = apply_word(&Seed::initial(b.clone()), w)?;
    Ok(s.b == *b && s.c_is_identity())
}
