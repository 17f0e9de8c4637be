//! Mutation words and enhanced words (word × permutation).

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{parse_err, Error, Result};

/// A sequence of 1-based directions with no immediate repetition.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MutationWord(Vec<usize>);

impl MutationWord {
    pub fn empty() -> Self {
        Self(Vec::new())
    }

    /// Rejects zero letters and immediate repetitions.
    pub fn new(letters: Vec<usize>) -> Result<Self> {
        for (pos, w) in letters.windows(2).enumerate() {
            if w[0] == w[1] {
                return Err(Error::Repetition { letter: w[0], pos: pos + 1 });
            }
        }
        if let Some(pos) = letters.iter().position(|&l| l == 0) {
            return Err(Error::Direction { k: letters[pos], n: 0 });
        }
        Ok(Self(letters))
    }

    /// Cancels adjacent equal letters until none remain (mutations are involutions).
    pub fn reduced(letters: &[usize]) -> Self {
        let mut out: Vec<usize> = Vec::with_capacity(letters.len());
        for &l in letters {
            if out.last() == Some(&l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Self(out)
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Reversed letter sequence; as a mutation sequence it undoes `self`.
    pub fn inverse(&self) -> Self {
        Self(self.0.iter().rev().copied().collect())
    }

    /// `self` repeated `k` times, reduced at the seams.
    pub fn pow(&self, k: usize) -> Self {
        let mut all = Vec::with_capacity(self.0.len() * k);
        for _ in 0..k {
            all.extend_from_slice(&self.0);
        }
        Self::reduced(&all)
    }

    pub fn concat(&self, other: &Self) -> Self {
        let mut all = self.0.clone();
        all.extend_from_slice(&other.0);
        Self::reduced(&all)
    }

    pub fn max_letter(&self) -> usize {
        self.0.iter().copied().max().unwrap_or(0)
    }

    /// Relabels letters: `i` becomes `sigma(i)`.
    pub fn relabel(&self, sigma: &Permutation) -> Self {
        Self(self.0.iter().map(|&l| sigma.apply(l)).collect())
    }

    /// Parses `"3,2,1^10"` or `"[3,2,1]^10"`: comma-separated letters, optionally
    /// repeated by a trailing `^k`. Empty input or `"()"` is the empty word.
    pub fn parse(text: &str) -> Result<Self> {
        Self::new(parse_letters(text)?)
    }

    /// Like [`MutationWord::parse`] but cancels repetitions instead of rejecting them.
    pub fn parse_reduced(text: &str) -> Result<Self> {
        Ok(Self::reduced(&parse_letters(text)?))
    }
}

fn parse_letters(text: &str) -> Result<Vec<usize>> {
    let text = text.trim();
    let (body, reps) = match text.rsplit_once('^') {
        Some((b, r)) => (b, r.trim().parse::<usize>().map_err(|_| parse_err(1, "bad repetition count"))?),
        None => (text, 1),
    };
    let body = body.trim().trim_start_matches(['[', '(']).trim_end_matches([']', ')']);
    let mut letters = Vec::new();
    for tok in body.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let l: usize = tok.parse().map_err(|_| parse_err(1, format!("bad letter `{tok}`")))?;
        if l == 0 {
            return Err(parse_err(1, "directions are 1-based"));
        }
        letters.push(l);
    }
    let mut out = Vec::with_capacity(letters.len() * reps);
    for _ in 0..reps {
        out.extend_from_slice(&letters);
    }
    Ok(out)
}

impl fmt::Display for MutationWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|l| l.to_string()).collect();
        write!(f, "[{}]", s.join(","))
    }
}

/// Permutation of `1..=n`, stored as 0-based images.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self((0..n).collect())
    }

    /// From 1-based images: `images[i-1] = sigma(i)`.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        let mut v = Vec::with_capacity(n);
        for &x in images {
            if x == 0 || x > n || seen[x - 1] {
                return Err(Error::NotPermutation);
            }
            seen[x - 1] = true;
            v.push(x - 1);
        }
        Ok(Self(v))
    }

    /// Transposition of `i` and `j` (1-based).
    pub fn transposition(n: usize, i: usize, j: usize) -> Self {
        let mut v: Vec<usize> = (0..n).collect();
        v.swap(i - 1, j - 1);
        Self(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `sigma(i)` on 1-based labels.
    pub fn apply(&self, i: usize) -> usize {
        self.0[i - 1] + 1
    }

    pub fn as_zero_based(&self) -> &[usize] {
        &self.0
    }

    pub fn inverse(&self) -> Self {
        let mut v = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            v[x] = i;
        }
        Self(v)
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Self) -> Self {
        Self(other.0.iter().map(|&x| self.0[x]).collect())
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x)
    }
}

/// Element of the enhanced word group `W × Σ_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EnhancedWord {
    pub word: MutationWord,
    pub sigma: Permutation,
}

impl EnhancedWord {
    pub fn new(word: MutationWord, sigma: Permutation) -> Self {
        Self { word, sigma }
    }

    pub fn identity(n: usize) -> Self {
        Self { word: MutationWord::empty(), sigma: Permutation::identity(n) }
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty() && self.sigma.is_identity()
    }

    /// `(w1 × σ1)(w2 × σ2) = w1·σ1⁻¹(w2) × σ1σ2`, with the letter sequence reduced.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.sigma.len() != other.sigma.len() {
            return Err(Error::RankMismatch(self.sigma.len(), other.sigma.len()));
        }
        let moved = other.word.relabel(&self.sigma.inverse());
        Ok(Self { word: self.word.concat(&moved), sigma: self.sigma.compose(&other.sigma) })
    }

    /// `(w × σ)⁻¹ = σ(w⁻¹) × σ⁻¹`.
    pub fn inverse(&self) -> Self {
        Self { word: self.word.inverse().relabel(&self.sigma), sigma: self.sigma.inverse() }
    }
}

pub fn compose_enhanced(e1: &EnhancedWord, e2: &EnhancedWord) -> Result<EnhancedWord> {
    e1.compose(e2)
}
