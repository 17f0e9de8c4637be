//! Symbolic cluster variables as Laurent polynomials with big-integer coefficients.
//!
//! Used as an independent oracle at small rank: the rank-2 exchange recurrence, and
//! g-vectors read off principal-coefficient expansions.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::ExchangeMatrix;
use crate::seed::Seed;

/// Sparse Laurent polynomial in a fixed number of variables.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Laurent {
    nvars: usize,
    terms: BTreeMap<Vec<i32>, BigInt>,
}

impl fmt::Debug for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(e, c)| format!("{c}*x^{e:?}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Laurent {
    pub fn zero(nvars: usize) -> Self {
        Self { nvars, terms: BTreeMap::new() }
    }

    pub fn monomial(exps: Vec<i32>, coeff: BigInt) -> Self {
        let nvars = exps.len();
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exps, coeff);
        }
        Self { nvars, terms }
    }

    pub fn one(nvars: usize) -> Self {
        Self::monomial(vec![0; nvars], BigInt::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(e, BigInt::one())
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i32>, &BigInt)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, e: Vec<i32>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<i32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one(self.nvars);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Exact quotient `self / d`, found by repeatedly cancelling lex-leading terms.
    /// Lex order on exponent vectors is a group order, so a true quotient is recovered
    /// term by term; a non-divisible input exhausts `step_limit`.
    pub fn div_exact(&self, d: &Self, step_limit: usize) -> Result<Self> {
        let (lead_e, lead_c) = d.terms.iter().next_back().ok_or(Error::ExpressionLimit)?;
        let mut rem = self.clone();
        let mut q = Self::zero(self.nvars);
        let mut steps = 0;
        while let Some((e, c)) = rem.terms.iter().next_back() {
            steps += 1;
            if steps > step_limit {
                return Err(Error::ExpressionLimit);
            }
            if (c % lead_c) != BigInt::zero() {
                return Err(Error::ExpressionLimit);
            }
            let te: Vec<i32> = e.iter().zip(lead_e).map(|(a, b)| a - b).collect();
            let t = Self::monomial(te, c / lead_c);
            rem = rem.sub(&t.mul(d));
            q = q.add(&t);
        }
        Ok(q)
    }

    /// Sum of the terms whose exponents vanish on the variables in `mask`.
    pub fn restrict_zero(&self, mask: &[bool]) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e.iter().zip(mask).all(|(x, &m)| !m || *x == 0) {
                out.add_term(e.clone(), c.clone());
            }
        }
        out
    }
}

/// Outcome of iterating the rank-2 recurrence.
#[derive(Clone, Debug)]
pub struct Rank2Orbit {
    /// z_0, z_1, ... as Laurent polynomials in (x_1, x_2).
    pub variables: Vec<Laurent>,
    /// Smallest m > 0 with (z_m, z_{m+1}) = (z_0, z_1), if found.
    pub period: Option<usize>,
    /// Set when the expression-size limit stopped the iteration.
    pub truncated: bool,
}

/// Iterates `z_{m+1} z_{m-1} = z_m^w + 1` for the matrix `[[0,p],[-q,0]]`, with `w`
/// alternating `q, p` starting from `(z_0, z_1) = (x_1, x_2)`.
pub fn rank2_symbolic_orbit(p: u32, q: u32, max_steps: usize) -> Rank2Orbit {
    const TERM_LIMIT: usize = 20_000;
    let mut vars = vec![Laurent::var(2, 0), Laurent::var(2, 1)];
    let one = Laurent::one(2);
    for m in 1..=max_steps {
        let w = if m % 2 == 1 { q } else { p };
        let num = vars[m].pow(w).add(&one);
        let next = match num.div_exact(&vars[m - 1], 4 * TERM_LIMIT) {
            Ok(z) if z.num_terms() <= TERM_LIMIT => z,
            _ => return Rank2Orbit { variables: vars, period: None, truncated: true },
        };
        vars.push(next);
        let len = vars.len();
        if len >= 3 && vars[len - 2] == vars[0] && vars[len - 1] == vars[1] {
            return Rank2Orbit { period: Some(len - 2), variables: vars, truncated: false };
        }
    }
    Rank2Orbit { variables: vars, period: None, truncated: false }
}

/// Principal-coefficient seed with symbolic cluster variables in `x_1..x_n, y_1..y_n`.
#[derive(Clone, Debug)]
pub struct SymbolicSeed {
    pub seed: Seed,
    pub cluster: Vec<Laurent>,
}

impl SymbolicSeed {
    pub fn initial(b: ExchangeMatrix) -> Self {
        let n = b.rank();
        let cluster = (0..n).map(|i| Laurent::var(2 * n, i)).collect();
        Self { seed: Seed::initial(b), cluster }
    }

    /// Mutation in direction `k` (1-based) with the principal-coefficient exchange relation.
    pub fn mutate(&self, k: usize) -> Result<Self> {
        let n = self.seed.rank();
        let kk = k - 1;
        let mut plus = Laurent::one(2 * n);
        let mut minus = Laurent::one(2 * n);
        for i in 0..n {
            let b = self.seed.b.get(i, kk);
            if b > 0 {
                plus = plus.mul(&self.cluster[i].pow(b as u32));
            } else if b < 0 {
                minus = minus.mul(&self.cluster[i].pow((-b) as u32));
            }
            let c = self.seed.c(i, kk);
            let mut e = vec![0; 2 * n];
            e[n + i] = c.unsigned_abs() as i32;
            let ymon = Laurent::monomial(e, BigInt::one());
            if c > 0 {
                plus = plus.mul(&ymon);
            } else if c < 0 {
                minus = minus.mul(&ymon);
            }
        }
        let fresh = plus.add(&minus).div_exact(&self.cluster[kk], 1_000_000)?;
        let mut cluster = self.cluster.clone();
        cluster[kk] = fresh;
        Ok(Self { seed: self.seed.mutate(k)?, cluster })
    }

    /// g-vector of the cluster variable at position `j` (0-based): the unique monomial
    /// that survives setting every `y_i` to zero.
    pub fn g_vector(&self, j: usize) -> Option<Vec<i64>> {
        let n = self.seed.rank();
        let mask: Vec<bool> = (0..2 * n).map(|i| i >= n).collect();
        let r = self.cluster[j].restrict_zero(&mask);
        let mut it = r.terms();
        let (e, c) = it.next()?;
        if it.next().is_some() || !c.is_one() {
            return None;
        }
        Some(e[..n].iter().map(|&x| x as i64).collect())
    }
}
