//! Piecewise-linear action of mutation words on rational g-vectors, linear pieces,
//! translation laws, and ping-pong certificates built on them.

mod published;
mod pingpong;
mod sets;

pub use published::{verify_paper_action, verify_paper_action_with, Agreement, FormulaCheck, FormulaReport};
pub use pingpong::{
    check_pingpong, check_pingpong_with_samples, generate_samples, replay_certificate, summary, CheckRecord, NamedSet,
    PingPongCertificate, PingPongInput, Sample, SampleRecord, SetGeometry, SetId, Verdict, MAX_POWER,
};
pub use sets::{cones_disjoint, wedges_disjoint, Cone, PingPongSet, Wedge};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::ExchangeMatrix;
use crate::word::MutationWord;

pub type Rat = BigRational;
pub type GVector = Vec<Rat>;
pub type RatMatrix = Vec<Vec<Rat>>;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn gvec(xs: &[i64]) -> GVector {
    xs.iter().map(|&x| rat(x)).collect()
}

pub fn gvec_q(xs: &[(i64, i64)]) -> GVector {
    xs.iter().map(|&(n, d)| ratio(n, d)).collect()
}

/// What `g_step` does to the mutated coordinate itself.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GConvention {
    /// `g'_k = -g_k`, the involutive choice.
    #[default]
    Negate,
    /// `g'_k = g_k`, the coordinate left unchanged.
    Keep,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
    #[serde(rename = "0")]
    Zero,
}

impl Sign {
    pub fn of(x: &Rat) -> Sign {
        if x.is_positive() {
            Sign::Plus
        } else if x.is_negative() {
            Sign::Minus
        } else {
            Sign::Zero
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
            Sign::Zero => '0',
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub k: usize,
    pub base: ExchangeMatrix,
    pub sign: Sign,
}

/// Per-step record of a word applied to a g-vector.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PLTrace(pub Vec<TraceStep>);

impl PLTrace {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn signs(&self) -> String {
        self.0.iter().map(|s| s.sign.as_char()).collect()
    }
}

/// One step of the tropical g-vector recurrence for base `b` in direction `k` (1-based):
/// `g'_j = g_j + [b_jk]_+ g_k - b_jk [g_k]_-` for `j != k`.
pub fn g_step(b: &ExchangeMatrix, k: usize, g: &[Rat]) -> Result<GVector> {
    g_step_with(b, k, g, GConvention::Negate)
}

pub fn g_step_with(b: &ExchangeMatrix, k: usize, g: &[Rat], conv: GConvention) -> Result<GVector> {
    let n = b.rank();
    if k == 0 || k > n {
        return Err(Error::Direction { k, n });
    }
    if g.len() != n {
        return Err(Error::RankMismatch(g.len(), n));
    }
    let col: Vec<i64> = (0..n).map(|j| b.get(j, k - 1)).collect();
    let mut out = g.to_vec();
    step_in_place(&mut out, k - 1, &col, conv);
    Ok(out)
}

/// Since `[b]_+ - b [x]_-` collapses to `[b]_+` or `[-b]_+` by the sign of `x`, each
/// step adds a non-negative multiple of `g_k`.
fn step_in_place(g: &mut [Rat], k: usize, col: &[i64], conv: GConvention) {
    let gk = g[k].clone();
    let neg = gk.is_negative();
    for (j, &bjk) in col.iter().enumerate() {
        if j == k {
            continue;
        }
        let c = if neg { (-bjk).max(0) } else { bjk.max(0) };
        if c != 0 {
            g[j] += &gk * rat(c);
        }
    }
    if conv == GConvention::Negate {
        g[k] = -gk;
    }
}

pub(crate) struct Branches {
    pub(crate) matrix: RatMatrix,
    pub(crate) functionals: Vec<(GVector, Sign)>,
}

/// A word prepared against a fixed base matrix: the direction and the base column used
/// at every step.
#[derive(Clone, Debug)]
pub(crate) struct Plan {
    steps: Vec<(usize, Vec<i64>)>,
    conv: GConvention,
}

impl Plan {
    pub(crate) fn new(b: &ExchangeMatrix, w: &MutationWord, conv: GConvention) -> Result<Self> {
        let n = b.rank();
        let mut base = b.clone();
        let mut steps = Vec::with_capacity(w.len());
        for &k in w.letters() {
            if k == 0 || k > n {
                return Err(Error::Direction { k, n });
            }
            steps.push((k - 1, (0..n).map(|j| base.get(j, k - 1)).collect()));
            base = base.mutate(k)?;
        }
        Ok(Self { steps, conv })
    }

    pub(crate) fn len(&self) -> usize {
        self.steps.len()
    }

    pub(crate) fn apply(&self, g: &[Rat]) -> GVector {
        let mut out = g.to_vec();
        for (k, col) in &self.steps {
            step_in_place(&mut out, *k, col, self.conv);
        }
        out
    }

    /// `times`-fold application; only meaningful when the word fixes its base matrix.
    pub(crate) fn apply_times(&self, g: &[Rat], times: usize) -> GVector {
        let mut out = g.to_vec();
        for _ in 0..times {
            for (k, col) in &self.steps {
                step_in_place(&mut out, *k, col, self.conv);
            }
        }
        out
    }

    pub(crate) fn signs(&self, g: &[Rat]) -> Vec<Sign> {
        let mut out = g.to_vec();
        let mut signs = Vec::with_capacity(self.steps.len());
        for (k, col) in &self.steps {
            signs.push(Sign::of(&out[*k]));
            step_in_place(&mut out, *k, col, self.conv);
        }
        signs
    }

    /// Linear matrix of the word on the region with the given step signs, together
    /// with the functional read off at each step (coordinate `k` as a function of the
    /// input). A zero sign is resolved like a positive one.
    fn resolve_n(&self, n: usize, signs: &[Sign]) -> (RatMatrix, Vec<GVector>) {
        let mut m = identity(n);
        let mut functionals = Vec::with_capacity(self.steps.len());
        for ((k, col), sign) in self.steps.iter().zip(signs) {
            let row_k = m[*k].clone();
            functionals.push(row_k.clone());
            let neg = *sign == Sign::Minus;
            for (j, &bjk) in col.iter().enumerate() {
                if j == *k {
                    continue;
                }
                let c = if neg { (-bjk).max(0) } else { bjk.max(0) };
                if c != 0 {
                    let cq = rat(c);
                    for (x, y) in m[j].iter_mut().zip(&row_k) {
                        *x += y * &cq;
                    }
                }
            }
            if self.conv == GConvention::Negate {
                for x in m[*k].iter_mut() {
                    *x = -x.clone();
                }
            }
        }
        (m, functionals)
    }

    /// Linear piece at `v` allowing removable kinks. Steps where `g_k = 0` at `v` are
    /// resolved both ways; a sign assignment counts only if the half-spaces it asks for
    /// meet near `v`, and `v` is a genuine kink only if two such assignments give
    /// different matrices. The functionals of the nonzero steps of every branch are
    /// returned with their sign at `v`.
    pub(crate) fn branches(&self, v: &[Rat]) -> Result<Branches> {
        const MAX_ZERO_STEPS: usize = 12;
        let signs = self.signs(v);
        let zeros: Vec<usize> = (0..signs.len()).filter(|&i| signs[i] == Sign::Zero).collect();
        if zeros.len() > MAX_ZERO_STEPS {
            return Err(Error::Kink { step: zeros[0] + 1 });
        }
        let mut matrix: Option<RatMatrix> = None;
        let mut functionals = Vec::new();
        'masks: for mask in 0u32..(1 << zeros.len()) {
            let mut branch = signs.clone();
            for (bit, &i) in zeros.iter().enumerate() {
                branch[i] = if mask >> bit & 1 == 1 { Sign::Minus } else { Sign::Plus };
            }
            let (m, fs) = self.resolve_n(v.len(), &branch);
            let mut half_spaces = Vec::new();
            for &i in &zeros {
                if fs[i].iter().all(Zero::is_zero) {
                    // the coordinate vanishes identically here, only the `+` reading is real
                    if branch[i] == Sign::Minus {
                        continue 'masks;
                    }
                } else if branch[i] == Sign::Minus {
                    half_spaces.push(fs[i].iter().map(|x| -x.clone()).collect());
                } else {
                    half_spaces.push(fs[i].clone());
                }
            }
            if !sets::strictly_feasible(half_spaces) {
                continue;
            }
            match &matrix {
                Some(first) if *first != m => return Err(Error::Kink { step: zeros[0] + 1 }),
                Some(_) => {}
                None => matrix = Some(m),
            }
            for (i, f) in fs.into_iter().enumerate() {
                if signs[i] != Sign::Zero {
                    functionals.push((f, signs[i]));
                }
            }
        }
        Ok(Branches { matrix: matrix.unwrap_or_else(|| identity(v.len())), functionals })
    }

    /// Linear piece at `g` of a plan on rank-`n` vectors.
    pub(crate) fn piece(&self, g: &[Rat]) -> (RatMatrix, Vec<GVector>, Vec<Sign>) {
        let signs = self.signs(g);
        let (m, f) = self.resolve_n(g.len(), &signs);
        (m, f, signs)
    }
}

/// Applies `w` left to right, mutating the base matrix alongside.
pub fn apply_word_tropical(b: &ExchangeMatrix, w: &MutationWord, g: &[Rat]) -> Result<(GVector, PLTrace)> {
    apply_word_tropical_with(b, w, g, GConvention::Negate)
}

pub fn apply_word_tropical_with(
    b: &ExchangeMatrix,
    w: &MutationWord,
    g: &[Rat],
    conv: GConvention,
) -> Result<(GVector, PLTrace)> {
    if g.len() != b.rank() {
        return Err(Error::RankMismatch(g.len(), b.rank()));
    }
    let mut base = b.clone();
    let mut out = g.to_vec();
    let mut trace = Vec::with_capacity(w.len());
    for &k in w.letters() {
        let next = g_step_with(&base, k, &out, conv)?;
        trace.push(TraceStep { k, base: base.clone(), sign: Sign::of(&out[k - 1]) });
        out = next;
        base = base.mutate(k)?;
    }
    Ok((out, PLTrace(trace)))
}

/// Exact linear matrix of a word on the region around `v` where every traced sign
/// stays the same.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearPiece {
    #[serde(with = "qser::matrix")]
    pub matrix: RatMatrix,
    /// Smallest traced `|g_k|` divided by the max-norm of the input; 1 for the empty word.
    #[serde(with = "qser::scalar")]
    pub margin: Rat,
}

pub fn linear_piece_at(b: &ExchangeMatrix, w: &MutationWord, v: &[Rat]) -> Result<LinearPiece> {
    linear_piece_at_with(b, w, v, GConvention::Negate)
}

pub fn linear_piece_at_with(b: &ExchangeMatrix, w: &MutationWord, v: &[Rat], conv: GConvention) -> Result<LinearPiece> {
    if v.len() != b.rank() {
        return Err(Error::RankMismatch(v.len(), b.rank()));
    }
    let plan = Plan::new(b, w, conv)?;
    let branches = plan.branches(v)?;
    let mut x = v.to_vec();
    let mut smallest: Option<Rat> = None;
    for (k, col) in &plan.steps {
        let a = x[*k].abs();
        if !a.is_zero() && smallest.as_ref().is_none_or(|s| &a < s) {
            smallest = Some(a);
        }
        step_in_place(&mut x, *k, col, conv);
    }
    let matrix = branches.matrix;
    let norm = max_norm(v);
    let margin = match smallest {
        None => Rat::one(),
        Some(_) if norm.is_zero() => Rat::zero(),
        Some(s) => s / norm,
    };
    Ok(LinearPiece { matrix, margin })
}

/// `w^r(x) = x + r kappa(x) axis` for `r` a multiple of `period`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TranslationLaw {
    pub period: usize,
    #[serde(with = "qser::vector")]
    pub kappa: GVector,
}

/// Smallest `p <= max_period` with `M^p = I + p axis kappa^T` for a nonzero `kappa`,
/// given that `M` fixes the axis.
pub fn translation_law(m: &RatMatrix, axis: &[Rat], max_period: usize) -> Option<TranslationLaw> {
    let n = axis.len();
    if mat_vec(m, axis) != axis {
        return None;
    }
    let i0 = axis.iter().position(|x| !x.is_zero())?;
    let mut power = identity(n);
    for p in 1..=max_period {
        power = mat_mul(&power, m);
        let pq = rat(p as i64);
        let kappa: GVector = (0..n)
            .map(|j| {
                let d = &power[i0][j] - if i0 == j { Rat::one() } else { Rat::zero() };
                d / (&pq * &axis[i0])
            })
            .collect();
        if kappa.iter().all(Zero::is_zero) {
            continue;
        }
        let fits = (0..n).all(|i| {
            (0..n).all(|j| {
                let d = &power[i][j] - if i == j { Rat::one() } else { Rat::zero() };
                d == &pq * &axis[i] * &kappa[j]
            })
        });
        if fits {
            return Some(TranslationLaw { period: p, kappa });
        }
    }
    None
}

pub fn identity(n: usize) -> RatMatrix {
    (0..n).map(|i| (0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }).collect()).collect()
}

pub fn mat_mul(a: &RatMatrix, b: &RatMatrix) -> RatMatrix {
    let n = a.len();
    let m = b.first().map_or(0, Vec::len);
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| a[i].iter().zip(b).fold(Rat::zero(), |acc, (x, row)| acc + x * &row[j]))
                .collect()
        })
        .collect()
}

pub fn mat_vec(a: &RatMatrix, x: &[Rat]) -> GVector {
    a.iter().map(|row| dot(row, x)).collect()
}

pub fn dot(x: &[Rat], y: &[Rat]) -> Rat {
    x.iter().zip(y).fold(Rat::zero(), |acc, (a, b)| acc + a * b)
}

pub fn max_norm(x: &[Rat]) -> Rat {
    x.iter().map(|v| v.abs()).max().unwrap_or_else(Rat::zero)
}

pub fn matrix_from_ints(rows: &[&[i64]]) -> RatMatrix {
    rows.iter().map(|r| gvec(r)).collect()
}

/// Serde helpers writing rationals as strings such as `"-3/2"`.
pub mod qser {
    use super::Rat;
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    fn parse<'de, D: Deserializer<'de>>(s: &str) -> Result<Rat, D::Error> {
        s.parse::<Rat>().map_err(|_| D::Error::custom(format!("bad rational `{s}`")))
    }

    pub mod scalar {
        use super::*;
        pub fn serialize<S: Serializer>(x: &Rat, s: S) -> Result<S::Ok, S::Error> {
            x.to_string().serialize(s)
        }
        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
            parse::<D>(&String::deserialize(d)?)
        }
    }

    pub mod vector {
        use super::*;
        pub fn serialize<S: Serializer>(x: &[Rat], s: S) -> Result<S::Ok, S::Error> {
            x.iter().map(ToString::to_string).collect::<Vec<_>>().serialize(s)
        }
        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rat>, D::Error> {
            Vec::<String>::deserialize(d)?.iter().map(|s| parse::<D>(s)).collect()
        }
    }

    pub mod matrix {
        use super::*;
        pub fn serialize<S: Serializer>(x: &[Vec<Rat>], s: S) -> Result<S::Ok, S::Error> {
            x.iter()
                .map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>())
                .collect::<Vec<_>>()
                .serialize(s)
        }
        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<Rat>>, D::Error> {
            Vec::<Vec<String>>::deserialize(d)?
                .iter()
                .map(|r| r.iter().map(|s| parse::<D>(s)).collect())
                .collect()
        }
    }

    pub mod opt_pair {
        use super::*;
        pub fn serialize<S: Serializer>(x: &Option<[Vec<Rat>; 2]>, s: S) -> Result<S::Ok, S::Error> {
            x.as_ref()
                .map(|p| p.iter().map(|v| v.iter().map(ToString::to_string).collect::<Vec<_>>()).collect::<Vec<_>>())
                .serialize(s)
        }
        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<[Vec<Rat>; 2]>, D::Error> {
            let raw = Option::<[Vec<String>; 2]>::deserialize(d)?;
            raw.map(|[a, b]| {
                let conv = |v: &[String]| v.iter().map(|s| parse::<D>(s)).collect::<Result<Vec<_>, _>>();
                Ok([conv(&a)?, conv(&b)?])
            })
            .transpose()
        }
    }
}
