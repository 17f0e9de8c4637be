//! Ping-pong certificates for a pair of mutation words acting on g-vectors.
//!
//! For cone sets the local structure is proved exactly: the word power is linear on the
//! whole cone (sign conditions on every traced functional) and equals a translation
//! `x + p kappa(x) axis` there, so the cone halves are invariant. Crossing between the
//! two generators is checked on a deterministic sample of each set.

use std::fmt::Write as _;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::sets::{sign_constant_on_cone, sign_constant_on_wedge};
use super::{
    cones_disjoint, dot, gvec, gvec_q, linear_piece_at, max_norm, qser, rat, ratio, translation_law, wedges_disjoint,
    Cone, GConvention, GVector, PingPongSet, Plan, Rat, Wedge,
};
use crate::catalog::PublishedCase;
use crate::error::Result;
use crate::matrix::ExchangeMatrix;
use crate::seed::is_mutationally_trivial;
use crate::word::MutationWord;

/// Largest power tried in the crossing search.
pub const MAX_POWER: usize = 1 << 10;

const MAX_PERIOD: usize = 12;
const RANDOM_SAMPLES: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SetId {
    #[serde(rename = "X_a+")]
    APlus,
    #[serde(rename = "X_a-")]
    AMinus,
    #[serde(rename = "X_b+")]
    BPlus,
    #[serde(rename = "X_b-")]
    BMinus,
}

impl SetId {
    pub const ALL: [SetId; 4] = [SetId::APlus, SetId::AMinus, SetId::BPlus, SetId::BMinus];

    fn index(self) -> usize {
        self as usize
    }

    fn is_a(self) -> bool {
        matches!(self, SetId::APlus | SetId::AMinus)
    }

    fn is_plus(self) -> bool {
        matches!(self, SetId::APlus | SetId::BPlus)
    }
}

/// Shape of the four sets: round cones about the axes, or explicit planar wedges
/// `[X_a^+, X_a^-, X_b^+, X_b^-]` given as `(u, w)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SetGeometry {
    Cones,
    Wedges([(GVector, GVector); 4]),
}

#[derive(Clone, Debug)]
pub struct PingPongInput {
    pub case: String,
    pub matrix: ExchangeMatrix,
    pub word_a: MutationWord,
    pub word_b: MutationWord,
    pub axis_a: GVector,
    pub axis_b: GVector,
    /// Any nonzero multiple of the computed translation functional; `None` uses the
    /// computed one.
    pub kappa_a: Option<GVector>,
    pub kappa_b: Option<GVector>,
    pub geometry: SetGeometry,
    /// Fixed epsilon; `None` searches `1/2^k` at half the linearity threshold.
    pub epsilon: Option<Rat>,
    pub max_power: usize,
}

impl PingPongInput {
    pub fn from_case(case: &PublishedCase) -> Result<Self> {
        let oriented = |law: Option<crate::catalog::PrintedLaw>| {
            law.map(|l| gvec_q(l.kappa).into_iter().map(|x| x * rat(l.sign)).collect::<GVector>())
        };
        let geometry = match &case.wedges {
            Some(ws) => SetGeometry::Wedges(ws.map(|s| (gvec(s.u), gvec(s.w)))),
            None => SetGeometry::Cones,
        };
        Ok(Self {
            case: case.id.to_string(),
            matrix: case.matrix(),
            word_a: MutationWord::parse(case.word_a)?,
            word_b: MutationWord::parse(case.word_b)?,
            axis_a: gvec_q(case.axis_a),
            axis_b: gvec_q(case.axis_b),
            kappa_a: oriented(case.law_a),
            kappa_b: oriented(case.law_b),
            geometry,
            epsilon: case.epsilon.map(|(n, d)| ratio(n, d)),
            max_power: MAX_POWER,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sample {
    pub set: SetId,
    #[serde(with = "qser::vector")]
    pub point: GVector,
}

/// A sample with the sign trace and margin of its own generator power at that point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleRecord {
    pub set: SetId,
    #[serde(with = "qser::vector")]
    pub point: GVector,
    pub trace: String,
    #[serde(with = "qser::scalar")]
    pub margin: Rat,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status")]
pub enum Verdict {
    Valid,
    Refuted { reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedSet {
    pub id: SetId,
    pub set: PingPongSet,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PingPongCertificate {
    pub case: String,
    pub matrix: Vec<Vec<i64>>,
    pub words: [String; 2],
    #[serde(with = "qser_pair")]
    pub axes: [GVector; 2],
    /// The functionals as supplied (or computed, when none were supplied).
    #[serde(with = "qser::opt_pair")]
    pub kappas: Option<[GVector; 2]>,
    #[serde(with = "qser::scalar")]
    pub epsilon: Rat,
    #[serde(rename = "N")]
    pub n: usize,
    pub convention: GConvention,
    pub periods: [usize; 2],
    pub sets: Vec<NamedSet>,
    pub checks: Vec<CheckRecord>,
    pub samples: Vec<SampleRecord>,
    pub verdict: Verdict,
}

impl PingPongCertificate {
    pub fn is_valid(&self) -> bool {
        self.verdict == Verdict::Valid
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn from_json(text: &str) -> std::result::Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

mod qser_pair {
    use super::{qser, GVector};
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &[GVector; 2], s: S) -> Result<S::Ok, S::Error> {
        qser::opt_pair::serialize(&Some(x.clone()), s)
    }
    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<[GVector; 2], D::Error> {
        use serde::de::Error;
        qser::opt_pair::deserialize(d)?.ok_or_else(|| D::Error::custom("missing axes"))
    }
}

fn fnv1a(s: &str) -> u64 {
    s.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ u64::from(b)).wrapping_mul(0x0000_0100_0000_01b3))
}

fn fmt_vec(x: &[Rat]) -> String {
    let parts: Vec<String> = x.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(","))
}

/// Smallest integer `m` with `m^2 >= q`.
fn ceil_sqrt(q: &Rat) -> i64 {
    let mut m = 1i64;
    while rat(m * m) < *q {
        m += 1;
    }
    m
}

/// Deterministic samples of every set: for cones, the axis perturbed by `+-eps/2` along
/// each coordinate direction projected to the axis complement, then 16 seeded random
/// points; for wedges, `2n` evenly spaced ratios `nu/T` and 16 seeded random ones.
pub fn generate_samples(sets: &[NamedSet], case: &str) -> Vec<Sample> {
    let mut rng = ChaCha8Rng::seed_from_u64(fnv1a(case));
    let mut out = Vec::new();
    let find = |id: SetId| sets.iter().find(|s| s.id == id).map(|s| &s.set);
    for (plus, minus) in [(SetId::APlus, SetId::AMinus), (SetId::BPlus, SetId::BMinus)] {
        match (find(plus), find(minus)) {
            (Some(PingPongSet::Cone(cp)), Some(PingPongSet::Cone(_))) => {
                let v = &cp.axis;
                let n = v.len();
                let vv = dot(v, v);
                let lower = if vv >= Rat::one() { Rat::one() } else { vv.clone() };
                let project = |r: &[Rat]| -> GVector {
                    let f = dot(r, v) / &vv;
                    r.iter().zip(v).map(|(a, b)| a - &f * b).collect()
                };
                let push = |x: GVector, out: &mut Vec<Sample>| {
                    let k = dot(&cp.kappa, &x);
                    let set = if k.is_positive() {
                        plus
                    } else if k.is_negative() {
                        minus
                    } else {
                        return false;
                    };
                    out.push(Sample { set, point: x });
                    true
                };
                let half = &cp.epsilon * &lower / rat(2);
                for i in 0..n {
                    let mut e = vec![Rat::zero(); n];
                    e[i] = Rat::one();
                    let p = project(&e);
                    for s in [1, -1] {
                        let x: GVector = v.iter().zip(&p).map(|(a, b)| a + b * &half * rat(s)).collect();
                        push(x, &mut out);
                    }
                }
                let mut accepted = 0;
                let mut attempts = 0;
                while accepted < RANDOM_SAMPLES && attempts < 1000 {
                    attempts += 1;
                    let r: GVector = (0..n).map(|_| rat(rng.gen_range(-9..=9))).collect();
                    let w = project(&r);
                    if w.iter().all(Zero::is_zero) {
                        continue;
                    }
                    let m = ceil_sqrt(&dot(&w, &w));
                    let t = ratio(rng.gen_range(1..=15), 16);
                    let alpha = rat(rng.gen_range(1..=5));
                    let scale = &cp.epsilon * &t * &lower / rat(m);
                    let x: GVector = v.iter().zip(&w).map(|(a, b)| (a + b * &scale) * &alpha).collect();
                    if push(x, &mut out) {
                        accepted += 1;
                    }
                }
            }
            _ => {
                for id in [plus, minus] {
                    let Some(PingPongSet::Wedge(wg)) = find(id) else { continue };
                    let n = wg.u.len() as i64;
                    for j in 1..=2 * n {
                        let nu = &wg.epsilon * ratio(j, 2 * n + 1);
                        out.push(Sample { set: id, point: wg.point(&Rat::one(), &nu) });
                    }
                    for _ in 0..RANDOM_SAMPLES {
                        let t = rat(rng.gen_range(1..=8));
                        let nu = &wg.epsilon * &t * ratio(rng.gen_range(1..=31), 32);
                        out.push(Sample { set: id, point: wg.point(&t, &nu) });
                    }
                }
            }
        }
    }
    out
}

pub fn check_pingpong(input: &PingPongInput) -> PingPongCertificate {
    check_pingpong_with_samples(input, None)
}

struct Generator {
    fwd: Plan,
    inv: Plan,
}

impl Generator {
    fn power(&self, x: &[Rat], signed: i64) -> GVector {
        if signed >= 0 {
            self.fwd.apply_times(x, signed as usize)
        } else {
            self.inv.apply_times(x, signed.unsigned_abs() as usize)
        }
    }
}

/// Runs every check; `samples` replaces the generated sample set (used for replay).
pub fn check_pingpong_with_samples(input: &PingPongInput, samples: Option<Vec<Sample>>) -> PingPongCertificate {
    let mut cert = PingPongCertificate {
        case: input.case.clone(),
        matrix: input.matrix.rows(),
        words: [input.word_a.to_string(), input.word_b.to_string()],
        axes: [input.axis_a.clone(), input.axis_b.clone()],
        kappas: None,
        epsilon: Rat::zero(),
        n: 0,
        convention: GConvention::Negate,
        periods: [0, 0],
        sets: Vec::new(),
        checks: Vec::new(),
        samples: Vec::new(),
        verdict: Verdict::Valid,
    };
    if let Err(reason) = run_checks(input, samples, &mut cert) {
        cert.verdict = Verdict::Refuted { reason };
    }
    cert
}

fn record(cert: &mut PingPongCertificate, name: &str, passed: bool, detail: String) -> std::result::Result<(), String> {
    cert.checks.push(CheckRecord { name: name.to_string(), passed, detail: detail.clone() });
    if passed {
        Ok(())
    } else {
        Err(format!("{name}: {detail}"))
    }
}

fn fail(cert: &mut PingPongCertificate, name: &str, detail: String) -> String {
    let reason = format!("{name}: {detail}");
    cert.checks.push(CheckRecord { name: name.to_string(), passed: false, detail });
    reason
}

/// Supplied functional must be a nonzero multiple `c` of the computed one; returns `c`.
fn proportional(computed: &[Rat], supplied: &[Rat]) -> Option<Rat> {
    let i = supplied.iter().position(|x| !x.is_zero())?;
    let c = &computed[i] / &supplied[i];
    (!c.is_zero() && computed.iter().zip(supplied).all(|(x, y)| *x == &c * y)).then_some(c)
}

fn run_checks(
    input: &PingPongInput,
    samples: Option<Vec<Sample>>,
    cert: &mut PingPongCertificate,
) -> std::result::Result<(), String> {
    let b = &input.matrix;
    let n = b.rank();
    if input.axis_a.len() != n || input.axis_b.len() != n {
        return Err("axis length differs from the rank".to_string());
    }

    let fixes = |w: &MutationWord| is_mutationally_trivial(b, w).map_err(|e| e.to_string());
    let (fa, fb) = (fixes(&input.word_a)?, fixes(&input.word_b)?);
    record(cert, "fixes_b", fa && fb, format!("word a fixes B: {fa}; word b fixes B: {fb}"))?;

    let plan = |w: &MutationWord| Plan::new(b, w, GConvention::Negate).map_err(|e| e.to_string());

    let (sets, periods, eps) = match &input.geometry {
        SetGeometry::Cones => cone_sets(input, cert, &plan)?,
        SetGeometry::Wedges(ws) => wedge_sets(input, ws, cert, &plan)?,
    };
    cert.sets = sets.clone();
    cert.periods = periods;
    cert.epsilon = eps;

    let gen = |w: &MutationWord, p: usize| -> std::result::Result<Generator, String> {
        Ok(Generator { fwd: plan(&w.pow(p))?, inv: plan(&w.pow(p).inverse())? })
    };
    let ga = gen(&input.word_a, 1)?;
    let gb = gen(&input.word_b, 1)?;
    let set_of = |id: SetId| &sets[id.index()].set;

    let samples = samples.unwrap_or_else(|| generate_samples(&sets, &input.case));
    for s in &samples {
        if s.point.len() != n || !set_of(s.set).contains(&s.point) {
            return Err(format!("sample {} is not in {:?}", fmt_vec(&s.point), s.set));
        }
    }
    let count = |id: SetId| samples.iter().filter(|s| s.set == id).count();
    let counts: Vec<usize> = SetId::ALL.iter().map(|&id| count(id)).collect();
    record(
        cert,
        "samples",
        counts.iter().all(|&c| c > 0),
        format!("{} samples, per set {:?}", samples.len(), counts),
    )?;

    // own-generator power at every sample: exact law and invariance
    let own = |s: &Sample| -> (&Generator, usize) {
        if s.set.is_a() {
            (&ga, periods[0])
        } else {
            (&gb, periods[1])
        }
    };
    let law_failures: Vec<String> = samples
        .par_iter()
        .filter_map(|s| {
            let (g, p) = own(s);
            let signed = if s.set.is_plus() { p as i64 } else { -(p as i64) };
            let image = g.power(&s.point, signed);
            let expected = match set_of(s.set) {
                PingPongSet::Cone(c) => {
                    let shift = dot(&c.kappa, &s.point) * rat(signed);
                    Some(s.point.iter().zip(&c.axis).map(|(x, v)| x + &shift * v).collect::<GVector>())
                }
                PingPongSet::Wedge(_) => None,
            };
            if expected.is_some_and(|e| e != image) {
                return Some(format!("translation law fails at {}", fmt_vec(&s.point)));
            }
            (!set_of(s.set).contains(&image))
                .then(|| format!("power {signed} maps {} out of {:?}", fmt_vec(&s.point), s.set))
        })
        .collect();
    record(
        cert,
        "invariance",
        law_failures.is_empty(),
        law_failures.first().cloned().unwrap_or_else(|| "every sample stays in its set".to_string()),
    )?;

    // crossing: a^{+-N} sends every sample of X_b into X_a^{+-}, and symmetrically
    let step = periods[0].lcm(&periods[1]);
    let mut images: Vec<[GVector; 2]> = samples.iter().map(|s| [s.point.clone(), s.point.clone()]).collect();
    let mut applied = 0;
    let mut n_found = None;
    let mut last_failure = String::new();
    let mut target = step;
    while target <= input.max_power {
        let extra = (target - applied) as i64;
        images = samples
            .par_iter()
            .zip(images.par_iter())
            .map(|(s, [up, down])| {
                let g = if s.set.is_a() { &gb } else { &ga };
                [g.power(up, extra), g.power(down, -extra)]
            })
            .collect();
        applied = target;
        let failure = samples.iter().zip(&images).find_map(|(s, [up, down])| {
            let (plus, minus) = if s.set.is_a() { (SetId::BPlus, SetId::BMinus) } else { (SetId::APlus, SetId::AMinus) };
            if !set_of(plus).contains(up) {
                Some(format!("power {target} sends {} outside {:?}", fmt_vec(&s.point), plus))
            } else if !set_of(minus).contains(down) {
                Some(format!("power -{target} sends {} outside {:?}", fmt_vec(&s.point), minus))
            } else {
                None
            }
        });
        match failure {
            None => {
                n_found = Some(target);
                break;
            }
            Some(f) => last_failure = f,
        }
        target *= 2;
    }
    cert.n = n_found.unwrap_or(0);
    record(
        cert,
        "crossing",
        n_found.is_some(),
        match n_found {
            Some(nf) => format!("N = {nf}"),
            None => format!("no N up to {}: {last_failure}", input.max_power),
        },
    )?;

    cert.samples = samples
        .iter()
        .map(|s| {
            let (g, p) = own(s);
            let plan = if s.set.is_plus() { &g.fwd } else { &g.inv };
            let mut trace = String::with_capacity(plan.len() * p);
            let mut x = s.point.clone();
            let mut smallest: Option<Rat> = None;
            for _ in 0..p {
                for sign in plan.signs(&x) {
                    trace.push(sign.as_char());
                }
                let mut y = x.clone();
                for (k, col) in &plan.steps {
                    let a = y[*k].abs();
                    if smallest.as_ref().is_none_or(|m| &a < m) {
                        smallest = Some(a);
                    }
                    super::step_in_place(&mut y, *k, col, GConvention::Negate);
                }
                x = y;
            }
            let margin = smallest.map_or_else(Rat::one, |m| m / max_norm(&s.point));
            SampleRecord { set: s.set, point: s.point.clone(), trace, margin }
        })
        .collect();
    Ok(())
}

type PlanFn<'a> = dyn Fn(&MutationWord) -> std::result::Result<Plan, String> + 'a;

/// Functionals that must keep their sign near `v` for `plan` to stay linear there.
fn functionals_at(plan: &Plan, v: &[Rat]) -> std::result::Result<Vec<GVector>, String> {
    match plan.branches(v) {
        Ok(b) => Ok(b.functionals.into_iter().map(|(f, _)| f).collect()),
        Err(e) => Err(format!("probe {}: {e}", fmt_vec(v))),
    }
}

fn cone_sets(
    input: &PingPongInput,
    cert: &mut PingPongCertificate,
    plan: &PlanFn<'_>,
) -> std::result::Result<(Vec<NamedSet>, [usize; 2], Rat), String> {
    let b = &input.matrix;
    let mut laws = Vec::new();
    let mut supplied = Vec::new();
    let mut details = Vec::new();
    for (name, w, v, k) in [
        ("a", &input.word_a, &input.axis_a, &input.kappa_a),
        ("b", &input.word_b, &input.axis_b, &input.kappa_b),
    ] {
        let piece = linear_piece_at(b, w, v).map_err(|e| format!("linear piece of {name} at its axis: {e}"))?;
        let law = translation_law(&piece.matrix, v, MAX_PERIOD)
            .ok_or_else(|| format!("{name} is not a translation near {}", fmt_vec(v)))?;
        let given = k.clone().unwrap_or_else(|| law.kappa.clone());
        let c = proportional(&law.kappa, &given);
        let Some(c) = c else {
            return Err(fail(cert, "translation_law", format!("supplied kappa_{name} is not a multiple of {}", fmt_vec(&law.kappa))));
        };
        details.push(format!("{name}: period {}, kappa {} = {} x supplied", law.period, fmt_vec(&law.kappa), c));
        supplied.push(given);
        laws.push(law);
    }
    cert.kappas = Some([supplied[0].clone(), supplied[1].clone()]);
    record(cert, "translation_law", true, details.join("; "))?;

    let periods = [laws[0].period, laws[1].period];
    let mut probes = Vec::new();
    for (w, v, p) in [(&input.word_a, &input.axis_a, periods[0]), (&input.word_b, &input.axis_b, periods[1])] {
        for word in [w.pow(p), w.pow(p).inverse()] {
            probes.push((v.clone(), functionals_at(&plan(&word)?, v)?));
        }
    }
    let linear_on = |eps: &Rat| probes.iter().all(|(v, fs)| fs.iter().all(|l| sign_constant_on_cone(l, v, eps)));
    let disjoint = |eps: &Rat| cones_disjoint(&input.axis_a, &input.axis_b, eps);

    let eps = match &input.epsilon {
        Some(e) => e.clone(),
        None => {
            let found = (1..=40).map(|k| ratio(1, 1 << k)).find(|e| linear_on(&(e * rat(2))) && disjoint(e));
            found.ok_or_else(|| "no epsilon 1/2^k (k <= 40) gives linear, disjoint cones".to_string())?
        }
    };
    record(cert, "linear_on_sets", linear_on(&eps), format!("every traced sign is constant on the cones of width {eps}"))?;
    record(cert, "disjoint", disjoint(&eps), format!("cones about the two axes at width {eps}"))?;

    let cone = |axis: &GVector, kappa: &GVector, side: i8| {
        PingPongSet::Cone(Cone { axis: axis.clone(), epsilon: eps.clone(), kappa: kappa.clone(), side })
    };
    let sets = vec![
        NamedSet { id: SetId::APlus, set: cone(&input.axis_a, &laws[0].kappa, 1) },
        NamedSet { id: SetId::AMinus, set: cone(&input.axis_a, &laws[0].kappa, -1) },
        NamedSet { id: SetId::BPlus, set: cone(&input.axis_b, &laws[1].kappa, 1) },
        NamedSet { id: SetId::BMinus, set: cone(&input.axis_b, &laws[1].kappa, -1) },
    ];
    Ok((sets, periods, eps))
}

/// On a wedge `{T u + nu w}` the generator power must be linear, fix `u`, and send `w`
/// to `w + c u` with `c > 0`; that makes the wedge invariant.
fn wedge_sets(
    input: &PingPongInput,
    ws: &[(GVector, GVector); 4],
    cert: &mut PingPongCertificate,
    plan: &PlanFn<'_>,
) -> std::result::Result<(Vec<NamedSet>, [usize; 2], Rat), String> {
    let eps = input.epsilon.clone().ok_or_else(|| "wedge sets need an explicit epsilon".to_string())?;
    let wedges: Vec<Wedge> =
        ws.iter().map(|(u, w)| Wedge { u: u.clone(), w: w.clone(), epsilon: eps.clone() }).collect();

    let shift = |word: &MutationWord, wg: &Wedge| -> std::result::Result<Option<Rat>, String> {
        let (m, fs, _) = plan(word)?.piece(&wg.midpoint());
        if !fs.iter().all(|l| sign_constant_on_wedge(l, wg)) {
            return Ok(None);
        }
        let mu = super::mat_vec(&m, &wg.u);
        let mw = super::mat_vec(&m, &wg.w);
        if mu != wg.u {
            return Ok(None);
        }
        let i = wg.u.iter().position(|x| !x.is_zero()).expect("wedge direction is nonzero");
        let c = (&mw[i] - &wg.w[i]) / &wg.u[i];
        let ok = c.is_positive() && mw.iter().zip(&wg.w).zip(&wg.u).all(|((x, w), u)| *x == w + &c * u);
        Ok(ok.then_some(c))
    };

    let mut periods = [0, 0];
    let mut details = Vec::new();
    for (gi, (name, w)) in [("a", &input.word_a), ("b", &input.word_b)].into_iter().enumerate() {
        let (plus, minus) = (&wedges[2 * gi], &wedges[2 * gi + 1]);
        let mut found = None;
        for p in 1..=MAX_PERIOD {
            let up = shift(&w.pow(p), plus)?;
            let down = shift(&w.pow(p).inverse(), minus)?;
            if let (Some(cu), Some(cd)) = (up, down) {
                found = Some((p, cu, cd));
                break;
            }
        }
        let Some((p, cu, cd)) = found else {
            return Err(fail(cert, "linear_on_sets", format!("{name}: no power up to {MAX_PERIOD} is a shear on its wedges")));
        };
        periods[gi] = p;
        details.push(format!("{name}^{p}: w -> w + {cu} u on X_{name}+, inverse: w -> w + {cd} u on X_{name}-"));
    }
    record(cert, "linear_on_sets", true, details.join("; "))?;

    let disjoint = (0..2).all(|i| (2..4).all(|j| wedges_disjoint(&wedges[i], &wedges[j])));
    record(cert, "disjoint", disjoint, format!("wedges of generator a against wedges of b at width {eps}"))?;

    let sets = SetId::ALL
        .iter()
        .zip(wedges)
        .map(|(&id, wg)| NamedSet { id, set: PingPongSet::Wedge(wg) })
        .collect();
    Ok((sets, periods, eps))
}

/// Rebuilds the input from a certificate and re-runs every check on the embedded
/// samples; true iff the result is identical.
pub fn replay_certificate(cert: &PingPongCertificate) -> Result<bool> {
    let matrix = ExchangeMatrix::new(cert.matrix.clone())?;
    let geometry = if cert.sets.iter().all(|s| matches!(s.set, PingPongSet::Wedge(_))) && !cert.sets.is_empty() {
        let mut ws = Vec::new();
        for s in &cert.sets {
            if let PingPongSet::Wedge(w) = &s.set {
                ws.push((w.u.clone(), w.w.clone()));
            }
        }
        SetGeometry::Wedges(ws.try_into().map_err(|_| crate::error::Error::UnknownCase(cert.case.clone()))?)
    } else {
        SetGeometry::Cones
    };
    let input = PingPongInput {
        case: cert.case.clone(),
        matrix,
        word_a: MutationWord::parse(&cert.words[0])?,
        word_b: MutationWord::parse(&cert.words[1])?,
        axis_a: cert.axes[0].clone(),
        axis_b: cert.axes[1].clone(),
        kappa_a: cert.kappas.as_ref().map(|k| k[0].clone()),
        kappa_b: cert.kappas.as_ref().map(|k| k[1].clone()),
        geometry,
        // zero means the epsilon search itself failed; replay it
        epsilon: (!cert.epsilon.is_zero()).then(|| cert.epsilon.clone()),
        max_power: MAX_POWER,
    };
    let samples = cert.samples.iter().map(|s| Sample { set: s.set, point: s.point.clone() }).collect();
    let again = check_pingpong_with_samples(&input, Some(samples));
    Ok(again == *cert)
}

/// Human-readable summary used by the CLI.
pub fn summary(cert: &PingPongCertificate) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "case {}: {:?}", cert.case, cert.verdict);
    let _ = writeln!(s, "  words a = {}, b = {}", cert.words[0], cert.words[1]);
    let _ = writeln!(s, "  epsilon {}, N {}, periods {:?}", cert.epsilon, cert.n, cert.periods);
    for c in &cert.checks {
        let _ = writeln!(s, "  [{}] {}: {}", if c.passed { "ok" } else { "FAIL" }, c.name, c.detail);
    }
    s
}
