//! Replays the published linear-action formulas, translation laws, wedge formulas and
//! membership facts of each ping-pong case against the engine.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::sets::sign_constant_on_wedge;
use super::{
    apply_word_tropical_with, gvec, gvec_q, identity, linear_piece_at_with, mat_vec, matrix_from_ints, rat, ratio,
    translation_law, GConvention, GVector, Plan, Rat, RatMatrix, Sign, Wedge,
};
use crate::catalog::{published_case, Generator, LinearDisplay, PublishedCase, PrintedLaw, WedgeDisplay};
use crate::error::{Error, Result};
use crate::word::MutationWord;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Agreement {
    Exact,
    /// Computed functional = `factor` x printed functional.
    Scaled { factor: String },
    /// The printed formula is the action of the inverse word.
    InverseWord,
    /// Holds as `axis + M z` although printed relative to the moved point.
    AxisRelativeForm,
    Mismatch,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormulaCheck {
    pub item: String,
    pub agreement: Agreement,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormulaReport {
    pub case: String,
    pub convention: GConvention,
    pub checks: Vec<FormulaCheck>,
}

impl FormulaReport {
    pub fn all_exact(&self) -> bool {
        self.checks.iter().all(|c| c.agreement == Agreement::Exact)
    }

    /// Items whose agreement is anything but exact.
    pub fn deviations(&self) -> Vec<(String, Agreement)> {
        self.checks
            .iter()
            .filter(|c| c.agreement != Agreement::Exact)
            .map(|c| (c.item.clone(), c.agreement.clone()))
            .collect()
    }
}

fn fmt_matrix(m: &RatMatrix) -> String {
    let rows: Vec<String> =
        m.iter().map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")).collect();
    format!("[{}]", rows.join("; "))
}

fn fmt_vec(x: &[Rat]) -> String {
    format!("({})", x.iter().map(ToString::to_string).collect::<Vec<_>>().join(","))
}

struct Ctx<'a> {
    case: &'a PublishedCase,
    b: crate::matrix::ExchangeMatrix,
    conv: GConvention,
}

impl Ctx<'_> {
    fn word(&self, g: Generator) -> Result<MutationWord> {
        Ok(match g {
            Generator::A => MutationWord::parse(self.case.word_a)?,
            Generator::AInv => MutationWord::parse(self.case.word_a)?.inverse(),
            Generator::B => MutationWord::parse(self.case.word_b)?,
            Generator::BInv => MutationWord::parse(self.case.word_b)?.inverse(),
        })
    }

    fn axis(&self, g: Generator) -> GVector {
        match g {
            Generator::A | Generator::AInv => gvec_q(self.case.axis_a),
            Generator::B | Generator::BInv => gvec_q(self.case.axis_b),
        }
    }

    fn apply(&self, w: &MutationWord, x: &[Rat]) -> Result<GVector> {
        Ok(apply_word_tropical_with(&self.b, w, x, self.conv)?.0)
    }

    fn piece(&self, w: &MutationWord, v: &[Rat]) -> Result<RatMatrix> {
        Ok(linear_piece_at_with(&self.b, w, v, self.conv)?.matrix)
    }

    /// Pointwise replay: `w(v + d e_i) = v + d M e_i` for `+-d` along every coordinate,
    /// with `d` halved until every nonzero sign of the trace at `v` is kept.
    fn replay(&self, w: &MutationWord, v: &[Rat], m: &RatMatrix) -> Result<bool> {
        let plan = Plan::new(&self.b, w, self.conv)?;
        let at_v = plan.signs(v);
        let n = v.len();
        for i in 0..n {
            for s in [1i64, -1] {
                let mut found = false;
                for k in 1..=64 {
                    let d = ratio(s, 1) / Rat::from_integer(num_bigint::BigInt::from(2u8).pow(k));
                    let mut x = v.to_vec();
                    x[i] += &d;
                    let same = plan.signs(&x).iter().zip(&at_v).all(|(a, b)| *b == Sign::Zero || a == b);
                    if !same {
                        continue;
                    }
                    let got = plan.apply(&x);
                    let want: GVector = (0..n).map(|r| &v[r] + &d * &m[r][i]).collect();
                    if got != want {
                        return Ok(false);
                    }
                    found = true;
                    break;
                }
                if !found {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    fn display(&self, d: &LinearDisplay) -> Result<FormulaCheck> {
        let n = self.b.rank();
        let printed = matrix_from_ints(d.matrix);
        let expected = if d.relative_to_point {
            let id = identity(n);
            (0..n).map(|i| (0..n).map(|j| &id[i][j] + &printed[i][j]).collect()).collect()
        } else {
            printed.clone()
        };
        let w = self.word(d.generator)?;
        let v = self.axis(d.generator);
        let item = format!("display {}", d.name);
        let engine = match self.piece(&w, &v) {
            Ok(m) => m,
            Err(e) => return Ok(FormulaCheck { item, agreement: Agreement::Mismatch, detail: e.to_string() }),
        };
        if engine == expected && self.replay(&w, &v, &engine)? {
            return Ok(FormulaCheck { item, agreement: Agreement::Exact, detail: fmt_matrix(&engine) });
        }
        if d.relative_to_point && engine == printed {
            let detail = "the printed matrix is the axis-relative action w(v + z) = v + M z".to_string();
            return Ok(FormulaCheck { item, agreement: Agreement::AxisRelativeForm, detail });
        }
        if let Ok(inv) = self.piece(&w.inverse(), &v) {
            if inv == expected {
                let detail = format!("reproduced by the reversed word {}", w.inverse());
                return Ok(FormulaCheck { item, agreement: Agreement::InverseWord, detail });
            }
        }
        Ok(FormulaCheck { item, agreement: Agreement::Mismatch, detail: format!("engine {}", fmt_matrix(&engine)) })
    }

    fn law(&self, name: &str, g: Generator, law: &PrintedLaw) -> Result<FormulaCheck> {
        let item = format!("law {name}");
        let w = self.word(g)?;
        let v = self.axis(g);
        let mismatch = |detail: String| FormulaCheck { item: item.clone(), agreement: Agreement::Mismatch, detail };
        let m = match self.piece(&w, &v) {
            Ok(m) => m,
            Err(e) => return Ok(mismatch(e.to_string())),
        };
        let Some(tl) = translation_law(&m, &v, 12) else {
            return Ok(mismatch("no translation law near the axis".to_string()));
        };
        if tl.period != law.period {
            return Ok(mismatch(format!("period {} instead of {}", tl.period, law.period)));
        }
        let printed: GVector = gvec_q(law.kappa).into_iter().map(|x| x * rat(law.sign)).collect();
        let Some(i) = printed.iter().position(|x| !x.is_zero()) else {
            return Ok(mismatch("printed functional is zero".to_string()));
        };
        let c = &tl.kappa[i] / &printed[i];
        if tl.kappa.iter().zip(&printed).any(|(x, y)| *x != &c * y) {
            return Ok(mismatch(format!("computed functional {}", fmt_vec(&tl.kappa))));
        }
        let detail = format!("period {}, computed functional {}", tl.period, fmt_vec(&tl.kappa));
        let agreement = if c.is_one() { Agreement::Exact } else { Agreement::Scaled { factor: c.to_string() } };
        Ok(FormulaCheck { item, agreement, detail })
    }

    fn wedge_display(&self, wd: &WedgeDisplay, eps: &Rat) -> Result<FormulaCheck> {
        let name = match wd.generator {
            Generator::A => "a",
            Generator::AInv => "a^-1",
            Generator::B => "b",
            Generator::BInv => "b^-1",
        };
        let item = format!("wedge display {name}");
        let w = self.word(wd.generator)?;
        let input = Wedge { u: gvec(wd.input.u), w: gvec(wd.input.w), epsilon: eps.clone() };
        let (u2, w2) = (gvec(wd.output.u), gvec(wd.output.w));
        let plan = Plan::new(&self.b, &w, self.conv)?;
        let (m, fs, _) = plan.piece(&input.midpoint());
        let linear = fs.iter().all(|l| sign_constant_on_wedge(l, &input));
        let (mu, mw) = (mat_vec(&m, &input.u), mat_vec(&m, &input.w));
        let mut points_ok = true;
        for (t, nu) in [(rat(16), rat(1)), (rat(30), rat(1)), (rat(45), rat(2)), (rat(1), eps / rat(2))] {
            let x = input.point(&t, &nu);
            let want: GVector = u2.iter().zip(&w2).map(|(a, b)| a * &t + b * &nu).collect();
            if self.apply(&w, &x)? != want {
                points_ok = false;
            }
        }
        let detail = format!("engine: u -> {}, w -> {}, linear on the wedge: {linear}", fmt_vec(&mu), fmt_vec(&mw));
        let agreement = if linear && mu == u2 && mw == w2 && points_ok { Agreement::Exact } else { Agreement::Mismatch };
        Ok(FormulaCheck { item, agreement, detail })
    }
}

pub fn verify_paper_action(case_id: &str) -> Result<FormulaReport> {
    verify_paper_action_with(case_id, GConvention::Negate)
}

pub fn verify_paper_action_with(case_id: &str, conv: GConvention) -> Result<FormulaReport> {
    let case = published_case(case_id).ok_or_else(|| Error::UnknownCase(case_id.to_string()))?;
    let ctx = Ctx { case, b: case.matrix(), conv };
    let mut checks = Vec::new();
    for d in case.displays {
        checks.push(ctx.display(d)?);
    }
    if let Some(l) = &case.law_a {
        checks.push(ctx.law("a", Generator::A, l)?);
    }
    if let Some(l) = &case.law_b {
        checks.push(ctx.law("b", Generator::B, l)?);
    }
    let eps = case.epsilon.map(|(n, d)| ratio(n, d));
    if let Some(eps) = &eps {
        for wd in case.wedge_displays {
            checks.push(ctx.wedge_display(wd, eps)?);
        }
        if let Some(wedges) = &case.wedges {
            for f in case.memberships {
                let w = ctx.word(f.generator)?.pow(f.power);
                let idx = match (f.target, f.positive) {
                    (Generator::A | Generator::AInv, true) => 0,
                    (Generator::A | Generator::AInv, false) => 1,
                    (_, true) => 2,
                    (_, false) => 3,
                };
                let wg = Wedge { u: gvec(wedges[idx].u), w: gvec(wedges[idx].w), epsilon: eps.clone() };
                let image = ctx.apply(&w, &gvec(f.point))?;
                let sign = if f.positive { "+" } else { "-" };
                let target = if idx < 2 { "a" } else { "b" };
                let gen = match f.generator {
                    Generator::A => "a",
                    Generator::AInv => "a^-1",
                    Generator::B => "b",
                    Generator::BInv => "b^-1",
                };
                checks.push(FormulaCheck {
                    item: format!("membership ({gen})^{} {} in X_{target}{sign}", f.power, fmt_vec(&gvec(f.point))),
                    agreement: if wg.contains(&image) { Agreement::Exact } else { Agreement::Mismatch },
                    detail: format!("image {}", fmt_vec(&image)),
                });
            }
        }
    }
    Ok(FormulaReport { case: case.id.to_string(), convention: conv, checks })
}
