//! One line per acceptance criterion. Runs without the libtest harness so the lines
//! always reach the output; exits non-zero when a criterion fails in a way that is not
//! accounted for by the recorded errata.

mod common;

use std::result::Result;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::Instant;

use cluster_growth::catalog::{make_diagram, standard_entries, Family, FamilySpec, PUBLISHED_CASES};
use cluster_growth::growth::{exchange_graph_ball, Classification};
use cluster_growth::tropical::*;
use cluster_growth::unfolding::*;
use cluster_growth::*;
use common::{check_path, convention_disagreements, family, labeled_class_size, symbolic_cluster_count, with_word};
use proptest::test_runner::{Config, TestCaseError, TestRunner};

enum Outcome {
    Pass(String),
    /// Fails as stated, for reasons recorded in the README; the corrected check passes.
    Documented { literal: String, corrected: String },
    Fail(String),
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn m(rows: &[&[i64]]) -> ExchangeMatrix {
    ExchangeMatrix::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
}

fn markov() -> Result<Outcome, String> {
    let b = family(Family::Markov, &[]);
    ensure(b.mutate(1).map_err(|e| e.to_string())? == b.negate(), "mu_1 is not the negation")?;
    let w = MutationWord::parse("1,2").unwrap();
    ensure(seed::apply_word_matrix(&b, &w).map_err(|e| e.to_string())? == b, "(1 2) does not restore B")?;
    Ok(Outcome::Pass("mu_1(B) = -B and (1 2) restores B".into()))
}

fn rank_two() -> Result<Outcome, String> {
    let mut parts = Vec::new();
    for (name, p, q, size) in [("A2", 1, 1, 5u64), ("B2", 2, 1, 6), ("C2", 1, 2, 6), ("G2", 1, 3, 8)] {
        let r = exchange_graph_ball(&m(&[&[0, p], &[-q, 0]]), 20, 1000).map_err(|e| e.to_string())?;
        ensure(r.saturated && r.vertices_visited == size, format!("{name}: {} vertices", r.vertices_visited))?;
        let orbit = rank2_symbolic_orbit(p as u32, q as u32, 20);
        ensure(orbit.period == Some(size as usize), format!("{name}: symbolic period {:?}", orbit.period))?;
        parts.push(format!("{name}={size}"));
    }
    Ok(Outcome::Pass(format!("saturated at {}; symbolic periods agree", parts.join(" "))))
}

fn properties() -> Result<Outcome, String> {
    let mut runner = TestRunner::new(Config { cases: 1000, failure_persistence: None, ..Config::default() });
    let steps = AtomicUsize::new(0);
    let cases = AtomicUsize::new(0);
    runner
        .run(&with_word(), |(s, word)| {
            cases.fetch_add(1, Ordering::Relaxed);
            steps.fetch_add(check_path(&s, &word).map_err(TestCaseError::fail)?, Ordering::Relaxed);
            Ok(())
        })
        .map_err(|e| e.to_string())?;
    let (cases, steps) = (cases.into_inner(), steps.into_inner());
    Ok(Outcome::Pass(format!("{cases} random cases, {steps} mutation steps checked, n <= 8, words <= 50")))
}

fn finiteness() -> Result<Outcome, String> {
    let mut count = 0;
    for spec in standard_entries() {
        let d = make_diagram(&spec).map_err(|e| e.to_string())?;
        if d.order() >= 3 {
            let r = enumerate_class(&d, 1_000_000).map_err(|e| e.to_string())?;
            ensure(r.size().is_some(), format!("{} not finite", spec.label()))?;
            count += 1;
        }
    }
    let heavy = Diagram::from_edges(3, &[(1, 2, 5), (2, 3, 1), (3, 1, 1)]).unwrap();
    let ClassResult::InfiniteDetected { witness, weight } = enumerate_class(&heavy, 1000).map_err(|e| e.to_string())?
    else {
        return Err("weight-5 triangle not rejected".into());
    };
    let mut x = heavy.clone();
    for &k in witness.letters() {
        x = x.mutate(k).map_err(|e| e.to_string())?;
    }
    ensure(x.max_weight() == weight && weight > 4, "witness does not replay")?;
    Ok(Outcome::Pass(format!("{count} catalog entries finite; weight-5 triangle rejected, witness {witness} replays")))
}

fn a3() -> Result<Outcome, String> {
    let b = family(Family::A, &[3]);
    let r = exchange_graph_ball(&b, 20, 1000).map_err(|e| e.to_string())?;
    let oracle = symbolic_cluster_count(&b, 1000);
    let d = make_diagram(&FamilySpec::new(Family::A, &[3])).unwrap();
    let class = enumerate_class(&d, 1000).map_err(|e| e.to_string())?.size();
    let labeled = labeled_class_size(&d);
    ensure(r.vertices_visited == 14 && oracle == 14, format!("vertices {} / oracle {oracle}", r.vertices_visited))?;
    ensure(class == Some(4) && labeled == 4, format!("class {class:?} / oracle {labeled}"))?;
    Ok(Outcome::Pass("14 exchange-graph vertices, class of 4 diagrams; both oracles agree".into()))
}

fn documented_deviations() -> Vec<(String, String, Agreement)> {
    let scaled = |f: &str| Agreement::Scaled { factor: f.into() };
    vec![
        ("X6".into(), "wedge display b".into(), Agreement::Mismatch),
        ("G2*+".into(), "law a".into(), scaled("-1")),
        ("G2*+".into(), "law b".into(), scaled("-3")),
        ("F4*+".into(), "display b near v_b".into(), Agreement::AxisRelativeForm),
        ("F4^(1,1)".into(), "display a near v_a".into(), Agreement::InverseWord),
        ("F4^(1,1)".into(), "law a".into(), scaled("-1")),
        ("F4^(2,2)".into(), "law b".into(), scaled("-1")),
    ]
}

fn formulas() -> Result<Outcome, String> {
    let mut found = Vec::new();
    let mut total = 0;
    for case in PUBLISHED_CASES {
        let report = verify_paper_action(case.id).map_err(|e| e.to_string())?;
        total += report.checks.len();
        for (item, agreement) in report.deviations() {
            found.push((case.id.to_string(), item, agreement));
        }
    }
    if found.is_empty() {
        return Ok(Outcome::Pass(format!("all {total} printed items reproduced exactly")));
    }
    let list: Vec<String> = found.iter().map(|(c, i, a)| format!("{c} {i}: {a:?}")).collect();
    let literal = format!("{} of {total} printed items differ: {}", found.len(), list.join("; "));
    if found == documented_deviations() {
        Ok(Outcome::Documented {
            literal,
            corrected: format!("{} exact, deviations equal the recorded errata", total - found.len()),
        })
    } else {
        Ok(Outcome::Fail(literal))
    }
}

fn certificates() -> Result<Outcome, String> {
    let mut parts = Vec::new();
    for case in PUBLISHED_CASES {
        let cert = check_pingpong(&PingPongInput::from_case(case).map_err(|e| e.to_string())?);
        ensure(cert.is_valid(), format!("{}: {:?}", case.id, cert.verdict))?;
        ensure(cert.n <= MAX_POWER, format!("{}: N = {}", case.id, cert.n))?;
        if let Some((p, q)) = case.epsilon {
            ensure(cert.epsilon <= ratio(p, q), format!("{}: epsilon {}", case.id, cert.epsilon))?;
        }
        ensure(replay_certificate(&cert).map_err(|e| e.to_string())?, format!("{}: replay differs", case.id))?;
        parts.push(format!("{} N={}", case.id, cert.n));
    }
    let x6 = verify_paper_action("X6").map_err(|e| e.to_string())?;
    let members: Vec<_> = x6.checks.iter().filter(|c| c.item.starts_with("membership")).collect();
    ensure(members.len() == 4 && members.iter().all(|c| c.agreement == Agreement::Exact), "X6 membership facts")?;
    Ok(Outcome::Pass(format!("all Valid and replayed ({}); 4 X6 membership facts exact", parts.join(", "))))
}

fn tail_slope(counts: &[u64]) -> f64 {
    let last = counts.len() - 1;
    let lo = (last / 2).max(1);
    let xs: Vec<f64> = (lo..=last).map(|r| (r as f64).ln()).collect();
    let ys: Vec<f64> = (lo..=last).map(|r| (counts[r] as f64).ln()).collect();
    let k = xs.len() as f64;
    let (mx, my) = (xs.iter().sum::<f64>() / k, ys.iter().sum::<f64>() / k);
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    sxy / sxx
}

fn growth() -> Result<Outcome, String> {
    let runs: [(&str, ExchangeMatrix, usize, Option<u32>); 7] = [
        ("D~4", family(Family::DTilde, &[4]), 30, Some(1)),
        ("A~3", family(Family::ATilde, &[3]), 30, Some(1)),
        ("X6", family(Family::X6, &[]), 12, None),
        ("X7", family(Family::X7, &[]), 12, None),
        ("Gamma(1,1)", family(Family::Gamma2, &[1, 1]), 25, Some(2)),
        ("Delta(1,1)", family(Family::Delta, &[1, 1]), 25, Some(2)),
        ("Gamma(1,1,1)", family(Family::Gamma3, &[1, 1, 1]), 25, Some(3)),
    ];
    let mut parts = Vec::new();
    let mut slope_misses = Vec::new();
    let mut truncations = Vec::new();
    for (name, b, radius, degree) in runs {
        let r = exchange_graph_ball(&b, radius, 1_000_000).map_err(|e| e.to_string())?;
        let ok = match (degree, r.classification) {
            (Some(1), Classification::Linear) => true,
            (Some(d), Classification::Polynomial { degree }) => d == degree,
            (None, Classification::Exponential { ratio }) => ratio.ln() >= 0.05,
            _ => false,
        };
        ensure(ok, format!("{name}: {}", r.classification))?;
        if r.truncated {
            truncations.push(format!("{name} stopped at radius {} by the 10^6 vertex cap", r.counts.len() - 1));
        }
        if let Some(d) = degree.filter(|&d| d > 1) {
            let s = tail_slope(&r.counts);
            if (s - d as f64).abs() > 0.25 {
                slope_misses.push(format!("{name} slope {s:.2}"));
            }
        }
        parts.push(format!("{name} {}", r.classification));
    }
    let classes = parts.join(", ");
    let note = if truncations.is_empty() { String::new() } else { format!("; {}", truncations.join(", ")) };
    if slope_misses.is_empty() {
        Ok(Outcome::Pass(format!("{classes}{note}")))
    } else {
        Ok(Outcome::Documented {
            literal: format!("tail log-log slope off by more than 0.25: {}", slope_misses.join(", ")),
            corrected: format!("{classes}; degrees read from finite differences{note}"),
        })
    }
}

fn unfolding() -> Result<Outcome, String> {
    let err = |e: Error| e.to_string();
    for b in [family(Family::X6, &[]), family(Family::DTilde, &[4])] {
        let t = UnfoldingSpec::trivial(b).map_err(err)?;
        for depth in [1, 4, 8] {
            ensure(verify_unfolding(&t, depth).map_err(err)?.is_verified(), "trivial unfolding refuted")?;
        }
    }
    let mut parts = Vec::new();
    for id in ["bt3-dt4", "g2sp31-e6-11"] {
        let spec = unfolding_pair(id).unwrap().spec().map_err(err)?;
        ensure(check_unfolding_static(&spec).holds(), format!("{id}: static check"))?;
        let v = verify_unfolding(&spec, 6).map_err(err)?;
        let UnfoldingVerdict::Verified { nodes, .. } = v else { return Err(format!("{id}: {v:?}")) };
        parts.push(format!("{id} ({nodes} nodes)"));
    }
    // a G2**(11) filling that satisfies both block conditions but is not an unfolding
    let frozen = unfolding_pair("g2ss11-e8-11").unwrap().spec().map_err(err)?;
    let sizes: Vec<usize> = frozen.d.0.iter().map(|&x| x as usize).collect();
    let mut witness = None;
    for cand in static_unfoldings(&frozen.b, &sizes, 10_000).map_err(err)? {
        if let UnfoldingVerdict::Violation { word, violation } = verify_unfolding(&cand, 6).map_err(err)? {
            let moved = word.letters().iter().try_fold(cand.clone(), |s, &i| composite_mutate(&s, i)).map_err(err)?;
            ensure(check_unfolding_static(&moved).violation.as_ref() == Some(&violation), "witness does not replay")?;
            witness = Some(format!("{word} ({violation})"));
            break;
        }
    }
    let witness = witness.ok_or("no corrupted candidate refuted")?;
    Ok(Outcome::Pass(format!(
        "trivial verified at depths 1-8; {} verified to depth 6; corrupted pair refuted by {witness}",
        parts.join(", ")
    )))
}

fn convention() -> Result<Outcome, String> {
    let err = |e: Error| e.to_string();
    let rank2 = [m(&[&[0, 1], &[-1, 0]]), m(&[&[0, 2], &[-1, 0]]), m(&[&[0, 1], &[-2, 0]]), m(&[&[0, 3], &[-1, 0]])];
    let symbolic = |conv| rank2.iter().map(|b| convention_disagreements(b, 6, conv)).sum::<usize>();
    let displays = |conv| -> Result<Vec<(String, bool)>, String> {
        let r = verify_paper_action_with("X6", conv).map_err(err)?;
        Ok(r.checks
            .iter()
            .filter(|c| c.item.starts_with("wedge display"))
            .map(|c| (c.item.clone(), c.agreement == Agreement::Exact))
            .collect())
    };
    let (neg_sym, keep_sym) = (symbolic(GConvention::Negate), symbolic(GConvention::Keep));
    let (neg_disp, keep_disp) = (displays(GConvention::Negate)?, displays(GConvention::Keep)?);
    ensure(neg_sym == 0, format!("adopted convention disagrees with {neg_sym} symbolic g-vectors"))?;
    // the b display is the recorded erratum; every other display must hold
    let neg_ok = neg_disp.iter().all(|(item, exact)| *exact || item == "wedge display b");
    ensure(neg_ok && neg_disp.iter().filter(|d| d.1).count() == 3, format!("X6 displays {neg_disp:?}"))?;
    let keep_exact = keep_disp.iter().filter(|d| d.1).count();
    ensure(keep_sym > 0 && keep_exact < 3, "the alternative convention is not ruled out")?;
    Ok(Outcome::Pass(format!(
        "g'_k = -g_k: 0 symbolic disagreements, X6 displays a, a^-1, b^-1 exact; g'_k = g_k: {keep_sym} disagreements, {keep_exact} displays"
    )))
}

fn main() {
    let criteria: [(usize, fn() -> Result<Outcome, String>); 10] = [
        (1, markov),
        (2, rank_two),
        (3, properties),
        (4, finiteness),
        (5, a3),
        (6, formulas),
        (7, certificates),
        (8, growth),
        (9, unfolding),
        (10, convention),
    ];
    let mut unexpected = 0;
    for (n, f) in criteria {
        let start = Instant::now();
        let outcome = f().unwrap_or_else(Outcome::Fail);
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Outcome::Pass(msg) => println!("criterion {n}: PASS [{secs:.1}s] {msg}"),
            Outcome::Documented { literal, corrected } => {
                println!("criterion {n}: FAIL [{secs:.1}s] as stated: {literal}");
                println!("criterion {n}: PASS with recorded corrections: {corrected}");
            }
            Outcome::Fail(msg) => {
                unexpected += 1;
                println!("criterion {n}: FAIL [{secs:.1}s] {msg}");
            }
        }
    }
    if unexpected > 0 {
        println!("{unexpected} criteria failed outside the recorded errata");
        std::process::exit(1);
    }
}
