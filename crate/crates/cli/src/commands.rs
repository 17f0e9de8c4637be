use std::fmt::Write as _;
use std::path::Path;

use cluster_growth::catalog::{make_family, published_case, Family, FamilySpec, PUBLISHED_CASES};
use cluster_growth::growth::{exchange_graph_ball_with, Classification};
use cluster_growth::mutation_class::{enumerate_class, ClassResult};
use cluster_growth::tropical::{
    check_pingpong, ratio, replay_certificate, summary, verify_paper_action, PingPongCertificate, PingPongInput,
};
use cluster_growth::unfolding::{
    check_unfolding_static, unfolding_catalog, unfolding_pair, verify_unfolding_with, UnfoldingSpec, UnfoldingVerdict,
};
use cluster_growth::{apply_word, diagram_of_matrix, matrix_of_diagram, Diagram, Error, ExchangeMatrix, MutationWord, Seed};
use serde_json::{json, Value};

use crate::cli::{CatalogCommand, CertifyArgs, ClassArgs, EmitArgs, GrowthArgs, MutateArgs, Source, UnfoldCommand};
use crate::config::Config;

pub const OK: u8 = 0;
pub const REFUTED: u8 = 1;
pub const LIMIT: u8 = 2;
pub const INPUT: u8 = 3;

/// What a command produced. `input` is the resolved input text that the digest covers.
pub struct Outcome {
    pub status: String,
    pub exit: u8,
    pub output: Value,
    pub text: String,
    pub input: String,
}

/// A failure with its exit code.
pub struct Failure {
    pub exit: u8,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let exit = match e {
            Error::Overflow | Error::NodeLimit(_) | Error::ExpressionLimit => LIMIT,
            _ => INPUT,
        };
        Failure { exit, message: e.to_string() }
    }
}

fn input_error(message: impl Into<String>) -> Failure {
    Failure { exit: INPUT, message: message.into() }
}

type Res<T> = Result<T, Failure>;

fn read(path: &Path) -> Res<String> {
    std::fs::read_to_string(path).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

enum Loaded {
    Matrix(ExchangeMatrix),
    Diagram(Diagram),
}

impl Loaded {
    fn matrix(&self) -> Res<ExchangeMatrix> {
        match self {
            Loaded::Matrix(m) => Ok(m.clone()),
            Loaded::Diagram(d) => Ok(matrix_of_diagram(d)?),
        }
    }

    fn diagram(&self) -> Res<Diagram> {
        match self {
            Loaded::Matrix(m) => Ok(diagram_of_matrix(m)?),
            Loaded::Diagram(d) => Ok(d.clone()),
        }
    }

    fn text(&self) -> String {
        match self {
            Loaded::Matrix(m) => m.to_text(),
            Loaded::Diagram(d) => d.to_text(),
        }
    }
}

fn family_spec(src: &Source) -> Res<Option<FamilySpec>> {
    let Some(name) = &src.family else { return Ok(None) };
    let family: Family = name.parse()?;
    let params: Vec<u32> = src.n.into_iter().chain(src.params.iter().copied()).collect();
    Ok(Some(FamilySpec::new(family, &params)))
}

fn load(src: &Source) -> Res<Loaded> {
    if let Some(path) = &src.input {
        let text = read(path)?;
        let first = text.lines().map(|l| l.split('#').next().unwrap_or("").trim()).find(|l| !l.is_empty());
        return if first.is_some_and(|l| l.starts_with('v')) {
            Ok(Loaded::Diagram(Diagram::parse(&text)?))
        } else {
            Ok(Loaded::Matrix(ExchangeMatrix::parse(&text)?))
        };
    }
    match family_spec(src)? {
        Some(spec) => Ok(Loaded::Matrix(make_family(&spec)?)),
        None => Err(input_error("give --input FILE or --family NAME")),
    }
}

fn label(src: &Source) -> Option<String> {
    family_spec(src).ok().flatten().map(|s| s.label())
}

fn rows_text(rows: &[Vec<i64>]) -> String {
    let mut s = String::new();
    for r in rows {
        let line: Vec<String> = r.iter().map(ToString::to_string).collect();
        let _ = writeln!(s, "  {}", line.join(" "));
    }
    s
}

fn parse_word(text: &str) -> Res<MutationWord> {
    let joined: Vec<&str> = text.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty()).collect();
    Ok(MutationWord::parse_reduced(&joined.join(","))?)
}

pub fn mutate(args: &MutateArgs) -> Res<Outcome> {
    let loaded = load(&args.source)?;
    let word = parse_word(&args.word)?;
    let mut text = format!("word {word}\n");
    let output = match &loaded {
        Loaded::Diagram(d) if !args.seed => {
            let mut out = d.clone();
            for &k in word.letters() {
                out = out.mutate(k)?;
            }
            text.push_str(&out.to_text());
            json!({ "word": word, "diagram": out.edges() })
        }
        _ => {
            let seed = apply_word(&Seed::initial(loaded.matrix()?), &word)?;
            let _ = write!(text, "b =\n{}", rows_text(&seed.b.rows()));
            if args.seed {
                let _ = write!(text, "c =\n{}", rows_text(&seed.c_rows()));
                json!({ "word": word, "b": seed.b.rows(), "c": seed.c_rows() })
            } else {
                json!({ "word": word, "b": seed.b.rows() })
            }
        }
    };
    Ok(Outcome { status: "done".into(), exit: OK, output, text, input: loaded.text() })
}

pub fn class(args: &ClassArgs, cfg: &Config) -> Res<Outcome> {
    let loaded = load(&args.source)?;
    let d = loaded.diagram()?;
    let max_nodes = args.max_nodes.unwrap_or(cfg.class.max_nodes);
    let result = enumerate_class(&d, max_nodes)?;
    let mut text = String::new();
    let (status, exit, output) = match &result {
        ClassResult::Finite { members } => {
            let _ = writeln!(text, "mutation class: finite, {} diagrams", members.len());
            let mut out = json!({ "finite": true, "size": members.len() });
            if args.members {
                let list: Vec<Value> = members
                    .iter()
                    .map(|m| json!({ "word": m.word, "edges": m.diagram.edges() }))
                    .collect();
                for m in members {
                    let _ = writeln!(text, "  {} {:?}", m.word, m.diagram.edges());
                }
                out["members"] = Value::Array(list);
            }
            ("Finite", OK, out)
        }
        ClassResult::InfiniteDetected { witness, weight } => {
            let _ = writeln!(text, "mutation class: infinite, word {witness} produces an edge of weight {weight}");
            ("InfiniteDetected", REFUTED, json!({ "finite": false, "witness": witness, "weight": weight }))
        }
        ClassResult::LimitExceeded { visited } => {
            let _ = writeln!(text, "stopped after {visited} diagrams (limit {max_nodes})");
            ("LimitExceeded", LIMIT, json!({ "visited": visited, "max_nodes": max_nodes }))
        }
    };
    Ok(Outcome { status: status.into(), exit, output, text, input: d.to_text() })
}

pub fn growth(args: &GrowthArgs, cfg: &Config) -> Res<Outcome> {
    let loaded = load(&args.source)?;
    let b = loaded.matrix()?;
    let mut params = cfg.classifier;
    if let Some(x) = args.delta {
        params.delta = x;
    }
    if let Some(x) = args.variance {
        params.variance = x;
    }
    if let Some(x) = args.slope_tolerance {
        params.slope_tolerance = x;
    }
    let max_vertices = args.max_vertices.unwrap_or(cfg.growth.max_vertices);
    let mut report = exchange_graph_ball_with(&b, args.radius, max_vertices, &params)?;
    report.family = label(&args.source);
    let (status, exit) = match report.classification {
        _ if report.truncated => ("Truncated", LIMIT),
        Classification::Finite => ("Finite", OK),
        Classification::Inconclusive => ("Inconclusive", LIMIT),
        _ => ("Infinite", REFUTED),
    };
    let mut text = String::new();
    if let Some(f) = &report.family {
        let _ = writeln!(text, "family {f}");
    }
    let _ = writeln!(text, "radius {}, vertices {}", report.radius, report.vertices_visited);
    let _ = writeln!(text, "saturated {}, truncated {}", report.saturated, report.truncated);
    let counts: Vec<String> = report.counts.iter().map(ToString::to_string).collect();
    let _ = writeln!(text, "ball sizes {}", counts.join(" "));
    let _ = writeln!(text, "classification {}", report.classification);
    let mut output = serde_json::to_value(&report).expect("growth report serializes");
    // timing lives in the run report, and only on request
    output.as_object_mut().map(|o| o.remove("wall_time_ms"));
    Ok(Outcome { status: status.into(), exit, output, text, input: b.to_text() })
}

pub fn certify(args: &CertifyArgs) -> Res<Outcome> {
    if let Some(path) = &args.replay {
        let raw = read(path)?;
        let cert = PingPongCertificate::from_json(&raw).map_err(|e| input_error(format!("{}: {e}", path.display())))?;
        let same = replay_certificate(&cert)?;
        let (status, exit) = match (same, cert.is_valid()) {
            (true, true) => ("Replayed", OK),
            (true, false) => ("ReplayedRefuted", REFUTED),
            (false, _) => ("ReplayMismatch", REFUTED),
        };
        let text = format!("replay of {} reproduces the certificate: {same}\n", cert.case);
        let output = json!({ "case": cert.case, "identical": same, "valid": cert.is_valid() });
        return Ok(Outcome { status: status.into(), exit, output, text, input: raw });
    }
    let id = args.case.as_deref().unwrap_or_default();
    let case = published_case(id).ok_or_else(|| Failure::from(Error::UnknownCase(id.to_string())))?;
    let mut input = PingPongInput::from_case(case)?;
    if let Some(e) = &args.epsilon {
        input.epsilon = Some(parse_ratio(e)?);
    }
    let cert = check_pingpong(&input);
    let mut text = summary(&cert);
    let mut output = json!({ "certificate": serde_json::to_value(&cert).expect("certificate serializes") });
    if let Some(path) = &args.out {
        std::fs::write(path, cert.to_json() + "\n").map_err(|e| input_error(format!("{}: {e}", path.display())))?;
        let _ = writeln!(text, "certificate written to {}", path.display());
        output = json!({ "certificate_file": path.display().to_string(), "verdict": cert.verdict });
    }
    if args.published {
        let report = verify_paper_action(case.id)?;
        let _ = writeln!(text, "published formulas ({} items):", report.checks.len());
        for c in &report.checks {
            let _ = writeln!(text, "  {:?} {} | {}", c.agreement, c.item, c.detail);
        }
        output["formulas"] = serde_json::to_value(&report).expect("report serializes");
    }
    let (status, exit) = if cert.is_valid() { ("Valid", OK) } else { ("Refuted", REFUTED) };
    Ok(Outcome { status: status.into(), exit, output, text, input: format!("{}\n{}", case.id, case.matrix()) })
}

fn parse_ratio(s: &str) -> Res<cluster_growth::tropical::Rat> {
    let bad = || input_error(format!("expected a positive ratio p/q, got `{s}`"));
    let (p, q) = s.split_once('/').unwrap_or((s, "1"));
    let p: i64 = p.trim().parse().map_err(|_| bad())?;
    let q: i64 = q.trim().parse().map_err(|_| bad())?;
    if p <= 0 || q <= 0 {
        return Err(bad());
    }
    Ok(ratio(p, q))
}

pub fn unfold(cmd: &UnfoldCommand, cfg: &Config) -> Res<Outcome> {
    let UnfoldCommand::Verify(args) = cmd;
    let spec = match (&args.input, &args.pair) {
        (Some(path), _) => UnfoldingSpec::parse(&read(path)?)?,
        (None, Some(id)) => unfolding_pair(id).ok_or_else(|| input_error(format!("unknown pair `{id}`")))?.spec()?,
        (None, None) => return Err(input_error("give --input FILE or --pair ID")),
    };
    let depth = args.depth.unwrap_or(cfg.unfold.depth);
    let max_nodes = args.max_nodes.unwrap_or(cfg.unfold.max_nodes);
    let stat = check_unfolding_static(&spec);
    let verdict = verify_unfolding_with(&spec, depth, max_nodes)?;
    let mut text = String::new();
    let _ = writeln!(text, "rank {} unfolded to rank {}, blocks {:?}", spec.b.rank(), spec.c.rank(), spec.d.as_slice());
    match &stat.violation {
        None => text.push_str("block conditions hold\n"),
        Some(v) => {
            let _ = writeln!(text, "block conditions fail: {v}");
        }
    }
    let (status, exit) = match &verdict {
        UnfoldingVerdict::Verified { depth, nodes, closed } => {
            let _ = writeln!(text, "verified to depth {depth} over {nodes} nodes{}", if *closed { ", orbit closed" } else { "" });
            ("Verified", OK)
        }
        UnfoldingVerdict::Violation { word, violation } => {
            let _ = writeln!(text, "violation after {word}: {violation}");
            ("Violation", REFUTED)
        }
    };
    let output = json!({ "static": stat, "verdict": verdict });
    Ok(Outcome { status: status.into(), exit, output, text, input: spec.to_text() })
}

pub fn catalog(cmd: &CatalogCommand) -> Res<Outcome> {
    match cmd {
        CatalogCommand::List => {
            let mut text = String::from("families:\n");
            let mut fams = Vec::new();
            for f in Family::all() {
                let _ = writeln!(text, "  {:<8} {}", f.name(), f.describe());
                fams.push(json!({ "name": f.name(), "description": f.describe() }));
            }
            text.push_str("certificate cases:\n");
            let cases: Vec<&str> = PUBLISHED_CASES.iter().map(|c| c.id).collect();
            for c in &cases {
                let _ = writeln!(text, "  {c}");
            }
            text.push_str("unfolding pairs:\n");
            let mut pairs = Vec::new();
            for p in unfolding_catalog() {
                let _ = writeln!(text, "  {:<14} {} -> {}", p.id, p.folded.label(), p.unfolded.label());
                pairs.push(json!({ "id": p.id, "folded": p.folded.label(), "unfolded": p.unfolded.label() }));
            }
            let output = json!({ "families": fams, "cases": cases, "unfolding_pairs": pairs });
            Ok(Outcome { status: "done".into(), exit: OK, output, text, input: String::new() })
        }
        CatalogCommand::Emit(args) => emit(args),
    }
}

fn emit(args: &EmitArgs) -> Res<Outcome> {
    let text = match &args.pair {
        Some(id) => unfolding_pair(id).ok_or_else(|| input_error(format!("unknown pair `{id}`")))?.spec()?.to_text(),
        None => {
            let loaded = load(&args.source)?;
            if args.diagram {
                loaded.diagram()?.to_text()
            } else {
                loaded.matrix()?.to_text()
            }
        }
    };
    let output = json!({ "text": text });
    Ok(Outcome { status: "done".into(), exit: OK, output, text: text.clone(), input: text })
}
