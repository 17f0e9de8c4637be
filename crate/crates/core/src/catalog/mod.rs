//! Named diagrams and families, plus constructive block gluing.

mod blocks;
mod exceptional;
mod surfaces;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::diagram::{diagram_of_matrix, Diagram};
use crate::error::{Error, Result};
use crate::matrix::ExchangeMatrix;

pub use blocks::{glue_blocks, Block, BlockKind, Outlet};
pub use exceptional::{
    published_case, Generator, LinearDisplay, MembershipFact, PublishedCase, PrintedLaw, WedgeDisplay, WedgeSpec, PUBLISHED_CASES, Q,
};

/// A family name with its integer parameters.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FamilySpec {
    pub name: Family,
    pub params: Vec<u32>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    ATilde,
    BTilde,
    CTilde,
    DTilde,
    E6,
    E7,
    E8,
    E6Tilde,
    E7Tilde,
    E8Tilde,
    E6Elliptic,
    E7Elliptic,
    E8Elliptic,
    X6,
    X7,
    F4,
    G2,
    F4Tilde,
    G2Tilde,
    G2StarPlus,
    G2StarStar,
    F4StarPlus,
    F4StarStar,
    Gamma2,
    Delta,
    Gamma3,
    Markov,
}

const NAMES: &[(Family, &str)] = &[
    (Family::A, "A"),
    (Family::B, "B"),
    (Family::C, "C"),
    (Family::D, "D"),
    (Family::ATilde, "A~"),
    (Family::BTilde, "B~"),
    (Family::CTilde, "C~"),
    (Family::DTilde, "D~"),
    (Family::E6, "E6"),
    (Family::E7, "E7"),
    (Family::E8, "E8"),
    (Family::E6Tilde, "E6~"),
    (Family::E7Tilde, "E7~"),
    (Family::E8Tilde, "E8~"),
    (Family::E6Elliptic, "E6^11"),
    (Family::E7Elliptic, "E7^11"),
    (Family::E8Elliptic, "E8^11"),
    (Family::X6, "X6"),
    (Family::X7, "X7"),
    (Family::F4, "F4"),
    (Family::G2, "G2"),
    (Family::F4Tilde, "F4~"),
    (Family::G2Tilde, "G2~"),
    (Family::G2StarPlus, "G2*+"),
    (Family::G2StarStar, "G2**"),
    (Family::F4StarPlus, "F4*+"),
    (Family::F4StarStar, "F4**"),
    (Family::Gamma2, "Gamma2"),
    (Family::Delta, "Delta"),
    (Family::Gamma3, "Gamma3"),
    (Family::Markov, "Markov"),
];

impl Family {
    pub fn all() -> impl Iterator<Item = Family> {
        NAMES.iter().map(|(f, _)| *f)
    }

    pub fn name(self) -> &'static str {
        NAMES.iter().find(|(f, _)| *f == self).map(|(_, n)| *n).unwrap()
    }

    /// Parameter arity and a short description for listings.
    pub fn describe(self) -> &'static str {
        use Family::*;
        match self {
            A => "A n: path 1->2->...->n",
            B => "B n: path with a double edge at the end, d=(2,..,2,1)",
            C => "C n: path with a double edge at the end, d=(1,..,1,2)",
            D => "D n (n>=4): path with a fork",
            ATilde => "A~ n [p]: cycle on n+1 vertices, p arrows backwards (default 1)",
            BTilde => "B~ n (n>=3): fork at one end, double edge to a d=2 vertex at the other",
            CTilde => "C~ n (n>=2): double edges to d=2 vertices at both ends",
            DTilde => "D~ n (n>=4): forks at both ends",
            E6 | E7 | E8 => "exceptional finite type, star with three arms",
            E6Tilde | E7Tilde | E8Tilde => "exceptional affine type, star with three arms",
            E6Elliptic | E7Elliptic | E8Elliptic => "elliptic type: weight-4 edge, one oriented triangle per arm",
            X6 | X7 => "exceptional mutation-finite skew-symmetric diagram",
            F4 => "F4: path with weights 1,2,1",
            G2 => "G2: rank 2, weight 3",
            F4Tilde => "F4~ [v]: path with weights 1,1,2,1; v=2 gives the dual matrix",
            G2Tilde => "G2~ [v]: path with weights 1,3; v=2 gives the dual matrix",
            G2StarPlus => "G2*+ [v]: v=31 (default) or 13",
            G2StarStar => "G2** v: v=11 or 33",
            F4StarPlus => "F4*+ [v]: v=1 (default) or 2",
            F4StarStar => "F4** v: v=11 or 22",
            Gamma2 => "Gamma2 n1 n2: once-punctured annulus",
            Delta => "Delta n1 n2: annulus with one orbifold point",
            Gamma3 => "Gamma3 n1 n2 n3: pair of pants",
            Markov => "Markov: oriented triangle with weights 4",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        NAMES
            .iter()
            .find(|(_, n)| n.eq_ignore_ascii_case(s))
            .map(|(f, _)| *f)
            .ok_or_else(|| Error::UnknownFamily(s.to_string()))
    }
}

impl FamilySpec {
    pub fn new(name: Family, params: &[u32]) -> Self {
        Self { name, params: params.to_vec() }
    }

    pub fn label(&self) -> String {
        if self.params.is_empty() {
            self.name.name().to_string()
        } else {
            let p: Vec<String> = self.params.iter().map(|x| x.to_string()).collect();
            format!("{}({})", self.name.name(), p.join(","))
        }
    }
}

/// Collects arrows `(i, j, p, q)` meaning `b_ij = p`, `b_ji = -q` (1-based).
pub(crate) struct Builder {
    rows: Vec<Vec<i64>>,
}

impl Builder {
    pub(crate) fn new(n: usize) -> Self {
        Self { rows: vec![vec![0; n]; n] }
    }

    pub(crate) fn arrow(&mut self, i: usize, j: usize, p: i64, q: i64) -> &mut Self {
        self.rows[i - 1][j - 1] = p;
        self.rows[j - 1][i - 1] = -q;
        self
    }

    pub(crate) fn simple(&mut self, i: usize, j: usize) -> &mut Self {
        self.arrow(i, j, 1, 1)
    }

    pub(crate) fn build(&self) -> ExchangeMatrix {
        ExchangeMatrix::new(self.rows.clone()).expect("catalog matrices are skew-symmetrizable")
    }
}

fn bad(spec: &FamilySpec, msg: &str) -> Error {
    Error::BadParams { family: spec.name.name().to_string(), msg: msg.to_string() }
}

fn param(spec: &FamilySpec, idx: usize, min: u32) -> Result<usize> {
    let v = *spec.params.get(idx).ok_or_else(|| bad(spec, &format!("missing parameter {}", idx + 1)))?;
    if v < min {
        return Err(bad(spec, &format!("parameter {} must be at least {min}", idx + 1)));
    }
    Ok(v as usize)
}

fn no_params(spec: &FamilySpec) -> Result<()> {
    if spec.params.is_empty() {
        Ok(())
    } else {
        Err(bad(spec, "takes no parameters"))
    }
}

/// Star with arms of the given lengths (vertex 1 is the centre, arms numbered outwards);
/// every edge points away from the centre.
fn star(arms: &[usize]) -> Builder {
    let n = 1 + arms.iter().sum::<usize>();
    let mut b = Builder::new(n);
    let mut next = 2;
    for &len in arms {
        let mut prev = 1;
        for _ in 0..len {
            b.simple(prev, next);
            prev = next;
            next += 1;
        }
    }
    b
}

/// Path `1 -> 2 -> ... -> n` with all weights 1.
fn path(n: usize) -> Builder {
    let mut b = Builder::new(n);
    for i in 1..n {
        b.simple(i, i + 1);
    }
    b
}

/// Elliptic `E^(1,1)` shape: `c => c'` of weight 4, and for every arm an oriented
/// triangle `c -> c' -> x_1 -> c` followed by the path `x_1 -> x_2 -> ...`.
fn elliptic(arms: &[usize]) -> Builder {
    let n = 2 + arms.iter().sum::<usize>();
    let mut b = Builder::new(n);
    b.arrow(1, 2, 2, 2);
    let mut next = 3;
    for &len in arms {
        b.simple(2, next);
        b.simple(next, 1);
        for t in 1..len {
            b.simple(next + t - 1, next + t);
        }
        next += len;
    }
    b
}

/// The catalog's representative matrix for `spec`.
pub fn make_family(spec: &FamilySpec) -> Result<ExchangeMatrix> {
    use Family::*;
    let m = match spec.name {
        A => path(param(spec, 0, 1)?).build(),
        B | C => {
            let n = param(spec, 0, 2)?;
            let mut b = path(n);
            if spec.name == B {
                b.arrow(n - 1, n, 2, 1);
            } else {
                b.arrow(n - 1, n, 1, 2);
            }
            b.build()
        }
        D => {
            let n = param(spec, 0, 4)?;
            star(&[1, 1, n - 3]).build()
        }
        ATilde => {
            let n = param(spec, 0, 1)?;
            let back = spec.params.get(1).copied().unwrap_or(1) as usize;
            if back == 0 || back > n {
                return Err(bad(spec, "backward arrow count must be in 1..=n"));
            }
            if n == 1 {
                let mut k = Builder::new(2);
                k.arrow(1, 2, 2, 2);
                return Ok(k.build());
            }
            let verts = n + 1;
            let mut b = Builder::new(verts);
            for e in 1..=verts {
                let (u, v) = (e, e % verts + 1);
                if e <= verts - back {
                    b.simple(u, v);
                } else {
                    b.simple(v, u);
                }
            }
            b.build()
        }
        BTilde => {
            let n = param(spec, 0, 3)?;
            // leaves 1,2 -> 3, path 3 -> ... -> n, then n => n+1 (d = 2 at n+1)
            let mut b = Builder::new(n + 1);
            b.simple(1, 3).simple(2, 3);
            for i in 3..n {
                b.simple(i, i + 1);
            }
            b.arrow(n, n + 1, 1, 2);
            b.build()
        }
        CTilde => {
            let n = param(spec, 0, 2)?;
            let mut b = path(n + 1);
            b.arrow(1, 2, 2, 1);
            b.arrow(n, n + 1, 1, 2);
            b.build()
        }
        DTilde => {
            let n = param(spec, 0, 4)?;
            // leaves 1,2 -> 3, path 3 -> ... -> n-1, leaves n, n+1 attached to n-1
            let mut b = Builder::new(n + 1);
            b.simple(1, 3).simple(2, 3);
            for i in 3..n - 1 {
                b.simple(i, i + 1);
            }
            b.simple(n - 1, n).simple(n - 1, n + 1);
            b.build()
        }
        E6 => {
            no_params(spec)?;
            star(&[1, 2, 2]).build()
        }
        E7 => {
            no_params(spec)?;
            star(&[1, 2, 3]).build()
        }
        E8 => {
            no_params(spec)?;
            star(&[1, 2, 4]).build()
        }
        E6Tilde => {
            no_params(spec)?;
            star(&[2, 2, 2]).build()
        }
        E7Tilde => {
            no_params(spec)?;
            star(&[1, 3, 3]).build()
        }
        E8Tilde => {
            no_params(spec)?;
            star(&[1, 2, 5]).build()
        }
        E6Elliptic => {
            no_params(spec)?;
            elliptic(&[2, 2, 2]).build()
        }
        E7Elliptic => {
            no_params(spec)?;
            elliptic(&[1, 3, 3]).build()
        }
        E8Elliptic => {
            no_params(spec)?;
            elliptic(&[1, 2, 5]).build()
        }
        F4 => {
            no_params(spec)?;
            let mut b = path(4);
            b.arrow(2, 3, 2, 1);
            b.build()
        }
        G2 => {
            no_params(spec)?;
            let mut b = Builder::new(2);
            b.arrow(1, 2, 3, 1);
            b.build()
        }
        F4Tilde => {
            let mut b = path(5);
            b.arrow(3, 4, 1, 2);
            dual_if(spec, b.build())?
        }
        G2Tilde => {
            let mut b = path(3);
            b.arrow(2, 3, 1, 3);
            dual_if(spec, b.build())?
        }
        Markov => {
            no_params(spec)?;
            ExchangeMatrix::new(vec![vec![0, 2, -2], vec![-2, 0, 2], vec![2, -2, 0]]).unwrap()
        }
        X6 | X7 | G2StarPlus | G2StarStar | F4StarPlus | F4StarStar => exceptional::make(spec)?,
        Gamma2 => {
            let (n1, n2) = (param(spec, 0, 1)?, param(spec, 1, 1)?);
            surfaces::punctured_annulus(n1, n2)
        }
        Delta => {
            let (n1, n2) = (param(spec, 0, 1)?, param(spec, 1, 1)?);
            surfaces::orbifold_annulus(n1, n2)
        }
        Gamma3 => {
            let (n1, n2, n3) = (param(spec, 0, 1)?, param(spec, 1, 1)?, param(spec, 2, 1)?);
            surfaces::pants(n1, n2, n3)
        }
    };
    Ok(m)
}

/// Optional first parameter `2` selects the dual matrix `-B^T` (same diagram).
fn dual_if(spec: &FamilySpec, m: ExchangeMatrix) -> Result<ExchangeMatrix> {
    match spec.params.as_slice() {
        [] | [1] => Ok(m),
        [2] => Ok(m.transpose().negate()),
        _ => Err(bad(spec, "variant must be 1 or 2")),
    }
}

pub fn make_diagram(spec: &FamilySpec) -> Result<Diagram> {
    diagram_of_matrix(&make_family(spec)?)
}

/// Every parameter-free entry plus small members of each parametric family.
pub fn standard_entries() -> Vec<FamilySpec> {
    use Family::*;
    let mut v = vec![
        FamilySpec::new(A, &[3]),
        FamilySpec::new(A, &[5]),
        FamilySpec::new(B, &[3]),
        FamilySpec::new(C, &[3]),
        FamilySpec::new(D, &[4]),
        FamilySpec::new(D, &[6]),
        FamilySpec::new(ATilde, &[3]),
        FamilySpec::new(ATilde, &[4, 2]),
        FamilySpec::new(BTilde, &[3]),
        FamilySpec::new(BTilde, &[4]),
        FamilySpec::new(CTilde, &[2]),
        FamilySpec::new(CTilde, &[3]),
        FamilySpec::new(DTilde, &[4]),
        FamilySpec::new(DTilde, &[5]),
        FamilySpec::new(F4Tilde, &[]),
        FamilySpec::new(F4Tilde, &[2]),
        FamilySpec::new(G2Tilde, &[]),
        FamilySpec::new(G2Tilde, &[2]),
        FamilySpec::new(G2StarPlus, &[31]),
        FamilySpec::new(G2StarPlus, &[13]),
        FamilySpec::new(G2StarStar, &[11]),
        FamilySpec::new(G2StarStar, &[33]),
        FamilySpec::new(F4StarPlus, &[1]),
        FamilySpec::new(F4StarPlus, &[2]),
        FamilySpec::new(F4StarStar, &[11]),
        FamilySpec::new(F4StarStar, &[22]),
        FamilySpec::new(Gamma2, &[1, 1]),
        FamilySpec::new(Gamma2, &[2, 1]),
        FamilySpec::new(Delta, &[1, 1]),
        FamilySpec::new(Delta, &[2, 1]),
        FamilySpec::new(Gamma3, &[1, 1, 1]),
        FamilySpec::new(Gamma3, &[2, 1, 1]),
    ];
    for f in [E6, E7, E8, E6Tilde, E7Tilde, E8Tilde, E6Elliptic, E7Elliptic, E8Elliptic, X6, X7, F4, G2, Markov] {
        v.push(FamilySpec::new(f, &[]));
    }
    v
}
