//! Pinned exceptional matrices and the published data of the ping-pong cases.
//!
//! Vertex numbering matches the published figures, so the published words apply as
//! written. Each matrix is the unique one (up to the listed variants) in its mutation
//! class that is fixed by both words and reproduces the linear action formulas.

use super::{bad, Builder, Family, FamilySpec};
use crate::error::Result;
use crate::matrix::ExchangeMatrix;

/// A rational constant `(numerator, denominator)`.
pub type Q = (i64, i64);

const X6_ROWS: [[i64; 6]; 6] = [
    [0, -2, 1, 0, 0, 0],
    [2, 0, -1, 0, 0, 0],
    [-1, 1, 0, -1, 1, 1],
    [0, 0, 1, 0, -2, 0],
    [0, 0, -1, 2, 0, 0],
    [0, 0, -1, 0, 0, 0],
];

const G2_31: [[i64; 4]; 4] = [[0, 1, 0, -1], [-1, 0, 1, 0], [0, -3, 0, 1], [3, 0, -1, 0]];

const G2_11: [[i64; 4]; 4] = [[0, 3, -2, 1], [-1, 0, 1, 0], [2, -3, 0, -1], [-1, 0, 1, 0]];

const F4_STAR_PLUS: [[i64; 6]; 6] = [
    [0, 1, 0, 0, 0, -1],
    [-2, 0, 1, 0, 0, 0],
    [0, -1, 0, 1, 0, 0],
    [0, 0, -1, 0, 2, 0],
    [0, 0, 0, -1, 0, 1],
    [1, 0, 0, 0, -1, 0],
];

const F4_22: [[i64; 6]; 6] = [
    [0, -1, 0, 0, 0, 0],
    [1, 0, -1, 0, 0, 1],
    [0, 1, 0, -1, 0, 0],
    [0, 0, 2, 0, -1, 0],
    [0, 0, 0, 1, 0, -2],
    [0, -1, 0, 0, 1, 0],
];

fn from_rows<const N: usize>(rows: &[[i64; N]; N]) -> ExchangeMatrix {
    ExchangeMatrix::new(rows.iter().map(|r| r.to_vec()).collect()).expect("pinned matrices are valid")
}

/// Centre 1 with three triangles `1 -> 2i`, `2i => 2i+1` (weight 4), `2i+1 -> 1`.
fn x7() -> ExchangeMatrix {
    let mut b = Builder::new(7);
    for i in 1..=3 {
        b.simple(1, 2 * i).arrow(2 * i, 2 * i + 1, 2, 2).simple(2 * i + 1, 1);
    }
    b.build()
}

pub(super) fn make(spec: &FamilySpec) -> Result<ExchangeMatrix> {
    use Family::*;
    let p = spec.params.as_slice();
    let m = match (spec.name, p) {
        (X6, []) => from_rows(&X6_ROWS),
        (X7, []) => x7(),
        (G2StarPlus, [] | [31]) => from_rows(&G2_31),
        (G2StarPlus, [13]) => from_rows(&G2_31).transpose().negate(),
        (G2StarStar, [11]) => from_rows(&G2_11),
        (G2StarStar, [33]) => from_rows(&G2_11).transpose(),
        (F4StarPlus, [] | [1]) => from_rows(&F4_STAR_PLUS),
        (F4StarPlus, [2]) => from_rows(&F4_STAR_PLUS).transpose().negate(),
        (F4StarStar, [22]) => from_rows(&F4_22),
        (F4StarStar, [11]) => from_rows(&F4_22).transpose(),
        _ => return Err(bad(spec, "unknown variant")),
    };
    Ok(m)
}

/// Which of the two generators (or their inverses) a formula refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Generator {
    A,
    AInv,
    B,
    BInv,
}

/// Published action near an axis: `g(axis + z) = base + M z`, where `base` is the axis
/// or, for formulas written relative to the moved point, `axis + z`.
#[derive(Clone, Copy, Debug)]
pub struct LinearDisplay {
    pub name: &'static str,
    pub generator: Generator,
    pub matrix: &'static [&'static [i64]],
    pub relative_to_point: bool,
}

/// Published translation law `g^r(z) = z + sign * r * kappa(z) * axis` for `r` a
/// multiple of `period`.
#[derive(Clone, Copy, Debug)]
pub struct PrintedLaw {
    pub kappa: &'static [Q],
    pub sign: i64,
    pub period: usize,
}

/// Open planar wedge `{T u + nu w : T > 0, 0 < nu < eps T}`.
#[derive(Clone, Copy, Debug)]
pub struct WedgeSpec {
    pub u: &'static [i64],
    pub w: &'static [i64],
}

/// Published action on a wedge: `g(T u + nu w) = T u' + nu w'`.
#[derive(Clone, Copy, Debug)]
pub struct WedgeDisplay {
    pub generator: Generator,
    pub input: WedgeSpec,
    pub output: WedgeSpec,
}

/// Published membership fact: `g^power(point)` lies in the wedge of `generator`
/// with the given sign, for the case's epsilon.
#[derive(Clone, Copy, Debug)]
pub struct MembershipFact {
    pub generator: Generator,
    pub power: usize,
    pub point: &'static [i64],
    pub target: Generator,
    pub positive: bool,
}

/// Everything the published ping-pong argument states about one case.
#[derive(Clone, Copy, Debug)]
pub struct PublishedCase {
    pub id: &'static str,
    pub family: Family,
    pub params: &'static [u32],
    pub word_a: &'static str,
    pub word_b: &'static str,
    pub axis_a: &'static [Q],
    pub axis_b: &'static [Q],
    pub law_a: Option<PrintedLaw>,
    pub law_b: Option<PrintedLaw>,
    pub displays: &'static [LinearDisplay],
    /// `[X_a^+, X_a^-, X_b^+, X_b^-]` when the sets are wedges rather than cones.
    pub wedges: Option<[WedgeSpec; 4]>,
    pub wedge_displays: &'static [WedgeDisplay],
    pub memberships: &'static [MembershipFact],
    pub epsilon: Option<Q>,
}

impl PublishedCase {
    pub fn spec(&self) -> FamilySpec {
        FamilySpec::new(self.family, self.params)
    }

    pub fn matrix(&self) -> ExchangeMatrix {
        super::make_family(&self.spec()).expect("published cases name catalog entries")
    }
}

pub fn published_case(id: &str) -> Option<&'static PublishedCase> {
    PUBLISHED_CASES.iter().find(|c| c.id.eq_ignore_ascii_case(id.trim()))
}

const fn q(n: i64) -> Q {
    (n, 1)
}

const XA_PLUS: WedgeSpec = WedgeSpec { u: &[1, -1, 0, 0, 0, 0], w: &[-1, 0, 0, 0, 0, 1] };
const XA_MINUS: WedgeSpec = WedgeSpec { u: &[1, -1, 0, 0, 0, 0], w: &[0, 1, -1, 0, 0, 1] };
const XB_PLUS: WedgeSpec = WedgeSpec { u: &[0, 1, -1, 0, 0, 1], w: &[1, -1, 0, 0, 0, 0] };
const XB_MINUS: WedgeSpec = WedgeSpec { u: &[0, 1, -1, 0, 0, 1], w: &[-1, -1, 1, 0, 0, 0] };

pub static PUBLISHED_CASES: &[PublishedCase] = &[
    PublishedCase {
        id: "X6",
        family: Family::X6,
        params: &[],
        word_a: "[3,2,1]^10",
        word_b: "[3,5,4,2,6]^4",
        axis_a: &[q(1), q(-1), q(0), q(0), q(0), q(0)],
        axis_b: &[q(0), q(1), q(-1), q(0), q(0), q(1)],
        law_a: None,
        law_b: None,
        displays: &[],
        wedges: Some([XA_PLUS, XA_MINUS, XB_PLUS, XB_MINUS]),
        wedge_displays: &[
            WedgeDisplay {
                generator: Generator::A,
                input: XA_PLUS,
                output: WedgeSpec { u: &[1, -1, 0, 0, 0, 0], w: &[14, -15, 0, 0, 0, 1] },
            },
            WedgeDisplay {
                generator: Generator::AInv,
                input: XA_MINUS,
                output: WedgeSpec { u: &[1, -1, 0, 0, 0, 0], w: &[15, -14, -1, 0, 0, 1] },
            },
            WedgeDisplay {
                generator: Generator::B,
                input: XB_PLUS,
                output: WedgeSpec { u: &[0, 1, -1, 0, 0, 1], w: &[-1, 2, -3, 0, 0, 3] },
            },
            WedgeDisplay {
                generator: Generator::BInv,
                input: XB_MINUS,
                output: WedgeSpec { u: &[0, 1, -1, 0, 0, 1], w: &[-1, 2, -2, 0, 0, 3] },
            },
        ],
        memberships: &[
            MembershipFact {
                generator: Generator::A,
                power: 10,
                point: &[0, 1, -1, 0, 0, 1],
                target: Generator::A,
                positive: true,
            },
            MembershipFact {
                generator: Generator::AInv,
                power: 10,
                point: &[0, 1, -1, 0, 0, 1],
                target: Generator::A,
                positive: false,
            },
            MembershipFact {
                generator: Generator::B,
                power: 10,
                point: &[1, -1, 0, 0, 0, 0],
                target: Generator::B,
                positive: true,
            },
            MembershipFact {
                generator: Generator::BInv,
                power: 10,
                point: &[1, -1, 0, 0, 0, 0],
                target: Generator::B,
                positive: false,
            },
        ],
        epsilon: Some((1, 15)),
    },
    PublishedCase {
        id: "G2*+",
        family: Family::G2StarPlus,
        params: &[31],
        word_a: "[1,2,3]^2",
        word_b: "[2,3,4]^2",
        axis_a: &[q(-1), q(-1), q(3), q(0)],
        axis_b: &[q(0), q(-1), q(1), q(1)],
        law_a: Some(PrintedLaw { kappa: &[q(1), q(2), q(1), q(0)], sign: 1, period: 1 }),
        law_b: Some(PrintedLaw { kappa: &[q(0), q(1), (2, 3), (1, 3)], sign: 1, period: 1 }),
        displays: &[
            LinearDisplay {
                name: "a near v_a",
                generator: Generator::A,
                matrix: &[&[2, 2, 1, 0], &[1, 3, 1, 0], &[-3, -6, -2, 0], &[0, 0, 0, 1]],
                relative_to_point: false,
            },
            LinearDisplay {
                name: "b near v_b",
                generator: Generator::B,
                matrix: &[&[1, 0, 0, 0], &[0, 4, 2, 1], &[0, -3, -1, -1], &[0, -3, -2, 0]],
                relative_to_point: false,
            },
        ],
        wedges: None,
        wedge_displays: &[],
        memberships: &[],
        epsilon: None,
    },
    PublishedCase {
        id: "G2^(1,1)",
        family: Family::G2StarStar,
        params: &[11],
        word_a: "[4,1,2]^4",
        word_b: "[4,3,2]^4",
        axis_a: &[q(-2), q(1), q(0), q(1)],
        axis_b: &[q(0), q(-1), q(2), q(-1)],
        law_a: Some(PrintedLaw { kappa: &[q(6), q(9), q(0), q(3)], sign: -1, period: 1 }),
        law_b: Some(PrintedLaw { kappa: &[q(0), q(9), q(6), q(3)], sign: 1, period: 1 }),
        displays: &[
            LinearDisplay {
                name: "a near v_a",
                generator: Generator::A,
                matrix: &[&[13, 18, 0, 6], &[-6, -8, 0, -3], &[0, 0, 1, 0], &[-6, -9, 0, -2]],
                relative_to_point: false,
            },
            LinearDisplay {
                name: "b near v_b",
                generator: Generator::B,
                matrix: &[&[1, 0, 0, 0], &[0, -8, -6, -3], &[0, 18, 13, 6], &[0, -9, -6, -2]],
                relative_to_point: false,
            },
        ],
        wedges: None,
        wedge_displays: &[],
        memberships: &[],
        epsilon: None,
    },
    PublishedCase {
        id: "G2^(3,3)",
        family: Family::G2StarStar,
        params: &[33],
        word_a: "[4,1,2]^4",
        word_b: "[4,3,2]^4",
        axis_a: &[q(2), q(-3), q(0), q(-1)],
        axis_b: &[q(0), q(3), q(-2), q(1)],
        law_a: Some(PrintedLaw { kappa: &[q(6), q(3), q(0), q(3)], sign: 1, period: 1 }),
        law_b: Some(PrintedLaw { kappa: &[q(0), q(3), q(6), q(3)], sign: -1, period: 1 }),
        displays: &[
            LinearDisplay {
                name: "a near v_a",
                generator: Generator::A,
                matrix: &[&[13, 6, 0, 6], &[-18, -8, 0, -9], &[0, 0, 1, 0], &[-6, -3, 0, -2]],
                relative_to_point: false,
            },
            LinearDisplay {
                name: "b near v_b",
                generator: Generator::B,
                matrix: &[&[1, 0, 0, 0], &[0, -8, -18, -9], &[0, 6, 13, 6], &[0, -3, -6, -2]],
                relative_to_point: false,
            },
        ],
        wedges: None,
        wedge_displays: &[],
        memberships: &[],
        epsilon: None,
    },
    PublishedCase {
        id: "F4*+",
        family: Family::F4StarPlus,
        params: &[1],
        word_a: "[5,4,3,2,1]",
        word_b: "[2,1,6,5,4]",
        axis_a: &[q(-1), q(0), q(0), q(0), q(1), q(0)],
        axis_b: &[q(0), q(1), q(0), q(-1), q(0), q(0)],
        law_a: Some(PrintedLaw { kappa: &[(1, 2), (1, 2), (1, 2), (1, 2), (1, 2), q(0)], sign: 1, period: 4 }),
        law_b: Some(PrintedLaw { kappa: &[q(1), (1, 2), q(0), (1, 2), q(1), q(1)], sign: 1, period: 4 }),
        displays: &[
            LinearDisplay {
                name: "a near v_a",
                generator: Generator::A,
                matrix: &[
                    &[-1, -1, -1, -1, -2, 0],
                    &[2, 1, 1, 1, 2, 0],
                    &[0, 1, 0, 0, 0, 0],
                    &[0, 0, 1, 0, 0, 0],
                    &[0, 0, 0, 1, 1, 0],
                    &[0, 0, 0, 0, 0, 1],
                ],
                relative_to_point: false,
            },
            LinearDisplay {
                name: "b near v_b",
                generator: Generator::B,
                matrix: &[
                    &[0, 0, 0, 0, 0, 1],
                    &[2, 1, 0, 0, 0, 0],
                    &[0, 0, 1, 0, 0, 0],
                    &[-2, -2, 0, -1, -2, -2],
                    &[1, 1, 0, 1, 1, 1],
                    &[0, 0, 0, 0, 1, 0],
                ],
                relative_to_point: true,
            },
        ],
        wedges: None,
        wedge_displays: &[],
        memberships: &[],
        epsilon: None,
    },
    PublishedCase {
        id: "F4^(1,1)",
        family: Family::F4StarStar,
        params: &[11],
        word_a: "[1,2,3,4,5]^2",
        word_b: "[4,5,6,1,2]^2",
        axis_a: &[q(-1), q(-1), q(-1), q(1), q(1), q(0)],
        axis_b: &[(-1, 2), q(1), q(0), (-1, 2), (-1, 2), (1, 2)],
        law_a: Some(PrintedLaw { kappa: &[(1, 3), (2, 3), q(1), (4, 3), (2, 3), q(0)], sign: 1, period: 3 }),
        law_b: Some(PrintedLaw { kappa: &[(2, 3), (4, 3), q(0), (4, 3), (8, 3), q(2)], sign: -1, period: 3 }),
        displays: &[
            LinearDisplay {
                name: "a near v_a",
                generator: Generator::A,
                matrix: &[
                    &[0, 0, -1, -2, 0, 0],
                    &[-1, -1, -1, -2, -2, 0],
                    &[1, 0, 0, 0, 0, 0],
                    &[0, 1, 1, 2, 1, 0],
                    &[0, 0, 1, 1, 1, 0],
                    &[0, 0, 0, 0, 0, 1],
                ],
                relative_to_point: false,
            },
            LinearDisplay {
                name: "b near v_b",
                generator: Generator::B,
                matrix: &[
                    &[0, 0, 0, 0, 2, 1],
                    &[0, -1, 0, -2, -4, -2],
                    &[0, 0, 1, 0, 0, 0],
                    &[0, 0, 0, 1, 1, 1],
                    &[1, 1, 0, 1, 2, 1],
                    &[-1, 0, 0, 0, 0, 0],
                ],
                relative_to_point: false,
            },
        ],
        wedges: None,
        wedge_displays: &[],
        memberships: &[],
        epsilon: None,
    },
    PublishedCase {
        id: "F4^(2,2)",
        family: Family::F4StarStar,
        params: &[22],
        word_a: "[1,2,3,4,5]^2",
        word_b: "[4,5,6,1,2]^2",
        axis_a: &[q(1), q(1), q(1), q(-2), q(-2), q(0)],
        axis_b: &[q(1), q(-2), q(0), q(2), q(2), q(-1)],
        law_a: Some(PrintedLaw { kappa: &[(1, 3), (2, 3), q(1), (2, 3), (1, 3), q(0)], sign: 1, period: 3 }),
        law_b: Some(PrintedLaw { kappa: &[(1, 3), (2, 3), q(0), (1, 3), (2, 3), q(1)], sign: -1, period: 3 }),
        displays: &[
            LinearDisplay {
                name: "a near v_a",
                generator: Generator::A,
                matrix: &[
                    &[0, 0, 1, 0, 0, 0],
                    &[1, 1, 1, 1, 0, 0],
                    &[1, 2, 2, 1, 1, 0],
                    &[-2, -2, -2, -1, -1, 0],
                    &[0, -2, -2, -1, 0, 0],
                    &[0, 0, 0, 0, 0, 1],
                ],
                relative_to_point: false,
            },
            LinearDisplay {
                name: "b near v_b",
                generator: Generator::B,
                matrix: &[
                    &[0, 0, 0, 0, 1, 1],
                    &[0, -1, 0, -1, -2, -2],
                    &[0, 0, 1, 0, 0, 0],
                    &[0, 0, 0, 1, 1, 2],
                    &[2, 2, 0, 1, 2, 2],
                    &[-1, 0, 0, 0, 0, 0],
                ],
                relative_to_point: false,
            },
        ],
        wedges: None,
        wedge_displays: &[],
        memberships: &[],
        epsilon: None,
    },
];
