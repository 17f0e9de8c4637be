//! Ping-pong sets: round cones cut by a functional, and planar wedges. Membership,
//! linearity of a word on a set, and disjointness are all decided in exact arithmetic.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{dot, qser, GVector, Rat};

/// `{alpha axis + w : w orthogonal to axis, alpha > 0, |w| < eps alpha |axis|}`
/// intersected with `side * kappa > 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cone {
    #[serde(with = "qser::vector")]
    pub axis: GVector,
    #[serde(with = "qser::scalar")]
    pub epsilon: Rat,
    #[serde(with = "qser::vector")]
    pub kappa: GVector,
    pub side: i8,
}

impl Cone {
    /// Membership in the round cone alone: `x.v > 0` and
    /// `|x|^2 |v|^2 - (x.v)^2 < eps^2 (x.v)^2`.
    pub fn in_round_cone(&self, x: &[Rat]) -> bool {
        in_round_cone(&self.axis, &self.epsilon, x)
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        let k = dot(&self.kappa, x);
        let side_ok = if self.side > 0 { k.is_positive() } else { k.is_negative() };
        side_ok && self.in_round_cone(x)
    }
}

fn in_round_cone(v: &[Rat], eps: &Rat, x: &[Rat]) -> bool {
    let xv = dot(x, v);
    if !xv.is_positive() {
        return false;
    }
    let lhs = dot(x, x) * dot(v, v) - &xv * &xv;
    lhs < eps * eps * &xv * &xv
}

/// Sign of `l` is constant on the open round cone of half-width `eps` about `v`:
/// `l(v) != 0` and `l(v)^2 >= eps^2 (|v|^2 |l|^2 - l(v)^2)`, or `l` vanishes.
pub(crate) fn sign_constant_on_cone(l: &[Rat], v: &[Rat], eps: &Rat) -> bool {
    if l.iter().all(Zero::is_zero) {
        return true;
    }
    let lv = dot(l, v);
    if lv.is_zero() {
        return false;
    }
    let perp = dot(v, v) * dot(l, l) - &lv * &lv;
    &lv * &lv >= eps * eps * perp
}

/// `{T u + nu w : T > 0, 0 < nu < eps T}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Wedge {
    #[serde(with = "qser::vector")]
    pub u: GVector,
    #[serde(with = "qser::vector")]
    pub w: GVector,
    #[serde(with = "qser::scalar")]
    pub epsilon: Rat,
}

impl Wedge {
    pub fn point(&self, t: &Rat, nu: &Rat) -> GVector {
        self.u.iter().zip(&self.w).map(|(a, b)| a * t + b * nu).collect()
    }

    /// Coordinates `(T, nu)` of `x` in the plane of the wedge, if `x` lies in that plane.
    pub fn coordinates(&self, x: &[Rat]) -> Option<(Rat, Rat)> {
        let (uu, uw, ww) = (dot(&self.u, &self.u), dot(&self.u, &self.w), dot(&self.w, &self.w));
        let (ux, wx) = (dot(&self.u, x), dot(&self.w, x));
        let det = &uu * &ww - &uw * &uw;
        if det.is_zero() {
            return None;
        }
        let t = (&ux * &ww - &wx * &uw) / &det;
        let nu = (&uu * &wx - &uw * &ux) / &det;
        (self.point(&t, &nu) == x).then_some((t, nu))
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        match self.coordinates(x) {
            Some((t, nu)) => t.is_positive() && nu.is_positive() && nu < &self.epsilon * t,
            None => false,
        }
    }

    /// Interior probe `u + (eps/2) w`.
    pub fn midpoint(&self) -> GVector {
        self.point(&Rat::one(), &(&self.epsilon / Rat::from_integer(2.into())))
    }
}

/// Sign of `l` is constant (or `l` is identically zero) on the open wedge: the values
/// at `u` and `u + eps w` are not of strictly opposite sign and not both zero, unless
/// `l` vanishes on the whole plane.
pub(crate) fn sign_constant_on_wedge(l: &[Rat], wedge: &Wedge) -> bool {
    let lu = dot(l, &wedge.u);
    let lw = dot(l, &wedge.w);
    if lu.is_zero() && lw.is_zero() {
        return true;
    }
    let end = &lu + &wedge.epsilon * &lw;
    if lu.is_zero() && end.is_zero() {
        return false;
    }
    !((lu.is_positive() && end.is_negative()) || (lu.is_negative() && end.is_positive()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "shape")]
pub enum PingPongSet {
    Cone(Cone),
    Wedge(Wedge),
}

impl PingPongSet {
    pub fn contains(&self, x: &[Rat]) -> bool {
        match self {
            PingPongSet::Cone(c) => c.contains(x),
            PingPongSet::Wedge(w) => w.contains(x),
        }
    }
}

/// The open round cones of half-width `eps` (tangent of the half-angle) about `va` and
/// `vb` are disjoint iff the angle between the axes is at least twice the half-angle:
/// `cos phi <= (1 - eps^2) / (1 + eps^2)`.
pub fn cones_disjoint(va: &[Rat], vb: &[Rat], eps: &Rat) -> bool {
    let d = dot(va, vb);
    let e2 = eps * eps;
    let c = (Rat::one() - &e2) / (Rat::one() + &e2);
    let norms = dot(va, va) * dot(vb, vb);
    let (dd, cc) = (&d * &d, &c * &c * norms);
    match (d.is_positive(), c.is_negative()) {
        (false, false) => true,
        (true, true) => false,
        (true, false) => dd <= cc,
        (false, true) => dd >= cc,
    }
}

/// Two open wedges are disjoint iff `T1 u1 + nu1 w1 = T2 u2 + nu2 w2` has no solution
/// with all six strict inequalities; decided on the null space of the equation by
/// Fourier-Motzkin elimination.
pub fn wedges_disjoint(a: &Wedge, b: &Wedge) -> bool {
    let n = a.u.len();
    // columns: T1, nu1, T2, nu2
    let rows: Vec<Vec<Rat>> =
        (0..n).map(|i| vec![a.u[i].clone(), a.w[i].clone(), -b.u[i].clone(), -b.w[i].clone()]).collect();
    let basis = null_space(rows, 4);
    if basis.is_empty() {
        return true;
    }
    let zero = Rat::zero;
    let one = Rat::one;
    let constraints: Vec<Vec<Rat>> = vec![
        vec![one(), zero(), zero(), zero()],
        vec![zero(), one(), zero(), zero()],
        vec![a.epsilon.clone(), -one(), zero(), zero()],
        vec![zero(), zero(), one(), zero()],
        vec![zero(), zero(), zero(), one()],
        vec![zero(), zero(), b.epsilon.clone(), -one()],
    ];
    let in_basis: Vec<Vec<Rat>> =
        constraints.iter().map(|c| basis.iter().map(|v| dot(c, v)).collect()).collect();
    !strictly_feasible(in_basis)
}

/// Basis of `{x : rows x = 0}` in `R^cols`.
fn null_space(mut rows: Vec<Vec<Rat>>, cols: usize) -> Vec<Vec<Rat>> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = Rat::one() / &rows[r][c];
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![Rat::zero(); cols];
            v[free] = Rat::one();
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = -rows[i][free].clone();
            }
            v
        })
        .collect()
}

/// Whether some `t` satisfies `row . t > 0` for every row.
pub(crate) fn strictly_feasible(rows: Vec<Vec<Rat>>) -> bool {
    let vars = rows.first().map_or(0, Vec::len);
    if rows.is_empty() {
        return true;
    }
    if vars == 0 {
        return false;
    }
    let j = vars - 1;
    let (mut pos, mut neg, mut rest) = (Vec::new(), Vec::new(), Vec::new());
    for row in rows {
        if row[j].is_positive() {
            pos.push(row);
        } else if row[j].is_negative() {
            neg.push(row);
        } else {
            rest.push(row[..j].to_vec());
        }
    }
    if pos.is_empty() || neg.is_empty() {
        // t_j can be taken large enough in the needed direction
        return strictly_feasible_or_empty(rest, j);
    }
    for p in &pos {
        for q in &neg {
            let (a, b) = (-q[j].clone(), p[j].clone());
            rest.push((0..j).map(|i| &a * &p[i] + &b * &q[i]).collect());
        }
    }
    strictly_feasible_or_empty(rest, j)
}

fn strictly_feasible_or_empty(rows: Vec<Vec<Rat>>, vars: usize) -> bool {
    if rows.is_empty() {
        return true;
    }
    if vars == 0 {
        return false;
    }
    strictly_feasible(rows)
}
