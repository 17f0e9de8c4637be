//! Quivers of triangulated surfaces used for the polynomial-growth families.

use super::Builder;
use crate::matrix::ExchangeMatrix;

/// Annulus quiver on `x_1..x_m` (`m = n1 + n2`): the cycle with `n1` arrows one way
/// and `n2` the other, minus the forward arrow `x_m -> x_1`.
fn open_annulus(b: &mut Builder, n1: usize, n2: usize) {
    let m = n1 + n2;
    for e in 0..m - 1 {
        let (u, v) = (e + 1, e + 2);
        if e < n2 {
            b.simple(v, u);
        } else {
            b.simple(u, v);
        }
    }
}

/// Once-punctured annulus with `n1`, `n2` marked points on the boundaries, rank
/// `n1 + n2 + 3`. The puncture sits in a self-folded triangle (loop `l`, radius `r`)
/// inside the triangle bounded by `x_m`, `x_1` and a boundary segment; a further arc
/// `t` gives the triangle `x_m -> l -> t -> x_m` and the arrow `t -> x_1`. The radius
/// `r` repeats the arrows of `l`.
pub(super) fn punctured_annulus(n1: usize, n2: usize) -> ExchangeMatrix {
    let m = n1 + n2;
    let (l, r, t) = (m + 1, m + 2, m + 3);
    let mut b = Builder::new(m + 3);
    open_annulus(&mut b, n1, n2);
    b.simple(m, l).simple(l, t).simple(t, m);
    b.simple(m, r).simple(r, t);
    b.simple(t, 1);
    b.build()
}

/// Annulus with one orbifold point, rank `n1 + n2 + 2`: the punctured annulus with the
/// twins `l, r` folded into one vertex `p` of symmetrizer weight 2, so that
/// `b_xp = b_xl` and `b_px = 2 b_lx`.
pub(super) fn orbifold_annulus(n1: usize, n2: usize) -> ExchangeMatrix {
    let m = n1 + n2;
    let (p, t) = (m + 1, m + 2);
    let mut b = Builder::new(m + 2);
    open_annulus(&mut b, n1, n2);
    b.arrow(m, p, 1, 2).arrow(p, t, 2, 1).simple(t, m);
    b.simple(t, 1);
    b.build()
}

/// Pair of pants with `n1, n2, n3` marked points, rank `n1 + n2 + n3 + 3`. The arcs of
/// one inner triangle give `a_12 -> a_23 -> a_31`, the three seams give the oppositely
/// oriented `b_12 -> b_31 -> b_23`, and each seam is joined to its partner by a fan,
/// a chain `a_ij -> ... -> b_ij` with `n_k - 1` interior vertices.
pub(super) fn pants(n1: usize, n2: usize, n3: usize) -> ExchangeMatrix {
    let total = n1 + n2 + n3 + 3;
    let mut b = Builder::new(total);
    let (a12, a23, a31, b12, b23, b31) = (1, 2, 3, 4, 5, 6);
    b.simple(a12, a23).simple(a23, a31).simple(a31, a12);
    b.simple(b12, b31).simple(b31, b23).simple(b23, b12);
    let mut next = 7;
    for (from, to, len) in [(a12, b12, n1), (a23, b23, n2), (a31, b31, n3)] {
        let mut prev = from;
        for _ in 1..len {
            b.simple(prev, next);
            prev = next;
            next += 1;
        }
        b.simple(prev, to);
    }
    b.build()
}
