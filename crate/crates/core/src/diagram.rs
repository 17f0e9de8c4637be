//! Diagrams: weighted directed graphs attached to skew-symmetrizable matrices.

use std::fmt;

use num_integer::Roots;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{parse_err, Error, Result};
use crate::matrix::ExchangeMatrix;

/// Directed graph with positive integer weights, at most one edge per unordered pair.
/// `w[i*n+j] > 0` means an edge `i -> j` of that weight.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Diagram {
    n: usize,
    w: Vec<u64>,
}

impl fmt::Debug for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Diagram(n={}, edges={:?})", self.n, self.edges())
    }
}

impl Diagram {
    pub fn empty(n: usize) -> Self {
        Self { n, w: vec![0; n * n] }
    }

    /// Builds from `(i, j, weight)` triples with 1-based endpoints.
    pub fn from_edges(n: usize, edges: &[(usize, usize, u64)]) -> Result<Self> {
        let mut d = Self::empty(n);
        for &(i, j, w) in edges {
            if i == 0 || j == 0 || i > n || j > n {
                return Err(Error::Direction { k: i.max(j), n });
            }
            if i == j {
                return Err(Error::NotRealizable(format!("loop at vertex {i}")));
            }
            if w == 0 {
                return Err(Error::NotRealizable("zero weight".into()));
            }
            if d.weight(i - 1, j - 1) != 0 || d.weight(j - 1, i - 1) != 0 {
                return Err(Error::NotRealizable(format!("parallel edges between {i} and {j}")));
            }
            d.w[(i - 1) * n + (j - 1)] = w;
        }
        Ok(d)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// Weight of the edge `i -> j` (0-based), zero if absent.
    #[inline]
    pub fn weight(&self, i: usize, j: usize) -> u64 {
        self.w[i * self.n + j]
    }

    /// Edges as 1-based `(source, target, weight)` triples in row-major order.
    pub fn edges(&self) -> Vec<(usize, usize, u64)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in 0..self.n {
                let w = self.weight(i, j);
                if w > 0 {
                    out.push((i + 1, j + 1, w));
                }
            }
        }
        out
    }

    pub fn max_weight(&self) -> u64 {
        self.w.iter().copied().max().unwrap_or(0)
    }

    /// Relabels vertices: vertex `i` becomes `perm[i]` (0-based).
    pub fn relabel(&self, perm: &[usize]) -> Self {
        let n = self.n;
        let mut w = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                w[perm[i] * n + perm[j]] = self.weight(i, j);
            }
        }
        Self { n, w }
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for u in 0..self.n {
                if !seen[u] && (self.weight(v, u) > 0 || self.weight(u, v) > 0) {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Diagram mutation at `k` (1-based).
    ///
    /// For a path `i -> k -> j` with weights `a, b`, the signed root of the `i -> j`
    /// relation grows by `sqrt(ab)`; the cross term `2 sqrt(abc)` is an integer on
    /// realizable inputs.
    pub fn mutate(&self, k: usize) -> Result<Self> {
        let n = self.n;
        if k == 0 || k > n {
            return Err(Error::Direction { k, n });
        }
        let k = k - 1;
        let mut out = self.clone();
        for i in 0..n {
            for j in 0..n {
                if i == k || j == k || i == j {
                    continue;
                }
                let (a, b) = (self.weight(i, k), self.weight(k, j));
                if a == 0 || b == 0 {
                    continue;
                }
                let ab = a.checked_mul(b).ok_or(Error::Overflow)?;
                let (same, c) = if self.weight(i, j) > 0 {
                    (true, self.weight(i, j))
                } else {
                    (false, self.weight(j, i))
                };
                out.w[i * n + j] = 0;
                out.w[j * n + i] = 0;
                if c == 0 {
                    out.w[i * n + j] = ab;
                    continue;
                }
                let abc = ab.checked_mul(c).ok_or(Error::Overflow)?;
                let r = abc.sqrt();
                if r * r != abc {
                    return Err(Error::NotRealizable(format!(
                        "triangle ({}, {}, {}) has non-square weight product",
                        i + 1,
                        k + 1,
                        j + 1
                    )));
                }
                if same {
                    out.w[i * n + j] = c + ab + 2 * r;
                } else if ab > c {
                    out.w[i * n + j] = ab + c - 2 * r;
                } else if ab < c {
                    out.w[j * n + i] = ab + c - 2 * r;
                }
            }
        }
        for u in 0..n {
            let (a, b) = (self.weight(u, k), self.weight(k, u));
            out.w[u * n + k] = b;
            out.w[k * n + u] = a;
        }
        Ok(out)
    }

    /// Every chordless cycle has a perfect-square weight product.
    pub fn is_realizable(&self) -> bool {
        self.first_bad_cycle().is_none()
    }

    /// A chordless cycle (0-based vertices) whose weight product is not a square.
    pub fn first_bad_cycle(&self) -> Option<Vec<usize>> {
        let mut found = None;
        self.chordless_cycles(&mut |cyc: &[usize]| {
            let mut sf = 1u64;
            for t in 0..cyc.len() {
                let (u, v) = (cyc[t], cyc[(t + 1) % cyc.len()]);
                sf = squarefree_part(sf * squarefree_part(self.weight(u, v).max(self.weight(v, u))));
            }
            if sf != 1 {
                found = Some(cyc.to_vec());
                false
            } else {
                true
            }
        });
        found
    }

    fn adjacent(&self, u: usize, v: usize) -> bool {
        self.weight(u, v) > 0 || self.weight(v, u) > 0
    }

    /// Calls `visit` once per chordless cycle of the underlying undirected graph;
    /// stops early when `visit` returns false.
    pub fn chordless_cycles(&self, visit: &mut dyn FnMut(&[usize]) -> bool) {
        for s in 0..self.n {
            let mut path = vec![s];
            if !self.extend_cycle(&mut path, visit) {
                return;
            }
        }
    }

    fn extend_cycle(&self, path: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        let s = path[0];
        let last = *path.last().unwrap();
        for v in s + 1..self.n {
            if !self.adjacent(last, v) || path.contains(&v) {
                continue;
            }
            // v may touch only `last` among interior path vertices.
            if path.len() >= 2 && path[1..path.len() - 1].iter().any(|&p| self.adjacent(p, v)) {
                continue;
            }
            if path.len() >= 2 && self.adjacent(v, s) {
                if path[1] < v {
                    path.push(v);
                    let go = visit(path);
                    path.pop();
                    if !go {
                        return false;
                    }
                }
                continue;
            }
            path.push(v);
            let go = self.extend_cycle(path, visit);
            path.pop();
            if !go {
                return false;
            }
        }
        true
    }

    /// Canonical form up to vertex relabeling.
    pub fn canonical_form(&self) -> CanonicalKey {
        crate::canon::canonical_key(self).0
    }

    /// Canonical key together with the relabeling that produces the canonical diagram.
    pub fn canonical_labeling(&self) -> (CanonicalKey, Vec<usize>) {
        crate::canon::canonical_key(self)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("v {}\n", self.n);
        for (i, j, w) in self.edges() {
            s.push_str(&format!("e {i} {j} {w}\n"));
        }
        s
    }

    /// Parses `v N` followed by `e i j w` lines; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut n = None;
        let mut edges = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let ln = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            match toks[0] {
                "v" if toks.len() == 2 && n.is_none() => {
                    n = Some(toks[1].parse::<usize>().map_err(|_| parse_err(ln, "bad vertex count"))?);
                }
                "e" if toks.len() == 4 => {
                    let nums: std::result::Result<Vec<u64>, _> = toks[1..].iter().map(|t| t.parse::<u64>()).collect();
                    let nums = nums.map_err(|_| parse_err(ln, "bad edge"))?;
                    edges.push((nums[0] as usize, nums[1] as usize, nums[2]));
                }
                _ => return Err(parse_err(ln, format!("unrecognized line `{line}`"))),
            }
        }
        let n = n.ok_or_else(|| parse_err(1, "missing `v N` line"))?;
        Self::from_edges(n, &edges)
    }
}

fn squarefree_part(mut x: u64) -> u64 {
    let mut out = 1;
    let mut p = 2;
    while p * p <= x {
        let mut e = 0;
        while x.is_multiple_of(p) {
            x /= p;
            e += 1;
        }
        if e % 2 == 1 {
            out *= p;
        }
        p += 1;
    }
    out * x
}

/// Relabeling-invariant encoding of a diagram.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CanonicalKey(pub Vec<u8>);

pub fn diagram_of_matrix(b: &ExchangeMatrix) -> Result<Diagram> {
    let n = b.rank();
    let mut d = Diagram::empty(n);
    for i in 0..n {
        for j in 0..n {
            if b.get(i, j) > 0 {
                let w = b.get(i, j).checked_mul(-b.get(j, i)).ok_or(Error::Overflow)?;
                d.w[i * n + j] = w as u64;
            }
        }
    }
    Ok(d)
}

pub fn mutate_diagram(d: &Diagram, k: usize) -> Result<Diagram> {
    d.mutate(k)
}

pub fn is_realizable(d: &Diagram) -> bool {
    d.is_realizable()
}

pub fn canonical_form(d: &Diagram) -> CanonicalKey {
    d.canonical_form()
}

/// Factor pairs `(p, q)` with `p q = w`, in preference order: the balanced square
/// factorization first, then `p > q` by increasing `p`, then `p < q`.
fn factorizations(w: u64) -> Vec<(i64, i64)> {
    let mut ge = Vec::new();
    let mut lt = Vec::new();
    let r = w.sqrt();
    if r * r == w {
        ge.push((r as i64, r as i64));
    }
    for q in (1..=w).rev() {
        if w.is_multiple_of(q) {
            let p = w / q;
            if p > q {
                ge.push((p as i64, q as i64));
            }
        }
    }
    for p in 1..=w {
        if w.is_multiple_of(p) && p * p < w {
            lt.push((p as i64, (w / p) as i64));
        }
    }
    ge.extend(lt);
    ge
}

/// One exchange matrix with diagram `d`; deterministic.
///
/// Each edge `i -> j` of weight `w` becomes `(b_ij, -b_ji) = (p, -q)` with `pq = w`,
/// tried in the order of [`factorizations`]; choices propagate along a BFS tree and
/// are backtracked when a closing edge admits no integral factorization.
pub fn matrix_of_diagram(d: &Diagram) -> Result<ExchangeMatrix> {
    if let Some(c) = d.first_bad_cycle() {
        let c: Vec<usize> = c.into_iter().map(|v| v + 1).collect();
        return Err(Error::NotRealizable(format!("chordless cycle {c:?} has non-square weight product")));
    }
    let n = d.n;
    // Vertex order: BFS per component; parent edge recorded.
    let mut order = Vec::with_capacity(n);
    let mut parent = vec![usize::MAX; n];
    let mut seen = vec![false; n];
    for r in 0..n {
        if seen[r] {
            continue;
        }
        seen[r] = true;
        let start = order.len();
        order.push(r);
        let mut head = start;
        while head < order.len() {
            let v = order[head];
            head += 1;
            for u in 0..n {
                if !seen[u] && d.adjacent(u, v) {
                    seen[u] = true;
                    parent[u] = v;
                    order.push(u);
                }
            }
        }
    }
    let mut dval: Vec<Option<Ratio<i64>>> = vec![None; n];
    if !assign(d, &order, &parent, 0, &mut dval) {
        return Err(Error::NotRealizable("no consistent skew-symmetrizable factorization".into()));
    }
    let mut rows = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in 0..n {
            let w = d.weight(i, j);
            if w > 0 {
                let (p, q) = split(w, dval[i].unwrap(), dval[j].unwrap()).expect("checked during assignment");
                rows[i][j] = p;
                rows[j][i] = -q;
            }
        }
    }
    ExchangeMatrix::new(rows)
}

/// `(p, q)` with `pq = w` and `p / q = d_i / d_j`, if integral.
fn split(w: u64, di: Ratio<i64>, dj: Ratio<i64>) -> Option<(i64, i64)> {
    let ratio = di / dj;
    // p^2 = w * ratio
    let num = (w as i64).checked_mul(*ratio.numer())?;
    let den = *ratio.denom();
    if num % den != 0 {
        return None;
    }
    let p2 = num / den;
    let p = p2.sqrt();
    if p * p != p2 || p == 0 || (w as i64) % p != 0 {
        return None;
    }
    Some((p, w as i64 / p))
}

fn consistent(d: &Diagram, v: usize, dval: &[Option<Ratio<i64>>]) -> bool {
    let dv = dval[v].unwrap();
    (0..d.n).all(|u| {
        let Some(du) = dval[u] else { return true };
        if u == v {
            return true;
        }
        let (w1, w2) = (d.weight(v, u), d.weight(u, v));
        if w1 > 0 {
            split(w1, dv, du).is_some()
        } else if w2 > 0 {
            split(w2, du, dv).is_some()
        } else {
            true
        }
    })
}

fn assign(d: &Diagram, order: &[usize], parent: &[usize], idx: usize, dval: &mut [Option<Ratio<i64>>]) -> bool {
    if idx == order.len() {
        return true;
    }
    let v = order[idx];
    let p = parent[v];
    if p == usize::MAX {
        dval[v] = Some(Ratio::from_integer(1));
        if assign(d, order, parent, idx + 1, dval) {
            return true;
        }
        dval[v] = None;
        return false;
    }
    let dp = dval[p].unwrap();
    // Edge orientation between p and v decides which side is b_ij.
    let (w, v_is_source) = if d.weight(v, p) > 0 { (d.weight(v, p), true) } else { (d.weight(p, v), false) };
    for (a, b) in factorizations(w) {
        // source/target ratio a/b = d_source / d_target
        let dv = if v_is_source { dp * Ratio::new(a, b) } else { dp * Ratio::new(b, a) };
        dval[v] = Some(dv);
        if consistent(d, v, dval) && assign(d, order, parent, idx + 1, dval) {
            return true;
        }
    }
    dval[v] = None;
    false
}
