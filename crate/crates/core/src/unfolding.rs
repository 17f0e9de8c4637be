//! Unfoldings of skew-symmetrizable matrices.
//!
//! An unfolding of `B` (rank `n`, symmetrizer `d`) is a skew-symmetric `C` of rank
//! `m = sum d_i` whose indices are split into blocks `E_1..E_n` with `|E_i| = d_i`, such
//! that every `E_i x E_j` block of `C` has column sums `b_ij` and is entrywise
//! non-negative when `b_ij >= 0`, and such that this survives every sequence of
//! composite mutations (mutate `C` at all of `E_i` whenever `B` is mutated at `i`).

use std::collections::{HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::catalog::{Family, FamilySpec};
use crate::diagram::diagram_of_matrix;
use crate::error::{parse_err, Error, Result};
use crate::matrix::{ExchangeMatrix, Symmetrizer};
use crate::word::MutationWord;

pub const DEFAULT_DEPTH: usize = 6;
pub const DEFAULT_MAX_NODES: usize = 100_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct UnfoldingSpec {
    pub b: ExchangeMatrix,
    /// `d_i = |E_i|`; `B diag(d)` is skew-symmetric.
    pub d: Symmetrizer,
    /// `partition[i]` lists the 0-based indices of `c` forming `E_{i+1}`.
    pub partition: Vec<Vec<usize>>,
    pub c: ExchangeMatrix,
}

/// First failed condition: block `E_i x E_j` (1-based), column `column` of `c` (1-based).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockViolation {
    pub i: usize,
    pub j: usize,
    /// 1 = column sum differs from `b_ij`, 2 = negative entry although `b_ij >= 0`.
    pub condition: u8,
    pub column: usize,
    pub detail: String,
}

impl fmt::Display for BlockViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "block E_{} x E_{}, condition ({}): {}", self.i, self.j, self.condition, self.detail)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StaticCheck {
    pub violation: Option<BlockViolation>,
}

impl StaticCheck {
    pub fn holds(&self) -> bool {
        self.violation.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status")]
pub enum UnfoldingVerdict {
    /// Both conditions hold at every node within `depth` composite mutations.
    /// `closed` means the search ran out of new nodes first, so the whole orbit was seen.
    Verified { depth: usize, nodes: usize, closed: bool },
    /// Shortest word after which a condition fails.
    Violation { word: MutationWord, violation: BlockViolation },
}

impl UnfoldingVerdict {
    pub fn is_verified(&self) -> bool {
        matches!(self, UnfoldingVerdict::Verified { .. })
    }
}

/// Consecutive blocks `E_1 = {0..d_1}`, `E_2 = {d_1..d_1+d_2}`, ...
pub fn consecutive_partition(sizes: &[usize]) -> Vec<Vec<usize>> {
    let mut next = 0;
    sizes
        .iter()
        .map(|&s| {
            let e: Vec<usize> = (next..next + s).collect();
            next += s;
            e
        })
        .collect()
}

impl UnfoldingSpec {
    /// Validates shapes: `b` indecomposable, the blocks partition the indices of `c`,
    /// `c` skew-symmetric and `B diag(|E_i|)` skew-symmetric.
    pub fn new(b: ExchangeMatrix, partition: Vec<Vec<usize>>, c: ExchangeMatrix) -> Result<Self> {
        let n = b.rank();
        let m = c.rank();
        if partition.len() != n {
            return Err(Error::Unfolding(format!("{} blocks for a rank {n} matrix", partition.len())));
        }
        if n == 0 || !diagram_of_matrix(&b)?.is_connected() {
            return Err(Error::Unfolding("b must be indecomposable".into()));
        }
        let mut owner = vec![None; m];
        for (i, e) in partition.iter().enumerate() {
            if e.is_empty() {
                return Err(Error::Unfolding(format!("E_{} is empty", i + 1)));
            }
            for &p in e {
                match owner.get(p) {
                    None => return Err(Error::Unfolding(format!("index {} exceeds the rank {m} of c", p + 1))),
                    Some(Some(o)) => {
                        return Err(Error::Unfolding(format!("index {} lies in E_{} and E_{}", p + 1, o + 1, i + 1)))
                    }
                    Some(None) => owner[p] = Some(i),
                }
            }
        }
        if let Some(p) = owner.iter().position(Option::is_none) {
            return Err(Error::Unfolding(format!("index {} of c is in no block", p + 1)));
        }
        if !c.is_skew_symmetric() {
            return Err(Error::Unfolding("c is not skew-symmetric".into()));
        }
        let d: Vec<i64> = partition.iter().map(|e| e.len() as i64).collect();
        for i in 0..n {
            for j in 0..n {
                if b.get(i, j) * d[j] != -b.get(j, i) * d[i] {
                    return Err(Error::Unfolding(format!(
                        "block sizes {d:?} do not symmetrize b at ({}, {})",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(Self { b, d: Symmetrizer(d), partition, c })
    }

    /// Every matrix is its own unfolding with singleton blocks.
    pub fn trivial(b: ExchangeMatrix) -> Result<Self> {
        let n = b.rank();
        Self::new(b.clone(), (0..n).map(|i| vec![i]).collect(), b)
    }

    pub fn to_text(&self) -> String {
        let mut s = self.b.to_text();
        for (i, e) in self.partition.iter().enumerate() {
            let idx: Vec<String> = e.iter().map(|p| (p + 1).to_string()).collect();
            s.push_str(&format!("E {}: {}\n", i + 1, idx.join(" ")));
        }
        s.push_str(&self.c.to_text());
        s
    }

    /// Parses `b` in the matrix text format, then `E i: ...` lines (1-based indices),
    /// then `c` in the matrix text format. `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty())
            .peekable();
        let b = ExchangeMatrix::new(matrix_block(&mut lines)?)?;
        let mut partition = Vec::new();
        while let Some(&(ln, l)) = lines.peek() {
            let Some(rest) = l.strip_prefix('E') else { break };
            lines.next();
            let (head, body) = rest.split_once(':').ok_or_else(|| parse_err(ln, "expected `E i: ...`"))?;
            let i: usize = head.trim().parse().map_err(|_| parse_err(ln, "bad block number"))?;
            if i != partition.len() + 1 {
                return Err(parse_err(ln, format!("expected block E {}", partition.len() + 1)));
            }
            let idx: std::result::Result<Vec<usize>, _> = body.split_whitespace().map(str::parse::<usize>).collect();
            let idx = idx.map_err(|_| parse_err(ln, "bad index"))?;
            if idx.contains(&0) {
                return Err(parse_err(ln, "indices are 1-based"));
            }
            partition.push(idx.into_iter().map(|p| p - 1).collect());
        }
        let rows = matrix_block(&mut lines)?;
        if let Some((ln, _)) = lines.next() {
            return Err(parse_err(ln, "trailing content"));
        }
        if rows.iter().enumerate().any(|(i, r)| r.iter().enumerate().any(|(j, &x)| x != -rows[j][i])) {
            return Err(Error::Unfolding("c is not skew-symmetric".into()));
        }
        let c = ExchangeMatrix::new(rows)?;
        Self::new(b, partition, c)
    }
}

fn matrix_block<'a>(lines: &mut impl Iterator<Item = (usize, &'a str)>) -> Result<Vec<Vec<i64>>> {
    let (ln, first) = lines.next().ok_or_else(|| parse_err(0, "missing matrix block"))?;
    let n: usize = first.parse().map_err(|_| parse_err(ln, "expected rank"))?;
    let mut rows = Vec::with_capacity(n);
    for _ in 0..n {
        let (ln, l) = lines.next().ok_or_else(|| parse_err(ln, "missing matrix row"))?;
        let row: std::result::Result<Vec<i64>, _> = l.split_whitespace().map(str::parse).collect();
        let row = row.map_err(|_| parse_err(ln, "bad integer"))?;
        if row.len() != n {
            return Err(parse_err(ln, format!("expected {n} entries")));
        }
        rows.push(row);
    }
    Ok(rows)
}

fn first_violation(b: &ExchangeMatrix, partition: &[Vec<usize>], c: &ExchangeMatrix) -> Option<BlockViolation> {
    let n = b.rank();
    for i in 0..n {
        for j in 0..n {
            let bij = b.get(i, j);
            for &q in &partition[j] {
                let viol = |condition, detail| BlockViolation { i: i + 1, j: j + 1, condition, column: q + 1, detail };
                if bij >= 0 {
                    if let Some(&p) = partition[i].iter().find(|&&p| c.get(p, q) < 0) {
                        return Some(viol(2, format!("c[{}][{}] = {} < 0 while b_ij = {bij}", p + 1, q + 1, c.get(p, q))));
                    }
                }
                let sum: i64 = partition[i].iter().map(|&p| c.get(p, q)).sum();
                if sum != bij {
                    return Some(viol(1, format!("column {} sums to {sum}, b_ij = {bij}", q + 1)));
                }
            }
        }
    }
    None
}

pub fn check_unfolding_static(spec: &UnfoldingSpec) -> StaticCheck {
    StaticCheck { violation: first_violation(&spec.b, &spec.partition, &spec.c) }
}

/// Mutates `b` at `i` (1-based) and `c` at every index of `E_i`. The block is applied in
/// both orders and the results compared; they differ only when `c` has a nonzero entry
/// inside `E_i x E_i`.
pub fn composite_mutate(spec: &UnfoldingSpec, i: usize) -> Result<UnfoldingSpec> {
    let b = spec.b.mutate(i)?;
    let block = &spec.partition[i - 1];
    let fwd = block.iter().try_fold(spec.c.clone(), |c, &p| c.mutate(p + 1))?;
    let bwd = block.iter().rev().try_fold(spec.c.clone(), |c, &p| c.mutate(p + 1))?;
    if fwd != bwd {
        return Err(Error::Unfolding(format!("mutations inside E_{i} do not commute")));
    }
    Ok(UnfoldingSpec { b, d: spec.d.clone(), partition: spec.partition.clone(), c: fwd })
}

pub fn verify_unfolding(spec: &UnfoldingSpec, depth: usize) -> Result<UnfoldingVerdict> {
    verify_unfolding_with(spec, depth, DEFAULT_MAX_NODES)
}

/// Breadth-first search over composite-mutation words of length at most `depth`,
/// deduplicated by the pair `(b, c)`. Nodes are checked when generated, so the first
/// violation found has a shortest word.
pub fn verify_unfolding_with(spec: &UnfoldingSpec, depth: usize, max_nodes: usize) -> Result<UnfoldingVerdict> {
    if let Some(violation) = first_violation(&spec.b, &spec.partition, &spec.c) {
        return Ok(UnfoldingVerdict::Violation { word: MutationWord::empty(), violation });
    }
    let n = spec.b.rank();
    let mut seen: HashSet<(ExchangeMatrix, ExchangeMatrix)> = HashSet::new();
    seen.insert((spec.b.clone(), spec.c.clone()));
    // (node, word leading to it)
    let mut queue: VecDeque<(UnfoldingSpec, Vec<usize>)> = VecDeque::from([(spec.clone(), Vec::new())]);
    while let Some((node, word)) = queue.pop_front() {
        if word.len() == depth {
            continue;
        }
        for i in 1..=n {
            if word.last() == Some(&i) {
                continue;
            }
            let next = composite_mutate(&node, i)?;
            let key = (next.b.clone(), next.c.clone());
            if seen.contains(&key) {
                continue;
            }
            let mut w = word.clone();
            w.push(i);
            if let Some(violation) = first_violation(&next.b, &next.partition, &next.c) {
                return Ok(UnfoldingVerdict::Violation { word: MutationWord::new(w)?, violation });
            }
            if seen.len() >= max_nodes {
                return Err(Error::NodeLimit(max_nodes));
            }
            seen.insert(key);
            queue.push_back((next, w));
        }
    }
    let closed = is_closed(&seen, spec)?;
    Ok(UnfoldingVerdict::Verified { depth, nodes: seen.len(), closed })
}

/// True when one more layer of composite mutations adds nothing new.
fn is_closed(seen: &HashSet<(ExchangeMatrix, ExchangeMatrix)>, spec: &UnfoldingSpec) -> Result<bool> {
    let n = spec.b.rank();
    for (b, c) in seen {
        let node = UnfoldingSpec { b: b.clone(), d: spec.d.clone(), partition: spec.partition.clone(), c: c.clone() };
        for i in 1..=n {
            let next = composite_mutate(&node, i)?;
            if !seen.contains(&(next.b, next.c)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// All non-negative `rows x cols` integer matrices with every column summing to `col`
/// and every row to `row`, in lexicographic order of the row-major entries.
fn tables(rows: usize, cols: usize, row: i64, col: i64) -> Vec<Vec<i64>> {
    fn go(t: &mut Vec<i64>, rows: usize, cols: usize, row: i64, colsum: &mut [i64], col: i64, out: &mut Vec<Vec<i64>>) {
        let k = t.len();
        if k == rows * cols {
            if colsum.iter().all(|&s| s == col) {
                out.push(t.clone());
            }
            return;
        }
        let (r, q) = (k / cols, k % cols);
        let used: i64 = t[r * cols..].iter().sum();
        let (lo, hi) = if q == cols - 1 { (row - used, row - used) } else { (0, row - used) };
        for x in lo.max(0)..=hi.min(col - colsum[q]) {
            t.push(x);
            colsum[q] += x;
            go(t, rows, cols, row, colsum, col, out);
            colsum[q] -= x;
            t.pop();
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), rows, cols, row, &mut vec![0; cols], col, &mut out);
    out
}

/// Every `C` over consecutive blocks of the given sizes that satisfies both block
/// conditions for `b`, at most `limit` of them. Each nonzero `b_ij > 0` fixes the
/// `E_i x E_j` block to a non-negative table with column sums `b_ij` and row sums
/// `-b_ji`; its transpose, negated, fills `E_j x E_i`. Order is lexicographic in the
/// block fillings, edges taken by increasing `(i, j)`.
pub fn static_unfoldings(b: &ExchangeMatrix, sizes: &[usize], limit: usize) -> Result<Vec<UnfoldingSpec>> {
    let partition = consecutive_partition(sizes);
    let m: usize = sizes.iter().sum();
    // validates sizes against b before enumerating
    UnfoldingSpec::new(b.clone(), partition.clone(), ExchangeMatrix::zero(m))?;
    let n = b.rank();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if b.get(i, j) > 0 {
                let t = tables(sizes[i], sizes[j], -b.get(j, i), b.get(i, j));
                edges.push((i, j, t));
            }
        }
    }
    let mut out = Vec::new();
    let mut choice = vec![0usize; edges.len()];
    if edges.iter().any(|e| e.2.is_empty()) {
        return Ok(out);
    }
    loop {
        let mut rows = vec![vec![0i64; m]; m];
        for (e, &(i, j, ref t)) in edges.iter().enumerate() {
            let t = &t[choice[e]];
            for (a, &p) in partition[i].iter().enumerate() {
                for (bq, &q) in partition[j].iter().enumerate() {
                    rows[p][q] = t[a * sizes[j] + bq];
                    rows[q][p] = -t[a * sizes[j] + bq];
                }
            }
        }
        out.push(UnfoldingSpec::new(b.clone(), partition.clone(), ExchangeMatrix::new(rows)?)?);
        if out.len() >= limit {
            return Ok(out);
        }
        // odometer, last edge fastest
        let mut e = edges.len();
        loop {
            if e == 0 {
                return Ok(out);
            }
            e -= 1;
            choice[e] += 1;
            if choice[e] < edges[e].2.len() {
                break;
            }
            choice[e] = 0;
        }
    }
}

/// A frozen unfolding: `folded` (catalog representative) unfolds to a matrix whose
/// diagram lies in the mutation class of `unfolded`.
#[derive(Clone, Debug)]
pub struct UnfoldingPair {
    pub id: &'static str,
    pub folded: FamilySpec,
    pub unfolded: FamilySpec,
    pub text: &'static str,
}

impl UnfoldingPair {
    pub fn spec(&self) -> Result<UnfoldingSpec> {
        UnfoldingSpec::parse(self.text)
    }
}

macro_rules! pair {
    ($id:literal, $f:ident $fp:expr, $u:ident $up:expr) => {
        UnfoldingPair {
            id: $id,
            folded: FamilySpec::new(Family::$f, &$fp),
            unfolded: FamilySpec::new(Family::$u, &$up),
            text: include_str!(concat!("../data/unfoldings/", $id, ".unf")),
        }
    };
}

/// The affine pairs used for linear growth and the elliptic pairs used for exponential
/// growth. The matrices were found by [`static_unfoldings`]; the data files say which
/// solution each one is.
pub fn unfolding_catalog() -> Vec<UnfoldingPair> {
    vec![
        pair!("bt3-dt4", BTilde [3], DTilde [4]),
        pair!("ct2-dt4", CTilde [2], DTilde [4]),
        pair!("f4t-e6t", F4Tilde [], E6Tilde []),
        pair!("f4t2-e7t", F4Tilde [2], E7Tilde []),
        pair!("g2t-dt4", G2Tilde [], DTilde [4]),
        pair!("g2t2-e6t", G2Tilde [2], E6Tilde []),
        pair!("g2sp31-e6-11", G2StarPlus [31], E6Elliptic []),
        pair!("g2sp13-e6-11", G2StarPlus [13], E6Elliptic []),
        pair!("g2ss11-e8-11", G2StarStar [11], E8Elliptic []),
        pair!("f4sp1-e7-11", F4StarPlus [1], E7Elliptic []),
        pair!("f4sp2-e7-11", F4StarPlus [2], E7Elliptic []),
    ]
}

pub fn unfolding_pair(id: &str) -> Option<UnfoldingPair> {
    unfolding_catalog().into_iter().find(|p| p.id == id)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::make_family;

    fn with_entry(spec: &UnfoldingSpec, p: usize, q: usize, x: i64) -> UnfoldingSpec {
        let mut rows = spec.c.rows();
        rows[p][q] = x;
        rows[q][p] = -x;
        UnfoldingSpec { c: ExchangeMatrix::new(rows).unwrap(), ..spec.clone() }
    }

    #[test]
    fn trivial_unfolding_is_plain_mutation() {
        let b = make_family(&FamilySpec::new(Family::DTilde, &[4])).unwrap();
        let s = UnfoldingSpec::trivial(b.clone()).unwrap();
        assert!(check_unfolding_static(&s).holds());
        for k in 1..=b.rank() {
            let t = composite_mutate(&s, k).unwrap();
            assert_eq!(t.b, b.mutate(k).unwrap());
            assert_eq!(t.c, t.b);
        }
    }

    #[test]
    fn negated_entry_names_its_block() {
        let s = unfolding_pair("bt3-dt4").unwrap().spec().unwrap();
        // E_3 = {3}, E_4 = {4, 5}, b_34 = 1
        let bad = with_entry(&s, 2, 3, -1);
        let v = check_unfolding_static(&bad).violation.unwrap();
        assert_eq!((v.i, v.j, v.condition, v.column), (3, 4, 2, 4));
    }

    #[test]
    fn nonzero_diagonal_block_breaks_commutativity() {
        let s = unfolding_pair("bt3-dt4").unwrap().spec().unwrap();
        let bad = with_entry(&s, 3, 4, 1);
        assert!(!check_unfolding_static(&bad).holds());
        assert!(matches!(composite_mutate(&bad, 4), Err(Error::Unfolding(_))));
    }

    #[test]
    fn text_round_trip() {
        for p in unfolding_catalog() {
            let s = p.spec().unwrap();
            assert_eq!(UnfoldingSpec::parse(&s.to_text()).unwrap(), s, "{}", p.id);
        }
    }

    #[test]
    fn malformed_partitions() {
        let b = make_family(&FamilySpec::new(Family::BTilde, &[3])).unwrap();
        let c = unfolding_pair("bt3-dt4").unwrap().spec().unwrap().c;
        let overlap = vec![vec![0], vec![1], vec![2], vec![2, 3]];
        assert!(UnfoldingSpec::new(b.clone(), overlap, c.clone()).is_err());
        let wrong_sizes = vec![vec![0, 1], vec![2], vec![3], vec![4]];
        assert!(UnfoldingSpec::new(b.clone(), wrong_sizes, c.clone()).is_err());
        let missing = vec![vec![0], vec![1], vec![2], vec![3]];
        assert!(UnfoldingSpec::new(b, missing, c).is_err());
    }

    #[test]
    fn contingency_tables() {
        // 2x2 with margins 1: the two permutation matrices
        assert_eq!(tables(2, 2, 1, 1), vec![vec![0, 1, 1, 0], vec![1, 0, 0, 1]]);
        // 1x3 row summing to 3, columns summing to 1
        assert_eq!(tables(1, 3, 3, 1), vec![vec![1, 1, 1]]);
        // 3x3 with margins 1: 3! permutations
        assert_eq!(tables(3, 3, 1, 1).len(), 6);
        // 2x3, columns sum to 2, rows to 3
        assert!(tables(2, 3, 3, 2).iter().all(|t| t[..3].iter().sum::<i64>() == 3));
    }
}
