//! Independent oracles shared by the integration tests. None of them use the
//! library's canonical forms or vertex keys.
#![allow(dead_code)]

use std::collections::{HashSet, VecDeque};

use cluster_growth::catalog::{make_family, standard_entries, Family, FamilySpec};
use cluster_growth::tropical::{g_step_with, gvec, GConvention};
use cluster_growth::{diagram_of_matrix, Diagram, ExchangeMatrix, Seed, SymbolicSeed};
use num_integer::Integer;
use proptest::prelude::*;

pub fn family(f: Family, params: &[u32]) -> ExchangeMatrix {
    make_family(&FamilySpec::new(f, params)).unwrap()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                go(cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Lexicographically least weight table over all relabelings.
pub fn brute_canonical(d: &Diagram, perms: &[Vec<usize>]) -> Vec<u64> {
    let n = d.order();
    perms
        .iter()
        .map(|p| {
            let mut t = vec![0u64; n * n];
            for i in 0..n {
                for j in 0..n {
                    t[p[i] * n + p[j]] = d.weight(i, j);
                }
            }
            t
        })
        .min()
        .unwrap()
}

/// Mutation class size by BFS over labeled diagrams, then quotient by brute-force
/// isomorphism. Only for small orders.
pub fn labeled_class_size(d: &Diagram) -> usize {
    let n = d.order();
    let mut seen: HashSet<Diagram> = HashSet::from([d.clone()]);
    let mut queue = VecDeque::from([d.clone()]);
    while let Some(x) = queue.pop_front() {
        for k in 1..=n {
            let y = x.mutate(k).unwrap();
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    let perms = permutations(n);
    seen.iter().map(|x| brute_canonical(x, &perms)).collect::<HashSet<_>>().len()
}

/// Exchange-graph vertices = unordered clusters of Laurent polynomials, by BFS from the
/// initial seed with principal coefficients. Stops at `max` clusters.
pub fn symbolic_cluster_count(b: &ExchangeMatrix, max: usize) -> usize {
    let n = b.rank();
    let key = |s: &SymbolicSeed| {
        let mut v: Vec<String> = s.cluster.iter().map(|x| format!("{x:?}")).collect();
        v.sort();
        v
    };
    let init = SymbolicSeed::initial(b.clone());
    let mut seen = HashSet::from([key(&init)]);
    let mut queue = VecDeque::from([init]);
    while let Some(s) = queue.pop_front() {
        for k in 1..=n {
            let t = s.mutate(k).unwrap();
            if seen.insert(key(&t)) {
                if seen.len() >= max {
                    return seen.len();
                }
                queue.push_back(t);
            }
        }
    }
    seen.len()
}

/// `B diag(d)` skew-symmetric for the given `d`.
pub fn symmetrized_by(b: &ExchangeMatrix, d: &[i64]) -> bool {
    let n = b.rank();
    (0..n).all(|i| (0..n).all(|j| b.get(i, j) * d[j] == -b.get(j, i) * d[i]))
}

/// Ball sizes `counts[r]` for `r <= radius`, with vertices identified by their unordered
/// clusters of Laurent polynomials.
pub fn symbolic_ball_counts(b: &ExchangeMatrix, radius: usize) -> Vec<usize> {
    let n = b.rank();
    let key = |s: &SymbolicSeed| {
        let mut v: Vec<String> = s.cluster.iter().map(|x| format!("{x:?}")).collect();
        v.sort();
        v
    };
    let init = SymbolicSeed::initial(b.clone());
    let mut seen = HashSet::from([key(&init)]);
    let mut frontier = vec![init];
    let mut counts = vec![1];
    for _ in 0..radius {
        let mut next = Vec::new();
        for s in &frontier {
            for k in 1..=n {
                let t = s.mutate(k).unwrap();
                if seen.insert(key(&t)) {
                    next.push(t);
                }
            }
        }
        counts.push(seen.len());
        frontier = next;
    }
    counts
}

/// A skew-symmetrizable matrix together with a symmetrizer it was built from.
#[derive(Clone, Debug)]
pub struct Sample {
    pub b: ExchangeMatrix,
    pub d: Vec<i64>,
}

/// `b_ij = t d_i / g`, `b_ji = -t d_j / g` with `g = gcd(d_i, d_j)`.
pub fn random_matrix() -> impl Strategy<Value = Sample> {
    (2usize..=8)
        .prop_flat_map(|n| (prop::collection::vec(1i64..=3, n), prop::collection::vec(-2i64..=2, n * (n - 1) / 2)))
        .prop_map(|(d, ts)| {
            let n = d.len();
            let mut rows = vec![vec![0; n]; n];
            let mut it = ts.into_iter();
            for i in 0..n {
                for j in i + 1..n {
                    let t = it.next().unwrap();
                    let g = d[i].gcd(&d[j]);
                    rows[i][j] = t * d[i] / g;
                    rows[j][i] = -t * d[j] / g;
                }
            }
            Sample { b: ExchangeMatrix::new(rows).unwrap(), d }
        })
}

/// A catalog entry of rank at most 8 under a random relabeling.
pub fn relabeled_catalog() -> impl Strategy<Value = Sample> {
    let entries: Vec<ExchangeMatrix> =
        standard_entries().iter().map(|s| make_family(s).unwrap()).filter(|b| b.rank() <= 8).collect();
    prop::sample::select(entries)
        .prop_flat_map(|b| {
            let n = b.rank();
            (Just(b), Just((0..n).collect::<Vec<usize>>()).prop_shuffle())
        })
        .prop_map(|(b, perm)| {
            let b = b.relabel(&perm);
            let d = b.symmetrizer().0;
            Sample { b, d }
        })
}

pub fn matrix() -> impl Strategy<Value = Sample> {
    prop_oneof![random_matrix(), relabeled_catalog()]
}

pub fn with_word() -> impl Strategy<Value = (Sample, Vec<usize>)> {
    matrix().prop_flat_map(|s| {
        let n = s.b.rank();
        (Just(s), prop::collection::vec(1..=n, 0..=50))
    })
}

/// Mutation invariants along `word`: involution, symmetrizer, diagram/matrix
/// commutation, sign-coherence and unimodularity of C. Stops at the first overflow and
/// returns the number of steps checked.
pub fn check_path(s: &Sample, word: &[usize]) -> Result<usize, String> {
    let primitive = s.b.symmetrizer();
    let mut seed = Seed::initial(s.b.clone());
    let mut diagram = diagram_of_matrix(&s.b).map_err(|e| e.to_string())?;
    let mut steps = 0;
    for &k in word {
        let (Ok(next), Ok(back)) = (seed.mutate(k), seed.mutate(k).and_then(|x| x.mutate(k))) else { break };
        let (Ok(dk), Ok(dnext)) = (diagram.mutate(k), diagram_of_matrix(&next.b)) else { break };
        let fail = |what: &str| Err(format!("{what} fails at step {steps} of {word:?} on\n{}", s.b.to_text()));
        if (&back.b, back.c_rows()) != (&seed.b, seed.c_rows()) {
            return fail("involution");
        }
        if !symmetrized_by(&next.b, &s.d) || next.b.symmetrizer() != primitive {
            return fail("symmetrizer");
        }
        if dk != dnext {
            return fail("diagram commutation");
        }
        if next.check_sign_coherence().is_err() {
            return fail("sign-coherence");
        }
        if next.c_determinant().abs() != 1 {
            return fail("det C");
        }
        diagram = dk;
        seed = next;
        steps += 1;
    }
    Ok(steps)
}

pub fn seed_after(b: &ExchangeMatrix, word: &[usize]) -> SymbolicSeed {
    let mut s = SymbolicSeed::initial(b.clone());
    for &k in word {
        s = s.mutate(k).unwrap();
    }
    s
}

/// For every cluster variable reached by a word of length <= `len` from the seed of `b`,
/// compares `g_step` against the g-vector computed from the neighbouring seed `mu_k`.
/// Returns the number of disagreements.
pub fn convention_disagreements(b: &ExchangeMatrix, len: usize, conv: GConvention) -> usize {
    let n = b.rank();
    let mut words: Vec<Vec<usize>> = vec![vec![]];
    let mut frontier = words.clone();
    for _ in 0..len {
        let mut next = Vec::new();
        for word in &frontier {
            for k in 1..=n {
                if word.last() != Some(&k) {
                    let mut v = word.clone();
                    v.push(k);
                    next.push(v);
                }
            }
        }
        words.extend(next.iter().cloned());
        frontier = next;
    }
    let mut bad = 0;
    for word in &words {
        let s0 = seed_after(b, word);
        for k in 1..=n {
            let b1 = b.mutate(k).unwrap();
            let mut via = vec![k];
            via.extend(word);
            let s1 = seed_after(&b1, &via);
            for j in 0..n {
                let (Some(g0), Some(g1)) = (s0.g_vector(j), s1.g_vector(j)) else { panic!("g-vector of a cluster variable") };
                let stepped = g_step_with(b, k, &gvec(&g0), conv).unwrap();
                if stepped != gvec(&g1) {
                    bad += 1;
                }
            }
        }
    }
    bad
}
