//! Exact canonical labeling of small weighted digraphs by colour refinement plus
//! individualization search; the lexicographically smallest leaf encoding wins.

use crate::diagram::{CanonicalKey, Diagram};

/// Returns the canonical key and the relabeling `vertex -> canonical position`.
pub(crate) fn canonical_key(d: &Diagram) -> (CanonicalKey, Vec<usize>) {
    let n = d.order();
    let mut colors = vec![0u32; n];
    refine(d, &mut colors);
    let mut best: Option<(Vec<u8>, Vec<usize>)> = None;
    search(d, colors, &mut best);
    let (bytes, perm) = best.unwrap_or_else(|| (encode(d, &[]), Vec::new()));
    (CanonicalKey(bytes), perm)
}

fn refine(d: &Diagram, colors: &mut [u32]) {
    let n = d.order();
    let mut ncolors = count_distinct(colors);
    loop {
        let mut sigs: Vec<(u32, Vec<(u32, u64, u64)>, usize)> = (0..n)
            .map(|v| {
                let mut nb: Vec<(u32, u64, u64)> = (0..n)
                    .filter(|&u| u != v && (d.weight(v, u) > 0 || d.weight(u, v) > 0))
                    .map(|u| (colors[u], d.weight(v, u), d.weight(u, v)))
                    .collect();
                nb.sort_unstable();
                (colors[v], nb, v)
            })
            .collect();
        sigs.sort_unstable();
        let mut next = 0u32;
        for idx in 0..n {
            if idx > 0 && (sigs[idx].0 != sigs[idx - 1].0 || sigs[idx].1 != sigs[idx - 1].1) {
                next += 1;
            }
            colors[sigs[idx].2] = next;
        }
        let now = if n == 0 { 0 } else { next as usize + 1 };
        if now == ncolors {
            return;
        }
        ncolors = now;
    }
}

fn count_distinct(colors: &[u32]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

fn search(d: &Diagram, colors: Vec<u32>, best: &mut Option<(Vec<u8>, Vec<usize>)>) {
    let n = d.order();
    let mut sizes = vec![0usize; n.max(1)];
    for &c in &colors {
        sizes[c as usize] += 1;
    }
    let target = (0..n).find(|&c| sizes[c] > 1);
    let Some(target) = target else {
        let perm: Vec<usize> = colors.iter().map(|&c| c as usize).collect();
        let enc = encode(d, &perm);
        if best.as_ref().is_none_or(|(b, _)| enc < *b) {
            *best = Some((enc, perm));
        }
        return;
    };
    for v in 0..n {
        if colors[v] as usize != target {
            continue;
        }
        let mut c = colors.clone();
        for (u, cu) in c.iter_mut().enumerate() {
            if *cu as usize > target || (*cu as usize == target && u != v) {
                *cu += 1;
            }
        }
        refine(d, &mut c);
        search(d, c, best);
    }
}

/// Varint encoding of the adjacency weights listed in canonical-position order.
fn encode(d: &Diagram, perm: &[usize]) -> Vec<u8> {
    let n = d.order();
    let mut inv = vec![0; n];
    for (v, &p) in perm.iter().enumerate() {
        inv[p] = v;
    }
    let mut out = Vec::with_capacity(n * n + 2);
    push_varint(&mut out, n as u64);
    for i in 0..n {
        for j in 0..n {
            push_varint(&mut out, d.weight(inv[i], inv[j]));
        }
    }
    out
}

pub(crate) fn push_varint(out: &mut Vec<u8>, mut x: u64) {
    loop {
        let byte = (x & 0x7f) as u8;
        x >>= 7;
        if x == 0 {
            out.push(byte);
            return;
        }
        out.push(byte | 0x80);
    }
}
