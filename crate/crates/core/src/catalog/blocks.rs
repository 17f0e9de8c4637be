//! Building blocks of s-decomposable diagrams and gluing along outlets.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::diagram::Diagram;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BlockKind {
    I,
    II,
    IIIa,
    IIIb,
    IV,
    V,
    IIIaTilde,
    IIIbTilde,
    IVTilde,
    V1Tilde,
    V2Tilde,
    V12Tilde,
    VITilde,
}

impl BlockKind {
    pub fn all() -> [BlockKind; 13] {
        use BlockKind::*;
        [I, II, IIIa, IIIb, IV, V, IIIaTilde, IIIbTilde, IVTilde, V1Tilde, V2Tilde, V12Tilde, VITilde]
    }
}

/// A block diagram whose outlet vertices may be identified with outlets of other blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub kind: BlockKind,
    pub diagram: Diagram,
    /// `outlets[v]` for 0-based vertex `v`.
    pub outlets: Vec<bool>,
}

/// Vertex `vertex` (1-based) of block number `block` (0-based) in a gluing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Outlet {
    pub block: usize,
    pub vertex: usize,
}

impl Outlet {
    pub fn new(block: usize, vertex: usize) -> Self {
        Self { block, vertex }
    }
}

impl Block {
    pub fn new(kind: BlockKind) -> Self {
        use BlockKind::*;
        // (order, outlet vertices, edges i -> j of weight w), all 1-based
        let (n, outs, edges): (usize, &[usize], &[(usize, usize, u64)]) = match kind {
            I => (2, &[1, 2], &[(1, 2, 1)]),
            II => (3, &[1, 2, 3], &[(1, 2, 1), (2, 3, 1), (3, 1, 1)]),
            IIIa => (3, &[1], &[(1, 2, 1), (1, 3, 1)]),
            IIIb => (3, &[1], &[(2, 1, 1), (3, 1, 1)]),
            // outlets 1, 2; two oriented triangles 1 -> x -> 2 -> 1
            IV => (4, &[1, 2], &[(1, 3, 1), (3, 2, 1), (1, 4, 1), (4, 2, 1), (2, 1, 1)]),
            // outlet 1 -> {2,3} -> {4,5} -> 1
            V => (
                5,
                &[1],
                &[(1, 2, 1), (1, 3, 1), (2, 4, 1), (2, 5, 1), (3, 4, 1), (3, 5, 1), (4, 1, 1), (5, 1, 1)],
            ),
            IIIaTilde => (2, &[1], &[(1, 2, 2)]),
            IIIbTilde => (2, &[1], &[(2, 1, 2)]),
            IVTilde => (3, &[1, 2], &[(1, 3, 2), (3, 2, 2), (2, 1, 1)]),
            // block V with the pair 2,3 folded into one vertex
            V1Tilde => (4, &[1], &[(1, 2, 2), (2, 3, 2), (2, 4, 2), (3, 1, 1), (4, 1, 1)]),
            // block V with the pair 4,5 folded into one vertex
            V2Tilde => (4, &[1], &[(1, 2, 1), (1, 3, 1), (2, 4, 2), (3, 4, 2), (4, 1, 2)]),
            // both pairs folded; the two kinds differ only in the symmetrizer
            V12Tilde | VITilde => (3, &[1], &[(1, 2, 2), (2, 3, 4), (3, 1, 2)]),
        };
        let diagram = Diagram::from_edges(n, edges).expect("block edges are valid");
        let mut outlets = vec![false; n];
        for &o in outs {
            outlets[o - 1] = true;
        }
        Self { kind, diagram, outlets }
    }

    pub fn order(&self) -> usize {
        self.outlets.len()
    }

    /// 1-based outlet labels.
    pub fn outlet_vertices(&self) -> Vec<usize> {
        (0..self.order()).filter(|&v| self.outlets[v]).map(|v| v + 1).collect()
    }
}

/// Identifies each matched pair of outlets. Edges that land on the same pair of glued
/// vertices combine as signed simple arrows: equal directions give weight 4, opposite
/// directions cancel. Glued vertices take the position of their first occurrence.
pub fn glue_blocks(blocks: &[Block], matching: &[(Outlet, Outlet)]) -> Result<Diagram> {
    let mut partner: HashMap<Outlet, Outlet> = HashMap::new();
    for &(x, y) in matching {
        for o in [x, y] {
            let b = blocks.get(o.block).ok_or_else(|| Error::Gluing(format!("no block {}", o.block)))?;
            if o.vertex == 0 || o.vertex > b.order() || !b.outlets[o.vertex - 1] {
                return Err(Error::Gluing(format!("vertex {} of block {} is not an outlet", o.vertex, o.block)));
            }
        }
        if x.block == y.block {
            return Err(Error::Gluing(format!("outlets of block {} matched with each other", x.block)));
        }
        if partner.insert(x, y).is_some() || partner.insert(y, x).is_some() {
            return Err(Error::Gluing("outlet matched twice".to_string()));
        }
    }

    let mut index: HashMap<Outlet, usize> = HashMap::new();
    let mut n = 0;
    for (bi, b) in blocks.iter().enumerate() {
        for v in 1..=b.order() {
            let o = Outlet::new(bi, v);
            if let Some(p) = partner.get(&o) {
                if let Some(&id) = index.get(p) {
                    index.insert(o, id);
                    continue;
                }
            }
            index.insert(o, n);
            n += 1;
        }
    }

    // signed multiplicity of simple arrows between glued vertices; heavier edges are
    // never shared, since every outlet-outlet edge of a block is simple
    let mut simple: HashMap<(usize, usize), i64> = HashMap::new();
    let mut heavy: HashMap<(usize, usize), (usize, usize, u64)> = HashMap::new();
    for (bi, b) in blocks.iter().enumerate() {
        for (i, j, w) in b.diagram.edges() {
            let (u, v) = (index[&Outlet::new(bi, i)], index[&Outlet::new(bi, j)]);
            let key = (u.min(v), u.max(v));
            if heavy.contains_key(&key) || (w > 1 && simple.contains_key(&key)) {
                return Err(Error::Gluing("a weighted edge would be doubled".to_string()));
            }
            if w > 1 {
                heavy.insert(key, (u + 1, v + 1, w));
            } else {
                *simple.entry(key).or_insert(0) += if u < v { 1 } else { -1 };
            }
        }
    }
    let mut edges: Vec<(usize, usize, u64)> = heavy.into_values().collect();
    for (&(u, v), &m) in &simple {
        if m > 0 {
            edges.push((u + 1, v + 1, (m * m) as u64));
        } else if m < 0 {
            edges.push((v + 1, u + 1, (m * m) as u64));
        }
    }
    edges.sort_unstable();
    Diagram::from_edges(n, &edges)
}
