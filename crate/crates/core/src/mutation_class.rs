//! Mutation classes of diagrams and the mutation-finiteness decision.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::diagram::{CanonicalKey, Diagram};
use crate::error::Result;
use crate::word::MutationWord;

pub const DEFAULT_MAX_NODES: usize = 1_000_000;

/// One class member: a diagram reached from the input by `word`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassMember {
    pub key: CanonicalKey,
    pub diagram: Diagram,
    pub word: MutationWord,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ClassResult {
    /// The full class, closed under single mutations, in BFS discovery order.
    Finite { members: Vec<ClassMember> },
    /// `witness` applied to the input produces an edge of weight `weight > 4`.
    InfiniteDetected { witness: MutationWord, weight: u64 },
    LimitExceeded { visited: usize },
}

impl ClassResult {
    pub fn size(&self) -> Option<usize> {
        match self {
            ClassResult::Finite { members } => Some(members.len()),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Finiteness {
    Finite,
    Infinite,
    Unknown { visited: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClassOptions {
    pub max_nodes: usize,
    /// Deduplicate labeled diagrams instead of isomorphism classes.
    pub labeled: bool,
}

impl Default for ClassOptions {
    fn default() -> Self {
        Self { max_nodes: DEFAULT_MAX_NODES, labeled: false }
    }
}

pub fn enumerate_class(d: &Diagram, max_nodes: usize) -> Result<ClassResult> {
    enumerate_class_with(d, ClassOptions { max_nodes, labeled: false })
}

/// Breadth-first search over the class, directions `1..n` in order from each node.
/// For order at least 3 an edge heavier than 4 stops the search with a witness.
pub fn enumerate_class_with(d: &Diagram, opts: ClassOptions) -> Result<ClassResult> {
    let n = d.order();
    let heavy_stop = n >= 3;
    let key_of = |x: &Diagram| -> CanonicalKey {
        if opts.labeled {
            let mut bytes = Vec::with_capacity(x.order() * x.order());
            for (i, j, w) in x.edges() {
                crate::canon::push_varint(&mut bytes, i as u64);
                crate::canon::push_varint(&mut bytes, j as u64);
                crate::canon::push_varint(&mut bytes, w);
            }
            CanonicalKey(bytes)
        } else {
            x.canonical_form()
        }
    };

    // node table: diagram, parent index, letter leading here
    let mut nodes: Vec<(Diagram, usize, usize)> = vec![(d.clone(), usize::MAX, 0)];
    let mut keys: Vec<CanonicalKey> = vec![key_of(d)];
    let mut index: HashMap<CanonicalKey, usize> = HashMap::new();
    index.insert(keys[0].clone(), 0);

    let word_to = |nodes: &[(Diagram, usize, usize)], mut at: usize| -> MutationWord {
        let mut letters = Vec::new();
        while nodes[at].1 != usize::MAX {
            letters.push(nodes[at].2);
            at = nodes[at].1;
        }
        letters.reverse();
        MutationWord::reduced(&letters)
    };

    if heavy_stop && d.max_weight() > 4 {
        return Ok(ClassResult::InfiniteDetected { witness: MutationWord::empty(), weight: d.max_weight() });
    }
    let mut head = 0;
    while head < nodes.len() {
        for k in 1..=n {
            if nodes[head].1 != usize::MAX && nodes[head].2 == k {
                continue;
            }
            let next = nodes[head].0.mutate(k)?;
            if heavy_stop && next.max_weight() > 4 {
                let mut witness = word_to(&nodes, head);
                witness = witness.concat(&MutationWord::reduced(&[k]));
                return Ok(ClassResult::InfiniteDetected { witness, weight: next.max_weight() });
            }
            let key = key_of(&next);
            if index.contains_key(&key) {
                continue;
            }
            if nodes.len() >= opts.max_nodes {
                return Ok(ClassResult::LimitExceeded { visited: nodes.len() });
            }
            index.insert(key.clone(), nodes.len());
            keys.push(key);
            nodes.push((next, head, k));
        }
        head += 1;
    }
    let members = (0..nodes.len())
        .map(|i| ClassMember { key: keys[i].clone(), diagram: nodes[i].0.clone(), word: word_to(&nodes, i) })
        .collect();
    Ok(ClassResult::Finite { members })
}

/// Order at most 2 is always finite; otherwise the class search decides.
pub fn is_mutation_finite(d: &Diagram) -> Result<Finiteness> {
    is_mutation_finite_with(d, DEFAULT_MAX_NODES)
}

pub fn is_mutation_finite_with(d: &Diagram, max_nodes: usize) -> Result<Finiteness> {
    if d.order() <= 2 {
        return Ok(Finiteness::Finite);
    }
    Ok(match enumerate_class(d, max_nodes)? {
        ClassResult::Finite { .. } => Finiteness::Finite,
        ClassResult::InfiniteDetected { .. } => Finiteness::Infinite,
        ClassResult::LimitExceeded { visited } => Finiteness::Unknown { visited },
    })
}
