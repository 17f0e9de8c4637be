mod common;

use cluster_growth::catalog::{glue_blocks, make_diagram, standard_entries, Block, BlockKind, Family, FamilySpec, Outlet};
use cluster_growth::mutation_class::{enumerate_class_with, is_mutation_finite_with, ClassOptions};
use cluster_growth::*;
use common::{family, labeled_class_size};

fn dg(n: usize, edges: &[(usize, usize, u64)]) -> Diagram {
    Diagram::from_edges(n, edges).unwrap()
}

fn m(rows: &[&[i64]]) -> ExchangeMatrix {
    ExchangeMatrix::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
}

#[test]
fn weights_from_matrices() {
    assert_eq!(diagram_of_matrix(&m(&[&[0, 2], &[-1, 0]])).unwrap().edges(), vec![(1, 2, 2)]);
    assert_eq!(diagram_of_matrix(&m(&[&[0, 1], &[-1, 0]])).unwrap().edges(), vec![(1, 2, 1)]);
    let markov = diagram_of_matrix(&family(Family::Markov, &[])).unwrap();
    assert_eq!(markov.edges(), vec![(1, 2, 4), (2, 3, 4), (3, 1, 4)]);
}

#[test]
fn diagram_mutation_rules() {
    let tri = dg(3, &[(1, 2, 1), (2, 3, 1), (3, 1, 1)]);
    for k in 1..=3 {
        let t = tri.mutate(k).unwrap();
        assert_eq!(t.edges().len(), 2, "vertex {k}");
        assert!(t.edges().iter().all(|e| e.2 == 1));
        assert_eq!(t.mutate(k).unwrap(), tri);
    }
    // i -> k <- j: both arrows turn around, no i-j edge appears
    let sink = dg(3, &[(1, 3, 1), (2, 3, 1)]);
    assert_eq!(sink.mutate(3).unwrap().edges(), vec![(3, 1, 1), (3, 2, 1)]);
    // a path through k gains the shortcut
    let path = dg(3, &[(1, 2, 1), (2, 3, 1)]);
    assert_eq!(path.mutate(2).unwrap().edges(), vec![(1, 3, 1), (2, 1, 1), (3, 2, 1)]);
    assert!(path.mutate(4).is_err());
}

#[test]
fn realizability() {
    assert!(dg(3, &[(1, 2, 4), (2, 3, 9), (3, 1, 1)]).is_realizable());
    assert!(dg(3, &[(1, 2, 2), (2, 3, 2), (3, 1, 1)]).is_realizable());
    assert!(!dg(3, &[(1, 2, 2), (2, 3, 1), (3, 1, 1)]).is_realizable());
    assert!(matrix_of_diagram(&dg(3, &[(1, 2, 2), (2, 3, 1), (3, 1, 1)])).is_err());
}

#[test]
fn representative_matrices() {
    assert_eq!(matrix_of_diagram(&dg(2, &[(1, 2, 2)])).unwrap(), m(&[&[0, 2], &[-1, 0]]));
    assert_eq!(matrix_of_diagram(&dg(2, &[(1, 2, 4)])).unwrap(), m(&[&[0, 2], &[-2, 0]]));
    for spec in standard_entries() {
        let d = make_diagram(&spec).unwrap();
        let b = matrix_of_diagram(&d).unwrap();
        assert_eq!(diagram_of_matrix(&b).unwrap(), d, "{}", spec.label());
    }
}

#[test]
fn canonical_keys() {
    let p = dg(3, &[(1, 2, 1), (2, 3, 1)]);
    assert_eq!(p.canonical_form(), dg(3, &[(3, 2, 1), (2, 1, 1)]).canonical_form());
    assert_ne!(dg(3, &[(1, 2, 1), (3, 2, 1)]).canonical_form(), dg(3, &[(2, 1, 1), (2, 3, 1)]).canonical_form());
    let e8 = make_diagram(&FamilySpec::new(Family::E8Elliptic, &[])).unwrap();
    let perm = [3, 7, 0, 9, 1, 4, 8, 2, 6, 5];
    let (key, labeling) = e8.canonical_labeling();
    assert_eq!(key, e8.relabel(&perm).canonical_form());
    assert_eq!(labeling.len(), 10);
}

#[test]
fn text_format() {
    let d = dg(4, &[(1, 2, 2), (3, 2, 1), (4, 1, 4)]);
    assert_eq!(Diagram::parse(&d.to_text()).unwrap(), d);
    assert!(Diagram::parse("v 2\ne 1 3 1\n").is_err());
    assert!(Diagram::parse("e 1 2 1\n").is_err());
    assert!(Diagram::parse("v 2\nx\n").is_err());
}

#[test]
fn small_classes_match_the_labeled_oracle() {
    let cases = [
        (FamilySpec::new(Family::A, &[3]), 4),
        (FamilySpec::new(Family::A, &[5]), 19),
        (FamilySpec::new(Family::D, &[4]), 6),
        (FamilySpec::new(Family::B, &[3]), 5),
        (FamilySpec::new(Family::CTilde, &[2]), 4),
        (FamilySpec::new(Family::DTilde, &[4]), 10),
        (FamilySpec::new(Family::G2StarPlus, &[31]), 4),
        (FamilySpec::new(Family::X6, &[]), 5),
        (FamilySpec::new(Family::E6, &[]), 67),
    ];
    for (spec, size) in cases {
        let d = make_diagram(&spec).unwrap();
        assert_eq!(enumerate_class(&d, 100_000).unwrap().size(), Some(size), "{}", spec.label());
        assert_eq!(labeled_class_size(&d), size, "oracle, {}", spec.label());
    }
}

#[test]
fn class_members_replay() {
    let d = make_diagram(&FamilySpec::new(Family::E7, &[])).unwrap();
    let ClassResult::Finite { members } = enumerate_class(&d, 100_000).unwrap() else { panic!() };
    for mem in &members {
        let mut x = d.clone();
        for &k in mem.word.letters() {
            x = x.mutate(k).unwrap();
        }
        assert_eq!(x.canonical_form(), mem.key);
        // closed under mutation
        for k in 1..=7 {
            let key = mem.diagram.mutate(k).unwrap().canonical_form();
            assert!(members.iter().any(|o| o.key == key));
        }
    }
}

#[test]
fn labeled_enumeration_is_larger() {
    let d = make_diagram(&FamilySpec::new(Family::A, &[3])).unwrap();
    let labeled = enumerate_class_with(&d, ClassOptions { max_nodes: 1000, labeled: true }).unwrap();
    assert_eq!(labeled.size(), Some(14));
}

#[test]
fn heavy_edges_are_infinite() {
    let tri = dg(3, &[(1, 2, 5), (2, 3, 1), (3, 1, 1)]);
    let ClassResult::InfiniteDetected { witness, weight } = enumerate_class(&tri, 1000).unwrap() else { panic!() };
    assert!(witness.is_empty());
    assert_eq!(weight, 5);
    // weight 9 next to weight 2 in order 4
    let d = dg(4, &[(1, 2, 9), (2, 3, 2), (3, 4, 1)]);
    assert_eq!(is_mutation_finite(&d).unwrap(), Finiteness::Infinite);
    // an acyclic triangle of weights 1, 1, 2 reaches weight 9 after a few mutations
    let d = dg(3, &[(1, 2, 2), (2, 3, 2), (1, 3, 1)]);
    let ClassResult::InfiniteDetected { witness, weight } = enumerate_class(&d, 1000).unwrap() else { panic!() };
    assert!(weight > 4);
    let mut x = d.clone();
    for &k in witness.letters() {
        x = x.mutate(k).unwrap();
    }
    assert_eq!(x.max_weight(), weight);
}

#[test]
fn order_two_is_always_finite() {
    assert_eq!(is_mutation_finite(&dg(2, &[(1, 2, 100)])).unwrap(), Finiteness::Finite);
    assert_eq!(is_mutation_finite_with(&dg(3, &[(1, 2, 1), (2, 3, 1)]), 2).unwrap(), Finiteness::Unknown { visited: 2 });
}

#[test]
fn catalog_entries_are_mutation_finite() {
    for spec in standard_entries() {
        let d = make_diagram(&spec).unwrap();
        assert!(d.is_connected(), "{}", spec.label());
        if d.order() >= 3 {
            assert!(enumerate_class(&d, 1_000_000).unwrap().size().is_some(), "{}", spec.label());
        }
    }
}

#[test]
fn gluing_blocks() {
    let i = Block::new(BlockKind::I);
    // one shared outlet: a path on three vertices
    let a3 = glue_blocks(&[i.clone(), i.clone()], &[(Outlet::new(0, 2), Outlet::new(1, 1))]).unwrap();
    assert_eq!(a3.canonical_form(), make_diagram(&FamilySpec::new(Family::A, &[3])).unwrap().canonical_form());
    // both ends glued with the arrows agreeing: a weight-4 edge
    let same = glue_blocks(
        &[i.clone(), i.clone()],
        &[(Outlet::new(0, 1), Outlet::new(1, 1)), (Outlet::new(0, 2), Outlet::new(1, 2))],
    )
    .unwrap();
    assert_eq!(same.edges(), vec![(1, 2, 4)]);
    // opposite arrows cancel
    let opp = glue_blocks(
        &[i.clone(), i.clone()],
        &[(Outlet::new(0, 1), Outlet::new(1, 2)), (Outlet::new(0, 2), Outlet::new(1, 1))],
    )
    .unwrap();
    assert_eq!(opp.order(), 2);
    assert!(opp.edges().is_empty());
    // non-outlets and self-gluing are rejected
    let iii = Block::new(BlockKind::IIIa);
    assert!(glue_blocks(&[iii.clone(), i.clone()], &[(Outlet::new(0, 2), Outlet::new(1, 1))]).is_err());
    assert!(glue_blocks(std::slice::from_ref(&i), &[(Outlet::new(0, 1), Outlet::new(0, 2))]).is_err());
    assert!(glue_blocks(
        &[i.clone(), i.clone(), i.clone()],
        &[(Outlet::new(0, 1), Outlet::new(1, 1)), (Outlet::new(0, 1), Outlet::new(2, 1))]
    )
    .is_err());
}

#[test]
fn every_block_is_mutation_finite() {
    for kind in BlockKind::all() {
        let b = Block::new(kind);
        assert!(b.diagram.is_realizable(), "{kind:?}");
        if b.order() >= 3 {
            assert!(enumerate_class(&b.diagram, 10_000).unwrap().size().is_some(), "{kind:?}");
        }
    }
}

#[test]
fn glued_triangles_give_a_surface_class() {
    // two type II blocks sharing two outlets: the once-punctured digon's neighbours stay finite
    let ii = Block::new(BlockKind::II);
    let d = glue_blocks(&[ii.clone(), ii], &[(Outlet::new(0, 1), Outlet::new(1, 2))]).unwrap();
    assert_eq!(d.order(), 5);
    assert!(enumerate_class(&d, 100_000).unwrap().size().is_some());
}
