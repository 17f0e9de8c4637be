mod common;

use cluster_growth::catalog::Family;
use cluster_growth::seed::determinant;
use cluster_growth::*;
use common::family;

fn m(rows: &[&[i64]]) -> ExchangeMatrix {
    ExchangeMatrix::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
}

fn w(s: &str) -> MutationWord {
    MutationWord::parse(s).unwrap()
}

#[test]
fn symmetrizers() {
    assert_eq!(is_skew_symmetrizable(&[vec![0, 1], vec![-1, 0]]), Some(Symmetrizer(vec![1, 1])));
    assert_eq!(is_skew_symmetrizable(&[vec![0, 2], vec![-1, 0]]), Some(Symmetrizer(vec![2, 1])));
    assert_eq!(is_skew_symmetrizable(&[vec![0, 1], vec![1, 0]]), None);
    // sign-skew but the cycle products disagree
    assert_eq!(is_skew_symmetrizable(&[vec![0, 1, -1], vec![-2, 0, 1], vec![1, -1, 0]]), None);
    assert!(ExchangeMatrix::new(vec![vec![0, 1], vec![1, 0]]).is_err());
    assert!(ExchangeMatrix::new(vec![vec![0, 1, 0], vec![-1, 0]]).is_err());
}

#[test]
fn symmetrizer_of_each_component_is_primitive() {
    let b = m(&[&[0, 2, 0, 0], &[-1, 0, 0, 0], &[0, 0, 0, 3], &[0, 0, -3, 0]]);
    assert_eq!(b.symmetrizer(), Symmetrizer(vec![2, 1, 1, 1]));
}

#[test]
fn markov_flips_sign() {
    let markov = family(Family::Markov, &[]);
    assert_eq!(markov.mutate(1).unwrap(), markov.negate());
    assert_eq!(apply_word(&Seed::initial(markov.clone()), &w("1,2")).unwrap().b, markov);
    assert!(is_mutationally_trivial(&markov, &w("1,2")).unwrap());
    assert!(is_mutationally_trivial(&markov, &w("1,3")).unwrap());
    assert!(is_mutationally_trivial(&markov, &w("2,3")).unwrap());
}

#[test]
fn rank_two_mutation_flips_signs() {
    let a2 = m(&[&[0, 1], &[-1, 0]]);
    assert_eq!(mutate_matrix(&a2, 1).unwrap(), m(&[&[0, -1], &[1, 0]]));
    assert!(a2.mutate(0).is_err());
    assert!(a2.mutate(3).is_err());
}

#[test]
fn a2_seed_orbit() {
    let a2 = m(&[&[0, 1], &[-1, 0]]);
    let s = mutate_seed(&Seed::initial(a2.clone()), 1).unwrap();
    assert_eq!(s.c_rows(), vec![vec![-1, 1], vec![0, 1]]);
    let back = s.mutate(1).unwrap();
    assert_eq!((back.b.clone(), back.c_rows()), (a2.clone(), vec![vec![1, 0], vec![0, 1]]));

    let mut s = Seed::initial(a2.clone());
    for &k in w("1,2^5").letters() {
        s = s.mutate(k).unwrap();
    }
    assert_eq!(s.b, a2);
    assert!(s.c_is_identity());
    // no shorter power of (12) closes up
    for r in 1..5 {
        assert!(!is_trivial_word(&a2, &w("1,2").pow(r)).unwrap());
    }
    assert!(is_trivial_word(&a2, &w("1,2").pow(5)).unwrap());
    assert!(is_trivial_word(&a2, &MutationWord::empty()).unwrap());
    assert!(is_mutationally_trivial(&a2, &w("1,2")).unwrap());
    assert!(!is_mutationally_trivial(&a2, &w("1")).unwrap());
}

#[test]
fn empty_word_keeps_seed() {
    let s = Seed::initial(family(Family::E6, &[]));
    let t = apply_word(&s, &MutationWord::empty()).unwrap();
    assert_eq!((t.b.clone(), t.c_rows()), (s.b.clone(), s.c_rows()));
}

#[test]
fn x6_generators_fix_the_matrix() {
    let x6 = family(Family::X6, &[]);
    assert!(is_mutationally_trivial(&x6, &w("3,2,1^10")).unwrap());
    assert!(is_mutationally_trivial(&x6, &w("3,5,4,2,6^4")).unwrap());
}

#[test]
fn word_parsing() {
    assert_eq!(w("[3,2,1]^2").letters(), &[3, 2, 1, 3, 2, 1]);
    assert_eq!(w("()").len(), 0);
    assert!(MutationWord::parse("1,1").is_err());
    assert!(MutationWord::parse("0,1").is_err());
    assert_eq!(MutationWord::parse_reduced("1,2,2,1,3").unwrap().letters(), &[3]);
    assert_eq!(w("1,2,3").inverse().letters(), &[3, 2, 1]);
}

#[test]
fn enhanced_words() {
    let id2 = Permutation::identity(2);
    let swap = Permutation::transposition(2, 1, 2);
    let e = EnhancedWord::new(w("1,2"), id2.clone());
    assert_eq!(compose_enhanced(&e, &EnhancedWord::identity(2)).unwrap(), e);

    let e1 = EnhancedWord::new(w("1"), swap.clone());
    let e2 = EnhancedWord::new(w("1"), id2);
    let c = compose_enhanced(&e1, &e2).unwrap();
    assert_eq!(c, EnhancedWord::new(w("1,2"), swap.clone()));

    let g = EnhancedWord::new(w("1,2,1"), swap);
    assert!(compose_enhanced(&g, &g.inverse()).unwrap().is_identity());
    assert!(compose_enhanced(&g.inverse(), &g).unwrap().is_identity());
}

#[test]
fn c_matrices_stay_unimodular_on_a_long_walk() {
    let b = family(Family::E7Elliptic, &[]);
    let mut s = Seed::initial(b.clone());
    for step in 0..200 {
        let k = (step * 7 + step / 3) % b.rank() + 1;
        s = s.mutate(k).unwrap();
        s.check_sign_coherence().unwrap();
        assert_eq!(s.c_determinant().abs(), 1);
        assert_eq!(determinant(&s.c_rows()).abs(), 1);
    }
}

#[test]
fn matrix_text_round_trip() {
    let b = family(Family::F4StarPlus, &[1]);
    assert_eq!(ExchangeMatrix::parse(&b.to_text()).unwrap(), b);
    assert!(ExchangeMatrix::parse("2\n0 1\n1 0\n").is_err());
    assert!(matches!(ExchangeMatrix::parse("2\n0 1\n"), Err(Error::Parse { .. })));
    assert!(matches!(ExchangeMatrix::parse("2\n0 x\n-1 0\n"), Err(Error::Parse { .. })));
    assert_eq!(ExchangeMatrix::parse("# a2\n2\n0 1 # arrow\n-1 0\n").unwrap(), m(&[&[0, 1], &[-1, 0]]));
}

#[test]
fn overflow_is_reported() {
    let b = m(&[&[0, 1 << 40, 0], &[-(1 << 40), 0, 1 << 40], &[0, -(1 << 40), 0]]);
    let mut cur = b;
    let mut res = Ok(());
    for k in [2, 1, 3, 2, 1, 3] {
        match cur.mutate(k) {
            Ok(x) => cur = x,
            Err(e) => {
                res = Err(e);
                break;
            }
        }
    }
    assert_eq!(res, Err(Error::Overflow));
}
