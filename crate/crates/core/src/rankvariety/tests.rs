use proptest::prelude::*;

use super::*;
use crate::homalg::omega_power;
use crate::kmodule::catalog::{line_module, quadric_module};
use crate::kmodule::ElemAbGroupAlg;

fn ideal(ring: &RingRef, s: &str) -> Ideal {
    Ideal::parse(ring, s).unwrap()
}

fn alg(p: u64, r: usize) -> ElemAbGroupAlg<PrimeField> {
    ElemAbGroupAlg::prime(p, r).unwrap()
}

#[test]
fn line_modules_have_line_varieties() {
    for (p, lambdas) in [(2u64, 0..2u32), (3, 0..3)] {
        for lambda in lambdas {
            let m = line_module(p, lambda).unwrap();
            let v = rank_variety_ideal(&m).unwrap();
            let ring = v.ring().clone();
            let expected = ideal(&ring, &format!("a1 + {lambda}*a2"));
            assert!(v.ideal.eq_radical(&expected).unwrap(), "p={p} lambda={lambda}");
            assert_eq!(v.required_rank, RequiredRank::Rank(p as usize - 1));
        }
    }
}

#[test]
fn quadric_module_minors() {
    let v = rank_variety_ideal(&quadric_module().unwrap()).unwrap();
    assert_eq!(v.required_rank, RequiredRank::Rank(2));
    let gens: Vec<String> = v.generators().iter().map(ToString::to_string).collect();
    assert_eq!(gens, vec!["a1*a4 + a2*a3"]);
}

#[test]
fn trivial_module_is_never_free() {
    let v = rank_variety_ideal(&KModule::trivial(&alg(2, 2))).unwrap();
    assert_eq!(v.required_rank, RequiredRank::NeverFree);
    assert!(v.ideal.is_zero());
    assert!(!v.is_origin_only().unwrap());
    assert!(v.contains_point(&[1, 1]).unwrap());
}

#[test]
fn origin_only_examples() {
    let reg = rank_variety_ideal(&KModule::regular(&alg(2, 2))).unwrap();
    assert!(reg.is_origin_only().unwrap());
    let line = rank_variety_ideal(&line_module(2, 1).unwrap()).unwrap();
    assert!(!line.is_origin_only().unwrap());
    let ring = variety_ring(2, 2).unwrap();
    let v = RankVarietyIdeal { ideal: ideal(&ring, "a1, a2"), required_rank: RequiredRank::Combined };
    assert!(v.is_origin_only().unwrap());
}

#[test]
fn point_membership() {
    let v = rank_variety_ideal(&line_module(2, 1).unwrap()).unwrap();
    assert!(v.contains_point(&[1, 1]).unwrap());
    assert!(!v.contains_point(&[1, 0]).unwrap());
    assert!(v.contains_point(&[0, 0]).unwrap());
}

#[test]
fn set_operations() {
    let ring = variety_ring(2, 2).unwrap();
    let wrap = |s: &str| RankVarietyIdeal { ideal: ideal(&ring, s), required_rank: RequiredRank::Combined };
    let (a1, a2) = (wrap("a1"), wrap("a2"));
    assert!(a1.intersect(&a2).unwrap().eq_radical(&wrap("a1, a2")).unwrap());
    assert!(a1.union(&a2).unwrap().eq_radical(&wrap("a1*a2")).unwrap());
    let v0 = rank_variety_ideal(&line_module(2, 0).unwrap()).unwrap();
    let v1 = rank_variety_ideal(&line_module(2, 1).unwrap()).unwrap();
    assert!(v0.intersect(&v1).unwrap().is_origin_only().unwrap());
}

#[test]
fn laplace_signs_in_odd_characteristic() {
    let ring = variety_ring(5, 2).unwrap();
    let p = |s: &str| MultiPoly::parse(&ring, s).unwrap();
    let x = vec![
        vec![p("a1"), p("a2"), p("0")],
        vec![p("0"), p("a1"), p("a2")],
        vec![p("a2"), p("0"), p("a1")],
    ];
    let d = det(&x, &[0, 1, 2], 0b111, &ring, &mut HashMap::new());
    assert_eq!(d, p("a1^3 + a2^3"));
    let x2 = vec![vec![p("a1"), p("a2")], vec![p("2*a2"), p("a1")]];
    assert_eq!(det(&x2, &[0, 1], 0b11, &ring, &mut HashMap::new()), p("a1^2 - 2*a2^2"));
}

#[test]
fn pencil_agrees_with_minors_on_syzygies() {
    for p in [2u64, 3] {
        let a = alg(p, 2);
        for n in [-1i64, 1] {
            let k = KModule::trivial(&a);
            let m = omega_power(&k, n).direct_sum(&k).unwrap();
            assert_eq!(m.dim() % p as usize, 0);
            let by_minors = rank_variety_by_minors(&m).unwrap();
            let dim = m.dim();
            let n_req = (p as usize - 1) * dim / p as usize;
            let ring = variety_ring(p, 2).unwrap();
            let by_pencil = RankVarietyIdeal { ideal: pencil(&m, &ring, n_req), required_rank: RequiredRank::Combined };
            assert!(by_minors.eq_radical(&by_pencil).unwrap());
        }
    }
}

fn random_klein_module(bits: &[u32]) -> KModule<PrimeField> {
    let a = alg(2, 2);
    let free = KModule::free(&a, 2);
    free.generated_submodule(&[bits.to_vec()]).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn pencil_agrees_with_minors(bits in prop::collection::vec(0u32..2, 8), extra in 0usize..3) {
        let mut m = random_klein_module(&bits);
        for _ in 0..extra {
            m = m.direct_sum(&line_module(2, (extra % 2) as u32).unwrap()).unwrap();
        }
        prop_assume!(m.dim().is_multiple_of(2) && m.dim() <= 10);
        let by_minors = rank_variety_by_minors(&m).unwrap();
        let ring = variety_ring(2, 2).unwrap();
        let by_pencil = RankVarietyIdeal { ideal: pencil(&m, &ring, m.dim() / 2), required_rank: RequiredRank::Combined };
        prop_assert!(by_minors.eq_radical(&by_pencil).unwrap());
    }

    #[test]
    fn points_agree_with_shifted_freeness(bits in prop::collection::vec(0u32..2, 8)) {
        let m = random_klein_module(&bits);
        let v = rank_variety_ideal(&m).unwrap();
        for alpha in [[1u32, 0], [0, 1], [1, 1]] {
            prop_assert_eq!(v.contains_point(&alpha).unwrap(), point_in_variety(&m, &alpha).unwrap());
        }
    }
}
