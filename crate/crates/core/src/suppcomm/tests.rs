use proptest::prelude::*;

use super::*;
use crate::polyalgebra::PolyRing;

fn ring() -> RingRef {
    PolyRing::parse("GF(2)[y1,y2]").unwrap()
}

fn polys(ring: &RingRef, s: &[&str]) -> Vec<MultiPoly> {
    s.iter().map(|e| MultiPoly::parse(ring, e).unwrap()).collect()
}

fn closed(ring: &RingRef, s: &str) -> SupportSet {
    SupportSet::closed(&Ideal::parse(ring, s).unwrap())
}

fn quotient(ring: &RingRef, s: &str) -> PresentedModule {
    PresentedModule::cyclic(&Ideal::parse(ring, s).unwrap())
}

#[test]
fn koszul_shapes() {
    let a = ring();
    let k1 = koszul_complex(&a, &polys(&a, &["y1"])).unwrap();
    assert_eq!((k1.lo(), k1.hi()), (-1, 0));
    assert_eq!(k1.differential(-1).unwrap().to_strings(), vec![vec!["y1".to_string()]]);
    let k2 = koszul_complex(&a, &polys(&a, &["y1", "y2"])).unwrap();
    assert_eq!(k2.ranks(), &[1, 2, 1]);
    assert_eq!(k2.lo(), -2);
    let k3 = koszul_complex(&a, &polys(&a, &["y1", "y2", "y1 + y2"])).unwrap();
    assert_eq!(k3.ranks(), &[1, 3, 3, 1]);
}

#[test]
fn koszul_on_unit_is_exact() {
    let a = ring();
    let k = koszul_complex(&a, &polys(&a, &["1"])).unwrap();
    assert!(k.cohomology().iter().all(PresentedModule::is_zero));
    assert!(supp_complex(&k).is_empty());
}

#[test]
fn odd_characteristic_signs_square_to_zero() {
    let a = PolyRing::parse("GF(3)[y1,y2,y3]").unwrap();
    let k = koszul_complex(&a, &polys(&a, &["y1", "y2", "y3"])).unwrap();
    assert_eq!(k.ranks(), &[1, 3, 3, 1]);
    let h = k.cohomology();
    assert!(h[..3].iter().all(PresentedModule::is_zero));
    assert!(h[3].annihilator().eq_radical(&Ideal::parse(&a, "y1, y2, y3").unwrap()).unwrap());
}

#[test]
fn rejects_bad_complexes() {
    let a = ring();
    let y1 = PolyMatrix::parse(&a, &[vec!["y1"]]).unwrap();
    assert!(FreeComplex::new(&a, 0, vec![1, 1, 1], vec![y1.clone(), y1.clone()]).is_err());
    assert!(FreeComplex::new(&a, 0, vec![1, 2], vec![y1]).is_err());
    let other = PolyRing::parse("GF(2)[x]").unwrap();
    let elems = vec![MultiPoly::var(&a, 0), MultiPoly::var(&other, 0)];
    assert!(matches!(koszul_complex(&a, &elems), Err(Error::RingMismatch(_))));
}

#[test]
fn regular_sequence_cohomology() {
    let a = ring();
    let k = koszul_complex(&a, &polys(&a, &["y1", "y2"])).unwrap();
    let h = k.cohomology();
    assert!(h[0].is_zero() && h[1].is_zero());
    assert_eq!(h[2].rank(), 1);
    let expected = Ideal::parse(&a, "y1, y2").unwrap();
    assert!(h[2].annihilator().eq_radical(&expected).unwrap());
    // H^0 has the same presentation as the cokernel of the resolution
    let q = PresentedModule::cyclic(&expected);
    assert!(q.annihilator().eq_radical(&h[2].annihilator()).unwrap());
}

#[test]
fn zero_differentials() {
    let a = ring();
    let x = FreeComplex::module(&a, 1);
    let h = x.cohomology();
    assert_eq!(h.len(), 1);
    assert_eq!(h[0].rank(), 1);
    assert!(h[0].relations().is_zero());
}

#[test]
fn repeated_element_is_not_regular() {
    let a = ring();
    let k = koszul_complex(&a, &polys(&a, &["y1", "y1"])).unwrap();
    let h = k.cohomology();
    // the syzygy (1, 1) survives in degree -1; degree -2 is the kernel of an injective map
    assert!(h[0].is_zero());
    assert!(!h[1].is_zero());
    assert!(h[1].annihilator().eq_radical(&Ideal::parse(&a, "y1").unwrap()).unwrap());
}

#[test]
fn module_supports() {
    let a = ring();
    let s = supp_module(&quotient(&a, "y1"));
    assert!(s.set_eq(&closed(&a, "y1")).unwrap());
    assert!(supp_module(&quotient(&a, "y1^2")).set_eq(&closed(&a, "y1")).unwrap());
    let free = supp_module(&PresentedModule::free(&a, 2));
    assert!(free.set_eq(&closed(&a, "0")).unwrap());
    assert!(supp_module(&PresentedModule::free(&a, 0)).is_empty());
}

#[test]
fn complex_supports() {
    let a = ring();
    let k = koszul_complex(&a, &polys(&a, &["y1", "y2"])).unwrap();
    assert!(supp_complex(&k).set_eq(&closed(&a, "y1, y2")).unwrap());
    let kos = koszul_on_module(&quotient(&a, "y1"), &polys(&a, &["y2"])).unwrap();
    assert_eq!(kos.ranks(), &[1, 2, 1]);
    assert!(supp_complex(&kos).set_eq(&closed(&a, "y1, y2")).unwrap());
}

#[test]
fn koszul_on_free_module_is_koszul() {
    let a = ring();
    let e = polys(&a, &["y1", "y2"]);
    let x = koszul_on_module(&PresentedModule::free(&a, 1), &e).unwrap();
    let k = koszul_complex(&a, &e).unwrap();
    assert_eq!(x.ranks(), k.ranks());
    assert_eq!(x.lo(), k.lo());
}

#[test]
fn self_koszul_has_torsion_in_two_degrees() {
    let a = ring();
    let kos = koszul_on_module(&quotient(&a, "y1"), &polys(&a, &["y1"])).unwrap();
    let h = kos.cohomology();
    let nonzero: Vec<i64> = (kos.lo()..=kos.hi()).filter(|&n| !h[(n - kos.lo()) as usize].is_zero()).collect();
    assert_eq!(nonzero, vec![-1, 0]);
    let y1 = MultiPoly::parse(&a, "y1").unwrap();
    for n in nonzero {
        assert!(h[(n - kos.lo()) as usize].annihilator().contains(&y1).unwrap());
    }
}

#[test]
fn point_membership() {
    let a = ring();
    let m = quotient(&a, "y1");
    assert!(supp_contains_point(&m, &[0, 0]).unwrap());
    assert!(supp_contains_point(&m, &[0, 1]).unwrap());
    assert!(!supp_contains_point(&m, &[1, 0]).unwrap());
    let free = PresentedModule::free(&a, 1);
    for c in [[0, 0], [1, 0], [0, 1], [1, 1]] {
        assert!(supp_contains_point(&free, &c).unwrap());
    }
    assert!(supp_contains_point(&m, &[0]).is_err());
}

#[test]
fn subset_tests() {
    let a = ring();
    let (v12, v1) = (closed(&a, "y1, y2"), closed(&a, "y1"));
    assert!(supp_subset(&v12, &v1).unwrap());
    assert!(!supp_subset(&v1, &v12).unwrap());
    let sq = closed(&a, "y1^2");
    assert!(supp_subset(&sq, &v1).unwrap() && supp_subset(&v1, &sq).unwrap());
    let union = v1.union(&closed(&a, "y2"));
    assert!(matches!(supp_subset(&union, &v1), Err(Error::Unsupported(_))));
}

#[test]
fn direct_sum_law() {
    let a = ring();
    let ms = ["y1", "y2", "y1^2, y1*y2", "y1 + 1", "0"];
    for x in ms {
        for y in ms {
            let (m, n) = (quotient(&a, x), quotient(&a, y));
            let sum = supp_module(&m.direct_sum(&n).unwrap());
            assert!(sum.set_eq(&supp_module(&m).union(&supp_module(&n))).unwrap(), "{x} + {y}");
        }
    }
}

#[test]
fn exactness_law_for_koszul_extensions() {
    // 0 → A → kos(A; a) → ΣA → 0 with both ends supported everywhere
    let a = ring();
    for e in ["y1", "y2", "y1*y2", "y1 + y2"] {
        let k = koszul_complex(&a, &polys(&a, &[e])).unwrap();
        let ends = supp_module(&PresentedModule::free(&a, 1));
        assert!(supp_complex(&k).is_subset(&ends.union(&ends)).unwrap());
    }
}

fn family_module(a: &RingRef, i: usize) -> PresentedModule {
    match i {
        0 => PresentedModule::free(a, 1),
        1 => quotient(a, "y1"),
        2 => quotient(a, "y1^2"),
        _ => quotient(a, "y1, y2"),
    }
}

const FAMILY_IDEALS: [&[&str]; 4] = [&["y1"], &["y2"], &["y1", "y2"], &["y1^2", "y1*y2"]];

#[test]
fn koszul_support_law_on_family() {
    let a = ring();
    for i in 0..4 {
        let m = family_module(&a, i);
        for gens in FAMILY_IDEALS {
            let kos = koszul_on_module(&m, &polys(&a, gens)).unwrap();
            let ideal = Ideal::new(&a, polys(&a, gens)).unwrap();
            let expected = supp_module(&m).intersect_closed(&ideal).unwrap();
            assert!(supp_complex(&kos).set_eq(&expected).unwrap(), "module {i}, ideal {gens:?}");
        }
    }
}

fn small_poly() -> impl Strategy<Value = String> {
    let mono = prop::sample::select(vec!["1", "y1", "y2", "y1*y2", "y1^2", "y2^2"]);
    prop::collection::vec(mono, 1..3).prop_map(|ms| ms.join(" + "))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn koszul_support_law(rel in small_poly(), e1 in small_poly(), e2 in small_poly()) {
        let a = ring();
        let m = quotient(&a, &rel);
        let elems = polys(&a, &[&e1, &e2]);
        let kos = koszul_on_module(&m, &elems).unwrap();
        let expected = supp_module(&m).intersect_closed(&Ideal::new(&a, elems).unwrap()).unwrap();
        prop_assert!(supp_complex(&kos).set_eq(&expected).unwrap());
    }

    #[test]
    fn point_tests_agree_with_support(rel in small_poly(), c1 in 0u32..2, c2 in 0u32..2) {
        let a = ring();
        let m = quotient(&a, &rel);
        prop_assert_eq!(supp_contains_point(&m, &[c1, c2]).unwrap(), supp_module(&m).contains_point(&[c1, c2]));
    }

    #[test]
    fn tensored_complexes_square_to_zero(e1 in small_poly(), e2 in small_poly(), e3 in small_poly()) {
        let a = ring();
        let k = koszul_complex(&a, &polys(&a, &[&e1, &e2, &e3]));
        prop_assert!(k.is_ok());
    }
}
