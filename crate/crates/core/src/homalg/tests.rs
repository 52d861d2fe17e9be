use super::*;
use crate::exactla::PrimeField;
use crate::kmodule::ElemAbGroupAlg;

fn alg(p: u64, r: usize) -> ElemAbGroupAlg<PrimeField> {
    ElemAbGroupAlg::prime(p, r).unwrap()
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn cover_examples() {
    let a = alg(2, 2);
    let k = KModule::trivial(&a);
    let cover = projective_cover(&k);
    assert_eq!(cover.source(), &KModule::regular(&a));
    assert_eq!(cover.matrix().to_rows(), vec![vec![1, 0, 0, 0]]);

    let reg = KModule::regular(&a);
    let cover = projective_cover(&reg);
    assert_eq!(cover.matrix(), &Matrix::identity(reg.field(), 4));

    let zero = KModule::zero(&a);
    assert_eq!(projective_cover(&zero).source().dim(), 0);
}

#[test]
fn cover_kernel_lies_in_radical() {
    let a = alg(3, 2);
    let m = omega_power(&KModule::trivial(&a), -2);
    let cover = projective_cover(&m);
    let (_, basis) = cover.kernel();
    let p = cover.source();
    let rad = p.radical_span();
    assert_eq!(Matrix::hstack(&[&rad, &basis]).unwrap().rank(), rad.rank());
}

#[test]
fn omega_examples() {
    let a = alg(2, 2);
    let k = KModule::trivial(&a);
    let om = omega(&k);
    assert_eq!(om.dim(), 3);
    assert_eq!(om.free_rank(), 0);
    assert_eq!(omega(&KModule::regular(&a)).dim(), 0);
    let back = omega_inverse(&om);
    assert_eq!(back.strip_free().dim(), 1);
    assert_eq!(omega_inverse(&k).free_rank(), 0);
}

#[test]
fn klein_four_syzygies_have_odd_dimension() {
    let a = alg(2, 2);
    let k = KModule::trivial(&a);
    for n in 1..=4 {
        assert_eq!(omega_power(&k, n).dim(), 2 * n as usize + 1);
        assert_eq!(omega_power(&k, -n).dim(), 2 * n as usize + 1);
    }
}

#[test]
fn resolution_examples() {
    let a = alg(2, 2);
    let res = minimal_resolution(&KModule::trivial(&a), 4);
    assert_eq!(res.ranks, vec![1, 2, 3, 4, 5]);
    let res1 = minimal_resolution(&KModule::trivial(&alg(2, 1)), 5);
    assert_eq!(res1.ranks, vec![1; 6]);
    let reg = minimal_resolution(&KModule::regular(&a), 3);
    assert_eq!(reg.ranks, vec![1, 0, 0, 0]);
}

#[test]
fn resolutions_are_complexes_and_minimal() {
    for (p, r) in [(2, 2), (3, 2), (2, 3)] {
        let a = alg(p, r);
        let m = omega_inverse(&KModule::trivial(&a)).direct_sum(&KModule::trivial(&a)).unwrap();
        let res = minimal_resolution(&m, 3);
        let first = res.augmentation.matrix().mul(res.boundaries[0].matrix()).unwrap();
        assert!(first.is_zero());
        for w in res.boundaries.windows(2) {
            assert!(w[0].matrix().mul(w[1].matrix()).unwrap().is_zero());
        }
        for b in &res.boundaries {
            let rad = b.target().radical_span();
            let joint = Matrix::hstack(&[&rad, b.matrix()]).unwrap();
            assert_eq!(joint.rank(), rad.rank(), "boundary image leaves the radical");
        }
    }
}

#[test]
fn ext_dims_examples() {
    let k4 = KModule::trivial(&alg(2, 2));
    assert_eq!(ext_dims(&k4, &k4, 5).unwrap(), vec![1, 2, 3, 4, 5, 6]);
    for r in 1..=3 {
        let k = KModule::trivial(&alg(2, r));
        let expected: Vec<usize> = (0..=4).map(|i| binomial(i + r - 1, r - 1)).collect();
        assert_eq!(ext_dims(&k, &k, 4).unwrap(), expected);
    }
    let k3 = KModule::trivial(&alg(3, 1));
    assert_eq!(ext_dims(&k3, &k3, 5).unwrap(), vec![1; 6]);
    let k32 = KModule::trivial(&alg(3, 2));
    assert_eq!(ext_dims(&k32, &k32, 4).unwrap(), vec![1, 2, 3, 4, 5]);
}

#[test]
fn ext_with_trivial_coefficients_has_zero_differentials() {
    let a = alg(3, 2);
    let k = KModule::trivial(&a);
    let res = minimal_resolution(&k, 4);
    for b in &res.boundaries {
        assert!(hom_coboundary(b, &k).is_zero());
    }
    assert_eq!(ext_dims(&k, &k, 3).unwrap(), res.ranks[..4].to_vec());
}

#[test]
fn stable_and_tate_examples() {
    for (p, r) in [(2, 1), (2, 2), (3, 2)] {
        let k = KModule::trivial(&alg(p, r));
        assert_eq!(stable_hom_dim(&k, &k).unwrap(), 1);
    }
    let a = alg(2, 2);
    let k = KModule::trivial(&a);
    assert_eq!(tate_dim(&k, &k, -2).unwrap(), 2);
    let reg = KModule::regular(&a);
    assert_eq!(stable_hom_dim(&reg, &k).unwrap(), 0);
    assert_eq!(stable_hom_dim(&reg, &omega(&k)).unwrap(), 0);
}

#[test]
fn tate_duality_in_low_degrees() {
    let k = KModule::trivial(&alg(2, 2));
    let ext = ext_dims(&k, &k, 4).unwrap();
    for n in 1..=4i64 {
        assert_eq!(tate_dim(&k, &k, -n).unwrap(), ext[n as usize - 1]);
    }
}

#[test]
fn omega_of_maps() {
    let a = alg(2, 2);
    let k = KModule::trivial(&a);
    let om = omega(&k);
    let id = omega_of_map(&ModuleMap::identity(&k)).unwrap();
    assert!(StableMapClass::new(id).stably_equal(&StableMapClass::new(ModuleMap::identity(&om))).unwrap());
    let zero = omega_of_map(&ModuleMap::zero(&k, &k)).unwrap();
    assert!(StableMapClass::new(zero).is_zero().unwrap());
    assert!(!StableMapClass::new(ModuleMap::identity(&k)).is_zero().unwrap());
}

#[test]
fn carlson_examples() {
    let a = alg(2, 2);
    let l1 = carlson_l(&a, &[1, 0], 1).unwrap();
    assert_eq!(l1.dim(), 2);
    assert_eq!(carlson_l(&a, &[1, 0], 3).unwrap().dim(), 6);
    let l11 = carlson_l(&a, &[1, 1], 1).unwrap();
    assert_eq!(l11.dim(), 2);
    // the two modules fail to be free on different shifted subgroups
    assert!(!l1.shifted_free(&[0, 1]).unwrap() && l1.shifted_free(&[1, 1]).unwrap());
    assert!(!l11.shifted_free(&[1, 1]).unwrap() && l11.shifted_free(&[0, 1]).unwrap());
    for n in 1..=3 {
        for c in [[1, 0], [0, 1], [1, 1]] {
            let l = carlson_l(&a, &c, n).unwrap();
            assert_eq!(l.dim(), 2 * n);
            assert_eq!(l.free_rank(), 0);
            assert!(!l.is_projective());
        }
    }
    assert_eq!(carlson_l(&a, &[0, 0], 1).unwrap_err(), Error::BadAlpha);
    assert!(matches!(carlson_l(&alg(3, 2), &[1, 0], 1), Err(Error::Unsupported(_))));
}

#[test]
fn injective_resolution_examples() {
    let a = alg(2, 2);
    let ik = injective_resolution(&KModule::trivial(&a), 3);
    assert_eq!(ik.ranks(), vec![1, 2, 3, 4]);
    assert!(ik.differentials[0].compose(&ik.coaugmentation).unwrap().is_zero());
    for w in ik.differentials.windows(2) {
        assert!(w[1].compose(&w[0]).unwrap().is_zero());
    }
    let reg = injective_resolution(&KModule::regular(&a), 3);
    assert_eq!(reg.ranks(), vec![1, 0, 0, 0]);
    let r1 = injective_resolution(&KModule::trivial(&alg(2, 1)), 2);
    assert!(r1.modules[0].is_projective() && r1.modules[0].dim() == 2);
}
