use proptest::prelude::*;

use super::*;
use crate::exactla::{Field, Matrix, PrimeField, RationalFunctionField};

fn alg(p: u64, r: usize) -> ElemAbGroupAlg<PrimeField> {
    ElemAbGroupAlg::prime(p, r).unwrap()
}

fn mat(f: &PrimeField, rows: &[&[u32]]) -> Matrix<PrimeField> {
    Matrix::from_rows(f, rows.iter().map(|r| r.to_vec()).collect()).unwrap()
}

fn klein_line(lambda: u32) -> KModule<PrimeField> {
    let a = alg(2, 2);
    let f = *a.field();
    let g1 = mat(&f, &[&[1, 0], &[1, 1]]);
    let g2 = mat(&f, &[&[1, 0], &[lambda, 1]]);
    KModule::from_matrices(&a, vec![g1, g2], Form::G).unwrap()
}

fn dim_hom(m: &KModule<PrimeField>, n: &KModule<PrimeField>) -> usize {
    hom_basis(m, n).unwrap().len()
}

/// Cyclic submodule of `kE^2` generated by `v`, conjugated by a unitriangular change of basis.
fn random_module(a: &ElemAbGroupAlg<PrimeField>, v: &[u32], shear: &[u32]) -> KModule<PrimeField> {
    let free = KModule::free(a, 2);
    let m = free.generated_submodule(&[v.to_vec()]).unwrap();
    let f = *a.field();
    let d = m.dim();
    let mut t = Matrix::identity(&f, d);
    for (k, &s) in shear.iter().enumerate() {
        let (i, j) = (k % d.max(1), (k / d.max(1) + 1 + k) % d.max(1));
        if d > 1 && i > j {
            t.set(i, j, s % a.p());
        }
    }
    let tinv = t.left_inverse().unwrap();
    let actions = m.actions().iter().map(|z| tinv.mul(&z.mul(&t).unwrap()).unwrap()).collect();
    KModule::from_matrices(a, actions, Form::Z).unwrap()
}

fn module_strategy(p: u64, r: usize) -> impl Strategy<Value = KModule<PrimeField>> {
    let n = 2 * (p as usize).pow(r as u32);
    (prop::collection::vec(0..p as u32, n), prop::collection::vec(0..p as u32, 6))
        .prop_map(move |(v, s)| random_module(&alg(p, r), &v, &s))
}

#[test]
fn group_matrices_convert_to_z_form() {
    let m = klein_line(1);
    let f = *m.field();
    assert!(m.action(0).equals(&mat(&f, &[&[0, 0], &[1, 0]])));
    assert!(m.action(1).equals(&mat(&f, &[&[0, 0], &[1, 0]])));
    assert!(klein_line(0).action(1).is_zero());

    let a1 = alg(2, 1);
    let k2 = KModule::from_matrices(&a1, vec![Matrix::identity(a1.field(), 2)], Form::G).unwrap();
    assert!(k2.action(0).is_zero());
    assert_eq!(k2.dim(), 2);

    let a3 = alg(3, 2);
    let f3 = *a3.field();
    for lambda in 0..3 {
        let g1 = mat(&f3, &[&[1, 0, 0], &[1, 1, 0], &[0, 1, 1]]);
        let g2 = mat(&f3, &[&[1, 0, 0], &[lambda, 1, 0], &[0, lambda, 1]]);
        let m = KModule::from_matrices(&a3, vec![g1, g2], Form::G).unwrap();
        assert_eq!(m.dim(), 3);
        assert_eq!(m.matrices(Form::G)[1], mat(&f3, &[&[1, 0, 0], &[lambda, 1, 0], &[0, lambda, 1]]));
    }
}

#[test]
fn validation_errors_name_the_offender() {
    let a = alg(2, 2);
    let f = *a.field();
    let z1 = mat(&f, &[&[0, 0], &[1, 0]]);
    let z2 = mat(&f, &[&[0, 1], &[0, 0]]);
    assert_eq!(
        KModule::from_matrices(&a, vec![z1.clone(), z2], Form::Z).unwrap_err(),
        crate::Error::NonCommuting { i: 0, j: 1 }
    );
    let bad = mat(&f, &[&[1, 0], &[0, 0]]);
    assert_eq!(
        KModule::from_matrices(&a, vec![z1.clone(), bad], Form::Z).unwrap_err(),
        crate::Error::NotNilpotent { index: 1 }
    );
    assert_eq!(
        KModule::from_matrices(&a, vec![z1.clone()], Form::Z).unwrap_err(),
        crate::Error::WrongActionCount { expected: 2, got: 1 }
    );
    let g = mat(&f, &[&[0, 1], &[1, 1]]);
    assert_eq!(
        KModule::from_matrices(&a, vec![g.clone(), g], Form::G).unwrap_err(),
        crate::Error::NotUnipotent { index: 0 }
    );
    let small = Matrix::zeros(&f, 1, 1);
    assert_eq!(KModule::from_matrices(&a, vec![z1, small], Form::Z).unwrap_err(), crate::Error::BadActionShape { index: 1 });
}

#[test]
fn regular_module_shapes() {
    let a = alg(2, 1);
    let reg = KModule::regular(&a);
    assert!(reg.action(0).equals(&mat(a.field(), &[&[0, 0], &[1, 0]])));
    assert_eq!(KModule::regular(&alg(2, 2)).dim(), 4);
    assert_eq!(KModule::regular(&alg(3, 2)).dim(), 9);
}

#[test]
fn tensor_and_dual_examples() {
    let a = alg(2, 2);
    let k = KModule::trivial(&a);
    let m = klein_line(1);
    let km = k.tensor_diag(&m).unwrap();
    // 1 ⊗ m ↦ m is the identity matrix on the tensor basis
    assert!(ModuleMap::new(&m, &km, Matrix::identity(m.field(), 2)).is_ok());
    assert!(KModule::regular(&a).tensor_diag(&m).unwrap().is_projective());
    let three = KModule::trivial_sum(&a, 3);
    assert_eq!(m.tensor_diag(&three).unwrap().dim(), 6);

    assert_eq!(k.dual(), k);
    let reg = KModule::regular(&a);
    let dreg = reg.dual();
    assert!(dreg.is_projective() && dreg.dim() == 4);
    assert_eq!(dreg.dual(), reg);
}

#[test]
fn hom_examples() {
    let a = alg(2, 2);
    let k = KModule::trivial(&a);
    assert_eq!(k.hom_module(&k).unwrap().fixed_point_dim(), 1);
    assert_eq!(dim_hom(&k, &KModule::regular(&a)), 1);
    assert_eq!(k.hom_module(&KModule::regular(&a)).unwrap().fixed_point_dim(), 1);
}

#[test]
fn shifted_subgroup_examples() {
    let m = klein_line(1);
    let f = *m.field();
    assert!(m.restrict_shifted(&[1, 0]).unwrap().equals(&mat(&f, &[&[0, 0], &[1, 0]])));
    assert!(m.restrict_shifted(&[1, 1]).unwrap().is_zero());
    assert!(KModule::trivial(&alg(2, 2)).restrict_shifted(&[1, 1]).unwrap().is_zero());
    assert_eq!(m.restrict_shifted(&[0, 0]).unwrap_err(), crate::Error::BadAlpha);

    assert!(KModule::regular(&alg(2, 2)).shifted_free(&[1, 1]).unwrap());
    assert!(!KModule::trivial(&alg(2, 2)).shifted_free(&[1, 0]).unwrap());
}

#[test]
fn generic_module_is_shifted_free_but_not_projective() {
    let kf = RationalFunctionField::new(PrimeField::new(2).unwrap(), &["t1", "t2"]).unwrap();
    let a = ElemAbGroupAlg::new(kf.clone(), 2).unwrap();
    let z = |i: usize| {
        let mut m = Matrix::zeros(&kf, 2, 2);
        m.set(1, 0, kf.var(i));
        m
    };
    let m = KModule::from_matrices(&a, vec![z(0), z(1)], Form::Z).unwrap();
    assert!(!m.is_projective());
    for alpha in [[1, 0], [0, 1], [1, 1]] {
        let alpha: Vec<_> = alpha.iter().map(|&c| kf.from_int(c)).collect();
        assert!(m.shifted_free(&alpha).unwrap());
    }
}

#[test]
fn subset_restriction_and_induction() {
    let a = alg(2, 2);
    let res = KModule::regular(&a).restrict_subset(&[0]).unwrap();
    assert_eq!(res.algebra().r(), 1);
    assert!(res.is_projective() && res.top_dim() == 2);
    let k = KModule::trivial(&a);
    assert_eq!(k.restrict_subset(&[0]).unwrap(), KModule::trivial(&alg(2, 1)));
    let m0 = klein_line(0).restrict_subset(&[1]).unwrap();
    assert_eq!(m0, KModule::trivial_sum(&alg(2, 1), 2));
    assert_eq!(k.restrict_subset(&[]).unwrap_err(), crate::Error::BadSubset);

    let k1 = KModule::trivial(&alg(2, 1));
    let ind = k1.induce_subset(&[0], &a).unwrap();
    assert_eq!(ind.dim(), 2);
    // inducing the regular module of a subgroup gives the regular module
    let reg1 = KModule::regular(&alg(2, 1));
    let ind = reg1.induce_subset(&[1], &a).unwrap();
    assert!(ind.is_projective() && ind.dim() == 4);
}

#[test]
fn projectivity_and_free_rank_examples() {
    let a = alg(2, 2);
    let k = KModule::trivial(&a);
    let reg = KModule::regular(&a);
    assert!(reg.is_projective());
    assert!(!k.is_projective());
    assert_eq!(reg.free_rank(), 1);
    assert_eq!(reg.strip_free().dim(), 0);
    let s = k.direct_sum(&reg).unwrap();
    assert_eq!(s.free_rank(), 1);
    assert_eq!(s.strip_free(), k);
}

#[test]
fn strip_free_handles_odd_primes() {
    let a = alg(3, 2);
    let m = random_module(&a, &[1, 2, 0, 1, 0, 0, 2, 0, 1, 0, 1, 0, 0, 0, 0, 0, 0, 1], &[1, 2, 1]);
    let sum = m.direct_sum(&KModule::free(&a, 2)).unwrap();
    let stripped = sum.strip_free();
    assert_eq!(stripped.free_rank(), 0);
    assert_eq!(stripped.dim(), sum.dim() - 9 * sum.free_rank());
}

fn alphas(p: u32, r: usize) -> Vec<Vec<u32>> {
    (1..p.pow(r as u32))
        .map(|mut n| {
            (0..r)
                .map(|_| {
                    let d = n % p;
                    n /= p;
                    d
                })
                .collect()
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn shifted_action_is_nilpotent(m in module_strategy(3, 2)) {
        for alpha in alphas(3, 2) {
            let x = m.restrict_shifted(&alpha).unwrap();
            prop_assert!(x.pow(3).unwrap().is_zero());
        }
    }

    #[test]
    fn projective_modules_are_shifted_free(m in module_strategy(2, 2)) {
        if m.is_projective() {
            for alpha in alphas(2, 2) {
                prop_assert!(m.shifted_free(&alpha).unwrap());
            }
        }
    }

    #[test]
    fn tensor_swap_intertwines(m in module_strategy(2, 2), n in module_strategy(2, 2)) {
        let mn = m.tensor_diag(&n).unwrap();
        let nm = n.tensor_diag(&m).unwrap();
        let (a, b) = (m.dim(), n.dim());
        let f = *m.field();
        let swap = Matrix::from_fn(&f, a * b, a * b, |row, col| {
            let (i, j) = (col / b, col % b);
            if row == j * a + i { 1 } else { 0 }
        });
        prop_assert!(ModuleMap::new(&mn, &nm, swap).is_ok());
    }

    #[test]
    fn free_rank_counts_regular_summands(m in module_strategy(2, 2), s in 0usize..3) {
        let a = m.algebra().clone();
        let sum = m.direct_sum(&KModule::free(&a, s)).unwrap();
        prop_assert_eq!(sum.free_rank(), m.free_rank() + s);
        let stripped = sum.strip_free();
        prop_assert_eq!(stripped.free_rank(), 0);
        prop_assert_eq!(stripped.strip_free(), stripped.clone());
        prop_assert_eq!(m.is_projective(), m.strip_free().dim() == 0);
    }

    #[test]
    fn hom_fixed_points_match_intertwiners(m in module_strategy(2, 2), n in module_strategy(2, 2)) {
        prop_assert_eq!(m.hom_module(&n).unwrap().fixed_point_dim(), dim_hom(&m, &n));
    }

    #[test]
    fn tensor_hom_adjunction(l in module_strategy(2, 2), m in module_strategy(2, 2)) {
        let n = klein_line(1);
        let lhs = dim_hom(&l.tensor_diag(&m).unwrap(), &n);
        let rhs = dim_hom(&l, &m.hom_module(&n).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn frobenius_reciprocity(m in module_strategy(2, 1), n in module_strategy(2, 2), which in 0usize..2) {
        let a = alg(2, 2);
        let ind = m.induce_subset(&[which], &a).unwrap();
        prop_assert_eq!(ind.dim(), 2 * m.dim());
        prop_assert_eq!(dim_hom(&ind, &n), dim_hom(&m, &n.restrict_subset(&[which]).unwrap()));
    }
}
