//! Small named modules used in examples and tests.

use super::module::{ElemAbGroupAlg, Form, KModule};
use crate::error::Result;
use crate::exactla::{Matrix, PrimeField, RationalFunctionField};

/// The `p`-dimensional module over `(Z/p)^2` with `g_1 = I + N` and
/// `g_2 = I + λN`, `N` the nilpotent Jordan block. Its rank variety is the
/// line `a_1 + λ a_2 = 0`.
pub fn line_module(p: u64, lambda: u32) -> Result<KModule<PrimeField>> {
    let alg = ElemAbGroupAlg::prime(p, 2)?;
    let f = *alg.field();
    let n = p as usize;
    let shift = Matrix::from_fn(&f, n, n, |i, j| u32::from(i == j + 1));
    KModule::from_matrices(&alg, vec![shift.clone(), shift.scale(&(lambda % f.p()))], Form::Z)
}

/// The 4-dimensional module over `(Z/2)^4` where `z_1, z_2` send the first
/// two basis vectors to the third and `z_3, z_4` to the fourth. Its rank
/// variety is the quadric `a_1 a_4 + a_2 a_3 = 0`.
pub fn quadric_module() -> Result<KModule<PrimeField>> {
    let alg = ElemAbGroupAlg::prime(2, 4)?;
    let f = *alg.field();
    let unit = |row: usize, col: usize| Matrix::from_fn(&f, 4, 4, |i, j| u32::from(i == row && j == col));
    KModule::from_matrices(&alg, vec![unit(2, 0), unit(2, 1), unit(3, 0), unit(3, 1)], Form::Z)
}

/// The generic module `K ⊕ K` over `(Z/2)^r`, `K = F_2(t_1..t_r)`, with
/// `z_i` acting as `[[0, 0], [t_i, 0]]`.
pub fn generic_module(r: usize) -> Result<KModule<RationalFunctionField>> {
    let names: Vec<String> = (1..=r).map(|i| format!("t{i}")).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let k = RationalFunctionField::new(PrimeField::new(2)?, &refs)?;
    let alg = ElemAbGroupAlg::new(k.clone(), r)?;
    let mats = (0..r)
        .map(|i| {
            let mut z = Matrix::zeros(&k, 2, 2);
            z.set(1, 0, k.var(i));
            z
        })
        .collect();
    KModule::from_matrices(&alg, mats, Form::Z)
}
