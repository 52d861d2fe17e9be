//! The correspondence between complexes of injective `kE`-modules and DG
//! modules over `S = k[x_1..x_r]` for `p = 2`, checked in a finite window.
//!
//! `J = kE ⊗ S` with differential `δ·(−)`, `δ = Σ z_i ⊗ x_i`, is an injective
//! resolution of `k`, and `Hom_kE(J, −)` inherits the right `S`-action of `J`.
//! Everything is truncated at a degree `N`; that only disturbs degree `N`, so
//! degrees up to `N - 1` are certified.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::exactla::{Field, Matrix, PrimeField};
use crate::homalg::{ext_dims, injective_resolution};
use crate::kmodule::{ElemAbGroupAlg, KModule};


/// `J^0 → ... → J^N` with `J^i = kE ⊗ S^i`.
///
/// `J^i` has basis `Z^e g_s` at index `s·|E| + e`, where `s` runs over the
/// degree `i` monomials of `S` in [`TruncatedJ::monomials`] order.
#[derive(Clone, Debug)]
pub struct TruncatedJ {
    alg: ElemAbGroupAlg<PrimeField>,
    top: usize,
    // degrees 0..=top+1; the extra degree feeds negative Hom degrees
    monomials: Vec<Vec<Vec<u32>>>,
    index: Vec<HashMap<Vec<u32>, usize>>,
    modules: Vec<KModule<PrimeField>>,
    differentials: Vec<Matrix<PrimeField>>,
}

fn monomials_of_degree(r: usize, d: u32) -> Vec<Vec<u32>> {
    if r == 1 {
        return vec![vec![d]];
    }
    let mut out = Vec::new();
    for first in (0..=d).rev() {
        for mut rest in monomials_of_degree(r - 1, d - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn add_block(m: &mut Matrix<PrimeField>, block: &Matrix<PrimeField>, row: usize, col: usize) {
    let f = *m.field();
    for i in 0..block.rows() {
        for j in 0..block.cols() {
            let b = *block.get(i, j);
            if b != 0 {
                let v = f.add(m.get(row + i, col + j), &b);
                m.set(row + i, col + j, v);
            }
        }
    }
}

/// Builds `J` truncated at degree `n` over `F_2[(Z/2)^r]`.
pub fn build_j(r: usize, n: usize) -> Result<TruncatedJ> {
    if n < 1 {
        return Err(Error::WindowTooSmall { min: 1, got: n });
    }
    let alg = ElemAbGroupAlg::prime(2, r)?;
    let monomials: Vec<Vec<Vec<u32>>> = (0..=n as u32 + 1).map(|d| monomials_of_degree(r, d)).collect();
    let index = monomials
        .iter()
        .map(|ms| ms.iter().enumerate().map(|(k, m)| (m.clone(), k)).collect())
        .collect();
    let modules = (0..=n).map(|i| KModule::free(&alg, monomials[i].len())).collect();
    let mut j = TruncatedJ { alg, top: n, monomials, index, modules, differentials: Vec::new() };
    let reg = KModule::regular(&j.alg);
    let order = j.alg.order();
    j.differentials = (0..n)
        .map(|i| {
            let mut d = Matrix::zeros(reg.field(), j.rank(i + 1) * order, j.rank(i) * order);
            for (a, s) in j.monomials[i].iter().enumerate() {
                for k in 0..r {
                    let b = j.times_var(i, s, k);
                    add_block(&mut d, reg.action(k), b * order, a * order);
                }
            }
            d
        })
        .collect();
    Ok(j)
}

impl TruncatedJ {
    pub fn algebra(&self) -> &ElemAbGroupAlg<PrimeField> {
        &self.alg
    }

    pub fn r(&self) -> usize {
        self.alg.r()
    }

    /// The truncation degree `N`.
    pub fn top(&self) -> usize {
        self.top
    }

    /// Free rank of `J^i`, the number of degree `i` monomials.
    pub fn rank(&self, i: usize) -> usize {
        self.monomials[i].len()
    }

    pub fn ranks(&self) -> Vec<usize> {
        (0..=self.top).map(|i| self.rank(i)).collect()
    }

    /// Exponent vectors of the degree `i` monomials, highest power of `x_1` first.
    pub fn monomials(&self, i: usize) -> &[Vec<u32>] {
        &self.monomials[i]
    }

    pub fn module(&self, i: usize) -> &KModule<PrimeField> {
        &self.modules[i]
    }

    /// `d^i : J^i → J^{i+1}` for `i < N`.
    pub fn differential(&self, i: usize) -> &Matrix<PrimeField> {
        &self.differentials[i]
    }

    fn times_var(&self, i: usize, s: &[u32], k: usize) -> usize {
        let mut t = s.to_vec();
        t[k] += 1;
        self.index[i + 1][&t]
    }

    /// `w ⊗ 1` with `w = z_1⋯z_r`, the socle of `J^0`.
    pub fn socle_generator(&self) -> Vec<u32> {
        let mut v = vec![0; self.alg.order()];
        v[self.alg.order() - 1] = 1;
        v
    }

    /// Dimensions of `H^i(J)` for `0 ≤ i ≤ N`; the last one is uncertified.
    pub fn cohomology_dims(&self) -> Vec<usize> {
        let ranks: Vec<usize> = self.differentials.iter().map(Matrix::rank).collect();
        (0..=self.top)
            .map(|i| {
                let out = ranks.get(i).copied().unwrap_or(0);
                let inc = if i == 0 { 0 } else { ranks[i - 1] };
                self.modules[i].dim() - out - inc
            })
            .collect()
    }
}

/// `Hom_kE(J, I)` for a complex `I^0 → ... → I^T`, in degrees `-1..=T`.
///
/// A degree `n` element is a family `f_i : J^i → I^{i+n}`; each `f_i` is
/// stored as the images of the generators `g_s`, blocks of size `dim I^{i+n}`.
struct HomComplex<'a> {
    j: &'a TruncatedJ,
    targets: &'a [KModule<PrimeField>],
    layouts: Vec<Vec<(usize, usize)>>,
    dims: Vec<usize>,
    // D^n at index n + 1
    diffs: Vec<Matrix<PrimeField>>,
}

impl<'a> HomComplex<'a> {
    fn new(j: &'a TruncatedJ, targets: &'a [KModule<PrimeField>], target_diffs: &[Matrix<PrimeField>]) -> Self {
        let top = targets.len() as i64 - 1;
        debug_assert!(top <= j.top as i64);
        let mut layouts = Vec::new();
        let mut dims = Vec::new();
        for n in -1..=top + 1 {
            let mut off = 0;
            let mut layout = Vec::new();
            for i in (-n).max(0)..=top - n {
                layout.push((i as usize, off));
                off += j.rank(i as usize) * targets[(i + n) as usize].dim();
            }
            layouts.push(layout);
            dims.push(off);
        }
        let mut h = HomComplex { j, targets, layouts, dims, diffs: Vec::new() };
        let f = *j.alg.field();
        h.diffs = (-1..=top)
            .map(|n| {
                let mut d = Matrix::zeros(&f, h.dim(n + 1), h.dim(n));
                for &(i, off_t) in h.layout(n + 1) {
                    let q = (i as i64 + n + 1) as usize;
                    let sz = targets[q].dim();
                    for (s, mono) in j.monomials[i].iter().enumerate() {
                        let row = off_t + s * sz;
                        if i as i64 + n >= 0 {
                            let src_sz = targets[q - 1].dim();
                            let col = h.offset(n, i) + s * src_sz;
                            add_block(&mut d, &target_diffs[q - 1], row, col);
                        }
                        // f_{i+1}(d g_s) = Σ_k z_k f_{i+1}(g_{s x_k}); no signs in characteristic 2
                        for k in 0..j.r() {
                            let t = j.times_var(i, mono, k);
                            let col = h.offset(n, i + 1) + t * sz;
                            add_block(&mut d, targets[q].action(k), row, col);
                        }
                    }
                }
                d
            })
            .collect();
        h
    }

    fn layout(&self, n: i64) -> &[(usize, usize)] {
        &self.layouts[(n + 1) as usize]
    }

    fn dim(&self, n: i64) -> usize {
        self.dims[(n + 1) as usize]
    }

    fn offset(&self, n: i64, i: usize) -> usize {
        self.layout(n).iter().find(|c| c.0 == i).expect("component in range").1
    }

    fn differential(&self, n: i64) -> &Matrix<PrimeField> {
        &self.diffs[(n + 1) as usize]
    }

    /// Right multiplication by `x_k`, `(f·x_k)_i(g_s) = f_{i+1}(g_{s x_k})`.
    fn right_action(&self, n: i64, k: usize) -> Matrix<PrimeField> {
        let f = *self.j.alg.field();
        let mut m = Matrix::zeros(&f, self.dim(n + 1), self.dim(n));
        for &(i, off_t) in self.layout(n + 1) {
            let sz = self.targets[(i as i64 + n + 1) as usize].dim();
            for (s, mono) in self.j.monomials[i].iter().enumerate() {
                let t = self.j.times_var(i, mono, k);
                let col = self.offset(n, i + 1) + t * sz;
                for e in 0..sz {
                    m.set(off_t + s * sz + e, col + e, 1);
                }
            }
        }
        m
    }

    /// Right multiplication by the monomial `mono` of degree `n`, as a degree `n` element.
    fn monomial_element(&self, n: usize, mono: &[u32]) -> Vec<u32> {
        let mut v = vec![0; self.dim(n as i64)];
        let order = self.j.alg.order();
        for &(i, off) in self.layout(n as i64) {
            let sz = self.targets[i + n].dim();
            for (s, m) in self.j.monomials[i].iter().enumerate() {
                let prod: Vec<u32> = m.iter().zip(mono).map(|(a, b)| a + b).collect();
                let u = self.j.index[i + n][&prod];
                v[off + s * sz + u * order] = 1;
            }
        }
        v
    }

    fn cohomology(&self) -> Vec<Classes> {
        let top = self.targets.len() as i64 - 1;
        (0..=top).map(|n| Classes::new(self.differential(n - 1), self.differential(n))).collect()
    }
}

/// A basis of `ker D^n / im D^{n-1}` by representatives.
struct Classes {
    reps: Matrix<PrimeField>,
    // [basis of im D^{n-1} | reps]
    solver: Matrix<PrimeField>,
    boundary_rank: usize,
}

impl Classes {
    fn new(incoming: &Matrix<PrimeField>, outgoing: &Matrix<PrimeField>) -> Self {
        let cycles = outgoing.kernel_matrix();
        let joint = Matrix::hstack(&[incoming, &cycles]).expect("same height");
        let pivots = joint.pivot_columns();
        let (bnd, rep): (Vec<usize>, Vec<usize>) = pivots.into_iter().partition(|&c| c < incoming.cols());
        let boundary = incoming.select_columns(&bnd);
        let reps = joint.select_columns(&rep);
        let solver = Matrix::hstack(&[&boundary, &reps]).expect("same height");
        Classes { reps, solver, boundary_rank: bnd.len() }
    }

    fn dim(&self) -> usize {
        self.reps.cols()
    }

    /// Coordinates of the class of a cycle.
    fn coordinates(&self, v: &[u32]) -> Result<Vec<u32>> {
        let c = self.solver.solve(v)?.ok_or_else(|| Error::Internal("vector is not a cycle".into()))?;
        Ok(c[self.boundary_rank..].to_vec())
    }
}

/// Cohomology of `Hom_kE(J, I)` in degrees `0..=N` with the `x_i` actions.
#[derive(Clone, Debug, PartialEq)]
pub struct DGSWindow {
    /// The truncation degree `N`.
    pub window: usize,
    /// `dim H^n` for `0 ≤ n ≤ N`.
    pub dims: Vec<usize>,
    /// `actions[n][k]` is `x_{k+1} : H^n → H^{n+1}` for `n < N`.
    pub actions: Vec<Vec<Matrix<PrimeField>>>,
    /// Degrees up to and including this one are certified.
    pub certified: usize,
}

fn window_of(h: &HomComplex<'_>) -> Result<DGSWindow> {
    let classes = h.cohomology();
    let top = classes.len() - 1;
    let f = *h.j.alg.field();
    let mut actions = Vec::new();
    for n in 0..top {
        let mut per_var = Vec::new();
        for k in 0..h.j.r() {
            let x = h.right_action(n as i64, k);
            let images = x.mul(&classes[n].reps)?;
            let cols = images
                .columns()
                .iter()
                .map(|v| classes[n + 1].coordinates(v))
                .collect::<Result<Vec<_>>>()?;
            per_var.push(Matrix::from_columns(&f, classes[n + 1].dim(), &cols));
        }
        actions.push(per_var);
    }
    Ok(DGSWindow { window: top, dims: classes.iter().map(Classes::dim).collect(), actions, certified: top - 1 })
}

/// `Hom_kE(J, iM)` for an injective resolution `iM` truncated at `n`.
pub fn bgg_transform(m: &KModule<PrimeField>, n: usize) -> Result<DGSWindow> {
    let alg = m.algebra();
    if alg.p() != 2 {
        return Err(Error::Unsupported("the DG correspondence is only implemented for p = 2".into()));
    }
    if n < 1 {
        return Err(Error::WindowTooSmall { min: 1, got: n });
    }
    let j = build_j(alg.r(), n)?;
    let res = injective_resolution(m, n);
    let diffs: Vec<Matrix<PrimeField>> = res.differentials.iter().map(|d| d.matrix().clone()).collect();
    window_of(&HomComplex::new(&j, &res.modules, &diffs))
}

/// `H^0(J) = k·(w ⊗ 1)` and `H^i(J) = 0` for `1 ≤ i ≤ n - 1`.
pub fn eta_check(r: usize, n: usize) -> Result<bool> {
    if n < 2 {
        return Err(Error::WindowTooSmall { min: 2, got: n });
    }
    let j = build_j(r, n)?;
    let dims = j.cohomology_dims();
    let w_is_cycle = j.differential(0).mul_vec(&j.socle_generator())?.iter().all(|&c| c == 0);
    Ok(w_is_cycle && dims[0] == 1 && dims[1..n].iter().all(|&d| d == 0))
}

/// `S → Hom_kE(J, J)` is an isomorphism on cohomology in degrees `≤ n - 2`:
/// dimensions match `S^d` and the monomial classes are independent.
pub fn zeta_check(r: usize, n: usize) -> Result<bool> {
    if n < 2 {
        return Err(Error::WindowTooSmall { min: 2, got: n });
    }
    let j = build_j(r, n)?;
    let h = HomComplex::new(&j, &j.modules, &j.differentials);
    let classes = h.cohomology();
    let f = *j.alg.field();
    for (d, cl) in classes.iter().enumerate().take(n - 1) {
        let expected = j.rank(d);
        if cl.dim() != expected {
            return Ok(false);
        }
        let mut coords = Vec::new();
        for mono in j.monomials(d) {
            let v = h.monomial_element(d, mono);
            if !h.differential(d as i64).mul_vec(&v)?.iter().all(|&c| c == 0) {
                return Ok(false);
            }
            coords.push(cl.coordinates(&v)?);
        }
        if Matrix::from_columns(&f, cl.dim(), &coords).rank() != expected {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The window dimensions agree with `Ext^*(k, m)` on certified degrees.
pub fn compare_with_ext(m: &KModule<PrimeField>, n: usize) -> Result<bool> {
    let window = bgg_transform(m, n)?;
    let ext = ext_dims(&KModule::trivial(m.algebra()), m, window.certified)?;
    Ok(window.dims[..=window.certified] == ext[..])
}
