//! Projective covers, syzygies, minimal resolutions, Ext and Tate cohomology
//! dimensions, and Carlson's modules `L_ζ` for `p = 2`.

use crate::error::{Error, Result};
use crate::exactla::{Field, Matrix};
use crate::kmodule::{hom_basis, KModule, ModuleMap};

#[cfg(test)]
mod tests;

/// A minimal projective cover `P → M`. `P = kE^t` with `t = dim M/rad M`;
/// the `j`-th copy of `kE` is sent to `kE·m_j` for generators `m_j` chosen
/// greedily among the standard basis vectors outside `rad M`.
pub fn projective_cover<F: Field>(m: &KModule<F>) -> ModuleMap<F> {
    let alg = m.algebra();
    let f = m.field();
    let d = m.dim();
    if d == 0 {
        return ModuleMap::identity(m);
    }
    let rad = m.radical_span();
    let ident = Matrix::identity(f, d);
    let ext = Matrix::hstack(&[&rad, &ident]).expect("same height");
    let gens: Vec<usize> = ext.pivot_columns().into_iter().filter(|&c| c >= rad.cols()).map(|c| c - rad.cols()).collect();
    let order = alg.order();
    let p = KModule::free(alg, gens.len());
    let mut cols: Vec<Vec<F::Elem>> = Vec::with_capacity(gens.len() * order);
    for &g in &gens {
        for e in 0..order {
            let exps = alg.monomial(e);
            let mut v = ident.column(g);
            for (z, &k) in m.actions().iter().zip(&exps) {
                for _ in 0..k {
                    v = z.mul_vec(&v).expect("square");
                }
            }
            cols.push(v);
        }
    }
    ModuleMap::new(&p, m, Matrix::from_columns(f, d, &cols)).expect("cover is a homomorphism")
}

/// `Ω(M)` together with its inclusion into the projective cover.
pub fn omega_with_inclusion<F: Field>(m: &KModule<F>) -> (KModule<F>, ModuleMap<F>) {
    let cover = projective_cover(m);
    let (k, basis) = cover.kernel();
    let incl = ModuleMap::new(&k, cover.source(), basis).expect("inclusion is a homomorphism");
    (k, incl)
}

/// The kernel of the projective cover.
pub fn omega<F: Field>(m: &KModule<F>) -> KModule<F> {
    omega_with_inclusion(m).0
}

/// `Ω^{-1}(M) = Ω(M*)*`, the cokernel of the injective hull.
pub fn omega_inverse<F: Field>(m: &KModule<F>) -> KModule<F> {
    omega(&m.dual()).dual()
}

/// `Ω^n(M)` for any integer `n`, via `Ω^{-1}` when `n < 0`.
pub fn omega_power<F: Field>(m: &KModule<F>, n: i64) -> KModule<F> {
    let mut out = m.clone();
    for _ in 0..n.unsigned_abs() {
        out = if n > 0 { omega(&out) } else { omega_inverse(&out) };
    }
    out
}

/// Minimal free resolution `P_n → ... → P_0 → M`.
#[derive(Clone, Debug)]
pub struct MinimalResolution<F: Field> {
    pub target: KModule<F>,
    /// `b_i`, the rank of `P_i`.
    pub ranks: Vec<usize>,
    /// `∂_i : P_i → P_{i-1}` for `1 ≤ i ≤ n`, stored at index `i - 1`.
    pub boundaries: Vec<ModuleMap<F>>,
    pub augmentation: ModuleMap<F>,
}

impl<F: Field> MinimalResolution<F> {
    pub fn module(&self, i: usize) -> &KModule<F> {
        if i == 0 {
            self.augmentation.source()
        } else {
            self.boundaries[i - 1].source()
        }
    }
}

/// Resolution with `n + 1` free terms `P_0..P_n`.
pub fn minimal_resolution<F: Field>(m: &KModule<F>, n: usize) -> MinimalResolution<F> {
    let augmentation = projective_cover(m);
    let mut ranks = vec![augmentation.source().dim() / m.algebra().order()];
    let mut boundaries: Vec<ModuleMap<F>> = Vec::with_capacity(n);
    let mut prev = augmentation.clone();
    for _ in 0..n {
        let (k, basis) = prev.kernel();
        let cover = projective_cover(&k);
        let d = basis.mul(cover.matrix()).expect("shapes");
        let boundary = ModuleMap::new(cover.source(), prev.source(), d).expect("boundary is a homomorphism");
        ranks.push(cover.source().dim() / m.algebra().order());
        boundaries.push(boundary.clone());
        prev = boundary;
    }
    MinimalResolution { target: m.clone(), ranks, boundaries, augmentation }
}

/// Matrix of `Hom(∂, N) : Hom(P_{i-1}, N) → Hom(P_i, N)`, with
/// `Hom(kE^b, N) ≅ N^b` by evaluation on the generators `1_j`.
/// The block for generators `(k, j)` is `Σ_e c_e Z_N^e`, where `c_e` is the
/// coefficient of `z^e 1_j` in `∂(1_k)`.
fn hom_coboundary<F: Field>(boundary: &ModuleMap<F>, n: &KModule<F>) -> Matrix<F> {
    let alg = n.algebra();
    let f = n.field();
    let order = alg.order();
    let (bs, bt) = (boundary.source().dim() / order, boundary.target().dim() / order);
    let dn = n.dim();
    let powers: Vec<Matrix<F>> = (0..order)
        .map(|e| {
            let exps = alg.monomial(e);
            let mut acc = Matrix::identity(f, dn);
            for (z, &k) in n.actions().iter().zip(&exps) {
                acc = acc.mul(&z.pow(k).expect("square")).expect("square");
            }
            acc
        })
        .collect();
    let mut out = Matrix::zeros(f, bs * dn, bt * dn);
    for k in 0..bs {
        for j in 0..bt {
            let mut block = Matrix::zeros(f, dn, dn);
            for (e, pow) in powers.iter().enumerate() {
                let c = boundary.matrix().get(j * order + e, k * order);
                if !f.is_zero(c) {
                    block = block.add(&pow.scale(c)).expect("square");
                }
            }
            for a in 0..dn {
                for b in 0..dn {
                    out.set(k * dn + a, j * dn + b, block.get(a, b).clone());
                }
            }
        }
    }
    out
}

/// `dim Ext^i(M, N)` for `0 ≤ i ≤ max`, from `Hom(P_•, N)` of a minimal resolution of `M`.
pub fn ext_dims<F: Field>(m: &KModule<F>, n: &KModule<F>, max: usize) -> Result<Vec<usize>> {
    if m.algebra() != n.algebra() {
        return Err(Error::AlgebraMismatch);
    }
    let res = minimal_resolution(m, max + 1);
    Ok(ext_dims_from(&res, n, max))
}

pub(crate) fn ext_dims_from<F: Field>(res: &MinimalResolution<F>, n: &KModule<F>, max: usize) -> Vec<usize> {
    let ranks: Vec<usize> = res.boundaries.iter().map(|b| hom_coboundary(b, n).rank()).collect();
    (0..=max)
        .map(|i| {
            let incoming = if i == 0 { 0 } else { ranks[i - 1] };
            res.ranks[i] * n.dim() - ranks[i] - incoming
        })
        .collect()
}

/// Flattened matrices `π ∘ g` for a basis `g` of `Hom(M, P(N))`.
fn projective_factor_span<F: Field>(m: &KModule<F>, n: &KModule<F>) -> Result<Matrix<F>> {
    let cover = projective_cover(n);
    let f = m.field();
    let cols: Vec<Vec<F::Elem>> = hom_basis(m, cover.source())?
        .iter()
        .map(|g| cover.matrix().mul(g).expect("shapes").to_rows().concat())
        .collect();
    Ok(Matrix::from_columns(f, n.dim() * m.dim(), &cols))
}

/// `dim Hom(M, N)` minus the dimension of the maps factoring through a projective.
pub fn stable_hom_dim<F: Field>(m: &KModule<F>, n: &KModule<F>) -> Result<usize> {
    let total = hom_basis(m, n)?.len();
    if m.dim() == 0 || n.dim() == 0 {
        return Ok(0);
    }
    Ok(total - projective_factor_span(m, n)?.rank())
}

/// `dim Hom_stable(Ω^k M, N)`, the Tate cohomology dimension in degree `k`.
pub fn tate_dim<F: Field>(m: &KModule<F>, n: &KModule<F>, k: i64) -> Result<usize> {
    stable_hom_dim(&omega_power(m, k), n)
}

/// A morphism in the stable module category, represented by a module map.
#[derive(Clone, Debug)]
pub struct StableMapClass<F: Field> {
    pub representative: ModuleMap<F>,
}

impl<F: Field> StableMapClass<F> {
    pub fn new(representative: ModuleMap<F>) -> Self {
        Self { representative }
    }

    /// Whether the representative factors through a projective module.
    pub fn is_zero(&self) -> Result<bool> {
        factors_through_projective(&self.representative)
    }

    pub fn stably_equal(&self, other: &Self) -> Result<bool> {
        factors_through_projective(&self.representative.sub(&other.representative)?)
    }
}

/// `f : M → N` factors through a projective iff it factors through `P(N) → N`.
pub fn factors_through_projective<F: Field>(f: &ModuleMap<F>) -> Result<bool> {
    let (m, n) = (f.source(), f.target());
    if f.is_zero() {
        return Ok(true);
    }
    let span = projective_factor_span(m, n)?;
    Ok(span.solve(&f.matrix().to_rows().concat())?.is_some())
}

/// `Ω(f) : Ω(M) → Ω(N)`, obtained by lifting `f` through the projective
/// covers and restricting to the kernels. Well defined up to maps factoring
/// through projectives.
pub fn omega_of_map<F: Field>(f: &ModuleMap<F>) -> Result<ModuleMap<F>> {
    let (m, n) = (f.source(), f.target());
    let (om, incl_m) = omega_with_inclusion(m);
    let (on, incl_n) = omega_with_inclusion(n);
    let cover_m = projective_cover(m);
    let cover_n = projective_cover(n);
    let alg = m.algebra();
    let order = alg.order();
    let pm = cover_m.source();
    let pn = cover_n.source();
    let field = m.field();
    let gens = pm.dim() / order;

    // y_j ∈ P(N) with π_N(y_j) = f(π_M(1_j))
    let images = f.matrix().mul(cover_m.matrix())?;
    let mut lift_cols: Vec<Vec<F::Elem>> = vec![Vec::new(); pm.dim()];
    for j in 0..gens {
        let target = images.column(j * order);
        let y = cover_n
            .matrix()
            .solve(&target)?
            .ok_or_else(|| Error::Internal("projective cover is not surjective".into()))?;
        for e in 0..order {
            let exps = alg.monomial(e);
            let mut v = y.clone();
            for (z, &k) in pn.actions().iter().zip(&exps) {
                for _ in 0..k {
                    v = z.mul_vec(&v)?;
                }
            }
            lift_cols[j * order + e] = v;
        }
    }
    let lift = Matrix::from_columns(field, pn.dim(), &lift_cols);
    let restricted = lift.mul(incl_m.matrix())?;
    let coords = if on.dim() == 0 {
        Matrix::zeros(field, 0, om.dim())
    } else {
        incl_n.matrix().left_inverse()?.mul(&restricted)?
    };
    if !incl_n.matrix().mul(&coords)?.equals(&restricted) {
        return Err(Error::Internal("lifted map leaves the syzygy".into()));
    }
    ModuleMap::new(&om, &on, coords)
}

/// Carlson's module `L_{ζ^n}` for the degree-one class `ζ_c`, `p = 2`.
///
/// `ζ_c : Ω(k) = rad kE → k` reads off `Σ c_i·(coefficient of z_i)`. The
/// power `ζ^n = ζ ∘ Ωζ ∘ ... ∘ Ω^{n-1}ζ : Ω^n(k) → k` is built by repeated
/// lifting, and the result is its kernel with free summands removed.
pub fn carlson_l<F: Field>(alg: &crate::kmodule::ElemAbGroupAlg<F>, c: &[F::Elem], n: usize) -> Result<KModule<F>> {
    let f = alg.field();
    if alg.p() != 2 {
        return Err(Error::Unsupported("Carlson modules are only built for p = 2".into()));
    }
    if c.len() != alg.r() || c.iter().all(|x| f.is_zero(x)) {
        return Err(Error::BadAlpha);
    }
    if n == 0 {
        return Err(Error::Unsupported("Carlson modules need n >= 1".into()));
    }
    let k = KModule::trivial(alg);
    let (om, incl) = omega_with_inclusion(&k);
    let mut row = vec![f.zero(); om.dim()];
    for (i, ci) in c.iter().enumerate() {
        let mut exps = vec![0; alg.r()];
        exps[i] = 1;
        let idx = alg.monomial_index(&exps);
        for (b, slot) in row.iter_mut().enumerate() {
            *slot = f.add(slot, &f.mul(ci, incl.matrix().get(idx, b)));
        }
    }
    let zeta = ModuleMap::new(&om, &k, Matrix::from_rows(f, vec![row])?)?;
    let mut power = zeta.clone();
    let mut shifted = zeta;
    for _ in 1..n {
        shifted = omega_of_map(&shifted)?;
        power = power.compose(&shifted)?;
    }
    Ok(power.kernel().0.strip_free())
}

/// Minimal injective resolution `0 → M → I^0 → ... → I^n`, the dual of a
/// minimal projective resolution of `M*`.
#[derive(Clone, Debug)]
pub struct InjectiveResolution<F: Field> {
    pub source: KModule<F>,
    pub modules: Vec<KModule<F>>,
    /// `M → I^0`.
    pub coaugmentation: ModuleMap<F>,
    /// `I^j → I^{j+1}` at index `j`.
    pub differentials: Vec<ModuleMap<F>>,
}

impl<F: Field> InjectiveResolution<F> {
    /// `I^j ≅ kE^{b_j}`.
    pub fn ranks(&self) -> Vec<usize> {
        let order = self.source.algebra().order();
        self.modules.iter().map(|m| m.dim() / order).collect()
    }
}

pub fn injective_resolution<F: Field>(m: &KModule<F>, n: usize) -> InjectiveResolution<F> {
    let res = minimal_resolution(&m.dual(), n);
    let modules: Vec<KModule<F>> = (0..=n).map(|i| res.module(i).dual()).collect();
    let coaugmentation = ModuleMap::new(m, &modules[0], res.augmentation.matrix().transpose())
        .expect("dual of a homomorphism");
    let differentials = res
        .boundaries
        .iter()
        .enumerate()
        .map(|(j, b)| ModuleMap::new(&modules[j], &modules[j + 1], b.matrix().transpose()).expect("dual of a homomorphism"))
        .collect();
    InjectiveResolution { source: m.clone(), modules, coaugmentation, differentials }
}
