use crate::error::{Error, Result};
use crate::exactla::{Field, Matrix, PrimeField};

/// Largest group order `p^r` accepted; the regular module is dense of this dimension.
pub const MAX_GROUP_ORDER: usize = 1024;

/// The group algebra `kE = k[z_1..z_r]/(z_i^p)` of `E = (Z/p)^r` over `field`.
#[derive(Clone, Debug, PartialEq)]
pub struct ElemAbGroupAlg<F: Field> {
    p: u32,
    r: usize,
    field: F,
}

impl ElemAbGroupAlg<PrimeField> {
    pub fn prime(p: u64, r: usize) -> Result<Self> {
        Self::new(PrimeField::new(p)?, r)
    }
}

impl<F: Field> ElemAbGroupAlg<F> {
    pub fn new(field: F, r: usize) -> Result<Self> {
        let p = field.characteristic();
        if r == 0 {
            return Err(Error::Unsupported("elementary abelian group of rank 0".into()));
        }
        let order = (p as usize).checked_pow(r as u32).filter(|&n| n <= MAX_GROUP_ORDER);
        if order.is_none() {
            return Err(Error::SizeLimit(format!("group order {p}^{r} exceeds {MAX_GROUP_ORDER}")));
        }
        Ok(Self { p, r, field })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    /// `|E| = p^r`, the dimension of `kE`.
    pub fn order(&self) -> usize {
        (self.p as usize).pow(self.r as u32)
    }

    /// Same field and prime, rank `r`.
    pub fn with_rank(&self, r: usize) -> Result<Self> {
        Self::new(self.field.clone(), r)
    }

    /// Exponent vector of the `idx`-th monomial of the standard basis of `kE`;
    /// `e_1` is the least significant digit.
    pub fn monomial(&self, mut idx: usize) -> Vec<u32> {
        let p = self.p as usize;
        (0..self.r)
            .map(|_| {
                let d = (idx % p) as u32;
                idx /= p;
                d
            })
            .collect()
    }

    pub fn monomial_index(&self, exps: &[u32]) -> usize {
        exps.iter().rev().fold(0, |acc, &e| acc * self.p as usize + e as usize)
    }
}

/// Whether action matrices are given as group elements `g_i` or as `z_i = g_i - 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Form {
    G,
    Z,
}

/// A finite-dimensional `kE`-module, stored through the actions `Z_i` of `z_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct KModule<F: Field> {
    alg: ElemAbGroupAlg<F>,
    dim: usize,
    actions: Vec<Matrix<F>>,
}

impl<F: Field> KModule<F> {
    /// Build from `r` matrices in either form; checks commutation and `Z_i^p = 0`.
    pub fn from_matrices(alg: &ElemAbGroupAlg<F>, mats: Vec<Matrix<F>>, form: Form) -> Result<Self> {
        if mats.len() != alg.r {
            return Err(Error::WrongActionCount { expected: alg.r, got: mats.len() });
        }
        let dim = mats.first().map_or(0, Matrix::rows);
        for (i, m) in mats.iter().enumerate() {
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::BadActionShape { index: i });
            }
            if m.field() != &alg.field {
                return Err(Error::FieldMismatch(format!("matrix {i} is over {}", m.field().descriptor())));
            }
        }
        let actions = match form {
            Form::Z => mats,
            Form::G => {
                let ident = Matrix::identity(&alg.field, dim);
                for (i, g) in mats.iter().enumerate() {
                    if !g.pow(alg.p)?.equals(&ident) {
                        return Err(Error::NotUnipotent { index: i });
                    }
                }
                mats.iter().map(|g| g.sub(&ident)).collect::<Result<_>>()?
            }
        };
        let m = Self { alg: alg.clone(), dim, actions };
        m.validate()?;
        Ok(m)
    }

    /// Check that the `Z_i` commute pairwise and satisfy `Z_i^p = 0`.
    pub fn validate(&self) -> Result<()> {
        for (i, a) in self.actions.iter().enumerate() {
            if !a.pow(self.alg.p)?.is_zero() {
                return Err(Error::NotNilpotent { index: i });
            }
        }
        for (i, a) in self.actions.iter().enumerate() {
            for (j, b) in self.actions.iter().enumerate().skip(i + 1) {
                if !a.mul(b)?.equals(&b.mul(a)?) {
                    return Err(Error::NonCommuting { i, j });
                }
            }
        }
        Ok(())
    }

    /// Internal constructor for actions known to be valid.
    pub(crate) fn from_valid(alg: &ElemAbGroupAlg<F>, dim: usize, actions: Vec<Matrix<F>>) -> Self {
        debug_assert_eq!(actions.len(), alg.r);
        Self { alg: alg.clone(), dim, actions }
    }

    pub fn zero(alg: &ElemAbGroupAlg<F>) -> Self {
        Self::from_valid(alg, 0, vec![Matrix::zeros(&alg.field, 0, 0); alg.r])
    }

    /// `k^n` with trivial action.
    pub fn trivial_sum(alg: &ElemAbGroupAlg<F>, n: usize) -> Self {
        Self::from_valid(alg, n, vec![Matrix::zeros(&alg.field, n, n); alg.r])
    }

    pub fn trivial(alg: &ElemAbGroupAlg<F>) -> Self {
        Self::trivial_sum(alg, 1)
    }

    /// `kE` on the monomial basis `z^e`.
    pub fn regular(alg: &ElemAbGroupAlg<F>) -> Self {
        let n = alg.order();
        let f = &alg.field;
        let actions = (0..alg.r)
            .map(|i| {
                let mut z = Matrix::zeros(f, n, n);
                for src in 0..n {
                    let mut e = alg.monomial(src);
                    if e[i] + 1 < alg.p {
                        e[i] += 1;
                        z.set(alg.monomial_index(&e), src, f.one());
                    }
                }
                z
            })
            .collect();
        Self::from_valid(alg, n, actions)
    }

    /// `kE^n`.
    pub fn free(alg: &ElemAbGroupAlg<F>, n: usize) -> Self {
        Self::direct_sum_all(alg, &vec![Self::regular(alg); n])
    }

    pub fn algebra(&self) -> &ElemAbGroupAlg<F> {
        &self.alg
    }

    pub fn field(&self) -> &F {
        &self.alg.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn action(&self, i: usize) -> &Matrix<F> {
        &self.actions[i]
    }

    pub fn actions(&self) -> &[Matrix<F>] {
        &self.actions
    }

    /// Actions in the requested form.
    pub fn matrices(&self, form: Form) -> Vec<Matrix<F>> {
        match form {
            Form::Z => self.actions.clone(),
            Form::G => {
                let ident = Matrix::identity(self.field(), self.dim);
                self.actions.iter().map(|z| z.add(&ident).expect("square")).collect()
            }
        }
    }

    fn same_algebra(&self, other: &Self) -> Result<()> {
        if self.alg != other.alg {
            return Err(Error::AlgebraMismatch);
        }
        Ok(())
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        self.same_algebra(other)?;
        Ok(Self::direct_sum_all(&self.alg, &[self.clone(), other.clone()]))
    }

    pub fn direct_sum_all(alg: &ElemAbGroupAlg<F>, parts: &[Self]) -> Self {
        let dim = parts.iter().map(|m| m.dim).sum();
        let actions = (0..alg.r)
            .map(|i| {
                let blocks: Vec<&Matrix<F>> = parts.iter().map(|m| &m.actions[i]).collect();
                Matrix::block_diag(&alg.field, &blocks)
            })
            .collect();
        Self::from_valid(alg, dim, actions)
    }

    /// `M ⊗_k N` with `g` acting diagonally: `z ↦ Z⊗I + I⊗Z' + Z⊗Z'`.
    /// The basis vector `m_a ⊗ n_b` has index `a * dim N + b`.
    pub fn tensor_diag(&self, other: &Self) -> Result<Self> {
        self.same_algebra(other)?;
        let f = self.field();
        let (im, io) = (Matrix::identity(f, self.dim), Matrix::identity(f, other.dim));
        let actions = self
            .actions
            .iter()
            .zip(&other.actions)
            .map(|(z, w)| z.kron(&io).add(&im.kron(w))?.add(&z.kron(w)))
            .collect::<Result<_>>()?;
        Ok(Self::from_valid(&self.alg, self.dim * other.dim, actions))
    }

    /// `Hom_k(M, k)` with `g` acting by the inverse transpose.
    pub fn dual(&self) -> Self {
        let f = self.field();
        let actions = self
            .actions
            .iter()
            .map(|z| {
                let ident = Matrix::identity(f, self.dim);
                // (I + Z)^{-1} = Σ_{j<p} (-Z)^j
                let neg = z.scale(&f.from_int(-1));
                let mut inv = ident.clone();
                let mut power = ident.clone();
                for _ in 1..self.alg.p {
                    power = power.mul(&neg).expect("square");
                    inv = inv.add(&power).expect("square");
                }
                inv.transpose().sub(&ident).expect("square")
            })
            .collect();
        Self::from_valid(&self.alg, self.dim, actions)
    }

    /// `Hom_k(M, N) = M* ⊗ N`. The basis vector with index `a * dim N + b`
    /// is the map sending `m_a` to `n_b`.
    pub fn hom_module(&self, other: &Self) -> Result<Self> {
        self.dual().tensor_diag(other)
    }

    /// Dimension of the simultaneous kernel of all `Z_i`.
    pub fn fixed_point_dim(&self) -> usize {
        self.dim - self.radical_dual_rank()
    }

    fn radical_dual_rank(&self) -> usize {
        let refs: Vec<&Matrix<F>> = self.actions.iter().collect();
        if self.dim == 0 {
            return 0;
        }
        Matrix::vstack(&refs).expect("same width").rank()
    }

    /// Basis of the simultaneous kernel of all `Z_i`.
    pub fn socle_basis(&self) -> Vec<Vec<F::Elem>> {
        if self.dim == 0 {
            return Vec::new();
        }
        let refs: Vec<&Matrix<F>> = self.actions.iter().collect();
        Matrix::vstack(&refs).expect("same width").kernel_basis()
    }

    /// `rad M = Σ Z_i M` as the columns of `[Z_1 | ... | Z_r]`.
    pub fn radical_span(&self) -> Matrix<F> {
        let refs: Vec<&Matrix<F>> = self.actions.iter().collect();
        Matrix::hstack(&refs).expect("same height")
    }

    /// `dim M / rad M`, the number of generators of a minimal generating set.
    pub fn top_dim(&self) -> usize {
        if self.dim == 0 {
            return 0;
        }
        self.dim - self.radical_span().rank()
    }

    /// `X(α) = Σ α_i Z_i`, the action of `x_α` generating a cyclic shifted subgroup.
    pub fn restrict_shifted(&self, alpha: &[F::Elem]) -> Result<Matrix<F>> {
        let f = self.field();
        if alpha.len() != self.alg.r || alpha.iter().all(|a| f.is_zero(a)) {
            return Err(Error::BadAlpha);
        }
        let mut x = Matrix::zeros(f, self.dim, self.dim);
        for (a, z) in alpha.iter().zip(&self.actions) {
            if !f.is_zero(a) {
                x = x.add(&z.scale(a))?;
            }
        }
        Ok(x)
    }

    /// Whether `M` restricted to `⟨1 + x_α⟩` is free, i.e.
    /// `rank X(α) = (p-1)·dim/p`. Never true when `p ∤ dim`.
    pub fn shifted_free(&self, alpha: &[F::Elem]) -> Result<bool> {
        let x = self.restrict_shifted(alpha)?;
        let p = self.alg.p as usize;
        if !self.dim.is_multiple_of(p) {
            return Ok(false);
        }
        Ok(x.rank() == (p - 1) * self.dim / p)
    }

    fn check_subset(&self, s: &[usize]) -> Result<()> {
        let mut sorted = s.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if s.is_empty() || sorted.len() != s.len() || s.iter().any(|&i| i >= self.alg.r) {
            return Err(Error::BadSubset);
        }
        Ok(())
    }

    /// Restriction to the subgroup generated by `g_i`, `i ∈ s` (0-based), in the order given.
    pub fn restrict_subset(&self, s: &[usize]) -> Result<Self> {
        self.check_subset(s)?;
        let alg = self.alg.with_rank(s.len())?;
        let actions = s.iter().map(|&i| self.actions[i].clone()).collect();
        Ok(Self::from_valid(&alg, self.dim, actions))
    }

    /// Induction from the subgroup generated by `g_i`, `i ∈ s`, to `full`.
    /// `self` lives over the rank-`|s|` algebra with `z_{s[k]}` acting as its
    /// `k`-th generator. Basis: `z^f ⊗ m_b` with `f` a monomial in the
    /// remaining generators, index `f * dim + b`.
    pub fn induce_subset(&self, s: &[usize], full: &ElemAbGroupAlg<F>) -> Result<Self> {
        if s.len() != self.alg.r || full.field != self.alg.field {
            return Err(Error::AlgebraMismatch);
        }
        Self::trivial(full).check_subset(s)?;
        let rest: Vec<usize> = (0..full.r).filter(|i| !s.contains(i)).collect();
        let f = &full.field;
        let coset_alg = ElemAbGroupAlg { p: full.p, r: rest.len(), field: f.clone() };
        let cosets = if rest.is_empty() {
            Self::trivial(&self.alg.with_rank(1)?)
        } else {
            Self::regular(&coset_alg)
        };
        let c = cosets.dim;
        let ic = Matrix::identity(f, c);
        let im = Matrix::identity(f, self.dim);
        let actions = (0..full.r)
            .map(|i| match s.iter().position(|&j| j == i) {
                Some(k) => ic.kron(&self.actions[k]),
                None => {
                    let k = rest.iter().position(|&j| j == i).expect("complement index");
                    cosets.actions[k].kron(&im)
                }
            })
            .collect();
        Ok(Self::from_valid(full, c * self.dim, actions))
    }

    /// Free modules are exactly those with `dim M = p^r · dim(M / rad M)`.
    pub fn is_projective(&self) -> bool {
        self.dim == self.alg.order() * self.top_dim()
    }

    /// `w = Π Z_i^{p-1}`, the action of the socle generator of `kE`.
    pub fn socle_element(&self) -> Matrix<F> {
        let mut w = Matrix::identity(self.field(), self.dim);
        for z in &self.actions {
            w = w.mul(&z.pow(self.alg.p - 1).expect("square")).expect("square");
        }
        w
    }

    /// Number of `kE` summands in a decomposition of `M`: the rank of `w`.
    pub fn free_rank(&self) -> usize {
        if self.dim == 0 {
            return 0;
        }
        self.socle_element().rank()
    }

    /// A complement to a maximal free summand.
    ///
    /// Generators `m_j` are the basis vectors whose `w`-images are chosen
    /// greedily from the left. With functionals `φ_j` dual to `w·m_j`, the map
    /// `θ_j(x) = Σ_e φ_j(z^{(p-1)-e} x) z^e` is a homomorphism `M → kE`, and
    /// the common kernel of the `θ_j` complements `⊕ kE·m_j`.
    pub fn strip_free(&self) -> Self {
        let w = self.socle_element();
        let gens = if self.dim == 0 { Vec::new() } else { w.pivot_columns() };
        if gens.is_empty() {
            return self.clone();
        }
        let f = self.field();
        let images = w.select_columns(&gens);
        let phi = images.left_inverse().expect("independent socle images");
        let order = self.alg.order();
        let mut theta_rows: Vec<Vec<F::Elem>> = Vec::with_capacity(gens.len() * order);
        for e in 0..order {
            let exps = self.alg.monomial(e);
            let mut op = Matrix::identity(f, self.dim);
            for (z, &ei) in self.actions.iter().zip(&exps) {
                op = op.mul(&z.pow(self.alg.p - 1 - ei).expect("square")).expect("square");
            }
            let block = phi.mul(&op).expect("shapes");
            theta_rows.extend(block.to_rows());
        }
        let theta = Matrix::from_rows(f, theta_rows).expect("rectangular");
        self.submodule(&theta.kernel_matrix()).expect("kernel of a homomorphism is a submodule")
    }

    /// The submodule spanned by the independent columns of `basis`, with the
    /// action written in that basis.
    pub fn submodule(&self, basis: &Matrix<F>) -> Result<Self> {
        let n = basis.cols();
        if n == 0 {
            return Ok(Self::zero(&self.alg));
        }
        let left = basis.left_inverse()?;
        let mut actions = Vec::with_capacity(self.alg.r);
        for z in &self.actions {
            let zb = z.mul(basis)?;
            let a = left.mul(&zb)?;
            if !basis.mul(&a)?.equals(&zb) {
                return Err(Error::Internal("subspace is not invariant".into()));
            }
            actions.push(a);
        }
        Ok(Self::from_valid(&self.alg, n, actions))
    }

    /// The submodule generated by `vectors`: the span of all `z^e v`.
    pub fn generated_submodule(&self, vectors: &[Vec<F::Elem>]) -> Result<Self> {
        let f = self.field();
        let mut span: Vec<Vec<F::Elem>> = Vec::new();
        let mut frontier: Vec<Vec<F::Elem>> = vectors.to_vec();
        while let Some(v) = frontier.pop() {
            let mut candidate = span.clone();
            candidate.push(v.clone());
            if Matrix::from_columns(f, self.dim, &candidate).rank() == candidate.len() {
                span.push(v.clone());
                for z in &self.actions {
                    frontier.push(z.mul_vec(&v)?);
                }
            }
        }
        self.submodule(&Matrix::from_columns(f, self.dim, &span))
    }
}
