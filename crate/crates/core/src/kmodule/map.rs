use super::module::KModule;
use crate::error::{Error, Result};
use crate::exactla::{Field, Matrix};

/// A `kE`-linear map, stored as a `(dim target) × (dim source)` matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct ModuleMap<F: Field> {
    source: KModule<F>,
    target: KModule<F>,
    matrix: Matrix<F>,
}

impl<F: Field> ModuleMap<F> {
    pub fn new(source: &KModule<F>, target: &KModule<F>, matrix: Matrix<F>) -> Result<Self> {
        if source.algebra() != target.algebra() {
            return Err(Error::AlgebraMismatch);
        }
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(Error::Shape(format!(
                "map matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.dim(),
                source.dim()
            )));
        }
        let m = Self { source: source.clone(), target: target.clone(), matrix };
        if !m.is_equivariant() {
            return Err(Error::NotEquivariant);
        }
        Ok(m)
    }

    pub(crate) fn from_valid(source: &KModule<F>, target: &KModule<F>, matrix: Matrix<F>) -> Self {
        debug_assert!(matrix.rows() == target.dim() && matrix.cols() == source.dim());
        Self { source: source.clone(), target: target.clone(), matrix }
    }

    pub fn identity(m: &KModule<F>) -> Self {
        Self::from_valid(m, m, Matrix::identity(m.field(), m.dim()))
    }

    pub fn zero(source: &KModule<F>, target: &KModule<F>) -> Self {
        Self::from_valid(source, target, Matrix::zeros(source.field(), target.dim(), source.dim()))
    }

    pub fn source(&self) -> &KModule<F> {
        &self.source
    }

    pub fn target(&self) -> &KModule<F> {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix<F> {
        &self.matrix
    }

    /// `matrix · Z_i^source = Z_i^target · matrix` for every `i`.
    pub fn is_equivariant(&self) -> bool {
        self.source.actions().iter().zip(self.target.actions()).all(|(zs, zt)| {
            self.matrix.mul(zs).expect("shapes").equals(&zt.mul(&self.matrix).expect("shapes"))
        })
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &ModuleMap<F>) -> Result<ModuleMap<F>> {
        if other.target != self.source {
            return Err(Error::Shape("composed maps do not match".into()));
        }
        Ok(Self::from_valid(&other.source, &self.target, self.matrix.mul(&other.matrix)?))
    }

    pub fn sub(&self, other: &ModuleMap<F>) -> Result<ModuleMap<F>> {
        if other.source != self.source || other.target != self.target {
            return Err(Error::Shape("maps have different source or target".into()));
        }
        Ok(Self::from_valid(&self.source, &self.target, self.matrix.sub(&other.matrix)?))
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    /// The kernel as a module, with the inclusion matrix.
    pub fn kernel(&self) -> (KModule<F>, Matrix<F>) {
        let basis = self.matrix.kernel_matrix();
        let k = self.source.submodule(&basis).expect("kernel is invariant");
        (k, basis)
    }
}

/// Basis of `Hom_{kE}(m, n)` from the linear system `F Z_i = Z'_i F`.
/// Unknown `F[b][a]` has index `b * dim m + a`.
pub fn hom_basis<F: Field>(m: &KModule<F>, n: &KModule<F>) -> Result<Vec<Matrix<F>>> {
    if m.algebra() != n.algebra() {
        return Err(Error::AlgebraMismatch);
    }
    let f = m.field();
    let (dm, dn) = (m.dim(), n.dim());
    let unknowns = dm * dn;
    if unknowns == 0 {
        return Ok(Vec::new());
    }
    let mut sys = Matrix::zeros(f, m.algebra().r() * unknowns, unknowns);
    for (i, (zm, zn)) in m.actions().iter().zip(n.actions()).enumerate() {
        let base = i * unknowns;
        for b in 0..dn {
            for a in 0..dm {
                let row = base + b * dm + a;
                // (F Zm)[b][a] = Σ_c F[b][c] Zm[c][a]
                for c in 0..dm {
                    let v = zm.get(c, a);
                    if !f.is_zero(v) {
                        let col = b * dm + c;
                        let s = f.add(sys.get(row, col), v);
                        sys.set(row, col, s);
                    }
                }
                // -(Zn F)[b][a] = -Σ_c Zn[b][c] F[c][a]
                for c in 0..dn {
                    let v = zn.get(b, c);
                    if !f.is_zero(v) {
                        let col = c * dm + a;
                        let s = f.sub(sys.get(row, col), v);
                        sys.set(row, col, s);
                    }
                }
            }
        }
    }
    Ok(sys
        .kernel_basis()
        .into_iter()
        .map(|v| Matrix::from_fn(f, dn, dm, |b, a| v[b * dm + a].clone()))
        .collect())
}
