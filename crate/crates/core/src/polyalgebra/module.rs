use std::fmt;

use super::groebner::{Engine, Vector};
use super::ideal::Ideal;
use super::poly::{MonomialOrder, MultiPoly, RingRef};
use crate::error::{Error, Result};

/// Dense matrix of polynomials, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyMatrix {
    ring: RingRef,
    rows: usize,
    cols: usize,
    entries: Vec<MultiPoly>,
}

impl PolyMatrix {
    pub fn zeros(ring: &RingRef, rows: usize, cols: usize) -> Self {
        Self { ring: ring.clone(), rows, cols, entries: vec![MultiPoly::zero(ring); rows * cols] }
    }

    pub fn identity(ring: &RingRef, n: usize) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.set(i, i, MultiPoly::one(ring));
        }
        m
    }

    pub fn from_rows(ring: &RingRef, rows: Vec<Vec<MultiPoly>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(ring, rows.len(), cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(Error::Shape(format!("row {i} has {} entries, expected {cols}", row.len())));
            }
            for (j, e) in row.into_iter().enumerate() {
                if e.ring().as_ref() != ring.as_ref() {
                    return Err(Error::RingMismatch(format!("entry {e} is not in {ring}")));
                }
                m.set(i, j, e);
            }
        }
        Ok(m)
    }

    /// Matrix whose columns are `cols`, each of length `rows`.
    pub fn from_columns(ring: &RingRef, rows: usize, cols: &[Vec<MultiPoly>]) -> Self {
        let mut m = Self::zeros(ring, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length");
            for (i, e) in c.iter().enumerate() {
                m.set(i, j, e.clone());
            }
        }
        m
    }

    /// Parse rows of polynomial strings.
    pub fn parse(ring: &RingRef, rows: &[Vec<&str>]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|s| MultiPoly::parse(ring, s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(ring, rows)
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &MultiPoly {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: MultiPoly) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn column(&self, j: usize) -> Vec<MultiPoly> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<MultiPoly>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<MultiPoly>> {
        (0..self.rows).map(|i| (0..self.cols).map(|j| self.get(i, j).clone()).collect()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(MultiPoly::is_zero)
    }

    pub fn mul(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(&self.ring, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let s = out.get(i, j) + &(a * b);
                        out.set(i, j, s);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[MultiPoly]) -> Vec<MultiPoly> {
        assert_eq!(v.len(), self.cols, "vector length");
        (0..self.rows)
            .map(|i| {
                (0..self.cols).fold(MultiPoly::zero(&self.ring), |acc, j| &acc + &(self.get(i, j) * &v[j]))
            })
            .collect()
    }

    /// Kronecker product, index `(i * other.rows + k, j * other.cols + l)`.
    pub fn kron(&self, other: &PolyMatrix) -> PolyMatrix {
        let mut out = Self::zeros(&self.ring, self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out.set(i * other.rows + k, j * other.cols + l, a * other.get(k, l));
                    }
                }
            }
        }
        out
    }

    pub fn scale(&self, c: &MultiPoly) -> PolyMatrix {
        let mut out = self.clone();
        for e in &mut out.entries {
            *e = &*e * c;
        }
        out
    }

    pub fn add(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::Shape("matrix sum of different shapes".into()));
        }
        let mut out = self.clone();
        for (e, f) in out.entries.iter_mut().zip(&other.entries) {
            *e = &*e + f;
        }
        Ok(out)
    }

    /// Entries as strings, row by row.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows).map(|i| (0..self.cols).map(|j| self.get(i, j).to_string()).collect()).collect()
    }
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.to_strings().into_iter().map(|r| format!("[{}]", r.join(", "))).collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

/// Submodule of `A^rank` given by generating vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct FreeSubmodule {
    ring: RingRef,
    rank: usize,
    gens: Vec<Vec<MultiPoly>>,
}

impl FreeSubmodule {
    pub fn new(ring: &RingRef, rank: usize, gens: Vec<Vec<MultiPoly>>) -> Result<Self> {
        for g in &gens {
            if g.len() != rank {
                return Err(Error::Shape(format!("generator of length {} in rank {rank}", g.len())));
            }
            if let Some(e) = g.iter().find(|e| e.ring().as_ref() != ring.as_ref()) {
                return Err(Error::RingMismatch(format!("entry {e} is not in {ring}")));
            }
        }
        Ok(Self { ring: ring.clone(), rank, gens })
    }

    pub fn zero(ring: &RingRef, rank: usize) -> Self {
        Self { ring: ring.clone(), rank, gens: Vec::new() }
    }

    pub fn from_matrix(m: &PolyMatrix) -> Self {
        Self { ring: m.ring.clone(), rank: m.rows, gens: m.columns() }
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn generators(&self) -> &[Vec<MultiPoly>] {
        &self.gens
    }

    /// Generators as the columns of a `rank × n` matrix.
    pub fn matrix(&self) -> PolyMatrix {
        PolyMatrix::from_columns(&self.ring, self.rank, &self.gens)
    }

    pub fn is_zero(&self) -> bool {
        self.gens.iter().all(|g| g.iter().all(MultiPoly::is_zero))
    }

    fn engine(&self) -> Engine {
        Engine::new(self.ring.field(), MonomialOrder::Grevlex)
    }

    fn basis(&self) -> Vec<Vector> {
        let eng = self.engine();
        eng.groebner(self.gens.iter().map(|g| eng.from_polys(g)).collect(), false)
    }

    pub fn contains(&self, v: &[MultiPoly]) -> bool {
        let eng = self.engine();
        let basis = self.basis();
        eng.reduce(eng.from_polys(v), &basis, true).is_empty()
    }

    /// True iff the submodule is all of `A^rank`.
    pub fn is_everything(&self) -> bool {
        let eng = self.engine();
        let basis = self.basis();
        (0..self.rank).all(|j| {
            let e = unit_vector(&self.ring, self.rank, j);
            eng.reduce(eng.from_polys(&e), &basis, true).is_empty()
        })
    }

    /// Drop zero generators, then each generator lying in the span of the
    /// remaining ones. For homogeneous input the result is minimal.
    pub fn pruned(&self) -> FreeSubmodule {
        let eng = self.engine();
        let mut gens: Vec<Vec<MultiPoly>> =
            self.gens.iter().filter(|g| g.iter().any(|e| !e.is_zero())).cloned().collect();
        let mut i = gens.len();
        while i > 0 {
            i -= 1;
            let others: Vec<Vector> =
                gens.iter().enumerate().filter(|(k, _)| *k != i).map(|(_, g)| eng.from_polys(g)).collect();
            let basis = eng.groebner(others, false);
            if eng.reduce(eng.from_polys(&gens[i]), &basis, true).is_empty() {
                gens.remove(i);
            }
        }
        FreeSubmodule { ring: self.ring.clone(), rank: self.rank, gens }
    }
}

pub(crate) fn unit_vector(ring: &RingRef, rank: usize, j: usize) -> Vec<MultiPoly> {
    (0..rank).map(|i| if i == j { MultiPoly::one(ring) } else { MultiPoly::zero(ring) }).collect()
}

/// Generators of `{v ∈ A^s : phi·v = 0}` for a `t × s` matrix `phi`.
///
/// Computed from a Gröbner basis of the columns of `[phi; I]` in a
/// position-over-term order where the `phi` block dominates: basis elements
/// whose leading position falls in the identity block have vanishing `phi`
/// part, and their identity parts generate the kernel.
pub fn module_kernel(phi: &PolyMatrix) -> FreeSubmodule {
    let (t, s) = (phi.rows(), phi.cols());
    let ring = phi.ring();
    let eng = Engine::new(ring.field(), MonomialOrder::Grevlex);
    let gens: Vec<Vector> = (0..s)
        .map(|j| {
            let mut col = phi.column(j);
            col.extend(unit_vector(ring, s, j));
            eng.from_polys(&col)
        })
        .collect();
    let basis = eng.groebner(gens, false);
    let kernel = basis
        .into_iter()
        .filter(|v| v[0].0.pos >= t)
        .map(|v| eng.to_polys(&v, ring, t + s).split_off(t))
        .collect();
    FreeSubmodule { ring: ring.clone(), rank: s, gens: kernel }.pruned()
}

/// Finitely generated module `A^rank / relations`.
#[derive(Clone, Debug, PartialEq)]
pub struct PresentedModule {
    relations: FreeSubmodule,
}

impl PresentedModule {
    pub fn new(relations: FreeSubmodule) -> Self {
        Self { relations }
    }

    pub fn free(ring: &RingRef, rank: usize) -> Self {
        Self::new(FreeSubmodule::zero(ring, rank))
    }

    /// `A / I`.
    pub fn cyclic(ideal: &Ideal) -> Self {
        let gens = ideal.generators().iter().map(|g| vec![g.clone()]).collect();
        Self::new(FreeSubmodule::new(ideal.ring(), 1, gens).expect("rank one"))
    }

    /// Cokernel of a `t × n` matrix.
    pub fn cokernel(m: &PolyMatrix) -> Self {
        Self::new(FreeSubmodule::from_matrix(m))
    }

    pub fn ring(&self) -> &RingRef {
        self.relations.ring()
    }

    pub fn rank(&self) -> usize {
        self.relations.rank()
    }

    pub fn relations(&self) -> &FreeSubmodule {
        &self.relations
    }

    pub fn is_zero(&self) -> bool {
        self.relations.is_everything()
    }

    pub fn direct_sum(&self, other: &PresentedModule) -> Result<PresentedModule> {
        if self.ring().as_ref() != other.ring().as_ref() {
            return Err(Error::RingMismatch(format!("{} vs {}", self.ring(), other.ring())));
        }
        let (a, b) = (self.rank(), other.rank());
        let zero = MultiPoly::zero(self.ring());
        let mut gens = Vec::new();
        for g in self.relations.generators() {
            let mut v = g.clone();
            v.extend(std::iter::repeat_n(zero.clone(), b));
            gens.push(v);
        }
        for g in other.relations.generators() {
            let mut v = vec![zero.clone(); a];
            v.extend(g.iter().cloned());
            gens.push(v);
        }
        Ok(Self::new(FreeSubmodule::new(self.ring(), a + b, gens)?))
    }

    /// `ann(M) = ⋂_j (relations : e_j)`.
    pub fn annihilator(&self) -> Ideal {
        let ring = self.ring();
        let t = self.rank();
        let rels = self.relations.generators();
        let mut result = Ideal::unit(ring);
        for j in 0..t {
            let mut cols = rels.to_vec();
            cols.push(unit_vector(ring, t, j));
            let syz = module_kernel(&PolyMatrix::from_columns(ring, t, &cols));
            let colon: Vec<MultiPoly> = syz.generators().iter().map(|v| v[rels.len()].clone()).collect();
            let colon = Ideal::new(ring, colon).expect("same ring");
            result = if j == 0 { colon } else { result.intersect(&colon).expect("same ring") };
        }
        result.groebner(MonomialOrder::Grevlex)
    }

    /// Free resolution `F_0 <- F_1 <- ...` as the list of its maps, at most
    /// `max_len` of them. Stops once a kernel vanishes.
    pub fn free_resolution(&self, max_len: usize) -> Vec<PolyMatrix> {
        let mut maps = Vec::new();
        let first = self.relations.pruned();
        if first.is_zero() || max_len == 0 {
            return maps;
        }
        maps.push(first.matrix());
        while maps.len() < max_len {
            let k = module_kernel(maps.last().expect("nonempty"));
            if k.is_zero() {
                break;
            }
            maps.push(k.matrix());
        }
        maps
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::PrimeField;
    use crate::polyalgebra::PolyRing;

    fn ring2() -> RingRef {
        PolyRing::shared(PrimeField::new(2).unwrap(), &["y1", "y2"]).unwrap()
    }

    fn p(r: &RingRef, s: &str) -> MultiPoly {
        MultiPoly::parse(r, s).unwrap()
    }

    #[test]
    fn kernel_examples() {
        let r = ring2();
        assert!(module_kernel(&PolyMatrix::parse(&r, &[vec!["y1"]]).unwrap()).is_zero());

        let k = module_kernel(&PolyMatrix::parse(&r, &[vec!["y1", "y2"]]).unwrap());
        assert_eq!(k.generators(), &[vec![p(&r, "y2"), p(&r, "y1")]]);

        let k = module_kernel(&PolyMatrix::parse(&r, &[vec!["0"]]).unwrap());
        assert_eq!(k.generators(), &[vec![p(&r, "1")]]);
    }

    #[test]
    fn kernel_vectors_are_syzygies() {
        let r = PolyRing::shared(PrimeField::new(3).unwrap(), &["x", "y", "z"]).unwrap();
        let phi = PolyMatrix::parse(&r, &[vec!["x", "y", "z", "0"], vec!["y", "0", "x - z", "x*y"]]).unwrap();
        let k = module_kernel(&phi);
        assert!(!k.is_zero());
        for g in k.generators() {
            assert!(phi.mul_vec(g).iter().all(MultiPoly::is_zero));
        }
    }

    #[test]
    fn annihilator_examples() {
        let r = ring2();
        let m = PresentedModule::cyclic(&Ideal::parse(&r, "y1").unwrap());
        assert_eq!(m.annihilator().generators(), &[p(&r, "y1")]);

        assert!(PresentedModule::free(&r, 1).annihilator().is_zero());

        let rels = PolyMatrix::parse(&r, &[vec!["y1", "0", "y2", "0"], vec!["0", "y2", "0", "y1"]]).unwrap();
        let ann = PresentedModule::cokernel(&rels).annihilator();
        assert_eq!(ann.generators(), &[p(&r, "y1"), p(&r, "y2")]);
    }

    #[test]
    fn annihilator_of_sum_is_intersection() {
        let r = ring2();
        let a = PresentedModule::cyclic(&Ideal::parse(&r, "y1").unwrap());
        let b = PresentedModule::cyclic(&Ideal::parse(&r, "y2").unwrap());
        let ann = a.direct_sum(&b).unwrap().annihilator();
        assert_eq!(ann.generators(), &[p(&r, "y1*y2")]);
    }

    #[test]
    fn resolution_examples() {
        let r = ring2();
        let res = PresentedModule::cyclic(&Ideal::parse(&r, "y1").unwrap()).free_resolution(5);
        assert_eq!(res.len(), 1);
        assert_eq!(res[0].to_strings(), vec![vec!["y1"]]);

        assert!(PresentedModule::free(&r, 2).free_resolution(5).is_empty());

        let res = PresentedModule::cyclic(&Ideal::parse(&r, "y1, y2").unwrap()).free_resolution(5);
        let ranks: Vec<_> = std::iter::once(res[0].rows()).chain(res.iter().map(PolyMatrix::cols)).collect();
        assert_eq!(ranks, vec![1, 2, 1]);
    }

    #[test]
    fn resolution_maps_compose_to_zero() {
        let r = PolyRing::shared(PrimeField::new(3).unwrap(), &["x", "y", "z"]).unwrap();
        let m = PresentedModule::cyclic(&Ideal::parse(&r, "x^2, x*y, y*z^2, z^3").unwrap());
        let res = m.free_resolution(6);
        assert!(res.len() >= 3);
        for w in res.windows(2) {
            assert!(w[0].mul(&w[1]).unwrap().is_zero());
        }
    }

    #[test]
    fn zero_module_detection() {
        let r = ring2();
        assert!(PresentedModule::cyclic(&Ideal::parse(&r, "y1, y1 + 1").unwrap()).is_zero());
        assert!(!PresentedModule::cyclic(&Ideal::parse(&r, "y1, y2").unwrap()).is_zero());
    }
}
