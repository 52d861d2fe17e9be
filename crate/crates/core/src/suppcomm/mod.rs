//! Bounded complexes of free modules over `A = F_p[y_1..y_m]`, Koszul
//! complexes, and supports computed through annihilators.

use crate::error::{Error, Result};
use crate::polyalgebra::{module_kernel, FreeSubmodule, Ideal, MonomialOrder, MultiPoly, PolyMatrix, PresentedModule, RingRef};

#[cfg(test)]
mod tests;

/// Default bound on the length of free resolutions.
pub const MAX_RESOLUTION_LENGTH: usize = 10;

/// `0 → F^lo → ... → F^hi → 0` with `d^n : F^n → F^{n+1}`.
#[derive(Clone, Debug)]
pub struct FreeComplex {
    ring: RingRef,
    lo: i64,
    ranks: Vec<usize>,
    diffs: Vec<PolyMatrix>,
}

impl FreeComplex {
    /// `diffs[k]` maps degree `lo + k` to `lo + k + 1`. Checks shapes and `d² = 0`.
    pub fn new(ring: &RingRef, lo: i64, ranks: Vec<usize>, diffs: Vec<PolyMatrix>) -> Result<Self> {
        if ranks.is_empty() || diffs.len() + 1 != ranks.len() {
            return Err(Error::Shape(format!("{} ranks need {} differentials", ranks.len(), ranks.len().saturating_sub(1))));
        }
        for (k, d) in diffs.iter().enumerate() {
            if d.rows() != ranks[k + 1] || d.cols() != ranks[k] {
                return Err(Error::Shape(format!("differential out of degree {} has the wrong shape", lo + k as i64)));
            }
            if d.ring().as_ref() != ring.as_ref() {
                return Err(Error::RingMismatch(format!("differential over {}", d.ring())));
            }
        }
        for w in diffs.windows(2) {
            if !w[1].mul(&w[0])?.is_zero() {
                return Err(Error::Internal("differentials do not square to zero".into()));
            }
        }
        Ok(Self { ring: ring.clone(), lo, ranks, diffs })
    }

    /// A free module `A^rank` in degree 0.
    pub fn module(ring: &RingRef, rank: usize) -> Self {
        Self { ring: ring.clone(), lo: 0, ranks: vec![rank], diffs: Vec::new() }
    }

    /// A free resolution `F_n → ... → F_0` placed in degrees `-n..0`.
    pub fn from_resolution(m: &PresentedModule, max_len: usize) -> Result<Self> {
        let maps = m.free_resolution(max_len);
        if maps.len() == max_len && max_len > 0 && !module_kernel(maps.last().expect("nonempty")).is_zero() {
            return Err(Error::SizeLimit(format!("free resolution longer than {max_len}")));
        }
        let mut ranks = vec![m.rank()];
        ranks.extend(maps.iter().map(PolyMatrix::cols));
        ranks.reverse();
        let diffs: Vec<PolyMatrix> = maps.into_iter().rev().collect();
        Self::new(m.ring(), -(ranks.len() as i64 - 1), ranks, diffs)
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.ranks.len() as i64 - 1
    }

    pub fn rank(&self, n: i64) -> usize {
        self.index(n).map_or(0, |k| self.ranks[k])
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    fn index(&self, n: i64) -> Option<usize> {
        (n >= self.lo && n <= self.hi()).then(|| (n - self.lo) as usize)
    }

    /// `d^n`, or `None` when it leaves the stored range.
    pub fn differential(&self, n: i64) -> Option<&PolyMatrix> {
        self.index(n).and_then(|k| self.diffs.get(k))
    }

    /// `X ⊗ Y` with `d(x ⊗ y) = dx ⊗ y + (-1)^i x ⊗ dy` for `x` in degree `i`.
    /// Summands of a total degree are ordered by increasing `i`.
    pub fn tensor(&self, other: &FreeComplex) -> Result<FreeComplex> {
        if self.ring.as_ref() != other.ring.as_ref() {
            return Err(Error::RingMismatch(format!("{} vs {}", self.ring, other.ring)));
        }
        let ring = &self.ring;
        let lo = self.lo + other.lo;
        let hi = self.hi() + other.hi();
        // summands (i, j, offset) of each total degree
        let layout = |n: i64| -> Vec<(i64, i64, usize)> {
            let mut off = 0;
            let mut out = Vec::new();
            for i in self.lo..=self.hi() {
                let j = n - i;
                if j >= other.lo && j <= other.hi() {
                    out.push((i, j, off));
                    off += self.rank(i) * other.rank(j);
                }
            }
            out
        };
        let total = |n: i64| layout(n).iter().map(|&(i, j, _)| self.rank(i) * other.rank(j)).sum::<usize>();
        let ranks: Vec<usize> = (lo..=hi).map(total).collect();
        let mut diffs = Vec::new();
        for n in lo..hi {
            let mut d = PolyMatrix::zeros(ring, total(n + 1), total(n));
            let target = layout(n + 1);
            let find = |i: i64| target.iter().find(|t| t.0 == i).map(|t| t.2);
            for (i, j, src) in layout(n) {
                let (ri, rj) = (self.rank(i), other.rank(j));
                if let (Some(dx), Some(dst)) = (self.differential(i), find(i + 1)) {
                    let block = dx.kron(&PolyMatrix::identity(ring, rj));
                    place(&mut d, &block, dst, src);
                }
                if let (Some(dy), Some(dst)) = (other.differential(j), find(i)) {
                    let sign = if i.rem_euclid(2) == 1 { MultiPoly::constant(ring, ring.field().neg_u(1)) } else { MultiPoly::one(ring) };
                    let block = PolyMatrix::identity(ring, ri).kron(dy).scale(&sign);
                    place(&mut d, &block, dst, src);
                }
            }
            diffs.push(d);
        }
        FreeComplex::new(ring, lo, ranks, diffs)
    }

    /// `H^n = ker d^n / im d^{n-1}` for every degree `lo..=hi`.
    pub fn cohomology(&self) -> Vec<PresentedModule> {
        (self.lo..=self.hi()).map(|n| self.cohomology_at(n)).collect()
    }

    /// `H^n` presented on generators of `ker d^n`: the relations are the
    /// `c` with `K c ∈ im d^{n-1}`, read off the syzygies of `[K | D]`.
    pub fn cohomology_at(&self, n: i64) -> PresentedModule {
        let ring = &self.ring;
        let rank = self.rank(n);
        let kernel = match self.differential(n) {
            Some(d) => module_kernel(d).matrix(),
            None => PolyMatrix::identity(ring, rank),
        };
        let k = kernel.cols();
        if k == 0 {
            return PresentedModule::free(ring, 0);
        }
        let image: Vec<Vec<MultiPoly>> = match self.differential(n - 1) {
            Some(d) => d.columns(),
            None => Vec::new(),
        };
        let mut cols = kernel.columns();
        cols.extend(image);
        let syz = module_kernel(&PolyMatrix::from_columns(ring, rank, &cols));
        let rels: Vec<Vec<MultiPoly>> = syz.generators().iter().map(|v| v[..k].to_vec()).collect();
        let rels = FreeSubmodule::new(ring, k, rels).expect("rank k").pruned();
        PresentedModule::new(rels)
    }
}

fn place(d: &mut PolyMatrix, block: &PolyMatrix, row: usize, col: usize) {
    for i in 0..block.rows() {
        for j in 0..block.cols() {
            let e = block.get(i, j);
            if !e.is_zero() {
                let s = d.get(row + i, col + j) + e;
                d.set(row + i, col + j, s);
            }
        }
    }
}

/// Koszul complex on `elems`, in degrees `-n..0`, as the tensor product of
/// the complexes `A --a--> A`.
pub fn koszul_complex(ring: &RingRef, elems: &[MultiPoly]) -> Result<FreeComplex> {
    if elems.is_empty() {
        return Err(Error::Shape("Koszul complex needs at least one element".into()));
    }
    let mut out: Option<FreeComplex> = None;
    for a in elems {
        if a.ring().as_ref() != ring.as_ref() {
            return Err(Error::RingMismatch(format!("{a} is not in {ring}")));
        }
        let single = FreeComplex::new(ring, -1, vec![1, 1], vec![PolyMatrix::from_rows(ring, vec![vec![a.clone()]])?])?;
        out = Some(match out {
            None => single,
            Some(x) => x.tensor(&single)?,
        });
    }
    Ok(out.expect("nonempty"))
}

/// `kos(M; a)`: a free resolution of `M` tensored with the Koszul complex.
pub fn koszul_on_module(m: &PresentedModule, elems: &[MultiPoly]) -> Result<FreeComplex> {
    FreeComplex::from_resolution(m, MAX_RESOLUTION_LENGTH)?.tensor(&koszul_complex(m.ring(), elems)?)
}

/// A specialization-closed set given as the union of the `V(I_j)`.
#[derive(Clone, Debug)]
pub struct SupportSet {
    ring: RingRef,
    components: Vec<Ideal>,
}

impl SupportSet {
    /// Components are replaced by reduced Gröbner bases; empty ones are dropped.
    pub fn new(ring: &RingRef, components: Vec<Ideal>) -> Self {
        let components = components
            .into_iter()
            .map(|i| i.groebner(MonomialOrder::Grevlex))
            .filter(|i| !i.is_unit())
            .collect();
        Self { ring: ring.clone(), components }
    }

    pub fn empty(ring: &RingRef) -> Self {
        Self { ring: ring.clone(), components: Vec::new() }
    }

    pub fn closed(ideal: &Ideal) -> Self {
        Self::new(ideal.ring(), vec![ideal.clone()])
    }

    pub fn components(&self) -> &[Ideal] {
        &self.components
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// `V(∏ I_j)`, the union as a single closed set.
    pub fn as_ideal(&self) -> Ideal {
        self.components
            .iter()
            .try_fold(Ideal::unit(&self.ring), |acc, i| acc.product(i))
            .expect("same ring")
    }

    pub fn union(&self, other: &SupportSet) -> SupportSet {
        let mut comps = self.components.clone();
        comps.extend(other.components.iter().cloned());
        SupportSet { ring: self.ring.clone(), components: comps }
    }

    /// `S ∩ V(I)`.
    pub fn intersect_closed(&self, ideal: &Ideal) -> Result<SupportSet> {
        let comps = self.components.iter().map(|c| c.sum(ideal)).collect::<Result<Vec<_>>>()?;
        Ok(Self::new(&self.ring, comps))
    }

    /// Equality as sets, via radical equality of the product ideals.
    pub fn set_eq(&self, other: &SupportSet) -> Result<bool> {
        self.as_ideal().eq_radical(&other.as_ideal())
    }

    /// `self ⊆ other` for closed sets, i.e. `other ⊆ √self` on ideals.
    pub fn is_subset(&self, other: &SupportSet) -> Result<bool> {
        self.as_ideal().variety_within(&other.as_ideal())
    }

    pub fn contains_point(&self, c: &[u32]) -> bool {
        self.components.iter().any(|i| i.generators().iter().all(|g| g.eval(c) == 0))
    }

    /// Generators of each component as strings.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        self.components.iter().map(|i| i.generators().iter().map(ToString::to_string).collect()).collect()
    }
}

/// `Supp M = V(ann M)`.
pub fn supp_module(m: &PresentedModule) -> SupportSet {
    SupportSet::closed(&m.annihilator())
}

/// Union of the supports of the cohomology modules.
pub fn supp_complex(x: &FreeComplex) -> SupportSet {
    x.cohomology()
        .iter()
        .fold(SupportSet::empty(x.ring()), |acc, h| acc.union(&supp_module(h)))
}

/// Whether `M ⊗ A/m_c ≠ 0` for the maximal ideal `m_c = (y_i - c_i)`.
pub fn supp_contains_point(m: &PresentedModule, c: &[u32]) -> Result<bool> {
    let ring = m.ring();
    if c.len() != ring.nvars() {
        return Err(Error::Shape(format!("point has {} coordinates, ring has {} variables", c.len(), ring.nvars())));
    }
    let t = m.rank();
    let mut gens = m.relations().generators().to_vec();
    for (i, &ci) in c.iter().enumerate() {
        let lin = &MultiPoly::var(ring, i) - &MultiPoly::constant(ring, ci);
        for j in 0..t {
            let mut v = vec![MultiPoly::zero(ring); t];
            v[j] = lin.clone();
            gens.push(v);
        }
    }
    Ok(!FreeSubmodule::new(ring, t, gens)?.is_everything())
}

/// `V(I) ⊆ V(J)` for single closed sets.
pub fn supp_subset(u: &SupportSet, v: &SupportSet) -> Result<bool> {
    if u.components.len() > 1 || v.components.len() > 1 {
        return Err(Error::Unsupported("containment of unions of closed sets".into()));
    }
    u.is_subset(v)
}
