//! Rank varieties as ideals in `F_p[a_1..a_r]`.
//!
//! `V(M)` is the set of `α` for which `X(α) = Σ α_i Z_i` has rank below
//! `(p-1)·dim/p`, i.e. where the restriction to `⟨1 + x_α⟩` fails to be free.
//! Varieties are carried as ideals and compared up to radical only.

mod upoly;

use std::collections::HashMap;

use upoly::{determinantal_divisor, UPoly};

use crate::error::{Error, Result};
use crate::exactla::{Field, PrimeField};
use crate::kmodule::KModule;
use crate::polyalgebra::{Ideal, MonomialOrder, MultiPoly, PolyRing, RingRef};

/// Modules above this dimension skip the minors path.
pub const MAX_MINORS_DIM: usize = 12;
/// Ranks above this skip the minors path.
pub const MAX_MINORS_RANK: usize = 4;
/// Budget on the number of `N × N` minors enumerated.
pub const MAX_MINORS: usize = 40_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RequiredRank {
    /// `(p-1)·dim/p`, the rank of `X(α)` on a free restriction.
    Rank(usize),
    /// `p ∤ dim`: no restriction is free, the variety is everything.
    NeverFree,
    /// Result of a union or intersection of varieties.
    Combined,
}

#[derive(Clone, Debug)]
pub struct RankVarietyIdeal {
    pub ideal: Ideal,
    pub required_rank: RequiredRank,
}

/// `F_p[a_1..a_r]`.
pub fn variety_ring(p: u64, r: usize) -> Result<RingRef> {
    let names: Vec<String> = (1..=r).map(|i| format!("a{i}")).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    PolyRing::shared(PrimeField::new(p)?, &refs)
}

impl RankVarietyIdeal {
    pub fn ring(&self) -> &RingRef {
        self.ideal.ring()
    }

    pub fn generators(&self) -> &[MultiPoly] {
        self.ideal.generators()
    }

    /// Whether the variety is `{0}`, i.e. every `a_i` lies in the radical.
    pub fn is_origin_only(&self) -> Result<bool> {
        if self.required_rank == RequiredRank::NeverFree {
            return Ok(false);
        }
        let ring = self.ring();
        for i in 0..ring.nvars() {
            if !self.ideal.radical_contains(&MultiPoly::var(ring, i))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn contains_point(&self, alpha: &[u32]) -> Result<bool> {
        if alpha.len() != self.ring().nvars() {
            return Err(Error::BadAlpha);
        }
        Ok(self.generators().iter().all(|g| g.eval(alpha) == 0))
    }

    /// `V(I) ∩ V(J) = V(I + J)`.
    pub fn intersect(&self, other: &Self) -> Result<Self> {
        Ok(Self { ideal: self.ideal.sum(&other.ideal)?, required_rank: RequiredRank::Combined })
    }

    /// `V(I) ∪ V(J) = V(IJ)`.
    pub fn union(&self, other: &Self) -> Result<Self> {
        Ok(Self { ideal: self.ideal.product(&other.ideal)?, required_rank: RequiredRank::Combined })
    }

    pub fn eq_radical(&self, other: &Self) -> Result<bool> {
        self.ideal.eq_radical(&other.ideal)
    }
}

/// Monic, deduplicated generators sorted by degree and then text.
fn canonical(ring: &RingRef, gens: Vec<MultiPoly>) -> Ideal {
    let mut gens: Vec<MultiPoly> = gens.into_iter().filter(|g| !g.is_zero()).map(|g| g.monic()).collect();
    gens.sort_by_cached_key(|g| (g.total_degree(), g.to_string()));
    gens.dedup();
    Ideal::new(ring, gens).expect("same ring")
}

/// The rank variety of `m`.
///
/// Small modules use the ideal of `N × N` minors of `Σ a_i Z_i`. Larger
/// modules with `r ≤ 2` use the pencil `a_1 Z_1 + a_2 Z_2`: the rank drops
/// exactly on the lines through the roots of the `N`-th determinantal
/// divisor of `t Z_1 + Z_2` and possibly on `a_2 = 0`, so the ideal is
/// generated by one homogeneous form that is radical-equal to the minors.
pub fn rank_variety_ideal(m: &KModule<PrimeField>) -> Result<RankVarietyIdeal> {
    let alg = m.algebra();
    let (p, r, dim) = (alg.p() as usize, alg.r(), m.dim());
    let ring = variety_ring(p as u64, r)?;
    if dim % p != 0 {
        return Ok(RankVarietyIdeal { ideal: Ideal::zero(&ring), required_rank: RequiredRank::NeverFree });
    }
    let n = (p - 1) * dim / p;
    let required_rank = RequiredRank::Rank(n);
    let minors_ok = dim <= MAX_MINORS_DIM
        && r <= MAX_MINORS_RANK
        && binomial(dim, n).checked_mul(binomial(dim, n)).is_some_and(|c| c <= MAX_MINORS);
    let ideal = if minors_ok {
        canonical(&ring, minors(m, &ring, n))
    } else if r <= 2 {
        pencil(m, &ring, n)
    } else {
        return Err(Error::SizeLimit(format!(
            "rank variety of a {dim}-dimensional module over a rank {r} group"
        )));
    };
    Ok(RankVarietyIdeal { ideal, required_rank })
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k.min(n - k)).fold(1usize, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

/// All `n × n` minors of the symbolic matrix `Σ a_i Z_i`, rows and columns
/// in lexicographic subset order.
fn minors(m: &KModule<PrimeField>, ring: &RingRef, n: usize) -> Vec<MultiPoly> {
    let dim = m.dim();
    let x: Vec<Vec<MultiPoly>> = (0..dim)
        .map(|i| {
            (0..dim)
                .map(|j| {
                    let terms = m.actions().iter().enumerate().filter_map(|(k, z)| {
                        let c = *z.get(i, j);
                        (c != 0).then(|| {
                            let mut e = vec![0; m.algebra().r()];
                            e[k] = 1;
                            (e, c)
                        })
                    });
                    MultiPoly::from_terms(ring, terms)
                })
                .collect()
        })
        .collect();
    if n == 0 {
        return vec![MultiPoly::one(ring)];
    }
    let mut out = Vec::new();
    for rows in subsets(dim, n) {
        // Laplace expansion along the chosen rows, memoized on column sets
        let mut memo: HashMap<u64, MultiPoly> = HashMap::new();
        for cols in subsets(dim, n) {
            let mask = cols.iter().fold(0u64, |acc, &c| acc | (1 << c));
            out.push(det(&x, &rows, mask, ring, &mut memo));
        }
    }
    out
}

fn det(x: &[Vec<MultiPoly>], rows: &[usize], mask: u64, ring: &RingRef, memo: &mut HashMap<u64, MultiPoly>) -> MultiPoly {
    let k = mask.count_ones() as usize;
    if k == 0 {
        return MultiPoly::one(ring);
    }
    if let Some(v) = memo.get(&mask) {
        return v.clone();
    }
    let row = rows[k - 1];
    let mut acc = MultiPoly::zero(ring);
    // expansion along the last row; the rightmost column carries sign +
    let mut sign_neg = false;
    for c in (0..64).rev().filter(|c| mask & (1 << c) != 0) {
        let e = &x[row][c];
        if !e.is_zero() {
            let sub = det(x, rows, mask & !(1 << c), ring, memo);
            if !sub.is_zero() {
                let term = e * &sub;
                acc = if sign_neg { &acc - &term } else { &acc + &term };
            }
        }
        sign_neg = !sign_neg;
    }
    memo.insert(mask, acc.clone());
    acc
}

fn pencil(m: &KModule<PrimeField>, ring: &RingRef, n: usize) -> Ideal {
    let f = *m.field();
    let dim = m.dim();
    let r = m.algebra().r();
    let a = |i: usize| MultiPoly::var(ring, i);
    if r == 1 {
        let full = m.action(0).rank() == n;
        return if full { Ideal::new(ring, vec![a(0)]).expect("same ring") } else { Ideal::zero(ring) };
    }
    let (z1, z2) = (m.action(0), m.action(1));
    let entries: Vec<Vec<UPoly>> = (0..dim)
        .map(|i| (0..dim).map(|j| UPoly::linear(*z1.get(i, j), *z2.get(i, j))).collect())
        .collect();
    let (rank, divisor) = determinantal_divisor(entries, n, f);
    if rank < n {
        return Ideal::zero(ring);
    }
    let at_infinity = z1.rank() < n;
    let deg = divisor.degree().expect("nonzero divisor") as u32;
    if deg == 0 && !at_infinity {
        return Ideal::new(ring, vec![a(0), a(1)]).expect("same ring");
    }
    // homogenize d(t) with t = a1/a2
    let mut form = MultiPoly::from_terms(
        ring,
        divisor.0.iter().enumerate().map(|(i, &c)| (vec![i as u32, deg - i as u32], c)),
    );
    if at_infinity {
        form = &form * &a(1);
    }
    let ideal = Ideal::new(ring, vec![form.monic()]).expect("same ring");
    ideal.groebner(MonomialOrder::Grevlex)
}

/// The minors path regardless of size, for cross-checks.
pub fn rank_variety_by_minors(m: &KModule<PrimeField>) -> Result<RankVarietyIdeal> {
    let alg = m.algebra();
    let (p, r, dim) = (alg.p() as usize, alg.r(), m.dim());
    let ring = variety_ring(p as u64, r)?;
    if dim % p != 0 {
        return Ok(RankVarietyIdeal { ideal: Ideal::zero(&ring), required_rank: RequiredRank::NeverFree });
    }
    let n = (p - 1) * dim / p;
    Ok(RankVarietyIdeal { ideal: canonical(&ring, minors(m, &ring, n)), required_rank: RequiredRank::Rank(n) })
}

/// Whether `M` fails to be free on `⟨1 + x_α⟩`, evaluated directly.
pub fn point_in_variety(m: &KModule<PrimeField>, alpha: &[u32]) -> Result<bool> {
    let f = m.field();
    if alpha.iter().all(|&a| f.is_zero(&a)) {
        return Ok(true);
    }
    Ok(!m.shifted_free(alpha)?)
}

#[cfg(test)]
mod tests;
