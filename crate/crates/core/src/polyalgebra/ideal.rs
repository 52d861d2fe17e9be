use std::sync::OnceLock;

use super::groebner::Engine;
use super::poly::{MonomialOrder, MultiPoly, RingRef};
use crate::error::{Error, Result};

/// Reduced Gröbner basis of `gens` under `order`, computed from scratch.
pub fn groebner_basis(ring: &RingRef, gens: &[MultiPoly], order: MonomialOrder) -> Vec<MultiPoly> {
    let eng = Engine::new(ring.field(), order);
    let vecs = gens.iter().map(|g| eng.from_polys(std::slice::from_ref(g))).collect();
    eng.groebner(vecs, true)
        .into_iter()
        .map(|v| eng.to_polys(&v, ring, 1).pop().expect("rank one"))
        .collect()
}

/// Ideal of a polynomial ring with write-once Gröbner basis caches.
#[derive(Clone, Debug)]
pub struct Ideal {
    ring: RingRef,
    gens: Vec<MultiPoly>,
    grevlex: OnceLock<Vec<MultiPoly>>,
    lex: OnceLock<Vec<MultiPoly>>,
}

impl Ideal {
    pub fn new(ring: &RingRef, gens: Vec<MultiPoly>) -> Result<Self> {
        if let Some(g) = gens.iter().find(|g| !g.ring().as_ref().eq(ring.as_ref())) {
            return Err(Error::RingMismatch(format!("generator {g} is not in {ring}")));
        }
        Ok(Self { ring: ring.clone(), gens, grevlex: OnceLock::new(), lex: OnceLock::new() })
    }

    pub fn zero(ring: &RingRef) -> Self {
        Self::new(ring, Vec::new()).expect("no generators")
    }

    pub fn unit(ring: &RingRef) -> Self {
        Self::new(ring, vec![MultiPoly::one(ring)]).expect("same ring")
    }

    /// Parse a comma-separated generator list.
    pub fn parse(ring: &RingRef, s: &str) -> Result<Self> {
        let gens = if s.trim().is_empty() {
            Vec::new()
        } else {
            s.split(',').map(|g| MultiPoly::parse(ring, g)).collect::<Result<_>>()?
        };
        Self::new(ring, gens)
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn generators(&self) -> &[MultiPoly] {
        &self.gens
    }

    /// Reduced Gröbner basis under `order`. Grevlex and lex bases are cached.
    pub fn basis(&self, order: MonomialOrder) -> Vec<MultiPoly> {
        let compute = || groebner_basis(&self.ring, &self.gens, order);
        match order {
            MonomialOrder::Grevlex => self.grevlex.get_or_init(compute).clone(),
            MonomialOrder::Lex => self.lex.get_or_init(compute).clone(),
            MonomialOrder::Eliminate { .. } => compute(),
        }
    }

    /// The ideal generated by its reduced Gröbner basis, with the cache filled.
    pub fn groebner(&self, order: MonomialOrder) -> Ideal {
        let b = self.basis(order);
        let out = Ideal::new(&self.ring, b.clone()).expect("same ring");
        match order {
            MonomialOrder::Grevlex => {
                let _ = out.grevlex.set(b);
            }
            MonomialOrder::Lex => {
                let _ = out.lex.set(b);
            }
            MonomialOrder::Eliminate { .. } => {}
        }
        out
    }

    fn check_ring(&self, f: &MultiPoly) -> Result<()> {
        if f.ring().as_ref() != self.ring.as_ref() {
            return Err(Error::RingMismatch(format!("{f} is not in {}", self.ring)));
        }
        Ok(())
    }

    pub fn normal_form(&self, f: &MultiPoly) -> Result<MultiPoly> {
        self.check_ring(f)?;
        let eng = Engine::new(self.ring.field(), MonomialOrder::Grevlex);
        let basis: Vec<_> = self.basis(MonomialOrder::Grevlex).iter().map(|g| eng.from_polys(std::slice::from_ref(g))).collect();
        let r = eng.reduce(eng.from_polys(std::slice::from_ref(f)), &basis, true);
        Ok(eng.to_polys(&r, &self.ring, 1).pop().expect("rank one"))
    }

    pub fn contains(&self, f: &MultiPoly) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.gens.iter().all(|g| g.is_zero())
    }

    pub fn is_unit(&self) -> bool {
        self.basis(MonomialOrder::Grevlex).iter().any(|g| g.is_constant() && !g.is_zero())
    }

    /// Decide `f ∈ √self` by adjoining a fresh variable `u` and testing
    /// whether `1 ∈ self + (1 - u f)`.
    pub fn radical_contains(&self, f: &MultiPoly) -> Result<bool> {
        self.check_ring(f)?;
        if f.is_zero() {
            return Ok(true);
        }
        let big = self.ring.extended(&["u"])?;
        let u = MultiPoly::var(&big, big.nvars() - 1);
        let mut gens: Vec<_> = self.gens.iter().map(|g| g.extend_to(&big)).collect();
        gens.push(&MultiPoly::one(&big) - &(&u * &f.extend_to(&big)));
        let gb = groebner_basis(&big, &gens, MonomialOrder::Grevlex);
        Ok(gb.iter().any(|g| g.is_constant() && !g.is_zero()))
    }

    /// `√self = √other`.
    pub fn eq_radical(&self, other: &Ideal) -> Result<bool> {
        self.same_ring(other)?;
        for g in &self.gens {
            if !other.radical_contains(g)? {
                return Ok(false);
            }
        }
        for g in &other.gens {
            if !self.radical_contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `V(self) ⊆ V(other)`, i.e. `other ⊆ √self`.
    pub fn variety_within(&self, other: &Ideal) -> Result<bool> {
        self.same_ring(other)?;
        for g in &other.gens {
            if !self.radical_contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn same_ring(&self, other: &Ideal) -> Result<()> {
        if self.ring.as_ref() != other.ring.as_ref() {
            return Err(Error::RingMismatch(format!("{} vs {}", self.ring, other.ring)));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        self.same_ring(other)?;
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ideal::new(&self.ring, gens)
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        self.same_ring(other)?;
        let mut gens = Vec::new();
        for a in &self.gens {
            for b in &other.gens {
                let g = a * b;
                if !g.is_zero() {
                    gens.push(g);
                }
            }
        }
        Ideal::new(&self.ring, gens)
    }

    /// `self ∩ other` via a tag variable `t`: eliminate `t` from `tI + (1-t)J`.
    pub fn intersect(&self, other: &Ideal) -> Result<Ideal> {
        self.same_ring(other)?;
        let big = self.ring.extended(&["t"])?;
        let t = MultiPoly::var(&big, big.nvars() - 1);
        let one_minus_t = &MultiPoly::one(&big) - &t;
        let mut gens: Vec<_> = self.gens.iter().map(|g| &t * &g.extend_to(&big)).collect();
        gens.extend(other.gens.iter().map(|g| &one_minus_t * &g.extend_to(&big)));
        let gb = groebner_basis(&big, &gens, MonomialOrder::Eliminate { tail: 1 });
        let kept = gb.iter().filter_map(|g| g.contract_to(&self.ring)).collect();
        Ideal::new(&self.ring, kept)
    }
}
