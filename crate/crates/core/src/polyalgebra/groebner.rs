//! Buchberger's algorithm for submodules of free modules `A^t`.
//!
//! Elements are vectors of polynomials stored as a flat list of terms
//! `(position, exponents, coefficient)` sorted in decreasing order. Positions
//! are compared first (position 0 is largest), then exponents under the
//! monomial order. Ideals are the case `t = 1`.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashSet};

use super::poly::{MonomialOrder, MultiPoly, RingRef};
use crate::exactla::PrimeField;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct Mono {
    pub pos: usize,
    pub exps: Vec<u32>,
}

pub(crate) type Term = (Mono, u32);
pub(crate) type Vector = Vec<Term>;

#[derive(Clone, Copy, Debug)]
pub(crate) struct Engine {
    pub field: PrimeField,
    pub order: MonomialOrder,
}

impl Engine {
    pub fn new(field: PrimeField, order: MonomialOrder) -> Self {
        Self { field, order }
    }

    #[inline]
    pub fn cmp(&self, a: &Mono, b: &Mono) -> Ordering {
        b.pos.cmp(&a.pos).then_with(|| self.order.cmp(&a.exps, &b.exps))
    }

    pub fn normalize(&self, mut terms: Vec<Term>) -> Vector {
        terms.sort_by(|a, b| self.cmp(&b.0, &a.0));
        let mut out: Vector = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            let c = c % self.field.p();
            match out.last_mut() {
                Some(last) if last.0 == m => last.1 = self.field.add_u(last.1, c),
                _ => out.push((m, c)),
            }
            if out.last().is_some_and(|t| t.1 == 0) {
                out.pop();
            }
        }
        out
    }

    pub fn from_polys(&self, comps: &[MultiPoly]) -> Vector {
        let mut terms = Vec::new();
        for (pos, p) in comps.iter().enumerate() {
            for (e, c) in p.terms() {
                terms.push((Mono { pos, exps: e.clone() }, *c));
            }
        }
        self.normalize(terms)
    }

    pub fn to_polys(&self, v: &[Term], ring: &RingRef, rank: usize) -> Vec<MultiPoly> {
        let mut out = vec![MultiPoly::zero(ring); rank];
        for (m, c) in v {
            out[m.pos].add_term(m.exps.clone(), *c);
        }
        out
    }

    fn make_monic(&self, v: &mut Vector) {
        if let Some(&(_, lc)) = v.first() {
            if lc != 1 {
                let inv = self.field.inv_u(lc).expect("nonzero leading coefficient");
                for t in v.iter_mut() {
                    t.1 = self.field.mul_u(t.1, inv);
                }
            }
        }
    }

    /// `f - c * x^shift * g`.
    fn axpy(&self, f: &[Term], c: u32, shift: &[u32], g: &[Term]) -> Vector {
        let negc = self.field.neg_u(c % self.field.p());
        let mut out = Vec::with_capacity(f.len() + g.len());
        let mut i = 0;
        let mut gi = g.iter().map(|(m, gc)| {
            (Mono { pos: m.pos, exps: m.exps.iter().zip(shift).map(|(a, b)| a + b).collect() }, self.field.mul_u(*gc, negc))
        });
        let mut next_g = gi.next();
        while let Some((gm, gc)) = next_g.take() {
            while i < f.len() && self.cmp(&f[i].0, &gm) == Ordering::Greater {
                out.push(f[i].clone());
                i += 1;
            }
            if i < f.len() && f[i].0 == gm {
                let s = self.field.add_u(f[i].1, gc);
                if s != 0 {
                    out.push((gm, s));
                }
                i += 1;
            } else if gc != 0 {
                out.push((gm, gc));
            }
            next_g = gi.next();
        }
        out.extend_from_slice(&f[i..]);
        out
    }

    fn divides(a: &Mono, b: &Mono) -> bool {
        a.pos == b.pos && a.exps.iter().zip(&b.exps).all(|(x, y)| x <= y)
    }

    fn quotient(b: &Mono, a: &Mono) -> Vec<u32> {
        b.exps.iter().zip(&a.exps).map(|(x, y)| x - y).collect()
    }

    fn lcm(a: &Mono, b: &Mono) -> Mono {
        Mono { pos: a.pos, exps: a.exps.iter().zip(&b.exps).map(|(x, y)| *x.max(y)).collect() }
    }

    /// Reduce `f` by a list of monic vectors. With `full`, every term is
    /// reduced, otherwise only the leading one.
    pub fn reduce(&self, f: Vector, basis: &[Vector], full: bool) -> Vector {
        let mut p = f;
        let mut start = 0;
        while start < p.len() {
            let (lm, lc) = (&p[start].0, p[start].1);
            match basis.iter().find(|g| !g.is_empty() && Self::divides(&g[0].0, lm)) {
                Some(g) => {
                    let shift = Self::quotient(lm, &g[0].0);
                    let tail = self.axpy(&p[start..], lc, &shift, g);
                    p.truncate(start);
                    p.extend(tail);
                }
                None if full => start += 1,
                None => break,
            }
        }
        p
    }

    fn spoly(&self, f: &[Term], g: &[Term]) -> Vector {
        let l = Self::lcm(&f[0].0, &g[0].0);
        let sf = Self::quotient(&l, &f[0].0);
        let sg = Self::quotient(&l, &g[0].0);
        let fs: Vector = f
            .iter()
            .map(|(m, c)| (Mono { pos: m.pos, exps: m.exps.iter().zip(&sf).map(|(a, b)| a + b).collect() }, *c))
            .collect();
        self.axpy(&fs, 1, &sg, g)
    }

    /// Reduced Gröbner basis, sorted by decreasing leading monomial.
    ///
    /// `ideal` enables the coprime-leading-term criterion, which is only
    /// valid for ideals.
    pub fn groebner(&self, gens: Vec<Vector>, ideal: bool) -> Vec<Vector> {
        let mut basis: Vec<Vector> = Vec::new();
        let mut pending: BTreeSet<(u32, usize, usize)> = BTreeSet::new();
        let mut pending_set: HashSet<(usize, usize)> = HashSet::new();

        let add = |basis: &mut Vec<Vector>,
                   pending: &mut BTreeSet<(u32, usize, usize)>,
                   pending_set: &mut HashSet<(usize, usize)>,
                   mut v: Vector| {
            self.make_monic(&mut v);
            let j = basis.len();
            for (i, g) in basis.iter().enumerate() {
                if g[0].0.pos == v[0].0.pos {
                    let deg: u32 = Self::lcm(&g[0].0, &v[0].0).exps.iter().sum();
                    pending.insert((deg, j, i));
                    pending_set.insert((i, j));
                }
            }
            basis.push(v);
        };

        for g in gens {
            let g = self.normalize(g);
            if !g.is_empty() {
                add(&mut basis, &mut pending, &mut pending_set, g);
            }
        }

        while let Some((_, j, i)) = pending.pop_first() {
            pending_set.remove(&(i, j));
            let (lf, lg) = (&basis[i][0].0, &basis[j][0].0);
            let l = Self::lcm(lf, lg);
            if ideal && lf.exps.iter().zip(&lg.exps).all(|(a, b)| *a == 0 || *b == 0) {
                continue;
            }
            let chain = (0..basis.len()).any(|k| {
                k != i
                    && k != j
                    && Self::divides(&basis[k][0].0, &l)
                    && !pending_set.contains(&(i.min(k), i.max(k)))
                    && !pending_set.contains(&(j.min(k), j.max(k)))
            });
            if chain {
                continue;
            }
            let s = self.spoly(&basis[i], &basis[j]);
            let h = self.reduce(s, &basis, false);
            if !h.is_empty() {
                add(&mut basis, &mut pending, &mut pending_set, h);
            }
        }

        self.reduce_basis(basis)
    }

    /// Minimalize and interreduce a Gröbner basis.
    fn reduce_basis(&self, basis: Vec<Vector>) -> Vec<Vector> {
        let mut keep: Vec<Vector> = Vec::new();
        for (i, g) in basis.iter().enumerate() {
            let redundant = basis.iter().enumerate().any(|(k, h)| {
                k != i && Self::divides(&h[0].0, &g[0].0) && (h[0].0 != g[0].0 || k < i)
            });
            if !redundant {
                keep.push(g.clone());
            }
        }
        let mut out = Vec::with_capacity(keep.len());
        for i in 0..keep.len() {
            let others: Vec<Vector> = keep.iter().enumerate().filter(|(k, _)| *k != i).map(|(_, g)| g.clone()).collect();
            let head = keep[i][0].clone();
            let tail = self.reduce(keep[i][1..].to_vec(), &others, true);
            let mut v = vec![head];
            v.extend(tail);
            out.push(v);
        }
        out.sort_by(|a, b| self.cmp(&b[0].0, &a[0].0));
        out
    }
}
