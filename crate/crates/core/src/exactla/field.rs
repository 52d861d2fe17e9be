//! Exact fields: prime fields `F_p` and rational function fields `F_p(t_1,..,t_m)`.

use std::fmt::Debug;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::polyalgebra::{MultiPoly, PolyRing};

/// A field together with its element representation.
///
/// Fields are values rather than types so that a rational function field can
/// carry its variable names. Element operations go through the field.
pub trait Field: Clone + Debug + PartialEq + Send + Sync {
    type Elem: Clone + Debug + Send + Sync;

    fn characteristic(&self) -> u32;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_int(&self, n: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    fn elem_eq(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        self.is_zero(&self.sub(a, b))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        self.elem_eq(a, &self.one())
    }

    /// Human-readable descriptor, e.g. `GF(2)` or `GF(2)(t1,t2)`.
    fn descriptor(&self) -> String;
}

/// The prime field `F_p` with elements stored as canonical residues.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

pub const MAX_PRIME: u64 = 97;

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !(2..=MAX_PRIME).contains(&p) || !is_prime(p) {
            return Err(Error::BadPrime(p));
        }
        Ok(Self { p: p as u32 })
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn reduce(&self, n: i64) -> u32 {
        n.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn add_u(&self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub_u(&self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg_u(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul_u(&self, a: u32, b: u32) -> u32 {
        (a * b) % self.p
    }

    pub fn pow_u(&self, mut a: u32, mut e: u64) -> u32 {
        let mut acc = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_u(acc, a);
            }
            a = self.mul_u(a, a);
            e >>= 1;
        }
        acc
    }

    pub fn inv_u(&self, a: u32) -> Result<u32> {
        if a.is_multiple_of(self.p) {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow_u(a, (self.p - 2) as u64))
    }
}

impl Field for PrimeField {
    type Elem = u32;

    fn characteristic(&self) -> u32 {
        self.p
    }
    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1
    }
    fn from_int(&self, n: i64) -> u32 {
        self.reduce(n)
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        self.add_u(*a, *b)
    }
    fn neg(&self, a: &u32) -> u32 {
        self.neg_u(*a)
    }
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        self.sub_u(*a, *b)
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        self.mul_u(*a, *b)
    }
    fn inv(&self, a: &u32) -> Result<u32> {
        self.inv_u(*a)
    }
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    fn elem_eq(&self, a: &u32, b: &u32) -> bool {
        a == b
    }
    fn descriptor(&self) -> String {
        format!("GF({})", self.p)
    }
}

/// An element `num/den` of a rational function field. Fractions are not
/// reduced by a gcd; the denominator is only scaled to be monic.
#[derive(Clone, Debug)]
pub struct Frac {
    pub num: MultiPoly,
    pub den: MultiPoly,
}

/// `F_p(t_1,..,t_m)`, a pure transcendental extension of a prime field.
#[derive(Clone, Debug)]
pub struct RationalFunctionField {
    ring: Arc<PolyRing>,
}

impl PartialEq for RationalFunctionField {
    fn eq(&self, other: &Self) -> bool {
        *self.ring == *other.ring
    }
}

impl RationalFunctionField {
    pub fn new(base: PrimeField, vars: &[&str]) -> Result<Self> {
        let ring = PolyRing::new(base, vars.iter().map(|s| s.to_string()).collect())?;
        Ok(Self { ring: Arc::new(ring) })
    }

    pub fn from_ring(ring: Arc<PolyRing>) -> Self {
        Self { ring }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn base(&self) -> PrimeField {
        self.ring.field()
    }

    /// The generator `t_i` (0-based).
    pub fn var(&self, i: usize) -> Frac {
        Frac { num: MultiPoly::var(&self.ring, i), den: MultiPoly::one(&self.ring) }
    }

    pub fn from_poly(&self, num: MultiPoly) -> Frac {
        Frac { num, den: MultiPoly::one(&self.ring) }
    }

    pub fn make_frac(&self, num: MultiPoly, den: MultiPoly) -> Result<Frac> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.normalize(Frac { num, den }))
    }

    fn normalize(&self, f: Frac) -> Frac {
        if f.num.is_zero() {
            return self.zero();
        }
        let lc = f.den.leading_coefficient();
        if lc == 1 {
            return f;
        }
        let inv = self.ring.field().inv_u(lc).expect("nonzero leading coefficient");
        Frac { num: f.num.scale(inv), den: f.den.scale(inv) }
    }

    /// Parse `num/den` or a bare polynomial.
    pub fn parse_elem(&self, s: &str) -> Result<Frac> {
        match s.split_once('/') {
            Some((n, d)) => {
                let num = MultiPoly::parse(&self.ring, n.trim())?;
                let den = MultiPoly::parse(&self.ring, d.trim())?;
                self.make_frac(num, den)
            }
            None => Ok(self.from_poly(MultiPoly::parse(&self.ring, s.trim())?)),
        }
    }

    pub fn format_elem(&self, f: &Frac) -> String {
        if f.den.is_one() {
            f.num.to_string()
        } else {
            format!("{}/{}", f.num, f.den)
        }
    }

    /// Evaluate at a point of `F_p^m`; `None` when the denominator vanishes.
    pub fn eval(&self, f: &Frac, point: &[u32]) -> Option<u32> {
        let field = self.ring.field();
        let d = f.den.eval(point);
        if d == 0 {
            return None;
        }
        Some(field.mul_u(f.num.eval(point), field.inv_u(d).ok()?))
    }
}

impl Field for RationalFunctionField {
    type Elem = Frac;

    fn characteristic(&self) -> u32 {
        self.ring.field().p()
    }
    fn zero(&self) -> Frac {
        Frac { num: MultiPoly::zero(&self.ring), den: MultiPoly::one(&self.ring) }
    }
    fn one(&self) -> Frac {
        Frac { num: MultiPoly::one(&self.ring), den: MultiPoly::one(&self.ring) }
    }
    fn from_int(&self, n: i64) -> Frac {
        let c = self.ring.field().reduce(n);
        Frac { num: MultiPoly::constant(&self.ring, c), den: MultiPoly::one(&self.ring) }
    }
    fn add(&self, a: &Frac, b: &Frac) -> Frac {
        if a.num.is_zero() {
            return b.clone();
        }
        if b.num.is_zero() {
            return a.clone();
        }
        if a.den == b.den {
            return self.normalize(Frac { num: &a.num + &b.num, den: a.den.clone() });
        }
        let num = &(&a.num * &b.den) + &(&b.num * &a.den);
        self.normalize(Frac { num, den: &a.den * &b.den })
    }
    fn neg(&self, a: &Frac) -> Frac {
        Frac { num: -&a.num, den: a.den.clone() }
    }
    fn mul(&self, a: &Frac, b: &Frac) -> Frac {
        if a.num.is_zero() || b.num.is_zero() {
            return self.zero();
        }
        self.normalize(Frac { num: &a.num * &b.num, den: &a.den * &b.den })
    }
    fn inv(&self, a: &Frac) -> Result<Frac> {
        if a.num.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.normalize(Frac { num: a.den.clone(), den: a.num.clone() }))
    }
    fn is_zero(&self, a: &Frac) -> bool {
        a.num.is_zero()
    }
    fn elem_eq(&self, a: &Frac, b: &Frac) -> bool {
        &a.num * &b.den == &b.num * &a.den
    }
    fn descriptor(&self) -> String {
        format!("GF({})({})", self.ring.field().p(), self.ring.vars().join(","))
    }
}
