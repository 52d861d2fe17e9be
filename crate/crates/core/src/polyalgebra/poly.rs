use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactla::PrimeField;

pub type RingRef = Arc<PolyRing>;

/// `F_p[v_1,..,v_n]` with named variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyRing {
    field: PrimeField,
    vars: Vec<String>,
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl PolyRing {
    pub fn new(field: PrimeField, vars: Vec<String>) -> Result<Self> {
        for (i, v) in vars.iter().enumerate() {
            if !is_identifier(v) {
                return Err(Error::Parse(format!("bad variable name {v:?}")));
            }
            if vars[..i].contains(v) {
                return Err(Error::Parse(format!("duplicate variable {v:?}")));
            }
        }
        Ok(Self { field, vars })
    }

    pub fn shared(field: PrimeField, vars: &[&str]) -> Result<RingRef> {
        Ok(Arc::new(Self::new(field, vars.iter().map(|s| s.to_string()).collect())?))
    }

    /// Parse `GF(p)[v1,...,vn]`.
    pub fn parse(s: &str) -> Result<RingRef> {
        let s = s.trim();
        let err = || Error::Parse(format!("ring descriptor {s:?}; expected GF(p)[v1,...,vn]"));
        let rest = s.strip_prefix("GF(").ok_or_else(err)?;
        let (p, rest) = rest.split_once(')').ok_or_else(err)?;
        let p: u64 = p.trim().parse().map_err(|_| err())?;
        let inner = rest.trim().strip_prefix('[').and_then(|r| r.strip_suffix(']')).ok_or_else(err)?;
        let vars: Vec<String> = if inner.trim().is_empty() {
            Vec::new()
        } else {
            inner.split(',').map(|v| v.trim().to_string()).collect()
        };
        Ok(Arc::new(Self::new(PrimeField::new(p)?, vars)?))
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// The same ring with extra variables appended after the existing ones.
    pub fn extended(&self, extra: &[&str]) -> Result<RingRef> {
        let mut vars = self.vars.clone();
        for e in extra {
            let mut name = e.to_string();
            while vars.contains(&name) {
                name.push('_');
            }
            vars.push(name);
        }
        Ok(Arc::new(Self::new(self.field, vars)?))
    }
}

impl fmt::Display for PolyRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})[{}]", self.field.p(), self.vars.join(","))
    }
}

/// Monomial orders on exponent vectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MonomialOrder {
    Grevlex,
    Lex,
    /// Compare the total degree in the last `tail` variables first, then grevlex.
    /// Eliminates the trailing block.
    Eliminate { tail: usize },
}

impl MonomialOrder {
    pub fn cmp(&self, a: &[u32], b: &[u32]) -> Ordering {
        match *self {
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::Grevlex => grevlex(a, b),
            MonomialOrder::Eliminate { tail } => {
                let n = a.len();
                let ta: u32 = a[n - tail.min(n)..].iter().sum();
                let tb: u32 = b[n - tail.min(n)..].iter().sum();
                ta.cmp(&tb).then_with(|| grevlex(a, b))
            }
        }
    }
}

fn grevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().zip(b).rev() {
            if x != y {
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

/// Graded lex, used for printing and for picking a canonical leading coefficient.
pub(crate) fn grlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

/// Sparse multivariate polynomial: exponent vector → nonzero coefficient.
#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    ring: RingRef,
    terms: BTreeMap<Vec<u32>, u32>,
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly({})", self)
    }
}

impl MultiPoly {
    pub fn zero(ring: &RingRef) -> Self {
        Self { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn one(ring: &RingRef) -> Self {
        Self::constant(ring, 1)
    }

    pub fn constant(ring: &RingRef, c: u32) -> Self {
        let c = c % ring.field.p();
        let mut terms = BTreeMap::new();
        if c != 0 {
            terms.insert(vec![0; ring.nvars()], c);
        }
        Self { ring: ring.clone(), terms }
    }

    pub fn var(ring: &RingRef, i: usize) -> Self {
        let mut e = vec![0; ring.nvars()];
        e[i] = 1;
        Self::monomial(ring, e, 1)
    }

    pub fn monomial(ring: &RingRef, exps: Vec<u32>, c: u32) -> Self {
        assert_eq!(exps.len(), ring.nvars(), "exponent vector length");
        let c = c % ring.field.p();
        let mut terms = BTreeMap::new();
        if c != 0 {
            terms.insert(exps, c);
        }
        Self { ring: ring.clone(), terms }
    }

    pub fn from_terms(ring: &RingRef, terms: impl IntoIterator<Item = (Vec<u32>, u32)>) -> Self {
        let mut p = Self::zero(ring);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub(crate) fn add_term(&mut self, exps: Vec<u32>, c: u32) {
        let f = self.ring.field;
        let c = c % f.p();
        if c == 0 {
            return;
        }
        match self.terms.get_mut(&exps) {
            Some(v) => {
                *v = f.add_u(*v, c);
                if *v == 0 {
                    self.terms.remove(&exps);
                }
            }
            None => {
                self.terms.insert(exps, c);
            }
        }
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn field(&self) -> PrimeField {
        self.ring.field
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &u32)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.constant_term() == 1
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    pub fn constant_term(&self) -> u32 {
        self.terms.get(&vec![0; self.ring.nvars()]).copied().unwrap_or(0)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|x| x == d),
        }
    }

    /// Leading term under `order`.
    pub fn leading_term(&self, order: MonomialOrder) -> Option<(&Vec<u32>, u32)> {
        self.terms.iter().max_by(|a, b| order.cmp(a.0, b.0)).map(|(e, c)| (e, *c))
    }

    /// Coefficient of the graded-lex largest term (0 for the zero polynomial).
    pub fn leading_coefficient(&self) -> u32 {
        self.terms.iter().max_by(|a, b| grlex(a.0, b.0)).map_or(0, |(_, c)| *c)
    }

    pub fn scale(&self, c: u32) -> Self {
        let f = self.ring.field;
        let c = c % f.p();
        if c == 0 {
            return Self::zero(&self.ring);
        }
        Self { ring: self.ring.clone(), terms: self.terms.iter().map(|(e, v)| (e.clone(), f.mul_u(*v, c))).collect() }
    }

    /// Scale so the graded-lex leading coefficient is 1.
    pub fn monic(&self) -> Self {
        let lc = self.leading_coefficient();
        if lc <= 1 {
            return self.clone();
        }
        self.scale(self.ring.field.inv_u(lc).expect("nonzero"))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.ring);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, point: &[u32]) -> u32 {
        let f = self.ring.field;
        let mut acc = 0;
        for (e, c) in &self.terms {
            let mut t = *c;
            for (x, k) in point.iter().zip(e) {
                t = f.mul_u(t, f.pow_u(*x % f.p(), *k as u64));
            }
            acc = f.add_u(acc, t);
        }
        acc
    }

    /// Substitute polynomials (in a possibly different ring) for the variables.
    pub fn substitute(&self, target: &RingRef, values: &[MultiPoly]) -> MultiPoly {
        let mut acc = MultiPoly::zero(target);
        for (e, c) in &self.terms {
            let mut t = MultiPoly::constant(target, *c);
            for (v, k) in values.iter().zip(e) {
                if *k > 0 {
                    t = &t * &v.pow(*k);
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Re-home into a ring whose variables extend this ring's variables.
    pub fn extend_to(&self, target: &RingRef) -> MultiPoly {
        debug_assert!(target.nvars() >= self.ring.nvars());
        let pad = target.nvars() - self.ring.nvars();
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut e = e.clone();
                e.extend(std::iter::repeat_n(0, pad));
                (e, *c)
            })
            .collect();
        MultiPoly { ring: target.clone(), terms }
    }

    /// Drop trailing variables; `None` if any of them occurs.
    pub fn contract_to(&self, target: &RingRef) -> Option<MultiPoly> {
        let n = target.nvars();
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            if e[n..].iter().any(|&x| x != 0) {
                return None;
            }
            terms.insert(e[..n].to_vec(), *c);
        }
        Some(MultiPoly { ring: target.clone(), terms })
    }

    pub fn same_ring(&self, other: &MultiPoly) -> bool {
        Arc::ptr_eq(&self.ring, &other.ring) || *self.ring == *other.ring
    }

    /// Parse the text grammar, e.g. `a1^2*a2 + 3*a2^3`.
    pub fn parse(ring: &RingRef, s: &str) -> Result<MultiPoly> {
        Parser { ring, src: s, chars: s.char_indices().collect(), pos: 0 }.parse()
    }

    fn sorted_terms(&self) -> Vec<(&Vec<u32>, u32)> {
        let mut ts: Vec<_> = self.terms.iter().map(|(e, c)| (e, *c)).collect();
        ts.sort_by(|a, b| grlex(b.0, a.0));
        ts
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.sorted_terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let factors: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| {
                    if k == 1 {
                        self.ring.vars[i].clone()
                    } else {
                        format!("{}^{}", self.ring.vars[i], k)
                    }
                })
                .collect();
            match (factors.is_empty(), c) {
                (true, _) => write!(f, "{c}")?,
                (false, 1) => write!(f, "{}", factors.join("*"))?,
                (false, _) => write!(f, "{}*{}", c, factors.join("*"))?,
            }
        }
        Ok(())
    }
}

struct Parser<'a> {
    ring: &'a RingRef,
    src: &'a str,
    chars: Vec<(usize, char)>,
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} in polynomial {:?} at offset {}", self.src, self.pos))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].1.is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).map(|c| c.1)
    }

    fn number(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].1.is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        let s: String = self.chars[start..self.pos].iter().map(|c| c.1).collect();
        s.parse().map_err(|_| self.err("number out of range"))
    }

    fn identifier(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.chars.len() && (self.chars[self.pos].1.is_ascii_alphanumeric() || self.chars[self.pos].1 == '_') {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().map(|c| c.1).collect()
    }

    fn factor(&mut self, coef: &mut u32, exps: &mut [u32]) -> Result<()> {
        let f = self.ring.field();
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let n = self.number()?;
                *coef = f.mul_u(*coef, (n % f.p() as u64) as u32);
            }
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                let name = self.identifier();
                let i = self.ring.var_index(&name).ok_or_else(|| self.err(&format!("unknown variable {name:?}")))?;
                let mut k = 1u64;
                if self.peek() == Some('^') {
                    self.pos += 1;
                    k = self.number()?;
                }
                exps[i] += u32::try_from(k).map_err(|_| self.err("exponent too large"))?;
            }
            _ => return Err(self.err("expected a coefficient or variable")),
        }
        Ok(())
    }

    fn parse(mut self) -> Result<MultiPoly> {
        let f = self.ring.field();
        let mut out = MultiPoly::zero(self.ring);
        let mut sign = 1u32;
        if let Some(c @ ('+' | '-')) = self.peek() {
            self.pos += 1;
            if c == '-' {
                sign = f.neg_u(1);
            }
        }
        loop {
            let mut coef = sign;
            let mut exps = vec![0u32; self.ring.nvars()];
            self.factor(&mut coef, &mut exps)?;
            while self.peek() == Some('*') {
                self.pos += 1;
                self.factor(&mut coef, &mut exps)?;
            }
            out.add_term(exps, coef);
            match self.peek() {
                None => break,
                Some('+') => sign = 1,
                Some('-') => sign = f.neg_u(1),
                Some(_) => return Err(self.err("unexpected character")),
            }
            self.pos += 1;
        }
        Ok(out)
    }
}

fn check_rings(a: &MultiPoly, b: &MultiPoly) {
    assert!(a.same_ring(b), "polynomials from different rings: {} vs {}", a.ring, b.ring);
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        check_rings(self, rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), *c);
        }
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self + &(-rhs)
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        let f = self.ring.field;
        MultiPoly { ring: self.ring.clone(), terms: self.terms.iter().map(|(e, c)| (e.clone(), f.neg_u(*c))).collect() }
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        check_rings(self, rhs);
        let f = self.ring.field;
        let mut out = MultiPoly::zero(&self.ring);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, f.mul_u(*ca, *cb));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ring(p: u64, vars: &[&str]) -> RingRef {
        PolyRing::shared(PrimeField::new(p).unwrap(), vars).unwrap()
    }

    #[test]
    fn parse_and_print() {
        let r = ring(5, &["a1", "a2"]);
        let f = MultiPoly::parse(&r, "a1^2*a2 + 3*a2^3").unwrap();
        assert_eq!(f.to_string(), "a1^2*a2 + 3*a2^3");
        let g = MultiPoly::parse(&r, "-a1 + 2 - 3*a1*a1").unwrap();
        assert_eq!(g.to_string(), "2*a1^2 + 4*a1 + 2");
        assert_eq!(MultiPoly::parse(&r, "a1 - a1").unwrap().to_string(), "0");
        assert!(MultiPoly::parse(&r, "a3").is_err());
        assert!(MultiPoly::parse(&r, "a1 +").is_err());
    }

    #[test]
    fn ring_descriptor() {
        let r = PolyRing::parse("GF(2)[y1, y2]").unwrap();
        assert_eq!(r.nvars(), 2);
        assert_eq!(r.to_string(), "GF(2)[y1,y2]");
        assert!(PolyRing::parse("GF(4)[x]").is_err());
        assert!(PolyRing::parse("GF(2)[x,x]").is_err());
    }

    #[test]
    fn orders() {
        use MonomialOrder::*;
        // grevlex: x*z < y^2 in three variables
        assert_eq!(Grevlex.cmp(&[1, 0, 1], &[0, 2, 0]), Ordering::Less);
        assert_eq!(Lex.cmp(&[1, 0, 1], &[0, 2, 0]), Ordering::Greater);
        assert_eq!(Eliminate { tail: 1 }.cmp(&[0, 0, 1], &[5, 5, 0]), Ordering::Greater);
    }

    fn arb_poly(r: RingRef) -> impl Strategy<Value = MultiPoly> {
        let n = r.nvars();
        prop::collection::vec((prop::collection::vec(0u32..4, n), 0u32..7), 0..6)
            .prop_map(move |ts| MultiPoly::from_terms(&r, ts))
    }

    proptest! {
        #[test]
        fn print_parse_roundtrip(f in arb_poly(ring(7, &["x", "y", "z"]))) {
            let r = f.ring().clone();
            prop_assert_eq!(MultiPoly::parse(&r, &f.to_string()).unwrap(), f);
        }

        #[test]
        fn ring_axioms(f in arb_poly(ring(3, &["x", "y"])), g in arb_poly(ring(3, &["x", "y"])), h in arb_poly(ring(3, &["x", "y"]))) {
            prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
            prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
            prop_assert!((&f - &f).is_zero());
        }
    }
}
