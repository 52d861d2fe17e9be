//! Dense univariate polynomials over `F_p`, enough for Smith normal forms of
//! linear pencils.

use crate::exactla::PrimeField;

/// Coefficients in increasing degree, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct UPoly(pub Vec<u32>);

impl UPoly {
    pub fn zero() -> Self {
        UPoly(Vec::new())
    }

    pub fn constant(c: u32) -> Self {
        UPoly(vec![c]).trim()
    }

    /// `a·t + b`.
    pub fn linear(a: u32, b: u32) -> Self {
        UPoly(vec![b, a]).trim()
    }

    fn trim(mut self) -> Self {
        while self.0.last() == Some(&0) {
            self.0.pop();
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn lead(&self) -> u32 {
        *self.0.last().unwrap_or(&0)
    }

    pub fn add(&self, other: &Self, f: PrimeField) -> Self {
        let n = self.0.len().max(other.0.len());
        let get = |v: &Vec<u32>, i: usize| v.get(i).copied().unwrap_or(0);
        UPoly((0..n).map(|i| f.add_u(get(&self.0, i), get(&other.0, i))).collect()).trim()
    }

    pub fn scale(&self, c: u32, f: PrimeField) -> Self {
        UPoly(self.0.iter().map(|&a| f.mul_u(a, c)).collect()).trim()
    }

    pub fn neg(&self, f: PrimeField) -> Self {
        self.scale(f.neg_u(1), f)
    }

    pub fn mul(&self, other: &Self, f: PrimeField) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![0; self.0.len() + other.0.len() - 1];
        for (i, &a) in self.0.iter().enumerate() {
            for (j, &b) in other.0.iter().enumerate() {
                out[i + j] = f.add_u(out[i + j], f.mul_u(a, b));
            }
        }
        UPoly(out).trim()
    }

    pub fn monic(&self, f: PrimeField) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(f.inv_u(self.lead()).expect("nonzero lead"), f)
    }

    /// Quotient and remainder; `d` nonzero.
    pub fn div_rem(&self, d: &Self, f: PrimeField) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let inv = f.inv_u(d.lead()).expect("nonzero lead");
        let mut r = self.0.clone();
        let mut q = vec![0; r.len().saturating_sub(dd)];
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1 - dd;
            let c = f.mul_u(*r.last().expect("nonempty"), inv);
            q[k] = c;
            for (i, &di) in d.0.iter().enumerate() {
                r[k + i] = f.sub_u(r[k + i], f.mul_u(c, di));
            }
            while r.last() == Some(&0) {
                r.pop();
            }
        }
        (UPoly(q).trim(), UPoly(r).trim())
    }

    pub fn gcd(&self, other: &Self, f: PrimeField) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b, f).1;
            a = b;
            b = r;
        }
        a.monic(f)
    }
}

/// Product of the invariant factors of a square polynomial matrix up to
/// index `n`, i.e. the monic gcd of its `n × n` minors, together with the
/// rank over `F_p(t)`.
pub(crate) fn determinantal_divisor(mut m: Vec<Vec<UPoly>>, n: usize, f: PrimeField) -> (usize, UPoly) {
    let size = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut diag: Vec<UPoly> = Vec::new();
    let mut k = 0;
    while k < size.min(cols) {
        // smallest-degree nonzero entry of the trailing block
        let mut best: Option<(usize, usize, usize)> = None;
        for (i, row) in m.iter().enumerate().skip(k) {
            for (j, e) in row.iter().enumerate().skip(k) {
                if let Some(d) = e.degree() {
                    if best.is_none_or(|b| d < b.0) {
                        best = Some((d, i, j));
                    }
                }
            }
        }
        let Some((_, bi, bj)) = best else { break };
        m.swap(k, bi);
        for row in m.iter_mut() {
            row.swap(k, bj);
        }
        let pivot = m[k][k].clone();
        let mut clean = true;
        for i in k + 1..size {
            if m[i][k].is_zero() {
                continue;
            }
            let (q, r) = m[i][k].div_rem(&pivot, f);
            let nq = q.neg(f);
            for j in k..cols {
                let v = m[i][j].add(&m[k][j].mul(&nq, f), f);
                m[i][j] = v;
            }
            debug_assert_eq!(m[i][k], r);
            clean &= r.is_zero();
        }
        for j in k + 1..cols {
            if m[k][j].is_zero() {
                continue;
            }
            let (q, r) = m[k][j].div_rem(&pivot, f);
            let nq = q.neg(f);
            for row in m.iter_mut().skip(k) {
                let v = row[j].add(&row[k].mul(&nq, f), f);
                row[j] = v;
            }
            clean &= r.is_zero();
        }
        if clean {
            diag.push(pivot.monic(f));
            k += 1;
        }
    }
    // diag(a, b) ~ diag(gcd, lcm) until the entries form a divisibility chain
    for i in 0..diag.len() {
        for j in i + 1..diag.len() {
            let g = diag[i].gcd(&diag[j], f);
            let l = diag[i].mul(&diag[j], f).div_rem(&g, f).0.monic(f);
            diag[i] = g;
            diag[j] = l;
        }
    }
    let rank = diag.len();
    let product = diag.iter().take(n).fold(UPoly::constant(1), |acc, d| acc.mul(d, f));
    (rank, product)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn division_and_gcd() {
        let f = gf(3);
        let a = UPoly(vec![2, 0, 1]); // t^2 - 1
        let b = UPoly(vec![1, 1]); // t + 1
        let (q, r) = a.div_rem(&b, f);
        assert_eq!(q, UPoly(vec![2, 1]));
        assert!(r.is_zero());
        assert_eq!(a.gcd(&UPoly(vec![2, 1]), f), UPoly(vec![2, 1]));
    }

    #[test]
    fn divisor_of_diagonal_pencil() {
        let f = gf(5);
        let t = UPoly::linear(1, 0);
        let t1 = UPoly::linear(1, 1);
        let m = vec![vec![t.clone(), UPoly::zero()], vec![UPoly::zero(), t1.clone()]];
        let (rank, d1) = determinantal_divisor(m.clone(), 1, f);
        assert_eq!(rank, 2);
        assert_eq!(d1, UPoly::constant(1));
        let (_, d2) = determinantal_divisor(m, 2, f);
        assert_eq!(d2, t.mul(&t1, f));
    }
}
