use serde::{Deserialize, Serialize};

use super::poly::{poly_divrem_monic, poly_gcd_field, poly_powmod, poly_trim};
use super::{Elem, RingOps};
use crate::error::{Error, Result};
use crate::lattice::is_prime;

/// The finite field `F_p[t] / (modulus)` with `q = p^degree` elements.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ResidueField {
    p: u64,
    degree: usize,
    /// Monic, low-to-high, length `degree + 1`.
    modulus: Vec<u64>,
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, m);
        }
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    acc
}

impl ResidueField {
    /// The prime field `F_p`.
    pub fn prime(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidRing(format!("{p} is not prime")));
        }
        Ok(ResidueField {
            p,
            degree: 1,
            modulus: vec![0, 1],
        })
    }

    /// `F_{p^d}` with the first irreducible modulus in the order of
    /// [`smallest_irreducible`].
    pub fn new(p: u64, degree: usize) -> Result<Self> {
        let base = Self::prime(p)?;
        if degree == 0 {
            return Err(Error::InvalidRing(
                "residue degree must be at least 1".into(),
            ));
        }
        let modulus = base.smallest_irreducible(degree);
        Ok(ResidueField { p, degree, modulus })
    }

    /// Field with an explicitly chosen modulus, which must be monic and
    /// irreducible over `F_p`.
    pub fn with_modulus(p: u64, modulus: Vec<u64>) -> Result<Self> {
        let base = Self::prime(p)?;
        let degree = modulus.len().saturating_sub(1);
        if degree == 0 || modulus[degree] != 1 || modulus.iter().any(|&c| c >= p) {
            return Err(Error::InvalidRing(
                "modulus must be monic with reduced coefficients".into(),
            ));
        }
        let lifted: Vec<Elem> = modulus.iter().map(|&c| vec![c]).collect();
        if !base.is_irreducible(&lifted) {
            return Err(Error::InvalidRing("modulus is not irreducible".into()));
        }
        Ok(ResidueField { p, degree, modulus })
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// Number of elements, if it fits in a `u64`.
    pub fn order(&self) -> Option<u64> {
        self.p.checked_pow(self.degree as u32)
    }

    /// Element with base-`p` digits of `code` as coefficients.
    pub fn element_from_code(&self, mut code: u64) -> Elem {
        let mut v = vec![0u64; self.degree];
        for c in v.iter_mut() {
            *c = code % self.p;
            code /= self.p;
        }
        v
    }

    /// Inverse of [`element_from_code`](Self::element_from_code); also the
    /// total order used to sort residues.
    pub fn code(&self, a: &[u64]) -> u128 {
        a.iter()
            .rev()
            .fold(0u128, |acc, &c| acc * self.p as u128 + c as u128)
    }

    pub fn pow(&self, a: &Elem, mut exp: u128) -> Elem {
        let mut acc = self.one();
        let mut base = a.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            exp >>= 1;
        }
        acc
    }

    /// Irreducibility over this field via Rabin's test.
    pub fn is_irreducible(&self, f: &[Elem]) -> bool {
        let f = poly_trim(self, f.to_vec());
        let n = f.len().saturating_sub(1);
        if n == 0 {
            return false;
        }
        if n == 1 {
            return true;
        }
        let Some(q) = self.order() else { return false };
        let lc_inv = self
            .unit_inverse(&f[n])
            .expect("nonzero leading coefficient");
        let monic: Vec<Elem> = f.iter().map(|c| self.mul(c, &lc_inv)).collect();
        let x = vec![self.zero(), self.one()];
        // X^(q^k) mod f for k = 1..n
        let mut frob = vec![x.clone()];
        for _ in 0..n {
            let last = frob.last().unwrap().clone();
            frob.push(poly_powmod(self, &last, q as u128, &monic));
        }
        let minus_x = |v: &Vec<Elem>| {
            let mut d = v.clone();
            d.resize(2.max(d.len()), self.zero());
            d[1] = self.sub(&d[1], &self.one());
            poly_trim(self, d)
        };
        if !minus_x(&frob[n]).is_empty() {
            return false;
        }
        for r in prime_divisors(n) {
            let g = poly_gcd_field(self, &minus_x(&frob[n / r]), &monic);
            if g.len() > 1 {
                return false;
            }
        }
        true
    }

    /// Monic irreducible polynomial of degree `d` over this field, first in
    /// the order of the integer whose base-`q` digits are its lower
    /// coefficients (constant term least significant).
    pub fn smallest_irreducible(&self, d: usize) -> Vec<u64> {
        assert!(self.degree == 1, "only used over prime fields");
        let p = self.p;
        let mut code = 0u64;
        loop {
            let mut coeffs: Vec<u64> = Vec::with_capacity(d + 1);
            let mut c = code;
            for _ in 0..d {
                coeffs.push(c % p);
                c /= p;
            }
            coeffs.push(1);
            let lifted: Vec<Elem> = coeffs.iter().map(|&c| vec![c]).collect();
            if self.is_irreducible(&lifted) {
                return coeffs;
            }
            code += 1;
        }
    }

    /// Degrees of the distinct irreducible factors of a nonzero polynomial.
    pub fn irreducible_factor_degrees(&self, f: &[Elem]) -> Vec<usize> {
        let mut g = poly_trim(self, f.to_vec());
        let Some(q) = self.order() else { return vec![] };
        let mut degrees = Vec::new();
        let mut e = 1;
        let x = vec![self.zero(), self.one()];
        while g.len() > 1 {
            let lc_inv = self.unit_inverse(g.last().unwrap()).unwrap();
            g = g.iter().map(|c| self.mul(c, &lc_inv)).collect();
            // X^(q^e) - X mod g
            let mut h = x.clone();
            for _ in 0..e {
                h = poly_powmod(self, &h, q as u128, &g);
            }
            h.resize(2.max(h.len()), self.zero());
            h[1] = self.sub(&h[1], &self.one());
            let h = poly_trim(self, h);
            let mut d = poly_gcd_field(self, &h, &g);
            if d.len() > 1 {
                degrees.push(e);
                while d.len() > 1 {
                    g = poly_divrem_monic(self, &g, &d).0;
                    d = poly_gcd_field(self, &d, &g);
                }
            }
            e += 1;
        }
        degrees
    }

    /// Multiplication of field elements as polynomials in `t`.
    fn mul_raw(&self, a: &[u64], b: &[u64]) -> Elem {
        let d = self.degree;
        let p = self.p;
        let mut prod = vec![0u64; 2 * d - 1];
        for i in 0..d {
            if a[i] == 0 {
                continue;
            }
            for j in 0..d {
                prod[i + j] = (prod[i + j] + mulmod(a[i], b[j], p)) % p;
            }
        }
        for k in (d..2 * d - 1).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            for j in 0..d {
                let sub = mulmod(c, self.modulus[j], p);
                prod[k - d + j] = (prod[k - d + j] + p - sub) % p;
            }
            prod[k] = 0;
        }
        prod.truncate(d);
        prod
    }
}

pub(crate) fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut f = 2;
    while f * f <= n {
        if n % f == 0 {
            out.push(f);
            while n % f == 0 {
                n /= f;
            }
        }
        f += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl RingOps for ResidueField {
    fn zero(&self) -> Elem {
        vec![0; self.degree]
    }

    fn one(&self) -> Elem {
        let mut v = vec![0; self.degree];
        v[0] = 1;
        v
    }

    fn from_int(&self, n: i64) -> Elem {
        let mut v = vec![0; self.degree];
        v[0] = n.rem_euclid(self.p as i64) as u64;
        v
    }

    fn add(&self, a: &Elem, b: &Elem) -> Elem {
        a.iter().zip(b).map(|(x, y)| (x + y) % self.p).collect()
    }

    fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        a.iter()
            .zip(b)
            .map(|(x, y)| (x + self.p - y) % self.p)
            .collect()
    }

    fn neg(&self, a: &Elem) -> Elem {
        a.iter().map(|x| (self.p - x) % self.p).collect()
    }

    fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        if self.degree == 1 {
            return vec![mulmod(a[0], b[0], self.p)];
        }
        self.mul_raw(a, b)
    }

    fn is_zero(&self, a: &Elem) -> bool {
        a.iter().all(|&c| c == 0)
    }

    fn unit_inverse(&self, a: &Elem) -> Option<Elem> {
        if self.is_zero(a) {
            return None;
        }
        if self.degree == 1 {
            return Some(vec![pow_mod(a[0], self.p - 2, self.p)]);
        }
        let q = (self.p as u128).pow(self.degree as u32);
        Some(self.pow(a, q - 2))
    }

    fn valuation(&self, a: &Elem) -> usize {
        if self.is_zero(a) {
            1
        } else {
            0
        }
    }

    fn precision(&self) -> usize {
        1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_irreducibles() {
        let f2 = ResidueField::prime(2).unwrap();
        assert_eq!(f2.smallest_irreducible(2), vec![1, 1, 1]);
        assert_eq!(f2.smallest_irreducible(3), vec![1, 1, 0, 1]);
        let f5 = ResidueField::prime(5).unwrap();
        // X^2 + 2 is the first irreducible quadratic over F_5
        assert_eq!(f5.smallest_irreducible(2), vec![2, 0, 1]);
    }

    #[test]
    fn field_axioms_f25() {
        let f = ResidueField::new(5, 2).unwrap();
        for c in 1..25 {
            let a = f.element_from_code(c);
            let inv = f.unit_inverse(&a).unwrap();
            assert_eq!(f.mul(&a, &inv), f.one());
            assert_eq!(f.code(&a), c as u128);
            assert_eq!(f.pow(&a, 24), f.one());
        }
    }

    #[test]
    fn factor_degrees() {
        let f5 = ResidueField::prime(5).unwrap();
        let e = |v: &[u64]| v.iter().map(|&c| vec![c]).collect::<Vec<_>>();
        // (X^2 + 2)(X - 1)
        assert_eq!(f5.irreducible_factor_degrees(&e(&[3, 2, 4, 1])), vec![1, 2]);
        assert_eq!(f5.irreducible_factor_degrees(&e(&[1, 0, 1])), vec![1]);
        assert!(!f5.is_irreducible(&e(&[1, 0, 1])));
    }
}
