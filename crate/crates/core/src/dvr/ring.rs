use super::field::pow_mod;
use super::poly::{poly_eval, Poly};
use super::{Elem, Ring, RingKind, RingOps};
use crate::error::{Error, Result};

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

impl Ring {
    fn d(&self) -> usize {
        self.field.degree()
    }

    fn p(&self) -> u64 {
        self.field.characteristic()
    }

    /// Product of two mixed-kind elements as polynomials in `t`, reduced
    /// by the lifted modulus.
    fn mul_mixed(&self, a: &[u64], b: &[u64]) -> Elem {
        let d = self.d();
        let m = self.coeff_modulus;
        if d == 1 {
            return vec![mulmod(a[0], b[0], m)];
        }
        let mut prod = vec![0u64; 2 * d - 1];
        for i in 0..d {
            if a[i] == 0 {
                continue;
            }
            for j in 0..d {
                prod[i + j] = (prod[i + j] + mulmod(a[i], b[j], m)) % m;
            }
        }
        let modulus = self.field.modulus();
        for k in (d..2 * d - 1).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            for j in 0..d {
                let s = mulmod(c, modulus[j], m);
                prod[k - d + j] = (prod[k - d + j] + m - s) % m;
            }
        }
        prod.truncate(d);
        prod
    }

    fn mul_equal(&self, a: &[u64], b: &[u64]) -> Elem {
        let d = self.d();
        let n = self.precision;
        let mut out = vec![0u64; n * d];
        for i in 0..n {
            let ai = a[i * d..(i + 1) * d].to_vec();
            if ai.iter().all(|&c| c == 0) {
                continue;
            }
            for j in 0..n - i {
                let bj = b[j * d..(j + 1) * d].to_vec();
                let prod = self.field.mul(&ai, &bj);
                let k = i + j;
                let block = self.field.add(&out[k * d..(k + 1) * d].to_vec(), &prod);
                out[k * d..(k + 1) * d].copy_from_slice(&block);
            }
        }
        out
    }

    /// Reduction to the residue field.
    pub fn residue(&self, a: &Elem) -> Elem {
        match self.kind {
            RingKind::Mixed => a.iter().map(|c| c % self.p()).collect(),
            RingKind::Equal => a[..self.d()].to_vec(),
        }
    }

    /// Coefficient-wise lift of a residue element.
    pub fn lift(&self, a: &Elem) -> Elem {
        match self.kind {
            RingKind::Mixed => a.clone(),
            RingKind::Equal => {
                let mut v = vec![0u64; self.precision * self.d()];
                v[..self.d()].copy_from_slice(a);
                v
            }
        }
    }

    /// Multiplicative section of the residue map: the Teichmüller lift in
    /// mixed characteristic, the constant lift in equal characteristic.
    pub fn section(&self, a: &Elem) -> Elem {
        match self.kind {
            RingKind::Equal => self.lift(a),
            RingKind::Mixed => {
                let q = (self.p() as u128).pow(self.d() as u32);
                let mut x = self.lift(a);
                for _ in 0..self.precision {
                    x = self.pow(&x, q);
                }
                x
            }
        }
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

    /// The uniformizer `p` or `x`.
    pub fn uniformizer(&self) -> Elem {
        self.uniformizer_power(1)
    }

    pub fn uniformizer_power(&self, k: usize) -> Elem {
        let mut v = self.zero();
        if k >= self.precision {
            return v;
        }
        match self.kind {
            RingKind::Mixed => v[0] = pow_mod(self.p(), k as u64, self.coeff_modulus),
            RingKind::Equal => v[k * self.d()] = 1,
        }
        v
    }

    /// Exact division by `pi^k` of an element of valuation at least `k`.
    /// The result is only determined modulo `pi^(N-k)`; the representative
    /// with zero high part is returned.
    pub fn divide_by_uniformizer(&self, a: &Elem, k: usize) -> Elem {
        debug_assert!(self.valuation(a) >= k);
        match self.kind {
            RingKind::Mixed => {
                let pk = self.p().pow(k as u32);
                a.iter().map(|c| c / pk).collect()
            }
            RingKind::Equal => {
                let d = self.d();
                let mut v = vec![0u64; self.precision * d];
                v[..(self.precision - k) * d].copy_from_slice(&a[k * d..]);
                v
            }
        }
    }

    /// Element from its base-`p` digit code on the residue field, lifted by
    /// the section.
    pub fn section_of_code(&self, code: u64) -> Elem {
        self.section(&self.field.element_from_code(code))
    }

    /// Integer value of a mixed-kind element of degree one.
    pub fn as_integer(&self, a: &Elem) -> Option<u64> {
        (self.kind == RingKind::Mixed && self.d() == 1).then(|| a[0])
    }

    /// Reduces raw coefficients into canonical form, checking the layout.
    pub fn element(&self, coeffs: &[i64]) -> Result<Elem> {
        let expected = match self.kind {
            RingKind::Mixed => self.d(),
            RingKind::Equal => self.d() * self.precision,
        };
        if coeffs.len() > expected {
            return Err(Error::DimensionMismatch {
                expected,
                found: coeffs.len(),
            });
        }
        let m = self.coeff_modulus as i128;
        let mut v: Elem = coeffs
            .iter()
            .map(|&c| (c as i128).rem_euclid(m) as u64)
            .collect();
        v.resize(expected, 0);
        Ok(v)
    }

    /// Same ring at a different precision.
    pub fn with_precision(&self, precision: usize) -> Result<Ring> {
        Ring::new(self.kind, self.field.clone(), precision)
    }

    /// The unramified extension of relative degree `e`, together with the
    /// image of the generator `t` of this ring's residue field.
    pub fn unramified_extension(&self, e: usize) -> Result<(Ring, Elem)> {
        if e == 0 {
            return Err(Error::InvalidRing(
                "extension degree must be at least 1".into(),
            ));
        }
        let big = super::ResidueField::new(self.p(), self.d() * e)?;
        let ext = Ring::new(self.kind, big, self.precision)?;
        // a root of this field's modulus in the big residue field
        let f: Poly = self
            .field
            .modulus()
            .iter()
            .map(|&c| ext.field.from_int(c as i64))
            .collect();
        let q_big = ext
            .field
            .order()
            .ok_or_else(|| Error::InvalidRing("extension too large".into()))?;
        let root = (0..q_big)
            .map(|c| ext.field.element_from_code(c))
            .find(|a| ext.field.is_zero(&poly_eval(&ext.field, &f, a)))
            .expect("an irreducible polynomial splits in the extension of its degree");
        let image = match self.kind {
            RingKind::Equal => ext.lift(&root),
            RingKind::Mixed => {
                // Newton iteration on the lifted modulus; the root is simple
                let f_ring: Poly = self
                    .field
                    .modulus()
                    .iter()
                    .map(|&c| ext.from_int(c as i64))
                    .collect();
                let df: Poly = (1..f_ring.len())
                    .map(|i| ext.mul(&ext.from_int(i as i64), &f_ring[i]))
                    .collect();
                let mut x = ext.lift(&root);
                for _ in 0..=self.precision {
                    let fx = poly_eval(&ext, &f_ring, &x);
                    let dfx = poly_eval(&ext, &df, &x);
                    let inv = ext.unit_inverse(&dfx).expect("separable modulus");
                    x = ext.sub(&x, &ext.mul(&fx, &inv));
                }
                x
            }
        };
        Ok((ext, image))
    }

    /// Image of an element under the embedding determined by the image of
    /// the generator `t`.
    pub fn embed(&self, ext: &Ring, t_image: &Elem, a: &Elem) -> Elem {
        let d = self.d();
        let embed_coeffs = |coeffs: &[u64]| -> Elem {
            let poly: Poly = coeffs.iter().map(|&c| ext.from_int(c as i64)).collect();
            poly_eval(ext, &poly, t_image)
        };
        match self.kind {
            RingKind::Mixed => embed_coeffs(a),
            RingKind::Equal => {
                let mut out = ext.zero();
                for k in 0..self.precision {
                    let block = embed_coeffs(&a[k * d..(k + 1) * d]);
                    out = ext.add(&out, &ext.mul(&block, &ext.uniformizer_power(k)));
                }
                out
            }
        }
    }
}

impl RingOps for Ring {
    fn zero(&self) -> Elem {
        match self.kind {
            RingKind::Mixed => vec![0; self.d()],
            RingKind::Equal => vec![0; self.d() * self.precision],
        }
    }

    fn one(&self) -> Elem {
        let mut v = self.zero();
        v[0] = 1;
        v
    }

    fn from_int(&self, n: i64) -> Elem {
        let mut v = self.zero();
        v[0] = (n as i128).rem_euclid(self.coeff_modulus as i128) as u64;
        v
    }

    fn add(&self, a: &Elem, b: &Elem) -> Elem {
        let m = self.coeff_modulus;
        a.iter().zip(b).map(|(x, y)| (x + y) % m).collect()
    }

    fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        let m = self.coeff_modulus;
        a.iter().zip(b).map(|(x, y)| (x + m - y) % m).collect()
    }

    fn neg(&self, a: &Elem) -> Elem {
        let m = self.coeff_modulus;
        a.iter().map(|x| (m - x) % m).collect()
    }

    fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        match self.kind {
            RingKind::Mixed => self.mul_mixed(a, b),
            RingKind::Equal => self.mul_equal(a, b),
        }
    }

    fn is_zero(&self, a: &Elem) -> bool {
        a.iter().all(|&c| c == 0)
    }

    fn unit_inverse(&self, a: &Elem) -> Option<Elem> {
        let r = self.field.unit_inverse(&self.residue(a))?;
        let mut y = self.lift(&r);
        let two = self.from_int(2);
        // Newton: each step doubles the number of correct digits
        let mut correct = 1;
        while correct < self.precision {
            y = self.mul(&y, &self.sub(&two, &self.mul(a, &y)));
            correct *= 2;
        }
        Some(y)
    }

    fn valuation(&self, a: &Elem) -> usize {
        match self.kind {
            RingKind::Mixed => a
                .iter()
                .filter(|&&c| c != 0)
                .map(|&c| {
                    let mut v = 0;
                    let mut c = c;
                    while c % self.p() == 0 {
                        c /= self.p();
                        v += 1;
                    }
                    v
                })
                .min()
                .unwrap_or(self.precision),
            RingKind::Equal => {
                let d = self.d();
                (0..self.precision)
                    .find(|&k| a[k * d..(k + 1) * d].iter().any(|&c| c != 0))
                    .unwrap_or(self.precision)
            }
        }
    }

    fn precision(&self) -> usize {
        self.precision
    }
}
