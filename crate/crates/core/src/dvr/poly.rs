//! Dense univariate polynomials over any [`RingOps`] implementation,
//! stored low degree first with no trailing zero coefficients.

use super::{Elem, RingOps};

pub type Poly = Vec<Elem>;

pub fn poly_trim<R: RingOps + ?Sized>(r: &R, mut f: Poly) -> Poly {
    while f.last().is_some_and(|c| r.is_zero(c)) {
        f.pop();
    }
    f
}

pub fn poly_add<R: RingOps + ?Sized>(r: &R, f: &[Elem], g: &[Elem]) -> Poly {
    let n = f.len().max(g.len());
    let zero = r.zero();
    let out = (0..n)
        .map(|i| r.add(f.get(i).unwrap_or(&zero), g.get(i).unwrap_or(&zero)))
        .collect();
    poly_trim(r, out)
}

pub fn poly_sub<R: RingOps + ?Sized>(r: &R, f: &[Elem], g: &[Elem]) -> Poly {
    let n = f.len().max(g.len());
    let zero = r.zero();
    let out = (0..n)
        .map(|i| r.sub(f.get(i).unwrap_or(&zero), g.get(i).unwrap_or(&zero)))
        .collect();
    poly_trim(r, out)
}

pub fn poly_scale<R: RingOps + ?Sized>(r: &R, f: &[Elem], c: &Elem) -> Poly {
    poly_trim(r, f.iter().map(|a| r.mul(a, c)).collect())
}

pub fn poly_mul<R: RingOps + ?Sized>(r: &R, f: &[Elem], g: &[Elem]) -> Poly {
    if f.is_empty() || g.is_empty() {
        return vec![];
    }
    let mut out = vec![r.zero(); f.len() + g.len() - 1];
    for (i, a) in f.iter().enumerate() {
        if r.is_zero(a) {
            continue;
        }
        for (j, b) in g.iter().enumerate() {
            out[i + j] = r.add(&out[i + j], &r.mul(a, b));
        }
    }
    poly_trim(r, out)
}

/// Division by a monic polynomial; valid over any commutative ring.
pub fn poly_divrem_monic<R: RingOps + ?Sized>(r: &R, f: &[Elem], m: &[Elem]) -> (Poly, Poly) {
    let dm = m.len() - 1;
    let mut rem = f.to_vec();
    if rem.len() <= dm {
        return (vec![], poly_trim(r, rem));
    }
    let mut quot = vec![r.zero(); rem.len() - dm];
    for k in (dm..rem.len()).rev() {
        let c = rem[k].clone();
        if r.is_zero(&c) {
            continue;
        }
        quot[k - dm] = c.clone();
        for j in 0..=dm {
            rem[k - dm + j] = r.sub(&rem[k - dm + j], &r.mul(&c, &m[j]));
        }
    }
    rem.truncate(dm);
    (poly_trim(r, quot), poly_trim(r, rem))
}

pub fn poly_mulmod<R: RingOps + ?Sized>(r: &R, f: &[Elem], g: &[Elem], m: &[Elem]) -> Poly {
    poly_divrem_monic(r, &poly_mul(r, f, g), m).1
}

pub fn poly_powmod<R: RingOps + ?Sized>(r: &R, f: &[Elem], mut exp: u128, m: &[Elem]) -> Poly {
    let mut acc = poly_divrem_monic(r, &[r.one()], m).1;
    let mut base = poly_divrem_monic(r, f, m).1;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = poly_mulmod(r, &acc, &base, m);
        }
        base = poly_mulmod(r, &base, &base, m);
        exp >>= 1;
    }
    acc
}

pub fn poly_eval<R: RingOps + ?Sized>(r: &R, f: &[Elem], x: &Elem) -> Elem {
    f.iter()
        .rev()
        .fold(r.zero(), |acc, c| r.add(&r.mul(&acc, x), c))
}

/// Monic polynomial `prod (X - a_i)`.
pub fn poly_from_roots<R: RingOps + ?Sized>(r: &R, roots: &[Elem]) -> Poly {
    roots.iter().fold(vec![r.one()], |acc, a| {
        poly_mul(r, &acc, &[r.neg(a), r.one()])
    })
}

pub fn poly_monic<R: RingOps + ?Sized>(r: &R, f: &[Elem]) -> Poly {
    match f.last() {
        None => vec![],
        Some(lc) => {
            let inv = r.unit_inverse(lc).expect("unit leading coefficient");
            poly_scale(r, f, &inv)
        }
    }
}

/// Monic gcd over a field.
pub fn poly_gcd_field<R: RingOps + ?Sized>(r: &R, f: &[Elem], g: &[Elem]) -> Poly {
    let mut a = poly_trim(r, f.to_vec());
    let mut b = poly_trim(r, g.to_vec());
    while !b.is_empty() {
        let bm = poly_monic(r, &b);
        let rem = poly_divrem_monic(r, &a, &bm).1;
        a = bm;
        b = rem;
    }
    poly_monic(r, &a)
}

/// Over a field: `(s, t)` with `s f + t g = 1`, or `None` if `f` and `g`
/// are not coprime.
pub fn poly_bezout_field<R: RingOps + ?Sized>(
    r: &R,
    f: &[Elem],
    g: &[Elem],
) -> Option<(Poly, Poly)> {
    let (mut r0, mut r1) = (poly_trim(r, f.to_vec()), poly_trim(r, g.to_vec()));
    let (mut s0, mut s1): (Poly, Poly) = (vec![r.one()], vec![]);
    let (mut t0, mut t1): (Poly, Poly) = (vec![], vec![r.one()]);
    while !r1.is_empty() {
        let lc_inv = r.unit_inverse(r1.last().unwrap())?;
        let monic = poly_scale(r, &r1, &lc_inv);
        let (q, rem) = poly_divrem_monic(r, &r0, &monic);
        let q = poly_scale(r, &q, &lc_inv);
        let s2 = poly_sub(r, &s0, &poly_mul(r, &q, &s1));
        let t2 = poly_sub(r, &t0, &poly_mul(r, &q, &t1));
        r0 = std::mem::replace(&mut r1, rem);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if r0.len() != 1 {
        return None;
    }
    let inv = r.unit_inverse(&r0[0])?;
    Some((poly_scale(r, &s0, &inv), poly_scale(r, &t0, &inv)))
}
