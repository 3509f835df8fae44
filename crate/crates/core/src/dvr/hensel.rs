use serde::Serialize;

use super::matrix::{solve_unit, Matrix};
use super::poly::{
    poly_add, poly_bezout_field, poly_divrem_monic, poly_eval, poly_from_roots, poly_mul, poly_sub,
    poly_trim, Poly,
};
use super::{Elem, Ring, RingOps};
use crate::error::{Error, Result};

/// Residue fields larger than this are not searched for roots.
const ROOT_SEARCH_LIMIT: u64 = 1 << 22;

/// A monic factor congruent to `(X - residue_root)^multiplicity` modulo the
/// maximal ideal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HenselFactor {
    pub poly: Poly,
    pub residue_root: Elem,
    pub multiplicity: usize,
}

fn lcm(a: usize, b: usize) -> usize {
    a / num_integer::gcd(a, b) * b
}

fn is_monic(ring: &Ring, f: &[Elem]) -> bool {
    f.last().is_some_and(|c| *c == ring.one())
}

/// Roots of a residue polynomial with multiplicities, in increasing code
/// order, plus the cofactor free of roots.
fn residue_roots(ring: &Ring, f: &Poly) -> Result<(Vec<(Elem, usize)>, Poly)> {
    let field = ring.residue_field();
    let q = field
        .order()
        .filter(|&q| q <= ROOT_SEARCH_LIMIT)
        .ok_or_else(|| Error::InvalidRing("residue field too large for root search".into()))?;
    let mut g = f.clone();
    let mut roots = Vec::new();
    for code in 0..q {
        if g.len() <= 1 {
            break;
        }
        let a = field.element_from_code(code);
        let mut mult = 0;
        while g.len() > 1 && field.is_zero(&poly_eval(field, &g, &a)) {
            g = poly_divrem_monic(field, &g, &[field.neg(&a), field.one()]).0;
            mult += 1;
        }
        if mult > 0 {
            roots.push((a, mult));
        }
    }
    Ok((roots, g))
}

/// Lifts `f = g h` from the residue field to the full precision by
/// quadratic Newton steps. `h` stays monic throughout; `g` is recovered by
/// division at the end.
fn lift_coprime_pair(ring: &Ring, f: &Poly, g_bar: &Poly, h_bar: &Poly) -> Result<(Poly, Poly)> {
    let field = ring.residue_field();
    let (s_bar, t_bar) = poly_bezout_field(field, g_bar, h_bar)
        .expect("distinct residue roots give coprime factors");
    let lift = |p: &Poly| -> Poly { poly_trim(ring, p.iter().map(|c| ring.lift(c)).collect()) };
    let (mut g, mut h, mut s, mut t) = (lift(g_bar), lift(h_bar), lift(&s_bar), lift(&t_bar));
    let one = vec![ring.one()];
    let max_steps = 2 * (usize::BITS - ring.precision().leading_zeros()) as usize + 4;
    for _ in 0..max_steps {
        let e = poly_sub(ring, f, &poly_mul(ring, &g, &h));
        if e.is_empty() {
            break;
        }
        let (q, r) = poly_divrem_monic(ring, &poly_mul(ring, &s, &e), &h);
        let g_new = poly_add(
            ring,
            &g,
            &poly_add(ring, &poly_mul(ring, &t, &e), &poly_mul(ring, &q, &g)),
        );
        let h_new = poly_add(ring, &h, &r);
        let b = poly_sub(
            ring,
            &poly_add(
                ring,
                &poly_mul(ring, &s, &g_new),
                &poly_mul(ring, &t, &h_new),
            ),
            &one,
        );
        let (c, d) = poly_divrem_monic(ring, &poly_mul(ring, &s, &b), &h_new);
        s = poly_sub(ring, &s, &d);
        t = poly_sub(
            ring,
            &t,
            &poly_add(ring, &poly_mul(ring, &t, &b), &poly_mul(ring, &c, &g_new)),
        );
        g = g_new;
        h = h_new;
    }
    let (g_exact, rem) = poly_divrem_monic(ring, f, &h);
    if !rem.is_empty() || !is_monic(ring, &g_exact) || !is_monic(ring, &h) {
        return Err(Error::PrecisionExhausted(
            "Hensel lifting did not converge".into(),
        ));
    }
    Ok((g_exact, h))
}

/// Factors a monic polynomial into pairwise coprime monic factors, one per
/// residue root, sorted by residue root. Fails with `ResidueNotSplit`
/// (carrying the degree of the smallest extension of the residue field over
/// which the reduction splits) when the reduction has no full set of roots.
pub fn hensel_factor(ring: &Ring, f: &Poly) -> Result<Vec<HenselFactor>> {
    if !is_monic(ring, f) {
        return Err(Error::InvalidInput("polynomial must be monic".into()));
    }
    let field = ring.residue_field();
    let f_bar: Poly = f.iter().map(|c| ring.residue(c)).collect();
    let (roots, rest) = residue_roots(ring, &f_bar)?;
    if rest.len() > 1 {
        let e = field
            .irreducible_factor_degrees(&rest)
            .into_iter()
            .fold(1, lcm);
        return Err(Error::ResidueNotSplit {
            required_extension_degree: e,
        });
    }
    let mut factors = Vec::with_capacity(roots.len());
    let mut current = f.clone();
    let mut current_bar = f_bar;
    for (k, (a, mult)) in roots.iter().enumerate() {
        if k + 1 == roots.len() {
            factors.push(HenselFactor {
                poly: current.clone(),
                residue_root: a.clone(),
                multiplicity: *mult,
            });
            break;
        }
        let g_bar = poly_from_roots(field, &vec![a.clone(); *mult]);
        let h_bar = poly_divrem_monic(field, &current_bar, &g_bar).0;
        let (g, h) = lift_coprime_pair(ring, &current, &g_bar, &h_bar)?;
        factors.push(HenselFactor {
            poly: g,
            residue_root: a.clone(),
            multiplicity: *mult,
        });
        current = h;
        current_bar = h_bar;
    }
    Ok(factors)
}

/// The polynomial `p` of degree below the total degree of the moduli with
/// `p = residues[i] mod moduli[i]` for every `i`. Moduli must be monic; the
/// interpolation system is solved with unit pivots and fails with
/// `NonCoprimeModuli` when the moduli are not pairwise coprime.
pub fn crt_interpolate(ring: &Ring, moduli: &[Poly], residues: &[Elem]) -> Result<Poly> {
    if moduli.len() != residues.len() {
        return Err(Error::DimensionMismatch {
            expected: moduli.len(),
            found: residues.len(),
        });
    }
    if moduli.iter().any(|m| !is_monic(ring, m) || m.len() < 2) {
        return Err(Error::InvalidInput(
            "moduli must be monic of positive degree".into(),
        ));
    }
    let total: usize = moduli.iter().map(|m| m.len() - 1).sum();
    let mut system: Matrix = Vec::with_capacity(total);
    let mut rhs: Vec<Elem> = Vec::with_capacity(total);
    for (m, value) in moduli.iter().zip(residues) {
        let deg = m.len() - 1;
        // column j holds the coefficients of X^j mod m
        let reductions: Vec<Poly> = (0..total)
            .map(|j| {
                let mut xj = vec![ring.zero(); j + 1];
                xj[j] = ring.one();
                poly_divrem_monic(ring, &xj, m).1
            })
            .collect();
        for l in 0..deg {
            system.push(
                reductions
                    .iter()
                    .map(|red| red.get(l).cloned().unwrap_or_else(|| ring.zero()))
                    .collect(),
            );
            rhs.push(if l == 0 { value.clone() } else { ring.zero() });
        }
    }
    let coeffs = solve_unit(ring, &system, &rhs).ok_or(Error::NonCoprimeModuli)?;
    Ok(poly_trim(ring, coeffs))
}
