//! Regression suite over the worked examples: associated cocharacters in
//! `SL_3`, the disconnected torus centralizer in `PGL_2`, a unipotent
//! element of `Sp_4` centralized outside its Richardson parabolic, and the
//! bound of bad primes by `{2, 3, 5}`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::dvr::{mat_identity, mat_mul, mat_sub, ResidueField, RingOps};
use crate::dynamic::{
    is_associated_to_chains, is_distinguished_parabolic, weight_decomposition, Convention,
};
use crate::error::Result;
use crate::jordan::{is_ordinary, TorusElement};
use crate::lattice::{integer_kernel, IntegerMatrix};
use crate::primes::bad_primes;
use crate::rootdata::{build_root_system, CartanType, Isogeny, RootDatum};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub description: String,
    pub pass: bool,
    pub witness: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PaperExampleReport {
    pub id: String,
    pub checks: Vec<Check>,
}

impl PaperExampleReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

fn check(description: &str, pass: bool, witness: Value) -> Check {
    Check {
        description: description.to_string(),
        pass,
        witness,
    }
}

fn sl3_cocharacters() -> Result<PaperExampleReport> {
    // X = E12, a nilpotent of type (2,1)
    let chains = vec![vec![0, 1], vec![2]];
    let tau1 = [1, -1, 0];
    let tau2 = [2, 0, 0];
    let r1 = is_associated_to_chains(&tau1, &chains)?;
    let r2 = is_associated_to_chains(&tau2, &chains)?;
    let sl3 = RootDatum::from_type("A2", Isogeny::SimplyConnected)?;
    let pgl3 = RootDatum::from_type("A2", Isogeny::Adjoint)?;
    let e12 = sl3.system().simple_index(0);
    let w1 = weight_decomposition(&sl3, &[1, 0])?;
    let w2 = weight_decomposition(&pgl3, &[2, 0])?;
    let in_weight2 = w1.spaces.get(&2).is_some_and(|s| s.roots.contains(&e12))
        && w2.spaces.get(&2).is_some_and(|s| s.roots.contains(&e12));
    Ok(PaperExampleReport {
        id: "sl3-associated-cocharacters".into(),
        checks: vec![
            check(
                "E12 lies in the weight-2 space of both cocharacters",
                r1.weight2 && r2.weight2 && in_weight2,
                json!({"tau1": tau1, "tau2": tau2}),
            ),
            check("tau1 = diag(t, 1/t, 1) is associated to E12", r1.associated, json!(r1)),
            check(
                "tau2 = diag(t^2, 1, 1) is not associated: it does not factor through the derived Levi",
                !r2.associated && !r2.derived_levi,
                json!(r2),
            ),
        ],
    })
}

fn pgl2_centralizer() -> Result<PaperExampleReport> {
    let pgl2 = RootDatum::from_type("A1", Isogeny::Adjoint)?;
    // the root takes the value -1, the class of order 2
    let t = TorusElement::from_cocharacter_at_root_of_unity(&pgl2, &[1], 2)?;
    let report = is_ordinary(&t)?;
    let f2 = ResidueField::prime(2)?;
    let g: Vec<Vec<_>> = [[1, 1], [0, -1]]
        .iter()
        .map(|row| row.iter().map(|&x| f2.from_int(x)).collect())
        .collect();
    let n = mat_sub(&f2, &g, &mat_identity(&f2, 2));
    let nilpotent = mat_mul(&f2, &n, &n).iter().flatten().all(|x| f2.is_zero(x));
    Ok(PaperExampleReport {
        id: "pgl2-disconnected-centralizer".into(),
        checks: vec![
            check(
                "the element with root value of order 2 is not ordinary, component index 2",
                !report.ordinary && report.component_index == 2,
                json!(report),
            ),
            check(
                "g = [[1,1],[0,-1]] is unipotent modulo 2",
                nilpotent,
                json!({"g_minus_identity_mod_2": [[0, 1], [0, 0]]}),
            ),
        ],
    })
}

type IntMat = [[i64; 4]; 4];

fn mul4(a: &IntMat, b: &IntMat) -> IntMat {
    let mut c = [[0; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            c[i][j] = (0..4).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    c
}

fn transpose4(a: &IntMat) -> IntMat {
    let mut t = [[0; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            t[i][j] = a[j][i];
        }
    }
    t
}

/// Alternating forms `J` with `m^T J m = J` for every given `m`, as an
/// integer basis of the solution space.
fn invariant_alternating_forms(mats: &[IntMat]) -> Result<Vec<Vec<BigInt>>> {
    let mut rows: Vec<Vec<i64>> = Vec::new();
    let unit = |k: usize| {
        let mut e = [[0i64; 4]; 4];
        e[k / 4][k % 4] = 1;
        e
    };
    for i in 0..4 {
        for j in i..4 {
            let mut row = vec![0i64; 16];
            row[4 * i + j] += 1;
            row[4 * j + i] += 1;
            rows.push(row);
        }
    }
    for m in mats {
        let mt = transpose4(m);
        // column k of the map J -> m^T J m - J
        let images: Vec<IntMat> = (0..16).map(|k| mul4(&mul4(&mt, &unit(k)), m)).collect();
        for i in 0..4 {
            for j in 0..4 {
                let row: Vec<i64> = (0..16)
                    .map(|k| images[k][i][j] - i64::from(k == 4 * i + j))
                    .collect();
                rows.push(row);
            }
        }
    }
    Ok(integer_kernel(&IntegerMatrix::from_rows(16, &rows)?))
}

fn sp4_example() -> Result<PaperExampleReport> {
    let g: IntMat = [[1, 0, 0, 1], [0, 1, 1, 0], [0, 0, 1, 0], [0, 0, 0, 1]];
    let z: IntMat = [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]];
    // zero entries of the parabolic P and the support of its nilradical
    // (1-based positions)
    let p_zeros = [(2, 1), (3, 1), (3, 2), (3, 4), (4, 1)];
    let nilradical = [(1, 2), (1, 3), (1, 4), (2, 3), (4, 3)];
    let in_p = |m: &IntMat| p_zeros.iter().all(|&(i, j)| m[i - 1][j - 1] == 0);

    let commutes = mul4(&z, &g) == mul4(&g, &z);
    let g_minus_one: Vec<(usize, usize)> = (0..4)
        .flat_map(|i| (0..4).map(move |j| (i, j)))
        .filter(|&(i, j)| g[i][j] != i64::from(i == j))
        .map(|(i, j)| (i + 1, j + 1))
        .collect();
    let g_in_nilradical = g_minus_one.iter().all(|e| nilradical.contains(e));

    let basis = invariant_alternating_forms(&[g, z])?;
    let mut form: Option<IntMat> = None;
    // small combinations of the basis; the first nondegenerate one is kept
    let coeffs: Vec<i64> = vec![0, 1, -1, 2];
    let k = basis.len();
    let mut idx = vec![0usize; k];
    'search: loop {
        let mut j = [[0i64; 4]; 4];
        for (b, &c) in basis.iter().zip(&idx) {
            for (pos, v) in b.iter().enumerate() {
                j[pos / 4][pos % 4] += coeffs[c] * i64::try_from(v).unwrap_or(0);
            }
        }
        let rows: Vec<Vec<i64>> = j.iter().map(|r| r.to_vec()).collect();
        if IntegerMatrix::from_rows(4, &rows)?.determinant()? != BigInt::from(0) {
            form = Some(j);
            break;
        }
        for slot in idx.iter_mut() {
            *slot += 1;
            if *slot < coeffs.len() {
                continue 'search;
            }
            *slot = 0;
        }
        break;
    }
    let form_ok = form.is_some_and(|j| {
        mul4(&mul4(&transpose4(&g), &j), &g) == j && mul4(&mul4(&transpose4(&z), &j), &z) == j
    });

    Ok(PaperExampleReport {
        id: "sp4-centralizer-outside-parabolic".into(),
        checks: vec![
            check("z g z^-1 = g", commutes, json!({"g": g, "z": z})),
            check(
                "z does not lie in P: entry (2,1) is nonzero",
                z[1][0] != 0 && !in_p(&z),
                json!({"p_zero_pattern": p_zeros}),
            ),
            check(
                "g lies in P and g - 1 lies in the nilradical pattern",
                in_p(&g) && g_in_nilradical,
                json!({"support_of_g_minus_1": g_minus_one, "nilradical": nilradical}),
            ),
            check(
                "a nondegenerate alternating form preserved by g and z exists",
                form_ok,
                json!({"form": form, "solution_space_dim": k}),
            ),
        ],
    })
}

fn bad_primes_bound() -> Result<PaperExampleReport> {
    let allowed: BTreeSet<u64> = [2, 3, 5].into();
    let mut union = BTreeSet::new();
    let mut offenders = Vec::new();
    for ct in CartanType::all_irreducible(8) {
        let bad = bad_primes(&build_root_system(&ct)?)?;
        if !bad.is_subset(&allowed) {
            offenders.push(ct.to_string());
        }
        union.extend(bad);
    }
    Ok(PaperExampleReport {
        id: "bad-primes-divide-30".into(),
        checks: vec![check(
            "bad primes of every irreducible type of rank <= 8 lie in {2, 3, 5}",
            offenders.is_empty(),
            json!({"union": union, "offenders": offenders}),
        )],
    })
}

fn borels_distinguished(convention: Convention) -> Result<PaperExampleReport> {
    let mut failures = Vec::new();
    for t in ["A1", "A2", "B2", "G2"] {
        let rs = build_root_system(&t.parse()?)?;
        if !is_distinguished_parabolic(&rs, &[], convention)? {
            failures.push(t);
        }
    }
    Ok(PaperExampleReport {
        id: "borel-distinguished".into(),
        checks: vec![check(
            "Borel subgroups are distinguished parabolics",
            failures.is_empty(),
            json!({"convention": convention, "failures": failures}),
        )],
    })
}

pub fn verify_paper_examples(convention: Convention) -> Result<Vec<PaperExampleReport>> {
    Ok(vec![
        sl3_cocharacters()?,
        pgl2_centralizer()?,
        sp4_example()?,
        bad_primes_bound()?,
        borels_distinguished(convention)?,
    ])
}
