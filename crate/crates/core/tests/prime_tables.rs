mod common;

use std::collections::BTreeSet;
use std::time::Instant;

use common::{brute_force_closed, oracle_primes};
use reductive::primes::{bad_primes, bad_primes_from, torsion_primes};
use reductive::rootdata::{build_root_system, enumerate_closed_subsystems, CartanType};

fn set(v: &[u64]) -> BTreeSet<u64> {
    v.iter().copied().collect()
}

#[test]
fn classical_tables_for_all_irreducible_types() {
    let start = Instant::now();
    for t in CartanType::all_irreducible(8) {
        let rs = build_root_system(&t).unwrap();
        let (f, r) = t.components()[0];
        let bad = bad_primes(&rs).unwrap();
        let tor = torsion_primes(&rs).unwrap();
        let (eb, et) = match (f.letter(), r) {
            ('A', _) => (set(&[]), set(&[])),
            ('B', 2) => (set(&[2]), set(&[])),
            ('B', _) | ('D', _) => (set(&[2]), set(&[2])),
            ('C', _) => (set(&[2]), set(&[])),
            ('G', _) => (set(&[2, 3]), set(&[2])),
            ('F', _) | ('E', 6) | ('E', 7) => (set(&[2, 3]), set(&[2, 3])),
            _ => (set(&[2, 3, 5]), set(&[2, 3, 5])),
        };
        assert_eq!(bad, eb, "bad primes of {t}");
        assert_eq!(tor, et, "torsion primes of {t}");
    }
    eprintln!("tables for rank <= 8 in {:?}", start.elapsed());
}

#[test]
fn brute_force_oracle_rank_three() {
    for t in CartanType::all_irreducible(3).into_iter().chain(
        ["A1xA1", "A1xB2", "A1xG2", "A1xA1xA1"]
            .iter()
            .map(|s| s.parse().unwrap()),
    ) {
        let rs = build_root_system(&t).unwrap();
        assert_eq!(bad_primes(&rs).unwrap(), oracle_primes(&rs, false), "{t}");
        assert_eq!(
            torsion_primes(&rs).unwrap(),
            oracle_primes(&rs, true),
            "{t}"
        );
        let all = enumerate_closed_subsystems(&rs, false).unwrap();
        assert_eq!(all.len(), brute_force_closed(&rs).len(), "{t}");
        assert_eq!(
            bad_primes_from(&rs, &all).unwrap(),
            bad_primes(&rs).unwrap()
        );
        let classes = enumerate_closed_subsystems(&rs, true).unwrap();
        assert_eq!(rs.dedup_by_conjugacy(&all).len(), classes.len(), "{t}");
    }
}
