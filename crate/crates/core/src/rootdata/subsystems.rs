use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::Serialize;

use super::{RootSet, RootSystem};
use crate::error::{Error, Result};

const EXHAUSTIVE_RANK_BOUND: usize = 4;
const CONJUGACY_RANK_BOUND: usize = 8;

/// A symmetric, additively closed subset of the roots.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClosedSubsystem {
    members: RootSet,
}

impl ClosedSubsystem {
    /// Wraps `members` after checking that it is closed in `rs`.
    pub fn new(rs: &RootSystem, members: RootSet) -> Result<Self> {
        if !rs.is_closed(&members) {
            return Err(Error::InvalidInput(
                "root subset is not symmetric and closed".into(),
            ));
        }
        Ok(ClosedSubsystem { members })
    }

    pub(crate) fn new_unchecked(members: RootSet) -> Self {
        ClosedSubsystem { members }
    }

    pub fn set(&self) -> &RootSet {
        &self.members
    }

    pub fn member_roots(&self) -> Vec<usize> {
        self.members.iter().collect()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// Isomorphism type of a subsystem. Simply-laced components made of short
/// roots of the ambient system carry a trailing `~`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SubsystemShape {
    pub size: usize,
    pub rank: usize,
    pub components: Vec<String>,
}

impl SubsystemShape {
    pub fn label(&self) -> String {
        if self.components.is_empty() {
            "0".to_string()
        } else {
            self.components.join("x")
        }
    }
}

impl RootSystem {
    /// Simple roots of a subsystem with respect to the positive system it
    /// inherits from the ambient one.
    pub fn subsystem_simple_roots(&self, set: &RootSet) -> Vec<usize> {
        let positives: Vec<usize> = set.iter().filter(|&a| self.is_positive(a)).collect();
        positives
            .iter()
            .copied()
            .filter(|&a| {
                !positives.iter().any(|&b| {
                    self.sum(a, self.negative(b))
                        .is_some_and(|d| self.is_positive(d) && set.contains(d))
                })
            })
            .collect()
    }

    /// Splits simple roots into connected components, ordering each
    /// component so that every root after the first is joined to an earlier
    /// one.
    pub fn simple_components(&self, simple: &[usize]) -> Vec<Vec<usize>> {
        let mut seen = vec![false; simple.len()];
        let mut out = Vec::new();
        for start in 0..simple.len() {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![simple[start]];
            let mut k = 0;
            while k < comp.len() {
                let x = comp[k];
                for (j, &y) in simple.iter().enumerate() {
                    if !seen[j] && self.pairing(x, y) != 0 {
                        seen[j] = true;
                        comp.push(y);
                    }
                }
                k += 1;
            }
            out.push(comp);
        }
        out
    }

    /// Type label of an irreducible subsystem given by its simple roots.
    pub fn component_label(&self, simple: &[usize]) -> String {
        let k = simple.len();
        let roots = self.generated_subsystem(simple);
        let n = roots.len();
        let max_norm = roots.iter().map(|a| self.norm(a)).max().unwrap_or(0);
        let short = roots.iter().filter(|&a| self.norm(a) < max_norm).count();
        let base = if short == 0 {
            if n == k * (k + 1) {
                format!("A{k}")
            } else if n == 2 * k * (k - 1) {
                format!("D{k}")
            } else {
                format!("E{k}")
            }
        } else if k == 2 && n == 8 {
            "B2".to_string()
        } else if k == 2 && n == 12 {
            "G2".to_string()
        } else if k == 4 && n == 48 {
            "F4".to_string()
        } else if short == 2 * k {
            format!("B{k}")
        } else {
            format!("C{k}")
        };
        if short == 0 && roots.iter().all(|a| !self.is_long(a)) {
            format!("{base}~")
        } else {
            base
        }
    }

    pub fn subsystem_shape(&self, set: &RootSet) -> SubsystemShape {
        let simple = self.subsystem_simple_roots(set);
        let mut components: Vec<String> = self
            .simple_components(&simple)
            .iter()
            .map(|c| self.component_label(c))
            .collect();
        components.sort();
        SubsystemShape {
            size: set.len(),
            rank: simple.len(),
            components,
        }
    }

    /// Canonical representative of the Weyl orbit of an ordered tuple of
    /// roots: each entry in turn is made dominant for the stabiliser of the
    /// entries before it.
    pub fn canonical_tuple(&self, tuple: &[usize]) -> Vec<usize> {
        let simple: Vec<usize> = (0..self.rank()).map(|i| self.simple_index(i)).collect();
        let mut v = tuple.to_vec();
        let mut active = vec![true; self.rank()];
        for i in 0..v.len() {
            loop {
                let Some(j) =
                    (0..self.rank()).find(|&j| active[j] && self.pairing(v[i], simple[j]) < 0)
                else {
                    break;
                };
                for x in v[i..].iter_mut() {
                    *x = self.reflect(simple[j], *x);
                }
            }
            for j in 0..self.rank() {
                if self.pairing(v[i], simple[j]) != 0 {
                    active[j] = false;
                }
            }
        }
        v
    }

    /// Searches for roots `b_i` drawn (without repetition) from `pools[i]`
    /// such that some Weyl element maps `tuple[i]` to `b_i` for every `i`.
    pub fn conjugate_tuple_into(
        &self,
        tuple: &[usize],
        pools: &[Vec<usize>],
    ) -> Option<Vec<usize>> {
        assert_eq!(tuple.len(), pools.len());
        let target = self.canonical_tuple(tuple);
        let mut search = TupleSearch {
            rs: self,
            simple: (0..self.rank()).map(|i| self.simple_index(i)).collect(),
            target: &target,
            pools,
            chosen: Vec::with_capacity(tuple.len()),
            word: Vec::new(),
            active: vec![true; self.rank()],
        };
        search.extend().then_some(search.chosen)
    }

    /// Weyl-invariant data used to rule out conjugacy cheaply: the shape of
    /// the subsystem and of the roots orthogonal to it.
    pub fn orbit_fingerprint(&self, set: &RootSet) -> (SubsystemShape, SubsystemShape) {
        let simple = self.subsystem_simple_roots(set);
        let perp: RootSet = (0..self.num_roots())
            .filter(|&a| simple.iter().all(|&s| self.pairing(a, s) == 0))
            .collect();
        (self.subsystem_shape(set), self.subsystem_shape(&perp))
    }

    /// Whether two subsystems lie in the same Weyl orbit.
    pub fn are_conjugate(&self, a: &RootSet, b: &RootSet) -> bool {
        if a.len() != b.len() {
            return false;
        }
        if a.is_empty() {
            return true;
        }
        if self.orbit_fingerprint(a) != self.orbit_fingerprint(b) {
            return false;
        }
        let simple_a: Vec<usize> = self
            .simple_components(&self.subsystem_simple_roots(a))
            .into_iter()
            .flatten()
            .collect();
        // if w(a) = b then w maps the simple roots of `a` to a simple system
        // of `b`, which an element of W(b) moves to the standard one; so it
        // suffices to search for images among the simple roots of `b`
        let pool = self.subsystem_simple_roots(b);
        if pool.len() != simple_a.len() {
            return false;
        }
        let pools = vec![pool; simple_a.len()];
        self.conjugate_tuple_into(&simple_a, &pools).is_some()
    }

    /// Highest root of an irreducible subsystem given by its simple roots.
    fn highest_root(&self, simple: &[usize]) -> usize {
        self.generated_subsystem(simple)
            .iter()
            .filter(|&a| self.is_positive(a))
            .max_by_key(|&a| self.height(a))
            .expect("nonempty component")
    }

    /// Subsystems obtained from `set` by deleting one node of the Dynkin
    /// diagram or of the extended Dynkin diagram of one component.
    fn deletion_children(&self, set: &RootSet) -> Vec<RootSet> {
        let components = self.simple_components(&self.subsystem_simple_roots(set));
        let mut out = Vec::new();
        for (ci, comp) in components.iter().enumerate() {
            let others: Vec<usize> = components
                .iter()
                .enumerate()
                .filter(|&(cj, _)| cj != ci)
                .flat_map(|(_, c)| c.iter().copied())
                .collect();
            let lowest = self.negative(self.highest_root(comp));
            for skip in 0..comp.len() {
                let kept: Vec<usize> = comp
                    .iter()
                    .enumerate()
                    .filter(|&(k, _)| k != skip)
                    .map(|(_, &a)| a)
                    .collect();
                let mut levi = others.clone();
                levi.extend(&kept);
                out.push(self.generated_subsystem(&levi));
                let mut extended = levi;
                extended.push(lowest);
                out.push(self.generated_subsystem(&extended));
            }
        }
        out
    }

    fn check_rank(&self, bound: usize, mode: &'static str) -> Result<()> {
        if self.rank() > bound {
            return Err(Error::RankBoundExceeded {
                rank: self.rank(),
                bound,
                mode,
            });
        }
        Ok(())
    }

    /// One closed subsystem per Weyl orbit, reached by iterated diagram and
    /// extended-diagram deletions from the whole system.
    fn closed_subsystem_classes(&self) -> Result<Arc<Vec<ClosedSubsystem>>> {
        self.check_rank(CONJUGACY_RANK_BOUND, "conjugacy-class enumeration")?;
        if let Some(cached) = self.closed_subsystem_cache().get() {
            return Ok(cached.clone());
        }
        let mut reps: Vec<RootSet> = Vec::new();
        let mut buckets: HashMap<(SubsystemShape, SubsystemShape), Vec<usize>> = HashMap::new();
        let mut queue = vec![self.all_roots_set()];
        let mut admit = |set: RootSet, reps: &mut Vec<RootSet>, queue: &mut Vec<RootSet>| {
            let bucket = buckets.entry(self.orbit_fingerprint(&set)).or_default();
            if bucket
                .iter()
                .any(|&k| reps[k] == set || self.are_conjugate(&reps[k], &set))
            {
                return;
            }
            bucket.push(reps.len());
            reps.push(set);
            queue.push(set);
        };
        let start = queue.pop().expect("seeded");
        admit(start, &mut reps, &mut queue);
        while let Some(set) = queue.pop() {
            for child in self.deletion_children(&set) {
                if self.is_closed(&child) {
                    admit(child, &mut reps, &mut queue);
                }
            }
        }
        let list = Arc::new(sort_subsystems(self, reps));
        let _ = self.closed_subsystem_cache().set(list.clone());
        Ok(list)
    }

    /// Every closed subsystem, listed by closing positive root subsets in
    /// lectic order.
    fn all_closed_subsystems(&self) -> Result<Vec<ClosedSubsystem>> {
        self.check_rank(EXHAUSTIVE_RANK_BOUND, "exhaustive enumeration")?;
        let npos = self.num_positive();
        let close = |a: &RootSet| self.closure(a).truncated(npos);
        let mut found = Vec::new();
        let mut current = close(&RootSet::empty());
        found.push(current);
        'outer: loop {
            for i in (0..npos).rev() {
                if current.contains(i) {
                    continue;
                }
                let mut seed = current.truncated(i);
                seed.insert(i);
                let next = close(&seed);
                if next.truncated(i) == current.truncated(i) {
                    current = next;
                    found.push(current);
                    continue 'outer;
                }
            }
            break;
        }
        let full: Vec<RootSet> = found
            .into_iter()
            .map(|pos| {
                let mut s = pos;
                for a in pos.iter() {
                    s.insert(self.negative(a));
                }
                s
            })
            .collect();
        Ok(sort_subsystems(self, full))
    }

    /// Keeps the first member of every Weyl orbit in `list`.
    pub fn dedup_by_conjugacy(&self, list: &[ClosedSubsystem]) -> Vec<ClosedSubsystem> {
        let mut out: Vec<ClosedSubsystem> = Vec::new();
        for s in list {
            if !out.iter().any(|t| self.are_conjugate(t.set(), s.set())) {
                out.push(s.clone());
            }
        }
        out
    }
}

/// Depth-first search for images of a tuple, carrying the Weyl word that
/// canonicalises the chosen prefix so each new entry is processed once.
struct TupleSearch<'a> {
    rs: &'a RootSystem,
    simple: Vec<usize>,
    target: &'a [usize],
    pools: &'a [Vec<usize>],
    chosen: Vec<usize>,
    word: Vec<usize>,
    active: Vec<bool>,
}

impl TupleSearch<'_> {
    fn extend(&mut self) -> bool {
        let rs = self.rs;
        let k = self.chosen.len();
        if k == self.target.len() {
            return true;
        }
        for &b in &self.pools[k] {
            if self.chosen.contains(&b) {
                continue;
            }
            // pairings are Weyl invariant; cheap filter before canonicalising
            if (0..k).any(|j| {
                rs.pairing(b, self.chosen[j]) != rs.pairing(self.target[k], self.target[j])
            }) {
                continue;
            }
            let mut x = b;
            for &j in &self.word {
                x = rs.reflect(self.simple[j], x);
            }
            let len = self.word.len();
            while let Some(j) =
                (0..rs.rank()).find(|&j| self.active[j] && rs.pairing(x, self.simple[j]) < 0)
            {
                x = rs.reflect(self.simple[j], x);
                self.word.push(j);
            }
            if x == self.target[k] {
                let saved = self.active.clone();
                for j in 0..rs.rank() {
                    if rs.pairing(x, self.simple[j]) != 0 {
                        self.active[j] = false;
                    }
                }
                self.chosen.push(b);
                if self.extend() {
                    return true;
                }
                self.chosen.pop();
                self.active = saved;
            }
            self.word.truncate(len);
        }
        false
    }
}

fn sort_subsystems(rs: &RootSystem, sets: Vec<RootSet>) -> Vec<ClosedSubsystem> {
    let mut keyed: BTreeMap<(usize, String, Vec<usize>), RootSet> = BTreeMap::new();
    for s in sets {
        keyed.insert(
            (s.len(), rs.subsystem_shape(&s).label(), s.iter().collect()),
            s,
        );
    }
    keyed
        .into_values()
        .map(ClosedSubsystem::new_unchecked)
        .collect()
}

/// Closed subsystems of `rs`: all of them (`up_to_conjugacy = false`, rank at
/// most 4) or one per Weyl orbit (rank at most 8).
pub fn enumerate_closed_subsystems(
    rs: &RootSystem,
    up_to_conjugacy: bool,
) -> Result<Vec<ClosedSubsystem>> {
    if up_to_conjugacy {
        Ok(rs.closed_subsystem_classes()?.as_ref().clone())
    } else {
        rs.all_closed_subsystems()
    }
}
