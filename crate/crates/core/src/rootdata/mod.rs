//! Root systems and root data.
//!
//! Roots are stored as integer vectors in the simple-root basis. Every system
//! carries precomputed index tables (pairings, reflections, sums) so that the
//! subsystem enumeration and Weyl-orbit canonicalisation work on root indices
//! only.

mod datum;
mod subsystems;
mod weyl;

pub use datum::{make_root_datum, GroupInvariants, Isogeny, RootDatum};
pub use subsystems::{enumerate_closed_subsystems, ClosedSubsystem, SubsystemShape};
pub use weyl::{weyl_stabilizer_and_subgroup, WeylGroup, WEYL_ORBIT_CAP};

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }

    fn from_letter(c: char) -> Option<Family> {
        Some(match c.to_ascii_uppercase() {
            'A' => Family::A,
            'B' => Family::B,
            'C' => Family::C,
            'D' => Family::D,
            'E' => Family::E,
            'F' => Family::F,
            'G' => Family::G,
            _ => return None,
        })
    }

    fn rank_is_valid(self, rank: usize) -> bool {
        match self {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 3,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        }
    }
}

/// A (possibly reducible) Cartan type, e.g. `A1xB2`. The empty type is
/// written `T` and describes a torus.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CartanType {
    components: Vec<(Family, usize)>,
}

impl CartanType {
    pub fn new(components: Vec<(Family, usize)>) -> Result<Self> {
        for &(family, rank) in &components {
            if !family.rank_is_valid(rank) {
                return Err(Error::InvalidRank {
                    family: family.letter(),
                    rank,
                });
            }
        }
        Ok(CartanType { components })
    }

    pub fn irreducible(family: Family, rank: usize) -> Result<Self> {
        Self::new(vec![(family, rank)])
    }

    pub fn components(&self) -> &[(Family, usize)] {
        &self.components
    }

    pub fn rank(&self) -> usize {
        self.components.iter().map(|c| c.1).sum()
    }

    /// Every irreducible type of rank at most `max_rank`, with the usual
    /// low-rank coincidences (B2 = C2, D3 = A3) listed once.
    pub fn all_irreducible(max_rank: usize) -> Vec<CartanType> {
        let mut out = Vec::new();
        for r in 1..=max_rank {
            out.push((Family::A, r));
        }
        for r in 2..=max_rank {
            out.push((Family::B, r));
        }
        for r in 3..=max_rank {
            out.push((Family::C, r));
        }
        for r in 4..=max_rank {
            out.push((Family::D, r));
        }
        for r in 6..=max_rank.min(8) {
            out.push((Family::E, r));
        }
        if max_rank >= 4 {
            out.push((Family::F, 4));
        }
        if max_rank >= 2 {
            out.push((Family::G, 2));
        }
        out.into_iter()
            .map(|(f, r)| CartanType {
                components: vec![(f, r)],
            })
            .collect()
    }

    /// Gram matrix of the simple roots, normalised so that short roots of
    /// simply-laced and B/C/F components have squared length 2.
    fn gram_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.rank();
        let mut gram = vec![vec![0i64; n]; n];
        let mut offset = 0;
        for &(family, rank) in &self.components {
            let block = component_gram(family, rank);
            for i in 0..rank {
                for j in 0..rank {
                    gram[offset + i][offset + j] = block[i][j];
                }
            }
            offset += rank;
        }
        gram
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return write!(f, "T");
        }
        let parts: Vec<String> = self
            .components
            .iter()
            .map(|(fam, r)| format!("{}{}", fam.letter(), r))
            .collect();
        write!(f, "{}", parts.join("x"))
    }
}

impl FromStr for CartanType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "T" || s == "T0" {
            return Ok(CartanType { components: vec![] });
        }
        let mut components = Vec::new();
        for part in s.split(|c| c == 'x' || c == '+' || c == '*') {
            let part = part.trim();
            let mut chars = part.chars();
            let family = chars.next().and_then(Family::from_letter).ok_or_else(|| {
                Error::InvalidInput(format!("bad Cartan type component `{part}`"))
            })?;
            let rank: usize = chars
                .as_str()
                .parse()
                .map_err(|_| Error::InvalidInput(format!("bad rank in `{part}`")))?;
            components.push((family, rank));
        }
        CartanType::new(components)
    }
}

fn component_gram(family: Family, rank: usize) -> Vec<Vec<i64>> {
    let mut g = vec![vec![0i64; rank]; rank];
    let link = |g: &mut Vec<Vec<i64>>, i: usize, j: usize, v: i64| {
        g[i][j] = v;
        g[j][i] = v;
    };
    match family {
        Family::A => {
            for i in 0..rank {
                g[i][i] = 2;
            }
            for i in 1..rank {
                link(&mut g, i - 1, i, -1);
            }
        }
        Family::B => {
            // alpha_1 .. alpha_{n-1} long, alpha_n short
            for i in 0..rank - 1 {
                g[i][i] = 4;
            }
            g[rank - 1][rank - 1] = 2;
            for i in 1..rank {
                link(&mut g, i - 1, i, -2);
            }
        }
        Family::C => {
            // alpha_1 .. alpha_{n-1} short, alpha_n long
            for i in 0..rank - 1 {
                g[i][i] = 2;
            }
            g[rank - 1][rank - 1] = 4;
            for i in 1..rank - 1 {
                link(&mut g, i - 1, i, -1);
            }
            link(&mut g, rank - 2, rank - 1, -2);
        }
        Family::D => {
            for i in 0..rank {
                g[i][i] = 2;
            }
            for i in 1..rank - 1 {
                link(&mut g, i - 1, i, -1);
            }
            link(&mut g, rank - 3, rank - 1, -1);
        }
        Family::E => {
            // Bourbaki: 1-3-4-5-6-7-8 chain, 2 attached to 4.
            for i in 0..rank {
                g[i][i] = 2;
            }
            link(&mut g, 0, 2, -1);
            link(&mut g, 1, 3, -1);
            for i in 3..rank {
                link(&mut g, i - 1, i, -1);
            }
        }
        Family::F => {
            g[0][0] = 4;
            g[1][1] = 4;
            g[2][2] = 2;
            g[3][3] = 2;
            link(&mut g, 0, 1, -2);
            link(&mut g, 1, 2, -2);
            link(&mut g, 2, 3, -1);
        }
        Family::G => {
            // alpha_1 short, alpha_2 long
            g[0][0] = 2;
            g[1][1] = 6;
            link(&mut g, 0, 1, -3);
        }
    }
    g
}

/// Sentinel for "not a root" in the sum table.
const NO_ROOT: u16 = u16::MAX;

/// Fixed-size bitset over root indices (at most 256 roots, enough for E8).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct RootSet([u64; 4]);

impl RootSet {
    pub fn empty() -> Self {
        RootSet([0; 4])
    }

    pub fn insert(&mut self, i: usize) -> bool {
        let (w, b) = (i / 64, i % 64);
        let fresh = self.0[w] & (1 << b) == 0;
        self.0[w] |= 1 << b;
        fresh
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0[i / 64] & (1 << (i % 64)) != 0
    }

    pub fn len(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..256).filter(move |&i| self.contains(i))
    }

    pub fn intersection(&self, other: &RootSet) -> RootSet {
        let mut out = *self;
        for k in 0..4 {
            out.0[k] &= other.0[k];
        }
        out
    }

    /// Elements strictly below `bound`.
    pub fn truncated(&self, bound: usize) -> RootSet {
        let mut out = RootSet::empty();
        for k in 0..4 {
            let lo = k * 64;
            out.0[k] = if bound >= lo + 64 {
                self.0[k]
            } else if bound <= lo {
                0
            } else {
                self.0[k] & ((1u64 << (bound - lo)) - 1)
            };
        }
        out
    }
}

impl FromIterator<usize> for RootSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = RootSet::empty();
        for i in iter {
            s.insert(i);
        }
        s
    }
}

/// A reduced crystallographic root system with roots in simple-root
/// coordinates. Positive roots come first (ordered by height), and the root
/// at index `i + npos` is the negative of the root at index `i`.
#[derive(Clone)]
pub struct RootSystem {
    cartan_type: CartanType,
    rank: usize,
    gram: Vec<Vec<i64>>,
    cartan: Vec<Vec<i64>>,
    roots: Vec<Vec<i64>>,
    npos: usize,
    index: HashMap<Vec<i64>, usize>,
    norms: Vec<i64>,
    long: Vec<bool>,
    pairing: Vec<i8>,
    reflect: Vec<u16>,
    sum: Vec<u16>,
    component_of_simple: Vec<usize>,
    closed_cache: OnceLock<Arc<Vec<ClosedSubsystem>>>,
}

impl fmt::Debug for RootSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RootSystem")
            .field("type", &self.cartan_type.to_string())
            .field("rank", &self.rank)
            .field("roots", &self.roots.len())
            .finish()
    }
}

/// Builds the root system of a Cartan type by closing the simple roots under
/// simple reflections.
pub fn build_root_system(t: &CartanType) -> Result<RootSystem> {
    CartanType::new(t.components.clone())?;
    let rank = t.rank();
    let gram = t.gram_matrix();
    // cartan[i][j] = <alpha_i, alpha_j^vee> = 2 (alpha_i, alpha_j) / (alpha_j, alpha_j)
    let cartan: Vec<Vec<i64>> = (0..rank)
        .map(|i| (0..rank).map(|j| 2 * gram[i][j] / gram[j][j]).collect())
        .collect();

    let mut found: HashMap<Vec<i64>, ()> = HashMap::new();
    let mut queue: Vec<Vec<i64>> = Vec::new();
    for i in 0..rank {
        let mut e = vec![0i64; rank];
        e[i] = 1;
        found.insert(e.clone(), ());
        queue.push(e);
    }
    while let Some(beta) = queue.pop() {
        for j in 0..rank {
            let pair: i64 = (0..rank).map(|i| beta[i] * cartan[i][j]).sum();
            if pair == 0 {
                continue;
            }
            let mut image = beta.clone();
            image[j] -= pair;
            if !found.contains_key(&image) {
                found.insert(image.clone(), ());
                queue.push(image);
            }
        }
    }
    let mut positives: Vec<Vec<i64>> = found
        .into_keys()
        .filter(|r| r.iter().all(|&c| c >= 0))
        .collect();
    positives.sort_by(|a, b| {
        let ha: i64 = a.iter().sum();
        let hb: i64 = b.iter().sum();
        ha.cmp(&hb).then_with(|| b.cmp(a))
    });
    let npos = positives.len();
    let mut roots = positives.clone();
    roots.extend(
        positives
            .iter()
            .map(|r| r.iter().map(|c| -c).collect::<Vec<_>>()),
    );
    if roots.len() > 256 {
        return Err(Error::InvalidInput(format!(
            "{} roots exceed the supported 256",
            roots.len()
        )));
    }
    Ok(RootSystem::from_parts(t.clone(), gram, cartan, roots, npos))
}

impl RootSystem {
    fn from_parts(
        cartan_type: CartanType,
        gram: Vec<Vec<i64>>,
        cartan: Vec<Vec<i64>>,
        roots: Vec<Vec<i64>>,
        npos: usize,
    ) -> Self {
        let rank = gram.len();
        let n = roots.len();
        let index: HashMap<Vec<i64>, usize> = roots
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, r)| (r, i))
            .collect();
        let inner = |a: &[i64], b: &[i64]| -> i64 {
            let mut s = 0;
            for i in 0..rank {
                if a[i] == 0 {
                    continue;
                }
                for j in 0..rank {
                    s += a[i] * gram[i][j] * b[j];
                }
            }
            s
        };
        let norms: Vec<i64> = roots.iter().map(|r| inner(r, r)).collect();

        let mut component_of_simple = vec![usize::MAX; rank];
        let mut ncomp = 0;
        for s in 0..rank {
            if component_of_simple[s] != usize::MAX {
                continue;
            }
            let mut stack = vec![s];
            component_of_simple[s] = ncomp;
            while let Some(x) = stack.pop() {
                for y in 0..rank {
                    if gram[x][y] != 0 && component_of_simple[y] == usize::MAX {
                        component_of_simple[y] = ncomp;
                        stack.push(y);
                    }
                }
            }
            ncomp += 1;
        }
        let root_component = |r: &[i64]| -> usize {
            let i = r.iter().position(|&c| c != 0).expect("roots are nonzero");
            component_of_simple[i]
        };
        let mut max_norm = vec![0i64; ncomp];
        for (r, &nm) in roots.iter().zip(&norms) {
            let c = root_component(r);
            max_norm[c] = max_norm[c].max(nm);
        }
        let long: Vec<bool> = roots
            .iter()
            .zip(&norms)
            .map(|(r, &nm)| nm == max_norm[root_component(r)])
            .collect();

        let mut pairing = vec![0i8; n * n];
        let mut reflect = vec![0u16; n * n];
        let mut sum = vec![NO_ROOT; n * n];
        for a in 0..n {
            for b in 0..n {
                let p = 2 * inner(&roots[a], &roots[b]) / norms[b];
                pairing[a * n + b] = p as i8;
                let image: Vec<i64> = (0..rank).map(|i| roots[a][i] - p * roots[b][i]).collect();
                reflect[b * n + a] = index[&image] as u16;
                let s: Vec<i64> = (0..rank).map(|i| roots[a][i] + roots[b][i]).collect();
                if let Some(&k) = index.get(&s) {
                    sum[a * n + b] = k as u16;
                }
            }
        }
        RootSystem {
            cartan_type,
            rank,
            gram,
            cartan,
            roots,
            npos,
            index,
            norms,
            long,
            pairing,
            reflect,
            sum,
            component_of_simple,
            closed_cache: OnceLock::new(),
        }
    }

    pub fn cartan_type(&self) -> &CartanType {
        &self.cartan_type
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn roots(&self) -> &[Vec<i64>] {
        &self.roots
    }

    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn num_positive(&self) -> usize {
        self.npos
    }

    /// `cartan_matrix()[i][j] = <alpha_i, alpha_j^vee>`.
    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn gram_matrix(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn root_index(&self, coords: &[i64]) -> Option<usize> {
        self.index.get(coords).copied()
    }

    /// Index of the `i`-th simple root.
    pub fn simple_index(&self, i: usize) -> usize {
        let mut e = vec![0i64; self.rank];
        e[i] = 1;
        self.index[&e]
    }

    pub fn negative(&self, a: usize) -> usize {
        if a < self.npos {
            a + self.npos
        } else {
            a - self.npos
        }
    }

    pub fn is_positive(&self, a: usize) -> bool {
        a < self.npos
    }

    pub fn height(&self, a: usize) -> i64 {
        self.roots[a].iter().sum()
    }

    pub fn norm(&self, a: usize) -> i64 {
        self.norms[a]
    }

    /// Whether the root is long within its irreducible component.
    pub fn is_long(&self, a: usize) -> bool {
        self.long[a]
    }

    /// Number of irreducible components.
    pub fn num_components(&self) -> usize {
        self.cartan_type.components.len()
    }

    pub fn component_of_simple(&self, i: usize) -> usize {
        self.component_of_simple[i]
    }

    /// `<alpha_a, alpha_b^vee>`
    pub fn pairing(&self, a: usize, b: usize) -> i64 {
        self.pairing[a * self.roots.len() + b] as i64
    }

    /// Index of `s_b(alpha_a)`.
    pub fn reflect(&self, b: usize, a: usize) -> usize {
        self.reflect[b * self.roots.len() + a] as usize
    }

    /// Index of `alpha_a + alpha_b` if it is a root.
    pub fn sum(&self, a: usize, b: usize) -> Option<usize> {
        let s = self.sum[a * self.roots.len() + b];
        (s != NO_ROOT).then_some(s as usize)
    }

    /// Coroot of root `a` in the simple-coroot basis.
    pub fn coroot(&self, a: usize) -> Vec<i64> {
        (0..self.rank)
            .map(|i| self.roots[a][i] * self.gram[i][i] / self.norms[a])
            .collect()
    }

    /// `<v, alpha_j^vee>` for `v` in simple-root coordinates.
    pub fn pair_with_simple_coroot(&self, v: &[i64], j: usize) -> i64 {
        (0..self.rank).map(|i| v[i] * self.cartan[i][j]).sum()
    }

    pub fn all_roots_set(&self) -> RootSet {
        (0..self.roots.len()).collect()
    }

    /// Symmetric and additively closed.
    pub fn is_closed(&self, set: &RootSet) -> bool {
        let members: Vec<usize> = set.iter().collect();
        for &a in &members {
            if !set.contains(self.negative(a)) {
                return false;
            }
            for &b in &members {
                if let Some(s) = self.sum(a, b) {
                    if !set.contains(s) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Smallest symmetric closed set containing `seed`.
    pub fn closure(&self, seed: &RootSet) -> RootSet {
        let mut set = RootSet::empty();
        let mut queue: Vec<usize> = Vec::new();
        for a in seed.iter() {
            for x in [a, self.negative(a)] {
                if set.insert(x) {
                    queue.push(x);
                }
            }
        }
        while let Some(a) = queue.pop() {
            let members: Vec<usize> = set.iter().collect();
            for b in members {
                if let Some(s) = self.sum(a, b) {
                    for x in [s, self.negative(s)] {
                        if set.insert(x) {
                            queue.push(x);
                        }
                    }
                }
            }
        }
        set
    }

    /// Root subsystem generated by reflections in the given roots: the orbit
    /// of the generators under the group they generate.
    pub fn generated_subsystem(&self, generators: &[usize]) -> RootSet {
        let mut set = RootSet::empty();
        let mut queue = Vec::new();
        for &g in generators {
            for x in [g, self.negative(g)] {
                if set.insert(x) {
                    queue.push(x);
                }
            }
        }
        while let Some(a) = queue.pop() {
            for &g in generators {
                let r = self.reflect(g, a);
                if set.insert(r) {
                    queue.push(r);
                }
            }
        }
        set
    }

    pub(crate) fn closed_subsystem_cache(&self) -> &OnceLock<Arc<Vec<ClosedSubsystem>>> {
        &self.closed_cache
    }

    /// Order of the Weyl group, by the product formula over irreducible
    /// components.
    pub fn weyl_order(&self) -> u128 {
        fn fact(n: u128) -> u128 {
            (1..=n).product()
        }
        self.cartan_type
            .components
            .iter()
            .map(|&(f, r)| {
                let r128 = r as u128;
                match f {
                    Family::A => fact(r128 + 1),
                    Family::B | Family::C => (1u128 << r) * fact(r128),
                    Family::D => (1u128 << (r - 1)) * fact(r128),
                    Family::E => match r {
                        6 => 51_840,
                        7 => 2_903_040,
                        _ => 696_729_600,
                    },
                    Family::F => 1152,
                    Family::G => 12,
                }
            })
            .product()
    }
}
