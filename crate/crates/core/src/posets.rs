//! Finite posets: the top-down Möbius function, cut-and-paste Euler
//! characteristics, order ideals and signed counts of G-sequences.
//!
//! Elements are the indices `0..len`. The order is stored as one bitset of
//! strictly greater elements per element, plus the cover relation.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::OnceLock;

use fixedbitset::FixedBitSet;
use rand::Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::shapes::{Cell, SkewShape};

/// Largest poset accepted by ideal and G-sequence enumeration.
pub const MAX_IDEAL_POSET: usize = 12;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PosetError {
    #[error("element {0} is out of range")]
    OutOfRange(usize),
    #[error("relation has a cycle through {0} and {1}")]
    Cycle(usize, usize),
    #[error("relation is not transitive: {0} < {1} < {2} but not {0} < {2}")]
    NotTransitive(usize, usize, usize),
    #[error("({0}, {1}) is not a cover relation")]
    NotACover(usize, usize),
    #[error("poset has {got} elements; at most {max} are supported here")]
    TooLarge { got: usize, max: usize },
    #[error("expected {expected} values, got {got}")]
    Length { expected: usize, got: usize },
}

#[derive(Clone, Debug)]
pub struct FinitePoset {
    above: Vec<FixedBitSet>,
    covers: OnceLock<Vec<(usize, usize)>>,
}

impl PartialEq for FinitePoset {
    fn eq(&self, other: &Self) -> bool {
        self.above == other.above
    }
}

impl Eq for FinitePoset {}

impl FinitePoset {
    pub fn antichain(n: usize) -> Self {
        Self::from_closure(vec![FixedBitSet::with_capacity(n); n])
    }

    pub fn chain(n: usize) -> Self {
        let covers: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_covers(n, &covers).expect("a chain is acyclic")
    }

    /// The boxes of a shape in `(y, x)` order, ordered componentwise.
    pub fn of_shape(shape: &SkewShape) -> Self {
        let cells: Vec<Cell> = shape.cells().collect();
        Self::from_strict_order_unchecked(cells.len(), |a, b| a != b && cells[a].precedes(cells[b]))
    }

    /// Builds the order generated by `covers`, given as `(lower, upper)` pairs.
    /// Redundant pairs are allowed; the stored covers are the transitive
    /// reduction.
    pub fn from_covers(n: usize, covers: &[(usize, usize)]) -> Result<Self, PosetError> {
        let mut succ = vec![Vec::new(); n];
        for &(a, b) in covers {
            for e in [a, b] {
                if e >= n {
                    return Err(PosetError::OutOfRange(e));
                }
            }
            if a == b {
                return Err(PosetError::Cycle(a, b));
            }
            succ[a].push(b);
        }
        let mut above = vec![FixedBitSet::with_capacity(n); n];
        for (start, row) in above.iter_mut().enumerate() {
            let mut stack = succ[start].clone();
            while let Some(v) = stack.pop() {
                if v == start {
                    return Err(PosetError::Cycle(start, v));
                }
                if !row.put(v) {
                    stack.extend(&succ[v]);
                }
            }
        }
        for a in 0..n {
            for b in above[a].ones() {
                if above[b].contains(a) {
                    return Err(PosetError::Cycle(a, b));
                }
            }
        }
        Ok(Self::from_closure(above))
    }

    /// Builds a poset from a strict order predicate, which must already be
    /// transitive and irreflexive.
    pub fn from_strict_order(n: usize, less: impl Fn(usize, usize) -> bool) -> Result<Self, PosetError> {
        let mut above = vec![FixedBitSet::with_capacity(n); n];
        for (a, row) in above.iter_mut().enumerate() {
            for b in 0..n {
                if less(a, b) {
                    row.insert(b);
                }
            }
        }
        for a in 0..n {
            if above[a].contains(a) {
                return Err(PosetError::Cycle(a, a));
            }
            for b in above[a].ones() {
                if above[b].contains(a) {
                    return Err(PosetError::Cycle(a, b));
                }
                if !above[b].is_subset(&above[a]) {
                    let c = above[b].difference(&above[a]).next().expect("nonempty difference");
                    return Err(PosetError::NotTransitive(a, b, c));
                }
            }
        }
        Ok(Self::from_closure(above))
    }

    /// Builds a poset from a strict order predicate without checking it.
    /// Rows are filled in parallel, so this suits large posets whose order
    /// is known to be transitive and irreflexive.
    pub fn from_strict_order_unchecked(n: usize, less: impl Fn(usize, usize) -> bool + Sync) -> Self {
        let above = (0..n)
            .into_par_iter()
            .map(|a| {
                let mut row = FixedBitSet::with_capacity(n);
                row.extend((0..n).filter(|&b| less(a, b)));
                row
            })
            .collect();
        Self::from_closure(above)
    }

    fn from_closure(above: Vec<FixedBitSet>) -> Self {
        FinitePoset { above, covers: OnceLock::new() }
    }

    fn compute_covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut below = vec![FixedBitSet::with_capacity(n); n];
        for (a, row) in self.above.iter().enumerate() {
            for b in row.ones() {
                below[b].insert(a);
            }
        }
        let mut covers: Vec<(usize, usize)> = (0..n)
            .into_par_iter()
            .flat_map_iter(|a| {
                let row = &self.above[a];
                let below = &below;
                row.ones().filter(move |&b| row.is_disjoint(&below[b])).map(move |b| (a, b))
            })
            .collect();
        covers.sort_unstable();
        covers
    }

    pub fn len(&self) -> usize {
        self.above.len()
    }

    pub fn is_empty(&self) -> bool {
        self.above.is_empty()
    }

    /// Strict order `a < b`.
    pub fn less(&self, a: usize, b: usize) -> bool {
        self.above[a].contains(b)
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        a == b || self.less(a, b)
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.leq(a, b) || self.leq(b, a)
    }

    /// Elements strictly greater than `a`.
    pub fn strictly_above(&self, a: usize) -> impl Iterator<Item = usize> + '_ {
        self.above[a].ones()
    }

    /// Cover pairs `(lower, upper)`, sorted.
    pub fn covers(&self) -> &[(usize, usize)] {
        self.covers.get_or_init(|| self.compute_covers())
    }

    pub fn is_cover(&self, a: usize, b: usize) -> bool {
        self.covers().binary_search(&(a, b)).is_ok()
    }

    pub fn maximal(&self) -> Vec<usize> {
        (0..self.len()).filter(|&a| self.above[a].is_clear()).collect()
    }

    pub fn minimal(&self) -> Vec<usize> {
        (0..self.len()).filter(|&b| (0..self.len()).all(|a| !self.less(a, b))).collect()
    }

    /// The same elements with the order reversed.
    pub fn dual(&self) -> Self {
        let n = self.len();
        let mut above = vec![FixedBitSet::with_capacity(n); n];
        for a in 0..n {
            for b in self.above[a].ones() {
                above[b].insert(a);
            }
        }
        Self::from_closure(above)
    }

    /// Adjoins a new least element with index `len()`.
    pub fn with_bottom(&self) -> Self {
        let n = self.len() + 1;
        let mut above: Vec<FixedBitSet> = self
            .above
            .iter()
            .map(|row| {
                let mut row = row.clone();
                row.grow(n);
                row
            })
            .collect();
        let mut bottom = FixedBitSet::with_capacity(n);
        bottom.insert_range(..n - 1);
        above.push(bottom);
        Self::from_closure(above)
    }

    /// Elements ordered so that every element comes after all elements above it.
    fn top_down(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&a| self.above[a].count_ones(..));
        order
    }

    /// Möbius function normalised at the top: 1 on maximal elements and
    /// `1 - sum of mu over strictly greater elements` elsewhere.
    pub fn mobius(&self) -> Vec<i64> {
        let mut mu = vec![0i64; self.len()];
        for a in self.top_down() {
            mu[a] = 1 - self.above[a].ones().map(|b| mu[b]).sum::<i64>();
        }
        mu
    }

    /// Classical interval Möbius function `mu(x, y)` for every `y`, computed
    /// bottom-up from `mu(x, x) = 1`; zero where `y` is not above `x`.
    pub fn interval_mobius(&self, x: usize) -> Vec<i64> {
        let mut mu = vec![0i64; self.len()];
        mu[x] = 1;
        let mut order: Vec<usize> = self.above[x].ones().collect();
        order.sort_by_key(|&y| std::cmp::Reverse(self.above[y].count_ones(..)));
        for y in order {
            let below: i64 = (0..self.len()).filter(|&z| self.leq(x, z) && self.less(z, y)).map(|z| mu[z]).sum();
            mu[y] = -below;
        }
        mu
    }

    /// Cut-and-paste Euler characteristic: `sum mu(Z) * chi(Z)`.
    pub fn chi_cut_and_paste(&self, chi: &[i64]) -> Result<i64, PosetError> {
        if chi.len() != self.len() {
            return Err(PosetError::Length { expected: self.len(), got: chi.len() });
        }
        Ok(self.mobius().iter().zip(chi).map(|(m, c)| m * c).sum())
    }

    fn down_masks(&self) -> Result<Vec<u32>, PosetError> {
        let n = self.len();
        if n > MAX_IDEAL_POSET {
            return Err(PosetError::TooLarge { got: n, max: MAX_IDEAL_POSET });
        }
        let mut down = vec![0u32; n];
        for a in 0..n {
            for b in self.above[a].ones() {
                down[b] |= 1 << a;
            }
        }
        Ok(down)
    }

    /// All order ideals as bitmasks, in increasing numeric order.
    pub fn ideals(&self) -> Result<Vec<u32>, PosetError> {
        let down = self.down_masks()?;
        let n = self.len();
        Ok((0u32..1 << n).filter(|&m| (0..n).all(|a| m & (1 << a) == 0 || down[a] & !m == 0)).collect())
    }

    /// Number of G-sequences of each length.
    pub fn g_sequence_counts(&self, parts: &CoverPartition) -> Result<BTreeMap<usize, u64>, PosetError> {
        parts.check(self)?;
        let n = self.len();
        let ideals = self.ideals()?;
        let full = ((1u64 << n) - 1) as u32;
        let bad: Vec<u32> = parts.bad(self).map(|(a, b)| (1 << a) | (1 << b)).collect();
        let mut is_ideal = vec![false; 1 << n];
        for &m in &ideals {
            is_ideal[m as usize] = true;
        }
        // counts[m][l]: sequences of length l from ideal m up to the full poset.
        let mut counts: Vec<Vec<u64>> = vec![Vec::new(); 1 << n];
        counts[full as usize] = vec![1];
        for &m in ideals.iter().rev() {
            if m == full {
                continue;
            }
            let rest = full & !m;
            let mut acc: Vec<u64> = Vec::new();
            let mut step = rest;
            while step != 0 {
                let next = m | step;
                if is_ideal[next as usize] && bad.iter().all(|&p| step & p != p) {
                    let tail = &counts[next as usize];
                    if acc.len() < tail.len() + 1 {
                        acc.resize(tail.len() + 1, 0);
                    }
                    for (l, c) in tail.iter().enumerate() {
                        acc[l + 1] += c;
                    }
                }
                step = (step - 1) & rest;
            }
            counts[m as usize] = acc;
        }
        Ok(counts[0].iter().enumerate().filter(|(_, &c)| c > 0).map(|(l, &c)| (l, c)).collect())
    }

    /// Sum of `(-1)^length` over all G-sequences.
    pub fn g_sequence_signed_sum(&self, parts: &CoverPartition) -> Result<i64, PosetError> {
        let counts = self.g_sequence_counts(parts)?;
        Ok(counts.iter().map(|(&l, &c)| if l % 2 == 0 { c as i64 } else { -(c as i64) }).sum())
    }

    /// Graphviz rendering with one arrow per cover, pointing from the larger
    /// element down to the smaller one. Elements sharing a group id are boxed
    /// in a dashed cluster.
    pub fn to_dot(&self, name: &str, labels: &[String], groups: Option<&[usize]>) -> String {
        let mut out = format!("digraph \"{}\" {{\n  node [shape=box];\n", escape(name));
        let mut clusters: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        if let Some(groups) = groups {
            for (a, &g) in groups.iter().enumerate().take(self.len()) {
                clusters.entry(g).or_default().push(a);
            }
        }
        let clustered: BTreeSet<usize> = clusters.values().filter(|m| m.len() > 1).flatten().copied().collect();
        for (g, members) in clusters.iter().filter(|(_, m)| m.len() > 1) {
            out.push_str(&format!("  subgraph cluster_{g} {{\n    style=dashed;\n"));
            for &a in members {
                out.push_str(&format!("    n{a} [label=\"{}\"];\n", escape(label_of(labels, a))));
            }
            out.push_str("  }\n");
        }
        for a in (0..self.len()).filter(|a| !clustered.contains(a)) {
            out.push_str(&format!("  n{a} [label=\"{}\"];\n", escape(label_of(labels, a))));
        }
        for &(lo, hi) in self.covers() {
            out.push_str(&format!("  n{hi} -> n{lo};\n"));
        }
        out.push_str("}\n");
        out
    }
}

fn label_of(labels: &[String], a: usize) -> &str {
    labels.get(a).map(String::as_str).unwrap_or("")
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"").replace('\n', "\\n")
}

/// Split of the cover relation into good and bad covers.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CoverPartition {
    good: BTreeSet<(usize, usize)>,
}

impl CoverPartition {
    pub fn all_bad() -> Self {
        CoverPartition::default()
    }

    pub fn new(poset: &FinitePoset, good: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, PosetError> {
        let parts = CoverPartition { good: good.into_iter().collect() };
        parts.check(poset)?;
        Ok(parts)
    }

    fn check(&self, poset: &FinitePoset) -> Result<(), PosetError> {
        match self.good.iter().find(|&&(a, b)| !poset.is_cover(a, b)) {
            Some(&(a, b)) => Err(PosetError::NotACover(a, b)),
            None => Ok(()),
        }
    }

    pub fn good(&self) -> &BTreeSet<(usize, usize)> {
        &self.good
    }

    pub fn bad<'a>(&'a self, poset: &'a FinitePoset) -> impl Iterator<Item = (usize, usize)> + 'a {
        poset.covers().iter().copied().filter(|c| !self.good.contains(c))
    }

    /// Closed form `(-1)^len` when no cover is good, else 0. Exact when every
    /// cover is bad; other partitions can miss it (see the bowtie test).
    pub fn claimed_signed_sum(&self, poset: &FinitePoset) -> i64 {
        match (self.good.is_empty(), poset.len() % 2) {
            (false, _) => 0,
            (true, 0) => 1,
            (true, _) => -1,
        }
    }
}

/// Random poset on `n` elements: each pair `i < j` of indices is related with
/// probability `density`, then closed transitively.
pub fn random_poset<R: Rng>(rng: &mut R, n: usize, density: f64) -> FinitePoset {
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(density) {
                pairs.push((i, j));
            }
        }
    }
    FinitePoset::from_covers(n, &pairs).expect("index order is acyclic")
}

/// Random good/bad split; with probability `empty_good` every cover is bad.
pub fn random_partition<R: Rng>(rng: &mut R, poset: &FinitePoset, empty_good: f64) -> CoverPartition {
    if rng.gen_bool(empty_good) {
        return CoverPartition::all_bad();
    }
    let good = poset.covers().iter().copied().filter(|_| rng.gen_bool(0.5));
    CoverPartition::new(poset, good).expect("covers of the poset")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn boxes_poset(rows: &[i64]) -> FinitePoset {
        let ranges: Vec<(i64, i64)> = rows.iter().map(|&len| (0, len)).collect();
        FinitePoset::of_shape(&SkewShape::from_row_ranges(&ranges).unwrap())
    }

    #[test]
    fn antichain_and_chain() {
        assert_eq!(FinitePoset::antichain(3).mobius(), vec![1, 1, 1]);
        assert_eq!(FinitePoset::chain(3).mobius(), vec![0, 0, 1]);
        assert_eq!(FinitePoset::chain(4).covers(), &[(0, 1), (1, 2), (2, 3)]);
    }

    #[test]
    fn cycles_are_rejected() {
        assert!(matches!(FinitePoset::from_covers(2, &[(0, 1), (1, 0)]), Err(PosetError::Cycle(..))));
        assert!(matches!(
            FinitePoset::from_strict_order(3, |a, b| (a, b) == (0, 1) || (a, b) == (1, 2)),
            Err(PosetError::NotTransitive(0, 1, 2))
        ));
    }

    #[test]
    fn two_sets_and_their_intersection() {
        let p = FinitePoset::from_covers(3, &[(2, 0), (2, 1)]).unwrap();
        assert_eq!(p.chi_cut_and_paste(&[1, 1, 1]).unwrap(), 1);
        assert_eq!(p.chi_cut_and_paste(&[5]), Err(PosetError::Length { expected: 3, got: 1 }));
    }

    #[test]
    fn shape_three_one_all_bad() {
        let p = boxes_poset(&[3, 1]);
        let counts = p.g_sequence_counts(&CoverPartition::all_bad()).unwrap();
        assert_eq!(counts, BTreeMap::from([(3, 2), (4, 3)]));
        assert_eq!(p.g_sequence_signed_sum(&CoverPartition::all_bad()).unwrap(), 1);
    }

    #[test]
    fn small_signed_sums() {
        let chain = FinitePoset::chain(2);
        let good = CoverPartition::new(&chain, [(0, 1)]).unwrap();
        assert_eq!(chain.g_sequence_signed_sum(&good).unwrap(), 0);
        let empty = FinitePoset::antichain(0);
        assert_eq!(empty.g_sequence_signed_sum(&CoverPartition::all_bad()).unwrap(), 1);
        assert!(CoverPartition::new(&FinitePoset::chain(3), [(0, 2)]).is_err());
    }

    #[test]
    fn ideals_of_a_chain() {
        assert_eq!(FinitePoset::chain(3).ideals().unwrap(), vec![0b000, 0b001, 0b011, 0b111]);
        let big = FinitePoset::antichain(MAX_IDEAL_POSET + 1);
        assert!(matches!(big.ideals(), Err(PosetError::TooLarge { .. })));
    }

    #[test]
    fn mobius_matches_classical_on_random_posets() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..300 {
            let n = rng.gen_range(1..=7);
            let density = rng.gen_range(0.1..0.7);
            let p = random_poset(&mut rng, n, density);
            let q = p.dual().with_bottom();
            let classical = q.interval_mobius(n);
            let ours = p.mobius();
            for z in 0..n {
                assert_eq!(ours[z], -classical[z]);
            }
        }
    }

    /// Direct enumeration of G-sequences as chains of ideals.
    fn brute_signed_sum(p: &FinitePoset, parts: &CoverPartition) -> i64 {
        let ideals = p.ideals().unwrap();
        let full = ideals.last().copied().unwrap_or(0);
        let bad: Vec<(usize, usize)> = parts.bad(p).collect();
        fn walk(m: u32, full: u32, ideals: &[u32], bad: &[(usize, usize)], len: u32) -> i64 {
            if m == full {
                return if len.is_multiple_of(2) { 1 } else { -1 };
            }
            ideals
                .iter()
                .filter(|&&j| j & m == m && j != m)
                .filter(|&&j| bad.iter().all(|&(a, b)| (j & !m) >> a & 1 == 0 || (j & !m) >> b & 1 == 0))
                .map(|&j| walk(j, full, ideals, bad, len + 1))
                .sum()
        }
        walk(0, full, &ideals, &bad, 0)
    }

    #[test]
    fn g_sequence_counts_match_enumeration() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200 {
            let n = rng.gen_range(0..=6);
            let density = rng.gen_range(0.1..0.7);
            let p = random_poset(&mut rng, n, density);
            let parts = random_partition(&mut rng, &p, 0.4);
            assert_eq!(p.g_sequence_signed_sum(&parts).unwrap(), brute_signed_sum(&p, &parts));
        }
    }

    #[test]
    fn all_bad_covers_give_the_parity() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..300 {
            let n = rng.gen_range(0..=7);
            let density = rng.gen_range(0.1..0.7);
            let p = random_poset(&mut rng, n, density);
            let parts = CoverPartition::all_bad();
            assert_eq!(p.g_sequence_signed_sum(&parts).unwrap(), parts.claimed_signed_sum(&p));
        }
    }

    #[test]
    fn bowtie_with_crossing_good_covers_is_not_zero() {
        // 0, 1 < 2, 3 with good covers 0 < 2 and 1 < 3: every upper element
        // also has a bad cover, and the signed count is -1 rather than 0.
        let p = FinitePoset::from_covers(4, &[(0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
        let parts = CoverPartition::new(&p, [(0, 2), (1, 3)]).unwrap();
        assert_eq!(p.g_sequence_signed_sum(&parts).unwrap(), -1);
        assert_eq!(parts.claimed_signed_sum(&p), 0);
        let one_good = CoverPartition::new(&p, [(0, 2)]).unwrap();
        assert_eq!(p.g_sequence_signed_sum(&one_good).unwrap(), 0);
    }

    #[test]
    fn cut_and_paste_is_inclusion_exclusion() {
        // Closed sets are subsets of a six-point space; chi counts points.
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let k = rng.gen_range(1..=5);
            let maximal: Vec<u8> = (0..k).map(|_| rng.gen_range(1u8..64)).collect();
            let mut strata: BTreeSet<u8> = BTreeSet::new();
            for s in 1u32..1 << k {
                let meet = (0..k).filter(|i| s & (1 << i) != 0).fold(63u8, |m, i| m & maximal[i]);
                if meet != 0 {
                    strata.insert(meet);
                }
            }
            let strata: Vec<u8> = strata.into_iter().collect();
            let p = FinitePoset::from_strict_order(strata.len(), |a, b| a != b && strata[a] & strata[b] == strata[a])
                .unwrap();
            let chi: Vec<i64> = strata.iter().map(|s| s.count_ones() as i64).collect();
            let union = maximal.iter().fold(0u8, |u, m| u | m);
            assert_eq!(p.chi_cut_and_paste(&chi).unwrap(), union.count_ones() as i64);
        }
    }

    #[test]
    fn dot_output() {
        let p = FinitePoset::chain(2);
        let dot = p.to_dot("c", &["a".into(), "b\"".into()], Some(&[0, 0]));
        assert!(dot.contains("n1 -> n0;"));
        assert!(dot.contains("cluster_0"));
        assert!(dot.contains("b\\\""));
    }
}
