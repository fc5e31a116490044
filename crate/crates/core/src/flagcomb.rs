//! Permutations, nested-set sequences, coherence and moves, and the
//! dimension formulas for flag Richardson varieties, with a finite-field
//! harness that manufactures intersection arrays from actual flags.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FlagError {
    #[error("not a permutation of 0..{0}")]
    NotAPermutation(usize),
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("sets must be strictly nested, start at the empty set and end at 0..d")]
    NotNested,
    #[error("array has {got} entries, expected {expected}")]
    Size { expected: usize, got: usize },
    #[error("boundary condition fails at ({i},{j},{k})")]
    Boundary { i: usize, j: usize, k: usize },
    #[error("submodularity fails at ({i},{j},{k})")]
    Submodularity { i: usize, j: usize, k: usize },
    #[error("{0} is not a prime below 2^31")]
    NotPrime(u64),
    #[error("dimension {got} exceeds the limit {max}")]
    TooLarge { got: usize, max: usize },
    #[error("pivot {t} is outside 1..{d}")]
    Pivot { t: usize, d: usize },
}

/// A permutation of `0..d` in one-line form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(entries: Vec<usize>) -> Result<Self, FlagError> {
        let d = entries.len();
        let mut seen = vec![false; d];
        for &e in &entries {
            if e >= d || std::mem::replace(&mut seen[e], true) {
                return Err(FlagError::NotAPermutation(d));
            }
        }
        Ok(Permutation(entries))
    }

    pub fn identity(d: usize) -> Self {
        Permutation((0..d).collect())
    }

    /// The descending permutation ω.
    pub fn reversal(d: usize) -> Self {
        Permutation((0..d).rev().collect())
    }

    /// All of S_d in lexicographic order.
    pub fn all(d: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut p: Vec<usize> = (0..d).collect();
        loop {
            out.push(Permutation(p.clone()));
            let Some(i) = (1..d).rev().find(|&i| p[i - 1] < p[i]) else {
                return out;
            };
            let j = (i..d).rev().find(|&j| p[j] > p[i - 1]).expect("an ascent has a larger tail entry");
            p.swap(i - 1, j);
            p[i..].reverse();
        }
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    /// `#{(i,j): i<j, σ(i)>σ(j)}`.
    pub fn inversions(&self) -> usize {
        let p = &self.0;
        (0..p.len()).map(|i| p[i + 1..].iter().filter(|&&q| q < p[i]).count()).sum()
    }

    pub fn has_ascent_at(&self, i: usize) -> bool {
        i + 1 < self.0.len() && self.0[i] < self.0[i + 1]
    }

    fn swapped(&self, i: usize) -> Self {
        let mut p = self.0.clone();
        p.swap(i, i + 1);
        Permutation(p)
    }

    /// `σ_{a,k} = #{i < k: σ_i ≥ a}`.
    pub fn count_at_least(&self, a: usize, k: usize) -> usize {
        self.0[..k].iter().filter(|&&s| s >= a).count()
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|e| e.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// `∅ = A_{i_0} ⊂ … ⊂ A_{i_s} = [d]` with strictly increasing sizes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NestedSetSequence {
    d: usize,
    sets: Vec<BTreeSet<usize>>,
}

impl NestedSetSequence {
    /// The sets in order; the empty set and `[d]` may be omitted.
    pub fn new(d: usize, sets: Vec<BTreeSet<usize>>) -> Result<Self, FlagError> {
        let full: BTreeSet<usize> = (0..d).collect();
        let mut all = vec![BTreeSet::new()];
        all.extend(sets.into_iter().filter(|s| !s.is_empty() && *s != full));
        all.push(full);
        if d == 0 {
            all.pop();
        }
        let nested = all.windows(2).all(|w| w[0].len() < w[1].len() && w[0].is_subset(&w[1]));
        if !nested || all.iter().flatten().any(|&e| e >= d) {
            return Err(FlagError::NotNested);
        }
        Ok(NestedSetSequence { d, sets: all })
    }

    /// `A_•(σ)`: the complete sequence of prefixes of `σ`.
    pub fn of_permutation(p: &Permutation) -> Self {
        let sets = (0..=p.len()).map(|k| p.as_slice()[..k].iter().copied().collect()).collect();
        NestedSetSequence { d: p.len(), sets }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn sets(&self) -> &[BTreeSet<usize>] {
        &self.sets
    }

    /// `i_0 < … < i_s`.
    pub fn sizes(&self) -> Vec<usize> {
        self.sets.iter().map(BTreeSet::len).collect()
    }

    /// Every size from 0 to d occurs.
    pub fn is_complete(&self) -> bool {
        self.sets.len() == self.d + 1
    }

    /// Concatenate each new block in increasing order.
    pub fn increasing_completion(&self) -> Permutation {
        let entries = self.sets.windows(2).flat_map(|w| w[1].difference(&w[0]).copied().collect::<Vec<_>>()).collect();
        Permutation(entries)
    }

    pub fn inversions(&self) -> usize {
        self.increasing_completion().inversions()
    }
}

fn check_same(sigma: &Permutation, tau: &Permutation) -> Result<(), FlagError> {
    if sigma.len() == tau.len() {
        Ok(())
    } else {
        Err(FlagError::DimensionMismatch { left: sigma.len(), right: tau.len() })
    }
}

/// k-coherence by the sorting definition: with both prefixes of length `k`
/// sorted ascending, `σ_i + τ_{k-1-i} < d` for every `i < k`.
pub fn is_k_coherent(sigma: &Permutation, tau: &Permutation, k: usize) -> bool {
    let d = sigma.len();
    let mut s = sigma.as_slice()[..k].to_vec();
    let mut t = tau.as_slice()[..k].to_vec();
    s.sort_unstable();
    t.sort_unstable();
    (0..k).all(|i| s[i] + t[k - 1 - i] < d)
}

/// k-coherence by counting: `σ_{a,k} + τ_{b,k} ≤ k` whenever `a + b = d`.
pub fn is_k_coherent_by_counts(sigma: &Permutation, tau: &Permutation, k: usize) -> bool {
    let d = sigma.len();
    (0..=d).all(|a| sigma.count_at_least(a, k) + tau.count_at_least(d - a, k) <= k)
}

/// Coherent means k-coherent for every `k = 1..=d`.
pub fn is_coherent(sigma: &Permutation, tau: &Permutation) -> Result<bool, FlagError> {
    check_same(sigma, tau)?;
    Ok((1..=sigma.len()).all(|k| is_k_coherent(sigma, tau, k)))
}

/// Coherence of sequences is coherence of their increasing completions.
pub fn sequences_coherent(a: &NestedSetSequence, b: &NestedSetSequence) -> Result<bool, FlagError> {
    is_coherent(&a.increasing_completion(), &b.increasing_completion())
}

/// Every pair one move away: an ascent of one permutation at `i` lets the
/// other swap positions `i` and `i+1`.
pub fn moves_from(sigma: &Permutation, tau: &Permutation) -> BTreeSet<(Permutation, Permutation)> {
    let mut out = BTreeSet::new();
    for i in 0..sigma.len().saturating_sub(1) {
        if sigma.has_ascent_at(i) {
            out.insert((sigma.clone(), tau.swapped(i)));
        }
        if tau.has_ascent_at(i) {
            out.insert((sigma.swapped(i), tau.clone()));
        }
    }
    out
}

pub const MAX_MOVE_DIMENSION: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoherenceReport {
    pub d: usize,
    pub pairs: usize,
    pub coherent: usize,
    pub reachable: usize,
    /// Pairs in exactly one of the two sets.
    pub class_mismatches: Vec<(Permutation, Permutation)>,
    /// Pairs where the sorting and counting formulations disagree.
    pub formulation_mismatches: Vec<(Permutation, Permutation)>,
    pub edges: usize,
    /// Move edges joining a coherent pair to an incoherent one.
    pub edge_violations: Vec<(Permutation, Permutation)>,
}

impl CoherenceReport {
    pub fn passed(&self) -> bool {
        self.class_mismatches.is_empty() && self.formulation_mismatches.is_empty() && self.edge_violations.is_empty()
    }
}

/// Breadth-first move closure of `(ω, id)` against brute-force coherence of
/// every pair in `S_d × S_d`, plus coherence along every move edge.
pub fn verify_coherence_equals_move_class(d: usize) -> Result<CoherenceReport, FlagError> {
    if d > MAX_MOVE_DIMENSION {
        return Err(FlagError::TooLarge { got: d, max: MAX_MOVE_DIMENSION });
    }
    let perms = Permutation::all(d);
    let index: HashMap<&Permutation, usize> = perms.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let n = perms.len();
    let id = |s: &Permutation, t: &Permutation| index[s] * n + index[t];

    let mut coherent = vec![false; n * n];
    let mut formulation_mismatches = Vec::new();
    for s in &perms {
        for t in &perms {
            let by_sorting = (1..=d).all(|k| is_k_coherent(s, t, k));
            let by_counts = (1..=d).all(|k| is_k_coherent_by_counts(s, t, k));
            if by_sorting != by_counts {
                formulation_mismatches.push((s.clone(), t.clone()));
            }
            coherent[id(s, t)] = by_sorting;
        }
    }

    let mut edges = 0;
    let mut edge_violations = Vec::new();
    for s in &perms {
        for t in &perms {
            for (s2, t2) in moves_from(s, t) {
                edges += 1;
                if coherent[id(s, t)] != coherent[id(&s2, &t2)] {
                    edge_violations.push((s.clone(), t.clone()));
                }
            }
        }
    }

    let mut reached = vec![false; n * n];
    let start = (Permutation::reversal(d), Permutation::identity(d));
    reached[id(&start.0, &start.1)] = true;
    let mut queue = VecDeque::from([start]);
    while let Some((s, t)) = queue.pop_front() {
        for (s2, t2) in moves_from(&s, &t) {
            let slot = &mut reached[id(&s2, &t2)];
            if !*slot {
                *slot = true;
                queue.push_back((s2, t2));
            }
        }
    }

    let mut class_mismatches = Vec::new();
    for s in &perms {
        for t in &perms {
            if coherent[id(s, t)] != reached[id(s, t)] {
                class_mismatches.push((s.clone(), t.clone()));
            }
        }
    }
    Ok(CoherenceReport {
        d,
        pairs: n * n,
        coherent: coherent.iter().filter(|&&c| c).count(),
        reachable: reached.iter().filter(|&&c| c).count(),
        class_mismatches,
        formulation_mismatches,
        edges,
        edge_violations,
    })
}

/// Dimension of the partial flag variety with the given subspace sizes:
/// `C(d,2) − Σ C(i_j − i_{j−1}, 2)`.
pub fn partial_flag_dimension(sizes: &[usize]) -> usize {
    let d = sizes.last().copied().unwrap_or(0);
    let choose2 = |n: usize| n * n.saturating_sub(1) / 2;
    choose2(d) - sizes.windows(2).map(|w| choose2(w[1] - w[0])).sum::<usize>()
}

/// `dim F(i_0,…,i_s) − inv(A_•) − inv(B_•)`; may be negative.
pub fn expected_dimension(a: &NestedSetSequence, b: &NestedSetSequence) -> Result<i64, FlagError> {
    if a.d() != b.d() {
        return Err(FlagError::DimensionMismatch { left: a.d(), right: b.d() });
    }
    if a.sizes() != b.sizes() {
        return Err(FlagError::Size { expected: a.sizes().len(), got: b.sizes().len() });
    }
    Ok(partial_flag_dimension(&a.sizes()) as i64 - a.inversions() as i64 - b.inversions() as i64)
}

/// Triple-intersection dimensions `a^{i,j,k}`, `0 ≤ i,j,k ≤ d`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct IntersectionArray {
    d: usize,
    values: Vec<u32>,
}

impl IntersectionArray {
    /// Validates the boundary and submodularity conditions.
    pub fn new(d: usize, values: Vec<u32>) -> Result<Self, FlagError> {
        let expected = (d + 1).pow(3);
        if values.len() != expected {
            return Err(FlagError::Size { expected, got: values.len() });
        }
        let a = IntersectionArray { d, values };
        a.validate()?;
        Ok(a)
    }

    pub fn from_fn(d: usize, f: impl Fn(usize, usize, usize) -> u32) -> Result<Self, FlagError> {
        let mut values = Vec::with_capacity((d + 1).pow(3));
        for i in 0..=d {
            for j in 0..=d {
                for k in 0..=d {
                    values.push(f(i, j, k));
                }
            }
        }
        Self::new(d, values)
    }

    /// Three pairwise generic flags: `max(0, d − i − j − k)`.
    pub fn generic(d: usize) -> Self {
        Self::from_fn(d, |i, j, k| d.saturating_sub(i + j + k) as u32).expect("generic array is valid")
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// `a^{i,j,k}`, zero beyond `d`.
    pub fn get(&self, i: usize, j: usize, k: usize) -> i64 {
        let d = self.d;
        if i > d || j > d || k > d {
            0
        } else {
            self.values[(i * (d + 1) + j) * (d + 1) + k] as i64
        }
    }

    fn validate(&self) -> Result<(), FlagError> {
        let d = self.d;
        for i in 0..=d {
            let want = (d - i) as i64;
            if self.get(i, 0, 0) != want || self.get(0, i, 0) != want || self.get(0, 0, i) != want {
                return Err(FlagError::Boundary { i, j: 0, k: 0 });
            }
        }
        for i in 0..=d {
            for j in 0..=d {
                for k in 0..=d {
                    if (i == d || j == d || k == d) && self.get(i, j, k) != 0 {
                        return Err(FlagError::Boundary { i, j, k });
                    }
                    let a = |x, y, z| self.get(x, y, z);
                    let ok = a(i, j, k) + a(i + 1, j + 1, k) >= a(i + 1, j, k) + a(i, j + 1, k)
                        && a(i, j, k) + a(i + 1, j, k + 1) >= a(i + 1, j, k) + a(i, j, k + 1)
                        && a(i, j, k) + a(i, j + 1, k + 1) >= a(i, j + 1, k) + a(i, j, k + 1);
                    if !ok {
                        return Err(FlagError::Submodularity { i, j, k });
                    }
                }
            }
        }
        Ok(())
    }

    /// The consequences `0 ≤ Δ a ≤ 1` in each direction, and the
    /// monotonicity of the k-difference under decreasing `i`, `j`.
    pub fn difference_bounds_hold(&self) -> bool {
        let d = self.d;
        let unit = |x: i64| (0..=1).contains(&x);
        (0..=d).all(|i| {
            (0..=d).all(|j| {
                (0..=d).all(|k| {
                    let dk = self.get(i, j, k) - self.get(i, j, k + 1);
                    unit(dk)
                        && unit(self.get(i, j, k) - self.get(i + 1, j, k))
                        && unit(self.get(i, j, k) - self.get(i, j + 1, k))
                        && (i == 0 || dk <= self.get(i - 1, j, k) - self.get(i - 1, j, k + 1))
                        && (j == 0 || dk <= self.get(i, j - 1, k) - self.get(i, j - 1, k + 1))
                })
            })
        })
    }

    /// `Δ^i a = a^{i−1,j,k} − a^{i,j,k}`.
    pub fn di(&self, i: usize, j: usize, k: usize) -> i64 {
        self.get(i - 1, j, k) - self.get(i, j, k)
    }

    pub fn dj(&self, i: usize, j: usize, k: usize) -> i64 {
        self.get(i, j - 1, k) - self.get(i, j, k)
    }

    pub fn dk(&self, i: usize, j: usize, k: usize) -> i64 {
        self.get(i, j, k - 1) - self.get(i, j, k)
    }

    /// `Δ^i Δ^j a`.
    pub fn didj(&self, i: usize, j: usize, k: usize) -> i64 {
        self.get(i - 1, j - 1, k) - self.get(i - 1, j, k) - self.get(i, j - 1, k) + self.get(i, j, k)
    }

    pub fn didk(&self, i: usize, j: usize, k: usize) -> i64 {
        self.get(i - 1, j, k - 1) - self.get(i - 1, j, k) - self.get(i, j, k - 1) + self.get(i, j, k)
    }

    pub fn djdk(&self, i: usize, j: usize, k: usize) -> i64 {
        self.get(i, j - 1, k - 1) - self.get(i, j - 1, k) - self.get(i, j, k - 1) + self.get(i, j, k)
    }

    /// Left minus right side of the per-cube telescoping identity at
    /// `(i,j,k)`, all indices at least 1.
    pub fn telescoping_defect(&self, i: usize, j: usize, k: usize) -> i64 {
        let lhs = self.dk(i - 1, j - 1, k) * self.didj(i, j, k)
            + self.dk(i, j, k) * self.didj(i, j, k - 1)
            + (self.di(i, j, k - 1) * self.dj(i, j, k - 1) - self.di(i, j, k) * self.dj(i, j, k));
        let rhs = (self.dj(i - 1, j, k) * self.dk(i - 1, j, k) - self.dj(i, j, k) * self.dk(i, j, k))
            + (self.di(i, j - 1, k) * self.dk(i, j - 1, k) - self.di(i, j, k) * self.dk(i, j, k));
        lhs - rhs
    }
}

fn cube(d: usize) -> impl Iterator<Item = (usize, usize, usize)> {
    (1..=d).flat_map(move |i| (1..=d).flat_map(move |j| (1..=d).map(move |k| (i, j, k))))
}

fn square(d: usize) -> impl Iterator<Item = (usize, usize)> {
    (1..=d).flat_map(move |x| (1..=d).map(move |y| (x, y)))
}

/// `Σ_{i,j,k ≥ 1} (Δ^k a^{i−1,j−1,k})(Δ^i Δ^j a^{i,j,k})`.
pub fn dim_y_first_version(a: &IntersectionArray) -> i64 {
    cube(a.d).map(|(i, j, k)| a.dk(i - 1, j - 1, k) * a.didj(i, j, k)).sum()
}

/// The four sums of the dimension formula, kept apart.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FourTerms {
    /// `Σ_{j,k} (Δ^j a^{0,j,k})(Δ^k a^{0,j,k})`: the pair Q, V.
    pub qv: i64,
    /// `Σ_{i,k} (Δ^i a^{i,0,k})(Δ^k a^{i,0,k})`: the pair P, V.
    pub pv: i64,
    /// `Σ_{i,j} (Δ^i a^{i,j,0})(Δ^j a^{i,j,0})`: the pair P, Q.
    pub pq: i64,
    /// `Σ_{i,j,k} (Δ^k a^{i,j,k})(Δ^i Δ^j a^{i,j,k−1})`.
    pub correction: i64,
}

impl FourTerms {
    pub fn of(a: &IntersectionArray) -> Self {
        let d = a.d;
        FourTerms {
            qv: square(d).map(|(j, k)| a.dj(0, j, k) * a.dk(0, j, k)).sum(),
            pv: square(d).map(|(i, k)| a.di(i, 0, k) * a.dk(i, 0, k)).sum(),
            pq: square(d).map(|(i, j)| a.di(i, j, 0) * a.dj(i, j, 0)).sum(),
            correction: cube(d).map(|(i, j, k)| a.dk(i, j, k) * a.didj(i, j, k - 1)).sum(),
        }
    }

    pub fn first_three(&self) -> i64 {
        self.qv + self.pv - self.pq
    }

    pub fn value(&self) -> i64 {
        self.first_three() - self.correction
    }
}

pub fn dim_y_four_term(a: &IntersectionArray) -> i64 {
    FourTerms::of(a).value()
}

/// Every correction summand is 0 or 1.
pub fn correction_summands_are_bits(a: &IntersectionArray) -> bool {
    cube(a.d).all(|(i, j, k)| (0..=1).contains(&(a.dk(i, j, k) * a.didj(i, j, k - 1))))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum AlmostTransverseReport {
    /// The array does not have the almost-transverse pattern at `t`, or
    /// violates the coherence inequality; nothing is asserted.
    Precondition {
        reason: String,
    },
    Checked {
        terms: FourTerms,
        dimension: i64,
        bound: i64,
        holds: bool,
    },
}

/// The hypothesis pattern of `a^{i,j,0}` at pivot `t`.
pub fn almost_transverse_pattern(d: usize, t: usize, i: usize, j: usize) -> u32 {
    if i + j < d {
        (d - i - j) as u32
    } else if i == t && j == d - t {
        1
    } else {
        0
    }
}

/// Checks that the dimension is at most the first three terms minus one
/// when `a^{i,j,0}` is almost transverse at `t` and
/// `a^{i,0,k} + a^{0,d−i,k} ≤ a^{0,0,k}`.
pub fn check_almost_transverse_bound(a: &IntersectionArray, t: usize) -> AlmostTransverseReport {
    let d = a.d;
    if t > d {
        return AlmostTransverseReport::Precondition { reason: format!("pivot {t} exceeds {d}") };
    }
    for i in 0..=d {
        for j in 0..=d {
            if a.get(i, j, 0) != almost_transverse_pattern(d, t, i, j) as i64 {
                return AlmostTransverseReport::Precondition {
                    reason: format!("a^({i},{j},0) = {} breaks the pattern", a.get(i, j, 0)),
                };
            }
        }
    }
    for i in 0..=d {
        for k in 0..=d {
            if a.get(i, 0, k) + a.get(0, d - i, k) > a.get(0, 0, k) {
                return AlmostTransverseReport::Precondition {
                    reason: format!("coherence inequality fails at i={i}, k={k}"),
                };
            }
        }
    }
    let terms = FourTerms::of(a);
    let bound = terms.first_three() - 1;
    AlmostTransverseReport::Checked { terms, dimension: terms.value(), bound, holds: terms.value() <= bound }
}

/// Arithmetic in `F_p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField(u64);

impl PrimeField {
    pub const DEFAULT_PRIME: u64 = 101;

    pub fn new(p: u64) -> Result<Self, FlagError> {
        let prime = (2..1 << 31).contains(&p) && (2..).take_while(|q| q * q <= p).all(|q| !p.is_multiple_of(q));
        if prime {
            Ok(PrimeField(p))
        } else {
            Err(FlagError::NotPrime(p))
        }
    }

    pub fn p(self) -> u64 {
        self.0
    }

    fn mul(self, x: u64, y: u64) -> u64 {
        x * y % self.0
    }

    fn sub(self, x: u64, y: u64) -> u64 {
        (x + self.0 - y) % self.0
    }

    fn inv(self, x: u64) -> u64 {
        let (mut base, mut e, mut acc) = (x % self.0, self.0 - 2, 1);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    fn row_reduce(self, rows: &mut [Vec<u64>]) -> Vec<usize> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            let Some(found) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
                continue;
            };
            rows.swap(r, found);
            let scale = self.inv(rows[r][c]);
            for x in rows[r].iter_mut() {
                *x = self.mul(*x, scale);
            }
            let pivot_row = rows[r].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i != r && row[c] != 0 {
                    let factor = row[c];
                    for (x, &p) in row.iter_mut().zip(&pivot_row) {
                        *x = self.sub(*x, self.mul(factor, p));
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// Dimension of the span of `vectors`.
    pub fn rank(self, vectors: &[Vec<u64>]) -> usize {
        self.row_reduce(&mut vectors.to_vec()).len()
    }

    /// A basis of `span(u) ∩ span(w)`, given bases `u` and `w`.
    pub fn intersect(self, u: &[Vec<u64>], w: &[Vec<u64>]) -> Vec<Vec<u64>> {
        let Some(dim) = u.first().or(w.first()).map(Vec::len) else {
            return Vec::new();
        };
        if u.is_empty() || w.is_empty() {
            return Vec::new();
        }
        // Solve Σ x_i u_i − Σ y_j w_j = 0.
        let n = u.len() + w.len();
        let mut rows: Vec<Vec<u64>> =
            (0..dim).map(|r| u.iter().map(|v| v[r]).chain(w.iter().map(|v| self.sub(0, v[r]))).collect()).collect();
        let pivots = self.row_reduce(&mut rows);
        let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut x = vec![0; n];
                x[f] = 1;
                for (r, &pc) in pivots.iter().enumerate() {
                    x[pc] = self.sub(0, rows[r][f]);
                }
                (0..dim).map(|r| u.iter().zip(&x).fold(0, |acc, (v, &c)| (acc + self.mul(c, v[r])) % self.0)).collect()
            })
            .collect()
    }
}

/// A complete flag `V = F^0 ⊃ F^1 ⊃ … ⊃ F^d = 0`, where `F^k` is spanned by
/// basis vectors `k..d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Flag {
    basis: Vec<Vec<u64>>,
}

impl Flag {
    pub fn new(field: PrimeField, basis: Vec<Vec<u64>>) -> Result<Self, FlagError> {
        let d = basis.len();
        if let Some(v) = basis.iter().find(|v| v.len() != d) {
            return Err(FlagError::DimensionMismatch { left: d, right: v.len() });
        }
        if field.rank(&basis) != d {
            return Err(FlagError::NotNested);
        }
        Ok(Flag { basis })
    }

    /// `F^k` spanned by `e_{w(k)}, …, e_{w(d−1)}`.
    pub fn coordinate(w: &Permutation) -> Self {
        let d = w.len();
        let basis = w.as_slice().iter().map(|&m| (0..d).map(|r| u64::from(r == m)).collect()).collect();
        Flag { basis }
    }

    pub fn d(&self) -> usize {
        self.basis.len()
    }

    /// The codimension-`k` subspace.
    pub fn subspace(&self, k: usize) -> &[Vec<u64>] {
        &self.basis[k..]
    }

    /// Apply the linear map with the given columns.
    pub fn transformed(&self, field: PrimeField, g: &[Vec<u64>]) -> Self {
        let d = self.d();
        let basis = self
            .basis
            .iter()
            .map(|v| (0..d).map(|r| (0..d).fold(0, |acc, c| (acc + field.mul(g[c][r], v[c])) % field.p())).collect())
            .collect();
        Flag { basis }
    }
}

/// `d` uniformly random vectors, redrawn until independent.
pub fn random_basis<R: Rng>(rng: &mut R, field: PrimeField, d: usize) -> Vec<Vec<u64>> {
    loop {
        let basis: Vec<Vec<u64>> = (0..d).map(|_| (0..d).map(|_| rng.gen_range(0..field.p())).collect()).collect();
        if field.rank(&basis) == d {
            return basis;
        }
    }
}

pub fn random_flag<R: Rng>(rng: &mut R, field: PrimeField, d: usize) -> Flag {
    Flag { basis: random_basis(rng, field, d) }
}

/// A flag in a random Schubert cell relative to the coordinate flag: a
/// random permutation, then sparse unitriangular mixing toward the larger
/// subspaces. These give non-generic relative positions often.
pub fn random_schubert_flag<R: Rng>(rng: &mut R, field: PrimeField, d: usize) -> Flag {
    let mut w: Vec<usize> = (0..d).collect();
    for i in (1..d).rev() {
        w.swap(i, rng.gen_range(0..=i));
    }
    let mut flag = Flag::coordinate(&Permutation(w));
    for m in 0..d {
        for l in m + 1..d {
            if rng.gen_bool(0.3) {
                let c = rng.gen_range(1..field.p());
                let add: Vec<u64> = flag.basis[l].iter().map(|&x| field.mul(c, x)).collect();
                for (x, y) in flag.basis[m].iter_mut().zip(add) {
                    *x = (*x + y) % field.p();
                }
            }
        }
    }
    flag
}

/// `a^{i,j,k} = dim(P^i ∩ Q^j ∩ V^k)` by exact rank computations.
pub fn array_from_flags(field: PrimeField, p: &Flag, q: &Flag, v: &Flag) -> Result<IntersectionArray, FlagError> {
    let d = p.d();
    for other in [q.d(), v.d()] {
        if other != d {
            return Err(FlagError::DimensionMismatch { left: d, right: other });
        }
    }
    let mut values = vec![0u32; (d + 1).pow(3)];
    for i in 0..=d {
        for j in 0..=d {
            let pq = field.intersect(p.subspace(i), q.subspace(j));
            for k in 0..=d {
                let vk = v.subspace(k);
                let mut union = pq.clone();
                union.extend_from_slice(vk);
                let dim = pq.len() + vk.len() - field.rank(&union);
                values[(i * (d + 1) + j) * (d + 1) + k] = dim as u32;
            }
        }
    }
    IntersectionArray::new(d, values)
}

pub const MAX_ARRAY_DIMENSION: usize = 8;

/// Three uniformly random complete flags in `F_p^d`, seeded.
pub fn array_from_flag_triple(d: usize, prime: u64, seed: u64) -> Result<IntersectionArray, FlagError> {
    if d > MAX_ARRAY_DIMENSION {
        return Err(FlagError::TooLarge { got: d, max: MAX_ARRAY_DIMENSION });
    }
    let field = PrimeField::new(prime)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let [p, q, v] = [(); 3].map(|_| random_flag(&mut rng, field, d));
    array_from_flags(field, &p, &q, &v)
}

/// Three flags in random Schubert cells, seeded; the relative positions
/// vary, so the arrays do too.
pub fn structured_array(d: usize, prime: u64, seed: u64) -> Result<IntersectionArray, FlagError> {
    if d > MAX_ARRAY_DIMENSION {
        return Err(FlagError::TooLarge { got: d, max: MAX_ARRAY_DIMENSION });
    }
    let field = PrimeField::new(prime)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let [p, q, v] = [(); 3].map(|_| random_schubert_flag(&mut rng, field, d));
    array_from_flags(field, &p, &q, &v)
}

/// P the coordinate flag, Q the coordinate flag of the reversal composed
/// with the transposition `(t−1, t)` so that only `P^t ∩ Q^{d−t}` is a
/// line, V from a random Schubert cell; all three moved by one random
/// change of basis.
pub fn almost_transverse_array(d: usize, t: usize, prime: u64, seed: u64) -> Result<IntersectionArray, FlagError> {
    if t == 0 || t >= d {
        return Err(FlagError::Pivot { t, d });
    }
    if d > MAX_ARRAY_DIMENSION {
        return Err(FlagError::TooLarge { got: d, max: MAX_ARRAY_DIMENSION });
    }
    let field = PrimeField::new(prime)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = Flag::coordinate(&Permutation::identity(d));
    // Q^j is spanned by e_{π(0)}, …, e_{π(d−1−j)}.
    let mut pi: Vec<usize> = (0..d).collect();
    pi.swap(t - 1, t);
    let q = Flag::coordinate(&Permutation(pi.into_iter().rev().collect()));
    let v = if rng.gen_bool(0.5) { random_flag(&mut rng, field, d) } else { random_schubert_flag(&mut rng, field, d) };
    let g = random_basis(&mut rng, field, d);
    let [p, q, v] = [p, q, v].map(|f| f.transformed(field, &g));
    array_from_flags(field, &p, &q, &v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(v: &[usize]) -> Permutation {
        Permutation::new(v.to_vec()).unwrap()
    }

    fn seq(d: usize, sets: &[&[usize]]) -> NestedSetSequence {
        NestedSetSequence::new(d, sets.iter().map(|s| s.iter().copied().collect()).collect()).unwrap()
    }

    #[test]
    fn completion_and_inversions() {
        let a = seq(5, &[&[0, 1, 3]]);
        assert_eq!(a.increasing_completion(), perm(&[0, 1, 3, 2, 4]));
        assert_eq!(a.inversions(), 1);
        assert_eq!(seq(4, &[]).increasing_completion(), Permutation::identity(4));
        for p in Permutation::all(4) {
            assert_eq!(NestedSetSequence::of_permutation(&p).increasing_completion(), p);
        }
        assert_eq!(Permutation::reversal(6).inversions(), 15);
        assert_eq!(Permutation::identity(6).inversions(), 0);
        assert_eq!(Permutation::all(5).len(), 120);
        assert!(Permutation::new(vec![0, 0]).is_err());
        assert_eq!(
            NestedSetSequence::new(3, vec![BTreeSet::from([0, 1]), BTreeSet::from([2])]),
            Err(FlagError::NotNested)
        );
    }

    #[test]
    fn omega_is_coherent_only_with_the_identity() {
        for d in 1..=5 {
            let omega = Permutation::reversal(d);
            for tau in Permutation::all(d) {
                assert_eq!(is_coherent(&omega, &tau).unwrap(), tau == Permutation::identity(d), "{tau}");
            }
        }
    }

    #[test]
    fn identity_pair_is_coherent() {
        for d in 0..=6 {
            let id = Permutation::identity(d);
            assert!(is_coherent(&id, &id).unwrap());
        }
        // One move joins (id, id) to (ω, id) when d = 2.
        let moves = moves_from(&Permutation::identity(2), &Permutation::identity(2));
        assert!(moves.contains(&(Permutation::reversal(2), Permutation::identity(2))));
        assert!(is_coherent(&perm(&[0]), &perm(&[0, 1])).is_err());
    }

    #[test]
    fn moves_are_reversible() {
        for s in Permutation::all(4) {
            for t in Permutation::all(4) {
                for (s2, t2) in moves_from(&s, &t) {
                    assert!(moves_from(&s2, &t2).contains(&(s.clone(), t.clone())));
                }
            }
        }
        assert!(moves_from(&perm(&[0]), &perm(&[0])).is_empty());
        let from_omega = moves_from(&Permutation::reversal(3), &Permutation::identity(3));
        assert_eq!(
            from_omega,
            BTreeSet::from([(perm(&[1, 2, 0]), perm(&[0, 1, 2])), (perm(&[2, 0, 1]), perm(&[0, 1, 2]))])
        );
    }

    #[test]
    fn coherence_is_the_move_class() {
        for d in 0..=5 {
            let report = verify_coherence_equals_move_class(d).unwrap();
            assert!(report.passed(), "{report:?}");
            assert_eq!(report.coherent, report.reachable);
        }
        assert_eq!(verify_coherence_equals_move_class(2).unwrap().coherent, 3);
    }

    #[test]
    fn expected_dimensions() {
        let d = 4;
        let omega = NestedSetSequence::of_permutation(&Permutation::reversal(d));
        let id = NestedSetSequence::of_permutation(&Permutation::identity(d));
        assert_eq!(expected_dimension(&omega, &id), Ok(0));
        assert_eq!(expected_dimension(&seq(d, &[]), &seq(d, &[])), Ok(0));
        let id3 = NestedSetSequence::of_permutation(&Permutation::identity(3));
        assert_eq!(expected_dimension(&id3, &id3), Ok(3));
        assert_eq!(partial_flag_dimension(&[0, 2, 5]), 6);
        assert!(expected_dimension(&seq(4, &[&[0]]), &seq(4, &[&[0, 1]])).is_err());
    }

    #[test]
    fn generic_arrays() {
        for d in 0..=6 {
            let a = IntersectionArray::generic(d);
            let choose = (d * d.saturating_sub(1) / 2) as i64;
            assert_eq!(dim_y_first_version(&a), choose);
            let terms = FourTerms::of(&a);
            assert_eq!((terms.qv, terms.pv, terms.pq, terms.correction), (choose, choose, choose, 0));
        }
        assert_eq!(dim_y_first_version(&IntersectionArray::generic(1)), 0);
        assert!(IntersectionArray::from_fn(2, |_, _, _| 0).is_err());
    }

    #[test]
    fn same_flag_three_times() {
        let field = PrimeField::new(101).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let f = random_flag(&mut rng, field, 5);
        let a = array_from_flags(field, &f, &f, &f).unwrap();
        for (i, j, k) in cube(5) {
            assert_eq!(a.get(i, j, k), 5 - i.max(j).max(k) as i64);
        }
        assert_eq!(dim_y_four_term(&a), 0);
        assert_eq!(dim_y_first_version(&a), 0);
    }

    #[test]
    fn pairwise_term_counts_inversions() {
        // With Q the coordinate flag and V the flag of w, the first sum is inv(w).
        let field = PrimeField::new(7).unwrap();
        let id = Flag::coordinate(&Permutation::identity(4));
        for w in Permutation::all(4) {
            let a = array_from_flags(field, &id, &id, &Flag::coordinate(&w)).unwrap();
            assert_eq!(FourTerms::of(&a).qv, w.inversions() as i64, "{w}");
        }
    }

    #[test]
    fn random_arrays_satisfy_everything() {
        for seed in 0..60 {
            let d = 1 + (seed as usize % 6);
            for a in [array_from_flag_triple(d, 101, seed).unwrap(), structured_array(d, 101, seed).unwrap()] {
                assert!(a.difference_bounds_hold());
                assert!(correction_summands_are_bits(&a));
                assert_eq!(dim_y_first_version(&a), dim_y_four_term(&a));
                for (i, j, k) in cube(d) {
                    assert_eq!(a.telescoping_defect(i, j, k), 0);
                }
            }
        }
        assert_eq!(array_from_flag_triple(4, 101, 3).unwrap(), array_from_flag_triple(4, 101, 3).unwrap());
        assert!(array_from_flag_triple(3, 100, 0).is_err());
    }

    #[test]
    fn literal_second_term_breaks_the_identity() {
        // With Δ^iΔ^j evaluated at (i−1, j−1, k) instead of (i, j, k−1) the
        // cube identity fails on some valid array.
        let broken = (0..40).any(|seed| {
            let a = structured_array(4, 101, seed).unwrap();
            cube(4).filter(|&(i, j, _)| i >= 2 && j >= 2).any(|(i, j, k)| {
                let literal = a.dk(i, j, k) * a.didj(i - 1, j - 1, k);
                let used = a.dk(i, j, k) * a.didj(i, j, k - 1);
                a.telescoping_defect(i, j, k) - used + literal != 0
            })
        });
        assert!(broken);
    }

    #[test]
    fn almost_transverse_bound() {
        for seed in 0..40 {
            let d = 2 + (seed as usize % 4);
            let t = 1 + (seed as usize / 4) % (d - 1);
            let a = almost_transverse_array(d, t, 101, seed).unwrap();
            match check_almost_transverse_bound(&a, t) {
                AlmostTransverseReport::Checked { holds, terms, .. } => {
                    assert!(holds);
                    assert!(terms.correction >= 1);
                    assert_eq!(terms.pq, (d * (d - 1) / 2 - 1) as i64);
                }
                AlmostTransverseReport::Precondition { reason } => assert!(reason.contains("coherence"), "{reason}"),
            }
        }
        // d = 2: V^1 = P^1 = Q^1 breaks the coherence inequality; any other V is checked.
        let minimal: Vec<_> = (0..20)
            .map(|s| check_almost_transverse_bound(&almost_transverse_array(2, 1, 101, s).unwrap(), 1))
            .collect();
        assert!(minimal.iter().any(|r| matches!(r, AlmostTransverseReport::Checked { .. })));
        assert!(minimal.iter().all(|r| !matches!(r, AlmostTransverseReport::Checked { holds: false, .. })));
        assert!(matches!(
            check_almost_transverse_bound(&IntersectionArray::generic(3), 1),
            AlmostTransverseReport::Precondition { .. }
        ));
        assert!(almost_transverse_array(3, 0, 101, 0).is_err());
    }

    #[test]
    fn field_linear_algebra() {
        let f = PrimeField::new(5).unwrap();
        let u = vec![vec![1, 0, 0], vec![0, 1, 0]];
        let w = vec![vec![0, 1, 0], vec![0, 0, 1]];
        let i = f.intersect(&u, &w);
        assert_eq!(i.len(), 1);
        assert_eq!(f.rank(&[i[0].clone(), vec![0, 1, 0]]), 1);
        assert_eq!(f.rank(&[vec![1, 2], vec![2, 4]]), 1);
        assert!(PrimeField::new(1).is_err() && PrimeField::new(91).is_err());
    }
}
