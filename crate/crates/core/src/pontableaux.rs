//! Pontableau sequences, their labelings and statistics, the poset of strata
//! and the two routes to the Euler characteristic.
//!
//! A pontableau for data `(g, r, d, alpha, beta)` is a sequence of borders
//! `lambda^1, rho^1, ..., lambda^g, rho^g` with `lambda^1 = -alpha` and
//! `rho^g` the right border of `sigma`, such that `rho^n` contains
//! `lambda^{n+1}` and `rho^n` exceeds `lambda^n` by at most one box.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::posets::FinitePoset;
use crate::shapes::{BnData, Border, Cell};
use crate::tableaux::{self, Label, LabelSet, SetValuedTableau, SvtQuery};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PontError {
    #[error("the two routes disagree: tableaux give {tableaux}, pontableaux give {pontableaux}")]
    RouteMismatch { tableaux: i64, pontableaux: i64 },
    #[error("sequence has {got} borders, expected {expected}")]
    Length { expected: usize, got: usize },
    #[error("border {0} does not have r + 1 entries")]
    Rows(usize),
    #[error("rho^{0} does not contain lambda^{next}", next = .0 + 1)]
    NotNested(usize),
    #[error("rho^{0} grows by more than one inward corner")]
    TooMuchGrowth(usize),
    #[error("endpoints do not match the data")]
    Endpoints,
    #[error("labeling does not describe a pontableau: {0}")]
    Labeling(String),
}

/// One symbol of a labeling.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    /// `-n`: the box leaves between `rho^{n-1}` and `lambda^n`.
    LeftRemoval(u32),
    /// `n`: the box is in `rho^n` but not `lambda^n`.
    Augmentation(u32),
    /// `n-`: the box is in `lambda^n` but not `rho^n`.
    RightRemoval(u32),
}

impl Symbol {
    pub fn step(self) -> u32 {
        match self {
            Symbol::LeftRemoval(n) | Symbol::Augmentation(n) | Symbol::RightRemoval(n) => n,
        }
    }

    /// Chronological key: steps in order, the left removal of a step first.
    fn key(self) -> (u32, u8) {
        match self {
            Symbol::LeftRemoval(n) => (n, 0),
            Symbol::Augmentation(n) | Symbol::RightRemoval(n) => (n, 1),
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::LeftRemoval(n) => write!(f, "-{n}"),
            Symbol::Augmentation(n) => write!(f, "{n}"),
            Symbol::RightRemoval(n) => write!(f, "{n}-"),
        }
    }
}

impl std::str::FromStr for Symbol {
    type Err = PontError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || PontError::Labeling(format!("bad symbol {s:?}"));
        let num = |t: &str| t.parse::<u32>().ok().filter(|&n| n > 0).ok_or_else(bad);
        if let Some(rest) = s.strip_prefix('-') {
            Ok(Symbol::LeftRemoval(num(rest)?))
        } else if let Some(rest) = s.strip_suffix('-') {
            Ok(Symbol::RightRemoval(num(rest)?))
        } else {
            Ok(Symbol::Augmentation(num(s)?))
        }
    }
}

impl Serialize for Symbol {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Symbols written in each box, in chronological order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PontLabeling {
    boxes: BTreeMap<Cell, Vec<Symbol>>,
}

impl PontLabeling {
    pub fn from_boxes(entries: impl IntoIterator<Item = (Cell, Vec<Symbol>)>) -> Self {
        let mut boxes = BTreeMap::new();
        for (c, mut symbols) in entries {
            symbols.sort_by_key(|s| s.key());
            if !symbols.is_empty() {
                boxes.insert(c, symbols);
            }
        }
        PontLabeling { boxes }
    }

    /// Parses entries like `[(0, 0, "1"), (-2, 1, "-2,2")]`.
    pub fn parse(entries: &[(i64, i64, &str)]) -> Result<Self, PontError> {
        let mut boxes = Vec::new();
        for &(x, y, text) in entries {
            let symbols = text.split(',').map(|t| t.trim().parse()).collect::<Result<Vec<Symbol>, _>>()?;
            boxes.push((Cell::new(x, y), symbols));
        }
        Ok(Self::from_boxes(boxes))
    }

    pub fn get(&self, c: Cell) -> &[Symbol] {
        self.boxes.get(&c).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn boxes(&self) -> impl Iterator<Item = (Cell, &[Symbol])> + '_ {
        self.boxes.iter().map(|(&c, s)| (c, s.as_slice()))
    }

    pub fn symbols(&self) -> impl Iterator<Item = (Cell, Symbol)> + '_ {
        self.boxes.iter().flat_map(|(&c, s)| s.iter().map(move |&sym| (c, sym)))
    }

    fn count(&self, pred: impl Fn(Symbol) -> bool) -> usize {
        self.symbols().filter(|&(_, s)| pred(s)).count()
    }

    pub fn augmentations(&self) -> usize {
        self.count(|s| matches!(s, Symbol::Augmentation(_)))
    }

    pub fn left_removals(&self) -> usize {
        self.count(|s| matches!(s, Symbol::LeftRemoval(_)))
    }

    pub fn right_removals(&self) -> usize {
        self.count(|s| matches!(s, Symbol::RightRemoval(_)))
    }

    /// Whether some `-n` sits in two boxes sharing an edge.
    pub fn has_adjacent_left_removals(&self) -> bool {
        self.symbols().any(|(c, s)| {
            matches!(s, Symbol::LeftRemoval(_)) && (self.get(c.right()).contains(&s) || self.get(c.down()).contains(&s))
        })
    }

    /// Augmentations only: the underlying set-valued filling.
    pub fn underlying(&self) -> Augmentations {
        let mut out: Augmentations = BTreeMap::new();
        for (c, s) in self.symbols() {
            if let Symbol::Augmentation(n) = s {
                match out.get_mut(&c) {
                    Some(set) => set.insert(n),
                    None => {
                        out.insert(c, LabelSet::single(n));
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for PontLabeling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Some(min_x) = self.boxes.keys().map(|c| c.x).min() else {
            return write!(f, "(empty)");
        };
        let max_x = self.boxes.keys().map(|c| c.x).max().unwrap_or(min_x);
        let rows: BTreeSet<i64> = self.boxes.keys().map(|c| c.y).collect();
        let text = |c: Cell| self.get(c).iter().map(Symbol::to_string).collect::<Vec<_>>().join(",");
        let width = self.boxes.keys().map(|&c| text(c).len()).max().unwrap_or(1);
        let lines: Vec<String> = rows
            .iter()
            .map(|&y| {
                let cells: Vec<String> = (min_x..=max_x)
                    .map(|x| {
                        let c = Cell::new(x, y);
                        if self.boxes.contains_key(&c) {
                            format!("[{:^width$}]", text(c))
                        } else {
                            " ".repeat(width + 2)
                        }
                    })
                    .collect();
                cells.concat().trim_end().to_string()
            })
            .collect();
        write!(f, "{}", lines.join("\n"))
    }
}

impl Serialize for PontLabeling {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry<'a> {
            #[serde(rename = "box")]
            cell: Cell,
            symbols: &'a [Symbol],
        }
        s.collect_seq(self.boxes.iter().map(|(&cell, symbols)| Entry { cell, symbols }))
    }
}

/// Augmentation labels by box; boxes without augmentations are absent.
pub type Augmentations = BTreeMap<Cell, LabelSet>;

/// The borders `lambda^1, rho^1, ..., lambda^g, rho^g`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Pontableau {
    lambdas: Vec<Border>,
    rhos: Vec<Border>,
}

impl Pontableau {
    /// Checks both defining conditions and the endpoints.
    pub fn new(data: &BnData, lambdas: Vec<Border>, rhos: Vec<Border>) -> Result<Self, PontError> {
        let g = data.g.max(0) as usize;
        for seq in [&lambdas, &rhos] {
            if seq.len() != g {
                return Err(PontError::Length { expected: g, got: seq.len() });
            }
        }
        let rows = (data.r + 1) as usize;
        if let Some(i) = lambdas.iter().chain(&rhos).position(|b| b.rows() != rows) {
            return Err(PontError::Rows(i));
        }
        if g > 0 && (lambdas[0] != data.left_border() || rhos[g - 1] != data.right_border()) {
            return Err(PontError::Endpoints);
        }
        for n in 0..g {
            if n + 1 < g && !lambdas[n + 1].is_within(&rhos[n]) {
                return Err(PontError::NotNested(n + 1));
            }
            if growth(&lambdas[n], &rhos[n]) > 1 {
                return Err(PontError::TooMuchGrowth(n + 1));
            }
        }
        Ok(Pontableau { lambdas, rhos })
    }

    pub fn genus(&self) -> usize {
        self.lambdas.len()
    }

    /// `lambda^n`, 1-based.
    pub fn lambda(&self, n: usize) -> &Border {
        &self.lambdas[n - 1]
    }

    /// `rho^n`, 1-based.
    pub fn rho(&self, n: usize) -> &Border {
        &self.rhos[n - 1]
    }

    pub fn lambdas(&self) -> &[Border] {
        &self.lambdas
    }

    pub fn rhos(&self) -> &[Border] {
        &self.rhos
    }

    pub fn labeling(&self) -> PontLabeling {
        let mut boxes: BTreeMap<Cell, Vec<Symbol>> = BTreeMap::new();
        let mut put = |cells: BTreeSet<Cell>, s: Symbol| {
            for c in cells {
                boxes.entry(c).or_default().push(s);
            }
        };
        for n in 1..=self.genus() {
            let step = n as u32;
            if n > 1 {
                put(self.rho(n - 1).minus(self.lambda(n)), Symbol::LeftRemoval(step));
            }
            put(self.rho(n).minus(self.lambda(n)), Symbol::Augmentation(step));
            put(self.lambda(n).minus(self.rho(n)), Symbol::RightRemoval(step));
        }
        PontLabeling::from_boxes(boxes)
    }

    /// Rebuilds the sequence from `lambda^1` and a labeling.
    pub fn from_labeling(data: &BnData, labeling: &PontLabeling) -> Result<Self, PontError> {
        let g = data.g.max(0) as u32;
        let rows = (data.r + 1) as usize;
        let mut per_row: BTreeMap<(u32, u8, usize), i64> = BTreeMap::new();
        for (c, s) in labeling.symbols() {
            if s.step() == 0 || s.step() > g || c.y < 0 || c.y as usize >= rows {
                return Err(PontError::Labeling(format!("symbol {s} at {c} is out of range")));
            }
            let kind = match s {
                Symbol::LeftRemoval(_) => 0,
                Symbol::Augmentation(_) => 1,
                Symbol::RightRemoval(_) => 2,
            };
            *per_row.entry((s.step(), kind, c.y as usize)).or_default() += 1;
        }
        let count = |n: u32, kind: u8, y: usize| per_row.get(&(n, kind, y)).copied().unwrap_or(0);
        let border = |parts: Vec<i64>| Border::new(parts).map_err(|e| PontError::Labeling(e.to_string()));
        let (mut lambdas, mut rhos) = (Vec::new(), Vec::<Border>::new());
        let mut current = data.left_border();
        for n in 1..=g {
            if n > 1 {
                let prev = rhos.last().expect("rho^{n-1} exists").parts();
                current = border((0..rows).map(|y| prev[y] - count(n, 0, y)).collect())?;
            }
            let lam = current.parts();
            let rho = border((0..rows).map(|y| lam[y] + count(n, 1, y) - count(n, 2, y)).collect())?;
            lambdas.push(current.clone());
            rhos.push(rho);
        }
        let p = Pontableau::new(data, lambdas, rhos)?;
        if p.labeling() != *labeling {
            return Err(PontError::Labeling("symbols are not where the rebuilt sequence puts them".into()));
        }
        Ok(p)
    }

    /// Möbius value: zero when an identical left removal occupies two
    /// edge-adjacent boxes, else `(-1)^(left removals)`.
    pub fn mu(&self) -> i64 {
        self.statistics().mu
    }

    pub fn dim(&self) -> i64 {
        self.statistics().dim
    }

    /// 1 when every augmentation `1..g` occurs.
    pub fn chi(&self) -> i64 {
        let present = (1..=self.genus()).all(|n| growth(self.lambda(n), self.rho(n)) == 1);
        i64::from(present)
    }

    pub fn statistics(&self) -> Statistics {
        let labeling = self.labeling();
        let mu = match (labeling.has_adjacent_left_removals(), labeling.left_removals() % 2) {
            (true, _) => 0,
            (false, 0) => 1,
            (false, _) => -1,
        };
        let dim = self.genus() as i64 - labeling.augmentations() as i64 + labeling.right_removals() as i64;
        Statistics { mu, dim, chi: self.chi() }
    }

    pub fn underlying(&self) -> Augmentations {
        self.labeling().underlying()
    }

    pub fn ramification(&self, data: &BnData) -> RamificationTable {
        let r = data.r as usize;
        let (d, rr) = (data.d, data.r);
        let alpha =
            (1..=self.genus()).map(|n| self.lambda(n).parts().iter().map(|l| (n as i64 - 1) - l).collect()).collect();
        let beta = (1..=self.genus())
            .map(|n| (0..=r).map(|i| self.rho(n).parts()[r - i] - (n as i64 - d + rr)).collect())
            .collect();
        RamificationTable { alpha, beta }
    }

    /// `lambda^{n+1}` followed by `-rho^n` for `n < g`. Since `rho^n`
    /// contains `lambda^{n+1}` in any pontableau, the strata order is the
    /// componentwise order on these keys.
    pub fn order_key(&self) -> Vec<i64> {
        (1..self.genus())
            .flat_map(|n| {
                let lam = self.lambda(n + 1).parts().iter().copied();
                lam.chain(self.rho(n).parts().iter().map(|x| -x))
            })
            .collect()
    }

    /// `self <= other` in the strata order: `other` generizes `self`.
    pub fn specializes(&self, other: &Pontableau) -> bool {
        (1..self.genus()).all(|n| {
            self.lambda(n + 1).is_within(other.lambda(n + 1))
                && other.lambda(n + 1).is_within(other.rho(n))
                && other.rho(n).is_within(self.rho(n))
        })
    }
}

/// Boxes by which `rho` exceeds `lambda`.
fn growth(lambda: &Border, rho: &Border) -> i64 {
    lambda.parts().iter().zip(rho.parts()).map(|(l, r)| (r - l).max(0)).sum()
}

/// Boxes of `target` missing from `b`.
fn deficit(b: &[i64], target: &[i64]) -> i64 {
    b.iter().zip(target).map(|(x, t)| (t - x).max(0)).sum()
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Statistics {
    pub mu: i64,
    pub dim: i64,
    pub chi: i64,
}

/// `alpha^n_i = (n-1) - lambda^n_i` and `beta^n_i = rho^n_{r-i} - (n-d+r)`,
/// indexed `[n-1][i]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RamificationTable {
    pub alpha: Vec<Vec<i64>>,
    pub beta: Vec<Vec<i64>>,
}

impl RamificationTable {
    fn rows(&self) -> usize {
        self.alpha.first().map_or(0, Vec::len)
    }

    /// `alpha^n_i + beta^n_{r-i}` for 1-based `n`.
    fn pair_sum(&self, n: usize, i: usize) -> i64 {
        let r = self.rows() - 1;
        self.alpha[n - 1][i] + self.beta[n - 1][r - i]
    }

    /// Each step: every `alpha^n_i + beta^n_{r-i} <= d - r`, with equality
    /// for at most one `i`. This is the nonemptiness condition on strata.
    pub fn is_nonempty(&self, data: &BnData) -> bool {
        let bound = data.d - data.r;
        (1..=self.alpha.len()).all(|n| {
            let sums: Vec<i64> = (0..self.rows()).map(|i| self.pair_sum(n, i)).collect();
            sums.iter().all(|&s| s <= bound) && sums.iter().filter(|&&s| s == bound).count() <= 1
        })
    }

    /// `alpha^{n+1}_i + beta^n_{r-i} >= d - r`, with `alpha^{g+1}` taken
    /// complementary to the data's `beta`.
    pub fn is_compatible(&self, data: &BnData) -> bool {
        let g = self.alpha.len();
        let r = data.r as usize;
        let bound = data.d - data.r;
        (1..=g).all(|n| {
            (0..=r).all(|i| {
                let next = if n < g { self.alpha[n][i] } else { bound - data.beta[r - i] };
                next + self.beta[n - 1][r - i] >= bound
            })
        })
    }

    /// `rho - sum_n sum_i (beta^n_i + alpha^{n+1}_{r-i} - (d-r))` over `n < g`.
    pub fn dimension(&self, data: &BnData) -> i64 {
        let r = data.r as usize;
        let excess: i64 = (1..self.alpha.len())
            .flat_map(|n| (0..=r).map(move |i| self.beta[n - 1][i] + self.alpha[n][r - i] - (data.d - data.r)))
            .sum();
        data.rho() - excess
    }

    /// 1 when every step has some `i` with `alpha^n_i + beta^n_{r-i} = d - r`.
    pub fn euler_characteristic(&self, data: &BnData) -> i64 {
        let bound = data.d - data.r;
        let all = (1..=self.alpha.len()).all(|n| (0..self.rows()).any(|i| self.pair_sum(n, i) == bound));
        i64::from(all)
    }

    /// Whether `beta^n_i = d - r - alpha^{n+1}_{r-i}` for every `n < g`.
    pub fn is_complementary(&self, data: &BnData) -> bool {
        let r = data.r as usize;
        (1..self.alpha.len()).all(|n| (0..=r).all(|i| self.beta[n - 1][i] == data.d - data.r - self.alpha[n][r - i]))
    }
}

/// Visits every non-increasing tuple with `lo <= t <= hi` entrywise, at most
/// `max_deficit` boxes short of `target` and, when `cap` is given, at most
/// `cap.1` boxes beyond `cap.0`.
fn for_each_border(
    lo: &[i64],
    hi: &[i64],
    target: &[i64],
    max_deficit: i64,
    cap: Option<(&[i64], i64)>,
    visit: &mut dyn FnMut(&[i64]),
) {
    #[derive(Clone, Copy)]
    struct Bounds<'a> {
        lo: &'a [i64],
        hi: &'a [i64],
        target: &'a [i64],
        max_deficit: i64,
        cap: Option<(&'a [i64], i64)>,
    }
    fn go(i: usize, parts: &mut Vec<i64>, spent: (i64, i64), b: Bounds, visit: &mut dyn FnMut(&[i64])) {
        if i == b.lo.len() {
            visit(parts);
            return;
        }
        let top = parts.last().map_or(b.hi[i], |&p| p.min(b.hi[i]));
        for v in b.lo[i]..=top {
            let short = spent.0 + (b.target[i] - v).max(0);
            let over = spent.1 + b.cap.map_or(0, |(base, _)| (v - base[i]).max(0));
            if short > b.max_deficit || b.cap.is_some_and(|(_, m)| over > m) {
                continue;
            }
            parts.push(v);
            go(i + 1, parts, (short, over), b, visit);
            parts.pop();
        }
    }
    let bounds = Bounds { lo, hi, target, max_deficit, cap };
    go(0, &mut Vec::with_capacity(lo.len()), (0, 0), bounds, visit);
}

/// All pontableaux for the data, in depth-first order.
///
/// With `g = 0` there are no borders; the single empty sequence is taken to
/// exist exactly when `sigma` is empty.
pub fn enumerate_pontableaux(data: &BnData) -> Vec<Pontableau> {
    let g = data.g.max(0) as usize;
    let start = data.left_border();
    let target = data.right_border();
    let mut out = Vec::new();
    if g == 0 {
        if data.sigma().is_empty() {
            out.push(Pontableau { lambdas: Vec::new(), rhos: Vec::new() });
        }
        return out;
    }
    if deficit(start.parts(), target.parts()) > g as i64 {
        return out;
    }
    let mut lambdas = vec![start];
    let mut rhos = Vec::new();
    extend(1, g, target.parts(), &mut lambdas, &mut rhos, &mut out);
    out
}

/// Chooses `rho^n`, then `lambda^{n+1}`, keeping `target` reachable.
fn extend(
    n: usize,
    g: usize,
    target: &[i64],
    lambdas: &mut Vec<Border>,
    rhos: &mut Vec<Border>,
    out: &mut Vec<Pontableau>,
) {
    let lam = lambdas[n - 1].parts().to_vec();
    if n == g {
        if growth(&lambdas[n - 1], &Border::new(target.to_vec()).expect("valid target")) <= 1 {
            rhos.push(Border::new(target.to_vec()).expect("valid target"));
            out.push(Pontableau { lambdas: lambdas.clone(), rhos: rhos.clone() });
            rhos.pop();
        }
        return;
    }
    let left = (g - n) as i64;
    let lo: Vec<i64> = target.iter().map(|t| t - left).collect();
    let hi: Vec<i64> = lam.iter().map(|l| l + 1).collect();
    let mut rho_choices = Vec::new();
    for_each_border(&lo, &hi, target, left, Some((&lam, 1)), &mut |p| rho_choices.push(p.to_vec()));
    for rho in rho_choices {
        let mut lambda_choices = Vec::new();
        for_each_border(&lo, &rho, target, left, None, &mut |p| lambda_choices.push(p.to_vec()));
        rhos.push(Border::new(rho).expect("non-increasing by construction"));
        for next in lambda_choices {
            lambdas.push(Border::new(next).expect("non-increasing by construction"));
            extend(n + 1, g, target, lambdas, rhos, out);
            lambdas.pop();
        }
        rhos.pop();
    }
}

/// The pontableaux of a family with their poset of strata.
pub struct StrataPoset {
    pub data: BnData,
    pub nodes: Vec<Pontableau>,
    pub poset: FinitePoset,
}

impl StrataPoset {
    pub fn new(data: &BnData) -> Self {
        let nodes = enumerate_pontableaux(data);
        let keys: Vec<Vec<i64>> = nodes.iter().map(Pontableau::order_key).collect();
        let poset = FinitePoset::from_strict_order_unchecked(nodes.len(), |a, b| {
            a != b && keys[a].iter().zip(&keys[b]).all(|(x, y)| x <= y)
        });
        StrataPoset { data: data.clone(), nodes, poset }
    }

    pub fn statistics(&self) -> Vec<Statistics> {
        self.nodes.par_iter().map(Pontableau::statistics).collect()
    }

    /// Number of strata of each dimension.
    pub fn dimension_counts(&self) -> BTreeMap<i64, usize> {
        let mut counts = BTreeMap::new();
        for p in &self.nodes {
            *counts.entry(p.dim()).or_default() += 1;
        }
        counts
    }

    /// `sum mu(P) chi(P)` with `mu` from the labeling formula.
    pub fn euler_characteristic(&self) -> i64 {
        self.statistics().iter().map(|s| s.mu * s.chi).sum()
    }

    /// Indices where the labeling formula for `mu` differs from the
    /// recursive Möbius function of the poset.
    pub fn mobius_mismatches(&self) -> Vec<usize> {
        let recursive = self.poset.mobius();
        self.statistics().iter().zip(&recursive).enumerate().filter(|(_, (s, &m))| s.mu != m).map(|(i, _)| i).collect()
    }

    /// Graphviz output; strata sharing an underlying tableau are grouped.
    pub fn to_dot(&self, group_by_tableau: bool) -> String {
        let labels: Vec<String> = self
            .nodes
            .iter()
            .map(|p| {
                let s = p.statistics();
                format!("{}\ndim {} mu {} chi {}", p.labeling(), s.dim, s.mu, s.chi)
            })
            .collect();
        let groups: Option<Vec<usize>> = group_by_tableau.then(|| {
            let mut ids: BTreeMap<Augmentations, usize> = BTreeMap::new();
            self.nodes
                .iter()
                .map(|p| {
                    let next = ids.len();
                    *ids.entry(p.underlying()).or_insert(next)
                })
                .collect()
        });
        let d = &self.data;
        let name = format!("pontableaux g={} r={} d={} alpha={:?} beta={:?}", d.g, d.r, d.d, d.alpha, d.beta);
        self.poset.to_dot(&name, &labels, groups.as_deref())
    }

    /// JSON-ready description of every node and cover.
    pub fn report(&self) -> StrataReport {
        let nodes = self
            .nodes
            .iter()
            .enumerate()
            .map(|(id, p)| NodeReport {
                id,
                lambdas: p.lambdas.clone(),
                rhos: p.rhos.clone(),
                labeling: p.labeling(),
                statistics: p.statistics(),
            })
            .collect();
        StrataReport {
            data: self.data.clone(),
            nodes,
            covers: self.poset.covers().to_vec(),
            euler_characteristic: self.euler_characteristic(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct NodeReport {
    pub id: usize,
    pub lambdas: Vec<Border>,
    pub rhos: Vec<Border>,
    pub labeling: PontLabeling,
    pub statistics: Statistics,
}

#[derive(Clone, Debug, Serialize)]
pub struct StrataReport {
    pub data: BnData,
    pub nodes: Vec<NodeReport>,
    /// `(lower, upper)` node ids.
    pub covers: Vec<(usize, usize)>,
    pub euler_characteristic: i64,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Route {
    Tableaux,
    Pontableaux,
    Both,
}

/// `(-1)^(g - |sigma|)` times the number of standard set-valued tableaux.
pub fn euler_characteristic_by_tableaux(data: &BnData) -> i64 {
    let sigma = data.sigma();
    if data.g < 0 || data.rho_hat() < 0 {
        return 0;
    }
    let count = tableaux::count_standard_svt(&sigma, data.g as Label) as i64;
    if (data.g - sigma.len() as i64) % 2 == 0 {
        count
    } else {
        -count
    }
}

/// `sum mu(P) chi(P)` over all pontableaux, without building the poset.
pub fn euler_characteristic_by_pontableaux(data: &BnData) -> i64 {
    enumerate_pontableaux(data).par_iter().map(|p| p.mu() * p.chi()).sum()
}

pub fn euler_characteristic(data: &BnData, route: Route) -> Result<i64, PontError> {
    match route {
        Route::Tableaux => Ok(euler_characteristic_by_tableaux(data)),
        Route::Pontableaux => Ok(euler_characteristic_by_pontableaux(data)),
        Route::Both => {
            let (tableaux, pontableaux) =
                (euler_characteristic_by_tableaux(data), euler_characteristic_by_pontableaux(data));
            if tableaux == pontableaux {
                Ok(tableaux)
            } else {
                Err(PontError::RouteMismatch { tableaux, pontableaux })
            }
        }
    }
}

/// Whether `t` fills exactly the boxes of `sigma`, uses each label at most
/// once, and strictly increases to the right and downward.
pub fn is_almost_standard(t: &Augmentations, data: &BnData) -> bool {
    let sigma = data.sigma();
    if t.len() != sigma.len() || !t.keys().all(|&c| sigma.contains(c)) {
        return false;
    }
    let mut seen = BTreeSet::new();
    if !t.values().flat_map(|s| s.labels()).all(|&l| l >= 1 && l as i64 <= data.g && seen.insert(l)) {
        return false;
    }
    t.iter()
        .all(|(&c, s)| [c.right(), c.down()].iter().all(|n| t.get(n).is_none_or(|next| s.largest() < next.smallest())))
}

/// Value the per-tableau Möbius sum should take: `(-1)^(N - |sigma|)` for an
/// almost-standard `t` with `N` labels, else 0.
pub fn expected_sum_given_tableau(t: &Augmentations, data: &BnData) -> i64 {
    if !is_almost_standard(t, data) {
        return 0;
    }
    let n: usize = t.values().map(LabelSet::len).sum();
    if (n + data.sigma().len()).is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// `sum mu(P)` over the pontableaux whose augmentations are exactly `t`.
pub fn sum_given_tableau(data: &BnData, t: &Augmentations) -> i64 {
    enumerate_pontableaux(data).iter().filter(|p| p.underlying() == *t).map(Pontableau::mu).sum()
}

/// Per-tableau Möbius sums for every underlying tableau of the family,
/// together with every almost-standard tableau on `sigma` (whose sum may be
/// zero). Each entry is `(t, sum, expected)`.
pub fn sums_by_tableau(data: &BnData) -> Vec<(Augmentations, i64, i64)> {
    let mut sums: BTreeMap<Augmentations, i64> = BTreeMap::new();
    for p in enumerate_pontableaux(data) {
        *sums.entry(p.underlying()).or_default() += p.mu();
    }
    for t in almost_standard_tableaux(data) {
        sums.entry(t).or_default();
    }
    sums.into_iter()
        .map(|(t, s)| {
            let expected = expected_sum_given_tableau(&t, data);
            (t, s, expected)
        })
        .collect()
}

/// Every almost-standard tableau on `sigma` with labels in `1..=g`.
pub fn almost_standard_tableaux(data: &BnData) -> Vec<Augmentations> {
    let sigma = data.sigma();
    let g = data.g.max(0) as usize;
    if sigma.is_empty() {
        return vec![Augmentations::new()];
    }
    let mut out = Vec::new();
    for mask in 0u32..1 << g {
        if (mask.count_ones() as usize) < sigma.len() {
            continue;
        }
        let content: Vec<u32> = (0..g).map(|i| mask >> i & 1).collect();
        let query = SvtQuery::with_content(content, tableaux::ExcessFilter::Any);
        for t in tableaux::enumerate_ssvt(&sigma, &query) {
            out.push(t.entries().map(|(c, s)| (c, s.clone())).collect());
        }
    }
    out
}

/// Converts a set-valued tableau into the augmentation map it describes.
pub fn augmentations_of(t: &SetValuedTableau) -> Augmentations {
    t.entries().map(|(c, s)| (c, s.clone())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn data(g: i64, r: i64, d: i64, alpha: &[i64], beta: &[i64]) -> BnData {
        BnData::new(g, r, d, alpha.to_vec(), beta.to_vec()).unwrap()
    }

    /// Every sequence of borders in a generous box, filtered by the
    /// definition.
    fn brute_force(data: &BnData) -> BTreeSet<Pontableau> {
        let g = data.g as usize;
        let rows = (data.r + 1) as usize;
        let (start, target) = (data.left_border(), data.right_border());
        let lo = start.parts().iter().chain(target.parts()).min().unwrap() - g as i64;
        let hi = start.parts().iter().chain(target.parts()).max().unwrap() + g as i64;
        let mut borders = Vec::new();
        let mut stack = vec![Vec::new()];
        while let Some(p) = stack.pop() {
            if p.len() == rows {
                borders.push(Border::new(p).unwrap());
                continue;
            }
            let top = p.last().copied().unwrap_or(hi);
            for v in lo..=top {
                let mut q = p.clone();
                q.push(v);
                stack.push(q);
            }
        }
        // Free borders: rho^1..rho^{g-1} and lambda^2..lambda^g.
        let free = 2 * (g - 1);
        let mut out = BTreeSet::new();
        let mut idx = vec![0usize; free];
        loop {
            let mut lambdas = vec![start.clone()];
            let mut rhos = Vec::new();
            for n in 0..g - 1 {
                rhos.push(borders[idx[2 * n]].clone());
                lambdas.push(borders[idx[2 * n + 1]].clone());
            }
            rhos.push(target.clone());
            if let Ok(p) = Pontableau::new(data, lambdas, rhos) {
                out.insert(p);
            }
            let mut k = 0;
            while k < free {
                idx[k] += 1;
                if idx[k] < borders.len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
            if k == free {
                break;
            }
        }
        out
    }

    #[test]
    fn enumeration_matches_brute_force() {
        for d in [
            data(2, 1, 4, &[0, 0], &[0, 2]),
            data(2, 0, 1, &[0], &[0]),
            data(2, 1, 3, &[0, 0], &[0, 0]),
            data(3, 0, 2, &[0], &[0]),
            data(1, 1, 2, &[0, 1], &[0, 0]),
            data(2, 1, 3, &[0, 1], &[1, 1]),
        ] {
            let fast: BTreeSet<Pontableau> = enumerate_pontableaux(&d).into_iter().collect();
            assert_eq!(fast, brute_force(&d), "{d:?}");
        }
    }

    #[test]
    fn figure_families() {
        let first = StrataPoset::new(&data(2, 1, 4, &[0, 0], &[0, 2]));
        assert_eq!(first.nodes.len(), 12);
        assert_eq!(first.dimension_counts(), BTreeMap::from([(0, 2), (1, 5), (2, 5)]));
        assert_eq!(first.euler_characteristic(), -1);
        assert!(first.mobius_mismatches().is_empty());
        let second = StrataPoset::new(&data(4, 0, 2, &[0], &[0]));
        assert_eq!(second.nodes.len(), 28);
        assert_eq!(second.dimension_counts(), BTreeMap::from([(0, 6), (1, 12), (2, 10)]));
        assert_eq!(second.euler_characteristic(), 3);
        assert!(second.mobius_mismatches().is_empty());
    }

    #[test]
    fn worked_labeling() {
        let d = data(2, 1, 4, &[0, 0], &[0, 2]);
        let expected = PontLabeling::parse(&[(0, 0, "1"), (-1, 1, "1-"), (-2, 1, "-2,2")]).unwrap();
        let p = Pontableau::from_labeling(&d, &expected).unwrap();
        assert_eq!(p.labeling(), expected);
        assert_eq!(p.statistics(), Statistics { mu: -1, dim: 1, chi: 1 });
        let table = p.ramification(&d);
        assert_eq!(table.alpha, vec![vec![0, 0], vec![0, 3]]);
        assert_eq!(table.beta, vec![vec![1, 3], vec![0, 2]]);
        assert_eq!(expected.to_string(), "            [ 1  ]\n[-2,2][ 1- ]");
    }

    #[test]
    fn adjacency_is_by_edges_only() {
        let d = data(2, 1, 4, &[0, 0], &[0, 2]);
        let diagonal = PontLabeling::parse(&[(0, 0, "1,-2,2"), (-1, 1, "-2")]).unwrap();
        let p = Pontableau::from_labeling(&d, &diagonal).unwrap();
        assert_eq!(p.statistics(), Statistics { mu: 1, dim: 0, chi: 1 });
        let beside = PontLabeling::parse(&[(0, 0, "1"), (-1, 1, "-2"), (-2, 1, "-2,2")]).unwrap();
        let q = Pontableau::from_labeling(&d, &beside).unwrap();
        assert_eq!(q.mu(), 0);
    }

    #[test]
    fn labelings_round_trip() {
        for d in [data(2, 1, 4, &[0, 0], &[0, 2]), data(4, 0, 2, &[0], &[0]), data(3, 1, 3, &[0, 0], &[0, 1])] {
            for p in enumerate_pontableaux(&d) {
                assert_eq!(Pontableau::from_labeling(&d, &p.labeling()).unwrap(), p);
            }
        }
    }

    #[test]
    fn ramification_attributes() {
        for d in [data(2, 1, 4, &[0, 0], &[0, 2]), data(4, 0, 2, &[0], &[0]), data(3, 1, 3, &[0, 0], &[0, 1])] {
            let strata = StrataPoset::new(&d);
            for (i, p) in strata.nodes.iter().enumerate() {
                let t = p.ramification(&d);
                assert_eq!(t.alpha[0], d.alpha);
                assert!(t.is_nonempty(&d) && t.is_compatible(&d));
                assert_eq!(t.dimension(&d), p.dim());
                assert_eq!(p.dim(), d.rho() - p.labeling().left_removals() as i64);
                assert_eq!(t.euler_characteristic(&d), p.chi());
                if strata.poset.maximal().contains(&i) {
                    assert_eq!(p.labeling().left_removals(), 0);
                    assert!(t.is_complementary(&d));
                    assert_eq!(p.dim(), d.rho());
                }
            }
        }
    }

    #[test]
    fn key_order_is_the_definition() {
        for d in [data(2, 1, 4, &[0, 0], &[0, 2]), data(3, 1, 3, &[0, 0], &[0, 1])] {
            let strata = StrataPoset::new(&d);
            for (a, p) in strata.nodes.iter().enumerate() {
                for (b, q) in strata.nodes.iter().enumerate() {
                    assert_eq!(strata.poset.leq(a, b), p.specializes(q));
                }
            }
        }
    }

    #[test]
    fn empty_and_trivial_families() {
        assert!(enumerate_pontableaux(&data(1, 1, 1, &[0, 0], &[0, 0])).is_empty());
        let single = data(1, 0, 1, &[0], &[0]);
        let strata = StrataPoset::new(&single);
        assert_eq!(strata.nodes.len(), 1);
        assert_eq!(strata.poset.mobius(), vec![1]);
        assert_eq!(strata.statistics()[0].mu, 1);
        assert_eq!(enumerate_pontableaux(&data(0, 0, 0, &[0], &[0])).len(), 1);
        assert!(enumerate_pontableaux(&data(0, 0, -1, &[0], &[0])).is_empty());
    }

    #[test]
    fn routes_agree_on_figures() {
        for (d, chi) in [(data(2, 1, 4, &[0, 0], &[0, 2]), -1), (data(4, 0, 2, &[0], &[0]), 3)] {
            assert_eq!(euler_characteristic(&d, Route::Both).unwrap(), chi);
        }
    }

    #[test]
    fn sums_given_tableaux() {
        for d in [data(2, 1, 4, &[0, 0], &[0, 2]), data(4, 0, 2, &[0], &[0]), data(3, 1, 3, &[0, 0], &[0, 1])] {
            for (t, sum, expected) in sums_by_tableau(&d) {
                assert_eq!(sum, expected, "{d:?} {t:?}");
            }
        }
        let d = data(2, 1, 4, &[0, 0], &[0, 2]);
        let repeated: Augmentations = [(Cell::new(0, 0), LabelSet::new([1, 2]).unwrap())].into();
        assert_eq!(sum_given_tableau(&d, &repeated), expected_sum_given_tableau(&repeated, &d));
        let twice: Augmentations =
            [(Cell::new(0, 0), LabelSet::single(1)), (Cell::new(-1, 1), LabelSet::single(1))].into();
        assert_eq!(sum_given_tableau(&d, &twice), 0);
        assert_eq!(expected_sum_given_tableau(&twice, &d), 0);
    }

    #[test]
    fn symbols_parse_and_print() {
        for s in ["3", "-2", "1-"] {
            assert_eq!(s.parse::<Symbol>().unwrap().to_string(), s);
        }
        assert!("0".parse::<Symbol>().is_err());
        assert!("x".parse::<Symbol>().is_err());
    }
}
