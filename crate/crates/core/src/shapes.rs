//! Boxes, skew shapes, borders and the Brill-Noether shape `sigma`.
//!
//! Coordinates follow English convention: `x` grows to the right, `y` grows
//! downward, so row `y = 0` sits on top.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ShapeError {
    #[error("box set is not interval-closed: {lo} <= {hi} but {missing} is absent")]
    NotIntervalClosed { lo: Cell, hi: Cell, missing: Cell },
    #[error("border {0:?} is not non-increasing")]
    NotNonIncreasing(Vec<i64>),
    #[error("border has {got} entries, expected {expected}")]
    BorderLength { expected: usize, got: usize },
    #[error("{0} is not a corner of the border")]
    NotACorner(Cell),
    #[error("ramification sequence {name} has length {got}, expected r+1 = {expected}")]
    RamificationLength { name: &'static str, expected: usize, got: usize },
    #[error("ramification sequence {0} must be non-decreasing")]
    RamificationOrder(&'static str),
    #[error("ramification entries must be non-negative")]
    NegativeRamification,
    #[error("shape is not contained in the larger shape")]
    NotContained,
    #[error("a box of the larger shape lies in a column the smaller shape does not touch")]
    ForeignColumn,
}

/// A unit box of the plane.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cell {
    pub x: i64,
    pub y: i64,
}

impl Cell {
    pub const fn new(x: i64, y: i64) -> Self {
        Cell { x, y }
    }

    /// Product order: weakly up-left of `other`.
    pub fn precedes(self, other: Cell) -> bool {
        self.x <= other.x && self.y <= other.y
    }

    pub fn left(self) -> Cell {
        Cell::new(self.x - 1, self.y)
    }

    pub fn right(self) -> Cell {
        Cell::new(self.x + 1, self.y)
    }

    pub fn up(self) -> Cell {
        Cell::new(self.x, self.y - 1)
    }

    pub fn down(self) -> Cell {
        Cell::new(self.x, self.y + 1)
    }
}

/// Reading order: top row first, left to right.
impl Ord for Cell {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.y, self.x).cmp(&(other.y, other.x))
    }
}

impl PartialOrd for Cell {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

impl Serialize for Cell {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [self.x, self.y].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Cell {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let [x, y] = <[i64; 2]>::deserialize(d)?;
        Ok(Cell::new(x, y))
    }
}

/// A finite interval-closed set of boxes.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SkewShape {
    cells: BTreeSet<Cell>,
}

impl SkewShape {
    pub fn empty() -> Self {
        SkewShape::default()
    }

    pub fn new(cells: impl IntoIterator<Item = Cell>) -> Result<Self, ShapeError> {
        let shape = SkewShape { cells: cells.into_iter().collect() };
        shape.check_interval_closed()?;
        Ok(shape)
    }

    /// Builds the shape without the closure check. Callers guarantee it.
    pub(crate) fn from_set_unchecked(cells: BTreeSet<Cell>) -> Self {
        SkewShape { cells }
    }

    /// Parses rows given as half-open column ranges `[start, end)`, with row
    /// `i` of the slice placed at `y = i`.
    pub fn from_row_ranges(rows: &[(i64, i64)]) -> Result<Self, ShapeError> {
        let cells = rows.iter().enumerate().flat_map(|(y, &(a, b))| (a..b).map(move |x| Cell::new(x, y as i64)));
        SkewShape::new(cells)
    }

    fn check_interval_closed(&self) -> Result<(), ShapeError> {
        // Rows must be contiguous, and any two boxes in product order force
        // the whole rectangle between them.
        let rows = self.rows();
        for (&y, &(a, b)) in &rows {
            if (b - a) as usize != self.cells.range(Cell::new(i64::MIN, y)..=Cell::new(i64::MAX, y)).count() {
                let lo = Cell::new(a, y);
                let hi = Cell::new(b - 1, y);
                let missing = (a..b).map(|x| Cell::new(x, y)).find(|c| !self.cells.contains(c)).unwrap_or(lo);
                return Err(ShapeError::NotIntervalClosed { lo, hi, missing });
            }
        }
        for (&y1, &(a1, _)) in &rows {
            for (&y2, &(_, b2)) in rows.range(y1 + 1..) {
                // a box in row y1 at x <= some box in row y2 at x' forces
                // the rectangle; the extreme pair is (a1, y1) and (b2-1, y2).
                if a1 < b2 {
                    let lo = Cell::new(a1, y1);
                    let hi = Cell::new(b2 - 1, y2);
                    for y in y1..=y2 {
                        for x in a1..b2 {
                            let c = Cell::new(x, y);
                            if !self.cells.contains(&c) {
                                return Err(ShapeError::NotIntervalClosed { lo, hi, missing: c });
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn contains(&self, c: Cell) -> bool {
        self.cells.contains(&c)
    }

    /// Boxes in reading order.
    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        self.cells.iter().copied()
    }

    pub fn cell_set(&self) -> &BTreeSet<Cell> {
        &self.cells
    }

    /// Each occupied row mapped to its half-open column range.
    pub fn rows(&self) -> BTreeMap<i64, (i64, i64)> {
        let mut rows: BTreeMap<i64, (i64, i64)> = BTreeMap::new();
        for c in &self.cells {
            let e = rows.entry(c.y).or_insert((c.x, c.x + 1));
            e.0 = e.0.min(c.x);
            e.1 = e.1.max(c.x + 1);
        }
        rows
    }

    /// Each occupied column mapped to its inclusive `(top, bottom)` rows.
    pub fn columns(&self) -> BTreeMap<i64, (i64, i64)> {
        let mut cols: BTreeMap<i64, (i64, i64)> = BTreeMap::new();
        for c in &self.cells {
            let e = cols.entry(c.x).or_insert((c.y, c.y));
            e.0 = e.0.min(c.y);
            e.1 = e.1.max(c.y);
        }
        cols
    }

    pub fn top_row(&self) -> Option<i64> {
        self.cells.iter().next().map(|c| c.y)
    }

    pub fn bottom_row(&self) -> Option<i64> {
        self.cells.iter().next_back().map(|c| c.y)
    }

    /// Number of rows from the top occupied row to the bottom one, gaps
    /// included.
    pub fn row_span(&self) -> usize {
        match (self.top_row(), self.bottom_row()) {
            (Some(t), Some(b)) => (b - t + 1) as usize,
            _ => 0,
        }
    }

    /// True when some column strictly between the leftmost and rightmost
    /// occupied columns is empty.
    pub fn has_column_gap(&self) -> bool {
        let cols = self.columns();
        match (cols.keys().next(), cols.keys().next_back()) {
            (Some(&a), Some(&b)) => (b - a + 1) as usize != cols.len(),
            _ => false,
        }
    }

    pub fn is_subset(&self, other: &SkewShape) -> bool {
        self.cells.is_subset(&other.cells)
    }

    pub fn difference(&self, other: &SkewShape) -> BTreeSet<Cell> {
        self.cells.difference(&other.cells).copied().collect()
    }

    pub fn translate(&self, dx: i64, dy: i64) -> SkewShape {
        SkewShape { cells: self.cells.iter().map(|c| Cell::new(c.x + dx, c.y + dy)).collect() }
    }

    /// Translate so the minimum `x` and `y` are both zero.
    pub fn normalized(&self) -> SkewShape {
        let min_x = self.cells.iter().map(|c| c.x).min().unwrap_or(0);
        let min_y = self.top_row().unwrap_or(0);
        self.translate(-min_x, -min_y)
    }

    /// Adds a box, failing if closure breaks.
    pub fn with_cell(&self, c: Cell) -> Result<SkewShape, ShapeError> {
        let mut cells = self.cells.clone();
        cells.insert(c);
        SkewShape::new(cells)
    }

    /// Rows rendered with `#` for boxes and `.` for holes, from the leftmost
    /// occupied column.
    pub fn diagram(&self) -> String {
        if self.is_empty() {
            return String::from("(empty)\n");
        }
        let min_x = self.cells.iter().map(|c| c.x).min().unwrap();
        let max_x = self.cells.iter().map(|c| c.x).max().unwrap();
        let (top, bottom) = (self.top_row().unwrap(), self.bottom_row().unwrap());
        let mut out = String::new();
        for y in top..=bottom {
            for x in min_x..=max_x {
                out.push(if self.contains(Cell::new(x, y)) { '#' } else { '.' });
            }
            out.push('\n');
        }
        out
    }
}

impl Serialize for SkewShape {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.cells.iter())
    }
}

impl<'de> Deserialize<'de> for SkewShape {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let cells = Vec::<Cell>::deserialize(d)?;
        SkewShape::new(cells).map_err(serde::de::Error::custom)
    }
}

/// A non-increasing tuple `(l_0, ..., l_r)` standing for the infinite region
/// `{(x, y) : 0 <= y <= r, x < l_y}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Border(Vec<i64>);

impl<'de> Deserialize<'de> for Border {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Border::new(Vec::<i64>::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

impl Border {
    pub fn new(parts: Vec<i64>) -> Result<Self, ShapeError> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(ShapeError::NotNonIncreasing(parts));
        }
        Ok(Border(parts))
    }

    pub fn parts(&self) -> &[i64] {
        &self.0
    }

    /// Number of rows, `r + 1`.
    pub fn rows(&self) -> usize {
        self.0.len()
    }

    pub fn contains(&self, c: Cell) -> bool {
        c.y >= 0 && (c.y as usize) < self.0.len() && c.x < self.0[c.y as usize]
    }

    /// Row-wise containment of the regions.
    pub fn is_within(&self, other: &Border) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Minimal boxes outside the region.
    pub fn inward_corners(&self) -> Vec<Cell> {
        (0..self.0.len())
            .filter(|&y| y == 0 || self.0[y] < self.0[y - 1])
            .map(|y| Cell::new(self.0[y], y as i64))
            .collect()
    }

    /// Maximal boxes inside the region.
    pub fn outward_corners(&self) -> Vec<Cell> {
        let last = self.0.len().saturating_sub(1);
        (0..self.0.len())
            .filter(|&y| y == last || self.0[y + 1] < self.0[y])
            .map(|y| Cell::new(self.0[y] - 1, y as i64))
            .collect()
    }

    pub fn add_corner(&self, c: Cell) -> Result<Border, ShapeError> {
        if !self.inward_corners().contains(&c) {
            return Err(ShapeError::NotACorner(c));
        }
        let mut parts = self.0.clone();
        parts[c.y as usize] += 1;
        Ok(Border(parts))
    }

    pub fn remove_corner(&self, c: Cell) -> Result<Border, ShapeError> {
        if !self.outward_corners().contains(&c) {
            return Err(ShapeError::NotACorner(c));
        }
        let mut parts = self.0.clone();
        parts[c.y as usize] -= 1;
        Ok(Border(parts))
    }

    /// The boxes of `outer` not in `self`: `{self_y <= x < outer_y}`.
    pub fn skew_from(&self, outer: &Border) -> Result<SkewShape, ShapeError> {
        if self.0.len() != outer.0.len() {
            return Err(ShapeError::BorderLength { expected: outer.0.len(), got: self.0.len() });
        }
        let cells = self
            .0
            .iter()
            .zip(&outer.0)
            .enumerate()
            .flat_map(|(y, (&a, &b))| (a..b).map(move |x| Cell::new(x, y as i64)));
        SkewShape::new(cells)
    }

    /// Boxes in `self` but not in `other`, as a plain set.
    pub fn minus(&self, other: &Border) -> BTreeSet<Cell> {
        self.0
            .iter()
            .zip(&other.0)
            .enumerate()
            .flat_map(|(y, (&a, &b))| (b..a).map(move |x| Cell::new(x, y as i64)))
            .collect()
    }
}

/// Skew shape between an inner and an outer border.
pub fn skew_between(outer: &Border, inner: &Border) -> Result<SkewShape, ShapeError> {
    inner.skew_from(outer)
}

/// Genus, rank, degree and the two vanishing sequences.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BnData {
    pub g: i64,
    pub r: i64,
    pub d: i64,
    pub alpha: Vec<i64>,
    pub beta: Vec<i64>,
}

impl BnData {
    pub fn new(g: i64, r: i64, d: i64, alpha: Vec<i64>, beta: Vec<i64>) -> Result<Self, ShapeError> {
        let data = BnData { g, r, d, alpha, beta };
        data.validate()?;
        Ok(data)
    }

    /// Zero ramification on both sides.
    pub fn unramified(g: i64, r: i64, d: i64) -> Self {
        let n = (r + 1) as usize;
        BnData { g, r, d, alpha: vec![0; n], beta: vec![0; n] }
    }

    pub fn validate(&self) -> Result<(), ShapeError> {
        let n = (self.r + 1).max(0) as usize;
        for (name, seq) in [("alpha", &self.alpha), ("beta", &self.beta)] {
            if seq.len() != n {
                return Err(ShapeError::RamificationLength { name, expected: n, got: seq.len() });
            }
            if seq.windows(2).any(|w| w[0] > w[1]) {
                return Err(ShapeError::RamificationOrder(name));
            }
            if seq.iter().any(|&a| a < 0) {
                return Err(ShapeError::NegativeRamification);
            }
        }
        Ok(())
    }

    /// `g - d + r`, the width of the unramified rectangle.
    pub fn width(&self) -> i64 {
        self.g - self.d + self.r
    }

    /// Left border `-alpha`.
    pub fn left_border(&self) -> Border {
        Border(self.alpha.iter().map(|a| -a).collect())
    }

    /// Right border, row `y` ending at `g - d + r + beta_{r-y}`.
    pub fn right_border(&self) -> Border {
        let r = self.r as usize;
        Border((0..=r).map(|y| self.width() + self.beta[r - y]).collect())
    }

    pub fn sigma(&self) -> SkewShape {
        let (left, right) = (self.left_border(), self.right_border());
        let cells = (0..=self.r as usize).flat_map(|y| (left.0[y]..right.0[y]).map(move |x| Cell::new(x, y as i64)));
        SkewShape::new(cells).expect("the region between two borders is interval-closed")
    }

    /// Expected dimension `g - (r+1)(g-d+r) - |alpha| - |beta|`.
    pub fn rho(&self) -> i64 {
        self.g - (self.r + 1) * self.width() - self.alpha.iter().sum::<i64>() - self.beta.iter().sum::<i64>()
    }

    /// Adjusted dimension `g - |sigma|`; at most `rho`, equal when the
    /// rectangle width is non-negative.
    pub fn rho_hat(&self) -> i64 {
        self.g - self.sigma().len() as i64
    }

    /// Nonemptiness criterion for a general twice-pointed curve.
    pub fn is_nonempty(&self) -> bool {
        self.rho_hat() >= 0
    }

    /// Whether, on an elliptic curve, the map to the Picard group is onto:
    /// every `alpha_y + beta_{r-y}` falls short of `d - r`.
    pub fn elliptic_map_surjective(&self) -> bool {
        let r = self.r as usize;
        (0..=r).all(|y| self.alpha[y] + self.beta[r - y] < self.d - self.r)
    }
}

/// Whether `big` contains `small` and every box of `big` shares a column
/// with a box of `small`.
pub fn contains_same_columns(big: &SkewShape, small: &SkewShape) -> bool {
    if !small.is_subset(big) {
        return false;
    }
    let cols = small.columns();
    big.cells().all(|c| cols.contains_key(&c.x))
}

/// Splits `big \ small` into the boxes above `small` in their column and
/// those below.
pub fn above_below_split(big: &SkewShape, small: &SkewShape) -> Result<(BTreeSet<Cell>, BTreeSet<Cell>), ShapeError> {
    if !small.is_subset(big) {
        return Err(ShapeError::NotContained);
    }
    let cols = small.columns();
    let mut above = BTreeSet::new();
    let mut below = BTreeSet::new();
    for c in big.difference(small) {
        let (top, _) = *cols.get(&c.x).ok_or(ShapeError::ForeignColumn)?;
        if c.y < top {
            above.insert(c);
        } else {
            below.insert(c);
        }
    }
    Ok((above, below))
}

/// Every skew shape, up to translation, with at most `max_cells` boxes that
/// fits in a `width x height` grid. Shapes come out normalized (minimum
/// coordinates zero), sorted, and include the empty shape.
pub fn shape_universe(max_cells: usize, width: i64, height: i64) -> Vec<SkewShape> {
    let grid: Vec<Cell> = (0..height).flat_map(|y| (0..width).map(move |x| Cell::new(x, y))).collect();
    let mut found = BTreeSet::new();
    let mut chosen = Vec::new();
    fn walk(grid: &[Cell], start: usize, max_cells: usize, chosen: &mut Vec<Cell>, found: &mut BTreeSet<SkewShape>) {
        if let Ok(s) = SkewShape::new(chosen.iter().copied()) {
            found.insert(s.normalized());
        }
        if chosen.len() == max_cells {
            return;
        }
        for i in start..grid.len() {
            chosen.push(grid[i]);
            walk(grid, i + 1, max_cells, chosen, found);
            chosen.pop();
        }
    }
    walk(&grid, 0, max_cells, &mut chosen, &mut found);
    found.into_iter().collect()
}

/// Which side of a shape a column extension may grow on.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Growth {
    Up,
    Down,
    Both,
}

/// Shapes obtained from `base` by adding up to `extra` boxes above or below
/// it inside its own columns, keeping interval-closure. Includes `base`.
pub fn column_extensions(base: &SkewShape, extra: usize) -> Vec<SkewShape> {
    column_extensions_growing(base, extra, Growth::Both)
}

/// As [`column_extensions`], restricted to one side when asked.
pub fn column_extensions_growing(base: &SkewShape, extra: usize, growth: Growth) -> Vec<SkewShape> {
    let col_list: Vec<(i64, (i64, i64))> = base.columns().into_iter().collect();
    let (may_up, may_down) = match growth {
        Growth::Up => (true, false),
        Growth::Down => (false, true),
        Growth::Both => (true, true),
    };
    let mut out = Vec::new();
    let mut acc = Vec::new();
    fn rec(
        base: &SkewShape,
        cols: &[(i64, (i64, i64))],
        idx: usize,
        budget: usize,
        dirs: (bool, bool),
        acc: &mut Vec<Cell>,
        out: &mut Vec<SkewShape>,
    ) {
        if idx == cols.len() {
            let mut cells = base.cell_set().clone();
            cells.extend(acc.iter().copied());
            if let Ok(s) = SkewShape::new(cells) {
                out.push(s);
            }
            return;
        }
        let (x, (top, bottom)) = cols[idx];
        let max_up = if dirs.0 { budget } else { 0 };
        for up in 0..=max_up {
            let max_down = if dirs.1 { budget - up } else { 0 };
            for down in 0..=max_down {
                let before = acc.len();
                acc.extend((1..=up as i64).map(|k| Cell::new(x, top - k)));
                acc.extend((1..=down as i64).map(|k| Cell::new(x, bottom + k)));
                rec(base, cols, idx + 1, budget - up - down, dirs, acc, out);
                acc.truncate(before);
            }
        }
    }
    rec(base, &col_list, 0, extra, (may_up, may_down), &mut acc, &mut out);
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cells(v: &[(i64, i64)]) -> Vec<Cell> {
        v.iter().map(|&(x, y)| Cell::new(x, y)).collect()
    }

    #[test]
    fn figure_one_sigma_has_seventeen_boxes() {
        let data = BnData::new(4, 2, 2, vec![0, 1, 2], vec![0, 1, 1]).unwrap();
        assert_eq!(data.width(), 4);
        let s = data.sigma();
        assert_eq!(s.len(), 17);
        assert_eq!(s.rows()[&0], (0, 5));
        assert_eq!(s.rows()[&1], (-1, 5));
        assert_eq!(s.rows()[&2], (-2, 4));
    }

    #[test]
    fn small_sigmas() {
        let a = BnData::new(2, 1, 4, vec![0, 0], vec![0, 2]).unwrap();
        assert_eq!(a.sigma(), SkewShape::new(cells(&[(0, 0)])).unwrap());
        let b = BnData::new(4, 0, 2, vec![0], vec![0]).unwrap();
        assert_eq!(b.sigma(), SkewShape::new(cells(&[(0, 0), (1, 0)])).unwrap());
        assert_eq!(b.rho(), 2);
        assert_eq!(b.rho_hat(), 2);
    }

    #[test]
    fn rho_vs_rho_hat() {
        // negative width: rho exceeds rho_hat
        let a = BnData::new(2, 1, 4, vec![0, 0], vec![0, 2]).unwrap();
        assert_eq!(a.rho(), 2);
        assert_eq!(a.rho_hat(), 1);
        for g in 0..6 {
            for d in 0..7 {
                for r in 0..3 {
                    let data = BnData::unramified(g, r, d);
                    assert!(data.rho() <= data.rho_hat() || data.width() < 0);
                    if data.width() >= 0 {
                        assert_eq!(data.rho(), data.rho_hat());
                    } else {
                        assert!(data.rho() >= data.rho_hat());
                    }
                }
            }
        }
    }

    #[test]
    fn interval_closure() {
        assert!(SkewShape::new(cells(&[(0, 0), (2, 0)])).is_err());
        assert!(SkewShape::new(cells(&[(0, 0), (1, 1)])).is_err());
        assert!(SkewShape::new(cells(&[(1, 0), (0, 1)])).is_ok());
        assert!(SkewShape::new(cells(&[(1, 0), (0, 2)])).is_ok());
        assert!(SkewShape::new(cells(&[(1, 0), (1, 2)])).is_err());
        assert!(SkewShape::new(Vec::new()).is_ok());
    }

    #[test]
    fn closure_agrees_with_brute_force() {
        // every subset of a 3x3 grid
        let grid: Vec<Cell> = (0..3).flat_map(|y| (0..3).map(move |x| Cell::new(x, y))).collect();
        for mask in 0u32..(1 << 9) {
            let set: BTreeSet<Cell> = (0..9).filter(|i| mask >> i & 1 == 1).map(|i| grid[i]).collect();
            let brute = set.iter().all(|&a| {
                set.iter().all(|&b| {
                    !a.precedes(b) || (a.x..=b.x).all(|x| (a.y..=b.y).all(|y| set.contains(&Cell::new(x, y))))
                })
            });
            assert_eq!(SkewShape::new(set.clone()).is_ok(), brute, "{set:?}");
        }
    }

    #[test]
    fn corners() {
        let b = Border::new(vec![3, 1]).unwrap();
        assert_eq!(b.inward_corners(), cells(&[(3, 0), (1, 1)]));
        assert_eq!(b.outward_corners(), cells(&[(2, 0), (0, 1)]));
        assert_eq!(b.add_corner(Cell::new(1, 1)).unwrap().parts(), &[3, 2]);
        assert_eq!(b.remove_corner(Cell::new(2, 0)).unwrap().parts(), &[2, 1]);
        assert!(b.add_corner(Cell::new(2, 1)).is_err());
        assert!(Border::new(vec![1, 3]).is_err());
        let flat = Border::new(vec![2, 2]).unwrap();
        assert_eq!(flat.inward_corners(), cells(&[(2, 0)]));
        assert_eq!(flat.outward_corners(), cells(&[(1, 1)]));
    }

    #[test]
    fn skew_between_borders() {
        let outer = Border::new(vec![3, 2]).unwrap();
        let inner = Border::new(vec![1, 0]).unwrap();
        let s = skew_between(&outer, &inner).unwrap();
        assert_eq!(s.len(), 4);
        assert!(!s.contains(Cell::new(0, 0)));
    }

    #[test]
    fn column_split() {
        let sigma = SkewShape::new(cells(&[(1, 1), (0, 2), (1, 2)])).unwrap();
        let mu = SkewShape::new(cells(&[(1, 0), (1, 1), (0, 2), (1, 2), (0, 3)])).unwrap();
        assert!(contains_same_columns(&mu, &sigma));
        let (a, b) = above_below_split(&mu, &sigma).unwrap();
        assert_eq!(a.into_iter().collect::<Vec<_>>(), cells(&[(1, 0)]));
        assert_eq!(b.into_iter().collect::<Vec<_>>(), cells(&[(0, 3)]));
        let stray = SkewShape::new(cells(&[(1, 1), (2, 1), (0, 2), (1, 2)])).unwrap();
        assert!(!contains_same_columns(&stray, &sigma));
        assert_eq!(above_below_split(&stray, &sigma), Err(ShapeError::ForeignColumn));
        assert_eq!(above_below_split(&sigma, &mu), Err(ShapeError::NotContained));
    }

    #[test]
    fn universe_counts() {
        let u = shape_universe(2, 2, 2);
        // empty, one box, horizontal pair, vertical pair, diagonal pair
        assert_eq!(u.len(), 5);
        let u3 = shape_universe(3, 3, 3);
        assert!(u3.iter().all(|s| s.len() <= 3 && s.normalized() == *s));
    }

    #[test]
    fn extensions_stay_in_columns() {
        let sigma = SkewShape::new(cells(&[(0, 0), (1, 0)])).unwrap();
        let ext = column_extensions(&sigma, 2);
        assert!(ext.iter().all(|m| contains_same_columns(m, &sigma)));
        assert!(ext.contains(&sigma));
        // (0,1) alone below and (1,1) alone below are both fine; so is the pair
        assert!(ext.iter().any(|m| m.len() == 4 && m.contains(Cell::new(0, 1)) && m.contains(Cell::new(1, 1))));
        // a box over the right column is fine, over the left one it is not
        assert!(ext.iter().any(|m| m.len() == 3 && m.contains(Cell::new(1, -1))));
        assert!(!ext.iter().any(|m| m.len() == 3 && m.contains(Cell::new(0, -1))));
    }

    #[test]
    fn json_round_trip() {
        let s = SkewShape::new(cells(&[(1, 0), (0, 1)])).unwrap();
        let j = serde_json::to_string(&s).unwrap();
        assert_eq!(j, "[[1,0],[0,1]]");
        assert_eq!(serde_json::from_str::<SkewShape>(&j).unwrap(), s);
        assert!(serde_json::from_str::<SkewShape>("[[0,0],[2,0]]").is_err());
        let b: Border = serde_json::from_str("[3,1]").unwrap();
        assert_eq!(b.parts(), &[3, 1]);
        assert!(serde_json::from_str::<Border>("[1,3]").is_err());
        let data = BnData::new(4, 2, 2, vec![0, 1, 2], vec![0, 1, 1]).unwrap();
        let j = serde_json::to_string(&data).unwrap();
        assert_eq!(j, r#"{"g":4,"r":2,"d":2,"alpha":[0,1,2],"beta":[0,1,1]}"#);
    }

    #[test]
    fn elliptic_surjectivity_matches_rho_hat_one() {
        for d in 0..7 {
            for r in 0..3i64 {
                let n = (r + 1) as usize;
                for a in 0..3i64 {
                    for b in 0..3i64 {
                        let mut alpha = vec![0; n];
                        alpha[n - 1] = a;
                        let mut beta = vec![0; n];
                        beta[n - 1] = b;
                        let data = BnData::new(1, r, d, alpha, beta).unwrap();
                        assert_eq!(data.elliptic_map_surjective(), data.rho_hat() == 1, "{data:?}");
                    }
                }
            }
        }
    }
}
