//! Set-valued and ordinary tableaux on skew shapes, with backtracking
//! enumerators.
//!
//! Rows are numbered from 1 starting at a chosen top row (see [`RowFrame`]);
//! excess vectors and the row-bounded fillings use that numbering.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::shapes::{Cell, ShapeError, SkewShape};

pub type Label = u32;

/// Enumerators pack label sets into a `u64`; label 64 is the ceiling.
pub const MAX_LABEL: Label = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TableauError {
    #[error("box {0} carries an empty label set")]
    EmptyLabelSet(Cell),
    #[error("label 0 is not allowed; labels are positive")]
    ZeroLabel,
    #[error("box {0} is labelled but not in the shape")]
    StrayBox(Cell),
    #[error("box {0} of the shape has no label")]
    MissingBox(Cell),
    #[error("label {0} exceeds the supported maximum {MAX_LABEL}")]
    LabelTooLarge(Label),
    #[error(transparent)]
    Shape(#[from] ShapeError),
}

/// Numbering of rows: the row at `y = top` is row 1.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct RowFrame {
    pub top: i64,
}

impl RowFrame {
    pub fn new(top: i64) -> Self {
        RowFrame { top }
    }

    /// Frame whose row 1 is the top row of `shape` (row 1 at `y = 0` when
    /// the shape is empty).
    pub fn of(shape: &SkewShape) -> Self {
        RowFrame { top: shape.top_row().unwrap_or(0) }
    }

    pub fn index(&self, y: i64) -> i64 {
        y - self.top + 1
    }

    pub fn y_of(&self, index: i64) -> i64 {
        index + self.top - 1
    }
}

/// A nonempty set of positive labels, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LabelSet(Vec<Label>);

impl LabelSet {
    pub fn new(labels: impl IntoIterator<Item = Label>) -> Option<Self> {
        let set: BTreeSet<Label> = labels.into_iter().collect();
        if set.is_empty() || set.contains(&0) {
            None
        } else {
            Some(LabelSet(set.into_iter().collect()))
        }
    }

    pub fn single(label: Label) -> Self {
        assert!(label > 0, "labels are positive");
        LabelSet(vec![label])
    }

    pub(crate) fn from_mask(mask: u64) -> Self {
        LabelSet((0..64).filter(|b| mask >> b & 1 == 1).map(|b| b as Label + 1).collect())
    }

    pub fn smallest(&self) -> Label {
        self.0[0]
    }

    pub fn largest(&self) -> Label {
        *self.0.last().unwrap()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn labels(&self) -> &[Label] {
        &self.0
    }

    pub fn contains(&self, l: Label) -> bool {
        self.0.binary_search(&l).is_ok()
    }

    pub fn insert(&mut self, l: Label) {
        if let Err(pos) = self.0.binary_search(&l) {
            self.0.insert(pos, l);
        }
    }

    /// Removes and returns the largest label, unless it is the only one.
    pub fn pop_max(&mut self) -> Option<Label> {
        if self.0.len() > 1 {
            self.0.pop()
        } else {
            None
        }
    }
}

impl fmt::Display for LabelSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|l| l.to_string()).collect();
        if parts.len() == 1 {
            write!(f, "{}", parts[0])
        } else {
            write!(f, "{{{}}}", parts.join(","))
        }
    }
}

/// A filling of a skew shape by nonempty label sets.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetValuedTableau {
    shape: SkewShape,
    labels: BTreeMap<Cell, LabelSet>,
}

impl SetValuedTableau {
    pub fn new(shape: SkewShape, labels: BTreeMap<Cell, LabelSet>) -> Result<Self, TableauError> {
        for c in labels.keys() {
            if !shape.contains(*c) {
                return Err(TableauError::StrayBox(*c));
            }
        }
        for c in shape.cells() {
            if !labels.contains_key(&c) {
                return Err(TableauError::MissingBox(c));
            }
        }
        Ok(SetValuedTableau { shape, labels })
    }

    /// Builds a tableau row by row: row `i` (from `y = 0`) starts at column
    /// `starts[i].0` and holds the given label lists.
    pub fn from_rows(rows: &[(i64, Vec<Vec<Label>>)]) -> Result<Self, TableauError> {
        let mut labels = BTreeMap::new();
        for (y, (start, sets)) in rows.iter().enumerate() {
            for (k, set) in sets.iter().enumerate() {
                let cell = Cell::new(start + k as i64, y as i64);
                let ls = LabelSet::new(set.iter().copied()).ok_or(if set.contains(&0) {
                    TableauError::ZeroLabel
                } else {
                    TableauError::EmptyLabelSet(cell)
                })?;
                labels.insert(cell, ls);
            }
        }
        let shape = SkewShape::new(labels.keys().copied())?;
        SetValuedTableau::new(shape, labels)
    }

    pub(crate) fn from_masks(shape: &SkewShape, masks: &[u64]) -> Self {
        let labels = shape.cells().zip(masks).map(|(c, &m)| (c, LabelSet::from_mask(m))).collect();
        SetValuedTableau { shape: shape.clone(), labels }
    }

    pub fn shape(&self) -> &SkewShape {
        &self.shape
    }

    pub fn get(&self, c: Cell) -> Option<&LabelSet> {
        self.labels.get(&c)
    }

    pub fn entries(&self) -> impl Iterator<Item = (Cell, &LabelSet)> + '_ {
        self.labels.iter().map(|(c, s)| (*c, s))
    }

    /// Total number of labels.
    pub fn size(&self) -> usize {
        self.labels.values().map(LabelSet::len).sum()
    }

    pub fn max_label(&self) -> Label {
        self.labels.values().map(LabelSet::largest).max().unwrap_or(0)
    }

    /// Rows weakly increase, columns strictly increase.
    pub fn is_semistandard(&self) -> bool {
        self.labels.iter().all(|(c, s)| {
            let row_ok = self.labels.get(&c.right()).is_none_or(|t| s.largest() <= t.smallest());
            let col_ok = self.labels.get(&c.down()).is_none_or(|t| s.largest() < t.smallest());
            row_ok && col_ok
        })
    }

    /// Semistandard, pairwise disjoint, and the labels are exactly `1..=n`.
    pub fn is_standard(&self, n: Label) -> bool {
        if !self.is_semistandard() {
            return false;
        }
        let mut seen = BTreeSet::new();
        for s in self.labels.values() {
            for &l in s.labels() {
                if !seen.insert(l) {
                    return false;
                }
            }
        }
        seen.len() == n as usize && seen.iter().copied().eq(1..=n)
    }

    /// Multiplicity of each label `1..=max_label`.
    pub fn content(&self) -> Vec<u32> {
        let mut c = vec![0u32; self.max_label() as usize];
        for s in self.labels.values() {
            for &l in s.labels() {
                c[(l - 1) as usize] += 1;
            }
        }
        c
    }

    /// Labels minus boxes in each row, for rows `1..=rows` of `frame`.
    pub fn excess(&self, frame: RowFrame, rows: usize) -> Vec<u32> {
        let mut e = vec![0u32; rows];
        for (c, s) in &self.labels {
            let i = frame.index(c.y);
            if i >= 1 && (i as usize) <= rows {
                e[(i - 1) as usize] += (s.len() - 1) as u32;
            }
        }
        e
    }

    /// Excess with `frame` and row count taken from the tableau's own shape.
    pub fn own_excess(&self) -> Vec<u32> {
        self.excess(RowFrame::of(&self.shape), self.shape.row_span())
    }

    /// Whether every box holds exactly one label.
    pub fn is_single_valued(&self) -> bool {
        self.labels.values().all(|s| s.len() == 1)
    }

    pub fn to_tableau(&self) -> Option<Tableau> {
        if !self.is_single_valued() {
            return None;
        }
        Some(Tableau {
            shape: self.shape.clone(),
            labels: self.labels.iter().map(|(c, s)| (*c, s.smallest())).collect(),
        })
    }
}

fn render_grid<T: fmt::Display>(labels: &BTreeMap<Cell, T>, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if labels.is_empty() {
        return writeln!(f, "(empty)");
    }
    let min_x = labels.keys().map(|c| c.x).min().unwrap();
    let max_x = labels.keys().map(|c| c.x).max().unwrap();
    let top = labels.keys().next().unwrap().y;
    let bottom = labels.keys().next_back().unwrap().y;
    let text: BTreeMap<Cell, String> = labels.iter().map(|(c, v)| (*c, v.to_string())).collect();
    let width = text.values().map(String::len).max().unwrap_or(1);
    for y in top..=bottom {
        let mut line = String::new();
        for x in min_x..=max_x {
            let cell = text.get(&Cell::new(x, y)).map(String::as_str).unwrap_or(".");
            line.push_str(&format!("{cell:>width$} "));
        }
        writeln!(f, "{}", line.trim_end())?;
    }
    Ok(())
}

impl fmt::Display for SetValuedTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        render_grid(&self.labels, f)
    }
}

#[derive(Serialize, Deserialize)]
struct LabelEntry {
    #[serde(rename = "box")]
    cell: Cell,
    set: Vec<Label>,
}

#[derive(Serialize, Deserialize)]
struct TableauJson {
    shape: SkewShape,
    labels: Vec<LabelEntry>,
}

impl Serialize for SetValuedTableau {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        TableauJson {
            shape: self.shape.clone(),
            labels: self.labels.iter().map(|(c, set)| LabelEntry { cell: *c, set: set.0.clone() }).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SetValuedTableau {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = TableauJson::deserialize(d)?;
        let mut labels = BTreeMap::new();
        for e in raw.labels {
            if e.set.contains(&0) {
                return Err(D::Error::custom(TableauError::ZeroLabel));
            }
            let set = LabelSet::new(e.set).ok_or_else(|| D::Error::custom(TableauError::EmptyLabelSet(e.cell)))?;
            labels.insert(e.cell, set);
        }
        SetValuedTableau::new(raw.shape, labels).map_err(D::Error::custom)
    }
}

/// An ordinary filling: one label per box. The box set need not be a skew
/// shape (the pieces above and below a shape are plain box sets).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tableau {
    shape: SkewShape,
    labels: BTreeMap<Cell, Label>,
}

impl Tableau {
    pub fn new(labels: BTreeMap<Cell, Label>) -> Result<Self, TableauError> {
        if labels.values().any(|&l| l == 0) {
            return Err(TableauError::ZeroLabel);
        }
        let shape = SkewShape::from_set_unchecked(labels.keys().copied().collect());
        Ok(Tableau { shape, labels })
    }

    pub fn from_rows(rows: &[(i64, Vec<Label>)]) -> Result<Self, TableauError> {
        let labels = rows
            .iter()
            .enumerate()
            .flat_map(|(y, (start, ls))| {
                ls.iter().enumerate().map(move |(k, &l)| (Cell::new(start + k as i64, y as i64), l))
            })
            .collect();
        Tableau::new(labels)
    }

    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        self.labels.keys().copied()
    }

    pub fn get(&self, c: Cell) -> Option<Label> {
        self.labels.get(&c).copied()
    }

    pub fn entries(&self) -> impl Iterator<Item = (Cell, Label)> + '_ {
        self.labels.iter().map(|(c, l)| (*c, *l))
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Count of each label value `1..=len`, padded with zeros.
    pub fn content(&self, len: usize) -> Vec<u32> {
        let mut c = vec![0u32; len];
        for &l in self.labels.values() {
            c[(l - 1) as usize] += 1;
        }
        c
    }

    pub fn to_set_valued(&self) -> SetValuedTableau {
        SetValuedTableau {
            shape: self.shape.clone(),
            labels: self.labels.iter().map(|(c, &l)| (*c, LabelSet::single(l))).collect(),
        }
    }

    pub fn shifted(&self, dx: i64, dy: i64) -> Tableau {
        let labels = self.labels.iter().map(|(c, &l)| (Cell::new(c.x + dx, c.y + dy), l)).collect();
        Tableau::new(labels).expect("labels unchanged")
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        render_grid(&self.labels, f)
    }
}

impl Serialize for Tableau {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let labels: Vec<LabelEntry> = self.labels.iter().map(|(c, &l)| LabelEntry { cell: *c, set: vec![l] }).collect();
        #[derive(Serialize)]
        struct Plain<'a> {
            boxes: Vec<Cell>,
            labels: &'a [LabelEntry],
        }
        Plain { boxes: self.labels.keys().copied().collect(), labels: &labels }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Tableau {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error as _;
        #[derive(Deserialize)]
        struct Plain {
            labels: Vec<LabelEntry>,
        }
        let raw = Plain::deserialize(d)?;
        let mut labels = BTreeMap::new();
        for e in raw.labels {
            match e.set.as_slice() {
                [l] => {
                    labels.insert(e.cell, *l);
                }
                _ => return Err(D::Error::custom("ordinary tableaux carry one label per box")),
            }
        }
        Tableau::new(labels).map_err(D::Error::custom)
    }
}

// ---------------------------------------------------------------------------
// Set-valued enumeration

/// Which excess vectors a set-valued enumeration accepts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExcessFilter {
    Any,
    /// Exactly this excess, rows `1..` of the shape's own frame.
    Exact(Vec<u32>),
}

/// Constraints on semistandard set-valued fillings.
#[derive(Clone, Debug)]
pub struct SvtQuery {
    /// Labels are drawn from `1..=max_label`.
    pub max_label: Label,
    /// Exact multiplicity of each label, if fixed.
    pub content: Option<Vec<u32>>,
    pub excess: ExcessFilter,
    /// Cap on the total number of labels.
    pub max_size: Option<usize>,
}

impl SvtQuery {
    pub fn with_content(content: Vec<u32>, excess: ExcessFilter) -> Self {
        SvtQuery { max_label: content.len() as Label, content: Some(content), excess, max_size: None }
    }

    pub fn bounded(max_label: Label, max_size: usize) -> Self {
        SvtQuery { max_label, content: None, excess: ExcessFilter::Any, max_size: Some(max_size) }
    }
}

struct SvtSearch<'a, F: FnMut(&[u64])> {
    left: Vec<Option<usize>>,
    up: Vec<Option<usize>>,
    row_of: Vec<usize>,
    n: Label,
    remaining: Option<Vec<u32>>,
    remaining_total: usize,
    row_budget: Option<Vec<u32>>,
    /// Extra labels (beyond one per box) still allowed.
    size_budget: Option<usize>,
    masks: Vec<u64>,
    visit: &'a mut F,
}

impl<F: FnMut(&[u64])> SvtSearch<'_, F> {
    fn place(&mut self, i: usize) {
        let cells = self.masks.len();
        if i == cells {
            if self.remaining_total == 0 && self.row_budget.as_ref().is_none_or(|b| b.iter().all(|&x| x == 0)) {
                (self.visit)(&self.masks);
            }
            return;
        }
        let cells_left = cells - i;
        if self.remaining.is_some() && self.remaining_total < cells_left {
            return;
        }
        let mut lo: Label = 1;
        if let Some(l) = self.left[i] {
            lo = lo.max(top_bit(self.masks[l]));
        }
        if let Some(u) = self.up[i] {
            lo = lo.max(top_bit(self.masks[u]) + 1);
        }
        // extra labels beyond one this box may take
        let mut extra_cap = usize::MAX;
        if let Some(b) = &self.row_budget {
            extra_cap = extra_cap.min(b[self.row_of[i]] as usize);
        }
        if let Some(s) = self.size_budget {
            extra_cap = extra_cap.min(s);
        }
        if self.remaining.is_some() {
            extra_cap = extra_cap.min(self.remaining_total - cells_left);
        }
        for m in lo..=self.n {
            if !self.available(m) {
                continue;
            }
            self.take(m);
            self.extend(i, 1u64 << (m - 1), m + 1, extra_cap);
            self.give(m);
        }
    }

    // Grows the set in box `i` by labels above `next`, then recurses.
    fn extend(&mut self, i: usize, mask: u64, next: Label, extra_cap: usize) {
        self.masks[i] = mask;
        self.place(i + 1);
        if extra_cap == 0 {
            return;
        }
        let row = self.row_of[i];
        for m in next..=self.n {
            if !self.available(m) {
                continue;
            }
            self.take(m);
            if let Some(b) = &mut self.row_budget {
                b[row] -= 1;
            }
            if let Some(s) = &mut self.size_budget {
                *s -= 1;
            }
            self.extend(i, mask | 1u64 << (m - 1), m + 1, extra_cap - 1);
            if let Some(b) = &mut self.row_budget {
                b[row] += 1;
            }
            if let Some(s) = &mut self.size_budget {
                *s += 1;
            }
            self.give(m);
        }
        self.masks[i] = 0;
    }

    fn available(&self, m: Label) -> bool {
        self.remaining.as_ref().is_none_or(|r| r[(m - 1) as usize] > 0)
    }

    fn take(&mut self, m: Label) {
        if let Some(r) = &mut self.remaining {
            r[(m - 1) as usize] -= 1;
            self.remaining_total -= 1;
        }
    }

    fn give(&mut self, m: Label) {
        if let Some(r) = &mut self.remaining {
            r[(m - 1) as usize] += 1;
            self.remaining_total += 1;
        }
    }
}

fn top_bit(mask: u64) -> Label {
    64 - mask.leading_zeros()
}

/// Visits every semistandard set-valued filling of `shape` matching `query`.
/// The callback receives one bitmask per box in reading order; bit `k`
/// stands for label `k + 1`.
pub fn for_each_ssvt<F: FnMut(&[u64])>(shape: &SkewShape, query: &SvtQuery, mut visit: F) {
    assert!(query.max_label <= MAX_LABEL, "labels above {MAX_LABEL} are not supported");
    let cells: Vec<Cell> = shape.cells().collect();
    let index: BTreeMap<Cell, usize> = cells.iter().enumerate().map(|(i, c)| (*c, i)).collect();
    let frame = RowFrame::of(shape);
    let rows = shape.row_span();
    let row_budget = match &query.excess {
        ExcessFilter::Any => None,
        ExcessFilter::Exact(e) => {
            if e.len() > rows && e[rows..].iter().any(|&x| x > 0) {
                return;
            }
            let mut b = e.clone();
            b.resize(rows, 0);
            Some(b)
        }
    };
    let mut content = query.content.clone();
    if let Some(c) = &mut content {
        if c.len() > query.max_label as usize && c[query.max_label as usize..].iter().any(|&x| x > 0) {
            return;
        }
        c.resize(query.max_label as usize, 0);
    }
    let remaining_total = content.as_ref().map_or(0, |c| c.iter().map(|&x| x as usize).sum());
    if let (Some(_), Some(b)) = (&content, &row_budget) {
        if remaining_total != cells.len() + b.iter().map(|&x| x as usize).sum::<usize>() {
            return;
        }
    }
    let size_budget = match query.max_size {
        Some(m) if m < cells.len() => return,
        Some(m) => Some(m - cells.len()),
        None => None,
    };
    let mut search = SvtSearch {
        left: cells.iter().map(|c| index.get(&c.left()).copied()).collect(),
        up: cells.iter().map(|c| index.get(&c.up()).copied()).collect(),
        row_of: cells.iter().map(|c| (frame.index(c.y) - 1) as usize).collect(),
        n: query.max_label,
        remaining: content,
        remaining_total,
        row_budget,
        size_budget,
        masks: vec![0; cells.len()],
        visit: &mut visit,
    };
    search.place(0);
}

/// All semistandard set-valued fillings matching `query`.
pub fn enumerate_ssvt(shape: &SkewShape, query: &SvtQuery) -> Vec<SetValuedTableau> {
    let mut out = Vec::new();
    for_each_ssvt(shape, query, |m| out.push(SetValuedTableau::from_masks(shape, m)));
    out
}

/// Fillings with content `content`; `excess` of `None` accepts any excess.
pub fn enumerate_ssvt_with(shape: &SkewShape, content: &[u32], excess: Option<&[u32]>) -> Vec<SetValuedTableau> {
    let filter = excess.map_or(ExcessFilter::Any, |e| ExcessFilter::Exact(e.to_vec()));
    enumerate_ssvt(shape, &SvtQuery::with_content(content.to_vec(), filter))
}

pub fn count_ssvt(shape: &SkewShape, content: &[u32], excess: Option<&[u32]>) -> u64 {
    let filter = excess.map_or(ExcessFilter::Any, |e| ExcessFilter::Exact(e.to_vec()));
    let mut n = 0u64;
    for_each_ssvt(shape, &SvtQuery::with_content(content.to_vec(), filter), |_| n += 1);
    n
}

/// Standard set-valued tableaux using each of `1..=n_labels` once.
pub fn enumerate_standard_svt(shape: &SkewShape, n_labels: Label) -> Vec<SetValuedTableau> {
    enumerate_ssvt_with(shape, &vec![1; n_labels as usize], None)
}

pub fn count_standard_svt(shape: &SkewShape, n_labels: Label) -> u64 {
    count_ssvt(shape, &vec![1; n_labels as usize], None)
}

// ---------------------------------------------------------------------------
// Ordinary fillings of box sets

/// How labels compare along a row, left to right.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum RowRule {
    WeaklyIncreasing,
    StrictlyDecreasing,
}

/// How labels compare down a column.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum ColumnRule {
    StrictlyIncreasing,
    WeaklyDecreasing,
}

/// Upper bound on the label in each box.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum LabelBound {
    /// Labels in `1..=n` everywhere.
    Global(Label),
    /// Labels strictly below the row index.
    BelowRow(RowFrame),
    /// Labels at most the row index.
    AtMostRow(RowFrame),
}

impl LabelBound {
    fn cap(&self, c: Cell) -> i64 {
        match *self {
            LabelBound::Global(n) => n as i64,
            LabelBound::BelowRow(f) => f.index(c.y) - 1,
            LabelBound::AtMostRow(f) => f.index(c.y),
        }
    }
}

/// Rules for ordinary fillings. Only adjacent boxes are compared, which is
/// enough when rows and columns of the box set are contiguous.
#[derive(Copy, Clone, Debug)]
pub struct FillingRules {
    pub row: RowRule,
    pub column: ColumnRule,
    pub bound: LabelBound,
}

impl FillingRules {
    pub fn semistandard(max_label: Label) -> Self {
        FillingRules {
            row: RowRule::WeaklyIncreasing,
            column: ColumnRule::StrictlyIncreasing,
            bound: LabelBound::Global(max_label),
        }
    }

    pub fn reverse_row_strict_row_bounded(frame: RowFrame) -> Self {
        FillingRules {
            row: RowRule::StrictlyDecreasing,
            column: ColumnRule::WeaklyDecreasing,
            bound: LabelBound::BelowRow(frame),
        }
    }

    pub fn reverse_row_strict_row_weakly_bounded(frame: RowFrame) -> Self {
        FillingRules {
            row: RowRule::StrictlyDecreasing,
            column: ColumnRule::WeaklyDecreasing,
            bound: LabelBound::AtMostRow(frame),
        }
    }

    pub fn row_weakly_bounded_semistandard(frame: RowFrame) -> Self {
        FillingRules {
            row: RowRule::WeaklyIncreasing,
            column: ColumnRule::StrictlyIncreasing,
            bound: LabelBound::AtMostRow(frame),
        }
    }

    /// Whether `t` obeys these rules.
    pub fn accepts(&self, t: &Tableau) -> bool {
        t.entries().all(|(c, l)| {
            let l = l as i64;
            if l < 1 || l > self.bound.cap(c) {
                return false;
            }
            if let Some(left) = t.get(c.left()) {
                let ok = match self.row {
                    RowRule::WeaklyIncreasing => left as i64 <= l,
                    RowRule::StrictlyDecreasing => left as i64 > l,
                };
                if !ok {
                    return false;
                }
            }
            if let Some(up) = t.get(c.up()) {
                let ok = match self.column {
                    ColumnRule::StrictlyIncreasing => (up as i64) < l,
                    ColumnRule::WeaklyDecreasing => up as i64 >= l,
                };
                if !ok {
                    return false;
                }
            }
            true
        })
    }
}

/// Visits every filling of `cells` obeying `rules`; the callback gets the
/// labels in reading order.
pub fn for_each_filling<F: FnMut(&[Label])>(cells: &BTreeSet<Cell>, rules: FillingRules, mut visit: F) {
    let list: Vec<Cell> = cells.iter().copied().collect();
    let index: BTreeMap<Cell, usize> = list.iter().enumerate().map(|(i, c)| (*c, i)).collect();
    let left: Vec<Option<usize>> = list.iter().map(|c| index.get(&c.left()).copied()).collect();
    let up: Vec<Option<usize>> = list.iter().map(|c| index.get(&c.up()).copied()).collect();
    let caps: Vec<i64> = list.iter().map(|&c| rules.bound.cap(c)).collect();
    let mut labels = vec![0 as Label; list.len()];

    fn rec<F: FnMut(&[Label])>(
        i: usize,
        rules: &FillingRules,
        left: &[Option<usize>],
        up: &[Option<usize>],
        caps: &[i64],
        labels: &mut Vec<Label>,
        visit: &mut F,
    ) {
        if i == labels.len() {
            visit(labels);
            return;
        }
        let mut lo: i64 = 1;
        let mut hi: i64 = caps[i];
        if let Some(l) = left[i] {
            let v = labels[l] as i64;
            match rules.row {
                RowRule::WeaklyIncreasing => lo = lo.max(v),
                RowRule::StrictlyDecreasing => hi = hi.min(v - 1),
            }
        }
        if let Some(u) = up[i] {
            let v = labels[u] as i64;
            match rules.column {
                ColumnRule::StrictlyIncreasing => lo = lo.max(v + 1),
                ColumnRule::WeaklyDecreasing => hi = hi.min(v),
            }
        }
        for v in lo..=hi {
            labels[i] = v as Label;
            rec(i + 1, rules, left, up, caps, labels, visit);
        }
    }

    rec(0, &rules, &left, &up, &caps, &mut labels, &mut visit);
}

pub fn enumerate_fillings(cells: &BTreeSet<Cell>, rules: FillingRules) -> Vec<Tableau> {
    let list: Vec<Cell> = cells.iter().copied().collect();
    let mut out = Vec::new();
    for_each_filling(cells, rules, |ls| {
        let labels = list.iter().copied().zip(ls.iter().copied()).collect();
        out.push(Tableau::new(labels).expect("labels are positive"));
    });
    out
}

/// Rows strictly decrease, columns weakly decrease, labels below the row
/// index.
pub fn enumerate_reverse_row_strict_row_bounded(cells: &BTreeSet<Cell>, frame: RowFrame) -> Vec<Tableau> {
    enumerate_fillings(cells, FillingRules::reverse_row_strict_row_bounded(frame))
}

/// Rows weakly increase, columns strictly increase, labels at most the row
/// index.
pub fn enumerate_row_weakly_bounded_semistandard(cells: &BTreeSet<Cell>, frame: RowFrame) -> Vec<Tableau> {
    enumerate_fillings(cells, FillingRules::row_weakly_bounded_semistandard(frame))
}

/// Rows strictly decrease, columns weakly decrease, labels at most the row
/// index.
pub fn enumerate_reverse_row_strict_row_weakly_bounded(cells: &BTreeSet<Cell>, frame: RowFrame) -> Vec<Tableau> {
    enumerate_fillings(cells, FillingRules::reverse_row_strict_row_weakly_bounded(frame))
}

/// Number of fillings obeying `rules`, keyed by content vector of length
/// `len` (labels above `len` are not expected).
pub fn fillings_by_content(cells: &BTreeSet<Cell>, rules: FillingRules, len: usize) -> BTreeMap<Vec<u32>, u64> {
    let mut out = BTreeMap::new();
    let mut content = vec![0u32; len];
    for_each_filling(cells, rules, |ls| {
        content.iter_mut().for_each(|x| *x = 0);
        for &l in ls {
            content[(l - 1) as usize] += 1;
        }
        *out.entry(content.clone()).or_insert(0) += 1;
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row_shape(n: i64) -> SkewShape {
        SkewShape::from_row_ranges(&[(0, n)]).unwrap()
    }

    // Brute force: every assignment of nonempty subsets of 1..=n to boxes.
    fn brute_ssvt(shape: &SkewShape, n: Label, max_size: usize) -> Vec<SetValuedTableau> {
        let cells: Vec<Cell> = shape.cells().collect();
        let mut out = Vec::new();
        let mut masks = vec![0u64; cells.len()];
        fn rec(
            i: usize,
            n: Label,
            max_size: usize,
            shape: &SkewShape,
            masks: &mut Vec<u64>,
            out: &mut Vec<SetValuedTableau>,
        ) {
            if i == masks.len() {
                let t = SetValuedTableau::from_masks(shape, masks);
                if t.is_semistandard() && t.size() <= max_size {
                    out.push(t);
                }
                return;
            }
            for m in 1..(1u64 << n) {
                masks[i] = m;
                rec(i + 1, n, max_size, shape, masks, out);
            }
        }
        rec(0, n, max_size, shape, &mut masks, &mut out);
        out.sort();
        out
    }

    #[test]
    fn two_box_row_four_labels() {
        let ts = enumerate_standard_svt(&row_shape(2), 4);
        assert_eq!(ts.len(), 3);
        assert!(ts.iter().all(|t| t.is_standard(4)));
    }

    #[test]
    fn enumerator_matches_brute_force() {
        let shapes = [
            row_shape(2),
            SkewShape::from_row_ranges(&[(0, 2), (0, 1)]).unwrap(),
            SkewShape::from_row_ranges(&[(1, 2), (0, 1)]).unwrap(),
            SkewShape::from_row_ranges(&[(0, 1), (0, 1)]).unwrap(),
        ];
        for s in &shapes {
            for n in 1..=4 {
                for cap in s.len()..=s.len() + 2 {
                    let mut fast = enumerate_ssvt(s, &SvtQuery::bounded(n, cap));
                    fast.sort();
                    assert_eq!(fast, brute_ssvt(s, n, cap), "{s:?} n={n} cap={cap}");
                }
            }
        }
    }

    #[test]
    fn content_and_excess_filters() {
        let s = SkewShape::from_row_ranges(&[(0, 2), (0, 1)]).unwrap();
        let all = brute_ssvt(&s, 3, 6);
        for c0 in 0..3u32 {
            for c1 in 0..3u32 {
                for c2 in 0..3u32 {
                    let c = vec![c0, c1, c2];
                    let want: Vec<_> = all
                        .iter()
                        .filter(|t| {
                            let mut tc = t.content();
                            tc.resize(3, 0);
                            tc == c
                        })
                        .collect();
                    assert_eq!(count_ssvt(&s, &c, None), want.len() as u64);
                    for e0 in 0..3u32 {
                        for e1 in 0..3u32 {
                            let e = [e0, e1];
                            let n = want.iter().filter(|t| t.own_excess() == e).count();
                            assert_eq!(count_ssvt(&s, &c, Some(&e)), n as u64, "c={c:?} e={e:?}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn semistandard_rules() {
        let t = SetValuedTableau::from_rows(&[(0, vec![vec![1, 2], vec![2]]), (0, vec![vec![3]])]).unwrap();
        assert!(t.is_semistandard());
        let bad = SetValuedTableau::from_rows(&[(0, vec![vec![1, 2], vec![2]]), (0, vec![vec![2]])]).unwrap();
        assert!(!bad.is_semistandard());
        assert_eq!(t.content(), vec![1, 2, 1]);
        assert_eq!(t.own_excess(), vec![1, 0]);
    }

    #[test]
    fn tableau_json_round_trip() {
        let t = SetValuedTableau::from_rows(&[(0, vec![vec![1, 2], vec![2]])]).unwrap();
        let j = serde_json::to_string(&t).unwrap();
        assert_eq!(j, r#"{"shape":[[0,0],[1,0]],"labels":[{"box":[0,0],"set":[1,2]},{"box":[1,0],"set":[2]}]}"#);
        assert_eq!(serde_json::from_str::<SetValuedTableau>(&j).unwrap(), t);
        let empty = r#"{"shape":[[0,0]],"labels":[{"box":[0,0],"set":[]}]}"#;
        assert!(serde_json::from_str::<SetValuedTableau>(empty).is_err());
        let zero = r#"{"shape":[[0,0]],"labels":[{"box":[0,0],"set":[0]}]}"#;
        assert!(serde_json::from_str::<SetValuedTableau>(zero).is_err());
    }

    #[test]
    fn bounded_fillings() {
        // a column of two boxes in rows 2 and 3
        let cells: BTreeSet<Cell> = [Cell::new(0, 1), Cell::new(0, 2)].into_iter().collect();
        let frame = RowFrame::new(0);
        // row 2 label < 2 -> 1, row 3 label <= 1 by column rule
        let t = enumerate_reverse_row_strict_row_bounded(&cells, frame);
        assert_eq!(t.len(), 1);
        // row 2 label <= 2, row 3 label <= 3 and strictly greater
        let s = enumerate_row_weakly_bounded_semistandard(&cells, frame);
        assert_eq!(s.len(), 3);
        let r = enumerate_reverse_row_strict_row_weakly_bounded(&cells, frame);
        assert_eq!(r.len(), 3);
        // rows above the frame admit nothing
        let high: BTreeSet<Cell> = [Cell::new(0, -1)].into_iter().collect();
        assert!(enumerate_row_weakly_bounded_semistandard(&high, frame).is_empty());
        // the empty set has exactly one filling
        assert_eq!(enumerate_reverse_row_strict_row_bounded(&BTreeSet::new(), frame).len(), 1);
    }

    #[test]
    fn filling_rules_accept_their_own_output() {
        let cells: BTreeSet<Cell> = SkewShape::from_row_ranges(&[(1, 3), (0, 2), (0, 1)]).unwrap().cell_set().clone();
        for rules in [
            FillingRules::semistandard(4),
            FillingRules::reverse_row_strict_row_bounded(RowFrame::new(-1)),
            FillingRules::row_weakly_bounded_semistandard(RowFrame::new(0)),
            FillingRules::reverse_row_strict_row_weakly_bounded(RowFrame::new(0)),
        ] {
            let all = enumerate_fillings(&cells, rules);
            assert!(all.iter().all(|t| rules.accepts(t)));
            // brute force over labels 1..=5
            let list: Vec<Cell> = cells.iter().copied().collect();
            let mut count = 0;
            let mut labels = vec![1u32; list.len()];
            loop {
                let t = Tableau::new(list.iter().copied().zip(labels.iter().copied()).collect()).unwrap();
                if rules.accepts(&t) {
                    count += 1;
                }
                let mut k = 0;
                while k < labels.len() && labels[k] == 5 {
                    labels[k] = 1;
                    k += 1;
                }
                if k == labels.len() {
                    break;
                }
                labels[k] += 1;
            }
            assert_eq!(all.len(), count, "{rules:?}");
        }
    }
}
