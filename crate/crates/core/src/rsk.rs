//! Skew RSK moves that turn a semistandard set-valued tableau on a shape
//! grown upward from `sigma` into an ordinary semistandard tableau on a
//! shape grown downward, recording where each new box came from.
//!
//! Rows are numbered from 1 at the top row of `sigma`. The forward pass
//! runs row `k` from the bottom of `sigma` up to 1: first it peels the
//! largest extra label off the rightmost multi-labelled box of row `k` and
//! row-inserts it below, then it deletes every box whose label above is `k`
//! and inserts its entry below. Each insertion ends in a new box, labelled
//! `k` in the filling below.
//!
//! New boxes go where the shape forces them: at the right end of a
//! nonempty row, or under the leftmost box of the row above when the row
//! is empty. If `sigma` skips a column this position can leave the columns
//! of `sigma`, so such shapes are rejected.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::shapes::{above_below_split, column_extensions_growing, contains_same_columns, Cell, Growth, SkewShape};
use crate::tableaux::{
    enumerate_fillings, enumerate_reverse_row_strict_row_bounded, enumerate_reverse_row_strict_row_weakly_bounded,
    enumerate_ssvt, ExcessFilter, FillingRules, Label, LabelSet, RowFrame, SetValuedTableau, SvtQuery, Tableau,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RskError {
    #[error("sigma skips a column; the insertion has no place for new boxes there")]
    ColumnGap,
    #[error("the tableau's shape is not a column extension of sigma")]
    NotColumnExtension,
    #[error("the input shape has boxes below sigma")]
    BoxesBelow,
    #[error("the output shape has boxes above sigma")]
    BoxesAbove,
    #[error("the auxiliary filling does not cover exactly the boxes {0}")]
    AuxiliaryShape(&'static str),
    #[error("the filling above is not reverse row-strict and row-weakly-bounded")]
    BadAbove,
    #[error("the filling below is not reverse row-strict and row-bounded")]
    BadBelow,
    #[error("the tableau is not semistandard")]
    NotSemistandard,
    #[error("the tableau's shape differs from the declared shape")]
    ShapeMismatch,
    #[error("invariant broken during insertion: {0}")]
    Invariant(String),
}

/// A set-valued tableau on `lambda`, which extends `sigma` upward only, and
/// an auxiliary filling of the boxes above `sigma`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RskInput {
    pub sigma: SkewShape,
    pub lambda: SkewShape,
    pub above: Tableau,
    pub tableau: SetValuedTableau,
}

/// An ordinary tableau on `mu`, which extends `sigma` downward only, and
/// an auxiliary filling of the boxes below `sigma`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RskOutput {
    pub sigma: SkewShape,
    pub mu: SkewShape,
    pub below: Tableau,
    pub tableau: Tableau,
}

/// A snapshot taken after one insertion.
#[derive(Clone, Debug, Serialize)]
pub struct RskFrame {
    /// Row (numbered from 1 at the top of sigma) being processed.
    pub stage: usize,
    /// The label that started the insertion.
    pub moved: Label,
    /// Where the insertion ended.
    pub new_box: Cell,
    pub tableau: SetValuedTableau,
    pub below: Tableau,
}

impl RskInput {
    pub fn validate(&self) -> Result<(), RskError> {
        if self.sigma.has_column_gap() {
            return Err(RskError::ColumnGap);
        }
        if !contains_same_columns(&self.lambda, &self.sigma) {
            return Err(RskError::NotColumnExtension);
        }
        let (above, below) = above_below_split(&self.lambda, &self.sigma).map_err(|_| RskError::NotColumnExtension)?;
        if !below.is_empty() {
            return Err(RskError::BoxesBelow);
        }
        if self.above.cells().collect::<BTreeSet<_>>() != above {
            return Err(RskError::AuxiliaryShape("above sigma"));
        }
        let frame = RowFrame::of(&self.sigma);
        if !FillingRules::reverse_row_strict_row_weakly_bounded(frame).accepts(&self.above) {
            return Err(RskError::BadAbove);
        }
        if self.tableau.shape() != &self.lambda {
            return Err(RskError::ShapeMismatch);
        }
        if !self.tableau.is_semistandard() {
            return Err(RskError::NotSemistandard);
        }
        Ok(())
    }
}

impl RskOutput {
    pub fn validate(&self) -> Result<(), RskError> {
        if self.sigma.has_column_gap() {
            return Err(RskError::ColumnGap);
        }
        if !contains_same_columns(&self.mu, &self.sigma) {
            return Err(RskError::NotColumnExtension);
        }
        let (above, below) = above_below_split(&self.mu, &self.sigma).map_err(|_| RskError::NotColumnExtension)?;
        if !above.is_empty() {
            return Err(RskError::BoxesAbove);
        }
        if self.below.cells().collect::<BTreeSet<_>>() != below {
            return Err(RskError::AuxiliaryShape("below sigma"));
        }
        let frame = RowFrame::of(&self.sigma);
        if !FillingRules::reverse_row_strict_row_bounded(frame).accepts(&self.below) {
            return Err(RskError::BadBelow);
        }
        if self.tableau.cells().collect::<BTreeSet<_>>() != *self.mu.cell_set() {
            return Err(RskError::ShapeMismatch);
        }
        if !self.tableau.to_set_valued().is_semistandard() {
            return Err(RskError::NotSemistandard);
        }
        Ok(())
    }
}

/// Working tableau: label sets by box.
struct Board {
    cells: BTreeMap<Cell, LabelSet>,
}

impl Board {
    fn row(&self, y: i64) -> Vec<Cell> {
        self.cells.range(Cell::new(i64::MIN, y)..=Cell::new(i64::MAX, y)).map(|(c, _)| *c).collect()
    }

    fn single(&self, c: Cell) -> Result<Label, RskError> {
        let s = &self.cells[&c];
        if s.len() != 1 {
            return Err(RskError::Invariant(format!("box {c} should hold one label")));
        }
        Ok(s.smallest())
    }

    /// Row-inserts `v` starting in row `y`; returns the new box.
    fn insert(&mut self, mut v: Label, mut y: i64, allowed_columns: &BTreeSet<i64>) -> Result<Cell, RskError> {
        loop {
            let row = self.row(y);
            if row.is_empty() {
                let above = self.row(y - 1);
                let first =
                    above.first().ok_or_else(|| RskError::Invariant(format!("rows {} and {y} both empty", y - 1)))?;
                let c = Cell::new(first.x, y);
                self.cells.insert(c, LabelSet::single(v));
                return Ok(c);
            }
            let mut bumped = None;
            for &c in &row {
                if self.single(c)? > v {
                    bumped = Some(c);
                    break;
                }
            }
            match bumped {
                Some(c) => {
                    let old = self.single(c)?;
                    self.cells.insert(c, LabelSet::single(v));
                    v = old;
                    y += 1;
                }
                None => {
                    let c = row.last().unwrap().right();
                    if !allowed_columns.contains(&c.x) || !self.cells.contains_key(&c.up()) {
                        return Err(RskError::Invariant(format!("new box {c} leaves the columns of sigma")));
                    }
                    self.cells.insert(c, LabelSet::single(v));
                    return Ok(c);
                }
            }
        }
    }

    fn snapshot(&self) -> SetValuedTableau {
        let shape = SkewShape::new(self.cells.keys().copied()).expect("insertion keeps shapes interval-closed");
        SetValuedTableau::new(shape, self.cells.clone()).expect("labels cover the shape")
    }
}

fn aux_tableau(labels: &BTreeMap<Cell, Label>) -> Tableau {
    Tableau::new(labels.clone()).expect("auxiliary labels are positive")
}

/// Runs the forward insertion.
pub fn rsk_forward(input: &RskInput) -> Result<RskOutput, RskError> {
    forward(input, None)
}

/// Runs the forward insertion and records a frame after every insertion.
pub fn rsk_forward_traced(input: &RskInput) -> Result<(RskOutput, Vec<RskFrame>), RskError> {
    let mut frames = Vec::new();
    let out = forward(input, Some(&mut frames))?;
    Ok((out, frames))
}

fn forward(input: &RskInput, mut trace: Option<&mut Vec<RskFrame>>) -> Result<RskOutput, RskError> {
    input.validate()?;
    let sigma = &input.sigma;
    let frame = RowFrame::of(sigma);
    let rows = sigma.row_span();
    let columns: BTreeSet<i64> = sigma.columns().keys().copied().collect();
    let mut board = Board { cells: input.tableau.entries().map(|(c, s)| (c, s.clone())).collect() };
    let above: BTreeMap<Cell, Label> = input.above.entries().collect();
    let mut below: BTreeMap<Cell, Label> = BTreeMap::new();

    let mut record = |board: &Board, below: &BTreeMap<Cell, Label>, stage: usize, moved: Label, new_box: Cell| {
        if let Some(t) = trace.as_deref_mut() {
            t.push(RskFrame { stage, moved, new_box, tableau: board.snapshot(), below: aux_tableau(below) });
        }
    };

    for k in (1..=rows).rev() {
        let y = frame.y_of(k as i64);
        // peel extra labels off row k, rightmost multi-labelled box first
        loop {
            let target = board.row(y).into_iter().rev().find(|c| board.cells[c].len() > 1);
            let Some(c) = target else { break };
            let m = board.cells.get_mut(&c).unwrap().pop_max().unwrap();
            let new_box = board.insert(m, y + 1, &columns)?;
            below.insert(new_box, k as Label);
            record(&board, &below, k, m, new_box);
        }
        // delete boxes marked k above sigma, top row first
        let marked: Vec<Cell> = above.iter().filter(|(_, &l)| l as usize == k).map(|(c, _)| *c).collect();
        let mut seen_rows = BTreeSet::new();
        for c in marked {
            if !seen_rows.insert(c.y) {
                return Err(RskError::Invariant(format!("two boxes marked {k} in row {}", frame.index(c.y))));
            }
            if board.cells.contains_key(&c.left()) || board.cells.contains_key(&c.up()) {
                return Err(RskError::Invariant(format!("marked box {c} is not a top-left corner")));
            }
            let v = board.single(c)?;
            board.cells.remove(&c);
            let new_box = board.insert(v, c.y + 1, &columns)?;
            below.insert(new_box, k as Label);
            record(&board, &below, k, v, new_box);
        }
    }

    let mu = SkewShape::new(board.cells.keys().copied()).map_err(|e| RskError::Invariant(e.to_string()))?;
    let mut labels = BTreeMap::new();
    for c in board.cells.keys() {
        labels.insert(*c, board.single(*c)?);
    }
    let out = RskOutput {
        sigma: sigma.clone(),
        mu,
        below: aux_tableau(&below),
        tableau: Tableau::new(labels).expect("positive labels"),
    };
    out.validate().map_err(|e| RskError::Invariant(format!("output: {e}")))?;
    Ok(out)
}

/// Undoes [`rsk_forward`].
pub fn rsk_inverse(output: &RskOutput) -> Result<RskInput, RskError> {
    output.validate()?;
    let sigma = &output.sigma;
    let frame = RowFrame::of(sigma);
    let rows = sigma.row_span();
    let mut board = Board { cells: output.tableau.entries().map(|(c, l)| (c, LabelSet::single(l))).collect() };
    let mut below: BTreeMap<Cell, Label> = output.below.entries().collect();
    let mut above: BTreeMap<Cell, Label> = BTreeMap::new();

    for k in 1..=rows {
        let yk = frame.y_of(k as i64);
        // newest boxes sit lowest, so undo from the bottom up
        let mut marked: Vec<Cell> = below.iter().filter(|(_, &l)| l as usize == k).map(|(c, _)| *c).collect();
        marked.sort_by_key(|c| std::cmp::Reverse(c.y));
        if marked.windows(2).any(|w| w[0].y == w[1].y) {
            return Err(RskError::Invariant(format!("two boxes marked {k} in one row below sigma")));
        }
        for b in marked {
            below.remove(&b);
            let mut v = board.single(b)?;
            board.cells.remove(&b);
            let mut y = b.y - 1;
            loop {
                if y < yk {
                    return Err(RskError::Invariant(format!("reverse insertion passed row {k}")));
                }
                let row = board.row(y);
                if y == yk {
                    let target = row.iter().rev().find(|c| board.cells[c].largest() < v).copied();
                    match target {
                        Some(c) => board.cells.get_mut(&c).unwrap().insert(v),
                        None => {
                            let c = left_slot(&board, &row, y)?;
                            board.cells.insert(c, LabelSet::single(v));
                            above.insert(c, k as Label);
                        }
                    }
                    break;
                }
                let mut target = None;
                for &c in row.iter().rev() {
                    if board.single(c)? < v {
                        target = Some(c);
                        break;
                    }
                }
                match target {
                    Some(c) => {
                        let old = board.single(c)?;
                        board.cells.insert(c, LabelSet::single(v));
                        v = old;
                        y -= 1;
                    }
                    None => {
                        let c = left_slot(&board, &row, y)?;
                        board.cells.insert(c, LabelSet::single(v));
                        above.insert(c, k as Label);
                        break;
                    }
                }
            }
        }
    }
    if !below.is_empty() {
        return Err(RskError::Invariant("labels below sigma exceed its rows".into()));
    }

    let lambda = SkewShape::new(board.cells.keys().copied()).map_err(|e| RskError::Invariant(e.to_string()))?;
    let tableau = SetValuedTableau::new(lambda.clone(), board.cells).map_err(|e| RskError::Invariant(e.to_string()))?;
    let input = RskInput { sigma: sigma.clone(), lambda, above: aux_tableau(&above), tableau };
    input.validate().map_err(|e| RskError::Invariant(format!("recovered input: {e}")))?;
    Ok(input)
}

// The slot just left of `row`, or above the rightmost box of the row below
// when `row` is empty.
fn left_slot(board: &Board, row: &[Cell], y: i64) -> Result<Cell, RskError> {
    match row.first() {
        Some(c) => Ok(c.left()),
        None => board
            .row(y + 1)
            .last()
            .map(|c| Cell::new(c.x, y))
            .ok_or_else(|| RskError::Invariant(format!("rows {y} and {} both empty", y + 1))),
    }
}

/// The worked example: a four-row `sigma` with a two-box staircase of
/// extra boxes above it and a thirteen-label tableau.
pub fn worked_example() -> RskInput {
    let sigma = SkewShape::from_row_ranges(&[(2, 3), (2, 3), (1, 3), (0, 2)]).unwrap();
    let lambda = SkewShape::from_row_ranges(&[(1, 3), (0, 3), (0, 3), (0, 2)]).unwrap();
    let above = Tableau::from_rows(&[(1, vec![1]), (0, vec![2, 1]), (0, vec![1])]).unwrap();
    let tableau = SetValuedTableau::from_rows(&[
        (1, vec![vec![2], vec![3]]),
        (0, vec![vec![1, 4], vec![6], vec![8]]),
        (0, vec![vec![5, 7], vec![9], vec![10, 13]]),
        (0, vec![vec![11], vec![12]]),
    ])
    .unwrap();
    RskInput { sigma, lambda, above, tableau }
}

/// Rows of a tableau, top to bottom, as `(x, labels)` pairs.
pub type FrameRows = Vec<Vec<(i64, Vec<Label>)>>;

pub fn frame_rows(t: &SetValuedTableau) -> FrameRows {
    let mut out: BTreeMap<i64, Vec<(i64, Vec<Label>)>> = BTreeMap::new();
    for (c, s) in t.entries() {
        out.entry(c.y).or_default().push((c.x, s.labels().to_vec()));
    }
    out.into_values().collect()
}

type Row = &'static [(i64, &'static [Label])];

/// The frames after each insertion of the worked example, and the final
/// filling below sigma, as printed with the example.
pub fn worked_example_expected() -> (Vec<FrameRows>, Vec<(Cell, Label)>) {
    let top: Row = &[(1, &[2]), (2, &[3])];
    let frames: Vec<Vec<Row>> = vec![
        vec![
            top,
            &[(0, &[1, 4]), (1, &[6]), (2, &[8])],
            &[(0, &[5, 7]), (1, &[9]), (2, &[10])],
            &[(0, &[11]), (1, &[12]), (2, &[13])],
        ],
        vec![
            top,
            &[(0, &[1, 4]), (1, &[6]), (2, &[8])],
            &[(0, &[5]), (1, &[9]), (2, &[10])],
            &[(0, &[7]), (1, &[12]), (2, &[13])],
            &[(0, &[11])],
        ],
        vec![
            top,
            &[(0, &[1]), (1, &[6]), (2, &[8])],
            &[(0, &[4]), (1, &[9]), (2, &[10])],
            &[(0, &[5]), (1, &[12]), (2, &[13])],
            &[(0, &[7])],
            &[(0, &[11])],
        ],
        vec![
            top,
            &[(1, &[6]), (2, &[8])],
            &[(0, &[1]), (1, &[9]), (2, &[10])],
            &[(0, &[4]), (1, &[12]), (2, &[13])],
            &[(0, &[5])],
            &[(0, &[7])],
            &[(0, &[11])],
        ],
        vec![
            &[(2, &[3])],
            &[(1, &[2]), (2, &[8])],
            &[(0, &[1]), (1, &[6]), (2, &[10])],
            &[(0, &[4]), (1, &[9]), (2, &[13])],
            &[(0, &[5]), (1, &[12])],
            &[(0, &[7])],
            &[(0, &[11])],
        ],
        vec![
            &[(2, &[3])],
            &[(2, &[8])],
            &[(0, &[1]), (1, &[2]), (2, &[10])],
            &[(0, &[4]), (1, &[6]), (2, &[13])],
            &[(0, &[5]), (1, &[9])],
            &[(0, &[7]), (1, &[12])],
            &[(0, &[11])],
        ],
        vec![
            &[(2, &[3])],
            &[(2, &[8])],
            &[(1, &[2]), (2, &[10])],
            &[(0, &[1]), (1, &[6]), (2, &[13])],
            &[(0, &[4]), (1, &[9])],
            &[(0, &[5]), (1, &[12])],
            &[(0, &[7])],
            &[(0, &[11])],
        ],
    ];
    let below = vec![
        (Cell::new(2, 3), 3),
        (Cell::new(0, 4), 3),
        (Cell::new(1, 4), 1),
        (Cell::new(0, 5), 2),
        (Cell::new(1, 5), 1),
        (Cell::new(0, 6), 2),
        (Cell::new(0, 7), 1),
    ];
    let grid = |rows: &Vec<Row>| rows.iter().map(|r| r.iter().map(|&(x, l)| (x, l.to_vec())).collect()).collect();
    (frames.iter().map(grid).collect(), below)
}

/// Mismatches between the traced run of the worked example and its
/// printed frames, plus the inverse check; empty when everything agrees.
pub fn check_worked_example() -> Vec<String> {
    let (frames_want, below_want) = worked_example_expected();
    let (out, frames) = match rsk_forward_traced(&worked_example()) {
        Ok(x) => x,
        Err(e) => return vec![format!("forward failed: {e}")],
    };
    let mut problems = Vec::new();
    if frames.len() != frames_want.len() {
        problems.push(format!("{} frames, expected {}", frames.len(), frames_want.len()));
    }
    for (i, (f, want)) in frames.iter().zip(&frames_want).enumerate() {
        if &frame_rows(&f.tableau) != want {
            problems.push(format!("frame {} differs", i + 1));
        }
    }
    if out.below.entries().collect::<Vec<_>>() != below_want {
        problems.push("filling below sigma differs".into());
    }
    if rsk_inverse(&out).as_ref() != Ok(&worked_example()) {
        problems.push("inverse does not return the input".into());
    }
    problems
}

/// Every valid forward input for `sigma` with labels at most `max_label`.
pub fn all_inputs(sigma: &SkewShape, max_label: Label) -> Vec<RskInput> {
    let frame = RowFrame::of(sigma);
    let top = sigma.top_row().unwrap_or(0);
    let room: i64 = sigma.columns().values().map(|&(t, _)| t - top).sum();
    let mut out = Vec::new();
    for lambda in column_extensions_growing(sigma, room as usize, Growth::Up) {
        let Ok((above, _)) = above_below_split(&lambda, sigma) else { continue };
        let marks = enumerate_reverse_row_strict_row_weakly_bounded(&above, frame);
        if marks.is_empty() {
            continue;
        }
        let tableaux =
            enumerate_ssvt(&lambda, &SvtQuery { max_label, content: None, excess: ExcessFilter::Any, max_size: None });
        for mark in &marks {
            for t in &tableaux {
                out.push(RskInput {
                    sigma: sigma.clone(),
                    lambda: lambda.clone(),
                    above: mark.clone(),
                    tableau: t.clone(),
                });
            }
        }
    }
    out
}

/// Every valid inverse input for `sigma` with labels at most `max_label`.
pub fn all_outputs(sigma: &SkewShape, max_label: Label) -> Vec<RskOutput> {
    let frame = RowFrame::of(sigma);
    // strict columns cap each column at max_label boxes
    let room: i64 = sigma.columns().values().map(|&(t, b)| (max_label as i64 - (b - t + 1)).max(0)).sum();
    let mut out = Vec::new();
    for mu in column_extensions_growing(sigma, room as usize, Growth::Down) {
        let Ok((_, below)) = above_below_split(&mu, sigma) else { continue };
        let marks = enumerate_reverse_row_strict_row_bounded(&below, frame);
        if marks.is_empty() {
            continue;
        }
        let tableaux = enumerate_fillings(mu.cell_set(), FillingRules::semistandard(max_label));
        for mark in &marks {
            for t in &tableaux {
                out.push(RskOutput { sigma: sigma.clone(), mu: mu.clone(), below: mark.clone(), tableau: t.clone() });
            }
        }
    }
    out
}

/// Tally of an exhaustive round trip over one shape.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct RoundTrip {
    pub inputs: usize,
    pub outputs: usize,
    pub failures: Vec<String>,
}

/// Runs both directions over every valid input and output for `sigma`.
/// Checks that each composite is the identity, that forward images are
/// valid outputs, and that content is kept and excess plus the marks above
/// equals the marks below.
pub fn round_trip(sigma: &SkewShape, max_label: Label) -> RoundTrip {
    let inputs = all_inputs(sigma, max_label);
    let outputs: BTreeSet<RskOutput> = all_outputs(sigma, max_label).into_iter().collect();
    let rows = sigma.row_span();
    let frame = RowFrame::of(sigma);
    let mut report = RoundTrip { inputs: inputs.len(), outputs: outputs.len(), failures: Vec::new() };
    let mut image = BTreeSet::new();
    for input in &inputs {
        let out = match rsk_forward(input) {
            Ok(o) => o,
            Err(e) => {
                report.failures.push(format!("forward failed on {}: {e}", json(input)));
                continue;
            }
        };
        if !outputs.contains(&out) {
            report.failures.push(format!("forward image outside the output set: {}", json(input)));
        }
        let mut c_in = input.tableau.content();
        let mut c_out = out.tableau.to_set_valued().content();
        let n = c_in.len().max(c_out.len());
        c_in.resize(n, 0);
        c_out.resize(n, 0);
        if c_in != c_out {
            report.failures.push(format!("content changed: {}", json(input)));
        }
        let mut lhs = input.tableau.excess(frame, rows);
        for (_, l) in input.above.entries() {
            lhs[l as usize - 1] += 1;
        }
        let rhs = out.below.content(rows);
        if lhs != rhs {
            report.failures.push(format!("excess bookkeeping broken: {}", json(input)));
        }
        match rsk_inverse(&out) {
            Ok(back) if &back == input => {}
            Ok(_) => report.failures.push(format!("inverse(forward) differs: {}", json(input))),
            Err(e) => report.failures.push(format!("inverse failed on image of {}: {e}", json(input))),
        }
        image.insert(out);
    }
    for out in &outputs {
        match rsk_inverse(out).and_then(|i| rsk_forward(&i)) {
            Ok(o) if &o == out => {}
            Ok(_) => report.failures.push(format!("forward(inverse) differs: {}", json(out))),
            Err(e) => report.failures.push(format!("inverse failed on {}: {e}", json(out))),
        }
    }
    if image.len() != outputs.len() && report.failures.is_empty() {
        report.failures.push(format!("image has {} outputs of {}", image.len(), outputs.len()));
    }
    report
}

fn json<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).unwrap_or_default()
}
