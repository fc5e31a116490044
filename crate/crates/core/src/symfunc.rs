//! Skew Schur and Grothendieck polynomials, the row-refined Grothendieck
//! polynomial, and its expansion into skew Schur polynomials of column
//! extensions.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use thiserror::Error;

use crate::poly::{Monomial, Ring, TruncatedPolynomial};
use crate::shapes::{above_below_split, column_extensions, Cell, SkewShape};
use crate::tableaux::{fillings_by_content, for_each_ssvt, ExcessFilter, FillingRules, Label, RowFrame, SvtQuery};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SymError {
    #[error("{n_w} w-variables cannot track the {rows} rows of the shape")]
    TooFewRowVariables { n_w: usize, rows: usize },
    #[error("coefficient mismatch at {monomial}: direct {direct}, expansion {expanded}")]
    Mismatch { monomial: String, direct: String, expanded: String },
}

fn mask_content(masks: &[u64], n_x: usize) -> Vec<u32> {
    let mut c = vec![0u32; n_x];
    for &m in masks {
        let mut m = m;
        while m != 0 {
            let b = m.trailing_zeros() as usize;
            c[b] += 1;
            m &= m - 1;
        }
    }
    c
}

/// `s_mu` in `x_1..x_{n_x}`: one monomial per semistandard filling.
pub fn skew_schur(shape: &SkewShape, n_x: usize, max_deg: u32) -> TruncatedPolynomial {
    let ring = Ring { n_x, n_w: 0, max_deg };
    let mut p = TruncatedPolynomial::zero(ring);
    if shape.len() as u32 > max_deg {
        return p;
    }
    let rules = FillingRules::semistandard(n_x as Label);
    for (content, count) in fillings_by_content(shape.cell_set(), rules, n_x) {
        p.add_monomial(Monomial { x: content, w: Vec::new() }, BigInt::from(count));
    }
    p
}

/// Stable Grothendieck polynomial `G_sigma`: signed sum over semistandard
/// set-valued fillings, sign `(-1)^(|T| - |sigma|)`.
pub fn skew_grothendieck(shape: &SkewShape, n_x: usize, max_deg: u32) -> TruncatedPolynomial {
    let refined = row_refined_grothendieck(shape, n_x, shape.row_span(), max_deg).expect("enough w-variables");
    refined.at_w_equals_one()
}

/// Row-refined `RG_sigma`: each filling contributes
/// `(-1)^|e| x^content w^excess`.
pub fn row_refined_grothendieck(
    shape: &SkewShape,
    n_x: usize,
    n_w: usize,
    max_deg: u32,
) -> Result<TruncatedPolynomial, SymError> {
    let rows = shape.row_span();
    if n_w < rows {
        return Err(SymError::TooFewRowVariables { n_w, rows });
    }
    let ring = Ring { n_x, n_w, max_deg };
    let mut p = TruncatedPolynomial::zero(ring);
    if shape.len() as u32 > max_deg {
        return Ok(p);
    }
    let frame = RowFrame::of(shape);
    let row_of: Vec<usize> = shape.cells().map(|c| (frame.index(c.y) - 1) as usize).collect();
    let mut acc: BTreeMap<Monomial, i64> = BTreeMap::new();
    let query = SvtQuery::bounded(n_x as Label, max_deg as usize);
    for_each_ssvt(shape, &query, |masks| {
        let x = mask_content(masks, n_x);
        let mut w = vec![0u32; n_w];
        for (i, &m) in masks.iter().enumerate() {
            w[row_of[i]] += m.count_ones() - 1;
        }
        let sign = if w.iter().sum::<u32>() % 2 == 0 { 1 } else { -1 };
        *acc.entry(Monomial { x, w }).or_insert(0) += sign;
    });
    for (m, c) in acc {
        p.add_monomial(m, BigInt::from(c));
    }
    Ok(p)
}

/// The pieces of `mu \ sigma` above and below `sigma`, with the number of
/// admissible fillings of each keyed by content (indexed by row of
/// `sigma`).
#[derive(Clone, Debug)]
pub struct ColumnExtension {
    pub mu: SkewShape,
    pub above: Vec<Cell>,
    pub below: Vec<Cell>,
    /// `e -> a_{sigma, mu, e}`.
    pub coefficients: BTreeMap<Vec<u32>, u64>,
}

/// For a column extension `mu` of `sigma`, counts pairs of fillings (row
/// weakly bounded semistandard above, reverse row strict row bounded below)
/// by their combined content. Returns `None` when `mu` is not a column
/// extension.
pub fn expansion_coefficients(sigma: &SkewShape, mu: &SkewShape) -> Option<BTreeMap<Vec<u32>, u64>> {
    let (above, below) = above_below_split(mu, sigma).ok()?;
    let frame = RowFrame::of(sigma);
    let rows = sigma.row_span();
    // labels above are capped by their row, which sits inside sigma; labels
    // below are capped by the first row under sigma in their column
    let len = rows.max(1);
    let top = fillings_by_content(&above, FillingRules::row_weakly_bounded_semistandard(frame), len + 1);
    let bottom = fillings_by_content(&below, FillingRules::reverse_row_strict_row_bounded(frame), len + 1);
    let mut out = BTreeMap::new();
    for (c1, n1) in &top {
        for (c2, n2) in &bottom {
            let mut e: Vec<u32> = c1.iter().zip(c2).map(|(a, b)| a + b).collect();
            assert!(e[len..].iter().all(|&v| v == 0), "filling label beyond the rows of sigma");
            e.truncate(rows);
            *out.entry(e).or_insert(0) += n1 * n2;
        }
    }
    Some(out)
}

/// `a_{sigma, mu, e}` for a single excess vector.
pub fn expansion_coefficient(sigma: &SkewShape, mu: &SkewShape, e: &[u32]) -> u64 {
    let mut e = e.to_vec();
    e.resize(sigma.row_span(), 0);
    expansion_coefficients(sigma, mu).and_then(|m| m.get(&e).copied()).unwrap_or(0)
}

/// Column extensions of `sigma` with at most `extra` new boxes, each with
/// its nonzero coefficients.
pub fn column_extensions_with_coefficients(sigma: &SkewShape, extra: usize) -> Vec<ColumnExtension> {
    column_extensions(sigma, extra)
        .into_iter()
        .filter_map(|mu| {
            let coefficients = expansion_coefficients(sigma, &mu)?;
            if coefficients.is_empty() {
                return None;
            }
            let (above, below) = above_below_split(&mu, sigma).ok()?;
            Some(ColumnExtension {
                mu,
                above: above.into_iter().collect(),
                below: below.into_iter().collect(),
                coefficients,
            })
        })
        .collect()
}

/// `sum_{mu, e} (-1)^|below| a_{sigma,mu,e} s_mu w^e`, truncated.
pub fn refined_expansion(
    sigma: &SkewShape,
    n_x: usize,
    n_w: usize,
    max_deg: u32,
) -> Result<TruncatedPolynomial, SymError> {
    let rows = sigma.row_span();
    if n_w < rows {
        return Err(SymError::TooFewRowVariables { n_w, rows });
    }
    let ring = Ring { n_x, n_w, max_deg };
    let mut total = TruncatedPolynomial::zero(ring);
    let extra = (max_deg as usize).saturating_sub(sigma.len());
    if sigma.len() as u32 > max_deg {
        return Ok(total);
    }
    for ext in column_extensions_with_coefficients(sigma, extra) {
        let schur = skew_schur(&ext.mu, n_x, max_deg).widen_w(n_w);
        let sign = if ext.below.len() % 2 == 0 { 1 } else { -1 };
        for (e, a) in &ext.coefficients {
            let mut w = e.clone();
            w.resize(n_w, 0);
            let term = schur.times_w(&w).scale(&BigInt::from(sign * *a as i64));
            total = &total + &term;
        }
    }
    Ok(total)
}

/// Compares `RG_sigma` with its expansion, coefficient by coefficient.
pub fn verify_refined_expansion(sigma: &SkewShape, n_x: usize, max_deg: u32) -> Result<(), SymError> {
    let n_w = sigma.row_span();
    let direct = row_refined_grothendieck(sigma, n_x, n_w, max_deg)?;
    let expanded = refined_expansion(sigma, n_x, n_w, max_deg)?;
    if direct == expanded {
        return Ok(());
    }
    let diff = &direct - &expanded;
    let (m, _) = diff.terms().next().expect("polynomials differ");
    Err(SymError::Mismatch {
        monomial: format!("x^{:?} w^{:?}", m.x, m.w),
        direct: direct.coefficient(&m.x, &m.w).to_string(),
        expanded: expanded.coefficient(&m.x, &m.w).to_string(),
    })
}

/// Both sides of the counting identity for one content and excess:
/// `|SS_{c,e}(sigma)|` and `sum_mu (-1)^|above| a_{sigma,mu,e} |SS_{c,0}(mu)|`.
pub fn counting_identity_sides(sigma: &SkewShape, content: &[u32], excess: &[u32]) -> (i64, i64) {
    let mut e = excess.to_vec();
    e.resize(sigma.row_span(), 0);
    let lhs = crate::tableaux::count_ssvt(sigma, content, Some(&e)) as i64;
    let extra: u32 = e.iter().sum();
    let mut rhs = 0i64;
    for mu in column_extensions(sigma, extra as usize) {
        if mu.len() != sigma.len() + extra as usize {
            continue;
        }
        let a = expansion_coefficient(sigma, &mu, &e);
        if a == 0 {
            continue;
        }
        let (above, _) = above_below_split(&mu, sigma).expect("column extension");
        let sign = if above.len() % 2 == 0 { 1 } else { -1 };
        let zeros = vec![0u32; mu.row_span()];
        rhs += sign * a as i64 * crate::tableaux::count_ssvt(&mu, content, Some(&zeros)) as i64;
    }
    (lhs, rhs)
}

/// A failed instance of the counting identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountingFailure {
    pub content: Vec<u32>,
    pub excess: Vec<u32>,
    pub lhs: i64,
    pub rhs: i64,
}

/// Checks the counting identity for every composition `content` with
/// `|sigma| <= |content| <= |sigma| + extra` and every excess. Contents
/// with zero entries reduce to these by relabelling. Returns the number of
/// `(content, excess)` pairs checked and the failures.
pub fn verify_counting_identity(sigma: &SkewShape, extra: usize) -> (usize, Vec<CountingFailure>) {
    let rows = sigma.row_span();
    let n = sigma.len();
    let exts: Vec<ColumnExtension> = column_extensions_with_coefficients(sigma, extra);
    let mut checked = 0;
    let mut failures = Vec::new();
    for k in 0..=extra {
        let size = n + k;
        for content in compositions(size) {
            // left side, bucketed by excess
            let mut lhs: BTreeMap<Vec<u32>, i64> = BTreeMap::new();
            let frame = RowFrame::of(sigma);
            let row_of: Vec<usize> = sigma.cells().map(|c| (frame.index(c.y) - 1) as usize).collect();
            let query = SvtQuery::with_content(content.clone(), ExcessFilter::Any);
            for_each_ssvt(sigma, &query, |masks| {
                let mut e = vec![0u32; rows];
                for (i, &m) in masks.iter().enumerate() {
                    e[row_of[i]] += m.count_ones() - 1;
                }
                *lhs.entry(e).or_insert(0) += 1;
            });
            // right side
            let mut rhs: BTreeMap<Vec<u32>, i64> = BTreeMap::new();
            for ext in exts.iter().filter(|x| x.mu.len() == size) {
                let zeros = vec![0u32; ext.mu.row_span()];
                let count = crate::tableaux::count_ssvt(&ext.mu, &content, Some(&zeros)) as i64;
                if count == 0 {
                    continue;
                }
                let sign = if ext.above.len() % 2 == 0 { 1 } else { -1 };
                for (e, a) in &ext.coefficients {
                    *rhs.entry(e.clone()).or_insert(0) += sign * *a as i64 * count;
                }
            }
            for e in excess_vectors(rows, k as u32) {
                checked += 1;
                let l = lhs.get(&e).copied().unwrap_or(0);
                let r = rhs.get(&e).copied().unwrap_or(0);
                if l != r {
                    failures.push(CountingFailure { content: content.clone(), excess: e, lhs: l, rhs: r });
                }
            }
        }
    }
    (checked, failures)
}

/// Compositions of `n` (no zero parts), in lexicographic order.
pub fn compositions(n: usize) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 1..=n {
        for mut rest in compositions(n - first) {
            rest.insert(0, first as u32);
            out.push(rest);
        }
    }
    out
}

/// Vectors of length `rows` with non-negative entries summing to `total`.
pub fn excess_vectors(rows: usize, total: u32) -> Vec<Vec<u32>> {
    if rows == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in excess_vectors(rows - 1, total - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}
