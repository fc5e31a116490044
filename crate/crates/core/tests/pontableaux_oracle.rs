//! Independent enumeration of strata through ramification tables: choose
//! `alpha^n` and `beta^n` directly, keep the tables meeting the nonemptiness
//! and compatibility conditions, and compare with the border enumeration and
//! its strata order.

use std::collections::BTreeMap;

use pontableau::pontableaux::{enumerate_pontableaux, Pontableau, StrataPoset};
use pontableau::shapes::{BnData, Border};

/// Non-decreasing tuples of length `len` with entries in `lo..=hi`.
fn tuples(len: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|t: Vec<i64>| {
                let start = t.last().copied().unwrap_or(lo);
                (start..=hi).map(move |v| {
                    let mut next = t.clone();
                    next.push(v);
                    next
                })
            })
            .collect();
    }
    out
}

type Table = (Vec<Vec<i64>>, Vec<Vec<i64>>);

/// All `(alpha^1..alpha^g, beta^1..beta^g)` with `alpha^1 = alpha`,
/// `beta^g = beta`, `alpha^n_i + beta^n_{r-i} <= d - r` with at most one
/// equality, and `alpha^{n+1}_i + beta^n_{r-i} >= d - r`.
fn ramification_tables(data: &BnData, margin: i64) -> Vec<Table> {
    let g = data.g as usize;
    let r = data.r as usize;
    let bound = data.d - data.r;
    let pool = tuples(r + 1, -margin, bound + margin);
    let nonempty = |a: &[i64], b: &[i64]| {
        let sums: Vec<i64> = (0..=r).map(|i| a[i] + b[r - i]).collect();
        sums.iter().all(|&s| s <= bound) && sums.iter().filter(|&&s| s == bound).count() <= 1
    };
    let compatible = |next: &[i64], b: &[i64]| (0..=r).all(|i| next[i] + b[r - i] >= bound);
    let mut out = Vec::new();
    let mut stack: Vec<Table> = vec![(vec![data.alpha.clone()], Vec::new())];
    while let Some((alphas, betas)) = stack.pop() {
        let n = betas.len() + 1;
        let a = alphas.last().unwrap();
        if n == g {
            if nonempty(a, &data.beta) {
                let mut betas = betas.clone();
                betas.push(data.beta.clone());
                out.push((alphas.clone(), betas));
            }
            continue;
        }
        for b in pool.iter().filter(|b| nonempty(a, b)) {
            for next in pool.iter().filter(|next| compatible(next, b)) {
                let (mut alphas, mut betas) = (alphas.clone(), betas.clone());
                alphas.push(next.clone());
                betas.push(b.clone());
                stack.push((alphas, betas));
            }
        }
    }
    out
}

fn to_pontableau(data: &BnData, (alphas, betas): &Table) -> Pontableau {
    let r = data.r as usize;
    let lambdas = alphas
        .iter()
        .enumerate()
        .map(|(k, a)| Border::new(a.iter().map(|x| k as i64 - x).collect()).unwrap())
        .collect();
    let rhos = betas
        .iter()
        .enumerate()
        .map(|(k, b)| {
            let shift = k as i64 + 1 - data.d + data.r;
            Border::new((0..=r).map(|j| b[r - j] + shift).collect()).unwrap()
        })
        .collect();
    Pontableau::new(data, lambdas, rhos).expect("table conditions give a pontableau")
}

fn check_family(data: &BnData) -> (usize, BTreeMap<i64, usize>, i64) {
    let margin = 2;
    let tables = ramification_tables(data, margin);
    let bound = data.d - data.r;
    for (alphas, betas) in &tables {
        let touches = alphas.iter().chain(betas).flatten().any(|&v| v == -margin || v == bound + margin);
        assert!(!touches, "search box too small for {data:?}");
    }
    let mut from_tables: Vec<Pontableau> = tables.iter().map(|t| to_pontableau(data, t)).collect();
    let mut from_borders = enumerate_pontableaux(data);
    from_tables.sort();
    from_borders.sort();
    assert_eq!(from_tables, from_borders, "{data:?}");

    let strata = StrataPoset::new(data);
    let index: BTreeMap<&Pontableau, usize> = strata.nodes.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let by_table: Vec<(usize, &Table)> = tables.iter().map(|t| (index[&to_pontableau(data, t)], t)).collect();
    for &(i, (a1, b1)) in &by_table {
        for &(j, (a2, b2)) in &by_table {
            // Smaller strata carry larger ramification.
            let dominated = a1.iter().flatten().zip(a2.iter().flatten()).all(|(x, y)| x >= y)
                && b1.iter().flatten().zip(b2.iter().flatten()).all(|(x, y)| x >= y);
            assert_eq!(strata.poset.leq(i, j), dominated, "{data:?}: {i} vs {j}");
        }
    }
    assert!(strata.mobius_mismatches().is_empty());
    (strata.nodes.len(), strata.dimension_counts(), strata.euler_characteristic())
}

#[test]
fn two_elliptic_curves_with_ramification() {
    let data = BnData::new(2, 1, 4, vec![0, 0], vec![0, 2]).unwrap();
    assert_eq!(check_family(&data), (12, BTreeMap::from([(0, 2), (1, 5), (2, 5)]), -1));
}

#[test]
fn genus_four_pencils_of_degree_two() {
    let data = BnData::new(4, 0, 2, vec![0], vec![0]).unwrap();
    assert_eq!(check_family(&data), (28, BTreeMap::from([(0, 6), (1, 12), (2, 10)]), 3));
}

#[test]
fn genus_five_pencils_of_degree_four() {
    let data = BnData::new(5, 1, 4, vec![0, 0], vec![0, 0]).unwrap();
    assert_eq!(check_family(&data), (40, BTreeMap::from([(0, 20), (1, 20)]), -10));
}

#[test]
fn assorted_small_families() {
    for (g, r, d, alpha, beta) in [
        (1, 0, 1, vec![0], vec![0]),
        (2, 1, 3, vec![0, 0], vec![0, 0]),
        (3, 1, 3, vec![0, 0], vec![0, 1]),
        (3, 2, 4, vec![0, 0, 1], vec![0, 0, 0]),
        (3, 0, 1, vec![1], vec![0]),
    ] {
        check_family(&BnData::new(g, r, d, alpha, beta).unwrap());
    }
}
