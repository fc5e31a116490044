//! Point counts over a finite field against the dimension formula: for
//! fixed P and Q, every complete flag V is enumerated, flags are grouped by
//! their intersection array, and each group's size must grow like p^dim.

use std::collections::BTreeMap;

use pontableau::flagcomb::{
    array_from_flags, dim_y_first_version, dim_y_four_term, Flag, IntersectionArray, Permutation, PrimeField,
};

/// Every complete flag of `F_p^d`, each once, in echelon form: the vector
/// added at each step has a leading 1 in a fresh row and zeros in the rows
/// already used.
fn all_flags(field: PrimeField, d: usize) -> Vec<Flag> {
    fn extend(field: PrimeField, d: usize, used: &mut Vec<usize>, tail: &mut Vec<Vec<u64>>, out: &mut Vec<Flag>) {
        if tail.len() == d {
            let basis: Vec<Vec<u64>> = tail.iter().rev().cloned().collect();
            out.push(Flag::new(field, basis).unwrap());
            return;
        }
        let free: Vec<usize> = (0..d).filter(|r| !used.contains(r)).collect();
        for (pos, &pivot) in free.iter().enumerate() {
            let after = &free[pos + 1..];
            let count = field.p().pow(after.len() as u32);
            for code in 0..count {
                let mut v = vec![0; d];
                v[pivot] = 1;
                let mut c = code;
                for &r in after {
                    v[r] = c % field.p();
                    c /= field.p();
                }
                used.push(pivot);
                tail.push(v);
                extend(field, d, used, tail, out);
                tail.pop();
                used.pop();
            }
        }
    }
    let mut out = Vec::new();
    extend(field, d, &mut Vec::new(), &mut Vec::new(), &mut out);
    out
}

fn strata(field: PrimeField, p: &Flag, q: &Flag) -> BTreeMap<Vec<i64>, (IntersectionArray, u64)> {
    let d = p.d();
    let mut groups: BTreeMap<Vec<i64>, (IntersectionArray, u64)> = BTreeMap::new();
    for v in all_flags(field, d) {
        let a = array_from_flags(field, p, q, &v).unwrap();
        let key = (0..=d)
            .flat_map(|i| (0..=d).flat_map(move |j| (0..=d).map(move |k| (i, j, k))))
            .map(|(i, j, k)| a.get(i, j, k))
            .collect();
        groups.entry(key).or_insert((a, 0)).1 += 1;
    }
    groups
}

/// A dense open subset of an iterated bundle of points and projective lines
/// has between `(p − 2)^dim` and `(p + 1)^dim` points.
fn check(field: PrimeField, p: &Flag, q: &Flag) -> usize {
    let groups = strata(field, p, q);
    let q_size = field.p();
    for (a, count) in groups.values() {
        let dim = dim_y_four_term(a);
        assert_eq!(dim, dim_y_first_version(a));
        let (lo, hi) = ((q_size - 2).pow(dim as u32), (q_size + 1).pow(dim as u32));
        assert!(lo <= *count && *count <= hi, "dim {dim} but {count} points: {a:?}");
    }
    groups.len()
}

#[test]
fn flag_count_is_right() {
    let field = PrimeField::new(3).unwrap();
    assert_eq!(all_flags(field, 3).len(), 13 * 4);
}

#[test]
fn transverse_pair_in_dimension_three() {
    let field = PrimeField::new(11).unwrap();
    let p = Flag::coordinate(&Permutation::identity(3));
    let q = Flag::coordinate(&Permutation::reversal(3));
    assert!(check(field, &p, &q) > 6);
}

#[test]
fn almost_transverse_pair_in_dimension_three() {
    let field = PrimeField::new(11).unwrap();
    let p = Flag::coordinate(&Permutation::identity(3));
    let q = Flag::coordinate(&Permutation::new(vec![2, 0, 1]).unwrap());
    check(field, &p, &q);
}

#[test]
fn arbitrary_pairs_in_dimension_three() {
    let field = PrimeField::new(7).unwrap();
    let p = Flag::coordinate(&Permutation::identity(3));
    for w in Permutation::all(3) {
        check(field, &p, &Flag::coordinate(&w));
    }
}

#[test]
fn transverse_pair_in_dimension_four() {
    let field = PrimeField::new(5).unwrap();
    let p = Flag::coordinate(&Permutation::identity(4));
    let q = Flag::coordinate(&Permutation::reversal(4));
    check(field, &p, &q);
}
