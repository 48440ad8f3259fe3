//! Rank-1 pattern spectra by exhaustive search over every cut in a window,
//! with ideal and primality tested on values of monomials in a box.

use cutspec::algebra::PatternAlgebra;
use cutspec::field_model::IdealCut;
use cutspec::ordered_values::Cut;

use super::ideals::has_value;

/// Every rank-1 O_v-submodule with boundary in `[-k, k]`, plus `F` and `{0}`.
pub fn rank1_submodules(k: i64) -> Vec<IdealCut> {
    let mut out = vec![IdealCut::from_boundary(Cut::bottom(1)), IdealCut::from_boundary(Cut::top(1))];
    out.extend((-k..=k).map(|p| IdealCut::from_boundary(Cut::prefix(1, [p]).unwrap())));
    out
}

fn values(j: &IdealCut, b: i64) -> Vec<i64> {
    (-b..=b).filter(|&g| has_value(j, &[g])).collect()
}

fn subset(inner: &IdealCut, outer: &IdealCut, b: i64) -> bool {
    (-b..=b).all(|g| !has_value(inner, &[g]) || has_value(outer, &[g]))
}

/// `J·K ⊆ L` on box values.
fn product_in(j: &IdealCut, k: &IdealCut, l: &IdealCut, b: i64) -> bool {
    let (vj, vk) = (values(j, b), values(k, b));
    vj.iter().all(|a| vk.iter().all(|c| has_value(l, &[a + c])))
}

pub fn is_ideal(r: &PatternAlgebra, grid: &[IdealCut], b: i64) -> bool {
    let n = r.n();
    let k = |i: usize, j: usize| &grid[i * n + j];
    (0..n).all(|i| (0..n).all(|j| subset(k(i, j), r.comp(i, j), b)))
        && (0..n).all(|i| {
            (0..n).all(|m| {
                (0..n).all(|l| {
                    product_in(r.comp(i, m), k(m, l), k(i, l), b) && product_in(k(i, m), r.comp(m, l), k(i, l), b)
                })
            })
        })
}

/// Proper, and `aRb ⊆ I ⇒ a ∈ I or b ∈ I` for monomials `a, b` with box values.
pub fn is_prime(r: &PatternAlgebra, grid: &[IdealCut], b: i64) -> bool {
    let n = r.n();
    let k = |i: usize, j: usize| &grid[i * n + j];
    let proper = (0..n * n).any(|p| !subset(&r.components()[p], &grid[p], b));
    if !proper {
        return false;
    }
    let monos: Vec<(usize, usize, i64)> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .flat_map(|(i, j)| values(r.comp(i, j), b).into_iter().map(move |a| (i, j, a)))
        .collect();
    for &(i, j, alpha) in &monos {
        if has_value(k(i, j), &[alpha]) {
            continue;
        }
        for &(kk, l, beta) in &monos {
            if has_value(k(kk, l), &[beta]) {
                continue;
            }
            let middle = values(r.comp(j, kk), b);
            if middle.iter().all(|d| has_value(k(i, l), &[alpha + d + beta])) {
                return false;
            }
        }
    }
    true
}

/// Every prime grid with components drawn from [`rank1_submodules`].
pub fn brute_primes(r: &PatternAlgebra, k: i64, b: i64) -> Vec<Vec<IdealCut>> {
    let cells = r.n() * r.n();
    let choices: Vec<Vec<IdealCut>> = (0..cells)
        .map(|p| rank1_submodules(k).into_iter().filter(|c| subset(c, &r.components()[p], b)).collect())
        .collect();
    let mut out = Vec::new();
    let mut idx = vec![0usize; cells];
    loop {
        let grid: Vec<IdealCut> = idx.iter().enumerate().map(|(p, &i)| choices[p][i].clone()).collect();
        if is_ideal(r, &grid, b) && is_prime(r, &grid, b) {
            out.push(grid);
        }
        let mut p = 0;
        loop {
            if p == cells {
                return out;
            }
            idx[p] += 1;
            if idx[p] < choices[p].len() {
                break;
            }
            idx[p] = 0;
            p += 1;
        }
    }
}
