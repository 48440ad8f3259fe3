//! Cuts as explicit lattice-point sets inside a box.

use cutspec::ordered_values::{Cut, CutRepr};
use rand::Rng;

/// Membership in the left set, straight from the definition.
pub fn in_left(c: &Cut, x: &[i64]) -> bool {
    match c.repr() {
        CutRepr::Bottom => false,
        CutRepr::Top => true,
        CutRepr::Prefix(p) => {
            for (xi, pi) in x.iter().zip(p.iter()) {
                if xi < pi {
                    return true;
                }
                if xi > pi {
                    return false;
                }
            }
            true
        }
    }
}

/// Every point of `[-w, w]^rank`, in lexicographic order.
pub fn window(rank: usize, w: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..rank {
        out = out
            .into_iter()
            .flat_map(|p| {
                (-w..=w).map(move |c| {
                    let mut q = p.clone();
                    q.push(c);
                    q
                })
            })
            .collect();
    }
    out
}

pub fn bits(pred: impl Fn(&[i64]) -> bool, pts: &[Vec<i64>]) -> Vec<bool> {
    pts.iter().map(|p| pred(p)).collect()
}

/// Lex-largest point of `left(c) ∩ [-l, l]^rank`, found one coordinate at a
/// time with membership queries only.
pub fn lex_max(c: &Cut, rank: usize, l: i64) -> Option<Vec<i64>> {
    let mut fixed: Vec<i64> = Vec::with_capacity(rank);
    for _ in 0..rank {
        let found = (-l..=l).rev().find(|&v| {
            let mut probe = fixed.clone();
            probe.push(v);
            probe.resize(rank, -l);
            in_left(c, &probe)
        })?;
        fixed.push(found);
    }
    Some(fixed)
}

/// Membership in `left(a) + left(b)`, approximating the supremum of `a` by its
/// largest point in a box of half-width `l`.
pub fn sum_oracle<'a>(a: &Cut, b: &'a Cut, rank: usize, l: i64) -> impl Fn(&[i64]) -> bool + 'a {
    let top = lex_max(a, rank, l);
    move |z| match &top {
        None => false,
        Some(m) => {
            let diff: Vec<i64> = z.iter().zip(m).map(|(x, y)| x - y).collect();
            in_left(b, &diff)
        }
    }
}

pub fn in_sum(a: &Cut, b: &Cut, rank: usize, l: i64, z: &[i64]) -> bool {
    sum_oracle(a, b, rank, l)(z)
}

/// Membership in the `n`-fold sum of `left(a)`.
pub fn multiple_oracle(a: &Cut, n: i64, rank: usize, l: i64) -> impl Fn(&[i64]) -> bool + '_ {
    let top = lex_max(a, rank, l);
    move |z| match &top {
        None => false,
        Some(m) => {
            let diff: Vec<i64> = z.iter().zip(m).map(|(x, y)| x - (n - 1) * y).collect();
            in_left(a, &diff)
        }
    }
}

/// Left sets compared by inclusion on a window.
pub fn cmp_on(a: &Cut, b: &Cut, pts: &[Vec<i64>]) -> std::cmp::Ordering {
    let ab = pts.iter().all(|p| !in_left(a, p) || in_left(b, p));
    let ba = pts.iter().all(|p| !in_left(b, p) || in_left(a, p));
    match (ab, ba) {
        (true, true) => std::cmp::Ordering::Equal,
        (true, false) => std::cmp::Ordering::Less,
        (false, true) => std::cmp::Ordering::Greater,
        (false, false) => panic!("left sets incomparable: {a} vs {b}"),
    }
}

/// Smallest initial set containing the isolated subgroup `H_j`, via its
/// points inside a box.
pub fn in_isolated_hull(rank: usize, j: usize, l: i64, z: &[i64]) -> bool {
    let zeros = rank - j;
    // Any z below some h ∈ H_j ∩ box; the lex-largest such h suffices.
    let h: Vec<i64> = (0..rank).map(|i| if i < zeros { 0 } else { l }).collect();
    z <= &h[..]
}

pub fn random_cut(rng: &mut impl Rng, rank: usize, bound: i64) -> Cut {
    match rng.gen_range(0..10) {
        0 => Cut::bottom(rank),
        1 => Cut::top(rank),
        _ => {
            let k = rng.gen_range(1..=rank);
            Cut::prefix(rank, (0..k).map(|_| rng.gen_range(-bound..=bound))).unwrap()
        }
    }
}

/// Every cut of the given rank with prefix coordinates in `[-bound, bound]`.
pub fn all_cuts(rank: usize, bound: i64) -> Vec<Cut> {
    let mut out = vec![Cut::bottom(rank), Cut::top(rank)];
    for k in 1..=rank {
        for p in window(k, bound) {
            out.push(Cut::prefix(rank, p).unwrap());
        }
    }
    out
}
