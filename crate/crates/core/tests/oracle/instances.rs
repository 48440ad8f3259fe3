//! Random valid pattern algebras for property tests.

use cutspec::algebra::PatternAlgebra;
use cutspec::field_model::IdealCut;
use cutspec::ordered_values::{GroupElem, IsolatedSubgroup};
use rand::Rng;

fn diagonal(rng: &mut impl Rng, rank: usize) -> IdealCut {
    match rng.gen_range(0..6) {
        0 => IdealCut::field(rank),
        1 if rank > 1 => IdealCut::localization(&IsolatedSubgroup::new(rank, rng.gen_range(1..rank)).unwrap()),
        _ => IdealCut::ov(rank),
    }
}

fn off_diagonal(rng: &mut impl Rng, rank: usize, spread: i64) -> IdealCut {
    match rng.gen_range(0..8) {
        0 | 1 => IdealCut::zero(rank),
        2 => IdealCut::ov(rank),
        3 => IdealCut::iv(rank),
        4 => IdealCut::field(rank),
        5 if rank > 1 => IdealCut::prime(&IsolatedSubgroup::new(rank, rng.gen_range(1..rank)).unwrap()),
        _ => IdealCut::principal(&GroupElem::new((0..rank).map(|_| rng.gen_range(-spread..=spread)))),
    }
}

/// A unital, multiplicatively closed pattern algebra; off-diagonal entries
/// are redrawn until closure holds.
pub fn random_pattern(rng: &mut impl Rng, rank: usize, n: usize, spread: i64) -> PatternAlgebra {
    let diag: Vec<IdealCut> = (0..n).map(|_| diagonal(rng, rank)).collect();
    for attempt in 0.. {
        let comps: Vec<IdealCut> = (0..n * n)
            .map(|p| {
                let (i, j) = (p / n, p % n);
                if i == j {
                    diag[i].clone()
                } else if attempt > 200 {
                    IdealCut::zero(rank)
                } else {
                    off_diagonal(rng, rank, spread)
                }
            })
            .collect();
        if let Ok(r) = PatternAlgebra::new(rank, n, comps) {
            return r;
        }
    }
    unreachable!()
}
