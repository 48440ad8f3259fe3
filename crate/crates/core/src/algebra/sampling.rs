//! Reproducible random elements. All draws come from a `ChaCha8Rng` seeded
//! by the caller.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{Algebra, Element};
use crate::field_model::{rational, IdealCut, ModelElem, Val};
use crate::ordered_values::{CutRepr, GroupElem};

pub const DEFAULT_SPREAD: i64 = 4;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A value of `j` near its boundary, or `None` for a zero entry (always for
/// `j = {0}`, otherwise with probability 1/6).
pub fn sample_value_in(j: &IdealCut, rng: &mut ChaCha8Rng, spread: i64) -> Option<GroupElem> {
    if j.is_zero() || rng.gen_ratio(1, 6) {
        return None;
    }
    let rank = j.rank();
    let mut coords: Vec<i64> = (0..rank).map(|_| rng.gen_range(-spread..=spread)).collect();
    if let CutRepr::Prefix(p) = j.boundary().repr() {
        let k = p.len();
        let bump = rng.gen_range(0..k);
        coords[..bump].copy_from_slice(&p[..bump]);
        coords[bump] = p[bump] + 1 + rng.gen_range(0..=spread);
    }
    Some(GroupElem::new(coords))
}

/// A value `≥ 0`, or `None` with probability 1/5 when `allow_none`.
pub fn sample_nonnegative(
    rank: usize,
    rng: &mut ChaCha8Rng,
    spread: i64,
    allow_none: bool,
) -> Option<GroupElem> {
    if allow_none && rng.gen_ratio(1, 5) {
        return None;
    }
    let g = GroupElem::new((0..rank).map(|_| rng.gen_range(-spread..=spread)));
    Some(if g.is_negative() { -g } else { g })
}

fn sample_positive(rank: usize, rng: &mut ChaCha8Rng, spread: i64) -> GroupElem {
    let g = sample_nonnegative(rank, rng, spread, false).expect("always some");
    if g.is_zero() {
        GroupElem::epsilon(rank)
    } else {
        g
    }
}

fn sample_coef(rng: &mut ChaCha8Rng) -> num_rational::BigRational {
    let mut num = rng.gen_range(-5i64..=4);
    if num >= 0 {
        num += 1;
    }
    rational(num, rng.gen_range(1..=3))
}

/// A one-to-three term field element with valuation exactly `lead`.
pub fn sample_entry(lead: &GroupElem, rng: &mut ChaCha8Rng, spread: i64) -> ModelElem {
    let mut x = ModelElem::monomial(sample_coef(rng), lead.clone());
    for _ in 0..rng.gen_range(0..=2) {
        let exp = lead + &sample_positive(lead.rank(), rng, spread);
        x = &x + &ModelElem::monomial(sample_coef(rng), exp);
    }
    // Extra terms may cancel each other but never the leading one.
    debug_assert_eq!(x.valuation(), Val::Finite(lead.clone()));
    x
}

pub fn sample_elements<A: Algebra + ?Sized>(r: &A, count: usize, seed: u64) -> Vec<Element> {
    let mut g = rng(seed);
    (0..count).map(|_| r.sample_elem(&mut g, DEFAULT_SPREAD)).collect()
}

/// Nonzero scalars of O_v, with a zero every so often.
pub fn sample_scalars(rank: usize, count: usize, seed: u64) -> Vec<ModelElem> {
    let mut g = rng(seed ^ 0x5ca1_ab1e);
    (0..count)
        .map(|i| {
            if i % 17 == 16 {
                return ModelElem::zero();
            }
            let lead = sample_nonnegative(rank, &mut g, DEFAULT_SPREAD, false).expect("always some");
            sample_entry(&lead, &mut g, DEFAULT_SPREAD)
        })
        .collect()
}

/// Random pairs. A quarter are built as `(x, x + t^ε c x + t^{2ε} z)` so
/// that `x − y` cancels leading terms, and another quarter as
/// `(x, −x + t^ε c x + t^{2ε} z)` so that `x + y` does.
pub fn sample_pairs<A: Algebra + ?Sized>(r: &A, count: usize, seed: u64) -> Vec<(Element, Element)> {
    let mut g = rng(seed);
    let rank = r.rank();
    let eps = GroupElem::epsilon(rank);
    let eps2 = eps.scale(2);
    (0..count)
        .map(|i| {
            let x = r.sample_elem(&mut g, DEFAULT_SPREAD);
            let y = match i % 4 {
                0 | 2 => {
                    let c = ModelElem::monomial(sample_coef(&mut g), eps.clone());
                    let z = r.sample_elem(&mut g, DEFAULT_SPREAD);
                    let tail = r.add(&r.scalar(&c, &x), &r.scalar(&ModelElem::t_pow(eps2.clone()), &z));
                    let base = if i % 4 == 0 { x.clone() } else { r.neg(&x) };
                    r.add(&base, &tail)
                }
                _ => r.sample_elem(&mut g, DEFAULT_SPREAD),
            };
            (x, y)
        })
        .collect()
}

/// Whether some coordinate of `x − y` has larger valuation than both
/// coordinates it came from.
pub fn cancels_leading_terms(x: &Element, y: &Element) -> bool {
    x.0.iter().zip(&y.0).any(|(a, b)| {
        !a.is_zero() && !b.is_zero() && (a - b).valuation() > a.valuation().min(b.valuation())
    })
}
