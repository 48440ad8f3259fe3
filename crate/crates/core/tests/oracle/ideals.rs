//! O_v-submodules of the field as explicit value sets in a box.

use cutspec::field_model::IdealCut;

use super::cuts::{in_left, window};

/// `γ` is the value of a nonzero element of `j`.
pub fn has_value(j: &IdealCut, gamma: &[i64]) -> bool {
    !in_left(j.boundary(), gamma)
}

pub fn values_in_box(j: &IdealCut, w: i64) -> Vec<Vec<i64>> {
    window(j.rank(), w).into_iter().filter(|g| has_value(j, g)).collect()
}

fn add(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Every sum of box values of `j1` and `j2` is a value of `j3`.
pub fn product_contained(j1: &IdealCut, j2: &IdealCut, j3: &IdealCut, w: i64) -> bool {
    let v1 = values_in_box(j1, w);
    let v2 = values_in_box(j2, w);
    v1.iter().all(|a| v2.iter().all(|b| has_value(j3, &add(a, b))))
}

/// `γ + V(divisor) ⊆ V(j)` on box values of the divisor.
pub fn in_colon(j: &IdealCut, divisor: &IdealCut, gamma: &[i64], w: i64) -> bool {
    values_in_box(divisor, w).iter().all(|b| has_value(j, &add(gamma, b)))
}

/// Value-primality on nonnegative box values: `α + β ∈ P ⇒ α ∈ P or β ∈ P`.
pub fn is_value_prime(p: &IdealCut, w: i64) -> bool {
    let nonneg: Vec<Vec<i64>> = window(p.rank(), w)
        .into_iter()
        .filter(|g| g.iter().find(|&&c| c != 0).is_none_or(|&c| c > 0))
        .collect();
    nonneg.iter().all(|a| {
        nonneg
            .iter()
            .all(|b| !has_value(p, &add(a, b)) || has_value(p, a) || has_value(p, b))
    })
}
