//! Filter values by direct divisibility search: `γ ≥ 0` is in the left set
//! of `w(x)` iff `t^{-γ}·x·g ∈ R` for every O_v-generator `g` of `R` inside a
//! box.

use cutspec::algebra::{Algebra, Element};
use cutspec::field_model::{IdealCut, ModelElem};
use cutspec::ordered_values::GroupElem;

use super::cuts::window;
use super::ideals::has_value;

/// Lex-least value of `j` in `[-b, b]^rank`.
pub fn lex_min_value(j: &IdealCut, b: i64) -> Option<Vec<i64>> {
    window(j.rank(), b).into_iter().find(|g| has_value(j, g))
}

/// One monomial per position at its least box value; every box value of the
/// component is an O_v-multiple of it.
pub fn box_generators<A: Algebra + ?Sized>(r: &A, b: i64) -> Vec<Element> {
    (0..r.width())
        .filter_map(|p| {
            let beta = lex_min_value(&r.full_component(p), b)?;
            let g = r.normalize(Element::unit_at(r.width(), p, &GroupElem::new(beta)));
            (!g.is_zero()).then_some(g)
        })
        .collect()
}

/// `xR ⊆ t^γ R`, tested on the generators.
pub fn divides<A: Algebra + ?Sized>(r: &A, gens: &[Element], x: &Element, gamma: &[i64]) -> bool {
    let inv = ModelElem::t_pow(-GroupElem::new(gamma.to_vec()));
    gens.iter().all(|g| r.contains(&r.scalar(&inv, &r.mul(x, g))))
}

/// Membership of `γ` in the left set of the filter value of `x ≠ 0`.
pub fn filter_left<A: Algebra + ?Sized>(r: &A, gens: &[Element], x: &Element, gamma: &[i64]) -> bool {
    let negative = gamma.iter().find(|&&c| c != 0).is_some_and(|&c| c < 0);
    negative || divides(r, gens, x, gamma)
}
