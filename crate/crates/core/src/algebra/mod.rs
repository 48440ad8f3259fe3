//! Concrete O_v-algebras: pattern matrix rings and monomial algebras.
//!
//! Both kinds store elements as a vector of field-model coordinates: matrix
//! entries in row-major order, or coefficients on a fixed O_v-basis.

mod monomial;
mod pattern;
pub mod sampling;

use std::fmt;

use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;
use crate::field_model::{IdealCut, ModelElem, Val};
use crate::ordered_values::{Cut, CutOrInfty, GroupElem};

pub use monomial::{MonomialAlgebra, TableEntry};
pub use pattern::{PatternAlgebra, ValMatrix};
pub use sampling::{sample_elements, sample_pairs, sample_scalars, cancels_leading_terms};

/// An algebra element as its ambient coordinates.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Element(pub Vec<ModelElem>);

impl Element {
    pub fn coords(&self) -> &[ModelElem] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(ModelElem::is_zero)
    }

    /// `t^γ` at one ambient position, zero elsewhere.
    pub fn unit_at(width: usize, pos: usize, gamma: &GroupElem) -> Self {
        let mut coords = vec![ModelElem::zero(); width];
        coords[pos] = ModelElem::t_pow(gamma.clone());
        Self(coords)
    }

    /// Minimum valuation over all coordinates.
    pub fn min_valuation(&self) -> Val {
        self.0.iter().map(ModelElem::valuation).min().unwrap_or(Val::Infinite)
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

/// Outcome of the units-and-torsion test: `R` torsion-free and every
/// `a ∈ O_v` with `a·1` invertible in `R` already a unit of O_v.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionB {
    pub holds: bool,
    pub torsion_free: bool,
    /// `γ > 0` with `t^γ · 1` invertible in `R`.
    pub unit_witness: Option<GroupElem>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub kind: &'static str,
    pub rank: usize,
    pub dim: usize,
    pub unital: bool,
    pub torsion_free: bool,
    pub faithful: bool,
}

/// The operations every algebra kind provides. Ring operations act on
/// normalized coordinate vectors; spectral hooks describe ideals as one
/// [`IdealCut`] per ambient position.
pub trait Algebra {
    fn rank(&self) -> usize;
    /// Number of ambient coordinates.
    fn width(&self) -> usize;
    /// `dim_F(R ⊗ F)`.
    fn dim(&self) -> usize;
    fn is_unital(&self) -> bool;
    fn is_torsion_free(&self) -> bool;
    fn is_faithful(&self) -> bool;
    fn kind(&self) -> &'static str;

    fn one(&self) -> Option<Element>;
    fn normalize(&self, x: Element) -> Element;
    fn mul(&self, x: &Element, y: &Element) -> Element;
    fn contains(&self, x: &Element) -> bool;
    /// Filter quasi-valuation: the value set of the O_v-support.
    fn filter_value(&self, x: &Element) -> Result<CutOrInfty>;
    fn condition_b(&self) -> ConditionB;
    /// Random element with leading values drawn within `spread` of the
    /// component boundaries.
    fn sample_elem(&self, rng: &mut ChaCha8Rng, spread: i64) -> Element;
    fn position_name(&self, pos: usize) -> String;

    /// Largest component per position (`J_ij`, or `O_v` on a basis element).
    fn full_component(&self, pos: usize) -> IdealCut;
    /// The zero ideal's component per position (`{0}`, or `Ann_i`).
    fn floor_component(&self, pos: usize) -> IdealCut;
    /// Components tried by spectrum enumeration, deduplicated.
    fn candidate_components(&self, pos: usize) -> Vec<IdealCut>;
    /// `None` when the grid is a two-sided ideal, else a description of a
    /// failing product.
    fn ideal_violation(&self, grid: &[IdealCut]) -> Option<String>;
    /// Whether `a R b ⊆ grid` for monomials `a = t^α` at `a.0`, `b = t^β` at `b.0`.
    fn sandwich_contained(
        &self,
        a: (usize, &GroupElem),
        b: (usize, &GroupElem),
        grid: &[IdealCut],
    ) -> bool;
    /// Whether every partial ideal condition involving only positions `< upto`
    /// holds; used to prune enumeration.
    fn partial_ideal_ok(&self, grid: &[IdealCut], upto: usize) -> bool;
    /// `{a ∈ O_v : a·1 ∈ grid}`.
    fn contraction(&self, grid: &[IdealCut]) -> IdealCut;

    fn zero(&self) -> Element {
        Element(vec![ModelElem::zero(); self.width()])
    }

    fn add(&self, x: &Element, y: &Element) -> Element {
        let coords = x.0.iter().zip(&y.0).map(|(a, b)| a + b).collect();
        self.normalize(Element(coords))
    }

    fn neg(&self, x: &Element) -> Element {
        Element(x.0.iter().map(|a| -a).collect())
    }

    fn sub(&self, x: &Element, y: &Element) -> Element {
        self.add(x, &self.neg(y))
    }

    fn scalar(&self, c: &ModelElem, x: &Element) -> Element {
        self.normalize(Element(x.0.iter().map(|a| c * a).collect()))
    }

    fn is_zero(&self, x: &Element) -> bool {
        x.is_zero()
    }

    fn validate_report(&self) -> ValidationReport {
        ValidationReport {
            kind: self.kind(),
            rank: self.rank(),
            dim: self.dim(),
            unital: self.is_unital(),
            torsion_free: self.is_torsion_free(),
            faithful: self.is_faithful(),
        }
    }

    /// Whether every generator module of `R` is finitely generated as an
    /// O_v-module: each nonzero component is `t^γ O_v`.
    fn is_finitely_generated(&self) -> bool {
        (0..self.width()).all(|p| {
            let j = self.full_component(p);
            j.is_zero() || j.principal_value().is_some()
        })
    }

    /// Largest absolute integer among the component boundaries (and
    /// structure shifts); cut comparisons only see values below this scale.
    fn max_param(&self) -> i64 {
        (0..self.width())
            .flat_map(|p| [self.full_component(p), self.floor_component(p)])
            .map(|j| j.boundary().max_abs())
            .max()
            .unwrap_or(0)
    }

    /// The grid of the whole algebra.
    fn full_grid(&self) -> Vec<IdealCut> {
        (0..self.width()).map(|p| self.full_component(p)).collect()
    }

    /// The grid of the zero ideal.
    fn floor_grid(&self) -> Vec<IdealCut> {
        (0..self.width()).map(|p| self.floor_component(p)).collect()
    }
}

/// Either kind of algebra behind one type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraInstance {
    Pattern(PatternAlgebra),
    Monomial(MonomialAlgebra),
}

macro_rules! dispatch {
    ($self:ident, $a:ident => $e:expr) => {
        match $self {
            AlgebraInstance::Pattern($a) => $e,
            AlgebraInstance::Monomial($a) => $e,
        }
    };
}

impl Algebra for AlgebraInstance {
    fn rank(&self) -> usize {
        dispatch!(self, a => a.rank())
    }
    fn width(&self) -> usize {
        dispatch!(self, a => a.width())
    }
    fn dim(&self) -> usize {
        dispatch!(self, a => a.dim())
    }
    fn is_unital(&self) -> bool {
        dispatch!(self, a => a.is_unital())
    }
    fn is_torsion_free(&self) -> bool {
        dispatch!(self, a => a.is_torsion_free())
    }
    fn is_faithful(&self) -> bool {
        dispatch!(self, a => a.is_faithful())
    }
    fn kind(&self) -> &'static str {
        dispatch!(self, a => a.kind())
    }
    fn one(&self) -> Option<Element> {
        dispatch!(self, a => a.one())
    }
    fn normalize(&self, x: Element) -> Element {
        dispatch!(self, a => a.normalize(x))
    }
    fn mul(&self, x: &Element, y: &Element) -> Element {
        dispatch!(self, a => a.mul(x, y))
    }
    fn contains(&self, x: &Element) -> bool {
        dispatch!(self, a => a.contains(x))
    }
    fn filter_value(&self, x: &Element) -> Result<CutOrInfty> {
        dispatch!(self, a => a.filter_value(x))
    }
    fn condition_b(&self) -> ConditionB {
        dispatch!(self, a => a.condition_b())
    }
    fn sample_elem(&self, rng: &mut ChaCha8Rng, spread: i64) -> Element {
        dispatch!(self, a => a.sample_elem(rng, spread))
    }
    fn position_name(&self, pos: usize) -> String {
        dispatch!(self, a => a.position_name(pos))
    }
    fn full_component(&self, pos: usize) -> IdealCut {
        dispatch!(self, a => a.full_component(pos))
    }
    fn floor_component(&self, pos: usize) -> IdealCut {
        dispatch!(self, a => a.floor_component(pos))
    }
    fn candidate_components(&self, pos: usize) -> Vec<IdealCut> {
        dispatch!(self, a => a.candidate_components(pos))
    }
    fn ideal_violation(&self, grid: &[IdealCut]) -> Option<String> {
        dispatch!(self, a => a.ideal_violation(grid))
    }
    fn sandwich_contained(
        &self,
        x: (usize, &GroupElem),
        y: (usize, &GroupElem),
        grid: &[IdealCut],
    ) -> bool {
        dispatch!(self, a => a.sandwich_contained(x, y, grid))
    }
    fn partial_ideal_ok(&self, grid: &[IdealCut], upto: usize) -> bool {
        dispatch!(self, a => a.partial_ideal_ok(grid, upto))
    }
    fn contraction(&self, grid: &[IdealCut]) -> IdealCut {
        dispatch!(self, a => a.contraction(grid))
    }
    fn max_param(&self) -> i64 {
        dispatch!(self, a => a.max_param())
    }
}

impl From<PatternAlgebra> for AlgebraInstance {
    fn from(a: PatternAlgebra) -> Self {
        Self::Pattern(a)
    }
}

impl From<MonomialAlgebra> for AlgebraInstance {
    fn from(a: MonomialAlgebra) -> Self {
        Self::Monomial(a)
    }
}

pub fn validate(r: &impl Algebra) -> ValidationReport {
    r.validate_report()
}

pub fn filter_qv(r: &impl Algebra, x: &Element) -> Result<CutOrInfty> {
    r.filter_value(x)
}

pub fn check_condition_b(r: &impl Algebra) -> ConditionB {
    r.condition_b()
}

/// Contraction of an ideal grid, after checking it is an ideal.
pub fn contraction(r: &impl Algebra, grid: &[IdealCut]) -> Result<IdealCut> {
    if grid.len() != r.width() {
        return Err(crate::Error::NotIdeal(format!(
            "grid has {} components, algebra has {}",
            grid.len(),
            r.width()
        )));
    }
    if let Some(w) = r.ideal_violation(grid) {
        return Err(crate::Error::NotIdeal(w));
    }
    Ok(r.contraction(grid))
}

/// Units-condition test shared by both kinds: `1 ∈ aR` for some `a` with
/// positive value exactly when the support value of `1` exceeds zero.
pub(crate) fn units_witness(r: &impl Algebra) -> Option<GroupElem> {
    let one = r.one()?;
    let rank = r.rank();
    let w = r.filter_value(&one).ok()?;
    let zero = CutOrInfty::Finite(Cut::zero(rank));
    if w <= zero {
        return None;
    }
    // Left set strictly contains (−∞, 0], so it contains ε.
    Some(GroupElem::epsilon(rank))
}
