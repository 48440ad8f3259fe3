//! Quasi-valuations on algebras: axiom checks, the min-formula quasi-valuation
//! of a minimal generating set, and natural extensions to `R ⊗ F`.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::algebra::{sample_pairs, sample_scalars, Algebra, Element};
use crate::algebra::sampling::{cancels_leading_terms, sample_elements};
use crate::error::{Error, Result};
use crate::field_model::{ModelElem, Val};
use crate::ordered_values::{Cut, CutOrInfty, GroupElem};
use crate::verdict::Verdict;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ValueMonoid {
    CutMonoid,
    Gamma,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Filter,
    MinFormula,
    NaturalExtension(Box<Provenance>),
    /// Deliberately broken evaluators used as negative controls.
    Corrupted(String),
}

pub trait QuasiValuation {
    fn evaluate(&self, x: &Element) -> Result<CutOrInfty>;
    fn value_monoid(&self) -> ValueMonoid;
    fn provenance(&self) -> Provenance;
}

pub fn val_to_cut(v: &Val) -> CutOrInfty {
    match v {
        Val::Finite(g) => CutOrInfty::Finite(Cut::embed(g)),
        Val::Infinite => CutOrInfty::Infty,
    }
}

/// The filter quasi-valuation induced by the algebra.
pub struct FilterQv<'a, A: ?Sized> {
    algebra: &'a A,
}

pub fn filter<A: Algebra + ?Sized>(algebra: &A) -> FilterQv<'_, A> {
    FilterQv { algebra }
}

impl<A: Algebra + ?Sized> QuasiValuation for FilterQv<'_, A> {
    fn evaluate(&self, x: &Element) -> Result<CutOrInfty> {
        self.algebra.filter_value(x)
    }
    fn value_monoid(&self) -> ValueMonoid {
        ValueMonoid::CutMonoid
    }
    fn provenance(&self) -> Provenance {
        Provenance::Filter
    }
}

/// Which coordinates the min formula ranges over.
#[derive(Clone, Debug)]
pub enum CoordinateBasis {
    /// A minimal O_v-generating set containing 1.
    Minimal(MinimalBasis),
    /// The ambient coordinates (matrix units), which span `R ⊗ F` over `F`.
    Ambient,
}

/// `w(Σ α_i r_i) = min v(α_i)`.
pub struct MinFormulaQv<'a, A: ?Sized> {
    algebra: &'a A,
    basis: CoordinateBasis,
}

impl<'a, A: Algebra + ?Sized> MinFormulaQv<'a, A> {
    pub fn basis(&self) -> &CoordinateBasis {
        &self.basis
    }

    pub fn algebra(&self) -> &'a A {
        self.algebra
    }
}

pub fn min_formula_qv<A: Algebra + ?Sized>(algebra: &A, basis: MinimalBasis) -> MinFormulaQv<'_, A> {
    MinFormulaQv { algebra, basis: CoordinateBasis::Minimal(basis) }
}

/// Min formula over the ambient coordinates.
pub fn entry_min_qv<A: Algebra + ?Sized>(algebra: &A) -> MinFormulaQv<'_, A> {
    MinFormulaQv { algebra, basis: CoordinateBasis::Ambient }
}

impl<A: Algebra + ?Sized> QuasiValuation for MinFormulaQv<'_, A> {
    fn evaluate(&self, x: &Element) -> Result<CutOrInfty> {
        let coords = match &self.basis {
            CoordinateBasis::Ambient => x.0.clone(),
            CoordinateBasis::Minimal(b) => {
                let c = b.coordinates(x);
                let zero = Val::Finite(GroupElem::zero(self.algebra.rank()));
                if c.iter().any(|a| a.valuation() < zero) {
                    return Err(Error::NotMember(format!("{x:?} is not in the O_v-span of the basis")));
                }
                c
            }
        };
        Ok(val_to_cut(&coords.iter().map(ModelElem::valuation).min().unwrap_or(Val::Infinite)))
    }
    fn value_monoid(&self) -> ValueMonoid {
        ValueMonoid::Gamma
    }
    fn provenance(&self) -> Provenance {
        Provenance::MinFormula
    }
}

/// A quasi-valuation given by a closure.
pub struct FnQv<F> {
    f: F,
    monoid: ValueMonoid,
    provenance: Provenance,
}

impl<F: Fn(&Element) -> Result<CutOrInfty>> FnQv<F> {
    pub fn new(f: F, monoid: ValueMonoid, provenance: Provenance) -> Self {
        Self { f, monoid, provenance }
    }
}

impl<F: Fn(&Element) -> Result<CutOrInfty>> QuasiValuation for FnQv<F> {
    fn evaluate(&self, x: &Element) -> Result<CutOrInfty> {
        (self.f)(x)
    }
    fn value_monoid(&self) -> ValueMonoid {
        self.monoid
    }
    fn provenance(&self) -> Provenance {
        self.provenance.clone()
    }
}

/// Negative control: caps every finite value at zero, breaking homogeneity.
pub fn clamped_at_zero<'a>(
    base: &'a dyn QuasiValuation,
    rank: usize,
) -> FnQv<impl Fn(&Element) -> Result<CutOrInfty> + 'a> {
    let zero = CutOrInfty::Finite(Cut::zero(rank));
    FnQv::new(
        move |x| {
            let v = base.evaluate(x)?;
            Ok(if v.is_infty() { v } else { v.min(zero.clone()) })
        },
        base.value_monoid(),
        Provenance::Corrupted("clamped at zero".into()),
    )
}

/// Negative control: reads only the first nonzero coordinate, breaking the
/// ultrametric inequality under cancellation.
pub fn first_coordinate_only() -> FnQv<impl Fn(&Element) -> Result<CutOrInfty>> {
    FnQv::new(
        |x: &Element| {
            let first = x.0.iter().find(|c| !c.is_zero());
            Ok(first.map_or(CutOrInfty::Infty, |c| val_to_cut(&c.valuation())))
        },
        ValueMonoid::Gamma,
        Provenance::Corrupted("first coordinate only".into()),
    )
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub pairs: usize,
    pub cancelling_pairs: usize,
    pub b1: Verdict,
    pub b2: Verdict,
    pub b3: Verdict,
    pub nonnegative: Verdict,
    pub homogeneity: Verdict,
}

impl AxiomReport {
    pub fn all_pass(&self) -> bool {
        [&self.b1, &self.b2, &self.b3, &self.nonnegative, &self.homogeneity]
            .iter()
            .all(|v| !v.is_fail())
    }
}

fn add(a: &CutOrInfty, b: &CutOrInfty) -> CutOrInfty {
    a.try_add(b).expect("values share a rank")
}

fn first_failure<T>(
    items: impl IntoIterator<Item = T>,
    mut check: impl FnMut(&T) -> Result<Option<String>>,
) -> Verdict {
    for item in items {
        match check(&item) {
            Ok(None) => {}
            Ok(Some(w)) => return Verdict::fail(w),
            Err(e) => return Verdict::fail(e.to_string()),
        }
    }
    Verdict::Pass
}

/// B1–B3, nonnegativity on `R`, and (torsion-free only) homogeneity, on
/// `pairs` sampled pairs including engineered cancellations.
pub fn check_axioms<A: Algebra + ?Sized>(
    w: &dyn QuasiValuation,
    r: &A,
    pairs: usize,
    seed: u64,
) -> AxiomReport {
    let sampled = sample_pairs_dyn(r, pairs, seed);
    let cancelling_pairs = sampled.iter().filter(|(x, y)| cancels_leading_terms(x, y)).count();
    let b1 = match w.evaluate(&r.zero()) {
        Ok(CutOrInfty::Infty) => Verdict::Pass,
        Ok(v) => Verdict::fail(format!("w(0) = {v}")),
        Err(e) => Verdict::fail(e.to_string()),
    };
    let b2 = first_failure(&sampled, |(x, y)| {
        let xy = r.mul(x, y);
        let (wxy, wx, wy) = (w.evaluate(&xy)?, w.evaluate(x)?, w.evaluate(y)?);
        let bound = add(&wx, &wy);
        Ok((wxy < bound).then(|| format!("x = {x:?}, y = {y:?}: w(xy) = {wxy} < {bound}")))
    });
    let b3 = first_failure(&sampled, |(x, y)| {
        let (wx, wy) = (w.evaluate(x)?, w.evaluate(y)?);
        let floor = wx.clone().min(wy.clone());
        for (label, z) in [("x+y", r.add(x, y)), ("x-y", r.sub(x, y))] {
            let wz = w.evaluate(&z)?;
            if wz < floor {
                return Ok(Some(format!("x = {x:?}, y = {y:?}: w({label}) = {wz} < {floor}")));
            }
        }
        Ok(None)
    });
    let zero = CutOrInfty::Finite(Cut::zero(r.rank()));
    let nonnegative = first_failure(sampled.iter().map(|p| &p.0), |x| {
        let wx = w.evaluate(x)?;
        let bottom = wx.finite().is_some_and(Cut::is_bottom);
        Ok((wx < zero || bottom).then(|| format!("w({x:?}) = {wx}")))
    });
    let homogeneity = if r.is_torsion_free() {
        homogeneity_verdict(w, r, &sampled, seed)
    } else {
        Verdict::not_applicable("algebra has O_v-torsion")
    };
    AxiomReport { pairs: sampled.len(), cancelling_pairs, b1, b2, b3, nonnegative, homogeneity }
}

fn sample_pairs_dyn<A: Algebra + ?Sized>(r: &A, count: usize, seed: u64) -> Vec<(Element, Element)> {
    sample_pairs(r, count, seed)
}

fn homogeneity_verdict<A: Algebra + ?Sized>(
    w: &dyn QuasiValuation,
    r: &A,
    sampled: &[(Element, Element)],
    seed: u64,
) -> Verdict {
    let scalars = sample_scalars(r.rank(), sampled.len(), seed);
    first_failure(sampled.iter().zip(&scalars), |((x, _), c)| {
        let lhs = w.evaluate(&r.scalar(c, x))?;
        let rhs = add(&val_to_cut(&c.valuation()), &w.evaluate(x)?);
        Ok((lhs != rhs).then(|| format!("c = {c}, x = {x:?}: w(cx) = {lhs} ≠ {rhs}")))
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VqvReport {
    pub homogeneity: Verdict,
    pub extends_v: Verdict,
    pub one_is_zero: Verdict,
}

impl VqvReport {
    pub fn is_v_qv_with_unit_zero(&self) -> bool {
        self.homogeneity.is_pass() && self.one_is_zero.is_pass()
    }
}

/// Homogeneity `w(cx) = v(c) + w(x)`, `w(c·1) = v(c)`, and `w(1) = 0`.
pub fn check_v_qv<A: Algebra + ?Sized>(
    w: &dyn QuasiValuation,
    r: &A,
    samples: usize,
    seed: u64,
) -> VqvReport {
    let sampled = sample_pairs_dyn(r, samples, seed);
    let homogeneity = homogeneity_verdict(w, r, &sampled, seed);
    let Some(one) = r.one() else {
        let na = || Verdict::not_applicable("algebra has no identity");
        return VqvReport { homogeneity, extends_v: na(), one_is_zero: na() };
    };
    let scalars = sample_scalars(r.rank(), samples, seed.wrapping_add(1));
    let extends_v = first_failure(&scalars, |c| {
        let lhs = w.evaluate(&r.scalar(c, &one))?;
        let rhs = val_to_cut(&c.valuation());
        Ok((lhs != rhs).then(|| format!("c = {c}: w(c·1) = {lhs} ≠ {rhs}")))
    });
    let one_is_zero = match w.evaluate(&one) {
        Ok(v) if v == CutOrInfty::Finite(Cut::zero(r.rank())) => Verdict::Pass,
        Ok(v) => Verdict::fail(format!("w(1) = {v}")),
        Err(e) => Verdict::fail(e.to_string()),
    };
    VqvReport { homogeneity, extends_v, one_is_zero }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Whether `w(cr) = w(c) + w(r)` (left) or `w(rc) = w(r) + w(c)` (right)
/// on every sampled `r`.
pub fn check_stability<A: Algebra + ?Sized>(
    w: &dyn QuasiValuation,
    r: &A,
    c: &Element,
    side: Side,
    samples: usize,
    seed: u64,
) -> Result<bool> {
    let wc = w.evaluate(c)?;
    for x in sample_elements(r, samples, seed) {
        let prod = match side {
            Side::Left => r.mul(c, &x),
            Side::Right => r.mul(&x, c),
        };
        if w.evaluate(&prod)? != add(&wc, &w.evaluate(&x)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A minimal O_v-generating set `B` with `B[0] = 1`, obtained from a
/// monomial generating set `C` by exchanging one generator for `1`.
#[derive(Clone, Debug)]
pub struct MinimalBasis {
    rank: usize,
    width: usize,
    /// Ambient position and monomial value of each generator of `C`.
    generators: Vec<(usize, ModelElem)>,
    /// `1 = Σ alphas[i] · generators[i]`.
    alphas: Vec<ModelElem>,
    pivot: usize,
    elements: Vec<Element>,
}

impl MinimalBasis {
    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// The generator that was exchanged for `1`.
    pub fn replaced(&self) -> Element {
        let (pos, g) = &self.generators[self.pivot];
        let mut coords = vec![ModelElem::zero(); self.width];
        coords[*pos] = g.clone();
        Element(coords)
    }

    pub fn alphas(&self) -> &[ModelElem] {
        &self.alphas
    }

    /// Coordinates of `x` over `B`, in the order of [`Self::elements`].
    pub fn coordinates(&self, x: &Element) -> Vec<ModelElem> {
        let c: Vec<ModelElem> = self
            .generators
            .iter()
            .map(|(pos, g)| &x.0[*pos] * &g.monomial_inverse().expect("monomial generator"))
            .collect();
        let inv = self.alphas[self.pivot].monomial_inverse().expect("unit pivot");
        let u = &c[self.pivot] * &inv;
        let mut out = vec![u.clone()];
        for (i, ci) in c.iter().enumerate() {
            if i != self.pivot {
                out.push(ci - &(&u * &self.alphas[i]));
            }
        }
        out
    }

    /// `Σ coeffs[i] · B[i]` in ambient coordinates.
    pub fn combine(&self, coeffs: &[ModelElem]) -> Element {
        let mut out = vec![ModelElem::zero(); self.width];
        for (c, b) in coeffs.iter().zip(&self.elements) {
            for (o, e) in out.iter_mut().zip(&b.0) {
                *o = &*o + &(c * e);
            }
        }
        Element(out)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }
}

/// Minimal generators of a torsion-free algebra whose components are all
/// principal: one monomial `t^γ` per nonzero position, then the exchange
/// step putting `1` into the set.
pub fn minimal_generators<A: Algebra + ?Sized>(r: &A) -> Result<MinimalBasis> {
    if !r.is_torsion_free() {
        return Err(Error::Precondition("algebra has O_v-torsion".into()));
    }
    let mut gens = Vec::new();
    for pos in 0..r.width() {
        let j = r.full_component(pos);
        if j.is_zero() {
            continue;
        }
        let gamma = j.principal_value().ok_or_else(|| {
            Error::NotFinitelyGenerated(format!(
                "component {j} at {} is not principal",
                r.position_name(pos)
            ))
        })?;
        gens.push((pos, ModelElem::t_pow(gamma)));
    }
    exchange(r, gens)
}

/// Minimal generators from an explicit list of monomial generators, one per
/// nonzero position of the algebra.
pub fn minimal_generators_from<A: Algebra + ?Sized>(r: &A, list: &[Element]) -> Result<MinimalBasis> {
    if !r.is_torsion_free() {
        return Err(Error::Precondition("algebra has O_v-torsion".into()));
    }
    let mut gens: Vec<(usize, ModelElem)> = Vec::new();
    for g in list {
        let support: Vec<usize> = (0..g.0.len()).filter(|&p| !g.0[p].is_zero()).collect();
        let [pos] = support[..] else {
            return Err(Error::Precondition(format!("generator {g:?} is not a single entry")));
        };
        if g.0[pos].as_monomial().is_none() {
            return Err(Error::Precondition(format!("generator {g:?} is not a monomial")));
        }
        if gens.iter().any(|(p, _)| *p == pos) {
            return Err(Error::Precondition(format!("two generators at {}", r.position_name(pos))));
        }
        gens.push((pos, g.0[pos].clone()));
    }
    for pos in 0..r.width() {
        let j = r.full_component(pos);
        let covered = gens.iter().find(|(p, _)| *p == pos);
        match (j.is_zero(), covered) {
            (true, None) => {}
            (true, Some(_)) => {
                return Err(Error::NotMember(format!("generator at zero position {}", r.position_name(pos))))
            }
            (false, None) => {
                return Err(Error::NotFinitelyGenerated(format!(
                    "no generator at {}",
                    r.position_name(pos)
                )))
            }
            (false, Some((_, g))) => {
                if j.principal_value() != g.valuation().finite().cloned() {
                    return Err(Error::NotFinitelyGenerated(format!(
                        "generator {g} does not generate {j} at {}",
                        r.position_name(pos)
                    )));
                }
            }
        }
    }
    gens.sort_by_key(|(p, _)| *p);
    exchange(r, gens)
}

fn exchange<A: Algebra + ?Sized>(r: &A, generators: Vec<(usize, ModelElem)>) -> Result<MinimalBasis> {
    let one = r.one().ok_or_else(|| Error::Precondition("algebra has no identity".into()))?;
    let width = r.width();
    for (pos, c) in one.0.iter().enumerate() {
        if !c.is_zero() && !generators.iter().any(|(p, _)| *p == pos) {
            return Err(Error::Precondition(format!("1 has a coordinate at {}", r.position_name(pos))));
        }
    }
    let alphas: Vec<ModelElem> = generators
        .iter()
        .map(|(pos, g)| &one.0[*pos] * &g.monomial_inverse().expect("monomial generator"))
        .collect();
    let pivot = (0..alphas.len())
        .filter(|&i| !alphas[i].is_zero())
        .min_by_key(|&i| alphas[i].valuation())
        .ok_or_else(|| Error::Precondition("1 is zero".into()))?;
    if alphas[pivot].valuation() != Val::Finite(GroupElem::zero(r.rank())) {
        return Err(Error::Precondition(format!(
            "least coefficient of 1 has value {:?}, not 0",
            alphas[pivot].valuation()
        )));
    }
    let mut elements = vec![one];
    for (i, (pos, g)) in generators.iter().enumerate() {
        if i != pivot {
            let mut coords = vec![ModelElem::zero(); width];
            coords[*pos] = g.clone();
            elements.push(Element(coords));
        }
    }
    Ok(MinimalBasis { rank: r.rank(), width, generators, alphas, pivot, elements })
}

/// `r ⊗ 1/t^denom` in `R ⊗ F`.
#[derive(Clone, PartialEq, Eq)]
pub struct ExtendedElem {
    pub numerator: Element,
    pub denom: GroupElem,
}

impl ExtendedElem {
    pub fn new(numerator: Element, denom: GroupElem) -> Result<Self> {
        if denom.is_negative() {
            return Err(Error::Precondition(format!("denominator value {denom} is negative")));
        }
        Ok(Self { numerator, denom })
    }

    /// `r ⊗ 1`.
    pub fn of(r: Element, rank: usize) -> Self {
        Self { numerator: r, denom: GroupElem::zero(rank) }
    }

    /// `r ⊗ 1/b = r' ⊗ 1/b'` iff `b' r = b r'`.
    pub fn same_as<A: Algebra + ?Sized>(&self, other: &Self, r: &A) -> bool {
        let lhs = r.scalar(&ModelElem::t_pow(other.denom.clone()), &self.numerator);
        let rhs = r.scalar(&ModelElem::t_pow(self.denom.clone()), &other.numerator);
        lhs == rhs
    }

    /// The element as a point of the ambient `F`-space.
    pub fn ambient(&self) -> Element {
        let inv = ModelElem::t_pow(-&self.denom);
        Element(self.numerator.0.iter().map(|c| c * &inv).collect())
    }
}

impl fmt::Debug for ExtendedElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} ⊗ t^-{}", self.numerator, self.denom)
    }
}

/// `W(r ⊗ 1/b) = w(r) − v(b)`.
pub struct NaturalExtension<'a> {
    base: &'a dyn QuasiValuation,
}

impl NaturalExtension<'_> {
    pub fn evaluate(&self, x: &ExtendedElem) -> Result<CutOrInfty> {
        self.base.evaluate(&x.numerator)?.sub_group(&x.denom)
    }

    pub fn value_monoid(&self) -> ValueMonoid {
        self.base.value_monoid()
    }

    pub fn provenance(&self) -> Provenance {
        Provenance::NaturalExtension(Box::new(self.base.provenance()))
    }
}

/// Builds the natural extension after checking that `w` is a v-quasi-
/// valuation on the torsion-free algebra, with `w(1) = 0` when `R` is unital.
pub fn natural_extension<'a, A: Algebra + ?Sized>(
    w: &'a dyn QuasiValuation,
    r: &A,
    samples: usize,
    seed: u64,
) -> Result<NaturalExtension<'a>> {
    if !r.is_torsion_free() {
        return Err(Error::Precondition("algebra has O_v-torsion".into()));
    }
    let report = check_v_qv(w, r, samples, seed);
    if !report.homogeneity.is_pass() {
        return Err(Error::Precondition(format!("not a v-quasi-valuation: {}", report.homogeneity)));
    }
    if report.one_is_zero.is_fail() {
        return Err(Error::Precondition(format!("w(1) ≠ 0: {}", report.one_is_zero)));
    }
    Ok(NaturalExtension { base: w })
}

/// `W(x) ≥ 0`.
pub fn ow_member(big_w: &NaturalExtension<'_>, x: &ExtendedElem) -> Result<bool> {
    let zero = CutOrInfty::Finite(Cut::zero(x.denom.rank()));
    Ok(big_w.evaluate(x)? >= zero)
}

/// Whether `x` lies in `R ⊗ 1`.
pub fn in_r_tensor_one<A: Algebra + ?Sized>(r: &A, x: &ExtendedElem) -> bool {
    r.contains(&x.ambient())
}

/// Whether every coordinate of the numerator over the basis is divisible by
/// the denominator.
pub fn coordinates_divisible(basis: &MinimalBasis, x: &ExtendedElem) -> bool {
    let d = Val::Finite(x.denom.clone());
    basis.coordinates(&x.numerator).iter().all(|c| c.valuation() >= d)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ImageReport {
    pub samples: usize,
    pub all_cancellative: bool,
    pub nonzero_infty: bool,
    pub top_attained: bool,
    pub non_cancellative_witness: Option<String>,
    /// A few distinct attained values, smallest first.
    pub coverage: Vec<String>,
}

impl ImageReport {
    /// Values stay in the image of the group and only `0` maps to `∞`.
    pub fn is_cancellative_evidence(&self) -> bool {
        self.all_cancellative && !self.nonzero_infty
    }
}

/// Scans sampled values plus one monomial probe per position.
pub fn image_scan<A: Algebra + ?Sized>(
    w: &dyn QuasiValuation,
    r: &A,
    samples: usize,
    seed: u64,
) -> Result<ImageReport> {
    let mut elems = sample_elements(r, samples, seed);
    for pos in 0..r.width() {
        let j = r.full_component(pos);
        if let Some(gamma) = probe_value(&j) {
            let x = r.normalize(Element::unit_at(r.width(), pos, &gamma));
            elems.push(x);
        }
    }
    let mut report = ImageReport {
        samples: elems.len(),
        all_cancellative: true,
        nonzero_infty: false,
        top_attained: false,
        non_cancellative_witness: None,
        coverage: vec![],
    };
    let mut seen = BTreeSet::new();
    for x in elems.iter().filter(|x| !x.is_zero()) {
        let v = w.evaluate(x)?;
        match &v {
            CutOrInfty::Infty => report.nonzero_infty = true,
            CutOrInfty::Finite(c) => {
                report.top_attained |= c.is_top();
                if !c.is_cancellative() {
                    report.all_cancellative = false;
                    report
                        .non_cancellative_witness
                        .get_or_insert_with(|| format!("w({x:?}) = {c}"));
                }
            }
        }
        seen.insert(v);
    }
    report.coverage = seen.iter().take(12).map(|v| v.to_string()).collect();
    Ok(report)
}

/// A value just inside the component, if it is nonzero.
fn probe_value(j: &crate::field_model::IdealCut) -> Option<GroupElem> {
    use crate::ordered_values::CutRepr;
    let rank = j.rank();
    match j.boundary().repr() {
        CutRepr::Top => None,
        CutRepr::Bottom => Some(GroupElem::zero(rank)),
        CutRepr::Prefix(p) => {
            let mut g: Vec<i64> = p.to_vec();
            *g.last_mut().expect("nonempty") += 1;
            g.resize(rank, 0);
            Some(GroupElem::new(g))
        }
    }
}

/// Explicit witnesses comparing `O_W` with `R ⊗ 1`.
#[derive(Clone, Debug)]
pub struct ContainmentWitnesses {
    /// In `O_W` but not of the form `r ⊗ 1` with `r ∈ R`.
    pub in_ow_not_r: Option<ExtendedElem>,
    /// In `R` with negative value, so `r ⊗ 1 ∉ O_W`.
    pub in_r_not_ow: Option<Element>,
    /// Every sampled `r ⊗ 1` lies in `O_W`.
    pub r_in_ow_on_samples: bool,
    pub samples: usize,
}

/// Searches monomials `t^γ` at each position, with `γ` a small multiple of
/// `ε` around the component boundary, plus `samples` random elements.
pub fn containment_witnesses<A: Algebra + ?Sized>(
    r: &A,
    big_w: &NaturalExtension<'_>,
    samples: usize,
    seed: u64,
) -> Result<ContainmentWitnesses> {
    let rank = r.rank();
    let eps = GroupElem::epsilon(rank);
    let zero = CutOrInfty::Finite(Cut::zero(rank));
    let mut out = ContainmentWitnesses {
        in_ow_not_r: None,
        in_r_not_ow: None,
        r_in_ow_on_samples: true,
        samples,
    };
    for x in sample_elements(r, samples, seed) {
        let w = big_w.evaluate(&ExtendedElem::of(x.clone(), rank))?;
        if w < zero {
            out.r_in_ow_on_samples = false;
            out.in_r_not_ow.get_or_insert(x);
        }
    }
    for pos in 0..r.width() {
        let centre = probe_value(&r.full_component(pos)).unwrap_or_else(|| GroupElem::zero(rank));
        for k in -4..=4i64 {
            let gamma = &centre + &eps.scale(k);
            let y = r.normalize(Element::unit_at(r.width(), pos, &gamma));
            if y.is_zero() {
                continue;
            }
            if out.in_r_not_ow.is_none() && r.contains(&y) && big_w.evaluate(&ExtendedElem::of(y.clone(), rank))? < zero {
                out.in_r_not_ow = Some(y.clone());
            }
            if out.in_ow_not_r.is_some() {
                continue;
            }
            // The smallest denominator that brings the numerator into R.
            for d in 0..=8 {
                let denom = eps.scale(d);
                let num = r.normalize(Element::unit_at(r.width(), pos, &(&gamma + &denom)));
                if num.is_zero() || !r.contains(&num) {
                    continue;
                }
                let x = ExtendedElem::new(num, denom)?;
                if ow_member(big_w, &x)? && !in_r_tensor_one(r, &x) {
                    out.in_ow_not_r = Some(x);
                }
                break;
            }
        }
    }
    Ok(out)
}
