//! Exact model of the valued field: finite rational sums of monomials `t^γ`
//! with the min-support valuation, and O_v-submodules of the field encoded
//! by their boundary cut.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::ordered_values::{Cut, CutRepr, GroupElem, IsolatedSubgroup};

/// A value of the field valuation: a group element or `∞`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Val {
    Finite(GroupElem),
    Infinite,
}

impl Val {
    pub fn finite(&self) -> Option<&GroupElem> {
        match self {
            Val::Finite(g) => Some(g),
            Val::Infinite => None,
        }
    }

    pub fn add(&self, other: &Val) -> Val {
        match (self, other) {
            (Val::Finite(a), Val::Finite(b)) => Val::Finite(a + b),
            _ => Val::Infinite,
        }
    }

    pub fn shift(&self, gamma: &GroupElem) -> Val {
        match self {
            Val::Finite(a) => Val::Finite(a + gamma),
            Val::Infinite => Val::Infinite,
        }
    }
}

impl fmt::Debug for Val {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Val::Finite(g) => write!(f, "{g}"),
            Val::Infinite => write!(f, "∞"),
        }
    }
}

/// A finite sum `Σ q_γ t^γ` with nonzero rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ModelElem {
    terms: BTreeMap<GroupElem, BigRational>,
}

impl ModelElem {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one(rank: usize) -> Self {
        Self::monomial(BigRational::one(), GroupElem::zero(rank))
    }

    pub fn monomial(coef: BigRational, exp: GroupElem) -> Self {
        let mut terms = BTreeMap::new();
        if !coef.is_zero() {
            terms.insert(exp, coef);
        }
        Self { terms }
    }

    /// `t^γ`.
    pub fn t_pow(exp: GroupElem) -> Self {
        Self::monomial(BigRational::one(), exp)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (BigRational, GroupElem)>) -> Self {
        let mut out = Self::zero();
        for (c, e) in terms {
            out.add_term(c, e);
        }
        out
    }

    fn add_term(&mut self, coef: BigRational, exp: GroupElem) {
        if coef.is_zero() {
            return;
        }
        let slot = self.terms.entry(exp).or_insert_with(BigRational::zero);
        *slot += coef;
        if slot.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GroupElem, &BigRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Lex-minimal exponent of the support.
    pub fn valuation(&self) -> Val {
        self.terms
            .keys()
            .next()
            .map_or(Val::Infinite, |g| Val::Finite(g.clone()))
    }

    pub fn leading_coef(&self) -> Option<&BigRational> {
        self.terms.values().next()
    }

    /// Multiply by `t^γ`.
    pub fn shift(&self, gamma: &GroupElem) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (e + gamma, c.clone())).collect(),
        }
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * q)).collect(),
        }
    }

    /// The single term, when the element is a monomial.
    pub fn as_monomial(&self) -> Option<(&BigRational, &GroupElem)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(e, c)| (c, e))
        } else {
            None
        }
    }

    /// Drop every term whose exponent satisfies `pred`.
    pub fn drop_terms(&self, pred: impl Fn(&GroupElem) -> bool) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| !pred(e))
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Inverse of a monomial.
    pub fn monomial_inverse(&self) -> Option<Self> {
        let (c, e) = self.as_monomial()?;
        Some(Self::monomial(c.recip(), -e))
    }

    pub fn max_abs_exponent(&self) -> i64 {
        self.terms.keys().map(GroupElem::max_abs).max().unwrap_or(0)
    }
}

impl Add for &ModelElem {
    type Output = ModelElem;
    fn add(self, rhs: &ModelElem) -> ModelElem {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(c.clone(), e.clone());
        }
        out
    }
}

impl Add for ModelElem {
    type Output = ModelElem;
    fn add(self, rhs: ModelElem) -> ModelElem {
        &self + &rhs
    }
}

impl Neg for &ModelElem {
    type Output = ModelElem;
    fn neg(self) -> ModelElem {
        ModelElem {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Neg for ModelElem {
    type Output = ModelElem;
    fn neg(self) -> ModelElem {
        -&self
    }
}

impl Sub for &ModelElem {
    type Output = ModelElem;
    fn sub(self, rhs: &ModelElem) -> ModelElem {
        self + &(-rhs)
    }
}

impl Sub for ModelElem {
    type Output = ModelElem;
    fn sub(self, rhs: ModelElem) -> ModelElem {
        &self - &rhs
    }
}

impl Mul for &ModelElem {
    type Output = ModelElem;
    fn mul(self, rhs: &ModelElem) -> ModelElem {
        let mut out = ModelElem::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(c1 * c2, e1 + e2);
            }
        }
        out
    }
}

impl Mul for ModelElem {
    type Output = ModelElem;
    fn mul(self, rhs: ModelElem) -> ModelElem {
        &self * &rhs
    }
}

impl fmt::Debug for ModelElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for ModelElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            let a = c.abs();
            if a != BigRational::one() {
                write!(f, "{a}·")?;
            }
            write!(f, "t^{e}")?;
        }
        Ok(())
    }
}

pub fn valuation(x: &ModelElem) -> Val {
    x.valuation()
}

pub fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// An O_v-submodule `{0} ∪ {x : v(x) ∉ L}` of the field, where `L` is the left
/// set of the boundary cut.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IdealCut {
    boundary: Cut,
}

impl IdealCut {
    pub fn from_boundary(boundary: Cut) -> Self {
        Self { boundary }
    }

    pub fn boundary(&self) -> &Cut {
        &self.boundary
    }

    pub fn rank(&self) -> usize {
        self.boundary.rank()
    }

    pub fn ov(rank: usize) -> Self {
        Self::principal(&GroupElem::zero(rank))
    }

    pub fn iv(rank: usize) -> Self {
        Self::from_boundary(Cut::zero(rank))
    }

    pub fn field(rank: usize) -> Self {
        Self::from_boundary(Cut::bottom(rank))
    }

    pub fn zero(rank: usize) -> Self {
        Self::from_boundary(Cut::top(rank))
    }

    /// `t^γ O_v`.
    pub fn principal(gamma: &GroupElem) -> Self {
        let rank = gamma.rank();
        Self::from_boundary(Cut::embed(&(gamma - &GroupElem::epsilon(rank))))
    }

    /// The prime of O_v attached to `h`.
    pub fn prime(h: &IsolatedSubgroup) -> Self {
        Self::from_boundary(h.plus())
    }

    /// The localization of O_v at the prime attached to `h`.
    pub fn localization(h: &IsolatedSubgroup) -> Self {
        let rank = h.rank();
        if h.index() == 0 {
            return Self::ov(rank);
        }
        if h.index() == rank {
            return Self::field(rank);
        }
        let k = rank - h.index();
        let mut p = vec![0; k];
        p[k - 1] = -1;
        Self::from_boundary(Cut::prefix(rank, p).expect("prefix length in range"))
    }

    pub fn is_zero(&self) -> bool {
        self.boundary.is_top()
    }

    pub fn is_field(&self) -> bool {
        self.boundary.is_bottom()
    }

    pub fn member(&self, value: &Val) -> bool {
        match value {
            Val::Infinite => true,
            Val::Finite(g) => !self.boundary.contains(g),
        }
    }

    pub fn member_elem(&self, x: &ModelElem) -> bool {
        self.member(&x.valuation())
    }

    /// `self ⊇ other`.
    pub fn contains(&self, other: &IdealCut) -> bool {
        self.boundary <= other.boundary
    }

    /// `t^γ · self`.
    pub fn shift(&self, gamma: &GroupElem) -> Self {
        Self::from_boundary(self.boundary.shift(gamma).expect("ranks agree"))
    }

    /// The submodule generated by all products.
    pub fn product(&self, other: &IdealCut) -> Self {
        let sum = &self.boundary.reflect() + &other.boundary.reflect();
        Self::from_boundary(sum.reflect())
    }

    /// `{x : x · divisor ⊆ self}`.
    pub fn colon(&self, divisor: &IdealCut) -> Self {
        let rank = self.rank();
        let (b3, b2) = (&self.boundary, &divisor.boundary);
        if b2.is_top() || b3.is_bottom() {
            return Self::field(rank);
        }
        if b3.is_top() || b2.is_bottom() {
            return Self::zero(rank);
        }
        let (CutRepr::Prefix(s), CutRepr::Prefix(q)) = (b3.repr(), b2.repr()) else {
            unreachable!("bottom and top handled above")
        };
        let n = s.len().min(q.len());
        let mut d: Vec<i64> = (0..n).map(|i| s[i] - q[i]).collect();
        if s.len() >= q.len() {
            d[n - 1] -= 1;
        }
        Self::from_boundary(Cut::prefix(rank, d).expect("prefix length in range"))
    }

    /// `(O_v : self)`.
    pub fn inverse(&self) -> Self {
        Self::ov(self.rank()).colon(self)
    }

    /// Sum of submodules.
    pub fn join(&self, other: &IdealCut) -> Self {
        Self::from_boundary(self.boundary.clone().min(other.boundary.clone()))
    }

    /// Intersection of submodules.
    pub fn meet(&self, other: &IdealCut) -> Self {
        Self::from_boundary(self.boundary.clone().max(other.boundary.clone()))
    }

    /// The generator value when the module is `t^γ O_v`.
    pub fn principal_value(&self) -> Option<GroupElem> {
        self.boundary
            .as_group()
            .map(|g| &g + &GroupElem::epsilon(self.rank()))
    }

    /// Short symbolic name when one applies.
    pub fn shorthand(&self) -> Option<String> {
        let rank = self.rank();
        if *self == Self::ov(rank) {
            return Some("Ov".into());
        }
        if *self == Self::iv(rank) {
            return Some("Iv".into());
        }
        if self.is_field() {
            return Some("F".into());
        }
        if self.is_zero() {
            return Some("zero".into());
        }
        (1..rank).find_map(|j| {
            let h = IsolatedSubgroup::new(rank, j).expect("index in range");
            (*self == Self::prime(&h)).then(|| format!("P{j}"))
        })
    }

    pub fn from_shorthand(rank: usize, name: &str) -> Result<Self> {
        match name {
            "Ov" => Ok(Self::ov(rank)),
            "Iv" => Ok(Self::iv(rank)),
            "F" => Ok(Self::field(rank)),
            "zero" => Ok(Self::zero(rank)),
            _ => {
                let j: usize = name
                    .strip_prefix('P')
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| Error::Parse(format!("unknown ideal shorthand {name:?}")))?;
                if j == 0 || j > rank {
                    return Err(Error::Parse(format!("{name} needs 1 <= index <= {rank}")));
                }
                Ok(Self::prime(&IsolatedSubgroup::new(rank, j)?))
            }
        }
    }
}

impl fmt::Debug for IdealCut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for IdealCut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.shorthand() {
            Some(s) => write!(f, "{s}"),
            None => write!(f, "J[{}]", self.boundary),
        }
    }
}

/// Orders submodules by inclusion.
impl PartialOrd for IdealCut {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(other.boundary.cmp(&self.boundary))
    }
}

pub fn ideal_member(value: &Val, j: &IdealCut) -> bool {
    j.member(value)
}

pub fn ideal_contains(j1: &IdealCut, j2: &IdealCut) -> bool {
    j1.contains(j2)
}

pub fn ideal_shift(gamma: &GroupElem, j: &IdealCut) -> IdealCut {
    j.shift(gamma)
}

/// Whether `j1 · j2 ⊆ j3`.
pub fn product_contained(j1: &IdealCut, j2: &IdealCut, j3: &IdealCut) -> bool {
    j3.contains(&j1.product(j2))
}

/// The primes of O_v from `{0}` up to `I_v`.
pub fn spec_base(rank: usize) -> Vec<(IsolatedSubgroup, IdealCut)> {
    (0..=rank)
        .rev()
        .map(|j| {
            let h = IsolatedSubgroup::new(rank, j).expect("index in range");
            (h, IdealCut::prime(&h))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(c: &[i64]) -> GroupElem {
        GroupElem::new(c.iter().copied())
    }

    fn p1(rank: usize) -> IdealCut {
        IdealCut::prime(&IsolatedSubgroup::new(rank, 1).unwrap())
    }

    #[test]
    fn valuation_is_min_support() {
        let x = ModelElem::from_terms([(rational(1, 1), g(&[1, 2])), (rational(3, 1), g(&[0, 5]))]);
        assert_eq!(valuation(&x), Val::Finite(g(&[0, 5])));
        assert_eq!(valuation(&ModelElem::zero()), Val::Infinite);
        assert!((&x - &x).is_zero());
    }

    #[test]
    fn membership_examples() {
        let zero = Val::Finite(g(&[0]));
        assert!(ideal_member(&zero, &IdealCut::ov(1)));
        assert!(!ideal_member(&zero, &IdealCut::iv(1)));
        let loc = IdealCut::localization(&IsolatedSubgroup::new(2, 1).unwrap());
        assert_eq!(*loc.boundary(), Cut::prefix(2, [-1]).unwrap());
        assert!(ideal_member(&Val::Finite(g(&[0, -5])), &loc));
        assert!(ideal_member(&Val::Infinite, &IdealCut::zero(2)));
    }

    #[test]
    fn containment_examples() {
        assert!(ideal_contains(&IdealCut::ov(1), &IdealCut::iv(1)));
        assert!(!ideal_contains(&IdealCut::iv(1), &IdealCut::ov(1)));
        let p2 = IdealCut::zero(2);
        assert!(ideal_contains(&p1(2), &p2));
        assert!(ideal_contains(&IdealCut::iv(2), &p1(2)));
    }

    #[test]
    fn shift_examples() {
        let gamma = g(&[2, -1]);
        assert_eq!(ideal_shift(&gamma, &IdealCut::ov(2)), IdealCut::principal(&gamma));
        assert!(ideal_shift(&gamma, &IdealCut::field(2)).is_field());
        assert_eq!(
            *ideal_shift(&g(&[1, 0]), &IdealCut::iv(2)).boundary(),
            Cut::embed(&g(&[1, 0]))
        );
    }

    #[test]
    fn product_examples() {
        let ov = IdealCut::ov(2);
        assert!(product_contained(&ov, &ov, &ov));
        let j3 = IdealCut::from_boundary(Cut::prefix(2, [1]).unwrap());
        assert!(product_contained(&p1(2), &p1(2), &j3));
        let j3 = IdealCut::from_boundary(Cut::embed(&g(&[2, 0])));
        assert!(!product_contained(&p1(2), &p1(2), &j3));
        assert!(product_contained(&IdealCut::zero(2), &IdealCut::field(2), &IdealCut::zero(2)));
        assert_eq!(p1(2).product(&p1(2)).boundary(), &Cut::prefix(2, [1]).unwrap());
    }

    #[test]
    fn colon_examples() {
        let iv = IdealCut::iv(1);
        assert_eq!(iv.inverse(), IdealCut::principal(&g(&[-1])));
        let loc = IdealCut::localization(&IsolatedSubgroup::new(2, 1).unwrap());
        assert_eq!(p1(2).inverse(), loc);
        assert!(IdealCut::zero(1).inverse().is_field());
        assert!(IdealCut::field(1).inverse().is_zero());
    }

    #[test]
    fn spec_base_is_increasing_chain() {
        for rank in 1..=4 {
            let base = spec_base(rank);
            assert_eq!(base.len(), rank + 1);
            assert!(base[0].1.is_zero());
            assert_eq!(base[rank].1, IdealCut::iv(rank));
            for w in base.windows(2) {
                assert!(w[1].1.contains(&w[0].1) && w[0].1 != w[1].1);
            }
        }
    }

    #[test]
    fn shorthands_round_trip() {
        for name in ["Ov", "Iv", "F", "zero", "P1", "P2"] {
            let j = IdealCut::from_shorthand(3, name).unwrap();
            assert_eq!(j.shorthand().as_deref(), Some(name));
        }
        assert_eq!(IdealCut::from_shorthand(2, "P2").unwrap().shorthand().as_deref(), Some("zero"));
        assert!(IdealCut::from_shorthand(2, "P3").is_err());
        assert!(IdealCut::from_shorthand(2, "Q").is_err());
    }
}
