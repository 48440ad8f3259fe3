//! The value group `Z^r` under lexicographic order, its Dedekind cut monoid,
//! and the isolated subgroups.
//!
//! Every initial subset of `Z^r` is empty, everything, or
//! `{x : x[..k] <= p}` for a unique integer prefix `p` of length `1..=r`.
//! [`Cut`] stores exactly that, so equality of cuts is structural.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use smallvec::SmallVec;

use crate::error::{Error, Result};

pub const DEFAULT_MAX_RANK: usize = 4;

pub type Coords = SmallVec<[i64; 4]>;

/// Shape of the value group: the number of lexicographic coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GroupDescriptor {
    rank: usize,
}

impl GroupDescriptor {
    pub fn new(rank: usize) -> Result<Self> {
        Self::with_max_rank(rank, DEFAULT_MAX_RANK)
    }

    pub fn with_max_rank(rank: usize, max: usize) -> Result<Self> {
        if rank == 0 || rank > max {
            return Err(Error::InvalidRank { rank, max });
        }
        Ok(Self { rank })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn zero(&self) -> GroupElem {
        GroupElem::zero(self.rank)
    }

    pub fn epsilon(&self) -> GroupElem {
        GroupElem::epsilon(self.rank)
    }

    pub fn isolated(&self, index: usize) -> Result<IsolatedSubgroup> {
        IsolatedSubgroup::new(self.rank, index)
    }

    /// `H_0 ⊂ H_1 ⊂ … ⊂ H_r`.
    pub fn isolated_subgroups(&self) -> impl Iterator<Item = IsolatedSubgroup> + '_ {
        (0..=self.rank).map(move |index| IsolatedSubgroup { rank: self.rank, index })
    }
}

/// An element of `Z^r`. The derived order is lexicographic.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElem(Coords);

impl GroupElem {
    pub fn new(coords: impl IntoIterator<Item = i64>) -> Self {
        Self(coords.into_iter().collect())
    }

    pub fn zero(rank: usize) -> Self {
        Self(SmallVec::from_elem(0, rank))
    }

    /// The least positive element `(0, …, 0, 1)`.
    pub fn epsilon(rank: usize) -> Self {
        let mut e = Self::zero(rank);
        e.0[rank - 1] = 1;
        e
    }

    /// `(0, …, 1, …, 0)` with the one at `axis`.
    pub fn unit(rank: usize, axis: usize) -> Self {
        let mut e = Self::zero(rank);
        e.0[axis] = 1;
        e
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().find(|&&c| c != 0).is_some_and(|&c| c > 0)
    }

    pub fn is_nonnegative(&self) -> bool {
        !self.is_negative()
    }

    pub fn is_negative(&self) -> bool {
        self.0.iter().find(|&&c| c != 0).is_some_and(|&c| c < 0)
    }

    pub fn scale(&self, n: i64) -> Self {
        Self(self.0.iter().map(|c| c * n).collect())
    }

    pub fn max_abs(&self) -> i64 {
        self.0.iter().map(|c| c.abs()).max().unwrap_or(0)
    }

    pub fn try_cmp(&self, other: &Self) -> Result<Ordering> {
        check_rank(self.rank(), other.rank())?;
        Ok(self.0.cmp(&other.0))
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        check_rank(self.rank(), other.rank())?;
        Ok(self + other)
    }
}

impl Serialize for GroupElem {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.as_slice().serialize(s)
    }
}

impl<'de> Deserialize<'de> for GroupElem {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Vec::<i64>::deserialize(d).map(Self::new)
    }
}

fn check_rank(left: usize, right: usize) -> Result<()> {
    if left == right {
        Ok(())
    } else {
        Err(Error::RankMismatch { left, right })
    }
}

/// Lexicographic comparison of two group elements of equal rank.
pub fn cmp_group(a: &GroupElem, b: &GroupElem) -> Result<Ordering> {
    a.try_cmp(b)
}

impl Add for &GroupElem {
    type Output = GroupElem;
    fn add(self, rhs: &GroupElem) -> GroupElem {
        debug_assert_eq!(self.rank(), rhs.rank());
        GroupElem(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Add for GroupElem {
    type Output = GroupElem;
    fn add(self, rhs: GroupElem) -> GroupElem {
        &self + &rhs
    }
}

impl Sub for &GroupElem {
    type Output = GroupElem;
    fn sub(self, rhs: &GroupElem) -> GroupElem {
        debug_assert_eq!(self.rank(), rhs.rank());
        GroupElem(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Sub for GroupElem {
    type Output = GroupElem;
    fn sub(self, rhs: GroupElem) -> GroupElem {
        &self - &rhs
    }
}

impl Neg for &GroupElem {
    type Output = GroupElem;
    fn neg(self) -> GroupElem {
        GroupElem(self.0.iter().map(|c| -c).collect())
    }
}

impl Neg for GroupElem {
    type Output = GroupElem;
    fn neg(self) -> GroupElem {
        -&self
    }
}

impl fmt::Debug for GroupElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for GroupElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// The three shapes an initial subset of `Z^r` can take.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CutRepr {
    /// Empty left set.
    Bottom,
    /// Left set is all of the group.
    Top,
    /// `{x : x[..k] <= p}` with `k = p.len()`.
    Prefix(Coords),
}

/// A Dedekind cut of `Z^r`, identified with its left set.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cut {
    rank: usize,
    repr: CutRepr,
}

impl Cut {
    pub fn bottom(rank: usize) -> Self {
        Self { rank, repr: CutRepr::Bottom }
    }

    pub fn top(rank: usize) -> Self {
        Self { rank, repr: CutRepr::Top }
    }

    pub fn prefix(rank: usize, p: impl IntoIterator<Item = i64>) -> Result<Self> {
        let p: Coords = p.into_iter().collect();
        if p.is_empty() || p.len() > rank {
            return Err(Error::InvalidCut(format!(
                "prefix length {} not in 1..={rank}",
                p.len()
            )));
        }
        Ok(Self { rank, repr: CutRepr::Prefix(p) })
    }

    fn from_prefix(rank: usize, p: Coords) -> Self {
        debug_assert!(!p.is_empty() && p.len() <= rank);
        Self { rank, repr: CutRepr::Prefix(p) }
    }

    /// The principal cut `{γ}⁺`, whose left set is `(−∞, γ]`.
    pub fn embed(gamma: &GroupElem) -> Self {
        Self::from_prefix(gamma.rank(), gamma.0.clone())
    }

    pub fn zero(rank: usize) -> Self {
        Self::embed(&GroupElem::zero(rank))
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn repr(&self) -> &CutRepr {
        &self.repr
    }

    pub fn is_bottom(&self) -> bool {
        self.repr == CutRepr::Bottom
    }

    pub fn is_top(&self) -> bool {
        self.repr == CutRepr::Top
    }

    /// The group element this cut embeds, if it is principal.
    pub fn as_group(&self) -> Option<GroupElem> {
        match &self.repr {
            CutRepr::Prefix(p) if p.len() == self.rank => Some(GroupElem(p.clone())),
            _ => None,
        }
    }

    /// Whether `γ` lies in the left set.
    pub fn contains(&self, gamma: &GroupElem) -> bool {
        match &self.repr {
            CutRepr::Bottom => false,
            CutRepr::Top => true,
            CutRepr::Prefix(p) => gamma.0[..p.len()] <= p[..],
        }
    }

    pub fn try_cmp(&self, other: &Self) -> Result<Ordering> {
        check_rank(self.rank, other.rank)?;
        Ok(cmp_repr(&self.repr, &other.repr))
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        check_rank(self.rank, other.rank)?;
        let repr = match (&self.repr, &other.repr) {
            (CutRepr::Bottom, _) | (_, CutRepr::Bottom) => CutRepr::Bottom,
            (CutRepr::Top, _) | (_, CutRepr::Top) => CutRepr::Top,
            (CutRepr::Prefix(p), CutRepr::Prefix(q)) => {
                CutRepr::Prefix(p.iter().zip(q.iter()).map(|(a, b)| a + b).collect())
            }
        };
        Ok(Self { rank: self.rank, repr })
    }

    /// `n`-fold sum of the cut with itself.
    pub fn scale(&self, n: i64) -> Result<Self> {
        if n < 1 {
            return Err(Error::NonPositiveScale(n));
        }
        let repr = match &self.repr {
            CutRepr::Prefix(p) => CutRepr::Prefix(p.iter().map(|c| c * n).collect()),
            other => other.clone(),
        };
        Ok(Self { rank: self.rank, repr })
    }

    /// Translation `self + embed(-alpha)`.
    pub fn sub_group(&self, alpha: &GroupElem) -> Result<Self> {
        self.try_add(&Self::embed(&-alpha))
    }

    pub fn shift(&self, alpha: &GroupElem) -> Result<Self> {
        self.try_add(&Self::embed(alpha))
    }

    /// Cancellative exactly on the image of the group.
    pub fn is_cancellative(&self) -> bool {
        self.as_group().is_some()
    }

    /// A pair `b != c` with `self + b == self + c`, when one exists.
    pub fn cancellation_witness(&self) -> Option<(Cut, Cut)> {
        if self.is_cancellative() {
            return None;
        }
        Some((
            Self::zero(self.rank),
            Self::embed(&-GroupElem::epsilon(self.rank)),
        ))
    }

    /// The cut whose left set is `-(Γ ∖ L)`, where `L` is the left set of
    /// `self`. An order-reversing involution.
    pub fn reflect(&self) -> Self {
        let repr = match &self.repr {
            CutRepr::Bottom => CutRepr::Top,
            CutRepr::Top => CutRepr::Bottom,
            CutRepr::Prefix(p) => {
                let mut q: Coords = p.iter().map(|c| -c).collect();
                *q.last_mut().expect("nonempty prefix") -= 1;
                CutRepr::Prefix(q)
            }
        };
        Self { rank: self.rank, repr }
    }

    /// Largest absolute prefix coordinate, 0 for Bottom and Top.
    pub fn max_abs(&self) -> i64 {
        match &self.repr {
            CutRepr::Prefix(p) => p.iter().map(|c| c.abs()).max().unwrap_or(0),
            _ => 0,
        }
    }
}

fn cmp_repr(a: &CutRepr, b: &CutRepr) -> Ordering {
    use CutRepr::*;
    match (a, b) {
        (Bottom, Bottom) | (Top, Top) => Ordering::Equal,
        (Bottom, _) | (_, Top) => Ordering::Less,
        (_, Bottom) | (Top, _) => Ordering::Greater,
        (Prefix(p), Prefix(q)) => {
            let m = p.len().min(q.len());
            p[..m].cmp(&q[..m]).then_with(|| q.len().cmp(&p.len()))
        }
    }
}

pub fn embed(gamma: &GroupElem) -> Cut {
    Cut::embed(gamma)
}

pub fn cmp_cut(a: &Cut, b: &Cut) -> Result<Ordering> {
    a.try_cmp(b)
}

pub fn scale_cut(n: i64, a: &Cut) -> Result<Cut> {
    a.scale(n)
}

pub fn is_cancellative(a: &Cut) -> bool {
    a.is_cancellative()
}

/// Cuts of different rank are ordered by rank first, so this stays a lawful
/// total order; use [`Cut::try_cmp`] to reject mismatches instead.
impl Ord for Cut {
    fn cmp(&self, other: &Self) -> Ordering {
        self.rank
            .cmp(&other.rank)
            .then_with(|| cmp_repr(&self.repr, &other.repr))
    }
}

impl PartialOrd for Cut {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &Cut {
    type Output = Cut;
    fn add(self, rhs: &Cut) -> Cut {
        self.try_add(rhs).expect("cut ranks agree")
    }
}

impl fmt::Debug for Cut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Cut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            CutRepr::Bottom => write!(f, "bottom"),
            CutRepr::Top => write!(f, "top"),
            CutRepr::Prefix(p) => {
                let name = if p.len() == self.rank { "embed" } else { "prefix" };
                write!(f, "{name}{}", GroupElem(p.clone()))
            }
        }
    }
}

/// The cut monoid with an absorbing `∞` adjoined above everything.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum CutOrInfty {
    Finite(Cut),
    Infty,
}

impl CutOrInfty {
    pub fn finite(&self) -> Option<&Cut> {
        match self {
            Self::Finite(c) => Some(c),
            Self::Infty => None,
        }
    }

    pub fn is_infty(&self) -> bool {
        matches!(self, Self::Infty)
    }

    pub fn try_cmp(&self, other: &Self) -> Result<Ordering> {
        match (self, other) {
            (Self::Finite(a), Self::Finite(b)) => a.try_cmp(b),
            _ => Ok(self.cmp(other)),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        match (self, other) {
            (Self::Finite(a), Self::Finite(b)) => a.try_add(b).map(Self::Finite),
            _ => Ok(Self::Infty),
        }
    }

    pub fn sub_group(&self, alpha: &GroupElem) -> Result<Self> {
        match self {
            Self::Finite(a) => a.sub_group(alpha).map(Self::Finite),
            Self::Infty => Ok(Self::Infty),
        }
    }
}

impl From<Cut> for CutOrInfty {
    fn from(c: Cut) -> Self {
        Self::Finite(c)
    }
}

impl Ord for CutOrInfty {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Self::Infty, Self::Infty) => Ordering::Equal,
            (Self::Infty, _) => Ordering::Greater,
            (_, Self::Infty) => Ordering::Less,
            (Self::Finite(a), Self::Finite(b)) => a.cmp(b),
        }
    }
}

impl PartialOrd for CutOrInfty {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for CutOrInfty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for CutOrInfty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Finite(c) => write!(f, "{c}"),
            Self::Infty => write!(f, "infty"),
        }
    }
}

pub fn add_cut(a: &CutOrInfty, b: &CutOrInfty) -> Result<CutOrInfty> {
    a.try_add(b)
}

pub fn sub_group(a: &CutOrInfty, alpha: &GroupElem) -> Result<CutOrInfty> {
    a.sub_group(alpha)
}

/// `H_j = {x : x_1 = … = x_{r−j} = 0}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IsolatedSubgroup {
    rank: usize,
    index: usize,
}

impl IsolatedSubgroup {
    pub fn new(rank: usize, index: usize) -> Result<Self> {
        if index > rank {
            return Err(Error::IsolatedIndex { index, rank });
        }
        Ok(Self { rank, index })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn contains(&self, gamma: &GroupElem) -> bool {
        gamma.0[..self.rank - self.index].iter().all(|&c| c == 0)
    }

    /// The smallest cut whose left set contains the subgroup.
    pub fn plus(&self) -> Cut {
        if self.index == self.rank {
            Cut::top(self.rank)
        } else {
            Cut::from_prefix(self.rank, SmallVec::from_elem(0, self.rank - self.index))
        }
    }
}

pub fn isolated_plus(h: &IsolatedSubgroup) -> Cut {
    h.plus()
}
