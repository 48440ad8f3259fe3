use rand_chacha::ChaCha8Rng;

use super::sampling::{sample_entry, sample_value_in};
use super::{units_witness, Algebra, ConditionB, Element};
use crate::error::{Error, Result};
use crate::field_model::{product_contained, IdealCut, ModelElem, Val};
use crate::ordered_values::{Cut, CutOrInfty, CutRepr, GroupDescriptor, GroupElem};

/// `⊕ J_ij e_ij ⊆ M_n(F)` for O_v-submodules `J_ij` of the field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternAlgebra {
    rank: usize,
    n: usize,
    components: Vec<IdealCut>,
}

/// Entrywise valuations of a matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValMatrix {
    pub n: usize,
    pub vals: Vec<Val>,
}

impl ValMatrix {
    pub fn of(n: usize, x: &Element) -> Self {
        Self { n, vals: x.0.iter().map(ModelElem::valuation).collect() }
    }
}

impl PatternAlgebra {
    /// Checks multiplicative closure; unitality is reported, not required.
    pub fn new(rank: usize, n: usize, components: Vec<IdealCut>) -> Result<Self> {
        GroupDescriptor::new(rank)?;
        if n == 0 || components.len() != n * n {
            return Err(Error::InvalidAlgebra(format!(
                "expected {} components for n = {n}, got {}",
                n * n,
                components.len()
            )));
        }
        if let Some(j) = components.iter().find(|j| j.rank() != rank) {
            return Err(Error::RankMismatch { left: rank, right: j.rank() });
        }
        let r = Self { rank, n, components };
        for i in 0..n {
            for m in 0..n {
                for l in 0..n {
                    let (a, b, c) = (r.comp(i, m), r.comp(m, l), r.comp(i, l));
                    if !product_contained(a, b, c) {
                        return Err(Error::InvalidAlgebra(format!(
                            "not closed: J{}{}·J{}{} = {} ⊄ J{}{} = {c}",
                            i + 1,
                            m + 1,
                            m + 1,
                            l + 1,
                            a.product(b),
                            i + 1,
                            l + 1
                        )));
                    }
                }
            }
        }
        Ok(r)
    }

    /// `M_n(O_v)`.
    pub fn full_matrix(rank: usize, n: usize) -> Result<Self> {
        Self::new(rank, n, vec![IdealCut::ov(rank); n * n])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn components(&self) -> &[IdealCut] {
        &self.components
    }

    pub fn comp(&self, i: usize, j: usize) -> &IdealCut {
        &self.components[i * self.n + j]
    }

    pub fn idx(&self, i: usize, j: usize) -> usize {
        i * self.n + j
    }

    /// `t^γ e_ij`.
    pub fn unit(&self, i: usize, j: usize, gamma: &GroupElem) -> Element {
        Element::unit_at(self.n * self.n, self.idx(i, j), gamma)
    }

    pub fn from_entries(&self, entries: Vec<ModelElem>) -> Result<Element> {
        if entries.len() != self.n * self.n {
            return Err(Error::InvalidAlgebra(format!(
                "expected {} entries, got {}",
                self.n * self.n,
                entries.len()
            )));
        }
        Ok(Element(entries))
    }

    /// The value-set cut of the O_v-support of a nonzero matrix with the
    /// given entry valuations. Each entry constraint
    /// `x_km J_ml ⊆ a J_kl` bounds `v(a)` from above by a cut; the support
    /// is their intersection, with all negative values adjoined.
    pub fn support(&self, vm: &ValMatrix) -> Cut {
        let n = self.n;
        let mut admissible = Cut::top(self.rank);
        for k in 0..n {
            for m in 0..n {
                let Val::Finite(x) = &vm.vals[k * n + m] else { continue };
                for l in 0..n {
                    let c = self.comp(m, l).boundary().shift(x).expect("ranks agree");
                    let d = self.comp(k, l).boundary();
                    let bound = divisor_bound(&c, d);
                    if bound < admissible {
                        admissible = bound;
                    }
                }
            }
        }
        let neg_eps = Cut::embed(&-GroupElem::epsilon(self.rank));
        admissible.max(neg_eps)
    }

    /// Closed-form condition (b) for patterns: a positive `γ` with `−γ` in
    /// every diagonal component makes `t^γ·1` invertible.
    pub fn diagonal_unit_witness(&self) -> Option<GroupElem> {
        let top = (0..self.n).map(|i| self.comp(i, i).boundary()).max()?;
        let neg_eps = -GroupElem::epsilon(self.rank);
        (!top.contains(&neg_eps)).then(|| GroupElem::epsilon(self.rank))
    }
}

/// The admissible values `α` with `d + α ≤ c`, as a cut.
fn divisor_bound(c: &Cut, d: &Cut) -> Cut {
    let rank = c.rank();
    if c.is_top() || d.is_bottom() {
        return Cut::top(rank);
    }
    if d.is_top() || c.is_bottom() {
        return Cut::bottom(rank);
    }
    let (CutRepr::Prefix(q), CutRepr::Prefix(s)) = (c.repr(), d.repr()) else {
        unreachable!("bottom and top handled above")
    };
    let n = q.len().min(s.len());
    let mut g: Vec<i64> = (0..n).map(|i| q[i] - s[i]).collect();
    if s.len() < q.len() {
        g[n - 1] -= 1;
    }
    Cut::prefix(rank, g).expect("prefix length in range")
}

impl Algebra for PatternAlgebra {
    fn rank(&self) -> usize {
        self.rank
    }

    fn width(&self) -> usize {
        self.n * self.n
    }

    fn dim(&self) -> usize {
        self.components.iter().filter(|j| !j.is_zero()).count()
    }

    fn is_unital(&self) -> bool {
        let zero = Val::Finite(GroupElem::zero(self.rank));
        (0..self.n).all(|i| self.comp(i, i).member(&zero))
    }

    fn is_torsion_free(&self) -> bool {
        true
    }

    fn is_faithful(&self) -> bool {
        true
    }

    fn kind(&self) -> &'static str {
        "pattern"
    }

    fn one(&self) -> Option<Element> {
        if !self.is_unital() {
            return None;
        }
        let mut coords = vec![ModelElem::zero(); self.width()];
        for i in 0..self.n {
            coords[self.idx(i, i)] = ModelElem::one(self.rank);
        }
        Some(Element(coords))
    }

    fn normalize(&self, x: Element) -> Element {
        x
    }

    fn mul(&self, x: &Element, y: &Element) -> Element {
        let n = self.n;
        let mut out = vec![ModelElem::zero(); n * n];
        for i in 0..n {
            for m in 0..n {
                let a = &x.0[i * n + m];
                if a.is_zero() {
                    continue;
                }
                for l in 0..n {
                    let b = &y.0[m * n + l];
                    if !b.is_zero() {
                        out[i * n + l] = &out[i * n + l] + &(a * b);
                    }
                }
            }
        }
        Element(out)
    }

    fn contains(&self, x: &Element) -> bool {
        x.0.len() == self.width()
            && x.0.iter().zip(&self.components).all(|(e, j)| j.member_elem(e))
    }

    fn filter_value(&self, x: &Element) -> Result<CutOrInfty> {
        if !self.contains(x) {
            return Err(Error::NotMember(format!("{x:?}")));
        }
        if x.is_zero() {
            return Ok(CutOrInfty::Infty);
        }
        Ok(CutOrInfty::Finite(self.support(&ValMatrix::of(self.n, x))))
    }

    fn condition_b(&self) -> ConditionB {
        if !self.is_unital() {
            return ConditionB { holds: false, torsion_free: true, unit_witness: None };
        }
        let unit_witness = self.diagonal_unit_witness();
        debug_assert_eq!(unit_witness, units_witness(self));
        ConditionB { holds: unit_witness.is_none(), torsion_free: true, unit_witness }
    }

    fn sample_elem(&self, rng: &mut ChaCha8Rng, spread: i64) -> Element {
        let coords = self
            .components
            .iter()
            .map(|j| match sample_value_in(j, rng, spread) {
                Some(g) => sample_entry(&g, rng, spread),
                None => ModelElem::zero(),
            })
            .collect();
        Element(coords)
    }

    fn position_name(&self, pos: usize) -> String {
        format!("e{}{}", pos / self.n + 1, pos % self.n + 1)
    }

    fn full_component(&self, pos: usize) -> IdealCut {
        self.components[pos].clone()
    }

    fn floor_component(&self, _pos: usize) -> IdealCut {
        IdealCut::zero(self.rank)
    }

    fn candidate_components(&self, pos: usize) -> Vec<IdealCut> {
        let j = &self.components[pos];
        let mut out = vec![j.clone()];
        let d = GroupDescriptor::new(self.rank).expect("validated rank");
        for h in d.isolated_subgroups() {
            let p = IdealCut::prime(&h);
            out.push(p.product(j));
            let shifted = IdealCut::from_boundary(j.boundary() + &h.plus());
            if j.contains(&shifted) {
                out.push(shifted);
            }
        }
        out.push(IdealCut::zero(self.rank));
        dedup_by_inclusion(out)
    }

    fn ideal_violation(&self, grid: &[IdealCut]) -> Option<String> {
        let n = self.n;
        for (p, k) in grid.iter().enumerate() {
            if !self.components[p].contains(k) {
                return Some(format!("K at {} exceeds J", self.position_name(p)));
            }
        }
        for i in 0..n {
            for m in 0..n {
                for l in 0..n {
                    let k_il = &grid[i * n + l];
                    if !product_contained(self.comp(i, m), &grid[m * n + l], k_il) {
                        return Some(format!("J{}{}·K{}{} ⊄ K{}{}", i + 1, m + 1, m + 1, l + 1, i + 1, l + 1));
                    }
                    if !product_contained(&grid[i * n + m], self.comp(m, l), k_il) {
                        return Some(format!("K{}{}·J{}{} ⊄ K{}{}", i + 1, m + 1, m + 1, l + 1, i + 1, l + 1));
                    }
                }
            }
        }
        None
    }

    fn partial_ideal_ok(&self, grid: &[IdealCut], upto: usize) -> bool {
        let n = self.n;
        for i in 0..n {
            for m in 0..n {
                for l in 0..n {
                    let il = i * n + l;
                    if il >= upto {
                        continue;
                    }
                    let ml = m * n + l;
                    if ml < upto && !product_contained(self.comp(i, m), &grid[ml], &grid[il]) {
                        return false;
                    }
                    let im = i * n + m;
                    if im < upto && !product_contained(&grid[im], self.comp(m, l), &grid[il]) {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn sandwich_contained(
        &self,
        a: (usize, &GroupElem),
        b: (usize, &GroupElem),
        grid: &[IdealCut],
    ) -> bool {
        let n = self.n;
        let (i, j) = (a.0 / n, a.0 % n);
        let (k, l) = (b.0 / n, b.0 % n);
        let middle = self.comp(j, k).shift(&(a.1 + b.1));
        grid[i * n + l].contains(&middle)
    }

    fn contraction(&self, grid: &[IdealCut]) -> IdealCut {
        (0..self.n)
            .map(|i| grid[i * self.n + i].clone())
            .fold(IdealCut::ov(self.rank), |acc, k| acc.meet(&k))
    }
}

pub(crate) fn dedup_by_inclusion(mut v: Vec<IdealCut>) -> Vec<IdealCut> {
    v.sort_by(|a, b| a.boundary().cmp(b.boundary()));
    v.dedup();
    v
}
