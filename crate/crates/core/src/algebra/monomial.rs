use rand_chacha::ChaCha8Rng;

use super::pattern::dedup_by_inclusion;
use super::sampling::{sample_entry, sample_nonnegative};
use super::{units_witness, Algebra, ConditionB, Element};
use crate::error::{Error, Result};
use crate::field_model::{IdealCut, ModelElem, Val};
use crate::ordered_values::{Cut, CutOrInfty, GroupDescriptor, GroupElem};

/// `b_i · b_j = t^shift · b_index`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableEntry {
    pub shift: GroupElem,
    pub index: usize,
}

/// `⊕ (O_v / Ann_i) b_i` with `b_0 = 1` and monomial structure constants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialAlgebra {
    rank: usize,
    basis: Vec<String>,
    ann: Vec<IdealCut>,
    table: Vec<Vec<Option<TableEntry>>>,
}

impl MonomialAlgebra {
    pub fn new(
        rank: usize,
        basis: Vec<String>,
        ann: Vec<IdealCut>,
        table: Vec<Vec<Option<TableEntry>>>,
    ) -> Result<Self> {
        GroupDescriptor::new(rank)?;
        let m = basis.len();
        let invalid = |msg: String| Err(Error::InvalidAlgebra(msg));
        if m == 0 || ann.len() != m || table.len() != m || table.iter().any(|row| row.len() != m) {
            return invalid(format!("basis, ann and table sizes disagree (basis has {m})"));
        }
        let iv = IdealCut::iv(rank);
        for (i, a) in ann.iter().enumerate() {
            if a.rank() != rank {
                return Err(Error::RankMismatch { left: rank, right: a.rank() });
            }
            if !iv.contains(a) {
                return invalid(format!("Ann of {} is not a proper ideal of O_v", basis[i]));
            }
        }
        for (i, row) in table.iter().enumerate() {
            for (j, entry) in row.iter().enumerate() {
                let Some(e) = entry else { continue };
                if e.index >= m || e.shift.rank() != rank || e.shift.is_negative() {
                    return invalid(format!("bad table entry {}·{}", basis[i], basis[j]));
                }
                for src in [i, j] {
                    if !ann[e.index].contains(&ann[src].shift(&e.shift)) {
                        return invalid(format!(
                            "Ann of {} does not annihilate {}·{}",
                            basis[src], basis[i], basis[j]
                        ));
                    }
                }
            }
        }
        let zero = GroupElem::zero(rank);
        for (j, row) in table.iter().enumerate() {
            let id = Some(TableEntry { shift: zero.clone(), index: j });
            if table[0][j] != id || row[0] != id {
                return invalid(format!("{} is not a two-sided identity", basis[0]));
            }
        }
        let r = Self { rank, basis, ann, table };
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    let (bi, bj, bk) = (r.basis_elem(i), r.basis_elem(j), r.basis_elem(k));
                    let left = r.mul(&r.mul(&bi, &bj), &bk);
                    let right = r.mul(&bi, &r.mul(&bj, &bk));
                    if left != right {
                        return invalid(format!(
                            "not associative on ({}, {}, {})",
                            r.basis[i], r.basis[j], r.basis[k]
                        ));
                    }
                }
            }
        }
        Ok(r)
    }

    pub fn basis(&self) -> &[String] {
        &self.basis
    }

    pub fn ann(&self) -> &[IdealCut] {
        &self.ann
    }

    pub fn table(&self) -> &[Vec<Option<TableEntry>>] {
        &self.table
    }

    pub fn basis_elem(&self, i: usize) -> Element {
        self.normalize(Element::unit_at(self.basis.len(), i, &GroupElem::zero(self.rank)))
    }

    /// `t^γ b_i`, normalized.
    pub fn term(&self, i: usize, gamma: &GroupElem) -> Element {
        self.normalize(Element::unit_at(self.basis.len(), i, gamma))
    }

    pub fn basis_index(&self, name: &str) -> Option<usize> {
        self.basis.iter().position(|b| b == name)
    }
}

impl Algebra for MonomialAlgebra {
    fn rank(&self) -> usize {
        self.rank
    }

    fn width(&self) -> usize {
        self.basis.len()
    }

    fn dim(&self) -> usize {
        self.ann.iter().filter(|a| a.is_zero()).count()
    }

    fn is_unital(&self) -> bool {
        true
    }

    fn is_torsion_free(&self) -> bool {
        self.ann.iter().all(IdealCut::is_zero)
    }

    fn is_faithful(&self) -> bool {
        self.ann[0].is_zero()
    }

    fn kind(&self) -> &'static str {
        "monomial"
    }

    fn one(&self) -> Option<Element> {
        Some(self.basis_elem(0))
    }

    fn normalize(&self, x: Element) -> Element {
        let coords = x
            .0
            .iter()
            .zip(&self.ann)
            .map(|(c, a)| {
                if a.is_zero() {
                    c.clone()
                } else {
                    c.drop_terms(|e| a.member(&Val::Finite(e.clone())))
                }
            })
            .collect();
        Element(coords)
    }

    fn mul(&self, x: &Element, y: &Element) -> Element {
        let mut out = vec![ModelElem::zero(); self.width()];
        for (i, a) in x.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.0.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                if let Some(e) = &self.table[i][j] {
                    out[e.index] = &out[e.index] + &(a * b).shift(&e.shift);
                }
            }
        }
        self.normalize(Element(out))
    }

    fn contains(&self, x: &Element) -> bool {
        let zero = Val::Finite(GroupElem::zero(self.rank));
        x.0.len() == self.width() && x.0.iter().all(|c| c.valuation() >= zero)
    }

    fn filter_value(&self, x: &Element) -> Result<CutOrInfty> {
        if !self.contains(x) {
            return Err(Error::NotMember(format!("{x:?}")));
        }
        // x ∈ aR iff every coordinate lies in a·O_v + Ann_i; a nonzero
        // normalized coordinate has value outside Ann_i, so only v(a) ≤ v(x_i)
        // can work.
        match self.normalize(x.clone()).min_valuation() {
            Val::Infinite => Ok(CutOrInfty::Infty),
            Val::Finite(g) => Ok(CutOrInfty::Finite(Cut::embed(&g))),
        }
    }

    fn condition_b(&self) -> ConditionB {
        let torsion_free = self.is_torsion_free();
        let unit_witness = units_witness(self);
        ConditionB { holds: torsion_free && unit_witness.is_none(), torsion_free, unit_witness }
    }

    fn sample_elem(&self, rng: &mut ChaCha8Rng, spread: i64) -> Element {
        let coords = (0..self.width())
            .map(|_| match sample_nonnegative(self.rank, rng, spread, true) {
                Some(g) => sample_entry(&g, rng, spread),
                None => ModelElem::zero(),
            })
            .collect();
        self.normalize(Element(coords))
    }

    fn position_name(&self, pos: usize) -> String {
        self.basis[pos].clone()
    }

    fn full_component(&self, _pos: usize) -> IdealCut {
        IdealCut::ov(self.rank)
    }

    fn floor_component(&self, pos: usize) -> IdealCut {
        self.ann[pos].clone()
    }

    fn candidate_components(&self, pos: usize) -> Vec<IdealCut> {
        let d = GroupDescriptor::new(self.rank).expect("validated rank");
        let mut out = vec![IdealCut::ov(self.rank)];
        out.extend(d.isolated_subgroups().map(|h| IdealCut::prime(&h).join(&self.ann[pos])));
        dedup_by_inclusion(out)
    }

    fn ideal_violation(&self, grid: &[IdealCut]) -> Option<String> {
        for (p, k) in grid.iter().enumerate() {
            if !k.contains(&self.ann[p]) || !IdealCut::ov(self.rank).contains(k) {
                return Some(format!("component at {} outside [Ann, O_v]", self.basis[p]));
            }
        }
        self.product_violation(grid, grid.len())
    }

    fn partial_ideal_ok(&self, grid: &[IdealCut], upto: usize) -> bool {
        self.product_violation(grid, upto).is_none()
    }

    fn sandwich_contained(
        &self,
        a: (usize, &GroupElem),
        b: (usize, &GroupElem),
        grid: &[IdealCut],
    ) -> bool {
        let base = a.1 + b.1;
        (0..self.width()).all(|m| {
            let Some(e1) = &self.table[a.0][m] else { return true };
            let Some(e2) = &self.table[e1.index][b.0] else { return true };
            let value = &(&base + &e1.shift) + &e2.shift;
            grid[e2.index].member(&Val::Finite(value))
        })
    }

    fn contraction(&self, grid: &[IdealCut]) -> IdealCut {
        grid[0].clone()
    }

    fn max_param(&self) -> i64 {
        let shifts = self.table.iter().flatten().flatten().map(|e| e.shift.max_abs());
        let anns = self.ann.iter().map(|a| a.boundary().max_abs());
        shifts.chain(anns).max().unwrap_or(0)
    }
}

impl MonomialAlgebra {
    /// Products `b_i · b_j = t^γ b_k` force `K_k ⊇ t^γ K_i` and `K_k ⊇ t^γ K_j`;
    /// only positions below `upto` are considered assigned.
    fn product_violation(&self, grid: &[IdealCut], upto: usize) -> Option<String> {
        for (i, row) in self.table.iter().enumerate() {
            for (j, entry) in row.iter().enumerate() {
                let Some(e) = entry else { continue };
                if e.index >= upto {
                    continue;
                }
                for src in [i, j] {
                    if src < upto && !grid[e.index].contains(&grid[src].shift(&e.shift)) {
                        return Some(format!(
                            "{}·{} leaves the ideal at {}",
                            self.basis[i], self.basis[j], self.basis[e.index]
                        ));
                    }
                }
            }
        }
        None
    }
}
