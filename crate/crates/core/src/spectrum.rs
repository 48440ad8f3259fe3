//! Prime spectra of algebras over O_v, their contraction to `Spec(O_v)`,
//! and finite checks of the lying-over / going-up / going-down family.
//!
//! Ideals are grids with one [`IdealCut`] per ambient position. Enumeration
//! searches the candidate components each algebra proposes, so every
//! statement here holds "within the candidate family".

use std::collections::HashMap;
use std::fmt;

use rand::Rng;
use serde::Serialize;

use crate::algebra::sampling::{rng, sample_nonnegative, DEFAULT_SPREAD};
use crate::algebra::{Algebra, Element};
use crate::error::{Error, Result};
use crate::field_model::{spec_base, IdealCut, ModelElem, Val};
use crate::ordered_values::{Cut, CutOrInfty, CutRepr, GroupElem, IsolatedSubgroup};
use crate::quasival::{
    check_v_qv, filter, image_scan, min_formula_qv, minimal_generators,
    Provenance, QuasiValuation,
};
use crate::verdict::Verdict;

pub const DEFAULT_BOUND: u64 = 200_000;

/// A prime ideal of the algebra and the index of its contraction in the base
/// chain (`0` is `{0}`, `rank` is `I_v`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecNode {
    pub grid: Vec<IdealCut>,
    pub over: usize,
}

#[derive(Clone, Debug)]
pub struct ContractionMap {
    rank: usize,
    positions: Vec<String>,
    base: Vec<IdealCut>,
    nodes: Vec<SpecNode>,
    /// `below[i][j]`: node `i` is contained in node `j`.
    below: Vec<Vec<bool>>,
}

impl ContractionMap {
    fn new(rank: usize, positions: Vec<String>, mut nodes: Vec<SpecNode>) -> Self {
        nodes.sort_by(|a, b| {
            a.over.cmp(&b.over).then_with(|| {
                let ka: Vec<&Cut> = a.grid.iter().map(IdealCut::boundary).collect();
                let kb: Vec<&Cut> = b.grid.iter().map(IdealCut::boundary).collect();
                kb.cmp(&ka)
            })
        });
        let below = nodes
            .iter()
            .map(|a| {
                nodes
                    .iter()
                    .map(|b| a.grid.iter().zip(&b.grid).all(|(x, y)| y.contains(x)))
                    .collect()
            })
            .collect();
        let base = spec_base(rank).into_iter().map(|(_, p)| p).collect();
        Self { rank, positions, base, nodes, below }
    }

    /// A map over arbitrary nodes; the order is recomputed from the grids.
    pub fn from_nodes(rank: usize, positions: Vec<String>, nodes: Vec<SpecNode>) -> Self {
        Self::new(rank, positions, nodes)
    }

    pub fn positions(&self) -> &[String] {
        &self.positions
    }

    /// `Spec(O_v)` mapped to itself.
    pub fn base_identity(rank: usize) -> Self {
        let nodes = spec_base(rank)
            .into_iter()
            .enumerate()
            .map(|(over, (_, p))| SpecNode { grid: vec![p], over })
            .collect();
        Self::new(rank, vec!["1".into()], nodes)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn base(&self) -> &[IdealCut] {
        &self.base
    }

    pub fn nodes(&self) -> &[SpecNode] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn contained(&self, i: usize, j: usize) -> bool {
        self.below[i][j]
    }

    pub fn strictly_below(&self, i: usize, j: usize) -> bool {
        i != j && self.below[i][j]
    }

    pub fn fiber(&self, base_index: usize) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.nodes[i].over == base_index).collect()
    }

    pub fn maximal_nodes(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| !(0..self.len()).any(|j| self.strictly_below(i, j)))
            .collect()
    }

    pub fn minimal_nodes(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| !(0..self.len()).any(|j| self.strictly_below(j, i)))
            .collect()
    }

    fn covers(&self, i: usize) -> Vec<usize> {
        (0..self.len())
            .filter(|&j| {
                self.strictly_below(i, j)
                    && !(0..self.len()).any(|k| self.strictly_below(i, k) && self.strictly_below(k, j))
            })
            .collect()
    }

    /// All maximal chains, each listed bottom to top.
    pub fn maximal_chains(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        for start in self.minimal_nodes() {
            let mut stack = vec![vec![start]];
            while let Some(chain) = stack.pop() {
                let last = *chain.last().expect("nonempty");
                let up = self.covers(last);
                if up.is_empty() {
                    out.push(chain);
                    continue;
                }
                for j in up {
                    let mut next = chain.clone();
                    next.push(j);
                    stack.push(next);
                }
            }
        }
        out.sort();
        out
    }

    /// Number of primes in a longest chain.
    pub fn longest_chain(&self) -> usize {
        let mut memo = vec![0usize; self.len()];
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&i| self.below[i].iter().filter(|&&b| b).count());
        // Nodes with fewer supersets come first, so every superset is done.
        for &i in &order {
            memo[i] = 1 + (0..self.len())
                .filter(|&j| self.strictly_below(i, j))
                .map(|j| memo[j])
                .max()
                .unwrap_or(0);
        }
        memo.into_iter().max().unwrap_or(0)
    }

    pub fn label(&self, i: usize) -> String {
        grid_label(&self.positions, &self.nodes[i].grid)
    }

    pub fn base_label(&self, b: usize) -> String {
        self.base[b].to_string()
    }
}

fn grid_label(positions: &[String], grid: &[IdealCut]) -> String {
    let parts: Vec<String> = positions.iter().zip(grid).map(|(p, k)| format!("{p}:{k}")).collect();
    format!("[{}]", parts.join(" "))
}

impl fmt::Display for ContractionMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len() {
            writeln!(f, "{} -> {}", self.label(i), self.base_label(self.nodes[i].over))?;
        }
        Ok(())
    }
}

/// Index of a contraction in the base chain.
fn base_index(base: &[IdealCut], p: &IdealCut) -> Option<usize> {
    base.iter().position(|b| b == p)
}

/// The largest value outside `k`, with unconstrained trailing coordinates
/// set to `big`; `None` when `k = F`.
fn outside_representative(k: &IdealCut, big: i64) -> Option<GroupElem> {
    let rank = k.rank();
    match k.boundary().repr() {
        CutRepr::Bottom => None,
        CutRepr::Top => Some(GroupElem::new(vec![big; rank])),
        CutRepr::Prefix(p) => {
            let mut g: Vec<i64> = p.to_vec();
            g.resize(rank, big);
            Some(GroupElem::new(g))
        }
    }
}

/// Why `grid` is not a prime ideal, or `None` when it is one. Primality is
/// tested on monomial witnesses: `t^α` at `p` and `t^β` at `q` outside the
/// grid with `t^α R t^β` inside it. Since containment only gets easier as
/// values grow, the largest values outside each component are the only
/// witnesses worth trying.
pub fn prime_violation<A: Algebra + ?Sized>(r: &A, grid: &[IdealCut]) -> Option<String> {
    if let Some(w) = r.ideal_violation(grid) {
        return Some(format!("not an ideal: {w}"));
    }
    let full = r.full_grid();
    if grid == full.as_slice() {
        return Some("not proper".into());
    }
    let big = 4 * r.max_param() + 10;
    let reps: Vec<Option<GroupElem>> = grid
        .iter()
        .zip(&full)
        .map(|(k, j)| if k == j { None } else { outside_representative(k, big) })
        .collect();
    for (p, a) in reps.iter().enumerate() {
        let Some(a) = a else { continue };
        debug_assert!(full[p].member(&Val::Finite(a.clone())));
        for (q, b) in reps.iter().enumerate() {
            let Some(b) = b else { continue };
            if r.sandwich_contained((p, a), (q, b), grid) {
                return Some(format!(
                    "t^{a} at {} and t^{b} at {} are outside but their sandwich is inside",
                    r.position_name(p),
                    r.position_name(q)
                ));
            }
        }
    }
    None
}

pub fn is_prime<A: Algebra + ?Sized>(r: &A, grid: &[IdealCut]) -> bool {
    prime_violation(r, grid).is_none()
}

/// All prime grids within the candidate family, visiting at most `bound`
/// partial assignments.
pub fn enumerate_spec<A: Algebra + ?Sized>(r: &A, bound: u64) -> Result<ContractionMap> {
    if !r.is_unital() {
        return Err(Error::Precondition("contraction needs an identity element".into()));
    }
    let width = r.width();
    let candidates: Vec<Vec<IdealCut>> = (0..width)
        .map(|p| {
            let (lo, hi) = (r.floor_component(p), r.full_component(p));
            r.candidate_components(p)
                .into_iter()
                .filter(|c| c.contains(&lo) && hi.contains(c))
                .collect()
        })
        .collect();
    let base: Vec<IdealCut> = spec_base(r.rank()).into_iter().map(|(_, p)| p).collect();
    let mut visited = 0u64;
    let mut found = Vec::new();
    let mut grid: Vec<IdealCut> = r.floor_grid();
    let mut choice = vec![0usize; width];
    let mut pos = 0usize;
    // Iterative depth-first search over `choice`.
    loop {
        if pos == width {
            if is_prime(r, &grid) {
                let c = r.contraction(&grid);
                let over = base_index(&base, &c).ok_or_else(|| {
                    Error::Precondition(format!("contraction {c} of a prime is not prime"))
                })?;
                found.push(SpecNode { grid: grid.clone(), over });
            }
            pos -= 1;
            choice[pos] += 1;
            continue;
        }
        if choice[pos] >= candidates[pos].len() {
            choice[pos] = 0;
            if pos == 0 {
                break;
            }
            pos -= 1;
            choice[pos] += 1;
            continue;
        }
        visited += 1;
        if visited > bound {
            return Err(Error::BoundExceeded { needed: visited, bound });
        }
        grid[pos] = candidates[pos][choice[pos]].clone();
        if r.partial_ideal_ok(&grid, pos + 1) {
            pos += 1;
        } else {
            choice[pos] += 1;
        }
    }
    let positions = (0..width).map(|p| r.position_name(p)).collect();
    Ok(ContractionMap::new(r.rank(), positions, found))
}

pub fn check_lo(m: &ContractionMap) -> Verdict {
    let missing = (0..m.base.len()).find(|&b| m.fiber(b).is_empty());
    Verdict::from_witness(missing.map(|b| format!("no prime over {}", m.base_label(b))))
}

pub fn check_gd(m: &ContractionMap) -> Verdict {
    for q2 in 0..m.len() {
        for p1 in 0..m.nodes[q2].over {
            if !m.fiber(p1).iter().any(|&q1| m.strictly_below(q1, q2)) {
                return Verdict::fail(format!(
                    "{} over {} has nothing below it over {}",
                    m.label(q2),
                    m.base_label(m.nodes[q2].over),
                    m.base_label(p1)
                ));
            }
        }
    }
    Verdict::Pass
}

pub fn check_gu(m: &ContractionMap) -> Verdict {
    for q1 in 0..m.len() {
        for p2 in m.nodes[q1].over + 1..m.base.len() {
            if !m.fiber(p2).iter().any(|&q2| m.strictly_below(q1, q2)) {
                return Verdict::fail(format!(
                    "{} over {} has nothing above it over {}",
                    m.label(q1),
                    m.base_label(m.nodes[q1].over),
                    m.base_label(p2)
                ));
            }
        }
    }
    Verdict::Pass
}

pub fn check_inc(m: &ContractionMap) -> Verdict {
    for i in 0..m.len() {
        for j in 0..m.len() {
            if m.strictly_below(i, j) && m.nodes[i].over == m.nodes[j].over {
                return Verdict::fail(format!(
                    "{} ⊂ {} both over {}",
                    m.label(i),
                    m.label(j),
                    m.base_label(m.nodes[i].over)
                ));
            }
        }
    }
    Verdict::Pass
}

pub fn check_sgb(m: &ContractionMap) -> Verdict {
    for q1 in 0..m.len() {
        for q3 in 0..m.len() {
            if !m.strictly_below(q1, q3) {
                continue;
            }
            let (p1, p3) = (m.nodes[q1].over, m.nodes[q3].over);
            for p2 in p1 + 1..p3 {
                let between = m
                    .fiber(p2)
                    .into_iter()
                    .any(|q2| m.strictly_below(q1, q2) && m.strictly_below(q2, q3));
                if !between {
                    return Verdict::fail(format!(
                        "nothing over {} between {} and {}",
                        m.base_label(p2),
                        m.label(q1),
                        m.label(q3)
                    ));
                }
            }
        }
    }
    Verdict::Pass
}

/// For every `Q_0`, some chain ending at `Q_0` covers every base prime
/// below its contraction. Larger base chains ending at the same prime are
/// the hardest case, so only those are checked.
pub fn check_ggd(m: &ContractionMap) -> Verdict {
    let mut memo: HashMap<usize, bool> = HashMap::new();
    fn covered(m: &ContractionMap, q: usize, memo: &mut HashMap<usize, bool>) -> bool {
        if let Some(&b) = memo.get(&q) {
            return b;
        }
        let over = m.nodes[q].over;
        let ok = over == 0
            || (0..m.len()).any(|q2| {
                m.strictly_below(q2, q) && m.nodes[q2].over + 1 >= over && covered(m, q2, memo)
            });
        memo.insert(q, ok);
        ok
    }
    let bad = (0..m.len()).find(|&q| !covered(m, q, &mut memo));
    Verdict::from_witness(bad.map(|q| {
        format!("no chain ending at {} covers the primes below {}", m.label(q), m.base_label(m.nodes[q].over))
    }))
}

/// Every maximal chain contracts bijectively and monotonically onto the base
/// chain, and `Max(R)` is the fiber over `I_v`.
pub fn check_chain_bijection(m: &ContractionMap, evidence: Option<&QvEvidence>) -> Verdict {
    match evidence {
        Some(e) if e.qualifies() => {}
        Some(e) => return Verdict::not_applicable(format!("no qualifying quasi-valuation: {}", e.summary())),
        None => return Verdict::not_applicable("no quasi-valuation evidence"),
    }
    let expected: Vec<usize> = (0..m.base.len()).collect();
    for chain in m.maximal_chains() {
        let overs: Vec<usize> = chain.iter().map(|&i| m.nodes[i].over).collect();
        if overs != expected {
            let labels: Vec<String> = chain.iter().map(|&i| m.label(i)).collect();
            return Verdict::fail(format!("chain {} contracts to indices {overs:?}", labels.join(" ⊂ ")));
        }
    }
    max_is_fiber_over_iv(m)
}

fn max_is_fiber_over_iv(m: &ContractionMap) -> Verdict {
    let top = m.base.len() - 1;
    let max = m.maximal_nodes();
    let fiber = m.fiber(top);
    if max != fiber {
        let names = |v: &[usize]| v.iter().map(|&i| m.label(i)).collect::<Vec<_>>().join(", ");
        return Verdict::fail(format!("Max = {{{}}} but fiber over Iv = {{{}}}", names(&max), names(&fiber)));
    }
    Verdict::Pass
}

/// Every prime over `I_v` is maximal.
pub fn check_max_over_iv(m: &ContractionMap) -> Verdict {
    let top = m.base.len() - 1;
    let maximal = m.maximal_nodes();
    let bad = m.fiber(top).into_iter().find(|q| !maximal.contains(q));
    Verdict::from_witness(bad.map(|q| format!("{} lies over Iv but is not maximal", m.label(q))))
}

/// Minimal primes lie over `{0}`.
pub fn check_minimal_over_zero(m: &ContractionMap) -> Verdict {
    let bad = m.minimal_nodes().into_iter().find(|&q| m.nodes[q].over != 0);
    Verdict::from_witness(bad.map(|q| {
        format!("minimal prime {} lies over {}", m.label(q), m.base_label(m.nodes[q].over))
    }))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundsReport {
    pub dim: usize,
    pub spec_size: usize,
    pub base_size: usize,
    pub longest_chain: usize,
    /// `|Q_P| ≤ dim` for every base prime.
    pub fiber: Verdict,
    /// `|Spec(R)| ≤ dim · (rank + 1)`.
    pub total: Verdict,
    /// `rank + 1 ≤ |Spec(R)|`, reading the lower bound as a spectrum size.
    pub lower_cardinality: Verdict,
    /// `rank ≤ |Spec(R)|`, reading it as the Krull dimension.
    pub lower_dimension: Verdict,
    /// Longest chain has `rank + 1` primes.
    pub krull_eq: Verdict,
}

impl BoundsReport {
    pub fn overall(&self) -> Verdict {
        [&self.fiber, &self.total, &self.lower_cardinality, &self.krull_eq]
            .into_iter()
            .find(|v| v.is_fail())
            .cloned()
            .unwrap_or(Verdict::Pass)
    }
}

pub fn check_bounds(m: &ContractionMap, dim: usize, condition_b: bool, torsion_free: bool) -> BoundsReport {
    let base_size = m.base.len();
    let spec_size = m.len();
    let longest = m.longest_chain();
    let fiber = (0..base_size)
        .map(|b| (b, m.fiber(b).len()))
        .find(|&(_, n)| n > dim)
        .map(|(b, n)| format!("{n} primes over {} exceed dim {dim}", m.base_label(b)));
    let fiber = Verdict::from_witness(fiber);
    let total = Verdict::from_witness(
        (spec_size > dim * base_size).then(|| format!("{spec_size} primes exceed {dim}·{base_size}")),
    );
    let gate = |v: Option<String>| {
        if condition_b {
            Verdict::from_witness(v)
        } else {
            Verdict::not_applicable("units condition fails")
        }
    };
    let lower_cardinality =
        gate((spec_size < base_size).then(|| format!("{spec_size} primes, fewer than {base_size}")));
    let lower_dimension =
        gate((spec_size < base_size - 1).then(|| format!("{spec_size} primes, fewer than {}", base_size - 1)));
    let krull_eq = if condition_b && torsion_free {
        Verdict::from_witness(
            (longest != base_size).then(|| format!("longest chain has {longest} primes, base has {base_size}")),
        )
    } else {
        Verdict::not_applicable("needs a torsion-free algebra with the units condition")
    };
    BoundsReport { dim, spec_size, base_size, longest_chain: longest, fiber, total, lower_cardinality, lower_dimension, krull_eq }
}

/// What is known about a quasi-valuation on the algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QvEvidence {
    pub source: Provenance,
    pub v_qv: bool,
    pub one_is_zero: bool,
    pub cancellative: bool,
    pub nonzero_infty: bool,
    pub finitely_generated: bool,
}

impl QvEvidence {
    /// A v-quasi-valuation with `w(1) = 0`, cancellative values and no
    /// nonzero `∞`, on a finite-dimensional `R ⊗ F`.
    pub fn qualifies(&self) -> bool {
        self.v_qv && self.one_is_zero && self.cancellative && !self.nonzero_infty
    }

    fn summary(&self) -> String {
        format!(
            "v_qv={} w(1)=0:{} cancellative={} nonzero_infty={}",
            self.v_qv, self.one_is_zero, self.cancellative, self.nonzero_infty
        )
    }
}

/// Evidence from the min-formula quasi-valuation when minimal generators
/// exist, else from the filter quasi-valuation.
pub fn qv_evidence<A: Algebra + ?Sized>(r: &A, samples: usize, seed: u64) -> Result<QvEvidence> {
    let gather = |w: &dyn QuasiValuation, fg: bool| -> Result<QvEvidence> {
        let v = check_v_qv(w, r, samples, seed);
        let img = image_scan(w, r, samples, seed)?;
        Ok(QvEvidence {
            source: w.provenance(),
            v_qv: v.homogeneity.is_pass(),
            one_is_zero: v.one_is_zero.is_pass(),
            cancellative: img.all_cancellative,
            nonzero_infty: img.nonzero_infty,
            finitely_generated: fg,
        })
    };
    match minimal_generators(r) {
        Ok(basis) => gather(&min_formula_qv(r, basis), true),
        Err(_) => gather(&filter(r), false),
    }
}

/// Separation step of going down: values on `P_1 R` sit above `H_1⁺` and
/// values on `(O_v ∖ P_1)(R ∖ Q_2)` sit at or below it.
pub fn gd_separation<A: Algebra + ?Sized>(
    r: &A,
    w: &dyn QuasiValuation,
    m: &ContractionMap,
    p1: usize,
    q2: usize,
    samples: usize,
    seed: u64,
) -> Result<Verdict> {
    if !r.is_torsion_free() {
        return Err(Error::Precondition("algebra has O_v-torsion".into()));
    }
    if p1 >= m.nodes[q2].over {
        return Err(Error::Precondition(format!(
            "{} is not below the contraction of {}",
            m.base_label(p1),
            m.label(q2)
        )));
    }
    let rank = r.rank();
    let h1 = IsolatedSubgroup::new(rank, rank - p1)?;
    let threshold = CutOrInfty::Finite(h1.plus());
    let q2grid = &m.nodes[q2].grid;
    let mut g = rng(seed);
    let samples_r = crate::algebra::sample_elements(r, samples.max(2) * 2, seed ^ 0x9d);
    let in_p1 = |g: &mut rand_chacha::ChaCha8Rng| -> GroupElem {
        let mut c: Vec<i64> = sample_nonnegative(rank, g, DEFAULT_SPREAD, false)
            .expect("always some")
            .coords()
            .to_vec();
        let k = rank - h1.index();
        if c[..k].iter().all(|&x| x == 0) {
            c[k - 1] += 1 + g.gen_range(0..DEFAULT_SPREAD);
        }
        GroupElem::new(c)
    };
    let outside_p1 = |g: &mut rand_chacha::ChaCha8Rng| -> GroupElem {
        let mut c: Vec<i64> = sample_nonnegative(rank, g, DEFAULT_SPREAD, false)
            .expect("always some")
            .coords()
            .to_vec();
        let k = rank - h1.index();
        c[..k].iter_mut().for_each(|x| *x = 0);
        let e = GroupElem::new(c);
        if e.is_negative() { -e } else { e }
    };
    for i in 0..samples {
        if p1 > 0 {
            let (a, b) = (&samples_r[2 * i % samples_r.len()], &samples_r[(2 * i + 1) % samples_r.len()]);
            let x = r.add(
                &r.scalar(&ModelElem::t_pow(in_p1(&mut g)), a),
                &r.scalar(&ModelElem::t_pow(in_p1(&mut g)), b),
            );
            let wx = w.evaluate(&x)?;
            if wx <= threshold {
                return Ok(Verdict::fail(format!("x = {x:?} in P R has w(x) = {wx} ≤ {threshold}")));
            }
        }
        let s2 = if i == 0 {
            r.one().expect("unital")
        } else {
            let cand = &samples_r[i % samples_r.len()];
            if grid_member(r, q2grid, cand) {
                continue;
            }
            cand.clone()
        };
        let s = r.scalar(&ModelElem::t_pow(outside_p1(&mut g)), &s2);
        let ws = w.evaluate(&s)?;
        if ws > threshold {
            return Ok(Verdict::fail(format!("s = {s:?} outside the multiplicative set bound: w(s) = {ws}")));
        }
    }
    Ok(Verdict::Pass)
}

/// Whether `x` lies in the ideal given by `grid`.
pub fn grid_member<A: Algebra + ?Sized>(r: &A, grid: &[IdealCut], x: &Element) -> bool {
    let x = r.normalize(x.clone());
    x.0.iter().zip(grid).all(|(c, k)| k.member(&c.valuation()))
}

/// `I_0 + P_1·R` for `O_w = R`, computed componentwise.
pub fn lift_ideal<A: Algebra + ?Sized>(r: &A, i0: &[IdealCut], p1: &IdealCut) -> Vec<IdealCut> {
    i0.iter()
        .enumerate()
        .map(|(p, k)| k.join(&p1.product(&r.full_component(p))).join(&r.floor_component(p)))
        .collect()
}

/// The going-up step from `I_0` over `P_0` to some prime over `P_1 ⊇ P_0`.
pub fn gu_lift<A: Algebra + ?Sized>(
    r: &A,
    evidence: &QvEvidence,
    m: &ContractionMap,
    i0: usize,
    p1: usize,
) -> Verdict {
    if !evidence.qualifies() {
        return Verdict::not_applicable(format!("no qualifying quasi-valuation: {}", evidence.summary()));
    }
    if p1 < m.nodes[i0].over {
        return Verdict::not_applicable("target prime is below the contraction");
    }
    let sum = lift_ideal(r, &m.nodes[i0].grid, &m.base[p1]);
    if let Some(v) = r.ideal_violation(&sum) {
        return Verdict::fail(format!("I0 + P1·R is not an ideal: {v}"));
    }
    let c = r.contraction(&sum);
    if c != m.base[p1] {
        return Verdict::fail(format!(
            "I0 + P1·R for I0 = {} contracts to {c}, not {}",
            m.label(i0),
            m.base_label(p1)
        ));
    }
    let contains = |q: usize| m.nodes[q].grid.iter().zip(&sum).all(|(k, s)| k.contains(s));
    if m.fiber(p1).into_iter().any(contains) {
        Verdict::Pass
    } else {
        Verdict::fail(format!(
            "no prime over {} contains {}",
            m.base_label(p1),
            grid_label(&m.positions, &sum)
        ))
    }
}

/// Going up for finitely generated algebras: units condition, maximal primes
/// over `I_v`, and GU on the map.
pub fn fg_gu_check<A: Algebra + ?Sized>(r: &A, m: &ContractionMap) -> Verdict {
    if !r.is_finitely_generated() {
        return Verdict::not_applicable("not finitely generated: a component is not principal");
    }
    if let Some(w) = r.condition_b().unit_witness {
        return Verdict::fail(format!("t^{w}·1 is a unit of R"));
    }
    let top = m.base.len() - 1;
    if let Some(q) = m.maximal_nodes().into_iter().find(|&q| m.nodes[q].over != top) {
        return Verdict::fail(format!("maximal prime {} lies over {}", m.label(q), m.base_label(m.nodes[q].over)));
    }
    check_gu(m)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyReport {
    pub lo: Verdict,
    pub gd: Verdict,
    pub gu: Verdict,
    pub inc: Verdict,
    pub sgb: Verdict,
    pub ggd: Verdict,
    pub chain_bijection: Verdict,
    pub max_over_iv: Verdict,
    pub bounds: Verdict,
    pub krull_eq: Verdict,
    pub minimal_over_zero: Verdict,
    pub fg_gu: Verdict,
    pub gu_lift: Verdict,
    pub gd_separation: Verdict,
    pub bound_details: BoundsReport,
    pub evidence: Option<QvEvidence>,
    /// Implications the checks neither confirm nor refute.
    pub open: Vec<&'static str>,
}

/// The whole property suite on an enumerated map.
pub fn check_properties<A: Algebra + ?Sized>(
    r: &A,
    m: &ContractionMap,
    samples: usize,
    seed: u64,
) -> Result<PropertyReport> {
    let cond_b = r.condition_b();
    let evidence = if r.is_torsion_free() { Some(qv_evidence(r, samples, seed)?) } else { None };
    let details = check_bounds(m, r.dim(), cond_b.holds, r.is_torsion_free());

    let gu_lift = match &evidence {
        None => Verdict::not_applicable("algebra has O_v-torsion"),
        Some(e) => first_fail((0..m.len()).flat_map(|i0| {
            (m.nodes[i0].over..m.base.len()).map(move |p1| (i0, p1))
        }).map(|(i0, p1)| gu_lift(r, e, m, i0, p1))),
    };
    let gd_separation = if r.is_torsion_free() {
        let w = filter(r);
        let mut v = Verdict::Pass;
        'outer: for q2 in 0..m.len() {
            for p1 in 0..m.nodes[q2].over {
                let s = gd_separation(r, &w, m, p1, q2, samples.min(64), seed ^ (q2 * 31 + p1) as u64)?;
                if s.is_fail() {
                    v = s;
                    break 'outer;
                }
            }
        }
        v
    } else {
        Verdict::not_applicable("algebra has O_v-torsion")
    };

    Ok(PropertyReport {
        lo: check_lo(m),
        gd: check_gd(m),
        gu: check_gu(m),
        inc: check_inc(m),
        sgb: check_sgb(m),
        ggd: check_ggd(m),
        chain_bijection: check_chain_bijection(m, evidence.as_ref()),
        max_over_iv: check_max_over_iv(m),
        bounds: details.overall(),
        krull_eq: details.krull_eq.clone(),
        minimal_over_zero: check_minimal_over_zero(m),
        fg_gu: fg_gu_check(r, m),
        gu_lift,
        gd_separation,
        bound_details: details,
        evidence,
        open: vec!["whether going up alone yields a qualifying quasi-valuation is unknown"],
    })
}

/// The first failure, else `Pass` if anything passed, else the first
/// not-applicable reason.
fn first_fail(vs: impl IntoIterator<Item = Verdict>) -> Verdict {
    let mut na = None;
    let mut passed = false;
    for v in vs {
        match v {
            Verdict::Fail { .. } => return v,
            Verdict::Pass => passed = true,
            Verdict::NotApplicable { .. } => {
                na.get_or_insert(v);
            }
        }
    }
    if passed {
        Verdict::Pass
    } else {
        na.unwrap_or_else(|| Verdict::not_applicable("no instances"))
    }
}
