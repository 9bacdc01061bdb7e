//! Finite covering selection with machine-checked guarantees.
//!
//! The input is a multi-scale family of shapes `F[i][j]` with base-point sets
//! `A[i][j]` inside an ambient set `F`, together with the smallness parameter
//! `delta`, a displacement set `D` and a temperedness constant `C`. The
//! selection produces a subcollection of translates `F[i][j]·a` that is
//! `10·delta^{1/4}`-disjoint and covers an `(alpha - delta^{1/4})` fraction of
//! the ambient set, where `alpha = min_i |D·A_{i,*}| / |F|`.
//!
//! Disjointness with shrunken cores is decided exactly by a feasibility flow,
//! and every returned selection is re-verified post hoc; a selection that
//! cannot be certified is an error, never a silent downgrade.
//!
//! `delta^{1/4}` is irrational, so certificates use rational enclosures: the
//! lower endpoint makes both the core quota and the coverage threshold at
//! least as strict as the exact values they stand in for.

mod flow;
mod generate;

pub use generate::{random_instance, InstanceParams};

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::group::{FiniteSubset, Group, GroupElement, GroupError};
use crate::numeric::{ceil_to_usize, fourth_root_bounds, widen};
use flow::FlowNetwork;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum CoveringError {
    #[error("delta must lie strictly between 0 and 1/100, got {0}")]
    InvalidDelta(Rational64),
    #[error("disjointness parameter must lie in [0, 1), got {0}")]
    InvalidSlack(Rational64),
    #[error("malformed instance: {0}")]
    Malformed(String),
    #[error("instance fails the selection hypotheses")]
    HypothesesNotMet,
    #[error("selection could not certify the coverage bound: {0}")]
    GuaranteeUnmet(String),
    #[error("instance generation failed: {0}")]
    GenerationFailed(String),
    #[error("instance generation supports only Z (interval shapes)")]
    UnsupportedGroup,
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Multi-scale covering input: shapes, base points, ambient set and constants.
#[derive(Clone, Debug, PartialEq)]
pub struct CoveringInstance {
    group: Group,
    shapes: Vec<Vec<FiniteSubset>>,
    bases: Vec<Vec<FiniteSubset>>,
    ambient: FiniteSubset,
    delta: Rational64,
    d_set: FiniteSubset,
    c_const: Rational64,
}

/// Exact evaluation of each selection hypothesis.
#[derive(Clone, Debug, PartialEq)]
pub struct HypothesisReport {
    /// Within-row temperedness, one flag per row.
    pub row_tempered: Vec<bool>,
    /// Cross-row smallness, one flag per (row, shape); first row is vacuous.
    pub cross_row: Vec<Vec<bool>>,
    /// `min_i |D·A_{i,*}| / |F|`.
    pub alpha: Rational64,
    /// Every translate lies inside the ambient set.
    pub containment: bool,
}

impl HypothesisReport {
    pub fn all_hold(&self) -> bool {
        self.containment
            && self.row_tempered.iter().all(|b| *b)
            && self.cross_row.iter().flatten().all(|b| *b)
    }
}

/// One selected translate `F[row][col]·base`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelectedTranslate {
    pub row: usize,
    pub col: usize,
    pub base: GroupElement,
}

/// Output of the covering selection, verified before it is returned.
#[derive(Clone, Debug, PartialEq)]
pub struct SelectionResult {
    pub selected: Vec<SelectedTranslate>,
    /// The translate sets, parallel to `selected`.
    pub translates: Vec<FiniteSubset>,
    /// Pairwise-disjoint cores, parallel to `selected`.
    pub cores: Vec<FiniteSubset>,
    /// `|union of translates| / |ambient|`, exact.
    pub coverage: Rational64,
    pub alpha: Rational64,
    /// Distinct base points with their multiplicities.
    pub base_multiplicity: BTreeMap<GroupElement, usize>,
}

impl SelectionResult {
    /// Distinct base points appearing in the selection.
    pub fn base_points(&self) -> impl Iterator<Item = &GroupElement> {
        self.base_multiplicity.keys()
    }
}

impl CoveringInstance {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        group: Group,
        shapes: Vec<Vec<FiniteSubset>>,
        bases: Vec<Vec<FiniteSubset>>,
        ambient: FiniteSubset,
        delta: Rational64,
        d_set: FiniteSubset,
        c_const: Rational64,
    ) -> Result<CoveringInstance, CoveringError> {
        if delta <= Rational64::zero() || delta >= Rational64::new(1, 100) {
            return Err(CoveringError::InvalidDelta(delta));
        }
        if c_const <= Rational64::zero() {
            return Err(CoveringError::Malformed("C must be positive".into()));
        }
        if shapes.is_empty() || shapes.len() != bases.len() {
            return Err(CoveringError::Malformed(
                "shape and base arrays must be nonempty and parallel".into(),
            ));
        }
        for (i, (srow, brow)) in shapes.iter().zip(&bases).enumerate() {
            if srow.is_empty() || srow.len() != brow.len() {
                return Err(CoveringError::Malformed(format!(
                    "row {i}: shapes and bases must be nonempty and parallel"
                )));
            }
            for (j, s) in srow.iter().enumerate() {
                if s.is_empty() {
                    return Err(CoveringError::Malformed(format!("shape ({i},{j}) is empty")));
                }
            }
        }
        if ambient.is_empty() || d_set.is_empty() {
            return Err(CoveringError::Malformed("ambient and D must be nonempty".into()));
        }
        let same_group = shapes
            .iter()
            .flatten()
            .chain(bases.iter().flatten())
            .all(|s| s.group() == group)
            && ambient.group() == group
            && d_set.group() == group;
        if !same_group {
            return Err(GroupError::MixedGroups.into());
        }
        let inst = CoveringInstance { group, shapes, bases, ambient, delta, d_set, c_const };
        if let Some(msg) = inst.containment_failure()? {
            return Err(CoveringError::Malformed(msg));
        }
        Ok(inst)
    }

    pub fn group(&self) -> Group {
        self.group
    }

    pub fn rows(&self) -> usize {
        self.shapes.len()
    }

    pub fn shapes(&self) -> &[Vec<FiniteSubset>] {
        &self.shapes
    }

    pub fn bases(&self) -> &[Vec<FiniteSubset>] {
        &self.bases
    }

    pub fn ambient(&self) -> &FiniteSubset {
        &self.ambient
    }

    pub fn delta(&self) -> Rational64 {
        self.delta
    }

    pub fn d_set(&self) -> &FiniteSubset {
        &self.d_set
    }

    pub fn c_const(&self) -> Rational64 {
        self.c_const
    }

    fn containment_failure(&self) -> Result<Option<String>, CoveringError> {
        for (i, (srow, brow)) in self.shapes.iter().zip(&self.bases).enumerate() {
            for (j, (shape, base)) in srow.iter().zip(brow).enumerate() {
                for a in base.iter() {
                    if !shape.right_translate(a)?.is_subset(&self.ambient) {
                        return Ok(Some(format!(
                            "translate of shape ({i},{j}) by {a} escapes the ambient set"
                        )));
                    }
                }
            }
        }
        Ok(None)
    }

    /// Evaluates each hypothesis exactly and reports per-condition outcomes.
    pub fn check_hypotheses(&self) -> Result<HypothesisReport, CoveringError> {
        let c_big = widen(self.c_const);
        let mut row_tempered = Vec::with_capacity(self.rows());
        for row in &self.shapes {
            let mut ok = true;
            let mut acc = row[0].inverse_set();
            for k in 1..row.len() {
                let u = acc.product_set(&row[k])?;
                let lhs = BigRational::from_integer(BigInt::from(u.len()));
                let rhs = &c_big * BigRational::from_integer(BigInt::from(row[k].len()));
                ok &= lhs <= rhs;
                if k + 1 < row.len() {
                    acc.union_in_place(&row[k].inverse_set())?;
                }
            }
            row_tempered.push(ok);
        }

        let bound = BigRational::one() + widen(self.delta);
        let mut cross_row = Vec::with_capacity(self.rows());
        let mut acc: Option<FiniteSubset> = None; // union over earlier rows of D·F_{i,*}^{-1}
        for (i, row) in self.shapes.iter().enumerate() {
            match &acc {
                None => cross_row.push(vec![true; row.len()]),
                Some(prefix) => {
                    let mut flags = Vec::with_capacity(row.len());
                    for shape in row {
                        let u = prefix.product_set(shape)?;
                        let lhs = BigRational::from_integer(BigInt::from(u.len()));
                        let rhs = &bound * BigRational::from_integer(BigInt::from(shape.len()));
                        flags.push(lhs <= rhs);
                    }
                    cross_row.push(flags);
                }
            }
            if i + 1 < self.rows() {
                let mut row_union = row[0].clone();
                for shape in &row[1..] {
                    row_union.union_in_place(shape)?;
                }
                let d_finv = self.d_set.product_set(&row_union.inverse_set())?;
                match &mut acc {
                    None => acc = Some(d_finv),
                    Some(p) => p.union_in_place(&d_finv)?,
                }
            }
        }

        let mut alpha: Option<Rational64> = None;
        for brow in &self.bases {
            let mut a_union = FiniteSubset::empty(self.group);
            for b in brow {
                a_union.union_in_place(b)?;
            }
            let da = if a_union.is_empty() {
                0
            } else {
                self.d_set.product_set(&a_union)?.len()
            };
            let ratio = Rational64::new(da as i64, self.ambient.len() as i64);
            alpha = Some(match alpha {
                None => ratio,
                Some(a) => a.min(ratio),
            });
        }

        Ok(HypothesisReport {
            row_tempered,
            cross_row,
            alpha: alpha.expect("at least one row"),
            containment: self.containment_failure()?.is_none(),
        })
    }

    /// Certified lower bound on `delta^{1/4}` (used by quota and coverage checks).
    fn root_lower_bound(&self) -> BigRational {
        fourth_root_bounds(&widen(self.delta), 64).0
    }

    /// Core quota for a translate of the given size, from the certified
    /// disjointness parameter `10·delta^{1/4}` (clamped at zero).
    fn core_quota(&self, len: usize, root_lo: &BigRational) -> usize {
        let slack = BigRational::from_integer(BigInt::from(10)) * root_lo;
        let keep = (BigRational::one() - slack) * BigRational::from_integer(BigInt::from(len));
        ceil_to_usize(&keep)
    }

    /// Greedy covering selection: walk candidates from the largest scales
    /// down, admit a translate whenever the whole collection still has
    /// disjoint cores at the certified quota, then certify the coverage bound.
    ///
    /// The candidate order within each shape is shuffled deterministically
    /// from `seed`; the result is reproducible per seed.
    pub fn lindenstrauss_select(&self, seed: u64) -> Result<SelectionResult, CoveringError> {
        let report = self.check_hypotheses()?;
        if !report.all_hold() {
            return Err(CoveringError::HypothesesNotMet);
        }
        let root_lo = self.root_lower_bound();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);

        let mut selected = Vec::new();
        let mut translates: Vec<FiniteSubset> = Vec::new();
        let mut quotas: Vec<usize> = Vec::new();
        let mut cores: Vec<FiniteSubset> = Vec::new();
        let mut union: BTreeSet<GroupElement> = BTreeSet::new();

        for i in (0..self.rows()).rev() {
            for j in (0..self.shapes[i].len()).rev() {
                let mut base_points: Vec<GroupElement> =
                    self.bases[i][j].iter().cloned().collect();
                base_points.shuffle(&mut rng);
                for a in base_points {
                    let translate = self.shapes[i][j].right_translate(&a)?;
                    let quota = self.core_quota(translate.len(), &root_lo);
                    translates.push(translate);
                    quotas.push(quota);
                    match disjoint_cores(&translates, &quotas) {
                        Some(new_cores) => {
                            union.extend(translates.last().unwrap().iter().cloned());
                            selected.push(SelectedTranslate { row: i, col: j, base: a });
                            cores = new_cores;
                        }
                        None => {
                            translates.pop();
                            quotas.pop();
                        }
                    }
                }
            }
        }

        let mut base_multiplicity: BTreeMap<GroupElement, usize> = BTreeMap::new();
        for s in &selected {
            *base_multiplicity.entry(s.base.clone()).or_insert(0) += 1;
        }
        let result = SelectionResult {
            selected,
            translates,
            cores,
            coverage: Rational64::new(union.len() as i64, self.ambient.len() as i64),
            alpha: report.alpha,
            base_multiplicity,
        };
        self.verify_selection(&result)?;
        Ok(result)
    }

    /// Independent re-verification of a selection: membership, disjoint cores
    /// at the certified quota, and the coverage bound. Used as the post-hoc
    /// certificate for every selection this module returns.
    pub fn verify_selection(&self, result: &SelectionResult) -> Result<(), CoveringError> {
        let n = result.selected.len();
        if result.translates.len() != n || result.cores.len() != n {
            return Err(CoveringError::Malformed("selection lists are not parallel".into()));
        }
        let root_lo = self.root_lower_bound();

        let mut union: BTreeSet<GroupElement> = BTreeSet::new();
        let mut core_total = 0usize;
        let mut core_union: BTreeSet<GroupElement> = BTreeSet::new();
        for (k, sel) in result.selected.iter().enumerate() {
            let shape = self
                .shapes
                .get(sel.row)
                .and_then(|r| r.get(sel.col))
                .ok_or_else(|| CoveringError::Malformed(format!("bad index ({},{})", sel.row, sel.col)))?;
            if !self.bases[sel.row][sel.col].contains(&sel.base) {
                return Err(CoveringError::Malformed(format!(
                    "base point {} not in A[{}][{}]",
                    sel.base, sel.row, sel.col
                )));
            }
            let translate = shape.right_translate(&sel.base)?;
            if translate != result.translates[k] {
                return Err(CoveringError::Malformed(format!("translate {k} mismatch")));
            }
            if !translate.is_subset(&self.ambient) {
                return Err(CoveringError::Malformed(format!("translate {k} escapes ambient")));
            }
            let core = &result.cores[k];
            if !core.is_subset(&translate) {
                return Err(CoveringError::Malformed(format!("core {k} not inside translate")));
            }
            if core.len() < self.core_quota(translate.len(), &root_lo) {
                return Err(CoveringError::Malformed(format!("core {k} below quota")));
            }
            core_total += core.len();
            core_union.extend(core.iter().cloned());
            union.extend(translate.iter().cloned());
        }
        if core_union.len() != core_total {
            return Err(CoveringError::Malformed("cores are not pairwise disjoint".into()));
        }

        let mut mult: BTreeMap<GroupElement, usize> = BTreeMap::new();
        for s in &result.selected {
            *mult.entry(s.base.clone()).or_insert(0) += 1;
        }
        if mult != result.base_multiplicity {
            return Err(CoveringError::Malformed("base multiplicities are inconsistent".into()));
        }

        let coverage = Rational64::new(union.len() as i64, self.ambient.len() as i64);
        if coverage != result.coverage {
            return Err(CoveringError::Malformed("reported coverage is wrong".into()));
        }
        let report = self.check_hypotheses()?;
        let target = (widen(report.alpha) - &root_lo)
            * BigRational::from_integer(BigInt::from(self.ambient.len()));
        let have = BigRational::from_integer(BigInt::from(union.len()));
        if have < target {
            return Err(CoveringError::GuaranteeUnmet(format!(
                "covered {} of {} ambient points, need at least {:.3}",
                union.len(),
                self.ambient.len(),
                target.numer().to_string().parse::<f64>().unwrap_or(f64::NAN)
                    / target.denom().to_string().parse::<f64>().unwrap_or(f64::NAN)
            )));
        }
        Ok(())
    }
}

/// Decides `delta`-disjointness: pairwise-disjoint cores `A'_k ⊆ A_k` with
/// `|A'_k| ≥ ceil((1-delta)·|A_k|)`, or `None` when no such cores exist.
///
/// The decision is exact, by maximum flow: each element supplies one unit,
/// each set demands its quota.
pub fn delta_disjoint_decide(
    collection: &[FiniteSubset],
    delta: Rational64,
) -> Result<Option<Vec<FiniteSubset>>, CoveringError> {
    if delta < Rational64::zero() || delta >= Rational64::one() {
        return Err(CoveringError::InvalidSlack(delta));
    }
    let keep = BigRational::one() - widen(delta);
    let quotas: Vec<usize> = collection
        .iter()
        .map(|s| ceil_to_usize(&(&keep * BigRational::from_integer(BigInt::from(s.len())))))
        .collect();
    Ok(disjoint_cores(collection, &quotas))
}

/// Flow-based feasibility: disjoint cores meeting per-set quotas, if any.
fn disjoint_cores(collection: &[FiniteSubset], quotas: &[usize]) -> Option<Vec<FiniteSubset>> {
    debug_assert_eq!(collection.len(), quotas.len());
    let total: usize = quotas.iter().sum();
    if total == 0 {
        return Some(collection.iter().map(|s| FiniteSubset::empty(s.group())).collect());
    }
    if collection.iter().zip(quotas).any(|(s, q)| *q > s.len()) {
        return None;
    }

    let mut elements: BTreeMap<&GroupElement, usize> = BTreeMap::new();
    for s in collection {
        for e in s.iter() {
            let next = elements.len();
            elements.entry(e).or_insert(next);
        }
    }
    let k = collection.len();
    let m = elements.len();
    // nodes: 0 source, 1 sink, 2..2+k set nodes, 2+k..2+k+m element nodes
    let mut net = FlowNetwork::new(2 + k + m);
    let mut set_edges: Vec<Vec<(usize, usize)>> = vec![Vec::new(); k]; // (edge idx, element idx)
    for (si, (s, q)) in collection.iter().zip(quotas).enumerate() {
        if *q == 0 {
            continue;
        }
        net.add_edge(0, 2 + si, *q as i64);
        for e in s.iter() {
            let ei = elements[e];
            let idx = net.add_edge(2 + si, 2 + k + ei, 1);
            set_edges[si].push((idx, ei));
        }
    }
    for ei in 0..m {
        net.add_edge(2 + k + ei, 1, 1);
    }
    if net.max_flow(0, 1) < total as i64 {
        return None;
    }

    let by_index: Vec<&GroupElement> = {
        let mut v = vec![None; m];
        for (e, i) in &elements {
            v[*i] = Some(*e);
        }
        v.into_iter().map(|e| e.unwrap()).collect()
    };
    let mut cores = Vec::with_capacity(k);
    for (si, s) in collection.iter().enumerate() {
        let mut members = Vec::new();
        for (idx, ei) in &set_edges[si] {
            if net.flow_through(2 + si, *idx, 1) == 1 {
                members.push(by_index[*ei].clone());
            }
        }
        cores.push(FiniteSubset::new(s.group(), members).expect("core elements share the group"));
    }
    Some(cores)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn z() -> Group {
        Group::lattice(1).unwrap()
    }

    fn ge(x: i64) -> GroupElement {
        GroupElement::new(vec![x])
    }

    fn interval(lo: i64, hi: i64) -> FiniteSubset {
        FiniteSubset::new(z(), (lo..hi).map(ge)).unwrap()
    }

    fn points(xs: &[i64]) -> FiniteSubset {
        FiniteSubset::new(z(), xs.iter().map(|x| ge(*x))).unwrap()
    }

    fn singleton_instance() -> CoveringInstance {
        // M = 1, shape {0}, A = F = [0, 10), D = {0}
        CoveringInstance::new(
            z(),
            vec![vec![points(&[0])]],
            vec![vec![interval(0, 10)]],
            interval(0, 10),
            Rational64::new(1, 200),
            points(&[0]),
            Rational64::new(2, 1),
        )
        .unwrap()
    }

    #[test]
    fn trivial_instance_hypotheses() {
        let report = singleton_instance().check_hypotheses().unwrap();
        assert!(report.all_hold());
        assert_eq!(report.alpha, Rational64::one());
        assert_eq!(report.row_tempered, vec![true]);
        assert_eq!(report.cross_row, vec![vec![true]]);
    }

    #[test]
    fn row_temperedness_depends_on_c() {
        let make = |c: Rational64| {
            CoveringInstance::new(
                z(),
                vec![vec![interval(0, 1), interval(0, 4)]],
                vec![vec![points(&[0]), points(&[0])]],
                interval(0, 9),
                Rational64::new(1, 200),
                points(&[0]),
                c,
            )
            .unwrap()
        };
        // F_{1,1}^{-1} F_{1,2} = [0,4): size 4 <= C*4 iff C >= 1.
        assert!(make(Rational64::one()).check_hypotheses().unwrap().row_tempered[0]);
        assert!(!make(Rational64::new(3, 4)).check_hypotheses().unwrap().row_tempered[0]);
    }

    #[test]
    fn alpha_counts_displaced_bases() {
        let inst = CoveringInstance::new(
            z(),
            vec![vec![points(&[0])]],
            vec![vec![interval(0, 5)]],
            interval(0, 10),
            Rational64::new(1, 200),
            points(&[0]),
            Rational64::new(2, 1),
        )
        .unwrap();
        assert_eq!(inst.check_hypotheses().unwrap().alpha, Rational64::new(1, 2));
    }

    #[test]
    fn constructor_rejects_bad_delta() {
        let make = |num: i64, den: i64| {
            CoveringInstance::new(
                z(),
                vec![vec![points(&[0])]],
                vec![vec![points(&[0])]],
                interval(0, 4),
                Rational64::new(num, den),
                points(&[0]),
                Rational64::new(2, 1),
            )
        };
        assert!(matches!(make(1, 50), Err(CoveringError::InvalidDelta(_))));
        assert!(matches!(make(1, 100), Err(CoveringError::InvalidDelta(_))));
        assert!(make(1, 101).is_ok());
    }

    #[test]
    fn constructor_rejects_escaping_translates() {
        let err = CoveringInstance::new(
            z(),
            vec![vec![interval(0, 3)]],
            vec![vec![points(&[8])]], // [8, 11) escapes [0, 10)
            interval(0, 10),
            Rational64::new(1, 200),
            points(&[0]),
            Rational64::new(2, 1),
        )
        .unwrap_err();
        assert!(matches!(err, CoveringError::Malformed(_)));
    }

    #[test]
    fn disjoint_decide_identical_sets() {
        let a = interval(0, 10);
        let coll = vec![a.clone(), a];
        // quota 6 + 6 > 10 shared elements
        assert!(delta_disjoint_decide(&coll, Rational64::new(2, 5)).unwrap().is_none());
        // quota 5 + 5 = 10
        let cores = delta_disjoint_decide(&coll, Rational64::new(1, 2)).unwrap().unwrap();
        assert_eq!(cores[0].len(), 5);
        assert_eq!(cores[1].len(), 5);
        assert_eq!(cores[0].intersection_len(&cores[1]).unwrap(), 0);
        assert!(cores[0].is_subset(&coll[0]));
    }

    #[test]
    fn zero_disjoint_means_pairwise_disjoint() {
        let disjoint = vec![interval(0, 3), interval(3, 6), interval(10, 12)];
        let cores = delta_disjoint_decide(&disjoint, Rational64::zero()).unwrap().unwrap();
        for (c, s) in cores.iter().zip(&disjoint) {
            assert_eq!(c, s);
        }
        let overlapping = vec![interval(0, 3), interval(2, 5)];
        assert!(delta_disjoint_decide(&overlapping, Rational64::zero()).unwrap().is_none());
    }

    #[test]
    fn slack_out_of_range_rejected() {
        let coll = vec![interval(0, 2)];
        assert!(matches!(
            delta_disjoint_decide(&coll, Rational64::one()),
            Err(CoveringError::InvalidSlack(_))
        ));
        assert!(matches!(
            delta_disjoint_decide(&coll, Rational64::new(-1, 2)),
            Err(CoveringError::InvalidSlack(_))
        ));
    }

    /// Oracle: search all exact-quota core choices recursively.
    fn brute_force_feasible(sets: &[Vec<i64>], quotas: &[usize]) -> bool {
        fn subsets(items: &[i64], size: usize) -> Vec<Vec<i64>> {
            if size == 0 {
                return vec![vec![]];
            }
            if items.len() < size {
                return vec![];
            }
            let mut out = subsets(&items[1..], size);
            for mut rest in subsets(&items[1..], size - 1) {
                rest.push(items[0]);
                out.push(rest);
            }
            out
        }
        fn go(sets: &[Vec<i64>], quotas: &[usize], used: &BTreeSet<i64>) -> bool {
            let Some(first) = sets.first() else { return true };
            let free: Vec<i64> = first.iter().copied().filter(|x| !used.contains(x)).collect();
            for core in subsets(&free, quotas[0]) {
                let mut next = used.clone();
                next.extend(core);
                if go(&sets[1..], &quotas[1..], &next) {
                    return true;
                }
            }
            false
        }
        go(sets, quotas, &BTreeSet::new())
    }

    proptest! {
        #[test]
        fn decide_matches_brute_force(
            raw in prop::collection::vec(prop::collection::btree_set(0i64..8, 1..6), 1..4),
            num in 0i64..4,
        ) {
            let delta = Rational64::new(num, 4);
            let sets: Vec<Vec<i64>> = raw.iter().map(|s| s.iter().copied().collect()).collect();
            let coll: Vec<FiniteSubset> = sets.iter().map(|s| points(s)).collect();
            let quotas: Vec<usize> = sets
                .iter()
                .map(|s| {
                    let keep = (Rational64::one() - delta) * Rational64::from_integer(s.len() as i64);
                    keep.ceil().to_integer() as usize
                })
                .collect();
            let got = delta_disjoint_decide(&coll, delta).unwrap();
            prop_assert_eq!(got.is_some(), brute_force_feasible(&sets, &quotas));
            if let Some(cores) = got {
                let mut seen = BTreeSet::new();
                for (core, (set, q)) in cores.iter().zip(coll.iter().zip(&quotas)) {
                    prop_assert!(core.is_subset(set));
                    prop_assert!(core.len() >= *q);
                    for e in core.iter() {
                        prop_assert!(seen.insert(e.clone()), "cores overlap");
                    }
                }
            }
        }

        #[test]
        fn disjointness_is_monotone_in_delta(
            raw in prop::collection::vec(prop::collection::btree_set(0i64..10, 1..6), 1..4),
            num in 0i64..8,
        ) {
            let delta = Rational64::new(num, 8);
            let looser = Rational64::new((num + 1).min(7), 8).max(delta);
            let coll: Vec<FiniteSubset> =
                raw.iter().map(|s| points(&s.iter().copied().collect::<Vec<_>>())).collect();
            if delta_disjoint_decide(&coll, delta).unwrap().is_some() {
                prop_assert!(delta_disjoint_decide(&coll, looser).unwrap().is_some());
            }
        }
    }

    #[test]
    fn selects_every_singleton_of_trivial_instance() {
        let inst = singleton_instance();
        let result = inst.lindenstrauss_select(7).unwrap();
        assert_eq!(result.selected.len(), 10);
        assert_eq!(result.coverage, Rational64::one());
        assert_eq!(result.alpha, Rational64::one());
        assert_eq!(result.base_multiplicity.len(), 10);
        assert!(result.base_multiplicity.values().all(|m| *m == 1));
        inst.verify_selection(&result).unwrap();
    }

    #[test]
    fn selects_all_exactly_disjoint_tiles() {
        let inst = CoveringInstance::new(
            z(),
            vec![vec![interval(0, 3)]],
            vec![vec![points(&[0, 3, 6])]],
            interval(0, 9),
            Rational64::new(1, 200),
            points(&[0]),
            Rational64::new(2, 1),
        )
        .unwrap();
        let result = inst.lindenstrauss_select(0).unwrap();
        assert_eq!(result.selected.len(), 3);
        assert_eq!(result.coverage, Rational64::one());
        assert_eq!(result.translates.iter().map(|t| t.len()).sum::<usize>(), 9);
    }

    #[test]
    fn tight_quota_forces_a_skip() {
        // delta = 1e-6: disjointness parameter 10*delta^{1/4} ~ 0.316, so a
        // translate of size 4 must keep a core of 3. The three overlapping
        // tiles below admit cores pairwise (6 core points in a 6-point union)
        // but not jointly (9 core points in an 8-point union).
        let inst = CoveringInstance::new(
            z(),
            vec![vec![interval(0, 4)]],
            vec![vec![points(&[0, 2, 4])]],
            interval(0, 8),
            Rational64::new(1, 1_000_000),
            points(&[0]),
            Rational64::new(2, 1),
        )
        .unwrap();
        for seed in 0..5 {
            let result = inst.lindenstrauss_select(seed).unwrap();
            assert_eq!(result.selected.len(), 2, "seed {seed}");
            for core in &result.cores {
                assert_eq!(core.len(), 3);
            }
            inst.verify_selection(&result).unwrap();
        }
    }

    #[test]
    fn selection_is_deterministic_per_seed() {
        let inst = CoveringInstance::new(
            z(),
            vec![vec![interval(0, 2), interval(0, 5)]],
            vec![vec![points(&[0, 1, 2, 5, 9]), points(&[0, 3, 7, 10])]],
            interval(0, 15),
            Rational64::new(1, 128),
            points(&[0]),
            Rational64::new(2, 1),
        )
        .unwrap();
        let a = inst.lindenstrauss_select(42).unwrap();
        let b = inst.lindenstrauss_select(42).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn verifier_rejects_tampered_results() {
        let inst = singleton_instance();
        let mut result = inst.lindenstrauss_select(1).unwrap();
        result.coverage = Rational64::new(1, 2);
        assert!(matches!(
            inst.verify_selection(&result),
            Err(CoveringError::Malformed(_))
        ));
    }
}
