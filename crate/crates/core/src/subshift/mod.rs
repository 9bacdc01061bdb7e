//! Subshifts of finite type and the cylinder machinery over them.
//!
//! Configurations live in `A^G` for a finite alphabet `A` and one of the
//! built-in groups `G`; a subshift is carved out by finitely many forbidden
//! finite patterns. Everything here is a finite object: a [`Pattern`] is a
//! symbol assignment on a finite subset, a [`Cylinder`] is a pattern pinned
//! to a Følner box, and a [`CoverFamily`] is a finite list of cylinders with
//! a verified covering flag.
//!
//! The shift action is on the right: translating a configuration by `t`
//! reads `(t·x)_g = x_{gt}`, so a pattern occurs at `t` when the translated
//! configuration restricted to the pattern's domain reproduces it.

mod counting;
mod dimension;
mod naming;

pub use counting::{
    count_extendable, count_locally_admissible, enumerate_extendable,
    enumerate_locally_admissible, sample_locally_admissible,
};
pub use dimension::{
    bowen_entropy_estimate, bowen_outer_measure, cover_cost, entropy_curve, entropy_rate,
    foelner_metric, hausdorff_dimension_estimate, CountMode, EstimateParams,
};
pub use naming::{assemble_name, Fallback, Provenance};

use std::collections::BTreeMap;

use thiserror::Error;

use crate::foelner::{FoelnerError, FoelnerSequence};
use crate::group::{FiniteSubset, Group, GroupElement, GroupError};

#[derive(Error, Debug, Clone, PartialEq)]
pub enum SubshiftError {
    #[error("alphabet must be nonempty")]
    EmptyAlphabet,
    #[error("alphabet has {0} symbols; at most 256 are supported")]
    AlphabetTooLarge(usize),
    #[error("alphabet lists symbol {0:?} twice")]
    DuplicateSymbolName(String),
    #[error("symbol index {index} out of range for an alphabet of {alphabet} symbols")]
    SymbolOutOfRange { index: usize, alphabet: usize },
    #[error("forbidden patterns must have nonempty domains")]
    EmptyForbiddenDomain,
    #[error("pattern domain does not contain the set it must cover")]
    InsufficientDomain,
    #[error("the counting window must be contained in its margin")]
    NotWithinMargin,
    #[error("the counting window must be nonempty")]
    EmptyWindow,
    #[error("truncation depth must be at least 1")]
    ZeroDepth,
    #[error("cylinder pattern domain differs from the Følner set at scale {scale}")]
    ScaleMismatch { scale: usize },
    #[error("estimate parameters are invalid: {0}")]
    BadParams(String),
    #[error("covering contract violated: {0}")]
    ContractViolation(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Foelner(#[from] FoelnerError),
}

/// Index into a subshift's alphabet.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Symbol(pub u8);

impl Symbol {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A symbol assignment on a finite subset of the group.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Pattern {
    group: Group,
    cells: BTreeMap<GroupElement, Symbol>,
}

impl Pattern {
    pub fn new(
        group: Group,
        cells: impl IntoIterator<Item = (GroupElement, Symbol)>,
    ) -> Result<Pattern, SubshiftError> {
        let mut map = BTreeMap::new();
        for (g, s) in cells {
            if g.arity() != group.arity() {
                return Err(GroupError::Arity { expected: group.arity(), got: g.arity() }.into());
            }
            map.insert(g, s);
        }
        Ok(Pattern { group, cells: map })
    }

    /// Builds a pattern on `domain` by evaluating `f` at every cell.
    pub fn on_subset(domain: &FiniteSubset, mut f: impl FnMut(&GroupElement) -> Symbol) -> Pattern {
        let cells = domain.iter().map(|g| (g.clone(), f(g))).collect();
        Pattern { group: domain.group(), cells }
    }

    pub fn group(&self) -> Group {
        self.group
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn get(&self, g: &GroupElement) -> Option<Symbol> {
        self.cells.get(g).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&GroupElement, Symbol)> {
        self.cells.iter().map(|(g, s)| (g, *s))
    }

    pub fn domain(&self) -> FiniteSubset {
        FiniteSubset::new(self.group, self.cells.keys().cloned())
            .expect("pattern cells share the group's arity")
    }

    pub fn defined_on(&self, set: &FiniteSubset) -> bool {
        set.group() == self.group && set.iter().all(|g| self.cells.contains_key(g))
    }

    /// The translated pattern `t·x` with `(t·x)_g = x_{gt}`; its domain is
    /// `domain(x)·t^{-1}`.
    pub fn translate(&self, t: &GroupElement) -> Result<Pattern, SubshiftError> {
        if t.arity() != self.group.arity() {
            return Err(
                GroupError::Arity { expected: self.group.arity(), got: t.arity() }.into()
            );
        }
        let t_inv = self.group.inv_unchecked(t);
        let cells = self
            .cells
            .iter()
            .map(|(g, s)| (self.group.mul_unchecked(g, &t_inv), *s))
            .collect();
        Ok(Pattern { group: self.group, cells })
    }

    /// Restriction to `set ∩ domain`.
    pub fn restrict(&self, set: &FiniteSubset) -> Pattern {
        let cells = self
            .cells
            .iter()
            .filter(|(g, _)| set.contains(g))
            .map(|(g, s)| (g.clone(), *s))
            .collect();
        Pattern { group: self.group, cells }
    }

    /// True when the two patterns assign the same symbol to every cell of
    /// `set`, which must lie in both domains.
    pub fn agrees_on(&self, other: &Pattern, set: &FiniteSubset) -> Result<bool, SubshiftError> {
        for g in set.iter() {
            let (a, b) = (self.get(g), other.get(g));
            match (a, b) {
                (Some(a), Some(b)) => {
                    if a != b {
                        return Ok(false);
                    }
                }
                _ => return Err(SubshiftError::InsufficientDomain),
            }
        }
        Ok(true)
    }
}

/// A subshift of finite type: alphabet plus finitely many forbidden patterns.
#[derive(Clone, Debug, PartialEq)]
pub struct Subshift {
    group: Group,
    alphabet: Vec<String>,
    forbidden: Vec<Pattern>,
}

impl Subshift {
    pub fn new(
        group: Group,
        alphabet: Vec<String>,
        forbidden: Vec<Pattern>,
    ) -> Result<Subshift, SubshiftError> {
        if alphabet.is_empty() {
            return Err(SubshiftError::EmptyAlphabet);
        }
        if alphabet.len() > 256 {
            return Err(SubshiftError::AlphabetTooLarge(alphabet.len()));
        }
        for (i, name) in alphabet.iter().enumerate() {
            if alphabet[..i].contains(name) {
                return Err(SubshiftError::DuplicateSymbolName(name.clone()));
            }
        }
        for p in &forbidden {
            if p.is_empty() {
                return Err(SubshiftError::EmptyForbiddenDomain);
            }
            if p.group() != group {
                return Err(GroupError::MixedGroups.into());
            }
            for (_, s) in p.iter() {
                if s.index() >= alphabet.len() {
                    return Err(SubshiftError::SymbolOutOfRange {
                        index: s.index(),
                        alphabet: alphabet.len(),
                    });
                }
            }
        }
        Ok(Subshift { group, alphabet, forbidden })
    }

    /// The full shift on `k` symbols named `s0..s{k-1}`.
    pub fn full_shift(group: Group, k: usize) -> Result<Subshift, SubshiftError> {
        let alphabet = (0..k).map(|i| format!("s{i}")).collect();
        Subshift::new(group, alphabet, Vec::new())
    }

    pub fn group(&self) -> Group {
        self.group
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn alphabet_len(&self) -> usize {
        self.alphabet.len()
    }

    pub fn forbidden(&self) -> &[Pattern] {
        &self.forbidden
    }

    pub fn symbol_named(&self, name: &str) -> Option<Symbol> {
        self.alphabet.iter().position(|s| s == name).map(|i| Symbol(i as u8))
    }
}

/// A pattern pinned to the Følner set of its scale: all configurations
/// agreeing with the pattern there.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Cylinder {
    scale: usize,
    pattern: Pattern,
}

impl Cylinder {
    /// The pattern's domain must be exactly the sequence's set at `scale`.
    pub fn new(
        seq: &FoelnerSequence,
        scale: usize,
        pattern: Pattern,
    ) -> Result<Cylinder, SubshiftError> {
        let expected = seq.set(scale)?;
        if pattern.domain() != expected {
            return Err(SubshiftError::ScaleMismatch { scale });
        }
        Ok(Cylinder { scale, pattern })
    }

    pub fn scale(&self) -> usize {
        self.scale
    }

    pub fn pattern(&self) -> &Pattern {
        &self.pattern
    }

    /// Number of constrained cells, `m(𝐔)` in cost formulas.
    pub fn weight_cells(&self) -> usize {
        self.pattern.len()
    }
}

/// True iff `x` agrees with the cylinder's pattern on the cylinder's box.
/// `x` must be defined on that whole box.
pub fn cylinder_contains(x: &Pattern, c: &Cylinder) -> Result<bool, SubshiftError> {
    let domain = c.pattern.domain();
    if !x.defined_on(&domain) {
        return Err(SubshiftError::InsufficientDomain);
    }
    x.agrees_on(&c.pattern, &domain)
}

/// A finite multi-scale family of cylinders with a verified covering flag.
#[derive(Clone, Debug, PartialEq)]
pub struct CoverFamily {
    index: usize,
    scales: Vec<usize>,
    cylinders: Vec<Cylinder>,
    covers_x: bool,
}

impl CoverFamily {
    pub fn new(index: usize, mut cylinders: Vec<Cylinder>) -> CoverFamily {
        cylinders.sort();
        let mut scales: Vec<usize> = cylinders.iter().map(|c| c.scale()).collect();
        scales.sort_unstable();
        scales.dedup();
        CoverFamily { index, scales, cylinders, covers_x: false }
    }

    /// Builds the family of all extendable-pattern cylinders of `sft` at the
    /// given scales; the margin for extendability is `margin_growth` scales up.
    pub fn from_subshift(
        sft: &Subshift,
        seq: &FoelnerSequence,
        index: usize,
        scales: &[usize],
        margin_growth: usize,
    ) -> Result<CoverFamily, SubshiftError> {
        let mut cylinders = Vec::new();
        for &n in scales {
            let window = seq.set(n)?;
            let margin = seq.set(n + margin_growth)?;
            for pattern in enumerate_extendable(sft, &window, &margin)? {
                cylinders.push(Cylinder::new(seq, n, pattern)?);
            }
        }
        Ok(CoverFamily::new(index, cylinders))
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn scales(&self) -> &[usize] {
        &self.scales
    }

    pub fn cylinders(&self) -> &[Cylinder] {
        &self.cylinders
    }

    pub fn covers_x(&self) -> bool {
        self.covers_x
    }

    /// Checks that every locally admissible pattern on the family's largest
    /// box lies in some member cylinder; records and returns the outcome.
    pub fn verify_covers(
        &mut self,
        sft: &Subshift,
        seq: &FoelnerSequence,
    ) -> Result<bool, SubshiftError> {
        let Some(&top) = self.scales.last() else {
            self.covers_x = false;
            return Ok(false);
        };
        let top_box = seq.set(top)?;
        for c in &self.cylinders {
            if !c.pattern().domain().is_subset(&top_box) {
                return Err(SubshiftError::ContractViolation(format!(
                    "cylinder at scale {} is not nested inside scale {top}",
                    c.scale()
                )));
            }
        }
        let mut covered = true;
        for p in enumerate_locally_admissible(sft, &top_box)? {
            let hit = self
                .cylinders
                .iter()
                .any(|c| cylinder_contains(&p, c).unwrap_or(false));
            if !hit {
                covered = false;
                break;
            }
        }
        self.covers_x = covered;
        Ok(covered)
    }
}

/// The tail-series total `Σ_k (Σ_{𝐔 in family k} e^{-s·m(𝐔)})^k` over the
/// listed families, `k` running from 1 in list order.
pub fn series_total(families: &[CoverFamily], s: f64) -> f64 {
    families
        .iter()
        .enumerate()
        .map(|(i, fam)| {
            let inner: f64 =
                fam.cylinders.iter().map(|c| (-s * c.weight_cells() as f64).exp()).sum();
            inner.powi(i as i32 + 1)
        })
        .sum()
}
