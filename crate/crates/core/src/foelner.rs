//! Følner sequences for the built-in groups, with quantitative diagnostics.
//!
//! A Følner sequence is represented by the recipe producing its `n`-th set, so
//! scales are generated on demand. All built-in kinds produce nested sequences
//! whose union is the whole group; user-supplied explicit sequences are taken
//! as-is (the limiting Følner property is not decidable from finite data, so
//! diagnostics on explicit sequences report but never reject).

use std::ops::RangeInclusive;

use num_rational::Rational64;
use thiserror::Error;

use crate::group::{FiniteSubset, Group, GroupElement, GroupError};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum FoelnerError {
    #[error("scale {n} out of range (available: 1..={max})")]
    OutOfRange { n: usize, max: usize },
    #[error("scale index must be at least 1")]
    ZeroScale,
    #[error("horizon must be at least {min}")]
    HorizonTooSmall { min: usize },
    #[error("an explicit sequence needs at least one nonempty set")]
    EmptyExplicit,
    #[error(transparent)]
    Group(#[from] GroupError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Kind {
    /// `F_n = [0, n)^d`.
    LatticeBoxes,
    /// `F_n = [-n, n]^d`.
    LatticeCenteredBoxes,
    /// `F_n = { |x| <= n, |y| <= n, |z| <= n^2 }` in the Heisenberg group.
    HeisenbergBoxes,
    /// User-supplied list, 1-indexed.
    Explicit(Vec<FiniteSubset>),
}

/// A concrete Følner sequence over one of the built-in groups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FoelnerSequence {
    group: Group,
    kind: Kind,
}

/// Per-scale row of a defect table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DefectRow {
    pub n: usize,
    pub size: usize,
    /// Defect per generator, aligned with the table's generator list.
    pub defects: Vec<Rational64>,
    /// `|B(F_n, K)| / |F_n|` for `K` the group's generating set.
    pub boundary_ratio: Rational64,
}

/// Defect diagnostics over a scale range.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DefectTable {
    pub generators: Vec<GroupElement>,
    pub rows: Vec<DefectRow>,
}

impl FoelnerSequence {
    pub fn lattice_boxes(dim: usize) -> Result<FoelnerSequence, FoelnerError> {
        Ok(FoelnerSequence { group: Group::lattice(dim)?, kind: Kind::LatticeBoxes })
    }

    pub fn lattice_centered_boxes(dim: usize) -> Result<FoelnerSequence, FoelnerError> {
        Ok(FoelnerSequence { group: Group::lattice(dim)?, kind: Kind::LatticeCenteredBoxes })
    }

    pub fn heisenberg_boxes() -> FoelnerSequence {
        FoelnerSequence { group: Group::Heisenberg, kind: Kind::HeisenbergBoxes }
    }

    /// Wraps a user-supplied list of sets (1-indexed scales). The sets are
    /// accepted as given; no temperedness or nesting is enforced.
    pub fn explicit(sets: Vec<FiniteSubset>) -> Result<FoelnerSequence, FoelnerError> {
        if sets.is_empty() || sets.iter().any(|s| s.is_empty()) {
            return Err(FoelnerError::EmptyExplicit);
        }
        let group = sets[0].group();
        if sets.iter().any(|s| s.group() != group) {
            return Err(GroupError::MixedGroups.into());
        }
        Ok(FoelnerSequence { group, kind: Kind::Explicit(sets) })
    }

    pub fn group(&self) -> Group {
        self.group
    }

    /// Largest available scale, if the sequence is finite (explicit lists).
    pub fn max_scale(&self) -> Option<usize> {
        match &self.kind {
            Kind::Explicit(sets) => Some(sets.len()),
            _ => None,
        }
    }

    pub fn is_explicit(&self) -> bool {
        matches!(self.kind, Kind::Explicit(_))
    }

    /// The `n`-th set of the sequence, `n >= 1`.
    pub fn set(&self, n: usize) -> Result<FiniteSubset, FoelnerError> {
        if n == 0 {
            return Err(FoelnerError::ZeroScale);
        }
        let ni = n as i64;
        match &self.kind {
            Kind::LatticeBoxes => {
                let dim = self.group.arity();
                Ok(lattice_box(self.group, &vec![(0, ni - 1); dim]))
            }
            Kind::LatticeCenteredBoxes => {
                let dim = self.group.arity();
                Ok(lattice_box(self.group, &vec![(-ni, ni); dim]))
            }
            Kind::HeisenbergBoxes => {
                let mut elems = Vec::new();
                for x in -ni..=ni {
                    for y in -ni..=ni {
                        for z in -(ni * ni)..=(ni * ni) {
                            elems.push(GroupElement::new(vec![x, y, z]));
                        }
                    }
                }
                Ok(FiniteSubset::new(self.group, elems)?)
            }
            Kind::Explicit(sets) => sets
                .get(n - 1)
                .cloned()
                .ok_or(FoelnerError::OutOfRange { n, max: sets.len() }),
        }
    }

    /// Largest witnessed temperedness ratio
    /// `max_{2<=n<=n_max} |union_{k<n} F_k^{-1} F_n| / |F_n|`, exact.
    ///
    /// This is the constant witnessed up to the horizon, not a limit claim.
    pub fn temperedness_constant(&self, n_max: usize) -> Result<Rational64, FoelnerError> {
        if n_max < 2 {
            return Err(FoelnerError::HorizonTooSmall { min: 2 });
        }
        let mut acc_inverses = self.set(1)?.inverse_set();
        let mut best = Rational64::new(0, 1);
        for n in 2..=n_max {
            let f_n = self.set(n)?;
            let u = acc_inverses.product_set(&f_n)?;
            let ratio = Rational64::new(u.len() as i64, f_n.len() as i64);
            best = best.max(ratio);
            if n < n_max {
                acc_inverses.union_in_place(&f_n.inverse_set())?;
            }
        }
        Ok(best)
    }

    /// Least `n <= n_max` such that every `F_m`, `n <= m <= n_max`, is strictly
    /// `(K, δ)`-invariant; `None` when even `F_{n_max}` fails.
    pub fn invariance_threshold(
        &self,
        k_set: &FiniteSubset,
        delta: Rational64,
        n_max: usize,
    ) -> Result<Option<usize>, FoelnerError> {
        if n_max < 1 {
            return Err(FoelnerError::HorizonTooSmall { min: 1 });
        }
        let mut threshold = None;
        for m in (1..=n_max).rev() {
            if self.set(m)?.is_k_delta_invariant(k_set, delta)? {
                threshold = Some(m);
            } else {
                break;
            }
        }
        Ok(threshold)
    }

    /// Defect and boundary diagnostics for each scale in `range`, against the
    /// group's symmetric generating set.
    pub fn defect_table(&self, range: RangeInclusive<usize>) -> Result<DefectTable, FoelnerError> {
        let generators = self.group.generators();
        let k_set = FiniteSubset::new(self.group, generators.iter().cloned())?;
        let mut rows = Vec::new();
        for n in range {
            let f = self.set(n)?;
            let defects = generators
                .iter()
                .map(|g| f.foelner_defect(g))
                .collect::<Result<Vec<_>, _>>()?;
            let boundary = f.k_boundary(&k_set)?;
            rows.push(DefectRow {
                n,
                size: f.len(),
                defects,
                boundary_ratio: Rational64::new(boundary.len() as i64, f.len() as i64),
            });
        }
        Ok(DefectTable { generators, rows })
    }
}

fn lattice_box(group: Group, ranges: &[(i64, i64)]) -> FiniteSubset {
    let mut elems: Vec<Vec<i64>> = vec![vec![]];
    for (lo, hi) in ranges {
        let mut next = Vec::with_capacity(elems.len() * ((hi - lo + 1).max(0) as usize));
        for prefix in &elems {
            for v in *lo..=*hi {
                let mut e = prefix.clone();
                e.push(v);
                next.push(e);
            }
        }
        elems = next;
    }
    FiniteSubset::new(group, elems.into_iter().map(GroupElement::new))
        .expect("box coordinates match group arity")
}
