//! Concrete countable groups, their elements, and finite-subset combinatorics.
//!
//! Two families are built in: the integer lattices `Z^d` and the discrete
//! Heisenberg group (integer points of the 3x3 unitriangular matrices, stored
//! in coordinates `(x, y, z)` with `(x,y,z)(x',y',z') = (x+x', y+y', z+z'+x*y')`).
//!
//! [`FiniteSubset`] carries the boundary and invariance diagnostics used by
//! Følner-sequence analysis: translation defects, `K`-boundaries, and strict
//! `(K, δ)`-invariance, all with exact rational ratios.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use num_rational::Rational64;
use thiserror::Error;

/// Errors from group and finite-subset operations.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("element has {got} coordinates, group expects {expected}")]
    Arity { expected: usize, got: usize },
    #[error("operands belong to different groups")]
    MixedGroups,
    #[error("operation requires a nonempty set")]
    EmptySet,
    #[error("lattice dimension must be at least 1")]
    ZeroDimension,
}

/// A group element, stored as its coordinate vector.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct GroupElement {
    coords: Vec<i64>,
}

impl GroupElement {
    pub fn new(coords: Vec<i64>) -> Self {
        GroupElement { coords }
    }

    pub fn from_slice(coords: &[i64]) -> Self {
        GroupElement { coords: coords.to_vec() }
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn arity(&self) -> usize {
        self.coords.len()
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// One of the built-in countable amenable groups.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub enum Group {
    /// `Z^d` under componentwise addition.
    Lattice { dim: usize },
    /// Discrete Heisenberg group in normal-form coordinates `(x, y, z)`.
    Heisenberg,
}

impl Group {
    pub fn lattice(dim: usize) -> Result<Group, GroupError> {
        if dim == 0 {
            return Err(GroupError::ZeroDimension);
        }
        Ok(Group::Lattice { dim })
    }

    /// Coordinate count of this group's elements.
    pub fn arity(&self) -> usize {
        match self {
            Group::Lattice { dim } => *dim,
            Group::Heisenberg => 3,
        }
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement::new(vec![0; self.arity()])
    }

    fn check(&self, e: &GroupElement) -> Result<(), GroupError> {
        if e.arity() != self.arity() {
            return Err(GroupError::Arity { expected: self.arity(), got: e.arity() });
        }
        Ok(())
    }

    /// Builds an element of this group, validating the coordinate count.
    pub fn element(&self, coords: Vec<i64>) -> Result<GroupElement, GroupError> {
        let e = GroupElement::new(coords);
        self.check(&e)?;
        Ok(e)
    }

    pub fn multiply(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement, GroupError> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul_unchecked(a, b))
    }

    pub fn inverse(&self, a: &GroupElement) -> Result<GroupElement, GroupError> {
        self.check(a)?;
        Ok(self.inv_unchecked(a))
    }

    pub(crate) fn mul_unchecked(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        match self {
            Group::Lattice { .. } => {
                let coords = a.coords.iter().zip(&b.coords).map(|(x, y)| x + y).collect();
                GroupElement::new(coords)
            }
            Group::Heisenberg => {
                let (x, y, z) = (a.coords[0], a.coords[1], a.coords[2]);
                let (u, v, w) = (b.coords[0], b.coords[1], b.coords[2]);
                GroupElement::new(vec![x + u, y + v, z + w + x * v])
            }
        }
    }

    pub(crate) fn inv_unchecked(&self, a: &GroupElement) -> GroupElement {
        match self {
            Group::Lattice { .. } => GroupElement::new(a.coords.iter().map(|x| -x).collect()),
            Group::Heisenberg => {
                let (x, y, z) = (a.coords[0], a.coords[1], a.coords[2]);
                GroupElement::new(vec![-x, -y, x * y - z])
            }
        }
    }

    /// Symmetric generating set (closed under inverses).
    pub fn generators(&self) -> Vec<GroupElement> {
        match self {
            Group::Lattice { dim } => {
                let mut out = Vec::with_capacity(2 * dim);
                for i in 0..*dim {
                    for sign in [1i64, -1] {
                        let mut c = vec![0i64; *dim];
                        c[i] = sign;
                        out.push(GroupElement::new(c));
                    }
                }
                out
            }
            Group::Heisenberg => vec![
                GroupElement::new(vec![1, 0, 0]),
                GroupElement::new(vec![-1, 0, 0]),
                GroupElement::new(vec![0, 1, 0]),
                GroupElement::new(vec![0, -1, 0]),
            ],
        }
    }
}

/// A finite subset of a fixed group, stored in canonical order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FiniteSubset {
    group: Group,
    elements: BTreeSet<GroupElement>,
}

impl FiniteSubset {
    pub fn new(
        group: Group,
        elements: impl IntoIterator<Item = GroupElement>,
    ) -> Result<FiniteSubset, GroupError> {
        let mut set = BTreeSet::new();
        for e in elements {
            if e.arity() != group.arity() {
                return Err(GroupError::Arity { expected: group.arity(), got: e.arity() });
            }
            set.insert(e);
        }
        Ok(FiniteSubset { group, elements: set })
    }

    pub fn empty(group: Group) -> FiniteSubset {
        FiniteSubset { group, elements: BTreeSet::new() }
    }

    pub fn singleton(group: Group, e: GroupElement) -> Result<FiniteSubset, GroupError> {
        FiniteSubset::new(group, [e])
    }

    pub fn group(&self) -> Group {
        self.group
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, e: &GroupElement) -> bool {
        self.elements.contains(e)
    }

    pub fn iter(&self) -> impl Iterator<Item = &GroupElement> {
        self.elements.iter()
    }

    pub fn is_subset(&self, other: &FiniteSubset) -> bool {
        self.group == other.group && self.elements.is_subset(&other.elements)
    }

    fn same_group(&self, other: &FiniteSubset) -> Result<(), GroupError> {
        if self.group != other.group {
            return Err(GroupError::MixedGroups);
        }
        Ok(())
    }

    /// `g . self` (left translation).
    pub fn left_translate(&self, g: &GroupElement) -> Result<FiniteSubset, GroupError> {
        if g.arity() != self.group.arity() {
            return Err(GroupError::Arity { expected: self.group.arity(), got: g.arity() });
        }
        let elements = self.elements.iter().map(|a| self.group.mul_unchecked(g, a)).collect();
        Ok(FiniteSubset { group: self.group, elements })
    }

    /// `self . g` (right translation).
    pub fn right_translate(&self, g: &GroupElement) -> Result<FiniteSubset, GroupError> {
        if g.arity() != self.group.arity() {
            return Err(GroupError::Arity { expected: self.group.arity(), got: g.arity() });
        }
        let elements = self.elements.iter().map(|a| self.group.mul_unchecked(a, g)).collect();
        Ok(FiniteSubset { group: self.group, elements })
    }

    /// `{ a^{-1} : a in self }`.
    pub fn inverse_set(&self) -> FiniteSubset {
        let elements = self.elements.iter().map(|a| self.group.inv_unchecked(a)).collect();
        FiniteSubset { group: self.group, elements }
    }

    /// Product set `{ k . a : k in self, a in other }`.
    pub fn product_set(&self, other: &FiniteSubset) -> Result<FiniteSubset, GroupError> {
        self.same_group(other)?;
        // Hash-dedup first: the product usually collapses far below |K||A|.
        let mut seen: HashSet<GroupElement> =
            HashSet::with_capacity(self.len().saturating_mul(2).max(other.len()));
        for k in &self.elements {
            for a in &other.elements {
                seen.insert(self.group.mul_unchecked(k, a));
            }
        }
        Ok(FiniteSubset { group: self.group, elements: seen.into_iter().collect() })
    }

    pub fn union(&self, other: &FiniteSubset) -> Result<FiniteSubset, GroupError> {
        self.same_group(other)?;
        let mut elements = self.elements.clone();
        elements.extend(other.elements.iter().cloned());
        Ok(FiniteSubset { group: self.group, elements })
    }

    pub fn union_in_place(&mut self, other: &FiniteSubset) -> Result<(), GroupError> {
        self.same_group(other)?;
        self.elements.extend(other.elements.iter().cloned());
        Ok(())
    }

    pub fn intersection_len(&self, other: &FiniteSubset) -> Result<usize, GroupError> {
        self.same_group(other)?;
        let (small, big) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        Ok(small.elements.iter().filter(|e| big.elements.contains(*e)).count())
    }

    /// Translation defect `|gF symdiff F| / |F|`, exact.
    pub fn foelner_defect(&self, g: &GroupElement) -> Result<Rational64, GroupError> {
        if self.is_empty() {
            return Err(GroupError::EmptySet);
        }
        let translated = self.left_translate(g)?;
        // |gF| = |F|, so |gF symdiff F| = 2(|F| - |gF inter F|).
        let inter = self.intersection_len(&translated)?;
        let sym = 2 * (self.len() - inter);
        Ok(Rational64::new(sym as i64, self.len() as i64))
    }

    /// `K`-boundary: elements `g` with `Kg` meeting both `self` and its complement.
    ///
    /// `Kg` meets `self` forces `g` into `K^{-1} . self`, so the search space is
    /// finite and the result is a subset of it.
    pub fn k_boundary(&self, k_set: &FiniteSubset) -> Result<FiniteSubset, GroupError> {
        self.same_group(k_set)?;
        if k_set.is_empty() {
            return Err(GroupError::EmptySet);
        }
        let candidates = k_set.inverse_set().product_set(self)?;
        let elements = candidates
            .elements
            .into_iter()
            .filter(|g| {
                k_set
                    .elements
                    .iter()
                    .any(|k| !self.elements.contains(&self.group.mul_unchecked(k, g)))
            })
            .collect();
        Ok(FiniteSubset { group: self.group, elements })
    }

    /// Strict `(K, δ)`-invariance: `|B(self, K)| / |self| < delta`.
    pub fn is_k_delta_invariant(
        &self,
        k_set: &FiniteSubset,
        delta: Rational64,
    ) -> Result<bool, GroupError> {
        if self.is_empty() {
            return Err(GroupError::EmptySet);
        }
        let boundary = self.k_boundary(k_set)?;
        let ratio = Rational64::new(boundary.len() as i64, self.len() as i64);
        Ok(ratio < delta)
    }
}
