//! Assembling the name of a point from a covering selection.
//!
//! Given a pattern `x` on a box, a covering selection whose translates lie
//! in that box, and one cover family per selection row, each cell `g` is
//! named by a two-case rule: if `g` lies in exactly one selected translate
//! `F·a`, the name copies the matching family cylinder at `g·a^{-1}`
//! (well-defined because the translated point agrees with that cylinder);
//! otherwise — outside every translate or in an overlap — a fallback rule
//! fills the cell. The canonical fallback copies `x` itself, which keeps the
//! assembled name consistent with `x` by construction.

use std::collections::BTreeMap;

use super::{cylinder_contains, Cylinder, CoverFamily, Pattern, SubshiftError};
use crate::covering::SelectionResult;
use crate::group::GroupElement;

/// Rule for cells not owned by exactly one selected translate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fallback {
    /// Use the point's own symbol at the cell.
    CopyPoint,
}

/// Where each named cell came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    /// The cell lies in exactly one selected translate.
    Unique { row: usize, col: usize, base: GroupElement },
    /// The cell lies in two or more selected translates.
    Overlap,
    /// The cell lies in no selected translate.
    Outside,
}

/// Builds the name of `x` under the selection, together with a provenance
/// map over the cells of `x`'s domain.
///
/// Every selected translate must lie inside `x`'s domain, and for each one
/// some cylinder of the family indexed by the translate's row must contain
/// the correspondingly translated point — otherwise the covering contract is
/// violated and an error is returned.
pub fn assemble_name(
    x: &Pattern,
    selection: &SelectionResult,
    families: &[CoverFamily],
    fallback: Fallback,
) -> Result<(Pattern, BTreeMap<GroupElement, Provenance>), SubshiftError> {
    let group = x.group();
    let domain = x.domain();

    // Ownership: which selected translates contain each cell.
    let mut owners: BTreeMap<&GroupElement, Vec<usize>> = BTreeMap::new();
    for (k, translate) in selection.translates.iter().enumerate() {
        if translate.group() != group {
            return Err(crate::group::GroupError::MixedGroups.into());
        }
        if !translate.is_subset(&domain) {
            return Err(SubshiftError::InsufficientDomain);
        }
        for g in translate.iter() {
            owners.entry(g).or_default().push(k);
        }
    }

    // One matching cylinder per selected translate, resolved up front so a
    // covering failure is reported even for translates with no unique cells.
    let mut matched: Vec<(&Cylinder, GroupElement)> = Vec::with_capacity(selection.selected.len());
    for (k, sel) in selection.selected.iter().enumerate() {
        let family = families
            .iter()
            .find(|f| f.index() == sel.row)
            .ok_or_else(|| {
                SubshiftError::ContractViolation(format!("no cover family for row {}", sel.row))
            })?;
        let base_inv = group.inv_unchecked(&sel.base);
        let shape = selection.translates[k].right_translate(&base_inv)?;
        let translated = x.translate(&sel.base)?;
        let cylinder = family
            .cylinders()
            .iter()
            .find(|c| {
                shape.is_subset(&c.pattern().domain())
                    && matches!(cylinder_contains(&translated, c), Ok(true))
            })
            .ok_or_else(|| {
                SubshiftError::ContractViolation(format!(
                    "no cylinder of family {} contains the point translated by {}",
                    sel.row, sel.base
                ))
            })?;
        matched.push((cylinder, base_inv));
    }

    let mut name: BTreeMap<GroupElement, crate::subshift::Symbol> = BTreeMap::new();
    let mut provenance: BTreeMap<GroupElement, Provenance> = BTreeMap::new();
    for g in domain.iter() {
        match owners.get(g).map(Vec::as_slice) {
            Some([k]) => {
                let sel = &selection.selected[*k];
                let (cylinder, base_inv) = &matched[*k];
                let h = group.mul_unchecked(g, base_inv);
                let symbol = cylinder.pattern().get(&h).ok_or_else(|| {
                    SubshiftError::ContractViolation(format!(
                        "matched cylinder lacks cell {h} required by translate {k}"
                    ))
                })?;
                name.insert(g.clone(), symbol);
                provenance.insert(
                    g.clone(),
                    Provenance::Unique { row: sel.row, col: sel.col, base: sel.base.clone() },
                );
            }
            Some(_many) => {
                let symbol = match fallback {
                    Fallback::CopyPoint => x.get(g).expect("g lies in x's domain"),
                };
                name.insert(g.clone(), symbol);
                provenance.insert(g.clone(), Provenance::Overlap);
            }
            None => {
                let symbol = match fallback {
                    Fallback::CopyPoint => x.get(g).expect("g lies in x's domain"),
                };
                name.insert(g.clone(), symbol);
                provenance.insert(g.clone(), Provenance::Outside);
            }
        }
    }
    Ok((Pattern::new(group, name)?, provenance))
}
