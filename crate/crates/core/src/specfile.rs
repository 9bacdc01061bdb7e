//! Shared JSON schema for describing groups, subshifts, Følner sequences,
//! and covering instances in one document, with a single parser and a single
//! validation path used by both the library and the command-line front end.
//!
//! Exact quantities (the disjointness parameter `δ`, the temperedness
//! constant `C`) are written as strings — `"1/200"`, `"0.005"`, `"2"` — and
//! parsed into exact rationals, never through floating point.
//!
//! Finite sets are written either as explicit `points` (one coordinate
//! vector per element) or as a product `box` of half-open intervals
//! `[lo, hi)`, one per coordinate.

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::covering::{CoveringError, CoveringInstance};
use crate::foelner::{FoelnerError, FoelnerSequence};
use crate::group::{FiniteSubset, Group, GroupElement, GroupError};
use crate::subshift::{Pattern, Subshift, SubshiftError, Symbol};

/// Upper bound on the number of elements a single `box` set may enumerate.
const MAX_SET_ELEMENTS: u64 = 2_000_000;

/// Errors from parsing or converting a spec document.
#[derive(Debug, thiserror::Error)]
pub enum SpecError {
    #[error("spec file is not valid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unknown group kind {0:?} (expected \"lattice\" or \"heisenberg\")")]
    UnknownGroupKind(String),
    #[error("group kind \"lattice\" requires a dimension field \"d\"")]
    MissingDimension,
    #[error("group kind \"heisenberg\" takes no dimension field")]
    UnexpectedDimension,
    #[error(
        "unknown Følner kind {0:?} (expected \"boxes\", \"centered\", \"heisenberg\", or \"explicit\")"
    )]
    UnknownFoelnerKind(String),
    #[error("Følner kind {kind:?} does not match the document's {group:?} group")]
    FoelnerGroupMismatch { kind: String, group: String },
    #[error("Følner kind \"explicit\" requires a \"sets\" field")]
    MissingExplicitSets,
    #[error("spec file lacks the {0:?} section required by this operation")]
    MissingSection(&'static str),
    #[error("a set must specify exactly one of \"points\" or \"box\"")]
    AmbiguousSet,
    #[error("bad box: {0}")]
    BadBox(String),
    #[error("set too large: {0} elements (budget {MAX_SET_ELEMENTS})")]
    SetTooLarge(u64),
    #[error("cannot parse {0:?} as an exact rational (use \"p/q\", a decimal, or an integer)")]
    BadRational(String),
    #[error("unknown symbol {0:?} (not in the alphabet)")]
    UnknownSymbol(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Foelner(#[from] FoelnerError),
    #[error(transparent)]
    Subshift(#[from] SubshiftError),
    #[error(transparent)]
    Covering(#[from] CoveringError),
}

/// A full spec document. Only `group` is mandatory; each operation requires
/// the sections it consumes.
#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct SpecDocument {
    pub group: GroupSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alphabet: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub forbidden: Option<Vec<ForbiddenSpec>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub foelner: Option<FoelnerSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub covering: Option<CoveringSpec>,
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
}

/// One forbidden pattern: a list of constrained cells.
#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ForbiddenSpec {
    pub cells: Vec<CellSpec>,
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct CellSpec {
    pub offset: Vec<i64>,
    pub symbol: String,
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct FoelnerSpec {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sets: Option<Vec<SetSpec>>,
}

/// A finite set, as explicit points or as a product of half-open intervals.
#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct SetSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<Vec<Vec<i64>>>,
    #[serde(default, rename = "box", skip_serializing_if = "Option::is_none")]
    pub box_ranges: Option<Vec<[i64; 2]>>,
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct CoveringSpec {
    pub shapes: Vec<Vec<SetSpec>>,
    pub bases: Vec<Vec<SetSpec>>,
    pub ambient: SetSpec,
    pub delta: String,
    pub d_set: SetSpec,
    pub c_const: String,
}

/// Parses a spec document from JSON text.
pub fn parse_document(text: &str) -> Result<SpecDocument, SpecError> {
    Ok(serde_json::from_str(text)?)
}

/// Parses `"p/q"`, a decimal such as `"0.005"`, or a plain integer into an
/// exact rational.
pub fn parse_rational(text: &str) -> Result<Rational64, SpecError> {
    let bad = || SpecError::BadRational(text.to_string());
    let s = text.trim();
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((p, q)) = s.split_once('/') {
        let p: i64 = p.trim().parse().map_err(|_| bad())?;
        let q: i64 = q.trim().parse().map_err(|_| bad())?;
        if q <= 0 {
            return Err(bad());
        }
        return Ok(Rational64::new(p, q));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        let (sign, int_digits) = match int_part.strip_prefix('-') {
            Some(rest) => (-1i64, rest),
            None => (1i64, int_part),
        };
        if frac_part.is_empty()
            || !frac_part.bytes().all(|b| b.is_ascii_digit())
            || !(int_digits.is_empty() || int_digits.bytes().all(|b| b.is_ascii_digit()))
        {
            return Err(bad());
        }
        let int_value: i64 =
            if int_digits.is_empty() { 0 } else { int_digits.parse().map_err(|_| bad())? };
        let frac_value: i64 = frac_part.parse().map_err(|_| bad())?;
        let denom = 10i64.checked_pow(frac_part.len() as u32).ok_or_else(bad)?;
        let numer = int_value
            .checked_mul(denom)
            .and_then(|v| v.checked_add(frac_value))
            .and_then(|v| v.checked_mul(sign))
            .ok_or_else(bad)?;
        return Ok(Rational64::new(numer, denom));
    }
    let n: i64 = s.parse().map_err(|_| bad())?;
    Ok(Rational64::from_integer(n))
}

fn subset_from_spec(spec: &SetSpec, group: Group) -> Result<FiniteSubset, SpecError> {
    match (&spec.points, &spec.box_ranges) {
        (Some(points), None) => {
            let elements = points.iter().map(|coords| GroupElement::new(coords.clone()));
            Ok(FiniteSubset::new(group, elements)?)
        }
        (None, Some(ranges)) => {
            if ranges.len() != group.arity() {
                return Err(SpecError::BadBox(format!(
                    "box has {} coordinate ranges but the group needs {}",
                    ranges.len(),
                    group.arity()
                )));
            }
            let mut volume: u64 = 1;
            for &[lo, hi] in ranges {
                if lo >= hi {
                    return Err(SpecError::BadBox(format!(
                        "range [{lo}, {hi}) is empty; intervals are half-open with lo < hi"
                    )));
                }
                volume = volume
                    .checked_mul((hi - lo) as u64)
                    .filter(|&v| v <= MAX_SET_ELEMENTS)
                    .ok_or(SpecError::SetTooLarge(u64::MAX))?;
            }
            let mut elements = Vec::with_capacity(volume as usize);
            let mut coords: Vec<i64> = ranges.iter().map(|&[lo, _]| lo).collect();
            loop {
                elements.push(GroupElement::new(coords.clone()));
                // Odometer increment over the ranges, last coordinate fastest.
                let mut i = ranges.len();
                loop {
                    if i == 0 {
                        return Ok(FiniteSubset::new(group, elements)?);
                    }
                    i -= 1;
                    coords[i] += 1;
                    if coords[i] < ranges[i][1] {
                        break;
                    }
                    coords[i] = ranges[i][0];
                }
            }
        }
        _ => Err(SpecError::AmbiguousSet),
    }
}

impl SpecDocument {
    /// The document's group.
    pub fn group(&self) -> Result<Group, SpecError> {
        match self.group.kind.as_str() {
            "lattice" => {
                let d = self.group.d.ok_or(SpecError::MissingDimension)?;
                Ok(Group::lattice(d)?)
            }
            "heisenberg" => {
                if self.group.d.is_some() {
                    return Err(SpecError::UnexpectedDimension);
                }
                Ok(Group::Heisenberg)
            }
            other => Err(SpecError::UnknownGroupKind(other.to_string())),
        }
    }

    /// The document's subshift (requires the `alphabet` section; a missing
    /// `forbidden` section means a full shift).
    pub fn subshift(&self) -> Result<Subshift, SpecError> {
        let group = self.group()?;
        let alphabet = self.alphabet.clone().ok_or(SpecError::MissingSection("alphabet"))?;
        let mut patterns = Vec::new();
        for forbidden in self.forbidden.as_deref().unwrap_or_default() {
            let mut cells = Vec::with_capacity(forbidden.cells.len());
            for cell in &forbidden.cells {
                let index = alphabet
                    .iter()
                    .position(|name| *name == cell.symbol)
                    .ok_or_else(|| SpecError::UnknownSymbol(cell.symbol.clone()))?;
                if index > u8::MAX as usize {
                    return Err(SubshiftError::AlphabetTooLarge(alphabet.len()).into());
                }
                cells.push((GroupElement::new(cell.offset.clone()), Symbol(index as u8)));
            }
            patterns.push(Pattern::new(group, cells)?);
        }
        Ok(Subshift::new(group, alphabet, patterns)?)
    }

    /// The document's Følner sequence (requires the `foelner` section).
    pub fn foelner(&self) -> Result<FoelnerSequence, SpecError> {
        let group = self.group()?;
        let spec = self.foelner.as_ref().ok_or(SpecError::MissingSection("foelner"))?;
        let mismatch = |kind: &str| SpecError::FoelnerGroupMismatch {
            kind: kind.to_string(),
            group: self.group.kind.clone(),
        };
        match spec.kind.as_str() {
            "boxes" | "centered" => match group {
                Group::Lattice { dim } => Ok(if spec.kind == "boxes" {
                    FoelnerSequence::lattice_boxes(dim)?
                } else {
                    FoelnerSequence::lattice_centered_boxes(dim)?
                }),
                _ => Err(mismatch(&spec.kind)),
            },
            "heisenberg" => match group {
                Group::Heisenberg => Ok(FoelnerSequence::heisenberg_boxes()),
                _ => Err(mismatch("heisenberg")),
            },
            "explicit" => {
                let specs = spec.sets.as_ref().ok_or(SpecError::MissingExplicitSets)?;
                let sets = specs
                    .iter()
                    .map(|s| subset_from_spec(s, group))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(FoelnerSequence::explicit(sets)?)
            }
            other => Err(SpecError::UnknownFoelnerKind(other.to_string())),
        }
    }

    /// The document's covering instance (requires the `covering` section).
    pub fn covering_instance(&self) -> Result<CoveringInstance, SpecError> {
        let group = self.group()?;
        let spec = self.covering.as_ref().ok_or(SpecError::MissingSection("covering"))?;
        let convert_rows = |rows: &[Vec<SetSpec>]| -> Result<Vec<Vec<FiniteSubset>>, SpecError> {
            rows.iter()
                .map(|row| row.iter().map(|s| subset_from_spec(s, group)).collect())
                .collect()
        };
        Ok(CoveringInstance::new(
            group,
            convert_rows(&spec.shapes)?,
            convert_rows(&spec.bases)?,
            subset_from_spec(&spec.ambient, group)?,
            parse_rational(&spec.delta)?,
            subset_from_spec(&spec.d_set, group)?,
            parse_rational(&spec.c_const)?,
        )?)
    }
}
