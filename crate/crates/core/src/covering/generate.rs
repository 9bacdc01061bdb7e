//! Seeded generation of covering instances over the integer lattice.
//!
//! Shapes are ascending intervals `[0, m)`, which makes the selection
//! hypotheses provable by construction: within a row,
//! `|[0,a)^{-1}[0,b)| = a + b - 1 <= 2b` whenever `a <= b`, so `C = 2`
//! always works; across rows, a new scale `m` satisfies the smallness
//! condition exactly when `m >= (prev_max - 1) / delta`, and the generator
//! never goes below that floor. Base points are a tiling of the ambient
//! interval plus random extras, so every instance has plenty of admissible
//! translates and the coverage bound is comfortably attainable.

use num_rational::Rational64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{CoveringError, CoveringInstance};
use crate::group::{FiniteSubset, Group, GroupElement};

/// Tunable sizes for [`random_instance`]. `rows` is the number of scale
/// rows; each row carries up to `shapes_per_row` interval shapes. The first
/// row draws its interval lengths from `1..=first_row_max_shape` (larger
/// first-row shapes force much larger later rows, since each new row must be
/// `~prev_max/delta` long).
#[derive(Clone, Debug, PartialEq)]
pub struct InstanceParams {
    pub group: Group,
    pub rows: usize,
    pub shapes_per_row: usize,
    pub ambient_size: usize,
    pub delta: Rational64,
    pub first_row_max_shape: usize,
}

impl Default for InstanceParams {
    fn default() -> Self {
        InstanceParams {
            group: Group::lattice(1).expect("dimension 1 is valid"),
            rows: 2,
            shapes_per_row: 2,
            ambient_size: 1600,
            delta: Rational64::new(1, 200),
            first_row_max_shape: 2,
        }
    }
}

/// Draws a covering instance over `Z` that satisfies every selection
/// hypothesis by construction. Deterministic per `(params, seed)`.
pub fn random_instance(
    params: &InstanceParams,
    seed: u64,
) -> Result<CoveringInstance, CoveringError> {
    if params.group != Group::lattice(1).expect("dimension 1 is valid") {
        return Err(CoveringError::UnsupportedGroup);
    }
    if params.delta <= Rational64::new(0, 1) || params.delta >= Rational64::new(1, 100) {
        return Err(CoveringError::InvalidDelta(params.delta));
    }
    if params.rows == 0 || params.shapes_per_row == 0 || params.first_row_max_shape == 0 {
        return Err(CoveringError::GenerationFailed(
            "rows, shapes_per_row and first_row_max_shape must be positive".into(),
        ));
    }
    let group = params.group;
    let ambient_len = params.ambient_size as i64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    // Interval lengths, row by row. Later rows start at the smallness floor.
    let mut sizes: Vec<Vec<i64>> = Vec::with_capacity(params.rows);
    let first_count = params.shapes_per_row.min(params.first_row_max_shape);
    let mut first: Vec<i64> = rand::seq::index::sample(
        &mut rng,
        params.first_row_max_shape,
        first_count,
    )
    .into_iter()
    .map(|k| k as i64 + 1)
    .collect();
    first.sort_unstable();
    sizes.push(first);
    for _ in 1..params.rows {
        let prev_max = *sizes.last().unwrap().last().unwrap();
        let floor = {
            // ceil((prev_max - 1) / delta), and always strictly above prev_max
            let needed = (Rational64::from_integer(prev_max - 1) / params.delta).ceil();
            needed.to_integer().max(prev_max + 1)
        };
        let mut row = Vec::with_capacity(params.shapes_per_row);
        let mut m = floor + rng.gen_range(0..=2);
        for _ in 0..params.shapes_per_row {
            row.push(m);
            m += 1 + rng.gen_range(0..=2);
        }
        sizes.push(row);
    }

    let largest = *sizes.last().unwrap().last().unwrap();
    if largest.checked_mul(4).map_or(true, |needed| needed > ambient_len) {
        return Err(CoveringError::GenerationFailed(format!(
            "largest shape has {largest} points; the ambient interval of {} \
             cannot hold enough translates (need at least {})",
            params.ambient_size,
            largest.saturating_mul(4),
        )));
    }

    let point = |x: i64| GroupElement::new(vec![x]);
    let interval = |len: i64| {
        FiniteSubset::new(group, (0..len).map(point)).expect("interval in Z")
    };

    let mut shapes: Vec<Vec<FiniteSubset>> = Vec::with_capacity(params.rows);
    let mut bases: Vec<Vec<FiniteSubset>> = Vec::with_capacity(params.rows);
    for row in &sizes {
        let mut srow = Vec::with_capacity(row.len());
        let mut brow = Vec::with_capacity(row.len());
        for &m in row {
            // Tiling keeps the union of translates large; extras add noise.
            let mut pts = Vec::new();
            for p in 0..=(ambient_len - m) {
                if p % m == 0 || rng.gen_bool(0.3) {
                    pts.push(point(p));
                }
            }
            srow.push(interval(m));
            brow.push(FiniteSubset::new(group, pts).expect("base points in Z"));
        }
        shapes.push(srow);
        bases.push(brow);
    }

    CoveringInstance::new(
        group,
        shapes,
        bases,
        interval(ambient_len),
        params.delta,
        FiniteSubset::singleton(group, group.identity()).expect("identity is well-formed"),
        Rational64::new(2, 1),
    )
    .map_err(|e| CoveringError::GenerationFailed(format!("constructed instance was invalid: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_instance_satisfies_every_hypothesis() {
        let inst = random_instance(&InstanceParams::default(), 1).unwrap();
        let report = inst.check_hypotheses().unwrap();
        assert!(report.all_hold(), "report: {report:?}");
        assert_eq!(inst.rows(), 2);
    }

    #[test]
    fn same_seed_reproduces_the_instance() {
        let params = InstanceParams::default();
        let a = random_instance(&params, 9).unwrap();
        let b = random_instance(&params, 9).unwrap();
        assert_eq!(a, b);
        let c = random_instance(&params, 10).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn delta_out_of_range_is_rejected() {
        let params = InstanceParams { delta: Rational64::new(1, 50), ..Default::default() };
        assert!(matches!(
            random_instance(&params, 1),
            Err(CoveringError::InvalidDelta(_))
        ));
    }

    #[test]
    fn non_lattice_groups_are_rejected() {
        let params = InstanceParams { group: Group::Heisenberg, ..Default::default() };
        assert!(matches!(
            random_instance(&params, 1),
            Err(CoveringError::UnsupportedGroup)
        ));
    }

    #[test]
    fn cramped_ambient_fails_loudly() {
        let params = InstanceParams { ambient_size: 100, ..Default::default() };
        assert!(matches!(
            random_instance(&params, 1),
            Err(CoveringError::GenerationFailed(_))
        ));
    }

    #[test]
    fn single_row_instances_are_supported() {
        let params = InstanceParams { rows: 1, ambient_size: 64, ..Default::default() };
        let inst = random_instance(&params, 3).unwrap();
        assert!(inst.check_hypotheses().unwrap().all_hold());
        let selection = inst.lindenstrauss_select(3).unwrap();
        assert!(!selection.selected.is_empty());
    }
}
