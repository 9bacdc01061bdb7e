//! Scalar estimates behind the covering argument, as checkable functions:
//! binary entropy, the entropy-slack smallness condition on the disjointness
//! parameter, the minimum invariance scale, and a Stirling-type upper bound
//! for partial binomial sums verified against an exact big-integer sum.
//!
//! Everything here is a pure function of its arguments; inequalities with
//! potentially huge sides are compared in log space so they stay decidable
//! beyond `f64` range.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::numeric::ln_biguint;

/// Errors from the scalar estimates.
#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum EstimateError {
    /// An argument lies outside the estimate's domain of definition.
    #[error("domain error: {0}")]
    Domain(String),
    /// The decade grid ran out before the entropy-slack target was met.
    #[error("no decade-grid delta satisfies the entropy-slack condition below epsilon = {0}")]
    GridExhausted(f64),
}

/// Tolerance, disjointness slack, and scale bundled with their joint domain
/// requirement `0 < δ < min(ε, 1/100)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProofParams {
    epsilon: f64,
    delta: f64,
    n: u64,
}

impl ProofParams {
    pub fn new(epsilon: f64, delta: f64, n: u64) -> Result<Self, EstimateError> {
        if !(epsilon > 0.0) || !epsilon.is_finite() {
            return Err(EstimateError::Domain(format!(
                "epsilon must be a finite positive real, got {epsilon}"
            )));
        }
        let cap = epsilon.min(1.0 / 100.0);
        if !(delta > 0.0 && delta < cap) {
            return Err(EstimateError::Domain(format!(
                "delta must lie in (0, min(epsilon, 1/100)) = (0, {cap}), got {delta}"
            )));
        }
        if n == 0 {
            return Err(EstimateError::Domain("n must be a positive integer".into()));
        }
        Ok(ProofParams { epsilon, delta, n })
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn n(&self) -> u64 {
        self.n
    }
}

/// Binary entropy `−t·ln t − (1−t)·ln(1−t)` in nats, for `t ∈ (0,1)`.
pub fn binary_entropy(t: f64) -> Result<f64, EstimateError> {
    if !(t > 0.0 && t < 1.0) {
        return Err(EstimateError::Domain(format!(
            "binary entropy needs t in (0,1), got {t}"
        )));
    }
    Ok(-t * t.ln() - (1.0 - t) * (1.0 - t).ln())
}

/// Entropy cost of the cells a covering name may get wrong: the binary
/// entropy of the slack fraction `2δ + 11δ^{1/4}`. Defined while that
/// fraction stays inside `(0,1)`.
pub fn entropy_slack(delta: f64) -> Result<f64, EstimateError> {
    if !(delta > 0.0) || !delta.is_finite() {
        return Err(EstimateError::Domain(format!(
            "delta must be a finite positive real, got {delta}"
        )));
    }
    let fraction = 2.0 * delta + 11.0 * delta.powf(0.25);
    if fraction >= 1.0 {
        return Err(EstimateError::Domain(format!(
            "slack fraction 2δ + 11δ^(1/4) = {fraction} leaves (0,1) at δ = {delta}"
        )));
    }
    binary_entropy(fraction)
}

/// Largest decade-grid value `δ = 10^{-k}` with `δ < min(ε, 1/100)` whose
/// entropy slack is below `ε`. Grid values where the slack is undefined are
/// skipped; if the grid bottoms out (only possible for extreme `ε`) the
/// search reports exhaustion rather than inventing a value.
pub fn delta_for_epsilon(epsilon: f64) -> Result<f64, EstimateError> {
    if !(epsilon > 0.0) || !epsilon.is_finite() {
        return Err(EstimateError::Domain(format!(
            "epsilon must be a finite positive real, got {epsilon}"
        )));
    }
    let cap = epsilon.min(1.0 / 100.0);
    for k in 3..=300 {
        let delta = 10f64.powi(-k);
        if delta >= cap {
            continue;
        }
        if let Ok(slack) = entropy_slack(delta) {
            if slack < epsilon {
                return Ok(delta);
            }
        }
    }
    Err(EstimateError::GridExhausted(epsilon))
}

/// Minimum box size the covering argument needs: `1/(δ·(1− 10δ^{1/4}))`.
///
/// The requirement `10δ^{1/4} < 1` is equivalent to `δ < 10^{-4}`, and the
/// precondition is tested in that form so the boundary `δ = 10^{-4}` is
/// rejected exactly instead of depending on root rounding.
pub fn min_scale(delta: f64) -> Result<f64, EstimateError> {
    if !(delta > 0.0) || !delta.is_finite() {
        return Err(EstimateError::Domain(format!(
            "delta must be a finite positive real, got {delta}"
        )));
    }
    if delta >= 1e-4 {
        return Err(EstimateError::Domain(format!(
            "10δ^(1/4) ≥ 1 at δ = {delta}; the scale threshold needs δ < 10^(-4)"
        )));
    }
    Ok(1.0 / (delta * (1.0 - 10.0 * delta.powf(0.25))))
}

/// `⌊δn⌋`, validated: `n ≥ 1`, `δ ∈ (0,1)`, and the floor must be at least 1
/// (an empty binomial sum has no bound to check) and below `n`.
fn slack_count(n: u64, delta: f64) -> Result<u64, EstimateError> {
    if n == 0 {
        return Err(EstimateError::Domain("n must be a positive integer".into()));
    }
    if !(delta > 0.0 && delta < 1.0) {
        return Err(EstimateError::Domain(format!(
            "delta must lie in (0,1), got {delta}"
        )));
    }
    let m = (delta * n as f64).floor() as u64;
    if m == 0 {
        return Err(EstimateError::Domain(format!(
            "⌊δn⌋ = 0 for n = {n}, δ = {delta}: the binomial sum is empty"
        )));
    }
    if m >= n {
        return Err(EstimateError::Domain(format!(
            "⌊δn⌋ = {m} reaches n = {n}; the prefactor needs 1 ≤ ⌊δn⌋ < n"
        )));
    }
    Ok(m)
}

/// Stirling-formula prefactor of the binomial-sum bound, with `m = ⌊δn⌋`:
///
/// `δ/(1−δ) · n · sqrt(n / (2π(n−m)m)) · e^{α_n − α_{n−m} − α_m + 1}`
///
/// where each Stirling correction `α_j` is only known to lie in
/// `(1/(12j+1), 1/(12j))`. Positive occurrences take the upper endpoint and
/// negative occurrences the lower, so the returned value is a true upper
/// bound for every admissible choice of corrections.
pub fn stirling_prefactor(n: u64, delta: f64) -> Result<f64, EstimateError> {
    let m = slack_count(n, delta)?;
    let nf = n as f64;
    let mf = m as f64;
    let rest = (n - m) as f64;
    let ratio = delta / (1.0 - delta);
    let sqrt_term = (nf / (2.0 * std::f64::consts::PI * rest * mf)).sqrt();
    let exponent =
        1.0 / (12.0 * nf) - 1.0 / (12.0 * rest + 1.0) - 1.0 / (12.0 * mf + 1.0) + 1.0;
    Ok(ratio * nf * sqrt_term * exponent.exp())
}

/// Outcome of checking the partial binomial sum against its entropy bound.
#[derive(Clone, Debug, PartialEq)]
pub struct BinomialBoundReport {
    /// `Σ_{m=1}^{⌊δn⌋} C(n,m)`, computed exactly.
    pub exact_sum: BigUint,
    /// The bound `prefactor · e^{H(δ)·n}` as an `f64`; saturates to `+∞`
    /// when it exceeds floating-point range (the check still decides).
    pub bound: f64,
    /// Natural log of the bound, always finite.
    pub log_bound: f64,
    /// Whether `exact_sum ≤ bound`, decided in log space.
    pub holds: bool,
}

/// Checks `Σ_{m=1}^{⌊δn⌋} C(n,m) ≤ prefactor · e^{H(δ)·n}` with an exact
/// big-integer sum on the left. The inequality is a theorem for the
/// conservative prefactor, so a `holds = false` outcome indicates an
/// implementation bug rather than a tight instance.
pub fn binomial_bound_check(n: u64, delta: f64) -> Result<BinomialBoundReport, EstimateError> {
    let m_top = slack_count(n, delta)?;
    let prefactor = stirling_prefactor(n, delta)?;
    let mut exact_sum = BigUint::zero();
    let mut binomial = BigUint::one();
    for m in 1..=m_top {
        // C(n,m) from C(n,m-1); the division is exact at every step.
        binomial *= n - m + 1;
        binomial /= m;
        exact_sum += &binomial;
    }
    let log_bound = prefactor.ln() + binary_entropy(delta)? * n as f64;
    let bound = log_bound.exp();
    let holds = ln_biguint(&exact_sum) <= log_bound;
    Ok(BinomialBoundReport { exact_sum, bound, log_bound, holds })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binary_entropy_peaks_at_one_half() {
        let h = binary_entropy(0.5).unwrap();
        assert!((h - std::f64::consts::LN_2).abs() < 1e-15);
        for t in [0.1, 0.25, 0.37, 0.49] {
            assert!(binary_entropy(t).unwrap() < h);
        }
    }

    #[test]
    fn binary_entropy_is_symmetric() {
        // Bitwise for a dyadic pair, where 1 - t is exact in binary…
        assert_eq!(binary_entropy(0.25).unwrap(), binary_entropy(0.75).unwrap());
        // …and to rounding error otherwise (1 - 0.99 ≠ 0.01 exactly).
        let diff = binary_entropy(0.01).unwrap() - binary_entropy(0.99).unwrap();
        assert!(diff.abs() < 1e-15);
    }

    #[test]
    fn binary_entropy_matches_a_direct_evaluation() {
        // -0.01·ln 0.01 - 0.99·ln 0.99, evaluated by hand.
        assert!((binary_entropy(0.01).unwrap() - 0.056001534354847).abs() < 1e-12);
    }

    #[test]
    fn binary_entropy_domain() {
        for t in [0.0, 1.0, -0.1, 1.5, f64::NAN] {
            assert!(matches!(binary_entropy(t), Err(EstimateError::Domain(_))));
        }
    }

    #[test]
    fn entropy_slack_small_delta_values() {
        // δ = 10^-12: slack fraction 0.011..., entropy ≈ 0.0605477.
        let v = entropy_slack(1e-12).unwrap();
        assert!((v - 0.0605477).abs() < 5e-6, "got {v}");
        // δ = 10^-20: fraction 1.1·10^-4, entropy ≈ 1.11·10^-3.
        let w = entropy_slack(1e-20).unwrap();
        assert!(w < 2e-3 && w > 1e-3, "got {w}");
    }

    #[test]
    fn entropy_slack_vanishes_in_the_limit() {
        // The slack tends to 0 with δ, but slowly: the fourth root means
        // only astronomically small δ push it below 10^-6.
        assert!(entropy_slack(1e-36).unwrap() < 1e-6);
        assert!(entropy_slack(1e-12).unwrap() > 1e-2);
    }

    #[test]
    fn entropy_slack_decreases_along_the_decade_grid() {
        let mut previous = f64::INFINITY;
        for k in 5..=60 {
            let v = entropy_slack(10f64.powi(-k)).unwrap();
            assert!(v < previous, "slack not decreasing at k = {k}");
            previous = v;
        }
    }

    #[test]
    fn entropy_slack_domain() {
        // Large δ push the slack fraction past 1.
        assert!(matches!(entropy_slack(1e-3), Err(EstimateError::Domain(_))));
        assert!(matches!(entropy_slack(1e-4), Err(EstimateError::Domain(_))));
        assert!(matches!(entropy_slack(0.0), Err(EstimateError::Domain(_))));
        assert!(matches!(entropy_slack(-1.0), Err(EstimateError::Domain(_))));
        // δ = 10^-5 is the first decade where the fraction is inside (0,1).
        assert!(entropy_slack(1e-5).is_ok());
    }

    #[test]
    fn delta_for_epsilon_finds_the_largest_grid_value() {
        // ε = 0.1: slack(10^-10) ≈ 0.151 > 0.1 but slack(10^-11) ≈ 0.0963.
        let d = delta_for_epsilon(0.1).unwrap();
        assert!((d - 1e-11).abs() < 1e-23, "got {d}");
        assert!(d <= 1e-5);
        // A loose ε is met at the first decade where the slack is defined.
        let loose = delta_for_epsilon(1.0).unwrap();
        assert!((loose - 1e-5).abs() < 1e-17, "got {loose}");
    }

    #[test]
    fn delta_for_epsilon_dominates_every_passing_grid_point() {
        for epsilon in [0.7, 0.3, 0.1, 0.05] {
            let found = delta_for_epsilon(epsilon).unwrap();
            for k in 5..=40 {
                let delta = 10f64.powi(-k);
                if delta < epsilon.min(0.01) && entropy_slack(delta).unwrap() < epsilon {
                    assert!(found >= delta * (1.0 - 1e-12));
                }
            }
        }
    }

    #[test]
    fn delta_for_epsilon_edge_cases() {
        assert!(matches!(delta_for_epsilon(0.0), Err(EstimateError::Domain(_))));
        assert!(matches!(delta_for_epsilon(-1.0), Err(EstimateError::Domain(_))));
        // The fourth root keeps the slack above ~10^-72 on the whole f64
        // grid, so absurdly small targets exhaust it.
        assert!(matches!(
            delta_for_epsilon(1e-80),
            Err(EstimateError::GridExhausted(_))
        ));
    }

    #[test]
    fn min_scale_matches_direct_arithmetic() {
        // δ = 10^-8: 1/(10^-8 · (1 - 0.1)) = 1.111...·10^8.
        let s = min_scale(1e-8).unwrap();
        assert!((s - 1.1111111111111111e8).abs() < 1.0, "got {s}");
    }

    #[test]
    fn min_scale_boundary_and_monotonicity() {
        assert!(matches!(min_scale(1e-4), Err(EstimateError::Domain(_))));
        assert!(matches!(min_scale(1e-2), Err(EstimateError::Domain(_))));
        assert!(matches!(min_scale(0.0), Err(EstimateError::Domain(_))));
        // Larger δ needs a smaller scale on the valid range.
        assert!(min_scale(1e-6).unwrap() < min_scale(1e-8).unwrap());
        assert!(min_scale(1e-5).unwrap() < min_scale(1e-6).unwrap());
    }

    #[test]
    fn prefactor_is_conservative_against_midpoint_corrections() {
        for (n, delta) in [(100u64, 0.1), (1000, 0.01), (500, 0.037)] {
            let conservative = stirling_prefactor(n, delta).unwrap();
            let m = (delta * n as f64).floor();
            let rest = n as f64 - m;
            let mid = |j: f64| 0.5 * (1.0 / (12.0 * j + 1.0) + 1.0 / (12.0 * j));
            let exponent = mid(n as f64) - mid(rest) - mid(m) + 1.0;
            let midpoint = delta / (1.0 - delta)
                * n as f64
                * (n as f64 / (2.0 * std::f64::consts::PI * rest * m)).sqrt()
                * exponent.exp();
            assert!(conservative >= midpoint);
        }
    }

    #[test]
    fn binomial_check_freezes_the_hundred_choose_up_to_ten_sum() {
        // Σ_{m=1}^{10} C(100,m) added by hand from the standard table.
        let report = binomial_bound_check(100, 0.1).unwrap();
        assert_eq!(report.exact_sum, BigUint::from(19_415_908_147_835u64));
        assert!(report.holds);
        assert!((report.log_bound - 33.8903).abs() < 5e-3, "got {}", report.log_bound);
        assert!(report.bound > 1.9415908147835e13);
    }

    #[test]
    fn binomial_check_holds_on_larger_grids() {
        for (n, delta) in [(1000u64, 0.1), (1000, 0.01), (1000, 0.005), (10_000, 0.01)] {
            let report = binomial_bound_check(n, delta).unwrap();
            assert!(report.holds, "bound failed at n = {n}, δ = {delta}");
        }
    }

    #[test]
    fn binomial_check_decides_beyond_float_range() {
        // n = 10^4, δ = 0.1: both sides overflow f64, the log-space check
        // still decides and the saturated bound reports +∞.
        let report = binomial_bound_check(10_000, 0.1).unwrap();
        assert!(report.holds);
        assert!(report.bound.is_infinite());
        assert!(report.log_bound.is_finite());
        assert!(ln_biguint(&report.exact_sum) > 700.0);
    }

    #[test]
    fn empty_binomial_sum_is_a_domain_error() {
        assert!(matches!(
            binomial_bound_check(10, 0.01),
            Err(EstimateError::Domain(_))
        ));
        assert!(matches!(
            binomial_bound_check(100, 0.005),
            Err(EstimateError::Domain(_))
        ));
        assert!(matches!(stirling_prefactor(0, 0.1), Err(EstimateError::Domain(_))));
        assert!(matches!(stirling_prefactor(100, 0.0), Err(EstimateError::Domain(_))));
    }

    #[test]
    fn proof_params_enforce_the_joint_domain() {
        assert!(ProofParams::new(0.1, 1e-3, 100).is_ok());
        assert!(ProofParams::new(1e-3, 5e-4, 10).is_ok());
        // δ must stay under min(ε, 1/100).
        assert!(matches!(
            ProofParams::new(0.1, 0.02, 5),
            Err(EstimateError::Domain(_))
        ));
        assert!(matches!(
            ProofParams::new(1e-3, 1e-3, 5),
            Err(EstimateError::Domain(_))
        ));
        assert!(matches!(
            ProofParams::new(0.0, 1e-3, 5),
            Err(EstimateError::Domain(_))
        ));
        assert!(matches!(
            ProofParams::new(0.1, 1e-3, 0),
            Err(EstimateError::Domain(_))
        ));
        let p = ProofParams::new(0.2, 1e-4, 7).unwrap();
        assert_eq!((p.epsilon(), p.delta(), p.n()), (0.2, 1e-4, 7));
    }
}
