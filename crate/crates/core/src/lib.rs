//! Executable combinatorics for subshifts over countable amenable groups.
//!
//! The crate makes three circles of ideas computational at desk scale:
//!
//! * **Følner diagnostics** — boundary defects, temperedness constants and
//!   invariance thresholds for concrete Følner sequences in `Z^d` and the
//!   discrete Heisenberg group ([`group`], [`foelner`]).
//! * **Covering selection** — a Lindenstrauss-style finite covering lemma run
//!   as an algorithm: hypothesis checking, exact `δ`-disjointness decisions via
//!   maximum flow, greedy selection with a machine-checked coverage guarantee
//!   ([`covering`]).
//! * **Dimensional entropy** — pattern counting for subshifts of finite type,
//!   entropy curves, an outer-measure construction over multi-scale cylinder
//!   covers, and the induced critical-exponent estimates for which the Bowen
//!   and Hausdorff readings agree by construction ([`subshift`]).
//!
//! Module [`estimates`] holds the scalar inequalities (binary entropy slack,
//! Stirling prefactors, binomial tail bounds) that make the quantitative side
//! of the covering argument checkable, and [`specfile`] is the serde schema
//! shared with the command-line front end.
//!
//! Counting is exact: set sizes and ratios are rationals, pattern counts are
//! big integers. Floating point enters only where a logarithm or an
//! exponential does.

pub mod covering;
pub mod estimates;
pub mod foelner;
pub mod group;
pub mod numeric;
pub mod specfile;
pub mod subshift;

pub use covering::{CoveringInstance, HypothesisReport, SelectionResult};
pub use foelner::FoelnerSequence;
pub use group::{FiniteSubset, Group, GroupElement};
pub use subshift::{CoverFamily, Cylinder, Pattern, Subshift, Symbol};
