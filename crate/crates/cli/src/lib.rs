//! Serializable reports and text renderers for the `amenable` binary.
//!
//! Every subcommand of the CLI assembles exactly one of the report types
//! below and then prints it either as pretty JSON (key order = field
//! declaration order, so repeated runs are byte-identical) or as CSV.
//! Keeping the types in a library crate lets integration tests deserialize
//! the binary's stdout back into the same structures that produced it.
//!
//! Rendering conventions, shared by every subcommand:
//!
//! * floats carry six significant digits ([`fmt6`]),
//! * exact rationals print as `numerator/denominator` ([`rational`]),
//! * CSV output starts with a header row and quotes only fields that
//!   need it ([`csv_field`]).

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

/// Formats a float with six significant digits: plain decimal notation when
/// the exponent lies in `[-4, 6)`, scientific notation (`d.dddddEe`) outside
/// that window. Zero prints as `0.000000`; non-finite values print as
/// `inf`/`-inf`/`NaN`.
pub fn fmt6(v: f64) -> String {
    if !v.is_finite() {
        return format!("{v}");
    }
    if v == 0.0 {
        return String::from("0.000000");
    }
    // Round to six significant digits first, then read the exponent off the
    // rounded form so values like 0.9999999 land in the right branch.
    let sci = format!("{v:.5e}");
    let e_pos = sci.find('e').expect("{:e} always contains an exponent");
    let exp: i32 = sci[e_pos + 1..].parse().expect("exponent is an integer");
    if (-4..6).contains(&exp) {
        let decimals = (5 - exp) as usize;
        format!("{v:.decimals$}")
    } else {
        sci
    }
}

/// Prints an exact rational as `numerator/denominator` (denominator always
/// present, always positive).
pub fn rational(r: &Rational64) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Renders one group element as a coordinate tuple, e.g. `(1,0,-2)`.
pub fn coords(e: &[i64]) -> String {
    let inner: Vec<String> = e.iter().map(i64::to_string).collect();
    format!("({})", inner.join(","))
}

/// Quotes a CSV field only when it contains a comma, quote, or newline.
pub fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn csv_row(fields: &[String]) -> String {
    let quoted: Vec<String> = fields.iter().map(|f| csv_field(f)).collect();
    quoted.join(",") + "\n"
}

/// Pretty JSON with a trailing newline. Key order follows struct field
/// order, so output is deterministic.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("reports serialize infallibly");
    text.push('\n');
    text
}

/// CSV rendering (header row first) for each report type.
pub trait ToCsv {
    fn to_csv(&self) -> String;
}

/// `group`: identity and generators of the chosen group.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupReport {
    pub kind: String,
    pub arity: usize,
    pub identity: Vec<i64>,
    pub generators: Vec<Vec<i64>>,
}

impl ToCsv for GroupReport {
    fn to_csv(&self) -> String {
        let gens: Vec<String> = self.generators.iter().map(|g| coords(g)).collect();
        let mut out = csv_row(&["field".into(), "value".into()]);
        out += &csv_row(&["kind".into(), self.kind.clone()]);
        out += &csv_row(&["arity".into(), self.arity.to_string()]);
        out += &csv_row(&["identity".into(), coords(&self.identity)]);
        out += &csv_row(&["generators".into(), gens.join(" ")]);
        out
    }
}

/// One scale of a Følner diagnostic table.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FoelnerRow {
    pub n: usize,
    pub size: usize,
    /// Largest translation defect over the generator set, as `p/q`.
    pub max_defect: String,
    /// `|boundary| / |set|` against the generator set, as `p/q`.
    pub boundary_ratio: String,
}

/// `foelner`: per-scale defects plus the sequence-level temperedness
/// constant over the same range.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FoelnerReport {
    pub sequence: String,
    pub generators: Vec<Vec<i64>>,
    /// `max_n |union of earlier inverses * F_n| / |F_n|` as `p/q`, or `-`
    /// when the range is too short to evaluate it.
    pub temperedness: String,
    pub rows: Vec<FoelnerRow>,
}

impl ToCsv for FoelnerReport {
    fn to_csv(&self) -> String {
        let mut out = csv_row(&[
            "n".into(),
            "size".into(),
            "max_defect".into(),
            "boundary_ratio".into(),
        ]);
        for row in &self.rows {
            out += &csv_row(&[
                row.n.to_string(),
                row.size.to_string(),
                row.max_defect.clone(),
                row.boundary_ratio.clone(),
            ]);
        }
        out
    }
}

/// One scale of an entropy curve.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EntropyRow {
    pub n: usize,
    /// `|F_n|`, the number of cells counted at this scale.
    pub cells: usize,
    /// `ln(count)/cells`, six significant digits.
    pub rate: String,
}

/// `entropy`: the per-scale curve `n -> ln N(F_n)/|F_n|`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EntropyReport {
    pub mode: String,
    pub alphabet: usize,
    pub rows: Vec<EntropyRow>,
}

impl ToCsv for EntropyReport {
    fn to_csv(&self) -> String {
        let mut out = csv_row(&["n".into(), "cells".into(), "rate".into()]);
        for row in &self.rows {
            out += &csv_row(&[row.n.to_string(), row.cells.to_string(), row.rate.clone()]);
        }
        out
    }
}

/// `bowen` / `dim`: the critical exponent located by bisection.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EstimateReport {
    /// `bowen-entropy` or `hausdorff-dimension`.
    pub quantity: String,
    pub n_start: usize,
    pub n_max: usize,
    pub tolerance: String,
    /// The estimate, in nats, six significant digits.
    pub value: String,
}

impl ToCsv for EstimateReport {
    fn to_csv(&self) -> String {
        let mut out = csv_row(&["field".into(), "value".into()]);
        out += &csv_row(&["quantity".into(), self.quantity.clone()]);
        out += &csv_row(&["n_start".into(), self.n_start.to_string()]);
        out += &csv_row(&["n_max".into(), self.n_max.to_string()]);
        out += &csv_row(&["tolerance".into(), self.tolerance.clone()]);
        out += &csv_row(&["value".into(), self.value.clone()]);
        out
    }
}

/// `covering`: outcome of the covering selection, with its two certified
/// properties spelled out (`disjointness` / `coverage_bound`).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoveringReport {
    /// `random` or the spec-file path.
    pub source: String,
    pub seed: u64,
    pub rows: usize,
    /// Slack parameter as `p/q`.
    pub delta: String,
    /// `|F|`, the ambient set size.
    pub ambient: usize,
    /// `min_i |D * A_i| / |F|` as `p/q`.
    pub alpha: String,
    /// Number of translates the greedy pass kept.
    pub selected: usize,
    pub distinct_bases: usize,
    /// `|union of kept translates| / |F|` as `p/q`.
    pub coverage: String,
    /// `verified`: the kept cores are pairwise disjoint and meet quotas.
    pub disjointness: String,
    /// `met`: coverage reached `alpha` minus the certified root bound.
    pub coverage_bound: String,
}

impl ToCsv for CoveringReport {
    fn to_csv(&self) -> String {
        let mut out = csv_row(&["field".into(), "value".into()]);
        out += &csv_row(&["source".into(), self.source.clone()]);
        out += &csv_row(&["seed".into(), self.seed.to_string()]);
        out += &csv_row(&["rows".into(), self.rows.to_string()]);
        out += &csv_row(&["delta".into(), self.delta.clone()]);
        out += &csv_row(&["ambient".into(), self.ambient.to_string()]);
        out += &csv_row(&["alpha".into(), self.alpha.clone()]);
        out += &csv_row(&["selected".into(), self.selected.to_string()]);
        out += &csv_row(&["distinct_bases".into(), self.distinct_bases.to_string()]);
        out += &csv_row(&["coverage".into(), self.coverage.clone()]);
        out += &csv_row(&["disjointness".into(), self.disjointness.clone()]);
        out += &csv_row(&["coverage_bound".into(), self.coverage_bound.clone()]);
        out
    }
}

/// One `(n, delta)` cell of the binomial-bound table.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProofnumRow {
    pub n: u64,
    /// The delta exactly as given on the command line.
    pub delta: String,
    /// Exact decimal value of `sum_{m=1}^{floor(delta n)} C(n, m)`, or empty
    /// on a domain error.
    pub exact_sum: String,
    /// The closed-form bound as a float (`inf` when it overflows), or empty.
    pub bound: String,
    /// `ln` of the bound, always finite, or empty.
    pub log_bound: String,
    /// `holds`, `violated`, or `domain-error`.
    pub status: String,
    /// Domain-error detail, empty otherwise.
    pub note: String,
}

/// `proofnum` (table form): one row per `(n, delta)` pair.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProofnumReport {
    pub rows: Vec<ProofnumRow>,
}

impl ToCsv for ProofnumReport {
    fn to_csv(&self) -> String {
        let mut out = csv_row(&[
            "n".into(),
            "delta".into(),
            "exact_sum".into(),
            "bound".into(),
            "log_bound".into(),
            "status".into(),
            "note".into(),
        ]);
        for row in &self.rows {
            out += &csv_row(&[
                row.n.to_string(),
                row.delta.clone(),
                row.exact_sum.clone(),
                row.bound.clone(),
                row.log_bound.clone(),
                row.status.clone(),
                row.note.clone(),
            ]);
        }
        out
    }
}

/// `proofnum` (single-value form): one named quantity.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScalarReport {
    pub quantity: String,
    pub input: String,
    pub value: String,
}

impl ToCsv for ScalarReport {
    fn to_csv(&self) -> String {
        let mut out = csv_row(&["quantity".into(), "input".into(), "value".into()]);
        out += &csv_row(&[self.quantity.clone(), self.input.clone(), self.value.clone()]);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn six_significant_digits_cover_the_decimal_window() {
        assert_eq!(fmt6(0.0), "0.000000");
        assert_eq!(fmt6(1.0), "1.00000");
        assert_eq!(fmt6(0.4864689246763841), "0.486469");
        assert_eq!(fmt6(123456.4), "123456");
        assert_eq!(fmt6(-0.25), "-0.250000");
        assert_eq!(fmt6(0.000123456789), "0.000123457");
    }

    #[test]
    fn extreme_exponents_switch_to_scientific_notation() {
        assert_eq!(fmt6(1.0e-11), "1.00000e-11");
        assert_eq!(fmt6(999999.8), "1.00000e6");
        assert_eq!(fmt6(2.5e12), "2.50000e12");
        assert_eq!(fmt6(f64::NEG_INFINITY), "-inf");
    }

    #[test]
    fn rounding_at_the_window_edge_picks_the_rounded_exponent() {
        // 0.99999999 rounds to 1.00000, so it must print as a unit-exponent
        // decimal, not as 1.00000e0 or a 0.-prefixed string.
        assert_eq!(fmt6(0.99999999), "1.00000");
        assert_eq!(fmt6(9.9999999e-5), "0.000100000");
    }

    #[test]
    fn csv_quoting_touches_only_fields_that_need_it() {
        assert_eq!(csv_field("plain"), "plain");
        assert_eq!(csv_field("a,b"), "\"a,b\"");
        assert_eq!(csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
    }

    #[test]
    fn rationals_always_carry_a_denominator() {
        assert_eq!(rational(&Rational64::new(1, 200)), "1/200");
        assert_eq!(rational(&Rational64::new(4, 2)), "2/1");
        assert_eq!(rational(&Rational64::new(-3, 9)), "-1/3");
    }

    #[test]
    fn reports_round_trip_through_json() {
        let report = EstimateReport {
            quantity: "bowen-entropy".into(),
            n_start: 1,
            n_max: 12,
            tolerance: "0.00100000".into(),
            value: "0.693147".into(),
        };
        let text = to_json(&report);
        let back: EstimateReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, report);
    }

    #[test]
    fn csv_tables_start_with_a_header() {
        let report = EntropyReport {
            mode: "local".into(),
            alphabet: 2,
            rows: vec![EntropyRow { n: 1, cells: 1, rate: "0.693147".into() }],
        };
        assert_eq!(report.to_csv(), "n,cells,rate\n1,1,0.693147\n");
    }
}
