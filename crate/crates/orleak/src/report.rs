//! Stable row schemas for leakage and bound-comparison reports, with CSV and
//! JSON renderings. Floating-point fields print with six decimal places so
//! repeated runs diff cleanly.

use serde::Serialize;

/// Render a float with the report precision.
pub fn fmt_bits(x: f64) -> String {
    format!("{x:.6}")
}

/// One leakage measurement.
#[derive(Debug, Clone, Serialize)]
pub struct LeakageRow {
    pub graph: String,
    pub algo: String,
    pub mode: String,
    /// `F=0-1;1-2`, `p=0.500000`, or `k=2`.
    pub selector: String,
    pub value_bits: f64,
    pub method: String,
    pub samples: Option<u64>,
    pub stderr: Option<f64>,
}

impl LeakageRow {
    pub const CSV_HEADER: &'static str =
        "graph,algo,mode,selector,value_bits,method,samples,stderr";

    pub fn csv_line(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{}",
            self.graph,
            self.algo,
            self.mode,
            self.selector,
            fmt_bits(self.value_bits),
            self.method,
            self.samples.map(|s| s.to_string()).unwrap_or_default(),
            self.stderr.map(fmt_bits).unwrap_or_default(),
        )
    }
}

/// One theorem-vs-measurement comparison.
#[derive(Debug, Clone, Serialize)]
pub struct BoundRow {
    pub theorem: String,
    pub params: String,
    pub bound_bits: f64,
    pub measured_bits: Option<f64>,
    pub margin: Option<f64>,
    pub hypothesis_ok: bool,
    pub note: String,
}

impl BoundRow {
    pub const CSV_HEADER: &'static str =
        "theorem,params,bound_bits,measured_bits,margin,hypothesis_ok,note";

    pub fn csv_line(&self) -> String {
        format!(
            "{},{},{},{},{},{},{}",
            self.theorem,
            self.params,
            fmt_bits(self.bound_bits),
            self.measured_bits.map(fmt_bits).unwrap_or_default(),
            self.margin.map(fmt_bits).unwrap_or_default(),
            self.hypothesis_ok,
            self.note,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_lines_are_stable() {
        let row = LeakageRow {
            graph: "star4".into(),
            algo: "silent".into(),
            mode: "filtered".into(),
            selector: "p=0.500000".into(),
            value_bits: 1.116729296672175,
            method: "exact".into(),
            samples: None,
            stderr: None,
        };
        assert_eq!(
            row.csv_line(),
            "star4,silent,filtered,p=0.500000,1.116729,exact,,"
        );
        let row = BoundRow {
            theorem: "dense_k".into(),
            params: "k=1".into(),
            bound_bits: 1.0 / 3.0,
            measured_bits: Some(0.4056390622295665),
            margin: Some(0.4056390622295665 - 1.0 / 3.0),
            hypothesis_ok: true,
            note: String::new(),
        };
        assert_eq!(
            row.csv_line(),
            "dense_k,k=1,0.333333,0.405639,0.072306,true,"
        );
    }
}
