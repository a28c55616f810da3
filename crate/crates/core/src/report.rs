//! Assembled JSON reports: everything the `analyze` command prints.

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::Result;
use crate::invariants::{abc_table, AperyInvariants};
use crate::monotonicity::{certify, necessary_report, NecessaryReport, Verdict};
use crate::semigroup::NumericalSemigroup;

/// Full analysis of one semigroup.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub semigroup: Vec<i64>,
    pub multiplicity: i64,
    pub embedding_dimension: usize,
    pub frobenius: i64,
    pub symmetric: bool,
    pub apery: Vec<i64>,
    pub hilbert: Vec<u64>,
    pub r: u32,
    #[serde(rename = "D")]
    pub d: serde_json::Map<String, Value>,
    #[serde(rename = "C")]
    pub c: serde_json::Map<String, Value>,
    pub first_decrease: Option<u32>,
    pub abc: Vec<crate::invariants::AbcRow>,
    pub tangent_cone_cm: bool,
    pub verdict: VerdictWithKey,
    pub necessary: NecessaryReport,
}

/// The verdict fragment carries its semigroup so it stands alone in record
/// streams.
#[derive(Debug, Clone, Serialize)]
pub struct VerdictWithKey {
    pub semigroup: Vec<i64>,
    #[serde(flatten)]
    pub verdict: Verdict,
}

/// Runs every analysis on `s` and assembles the report.
pub fn analyze(s: &NumericalSemigroup) -> Result<Report> {
    let (hilbert, r) = s.hilbert_function();
    let sets = s.level_sets();
    let table: AperyInvariants = abc_table(s)?;
    let verdict = certify(s)?;
    let necessary = necessary_report(s)?;

    let d = sets
        .d
        .iter()
        .map(|(h, set)| (h.to_string(), json!(set)))
        .collect();
    let c = sets
        .c
        .iter()
        .map(|(h, set)| (h.to_string(), json!(set)))
        .collect();

    Ok(Report {
        semigroup: s.generators().to_vec(),
        multiplicity: s.multiplicity(),
        embedding_dimension: s.embedding_dimension(),
        frobenius: s.frobenius(),
        symmetric: s.is_symmetric(),
        apery: s.apery_set().to_vec(),
        hilbert,
        r,
        d,
        c,
        first_decrease: s.first_decrease(),
        abc: table.rows().to_vec(),
        tangent_cone_cm: table.is_cm(),
        verdict: VerdictWithKey {
            semigroup: s.generators().to_vec(),
            verdict,
        },
        necessary,
    })
}

/// The Hilbert function in the notation used throughout the worked examples:
/// the values up to the reduction number, then a continuation arrow.
pub fn hilbert_display(s: &NumericalSemigroup) -> String {
    let (hilbert, _) = s.hilbert_function();
    let parts: Vec<String> = hilbert.iter().map(|v| v.to_string()).collect();
    format!("{}, →", parts.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_has_the_documented_shape() {
        let s = NumericalSemigroup::new(&[16, 17, 35, 71]).unwrap();
        let report = analyze(&s).unwrap();
        let value = serde_json::to_value(&report).unwrap();
        assert_eq!(value["semigroup"], json!([16, 17, 35, 71]));
        assert_eq!(value["hilbert"][2], json!(8));
        assert_eq!(value["D"]["3"], json!([52, 70, 88, 106, 142]));
        assert_eq!(value["C"]["3"], json!([51, 69, 87, 105, 123, 141, 159]));
        assert_eq!(value["first_decrease"], Value::Null);
        assert_eq!(value["abc"][0]["i"], json!(0));
        assert_eq!(value["abc"][0]["omega"], json!(0));
        assert_eq!(value["tangent_cone_cm"], json!(false));
        assert_eq!(value["verdict"]["nondecreasing"], json!(true));
        assert_eq!(value["verdict"]["certificate"], json!("Direct"));
        assert_eq!(value["necessary"]["ed"], json!(4));
    }

    #[test]
    fn hilbert_display_matches_the_worked_example() {
        let s = NumericalSemigroup::new(&[24, 25, 36, 51, 54]).unwrap();
        assert_eq!(
            hilbert_display(&s),
            "1,5,11,16,19,20,21,22,22,22,22,23,24, →"
        );
    }
}
