//! Golden fixtures for the worked examples, and their replay runner.
//!
//! The default fixture set is compiled in; `--fixtures` loads a JSON file of
//! the same shape instead, and `--only` restricts the run to one semigroup.

use std::collections::BTreeMap;

use serde::Deserialize;

use nsg::invariants::{abc_table, skip_witness, tangent_cone_is_cm};
use nsg::{
    build_injection, certify, lex_greatest_maximal_rep, maximal_representations, psi_map,
    NumericalSemigroup,
};

pub const DEFAULT_FIXTURES: &str = include_str!("../fixtures/paper.json");

#[derive(Debug, Deserialize)]
pub struct Fixture {
    pub name: String,
    pub gens: Vec<i64>,
    #[serde(flatten)]
    pub check: Check,
}

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Check {
    /// The full Hilbert values `H(0..=r)`.
    Hilbert { expect: Vec<u64> },
    HilbertValue { h: usize, expect: u64 },
    DSet { h: u32, expect: Vec<i64> },
    CSet { h: u32, expect: Vec<i64> },
    CSize { h: u32, expect: usize },
    /// `|D_h|` for listed levels, and a cap for every later level up to `r`.
    /// Keys are levels; JSON object keys arrive as strings.
    DSizes {
        expect: BTreeMap<String, usize>,
        tail_cap: Option<usize>,
    },
    /// `H(h) - H(h-1)`.
    LevelDiff { h: usize, expect: i64 },
    FirstDecrease { expect: Option<u32> },
    Multiplicity { expect: i64 },
    MinimalGens { expect: Vec<i64> },
    Order { s: i64, expect: u32 },
    NotMember { s: i64 },
    MaxRepsExactly { s: i64, expect: Vec<Vec<u32>> },
    MaxRepsContain { s: i64, rep: Vec<u32> },
    LexGreatest { s: i64, expect: Vec<u32> },
    Psi { h: u32, map: BTreeMap<String, i64> },
    InjectionSuccess {
        h: u32,
        assignment: BTreeMap<String, i64>,
        redefinitions: Vec<(u32, i64)>,
        blocks: u32,
    },
    InjectionFailure {
        h: u32,
        redefinitions: Vec<(u32, i64)>,
        tie: (i64, i64),
        tie_value: i64,
    },
    Cm { expect: bool },
    Certificate { expect: String },
    SkipWitness { residue: usize, expect: Option<i64> },
    BadResidueExists,
}

/// JSON object keys are strings; fixture maps use numeric keys.
fn parse_keys<K, V>(map: &BTreeMap<String, V>) -> Result<BTreeMap<K, V>, String>
where
    K: std::str::FromStr + Ord,
    K::Err: std::fmt::Display,
    V: Copy,
{
    map.iter()
        .map(|(k, &v)| {
            k.parse::<K>()
                .map(|key| (key, v))
                .map_err(|e| format!("bad fixture key {k}: {e}"))
        })
        .collect()
}

fn mismatch<T: std::fmt::Debug>(what: &str, expected: &T, got: &T) -> Result<(), String> {
    Err(format!("{what}: expected {expected:?}, got {got:?}"))
}

fn check_eq<T: PartialEq + std::fmt::Debug>(what: &str, expected: T, got: T) -> Result<(), String> {
    if expected == got {
        Ok(())
    } else {
        mismatch(what, &expected, &got)
    }
}

impl Fixture {
    pub fn run(&self) -> Result<(), String> {
        let s = NumericalSemigroup::new(&self.gens).map_err(|e| e.to_string())?;
        let fail = |e: nsg::Error| e.to_string();
        match &self.check {
            Check::Hilbert { expect } => {
                let (h, _) = s.hilbert_function();
                check_eq("hilbert", expect.clone(), h)
            }
            Check::HilbertValue { h, expect } => {
                let (values, _) = s.hilbert_function();
                check_eq("hilbert value", *expect, values[*h])
            }
            Check::DSet { h, expect } => {
                check_eq("D set", expect.clone(), s.d_set(*h).map_err(fail)?)
            }
            Check::CSet { h, expect } => {
                check_eq("C set", expect.clone(), s.c_set(*h).map_err(fail)?)
            }
            Check::CSize { h, expect } => {
                check_eq("C size", *expect, s.c_set(*h).map_err(fail)?.len())
            }
            Check::DSizes { expect, tail_cap } => {
                let r = s.reduction_number();
                let levels = parse_keys(expect)?;
                for (h, want) in &levels {
                    let got = s.d_set(*h).map_err(fail)?.len();
                    check_eq(&format!("|D_{h}|"), *want, got)?;
                }
                if let Some(cap) = tail_cap {
                    let from = levels.keys().max().copied().unwrap_or(1) + 1;
                    for h in from..=r {
                        let got = s.d_set(h).map_err(fail)?.len();
                        if got > *cap {
                            return Err(format!("|D_{h}| = {got} exceeds the cap {cap}"));
                        }
                    }
                }
                Ok(())
            }
            Check::LevelDiff { h, expect } => {
                let (values, _) = s.hilbert_function();
                let got = values[*h] as i64 - values[*h - 1] as i64;
                check_eq("level difference", *expect, got)
            }
            Check::FirstDecrease { expect } => {
                check_eq("first decrease", *expect, s.first_decrease())
            }
            Check::Multiplicity { expect } => check_eq("multiplicity", *expect, s.multiplicity()),
            Check::MinimalGens { expect } => {
                check_eq("minimal generators", expect.as_slice(), s.generators())
            }
            Check::Order { s: v, expect } => {
                check_eq("order", *expect, s.order(*v).map_err(fail)?)
            }
            Check::NotMember { s: v } => {
                if s.contains(*v) {
                    Err(format!("{v} unexpectedly belongs to the semigroup"))
                } else {
                    Ok(())
                }
            }
            Check::MaxRepsExactly { s: v, expect } => {
                let got: Vec<Vec<u32>> = maximal_representations(&s, *v)
                    .map_err(fail)?
                    .iter()
                    .map(|r| r.coeffs().to_vec())
                    .collect();
                check_eq("maximal representations", expect.clone(), got)
            }
            Check::MaxRepsContain { s: v, rep } => {
                let got: Vec<Vec<u32>> = maximal_representations(&s, *v)
                    .map_err(fail)?
                    .iter()
                    .map(|r| r.coeffs().to_vec())
                    .collect();
                if got.contains(rep) {
                    Ok(())
                } else {
                    Err(format!("representations {got:?} do not contain {rep:?}"))
                }
            }
            Check::LexGreatest { s: v, expect } => {
                let got = lex_greatest_maximal_rep(&s, *v).map_err(fail)?;
                check_eq("lex-greatest representation", expect.as_slice(), got.coeffs())
            }
            Check::Psi { h, map } => {
                for (pre, want) in parse_keys(map)? {
                    let got = psi_map(&s, *h, pre).map_err(fail)?;
                    check_eq(&format!("ψ({pre})"), want, got)?;
                }
                Ok(())
            }
            Check::InjectionSuccess {
                h,
                assignment,
                redefinitions,
                blocks,
            } => {
                let result = build_injection(&s, *h).map_err(fail)?;
                if !result.success {
                    return Err("expected success, procedure failed".into());
                }
                let want: Vec<(i64, i64)> = parse_keys(assignment)?.into_iter().collect();
                check_eq("assignment", want, result.assignment.clone())?;
                let steps: Vec<(u32, i64)> = result
                    .trace
                    .iter()
                    .map(|t| (t.redefinition, t.pre))
                    .collect();
                check_eq("redefinition sequence", redefinitions.clone(), steps)?;
                let got_blocks = result.trace.last().map_or(0, |t| t.block);
                check_eq("blocks", *blocks, got_blocks)
            }
            Check::InjectionFailure {
                h,
                redefinitions,
                tie,
                tie_value,
            } => {
                let result = build_injection(&s, *h).map_err(fail)?;
                if result.success {
                    return Err("expected failure, procedure succeeded".into());
                }
                let steps: Vec<(u32, i64)> = result
                    .trace
                    .iter()
                    .map(|t| (t.redefinition, t.pre))
                    .collect();
                check_eq("redefinition sequence", redefinitions.clone(), steps)?;
                let f = result.failure.as_ref().expect("failure point");
                check_eq("tie", *tie, (f.pre_u, f.pre_v))?;
                check_eq("tied value", *tie_value, f.tied_value)?;
                check_eq(
                    "redefinitions before the tie",
                    redefinitions.len() as u32,
                    f.redefinitions_done,
                )
            }
            Check::Cm { expect } => {
                check_eq("tangent cone CM", *expect, tangent_cone_is_cm(&s).map_err(fail)?)
            }
            Check::Certificate { expect } => {
                let verdict = certify(&s).map_err(fail)?;
                let got = serde_json::to_value(verdict.certificate)
                    .unwrap()
                    .as_str()
                    .unwrap()
                    .to_string();
                check_eq("certificate", expect.clone(), got)
            }
            Check::SkipWitness { residue, expect } => {
                check_eq(
                    "skip witness",
                    *expect,
                    skip_witness(&s, *residue).map_err(fail)?,
                )
            }
            Check::BadResidueExists => {
                let table = abc_table(&s).map_err(fail)?;
                if table.bad_residues().is_empty() {
                    Err("no residue with a_i > b_i".into())
                } else {
                    Ok(())
                }
            }
        }
    }
}

pub fn load(json: &str) -> Result<Vec<Fixture>, String> {
    serde_json::from_str(json).map_err(|e| format!("fixture file: {e}"))
}

/// Replays fixtures, printing one PASS/FAIL line each; returns the failure
/// count.
pub fn run_all(fixtures: &[Fixture], only: Option<&str>, out: &mut impl std::io::Write) -> usize {
    let gens_key = |gens: &[i64]| {
        gens.iter()
            .map(|g| g.to_string())
            .collect::<Vec<_>>()
            .join(",")
    };
    let mut failures = 0;
    let mut ran = 0;
    for fixture in fixtures {
        if let Some(filter) = only {
            if gens_key(&fixture.gens) != filter {
                continue;
            }
        }
        ran += 1;
        match fixture.run() {
            Ok(()) => writeln!(out, "PASS {}", fixture.name).unwrap(),
            Err(diff) => {
                failures += 1;
                writeln!(out, "FAIL {}: {}", fixture.name, diff).unwrap();
            }
        }
    }
    writeln!(out, "{} fixtures, {} failed", ran, failures).unwrap();
    failures
}
