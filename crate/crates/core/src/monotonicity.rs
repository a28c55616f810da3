//! Certificates for monotonicity of the Hilbert function.
//!
//! Cheap criteria run before direct computation:
//!
//! 1. `CMTangentCone`: all `a_i = b_i`, so nothing skips a level and the
//!    Hilbert function is non-decreasing.
//! 2. `AperyBound`: at most 3 residues with `a_i > b_i`; each level-skipping
//!    set then has at most 3 elements, within the bound that guarantees the
//!    injection.
//! 3. `DhBound`: `|D_h| <= h + 1` for every `2 <= h <= r` (the sets vanish
//!    above the reduction number, so the finite range decides).
//! 4. `Direct`: compare consecutive Hilbert values.
//!
//! The necessary-condition report runs the reverse direction: a decreasing
//! Hilbert function forces at least three Apéry elements of order 2, a
//! chain of `|C_h| >= h + 1`, and, for a decrease at level 2, embedding
//! dimension above 5.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::Result;
use crate::invariants::{abc_table, AperyInvariants};
use crate::semigroup::NumericalSemigroup;

/// Which criterion decided the verdict; listed in evaluation order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Certificate {
    #[serde(rename = "CMTangentCone")]
    CmTangentCone,
    AperyBound,
    DhBound,
    Direct,
}

/// Evidence backing a verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Evidence {
    CmTangentCone,
    AperyBound {
        bad_apery_count: usize,
        bad_residues: Vec<usize>,
    },
    DhBound {
        d_sizes: BTreeMap<u32, usize>,
    },
    Direct {
        hilbert: Vec<u64>,
        r: u32,
    },
}

/// Outcome of [`certify`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub nondecreasing: bool,
    pub certificate: Certificate,
    pub first_decrease: Option<u32>,
    pub evidence: Evidence,
}

/// Decides whether the Hilbert function is non-decreasing, reporting the
/// first criterion that fires. A decrease is always reported through
/// `Direct`, with the level of the first drop.
pub fn certify(s: &NumericalSemigroup) -> Result<Verdict> {
    certify_with(s, &abc_table(s)?)
}

/// [`certify`] with an already computed invariant table.
pub fn certify_with(s: &NumericalSemigroup, table: &AperyInvariants) -> Result<Verdict> {
    if table.is_cm() {
        return Ok(Verdict {
            nondecreasing: true,
            certificate: Certificate::CmTangentCone,
            first_decrease: None,
            evidence: Evidence::CmTangentCone,
        });
    }

    let bad = table.bad_residues();
    if bad.len() <= 3 {
        return Ok(Verdict {
            nondecreasing: true,
            certificate: Certificate::AperyBound,
            first_decrease: None,
            evidence: Evidence::AperyBound {
                bad_apery_count: bad.len(),
                bad_residues: bad,
            },
        });
    }

    let r = s.reduction_number();
    let d_sizes: BTreeMap<u32, usize> = (2..=r)
        .map(|h| (h, s.d_set(h).unwrap().len()))
        .collect();
    if d_sizes.iter().all(|(&h, &len)| len <= h as usize + 1) {
        return Ok(Verdict {
            nondecreasing: true,
            certificate: Certificate::DhBound,
            first_decrease: None,
            evidence: Evidence::DhBound { d_sizes },
        });
    }

    let (hilbert, r) = s.hilbert_function();
    let first_decrease = s.first_decrease();
    Ok(Verdict {
        nondecreasing: first_decrease.is_none(),
        certificate: Certificate::Direct,
        first_decrease,
        evidence: Evidence::Direct { hilbert, r },
    })
}

/// Fast necessary-condition diagnostics for a decreasing Hilbert function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct NecessaryReport {
    /// Number of Apéry elements of order 2; equals `|C_2|`. Below 3 the
    /// Hilbert function is non-decreasing.
    pub c2_count: usize,
    /// Largest `j` with `|C_h| >= h + 1` for all `2 <= h <= j` (1 when even
    /// level 2 fails). A decrease at level `h` forces the chain up to `h`.
    pub c_chain_ok: u32,
    /// Embedding dimension; a decrease at level 2 forces it above 5.
    pub ed: usize,
    /// Embedding dimension 4 or 5 with multiplicity at most 8; always
    /// non-decreasing.
    pub ed45_small_mult: bool,
}

/// Computes the necessary-condition diagnostics.
pub fn necessary_report(s: &NumericalSemigroup) -> Result<NecessaryReport> {
    necessary_report_with(s, &abc_table(s)?)
}

/// [`necessary_report`] with an already computed invariant table.
pub fn necessary_report_with(
    s: &NumericalSemigroup,
    table: &AperyInvariants,
) -> Result<NecessaryReport> {
    let c2_count = table.rows().iter().filter(|r| r.b == 2).count();
    debug_assert_eq!(c2_count, s.c_set(2).map(|c| c.len()).unwrap_or(c2_count));

    let r = s.reduction_number();
    let mut c_chain_ok = 1u32;
    for h in 2..=r {
        if s.c_set(h).unwrap().len() > h as usize {
            c_chain_ok = h;
        } else {
            break;
        }
    }

    let ed = s.embedding_dimension();
    Ok(NecessaryReport {
        c2_count,
        c_chain_ok,
        ed,
        ed45_small_mult: (ed == 4 || ed == 5) && s.multiplicity() <= 8,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn semigroup(gens: &[i64]) -> NumericalSemigroup {
        NumericalSemigroup::new(gens).unwrap()
    }

    #[test]
    fn dh_bound_certifies_the_five_generator_example() {
        let s = semigroup(&[24, 25, 36, 51, 54]);
        let v = certify(&s).unwrap();
        assert!(v.nondecreasing);
        assert_eq!(v.certificate, Certificate::DhBound);
        let Evidence::DhBound { d_sizes } = &v.evidence else {
            panic!("expected DhBound evidence");
        };
        assert_eq!(d_sizes[&2], 1);
        assert_eq!(d_sizes[&3], 3);
        assert_eq!(d_sizes[&4], 4);
        assert_eq!(d_sizes[&5], 4);
        assert!(d_sizes.iter().filter(|(&h, _)| h >= 6).all(|(_, &n)| n <= 3));
    }

    #[test]
    fn direct_certifies_the_four_generator_example() {
        let s = semigroup(&[16, 17, 35, 71]);
        let v = certify(&s).unwrap();
        assert!(v.nondecreasing);
        assert_eq!(v.certificate, Certificate::Direct);
        assert_eq!(s.d_set(3).unwrap().len(), 5);
    }

    #[test]
    fn decreasing_example_is_detected() {
        let s = semigroup(&[13, 19, 24, 44, 49, 54, 55, 59, 60, 66]);
        let v = certify(&s).unwrap();
        assert!(!v.nondecreasing);
        assert_eq!(v.certificate, Certificate::Direct);
        assert_eq!(v.first_decrease, Some(2));
    }

    #[test]
    fn cm_certificate_fires_first() {
        let v = certify(&semigroup(&[3, 5])).unwrap();
        assert_eq!(v.certificate, Certificate::CmTangentCone);
        assert!(v.nondecreasing);
    }

    #[test]
    fn necessary_report_examples() {
        let s = semigroup(&[24, 25, 36, 51, 54]);
        let report = necessary_report(&s).unwrap();
        assert_eq!(report.c2_count, s.c_set(2).unwrap().len());
        assert_eq!(report.c2_count, 7);
        // The condition is necessary, not sufficient: this one is
        // non-decreasing anyway.
        assert!(certify(&s).unwrap().nondecreasing);

        let s = semigroup(&[13, 19, 24, 44, 49, 54, 55, 59, 60, 66]);
        let report = necessary_report(&s).unwrap();
        assert!(report.c2_count >= 3);
        assert_eq!(report.ed, 10);
        assert!(report.c_chain_ok >= 2);

        let s = semigroup(&[2, 3]);
        let report = necessary_report(&s).unwrap();
        assert_eq!(report.c2_count, 0);
    }

    #[test]
    fn verdict_serializes_with_spelled_out_certificates() {
        let v = certify(&semigroup(&[3, 5])).unwrap();
        let json = serde_json::to_value(&v).unwrap();
        assert_eq!(json["certificate"], "CMTangentCone");
        assert_eq!(json["evidence"]["kind"], "cm_tangent_cone");
    }
}
