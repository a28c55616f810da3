//! Per-residue Apéry invariants and the Cohen-Macaulay test for the tangent
//! cone.
//!
//! The blow-up `S'` of `S = <g1, ..., gn>` is the semigroup generated by
//! `g1` together with the differences `gj - g1`. Writing `w_i` for the Apéry
//! elements of `S` and `w'_i` for those of `S'` (both with respect to `g1`),
//! each residue class carries three integers:
//!
//! - `a_i` with `w'_i + a_i * g1 = w_i`,
//! - `b_i = ord(w_i)`,
//! - `c_i`, the least `h` with `w'_i + h * g1` of order at least `h`.
//!
//! They satisfy `1 <= b_i <= a_i <= c_i` for `i != 0`, with `b_i < a_i` iff
//! `a_i < c_i`. The tangent cone of the semigroup ring is Cohen-Macaulay
//! exactly when `a_i = b_i` for every residue, which is also exactly when no
//! element skips a level when the multiplicity is added.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::semigroup::{apery_with_respect_to, NumericalSemigroup};

/// One row of the invariant table, for a single residue class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AbcRow {
    #[serde(rename = "i")]
    pub residue: usize,
    pub omega: i64,
    pub omega_prime: i64,
    pub a: u32,
    pub b: u32,
    pub c: u32,
}

/// The full table, one row per residue class modulo the multiplicity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AperyInvariants {
    rows: Vec<AbcRow>,
}

impl AperyInvariants {
    pub fn rows(&self) -> &[AbcRow] {
        &self.rows
    }

    /// Residues with `a_i > b_i`; nonempty exactly when some element skips a
    /// level.
    pub fn bad_residues(&self) -> Vec<usize> {
        self.rows
            .iter()
            .filter(|r| r.a > r.b)
            .map(|r| r.residue)
            .collect()
    }

    pub fn is_cm(&self) -> bool {
        self.rows.iter().all(|r| r.a == r.b)
    }
}

/// The blow-up of `S`: the semigroup generated by the multiplicity and the
/// differences of the other generators from it, reduced to minimal
/// generators. Always contains `S`.
pub fn blowup(s: &NumericalSemigroup) -> NumericalSemigroup {
    NumericalSemigroup::new(&raw_blowup_generators(s))
        .expect("blow-up of a valid semigroup is valid")
}

/// Generating set of the blow-up before reduction. Shortest paths do not
/// care about redundant generators, so the Apéry set of the blow-up can be
/// computed from this set directly.
fn raw_blowup_generators(s: &NumericalSemigroup) -> Vec<i64> {
    let g1 = s.multiplicity();
    let mut gens: Vec<i64> = vec![g1];
    gens.extend(s.generators()[1..].iter().map(|&g| g - g1));
    gens
}

/// Computes the invariant table for every residue class.
///
/// `w'_i` comes from the blow-up's Apéry set with respect to the original
/// multiplicity, `a_i = (w_i - w'_i) / g1`, `b_i = ord(w_i)`, and `c_i` by an
/// ascending scan of `ord(w'_i + h * g1) >= h`; the scanned predicate is
/// monotone in `h` since adding `g1` adds one summand.
pub fn abc_table(s: &NumericalSemigroup) -> Result<AperyInvariants> {
    let g1 = s.multiplicity();
    let omega_prime = apery_with_respect_to(&raw_blowup_generators(s), g1)?;
    let table = s.level_table();
    let r = table.reduction_number();

    let mut rows = Vec::with_capacity(g1 as usize);
    for (i, (&omega, &prime)) in s.apery_set().iter().zip(&omega_prime).enumerate() {
        let diff = omega - prime;
        if diff < 0 || diff % g1 != 0 {
            return Err(Error::Internal(format!(
                "blow-up Apéry element {prime} does not sit below {omega} in residue {i}"
            )));
        }
        let a = (diff / g1) as u32;
        let b = table
            .order_of(omega)
            .ok_or_else(|| Error::Internal(format!("Apéry element {omega} not a member")))?;

        // Ascending scan for c_i, with a hard cap well past the point where
        // the predicate must have become true.
        let cap = a + r + g1 as u32 + 2;
        let mut c = None;
        for h in 0..=cap {
            if table.order_of(prime + h as i64 * g1).is_some_and(|o| o >= h) {
                c = Some(h);
                break;
            }
        }
        let c = c.ok_or_else(|| {
            Error::Internal(format!("c-scan for residue {i} exceeded its cap {cap}"))
        })?;

        if i == 0 {
            if (omega, prime, a, b, c) != (0, 0, 0, 0, 0) {
                return Err(Error::Internal("residue 0 row must be all zero".into()));
            }
        } else if !(1 <= b && b <= a && a <= c && ((b < a) == (a < c))) {
            return Err(Error::Internal(format!(
                "invariant chain violated at residue {i}: a={a} b={b} c={c}"
            )));
        }

        rows.push(AbcRow {
            residue: i,
            omega,
            omega_prime: prime,
            a,
            b,
            c,
        });
    }
    Ok(AperyInvariants { rows })
}

/// True iff `a_i = b_i` for every residue, i.e. the tangent cone of the
/// semigroup ring is Cohen-Macaulay. Coincides with all level-skipping sets
/// `D_h` being empty.
pub fn tangent_cone_is_cm(s: &NumericalSemigroup) -> Result<bool> {
    let cm = abc_table(s)?.is_cm();
    debug_assert_eq!(
        cm,
        (2..=s.reduction_number()).all(|h| s.d_set(h).unwrap().is_empty()),
        "CM test disagrees with emptiness of the skip sets for {s}"
    );
    Ok(cm)
}

/// A level-skipping element in the given residue class, when one exists.
///
/// If `a_i > b_i`, some `s = w_i + k * g1` with `0 <= k <= c_i - a_i - 1`
/// skips a level; the scan returns the first. If `a_i = b_i` there is none.
pub fn skip_witness(s: &NumericalSemigroup, residue: usize) -> Result<Option<i64>> {
    let g1 = s.multiplicity();
    if residue >= g1 as usize {
        return Err(Error::InvalidResidue {
            residue,
            multiplicity: g1,
        });
    }
    let table = abc_table(s)?;
    let row = table.rows()[residue];
    if row.a == row.b {
        return Ok(None);
    }
    let orders = s.level_table();
    for k in 0..=(row.c - row.a - 1) as i64 {
        let cand = row.omega + k * g1;
        let ord = orders
            .order_of(cand)
            .ok_or_else(|| Error::Internal(format!("{cand} should be a member")))?;
        if orders.order_of(cand + g1).unwrap() > ord + 1 {
            return Ok(Some(cand));
        }
    }
    Err(Error::Internal(format!(
        "residue {residue} has a > b but no skip witness in the scan range"
    )))
}
