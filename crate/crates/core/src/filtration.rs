//! The filtration of a semigroup by sums of its maximal ideal.
//!
//! Writing `M` for the nonzero elements, `hM` is the set of sums of `h`
//! elements of `M` (with `0M` the whole semigroup). The order of `s` is the
//! largest `h` with `s` in `hM`, and level `h` is the set of elements of
//! order exactly `h`. The Hilbert function is `H(h) = |hM \ (h+1)M|`; it
//! stabilizes at the multiplicity once `h` reaches the reduction number `r`,
//! the least `h >= 1` with `(h+1)M = g1 + hM`.
//!
//! Two finite subsets drive everything else here. `D_h` collects the
//! elements of order `h - 1` that skip a level when the multiplicity is
//! added (the order jumps past `h + 1`), and `C_h` collects the elements of
//! order `h` that are not reached from level `h - 1` by adding the
//! multiplicity. A level-by-level count gives
//! `H(h-1) - H(h) = |D_h| - |C_h|`, so `H` is non-decreasing exactly when
//! `|D_h| <= |C_h|` for every `2 <= h <= r`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::semigroup::NumericalSemigroup;

/// Tabulated orders for one semigroup, with the Hilbert function and the
/// reduction number. Built once, then read-only.
pub struct LevelTable {
    bound: i64,
    multiplicity: i64,
    ord: Vec<i32>,
    hilbert: Vec<u64>,
    reduction_number: u32,
}

impl LevelTable {
    /// Tabulates orders up to a stabilization bound.
    ///
    /// The bound starts at `(r_guess + 2) * g1 + f + g1` and the guess
    /// doubles until the reduction number is certified on the tabulated
    /// window. Any element above `h * g1 + f` has order at least `h + 1`,
    /// so the window is large enough to see every element of each level up
    /// to the guess, and the ideal-equality check for a level `h` only has
    /// content for elements up to `(h + 1) * g1 + f`.
    pub(crate) fn build(s: &NumericalSemigroup) -> LevelTable {
        let m = s.multiplicity();
        let f = s.frobenius();
        // r <= max(2, f - g1 + 2): past that point every element of high
        // order is either g1 plus a smaller element of the same shape or
        // lies beyond the Frobenius window in its whole residue class.
        let r_cap = (f - m + 2).max(2) as u32;
        // The reduction number is almost always within a step or two of
        // f/g1, so starting there usually avoids a rebuild.
        let mut r_guess: u32 = ((f.max(0) / m) as u32 + 2).min(r_cap);
        loop {
            let bound = (r_guess as i64 + 2) * m + f + m;
            let ord = compute_orders(s, bound);
            if let Some(r) = reduction_number_on_window(&ord, m, f, r_guess) {
                let hilbert = count_levels(&ord, r);
                debug_assert_eq!(*hilbert.last().unwrap(), m as u64);
                return LevelTable {
                    bound,
                    multiplicity: m,
                    ord,
                    hilbert,
                    reduction_number: r,
                };
            }
            assert!(
                r_guess < r_cap,
                "reduction number not found below its proven bound"
            );
            r_guess = (r_guess * 2).min(r_cap);
        }
    }

    /// Largest tabulated element.
    pub fn bound(&self) -> i64 {
        self.bound
    }

    /// Least `r >= 1` with `(r+1)M = g1 + rM`.
    pub fn reduction_number(&self) -> u32 {
        self.reduction_number
    }

    /// `H(0..=r)`; the function stays at the multiplicity from `r` on.
    pub fn hilbert(&self) -> &[u64] {
        &self.hilbert
    }

    /// Order of `s`, or `None` when `s` is not an element. Values beyond the
    /// tabulated bound reduce by multiples of the multiplicity: past the
    /// reduction number, adding the multiplicity raises the order by exactly
    /// one.
    pub fn order_of(&self, s: i64) -> Option<u32> {
        if s < 0 {
            return None;
        }
        if s <= self.bound {
            let o = self.ord[s as usize];
            return (o >= 0).then_some(o as u32);
        }
        let m = self.multiplicity;
        let k = (s - self.bound + m - 1) / m;
        let o = self.ord[(s - k * m) as usize];
        debug_assert!(o > self.reduction_number as i32);
        Some(o as u32 + k as u32)
    }
}

/// Dynamic program for orders: `ord(0) = 0`, and for an element `v > 0`,
/// `ord(v) = 1 + max ord(v - g)` over generators `g` with `v - g` an element.
fn compute_orders(s: &NumericalSemigroup, bound: i64) -> Vec<i32> {
    let mut ord = vec![-1i32; bound as usize + 1];
    ord[0] = 0;
    for v in 1..=bound {
        if !s.contains(v) {
            continue;
        }
        let mut best = -1i32;
        for &g in s.generators() {
            if g > v {
                break;
            }
            let prev = ord[(v - g) as usize];
            if prev >= 0 && prev + 1 > best {
                best = prev + 1;
            }
        }
        debug_assert!(best >= 1, "element {v} has no last summand");
        ord[v as usize] = best;
    }
    ord
}

/// First `h <= r_guess` for which `(h+1)M = g1 + hM` holds, checked on the
/// tabulated window. The equality set is upward closed in `h`, so the first
/// hit is the reduction number. Elements above `(h+1) * g1 + f` satisfy the
/// condition automatically and need no check.
fn reduction_number_on_window(ord: &[i32], m: i64, f: i64, r_guess: u32) -> Option<u32> {
    for h in 1..=r_guess {
        let window = (h as i64 + 1) * m + f;
        debug_assert!(window < ord.len() as i64);
        let ok = (0..=window).all(|v| {
            let o = ord[v as usize];
            if o < h as i32 + 1 {
                return true;
            }
            v >= m && ord[(v - m) as usize] >= h as i32
        });
        if ok {
            return Some(h);
        }
    }
    None
}

fn count_levels(ord: &[i32], r: u32) -> Vec<u64> {
    let mut counts = vec![0u64; r as usize + 1];
    for &o in ord {
        if o >= 0 && (o as u32) <= r {
            counts[o as usize] += 1;
        }
    }
    counts
}

/// The level-skipping sets `D_h` (for `2 <= h <= r`) and the fresh-element
/// sets `C_h` (for `1 <= h <= r`), all sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelSets {
    pub d: BTreeMap<u32, Vec<i64>>,
    pub c: BTreeMap<u32, Vec<i64>>,
}

impl NumericalSemigroup {
    /// The reduction number `r`.
    pub fn reduction_number(&self) -> u32 {
        self.level_table().reduction_number()
    }

    /// The Hilbert function as `(H(0..=r), r)`; `H(h) = g1` for all `h >= r`.
    pub fn hilbert_function(&self) -> (Vec<u64>, u32) {
        let table = self.level_table();
        (table.hilbert().to_vec(), table.reduction_number())
    }

    /// All elements of order exactly `h`, sorted ascending.
    ///
    /// Finite for every `h`: any element above `h * g1 + f` has order at
    /// least `h + 1`. Past the reduction number the levels are translates of
    /// one another by the multiplicity.
    pub fn level_set(&self, h: u32) -> Vec<i64> {
        let table = self.level_table();
        let r = table.reduction_number();
        if h <= r + 1 {
            // Every element of order exactly h lies below h*g1 + f + g1.
            let window = (h as i64 + 1) * self.multiplicity() + self.frobenius();
            debug_assert!(window <= table.bound());
            return (0..=window)
                .filter(|&v| table.ord[v as usize] == h as i32)
                .collect();
        }
        let shift = (h - r - 1) as i64 * self.multiplicity();
        self.level_set(r + 1).iter().map(|v| v + shift).collect()
    }

    /// `D_h`: elements of order `h - 1` whose order jumps past `h + 1` when
    /// the multiplicity is added. Empty above the reduction number.
    pub fn d_set(&self, h: u32) -> Result<Vec<i64>> {
        if h < 2 {
            return Err(Error::InvalidLevel { min: 2, got: h });
        }
        let table = self.level_table();
        if h > table.reduction_number() {
            return Ok(Vec::new());
        }
        let m = self.multiplicity();
        Ok(self
            .level_set(h - 1)
            .into_iter()
            .filter(|&v| table.order_of(v + m).unwrap() > h)
            .collect())
    }

    /// `C_h`: elements of order `h` not of the form `g1` plus an element of
    /// order `h - 1`. Empty above the reduction number.
    pub fn c_set(&self, h: u32) -> Result<Vec<i64>> {
        if h < 1 {
            return Err(Error::InvalidLevel { min: 1, got: h });
        }
        let table = self.level_table();
        if h > table.reduction_number() {
            return Ok(Vec::new());
        }
        let m = self.multiplicity();
        Ok(self
            .level_set(h)
            .into_iter()
            .filter(|&v| v < m || table.ord[(v - m) as usize] != h as i32 - 1)
            .collect())
    }

    /// All `D_h` and `C_h` over their meaningful ranges.
    pub fn level_sets(&self) -> LevelSets {
        let r = self.reduction_number();
        let d = (2..=r).map(|h| (h, self.d_set(h).unwrap())).collect();
        let c = (1..=r).map(|h| (h, self.c_set(h).unwrap())).collect();
        LevelSets { d, c }
    }

    /// Least `h` with `H(h) < H(h-1)`, or `None` when `H` is non-decreasing.
    /// Only `1 <= h <= r` can carry a decrease.
    pub fn first_decrease(&self) -> Option<u32> {
        let hilbert = self.level_table().hilbert();
        (1..hilbert.len()).find(|&h| hilbert[h] < hilbert[h - 1]).map(|h| h as u32)
    }
}
