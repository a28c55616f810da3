//! Brute-force reference implementations of numerical semigroup invariants.
//!
//! Everything in this crate is deliberately naive: membership is a plain
//! dynamic-programming sieve over `0..=limit`, orders are maximized by the
//! textbook recurrence, Apéry sets are found by scanning residue classes, and
//! nothing is shared with the optimized implementations in `nsg`. The test
//! suites use these functions as independent oracles, so keep them simple and
//! obviously correct rather than fast.

/// Membership sieve: `out[v]` is true iff `v` is an N-combination of `gens`.
pub fn members_up_to(gens: &[i64], limit: i64) -> Vec<bool> {
    assert!(limit >= 0);
    let mut member = vec![false; limit as usize + 1];
    member[0] = true;
    for v in 1..=limit as usize {
        member[v] = gens
            .iter()
            .any(|&g| g > 0 && g as usize <= v && member[v - g as usize]);
    }
    member
}

/// Membership of a single value.
pub fn is_member(gens: &[i64], s: i64) -> bool {
    if s < 0 {
        return false;
    }
    *members_up_to(gens, s).last().unwrap()
}

/// Largest integer not representable, or -1 when every non-negative integer is.
///
/// Requires `gcd(gens) == 1`. Scans up to `min * max`, which is past the
/// classical two-generator bound, then takes the last gap.
pub fn frobenius(gens: &[i64]) -> i64 {
    let lo = *gens.iter().min().unwrap();
    let hi = *gens.iter().max().unwrap();
    if lo == 1 {
        return -1;
    }
    let limit = lo * hi;
    let member = members_up_to(gens, limit);
    (0..=limit).rev().find(|&v| !member[v as usize]).unwrap_or(-1)
}

/// Apéry set with respect to the smallest generator: for each residue class
/// `i` modulo `min(gens)`, the least representable value congruent to `i`.
pub fn apery(gens: &[i64]) -> Vec<i64> {
    let m = *gens.iter().min().unwrap();
    let f = frobenius(gens);
    let limit = f + m + 1;
    let member = members_up_to(gens, limit.max(0));
    let mut out = vec![-1i64; m as usize];
    for v in 0..=limit.max(0) {
        let r = (v % m) as usize;
        if out[r] < 0 && member[v as usize] {
            out[r] = v;
        }
    }
    assert!(out.iter().all(|&w| w >= 0), "apery scan window too small");
    out
}

/// Orders by the textbook recurrence: `ord(0) = 0` and
/// `ord(v) = 1 + max ord(v - g)` over generators `g` with `v - g` representable.
/// Non-members get -1.
pub fn orders_up_to(gens: &[i64], limit: i64) -> Vec<i64> {
    assert!(limit >= 0);
    let mut ord = vec![-1i64; limit as usize + 1];
    ord[0] = 0;
    for v in 1..=limit as usize {
        let mut best = -1i64;
        for &g in gens {
            if g > 0 && g as usize <= v && ord[v - g as usize] >= 0 {
                best = best.max(ord[v - g as usize] + 1);
            }
        }
        ord[v] = best;
    }
    ord
}

/// Order of one element by exhaustive enumeration of coefficient vectors.
///
/// Exponential; only for very small inputs, as a cross-check of
/// [`orders_up_to`] itself.
pub fn order_by_enumeration(gens: &[i64], s: i64) -> Option<i64> {
    fn go(gens: &[i64], rest: i64, weight: i64, best: &mut i64) {
        if rest == 0 {
            *best = (*best).max(weight);
            return;
        }
        let Some((&g, tail)) = gens.split_first() else {
            return;
        };
        let mut used = 0;
        let mut left = rest;
        loop {
            go(tail, left, weight + used, best);
            if left < g {
                break;
            }
            left -= g;
            used += 1;
        }
    }
    let mut best = -1i64;
    go(gens, s, 0, &mut best);
    (best >= 0).then_some(best)
}

/// All representable values of order exactly `h` (finite because any value
/// above `h * min + frobenius` has order greater than `h`).
pub fn level_set(gens: &[i64], h: i64) -> Vec<i64> {
    let m = *gens.iter().min().unwrap();
    let f = frobenius(gens);
    let limit = (h + 1) * m + f.max(0) + m;
    let ord = orders_up_to(gens, limit);
    (0..=limit).filter(|&v| ord[v as usize] == h).collect()
}

/// Elements of order `h - 1` whose order jumps past `h + 1` when the
/// multiplicity is added.
pub fn d_set(gens: &[i64], h: i64) -> Vec<i64> {
    let m = *gens.iter().min().unwrap();
    let f = frobenius(gens);
    let limit = (h + 1) * m + f.max(0) + m;
    let ord = orders_up_to(gens, limit);
    (0..=limit - m)
        .filter(|&v| ord[v as usize] == h - 1 && ord[(v + m) as usize] > h)
        .collect()
}

/// Elements of order `h` that are not `m` plus an element of order `h - 1`.
pub fn c_set(gens: &[i64], h: i64) -> Vec<i64> {
    let m = *gens.iter().min().unwrap();
    let f = frobenius(gens);
    let limit = (h + 1) * m + f.max(0) + m;
    let ord = orders_up_to(gens, limit);
    (0..=limit)
        .filter(|&v| {
            ord[v as usize] == h && (v < m || ord[(v - m) as usize] != h - 1)
        })
        .collect()
}

/// The first `hmax + 1` values of the Hilbert function, `H(0..=hmax)`.
pub fn hilbert_prefix(gens: &[i64], hmax: i64) -> Vec<u64> {
    (0..=hmax).map(|h| level_set(gens, h).len() as u64).collect()
}

/// Minimal generators of the semigroup generated by `vals`: the nonzero
/// members that are not a sum of two nonzero members.
pub fn minimal_generators(vals: &[i64]) -> Vec<i64> {
    let hi = *vals.iter().max().unwrap();
    let member = members_up_to(vals, hi);
    let members: Vec<i64> = (1..=hi).filter(|&v| member[v as usize]).collect();
    members
        .iter()
        .copied()
        .filter(|&g| {
            !members
                .iter()
                .take_while(|&&a| a <= g / 2)
                .any(|&a| member[(g - a) as usize])
        })
        .collect()
}

/// Symmetry check straight from the definition: for every `0 <= z <= f`,
/// exactly one of `z` and `f - z` is representable.
pub fn is_symmetric(gens: &[i64]) -> bool {
    let f = frobenius(gens);
    if f < 0 {
        return true;
    }
    let member = members_up_to(gens, f);
    (0..=f).all(|z| member[z as usize] != member[(f - z) as usize])
}

/// Deterministic pseudo-random generator sets (splitmix64 underneath), for
/// reproducible randomized sweeps. Each returned list is non-empty, has gcd
/// 1, and smallest value between 2 and `max_mult`.
pub fn random_generator_sets(seed: u64, count: usize, max_mult: u64) -> Vec<Vec<i64>> {
    let mut state = seed;
    let mut next = move || {
        state = state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    };
    let gcd = |a: i64, b: i64| {
        let (mut a, mut b) = (a, b);
        while b != 0 {
            (a, b) = (b, a % b);
        }
        a
    };
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let m = 2 + (next() % (max_mult - 1)) as i64;
        let extras = 1 + (next() % 5) as usize;
        let mut vals = vec![m];
        for _ in 0..extras {
            vals.push(m + 1 + (next() % (3 * m as u64)) as i64);
        }
        if vals.iter().copied().fold(0, gcd) == 1 {
            out.push(vals);
        }
    }
    out
}
