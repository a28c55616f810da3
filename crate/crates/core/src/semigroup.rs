//! Construction and basic arithmetic of numerical semigroups.
//!
//! A numerical semigroup is an additive subsemigroup of the natural numbers
//! containing 0 with finite complement. It is determined by its unique minimal
//! system of generators `g1 < g2 < ... < gn` with `gcd = 1`; `g1` is the
//! multiplicity. Membership and the Frobenius number are answered in O(1)
//! from the Apéry set, the list of smallest elements in each residue class
//! modulo `g1`.

use std::fmt;
use std::sync::OnceLock;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::filtration::LevelTable;

/// Elements are tabulated up to a bound derived from the Frobenius number;
/// construction rejects generator sets whose worst-case table would exceed
/// this many entries.
const TABLE_ENTRY_CAP: i128 = 30_000_000;

/// Upper bound on the multiplicity, so Apéry-sized allocations stay small.
const MULTIPLICITY_CAP: i64 = 4_000_000;

/// A numerical semigroup, immutable after construction.
///
/// The order table is built lazily on first use and cached; a published
/// semigroup is safe to share across threads.
pub struct NumericalSemigroup {
    gens: Vec<i64>,
    multiplicity: i64,
    apery: Vec<i64>,
    frobenius: i64,
    level: OnceLock<LevelTable>,
}

impl NumericalSemigroup {
    /// Builds the semigroup generated by `raw`.
    ///
    /// The input is sorted, deduplicated, and reduced to the unique minimal
    /// generator system; the Apéry set and Frobenius number are precomputed.
    /// Rejects empty input, non-positive values, and `gcd != 1`.
    pub fn new(raw: &[i64]) -> Result<Self> {
        let gens = minimal_generator_system(raw)?;
        Self::from_minimal(gens)
    }

    /// Builds from generators already known to be a minimal system.
    ///
    /// The enumerator produces such tuples by construction; skipping the
    /// reduction pass matters when constructing millions of candidates.
    pub(crate) fn from_minimal(gens: Vec<i64>) -> Result<Self> {
        debug_assert!(!gens.is_empty() && gens.windows(2).all(|w| w[0] < w[1]));
        let multiplicity = gens[0];
        if multiplicity > MULTIPLICITY_CAP {
            return Err(Error::TooLarge(format!(
                "multiplicity {multiplicity} exceeds the supported cap {MULTIPLICITY_CAP}"
            )));
        }
        let apery = apery_with_respect_to(&gens, multiplicity)?;
        let frobenius = apery.iter().copied().max().unwrap() - multiplicity;

        // Worst-case tabulation bound; the actual bound is usually far
        // smaller, but rejecting here keeps every later table build
        // infallible.
        let reduction_cap = (frobenius - multiplicity + 2).max(2) as i128;
        let worst = (reduction_cap + 3) * multiplicity as i128
            + frobenius as i128
            + multiplicity as i128;
        if worst > TABLE_ENTRY_CAP {
            return Err(Error::TooLarge(format!(
                "order table could need {worst} entries (cap {TABLE_ENTRY_CAP})"
            )));
        }

        Ok(Self {
            gens,
            multiplicity,
            apery,
            frobenius,
            level: OnceLock::new(),
        })
    }

    /// The minimal generators, sorted ascending.
    pub fn generators(&self) -> &[i64] {
        &self.gens
    }

    /// The smallest nonzero element.
    pub fn multiplicity(&self) -> i64 {
        self.multiplicity
    }

    /// Number of minimal generators.
    pub fn embedding_dimension(&self) -> usize {
        self.gens.len()
    }

    /// The Apéry set with respect to the multiplicity, indexed by residue:
    /// `apery()[i]` is the least element congruent to `i`.
    pub fn apery_set(&self) -> &[i64] {
        &self.apery
    }

    /// Largest integer not in the semigroup; -1 when the semigroup is all of N.
    pub fn frobenius(&self) -> i64 {
        self.frobenius
    }

    /// Membership test via the Apéry set.
    pub fn contains(&self, s: i64) -> bool {
        s >= 0 && s >= self.apery[(s % self.multiplicity) as usize]
    }

    /// The order of `s`: the largest `h` such that `s` is a sum of `h`
    /// nonzero elements, with `order(0) = 0`. Errors when `s` is not an
    /// element.
    pub fn order(&self, s: i64) -> Result<u32> {
        self.level_table().order_of(s).ok_or(Error::NotAMember(s))
    }

    /// True iff for every integer `0 <= z <= frobenius`, exactly one of `z`
    /// and `frobenius - z` is an element.
    pub fn is_symmetric(&self) -> bool {
        (0..=self.frobenius).all(|z| self.contains(z) != self.contains(self.frobenius - z))
    }

    /// The comma-joined minimal generator list, the canonical textual key.
    pub fn canonical_key(&self) -> String {
        let parts: Vec<String> = self.gens.iter().map(|g| g.to_string()).collect();
        parts.join(",")
    }

    /// The cached order table, built on first use.
    pub fn level_table(&self) -> &LevelTable {
        self.level.get_or_init(|| LevelTable::build(self))
    }
}

impl Clone for NumericalSemigroup {
    fn clone(&self) -> Self {
        Self {
            gens: self.gens.clone(),
            multiplicity: self.multiplicity,
            apery: self.apery.clone(),
            frobenius: self.frobenius,
            level: OnceLock::new(),
        }
    }
}

impl PartialEq for NumericalSemigroup {
    fn eq(&self, other: &Self) -> bool {
        self.gens == other.gens
    }
}

impl Eq for NumericalSemigroup {}

impl PartialOrd for NumericalSemigroup {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for NumericalSemigroup {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.gens.cmp(&other.gens)
    }
}

impl std::hash::Hash for NumericalSemigroup {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.gens.hash(state);
    }
}

impl fmt::Debug for NumericalSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NumericalSemigroup{}", self)
    }
}

impl fmt::Display for NumericalSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨{}⟩", self.canonical_key())
    }
}

impl Serialize for NumericalSemigroup {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.gens.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for NumericalSemigroup {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<i64>::deserialize(deserializer)?;
        NumericalSemigroup::new(&raw).map_err(D::Error::custom)
    }
}

/// Reduces `raw` to the unique minimal generator system of the semigroup it
/// generates: sorted, deduplicated, and with every value representable by
/// the others dropped.
pub fn minimal_generator_system(raw: &[i64]) -> Result<Vec<i64>> {
    if raw.is_empty() {
        return Err(Error::EmptyGenerators);
    }
    if let Some(&bad) = raw.iter().find(|&&v| v < 1) {
        return Err(Error::NonPositiveGenerator(bad));
    }
    let mut gens: Vec<i64> = raw.to_vec();
    gens.sort_unstable();
    gens.dedup();

    let g = gens.iter().copied().fold(0, gcd);
    if g != 1 {
        return Err(Error::NotCoprime(g));
    }

    // Dropping a representable value never changes the generated semigroup,
    // so repeated single drops converge to the unique minimal system.
    'outer: loop {
        for idx in (0..gens.len()).rev() {
            if gens.len() == 1 {
                break 'outer;
            }
            let target = gens[idx];
            let mut others = gens.clone();
            others.remove(idx);
            if is_representable(target, &others)? {
                gens.remove(idx);
                continue 'outer;
            }
        }
        break;
    }
    Ok(gens)
}

/// Whether `value` is an N-combination of `gens` (any gcd).
fn is_representable(value: i64, gens: &[i64]) -> Result<bool> {
    let d = gens.iter().copied().fold(0, gcd);
    if value % d != 0 {
        return Ok(false);
    }
    let scaled: Vec<i64> = gens.iter().map(|&g| g / d).collect();
    let target = value / d;
    let m = scaled[0];
    if m == 1 {
        return Ok(true);
    }
    if m > MULTIPLICITY_CAP {
        return Err(Error::TooLarge(format!(
            "membership check with multiplicity {m} exceeds the supported cap"
        )));
    }
    let apery = apery_with_respect_to(&scaled, m)?;
    Ok(target >= apery[(target % m) as usize])
}

/// Apéry set of the semigroup generated by `gens` with respect to `modulus`:
/// the least combination in each residue class modulo `modulus`.
///
/// Computed as single-source shortest paths in the residue graph with nodes
/// `0..modulus` and arcs `i -> (i + g) mod modulus` of weight `g`, relaxed
/// round-robin until a fixed point. `modulus` need not be a generator, but
/// the residues of the generators must generate the full cyclic group, which
/// holds whenever `gcd(gens) = 1`.
pub(crate) fn apery_with_respect_to(gens: &[i64], modulus: i64) -> Result<Vec<i64>> {
    let m = modulus as usize;
    let mut dist = vec![i64::MAX; m];
    dist[0] = 0;
    if m == 1 {
        return Ok(dist);
    }
    let arcs: Vec<i64> = gens.iter().copied().filter(|g| g % modulus != 0).collect();
    let mut passes = 0usize;
    loop {
        let mut changed = false;
        for i in 0..m {
            let base = dist[i];
            if base == i64::MAX {
                continue;
            }
            for &g in &arcs {
                let j = ((i as i64 + g) % modulus) as usize;
                let cand = base.checked_add(g).ok_or_else(|| {
                    Error::TooLarge("Apéry relaxation overflowed".into())
                })?;
                if cand < dist[j] {
                    dist[j] = cand;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
        passes += 1;
        if passes > m {
            return Err(Error::Internal(
                "Apéry relaxation failed to converge".into(),
            ));
        }
    }
    if dist.contains(&i64::MAX) {
        return Err(Error::Internal(
            "residue graph not fully reachable; generators not coprime?".into(),
        ));
    }
    Ok(dist)
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
