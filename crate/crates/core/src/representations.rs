//! Maximal representations and the constructive matching of level-skipping
//! elements into fresh level elements.
//!
//! A representation of `s` is a coefficient vector over the minimal
//! generators summing to `s`; it is maximal when its weight (the number of
//! summands) equals `ord(s)`. Representations are compared by the
//! lexicographic order on coefficient vectors, the coefficient of the
//! smallest generator first.
//!
//! For `s` in `D_h`, the image `psi(s)` is the sum of the first `h` summands
//! of the lex-greatest maximal representation of `s + g1`, written with
//! summands in non-decreasing order; it always lands in `C_h`. The images
//! need not be distinct, and [`build_injection`] runs the block procedure
//! that repairs collisions: at the first tie in the chain of images (ordered
//! by decreasing lex), one of the two tied pre-images has a summand replaced
//! by a larger generator, subject to the new image still sitting inside a
//! maximal representation of its pre-image plus `g1`. Block `j` replaces the
//! summand at position `h - j + 1`, so at most `h` blocks are possible;
//! when `|D_h| <= h + 1` the procedure always finishes with a strictly
//! decreasing chain, i.e. an injection `D_h -> C_h`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::semigroup::NumericalSemigroup;

/// Guard against runaway enumeration on adversarial inputs.
const MAX_REPRESENTATIONS: usize = 5_000_000;

/// A coefficient vector over the minimal generators, together with its value
/// and weight.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Representation {
    coeffs: Vec<u32>,
    value: i64,
    weight: u32,
}

impl Representation {
    fn new(gens: &[i64], coeffs: Vec<u32>) -> Self {
        let value = combination_value(gens, &coeffs);
        let weight = coeffs.iter().sum();
        Representation {
            coeffs,
            value,
            weight,
        }
    }

    /// Coefficients aligned with the sorted minimal generators.
    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn value(&self) -> i64 {
        self.value
    }

    /// Number of summands.
    pub fn weight(&self) -> u32 {
        self.weight
    }

    /// The summands in non-decreasing order.
    pub fn summands(&self, gens: &[i64]) -> Vec<i64> {
        let mut out = Vec::with_capacity(self.weight as usize);
        for (j, &c) in self.coeffs.iter().enumerate() {
            out.extend(std::iter::repeat_n(gens[j], c as usize));
        }
        out
    }
}

pub(crate) fn combination_value(gens: &[i64], coeffs: &[u32]) -> i64 {
    gens.iter()
        .zip(coeffs)
        .map(|(&g, &c)| g * c as i64)
        .sum()
}

/// Renders a coefficient vector the way the worked traces are written,
/// e.g. `3·25+36+54`; the empty combination renders as `0`.
pub fn format_combination(gens: &[i64], coeffs: &[u32]) -> String {
    let parts: Vec<String> = gens
        .iter()
        .zip(coeffs)
        .filter(|(_, &c)| c > 0)
        .map(|(&g, &c)| {
            if c == 1 {
                g.to_string()
            } else {
                format!("{c}·{g}")
            }
        })
        .collect();
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join("+")
    }
}

/// All maximal representations of `s`, sorted by decreasing lexicographic
/// order on the coefficient vectors.
///
/// Depth-first search over coefficients of the largest generator first,
/// pruned by weight bounds and by the memoized order table: a partial sum
/// can only complete if the remaining value is an element whose order covers
/// the remaining weight.
pub fn maximal_representations(
    s: &NumericalSemigroup,
    value: i64,
) -> Result<Vec<Representation>> {
    let target_weight = s.order(value)?;
    let gens = s.generators();
    let n = gens.len();
    let table = s.level_table();

    let mut out: Vec<Vec<u32>> = Vec::new();
    let mut current = vec![0u32; n];

    fn recurse(
        gens: &[i64],
        table: &crate::filtration::LevelTable,
        j: usize,
        rest: i64,
        weight: u32,
        current: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
    ) -> Result<()> {
        if j == 0 {
            if rest == weight as i64 * gens[0] {
                current[0] = weight;
                out.push(current.clone());
                if out.len() > MAX_REPRESENTATIONS {
                    return Err(Error::TooLarge(
                        "too many maximal representations".into(),
                    ));
                }
                current[0] = 0;
            }
            return Ok(());
        }
        let max_c = (rest / gens[j]).min(weight as i64) as u32;
        for c in 0..=max_c {
            let left = rest - c as i64 * gens[j];
            let w = weight - c;
            // With only generators below gens[j] left, the remaining value
            // is squeezed between w * g1 and w * gens[j-1].
            if left < w as i64 * gens[0] {
                break;
            }
            if left > w as i64 * gens[j - 1] {
                continue;
            }
            match table.order_of(left) {
                Some(o) if o >= w => {
                    current[j] = c;
                    recurse(gens, table, j - 1, left, w, current, out)?;
                    current[j] = 0;
                }
                _ => {}
            }
        }
        Ok(())
    }

    if n == 1 {
        out.push(vec![target_weight]);
    } else {
        recurse(
            gens,
            table,
            n - 1,
            value,
            target_weight,
            &mut current,
            &mut out,
        )?;
    }

    out.sort_unstable_by(|a, b| b.cmp(a));
    debug_assert!(!out.is_empty(), "order {target_weight} of {value} unrealized");
    Ok(out
        .into_iter()
        .map(|coeffs| Representation::new(gens, coeffs))
        .collect())
}

/// The lexicographically greatest maximal representation of `s`.
pub fn lex_greatest_maximal_rep(
    s: &NumericalSemigroup,
    value: i64,
) -> Result<Representation> {
    let mut reps = maximal_representations(s, value)?;
    Ok(reps.swap_remove(0))
}

/// The first `h` summands (in non-decreasing order) of a coefficient vector,
/// as a coefficient vector.
fn prefix_coeffs(coeffs: &[u32], h: u32) -> Vec<u32> {
    let mut taken = 0u32;
    let mut out = vec![0u32; coeffs.len()];
    for (j, &c) in coeffs.iter().enumerate() {
        if taken == h {
            break;
        }
        let take = c.min(h - taken);
        out[j] = take;
        taken += take;
    }
    debug_assert_eq!(taken, h);
    out
}

/// The image of a level-skipping element: the sum of the first `h` summands
/// of the lex-greatest maximal representation of `s + g1`.
///
/// Errors when `s` is not in `D_h`. The result always lies in `C_h`, which
/// is re-checked here.
pub fn psi_map(s: &NumericalSemigroup, h: u32, value: i64) -> Result<i64> {
    if !s.d_set(h)?.contains(&value) {
        return Err(Error::NotInDSet { value, level: h });
    }
    let greatest = lex_greatest_maximal_rep(s, value + s.multiplicity())?;
    let image = prefix_coeffs(greatest.coeffs(), h);
    let image_value = combination_value(s.generators(), &image);
    check_in_c(s, h, image_value)?;
    Ok(image_value)
}

fn check_in_c(s: &NumericalSemigroup, h: u32, image_value: i64) -> Result<()> {
    let table = s.level_table();
    if table.order_of(image_value) != Some(h) {
        return Err(Error::Internal(format!(
            "image {image_value} does not have order {h}"
        )));
    }
    let below = image_value - s.multiplicity();
    if table.order_of(below) == Some(h - 1) {
        return Err(Error::Internal(format!(
            "image {image_value} is reached from the previous level"
        )));
    }
    Ok(())
}

/// One image in the chain: a pre-image from `D_h` with its current
/// coefficient vector and value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PsiImage {
    pub pre: i64,
    pub coeffs: Vec<u32>,
    pub value: i64,
}

/// One redefinition step of the matching procedure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    /// Running count of redefinitions; 1 renders as `ψ′`, 2 as `ψ″`, and so on.
    pub redefinition: u32,
    /// Block number; block `j` replaces the summand at position `h - j + 1`.
    pub block: u32,
    /// 1-based position of the tie in the ordered image chain.
    pub tie_position: usize,
    pub tie_value: i64,
    /// The pre-image whose image is redefined.
    pub pre: i64,
    /// Summand removed from the image.
    pub replaced: i64,
    /// Generator put in its place.
    pub replacement: i64,
    pub coeffs: Vec<u32>,
    pub value: i64,
}

/// The unresolved tie that stopped the procedure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FailurePoint {
    pub tie_position: usize,
    pub pre_u: i64,
    pub pre_v: i64,
    pub tied_value: i64,
    pub redefinitions_done: u32,
}

/// Outcome of the matching procedure; failure is a value, not an error.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InjectionResult {
    pub level: u32,
    pub d_set: Vec<i64>,
    /// Initial images in `D_h` order, before any redefinition.
    pub initial: Vec<PsiImage>,
    pub success: bool,
    /// On success, `pre -> image` sorted by pre-image; injective into `C_h`.
    pub assignment: Vec<(i64, i64)>,
    pub trace: Vec<TraceStep>,
    pub failure: Option<FailurePoint>,
}

/// Runs the block procedure building an injection `D_h -> C_h`.
///
/// Succeeds whenever `|D_h| <= h + 1`; may also succeed beyond that bound.
/// Success is verified (distinct image values, all in `C_h`) rather than
/// trusted, and a verification failure inside the guaranteed range is an
/// internal error.
pub fn build_injection(s: &NumericalSemigroup, h: u32) -> Result<InjectionResult> {
    let d = s.d_set(h)?;
    let gens = s.generators();
    let guaranteed = d.len() <= h as usize + 1;

    // Per pre-image: every maximal representation of pre + g1, and the
    // initial image (prefix of the lex-greatest one).
    let mut reps: Vec<Vec<Vec<u32>>> = Vec::with_capacity(d.len());
    let mut slots: Vec<(usize, Vec<u32>)> = Vec::with_capacity(d.len());
    let mut initial = Vec::with_capacity(d.len());
    for (idx, &pre) in d.iter().enumerate() {
        let all = maximal_representations(s, pre + s.multiplicity())?;
        let image = prefix_coeffs(all[0].coeffs(), h);
        let value = combination_value(gens, &image);
        initial.push(PsiImage {
            pre,
            coeffs: image.clone(),
            value,
        });
        reps.push(all.into_iter().map(|r| r.coeffs).collect());
        slots.push((idx, image));
    }

    // Chain ordered by decreasing lex on the images; stable, so tied images
    // stay in D_h order.
    slots.sort_by(|a, b| b.1.cmp(&a.1));

    let mut trace: Vec<TraceStep> = Vec::new();
    let mut block = 0u32;
    let mut block_tie: Option<usize> = None;
    let step_cap = (d.len() as u32 + 2) * (h + 2) + 16;

    loop {
        let tie = (0..slots.len().saturating_sub(1)).find(|&a| slots[a].1 == slots[a + 1].1);
        let Some(a) = tie else {
            return finish(s, h, d, initial, slots, trace, guaranteed);
        };

        match block_tie {
            None => {
                block = 1;
                block_tie = Some(a);
            }
            Some(owned) if a > owned => {
                block += 1;
                block_tie = Some(a);
            }
            Some(owned) if a < owned => {
                return Err(Error::Internal(format!(
                    "tie position moved backwards: {a} < {owned}"
                )));
            }
            _ => {}
        }

        let tied_value = combination_value(gens, &slots[a].1);
        if block > h {
            // Block j would replace summand position h - j + 1; past h
            // blocks there is nothing left to modify.
            if guaranteed {
                return Err(Error::Internal(format!(
                    "procedure ran out of blocks with |D_{h}| = {} <= {}",
                    d.len(),
                    h + 1
                )));
            }
            let failure = FailurePoint {
                tie_position: a + 1,
                pre_u: d[slots[a].0],
                pre_v: d[slots[a + 1].0],
                tied_value,
                redefinitions_done: trace.len() as u32,
            };
            return finish_failure(s, h, d, initial, trace, failure);
        }

        let position = h - block + 1;
        // Prefer redefining the later of the two tied slots; fall back to
        // the earlier one.
        let chosen = [a + 1, a]
            .into_iter()
            .find_map(|slot| {
                replace_summand(gens, &slots[slot].1, position, &reps[slots[slot].0])
                    .map(|(replaced, replacement, image)| (slot, replaced, replacement, image))
            });
        let Some((slot, replaced, replacement, new_image)) = chosen else {
            if guaranteed {
                return Err(Error::Internal(format!(
                    "no admissible replacement generator at level {h}, tie position {}",
                    a + 1
                )));
            }
            let failure = FailurePoint {
                tie_position: a + 1,
                pre_u: d[slots[a].0],
                pre_v: d[slots[a + 1].0],
                tied_value,
                redefinitions_done: trace.len() as u32,
            };
            return finish_failure(s, h, d, initial, trace, failure);
        };

        let value = combination_value(gens, &new_image);
        trace.push(TraceStep {
            redefinition: trace.len() as u32 + 1,
            block,
            tie_position: a + 1,
            tie_value: tied_value,
            pre: d[slots[slot].0],
            replaced,
            replacement,
            coeffs: new_image.clone(),
            value,
        });
        if trace.len() as u32 > step_cap {
            return Err(Error::Internal("matching procedure did not terminate".into()));
        }
        slots[slot].1 = new_image;
        slots.sort_by(|a, b| b.1.cmp(&a.1));
    }
}

/// Replaces the summand at the given 1-based position (in non-decreasing
/// summand order) by the smallest strictly larger generator such that the
/// new multiset still embeds in some maximal representation of the
/// pre-image plus `g1`. Returns `(removed, added, new_coeffs)`.
fn replace_summand(
    gens: &[i64],
    image: &[u32],
    position: u32,
    reps: &[Vec<u32>],
) -> Option<(i64, i64, Vec<u32>)> {
    // Locate the generator index holding the position-th smallest summand.
    let mut cumulative = 0u32;
    let mut at = None;
    for (j, &c) in image.iter().enumerate() {
        cumulative += c;
        if cumulative >= position {
            at = Some(j);
            break;
        }
    }
    let jp = at.expect("position exceeds image weight");

    for jq in jp + 1..gens.len() {
        let mut cand = image.to_vec();
        cand[jp] -= 1;
        cand[jq] += 1;
        if reps
            .iter()
            .any(|rep| cand.iter().zip(rep).all(|(&c, &r)| c <= r))
        {
            return Some((gens[jp], gens[jq], cand));
        }
    }
    None
}

fn finish(
    s: &NumericalSemigroup,
    h: u32,
    d: Vec<i64>,
    initial: Vec<PsiImage>,
    slots: Vec<(usize, Vec<u32>)>,
    trace: Vec<TraceStep>,
    guaranteed: bool,
) -> Result<InjectionResult> {
    let gens = s.generators();
    let mut assignment: Vec<(i64, i64)> = slots
        .iter()
        .map(|(idx, coeffs)| (d[*idx], combination_value(gens, coeffs)))
        .collect();
    assignment.sort_unstable();

    // Verify rather than trust: pairwise distinct values, all in C_h.
    let mut values: Vec<i64> = assignment.iter().map(|&(_, v)| v).collect();
    values.sort_unstable();
    let distinct = values.windows(2).all(|w| w[0] != w[1]);
    if !distinct {
        if guaranteed {
            return Err(Error::Internal(format!(
                "strict image chain with colliding values at level {h}"
            )));
        }
        let dup = values.windows(2).find(|w| w[0] == w[1]).unwrap()[0];
        let mut pres = assignment.iter().filter(|&&(_, v)| v == dup).map(|&(p, _)| p);
        let pre_u = pres.next().unwrap();
        let pre_v = pres.next().unwrap();
        let failure = FailurePoint {
            tie_position: 0,
            pre_u,
            pre_v,
            tied_value: dup,
            redefinitions_done: trace.len() as u32,
        };
        return finish_failure(s, h, d, initial, trace, failure);
    }
    for &(_, v) in &assignment {
        check_in_c(s, h, v)?;
    }

    Ok(InjectionResult {
        level: h,
        d_set: d,
        initial,
        success: true,
        assignment,
        trace,
        failure: None,
    })
}

fn finish_failure(
    _s: &NumericalSemigroup,
    h: u32,
    d: Vec<i64>,
    initial: Vec<PsiImage>,
    trace: Vec<TraceStep>,
    failure: FailurePoint,
) -> Result<InjectionResult> {
    Ok(InjectionResult {
        level: h,
        d_set: d,
        initial,
        success: false,
        assignment: Vec::new(),
        trace,
        failure: Some(failure),
    })
}
