//! Exhaustive, deterministic enumeration of bounded semigroup families and a
//! parallel certification harness over them.
//!
//! Enumeration walks generator tuples depth-first: a multiplicity, then
//! strictly increasing further generators, keeping only values outside the
//! semigroup generated so far. Such tuples are exactly the minimal generator
//! systems, so every semigroup in range appears exactly once and in
//! lexicographic tuple order. Tuples whose gcd stays above 1 are extended
//! but never emitted.
//!
//! Work is split statically over the top-level `(g1, g2)` pairs; the merged
//! output is in partition order and byte-identical for any worker count.

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::monotonicity::{certify_with, necessary_report_with, Certificate, NecessaryReport};
use crate::semigroup::NumericalSemigroup;

/// Bounds and filters describing a finite family of semigroups.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchConstraints {
    /// Largest admissible multiplicity `g1`.
    pub max_multiplicity: i64,
    /// Admissible embedding dimensions, inclusive.
    pub ed_min: u32,
    pub ed_max: u32,
    /// Largest admissible generator. At least one of this and
    /// `max_frobenius` must be present to keep the family finite.
    pub max_generator: Option<i64>,
    /// Largest admissible Frobenius number. Also caps the generators, since
    /// a minimal generator `g` forces `g - g1` out of the semigroup.
    pub max_frobenius: Option<i64>,
    /// Keep only symmetric semigroups.
    pub symmetric_only: bool,
    /// Which certified candidates become records.
    pub predicate: Predicate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Predicate {
    /// Hilbert function decreases somewhere.
    Decreasing,
    /// Some level has more skipping elements than the injection bound.
    DhBoundFails,
    /// No cheap certificate fired; the verdict came from the Hilbert values.
    CertificateIsDirect,
    All,
}

impl Predicate {
    fn matches(self, record: &SearchRecord) -> bool {
        match self {
            Predicate::Decreasing => !record.nondecreasing,
            // The bound can only have been consulted and failed when every
            // cheaper certificate failed too, i.e. on Direct verdicts.
            Predicate::DhBoundFails => record.certificate == Certificate::Direct,
            Predicate::CertificateIsDirect => record.certificate == Certificate::Direct,
            Predicate::All => true,
        }
    }
}

impl SearchConstraints {
    fn validate(&self) -> Result<()> {
        if self.max_multiplicity < 1 {
            return Err(Error::InvalidConstraints(
                "max multiplicity must be positive".into(),
            ));
        }
        if self.ed_min < 1 || self.ed_min > self.ed_max {
            return Err(Error::InvalidConstraints(format!(
                "embedding dimension range {}..={} is empty or starts below 1",
                self.ed_min, self.ed_max
            )));
        }
        if self.max_generator.is_none() && self.max_frobenius.is_none() {
            return Err(Error::InvalidConstraints(
                "unbounded search space: give a generator or Frobenius bound".into(),
            ));
        }
        if let Some(g) = self.max_generator {
            if g < 1 {
                return Err(Error::InvalidConstraints("generator bound below 1".into()));
            }
        }
        if let Some(f) = self.max_frobenius {
            if f < -1 {
                return Err(Error::InvalidConstraints(
                    "Frobenius bound below -1".into(),
                ));
            }
        }
        let cand = self.candidate_cap(self.max_multiplicity) as i128;
        if cand > 1_000_000 || self.max_multiplicity as i128 * cand > 20_000_000 {
            return Err(Error::InvalidConstraints(
                "bounds exceed the supported search scale".into(),
            ));
        }
        Ok(())
    }

    /// Largest value a generator may take once the multiplicity is fixed.
    fn candidate_cap(&self, g1: i64) -> i64 {
        let by_gen = self.max_generator.unwrap_or(i64::MAX);
        let by_frob = self
            .max_frobenius
            .map_or(i64::MAX, |f| f.saturating_add(g1));
        by_gen.min(by_frob)
    }

    fn admits(&self, s: &NumericalSemigroup) -> bool {
        let ed = s.embedding_dimension() as u32;
        ed >= self.ed_min
            && ed <= self.ed_max
            && self.max_frobenius.is_none_or(|f| s.frobenius() <= f)
            && self.max_generator.is_none_or(|g| {
                s.generators().last().copied().unwrap_or(0) <= g
            })
            && (!self.symmetric_only || s.is_symmetric())
    }
}

/// One unit of statically partitioned work: the trivial semigroup, or the
/// subtree under a fixed first generator pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Partition {
    Natural,
    Pair(i64, i64),
}

/// The partition list for a constraint set, in canonical order.
pub fn partitions(c: &SearchConstraints) -> Vec<Partition> {
    let mut out = Vec::new();
    if c.ed_min <= 1 {
        out.push(Partition::Natural);
    }
    if c.ed_max >= 2 {
        for g1 in 2..=c.max_multiplicity {
            for g2 in g1 + 1..=c.candidate_cap(g1) {
                if g2 % g1 != 0 {
                    out.push(Partition::Pair(g1, g2));
                }
            }
        }
    }
    out
}

/// Growable membership bitmap for the semigroup generated by a tuple prefix.
#[derive(Clone)]
struct Bitset {
    words: Vec<u64>,
    limit: usize,
}

impl Bitset {
    fn new(limit: usize) -> Self {
        Bitset {
            words: vec![0; limit / 64 + 1],
            limit,
        }
    }

    fn zero_with_origin(&mut self) {
        self.words.fill(0);
        self.words[0] = 1;
    }

    fn copy_from(&mut self, other: &Bitset) {
        self.words.copy_from_slice(&other.words);
    }

    fn get(&self, i: i64) -> bool {
        debug_assert!(0 <= i && i as usize <= self.limit);
        self.words[i as usize / 64] >> (i as usize % 64) & 1 == 1
    }

    /// Closes the set under addition of `g`: repeated doubling of the shift
    /// covers every multiple up to the limit.
    fn close_under(&mut self, g: i64) {
        let mut shift = g as usize;
        while shift <= self.limit {
            self.shl_or(shift);
            shift <<= 1;
        }
    }

    /// `self |= self << k`.
    fn shl_or(&mut self, k: usize) {
        let wk = k / 64;
        let bk = k % 64;
        for i in (wk..self.words.len()).rev() {
            let mut v = self.words[i - wk] << bk;
            if bk > 0 && i > wk {
                v |= self.words[i - wk - 1] >> (64 - bk);
            }
            self.words[i] |= v;
        }
    }

    /// First unset value in `(from, from + span]`, if any.
    fn first_gap_after(&self, from: i64, span: i64) -> Option<i64> {
        (from + 1..=from + span).find(|&v| !self.get(v))
    }
}

/// Runs `visit` on every admissible semigroup of one partition, in
/// lexicographic tuple order.
fn run_partition(
    c: &SearchConstraints,
    part: Partition,
    visit: &mut dyn FnMut(NumericalSemigroup) -> Result<()>,
) -> Result<()> {
    match part {
        Partition::Natural => {
            let s = NumericalSemigroup::from_minimal(vec![1])?;
            if c.admits(&s) {
                visit(s)?;
            }
            Ok(())
        }
        Partition::Pair(g1, g2) => {
            let cap = c.candidate_cap(g1);
            let bit_limit = c
                .max_frobenius
                .map_or(cap, |f| cap.max(f + g1)) as usize;
            let depth = c.ed_max as usize;
            let mut buffers: Vec<Bitset> = (0..depth).map(|_| Bitset::new(bit_limit)).collect();
            buffers[0].zero_with_origin();
            buffers[0].close_under(g1);
            let (head, tail) = buffers.split_at_mut(1);
            tail[0].copy_from(&head[0]);
            tail[0].close_under(g2);

            let mut tuple = vec![g1, g2];
            dfs(c, cap, &mut tuple, gcd(g1, g2), &mut buffers, visit)
        }
    }
}

fn dfs(
    c: &SearchConstraints,
    cap: i64,
    tuple: &mut Vec<i64>,
    tuple_gcd: i64,
    buffers: &mut [Bitset],
    visit: &mut dyn FnMut(NumericalSemigroup) -> Result<()>,
) -> Result<()> {
    let len = tuple.len();
    // A full residue window above the Frobenius bound means the bound is
    // met; the first missing value both rejects this tuple and caps how
    // large the next generator can usefully be, since later generators
    // cannot help below themselves.
    let v_star = c
        .max_frobenius
        .and_then(|fmax| buffers[len - 1].first_gap_after(fmax, tuple[0]));

    if tuple_gcd == 1 && len as u32 >= c.ed_min && v_star.is_none() {
        let s = NumericalSemigroup::from_minimal(tuple.clone())?;
        if c.admits(&s) {
            visit(s)?;
        }
    }
    if len as u32 >= c.ed_max {
        return Ok(());
    }

    let mut hi = cap;
    if let Some(v_star) = v_star {
        hi = hi.min(v_star);
    }

    let low = tuple[len - 1] + 1;
    for g in low..=hi {
        if buffers[len - 1].get(g) {
            continue;
        }
        let (seen, rest) = buffers.split_at_mut(len);
        rest[0].copy_from(&seen[len - 1]);
        rest[0].close_under(g);
        tuple.push(g);
        dfs(c, cap, tuple, gcd(tuple_gcd, g), buffers, visit)?;
        tuple.pop();
    }
    Ok(())
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Lazy stream over every semigroup admitted by the constraints, in
/// canonical (lexicographic generator tuple) order, each exactly once.
pub fn enumerate_semigroups(
    c: &SearchConstraints,
) -> Result<impl Iterator<Item = Result<NumericalSemigroup>>> {
    c.validate()?;
    let parts = partitions(c).into_iter();
    let c = c.clone();
    let mut buf: std::collections::VecDeque<NumericalSemigroup> = Default::default();
    let mut parts = parts;
    let mut failed = false;
    Ok(std::iter::from_fn(move || loop {
        if failed {
            return None;
        }
        if let Some(s) = buf.pop_front() {
            return Some(Ok(s));
        }
        let part = parts.next()?;
        let result = run_partition(&c, part, &mut |s| {
            buf.push_back(s);
            Ok(())
        });
        if let Err(e) = result {
            failed = true;
            return Some(Err(e));
        }
    }))
}

/// One certified candidate.
#[derive(Debug, Clone, Serialize)]
pub struct SearchRecord {
    pub generators: Vec<i64>,
    pub m: i64,
    pub ed: usize,
    pub f: i64,
    pub r: u32,
    pub certificate: Certificate,
    pub first_decrease: Option<u32>,
    pub nondecreasing: bool,
    pub necessary: NecessaryReport,
    /// Wall time spent certifying this candidate. Excluded from the
    /// serialized stream and from equality so that neither depends on
    /// timing.
    #[serde(skip)]
    pub wall_micros: u64,
}

impl PartialEq for SearchRecord {
    fn eq(&self, other: &Self) -> bool {
        self.generators == other.generators
            && self.m == other.m
            && self.ed == other.ed
            && self.f == other.f
            && self.r == other.r
            && self.certificate == other.certificate
            && self.first_decrease == other.first_decrease
            && self.nondecreasing == other.nondecreasing
            && self.necessary == other.necessary
    }
}

impl Eq for SearchRecord {}

impl SearchRecord {
    fn build(s: &NumericalSemigroup) -> Result<SearchRecord> {
        let started = Instant::now();
        let table = crate::invariants::abc_table(s)?;
        let verdict = certify_with(s, &table)?;
        let necessary = necessary_report_with(s, &table)?;
        Ok(SearchRecord {
            generators: s.generators().to_vec(),
            m: s.multiplicity(),
            ed: s.embedding_dimension(),
            f: s.frobenius(),
            r: s.reduction_number(),
            certificate: verdict.certificate,
            first_decrease: verdict.first_decrease,
            nondecreasing: verdict.nondecreasing,
            necessary,
            wall_micros: started.elapsed().as_micros() as u64,
        })
    }

    /// CSV line matching [`SearchRecord::CSV_HEADER`].
    pub const CSV_HEADER: &'static str = "generators,m,ed,f,r,certificate,first_decrease";

    pub fn csv_line(&self) -> String {
        let gens: Vec<String> = self.generators.iter().map(|g| g.to_string()).collect();
        let certificate = serde_json::to_value(self.certificate)
            .expect("serializable")
            .as_str()
            .expect("certificate names are strings")
            .to_string();
        format!(
            "\"{}\",{},{},{},{},{},{}",
            gens.join(","),
            self.m,
            self.ed,
            self.f,
            self.r,
            certificate,
            self.first_decrease.map_or(String::new(), |h| h.to_string()),
        )
    }
}

/// Aggregates for one hunt.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchSummary {
    /// Candidates certified (all admitted semigroups, before the predicate).
    pub total: u64,
    /// Records matching the predicate.
    pub matched: u64,
    pub decreasing: u64,
    pub by_certificate: CertificateCounts,
    pub partitions_total: usize,
    pub partitions_processed: usize,
    /// Resume key: index of the last fully processed partition.
    pub last_partition_index: Option<usize>,
    pub workers: usize,
    pub elapsed_secs: f64,
    pub throughput_per_worker: f64,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct CertificateCounts {
    pub cm_tangent_cone: u64,
    pub apery_bound: u64,
    pub dh_bound: u64,
    pub direct: u64,
}

impl CertificateCounts {
    fn bump(&mut self, c: Certificate) {
        match c {
            Certificate::CmTangentCone => self.cm_tangent_cone += 1,
            Certificate::AperyBound => self.apery_bound += 1,
            Certificate::DhBound => self.dh_bound += 1,
            Certificate::Direct => self.direct += 1,
        }
    }

    fn add(&mut self, other: &CertificateCounts) {
        self.cm_tangent_cone += other.cm_tangent_cone;
        self.apery_bound += other.apery_bound;
        self.dh_bound += other.dh_bound;
        self.direct += other.direct;
    }
}

struct PartitionOutput {
    records: Vec<SearchRecord>,
    total: u64,
    decreasing: u64,
    by_certificate: CertificateCounts,
}

/// Certifies every semigroup in the family across a worker pool, returning
/// the records matching the predicate plus a summary.
///
/// Partitions are distributed statically and merged in order, so the record
/// stream is identical for every worker count. `resume_after` skips all
/// partitions up to and including that index.
pub fn hunt(
    c: &SearchConstraints,
    workers: usize,
    resume_after: Option<usize>,
) -> Result<(Vec<SearchRecord>, SearchSummary)> {
    let mut records = Vec::new();
    let summary = hunt_with(c, workers, resume_after, |_, batch| {
        records.extend(batch);
        Ok(())
    })?;
    Ok((records, summary))
}

/// Streaming form of [`hunt`]: `emit` receives each partition's matching
/// records as soon as every earlier partition has been emitted, together
/// with the partition's index (the resume key once it has been emitted).
///
/// Emission is strictly in partition order regardless of worker count, so
/// an interrupted run leaves a valid prefix of the full stream, resumable
/// with `resume_after` set to the last emitted index.
pub fn hunt_with<F>(
    c: &SearchConstraints,
    workers: usize,
    resume_after: Option<usize>,
    mut emit: F,
) -> Result<SearchSummary>
where
    F: FnMut(usize, Vec<SearchRecord>) -> Result<()>,
{
    c.validate()?;
    if workers < 1 {
        return Err(Error::InvalidConstraints("workers must be at least 1".into()));
    }
    let started = Instant::now();
    let parts = partitions(c);
    let first = resume_after.map_or(0, |k| k + 1);
    let todo: Vec<(usize, Partition)> =
        parts.iter().copied().enumerate().skip(first).collect();

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        // A panicking worker drops its channel end; the merge loop below
        // then reports the missing partitions instead of aborting.
        .panic_handler(|_| {})
        .build()
        .map_err(|e| Error::Internal(format!("worker pool: {e}")))?;

    let mut summary = SearchSummary {
        total: 0,
        matched: 0,
        decreasing: 0,
        by_certificate: CertificateCounts::default(),
        partitions_total: parts.len(),
        partitions_processed: todo.len(),
        last_partition_index: parts.len().checked_sub(1),
        workers,
        elapsed_secs: 0.0,
        throughput_per_worker: 0.0,
    };
    let expected = first + todo.len();

    // Bounded channel: workers stall rather than outrun the merger.
    let (tx, rx) = std::sync::mpsc::sync_channel::<(usize, Result<PartitionOutput>)>(
        4 * workers.max(1),
    );
    let owned = c.clone();
    pool.spawn(move || {
        // A send failure means the receiver gave up on an earlier error;
        // try_for_each stops handing out further partitions.
        let _ = todo.into_par_iter().try_for_each_with(tx, |tx, (idx, part)| {
            tx.send((idx, certify_partition(&owned, part))).map_err(|_| ())
        });
    });

    // Reorder buffer: emit strictly in partition order.
    let mut pending: std::collections::BTreeMap<usize, PartitionOutput> = Default::default();
    let mut next = first;
    while let Ok((idx, output)) = rx.recv() {
        pending.insert(idx, output?);
        while let Some(output) = pending.remove(&next) {
            summary.total += output.total;
            summary.decreasing += output.decreasing;
            summary.matched += output.records.len() as u64;
            summary.by_certificate.add(&output.by_certificate);
            emit(next, output.records)?;
            next += 1;
        }
    }
    if next != expected {
        return Err(Error::Internal(format!(
            "partitions {next}..{expected} were never certified"
        )));
    }

    summary.elapsed_secs = started.elapsed().as_secs_f64();
    summary.throughput_per_worker =
        summary.total as f64 / summary.elapsed_secs.max(1e-9) / workers as f64;
    Ok(summary)
}

fn certify_partition(c: &SearchConstraints, part: Partition) -> Result<PartitionOutput> {
    let mut out = PartitionOutput {
        records: Vec::new(),
        total: 0,
        decreasing: 0,
        by_certificate: CertificateCounts::default(),
    };
    run_partition(c, part, &mut |s| {
        let record = SearchRecord::build(&s)?;
        out.total += 1;
        out.by_certificate.bump(record.certificate);
        if !record.nondecreasing {
            out.decreasing += 1;
        }
        if c.predicate.matches(&record) {
            out.records.push(record);
        }
        Ok(())
    })?;
    Ok(out)
}
