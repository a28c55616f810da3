//! Acceptance suite: one test per criterion, each printing a PASS/FAIL line.
//!
//! Run with `cargo test -p nsg-cli --test acceptance -- --nocapture` to see
//! the per-criterion lines; the two exhaustive sweeps (5 and 9) take a few
//! minutes combined.

use std::time::Instant;

use assert_cmd::Command;
use nsg::invariants::abc_table;
use nsg::search::partitions;
use nsg::{
    build_injection, certify, hunt, Certificate, NumericalSemigroup, Predicate,
    SearchConstraints,
};

fn criterion<F>(number: u32, what: &str, run: F)
where
    F: FnOnce() + std::panic::UnwindSafe,
{
    match std::panic::catch_unwind(run) {
        Ok(()) => println!("ACCEPTANCE criterion {number} ({what}): PASS"),
        Err(cause) => {
            println!("ACCEPTANCE criterion {number} ({what}): FAIL");
            std::panic::resume_unwind(cause);
        }
    }
}

fn nsg_bin() -> Command {
    Command::cargo_bin("nsg").unwrap()
}

fn semigroup(gens: &[i64]) -> NumericalSemigroup {
    NumericalSemigroup::new(gens).unwrap()
}

/// The exhaustive corpus of criteria 5 and 7: every semigroup with
/// multiplicity at most 10 and generators at most 35.
fn exhaustive_corpus() -> Vec<NumericalSemigroup> {
    let c = SearchConstraints {
        max_multiplicity: 10,
        ed_min: 1,
        ed_max: 10,
        max_generator: Some(35),
        max_frobenius: None,
        symmetric_only: false,
        predicate: Predicate::All,
    };
    nsg::enumerate_semigroups(&c)
        .unwrap()
        .map(|s| s.unwrap())
        .collect()
}

fn random_corpus(seed: u64, count: usize, max_mult: u64) -> Vec<NumericalSemigroup> {
    nsg_oracle::random_generator_sets(seed, count, max_mult)
        .iter()
        .map(|gens| semigroup(gens))
        .collect()
}

#[test]
fn criterion_01_hilbert_fixtures() {
    criterion(1, "hilbert fixtures", || {
        let started = Instant::now();
        nsg_bin()
            .args(["hilbert", "24", "25", "36", "51", "54"])
            .assert()
            .success()
            .stdout("1,5,11,16,19,20,21,22,22,22,22,23,24, →\n");
        assert!(started.elapsed().as_secs_f64() < 1.0, "first fixture too slow");

        let started = Instant::now();
        nsg_bin()
            .args(["hilbert", "16", "17", "35", "71"])
            .assert()
            .success()
            .stdout("1,4,8,10,10,11,11,12,12,13,13,14,14,15,15,16, →\n");
        assert!(started.elapsed().as_secs_f64() < 1.0, "second fixture too slow");
    });
}

#[test]
fn criterion_02_level_set_fixtures() {
    criterion(2, "level-set fixtures", || {
        let five = semigroup(&[24, 25, 36, 51, 54]);
        assert_eq!(five.d_set(5).unwrap(), vec![126, 137, 155, 166]);

        let four = semigroup(&[16, 17, 35, 71]);
        assert_eq!(four.d_set(3).unwrap(), vec![52, 70, 88, 106, 142]);
        assert_eq!(
            four.c_set(3).unwrap(),
            vec![51, 69, 87, 105, 123, 141, 159]
        );
        let (h, _) = four.hilbert_function();
        assert_eq!(h[3], 10);
        assert_eq!(h[2], 8);
        assert_eq!(h[3] - h[2], 2);
    });
}

#[test]
fn criterion_03_injection_replay() {
    criterion(3, "injection replay", || {
        nsg_bin()
            .args(["injection", "24", "25", "36", "51", "54", "--level", "5", "--trace"])
            .assert()
            .success()
            .stdout(
                "S = ⟨24,25,36,51,54⟩, level 5\n\
                 D_5 = {126, 137, 155, 166}\n\
                 ψ(126) = 5·25 = 125\n\
                 ψ(137) = 5·25 = 125\n\
                 ψ(155) = 5·25 = 125\n\
                 ψ(166) = 4·25+36 = 136\n\
                 block 1, tie at position 1 (value 125): ψ′(137) = 4·25+36 = 136\n\
                 block 1, tie at position 1 (value 125): ψ″(155) = 4·25+54 = 154\n\
                 block 2, tie at position 2 (value 136): ψ⁽³⁾(166) = 3·25+36+54 = 165\n\
                 result: success — injective map into C_5 after 3 redefinitions\n\
                 ψ̃(126) = 125\n\
                 ψ̃(137) = 136\n\
                 ψ̃(155) = 154\n\
                 ψ̃(166) = 165\n",
            );

        let out = nsg_bin()
            .args([
                "injection", "13", "19", "24", "44", "49", "54", "55", "59", "60", "66",
                "--level", "2",
            ])
            .assert()
            .success();
        let text = String::from_utf8(out.get_output().stdout.clone()).unwrap();
        assert!(text.contains("D_2 = {44, 49, 54, 59}"));
        assert!(text.contains(
            "result: failure — tie ψ″(54) = ψ″(59) = 48 cannot be resolved"
        ));
    });
}

#[test]
fn criterion_04_decreasing_detection() {
    criterion(4, "decreasing detection", || {
        let gens = [13i64, 19, 24, 44, 49, 54, 55, 59, 60, 66];
        let s = semigroup(&gens);
        let verdict = certify(&s).unwrap();
        assert!(!verdict.nondecreasing);
        assert_eq!(verdict.first_decrease, Some(2));
        let (h, r) = s.hilbert_function();
        assert_eq!(h[1], 10);
        // Full sequence against the brute-force level oracle.
        assert_eq!(h, nsg_oracle::hilbert_prefix(&gens, r as i64));
    });
}

#[test]
fn criterion_05_theorem_soundness_sweep() {
    criterion(5, "theorem soundness sweep", || {
        let started = Instant::now();
        let mut corpus = exhaustive_corpus();
        corpus.extend(random_corpus(0x5eed, 500, 20));
        let mut qualifying = 0u64;
        for s in &corpus {
            let r = s.reduction_number();
            let bounded =
                (2..=r).all(|h| s.d_set(h).unwrap().len() <= h as usize + 1);
            if !bounded {
                continue;
            }
            qualifying += 1;
            for h in 2..=r {
                let result = build_injection(s, h).unwrap();
                assert!(result.success, "{s} level {h}");
                let c = s.c_set(h).unwrap();
                let mut images: Vec<i64> =
                    result.assignment.iter().map(|&(_, v)| v).collect();
                images.sort_unstable();
                images.dedup();
                assert_eq!(images.len(), result.assignment.len(), "{s} level {h}");
                assert!(
                    result.assignment.iter().all(|(_, v)| c.contains(v)),
                    "{s} level {h}"
                );
            }
            assert_eq!(s.first_decrease(), None, "{s}");
        }
        let elapsed = started.elapsed();
        assert!(qualifying > 10_000, "sweep too small: {qualifying}");
        assert!(
            elapsed.as_secs() < 300,
            "sweep took {:.0}s, budget is 300s",
            elapsed.as_secs_f64()
        );
        println!(
            "  criterion 5 detail: {} corpus semigroups, {} qualifying, {:.1}s",
            corpus.len(),
            qualifying,
            elapsed.as_secs_f64()
        );
    });
}

#[test]
fn criterion_06_oracle_equivalence() {
    criterion(6, "oracle equivalence", || {
        for s in random_corpus(0x02ac1e, 200, 15) {
            let gens = s.generators().to_vec();
            let limit = s.frobenius() + 3 * s.multiplicity();
            let member = nsg_oracle::members_up_to(&gens, limit);
            let orders = nsg_oracle::orders_up_to(&gens, limit);
            for v in 0..=limit {
                assert_eq!(s.contains(v), member[v as usize], "{s} membership {v}");
                let got = s.order(v).map(|o| o as i64).unwrap_or(-1);
                assert_eq!(got, orders[v as usize], "{s} order {v}");
            }
            assert_eq!(s.apery_set(), nsg_oracle::apery(&gens), "{s} apery");
            for h in 0..=s.reduction_number() + 1 {
                assert_eq!(
                    s.level_set(h),
                    nsg_oracle::level_set(&gens, h as i64),
                    "{s} level {h}"
                );
            }
        }
    });
}

#[test]
fn criterion_07_invariant_table_properties() {
    criterion(7, "invariant-table properties", || {
        let mut corpus = exhaustive_corpus();
        corpus.extend(random_corpus(0xab5, 200, 15));
        for s in &corpus {
            let table = abc_table(s).unwrap();
            let mut all_equal = true;
            for row in table.rows() {
                if row.residue == 0 {
                    assert_eq!((row.a, row.b, row.c), (0, 0, 0), "{s}");
                    continue;
                }
                assert!(1 <= row.b && row.b <= row.a && row.a <= row.c, "{s}");
                assert_eq!(row.b < row.a, row.a < row.c, "{s}");
                all_equal &= row.a == row.b;
            }
            let d_all_empty =
                (2..=s.reduction_number()).all(|h| s.d_set(h).unwrap().is_empty());
            let cm = nsg::invariants::tangent_cone_is_cm(s).unwrap();
            assert_eq!(cm, all_equal, "{s}");
            assert_eq!(cm, d_all_empty, "{s}");
        }
    });
}

#[test]
fn criterion_08_corollary_sweeps() {
    criterion(8, "corollary sweeps", || {
        // Multiplicity 4, Frobenius at most 60: always non-decreasing, and
        // never past the Apéry-count certificate.
        let c = SearchConstraints {
            max_multiplicity: 4,
            ed_min: 1,
            ed_max: 4,
            max_generator: None,
            max_frobenius: Some(60),
            symmetric_only: false,
            predicate: Predicate::All,
        };
        let mut mult4 = 0;
        for s in nsg::enumerate_semigroups(&c).unwrap() {
            let s = s.unwrap();
            let v = certify(&s).unwrap();
            assert!(v.nondecreasing, "{s}");
            if s.multiplicity() == 4 {
                mult4 += 1;
                assert!(
                    matches!(
                        v.certificate,
                        Certificate::CmTangentCone | Certificate::AperyBound
                    ),
                    "{s} used {:?}",
                    v.certificate
                );
            }
        }
        assert!(mult4 > 100, "multiplicity-4 sweep too small: {mult4}");

        // Embedding dimension 4 or 5 with multiplicity at most 8.
        let c = SearchConstraints {
            max_multiplicity: 8,
            ed_min: 4,
            ed_max: 5,
            max_generator: None,
            max_frobenius: Some(60),
            symmetric_only: false,
            predicate: Predicate::Decreasing,
        };
        let (records, summary) = hunt(&c, 2, None).unwrap();
        assert!(records.is_empty() && summary.decreasing == 0);
        assert!(summary.total > 1_000, "ed-4/5 sweep too small");

        // Decreasing finds from a sweep around the known ten-generator
        // example: the slice of the embedding-dimension-10 family whose
        // first two generators are (13, 19).
        let c = SearchConstraints {
            max_multiplicity: 13,
            ed_min: 10,
            ed_max: 10,
            max_generator: Some(66),
            max_frobenius: None,
            symmetric_only: false,
            predicate: Predicate::Decreasing,
        };
        let parts = partitions(&c);
        let resume = parts
            .iter()
            .position(|p| *p == nsg::search::Partition::Pair(13, 19))
            .unwrap()
            - 1;
        let (records, _) = hunt(&c, 2, Some(resume)).unwrap();
        assert!(!records.is_empty(), "no decreasing finds in the slice");
        assert!(records
            .iter()
            .any(|r| r.generators == vec![13, 19, 24, 44, 49, 54, 55, 59, 60, 66]));
        for record in &records {
            assert!(record.necessary.c2_count >= 3, "{:?}", record.generators);
            if record.first_decrease == Some(2) {
                assert!(record.ed > 5, "{:?}", record.generators);
            }
            assert!(
                record.necessary.c_chain_ok >= record.first_decrease.unwrap(),
                "{:?}",
                record.generators
            );
        }
        println!(
            "  criterion 8 detail: {} decreasing finds in the (13,19) slice",
            records.len()
        );
    });
}

#[test]
fn criterion_09_open_range_stays_open() {
    criterion(9, "open range reports no decreasing finds", || {
        let c = SearchConstraints {
            max_multiplicity: 12,
            ed_min: 4,
            ed_max: 9,
            max_generator: None,
            max_frobenius: Some(80),
            symmetric_only: false,
            predicate: Predicate::Decreasing,
        };
        let workers = std::thread::available_parallelism().map_or(2, |n| n.get());
        let (records, summary) = hunt(&c, workers, None).unwrap();
        assert!(records.is_empty(), "unexpected decreasing find");
        assert_eq!(summary.decreasing, 0);
        assert!(summary.total > 10_000_000, "family unexpectedly small");
        assert!(
            summary.throughput_per_worker >= 1000.0,
            "throughput {:.0}/s/worker below 1000",
            summary.throughput_per_worker
        );
        println!(
            "  criterion 9 detail: {} semigroups, {:.0}/s/worker, {:.0}s",
            summary.total, summary.throughput_per_worker, summary.elapsed_secs
        );
    });
}

#[test]
fn criterion_10_search_determinism() {
    criterion(10, "search output determinism", || {
        let dir = std::env::temp_dir();
        let one = dir.join("nsg-acceptance-workers1.jsonl");
        let eight = dir.join("nsg-acceptance-workers8.jsonl");
        for (path, workers) in [(&one, "1"), (&eight, "8")] {
            nsg_bin()
                .args([
                    "search", "--max-mult", "7", "--ed-min", "2", "--ed-max", "4",
                    "--max-gen", "24", "--predicate", "all", "--workers", workers,
                    "--out",
                ])
                .arg(path)
                .assert()
                .success();
        }
        let bytes_one = std::fs::read(&one).unwrap();
        let bytes_eight = std::fs::read(&eight).unwrap();
        assert!(!bytes_one.is_empty());
        assert_eq!(fnv(&bytes_one), fnv(&bytes_eight), "output hashes differ");
        assert_eq!(bytes_one, bytes_eight, "outputs differ");
        std::fs::remove_file(&one).ok();
        std::fs::remove_file(&eight).ok();
    });
}

fn fnv(bytes: &[u8]) -> u64 {
    let mut hash = 0xcbf29ce484222325u64;
    for &b in bytes {
        hash ^= b as u64;
        hash = hash.wrapping_mul(0x100000001b3);
    }
    hash
}
