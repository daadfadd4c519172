//! Acceptance suite: one test per criterion, each printing a pass/fail line
//! with its runtime. Tolerances and limits are pinned here, not configurable.

use std::time::Instant;

use jumpcode::code::{
    eight_bit_code, encode, five_bit_code, lift_word, LogicalQubit, SignedWord,
};
use jumpcode::decode::{Decoder, ScriptStep};
use jumpcode::experiments::{run_experiment, ExperimentSpec, Status, TrajectoriesParams};
use jumpcode::noise::{
    conditional_evolve_gt, decay_mixing_check, single_error_alphabet, ErrorOp,
};
use jumpcode::qsim::{fidelity_up_to_phase, rng_from_seed, SimRng};
use jumpcode::search::{
    same_code_up_to_global_signs, search_codes, SearchBudget, SearchFamily,
};
use jumpcode::verify::{
    em_orthogonality_check, error_space_dimension, five_bit_failure_scan, kl_check,
    log_log_slope, minimal_bound_n, single_error_words, sphere_bound, BoundQuery,
};

struct Criterion {
    number: u32,
    what: &'static str,
    limit_ms: u128,
    started: Instant,
}

impl Criterion {
    fn start(number: u32, what: &'static str, limit_ms: u128) -> Self {
        Self { number, what, limit_ms, started: Instant::now() }
    }

    fn finish(self) {
        let elapsed = self.started.elapsed().as_millis();
        eprintln!(
            "criterion {:2}: PASS - {} ({} ms, limit {} ms)",
            self.number, self.what, elapsed, self.limit_ms
        );
        assert!(
            elapsed <= self.limit_ms,
            "criterion {} exceeded its runtime limit: {} ms > {} ms",
            self.number,
            elapsed,
            self.limit_ms
        );
    }
}

fn random_logical(rng: &mut SimRng) -> LogicalQubit {
    use rand::Rng;
    loop {
        let a = num_complex::Complex64::new(
            2.0 * rng.random::<f64>() - 1.0,
            2.0 * rng.random::<f64>() - 1.0,
        );
        let b = num_complex::Complex64::new(
            2.0 * rng.random::<f64>() - 1.0,
            2.0 * rng.random::<f64>() - 1.0,
        );
        if a.norm_sqr() + b.norm_sqr() > 1e-2 {
            return LogicalQubit::from_unnormalized(a, b).unwrap();
        }
    }
}

fn words(pairs: &[(i8, &str)]) -> Vec<SignedWord> {
    pairs.iter().map(|&(s, w)| SignedWord::parse(s, w).unwrap()).collect()
}

#[test]
fn criterion_01_codewords_match_the_published_tables() {
    let c = Criterion::start(1, "codewords and lift match the published tables", 1);

    let published_zero = words(&[
        (1, "00001111"),
        (1, "11101000"),
        (-1, "10010110"),
        (-1, "01110001"),
        (1, "11010100"),
        (1, "00110011"),
        (1, "01001101"),
        (1, "10101010"),
    ]);
    let published_one = words(&[
        (1, "11110000"),
        (-1, "00010111"),
        (1, "01101001"),
        (-1, "10001110"),
        (-1, "00101011"),
        (1, "11001100"),
        (1, "10110010"),
        (-1, "01010101"),
    ]);

    let code = eight_bit_code();
    assert_eq!(code.zero_words, published_zero, "logical-zero words");
    assert_eq!(code.one_words, published_one, "logical-one words");

    // The lift, word by word, from the five-qubit tables.
    let five = five_bit_code();
    for (five_sw, eight_sw) in five
        .zero_words
        .iter()
        .zip(&published_zero)
        .chain(five.one_words.iter().zip(&published_one))
    {
        assert_eq!(lift_word(&five_sw.word).unwrap(), eight_sw.word);
        assert_eq!(five_sw.sign, eight_sw.sign);
    }
    c.finish();
}

#[test]
fn criterion_02_code_space_invariant_under_conditional_evolution() {
    let code = eight_bit_code();
    let c = Criterion::start(2, "conditional evolution leaves the code space invariant", 1000);
    let mut rng = rng_from_seed(0x1A5);
    for _ in 0..50 {
        let q = random_logical(&mut rng);
        let psi = encode(&code, &q).unwrap();
        for gt in [0.1, 1.0, 5.0, 10.0] {
            let evolved = conditional_evolve_gt(&psi, gt).unwrap().normalized().unwrap();
            let fid = fidelity_up_to_phase(&evolved, &psi).unwrap();
            assert!(fid > 1.0 - 1e-12, "gamma_t {gt}: fidelity {fid}");
        }
    }
    c.finish();
}

#[test]
fn criterion_03_every_single_error_is_corrected() {
    let decoder = Decoder::eight_bit().unwrap();
    let c = Criterion::start(3, "all 24 single errors corrected; table degeneracy right", 5000);
    let mut rng = rng_from_seed(0x3A3);
    for e in single_error_alphabet(8) {
        for _ in 0..50 {
            let q = random_logical(&mut rng);
            let (_, fid) = decoder.full_cycle(&q, &[ScriptStep::Error(e)], &mut rng).unwrap();
            assert!(fid > 1.0 - 1e-10, "{e}: fidelity {fid}");
        }
    }
    let table = decoder.table();
    assert_eq!(table.class_count(), 21, "distinct syndrome classes");
    for i in 1..=4usize {
        let shares_class = table.classes.values().any(|class| {
            let has = |e: ErrorOp| class.members.iter().any(|m| m.error == Some(e));
            has(ErrorOp::phase(i)) && has(ErrorOp::phase(9 - i))
        });
        assert!(shares_class, "P{i} and P{} must share a syndrome", 9 - i);
    }
    c.finish();
}

#[test]
fn criterion_04_errors_survive_decay_on_both_sides() {
    let decoder = Decoder::eight_bit().unwrap();
    let c = Criterion::start(4, "errors sandwiched between decays corrected exactly", 10_000);
    let mut rng = rng_from_seed(0x44);
    for e in single_error_alphabet(8) {
        for gb in [0.2, 1.0, 3.0] {
            for ga in [0.2, 1.0, 3.0] {
                for _ in 0..3 {
                    let q = random_logical(&mut rng);
                    let script = [
                        ScriptStep::Evolve(gb),
                        ScriptStep::Error(e),
                        ScriptStep::Evolve(ga),
                    ];
                    let (_, fid) = decoder.full_cycle(&q, &script, &mut rng).unwrap();
                    assert!(fid > 1.0 - 1e-10, "{e} between {gb}/{ga}: fidelity {fid}");
                }
            }
        }
    }
    c.finish();
}

#[test]
fn criterion_05_decay_mixing_identities_exact() {
    let code = eight_bit_code();
    let c = Criterion::start(5, "decay-mixing identities hold to 1e-12", 1000);
    let mut rng = rng_from_seed(0x55);
    let states: Vec<LogicalQubit> = (0..20).map(|_| random_logical(&mut rng)).collect();
    let mut worst: f64 = 0.0;
    for qubit in 1..=8usize {
        for gt in [0.1, 0.5, 1.0, 2.0] {
            for q in &states {
                worst = worst.max(decay_mixing_check(&code, q, qubit, gt).unwrap());
            }
        }
    }
    assert!(worst < 1e-12, "max deviation {worst}");
    c.finish();
}

#[test]
fn criterion_06_five_bit_code_fails_at_fourth_order() {
    let c = Criterion::start(6, "five-qubit failure scales as the fourth power", 5000);
    let gts: Vec<f64> = (0..9).map(|k| 1e-3 * 10f64.powf(k as f64 / 4.0)).collect();
    for q in [LogicalQubit::from_reals(0.8, 0.6).unwrap(), LogicalQubit::zero()] {
        let scan = five_bit_failure_scan(&gts, &q).unwrap();
        let slope = log_log_slope(&scan).unwrap();
        assert!((slope - 4.0).abs() <= 0.1, "slope {slope}");
    }
    let ground = five_bit_failure_scan(&[0.1, 0.5, 1.0], &LogicalQubit::zero()).unwrap();
    for (gt, infidelity) in ground {
        assert!(infidelity > 0.0, "gamma_t {gt}: infidelity {infidelity}");
    }
    c.finish();
}

#[test]
fn criterion_07_error_space_dimensions() {
    let c = Criterion::start(7, "error-space dimensions are 42 and 32", 1000);
    assert_eq!(
        error_space_dimension(&eight_bit_code(), &single_error_words(8)).unwrap(),
        42
    );
    assert_eq!(
        error_space_dimension(&five_bit_code(), &single_error_words(5)).unwrap(),
        32
    );
    c.finish();
}

#[test]
fn criterion_08_sphere_bound_minimal_width() {
    let c = Criterion::start(8, "sphere bound: minimal width 5 with equality 32 = 32", 1);
    assert_eq!(minimal_bound_n(1, 1, 1..=10), Some(5));
    let at5 = sphere_bound(BoundQuery { l: 1, n: 5, t: 1 }).unwrap();
    assert!(at5.holds);
    assert_eq!(at5.lhs, at5.rhs);
    assert_eq!(at5.lhs.to_string(), "32");
    c.finish();
}

#[test]
fn criterion_09_trajectory_ensembles() {
    // Warm the static decoder so the measured time is the ensemble itself.
    Decoder::eight_bit().unwrap();
    let c = Criterion::start(9, "single jumps corrected; double jumps can fail", 30_000);
    let spec = ExperimentSpec::Trajectories(TrajectoriesParams {
        gamma_t_total: 0.4,
        per_bucket: 1000,
        tolerance: 1e-10,
        seed: 0x900D,
        jsonl_out: None,
    });
    let report = run_experiment(&spec).unwrap();
    assert_eq!(report.status, Status::Pass, "{}", report.to_json_pretty());
    let summary = &report.results["summary"];
    assert!(summary["one_jump_min_fidelity"].as_f64().unwrap() >= 1.0 - 1e-10);
    assert_eq!(summary["two_jump_failure_exists"].as_bool(), Some(true));
    c.finish();
}

#[test]
fn criterion_10_restricted_search() {
    let c = Criterion::start(10, "search: width 6 empty, width 8 finds the code, resume works", 600_000);

    // Width 6, exhaustive: empty.
    let family6 = SearchFamily::new(6, 2).unwrap();
    let out6 = search_codes(&family6, &SearchBudget::default(), None).unwrap();
    assert!(out6.complete && out6.found.is_empty());

    // Width 8: finds a code equal to the published one up to global signs.
    let family8 = SearchFamily::new(8, 2).unwrap();
    let full = search_codes(&family8, &SearchBudget::default(), None).unwrap();
    assert!(full.complete);
    let published = eight_bit_code();
    assert!(full
        .found
        .iter()
        .any(|f| same_code_up_to_global_signs(&f.build(&family8), &published)));

    // Interrupt mid-search, resume from the progress file, and compare.
    let dir = tempfile::tempdir().unwrap();
    let progress = dir.path().join("search.progress.json");
    let partial = search_codes(
        &family8,
        &SearchBudget { max_subspaces: Some(40_000), max_millis: None },
        Some(&progress),
    )
    .unwrap();
    assert!(!partial.complete, "interruption point must fall mid-search");
    let resumed = search_codes(&family8, &SearchBudget::default(), Some(&progress)).unwrap();
    assert!(resumed.complete);
    assert_eq!(resumed.found, full.found);
    assert_eq!(resumed.stats.candidates_tested, full.stats.candidates_tested);

    c.finish();
}

#[test]
fn criterion_11_certification_checks() {
    let c = Criterion::start(11, "condition checks split the two codes as published", 1000);
    let five = five_bit_code();
    let eight = eight_bit_code();

    assert!(kl_check(&eight, &single_error_words(8)).unwrap().satisfied);
    assert!(kl_check(&five, &single_error_words(5)).unwrap().satisfied);

    let em8 = em_orthogonality_check(&eight, &single_error_words(8)).unwrap();
    assert!(!em8.satisfied);
    assert!(em8
        .colliding_pairs
        .iter()
        .any(|(a, b)| (a == "P1" && b == "P8") || (a == "P8" && b == "P1")));

    let em5 = em_orthogonality_check(&five, &single_error_words(5)).unwrap();
    assert!(em5.satisfied, "collisions: {:?}", em5.colliding_pairs);
    c.finish();
}

#[test]
fn informational_corrupted_limit_overlap() {
    // Not a pass/fail criterion: the long-time corrected state's overlap
    // with the published reference is reported for the record.
    let q = LogicalQubit::from_reals(0.6, 0.8).unwrap();
    let (_, overlap) = jumpcode::verify::corrupted_limit(20.0, &q).unwrap();
    eprintln!("informational: long-time corrected-state overlap = {overlap:.12}");
}
