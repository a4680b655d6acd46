//! Acceptance suite: one test per criterion, each printing a PASS line with
//! its runtime. Run with `cargo test -p gaudinlab --test acceptance`
//! (`-- --nocapture` to see the lines).

use std::time::{Duration, Instant};

use gaudin_core::rings::Rat;
use gaudinlab::config::{BipartitionSpec, ExperimentConfig, ExperimentKind};
use gaudinlab::{run, Report};

fn z01() -> Vec<Rat> {
    vec![Rat::from(0), Rat::from(1)]
}

fn finish(criterion: &str, report: &Report, start: Instant, budget: Duration) {
    let elapsed = start.elapsed();
    let failures = report.failures();
    println!(
        "criterion {criterion}: {} ({} records, {:.2?})",
        if failures.is_empty() { "PASS" } else { "FAIL" },
        report.records.len(),
        elapsed
    );
    for f in &failures {
        println!("    failed: {} = {}", f.id, f.value);
    }
    assert!(failures.is_empty(), "{criterion} has failing records");
    assert!(
        elapsed < budget,
        "{criterion} exceeded its runtime budget: {elapsed:.2?} > {budget:.2?}"
    );
}

fn records_with_prefix(report: &Report, prefix: &str) -> usize {
    report
        .records
        .iter()
        .filter(|r| r.id.starts_with(prefix))
        .count()
}

#[test]
fn criterion_01_diagram_algebra() {
    let start = Instant::now();
    let mut config = ExperimentConfig::default_for(ExperimentKind::DiagramSelftest);
    config.params.max_strands = Some(4);
    config.params.count = Some(1); // functor law is criterion 2
    let report = run(&config).unwrap();
    assert_eq!(records_with_prefix(&report, "basis_count"), 4);
    assert_eq!(records_with_prefix(&report, "multiplication_table"), 4);
    finish("01 diagram-algebra", &report, start, Duration::from_secs(5));
}

#[test]
fn criterion_02_functoriality() {
    let start = Instant::now();
    let mut config = ExperimentConfig::default_for(ExperimentKind::DiagramSelftest);
    config.params.max_strands = Some(1);
    config.params.count = Some(200);
    config.params.ranks = vec![2, 3];
    let report = run(&config).unwrap();
    assert_eq!(records_with_prefix(&report, "functor_law"), 2);
    finish("02 functoriality", &report, start, Duration::from_secs(30));
}

#[test]
fn criterion_03_commutativity() {
    let start = Instant::now();
    let configs = vec![
        (vec![vec![1, 0], vec![1, 0]], 3),
        (vec![vec![1, 0], vec![0, -1]], 3),
        (vec![vec![1, 0, 0], vec![1, 1, 0]], 3),
        // ambient dimension 81, the stated cap
        (vec![vec![2, 1, 0], vec![1, 0, 0]], 3),
    ];
    let total = configs.len();
    for (weights, k_max) in configs {
        let mut config = ExperimentConfig::default_for(ExperimentKind::Commute);
        config.params.z = z01();
        config.params.weights = weights.clone();
        config.params.k_max = Some(k_max);
        let report = run(&config).unwrap();
        assert!(records_with_prefix(&report, "commutator") > 100);
        let failures = report.failures();
        assert!(
            failures.is_empty(),
            "commutators fail for {weights:?}: {failures:?}"
        );
    }
    println!(
        "criterion 03 commutativity: PASS ({total} modules, {:.2?})",
        start.elapsed()
    );
    assert!(start.elapsed() < Duration::from_secs(300));
}

#[test]
fn criterion_04_newton_vs_cdet() {
    let start = Instant::now();
    for weights in [
        vec![vec![1], vec![1]],
        vec![vec![1, 0], vec![1, 0]],
        vec![vec![1, 0, 0], vec![1, 1, 0]],
    ] {
        let mut config = ExperimentConfig::default_for(ExperimentKind::NewtonVsCdet);
        config.params.z = z01();
        config.params.weights = weights.clone();
        let report = run(&config).unwrap();
        assert!(records_with_prefix(&report, "newton_vs_cdet") > 0);
        assert!(records_with_prefix(&report, "manin") > 0);
        let failures = report.failures();
        assert!(failures.is_empty(), "{weights:?}: {failures:?}");
        if weights[0].len() == 3 {
            finish(
                "04 newton-vs-cdet",
                &report,
                start,
                Duration::from_secs(120),
            );
        }
    }
}

#[test]
fn criterion_05_binomial_relation() {
    let start = Instant::now();
    // matrix form at integer rank, up to rank 3
    for weights in [
        vec![vec![1, 0], vec![1, 0]],
        vec![vec![1, 0, 0], vec![1, 1, 0]],
    ] {
        let mut config = ExperimentConfig::default_for(ExperimentKind::NewtonVsCdet);
        config.params.z = z01();
        config.params.weights = weights.clone();
        let report = run(&config).unwrap();
        assert!(records_with_prefix(&report, "binomial_relation") > 0);
        assert!(report.failures().is_empty(), "{weights:?}");
    }
    // interpolated form, symbolic in the loop variable, small degrees
    let bip_configs: Vec<Vec<BipartitionSpec>> = vec![
        vec![
            BipartitionSpec {
                left: vec![1],
                right: vec![],
            },
            BipartitionSpec {
                left: vec![],
                right: vec![1],
            },
        ],
        vec![
            BipartitionSpec {
                left: vec![2],
                right: vec![],
            },
            BipartitionSpec {
                left: vec![1],
                right: vec![],
            },
        ],
        // total degree 4, the stated bound
        vec![
            BipartitionSpec {
                left: vec![2],
                right: vec![],
            },
            BipartitionSpec {
                left: vec![],
                right: vec![2],
            },
        ],
    ];
    for bips in bip_configs {
        let mut config = ExperimentConfig::default_for(ExperimentKind::DeligneVsMatrix);
        config.params.z = z01();
        config.params.k_max = Some(2);
        config.params.bipartitions = bips;
        config.params.ranks = vec![4];
        let report = run(&config).unwrap();
        assert!(records_with_prefix(&report, "w_binomial") > 0);
        assert!(report.failures().is_empty());
    }
    println!(
        "criterion 05 binomial-relation: PASS ({:.2?})",
        start.elapsed()
    );
    assert!(start.elapsed() < Duration::from_secs(120));
}

#[test]
fn criterion_06_deligne_matrix_transport() {
    let start = Instant::now();
    let bip_configs: Vec<Vec<BipartitionSpec>> = vec![
        vec![
            BipartitionSpec {
                left: vec![1],
                right: vec![],
            },
            BipartitionSpec {
                left: vec![1],
                right: vec![],
            },
        ],
        vec![
            BipartitionSpec {
                left: vec![1],
                right: vec![],
            },
            BipartitionSpec {
                left: vec![],
                right: vec![1],
            },
        ],
        // a projected factor on each side
        vec![
            BipartitionSpec {
                left: vec![2],
                right: vec![],
            },
            BipartitionSpec {
                left: vec![],
                right: vec![1],
            },
        ],
    ];
    for bips in bip_configs {
        let degree: usize = bips
            .iter()
            .map(|b| (b.left.iter().sum::<u32>() + b.right.iter().sum::<u32>()) as usize)
            .sum();
        let mut config = ExperimentConfig::default_for(ExperimentKind::DeligneVsMatrix);
        config.params.z = z01();
        config.params.k_max = Some(3);
        config.params.bipartitions = bips;
        config.params.ranks = vec![degree.max(2), degree.max(2) + 1];
        let report = run(&config).unwrap();
        assert!(records_with_prefix(&report, "transport") >= 20);
        assert!(report.failures().is_empty(), "{:?}", report.failures());
    }
    println!(
        "criterion 06 deligne-matrix-transport: PASS ({:.2?})",
        start.elapsed()
    );
    assert!(start.elapsed() < Duration::from_secs(180));
}

#[test]
fn criterion_07_monodromy_equivalence() {
    let start = Instant::now();
    let mut config = ExperimentConfig::default_for(ExperimentKind::MonodromyEquivalence);
    config.params.count = Some(100);
    let report = run(&config).unwrap();
    assert_eq!(records_with_prefix(&report, "equivalence"), 100);
    let law = report
        .records
        .iter()
        .find(|r| r.id == "obstruction_law_samples")
        .unwrap();
    assert!(law.value.parse::<usize>().unwrap() >= 20);
    finish(
        "07 monodromy-equivalence",
        &report,
        start,
        Duration::from_secs(60),
    );
}

#[test]
fn criterion_08_stabilized_generators() {
    let start = Instant::now();
    let bip_configs: Vec<Vec<BipartitionSpec>> = vec![
        vec![
            BipartitionSpec {
                left: vec![1],
                right: vec![],
            },
            BipartitionSpec {
                left: vec![1],
                right: vec![],
            },
        ],
        vec![
            BipartitionSpec {
                left: vec![1],
                right: vec![],
            },
            BipartitionSpec {
                left: vec![],
                right: vec![1],
            },
        ],
        vec![
            BipartitionSpec {
                left: vec![],
                right: vec![2],
            },
            BipartitionSpec {
                left: vec![1],
                right: vec![],
            },
        ],
    ];
    for bips in bip_configs {
        let mut config = ExperimentConfig::default_for(ExperimentKind::StabilizedIdeal);
        config.params.z = z01();
        config.params.bipartitions = bips.clone();
        config.params.ranks = vec![2, 3];
        let report = run(&config).unwrap();
        assert!(records_with_prefix(&report, "n=") > 0);
        assert!(
            report.failures().is_empty(),
            "{bips:?}: {:?}",
            report.failures()
        );
    }
    println!(
        "criterion 08 stabilized-generators: PASS ({:.2?})",
        start.elapsed()
    );
    assert!(start.elapsed() < Duration::from_secs(120));
}

#[test]
fn criterion_09_psdo_algebra() {
    let start = Instant::now();
    let records = gaudinlab::experiments::psdo_calculus_records(7, 100, &z01(), 8).unwrap();
    let report = Report::new("psdo-algebra", 7, records);
    for id in [
        "psdo_associativity",
        "psdo_inverse",
        "psdo_infinity_closure",
    ] {
        let r = report.records.iter().find(|r| r.id == id).unwrap();
        assert_eq!(r.value, "100/100", "{id}");
    }
    finish("09 psdo-algebra", &report, start, Duration::from_secs(60));
}

#[test]
fn criterion_10_attachment_lemmas() {
    let start = Instant::now();
    let records = gaudinlab::experiments::psdo_calculus_records(11, 50, &z01(), 6).unwrap();
    let report = Report::new("attachments", 11, records);
    for id in ["attach_row_closure", "attach_col_closure"] {
        let r = report.records.iter().find(|r| r.id == id).unwrap();
        assert_eq!(r.value, "50/50", "{id}");
    }
    finish(
        "10 attachment-lemmas",
        &report,
        start,
        Duration::from_secs(120),
    );
}

#[test]
fn criterion_11_ratio_desk_check() {
    let start = Instant::now();
    let mut config = ExperimentConfig::default_for(ExperimentKind::RatioCheck);
    config.params.z = z01();
    config.params.nu = vec![vec![2, 1], vec![1, 0]];
    config.params.eta = vec![vec![-1], vec![0]];
    config.params.depth = Some(8);
    config.params.count = Some(0);
    let report = run(&config).unwrap();
    assert!(records_with_prefix(&report, "z1/") > 5);
    assert!(records_with_prefix(&report, "z2/") > 5);
    assert!(records_with_prefix(&report, "infinity/") > 5);
    finish(
        "11 ratio-desk-check",
        &report,
        start,
        Duration::from_secs(180),
    );
}

#[test]
fn criterion_12_bethe_spectrum() {
    let start = Instant::now();
    let mut config = ExperimentConfig::default_for(ExperimentKind::BetheSpectrum);
    config.params.z = z01();
    config.params.weights = vec![vec![1, 0], vec![1, 0]];
    config.params.precision_digits = Some(50);
    config.params.tolerance_exp = Some(9);
    let report = run(&config).unwrap();
    let dims = report
        .records
        .iter()
        .find(|r| r.id == "eigenspace_dimensions")
        .unwrap();
    assert_eq!(dims.value, "[1, 3]");
    let scalar = report
        .records
        .iter()
        .find(|r| r.id == "first_generator_scalar")
        .unwrap();
    assert_eq!(scalar.value, "-1");
    assert!(records_with_prefix(&report, "monodromy_residual") == 2);
    finish("12 bethe-spectrum", &report, start, Duration::from_secs(60));
}
