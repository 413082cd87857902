//! Exit criteria. Each test prints one `criterion N: PASS|FAIL` line.

mod common;

use std::process::Command;
use std::time::{Duration, Instant};

use common::*;
use parafuzz::defuzz::{centroid_defuzz, clipped_area, reference_centroid};
use parafuzz::harness::{
    compare, run_closed_loop, ControllerSpec, Preset, RunOptions, Scenario, SettleConfig,
};
use parafuzz::rulebase::{
    format_rule_table, infer, parse_rule_table, FuzzifiedInput, DEFAULT_RULES,
};
use parafuzz::{
    make_partition, ConsequentSet, CurveKind, InferenceMode, Label, MembershipCurve, Partition,
    PlantParams, PrecomputedAreas, RuleTable, Scaler,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn report(n: u32, ok: bool, detail: String) {
    println!(
        "criterion {n}: {} {detail}",
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(ok, "criterion {n} failed: {detail}");
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn unit(kind: CurveKind) -> MembershipCurve<f64> {
    MembershipCurve::new(kind, -1.0, 0.0, 1.0).unwrap()
}

#[test]
fn criterion_01_fuzziness_table() {
    let started = Instant::now();
    let printed = [
        (CurveKind::Triangular, 0.25),
        (CurveKind::ParabolicI, 0.16),
        (CurveKind::Mixed, 0.29),
        (CurveKind::ParabolicII, 0.33),
    ];
    let mut worst: f64 = 0.0;
    let mut ok = true;
    for (kind, want) in printed {
        let c = unit(kind);
        // The area feeding the measure must itself agree with the oracle.
        let numeric = trapezoid(|x| c.eval(x).min(1.0 - c.eval(x)), -1.0, 1.0, 100_000);
        ok &= rel_err(c.intersection_area(), numeric) < 1e-6;
        let f = parafuzz::degree_of_fuzziness(&c);
        worst = worst.max((f - want).abs());
    }
    let elapsed = started.elapsed();
    ok &= worst <= 0.01 && elapsed < Duration::from_secs(1);
    report(
        1,
        ok,
        format!("max |f - printed| = {worst:.4} (tol 0.01), {elapsed:?}"),
    );
}

#[test]
fn criterion_02_oracle_equivalence() {
    let started = Instant::now();
    let mut rng = rng(2);
    let mut worst_x: f64 = 0.0;
    let mut worst_base: f64 = 0.0;
    let mut worst_clip: f64 = 0.0;
    for kind in CurveKind::ALL {
        for _ in 0..100 {
            let a = rng.gen_range(-10.0..10.0);
            let d = rng.gen_range(0.01..5.0);
            let c = MembershipCurve::new(kind, a, a + d, a + 2.0 * d).unwrap();
            let ix = trapezoid(|x| c.eval(x).min(1.0 - c.eval(x)), c.a(), c.c(), 100_000);
            let base = trapezoid(|x| c.eval(x), c.a(), c.c(), 100_000);
            worst_x = worst_x.max(rel_err(c.intersection_area(), ix));
            worst_base = worst_base.max(rel_err(c.base_area(), base));
            if kind == CurveKind::Triangular {
                let s = rng.gen_range(0.01..=1.0);
                let clip = trapezoid(|x| c.eval(x).min(s), c.a(), c.c(), 100_000);
                worst_clip = worst_clip.max(rel_err(clipped_area(&c, s).unwrap(), clip));
            }
        }
    }
    let elapsed = started.elapsed();
    let ok = worst_x < 1e-6
        && worst_base < 1e-6
        && worst_clip < 1e-6
        && elapsed < Duration::from_secs(10);
    report(
        2,
        ok,
        format!("max rel err: intersection {worst_x:.2e}, base {worst_base:.2e}, clipped {worst_clip:.2e} (tol 1e-6), {elapsed:?}"),
    );
}

#[test]
fn criterion_03_fuzziness_ordering() {
    let f = |k| parafuzz::degree_of_fuzziness(&unit(k));
    let (p2, mixed, tri, p1) = (
        f(CurveKind::ParabolicII),
        f(CurveKind::Mixed),
        f(CurveKind::Triangular),
        f(CurveKind::ParabolicI),
    );
    report(
        3,
        p2 > mixed && mixed > tri && tri > p1,
        format!(
            "ParabolicII {p2:.4} > Mixed {mixed:.4} > Triangular {tri:.4} > ParabolicI {p1:.4}"
        ),
    );
}

#[test]
fn criterion_04_inference_matches_brute_force() {
    let mut rng = rng(4);
    let mut tables = vec![RuleTable::default_table()];
    tables.extend((0..20).map(|_| random_table(&mut rng)));
    let mut checked = 0;
    let mut mismatches = 0;
    for table in &tables {
        for _ in 0..1000 {
            let a = random_degrees(&mut rng);
            let v = random_degrees(&mut rng);
            let fa = FuzzifiedInput::new(label_map(a)).unwrap();
            let fv = FuzzifiedInput::new(label_map(v)).unwrap();
            let got = infer(table, &fa, &fv);
            if got.strengths.0 != brute_force_infer(table, &a, &v) {
                mismatches += 1;
            }
            checked += 1;
        }
    }
    report(
        4,
        mismatches == 0,
        format!(
            "{checked} degree vectors over {} tables, {mismatches} mismatches",
            tables.len()
        ),
    );
}

fn presets() -> [(Partition<f64>, InferenceMode); 2] {
    [
        (
            make_partition(CurveKind::Triangular, -1.0, 1.0).unwrap(),
            InferenceMode::Clip,
        ),
        (
            make_partition(CurveKind::ParabolicII, -1.0, 1.0).unwrap(),
            InferenceMode::Scale,
        ),
    ]
}

#[test]
fn criterion_05_singletons() {
    let mut rng = rng(5);
    let mut worst: f64 = 0.0;
    for (p, mode) in presets() {
        let pre = PrecomputedAreas::new(&p);
        for label in Label::ALL {
            for _ in 0..5 {
                let strength = rng.gen_range(0.01..=1.0);
                let set = [ConsequentSet {
                    label,
                    curve: *p.curve(label),
                    strength,
                    mode,
                }];
                let center = p.curve(label).b();
                let y = centroid_defuzz(&set, &pre).unwrap();
                let r = reference_centroid(&set).unwrap();
                worst = worst.max((y - center).abs()).max((y - r).abs());
            }
        }
    }
    report(
        5,
        worst < 1e-6,
        format!("max deviation {worst:.2e} (tol 1e-6)"),
    );
}

#[test]
fn criterion_06_symmetry() {
    let mut rng = rng(6);
    let mut worst: f64 = 0.0;
    let mut n = 0;
    for (p, mode) in presets() {
        let pre = PrecomputedAreas::new(&p);
        let build = |s: &[f64; 7]| -> Vec<ConsequentSet<f64>> {
            Label::ALL
                .into_iter()
                .map(|label| ConsequentSet {
                    label,
                    curve: *p.curve(label),
                    strength: s[label.position()],
                    mode,
                })
                .collect()
        };
        while n < 1000 {
            let s = random_degrees(&mut rng);
            if s.iter().all(|&v| v == 0.0) {
                continue;
            }
            let mut neg = s;
            neg.reverse();
            let y = centroid_defuzz(&build(&s), &pre).unwrap();
            let yn = centroid_defuzz(&build(&neg), &pre).unwrap();
            worst = worst.max((y + yn).abs());
            n += 1;
        }
        n = 0;
    }
    report(
        6,
        worst < 1e-12,
        format!("1000 patterns per mode, max |y(s) + y(-s)| = {worst:.2e} (tol 1e-12)"),
    );
}

#[test]
fn criterion_07_closed_loop_stabilization() {
    let plant = PlantParams::default();
    let opts = RunOptions {
        settle: SettleConfig {
            band: 0.01,
            hold: 2.0,
        },
        measure_accuracy: false,
    };
    let mut failures = Vec::new();
    let mut slowest = Duration::ZERO;
    for preset in [Preset::Conventional, Preset::Parabolic] {
        let spec = ControllerSpec::preset(preset, RuleTable::default_table(), Scaler::default());
        for s in Scenario::default_suite() {
            let started = Instant::now();
            let out = run_closed_loop(&spec, &plant, s.theta0, s.omega0, 30.0, &opts).unwrap();
            slowest = slowest.max(started.elapsed());
            let m = &out.metrics;
            println!(
                "  {preset} theta0={:+.4}: fell={} settled={} peak={:.4} final|theta|={:.4}",
                s.theta0,
                m.fell,
                m.settled,
                m.peak_theta,
                out.trajectory.rows.last().unwrap().theta.abs()
            );
            if m.fell || !m.settled {
                failures.push(format!("{preset}@{:+.4}", s.theta0));
            }
        }
    }
    let ok = failures.is_empty() && slowest < Duration::from_secs(1);
    report(
        7,
        ok,
        format!("unsettled: {failures:?}; slowest run {slowest:?}"),
    );
}

#[test]
fn criterion_08_op_count_speed_claim() {
    let rules = RuleTable::default_table();
    let conv = ControllerSpec::preset(Preset::Conventional, rules, Scaler::default());
    let para = ControllerSpec::preset(Preset::Parabolic, rules, Scaler::default());
    let rep = compare(
        &conv,
        &para,
        &PlantParams::default(),
        &Scenario::default_suite(),
        30.0,
        &RunOptions::default(),
    );
    let json: serde_json::Value = serde_json::from_str(&rep.to_json()).unwrap();
    let mut ok = true;
    let mut ratios = Vec::new();
    for (row, jrow) in rep
        .scenarios
        .iter()
        .zip(json["scenarios"].as_array().unwrap())
    {
        let (a, b) = (row.a.as_ref().unwrap(), row.b.as_ref().unwrap());
        ok &= b.mean_ops() > 0.0 && b.mean_ops() < a.mean_ops();
        ok &= matches!((jrow["ops_ratio"].as_f64(), row.ops_ratio), (Some(j), Some(r)) if (j - r).abs() < 1e-12);
        ratios.push(row.ops_ratio.unwrap_or(f64::NAN));
    }
    report(
        8,
        ok,
        format!("conventional/parabolic ops ratio per scenario: {ratios:.3?}"),
    );
}

#[test]
fn criterion_09_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    std::fs::write(
        &cfg,
        r#"{"controller": {"preset": "conventional"}, "duration": 10.0}"#,
    )
    .unwrap();
    let run = |name: &str| {
        let out = dir.path().join(name);
        let status = Command::new(bin())
            .args(["run", "--config"])
            .arg(&cfg)
            .args(["--theta0", "0.0873", "--out"])
            .arg(&out)
            .output()
            .unwrap();
        assert!(
            status.status.success(),
            "{}",
            String::from_utf8_lossy(&status.stderr)
        );
        (
            std::fs::read(out.join("trajectory.csv")).unwrap(),
            std::fs::read(out.join("metrics.json")).unwrap(),
        )
    };
    let (a, b) = (run("a"), run("b"));
    let ok = a == b && !a.0.is_empty() && !a.1.is_empty();
    report(
        9,
        ok,
        format!(
            "trajectory.csv {} bytes, metrics.json {} bytes, identical={}",
            a.0.len(),
            a.1.len(),
            a == b
        ),
    );
}

#[test]
fn criterion_10_parser() {
    let table = parse_rule_table(DEFAULT_RULES).unwrap();
    let round = parse_rule_table(&format_rule_table(&table)).unwrap();
    let mut ok = round == table && table.len() == 7;

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    std::fs::write(
        &bad,
        DEFAULT_RULES.replacen("PS  .   .\n", "QQ  .   .\n", 1),
    )
    .unwrap();
    let out = Command::new(bin())
        .args(["run", "--duration", "1", "--rules"])
        .arg(&bad)
        .arg("--out")
        .arg(dir.path().join("o"))
        .output()
        .unwrap();
    let stderr = String::from_utf8_lossy(&out.stderr).to_string();
    ok &= !out.status.success() && stderr.contains("\"QQ\"") && stderr.contains("line 8, column");
    report(
        10,
        ok,
        format!(
            "round trip ok={}, malformed exit={:?}, stderr={}",
            round == table,
            out.status.code(),
            stderr.trim()
        ),
    );
}
