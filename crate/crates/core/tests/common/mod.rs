//! Oracles shared by the integration tests. Nothing here calls the closed-form
//! area or inference code it is used to check.
#![allow(dead_code)]

use parafuzz::{Label, LabelMap, RuleTable};
use rand::Rng;

/// Composite trapezoid rule with `panels` panels.
pub fn trapezoid(f: impl Fn(f64) -> f64, lo: f64, hi: f64, panels: usize) -> f64 {
    let h = (hi - lo) / panels as f64;
    let mut s = 0.5 * (f(lo) + f(hi));
    for i in 1..panels {
        s += f(lo + h * i as f64);
    }
    s * h
}

pub fn rel_err(got: f64, want: f64) -> f64 {
    (got - want).abs() / want.abs()
}

/// Fires every one of the 49 cells, collects the strengths landing on each
/// output label, and takes the largest.
pub fn brute_force_infer(table: &RuleTable, angle: &[f64; 7], vel: &[f64; 7]) -> [f64; 7] {
    let mut landed: Vec<Vec<f64>> = vec![Vec::new(); 7];
    for (i, row) in Label::ALL.iter().enumerate() {
        for (j, col) in Label::ALL.iter().enumerate() {
            if let Some(out) = table.get(*row, *col) {
                let w = if angle[i] < vel[j] { angle[i] } else { vel[j] };
                landed[out.position()].push(w);
            }
        }
    }
    let mut out = [0.0; 7];
    for (k, ws) in landed.iter().enumerate() {
        for &w in ws {
            if w > out[k] {
                out[k] = w;
            }
        }
    }
    out
}

pub fn random_degrees(rng: &mut impl Rng) -> [f64; 7] {
    std::array::from_fn(|_| {
        if rng.gen_bool(0.3) {
            0.0
        } else {
            rng.gen_range(0.0..=1.0)
        }
    })
}

pub fn random_table(rng: &mut impl Rng) -> RuleTable {
    let density = rng.gen_range(0.05..1.0);
    let mut t = RuleTable::empty();
    for r in Label::ALL {
        for c in Label::ALL {
            if rng.gen_bool(density) {
                t.set(r, c, Some(Label::ALL[rng.gen_range(0..7)]));
            }
        }
    }
    t
}

pub fn label_map(v: [f64; 7]) -> LabelMap<f64> {
    LabelMap(v)
}

/// Path to the built `parafuzz` binary.
pub fn bin() -> std::path::PathBuf {
    std::path::PathBuf::from(env!("CARGO_BIN_EXE_parafuzz"))
}
