use serde::Serialize;

use crate::controller::FuzzyController;
use crate::membership::{CurveKind, Label, MembershipCurve};

/// One row of the membership-family analysis.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FuzzinessRow {
    pub kind: CurveKind,
    /// Closed-form `∫ min(μ, 1-μ)`, in units of `D`.
    pub area_per_d: f64,
    /// Trapezoidal estimate of the same integral at `D = 1`.
    pub area_numeric: f64,
    pub printed_area: &'static str,
    pub printed_area_per_d: f64,
    pub area_matches_printed: bool,
    /// `area / (c - a)`
    pub fuzziness: f64,
    pub printed_fuzziness: f64,
    pub fuzziness_matches_printed: bool,
    /// `1 - area / (c - a)`, the alternative normalization, for reference.
    pub one_minus_ratio: f64,
}

const PRINTED: [(CurveKind, &str, f64, f64); 4] = [
    (CurveKind::Triangular, "D/2", 1.0 / 2.0, 0.25),
    (CurveKind::ParabolicI, "2D/3", 2.0 / 3.0, 0.16),
    (CurveKind::Mixed, "5D/12", 5.0 / 12.0, 0.29),
    (CurveKind::ParabolicII, "D/3", 1.0 / 3.0, 0.33),
];

/// Tolerance when comparing a computed fuzziness with its two-decimal
/// published value.
pub const PRINTED_TOLERANCE: f64 = 0.01;

fn trapezoid(f: impl Fn(f64) -> f64, lo: f64, hi: f64, panels: usize) -> f64 {
    let h = (hi - lo) / panels as f64;
    let inner: f64 = (1..panels).map(|i| f(lo + h * i as f64)).sum();
    (inner + 0.5 * (f(lo) + f(hi))) * h
}

pub fn fuzziness_report() -> Vec<FuzzinessRow> {
    PRINTED
        .iter()
        .map(|&(kind, printed_area, printed_area_per_d, printed_f)| {
            let curve = MembershipCurve::new(kind, -1.0, 0.0, 1.0).expect("unit curve");
            let area = curve.intersection_area();
            let numeric = trapezoid(
                |x| {
                    let m = curve.eval(x);
                    m.min(1.0 - m)
                },
                -1.0,
                1.0,
                100_000,
            );
            let f = curve.degree_of_fuzziness();
            FuzzinessRow {
                kind,
                area_per_d: area,
                area_numeric: numeric,
                printed_area,
                printed_area_per_d,
                area_matches_printed: (area - printed_area_per_d).abs() < 1e-9,
                fuzziness: f,
                printed_fuzziness: printed_f,
                fuzziness_matches_printed: (f - printed_f).abs() <= PRINTED_TOLERANCE,
                one_minus_ratio: 1.0 - f,
            }
        })
        .collect()
}

pub fn fuzziness_table(rows: &[FuzzinessRow]) -> String {
    let mut s = format!(
        "{:<13} {:>9} {:>9} {:>8} {:>6} {:>8} {:>8} {:>6} {:>8}\n",
        "kind", "area/D", "numeric", "printed", "match", "f", "printed", "match", "1-A/2D"
    );
    for r in rows {
        s.push_str(&format!(
            "{:<13} {:>9.5} {:>9.5} {:>8} {:>6} {:>8.4} {:>8.2} {:>6} {:>8.4}\n",
            r.kind.name(),
            r.area_per_d,
            r.area_numeric,
            r.printed_area,
            if r.area_matches_printed { "yes" } else { "NO" },
            r.fuzziness,
            r.printed_fuzziness,
            if r.fuzziness_matches_printed {
                "yes"
            } else {
                "NO"
            },
            r.one_minus_ratio,
        ));
    }
    s
}

/// Samples the consequent sets produced for one normalized input pair:
/// one row per `x`, columns per label plus the max-envelope.
pub fn consequent_curves(
    controller: &FuzzyController<f64>,
    angle: f64,
    vel: f64,
    samples: usize,
) -> Vec<(f64, [f64; 7], f64)> {
    let fired = controller.fire(angle, vel);
    let sets = controller.consequents(&fired);
    let out = controller.output();
    let n = samples.max(2);
    let (lo, hi) = (out.lo(), out.hi());
    (0..n)
        .map(|i| {
            let x = if i == n - 1 {
                hi
            } else {
                lo + (hi - lo) * i as f64 / (n - 1) as f64
            };
            let mut cols = [0.0; 7];
            for s in &sets {
                cols[s.label.position()] = s.eval(x);
            }
            let env = cols.iter().cloned().fold(0.0, f64::max);
            (x, cols, env)
        })
        .collect()
}

/// Column names for consequent-curve CSVs.
pub fn label_columns() -> impl Iterator<Item = &'static str> {
    Label::ALL.into_iter().map(Label::as_str)
}
