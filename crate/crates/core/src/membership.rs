//! Membership curves, their closed-form areas, and seven-set partitions.
//!
//! Four symmetric curve families share the geometry `a < b < c` with half-width
//! `D = b - a = c - b`. Each family is piecewise on the quarter points
//! `a, (a+b)/2, b, (b+c)/2, c` and passes through `1/2` at both midpoints.
//!
//! | kind        | base area | intersection with complement | fuzziness |
//! |-------------|-----------|------------------------------|-----------|
//! | Triangular  | `D`       | `D/2`                        | `1/4`     |
//! | ParabolicI  | `D`       | `D/3`                        | `1/6`     |
//! | Mixed       | `11D/12`  | `7D/12`                      | `7/24`    |
//! | ParabolicII | `D`       | `2D/3`                       | `1/3`     |

use std::fmt;
use std::ops::{Index, IndexMut};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::Scalar;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MembershipError {
    #[error("curve geometry must satisfy a < b < c with b - a = c - b (got a={a}, b={b}, c={c})")]
    BadGeometry { a: f64, b: f64, c: f64 },
    #[error("universe bounds must satisfy lo < hi (got lo={lo}, hi={hi})")]
    BadUniverse { lo: f64, hi: f64 },
    #[error("unknown curve kind {0:?}")]
    UnknownKind(String),
}

/// Linguistic label of a primary set, ordered from `NB` (-3) to `PB` (+3).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Label {
    NB,
    NM,
    NS,
    ZE,
    PS,
    PM,
    PB,
}

impl Label {
    pub const ALL: [Label; 7] = [
        Label::NB,
        Label::NM,
        Label::NS,
        Label::ZE,
        Label::PS,
        Label::PM,
        Label::PB,
    ];

    /// Signed index, `ZE` = 0.
    pub fn index(self) -> i32 {
        self as i32 - 3
    }

    /// Zero-based position, `NB` = 0.
    pub fn position(self) -> usize {
        self as usize
    }

    pub fn from_index(k: i32) -> Option<Label> {
        if (-3..=3).contains(&k) {
            Some(Label::ALL[(k + 3) as usize])
        } else {
            None
        }
    }

    pub fn negate(self) -> Label {
        Label::ALL[6 - self.position()]
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Label::NB => "NB",
            Label::NM => "NM",
            Label::NS => "NS",
            Label::ZE => "ZE",
            Label::PS => "PS",
            Label::PM => "PM",
            Label::PB => "PB",
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Label {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Label::ALL.into_iter().find(|l| l.as_str() == s).ok_or(())
    }
}

/// A value per label.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct LabelMap<V>(pub [V; 7]);

impl<V: Copy> LabelMap<V> {
    pub fn splat(v: V) -> Self {
        LabelMap([v; 7])
    }

    pub fn from_fn(mut f: impl FnMut(Label) -> V) -> Self {
        LabelMap(Label::ALL.map(&mut f))
    }

    pub fn iter(&self) -> impl Iterator<Item = (Label, V)> + '_ {
        Label::ALL.into_iter().zip(self.0.iter().copied())
    }

    pub fn values(&self) -> &[V; 7] {
        &self.0
    }

    /// The map with labels mirrored, `L -> -L`.
    pub fn negated(&self) -> Self {
        LabelMap::from_fn(|l| self[l.negate()])
    }
}

impl<V> Index<Label> for LabelMap<V> {
    type Output = V;

    fn index(&self, l: Label) -> &V {
        &self.0[l.position()]
    }
}

impl<V> IndexMut<Label> for LabelMap<V> {
    fn index_mut(&mut self, l: Label) -> &mut V {
        &mut self.0[l.position()]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CurveKind {
    #[serde(rename = "triangular")]
    Triangular,
    #[serde(rename = "parabolic-i")]
    ParabolicI,
    #[serde(rename = "mixed")]
    Mixed,
    #[serde(rename = "parabolic-ii")]
    ParabolicII,
}

impl CurveKind {
    pub const ALL: [CurveKind; 4] = [
        CurveKind::Triangular,
        CurveKind::ParabolicI,
        CurveKind::Mixed,
        CurveKind::ParabolicII,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CurveKind::Triangular => "triangular",
            CurveKind::ParabolicI => "parabolic-i",
            CurveKind::Mixed => "mixed",
            CurveKind::ParabolicII => "parabolic-ii",
        }
    }

    /// `∫ min(μ, 1 - μ)` over the support, in units of `D`.
    pub fn intersection_area_per_d(self) -> f64 {
        match self {
            CurveKind::Triangular => 1.0 / 2.0,
            CurveKind::ParabolicI => 1.0 / 3.0,
            CurveKind::Mixed => 7.0 / 12.0,
            CurveKind::ParabolicII => 2.0 / 3.0,
        }
    }

    /// `∫ μ` over the support, in units of `D`.
    pub fn base_area_per_d(self) -> f64 {
        match self {
            CurveKind::Mixed => 11.0 / 12.0,
            _ => 1.0,
        }
    }
}

impl fmt::Display for CurveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CurveKind {
    type Err = MembershipError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let norm: String = s
            .chars()
            .filter(|c| c.is_ascii_alphanumeric())
            .collect::<String>()
            .to_ascii_lowercase();
        match norm.as_str() {
            "triangular" | "tri" => Ok(CurveKind::Triangular),
            "parabolici" | "parabolic1" => Ok(CurveKind::ParabolicI),
            "mixed" => Ok(CurveKind::Mixed),
            "parabolicii" | "parabolic2" => Ok(CurveKind::ParabolicII),
            _ => Err(MembershipError::UnknownKind(s.to_string())),
        }
    }
}

/// One symmetric membership curve with feet `a`, `c` and peak `b`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MembershipCurve<T> {
    pub kind: CurveKind,
    a: T,
    b: T,
    c: T,
}

impl<T: Scalar> MembershipCurve<T> {
    /// Builds a curve from its feet and peak. The two half-widths must agree
    /// to a few ulps of the span.
    pub fn new(kind: CurveKind, a: T, b: T, c: T) -> Result<Self, MembershipError> {
        let left = b - a;
        let right = c - b;
        let tol = T::epsilon() * T::lit(64.0) * (c - a).abs().max(T::one());
        let ok = a.is_finite()
            && c.is_finite()
            && left > T::zero()
            && right > T::zero()
            && (left - right).abs() <= tol;
        if !ok {
            return Err(MembershipError::BadGeometry {
                a: a.to_f64().unwrap_or(f64::NAN),
                b: b.to_f64().unwrap_or(f64::NAN),
                c: c.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(MembershipCurve { kind, a, b, c })
    }

    /// Curve peaked at `b` with half-width `d`.
    pub fn centered(kind: CurveKind, b: T, d: T) -> Result<Self, MembershipError> {
        Self::new(kind, b - d, b, b + d)
    }

    pub fn a(&self) -> T {
        self.a
    }

    /// Peak abscissa; also the centroid of the curve since every family is
    /// symmetric about it.
    pub fn b(&self) -> T {
        self.b
    }

    pub fn c(&self) -> T {
        self.c
    }

    /// Half-width `D`.
    pub fn d(&self) -> T {
        self.b - self.a
    }

    /// Membership degree of `x`. Total on finite inputs, `0` outside `[a, c]`.
    pub fn eval(&self, x: T) -> T {
        let (a, b, c) = (self.a, self.b, self.c);
        if x < a || x > c {
            return T::zero();
        }
        let d = self.d();
        let d2 = d * d;
        let two = T::two();
        let half = T::half();
        let m1 = (a + b) * half;
        let m2 = (b + c) * half;
        let y = match self.kind {
            CurveKind::Triangular => {
                if x <= b {
                    (x - a) / d
                } else {
                    (c - x) / d
                }
            }
            CurveKind::ParabolicI => {
                if x <= m1 {
                    two * (x - a) * (x - a) / d2
                } else if x <= m2 {
                    T::one() - two * (x - b) * (x - b) / d2
                } else {
                    two * (x - c) * (x - c) / d2
                }
            }
            CurveKind::Mixed => {
                if x <= m1 {
                    (x - a) / d
                } else if x <= b {
                    half + two * (x - m1) * (x - m1) / d2
                } else if x <= m2 {
                    half + two * (x - m2) * (x - m2) / d2
                } else {
                    (c - x) / d
                }
            }
            CurveKind::ParabolicII => {
                if x <= m1 {
                    half - two * (x - m1) * (x - m1) / d2
                } else if x <= b {
                    half + two * (x - m1) * (x - m1) / d2
                } else if x <= m2 {
                    half + two * (x - m2) * (x - m2) / d2
                } else {
                    half - two * (x - m2) * (x - m2) / d2
                }
            }
        };
        y.clamp_to(T::zero(), T::one())
    }

    /// Area of the curve's intersection with its complement,
    /// `∫ min(μ, 1 - μ) dx` over `[a, c]`.
    pub fn intersection_area(&self) -> T {
        self.d() * T::lit(self.kind.intersection_area_per_d())
    }

    /// Area under the curve, `∫ μ dx` over `[a, c]`.
    pub fn base_area(&self) -> T {
        self.d() * T::lit(self.kind.base_area_per_d())
    }

    /// Intersection area normalized by the support width `c - a`.
    pub fn degree_of_fuzziness(&self) -> T {
        self.intersection_area() / (self.c - self.a)
    }
}

pub fn degree_of_fuzziness<T: Scalar>(curve: &MembershipCurve<T>) -> T {
    curve.degree_of_fuzziness()
}

/// Seven evenly spaced primary sets `NB..PB` over the universe `[lo, hi]`.
///
/// Edge sets keep their full symmetric shape; inputs are clamped to the
/// universe before evaluation instead.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Partition<T> {
    pub kind: CurveKind,
    lo: T,
    hi: T,
    curves: LabelMap<MembershipCurve<T>>,
}

pub fn make_partition<T: Scalar>(
    kind: CurveKind,
    lo: T,
    hi: T,
) -> Result<Partition<T>, MembershipError> {
    Partition::new(kind, lo, hi)
}

impl<T: Scalar> Partition<T> {
    pub fn new(kind: CurveKind, lo: T, hi: T) -> Result<Self, MembershipError> {
        if !lo.is_finite() || !hi.is_finite() || lo >= hi {
            return Err(MembershipError::BadUniverse {
                lo: lo.to_f64().unwrap_or(f64::NAN),
                hi: hi.to_f64().unwrap_or(f64::NAN),
            });
        }
        let d = (hi - lo) / T::lit(6.0);
        // Peaks are laid out from the midpoint so a symmetric universe gives
        // exactly mirrored peaks.
        let mid = (lo + hi) * T::half();
        let mut curves = Vec::with_capacity(7);
        for l in Label::ALL {
            let peak = mid + T::lit(l.index() as f64) * d;
            curves.push(MembershipCurve::centered(kind, peak, d)?);
        }
        let curves: [MembershipCurve<T>; 7] = curves.try_into().expect("seven curves");
        Ok(Partition {
            kind,
            lo,
            hi,
            curves: LabelMap(curves),
        })
    }

    pub fn lo(&self) -> T {
        self.lo
    }

    pub fn hi(&self) -> T {
        self.hi
    }

    /// Spacing between adjacent peaks, equal to each curve's half-width.
    pub fn spacing(&self) -> T {
        (self.hi - self.lo) / T::lit(6.0)
    }

    pub fn curve(&self, label: Label) -> &MembershipCurve<T> {
        &self.curves[label]
    }

    pub fn curves(&self) -> &LabelMap<MembershipCurve<T>> {
        &self.curves
    }

    pub fn clamp(&self, x: T) -> T {
        x.clamp_to(self.lo, self.hi)
    }

    /// Degree of every label at `x`, after clamping `x` into the universe.
    pub fn degrees(&self, x: T) -> LabelMap<T> {
        let x = self.clamp(x);
        LabelMap::from_fn(|l| self.curves[l].eval(x))
    }

    /// Samples every curve at `n` evenly spaced points across the universe,
    /// endpoints included.
    pub fn sample(&self, n: usize) -> Vec<(T, LabelMap<T>)> {
        let n = n.max(2);
        let step = (self.hi - self.lo) / T::lit((n - 1) as f64);
        (0..n)
            .map(|i| {
                let x = if i == n - 1 {
                    self.hi
                } else {
                    self.lo + step * T::lit(i as f64)
                };
                (x, self.degrees(x))
            })
            .collect()
    }
}
