//! Frictionless cart-pole with a semi-implicit Euler integrator.
//!
//! Sign convention: `theta > 0` leans the pole toward `+x`, and a positive
//! force pushes the cart toward `+x`, which gives negative angular
//! acceleration for small positive `theta`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::Scalar;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PlantError<T: std::fmt::Debug> {
    /// The state after the step, which crossed the fall angle.
    #[error("pole fell: |theta| exceeded the fall angle")]
    PoleFell(PendulumState<T>),
    #[error("invalid plant parameter: {0}")]
    BadParam(&'static str),
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct PendulumState<T> {
    /// rad, 0 = upright
    pub theta: T,
    /// rad/s
    pub omega: T,
    /// m
    pub cart_x: T,
    /// m/s
    pub cart_v: T,
    /// s
    pub t: T,
}

impl<T: Scalar> PendulumState<T> {
    pub fn at_rest(theta: T, omega: T) -> Self {
        PendulumState {
            theta,
            omega,
            cart_x: T::zero(),
            cart_v: T::zero(),
            t: T::zero(),
        }
    }

    pub fn is_finite(&self) -> bool {
        [self.theta, self.omega, self.cart_x, self.cart_v, self.t]
            .iter()
            .all(|v| v.is_finite())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlantParams<T> {
    /// kg
    pub cart_mass: T,
    /// kg
    pub pole_mass: T,
    /// m, pivot to pole center of mass
    pub half_length: T,
    /// m/s²
    pub gravity: T,
    /// s
    pub dt: T,
    /// rad; a step ending beyond this reports [`PlantError::PoleFell`].
    pub fall_angle: T,
}

impl<T: Scalar> Default for PlantParams<T> {
    fn default() -> Self {
        PlantParams {
            cart_mass: T::lit(1.0),
            pole_mass: T::lit(0.1),
            half_length: T::lit(0.5),
            gravity: T::lit(9.8),
            dt: T::lit(0.02),
            fall_angle: T::lit(0.35),
        }
    }
}

impl<T: Scalar> PlantParams<T> {
    pub fn validate(&self) -> Result<(), PlantError<T>> {
        let positive = |v: T| v.is_finite() && v > T::zero();
        if !positive(self.cart_mass) {
            return Err(PlantError::BadParam("cart_mass must be > 0"));
        }
        if !positive(self.pole_mass) {
            return Err(PlantError::BadParam("pole_mass must be > 0"));
        }
        if !positive(self.half_length) {
            return Err(PlantError::BadParam("half_length must be > 0"));
        }
        if !positive(self.gravity) {
            return Err(PlantError::BadParam("gravity must be > 0"));
        }
        if !positive(self.dt) || self.dt > T::lit(0.05) {
            return Err(PlantError::BadParam("dt must be in (0, 0.05]"));
        }
        if !positive(self.fall_angle) {
            return Err(PlantError::BadParam("fall_angle must be > 0"));
        }
        Ok(())
    }

    /// Angular and cart acceleration at `state` under `force`.
    pub fn accelerations(&self, state: &PendulumState<T>, force: T) -> (T, T) {
        let total = self.cart_mass + self.pole_mass;
        let ml = self.pole_mass * self.half_length;
        let (sin, cos) = state.theta.sin_cos();
        let w2 = state.omega * state.omega;
        let tmp = (-force - ml * w2 * sin) / total;
        let alpha = (self.gravity * sin + cos * tmp)
            / (self.half_length * (T::lit(4.0 / 3.0) - self.pole_mass * cos * cos / total));
        let accel = (force + ml * (w2 * sin - alpha * cos)) / total;
        (alpha, accel)
    }

    /// Total mechanical energy, potential measured from the pivot height.
    pub fn energy(&self, s: &PendulumState<T>) -> T {
        let total = self.cart_mass + self.pole_mass;
        let half = T::half();
        let ml = self.pole_mass * self.half_length;
        half * total * s.cart_v * s.cart_v
            + ml * s.cart_v * s.omega * s.theta.cos()
            + T::lit(2.0 / 3.0) * ml * self.half_length * s.omega * s.omega
            + ml * self.gravity * s.theta.cos()
    }
}

/// Advances one `dt` without the fall check.
pub fn advance<T: Scalar>(s: &PendulumState<T>, force: T, p: &PlantParams<T>) -> PendulumState<T> {
    let (alpha, accel) = p.accelerations(s, force);
    let omega = s.omega + alpha * p.dt;
    let cart_v = s.cart_v + accel * p.dt;
    PendulumState {
        theta: s.theta + omega * p.dt,
        omega,
        cart_x: s.cart_x + cart_v * p.dt,
        cart_v,
        t: s.t + p.dt,
    }
}

/// Advances one `dt` and reports a fall past `p.fall_angle`.
pub fn step<T: Scalar>(
    s: &PendulumState<T>,
    force: T,
    p: &PlantParams<T>,
) -> Result<PendulumState<T>, PlantError<T>> {
    let next = advance(s, force, p);
    if !next.is_finite() || next.theta.abs() > p.fall_angle {
        return Err(PlantError::PoleFell(next));
    }
    Ok(next)
}

/// Maps physical quantities to and from the normalized `[-1, 1]` universes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scaler<T> {
    /// rad
    pub theta_max: T,
    /// rad/s
    pub omega_max: T,
    /// N
    pub force_max: T,
}

impl<T: Scalar> Default for Scaler<T> {
    fn default() -> Self {
        Scaler {
            theta_max: T::lit(0.35),
            omega_max: T::lit(1.5),
            force_max: T::lit(20.0),
        }
    }
}

impl<T: Scalar> Scaler<T> {
    pub fn validate(&self) -> Result<(), PlantError<T>> {
        for (v, what) in [
            (self.theta_max, "theta_max must be > 0"),
            (self.omega_max, "omega_max must be > 0"),
            (self.force_max, "force_max must be > 0"),
        ] {
            if !(v.is_finite() && v > T::zero()) {
                return Err(PlantError::BadParam(what));
            }
        }
        Ok(())
    }

    pub fn theta(&self, theta: T) -> T {
        normalize(theta, self.theta_max).expect("validated scaler")
    }

    pub fn omega(&self, omega: T) -> T {
        normalize(omega, self.omega_max).expect("validated scaler")
    }

    pub fn denormalize_force(&self, u: T) -> T {
        u * self.force_max
    }
}

/// `clamp(value / max, -1, 1)`.
pub fn normalize<T: Scalar>(value: T, max: T) -> Result<T, PlantError<T>> {
    if max.is_nan() || max <= T::zero() {
        return Err(PlantError::BadParam("normalization bound must be > 0"));
    }
    Ok((value / max).clamp_to(-T::one(), T::one()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn params() -> PlantParams<f64> {
        PlantParams::default()
    }

    #[test]
    fn equilibrium_is_stationary() {
        let s0 = PendulumState::at_rest(0.0, 0.0);
        let s1 = step(&s0, 0.0, &params()).unwrap();
        assert_eq!(s1.theta, 0.0);
        assert_eq!(s1.omega, 0.0);
        assert_eq!(s1.cart_x, 0.0);
        assert_eq!(s1.cart_v, 0.0);
        assert_eq!(s1.t, 0.02);
    }

    #[test]
    fn open_loop_falls_away() {
        let p = params();
        let mut s = PendulumState::at_rest(0.05, 0.0);
        let mut prev = s.theta;
        for _ in 0..10 {
            s = step(&s, 0.0, &p).unwrap();
            assert!(s.theta > prev);
            prev = s.theta;
        }
    }

    #[test]
    fn positive_force_gives_negative_alpha() {
        let p = params();
        let s = PendulumState::at_rest(0.05, 0.0);
        let (alpha0, _) = p.accelerations(&s, 0.0);
        let (alpha, accel) = p.accelerations(&s, 10.0);
        assert!(alpha0 > 0.0);
        assert!(alpha < 0.0);
        assert!(accel > 0.0);

        // Hand evaluation of the angular acceleration formula.
        let (sin, cos) = 0.05f64.sin_cos();
        let tmp = (-10.0 - 0.0) / 1.1;
        let expect = (9.8 * sin + cos * tmp) / (0.5 * (4.0 / 3.0 - 0.1 * cos * cos / 1.1));
        assert!((alpha - expect).abs() < 1e-12);
    }

    #[test]
    fn fall_is_reported_with_state() {
        let p = params();
        let s = PendulumState::at_rest(0.349, 1.0);
        match step(&s, 0.0, &p) {
            Err(PlantError::PoleFell(next)) => assert!(next.theta > 0.35),
            other => panic!("expected fall, got {other:?}"),
        }
    }

    #[test]
    fn energy_drift_bounded() {
        let p = params();
        let mut s = PendulumState::at_rest(0.01, 0.0);
        let e0 = p.energy(&s);
        let mut worst: f64 = 0.0;
        for _ in 0..50 {
            s = advance(&s, 0.0, &p);
            worst = worst.max((p.energy(&s) - e0).abs() / e0);
        }
        assert!(s.theta > 0.2, "pole should have fallen visibly");
        assert!(worst < 0.02, "drift {worst}");
    }

    #[test]
    fn energy_expression_is_conserved_in_the_small_step_limit() {
        let p = PlantParams {
            dt: 0.0002,
            ..params()
        };
        let mut s = PendulumState::at_rest(0.05, 0.0);
        let e0 = p.energy(&s);
        for _ in 0..5000 {
            s = advance(&s, 0.0, &p);
        }
        assert!(s.theta > 1.0);
        assert!((p.energy(&s) - e0).abs() / e0 < 1e-3);
    }

    #[test]
    fn normalize_examples() {
        let sc = Scaler::<f64>::default();
        assert_eq!(normalize(sc.theta_max, sc.theta_max).unwrap(), 1.0);
        assert_eq!(normalize(0.0, 3.0).unwrap(), 0.0);
        assert_eq!(normalize(2.0 * sc.theta_max, sc.theta_max).unwrap(), 1.0);
        assert_eq!(normalize(-5.0, 1.0).unwrap(), -1.0);
        assert!(normalize(1.0, 0.0).is_err());
        assert!(normalize(1.0, -1.0).is_err());
        assert_eq!(sc.denormalize_force(0.5), 10.0);
    }

    #[test]
    fn validation() {
        assert!(params().validate().is_ok());
        assert!(PlantParams {
            dt: 0.1,
            ..params()
        }
        .validate()
        .is_err());
        assert!(PlantParams {
            pole_mass: 0.0,
            ..params()
        }
        .validate()
        .is_err());
        assert!(Scaler {
            force_max: -1.0,
            ..Scaler::<f64>::default()
        }
        .validate()
        .is_err());
    }

    #[test]
    fn f32_plant() {
        let p = PlantParams::<f32>::default();
        let s = step(&PendulumState::at_rest(0.01f32, 0.0), 0.0, &p).unwrap();
        assert!(s.theta > 0.01);
    }

    proptest! {
        #[test]
        fn step_is_deterministic(theta in -0.3f64..0.3, omega in -1.0f64..1.0, force in -20.0f64..20.0) {
            let p = params();
            let s = PendulumState::at_rest(theta, omega);
            let a = advance(&s, force, &p);
            let b = advance(&s, force, &p);
            prop_assert_eq!(a.theta.to_bits(), b.theta.to_bits());
            prop_assert_eq!(a.omega.to_bits(), b.omega.to_bits());
            prop_assert_eq!(a.cart_v.to_bits(), b.cart_v.to_bits());
        }

        #[test]
        fn normalize_round_trips_in_range(u in -1.0f64..=1.0, max in 0.01f64..100.0) {
            let v = u * max;
            prop_assert!((normalize(v, max).unwrap() - u).abs() < 1e-12);
        }
    }
}
