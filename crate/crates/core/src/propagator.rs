//! Time-ordered propagation of `i dU/dt = H(t) U`.
//!
//! Steps are exponential midpoint steps `U <- exp(-i H(t + dt/2) dt) U`, which
//! are second-order accurate and unitary up to the accuracy of the
//! eigendecomposition. A polar projection every `renormalize_every` steps
//! removes the slow rounding drift.

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{unitary_projection, CMat4};
use crate::model::Model;
use crate::rwa::AnalyticGateKind;
use crate::unitary::{overlap_fidelity, Unitary4};
use rayon::prelude::*;

/// Minimum number of steps per drive period.
pub const MIN_STEPS_PER_PERIOD: f64 = 20.0;
/// Steps per period of the fastest frequency used by [`IntegratorConfig::default_for`].
pub const DEFAULT_STEPS_PER_PERIOD: f64 = 200.0;
pub const DEFAULT_RENORMALIZE_EVERY: usize = 1000;

/// A Hermitian generator that depends on time.
pub trait TimeDependentHamiltonian {
    fn at(&self, t: f64) -> CMat4;

    /// Fastest drive angular frequency; bounds the admissible step size.
    fn drive_frequency(&self) -> f64;
}

/// Lab-frame Hamiltonian of the model.
impl TimeDependentHamiltonian for Model {
    fn at(&self, t: f64) -> CMat4 {
        self.hamiltonian_lab(t)
    }

    fn drive_frequency(&self) -> f64 {
        self.fastest_drive_frequency()
    }
}

/// Adapts a closure `t -> H(t)` with a known fastest frequency.
pub struct FnHamiltonian<F> {
    pub f: F,
    pub frequency: f64,
}

impl<F: Fn(f64) -> CMat4> TimeDependentHamiltonian for FnHamiltonian<F> {
    fn at(&self, t: f64) -> CMat4 {
        (self.f)(t)
    }

    fn drive_frequency(&self) -> f64 {
        self.frequency
    }
}

/// `H(t + offset)`.
pub struct Shifted<'a, H: ?Sized> {
    pub inner: &'a H,
    pub offset: f64,
}

impl<H: TimeDependentHamiltonian + ?Sized> TimeDependentHamiltonian for Shifted<'_, H> {
    fn at(&self, t: f64) -> CMat4 {
        self.inner.at(t + self.offset)
    }

    fn drive_frequency(&self) -> f64 {
        self.inner.drive_frequency()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct IntegratorConfig {
    /// Maximum step in seconds; the actual step divides each interval evenly.
    pub dt: f64,
    pub renormalize_every: usize,
}

impl IntegratorConfig {
    /// `dt = (2π / max(ω_i, Ω_i)) / 200`.
    pub fn default_for(model: &Model) -> Self {
        IntegratorConfig {
            dt: TAU / model.fastest_frequency() / DEFAULT_STEPS_PER_PERIOD,
            renormalize_every: DEFAULT_RENORMALIZE_EVERY,
        }
    }

    pub fn with_dt(self, dt: f64) -> Self {
        IntegratorConfig { dt, ..self }
    }

    /// Checks `dt > 0`, at least 20 steps per drive period and a non-zero
    /// renormalization interval.
    pub fn check(&self, drive_frequency: f64) -> Result<()> {
        if !(self.dt.is_finite() && self.dt > 0.0) {
            return Err(Error::InvalidIntegrator(format!("dt must be positive (got {})", self.dt)));
        }
        if self.renormalize_every == 0 {
            return Err(Error::InvalidIntegrator("renormalize_every must be at least 1".into()));
        }
        if drive_frequency > 0.0 {
            let limit = TAU / drive_frequency / MIN_STEPS_PER_PERIOD;
            if self.dt > limit {
                return Err(Error::StepTooLarge { dt: self.dt, limit });
            }
        }
        Ok(())
    }
}

struct Stepper<'a, H: ?Sized> {
    hamiltonian: &'a H,
    cfg: IntegratorConfig,
    u: CMat4,
    t: f64,
    since_projection: usize,
    steps: u64,
}

impl<'a, H: TimeDependentHamiltonian + ?Sized> Stepper<'a, H> {
    fn new(hamiltonian: &'a H, cfg: IntegratorConfig) -> Self {
        Stepper { hamiltonian, cfg, u: CMat4::identity(), t: 0.0, since_projection: 0, steps: 0 }
    }

    /// Advances from the current time to `t_next` in equal sub-steps no larger than `dt`.
    fn advance_to(&mut self, t_next: f64) -> Result<()> {
        let span = t_next - self.t;
        if span <= 0.0 {
            return Ok(());
        }
        let n = (span / self.cfg.dt).ceil().max(1.0) as u64;
        let h = span / n as f64;
        let t0 = self.t;
        for k in 0..n {
            let mid = t0 + (k as f64 + 0.5) * h;
            let step = self.hamiltonian.at(mid).expm_unitary(h)?;
            self.u = step * self.u;
            self.since_projection += 1;
            if self.since_projection >= self.cfg.renormalize_every {
                self.u = unitary_projection(&self.u)?;
                self.since_projection = 0;
            }
        }
        self.steps += n;
        self.t = t_next;
        Ok(())
    }

    fn current(&self) -> Result<Unitary4> {
        Unitary4::new(self.u).map_err(|e| Error::NumericalFailure(format!("propagated operator at t={:e}: {e}", self.t)))
    }
}

/// `U(t_end)` with `U(0) = I`.
pub fn propagate<H: TimeDependentHamiltonian + ?Sized>(
    hamiltonian: &H,
    t_end: f64,
    cfg: &IntegratorConfig,
) -> Result<Unitary4> {
    if !(t_end.is_finite() && t_end >= 0.0) {
        return Err(Error::InvalidTimeGrid);
    }
    cfg.check(hamiltonian.drive_frequency())?;
    let mut stepper = Stepper::new(hamiltonian, *cfg);
    stepper.advance_to(t_end)?;
    stepper.current()
}

/// `U(t)` at every time of an ascending, non-negative grid, in one sweep.
pub fn propagate_grid<H: TimeDependentHamiltonian + ?Sized>(
    hamiltonian: &H,
    times: &[f64],
    cfg: &IntegratorConfig,
) -> Result<Vec<Unitary4>> {
    check_grid(times)?;
    cfg.check(hamiltonian.drive_frequency())?;
    let mut stepper = Stepper::new(hamiltonian, *cfg);
    times
        .iter()
        .map(|&t| {
            stepper.advance_to(t)?;
            stepper.current()
        })
        .collect()
}

/// Total step count and final operator, without the unitarity gate.
/// Used to measure drift over very long runs.
pub fn propagate_raw<H: TimeDependentHamiltonian + ?Sized>(
    hamiltonian: &H,
    t_end: f64,
    cfg: &IntegratorConfig,
) -> Result<(CMat4, u64)> {
    cfg.check(hamiltonian.drive_frequency())?;
    let mut stepper = Stepper::new(hamiltonian, *cfg);
    stepper.advance_to(t_end)?;
    Ok((stepper.u, stepper.steps))
}

pub(crate) fn check_grid(times: &[f64]) -> Result<()> {
    let ascending = times.windows(2).all(|w| w[0] <= w[1]);
    let valid = times.iter().all(|t| t.is_finite() && *t >= 0.0);
    if ascending && valid {
        Ok(())
    } else {
        Err(Error::InvalidTimeGrid)
    }
}

/// Numerically propagated rotary-echo gate, `U(+j, t/2) U(-j, t/2)`, each half
/// starting from drive phase zero.
pub fn propagate_echo(model: &Model, t: f64, cfg: &IntegratorConfig) -> Result<Unitary4> {
    let inverted = model.with_inverted_drives();
    let first = propagate(&inverted, 0.5 * t, cfg)?;
    let second = propagate(model, 0.5 * t, cfg)?;
    Ok(second * first)
}

/// Echo gates on a whole grid: both halves are swept once over `t/2`.
pub fn propagate_echo_grid(model: &Model, times: &[f64], cfg: &IntegratorConfig) -> Result<Vec<Unitary4>> {
    check_grid(times)?;
    let halves: Vec<f64> = times.iter().map(|t| 0.5 * t).collect();
    let inverted = model.with_inverted_drives();
    let (first, second) = rayon::join(
        || propagate_grid(&inverted, &halves, cfg),
        || propagate_grid(model, &halves, cfg),
    );
    Ok(second?.into_iter().zip(first?).map(|(b, a)| b * a).collect())
}

/// Overlap between an analytic gate and the propagated lab-frame gate along
/// a time grid, as `(t, F)` pairs. The numerical solution is swept once; the
/// analytic gates are evaluated in parallel.
pub fn overlap_trace(
    model: &Model,
    kind: AnalyticGateKind,
    echo: bool,
    t_grid: &[f64],
    cfg: &IntegratorConfig,
) -> Result<Vec<(f64, f64)>> {
    let numeric = if echo { propagate_echo_grid(model, t_grid, cfg)? } else { propagate_grid(model, t_grid, cfg)? };
    t_grid
        .par_iter()
        .zip(numeric.par_iter())
        .map(|(&t, exact)| {
            let approx = kind.evaluate_with_echo(model, t, echo)?;
            Ok((t, overlap_fidelity(&approx, exact)))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::tests::{random_params, reference_params};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn undriven_reference() -> Model {
        let mut p = reference_params();
        p.qubits[0].drive_amplitude = 0.0;
        p.qubits[1].drive_amplitude = 0.0;
        Model::new(p).unwrap()
    }

    #[test]
    fn zero_duration_is_identity() {
        let m = Model::new(reference_params()).unwrap();
        let u = propagate(&m, 0.0, &IntegratorConfig::default_for(&m)).unwrap();
        assert_eq!(u, Unitary4::identity());
    }

    #[test]
    fn constant_hamiltonian_matches_exponential() {
        let m = undriven_reference();
        let t = 37.3e-9;
        let u = propagate(&m, t, &IntegratorConfig::default_for(&m)).unwrap();
        let exact = m.hamiltonian_lab(0.0).expm_unitary(t).unwrap();
        assert!(u.matrix().max_diff(&exact) < 1e-10);
    }

    #[test]
    fn rejects_large_steps() {
        let m = Model::new(reference_params()).unwrap();
        let limit = TAU / m.fastest_drive_frequency() / MIN_STEPS_PER_PERIOD;
        let cfg = IntegratorConfig::default_for(&m).with_dt(limit * 1.01);
        assert!(matches!(propagate(&m, 1e-9, &cfg), Err(Error::StepTooLarge { .. })));
        assert!(propagate(&m, 1e-9, &cfg.with_dt(limit)).is_ok());
    }

    #[test]
    fn rejects_bad_config() {
        let m = Model::new(reference_params()).unwrap();
        let cfg = IntegratorConfig { dt: 0.0, renormalize_every: 10 };
        assert!(matches!(propagate(&m, 1e-9, &cfg), Err(Error::InvalidIntegrator(_))));
        let cfg = IntegratorConfig { dt: 1e-12, renormalize_every: 0 };
        assert!(propagate(&m, 1e-9, &cfg).is_err());
        assert!(propagate(&m, -1.0, &IntegratorConfig::default_for(&m)).is_err());
    }

    #[test]
    fn grid_matches_individual_runs() {
        let m = Model::new(reference_params()).unwrap();
        let cfg = IntegratorConfig::default_for(&m);
        let times = [0.0, 1e-9, 2.5e-9, 4e-9];
        let grid = propagate_grid(&m, &times, &cfg).unwrap();
        for (t, u) in times.iter().zip(&grid) {
            let single = propagate(&m, *t, &cfg).unwrap();
            // Sub-step boundaries differ between the two routes.
            assert!(overlap_fidelity(u, &single) > 1.0 - 1e-8);
        }
        assert!(propagate_grid(&m, &[1e-9, 0.0], &cfg).is_err());
    }

    #[test]
    fn composition_over_split_interval() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let m = Model::new(random_params(&mut rng)).unwrap();
        let cfg = IntegratorConfig::default_for(&m).with_dt(1e-3);
        let (t1, t2) = (3.0, 2.0);
        let whole = propagate(&m, t1 + t2, &cfg).unwrap();
        let first = propagate(&m, t1, &cfg).unwrap();
        let second = propagate(&Shifted { inner: &m, offset: t1 }, t2, &cfg).unwrap();
        assert!((second * first).matrix().max_diff(whole.matrix()) < 1e-9);
    }

    #[test]
    fn echo_grid_matches_single_echo() {
        let m = Model::new(reference_params()).unwrap();
        let cfg = IntegratorConfig::default_for(&m);
        let t = 6e-9;
        let grid = propagate_echo_grid(&m, &[0.0, t], &cfg).unwrap();
        let single = propagate_echo(&m, t, &cfg).unwrap();
        assert_eq!(grid[0], Unitary4::identity());
        assert!(grid[1].matrix().max_diff(single.matrix()) < 1e-12);
    }
}
