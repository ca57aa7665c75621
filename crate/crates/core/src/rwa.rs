//! Closed-form rotating-wave propagators.
//!
//! Every lab-frame gate is a product of local frame factors and the
//! exponential of a time-independent rotating-frame generator:
//!
//! ```text
//! U(t) = L · D(t) · [R(t)] · exp(-i G t) · L†
//! ```
//!
//! with `L` the static-field alignment ([`Model::local_frame_rotation`]),
//! `D(t) = exp(-i t Σ ω_i σ_x^(i) / 2)` the drive frame and, after the second
//! averaging, `R(t) = exp(-i t Σ χ_i σ_z^(i))` the Rabi frame. Products are
//! applied right to left in exactly this order.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{kron, pauli2, CMat4, Pauli};
use crate::model::{on_qubit, x_rotation, z_rotation, Model};
use crate::unitary::Unitary4;

/// The analytic solutions available for the driven, coupled pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AnalyticGateKind {
    /// Similar splittings, one averaging round (common drive).
    OneRwa,
    /// Similar splittings and Rabi frequencies, two rounds.
    TwoRwaEqualRabi,
    /// Similar splittings, distinct Rabi frequencies: pure ZZ coupling.
    TwoRwaZz,
    /// Dissimilar splittings, one averaging round.
    DissimilarOneRwa,
    /// Dissimilar splittings with equal Rabi frequencies: XY coupling.
    DissimilarEqualRabi,
}

impl AnalyticGateKind {
    pub const ALL: [AnalyticGateKind; 5] = [
        AnalyticGateKind::OneRwa,
        AnalyticGateKind::TwoRwaEqualRabi,
        AnalyticGateKind::TwoRwaZz,
        AnalyticGateKind::DissimilarOneRwa,
        AnalyticGateKind::DissimilarEqualRabi,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AnalyticGateKind::OneRwa => "one_rwa",
            AnalyticGateKind::TwoRwaEqualRabi => "two_rwa_equal_rabi",
            AnalyticGateKind::TwoRwaZz => "two_rwa_zz",
            AnalyticGateKind::DissimilarOneRwa => "dissimilar_one_rwa",
            AnalyticGateKind::DissimilarEqualRabi => "dissimilar_equal_rabi",
        }
    }

    /// Lab-frame gate of this kind at time `t`.
    pub fn evaluate(self, model: &Model, t: f64) -> Result<Unitary4> {
        match self {
            AnalyticGateKind::OneRwa => u_one_rwa(model, t),
            AnalyticGateKind::TwoRwaEqualRabi => u_two_rwa_equal_rabi(model, t),
            AnalyticGateKind::TwoRwaZz => u_two_rwa_zz(model, t),
            AnalyticGateKind::DissimilarOneRwa => u_dissimilar(model, t, false),
            AnalyticGateKind::DissimilarEqualRabi => u_dissimilar(model, t, true),
        }
    }

    /// Gate at `t`, optionally composed as a rotary echo.
    pub fn evaluate_with_echo(self, model: &Model, t: f64, echo: bool) -> Result<Unitary4> {
        if echo {
            rotary_echo(self, model, t)
        } else {
            self.evaluate(model, t)
        }
    }
}

impl fmt::Display for AnalyticGateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for AnalyticGateKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        AnalyticGateKind::ALL.into_iter().find(|k| k.name() == s).ok_or_else(|| Error::Config {
            field: "gate_kind".into(),
            reason: format!(
                "unknown gate kind `{s}` (expected one of {})",
                AnalyticGateKind::ALL.map(|k| k.name()).join(", ")
            ),
        })
    }
}

fn nonlocal_scale(model: &Model) -> f64 {
    model.coupling() / model.derived().splitting_product()
}

fn static_products(model: &Model) -> (f64, f64) {
    let [a, b] = model.params().qubits;
    (a.static_z * b.static_z, a.static_x * b.static_x)
}

/// `Σ_i [(Ω_i - ω_i)/2 σ_x^(i) + χ_i σ_z^(i)]`.
fn detuning_and_rabi(model: &Model) -> CMat4 {
    let mut g = CMat4::zeros();
    for i in 0..2 {
        let d = model.derived().qubits[i];
        let w = model.qubit(i).drive_frequency;
        g += on_qubit(i, Pauli::X).scale_real(0.5 * (d.splitting - w));
        g += on_qubit(i, Pauli::Z).scale_real(d.rabi);
    }
    g
}

/// Rotating-frame generator after one averaging round with a common drive.
pub fn generator_one_rwa(model: &Model) -> Result<CMat4> {
    model.common_drive_frequency()?;
    let (jj, hh) = static_products(model);
    let s = 0.5 * nonlocal_scale(model);
    let nonlocal = pauli2(Pauli::X, Pauli::X).scale_real(2.0 * jj)
        + (pauli2(Pauli::Y, Pauli::Y) + pauli2(Pauli::Z, Pauli::Z)).scale_real(hh);
    Ok(detuning_and_rabi(model) + nonlocal.scale_real(s))
}

/// Nonlocal generator in the Rabi frame when `|χ_1| ≈ |χ_2|`:
/// `(α/2)[(h_1h_2 + 2J_1J_2)/(2Ω_1Ω_2) (σ_xx + σ_yy) + h_1h_2/(Ω_1Ω_2) σ_zz]`.
///
/// The detuning terms are taken as negligible next to `χ_i`.
pub fn generator_equal_rabi(model: &Model) -> CMat4 {
    let (jj, hh) = static_products(model);
    let s = nonlocal_scale(model);
    let xy = (pauli2(Pauli::X, Pauli::X) + pauli2(Pauli::Y, Pauli::Y)).scale_real(0.25 * s * (hh + 2.0 * jj));
    xy + pauli2(Pauli::Z, Pauli::Z).scale_real(0.5 * s * hh)
}

/// `α h_1 h_2 / (2 Ω_1 Ω_2) σ_zz`, the coupling left when the Rabi frequencies differ.
pub fn generator_zz(model: &Model) -> CMat4 {
    let (_, hh) = static_products(model);
    pauli2(Pauli::Z, Pauli::Z).scale_real(0.5 * nonlocal_scale(model) * hh)
}

/// Rotating-frame generator for dissimilar splittings after one round:
/// only the `σ_xx` part of the coupling survives.
pub fn generator_dissimilar(model: &Model) -> CMat4 {
    let (jj, _) = static_products(model);
    detuning_and_rabi(model) + pauli2(Pauli::X, Pauli::X).scale_real(nonlocal_scale(model) * jj)
}

/// `α J_1 J_2 / (2 Ω_1 Ω_2) (σ_xx + σ_yy)`, dissimilar splittings with equal Rabi frequencies.
pub fn generator_dissimilar_equal_rabi(model: &Model) -> CMat4 {
    let (jj, _) = static_products(model);
    (pauli2(Pauli::X, Pauli::X) + pauli2(Pauli::Y, Pauli::Y)).scale_real(0.5 * nonlocal_scale(model) * jj)
}

/// `exp(-i t Σ ω_i σ_x^(i) / 2)`.
pub fn drive_frame(model: &Model, t: f64) -> Unitary4 {
    let [a, b] = [0, 1].map(|i| x_rotation(model.qubit(i).drive_frequency * t));
    Unitary4::from_exact(kron(&a, &b))
}

/// `exp(-i t Σ χ_i σ_z^(i))`.
pub fn rabi_frame(model: &Model, t: f64) -> Unitary4 {
    let [a, b] = [0, 1].map(|i| z_rotation(2.0 * model.derived().qubits[i].rabi * t));
    Unitary4::from_exact(kron(&a, &b))
}

/// `L · inner · L†`.
fn to_lab(model: &Model, inner: Unitary4) -> Unitary4 {
    let l = model.local_frame_rotation();
    l * inner * l.adjoint()
}

fn evolve(generator: &CMat4, t: f64) -> Result<Unitary4> {
    Ok(Unitary4::from_exact(generator.expm_unitary(t)?))
}

/// One averaging round, similar qubits with a common drive.
pub fn u_one_rwa(model: &Model, t: f64) -> Result<Unitary4> {
    let g = generator_one_rwa(model)?;
    Ok(to_lab(model, drive_frame(model, t) * evolve(&g, t)?))
}

/// Two rounds, Rabi frequencies equal in magnitude.
pub fn u_two_rwa_equal_rabi(model: &Model, t: f64) -> Result<Unitary4> {
    model.common_drive_frequency()?;
    let inner = drive_frame(model, t) * rabi_frame(model, t) * evolve(&generator_equal_rabi(model), t)?;
    Ok(to_lab(model, inner))
}

/// Two rounds, distinct Rabi frequencies.
pub fn u_two_rwa_zz(model: &Model, t: f64) -> Result<Unitary4> {
    model.common_drive_frequency()?;
    let inner = drive_frame(model, t) * rabi_frame(model, t) * evolve(&generator_zz(model), t)?;
    Ok(to_lab(model, inner))
}

/// Dissimilar splittings. With `equal_rabi` the second averaging round is
/// applied and the coupling becomes XY; otherwise the one-round result.
pub fn u_dissimilar(model: &Model, t: f64, equal_rabi: bool) -> Result<Unitary4> {
    let inner = if equal_rabi {
        drive_frame(model, t) * rabi_frame(model, t) * evolve(&generator_dissimilar_equal_rabi(model), t)?
    } else {
        drive_frame(model, t) * evolve(&generator_dissimilar(model), t)?
    };
    Ok(to_lab(model, inner))
}

/// Dissimilar splittings and distinct Rabi frequencies after two rounds: no
/// coupling survives, so the gate is local.
pub fn u_dissimilar_distinct_rabi(model: &Model, t: f64) -> Unitary4 {
    to_lab(model, drive_frame(model, t) * rabi_frame(model, t))
}

/// Rotary echo `U(χ, t/2) · U(-χ, t/2)`: the drive-inverted half acts first.
pub fn rotary_echo(kind: AnalyticGateKind, model: &Model, t: f64) -> Result<Unitary4> {
    if !(t.is_finite() && t >= 0.0) {
        return Err(Error::InvalidTimeGrid);
    }
    let inverted = model.with_inverted_drives();
    let first = kind.evaluate(&inverted, 0.5 * t)?;
    let second = kind.evaluate(model, 0.5 * t)?;
    Ok(second * first)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SplittingRegime {
    Similar,
    Dissimilar,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RabiRegime {
    Equal,
    Distinct,
}

/// Which analytic solution the parameters call for, with the margins of
/// every separation-of-scales assumption behind it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegimeReport {
    pub splitting: SplittingRegime,
    pub rabi: RabiRegime,
    /// Analytic solution matching the classification.
    pub recommended: Option<AnalyticGateKind>,
    /// Dimensionless ratios; `f64::MAX` stands in for an unbounded ratio.
    pub margins: BTreeMap<String, f64>,
    /// Whether each "much greater than" assumption holds at `threshold`.
    pub valid: BTreeMap<String, bool>,
    pub threshold: f64,
    pub gate_time: f64,
}

impl RegimeReport {
    pub fn all_valid(&self) -> bool {
        self.valid.values().all(|v| *v)
    }
}

pub const DEFAULT_SEPARATION_THRESHOLD: f64 = 10.0;

fn ratio(num: f64, den: f64) -> f64 {
    if den == 0.0 {
        f64::MAX
    } else {
        (num / den).min(f64::MAX)
    }
}

/// Evaluates the validity conditions of both averaging rounds.
///
/// Rabi frequencies count as equal when `||χ_1| - |χ_2|| ≤ α`; otherwise they
/// are distinct. Splittings are dissimilar when `|Ω_1 - Ω_2|` exceeds
/// `threshold · max(α, |χ_i|)`.
pub fn regime_check(model: &Model, t_gate: f64, threshold: f64) -> RegimeReport {
    let alpha = model.coupling();
    let d = model.derived().qubits;
    let chi = [d[0].rabi.abs(), d[1].rabi.abs()];
    let mismatch = (chi[0] - chi[1]).abs();
    let mut margins = BTreeMap::new();
    let mut valid = BTreeMap::new();

    for i in 0..2 {
        let w = model.qubit(i).drive_frequency;
        let detuning = (d[i].splitting - w).abs();
        let n = i + 1;
        margins.insert(format!("omega_over_detuning_q{n}"), ratio(w, detuning));
        margins.insert(format!("omega_over_rabi_q{n}"), ratio(w, chi[i]));
        margins.insert(format!("omega_over_coupling_q{n}"), ratio(w, alpha));
        margins.insert(format!("rabi_over_coupling_q{n}"), ratio(chi[i], alpha));
        margins.insert(format!("rabi_over_detuning_q{n}"), ratio(chi[i], detuning));
    }
    let scale = alpha.max(chi[0]).max(chi[1]);
    margins.insert("splitting_gap_over_scale".into(), ratio((d[0].splitting - d[1].splitting).abs(), scale));
    margins.insert("rabi_mismatch_over_coupling".into(), ratio(mismatch, alpha));
    let inverse_gate_time = if t_gate > 0.0 { 1.0 / t_gate } else { f64::MAX };
    margins.insert("inverse_gate_time_over_rabi_mismatch".into(), ratio(inverse_gate_time, mismatch));
    // Averaging window τ = π / min|χ_i|; distinct frequencies resolve when
    // their difference exceeds 2π/τ.
    let min_chi = chi[0].min(chi[1]);
    margins.insert("rabi_mismatch_over_window_rate".into(), ratio(mismatch, 2.0 * min_chi));

    for (key, margin) in margins.clone() {
        let flag = match key.as_str() {
            "rabi_mismatch_over_coupling" | "splitting_gap_over_scale" => continue,
            "rabi_mismatch_over_window_rate" => margin > 1.0,
            _ => margin >= threshold,
        };
        valid.insert(key, flag);
    }

    let splitting = if margins["splitting_gap_over_scale"] >= threshold {
        SplittingRegime::Dissimilar
    } else {
        SplittingRegime::Similar
    };
    let rabi = if mismatch <= alpha { RabiRegime::Equal } else { RabiRegime::Distinct };
    // Only the checks relevant to the selected case are kept in `valid`.
    match rabi {
        RabiRegime::Equal => {
            valid.remove("rabi_mismatch_over_window_rate");
        }
        RabiRegime::Distinct => {
            valid.remove("inverse_gate_time_over_rabi_mismatch");
        }
    }
    let common_drive = model.common_drive_frequency().is_ok();
    let recommended = match (splitting, rabi) {
        (SplittingRegime::Similar, RabiRegime::Equal) if common_drive => Some(AnalyticGateKind::TwoRwaEqualRabi),
        (SplittingRegime::Similar, RabiRegime::Distinct) if common_drive => Some(AnalyticGateKind::TwoRwaZz),
        (SplittingRegime::Similar, _) => None,
        (SplittingRegime::Dissimilar, RabiRegime::Equal) => Some(AnalyticGateKind::DissimilarEqualRabi),
        (SplittingRegime::Dissimilar, RabiRegime::Distinct) => None,
    };

    RegimeReport { splitting, rabi, recommended, margins, valid, threshold, gate_time: t_gate }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{kron_factorize, pauli_coefficients};
    use crate::model::tests::{random_params, reference_params};
    use crate::model::{mhz_to_angular, QubitParams, SystemParams};
    use crate::propagator::{propagate, IntegratorConfig};
    use crate::unitary::overlap_fidelity;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn reference() -> Model {
        Model::new(reference_params()).unwrap()
    }

    fn common_drive(mut p: SystemParams) -> SystemParams {
        p.qubits[1].drive_frequency = p.qubits[0].drive_frequency;
        p
    }

    #[test]
    fn all_kinds_are_identity_at_zero() {
        let m = reference();
        for kind in AnalyticGateKind::ALL {
            let u = kind.evaluate(&m, 0.0).unwrap();
            assert!(u.matrix().max_diff(&CMat4::identity()) < 1e-14, "{kind}");
            let e = rotary_echo(kind, &m, 0.0).unwrap();
            assert!(e.matrix().max_diff(&CMat4::identity()) < 1e-14, "{kind}");
        }
    }

    #[test]
    fn kinds_round_trip_through_names() {
        for kind in AnalyticGateKind::ALL {
            assert_eq!(kind.name().parse::<AnalyticGateKind>().unwrap(), kind);
            let json = serde_json::to_string(&kind).unwrap();
            assert_eq!(json, format!("\"{}\"", kind.name()));
        }
        assert!("three_rwa".parse::<AnalyticGateKind>().is_err());
    }

    #[test]
    fn common_drive_required() {
        let mut p = reference_params();
        p.qubits[1].drive_frequency *= 1.01;
        let m = Model::new(p).unwrap();
        for kind in [AnalyticGateKind::OneRwa, AnalyticGateKind::TwoRwaEqualRabi, AnalyticGateKind::TwoRwaZz] {
            assert!(matches!(kind.evaluate(&m, 1e-9), Err(Error::UnequalDriveFrequencies { .. })));
        }
        assert!(u_dissimilar(&m, 1e-9, false).is_ok());
        assert!(u_dissimilar(&m, 1e-9, true).is_ok());
    }

    #[test]
    fn one_rwa_generator_has_no_longitudinal_drive_term() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..20 {
            let m = Model::new(common_drive(random_params(&mut rng))).unwrap();
            let c = pauli_coefficients(&generator_one_rwa(&m).unwrap());
            let w = m.qubit(0).drive_frequency;
            let d = m.derived().qubits;
            assert_eq!(c[1][0].re, 0.5 * (d[0].splitting - w));
            assert_eq!(c[0][1].re, 0.5 * (d[1].splitting - w));
            // No σ_xz / σ_zx survive the averaging.
            assert_eq!(c[1][3].norm(), 0.0);
            assert_eq!(c[3][1].norm(), 0.0);
        }
    }

    #[test]
    fn resonant_uncoupled_undriven_gate_is_local() {
        let mut p = reference_params();
        p.coupling = 0.0;
        for q in &mut p.qubits {
            q.drive_amplitude = 0.0;
        }
        let m = Model::new(p).unwrap();
        let w = m.derived().qubits[0].splitting;
        let mut p = *m.params();
        p.qubits[0].drive_frequency = w;
        p.qubits[1].drive_frequency = w;
        let m = Model::new(p).unwrap();
        let u = u_one_rwa(&m, 123e-9).unwrap();
        let (_, _, residual) = kron_factorize(u.matrix());
        assert!(residual < 1e-12);
    }

    #[test]
    fn analytic_gates_are_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..20 {
            let m = Model::new(common_drive(random_params(&mut rng))).unwrap();
            for kind in AnalyticGateKind::ALL {
                let u = kind.evaluate(&m, 7.3).unwrap();
                assert!(u.unitarity_defect() < 1e-13, "{kind}");
            }
        }
    }

    #[test]
    fn nonlocal_factors_form_groups() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let m = Model::new(common_drive(random_params(&mut rng))).unwrap();
        for g in [generator_zz(&m), generator_equal_rabi(&m), generator_dissimilar_equal_rabi(&m)] {
            let whole = g.expm_unitary(5.0).unwrap();
            let split = g.expm_unitary(2.0).unwrap() * g.expm_unitary(3.0).unwrap();
            assert!(whole.max_diff(&split) < 1e-13);
        }
    }

    #[test]
    fn generators_commute_with_their_rabi_frame_where_expected() {
        // σ_zz commutes with any Rabi frame; σ_xx + σ_yy only with equal χ.
        let p = SystemParams {
            qubits: [QubitParams { static_z: 0.3, drive_amplitude: 0.2, static_x: 1.0, drive_frequency: 1.0 }; 2],
            coupling: 0.01,
        };
        let m = Model::new(p).unwrap();
        let r = rabi_frame(&m, 3.0);
        for g in [generator_zz(&m), generator_equal_rabi(&m)] {
            let lhs = *r.matrix() * g;
            let rhs = g * *r.matrix();
            assert!(lhs.max_diff(&rhs) < 1e-15);
        }
    }

    #[test]
    fn one_rwa_tracks_numerics_at_short_times() {
        // At small α t the right-to-left order of the frame factors is what
        // makes the analytic gate follow the lab-frame solution.
        let m = reference();
        let cfg = IntegratorConfig::default_for(&m);
        for t in [5e-9, 20e-9] {
            let exact = propagate(&m, t, &cfg).unwrap();
            let approx = u_one_rwa(&m, t).unwrap();
            assert!(overlap_fidelity(&exact, &approx) > 0.995, "t={t}");
            let swapped = to_lab(&m, evolve(&generator_one_rwa(&m).unwrap(), t).unwrap() * drive_frame(&m, t));
            assert!(overlap_fidelity(&exact, &approx) > overlap_fidelity(&exact, &swapped));
        }
    }

    #[test]
    fn echo_inverts_first_half() {
        let m = reference();
        let t = 100e-9;
        let echo = rotary_echo(AnalyticGateKind::TwoRwaZz, &m, t).unwrap();
        let expected = u_two_rwa_zz(&m, t / 2.0).unwrap() * u_two_rwa_zz(&m.with_inverted_drives(), t / 2.0).unwrap();
        assert_eq!(echo, expected);
        assert!(rotary_echo(AnalyticGateKind::TwoRwaZz, &m, -1.0).is_err());
    }

    #[test]
    fn reference_regime_is_similar_distinct() {
        let r = regime_check(&reference(), 615.7e-9, DEFAULT_SEPARATION_THRESHOLD);
        assert_eq!(r.splitting, SplittingRegime::Similar);
        assert_eq!(r.rabi, RabiRegime::Distinct);
        assert_eq!(r.recommended, Some(AnalyticGateKind::TwoRwaZz));
        for key in ["omega_over_detuning_q1", "omega_over_rabi_q1", "omega_over_coupling_q2", "omega_over_rabi_q2"] {
            assert!(r.margins[key] >= 10.0, "{key}");
            assert!(r.valid[key]);
        }
        assert!(r.margins.values().all(|m| *m >= 0.0));
    }

    #[test]
    fn identical_qubits_have_equal_rabi() {
        let q = QubitParams {
            static_z: mhz_to_angular(300.0),
            drive_amplitude: mhz_to_angular(50.0),
            static_x: mhz_to_angular(900.0),
            drive_frequency: mhz_to_angular(950.0),
        };
        let m = Model::new(SystemParams { qubits: [q; 2], coupling: mhz_to_angular(1.0) }).unwrap();
        let r = regime_check(&m, 500e-9, 10.0);
        assert_eq!(r.rabi, RabiRegime::Equal);
        assert_eq!(r.recommended, Some(AnalyticGateKind::TwoRwaEqualRabi));
        assert_eq!(r.margins["rabi_mismatch_over_coupling"], 0.0);
    }

    #[test]
    fn zero_coupling_margins_use_sentinel() {
        let m = reference().with_coupling(0.0).unwrap();
        let r = regime_check(&m, 100e-9, 10.0);
        assert_eq!(r.margins["rabi_over_coupling_q1"], f64::MAX);
        assert_eq!(r.margins["omega_over_coupling_q1"], f64::MAX);
    }

    #[test]
    fn off_resonant_drive_is_flagged() {
        let mut p = reference_params();
        for q in &mut p.qubits {
            q.drive_frequency = mhz_to_angular(1200.0);
        }
        let r = regime_check(&Model::new(p).unwrap(), 600e-9, 10.0);
        assert!(!r.valid["omega_over_detuning_q1"]);
        assert!(!r.valid["rabi_over_detuning_q2"]);
        assert!(!r.all_valid());
    }

    #[test]
    fn dissimilar_splittings_are_detected() {
        let mut p = reference_params();
        p.qubits[1].static_x = mhz_to_angular(2500.0);
        let r = regime_check(&Model::new(p).unwrap(), 600e-9, 10.0);
        assert_eq!(r.splitting, SplittingRegime::Dissimilar);
    }
}
