//! The studies exposed by the command-line front end, as typed results.

use serde::{Deserialize, Serialize};

use crate::config::{RunConfig, NS};
use crate::error::Result;
use crate::invariants::{classify_local_equivalence, entangling_power_trace_for, makhlin_invariants, GateClass, DEFAULT_CLASSIFY_TOL};
use crate::linalg::CMat2;
use crate::propagator::{overlap_trace, propagate, propagate_echo};
use crate::rwa::{regime_check, AnalyticGateKind, RegimeReport};
use crate::tomography::{
    chi_of_unitary, local_equivalence_fidelity, pauli_basis_labels, process_fidelity, LocalSearch, ProcessMatrixReport,
};
use crate::unitary::{NamedGate, Unitary4};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OverlapRow {
    pub t_ns: f64,
    pub f_one_rwa: f64,
    pub f_two_rwa: f64,
}

/// Overlap of the one-round and two-round (ZZ) analytic gates with the
/// numerically propagated gate over the configured sweep.
pub fn overlap_study(cfg: &RunConfig) -> Result<Vec<OverlapRow>> {
    let model = cfg.model()?;
    let integrator = cfg.integrator(&model);
    let grid = cfg.sweep.grid();
    let one = overlap_trace(&model, AnalyticGateKind::OneRwa, cfg.echo, &grid, &integrator)?;
    let two = overlap_trace(&model, AnalyticGateKind::TwoRwaZz, cfg.echo, &grid, &integrator)?;
    Ok(one
        .into_iter()
        .zip(two)
        .map(|((t, f_one_rwa), (_, f_two_rwa))| OverlapRow { t_ns: t / NS, f_one_rwa, f_two_rwa })
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct InvariantRow {
    pub t_ns: f64,
    pub re_g1: f64,
    pub im_g1: f64,
    pub g2: f64,
    pub ep: f64,
    pub is_pe: bool,
    pub ep_envelope: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InvariantSidecar {
    pub gate_kind: AnalyticGateKind,
    pub echo: bool,
    /// `[start_ns, end_ns]` intervals where the envelope lies in `[1/6, 2/9]`.
    pub windows_ns: Vec<[f64; 2]>,
}

pub fn invariants_study(cfg: &RunConfig) -> Result<(Vec<InvariantRow>, InvariantSidecar)> {
    let model = cfg.model()?;
    let grid = cfg.sweep.grid();
    let trace = entangling_power_trace_for(cfg.gate_kind, cfg.echo, &model, &grid)?;
    let rows = trace
        .points
        .iter()
        .map(|p| InvariantRow {
            t_ns: p.t / NS,
            re_g1: p.invariants.g1.re,
            im_g1: p.invariants.g1.im,
            g2: p.invariants.g2,
            ep: p.ep,
            is_pe: p.is_perfect_entangler,
            ep_envelope: p.ep_envelope,
        })
        .collect();
    let windows_ns = trace.windows.iter().map(|w| [w.start / NS, w.end / NS]).collect();
    Ok((rows, InvariantSidecar { gate_kind: cfg.gate_kind, echo: cfg.echo, windows_ns }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GateSource {
    Analytic,
    Numeric,
}

/// A 2×2 complex matrix as separate real and imaginary rows.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplexMatrixJson {
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

impl From<&CMat2> for ComplexMatrixJson {
    fn from(m: &CMat2) -> Self {
        ComplexMatrixJson {
            re: m.0.iter().map(|r| r.iter().map(|z| z.re).collect()).collect(),
            im: m.0.iter().map(|r| r.iter().map(|z| z.im).collect()).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InvariantsJson {
    pub g1_re: f64,
    pub g1_im: f64,
    pub g2: f64,
    pub ep: f64,
    pub is_perfect_entangler: bool,
    pub class: GateClass,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TomographyReport {
    pub t_ns: f64,
    pub gate_kind: AnalyticGateKind,
    pub echo: bool,
    pub source: GateSource,
    pub target: NamedGate,
    pub basis_order: Vec<String>,
    pub basis_index: String,
    pub chi_re: Vec<Vec<f64>>,
    pub chi_im: Vec<Vec<f64>>,
    pub chi_checks: ProcessMatrixReport,
    pub invariants: InvariantsJson,
    /// Local-equivalence fidelity to the target.
    pub fidelity: f64,
    pub converged: bool,
    /// `[k1, k2, k3, k4]` with `U ≈ (k1⊗k2) target (k3⊗k4)` up to phase.
    pub local_rotations: Vec<ComplexMatrixJson>,
    /// `Tr(χ χ_target)` without local corrections.
    pub process_fidelity_to_target: f64,
}

/// Gate at time `t` from the configured analytic kind or from propagation.
pub fn gate_at(cfg: &RunConfig, t: f64, source: GateSource) -> Result<Unitary4> {
    let model = cfg.model()?;
    match source {
        GateSource::Analytic => cfg.gate_kind.evaluate_with_echo(&model, t, cfg.echo),
        GateSource::Numeric => {
            let integrator = cfg.integrator(&model);
            if cfg.echo {
                propagate_echo(&model, t, &integrator)
            } else {
                propagate(&model, t, &integrator)
            }
        }
    }
}

pub fn tomography_study(cfg: &RunConfig, target: NamedGate, source: GateSource) -> Result<TomographyReport> {
    let t = cfg.gate_time();
    let u = gate_at(cfg, t, source)?;
    let target_gate = Unitary4::named(target);
    let chi = chi_of_unitary(&u);
    let (chi_re, chi_im) = chi.to_parts();
    let inv = makhlin_invariants(&u);
    let search = LocalSearch { seed: cfg.seed, ..LocalSearch::default() };
    let local = local_equivalence_fidelity(&u, &target_gate, &search);
    Ok(TomographyReport {
        t_ns: t / NS,
        gate_kind: cfg.gate_kind,
        echo: cfg.echo,
        source,
        target,
        basis_order: pauli_basis_labels(),
        basis_index: "m = 4*i + j for sigma_i (qubit 1) x sigma_j (qubit 2), sigma = I, X, Y, Z".into(),
        chi_re,
        chi_im,
        chi_checks: chi.validate()?,
        invariants: InvariantsJson {
            g1_re: inv.g1.re,
            g1_im: inv.g1.im,
            g2: inv.g2,
            ep: inv.entangling_power(),
            is_perfect_entangler: inv.is_perfect_entangler(),
            class: classify_local_equivalence(&inv, DEFAULT_CLASSIFY_TOL),
        },
        fidelity: local.fidelity,
        converged: local.converged,
        local_rotations: local.rotations.iter().map(ComplexMatrixJson::from).collect(),
        process_fidelity_to_target: process_fidelity(&chi, &chi_of_unitary(&target_gate)),
    })
}

pub fn regime_study(cfg: &RunConfig) -> Result<RegimeReport> {
    let model = cfg.model()?;
    Ok(regime_check(&model, cfg.gate_time(), cfg.regime_threshold))
}
