//! Local invariants of two-qubit gates.
//!
//! `G1 = tr²[m] / (16 det U)` and `G2 = (tr²[m] - tr[m²]) / (4 det U)` with
//! `m = U_Bᵀ U_B` and `U_B = Q† U Q` the gate in the magic basis. Two gates
//! are equal up to single-qubit rotations iff their invariants agree.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, PI};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::linalg::{CMat4, C64, I, ONE, ZERO};
use crate::model::Model;
use crate::propagator::check_grid;
use crate::rwa::{rotary_echo, AnalyticGateKind};
use crate::unitary::Unitary4;

/// Entangling power of a gate locally equivalent to CNOT.
pub const MAX_ENTANGLING_POWER: f64 = 2.0 / 9.0;
/// Lowest entangling power of a perfect entangler.
pub const MIN_PERFECT_ENTANGLER_POWER: f64 = 1.0 / 6.0;
pub const DEFAULT_CLASSIFY_TOL: f64 = 0.05;
const BOUNDARY_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct InvariantPair {
    pub g1: C64,
    pub g2: f64,
}

impl InvariantPair {
    pub fn new(g1: C64, g2: f64) -> Self {
        InvariantPair { g1, g2 }
    }

    pub fn entangling_power(&self) -> f64 {
        entangling_power(self.g1)
    }

    pub fn is_perfect_entangler(&self) -> bool {
        is_perfect_entangler(self)
    }

    /// Largest component-wise distance to another pair.
    pub fn distance(&self, other: &InvariantPair) -> f64 {
        (self.g1 - other.g1).norm().max((self.g2 - other.g2).abs())
    }
}

/// Logical to magic (Bell) basis change.
pub fn magic_basis() -> CMat4 {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    CMat4::from_rows([
        [ONE, ZERO, ZERO, I],
        [ZERO, I, ONE, ZERO],
        [ZERO, I, -ONE, ZERO],
        [ONE, ZERO, ZERO, -I],
    ])
    .scale_real(s)
}

pub fn makhlin_invariants(u: &Unitary4) -> InvariantPair {
    let q = magic_basis();
    let ub = q.adjoint() * *u.matrix() * q;
    let m = ub.transpose() * ub;
    let det = u.det();
    let tr = m.trace();
    let tr_sq = (m * m).trace();
    let g1 = tr * tr / (16.0 * det);
    let g2 = (tr * tr - tr_sq) / (4.0 * det);
    debug_assert!(g2.im.abs() < 1e-7, "G2 imaginary part {}", g2.im);
    InvariantPair { g1, g2: g2.re }
}

/// `ep = (2/9)(1 - |G1|)`.
pub fn entangling_power(g1: C64) -> f64 {
    MAX_ENTANGLING_POWER * (1.0 - g1.norm().min(1.0))
}

/// `ep ∈ [1/6, 2/9]` and `G2 ∈ [-1, 1]`, boundaries inclusive.
pub fn is_perfect_entangler(inv: &InvariantPair) -> bool {
    let ep = inv.entangling_power();
    (MIN_PERFECT_ENTANGLER_POWER - BOUNDARY_TOL..=MAX_ENTANGLING_POWER + BOUNDARY_TOL).contains(&ep)
        && inv.g2 >= -1.0 - BOUNDARY_TOL
        && inv.g2 <= 1.0 + BOUNDARY_TOL
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GateClass {
    /// Locally equivalent to CNOT and CPHASE.
    Cnot,
    Iswap,
    Identity,
    Swap,
    Generic,
}

pub fn classify_local_equivalence(inv: &InvariantPair, tol: f64) -> GateClass {
    let g1 = inv.g1;
    let near = |target_g1: f64, target_g2: f64| (g1 - target_g1).norm() < tol && (inv.g2 - target_g2).abs() < tol;
    if near(0.0, 1.0) {
        GateClass::Cnot
    } else if near(0.0, -1.0) {
        GateClass::Iswap
    } else if near(1.0, 3.0) {
        GateClass::Identity
    } else if near(-1.0, -3.0) {
        GateClass::Swap
    } else {
        GateClass::Generic
    }
}

/// `h_1 h_2 α / (Ω_1 Ω_2)` and `J_1 J_2 α / (Ω_1 Ω_2)`, the two coupling rates
/// the closed forms depend on.
fn coupling_rates(model: &Model) -> (f64, f64) {
    let [a, b] = model.params().qubits;
    let s = model.coupling() / model.derived().splitting_product();
    (a.static_x * b.static_x * s, a.static_z * b.static_z * s)
}

/// Invariants of the equal-Rabi two-round gate.
pub fn closed_form_equal_rabi(model: &Model, t: f64) -> InvariantPair {
    let (hr, jr) = coupling_rates(model);
    let re = ((4.0 * (hr + jr) * t).cos()
        + 6.0 * (2.0 * hr * t).cos()
        + (4.0 * jr * t).cos()
        + 8.0 * ((hr + 2.0 * jr) * t).cos())
        / 16.0;
    let im = (-2.0 * (2.0 * hr * t).sin() - (4.0 * jr * t).sin() + (4.0 * (hr + jr) * t).sin()) / 16.0;
    let g2 = (2.0 * hr * t).cos() + 2.0 * ((hr + 2.0 * jr) * t).cos();
    InvariantPair { g1: C64::new(re, im), g2 }
}

/// Invariants of the ZZ gate: `G1 = cos²x`, `G2 = 2 + cos 2x`, `x = h_1h_2αt/Ω_1Ω_2`.
pub fn closed_form_zz(model: &Model, t: f64) -> InvariantPair {
    let (hr, _) = coupling_rates(model);
    let x = hr * t;
    InvariantPair { g1: C64::new(x.cos().powi(2), 0.0), g2: 2.0 + (2.0 * x).cos() }
}

/// Invariants of the XY gate for dissimilar splittings with
/// `y = J_1J_2αt/Ω_1Ω_2`: `G1 = cos⁴y`, `G2 = 1 + 2 cos 2y`.
///
/// `G1` is a fourth power: the gate `exp[-i (y/2)(σ_xx + σ_yy)]` has both
/// canonical coordinates equal, and each contributes a `cos²y` factor.
pub fn closed_form_dissimilar(model: &Model, t: f64) -> InvariantPair {
    let (_, jr) = coupling_rates(model);
    let y = jr * t;
    InvariantPair { g1: C64::new(y.cos().powi(4), 0.0), g2: 1.0 + 2.0 * (2.0 * y).cos() }
}

/// Invariants of the rotary-echoed ZZ gate, which pick up the drive phase `ωt`.
pub fn closed_form_rotary(model: &Model, t: f64) -> Result<InvariantPair> {
    let w = model.common_drive_frequency()?;
    let (hr, _) = coupling_rates(model);
    let x = hr * t;
    let c = (w * t).cos();
    let g1 = (1.0 - c + (3.0 + c) * x.cos()).powi(2) / 16.0;
    let g2 = 0.5 * (3.0 + (2.0 * x).cos() + x.cos() * (2.0 - 4.0 * c * (0.5 * x).sin().powi(2)));
    Ok(InvariantPair { g1: C64::new(g1, 0.0), g2 })
}

/// Time `t*` at which the ZZ gate is locally a CNOT (`h_1h_2αt/Ω_1Ω_2 = π/2`).
pub fn cnot_time_zz(model: &Model) -> f64 {
    FRAC_PI_2 / coupling_rates(model).0
}

/// Earliest time at which the dissimilar XY gate is locally an iSWAP
/// (`J_1J_2αt/Ω_1Ω_2 = π/2`).
pub fn iswap_time_dissimilar(model: &Model) -> f64 {
    FRAC_PI_2 / coupling_rates(model).1.abs()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EntanglingPoint {
    pub t: f64,
    pub invariants: InvariantPair,
    pub ep: f64,
    /// Slow envelope from the un-echoed ZZ invariants.
    pub ep_envelope: f64,
    pub is_perfect_entangler: bool,
}

/// Interval where the envelope lies in `[1/6, 2/9]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Window {
    pub start: f64,
    pub end: f64,
}

impl Window {
    pub fn contains(&self, t: f64) -> bool {
        self.start <= t && t <= self.end
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EntanglingTrace {
    pub points: Vec<EntanglingPoint>,
    pub windows: Vec<Window>,
}

/// Envelope windows within `[t_start, t_end]`.
///
/// The envelope is `(2/9) sin²x` with `x = h_1h_2αt/Ω_1Ω_2`, so it is at
/// least 1/6 exactly when `x mod π ∈ [π/3, 2π/3]`.
pub fn envelope_windows(model: &Model, t_start: f64, t_end: f64) -> Vec<Window> {
    let (rate, _) = coupling_rates(model);
    if rate <= 0.0 || t_end < t_start {
        return Vec::new();
    }
    let first = ((rate * t_start - 2.0 * FRAC_PI_3) / PI).ceil().max(0.0) as u64;
    let mut windows = Vec::new();
    for k in first.. {
        let base = k as f64 * PI;
        let start = (base + FRAC_PI_3) / rate;
        let end = (base + 2.0 * FRAC_PI_3) / rate;
        if start > t_end {
            break;
        }
        let w = Window { start: start.max(t_start), end: end.min(t_end) };
        if w.end >= w.start {
            windows.push(w);
        }
    }
    windows
}

/// Entangling power of a gate family along a time grid, with its envelope
/// and perfect-entangler windows. With `echo` the family is the rotary-echoed
/// `kind`; the envelope always comes from the un-echoed ZZ invariants.
pub fn entangling_power_trace_for(
    kind: AnalyticGateKind,
    echo: bool,
    model: &Model,
    t_grid: &[f64],
) -> Result<EntanglingTrace> {
    check_grid(t_grid)?;
    let points = t_grid
        .par_iter()
        .map(|&t| {
            let u = if echo { rotary_echo(kind, model, t)? } else { kind.evaluate(model, t)? };
            let invariants = makhlin_invariants(&u);
            Ok(EntanglingPoint {
                t,
                invariants,
                ep: invariants.entangling_power(),
                ep_envelope: closed_form_zz(model, t).entangling_power(),
                is_perfect_entangler: invariants.is_perfect_entangler(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let windows = match (t_grid.first(), t_grid.last()) {
        (Some(&a), Some(&b)) => envelope_windows(model, a, b),
        _ => Vec::new(),
    };
    Ok(EntanglingTrace { points, windows })
}

/// Rotary-echoed trace evaluated from the echo closed form.
pub fn entangling_power_trace(model: &Model, t_grid: &[f64]) -> Result<EntanglingTrace> {
    check_grid(t_grid)?;
    let points = t_grid
        .iter()
        .map(|&t| {
            let invariants = closed_form_rotary(model, t)?;
            Ok(EntanglingPoint {
                t,
                invariants,
                ep: invariants.entangling_power(),
                ep_envelope: closed_form_zz(model, t).entangling_power(),
                is_perfect_entangler: invariants.is_perfect_entangler(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let windows = match (t_grid.first(), t_grid.last()) {
        (Some(&a), Some(&b)) => envelope_windows(model, a, b),
        _ => Vec::new(),
    };
    Ok(EntanglingTrace { points, windows })
}
