//! Physical parameters and Hamiltonians.
//!
//! Each qubit sees a static field `h` along x, a static field `J` along z and
//! a drive `j cos(ω t)` along z; the qubits interact through `α σ_z ⊗ σ_z`.
//! All frequencies are angular (rad/s) and times are in seconds.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{kron, pauli2, CMat2, CMat4, Pauli, C64};
use crate::unitary::Unitary4;

/// Per-qubit physical inputs, angular frequencies in rad/s.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QubitParams {
    /// Static field along z (`J`).
    pub static_z: f64,
    /// Drive amplitude along z (`j`).
    pub drive_amplitude: f64,
    /// Static field along x (`h`).
    pub static_x: f64,
    /// Drive angular frequency (`ω`).
    pub drive_frequency: f64,
}

impl QubitParams {
    fn validate(&self, label: &str) -> Result<()> {
        let fields = [
            ("static_z", self.static_z),
            ("drive_amplitude", self.drive_amplitude),
            ("static_x", self.static_x),
            ("drive_frequency", self.drive_frequency),
        ];
        for (name, v) in fields {
            if !v.is_finite() {
                return Err(Error::InvalidParams(format!("{label}.{name} is not finite")));
            }
        }
        if self.static_x <= 0.0 {
            return Err(Error::InvalidParams(format!(
                "{label}.static_x must be positive (got {})",
                self.static_x
            )));
        }
        if self.drive_amplitude < 0.0 {
            return Err(Error::InvalidParams(format!(
                "{label}.drive_amplitude must be non-negative (got {})",
                self.drive_amplitude
            )));
        }
        if self.drive_frequency <= 0.0 {
            return Err(Error::InvalidParams(format!(
                "{label}.drive_frequency must be positive (got {})",
                self.drive_frequency
            )));
        }
        Ok(())
    }
}

/// Both qubits plus the Ising coupling `α`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SystemParams {
    pub qubits: [QubitParams; 2],
    pub coupling: f64,
}

impl SystemParams {
    pub fn validate(&self) -> Result<()> {
        self.qubits[0].validate("q1")?;
        self.qubits[1].validate("q2")?;
        if !self.coupling.is_finite() || self.coupling < 0.0 {
            return Err(Error::InvalidParams(format!(
                "coupling must be finite and non-negative (got {})",
                self.coupling
            )));
        }
        Ok(())
    }

    pub fn derive(&self) -> Result<DerivedParams> {
        self.validate()?;
        Ok(DerivedParams::from_valid(self))
    }
}

/// Quantities derived from one qubit's fields.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DerivedQubit {
    /// Total splitting `Ω = sqrt(J² + h²)`.
    pub splitting: f64,
    /// Rabi frequency `χ = h j / (4 Ω)`.
    pub rabi: f64,
    /// Tilt of the static field, `φ = arctan(J / h)`.
    pub tilt: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DerivedParams {
    pub qubits: [DerivedQubit; 2],
}

impl DerivedParams {
    fn from_valid(params: &SystemParams) -> Self {
        let qubits = params.qubits.map(|q| {
            let splitting = q.static_z.hypot(q.static_x);
            DerivedQubit {
                splitting,
                rabi: q.static_x * q.drive_amplitude / (4.0 * splitting),
                tilt: (q.static_z / q.static_x).atan(),
            }
        });
        DerivedParams { qubits }
    }

    /// `Ω_1 Ω_2`.
    pub fn splitting_product(&self) -> f64 {
        self.qubits[0].splitting * self.qubits[1].splitting
    }
}

/// Validated parameters together with their derived quantities.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Model {
    params: SystemParams,
    derived: DerivedParams,
}

/// Single-qubit operator `σ` placed on qubit `which` (0 or 1).
pub(crate) fn on_qubit(which: usize, sigma: Pauli) -> CMat4 {
    if which == 0 {
        pauli2(sigma, Pauli::I)
    } else {
        pauli2(Pauli::I, sigma)
    }
}

impl Model {
    pub fn new(params: SystemParams) -> Result<Self> {
        let derived = params.derive()?;
        Ok(Model { params, derived })
    }

    pub fn params(&self) -> &SystemParams {
        &self.params
    }

    pub fn derived(&self) -> &DerivedParams {
        &self.derived
    }

    pub fn qubit(&self, i: usize) -> &QubitParams {
        &self.params.qubits[i]
    }

    pub fn coupling(&self) -> f64 {
        self.params.coupling
    }

    /// Same system with both drive amplitudes negated (`χ_i → -χ_i`), the
    /// second half of a rotary echo. `Ω_i` and `φ_i` are unchanged.
    pub fn with_inverted_drives(&self) -> Model {
        let mut params = self.params;
        for q in &mut params.qubits {
            q.drive_amplitude = -q.drive_amplitude;
        }
        Model { params, derived: DerivedParams::from_valid(&params) }
    }

    /// Same system with a different coupling.
    pub fn with_coupling(&self, coupling: f64) -> Result<Model> {
        let mut params = self.params;
        params.coupling = coupling;
        Model::new(params)
    }

    /// Common drive frequency, or an error if the two drives differ.
    pub fn common_drive_frequency(&self) -> Result<f64> {
        let w1 = self.params.qubits[0].drive_frequency;
        let w2 = self.params.qubits[1].drive_frequency;
        if (w1 - w2).abs() <= 1e-12 * w1.abs().max(w2.abs()) {
            Ok(0.5 * (w1 + w2))
        } else {
            Err(Error::UnequalDriveFrequencies { omega1: w1, omega2: w2 })
        }
    }

    /// Largest angular frequency in the problem, `max(ω_i, Ω_i)`.
    pub fn fastest_frequency(&self) -> f64 {
        self.params
            .qubits
            .iter()
            .map(|q| q.drive_frequency)
            .chain(self.derived.qubits.iter().map(|d| d.splitting))
            .fold(0.0, f64::max)
    }

    pub fn fastest_drive_frequency(&self) -> f64 {
        self.params.qubits.iter().map(|q| q.drive_frequency).fold(0.0, f64::max)
    }

    /// Lab-frame Hamiltonian
    /// `Σ_i [(J_i + j_i cos ω_i t)/2 σ_z^(i) + h_i/2 σ_x^(i)] + α σ_zz`.
    pub fn hamiltonian_lab(&self, t: f64) -> CMat4 {
        let mut h = pauli2(Pauli::Z, Pauli::Z).scale_real(self.params.coupling);
        for (i, q) in self.params.qubits.iter().enumerate() {
            let z = 0.5 * (q.static_z + q.drive_amplitude * (q.drive_frequency * t).cos());
            h += on_qubit(i, Pauli::Z).scale_real(z);
            h += on_qubit(i, Pauli::X).scale_real(0.5 * q.static_x);
        }
        h
    }

    /// Generator in the frame whose local x axes lie along the static fields.
    pub fn hamiltonian_rotated(&self, t: f64) -> CMat4 {
        let p = &self.params;
        let d = &self.derived;
        let mut h = CMat4::zeros();
        for i in 0..2 {
            let q = &p.qubits[i];
            let dq = &d.qubits[i];
            let drive = (q.drive_frequency * t).cos();
            let x = (dq.splitting * dq.splitting + q.static_z * q.drive_amplitude * drive) / (2.0 * dq.splitting);
            h += on_qubit(i, Pauli::X).scale_real(x);
            h += on_qubit(i, Pauli::Z).scale_real(2.0 * dq.rabi * drive);
        }
        let g = p.coupling / d.splitting_product();
        let (j1, j2) = (p.qubits[0].static_z, p.qubits[1].static_z);
        let (h1, h2) = (p.qubits[0].static_x, p.qubits[1].static_x);
        h += pauli2(Pauli::X, Pauli::X).scale_real(g * j1 * j2);
        h += pauli2(Pauli::X, Pauli::Z).scale_real(g * j1 * h2);
        h += pauli2(Pauli::Z, Pauli::X).scale_real(g * j2 * h1);
        h += pauli2(Pauli::Z, Pauli::Z).scale_real(g * h1 * h2);
        h
    }

    /// `exp[(i/2)(φ_1 σ_y^(1) + φ_2 σ_y^(2))]`; `H_rotated = L† H_lab L`.
    pub fn local_frame_rotation(&self) -> Unitary4 {
        let [a, b] = self.derived.qubits.map(|q| y_rotation(-q.tilt));
        Unitary4::from_exact(kron(&a, &b))
    }
}

/// `exp(-i θ σ_y / 2)`.
pub(crate) fn y_rotation(theta: f64) -> CMat2 {
    let (s, c) = (0.5 * theta).sin_cos();
    CMat2::from_real([[c, -s], [s, c]])
}

/// `exp(-i θ σ_z / 2)`.
pub(crate) fn z_rotation(theta: f64) -> CMat2 {
    let p = C64::from_polar(1.0, -0.5 * theta);
    CMat2::diag([p, p.conj()])
}

/// `exp(-i θ σ_x / 2)`.
pub(crate) fn x_rotation(theta: f64) -> CMat2 {
    let (s, c) = (0.5 * theta).sin_cos();
    CMat2::from_rows([[C64::new(c, 0.0), C64::new(0.0, -s)], [C64::new(0.0, -s), C64::new(c, 0.0)]])
}

/// Convenience: frequency given as `f/2π` in MHz to rad/s.
pub fn mhz_to_angular(f_mhz: f64) -> f64 {
    f_mhz * 1e6 * std::f64::consts::TAU
}

pub fn angular_to_mhz(omega: f64) -> f64 {
    omega / (1e6 * std::f64::consts::TAU)
}
