//! Two-qubit unitaries and the named gates used as references.

use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{CMat4, C64, I, ONE, ZERO};

/// Maximum `|U†U - I|` accepted when wrapping a matrix as a [`Unitary4`].
pub const UNITARITY_TOL: f64 = 1e-9;

/// A 4×4 matrix known to be unitary to within [`UNITARITY_TOL`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Unitary4(CMat4);

impl Unitary4 {
    pub fn new(m: CMat4) -> Result<Self> {
        if !m.is_finite() {
            return Err(Error::NonFinite);
        }
        let defect = m.unitarity_defect();
        if defect > UNITARITY_TOL {
            return Err(Error::NonUnitaryInput { defect });
        }
        Ok(Unitary4(m))
    }

    /// Wraps a product of exponentials of Hermitian generators.
    pub(crate) fn from_exact(m: CMat4) -> Self {
        debug_assert!(m.unitarity_defect() < 1e-8, "defect {}", m.unitarity_defect());
        Unitary4(m)
    }

    pub fn identity() -> Self {
        Unitary4(CMat4::identity())
    }

    pub fn matrix(&self) -> &CMat4 {
        &self.0
    }

    pub fn into_matrix(self) -> CMat4 {
        self.0
    }

    pub fn adjoint(&self) -> Self {
        Unitary4(self.0.adjoint())
    }

    pub fn det(&self) -> C64 {
        self.0.det()
    }

    pub fn unitarity_defect(&self) -> f64 {
        self.0.unitarity_defect()
    }

    pub fn with_global_phase(&self, theta: f64) -> Self {
        Unitary4(self.0.scale(C64::from_polar(1.0, theta)))
    }

    pub fn named(gate: NamedGate) -> Self {
        let m = match gate {
            NamedGate::Identity => CMat4::identity(),
            NamedGate::Cnot => CMat4::from_real([
                [1.0, 0.0, 0.0, 0.0],
                [0.0, 1.0, 0.0, 0.0],
                [0.0, 0.0, 0.0, 1.0],
                [0.0, 0.0, 1.0, 0.0],
            ]),
            NamedGate::Cphase => CMat4::diag([ONE, ONE, ONE, -ONE]),
            NamedGate::Iswap => CMat4::from_rows([
                [ONE, ZERO, ZERO, ZERO],
                [ZERO, ZERO, I, ZERO],
                [ZERO, I, ZERO, ZERO],
                [ZERO, ZERO, ZERO, ONE],
            ]),
            NamedGate::Swap => CMat4::from_real([
                [1.0, 0.0, 0.0, 0.0],
                [0.0, 0.0, 1.0, 0.0],
                [0.0, 1.0, 0.0, 0.0],
                [0.0, 0.0, 0.0, 1.0],
            ]),
        };
        Unitary4(m)
    }
}

impl Mul for Unitary4 {
    type Output = Unitary4;

    fn mul(self, rhs: Unitary4) -> Unitary4 {
        Unitary4(self.0 * rhs.0)
    }
}

impl AsRef<CMat4> for Unitary4 {
    fn as_ref(&self) -> &CMat4 {
        &self.0
    }
}

/// Reference gates accepted as tomography targets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NamedGate {
    Identity,
    Cnot,
    Cphase,
    Iswap,
    Swap,
}

impl NamedGate {
    pub const ALL: [NamedGate; 5] =
        [NamedGate::Identity, NamedGate::Cnot, NamedGate::Cphase, NamedGate::Iswap, NamedGate::Swap];

    pub fn name(self) -> &'static str {
        match self {
            NamedGate::Identity => "identity",
            NamedGate::Cnot => "cnot",
            NamedGate::Cphase => "cphase",
            NamedGate::Iswap => "iswap",
            NamedGate::Swap => "swap",
        }
    }
}

impl fmt::Display for NamedGate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for NamedGate {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        NamedGate::ALL
            .into_iter()
            .find(|g| g.name().eq_ignore_ascii_case(s) || (s.eq_ignore_ascii_case("cz") && *g == NamedGate::Cphase))
            .ok_or_else(|| Error::Config {
                field: "target".into(),
                reason: format!("unknown gate `{s}` (expected one of identity, cnot, cphase, iswap, swap)"),
            })
    }
}

/// `F = |Tr(u† v)| / 4`, the gate overlap insensitive to global phase.
pub fn overlap_fidelity(u: &Unitary4, v: &Unitary4) -> f64 {
    let f = (u.matrix().adjoint() * *v.matrix()).trace().norm() / 4.0;
    f.min(1.0)
}
