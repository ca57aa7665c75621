//! Process matrices of unitary channels and fidelities between gates.
//!
//! The channel `ρ ↦ U ρ U†` is written as `Σ_mn χ_mn E_m ρ E_n†` in the
//! two-qubit Pauli basis `E_m = σ_i ⊗ σ_j`, `m = 4i + j`, with qubit 1 the
//! major index and `σ_0..σ_3 = I, X, Y, Z`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{kron, pauli2, CMat16, CMat2, CMat4, Pauli, C64};
use crate::model::{y_rotation, z_rotation};
use crate::optimize::{Minimum, NelderMead};
use crate::unitary::{overlap_fidelity, Unitary4};

const PSD_TOL: f64 = 1e-10;
const TRACE_TOL: f64 = 1e-10;

/// Labels of the Pauli basis in χ-matrix order ("II", "IX", ..., "ZZ").
pub fn pauli_basis_labels() -> Vec<String> {
    Pauli::ALL
        .iter()
        .flat_map(|a| Pauli::ALL.iter().map(move |b| format!("{}{}", a.label(), b.label())))
        .collect()
}

fn pauli_basis() -> [CMat4; 16] {
    std::array::from_fn(|m| pauli2(Pauli::ALL[m / 4], Pauli::ALL[m % 4]))
}

/// 16×16 process matrix in the Pauli basis.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProcessMatrix {
    chi: CMat16,
}

/// Checks performed by [`ProcessMatrix::validate`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProcessMatrixReport {
    pub hermiticity_defect: f64,
    pub trace: f64,
    pub min_eigenvalue: f64,
    pub second_eigenvalue: f64,
}

impl ProcessMatrixReport {
    pub fn is_valid(&self) -> bool {
        self.hermiticity_defect < 1e-12 && (self.trace - 1.0).abs() < TRACE_TOL && self.min_eigenvalue > -PSD_TOL
    }

    pub fn is_rank_one(&self) -> bool {
        self.second_eigenvalue < PSD_TOL
    }
}

impl ProcessMatrix {
    pub fn from_matrix(chi: CMat16) -> Result<Self> {
        let pm = ProcessMatrix { chi };
        if pm.validate()?.is_valid() {
            Ok(pm)
        } else {
            Err(Error::NumericalFailure("matrix is not a valid process matrix".into()))
        }
    }

    pub fn matrix(&self) -> &CMat16 {
        &self.chi
    }

    pub fn entry(&self, m: usize, n: usize) -> C64 {
        self.chi.0[m][n]
    }

    pub fn validate(&self) -> Result<ProcessMatrixReport> {
        let hermiticity_defect = (self.chi - self.chi.adjoint()).max_abs();
        let eig = self.chi.hermitian_part().eig_hermitian()?;
        Ok(ProcessMatrixReport {
            hermiticity_defect,
            trace: self.chi.trace().re,
            min_eigenvalue: eig.values[0],
            second_eigenvalue: eig.values[14],
        })
    }

    /// Real and imaginary parts as nested rows.
    pub fn to_parts(&self) -> (Vec<Vec<f64>>, Vec<Vec<f64>>) {
        let re = self.chi.0.iter().map(|row| row.iter().map(|z| z.re).collect()).collect();
        let im = self.chi.0.iter().map(|row| row.iter().map(|z| z.im).collect()).collect();
        (re, im)
    }
}

/// Pauli amplitudes `a_m = Tr(E_m† U) / 4`.
pub fn pauli_amplitudes(u: &Unitary4) -> [C64; 16] {
    let basis = pauli_basis();
    std::array::from_fn(|m| (basis[m].adjoint() * *u.matrix()).trace() / 4.0)
}

/// `χ = a a†` for the unitary channel of `u`.
pub fn chi_of_unitary(u: &Unitary4) -> ProcessMatrix {
    let a = pauli_amplitudes(u);
    let mut chi = CMat16::zeros();
    for m in 0..16 {
        for n in 0..16 {
            chi.0[m][n] = a[m] * a[n].conj();
        }
    }
    ProcessMatrix { chi }
}

/// `Tr(χ_1 χ_2)`; for unitary channels this is the squared gate overlap.
pub fn process_fidelity(a: &ProcessMatrix, b: &ProcessMatrix) -> f64 {
    (a.chi * b.chi).trace().re
}

/// Single-qubit rotation `R_z(a) R_y(b) R_z(c)`.
pub fn euler_rotation(angles: &[f64]) -> CMat2 {
    z_rotation(angles[0]) * y_rotation(angles[1]) * z_rotation(angles[2])
}

/// Settings for the search over single-qubit rotations.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LocalSearch {
    pub restarts: usize,
    pub seed: u64,
    pub simplex: NelderMead,
    /// Fresh simplices started from the best point of each restart.
    pub polish_rounds: usize,
}

impl Default for LocalSearch {
    fn default() -> Self {
        LocalSearch { restarts: 20, seed: 0, simplex: NelderMead::default(), polish_rounds: 3 }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LocalEquivalence {
    pub fidelity: f64,
    /// `[k1, k2, k3, k4]` maximizing `|Tr((k1⊗k2) T (k3⊗k4) U†)| / 4`.
    pub rotations: [CMat2; 4],
    pub angles: Vec<f64>,
    /// False when no restart met the simplex-diameter tolerance; the best
    /// point found is still reported.
    pub converged: bool,
}

impl LocalEquivalence {
    /// `(k1⊗k2) target (k3⊗k4)`.
    pub fn dressed_target(&self, target: &Unitary4) -> Unitary4 {
        let [k1, k2, k3, k4] = self.rotations;
        Unitary4::from_exact(kron(&k1, &k2) * *target.matrix() * kron(&k3, &k4))
    }
}

fn dressed_overlap(angles: &[f64], target: &CMat4, u_dagger: &CMat4) -> f64 {
    let pre = kron(&euler_rotation(&angles[0..3]), &euler_rotation(&angles[3..6]));
    let post = kron(&euler_rotation(&angles[6..9]), &euler_rotation(&angles[9..12]));
    (pre * *target * post * *u_dagger).trace().norm() / 4.0
}

/// Best overlap between `u` and `target` dressed with single-qubit rotations.
///
/// Restart 0 starts from the identity rotations, so the result is never below
/// [`overlap_fidelity`]; the others start from seeded random angles. Restarts
/// run in parallel and the best is chosen deterministically.
pub fn local_equivalence_fidelity(u: &Unitary4, target: &Unitary4, search: &LocalSearch) -> LocalEquivalence {
    let t = *target.matrix();
    let ud = u.matrix().adjoint();
    let objective = |x: &[f64]| -dressed_overlap(x, &t, &ud);
    let restarts = search.restarts.max(1);

    let runs: Vec<(Minimum, bool)> = (0..restarts)
        .into_par_iter()
        .map(|r| {
            let x0: Vec<f64> = if r == 0 {
                vec![0.0; 12]
            } else {
                let mut rng = ChaCha8Rng::seed_from_u64(search.seed.wrapping_add(r as u64));
                (0..12).map(|_| rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI)).collect()
            };
            let mut best = search.simplex.minimize(objective, &x0);
            let mut converged = best.converged;
            for round in 0..search.polish_rounds {
                let step = search.simplex.initial_step * 0.1f64.powi(round as i32 + 1);
                let polished = NelderMead { initial_step: step, ..search.simplex }.minimize(objective, &best.x);
                converged |= polished.converged;
                if polished.value <= best.value {
                    best = polished;
                }
            }
            (best, converged)
        })
        .collect();

    let converged = runs.iter().any(|(_, c)| *c);
    let (best, _) = runs
        .into_iter()
        .enumerate()
        .min_by(|(i, a), (j, b)| a.0.value.total_cmp(&b.0.value).then(i.cmp(j)))
        .map(|(_, run)| run)
        .expect("at least one restart");
    let x = best.x;
    let rotations = [
        euler_rotation(&x[0..3]),
        euler_rotation(&x[3..6]),
        euler_rotation(&x[6..9]),
        euler_rotation(&x[9..12]),
    ];
    let fidelity = (-best.value).min(1.0).max(overlap_fidelity(u, target));
    LocalEquivalence { fidelity, rotations, angles: x, converged }
}
