//! Dense complex matrices of fixed small dimension.
//!
//! Everything in this crate lives in 2×2 (one qubit), 4×4 (two qubits) or
//! 16×16 (process matrices) spaces, so matrices are stack arrays indexed
//! row-major. Hermitian eigenproblems are solved with cyclic complex Jacobi
//! rotations, which converge quadratically and keep the eigenvector matrix
//! unitary to machine precision at these sizes.

use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

/// Relative tolerance used when checking that a generator is Hermitian.
pub const HERMITIAN_TOL: f64 = 1e-12;

const JACOBI_MAX_SWEEPS: usize = 64;

/// Square complex matrix of dimension `N`, stored row-major.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CMat<const N: usize>(pub [[C64; N]; N]);

pub type CMat2 = CMat<2>;
pub type CMat4 = CMat<4>;
pub type CMat16 = CMat<16>;

impl<const N: usize> Default for CMat<N> {
    fn default() -> Self {
        Self::zeros()
    }
}

impl<const N: usize> CMat<N> {
    pub const DIM: usize = N;

    pub fn zeros() -> Self {
        CMat([[ZERO; N]; N])
    }

    pub fn identity() -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            m.0[i][i] = ONE;
        }
        m
    }

    pub fn from_rows(rows: [[C64; N]; N]) -> Self {
        CMat(rows)
    }

    /// Builds a matrix from real entries.
    pub fn from_real(rows: [[f64; N]; N]) -> Self {
        let mut m = Self::zeros();
        for (i, row) in rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                m.0[i][j] = C64::new(v, 0.0);
            }
        }
        m
    }

    pub fn diag(entries: [C64; N]) -> Self {
        let mut m = Self::zeros();
        for (i, &v) in entries.iter().enumerate() {
            m.0[i][i] = v;
        }
        m
    }

    pub fn adjoint(&self) -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            for j in 0..N {
                m.0[i][j] = self.0[j][i].conj();
            }
        }
        m
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            for j in 0..N {
                m.0[i][j] = self.0[j][i];
            }
        }
        m
    }

    pub fn trace(&self) -> C64 {
        (0..N).map(|i| self.0[i][i]).sum()
    }

    pub fn scale(&self, s: C64) -> Self {
        let mut m = *self;
        m.0.iter_mut().flatten().for_each(|z| *z *= s);
        m
    }

    pub fn scale_real(&self, s: f64) -> Self {
        self.scale(C64::new(s, 0.0))
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.0.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Max-norm distance `max |a_ij - b_ij|`.
    pub fn max_diff(&self, other: &Self) -> f64 {
        (*self - *other).max_abs()
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().flatten().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Max-norm of `A - A†` relative to the largest entry (zero for the zero matrix).
    pub fn hermiticity_defect(&self) -> f64 {
        let scale = self.max_abs();
        if scale == 0.0 {
            return 0.0;
        }
        (*self - self.adjoint()).max_abs() / scale
    }

    pub fn is_hermitian(&self, rel_tol: f64) -> bool {
        self.hermiticity_defect() <= rel_tol
    }

    /// `max |A†A - I|`.
    pub fn unitarity_defect(&self) -> f64 {
        (self.adjoint() * *self).max_diff(&Self::identity())
    }

    /// `(A + A†) / 2`.
    pub fn hermitian_part(&self) -> Self {
        (*self + self.adjoint()).scale_real(0.5)
    }

    /// Determinant by LU decomposition with partial pivoting.
    pub fn det(&self) -> C64 {
        let mut a = self.0;
        let mut det = ONE;
        for col in 0..N {
            let pivot = (col..N)
                .max_by(|&r, &s| a[r][col].norm().total_cmp(&a[s][col].norm()))
                .unwrap_or(col);
            if a[pivot][col] == ZERO {
                return ZERO;
            }
            if pivot != col {
                a.swap(pivot, col);
                det = -det;
            }
            let p = a[col][col];
            det *= p;
            for r in col + 1..N {
                let factor = a[r][col] / p;
                if factor != ZERO {
                    for c in col..N {
                        let v = a[col][c];
                        a[r][c] -= factor * v;
                    }
                }
            }
        }
        det
    }

    /// Hermitian eigendecomposition `A = V diag(λ) V†`, eigenvalues ascending.
    pub fn eig_hermitian(&self) -> Result<EigenDecomposition<N>> {
        if !self.is_finite() {
            return Err(Error::NonFinite);
        }
        let defect = self.hermiticity_defect();
        if defect > HERMITIAN_TOL {
            return Err(Error::NonHermitianInput { defect });
        }
        Ok(jacobi_eigen(self.hermitian_part()))
    }

    /// `exp(-i H t)` for Hermitian `H`, via its eigendecomposition.
    pub fn expm_unitary(&self, t: f64) -> Result<Self> {
        let eig = self.eig_hermitian()?;
        Ok(eig.map_spectrum(|lambda| C64::from_polar(1.0, -lambda * t)))
    }
}

impl<const N: usize> Index<(usize, usize)> for CMat<N> {
    type Output = C64;

    fn index(&self, (r, c): (usize, usize)) -> &C64 {
        &self.0[r][c]
    }
}

impl<const N: usize> IndexMut<(usize, usize)> for CMat<N> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut C64 {
        &mut self.0[r][c]
    }
}

impl<const N: usize> Add for CMat<N> {
    type Output = Self;

    fn add(mut self, rhs: Self) -> Self {
        self += rhs;
        self
    }
}

impl<const N: usize> AddAssign for CMat<N> {
    fn add_assign(&mut self, rhs: Self) {
        for (a, b) in self.0.iter_mut().flatten().zip(rhs.0.iter().flatten()) {
            *a += b;
        }
    }
}

impl<const N: usize> Sub for CMat<N> {
    type Output = Self;

    fn sub(mut self, rhs: Self) -> Self {
        for (a, b) in self.0.iter_mut().flatten().zip(rhs.0.iter().flatten()) {
            *a -= b;
        }
        self
    }
}

impl<const N: usize> Neg for CMat<N> {
    type Output = Self;

    fn neg(self) -> Self {
        self.scale_real(-1.0)
    }
}

impl<const N: usize> Mul for CMat<N> {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        let mut out = Self::zeros();
        for i in 0..N {
            for k in 0..N {
                let a = self.0[i][k];
                if a == ZERO {
                    continue;
                }
                for j in 0..N {
                    out.0[i][j] += a * rhs.0[k][j];
                }
            }
        }
        out
    }
}

impl<const N: usize> Mul<f64> for CMat<N> {
    type Output = Self;

    fn mul(self, rhs: f64) -> Self {
        self.scale_real(rhs)
    }
}

impl<const N: usize> Mul<C64> for CMat<N> {
    type Output = Self;

    fn mul(self, rhs: C64) -> Self {
        self.scale(rhs)
    }
}

/// Result of [`CMat::eig_hermitian`].
#[derive(Clone, Copy, Debug)]
pub struct EigenDecomposition<const N: usize> {
    /// Ascending eigenvalues.
    pub values: [f64; N],
    /// Column `k` is the eigenvector of `values[k]`.
    pub vectors: CMat<N>,
}

impl<const N: usize> EigenDecomposition<N> {
    /// `V f(Λ) V†`.
    pub fn map_spectrum(&self, f: impl Fn(f64) -> C64) -> CMat<N> {
        let weights: [C64; N] = std::array::from_fn(|k| f(self.values[k]));
        let v = &self.vectors;
        let mut out = CMat::<N>::zeros();
        for i in 0..N {
            for j in 0..N {
                out.0[i][j] = (0..N).map(|k| v.0[i][k] * weights[k] * v.0[j][k].conj()).sum();
            }
        }
        out
    }

    pub fn reconstruct(&self) -> CMat<N> {
        self.map_spectrum(|l| C64::new(l, 0.0))
    }
}

fn off_diagonal_norm<const N: usize>(a: &CMat<N>) -> f64 {
    let mut s = 0.0;
    for i in 0..N {
        for j in 0..N {
            if i != j {
                s += a.0[i][j].norm_sqr();
            }
        }
    }
    s.sqrt()
}

fn jacobi_eigen<const N: usize>(mut a: CMat<N>) -> EigenDecomposition<N> {
    let mut v = CMat::<N>::identity();
    let scale = a.max_abs();
    if scale > 0.0 {
        let target = f64::EPSILON * scale * 1e-3;
        let mut previous = f64::INFINITY;
        for _ in 0..JACOBI_MAX_SWEEPS {
            let off = off_diagonal_norm(&a);
            // Stalls at the rounding floor once the diagonal has converged.
            if off <= target || off >= previous {
                break;
            }
            previous = off;
            for p in 0..N {
                for q in p + 1..N {
                    rotate(&mut a, &mut v, p, q);
                }
            }
        }
    }

    let mut order: [usize; N] = std::array::from_fn(|k| k);
    order.sort_by(|&x, &y| a.0[x][x].re.total_cmp(&a.0[y][y].re));
    let values = std::array::from_fn(|k| a.0[order[k]][order[k]].re);
    let mut vectors = CMat::<N>::zeros();
    for (new, &old) in order.iter().enumerate() {
        for r in 0..N {
            vectors.0[r][new] = v.0[r][old];
        }
    }
    EigenDecomposition { values, vectors }
}

/// One Jacobi rotation annihilating `a[p][q]`: `A <- W† A W`, `V <- V W` with
/// `W = [[c, s e^{iθ}], [-s e^{-iθ}, c]]` on the (p, q) plane and `θ = arg a_pq`.
fn rotate<const N: usize>(a: &mut CMat<N>, v: &mut CMat<N>, p: usize, q: usize) {
    let g = a.0[p][q];
    let g_abs = g.norm();
    if g_abs == 0.0 {
        return;
    }
    let phase = g / g_abs;
    let app = a.0[p][p].re;
    let aqq = a.0[q][q].re;
    let theta = (aqq - app) / (2.0 * g_abs);
    let t = if theta >= 0.0 {
        1.0 / (theta + (theta * theta + 1.0).sqrt())
    } else {
        -1.0 / (-theta + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    let w_pq = phase * s;
    let w_qp = -phase.conj() * s;

    // A W: columns p and q.
    for r in 0..N {
        let arp = a.0[r][p];
        let arq = a.0[r][q];
        a.0[r][p] = arp * c + arq * w_qp;
        a.0[r][q] = arp * w_pq + arq * c;
    }
    // W† (A W): rows p and q.
    for col in 0..N {
        let apc = a.0[p][col];
        let aqc = a.0[q][col];
        a.0[p][col] = apc * c + aqc * w_qp.conj();
        a.0[q][col] = apc * w_pq.conj() + aqc * c;
    }
    a.0[p][q] = ZERO;
    a.0[q][p] = ZERO;
    a.0[p][p] = C64::new(a.0[p][p].re, 0.0);
    a.0[q][q] = C64::new(a.0[q][q].re, 0.0);

    for r in 0..N {
        let vrp = v.0[r][p];
        let vrq = v.0[r][q];
        v.0[r][p] = vrp * c + vrq * w_qp;
        v.0[r][q] = vrp * w_pq + vrq * c;
    }
}

/// Single-qubit Pauli operator label.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub const ALL: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];

    pub fn label(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    pub fn matrix(self) -> CMat2 {
        pauli(self)
    }
}

pub fn pauli(axis: Pauli) -> CMat2 {
    match axis {
        Pauli::I => CMat2::identity(),
        Pauli::X => CMat([[ZERO, ONE], [ONE, ZERO]]),
        Pauli::Y => CMat([[ZERO, -I], [I, ZERO]]),
        Pauli::Z => CMat([[ONE, ZERO], [ZERO, -ONE]]),
    }
}

/// Kronecker product; `a` acts on qubit 1 (the most significant index).
pub fn kron(a: &CMat2, b: &CMat2) -> CMat4 {
    let mut out = CMat4::zeros();
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    out.0[2 * i + k][2 * j + l] = a.0[i][j] * b.0[k][l];
                }
            }
        }
    }
    out
}

/// `σ_a ⊗ σ_b`.
pub fn pauli2(a: Pauli, b: Pauli) -> CMat4 {
    kron(&pauli(a), &pauli(b))
}

/// Coefficients `c[a][b] = Tr[(σ_a ⊗ σ_b) M] / 4`, so that `M = Σ c[a][b] σ_a ⊗ σ_b`.
pub fn pauli_coefficients(m: &CMat4) -> [[C64; 4]; 4] {
    let mut c = [[ZERO; 4]; 4];
    for (ia, &a) in Pauli::ALL.iter().enumerate() {
        for (ib, &b) in Pauli::ALL.iter().enumerate() {
            c[ia][ib] = (pauli2(a, b) * *m).trace() / 4.0;
        }
    }
    c
}

/// Free-function form of [`CMat::expm_unitary`] for two-qubit generators.
pub fn expm_unitary(h: &CMat4, t: f64) -> Result<CMat4> {
    h.expm_unitary(t)
}

pub fn eig_hermitian(h: &CMat4) -> Result<EigenDecomposition<4>> {
    h.eig_hermitian()
}

/// Polar projection `U (U†U)^{-1/2}` onto the nearest unitary.
pub fn unitary_projection(u: &CMat4) -> Result<CMat4> {
    let gram = (u.adjoint() * *u).hermitian_part();
    let eig = gram.eig_hermitian()?;
    if eig.values[0] <= 0.0 {
        return Err(Error::NumericalFailure("singular matrix in unitary projection".into()));
    }
    let inv_sqrt = eig.map_spectrum(|l| C64::new(l.sqrt().recip(), 0.0));
    Ok(*u * inv_sqrt)
}

/// Splits a 4×4 matrix into `a ⊗ b` when it has Kronecker rank one.
///
/// Returns the factors and the relative residual `|M - a⊗b|_max / |M|_max`.
/// The factorization uses the realignment `R[(i,j),(k,l)] = M[(i,k),(j,l)]`
/// whose best rank-one approximation gives the factors.
pub fn kron_factorize(m: &CMat4) -> (CMat2, CMat2, f64) {
    let mut realigned = [[ZERO; 4]; 4];
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    realigned[2 * i + j][2 * k + l] = m.0[2 * i + k][2 * j + l];
                }
            }
        }
    }
    // R R† is Hermitian; its leading eigenvector gives vec(a) up to scale.
    let r = CMat(realigned);
    let gram = (r * r.adjoint()).hermitian_part();
    let eig = jacobi_eigen(gram);
    let top = eig.values[3].max(0.0);
    let scale = m.max_abs();
    if top == 0.0 || scale == 0.0 {
        return (CMat2::zeros(), CMat2::zeros(), 0.0);
    }
    let u: [C64; 4] = std::array::from_fn(|k| eig.vectors.0[k][3]);
    // R = vec(a) vec(b)^T, so b^T = u† R once u ∝ vec(a) is normalized.
    let mut bvec = [ZERO; 4];
    for (c, slot) in bvec.iter_mut().enumerate() {
        *slot = (0..4).map(|rix| u[rix].conj() * r.0[rix][c]).sum();
    }
    let a = CMat([[u[0], u[1]], [u[2], u[3]]]);
    let b = CMat([[bvec[0], bvec[1]], [bvec[2], bvec[3]]]);
    let residual = kron(&a, &b).max_diff(m) / scale;
    (a, b, residual)
}
