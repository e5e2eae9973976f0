//! Dense complex linear algebra on 2^N-dimensional spin Hilbert spaces.
//!
//! Everything in this module works with explicit dense matrices: tensor
//! products, Hermitian eigendecomposition, unitary propagation in the
//! eigenbasis, expectation values and uncertainties, single-site partial
//! traces, and the von Neumann entropy. All values are immutable after
//! construction and every operation is a pure function.
//!
//! Conventions: states are unit vectors of `Complex64` amplitudes over the
//! computational basis, with site 0 occupying the leftmost slot of the tensor
//! product (most significant bit of the basis index). Hamiltonians carry
//! angular-frequency units of rad/ns, spin operators are dimensionless
//! (hbar = 1), and times are in ns.

use faer::linalg::solvers::SelfAdjointEigen;
use faer::Side;
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Dense complex square matrix.
pub type CMatrix = DMatrix<Complex64>;
/// Dense complex column vector.
pub type CVector = DVector<Complex64>;

/// Unit-norm tolerance for state vectors.
pub const NORM_TOL: f64 = 1e-12;
/// Elementwise tolerance for Hermiticity checks.
pub const HERMITICITY_TOL: f64 = 1e-12;
/// Tolerance on the trace of a density matrix.
pub const TRACE_TOL: f64 = 1e-10;
/// Density-matrix eigenvalues may undershoot zero by at most this much.
pub const EIGENVALUE_FLOOR: f64 = -1e-10;
/// Variances in [`VARIANCE_CLAMP`, 0) are clamped to zero; anything lower is
/// an error rather than floating-point round-off.
pub const VARIANCE_CLAMP: f64 = -1e-12;
/// Expectation values with a larger imaginary residue are rejected.
pub const IMAG_RESIDUE_LIMIT: f64 = 1e-8;

/// Pure state of `n_spins` spin-1/2 sites: a unit vector of 2^N amplitudes.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumState {
    amplitudes: CVector,
    n_spins: usize,
}

impl QuantumState {
    /// Wraps an amplitude vector, checking the dimension and unit norm.
    pub fn new(amplitudes: CVector, n_spins: usize) -> Result<Self> {
        let dim = 1usize << n_spins;
        if amplitudes.len() != dim {
            return Err(Error::DimensionMismatch { expected: dim, got: amplitudes.len() });
        }
        let norm = amplitudes.norm();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::StateNotNormalized { norm, tol: NORM_TOL });
        }
        Ok(Self { amplitudes, n_spins })
    }

    pub fn amplitudes(&self) -> &CVector {
        &self.amplitudes
    }

    pub fn n_spins(&self) -> usize {
        self.n_spins
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }
}

/// Dense Hermitian matrix: Hamiltonians and spin observables.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianOperator {
    matrix: CMatrix,
}

impl HermitianOperator {
    /// Wraps a square matrix, checking `A = A^dag` elementwise.
    pub fn new(matrix: CMatrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::DimensionMismatch { expected: matrix.nrows(), got: matrix.ncols() });
        }
        let max_dev = hermiticity_deviation(&matrix);
        if max_dev > HERMITICITY_TOL {
            return Err(Error::NonHermitianInput { max_dev });
        }
        Ok(Self { matrix })
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    /// Eigendecomposition; infallible because the type guarantees Hermiticity.
    pub fn eig(&self) -> EigenSystem {
        eig_hermitian(&self.matrix).expect("validated Hermitian matrix")
    }
}

/// Largest elementwise deviation from Hermiticity, `max |A - A^dag|`.
pub fn hermiticity_deviation(matrix: &CMatrix) -> f64 {
    let n = matrix.nrows();
    let mut max_dev: f64 = 0.0;
    for i in 0..n {
        for j in i..n {
            let dev = (matrix[(i, j)] - matrix[(j, i)].conj()).norm();
            max_dev = max_dev.max(dev);
        }
    }
    max_dev
}

/// Spectral decomposition `A = V diag(lambda) V^dag` of a Hermitian matrix,
/// with eigenvalues in ascending order.
#[derive(Debug, Clone)]
pub struct EigenSystem {
    eigenvalues: DVector<f64>,
    eigenvectors: CMatrix,
}

impl EigenSystem {
    pub fn eigenvalues(&self) -> &DVector<f64> {
        &self.eigenvalues
    }

    /// Unitary matrix whose columns are the eigenvectors, ordered to match
    /// [`Self::eigenvalues`].
    pub fn eigenvectors(&self) -> &CMatrix {
        &self.eigenvectors
    }

    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// Rebuilds `V diag(lambda) V^dag`; used to test the reconstruction
    /// invariant.
    pub fn reconstruct(&self) -> CMatrix {
        let lambda = CVector::from_iterator(
            self.dim(),
            self.eigenvalues.iter().map(|&x| Complex64::new(x, 0.0)),
        );
        let scaled = {
            let mut m = self.eigenvectors.clone();
            for (mut col, &l) in m.column_iter_mut().zip(lambda.iter()) {
                col *= l;
            }
            m
        };
        scaled * self.eigenvectors.adjoint()
    }

    /// Applies `f(lambda_k)` as a diagonal operator in the eigenbasis:
    /// returns `V diag(f(lambda)) V^dag psi`.
    pub(crate) fn apply_spectral_fn(
        &self,
        psi: &CVector,
        f: impl Fn(f64) -> Complex64,
    ) -> CVector {
        let mut coeffs = self.eigenvectors.ad_mul(psi);
        for (c, &l) in coeffs.iter_mut().zip(self.eigenvalues.iter()) {
            *c *= f(l);
        }
        &self.eigenvectors * coeffs
    }
}

/// Kronecker (tensor) product of two matrices.
///
/// The left factor occupies the most significant index bits, so
/// `kron(a, b)` acts on a composite system with `a`'s subsystem first.
pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

fn to_faer(matrix: &CMatrix) -> faer::Mat<Complex64> {
    faer::Mat::from_fn(matrix.nrows(), matrix.ncols(), |i, j| matrix[(i, j)])
}

/// Eigendecomposition of a Hermitian matrix with ascending eigenvalues.
pub fn eig_hermitian(matrix: &CMatrix) -> Result<EigenSystem> {
    if !matrix.is_square() {
        return Err(Error::DimensionMismatch { expected: matrix.nrows(), got: matrix.ncols() });
    }
    let max_dev = hermiticity_deviation(matrix);
    if max_dev > HERMITICITY_TOL {
        return Err(Error::NonHermitianInput { max_dev });
    }
    let n = matrix.nrows();
    let evd = SelfAdjointEigen::new(to_faer(matrix).as_ref(), Side::Lower)
        .map_err(|_| Error::EigenDecompositionFailed)?;
    // faer returns the spectrum in nondecreasing order.
    let eigenvalues = DVector::from_iterator(n, (0..n).map(|k| evd.S()[k].re));
    let eigenvectors = CMatrix::from_fn(n, n, |i, j| evd.U()[(i, j)]);
    debug_assert!(eigenvalues.as_slice().windows(2).all(|w| w[0] <= w[1]));
    Ok(EigenSystem { eigenvalues, eigenvectors })
}

/// Ascending eigenvalues of a Hermitian matrix, without eigenvectors.
fn hermitian_eigenvalues(matrix: &CMatrix) -> Result<Vec<f64>> {
    to_faer(matrix)
        .self_adjoint_eigenvalues(Side::Lower)
        .map_err(|_| Error::EigenDecompositionFailed)
}

/// Evolves a state for `tau_ns` under the time-independent Hamiltonian whose
/// eigendecomposition is `eig`: `V exp(-i lambda tau) V^dag |psi0>`.
pub fn evolve(psi0: &QuantumState, eig: &EigenSystem, tau_ns: f64) -> Result<QuantumState> {
    if eig.dim() != psi0.dim() {
        return Err(Error::DimensionMismatch { expected: psi0.dim(), got: eig.dim() });
    }
    let amplitudes =
        eig.apply_spectral_fn(psi0.amplitudes(), |l| Complex64::from_polar(1.0, -l * tau_ns));
    QuantumState::new(amplitudes, psi0.n_spins())
}

/// Expectation value `<psi|A|psi>` of a Hermitian observable.
///
/// The imaginary residue is checked against [`IMAG_RESIDUE_LIMIT`] and then
/// discarded.
pub fn expectation(psi: &QuantumState, a: &HermitianOperator) -> Result<f64> {
    if a.dim() != psi.dim() {
        return Err(Error::DimensionMismatch { expected: psi.dim(), got: a.dim() });
    }
    let w = a.matrix() * psi.amplitudes();
    let z = psi.amplitudes().dotc(&w);
    if z.im.abs() > IMAG_RESIDUE_LIMIT {
        return Err(Error::NonRealExpectation { imag: z.im });
    }
    Ok(z.re)
}

/// Uncertainty `sqrt(<A^2> - <A>^2)` of a Hermitian observable.
///
/// Variances in `[VARIANCE_CLAMP, 0)` clamp to zero so round-off cannot leak
/// a NaN through the square root; anything below the clamp is an error.
pub fn uncertainty(psi: &QuantumState, a: &HermitianOperator) -> Result<f64> {
    if a.dim() != psi.dim() {
        return Err(Error::DimensionMismatch { expected: psi.dim(), got: a.dim() });
    }
    let w = a.matrix() * psi.amplitudes();
    let mean = {
        let z = psi.amplitudes().dotc(&w);
        if z.im.abs() > IMAG_RESIDUE_LIMIT {
            return Err(Error::NonRealExpectation { imag: z.im });
        }
        z.re
    };
    let second_moment = w.dotc(&w).re;
    variance_to_uncertainty(second_moment - mean * mean)
}

/// Shared clamp policy for variances produced along either route.
pub(crate) fn variance_to_uncertainty(variance: f64) -> Result<f64> {
    if variance < VARIANCE_CLAMP {
        return Err(Error::NegativeVariance { variance });
    }
    Ok(variance.max(0.0).sqrt())
}

/// Positive semidefinite, trace-one Hermitian matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: CMatrix,
}

impl DensityMatrix {
    /// Validates Hermiticity, unit trace, and positive semidefiniteness.
    pub fn new(matrix: CMatrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::DimensionMismatch { expected: matrix.nrows(), got: matrix.ncols() });
        }
        let max_dev = hermiticity_deviation(&matrix);
        if max_dev > HERMITICITY_TOL {
            return Err(Error::InvalidDensityMatrix {
                reason: format!("not Hermitian (max deviation {max_dev:.3e})"),
            });
        }
        let trace = matrix.trace();
        if (trace.re - 1.0).abs() > TRACE_TOL {
            return Err(Error::InvalidDensityMatrix {
                reason: format!("trace {} deviates from 1", trace.re),
            });
        }
        let eigenvalues = hermitian_eigenvalues(&matrix)?;
        if let Some(lambda) = eigenvalues.iter().copied().find(|&l| l < EIGENVALUE_FLOOR) {
            return Err(Error::InvalidDensityMatrix {
                reason: format!("negative eigenvalue {lambda:.3e}"),
            });
        }
        Ok(Self { matrix })
    }

    /// Projector `|psi><psi|` onto a pure state. Positive semidefinite and
    /// trace-one by construction, so no spectral check is run.
    pub fn from_pure(psi: &QuantumState) -> Self {
        let a = psi.amplitudes();
        let matrix = a * a.adjoint();
        Self { matrix }
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }
}

/// Reduced 2x2 density matrix of one site, tracing out all others.
///
/// `site` is 0-based and counts tensor-product slots from the left; the
/// dimension of `rho` must be a power of two.
pub fn partial_trace_site(rho: &DensityMatrix, site: usize) -> Result<DensityMatrix> {
    let dim = rho.dim();
    let n_spins = dim.trailing_zeros() as usize;
    if dim == 0 || dim != (1usize << n_spins) {
        return Err(Error::InvalidDensityMatrix {
            reason: format!("dimension {dim} is not a power of two"),
        });
    }
    if site >= n_spins {
        return Err(Error::SiteOutOfRange { site, n_spins });
    }
    // Bit position of `site` within a basis index (site 0 is the most
    // significant bit).
    let pos = n_spins - 1 - site;
    let low_mask = (1usize << pos) - 1;
    let m = rho.matrix();
    let mut reduced = CMatrix::zeros(2, 2);
    for r in 0..dim / 2 {
        let low = r & low_mask;
        let high = (r >> pos) << (pos + 1);
        let base = high | low;
        let one = base | (1usize << pos);
        reduced[(0, 0)] += m[(base, base)];
        reduced[(0, 1)] += m[(base, one)];
        reduced[(1, 0)] += m[(one, base)];
        reduced[(1, 1)] += m[(one, one)];
    }
    DensityMatrix::new(reduced)
}

/// Von Neumann entropy `-Tr(rho ln rho)` with the convention `0 ln 0 = 0`.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> Result<f64> {
    let trace = rho.matrix().trace().re;
    if (trace - 1.0).abs() > TRACE_TOL {
        return Err(Error::InvalidDensityMatrix {
            reason: format!("trace {trace} deviates from 1"),
        });
    }
    let eigenvalues = hermitian_eigenvalues(rho.matrix())?;
    let mut entropy = 0.0;
    for &lambda in eigenvalues.iter() {
        if lambda < EIGENVALUE_FLOOR {
            return Err(Error::InvalidDensityMatrix {
                reason: format!("negative eigenvalue {lambda:.3e}"),
            });
        }
        if lambda > 0.0 {
            entropy -= lambda * lambda.ln();
        }
    }
    // Round-off can leave a tiny negative total when the state is pure.
    Ok(entropy.max(0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn identity(n: usize) -> CMatrix {
        CMatrix::identity(n, n)
    }

    fn sx_half() -> CMatrix {
        CMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(0.5, 0.0), c(0.5, 0.0), c(0.0, 0.0)])
    }

    fn sy_half() -> CMatrix {
        CMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(0.0, -0.5), c(0.0, 0.5), c(0.0, 0.0)])
    }

    fn sz_half() -> CMatrix {
        CMatrix::from_row_slice(2, 2, &[c(0.5, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-0.5, 0.0)])
    }

    /// Two-spin secular Hamiltonian of coupling `d` (rad/ns), written out in
    /// the computational basis: diag(d/4, -d/4, -d/4, d/4) plus flip-flop
    /// -d/4 between |01> and |10>.
    fn two_spin_secular(d: f64) -> CMatrix {
        let mut h = CMatrix::zeros(4, 4);
        h[(0, 0)] = c(d / 4.0, 0.0);
        h[(1, 1)] = c(-d / 4.0, 0.0);
        h[(2, 2)] = c(-d / 4.0, 0.0);
        h[(3, 3)] = c(d / 4.0, 0.0);
        h[(1, 2)] = c(-d / 4.0, 0.0);
        h[(2, 1)] = c(-d / 4.0, 0.0);
        h
    }

    fn plus_x_state(n: usize) -> QuantumState {
        let dim = 1usize << n;
        let amp = c(1.0 / (dim as f64).sqrt(), 0.0);
        QuantumState::new(CVector::from_element(dim, amp), n).unwrap()
    }

    #[test]
    fn kron_identity_cases() {
        assert_eq!(kron(&identity(2), &identity(2)), identity(4));

        let embedded = kron(&sz_half(), &identity(2));
        let expected = [0.5, 0.5, -0.5, -0.5];
        for (i, &want) in expected.iter().enumerate() {
            assert_abs_diff_eq!(embedded[(i, i)].re, want, epsilon = 0.0);
        }

        let xx = kron(&sx_half(), &sx_half());
        assert_abs_diff_eq!(xx.trace().norm(), 0.0, epsilon = 0.0);
    }

    #[test]
    fn kron_mixed_product_identity() {
        let a = CMatrix::from_fn(2, 2, |i, j| c((i + j) as f64, i as f64 - 0.5));
        let b = CMatrix::from_fn(3, 3, |i, j| c(i as f64 * 0.25, (j as f64) * 0.5 - 0.3));
        let cm = CMatrix::from_fn(2, 2, |i, j| c(0.1 + j as f64, (i * j) as f64));
        let d = CMatrix::from_fn(3, 3, |i, j| c((i as f64 - j as f64) * 0.7, 0.4));
        let lhs = kron(&a, &b) * kron(&cm, &d);
        let rhs = kron(&(&a * &cm), &(&b * &d));
        let max_dev = (&lhs - &rhs).iter().map(|z| z.norm()).fold(0.0, f64::max);
        assert!(max_dev < 1e-12);
    }

    #[test]
    fn eig_diagonal_and_pauli() {
        let diag = CMatrix::from_diagonal(&CVector::from_vec(vec![c(1.0, 0.0), c(2.0, 0.0)]));
        let eig = eig_hermitian(&diag).unwrap();
        assert_abs_diff_eq!(eig.eigenvalues()[0], 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(eig.eigenvalues()[1], 2.0, epsilon = 1e-14);
        assert!(
            (eig.eigenvectors()[(0, 0)].norm() - 1.0).abs() < 1e-12
                && eig.eigenvectors()[(1, 0)].norm() < 1e-12
        );

        let eig = eig_hermitian(&sx_half()).unwrap();
        assert_abs_diff_eq!(eig.eigenvalues()[0], -0.5, epsilon = 1e-14);
        assert_abs_diff_eq!(eig.eigenvalues()[1], 0.5, epsilon = 1e-14);
    }

    #[test]
    fn eig_two_spin_secular_spectrum() {
        // Hand diagonalization in the {up-up, triplet-0, singlet, down-down}
        // basis gives {-d/2, 0, d/4, d/4}.
        let d = 2.0 * std::f64::consts::PI * 1e-3;
        let eig = eig_hermitian(&two_spin_secular(d)).unwrap();
        let expected = [-d / 2.0, 0.0, d / 4.0, d / 4.0];
        for (k, &want) in expected.iter().enumerate() {
            assert_abs_diff_eq!(eig.eigenvalues()[k], want, epsilon = 1e-15);
        }
    }

    #[test]
    fn eig_reconstruction_and_unitarity() {
        let n = 16;
        let raw = CMatrix::from_fn(n, n, |i, j| {
            c(((i * 31 + j * 17) % 10) as f64 * 0.1, ((i * 7 + j * 13) % 10) as f64 * 0.1)
        });
        let h = (&raw + raw.adjoint()) * c(0.5, 0.0);
        let eig = eig_hermitian(&h).unwrap();
        let recon_dev = (eig.reconstruct() - &h).iter().map(|z| z.norm()).fold(0.0, f64::max);
        assert!(recon_dev < 1e-10, "reconstruction deviation {recon_dev:.3e}");
        let gram = eig.eigenvectors().adjoint() * eig.eigenvectors();
        let unit_dev = (gram - identity(n)).iter().map(|z| z.norm()).fold(0.0, f64::max);
        assert!(unit_dev < 1e-10, "unitarity deviation {unit_dev:.3e}");
    }

    #[test]
    fn eig_rejects_non_hermitian() {
        let mut m = identity(2);
        m[(0, 1)] = c(1.0, 0.0);
        assert!(matches!(eig_hermitian(&m), Err(Error::NonHermitianInput { .. })));
    }

    #[test]
    fn evolve_zero_hamiltonian_and_zero_time() {
        let psi0 = plus_x_state(2);
        let zero = eig_hermitian(&CMatrix::zeros(4, 4)).unwrap();
        let out = evolve(&psi0, &zero, 137.5).unwrap();
        let dev = (out.amplitudes() - psi0.amplitudes()).norm();
        assert!(dev < 1e-12);

        let d = 2.0 * std::f64::consts::PI * 1e-3;
        let eig = eig_hermitian(&two_spin_secular(d)).unwrap();
        let out = evolve(&psi0, &eig, 0.0).unwrap();
        let dev = (out.amplitudes() - psi0.amplitudes()).norm();
        assert!(dev < 1e-12);
    }

    #[test]
    fn evolve_preserves_norm_and_checks_dims() {
        let psi0 = plus_x_state(2);
        let d = 2.0 * std::f64::consts::PI * 1e-3;
        let eig = eig_hermitian(&two_spin_secular(d)).unwrap();
        for tau in [13.0, 89.0, 333.0, 650.0] {
            let out = evolve(&psi0, &eig, tau).unwrap();
            assert_abs_diff_eq!(out.amplitudes().norm(), 1.0, epsilon = 1e-12);
        }
        let single = plus_x_state(1);
        assert!(matches!(evolve(&single, &eig, 1.0), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn expectation_single_spin() {
        let psi = plus_x_state(1);
        let sx = HermitianOperator::new(sx_half()).unwrap();
        let sy = HermitianOperator::new(sy_half()).unwrap();
        let sz = HermitianOperator::new(sz_half()).unwrap();
        assert_abs_diff_eq!(expectation(&psi, &sx).unwrap(), 0.5, epsilon = 1e-14);
        assert_abs_diff_eq!(expectation(&psi, &sy).unwrap(), 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(expectation(&psi, &sz).unwrap(), 0.0, epsilon = 1e-14);
    }

    #[test]
    fn uncertainty_basics() {
        // Eigenstate |up> has zero S_z variance.
        let up = QuantumState::new(CVector::from_vec(vec![c(1.0, 0.0), c(0.0, 0.0)]), 1).unwrap();
        let sz = HermitianOperator::new(sz_half()).unwrap();
        assert_abs_diff_eq!(uncertainty(&up, &sz).unwrap(), 0.0, epsilon = 1e-14);

        // Transverse variance of |+x> is 1/4.
        let psi = plus_x_state(1);
        let sy = HermitianOperator::new(sy_half()).unwrap();
        assert_abs_diff_eq!(uncertainty(&psi, &sy).unwrap(), 0.5, epsilon = 1e-14);
    }

    #[test]
    fn partial_trace_product_ghz_and_basis_states() {
        // Product |+x> x |+x>: every site reduces to (I + sigma_x)/2, pure.
        let psi = plus_x_state(2);
        let rho = DensityMatrix::from_pure(&psi);
        for site in 0..2 {
            let reduced = partial_trace_site(&rho, site).unwrap();
            assert_abs_diff_eq!(reduced.matrix()[(0, 0)].re, 0.5, epsilon = 1e-14);
            assert_abs_diff_eq!(reduced.matrix()[(0, 1)].re, 0.5, epsilon = 1e-14);
            assert_abs_diff_eq!(von_neumann_entropy(&reduced).unwrap(), 0.0, epsilon = 1e-12);
        }

        // 3-spin GHZ: every single-site reduction is maximally mixed.
        let inv = c(1.0 / 2.0f64.sqrt(), 0.0);
        let mut amp = CVector::zeros(8);
        amp[0] = inv;
        amp[7] = inv;
        let ghz = QuantumState::new(amp, 3).unwrap();
        let rho = DensityMatrix::from_pure(&ghz);
        for site in 0..3 {
            let reduced = partial_trace_site(&rho, site).unwrap();
            assert_abs_diff_eq!(reduced.matrix()[(0, 0)].re, 0.5, epsilon = 1e-14);
            assert_abs_diff_eq!(reduced.matrix()[(1, 1)].re, 0.5, epsilon = 1e-14);
            assert_abs_diff_eq!(reduced.matrix()[(0, 1)].norm(), 0.0, epsilon = 1e-14);
            let s = von_neumann_entropy(&reduced).unwrap();
            assert_abs_diff_eq!(s, std::f64::consts::LN_2, epsilon = 1e-12);
        }

        // |up, down>: site 1 reduces to diag(0, 1).
        let mut amp = CVector::zeros(4);
        amp[1] = c(1.0, 0.0);
        let updown = QuantumState::new(amp, 2).unwrap();
        let rho = DensityMatrix::from_pure(&updown);
        let reduced = partial_trace_site(&rho, 1).unwrap();
        assert_abs_diff_eq!(reduced.matrix()[(0, 0)].re, 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(reduced.matrix()[(1, 1)].re, 1.0, epsilon = 1e-14);

        assert!(matches!(
            partial_trace_site(&rho, 2),
            Err(Error::SiteOutOfRange { site: 2, n_spins: 2 })
        ));
    }

    #[test]
    fn entropy_values() {
        let pure = DensityMatrix::new(CMatrix::from_row_slice(
            2,
            2,
            &[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)],
        ))
        .unwrap();
        assert_abs_diff_eq!(von_neumann_entropy(&pure).unwrap(), 0.0, epsilon = 1e-14);

        let mixed = DensityMatrix::new(
            CMatrix::from_diagonal(&CVector::from_vec(vec![c(0.5, 0.0), c(0.5, 0.0)])),
        )
        .unwrap();
        assert_abs_diff_eq!(
            von_neumann_entropy(&mixed).unwrap(),
            std::f64::consts::LN_2,
            epsilon = 1e-14
        );

        let skewed = DensityMatrix::new(
            CMatrix::from_diagonal(&CVector::from_vec(vec![c(0.9, 0.0), c(0.1, 0.0)])),
        )
        .unwrap();
        let expected = -(0.9f64 * 0.9f64.ln() + 0.1 * 0.1f64.ln());
        assert_abs_diff_eq!(von_neumann_entropy(&skewed).unwrap(), expected, epsilon = 1e-14);
        assert_abs_diff_eq!(von_neumann_entropy(&skewed).unwrap(), 0.325, epsilon = 5e-4);
    }

    #[test]
    fn density_matrix_validation() {
        let not_trace_one =
            CMatrix::from_diagonal(&CVector::from_vec(vec![c(0.9, 0.0), c(0.9, 0.0)]));
        assert!(matches!(
            DensityMatrix::new(not_trace_one),
            Err(Error::InvalidDensityMatrix { .. })
        ));

        let negative =
            CMatrix::from_diagonal(&CVector::from_vec(vec![c(1.5, 0.0), c(-0.5, 0.0)]));
        assert!(matches!(DensityMatrix::new(negative), Err(Error::InvalidDensityMatrix { .. })));
    }

    #[test]
    fn state_validation() {
        let unnormalized = CVector::from_vec(vec![c(1.0, 0.0), c(1.0, 0.0)]);
        assert!(matches!(
            QuantumState::new(unnormalized, 1),
            Err(Error::StateNotNormalized { .. })
        ));
        let wrong_dim = CVector::from_vec(vec![c(1.0, 0.0)]);
        assert!(matches!(QuantumState::new(wrong_dim, 1), Err(Error::DimensionMismatch { .. })));
    }
}
