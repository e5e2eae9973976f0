//! Spin-1/2 operators, the secular dipolar Hamiltonian, couplings from
//! geometry, and the coherent initial state.
//!
//! All couplings enter as `d_ij / (2 pi)` in MHz and are converted to angular
//! frequency via [`MHZ_TO_RAD_PER_NS`], so Hamiltonians come out in rad/ns
//! and pair directly with evolution times in ns. Spin operators use the
//! hbar = 1 convention (`sigma / 2`, eigenvalues +-1/2).
//!
//! The Zeeman term never appears here: the simulation works in the rotating
//! frame exactly on resonance, where only the dipolar part survives. All
//! spins are assumed to share one Larmor frequency.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{kron, CMatrix, CVector, HermitianOperator, QuantumState};

/// Exact conversion from `d/(2 pi)` in MHz to angular frequency in rad/ns.
pub const MHZ_TO_RAD_PER_NS: f64 = 2.0 * std::f64::consts::PI * 1e-3;

/// Gyromagnetic ratio of a free electron, GHz/T.
pub const FREE_ELECTRON_GAMMA_GHZ_PER_T: f64 = 28.0;

/// mu_0 / (4 pi) in SI units, T^2 m^3 / J.
const MU0_OVER_FOUR_PI_SI: f64 = 1e-7;
/// Planck constant, J s.
const PLANCK_SI: f64 = 6.62607015e-34;
/// Combined dipolar prefactor for gammas in GHz/T, distances in nm, output in
/// MHz: mu_0/(4 pi) * h * 1e39, where 1e39 = 1e18 (GHz^2 -> Hz^2)
/// * 1e27 (nm^-3 -> m^-3) * 1e-6 (Hz -> MHz).
pub const DIPOLAR_PREFACTOR_MHZ: f64 = MU0_OVER_FOUR_PI_SI * PLANCK_SI * 1e39;

/// Cartesian spin-operator axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
    Z,
}

/// Which observables the squeezing analysis measures.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ObservableMode {
    /// Collective operators `J_k = sum_i S_k^i`.
    Collective,
    /// Single-site operators `S_k^i` for the given 0-based site.
    SingleSite(usize),
}

/// 2x2 single-spin operator `sigma_axis / 2`.
pub fn spin_half(axis: Axis) -> CMatrix {
    let z = Complex64::new(0.0, 0.0);
    match axis {
        Axis::X => CMatrix::from_row_slice(
            2,
            2,
            &[z, Complex64::new(0.5, 0.0), Complex64::new(0.5, 0.0), z],
        ),
        Axis::Y => CMatrix::from_row_slice(
            2,
            2,
            &[z, Complex64::new(0.0, -0.5), Complex64::new(0.0, 0.5), z],
        ),
        Axis::Z => CMatrix::from_row_slice(
            2,
            2,
            &[Complex64::new(0.5, 0.0), z, z, Complex64::new(-0.5, 0.0)],
        ),
    }
}

/// Builds `I x ... x a (slot i) x ... x b (slot j) x ... x I` in one pass,
/// avoiding full-dimension matrix products.
fn embedded_product(n: usize, slots: &[(usize, CMatrix)]) -> CMatrix {
    let mut op = CMatrix::identity(1, 1);
    for site in 0..n {
        match slots.iter().find(|(s, _)| *s == site) {
            Some((_, factor)) => op = kron(&op, factor),
            None => op = kron(&op, &CMatrix::identity(2, 2)),
        }
    }
    op
}

/// Spin operator `S_axis^i` embedded in the `n`-spin space; `site` is 0-based.
pub fn site_operator(n: usize, site: usize, axis: Axis) -> Result<HermitianOperator> {
    if site >= n {
        return Err(Error::SiteOutOfRange { site, n_spins: n });
    }
    HermitianOperator::new(embedded_product(n, &[(site, spin_half(axis))]))
}

/// Collective spin operator `J_axis = sum_i S_axis^i`.
pub fn collective_operator(n: usize, axis: Axis) -> HermitianOperator {
    assert!(n >= 1, "collective operator needs at least one spin");
    let dim = 1usize << n;
    let mut sum = CMatrix::zeros(dim, dim);
    for site in 0..n {
        sum += embedded_product(n, &[(site, spin_half(axis))]);
    }
    HermitianOperator::new(sum).expect("sum of Hermitian terms")
}

/// The observable triple `(A_x, A_y, A_z)` selected by an [`ObservableMode`]:
/// collective `J_k` or single-site `S_k^i`.
pub fn observable_triple(
    n: usize,
    mode: ObservableMode,
) -> Result<[HermitianOperator; 3]> {
    match mode {
        ObservableMode::Collective => Ok([
            collective_operator(n, Axis::X),
            collective_operator(n, Axis::Y),
            collective_operator(n, Axis::Z),
        ]),
        ObservableMode::SingleSite(site) => Ok([
            site_operator(n, site, Axis::X)?,
            site_operator(n, site, Axis::Y)?,
            site_operator(n, site, Axis::Z)?,
        ]),
    }
}

/// An `n`-spin system with pairwise secular dipolar couplings.
///
/// `couplings_mhz[(i, j)]` holds `d_ij / (2 pi)` in MHz; the matrix must be
/// symmetric with zero diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinSystemSpec {
    n_spins: usize,
    couplings_mhz: DMatrix<f64>,
    observable_mode: ObservableMode,
}

impl SpinSystemSpec {
    pub fn new(
        n_spins: usize,
        couplings_mhz: DMatrix<f64>,
        observable_mode: ObservableMode,
    ) -> Result<Self> {
        if n_spins < 1 {
            return Err(Error::InvalidN { reason: "need at least one spin".into() });
        }
        if couplings_mhz.nrows() != n_spins || couplings_mhz.ncols() != n_spins {
            return Err(Error::DimensionMismatch {
                expected: n_spins,
                got: couplings_mhz.nrows(),
            });
        }
        for i in 0..n_spins {
            if couplings_mhz[(i, i)] != 0.0 {
                return Err(Error::AsymmetricCouplings { row: i, col: i });
            }
            for j in (i + 1)..n_spins {
                if couplings_mhz[(i, j)] != couplings_mhz[(j, i)] {
                    return Err(Error::AsymmetricCouplings { row: i, col: j });
                }
            }
        }
        if let ObservableMode::SingleSite(site) = observable_mode {
            if site >= n_spins {
                return Err(Error::SiteOutOfRange { site, n_spins });
            }
        }
        Ok(Self { n_spins, couplings_mhz, observable_mode })
    }

    pub fn n_spins(&self) -> usize {
        self.n_spins
    }

    pub fn couplings_mhz(&self) -> &DMatrix<f64> {
        &self.couplings_mhz
    }

    pub fn observable_mode(&self) -> ObservableMode {
        self.observable_mode
    }

    pub fn with_observable_mode(mut self, mode: ObservableMode) -> Result<Self> {
        if let ObservableMode::SingleSite(site) = mode {
            if site >= self.n_spins {
                return Err(Error::SiteOutOfRange { site, n_spins: self.n_spins });
            }
        }
        self.observable_mode = mode;
        Ok(self)
    }
}

/// Secular dipolar Hamiltonian in the rotating frame, rad/ns:
/// `H_r = sum_{i<j} d_ij [S_z^i S_z^j - (S_x^i S_x^j + S_y^i S_y^j) / 2]`.
///
/// Traceless, and commutes with `J_z` (the flip-flop term conserves total
/// magnetization).
pub fn secular_hamiltonian(spec: &SpinSystemSpec) -> HermitianOperator {
    let n = spec.n_spins();
    let dim = 1usize << n;
    let mut h = CMatrix::zeros(dim, dim);
    for i in 0..n {
        for j in (i + 1)..n {
            let d = MHZ_TO_RAD_PER_NS * spec.couplings_mhz()[(i, j)];
            if d == 0.0 {
                continue;
            }
            let zz = embedded_product(n, &[(i, spin_half(Axis::Z)), (j, spin_half(Axis::Z))]);
            let xx = embedded_product(n, &[(i, spin_half(Axis::X)), (j, spin_half(Axis::X))]);
            let yy = embedded_product(n, &[(i, spin_half(Axis::Y)), (j, spin_half(Axis::Y))]);
            h += (zz - (xx + yy) * Complex64::new(0.5, 0.0)) * Complex64::new(d, 0.0);
        }
    }
    HermitianOperator::new(h).expect("sum of Hermitian pair terms")
}

/// Spin positions and gyromagnetic ratios for computing dipolar couplings.
#[derive(Debug, Clone, PartialEq)]
pub struct GeometrySpec {
    positions_nm: Vec<[f64; 3]>,
    gammas_ghz_per_t: Vec<f64>,
    spin_magnitude: f64,
    field_axis: [f64; 3],
}

impl GeometrySpec {
    /// `positions_nm` in nm, `gammas_ghz_per_t` per spin in GHz/T. The field
    /// axis is normalized; positions must be pairwise distinct.
    pub fn new(
        positions_nm: Vec<[f64; 3]>,
        gammas_ghz_per_t: Vec<f64>,
        spin_magnitude: f64,
        field_axis: [f64; 3],
    ) -> Result<Self> {
        if gammas_ghz_per_t.len() != positions_nm.len() {
            return Err(Error::DimensionMismatch {
                expected: positions_nm.len(),
                got: gammas_ghz_per_t.len(),
            });
        }
        for i in 0..positions_nm.len() {
            for j in (i + 1)..positions_nm.len() {
                if separation(&positions_nm[i], &positions_nm[j]) == 0.0 {
                    return Err(Error::CoincidentPositions { i, j });
                }
            }
        }
        let norm = (field_axis.iter().map(|x| x * x).sum::<f64>()).sqrt();
        if norm < 1e-12 {
            return Err(Error::InvalidFieldAxis);
        }
        let field_axis = [field_axis[0] / norm, field_axis[1] / norm, field_axis[2] / norm];
        Ok(Self { positions_nm, gammas_ghz_per_t, spin_magnitude, field_axis })
    }

    /// Electron spins at the given positions: gamma = 28 GHz/T, S = 1/2,
    /// field along +z.
    pub fn electrons(positions_nm: Vec<[f64; 3]>) -> Result<Self> {
        let n = positions_nm.len();
        Self::new(
            positions_nm,
            vec![FREE_ELECTRON_GAMMA_GHZ_PER_T; n],
            0.5,
            [0.0, 0.0, 1.0],
        )
    }

    pub fn n_spins(&self) -> usize {
        self.positions_nm.len()
    }
}

fn separation(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    let d = [b[0] - a[0], b[1] - a[1], b[2] - a[2]];
    (d[0] * d[0] + d[1] * d[1] + d[2] * d[2]).sqrt()
}

/// Secular dipolar coupling `d_ij / (2 pi)` in MHz:
/// `mu_0/(4 pi) * h * gamma_i gamma_j * S^2 * (3 cos^2 theta - 1) / r^3`,
/// where `theta` is the angle between the field axis and the displacement.
///
/// For r = 1 nm, theta = 0, gamma = 28 GHz/T, S = 1/2 this gives 26 MHz.
pub fn dipolar_coupling(geom: &GeometrySpec, i: usize, j: usize) -> Result<f64> {
    let n = geom.n_spins();
    if i >= n {
        return Err(Error::SiteOutOfRange { site: i, n_spins: n });
    }
    if j >= n {
        return Err(Error::SiteOutOfRange { site: j, n_spins: n });
    }
    if i == j {
        return Err(Error::CoincidentPositions { i, j });
    }
    let a = &geom.positions_nm[i];
    let b = &geom.positions_nm[j];
    let r = separation(a, b);
    if r == 0.0 {
        return Err(Error::CoincidentPositions { i, j });
    }
    let axis = &geom.field_axis;
    let cos_theta =
        ((b[0] - a[0]) * axis[0] + (b[1] - a[1]) * axis[1] + (b[2] - a[2]) * axis[2]) / r;
    let angular = 3.0 * cos_theta * cos_theta - 1.0;
    let s2 = geom.spin_magnitude * geom.spin_magnitude;
    Ok(DIPOLAR_PREFACTOR_MHZ * geom.gammas_ghz_per_t[i] * geom.gammas_ghz_per_t[j] * s2 * angular
        / (r * r * r))
}

/// Full coupling matrix `d_ij / (2 pi)` in MHz for a geometry.
pub fn coupling_matrix(geom: &GeometrySpec) -> Result<DMatrix<f64>> {
    let n = geom.n_spins();
    let mut m = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in (i + 1)..n {
            let d = dipolar_coupling(geom, i, j)?;
            m[(i, j)] = d;
            m[(j, i)] = d;
        }
    }
    Ok(m)
}

/// Coherent spin state `(|0> + |1>)^x n / sqrt(2^n)`: every spin along +x.
pub fn coherent_state(n: usize) -> QuantumState {
    assert!(n >= 1, "coherent state needs at least one spin");
    let dim = 1usize << n;
    let amp = Complex64::new(1.0 / (dim as f64).sqrt(), 0.0);
    QuantumState::new(CVector::from_element(dim, amp), n).expect("uniform amplitudes are unit norm")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{eig_hermitian, expectation};
    use approx::assert_abs_diff_eq;

    #[test]
    fn site_operator_diagonals() {
        let sz1 = site_operator(1, 0, Axis::Z).unwrap();
        assert_abs_diff_eq!(sz1.matrix()[(0, 0)].re, 0.5, epsilon = 0.0);
        assert_abs_diff_eq!(sz1.matrix()[(1, 1)].re, -0.5, epsilon = 0.0);

        let sz = site_operator(2, 0, Axis::Z).unwrap();
        let expected = [0.5, 0.5, -0.5, -0.5];
        for (k, &want) in expected.iter().enumerate() {
            assert_abs_diff_eq!(sz.matrix()[(k, k)].re, want, epsilon = 0.0);
        }

        assert!(matches!(site_operator(2, 2, Axis::X), Err(Error::SiteOutOfRange { .. })));
    }

    #[test]
    fn su2_commutators() {
        // [S_y^1, S_z^1] = i S_x^1 on a 2-spin space.
        let n = 2;
        let sy = site_operator(n, 0, Axis::Y).unwrap();
        let sz = site_operator(n, 0, Axis::Z).unwrap();
        let sx = site_operator(n, 0, Axis::X).unwrap();
        let comm = sy.matrix() * sz.matrix() - sz.matrix() * sy.matrix();
        let expected = sx.matrix() * Complex64::new(0.0, 1.0);
        let dev = (&comm - &expected).iter().map(|z| z.norm()).fold(0.0, f64::max);
        assert!(dev < 1e-15);

        // [J_y, J_z] = i J_x for the collective operators.
        let jy = collective_operator(3, Axis::Y);
        let jz = collective_operator(3, Axis::Z);
        let jx = collective_operator(3, Axis::X);
        let comm = jy.matrix() * jz.matrix() - jz.matrix() * jy.matrix();
        let expected = jx.matrix() * Complex64::new(0.0, 1.0);
        let dev = (&comm - &expected).iter().map(|z| z.norm()).fold(0.0, f64::max);
        assert!(dev < 1e-15);
    }

    #[test]
    fn collective_spectrum_and_casimir() {
        let jz = collective_operator(3, Axis::Z);
        let eig = jz.eig();
        assert_abs_diff_eq!(eig.eigenvalues()[7], 1.5, epsilon = 1e-14);
        assert_abs_diff_eq!(eig.eigenvalues()[0], -1.5, epsilon = 1e-14);

        // N=2 Casimir J^2 has eigenvalues 0 (singlet) and 2 (triplet).
        let jx = collective_operator(2, Axis::X);
        let jy = collective_operator(2, Axis::Y);
        let jz = collective_operator(2, Axis::Z);
        let j2 = jx.matrix() * jx.matrix() + jy.matrix() * jy.matrix() + jz.matrix() * jz.matrix();
        let eig = eig_hermitian(&j2).unwrap();
        let expected = [0.0, 2.0, 2.0, 2.0];
        for (k, &want) in expected.iter().enumerate() {
            assert_abs_diff_eq!(eig.eigenvalues()[k], want, epsilon = 1e-12);
        }
    }

    #[test]
    fn secular_hamiltonian_two_spin_spectrum() {
        let spec = SpinSystemSpec::new(
            2,
            DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 1.0, 0.0]),
            ObservableMode::Collective,
        )
        .unwrap();
        let h = secular_hamiltonian(&spec);
        let d = MHZ_TO_RAD_PER_NS;
        let eig = h.eig();
        let expected = [-d / 2.0, 0.0, d / 4.0, d / 4.0];
        for (k, &want) in expected.iter().enumerate() {
            assert_abs_diff_eq!(eig.eigenvalues()[k], want, epsilon = 1e-15);
        }
        assert_abs_diff_eq!(h.matrix().trace().norm(), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn secular_hamiltonian_zero_couplings() {
        let spec = SpinSystemSpec::new(
            3,
            DMatrix::zeros(3, 3),
            ObservableMode::Collective,
        )
        .unwrap();
        let h = secular_hamiltonian(&spec);
        assert!(h.matrix().iter().all(|z| z.norm() == 0.0));
    }

    #[test]
    fn secular_hamiltonian_commutes_with_jz() {
        let mut couplings = DMatrix::from_element(3, 3, 1.0);
        couplings.fill_diagonal(0.0);
        let spec = SpinSystemSpec::new(3, couplings, ObservableMode::Collective).unwrap();
        let h = secular_hamiltonian(&spec);
        let jz = collective_operator(3, Axis::Z);
        let comm = h.matrix() * jz.matrix() - jz.matrix() * h.matrix();
        let dev = comm.iter().map(|z| z.norm()).fold(0.0, f64::max);
        assert!(dev < 1e-12, "commutator deviation {dev:.3e}");
    }

    #[test]
    fn asymmetric_couplings_rejected() {
        let bad = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 2.0, 0.0]);
        assert!(matches!(
            SpinSystemSpec::new(2, bad, ObservableMode::Collective),
            Err(Error::AsymmetricCouplings { .. })
        ));
        let bad_diag = DMatrix::from_row_slice(2, 2, &[0.5, 1.0, 1.0, 0.0]);
        assert!(matches!(
            SpinSystemSpec::new(2, bad_diag, ObservableMode::Collective),
            Err(Error::AsymmetricCouplings { .. })
        ));
    }

    #[test]
    fn dipolar_coupling_benchmark() {
        // Two electrons 1 nm apart along the field axis: 26 MHz.
        let geom = GeometrySpec::electrons(vec![[0.0, 0.0, 0.0], [0.0, 0.0, 1.0]]).unwrap();
        let d = dipolar_coupling(&geom, 0, 1).unwrap();
        assert_abs_diff_eq!(d, 26.0, epsilon = 0.5);
        assert_abs_diff_eq!(dipolar_coupling(&geom, 1, 0).unwrap(), d, epsilon = 0.0);

        // Magic angle: 3 cos^2 theta = 1.
        let magic = GeometrySpec::electrons(vec![
            [0.0, 0.0, 0.0],
            [2.0f64.sqrt(), 0.0, 1.0],
        ])
        .unwrap();
        let d_magic = dipolar_coupling(&magic, 0, 1).unwrap();
        assert_abs_diff_eq!(d_magic, 0.0, epsilon = 1e-9);

        // 1/r^3 scaling: doubling the distance divides by 8.
        let far = GeometrySpec::electrons(vec![[0.0, 0.0, 0.0], [0.0, 0.0, 2.0]]).unwrap();
        let d_far = dipolar_coupling(&far, 0, 1).unwrap();
        assert_abs_diff_eq!(d_far, d / 8.0, epsilon = 1e-12);
        assert_abs_diff_eq!(d_far, 3.25, epsilon = 0.06);

        let coincident = GeometrySpec::electrons(vec![[0.0, 0.0, 0.0], [0.0, 0.0, 0.0]]);
        assert!(matches!(coincident, Err(Error::CoincidentPositions { .. })));
    }

    #[test]
    fn coherent_state_expectations() {
        let psi1 = coherent_state(1);
        let inv_sqrt2 = 1.0 / 2.0f64.sqrt();
        assert_abs_diff_eq!(psi1.amplitudes()[0].re, inv_sqrt2, epsilon = 1e-15);
        assert_abs_diff_eq!(psi1.amplitudes()[1].re, inv_sqrt2, epsilon = 1e-15);

        for n in [3usize, 4] {
            let psi = coherent_state(n);
            let jx = collective_operator(n, Axis::X);
            let jy = collective_operator(n, Axis::Y);
            let jz = collective_operator(n, Axis::Z);
            let mx = expectation(&psi, &jx).unwrap();
            let my = expectation(&psi, &jy).unwrap();
            let mz = expectation(&psi, &jz).unwrap();
            assert_abs_diff_eq!(mx, n as f64 / 2.0, epsilon = 1e-12);
            assert_abs_diff_eq!(my, 0.0, epsilon = 1e-12);
            assert_abs_diff_eq!(mz, 0.0, epsilon = 1e-12);
            let j_mag = (mx * mx + my * my + mz * mz).sqrt();
            assert_abs_diff_eq!(j_mag, n as f64 / 2.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn units_conversion_is_exact() {
        assert_eq!(MHZ_TO_RAD_PER_NS, 2.0 * std::f64::consts::PI * 1e-3);
        assert_eq!(2.5 * MHZ_TO_RAD_PER_NS, 2.0 * std::f64::consts::PI * 1e-3 * 2.5);
    }
}
