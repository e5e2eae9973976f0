//! Temporary diagnostic: eigendecomposition quality of the N=10 uniform
//! Hamiltonian and the resulting parity violation of the evolved state.
use nalgebra::DMatrix;
use num_complex::Complex64;
use spinsqueeze::{
    coherent_state, collective_operator, evolve, scenario_uniform, secular_hamiltonian, Axis,
};

fn main() {
    let n = 10usize;
    let dim = 1usize << n;
    let spec = scenario_uniform(n, 1.0).unwrap();
    let h = secular_hamiltonian(&spec);
    let eig = h.eig();

    let recon_dev =
        (eig.reconstruct() - h.matrix()).iter().map(|z| z.norm()).fold(0.0, f64::max);
    let gram_dev = (eig.eigenvectors().adjoint() * eig.eigenvectors()
        - DMatrix::<Complex64>::identity(dim, dim))
    .iter()
    .map(|z| z.norm())
    .fold(0.0, f64::max);
    println!("H recon dev: {recon_dev:.3e}, unitarity dev: {gram_dev:.3e}");

    let psi0 = coherent_state(n);
    let jy = collective_operator(n, Axis::Y);
    let jz = collective_operator(n, Axis::Z);
    for tau in [1.0, 89.0, 333.0] {
        let psi = evolve(&psi0, &eig, tau).unwrap();
        let wy = jy.matrix() * psi.amplitudes();
        let wz = jz.matrix() * psi.amplitudes();
        let my = psi.amplitudes().dotc(&wy).re;
        let mz = psi.amplitudes().dotc(&wz).re;
        println!("tau={tau}: <Jy>={my:+.3e} <Jz>={mz:+.3e}");
    }
}
