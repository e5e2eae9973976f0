//! Thin wrapper around `matrixmultiply`'s complex gemm for the hot
//! matrix-times-block products in the theta sweep.

use matrixmultiply::{zgemm, CGemmOption};
use nalgebra::DMatrix;
use num_complex::Complex64;

/// Computes `c = a * b` for dense column-major complex matrices.
///
/// `num_complex::Complex64` is `repr(C)` with `re` followed by `im`, so its
/// storage is layout-compatible with the `[f64; 2]` pairs `zgemm` expects.
pub(crate) fn mul_into(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>, c: &mut DMatrix<Complex64>) {
    let (m, k) = a.shape();
    let (kb, n) = b.shape();
    assert_eq!(k, kb, "inner dimensions must agree");
    assert_eq!(c.shape(), (m, n), "output shape must be {m} x {n}");
    if m == 0 || n == 0 || k == 0 {
        c.fill(Complex64::new(0.0, 0.0));
        return;
    }
    unsafe {
        zgemm(
            CGemmOption::Standard,
            CGemmOption::Standard,
            m,
            k,
            n,
            [1.0, 0.0],
            a.as_ptr().cast::<[f64; 2]>(),
            1,
            m as isize,
            b.as_ptr().cast::<[f64; 2]>(),
            1,
            k as isize,
            [0.0, 0.0],
            c.as_mut_ptr().cast::<[f64; 2]>(),
            1,
            m as isize,
        );
    }
}

/// Computes `c = a^dag * b`, materializing the adjoint once. Used only at
/// analyzer construction, not in per-tau loops.
pub(crate) fn ad_mul_into(
    a: &DMatrix<Complex64>,
    b: &DMatrix<Complex64>,
    c: &mut DMatrix<Complex64>,
) {
    let adjoint = a.adjoint();
    mul_into(&adjoint, b, c);
}
