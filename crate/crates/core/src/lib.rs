//! Exact-diagonalization simulator for spin squeezing in dipole-coupled
//! spin-1/2 systems.
//!
//! Starting from the coherent state with every spin along +x, the system
//! evolves under the secular dipolar Hamiltonian in the rotating frame. A
//! rotation about x by an angle theta then scans the transverse uncertainty
//! ellipse: the minimum of `Delta J_y^theta` over theta gives the squeezed
//! semi-minor axis, and normalizing by the mean-spin amplitude `J` yields the
//! dimensionless uncertainty `sigma` that is compared against the standard
//! quantum limit `1/sqrt(N)`.
//!
//! The crate is organized as:
//!
//! - [`linalg`]: dense complex vectors/matrices, Hermitian eigendecomposition,
//!   propagation, expectation/uncertainty, partial trace, entropy;
//! - [`spin`]: spin operators, the secular dipolar Hamiltonian, couplings
//!   from geometry, the coherent initial state;
//! - [`squeeze`]: the measurement procedure (theta sweeps, tau sweeps,
//!   entropy traces) and its summary records;
//! - [`scenario`]: presets for the systems studied (uniform, triangle,
//!   chain) and JSON config parsing;
//! - [`report`]: CSV/JSON result writers with fixed 6-significant-digit
//!   formatting.

pub mod error;
pub mod linalg;
pub mod report;
pub mod scenario;
pub mod spin;
pub mod squeeze;

mod gemm;

pub use error::{Error, Result};
pub use linalg::{
    eig_hermitian, evolve, expectation, kron, partial_trace_site, uncertainty,
    von_neumann_entropy, CMatrix, CVector, DensityMatrix, EigenSystem, HermitianOperator,
    QuantumState,
};
pub use scenario::{
    parse_config, scenario_chain, scenario_triangle, scenario_uniform, ScenarioConfig,
    ScenarioKind,
};
pub use spin::{
    coherent_state, collective_operator, coupling_matrix, dipolar_coupling, secular_hamiltonian,
    site_operator, Axis, GeometrySpec, ObservableMode, SpinSystemSpec,
};
pub use squeeze::{
    entropy_trace, sql_reference, EntropyTrace, SqueezingAnalyzer, SqueezingPoint, SweepGrid,
    SweepSummary, ThetaSample, ThetaSweepOutcome,
};
