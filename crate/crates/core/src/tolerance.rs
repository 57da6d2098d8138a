//! Numerical tolerances used throughout the crate.
//!
//! Exact computations (sequences, polynomials, characteristic polynomials,
//! the closed-form oracle, every axiom check on an integer table) carry no
//! tolerance at all. The constants here only gate floating-point stages.

/// Off-diagonal Frobenius norm (relative to `‖A‖_F`) at which cyclic Jacobi stops.
pub const JACOBI_OFF_DIAGONAL: f64 = 1e-9;

/// Maximum number of full Jacobi sweeps.
pub const JACOBI_MAX_SWEEPS: usize = 100;

/// Absolute gap under which two Jacobi eigenvalues belong to the same cluster.
pub const EIGEN_CLUSTER: f64 = 1e-6;

/// Agreement between Jacobi eigenvalues and bisected roots of `q_k`, and
/// between Jacobi projections and Lagrange-interpolated projections.
pub const SPECTRAL_CROSS_CHECK: f64 = 1e-6;

/// `Σ μ_j = 1` and `μ₁ = μ₂ = 1/(2k+3)`.
pub const TRACE_WEIGHTS: f64 = 1e-8;

/// `⟨X, Y⟩_μ = δ_{X,Y}` for same-grade basis elements.
pub const ORTHONORMALITY: f64 = 1e-7;

/// Distance from `⟨XY, Z⟩_μ` to the nearest integer.
pub const ROUNDING: f64 = 1e-6;

/// Matrix identities in the model algebra (relative to the size of the terms).
pub const MODEL_IDENTITY: f64 = 1e-7;

/// Relative residual of `Σ_Z N_{XY}^Z d(Z) = d(X) d(Y)`.
pub const DIMENSION: f64 = 1e-6;

/// Relative step size at which power iteration is considered converged.
pub const POWER_ITERATION: f64 = 1e-12;

/// Iteration cap for power iteration.
pub const POWER_ITERATION_MAX: usize = 1_000_000;

/// Eigenvalue threshold for the numerical rank of a Gram matrix.
pub const GRAM_RANK: f64 = 1e-6;
