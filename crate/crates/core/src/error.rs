use num_complex::Complex64;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("mode index {0} is not in 1..=3")]
    InvalidMode(usize),
    #[error("C_{{ii}} is not a ladder generator; use a number operator for mode {0}")]
    InvalidGenerator(usize),
    #[error("cartan label {0} is not 1 or 2")]
    InvalidCartanLabel(usize),
    #[error("alpha = {alpha} lies inside the guard band around |alpha| = 1 where A - i alpha B is defective")]
    SingularParameter { alpha: f64 },
    #[error("alpha = {alpha} is outside the domain of this operation ({needs})")]
    OutOfDomain { alpha: f64, needs: &'static str },
    #[error("bad quantum numbers: two_j = {two_j}, two_m = {two_m}")]
    BadQuantumNumbers { two_j: i64, two_m: i64 },
    #[error("eigenvector index {0} is not in 1..=3")]
    InvalidEigenvectorIndex(usize),
    #[error("3x3 matrix is not Hermitian (deviation {deviation:.3e}); promote it with promote_non_hermitian if intended")]
    NotHermitian { deviation: f64 },
    #[error("state has norm {norm} but a unit vector is required")]
    UnnormalizedState { norm: f64 },
    #[error("dimension mismatch: operator is {operator} but state has length {state}")]
    DimensionMismatch { operator: usize, state: usize },
    #[error("computed variance {variance:.3e} is negative beyond tolerance")]
    NumericalFailure { variance: f64 },
    #[error("coupled amplitudes vanished for triple ({l1},{l2},{l3}) at alpha = {alpha}")]
    DegenerateConstruction { l1: u32, l2: u32, l3: u32, alpha: f64 },
    #[error("eigendecomposition failed to converge")]
    EigenFailure,
    #[error("two eigenvalue clusters are separated by less than 10x the clustering tolerance (gap {gap:.3e}, tol {tol:.3e})")]
    DegenerateSpectrumWarning { gap: f64, tol: f64 },
    #[error("cluster at {eigenvalue} has multiplicity {expected} but {found} coupled states matched it")]
    ConstructionBug {
        eigenvalue: Complex64,
        expected: usize,
        found: usize,
    },
}
