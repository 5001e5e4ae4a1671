//! SU(2) subgroup rotations, SU(3) coherent states on (λ,0), the fundamental
//! intelligence eigenproblem, coherent-state angles, and D-functions.
//!
//! A coherent state is the translated lowest weight
//! |ω⟩ = R₁₂(α₁,β₁,−α₁) R₂₃(α₂,β₂,−α₂) |00λ⟩. In the fundamental irrep the
//! column works out to
//!
//!   ( e^{−i(α₁+α₂)} sin½β₁ sin½β₂, −e^{−iα₂} cos½β₁ sin½β₂, cos½β₂ )
//!
//! and every sign convention in this module is pinned by requiring exact
//! agreement with that column.

use nalgebra::{DMatrix, DVector, Vector3};
use num_complex::Complex64;
use std::f64::consts::PI;

use crate::factorial::{sqrt_fact_ratio, sqrt_multinomial};
use crate::observables::fundamental_observables;
use crate::rep::{cartan_matrix, dim, enumerate_basis, ladder_matrix, number_matrix, BasisState, CollectiveOperator};
use crate::Error;

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// The real eigenvalue-problem parameter α together with
/// μ = (1+α)/√(1−α²), which exists for |α| < 1.
///
/// μ(0) = 1 and μ → 0 as α → −1⁺. The guard band around |α| = 1 is
/// rejected at construction: the operator Â − iαB̂ is defective there.
#[derive(Debug, Clone, Copy)]
pub struct AlphaParameter {
    alpha: f64,
    mu: Option<f64>,
}

impl AlphaParameter {
    pub fn new(alpha: f64) -> Result<Self, Error> {
        if !alpha.is_finite() || !crate::alpha_is_regular(alpha) {
            return Err(Error::SingularParameter { alpha });
        }
        let mu = (alpha.abs() < 1.0).then(|| (1.0 + alpha) / (1.0 - alpha * alpha).sqrt());
        Ok(Self { alpha, mu })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// μ, defined only inside |α| < 1.
    pub fn mu(&self) -> Option<f64> {
        self.mu
    }
}

/// The tuple ω = (α₁, β₁, α₂, β₂) parametrizing a coherent state.
/// The β angles range over [0, π]; sign folds are carried by the α phases.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoherentAngles {
    pub alpha1: f64,
    pub beta1: f64,
    pub alpha2: f64,
    pub beta2: f64,
}

impl CoherentAngles {
    pub fn new(alpha1: f64, beta1: f64, alpha2: f64, beta2: f64) -> Self {
        Self {
            alpha1,
            beta1,
            alpha2,
            beta2,
        }
    }

    pub fn zero() -> Self {
        Self::new(0.0, 0.0, 0.0, 0.0)
    }
}

/// Which pair of oscillator modes an SU(2) subgroup rotation mixes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModePair {
    OneTwo,
    TwoThree,
}

impl ModePair {
    fn modes(self) -> (usize, usize) {
        match self {
            ModePair::OneTwo => (1, 2),
            ModePair::TwoThree => (2, 3),
        }
    }
}

/// SU(2) subgroup rotation R_ab(φ, β, χ) = e^{−iφJ_z} e^{−iβJ_y} e^{−iχJ_z}
/// on (λ,0), with J_z = ½(n̂_a − n̂_b) and J_y = (Ĉ_ab − Ĉ_ba)/2i built from
/// the collective generators.
pub fn su2_rotation(pair: ModePair, angles: (f64, f64, f64), lambda: u32) -> CollectiveOperator {
    let (a, b) = pair.modes();
    let (phi, beta, chi) = angles;
    let d = dim(lambda);

    let na = number_matrix(a, lambda).unwrap().matrix;
    let nb = number_matrix(b, lambda).unwrap().matrix;
    let jz_phase = |angle: f64, k: usize| {
        let jz = 0.5 * (na[(k, k)].re - nb[(k, k)].re);
        Complex64::from_polar(1.0, -angle * jz)
    };

    // e^{-i beta J_y}: -i beta J_y = -(beta/2)(C_ab - C_ba) is a real matrix.
    let cab = ladder_matrix(a, b, lambda).unwrap().matrix;
    let cba = ladder_matrix(b, a, lambda).unwrap().matrix;
    let mid = ((cab - cba) * re(-0.5 * beta)).exp();

    let mut out = DMatrix::<Complex64>::zeros(d, d);
    for r in 0..d {
        let left = jz_phase(phi, r);
        for c in 0..d {
            out[(r, c)] = left * mid[(r, c)] * jz_phase(chi, c);
        }
    }
    CollectiveOperator {
        lambda,
        matrix: out,
    }
}

/// The coherent state |ω⟩ = R₁₂(α₁,β₁,−α₁) R₂₃(α₂,β₂,−α₂) |00λ⟩ as a unit
/// vector over the canonical basis.
pub fn coherent_state(omega: &CoherentAngles, lambda: u32) -> DVector<Complex64> {
    let r23 = su2_rotation(
        ModePair::TwoThree,
        (omega.alpha2, omega.beta2, -omega.alpha2),
        lambda,
    );
    let low = dim(lambda) - 1;
    let inner = r23.matrix.column(low).into_owned();
    let r12 = su2_rotation(
        ModePair::OneTwo,
        (omega.alpha1, omega.beta1, -omega.alpha1),
        lambda,
    );
    r12.matrix * inner
}

/// Result of probing the isotropy subgroup of the lowest weight.
#[derive(Debug, Clone, Copy)]
pub struct IsotropyCheck {
    /// ‖T|00λ⟩ − e^{iγ₂λ}|00λ⟩‖.
    pub deviation: f64,
    /// ⟨00λ|T|00λ⟩, expected to be the pure phase e^{iγ₂λ}.
    pub phase: Complex64,
}

/// Apply T(α₃,β₃,γ₁,γ₂) = R₁₂(α₃,β₃,−α₃) e^{iγ₁ĥ₁} e^{iγ₂ĥ₂} to |00λ⟩ and
/// measure how far the result is from the pure phase e^{iγ₂λ}|00λ⟩.
pub fn isotropy_check(
    alpha3: f64,
    beta3: f64,
    gamma1: f64,
    gamma2: f64,
    lambda: u32,
) -> IsotropyCheck {
    let d = dim(lambda);
    let low = d - 1;
    let h1 = cartan_matrix(1, lambda).unwrap().matrix;
    let h2 = cartan_matrix(2, lambda).unwrap().matrix;

    let mut v = DVector::<Complex64>::zeros(d);
    v[low] = re(1.0);
    // diagonal exponentials applied entrywise
    for k in 0..d {
        let angle = gamma1 * h1[(k, k)].re + gamma2 * h2[(k, k)].re;
        v[k] *= Complex64::from_polar(1.0, angle);
    }
    let r12 = su2_rotation(ModePair::OneTwo, (alpha3, beta3, -alpha3), lambda);
    let v = r12.matrix * v;

    let mut expect = DVector::<Complex64>::zeros(d);
    expect[low] = Complex64::from_polar(1.0, gamma2 * lambda as f64);
    IsotropyCheck {
        deviation: (&v - expect).norm(),
        phase: v[low],
    }
}

/// One solution of (Â − iαB̂)|ψ⟩ = κ|ψ⟩ in the fundamental irrep.
#[derive(Debug, Clone)]
pub struct EigenPair {
    pub vector: Vector3<Complex64>,
    pub kappa: Complex64,
}

/// The three fundamental eigenpairs, indexed k = 1, 2, 3 with
/// κ₁ = 0, κ₂ = −(2π/3)√(1−α²), κ₃ = +(2π/3)√(1−α²).
#[derive(Debug, Clone)]
pub struct FundamentalEigensystem {
    pub pairs: [EigenPair; 3],
}

impl FundamentalEigensystem {
    /// 1-based accessor matching the κ ordering above.
    pub fn pair(&self, k: usize) -> &EigenPair {
        &self.pairs[k - 1]
    }
}

/// Solve the fundamental (1,0) eigenproblem of Â − iαB̂ in closed form.
///
/// The operator couples mode 1 to modes 2 and 3 only, so for κ ≠ 0 the
/// eigenvector is (1, N₂₁/κ, N₃₁/κ) and for κ = 0 it is (0, −N₁₃/N₁₂, 1).
/// Eigenvectors are unit-normalized with the third component made real
/// positive. For |α| < 1 the κ are real; otherwise 0 or purely imaginary.
pub fn fundamental_eigensystem(alpha: f64) -> Result<FundamentalEigensystem, Error> {
    let alpha = AlphaParameter::new(alpha)?.alpha();
    let obs = fundamental_observables();
    let n = obs.a - obs.b * Complex64::new(0.0, alpha);

    let n12 = n[(0, 1)];
    let n13 = n[(0, 2)];
    let n21 = n[(1, 0)];
    let n31 = n[(2, 0)];

    let root = Complex64::new(1.0 - alpha * alpha, 0.0).sqrt();
    let kappa2 = re(-2.0 * PI / 3.0) * root;
    let kappa3 = -kappa2;

    let raw = [
        (Vector3::new(re(0.0), -n13 / n12, re(1.0)), Complex64::default()),
        (Vector3::new(re(1.0), n21 / kappa2, n31 / kappa2), kappa2),
        (Vector3::new(re(1.0), n21 / kappa3, n31 / kappa3), kappa3),
    ];
    let pairs = raw.map(|(v, kappa)| {
        let v = v / re(v.norm());
        let phase = v[2].conj() / re(v[2].norm());
        EigenPair {
            vector: v * phase,
            kappa,
        }
    });
    Ok(FundamentalEigensystem { pairs })
}

/// Fold tan(β/2) = t into β ∈ [0, π] with the sign carried as a phase angle
/// of π on the corresponding α slot.
fn fold(t: f64) -> (f64, f64) {
    let beta = 2.0 * t.abs().atan();
    (beta, if t < 0.0 { PI } else { 0.0 })
}

/// Coherent-state angles ω_k with coherent_state(ω_k, 1) equal to the k-th
/// fundamental eigenvector. Defined for |α| < 1, where α₁ and α₂ vanish up
/// to the ±π folds that keep β inside [0, π].
pub fn angles_from_eigenvector(k: usize, alpha: f64) -> Result<CoherentAngles, Error> {
    if !(1..=3).contains(&k) {
        return Err(Error::InvalidEigenvectorIndex(k));
    }
    let p = AlphaParameter::new(alpha)?;
    let mu = p.mu().ok_or(Error::OutOfDomain {
        alpha,
        needs: "|alpha| < 1",
    })?;

    let s3 = 3.0_f64.sqrt();
    let (t1, t2) = match k {
        1 => (0.0, -(1.0 - s3) * mu * mu / 2.0_f64.sqrt()),
        2 => (
            -(3.0 - s3).sqrt() / mu,
            -mu * (3.0 + s3 + (2.0 + s3) * mu * mu).sqrt(),
        ),
        _ => (
            (3.0 - s3).sqrt() / mu,
            -mu * (3.0 + s3 + (2.0 + s3) * mu * mu).sqrt(),
        ),
    };
    let (beta1, alpha1) = fold(t1);
    let (beta2, alpha2) = fold(t2);
    Ok(CoherentAngles::new(alpha1, beta1, alpha2, beta2))
}

/// Bottom-column Wigner little-d element d^J_{M,−J}(β) with doubled
/// arguments (two_j = 2J, two_m = 2M):
///
///   d^J_{M,−J}(β) = √((2J)!/((J+M)!(J−M)!)) (cos½β)^{J−M} (−sin½β)^{J+M}.
pub fn small_d(two_j: u32, two_m: i32, beta: f64) -> Result<f64, Error> {
    let two_j_i = two_j as i64;
    let two_m_i = two_m as i64;
    if two_m_i.abs() > two_j_i || (two_j_i - two_m_i) % 2 != 0 {
        return Err(Error::BadQuantumNumbers {
            two_j: two_j_i,
            two_m: two_m_i,
        });
    }
    let j_plus_m = ((two_j_i + two_m_i) / 2) as u32;
    let j_minus_m = ((two_j_i - two_m_i) / 2) as u32;
    let norm = sqrt_fact_ratio(two_j, j_plus_m, j_minus_m);
    let (s, c) = (0.5 * beta).sin_cos();
    Ok(norm * c.powi(j_minus_m as i32) * (-s).powi(j_plus_m as i32))
}

/// D^{(λ,0)}_{ν;00λ}(ω) computed as the matrix element
/// ⟨ν| R₁₂(α₁,β₁,−α₁) R₂₃(α₂,β₂,−α₂) |00λ⟩, phases included.
pub fn d_function(lambda: u32, nu: &BasisState, omega: &CoherentAngles) -> Complex64 {
    let basis = enumerate_basis(lambda);
    match basis.position(nu) {
        Some(k) => coherent_state(omega, lambda)[k],
        None => Complex64::default(),
    }
}

/// The phase e^{−iθm} as an exact ±1 when θ is one of the folded values
/// {0, π}; the general complex phase otherwise.
fn fold_phase(theta: f64, m: u32) -> Complex64 {
    if theta == 0.0 || m == 0 {
        re(1.0)
    } else if theta == PI {
        re(if m % 2 == 0 { 1.0 } else { -1.0 })
    } else {
        Complex64::from_polar(1.0, -theta * m as f64)
    }
}

/// The full D-function column over the canonical basis of (λ,0), evaluated
/// from the little-d product expressions:
///
///   D_ν(ω) = e^{−i(α₁ν₁ + α₂(ν₁+ν₂))}
///            d^{(ν₁+ν₂)/2}_{(ν₁−ν₂)/2,−(ν₁+ν₂)/2}(β₁)
///            d^{λ/2}_{(ν₁+ν₂−ν₃)/2,−λ/2}(β₂).
///
/// When β₁ = 0 the first factor enforces δ_{ν₁0}.
pub fn d_product_column(lambda: u32, omega: &CoherentAngles) -> Vec<Complex64> {
    enumerate_basis(lambda)
        .iter()
        .map(|nu| {
            let d1 = small_d(nu.n1 + nu.n2, nu.n1 as i32 - nu.n2 as i32, omega.beta1).unwrap();
            let d2 = small_d(
                lambda,
                (nu.n1 + nu.n2) as i32 - nu.n3 as i32,
                omega.beta2,
            )
            .unwrap();
            fold_phase(omega.alpha1, nu.n1) * fold_phase(omega.alpha2, nu.n1 + nu.n2) * re(d1 * d2)
        })
        .collect()
}

/// Complex integer power by repeated multiplication. Keeps sign flips of the
/// base exact, which the λ₂↔λ₃ byte-identity of scans relies on.
pub(crate) fn cpow(z: Complex64, n: u32) -> Complex64 {
    let mut acc = re(1.0);
    for _ in 0..n {
        acc *= z;
    }
    acc
}

/// The D-function column of the λ-fold coherent state whose single-particle
/// column is `c`: amplitude √(λ!/(ν₁!ν₂!ν₃!)) c₁^{ν₁} c₂^{ν₂} c₃^{ν₃}.
/// This is the route used when |α| > 1 and no real angles exist.
pub fn symmetric_power_column(lambda: u32, c: &Vector3<Complex64>) -> Vec<Complex64> {
    enumerate_basis(lambda)
        .iter()
        .map(|nu| {
            re(sqrt_multinomial(lambda, [nu.n1, nu.n2, nu.n3]))
                * (cpow(c[0], nu.n1) * cpow(c[1], nu.n2) * cpow(c[2], nu.n3))
        })
        .collect()
}
