//! The fixed pair of 3×3 su(3) observables, the frame that diagonalizes
//! their commutator, and the promotion of one-body operators to collective
//! operators on (λ,0).
//!
//! The primed pair A′, B′ generalizes σ_x, σ_y: their eigenbases are
//! mutually unbiased, |⟨Ψᵢ^A′|Φⱼ^B′⟩|² = 1/3. The unprimed A, B, C live in
//! the frame where C = −i[A,B] is diagonal; all constructions downstream
//! work in that frame.

use nalgebra::{DMatrix, Matrix3};
use num_complex::Complex64;
use std::f64::consts::PI;

use crate::rep::{dim, enumerate_basis, CollectiveOperator};
use crate::Error;

/// η₊ = √(2/(3+√3)).
pub fn eta_plus() -> f64 {
    (2.0 / (3.0 + 3.0_f64.sqrt())).sqrt()
}

/// η₋ = √(2/(3−√3)).
pub fn eta_minus() -> f64 {
    (2.0 / (3.0 - 3.0_f64.sqrt())).sqrt()
}

/// The fixed observables and their diagonalizing frame.
///
/// Invariants (all to machine precision): `a_prime`, `b_prime`, `a`, `b`
/// Hermitian; `u` unitary; `c_prime = −i[a_prime, b_prime]`; `c = −i[a,b]`
/// diagonal; `x = u⁻¹ x_prime u` for x in {a, b, c}.
#[derive(Debug, Clone)]
pub struct ObservableSet {
    pub a_prime: Matrix3<Complex64>,
    pub b_prime: Matrix3<Complex64>,
    pub c_prime: Matrix3<Complex64>,
    pub u: Matrix3<Complex64>,
    pub a: Matrix3<Complex64>,
    pub b: Matrix3<Complex64>,
    pub c: Matrix3<Complex64>,
}

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn im(x: f64) -> Complex64 {
    Complex64::new(0.0, x)
}

/// Build the observable set of the fixed pair.
///
/// A′ = (2π/3)·diag(0,1,−1), B′ = (2πi/(3√3))·antisym, and the commutator
/// frame follows from them.
pub fn fundamental_observables() -> ObservableSet {
    let s3 = 3.0_f64.sqrt();
    let ga = 2.0 * PI / 3.0;
    let gb = 2.0 * PI / (3.0 * s3);

    let a_prime = Matrix3::new(
        re(0.0),
        re(0.0),
        re(0.0),
        re(0.0),
        re(ga),
        re(0.0),
        re(0.0),
        re(0.0),
        re(-ga),
    );
    let b_prime = Matrix3::new(
        re(0.0),
        im(-gb),
        im(gb),
        im(gb),
        re(0.0),
        im(-gb),
        im(-gb),
        im(gb),
        re(0.0),
    );
    let c_prime = (a_prime * b_prime - b_prime * a_prime) * im(-1.0);

    let rm = 1.0 / (3.0 - s3).sqrt();
    let rp = 1.0 / (3.0 + s3).sqrt();
    let w = 1.0 / 2.0_f64.sqrt();
    let u = Matrix3::new(
        re(0.0),
        re(w * (1.0 - s3) * rm),
        re(w * (1.0 + s3) * rp),
        re(-w),
        re(w * rm),
        re(w * rp),
        re(w),
        re(w * rm),
        re(w * rp),
    );

    // The rotated observables in closed form; u⁻¹ X' u reproduces them to
    // machine precision (tested), but the closed forms keep the zero
    // pattern exact.
    let a = Matrix3::new(
        re(0.0),
        re(-ga * rm),
        re(-ga * rp),
        re(-ga * rm),
        re(0.0),
        re(0.0),
        re(-ga * rp),
        re(0.0),
        re(0.0),
    );
    let b = Matrix3::new(
        re(0.0),
        im(ga * rm),
        im(-ga * rp),
        im(-ga * rm),
        re(0.0),
        re(0.0),
        im(ga * rp),
        re(0.0),
        re(0.0),
    );
    let gc = 4.0 * PI * PI / (9.0 * s3);
    let c = Matrix3::from_diagonal(&nalgebra::Vector3::new(
        re(2.0 * gc),
        re((-1.0 - s3) * gc),
        re((-1.0 + s3) * gc),
    ));

    ObservableSet {
        a_prime,
        b_prime,
        c_prime,
        u,
        a,
        b,
        c,
    }
}

/// Sorted Hermitian eigensystem with a deterministic phase: eigenvalues
/// ascending, each eigenvector scaled so its largest-magnitude component is
/// real positive.
fn eigenbasis(m: &Matrix3<Complex64>) -> [(f64, nalgebra::Vector3<Complex64>); 3] {
    let eig = m.hermitian_part().symmetric_eigen();
    let mut order = [0usize, 1, 2];
    order.sort_by(|&i, &j| eig.eigenvalues[i].partial_cmp(&eig.eigenvalues[j]).unwrap());
    order.map(|k| {
        let mut v = eig.eigenvectors.column(k).into_owned();
        let mut best = 0;
        for i in 1..3 {
            if v[i].norm() > v[best].norm() {
                best = i;
            }
        }
        let phase = v[best].conj() / v[best].norm();
        v *= phase;
        (eig.eigenvalues[k], v)
    })
}

/// Check the mutual unbiasedness of the A′ and B′ eigenbases.
///
/// Returns max |‖⟨Ψᵢ|Φⱼ⟩‖² − 1/3| over the nine overlaps.
pub fn mub_overlap_check() -> f64 {
    let obs = fundamental_observables();
    let av = eigenbasis(&obs.a_prime);
    let bv = eigenbasis(&obs.b_prime);
    let mut worst: f64 = 0.0;
    for (_, psi) in &av {
        for (_, phi) in &bv {
            let overlap = psi.dotc(phi).norm_sqr();
            worst = worst.max((overlap - 1.0 / 3.0).abs());
        }
    }
    worst
}

fn hermiticity_deviation(m: &Matrix3<Complex64>) -> f64 {
    (m - m.adjoint()).norm()
}

/// Lift a Hermitian one-body operator m to Σᵢⱼ mᵢⱼ a_i†a_j on (λ,0).
///
/// For λ = 1 this reproduces m itself in the canonical basis.
pub fn promote(m: &Matrix3<Complex64>, lambda: u32) -> Result<CollectiveOperator, Error> {
    let dev = hermiticity_deviation(m);
    if dev > 1e-12 {
        return Err(Error::NotHermitian { deviation: dev });
    }
    Ok(promote_non_hermitian(m, lambda))
}

/// The same lift without the Hermiticity requirement, for operators like
/// Â − iαB̂.
pub fn promote_non_hermitian(m: &Matrix3<Complex64>, lambda: u32) -> CollectiveOperator {
    let basis = enumerate_basis(lambda);
    let d = dim(lambda);
    let mut out = DMatrix::<Complex64>::zeros(d, d);
    for (col, s) in basis.iter().enumerate() {
        let occ = [s.n1, s.n2, s.n3];
        for i in 0..3 {
            for j in 0..3 {
                let mij = m[(i, j)];
                if mij == re(0.0) {
                    continue;
                }
                if i == j {
                    out[(col, col)] += mij * re(occ[i] as f64);
                } else if occ[j] > 0 {
                    let mut t = occ;
                    t[i] += 1;
                    t[j] -= 1;
                    let target = crate::rep::BasisState::new(t[0], t[1], t[2]);
                    let row = basis.position(&target).unwrap();
                    out[(row, col)] += mij * re((((occ[i] + 1) * occ[j]) as f64).sqrt());
                }
            }
        }
    }
    CollectiveOperator { lambda, matrix: out }
}
