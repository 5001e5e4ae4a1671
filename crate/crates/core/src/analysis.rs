//! Expectations, variances, intelligence residuals, the closed-form
//! predictions for |α| < 1, and α-scan tables.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::PI;

use crate::coherent::AlphaParameter;
use crate::coupling::{intelligent_state_coupled, CouplingTriple};
use crate::observables::{fundamental_observables, promote};
use crate::rep::CollectiveOperator;
use crate::Error;

/// One row of an α-scan.
#[derive(Debug, Clone, Copy)]
pub struct UncertaintyRecord {
    pub alpha: f64,
    pub delta_a: f64,
    pub delta_b: f64,
    /// ΔA·ΔB.
    pub product: f64,
    /// ½|⟨Ĉ⟩|, the Robertson bound.
    pub half_abs_exp_c: f64,
    /// ‖(Â − iαB̂)ψ − κψ‖.
    pub eigen_residual: f64,
    /// |ΔA·ΔB − ½|⟨Ĉ⟩||.
    pub saturation_residual: f64,
    pub kappa: Complex64,
}

/// The collective observables of one irrep, with the operator squares
/// pre-multiplied. Variances use explicit matrix squares throughout.
#[derive(Debug, Clone)]
pub struct ObservableFrame {
    pub lambda: u32,
    a: DMatrix<Complex64>,
    b: DMatrix<Complex64>,
    c: DMatrix<Complex64>,
    a_sq: DMatrix<Complex64>,
    b_sq: DMatrix<Complex64>,
}

impl ObservableFrame {
    pub fn new(lambda: u32) -> Self {
        let obs = fundamental_observables();
        let a = promote(&obs.a, lambda).unwrap().matrix;
        let b = promote(&obs.b, lambda).unwrap().matrix;
        let c = promote(&obs.c, lambda).unwrap().matrix;
        let a_sq = &a * &a;
        let b_sq = &b * &b;
        Self {
            lambda,
            a,
            b,
            c,
            a_sq,
            b_sq,
        }
    }
}

fn check_state(dim: usize, state: &DVector<Complex64>) -> Result<(), Error> {
    if state.len() != dim {
        return Err(Error::DimensionMismatch {
            operator: dim,
            state: state.len(),
        });
    }
    let norm = state.norm();
    if (norm - 1.0).abs() > 1e-8 {
        return Err(Error::UnnormalizedState { norm });
    }
    Ok(())
}

/// ⟨ψ|Ô|ψ⟩ for a unit vector; real to machine precision when Ô is Hermitian.
pub fn expectation(op: &CollectiveOperator, state: &DVector<Complex64>) -> Result<Complex64, Error> {
    check_state(op.dim(), state)?;
    Ok(state.dotc(&(&op.matrix * state)))
}

fn variance(sq_exp: f64, mean: f64) -> Result<f64, Error> {
    let var = sq_exp - mean * mean;
    if var < -1e-10 {
        return Err(Error::NumericalFailure { variance: var });
    }
    Ok(var.max(0.0))
}

/// Build the full uncertainty record of a unit state against a prepared
/// frame.
pub fn variances_in_frame(
    frame: &ObservableFrame,
    state: &DVector<Complex64>,
    alpha: f64,
) -> Result<UncertaintyRecord, Error> {
    check_state(frame.a.nrows(), state)?;

    let av = &frame.a * state;
    let bv = &frame.b * state;
    let exp_a = state.dotc(&av).re;
    let exp_b = state.dotc(&bv).re;
    let exp_a_sq = state.dotc(&(&frame.a_sq * state)).re;
    let exp_b_sq = state.dotc(&(&frame.b_sq * state)).re;
    let exp_c = state.dotc(&(&frame.c * state)).re;

    let delta_a = variance(exp_a_sq, exp_a)?.sqrt();
    let delta_b = variance(exp_b_sq, exp_b)?.sqrt();

    // residual of the non-Hermitian eigenproblem, reusing the matvecs
    let nv = &av - &bv * Complex64::new(0.0, alpha);
    let kappa = state.dotc(&nv);
    let eigen_residual = (&nv - state * kappa).norm();

    let product = delta_a * delta_b;
    let half_abs_exp_c = 0.5 * exp_c.abs();
    Ok(UncertaintyRecord {
        alpha,
        delta_a,
        delta_b,
        product,
        half_abs_exp_c,
        eigen_residual,
        saturation_residual: (product - half_abs_exp_c).abs(),
        kappa,
    })
}

/// As [`variances_in_frame`], building the frame for one call.
pub fn variances(
    state: &DVector<Complex64>,
    lambda: u32,
    alpha: f64,
) -> Result<UncertaintyRecord, Error> {
    variances_in_frame(&ObservableFrame::new(lambda), state, alpha)
}

/// Closed-form eigenvalue (2π/3)√(1−α²)(λ₃−λ₂), valid for |α| < 1.
pub fn predicted_eigenvalue(triple: &CouplingTriple, alpha: f64) -> Result<f64, Error> {
    if alpha.abs() >= 1.0 || !alpha.is_finite() {
        return Err(Error::OutOfDomain {
            alpha,
            needs: "|alpha| < 1",
        });
    }
    let diff = triple.lambda3 as f64 - triple.lambda2 as f64;
    Ok((2.0 * PI / 3.0) * (1.0 - alpha * alpha).sqrt() * diff)
}

/// The uncertainty product every intelligent state of (λ,0) reaches as
/// α → −1: 2π²(√3−1)λ / (9√3).
pub fn alpha_minus_one_limit(lambda: u32) -> f64 {
    2.0 * PI * PI * (3.0_f64.sqrt() - 1.0) * lambda as f64 / (9.0 * 3.0_f64.sqrt())
}

/// Evaluate one record per grid point for a fixed triple. Grid points inside
/// the guard bands are rejected by the construction and propagate as errors.
pub fn scan_alpha(
    triple: &CouplingTriple,
    alphas: &[f64],
) -> Result<Vec<UncertaintyRecord>, Error> {
    let frame = ObservableFrame::new(triple.lambda());
    alphas
        .par_iter()
        .map(|&alpha| {
            let st = intelligent_state_coupled(triple, alpha)?;
            variances_in_frame(&frame, &st.vector, alpha)
        })
        .collect()
}

/// Odd map of [−1,1] onto itself clustering points toward ±1; the
/// tanh/atanh pair is the logistic-sigmoid family.
fn sigmoid_warp(s: f64, strength: f64) -> f64 {
    if s >= 1.0 {
        1.0
    } else if s <= -1.0 {
        -1.0
    } else {
        (strength * s.atanh()).tanh()
    }
}

/// Map the unit interval onto itself, clustering points toward whichever
/// ends are flagged.
fn warp(u: f64, left: bool, right: bool) -> f64 {
    const K: f64 = 3.0;
    match (left, right) {
        (false, false) => u,
        (false, true) => sigmoid_warp(u, K),
        (true, false) => 1.0 - sigmoid_warp(1.0 - u, K),
        (true, true) => 0.5 * (1.0 + sigmoid_warp(2.0 * u - 1.0, K)),
    }
}

/// Build a scan grid over [min, max] with roughly `points` entries,
/// logistically densified toward the singular points α = ±1 and excluding
/// the guard bands around them. Exact 0 is included whenever the range
/// spans it.
pub fn alpha_grid(min: f64, max: f64, points: usize, guard: f64) -> Vec<f64> {
    assert!(min < max, "empty alpha range");
    let points = points.max(2);

    let mut cuts = vec![min];
    for bp in [-1.0, 1.0] {
        if bp > min && bp < max {
            cuts.push(bp);
        }
    }
    cuts.push(max);

    let near_singular = |x: f64| (x.abs() - 1.0).abs() < guard || x == -1.0 || x == 1.0;
    let nearest_pole = |x: f64| if (x - 1.0).abs() < (x + 1.0).abs() { 1.0 } else { -1.0 };
    let total_span = max - min;
    let mut grid = Vec::with_capacity(points + 4);
    for seg in cuts.windows(2) {
        let (mut a, mut b) = (seg[0], seg[1]);
        let left_sing = near_singular(a);
        let right_sing = near_singular(b);
        if left_sing {
            a = nearest_pole(a) + guard;
        }
        if right_sing {
            b = nearest_pole(b) - guard;
        }
        if a >= b {
            continue;
        }
        let n = (((b - a) / total_span * points as f64).round() as usize).max(2);
        for i in 0..n {
            let u = i as f64 / (n - 1) as f64;
            grid.push(a + (b - a) * warp(u, left_sing, right_sing));
        }
    }
    if min < 0.0 && max > 0.0 {
        grid.push(0.0);
    }
    grid.sort_by(|x, y| x.partial_cmp(y).unwrap());
    grid.dedup();
    grid.retain(|&x| (x.abs() - 1.0).abs() >= guard);
    grid
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coherent::fundamental_eigensystem;
    use crate::coupling::enumerate_all_intelligent;
    use crate::observables::promote_non_hermitian;
    use crate::rep::{dim, enumerate_basis};

    fn re(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    fn lowest_weight_state(lambda: u32) -> DVector<Complex64> {
        let mut v = DVector::zeros(dim(lambda));
        v[dim(lambda) - 1] = re(1.0);
        v
    }

    #[test]
    fn expectation_examples() {
        let obs = fundamental_observables();
        // identity operator
        let id = CollectiveOperator {
            lambda: 2,
            matrix: DMatrix::identity(6, 6),
        };
        let v = lowest_weight_state(2);
        assert!((expectation(&id, &v).unwrap() - re(1.0)).norm() < 1e-15);

        // promote(c) on |00λ⟩ = λ (4π²/9√3)(−1+√3)
        for lambda in [1u32, 5] {
            let c = promote(&obs.c, lambda).unwrap();
            let v = lowest_weight_state(lambda);
            let expect =
                lambda as f64 * 4.0 * PI * PI / (9.0 * 3.0_f64.sqrt()) * (3.0_f64.sqrt() - 1.0);
            assert!((expectation(&c, &v).unwrap() - re(expect)).norm() < 1e-12);
        }

        // promote(a,1) on eigenvector 2 at alpha = 0 gives -2pi/3
        let sys = fundamental_eigensystem(0.0).unwrap();
        let a1 = promote(&obs.a, 1).unwrap();
        let v = DVector::from_row_slice(sys.pair(2).vector.as_slice());
        assert!((expectation(&a1, &v).unwrap() - re(-2.0 * PI / 3.0)).norm() < 1e-13);
    }

    #[test]
    fn expectation_rejects_bad_states() {
        let id = CollectiveOperator {
            lambda: 1,
            matrix: DMatrix::identity(3, 3),
        };
        let long = DVector::from_element(6, re(0.5));
        assert!(matches!(
            expectation(&id, &long),
            Err(Error::DimensionMismatch { .. })
        ));
        let unnorm = DVector::from_element(3, re(1.0));
        assert!(matches!(
            expectation(&id, &unnorm),
            Err(Error::UnnormalizedState { .. })
        ));
    }

    #[test]
    fn saturation_and_variance_identities() {
        for alpha in [0.5, -0.5, 0.1, 2.0, -5.0] {
            for lambda in [1u32, 3] {
                let frame = ObservableFrame::new(lambda);
                for st in enumerate_all_intelligent(lambda, alpha).unwrap() {
                    let r = variances_in_frame(&frame, &st.vector, alpha).unwrap();
                    assert!(r.saturation_residual < 1e-10);
                    assert!(r.eigen_residual < 1e-10);
                    // exp_c recovered from the record
                    let exp_c = 2.0 * r.half_abs_exp_c * (-alpha).signum();
                    // alpha * <C> <= 0, so sign(<C>) = -sign(alpha)
                    assert!(
                        (r.delta_a * r.delta_a + 0.5 * alpha * exp_c).abs() < 1e-10,
                        "alpha={alpha} triple={}",
                        st.triple
                    );
                    assert!(
                        (r.delta_b * r.delta_b + exp_c / (2.0 * alpha)).abs() < 1e-10
                    );
                }
            }
        }
    }

    #[test]
    fn alpha_zero_states_are_sharp() {
        for st in enumerate_all_intelligent(3, 0.0).unwrap() {
            let r = variances(&st.vector, 3, 0.0).unwrap();
            assert!(r.delta_a < 1e-12, "triple {}", st.triple);
            assert!(r.product < 1e-12);
        }
    }

    #[test]
    fn predicted_eigenvalue_values() {
        let g = 2.0 * PI / 3.0;
        let t = CouplingTriple::new(0, 0, 1);
        assert!((predicted_eigenvalue(&t, 0.0).unwrap() - g).abs() < 1e-15);
        let t = CouplingTriple::new(2, 4, 1);
        assert!((predicted_eigenvalue(&t, 0.0).unwrap() + 2.0 * PI).abs() < 1e-14);
        let t = CouplingTriple::new(1, 2, 2);
        for alpha in [-0.9, 0.3] {
            assert_eq!(predicted_eigenvalue(&t, alpha).unwrap(), 0.0);
        }
        assert!(matches!(
            predicted_eigenvalue(&t, 1.2),
            Err(Error::OutOfDomain { .. })
        ));
    }

    #[test]
    fn limit_formula() {
        assert_eq!(alpha_minus_one_limit(0), 0.0);
        let three = alpha_minus_one_limit(3);
        let expect = 2.0 * PI * PI * (3.0_f64.sqrt() - 1.0) * 3.0 / (9.0 * 3.0_f64.sqrt());
        assert!((three - expect).abs() < 1e-15);
        assert!((alpha_minus_one_limit(7) - 7.0 / 3.0 * three).abs() < 1e-13);
    }

    #[test]
    fn scan_hits_the_minus_one_limit() {
        let t = CouplingTriple::new(3, 0, 0);
        let recs = scan_alpha(&t, &[-1.0 + 1e-5]).unwrap();
        let limit = alpha_minus_one_limit(3);
        assert!((recs[0].product - limit).abs() / limit < 1e-3);
    }

    #[test]
    fn scan_swap_symmetry_and_origin() {
        let grid = [-0.8, -0.3, 0.0, 0.4, 2.0];
        let a = scan_alpha(&CouplingTriple::new(1, 2, 0), &grid).unwrap();
        let b = scan_alpha(&CouplingTriple::new(1, 0, 2), &grid).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.product.to_bits(), y.product.to_bits());
        }
        // alpha = 0 row has zero product
        assert!(a[2].product < 1e-12);
    }

    #[test]
    fn large_alpha_decay() {
        for triple in [CouplingTriple::new(2, 1, 0), CouplingTriple::new(1, 1, 3)] {
            for sign in [1.0, -1.0] {
                let recs = scan_alpha(&triple, &[sign * 2.0, sign * 50.0]).unwrap();
                assert!(
                    recs[1].product < recs[0].product,
                    "triple {} sign {sign}",
                    triple
                );
            }
        }
    }

    #[test]
    fn grid_properties() {
        let g = alpha_grid(-5.0, 5.0, 400, 1e-6);
        assert!(g.len() >= 300);
        assert!(g.iter().all(|&x| (x.abs() - 1.0).abs() >= 1e-6));
        assert!(g.contains(&0.0));
        assert!(g.windows(2).all(|w| w[0] < w[1]));
        // densified: the nearest points to -1 sit at the guard distance
        let closest = g
            .iter()
            .map(|&x| (x + 1.0).abs())
            .fold(f64::INFINITY, f64::min);
        assert!(closest < 1e-5, "closest approach {closest}");
        // endpoints survive
        assert_eq!(*g.first().unwrap(), -5.0);
        assert_eq!(*g.last().unwrap(), 5.0);
    }

    #[test]
    fn grid_without_singularities_is_plain() {
        let g = alpha_grid(2.0, 3.0, 11, 1e-6);
        assert_eq!(g.len(), 11);
        assert!((g[5] - 2.5).abs() < 1e-12);
    }

    #[test]
    fn record_against_non_hermitian_residual() {
        let obs = fundamental_observables();
        let alpha = 0.7;
        let st = intelligent_state_coupled(&CouplingTriple::new(1, 1, 1), alpha).unwrap();
        let r = variances(&st.vector, 3, alpha).unwrap();
        let n = promote_non_hermitian(&(obs.a - obs.b * Complex64::new(0.0, alpha)), 3);
        let direct = (&n.matrix * &st.vector - &st.vector * st.kappa).norm();
        assert!((r.eigen_residual - direct).abs() < 1e-12);
        assert_eq!(enumerate_basis(3).len(), 10);
    }
}
