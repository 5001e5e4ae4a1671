//! Independent verification routes: a direct dense eigendecomposition of
//! Â − iαB̂ on (λ,0), and a symmetrized tensor-product construction that
//! bypasses both the Clebsch-Gordan coefficients and the D-functions.
//!
//! Because Â − iαB̂ is not normal, eigenspaces belonging to different
//! eigenvalues are not orthogonal; the gauge-invariant objects compared
//! across routes are the spectral (oblique) projectors, which are
//! idempotent, mutually annihilating, and sum to the identity.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use std::collections::HashMap;

use crate::coherent::{cpow, fundamental_eigensystem, AlphaParameter};
use crate::coupling::{normalize_phase_fixed, CouplingTriple, IntelligentState};
use crate::factorial::{factorial, multinomial};
use crate::observables::{fundamental_observables, promote_non_hermitian};
use crate::rep::{dim, enumerate_basis};
use crate::Error;

/// Relative eigenvalue-clustering tolerance; exact degeneracies split by
/// far less than this at the dimensions involved.
const CLUSTER_TOL: f64 = 1e-8;

/// Full spectral data of Â − iαB̂ on (λ,0), clustered into eigenspaces.
#[derive(Debug, Clone)]
pub struct EigenspaceDecomposition {
    pub lambda: u32,
    pub alpha: f64,
    /// One representative (cluster mean) per eigenspace, sorted by
    /// (re, im).
    pub eigenvalues: Vec<Complex64>,
    pub multiplicities: Vec<usize>,
    /// Spectral projectors, aligned with `eigenvalues`.
    pub projectors: Vec<DMatrix<Complex64>>,
}

impl EigenspaceDecomposition {
    /// Index of the cluster nearest to κ together with the distance.
    pub fn nearest_cluster(&self, kappa: Complex64) -> (usize, f64) {
        let mut best = (0, f64::INFINITY);
        for (k, ev) in self.eigenvalues.iter().enumerate() {
            let d = (kappa - ev).norm();
            if d < best.1 {
                best = (k, d);
            }
        }
        best
    }
}

/// Diagonalize Â − iαB̂ on (λ,0) and cluster the spectrum into eigenspaces.
///
/// For |α| < 1 the distinct eigenvalues are (2π/3)√(1−α²)·d for
/// d ∈ {−λ..λ}, with multiplicity equal to the number of triples with
/// λ₃−λ₂ = d.
pub fn direct_eigensystem(lambda: u32, alpha: f64) -> Result<EigenspaceDecomposition, Error> {
    let alpha = AlphaParameter::new(alpha)?.alpha();
    let obs = fundamental_observables();
    let n = promote_non_hermitian(&(obs.a - obs.b * Complex64::new(0.0, alpha)), lambda);
    let d = n.dim();

    let m = faer::Mat::<faer::c64>::from_fn(d, d, |i, j| n.matrix[(i, j)]);
    let evd = m.eigen().map_err(|_| Error::EigenFailure)?;
    let values: Vec<Complex64> = evd.S().column_vector().iter().cloned().collect();
    let u = DMatrix::<Complex64>::from_fn(d, d, |i, j| evd.U()[(i, j)]);

    let radius = values.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let tol = CLUSTER_TOL * radius;

    // deterministic greedy clustering over the sorted spectrum
    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&i, &j| {
        (values[i].re, values[i].im)
            .partial_cmp(&(values[j].re, values[j].im))
            .unwrap()
    });
    let mut clusters: Vec<Vec<usize>> = Vec::new();
    for idx in order {
        match clusters
            .iter_mut()
            .find(|c| (values[c[0]] - values[idx]).norm() <= tol)
        {
            Some(c) => c.push(idx),
            None => clusters.push(vec![idx]),
        }
    }

    let centers: Vec<Complex64> = clusters
        .iter()
        .map(|c| c.iter().map(|&i| values[i]).sum::<Complex64>() / Complex64::new(c.len() as f64, 0.0))
        .collect();
    for (i, a) in centers.iter().enumerate() {
        for b in centers.iter().skip(i + 1) {
            let gap = (a - b).norm();
            if gap < 10.0 * tol {
                return Err(Error::DegenerateSpectrumWarning { gap, tol });
            }
        }
    }

    let u_inv = u.clone().try_inverse().ok_or(Error::EigenFailure)?;
    let mut eigenvalues = Vec::with_capacity(clusters.len());
    let mut multiplicities = Vec::with_capacity(clusters.len());
    let mut projectors = Vec::with_capacity(clusters.len());
    for (c, center) in clusters.iter().zip(centers) {
        let cols = u.select_columns(c.iter());
        let rows = u_inv.select_rows(c.iter());
        projectors.push(cols * rows);
        eigenvalues.push(center);
        multiplicities.push(c.len());
    }

    Ok(EigenspaceDecomposition {
        lambda,
        alpha,
        eigenvalues,
        multiplicities,
        projectors,
    })
}

/// Build the intelligent state of `triple` as a symmetrized tensor product:
/// λ₁ copies of fundamental eigenvector 1, λ₂ of 2, λ₃ of 3, convolved
/// combinatorially over symmetric monomials. The 3^λ product space is never
/// materialized, and no CG coefficient or D-function enters.
pub fn tensor_product_state(
    triple: &CouplingTriple,
    alpha: f64,
) -> Result<DVector<Complex64>, Error> {
    let alpha = AlphaParameter::new(alpha)?.alpha();
    let sys = fundamental_eigensystem(alpha)?;

    let mut partial = 0u32;
    let mut acc = DVector::<Complex64>::from_element(1, Complex64::new(1.0, 0.0));
    for (k, mult) in [triple.lambda1, triple.lambda2, triple.lambda3]
        .into_iter()
        .enumerate()
    {
        if mult == 0 {
            continue;
        }
        let c = &sys.pairs[k].vector;
        let slot_basis = enumerate_basis(mult);
        let slot: Vec<Complex64> = slot_basis
            .iter()
            .map(|m| {
                Complex64::new(multinomial(mult, [m.n1, m.n2, m.n3]), 0.0)
                    * (cpow(c[0], m.n1) * cpow(c[1], m.n2) * cpow(c[2], m.n3))
            })
            .collect();

        let old_basis = enumerate_basis(partial);
        partial += mult;
        let new_basis = enumerate_basis(partial);
        let mut next = DVector::<Complex64>::zeros(dim(partial));
        for (i, s) in old_basis.iter().enumerate() {
            if acc[i] == Complex64::default() {
                continue;
            }
            for (j, m) in slot_basis.iter().enumerate() {
                let row = new_basis.position(&s.plus(m)).unwrap();
                next[row] += acc[i] * slot[j];
            }
        }
        acc = next;
    }

    let lambda = triple.lambda();
    let basis = enumerate_basis(lambda);
    let mut amps = DVector::<Complex64>::zeros(dim(lambda));
    for (i, n) in basis.iter().enumerate() {
        let weight = (factorial(n.n1) * factorial(n.n2) * factorial(n.n3)).sqrt();
        amps[i] = acc[i] * Complex64::new(weight, 0.0);
    }
    let (state, _) = normalize_phase_fixed(amps).ok_or(Error::DegenerateConstruction {
        l1: triple.lambda1,
        l2: triple.lambda2,
        l3: triple.lambda3,
        alpha,
    })?;
    Ok(state)
}

/// Compare coupled states against the direct decomposition as eigenspace
/// projectors: the coupled side is grouped by κ, its projector built through
/// the pseudo-inverse of the coupled-state Gram matrix, and the worst
/// operator-norm deviation over clusters is returned.
pub fn eigenspace_match(
    coupled: &[IntelligentState],
    direct: &EigenspaceDecomposition,
    tol: f64,
) -> Result<f64, Error> {
    let d = dim(direct.lambda);
    if coupled.len() != d || coupled.iter().any(|s| s.vector.len() != d) {
        return Err(Error::DimensionMismatch {
            operator: d,
            state: coupled.len(),
        });
    }

    // group coupled states by nearest direct eigenvalue
    let mut groups: HashMap<usize, Vec<usize>> = HashMap::new();
    for (i, st) in coupled.iter().enumerate() {
        let (k, dist) = direct.nearest_cluster(st.kappa);
        if dist > tol.max(CLUSTER_TOL * st.kappa.norm()) {
            return Err(Error::ConstructionBug {
                eigenvalue: st.kappa,
                expected: 0,
                found: 1,
            });
        }
        groups.entry(k).or_default().push(i);
    }
    for (k, mult) in direct.multiplicities.iter().enumerate() {
        let found = groups.get(&k).map_or(0, Vec::len);
        if found != *mult {
            return Err(Error::ConstructionBug {
                eigenvalue: direct.eigenvalues[k],
                expected: *mult,
                found,
            });
        }
    }

    // oblique projectors on the coupled side via the Gram pseudo-inverse
    let mut v = DMatrix::<Complex64>::zeros(d, d);
    for (j, st) in coupled.iter().enumerate() {
        v.set_column(j, &st.vector);
    }
    let gram = v.adjoint() * &v;
    let gram_pinv = gram
        .pseudo_inverse(1e-13)
        .map_err(|_| Error::EigenFailure)?;
    let v_pinv = gram_pinv * v.adjoint();

    let mut worst: f64 = 0.0;
    for (k, p_direct) in direct.projectors.iter().enumerate() {
        let members = &groups[&k];
        let p_coupled = v.select_columns(members.iter()) * v_pinv.select_rows(members.iter());
        let diff = p_coupled - p_direct;
        let sigma = diff
            .svd(false, false)
            .singular_values
            .iter()
            .fold(0.0, |m, &s| f64::max(m, s));
        worst = worst.max(sigma);
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coupling::{enumerate_all_intelligent, intelligent_state_coupled};
    use std::f64::consts::PI;

    #[test]
    fn fundamental_spectrum() {
        let dec = direct_eigensystem(1, 0.5).unwrap();
        assert_eq!(dec.eigenvalues.len(), 3);
        assert_eq!(dec.multiplicities, vec![1, 1, 1]);
        let g = (2.0 * PI / 3.0) * 0.75_f64.sqrt();
        let mut res: Vec<f64> = dec.eigenvalues.iter().map(|z| z.re).collect();
        res.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((res[0] + g).abs() < 1e-12);
        assert!(res[1].abs() < 1e-12);
        assert!((res[2] - g).abs() < 1e-12);
    }

    #[test]
    fn degenerate_zero_cluster_lambda2() {
        // triples (2,0,0) and (0,1,1) share kappa = 0
        let dec = direct_eigensystem(2, 0.3).unwrap();
        let (k, dist) = dec.nearest_cluster(Complex64::default());
        assert!(dist < 1e-12);
        assert_eq!(dec.multiplicities[k], 2);
    }

    #[test]
    fn eigenvalue_count_lambda3() {
        let dec = direct_eigensystem(3, 0.5).unwrap();
        let total: usize = dec.multiplicities.iter().sum();
        assert_eq!(total, 10);
    }

    #[test]
    fn projectors_idempotent_and_complete() {
        for (lambda, alpha) in [(2u32, 0.4), (4, -0.6), (3, 2.0)] {
            let dec = direct_eigensystem(lambda, alpha).unwrap();
            let d = dim(lambda);
            let mut total = DMatrix::<Complex64>::zeros(d, d);
            for p in &dec.projectors {
                assert!((p * p - p).norm() < 1e-9, "idempotency");
                total += p;
            }
            let id = DMatrix::<Complex64>::identity(d, d);
            assert!((total - id).norm() < 1e-9, "completeness");
        }
    }

    #[test]
    fn eigenvalues_match_slot_difference_counting() {
        let lambda = 4u32;
        let alpha = -0.35;
        let dec = direct_eigensystem(lambda, alpha).unwrap();
        let g = (2.0 * PI / 3.0) * (1.0 - alpha * alpha).sqrt();
        let mut expected: HashMap<i64, usize> = HashMap::new();
        for t in CouplingTriple::enumerate(lambda) {
            *expected
                .entry(t.lambda3 as i64 - t.lambda2 as i64)
                .or_default() += 1;
        }
        assert_eq!(dec.eigenvalues.len(), expected.len());
        for (ev, mult) in dec.eigenvalues.iter().zip(&dec.multiplicities) {
            let d = (ev.re / g).round() as i64;
            assert!((ev - Complex64::new(g * d as f64, 0.0)).norm() < 1e-10);
            assert_eq!(expected[&d], *mult, "difference {d}");
        }
    }

    #[test]
    fn hyperbolic_spectrum_is_imaginary_pairs() {
        let dec = direct_eigensystem(2, 3.0).unwrap();
        for ev in &dec.eigenvalues {
            assert!(ev.re.abs() < 1e-10);
        }
        // symmetric under conjugation
        for ev in &dec.eigenvalues {
            let (_, dist) = dec.nearest_cluster(ev.conj());
            assert!(dist < 1e-10);
        }
    }

    #[test]
    fn tensor_route_simple_cases() {
        // single quantum: the fundamental eigenvectors, up to the phase fix
        let alpha = 0.8;
        let sys = fundamental_eigensystem(alpha).unwrap();
        let v = tensor_product_state(&CouplingTriple::new(1, 0, 0), alpha).unwrap();
        let overlap: Complex64 = (0..3).map(|i| v[i].conj() * sys.pair(1).vector[i]).sum();
        assert!((overlap.norm() - 1.0).abs() < 1e-14);
        // eigen-residual of a mixed product
        let alpha = 0.4;
        let obs = fundamental_observables();
        let n = promote_non_hermitian(&(obs.a - obs.b * Complex64::new(0.0, alpha)), 3);
        let v = tensor_product_state(&CouplingTriple::new(1, 1, 1), alpha).unwrap();
        let kappa = v.dotc(&(&n.matrix * &v));
        assert!(kappa.norm() < 1e-10, "mixed slots sum to zero kappa");
        let res = (&n.matrix * &v - &v * kappa).norm();
        assert!(res < 1e-10);
    }

    #[test]
    fn tensor_and_coupled_routes_agree() {
        for alpha in [0.9, -0.5, 0.1, -2.0] {
            for lambda in 1..=4u32 {
                for t in CouplingTriple::enumerate(lambda) {
                    let coupled = intelligent_state_coupled(&t, alpha).unwrap();
                    let tensor = tensor_product_state(&t, alpha).unwrap();
                    let overlap = tensor.dotc(&coupled.vector).norm();
                    assert!(
                        overlap > 1.0 - 1e-10,
                        "alpha={alpha} triple={t}: overlap {overlap}"
                    );
                }
            }
        }
    }

    #[test]
    fn eigenspace_match_fundamental() {
        for alpha in [0.6, -0.3, 1.7] {
            let coupled = enumerate_all_intelligent(1, alpha).unwrap();
            let direct = direct_eigensystem(1, alpha).unwrap();
            let dev = eigenspace_match(&coupled, &direct, 1e-6).unwrap();
            assert!(dev < 1e-10, "alpha={alpha}: {dev}");
        }
    }

    #[test]
    fn eigenspace_match_degenerate_cluster() {
        let alpha = -0.5;
        let coupled = enumerate_all_intelligent(2, alpha).unwrap();
        let direct = direct_eigensystem(2, alpha).unwrap();
        // zero cluster has rank 2 and still matches
        let (k, _) = direct.nearest_cluster(Complex64::default());
        assert_eq!(direct.multiplicities[k], 2);
        let dev = eigenspace_match(&coupled, &direct, 1e-6).unwrap();
        assert!(dev < 1e-9);
    }

    #[test]
    fn eigenspace_match_flags_wrong_multiplicity() {
        let alpha = 0.5;
        let mut coupled = enumerate_all_intelligent(2, alpha).unwrap();
        let direct = direct_eigensystem(2, alpha).unwrap();
        // duplicate one state in place of another: multiplicities break
        let clone = coupled[0].clone();
        coupled[1] = clone;
        assert!(matches!(
            eigenspace_match(&coupled, &direct, 1e-6),
            Err(Error::ConstructionBug { .. })
        ));
    }

    #[test]
    fn guard_band_checked() {
        assert!(matches!(
            direct_eigensystem(2, 1.0),
            Err(Error::SingularParameter { .. })
        ));
        assert!(matches!(
            tensor_product_state(&CouplingTriple::new(1, 0, 0), -1.0),
            Err(Error::SingularParameter { .. })
        ));
    }
}
