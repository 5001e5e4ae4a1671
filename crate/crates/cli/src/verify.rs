//! The verification suite behind `su3int verify`: each check reduces to a
//! single worst-case figure compared against a threshold.

use su3int::analysis::{predicted_eigenvalue, variances_in_frame, ObservableFrame};
use su3int::coherent::isotropy_check;
use su3int::coupling::{enumerate_all_intelligent, gram_singular_ratio};
use su3int::observables::{fundamental_observables, mub_overlap_check, promote};
use su3int::oracle::{direct_eigensystem, eigenspace_match, tensor_product_state};
use su3int::Error;

/// Direction of a check's comparison.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Sense {
    AtMost,
    AtLeast,
}

#[derive(Debug, Clone)]
pub struct CheckResult {
    pub name: &'static str,
    pub metric: f64,
    pub threshold: f64,
    pub sense: Sense,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        match self.sense {
            Sense::AtMost => self.metric <= self.threshold,
            Sense::AtLeast => self.metric >= self.threshold,
        }
    }
}

/// Numerical-rank floor for the linear-independence check; states are
/// exactly independent but the Gram conditioning decays toward |α| = 1.
pub const RANK_FLOOR: f64 = 1e-8;

/// Run the full check battery for one λ over a list of α values.
pub fn run_checks(lambda: u32, alphas: &[f64], tol: f64) -> Result<Vec<CheckResult>, Error> {
    let obs = fundamental_observables();
    let frame = ObservableFrame::new(lambda);
    let c_op = promote(&obs.c, lambda).unwrap();

    let mut saturation: f64 = 0.0;
    let mut eigenvalue: f64 = 0.0;
    let mut variance_identity: f64 = 0.0;
    let mut rank: f64 = f64::INFINITY;
    let mut projector: f64 = 0.0;
    let mut tensor_gap: f64 = 0.0;

    for &alpha in alphas {
        let states = enumerate_all_intelligent(lambda, alpha)?;

        for st in &states {
            let rec = variances_in_frame(&frame, &st.vector, alpha)?;
            saturation = saturation.max(rec.saturation_residual);

            if alpha.abs() < 1.0 {
                let predicted = predicted_eigenvalue(&st.triple, alpha)?;
                eigenvalue = eigenvalue.max((st.kappa.re - predicted).abs().max(st.kappa.im.abs()));
            }
            if alpha != 0.0 {
                let exp_c = su3int::analysis::expectation(&c_op, &st.vector)?.re;
                let da2 = rec.delta_a * rec.delta_a;
                let db2 = rec.delta_b * rec.delta_b;
                variance_identity = variance_identity
                    .max((da2 + 0.5 * alpha * exp_c).abs())
                    .max((db2 + exp_c / (2.0 * alpha)).abs());
            }
        }

        rank = rank.min(gram_singular_ratio(&states));

        let direct = direct_eigensystem(lambda, alpha)?;
        projector = projector.max(eigenspace_match(&states, &direct, 1e-6)?);
        for st in &states {
            let tensor = tensor_product_state(&st.triple, alpha)?;
            tensor_gap = tensor_gap.max(1.0 - tensor.dotc(&st.vector).norm());
        }
    }

    // isotropy over a fixed parameter sweep
    let mut isotropy: f64 = 0.0;
    for (i, &a3) in [-2.1, 0.0, 0.9].iter().enumerate() {
        for (j, &b3) in [0.4, 2.8].iter().enumerate() {
            let g1 = 0.3 + 0.4 * i as f64;
            let g2 = -0.8 + 0.5 * j as f64;
            isotropy = isotropy.max(isotropy_check(a3, b3, g1, g2, lambda).deviation);
        }
    }

    Ok(vec![
        CheckResult {
            name: "saturation",
            metric: saturation,
            threshold: tol,
            sense: Sense::AtMost,
        },
        CheckResult {
            name: "eigenvalue",
            metric: eigenvalue,
            threshold: tol,
            sense: Sense::AtMost,
        },
        CheckResult {
            name: "variance-identity",
            metric: variance_identity,
            threshold: tol,
            sense: Sense::AtMost,
        },
        CheckResult {
            name: "mub",
            metric: mub_overlap_check(),
            threshold: tol,
            sense: Sense::AtMost,
        },
        CheckResult {
            name: "isotropy",
            metric: isotropy,
            threshold: tol,
            sense: Sense::AtMost,
        },
        CheckResult {
            name: "linear-independence",
            metric: rank,
            threshold: RANK_FLOOR,
            sense: Sense::AtLeast,
        },
        CheckResult {
            name: "oracle-projectors",
            metric: projector,
            threshold: tol,
            sense: Sense::AtMost,
        },
        CheckResult {
            name: "oracle-tensor-overlap",
            metric: tensor_gap,
            threshold: tol,
            sense: Sense::AtMost,
        },
    ])
}
