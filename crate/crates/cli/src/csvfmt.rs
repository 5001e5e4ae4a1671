//! Byte-stable CSV serialization: plain decimal notation at 12 significant
//! digits, no scientific notation, -0 normalized to 0.

use su3int::analysis::UncertaintyRecord;
use su3int::coupling::IntelligentState;
use su3int::rep::enumerate_basis;

/// Format with 12 significant digits in plain decimal. Identical f64 inputs
/// give identical bytes.
pub fn fmt_sig12(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    let s = format!("{:.11e}", v);
    let (mantissa, exp) = s.split_once('e').expect("exponential form");
    let (sign, mantissa) = match mantissa.strip_prefix('-') {
        Some(m) => ("-", m),
        None => ("", mantissa),
    };
    let digits: String = mantissa.chars().filter(|c| *c != '.').collect();
    debug_assert_eq!(digits.len(), 12);
    let exp: i32 = exp.parse().expect("exponent");

    let body = if exp >= 11 {
        format!("{digits}{}", "0".repeat((exp - 11) as usize))
    } else if exp >= 0 {
        let split = (exp + 1) as usize;
        format!("{}.{}", &digits[..split], &digits[split..])
    } else {
        format!("0.{}{digits}", "0".repeat((-exp - 1) as usize))
    };
    format!("{sign}{body}")
}

pub const SCAN_HEADER: &str =
    "alpha,deltaA,deltaB,product,half_abs_expC,eigen_residual,saturation_residual";

pub fn scan_csv(records: &[UncertaintyRecord]) -> String {
    let mut out = String::with_capacity(64 * (records.len() + 1));
    out.push_str(SCAN_HEADER);
    out.push('\n');
    for r in records {
        let row = [
            r.alpha,
            r.delta_a,
            r.delta_b,
            r.product,
            r.half_abs_exp_c,
            r.eigen_residual,
            r.saturation_residual,
        ]
        .map(fmt_sig12)
        .join(",");
        out.push_str(&row);
        out.push('\n');
    }
    out
}

pub fn state_csv(state: &IntelligentState) -> String {
    let t = &state.triple;
    let mut out = format!(
        "# lambda={} lambda1={} lambda2={} lambda3={} alpha={} kappa_re={} kappa_im={}\n",
        t.lambda(),
        t.lambda1,
        t.lambda2,
        t.lambda3,
        fmt_sig12(state.alpha),
        fmt_sig12(state.kappa.re),
        fmt_sig12(state.kappa.im),
    );
    out.push_str("n1,n2,n3,re,im\n");
    let basis = enumerate_basis(t.lambda());
    for (k, s) in basis.iter().enumerate() {
        let z = state.vector[k];
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            s.n1,
            s.n2,
            s.n3,
            fmt_sig12(z.re),
            fmt_sig12(z.im)
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formatting_basics() {
        assert_eq!(fmt_sig12(0.0), "0");
        assert_eq!(fmt_sig12(-0.0), "0");
        assert_eq!(fmt_sig12(1.0), "1.00000000000");
        assert_eq!(fmt_sig12(-5.0), "-5.00000000000");
        assert_eq!(fmt_sig12(0.5), "0.500000000000");
        assert_eq!(fmt_sig12(1.0 / 3.0), "0.333333333333");
        assert_eq!(fmt_sig12(1.23456789012e-4), "0.000123456789012");
        assert_eq!(fmt_sig12(9.87654321098e13), "98765432109800");
        assert_eq!(fmt_sig12(1e12), "1000000000000");
        assert_eq!(
            fmt_sig12(-2.5e-15),
            format!("-0.{}250000000000", "0".repeat(14))
        );
    }

    #[test]
    fn format_is_deterministic() {
        for v in [std::f64::consts::PI, 1e-300, -7.77e33, 123.456] {
            assert_eq!(fmt_sig12(v), fmt_sig12(v));
        }
    }
}
