//! Factorial tables shared by the Clebsch-Gordan and d-function code.

use std::sync::LazyLock;

/// n! stays finite in an f64 up to n = 170.
const FACT_LEN: usize = 171;
/// ln n! table length; sized for products occurring at the lambda cap.
const LN_FACT_LEN: usize = 512;

static FACT: LazyLock<[f64; FACT_LEN]> = LazyLock::new(|| {
    let mut t = [1.0; FACT_LEN];
    for n in 1..FACT_LEN {
        t[n] = t[n - 1] * n as f64;
    }
    t
});

static LN_FACT: LazyLock<[f64; LN_FACT_LEN]> = LazyLock::new(|| {
    let mut t = [0.0; LN_FACT_LEN];
    for n in 1..LN_FACT_LEN {
        t[n] = t[n - 1] + (n as f64).ln();
    }
    t
});

pub fn factorial(n: u32) -> f64 {
    FACT[n as usize]
}

pub fn ln_factorial(n: u32) -> f64 {
    LN_FACT[n as usize]
}

/// sqrt(a! / (b! c!)) with a = b + c, switching to log-space once the
/// factorials would lose relative precision in direct ratios.
pub fn sqrt_fact_ratio(a: u32, b: u32, c: u32) -> f64 {
    debug_assert_eq!(a, b + c);
    if a <= 40 {
        (factorial(a) / (factorial(b) * factorial(c))).sqrt()
    } else {
        (0.5 * (ln_factorial(a) - (ln_factorial(b) + ln_factorial(c)))).exp()
    }
}

/// n! / (p₁! p₂! p₃!) with n = p₁ + p₂ + p₃.
pub fn multinomial(n: u32, parts: [u32; 3]) -> f64 {
    debug_assert_eq!(n, parts.iter().sum::<u32>());
    if n <= 40 {
        factorial(n) / (factorial(parts[0]) * factorial(parts[1]) * factorial(parts[2]))
    } else {
        (ln_factorial(n)
            - (ln_factorial(parts[0]) + ln_factorial(parts[1]) + ln_factorial(parts[2])))
        .exp()
    }
}

/// sqrt of [`multinomial`].
pub fn sqrt_multinomial(n: u32, parts: [u32; 3]) -> f64 {
    if n <= 40 {
        multinomial(n, parts).sqrt()
    } else {
        (0.5 * (ln_factorial(n)
            - (ln_factorial(parts[0]) + ln_factorial(parts[1]) + ln_factorial(parts[2]))))
        .exp()
    }
}
