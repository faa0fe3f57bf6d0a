//! Real gamma-family kernels on the positive axis.

use std::f64::consts::PI;

use super::ConditionError;

const SHIFT_TARGET: f64 = 10.0;

fn require_positive(name: &'static str, x: f64) -> Result<(), ConditionError> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(ConditionError::Domain {
            function: name,
            value: x,
        })
    }
}

/// ψ(x) = Γ'(x)/Γ(x) for x > 0.
pub fn digamma(x: f64) -> Result<f64, ConditionError> {
    require_positive("digamma", x)?;
    let mut x = x;
    let mut acc = 0.0;
    while x < SHIFT_TARGET {
        acc -= 1.0 / x;
        x += 1.0;
    }
    let z = 1.0 / (x * x);
    // Bernoulli tail: B_{2j}/(2j x^{2j})
    let tail = z
        * (1.0 / 12.0
            - z * (1.0 / 120.0
                - z * (1.0 / 252.0
                    - z * (1.0 / 240.0 - z * (1.0 / 132.0 - z * (691.0 / 32760.0 - z / 12.0))))));
    Ok(acc + x.ln() - 0.5 / x - tail)
}

/// ψ'(x) for x > 0.
pub fn trigamma(x: f64) -> Result<f64, ConditionError> {
    require_positive("trigamma", x)?;
    let mut x = x;
    let mut acc = 0.0;
    while x < SHIFT_TARGET {
        acc += 1.0 / (x * x);
        x += 1.0;
    }
    let z = 1.0 / (x * x);
    let tail = (1.0 / x)
        * z
        * (1.0 / 6.0
            - z * (1.0 / 30.0
                - z * (1.0 / 42.0
                    - z * (1.0 / 30.0 - z * (5.0 / 66.0 - z * (691.0 / 2730.0 - z * 7.0 / 6.0))))));
    Ok(acc + 1.0 / x + 0.5 * z + tail)
}

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// ln Γ(x) for x > 0. Arguments below 1/2 are lifted with Γ(x) = Γ(x+1)/x.
pub fn ln_gamma(x: f64) -> Result<f64, ConditionError> {
    require_positive("ln_gamma", x)?;
    if x < 0.5 {
        return Ok(ln_gamma(x + 1.0)? - x.ln());
    }
    let x = x - 1.0;
    let mut a = LANCZOS[0];
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        a += c / (x + i as f64);
    }
    let t = x + LANCZOS_G + 0.5;
    Ok(0.5 * (2.0 * PI).ln() + (x + 0.5) * t.ln() - t + a.ln())
}

pub fn gamma(x: f64) -> Result<f64, ConditionError> {
    Ok(ln_gamma(x)?.exp())
}
