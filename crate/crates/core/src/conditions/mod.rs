//! Special-function kernels and the parameter conditions that certify
//! log-concavity or log-convexity of coefficient sequences.

mod foxwright;
pub mod special;
mod symmetric;

use thiserror::Error;

pub use foxwright::{
    default_u_grid, foxwright_conditions, random_admissible, v_logconvex_numeric, CheckStatus,
    ConditionReport, FoxWrightParams, Witness, BCK310, BCK37, BCK39, NEC1, PU_POSITIVE,
};
pub use special::{digamma, gamma, ln_gamma, trigamma};
pub use symmetric::{
    chain_ratios, check_chain, check_majorization, esym, esym_all, hyp_term_conditions_hold,
    majorizing_subvector,
};

use crate::families::{classify_terms, Classification, SeqTerm};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConditionError {
    #[error("{function} is undefined at {value}")]
    Domain { function: &'static str, value: f64 },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("invalid parameter: {0}")]
    Parameter(String),
}

/// h_n(a,b,c) = (ψ(c+n) − ψ(c)) (a)_n/(b)_n in floating point.
pub fn hseq_terms(a: f64, b: f64, c: f64, n_max: usize) -> Result<Vec<f64>, ConditionError> {
    for (name, v) in [("a", a), ("b", b), ("c", c)] {
        if !(v > 0.0) {
            return Err(ConditionError::Parameter(format!(
                "{name} = {v} is not positive"
            )));
        }
    }
    let psi_c = digamma(c)?;
    let mut ratio = 1.0;
    let mut out = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        if n > 0 {
            ratio *= (a + (n - 1) as f64) / (b + (n - 1) as f64);
        }
        out.push((digamma(c + n as f64)? - psi_c) * ratio);
    }
    Ok(out)
}

/// Numeric log-concavity verdict for h_0..h_{n_max}; h_0 = 0 sits before the
/// support and takes no part in the ratio tests.
pub fn hseq_check(a: f64, b: f64, c: f64, n_max: usize) -> Result<Classification, ConditionError> {
    let terms: Vec<SeqTerm> = hseq_terms(a, b, c, n_max)?
        .into_iter()
        .map(SeqTerm::Numeric)
        .collect();
    classify_terms(&terms, 1).map_err(|e| ConditionError::Parameter(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hseq_examples() {
        assert_eq!(
            hseq_check(1.0, 1.0, 1.0, 30).unwrap(),
            Classification::LogConcave
        );
        assert_eq!(
            hseq_check(2.0, 1.0, 0.5, 30).unwrap(),
            Classification::LogConcave
        );
        let h = hseq_terms(1.0, 1.0, 1.0, 3).unwrap();
        assert_eq!(h[0], 0.0);
        assert!((h[2] - 1.5).abs() < 1e-14);
    }
}
