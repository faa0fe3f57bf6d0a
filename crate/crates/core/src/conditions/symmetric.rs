//! Elementary symmetric polynomials and the two sufficient conditions for
//! log-concavity of hypergeometric term sequences.

use num_traits::{One, Signed, Zero};

use super::ConditionError;
use crate::exact::Rational;

/// e_k(xs) by the prefix recursion e_j(x_1..x_i) = e_j(x_1..x_{i-1}) + x_i e_{j-1}(x_1..x_{i-1}).
pub fn esym(k: usize, xs: &[Rational]) -> Result<Rational, ConditionError> {
    if k > xs.len() {
        return Err(ConditionError::Dimension(format!(
            "e_{k} of {} arguments",
            xs.len()
        )));
    }
    Ok(esym_all(xs).swap_remove(k))
}

/// (e_0, ..., e_n) of `xs`.
pub fn esym_all(xs: &[Rational]) -> Vec<Rational> {
    let mut e = vec![Rational::zero(); xs.len() + 1];
    e[0] = Rational::one();
    for (i, x) in xs.iter().enumerate() {
        for j in (1..=i + 1).rev() {
            let add = &e[j - 1] * x;
            e[j] += add;
        }
    }
    e
}

fn require_positive(name: &str, xs: &[Rational]) -> Result<(), ConditionError> {
    match xs.iter().position(|x| !x.is_positive()) {
        Some(i) => Err(ConditionError::Parameter(format!(
            "{name}[{i}] = {} is not positive",
            xs[i]
        ))),
        None => Ok(()),
    }
}

/// The ratios e_{r+j}(b)/e_j(a) for j = 0..=q-r, where q = len(b) and
/// len(a) = q - r.
pub fn chain_ratios(a: &[Rational], b: &[Rational]) -> Result<Vec<Rational>, ConditionError> {
    if a.len() > b.len() {
        return Err(ConditionError::Dimension(format!(
            "numerator has {} parameters, denominator only {}",
            a.len(),
            b.len()
        )));
    }
    require_positive("a", a)?;
    require_positive("b", b)?;
    let r = b.len() - a.len();
    let ea = esym_all(a);
    let eb = esym_all(b);
    Ok((0..=a.len()).map(|j| &eb[r + j] / &ea[j]).collect())
}

/// The chain of ratio inequalities: e_q(b)/e_{q-r}(a) <= ... <= e_{r+1}(b)/e_1(a) <= e_r(b).
pub fn check_chain(a: &[Rational], b: &[Rational], r: usize) -> Result<bool, ConditionError> {
    if a.len() + r != b.len() {
        return Err(ConditionError::Dimension(format!(
            "expected {} numerator parameters for q = {} and r = {r}, got {}",
            b.len().saturating_sub(r),
            b.len(),
            a.len()
        )));
    }
    let ratios = chain_ratios(a, b)?;
    Ok(ratios.windows(2).all(|w| w[1] <= w[0]))
}

/// Indices of a (q-r)-subvector of `b` whose ascending prefix sums are
/// dominated by those of `a` sorted ascending, if one exists.
///
/// Exhaustive over all subvectors for q <= 8; above that the q-r smallest
/// entries of `b` are taken, which minimize every sorted prefix sum
/// simultaneously, so the answer is the same.
pub fn majorizing_subvector(
    a: &[Rational],
    b: &[Rational],
) -> Result<Option<Vec<usize>>, ConditionError> {
    if a.len() > b.len() {
        return Err(ConditionError::Dimension(format!(
            "numerator has {} parameters, denominator only {}",
            a.len(),
            b.len()
        )));
    }
    require_positive("a", a)?;
    require_positive("b", b)?;
    let mut a_sorted = a.to_vec();
    a_sorted.sort();
    let dominated = |idx: &[usize]| {
        let mut sub: Vec<&Rational> = idx.iter().map(|&i| &b[i]).collect();
        sub.sort();
        let mut sb = Rational::zero();
        let mut sa = Rational::zero();
        sub.iter().zip(&a_sorted).all(|(x, y)| {
            sb += *x;
            sa += y;
            sb <= sa
        })
    };
    if b.len() <= 8 {
        // lexicographic order of index sets, first witness wins
        let mut found = None;
        for_each_combination(b.len(), a.len(), &mut |idx| {
            if found.is_none() && dominated(idx) {
                found = Some(idx.to_vec());
            }
        });
        Ok(found)
    } else {
        let mut order: Vec<usize> = (0..b.len()).collect();
        order.sort_by(|&i, &j| b[i].cmp(&b[j]).then(i.cmp(&j)));
        let mut idx: Vec<usize> = order[..a.len()].to_vec();
        idx.sort();
        Ok(dominated(&idx).then_some(idx))
    }
}

pub fn check_majorization(a: &[Rational], b: &[Rational]) -> Result<bool, ConditionError> {
    Ok(majorizing_subvector(a, b)?.is_some())
}

fn for_each_combination(n: usize, k: usize, f: &mut impl FnMut(&[usize])) {
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            return;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Whether the chain or the majorization condition certifies log-concavity
/// of (a_1)_n...(a_{q-r})_n / ((b_1)_n...(b_q)_n).
pub fn hyp_term_conditions_hold(
    a: &[Rational],
    b: &[Rational],
    r: usize,
) -> Result<bool, ConditionError> {
    if check_chain(a, b, r)? {
        return Ok(true);
    }
    check_majorization(a, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    fn ints(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn esym_values() {
        assert_eq!(esym(0, &ints(&[5, 7])).unwrap(), int(1));
        assert_eq!(esym(2, &ints(&[1, 2, 3])).unwrap(), int(11));
        assert_eq!(esym(3, &ints(&[1, 1, 1])).unwrap(), int(1));
        assert!(esym(4, &ints(&[1, 1, 1])).is_err());
    }

    #[test]
    fn chain_and_majorization_examples() {
        let a = vec![rat(3, 2), int(2)];
        assert!(check_chain(&a, &a, 0).unwrap());
        assert!(check_majorization(&ints(&[3]), &ints(&[1])).unwrap());
        assert!(!check_majorization(&ints(&[1]), &ints(&[3])).unwrap());
        // a=(1), b=(3): ratios e_1(b)/e_1(a) = 3 and e_0(b)/e_0(a) = 1, 3 <= 1 fails
        assert!(!check_chain(&ints(&[1]), &ints(&[3]), 0).unwrap());
        assert!(check_chain(&ints(&[1]), &ints(&[3, 1]), 0).is_err());
    }

    #[test]
    fn combinations_are_lexicographic() {
        let mut seen = Vec::new();
        for_each_combination(4, 2, &mut |c| seen.push(c.to_vec()));
        assert_eq!(
            seen,
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
        let mut empty = 0;
        for_each_combination(3, 0, &mut |c| {
            assert!(c.is_empty());
            empty += 1
        });
        assert_eq!(empty, 1);
    }
}
