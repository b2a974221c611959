//! The rational constants governing the coefficientwise upper bounds on the
//! excess-ℓ component series, together with their factorial-scale asymptotics.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::scalar::rat_ln_abs;

/// Table of the bound constants λ₀..λ_L.
///
/// λ₀ = 1/2 and
/// λ_ℓ = ½·λ_{ℓ−1}·(3ℓ−1) + ½·Σ_{t=0}^{ℓ−1} λ_t·λ_{ℓ−1−t}.
#[derive(Clone, Debug)]
pub struct LambdaTable {
    values: Vec<BigRational>,
}

pub fn wright_lambda_table(l_max: usize) -> LambdaTable {
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    let mut values = Vec::with_capacity(l_max + 1);
    values.push(half.clone());
    for ell in 1..=l_max {
        let linear =
            &half * &values[ell - 1] * BigRational::from_integer(BigInt::from(3 * ell as i64 - 1));
        let mut quad = BigRational::zero();
        for t in 0..ell {
            quad += &values[t] * &values[ell - 1 - t];
        }
        let lam = linear + &half * quad;
        assert!(lam.is_positive(), "bound constants stay positive");
        if ell >= 2 {
            assert!(lam > values[ell - 1], "bound constants strictly increase");
        }
        values.push(lam);
    }
    LambdaTable { values }
}

impl LambdaTable {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn value(&self, ell: usize) -> &BigRational {
        &self.values[ell]
    }

    pub fn ln_value(&self, ell: usize) -> f64 {
        rat_ln_abs(&self.values[ell])
    }
}

/// ln of the factorial-scale asymptotic form 3·(3/2)^ℓ·ℓ!/(2π).
pub fn lambda_asymptotic_ln(ell: usize) -> f64 {
    use std::f64::consts::PI;
    (3.0f64).ln() + ell as f64 * (1.5f64).ln() + crate::scalar::ln_factorial(ell as u64)
        - (2.0 * PI).ln()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;

    fn rat(n: i64, d: i64) -> BigRational {
        Scalar::from_ratio(n, d)
    }

    #[test]
    fn first_values() {
        let t = wright_lambda_table(3);
        assert_eq!(*t.value(0), rat(1, 2));
        assert_eq!(*t.value(1), rat(5, 8));
        assert_eq!(*t.value(2), rat(15, 8));
        assert_eq!(*t.value(3), rat(1105, 128));
    }

    #[test]
    fn recurrence_reverified_by_independent_summation() {
        // Re-derive each value from scratch with f64 arithmetic and a
        // differently ordered summation.
        let t = wright_lambda_table(25);
        let mut f = vec![0.5f64];
        for ell in 1..=25 {
            let mut s = 0.0;
            // quadratic part summed backwards, linear part added last
            for tt in (0..ell).rev() {
                s += 0.5 * f[tt] * f[ell - 1 - tt];
            }
            s += 0.5 * f[ell - 1] * (3.0 * ell as f64 - 1.0);
            f.push(s);
        }
        for ell in 0..=25 {
            let exact = t.ln_value(ell);
            let indep = f[ell].ln();
            assert!(
                (exact - indep).abs() < 1e-9,
                "ell={ell}: {exact} vs {indep}"
            );
        }
    }

    #[test]
    fn factorial_scale_asymptotics() {
        let t = wright_lambda_table(40);
        let ratio40 = (t.ln_value(40) - lambda_asymptotic_ln(40)).exp();
        assert!((0.85..=1.15).contains(&ratio40), "ratio40={ratio40}");
        let ratio10 = (t.ln_value(10) - lambda_asymptotic_ln(10)).exp();
        assert!(
            (ratio40 - 1.0).abs() < (ratio10 - 1.0).abs(),
            "residual shrinks: {ratio10} -> {ratio40}"
        );
    }
}
