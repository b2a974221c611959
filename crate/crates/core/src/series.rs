//! Truncated formal power series over a pluggable coefficient ring.
//!
//! A series holds coefficients `c[0..=order]` of `Σ c_n z^n`; everything past
//! `order` is silently truncated (truncation is total: no operation reads or
//! writes beyond it). Both operands of a binary operation must share an order;
//! mismatches are programmer errors and panic.
//!
//! Analytic preconditions (constant term 0 for `exp`, 1 for `log`, nonzero
//! for `invert`) are asserted, not propagated as errors: a violation means the
//! caller constructed the wrong object, not that the input data was bad.

use crate::scalar::{factorial_scalar, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedSeries<S: Scalar> {
    coeffs: Vec<S>,
}

impl<S: Scalar> TruncatedSeries<S> {
    /// The zero series of the given order.
    pub fn zero(order: usize) -> Self {
        TruncatedSeries {
            coeffs: vec![S::zero(); order + 1],
        }
    }

    /// The constant-one series.
    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = S::one();
        s
    }

    /// `c · z^n`, truncated if `n > order`.
    pub fn monomial(c: S, n: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if n <= order {
            s.coeffs[n] = c;
        }
        s
    }

    pub fn from_coeffs(coeffs: Vec<S>) -> Self {
        assert!(!coeffs.is_empty(), "series needs at least the z^0 slot");
        TruncatedSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &S {
        assert!(n <= self.order(), "coefficient index {n} beyond order");
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn set_coeff(&mut self, n: usize, c: S) {
        assert!(n <= self.order(), "coefficient index {n} beyond order");
        self.coeffs[n] = c;
    }

    /// EGF count `n! · [z^n]`.
    pub fn egf_count(&self, n: usize) -> S {
        self.coeff(n).mul(&factorial_scalar(n as u64))
    }

    fn assert_same_order(&self, rhs: &Self) {
        assert_eq!(
            self.order(),
            rhs.order(),
            "series order mismatch ({} vs {})",
            self.order(),
            rhs.order()
        );
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.assert_same_order(rhs);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a.add(b))
            .collect();
        TruncatedSeries { coeffs }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.assert_same_order(rhs);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a.sub(b))
            .collect();
        TruncatedSeries { coeffs }
    }

    pub fn neg(&self) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|a| a.neg()).collect(),
        }
    }

    pub fn scale(&self, c: &S) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|a| a.mul(c)).collect(),
        }
    }

    /// Truncated Cauchy product.
    pub fn mul(&self, rhs: &Self) -> Self {
        self.assert_same_order(rhs);
        let order = self.order();
        let mut out = vec![S::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().take(order + 1 - i).enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        TruncatedSeries { coeffs: out }
    }

    /// `self^m` by binary powering (`m = 0` gives the one series).
    pub fn powi(&self, m: u32) -> Self {
        let mut acc = Self::one(self.order());
        let mut base = self.clone();
        let mut m = m;
        while m > 0 {
            if m & 1 == 1 {
                acc = acc.mul(&base);
            }
            m >>= 1;
            if m > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Multiply by `z^k` (truncating at the top).
    pub fn shift_up(&self, k: usize) -> Self {
        let order = self.order();
        let mut out = vec![S::zero(); order + 1];
        for n in k..=order {
            out[n] = self.coeffs[n - k].clone();
        }
        TruncatedSeries { coeffs: out }
    }

    /// Divide by `z^k`, discarding the coefficients of `z^0..z^{k-1}`
    /// (callers either know they vanish or deliberately drop a principal
    /// part). The order shrinks by `k`.
    pub fn drop_low(&self, k: usize) -> Self {
        assert!(k <= self.order(), "drop_low beyond order");
        TruncatedSeries {
            coeffs: self.coeffs[k..].to_vec(),
        }
    }

    /// exp of a series with zero constant term.
    pub fn exp(&self) -> Self {
        assert!(
            self.coeffs[0].is_zero(),
            "exp requires zero constant term"
        );
        let order = self.order();
        let mut e = vec![S::zero(); order + 1];
        e[0] = S::one();
        for n in 1..=order {
            let mut acc = S::zero();
            for j in 1..=n {
                if self.coeffs[j].is_zero() {
                    continue;
                }
                let term = S::from_i64(j as i64)
                    .mul(&self.coeffs[j])
                    .mul(&e[n - j]);
                acc = acc.add(&term);
            }
            e[n] = acc.div(&S::from_i64(n as i64));
        }
        TruncatedSeries { coeffs: e }
    }

    /// log of a series with constant term one.
    pub fn log(&self) -> Self {
        assert!(
            self.coeffs[0] == S::one(),
            "log requires constant term one"
        );
        let order = self.order();
        let mut l = vec![S::zero(); order + 1];
        for n in 1..=order {
            let mut acc = S::from_i64(n as i64).mul(&self.coeffs[n]);
            for j in 1..n {
                if l[j].is_zero() || self.coeffs[n - j].is_zero() {
                    continue;
                }
                let term = S::from_i64(j as i64).mul(&l[j]).mul(&self.coeffs[n - j]);
                acc = acc.sub(&term);
            }
            l[n] = acc.div(&S::from_i64(n as i64));
        }
        TruncatedSeries { coeffs: l }
    }

    /// Multiplicative inverse of a series with nonzero constant term.
    pub fn invert(&self) -> Self {
        assert!(
            !self.coeffs[0].is_zero(),
            "invert requires nonzero constant term"
        );
        let order = self.order();
        let inv0 = S::one().div(&self.coeffs[0]);
        let mut c = vec![S::zero(); order + 1];
        c[0] = inv0.clone();
        for n in 1..=order {
            let mut acc = S::zero();
            for k in 1..=n {
                if self.coeffs[k].is_zero() || c[n - k].is_zero() {
                    continue;
                }
                acc = acc.add(&self.coeffs[k].mul(&c[n - k]));
            }
            c[n] = acc.mul(&inv0).neg();
        }
        TruncatedSeries { coeffs: c }
    }

    /// The pointing operator `z d/dz`: multiplies `c_n` by `n`.
    pub fn theta_op(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(n, a)| a.mul(&S::from_i64(n as i64)))
            .collect();
        TruncatedSeries { coeffs }
    }
}

/// Solve `S = update(S)` by iteration from the zero series. Each iteration of
/// a well-founded update (one whose output coefficients up to `z^m` depend
/// only on inputs below `z^m`) fixes at least one further coefficient, so the
/// solution is reached within `order + 1` rounds; non-convergence panics.
pub fn fixed_point<S: Scalar>(
    update: impl Fn(&TruncatedSeries<S>) -> TruncatedSeries<S>,
    order: usize,
) -> TruncatedSeries<S> {
    let mut cur = TruncatedSeries::zero(order);
    for _ in 0..=order + 1 {
        let next = update(&cur);
        assert_eq!(next.order(), order, "update changed the series order");
        if next == cur {
            return cur;
        }
        cur = next;
    }
    panic!("fixed_point did not converge within order+1 iterations");
}

/// Round an exact series into the wide-exponent float ring.
pub fn to_ext_series(
    s: &TruncatedSeries<num_rational::BigRational>,
) -> TruncatedSeries<crate::scalar::ExtFloat> {
    TruncatedSeries::from_coeffs(s.coeffs().iter().map(crate::scalar::rat_to_ext).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ExtFloat;
    use num_rational::BigRational;
    use proptest::prelude::*;

    type Rat = BigRational;
    type RS = TruncatedSeries<Rat>;

    fn rat(n: i64, d: i64) -> Rat {
        Scalar::from_ratio(n, d)
    }

    fn series(vals: &[(i64, i64)]) -> RS {
        RS::from_coeffs(vals.iter().map(|&(n, d)| rat(n, d)).collect())
    }

    #[test]
    fn truncated_product() {
        // (1+z)(1-z) at order 2 is 1 - z^2; at order 1 the z^2 term is cut.
        let a = series(&[(1, 1), (1, 1), (0, 1)]);
        let b = series(&[(1, 1), (-1, 1), (0, 1)]);
        assert_eq!(a.mul(&b), series(&[(1, 1), (0, 1), (-1, 1)]));
        let a1 = series(&[(0, 1), (1, 1)]);
        assert_eq!(a1.mul(&a1), series(&[(0, 1), (0, 1)]));
    }

    #[test]
    fn exp_log_closed_forms() {
        // exp(z) = 1 + z + z^2/2 + z^3/6
        let z = RS::monomial(rat(1, 1), 1, 3);
        assert_eq!(z.exp(), series(&[(1, 1), (1, 1), (1, 2), (1, 6)]));
        // 1/(1-z) = 1 + z + z^2 + ...
        let one_minus_z = series(&[(1, 1), (-1, 1), (0, 1), (0, 1)]);
        assert_eq!(
            one_minus_z.invert(),
            series(&[(1, 1), (1, 1), (1, 1), (1, 1)])
        );
        // log(1/(1-z)) = z + z^2/2 + z^3/3
        assert_eq!(
            one_minus_z.invert().log(),
            series(&[(0, 1), (1, 1), (1, 2), (1, 3)])
        );
    }

    #[test]
    fn pointing_operator() {
        let s = series(&[(5, 1), (1, 1), (0, 1), (7, 2)]);
        assert_eq!(s.theta_op(), series(&[(0, 1), (1, 1), (0, 1), (21, 2)]));
    }

    #[test]
    fn fixed_point_solves_rooted_tree_equation() {
        // T = z exp(T): labeled rooted trees, counts n^{n-1} = 1, 2, 9, 64.
        let t = fixed_point(|s: &RS| s.exp().shift_up(1), 4);
        let expected = [1i64, 2, 9, 64];
        for (n, &want) in (1..=4).zip(&expected) {
            assert_eq!(t.egf_count(n), rat(want, 1), "n={n}");
        }
    }

    #[test]
    #[should_panic(expected = "order mismatch")]
    fn order_mismatch_panics() {
        let a = RS::zero(3);
        let b = RS::zero(4);
        let _ = a.add(&b);
    }

    #[test]
    #[should_panic(expected = "zero constant term")]
    fn exp_rejects_nonzero_constant() {
        let _ = series(&[(1, 1), (0, 1)]).exp();
    }

    #[test]
    #[should_panic(expected = "nonzero constant term")]
    fn invert_rejects_zero_constant() {
        let _ = series(&[(0, 1), (1, 1)]).invert();
    }

    #[test]
    fn float_ring_tracks_exact_ring() {
        // Same computation in both rings must agree to ~1e-12 relative.
        let t_exact = fixed_point(
            |s: &RS| s.powi(2).scale(&rat(1, 2)).exp().shift_up(1),
            40,
        );
        let t_float = fixed_point(
            |s: &TruncatedSeries<ExtFloat>| {
                s.powi(2)
                    .scale(&ExtFloat::from_ratio(1, 2))
                    .exp()
                    .shift_up(1)
            },
            40,
        );
        for n in 0..=40 {
            let exact = crate::scalar::rat_to_ext(t_exact.coeff(n));
            let float = *t_float.coeff(n);
            if exact.is_zero() {
                assert!(float.is_zero(), "n={n}");
            } else {
                let rel = float.sub(&exact).div(&exact).abs().to_f64();
                assert!(rel < 1e-12, "n={n} rel={rel}");
            }
        }
    }

    // --- property tests -------------------------------------------------

    fn arb_series(order: usize) -> impl Strategy<Value = RS> {
        proptest::collection::vec((-20i64..=20, 1i64..=6), order + 1)
            .prop_map(|v| RS::from_coeffs(v.into_iter().map(|(n, d)| rat(n, d)).collect()))
    }

    proptest! {
        #[test]
        fn ring_laws(a in arb_series(8), b in arb_series(8), c in arb_series(8)) {
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            prop_assert_eq!(a.add(&b.sub(&b)), a.clone());
        }

        #[test]
        fn exp_log_are_inverse(a in arb_series(8)) {
            let mut a = a;
            a.set_coeff(0, Scalar::from_i64(0));
            prop_assert_eq!(a.exp().log(), a.clone());
        }

        #[test]
        fn invert_is_inverse(a in arb_series(8)) {
            let mut a = a;
            a.set_coeff(0, rat(3, 2));
            prop_assert_eq!(a.invert().mul(&a), RS::one(8));
        }

        #[test]
        fn theta_is_a_derivation(a in arb_series(6), b in arb_series(6)) {
            // theta(ab) = theta(a) b + a theta(b)
            let lhs = a.mul(&b).theta_op();
            let rhs = a.theta_op().mul(&b).add(&a.mul(&b.theta_op()));
            prop_assert_eq!(lhs, rhs);
        }
    }
}
