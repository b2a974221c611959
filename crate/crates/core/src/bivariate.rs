//! Truncated series in two variables: `z` marks vertices (index `n`) and `y`
//! marks edges (index `k`).
//!
//! Storage is a sparse map keyed by `(n, k)`; absent pairs are zero and zeros
//! are never stored. Truncation is rectangular and silent: products discard
//! any term with `n > n_order` or `k > k_order`. The truncation is
//! self-consistent for `exp`/`log` because both operators only combine terms
//! whose `n`- and `k`-exponents are componentwise at most the target's.

use std::collections::BTreeMap;

use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct BivariateSeries<S: Scalar> {
    coeffs: BTreeMap<(usize, usize), S>,
    n_order: usize,
    k_order: usize,
}

impl<S: Scalar> BivariateSeries<S> {
    pub fn zero(n_order: usize, k_order: usize) -> Self {
        BivariateSeries {
            coeffs: BTreeMap::new(),
            n_order,
            k_order,
        }
    }

    pub fn n_order(&self) -> usize {
        self.n_order
    }

    pub fn k_order(&self) -> usize {
        self.k_order
    }

    /// Coefficient of `z^n y^k` (zero when absent).
    pub fn coeff(&self, n: usize, k: usize) -> S {
        assert!(
            n <= self.n_order && k <= self.k_order,
            "index ({n},{k}) beyond orders ({},{})",
            self.n_order,
            self.k_order
        );
        self.coeffs.get(&(n, k)).cloned().unwrap_or_else(S::zero)
    }

    pub fn set_coeff(&mut self, n: usize, k: usize, c: S) {
        assert!(
            n <= self.n_order && k <= self.k_order,
            "index ({n},{k}) beyond orders ({},{})",
            self.n_order,
            self.k_order
        );
        if c.is_zero() {
            self.coeffs.remove(&(n, k));
        } else {
            self.coeffs.insert((n, k), c);
        }
    }

    /// Nonzero entries in deterministic (n, k) order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &S)> {
        self.coeffs.iter().map(|(&(n, k), c)| (n, k, c))
    }

    fn assert_same_orders(&self, rhs: &Self) {
        assert!(
            self.n_order == rhs.n_order && self.k_order == rhs.k_order,
            "bivariate order mismatch"
        );
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.assert_same_orders(rhs);
        let mut out = self.clone();
        for (n, k, c) in rhs.iter() {
            let cur = out.coeff(n, k);
            out.set_coeff(n, k, cur.add(c));
        }
        out
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        self.assert_same_orders(rhs);
        let mut out = Self::zero(self.n_order, self.k_order);
        for (n1, k1, c1) in self.iter() {
            for (n2, k2, c2) in rhs.iter() {
                let (n, k) = (n1 + n2, k1 + k2);
                if n > self.n_order || k > self.k_order {
                    continue;
                }
                let cur = out.coeff(n, k);
                out.set_coeff(n, k, cur.add(&c1.mul(c2)));
            }
        }
        out
    }

    /// Dense coefficient row of `z^n` as a polynomial in `y`.
    fn row(&self, n: usize) -> Vec<S> {
        let mut r = vec![S::zero(); self.k_order + 1];
        for (&(rn, k), c) in self.coeffs.range((n, 0)..=(n, self.k_order)) {
            debug_assert_eq!(rn, n);
            r[k] = c.clone();
        }
        r
    }

    fn from_rows(rows: Vec<Vec<S>>, n_order: usize, k_order: usize) -> Self {
        let mut out = Self::zero(n_order, k_order);
        for (n, row) in rows.into_iter().enumerate() {
            for (k, c) in row.into_iter().enumerate() {
                out.set_coeff(n, k, c);
            }
        }
        out
    }

    /// log of a series with constant term one (`z^0` row equal to `1`),
    /// computed rowwise in `z` with polynomial-in-`y` coefficients.
    pub fn log(&self) -> Self {
        let r0 = self.row(0);
        assert!(
            r0[0] == S::one() && r0[1..].iter().all(S::is_zero),
            "log requires constant term one"
        );
        let ko = self.k_order;
        let a: Vec<Vec<S>> = (0..=self.n_order).map(|n| self.row(n)).collect();
        let mut l: Vec<Vec<S>> = vec![vec![S::zero(); ko + 1]; self.n_order + 1];
        for n in 1..=self.n_order {
            // n·L_n = n·A_n − Σ_{j=1}^{n−1} j·L_j·A_{n−j}
            let mut acc = poly_scale(&a[n], &S::from_i64(n as i64));
            for j in 1..n {
                let prod = poly_mul(&l[j], &a[n - j], ko);
                let prod = poly_scale(&prod, &S::from_i64(j as i64));
                acc = poly_sub(&acc, &prod);
            }
            l[n] = poly_scale(&acc, &S::one().div(&S::from_i64(n as i64)));
        }
        Self::from_rows(l, self.n_order, ko)
    }

    /// exp of a series whose `z^0` row is zero.
    pub fn exp(&self) -> Self {
        assert!(
            self.row(0).iter().all(S::is_zero),
            "exp requires zero constant row"
        );
        let ko = self.k_order;
        let a: Vec<Vec<S>> = (0..=self.n_order).map(|n| self.row(n)).collect();
        let mut e: Vec<Vec<S>> = vec![vec![S::zero(); ko + 1]; self.n_order + 1];
        e[0][0] = S::one();
        for n in 1..=self.n_order {
            // n·E_n = Σ_{j=1}^{n} j·A_j·E_{n−j}
            let mut acc = vec![S::zero(); ko + 1];
            for j in 1..=n {
                let prod = poly_mul(&a[j], &e[n - j], ko);
                let prod = poly_scale(&prod, &S::from_i64(j as i64));
                acc = poly_add(&acc, &prod);
            }
            e[n] = poly_scale(&acc, &S::one().div(&S::from_i64(n as i64)));
        }
        Self::from_rows(e, self.n_order, ko)
    }
}

fn poly_add<S: Scalar>(a: &[S], b: &[S]) -> Vec<S> {
    a.iter().zip(b).map(|(x, y)| x.add(y)).collect()
}

fn poly_sub<S: Scalar>(a: &[S], b: &[S]) -> Vec<S> {
    a.iter().zip(b).map(|(x, y)| x.sub(y)).collect()
}

fn poly_scale<S: Scalar>(a: &[S], c: &S) -> Vec<S> {
    a.iter().map(|x| x.mul(c)).collect()
}

fn poly_mul<S: Scalar>(a: &[S], b: &[S], k_order: usize) -> Vec<S> {
    let mut out = vec![S::zero(); k_order + 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().take(k_order + 1 - i).enumerate() {
            if y.is_zero() {
                continue;
            }
            out[i + j] = out[i + j].add(&x.mul(y));
        }
    }
    out
}
