//! Exponential generating functions for b-uniform hypertrees and for the
//! edge-marked configurations that create or grow unicyclic components.
//!
//! Everything here is generic over the coefficient ring: exact rationals for
//! oracle-grade checks, the wide-exponent float ring for truncation orders in
//! the thousands.

use crate::scalar::{factorial_scalar, Scalar};
use crate::series::TruncatedSeries;

/// EGF `T` of labeled rooted hypertrees, the solution of
/// `T = z·exp(T^{b−1}/(b−1)!)`.
///
/// Computed coefficient-by-coefficient in O(order²): with `f = T/z` and
/// `g = f^{b−1}`, the exponential equation gives
/// `m·f_m = Σ_{j=b−1}^{m} j·(g_{j−b+1}/(b−1)!)·f_{m−j}` and the power rule
/// gives `m·g_m = Σ_{j=1}^{m} ((b)·j − m)·f_j·g_{m−j}` (f₀ = 1), so each
/// index is produced once instead of re-iterating a fixed-point map.
pub fn rooted_hypertree_egf<S: Scalar>(b: usize, order: usize) -> TruncatedSeries<S> {
    assert!(b >= 2, "uniformity must be at least 2");
    let mut coeffs = vec![S::zero(); order + 1];
    if order == 0 {
        return TruncatedSeries::from_coeffs(coeffs);
    }
    let c = b - 1;
    let inv_cfact = S::one().div(&factorial_scalar(c as u64));
    let len = order; // f[m] holds [z^{m+1}] T for m < len
    let mut f = vec![S::zero(); len];
    let mut g = vec![S::zero(); len];
    f[0] = S::one();
    g[0] = S::one();
    for m in 1..len {
        let mut acc = S::zero();
        for j in c..=m {
            if g[j - c].is_zero() || f[m - j].is_zero() {
                continue;
            }
            let w = g[j - c].mul(&inv_cfact);
            acc = acc.add(&S::from_i64(j as i64).mul(&w).mul(&f[m - j]));
        }
        f[m] = acc.div(&S::from_i64(m as i64));
        let mut gacc = S::zero();
        for j in 1..=m {
            let coef = (c as i64 + 1) * j as i64 - m as i64;
            if coef == 0 || f[j].is_zero() || g[m - j].is_zero() {
                continue;
            }
            gacc = gacc.add(&S::from_i64(coef).mul(&f[j]).mul(&g[m - j]));
        }
        g[m] = gacc.div(&S::from_i64(m as i64));
    }
    for (m, fm) in f.into_iter().enumerate() {
        coeffs[m + 1] = fm;
    }
    TruncatedSeries::from_coeffs(coeffs)
}

/// EGF of (unrooted) hypertrees: `T − (b−1)·T^b/b!`.
pub fn hypertree_egf<S: Scalar>(b: usize, order: usize) -> TruncatedSeries<S> {
    let t = rooted_hypertree_egf::<S>(b, order);
    let scale = S::from_i64(b as i64 - 1).div(&factorial_scalar(b as u64));
    t.sub(&t.powi(b as u32).scale(&scale))
}

/// The tree-polynomial factor `θ = 1 − T^{b−1}/(b−2)!` whose vanishing marks
/// the phase transition.
pub fn theta_egf<S: Scalar>(b: usize, order: usize) -> TruncatedSeries<S> {
    let t = rooted_hypertree_egf::<S>(b, order);
    theta_from_tree(b, &t)
}

fn theta_from_tree<S: Scalar>(b: usize, t: &TruncatedSeries<S>) -> TruncatedSeries<S> {
    let scale = S::one().div(&factorial_scalar(b as u64 - 2));
    TruncatedSeries::one(t.order()).sub(&t.powi(b as u32 - 1).scale(&scale))
}

/// EGF of unicyclic components carrying a distinguished cycle-closing edge
/// (deleting it leaves a forest of hypertrees):
/// `(T^{b−2}/(2(b−2)!))·(ϑT − T)`.
pub fn cycle_creation_egf<S: Scalar>(b: usize, order: usize) -> TruncatedSeries<S> {
    let t = rooted_hypertree_egf::<S>(b, order);
    let scale = S::from_ratio(1, 2).div(&factorial_scalar(b as u64 - 2));
    t.powi(b as u32 - 2)
        .scale(&scale)
        .mul(&t.theta_op().sub(&t))
}

/// The same configurations assembled literally from the hypertree EGF by
/// vertex-marking: `((ϑH)^{b−2}/(b−2)!)·((ϑ² − ϑ)/2)H` with `H` the
/// hypertree EGF. Used to cross-check [`cycle_creation_egf`].
pub fn cycle_creation_egf_constructive<S: Scalar>(b: usize, order: usize) -> TruncatedSeries<S> {
    let h = hypertree_egf::<S>(b, order);
    let dh = h.theta_op();
    let d2h = dh.theta_op();
    let scale = S::from_ratio(1, 2).div(&factorial_scalar(b as u64 - 2));
    dh.powi(b as u32 - 2).scale(&scale).mul(&d2h.sub(&dh))
}

/// Closed form of the cycle-creation EGF: `½(1/θ − T^{b−1}/(b−2)! − 1)`.
///
/// (For b = 2 the middle term is just `T`; for larger b the full power of `T`
/// is required for the identity with the constructive form to hold.)
pub fn cycle_creation_closed_form<S: Scalar>(b: usize, order: usize) -> TruncatedSeries<S> {
    let t = rooted_hypertree_egf::<S>(b, order);
    let w = t
        .powi(b as u32 - 1)
        .scale(&S::one().div(&factorial_scalar(b as u64 - 2)));
    let theta = TruncatedSeries::one(order).sub(&w);
    theta
        .invert()
        .sub(&w)
        .sub(&TruncatedSeries::one(order))
        .scale(&S::from_ratio(1, 2))
}

/// Vertex-marked EGF of unicyclic components,
/// `ϑH₀ = ((b−1)T^{b−1}/(2(b−2)!))·(1/θ² − 1/θ)`.
fn marked_unicyclic_egf<S: Scalar>(b: usize, t: &TruncatedSeries<S>) -> TruncatedSeries<S> {
    let theta = theta_from_tree(b, t);
    let inv = theta.invert();
    let inv2 = inv.mul(&inv);
    let scale = S::from_ratio(b as i64 - 1, 2).div(&factorial_scalar(b as u64 - 2));
    t.powi(b as u32 - 1).scale(&scale).mul(&inv2.sub(&inv))
}

/// EGF of unicyclic components with a distinguished growth edge, in the
/// asymptotic marking convention `(T^{b−2}/(b−2)!)·ϑH₀` (the distinguished
/// edge contributes b−2 rooted hypertrees; its slot on the marked vertex may
/// coincide with existing structure at small sizes).
pub fn cycle_growth_egf<S: Scalar>(b: usize, order: usize) -> TruncatedSeries<S> {
    let t = rooted_hypertree_egf::<S>(b, order);
    let scale = S::one().div(&factorial_scalar(b as u64 - 2));
    t.powi(b as u32 - 2)
        .scale(&scale)
        .mul(&marked_unicyclic_egf(b, &t))
}

/// EGF of growth configurations with the full complement of b−1 absorbed
/// rooted hypertrees, `ϑH₀·T^{b−1}/(b−1)!`: the marked vertex hosts the new
/// edge and every other edge vertex is the root of a previously separate
/// hypertree. For b ≥ 3 this counts simple configurations exactly.
pub fn growth_config_egf<S: Scalar>(b: usize, order: usize) -> TruncatedSeries<S> {
    let t = rooted_hypertree_egf::<S>(b, order);
    let scale = S::one().div(&factorial_scalar(b as u64 - 1));
    t.powi(b as u32 - 1)
        .scale(&scale)
        .mul(&marked_unicyclic_egf(b, &t))
}

/// Growth configurations weighted by the number of newly absorbed vertices:
/// the absorbed-trees factor is vertex-marked, `ϑH₀·T^{b−2}·ϑT/(b−2)!`.
pub fn growth_mass_egf<S: Scalar>(b: usize, order: usize) -> TruncatedSeries<S> {
    let t = rooted_hypertree_egf::<S>(b, order);
    let scale = S::one().div(&factorial_scalar(b as u64 - 2));
    t.powi(b as u32 - 2)
        .scale(&scale)
        .mul(&t.theta_op())
        .mul(&marked_unicyclic_egf(b, &t))
}

/// Power-series part of `z^{tree_pow} / (T^{tree_pow}·θ^{theta_pow})`, i.e.
/// `exp(−tree_pow·T^{b−1}/(b−1)!)·θ^{−theta_pow}`.
///
/// `(z/T)^{tree_pow}` cancels the pole at the origin, so the coefficient of
/// `z^{m}` here is the coefficient of `z^{m−tree_pow}` of the reciprocal
/// itself. Callers extract accordingly.
pub fn reciprocal_tree_power_series<S: Scalar>(
    b: usize,
    tree_pow: usize,
    theta_pow: usize,
    order: usize,
) -> TruncatedSeries<S> {
    let t = rooted_hypertree_egf::<S>(b, order);
    let w = t
        .powi(b as u32 - 1)
        .scale(&S::one().div(&factorial_scalar(b as u64 - 1)));
    // θ = 1 − (b−1)·w
    let theta = TruncatedSeries::one(order).sub(&w.scale(&S::from_i64(b as i64 - 1)));
    let expo = w.scale(&S::from_i64(-(tree_pow as i64))).exp();
    expo.mul(&theta.invert().powi(theta_pow as u32))
}

/// Coefficientwise upper bound on the EGF `H_ℓ` of connected components with
/// `ℓ ≥ 1` surplus edges: the power-series part of
/// `λ_ℓ·(b−1)^{2ℓ}/(3ℓ·T^ℓ·θ^{3ℓ})`.
///
/// The returned series is aligned so its `z^a` coefficient bounds
/// `[z^a]H_ℓ`.
pub fn wright_upper_bound(
    b: usize,
    ell: usize,
    lambda: &super::lambda::LambdaTable,
    order: usize,
) -> TruncatedSeries<num_rational::BigRational> {
    assert!(ell >= 1, "the majorant applies to positive surplus only");
    use num_rational::BigRational;
    let series =
        reciprocal_tree_power_series::<BigRational>(b, ell, 3 * ell, order + ell);
    let aligned = series.drop_low(ell);
    let mut scale = lambda.value(ell).clone();
    let bm1 = BigRational::from_i64(b as i64 - 1);
    for _ in 0..2 * ell {
        scale = &scale * &bm1;
    }
    scale = scale / BigRational::from_i64(3 * ell as i64);
    let mut out = TruncatedSeries::zero(order);
    for n in 0..=order {
        out.set_coeff(n, aligned.coeff(n) * &scale);
    }
    out
}
