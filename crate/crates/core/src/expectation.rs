//! Expected event counts over the random b-uniform hypergraph process:
//! per-order arrival terms (binomial × Beta), their damped-sum asymptotics,
//! Γ-limit closed forms, exact series-backed sums, and the high-excess
//! pipeline built on the creation-configuration coefficients.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::enumeration::asymptotics::{
    creation_config_coefficient_ln, creation_config_ln_table, SERIES_SADDLE_CUT,
};
use crate::enumeration::egf::{cycle_creation_egf, growth_config_egf, growth_mass_egf};
use crate::enumeration::oracle::{big_binomial, choose_u64, marked_transition_counts};
use crate::error::{Error, Result};
use crate::scalar::{ln_factorial, ExtFloat};
use crate::series::TruncatedSeries;

/// One expectation quantity with its asymptotic companion.
#[derive(Debug, Clone)]
pub struct ExpectationResult {
    /// ln of the computed value (authoritative; `value` may overflow).
    pub value_ln: f64,
    pub value: f64,
    /// Exact rational value where a small-case exact path exists.
    pub exact: Option<BigRational>,
    pub asymptotic: f64,
    /// value / asymptotic.
    pub ratio: f64,
    /// Whether the inputs sit inside the quantity's stated regime.
    pub regime_ok: bool,
}

impl ExpectationResult {
    fn new(value: f64, asymptotic: f64, regime_ok: bool) -> ExpectationResult {
        assert!(value >= 0.0);
        ExpectationResult {
            value_ln: value.ln(),
            value,
            exact: None,
            asymptotic,
            ratio: value / asymptotic,
            regime_ok,
        }
    }
}

/// Exact Beta integral `B(x, y) = ∫₀¹ t^x (1−t)^y dt = x!y!/(x+y+1)!`.
pub fn beta_integral(x: u64, y: u64) -> BigRational {
    // x!y!/(x+y+1)! = x!/((y+1)(y+2)···(y+x+1)).
    let mut numer = BigInt::one();
    for j in 2..=x {
        numer *= BigInt::from(j);
    }
    let mut denom = BigInt::one();
    for j in 1..=x + 1 {
        denom *= BigInt::from(y + j);
    }
    BigRational::new(numer, denom)
}

/// ln B(x, y), stable for y up to ~1e18 (the factorials never materialize:
/// `ln B = ln x! − Σ_{j=1..x+1} ln(y+j)`).
pub fn beta_integral_ln(x: u64, y: u64) -> f64 {
    assert!(x <= 2_000_000, "per-term cost is O(x); x = {x} is out of scope");
    let mut s = 0.0;
    for j in (1..=x + 1).rev() {
        s += ((y + j) as f64).ln();
    }
    ln_factorial(x) - s
}

/// Number of b-subsets meeting a fixed a-subset of an n-set:
/// `C(n,b) − C(n−a,b)`.
pub fn edge_deficit(n: u64, a: u64, b: usize) -> u64 {
    assert!(a <= n);
    choose_u64(n, b as u64) - choose_u64(n - a, b as u64)
}

/// The same count assembled from the boundary decomposition
/// `Σ_{i=1}^{b−1} C(n−a,i)·C(a,b−i) + C(a,b)`.
pub fn edge_deficit_boundary_sum(n: u64, a: u64, b: usize) -> u64 {
    assert!(a <= n);
    let mut total = choose_u64(a, b as u64);
    for i in 1..b as u64 {
        total += choose_u64(n - a, i) * choose_u64(a, b as u64 - i);
    }
    total
}

fn ln_choose(n: u64, a: u64) -> f64 {
    assert!(a <= n);
    ln_factorial(n) - ln_factorial(a) - ln_factorial(n - a)
}

/// Cubic damping rate γ = (b−1)⁴/(24n²).
fn gamma_rate(n: u64, b: usize) -> f64 {
    let bm1 = b as f64 - 1.0;
    bm1.powi(4) / (24.0 * (n as f64) * (n as f64))
}

/// ln of the per-order arrival factor (the asymptotic form of
/// `C(n,a)·B(k−1, N−k)`):
/// `(1/(√(b−1)·n^ℓ))·k^{k−1}((b−1)!)^k/(k(b−1)−ℓ)^{kb−ℓ}·exp(k(b−2) − ℓ − γk³)`.
pub fn asym_binomial_integral_ln(n: u64, b: usize, k: u64, ell: i64) -> Result<f64> {
    assert!(b >= 2);
    if k == 0 || (k * (b as u64 - 1)) as i64 <= ell {
        return Err(Error::Domain(format!(
            "need k(b-1) > ell: k = {k}, b = {b}, ell = {ell}"
        )));
    }
    let a = (k * (b as u64 - 1)) as i64 - ell;
    let kf = k as f64;
    let ln = -0.5 * (b as f64 - 1.0).ln() - ell as f64 * (n as f64).ln()
        + (kf - 1.0) * kf.ln()
        + kf * ln_factorial(b as u64 - 1)
        - (kf * b as f64 - ell as f64) * (a as f64).ln()
        + kf * (b as f64 - 2.0)
        - ell as f64
        - gamma_rate(n, b) * kf * kf * kf;
    Ok(ln)
}

/// Expected-arrival term for a configuration class with `marked_count`
/// marked configurations on a = k(b−1)−ℓ vertices and k edges:
/// `value = C(n,a)·marked_count·B(k−1, N−k)` with N = [`edge_deficit`].
/// The count is passed in log space so astronomically large classes work.
pub fn alpha_term(
    n: u64,
    b: usize,
    k: u64,
    ell: i64,
    marked_count_ln: f64,
) -> Result<ExpectationResult> {
    assert!(b >= 2);
    let a_signed = (k * (b as u64 - 1)) as i64 - ell;
    if k == 0 || a_signed < 1 || a_signed as u64 > n {
        return Err(Error::Domain(format!(
            "no placement: a = k(b-1)-ell = {a_signed} must lie in 1..=n = {n}"
        )));
    }
    let a = a_signed as u64;
    let deficit = edge_deficit(n, a, b);
    if deficit < k {
        return Err(Error::Domain(format!(
            "only {deficit} edges meet the chosen {a} vertices; need at least k = {k}"
        )));
    }
    let value_ln = ln_choose(n, a) + marked_count_ln + beta_integral_ln(k - 1, deficit - k);
    let asym_ln = marked_count_ln + asym_binomial_integral_ln(n, b, k, ell)?;
    Ok(ExpectationResult {
        value_ln,
        value: value_ln.exp(),
        exact: None,
        asymptotic: asym_ln.exp(),
        ratio: (value_ln - asym_ln).exp(),
        regime_ok: (k * b as u64) < n,
    })
}

/// Exact-rational arrival term for micro cases.
pub fn alpha_term_exact(
    n: u64,
    b: usize,
    k: u64,
    ell: i64,
    marked_count: &BigInt,
) -> Result<BigRational> {
    let a_signed = (k * (b as u64 - 1)) as i64 - ell;
    if k == 0 || a_signed < 1 || a_signed as u64 > n {
        return Err(Error::Domain(format!(
            "no placement: a = k(b-1)-ell = {a_signed} must lie in 1..=n = {n}"
        )));
    }
    let a = a_signed as u64;
    let deficit = edge_deficit(n, a, b);
    if deficit < k {
        return Err(Error::Domain(format!(
            "only {deficit} edges meet the chosen {a} vertices; need at least k = {k}"
        )));
    }
    let binom = BigRational::from_integer(big_binomial(n, a));
    Ok(binom * BigRational::from_integer(marked_count.clone())
        * beta_integral(k - 1, deficit - k))
}

fn k_limit(n: u64, b: usize) -> u64 {
    n / (b as u64 - 1)
}

/// Expected number of first-cycle creations over the whole process:
/// `Σ_k (1/2k)·e^{−γk³}`, growing like (ln n)/3.
pub fn expected_unicyclic_creations(n: u64, b: usize) -> ExpectationResult {
    assert!(b >= 2 && n >= b as u64);
    let gamma = gamma_rate(n, b);
    let mut value = 0.0;
    for k in 1..=k_limit(n, b) {
        let damp = gamma * (k as f64).powi(3);
        if damp > 745.0 {
            // Summands are positive and strictly decreasing; every further
            // term underflows f64, so the partial sum is already exact.
            break;
        }
        value += 0.5 / k as f64 * (-damp).exp();
    }
    ExpectationResult::new(value, (n as f64).ln() / 3.0, n >= 100)
}

/// Expected number of static events (creations + growths) on excess-0
/// components: `Σ_k √(π/8)·(b−1)·k^{−1/2}·e^{−γk³}`, with Γ-limit
/// `(√2·π^{3/2}·24^{1/6}/(6Γ(5/6)))·(b−1)^{1/3}·n^{1/3}` ≈ 1.9747·(b−1)^{1/3}n^{1/3}.
pub fn expected_unicyclic_statics(n: u64, b: usize) -> ExpectationResult {
    assert!(b >= 2 && n >= b as u64);
    let gamma = gamma_rate(n, b);
    let bm1 = b as f64 - 1.0;
    let pref = (std::f64::consts::PI / 8.0).sqrt() * bm1;
    let mut value = 0.0;
    for k in 1..=k_limit(n, b) {
        let damp = gamma * (k as f64).powi(3);
        if damp > 745.0 {
            break;
        }
        value += pref / (k as f64).sqrt() * (-damp).exp();
    }
    let c = 2f64.sqrt() * std::f64::consts::PI.powf(1.5) * 24f64.powf(1.0 / 6.0)
        / (6.0 * statrs::function::gamma::gamma(5.0 / 6.0));
    let asym = c * bm1.powf(1.0 / 3.0) * (n as f64).powf(1.0 / 3.0);
    ExpectationResult::new(value, asym, n >= 1000)
}

/// Expected total creation mass on excess-0 components (vertices in
/// components at their first-cycle moment): `½(b−1)·Σ_k e^{−γk³}`, with
/// Γ-limit `(24^{1/3}Γ(1/3)/6)·n^{2/3}/(b−1)^{1/3}` ≈ 1.2879·n^{2/3}/(b−1)^{1/3}.
///
/// Note this is the creation-side mass only; the process statistic V[0]
/// also absorbs growth mass, which is asymptotically the same size — the
/// exact-series path in [`unicyclic_alpha_sums`] carries both separately.
pub fn expected_v0_mass(n: u64, b: usize) -> ExpectationResult {
    assert!(b >= 2 && n >= b as u64);
    let gamma = gamma_rate(n, b);
    let bm1 = b as f64 - 1.0;
    let mut value = 0.0;
    for k in 1..=k_limit(n, b) {
        let damp = gamma * (k as f64).powi(3);
        if damp > 745.0 {
            break;
        }
        value += 0.5 * bm1 * (-damp).exp();
    }
    let asym = 24f64.powf(1.0 / 3.0) * statrs::function::gamma::gamma(1.0 / 3.0) / 6.0
        * (n as f64).powf(2.0 / 3.0)
        / bm1.powf(1.0 / 3.0);
    ExpectationResult::new(value, asym, n >= 1000)
}

/// The closing Γ-sum identity: `Σ_k k^u e^{−γk³}` against its integral
/// limit `(1/3)·24^{(u+1)/3}·n^{2(u+1)/3}·(b−1)^{−4(u+1)/3}·Γ((u+1)/3)`.
pub fn gamma_sum_check(u: f64, n: u64, b: usize) -> ExpectationResult {
    assert!(u >= 0.0, "exponent must be nonnegative");
    assert!(b >= 2 && n >= b as u64);
    let gamma = gamma_rate(n, b);
    let mut value = 0.0;
    for k in 1..=k_limit(n, b) {
        let damp = gamma * (k as f64).powi(3);
        if damp > 745.0 {
            break;
        }
        value += (k as f64).powf(u) * (-damp).exp();
    }
    let e = (u + 1.0) / 3.0;
    let asym = 24f64.powf(e) * (n as f64).powf(2.0 * e)
        * (b as f64 - 1.0).powf(-4.0 * e)
        * statrs::function::gamma::gamma(e)
        / 3.0;
    ExpectationResult::new(value, asym, n >= 1000)
}

/// Exact (no asymptotics in k) expected-event sums for excess-0 components,
/// in the generating-function counting convention: per-order arrival
/// factors are the exact `C(n,a)·B(k−1, N−k)` and configuration counts come
/// from series coefficients. Feasible up to n ≈ 4000.
#[derive(Debug, Clone)]
pub struct UnicyclicAlphaSums {
    pub creations: f64,
    pub growths: f64,
    /// creations + growths.
    pub statics: f64,
    /// Σ (component size) over creations.
    pub creation_mass: f64,
    /// Σ (absorbed vertices) over growths.
    pub growth_mass: f64,
    /// creation_mass + growth_mass: the analytic counterpart of the
    /// process statistic V[0].
    pub v0_mass: f64,
}

pub fn unicyclic_alpha_sums(n: u64, b: usize) -> Result<UnicyclicAlphaSums> {
    assert!(b >= 2 && n >= b as u64);
    if n > 4000 {
        return Err(Error::Resource(format!(
            "series order {n} beyond the exact-sum limit 4000"
        )));
    }
    let order = n as usize;
    let creation = cycle_creation_egf::<ExtFloat>(b, order);
    let growth = growth_config_egf::<ExtFloat>(b, order);
    let growth_mass = growth_mass_egf::<ExtFloat>(b, order);
    let ln_coeff = |s: &TruncatedSeries<ExtFloat>, a: u64| -> f64 {
        s.coeff(a as usize).ln_abs() + ln_factorial(a)
    };
    let mut out = UnicyclicAlphaSums {
        creations: 0.0,
        growths: 0.0,
        statics: 0.0,
        creation_mass: 0.0,
        growth_mass: 0.0,
        v0_mass: 0.0,
    };
    for k in 1..=k_limit(n, b) {
        let a = k * (b as u64 - 1);
        let deficit = edge_deficit(n, a, b);
        if deficit < k {
            continue;
        }
        let arrival_ln = ln_choose(n, a) + beta_integral_ln(k - 1, deficit - k);
        let c = (arrival_ln + ln_coeff(&creation, a)).exp();
        let g = (arrival_ln + ln_coeff(&growth, a)).exp();
        let gm = (arrival_ln + ln_coeff(&growth_mass, a)).exp();
        out.creations += c;
        out.growths += g;
        out.creation_mass += a as f64 * c;
        out.growth_mass += gm;
    }
    out.statics = out.creations + out.growths;
    out.v0_mass = out.creation_mass + out.growth_mass;
    Ok(out)
}

/// Exact-rational version of [`unicyclic_alpha_sums`] for micro anchors.
#[derive(Debug, Clone)]
pub struct UnicyclicRationalSums {
    pub creations: BigRational,
    pub growths: BigRational,
    pub creation_mass: BigRational,
    pub growth_mass: BigRational,
    pub v0_mass: BigRational,
}

pub fn unicyclic_exact_rational(n: u64, b: usize) -> Result<UnicyclicRationalSums> {
    assert!(b >= 2 && n >= b as u64);
    if n > 60 {
        return Err(Error::Resource(format!(
            "exact-rational sums refused beyond n = 60 (got {n})"
        )));
    }
    let order = n as usize;
    let creation = cycle_creation_egf::<BigRational>(b, order);
    let growth = growth_config_egf::<BigRational>(b, order);
    let growth_mass = growth_mass_egf::<BigRational>(b, order);
    let count = |s: &TruncatedSeries<BigRational>, a: u64| -> BigInt {
        let c = s.egf_count(a as usize);
        assert!(c.is_integer() && !c.is_negative());
        c.to_integer()
    };
    let mut out = UnicyclicRationalSums {
        creations: BigRational::zero(),
        growths: BigRational::zero(),
        creation_mass: BigRational::zero(),
        growth_mass: BigRational::zero(),
        v0_mass: BigRational::zero(),
    };
    for k in 1..=k_limit(n, b) {
        let a = k * (b as u64 - 1);
        let deficit = edge_deficit(n, a, b);
        if deficit < k {
            continue;
        }
        let c = alpha_term_exact(n, b, k, 0, &count(&creation, a))?;
        let g = alpha_term_exact(n, b, k, 0, &count(&growth, a))?;
        let gm = alpha_term_exact(n, b, k, 0, &count(&growth_mass, a))?;
        out.creations += &c;
        out.growths += g;
        out.creation_mass += BigRational::from_integer(BigInt::from(a)) * c;
        out.growth_mass += gm;
    }
    out.v0_mass = &out.creation_mass + &out.growth_mass;
    Ok(out)
}

/// Exact expected event counts for the exhaustive micro regime, built from
/// simple-configuration brute-force counts (not generating functions), so
/// they match what the simulator can see on small complete edge sets.
#[derive(Debug, Clone)]
pub struct MicroExpectations {
    /// Expected creations landing at each excess.
    pub creations: BTreeMap<i64, BigRational>,
    /// Expected growths at each excess.
    pub growths: BTreeMap<i64, BigRational>,
    /// Expected V-mass at each excess (creation component sizes plus
    /// growth-absorbed vertices).
    pub v_mass: BTreeMap<i64, BigRational>,
    pub tree_merges: BigRational,
    pub multicyclic_merges: BigRational,
}

pub fn micro_expected_sums(b: usize, n: u64) -> Result<MicroExpectations> {
    let counts = marked_transition_counts(b, n as usize)?;
    let mut out = MicroExpectations {
        creations: BTreeMap::new(),
        growths: BTreeMap::new(),
        v_mass: BTreeMap::new(),
        tree_merges: BigRational::zero(),
        multicyclic_merges: BigRational::zero(),
    };
    for (&(a, k, ell), &cnt) in counts.creation_entries() {
        let term = alpha_term_exact(n, b, k as u64, ell, &BigInt::from(cnt))?;
        *out.creations.entry(ell).or_insert_with(BigRational::zero) += &term;
        *out.v_mass.entry(ell).or_insert_with(BigRational::zero) +=
            BigRational::from_integer(BigInt::from(a)) * term;
    }
    for (&(_, k, ell), &cnt) in counts.growth_entries() {
        let term = alpha_term_exact(n, b, k as u64, ell, &BigInt::from(cnt))?;
        *out.growths.entry(ell).or_insert_with(BigRational::zero) += term;
    }
    for (&(_, k, ell), &mass) in counts.growth_absorbed_entries() {
        let term = alpha_term_exact(n, b, k as u64, ell, &BigInt::from(mass))?;
        *out.v_mass.entry(ell).or_insert_with(BigRational::zero) += term;
    }
    for (&(a, k), &cnt) in counts.tree_merge_entries() {
        // Excess of a tree-merge result is −1: a = k(b−1)+1.
        assert_eq!(a, k * (b - 1) + 1);
        out.tree_merges += alpha_term_exact(n, b, k as u64, -1, &BigInt::from(cnt))?;
    }
    for (&(a, k), &cnt) in counts.multicyclic_entries() {
        let ell = (k * (b - 1)) as i64 - a as i64;
        out.multicyclic_merges += alpha_term_exact(n, b, k as u64, ell, &BigInt::from(cnt))?;
    }
    Ok(out)
}

/// Expected number of excess-ℓ creations over the whole process:
/// `Σ_k c_ℓ(k(b−1)−ℓ)·(arrival factor)`, which tends to a constant.
pub fn expected_ell_creations(n: u64, b: usize, ell: u64) -> Result<ExpectationResult> {
    let sums = ell_pipeline_sums(n, b, ell)?;
    Ok(ExpectationResult::new(
        sums.0,
        1.0,
        (ell * ell * ell * b as u64) * 8 <= n,
    ))
}

/// Expected V-mass gathered by excess-ℓ creations, against the closed form
/// `(12ℓ(b−1))^{1/3}·n^{2/3}`.
pub fn expected_vell_mass(n: u64, b: usize, ell: u64) -> Result<ExpectationResult> {
    let sums = ell_pipeline_sums(n, b, ell)?;
    let asym = (12.0 * ell as f64 * (b as f64 - 1.0)).powf(1.0 / 3.0)
        * (n as f64).powf(2.0 / 3.0);
    Ok(ExpectationResult::new(
        sums.1,
        asym,
        (ell * ell * ell * b as u64) * 8 <= n,
    ))
}

/// Shared sum for the two ℓ-pipeline quantities: (count, mass).
///
/// Configuration coefficients come from the series table up to its cut and
/// from the saddle evaluation beyond it; when the excess is too small for
/// the saddle regime (`ell(b−1) < 10`) the table is extended to the cubic
/// damping cutoff `γk³ = 80` instead (the discarded tail is below 1e−30
/// relative), refusing with a resource error if that order is infeasible.
fn ell_pipeline_sums(n: u64, b: usize, ell: u64) -> Result<(f64, f64)> {
    assert!(b >= 2);
    assert!(ell >= 1, "positive excess only");
    if ell * ell * ell * b as u64 > n {
        return Err(Error::Domain(format!(
            "excess {ell} too large for n = {n} (need ell^3*b <= n)"
        )));
    }
    let bm1 = b as u64 - 1;
    let k_min = ell / bm1 + 1; // smallest k with a = k(b−1)−ℓ ≥ 1
    let k_max = k_limit(n, b);
    let a_needed = k_max * bm1 - ell; // largest a the sum can visit
    let saddle_ok = ell * bm1 >= 10;
    let k_eff;
    let table_a_max;
    if saddle_ok {
        k_eff = k_max;
        table_a_max = SERIES_SADDLE_CUT.min(a_needed).max(1);
    } else {
        let k_cut = (80.0 / gamma_rate(n, b)).cbrt().ceil() as u64;
        k_eff = k_cut.min(k_max);
        table_a_max = (k_eff * bm1 - ell).max(1);
        if table_a_max + ell > 12_000 {
            return Err(Error::Resource(format!(
                "excess {ell} is below the saddle regime and n = {n} needs \
                 series order {} (limit 12000)",
                table_a_max + ell
            )));
        }
    }
    let table = creation_config_ln_table(b, ell, table_a_max)?;
    let mut count = 0.0;
    let mut mass = 0.0;
    for k in k_min..=k_eff {
        let a = k * bm1 - ell;
        if a < 1 || a as usize > n as usize {
            continue;
        }
        let c_ln = if a <= table_a_max {
            match table[a as usize] {
                Some(v) => v,
                None => continue,
            }
        } else {
            creation_config_coefficient_ln(b, ell, a)?
        };
        let term_ln = c_ln + asym_binomial_integral_ln(n, b, k, ell as i64)?;
        if term_ln < -745.0 {
            if gamma_rate(n, b) * (k as f64).powi(3) > 745.0 {
                break; // damping has taken over; all further terms vanish
            }
            continue;
        }
        let t = term_ln.exp();
        count += t;
        mass += a as f64 * t;
    }
    Ok((count, mass))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn beta_integral_matches_quadrature() {
        // Simpson quadrature of ∫ t^x (1−t)^y dt as an independent check.
        for (x, y) in [(0u64, 0u64), (1, 2), (5, 3), (10, 20), (20, 7)] {
            let exact = beta_integral(x, y).to_f64().unwrap();
            let panels = 2000;
            let h = 1.0 / panels as f64;
            let f = |t: f64| t.powi(x as i32) * (1.0 - t).powi(y as i32);
            let mut acc = f(0.0) + f(1.0);
            for i in 1..panels {
                acc += if i % 2 == 1 { 4.0 } else { 2.0 } * f(i as f64 * h);
            }
            let quad = acc * h / 3.0;
            assert!((quad - exact).abs() < 1e-10 * exact, "x={x} y={y}");
        }
    }

    #[test]
    fn beta_integral_ln_matches_exact_across_scales() {
        for (x, y) in [(0u64, 0u64), (2, 0), (5, 17), (40, 1000), (99, 123456)] {
            let exact = crate::scalar::rat_ln_abs(&beta_integral(x, y));
            let ln = beta_integral_ln(x, y);
            assert!((ln - exact).abs() < 1e-9 * exact.abs().max(1.0), "x={x} y={y}");
        }
        // Huge-y regime: compare against the two-term series expansion.
        let (x, y) = (9u64, 10u64.pow(16));
        let series = ln_factorial(x)
            - (x as f64 + 1.0) * (y as f64).ln()
            - (x as f64 + 1.0) * (x as f64 + 2.0) / (2.0 * y as f64);
        assert!((beta_integral_ln(x, y) - series).abs() < 1e-9);
    }

    #[test]
    fn edge_deficit_identity_on_random_triples() {
        // Stepping a vertex set by a vertices removes exactly the edges
        // that meet it: check the boundary decomposition on 1000 triples.
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for _ in 0..1000 {
            let n = 2 + next() % 99;
            let a = next() % (n + 1);
            let b = 2 + (next() % 4) as usize;
            if (b as u64) > n {
                continue;
            }
            assert_eq!(
                edge_deficit(n, a, b),
                edge_deficit_boundary_sum(n, a, b),
                "n={n} a={a} b={b}"
            );
        }
        assert_eq!(edge_deficit(10, 0, 3), 0);
        assert_eq!(edge_deficit(10, 10, 3), choose_u64(10, 3));
    }

    #[test]
    fn alpha_term_single_cycle_on_a_triangle() {
        // n=3, b=2, k=3, ℓ=0 with 3 marked configurations: the triangle
        // completes with probability 1, α = 3·C(3,3)·B(2,0) = 1.
        let r = alpha_term(3, 2, 3, 0, 3f64.ln()).unwrap();
        assert!((r.value - 1.0).abs() < 1e-12);
        let e = alpha_term_exact(3, 2, 3, 0, &BigInt::from(3)).unwrap();
        assert_eq!(e, BigRational::one());
    }

    #[test]
    fn alpha_term_guards() {
        assert!(matches!(alpha_term(10, 2, 0, 0, 0.0), Err(Error::Domain(_))));
        assert!(matches!(alpha_term(3, 2, 9, 0, 0.0), Err(Error::Domain(_))));
        assert!(matches!(
            asym_binomial_integral_ln(100, 2, 3, 5),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn arrival_factor_tracks_the_exact_product() {
        // Relative error of the asymptotic arrival factor against the exact
        // C(n,a)·B at n=1e5, b=3: within 5% and shrinking from k=10 to 100.
        let n = 100_000u64;
        for ell in [0i64, 1] {
            let mut last = f64::INFINITY;
            for k in [10u64, 100, 1000] {
                let a = (2 * k) as i64 - ell;
                let deficit = edge_deficit(n, a as u64, 3);
                let exact_ln =
                    ln_choose(n, a as u64) + beta_integral_ln(k - 1, deficit - k);
                let asym_ln = asym_binomial_integral_ln(n, 3, k, ell).unwrap();
                let rel = ((asym_ln - exact_ln).exp() - 1.0).abs();
                assert!(rel < 0.05, "ell={ell} k={k}: rel={rel}");
                if k <= 100 {
                    assert!(rel < last, "ell={ell} k={k}: {rel} vs {last}");
                    last = rel;
                }
            }
        }
    }

    #[test]
    fn unicyclic_sums_follow_their_limits() {
        // Creation count grows like (ln n)/3: the offset stabilizes.
        let c4 = expected_unicyclic_creations(10_000, 3);
        let c6 = expected_unicyclic_creations(1_000_000, 3);
        let off4 = c4.value - c4.asymptotic;
        let off6 = c6.value - c6.asymptotic;
        assert!((off4 - off6).abs() < 0.1, "offsets {off4} vs {off6}");
        // Statics and creation-mass match their Γ-limits at n=1e6.
        let s = expected_unicyclic_statics(1_000_000, 3);
        assert!((s.ratio - 1.0).abs() < 0.1, "statics ratio {}", s.ratio);
        let v = expected_v0_mass(1_000_000, 3);
        assert!((v.ratio - 1.0).abs() < 0.05, "v0 ratio {}", v.ratio);
    }

    #[test]
    fn gamma_sum_identity_hits_one_percent() {
        for u in [0.0, 0.5, 1.0] {
            let r = gamma_sum_check(u, 1_000_000, 3);
            assert!((r.ratio - 1.0).abs() <= 0.01, "u={u}: ratio {}", r.ratio);
        }
    }

    #[test]
    fn triple_system_micro_anchors() {
        // n=6, b=3: exhaustive-order expectations from simple counts.
        let m = micro_expected_sums(3, 6).unwrap();
        assert_eq!(m.creations[&0], rat(15, 19));
        assert_eq!(m.growths[&0], rat(2, 19));
        assert_eq!(m.v_mass[&0], rat(4, 1));
        // The generating-function route agrees for b=3 (simple = EGF).
        let r = unicyclic_exact_rational(6, 3).unwrap();
        assert_eq!(r.creations, rat(15, 19));
        assert_eq!(r.growths, rat(2, 19));
        assert_eq!(r.v0_mass, rat(4, 1));
    }

    #[test]
    fn graph_micro_anchors() {
        // n=4, b=2 exhaustive-order expectations from simple counts.
        let m = micro_expected_sums(2, 4).unwrap();
        assert_eq!(m.creations[&0], rat(1, 1));
        assert_eq!(m.creations[&1], rat(1, 1));
        assert_eq!(m.creations[&2], rat(1, 1));
        assert_eq!(m.growths[&0], rat(1, 5));
        assert_eq!(m.v_mass[&0], rat(4, 1));
        assert_eq!(m.v_mass[&1], rat(4, 1));
        assert_eq!(m.v_mass[&2], rat(4, 1));
    }

    #[test]
    fn alpha_sums_agree_with_exact_rational_ring() {
        for (n, b) in [(20u64, 2usize), (24, 3), (25, 4)] {
            let f = unicyclic_alpha_sums(n, b).unwrap();
            let r = unicyclic_exact_rational(n, b).unwrap();
            let pairs = [
                (f.creations, r.creations.to_f64().unwrap()),
                (f.growths, r.growths.to_f64().unwrap()),
                (f.v0_mass, r.v0_mass.to_f64().unwrap()),
            ];
            for (got, want) in pairs {
                assert!(
                    (got - want).abs() < 1e-9 * want.abs().max(1e-30),
                    "n={n} b={b}: {got} vs {want}"
                );
            }
        }
    }

    #[test]
    fn damped_sum_shadows_the_exact_sum() {
        // Both the exact creation sum and its damped 1/2k shadow grow like
        // (ln n)/3, with an O(1) offset between them (the per-term error at
        // small fixed k does not vanish with n). The offset must stabilize:
        // consecutive gap increments shrink as n doubles.
        let mut gaps = Vec::new();
        for n in [500u64, 1000, 2000, 4000] {
            let exact = unicyclic_alpha_sums(n, 3).unwrap();
            let damped = expected_unicyclic_creations(n, 3);
            gaps.push(damped.value - exact.creations);
        }
        let increments: Vec<f64> = gaps.windows(2).map(|w| (w[1] - w[0]).abs()).collect();
        assert!(increments.iter().all(|d| *d < 0.05), "gaps {gaps:?}");
        for w in increments.windows(2) {
            assert!(w[1] < w[0], "increments should shrink: {gaps:?}");
        }
        assert!(gaps.iter().all(|g| g.abs() < 1.0), "offset is O(1): {gaps:?}");
    }

    #[test]
    #[ignore = "diagnostic: decomposes pipeline error sources at n=1e4"]
    fn probe_ell_pipeline_error_sources() {
        // A: production path (series table to 3000, saddle beyond).
        // B: pure series table for every order (no saddle branch).
        // C: as B but with the exact arrival factor C(n,a)·B(k−1,N−k)
        //    instead of its asymptotic form.
        let (n, b, ell) = (10_000u64, 3usize, 8u64);
        let bm1 = b as u64 - 1;
        let a_span = 4600u64;
        let table = creation_config_ln_table(b, ell, a_span).unwrap();
        let mut b_sum = 0.0;
        let mut c_sum = 0.0;
        for k in (ell / bm1 + 1)..=((a_span + ell) / bm1) {
            let a = k * bm1 - ell;
            let c_ln = match table[a as usize] {
                Some(v) => v,
                None => continue,
            };
            b_sum += (c_ln + asym_binomial_integral_ln(n, b, k, ell as i64).unwrap()).exp();
            let deficit = edge_deficit(n, a, b);
            c_sum += (c_ln + ln_choose(n, a) + beta_integral_ln(k - 1, deficit - k)).exp();
        }
        let a_val = expected_ell_creations(n, b, ell).unwrap().value;
        println!("A (saddle hybrid) = {a_val}");
        println!("B (pure series)   = {b_sum}");
        println!("C (exact arrival) = {c_sum}");
    }

    #[test]
    #[ignore = "diagnostic: prints the high-excess pipeline trajectory"]
    fn probe_ell_pipeline_values() {
        for n in [10_000u64, 100_000, 1_000_000] {
            let c = expected_ell_creations(n, 3, 8).unwrap();
            println!("creations ell=8 n={n}: value {} regime_ok {}", c.value, c.regime_ok);
        }
        for n in [20_000u64, 100_000, 1_000_000] {
            let v = expected_vell_mass(n, 3, 8).unwrap();
            println!(
                "vell ell=8 n={n}: value {} closed {} ratio {}",
                v.value, v.asymptotic, v.ratio
            );
        }
    }

    #[test]
    fn ell_pipeline_basics() {
        assert!(matches!(
            expected_ell_creations(10, 3, 10),
            Err(Error::Domain(_))
        ));
        let r = expected_ell_creations(100_000, 3, 8).unwrap();
        assert!(r.value.is_finite() && r.value > 0.0);
        assert!(r.regime_ok);
        let small = expected_ell_creations(10_000, 3, 8).unwrap();
        assert!(!small.regime_ok, "the printed regime bound excludes n=1e4");
        // Closed-form mass scaling: asymptotic(8ℓ)/asymptotic(ℓ) = 2. The
        // ℓ=1 call also exercises the below-saddle-regime series extension.
        let v1 = expected_vell_mass(20_000, 3, 1).unwrap();
        let v8 = expected_vell_mass(20_000, 3, 8).unwrap();
        assert!((v8.asymptotic / v1.asymptotic - 2.0).abs() < 1e-12);
        assert!(v1.value.is_finite() && v1.value > 0.0);
        assert!(matches!(
            expected_vell_mass(1_000_000, 3, 1),
            Err(Error::Resource(_))
        ));
    }
}
