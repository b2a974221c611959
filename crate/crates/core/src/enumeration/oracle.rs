//! Exact connected-hypergraph counts, plus the tiny brute-force enumerators
//! that validate them and pin down marking conventions on small cases.
//!
//! The workhorse is the bivariate log transform: the EGF of *all* b-uniform
//! hypergraphs with edge-counting variable y is Σ C(C(n,b), k)·y^k·zⁿ/n!,
//! and its log keeps exactly the connected ones. Edge-subset brute force and
//! a subset inclusion–exclusion DP re-derive small slices independently.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::bivariate::BivariateSeries;
use crate::error::{Error, Result};
use crate::transition::{classify, TransitionKind};

/// C(n, k) as a machine integer; panics on overflow (callers stay tiny).
pub fn choose_u64(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 1..=k {
        acc = acc * (n - k + i) as u128 / i as u128;
    }
    u64::try_from(acc).expect("binomial fits u64")
}

/// C(n, k) in arbitrary precision.
pub fn big_binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    num_integer::binomial(BigInt::from(n), BigInt::from(k))
}

fn big_factorial(n: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= BigInt::from(i);
    }
    acc
}

/// Exact bivariate EGF of connected b-uniform hypergraphs, truncated to
/// `n_max` vertices and `k_max` edges: the (n, k) coefficient times n! is
/// the number of connected hypergraphs with n labeled vertices and k
/// distinct edges.
pub fn connected_count_oracle(
    b: usize,
    n_max: usize,
    k_max: usize,
) -> Result<BivariateSeries<BigRational>> {
    assert!(b >= 2, "uniformity must be at least 2");
    assert!(n_max >= 1);
    let slots = choose_u64(n_max as u64, b as u64);
    if slots > 25_000 || k_max > 500 {
        return Err(Error::Resource(format!(
            "oracle truncation too large: C({n_max},{b}) = {slots} edge slots, k_max = {k_max} \
             (limits: 25000 slots, 500 edges)"
        )));
    }
    let mut all = BivariateSeries::zero(n_max, k_max);
    for n in 0..=n_max {
        let m = choose_u64(n as u64, b as u64);
        let nfact = big_factorial(n as u64);
        for k in 0..=k_max.min(m as usize) {
            let c = big_binomial(m, k as u64);
            all.set_coeff(n, k, BigRational::new(c, nfact.clone()));
        }
    }
    Ok(all.log())
}

/// n!·[zⁿy^k] of the oracle series, asserted to be a nonnegative integer.
pub fn connected_count(oracle: &BivariateSeries<BigRational>, n: usize, k: usize) -> BigInt {
    let v = oracle.coeff(n, k) * BigRational::from_integer(big_factorial(n as u64));
    assert!(v.is_integer(), "connected count must be integral");
    assert!(!v.is_negative(), "connected count must be nonnegative");
    v.to_integer()
}

/// The fixed-excess slice of the oracle: all (a, count) pairs with
/// `a = k(b−1) − ell` inside the oracle's truncation.
pub fn excess_slice(
    oracle: &BivariateSeries<BigRational>,
    b: usize,
    ell: i64,
) -> Vec<(usize, BigInt)> {
    let mut out = Vec::new();
    for a in 1..=oracle.n_order() {
        let num = a as i64 + ell;
        if num < 0 || num % (b as i64 - 1) != 0 {
            continue;
        }
        let k = (num / (b as i64 - 1)) as usize;
        if k > oracle.k_order() {
            continue;
        }
        out.push((a, connected_count(oracle, a, k)));
    }
    out
}

/// All b-subsets of {0..n−1} as vertex bitmasks.
pub fn edge_masks(n: usize, b: usize) -> Vec<u32> {
    assert!(n <= 30);
    let mut out = Vec::new();
    let mut pick = vec![0usize; b];
    fn rec(out: &mut Vec<u32>, pick: &mut [usize], depth: usize, start: usize, n: usize) {
        if depth == pick.len() {
            let mask = pick.iter().fold(0u32, |m, &v| m | (1 << v));
            out.push(mask);
            return;
        }
        for v in start..n {
            pick[depth] = v;
            rec(out, pick, depth + 1, v + 1, n);
        }
    }
    if b <= n {
        rec(&mut out, &mut pick, 0, 0, n);
    }
    out
}

struct Dsu {
    parent: Vec<u8>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu { parent: (0..n as u8).collect() }
    }
    fn find(&mut self, x: u8) -> u8 {
        let mut r = x;
        while self.parent[r as usize] != r {
            r = self.parent[r as usize];
        }
        let mut c = x;
        while self.parent[c as usize] != r {
            let next = self.parent[c as usize];
            self.parent[c as usize] = r;
            c = next;
        }
        r
    }
    fn union(&mut self, a: u8, b: u8) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra as usize] = rb;
        }
    }
}

fn union_edge(dsu: &mut Dsu, mask: u32) {
    let mut first = None;
    let mut m = mask;
    while m != 0 {
        let v = m.trailing_zeros() as u8;
        m &= m - 1;
        match first {
            None => first = Some(v),
            Some(f) => dsu.union(f, v),
        }
    }
}

/// Connected-spanning counts by edge number, from literal iteration over
/// every subset of the C(n, b) possible edges.
pub fn edge_subset_connected_counts(b: usize, n: usize) -> Result<Vec<BigInt>> {
    assert!(b >= 2 && n >= 1);
    let m = choose_u64(n as u64, b as u64);
    if m > 22 {
        return Err(Error::Resource(format!(
            "edge-subset brute force over 2^{m} subsets refused (limit 2^22)"
        )));
    }
    if n == 1 {
        return Ok(vec![BigInt::one()]);
    }
    let edges = edge_masks(n, b);
    let mut counts = vec![0u64; edges.len() + 1];
    let full = (1u32 << n) - 1;
    for sub in 0u32..(1u32 << edges.len()) {
        let mut cover = 0u32;
        let mut dsu = Dsu::new(n);
        let mut k = 0usize;
        let mut s = sub;
        while s != 0 {
            let e = s.trailing_zeros() as usize;
            s &= s - 1;
            cover |= edges[e];
            union_edge(&mut dsu, edges[e]);
            k += 1;
        }
        if cover != full {
            continue;
        }
        let root = dsu.find(0);
        if (1..n as u8).all(|v| dsu.find(v) == root) {
            counts[k] += 1;
        }
    }
    Ok(counts.into_iter().map(BigInt::from).collect())
}

/// The same counts by inclusion–exclusion over the component of the lowest
/// vertex: polynomial in 3ⁿ rather than exponential in C(n, b).
pub fn subset_dp_connected_counts(b: usize, n: usize) -> Result<Vec<BigInt>> {
    assert!(b >= 2 && n >= 1);
    if n > 16 {
        return Err(Error::Resource(format!(
            "subset DP over 3^{n} subset pairs refused (limit n = 16)"
        )));
    }
    let full = (1usize << n) - 1;
    // slots[s]: number of possible edges inside vertex set s.
    let slots: Vec<u64> = (0..=full)
        .map(|s| choose_u64((s as u32).count_ones() as u64, b as u64))
        .collect();
    let totals = |s: usize| -> Vec<BigInt> {
        (0..=slots[s]).map(|k| big_binomial(slots[s], k)).collect()
    };
    let mut conn: Vec<Vec<BigInt>> = vec![Vec::new(); full + 1];
    for s in 1..=full {
        if (s as u32).count_ones() == 1 {
            conn[s] = vec![BigInt::one()];
            continue;
        }
        let mut acc = totals(s);
        let low = 1usize << s.trailing_zeros();
        let rest = s & !low;
        // Enumerate proper submasks t of s that contain the lowest vertex.
        let mut sub = rest;
        loop {
            sub = sub.wrapping_sub(1) & rest;
            let t = sub | low;
            if t != s {
                let free = totals(s & !t);
                for (j, cj) in conn[t].iter().enumerate() {
                    if cj.is_zero() {
                        continue;
                    }
                    for (i, fi) in free.iter().enumerate() {
                        if j + i < acc.len() {
                            let prod = cj * fi;
                            acc[j + i] -= prod;
                        }
                    }
                }
            }
            if sub == 0 {
                break;
            }
        }
        conn[s] = acc;
    }
    Ok(std::mem::take(&mut conn[full]))
}

/// Exact counts of marked transition configurations: pairs (C, e) of a
/// connected spanning hypergraph C on `a` labeled vertices and an edge
/// e ∈ C, grouped by what adding e last would have done to the components
/// of C ∖ e. Keys are (a, k, ell) with k = |C|.
#[derive(Debug, Default, Clone)]
pub struct MarkedCounts {
    creations: BTreeMap<(usize, usize, i64), u64>,
    growths: BTreeMap<(usize, usize, i64), u64>,
    growth_absorbed: BTreeMap<(usize, usize, i64), u64>,
    tree_merges: BTreeMap<(usize, usize), u64>,
    multicyclic: BTreeMap<(usize, usize), u64>,
}

impl MarkedCounts {
    pub fn creation(&self, a: usize, k: usize, ell: i64) -> u64 {
        *self.creations.get(&(a, k, ell)).unwrap_or(&0)
    }
    pub fn growth(&self, a: usize, k: usize, ell: i64) -> u64 {
        *self.growths.get(&(a, k, ell)).unwrap_or(&0)
    }
    /// Total vertices newly absorbed over all growth configurations at key.
    pub fn growth_absorbed(&self, a: usize, k: usize, ell: i64) -> u64 {
        *self.growth_absorbed.get(&(a, k, ell)).unwrap_or(&0)
    }
    pub fn tree_merge(&self, a: usize, k: usize) -> u64 {
        *self.tree_merges.get(&(a, k)).unwrap_or(&0)
    }
    pub fn multicyclic_merge(&self, a: usize, k: usize) -> u64 {
        *self.multicyclic.get(&(a, k)).unwrap_or(&0)
    }
    pub fn creation_keys(&self) -> impl Iterator<Item = &(usize, usize, i64)> {
        self.creations.keys()
    }
    pub fn growth_keys(&self) -> impl Iterator<Item = &(usize, usize, i64)> {
        self.growths.keys()
    }
    pub fn creation_entries(&self) -> impl Iterator<Item = (&(usize, usize, i64), &u64)> {
        self.creations.iter()
    }
    pub fn growth_entries(&self) -> impl Iterator<Item = (&(usize, usize, i64), &u64)> {
        self.growths.iter()
    }
    pub fn growth_absorbed_entries(&self) -> impl Iterator<Item = (&(usize, usize, i64), &u64)> {
        self.growth_absorbed.iter()
    }
    pub fn tree_merge_entries(&self) -> impl Iterator<Item = (&(usize, usize), &u64)> {
        self.tree_merges.iter()
    }
    pub fn multicyclic_entries(&self) -> impl Iterator<Item = (&(usize, usize), &u64)> {
        self.multicyclic.iter()
    }
}

/// Enumerate marked transition configurations for all a ≤ a_max by edge
/// subsets (simple hypergraphs only — this is the simple-count side of the
/// convention comparison).
pub fn marked_transition_counts(b: usize, a_max: usize) -> Result<MarkedCounts> {
    assert!(b >= 2 && a_max >= 1);
    let slots = choose_u64(a_max as u64, b as u64);
    if slots > 20 {
        return Err(Error::Resource(format!(
            "marked-configuration brute force over 2^{slots} subsets refused (limit 2^20)"
        )));
    }
    let mut out = MarkedCounts::default();
    for a in 2..=a_max {
        let edges = edge_masks(a, b);
        if edges.is_empty() {
            continue;
        }
        let full = (1u32 << a) - 1;
        for sub in 1u32..(1u32 << edges.len()) {
            let mut cover = 0u32;
            let mut dsu = Dsu::new(a);
            let mut k = 0usize;
            let mut s = sub;
            while s != 0 {
                let e = s.trailing_zeros() as usize;
                s &= s - 1;
                cover |= edges[e];
                union_edge(&mut dsu, edges[e]);
                k += 1;
            }
            if cover != full {
                continue;
            }
            let root0 = dsu.find(0);
            if !(1..a as u8).all(|v| dsu.find(v) == root0) {
                continue;
            }
            // Connected spanning: classify each possible last edge.
            let mut s = sub;
            while s != 0 {
                let e = s.trailing_zeros() as usize;
                s &= s - 1;
                record_marked(&mut out, a, k, &edges, sub, e, b);
            }
        }
    }
    Ok(out)
}

fn record_marked(
    out: &mut MarkedCounts,
    a: usize,
    k: usize,
    edges: &[u32],
    sub: u32,
    marked: usize,
    b: usize,
) {
    let rest = sub & !(1u32 << marked);
    let mut dsu = Dsu::new(a);
    let mut edge_count = vec![0i64; a];
    let mut s = rest;
    while s != 0 {
        let e = s.trailing_zeros() as usize;
        s &= s - 1;
        union_edge(&mut dsu, edges[e]);
    }
    let mut s = rest;
    while s != 0 {
        let e = s.trailing_zeros() as usize;
        s &= s - 1;
        let v = edges[e].trailing_zeros() as u8;
        edge_count[dsu.find(v) as usize] += 1;
    }
    let mut size = vec![0i64; a];
    for v in 0..a as u8 {
        size[dsu.find(v) as usize] += 1;
    }
    // Distinct components touched by the marked edge.
    let mut touched: Vec<u8> = Vec::with_capacity(b);
    let mut m = edges[marked];
    while m != 0 {
        let v = m.trailing_zeros() as u8;
        m &= m - 1;
        let r = dsu.find(v);
        if !touched.contains(&r) {
            touched.push(r);
        }
    }
    let excesses: Vec<i64> = touched
        .iter()
        .map(|&r| edge_count[r as usize] * (b as i64 - 1) - size[r as usize])
        .collect();
    match classify(&excesses, b) {
        TransitionKind::TreeMerge => {
            *out.tree_merges.entry((a, k)).or_insert(0) += 1;
        }
        TransitionKind::Creation { ell } => {
            *out.creations.entry((a, k, ell)).or_insert(0) += 1;
        }
        TransitionKind::Growth { ell, .. } => {
            let host = touched
                .iter()
                .zip(&excesses)
                .find(|(_, &ex)| ex >= 0)
                .map(|(&r, _)| r)
                .expect("growth has a multicyclic input");
            let absorbed = a as u64 - size[host as usize] as u64;
            *out.growths.entry((a, k, ell)).or_insert(0) += 1;
            *out.growth_absorbed.entry((a, k, ell)).or_insert(0) += absorbed;
        }
        TransitionKind::MulticyclicMerge { .. } => {
            *out.multicyclic.entry((a, k)).or_insert(0) += 1;
        }
    }
}
