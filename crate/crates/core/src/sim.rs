//! Discrete-event simulation of the random edge-order process: maintain
//! components with excess under a union-find forest, classify every edge
//! addition, and record creation/growth counts, V_ℓ and V_ℓ^max per excess
//! level. Only the edge order matters for every statistic in scope, so the
//! continuous-time model reduces to a uniform random permutation prefix.

use std::collections::{BTreeMap, HashSet};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::enumeration::oracle::choose_u64;
use crate::error::{Error, Result};
use crate::transition::{classify, TransitionKind};

/// When to end a run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopRule {
    /// Add every one of the C(n,b) edges.
    AllEdges,
    /// Stop once the graph is connected and the single component's excess
    /// exceeds the given level: every event at excess ≤ L_max has then
    /// already been played out (each further edge only raises the excess).
    ConnectedAndExcessExceeds(i64),
    /// Stop after this many edges.
    EdgeBudget(u64),
}

/// Default excess window for [`StopRule::ConnectedAndExcessExceeds`].
pub const DEFAULT_L_MAX: i64 = 8;

/// What one edge addition did.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TransitionEvent {
    /// 1-based index of the edge within the run.
    pub step: u64,
    #[serde(serialize_with = "serialize_kind")]
    pub kind: TransitionKind,
    /// Excess of the component the step produced.
    pub ell_new: i64,
    /// Largest excess among the touched components (−1 for pure trees).
    pub p: i64,
    /// Vertices in the produced component.
    pub comp_size: u64,
    /// Vertices that were not previously in any multicyclic component.
    pub swallowed: u64,
}

fn serialize_kind<S: serde::Serializer>(k: &TransitionKind, s: S) -> std::result::Result<S::Ok, S::Error> {
    let name = match k {
        TransitionKind::TreeMerge => "tree-merge",
        TransitionKind::Creation { .. } => "creation",
        TransitionKind::Growth { .. } => "growth",
        TransitionKind::MulticyclicMerge { .. } => "multicyclic-merge",
    };
    s.serialize_str(name)
}

/// Statistics of one run. Maps are keyed by excess ℓ.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct RunStats {
    pub n: u64,
    pub b: usize,
    pub seed: u64,
    pub edges_added: u64,
    /// Dynamic ℓ-components: events that produced excess ℓ from below.
    pub creations: BTreeMap<i64, u64>,
    /// Static ℓ-components: creations plus growths at ℓ.
    pub statics: BTreeMap<i64, u64>,
    /// Vertex mass: component size at each creation plus swallowed mass at
    /// each growth. A merge of several multicyclic components (β-event)
    /// contributes to neither, so V[ℓ] for ℓ ≥ 1 can sit below Vmax[ℓ].
    pub v: BTreeMap<i64, u64>,
    /// Largest component observed at each excess ℓ ≥ 0, over all events.
    pub vmax: BTreeMap<i64, u64>,
    /// Multicyclic merges by resulting excess.
    pub beta_events: BTreeMap<i64, u64>,
    pub tree_merges: u64,
    /// Multicyclic components alive at the end (independent counter).
    pub multicyclic_components: u64,
    /// Components (including isolated vertices) alive at the end.
    pub components: u64,
    /// Excess of the spanning component if the run ended connected.
    pub final_excess: Option<i64>,
}

impl RunStats {
    fn count(map: &BTreeMap<i64, u64>) -> u64 {
        map.values().sum()
    }

    /// Total classified events; equals `edges_added` by construction.
    pub fn total_events(&self) -> u64 {
        Self::count(&self.creations)
            + (Self::count(&self.statics) - Self::count(&self.creations))
            + Self::count(&self.beta_events)
            + self.tree_merges
    }
}

/// The evolving process: a disjoint-set forest over n vertices with
/// per-root size/edge/excess bookkeeping and a rejection sampler over
/// unseen b-subsets.
#[derive(Debug, Clone)]
pub struct ProcessState {
    n: u64,
    b: usize,
    parent: Vec<u32>,
    size: Vec<u64>,
    edges: Vec<u64>,
    excess: Vec<i64>,
    seen: HashSet<u128>,
    edges_added: u64,
    components: u64,
    multicyclic: u64,
    sum_excess: i64,
    rng: ChaCha8Rng,
    stats: RunStats,
}

/// Pack a canonical (sorted) b-subset into a u128 key, 21 bits per vertex.
fn edge_key(edge: &[u32]) -> u128 {
    let mut key = 0u128;
    for &v in edge {
        key = (key << 21) | u128::from(v);
    }
    key
}

impl ProcessState {
    pub fn new(n: u64, b: usize, seed: u64) -> ProcessState {
        assert!(b >= 2, "uniformity must be at least 2");
        assert!(n >= b as u64, "need at least b vertices");
        assert!(n < (1 << 21), "vertex ids must fit the 21-bit edge packing");
        assert!(b <= 6, "edge packing supports b <= 6");
        let mut stats = RunStats::default();
        stats.n = n;
        stats.b = b;
        stats.seed = seed;
        ProcessState {
            n,
            b,
            parent: (0..n as u32).collect(),
            size: vec![1; n as usize],
            edges: vec![0; n as usize],
            excess: vec![-1; n as usize],
            seen: HashSet::new(),
            edges_added: 0,
            components: n,
            multicyclic: 0,
            sum_excess: -(n as i64),
            rng: ChaCha8Rng::seed_from_u64(seed),
            stats,
        }
    }

    fn find(&mut self, mut v: u32) -> u32 {
        while self.parent[v as usize] != v {
            let grand = self.parent[self.parent[v as usize] as usize];
            self.parent[v as usize] = grand;
            v = grand;
        }
        v
    }

    pub fn edges_added(&self) -> u64 {
        self.edges_added
    }

    pub fn components(&self) -> u64 {
        self.components
    }

    /// Excess of the component containing v.
    pub fn component_excess(&mut self, v: u32) -> i64 {
        let r = self.find(v);
        self.excess[r as usize]
    }

    /// Draw a uniformly random previously-unseen b-subset (canonical sorted
    /// form) and mark it seen. `None` once all C(n,b) edges are used up.
    pub fn sample_edge(&mut self) -> Option<Vec<u32>> {
        if self.edges_added >= choose_u64(self.n, self.b as u64) {
            return None;
        }
        let mut edge = vec![0u32; self.b];
        loop {
            for slot in edge.iter_mut() {
                *slot = self.rng.random_range(0..self.n) as u32;
            }
            edge.sort_unstable();
            if edge.windows(2).any(|w| w[0] == w[1]) {
                continue;
            }
            if !self.seen.contains(&edge_key(&edge)) {
                return Some(edge);
            }
        }
    }

    /// Merge the components the edge touches, classify the step, and update
    /// the run statistics. The edge must be b distinct vertices and unseen.
    pub fn add_edge(&mut self, edge: &[u32]) -> Result<TransitionEvent> {
        if edge.len() != self.b {
            return Err(Error::Domain(format!(
                "edge has {} vertices; the process is {}-uniform",
                edge.len(),
                self.b
            )));
        }
        let mut canonical = edge.to_vec();
        canonical.sort_unstable();
        if canonical.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Domain(format!("edge {canonical:?} repeats a vertex")));
        }
        if canonical.last().copied().unwrap_or(0) as u64 >= self.n {
            return Err(Error::Domain(format!(
                "edge {canonical:?} names a vertex beyond n = {}",
                self.n
            )));
        }
        if !self.seen.insert(edge_key(&canonical)) {
            return Err(Error::Domain(format!("duplicate edge {canonical:?}")));
        }

        let mut roots: Vec<u32> = canonical.iter().map(|&v| self.find(v)).collect();
        roots.sort_unstable();
        roots.dedup();
        let excesses: Vec<i64> = roots.iter().map(|&r| self.excess[r as usize]).collect();
        let kind = classify(&excesses, self.b);
        let p = excesses.iter().copied().max().expect("at least one root");
        let comp_size: u64 = roots.iter().map(|&r| self.size[r as usize]).sum();
        let multicyclic_mass: u64 = roots
            .iter()
            .filter(|&&r| self.excess[r as usize] >= 0)
            .map(|&r| self.size[r as usize])
            .sum();
        let swallowed = comp_size - multicyclic_mass;
        let total_edges: u64 = roots.iter().map(|&r| self.edges[r as usize]).sum::<u64>() + 1;

        // Union all roots into the largest.
        let new_root = *roots
            .iter()
            .max_by_key(|&&r| self.size[r as usize])
            .expect("at least one root");
        for &r in &roots {
            if r != new_root {
                self.parent[r as usize] = new_root;
            }
        }
        let ell_new = kind.result_excess();
        self.size[new_root as usize] = comp_size;
        self.edges[new_root as usize] = total_edges;
        self.excess[new_root as usize] = ell_new;
        self.components -= roots.len() as u64 - 1;
        self.sum_excess += self.b as i64 - 1;
        self.edges_added += 1;
        self.stats.edges_added += 1;

        match kind {
            TransitionKind::TreeMerge => {
                self.stats.tree_merges += 1;
            }
            TransitionKind::Creation { ell } => {
                *self.stats.creations.entry(ell).or_insert(0) += 1;
                *self.stats.statics.entry(ell).or_insert(0) += 1;
                *self.stats.v.entry(ell).or_insert(0) += comp_size;
                if p == -1 {
                    self.multicyclic += 1;
                }
            }
            TransitionKind::Growth { ell, .. } => {
                *self.stats.statics.entry(ell).or_insert(0) += 1;
                *self.stats.v.entry(ell).or_insert(0) += swallowed;
            }
            TransitionKind::MulticyclicMerge { inputs, ell } => {
                *self.stats.beta_events.entry(ell).or_insert(0) += 1;
                self.multicyclic -= inputs as u64 - 1;
            }
        }
        if ell_new >= 0 {
            let slot = self.stats.vmax.entry(ell_new).or_insert(0);
            *slot = (*slot).max(comp_size);
        }

        Ok(TransitionEvent {
            step: self.edges_added,
            kind,
            ell_new,
            p,
            comp_size,
            swallowed,
        })
    }

    fn stop_satisfied(&mut self, stop: StopRule) -> bool {
        match stop {
            StopRule::AllEdges => self.edges_added >= choose_u64(self.n, self.b as u64),
            StopRule::ConnectedAndExcessExceeds(l_max) => {
                if self.components != 1 {
                    return false;
                }
                let root = self.find(0);
                self.excess[root as usize] > l_max
            }
            StopRule::EdgeBudget(m_max) => self.edges_added >= m_max,
        }
    }

    fn finish(mut self) -> RunStats {
        self.stats.multicyclic_components = self.multicyclic;
        self.stats.components = self.components;
        self.stats.final_excess = if self.components == 1 {
            let r = self.find(0);
            Some(self.excess[r as usize])
        } else {
            None
        };
        self.stats
    }

    /// Full recount of every invariant from raw state. O(n); used by the
    /// checked runner and tests.
    pub fn verify_invariants(&mut self) -> Result<()> {
        let mut roots: Vec<u32> = (0..self.n as u32).map(|v| self.find(v)).collect();
        roots.sort_unstable();
        roots.dedup();
        if roots.len() as u64 != self.components {
            return Err(Error::Domain(format!(
                "component counter {} vs recount {}",
                self.components,
                roots.len()
            )));
        }
        let mut sum_excess = 0i64;
        let mut total_size = 0u64;
        let mut total_edges = 0u64;
        let mut multicyclic = 0u64;
        for &r in &roots {
            let (a, k, ell) = (
                self.size[r as usize],
                self.edges[r as usize],
                self.excess[r as usize],
            );
            if ell != (k * (self.b as u64 - 1)) as i64 - a as i64 || ell < -1 {
                return Err(Error::Domain(format!(
                    "root {r}: excess {ell} != k(b-1)-a with k={k}, a={a}"
                )));
            }
            sum_excess += ell;
            total_size += a;
            total_edges += k;
            if ell >= 0 {
                multicyclic += 1;
            }
        }
        let m = self.edges_added;
        if sum_excess != (m * (self.b as u64 - 1)) as i64 - self.n as i64 {
            return Err(Error::Domain(format!(
                "excess bookkeeping: sum {} vs M(b-1)-n = {}",
                sum_excess,
                (m * (self.b as u64 - 1)) as i64 - self.n as i64
            )));
        }
        if sum_excess != self.sum_excess
            || total_size != self.n
            || total_edges != m
            || multicyclic != self.multicyclic
            || self.seen.len() as u64 != m
            || self.stats.total_events() != m
        {
            return Err(Error::Domain(format!(
                "cached totals drifted at step {m} (sizes {total_size}, edges {total_edges}, \
                 multicyclic {} vs {multicyclic}, seen {})",
                self.multicyclic,
                self.seen.len()
            )));
        }
        for (ell, &c) in &self.stats.creations {
            if self.stats.statics.get(ell).copied().unwrap_or(0) < c {
                return Err(Error::Domain(format!("statics[{ell}] below creations")));
            }
        }
        for &v in self.stats.v.values() {
            if v > self.n {
                return Err(Error::Domain("V mass exceeds n".into()));
            }
        }
        Ok(())
    }
}

/// Run the process to the stop rule and return its statistics.
pub fn run_process(n: u64, b: usize, seed: u64, stop: StopRule) -> RunStats {
    let mut state = ProcessState::new(n, b, seed);
    while !state.stop_satisfied(stop) {
        match state.sample_edge() {
            Some(edge) => {
                state.add_edge(&edge).expect("sampled edges are unseen");
            }
            None => break,
        }
    }
    state.finish()
}

/// As [`run_process`], but re-verifies every invariant after every step and
/// also returns the full event log.
pub fn run_process_checked(
    n: u64,
    b: usize,
    seed: u64,
    stop: StopRule,
) -> Result<(RunStats, Vec<TransitionEvent>)> {
    let mut state = ProcessState::new(n, b, seed);
    let mut log = Vec::new();
    while !state.stop_satisfied(stop) {
        match state.sample_edge() {
            Some(edge) => {
                let ev = state.add_edge(&edge)?;
                if ev.ell_new < ev.p || (matches!(ev.kind, TransitionKind::Creation { .. }) && ev.ell_new <= ev.p) {
                    return Err(Error::Domain(format!("merge law violated at {ev:?}")));
                }
                log.push(ev);
                state.verify_invariants()?;
            }
            None => break,
        }
    }
    Ok((state.finish(), log))
}

/// Replay an explicit edge order (exhaustive micro mode). Errors on
/// duplicate or malformed edges.
pub fn replay_order(n: u64, b: usize, order: &[Vec<u32>]) -> Result<RunStats> {
    let mut state = ProcessState::new(n, b, 0);
    for edge in order {
        state.add_edge(edge)?;
    }
    Ok(state.finish())
}

/// Mean / sample variance / standard error of one statistic.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct SummaryStat {
    pub mean: f64,
    pub variance: f64,
    pub std_error: f64,
}

/// Per-ℓ aggregates over many runs.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct MonteCarloSummary {
    pub n: u64,
    pub b: usize,
    pub reps: u64,
    pub master_seed: u64,
    pub creations: BTreeMap<i64, SummaryStat>,
    pub statics: BTreeMap<i64, SummaryStat>,
    pub v: BTreeMap<i64, SummaryStat>,
    pub vmax: BTreeMap<i64, SummaryStat>,
    pub beta_events: BTreeMap<i64, SummaryStat>,
}

/// Per-rep seed: a splitmix64 finalizer over (master_seed, rep).
pub fn rep_seed(master_seed: u64, rep: u64) -> u64 {
    let mut z = master_seed ^ (rep.wrapping_add(1)).wrapping_mul(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn summarize(values: &mut dyn Iterator<Item = f64>, reps: u64) -> SummaryStat {
    // Welford's online mean/variance in fixed (rep-index) order.
    let mut mean = 0.0;
    let mut m2 = 0.0;
    let mut count = 0u64;
    for x in values {
        count += 1;
        let d = x - mean;
        mean += d / count as f64;
        m2 += d * (x - mean);
    }
    assert_eq!(count, reps);
    let variance = if reps > 1 { m2 / (reps as f64 - 1.0) } else { 0.0 };
    SummaryStat {
        mean,
        variance,
        std_error: (variance / reps as f64).sqrt(),
    }
}

fn aggregate_maps(
    runs: &[RunStats],
    pick: impl Fn(&RunStats) -> &BTreeMap<i64, u64>,
) -> BTreeMap<i64, SummaryStat> {
    let mut keys: Vec<i64> = Vec::new();
    for r in runs {
        keys.extend(pick(r).keys().copied());
    }
    keys.sort_unstable();
    keys.dedup();
    keys.into_iter()
        .map(|ell| {
            let mut vals = runs
                .iter()
                .map(|r| pick(r).get(&ell).copied().unwrap_or(0) as f64);
            (ell, summarize(&mut vals, runs.len() as u64))
        })
        .collect()
}

/// Run `reps` independent processes (in parallel) and aggregate. The result
/// is a deterministic function of the arguments alone: per-rep seeds are
/// derived from the master seed, and the fold runs in rep order regardless
/// of thread count.
pub fn monte_carlo(
    n: u64,
    b: usize,
    reps: u64,
    master_seed: u64,
    stop: StopRule,
) -> MonteCarloSummary {
    assert!(reps >= 1);
    use rayon::prelude::*;
    let runs: Vec<RunStats> = (0..reps)
        .into_par_iter()
        .map(|rep| run_process(n, b, rep_seed(master_seed, rep), stop))
        .collect();
    MonteCarloSummary {
        n,
        b,
        reps,
        master_seed,
        creations: aggregate_maps(&runs, |r| &r.creations),
        statics: aggregate_maps(&runs, |r| &r.statics),
        v: aggregate_maps(&runs, |r| &r.v),
        vmax: aggregate_maps(&runs, |r| &r.vmax),
        beta_events: aggregate_maps(&runs, |r| &r.beta_events),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_endgame_is_deterministic() {
        for seed in 0..20 {
            let stats = run_process(3, 2, seed, StopRule::AllEdges);
            assert_eq!(stats.creations.get(&0), Some(&1));
            assert_eq!(stats.statics.get(&0), Some(&1));
            assert_eq!(stats.v.get(&0), Some(&3));
            assert_eq!(stats.tree_merges, 2);
            assert_eq!(stats.edges_added, 3);
            assert_eq!(stats.final_excess, Some(0));
        }
    }

    #[test]
    fn single_edge_exhausts_the_smallest_process() {
        let mut state = ProcessState::new(3, 3, 7);
        let e = state.sample_edge().expect("one edge available");
        assert_eq!(e, vec![0, 1, 2]);
        state.add_edge(&e).unwrap();
        assert!(state.sample_edge().is_none());
    }

    #[test]
    fn duplicate_and_malformed_edges_are_usage_errors() {
        let mut state = ProcessState::new(5, 2, 1);
        state.add_edge(&[1, 0]).unwrap();
        assert!(matches!(state.add_edge(&[0, 1]), Err(Error::Domain(_))));
        assert!(matches!(state.add_edge(&[2, 2]), Err(Error::Domain(_))));
        assert!(matches!(state.add_edge(&[0, 9]), Err(Error::Domain(_))));
        assert!(matches!(state.add_edge(&[0, 1, 2]), Err(Error::Domain(_))));
    }

    #[test]
    fn sampling_is_without_replacement_and_deterministic() {
        let mut a = ProcessState::new(40, 3, 99);
        let mut b = ProcessState::new(40, 3, 99);
        let mut seen = HashSet::new();
        for _ in 0..2000 {
            let ea = a.sample_edge().unwrap();
            let eb = b.sample_edge().unwrap();
            assert_eq!(ea, eb);
            assert!(seen.insert(ea.clone()), "resampled {ea:?}");
            assert_eq!(ea.len(), 3);
            a.add_edge(&ea).unwrap();
            b.add_edge(&eb).unwrap();
        }
    }

    #[test]
    fn checked_runs_hold_every_invariant() {
        for (n, b, seed) in [(60u64, 2usize, 5u64), (61, 3, 6), (62, 4, 7)] {
            let (stats, log) = run_process_checked(
                n,
                b,
                seed,
                StopRule::ConnectedAndExcessExceeds(DEFAULT_L_MAX),
            )
            .unwrap();
            assert_eq!(stats.total_events(), stats.edges_added);
            assert_eq!(log.len() as u64, stats.edges_added);
            // The run ended connected with excess beyond the window.
            assert_eq!(stats.components, 1);
            assert!(stats.final_excess.unwrap() > DEFAULT_L_MAX);
            // Every ℓ ≤ L_max saw exactly one creation in a connected run
            // ending above the window... not guaranteed per ℓ, but the level
            // the final excess passed through via creations is recorded:
            assert!(!stats.creations.is_empty());
        }
    }

    #[test]
    fn edge_budget_and_replay_agree_with_the_sampler() {
        let n = 50;
        let (stats, log) = run_process_checked(n, 3, 123, StopRule::EdgeBudget(40)).unwrap();
        assert_eq!(stats.edges_added, 40);
        // Replaying the logged order through fresh state reproduces stats
        // up to the seed field (replay fixes seed 0).
        let mut state = ProcessState::new(n, 3, 123);
        let mut edges = Vec::new();
        for _ in 0..40 {
            let e = state.sample_edge().unwrap();
            state.add_edge(&e).unwrap();
            edges.push(e);
        }
        let mut replayed = replay_order(n, 3, &edges).unwrap();
        replayed.seed = stats.seed;
        assert_eq!(replayed, stats);
        assert_eq!(log.len(), 40);
    }

    #[test]
    fn runs_are_bit_identical_across_thread_counts() {
        let summary = |threads: usize| {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap();
            pool.install(|| {
                monte_carlo(200, 3, 16, 42, StopRule::ConnectedAndExcessExceeds(5))
            })
        };
        let one = summary(1);
        let eight = summary(8);
        assert_eq!(one, eight);
    }

    #[test]
    fn micro_monte_carlo_converges_to_the_exact_expectation() {
        // n=4, b=2: E[creations at ℓ=0] = 1 exactly (micro oracle); a crude
        // Monte Carlo should land within 4 standard errors.
        let s = monte_carlo(4, 2, 4000, 7, StopRule::AllEdges);
        let c0 = s.creations[&0];
        assert!(
            (c0.mean - 1.0).abs() < 4.0 * c0.std_error.max(1e-3),
            "mean {} se {}",
            c0.mean,
            c0.std_error
        );
        // All 6 edges always arrive: total events constant.
        assert_eq!(s.reps, 4000);
    }

    #[test]
    fn growth_and_merge_bookkeeping_on_a_forced_order() {
        // b=2, n=8: build two disjoint triangles (two ℓ=0 creations), grow
        // one by a pendant vertex, then bridge the two unicyclic components
        // (a β-event at ℓ=1).
        let order: Vec<Vec<u32>> = vec![
            vec![0, 1],
            vec![1, 2],
            vec![0, 2], // creation −1→0, comp size 3
            vec![3, 4],
            vec![4, 5],
            vec![3, 5], // creation −1→0, comp size 3
            vec![0, 6], // growth at 0, swallows vertex 6
            vec![2, 3], // multicyclic merge 0⊕0 → ℓ=1, size 7
        ];
        let stats = replay_order(8, 2, &order).unwrap();
        assert_eq!(stats.creations.get(&0), Some(&2));
        assert_eq!(stats.statics.get(&0), Some(&3));
        assert_eq!(stats.v.get(&0), Some(&7)); // 3 + 3 + 1
        assert_eq!(stats.vmax.get(&0), Some(&4));
        assert_eq!(stats.beta_events.get(&1), Some(&1));
        assert_eq!(stats.vmax.get(&1), Some(&7));
        assert_eq!(stats.v.get(&1), None); // β-events add no V mass
        assert_eq!(stats.multicyclic_components, 1);
        assert_eq!(stats.components, 2); // vertex 7 never touched
    }

    #[test]
    #[ignore = "diagnostic: Monte Carlo vs analytic unicyclic sums at n=3000"]
    fn probe_unicyclic_against_monte_carlo() {
        let s = monte_carlo(3000, 3, 300, 1729, StopRule::ConnectedAndExcessExceeds(8));
        let exact = crate::expectation::unicyclic_alpha_sums(3000, 3).unwrap();
        for (name, got, want) in [
            ("creations0", &s.creations[&0], exact.creations),
            ("statics0", &s.statics[&0], exact.statics),
            ("v0", &s.v[&0], exact.v0_mass),
        ] {
            println!(
                "{name}: mc {} se {} analytic {} (z = {:+.2})",
                got.mean,
                got.std_error,
                want,
                (got.mean - want) / got.std_error
            );
        }
    }

    #[test]
    #[ignore = "diagnostic: measured ℓ=8 creations vs the λ-surrogate pipeline"]
    fn probe_ell8_creations_against_monte_carlo() {
        let s = monte_carlo(10_000, 3, 300, 1729, StopRule::ConnectedAndExcessExceeds(8));
        let pipeline = crate::expectation::expected_ell_creations(10_000, 3, 8).unwrap();
        let got = &s.creations[&8];
        println!(
            "creations[8] at n=1e4: mc {} se {} pipeline {}",
            got.mean, got.std_error, pipeline.value
        );
        for ell in 1..=7i64 {
            if let Some(st) = s.creations.get(&ell) {
                println!("  creations[{ell}]: mc {} se {}", st.mean, st.std_error);
            }
        }
    }

    #[test]
    fn rep_seeds_spread() {
        let s: HashSet<u64> = (0..1000).map(|r| rep_seed(1729, r)).collect();
        assert_eq!(s.len(), 1000);
        assert_ne!(rep_seed(1, 0), rep_seed(2, 0));
    }
}
