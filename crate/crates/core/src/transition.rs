//! Classification of the component merge performed by one new edge.
//!
//! A new edge touches m ≥ 1 distinct components with excesses ℓ₁..ℓ_m
//! (excess = edges·(b−1) − vertices, so hypertrees have excess −1). The
//! merged component has excess Σℓᵢ + (b−1) regardless of how the edge's b
//! vertex slots are distributed over the touched components: each slot
//! beyond the first either lands in a fresh component (cancelling that
//! component's −1 against the slot's +1) or revisits one (raising the
//! excess outright).

/// What one edge addition did, viewed at component granularity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TransitionKind {
    /// The merge of b distinct hypertrees: the result is again a hypertree.
    TreeMerge,
    /// A component of excess `ell ≥ 0` exists after the step but no input
    /// had that excess: at most one input was multicyclic and the merged
    /// excess strictly exceeds it.
    Creation { ell: i64 },
    /// Exactly one input was multicyclic with excess `ell` and the edge
    /// only attached hypertrees to it (or closed nothing): the excess is
    /// unchanged, the component merely swallows mass.
    Growth { ell: i64, absorbed_components: usize },
    /// Two or more multicyclic inputs merged; tracked separately because
    /// such steps end the independent life of several cyclic components.
    MulticyclicMerge { inputs: usize, ell: i64 },
}

impl TransitionKind {
    /// Excess of the component the step produced.
    pub fn result_excess(&self) -> i64 {
        match *self {
            TransitionKind::TreeMerge => -1,
            TransitionKind::Creation { ell } => ell,
            TransitionKind::Growth { ell, .. } => ell,
            TransitionKind::MulticyclicMerge { ell, .. } => ell,
        }
    }
}

/// Classify an edge addition from the excesses of the distinct components
/// it touches. `excesses` must have between 1 and b entries, each ≥ −1.
pub fn classify(excesses: &[i64], b: usize) -> TransitionKind {
    let m = excesses.len();
    assert!(b >= 2, "uniformity must be at least 2");
    assert!(m >= 1 && m <= b, "an edge touches 1..=b distinct components");
    for &e in excesses {
        assert!(e >= -1, "component excess is at least -1");
    }
    let sum: i64 = excesses.iter().sum();
    let ell_new = sum + (b as i64 - 1);
    let cyclic = excesses.iter().filter(|&&e| e >= 0).count();
    if cyclic >= 2 {
        return TransitionKind::MulticyclicMerge {
            inputs: cyclic,
            ell: ell_new,
        };
    }
    // p: largest excess a pre-existing component carries forward.
    let p = excesses.iter().copied().max().expect("m >= 1");
    assert!(ell_new >= p, "excess never decreases under a merge");
    if ell_new == -1 {
        return TransitionKind::TreeMerge;
    }
    if ell_new == p {
        TransitionKind::Growth {
            ell: ell_new,
            absorbed_components: m - 1,
        }
    } else {
        TransitionKind::Creation { ell: ell_new }
    }
}
