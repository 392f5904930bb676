use serde::{Deserialize, Serialize};

use crate::diff::DiffState;
use crate::error::{Error, Result};
use crate::instance::Instance;

/// Deterministic tie-breaking among equally good candidate tests.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TieBreak {
    /// Lowest test index wins.
    LowestIndex,
    /// Instance test order (generators list the adversarial family first, in
    /// its natural order, so this realizes the "could return" runs).
    NaturalOrder,
    /// Explicit priority list; tests not listed rank after listed ones, by
    /// index.
    Priority(Vec<usize>),
}

impl Default for TieBreak {
    fn default() -> Self {
        TieBreak::NaturalOrder
    }
}

impl TieBreak {
    /// Rank of a test; lower rank wins a tie.
    pub(crate) fn rank(&self, test: usize, num_tests: usize) -> usize {
        match self {
            TieBreak::LowestIndex | TieBreak::NaturalOrder => test,
            TieBreak::Priority(order) => order
                .iter()
                .position(|&t| t == test)
                .unwrap_or(num_tests + test),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            TieBreak::LowestIndex => "lowest-index",
            TieBreak::NaturalOrder => "natural",
            TieBreak::Priority(_) => "priority",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    Sga,
    Ich,
    Exact,
    ScGreedy,
}

impl std::fmt::Display for Algorithm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Algorithm::Sga => "sga",
            Algorithm::Ich => "ich",
            Algorithm::Exact => "exact",
            Algorithm::ScGreedy => "sc-greedy",
        };
        f.write_str(s)
    }
}

/// Per-step audit record of a solver run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepRecord {
    pub test: usize,
    pub gain: u64,
    pub measure_before: u64,
    pub measure_after: u64,
    /// How many candidates were tied for best when this test was chosen.
    pub tied: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveResult {
    pub algorithm: Algorithm,
    pub selected: Vec<usize>,
    pub steps: Vec<StepRecord>,
    pub final_measure: u64,
}

impl SolveResult {
    pub fn size(&self) -> usize {
        self.selected.len()
    }
}

fn check_feasible(instance: &Instance) -> Result<()> {
    let mut state = DiffState::new(instance);
    for t in 0..instance.num_tests() {
        state.refine(instance, t)?;
    }
    if let Some((group, i, j)) = state.undifferentiated_pair() {
        return Err(Error::Infeasible { group, i, j });
    }
    Ok(())
}

/// Setcover greedy algorithm: repeatedly select an unselected test of maximum
/// differentiation measure w.r.t. the partial test set (equivalently, minimum
/// resulting measure), until the measure reaches zero.
pub fn sga(instance: &Instance, tiebreak: &TieBreak) -> Result<SolveResult> {
    check_feasible(instance)?;
    let m = instance.num_tests();
    let mut state = DiffState::new(instance);
    let mut unselected: Vec<bool> = vec![true; m];
    let mut steps = Vec::new();
    while state.measure() > 0 {
        let mut best_gain = 0u64;
        let mut best: Option<usize> = None;
        let mut tied = 0usize;
        for t in 0..m {
            if !unselected[t] {
                continue;
            }
            let g = state.gain(instance, t)?;
            if g == 0 {
                continue;
            }
            if g > best_gain {
                best_gain = g;
                best = Some(t);
                tied = 1;
            } else if g == best_gain {
                tied += 1;
                let b = best.unwrap();
                if tiebreak.rank(t, m) < tiebreak.rank(b, m) {
                    best = Some(t);
                }
            }
        }
        let chosen = best.expect("feasible instance must offer a positive-gain test");
        let measure_before = state.measure();
        let gain = state.refine(instance, chosen)?;
        debug_assert_eq!(gain, best_gain);
        unselected[chosen] = false;
        steps.push(StepRecord {
            test: chosen,
            gain,
            measure_before,
            measure_after: state.measure(),
            tied,
        });
    }
    Ok(SolveResult {
        algorithm: Algorithm::Sga,
        selected: steps.iter().map(|s| s.test).collect(),
        steps,
        final_measure: state.measure(),
    })
}

/// Information content heuristic: at each step select the unselected test
/// minimizing the entropy functional `E(𝒯̄ ∪ {T}) = Σ_C |C| log₂ |C|`.
/// Stops when `E` (equivalently the measure) reaches zero.
pub fn ich(instance: &Instance, tiebreak: &TieBreak) -> Result<SolveResult> {
    const REL_EPS: f64 = 1e-9;
    check_feasible(instance)?;
    let m = instance.num_tests();
    let mut state = DiffState::new(instance);
    let mut unselected: Vec<bool> = vec![true; m];
    let mut steps = Vec::new();
    while state.measure() > 0 {
        let current = state.entropy();
        let mut best_e = f64::INFINITY;
        let mut best: Option<usize> = None;
        let mut tied = 0usize;
        for t in 0..m {
            if !unselected[t] {
                continue;
            }
            let e = state.entropy_after(instance, t)?;
            if e >= current - REL_EPS * current.max(1.0) {
                // does not split anything; never useful
                continue;
            }
            if best.is_none() {
                best_e = e;
                best = Some(t);
                tied = 1;
                continue;
            }
            let tol = REL_EPS * best_e.abs().max(1.0);
            if e < best_e - tol {
                best_e = e;
                best = Some(t);
                tied = 1;
            } else if e <= best_e + tol {
                tied += 1;
                let b = best.unwrap();
                if tiebreak.rank(t, m) < tiebreak.rank(b, m) {
                    best = Some(t);
                }
            }
        }
        let chosen = best.expect("feasible instance must offer an entropy-reducing test");
        let measure_before = state.measure();
        let gain = state.refine(instance, chosen)?;
        unselected[chosen] = false;
        steps.push(StepRecord {
            test: chosen,
            gain,
            measure_before,
            measure_after: state.measure(),
            tied,
        });
    }
    Ok(SolveResult {
        algorithm: Algorithm::Ich,
        selected: steps.iter().map(|s| s.test).collect(),
        steps,
        final_measure: state.measure(),
    })
}

/// Exact minimum test set by iterative deepening over the cardinality,
/// starting from the Fact 4 lower bound (per group) with gain-based
/// admissible pruning. Intended for small instances; returns `None` when the
/// budget is exhausted without finding a test set.
pub fn exact(instance: &Instance, budget: Option<usize>) -> Result<Option<SolveResult>> {
    check_feasible(instance)?;
    let budget = budget.unwrap_or_else(|| instance.n().saturating_sub(1).max(1));
    let lower = instance
        .groups()
        .iter()
        .map(|g| (g.len() as f64).log2().ceil() as usize)
        .max()
        .unwrap_or(0);
    let state = DiffState::new(instance);
    if state.measure() == 0 {
        return Ok(Some(SolveResult {
            algorithm: Algorithm::Exact,
            selected: vec![],
            steps: vec![],
            final_measure: 0,
        }));
    }
    for depth in lower.max(1)..=budget {
        let mut chosen = Vec::new();
        if dfs(instance, &state, 0, depth, &mut chosen)? {
            // Replay to produce the per-step audit trail.
            let mut replay = DiffState::new(instance);
            let mut steps = Vec::new();
            for &t in &chosen {
                let before = replay.measure();
                let gain = replay.refine(instance, t)?;
                steps.push(StepRecord {
                    test: t,
                    gain,
                    measure_before: before,
                    measure_after: replay.measure(),
                    tied: 1,
                });
            }
            debug_assert_eq!(replay.measure(), 0);
            return Ok(Some(SolveResult {
                algorithm: Algorithm::Exact,
                selected: chosen,
                steps,
                final_measure: 0,
            }));
        }
    }
    Ok(None)
}

fn dfs(
    instance: &Instance,
    state: &DiffState,
    min_index: usize,
    depth_left: usize,
    chosen: &mut Vec<usize>,
) -> Result<bool> {
    if state.measure() == 0 {
        return Ok(true);
    }
    if depth_left == 0 {
        return Ok(false);
    }
    // Candidates are taken in increasing index order so each subset is
    // visited once; zero-gain tests stay zero-gain forever and are skipped.
    let mut cands: Vec<(u64, usize)> = Vec::new();
    let mut max_gain = 0u64;
    for t in min_index..instance.num_tests() {
        let g = state.gain(instance, t)?;
        if g > 0 {
            max_gain = max_gain.max(g);
            cands.push((g, t));
        }
    }
    if max_gain == 0 || state.measure() > max_gain * depth_left as u64 {
        return Ok(false);
    }
    // Branch on high-gain tests first.
    cands.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
    for (_, t) in cands {
        let mut next = state.clone();
        next.refine(instance, t)?;
        chosen.push(t);
        if dfs(instance, &next, t + 1, depth_left - 1, chosen)? {
            return Ok(true);
        }
        chosen.pop();
    }
    Ok(false)
}
