//! Empirical auditing of greedy runs: differentiation distributions, the
//! counting bounds they satisfy, the phase/potential trace, adversarial-run
//! claims, and the closed-form performance coefficients.

use serde::{Deserialize, Serialize};

use crate::diff::{pair_diff_count, DiffState};
use crate::error::{Error, Result};
use crate::generators::{GenParams, LabeledInstance, TestFamily};
use crate::instance::Instance;
use crate::solvers::SolveResult;

/// Default item limit for the quadratic-cost operations in this module.
pub const DEFAULT_ANALYSIS_LIMIT: usize = 4096;

const REL_EPS: f64 = 1e-9;

/// Histogram of intra-group pairs by the number of tests in a fixed test
/// set that differentiate them. `counts[t] = B_t`, `t ∈ 0..=|testset|`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistributionHistogram {
    pub counts: Vec<u64>,
    pub total: u64,
}

impl DistributionHistogram {
    /// `B_0 = 0` iff the test set differentiates every pair.
    pub fn is_valid_test_set(&self) -> bool {
        self.counts[0] == 0
    }
}

/// Exact differentiation distribution of `testset` over all intra-group
/// pairs. Quadratic in the group sizes; guarded by `limit`.
pub fn distribution(
    instance: &Instance,
    testset: &[usize],
    limit: usize,
) -> Result<DistributionHistogram> {
    if instance.n() > limit {
        return Err(Error::TooLarge(format!(
            "distribution: n = {} exceeds the quadratic-scan limit {limit}",
            instance.n()
        )));
    }
    for &t in testset {
        instance.check_test_index(t)?;
    }
    let mut counts = vec![0u64; testset.len() + 1];
    let mut total = 0u64;
    for group in instance.groups() {
        for (a, &i) in group.iter().enumerate() {
            for &j in &group[a + 1..] {
                let d = pair_diff_count(instance, testset, i, j)?;
                counts[d as usize] += 1;
                total += 1;
            }
        }
    }
    Ok(DistributionHistogram { counts, total })
}

/// Checks of the three counting bounds a size-`m_star` optimal test set
/// must satisfy: `B_1 ≤ n·log₂n`, `B_t ≤ n·log₂n·m*^{t−1}` for `t ≥ 2`,
/// and `Σ_{s≤t} B_s ≤ 2n·log₂n·m*^{t−1}` for `t ≥ 2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountingLemmaReport {
    pub b1_ok: bool,
    pub bt_ok: bool,
    pub cumulative_ok: bool,
    /// Smallest `t` at which any bound fails.
    pub first_failure: Option<usize>,
}

impl CountingLemmaReport {
    pub fn all_ok(&self) -> bool {
        self.b1_ok && self.bt_ok && self.cumulative_ok
    }
}

pub fn check_counting_lemmas(
    hist: &DistributionHistogram,
    n: usize,
    m_star: usize,
) -> CountingLemmaReport {
    let nlog = n as f64 * (n as f64).log2();
    let mut report = CountingLemmaReport {
        b1_ok: true,
        bt_ok: true,
        cumulative_ok: true,
        first_failure: None,
    };
    let fail = |report: &mut CountingLemmaReport, t: usize| {
        if report.first_failure.is_none_or(|f| t < f) {
            report.first_failure = Some(t);
        }
    };
    if hist.counts.len() > 1 && hist.counts[1] as f64 > nlog {
        report.b1_ok = false;
        fail(&mut report, 1);
    }
    let mut cumulative = hist.counts[0] + hist.counts.get(1).copied().unwrap_or(0);
    for t in 2..hist.counts.len() {
        cumulative += hist.counts[t];
        let scale = nlog * (m_star as f64).powi(t as i32 - 1);
        if hist.counts[t] as f64 > scale {
            report.bt_ok = false;
            fail(&mut report, t);
        }
        if cumulative as f64 > 2.0 * scale {
            report.cumulative_ok = false;
            fail(&mut report, t);
        }
    }
    report
}

fn check_disjoint_item_sets(instance: &Instance, s1: &[usize], s2: &[usize]) -> Result<()> {
    for &i in s1.iter().chain(s2) {
        if i >= instance.n() {
            return Err(Error::invalid(format!("item index {i} out of range")));
        }
    }
    if s1.iter().any(|i| s2.contains(i)) {
        return Err(Error::invalid("item sets must be disjoint"));
    }
    Ok(())
}

/// Is `testset` a test set of the plain item set `s` (every pair inside
/// `s` differentiated, groups ignored)?
fn covers_item_set(instance: &Instance, s: &[usize], testset: &[usize]) -> Result<bool> {
    for (a, &i) in s.iter().enumerate() {
        for &j in &s[a + 1..] {
            if pair_diff_count(instance, testset, i, j)? == 0 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Cross-pair bound for two disjoint sets each internally differentiated:
/// at most `min(|S₁|, |S₂|)` undifferentiated pairs run between them.
/// Precondition failures are errors; a failed bound is `Ok(false)`.
pub fn check_lemma3(
    instance: &Instance,
    s1: &[usize],
    s2: &[usize],
    testset: &[usize],
) -> Result<bool> {
    check_disjoint_item_sets(instance, s1, s2)?;
    if !covers_item_set(instance, s1, testset)? || !covers_item_set(instance, s2, testset)? {
        return Err(Error::invalid(
            "lemma3: testset must be a test set of both item sets",
        ));
    }
    let mut undiff = 0u64;
    for &i in s1 {
        for &j in s2 {
            if pair_diff_count(instance, testset, i, j)? == 0 {
                undiff += 1;
            }
        }
    }
    Ok(undiff <= s1.len().min(s2.len()) as u64)
}

/// Cross-pair bound for a subset `S″ ⊆ S′` against `S′∖S″`, both
/// internally differentiated: at most `|S′|·log₂|S′|` pairs between them
/// are differentiated by exactly one test.
pub fn check_lemma5(
    instance: &Instance,
    s_dd: &[usize],
    s_prime: &[usize],
    testset: &[usize],
) -> Result<bool> {
    if !s_dd.iter().all(|i| s_prime.contains(i)) {
        return Err(Error::invalid("lemma5: first set must be a subset of the second"));
    }
    let rest: Vec<usize> = s_prime.iter().copied().filter(|i| !s_dd.contains(i)).collect();
    check_disjoint_item_sets(instance, s_dd, &rest)?;
    if !covers_item_set(instance, s_dd, testset)? || !covers_item_set(instance, &rest, testset)? {
        return Err(Error::invalid(
            "lemma5: testset must be a test set of the subset and of its complement",
        ));
    }
    let mut once = 0u64;
    for &i in s_dd {
        for &j in &rest {
            if pair_diff_count(instance, testset, i, j)? == 1 {
                once += 1;
            }
        }
    }
    let sp = s_prime.len() as f64;
    Ok(once as f64 <= sp * sp.log2())
}

/// Phase thresholds and budgets of the potential analysis:
/// `#_0 = 1`, `#_1 = n·log₂n`, `#_t = 2n·log₂n·m*^{t−1}` for `2 ≤ t ≤ I`,
/// `#_{I+1} = n(n−1)/2`, with `k_t = (m*/t)·ln(t·#_t/#_{t−1})`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhaseSchedule {
    pub n: usize,
    pub m_star: usize,
    /// Number of non-final phases I; the run has I+1 phases.
    pub i_phases: usize,
    /// `thresholds[t] = #_t`, `t ∈ 0..=I+1`, kept as exact reals.
    pub thresholds: Vec<f64>,
    /// `k[t]` defined for `2 ≤ t ≤ I+1`; `None` below that.
    pub k: Vec<Option<f64>>,
}

impl PhaseSchedule {
    /// Phase of a step with the given residual measure, in `1..=I+1`.
    pub fn phase_of(&self, measure: u64) -> usize {
        let m = measure as f64;
        for t in 1..=self.i_phases {
            if m < self.thresholds[t] {
                return t;
            }
        }
        self.i_phases + 1
    }

    /// Thresholds strictly increase for all but degenerate small n.
    pub fn is_monotone(&self) -> bool {
        self.thresholds.windows(2).all(|w| w[0] < w[1])
    }
}

pub fn phase_schedule(n: usize, m_star: usize) -> Result<PhaseSchedule> {
    if m_star < 2 {
        return Err(Error::invalid("phase_schedule: m* must be >= 2"));
    }
    if n < 2 {
        return Err(Error::invalid("phase_schedule: n must be >= 2"));
    }
    let nf = n as f64;
    let mf = m_star as f64;
    let log2n = nf.log2();
    let i = (((nf - 1.0) / (4.0 * log2n)).ln() / mf.ln()).ceil();
    let i = if i < 1.0 { 1 } else { i as usize };
    let mut thresholds = vec![0.0; i + 2];
    thresholds[0] = 1.0;
    thresholds[1] = nf * log2n;
    for (t, th) in thresholds.iter_mut().enumerate().take(i + 1).skip(2) {
        *th = 2.0 * nf * log2n * mf.powi(t as i32 - 1);
    }
    thresholds[i + 1] = nf * (nf - 1.0) / 2.0;
    let mut k = vec![None; i + 2];
    for t in 2..=i + 1 {
        let tf = t as f64;
        k[t] = Some(mf / tf * (tf * thresholds[t] / thresholds[t - 1]).ln());
    }
    Ok(PhaseSchedule {
        n,
        m_star,
        i_phases: i,
        thresholds,
        k,
    })
}

/// Per-phase summary of an audited run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhaseSummary {
    pub phase: usize,
    /// |𝒯_t|: tests selected during this phase.
    pub selected: usize,
    pub k_t: Option<f64>,
    /// |𝒯_t| < k_t + 1, the budget the analysis guarantees. `None` when
    /// k_t is undefined (phase 1) or the phase is blank.
    pub within_budget: Option<bool>,
    pub blank: bool,
}

/// Phase assignment and potential trace of a greedy run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhaseTrace {
    /// Phase of each step, parallel to the run's step records.
    pub step_phase: Vec<usize>,
    /// Potential after each step, within phases t ≥ 2. `None` where the
    /// potential is undefined (phase 1, or decay base 1 − t/m* ≤ 0).
    pub potential: Vec<Option<f64>>,
    pub phases: Vec<PhaseSummary>,
    /// Potential non-increasing within every phase where it is defined.
    pub potential_monotone: bool,
}

pub fn trace_phases(result: &SolveResult, schedule: &PhaseSchedule) -> Result<PhaseTrace> {
    if let Some(first) = result.steps.first() {
        let total = schedule.n as f64 * (schedule.n as f64 - 1.0) / 2.0;
        if first.measure_before as f64 > total {
            return Err(Error::invalid(
                "trace_phases: run and schedule disagree on n",
            ));
        }
    }
    let mf = schedule.m_star as f64;
    let mut step_phase = Vec::with_capacity(result.steps.len());
    let mut potential = Vec::with_capacity(result.steps.len());
    let mut counts = vec![0usize; schedule.i_phases + 2];
    let mut monotone = true;
    let mut cur_phase = usize::MAX;
    let mut in_phase = 0usize;
    let mut prev_f: Option<f64> = None;
    for step in &result.steps {
        let t = schedule.phase_of(step.measure_before);
        if t != cur_phase {
            cur_phase = t;
            in_phase = 0;
            prev_f = None;
        }
        in_phase += 1;
        counts[t] += 1;
        step_phase.push(t);
        let f = if t >= 2 {
            let base = 1.0 - t as f64 / mf;
            if base > 0.0 {
                let k_t = schedule.k[t].unwrap();
                let shifted =
                    step.measure_after as f64 - (t as f64 - 1.0) / t as f64 * schedule.thresholds[t - 1];
                Some(shifted * base.powf(k_t - in_phase as f64))
            } else {
                None
            }
        } else {
            None
        };
        if let (Some(prev), Some(now)) = (prev_f, f) {
            if now > prev + REL_EPS * prev.abs().max(1.0) {
                monotone = false;
            }
        }
        prev_f = f;
        potential.push(f);
    }
    let phases = (1..=schedule.i_phases + 1)
        .rev()
        .map(|t| PhaseSummary {
            phase: t,
            selected: counts[t],
            k_t: schedule.k[t],
            within_budget: match (schedule.k[t], counts[t]) {
                (_, 0) | (None, _) => None,
                (Some(k), c) => Some((c as f64) < k + 1.0),
            },
            blank: counts[t] == 0,
        })
        .collect();
    Ok(PhaseTrace {
        step_phase,
        potential,
        phases,
        potential_monotone: monotone,
    })
}

/// Per-step audit of the three adversarial-run claims.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimsReport {
    /// Selected gain is no less than that of any later adversarial test
    /// in natural order (and the selected test is adversarial).
    pub claim1: Vec<bool>,
    /// Selected gain is no less than that of any unselected planted test.
    pub claim2: Vec<bool>,
    /// First-axis steps stay within `[#end_t, #begin_t]`; audited only on
    /// level instances, `None` elsewhere.
    pub claim3: Vec<Option<bool>>,
    /// `(claim, step)` of the earliest violation, if any.
    pub first_violation: Option<(u8, usize)>,
}

impl ClaimsReport {
    pub fn all_hold(&self) -> bool {
        self.first_violation.is_none()
    }
}

pub fn check_claims(labeled: &LabeledInstance, result: &SolveResult) -> Result<ClaimsReport> {
    let instance = &labeled.instance;
    // natural-order rank among the adversarial family
    let mut adv_rank = vec![usize::MAX; instance.num_tests()];
    for (pos, &a) in labeled.adversarial.iter().enumerate() {
        adv_rank[a] = pos;
    }
    let level_bounds = match labeled.params {
        GenParams::Level { q, t, .. } => {
            let n = instance.n() as f64;
            let begin = 2f64.powi((q * (t - 1)) as i32) * n;
            let end = 2.0 * 2f64.powi(q as i32 * (t as i32 - 2)) * n;
            Some((end, begin))
        }
        _ => None,
    };

    let mut state = DiffState::new(instance);
    let mut selected = vec![false; instance.num_tests()];
    let mut claim1 = Vec::with_capacity(result.steps.len());
    let mut claim2 = Vec::with_capacity(result.steps.len());
    let mut claim3 = Vec::with_capacity(result.steps.len());
    let mut first: Option<(u8, usize)> = None;
    let violate = |first: &mut Option<(u8, usize)>, claim: u8, step: usize| {
        if first.is_none() {
            *first = Some((claim, step));
        }
    };
    for (s, step) in result.steps.iter().enumerate() {
        if state.measure() != step.measure_before {
            return Err(Error::ContractViolation(
                "check_claims: run does not replay on this instance".into(),
            ));
        }
        let gain = step.gain;
        let rank = adv_rank[step.test];
        let mut c1 = rank != usize::MAX;
        let mut c2 = true;
        for t in 0..instance.num_tests() {
            if selected[t] || t == step.test {
                continue;
            }
            if adv_rank[t] != usize::MAX && adv_rank[t] > rank {
                if state.gain(instance, t)? > gain {
                    c1 = false;
                }
            } else if labeled.labels[t].family == TestFamily::Planted
                && state.gain(instance, t)? > gain
            {
                c2 = false;
            }
        }
        let c3 = level_bounds.and_then(|(end, begin)| {
            let label = &labeled.labels[step.test];
            if label.family == TestFamily::Adversarial && label.coord.axis == 1 {
                Some(gain as f64 >= end && gain as f64 <= begin)
            } else {
                None
            }
        });
        if !c1 {
            violate(&mut first, 1, s);
        }
        if !c2 {
            violate(&mut first, 2, s);
        }
        if c3 == Some(false) {
            violate(&mut first, 3, s);
        }
        claim1.push(c1);
        claim2.push(c2);
        claim3.push(c3);
        selected[step.test] = true;
        state.refine(instance, step.test)?;
    }
    Ok(ClaimsReport {
        claim1,
        claim2,
        claim3,
        first_violation: first,
    })
}

/// `φ(x) = (ln x − 1)/x`, maximized at `x = e²` with value `1/e²`.
pub fn phi(x: f64) -> Result<f64> {
    if x <= 0.0 {
        return Err(Error::invalid("phi: x must be positive"));
    }
    Ok((x.ln() - 1.0) / x)
}

pub fn harmonic(j: u32) -> f64 {
    (1..=j as u64).map(|s| 1.0 / s as f64).sum()
}

/// The closed-form performance coefficients, in units of `m*·ln n` for the
/// upper bounds and `ln n` for the lower bound.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub n: usize,
    pub m_star: usize,
    /// `1 + φ(ln n / ln m*)`, at most `1 + 1/e² = 1.13533…`.
    pub sga_coefficient: f64,
    /// The generic greedy guarantee `ln n + 1`.
    pub ich_upper: f64,
    pub h_j: Option<f64>,
    /// `1 + (1/(J+1))·(H_J/(8 ln 2) − 1)` when J is given.
    pub lower_coefficient: Option<f64>,
}

pub fn bounds(n: usize, m_star: usize, j: Option<u32>) -> Result<BoundReport> {
    if n < 2 || m_star < 2 {
        return Err(Error::invalid("bounds: need n >= 2 and m* >= 2"));
    }
    let x = (n as f64).ln() / (m_star as f64).ln();
    let sga_coefficient = 1.0 + phi(x)?.max(0.0);
    let h_j = j.map(harmonic);
    let lower_coefficient = j.map(|j| {
        1.0 + (h_j.unwrap() / (8.0 * 2f64.ln()) - 1.0) / (j as f64 + 1.0)
    });
    Ok(BoundReport {
        n,
        m_star,
        sga_coefficient,
        ich_upper: (n as f64).ln() + 1.0,
        h_j,
        lower_coefficient,
    })
}

/// Approximation ratio of a run against a known or assumed optimum size,
/// with the leading-coefficient comparisons. The asymptotic slack is not
/// modeled; small-n runs may exceed the coefficients additively.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RatioReport {
    pub size: usize,
    pub m_star: usize,
    pub ratio: f64,
    /// `1.1354·ln n`
    pub sga_bound: f64,
    /// `ln n + 1`
    pub ich_bound: f64,
    /// `2·ln n`
    pub two_ln_n: f64,
}

pub fn ratio_report(result: &SolveResult, m_star: usize, n: usize) -> Result<RatioReport> {
    if m_star < 2 {
        return Err(Error::invalid("ratio_report: m* must be >= 2"));
    }
    let ln_n = (n as f64).ln();
    Ok(RatioReport {
        size: result.size(),
        m_star,
        ratio: result.size() as f64 / m_star as f64,
        sga_bound: 1.1354 * ln_n,
        ich_bound: ln_n + 1.0,
        two_ln_n: 2.0 * ln_n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{atom, compact, level, DEFAULT_ITEM_CAP};
    use crate::solvers::{sga, TieBreak};

    #[test]
    fn distribution_single_test_two_items() {
        let inst = Instance::new(2, vec![vec![0]]).unwrap();
        let h = distribution(&inst, &[0], DEFAULT_ANALYSIS_LIMIT).unwrap();
        assert_eq!(h.counts, vec![0, 1]);
        assert_eq!(h.total, 1);
        assert!(h.is_valid_test_set());
    }

    #[test]
    fn distribution_compact_q2() {
        let g = compact(2).unwrap();
        let h = distribution(&g.instance, &[0, 1], DEFAULT_ANALYSIS_LIMIT).unwrap();
        // brute force over the 6 pairs of [4]: four pairs hit once, two twice
        assert_eq!(h.counts, vec![0, 4, 2]);
    }

    #[test]
    fn distribution_respects_limit() {
        let inst = Instance::new(8, vec![vec![0]]).unwrap();
        assert!(distribution(&inst, &[0], 4).is_err());
    }

    #[test]
    fn counting_lemmas_compact_q3() {
        let g = compact(3).unwrap();
        let h = distribution(&g.instance, &[0, 1, 2], DEFAULT_ANALYSIS_LIMIT).unwrap();
        let rep = check_counting_lemmas(&h, 8, 3);
        assert!(rep.all_ok(), "{rep:?}");
    }

    #[test]
    fn counting_lemmas_atom_planted() {
        let g = atom(3, 2, DEFAULT_ITEM_CAP).unwrap();
        let h = distribution(&g.instance, &g.planted_optimal, DEFAULT_ANALYSIS_LIMIT).unwrap();
        let rep = check_counting_lemmas(&h, g.instance.n(), g.planted_optimal.len());
        assert!(rep.all_ok(), "{rep:?}");
    }

    #[test]
    fn counting_lemmas_trivial() {
        let h = DistributionHistogram {
            counts: vec![0, 1],
            total: 1,
        };
        assert!(check_counting_lemmas(&h, 2, 2).all_ok());
    }

    #[test]
    fn lemma3_compact_split() {
        let g = compact(2).unwrap();
        let all = vec![0, 1];
        assert!(check_lemma3(&g.instance, &[0, 1], &[2, 3], &all).unwrap());
    }

    #[test]
    fn lemma3_rejects_overlap() {
        let g = compact(2).unwrap();
        assert!(check_lemma3(&g.instance, &[0, 1], &[1, 2], &[0, 1]).is_err());
    }

    #[test]
    fn lemma5_small_split() {
        let g = compact(2).unwrap();
        // S′ = {0, 1}, S″ = {0}: test 0 differentiates the cross pair once
        assert!(check_lemma5(&g.instance, &[0], &[0, 1], &[0]).unwrap());
    }

    #[test]
    fn lemma5_atom_halved_group() {
        let g = atom(2, 1, DEFAULT_ITEM_CAP).unwrap();
        let planted_first = g.planted_optimal[0];
        let group: Vec<usize> = (0..4).collect();
        let half: Vec<usize> = group
            .iter()
            .copied()
            .filter(|&i| g.instance.test(planted_first).contains(i))
            .collect();
        let all: Vec<usize> = (0..g.instance.num_tests()).collect();
        assert!(check_lemma5(&g.instance, &half, &group, &all).unwrap());
    }

    #[test]
    fn schedule_n1024_m8() {
        let s = phase_schedule(1024, 8).unwrap();
        assert_eq!(s.i_phases, 2);
        assert!(s.is_monotone());
        // defining inequality of I
        let c2 = 1024.0 * 1023.0 / 2.0;
        let base = 2.0 * 1024.0 * 10.0;
        assert!(base * 8f64.powi(1) < c2 && c2 <= base * 8f64.powi(2));
        assert_eq!(s.thresholds[3], c2);
    }

    #[test]
    fn schedule_small_n_single_prephase() {
        // C(n,2) ≤ 2n·log₂n·m* puts everything in two phases
        let s = phase_schedule(16, 2).unwrap();
        assert_eq!(s.i_phases, 1);
        assert_eq!(s.thresholds.len(), 3);
    }

    #[test]
    fn schedule_rejects_small_m() {
        assert!(phase_schedule(16, 1).is_err());
    }

    #[test]
    fn trace_atom_run() {
        let g = atom(3, 2, DEFAULT_ITEM_CAP).unwrap();
        let res = sga(&g.instance, &TieBreak::NaturalOrder).unwrap();
        let s = phase_schedule(g.instance.n(), g.planted_optimal.len()).unwrap();
        let tr = trace_phases(&res, &s).unwrap();
        assert_eq!(tr.step_phase.len(), res.steps.len());
        // phases only descend as the measure falls
        for w in tr.step_phase.windows(2) {
            assert!(w[1] <= w[0]);
        }
        assert!(tr.potential_monotone);
        for p in &tr.phases {
            if let Some(ok) = p.within_budget {
                assert!(ok, "phase {} overran its budget", p.phase);
            }
        }
    }

    #[test]
    fn claims_hold_on_level_run() {
        let g = level(2, 2, 2, DEFAULT_ITEM_CAP).unwrap();
        let res = sga(&g.instance, &TieBreak::NaturalOrder).unwrap();
        let rep = check_claims(&g, &res).unwrap();
        assert!(rep.all_hold(), "{:?}", rep.first_violation);
        assert!(rep.claim3.iter().any(|c| c.is_some()));
    }

    #[test]
    fn claims_hold_on_atom_run() {
        let g = atom(3, 2, DEFAULT_ITEM_CAP).unwrap();
        let res = sga(&g.instance, &TieBreak::NaturalOrder).unwrap();
        let rep = check_claims(&g, &res).unwrap();
        assert!(rep.claim1.iter().all(|&c| c));
        assert!(rep.claim2.iter().all(|&c| c));
    }

    #[test]
    fn phi_maximum_at_e_squared() {
        let e2 = std::f64::consts::E * std::f64::consts::E;
        assert!((phi(e2).unwrap() - 1.0 / e2).abs() < 1e-12);
        let mut best = f64::MIN;
        let mut x = 1.1;
        while x <= 100.0 {
            best = best.max(phi(x).unwrap());
            x += 1e-3;
        }
        assert!(best <= 1.0 / e2 + 1e-6);
    }

    #[test]
    fn bounds_coefficients() {
        let b = bounds(1024, 4, Some(391)).unwrap();
        assert!(b.sga_coefficient <= 1.13534);
        let lower = b.lower_coefficient.unwrap();
        assert!((1.0004609..1.00047).contains(&lower), "{lower}");
        assert!(phi(1.0).unwrap() < 0.0); // domain sanity
        assert!(phi(-1.0).is_err());
    }

    #[test]
    fn ratio_at_least_one_for_exact() {
        let g = compact(3).unwrap();
        let res = sga(&g.instance, &TieBreak::NaturalOrder).unwrap();
        let rep = ratio_report(&res, 3, 8).unwrap();
        assert!(rep.ratio >= 1.0);
        assert!(ratio_report(&res, 1, 8).is_err());
    }
}
