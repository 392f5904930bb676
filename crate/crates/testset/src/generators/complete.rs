use super::level::{build_level_tests, level_dims};
use super::{factorial, sc_adversarial, Coord, GenParams, LabeledInstance, TestFamily, TestLabel};
use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::setcover::greedy_setcover;
use crate::solvers::TieBreak;

struct Entry {
    set: BitSet,
    label: TestLabel,
}

/// Complete instance (§ the construction's last stage): the universe is
/// `S₀ ∪ S₁ ∪ … ∪ S_J`, where `S₀` embeds the adversarial set cover
/// instance as 2-item groups `{e_p, f_p}` and each `S_t` is a level-t
/// universe of `N = J!·2^{q(J+1)}` points.
///
/// The level families are modified by two operations before assembly:
///
/// * Enlargement — `𝒯′_{t,1}` tests are merged in disjoint-group pairs so
///   `|𝒯′_{t,1}| = qM*/(8t)` and each test's measure doubles. Pairs are
///   taken along the `y` axis when `2^{q−2} ≥ 2`, otherwise along `z`; for
///   the one parameter corner with a single `(y, z)` block (q = 2, t = J)
///   no disjoint partner exists, so half the tests are kept single and the
///   other half joins the merge pool.
/// * Merging — remaining `𝒯′_{t,i}`, `i ≥ 2`, tests are folded one-by-one
///   into `𝒯′_{s,1}`, `s < t`, by decreasing `s` and natural order,
///   overflowing into the `𝒯′₀` tests when the level receivers run out.
///
/// The planted optimum is the family of level-wise unions
/// `T*_{0,r} ∪ … ∪ T*_{J,r}` of size `M* = J!·2^q`, and the adversarial
/// family is `𝒯′_{J,1}, …, 𝒯′_{1,1}, 𝒯′₀` with
/// `|𝒯′| = |𝒯′₀| + (qM*/8)·H_J` exactly.
pub fn complete(q: u32, j: u32, cap: usize) -> Result<LabeledInstance> {
    if j < 2 {
        return Err(Error::invalid("complete: J must be >= 2"));
    }
    // Merging feasibility: 2(1 − 1/t) ≤ H_{t−1} for 2 ≤ t ≤ J up to the
    // degenerate corner handled by the 𝒯′₀ overflow.
    for t in 2..=j {
        let h: f64 = (1..t).map(|s| 1.0 / s as f64).sum();
        if 2.0 * (1.0 - 1.0 / t as f64) > h + 1.0 + 1e-9 {
            return Err(Error::ContractViolation(format!(
                "complete: merging infeasible at t = {t}"
            )));
        }
    }
    let m_star = (factorial(j) << q) as usize;
    let dims: Vec<_> = (1..=j)
        .map(|t| level_dims(q, j, t, cap))
        .collect::<Result<Vec<_>>>()?;
    let n_level = dims[0].n; // N, identical across levels
    let n_total = 2 * n_level + j as usize * n_level;
    if n_total > cap {
        return Err(Error::TooLarge(format!(
            "complete: n = (J+2)N = {n_total} exceeds the item cap {cap}"
        )));
    }

    // ---- S₀: embedded adversarial set cover, groups {e_p, f_p} = {2p, 2p+1}
    let sc = sc_adversarial(n_level as u64, m_star as u64)?;
    let greedy = greedy_setcover(&sc, &TieBreak::LowestIndex)?;
    let lower = (m_star as f64 - 1.0) * ((n_level as f64).ln() - (m_star as f64).ln())
        - m_star as f64;
    if (greedy.size() as f64) < lower {
        return Err(Error::ContractViolation(format!(
            "complete: embedded greedy cover size {} below the bound {lower:.2}",
            greedy.size()
        )));
    }
    let mut groups: Vec<Vec<usize>> = (0..n_level).map(|p| vec![2 * p, 2 * p + 1]).collect();
    let t0_entries: Vec<Entry> = greedy
        .selected
        .iter()
        .enumerate()
        .map(|(pos, &s)| Entry {
            set: BitSet::from_indices(n_total, sc.subsets[s].iter().map(|p| 2 * p)),
            label: TestLabel::new(
                TestFamily::Adversarial,
                Coord {
                    level: 0,
                    axis: 0,
                    block: pos as u32 + 1,
                    bit: 0,
                    clone: 0,
                },
            ),
        })
        .collect();
    let block_sets: Vec<BitSet> = sc
        .planted_cover
        .as_ref()
        .unwrap()
        .iter()
        .map(|&b| BitSet::from_indices(n_total, sc.subsets[b].iter().map(|p| 2 * p)))
        .collect();

    // ---- levels: build, enlarge, collect merge pools
    let mut enlarged_per_level: Vec<Vec<Entry>> = Vec::new(); // index t-1
    let mut pool_per_level: Vec<Vec<Entry>> = Vec::new();
    let mut planted_per_level: Vec<Vec<Entry>> = Vec::new();
    for (ti, d) in dims.iter().enumerate() {
        let t = ti + 1;
        let base = 2 * n_level + ti * n_level;
        let (tests, labels, level_groups, num_adv) =
            build_level_tests(d, base, n_total, t as u32);
        groups.extend(level_groups);
        let mut entries: Vec<Option<Entry>> = tests
            .into_iter()
            .zip(labels)
            .map(|(set, label)| Some(Entry { set, label }))
            .collect();
        // 𝒯′_{t,1} originals occupy the first y·q·z adversarial slots.
        let axis1 = d.y_count * d.q * d.z_count;
        let originals: Vec<Entry> = (0..axis1).map(|i| entries[i].take().unwrap()).collect();
        let (enlarged, leftovers) = enlarge(originals, d.y_count, d.q, d.z_count)?;
        // target after enlargement: |𝒯′_{t,1}| = qM*/(8t)
        let expected = q as usize * m_star / (8 * t);
        if 2 * enlarged.len() + leftovers.len() != 2 * expected {
            return Err(Error::ContractViolation(format!(
                "complete: |𝒯′_{{{t},1}}| bookkeeping broken at level {t}"
            )));
        }
        let mut pool: Vec<Entry> = Vec::new();
        let mut keep: Vec<Entry> = enlarged;
        // Degenerate corner: singles — first half kept, second half pooled.
        let mut singles = leftovers;
        while keep.len() < expected {
            keep.push(singles.remove(0));
        }
        pool.extend(singles);
        pool.extend(
            (axis1..num_adv).map(|i| entries[i].take().unwrap()),
        );
        enlarged_per_level.push(keep);
        pool_per_level.push(pool);
        planted_per_level.push(
            (num_adv..entries.len())
                .map(|i| entries[i].take().unwrap())
                .collect(),
        );
    }

    // ---- assemble 𝒯′ in selection-intent order: levels J..1, then 𝒯′₀
    let mut adv_entries: Vec<Entry> = Vec::new();
    let mut level_start = vec![0usize; j as usize + 1]; // start of level t's block
    for t in (1..=j as usize).rev() {
        level_start[t] = adv_entries.len();
        adv_entries.extend(enlarged_per_level[t - 1].drain(..));
    }
    let t0_start = adv_entries.len();
    adv_entries.extend(t0_entries);
    let _ = t0_start;

    // ---- merging: pools of level t fold into everything after t's block
    for t in (2..=j as usize).rev() {
        let pool = std::mem::take(&mut pool_per_level[t - 1]);
        let receivers_from = level_start[t - 1];
        if pool.len() > adv_entries.len() - receivers_from {
            return Err(Error::ContractViolation(format!(
                "complete: merge pool of level {t} exceeds available receivers"
            )));
        }
        for (offset, comp) in pool.into_iter().enumerate() {
            let recv = &mut adv_entries[receivers_from + offset];
            recv.set.union_with(&comp.set);
            recv.label.merged.push(comp.label.coord);
        }
    }
    // Level-1 pool is empty by construction (𝒯′_{1,i} exists only for i=1).
    debug_assert!(pool_per_level[0].is_empty());

    // ---- planted optimum: level-wise unions, one per r ∈ [M*]
    let mut planted_entries: Vec<Entry> = Vec::with_capacity(m_star);
    for r in 0..m_star {
        let mut set = block_sets[r].clone();
        let mut merged = Vec::new();
        for lvl in &planted_per_level {
            set.union_with(&lvl[r].set);
            merged.push(lvl[r].label.coord);
        }
        planted_entries.push(Entry {
            set,
            label: TestLabel {
                family: TestFamily::Planted,
                coord: Coord {
                    level: 0,
                    axis: 0,
                    block: r as u32 + 1,
                    bit: 0,
                    clone: 0,
                },
                merged,
            },
        });
    }

    let num_adv_total = adv_entries.len();
    let mut tests = Vec::with_capacity(num_adv_total + m_star);
    let mut labels = Vec::with_capacity(num_adv_total + m_star);
    for e in adv_entries.into_iter().chain(planted_entries) {
        tests.push(e.set);
        labels.push(e.label);
    }
    let instance = Instance::from_bitsets(n_total, groups, tests)?;
    let out = LabeledInstance {
        instance,
        planted_optimal: (num_adv_total..num_adv_total + m_star).collect(),
        adversarial: (0..num_adv_total).collect(),
        labels,
        params: GenParams::Complete { q, j },
    };
    out.validate()?;
    // |𝒯′| = |𝒯′₀| + (qM*/8)·H_J exactly: the level part is Σ_t qM*/(8t).
    let level_part: usize = (1..=j as usize).map(|t| q as usize * m_star / (8 * t)).sum();
    if out.adversarial.len() != greedy.size() + level_part {
        return Err(Error::ContractViolation(
            "complete: adversarial family count does not match (qM*/8)·H_J".into(),
        ));
    }
    Ok(out)
}

/// Pair the `𝒯′_{t,1}` originals into unions of two tests covering disjoint
/// groups. Returns `(enlarged, leftovers)`; leftovers are non-empty only
/// when a single `(y, z)` block leaves nothing to pair with.
fn enlarge(
    originals: Vec<Entry>,
    y_count: usize,
    q: usize,
    z_count: usize,
) -> Result<(Vec<Entry>, Vec<Entry>)> {
    let total = originals.len();
    debug_assert_eq!(total, y_count * q * z_count);
    if total % 2 != 0 {
        return Err(Error::ContractViolation(
            "complete: odd |𝒯′_{t,1}|, cannot enlarge".into(),
        ));
    }
    // natural order is (j, k, l): index = (jy·q + k)·z + lz
    let idx = |jy: usize, k: usize, lz: usize| (jy * q + k) * z_count + lz;
    let mut slots: Vec<Option<Entry>> = originals.into_iter().map(Some).collect();
    let mut out = Vec::with_capacity(total / 2);
    if y_count >= 2 {
        // canonical pairing along y: (2j−1, k, l) with (2j, k, l)
        for jy in (0..y_count).step_by(2) {
            for k in 0..q {
                for lz in 0..z_count {
                    let mut a = slots[idx(jy, k, lz)].take().unwrap();
                    let b = slots[idx(jy + 1, k, lz)].take().unwrap();
                    a.set.union_with(&b.set);
                    a.label.merged.push(b.label.coord);
                    out.push(a);
                }
            }
        }
        return Ok((out, vec![]));
    }
    if z_count >= 2 {
        // bucket matching along z: repeatedly pair the two fullest buckets
        let mut buckets: Vec<Vec<usize>> = (0..z_count)
            .map(|lz| (0..q).rev().map(|k| idx(0, k, lz)).collect())
            .collect();
        loop {
            let mut order: Vec<usize> = (0..z_count).collect();
            order.sort_by_key(|&lz| (std::cmp::Reverse(buckets[lz].len()), lz));
            if buckets[order[0]].is_empty() {
                break;
            }
            if buckets[order[1]].is_empty() {
                return Err(Error::ContractViolation(
                    "complete: z-pairing stuck with one bucket remaining".into(),
                ));
            }
            let ia = buckets[order[0]].pop().unwrap();
            let ib = buckets[order[1]].pop().unwrap();
            let mut a = slots[ia].take().unwrap();
            let b = slots[ib].take().unwrap();
            a.set.union_with(&b.set);
            a.label.merged.push(b.label.coord);
            out.push(a);
        }
        return Ok((out, vec![]));
    }
    // single (y, z) block: nothing disjoint to pair with
    let leftovers = slots.into_iter().map(|s| s.unwrap()).collect();
    Ok((vec![], leftovers))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diff::is_test_set;
    use crate::generators::DEFAULT_ITEM_CAP;

    #[test]
    fn complete_q2_j2_counts() {
        let g = complete(2, 2, DEFAULT_ITEM_CAP).unwrap();
        // M* = 8, N = 128, n = (J+2)N = 512
        assert_eq!(g.planted_optimal.len(), 8);
        assert_eq!(g.instance.n(), 512);
        // level part of 𝒯′: (qM*/8)·H_J = 2·(1 + 1/2) = 3
        let level_tests = g
            .adversarial
            .iter()
            .filter(|&&a| g.labels[a].coord.level > 0)
            .count();
        assert_eq!(level_tests, 3);
        assert!(is_test_set(&g.instance, &g.planted_optimal).unwrap());
        assert!(is_test_set(&g.instance, &g.adversarial).unwrap());
    }

    #[test]
    fn complete_q3_j2_counts() {
        let g = complete(3, 2, DEFAULT_ITEM_CAP).unwrap();
        // M* = 16, level part = (qM*/8)·H_2 = 6·1.5 = 9
        assert_eq!(g.planted_optimal.len(), 16);
        let level_tests = g
            .adversarial
            .iter()
            .filter(|&&a| g.labels[a].coord.level > 0)
            .count();
        assert_eq!(level_tests, 9);
    }

    #[test]
    fn complete_rejects_j1() {
        assert!(complete(2, 1, DEFAULT_ITEM_CAP).is_err());
    }
}
