use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::solvers::{Algorithm, SolveResult, StepRecord, TieBreak};

/// Default cap on `n` for materializing the quadratic transformation.
pub const DEFAULT_TRANSFORM_LIMIT: usize = 512;

/// A set cover instance. Subsets keep the order of the collection they came
/// from; `planted_cover` carries a known optimal cover when the instance was
/// generated with one.
#[derive(Clone, Debug)]
pub struct SetCoverInstance {
    pub n_elements: usize,
    pub subsets: Vec<BitSet>,
    pub planted_cover: Option<Vec<usize>>,
}

impl SetCoverInstance {
    pub fn new(n_elements: usize, subsets: Vec<Vec<usize>>) -> Result<Self> {
        let mut sets = Vec::with_capacity(subsets.len());
        for (s, elems) in subsets.iter().enumerate() {
            for &e in elems {
                if e >= n_elements {
                    return Err(Error::invalid(format!(
                        "subset {s} contains element {e} out of range"
                    )));
                }
            }
            sets.push(BitSet::from_indices(n_elements, elems.iter().copied()));
        }
        Ok(SetCoverInstance {
            n_elements,
            subsets: sets,
            planted_cover: None,
        })
    }
}

/// Natural transformation of a test set instance into set cover: the element
/// universe is the set of intra-group item pairs, and test `T` maps to
/// `c(T)`, the pairs it differentiates. Preserves test order.
pub fn transform(instance: &Instance, limit: usize) -> Result<SetCoverInstance> {
    if instance.n() > limit {
        return Err(Error::TooLarge(format!(
            "transformation materializes ~n²/2 elements; n = {} exceeds the limit {limit}",
            instance.n()
        )));
    }
    // Pair universe: group by group, (i, j) with i < j in group order.
    let mut pair_list: Vec<(usize, usize)> = Vec::new();
    for group in instance.groups() {
        for (a, &i) in group.iter().enumerate() {
            for &j in &group[a + 1..] {
                pair_list.push((i, j));
            }
        }
    }
    let n_elements = pair_list.len();
    let mut subsets = Vec::with_capacity(instance.num_tests());
    for t in 0..instance.num_tests() {
        let test = instance.test(t);
        let mut s = BitSet::new(n_elements);
        for (e, &(i, j)) in pair_list.iter().enumerate() {
            if test.contains(i) != test.contains(j) {
                s.insert(e);
            }
        }
        subsets.push(s);
    }
    Ok(SetCoverInstance {
        n_elements,
        subsets,
        planted_cover: None,
    })
}

/// Standard greedy set cover: select the subset covering most uncovered
/// elements, ties broken by `tiebreak`.
pub fn greedy_setcover(sc: &SetCoverInstance, tiebreak: &TieBreak) -> Result<SolveResult> {
    let m = sc.subsets.len();
    let mut covered = BitSet::new(sc.n_elements);
    // Feasibility: every element must appear in some subset.
    for e in 0..sc.n_elements {
        if !sc.subsets.iter().any(|s| s.contains(e)) {
            return Err(Error::Uncoverable(e));
        }
    }
    let mut unselected = vec![true; m];
    let mut uncovered = sc.n_elements as u64;
    let mut steps = Vec::new();
    while uncovered > 0 {
        let mut best_gain = 0u64;
        let mut best: Option<usize> = None;
        let mut tied = 0usize;
        for s in 0..m {
            if !unselected[s] {
                continue;
            }
            let g = sc.subsets[s]
                .iter()
                .filter(|&e| !covered.contains(e))
                .count() as u64;
            if g == 0 {
                continue;
            }
            if g > best_gain {
                best_gain = g;
                best = Some(s);
                tied = 1;
            } else if g == best_gain {
                tied += 1;
                let b = best.unwrap();
                if tiebreak.rank(s, m) < tiebreak.rank(b, m) {
                    best = Some(s);
                }
            }
        }
        let chosen = best.expect("feasible cover must offer a covering subset");
        covered.union_with(&sc.subsets[chosen]);
        unselected[chosen] = false;
        let after = uncovered - best_gain;
        steps.push(StepRecord {
            test: chosen,
            gain: best_gain,
            measure_before: uncovered,
            measure_after: after,
            tied,
        });
        uncovered = after;
    }
    Ok(SolveResult {
        algorithm: Algorithm::ScGreedy,
        selected: steps.iter().map(|s| s.test).collect(),
        steps,
        final_measure: 0,
    })
}

/// True iff SGA and greedy set cover on the transformed instance produce
/// identical selection sequences (§2 isomorphism, checked at small scale).
pub fn verify_isomorphism(instance: &Instance, tiebreak: &TieBreak, limit: usize) -> Result<bool> {
    let sga_run = crate::solvers::sga(instance, tiebreak)?;
    let sc = transform(instance, limit)?;
    let greedy_run = greedy_setcover(&sc, tiebreak)?;
    Ok(sga_run.selected == greedy_run.selected)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn transform_sizes() {
        let inst = Instance::new(3, vec![vec![0]]).unwrap();
        let sc = transform(&inst, DEFAULT_TRANSFORM_LIMIT).unwrap();
        assert_eq!(sc.n_elements, 3);
        // c({0}) = {{0,1},{0,2}}
        assert_eq!(sc.subsets[0].count(), 2);
    }

    #[test]
    fn transform_grouped_excludes_cross_pairs() {
        let inst =
            Instance::with_groups(4, vec![vec![0, 1], vec![2, 3]], vec![vec![0, 2]]).unwrap();
        let sc = transform(&inst, DEFAULT_TRANSFORM_LIMIT).unwrap();
        assert_eq!(sc.n_elements, 2);
    }

    #[test]
    fn transform_limit() {
        let inst = Instance::new(600, vec![vec![0]]).unwrap();
        assert!(matches!(
            transform(&inst, DEFAULT_TRANSFORM_LIMIT),
            Err(Error::TooLarge(_))
        ));
    }

    #[test]
    fn greedy_on_partition_selects_all() {
        let sc = SetCoverInstance::new(6, vec![vec![0, 1], vec![2, 3], vec![4, 5]]).unwrap();
        let res = greedy_setcover(&sc, &TieBreak::LowestIndex).unwrap();
        assert_eq!(res.selected, vec![0, 1, 2]);
        // greedy gains are non-increasing
        for w in res.steps.windows(2) {
            assert!(w[1].gain <= w[0].gain);
        }
    }

    #[test]
    fn greedy_uncoverable() {
        let sc = SetCoverInstance::new(3, vec![vec![0, 1]]).unwrap();
        assert!(matches!(
            greedy_setcover(&sc, &TieBreak::LowestIndex),
            Err(Error::Uncoverable(2))
        ));
    }

    #[test]
    fn isomorphism_single_test() {
        let inst = Instance::new(2, vec![vec![0]]).unwrap();
        assert!(verify_isomorphism(&inst, &TieBreak::NaturalOrder, 512).unwrap());
    }
}
