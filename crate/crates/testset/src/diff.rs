use crate::error::{Error, Result};
use crate::instance::{test_differentiates, Instance};

/// One equivalence class of the "not differentiated by the selected tests"
/// relation, restricted to a single group.
#[derive(Clone, Debug)]
pub struct Class {
    pub group: u32,
    pub items: Vec<u32>,
}

/// Partition of every group into equivalence classes under the selected
/// tests, with the undifferentiated-pair count kept incrementally.
///
/// Single-owner mutable value; clone it to branch (the exact solver does).
#[derive(Clone, Debug)]
pub struct DiffState {
    selected: Vec<usize>,
    classes: Vec<Class>,
    measure: u64,
}

#[cfg(test)]
fn pairs(k: u64) -> u64 {
    k * (k - 1) / 2
}

impl DiffState {
    /// Initial state: every group is a single class, nothing selected.
    pub fn new(instance: &Instance) -> Self {
        let classes = instance
            .groups()
            .iter()
            .enumerate()
            .map(|(g, items)| Class {
                group: g as u32,
                items: items.iter().map(|&i| i as u32).collect(),
            })
            .collect::<Vec<_>>();
        let measure = instance.total_pairs();
        DiffState {
            selected: Vec::new(),
            classes,
            measure,
        }
    }

    pub fn measure(&self) -> u64 {
        self.measure
    }

    pub fn selected(&self) -> &[usize] {
        &self.selected
    }

    pub fn classes(&self) -> &[Class] {
        &self.classes
    }

    /// Differentiation measure of a test w.r.t. this state:
    /// `#(T, 𝒯̄) = Σ_C |C ∩ T| · |C ∖ T|`, evaluated per class with no pair
    /// rescans. Equals `measure() - measure-after-refine`.
    pub fn gain(&self, instance: &Instance, test: usize) -> Result<u64> {
        instance.check_test_index(test)?;
        let t = instance.test(test);
        let mut total = 0u64;
        for class in &self.classes {
            if class.items.len() < 2 {
                continue;
            }
            let inside = class
                .items
                .iter()
                .filter(|&&i| t.contains(i as usize))
                .count() as u64;
            total += inside * (class.items.len() as u64 - inside);
        }
        Ok(total)
    }

    /// Split every class into `C ∩ T` and `C ∖ T`, dropping empty parts.
    /// Returns the realized gain; the measure decreases by exactly that.
    pub fn refine(&mut self, instance: &Instance, test: usize) -> Result<u64> {
        instance.check_test_index(test)?;
        let t = instance.test(test);
        let mut gain = 0u64;
        let mut next = Vec::with_capacity(self.classes.len());
        for class in self.classes.drain(..) {
            if class.items.len() < 2 {
                next.push(class);
                continue;
            }
            let (inside, outside): (Vec<u32>, Vec<u32>) = class
                .items
                .iter()
                .partition(|&&i| t.contains(i as usize));
            if inside.is_empty() || outside.is_empty() {
                next.push(class);
                continue;
            }
            gain += inside.len() as u64 * outside.len() as u64;
            next.push(Class {
                group: class.group,
                items: inside,
            });
            next.push(Class {
                group: class.group,
                items: outside,
            });
        }
        self.classes = next;
        self.measure -= gain;
        self.selected.push(test);
        Ok(gain)
    }

    /// Entropy functional over the partition: `E = Σ_C |C| log₂ |C|`.
    /// Zero exactly when every class is a singleton, i.e. measure is zero.
    pub fn entropy(&self) -> f64 {
        self.classes
            .iter()
            .map(|c| {
                let k = c.items.len() as f64;
                if c.items.len() < 2 {
                    0.0
                } else {
                    k * k.log2()
                }
            })
            .sum()
    }

    /// Entropy after hypothetically refining with `test`.
    pub fn entropy_after(&self, instance: &Instance, test: usize) -> Result<f64> {
        instance.check_test_index(test)?;
        let t = instance.test(test);
        let mut e = 0.0;
        for class in &self.classes {
            if class.items.len() < 2 {
                continue;
            }
            let inside = class
                .items
                .iter()
                .filter(|&&i| t.contains(i as usize))
                .count() as f64;
            let outside = class.items.len() as f64 - inside;
            if inside >= 2.0 {
                e += inside * inside.log2();
            }
            if outside >= 2.0 {
                e += outside * outside.log2();
            }
        }
        Ok(e)
    }

    /// Some still-undifferentiated pair, if any, with its group.
    pub fn undifferentiated_pair(&self) -> Option<(usize, usize, usize)> {
        self.classes.iter().find(|c| c.items.len() >= 2).map(|c| {
            (
                c.group as usize,
                c.items[0] as usize,
                c.items[1] as usize,
            )
        })
    }

    #[cfg(test)]
    fn check_invariants(&self, instance: &Instance) {
        let mut seen = vec![false; instance.n()];
        let mut m = 0u64;
        for c in &self.classes {
            m += pairs(c.items.len() as u64);
            for &i in &c.items {
                assert!(!seen[i as usize]);
                seen[i as usize] = true;
                assert_eq!(instance.group_of(i as usize), c.group as usize);
            }
        }
        assert!(seen.iter().all(|&s| s));
        assert_eq!(m, self.measure);
    }
}

/// `#(𝒯̄)` for an explicit selection, via partition refinement.
pub fn diff_measure(instance: &Instance, selected: &[usize]) -> Result<u64> {
    let mut state = DiffState::new(instance);
    for &t in selected {
        state.refine(instance, t)?;
    }
    Ok(state.measure())
}

/// Brute-force oracle for `diff_measure`: double loop over intra-group pairs.
/// Kept independent of the partition path on purpose.
pub fn diff_measure_bruteforce(instance: &Instance, selected: &[usize]) -> Result<u64> {
    for &t in selected {
        instance.check_test_index(t)?;
    }
    let mut count = 0u64;
    for group in instance.groups() {
        for (a, &i) in group.iter().enumerate() {
            for &j in &group[a + 1..] {
                let differentiated = selected
                    .iter()
                    .any(|&t| test_differentiates(instance.test(t), i, j));
                if !differentiated {
                    count += 1;
                }
            }
        }
    }
    Ok(count)
}

pub fn is_test_set(instance: &Instance, selected: &[usize]) -> Result<bool> {
    Ok(diff_measure(instance, selected)? == 0)
}

/// `⊥({i,j}, 𝒯̄)`: how many selected tests differentiate the pair.
pub fn pair_diff_count(instance: &Instance, selected: &[usize], i: usize, j: usize) -> Result<u64> {
    instance.check_item_pair(i, j)?;
    let mut count = 0;
    for &t in selected {
        instance.check_test_index(t)?;
        if test_differentiates(instance.test(t), i, j) {
            count += 1;
        }
    }
    Ok(count)
}

/// Greedily remove redundant tests, scanning in reverse selection order.
/// The input must be a test set; the result is a minimal one.
pub fn minimalize(instance: &Instance, selected: &[usize]) -> Result<Vec<usize>> {
    if !is_test_set(instance, selected)? {
        return Err(Error::ContractViolation(
            "minimalize: input selection is not a test set".into(),
        ));
    }
    let mut kept: Vec<usize> = selected.to_vec();
    // Deduplicate while preserving first occurrences.
    let mut seen = std::collections::HashSet::new();
    kept.retain(|&t| seen.insert(t));
    let mut idx = kept.len();
    while idx > 0 {
        idx -= 1;
        let mut trial = kept.clone();
        trial.remove(idx);
        if is_test_set(instance, &trial)? {
            kept = trial;
        }
    }
    // Fact 3: a minimal test set has at most n - 1 tests.
    debug_assert!(instance.n() == 1 || kept.len() <= instance.n() - 1);
    Ok(kept)
}
