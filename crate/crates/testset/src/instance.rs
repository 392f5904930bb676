use crate::bitset::BitSet;
use crate::error::{Error, Result};

/// An instance of the (grouped) minimum test set problem.
///
/// The universe is the dense index range `0..n`. Groups partition the
/// universe; only pairs inside the same group have to be differentiated.
/// The classic single-universe problem is the one-group special case.
///
/// Test order is significant: it defines index tie-breaking in the solvers.
/// The instance is immutable after construction and safe to share read-only.
#[derive(Clone, Debug)]
pub struct Instance {
    n: usize,
    groups: Vec<Vec<usize>>,
    tests: Vec<BitSet>,
    group_of: Vec<u32>,
    test_names: Option<Vec<String>>,
}

impl Instance {
    /// Single-group instance over `0..n`.
    pub fn new(n: usize, tests: Vec<Vec<usize>>) -> Result<Self> {
        Self::with_groups(n, vec![(0..n).collect()], tests)
    }

    pub fn with_groups(n: usize, groups: Vec<Vec<usize>>, tests: Vec<Vec<usize>>) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("instance needs at least one item"));
        }
        let mut group_of = vec![u32::MAX; n];
        for (g, items) in groups.iter().enumerate() {
            for &i in items {
                if i >= n {
                    return Err(Error::invalid(format!("group item {i} out of range (n={n})")));
                }
                if group_of[i] != u32::MAX {
                    return Err(Error::invalid(format!("item {i} appears in two groups")));
                }
                group_of[i] = g as u32;
            }
        }
        if let Some(i) = group_of.iter().position(|&g| g == u32::MAX) {
            return Err(Error::invalid(format!("item {i} belongs to no group")));
        }
        let mut bit_tests = Vec::with_capacity(tests.len());
        for (t, items) in tests.iter().enumerate() {
            for &i in items {
                if i >= n {
                    return Err(Error::invalid(format!("test {t} contains item {i} out of range")));
                }
            }
            bit_tests.push(BitSet::from_indices(n, items.iter().copied()));
        }
        Ok(Instance {
            n,
            groups,
            tests: bit_tests,
            group_of,
            test_names: None,
        })
    }

    pub fn from_bitsets(n: usize, groups: Vec<Vec<usize>>, tests: Vec<BitSet>) -> Result<Self> {
        let as_lists = tests.iter().map(|t| t.iter().collect()).collect();
        let mut inst = Self::with_groups(n, groups, as_lists)?;
        inst.tests = tests;
        Ok(inst)
    }

    pub fn set_test_names(&mut self, names: Vec<String>) {
        debug_assert_eq!(names.len(), self.tests.len());
        self.test_names = Some(names);
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_tests(&self) -> usize {
        self.tests.len()
    }

    pub fn test(&self, idx: usize) -> &BitSet {
        &self.tests[idx]
    }

    pub fn tests(&self) -> &[BitSet] {
        &self.tests
    }

    pub fn groups(&self) -> &[Vec<usize>] {
        &self.groups
    }

    pub fn group_of(&self, item: usize) -> usize {
        self.group_of[item] as usize
    }

    pub fn test_name(&self, idx: usize) -> Option<&str> {
        self.test_names.as_ref().map(|v| v[idx].as_str())
    }

    /// Number of intra-group item pairs, the initial differentiation measure.
    pub fn total_pairs(&self) -> u64 {
        self.groups
            .iter()
            .map(|g| {
                let k = g.len() as u64;
                k * (k - 1) / 2
            })
            .sum()
    }

    pub fn check_test_index(&self, idx: usize) -> Result<()> {
        if idx >= self.tests.len() {
            return Err(Error::invalid(format!(
                "test index {idx} out of range (m={})",
                self.tests.len()
            )));
        }
        Ok(())
    }

    pub fn check_item_pair(&self, i: usize, j: usize) -> Result<()> {
        if i >= self.n || j >= self.n {
            return Err(Error::invalid(format!("item index out of range: ({i}, {j})")));
        }
        if i == j {
            return Err(Error::invalid(format!("not an item pair: ({i}, {i})")));
        }
        Ok(())
    }

    /// Whether test `test` differentiates the pair `{i, j}`, i.e. contains
    /// exactly one of the two.
    pub fn differentiates(&self, test: usize, i: usize, j: usize) -> Result<bool> {
        self.check_test_index(test)?;
        self.check_item_pair(i, j)?;
        Ok(test_differentiates(&self.tests[test], i, j))
    }
}

/// `|T ∩ {i, j}| = 1` for an explicit item set.
pub fn test_differentiates(test: &BitSet, i: usize, j: usize) -> bool {
    test.contains(i) != test.contains(j)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn differentiates_basic() {
        let inst = Instance::new(3, vec![vec![0], vec![0, 1]]).unwrap();
        assert!(inst.differentiates(0, 0, 1).unwrap());
        assert!(!inst.differentiates(1, 0, 1).unwrap());
        assert!(inst.differentiates(1, 1, 2).unwrap());
    }

    #[test]
    fn differentiates_rejects_degenerate_pair() {
        let inst = Instance::new(3, vec![vec![0]]).unwrap();
        assert!(inst.differentiates(0, 1, 1).is_err());
        assert!(inst.differentiates(0, 0, 3).is_err());
        assert!(inst.differentiates(1, 0, 1).is_err());
    }

    #[test]
    fn group_validation() {
        assert!(Instance::with_groups(3, vec![vec![0, 1]], vec![]).is_err());
        assert!(Instance::with_groups(3, vec![vec![0, 1], vec![1, 2]], vec![]).is_err());
        assert!(Instance::with_groups(3, vec![vec![0, 1], vec![2]], vec![vec![3]]).is_err());
        let ok = Instance::with_groups(4, vec![vec![0, 1], vec![2, 3]], vec![vec![0]]).unwrap();
        assert_eq!(ok.total_pairs(), 2);
        assert_eq!(ok.group_of(3), 1);
    }

    /// Fact 2: a test differentiating {i,j} and {i,k} cannot differentiate {j,k}.
    #[test]
    fn fact2_triangle() {
        let inst = Instance::new(5, vec![vec![0, 3], vec![1, 2], vec![4]]).unwrap();
        for t in 0..inst.num_tests() {
            for i in 0..5 {
                for j in 0..5 {
                    for k in 0..5 {
                        if i == j || i == k || j == k {
                            continue;
                        }
                        if inst.differentiates(t, i, j).unwrap()
                            && inst.differentiates(t, i, k).unwrap()
                        {
                            assert!(!inst.differentiates(t, j, k).unwrap());
                        }
                    }
                }
            }
        }
    }
}
