//! Instance families with labeled planted solutions: compact test sets, the
//! three-stage adversarial construction (atom, level-t, complete instances),
//! the adversarial set cover component, and seeded random instances.
//!
//! Generator coordinates are 1-based in labels (matching the construction's
//! figures) and linearized 0-based into dense item indices, lexicographically
//! by `(x₁, …, x_t, y[, z, w])` with the group coordinates major so each
//! group is a contiguous index block.

mod atom;
mod complete;
mod level;
mod scadv;

pub use atom::atom;
pub use complete::complete;
pub use level::level;
pub use scadv::sc_adversarial;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::diff::is_test_set;
use crate::error::{Error, Result};
use crate::instance::Instance;

/// Default memory cap, in items, for the constructed universes.
pub const DEFAULT_ITEM_CAP: usize = 1 << 22;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TestFamily {
    /// Member of the planted optimal family 𝒯*.
    Planted,
    /// Member of the adversarial family 𝒯′.
    Adversarial,
}

/// Structured generator coordinates of one test component (1-based; 0 means
/// the coordinate does not apply to this family).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coord {
    /// Level t (0 for the set-cover component of complete instances).
    pub level: u32,
    /// Axis i.
    pub axis: u32,
    /// Block j (y coordinate for 𝒯′, item value for 𝒯*).
    pub block: u32,
    /// Bit k (compact test index; 𝒯′ only).
    pub bit: u32,
    /// Clone l (z coordinate; level and complete instances only).
    pub clone: u32,
}

impl Coord {
    pub fn display(&self, family: TestFamily) -> String {
        let tick = match family {
            TestFamily::Planted => "*",
            TestFamily::Adversarial => "'",
        };
        format!(
            "T{}_{{{},{};{},{},{}}}",
            tick, self.level, self.axis, self.block, self.bit, self.clone
        )
    }
}

/// Label of one generated test. Enlarged and merged tests carry the
/// coordinates of every absorbed component in `merged`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TestLabel {
    pub family: TestFamily,
    pub coord: Coord,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub merged: Vec<Coord>,
}

impl TestLabel {
    pub fn new(family: TestFamily, coord: Coord) -> Self {
        TestLabel {
            family,
            coord,
            merged: Vec::new(),
        }
    }
}

/// Parameter echo embedded in generated instances and reports.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum GenParams {
    Compact { q: u32 },
    Atom { q: u32, t: u32 },
    Level { q: u32, j: u32, t: u32 },
    Complete { q: u32, j: u32 },
    ScAdversarial { n: u64, m_star: u64 },
    Random { n: usize, m: usize, density: f64, seed: u64 },
}

/// A generated instance with its planted optimal family 𝒯*, adversarial
/// family 𝒯′ (in natural order), and per-test labels.
#[derive(Clone, Debug)]
pub struct LabeledInstance {
    pub instance: Instance,
    pub planted_optimal: Vec<usize>,
    pub adversarial: Vec<usize>,
    pub labels: Vec<TestLabel>,
    pub params: GenParams,
}

impl LabeledInstance {
    /// Generation-time contract: both families are test sets.
    pub(crate) fn validate(&self) -> Result<()> {
        if !is_test_set(&self.instance, &self.planted_optimal)? {
            return Err(Error::ContractViolation(
                "generated planted optimal family is not a test set".into(),
            ));
        }
        if !is_test_set(&self.instance, &self.adversarial)? {
            return Err(Error::ContractViolation(
                "generated adversarial family is not a test set".into(),
            ));
        }
        Ok(())
    }
}

/// Members of the k-th compact test of `[2^q]` (0-based: bit `k` of the item
/// value), `k ∈ 0..q`.
pub(crate) fn compact_bit_set(value: usize, k: u32) -> bool {
    value >> k & 1 == 1
}

pub(crate) fn factorial(j: u32) -> u64 {
    (1..=j as u64).product::<u64>().max(1)
}

/// Compact test set instance over `[2^q]`: q tests, test k holding the items
/// whose k-th value bit is set. Optimal by Fact 4.
pub fn compact(q: u32) -> Result<LabeledInstance> {
    if q < 1 {
        return Err(Error::invalid("compact: q must be >= 1"));
    }
    if q > 20 {
        return Err(Error::TooLarge(format!("compact: q = {q} too large")));
    }
    let n = 1usize << q;
    let tests: Vec<Vec<usize>> = (0..q)
        .map(|k| (0..n).filter(|&x| compact_bit_set(x, k)).collect())
        .collect();
    let instance = Instance::new(n, tests)?;
    let labels = (0..q)
        .map(|k| {
            TestLabel::new(
                TestFamily::Planted,
                Coord {
                    level: 0,
                    axis: 0,
                    block: 0,
                    bit: k + 1,
                    clone: 0,
                },
            )
        })
        .collect();
    let all: Vec<usize> = (0..q as usize).collect();
    let out = LabeledInstance {
        instance,
        planted_optimal: all.clone(),
        adversarial: all,
        labels,
        params: GenParams::Compact { q },
    };
    out.validate()?;
    Ok(out)
}

/// Seeded random instance: `m` Bernoulli(density) tests over `n` items.
/// Deterministic for a given seed; may be infeasible (callers check).
pub fn random(n: usize, m: usize, density: f64, seed: u64) -> Result<Instance> {
    if n < 1 {
        return Err(Error::invalid("random: n must be >= 1"));
    }
    if !(0.0..=1.0).contains(&density) {
        return Err(Error::invalid("random: density must be in [0, 1]"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tests: Vec<Vec<usize>> = (0..m)
        .map(|_| (0..n).filter(|_| rng.gen::<f64>() < density).collect())
        .collect();
    Instance::new(n, tests)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diff::{diff_measure, is_test_set};
    use crate::solvers::{exact, sga, TieBreak};

    #[test]
    fn compact_q1() {
        let g = compact(1).unwrap();
        assert_eq!(g.instance.n(), 2);
        assert_eq!(g.instance.num_tests(), 1);
    }

    #[test]
    fn compact_q3_needs_all_tests() {
        let g = compact(3).unwrap();
        assert_eq!(g.instance.n(), 8);
        assert!(is_test_set(&g.instance, &[0, 1, 2]).unwrap());
        assert!(!is_test_set(&g.instance, &[0, 1]).unwrap());
        assert_eq!(diff_measure(&g.instance, &[0, 1, 2]).unwrap(), 0);
    }

    #[test]
    fn compact_q4_exact_is_q() {
        let g = compact(4).unwrap();
        let res = exact(&g.instance, None).unwrap().unwrap();
        assert_eq!(res.size(), 4);
    }

    #[test]
    fn random_is_deterministic() {
        let a = random(8, 6, 0.5, 42).unwrap();
        let b = random(8, 6, 0.5, 42).unwrap();
        for t in 0..6 {
            assert_eq!(a.test(t), b.test(t));
        }
        let c = random(8, 6, 0.5, 43).unwrap();
        let differs = (0..6).any(|t| a.test(t) != c.test(t));
        assert!(differs);
    }

    #[test]
    fn random_density_one_is_infeasible() {
        let inst = random(4, 3, 1.0, 7).unwrap();
        let all: Vec<usize> = (0..3).collect();
        assert!(!is_test_set(&inst, &all).unwrap());
        assert!(sga(&inst, &TieBreak::NaturalOrder).is_err());
    }
}
