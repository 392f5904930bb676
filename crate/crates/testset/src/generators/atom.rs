use super::{compact_bit_set, Coord, GenParams, LabeledInstance, TestFamily, TestLabel};
use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::instance::Instance;

/// Atom instance: groups `S_t^y`, `y ∈ [2^{q−2}]`, of `2^{qt}` points
/// `(x₁, …, x_t, y)` with `x_i ∈ [2^q]`.
///
/// `T*_{t,i;j}` holds the points with `x_i = j` (every `y`); `T′_{t,i;j,k}`
/// holds the points of group `j` with `x_i` in the k-th compact test of
/// `[2^q]`. Tests are listed 𝒯′ first, in natural order (the lexical order
/// of `(i, j, k)`), then 𝒯* in lexical `(i, j)` order, so natural-order
/// tie-breaking realizes the adversarial runs deterministically.
pub fn atom(q: u32, t: u32, cap: usize) -> Result<LabeledInstance> {
    if q < 2 {
        return Err(Error::invalid("atom: q must be >= 2"));
    }
    if t < 1 {
        return Err(Error::invalid("atom: t must be >= 1"));
    }
    let bits = q as u64 * t as u64 + q as u64 - 2;
    if bits >= 40 || (1u64 << bits) > cap as u64 {
        return Err(Error::TooLarge(format!(
            "atom: n = 2^{bits} exceeds the item cap {cap}"
        )));
    }
    let groups_count = 1usize << (q - 2); // y values
    let group_size = 1usize << (q * t); // x vectors
    let values = 1usize << q;
    let n = groups_count * group_size;

    let t_us = t as usize;
    let q_us = q as usize;
    let num_adv = t_us * groups_count * q_us; // t · 2^{q−2} · q = (q/4)t2^q
    let num_planted = t_us * values; // t · 2^q
    let adv_id = |i: usize, j: usize, k: usize| (i * groups_count + j) * q_us + k;
    let planted_id = |i: usize, j: usize| num_adv + i * values + j;

    let mut tests = vec![BitSet::new(n); num_adv + num_planted];
    for y in 0..groups_count {
        for xlin in 0..group_size {
            let item = y * group_size + xlin;
            for i in 0..t_us {
                // x_i is the i-th most significant q-bit field of xlin
                let xi = xlin >> (q_us * (t_us - 1 - i)) & (values - 1);
                tests[planted_id(i, xi)].insert(item);
                for k in 0..q_us {
                    if compact_bit_set(xi, k as u32) {
                        tests[adv_id(i, y, k)].insert(item);
                    }
                }
            }
        }
    }

    let mut labels = Vec::with_capacity(tests.len());
    for i in 0..t_us {
        for j in 0..groups_count {
            for k in 0..q_us {
                labels.push(TestLabel::new(
                    TestFamily::Adversarial,
                    Coord {
                        level: t,
                        axis: i as u32 + 1,
                        block: j as u32 + 1,
                        bit: k as u32 + 1,
                        clone: 0,
                    },
                ));
            }
        }
    }
    for i in 0..t_us {
        for j in 0..values {
            labels.push(TestLabel::new(
                TestFamily::Planted,
                Coord {
                    level: t,
                    axis: i as u32 + 1,
                    block: j as u32 + 1,
                    bit: 0,
                    clone: 0,
                },
            ));
        }
    }

    let groups: Vec<Vec<usize>> = (0..groups_count)
        .map(|y| (y * group_size..(y + 1) * group_size).collect())
        .collect();
    let instance = Instance::from_bitsets(n, groups, tests)?;
    let out = LabeledInstance {
        instance,
        planted_optimal: (num_adv..num_adv + num_planted).collect(),
        adversarial: (0..num_adv).collect(),
        labels,
        params: GenParams::Atom { q, t },
    };
    out.validate()?;
    Ok(out)
}
