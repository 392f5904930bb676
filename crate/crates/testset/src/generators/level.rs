use super::{compact_bit_set, factorial, Coord, GenParams, LabeledInstance, TestFamily, TestLabel};
use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::instance::Instance;

/// Dimensions of the level-t universe for given `(q, J, t)`.
pub(crate) struct LevelDims {
    pub q: usize,
    pub t: usize,
    /// y values: 2^{q−2}
    pub y_count: usize,
    /// z values: J!/t
    pub z_count: usize,
    /// w values: t·2^{q(J−t)+2}
    pub w_count: usize,
    /// points per group: 2^{qt}
    pub group_size: usize,
    /// x_i values: 2^q
    pub values: usize,
    /// total points N = J!·2^{q(J+1)}
    pub n: usize,
}

pub(crate) fn level_dims(q: u32, j: u32, t: u32, cap: usize) -> Result<LevelDims> {
    if q < 2 {
        return Err(Error::invalid("level: q must be >= 2"));
    }
    if j < 1 || t < 1 || t > j {
        return Err(Error::invalid("level: need 1 <= t <= J"));
    }
    if j > 8 {
        return Err(Error::TooLarge("level: J > 8 is astronomically large".into()));
    }
    let fact = factorial(j);
    let n128: u128 = fact as u128 * (1u128 << (q as u128 * (j as u128 + 1)));
    if n128 > cap as u128 {
        return Err(Error::TooLarge(format!(
            "level: N = J!·2^(q(J+1)) = {n128} exceeds the item cap {cap}"
        )));
    }
    let q_us = q as usize;
    let t_us = t as usize;
    let dims = LevelDims {
        q: q_us,
        t: t_us,
        y_count: 1 << (q_us - 2),
        z_count: (fact / t as u64) as usize,
        w_count: t_us << (q_us * (j as usize - t_us) + 2),
        group_size: 1 << (q_us * t_us),
        values: 1 << q_us,
        n: n128 as usize,
    };
    debug_assert_eq!(
        dims.y_count * dims.z_count * dims.w_count * dims.group_size,
        dims.n
    );
    Ok(dims)
}

/// Level-t instance: the atom construction stretched in the `w` dimension
/// and cloned in the `z` dimension. Groups are `S_t^{y,z,w}`;
/// `T*_{t,i;j,l}` holds the points with `x_i = j, z = l` (any `y, w`) and
/// `T′_{t,i;j,k,l}` the points with `y = j, z = l` and `x_i` in the k-th
/// compact test (any `w`). `|𝒯*_t| = M* = J!·2^q` and `|𝒯′_t| = qM*/4`.
pub fn level(q: u32, j: u32, t: u32, cap: usize) -> Result<LabeledInstance> {
    let dims = level_dims(q, j, t, cap)?;
    let (tests, labels, groups, num_adv) = build_level_tests(&dims, 0, dims.n, t);
    let num_total = tests.len();
    let instance = Instance::from_bitsets(dims.n, groups, tests)?;
    let out = LabeledInstance {
        instance,
        planted_optimal: (num_adv..num_total).collect(),
        adversarial: (0..num_adv).collect(),
        labels,
        params: GenParams::Level { q, j, t },
    };
    out.validate()?;
    Ok(out)
}

/// Builds the level-t test family over a universe of `total_items` items in
/// which the level occupies `base .. base + dims.n`. Returns
/// `(tests, labels, groups, adversarial_count)` with 𝒯′ first in natural
/// order, then 𝒯* in lexical `(i, j, l)` order.
pub(crate) fn build_level_tests(
    dims: &LevelDims,
    base: usize,
    total_items: usize,
    level_tag: u32,
) -> (Vec<BitSet>, Vec<TestLabel>, Vec<Vec<usize>>, usize) {
    let LevelDims {
        q,
        t,
        y_count,
        z_count,
        w_count,
        group_size,
        values,
        ..
    } = *dims;
    let num_adv = t * y_count * q * z_count;
    let num_planted = t * values * z_count;
    let adv_id = |i: usize, jy: usize, k: usize, lz: usize| ((i * y_count + jy) * q + k) * z_count + lz;
    let planted_id = |i: usize, jv: usize, lz: usize| num_adv + (i * values + jv) * z_count + lz;

    let mut tests = vec![BitSet::new(total_items); num_adv + num_planted];
    let mut groups = Vec::with_capacity(y_count * z_count * w_count);
    for y in 0..y_count {
        for z in 0..z_count {
            for w in 0..w_count {
                let g_base = base + ((y * z_count + z) * w_count + w) * group_size;
                groups.push((g_base..g_base + group_size).collect::<Vec<usize>>());
                for xlin in 0..group_size {
                    let item = g_base + xlin;
                    for i in 0..t {
                        let xi = xlin >> (q * (t - 1 - i)) & (values - 1);
                        tests[planted_id(i, xi, z)].insert(item);
                        for k in 0..q {
                            if compact_bit_set(xi, k as u32) {
                                tests[adv_id(i, y, k, z)].insert(item);
                            }
                        }
                    }
                }
            }
        }
    }

    let mut labels = Vec::with_capacity(tests.len());
    for i in 0..t {
        for jy in 0..y_count {
            for k in 0..q {
                for lz in 0..z_count {
                    labels.push(TestLabel::new(
                        TestFamily::Adversarial,
                        Coord {
                            level: level_tag,
                            axis: i as u32 + 1,
                            block: jy as u32 + 1,
                            bit: k as u32 + 1,
                            clone: lz as u32 + 1,
                        },
                    ));
                }
            }
        }
    }
    for i in 0..t {
        for jv in 0..values {
            for lz in 0..z_count {
                labels.push(TestLabel::new(
                    TestFamily::Planted,
                    Coord {
                        level: level_tag,
                        axis: i as u32 + 1,
                        block: jv as u32 + 1,
                        bit: 0,
                        clone: lz as u32 + 1,
                    },
                ));
            }
        }
    }
    (tests, labels, groups, num_adv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diff::DiffState;
    use crate::generators::DEFAULT_ITEM_CAP;

    #[test]
    fn level_q2_j2_t2_shape() {
        let g = level(2, 2, 2, DEFAULT_ITEM_CAP).unwrap();
        assert_eq!(g.instance.n(), 128); // N = 2!·2^6
        assert_eq!(g.planted_optimal.len(), 8); // M* = J!·2^q
        assert_eq!(g.adversarial.len(), 4); // qM*/4
        assert_eq!(g.instance.groups().len(), 8);
    }

    #[test]
    fn level_initial_gains_match_formulas() {
        let (q, j, t) = (2u32, 2u32, 2u32);
        let g = level(q, j, t, DEFAULT_ITEM_CAP).unwrap();
        let n = g.instance.n() as u64;
        let begin = (1u64 << (q * (t - 1))) * n; // #^begin_t = 2^{q(t−1)}N
        let state = DiffState::new(&g.instance);
        for (pos, &a) in g.adversarial.iter().enumerate() {
            let axis = g.labels[a].coord.axis;
            let gain = state.gain(&g.instance, a).unwrap();
            assert_eq!(gain, begin, "adversarial test {pos} axis {axis}");
        }
        // 𝒯* initial measure: 2^{q(t−1)}(1−2^{−q})N
        let planted_expect = begin - begin / (1 << q);
        for &p in &g.planted_optimal {
            assert_eq!(state.gain(&g.instance, p).unwrap(), planted_expect);
        }
    }

    #[test]
    fn level_rejects_bad_params() {
        assert!(level(2, 2, 3, DEFAULT_ITEM_CAP).is_err());
        assert!(level(1, 2, 1, DEFAULT_ITEM_CAP).is_err());
        assert!(level(2, 2, 2, 64).is_err());
    }
}
