use crate::error::{Error, Result};
use crate::setcover::SetCoverInstance;

/// Adversarial set cover instance with a planted optimal cover of size
/// `m_star` (disjoint blocks of `n / m_star` elements).
///
/// The adversarial family partitions the universe: with `T` elements still
/// uncovered, the next set takes the `⌈T/m_star⌉` elements that come next
/// in a global round robin over the blocks. Block residues then stay
/// balanced, so every block covers at most `⌈T/m_star⌉` new elements and
/// greedy with lowest-index tie-breaking (adversarial sets are listed
/// first) walks the whole adversarial family, about
/// `m_star·ln(n/m_star) + m_star` sets with per-step covered counts
/// running from `n/m_star` down to 1. Callers that embed this instance
/// check the resulting cover against `(m_star − 1)(ln n − ln m_star)` by
/// actually running greedy.
pub fn sc_adversarial(n: u64, m_star: u64) -> Result<SetCoverInstance> {
    if m_star < 2 {
        return Err(Error::invalid("sc_adversarial: m_star must be >= 2"));
    }
    if n % m_star != 0 || n == 0 {
        return Err(Error::invalid(
            "sc_adversarial: m_star must divide n (blocks are equal-sized)",
        ));
    }
    if n > (1 << 26) {
        return Err(Error::TooLarge(format!("sc_adversarial: n = {n} too large")));
    }
    let n = n as usize;
    let m_star = m_star as usize;
    let block_size = n / m_star;

    // round-robin position g covers element g%m_star blocks over, g/m_star in
    let element = |g: usize| (g % m_star) * block_size + g / m_star;
    let mut subsets: Vec<Vec<usize>> = Vec::new();
    let mut consumed = 0usize;
    while consumed < n {
        let take = (n - consumed).div_ceil(m_star);
        subsets.push((consumed..consumed + take).map(element).collect());
        consumed += take;
    }
    let first_block = subsets.len();
    for b in 0..m_star {
        subsets.push((b * block_size..(b + 1) * block_size).collect());
    }
    let mut sc = SetCoverInstance::new(n, subsets)?;
    sc.planted_cover = Some((first_block..first_block + m_star).collect());
    Ok(sc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solvers::TieBreak;
    use crate::setcover::greedy_setcover;

    fn greedy_size(n: u64, m_star: u64) -> (usize, Vec<u64>) {
        let sc = sc_adversarial(n, m_star).unwrap();
        let res = greedy_setcover(&sc, &TieBreak::LowestIndex).unwrap();
        (res.size(), res.steps.iter().map(|s| s.gain).collect())
    }

    #[test]
    fn degenerate_unit_blocks() {
        let sc = sc_adversarial(4, 4).unwrap();
        // 4 singleton adversarial sets plus the 4 blocks
        assert_eq!(sc.subsets.len(), 8);
        let res = greedy_setcover(&sc, &TieBreak::LowestIndex).unwrap();
        assert_eq!(res.size(), 4);
    }

    #[test]
    fn small_bound() {
        let (size, gains) = greedy_size(8, 2);
        let bound = (2.0 - 1.0) * ((8.0f64).ln() - (2.0f64).ln());
        assert!(size as f64 >= bound - 2.0);
        assert_eq!(gains, vec![4, 2, 1, 1]);
    }

    #[test]
    fn lemma2_scale() {
        let (size, gains) = greedy_size(1024, 4);
        let bound = 3.0 * ((1024.0f64).ln() - (4.0f64).ln());
        assert!(size as f64 >= bound, "greedy size {size} below {bound}");
        assert_eq!(gains[0], 1024 / 4);
        assert_eq!(*gains.last().unwrap(), 1);
        for w in gains.windows(2) {
            assert!(w[1] <= w[0]);
        }
    }

    #[test]
    fn tail_bound_tight_ratio() {
        // block size close to m_star, where per-block depletion would lose
        let (size, _) = greedy_size(1536, 24);
        let bound = 23.0 * ((1536.0f64).ln() - (24.0f64).ln()) - 24.0;
        assert!(size as f64 >= bound, "greedy size {size} below {bound}");
    }

    #[test]
    fn invalid_params() {
        assert!(sc_adversarial(8, 1).is_err());
        assert!(sc_adversarial(9, 2).is_err());
    }
}
