use alloc::vec::Vec;

use crate::numtheory::Rational;

/// Result of the exhaustive sweep over admissible image sizes and coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExtremalSummary {
    /// Number of (profile pair, coefficients, `-I`) configurations evaluated.
    pub configurations: u64,
    pub max_total: Rational,
    /// Maximum when primes of defect `(3,2)` and `(2,3)` both occur.
    pub max_two_sided: Rational,
    /// `|G(4)|`, `|G'(4)|` and the level-4 coefficients at the global maximum.
    pub argmax: ([u64; 4], [u64; 4], [(u8, u8); 3], bool),
}

/// Coefficient pairs, in halves: `(0,0), (1/2,0), (0,1/2), (1/2,1/2), (0,1), (1,0)`.
const PAIRS: [(u8, u8); 6] = [(0, 0), (1, 0), (0, 1), (1, 1), (0, 2), (2, 0)];

/// Size chains `|G(4)|, ..., |G(32)|` allowed for a non-CM image with a
/// rational 2-torsion point: `|G(2^m)|` divides `2^{4m-3}`, has index dividing
/// 96 in `GL_2(Z/2^m)` (so `|G(2^m)| ≥ 16^{m-2}`), and each step multiplies by
/// 2, 4, 8 or 16.
fn size_chains() -> Vec<[u64; 4]> {
    let mut out = Vec::new();
    let mut chain = [0u64; 4];
    fn rec(m: u32, chain: &mut [u64; 4], out: &mut Vec<[u64; 4]>) {
        if m > 5 {
            out.push(*chain);
            return;
        }
        let max = 1u64 << (4 * m - 3);
        let min = 1u64 << (4 * (m - 2));
        let mut s = 1u64;
        while s <= max {
            let step_ok = m == 2 || {
                let r = s / chain[m as usize - 3];
                s % chain[m as usize - 3] == 0 && matches!(r, 2 | 4 | 8 | 16)
            };
            if s >= min && step_ok {
                chain[m as usize - 2] = s;
                rec(m + 1, chain, out);
            }
            s *= 2;
        }
    }
    rec(2, &mut chain, &mut out);
    out
}

/// Whether the coefficients fit the sizes at level `2^m`: a nonzero
/// coefficient at level 4 needs `|G(4)| ≥ 4` (determinants are equidistributed
/// and `±I` are present), and both being nonzero needs `|G(4)|, |G'(4)| ≥ 8`
/// (both images are then 2-groups containing three elements of determinant 1).
fn level4_ok(s: u64, sp: u64, pair: (u8, u8)) -> bool {
    (pair.0 == 0 || s >= 4) && (pair.1 == 0 || sp >= 4) && (pair.0 == 0 || pair.1 == 0 || s >= 8 && sp >= 8)
}

/// Sweep every admissible configuration and return the extreme totals.
///
/// Rules: sizes of `G` and `G'` differ by a factor of at most 2 at each
/// level; `c + c' ≤ 1`; a coefficient 1 means `-I` is missing from the other
/// image, hence from both full images, so the tail vanishes and every later
/// coefficient is 0; with `-I` in the images the tail is
/// `8/15 (1/|G(32)| + 1/|G'(32)|)` and no coefficient is 1.
pub fn extremal_sweep() -> ExtremalSummary {
    // Everything is an integer multiple of 1 / (15·2^18).
    const SCALE: u64 = 15 << 18;
    let chains = size_chains();
    let mut configurations = 0u64;
    let mut best = (0u64, ([0; 4], [0; 4], [(0, 0); 3], false));
    let mut best_two_sided = 0u64;
    for g in &chains {
        for gp in &chains {
            if (0..4).any(|i| g[i] != gp[i] && g[i] != 2 * gp[i] && gp[i] != 2 * g[i]) {
                continue;
            }
            for minus_i in [false, true] {
                let tail = if minus_i { 8 * (SCALE / g[3] + SCALE / gp[3]) / 15 } else { 0 };
                for a in PAIRS {
                    for b in PAIRS {
                        for c in PAIRS {
                            let levels = [a, b, c];
                            if !level4_ok(g[0], gp[0], a) {
                                continue;
                            }
                            let ones = levels.iter().position(|&(x, y)| x == 2 || y == 2);
                            if let Some(k) = ones {
                                if minus_i || levels[k + 1..].iter().any(|&l| l != (0, 0)) {
                                    continue;
                                }
                            }
                            configurations += 1;
                            let head: u64 = levels
                                .iter()
                                .zip(0..)
                                .map(|(&(x, y), i)| x as u64 * SCALE / (2 * g[i]) + y as u64 * SCALE / (2 * gp[i]))
                                .sum();
                            let total = head + tail;
                            if total > best.0 {
                                best = (total, (*g, *gp, levels, minus_i));
                            }
                            if a == (1, 1) {
                                best_two_sided = best_two_sided.max(total);
                            }
                        }
                    }
                }
            }
        }
    }
    let r = |n: u64| Rational::new(n.into(), SCALE.into());
    ExtremalSummary {
        configurations,
        max_total: r(best.0),
        max_two_sided: r(best_two_sided),
        argmax: best.1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numtheory::rat;

    #[test]
    fn chains_respect_the_rules() {
        let cs = size_chains();
        assert!(cs.contains(&[32, 512, 8192, 131072]));
        assert!(cs.contains(&[8, 16, 256, 4096]));
        assert!(cs.iter().all(|c| c[1] >= 16 && c[2] >= 256 && c[3] >= 4096));
    }

    #[test]
    fn sweep_extremes() {
        let s = extremal_sweep();
        assert_eq!(s.max_total, rat(1, 4));
        assert_eq!(s.max_two_sided, rat(23, 120));
        // attained by c_4 = 1 (or c'_4 = 1) on an image of size 4
        let (g, gp, levels, minus_i) = s.argmax;
        assert!(!minus_i);
        match levels[0] {
            (2, 0) => assert_eq!(g[0], 4),
            (0, 2) => assert_eq!(gp[0], 4),
            other => panic!("unexpected maximizer {other:?}"),
        }
    }
}
