//! Reproducible randomness.
//!
//! Every stream is a `ChaCha20Rng` seeded through `SeedableRng::seed_from_u64`,
//! whose output is fixed by the `rand_chacha` stream definition and does not
//! depend on the platform. Per-trial seeds come from [`split_seed`], so trial
//! `i` draws the same numbers whatever order the trials run in.
//!
//! Binomial counts are drawn by inversion: one uniform `u` is compared with
//! the cumulative mass, summed outward from the mode, alternating between the
//! next value below and above it. The mass at the mode goes through `libm`
//! (`lgamma`, `exp`, `log`), and its neighbours follow from the exact ratio
//! `P(j+1)/P(j) = (n−j)/(j+1)·p/q`, so the result only depends on IEEE
//! arithmetic and a pure-Rust math library.

use rand_chacha::ChaCha20Rng;
pub use rand_core::RngCore;
use rand_core::SeedableRng;

/// Seed used when the caller does not supply one.
pub const DEFAULT_SEED: u64 = 0x5EED_7E4D_C0FF_EE01;

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 finalizer.
fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of stream `index` derived from `master`:
/// `mix64(master + (index + 1)·γ)` with the SplitMix64 increment `γ`.
pub fn split_seed(master: u64, index: u64) -> u64 {
    mix64(master.wrapping_add(index.wrapping_add(1).wrapping_mul(GOLDEN_GAMMA)))
}

pub fn stream(seed: u64) -> ChaCha20Rng {
    ChaCha20Rng::seed_from_u64(seed)
}

/// Uniform draw in `[0, 1)` with 53 random bits.
pub fn uniform(rng: &mut impl RngCore) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

fn ln_choose(n: u64, k: u64) -> f64 {
    let (n, k) = (n as f64, k as f64);
    libm::lgamma(n + 1.0) - libm::lgamma(k + 1.0) - libm::lgamma(n - k + 1.0)
}

/// One draw from `Binomial(n, p)`.
pub fn binomial(rng: &mut impl RngCore, n: u64, p: f64) -> u64 {
    if n == 0 || p <= 0.0 {
        return 0;
    }
    if p >= 1.0 {
        return n;
    }
    let q = 1.0 - p;
    let odds = p / q;
    let mode = (((n as f64 + 1.0) * p).floor() as u64).min(n);
    let p_mode = libm::exp(ln_choose(n, mode) + mode as f64 * libm::log(p) + (n - mode) as f64 * libm::log1p(-p));

    let mut u = uniform(rng) - p_mode;
    if u < 0.0 {
        return mode;
    }
    let (mut lo, mut p_lo) = (mode, p_mode);
    let (mut hi, mut p_hi) = (mode, p_mode);
    loop {
        let can_down = lo > 0 && p_lo > 0.0;
        let can_up = hi < n && p_hi > 0.0;
        if !can_down && !can_up {
            // rounding left a sliver of mass unassigned
            return mode;
        }
        if can_down {
            p_lo *= lo as f64 / ((n - lo + 1) as f64 * odds);
            lo -= 1;
            u -= p_lo;
            if u < 0.0 {
                return lo;
            }
        }
        if can_up {
            p_hi *= (n - hi) as f64 / (hi + 1) as f64 * odds;
            hi += 1;
            u -= p_hi;
            if u < 0.0 {
                return hi;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn split_seeds_are_distinct_and_stable() {
        let seeds: Vec<u64> = (0..1000).map(|i| split_seed(42, i)).collect();
        let mut sorted = seeds.clone();
        sorted.sort_unstable();
        sorted.dedup();
        assert_eq!(sorted.len(), seeds.len());
        assert_eq!(split_seed(42, 7), split_seed(42, 7));
        assert_ne!(split_seed(42, 7), split_seed(43, 7));
    }

    #[test]
    fn stream_is_reproducible() {
        let a: Vec<u64> = {
            let mut r = stream(9);
            (0..4).map(|_| r.next_u64()).collect()
        };
        let mut r = stream(9);
        assert!(a.iter().all(|x| *x == r.next_u64()));
    }

    #[test]
    fn binomial_edges() {
        let mut r = stream(1);
        assert_eq!(binomial(&mut r, 50, 0.0), 0);
        assert_eq!(binomial(&mut r, 50, 1.0), 50);
        assert_eq!(binomial(&mut r, 0, 0.3), 0);
        for _ in 0..200 {
            assert!(binomial(&mut r, 7, 0.999) <= 7);
        }
    }

    #[test]
    fn binomial_moments() {
        let mut r = stream(2);
        let (n, p, draws) = (40u64, 0.23, 40_000);
        let xs: Vec<f64> = (0..draws).map(|_| binomial(&mut r, n, p) as f64).collect();
        let mean = xs.iter().sum::<f64>() / draws as f64;
        let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (draws - 1) as f64;
        let (mu, s2) = (n as f64 * p, n as f64 * p * (1.0 - p));
        assert!((mean - mu).abs() < 4.0 * (s2 / draws as f64).sqrt());
        assert!((var / s2 - 1.0).abs() < 0.05);
    }

    #[test]
    fn binomial_matches_exact_pmf() {
        // chi-square against the exact pmf for a small n
        let mut r = stream(3);
        let (n, p, draws) = (6u64, 0.35, 60_000);
        let mut counts = [0u64; 7];
        for _ in 0..draws {
            counts[binomial(&mut r, n, p) as usize] += 1;
        }
        let chi2: f64 = (0..=n)
            .map(|k| {
                let e = draws as f64 * ln_choose(n, k).exp() * p.powi(k as i32) * (1.0 - p).powi((n - k) as i32);
                (counts[k as usize] as f64 - e).powi(2) / e
            })
            .sum();
        // 6 degrees of freedom, 99.9% quantile ≈ 22.46
        assert!(chi2 < 22.46, "chi2 = {chi2}");
    }
}
