//! Deterministic polynomial corpora: exhaustive low-height enumerations in a
//! canonical order plus seeded random samples.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::poly::Poly;
use crate::rat::{rat, Rat};

/// Default coefficient set for exhaustive sweeps: {0, 1, -1, 2, -2, 1/2}.
pub fn default_coeffs() -> Vec<Rat> {
    vec![
        rat(0, 1),
        rat(1, 1),
        rat(-1, 1),
        rat(2, 1),
        rat(-2, 1),
        rat(1, 2),
    ]
}

/// Coefficient set {0, +-1, +-2, p, 1/p} used by the graded-criteria sweeps.
pub fn coeffs_with_p(p: u32) -> Vec<Rat> {
    let mut out = vec![rat(0, 1), rat(1, 1), rat(-1, 1), rat(2, 1), rat(-2, 1)];
    let p = i128::from(p);
    if !out.contains(&rat(p, 1)) {
        out.push(rat(p, 1));
    }
    out.push(rat(1, p));
    out
}

/// Every polynomial of degree <= max_deg with coefficients drawn from `coeffs`
/// (zero included once), ordered by degree and then lexicographically by the
/// coefficient indices with the constant coordinate fastest. The order is
/// part of the contract: first-counterexample reports depend on it.
pub fn exhaustive_polys(max_deg: usize, coeffs: &[Rat]) -> Vec<Poly<Rat>> {
    let mut out = Vec::new();
    out.push(Poly::zero());
    let nonzero: Vec<Rat> = coeffs.iter().copied().filter(|c| *c != rat(0, 1)).collect();
    for deg in 0..=max_deg {
        // counter over lower coefficients (full set), leading over nonzero
        let mut idx = vec![0usize; deg];
        loop {
            for lead in &nonzero {
                let mut cs: Vec<Rat> = idx.iter().map(|&i| coeffs[i]).collect();
                cs.push(*lead);
                out.push(Poly::new(cs));
            }
            let mut i = 0;
            loop {
                if i == deg {
                    break;
                }
                idx[i] += 1;
                if idx[i] < coeffs.len() {
                    break;
                }
                idx[i] = 0;
                i += 1;
            }
            if i == deg {
                break;
            }
        }
    }
    out
}

/// Seeded random polynomial of degree <= max_deg; coefficients are small
/// rationals with denominators from {1, 2, 3, 4, p}.
pub fn random_poly(rng: &mut ChaCha8Rng, max_deg: usize, p: u32) -> Poly<Rat> {
    let deg = rng.gen_range(0..=max_deg);
    let denoms = [1i128, 1, 2, 3, 4, i128::from(p)];
    let coeffs = (0..=deg)
        .map(|_| {
            let n = rng.gen_range(-8i128..=8);
            let d = denoms[rng.gen_range(0..denoms.len())];
            rat(n, d)
        })
        .collect();
    Poly::new(coeffs)
}

pub fn random_polys(n: usize, max_deg: usize, p: u32, seed: u64) -> Vec<Poly<Rat>> {
    let mut rng = rng_for(seed, 0);
    (0..n).map(|_| random_poly(&mut rng, max_deg, p)).collect()
}

/// Stream-derived generator: one scenario seed fans out to independent
/// per-check generators deterministically.
pub fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exhaustive_count_and_order() {
        let cs = default_coeffs();
        let polys = exhaustive_polys(3, &cs);
        // 1 (zero) + 5 + 5*6 + 5*36 + 5*216 = 6^4 = 1296
        assert_eq!(polys.len(), 1296);
        assert!(polys[0].is_zero());
        // constants come first, then linear with x leading the block
        assert_eq!(polys[1], Poly::from_ints(&[1]));
        assert_eq!(polys[6], Poly::from_ints(&[0, 1])); // x
        // unique
        let mut seen = std::collections::HashSet::new();
        for p in &polys {
            assert!(seen.insert(format!("{p}")), "duplicate {p}");
        }
    }

    #[test]
    fn random_polys_are_deterministic() {
        let a = random_polys(10, 6, 2, 42);
        let b = random_polys(10, 6, 2, 42);
        assert_eq!(a, b);
        let c = random_polys(10, 6, 2, 43);
        assert_ne!(a, c);
    }
}
