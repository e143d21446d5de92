#![allow(dead_code)]

use k3strata::RationalSlope;
use num_rational::Ratio;
use rand::seq::SliceRandom;
use rand::Rng;

/// A random symmetric rank-22 weight-2 slope list with integral break
/// points: pairs `a/b`, `2 - a/b` with multiplicity a multiple of `b`,
/// padded with slope 1. Returned flat and shuffled.
pub fn random_valid_k3_slopes<R: Rng>(rng: &mut R) -> Vec<Ratio<i64>> {
    let mut flat = Vec::with_capacity(22);
    let mut remaining = 22u32;
    while remaining >= 2 && rng.gen_bool(0.6) {
        let den = rng.gen_range(1..=11u32);
        let max_k = remaining / (2 * den);
        if max_k == 0 {
            continue;
        }
        let k = rng.gen_range(1..=max_k);
        let num = rng.gen_range(0..den) as i64;
        let slope = Ratio::new(num, den as i64);
        let mult = k * den;
        for _ in 0..mult {
            flat.push(slope);
            flat.push(Ratio::from_integer(2) - slope);
        }
        remaining -= 2 * mult;
    }
    flat.extend(std::iter::repeat_n(
        Ratio::from_integer(1),
        remaining as usize,
    ));
    flat.shuffle(rng);
    flat
}

/// Breaks one invariant of a valid slope list.
pub fn mutate<R: Rng>(rng: &mut R, slopes: &[Ratio<i64>]) -> Vec<Ratio<i64>> {
    let mut out = slopes.to_vec();
    match rng.gen_range(0..4) {
        0 => {
            // move one unit of multiplicity to a different slope
            let i = rng.gen_range(0..out.len());
            let old = out[i];
            let mut new = old;
            while new == old {
                new = Ratio::new(rng.gen_range(0..=44), 22);
            }
            out[i] = new;
        }
        1 => out.push(Ratio::from_integer(1)),
        2 => {
            out.pop();
        }
        _ => {
            let i = rng.gen_range(0..out.len());
            let j = (i + 1) % out.len();
            let off = Ratio::new(rng.gen_range(1..=5), 1);
            out[i] = Ratio::from_integer(2) + off;
            out[j] = -off;
        }
    }
    out
}

pub fn as_multiset(slopes: &[Ratio<i64>]) -> Vec<(RationalSlope, u32)> {
    slopes
        .iter()
        .map(|&s| (RationalSlope::from_ratio(s), 1))
        .collect()
}

pub fn hodge_flat() -> Vec<Ratio<i64>> {
    let mut v = vec![Ratio::from_integer(0)];
    v.extend(std::iter::repeat_n(Ratio::from_integer(1), 20));
    v.push(Ratio::from_integer(2));
    v
}
