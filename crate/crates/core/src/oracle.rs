//! Brute-force reference computations.
//!
//! Nothing here calls into the dynamic programs or the point counter it is
//! meant to check: sums are found by enumerating every tuple, points by
//! enumerating every `(x, y)`, polygons by sorting a flat slope list.

use std::collections::BTreeSet;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

/// Every `n_1^2 + ... + n_k^2` with `1 <= n_j <= max_part`, by visiting all
/// `max_part^k` tuples.
pub fn brute_force_sums(k: u32, max_part: u32) -> BTreeSet<u64> {
    let mut out = BTreeSet::new();
    if k == 0 || max_part == 0 {
        return out;
    }
    let mut tuple = vec![1u32; k as usize];
    loop {
        out.insert(tuple.iter().map(|&v| u64::from(v) * u64::from(v)).sum());
        let mut i = 0;
        loop {
            if i == tuple.len() {
                return out;
            }
            if tuple[i] < max_part {
                tuple[i] += 1;
                break;
            }
            tuple[i] = 1;
            i += 1;
        }
    }
}

/// Residues modulo `m` of [`brute_force_sums`].
pub fn brute_force_residues(m: u64, k: u32, max_part: u32) -> BTreeSet<u64> {
    brute_force_sums(k, max_part)
        .into_iter()
        .map(|s| s % m)
        .collect()
}

/// Sums of `k` squares with parts in `[1, max_part]`, enumerated by how
/// many parts take each value. Feasible for sixteen parts where the tuple
/// enumeration is not.
pub fn multiset_sums(k: u32, max_part: u32) -> BTreeSet<u64> {
    fn go(value: u32, max_part: u32, remaining: u32, acc: u64, out: &mut BTreeSet<u64>) {
        if value == max_part {
            out.insert(acc + u64::from(remaining) * u64::from(value * value));
            return;
        }
        for count in 0..=remaining {
            go(
                value + 1,
                max_part,
                remaining - count,
                acc + u64::from(count) * u64::from(value * value),
                out,
            );
        }
    }
    let mut out = BTreeSet::new();
    if k > 0 && max_part > 0 {
        go(1, max_part, k, 0, &mut out);
    }
    out
}

/// `#E(F_p)` for `y^2 = x^3 + a x + b`, counting every affine solution and
/// the point at infinity.
pub fn brute_force_point_count(p: u64, a: i64, b: i64) -> u64 {
    let a = a.rem_euclid(p as i64) as u64;
    let b = b.rem_euclid(p as i64) as u64;
    let mut count = 1;
    for x in 0..p {
        let rhs = (x * x % p * x + a * x + b) % p;
        for y in 0..p {
            if y * y % p == rhs {
                count += 1;
            }
        }
    }
    count
}

/// Ordinate at `x` of the lower convex polygon with the given slopes.
pub fn polygon_ordinate(slopes: &[Ratio<i64>], x: usize) -> Ratio<i64> {
    let mut sorted = slopes.to_vec();
    sorted.sort();
    sorted.iter().take(x).sum()
}

/// Every symmetric rank-22 weight-2 slope multiset whose smallest slope is
/// `alpha` and which has at most one further slope pair `beta < 1`, with
/// integral break points. Candidate `beta` range over fractions with
/// denominator up to 22.
pub fn symmetric_polygons_with_min_slope(alpha: Ratio<i64>) -> Vec<Vec<(Ratio<i64>, u32)>> {
    let one = Ratio::from_integer(1);
    let two = Ratio::from_integer(2);
    let mut betas: BTreeSet<Ratio<i64>> = BTreeSet::new();
    for den in 1..=22 {
        for num in 0..den {
            let b = Ratio::new(num, den);
            if b > alpha && b < one {
                betas.insert(b);
            }
        }
    }
    let integral = |multiset: &[(Ratio<i64>, u32)]| {
        let mut y = Ratio::from_integer(0);
        multiset.iter().all(|&(s, m)| {
            y += s * i64::from(m);
            y.is_integer()
        })
    };
    let mut out = Vec::new();
    for a in 1..=11u32 {
        // one pair
        let ones = 22 - 2 * a;
        let mut ms = vec![(alpha, a)];
        if ones > 0 {
            ms.push((one, ones));
        }
        ms.push((two - alpha, a));
        if alpha < one && integral(&ms) {
            out.push(ms);
        }
        // two pairs
        for &beta in &betas {
            for b in 1..=(11 - a) {
                let ones = 22 - 2 * a - 2 * b;
                let mut ms = vec![(alpha, a), (beta, b)];
                if ones > 0 {
                    ms.push((one, ones));
                }
                ms.push((two - beta, b));
                ms.push((two - alpha, a));
                if integral(&ms) {
                    out.push(ms);
                }
            }
        }
    }
    out
}

/// Degrees `2 n^2 d' - s` for `d'` in the range and `s` from the oracle
/// sum set.
pub fn enumerate_degrees(
    n: u32,
    dprimes: std::ops::RangeInclusive<u32>,
    sums: &BTreeSet<u64>,
) -> BTreeSet<i128> {
    let m = 2 * i128::from(n) * i128::from(n);
    dprimes
        .flat_map(|dp| {
            sums.iter()
                .map(move |&s| m * i128::from(dp) - i128::from(s))
        })
        .filter(|&d| d > 0)
        .collect()
}

/// One more than the largest degree in `[1, limit]` missing from
/// [`enumerate_degrees`] over `d' in [dprime_min, dprime_min + extra]`.
pub fn enumerated_threshold(n: u32, dprime_min: u32, sums: &BTreeSet<u64>, limit: i128) -> i128 {
    let m = 2 * i128::from(n) * i128::from(n);
    let extra = (limit / m) as u32 + 2;
    let reached = enumerate_degrees(n, dprime_min..=dprime_min + extra, sums);
    (1..=limit)
        .rev()
        .find(|d| !reached.contains(d))
        .map_or(1, |d| d + 1)
}

/// Values that are computed rather than quoted, regenerated from the
/// oracles above.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerivedFixtures {
    pub sums_k2_b2: Vec<u64>,
    pub residues_m7_k2_b2: Vec<u64>,
    pub residues_m162_k16_b3_count: usize,
    pub residues_m32_k16_b1: Vec<u64>,
    pub sums_k16_b4_count: usize,
    pub degrees_n9_d26_b4_coprime5: Vec<i128>,
    pub point_count_p5_a1_b1: u64,
    pub trace_p5_a1_b1: i64,
    pub enumerated_threshold_n9_d13_b4: i128,
    pub enumerated_threshold_n9_d26_b4: i128,
    pub height_ten_polygons: Vec<Vec<(String, u32)>>,
    pub self_intersection_n9_d26_ones: i128,
}

pub fn derived_fixtures() -> DerivedFixtures {
    let sums4 = multiset_sums(16, 4);
    let degrees = enumerate_degrees(9, 26..=26, &sums4)
        .into_iter()
        .filter(|d| d % 5 != 0)
        .collect();
    let height_ten = symmetric_polygons_with_min_slope(Ratio::new(9, 10))
        .into_iter()
        .map(|ms| ms.into_iter().map(|(s, m)| (s.to_string(), m)).collect())
        .collect();
    let n: i128 = 9;
    DerivedFixtures {
        sums_k2_b2: brute_force_sums(2, 2).into_iter().collect(),
        residues_m7_k2_b2: brute_force_residues(7, 2, 2).into_iter().collect(),
        residues_m162_k16_b3_count: multiset_sums(16, 3)
            .iter()
            .map(|s| s % 162)
            .collect::<BTreeSet<_>>()
            .len(),
        residues_m32_k16_b1: multiset_sums(16, 1).iter().map(|s| s % 32).collect(),
        sums_k16_b4_count: sums4.len(),
        degrees_n9_d26_b4_coprime5: degrees,
        point_count_p5_a1_b1: brute_force_point_count(5, 1, 1),
        trace_p5_a1_b1: 6 - brute_force_point_count(5, 1, 1) as i64,
        enumerated_threshold_n9_d13_b4: enumerated_threshold(9, 13, &sums4, 5000),
        enumerated_threshold_n9_d26_b4: enumerated_threshold(9, 26, &sums4, 5000),
        height_ten_polygons: height_ten,
        self_intersection_n9_d26_ones: 8 * n * n * 26 - 4 * 16,
    }
}
