//! Exact power-series expansion of congruence-restricted Euler products and
//! the matching colored-integer partition counts.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::{One, Zero};

/// A truncated power series in one variable with exact nonnegative integer
/// coefficients; index = degree, length = max degree + 1.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PowerSeries {
    coeffs: Vec<BigUint>,
}

impl PowerSeries {
    /// The constant series 1, truncated after `max_degree`.
    pub fn one(max_degree: usize) -> PowerSeries {
        let mut coeffs = vec![BigUint::zero(); max_degree + 1];
        coeffs[0] = BigUint::one();
        PowerSeries { coeffs }
    }

    pub fn max_degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, m: usize) -> &BigUint {
        &self.coeffs[m]
    }

    pub fn coeffs(&self) -> &[BigUint] {
        &self.coeffs
    }

    /// Multiply in place by `1/(1 - q^d)`.  Ascending index order makes
    /// each slot accumulate the full geometric series contribution.
    pub fn mul_geometric_factor(&mut self, d: usize) {
        assert!(d >= 1);
        for i in 0..self.coeffs.len().saturating_sub(d) {
            let add = self.coeffs[i].clone();
            self.coeffs[i + d] += add;
        }
    }
}

/// Allowed part values for one color: positive integers whose residue
/// modulo `modulus` avoids every excluded class.
#[derive(Clone, Debug)]
pub struct ColorRule {
    pub modulus: u32,
    pub excluded: BTreeSet<u32>,
}

impl ColorRule {
    /// Normalizes signed residue classes into `0..modulus`.
    pub fn new(modulus: u32, excluded_signed: &[i64]) -> ColorRule {
        assert!(modulus >= 1);
        let m = modulus as i64;
        let excluded = excluded_signed
            .iter()
            .map(|&r| (r.rem_euclid(m)) as u32)
            .collect();
        ColorRule { modulus, excluded }
    }

    pub fn allows(&self, value: u64) -> bool {
        !self.excluded.contains(&((value % self.modulus as u64) as u32))
    }

    pub fn allowed_values(&self, max_value: u64) -> Vec<u64> {
        (1..=max_value).filter(|&v| self.allows(v)).collect()
    }
}

/// The three congruence rules of the rank-two level-`k` character product:
/// color 1 takes odd values; colors 2 and 3 exclude residue classes modulo
/// `2k+6`.
pub fn color_rules_rank2(k: u32) -> [ColorRule; 3] {
    let m = 2 * k as i64 + 6;
    let c1 = ColorRule::new(2, &[0]);
    let c2 = ColorRule::new(m as u32, &[0, 1, -1, 2, -2, 3, -3]);
    let c3 = ColorRule::new(
        m as u32,
        &[0, 1, -1, k as i64 + 1, -(k as i64 + 1), k as i64 + 2, -(k as i64 + 2), k as i64 + 3],
    );
    [c1, c2, c3]
}

/// Every allowed colored part `(value, color)` with `value <= max_value`,
/// colors numbered 1..=3, sorted by value then color.
pub fn colored_part_values_rank2(k: u32, max_value: u64) -> Vec<(u64, u8)> {
    let rules = color_rules_rank2(k);
    let mut out = Vec::new();
    for v in 1..=max_value {
        for (ci, rule) in rules.iter().enumerate() {
            if rule.allows(v) {
                out.push((v, ci as u8 + 1));
            }
        }
    }
    out
}

/// The rank-two level-`k` character product expanded exactly through
/// `max_degree`: one geometric factor per allowed colored part value.
pub fn character_product_rank2(k: u32, max_degree: usize) -> PowerSeries {
    let mut series = PowerSeries::one(max_degree);
    for rule in color_rules_rank2(k).iter() {
        for v in rule.allowed_values(max_degree as u64) {
            series.mul_geometric_factor(v as usize);
        }
    }
    series
}

/// Counts partitions of `m` into allowed colored parts by direct search,
/// independently of the series expansion.
pub fn count_three_color_partitions(k: u32, m: u64) -> u64 {
    let parts = colored_part_values_rank2(k, m);
    // parts are distinct (value, color) kinds usable with repetition;
    // recurse over the kind list with a non-increasing remaining budget
    fn rec(parts: &[(u64, u8)], idx: usize, remaining: u64) -> u64 {
        if remaining == 0 {
            return 1;
        }
        if idx == parts.len() {
            return 0;
        }
        let v = parts[idx].0;
        let mut total = rec(parts, idx + 1, remaining);
        let mut used = v;
        while used <= remaining {
            total += rec(parts, idx + 1, remaining - used);
            used += v;
        }
        total
    }
    rec(&parts, 0, m)
}

/// Expands the unrestricted partition generating function, for oracle use.
pub fn unrestricted_partition_series(max_degree: usize) -> PowerSeries {
    let mut series = PowerSeries::one(max_degree);
    for d in 1..=max_degree {
        series.mul_geometric_factor(d);
    }
    series
}

#[cfg(test)]
mod test {
    use super::*;

    #[test]
    fn unrestricted_series_gives_partition_numbers() {
        let s = unrestricted_partition_series(10);
        let got: Vec<u64> = s
            .coeffs()
            .iter()
            .map(|c| {
                let digits = c.to_u64_digits();
                if digits.is_empty() { 0 } else { digits[0] }
            })
            .collect();
        assert_eq!(got, alloc::vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]);
    }

    #[test]
    fn rank2_level2_allowed_values() {
        let rules = color_rules_rank2(2);
        assert_eq!(rules[0].allowed_values(8), alloc::vec![1, 3, 5, 7]);
        assert_eq!(rules[1].allowed_values(8), alloc::vec![4, 5, 6]);
        assert_eq!(rules[2].allowed_values(8), alloc::vec![2, 8]);
        assert_eq!(
            colored_part_values_rank2(2, 8),
            alloc::vec![
                (1, 1),
                (2, 3),
                (3, 1),
                (4, 2),
                (5, 1),
                (5, 2),
                (6, 2),
                (7, 1),
                (8, 3)
            ]
        );
    }

    #[test]
    fn rank2_level1_third_color_is_sparse() {
        // modulo 8 the third color excludes 0, 1, 7, 2, 6, 3, 5, 4: all
        // residues, so no values are allowed at all
        let rules = color_rules_rank2(1);
        assert!(rules[2].allowed_values(40).is_empty());
        // the second color allows only 4 mod 8
        assert_eq!(rules[1].allowed_values(20), alloc::vec![4, 12, 20]);
    }

    #[test]
    fn level2_product_matches_golden_coefficients() {
        let s = character_product_rank2(2, 8);
        let got: Vec<u64> = s
            .coeffs()
            .iter()
            .map(|c| {
                let digits = c.to_u64_digits();
                if digits.is_empty() { 0 } else { digits[0] }
            })
            .collect();
        assert_eq!(got, alloc::vec![1, 1, 2, 3, 5, 8, 12, 17, 25]);
    }

    #[test]
    fn product_coefficients_equal_direct_counts() {
        for k in 1..=3u32 {
            let s = character_product_rank2(k, 18);
            for m in 0..=18u64 {
                let direct = count_three_color_partitions(k, m);
                assert_eq!(
                    s.coeff(m as usize),
                    &num_bigint::BigUint::from(direct),
                    "k={} m={}",
                    k,
                    m
                );
            }
        }
    }
}
