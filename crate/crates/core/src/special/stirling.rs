//! Stirling numbers of the second kind, exact in integer arithmetic.

use crate::error::{Error, Result};

/// S(k, i): the number of partitions of a k-element set into i non-empty
/// blocks, via the alternating sum
///
/// ```text
/// S(k, i) = (1/i!) Σ_{j=0}^{i} (−1)^{i−j} C(i, j) j^k .
/// ```
///
/// All intermediate products are checked `i128`; the practical exact range is
/// roughly k ≤ 25 for all i (the largest intermediate is C(i,j)·j^k), and the
/// function reports `Overflow` precisely when that range is exceeded.
pub fn stirling2(k: u32, i: u32) -> Result<u128> {
    if i > k {
        return Err(Error::Domain(format!(
            "stirling2 requires 0 ≤ i ≤ k, got k={k}, i={i}"
        )));
    }
    if k == 0 {
        return Ok(1); // S(0,0) = 1, and i ≤ k forces i = 0
    }
    if i == 0 {
        return Ok(0);
    }

    let overflow = || Error::Overflow(format!("stirling2({k}, {i})"));

    let mut sum: i128 = 0;
    let mut binom: i128 = 1; // C(i, j), built multiplicatively (exact)
    for j in 0..=i {
        if j > 0 {
            binom = binom
                .checked_mul((i - j + 1) as i128)
                .ok_or_else(overflow)?
                / j as i128;
        }
        let jk = (j as i128).checked_pow(k).ok_or_else(overflow)?;
        let term = binom.checked_mul(jk).ok_or_else(overflow)?;
        if (i - j) % 2 == 0 {
            sum = sum.checked_add(term).ok_or_else(overflow)?;
        } else {
            sum = sum.checked_sub(term).ok_or_else(overflow)?;
        }
    }

    let mut fact: i128 = 1;
    for m in 2..=i as i128 {
        fact = fact.checked_mul(m).ok_or_else(overflow)?;
    }
    debug_assert!(sum >= 0 && sum % fact == 0);
    Ok((sum / fact) as u128)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute-force oracle: count surjections {1..k} → {1..i} over all i^k
    /// assignments, then divide by i! (labelled blocks → unlabelled).
    fn brute_force(k: u32, i: u32) -> u128 {
        if k == 0 {
            return if i == 0 { 1 } else { 0 };
        }
        if i == 0 {
            return 0;
        }
        let mut surjections = 0u128;
        let total = (i as u128).pow(k);
        for code in 0..total {
            let mut c = code;
            let mut used = vec![false; i as usize];
            for _ in 0..k {
                used[(c % i as u128) as usize] = true;
                c /= i as u128;
            }
            if used.iter().all(|&u| u) {
                surjections += 1;
            }
        }
        let fact: u128 = (1..=i as u128).product();
        surjections / fact
    }

    #[test]
    fn matches_brute_force_partition_counts() {
        assert_eq!(stirling2(3, 2).unwrap(), 3);
        assert_eq!(stirling2(4, 2).unwrap(), 7);
        for k in 0..=7 {
            for i in 0..=k {
                assert_eq!(stirling2(k, i).unwrap(), brute_force(k, i), "S({k},{i})");
            }
        }
    }

    #[test]
    fn diagonal_is_one() {
        for k in 0..=20 {
            assert_eq!(stirling2(k, k).unwrap(), 1);
        }
    }

    #[test]
    fn recurrence_holds_exactly_up_to_twenty() {
        // S(k, i) = i·S(k-1, i) + S(k-1, i-1)
        for k in 2..=20u32 {
            for i in 1..=k - 1 {
                let lhs = stirling2(k, i).unwrap();
                let rhs = i as u128 * stirling2(k - 1, i).unwrap()
                    + stirling2(k - 1, i - 1).unwrap();
                assert_eq!(lhs, rhs, "recurrence at ({k},{i})");
            }
        }
    }

    #[test]
    fn rejects_i_above_k_and_reports_overflow() {
        assert!(matches!(stirling2(3, 4), Err(Error::Domain(_))));
        assert!(matches!(stirling2(130, 64), Err(Error::Overflow(_))));
    }
}
