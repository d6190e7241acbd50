//! Closed-form bounds and classifications for skeleton invariants.
//!
//! All arithmetic is exact: big integers for the counting bounds, and
//! explicit integer floors everywhere a rounded division appears (written
//! `[x]` in the source formulas). No floating point is used.

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::InvariantError;
use crate::fplinalg::Prime;

/// A minimal solution of the two-extra-vertex system certifying
/// `s_p(Δ^m_(k)) ≥ 2`.
///
/// With the first `m − 1` vertices pinned to basis vectors of `F_p^{m−1}`,
/// a map needs two more images; `x1` counts coordinates nonzero only in
/// the first, `x2` nonzero only in the second, `x11` nonzero in both. A
/// nondegenerate map exists exactly when the system
///
/// ```text
/// x1 + x11 ≥ k+1,   x2 + x11 ≥ k+1,
/// x1 + x2 + x11 − [(x11 + p − 2)/(p − 1)] ≥ k
/// ```
///
/// has a solution with `x1 + x2 + x11 ≤ m − 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sp2Certificate {
    pub x1: u32,
    pub x2: u32,
    pub x11: u32,
    /// `[(x11 + p − 2)/(p − 1)]`: the largest number of equal coordinates
    /// of the second image among the `x11` shared positions when the
    /// nonzero residues are distributed evenly (the quantity subtracted in
    /// the third constraint).
    pub multiplicity: u32,
}

impl Sp2Certificate {
    /// `x1 + x2 + x11`, the quantity minimized by [`solve_sp2_system`].
    pub fn sum(&self) -> u32 {
        self.x1 + self.x2 + self.x11
    }

    /// Checks the full constraint system at `(k, p)`.
    pub fn satisfies_system(&self, k: u32, p: Prime) -> bool {
        let q = p.get();
        let multiplicity = (self.x11 + q - 2) / (q - 1);
        self.multiplicity == multiplicity
            && self.x1 + self.x11 > k
            && self.x2 + self.x11 > k
            && self.sum() - multiplicity >= k
    }
}

/// Whether `s_p(Δ^m_(k)) ≥ 2`, by the threshold criterion:
/// `m ≥ k + [k/p] + 2` when `k ≢ p−1 (mod p)`, and
/// `m ≥ k + [k/p] + 3` when `k ≡ p−1 (mod p)`.
///
/// Expects `k ≤ m`; `m` below 2 never reaches the threshold.
pub fn sp_geq_two(m: u32, k: u32, p: Prime) -> bool {
    debug_assert!(k <= m);
    let q = p.get();
    let needed = if k % q == q - 1 {
        k + k / q + 3
    } else {
        k + k / q + 2
    };
    m >= needed
}

/// The minimal-sum solution of the [`Sp2Certificate`] system, when one
/// fits inside `m − 1` coordinates; `None` otherwise (then `s_p ≤ 1`).
///
/// Writing `k = αp + β`: for `β ≤ p−2` the minimum is
/// `x1 = x2 = α, x11 = k+1−α` with sum `k + [k/p] + 1`; for `β = p−1` it
/// is `x1 = x2 = α+1, x11 = k−α` with sum `k + [k/p] + 2`.
pub fn solve_sp2_system(m: u32, k: u32, p: Prime) -> Option<Sp2Certificate> {
    debug_assert!(k <= m);
    let q = p.get();
    let alpha = k / q;
    let (x1, x11, expected_sum) = if k % q == q - 1 {
        (alpha + 1, k - alpha, k + alpha + 2)
    } else {
        (alpha, k + 1 - alpha, k + alpha + 1)
    };
    let certificate = Sp2Certificate {
        x1,
        x2: x1,
        x11,
        multiplicity: (x11 + q - 2) / (q - 1),
    };
    debug_assert_eq!(certificate.sum(), expected_sum);
    debug_assert!(certificate.satisfies_system(k, p));
    (m >= 1 && certificate.sum() < m).then_some(certificate)
}

/// Whether `s_p(Δ^m_(k)) = 1`: true exactly when
/// `m − [m/(p+1)] − 1 ≤ k ≤ m−1` (for `k ≢ p−1 (mod p)`) or
/// `p·[(m−1)/(p+1)] + p − 1 ≤ k ≤ m−1` (for `k ≡ p−1 (mod p)`).
pub fn classification_sp1(m: u32, k: u32, p: Prime) -> bool {
    if m < 1 || k + 1 > m {
        return false;
    }
    let q = p.get();
    if k % q == q - 1 {
        q * ((m - 1) / (q + 1)) + q - 1 <= k
    } else {
        m - m / (q + 1) - 1 <= k
    }
}

/// `1 + C(m,0) + (p−1)C(m,1) + ⋯ + (p−1)^k C(m,k)`, the argument of the
/// counting bound's logarithm.
pub(crate) fn log_argument(m: u32, k: u32, p: Prime) -> BigUint {
    let mut sum = BigUint::one();
    let mut term = BigUint::one();
    let scale = BigUint::from(p.get() - 1);
    for j in 0..=k.min(m) {
        if j > 0 {
            // C(m,j) = C(m,j−1)·(m−j+1)/j, scaled by another (p−1).
            term = term * (m - j + 1) * &scale / j;
        }
        sum += &term;
    }
    sum
}

/// The least `n` with `p^n ≥ log_argument(m,k,p)`.
///
/// This is simultaneously the dimension in the counting lower bound and
/// the least target dimension where [`super::greedy_skeleton_map`]'s
/// precondition holds — the greedy construction is that bound's proof.
pub(crate) fn log_dimension(m: u32, k: u32, p: Prime) -> u32 {
    let target = log_argument(m, k, p);
    let base = BigUint::from(p.get());
    let mut n = 0u32;
    let mut power = BigUint::one();
    while power < target {
        power *= &base;
        n += 1;
    }
    n
}

/// Whether the greedy construction reaches `X(F_p^n)`, i.e. whether
/// `(p−1)C(m,1) + ⋯ + (p−1)^k C(m,k) < p^n − 1`.
pub(crate) fn greedy_inequality_holds(m: u32, k: u32, p: Prime, n: u32) -> bool {
    // The displayed sum is log_argument − 2, so the strict inequality is
    // equivalent to p^n ≥ log_argument.
    BigUint::from(p.get()).pow(n) >= log_argument(m, k, p)
}

/// The counting lower bound
/// `s_p(Δ^m_(k)) ≥ m + 1 − ⌈log_p(log_argument(m,k,p))⌉`,
/// computed in exact integer arithmetic (may be nonpositive for small
/// skeleta, where it carries no information).
pub fn sp_lower_bound_log(m: u32, k: u32, p: Prime) -> i64 {
    debug_assert!(k <= m);
    i64::from(m) + 1 - i64::from(log_dimension(m, k, p))
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// The least prime `p` with `p² · 4^r > (r+1)^{r+1}` for `r = m − s2`:
/// every complex on `m` vertices with mod-2 invariant `s2` then satisfies
/// `s_p ≥ s2`, because 0/1 witness matrices have integer determinants
/// below the Hadamard bound `(r+1)^{(r+1)/2} / 2^r < p`.
///
/// Exact integer comparison throughout (squaring removes the half power).
pub fn min_safe_prime(m: u32, s2: u32) -> Result<u64, InvariantError> {
    if s2 > m {
        return Err(InvariantError::Domain(format!(
            "s2 = {s2} exceeds the vertex bound m = {m}"
        )));
    }
    let r = m - s2;
    if r > 64 {
        return Err(InvariantError::Domain(format!(
            "m − s2 = {r} is out of the supported range (≤ 64)"
        )));
    }
    let rhs = BigUint::from(r + 1).pow(r + 1);
    let four_r = BigUint::from(4u32).pow(r);
    // p must satisfy p² > rhs/4^r; start scanning at the floor square root
    // (which itself always fails the strict inequality).
    let start = (&rhs / &four_r).sqrt();
    let mut candidate = u64::try_from(&start)
        .map_err(|_| InvariantError::Domain(format!("threshold for r = {r} exceeds u64")))?
        .max(2);
    loop {
        if is_prime_u64(candidate) && BigUint::from(candidate) * candidate * &four_r > rhs {
            return Ok(candidate);
        }
        candidate += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prime(q: u32) -> Prime {
        Prime::new(q).unwrap()
    }

    #[test]
    fn sp_geq_two_reference_cases() {
        // k = 3 ≢ 2 (mod 3): threshold 3 + 1 + 2 = 6.
        assert!(sp_geq_two(6, 3, prime(3)));
        // k = 2 ≡ 2 (mod 3): threshold 2 + 0 + 3 = 5 > 4.
        assert!(!sp_geq_two(4, 2, prime(3)));
        // The top skeleton below the full simplex always has s_p = 1.
        for q in [2u32, 3, 5, 7] {
            for m in 2..=12 {
                assert!(!sp_geq_two(m, m - 1, prime(q)), "m={m} p={q}");
            }
        }
    }

    #[test]
    fn solve_sp2_reference_cases() {
        // (6,3,3): k = 3 = 1·3 + 0, minimal solution (1,1,3) of sum 5.
        let c = solve_sp2_system(6, 3, prime(3)).unwrap();
        assert_eq!((c.x1, c.x2, c.x11), (1, 1, 3));
        assert_eq!(c.sum(), 5);
        assert_eq!(c.multiplicity, 2);
        // (4,2,3): k = 2 ≡ 2 (mod 3) needs sum 4 > m−1 = 3.
        assert!(solve_sp2_system(4, 2, prime(3)).is_none());
        // (5,1,2): k = 1 ≡ 1 (mod 2), minimal solution (1,1,1) of sum 3.
        let c = solve_sp2_system(5, 1, prime(2)).unwrap();
        assert_eq!((c.x1, c.x2, c.x11), (1, 1, 1));
        assert_eq!(c.sum(), 3);
    }

    #[test]
    fn solve_sp2_matches_exhaustive_minimization() {
        // Brute-force the true minimum of x1+x2+x11 over the system and
        // compare against the closed-form solution, for a dense grid.
        for q in [2u32, 3, 5, 7] {
            let p = prime(q);
            for m in 1..=14u32 {
                for k in 0..=m {
                    let best = (0..=m)
                        .flat_map(|x1| (0..=m).map(move |x2| (x1, x2)))
                        .flat_map(|(x1, x2)| (0..=m).map(move |x11| (x1, x2, x11)))
                        .filter(|&(x1, x2, x11)| {
                            let mult = (x11 + q - 2) / (q - 1);
                            x1 + x11 > k && x2 + x11 > k && x1 + x2 + x11 - mult >= k
                        })
                        .map(|(x1, x2, x11)| x1 + x2 + x11)
                        .min()
                        .expect("the system always has solutions for x11 large");
                    match solve_sp2_system(m, k, p) {
                        Some(c) => {
                            assert!(c.satisfies_system(k, p));
                            assert_eq!(c.sum(), best, "m={m} k={k} p={q}");
                            assert!(c.sum() < m);
                        }
                        None => {
                            assert!(best > m.saturating_sub(1), "m={m} k={k} p={q}");
                        }
                    }
                    // The feasibility threshold and the solver agree.
                    assert_eq!(
                        solve_sp2_system(m, k, p).is_some(),
                        sp_geq_two(m, k, p),
                        "m={m} k={k} p={q}"
                    );
                }
            }
        }
    }

    #[test]
    fn classification_matches_small_skeleta_facts() {
        // s_p(Δ^m_(m−1)) = 1 for all m ≥ 2.
        for q in [2u32, 3, 5, 7] {
            for m in 2..=15 {
                assert!(classification_sp1(m, m - 1, prime(q)), "m={m} p={q}");
                // s_p(Δ^m_(m−2)) = 1 exactly when m ≥ p + 1.
                assert_eq!(classification_sp1(m, m - 2, prime(q)), m > q, "m={m} p={q}");
            }
        }
        // The full simplex has value 0, never 1.
        assert!(!classification_sp1(4, 4, prime(3)));
    }

    #[test]
    fn classification_complements_sp_geq_two() {
        // For k ≤ m−1 the invariant is at least 1, so "= 1" must be the
        // exact complement of "≥ 2".
        for q in [2u32, 3, 5, 7] {
            let p = prime(q);
            for m in 1..=20u32 {
                for k in 0..m {
                    assert_eq!(
                        classification_sp1(m, k, p),
                        !sp_geq_two(m, k, p),
                        "m={m} k={k} p={q}"
                    );
                }
            }
        }
    }

    #[test]
    fn log_lower_bound_reference_values() {
        // 1 + 1 + 6 + 15 = 23 → least n with 2^n ≥ 23 is 5 → 7 − 5 = 2.
        assert_eq!(sp_lower_bound_log(6, 2, prime(2)), 2);
        // 1 + 1 + 10 + 40 = 52 → least n with 3^n ≥ 52 is 4 → 6 − 4 = 2.
        assert_eq!(sp_lower_bound_log(5, 2, prime(3)), 2);
        // k = 0: argument is 2, so n = 1 and the bound is m.
        for q in [2u32, 3, 5, 7] {
            for m in 1..=9 {
                assert_eq!(sp_lower_bound_log(m, 0, prime(q)), i64::from(m));
            }
        }
    }

    #[test]
    fn log_argument_matches_direct_sum() {
        // Cross-check the incremental binomial evaluation.
        let direct = |m: u32, k: u32, q: u32| -> u64 {
            let binom =
                |m: u64, j: u64| -> u64 { (0..j).fold(1u64, |acc, t| acc * (m - t) / (t + 1)) };
            1 + (0..=k as u64)
                .map(|j| u64::from(q - 1).pow(j as u32) * binom(m as u64, j))
                .sum::<u64>()
        };
        for q in [2u32, 3, 5] {
            for m in 1..=10 {
                for k in 0..=m {
                    assert_eq!(
                        log_argument(m, k, prime(q)),
                        BigUint::from(direct(m, k, q)),
                        "m={m} k={k} q={q}"
                    );
                }
            }
        }
    }

    #[test]
    fn greedy_inequality_matches_log_dimension() {
        for q in [2u32, 3, 5] {
            let p = prime(q);
            for m in 1..=9 {
                for k in 0..=m {
                    let n = log_dimension(m, k, p);
                    assert!(greedy_inequality_holds(m, k, p, n));
                    if n > 0 {
                        assert!(!greedy_inequality_holds(m, k, p, n - 1));
                    }
                }
            }
        }
    }

    #[test]
    fn min_safe_prime_reference_values() {
        // r = m − s2; compare p²·4^r against (r+1)^{r+1}.
        assert_eq!(min_safe_prime(3, 2).unwrap(), 2); // r=1: 16 > 4
        assert_eq!(min_safe_prime(5, 3).unwrap(), 2); // r=2: 64 > 27
        assert_eq!(min_safe_prime(6, 3).unwrap(), 3); // r=3: 256 = 256 fails for 2
        assert_eq!(min_safe_prime(7, 3).unwrap(), 5); // r=4: 2304 < 3125 for 3
        assert_eq!(min_safe_prime(4, 4).unwrap(), 2); // r=0: 4 > 1
        assert!(min_safe_prime(2, 3).is_err());
    }
}
