#![allow(dead_code)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use khs::numtheory::BigRat;

/// `B_0..=B_n` by the Akiyama-Tanigawa triangle, sign-corrected to `B_1 = -1/2`.
pub fn akiyama_tanigawa(n: usize) -> Vec<BigRational> {
    let mut row: Vec<BigRational> = Vec::with_capacity(n + 1);
    let mut out = Vec::with_capacity(n + 1);
    for m in 0..=n {
        row.push(BigRational::new(BigInt::one(), BigInt::from(m as u64 + 1)));
        for j in (1..=m).rev() {
            let d = &row[j - 1] - &row[j];
            row[j - 1] = d * BigRational::from_integer(BigInt::from(j as u64));
        }
        out.push(row[0].clone());
    }
    if n >= 1 {
        out[1] = -out[1].clone();
    }
    out
}

pub fn to_rational(b: &BigRat) -> BigRational {
    BigRational::new(b.numer().clone(), b.denom().clone())
}

/// `p | numerator(B_k)` from the exact rational value.
pub fn divides_numerator(p: u64, b: &BigRat) -> bool {
    b.numer().is_multiple_of(&BigInt::from(p))
}

/// Irregularity indices of `p` read off exact Bernoulli numerators.
pub fn exact_irregular_indices(p: u64) -> Vec<u64> {
    (2..=p.saturating_sub(3))
        .step_by(2)
        .filter(|&k| divides_numerator(p, &khs::numtheory::bernoulli_exact(k as usize)))
        .collect()
}

/// Irregularity indices of `p` from power sums: for even `k` with
/// `(p - 1) ∤ k`, `Σ_{j<p} j^k ≡ p B_k (mod p²)`.
pub fn power_sum_irregular_indices(p: u64) -> Vec<u64> {
    let m = (p as u128) * (p as u128);
    let top = p.saturating_sub(3);
    let mut sums = vec![0u128; (top / 2 + 1) as usize];
    for j in 1..p as u128 {
        let sq = j * j % m;
        let mut pw = 1u128;
        for k in (2..=top).step_by(2) {
            pw = pw * sq % m;
            let slot = &mut sums[(k / 2) as usize];
            *slot = (*slot + pw) % m;
        }
    }
    (2..=top).step_by(2).filter(|&k| sums[(k / 2) as usize] == 0).collect()
}

pub fn trial_is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// `v_p` of a nonzero rational, by repeated division.
pub fn valuation(x: &BigRational, p: u64) -> i64 {
    assert!(!x.is_zero());
    let p = BigInt::from(p);
    let count = |mut n: BigInt| {
        let mut v = 0;
        while (&n % &p).is_zero() {
            n /= &p;
            v += 1;
        }
        v
    };
    count(x.numer().abs()) - count(x.denom().abs())
}
