//! Bernoulli numbers under the convention `t/(e^t - 1) = sum B_n t^n/n!`, so `B_1 = -1/2`.
//!
//! Exact values come from the binomial recurrence
//! `sum_{k=0}^{m} C(m+1, k) B_k = 0`, run on integers scaled by a common
//! denominator and memoized in a process-wide [`BernoulliTable`]. Residues
//! modulo a prime come from Voronoi's congruence and never touch the exact values.

use std::fs;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;
use std::sync::{Mutex, OnceLock, RwLock};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::primes::{inv_mod, mul_mod, pow_mod, primes_up_to, primitive_root, require_odd_prime};
use super::rational::BigRat;
use crate::error::{Error, Result};

/// Memo table of exact Bernoulli numbers `B_0 .. B_{len-1}`.
///
/// Readers take a shared lock and only ever see fully computed prefixes.
/// Extensions are computed outside the read lock by one writer at a time and
/// published with a single append.
#[derive(Debug, Default)]
pub struct BernoulliTable {
    values: RwLock<Vec<BigRat>>,
    writer: Mutex<()>,
}

impl BernoulliTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// The process-wide table used by [`bernoulli_exact`].
    pub fn global() -> &'static BernoulliTable {
        static GLOBAL: OnceLock<BernoulliTable> = OnceLock::new();
        GLOBAL.get_or_init(BernoulliTable::new)
    }

    /// Number of memoized entries.
    pub fn len(&self) -> usize {
        self.values.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, n: usize) -> BigRat {
        if let Some(v) = self.values.read().unwrap().get(n) {
            return v.clone();
        }
        self.extend_to(n);
        self.values.read().unwrap()[n].clone()
    }

    /// Clones `B_0 ..= B_n`.
    pub fn prefix(&self, n: usize) -> Vec<BigRat> {
        self.extend_to(n);
        self.values.read().unwrap()[..=n].to_vec()
    }

    /// Ensures `B_0 ..= B_n` are memoized.
    pub fn extend_to(&self, n: usize) {
        if self.len() > n {
            return;
        }
        let _guard = self.writer.lock().unwrap();
        let known = self.values.read().unwrap().clone();
        if known.len() > n {
            return;
        }
        let fresh = extend_recurrence(&known, n);
        self.values.write().unwrap().extend(fresh);
    }

    /// Merges records from a cache file. Missing files are not an error.
    ///
    /// Records must be `n<TAB>num<TAB>den` with strictly ascending `n`. Only the
    /// contiguous prefix starting at `n = 0` is used, and every loaded value is
    /// checked against the vanishing of odd indices and von Staudt-Clausen.
    pub fn load(&self, path: &Path) -> Result<usize> {
        let file = match fs::File::open(path) {
            Ok(f) => f,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(0),
            Err(e) => return Err(e.into()),
        };
        let bad = |line: usize, reason: String| Error::Cache {
            path: path.to_path_buf(),
            line,
            reason,
        };
        let mut loaded: Vec<BigRat> = Vec::new();
        let mut last: Option<u64> = None;
        for (i, line) in BufReader::new(file).lines().enumerate() {
            let line = line?;
            let lineno = i + 1;
            if line.trim().is_empty() {
                continue;
            }
            let mut parts = line.split('\t');
            let (Some(n), Some(num), Some(den), None) =
                (parts.next(), parts.next(), parts.next(), parts.next())
            else {
                return Err(bad(lineno, "expected three tab-separated fields".into()));
            };
            let n: u64 = n.parse().map_err(|e| bad(lineno, format!("index: {e}")))?;
            if last.is_some_and(|l| n <= l) {
                return Err(bad(lineno, format!("index {n} is not ascending")));
            }
            last = Some(n);
            let num: BigInt = num.parse().map_err(|e| bad(lineno, format!("numerator: {e}")))?;
            let den: BigInt = den.parse().map_err(|e| bad(lineno, format!("denominator: {e}")))?;
            if !den.is_positive() {
                return Err(bad(lineno, "denominator must be positive".into()));
            }
            if n as usize != loaded.len() {
                // gap: keep the contiguous prefix only
                break;
            }
            let value = BigRat::new(num.clone(), den.clone());
            if value.numer() != &num || value.denom() != &den {
                return Err(bad(lineno, "fraction is not reduced".into()));
            }
            if !plausible(n, &value) {
                return Err(bad(lineno, format!("value for B_{n} fails the structural checks")));
            }
            loaded.push(value);
        }
        let _guard = self.writer.lock().unwrap();
        let mut values = self.values.write().unwrap();
        if loaded.len() > values.len() {
            let count = loaded.len();
            *values = loaded;
            Ok(count)
        } else {
            Ok(0)
        }
    }

    /// Writes every memoized entry, replacing `path` atomically.
    pub fn save(&self, path: &Path) -> Result<()> {
        let snapshot = self.values.read().unwrap().clone();
        let dir = path.parent().filter(|d| !d.as_os_str().is_empty());
        if let Some(dir) = dir {
            fs::create_dir_all(dir)?;
        }
        let tmp = path.with_extension(format!("tmp.{}", std::process::id()));
        {
            let mut out = std::io::BufWriter::new(fs::File::create(&tmp)?);
            for (n, b) in snapshot.iter().enumerate() {
                writeln!(out, "{n}\t{}\t{}", b.numer(), b.denom())?;
            }
            out.flush()?;
        }
        fs::rename(&tmp, path)?;
        Ok(())
    }
}

/// `B_n` exactly, memoized in [`BernoulliTable::global`].
pub fn bernoulli_exact(n: usize) -> BigRat {
    BernoulliTable::global().get(n)
}

/// Computes `B_{known.len()} ..= B_n` from the already known prefix.
fn extend_recurrence(known: &[BigRat], n: usize) -> Vec<BigRat> {
    // every denominator up to B_n divides the product of the primes <= n + 1
    let lcm: BigUint = primes_up_to(n as u64 + 1).into_iter().map(BigUint::from).product();
    let lcm = BigInt::from(lcm);
    let mut scaled: Vec<BigInt> = known
        .iter()
        .map(|b| b.numer() * (&lcm / b.denom()))
        .collect();
    let start = known.len();
    for m in start..=n {
        let a_m = if m == 0 {
            lcm.clone()
        } else if m >= 3 && m % 2 == 1 {
            BigInt::zero()
        } else {
            let mut sum = BigInt::zero();
            let mut binom = BigInt::one();
            let top = m as u64 + 1;
            for (k, a_k) in scaled.iter().enumerate().take(m) {
                if !a_k.is_zero() {
                    sum += &binom * a_k;
                }
                binom = binom * (top - k as u64) / (k as u64 + 1);
            }
            let (q, r) = sum.div_rem(&BigInt::from(top));
            debug_assert!(r.is_zero());
            -q
        };
        scaled.push(a_m);
    }
    scaled[start..]
        .iter()
        .map(|a| BigRat::new(a.clone(), lcm.clone()))
        .collect()
}

/// Odd indices above 1 vanish and even denominators follow von Staudt-Clausen.
fn plausible(n: u64, b: &BigRat) -> bool {
    match n {
        0 => b == &BigRat::one(),
        1 => b == &BigRat::new(-1, 2),
        _ if n % 2 == 1 => b.is_zero(),
        _ => b.denom() == &staudt_denominator(n),
    }
}

/// Product of the primes `q` with `(q - 1) | n`, for even `n >= 2`.
pub fn staudt_denominator(n: u64) -> BigInt {
    primes_up_to(n + 1)
        .into_iter()
        .filter(|q| n.is_multiple_of(q - 1))
        .map(BigInt::from)
        .product()
}

fn check_index(k: u64, p: u64) -> Result<()> {
    if k % 2 == 1 || k < 2 || k + 3 > p {
        return Err(Error::OutOfRange { k, p });
    }
    Ok(())
}

/// `B_k mod p` for even `k` in `[2, p - 3]`, via Voronoi's congruence
/// `(g^k - 1) B_k = k g^{k-1} sum_{j=1}^{p-1} j^{k-1} floor(g j / p)  (mod p)`
/// with `g` a primitive root, so that `g^k != 1`.
pub fn bernoulli_mod(k: u64, p: u64) -> Result<u64> {
    require_odd_prime(p)?;
    check_index(k, p)?;
    let g = primitive_root(p);
    let mut sum = 0u64;
    for j in 1..p {
        let weight = (g as u128 * j as u128 / p as u128) as u64;
        if weight != 0 {
            let term = mul_mod(pow_mod(j, k - 1, p), weight, p);
            sum = (sum + term) % p;
        }
    }
    Ok(voronoi_finish(sum, k, g, p))
}

fn voronoi_finish(sum: u64, k: u64, g: u64, p: u64) -> u64 {
    let lhs = (pow_mod(g, k, p) + p - 1) % p;
    let rhs = mul_mod(mul_mod(k % p, pow_mod(g, k - 1, p), p), sum, p);
    mul_mod(rhs, inv_mod(lhs, p).expect("g is a primitive root"), p)
}

/// `B_k mod p` for every even `k` in `[2, p - 3]`, in ascending `k`.
///
/// One pass over `j` per index keeps this at `O(p^2 / 2)` word operations.
pub fn bernoulli_residues(p: u64) -> Result<Vec<(u64, u64)>> {
    require_odd_prime(p)?;
    if p < 5 {
        return Ok(Vec::new());
    }
    assert!(p < 1 << 32, "word-sized residue sweep needs p < 2^32");
    let g = primitive_root(p);
    let first = ((p - 1) / g + 1) as usize;
    let js: Vec<u64> = (first as u64..p).collect();
    let weights: Vec<u64> = js.iter().map(|&j| g * j / p).collect();
    let squares: Vec<u64> = js.iter().map(|&j| j * j % p).collect();
    // powers[j] = j^(k-1), starting at k = 2
    let mut powers: Vec<u64> = js.clone();
    let mut out = Vec::with_capacity(((p - 3) / 2) as usize);
    let mut k = 2;
    while k + 3 <= p {
        let sum: u128 = powers
            .iter()
            .zip(&weights)
            .map(|(&x, &w)| x as u128 * w as u128)
            .sum();
        out.push((k, voronoi_finish((sum % p as u128) as u64, k, g, p)));
        for (x, &s) in powers.iter_mut().zip(&squares) {
            *x = *x * s % p;
        }
        k += 2;
    }
    Ok(out)
}
