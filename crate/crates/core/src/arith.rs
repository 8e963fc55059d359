//! Divisor sums and the search for `σ(n) = 2n + 11`.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Sieve block length.
pub const BLOCK_SIZE: u64 = 1 << 20;
pub const MAX_SEARCH_LIMIT: u64 = 1_000_000_000;

/// Prime factorization with strictly increasing primes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pairs: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn of(n: u64) -> Result<Factorization> {
        if n == 0 {
            return Err(Error::Domain("cannot factor 0".into()));
        }
        let mut pairs = Vec::new();
        let mut m = n;
        let mut p = 2u64;
        while p * p <= m {
            if m % p == 0 {
                let mut e = 0;
                while m % p == 0 {
                    m /= p;
                    e += 1;
                }
                pairs.push((p, e));
            }
            p += if p == 2 { 1 } else { 2 };
        }
        if m > 1 {
            pairs.push((m, 1));
        }
        Ok(Factorization { pairs })
    }

    pub fn pairs(&self) -> &[(u64, u32)] {
        &self.pairs
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.pairs.iter().map(|&(p, _)| p)
    }

    pub fn product(&self) -> u64 {
        self.pairs.iter().map(|&(p, e)| p.pow(e)).product()
    }

    /// `Π (1 + p + … + p^e)`
    pub fn divisor_sigma(&self) -> Result<u64> {
        self.pairs.iter().try_fold(1u64, |acc, &(p, e)| {
            let term = prime_power_sigma(p, e).ok_or(Error::Overflow("divisor sum"))?;
            acc.checked_mul(term).ok_or(Error::Overflow("divisor sum"))
        })
    }
}

fn prime_power_sigma(p: u64, e: u32) -> Option<u64> {
    let mut term = 1u64;
    let mut power = 1u64;
    for _ in 0..e {
        power = power.checked_mul(p)?;
        term = term.checked_add(power)?;
    }
    Some(term)
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && Factorization::of(n).map(|f| f.pairs == [(n, 1)]).unwrap_or(false)
}

pub fn divisor_sigma(n: u64) -> Result<u64> {
    Factorization::of(n)?.divisor_sigma()
}

/// `σ(n)/n`, the value σ₁ takes on the cyclic group of order `n`.
pub fn sigma1_cyclic(n: u64) -> Result<Rational> {
    Rational::from_counts(divisor_sigma(n)?, n)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Abundance {
    Deficient,
    Perfect,
    Abundant,
}

pub fn abundance_class(n: u64) -> Result<Abundance> {
    let s = divisor_sigma(n)? as u128;
    let twice = 2 * n as u128;
    Ok(match s.cmp(&twice) {
        std::cmp::Ordering::Less => Abundance::Deficient,
        std::cmp::Ordering::Equal => Abundance::Perfect,
        std::cmp::Ordering::Greater => Abundance::Abundant,
    })
}

pub fn primes_up_to(n: u64) -> Vec<u64> {
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            primes.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    primes
}

fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// `σ(n)` for every `n` in `lo..hi`. `primes` must cover `√(hi-1)`.
pub fn sigma_block(lo: u64, hi: u64, primes: &[u64]) -> Vec<u64> {
    let len = (hi - lo) as usize;
    // 0 is kept out of the factoring loop and patched at the end
    let mut rest: Vec<u64> = (lo..hi).map(|n| n.max(1)).collect();
    let mut sigma = vec![1u64; len];
    for &p in primes {
        if p * p >= hi {
            break;
        }
        let first = lo.div_ceil(p) * p;
        let mut m = first;
        while m < hi {
            let i = (m - lo) as usize;
            let mut term = 1u64;
            let mut power = 1u64;
            while rest[i] % p == 0 {
                rest[i] /= p;
                power *= p;
                term += power;
            }
            sigma[i] *= term;
            m += p;
        }
    }
    for i in 0..len {
        if rest[i] > 1 {
            sigma[i] *= rest[i] + 1;
        }
    }
    if lo == 0 {
        sigma[0] = 0;
    }
    sigma
}

/// All `n ≤ limit` with `σ(n) = 2n + 11`, ascending.
pub fn search_open_problem(limit: u64) -> Result<Vec<u64>> {
    search_open_problem_with(limit, true)
}

/// With `prefilter`, only `n = m²` and `n = 2m²` are examined: those are
/// exactly the `n` with odd `σ(n)`, and `2n + 11` is odd.
pub fn search_open_problem_with(limit: u64, prefilter: bool) -> Result<Vec<u64>> {
    if limit > MAX_SEARCH_LIMIT {
        return Err(Error::Domain(format!(
            "search limit {limit} exceeds {MAX_SEARCH_LIMIT}"
        )));
    }
    let hits = if prefilter {
        odd_sigma_candidates(limit)
            .into_par_iter()
            .filter(|&n| is_solution(n))
            .collect::<Vec<u64>>()
    } else {
        full_sieve(limit)
    };
    // Recheck by trial division before reporting.
    for &n in &hits {
        if divisor_sigma(n)? != 2 * n + 11 {
            return Err(Error::Consistency(format!("sieve reported {n} incorrectly")));
        }
    }
    Ok(hits)
}

fn is_solution(n: u64) -> bool {
    divisor_sigma(n).map(|s| s == 2 * n + 11).unwrap_or(false)
}

fn odd_sigma_candidates(limit: u64) -> Vec<u64> {
    let mut out: Vec<u64> = (1..=isqrt(limit))
        .map(|m| m * m)
        .chain((1..=isqrt(limit / 2)).map(|m| 2 * m * m))
        .collect();
    out.sort_unstable();
    out
}

fn full_sieve(limit: u64) -> Vec<u64> {
    let primes = primes_up_to(isqrt(limit) + 1);
    let blocks: Vec<(u64, u64)> = (0..=limit / BLOCK_SIZE)
        .map(|b| (b * BLOCK_SIZE, ((b + 1) * BLOCK_SIZE).min(limit + 1)))
        .filter(|(lo, hi)| lo < hi)
        .collect();
    blocks
        .into_par_iter()
        .map(|(lo, hi)| {
            sigma_block(lo, hi, &primes)
                .into_iter()
                .zip(lo..hi)
                .filter(|&(s, n)| n >= 1 && s == 2 * n + 11)
                .map(|(_, n)| n)
                .collect::<Vec<u64>>()
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;
    use proptest::prelude::*;

    fn naive_sigma(n: u64) -> u64 {
        (1..=n).filter(|d| n % d == 0).sum()
    }

    #[test]
    fn small_values() {
        assert_eq!(divisor_sigma(1).unwrap(), 1);
        assert_eq!(divisor_sigma(12).unwrap(), 28);
        assert_eq!(divisor_sigma(2u64.pow(5)).unwrap(), 63);
        assert_eq!(divisor_sigma(3u64.pow(4)).unwrap(), 1 + 3 + 9 + 27 + 81);
        assert!(divisor_sigma(0).is_err());
        for n in 1..=300 {
            assert_eq!(divisor_sigma(n).unwrap(), naive_sigma(n), "n = {n}");
        }
    }

    #[test]
    fn factorization_reconstructs() {
        let f = Factorization::of(360).unwrap();
        assert_eq!(f.pairs(), &[(2, 3), (3, 2), (5, 1)]);
        assert_eq!(f.product(), 360);
        assert_eq!(Factorization::of(1).unwrap().pairs(), &[]);
    }

    #[test]
    fn cyclic_sigma1() {
        assert_eq!(sigma1_cyclic(6).unwrap(), rat!(2));
        assert_eq!(sigma1_cyclic(12).unwrap(), rat!(7, 3));
        assert_eq!(sigma1_cyclic(1).unwrap(), rat!(1));
        // prime powers: 1 + 1/(p-1) - 1/(p^k (p-1)) < 2
        for (p, k) in [(2i64, 1u32), (2, 5), (3, 3), (7, 2)] {
            let pk = p.pow(k);
            let closed = rat!(1)
                .checked_add(rat!(1, p - 1))
                .unwrap()
                .checked_sub(rat!(1, pk * (p - 1)))
                .unwrap();
            assert_eq!(sigma1_cyclic(pk as u64).unwrap(), closed);
            assert!(closed < rat!(2));
        }
    }

    #[test]
    fn abundance() {
        assert_eq!(abundance_class(8).unwrap(), Abundance::Deficient);
        assert_eq!(abundance_class(6).unwrap(), Abundance::Perfect);
        assert_eq!(abundance_class(28).unwrap(), Abundance::Perfect);
        assert_eq!(abundance_class(12).unwrap(), Abundance::Abundant);
    }

    #[test]
    fn sieve_block_matches_trial_division() {
        let primes = primes_up_to(2000);
        let block = sigma_block(1_000_000, 1_000_500, &primes);
        for (i, s) in block.into_iter().enumerate() {
            assert_eq!(s, divisor_sigma(1_000_000 + i as u64).unwrap());
        }
        let head = sigma_block(0, 50, &primes);
        assert_eq!(head[0], 0);
        assert_eq!(head[1], 1);
        assert_eq!(head[49], 57);
    }

    #[test]
    fn search_small_limits() {
        assert!(search_open_problem(100).unwrap().is_empty());
        assert!(search_open_problem_with(100, false).unwrap().is_empty());
        let direct: Vec<u64> = (1..=100).filter(|&n| naive_sigma(n) == 2 * n + 11).collect();
        assert!(direct.is_empty());
        assert!(search_open_problem(MAX_SEARCH_LIMIT + 1).is_err());
    }

    #[test]
    fn odd_sigma_characterization() {
        let candidates = odd_sigma_candidates(5000);
        for n in 1..=5000u64 {
            let odd = divisor_sigma(n).unwrap() % 2 == 1;
            assert_eq!(odd, candidates.binary_search(&n).is_ok(), "n = {n}");
        }
    }

    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 { a } else { gcd(b, a % b) }
    }

    proptest! {
        #[test]
        fn sigma_is_multiplicative(a in 1u64..1_000_000, b in 1u64..1_000_000) {
            prop_assume!(gcd(a, b) == 1);
            prop_assert_eq!(
                divisor_sigma(a * b).unwrap(),
                divisor_sigma(a).unwrap() * divisor_sigma(b).unwrap()
            );
        }
    }
}
