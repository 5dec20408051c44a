//! Exact integer arithmetic behind every Hall criterion: multiplicative
//! orders modulo odd primes, pi-parts, and the closed forms for the
//! r-parts of `k^m - 1` and `k^m - (-1)^m`.
//!
//! Nothing here factors a large integer. A pi-part is extracted by repeated
//! division by the primes of pi, and the order `e(q, r)` only needs `q mod r`.

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite set of distinct primes, kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize)]
#[serde(transparent)]
pub struct PrimeSet(Vec<u64>);

impl PrimeSet {
    /// Builds a set from arbitrary input order. Duplicates collapse;
    /// non-primes are rejected.
    pub fn new(primes: impl IntoIterator<Item = u64>) -> Result<Self> {
        let mut v: Vec<u64> = primes.into_iter().collect();
        for &p in &v {
            if !is_prime_u64(p) {
                return Err(Error::NotPrime(p));
            }
        }
        v.sort_unstable();
        v.dedup();
        Ok(PrimeSet(v))
    }

    pub fn empty() -> Self {
        PrimeSet(Vec::new())
    }

    // Callers guarantee sorted distinct primes.
    pub(crate) fn from_sorted_unchecked(v: Vec<u64>) -> Self {
        debug_assert!(v.windows(2).all(|w| w[0] < w[1]));
        PrimeSet(v)
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.0.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, p: u64) -> bool {
        self.0.binary_search(&p).is_ok()
    }

    pub fn smallest(&self) -> Option<u64> {
        self.0.first().copied()
    }

    pub fn without(&self, p: u64) -> PrimeSet {
        PrimeSet(self.0.iter().copied().filter(|&x| x != p).collect())
    }

    pub fn filter(&self, mut keep: impl FnMut(u64) -> bool) -> PrimeSet {
        PrimeSet(self.0.iter().copied().filter(|&x| keep(x)).collect())
    }

    pub fn union(&self, other: &PrimeSet) -> PrimeSet {
        let mut v: Vec<u64> = self.0.iter().chain(other.0.iter()).copied().collect();
        v.sort_unstable();
        v.dedup();
        PrimeSet(v)
    }

    pub fn intersection(&self, other: &PrimeSet) -> PrimeSet {
        self.filter(|p| other.contains(p))
    }

    pub fn is_subset(&self, other: &PrimeSet) -> bool {
        self.0.iter().all(|&p| other.contains(p))
    }

    /// All subsets of the given size, in lexicographic order.
    pub fn subsets_of_size(&self, k: usize) -> Vec<PrimeSet> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(k);
        fn rec(src: &[u64], k: usize, start: usize, cur: &mut Vec<u64>, out: &mut Vec<PrimeSet>) {
            if cur.len() == k {
                out.push(PrimeSet(cur.clone()));
                return;
            }
            for i in start..src.len() {
                cur.push(src[i]);
                rec(src, k, i + 1, cur, out);
                cur.pop();
            }
        }
        rec(&self.0, k, 0, &mut cur, &mut out);
        out
    }

    /// All nonempty subsets, ordered by size and then lexicographically.
    pub fn nonempty_subsets(&self) -> Vec<PrimeSet> {
        (1..=self.len()).flat_map(|k| self.subsets_of_size(k)).collect()
    }
}

impl<'de> Deserialize<'de> for PrimeSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<u64>::deserialize(d)?;
        PrimeSet::new(v).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for PrimeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("}")
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

const MR_BASES: [u64; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

fn miller_rabin_u64(n: u64) -> bool {
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'bases: for &a in &MR_BASES {
        if a % n == 0 {
            continue;
        }
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Deterministic for every `u64` (Miller-Rabin with the first 13 prime bases).
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_BASES {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    miller_rabin_u64(n)
}

/// Primality of an arbitrary-precision integer.
///
/// Exact for `n < 3.3 * 10^24` (the first 13 prime bases are a proven
/// deterministic witness set up to that bound); above it the answer is a
/// strong-probable-prime verdict.
pub fn is_prime(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    for &p in &MR_BASES {
        if (n % p).is_zero() {
            return false;
        }
    }
    let one = BigUint::one();
    let n_minus_one = n - &one;
    let s = n_minus_one.trailing_zeros().unwrap_or(0);
    let d = &n_minus_one >> s;
    'bases: for &a in &MR_BASES {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x == one || x == n_minus_one {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_one {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

fn divisors_ascending(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// The multiplicative order `e(q, r)` of `q` modulo the odd prime `r`.
pub fn multiplicative_order(q: &BigUint, r: u64) -> Result<u64> {
    if r == 2 {
        return Err(Error::EvenModulus(r));
    }
    if !is_prime_u64(r) {
        return Err(Error::NotPrime(r));
    }
    let residue = (q % r).to_u64().expect("residue below a u64 modulus");
    if residue == 0 {
        return Err(Error::OrderUndefined { q: q.to_string(), r });
    }
    Ok(divisors_ascending(r - 1).into_iter().find(|&e| pow_mod(residue, e, r) == 1).expect("Fermat: q^(r-1) = 1 mod r"))
}

/// `u64` convenience wrapper around [`multiplicative_order`].
pub fn order_mod(q: u64, r: u64) -> Result<u64> {
    multiplicative_order(&BigUint::from(q), r)
}

/// The adjusted order used for `k^m - (-1)^m`.
pub fn e_star(e: u64) -> u64 {
    assert!(e >= 1, "e_star requires e >= 1");
    if e % 2 == 1 {
        2 * e
    } else if e.is_multiple_of(4) {
        e
    } else {
        e / 2
    }
}

/// Exponent of the prime `t` in `n` (`n > 0`).
pub fn valuation(n: &BigUint, t: u64) -> u32 {
    debug_assert!(!n.is_zero());
    let divisor = BigUint::from(t);
    let mut rest = n.clone();
    let mut v = 0;
    loop {
        let (quot, rem) = rest.div_rem(&divisor);
        if !rem.is_zero() {
            return v;
        }
        rest = quot;
        v += 1;
    }
}

/// Exponent of the prime `t` in a machine integer (`n > 0`).
pub fn valuation_u64(mut n: u64, t: u64) -> u32 {
    debug_assert!(n > 0);
    let mut v = 0;
    while n.is_multiple_of(t) {
        n /= t;
        v += 1;
    }
    v
}

/// Largest divisor of `n` whose prime divisors all lie in `pi`.
pub fn pi_part(n: &BigUint, pi: &PrimeSet) -> Result<BigUint> {
    if n.is_zero() {
        return Err(Error::ZeroPiPart);
    }
    let mut out = BigUint::one();
    for t in pi.iter() {
        let v = valuation(n, t);
        if v > 0 {
            out *= BigUint::from(t).pow(v);
        }
    }
    Ok(out)
}

pub fn pi_part_u64(n: u64, pi: &PrimeSet) -> Result<u64> {
    if n == 0 {
        return Err(Error::ZeroPiPart);
    }
    Ok(pi.iter().map(|t| t.pow(valuation_u64(n, t))).product())
}

fn r_part_of(n: &BigUint, r: u64) -> BigUint {
    BigUint::from(r).pow(valuation(n, r))
}

fn check_coprime(k: &BigUint, r: u64) -> Result<()> {
    if (k % r).is_zero() {
        Err(Error::OrderUndefined { q: k.to_string(), r })
    } else {
        Ok(())
    }
}

/// `(k^m - 1)_r` by the closed form: `(k^e - 1)_r * (m/e)_r` when
/// `e = e(k, r)` divides `m`, and 1 otherwise.
pub fn r_part_pow_minus_one(k: &BigUint, m: u64, r: u64) -> Result<BigUint> {
    assert!(m >= 1, "exponent must be positive");
    check_coprime(k, r)?;
    let e = multiplicative_order(k, r)?;
    if !m.is_multiple_of(e) {
        return Ok(BigUint::one());
    }
    let head = r_part_of(&(k.pow(e as u32) - 1u32), r);
    Ok(head * BigUint::from(r).pow(valuation_u64(m / e, r)))
}

/// `(k^m - (-1)^m)_r` by the closed form with `e* = e_star(e(k, r))`.
pub fn r_part_pow_minus_sign(k: &BigUint, m: u64, r: u64) -> Result<BigUint> {
    assert!(m >= 1, "exponent must be positive");
    check_coprime(k, r)?;
    let es = e_star(multiplicative_order(k, r)?);
    if !m.is_multiple_of(es) {
        return Ok(BigUint::one());
    }
    let power = k.pow(es as u32);
    let value = if es.is_multiple_of(2) { power - 1u32 } else { power + 1u32 };
    Ok(r_part_of(&value, r) * BigUint::from(r).pow(valuation_u64(m / es, r)))
}

/// Distinct primes among `candidates` that divide `n`.
pub fn dividing_primes(n: &BigUint, candidates: &PrimeSet) -> PrimeSet {
    candidates.filter(|t| (n % t).is_zero())
}

/// Prime divisors of a machine integer by trial division.
pub fn prime_divisors_u64(mut n: u64) -> PrimeSet {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    PrimeSet::from_sorted_unchecked(out)
}

pub fn primes_up_to(bound: u64) -> Vec<u64> {
    (2..=bound).filter(|&n| is_prime_u64(n)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    fn set(v: &[u64]) -> PrimeSet {
        PrimeSet::new(v.iter().copied()).unwrap()
    }

    #[test]
    fn order_examples() {
        assert_eq!(order_mod(4, 3).unwrap(), 1);
        assert_eq!(order_mod(2, 7).unwrap(), 3);
        assert_eq!(order_mod(11, 5).unwrap(), 1);
    }

    #[test]
    fn order_errors() {
        assert!(matches!(order_mod(6, 3), Err(Error::OrderUndefined { .. })));
        assert_eq!(order_mod(3, 2), Err(Error::EvenModulus(2)));
        assert_eq!(order_mod(3, 9), Err(Error::NotPrime(9)));
    }

    #[test]
    fn e_star_cases() {
        assert_eq!(e_star(3), 6);
        assert_eq!(e_star(4), 4);
        assert_eq!(e_star(6), 3);
        assert_eq!(e_star(1), 2);
        assert_eq!(e_star(2), 1);
    }

    #[test]
    fn pi_part_examples() {
        assert_eq!(pi_part(&big(720), &set(&[3, 5])).unwrap(), big(45));
        assert_eq!(pi_part(&big(1), &set(&[3])).unwrap(), big(1));
        assert_eq!(pi_part(&big(20160), &set(&[3, 7])).unwrap(), big(63));
        assert_eq!(pi_part(&big(0), &set(&[3])), Err(Error::ZeroPiPart));
        assert_eq!(pi_part(&big(20160), &PrimeSet::empty()).unwrap(), big(1));
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(r_part_pow_minus_one(&big(2), 6, 7).unwrap(), big(7));
        assert_eq!(r_part_pow_minus_one(&big(2), 4, 7).unwrap(), big(1));
        assert_eq!(r_part_pow_minus_one(&big(4), 3, 3).unwrap(), big(9));
        assert_eq!(r_part_pow_minus_sign(&big(2), 3, 3).unwrap(), big(9));
        assert_eq!(r_part_pow_minus_sign(&big(2), 2, 5).unwrap(), big(1));
        assert_eq!(r_part_pow_minus_sign(&big(3), 4, 5).unwrap(), big(5));
        assert!(r_part_pow_minus_one(&big(9), 2, 3).is_err());
        assert!(r_part_pow_minus_sign(&big(10), 2, 5).is_err());
    }

    #[test]
    fn primality() {
        assert!(is_prime_u64(2));
        assert!(!is_prime_u64(1));
        assert!(!is_prime_u64(0));
        assert!(is_prime_u64(8191));
        assert!(!is_prime_u64(561));
        assert!(is_prime_u64(18446744073709551557));
        assert!(is_prime(&(BigUint::from(2u32).pow(89) - 1u32)));
        assert!(!is_prime(&(BigUint::from(2u32).pow(67) - 1u32)));
    }

    #[test]
    fn primality_matches_trial_division() {
        fn trial(n: u64) -> bool {
            n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
        }
        for n in 0..5000 {
            assert_eq!(is_prime_u64(n), trial(n), "n = {n}");
        }
    }

    #[test]
    fn prime_set_normalizes() {
        let s = PrimeSet::new([7, 3, 7]).unwrap();
        assert_eq!(s.as_slice(), &[3, 7]);
        assert_eq!(s.to_string(), "{3,7}");
        assert_eq!(PrimeSet::new([4]), Err(Error::NotPrime(4)));
        assert_eq!(set(&[3, 5, 7]).nonempty_subsets().len(), 7);
    }

    #[test]
    fn prime_divisors() {
        assert_eq!(prime_divisors_u64(168).as_slice(), &[2, 3, 7]);
        assert_eq!(prime_divisors_u64(1).as_slice(), &[] as &[u64]);
        assert_eq!(prime_divisors_u64(97).as_slice(), &[97]);
    }
}
