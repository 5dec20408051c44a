//! Symbolic descriptors of finite simple groups of Lie type.
//!
//! A [`GroupId`] names a group by family, dimension or rank, and field size
//! `q = p^f`. For the linear and unitary families the integer parameter is
//! the dimension `n` of the natural module, so `A:2:q=7` is `PSL_2(7)`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::arith::{is_prime_u64, valuation, PrimeSet};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    A2,
    B,
    C,
    D,
    D2,
    D4_3,
    E6,
    E6_2,
    E7,
    E8,
    F4,
    G2,
    B2_2,
    F4_2,
    G2_2,
}

impl Family {
    pub const ALL: [Family; 16] = [
        Family::A,
        Family::A2,
        Family::B,
        Family::C,
        Family::D,
        Family::D2,
        Family::D4_3,
        Family::E6,
        Family::E6_2,
        Family::E7,
        Family::E8,
        Family::F4,
        Family::G2,
        Family::B2_2,
        Family::F4_2,
        Family::G2_2,
    ];

    pub fn symbol(self) -> &'static str {
        match self {
            Family::A => "A",
            Family::A2 => "2A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
            Family::D2 => "2D",
            Family::D4_3 => "3D4",
            Family::E6 => "E6",
            Family::E6_2 => "2E6",
            Family::E7 => "E7",
            Family::E8 => "E8",
            Family::F4 => "F4",
            Family::G2 => "G2",
            Family::B2_2 => "2B2",
            Family::F4_2 => "2F4",
            Family::G2_2 => "2G2",
        }
    }

    pub fn from_symbol(s: &str) -> Option<Family> {
        Family::ALL.into_iter().find(|f| f.symbol() == s)
    }

    /// Families whose descriptor carries a dimension or rank parameter.
    pub fn is_parametric(self) -> bool {
        matches!(self, Family::A | Family::A2 | Family::B | Family::C | Family::D | Family::D2)
    }

    /// Lie rank of the underlying root system for the non-parametric families.
    fn fixed_rank(self) -> u32 {
        match self {
            Family::D4_3 | Family::F4 | Family::F4_2 => 4,
            Family::E6 | Family::E6_2 => 6,
            Family::E7 => 7,
            Family::E8 => 8,
            Family::G2 | Family::B2_2 | Family::G2_2 => 2,
            _ => unreachable!("parametric family"),
        }
    }

    pub fn is_suzuki_ree(self) -> bool {
        matches!(self, Family::B2_2 | Family::F4_2 | Family::G2_2)
    }

    fn min_param(self) -> u32 {
        match self {
            Family::A => 2,
            Family::A2 => 3,
            Family::B | Family::C => 2,
            Family::D | Family::D2 => 4,
            _ => 0,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// Identifier of a simple group of Lie type.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupId {
    family: Family,
    n: u32,
    p: u64,
    f: u32,
}

/// Outcome of [`validate_simple`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleCheck {
    pub simple: bool,
    pub reason: Option<String>,
}

impl SimpleCheck {
    fn ok() -> Self {
        SimpleCheck { simple: true, reason: None }
    }

    fn reject(reason: impl Into<String>) -> Self {
        SimpleCheck { simple: false, reason: Some(reason.into()) }
    }
}

impl GroupId {
    /// Builds and validates a descriptor. For non-parametric families `n`
    /// is ignored and replaced by the Lie rank.
    pub fn new(family: Family, n: u32, p: u64, f: u32) -> Result<GroupId> {
        let g = GroupId::new_unchecked(family, n, p, f);
        if !is_prime_u64(p) {
            return Err(Error::Parse { spec: g.to_string(), reason: format!("{p} is not prime") });
        }
        if f == 0 {
            return Err(Error::Parse { spec: g.to_string(), reason: "field exponent must be positive".into() });
        }
        let check = validate_simple(&g);
        if !check.simple {
            return Err(Error::NotSimple(format!("{g}: {}", check.reason.unwrap_or_default())));
        }
        Ok(g)
    }

    pub fn new_unchecked(family: Family, n: u32, p: u64, f: u32) -> GroupId {
        let n = if family.is_parametric() { n } else { family.fixed_rank() };
        GroupId { family, n, p, f }
    }

    /// Convenience: `q` given as an integer prime power.
    pub fn with_q(family: Family, n: u32, q: u64) -> Result<GroupId> {
        let (p, f) = prime_power(q)
            .ok_or_else(|| Error::Parse { spec: format!("{family}:{n}:q={q}"), reason: format!("{q} is not a prime power") })?;
        GroupId::new(family, n, p, f)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    /// Natural-module dimension for `A`/`2A`, Lie rank otherwise.
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn f(&self) -> u32 {
        self.f
    }

    pub fn q(&self) -> BigUint {
        BigUint::from(self.p).pow(self.f)
    }

    /// `q` as a machine integer when it fits.
    pub fn q_u64(&self) -> Option<u64> {
        self.q().to_u64()
    }
}

impl fmt::Display for GroupId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.family.is_parametric() {
            write!(f, "{}:{}:q=", self.family, self.n)?;
        } else {
            write!(f, "{}:q=", self.family)?;
        }
        match self.q_u64() {
            Some(q) => write!(f, "{q}"),
            None => write!(f, "{}^{}", self.p, self.f),
        }
    }
}

impl FromStr for GroupId {
    type Err = Error;

    fn from_str(s: &str) -> Result<GroupId> {
        parse_group_id(s)
    }
}

impl Serialize for GroupId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for GroupId {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse_group_id(&s).map_err(serde::de::Error::custom)
    }
}

/// `(p, f)` with `q = p^f`, if `q` is a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..).take_while(|d| d * d <= q).find(|d| q.is_multiple_of(*d)).unwrap_or(q);
    let mut rest = q;
    let mut f = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        f += 1;
    }
    (rest == 1).then_some((p, f))
}

/// Parses `<family>:<n>:q=<p>[^<f>]`, or `<family>:q=...` for the
/// exceptional families. `q` may also be written as a plain prime power.
pub fn parse_group_id(text: &str) -> Result<GroupId> {
    let err = |reason: &str| Error::Parse { spec: text.to_string(), reason: reason.to_string() };
    let parts: Vec<&str> = text.trim().split(':').collect();
    let family = Family::from_symbol(parts[0]).ok_or_else(|| err("unknown family"))?;
    let (n, q_part) = match (family.is_parametric(), parts.len()) {
        (true, 3) => {
            let n: u32 = parts[1].parse().map_err(|_| err("dimension/rank must be a positive integer"))?;
            (n, parts[2])
        }
        (false, 2) => (0, parts[1]),
        (true, _) => return Err(err("expected <family>:<n>:q=<q>")),
        (false, _) => return Err(err("expected <family>:q=<q> for an exceptional family")),
    };
    let q_text = q_part.strip_prefix("q=").ok_or_else(|| err("expected q=<p>[^<f>]"))?;
    let (p, f) = match q_text.split_once('^') {
        Some((base, exp)) => {
            let p: u64 = base.parse().map_err(|_| err("bad prime in q"))?;
            let f: u32 = exp.parse().map_err(|_| err("bad exponent in q"))?;
            if !is_prime_u64(p) {
                return Err(err("q is not a prime power"));
            }
            (p, f)
        }
        None => {
            let q: u64 = q_text.parse().map_err(|_| err("bad q"))?;
            prime_power(q).ok_or_else(|| err("q is not a prime power"))?
        }
    };
    if f == 0 {
        return Err(err("field exponent must be positive"));
    }
    GroupId::new(family, n, p, f)
}

/// Simplicity constraints: rank minima, the small non-simple cases, and
/// the Suzuki/Ree field conditions.
pub fn validate_simple(g: &GroupId) -> SimpleCheck {
    let fam = g.family;
    if fam.is_parametric() && g.n < fam.min_param() {
        return SimpleCheck::reject("rank below family minimum");
    }
    let q = g.q_u64();
    match fam {
        Family::A if g.n == 2 && matches!(q, Some(2) | Some(3)) => SimpleCheck::reject("PSL_2(2) and PSL_2(3) are solvable"),
        Family::A2 if g.n == 3 && q == Some(2) => SimpleCheck::reject("PSU_3(2) is solvable"),
        Family::B | Family::C if g.n == 2 && q == Some(2) => {
            SimpleCheck::reject("B_2(2) is not simple (derived subgroup is A_6)")
        }
        Family::G2 if q == Some(2) => SimpleCheck::reject("G_2(2) is not simple (G_2(2)' = PSU_3(3))"),
        Family::B2_2 if g.p != 2 || g.f.is_multiple_of(2) => SimpleCheck::reject("2B2 requires q = 2^f with f odd"),
        Family::B2_2 if g.f < 3 => SimpleCheck::reject("2B2(2) is solvable"),
        Family::G2_2 if g.p != 3 || g.f.is_multiple_of(2) => SimpleCheck::reject("2G2 requires q = 3^f with f odd"),
        Family::G2_2 if g.f < 3 => SimpleCheck::reject("2G2(3) is not simple (2G2(3)' = PSL_2(8))"),
        Family::F4_2 if g.p != 2 || g.f.is_multiple_of(2) => SimpleCheck::reject("2F4 requires q = 2^f with f odd"),
        Family::F4_2 if g.f < 3 => SimpleCheck::reject("Tits group excluded"),
        _ => SimpleCheck::ok(),
    }
}

/// One labeled factor of an order formula.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderFactor {
    pub label: String,
    pub value: BigUint,
}

/// Group order kept as `product(factors) / divisor`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderFactors {
    pub factors: Vec<OrderFactor>,
    pub divisor: BigUint,
    pub divisor_label: String,
}

impl OrderFactors {
    pub fn order(&self) -> BigUint {
        let product: BigUint = self.factors.iter().map(|f| &f.value).product();
        debug_assert!((&product % &self.divisor) == BigUint::from(0u32));
        product / &self.divisor
    }

    /// Exponent of the prime `t` in the order, without forming the product.
    pub fn valuation(&self, t: u64) -> u32 {
        let up: u32 = self.factors.iter().map(|f| valuation(&f.value, t)).sum();
        up - valuation(&self.divisor, t)
    }
}

struct FactorBuilder {
    q: BigUint,
    factors: Vec<OrderFactor>,
}

impl FactorBuilder {
    fn new(q: BigUint) -> Self {
        FactorBuilder { q, factors: Vec::new() }
    }

    fn qpow(&self, e: u64) -> BigUint {
        self.q.pow(e as u32)
    }

    fn unipotent(&mut self, e: u64) {
        let v = self.qpow(e);
        self.factors.push(OrderFactor { label: format!("q^{e}"), value: v });
    }

    fn minus(&mut self, e: u64) {
        let v = self.qpow(e) - 1u32;
        self.factors.push(OrderFactor { label: format!("q^{e}-1"), value: v });
    }

    fn plus(&mut self, e: u64) {
        let v = self.qpow(e) + 1u32;
        self.factors.push(OrderFactor { label: format!("q^{e}+1"), value: v });
    }

    fn raw(&mut self, label: &str, value: BigUint) {
        self.factors.push(OrderFactor { label: label.to_string(), value });
    }

    fn finish(self, divisor: BigUint, divisor_label: String) -> OrderFactors {
        OrderFactors { factors: self.factors, divisor, divisor_label }
    }
}

fn gcd_big(a: &BigUint, b: u64) -> BigUint {
    a.gcd(&BigUint::from(b))
}

/// The order of `g` as labeled factors over the centre divisor.
pub fn order_factors(g: &GroupId) -> OrderFactors {
    let q = g.q();
    let n = g.n as u64;
    let mut b = FactorBuilder::new(q.clone());
    let one = BigUint::one();
    let (div, label) = match g.family {
        Family::A => {
            b.unipotent(n * (n - 1) / 2);
            for i in 2..=n {
                b.minus(i);
            }
            (gcd_big(&(&q - 1u32), n), format!("gcd({n},q-1)"))
        }
        Family::A2 => {
            b.unipotent(n * (n - 1) / 2);
            for i in 2..=n {
                if i % 2 == 0 {
                    b.minus(i)
                } else {
                    b.plus(i)
                }
            }
            (gcd_big(&(&q + 1u32), n), format!("gcd({n},q+1)"))
        }
        Family::B | Family::C => {
            b.unipotent(n * n);
            for i in 1..=n {
                b.minus(2 * i);
            }
            (gcd_big(&(&q - 1u32), 2), "gcd(2,q-1)".to_string())
        }
        Family::D => {
            b.unipotent(n * (n - 1));
            b.minus(n);
            for i in 1..n {
                b.minus(2 * i);
            }
            (gcd_big(&(q.pow(n as u32) - 1u32), 4), format!("gcd(4,q^{n}-1)"))
        }
        Family::D2 => {
            b.unipotent(n * (n - 1));
            b.plus(n);
            for i in 1..n {
                b.minus(2 * i);
            }
            (gcd_big(&(q.pow(n as u32) + 1u32), 4), format!("gcd(4,q^{n}+1)"))
        }
        Family::D4_3 => {
            b.unipotent(12);
            b.raw("q^8+q^4+1", q.pow(8) + q.pow(4) + 1u32);
            b.minus(6);
            b.minus(2);
            (one, "1".into())
        }
        Family::E6 => {
            b.unipotent(36);
            for e in [12, 9, 8, 6, 5, 2] {
                b.minus(e);
            }
            (gcd_big(&(&q - 1u32), 3), "gcd(3,q-1)".into())
        }
        Family::E6_2 => {
            b.unipotent(36);
            b.minus(12);
            b.plus(9);
            b.minus(8);
            b.minus(6);
            b.plus(5);
            b.minus(2);
            (gcd_big(&(&q + 1u32), 3), "gcd(3,q+1)".into())
        }
        Family::E7 => {
            b.unipotent(63);
            for e in [18, 14, 12, 10, 8, 6, 2] {
                b.minus(e);
            }
            (gcd_big(&(&q - 1u32), 2), "gcd(2,q-1)".into())
        }
        Family::E8 => {
            b.unipotent(120);
            for e in [30, 24, 20, 18, 14, 12, 8, 2] {
                b.minus(e);
            }
            (one, "1".into())
        }
        Family::F4 => {
            b.unipotent(24);
            for e in [12, 8, 6, 2] {
                b.minus(e);
            }
            (one, "1".into())
        }
        Family::G2 => {
            b.unipotent(6);
            b.minus(6);
            b.minus(2);
            (one, "1".into())
        }
        Family::B2_2 => {
            b.unipotent(2);
            b.plus(2);
            b.minus(1);
            (one, "1".into())
        }
        Family::G2_2 => {
            b.unipotent(3);
            b.plus(3);
            b.minus(1);
            (one, "1".into())
        }
        Family::F4_2 => {
            b.unipotent(12);
            b.plus(6);
            b.minus(4);
            b.plus(3);
            b.minus(1);
            (one, "1".into())
        }
    };
    b.finish(div, label)
}

pub fn group_order(g: &GroupId) -> BigUint {
    order_factors(g).order()
}

/// Degrees of the basic invariants of the Weyl group of the underlying
/// (untwisted) root system. Their product is the Weyl group order.
pub fn weyl_degrees(g: &GroupId) -> Vec<u64> {
    let n = g.n as u64;
    match g.family {
        Family::A | Family::A2 => (2..=n).collect(),
        Family::B | Family::C => (1..=n).map(|i| 2 * i).collect(),
        Family::D | Family::D2 => (1..n).map(|i| 2 * i).chain([n]).collect(),
        Family::D4_3 => vec![2, 4, 6, 4],
        Family::E6 | Family::E6_2 => vec![2, 5, 6, 8, 9, 12],
        Family::E7 => vec![2, 6, 8, 10, 12, 14, 18],
        Family::E8 => vec![2, 8, 12, 14, 18, 20, 24, 30],
        Family::F4 | Family::F4_2 => vec![2, 6, 8, 12],
        Family::G2 | Family::G2_2 => vec![2, 6],
        Family::B2_2 => vec![2, 4],
    }
}

/// Order of the Weyl group. Twisted families use the Weyl group of the
/// untwisted root system (`3D4` uses `W(D4)`, `2B2` uses `W(B2)`, ...).
pub fn weyl_order(g: &GroupId) -> BigUint {
    weyl_degrees(g).into_iter().map(BigUint::from).product()
}

/// `|Ĝ/G|`, the index of the group in its inner-diagonal automorphisms.
pub fn diag_quotient_order(g: &GroupId) -> BigUint {
    let q = g.q();
    let n = g.n;
    match g.family {
        Family::A => gcd_big(&(&q - 1u32), n as u64),
        Family::A2 => gcd_big(&(&q + 1u32), n as u64),
        Family::B | Family::C | Family::E7 => gcd_big(&(&q - 1u32), 2),
        Family::D => gcd_big(&(q.pow(n) - 1u32), 4),
        Family::D2 => gcd_big(&(q.pow(n) + 1u32), 4),
        Family::E6 => gcd_big(&(&q - 1u32), 3),
        Family::E6_2 => gcd_big(&(&q + 1u32), 3),
        Family::E8 | Family::F4 | Family::G2 | Family::D4_3 | Family::B2_2 | Family::F4_2 | Family::G2_2 => BigUint::one(),
    }
}

/// Whether the prime `t` divides `|g|`.
pub fn prime_divides_order(t: u64, g: &GroupId) -> bool {
    order_factors(g).valuation(t) > 0
}

/// The primes of `pi` dividing `|g|`, that is `pi ∩ pi(g)`.
pub fn pi_intersection(pi: &PrimeSet, g: &GroupId) -> PrimeSet {
    let factors = order_factors(g);
    pi.filter(|t| factors.valuation(t) > 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gid(s: &str) -> GroupId {
        parse_group_id(s).unwrap()
    }

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn parse_examples() {
        let g = gid("A:2:q=7");
        assert_eq!((g.family(), g.n(), g.p(), g.f()), (Family::A, 2, 7, 1));
        let s = gid("2B2:q=2^3");
        assert_eq!((s.family(), s.p(), s.f()), (Family::B2_2, 2, 3));
        assert!(matches!(parse_group_id("A:1:q=5"), Err(Error::NotSimple(_))));
        assert_eq!(gid("3D4:q=4").q(), big(4));
        assert_eq!(gid("2A:4:q=2^3").q(), big(8));
    }

    #[test]
    fn parse_rejects_malformed() {
        for bad in ["", "Z:2:q=7", "A:2:q=6", "A:2:7", "E8:3:q=2", "A:q=7", "A:x:q=7", "A:2:q=4^2", "A:2:q=2^0"] {
            assert!(parse_group_id(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn display_round_trips() {
        for s in ["A:2:q=7", "2A:4:q=8", "3D4:q=4", "2F4:q=8", "E8:q=2", "D:4:q=9"] {
            let g = gid(s);
            assert_eq!(g.to_string(), s);
            assert_eq!(gid(&g.to_string()), g);
        }
        assert_eq!(gid("2B2:q=2^3").to_string(), "2B2:q=8");
    }

    #[test]
    fn simplicity_exclusions() {
        for (fam, n, q) in [
            (Family::A, 2, 2),
            (Family::A, 2, 3),
            (Family::A2, 3, 2),
            (Family::B, 2, 2),
            (Family::C, 2, 2),
            (Family::G2, 0, 2),
            (Family::G2_2, 0, 3),
            (Family::B2_2, 0, 2),
            (Family::F4_2, 0, 2),
            (Family::D, 3, 5),
            (Family::D2, 3, 5),
            (Family::A2, 2, 5),
            (Family::B, 1, 5),
            (Family::B2_2, 0, 4),
            (Family::G2_2, 0, 9),
        ] {
            let (p, f) = prime_power(q).unwrap();
            let g = GroupId::new_unchecked(fam, n, p, f);
            assert!(!validate_simple(&g).simple, "{g}");
        }
        let tits = GroupId::new_unchecked(Family::F4_2, 0, 2, 1);
        assert_eq!(validate_simple(&tits).reason.as_deref(), Some("Tits group excluded"));
        let d3 = GroupId::new_unchecked(Family::D, 3, 5, 1);
        assert_eq!(validate_simple(&d3).reason.as_deref(), Some("rank below family minimum"));
        assert!(validate_simple(&gid("A:2:q=4")).simple);
    }

    #[test]
    fn order_examples() {
        assert_eq!(group_order(&gid("A:2:q=7")), big(168));
        assert_eq!(group_order(&gid("A:3:q=4")), big(20160));
        assert_eq!(group_order(&gid("2B2:q=8")), big(29120));
    }

    // Orders from standard tables of small simple groups.
    #[test]
    fn order_table() {
        for (s, o) in [
            ("A:2:q=4", 60u64),
            ("A:2:q=9", 360),
            ("A:3:q=2", 168),
            ("A:4:q=2", 20160),
            ("2A:3:q=3", 6048),
            ("2A:4:q=2", 25920),
            ("B:2:q=3", 25920),
            ("C:3:q=2", 1451520),
            ("D:4:q=2", 174182400),
            ("2D:4:q=2", 197406720),
            ("G2:q=3", 4245696),
            ("3D4:q=2", 211341312),
            ("2G2:q=27", 10073444472),
            ("A:2:q=16", 4080),
            ("A:5:q=2", 9999360),
        ] {
            assert_eq!(group_order(&gid(s)), BigUint::from(o), "{s}");
        }
        assert_eq!(group_order(&gid("2F4:q=8")), "264905352699586176614400".parse::<BigUint>().unwrap());
        assert_eq!(group_order(&gid("F4:q=2")), "3311126603366400".parse::<BigUint>().unwrap());
        assert_eq!(group_order(&gid("E6:q=2")), "214841575522005575270400".parse::<BigUint>().unwrap());
        assert_eq!(group_order(&gid("2E6:q=2")), "76532479683774853939200".parse::<BigUint>().unwrap());
    }

    #[test]
    fn weyl_orders() {
        assert_eq!(weyl_order(&gid("A:5:q=7")), big(120));
        assert_eq!(weyl_order(&gid("G2:q=5")), big(12));
        assert_eq!(weyl_order(&gid("E8:q=2")), big(696729600));
        assert_eq!(weyl_order(&gid("E6:q=2")), big(51840));
        assert_eq!(weyl_order(&gid("E7:q=2")), big(2903040));
        assert_eq!(weyl_order(&gid("F4:q=2")), big(1152));
        assert_eq!(weyl_order(&gid("3D4:q=2")), big(192));
        assert_eq!(weyl_order(&gid("2B2:q=8")), big(8));
        assert_eq!(weyl_order(&gid("2G2:q=27")), big(12));
        assert_eq!(weyl_order(&gid("2F4:q=8")), big(1152));
        for n in 2..=6u32 {
            let fact: u64 = (1..=n as u64).product();
            assert_eq!(weyl_order(&GroupId::with_q(Family::B, n, 3).unwrap()), big(fact << n));
            if n >= 4 {
                assert_eq!(weyl_order(&GroupId::with_q(Family::D, n, 3).unwrap()), big(fact << (n - 1)));
                assert_eq!(weyl_order(&GroupId::with_q(Family::D2, n, 3).unwrap()), big(fact << (n - 1)));
            }
        }
    }

    #[test]
    fn diag_quotients() {
        assert_eq!(diag_quotient_order(&gid("A:4:q=5")), big(4));
        assert_eq!(diag_quotient_order(&gid("2E6:q=2")), big(3));
        assert_eq!(diag_quotient_order(&gid("E8:q=3")), big(1));
        assert_eq!(diag_quotient_order(&gid("D:4:q=3")), big(4));
        assert_eq!(diag_quotient_order(&gid("D:5:q=3")), big(2));
        assert_eq!(diag_quotient_order(&gid("2D:5:q=3")), big(4));
        assert_eq!(diag_quotient_order(&gid("B:3:q=4")), big(1));
        assert_eq!(diag_quotient_order(&gid("2B2:q=8")), big(1));
    }

    #[test]
    fn divisibility_and_intersection() {
        let g = gid("A:2:q=7");
        assert!(prime_divides_order(7, &g));
        assert!(!prime_divides_order(5, &g));
        let d = gid("3D4:q=3");
        let order = group_order(&d);
        assert_eq!(prime_divides_order(13, &d), (&order % 13u32) == big(0));
        assert!(prime_divides_order(73, &d));
        let pi = PrimeSet::new([3, 5, 7]).unwrap();
        assert_eq!(pi_intersection(&pi, &g).as_slice(), &[3, 7]);
        assert!(pi_intersection(&PrimeSet::new([11]).unwrap(), &g).is_empty());
    }

    #[test]
    fn psl2_closed_form() {
        for q in 4..=32u64 {
            let Some(_) = prime_power(q) else { continue };
            let g = GroupId::with_q(Family::A, 2, q).unwrap();
            let expect = q * (q * q - 1) / num_integer::gcd(2, q - 1);
            assert_eq!(group_order(&g), big(expect), "q = {q}");
        }
    }

    #[test]
    fn factor_valuation_matches_order() {
        for s in ["A:6:q=4", "2A:5:q=3", "E7:q=3", "2D:6:q=5", "2F4:q=32"] {
            let g = gid(s);
            let f = order_factors(&g);
            let o = f.order();
            for t in [2u64, 3, 5, 7, 11, 13, 31, 37, 109] {
                assert_eq!(f.valuation(t), valuation(&o, t), "{s} t={t}");
            }
        }
    }

    #[test]
    fn a_family_diag_divides() {
        for n in 2..=6 {
            for q in [4u64, 5, 7, 8, 9, 11, 13, 16, 25, 27] {
                for fam in [Family::A, Family::A2] {
                    let Ok(g) = GroupId::with_q(fam, n, q) else { continue };
                    let d = diag_quotient_order(&g).to_u64().unwrap();
                    let qe = if fam == Family::A { q - 1 } else { q + 1 };
                    assert_eq!(qe % d, 0);
                    assert_eq!(n as u64 % d, 0);
                }
            }
        }
    }
}
