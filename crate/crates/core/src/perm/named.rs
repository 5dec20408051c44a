//! Named permutation groups: `alt:n`, `sym:n`, `psl2:q`, `cyclic:n`,
//! `dihedral:n`, `product:AxB` and `raw:<degree>:<cycles;…>`.

use super::bsgs::PermGroup;
use super::permutation::Perm;
use crate::error::{Error, Result};
use crate::lie::prime_power;

/// Largest field size accepted by `psl2:q`.
pub const PSL2_MAX_Q: u64 = 16;

/// `GF(p^f)` for small `q`, elements encoded as base-`p` digit vectors of
/// polynomial coefficients.
#[derive(Debug, Clone)]
pub struct SmallField {
    pub q: u32,
    pub p: u32,
    add: Vec<u32>,
    mul: Vec<u32>,
}

/// Irreducible polynomial over `GF(p)` of degree `f`, low coefficient first,
/// monic leading term omitted.
fn irreducible(p: u32, f: u32) -> Option<&'static [u32]> {
    match (p, f) {
        (_, 1) => Some(&[0]),
        (2, 2) => Some(&[1, 1]),
        (2, 3) => Some(&[1, 1, 0]),
        (2, 4) => Some(&[1, 1, 0, 0]),
        (3, 2) => Some(&[1, 0]),
        _ => None,
    }
}

impl SmallField {
    pub fn new(q: u64) -> Result<SmallField> {
        let bad = |reason: &str| Error::Parse { spec: format!("psl2:{q}"), reason: reason.into() };
        let (p, f) = prime_power(q).ok_or_else(|| bad("q must be a prime power"))?;
        if q > PSL2_MAX_Q {
            return Err(bad("q exceeds the desk-scale bound 16"));
        }
        let (p, f, q) = (p as u32, f, q as u32);
        let poly = irreducible(p, f).ok_or_else(|| bad("no field table for this q"))?;
        let digits = |x: u32| -> Vec<u32> { (0..f).map(|i| x / p.pow(i) % p).collect() };
        let encode = |d: &[u32]| -> u32 { d.iter().enumerate().map(|(i, &c)| c * p.pow(i as u32)).sum() };
        let n = q as usize;
        let mut add = vec![0; n * n];
        let mut mul = vec![0; n * n];
        for a in 0..q {
            for b in 0..q {
                let (da, db) = (digits(a), digits(b));
                let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[(a * q + b) as usize] = encode(&sum);
                // Schoolbook product, then reduce by x^f = -poly(x).
                let mut prod = vec![0u32; 2 * f as usize];
                for (i, &x) in da.iter().enumerate() {
                    for (j, &y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                for k in (f as usize..prod.len()).rev() {
                    let c = prod[k];
                    if c == 0 {
                        continue;
                    }
                    prod[k] = 0;
                    for (i, &a_i) in poly.iter().enumerate() {
                        let idx = k - f as usize + i;
                        prod[idx] = (prod[idx] + (p - a_i % p) % p * c) % p;
                    }
                }
                mul[(a * q + b) as usize] = encode(&prod[..f as usize]);
            }
        }
        Ok(SmallField { q, p, add, mul })
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add[(a * self.q + b) as usize]
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[(a * self.q + b) as usize]
    }

    pub fn neg(&self, a: u32) -> u32 {
        (0..self.q).find(|&b| self.add(a, b) == 0).expect("additive inverse")
    }

    pub fn inv(&self, a: u32) -> Option<u32> {
        (1..self.q).find(|&b| self.mul(a, b) == 1)
    }

    pub fn mult_order(&self, a: u32) -> u32 {
        let mut x = a;
        let mut k = 1;
        while x != 1 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Least generator of the multiplicative group.
    pub fn primitive_element(&self) -> u32 {
        (1..self.q).find(|&a| self.mult_order(a) == self.q - 1).expect("finite fields are cyclic")
    }
}

/// `PSL_2(q)` on the projective line `GF(q) ∪ {∞}`, with `∞` the point `q`.
fn psl2(q: u64) -> Result<PermGroup> {
    let field = SmallField::new(q)?;
    let qq = field.q;
    let inf = qq;
    let lambda = field.primitive_element();
    let mu = if field.p == 2 { lambda } else { field.mul(lambda, lambda) };
    let map = |f: &dyn Fn(u32) -> u32| -> Perm { Perm::from_images_unchecked((0..=qq).map(f).collect()) };
    let translate = map(&|x| if x == inf { inf } else { field.add(x, 1) });
    let scale = map(&|x| if x == inf { inf } else { field.mul(x, mu) });
    let invert = map(&|x| {
        if x == inf {
            0
        } else if x == 0 {
            inf
        } else {
            field.neg(field.inv(x).expect("nonzero"))
        }
    });
    let gens: Vec<Perm> = [translate, scale, invert].into_iter().filter(|g| !g.is_identity()).collect();
    PermGroup::new(qq as usize + 1, gens)
}

fn cycle(n: usize, points: impl Iterator<Item = usize>) -> Perm {
    let pts: Vec<usize> = points.collect();
    let mut images: Vec<u32> = (0..n as u32).collect();
    for (i, &x) in pts.iter().enumerate() {
        images[x] = pts[(i + 1) % pts.len()] as u32;
    }
    Perm::from_images_unchecked(images)
}

fn parse_n(spec: &str, s: &str) -> Result<usize> {
    let n: usize =
        s.trim().parse().map_err(|_| Error::Parse { spec: spec.into(), reason: format!("'{s}' is not a positive integer") })?;
    if n == 0 {
        return Err(Error::Parse { spec: spec.into(), reason: "size must be positive".into() });
    }
    Ok(n)
}

/// Builds one of the named groups.
pub fn construct_named(spec: &str) -> Result<PermGroup> {
    let spec = spec.trim();
    let bad = |reason: &str| Error::Parse { spec: spec.to_string(), reason: reason.into() };
    let (kind, arg) = spec.split_once(':').ok_or_else(|| bad("expected <kind>:<argument>"))?;
    match kind {
        "alt" => {
            let n = parse_n(spec, arg)?;
            let mut gens = Vec::new();
            if n >= 3 {
                gens.push(cycle(n, 0..3));
                if n > 3 {
                    gens.push(if n % 2 == 1 { cycle(n, 0..n) } else { cycle(n, 1..n) });
                }
            }
            PermGroup::new(n, gens)
        }
        "sym" => {
            let n = parse_n(spec, arg)?;
            let gens = if n >= 2 { vec![cycle(n, 0..2), cycle(n, 0..n)] } else { Vec::new() };
            PermGroup::new(n, gens)
        }
        "cyclic" => {
            let n = parse_n(spec, arg)?;
            PermGroup::new(n, vec![cycle(n, 0..n)])
        }
        "dihedral" => {
            let n = parse_n(spec, arg)?;
            if n < 3 {
                return Err(bad("dihedral:n needs n >= 3"));
            }
            let reflect = Perm::from_images_unchecked((0..n).map(|i| ((n - i) % n) as u32).collect());
            PermGroup::new(n, vec![cycle(n, 0..n), reflect])
        }
        "psl2" => {
            let q: u64 = arg.trim().parse().map_err(|_| bad("q must be an integer"))?;
            psl2(q)
        }
        "product" => {
            for (i, _) in arg.match_indices('x') {
                let (l, r) = (&arg[..i], &arg[i + 1..]);
                if let (Ok(a), Ok(b)) = (construct_named(l), construct_named(r)) {
                    return Ok(direct_product(&a, &b));
                }
            }
            Err(bad("expected product:<spec>x<spec> with two valid factors"))
        }
        "raw" => {
            let (deg, cycles) = arg.split_once(':').ok_or_else(|| bad("expected raw:<degree>:<cycles;…>"))?;
            let d = parse_n(spec, deg)?;
            let gens = cycles
                .split(';')
                .map(str::trim)
                .filter(|c| !c.is_empty())
                .map(|c| Perm::from_cycles(d, c))
                .collect::<Result<Vec<_>>>()?;
            PermGroup::new(d, gens)
        }
        _ => Err(bad("unknown group kind (alt, sym, psl2, cyclic, dihedral, product, raw)")),
    }
}

/// `A x B` acting on the disjoint union of the two point sets.
pub fn direct_product(a: &PermGroup, b: &PermGroup) -> PermGroup {
    let total = a.degree() + b.degree();
    let gens = a
        .generators()
        .iter()
        .map(|g| g.shifted(0, total))
        .chain(b.generators().iter().map(|g| g.shifted(a.degree(), total)))
        .collect();
    PermGroup::new(total, gens).expect("consistent degrees")
}
