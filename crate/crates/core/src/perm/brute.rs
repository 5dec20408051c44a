//! Direct evaluation of `E_pi`, `C_pi`, `D_pi`, `U_pi` and `(*)` on a
//! fully enumerated subgroup lattice.

use std::fmt;
use std::str::FromStr;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use super::lattice::{canonical_gens, Lattice};
use crate::arith::{pi_part_u64, prime_divisors_u64, PrimeSet};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BruteProperty {
    E,
    C,
    D,
    U,
    Star,
}

impl fmt::Display for BruteProperty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BruteProperty::E => "E",
            BruteProperty::C => "C",
            BruteProperty::D => "D",
            BruteProperty::U => "U",
            BruteProperty::Star => "star",
        })
    }
}

impl FromStr for BruteProperty {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "e" | "epi" => Ok(BruteProperty::E),
            "c" | "cpi" => Ok(BruteProperty::C),
            "d" | "dpi" => Ok(BruteProperty::D),
            "u" | "upi" => Ok(BruteProperty::U),
            "star" | "*" => Ok(BruteProperty::Star),
            other => {
                Err(Error::Parse { spec: other.into(), reason: "unknown property (expected epi, cpi, dpi, upi or star)".into() })
            }
        }
    }
}

/// A subgroup named in a brute-force answer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub role: String,
    pub order: u64,
    pub class_size: Option<u64>,
    pub gens: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BruteOutcome {
    pub group: String,
    pub pi: PrimeSet,
    pub property: BruteProperty,
    pub holds: bool,
    pub witnesses: Vec<Witness>,
}

impl BruteOutcome {
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {} {}: {}\n", self.property, self.group, self.pi, self.holds);
        for w in &self.witnesses {
            let size = w.class_size.map(|c| format!(" class_size={c}")).unwrap_or_default();
            s.push_str(&format!("  {} order={}{} gens={}\n", w.role, w.order, size, w.gens));
        }
        s
    }
}

pub fn is_pi_number(n: u64, pi: &PrimeSet) -> bool {
    pi_part_u64(n, pi).map(|p| p == n).unwrap_or(false)
}

/// Brute-force queries against one lattice.
pub struct Brute<'a> {
    pub lattice: &'a Lattice,
    pub name: String,
}

impl<'a> Brute<'a> {
    pub fn new(lattice: &'a Lattice, name: impl Into<String>) -> Self {
        Brute { lattice, name: name.into() }
    }

    fn class_witness(&self, role: &str, i: usize) -> Witness {
        let c = &self.lattice.classes[i];
        Witness { role: role.into(), order: c.order, class_size: Some(c.class_size), gens: self.lattice.gens_string(&c.gens) }
    }

    fn subgroup_witness(&self, role: &str, sub: &FixedBitSet) -> Witness {
        let gens = canonical_gens(&self.lattice.elements, sub);
        Witness { role: role.into(), order: sub.count_ones(..) as u64, class_size: None, gens: self.lattice.gens_string(&gens) }
    }

    pub fn hall_order(&self, pi: &PrimeSet) -> u64 {
        pi_part_u64(self.lattice.order(), pi).expect("nonzero order")
    }

    /// Classes of pi-Hall subgroups.
    pub fn pi_hall_subgroups(&self, pi: &PrimeSet) -> Vec<usize> {
        let h = self.hall_order(pi);
        (0..self.lattice.classes.len()).filter(|&i| self.lattice.classes[i].order == h).collect()
    }

    pub fn pi_subgroup_classes(&self, pi: &PrimeSet) -> Vec<usize> {
        (0..self.lattice.classes.len()).filter(|&i| is_pi_number(self.lattice.classes[i].order, pi)).collect()
    }

    /// Whether some conjugate of class `small` lies inside `big`.
    pub fn contains_conjugate(&self, big: &FixedBitSet, small: usize) -> bool {
        let c = &self.lattice.classes[small];
        let size = big.count_ones(..) as u64;
        size.is_multiple_of(c.order) && c.members.iter().any(|m| m.is_subset(big))
    }

    /// Classes of pi-subgroups maximal among pi-subgroups.
    pub fn maximal_pi_subgroups(&self, pi: &PrimeSet) -> Vec<usize> {
        let pis = self.pi_subgroup_classes(pi);
        pis.iter()
            .copied()
            .filter(|&p| {
                let po = self.lattice.classes[p].order;
                !pis.iter().any(|&q| {
                    let qc = &self.lattice.classes[q];
                    qc.order > po && self.contains_conjugate(qc.representative(), p)
                })
            })
            .collect()
    }

    /// `D_pi` by uniqueness of the class of maximal pi-subgroups.
    pub fn dpi_by_maximal(&self, pi: &PrimeSet) -> bool {
        self.maximal_pi_subgroups(pi).len() == 1
    }

    /// `D_pi` as `C_pi` plus every pi-subgroup lying in a pi-Hall subgroup.
    pub fn dpi_by_containment(&self, pi: &PrimeSet) -> bool {
        let halls = self.pi_hall_subgroups(pi);
        if halls.len() != 1 {
            return false;
        }
        let h = self.lattice.classes[halls[0]].representative().clone();
        self.pi_subgroup_classes(pi).into_iter().all(|p| self.contains_conjugate(&h, p))
    }

    /// `D_pi` for an arbitrary subgroup `m`, conjugacy taken inside `m`.
    pub fn dpi_within(&self, m: &FixedBitSet, pi: &PrimeSet) -> bool {
        let t = &self.lattice.elements;
        let mut pis: Vec<&FixedBitSet> = self
            .pi_subgroup_classes(pi)
            .into_iter()
            .flat_map(|i| self.lattice.classes[i].members.iter())
            .filter(|s| s.is_subset(m))
            .collect();
        pis.sort_by_key(|s| std::cmp::Reverse(s.count_ones(..)));
        let maximal: Vec<&FixedBitSet> = pis
            .iter()
            .enumerate()
            .filter(|&(i, p)| {
                let po = p.count_ones(..);
                !pis[..i].iter().any(|q| q.count_ones(..) > po && p.is_subset(q))
            })
            .map(|(_, p)| *p)
            .collect();
        let first = maximal[0].clone();
        let m_gens = canonical_gens(t, m);
        let mut orbit = vec![first.clone()];
        let mut seen = std::collections::HashSet::from([first]);
        let mut i = 0;
        while i < orbit.len() {
            for &g in &m_gens {
                let mut img = FixedBitSet::with_capacity(t.len());
                for x in orbit[i].ones() {
                    img.insert(t.conj(x as u32, g) as usize);
                }
                if seen.insert(img.clone()) {
                    orbit.push(img);
                }
            }
            i += 1;
        }
        orbit.len() == maximal.len()
    }

    /// Whether every Sylow subgroup of `sub` is normal in it.
    pub fn is_nilpotent(&self, sub: &FixedBitSet) -> bool {
        let t = &self.lattice.elements;
        let n = sub.count_ones(..) as u64;
        prime_divisors_u64(n).iter().all(|p| {
            let sylow = pi_part_u64(n, &PrimeSet::from_sorted_unchecked(vec![p])).expect("nonzero");
            let count =
                sub.ones().filter(|&x| is_pi_number(t.order(x as u32) as u64, &PrimeSet::from_sorted_unchecked(vec![p]))).count()
                    as u64;
            count == sylow
        })
    }

    /// `(*)` for one subgroup: its tau-elements form an abelian subgroup of
    /// order `|P|_tau`.
    pub fn has_normal_abelian_tau_hall(&self, p: &FixedBitSet, tau: &PrimeSet) -> bool {
        let t = &self.lattice.elements;
        let want = pi_part_u64(p.count_ones(..) as u64, tau).expect("nonzero");
        let elems: Vec<u32> = p.ones().map(|x| x as u32).filter(|&x| is_pi_number(t.order(x) as u64, tau)).collect();
        if elems.len() as u64 != want {
            return false;
        }
        let mut set = FixedBitSet::with_capacity(t.len());
        for &x in &elems {
            set.insert(x as usize);
        }
        elems.iter().all(|&a| {
            elems.iter().all(|&b| {
                let ab = t.mul(a, b);
                set.contains(ab as usize) && ab == t.mul(b, a)
            })
        })
    }

    /// `tau = (pi ∩ pi(G)) \ {min}`.
    pub fn tau(&self, pi: &PrimeSet) -> PrimeSet {
        let inter = pi.intersection(&prime_divisors_u64(self.lattice.order()));
        match inter.smallest() {
            Some(r) => inter.without(r),
            None => inter,
        }
    }

    /// Classes whose representative contains a conjugate of class `h`.
    pub fn overgroup_classes(&self, h: usize) -> Vec<usize> {
        (0..self.lattice.classes.len())
            .filter(|&m| self.contains_conjugate(self.lattice.classes[m].representative(), h))
            .collect()
    }

    /// Normal subgroups are the classes of size one.
    pub fn normal_subgroups(&self) -> Vec<usize> {
        (0..self.lattice.classes.len()).filter(|&i| self.lattice.classes[i].class_size == 1).collect()
    }

    pub fn evaluate(&self, pi: &PrimeSet, property: BruteProperty) -> BruteOutcome {
        let (holds, witnesses) = match property {
            BruteProperty::E => {
                let halls = self.pi_hall_subgroups(pi);
                (!halls.is_empty(), halls.iter().take(1).map(|&i| self.class_witness("hall", i)).collect())
            }
            BruteProperty::C => {
                let halls = self.pi_hall_subgroups(pi);
                let w = if halls.len() == 1 {
                    vec![self.class_witness("hall", halls[0])]
                } else {
                    halls.iter().take(2).map(|&i| self.class_witness("nonconjugate_hall", i)).collect()
                };
                (halls.len() == 1, w)
            }
            BruteProperty::D => self.evaluate_d(pi),
            BruteProperty::U => {
                let (d, w) = self.evaluate_d(pi);
                if !d {
                    (false, w)
                } else {
                    let h = self.pi_hall_subgroups(pi)[0];
                    let bad = self
                        .overgroup_classes(h)
                        .into_iter()
                        .find(|&m| !self.dpi_within(self.lattice.classes[m].representative(), pi));
                    match bad {
                        Some(m) => (false, vec![self.class_witness("hall", h), self.class_witness("non_dpi_overgroup", m)]),
                        None => (true, vec![self.class_witness("hall", h)]),
                    }
                }
            }
            BruteProperty::Star => {
                let tau = self.tau(pi);
                let bad = self
                    .pi_subgroup_classes(pi)
                    .into_iter()
                    .find(|&i| !self.has_normal_abelian_tau_hall(self.lattice.classes[i].representative(), &tau));
                match bad {
                    Some(i) => (false, vec![self.class_witness("violating_pi_subgroup", i)]),
                    None => (true, Vec::new()),
                }
            }
        };
        BruteOutcome { group: self.name.clone(), pi: pi.clone(), property, holds, witnesses }
    }

    fn evaluate_d(&self, pi: &PrimeSet) -> (bool, Vec<Witness>) {
        let maxes = self.maximal_pi_subgroups(pi);
        if maxes.len() == 1 {
            (true, vec![self.class_witness("maximal_pi", maxes[0])])
        } else {
            (false, maxes.iter().take(2).map(|&i| self.class_witness("maximal_pi", i)).collect())
        }
    }

    /// Normal subgroups `A` for which `H ∩ A` is not a pi-Hall subgroup of
    /// `A`, for the first pi-Hall class `H`. Empty when there is none.
    pub fn hall_intersection_failures(&self, pi: &PrimeSet) -> Vec<Witness> {
        let Some(&h) = self.pi_hall_subgroups(pi).first() else { return Vec::new() };
        let hb = self.lattice.classes[h].representative();
        self.normal_subgroups()
            .into_iter()
            .filter(|&a| {
                let ab = self.lattice.classes[a].representative();
                let mut inter = hb.clone();
                inter.intersect_with(ab);
                inter.count_ones(..) as u64 != pi_part_u64(self.lattice.classes[a].order, pi).expect("nonzero")
            })
            .map(|a| self.subgroup_witness("normal_subgroup", self.lattice.classes[a].representative()))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{construct_named, enumerate_subgroups, DEFAULT_MAX_ORDER};

    fn lat(spec: &str) -> Lattice {
        enumerate_subgroups(&construct_named(spec).unwrap(), DEFAULT_MAX_ORDER).unwrap()
    }

    fn pi(v: &[u64]) -> PrimeSet {
        PrimeSet::new(v.iter().copied()).unwrap()
    }

    fn orders(b: &Brute, v: Vec<usize>) -> Vec<u64> {
        v.into_iter().map(|i| b.lattice.classes[i].order).collect()
    }

    #[test]
    fn a5_hall_and_maximal() {
        let l = lat("alt:5");
        let b = Brute::new(&l, "alt:5");
        assert_eq!(orders(&b, b.pi_hall_subgroups(&pi(&[2, 3]))), vec![12]);
        assert!(b.pi_hall_subgroups(&pi(&[3, 5])).is_empty());
        assert_eq!(orders(&b, b.pi_hall_subgroups(&PrimeSet::empty())), vec![1]);
        assert_eq!(orders(&b, b.maximal_pi_subgroups(&pi(&[3, 5]))), vec![3, 5]);
        assert_eq!(orders(&b, b.maximal_pi_subgroups(&pi(&[2, 3]))), vec![6, 12]);
        assert_eq!(orders(&b, b.maximal_pi_subgroups(&pi(&[5]))), vec![5]);
        let d = b.evaluate(&pi(&[2, 3]), BruteProperty::D);
        assert!(!d.holds);
        assert_eq!(d.witnesses.iter().map(|w| w.order).collect::<Vec<_>>(), vec![6, 12]);
    }

    #[test]
    fn psl2_7_is_dpi_and_upi() {
        let l = lat("psl2:7");
        let b = Brute::new(&l, "psl2:7");
        let d = b.evaluate(&pi(&[3, 7]), BruteProperty::D);
        assert!(d.holds);
        assert_eq!(d.witnesses[0].order, 21);
        assert!(b.evaluate(&pi(&[3, 7]), BruteProperty::U).holds);
        assert!(b.dpi_by_containment(&pi(&[3, 7])));
        assert!(b.dpi_within(l.classes.last().unwrap().representative(), &pi(&[3, 7])));
    }

    #[test]
    fn sylow_facts() {
        for spec in ["alt:5", "psl2:8", "sym:4", "dihedral:6"] {
            let l = lat(spec);
            let b = Brute::new(&l, spec);
            for t in prime_divisors_u64(l.order()).iter() {
                let p = pi(&[t]);
                assert!(b.evaluate(&p, BruteProperty::D).holds, "{spec} {t}");
                let sylow = b.pi_hall_subgroups(&p);
                assert_eq!(sylow.len(), 1);
                assert_eq!(l.classes[sylow[0]].class_size % t, 1);
            }
        }
    }

    #[test]
    fn nilpotency_and_star() {
        let l = lat("sym:4");
        let b = Brute::new(&l, "sym:4");
        let whole = l.classes.last().unwrap().representative();
        assert!(!b.is_nilpotent(whole));
        let sylow2 = b.pi_hall_subgroups(&pi(&[2]))[0];
        assert!(b.is_nilpotent(l.classes[sylow2].representative()));
        // tau = {3} in S4 for pi = {2,3}; S4 itself has no normal Sylow 3.
        assert!(!b.evaluate(&pi(&[2, 3]), BruteProperty::Star).holds);
        assert!(b.evaluate(&pi(&[3]), BruteProperty::Star).holds);
    }

    #[test]
    fn normal_subgroups_of_s4() {
        let l = lat("sym:4");
        let b = Brute::new(&l, "sym:4");
        assert_eq!(orders(&b, b.normal_subgroups()), vec![1, 4, 12, 24]);
        for p in [pi(&[2]), pi(&[3]), pi(&[2, 3])] {
            assert!(b.hall_intersection_failures(&p).is_empty());
        }
    }

    #[test]
    fn property_names() {
        assert_eq!("star".parse::<BruteProperty>().unwrap(), BruteProperty::Star);
        assert_eq!("dpi".parse::<BruteProperty>().unwrap(), BruteProperty::D);
        assert!("x".parse::<BruteProperty>().is_err());
    }
}
