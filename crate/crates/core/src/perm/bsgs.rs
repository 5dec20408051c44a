use num_bigint::BigUint;
use num_traits::One;

use super::permutation::Perm;
use crate::error::{Error, Result};

#[derive(Debug, Clone)]
struct Level {
    point: u32,
    orbit: Vec<u32>,
    /// `transversal[x]` maps the level's base point to `x`.
    transversal: Vec<Option<Perm>>,
}

/// A permutation group with a base and strong generating set.
#[derive(Debug, Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    strong: Vec<Perm>,
    levels: Vec<Level>,
    order: BigUint,
}

impl PermGroup {
    /// Deterministic Schreier–Sims.
    pub fn new(degree: usize, generators: Vec<Perm>) -> Result<PermGroup> {
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::Perm(format!("generator {g} has degree {}, expected {degree}", g.degree())));
            }
        }
        let mut grp = PermGroup { degree, generators, strong: Vec::new(), levels: Vec::new(), order: BigUint::one() };
        let gens: Vec<Perm> = grp.generators.iter().filter(|g| !g.is_identity()).cloned().collect();
        for g in gens {
            let (residue, at) = grp.sift(&g, 0);
            if !residue.is_identity() {
                grp.add_strong(residue, at);
                grp.complete();
            }
        }
        grp.order = grp.levels.iter().fold(BigUint::one(), |acc, l| acc * l.orbit.len());
        Ok(grp)
    }

    pub fn trivial(degree: usize) -> PermGroup {
        PermGroup::new(degree, Vec::new()).expect("no generators")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn strong_generators(&self) -> &[Perm] {
        &self.strong
    }

    pub fn base(&self) -> Vec<u32> {
        self.levels.iter().map(|l| l.point).collect()
    }

    /// Lengths of the fundamental orbits.
    pub fn orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn order(&self) -> &BigUint {
        &self.order
    }

    pub fn order_u64(&self) -> Option<u64> {
        u64::try_from(&self.order).ok()
    }

    /// Sifts `g` through the chain; returns the residue and the level it stopped at.
    fn sift(&self, g: &Perm, from: usize) -> (Perm, usize) {
        let mut h = g.clone();
        for (i, level) in self.levels.iter().enumerate().skip(from) {
            let x = h.apply(level.point);
            match &level.transversal[x as usize] {
                Some(u) => h = h.mul(&u.inverse()),
                None => return (h, i),
            }
        }
        (h, self.levels.len())
    }

    pub fn contains(&self, g: &Perm) -> bool {
        g.degree() == self.degree && self.sift(g, 0).0.is_identity()
    }

    fn add_strong(&mut self, g: Perm, level: usize) {
        if level == self.levels.len() {
            let point =
                g.images().iter().enumerate().find(|&(i, &x)| i as u32 != x).map(|(i, _)| i as u32).expect("non-identity");
            self.levels.push(Level { point, orbit: Vec::new(), transversal: Vec::new() });
        }
        self.strong.push(g);
        for i in 0..self.levels.len() {
            self.rebuild_orbit(i);
        }
    }

    fn level_gens(&self, i: usize) -> Vec<&Perm> {
        let fixed: Vec<u32> = self.levels[..i].iter().map(|l| l.point).collect();
        self.strong.iter().filter(|s| fixed.iter().all(|&b| s.apply(b) == b)).collect()
    }

    fn rebuild_orbit(&mut self, i: usize) {
        let gens: Vec<Perm> = self.level_gens(i).into_iter().cloned().collect();
        let point = self.levels[i].point;
        let mut transversal: Vec<Option<Perm>> = vec![None; self.degree];
        transversal[point as usize] = Some(Perm::identity(self.degree));
        let mut orbit = vec![point];
        let mut k = 0;
        while k < orbit.len() {
            let x = orbit[k];
            let u = transversal[x as usize].clone().expect("orbit point has a transversal element");
            for s in &gens {
                let y = s.apply(x);
                if transversal[y as usize].is_none() {
                    transversal[y as usize] = Some(u.mul(s));
                    orbit.push(y);
                }
            }
            k += 1;
        }
        self.levels[i].orbit = orbit;
        self.levels[i].transversal = transversal;
    }

    /// Sifts Schreier generators until every one reduces to the identity.
    fn complete(&mut self) {
        'restart: loop {
            for i in (0..self.levels.len()).rev() {
                let gens: Vec<Perm> = self.level_gens(i).into_iter().cloned().collect();
                let orbit = self.levels[i].orbit.clone();
                for &x in &orbit {
                    let u = self.levels[i].transversal[x as usize].clone().expect("transversal");
                    for s in &gens {
                        let y = s.apply(x);
                        let uy = self.levels[i].transversal[y as usize].as_ref().expect("orbit closed");
                        let schreier = u.mul(s).mul(&uy.inverse());
                        if schreier.is_identity() {
                            continue;
                        }
                        let (residue, at) = self.sift(&schreier, i + 1);
                        if !residue.is_identity() {
                            self.add_strong(residue, at);
                            continue 'restart;
                        }
                    }
                }
            }
            return;
        }
    }

    /// Every element, in no particular order. Refuses above `cap`.
    pub fn elements(&self, cap: u64) -> Result<Vec<Perm>> {
        match self.order_u64() {
            Some(o) if o <= cap => {}
            _ => return Err(Error::OrderCap { order: self.order.to_string(), cap }),
        }
        let mut out = vec![Perm::identity(self.degree)];
        for level in self.levels.iter().rev() {
            let mut next = Vec::with_capacity(out.len() * level.orbit.len());
            for &x in &level.orbit {
                let u = level.transversal[x as usize].as_ref().expect("transversal");
                for g in &out {
                    next.push(g.mul(u));
                }
            }
            out = next;
        }
        Ok(out)
    }
}
