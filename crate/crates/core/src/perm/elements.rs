use std::collections::HashMap;

use super::bsgs::PermGroup;
use super::permutation::Perm;
use crate::error::Result;

/// Largest dense lookup table, in entries.
const DENSE_LIMIT: usize = 1 << 24;

#[derive(Debug, Clone)]
enum Lookup {
    Dense { radix: usize, table: Vec<u32> },
    Hash(HashMap<Vec<u32>, u32>),
}

/// All elements of a group, sorted lexicographically by image list and
/// addressed by index. An element is located from its base images alone.
#[derive(Debug, Clone)]
pub struct ElementTable {
    degree: usize,
    len: usize,
    images: Vec<u32>,
    base: Vec<u32>,
    lookup: Lookup,
    inverse: Vec<u32>,
    order: Vec<u32>,
}

impl ElementTable {
    pub fn new(group: &PermGroup, cap: u64) -> Result<ElementTable> {
        let mut perms = group.elements(cap)?;
        perms.sort();
        let degree = group.degree();
        let len = perms.len();
        let base = if group.base().is_empty() { vec![0u32; degree.min(1)] } else { group.base() };
        let radix = degree.max(1);
        let dense_size = (0..base.len()).try_fold(1usize, |acc, _| acc.checked_mul(radix)).filter(|&s| s <= DENSE_LIMIT);
        let key = |p: &Perm| -> Vec<u32> { base.iter().map(|&b| p.apply(b)).collect() };
        let lookup = match dense_size {
            Some(size) => {
                let mut table = vec![u32::MAX; size];
                for (i, p) in perms.iter().enumerate() {
                    table[dense_key(&key(p), radix)] = i as u32;
                }
                Lookup::Dense { radix, table }
            }
            None => Lookup::Hash(perms.iter().enumerate().map(|(i, p)| (key(p), i as u32)).collect()),
        };
        let images: Vec<u32> = perms.iter().flat_map(|p| p.images().iter().copied()).collect();
        let mut t = ElementTable { degree, len, images, base, lookup, inverse: Vec::new(), order: Vec::new() };
        t.inverse = perms.iter().map(|p| t.index_of(&p.inverse()).expect("closed under inverses")).collect();
        t.order = perms.iter().map(|p| p.order() as u32).collect();
        Ok(t)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Index 0 is the identity, the lexicographically least permutation.
    pub fn identity(&self) -> u32 {
        0
    }

    pub fn images(&self, x: u32) -> &[u32] {
        let s = x as usize * self.degree;
        &self.images[s..s + self.degree]
    }

    pub fn perm(&self, x: u32) -> Perm {
        Perm::from_images_unchecked(self.images(x).to_vec())
    }

    fn locate(&self, key: &[u32]) -> Option<u32> {
        match &self.lookup {
            Lookup::Dense { radix, table } => {
                let v = table[dense_key(key, *radix)];
                (v != u32::MAX).then_some(v)
            }
            Lookup::Hash(map) => map.get(key).copied(),
        }
    }

    pub fn index_of(&self, p: &Perm) -> Option<u32> {
        if p.degree() != self.degree {
            return None;
        }
        let key: Vec<u32> = self.base.iter().map(|&b| p.apply(b)).collect();
        let i = self.locate(&key)?;
        (self.images(i) == p.images()).then_some(i)
    }

    /// `a` then `b`.
    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        let (pa, pb) = (self.images(a), self.images(b));
        let mut key = [0u32; 16];
        if self.base.len() <= key.len() {
            for (k, &beta) in self.base.iter().enumerate() {
                key[k] = pb[pa[beta as usize] as usize];
            }
            self.locate(&key[..self.base.len()]).expect("closed under products")
        } else {
            let key: Vec<u32> = self.base.iter().map(|&beta| pb[pa[beta as usize] as usize]).collect();
            self.locate(&key).expect("closed under products")
        }
    }

    pub fn inv(&self, a: u32) -> u32 {
        self.inverse[a as usize]
    }

    /// `g^-1 x g`.
    pub fn conj(&self, x: u32, g: u32) -> u32 {
        self.mul(self.mul(self.inv(g), x), g)
    }

    pub fn order(&self, x: u32) -> u32 {
        self.order[x as usize]
    }

    pub fn pow(&self, x: u32, mut k: u64) -> u32 {
        let mut acc = self.identity();
        let mut b = x;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            k >>= 1;
        }
        acc
    }
}

fn dense_key(key: &[u32], radix: usize) -> usize {
    key.iter().rev().fold(0usize, |acc, &x| acc * radix + x as usize)
}
