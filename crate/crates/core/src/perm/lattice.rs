//! Conjugacy classes of subgroups by cyclic extension: every subgroup is
//! reached from a smaller class representative by adjoining one cyclic
//! subgroup of prime-power order, taken up to the representative's normalizer.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};

use fixedbitset::FixedBitSet;

use super::bsgs::PermGroup;
use super::elements::ElementTable;
use crate::arith::prime_divisors_u64;
use crate::error::Result;

/// Default refusal threshold on `|G|`.
pub const DEFAULT_MAX_ORDER: u64 = 25000;

/// Cyclic subgroups of prime-power order, keyed by least generator.
#[derive(Debug, Clone)]
struct Zuppos {
    gen: Vec<u32>,
    of: Vec<u32>,
}

const NO_ZUPPO: u32 = u32::MAX;

impl Zuppos {
    fn new(t: &ElementTable) -> Zuppos {
        let mut of = vec![NO_ZUPPO; t.len()];
        let mut gen = Vec::new();
        for x in 0..t.len() as u32 {
            let o = t.order(x) as u64;
            if o == 1 || of[x as usize] != NO_ZUPPO || prime_divisors_u64(o).len() != 1 {
                continue;
            }
            let id = gen.len() as u32;
            gen.push(x);
            let mut y = x;
            for k in 1..=o {
                if num_integer::gcd(k, o) == 1 {
                    of[y as usize] = id;
                }
                y = t.mul(y, x);
            }
        }
        Zuppos { gen, of }
    }
}

/// One conjugacy class of subgroups.
#[derive(Debug, Clone)]
pub struct SubgroupClass {
    pub order: u64,
    pub class_size: u64,
    /// Canonical generators of the representative, as element indices.
    pub gens: Vec<u32>,
    /// Every conjugate; `members[0]` is the representative.
    pub members: Vec<FixedBitSet>,
}

impl SubgroupClass {
    pub fn representative(&self) -> &FixedBitSet {
        &self.members[0]
    }
}

/// The full subgroup lattice of a group, up to conjugacy.
#[derive(Debug, Clone)]
pub struct Lattice {
    pub group: PermGroup,
    pub elements: ElementTable,
    pub classes: Vec<SubgroupClass>,
}

struct RawClass {
    gens: Vec<u32>,
    members: Vec<FixedBitSet>,
    normalizer_gens: Vec<u32>,
}

fn conj_set(t: &ElementTable, table: &[u32], s: &FixedBitSet) -> FixedBitSet {
    let mut out = FixedBitSet::with_capacity(t.len());
    for x in s.ones() {
        out.insert(table[x] as usize);
    }
    out
}

/// `<start, extra>` where `start` is closed. Short-circuits to the whole
/// group once more than half of it is reached.
pub(crate) fn closure(t: &ElementTable, start: &FixedBitSet, gens: &[u32], extra: &[u32]) -> FixedBitSet {
    let n = t.len();
    let mut bits = start.clone();
    if bits.count_ones(..) == 0 {
        bits.insert(t.identity() as usize);
    }
    let mut list: Vec<u32> = bits.ones().map(|x| x as u32).collect();
    let all: Vec<u32> = gens.iter().chain(extra).copied().collect();
    let mut i = 0;
    while i < list.len() {
        for &g in &all {
            let y = t.mul(list[i], g);
            if !bits.put(y as usize) {
                list.push(y);
            }
        }
        if 2 * list.len() > n {
            let mut full = FixedBitSet::with_capacity(n);
            full.insert_range(..);
            return full;
        }
        i += 1;
    }
    bits
}

/// Subgroup generated by `gens`.
pub fn generate(t: &ElementTable, gens: &[u32]) -> FixedBitSet {
    let mut one = FixedBitSet::with_capacity(t.len());
    one.insert(t.identity() as usize);
    closure(t, &one, &[], gens)
}

/// Greedy generating set: scan elements in index order, keep each one not
/// already generated.
pub fn canonical_gens(t: &ElementTable, sub: &FixedBitSet) -> Vec<u32> {
    let mut cur = FixedBitSet::with_capacity(t.len());
    cur.insert(t.identity() as usize);
    let mut gens = Vec::new();
    let target = sub.count_ones(..);
    for x in sub.ones() {
        if cur.count_ones(..) == target {
            break;
        }
        if !cur.contains(x) {
            gens.push(x as u32);
            cur = closure(t, &cur, &gens, &[]);
        }
    }
    gens
}

/// Lexicographic comparison of the sorted element lists of equal-size sets.
pub(crate) fn cmp_sets(a: &FixedBitSet, b: &FixedBitSet) -> Ordering {
    a.ones().cmp(b.ones())
}

fn find(parent: &mut [u32], mut x: u32) -> u32 {
    while parent[x as usize] != x {
        parent[x as usize] = parent[parent[x as usize] as usize];
        x = parent[x as usize];
    }
    x
}

/// Enumerates every conjugacy class of subgroups of `group`, refusing when
/// `|G|` exceeds `max_order`. Classes are sorted by order, then by the
/// lexicographically least member.
pub fn enumerate_subgroups(group: &PermGroup, max_order: u64) -> Result<Lattice> {
    let t = ElementTable::new(group, max_order)?;
    let n = t.len();
    let g_gens: Vec<u32> =
        group.generators().iter().filter(|g| !g.is_identity()).map(|g| t.index_of(g).expect("generator is an element")).collect();
    let conj_tables: Vec<Vec<u32>> = g_gens.iter().map(|&g| (0..n as u32).map(|x| t.conj(x, g)).collect()).collect();
    let zuppos = Zuppos::new(&t);

    let mut raw: Vec<RawClass> = Vec::new();
    let mut seen: HashMap<FixedBitSet, usize> = HashMap::new();
    let mut trivial = FixedBitSet::with_capacity(n);
    trivial.insert(t.identity() as usize);

    let add_class = |raw: &mut Vec<RawClass>, seen: &mut HashMap<FixedBitSet, usize>, k: FixedBitSet, gens: Vec<u32>| {
        let id = raw.len();
        let mut members = vec![k];
        let mut transversal = vec![t.identity()];
        let mut index: HashMap<FixedBitSet, usize> = HashMap::new();
        index.insert(members[0].clone(), 0);
        let mut ngens: HashSet<u32> = HashSet::new();
        let mut i = 0;
        while i < members.len() {
            for (j, table) in conj_tables.iter().enumerate() {
                let s = g_gens[j];
                let image = conj_set(&t, table, &members[i]);
                let ts = t.mul(transversal[i], s);
                match index.get(&image) {
                    Some(&k) => {
                        let schreier = t.mul(ts, t.inv(transversal[k]));
                        if schreier != t.identity() {
                            ngens.insert(schreier);
                        }
                    }
                    None => {
                        index.insert(image.clone(), members.len());
                        members.push(image);
                        transversal.push(ts);
                    }
                }
            }
            i += 1;
        }
        for m in &members {
            seen.insert(m.clone(), id);
        }
        let mut normalizer_gens: Vec<u32> = ngens.into_iter().collect();
        normalizer_gens.sort_unstable();
        raw.push(RawClass { gens, members, normalizer_gens });
    };

    add_class(&mut raw, &mut seen, trivial, Vec::new());
    let zn = zuppos.gen.len();
    let mut idx = 0;
    while idx < raw.len() {
        let h = raw[idx].members[0].clone();
        let h_gens = raw[idx].gens.clone();
        let mut parent: Vec<u32> = (0..zn as u32).collect();
        for &ng in &raw[idx].normalizer_gens {
            for z in 0..zn {
                let image = zuppos.of[t.conj(zuppos.gen[z], ng) as usize];
                let (a, b) = (find(&mut parent, z as u32), find(&mut parent, image));
                if a != b {
                    let (lo, hi) = (a.min(b), a.max(b));
                    parent[hi as usize] = lo;
                }
            }
        }
        for z in 0..zn {
            if find(&mut parent, z as u32) != z as u32 {
                continue;
            }
            let zg = zuppos.gen[z];
            if h.contains(zg as usize) {
                continue;
            }
            let k = closure(&t, &h, &h_gens, &[zg]);
            if seen.contains_key(&k) {
                continue;
            }
            let mut gens = h_gens.clone();
            gens.push(zg);
            add_class(&mut raw, &mut seen, k, gens);
        }
        idx += 1;
    }

    let mut classes: Vec<SubgroupClass> = raw
        .into_iter()
        .map(|rc| {
            let mut members = rc.members;
            members.sort_by(cmp_sets);
            let order = members[0].count_ones(..) as u64;
            let gens = canonical_gens(&t, &members[0]);
            SubgroupClass { order, class_size: members.len() as u64, gens, members }
        })
        .collect();
    classes.sort_by(|a, b| a.order.cmp(&b.order).then_with(|| cmp_sets(&a.members[0], &b.members[0])));
    Ok(Lattice { group: group.clone(), elements: t, classes })
}

impl Lattice {
    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn total_subgroups(&self) -> u64 {
        self.classes.iter().map(|c| c.class_size).sum()
    }

    /// The representative of class `i` as a permutation group.
    pub fn representative_group(&self, i: usize) -> PermGroup {
        let gens = self.classes[i].gens.iter().map(|&x| self.elements.perm(x)).collect();
        PermGroup::new(self.group.degree(), gens).expect("same degree")
    }

    /// Generators of a subgroup in cycle notation, `;`-separated.
    pub fn gens_string(&self, gens: &[u32]) -> String {
        if gens.is_empty() {
            return "()".into();
        }
        gens.iter().map(|&x| self.elements.perm(x).to_string()).collect::<Vec<_>>().join(";")
    }

    /// One line per class: `order=<o> class_size=<c> gens=<cycles>`.
    pub fn dump(&self) -> String {
        self.classes
            .iter()
            .map(|c| format!("order={} class_size={} gens={}\n", c.order, c.class_size, self.gens_string(&c.gens)))
            .collect()
    }

    /// Class index of an arbitrary subgroup, by exact member lookup.
    pub fn class_of(&self, sub: &FixedBitSet) -> Option<usize> {
        let order = sub.count_ones(..) as u64;
        self.classes.iter().position(|c| c.order == order && c.members.iter().any(|m| m == sub))
    }
}
