use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::arith::{dividing_primes, PrimeSet};
use crate::error::{Error, Result};
use crate::lie::{group_order, parse_group_id, Family, GroupId};
use crate::perm::{DEFAULT_MAX_ORDER, PSL2_MAX_Q};

const DEFAULT_GRID: &str = include_str!("../../data/default_grid.json");

/// On-disk grid. `groups` expand to every nonempty set of odd primes
/// dividing the group order; `cases` are taken verbatim.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridFile {
    #[serde(default)]
    pub description: Option<String>,
    #[serde(default)]
    pub groups: Vec<String>,
    #[serde(default)]
    pub cases: Vec<GridCaseSpec>,
    #[serde(default)]
    pub max_order: Option<u64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridCaseSpec {
    pub group: String,
    pub pi: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridCase {
    pub group: GroupId,
    pub pi: PrimeSet,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grid {
    pub cases: Vec<GridCase>,
    pub max_order: u64,
}

/// Nonempty sets of odd primes dividing `|S|`, by size then lexicographically.
pub fn odd_prime_subsets(g: &GroupId) -> Vec<PrimeSet> {
    let candidates = PrimeSet::from_sorted_unchecked(crate::arith::primes_up_to(64).into_iter().filter(|&t| t > 2).collect());
    let odd = dividing_primes(&group_order(g), &candidates);
    odd.nonempty_subsets()
}

impl Grid {
    /// The pinned desk grid: `PSL_2(q)` for `q ∈ {4,5,7,8,9,11,13}`.
    pub fn default_grid() -> Grid {
        Grid::from_json(DEFAULT_GRID).expect("pinned grid parses")
    }

    pub fn from_json(text: &str) -> Result<Grid> {
        let file: GridFile = serde_json::from_str(text).map_err(|e| Error::Grid(e.to_string()))?;
        Grid::from_file(&file)
    }

    pub fn load(path: &Path) -> Result<Grid> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Grid(format!("{}: {e}", path.display())))?;
        Grid::from_json(&text)
    }

    pub fn from_file(file: &GridFile) -> Result<Grid> {
        let mut cases = Vec::new();
        for spec in &file.groups {
            let g = parse_group_id(spec)?;
            for pi in odd_prime_subsets(&g) {
                cases.push(GridCase { group: g.clone(), pi });
            }
        }
        for c in &file.cases {
            let group = parse_group_id(&c.group)?;
            let pi = PrimeSet::new(c.pi.iter().copied())?;
            cases.push(GridCase { group, pi });
        }
        let max_order = file.max_order.unwrap_or(DEFAULT_MAX_ORDER);
        if max_order == 0 {
            return Err(Error::Grid("max_order must be positive".into()));
        }
        Ok(Grid { cases, max_order })
    }
}

/// Permutation construction of a Lie-type descriptor, when one exists.
pub fn perm_spec(g: &GroupId) -> std::result::Result<String, String> {
    match (g.family(), g.n(), g.q_u64()) {
        (Family::A, 2, Some(q)) if q <= PSL2_MAX_Q => Ok(format!("psl2:{q}")),
        (Family::A, 2, _) => Err(format!("psl2:q is only constructed for q <= {PSL2_MAX_Q}")),
        _ => Err(format!("no permutation construction for {g}")),
    }
}
