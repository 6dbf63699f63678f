//! Enumeration of admissible variable supports by downward propagation.
//!
//! A support `Z` is admissible when every binomial has both monomial supports
//! inside `Z` or both meeting its complement. Supports are bitmasks over at
//! most 128 variables.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::par;

pub type Mask = u128;

/// The variables of a mask, ascending.
pub fn mask_vars(m: Mask) -> Vec<usize> {
    (0..128).filter(|&i| m >> i & 1 == 1).collect()
}

pub fn mask_of(vars: &[usize]) -> Mask {
    vars.iter().fold(0, |m, &i| m | 1 << i)
}

fn full_mask(nvars: usize) -> Mask {
    if nvars == 128 {
        Mask::MAX
    } else {
        (1 << nvars) - 1
    }
}

/// A binomial ideal `(t^{plus} − t^{minus})` with coefficient one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BinomialSystem {
    pub nvars: usize,
    pub binomials: Vec<(Vec<i64>, Vec<i64>)>,
}

impl BinomialSystem {
    pub fn new(nvars: usize, binomials: Vec<(Vec<i64>, Vec<i64>)>) -> Result<Self> {
        if nvars > 128 {
            return Err(Error::Invalid(format!("{nvars} variables exceed the 128-variable support limit")));
        }
        for (p, m) in &binomials {
            if p.len() != nvars || m.len() != nvars {
                return Err(Error::DimensionMismatch { expected: nvars, found: p.len().max(m.len()) });
            }
            if p.iter().chain(m).any(|&x| x < 0) {
                return Err(Error::Invalid("negative exponent".into()));
            }
        }
        Ok(BinomialSystem { nvars, binomials })
    }

    pub fn full(&self) -> Mask {
        full_mask(self.nvars)
    }

    /// Monomial supports of every binomial.
    pub fn masks(&self) -> Vec<(Mask, Mask)> {
        let sup = |e: &[i64]| (0..e.len()).filter(|&i| e[i] != 0).fold(0 as Mask, |m, i| m | 1 << i);
        self.binomials.iter().map(|(p, m)| (sup(p), sup(m))).collect()
    }

    pub fn is_admissible(&self, z: Mask) -> bool {
        self.masks().iter().all(|&(p, m)| status(p, m, z) != Status::Broken)
    }

    /// Whether the system is stable under a permutation of the variables.
    pub fn is_invariant(&self, perm: &[usize]) -> bool {
        let key = |(p, m): &(Vec<i64>, Vec<i64>)| {
            let (a, b) = (permute_vec(p, perm), permute_vec(m, perm));
            if a <= b {
                (a, b)
            } else {
                (b, a)
            }
        };
        let norm = |(p, m): &(Vec<i64>, Vec<i64>)| if p <= m { (p.clone(), m.clone()) } else { (m.clone(), p.clone()) };
        let set: HashSet<(Vec<i64>, Vec<i64>)> = self.binomials.iter().map(norm).collect();
        self.binomials.iter().all(|b| set.contains(&key(b)))
    }
}

fn permute_vec(v: &[i64], perm: &[usize]) -> Vec<i64> {
    let mut out = vec![0; v.len()];
    for (i, &x) in v.iter().enumerate() {
        out[perm[i]] = x;
    }
    out
}

pub fn permute_mask(m: Mask, perm: &[usize]) -> Mask {
    mask_vars(m).iter().fold(0, |acc, &i| acc | 1 << perm[i])
}

/// Least image of `m` under the permutations (which include the identity).
pub fn canonical_mask(m: Mask, perms: &[Vec<usize>]) -> Mask {
    perms.iter().map(|p| permute_mask(m, p)).min().unwrap_or(m)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Status {
    Inside,
    Outside,
    /// Exactly one monomial meets the complement.
    Broken,
}

fn status(p: Mask, m: Mask, z: Mask) -> Status {
    match (p & !z == 0, m & !z == 0) {
        (true, true) => Status::Inside,
        (false, false) => Status::Outside,
        _ => Status::Broken,
    }
}

/// Result of the support search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SupportSearch {
    /// Canonical representatives of every admissible support reached.
    pub admissible: Vec<Mask>,
    /// The subset of `admissible` that cannot be enlarged by a single free
    /// variable without changing the lattice.
    pub closed: Vec<Mask>,
    pub nodes: usize,
    pub complete: bool,
}

struct Searcher<'a> {
    masks: Vec<(Mask, Mask)>,
    perms: &'a [Vec<usize>],
    order: Vec<usize>,
    full: Mask,
}

impl Searcher<'_> {
    /// All admissible sets reached from `z` by forced removals. Returns the
    /// number of states visited alongside.
    fn close(&self, z: Mask, out: &mut Vec<Mask>, seen: &mut HashSet<Mask>) -> usize {
        if !seen.insert(z) {
            return 0;
        }
        let mut nodes = 1;
        let broken = self.masks.iter().find(|&&(p, m)| status(p, m, z) == Status::Broken);
        let Some(&(p, m)) = broken else {
            out.push(z);
            return nodes;
        };
        // the monomial still inside must lose a variable
        let inside = if p & !z == 0 { p } else { m };
        for &v in &self.order {
            if inside >> v & 1 == 1 {
                nodes += self.close(z & !(1 << v), out, seen);
            }
        }
        nodes
    }

    fn children(&self, z: Mask) -> (Vec<Mask>, usize) {
        let mut out = Vec::new();
        let mut seen = HashSet::new();
        let mut nodes = 0;
        for &v in &self.order {
            if z >> v & 1 == 1 {
                nodes += self.close(z & !(1 << v), &mut out, &mut seen);
            }
        }
        let mut canon: Vec<Mask> = out.into_iter().map(|m| canonical_mask(m, self.perms)).collect();
        canon.sort_unstable();
        canon.dedup();
        (canon, nodes)
    }

    /// Admissible `z` is closed unless adding one variable keeps it
    /// admissible without bringing a new binomial inside.
    fn is_closed(&self, z: Mask) -> bool {
        !(0..128).filter(|&i| self.full >> i & 1 == 1 && z >> i & 1 == 0).any(|i| {
            let w = z | 1 << i;
            self.masks.iter().all(|&(p, m)| {
                let (before, after) = (status(p, m, z), status(p, m, w));
                after != Status::Broken && before == after
            })
        })
    }
}

/// Breadth-first enumeration of admissible supports up to the permutation
/// group `perms`. Stops once more than `guard` states have been visited.
pub fn search_supports(sys: &BinomialSystem, perms: &[Vec<usize>], guard: usize) -> SupportSearch {
    let masks = sys.masks();
    // highest binomial incidence first, then index
    let mut incidence = vec![0usize; sys.nvars];
    for &(p, m) in &masks {
        for v in mask_vars(p | m) {
            incidence[v] += 1;
        }
    }
    let mut order: Vec<usize> = (0..sys.nvars).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(incidence[v]), v));
    let s = Searcher { masks, perms, order, full: sys.full() };

    let start = canonical_mask(sys.full(), perms);
    let mut found: HashSet<Mask> = HashSet::from([start]);
    let mut frontier = vec![start];
    let mut nodes = 1;
    let mut complete = true;
    while !frontier.is_empty() {
        let level = par::map(&frontier, |&z| s.children(z));
        let mut next = Vec::new();
        for (kids, k) in level {
            nodes += k;
            for c in kids {
                if found.insert(c) {
                    next.push(c);
                }
            }
        }
        if nodes > guard {
            complete = false;
            break;
        }
        next.sort_unstable();
        frontier = next;
    }
    let mut admissible: Vec<Mask> = found.into_iter().collect();
    admissible.sort_unstable_by(|a, b| b.count_ones().cmp(&a.count_ones()).then(a.cmp(b)));
    let closed = admissible.iter().copied().filter(|&z| s.is_closed(z)).collect();
    SupportSearch { admissible, closed, nodes, complete }
}
