//! Minimal primes of binomial ideals with coefficient one.
//!
//! Every minimal prime has the form `I_{Sat L_Z, ρ} + p_Z` where `Z` is an
//! admissible support, `L_Z` the lattice of exponent vectors of binomials
//! inside `Z` and `ρ` a character of `Sat L_Z / L_Z`. Its variety is the
//! closure of a torus coset in `(ℂ*)^Z`, so containment between two of them
//! reduces to a face test on the toric closure and a lattice comparison.

mod search;

pub use search::{
    canonical_mask, mask_of, mask_vars, permute_mask, search_supports, BinomialSystem, Mask, SupportSearch,
};

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::deform::{EdgeParam, VersalIdeal};
use crate::error::{Error, Result};
use crate::exactlinalg::{in_lattice, kernel_basis, restrict_to_coordinates, snf, IntMatrix};
use crate::par;
use crate::polyhedra::extreme_rays_of_inequalities;
use crate::torus::TorusGroup;

impl BinomialSystem {
    pub fn from_versal(v: &VersalIdeal) -> Result<Self> {
        BinomialSystem::new(v.nvars, v.binomials.iter().map(|b| (b.plus.clone(), b.minus.clone())).collect())
    }
}

/// Translations of `G` acting on the edge variables, identity first.
pub fn translation_perms(g: &TorusGroup) -> Vec<Vec<usize>> {
    let n = g.n;
    (0..n)
        .map(|h| {
            (0..3 * n)
                .map(|i| {
                    let e = EdgeParam::from_index(i, n);
                    EdgeParam { p: g.add(e.p, h), k: e.k }.index(n)
                })
                .collect()
        })
        .collect()
}

/// `Sat L_Z` together with coordinates adapted to `L_Z ⊆ Sat L_Z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportLattice {
    /// Exponent vectors of the binomials inside `Z`.
    pub generators: IntMatrix,
    /// Basis `b_1..b_r` of `Sat L_Z`; `L_Z` is spanned by `d_i b_i`.
    pub sat_basis: IntMatrix,
    /// Rows giving the `b`-coordinates of a vector of `Sat L_Z`.
    pub coords: IntMatrix,
    pub divisors: Vec<BigInt>,
}

impl SupportLattice {
    pub fn new(nvars: usize, gens: Vec<Vec<BigInt>>) -> Self {
        if gens.iter().all(|g| g.iter().all(Zero::is_zero)) {
            return SupportLattice {
                generators: IntMatrix::zeros(nvars, 0),
                sat_basis: IntMatrix::zeros(nvars, 0),
                coords: IntMatrix::zeros(0, nvars),
                divisors: Vec::new(),
            };
        }
        let generators = IntMatrix::from_big_columns(nvars, &gens);
        let s = snf(&generators);
        let r = s.rank();
        let idx: Vec<usize> = (0..r).collect();
        let sat_basis = s.u_inv.select_columns(&idx);
        let coords = s.u.transpose().select_columns(&idx).transpose();
        SupportLattice { generators, sat_basis, coords, divisors: s.divisors[..r].to_vec() }
    }

    pub fn rank(&self) -> usize {
        self.divisors.len()
    }

    /// `|Sat L_Z / L_Z|`.
    pub fn index(&self) -> BigInt {
        self.divisors.iter().product()
    }

    fn permuted(&self, perm: &[usize]) -> Self {
        let rows = |m: &IntMatrix| {
            let mut out = IntMatrix::zeros(m.rows(), m.cols());
            for i in 0..m.rows() {
                for j in 0..m.cols() {
                    out[(perm[i], j)] = m[(i, j)].clone();
                }
            }
            out
        };
        let mut coords = IntMatrix::zeros(self.coords.rows(), self.coords.cols());
        for i in 0..self.coords.rows() {
            for j in 0..self.coords.cols() {
                coords[(i, perm[j])] = self.coords[(i, j)].clone();
            }
        }
        SupportLattice {
            generators: rows(&self.generators),
            sat_basis: rows(&self.sat_basis),
            coords,
            divisors: self.divisors.clone(),
        }
    }

    fn contains(&self, u: &[BigInt]) -> bool {
        if self.rank() == 0 {
            return u.iter().all(Zero::is_zero);
        }
        in_lattice(&self.sat_basis, u)
    }

    /// `ρ_j(u) ∈ ℚ/ℤ` for `u ∈ Sat L_Z`, reduced to `[0, 1)`.
    fn phase(&self, j: &[i64], u: &[BigInt]) -> BigRational {
        let c = self.coords.mul_vec(u);
        let mut x = BigRational::zero();
        for i in 0..self.rank() {
            x += BigRational::new(c[i].clone() * BigInt::from(j[i]), self.divisors[i].clone());
        }
        x.clone() - BigRational::from_integer(x.floor().to_integer())
    }
}

/// Structure of a component's lattice ideal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum StructureTag {
    Main,
    /// Affine cone over `ℙ¹×ℙ²` in its Segre embedding, times `ℂ^free`.
    SegreCone { free: usize },
    Other { active: usize, rank: usize, free: usize },
}

impl fmt::Display for StructureTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StructureTag::Main => write!(f, "main"),
            StructureTag::SegreCone { free } => write!(f, "cone over Segre(P1xP2) x C^{free}"),
            StructureTag::Other { active, rank, free } => {
                write!(f, "other (active {active}, rank {rank}) x C^{free}")
            }
        }
    }
}

/// The prime `I_{Sat L_Z, ρ} + p_Z`.
#[derive(Clone, Debug, Serialize)]
pub struct ComponentPrime {
    pub support: Vec<usize>,
    #[serde(skip)]
    pub mask: Mask,
    #[serde(skip)]
    pub lattice: SupportLattice,
    pub lattice_rank: usize,
    pub character_count: BigInt,
    /// Exponents of `ρ` on the cyclic factors of `Sat L_Z / L_Z`.
    pub character: Vec<i64>,
    pub dimension: usize,
    pub orbit: usize,
    pub tag: StructureTag,
}

impl ComponentPrime {
    pub fn is_main(&self) -> bool {
        self.tag == StructureTag::Main
    }

    fn permuted(&self, perm: &[usize]) -> Self {
        let mask = permute_mask(self.mask, perm);
        ComponentPrime { support: mask_vars(mask), mask, lattice: self.lattice.permuted(perm), ..self.clone() }
    }

    /// Same support and same character on `Sat L_Z`.
    pub fn same_prime(&self, other: &ComponentPrime) -> bool {
        self.mask == other.mask
            && self.lattice.rank() == other.lattice.rank()
            && self.lattice.sat_basis.columns().iter().all(|u| {
                other.lattice.contains(u)
                    && self.lattice.phase(&self.character, u) == other.lattice.phase(&other.character, u)
            })
    }

    /// Direct membership of `t^a − t^b` in the prime.
    pub fn contains_binomial(&self, a: &[i64], b: &[i64]) -> bool {
        let meets = |e: &[i64]| (0..e.len()).any(|i| e[i] != 0 && self.mask >> i & 1 == 0);
        match (meets(a), meets(b)) {
            (true, true) => true,
            (false, false) => {
                let u: Vec<BigInt> = a.iter().zip(b).map(|(x, y)| BigInt::from(x - y)).collect();
                self.lattice.contains(&u) && self.lattice.phase(&self.character, &u).is_zero()
            }
            _ => false,
        }
    }

    /// Whether this variety lies in the closure of `other`, i.e. the prime
    /// of `other` is contained in this one.
    pub fn is_contained_in(&self, other: &ComponentPrime) -> bool {
        let (z, y) = (self.mask, other.mask);
        if z & !y != 0 || z == y || self.dimension >= other.dimension {
            return false;
        }
        if !is_face(&other.lattice, y, z) {
            return false;
        }
        if other.lattice.rank() == 0 {
            return true;
        }
        let keep: Vec<bool> = (0..other.lattice.sat_basis.rows()).map(|i| z >> i & 1 == 1).collect();
        let restricted = restrict_to_coordinates(&other.lattice.sat_basis, &keep);
        restricted.columns().iter().all(|u| {
            self.lattice.contains(u)
                && self.lattice.phase(&self.character, u) == other.lattice.phase(&other.character, u)
        })
    }
}

/// Whether some `w ⊥ Sat L` with `w ≥ 0` vanishes exactly on `sub` inside
/// `sup`, so that the closure of the torus coset meets support `sub`.
fn is_face(lat: &SupportLattice, sup: Mask, sub: Mask) -> bool {
    let drop = mask_vars(sup & !sub);
    if drop.is_empty() || lat.rank() == 0 {
        return true;
    }
    let r = lat.rank();
    let mt: Vec<Vec<BigInt>> = (0..r).map(|j| drop.iter().map(|&i| lat.sat_basis[(i, j)].clone()).collect()).collect();
    let mt = IntMatrix::from_big_columns(drop.len(), &mt).transpose();
    let k = kernel_basis(&mt);
    if k.cols() == 0 {
        return false;
    }
    let rows = k.to_i64_rows().expect("kernel entries fit in i64");
    let Ok(rays) = extreme_rays_of_inequalities(&rows, k.cols()) else {
        return false;
    };
    (0..drop.len()).all(|i| {
        rays.iter().any(|y| rows[i].iter().zip(y).map(|(a, b)| a * b).sum::<i64>() > 0)
    })
}

/// All candidate primes with support `z`, one per character of
/// `Sat L_Z / L_Z`.
pub fn candidates_for_support(sys: &BinomialSystem, z: Mask) -> Result<Vec<ComponentPrime>> {
    let gens: Vec<Vec<BigInt>> = sys
        .binomials
        .iter()
        .zip(sys.masks())
        .filter(|(_, (p, m))| p & !z == 0 && m & !z == 0)
        .map(|((p, m), _)| p.iter().zip(m).map(|(a, b)| BigInt::from(a - b)).collect())
        .collect();
    let lattice = SupportLattice::new(sys.nvars, gens);
    let dims: Vec<i64> = lattice
        .divisors
        .iter()
        .map(|d| d.to_i64().ok_or(Error::Overflow("character group")))
        .collect::<Result<_>>()?;
    let count: i64 = dims.iter().product();
    if count > 1 << 20 {
        return Err(Error::GuardExceeded { nodes: count as usize });
    }
    let support = mask_vars(z);
    let dimension = support.len() - lattice.rank();
    let mut out = Vec::with_capacity(count as usize);
    for idx in 0..count {
        let mut rest = idx;
        let character: Vec<i64> = dims
            .iter()
            .rev()
            .map(|&d| {
                let (q, r) = rest.div_rem(&d);
                rest = q;
                r
            })
            .collect::<Vec<_>>()
            .into_iter()
            .rev()
            .collect();
        out.push(ComponentPrime {
            support: support.clone(),
            mask: z,
            lattice_rank: lattice.rank(),
            lattice: lattice.clone(),
            character_count: lattice.index(),
            character,
            dimension,
            orbit: 0,
            tag: StructureTag::Main,
        });
    }
    Ok(out)
}

/// Deduplicated `G`-orbit of a candidate.
fn orbit_of(c: &ComponentPrime, perms: &[Vec<usize>]) -> Vec<ComponentPrime> {
    let mut out: Vec<ComponentPrime> = Vec::new();
    for p in perms {
        let m = c.permuted(p);
        if !out.iter().any(|o| o.same_prime(&m)) {
            out.push(m);
        }
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct ComponentCensus {
    pub nvars: usize,
    pub components: Vec<ComponentPrime>,
    /// Component indices of each `G`-orbit.
    pub orbits: Vec<Vec<usize>>,
    pub histogram: BTreeMap<usize, usize>,
    pub nodes: usize,
    /// False when the support search hit its guard; the list may then miss
    /// components.
    pub complete: bool,
}

/// Minimal primes of a binomial system, found from the admissible supports
/// modulo the permutation group `perms` (identity included).
pub fn census(sys: &BinomialSystem, perms: &[Vec<usize>], guard: usize) -> Result<ComponentCensus> {
    let s = search_supports(sys, perms, guard);
    let nested: Vec<Result<Vec<ComponentPrime>>> = par::map(&s.closed, |&z| candidates_for_support(sys, z));
    let mut reps = Vec::new();
    for r in nested {
        reps.extend(r?);
    }
    let masks = sys.masks();
    reps.retain(|c| sys.binomials.iter().zip(&masks).all(|((p, m), _)| c.contains_binomial(p, m)));
    let all: Vec<ComponentPrime> = par::flat_map(&reps, |c| orbit_of(c, perms));
    let keep = par::map(&reps, |x| !all.iter().any(|y| x.is_contained_in(y)));
    let minimal: Vec<&ComponentPrime> = reps.iter().zip(keep).filter(|(_, k)| *k).map(|(c, _)| c).collect();

    let full = sys.full();
    let mut orbits_raw: Vec<Vec<ComponentPrime>> = minimal
        .into_iter()
        .map(|c| {
            let mut c = c.clone();
            c.tag = if c.mask == full { StructureTag::Main } else { classify_nonmain(&c) };
            orbit_of(&c, perms)
        })
        .collect();
    // main first, then by dimension, then by least support
    orbits_raw.sort_by(|a, b| {
        let key = |o: &Vec<ComponentPrime>| (o[0].mask != full, std::cmp::Reverse(o[0].dimension), o.len());
        key(a).cmp(&key(b)).then_with(|| {
            let least = |o: &Vec<ComponentPrime>| o.iter().map(|c| c.support.clone()).min();
            least(a).cmp(&least(b))
        })
    });
    let mut components = Vec::new();
    let mut orbits = Vec::new();
    for (id, mut o) in orbits_raw.into_iter().enumerate() {
        o.sort_by(|a, b| a.support.cmp(&b.support).then(a.character.cmp(&b.character)));
        let start = components.len();
        for mut c in o {
            c.orbit = id;
            components.push(c);
        }
        orbits.push((start..components.len()).collect());
    }
    let mut histogram = BTreeMap::new();
    for c in &components {
        *histogram.entry(c.dimension).or_insert(0) += 1;
    }
    Ok(ComponentCensus { nvars: sys.nvars, components, orbits, histogram, nodes: s.nodes, complete: s.complete })
}

/// Canonical representatives of the closed admissible supports of the versal
/// ideal under translations.
pub fn admissible_supports(v: &VersalIdeal, g: &TorusGroup, guard: usize) -> Result<Vec<Vec<usize>>> {
    let sys = BinomialSystem::from_versal(v)?;
    let s = search_supports(&sys, &translation_perms(g), guard);
    if !s.complete {
        return Err(Error::GuardExceeded { nodes: s.nodes });
    }
    Ok(s.closed.iter().map(|&m| mask_vars(m)).collect())
}

/// The census of the versal ideal; fails when the guard is exceeded.
pub fn minimal_primes(v: &VersalIdeal, g: &TorusGroup, guard: usize) -> Result<ComponentCensus> {
    let c = minimal_primes_partial(v, g, guard)?;
    if !c.complete {
        return Err(Error::GuardExceeded { nodes: c.nodes });
    }
    Ok(c)
}

/// As [`minimal_primes`], but returns an incomplete census instead of failing.
pub fn minimal_primes_partial(v: &VersalIdeal, g: &TorusGroup, guard: usize) -> Result<ComponentCensus> {
    census(&BinomialSystem::from_versal(v)?, &translation_perms(g), guard)
}

/// Variables of `Z` that occur in `L_Z`.
fn active_vars(c: &ComponentPrime) -> Vec<usize> {
    let b = &c.lattice.sat_basis;
    (0..b.rows()).filter(|&i| (0..b.cols()).any(|j| !b[(i, j)].is_zero())).collect()
}

/// Recognizes the cone over the Segre embedding of `ℙ¹×ℙ²`: `Sat L_Z` has
/// rank two, lives on six variables, equals `L_Z`, and is the lattice of
/// `2×2` minors for some arrangement of the six variables in a `2×3` grid.
pub fn classify_nonmain(c: &ComponentPrime) -> StructureTag {
    let active = active_vars(c);
    let rank = c.lattice.rank();
    let free = c.support.len() - active.len();
    let other = StructureTag::Other { active: active.len(), rank, free };
    if rank != 2 || active.len() != 6 || !c.character_count.is_one() {
        return other;
    }
    let nvars = c.lattice.sat_basis.rows();
    let minor = |cells: [usize; 4]| -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); nvars];
        for (s, &x) in [1, 1, -1, -1].iter().zip(&cells) {
            v[x] += BigInt::from(*s);
        }
        v
    };
    // grid position k holds active[perm[k]]; rows (0,1,2), (3,4,5)
    let found = permutations(6).into_iter().any(|p| {
        let at = |k: usize| active[p[k]];
        let m1 = minor([at(0), at(4), at(1), at(3)]);
        let m2 = minor([at(1), at(5), at(2), at(4)]);
        c.lattice.contains(&m1) && c.lattice.contains(&m2)
    });
    if found {
        StructureTag::SegreCone { free }
    } else {
        other
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

impl ComponentCensus {
    /// `"29 components: 1×dim9, 21×dim8, 7×dim7"`.
    pub fn summary_line(&self) -> String {
        let parts: Vec<String> = self.histogram.iter().rev().map(|(d, k)| format!("{k}×dim{d}")).collect();
        format!("{} components: {}", self.components.len(), parts.join(", "))
    }

    pub fn main_count(&self) -> usize {
        self.components.iter().filter(|c| c.is_main()).count()
    }

    /// Every binomial of `sys` lies in every prime.
    pub fn contains_system(&self, sys: &BinomialSystem) -> bool {
        self.components.iter().all(|c| sys.binomials.iter().all(|(p, m)| c.contains_binomial(p, m)))
    }

    pub fn pairwise_incomparable(&self) -> bool {
        let cs = &self.components;
        (0..cs.len()).all(|i| (0..cs.len()).all(|j| i == j || !cs[i].is_contained_in(&cs[j])))
            && (0..cs.len()).all(|i| (i + 1..cs.len()).all(|j| !cs[i].same_prime(&cs[j])))
    }

    pub fn is_stable(&self, perms: &[Vec<usize>]) -> bool {
        self.components
            .iter()
            .all(|c| perms.iter().all(|p| self.components.iter().any(|d| d.same_prime(&c.permuted(p)))))
    }

    pub fn to_json(&self) -> serde_json::Value {
        let comps: Vec<serde_json::Value> = self
            .components
            .iter()
            .map(|c| {
                serde_json::json!({
                    "support": c.support,
                    "lattice_rank": c.lattice_rank,
                    "dimension": c.dimension,
                    "orbit": c.orbit,
                    "character_count": c.character_count.to_string(),
                    "tag": c.tag.to_string(),
                })
            })
            .collect();
        serde_json::json!({
            "nvars": self.nvars,
            "complete": self.complete,
            "count": self.components.len(),
            "histogram": self.histogram,
            "orbits": self.orbits.len(),
            "components": comps,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single() -> BinomialSystem {
        BinomialSystem::new(4, vec![(vec![1, 1, 0, 0], vec![0, 0, 1, 1])]).unwrap()
    }

    #[test]
    fn single_binomial_census() {
        // the quadric cone is irreducible; the coordinate planes lie on it
        let c = census(&single(), &[vec![0, 1, 2, 3]], 1000).unwrap();
        assert_eq!(c.components.len(), 1);
        assert_eq!(c.histogram, BTreeMap::from([(3, 1)]));
        assert!(c.pairwise_incomparable());
        assert!(c.contains_system(&single()));
    }

    #[test]
    fn twisted_main_components() {
        // t1² − t2²: Sat L / L = ℤ/2, two lines t1 = ±t2
        let sys = BinomialSystem::new(2, vec![(vec![2, 0], vec![0, 2])]).unwrap();
        let c = census(&sys, &[vec![0, 1]], 100).unwrap();
        assert_eq!(c.main_count(), 2);
        assert_eq!(c.components.len(), 2);
        assert!(c.pairwise_incomparable());
    }

    #[test]
    fn embedded_point_is_not_minimal() {
        // t1 t2 − t1 t3: components t1 = 0 and t2 = t3
        let sys = BinomialSystem::new(3, vec![(vec![1, 1, 0], vec![1, 0, 1])]).unwrap();
        let c = census(&sys, &[vec![0, 1, 2]], 100).unwrap();
        let mut sup: Vec<Vec<usize>> = c.components.iter().map(|c| c.support.clone()).collect();
        sup.sort();
        assert_eq!(sup, vec![vec![0, 1, 2], vec![1, 2]]);
        assert!(c.components.iter().all(|x| x.dimension == 2));
    }

    #[test]
    fn segre_cone_recognized() {
        // 2×2 minors of [[t0 t1 t2],[t3 t4 t5]]
        let e = |v: &[usize]| {
            let mut x = vec![0; 6];
            v.iter().for_each(|&i| x[i] += 1);
            x
        };
        let sys = BinomialSystem::new(
            6,
            vec![(e(&[0, 4]), e(&[1, 3])), (e(&[0, 5]), e(&[2, 3])), (e(&[1, 5]), e(&[2, 4]))],
        )
        .unwrap();
        let cands = candidates_for_support(&sys, sys.full()).unwrap();
        assert_eq!(cands.len(), 1);
        assert_eq!(cands[0].dimension, 4);
        assert_eq!(classify_nonmain(&cands[0]), StructureTag::SegreCone { free: 0 });
    }
}
