//! Brute-force oracles shared by the integration tests. None of them call the
//! library routine they are compared against.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use equivelar::components::{candidates_for_support, BinomialSystem, ComponentPrime, Mask};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Whether `(x, y)` lies in the lattice spanned by `(a, 0)` and `(b, c)`.
pub fn in_gamma(a: i64, b: i64, c: i64, (x, y): (i64, i64)) -> bool {
    y % c == 0 && (x - (y / c) * b) % a == 0
}

/// Least `k ≥ 1` with `k·v ∈ Γ`.
pub fn order_of(a: i64, b: i64, c: i64, v: (i64, i64)) -> i64 {
    (1..).find(|&k| in_gamma(a, b, c, (k * v.0, k * v.1))).unwrap()
}

/// Elementary divisors `(d₁, d₂)` of `ℤ²/Γ` from the exponent, found as the
/// largest element order over all `n` classes.
pub fn divisors_of(a: i64, b: i64, c: i64) -> (i64, i64) {
    let n = a * c;
    let exponent = (0..a).flat_map(|x| (0..c).map(move |y| (x, y))).map(|v| order_of(a, b, c, v)).max().unwrap();
    (n / exponent, exponent)
}

/// Vertices, edges and triangles of the hexagonal tessellation modulo `Γ`,
/// with classes reduced into `[0, a) × [0, c)`.
pub struct Tessellation {
    pub n: usize,
    pub triangles: Vec<[(i64, i64); 3]>,
}

pub fn reduce(a: i64, b: i64, c: i64, (x, y): (i64, i64)) -> (i64, i64) {
    let y2 = y.rem_euclid(c);
    let k = (y - y2) / c;
    ((x - k * b).rem_euclid(a), y2)
}

pub fn tessellation(a: i64, b: i64, c: i64) -> Tessellation {
    let mut triangles = Vec::new();
    for x in 0..a {
        for y in 0..c {
            // directions (1,0), (−1,1), (0,−1) and their negatives
            let up = [(x, y), (x + 1, y), (x, y + 1)];
            let down = [(x, y), (x + 1, y), (x + 1, y - 1)];
            for t in [up, down] {
                triangles.push(t.map(|p| reduce(a, b, c, p)));
            }
        }
    }
    Tessellation { n: (a * c) as usize, triangles }
}

impl Tessellation {
    fn sets(&self) -> Vec<BTreeSet<(i64, i64)>> {
        self.triangles.iter().map(|t| t.iter().copied().collect()).collect()
    }

    pub fn edges(&self) -> BTreeSet<[(i64, i64); 2]> {
        let mut out = BTreeSet::new();
        for t in &self.triangles {
            for (i, j) in [(0, 1), (0, 2), (1, 2)] {
                let (u, v) = (t[i].min(t[j]), t[i].max(t[j]));
                out.insert([u, v]);
            }
        }
        out
    }

    /// A simplicial complex on the torus: distinct vertices per triangle, no
    /// repeated triangles or edges, and every vertex link a single hexagon.
    pub fn is_polyhedral(&self) -> bool {
        let sets = self.sets();
        if sets.iter().any(|s| s.len() != 3) {
            return false;
        }
        if sets.iter().collect::<BTreeSet<_>>().len() != 2 * self.n {
            return false;
        }
        let edges = self.edges();
        if edges.len() != 3 * self.n {
            return false;
        }
        let mut links: BTreeMap<(i64, i64), Vec<[(i64, i64); 2]>> = BTreeMap::new();
        for s in &sets {
            for &v in s {
                let rest: Vec<(i64, i64)> = s.iter().copied().filter(|&w| w != v).collect();
                links.entry(v).or_default().push([rest[0], rest[1]]);
            }
        }
        links.values().all(|segs| {
            let mut deg: BTreeMap<(i64, i64), usize> = BTreeMap::new();
            for s in segs {
                *deg.entry(s[0]).or_default() += 1;
                *deg.entry(s[1]).or_default() += 1;
            }
            if deg.len() != 6 || deg.values().any(|&d| d != 2) {
                return false;
            }
            // connected: walk the cycle
            let mut seen = BTreeSet::from([segs[0][0]]);
            let mut cur = segs[0][0];
            loop {
                let next = segs.iter().flat_map(|s| {
                    if s[0] == cur {
                        Some(s[1])
                    } else if s[1] == cur {
                        Some(s[0])
                    } else {
                        None
                    }
                });
                match next.into_iter().find(|w| !seen.contains(w)) {
                    Some(w) => {
                        seen.insert(w);
                        cur = w;
                    }
                    None => break,
                }
            }
            seen.len() == 6
        })
    }

    pub fn is_face(&self, s: &BTreeSet<(i64, i64)>) -> bool {
        s.is_empty() || self.triangles.iter().any(|t| s.iter().all(|v| t.contains(v)))
    }

    pub fn vertices(&self) -> Vec<(i64, i64)> {
        let mut v: Vec<(i64, i64)> = self.triangles.iter().flatten().copied().collect();
        v.sort();
        v.dedup();
        v
    }

    /// Minimal non-faces of sizes two and three.
    pub fn sr_counts(&self) -> (usize, usize) {
        let vs = self.vertices();
        let edges = self.edges();
        let is_edge = |u: (i64, i64), v: (i64, i64)| edges.contains(&[u.min(v), u.max(v)]);
        let quads = (0..vs.len()).flat_map(|i| (i + 1..vs.len()).map(move |j| (i, j))).filter(|&(i, j)| !is_edge(vs[i], vs[j])).count();
        let mut cubics = 0;
        for i in 0..vs.len() {
            for j in i + 1..vs.len() {
                for k in j + 1..vs.len() {
                    let s = BTreeSet::from([vs[i], vs[j], vs[k]]);
                    if is_edge(vs[i], vs[j]) && is_edge(vs[i], vs[k]) && is_edge(vs[j], vs[k]) && !self.is_face(&s) {
                        cubics += 1;
                    }
                }
            }
        }
        (quads, cubics)
    }

    /// Degree-`z` monomials supported on a face, by listing every multiset.
    pub fn hilbert(&self, z: usize) -> u64 {
        let vs = self.vertices();
        fn rec(t: &Tessellation, vs: &[(i64, i64)], start: usize, left: usize, chosen: &mut Vec<(i64, i64)>) -> u64 {
            if left == 0 {
                return u64::from(t.is_face(&chosen.iter().copied().collect()));
            }
            (start..vs.len())
                .map(|i| {
                    chosen.push(vs[i]);
                    let r = rec(t, vs, i, left - 1, chosen);
                    chosen.pop();
                    r
                })
                .sum()
        }
        rec(self, &vs, 0, z, &mut Vec::new())
    }
}

/// Minimal primes by exhaustion: every subset of the variables that passes
/// the admissibility definition, every character, pairwise containment.
pub fn brute_force_primes(sys: &BinomialSystem) -> Vec<ComponentPrime> {
    let admissible = |z: Mask| {
        sys.binomials.iter().all(|(p, m)| {
            let inside = |e: &Vec<i64>| e.iter().enumerate().all(|(i, &x)| x == 0 || z >> i & 1 == 1);
            inside(p) == inside(m)
        })
    };
    let mut cands = Vec::new();
    for z in 0..(1u128 << sys.nvars) {
        if admissible(z) {
            cands.extend(candidates_for_support(sys, z).unwrap());
        }
    }
    cands.iter().filter(|x| !cands.iter().any(|y| x.is_contained_in(y))).cloned().collect()
}

pub fn same_primes(a: &[ComponentPrime], b: &[ComponentPrime]) -> bool {
    a.len() == b.len() && a.iter().all(|x| b.iter().any(|y| x.same_prime(y)))
}

/// A random binomial system with 2 to 8 variables, 1 to 4 binomials and
/// exponents at most 2.
pub fn random_system(rng: &mut ChaCha8Rng) -> BinomialSystem {
    let n = rng.gen_range(2..=8);
    let k = rng.gen_range(1..=4);
    let mono = |rng: &mut ChaCha8Rng| loop {
        let e: Vec<i64> = (0..n).map(|_| rng.gen_range(0..=2)).collect();
        if e.iter().any(|&x| x > 0) {
            return e;
        }
    };
    let mut bs = Vec::new();
    while bs.len() < k {
        let (p, m) = (mono(rng), mono(rng));
        if p != m {
            bs.push((p, m));
        }
    }
    BinomialSystem::new(n, bs).unwrap()
}

/// Rank of an integer matrix modulo a large prime, by Gaussian elimination.
pub fn rank_mod_p(rows: &[Vec<i64>]) -> usize {
    const P: i128 = 1_000_000_007;
    let mut m: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| (x as i128).rem_euclid(P)).collect()).collect();
    let cols = m.first().map_or(0, Vec::len);
    let inv = |x: i128| {
        // Fermat
        let (mut b, mut e, mut r) = (x, P - 2, 1i128);
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % P;
            }
            b = b * b % P;
            e >>= 1;
        }
        r
    };
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..m.len()).find(|&i| m[i][c] != 0) else { continue };
        m.swap(rank, piv);
        let iv = inv(m[rank][c]);
        for i in 0..m.len() {
            if i != rank && m[i][c] != 0 {
                let f = m[i][c] * iv % P;
                for j in 0..cols {
                    m[i][j] = (m[i][j] - f * m[rank][j]).rem_euclid(P);
                }
            }
        }
        rank += 1;
    }
    rank
}

/// `gcd(a, b, c)`.
pub fn gcd3(a: i64, b: i64, c: i64) -> i64 {
    fn g(x: i64, y: i64) -> i64 {
        if y == 0 {
            x.abs()
        } else {
            g(y, x % y)
        }
    }
    g(g(a, b), c)
}
