//! Local charts `𝒰_p` of the versal family and Jacobian probes.
//!
//! Chart coordinates at `p` are `y_{p,±k} = x_{±τ_k(p)}/x_p`, indexed
//! `+1,+2,+3,−1,−2,−3 ↦ 0..6`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{ij, var_minus, var_plus, VersalIdeal};
use crate::error::{Error, Result};
use crate::exactlinalg::rational_rank;
use crate::torus::{Triangulation, Vertex};

/// Index of `y_{p,+k}`.
pub fn y_plus(k: usize) -> usize {
    k - 1
}

/// Index of `y_{p,−k}`.
pub fn y_minus(k: usize) -> usize {
    k + 2
}

/// `coef · y^{y} · Π t_{v}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChartTerm {
    pub coef: i64,
    pub y: [u32; 6],
    pub t: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChartEquation {
    pub terms: Vec<ChartTerm>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalChart {
    pub p: Vertex,
    /// Three of shape `y_{−i}y_{−j} + t_{p,τ_k}y_{+k}`, three of shape
    /// `y_{+i}y_{+j} + t_{p,−τ_k}y_{−k}`, three of shape
    /// `y_{+k}y_{−k} − t_{p,−τ_i}t_{p,τ_j}`.
    pub equations: Vec<ChartEquation>,
    /// For the last three equations, the other product `t_{p,τ_i}t_{p,−τ_j}`
    /// that must agree on the base.
    pub alternate_constants: Vec<[usize; 2]>,
}

fn mono(a: usize, b: usize) -> [u32; 6] {
    let mut y = [0; 6];
    y[a] += 1;
    y[b] += 1;
    y
}

fn single(a: usize) -> [u32; 6] {
    let mut y = [0; 6];
    y[a] = 1;
    y
}

/// The nine equations of the chart at `p`.
pub fn local_chart(t: &Triangulation, p: Vertex) -> LocalChart {
    let mut equations = Vec::with_capacity(9);
    for k in 1..=3 {
        let (i, j) = ij(k);
        equations.push(ChartEquation {
            terms: vec![
                ChartTerm {
                    coef: 1,
                    y: mono(y_minus(i), y_minus(j)),
                    t: vec![],
                },
                ChartTerm {
                    coef: 1,
                    y: single(y_plus(k)),
                    t: vec![var_plus(t, p, k)],
                },
            ],
        });
    }
    for k in 1..=3 {
        let (i, j) = ij(k);
        equations.push(ChartEquation {
            terms: vec![
                ChartTerm {
                    coef: 1,
                    y: mono(y_plus(i), y_plus(j)),
                    t: vec![],
                },
                ChartTerm {
                    coef: 1,
                    y: single(y_minus(k)),
                    t: vec![var_minus(t, p, k)],
                },
            ],
        });
    }
    let mut alternate_constants = Vec::with_capacity(3);
    for k in 1..=3 {
        let (i, j) = ij(k);
        equations.push(ChartEquation {
            terms: vec![
                ChartTerm {
                    coef: 1,
                    y: mono(y_plus(k), y_minus(k)),
                    t: vec![],
                },
                ChartTerm {
                    coef: -1,
                    y: [0; 6],
                    t: vec![var_minus(t, p, i), var_plus(t, p, j)],
                },
            ],
        });
        alternate_constants.push([var_plus(t, p, i), var_minus(t, p, j)]);
    }
    LocalChart {
        p,
        equations,
        alternate_constants,
    }
}

fn ypow(y: &[BigRational], e: &[u32; 6]) -> BigRational {
    let mut acc = BigRational::one();
    for (v, &k) in y.iter().zip(e) {
        for _ in 0..k {
            acc *= v;
        }
    }
    acc
}

fn tprod(tv: &[BigRational], vars: &[usize]) -> BigRational {
    vars.iter().fold(BigRational::one(), |a, &v| a * &tv[v])
}

/// `∂/∂y_var` of a monomial, as (multiplier, exponent).
fn dy(e: &[u32; 6], var: usize) -> Option<(u32, [u32; 6])> {
    if e[var] == 0 {
        return None;
    }
    let mut f = *e;
    f[var] -= 1;
    Some((e[var], f))
}

impl LocalChart {
    fn check_base(&self, v: &VersalIdeal, tv: &[BigRational]) -> Result<()> {
        if let Some(index) = v.first_violation(tv) {
            return Err(Error::NotOnBaseSpace { index });
        }
        for (eq, alt) in self.equations[6..].iter().zip(&self.alternate_constants) {
            let stored = tprod(tv, &eq.terms[1].t);
            assert_eq!(stored, tprod(tv, alt), "constant terms differ on the base");
        }
        Ok(())
    }

    /// Values of the nine equations.
    pub fn evaluate(&self, tv: &[BigRational], y: &[BigRational]) -> Vec<BigRational> {
        self.equations
            .iter()
            .map(|eq| {
                eq.terms
                    .iter()
                    .map(|term| {
                        BigRational::from_integer(BigInt::from(term.coef))
                            * ypow(y, &term.y)
                            * tprod(tv, &term.t)
                    })
                    .sum()
            })
            .collect()
    }

    pub fn is_solution(&self, tv: &[BigRational], y: &[BigRational]) -> bool {
        self.evaluate(tv, y).iter().all(Zero::is_zero)
    }

    /// Rank of the 9×6 Jacobian in `y` at `(t, y)`; `t` must lie on the base.
    pub fn jacobian_rank_at(
        &self,
        v: &VersalIdeal,
        tv: &[BigRational],
        y: &[BigRational],
    ) -> Result<usize> {
        self.check_base(v, tv)?;
        let rows = self.jacobian_rows(tv, y);
        Ok(rational_rank(rows))
    }

    /// Rank of the 9×7 Jacobian in `(y, s)` of the total space over the line
    /// `t = s·dir`, evaluated at `(s, y)`.
    pub fn curve_jacobian_rank(
        &self,
        v: &VersalIdeal,
        dir: &[BigRational],
        s: &BigRational,
        y: &[BigRational],
    ) -> Result<usize> {
        let tv: Vec<BigRational> = dir.iter().map(|d| d * s).collect();
        self.check_base(v, &tv)?;
        let mut rows: Vec<Vec<BigRational>> = Vec::with_capacity(9);
        for (eq, mut row) in self.equations.iter().zip(self.jacobian_rows(&tv, y)) {
            let ds: BigRational = eq
                .terms
                .iter()
                .filter(|term| !term.t.is_empty())
                .map(|term| {
                    let deg = term.t.len() as i64;
                    let mut spow = BigRational::one();
                    for _ in 1..deg {
                        spow *= s;
                    }
                    BigRational::from_integer(BigInt::from(term.coef * deg))
                        * ypow(y, &term.y)
                        * tprod(dir, &term.t)
                        * spow
                })
                .sum();
            row.push(ds);
            rows.push(row);
        }
        Ok(rational_rank(rows))
    }

    fn jacobian_rows(&self, tv: &[BigRational], y: &[BigRational]) -> Vec<Vec<BigRational>> {
        self.equations
            .iter()
            .map(|eq| {
                (0..6)
                    .map(|var| {
                        eq.terms
                            .iter()
                            .filter_map(|term| {
                                let (m, e) = dy(&term.y, var)?;
                                Some(
                                    BigRational::from_integer(BigInt::from(term.coef * m as i64))
                                        * ypow(y, &e)
                                        * tprod(tv, &term.t),
                                )
                            })
                            .sum()
                    })
                    .collect()
            })
            .collect()
    }
}

/// The point of the fibre over `t = 1` with free coordinates `y_{+1}, y_{+2}`:
/// `y_{+3} = −1/(y₁y₂)`, `y_{−1} = 1/y₁`, `y_{−2} = 1/y₂`, `y_{−3} = −y₁y₂`.
pub fn unit_fiber_point(y1: &BigRational, y2: &BigRational) -> Vec<BigRational> {
    let prod = y1 * y2;
    vec![
        y1.clone(),
        y2.clone(),
        -prod.recip(),
        y1.recip(),
        y2.recip(),
        -prod,
    ]
}

/// Outcome of probing one rational point of the chart over `t = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberSample {
    pub y: Vec<String>,
    pub on_fiber: bool,
    pub rank: usize,
}

fn random_nonzero(rng: &mut ChaCha8Rng) -> BigRational {
    loop {
        let num: i64 = rng.gen_range(-20..=20);
        let den: i64 = rng.gen_range(1..=9);
        if num != 0 {
            return BigRational::new(BigInt::from(num), BigInt::from(den));
        }
    }
}

/// Samples `count` points on the fibre over `t = 1` and `count` arbitrary
/// points, recording whether each solves the chart and the Jacobian rank.
pub fn sample_unit_fiber(
    chart: &LocalChart,
    v: &VersalIdeal,
    count: usize,
    seed: u64,
) -> Result<Vec<FiberSample>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ones = vec![BigRational::one(); v.nvars];
    let mut out = Vec::with_capacity(2 * count);
    for idx in 0..2 * count {
        let y = if idx % 2 == 0 {
            let (a, b) = (random_nonzero(&mut rng), random_nonzero(&mut rng));
            unit_fiber_point(&a, &b)
        } else {
            (0..6).map(|_| random_nonzero(&mut rng)).collect()
        };
        let rank = chart.jacobian_rank_at(v, &ones, &y)?;
        out.push(FiberSample {
            on_fiber: chart.is_solution(&ones, &y),
            y: y.iter().map(ToString::to_string).collect(),
            rank,
        });
    }
    Ok(out)
}
