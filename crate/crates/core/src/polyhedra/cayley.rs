//! Splitting `σ∨` as a Cayley cone over lattice polytopes in `M′′`.
//!
//! Columns of type `k` fall into `τ_k`-orbits ("cells"). The functional that
//! sends every column of cell `i` to `e_i` descends to `M → ℤ^r`, with kernel
//! `M′′` spanned by the vectors `m_p`.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::vecops::{from_big, sub, to_big, IVec};
use super::{Cone, Coordinates, LatticePolytope};
use crate::deform::WeightMatrixData;
use crate::error::{Error, Result};
use crate::exactlinalg::{column_basis, kernel_basis, same_lattice, snf, IntMatrix};
use crate::torus::{Triangulation, Vertex};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CayleySplit {
    pub r: usize,
    /// Column indices of `A` in each cell.
    pub cells: Vec<Vec<usize>>,
    /// `m_p` for every vertex, in the ambient coordinates of `A`.
    pub m_p: Vec<IVec>,
    /// Basis of `M′′` used for coordinates, as columns.
    pub mpp_basis: IntMatrix,
    /// Representative column `E_i` of each cell.
    pub representatives: Vec<usize>,
    /// Basis `E_1..E_r` followed by `mpp_basis`; columns span `M`.
    pub m_basis: IntMatrix,
    /// Each column of `A` in that basis.
    pub columns: Vec<IVec>,
    pub polytopes: Vec<LatticePolytope>,
}

/// Cells, ordered by type and then by smallest vertex.
fn cells(t: &Triangulation) -> Vec<Vec<usize>> {
    let g = &t.group;
    let n = t.n();
    let mut out = Vec::new();
    for k in 1..=3 {
        let mut seen = vec![false; n];
        for p in 0..n {
            if seen[p] {
                continue;
            }
            let orbit: Vec<Vertex> = g.coset(p, k).into_iter().collect();
            for &q in &orbit {
                seen[q] = true;
            }
            out.push(orbit.iter().map(|&q| t.edge_index(q, k)).collect());
        }
    }
    out
}

/// `m_p = Σ_k (e_{τ_k(p)} − e_{−τ_k(p)})`, checked against
/// `A_{p,τ_k(p)} − A_{−τ_k(p),p}` for each `k`.
fn m_vectors(t: &Triangulation, w: &WeightMatrixData) -> Result<Vec<IVec>> {
    let g = &t.group;
    let n = t.n();
    (0..n)
        .map(|p| {
            let mut m = vec![0i64; n + 3];
            for k in 1..=3 {
                m[3 + g.step(p, k)] += 1;
                m[3 + g.back(p, k)] -= 1;
            }
            for k in 1..=3 {
                let d = sub(&from_big(&w.column(p, k))?, &from_big(&w.column(g.back(p, k), k))?);
                if d != m {
                    return Err(Error::Invalid(format!("m_{p} differs from the type-{k} column difference")));
                }
            }
            Ok(m)
        })
        .collect()
}

pub fn cayley_split(w: &WeightMatrixData, t: &Triangulation) -> Result<CayleySplit> {
    let cs = cells(t);
    let reps: Vec<usize> = cs.iter().map(|c| c[0]).collect();
    cayley_split_with_basis(w, t, &reps, None)
}

/// As [`cayley_split`], with chosen representatives and optionally a chosen
/// basis of `M′′` (columns). The default basis is the HNF basis of the `m_p`.
pub fn cayley_split_with_basis(
    w: &WeightMatrixData,
    t: &Triangulation,
    representatives: &[usize],
    mpp: Option<IntMatrix>,
) -> Result<CayleySplit> {
    let n = t.n();
    let cs = cells(t);
    let r = cs.len();
    if representatives.len() != r {
        return Err(Error::DimensionMismatch { expected: r, found: representatives.len() });
    }
    for (i, &rep) in representatives.iter().enumerate() {
        if !cs[i].contains(&rep) {
            return Err(Error::Invalid(format!("column {rep} is not in cell {i}")));
        }
    }
    // cell incidence C : ℤ^{3n} → ℤ^r
    let mut c = IntMatrix::zeros(r, 3 * n);
    for (i, cell) in cs.iter().enumerate() {
        for &col in cell {
            c[(i, col)] = BigInt::from(1);
        }
    }
    let ker_a = kernel_basis(&w.a);
    if !(&c * &ker_a).is_zero() {
        return Err(Error::Invalid("cell functional does not descend to M".into()));
    }
    let m_p = m_vectors(t, w)?;
    let span_m = IntMatrix::from_columns(n + 3, &m_p);
    let image_ker_c = &w.a * &kernel_basis(&c);
    if !same_lattice(&span_m, &image_ker_c) {
        return Err(Error::Invalid("m_p do not span the kernel of M → ℤ^r".into()));
    }
    let mpp_basis = match mpp {
        Some(b) => {
            if !same_lattice(&b, &span_m) || b.cols() != w.rank - r {
                return Err(Error::Invalid("supplied basis does not span M''".into()));
            }
            b
        }
        None => column_basis(&span_m),
    };
    if mpp_basis.cols() + r != w.rank {
        return Err(Error::DimensionMismatch { expected: w.rank - r, found: mpp_basis.cols() });
    }
    let reps_m = w.a.select_columns(representatives);
    let m_basis = reps_m.hstack(&mpp_basis);
    if !same_lattice(&m_basis, &w.m_basis) {
        return Err(Error::Invalid("E-basis does not span M".into()));
    }
    // E_1..E_r map onto a basis of ℤ^r, and together with a basis of M′′
    // they span M, so 0 → M′′ → M → ℤ^r → 0 is exact
    let quotient = snf(&c.select_columns(representatives));
    if quotient.divisors.iter().any(|d| *d != BigInt::from(1)) {
        return Err(Error::Invalid("M/M'' is not free of rank r".into()));
    }
    let coords = Coordinates::new(&m_basis);
    let columns: Vec<IVec> = (0..3 * n)
        .map(|j| from_big(&coords.of(&w.a.column(j)).expect("column lies in M")))
        .collect::<Result<_>>()?;
    let dim = w.rank - r;
    let polytopes = cs
        .iter()
        .enumerate()
        .map(|(i, cell)| {
            let pts: Vec<IVec> = cell
                .iter()
                .map(|&j| {
                    let x = &columns[j];
                    debug_assert!((0..r).all(|q| x[q] == i64::from(q == i)));
                    x[r..].to_vec()
                })
                .collect();
            LatticePolytope::hull(dim, &pts)
        })
        .collect::<Result<_>>()?;
    Ok(CayleySplit { r, cells: cs, m_p, mpp_basis, representatives: representatives.to_vec(), m_basis, columns, polytopes })
}

impl CayleySplit {
    /// The projection `β_i` of every column: exactly one coordinate is 1.
    pub fn projection_is_cell_indicator(&self) -> bool {
        self.cells.iter().enumerate().all(|(i, cell)| {
            cell.iter().all(|&j| (0..self.r).all(|q| self.columns[j][q] == i64::from(q == i)))
        })
    }

    /// The Cayley cone over `Δ_1..Δ_r`, in E-coordinates.
    pub fn cayley_cone(&self) -> Result<Cone> {
        let d = self.m_basis.cols();
        let gens: Vec<IVec> = self
            .polytopes
            .iter()
            .enumerate()
            .flat_map(|(i, p)| {
                p.vertices.iter().map(move |v| {
                    let mut g = vec![0; self.r];
                    g[i] = 1;
                    g.extend_from_slice(v);
                    g
                })
            })
            .collect();
        Cone::from_generators(d, &gens)
    }

    /// `Δ_1 + … + Δ_r` translated so that `ε₁ + ε₂ + ε₃ ∈ M` becomes the
    /// origin. Fails unless that element has coordinates `(1, …, 1, c)`.
    pub fn centered_sum(&self) -> Result<LatticePolytope> {
        let mut eps = vec![0; self.m_basis.rows()];
        eps[..3].iter_mut().for_each(|x| *x = 1);
        let m = self.coordinates(&eps).ok_or_else(|| Error::Invalid("ε sum is not in M".into()))?;
        if m[..self.r].iter().any(|&x| x != 1) {
            return Err(Error::Invalid("ε sum does not lie at unit height over every cell".into()));
        }
        let centre: IVec = m[self.r..].iter().map(|x| -x).collect();
        Ok(super::minkowski_sum(&self.polytopes)?.translate(&centre))
    }

    /// E-coordinates of an element of `M` given in the ambient coordinates.
    pub fn coordinates(&self, v: &[i64]) -> Option<IVec> {
        Coordinates::new(&self.m_basis).of(&to_big(v)).and_then(|x| from_big(&x).ok())
    }
}
