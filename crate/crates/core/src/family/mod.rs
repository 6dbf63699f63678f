//! A Heisenberg invariant one-parameter smoothing of the 7-vertex torus.
//!
//! Vertices are labeled `m = mτ₁(0)`, so `τ₁, τ₂, τ₃` act as `m ↦ m+1, m+4,
//! m+2` and the rotation `ρ` as `m ↦ 5m` (all mod 7). The family consists of
//! the `τ₁`-orbits of three template equations, specialized to `s = u₁ = u₂
//! = u₃`. Flatness is left to the exported CAS script.

mod series;

pub use series::TruncatedSeries;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::deform::t1_basis;
use crate::error::{Error, Result};
use crate::srideal::{generators, hilbert};
use crate::torus::{build, GammaPresentation, Triangulation};

/// A cubic monomial as a sorted vertex triple.
pub type Cubic = [usize; 3];

const N: usize = 7;

fn cubic(mut m: [usize; 3]) -> Cubic {
    m.sort_unstable();
    m
}

fn shift(m: &Cubic, j: usize) -> Cubic {
    cubic(m.map(|x| (x + j) % N))
}

/// `m ↦ km mod 7` on vertices.
fn scale(m: &Cubic, k: usize) -> Cubic {
    cubic(m.map(|x| (x * k) % N))
}

pub const RHO: usize = 5;
pub const RHO_CUBED: usize = 6;

/// Coefficient labels of the template equations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Label {
    Base,
    /// `u_k`, `k = 1, 2, 3`.
    U(usize),
    Psi(usize),
    Phi(usize),
    Xi(usize),
    Ups(usize),
}

impl Label {
    /// Relabeling under `ρ`: `u` by `(u₁, u₃, u₂)`, series indices by `sigma`.
    fn under_rho(self, sigma: &[usize; 4]) -> Label {
        let u = [0, 3, 1, 2];
        match self {
            Label::Base => Label::Base,
            Label::U(k) => Label::U(u[k]),
            Label::Psi(i) => Label::Psi(sigma[i]),
            Label::Phi(i) => Label::Phi(sigma[i]),
            Label::Xi(i) => Label::Xi(sigma[i]),
            Label::Ups(i) => Label::Ups(sigma[i]),
        }
    }
}

/// One of the three template equations: label per monomial.
pub type Template = BTreeMap<Cubic, Label>;

/// The three template equations, for `x_{−τ_k}x₀x_{τ_k}`, `k = 1, 2, 3`.
pub fn templates() -> [Template; 3] {
    let psi = [[1, 2, 4], [3, 5, 6]];
    let rows: [(Cubic, Label, [[usize; 3]; 2], [[usize; 3]; 2], [[usize; 3]; 2]); 3] = [
        ([0, 1, 6], Label::U(2), [[1, 1, 5], [2, 6, 6]], [[1, 3, 3], [4, 4, 6]], [[2, 2, 3], [4, 5, 5]]),
        ([0, 3, 4], Label::U(3), [[4, 4, 6], [1, 3, 3]], [[4, 5, 5], [2, 2, 3]], [[1, 1, 5], [2, 6, 6]]),
        ([0, 2, 5], Label::U(1), [[2, 2, 3], [4, 5, 5]], [[2, 6, 6], [1, 1, 5]], [[4, 4, 6], [1, 3, 3]]),
    ];
    let mut out: [Template; 3] = Default::default();
    for (i, (base, u, um, xi, ups)) in rows.into_iter().enumerate() {
        let t = &mut out[i];
        let idx = i + 1;
        t.insert(base, Label::Base);
        t.insert([0, 0, 0], Label::Phi(idx));
        for m in um {
            t.insert(cubic(m), u);
        }
        for m in psi {
            t.insert(cubic(m), Label::Psi(idx));
        }
        for m in xi {
            t.insert(cubic(m), Label::Xi(idx));
        }
        for m in ups {
            t.insert(cubic(m), Label::Ups(idx));
        }
    }
    out
}

/// `f`, the solution of the quartic with `f(0) = −1`, and the four
/// coefficient series built from it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoefficientFunctions {
    pub f: TruncatedSeries,
    pub phi: TruncatedSeries,
    pub psi: TruncatedSeries,
    pub xi: TruncatedSeries,
    pub ups: TruncatedSeries,
}

/// `s⁶f⁴ − s⁴(s+1)f³ − (s+1)²(s−1)f + (s+1)²`.
pub fn quartic_residual(f: &TruncatedSeries) -> TruncatedSeries {
    let n = f.order();
    let s = TruncatedSeries::s(n);
    let s1 = TruncatedSeries::from_ints(&[1, 1], n);
    let sm1 = TruncatedSeries::from_ints(&[-1, 1], n);
    let s1sq = &s1 * &s1;
    let a = &s.pow(6) * &f.pow(4);
    let b = &(&s.pow(4) * &s1) * &f.pow(3);
    let c = &(&s1sq * &sm1) * f;
    &(&(&a - &b) - &c) + &s1sq
}

/// Derivative of the quartic in `f`.
fn quartic_derivative(f: &TruncatedSeries) -> TruncatedSeries {
    let n = f.order();
    let s = TruncatedSeries::s(n);
    let s1 = TruncatedSeries::from_ints(&[1, 1], n);
    let sm1 = TruncatedSeries::from_ints(&[-1, 1], n);
    let four = BigRational::from_integer(4.into());
    let three = BigRational::from_integer(3.into());
    let a = (&s.pow(6) * &f.pow(3)).scale(&four);
    let b = (&(&s.pow(4) * &s1) * &f.pow(2)).scale(&three);
    let c = &(&s1 * &s1) * &sm1;
    &(&a - &b) - &c
}

/// The power series root of the quartic with `f(0) = −1`, modulo `s^n`, by
/// Newton iteration with doubling precision.
pub fn solve_f(n: usize) -> TruncatedSeries {
    let mut f = TruncatedSeries::from_ints(&[-1], n.min(1));
    let mut prec = f.order();
    while prec < n {
        prec = (2 * prec).min(n);
        let g = f.with_order(prec);
        let step = quartic_residual(&g).div(&quartic_derivative(&g)).expect("derivative is a unit at f(0) = -1");
        f = &g - &step;
    }
    debug_assert!(quartic_residual(&f).is_zero());
    f
}

/// `φ = −ψ = s²(s⁴f³ − s − 1)/(1+s)`, `ξ = s²f`, `υ = s⁴f²/(1+s)`.
pub fn coefficient_functions(n: usize) -> CoefficientFunctions {
    let f = solve_f(n);
    let s = TruncatedSeries::s(n);
    let s2 = s.pow(2);
    let inv = TruncatedSeries::from_ints(&[1, 1], n).inverse().expect("1+s is a unit");
    let num = &(&s.pow(4) * &f.pow(3)) - &TruncatedSeries::from_ints(&[1, 1], n);
    let phi = &(&s2 * &num) * &inv;
    let psi = -&phi;
    let xi = &s2 * &f;
    let ups = &(&s.pow(4) * &f.pow(2)) * &inv;
    CoefficientFunctions { f, phi, psi, xi, ups }
}

impl CoefficientFunctions {
    pub fn order(&self) -> usize {
        self.f.order()
    }

    fn series(&self, l: Label) -> TruncatedSeries {
        let n = self.order();
        match l {
            Label::Base => TruncatedSeries::one(n),
            Label::U(_) => TruncatedSeries::s(n),
            Label::Psi(_) => self.psi.clone(),
            Label::Phi(_) => self.phi.clone(),
            Label::Xi(_) => self.xi.clone(),
            Label::Ups(_) => self.ups.clone(),
        }
    }

    /// Exact coefficient arrays as `"p/q"` strings.
    pub fn to_json(&self) -> serde_json::Value {
        let arr = |s: &TruncatedSeries| s.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>();
        serde_json::json!({
            "order": self.order(),
            "f": arr(&self.f),
            "phi": arr(&self.phi),
            "psi": arr(&self.psi),
            "xi": arr(&self.xi),
            "upsilon": arr(&self.ups),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyEquation {
    /// The Stanley–Reisner cubic `x_{p−τ_k}x_p x_{p+τ_k}`.
    pub base: Cubic,
    pub k: usize,
    pub p: usize,
    pub terms: BTreeMap<Cubic, TruncatedSeries>,
}

impl FamilyEquation {
    fn mapped(&self, f: impl Fn(&Cubic) -> Cubic) -> BTreeMap<Cubic, TruncatedSeries> {
        self.terms.iter().map(|(m, c)| (f(m), c.clone())).collect()
    }

    /// Coefficient of `s^j` in every term, zero terms dropped.
    pub fn slice(&self, j: usize) -> BTreeMap<Cubic, BigRational> {
        self.terms.iter().map(|(m, c)| (*m, c.coeff(j))).filter(|(_, c)| !c.is_zero()).collect()
    }
}

/// The 21 equations from given coefficient series, ordered by `(k, p)`.
pub fn family_from(coeffs: &CoefficientFunctions) -> Vec<FamilyEquation> {
    let mut out = Vec::with_capacity(21);
    for (i, t) in templates().iter().enumerate() {
        let base = *t.iter().find(|(_, l)| **l == Label::Base).expect("template has a base").0;
        for p in 0..N {
            let terms = t.iter().map(|(m, l)| (shift(m, p), coeffs.series(*l))).collect();
            out.push(FamilyEquation { base: shift(&base, p), k: i + 1, p, terms });
        }
    }
    out
}

pub fn build_family(n: usize) -> Vec<FamilyEquation> {
    family_from(&coefficient_functions(n))
}

/// The seven exactly checkable conditions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Condition {
    /// `s = 0` gives the Stanley–Reisner cubics.
    Specialization,
    /// The `s¹` part is the first-order deformation along `u₁ = u₂ = u₃`.
    FirstOrder,
    /// `G*`-weights and translation stability.
    Heisenberg,
    /// `ρ³` maps each equation to the one with the reflected base.
    RhoCubed,
    /// No perturbation term lies in `I_X`.
    OutsideIdeal,
    /// `ρ` permutes the templates compatibly with `(u₁, u₃, u₂)` and maps
    /// the specialized family to itself.
    Rho,
    /// The series satisfy their defining relations.
    Coefficients,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Condition::Specialization => "(i) specialization",
            Condition::FirstOrder => "(ii) first order",
            Condition::Heisenberg => "(iii) Heisenberg invariance",
            Condition::RhoCubed => "(iv) rho^3 symmetry",
            Condition::OutsideIdeal => "(v) terms outside I_X",
            Condition::Rho => "(vi) rho permutation",
            Condition::Coefficients => "coefficient relations",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyReport {
    pub order: usize,
    pub results: Vec<(Condition, bool)>,
}

impl FamilyReport {
    pub fn all_pass(&self) -> bool {
        self.results.iter().all(|(_, ok)| *ok)
    }

    pub fn failed(&self) -> Vec<Condition> {
        self.results.iter().filter(|(_, ok)| !ok).map(|(c, _)| *c).collect()
    }

    pub fn passed(&self, c: Condition) -> bool {
        self.results.iter().any(|(d, ok)| *d == c && *ok)
    }
}

pub fn t7() -> Triangulation {
    build(&GammaPresentation::new(7, 2, 1).expect("valid presentation"))
}

/// Checks the hard-coded labels against the built triangulation: `τ_k` is
/// translation by `1, 4, 2` and the cubics are `x_{p−τ_k}x_p x_{p+τ_k}`.
pub fn labels_match(t: &Triangulation) -> bool {
    let g = &t.group;
    let labels_ok = (0..N).all(|m| g.scale(m as i64, g.tau[0]) == m);
    let steps_ok = [1, 4, 2].iter().enumerate().all(|(k, &d)| (0..N).all(|p| g.step(p, k + 1) == (p + d) % N));
    labels_ok && steps_ok
}

pub fn verify_family(n: usize) -> Result<FamilyReport> {
    verify_family_of(&build_family(n), &coefficient_functions(n))
}

/// Runs every condition on the given equations and series.
pub fn verify_family_of(eqs: &[FamilyEquation], coeffs: &CoefficientFunctions) -> Result<FamilyReport> {
    let n = coeffs.order();
    if n < 2 {
        return Err(Error::Invalid("need precision N >= 2".into()));
    }
    let t = t7();
    if !labels_match(&t) {
        return Err(Error::Invalid("vertex labels disagree with the (7,2,1) triangulation".into()));
    }
    let sr: BTreeSet<Cubic> = generators(&t)?
        .supports()
        .iter()
        .map(|s| cubic([s[0], s[1], s[2]]))
        .collect();
    let by_base: BTreeMap<Cubic, &FamilyEquation> = eqs.iter().map(|e| (e.base, e)).collect();
    let terms_of = |m: &Cubic| by_base.get(m).map(|e| &e.terms);

    let spec = eqs.len() == 21
        && by_base.keys().copied().collect::<BTreeSet<_>>() == sr
        && eqs.iter().all(|e| e.slice(0) == BTreeMap::from([(e.base, BigRational::one())]));

    let in_ix = |m: &Cubic| {
        let vars: BTreeSet<usize> = m.iter().copied().collect();
        sr.iter().any(|g| g.iter().all(|v| vars.contains(v)))
    };
    // first-order images of the base modulo I_X, with the type of the edge
    let perts = t1_basis(&t);
    let first_order = |base: &Cubic| -> Vec<(Cubic, usize)> {
        perts
            .iter()
            .filter_map(|phi| phi.apply(base).map(|m| (cubic([m[0], m[1], m[2]]), phi.param.k)))
            .filter(|(m, _)| !in_ix(m))
            .collect()
    };
    let first = eqs.iter().all(|e| {
        let mut expect: BTreeMap<Cubic, BigRational> = BTreeMap::new();
        for (m, _) in first_order(&e.base) {
            *expect.entry(m).or_insert_with(BigRational::zero) += BigRational::one();
        }
        expect.retain(|_, c| !c.is_zero());
        e.slice(1) == expect
    }) && templates().iter().all(|tm| {
        let base = *tm.iter().find(|(_, l)| **l == Label::Base).expect("base").0;
        first_order(&base).iter().all(|(m, k)| tm.get(m) == Some(&Label::U(*k)))
    });

    let weight = |m: &Cubic| m.iter().sum::<usize>() % N;
    let heis = eqs.iter().all(|e| e.terms.keys().all(|m| weight(m) == weight(&e.base)))
        && eqs.iter().all(|e| terms_of(&shift(&e.base, 1)) == Some(&e.mapped(|m| shift(m, 1))));

    let rho3 = eqs.iter().all(|e| terms_of(&scale(&e.base, RHO_CUBED)) == Some(&e.mapped(|m| scale(m, RHO_CUBED))));

    let outside = eqs.iter().all(|e| e.terms.keys().filter(|m| **m != e.base).all(|m| !in_ix(m)));

    let rho = templates_rho_compatible()
        && eqs.iter().all(|e| terms_of(&scale(&e.base, RHO)) == Some(&e.mapped(|m| scale(m, RHO))));

    let coef = coefficient_relations(coeffs);

    Ok(FamilyReport {
        order: n,
        results: vec![
            (Condition::Specialization, spec),
            (Condition::FirstOrder, first),
            (Condition::Heisenberg, heis),
            (Condition::RhoCubed, rho3),
            (Condition::OutsideIdeal, outside),
            (Condition::Rho, rho),
            (Condition::Coefficients, coef),
        ],
    })
}

/// `ρ` maps template `i` onto a translate of template `σ(i)`, relabeling
/// `u` by `(u₁, u₃, u₂)` and series indices by `σ`.
pub fn templates_rho_compatible() -> bool {
    let ts = templates();
    let base = |t: &Template| *t.iter().find(|(_, l)| **l == Label::Base).expect("base").0;
    let mut sigma = [0usize; 4];
    let mut shifts = [0usize; 3];
    for (i, t) in ts.iter().enumerate() {
        let b = scale(&base(t), RHO);
        let Some((j, p)) = (0..3).flat_map(|j| (0..N).map(move |p| (j, p))).find(|&(j, p)| shift(&base(&ts[j]), p) == b)
        else {
            return false;
        };
        sigma[i + 1] = j + 1;
        shifts[i] = p;
    }
    ts.iter().enumerate().all(|(i, t)| {
        let image: Template = t.iter().map(|(m, l)| (scale(m, RHO), l.under_rho(&sigma))).collect();
        let j = sigma[i + 1] - 1;
        let target: Template = ts[j].iter().map(|(m, l)| (shift(m, shifts[i]), *l)).collect();
        image == target
    })
}

/// Quartic residual of `f` and the displayed formulas for the other series.
pub fn coefficient_relations(c: &CoefficientFunctions) -> bool {
    let n = c.order();
    let s = TruncatedSeries::s(n);
    let s2 = s.pow(2);
    let one_s = TruncatedSeries::from_ints(&[1, 1], n);
    let num = &(&s.pow(4) * &c.f.pow(3)) - &one_s;
    quartic_residual(&c.f).is_zero()
        && c.f.coeff(0) == -BigRational::one()
        && (&c.phi + &c.psi).is_zero()
        && &one_s * &c.phi == &s2 * &num
        && c.xi == &s2 * &c.f
        && &one_s * &c.ups == &s.pow(4) * &c.f.pow(2)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CasDialect {
    Macaulay2,
    Singular,
}

fn poly_text(e: &FamilyEquation, var: &dyn Fn(usize) -> String) -> String {
    let parts: Vec<String> = e
        .terms
        .iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(m, c)| {
            let mono: Vec<String> = {
                let mut counts = BTreeMap::new();
                for &v in m {
                    *counts.entry(v).or_insert(0) += 1;
                }
                counts
                    .into_iter()
                    .map(|(v, k)| if k == 1 { var(v) } else { format!("{}^{k}", var(v)) })
                    .collect()
            };
            let coeff = c.to_poly_string();
            if coeff == "1" {
                mono.join("*")
            } else {
                format!("({coeff})*{}", mono.join("*"))
            }
        })
        .collect();
    parts.join("\n    + ")
}

/// A deterministic script defining the 21 equations over `ℚ[s]/(s^N)` and
/// comparing the length of each graded piece of the quotient, in degrees at
/// most 5, with `N` times the Hilbert function of the special fiber.
pub fn export_cas(n: usize, dialect: CasDialect) -> String {
    let c = coefficient_functions(n);
    let eqs = family_from(&c);
    let t = t7();
    let h: Vec<String> = (0..=5u64).map(|d| hilbert(&t, d).to_string()).collect();
    let comment = match dialect {
        CasDialect::Macaulay2 => "--",
        CasDialect::Singular => "//",
    };
    let mut out = String::new();
    out.push_str(&format!("{comment} one-parameter Heisenberg invariant family of the 7-vertex torus\n"));
    out.push_str(&format!("{comment} s = u1 = u2 = u3, computed modulo s^{n}\n"));
    for (name, s) in [("f", &c.f), ("phi", &c.phi), ("psi", &c.psi), ("xi", &c.xi), ("upsilon", &c.ups)] {
        out.push_str(&format!("{comment} {name:<7} = {}\n", s.to_poly_string()));
    }
    out.push_str(&format!(
        "{comment} flat over QQ[s]/(s^{n}) iff each graded piece has length N*h(d)\n"
    ));
    match dialect {
        CasDialect::Macaulay2 => {
            let var = |v: usize| format!("x_{v}");
            out.push_str(&format!("N = {n};\n"));
            out.push_str("R = QQ[s, x_0..x_6, Degrees => {0, 7:1}];\n");
            for (i, e) in eqs.iter().enumerate() {
                out.push_str(&format!("g_{} = {};\n", i + 1, poly_text(e, &var)));
            }
            let names: Vec<String> = (1..=eqs.len()).map(|i| format!("g_{i}")).collect();
            out.push_str(&format!("I = ideal({}) + ideal(s^N);\n", names.join(", ")));
            out.push_str(&format!("h = {{{}}};\n", h.join(", ")));
            out.push_str("flat = true;\n");
            out.push_str("for d from 0 to 5 do (\n");
            out.push_str("    l := numgens source basis(d, R/I);\n");
            out.push_str("    print(d, l, N * h#d);\n");
            out.push_str("    if l != N * h#d then flat = false\n");
            out.push_str(");\n");
            out.push_str("print(\"flat in degrees <= 5: \" | toString flat);\n");
        }
        CasDialect::Singular => {
            let var = |v: usize| format!("x({v})");
            out.push_str("ring r = 0, (s, x(0..6)), dp;\n");
            out.push_str(&format!("int N = {n};\n"));
            for (i, e) in eqs.iter().enumerate() {
                out.push_str(&format!("poly g{} = {};\n", i + 1, poly_text(e, &var)));
            }
            let names: Vec<String> = (1..=eqs.len()).map(|i| format!("g{i}")).collect();
            out.push_str(&format!("ideal I = {}, s^N;\n", names.join(", ")));
            out.push_str("ideal mx = x(0), x(1), x(2), x(3), x(4), x(5), x(6);\n");
            out.push_str(&format!("intvec h = {};\n", h.join(", ")));
            out.push_str("int flat = 1;\nint prev = 0;\nint cur;\nint d;\n");
            out.push_str("for (d = 0; d <= 5; d++) {\n");
            out.push_str("    cur = vdim(std(I + mx^(d+1)));\n");
            out.push_str("    print(string(d) + \" \" + string(cur - prev) + \" \" + string(N * h[d+1]));\n");
            out.push_str("    if (cur - prev != N * h[d+1]) { flat = 0; }\n");
            out.push_str("    prev = cur;\n");
            out.push_str("}\n");
            out.push_str("print(\"flat in degrees <= 5: \" + string(flat));\n");
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f_starts_at_minus_one() {
        let f = solve_f(8);
        assert_eq!(f.coeff(0), -BigRational::one());
        assert!(quartic_residual(&f).is_zero());
        assert_eq!(solve_f(1).order(), 1);
    }

    #[test]
    fn templates_are_heisenberg_weighted() {
        for t in templates() {
            let w: BTreeSet<usize> = t.keys().map(|m| m.iter().sum::<usize>() % 7).collect();
            assert_eq!(w.len(), 1);
            assert_eq!(t.len(), 10);
        }
    }

    #[test]
    fn labels_agree_with_build() {
        assert!(labels_match(&t7()));
        assert!(templates_rho_compatible());
    }
}
