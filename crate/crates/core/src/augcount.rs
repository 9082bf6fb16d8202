//! Augmentation numbers from ruling statistics, and brute-force point counts
//! over prime fields.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};
use thiserror::Error;

use crate::algebra::{eval_at_q, int_to_json, is_prime, max_deg_z_after_q_eq_z2, pow_rational, AlgebraError};
use crate::dga::{augmentation_equations, build_internal_dga};
use crate::dsl::ToJson;
use crate::front::{enumerate_border_rulings, split_basepoint, FrontDiagram, FrontError, Involution, Site};
use crate::rulings::{a_b, a_v, enumerate_rulings, enumerate_vertex_rulings, ruling_polynomial, RulingError};
use crate::{ExactRational, QZPolynomial};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AugError {
    #[error(transparent)]
    Ruling(#[from] RulingError),
    #[error(transparent)]
    Front(#[from] FrontError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("search space of {0} unknowns is too large")]
    TooLarge(usize),
}

/// Largest number of unknowns the brute-force counters accept.
pub const MAX_UNKNOWNS: usize = 24;

fn check_prime(p: u64) -> Result<u32, AugError> {
    if is_prime(p) && p < 1 << 16 {
        Ok(p as u32)
    } else {
        Err(AugError::NotPrime(p))
    }
}

fn big_pow(base: u64, e: u64) -> BigInt {
    num_traits::pow(BigInt::from(base), e as usize)
}

/// A differential on `𝔽_p^n` with `d[a][b]` allowed only when `a < b` and
/// `μ(a) = μ(b) + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorseComplex {
    pub p: u32,
    pub mu: Vec<i64>,
    pub d: Vec<Vec<u32>>,
}

/// Entries `(a, b)` (0-based) where a Morse differential may be nonzero.
pub fn permitted_entries(mu: &[i64]) -> Vec<(usize, usize)> {
    let n = mu.len();
    (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).filter(|&(a, b)| mu[a] - mu[b] == 1).collect()
}

impl MorseComplex {
    pub fn is_differential(&self) -> bool {
        let n = self.mu.len();
        let p = self.p as u64;
        (0..n).all(|a| {
            (0..n).all(|c| (0..n).map(|b| self.d[a][b] as u64 * self.d[b][c] as u64).sum::<u64>() % p == 0)
        })
    }

    pub fn rank(&self) -> usize {
        rank_mod_p(self.d.clone(), self.p)
    }

    /// A two-step complex is acyclic exactly when its rank is `n / 2`.
    pub fn is_acyclic(&self) -> bool {
        self.mu.len().is_multiple_of(2) && self.rank() == self.mu.len() / 2
    }
}

fn inv_mod(a: u32, p: u32) -> u32 {
    let mut r = 1u64;
    let (mut b, mut e) = (a as u64, p as u64 - 2);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p as u64;
        }
        b = b * b % p as u64;
        e >>= 1;
    }
    r as u32
}

fn rank_mod_p(mut m: Vec<Vec<u32>>, p: u32) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..rows).find(|&r| m[r][c] != 0) else { continue };
        m.swap(rank, pivot);
        let inv = inv_mod(m[rank][c], p) as u64;
        for r in 0..rows {
            if r != rank && m[r][c] != 0 {
                let f = m[r][c] as u64 * inv % p as u64;
                let pivot_row = m[rank].clone();
                for (x, &y) in m[r].iter_mut().zip(&pivot_row) {
                    let sub = f * y as u64 % p as u64;
                    *x = ((*x as u64 + p as u64 - sub) % p as u64) as u32;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Counts Morse differentials over `𝔽_p` by exhaustion, optionally only
/// acyclic ones.
pub fn brute_count_trivial(mu: &[i64], p: u64, acyclic_only: bool) -> Result<u64, AugError> {
    let p = check_prime(p)?;
    let entries = permitted_entries(mu);
    if entries.len() > MAX_UNKNOWNS / 2 {
        return Err(AugError::TooLarge(entries.len()));
    }
    let n = mu.len();
    let total = (p as u64).pow(entries.len() as u32);
    let count = (0..total)
        .into_par_iter()
        .filter(|&code| {
            let mut d = vec![vec![0u32; n]; n];
            let mut c = code;
            for &(a, b) in &entries {
                d[a][b] = (c % p as u64) as u32;
                c /= p as u64;
            }
            let m = MorseComplex { p, mu: mu.to_vec(), d };
            m.is_differential() && (!acyclic_only || m.is_acyclic())
        })
        .count();
    Ok(count as u64)
}

/// `Σ_ρ (p-1)^{#pairs} p^{A_b(ρ)}` over border rulings, with fixed points
/// allowed unless `acyclic_only`.
pub fn formula_count_trivial(mu: &[i64], p: u64, acyclic_only: bool) -> BigInt {
    enumerate_border_rulings(mu.len(), mu, !acyclic_only)
        .iter()
        .map(|rho| big_pow(p - 1, rho.pairs().len() as u64) * big_pow(p, a_b(rho, mu)))
        .sum()
}

/// One augmentation equation `c + Σ k x_i x_j = 0` over variable positions.
#[derive(Clone, Debug)]
struct Equation {
    constant: i64,
    terms: Vec<(usize, usize, i64)>,
}

/// The degree-zero unknowns and degree-one equations of a vertex.
#[derive(Clone, Debug)]
pub struct VertexSystem {
    /// `(a, i)` labels of the unknowns, ordered by `i` then `a`.
    pub unknowns: Vec<(usize, usize)>,
    equations: Vec<Equation>,
}

impl VertexSystem {
    pub fn new(l: usize, r: usize, mu: &[i64]) -> Self {
        let dga = build_internal_dga(l, r, mu);
        let zero = dga.dga.generators_of_degree(0);
        let pos = |g: usize| zero.iter().position(|&x| x == g).expect("degree-zero generator");
        let equations = augmentation_equations(&dga.dga)
            .values()
            .map(|poly| {
                let mut eq = Equation { constant: 0, terms: Vec::new() };
                for (w, c) in poly.terms() {
                    match w.as_slice() {
                        [] => eq.constant += c,
                        [x, y] => eq.terms.push((pos(*x), pos(*y), c)),
                        _ => unreachable!("differentials are quadratic"),
                    }
                }
                eq
            })
            .collect();
        VertexSystem { unknowns: zero.iter().map(|&g| dga.label(g)).collect(), equations }
    }

    /// Whether `x` (one value per unknown) satisfies every equation mod `p`.
    pub fn is_augmentation(&self, x: &[u32], p: u32) -> bool {
        self.equations.iter().all(|e| eval(e, x, p) == 0)
    }
}

fn eval(e: &Equation, x: &[u32], p: u32) -> u32 {
    let p = p as i64;
    let mut s = e.constant.rem_euclid(p);
    for &(i, j, c) in &e.terms {
        s = (s + c.rem_euclid(p) * x[i] as i64 % p * x[j] as i64) % p;
    }
    s as u32
}

struct Search<'a> {
    p: u32,
    vars: &'a [usize],
    checks: &'a [Vec<&'a Equation>],
}

impl Search<'_> {
    fn count(&self, depth: usize, x: &mut Vec<u32>) -> u64 {
        if depth == self.vars.len() {
            return 1;
        }
        let v = self.vars[depth];
        let mut total = 0;
        for val in 0..self.p {
            x[v] = val;
            if self.checks[depth].iter().all(|e| eval(e, x, self.p) == 0) {
                total += self.count(depth + 1, x);
            }
        }
        x[v] = 0;
        total
    }
}

/// Counts augmentations of the internal DGA of a type `(l, r)` vertex over
/// `𝔽_p`. Unknowns are filled in order and each equation is tested as soon
/// as its last unknown is set.
pub fn brute_count_vertex(l: usize, r: usize, mu: &[i64], p: u64) -> Result<u64, AugError> {
    let p = check_prime(p)?;
    if (l + r) % 2 == 1 {
        return Ok(0);
    }
    let sys = VertexSystem::new(l, r, mu);
    let n = sys.unknowns.len();
    if sys.equations.iter().any(|e| e.terms.is_empty() && e.constant.rem_euclid(p as i64) != 0) {
        return Ok(0);
    }
    let mut used = vec![false; n];
    for e in &sys.equations {
        for &(i, j, _) in &e.terms {
            used[i] = true;
            used[j] = true;
        }
    }
    let vars: Vec<usize> = (0..n).filter(|&i| used[i]).collect();
    if vars.len() > MAX_UNKNOWNS {
        return Err(AugError::TooLarge(vars.len()));
    }
    let free = (n - vars.len()) as u32;
    let mut checks: Vec<Vec<&Equation>> = vec![Vec::new(); vars.len()];
    for e in sys.equations.iter().filter(|e| !e.terms.is_empty()) {
        let last = e.terms.iter().map(|&(i, j, _)| i.max(j)).max().expect("nonempty");
        let depth = vars.iter().position(|&v| v == last).expect("used unknown");
        checks[depth].push(e);
    }
    let search = Search { p, vars: &vars, checks: &checks };
    let split = vars.len().min(3);
    let prefixes = (p as u64).pow(split as u32);
    let solutions: u64 = (0..prefixes)
        .into_par_iter()
        .map(|code| {
            let mut x = vec![0u32; n];
            let mut c = code;
            for depth in 0..split {
                x[vars[depth]] = (c % p as u64) as u32;
                c /= p as u64;
                if !checks[depth].iter().all(|e| eval(e, &x, p)== 0) {
                    return 0;
                }
            }
            search.count(split, &mut x)
        })
        .sum();
    Ok(solutions * (p as u64).pow(free))
}

/// `Σ_ρ (p-1)^{val/2} p^{A_v(ρ)}` over the vertex rulings.
pub fn formula_count_vertex(l: usize, r: usize, mu: &[i64], p: u64) -> BigInt {
    enumerate_vertex_rulings(l, r, mu)
        .iter()
        .map(|rho| big_pow(p - 1, ((l + r) / 2) as u64) * big_pow(p, a_v(rho, mu, l, r)))
        .sum()
}

/// One ruling's contribution `(q-1)^{-χ+B̂} q^{r+A}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stratum {
    pub phi: Vec<Involution>,
    pub switches: Vec<usize>,
    pub torus_rank: i64,
    pub affine_rank: i64,
    pub count: ExactRational,
}

impl ToJson for Stratum {
    fn to_json(&self) -> Value {
        json!({
            "phi": self.phi.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "switches": self.switches,
            "torus": self.torus_rank,
            "affine": self.affine_rank,
            "count": if self.count.is_integer() {
                int_to_json(self.count.numer())
            } else {
                crate::algebra::rational_to_json(&self.count)
            },
        })
    }
}

pub const NORMAL_FORM_WARNING: &str = "normal-form assumption violated";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AugReport {
    pub q: u64,
    pub count: ExactRational,
    pub dim: i64,
    pub aug: ExactRational,
    pub strata: Vec<Stratum>,
    pub warnings: Vec<String>,
}

impl ToJson for AugReport {
    fn to_json(&self) -> Value {
        json!({
            "q": self.q,
            "count": if self.count.is_integer() {
                int_to_json(self.count.numer())
            } else {
                crate::algebra::rational_to_json(&self.count)
            },
            "dim": self.dim,
            "aug": {"num": int_to_json(self.aug.numer()), "den": int_to_json(self.aug.denom())},
            "strata": self.strata.iter().map(ToJson::to_json).collect::<Vec<_>>(),
            "warnings": self.warnings,
        })
    }
}

/// `q^{-dim} Σ_ρ (q-1)^{-χ+B̂} q^{r+A}` with `dim` the largest exponent sum.
pub fn aug_number(d: &FrontDiagram, left: &Involution, right: &Involution, q: u64) -> Result<AugReport, AugError> {
    if q < 2 {
        return Err(AlgebraError::InvalidQ(q).into());
    }
    let mut warnings = Vec::new();
    if !d.is_normal_form() {
        warnings.push(NORMAL_FORM_WARNING.to_string());
    }
    let rulings = enumerate_rulings(d, left, right)?;
    let qr = ExactRational::from_integer(BigInt::from(q));
    let qm1 = ExactRational::from_integer(BigInt::from(q - 1));
    let strata: Vec<Stratum> = rulings
        .iter()
        .map(|r| {
            let torus_rank = -r.chi + r.b_hat;
            let affine_rank = (r.r + r.a) as i64;
            Stratum {
                phi: r.phi.clone(),
                switches: r.switches.clone(),
                torus_rank,
                affine_rank,
                count: pow_rational(&qm1, torus_rank) * pow_rational(&qr, affine_rank),
            }
        })
        .collect();
    let dim = strata.iter().map(|s| s.torus_rank + s.affine_rank).max().unwrap_or(0);
    let count: ExactRational = strata.iter().map(|s| s.count.clone()).sum();
    let aug = &count * pow_rational(&qr, -dim);
    Ok(AugReport { q, count, dim, aug, strata, warnings })
}

/// `q^{-(d+B̂)/2} z^{B̂} ⟨left|R|right⟩` as a polynomial, before substituting
/// `z`. Zero when the ruling polynomial vanishes.
pub fn theorem_polynomial(d: &FrontDiagram, left: &Involution, right: &Involution) -> Result<QZPolynomial, AugError> {
    let r = ruling_polynomial(d, left, right)?;
    if r.is_zero() {
        return Ok(r);
    }
    let top = max_deg_z_after_q_eq_z2(&r)?;
    let b = d.b_hat();
    Ok(r.shift(-(top + b), b))
}

/// One row of the theorem check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoremRow {
    pub q: u64,
    pub aug: ExactRational,
    pub ruling_side: ExactRational,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoremReport {
    pub rows: Vec<TheoremRow>,
    pub warnings: Vec<String>,
}

impl TheoremReport {
    pub fn holds(&self) -> bool {
        self.rows.iter().all(|r| r.holds)
    }
}

impl ToJson for TheoremReport {
    fn to_json(&self) -> Value {
        json!({
            "holds": self.holds(),
            "rows": self.rows.iter().map(|r| json!({
                "q": r.q,
                "aug": crate::algebra::rational_to_json(&r.aug),
                "ruling_side": crate::algebra::rational_to_json(&r.ruling_side),
                "holds": r.holds,
            })).collect::<Vec<_>>(),
            "warnings": self.warnings,
        })
    }
}

/// Compares the augmentation number with the normalized ruling polynomial at
/// each `q`.
pub fn verify_main_theorem(
    d: &FrontDiagram,
    left: &Involution,
    right: &Involution,
    qs: &[u64],
) -> Result<TheoremReport, AugError> {
    let poly = theorem_polynomial(d, left, right)?;
    let mut rows = Vec::new();
    let mut warnings = Vec::new();
    for &q in qs {
        let report = aug_number(d, left, right, q)?;
        for w in report.warnings {
            if !warnings.contains(&w) {
                warnings.push(w);
            }
        }
        let ruling_side = eval_at_q(&poly, q)?;
        rows.push(TheoremRow { q, holds: report.aug == ruling_side, aug: report.aug, ruling_side });
    }
    Ok(TheoremReport { rows, warnings })
}

/// The base-point-free part of an augmentation number: the top `z`-degree
/// `d` of the ruling polynomial at `q = z^2`, and `aug · q^{B̂} / (q-1)^{B̂}`.
/// Together these determine `q^{(d+B̂)/2} z^{-B̂} aug`.
pub fn normalized_aug(
    d: &FrontDiagram,
    left: &Involution,
    right: &Involution,
    q: u64,
) -> Result<(Option<i64>, ExactRational), AugError> {
    let r = ruling_polynomial(d, left, right)?;
    let top = if r.is_zero() { None } else { Some(max_deg_z_after_q_eq_z2(&r)?) };
    let aug = aug_number(d, left, right, q)?.aug;
    let b = d.b_hat();
    let qr = ExactRational::from_integer(BigInt::from(q));
    let qm1 = ExactRational::from_integer(BigInt::from(q - 1));
    Ok((top, aug * pow_rational(&qr, b) * pow_rational(&qm1, -b)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasepointReport {
    pub q: u64,
    pub before: (Option<i64>, ExactRational),
    pub after: (Option<i64>, ExactRational),
    pub holds: bool,
}

impl ToJson for BasepointReport {
    fn to_json(&self) -> Value {
        json!({
            "q": self.q,
            "before": {"d": self.before.0, "value": crate::algebra::rational_to_json(&self.before.1)},
            "after": {"d": self.after.0, "value": crate::algebra::rational_to_json(&self.after.1)},
            "holds": self.holds,
        })
    }
}

/// Checks that the normalized augmentation number does not change when a
/// base point is split off at `site`.
pub fn verify_basepoint_independence(
    d: &FrontDiagram,
    site: Site,
    left: &Involution,
    right: &Involution,
    q: u64,
) -> Result<BasepointReport, AugError> {
    let split = split_basepoint(d, site)?;
    let before = normalized_aug(d, left, right, q)?;
    let after = normalized_aug(&split, left, right, q)?;
    Ok(BasepointReport { q, holds: before == after, before, after })
}

/// Every base-point site of a diagram: existing base points and every vertex
/// half-edge.
pub fn basepoint_sites(d: &FrontDiagram) -> Vec<Site> {
    use crate::front::SliceEvent;
    let mut out = Vec::new();
    for (k, e) in d.events.iter().enumerate() {
        match e {
            SliceEvent::BasePoint { .. } | SliceEvent::RightCusp { basepoint: true, .. } => out.push(Site::BasePoint(k)),
            SliceEvent::Vertex { left, right, .. } => {
                out.extend((0..left + right).map(|h| Site::VertexHalfEdge { event: k, half_edge: h }))
            }
            _ => {}
        }
    }
    out
}

/// Lagrange interpolation of `(x, y)` samples, returning coefficients in
/// increasing degree.
pub fn interpolate(points: &[(i64, ExactRational)]) -> Vec<ExactRational> {
    let n = points.len();
    let mut coeffs = vec![ExactRational::zero(); n];
    for (i, (xi, yi)) in points.iter().enumerate() {
        let mut basis = vec![ExactRational::one()];
        let mut denom = ExactRational::one();
        for (j, (xj, _)) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            let mut next = vec![ExactRational::zero(); basis.len() + 1];
            for (k, b) in basis.iter().enumerate() {
                next[k + 1] += b;
                next[k] -= b * ExactRational::from_integer(BigInt::from(*xj));
            }
            basis = next;
            denom *= ExactRational::from_integer(BigInt::from(xi - xj));
        }
        for (k, b) in basis.iter().enumerate() {
            coeffs[k] += b * yi / &denom;
        }
    }
    while coeffs.len() > 1 && coeffs.last().is_some_and(Zero::is_zero) {
        coeffs.pop();
    }
    coeffs
}

/// Interpolates the raw counts at `dim + 1` of the given primes and checks
/// the resulting polynomial has degree `dim` and predicts the remaining ones.
pub fn counts_are_polynomial(
    d: &FrontDiagram,
    left: &Involution,
    right: &Involution,
    primes: &[u64],
) -> Result<bool, AugError> {
    let reports: Vec<AugReport> =
        primes.iter().map(|&q| aug_number(d, left, right, q)).collect::<Result<_, _>>()?;
    let dim = reports.first().map_or(0, |r| r.dim);
    let need = dim as usize + 1;
    if reports.len() <= need {
        return Ok(false);
    }
    let samples: Vec<(i64, ExactRational)> = reports.iter().map(|r| (r.q as i64, r.count.clone())).collect();
    let coeffs = interpolate(&samples[..need]);
    let degree_ok = reports[0].count.is_zero() || coeffs.len() == need;
    let predicts = samples[need..].iter().all(|(x, y)| {
        let xr = ExactRational::from_integer(BigInt::from(*x));
        let v = coeffs.iter().rev().fold(ExactRational::zero(), |acc, c| acc * &xr + c);
        &v == y
    });
    Ok(degree_ok && predicts)
}
