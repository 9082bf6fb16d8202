//! Normal rulings of bordered fronts and the ruling polynomial.

mod resolve;
mod vertex;
mod walk;

pub use resolve::{full_resolution, resolution_block, resolve_vertex, split_pairs, PairSplit};
pub use vertex::{
    a_b, a_v, enumerate_vertex_rulings, sector_count, vertex_generator_degree, vertex_index_set,
};
pub use walk::{classify_crossing, surface_euler_characteristic, switch_is_normal, walk_switch_sets};

use itertools::Itertools;
use rayon::prelude::*;
use serde_json::{json, Value};
use thiserror::Error;

use crate::algebra::QZPoly;
use crate::dsl::ToJson;
use crate::front::{concatenate, enumerate_border_rulings, FrontDiagram, FrontError, Involution};
use crate::QZPolynomial;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RulingError {
    #[error(transparent)]
    Front(#[from] FrontError),
    #[error("{side} border ruling {ruling} is not valid for potentials {mu:?}")]
    InvalidBorder { side: &'static str, ruling: String, mu: Vec<i64> },
}

/// A normal ruling with its statistics.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalRuling {
    /// One involution per vertex, in event order.
    pub phi: Vec<Involution>,
    /// Indices of switched crossings in the resolved diagram.
    pub switches: Vec<usize>,
    pub s: u64,
    pub r: u64,
    pub dep: u64,
    pub chi: i64,
    pub a: u64,
    pub b_hat: i64,
}

impl NormalRuling {
    /// `q^{A/2} z^{-χ}`.
    pub fn weight(&self) -> QZPolynomial {
        QZPoly::monomial(1, self.a as i64, -self.chi)
    }

    /// `-χ + 2r + A`.
    pub fn index_sum(&self) -> i64 {
        -self.chi + 2 * self.r as i64 + self.a as i64
    }
}

fn involution_json(rho: &Involution) -> Value {
    Value::Array(rho.pairs().iter().map(|&(a, b)| json!([a, b])).collect())
}

impl ToJson for NormalRuling {
    fn to_json(&self) -> Value {
        json!({
            "phi": self.phi.iter().map(involution_json).collect::<Vec<_>>(),
            "switches": self.switches,
            "chi": self.chi,
            "s": self.s,
            "r": self.r,
            "dep": self.dep,
            "A": self.a,
            "weight": {"qh": self.a, "z": -self.chi, "c": 1},
        })
    }
}

impl ToJson for [NormalRuling] {
    fn to_json(&self) -> Value {
        Value::Array(self.iter().map(ToJson::to_json).collect())
    }
}

impl ToJson for QZPolynomial {
    fn to_json(&self) -> Value {
        QZPoly::to_json(self)
    }
}

fn check_border(side: &'static str, rho: &Involution, mu: &[i64]) -> Result<(), RulingError> {
    let valid = rho.len() == mu.len()
        && rho.is_fixed_point_free()
        && rho.pairs().iter().all(|&(a, b)| mu[a - 1] - mu[b - 1] == 1);
    if valid {
        Ok(())
    } else {
        Err(RulingError::InvalidBorder { side, ruling: rho.to_string(), mu: mu.to_vec() })
    }
}

/// All resolution choices: the product of the vertex ruling sets, in
/// lexicographic order.
pub fn resolution_choices(d: &FrontDiagram) -> Result<Vec<Vec<Involution>>, FrontError> {
    let per_vertex: Vec<Vec<Involution>> = d
        .vertices()?
        .iter()
        .map(|v| enumerate_vertex_rulings(v.left, v.right, &v.mu))
        .collect();
    if per_vertex.is_empty() {
        return Ok(vec![Vec::new()]);
    }
    Ok(per_vertex.into_iter().multi_cartesian_product().collect())
}

/// Normal rulings restricted to one resolution choice.
pub fn enumerate_rulings_for(
    d: &FrontDiagram,
    phi: &[Involution],
    left: &Involution,
    right: &Involution,
) -> Result<Vec<NormalRuling>, RulingError> {
    let trace = d.validate()?;
    check_border("left", left, &d.left_potentials)?;
    check_border("right", right, trace.right_potentials())?;
    let sites = d.vertices()?;
    let a: u64 = sites.iter().zip(phi).map(|(v, rho)| a_v(rho, &v.mu, v.left, v.right)).sum();
    let resolved = full_resolution(d, phi)?;
    let rtrace = resolved.validate()?;
    let cusps = resolved
        .events
        .iter()
        .filter(|e| matches!(e, crate::front::SliceEvent::LeftCusp { .. }))
        .count() as i64;
    let disks = cusps + (d.left_arity / 2) as i64;
    let half_right = (trace.right_arity() / 2) as i64;
    let b_hat = d.b_hat();
    Ok(walk_switch_sets(&resolved, &rtrace, left, right)
        .into_iter()
        .map(|w| {
            let s = w.switches.len() as u64;
            NormalRuling {
                phi: phi.to_vec(),
                s,
                r: w.returns,
                dep: w.departures,
                chi: disks - s as i64 - half_right,
                a,
                b_hat,
                switches: w.switches,
            }
        })
        .collect())
}

/// Every normal ruling of `d` with border conditions `left` and `right`,
/// resolutions in lexicographic order.
pub fn enumerate_rulings(d: &FrontDiagram, left: &Involution, right: &Involution) -> Result<Vec<NormalRuling>, RulingError> {
    let choices = resolution_choices(d)?;
    let per_phi: Result<Vec<Vec<NormalRuling>>, RulingError> =
        choices.par_iter().map(|phi| enumerate_rulings_for(d, phi, left, right)).collect();
    Ok(per_phi?.into_iter().flatten().collect())
}

/// `⟨left|R(d)|right⟩ = Σ q^{A/2} z^{-χ}`.
pub fn ruling_polynomial(d: &FrontDiagram, left: &Involution, right: &Involution) -> Result<QZPolynomial, RulingError> {
    Ok(enumerate_rulings(d, left, right)?.iter().map(NormalRuling::weight).sum())
}

/// Ruling polynomial of a single resolution choice.
pub fn ruling_polynomial_for(
    d: &FrontDiagram,
    phi: &[Involution],
    left: &Involution,
    right: &Involution,
) -> Result<QZPolynomial, RulingError> {
    Ok(enumerate_rulings_for(d, phi, left, right)?.iter().map(NormalRuling::weight).sum())
}

/// Every compatible pair of border rulings.
pub fn border_pairs(d: &FrontDiagram) -> Result<Vec<(Involution, Involution)>, FrontError> {
    let trace = d.validate()?;
    let lefts = enumerate_border_rulings(d.left_arity, &d.left_potentials, false);
    let rights = enumerate_border_rulings(trace.right_arity(), trace.right_potentials(), false);
    Ok(lefts.into_iter().cartesian_product(rights).collect())
}

/// Sum of the ruling polynomials over all border pairs.
pub fn ruling_polynomial_total(d: &FrontDiagram) -> Result<QZPolynomial, RulingError> {
    let mut total = QZPolynomial::zero();
    for (l, r) in border_pairs(d)? {
        total += &ruling_polynomial(d, &l, &r)?;
    }
    Ok(total)
}

/// Both sides of the gluing identity for one border pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GluingReport {
    pub left: Involution,
    pub right: Involution,
    pub glued: QZPolynomial,
    pub summed: QZPolynomial,
    pub holds: bool,
}

impl ToJson for GluingReport {
    fn to_json(&self) -> Value {
        json!({
            "left": self.left.to_string(),
            "right": self.right.to_string(),
            "glued": self.glued.to_json(),
            "summed": self.summed.to_json(),
            "holds": self.holds,
        })
    }
}

/// Checks `⟨L|R(d1·d2)|R⟩ = Σ_ρ ⟨L|R(d1)|ρ⟩⟨ρ|R(d2)|R⟩`.
pub fn verify_gluing(
    d1: &FrontDiagram,
    d2: &FrontDiagram,
    left: &Involution,
    right: &Involution,
) -> Result<GluingReport, RulingError> {
    let glued_diagram = concatenate(d1, d2)?;
    let glued = ruling_polynomial(&glued_diagram, left, right)?;
    let middle = d1.validate()?;
    let mut summed = QZPolynomial::zero();
    for rho in enumerate_border_rulings(middle.right_arity(), middle.right_potentials(), false) {
        let a = ruling_polynomial(d1, left, &rho)?;
        if a.is_zero() {
            continue;
        }
        summed += &(&a * &ruling_polynomial(d2, &rho, right)?);
    }
    let holds = glued == summed;
    Ok(GluingReport { left: left.clone(), right: right.clone(), glued, summed, holds })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::front::closure;

    #[test]
    fn trivial_tangle_has_identity_matrix() {
        let d = FrontDiagram::trivial(vec![1, 1, 0, 0]);
        let rulings = enumerate_border_rulings(4, &[1, 1, 0, 0], false);
        for a in &rulings {
            for b in &rulings {
                let p = ruling_polynomial(&d, a, b).unwrap();
                assert_eq!(p, if a == b { QZPolynomial::one() } else { QZPolynomial::zero() });
            }
        }
    }

    #[test]
    fn closed_trivial_two() {
        let d = closure(&FrontDiagram::trivial(vec![1, 0])).unwrap();
        let e = Involution::identity(0);
        let rs = enumerate_rulings(&d, &e, &e).unwrap();
        assert_eq!(rs.len(), 1);
        assert_eq!(rs[0].chi, 1);
    }
}
