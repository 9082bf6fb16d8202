//! Bordered front diagrams as sequences of slice events.
//!
//! Strands are indexed top to bottom (0-based) at the left edge of each
//! event. Potentials enter through the left border, left cusps and the right
//! half-edges of vertices; everything else is replayed.

mod involution;
mod moves;
mod ops;

pub use involution::{enumerate_border_rulings, BorderRuling, Involution};
pub use moves::{apply_move, apply_rewrite, move_sites, MoveId, Rewrite};
pub use ops::{closure, concatenate, split_basepoint, Site};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FrontError {
    #[error("event {event}: position {pos} out of range for {strands} strands")]
    IndexOutOfRange { event: usize, pos: usize, strands: usize },
    #[error("event {event}: right cusp joins potentials {upper} and {lower}, expected a drop of 1")]
    PotentialMismatchAtRightCusp { event: usize, upper: i64, lower: i64 },
    #[error("event {event}: vertex has no half-edges")]
    EmptyVertex { event: usize },
    #[error("event {event}: vertex declares {declared} right half-edges but lists {listed} potentials")]
    VertexPotentialCount { event: usize, declared: usize, listed: usize },
    #[error("left border declares {declared} strands but lists {listed} potentials")]
    LeftPotentialCount { declared: usize, listed: usize },
    #[error("arity mismatch: right border has {right} strands, left border has {left}")]
    ArityMismatch { right: usize, left: usize },
    #[error("potential mismatch at the glued border: {right:?} vs {left:?}")]
    PotentialMismatch { right: Vec<i64>, left: Vec<i64> },
    #[error("move {id:?} does not match at event {location}")]
    PatternMismatch { id: MoveId, location: usize },
    #[error("invalid base-point site: {0}")]
    InvalidSite(String),
    #[error("invalid involution: {0}")]
    InvalidInvolution(String),
}

/// One elementary slice of a front.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum SliceEvent {
    /// New strands at `pos` (potential `upper`) and `pos + 1` (`upper - 1`).
    LeftCusp { pos: usize, upper: i64 },
    /// Joins strands `pos` and `pos + 1`.
    RightCusp { pos: usize, basepoint: bool },
    /// Swaps strands `pos` and `pos + 1`.
    Crossing { pos: usize },
    /// Consumes `left` strands starting at `pos` and emits `right` strands.
    Vertex {
        pos: usize,
        left: usize,
        right: usize,
        right_potentials: Vec<i64>,
        left_basepoints: bool,
    },
    BasePoint { pos: usize, orientation: i8 },
    /// A crossing that may never be switched.
    Marking { pos: usize },
}

impl SliceEvent {
    pub fn pos(&self) -> usize {
        match self {
            SliceEvent::LeftCusp { pos, .. }
            | SliceEvent::RightCusp { pos, .. }
            | SliceEvent::Crossing { pos }
            | SliceEvent::Vertex { pos, .. }
            | SliceEvent::BasePoint { pos, .. }
            | SliceEvent::Marking { pos } => *pos,
        }
    }

    pub fn is_crossing(&self) -> bool {
        matches!(self, SliceEvent::Crossing { .. } | SliceEvent::Marking { .. })
    }

    /// Applies the event to the strand potentials of the slice to its left.
    fn apply(&self, event: usize, mu: &mut Vec<i64>) -> Result<(), FrontError> {
        let n = mu.len();
        let out_of_range = |pos| FrontError::IndexOutOfRange { event, pos, strands: n };
        match *self {
            SliceEvent::LeftCusp { pos, upper } => {
                if pos > n {
                    return Err(out_of_range(pos));
                }
                mu.splice(pos..pos, [upper, upper - 1]);
            }
            SliceEvent::RightCusp { pos, .. } => {
                if pos + 1 >= n {
                    return Err(out_of_range(pos));
                }
                if mu[pos] - mu[pos + 1] != 1 {
                    return Err(FrontError::PotentialMismatchAtRightCusp {
                        event,
                        upper: mu[pos],
                        lower: mu[pos + 1],
                    });
                }
                mu.drain(pos..pos + 2);
            }
            SliceEvent::Crossing { pos } | SliceEvent::Marking { pos } => {
                if pos + 1 >= n {
                    return Err(out_of_range(pos));
                }
                mu.swap(pos, pos + 1);
            }
            SliceEvent::Vertex { pos, left, right, ref right_potentials, .. } => {
                if left + right == 0 {
                    return Err(FrontError::EmptyVertex { event });
                }
                if right_potentials.len() != right {
                    return Err(FrontError::VertexPotentialCount {
                        event,
                        declared: right,
                        listed: right_potentials.len(),
                    });
                }
                if pos + left > n {
                    return Err(out_of_range(pos));
                }
                mu.splice(pos..pos + left, right_potentials.iter().copied());
            }
            SliceEvent::BasePoint { pos, .. } => {
                if pos >= n {
                    return Err(out_of_range(pos));
                }
            }
        }
        Ok(())
    }
}

/// A bordered front diagram.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FrontDiagram {
    pub name: Option<String>,
    pub left_arity: usize,
    pub left_potentials: Vec<i64>,
    pub events: Vec<SliceEvent>,
}

/// Strand potentials at every slice: `slices[0]` is the left border and
/// `slices[k + 1]` lies just right of event `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SliceTrace {
    pub slices: Vec<Vec<i64>>,
}

impl SliceTrace {
    pub fn right_arity(&self) -> usize {
        self.right_potentials().len()
    }

    pub fn right_potentials(&self) -> &[i64] {
        self.slices.last().map(Vec::as_slice).unwrap_or(&[])
    }

    /// Potentials just left of event `k`.
    pub fn before(&self, k: usize) -> &[i64] {
        &self.slices[k]
    }

    pub fn strand_counts(&self) -> Vec<usize> {
        self.slices.iter().map(Vec::len).collect()
    }
}

/// Vertex data read off a trace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexSite {
    pub event: usize,
    pub pos: usize,
    pub left: usize,
    pub right: usize,
    /// Half-edge potentials: left half-edges top to bottom, then right ones.
    pub mu: Vec<i64>,
}

impl FrontDiagram {
    pub fn new(left_potentials: Vec<i64>, events: Vec<SliceEvent>) -> Self {
        FrontDiagram { name: None, left_arity: left_potentials.len(), left_potentials, events }
    }

    /// The trivial tangle on the given potentials.
    pub fn trivial(left_potentials: Vec<i64>) -> Self {
        Self::new(left_potentials, Vec::new())
    }

    pub fn with_name(mut self, name: &str) -> Self {
        self.name = Some(name.to_string());
        self
    }

    /// Replays the events and reports the first violation.
    pub fn validate(&self) -> Result<SliceTrace, FrontError> {
        if self.left_potentials.len() != self.left_arity {
            return Err(FrontError::LeftPotentialCount {
                declared: self.left_arity,
                listed: self.left_potentials.len(),
            });
        }
        let mut mu = self.left_potentials.clone();
        let mut slices = Vec::with_capacity(self.events.len() + 1);
        slices.push(mu.clone());
        for (k, e) in self.events.iter().enumerate() {
            e.apply(k, &mut mu)?;
            slices.push(mu.clone());
        }
        Ok(SliceTrace { slices })
    }

    pub fn vertices(&self) -> Result<Vec<VertexSite>, FrontError> {
        let trace = self.validate()?;
        Ok(self
            .events
            .iter()
            .enumerate()
            .filter_map(|(k, e)| match e {
                SliceEvent::Vertex { pos, left, right, right_potentials, .. } => {
                    let mut mu = trace.before(k)[*pos..*pos + *left].to_vec();
                    mu.extend_from_slice(right_potentials);
                    Some(VertexSite { event: k, pos: *pos, left: *left, right: *right, mu })
                }
                _ => None,
            })
            .collect())
    }

    /// Base points, counting right-cusp flags and flagged left half-edges.
    pub fn basepoint_count(&self) -> usize {
        self.events
            .iter()
            .map(|e| match e {
                SliceEvent::BasePoint { .. } => 1,
                SliceEvent::RightCusp { basepoint: true, .. } => 1,
                SliceEvent::Vertex { left, left_basepoints: true, .. } => *left,
                _ => 0,
            })
            .sum()
    }

    pub fn valence_sum(&self) -> usize {
        self.events
            .iter()
            .map(|e| match e {
                SliceEvent::Vertex { left, right, .. } => left + right,
                _ => 0,
            })
            .sum()
    }

    /// `B̂`: base points plus half the total valency.
    pub fn b_hat(&self) -> i64 {
        (self.basepoint_count() + self.valence_sum() / 2) as i64
    }

    /// Every vertex of type `(0, val)` and every right cusp carries a base point.
    pub fn is_normal_form(&self) -> bool {
        self.events.iter().all(|e| match e {
            SliceEvent::Vertex { left, .. } => *left == 0,
            SliceEvent::RightCusp { basepoint, .. } => *basepoint,
            _ => true,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_trace() {
        let t = FrontDiagram::trivial(vec![3, 2, 1, 0]).validate().unwrap();
        assert_eq!(t.strand_counts(), vec![4]);
        assert_eq!(t.right_arity(), 4);
    }

    #[test]
    fn right_cusp_needs_drop() {
        let d = FrontDiagram::trivial(vec![0, 0]);
        let d = FrontDiagram { events: vec![SliceEvent::RightCusp { pos: 0, basepoint: false }], ..d };
        assert!(matches!(d.validate(), Err(FrontError::PotentialMismatchAtRightCusp { .. })));
    }

    #[test]
    fn vertex_replay() {
        let d = FrontDiagram::new(
            vec![5, 1, 1, 7],
            vec![SliceEvent::Vertex {
                pos: 1,
                left: 2,
                right: 3,
                right_potentials: vec![0, 1, 2],
                left_basepoints: false,
            }],
        );
        assert_eq!(d.validate().unwrap().right_potentials(), &[5, 0, 1, 2, 7]);
        assert_eq!(d.vertices().unwrap()[0].mu, vec![1, 1, 0, 1, 2]);
    }
}
