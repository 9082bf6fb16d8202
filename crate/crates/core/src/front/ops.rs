use super::{FrontDiagram, FrontError, SliceEvent};

/// Glues `d2` to the right of `d1`.
pub fn concatenate(d1: &FrontDiagram, d2: &FrontDiagram) -> Result<FrontDiagram, FrontError> {
    let t1 = d1.validate()?;
    if t1.right_arity() != d2.left_arity {
        return Err(FrontError::ArityMismatch { right: t1.right_arity(), left: d2.left_arity });
    }
    if t1.right_potentials() != d2.left_potentials.as_slice() {
        return Err(FrontError::PotentialMismatch {
            right: t1.right_potentials().to_vec(),
            left: d2.left_potentials.clone(),
        });
    }
    let mut events = d1.events.clone();
    events.extend(d2.events.iter().cloned());
    Ok(FrontDiagram {
        name: d1.name.clone(),
        left_arity: d1.left_arity,
        left_potentials: d1.left_potentials.clone(),
        events,
    })
}

/// Caps both borders with a single vertex each: `0_{n_L} · d · ∞_{n_R}`.
pub fn closure(d: &FrontDiagram) -> Result<FrontDiagram, FrontError> {
    let trace = d.validate()?;
    let mut events = Vec::with_capacity(d.events.len() + 2);
    if d.left_arity > 0 {
        events.push(SliceEvent::Vertex {
            pos: 0,
            left: 0,
            right: d.left_arity,
            right_potentials: d.left_potentials.clone(),
            left_basepoints: false,
        });
    }
    events.extend(d.events.iter().cloned());
    if trace.right_arity() > 0 {
        events.push(SliceEvent::Vertex {
            pos: 0,
            left: trace.right_arity(),
            right: 0,
            right_potentials: Vec::new(),
            left_basepoints: false,
        });
    }
    Ok(FrontDiagram { name: d.name.clone(), left_arity: 0, left_potentials: Vec::new(), events })
}

/// Where a new base point may be split off.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Site {
    /// Event index of a `BasePoint` or of a `RightCusp` carrying one.
    BasePoint(usize),
    /// Half-edge `half_edge` (left ones first, top to bottom) of the vertex at `event`.
    VertexHalfEdge { event: usize, half_edge: usize },
}

/// Adds exactly one base point next to an existing one, or on a vertex half-edge.
pub fn split_basepoint(d: &FrontDiagram, site: Site) -> Result<FrontDiagram, FrontError> {
    d.validate()?;
    let mut out = d.clone();
    match site {
        Site::BasePoint(k) => match d.events.get(k) {
            Some(SliceEvent::BasePoint { pos, orientation }) => {
                out.events.insert(k + 1, SliceEvent::BasePoint { pos: *pos, orientation: *orientation });
            }
            Some(SliceEvent::RightCusp { pos, basepoint: true }) => {
                out.events.insert(k, SliceEvent::BasePoint { pos: *pos, orientation: 1 });
            }
            _ => return Err(FrontError::InvalidSite(format!("event {} carries no base point", k))),
        },
        Site::VertexHalfEdge { event, half_edge } => match d.events.get(event) {
            Some(SliceEvent::Vertex { pos, left, right, .. }) if half_edge < left + right => {
                if half_edge < *left {
                    out.events.insert(event, SliceEvent::BasePoint { pos: pos + half_edge, orientation: 1 });
                } else {
                    let p = pos + half_edge - left;
                    out.events.insert(event + 1, SliceEvent::BasePoint { pos: p, orientation: 1 });
                }
            }
            _ => {
                return Err(FrontError::InvalidSite(format!(
                    "event {} has no vertex half-edge {}",
                    event, half_edge
                )))
            }
        },
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closure_of_trivial_two() {
        let c = closure(&FrontDiagram::trivial(vec![1, 0])).unwrap();
        assert_eq!(c.left_arity, 0);
        assert_eq!(c.events.len(), 2);
        assert_eq!(c.validate().unwrap().right_arity(), 0);
        assert_eq!(closure(&FrontDiagram::trivial(vec![])).unwrap().events.len(), 0);
    }

    #[test]
    fn concatenation_checks_borders() {
        let t3 = FrontDiagram::trivial(vec![0, 0, 0]);
        let t4 = FrontDiagram::trivial(vec![0, 0, 0, 0]);
        assert!(matches!(concatenate(&t3, &t4), Err(FrontError::ArityMismatch { .. })));
        let t = FrontDiagram::trivial(vec![1, 0]);
        assert_eq!(concatenate(&t, &t).unwrap(), t);
        let u = FrontDiagram::trivial(vec![0, 1]);
        assert!(matches!(concatenate(&t, &u), Err(FrontError::PotentialMismatch { .. })));
    }

    #[test]
    fn splitting_adds_one() {
        let d = FrontDiagram::new(vec![0], vec![SliceEvent::BasePoint { pos: 0, orientation: -1 }]);
        let e = split_basepoint(&d, Site::BasePoint(0)).unwrap();
        assert_eq!(e.basepoint_count(), 2);
        assert!(split_basepoint(&FrontDiagram::trivial(vec![0]), Site::BasePoint(0)).is_err());
    }
}
