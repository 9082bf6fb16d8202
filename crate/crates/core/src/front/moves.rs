//! Front Reidemeister moves as local rewrites of event windows.
//!
//! Every move has a longer side (`lhs`) and a shorter side (`rhs`); a
//! [`Rewrite`] names the move, its reflected variant, the direction, and the
//! event index where the window starts. Catalog:
//!
//! * `I`: a kink, a left cusp whose branch crosses the through strand and
//!   closes again (`a`: kink below the strand, `b`: above).
//! * `II`: a strand passing over a cusp (`a`, `b`: left cusp from above and
//!   from below, `c`, `d`: the right cusp mirrors).
//! * `III`: the braid relation on three strands.
//! * `IV`: a vertex half-edge moved to the other side through a right cusp
//!   (`a`: bottom-left to top-right, `b`: top-left to bottom-right).
//! * `V`: a strand sliding past a vertex (`a`: from above, `b`: from below).
//! * `VI`: a vertex half-edge moved through a left cusp (`a`: bottom-right to
//!   top-left, `b`: top-right to bottom-left).

use serde::{Deserialize, Serialize};

use super::{FrontDiagram, FrontError, SliceEvent};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MoveId {
    I,
    II,
    III,
    IV,
    V,
    VI,
}

impl MoveId {
    pub const ALL: [MoveId; 6] = [MoveId::I, MoveId::II, MoveId::III, MoveId::IV, MoveId::V, MoveId::VI];

    fn variants(self) -> u8 {
        match self {
            MoveId::II => 4,
            MoveId::III => 1,
            _ => 2,
        }
    }
}

impl std::str::FromStr for MoveId {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim().to_ascii_uppercase().as_str() {
            "I" | "1" => Ok(MoveId::I),
            "II" | "2" => Ok(MoveId::II),
            "III" | "3" => Ok(MoveId::III),
            "IV" | "4" => Ok(MoveId::IV),
            "V" | "5" => Ok(MoveId::V),
            "VI" | "6" => Ok(MoveId::VI),
            _ => Err(format!("unknown move '{}', expected I..VI", s)),
        }
    }
}

/// A fully specified rewrite.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Rewrite {
    pub id: MoveId,
    pub variant: u8,
    /// `false`: longer side to shorter side; `true`: the reverse.
    pub expand: bool,
    /// First event of the window.
    pub at: usize,
    /// Strand for kink insertion (`I` expanded); ignored otherwise.
    pub strand: usize,
}

#[derive(Clone, Debug, Default)]
struct Params {
    i: usize,
    m: i64,
    bp: bool,
    left: usize,
    right: usize,
    pots: Vec<i64>,
    lbp: bool,
}

fn x(p: usize) -> SliceEvent {
    SliceEvent::Crossing { pos: p }
}

fn lc(p: usize, u: i64) -> SliceEvent {
    SliceEvent::LeftCusp { pos: p, upper: u }
}

fn rc(p: usize, bp: bool) -> SliceEvent {
    SliceEvent::RightCusp { pos: p, basepoint: bp }
}

fn vx(p: usize, left: usize, right_potentials: Vec<i64>, lbp: bool) -> SliceEvent {
    SliceEvent::Vertex { pos: p, left, right: right_potentials.len(), right_potentials, left_basepoints: lbp }
}

/// Both sides of a move for given parameters: `(lhs, rhs)`.
fn sides(id: MoveId, variant: u8, p: &Params) -> Option<(Vec<SliceEvent>, Vec<SliceEvent>)> {
    let i = p.i;
    let (l, r) = (p.left, p.right);
    Some(match (id, variant) {
        (MoveId::I, 0) => (vec![lc(i + 1, p.m), x(i), rc(i + 1, false)], vec![]),
        (MoveId::I, 1) => (vec![lc(i, p.m + 1), x(i + 1), rc(i, false)], vec![]),
        (MoveId::II, 0) => (vec![lc(i + 1, p.m), x(i), x(i + 1)], vec![lc(i, p.m)]),
        (MoveId::II, 1) => (vec![lc(i, p.m), x(i + 1), x(i)], vec![lc(i + 1, p.m)]),
        (MoveId::II, 2) => (vec![x(i + 1), x(i), rc(i + 1, p.bp)], vec![rc(i, p.bp)]),
        (MoveId::II, 3) => (vec![x(i), x(i + 1), rc(i, p.bp)], vec![rc(i + 1, p.bp)]),
        (MoveId::III, 0) => (vec![x(i), x(i + 1), x(i)], vec![x(i + 1), x(i), x(i + 1)]),
        (MoveId::IV, 0) => {
            if l == 0 {
                return None;
            }
            let mut pots = vec![p.m + 1];
            pots.extend_from_slice(&p.pots);
            let mut lhs = vec![vx(i, l - 1, pots, false)];
            lhs.extend((1..=r).rev().map(|k| x(i + k)));
            lhs.push(rc(i, false));
            (lhs, vec![vx(i, l, p.pots.clone(), false)])
        }
        (MoveId::IV, 1) => {
            if l == 0 {
                return None;
            }
            let mut pots = p.pots.clone();
            pots.push(p.m - 1);
            let mut lhs = vec![vx(i + 1, l - 1, pots, false)];
            lhs.extend((0..r).map(|k| x(i + k)));
            lhs.push(rc(i + r, false));
            (lhs, vec![vx(i, l, p.pots.clone(), false)])
        }
        (MoveId::V, 0) => {
            let mut lhs: Vec<SliceEvent> = (0..l).map(|k| x(i + k)).collect();
            lhs.push(vx(i, l, p.pots.clone(), p.lbp));
            let mut rhs = vec![vx(i + 1, l, p.pots.clone(), p.lbp)];
            rhs.extend((0..r).map(|k| x(i + k)));
            (lhs, rhs)
        }
        (MoveId::V, 1) => {
            let mut lhs: Vec<SliceEvent> = (0..l).rev().map(|k| x(i + k)).collect();
            lhs.push(vx(i + 1, l, p.pots.clone(), p.lbp));
            let mut rhs = vec![vx(i, l, p.pots.clone(), p.lbp)];
            rhs.extend((0..r).rev().map(|k| x(i + k)));
            (lhs, rhs)
        }
        (MoveId::VI, 0) => {
            let (&last, rest) = p.pots.split_last()?;
            let mut lhs = vec![lc(i, last + 1)];
            lhs.extend((1..=l).map(|k| x(i + k)));
            lhs.push(vx(i, l + 1, rest.to_vec(), false));
            (lhs, vec![vx(i, l, p.pots.clone(), false)])
        }
        (MoveId::VI, 1) => {
            let (&first, rest) = p.pots.split_first()?;
            let mut lhs = vec![lc(i + l, first)];
            lhs.extend((0..l).rev().map(|k| x(i + k)));
            lhs.push(vx(i + 1, l + 1, rest.to_vec(), false));
            (lhs, vec![vx(i, l, p.pots.clone(), false)])
        }
        _ => return None,
    })
}

fn vertex_params(e: &SliceEvent) -> Option<(usize, usize, Vec<i64>, bool)> {
    match e {
        SliceEvent::Vertex { pos, left, right_potentials, left_basepoints, .. } => {
            Some((*pos, *left, right_potentials.clone(), *left_basepoints))
        }
        _ => None,
    }
}

/// Length of the run of crossings starting at `at` whose positions step by `step`.
fn crossing_run(events: &[SliceEvent], at: usize, step: i64) -> (usize, Option<usize>) {
    let mut len = 0;
    let mut first = None;
    let mut expect: Option<i64> = None;
    while let Some(SliceEvent::Crossing { pos }) = events.get(at + len) {
        let pos = *pos as i64;
        if let Some(e) = expect {
            if pos != e {
                break;
            }
        } else {
            first = Some(pos as usize);
        }
        expect = Some(pos + step);
        len += 1;
    }
    (len, first)
}

/// Reads parameters off the events (and the slice potentials `mu` before `at`).
fn deduce(rw: &Rewrite, events: &[SliceEvent], mu: &[i64]) -> Option<Params> {
    let at = rw.at;
    let first = events.get(at);
    let mut p = Params::default();
    match (rw.id, rw.variant, rw.expand) {
        (MoveId::I, v, false) => {
            let SliceEvent::LeftCusp { pos, upper } = *first? else { return None };
            if v == 0 {
                p.i = pos.checked_sub(1)?;
                p.m = upper;
            } else {
                p.i = pos;
                p.m = upper - 1;
            }
        }
        (MoveId::I, _, true) => {
            p.i = rw.strand;
            p.m = *mu.get(rw.strand)?;
        }
        (MoveId::II, v, expand) => match (first?.clone(), v, expand) {
            (SliceEvent::LeftCusp { pos, upper }, 0, false) => {
                p.i = pos.checked_sub(1)?;
                p.m = upper;
            }
            (SliceEvent::LeftCusp { pos, upper }, 1, false) | (SliceEvent::LeftCusp { pos, upper }, 0, true) => {
                p.i = pos;
                p.m = upper;
            }
            (SliceEvent::LeftCusp { pos, upper }, 1, true) => {
                p.i = pos.checked_sub(1)?;
                p.m = upper;
            }
            (SliceEvent::Crossing { pos }, 2, false) => {
                p.i = pos.checked_sub(1)?;
                let SliceEvent::RightCusp { basepoint, .. } = *events.get(at + 2)? else { return None };
                p.bp = basepoint;
            }
            (SliceEvent::Crossing { pos }, 3, false) => {
                p.i = pos;
                let SliceEvent::RightCusp { basepoint, .. } = *events.get(at + 2)? else { return None };
                p.bp = basepoint;
            }
            (SliceEvent::RightCusp { pos, basepoint }, 2, true) => {
                p.i = pos;
                p.bp = basepoint;
            }
            (SliceEvent::RightCusp { pos, basepoint }, 3, true) => {
                p.i = pos.checked_sub(1)?;
                p.bp = basepoint;
            }
            _ => return None,
        },
        (MoveId::III, _, expand) => {
            let SliceEvent::Crossing { pos } = *first? else { return None };
            p.i = if expand { pos.checked_sub(1)? } else { pos };
        }
        (MoveId::IV, v, false) => {
            let (pos, left, pots, lbp) = vertex_params(first?)?;
            let (&head, _) = pots.split_first()?;
            if lbp {
                return None;
            }
            p.left = left + 1;
            p.right = pots.len() - 1;
            if v == 0 {
                p.i = pos;
                p.m = head - 1;
                p.pots = pots[1..].to_vec();
            } else {
                p.i = pos.checked_sub(1)?;
                p.m = pots[pots.len() - 1] + 1;
                p.pots = pots[..pots.len() - 1].to_vec();
            }
        }
        (MoveId::IV, v, true) | (MoveId::VI, v, true) => {
            let (pos, left, pots, lbp) = vertex_params(first?)?;
            if lbp {
                return None;
            }
            p.i = pos;
            p.left = left;
            p.right = pots.len();
            p.pots = pots;
            if rw.id == MoveId::IV {
                let strand = if v == 0 { pos + left.checked_sub(1)? } else { pos };
                p.m = *mu.get(strand)?;
            }
        }
        (MoveId::VI, v, false) => {
            let SliceEvent::LeftCusp { pos, upper } = *first? else { return None };
            if v == 0 {
                let (run, start) = crossing_run(events, at + 1, 1);
                if run > 0 && start != Some(pos + 1) {
                    return None;
                }
                let (vpos, vleft, rest, lbp) = vertex_params(events.get(at + 1 + run)?)?;
                if lbp || vpos != pos || vleft != run + 1 {
                    return None;
                }
                p.i = pos;
                p.left = run;
                p.pots = rest;
                p.pots.push(upper - 1);
            } else {
                let (run, start) = crossing_run(events, at + 1, -1);
                if run > 0 && start != Some(pos.checked_sub(1)?) {
                    return None;
                }
                let (vpos, vleft, rest, lbp) = vertex_params(events.get(at + 1 + run)?)?;
                p.i = pos.checked_sub(run)?;
                if lbp || vpos != p.i + 1 || vleft != run + 1 {
                    return None;
                }
                p.left = run;
                p.pots = vec![upper];
                p.pots.extend(rest);
            }
            p.right = p.pots.len();
        }
        (MoveId::V, v, false) => {
            let step = if v == 0 { 1 } else { -1 };
            let (run, _) = crossing_run(events, at, step);
            let (pos, left, pots, lbp) = vertex_params(events.get(at + run)?)?;
            if left != run {
                return None;
            }
            p.i = if v == 0 { pos } else { pos.checked_sub(1)? };
            p.left = left;
            p.right = pots.len();
            p.pots = pots;
            p.lbp = lbp;
        }
        (MoveId::V, v, true) => {
            let (pos, left, pots, lbp) = vertex_params(first?)?;
            p.i = if v == 0 { pos.checked_sub(1)? } else { pos };
            p.left = left;
            p.right = pots.len();
            p.pots = pots;
            p.lbp = lbp;
        }
    }
    Some(p)
}

/// Applies a fully specified rewrite and returns the result with the rewrite
/// that undoes it.
pub fn apply_rewrite(d: &FrontDiagram, rw: &Rewrite) -> Result<(FrontDiagram, Rewrite), FrontError> {
    let mismatch = || FrontError::PatternMismatch { id: rw.id, location: rw.at };
    let trace = d.validate()?;
    if rw.at > d.events.len() || rw.variant >= rw.id.variants() {
        return Err(mismatch());
    }
    let params = deduce(rw, &d.events, trace.before(rw.at)).ok_or_else(mismatch)?;
    let (lhs, rhs) = sides(rw.id, rw.variant, &params).ok_or_else(mismatch)?;
    let (from, to) = if rw.expand { (rhs, lhs) } else { (lhs, rhs) };
    let end = rw.at + from.len();
    if end > d.events.len() || d.events[rw.at..end] != from[..] {
        return Err(mismatch());
    }
    let mut events = d.events[..rw.at].to_vec();
    events.extend(to);
    events.extend_from_slice(&d.events[end..]);
    let out = FrontDiagram { events, ..d.clone() };
    out.validate().map_err(|_| mismatch())?;
    if out.validate()?.right_potentials() != trace.right_potentials() {
        return Err(mismatch());
    }
    let inverse = Rewrite { expand: !rw.expand, strand: params.i, ..rw.clone() };
    Ok((out, inverse))
}

/// Every rewrite that applies somewhere in `d`, in a fixed order.
pub fn move_sites(d: &FrontDiagram) -> Vec<Rewrite> {
    let Ok(trace) = d.validate() else { return Vec::new() };
    let mut out = Vec::new();
    for id in MoveId::ALL {
        for variant in 0..id.variants() {
            for expand in [false, true] {
                for at in 0..=d.events.len() {
                    let strands = if id == MoveId::I && expand { trace.before(at).len() } else { 1 };
                    for strand in 0..strands {
                        let rw = Rewrite { id, variant, expand, at, strand };
                        if apply_rewrite(d, &rw).is_ok() {
                            out.push(rw);
                        }
                    }
                }
            }
        }
    }
    out
}

/// Applies the first rewrite of move `id` that matches at event `location`.
pub fn apply_move(d: &FrontDiagram, id: MoveId, location: usize) -> Result<FrontDiagram, FrontError> {
    move_sites(d)
        .into_iter()
        .find(|rw| rw.id == id && rw.at == location)
        .map(|rw| apply_rewrite(d, &rw).map(|(out, _)| out))
        .unwrap_or(Err(FrontError::PatternMismatch { id, location }))
}
