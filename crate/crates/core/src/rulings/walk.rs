//! Left-to-right slice walk enumerating switch sets of a resolved diagram.

use crate::front::{FrontDiagram, Involution, SliceEvent, SliceTrace};

/// One switch set found by the walk.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalkResult {
    pub switches: Vec<usize>,
    pub returns: u64,
    pub departures: u64,
}

fn interlaced(a: (usize, usize), b: (usize, usize)) -> bool {
    let (a0, a1) = (a.0.min(a.1), a.0.max(a.1));
    let (b0, b1) = (b.0.min(b.1), b.0.max(b.1));
    (a0 < b0 && b0 < a1 && a1 < b1) || (b0 < a0 && a0 < b1 && b1 < a1)
}

/// Whether the companions `p` of strand `k` and `q` of strand `k + 1` allow a
/// switch at a crossing of `k` and `k + 1`: the two disks must be disjoint or
/// nested, never interlaced.
pub fn switch_is_normal(k: usize, p: usize, q: usize) -> bool {
    (p < k && q > k + 1) || (p < k && q < k && q < p) || (p > k + 1 && q > k + 1 && p > q)
}

/// Outcome of leaving a crossing unswitched: `Some(true)` for a return,
/// `Some(false)` for a departure.
pub fn classify_crossing(k: usize, p: usize, q: usize) -> Option<bool> {
    let before = interlaced((k, p), (k + 1, q));
    let after = interlaced((k + 1, p), (k, q));
    match (before, after) {
        (true, false) => Some(true),
        (false, true) => Some(false),
        _ => None,
    }
}

struct Walk<'a> {
    events: &'a [SliceEvent],
    trace: &'a SliceTrace,
    target: &'a [usize],
    out: Vec<WalkResult>,
}

impl Walk<'_> {
    fn step(&mut self, k: usize, partner: Vec<usize>, switches: &mut Vec<usize>, ret: u64, dep: u64) {
        let Some(event) = self.events.get(k) else {
            if partner == self.target {
                self.out.push(WalkResult { switches: switches.clone(), returns: ret, departures: dep });
            }
            return;
        };
        match *event {
            SliceEvent::LeftCusp { pos, .. } => {
                let mut next: Vec<usize> = partner.iter().map(|&j| if j >= pos { j + 2 } else { j }).collect();
                next.splice(pos..pos, [pos + 1, pos]);
                self.step(k + 1, next, switches, ret, dep);
            }
            SliceEvent::RightCusp { pos, .. } => {
                if partner[pos] != pos + 1 {
                    return;
                }
                let mut next = partner;
                next.drain(pos..pos + 2);
                for j in next.iter_mut() {
                    if *j > pos + 1 {
                        *j -= 2;
                    }
                }
                self.step(k + 1, next, switches, ret, dep);
            }
            SliceEvent::Crossing { pos } | SliceEvent::Marking { pos } => {
                let (p, q) = (partner[pos], partner[pos + 1]);
                if p == pos + 1 {
                    return;
                }
                let mu = self.trace.before(k);
                let graded = mu[pos] == mu[pos + 1];
                let (mut r2, mut d2) = (ret, dep);
                if graded {
                    match classify_crossing(pos, p, q) {
                        Some(true) => r2 += 1,
                        Some(false) => d2 += 1,
                        None => {}
                    }
                }
                let mut swapped = partner.clone();
                swapped.swap(pos, pos + 1);
                for j in swapped.iter_mut() {
                    if *j == pos {
                        *j = pos + 1;
                    } else if *j == pos + 1 {
                        *j = pos;
                    }
                }
                self.step(k + 1, swapped, switches, r2, d2);
                let switchable = matches!(event, SliceEvent::Crossing { .. }) && graded && switch_is_normal(pos, p, q);
                if switchable {
                    switches.push(k);
                    self.step(k + 1, partner, switches, ret, dep);
                    switches.pop();
                }
            }
            SliceEvent::BasePoint { .. } => self.step(k + 1, partner, switches, ret, dep),
            SliceEvent::Vertex { .. } => panic!("slice walk needs a fully resolved diagram"),
        }
    }
}

/// All switch sets of the vertex-free diagram `d` running from `left` to `right`.
pub fn walk_switch_sets(d: &FrontDiagram, trace: &SliceTrace, left: &Involution, right: &Involution) -> Vec<WalkResult> {
    let mut w = Walk { events: &d.events, trace, target: right.partners(), out: Vec::new() };
    let mut switches = Vec::new();
    w.step(0, left.partners().to_vec(), &mut switches, 0, 0);
    w.out
}

/// Euler characteristic of the ruling surface cut out by a switch set, from
/// an explicit cell structure: border points, cusps and switch points are
/// vertices; arcs of the resolved front and border segments are edges; each
/// disk is a face.
pub fn surface_euler_characteristic(d: &FrontDiagram, left: &Involution, switches: &[usize]) -> i64 {
    let n_left = left.len();
    let mut open_arcs = n_left as i64;
    let mut vertices = n_left as i64;
    let mut edges = (n_left / 2) as i64;
    let mut disk_of: Vec<usize> = (0..n_left).map(|i| i.min(left.partner(i))).collect();
    let mut disks: std::collections::BTreeSet<usize> = disk_of.iter().copied().collect();
    let mut next_disk = n_left;
    for (k, e) in d.events.iter().enumerate() {
        match *e {
            SliceEvent::LeftCusp { pos, .. } => {
                vertices += 1;
                open_arcs += 2;
                disk_of.splice(pos..pos, [next_disk, next_disk]);
                disks.insert(next_disk);
                next_disk += 1;
            }
            SliceEvent::RightCusp { pos, .. } => {
                vertices += 1;
                edges += 2;
                open_arcs -= 2;
                disk_of.drain(pos..pos + 2);
            }
            SliceEvent::Crossing { pos } | SliceEvent::Marking { pos } => {
                if switches.contains(&k) {
                    vertices += 1;
                    edges += 2;
                } else {
                    disk_of.swap(pos, pos + 1);
                }
            }
            SliceEvent::BasePoint { .. } => {}
            SliceEvent::Vertex { .. } => panic!("surface needs a fully resolved diagram"),
        }
    }
    let n_right = disk_of.len() as i64;
    vertices += n_right;
    edges += open_arcs + n_right / 2;
    vertices - edges + disks.len() as i64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normality_cases() {
        assert!(switch_is_normal(2, 0, 5));
        assert!(switch_is_normal(3, 1, 0));
        assert!(switch_is_normal(0, 5, 3));
        assert!(!switch_is_normal(2, 5, 0));
        assert!(!switch_is_normal(3, 0, 1));
        assert!(!switch_is_normal(0, 3, 5));
    }

    #[test]
    fn return_and_departure() {
        assert_eq!(classify_crossing(2, 0, 5), Some(false));
        assert_eq!(classify_crossing(2, 5, 0), Some(true));
        assert_eq!(classify_crossing(4, 2, 3), Some(true));
        assert_eq!(classify_crossing(4, 3, 2), Some(false));
    }
}
