//! Replacing a vertex by a marked tangle determined by an involution on its
//! half-edges.
//!
//! Pairs split into three kinds: both ends on the left (`L`), one end on each
//! side (`B`), both ends on the right (`R`). Left pairs close with right
//! cusps after the upper end crosses down to its partner, right pairs open
//! with left cusps whose upper branch crosses up, and the through strands
//! run through a positive permutation braid `β` followed by `β^c` and its
//! mirror `β̄^c`. Only the crossings of `β` can switch.

use crate::front::{FrontDiagram, FrontError, Involution, SliceEvent};

use super::vertex::enumerate_vertex_rulings;

/// 1-based smaller endpoints of the pairs of each kind, ascending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairSplit {
    pub left: Vec<usize>,
    pub through: Vec<usize>,
    pub right: Vec<usize>,
}

pub fn split_pairs(l: usize, rho: &Involution) -> PairSplit {
    let mut s = PairSplit { left: vec![], through: vec![], right: vec![] };
    for a in 0..rho.len() {
        let b = rho.partner(a);
        if a < b {
            if b < l {
                s.left.push(a + 1);
            } else if a < l {
                s.through.push(a + 1);
            } else {
                s.right.push(a + 1);
            }
        }
    }
    s
}

/// Emits bubble-sort crossings moving `cur` into ascending `key` order.
fn sort_word(cur: &mut [usize], key: impl Fn(usize) -> usize) -> Vec<usize> {
    let mut word = Vec::new();
    loop {
        let mut swapped = false;
        for k in 0..cur.len().saturating_sub(1) {
            if key(cur[k]) > key(cur[k + 1]) {
                cur.swap(k, k + 1);
                word.push(k);
                swapped = true;
            }
        }
        if !swapped {
            return word;
        }
    }
}

/// The resolution tangle of a type `(l, r)` vertex with half-edge potentials
/// `mu`, with positions relative to the vertex's top strand.
pub fn resolution_block(l: usize, r: usize, mu: &[i64], rho: &Involution) -> Result<Vec<SliceEvent>, FrontError> {
    let n = l + r;
    if rho.len() != n || mu.len() != n || !enumerate_vertex_rulings(l, r, mu).contains(rho) {
        return Err(FrontError::InvalidInvolution(format!(
            "{} is not a vertex ruling of type ({}, {}) with potentials {:?}",
            rho, l, r, mu
        )));
    }
    let split = split_pairs(l, rho);
    let mut events = Vec::new();

    let mut cur: Vec<usize> = (0..l).collect();
    for &a1 in &split.left {
        let a = a1 - 1;
        let pa = cur.iter().position(|&x| x == a).expect("label present");
        let pb = cur.iter().position(|&x| x == rho.partner(a)).expect("label present");
        for k in pa..pb - 1 {
            events.push(SliceEvent::Marking { pos: k });
            cur.swap(k, k + 1);
        }
        events.push(SliceEvent::RightCusp { pos: pb - 1, basepoint: false });
        cur.drain(pb - 1..=pb);
    }

    // Through strands: left ends ascending, sent to the rank of their partner.
    let t = cur.len();
    let partners: Vec<usize> = cur.iter().map(|&a| rho.partner(a)).collect();
    let mut sorted_partners = partners.clone();
    sorted_partners.sort_unstable();
    let rank = |label: usize| {
        let p = rho.partner(label);
        sorted_partners.iter().position(|&x| x == p).expect("partner present")
    };
    let left_index = |label: usize| partners.iter().position(|&p| p == rho.partner(label)).expect("present");
    for k in sort_word(&mut cur, rank) {
        events.push(SliceEvent::Crossing { pos: k });
    }
    let complement = sort_word(&mut cur, |label| t - 1 - left_index(label));
    for &k in complement.iter().chain(complement.iter().rev()) {
        events.push(SliceEvent::Marking { pos: k });
    }

    let mut cur: Vec<usize> = sorted_partners;
    for &a1 in &split.right {
        let a = a1 - 1;
        let b = rho.partner(a);
        let pb = cur.iter().filter(|&&y| y < b).count();
        events.push(SliceEvent::LeftCusp { pos: pb, upper: mu[a] });
        cur.splice(pb..pb, [a, b]);
        let pa = cur.iter().filter(|&&y| y < a).count();
        for k in (pa..pb).rev() {
            events.push(SliceEvent::Marking { pos: k });
            cur.swap(k, k + 1);
        }
    }
    debug_assert!(cur.iter().copied().eq(l..n));
    Ok(events)
}

/// Replaces the `vertex`-th vertex (in event order) by its resolution.
pub fn resolve_vertex(d: &FrontDiagram, vertex: usize, rho: &Involution) -> Result<FrontDiagram, FrontError> {
    let sites = d.vertices()?;
    let site = sites
        .get(vertex)
        .ok_or_else(|| FrontError::InvalidInvolution(format!("no vertex with index {}", vertex)))?;
    let block = resolution_block(site.left, site.right, &site.mu, rho)?;
    let mut events = d.events[..site.event].to_vec();
    events.extend(block.into_iter().map(|e| offset(e, site.pos)));
    events.extend_from_slice(&d.events[site.event + 1..]);
    Ok(FrontDiagram { events, ..d.clone() })
}

fn offset(e: SliceEvent, by: usize) -> SliceEvent {
    match e {
        SliceEvent::LeftCusp { pos, upper } => SliceEvent::LeftCusp { pos: pos + by, upper },
        SliceEvent::RightCusp { pos, basepoint } => SliceEvent::RightCusp { pos: pos + by, basepoint },
        SliceEvent::Crossing { pos } => SliceEvent::Crossing { pos: pos + by },
        SliceEvent::Marking { pos } => SliceEvent::Marking { pos: pos + by },
        SliceEvent::BasePoint { pos, orientation } => SliceEvent::BasePoint { pos: pos + by, orientation },
        SliceEvent::Vertex { pos, left, right, right_potentials, left_basepoints } => {
            SliceEvent::Vertex { pos: pos + by, left, right, right_potentials, left_basepoints }
        }
    }
}

/// Resolves every vertex; `phi[k]` is the involution for the `k`-th vertex.
pub fn full_resolution(d: &FrontDiagram, phi: &[Involution]) -> Result<FrontDiagram, FrontError> {
    let sites = d.vertices()?;
    if sites.len() != phi.len() {
        return Err(FrontError::InvalidInvolution(format!(
            "{} vertices but {} involutions",
            sites.len(),
            phi.len()
        )));
    }
    let mut events = Vec::with_capacity(d.events.len());
    let mut next = 0;
    for (site, rho) in sites.iter().zip(phi) {
        events.extend_from_slice(&d.events[next..site.event]);
        let block = resolution_block(site.left, site.right, &site.mu, rho)?;
        events.extend(block.into_iter().map(|e| offset(e, site.pos)));
        next = site.event + 1;
    }
    events.extend_from_slice(&d.events[next..]);
    let out = FrontDiagram { events, ..d.clone() };
    out.validate()?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seven_five_split() {
        let rho = Involution::from_pairs(12, &[(1, 10), (2, 5), (3, 7), (4, 8), (6, 11), (9, 12)]).unwrap();
        let s = split_pairs(7, &rho);
        assert_eq!(s.left, vec![2, 3]);
        assert_eq!(s.through, vec![1, 4, 6]);
        assert_eq!(s.right, vec![9]);
    }

    #[test]
    fn half_twist_for_reversing_pairs() {
        let rho: Involution = "1-6,2-5,3-4".parse().unwrap();
        let block = resolution_block(3, 3, &[0; 6], &rho).unwrap();
        assert_eq!(block.len(), 3);
        assert!(block.iter().all(|e| matches!(e, SliceEvent::Crossing { .. })));
    }

    #[test]
    fn identity_pairing_gets_marked_twists() {
        let rho: Involution = "1-4,2-5,3-6".parse().unwrap();
        let block = resolution_block(3, 3, &[0; 6], &rho).unwrap();
        assert_eq!(block.len(), 6);
        assert!(block.iter().all(|e| matches!(e, SliceEvent::Marking { .. })));
    }

    #[test]
    fn source_vertex_opens_cusps() {
        let rho: Involution = "1-3,2-4".parse().unwrap();
        let block = resolution_block(0, 4, &[1, 1, 0, 0], &rho).unwrap();
        let cusps = block.iter().filter(|e| matches!(e, SliceEvent::LeftCusp { .. })).count();
        assert_eq!(cusps, 2);
        let d = FrontDiagram::new(vec![], block);
        assert_eq!(d.validate().unwrap().right_potentials(), &[1, 1, 0, 0]);
    }
}
