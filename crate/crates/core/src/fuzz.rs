//! Seeded random diagrams for property tests.

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use crate::front::{FrontDiagram, SliceEvent};
use crate::rulings::enumerate_vertex_rulings;

/// Size limits for generated diagrams.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FuzzConfig {
    pub max_events: usize,
    pub max_strands: usize,
    pub max_border_pairs: usize,
    /// Only `(0, val)` vertices and base-pointed right cusps.
    pub normal_form: bool,
}

impl Default for FuzzConfig {
    fn default() -> Self {
        FuzzConfig { max_events: 8, max_strands: 6, max_border_pairs: 2, normal_form: false }
    }
}

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// Potentials of `2m` points paired so that each pair drops by one, which
/// guarantees at least one border ruling.
pub fn random_paired_potentials(rng: &mut StdRng, m: usize) -> Vec<i64> {
    let mut points: Vec<usize> = (0..2 * m).collect();
    points.shuffle(rng);
    let mut mu = vec![0; 2 * m];
    for pair in points.chunks(2) {
        let (a, b) = (pair[0].min(pair[1]), pair[0].max(pair[1]));
        let u = rng.gen_range(0..=1);
        mu[a] = u;
        mu[b] = u - 1;
    }
    mu
}

fn random_event(rng: &mut StdRng, mu: &[i64], cfg: &FuzzConfig) -> Option<SliceEvent> {
    let n = mu.len();
    match rng.gen_range(0..7) {
        0..=2 if n >= 2 => Some(SliceEvent::Crossing { pos: rng.gen_range(0..n - 1) }),
        3 if n + 2 <= cfg.max_strands => {
            Some(SliceEvent::LeftCusp { pos: rng.gen_range(0..=n), upper: rng.gen_range(0..=1) })
        }
        4 => {
            let cusps: Vec<usize> = (0..n.saturating_sub(1)).filter(|&k| mu[k] - mu[k + 1] == 1).collect();
            let pos = *cusps.choose(rng)?;
            Some(SliceEvent::RightCusp { pos, basepoint: cfg.normal_form || rng.gen_bool(0.5) })
        }
        5 if !cfg.normal_form && n >= 1 => {
            Some(SliceEvent::BasePoint { pos: rng.gen_range(0..n), orientation: if rng.gen_bool(0.5) { 1 } else { -1 } })
        }
        6 => random_vertex(rng, mu, cfg),
        _ => None,
    }
}

fn random_vertex(rng: &mut StdRng, mu: &[i64], cfg: &FuzzConfig) -> Option<SliceEvent> {
    let n = mu.len();
    let left = if cfg.normal_form { 0 } else { rng.gen_range(0..=n.min(3)) };
    let pos = rng.gen_range(0..=n - left);
    let room = cfg.max_strands + left - n;
    let candidates: Vec<usize> = (0..=room.min(4)).filter(|r| (left + r) % 2 == 0 && left + r >= 2).collect();
    let right = *candidates.choose(rng)?;
    if left == 0 {
        let potentials = random_paired_potentials(rng, right / 2);
        return Some(SliceEvent::Vertex { pos, left, right, right_potentials: potentials, left_basepoints: false });
    }
    let lmu = &mu[pos..pos + left];
    let lo = lmu.iter().min().copied().unwrap_or(0) - 1;
    let hi = lmu.iter().max().copied().unwrap_or(0) + 1;
    for _ in 0..20 {
        let potentials: Vec<i64> = (0..right).map(|_| rng.gen_range(lo..=hi)).collect();
        let mut all = lmu.to_vec();
        all.extend_from_slice(&potentials);
        if !enumerate_vertex_rulings(left, right, &all).is_empty() {
            return Some(SliceEvent::Vertex {
                pos,
                left,
                right,
                right_potentials: potentials,
                left_basepoints: rng.gen_bool(0.25),
            });
        }
    }
    None
}

/// Appends up to `count` random events to `d`, keeping it valid.
pub fn extend_randomly(rng: &mut StdRng, d: &mut FrontDiagram, count: usize, cfg: &FuzzConfig) {
    let mut mu = d.validate().expect("valid start").right_potentials().to_vec();
    let mut added = 0;
    let mut attempts = 0;
    while added < count && attempts < 50 * (count + 1) {
        attempts += 1;
        let Some(event) = random_event(rng, &mu, cfg) else { continue };
        d.events.push(event);
        match d.validate() {
            Ok(t) if t.right_arity() <= cfg.max_strands => {
                mu = t.right_potentials().to_vec();
                added += 1;
            }
            _ => {
                d.events.pop();
            }
        }
    }
}

/// A random diagram with the given left border.
pub fn random_diagram_from(rng: &mut StdRng, left: Vec<i64>, cfg: &FuzzConfig) -> FrontDiagram {
    let mut d = FrontDiagram::new(left, Vec::new());
    let count = rng.gen_range(1..=cfg.max_events);
    extend_randomly(rng, &mut d, count, cfg);
    d
}

/// A random diagram whose left border admits a ruling.
pub fn random_diagram(rng: &mut StdRng, cfg: &FuzzConfig) -> FrontDiagram {
    let m = rng.gen_range(0..=cfg.max_border_pairs.min(cfg.max_strands / 2));
    let left = random_paired_potentials(rng, m);
    random_diagram_from(rng, left, cfg)
}

/// Two diagrams that can be concatenated.
pub fn composable_pair(rng: &mut StdRng, cfg: &FuzzConfig) -> (FrontDiagram, FrontDiagram) {
    let d1 = random_diagram(rng, cfg);
    let middle = d1.validate().expect("generated diagrams are valid").right_potentials().to_vec();
    let d2 = random_diagram_from(rng, middle, cfg);
    (d1, d2)
}

/// A random diagram in normal form.
pub fn random_normal_form(rng: &mut StdRng, cfg: &FuzzConfig) -> FrontDiagram {
    random_diagram(rng, &FuzzConfig { normal_form: true, ..*cfg })
}

const SAMPLE_SOURCES: [&str; 4] = [
    "tangle trefoil { left 0 [] L 0 1 L 2 0 X 1 X 1 X 1 R 0 bp R 0 bp }",
    "tangle full_twist { left 0 [] L 0 1 L 1 1 L 2 1 X 0 X 1 X 0 X 1 X 0 X 1 R 2 bp R 1 bp R 0 bp }",
    "tangle slide_down { left 2 [1,0] V 1 0 2 [1,0] X 0 X 1 R 0 bp R 0 bp }",
    "tangle slide_up { left 2 [1,0] V 1 0 2 [1,0] X 2 X 1 R 2 bp R 0 bp }",
];

/// Hand-built diagrams with nonzero ruling polynomials: the six-valent
/// example, a trefoil, a full twist on three equal strands and a strand
/// sliding past a vertex from either side.
pub fn sample_diagrams() -> Vec<FrontDiagram> {
    let mut out = vec![crate::six_valent()];
    out.extend(SAMPLE_SOURCES.iter().map(|s| crate::dsl::parse(s).expect("bundled sample parses")));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generated_diagrams_are_valid_and_reproducible() {
        let cfg = FuzzConfig::default();
        for seed in 0..50 {
            let d = random_diagram(&mut rng(seed), &cfg);
            assert!(d.validate().is_ok());
            assert_eq!(d, random_diagram(&mut rng(seed), &cfg));
            assert!(d.events.len() <= cfg.max_events);
            let nf = random_normal_form(&mut rng(seed), &cfg);
            assert!(nf.is_normal_form());
        }
    }

    #[test]
    fn samples_are_valid() {
        for d in sample_diagrams() {
            assert!(d.validate().is_ok(), "{:?}", d.name);
        }
    }
}
