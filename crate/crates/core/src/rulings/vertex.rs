//! Half-edge combinatorics of a single vertex and of a border.
//!
//! Half-edges of a type `(l, r)` vertex are labelled `1..=n` (`n = l + r`):
//! the left ones top to bottom, then the right ones top to bottom. Functions
//! taking a label use that 1-based convention; potentials are passed as a
//! 0-based slice `mu[label - 1]`.

use crate::front::Involution;

/// Unit sector count `n(l, r, a, 1)`.
fn unit_count(l: usize, r: usize, a: usize) -> u64 {
    let n = l + r;
    if l * r != 0 {
        (a == l) as u64 + (a == n) as u64
    } else {
        2 * (a == n) as u64
    }
}

fn wrap(n: usize, a: i64) -> usize {
    (a - 1).rem_euclid(n as i64) as usize + 1
}

/// `n(l, r, a, i)`: sector crossings along `i` steps starting at label `a`
/// (taken mod `n`).
pub fn sector_count(l: usize, r: usize, a: i64, i: usize) -> u64 {
    let n = l + r;
    assert!(n > 0, "vertex has no half-edges");
    let start = wrap(n, a);
    let turns = (i / n) as u64;
    let partial: u64 = (0..i % n).map(|t| unit_count(l, r, wrap(n, (start + t) as i64))).sum();
    2 * turns + partial
}

/// `|v_{a,i}| = mu(a) - mu(a+i) + n(l, r, a, i) - 1`.
pub fn vertex_generator_degree(mu: &[i64], l: usize, r: usize, a: i64, i: usize) -> i64 {
    let n = l + r;
    assert_eq!(mu.len(), n, "one potential per half-edge");
    let a = wrap(n, a);
    let b = wrap(n, (a + i) as i64);
    mu[a - 1] - mu[b - 1] + sector_count(l, r, a as i64, i) as i64 - 1
}

/// Fixed-point-free involutions with `|v_{a,b-a}| = 0` for every pair `a < b`.
pub fn enumerate_vertex_rulings(l: usize, r: usize, mu: &[i64]) -> Vec<Involution> {
    let n = l + r;
    let mut out = Vec::new();
    if n % 2 == 1 {
        return out;
    }
    let mut partner = vec![usize::MAX; n];
    fn rec(l: usize, r: usize, mu: &[i64], partner: &mut Vec<usize>, out: &mut Vec<Involution>) {
        let n = l + r;
        let Some(a) = (0..n).find(|&k| partner[k] == usize::MAX) else {
            out.push(Involution::from_partners(partner.clone()).expect("built as an involution"));
            return;
        };
        for b in a + 1..n {
            if partner[b] == usize::MAX && vertex_generator_degree(mu, l, r, a as i64 + 1, b - a) == 0 {
                partner[a] = b;
                partner[b] = a;
                rec(l, r, mu, partner, out);
                partner[a] = usize::MAX;
                partner[b] = usize::MAX;
            }
        }
    }
    rec(l, r, mu, &mut partner, &mut out);
    out.sort();
    out
}

/// `I_v(a) = { i >= 1 : mu(a) - mu(a+i) + n(l, r, a, i) = 0 }`, i.e. the
/// steps with `|v_{a,i}| = -1`. Finite because `n` grows by 2 per turn.
pub fn vertex_index_set(mu: &[i64], l: usize, r: usize, a: usize) -> Vec<usize> {
    let n = l + r;
    let spread = (mu.iter().max().unwrap_or(&0) - mu.iter().min().unwrap_or(&0)) as usize;
    (1..=n * (spread + 2))
        .filter(|&i| vertex_generator_degree(mu, l, r, a as i64, i) == -1)
        .collect()
}

/// `A_v(rho)`: sum of `|A_rho(a)|` over upper endpoints plus `|I_v(a)|` over
/// lower endpoints, where `A_rho(a)` collects upper endpoints `b > a` with
/// `rho(b) < rho(a)` and `b - a` in `I_v(a)`.
pub fn a_v(rho: &Involution, mu: &[i64], l: usize, r: usize) -> u64 {
    let n = l + r;
    assert_eq!(rho.len(), n);
    let mut total = 0u64;
    for a in 0..n {
        let pa = rho.partner(a);
        let iv = vertex_index_set(mu, l, r, a + 1);
        if a < pa {
            total += (a + 1..n)
                .filter(|&b| b < rho.partner(b) && rho.partner(b) < pa && iv.contains(&(b - a)))
                .count() as u64;
        } else {
            total += iv.len() as u64;
        }
    }
    total
}

/// `A_b(rho)` for an involution on border points (fixed points allowed).
///
/// `I(i) = { j > i : mu(j) = mu(i) }`; a fixed point counts as
/// `rho(i) = infinity`.
pub fn a_b(rho: &Involution, mu: &[i64]) -> u64 {
    let n = rho.len();
    assert_eq!(mu.len(), n);
    let target = |i: usize| if rho.is_fixed(i) { usize::MAX } else { rho.partner(i) };
    let is_upper = |i: usize| !rho.is_fixed(i) && i < rho.partner(i);
    let mut total = 0u64;
    for i in 0..n {
        let same: Vec<usize> = (i + 1..n).filter(|&j| mu[j] == mu[i]).collect();
        if rho.is_fixed(i) || is_upper(i) {
            total += same.iter().filter(|&&j| is_upper(j) && target(j) < target(i)).count() as u64;
        } else {
            total += same.len() as u64;
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn figure_values_for_four_three() {
        assert_eq!(sector_count(4, 3, 2, 2), 0);
        assert_eq!(sector_count(4, 3, 6, 4), 1);
        assert_eq!(sector_count(4, 3, 7, 8), 3);
    }

    #[test]
    fn full_turn_is_two() {
        for (l, r) in [(0, 1), (1, 0), (2, 3), (4, 3), (0, 6), (5, 0)] {
            for a in 1..=(l + r) as i64 {
                assert_eq!(sector_count(l, r, a, l + r), 2);
            }
        }
    }

    #[test]
    fn degree_examples() {
        assert_eq!(vertex_generator_degree(&[0, 0], 0, 2, 1, 1), -1);
        assert_eq!(vertex_generator_degree(&[0; 6], 3, 3, 1, 5), 0);
        assert_eq!(vertex_generator_degree(&[3, -1, 2], 1, 2, 2, 3), 1);
    }

    #[test]
    fn six_valent_involutions() {
        let nr: Vec<String> = enumerate_vertex_rulings(3, 3, &[0; 6]).iter().map(|r| r.to_string()).collect();
        assert_eq!(nr, vec!["1-4,2-5,3-6", "1-4,2-6,3-5", "1-5,2-4,3-6", "1-5,2-6,3-4", "1-6,2-4,3-5", "1-6,2-5,3-4"]);
        assert!(enumerate_vertex_rulings(1, 2, &[0; 3]).is_empty());
    }

    #[test]
    fn border_index_examples() {
        let mu = [1, 1, 0, 0];
        assert_eq!(a_b(&"1-4,2-3".parse().unwrap(), &mu), 2);
        assert_eq!(a_b(&"1-3,2-4".parse().unwrap(), &mu), 1);
        assert_eq!(a_b(&"1-2".parse().unwrap(), &[1, 0]), 0);
        assert_eq!(a_b(&Involution::identity(4), &[0; 4]), 0);
    }
}
