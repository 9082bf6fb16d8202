use std::fmt;
use std::str::FromStr;

use super::FrontError;

/// An involution on `{0..n}`; `partner[i] == i` marks a fixed point.
///
/// Displayed and parsed 1-based as `"1-4,2-3"`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Involution {
    partner: Vec<usize>,
}

/// A fixed-point-free involution on border points.
pub type BorderRuling = Involution;

impl Involution {
    pub fn identity(n: usize) -> Self {
        Involution { partner: (0..n).collect() }
    }

    /// From 0-based partners; checks the involution property.
    pub fn from_partners(partner: Vec<usize>) -> Result<Self, FrontError> {
        let n = partner.len();
        for (i, &j) in partner.iter().enumerate() {
            if j >= n || partner[j] != i {
                return Err(FrontError::InvalidInvolution(format!("{:?} is not an involution", partner)));
            }
        }
        Ok(Involution { partner })
    }

    /// From 1-based pairs `(a, b)`; unlisted points are fixed.
    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self, FrontError> {
        let mut partner: Vec<usize> = (0..n).collect();
        for &(a, b) in pairs {
            if a == 0 || b == 0 || a > n || b > n || a == b {
                return Err(FrontError::InvalidInvolution(format!("pair {}-{} out of range 1..{}", a, b, n)));
            }
            let (a, b) = (a - 1, b - 1);
            if partner[a] != a || partner[b] != b {
                return Err(FrontError::InvalidInvolution(format!("point repeated in pair {}-{}", a + 1, b + 1)));
            }
            partner[a] = b;
            partner[b] = a;
        }
        Ok(Involution { partner })
    }

    /// Parses `"1-4,2-3"` (whitespace-insensitive) against arity `n` and
    /// requires a fixed-point-free result.
    pub fn parse_border(s: &str, n: usize) -> Result<Self, FrontError> {
        let inv: Involution = s.parse()?;
        let inv = Involution::from_pairs(n, &inv.pairs())?;
        if !inv.is_fixed_point_free() {
            return Err(FrontError::InvalidInvolution(format!("'{}' leaves points of 1..{} unpaired", s, n)));
        }
        Ok(inv)
    }

    pub fn len(&self) -> usize {
        self.partner.len()
    }

    pub fn is_empty(&self) -> bool {
        self.partner.is_empty()
    }

    pub fn partner(&self, i: usize) -> usize {
        self.partner[i]
    }

    pub fn partners(&self) -> &[usize] {
        &self.partner
    }

    pub fn is_fixed(&self, i: usize) -> bool {
        self.partner[i] == i
    }

    pub fn is_fixed_point_free(&self) -> bool {
        (0..self.len()).all(|i| !self.is_fixed(i))
    }

    /// 1-based pairs `(a, b)` with `a < b`, sorted.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .filter(|&i| self.partner[i] > i)
            .map(|i| (i + 1, self.partner[i] + 1))
            .collect()
    }
}

impl fmt::Display for Involution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.pairs().iter().map(|(a, b)| format!("{}-{}", a, b)).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for Involution {
    type Err = FrontError;

    /// Parses pairs only; the arity is the largest index mentioned.
    fn from_str(s: &str) -> Result<Self, FrontError> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || FrontError::InvalidInvolution(format!("cannot parse '{}' as pairs a-b,c-d", s));
        let mut pairs = Vec::new();
        if !compact.is_empty() {
            for part in compact.split(',') {
                let (a, b) = part.split_once('-').ok_or_else(bad)?;
                let a: usize = a.parse().map_err(|_| bad())?;
                let b: usize = b.parse().map_err(|_| bad())?;
                pairs.push((a.min(b), a.max(b)));
            }
        }
        let n = pairs.iter().map(|p| p.1).max().unwrap_or(0);
        Involution::from_pairs(n, &pairs)
    }
}

/// All involutions whose pairs `a < b` satisfy `mu(a) - mu(b) = 1`.
///
/// With `fixed_points_allowed` this is GNR, otherwise NR. Sorted.
pub fn enumerate_border_rulings(n: usize, mu: &[i64], fixed_points_allowed: bool) -> Vec<Involution> {
    assert_eq!(mu.len(), n, "potential list must have length n");
    let mut out = Vec::new();
    let mut partner = vec![usize::MAX; n];
    fn rec(i: usize, mu: &[i64], fixed: bool, partner: &mut Vec<usize>, out: &mut Vec<Involution>) {
        let n = mu.len();
        let Some(i) = (i..n).find(|&k| partner[k] == usize::MAX) else {
            out.push(Involution { partner: partner.clone() });
            return;
        };
        if fixed {
            partner[i] = i;
            rec(i + 1, mu, fixed, partner, out);
            partner[i] = usize::MAX;
        }
        for j in i + 1..n {
            if partner[j] == usize::MAX && mu[i] - mu[j] == 1 {
                partner[i] = j;
                partner[j] = i;
                rec(i + 1, mu, fixed, partner, out);
                partner[i] = usize::MAX;
                partner[j] = usize::MAX;
            }
        }
    }
    rec(0, mu, fixed_points_allowed, &mut partner, &mut out);
    out.sort();
    out
}
