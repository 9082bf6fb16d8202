//! Border and internal DGAs with explicit differential tables.
//!
//! Both algebras are free noncommutative algebras over the integers. An
//! element is a [`NcPoly`]: a map from words in generator indices to
//! coefficients, the empty word being the unit. The internal DGA has
//! infinitely many generators; it is cut off at a window wide enough for
//! every generator of degree at most one.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::dsl::ToJson;
use crate::rulings::vertex_generator_degree;

/// A word in generator indices.
pub type Word = Vec<usize>;

/// A noncommutative polynomial with integer coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NcPoly {
    terms: BTreeMap<Word, i64>,
}

impl NcPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn unit() -> Self {
        Self::term(Vec::new(), 1)
    }

    pub fn generator(g: usize) -> Self {
        Self::term(vec![g], 1)
    }

    pub fn term(word: Word, c: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(word, c);
        p
    }

    pub fn add_term(&mut self, word: Word, c: i64) {
        if c == 0 {
            return;
        }
        let slot = self.terms.entry(word.clone()).or_insert(0);
        *slot += c;
        if *slot == 0 {
            self.terms.remove(&word);
        }
    }

    pub fn add(&mut self, other: &NcPoly, scale: i64) {
        for (w, c) in &other.terms {
            self.add_term(w.clone(), c * scale);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, i64)> {
        self.terms.iter().map(|(w, c)| (w, *c))
    }

    /// Coefficient of the empty word.
    pub fn constant(&self) -> i64 {
        self.terms.get(&Vec::new()).copied().unwrap_or(0)
    }

    /// `prefix · self · suffix` scaled by `c`, added into `out`.
    fn sandwich_into(&self, prefix: &[usize], suffix: &[usize], c: i64, out: &mut NcPoly) {
        for (w, k) in &self.terms {
            let mut word = prefix.to_vec();
            word.extend_from_slice(w);
            word.extend_from_slice(suffix);
            out.add_term(word, c * k);
        }
    }

    /// Keeps only the words whose letters all satisfy `keep`.
    pub fn restrict(&self, keep: impl Fn(usize) -> bool) -> NcPoly {
        NcPoly {
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.iter().all(|&g| keep(g)))
                .map(|(w, c)| (w.clone(), *c))
                .collect(),
        }
    }

    fn render(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (k, (w, c)) in self.terms.iter().enumerate() {
            let body = if w.is_empty() {
                "1".to_string()
            } else {
                w.iter().map(|&g| names[g].as_str()).collect::<Vec<_>>().join(" ")
            };
            let (sign, abs) = if *c < 0 { ("-", -c) } else { ("+", *c) };
            if k == 0 {
                if *c < 0 {
                    s.push('-');
                }
            } else {
                s += &format!(" {} ", sign);
            }
            if abs != 1 {
                s += &format!("{} ", abs);
            }
            s += &body;
        }
        s
    }
}

/// The Koszul sign `(-1)^{deg - 1}` attached to the left factor of every
/// quadratic term.
fn koszul(deg: i64) -> i64 {
    if (deg - 1).rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// A generator with its degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub degree: i64,
}

/// A finitely generated free DGA with a differential table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dga {
    pub generators: Vec<Generator>,
    pub differential: Vec<NcPoly>,
}

impl Dga {
    pub fn degree(&self, g: usize) -> i64 {
        self.generators[g].degree
    }

    pub fn word_degree(&self, w: &[usize]) -> i64 {
        w.iter().map(|&g| self.degree(g)).sum()
    }

    /// Extends the differential to `p` by the graded Leibniz rule.
    pub fn apply(&self, p: &NcPoly) -> NcPoly {
        let mut out = NcPoly::zero();
        for (w, c) in p.terms() {
            let mut sign = 1;
            for (k, &g) in w.iter().enumerate() {
                self.differential[g].sandwich_into(&w[..k], &w[k + 1..], c * sign, &mut out);
                if self.degree(g).rem_euclid(2) == 1 {
                    sign = -sign;
                }
            }
        }
        out
    }

    /// Generators whose `∂²` is nonzero.
    pub fn d_squared_failures(&self) -> Vec<usize> {
        (0..self.generators.len())
            .filter(|&g| !self.apply(&self.differential[g]).is_zero())
            .collect()
    }

    /// Generators with a differential term of the wrong degree.
    pub fn degree_failures(&self) -> Vec<usize> {
        (0..self.generators.len())
            .filter(|&g| self.differential[g].terms().any(|(w, _)| self.word_degree(w) != self.degree(g) - 1))
            .collect()
    }

    pub fn generators_of_degree(&self, degree: i64) -> Vec<usize> {
        (0..self.generators.len()).filter(|&g| self.degree(g) == degree).collect()
    }

    pub fn render(&self, p: &NcPoly) -> String {
        let names: Vec<String> = self.generators.iter().map(|g| g.name.clone()).collect();
        p.render(&names)
    }
}

impl ToJson for Dga {
    fn to_json(&self) -> Value {
        Value::Array(
            self.generators
                .iter()
                .zip(&self.differential)
                .map(|(g, d)| json!({"name": g.name, "degree": g.degree, "differential": self.render(d)}))
                .collect(),
        )
    }
}

/// `A_n(μ)`: generators `k_{ab}`, `a < b`, of degree `μ(a) - μ(b) - 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BorderDga {
    pub n: usize,
    pub mu: Vec<i64>,
    pub dga: Dga,
    index: BTreeMap<(usize, usize), usize>,
}

impl BorderDga {
    /// Index of `k_{ab}` (1-based `a < b`).
    pub fn generator(&self, a: usize, b: usize) -> Option<usize> {
        self.index.get(&(a, b)).copied()
    }
}

pub fn build_border_dga(mu: &[i64]) -> BorderDga {
    let n = mu.len();
    let mut index = BTreeMap::new();
    let mut generators = Vec::new();
    for a in 1..=n {
        for b in a + 1..=n {
            index.insert((a, b), generators.len());
            generators.push(Generator { name: format!("k{},{}", a, b), degree: mu[a - 1] - mu[b - 1] - 1 });
        }
    }
    let differential = index
        .keys()
        .map(|&(a, b)| {
            let mut p = NcPoly::zero();
            for c in a + 1..b {
                let (ac, cb) = (index[&(a, c)], index[&(c, b)]);
                p.add_term(vec![ac, cb], koszul(generators[ac].degree));
            }
            p
        })
        .collect();
    BorderDga { n, mu: mu.to_vec(), dga: Dga { generators, differential }, index }
}

impl ToJson for BorderDga {
    fn to_json(&self) -> Value {
        json!({"n": self.n, "mu": self.mu, "generators": self.dga.to_json()})
    }
}

/// `I_{(ℓ,r)}(μ)` truncated to `v_{a,i}` with `i <= window`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InternalDga {
    pub left: usize,
    pub right: usize,
    pub mu: Vec<i64>,
    /// Least `N` with `|v_{a,i}| > 1` for every `a` and every `i > N`.
    pub bound: usize,
    /// Largest retained `i`, equal to `bound + n`.
    pub window: usize,
    pub dga: Dga,
}

impl InternalDga {
    pub fn valency(&self) -> usize {
        self.left + self.right
    }

    /// Index of `v_{a,i}` (1-based `a`), if inside the window.
    pub fn generator(&self, a: usize, i: usize) -> Option<usize> {
        let n = self.valency();
        (a >= 1 && a <= n && i >= 1 && i <= self.window).then(|| (i - 1) * n + (a - 1))
    }

    /// `(a, i)` of a generator index.
    pub fn label(&self, g: usize) -> (usize, usize) {
        let n = self.valency();
        (g % n + 1, g / n + 1)
    }
}

/// Least `N` past which every generator has degree above one. The degree of
/// `v_{a,i+n}` exceeds that of `v_{a,i}` by two, so one full turn with all
/// degrees above one settles it.
fn truncation_bound(l: usize, r: usize, mu: &[i64]) -> usize {
    let n = l + r;
    let high = |i: usize| (1..=n).all(|a| vertex_generator_degree(mu, l, r, a as i64, i) > 1);
    let mut start = 1;
    loop {
        if (start..start + n).all(high) {
            return start - 1;
        }
        start += 1;
    }
}

pub fn build_internal_dga(l: usize, r: usize, mu: &[i64]) -> InternalDga {
    let n = l + r;
    assert!(n >= 1, "a vertex needs a half-edge");
    assert_eq!(mu.len(), n, "one potential per half-edge");
    let bound = truncation_bound(l, r, mu);
    let window = bound + n;
    let id = |a: usize, i: usize| (i - 1) * n + (a - 1);
    let wrap = |a: usize| (a - 1) % n + 1;
    let mut generators = Vec::with_capacity(n * window);
    for i in 1..=window {
        for a in 1..=n {
            generators.push(Generator {
                name: format!("v{},{}", a, i),
                degree: vertex_generator_degree(mu, l, r, a as i64, i),
            });
        }
    }
    let mut differential = Vec::with_capacity(generators.len());
    for i in 1..=window {
        for a in 1..=n {
            let mut p = NcPoly::zero();
            if i == n {
                p.add_term(Vec::new(), 1);
            }
            for i1 in 1..i {
                let x = id(a, i1);
                let y = id(wrap(a + i1), i - i1);
                p.add_term(vec![x, y], koszul(generators[x].degree));
            }
            differential.push(p);
        }
    }
    InternalDga { left: l, right: r, mu: mu.to_vec(), bound, window, dga: Dga { generators, differential } }
}

impl ToJson for InternalDga {
    fn to_json(&self) -> Value {
        json!({
            "type": [self.left, self.right],
            "mu": self.mu,
            "bound": self.bound,
            "window": self.window,
            "generators": self.dga.to_json(),
        })
    }
}

/// Potentials `μ'` turning a type `(ℓ, r)` vertex into type `(0, n)`:
/// left half-edges are raised by one.
pub fn normalized_potentials(l: usize, mu: &[i64]) -> Vec<i64> {
    mu.iter().enumerate().map(|(a, &m)| if a < l { m + 1 } else { m }).collect()
}

/// `∂g` for every generator `g` of the given degree.
pub fn differential_in_degree(dga: &Dga, degree: i64) -> BTreeMap<usize, NcPoly> {
    dga.generators_of_degree(degree).into_iter().map(|g| (g, dga.differential[g].clone())).collect()
}

/// The equations `ε(∂g) = 0` for degree-one `g`, with `ε` supported on degree
/// zero: each differential keeps only words in degree-zero generators.
pub fn augmentation_equations(dga: &Dga) -> BTreeMap<usize, NcPoly> {
    differential_in_degree(dga, 1)
        .into_iter()
        .map(|(g, p)| (g, p.restrict(|x| dga.degree(x) == 0)))
        .collect()
}

/// Checks that `k_{ab} ↦ v_{a,b-a}` commutes with the differentials of
/// `A_n(μ)` and `I_n(μ)`. Returns the generators where it fails.
pub fn inclusion_failures(border: &BorderDga, internal: &InternalDga) -> Vec<(usize, usize)> {
    assert_eq!((internal.left, internal.right), (0, border.n));
    let map = |g: usize| {
        let (a, b) = border.index.iter().find(|(_, &v)| v == g).map(|(k, _)| *k).expect("known generator");
        internal.generator(a, b - a).expect("inside the window")
    };
    let image = |p: &NcPoly| {
        let mut out = NcPoly::zero();
        for (w, c) in p.terms() {
            out.add_term(w.iter().map(|&g| map(g)).collect(), c);
        }
        out
    };
    border
        .index
        .iter()
        .filter(|(_, &g)| {
            let lhs = image(&border.dga.differential[g]);
            let rhs = internal.dga.differential[map(g)].clone();
            lhs != rhs
                || border.dga.degree(g) != internal.dga.degree(map(g))
        })
        .map(|(k, _)| *k)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_border_point_has_no_generators() {
        assert!(build_border_dga(&[0]).dga.generators.is_empty());
    }

    #[test]
    fn three_point_border_sign() {
        let b = build_border_dga(&[2, 1, 0]);
        let k13 = b.generator(1, 3).unwrap();
        let (k12, k23) = (b.generator(1, 2).unwrap(), b.generator(2, 3).unwrap());
        assert_eq!(b.dga.degree(k12), 0);
        assert_eq!(b.dga.differential[k13], NcPoly::term(vec![k12, k23], -1));
    }

    #[test]
    fn two_valent_degrees() {
        let v = build_internal_dga(0, 2, &[0, 1]);
        let deg = |a, i| v.dga.degree(v.generator(a, i).unwrap());
        assert_eq!((deg(1, 1), deg(2, 1), deg(1, 2), deg(2, 2)), (-2, 2, 1, 1));
        assert_eq!(v.dga.differential[v.generator(1, 2).unwrap()].constant(), 1);
        let w = build_internal_dga(0, 2, &[1, 0]);
        let deg = |a, i| w.dga.degree(w.generator(a, i).unwrap());
        assert_eq!((deg(1, 1), deg(2, 1), deg(1, 2), deg(2, 2)), (0, 0, 1, 1));
    }

    #[test]
    fn six_valent_degree_zero_count() {
        let v = build_internal_dga(3, 3, &[0; 6]);
        assert_eq!(v.dga.generators_of_degree(0).len(), 18);
        assert!(v.dga.d_squared_failures().is_empty());
    }
}
