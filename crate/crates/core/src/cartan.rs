//! Quiver families, symmetrizable Cartan data, Q-polynomials and the local
//! degree constants used by every other module.
//!
//! Vertices are labelled `0..=e`. The two families share the middle chain of
//! single edges `i -> i+1` and the double edge `(e-1) => e`; they differ in the
//! orientation of the double edge at the left end (`0 => 1` for [`Family::Atwo`],
//! `1 => 0` for [`Family::Dtwo`]).

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// The two quiver families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    Atwo,
    Dtwo,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Atwo => write!(f, "Atwo"),
            Family::Dtwo => write!(f, "Dtwo"),
        }
    }
}

impl std::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "atwo" | "a" => Ok(Family::Atwo),
            "dtwo" | "d" => Ok(Family::Dtwo),
            other => Err(Error::InvalidQuiver(format!("unknown family {other:?}"))),
        }
    }
}

/// A directed edge `tail -> head`, single or double.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge {
    pub tail: usize,
    pub head: usize,
    pub double: bool,
}

/// A quiver of one of the two families with `e + 1` vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuiverType {
    pub family: Family,
    pub e: usize,
}

impl QuiverType {
    /// Validates `e >= 2`.
    pub fn new(family: Family, e: usize) -> Result<Self> {
        if e < 2 {
            return Err(Error::InvalidQuiver(format!("e must be at least 2, got {e}")));
        }
        Ok(QuiverType { family, e })
    }

    /// Number of vertices, `e + 1`.
    pub fn num_vertices(&self) -> usize {
        self.e + 1
    }

    /// The edge set in a fixed order: left double edge, middle chain, right double edge.
    pub fn edges(&self) -> Vec<Edge> {
        let e = self.e;
        let mut out = Vec::with_capacity(e);
        out.push(match self.family {
            Family::Atwo => Edge { tail: 0, head: 1, double: true },
            Family::Dtwo => Edge { tail: 1, head: 0, double: true },
        });
        for i in 1..e.saturating_sub(1) {
            out.push(Edge { tail: i, head: i + 1, double: false });
        }
        out.push(Edge { tail: e - 1, head: e, double: true });
        out
    }

    /// Edges with tail `i`.
    pub fn out_edges(&self, i: usize) -> Vec<Edge> {
        self.edges().into_iter().filter(|ed| ed.tail == i).collect()
    }

    /// The edge `i -> j` if present.
    pub fn edge(&self, i: usize, j: usize) -> Option<Edge> {
        self.edges().into_iter().find(|ed| ed.tail == i && ed.head == j)
    }

    /// True if `i => j` is a double edge.
    pub fn is_double(&self, i: usize, j: usize) -> bool {
        self.edge(i, j).is_some_and(|ed| ed.double)
    }

    /// True if `i` and `j` are joined by an edge in either direction.
    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.edge(i, j).is_some() || self.edge(j, i).is_some()
    }

    /// True if `i` is a sink all of whose incident edges are double.
    pub fn is_multisink(&self, i: usize) -> bool {
        let edges = self.edges();
        let is_tail = edges.iter().any(|ed| ed.tail == i);
        let incident: Vec<_> = edges.iter().filter(|ed| ed.head == i || ed.tail == i).collect();
        !is_tail && !incident.is_empty() && incident.iter().all(|ed| ed.double)
    }

    /// `a` in the residue period `2e + a`: 1 for Atwo, 2 for Dtwo.
    pub fn period_offset(&self) -> usize {
        match self.family {
            Family::Atwo => 1,
            Family::Dtwo => 2,
        }
    }

    /// The residue period `2e + a`.
    pub fn period(&self) -> usize {
        2 * self.e + self.period_offset()
    }
}

/// A string kind in a local picture: solid, ghost (with generating edge) or red.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum StrandKind {
    Solid { res: usize },
    /// Ghost of a solid `res`-string, generated by the edge `res -> tag`.
    Ghost { res: usize, tag: usize },
    Red { res: usize },
}

impl StrandKind {
    pub fn res(&self) -> usize {
        match *self {
            StrandKind::Solid { res } | StrandKind::Ghost { res, .. } | StrandKind::Red { res } => res,
        }
    }
}

/// Symmetrizer, generalized Cartan matrix and crossing constants of a quiver.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CartanData {
    pub qt: QuiverType,
    /// Symmetrizer `d_i`, positive and minimal.
    pub d: Vec<i64>,
    /// Generalized Cartan matrix `a_ij`.
    pub a: Vec<Vec<i64>>,
    /// Crossing constants `c_ij = -d_i a_ij`, keyed by edge `(i, j)`.
    pub crossing: BTreeMap<(usize, usize), i64>,
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Builds the Cartan data as the minimal positive solution of the
/// constraints `d_i = 2 d_j` for `i => j` and `d_i = d_j` for single edges.
pub fn build_cartan(qt: QuiverType) -> CartanData {
    let nv = qt.num_vertices();
    let edges = qt.edges();
    // Exponents of 2 relative to vertex 0; the quiver is a path so one sweep
    // from each side settles every vertex.
    let mut pow: Vec<Option<i64>> = vec![None; nv];
    pow[0] = Some(0);
    while pow.iter().any(|p| p.is_none()) {
        for ed in &edges {
            let step = if ed.double { 1 } else { 0 };
            match (pow[ed.tail], pow[ed.head]) {
                (Some(t), None) => pow[ed.head] = Some(t - step),
                (None, Some(h)) => pow[ed.tail] = Some(h + step),
                _ => {}
            }
        }
    }
    let min = pow.iter().map(|p| p.unwrap()).min().unwrap_or(0);
    let mut d: Vec<i64> = pow.iter().map(|p| 1i64 << (p.unwrap() - min)).collect();
    let g = d.iter().fold(0, |acc, &x| gcd(acc, x));
    for x in &mut d {
        *x /= g;
    }
    let mut a = vec![vec![0i64; nv]; nv];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut crossing = BTreeMap::new();
    for ed in &edges {
        a[ed.tail][ed.head] = -1;
        a[ed.head][ed.tail] = if ed.double { -2 } else { -1 };
        crossing.insert((ed.tail, ed.head), -d[ed.tail] * a[ed.tail][ed.head]);
    }
    CartanData { qt, d, a, crossing }
}

impl CartanData {
    pub fn new(qt: QuiverType) -> Self {
        build_cartan(qt)
    }

    /// Degree of one dot on a solid `i`-string.
    pub fn dot_degree(&self, i: usize) -> i64 {
        2 * self.d[i]
    }

    /// Degree of a crossing between two strings of the given kinds.
    pub fn crossing_degree(&self, x: StrandKind, y: StrandKind) -> i64 {
        use StrandKind::*;
        match (x, y) {
            (Solid { res: i }, Solid { res: j }) => {
                if i == j {
                    -2 * self.d[i]
                } else {
                    0
                }
            }
            (Ghost { res: i, tag }, Solid { res: j }) | (Solid { res: j }, Ghost { res: i, tag }) => {
                if tag == j {
                    self.crossing.get(&(i, j)).copied().unwrap_or(0)
                } else {
                    0
                }
            }
            (Solid { res: i }, Red { res: j }) | (Red { res: j }, Solid { res: i }) => {
                if i == j {
                    self.d[i]
                } else {
                    0
                }
            }
            _ => 0,
        }
    }
}

/// The local degree table of a quiver.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LocalDegrees {
    /// Solid dot on residue `i`.
    pub solid_dot: Vec<i64>,
    /// Ghost dots carry no degree.
    pub ghost_dot: i64,
    /// Crossing of two solid `i`-strings.
    pub solid_same: Vec<i64>,
    /// Ghost of an `i`-string tagged with `i -> j` crossing a solid `j`-string.
    pub ghost_solid: BTreeMap<(usize, usize), i64>,
    /// Solid `i`-string crossing a red `i`-string.
    pub solid_red: Vec<i64>,
}

/// Returns the local degree table; all unlisted crossings have degree 0.
pub fn local_degrees(cd: &CartanData) -> LocalDegrees {
    LocalDegrees {
        solid_dot: cd.d.iter().map(|d| 2 * d).collect(),
        ghost_dot: 0,
        solid_same: cd.d.iter().map(|d| -2 * d).collect(),
        ghost_solid: cd.crossing.clone(),
        solid_red: cd.d.clone(),
    }
}

/// Integer polynomial in `N` commuting variables, stored sparsely.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly<const N: usize> {
    terms: BTreeMap<[u32; N], i64>,
}

/// Bivariate polynomial in `u, v`.
pub type QPoly = Poly<2>;
/// Trivariate polynomial in `u, v, w`.
pub type QTriPoly = Poly<3>;

impl<const N: usize> Poly<N> {
    pub fn zero() -> Self {
        Poly { terms: BTreeMap::new() }
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(c, [0; N])
    }

    pub fn monomial(c: i64, exps: [u32; N]) -> Self {
        let mut p = Self::zero();
        p.add_term(exps, c);
        p
    }

    fn add_term(&mut self, exps: [u32; N], c: i64) {
        if c == 0 {
            return;
        }
        let entry = self.terms.entry(exps).or_insert(0);
        *entry += c;
        if *entry == 0 {
            self.terms.remove(&exps);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&[u32; N], &i64)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: [u32; N]) -> i64 {
        self.terms.get(&exps).copied().unwrap_or(0)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, *c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, -*c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let mut e = [0; N];
                for t in 0..N {
                    e[t] = e1[t] + e2[t];
                }
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    /// Weighted degrees of all monomials, sorted and deduplicated.
    pub fn weighted_degrees(&self, weights: [i64; N]) -> Vec<i64> {
        let mut out: Vec<i64> = self
            .terms
            .keys()
            .map(|e| (0..N).map(|t| weights[t] * e[t] as i64).sum())
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// The common weighted degree if the polynomial is homogeneous and nonzero.
    pub fn homogeneous_degree(&self, weights: [i64; N]) -> Option<i64> {
        match self.weighted_degrees(weights).as_slice() {
            [d] => Some(*d),
            _ => None,
        }
    }
}

impl<const N: usize> fmt::Display for Poly<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        const NAMES: [&str; 3] = ["u", "v", "w"];
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // Lowest total degree first; within a degree, positive terms first.
        let mut order: Vec<(&[u32; N], &i64)> = self.terms.iter().collect();
        order.sort_by_key(|(e, c)| (e.iter().sum::<u32>(), **c < 0, **e));
        let mut first = true;
        for (e, &c) in order {
            let mono: String = (0..N)
                .filter(|&t| e[t] > 0)
                .map(|t| if e[t] == 1 { NAMES[t].to_string() } else { format!("{}^{}", NAMES[t], e[t]) })
                .collect();
            let sign = if c < 0 { "-" } else if first { "" } else { "+" };
            let mag = c.abs();
            if mono.is_empty() {
                write!(f, "{sign}{mag}")?;
            } else if mag == 1 {
                write!(f, "{sign}{mono}")?;
            } else {
                write!(f, "{sign}{mag}{mono}")?;
            }
            first = false;
        }
        Ok(())
    }
}

/// The Q-polynomial `Q_ij(u, v)`, with `u` attached to `i` and `v` to `j`.
pub fn q_poly(qt: &QuiverType, i: usize, j: usize) -> QPoly {
    if i == j {
        return QPoly::zero();
    }
    let u = QPoly::monomial(1, [1, 0]);
    let v = QPoly::monomial(1, [0, 1]);
    if let Some(ed) = qt.edge(i, j) {
        if ed.double {
            u.sub(&QPoly::monomial(1, [0, 2]))
        } else {
            u.sub(&v)
        }
    } else if let Some(ed) = qt.edge(j, i) {
        if ed.double {
            v.sub(&QPoly::monomial(1, [2, 0]))
        } else {
            v.sub(&u)
        }
    } else {
        QPoly::constant(1)
    }
}

/// Exact quotient of a trivariate polynomial by `w - v`.
pub fn divide_by_w_minus_v(p: &QTriPoly) -> Result<QTriPoly> {
    // Group by the power of w; each coefficient lives in Z[u, v].
    let mut by_w: BTreeMap<u32, Poly<3>> = BTreeMap::new();
    for (e, &c) in p.terms() {
        by_w.entry(e[2])
            .or_insert_with(Poly::zero)
            .add_term([e[0], e[1], 0], c);
    }
    let top = match by_w.keys().next_back() {
        Some(&k) => k,
        None => return Ok(QTriPoly::zero()),
    };
    let v = QTriPoly::monomial(1, [0, 1, 0]);
    // p = (w - v) q, so q_{k-1} = c_k + v q_k from the top down; the
    // remainder c_0 + v q_0 must vanish.
    let mut quotient = QTriPoly::zero();
    let mut carry = QTriPoly::zero();
    for k in (1..=top).rev() {
        let ck = by_w.get(&k).cloned().unwrap_or_default();
        let qk1 = ck.add(&v.mul(&carry));
        for (e, &c) in qk1.terms() {
            quotient.add_term([e[0], e[1], k - 1], c);
        }
        carry = qk1;
    }
    let c0 = by_w.get(&0).cloned().unwrap_or_default();
    if !c0.add(&v.mul(&carry)).is_zero() {
        return Err(Error::InexactDivision);
    }
    Ok(quotient)
}

/// `Q_iji(u, v, w) = (Q_ij(u, v) - Q_ij(u, w)) / (w - v)` as an exact quotient.
pub fn q_iji(qt: &QuiverType, i: usize, j: usize) -> Result<QTriPoly> {
    if i == j {
        return Err(Error::Degenerate("q_iji needs i != j".into()));
    }
    let q = q_poly(qt, i, j);
    let mut with_v = QTriPoly::zero();
    let mut with_w = QTriPoly::zero();
    for (e, &c) in q.terms() {
        with_v.add_term([e[0], e[1], 0], c);
        with_w.add_term([e[0], 0, e[1]], c);
    }
    divide_by_w_minus_v(&with_v.sub(&with_w))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qt(f: Family, e: usize) -> QuiverType {
        QuiverType::new(f, e).unwrap()
    }

    #[test]
    fn symmetrizers() {
        assert_eq!(build_cartan(qt(Family::Dtwo, 2)).d, vec![1, 2, 1]);
        assert_eq!(build_cartan(qt(Family::Atwo, 2)).d, vec![4, 2, 1]);
        assert_eq!(build_cartan(qt(Family::Dtwo, 4)).d, vec![1, 2, 2, 2, 1]);
        assert_eq!(build_cartan(qt(Family::Atwo, 3)).d, vec![4, 2, 2, 1]);
    }

    #[test]
    fn rejects_small_e() {
        assert!(QuiverType::new(Family::Atwo, 1).is_err());
    }

    #[test]
    fn edges_for_e2_are_two_doubles() {
        for f in [Family::Atwo, Family::Dtwo] {
            let edges = qt(f, 2).edges();
            assert_eq!(edges.len(), 2);
            assert!(edges.iter().all(|e| e.double));
        }
    }

    #[test]
    fn multisinks() {
        assert!(qt(Family::Atwo, 2).is_multisink(2));
        assert!(qt(Family::Dtwo, 2).is_multisink(0));
        assert!(!qt(Family::Atwo, 2).is_multisink(0));
        assert!(!qt(Family::Dtwo, 3).is_multisink(1));
    }

    #[test]
    fn q_polys() {
        let d2 = qt(Family::Dtwo, 2);
        assert_eq!(q_poly(&d2, 1, 0).to_string(), "u-v^2");
        assert!(q_poly(&d2, 1, 1).is_zero());
        assert_eq!(q_poly(&qt(Family::Atwo, 3), 0, 3), QPoly::constant(1));
        assert_eq!(q_poly(&d2, 0, 1).to_string(), "v-u^2");
        let a4 = qt(Family::Atwo, 4);
        assert_eq!(q_poly(&a4, 1, 2).to_string(), "u-v");
        assert_eq!(q_poly(&a4, 2, 1).to_string(), "v-u");
    }

    #[test]
    fn q_iji_quotients() {
        let a4 = qt(Family::Atwo, 4);
        assert_eq!(q_iji(&a4, 1, 2).unwrap(), QTriPoly::constant(1));
        let d2 = qt(Family::Dtwo, 2);
        assert_eq!(q_iji(&d2, 1, 0).unwrap().to_string(), "w+v");
        assert!(q_iji(&a4, 0, 3).unwrap().is_zero());
        assert!(q_iji(&a4, 1, 1).is_err());
    }

    #[test]
    fn inexact_division_is_reported() {
        let p = QTriPoly::monomial(1, [0, 0, 1]);
        assert_eq!(divide_by_w_minus_v(&p), Err(Error::InexactDivision));
    }

    #[test]
    fn local_degree_examples() {
        let cd = build_cartan(qt(Family::Dtwo, 2));
        let ld = local_degrees(&cd);
        assert_eq!(ld.solid_dot[1], 4);
        assert_eq!(ld.solid_same[2], -2);
        assert_eq!(ld.ghost_dot, 0);
        let g = StrandKind::Ghost { res: 1, tag: 0 };
        assert_eq!(cd.crossing_degree(g, StrandKind::Solid { res: 0 }), 2);
        assert_eq!(cd.crossing_degree(g, StrandKind::Solid { res: 2 }), 0);
        assert_eq!(cd.crossing_degree(StrandKind::Solid { res: 2 }, StrandKind::Red { res: 2 }), 1);
    }
}
