//! Residues, contents, the affine charge and exact string coordinates.
//!
//! Coordinates are formal expressions `a + b ε + c ε²` with rational
//! coefficients, ordered lexicographically. This models an infinitesimal
//! `0 < ε² ≪ ε ≪ 1` without ever choosing a numeric ε.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::cartan::{build_cartan, CartanData, Family, QuiverType};
use crate::partitions::{enumerate_parts, MultiPartition, NodeInfo};
use crate::{Error, Result};

pub type Rat = Ratio<i64>;

/// An exact coordinate `a + b ε + c2 ε²`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct InfCoord {
    pub a: Rat,
    pub b: Rat,
    pub c2: Rat,
}

impl InfCoord {
    pub fn new(a: Rat, b: Rat, c2: Rat) -> Self {
        InfCoord { a, b, c2 }
    }

    pub fn from_int(a: i64) -> Self {
        InfCoord::new(Rat::from_integer(a), Rat::zero(), Rat::zero())
    }

    pub fn zero() -> Self {
        InfCoord::from_int(0)
    }

    /// The formal infinitesimal ε.
    pub fn eps() -> Self {
        InfCoord::new(Rat::zero(), Rat::from_integer(1), Rat::zero())
    }

    /// The formal infinitesimal ε².
    pub fn eps2() -> Self {
        InfCoord::new(Rat::zero(), Rat::zero(), Rat::from_integer(1))
    }

    /// Numeric value at a chosen ε, for display only.
    pub fn to_f64(&self, eps: f64) -> f64 {
        let f = |r: &Rat| r.to_f64().unwrap_or(f64::NAN);
        f(&self.a) + f(&self.b) * eps + f(&self.c2) * eps * eps
    }
}

impl Ord for InfCoord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.a
            .cmp(&other.a)
            .then_with(|| self.b.cmp(&other.b))
            .then_with(|| self.c2.cmp(&other.c2))
    }
}

impl PartialOrd for InfCoord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for InfCoord {
    type Output = InfCoord;
    fn add(self, o: InfCoord) -> InfCoord {
        InfCoord::new(self.a + o.a, self.b + o.b, self.c2 + o.c2)
    }
}

impl Sub for InfCoord {
    type Output = InfCoord;
    fn sub(self, o: InfCoord) -> InfCoord {
        InfCoord::new(self.a - o.a, self.b - o.b, self.c2 - o.c2)
    }
}

impl Neg for InfCoord {
    type Output = InfCoord;
    fn neg(self) -> InfCoord {
        InfCoord::new(-self.a, -self.b, -self.c2)
    }
}

fn fmt_rat(r: &Rat) -> String {
    if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn parse_rat(s: &str) -> Result<Rat> {
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        None => Ok(Rat::from_integer(s.trim().parse().map_err(|_| bad())?)),
        Some((n, d)) => {
            let n: i64 = n.trim().parse().map_err(|_| bad())?;
            let d: i64 = d.trim().parse().map_err(|_| bad())?;
            if d == 0 {
                return Err(bad());
            }
            Ok(Rat::new(n, d))
        }
    }
}

impl fmt::Display for InfCoord {
    /// Symbolic form such as `-1/19-2ε` or `1+ε-ε²`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        if !self.a.is_zero() || (self.b.is_zero() && self.c2.is_zero()) {
            out.push_str(&fmt_rat(&self.a));
        }
        for (coef, sym) in [(&self.b, "ε"), (&self.c2, "ε²")] {
            if coef.is_zero() {
                continue;
            }
            let neg = *coef < Rat::zero();
            let mag = if neg { -*coef } else { *coef };
            if neg {
                out.push('-');
            } else if !out.is_empty() {
                out.push('+');
            }
            if mag != Rat::from_integer(1) {
                out.push_str(&fmt_rat(&mag));
            }
            out.push_str(sym);
        }
        write!(f, "{out}")
    }
}

impl Serialize for InfCoord {
    /// Serialized as `["a","b","c2"]` with exact rational strings.
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [fmt_rat(&self.a), fmt_rat(&self.b), fmt_rat(&self.c2)].serialize(s)
    }
}

impl<'de> Deserialize<'de> for InfCoord {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Part {
            Int(i64),
            Str(String),
        }
        let parts: Vec<Part> = Vec::deserialize(d)?;
        if parts.len() != 3 {
            return Err(serde::de::Error::custom("coordinate needs three entries"));
        }
        let mut vals = [Rat::zero(); 3];
        for (slot, p) in vals.iter_mut().zip(parts) {
            *slot = match p {
                Part::Int(i) => Rat::from_integer(i),
                Part::Str(s) => parse_rat(&s).map_err(serde::de::Error::custom)?,
            };
        }
        Ok(InfCoord::new(vals[0], vals[1], vals[2]))
    }
}

/// The reflected walk `re(k)` of period `2e + a`.
pub fn re(qt: &QuiverType, k: i64) -> usize {
    let period = qt.period() as i64;
    let m = k.rem_euclid(period) as usize;
    if m <= qt.e {
        m
    } else {
        2 * qt.e + 1 - m
    }
}

/// Residue of a node on diagonal `diag` in a component with red label `rho`.
///
/// The walk starts at `rho`, except that a red label `e` starts at `e + 1`.
pub fn bounce_residue(qt: &QuiverType, rho: usize, diag: i64) -> usize {
    let start = if rho == qt.e { qt.e as i64 + 1 } else { rho as i64 };
    re(qt, diag + start)
}

/// The content `co^m(r)` of residue `r` in a component with red label `rho`.
pub fn content(qt: &QuiverType, rho: usize, r: usize) -> i64 {
    let (rho, r) = (rho as i64, r as i64);
    if qt.family == Family::Dtwo {
        if rho != 0 && r == 0 {
            return 2 - rho;
        }
        if rho == 0 && r != 0 {
            return r - 2;
        }
    }
    r - rho
}

/// The full parameter set: quiver, size, charge and red labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Context {
    pub qt: QuiverType,
    pub cd: CartanData,
    pub n: usize,
    pub kappa: Vec<i64>,
    pub rho: Vec<usize>,
}

impl Context {
    /// Validates `κ` strictly increasing, `ρ` in range and equal levels.
    pub fn new(qt: QuiverType, n: usize, kappa: Vec<i64>, rho: Vec<usize>) -> Result<Self> {
        if rho.is_empty() {
            return Err(Error::InvalidConfig("level must be at least 1".into()));
        }
        if kappa.len() != rho.len() {
            return Err(Error::InvalidConfig(format!(
                "kappa has {} entries but rho has {}",
                kappa.len(),
                rho.len()
            )));
        }
        if kappa.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidConfig(format!("kappa {kappa:?} is not strictly increasing")));
        }
        if let Some(r) = rho.iter().find(|&&r| r > qt.e) {
            return Err(Error::InvalidConfig(format!("rho entry {r} exceeds e = {}", qt.e)));
        }
        Ok(Context { qt, cd: build_cartan(qt), n, kappa, rho })
    }

    /// Level one with `κ = (0)`.
    pub fn level_one(family: Family, e: usize, n: usize, rho: usize) -> Result<Self> {
        Context::new(QuiverType::new(family, e)?, n, vec![0], vec![rho])
    }

    /// The same parameters at a different size.
    pub fn with_n(&self, n: usize) -> Context {
        Context { n, ..self.clone() }
    }

    /// The level `ℓ`.
    pub fn level(&self) -> usize {
        self.rho.len()
    }

    /// `ĥℓ = ℓ + n(e+1)`, the number of red and affine red strings.
    pub fn hat_ell(&self) -> usize {
        self.level() + self.n * (self.qt.e + 1)
    }

    /// `ρ̂_m` for `1 <= m <= ĥℓ`.
    pub fn rho_hat(&self, m: usize) -> usize {
        let l = self.level();
        if m <= l {
            self.rho[m - 1]
        } else {
            ((m - l - 1) / self.n.max(1)) % (self.qt.e + 1)
        }
    }

    /// `κ̂_m` for `1 <= m <= ĥℓ`.
    pub fn kappa_hat(&self, m: usize) -> i64 {
        let l = self.level();
        if m <= l {
            self.kappa[m - 1]
        } else {
            self.kappa[l - 1] + 2 * self.n as i64 * (m - l) as i64
        }
    }

    /// True if component `m` holds a shifted partition.
    pub fn is_shifted(&self, m: usize) -> bool {
        self.qt.is_multisink(self.rho_hat(m))
    }

    /// The affine charge `(κ̂_m, ρ̂_m)` for all `ĥℓ` components.
    pub fn affine_charge(&self) -> AffineCharge {
        let h = self.hat_ell();
        AffineCharge {
            level: self.level(),
            positions: (1..=h).map(|m| self.kappa_hat(m)).collect(),
            residues: (1..=h).map(|m| self.rho_hat(m)).collect(),
        }
    }

    /// Red strings; with `affine` the affine reds follow the genuine ones.
    pub fn reds(&self, affine: bool) -> Vec<(InfCoord, usize)> {
        let upto = if affine { self.hat_ell() } else { self.level() };
        (1..=upto).map(|m| (InfCoord::from_int(self.kappa_hat(m)), self.rho_hat(m))).collect()
    }

    /// Coordinate with integer part `κ̂_m - m/ĥℓ + offset` and ε part `sign·k`.
    fn base_coord(&self, m: usize, offset: i64, eps_k: i64) -> InfCoord {
        let h = self.hat_ell() as i64;
        let a = Rat::from_integer(self.kappa_hat(m)) - Rat::new(m as i64, h) + Rat::from_integer(offset);
        InfCoord::new(a, Rat::from_integer(eps_k), Rat::zero())
    }

    /// `hcoord` of a node given its reading data.
    pub fn coord_of(&self, nd: &NodeInfo) -> InfCoord {
        let co = content(&self.qt, self.rho_hat(nd.m), nd.res);
        self.base_coord(nd.m, co, -(nd.k as i64))
    }

    /// `hcoorda` of a node given its reading data.
    ///
    /// The integer offset is `re(diag)` of the unshifted walk; for `ρ_m = 0`
    /// this is the node residue.
    pub fn coorda_of(&self, nd: &NodeInfo) -> InfCoord {
        let offset = re(&self.qt, nd.diag) as i64;
        self.base_coord(nd.m, offset, nd.k as i64)
    }
}

/// Positions and labels of the genuine and affine red strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AffineCharge {
    pub level: usize,
    pub positions: Vec<i64>,
    pub residues: Vec<usize>,
}

/// `hcoord` of the node `(m, r, c)` of `lam`.
pub fn node_coord(ctx: &Context, lam: &MultiPartition, node: (usize, usize, usize)) -> Result<InfCoord> {
    let nd = lam.node_info(ctx, node)?;
    Ok(ctx.coord_of(&nd))
}

/// `hcoorda`, the type A positioning function, of the node `(m, r, c)`.
pub fn type_a_coord(ctx: &Context, lam: &MultiPartition, node: (usize, usize, usize)) -> Result<InfCoord> {
    let nd = lam.node_info(ctx, node)?;
    Ok(ctx.coorda_of(&nd))
}

/// The maximum of `hcoord` over all nodes of all finite multipartitions of
/// size `ctx.n`; `None` stands for `-∞` when `n = 0`.
pub fn max_finite_coord(ctx: &Context) -> Option<InfCoord> {
    enumerate_parts(ctx)
        .iter()
        .flat_map(|lam| lam.reading_order(ctx).into_iter().map(|nd| ctx.coord_of(&nd)))
        .max()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qt(f: Family, e: usize) -> QuiverType {
        QuiverType::new(f, e).unwrap()
    }

    fn row(f: Family, e: usize, rho: usize, len: i64) -> Vec<usize> {
        let q = qt(f, e);
        (0..len).map(|d| bounce_residue(&q, rho, d)).collect()
    }

    #[test]
    fn residue_rows() {
        assert_eq!(row(Family::Dtwo, 3, 3, 10), vec![3, 2, 1, 0, 0, 1, 2, 3, 3, 2]);
        assert_eq!(row(Family::Atwo, 3, 1, 10), vec![1, 2, 3, 3, 2, 1, 0, 1, 2, 3]);
        assert_eq!(row(Family::Dtwo, 3, 0, 9), vec![0, 1, 2, 3, 3, 2, 1, 0, 0]);
    }

    #[test]
    fn contents() {
        let d = qt(Family::Dtwo, 2);
        assert_eq!(content(&d, 0, 1), -1);
        assert_eq!(content(&d, 2, 0), 0);
        assert_eq!(content(&qt(Family::Atwo, 2), 2, 0), -2);
    }

    #[test]
    fn ordering_is_lexicographic() {
        let one = InfCoord::from_int(1);
        assert!(one - InfCoord::eps() < one);
        assert!(one < one + InfCoord::eps2());
        assert!(one + InfCoord::eps2() < one + InfCoord::eps());
        assert!(InfCoord::eps() < InfCoord::from_int(1) - InfCoord::eps() * 1000);
    }

    impl std::ops::Mul<i64> for InfCoord {
        type Output = InfCoord;
        fn mul(self, k: i64) -> InfCoord {
            let k = Rat::from_integer(k);
            InfCoord::new(self.a * k, self.b * k, self.c2 * k)
        }
    }

    #[test]
    fn display_forms() {
        let x = InfCoord::new(Rat::new(-1, 19), Rat::from_integer(-2), Rat::zero());
        assert_eq!(x.to_string(), "-1/19-2ε");
        assert_eq!((InfCoord::from_int(1) - InfCoord::eps2()).to_string(), "1-ε²");
        assert_eq!(InfCoord::zero().to_string(), "0");
    }

    #[test]
    fn serde_round_trip() {
        let x = InfCoord::new(Rat::new(-1, 19), Rat::from_integer(3), Rat::from_integer(-1));
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"["-1/19","3","-1"]"#);
        let y: InfCoord = serde_json::from_str(&s).unwrap();
        assert_eq!(x, y);
    }

    #[test]
    fn affine_charge() {
        let ctx = Context::level_one(Family::Atwo, 2, 3, 0).unwrap();
        let ac = ctx.affine_charge();
        assert_eq!(ac.positions.len(), 10);
        assert_eq!(&ac.positions[..3], &[0, 6, 12]);
        assert_eq!(&ac.residues[..5], &[0, 0, 0, 0, 1]);
        assert!(ac.positions.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn context_validation() {
        let q = qt(Family::Atwo, 2);
        assert!(Context::new(q, 1, vec![3, 1], vec![0, 0]).is_err());
        assert!(Context::new(q, 1, vec![0], vec![3]).is_err());
        assert!(Context::new(q, 1, vec![0, 1], vec![0]).is_err());
    }

    #[test]
    fn empty_size_has_no_finite_max() {
        let ctx = Context::level_one(Family::Atwo, 2, 0, 0).unwrap();
        assert_eq!(max_finite_coord(&ctx), None);
    }
}
