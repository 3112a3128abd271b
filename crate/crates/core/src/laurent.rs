//! Laurent polynomials in `q` with integer coefficients, used for graded
//! dimensions and degree generating functions.

use std::collections::BTreeMap;
use std::fmt;

use crate::{Error, Result};

/// A Laurent polynomial `sum c_k q^k`; zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Laurent {
    coeffs: BTreeMap<i64, i64>,
}

impl Laurent {
    pub fn zero() -> Self {
        Laurent::default()
    }

    pub fn one() -> Self {
        Laurent::monomial(1, 0)
    }

    /// `c q^k`.
    pub fn monomial(c: i64, k: i64) -> Self {
        let mut p = Laurent::zero();
        p.add_term(k, c);
        p
    }

    /// `q^k`.
    pub fn q_pow(k: i64) -> Self {
        Laurent::monomial(1, k)
    }

    /// Builds from `(exponent, coefficient)` pairs, merging duplicates.
    pub fn from_terms<I: IntoIterator<Item = (i64, i64)>>(terms: I) -> Self {
        let mut p = Laurent::zero();
        for (k, c) in terms {
            p.add_term(k, c);
        }
        p
    }

    pub fn add_term(&mut self, k: i64, c: i64) {
        if c == 0 {
            return;
        }
        let entry = self.coeffs.entry(k).or_insert(0);
        *entry += c;
        if *entry == 0 {
            self.coeffs.remove(&k);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, k: i64) -> i64 {
        self.coeffs.get(&k).copied().unwrap_or(0)
    }

    /// Nonzero `(exponent, coefficient)` pairs in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.coeffs.iter().map(|(&k, &c)| (k, c))
    }

    /// Value at `q = 1`.
    pub fn eval_one(&self) -> i64 {
        self.coeffs.values().sum()
    }

    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.coeffs.values().all(|&c| c >= 0)
    }

    pub fn add(&self, other: &Laurent) -> Laurent {
        let mut out = self.clone();
        for (k, c) in other.terms() {
            out.add_term(k, c);
        }
        out
    }

    pub fn mul(&self, other: &Laurent) -> Laurent {
        let mut out = Laurent::zero();
        for (k1, c1) in self.terms() {
            for (k2, c2) in other.terms() {
                out.add_term(k1 + k2, c1 * c2);
            }
        }
        out
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: i64) -> Laurent {
        Laurent::from_terms(self.terms().map(|(e, c)| (e + k, c)))
    }

    /// Substitutes `q -> q^{-1}`.
    pub fn bar(&self) -> Laurent {
        Laurent::from_terms(self.terms().map(|(e, c)| (-e, c)))
    }

    pub fn pow(&self, n: u32) -> Laurent {
        (0..n).fold(Laurent::one(), |acc, _| acc.mul(self))
    }
}

impl fmt::Display for Laurent {
    /// Canonical ascending form such as `q^-2+2+2q^2+2q^4+q^6`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.terms() {
            let sign = if c < 0 {
                "-"
            } else if first {
                ""
            } else {
                "+"
            };
            let mag = c.abs();
            let var = match k {
                0 => String::new(),
                1 => "q".to_string(),
                _ => format!("q^{k}"),
            };
            if var.is_empty() {
                write!(f, "{sign}{mag}")?;
            } else if mag == 1 {
                write!(f, "{sign}{var}")?;
            } else {
                write!(f, "{sign}{mag}{var}")?;
            }
            first = false;
        }
        Ok(())
    }
}

impl std::str::FromStr for Laurent {
    type Err = Error;

    /// Parses the canonical form written by `Display`.
    fn from_str(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s == "0" {
            return Ok(Laurent::zero());
        }
        let bad = || Error::Parse(format!("not a Laurent polynomial: {s:?}"));
        let bytes = s.as_bytes();
        let mut pieces = Vec::new();
        let mut start = 0;
        for i in 1..bytes.len() {
            if (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'^' {
                pieces.push(&s[start..i]);
                start = i;
            }
        }
        pieces.push(&s[start..]);
        let mut out = Laurent::zero();
        for piece in pieces {
            let (neg, body) = match piece.as_bytes().first() {
                Some(b'-') => (true, &piece[1..]),
                Some(b'+') => (false, &piece[1..]),
                _ => (false, piece),
            };
            let (coef, exp) = match body.find('q') {
                None => (body.parse::<i64>().map_err(|_| bad())?, 0),
                Some(pos) => {
                    let c = if pos == 0 { 1 } else { body[..pos].parse::<i64>().map_err(|_| bad())? };
                    let rest = &body[pos + 1..];
                    let e = if rest.is_empty() {
                        1
                    } else {
                        rest.strip_prefix('^').ok_or_else(bad)?.parse::<i64>().map_err(|_| bad())?
                    };
                    (c, e)
                }
            };
            out.add_term(exp, if neg { -coef } else { coef });
        }
        Ok(out)
    }
}
