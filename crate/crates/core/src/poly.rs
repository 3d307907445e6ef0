use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::composition::Composition;

/// Sparse polynomial in x_1..x_m with exact integer coefficients.
#[derive(Clone, PartialEq, Eq, Default, Serialize)]
pub struct Polynomial {
    nvars: usize,
    #[serde(serialize_with = "ser_terms")]
    terms: BTreeMap<Vec<u32>, BigInt>,
}

fn ser_terms<S: serde::Serializer>(
    terms: &BTreeMap<Vec<u32>, BigInt>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(terms.len()))?;
    for (e, c) in terms {
        seq.serialize_element(&(e, c.to_string()))?;
    }
    seq.end()
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::monomial(vec![0; nvars], BigInt::one())
    }

    pub fn monomial(exps: Vec<u32>, coeff: BigInt) -> Self {
        let mut p = Self::zero(exps.len());
        p.add_term(exps, coeff);
        p
    }

    /// x^α for a weak composition α.
    pub fn x_pow(alpha: &Composition) -> Self {
        Self::monomial(alpha.parts().to_vec(), BigInt::one())
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[u32]) -> BigInt {
        self.terms.get(exps).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, exps: Vec<u32>, coeff: BigInt) {
        assert_eq!(exps.len(), self.nvars, "exponent length");
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(exps);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Polynomial, scale: &BigInt) {
        assert_eq!(self.nvars, other.nvars, "variable count");
        for (e, c) in &other.terms {
            self.add_term(e.clone(), c * scale);
        }
    }

    pub fn scale(&self, s: &BigInt) -> Self {
        let mut out = Self::zero(self.nvars);
        out.add_scaled(self, s);
        out
    }

    /// All coefficients are ≥ 0.
    pub fn is_nonnegative(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    /// Value at x = (1, …, 1).
    pub fn eval_ones(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out.add_scaled(rhs, &BigInt::one());
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out.add_scaled(rhs, &-BigInt::one());
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-BigInt::one())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, rhs.nvars, "variable count");
        let mut out = Polynomial::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for Polynomial {
    /// Terms in decreasing exponent order, e.g. `x1^2*x3 + 2*x1*x2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &p)| p > 0)
                .map(|(j, &p)| {
                    if p == 1 {
                        format!("x{}", j + 1)
                    } else {
                        format!("x{}^{}", j + 1, p)
                    }
                })
                .collect();
            if vars.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{mag}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize, n: usize) -> Polynomial {
        let mut e = vec![0; n];
        e[i] = 1;
        Polynomial::monomial(e, BigInt::one())
    }

    #[test]
    fn arithmetic() {
        let a = &x(0, 2) + &x(1, 2);
        let sq = &a * &a;
        assert_eq!(sq.coeff(&[1, 1]), BigInt::from(2));
        assert_eq!(sq.num_terms(), 3);
        assert!((&sq - &sq).is_zero());
        assert_eq!(sq.eval_ones(), BigInt::from(4));
        assert_eq!(sq.to_string(), "x1^2 + 2*x1*x2 + x2^2");
        assert_eq!((-&a).to_string(), "-x1 - x2");
        assert_eq!(Polynomial::one(3).to_string(), "1");
    }
}
