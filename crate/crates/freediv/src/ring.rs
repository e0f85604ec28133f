use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// A polynomial ring over the rationals with a positive integer weight per
/// variable, defining a (possibly nonstandard) Z-grading.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GradedRing {
    vars: Vec<String>,
    weights: Vec<i64>,
}

pub type RingRef = Arc<GradedRing>;

impl GradedRing {
    pub fn new(vars: Vec<String>, weights: Vec<i64>) -> Result<RingRef> {
        if vars.len() != weights.len() {
            return Err(Error::InvalidRing(format!(
                "{} variables but {} weights",
                vars.len(),
                weights.len()
            )));
        }
        if vars.is_empty() {
            return Err(Error::InvalidRing("ring needs at least one variable".into()));
        }
        for w in &weights {
            if *w <= 0 {
                return Err(Error::InvalidRing(format!("nonpositive weight {w}")));
            }
        }
        for (i, v) in vars.iter().enumerate() {
            if v.is_empty() {
                return Err(Error::InvalidRing("empty variable name".into()));
            }
            if vars[..i].contains(v) {
                return Err(Error::InvalidRing(format!("duplicate variable {v}")));
            }
        }
        Ok(Arc::new(GradedRing { vars, weights }))
    }

    /// Ring with all weights 1 (standard grading).
    pub fn standard(vars: Vec<String>) -> Result<RingRef> {
        let n = vars.len();
        GradedRing::new(vars, vec![1; n])
    }

    pub fn num_vars(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn weight(&self, i: usize) -> i64 {
        self.weights[i]
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Extends the ring by one variable of weight 1, appended last.
    pub fn extend(&self, new_var: &str) -> Result<RingRef> {
        if self.vars.iter().any(|v| v == new_var) {
            return Err(Error::NameCollision(new_var.to_string()));
        }
        let mut vars = self.vars.clone();
        vars.push(new_var.to_string());
        let mut weights = self.weights.clone();
        weights.push(1);
        GradedRing::new(vars, weights)
    }

    /// Removes the named variable.
    pub fn remove(&self, var: &str) -> Result<(RingRef, usize)> {
        let idx = self
            .var_index(var)
            .ok_or_else(|| Error::UnknownVariable(var.to_string()))?;
        let mut vars = self.vars.clone();
        vars.remove(idx);
        let mut weights = self.weights.clone();
        weights.remove(idx);
        Ok((GradedRing::new(vars, weights)?, idx))
    }

    /// Same variables, different weights.
    pub fn with_weights(&self, weights: Vec<i64>) -> Result<RingRef> {
        GradedRing::new(self.vars.clone(), weights)
    }

    pub fn is_standard(&self) -> bool {
        self.weights.iter().all(|&w| w == 1)
    }
}

impl fmt::Display for GradedRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .vars
            .iter()
            .zip(&self.weights)
            .map(|(v, w)| if *w == 1 { v.clone() } else { format!("{v}:{w}") })
            .collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Exponent vector aligned with the ring's variable order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Monomial(e)
    }

    pub fn total_degree(&self) -> i64 {
        self.0.iter().map(|&e| e as i64).sum()
    }

    pub fn weighted_degree(&self, weights: &[i64]) -> i64 {
        self.0
            .iter()
            .zip(weights)
            .map(|(&e, &w)| e as i64 * w)
            .sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    /// Componentwise quotient, if `other` divides `self`.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(&other.0) {
            if a < b {
                return None;
            }
            out.push(a - b);
        }
        Some(Monomial(out))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }
}

/// Canonical order used for storage and display: total degree, then the
/// exponent vector lexicographically in ring variable order. Iterating a
/// term map in reverse gives graded-lex descending.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Weighted degree of a polynomial; `Bottom` is the degree of 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum WeightedDegree {
    Bottom,
    Finite(i64),
}

impl WeightedDegree {
    pub fn finite(self) -> Option<i64> {
        match self {
            WeightedDegree::Bottom => None,
            WeightedDegree::Finite(d) => Some(d),
        }
    }
}

impl fmt::Display for WeightedDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeightedDegree::Bottom => write!(f, "-infinity"),
            WeightedDegree::Finite(d) => write!(f, "{d}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_validation() {
        assert!(GradedRing::new(vec!["x".into(), "y".into()], vec![1, 2]).is_ok());
        assert!(GradedRing::new(vec!["x".into(), "x".into()], vec![1, 1]).is_err());
        assert!(GradedRing::new(vec!["x".into()], vec![0]).is_err());
        assert!(GradedRing::new(vec!["x".into()], vec![1, 2]).is_err());
    }

    #[test]
    fn monomial_order_is_graded_lex() {
        // x^2 > xy > y^2 > x in the displayed (descending) order
        let x2 = Monomial(vec![2, 0]);
        let xy = Monomial(vec![1, 1]);
        let y2 = Monomial(vec![0, 2]);
        let x = Monomial(vec![1, 0]);
        assert!(x2 > xy && xy > y2 && y2 > x);
    }

    #[test]
    fn extend_and_remove() {
        let r = GradedRing::new(vec!["x".into(), "y".into()], vec![2, 3]).unwrap();
        let ext = r.extend("t").unwrap();
        assert_eq!(ext.num_vars(), 3);
        assert_eq!(ext.weight(2), 1);
        assert!(r.extend("x").is_err());
        let (back, idx) = ext.remove("t").unwrap();
        assert_eq!(idx, 2);
        assert_eq!(back.vars(), r.vars());
    }
}
