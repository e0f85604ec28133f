//! Derivations sum g_i d/dx_i with the nonstandard grading
//! deg(d/dx_i) = 1 - w_i, membership in Der(f), the Euler decomposition,
//! and homogenization of derivations.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::poly::{q_int, Poly, Q};
use crate::ring::{RingRef, WeightedDegree};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation {
    ring: RingRef,
    coeffs: Vec<Poly>,
}

/// Weighted degree report for a derivation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DerDegree {
    pub degree: WeightedDegree,
    pub homogeneous: bool,
}

/// Outcome of the Der(f) membership test: member means f divides delta(f),
/// with the quotient recorded; annihilates means delta(f) = 0 (Der_0).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerMembership {
    pub member: bool,
    pub cofactor: Option<Poly>,
    pub annihilates: bool,
}

impl Derivation {
    pub fn new(ring: &RingRef, coeffs: Vec<Poly>) -> Result<Self> {
        if coeffs.len() != ring.num_vars() {
            return Err(Error::DerivationCount {
                expected: ring.num_vars(),
                got: coeffs.len(),
            });
        }
        for c in &coeffs {
            if c.ring() != ring {
                return Err(Error::RingMismatch);
            }
        }
        Ok(Derivation {
            ring: ring.clone(),
            coeffs,
        })
    }

    pub fn zero(ring: &RingRef) -> Self {
        Derivation {
            ring: ring.clone(),
            coeffs: vec![Poly::zero(ring); ring.num_vars()],
        }
    }

    /// The weighted Euler derivation sum w_i x_i d/dx_i.
    pub fn euler(ring: &RingRef) -> Self {
        let coeffs = (0..ring.num_vars())
            .map(|i| Poly::var(ring, i).scale(&q_int(ring.weight(i))))
            .collect();
        Derivation {
            ring: ring.clone(),
            coeffs,
        }
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &Poly {
        &self.coeffs[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &Derivation) -> Result<Derivation> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.add(b))
            .collect::<Result<_>>()?;
        Derivation::new(&self.ring, coeffs)
    }

    pub fn sub(&self, other: &Derivation) -> Result<Derivation> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Derivation {
        Derivation {
            ring: self.ring.clone(),
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn scale(&self, c: &Q) -> Derivation {
        Derivation {
            ring: self.ring.clone(),
            coeffs: self.coeffs.iter().map(|g| g.scale(c)).collect(),
        }
    }

    pub fn scale_poly(&self, p: &Poly) -> Result<Derivation> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|g| g.mul(p))
            .collect::<Result<_>>()?;
        Derivation::new(&self.ring, coeffs)
    }

    pub fn apply(&self, f: &Poly) -> Result<Poly> {
        if f.ring() != &self.ring {
            return Err(Error::RingMismatch);
        }
        let mut out = Poly::zero(&self.ring);
        for (i, g) in self.coeffs.iter().enumerate() {
            if g.is_zero() {
                continue;
            }
            out = out.add(&g.mul(&f.partial_derivative(i)?)?)?;
        }
        Ok(out)
    }

    /// deg(delta) = max over nonzero g_i of wdeg(g_i) + 1 - w_i; homogeneous
    /// iff every nonzero coefficient is weighted homogeneous with a common
    /// value. Zero coefficients impose nothing.
    pub fn wdeg(&self) -> DerDegree {
        let mut degree = WeightedDegree::Bottom;
        let mut homogeneous = true;
        let mut seen: Option<i64> = None;
        for (i, g) in self.coeffs.iter().enumerate() {
            if g.is_zero() {
                continue;
            }
            let shift = 1 - self.ring.weight(i);
            match g.homogeneous_wdeg() {
                Some(WeightedDegree::Finite(d)) => {
                    let v = d + shift;
                    match seen {
                        None => seen = Some(v),
                        Some(prev) if prev != v => homogeneous = false,
                        _ => {}
                    }
                }
                _ => homogeneous = false,
            }
            if let WeightedDegree::Finite(d) = g.wdeg() {
                let v = WeightedDegree::Finite(d + shift);
                if v > degree {
                    degree = v;
                }
            }
        }
        DerDegree { degree, homogeneous }
    }

    pub fn homogeneous_wdeg(&self) -> Option<i64> {
        let d = self.wdeg();
        if d.homogeneous {
            d.degree.finite()
        } else {
            None
        }
    }

    pub fn in_der(&self, f: &Poly) -> Result<DerMembership> {
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let df = self.apply(f)?;
        if df.is_zero() {
            return Ok(DerMembership {
                member: true,
                cofactor: Some(Poly::zero(&self.ring)),
                annihilates: true,
            });
        }
        match df.exact_divide(f) {
            Ok(p) => Ok(DerMembership {
                member: true,
                cofactor: Some(p),
                annihilates: false,
            }),
            Err(Error::NotDivisible(_, _)) => Ok(DerMembership {
                member: false,
                cofactor: None,
                annihilates: false,
            }),
            Err(e) => Err(e),
        }
    }

    /// Writes delta = (p/d) delta_E + delta~ with delta~(f) = 0, where p is
    /// the Der(f) cofactor and d = wdeg(f).
    pub fn split_euler(&self, f: &Poly) -> Result<(Poly, Derivation)> {
        let d = match f.homogeneous_wdeg() {
            Some(WeightedDegree::Finite(d)) if d != 0 => d,
            _ => return Err(Error::ZeroDegreeDivisor),
        };
        let m = self.in_der(f)?;
        if !m.member {
            return Err(Error::NotAMember);
        }
        let p = m.cofactor.unwrap();
        let mult = p.scale(&(q_int(1) / q_int(d)));
        let euler = Derivation::euler(&self.ring);
        let mut tilde_coeffs = Vec::with_capacity(self.coeffs.len());
        for (i, g) in self.coeffs.iter().enumerate() {
            tilde_coeffs.push(g.sub(&mult.mul(euler.coeff(i))?)?);
        }
        let tilde = Derivation::new(&self.ring, tilde_coeffs)?;
        debug_assert!(tilde.apply(f)?.is_zero());
        Ok((mult, tilde))
    }

    /// Pads each coefficient with powers of the fresh weight-1 variable so
    /// that all nonzero coefficients get the same standard degree D; the
    /// new variable's slot is zero.
    pub fn homogenize(&self, new_var: &str) -> Result<Derivation> {
        let ext = self.ring.extend(new_var)?;
        let new_idx = ext.num_vars() - 1;
        let big_d = self
            .coeffs
            .iter()
            .filter_map(|g| g.total_degree())
            .max()
            .unwrap_or(0);
        let t = Poly::var(&ext, new_idx);
        let mut coeffs = Vec::with_capacity(ext.num_vars());
        for g in &self.coeffs {
            if g.is_zero() {
                coeffs.push(Poly::zero(&ext));
                continue;
            }
            let gh = g.homogenize(new_var)?;
            let pad = (big_d - g.total_degree().unwrap()) as u32;
            coeffs.push(gh.mul(&t.pow(pad))?);
        }
        coeffs.push(Poly::zero(&ext));
        Derivation::new(&ext, coeffs)
    }

    /// Decomposes delta into weighted homogeneous components, ascending by
    /// degree; the components sum back to delta.
    pub fn graded_components(&self) -> Vec<(i64, Derivation)> {
        let mut map: BTreeMap<i64, Derivation> = BTreeMap::new();
        for (i, g) in self.coeffs.iter().enumerate() {
            let shift = 1 - self.ring.weight(i);
            for (d, piece) in g.graded_pieces() {
                let e = map
                    .entry(d + shift)
                    .or_insert_with(|| Derivation::zero(&self.ring));
                e.coeffs[i] = e.coeffs[i].add(&piece).expect("same ring");
            }
        }
        map.into_iter().collect()
    }

    /// Maps the derivation into a larger ring containing all variables by
    /// name; missing slots get zero coefficients.
    pub fn cast_into(&self, target: &RingRef) -> Result<Derivation> {
        let mut coeffs = vec![Poly::zero(target); target.num_vars()];
        for (i, g) in self.coeffs.iter().enumerate() {
            let name = &self.ring.vars()[i];
            let j = target
                .var_index(name)
                .ok_or_else(|| Error::UnknownVariable(name.clone()))?;
            coeffs[j] = g.cast_into(target)?;
        }
        Derivation::new(target, coeffs)
    }
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join("; "))
    }
}
