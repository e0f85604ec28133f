//! Saito matrices, the determinant criterion, and certificate
//! re-verification.

use crate::cert::{Certificate, Method};
use crate::deriv::Derivation;
use crate::error::{Error, Result};
use crate::matrix::PolyMatrix;
use crate::poly::{Poly, Q};
use crate::ring::{RingRef, WeightedDegree};

use num_traits::Zero;

/// Outcome of a freeness check; failures carry the violated condition.
#[derive(Debug, Clone)]
pub enum CheckResult {
    Certified(Certificate),
    Failed(String),
}

impl CheckResult {
    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            CheckResult::Certified(c) => Some(c),
            CheckResult::Failed(_) => None,
        }
    }

    pub fn is_certified(&self) -> bool {
        matches!(self, CheckResult::Certified(_))
    }
}

/// Row i = coefficient vector of derivation i.
pub fn saito_matrix(derivs: &[Derivation]) -> Result<PolyMatrix> {
    let ring = derivs
        .first()
        .ok_or(Error::DerivationCount {
            expected: 1,
            got: 0,
        })?
        .ring()
        .clone();
    if derivs.len() != ring.num_vars() {
        return Err(Error::DerivationCount {
            expected: ring.num_vars(),
            got: derivs.len(),
        });
    }
    PolyMatrix::from_rows(&ring, derivs.iter().map(|d| d.coeffs().to_vec()).collect())
}

/// deg(det M) = sum of derivation degrees + sum (w_i - 1), for weighted
/// homogeneous rows.
pub fn expected_det_wdeg(derivs: &[Derivation]) -> Result<i64> {
    let mut sum = 0i64;
    let mut ring: Option<&RingRef> = None;
    for d in derivs {
        ring = Some(d.ring());
        sum += d
            .homogeneous_wdeg()
            .ok_or(Error::InhomogeneousDerivation)?;
    }
    let ring = ring.ok_or(Error::DerivationCount {
        expected: 1,
        got: 0,
    })?;
    Ok(sum + ring.weights().iter().map(|w| w - 1).sum::<i64>())
}

/// True when d is a nonzero rational multiple of the weighted Euler
/// derivation; returns the scalar.
pub fn euler_multiple(d: &Derivation) -> Option<Q> {
    let ring = d.ring();
    let euler = Derivation::euler(ring);
    let mut scalar: Option<Q> = None;
    for i in 0..ring.num_vars() {
        let g = d.coeff(i);
        let e = euler.coeff(i);
        if g.is_zero() {
            return None;
        }
        let q = g.exact_divide(e).ok()?;
        let c = q.as_constant()?;
        match &scalar {
            None => scalar = Some(c),
            Some(s) if *s != c => return None,
            _ => {}
        }
    }
    scalar.filter(|s| !s.is_zero())
}

fn sorted_degrees(derivs: &[Derivation]) -> Vec<i64> {
    let mut out: Vec<i64> = derivs
        .iter()
        .map(|d| match d.wdeg().degree {
            WeightedDegree::Finite(v) => v,
            WeightedDegree::Bottom => 0,
        })
        .collect();
    out.sort_unstable();
    out
}

fn der0_degrees(derivs: &[Derivation]) -> Vec<i64> {
    let mut non_euler: Vec<i64> = Vec::new();
    let mut dropped_euler = false;
    for d in derivs {
        if !dropped_euler && euler_multiple(d).is_some() {
            dropped_euler = true;
            continue;
        }
        if let WeightedDegree::Finite(v) = d.wdeg().degree {
            non_euler.push(v);
        }
    }
    if dropped_euler {
        non_euler.sort_unstable();
        non_euler
    } else {
        Vec::new()
    }
}

/// Saito's criterion: every derivation lies in Der(f) and the determinant
/// of the Saito matrix equals unit * f.
pub fn saito_check(f: &Poly, derivs: &[Derivation]) -> Result<CheckResult> {
    saito_check_with(f, derivs, Method::Saito, None)
}

pub fn saito_check_with(
    f: &Poly,
    derivs: &[Derivation],
    method: Method,
    provenance: Option<String>,
) -> Result<CheckResult> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !f.is_reduced()? {
        return Err(Error::NotReduced);
    }
    let ring = f.ring().clone();
    if derivs.len() != ring.num_vars() {
        return Err(Error::DerivationCount {
            expected: ring.num_vars(),
            got: derivs.len(),
        });
    }
    for (i, d) in derivs.iter().enumerate() {
        if d.ring() != &ring {
            return Err(Error::RingMismatch);
        }
        let m = d.in_der(f)?;
        if !m.member {
            return Ok(CheckResult::Failed(format!(
                "derivation {i} is not in Der(f): residual {}",
                d.apply(f)?
            )));
        }
    }
    let det = saito_matrix(derivs)?.det()?;
    if det.is_zero() {
        return Ok(CheckResult::Failed(
            "Saito determinant is zero (rows are dependent)".into(),
        ));
    }
    let unit = match det.exact_divide(f) {
        Ok(q) => match q.as_constant() {
            Some(u) => u,
            None => {
                return Ok(CheckResult::Failed(format!(
                    "det = ({q}) * f is not a unit multiple of f"
                )))
            }
        },
        Err(_) => {
            return Ok(CheckResult::Failed(
                "Saito determinant is not divisible by f".into(),
            ))
        }
    };
    Ok(CheckResult::Certified(Certificate {
        ring,
        divisor: f.clone(),
        basis: derivs.to_vec(),
        unit,
        exponents: sorted_degrees(derivs),
        der0_exponents: der0_degrees(derivs),
        method,
        provenance,
    }))
}

/// Recomputes every condition of a certificate from scratch.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyOutcome {
    pub pass: bool,
    pub diagnostic: Option<String>,
}

pub fn verify_certificate(cert: &Certificate) -> Result<VerifyOutcome> {
    let fail = |msg: String| {
        Ok(VerifyOutcome {
            pass: false,
            diagnostic: Some(msg),
        })
    };
    if cert.divisor.is_zero() {
        return Err(Error::MalformedCertificate("zero divisor".into()));
    }
    if cert.basis.len() != cert.ring.num_vars() {
        return fail(format!(
            "basis has {} elements for {} variables",
            cert.basis.len(),
            cert.ring.num_vars()
        ));
    }
    if cert.unit.is_zero() {
        return fail("unit is zero".into());
    }
    for (i, d) in cert.basis.iter().enumerate() {
        if !d.in_der(&cert.divisor)?.member {
            return fail(format!("basis element {i} is not in Der(f)"));
        }
    }
    let det = saito_matrix(&cert.basis)?.det()?;
    let expect = cert.divisor.scale(&cert.unit);
    if det != expect {
        return fail("det(Saito matrix) != unit * divisor".into());
    }
    if sorted_degrees(&cert.basis) != cert.exponents {
        return fail("exponents do not match basis degrees".into());
    }
    if der0_degrees(&cert.basis) != cert.der0_exponents {
        return fail("der0_exponents do not match basis".into());
    }
    Ok(VerifyOutcome {
        pass: true,
        diagnostic: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_derivation, parse_poly, parse_ring};
    use crate::poly::q_int;

    #[test]
    fn normal_crossing_is_free() {
        let r = parse_ring("x,y").unwrap();
        let f = parse_poly("x*y", &r).unwrap();
        let basis = vec![
            parse_derivation("x; 0", &r).unwrap(),
            parse_derivation("0; y", &r).unwrap(),
        ];
        let res = saito_check(&f, &basis).unwrap();
        let cert = res.certificate().expect("free");
        assert_eq!(cert.unit, q_int(1));
        assert_eq!(cert.exponents, vec![1, 1]);
        assert!(verify_certificate(cert).unwrap().pass);
    }

    #[test]
    fn dependent_rows_fail() {
        let r = parse_ring("x,y").unwrap();
        let f = parse_poly("x*y", &r).unwrap();
        let d = parse_derivation("x; 0", &r).unwrap();
        let res = saito_check(&f, &[d.clone(), d]).unwrap();
        assert!(!res.is_certified());
    }

    #[test]
    fn braid_arrangement() {
        // xyz(x-y)(x-z)(y-z) with the classical basis; exponents (1,2,3)
        let r = parse_ring("x,y,z").unwrap();
        let f = parse_poly("x*y*z*(x-y)*(x-z)*(y-z)", &r).unwrap();
        let basis = vec![
            parse_derivation("x; y; z", &r).unwrap(),
            parse_derivation("x^2; y^2; z^2", &r).unwrap(),
            parse_derivation("x^3; y^3; z^3", &r).unwrap(),
        ];
        let res = saito_check(&f, &basis).unwrap();
        let cert = res.certificate().expect("braid arrangement is free");
        assert_eq!(cert.exponents, vec![1, 2, 3]);
        assert_eq!(cert.der0_exponents, vec![2, 3]);
        assert_eq!(expected_det_wdeg(&cert.basis).unwrap(), 6);
        assert!(verify_certificate(cert).unwrap().pass);
    }

    #[test]
    fn non_reduced_rejected() {
        let r = parse_ring("x,y").unwrap();
        let f = parse_poly("x^2*y", &r).unwrap();
        let basis = vec![
            parse_derivation("x; 0", &r).unwrap(),
            parse_derivation("0; y", &r).unwrap(),
        ];
        assert!(matches!(
            saito_check(&f, &basis),
            Err(Error::NotReduced)
        ));
    }

    #[test]
    fn tampered_certificate_fails() {
        let r = parse_ring("x,y").unwrap();
        let f = parse_poly("x*y", &r).unwrap();
        let basis = vec![
            parse_derivation("x; 0", &r).unwrap(),
            parse_derivation("0; y", &r).unwrap(),
        ];
        let cert = saito_check(&f, &basis)
            .unwrap()
            .certificate()
            .unwrap()
            .clone();
        let mut bad = cert.clone();
        bad.unit = q_int(2);
        assert!(!verify_certificate(&bad).unwrap().pass);
        let mut bad2 = cert;
        bad2.exponents = vec![1, 2];
        assert!(!verify_certificate(&bad2).unwrap().pass);
    }

    #[test]
    fn euler_multiple_detection() {
        let r = parse_ring("x:4,y:2,z:4").unwrap();
        let e = Derivation::euler(&r).scale(&q_int(3));
        assert_eq!(euler_multiple(&e), Some(q_int(3)));
        let d = parse_derivation("x; y; z", &r).unwrap();
        assert_eq!(euler_multiple(&d), None);
    }
}
