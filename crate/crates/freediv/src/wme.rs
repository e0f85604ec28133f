//! Weighted (Multiple) eigenschemes: Euler row stacked over derivation
//! tensor rows, maximal minors, the codimension-2 gcd test, and the
//! determinantal freeness criteria.

use crate::deriv::Derivation;
use crate::error::{Error, Result};
use crate::groebner::{ideal_membership, Limits};
use crate::matrix::PolyMatrix;
use crate::poly::Poly;
use crate::ring::RingRef;
use crate::saito::{saito_check_with, CheckResult};
use crate::cert::Method;

#[derive(Debug, Clone)]
pub struct WmeMatrix {
    pub matrix: PolyMatrix,
    pub tensors: Vec<Derivation>,
    pub ring: RingRef,
}

#[derive(Debug, Clone)]
pub struct MinorSet {
    pub minors: Vec<Poly>,
    pub gcd: Poly,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CodimVerdict {
    Codim2,
    CommonFactor(Poly),
    ZeroIdeal,
}

/// Euler row (w_0 x_0, ..., w_n x_n) over the tensor rows.
pub fn build_wme_matrix(ring: &RingRef, derivs: &[Derivation]) -> Result<WmeMatrix> {
    let nv = ring.num_vars();
    let r = derivs.len();
    if r == 0 || r + 1 > nv {
        return Err(Error::DerivationCount {
            expected: nv - 1,
            got: r,
        });
    }
    let euler = Derivation::euler(ring);
    let mut rows = vec![euler.coeffs().to_vec()];
    for d in derivs {
        if d.ring() != ring {
            return Err(Error::RingMismatch);
        }
        if d.homogeneous_wdeg().is_none() {
            return Err(Error::InhomogeneousDerivation);
        }
        rows.push(d.coeffs().to_vec());
    }
    Ok(WmeMatrix {
        matrix: PolyMatrix::from_rows(ring, rows)?,
        tensors: derivs.to_vec(),
        ring: ring.clone(),
    })
}

pub fn maximal_minors(m: &PolyMatrix) -> Result<MinorSet> {
    let minors = m.maximal_minors()?;
    let mut gcd = Poly::zero(m.ring());
    for p in &minors {
        if p.is_zero() {
            continue;
        }
        gcd = if gcd.is_zero() {
            p.normalize()
        } else {
            gcd.gcd(p)?
        };
    }
    Ok(MinorSet { minors, gcd })
}

/// Codimension 2 iff the minors have a constant gcd (Lemma 4.6 shape).
pub fn codim2_test(minors: &MinorSet) -> CodimVerdict {
    if minors.minors.iter().all(|m| m.is_zero()) {
        return CodimVerdict::ZeroIdeal;
    }
    if minors.gcd.is_constant() {
        CodimVerdict::Codim2
    } else {
        CodimVerdict::CommonFactor(minors.gcd.clone())
    }
}

/// Last exponent of the completed basis: d + sum(1 - w_i) - sum d_i - 1.
pub fn wme_last_exponent(f: &Poly, derivs: &[Derivation]) -> Result<i64> {
    let d = f
        .homogeneous_wdeg()
        .and_then(|w| w.finite())
        .ok_or(Error::InhomogeneousDerivation)?;
    let ring = f.ring();
    let mut sum = 0;
    for t in derivs {
        sum += t
            .homogeneous_wdeg()
            .ok_or(Error::InhomogeneousDerivation)?;
    }
    Ok(d + ring.weights().iter().map(|w| 1 - w).sum::<i64>() - sum - 1)
}

/// Builds the completing row from membership cofactors h (f = sum h_j m_j):
/// row_j = (-1)^n h_j truncated to its graded piece, n = rows of the
/// completed matrix minus 1.
fn completing_derivation(
    f: &Poly,
    minors: &[Poly],
    cofactors: &[Poly],
) -> Result<Derivation> {
    let ring = f.ring().clone();
    let nv = ring.num_vars();
    let d = f
        .homogeneous_wdeg()
        .and_then(|w| w.finite())
        .ok_or(Error::InhomogeneousDerivation)?;
    let sign_flip = (nv - 1) % 2 == 1;
    let mut coeffs = Vec::with_capacity(nv);
    for (h, m) in cofactors.iter().zip(minors) {
        let g = match m.homogeneous_wdeg().and_then(|w| w.finite()) {
            Some(dm) => h.graded_piece(d - dm),
            None => Poly::zero(&ring),
        };
        coeffs.push(if sign_flip { g.neg() } else { g });
    }
    Derivation::new(&ring, coeffs)
}

/// Theorem 4.5 route: n-1 member tensors, codimension-2 eigenscheme, f in
/// the minor ideal; the certificate completes the matrix and re-verifies
/// Saito's criterion.
pub fn wme_freeness(f: &Poly, derivs: &[Derivation], limits: Limits) -> Result<CheckResult> {
    wme_pipeline(f, derivs, true, limits, Method::Wme, None)
}

/// Remark 4.3 variant: n rows, Euler not required among them.
pub fn general_determinantal_freeness(
    f: &Poly,
    derivs: &[Derivation],
    limits: Limits,
) -> Result<CheckResult> {
    wme_pipeline(f, derivs, false, limits, Method::WmeGeneral, None)
}

pub fn wme_pipeline(
    f: &Poly,
    derivs: &[Derivation],
    with_euler: bool,
    limits: Limits,
    method: Method,
    provenance: Option<String>,
) -> Result<CheckResult> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let ring = f.ring().clone();
    let nv = ring.num_vars();
    let expected = if with_euler { nv - 2 } else { nv - 1 };
    if derivs.len() != expected {
        return Err(Error::DerivationCount {
            expected,
            got: derivs.len(),
        });
    }
    if f.homogeneous_wdeg().and_then(|w| w.finite()).is_none() {
        return Ok(CheckResult::Failed(
            "divisor is not weighted homogeneous".into(),
        ));
    }
    for (i, t) in derivs.iter().enumerate() {
        if t.homogeneous_wdeg().is_none() {
            return Err(Error::InhomogeneousDerivation);
        }
        if !t.in_der(f)?.member {
            return Ok(CheckResult::Failed(format!(
                "tensor {i} is not in Der(f)"
            )));
        }
    }
    let matrix = if with_euler {
        build_wme_matrix(&ring, derivs)?.matrix
    } else {
        PolyMatrix::from_rows(&ring, derivs.iter().map(|d| d.coeffs().to_vec()).collect())?
    };
    let minors = maximal_minors(&matrix)?;
    match codim2_test(&minors) {
        CodimVerdict::Codim2 => {}
        CodimVerdict::ZeroIdeal => {
            return Ok(CheckResult::Failed(
                "all maximal minors vanish (dependent rows)".into(),
            ))
        }
        CodimVerdict::CommonFactor(h) => {
            return Ok(CheckResult::Failed(format!(
                "eigenscheme has codimension < 2: common minor factor {h}"
            )))
        }
    }
    let cof = match ideal_membership(f, &minors.minors, limits)? {
        Some(c) => c,
        None => {
            return Ok(CheckResult::Failed(
                "f is not in the ideal of maximal minors".into(),
            ))
        }
    };
    let mu = completing_derivation(f, &minors.minors, &cof)?;
    let mut basis = Vec::with_capacity(nv);
    if with_euler {
        basis.push(Derivation::euler(&ring));
    }
    basis.extend(derivs.iter().cloned());
    basis.push(mu);
    saito_check_with(f, &basis, method, provenance)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_derivation, parse_poly, parse_ring};
    use crate::saito::verify_certificate;

    fn limits() -> Limits {
        Limits::default()
    }

    #[test]
    fn whitney_matrix_and_minors() {
        let r = parse_ring("x:4,y:2,z:4").unwrap();
        let t1 = parse_derivation("2*x; 2*y; 0", &r).unwrap();
        let wm = build_wme_matrix(&r, &[t1]).unwrap();
        assert_eq!(wm.matrix.rows(), 2);
        assert_eq!(wm.matrix.at(0, 0), &parse_poly("4*x", &r).unwrap());
        let ms = maximal_minors(&wm.matrix).unwrap();
        assert_eq!(ms.minors.len(), 3);
        // ideal is (yz, xz, xy) up to scalars
        assert_eq!(codim2_test(&ms), CodimVerdict::Codim2);
    }

    #[test]
    fn whitney_zf_free() {
        let r = parse_ring("x:4,y:2,z:4").unwrap();
        let zf = parse_poly("z*(x^2 - y^2*z)", &r).unwrap();
        let t1 = parse_derivation("2*x; 2*y; 0", &r).unwrap();
        let res = wme_freeness(&zf, &[t1.clone()], limits()).unwrap();
        let cert = res.certificate().expect("zf is free");
        assert_eq!(cert.exponents, vec![1, 1, 3]);
        assert_eq!(cert.der0_exponents, vec![1, 3]);
        assert_eq!(wme_last_exponent(&zf, &[t1]).unwrap(), 3);
        assert!(verify_certificate(cert).unwrap().pass);
    }

    #[test]
    fn whitney_yf_free() {
        let r = parse_ring("x:4,y:2,z:4").unwrap();
        let yf = parse_poly("y*(x^2 - y^2*z)", &r).unwrap();
        // delta_2 = c x dx + a z dz at (a,b,c) = (2,2,1)
        let t2 = parse_derivation("x; 0; 2*z", &r).unwrap();
        let res = wme_freeness(&yf, &[t2], limits()).unwrap();
        let cert = res.certificate().expect("yf is free");
        // 2abc - 2bc - ab + 1 = 8 - 4 - 4 + 1 = 1
        assert_eq!(cert.der0_exponents, vec![1, 1]);
        assert!(verify_certificate(cert).unwrap().pass);
    }

    #[test]
    fn whitney_f_not_in_ideal() {
        let r = parse_ring("x:4,y:2,z:4").unwrap();
        let f = parse_poly("x^2 - y^2*z", &r).unwrap();
        let t1 = parse_derivation("2*x; 2*y; 0", &r).unwrap();
        match wme_freeness(&f, &[t1], limits()).unwrap() {
            CheckResult::Failed(msg) => {
                assert!(msg.contains("not in the ideal"), "{msg}")
            }
            CheckResult::Certified(_) => panic!("f must not certify"),
        }
    }

    #[test]
    fn rank_deficient_rows() {
        let r = parse_ring("x,y,z").unwrap();
        let f = parse_poly("x*y*z", &r).unwrap();
        let e = parse_derivation("x; y; z", &r).unwrap();
        match wme_freeness(&f, &[e], limits()).unwrap() {
            CheckResult::Failed(msg) => assert!(msg.contains("minors vanish"), "{msg}"),
            CheckResult::Certified(_) => panic!("Euler tensor gives zero minors"),
        }
    }

    #[test]
    fn general_variant_degenerates_to_saito() {
        let r = parse_ring("x,y").unwrap();
        let f = parse_poly("x*y", &r).unwrap();
        let d = parse_derivation("x; -y", &r).unwrap();
        let res = general_determinantal_freeness(&f, &[d], limits()).unwrap();
        let cert = res.certificate().expect("normal crossing");
        assert_eq!(cert.exponents, vec![1, 1]);
        assert!(verify_certificate(cert).unwrap().pass);
    }

    #[test]
    fn common_factor_reported() {
        let r = parse_ring("x,y,z").unwrap();
        let f = parse_poly("x*y*z", &r).unwrap();
        // tensor (x^2, xy, 0): minors share the factor x
        let t = parse_derivation("x^2; x*y; 0", &r).unwrap();
        match wme_freeness(&f, &[t], limits()).unwrap() {
            CheckResult::Failed(msg) => assert!(msg.contains("codimension"), "{msg}"),
            CheckResult::Certified(_) => panic!("degenerate tensor must fail"),
        }
    }
}
