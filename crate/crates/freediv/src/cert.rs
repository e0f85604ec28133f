//! Self-contained freeness certificates with a canonical, byte-stable JSON
//! serialization.

use serde::{Deserialize, Serialize};

use crate::deriv::Derivation;
use crate::error::{Error, Result};
use crate::parse::{parse_poly, parse_ring};
use crate::poly::{Poly, Q};
use crate::ring::RingRef;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Saito,
    Wme,
    WmeGeneral,
    Oracle,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Saito => "saito",
            Method::Wme => "wme",
            Method::WmeGeneral => "wme-general",
            Method::Oracle => "oracle",
        }
    }

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "saito" => Method::Saito,
            "wme" => Method::Wme,
            "wme-general" => Method::WmeGeneral,
            "oracle" => Method::Oracle,
            _ => {
                return Err(Error::MalformedCertificate(format!(
                    "unknown method {s:?}"
                )))
            }
        })
    }
}

/// A freeness certificate: basis of Der(f) whose Saito determinant is
/// unit * f. Re-verifiable from scratch by saito::verify_certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub ring: RingRef,
    pub divisor: Poly,
    pub basis: Vec<Derivation>,
    pub unit: Q,
    /// Sorted weighted degrees of the full basis (Euler slot included).
    pub exponents: Vec<i64>,
    /// Degrees of the non-Euler part when the basis contains a scalar
    /// multiple of the Euler derivation; empty otherwise.
    pub der0_exponents: Vec<i64>,
    pub method: Method,
    pub provenance: Option<String>,
}

#[derive(Serialize, Deserialize)]
struct RingDoc {
    vars: Vec<String>,
    weights: Vec<i64>,
}

#[derive(Serialize, Deserialize)]
struct BasisDoc {
    coeffs: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct CertDoc {
    ring: RingDoc,
    divisor: String,
    basis: Vec<BasisDoc>,
    unit: String,
    exponents: Vec<i64>,
    der0_exponents: Vec<i64>,
    method: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    provenance: Option<String>,
    version: u32,
}

impl Certificate {
    pub fn to_json(&self) -> String {
        let doc = CertDoc {
            ring: RingDoc {
                vars: self.ring.vars().to_vec(),
                weights: self.ring.weights().to_vec(),
            },
            divisor: self.divisor.to_string(),
            basis: self
                .basis
                .iter()
                .map(|d| BasisDoc {
                    coeffs: d.coeffs().iter().map(|c| c.to_string()).collect(),
                })
                .collect(),
            unit: self.unit.to_string(),
            exponents: self.exponents.clone(),
            der0_exponents: self.der0_exponents.clone(),
            method: self.method.as_str().to_string(),
            provenance: self.provenance.clone(),
            version: 1,
        };
        serde_json::to_string(&doc).expect("serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Certificate> {
        let doc: CertDoc = serde_json::from_str(text)
            .map_err(|e| Error::MalformedCertificate(e.to_string()))?;
        if doc.version != 1 {
            return Err(Error::MalformedCertificate(format!(
                "unsupported version {}",
                doc.version
            )));
        }
        let spec: Vec<String> = doc
            .ring
            .vars
            .iter()
            .zip(&doc.ring.weights)
            .map(|(v, w)| format!("{v}:{w}"))
            .collect();
        let ring = parse_ring(&spec.join(","))
            .map_err(|e| Error::MalformedCertificate(e.to_string()))?;
        let divisor = parse_poly(&doc.divisor, &ring)
            .map_err(|e| Error::MalformedCertificate(e.to_string()))?;
        let mut basis = Vec::with_capacity(doc.basis.len());
        for b in &doc.basis {
            let coeffs = b
                .coeffs
                .iter()
                .map(|c| {
                    parse_poly(c, &ring)
                        .map_err(|e| Error::MalformedCertificate(e.to_string()))
                })
                .collect::<Result<Vec<_>>>()?;
            basis.push(
                Derivation::new(&ring, coeffs)
                    .map_err(|e| Error::MalformedCertificate(e.to_string()))?,
            );
        }
        let unit: Q = doc
            .unit
            .parse()
            .map_err(|_| Error::MalformedCertificate(format!("bad unit {:?}", doc.unit)))?;
        Ok(Certificate {
            ring,
            divisor,
            basis,
            unit,
            exponents: doc.exponents,
            der0_exponents: doc.der0_exponents,
            method: Method::from_str(&doc.method)?,
            provenance: doc.provenance,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_derivation;
    use crate::poly::q_int;

    #[test]
    fn json_round_trip_is_byte_stable() {
        let ring = parse_ring("x:4,y:2,z:4").unwrap();
        let cert = Certificate {
            ring: ring.clone(),
            divisor: parse_poly("z*(x^2 - y^2*z)", &ring).unwrap(),
            basis: vec![
                Derivation::euler(&ring),
                parse_derivation("2*x; 2*y; 0", &ring).unwrap(),
            ],
            unit: q_int(4),
            exponents: vec![1, 3],
            der0_exponents: vec![3],
            method: Method::Wme,
            provenance: None,
        };
        let text = cert.to_json();
        let back = Certificate::from_json(&text).unwrap();
        assert_eq!(back, cert);
        assert_eq!(back.to_json(), text);
    }

    #[test]
    fn malformed_rejected() {
        assert!(Certificate::from_json("{").is_err());
        assert!(Certificate::from_json("{\"version\": 2}").is_err());
    }
}
