//! Syzygy computation and the independent freeness oracle: Der(f) is
//! recovered from scratch as the syzygy module of (grad f, f).

use num_traits::One;

use crate::cert::{Certificate, Method};
use crate::deriv::Derivation;
use crate::error::{Error, Result};
use crate::groebner::{buchberger, divide, leading_monomial, Limits, MonomialOrder};
use crate::poly::{Poly, Q};
use crate::ring::{Monomial, RingRef};
use crate::saito::{saito_check_with, CheckResult};

/// Free-module element: one polynomial per component.
pub type VecPoly = Vec<Poly>;

fn vec_zero(ring: &RingRef, m: usize) -> VecPoly {
    vec![Poly::zero(ring); m]
}

fn vec_is_zero(v: &VecPoly) -> bool {
    v.iter().all(|p| p.is_zero())
}

fn vec_sub(a: &VecPoly, b: &VecPoly) -> Result<VecPoly> {
    a.iter().zip(b).map(|(x, y)| x.sub(y)).collect()
}

fn vec_scale_mono(v: &VecPoly, m: &Monomial, c: &Q) -> VecPoly {
    v.iter().map(|p| p.mul_monomial(m).scale(c)).collect()
}

/// Term-over-position leading term: the largest monomial across all
/// components under the ring order, lower component winning ties.
fn mod_lead<'a>(
    v: &'a VecPoly,
    order: &MonomialOrder,
) -> Option<(usize, &'a Monomial, &'a Q)> {
    let mut best: Option<(usize, &Monomial, &Q)> = None;
    for (k, p) in v.iter().enumerate() {
        if let Some((m, c)) = leading_monomial(p, order) {
            let better = match &best {
                None => true,
                Some((_, bm, _)) => order.cmp(m, bm) == std::cmp::Ordering::Greater,
            };
            if better {
                best = Some((k, m, c));
            }
        }
    }
    best
}

/// Full module normal form of v against basis.
pub fn module_normal_form(
    v: &VecPoly,
    basis: &[VecPoly],
    order: &MonomialOrder,
) -> Result<VecPoly> {
    let ring = v
        .iter()
        .map(|p| p.ring().clone())
        .next()
        .expect("nonempty vector");
    let m = v.len();
    let mut rem = vec_zero(&ring, m);
    let mut work = v.clone();
    'outer: while let Some((k, lm, lc)) = mod_lead(&work, order) {
        let (k, lm, lc) = (k, lm.clone(), lc.clone());
        for b in basis {
            if let Some((bk, bm, bc)) = mod_lead(b, order) {
                if bk == k {
                    if let Some(q) = lm.checked_div(bm) {
                        let c = &lc / bc;
                        work = vec_sub(&work, &vec_scale_mono(b, &q, &c))?;
                        continue 'outer;
                    }
                }
            }
        }
        let t = Poly::monomial(&ring, lm.clone(), lc.clone());
        rem[k] = rem[k].add(&t)?;
        work[k] = work[k].sub(&t)?;
    }
    Ok(rem)
}

/// Buchberger for submodules of a free module (no tracking); returns a
/// minimal, interreduced, monic basis in deterministic order.
pub fn module_buchberger(
    gens: &[VecPoly],
    order: &MonomialOrder,
    limits: Limits,
) -> Result<Vec<VecPoly>> {
    let mut basis: Vec<VecPoly> = gens.iter().filter(|v| !vec_is_zero(v)).cloned().collect();
    if basis.is_empty() {
        return Ok(Vec::new());
    }
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            pairs.push((i, j));
        }
    }
    while let Some((i, j)) = pairs.pop() {
        let (ki, lmi, lci) = {
            let (k, m, c) = mod_lead(&basis[i], order).unwrap();
            (k, m.clone(), c.clone())
        };
        let (kj, lmj, lcj) = {
            let (k, m, c) = mod_lead(&basis[j], order).unwrap();
            (k, m.clone(), c.clone())
        };
        if ki != kj {
            continue;
        }
        let lcm = lmi.lcm(&lmj);
        let qi = lcm.checked_div(&lmi).unwrap();
        let qj = lcm.checked_div(&lmj).unwrap();
        let s = vec_sub(
            &vec_scale_mono(&basis[i], &qi, &(Q::one() / &lci)),
            &vec_scale_mono(&basis[j], &qj, &(Q::one() / &lcj)),
        )?;
        let rem = module_normal_form(&s, &basis, order)?;
        if vec_is_zero(&rem) {
            continue;
        }
        if let Some(d) = rem.iter().filter_map(|p| p.total_degree()).max() {
            if d > limits.max_degree {
                return Err(Error::ResourceLimit(format!(
                    "module basis degree {d} exceeds cap"
                )));
            }
        }
        let new_idx = basis.len();
        if new_idx >= limits.max_basis {
            return Err(Error::ResourceLimit(format!(
                "module basis size {new_idx} exceeds cap"
            )));
        }
        for k in 0..new_idx {
            pairs.push((k, new_idx));
        }
        basis.push(rem);
    }
    // minimalize by leading-term divisibility within a component
    let mut keep = vec![true; basis.len()];
    for i in 0..basis.len() {
        if !keep[i] {
            continue;
        }
        let (ki, lmi, _) = mod_lead(&basis[i], order).unwrap();
        let lmi = lmi.clone();
        for j in 0..basis.len() {
            if i == j || !keep[j] {
                continue;
            }
            let (kj, lmj, _) = mod_lead(&basis[j], order).unwrap();
            if ki == kj && lmi.checked_div(lmj).is_some() && (lmj != &lmi || j < i) {
                keep[i] = false;
                break;
            }
        }
    }
    let minimal: Vec<VecPoly> = basis
        .into_iter()
        .zip(keep)
        .filter_map(|(v, k)| if k { Some(v) } else { None })
        .collect();
    let mut reduced = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<VecPoly> = minimal
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, v)| v.clone())
            .collect();
        let rem = module_normal_form(&minimal[i], &others, order)?;
        let lc = mod_lead(&rem, order).unwrap().2.clone();
        let inv = Q::one() / lc;
        reduced.push(rem.iter().map(|p| p.scale(&inv)).collect::<VecPoly>());
    }
    reduced.sort_by(|a, b| {
        let (ka, ma, _) = mod_lead(a, order).unwrap();
        let (kb, mb, _) = mod_lead(b, order).unwrap();
        order.cmp(ma, mb).then(kb.cmp(&ka))
    });
    Ok(reduced)
}

/// Generators of the syzygy module of a row of polynomials: every returned
/// vector dots the row to zero, and together they generate all relations.
/// Schreyer-style: S-pair syzygies of the Groebner basis mapped back
/// through the change of basis, plus the rows of I - B*A.
pub fn syzygies(inputs: &[Poly], limits: Limits) -> Result<Vec<VecPoly>> {
    let ring = inputs
        .first()
        .ok_or(Error::ZeroPolynomial)?
        .ring()
        .clone();
    let m = inputs.len();
    let order = MonomialOrder::GrevLex;
    let gb = buchberger(inputs, order.clone(), limits)?;
    let s = gb.generators.len();
    // B: inputs in terms of the basis
    let mut b_rows: Vec<Vec<Poly>> = Vec::with_capacity(m);
    for f in inputs {
        let (rem, cof) = divide(f, &gb.generators, &order)?;
        debug_assert!(rem.is_zero());
        b_rows.push(cof);
    }
    let mut out: Vec<VecPoly> = Vec::new();
    // tau_ij: S-pair relations among basis elements, pushed down to inputs
    for i in 0..s {
        for j in i + 1..s {
            let (lmi, lci) = {
                let (mm, c) = leading_monomial(&gb.generators[i], &order).unwrap();
                (mm.clone(), c.clone())
            };
            let (lmj, lcj) = {
                let (mm, c) = leading_monomial(&gb.generators[j], &order).unwrap();
                (mm.clone(), c.clone())
            };
            let lcm = lmi.lcm(&lmj);
            let qi = lcm.checked_div(&lmi).unwrap();
            let qj = lcm.checked_div(&lmj).unwrap();
            let si = gb.generators[i]
                .mul_monomial(&qi)
                .scale(&(Q::one() / &lci));
            let sj = gb.generators[j]
                .mul_monomial(&qj)
                .scale(&(Q::one() / &lcj));
            let spoly = si.sub(&sj)?;
            let (rem, cof) = divide(&spoly, &gb.generators, &order)?;
            debug_assert!(rem.is_zero());
            // coefficients over basis elements
            let mut tau = vec![Poly::zero(&ring); s];
            tau[i] = Poly::monomial(&ring, qi, Q::one() / &lci);
            tau[j] = tau[j].sub(&Poly::monomial(&ring, qj, Q::one() / &lcj))?;
            for (k, c) in cof.iter().enumerate() {
                tau[k] = tau[k].sub(c)?;
            }
            // push down: syz over inputs = tau * A where A = gb.reps
            let mut over_inputs = vec_zero(&ring, m);
            for (t, rep) in tau.iter().zip(&gb.reps) {
                if t.is_zero() {
                    continue;
                }
                for (k, r) in rep.iter().enumerate() {
                    over_inputs[k] = over_inputs[k].add(&t.mul(r)?)?;
                }
            }
            if !vec_is_zero(&over_inputs) {
                out.push(over_inputs);
            }
        }
    }
    // rows of I - B*A
    for (k, brow) in b_rows.iter().enumerate() {
        let mut row = vec_zero(&ring, m);
        row[k] = Poly::one(&ring);
        for (bi, rep) in brow.iter().zip(&gb.reps) {
            if bi.is_zero() {
                continue;
            }
            for (l, r) in rep.iter().enumerate() {
                row[l] = row[l].sub(&bi.mul(r)?)?;
            }
        }
        if !vec_is_zero(&row) {
            out.push(row);
        }
    }
    debug_assert!(out.iter().all(|v| {
        let mut acc = Poly::zero(&ring);
        for (g, f) in v.iter().zip(inputs) {
            acc = acc.add(&g.mul(f).unwrap()).unwrap();
        }
        acc.is_zero()
    }));
    Ok(out)
}

/// A minimal weighted homogeneous generating set of Der(f), computed as
/// the syzygy module of (df/dx_0, ..., df/dx_n, f) projected to the
/// derivation coordinates.
pub fn der_generators(f: &Poly, limits: Limits) -> Result<Vec<Derivation>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !f.is_reduced()? {
        return Err(Error::NotReduced);
    }
    let ring = f.ring().clone();
    let n = ring.num_vars();
    let mut inputs = Vec::with_capacity(n + 1);
    for i in 0..n {
        inputs.push(f.partial_derivative(i)?);
    }
    inputs.push(f.clone());
    let raw = syzygies(&inputs, limits)?;
    // split into weighted homogeneous pieces; for homogeneous f every piece
    // of a syzygy is again a syzygy
    let homogeneous_input = f.is_weighted_homogeneous();
    let mut candidates: Vec<(i64, VecPoly)> = Vec::new();
    for v in raw {
        if homogeneous_input {
            for (deg, piece) in split_graded(&v, &ring) {
                candidates.push((deg, piece));
            }
        } else {
            let deg = v
                .iter()
                .enumerate()
                .filter_map(|(k, p)| p.wdeg().finite().map(|d| d + shift(&ring, k)))
                .max()
                .unwrap_or(0);
            candidates.push((deg, v));
        }
    }
    candidates.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| vec_key(&a.1).cmp(&vec_key(&b.1))));
    candidates.dedup_by(|a, b| a.1 == b.1);
    // greedy minimalization: keep a candidate only if it is not in the
    // submodule generated by those already kept
    let order = MonomialOrder::GrevLex;
    let mut kept: Vec<VecPoly> = Vec::new();
    let mut kept_gb: Vec<VecPoly> = Vec::new();
    for (_, v) in candidates {
        if vec_is_zero(&v) {
            continue;
        }
        if !kept.is_empty() {
            let rem = module_normal_form(&v, &kept_gb, &order)?;
            if vec_is_zero(&rem) {
                continue;
            }
        }
        kept.push(v);
        kept_gb = module_buchberger(&kept, &order, limits)?;
    }
    let mut out = Vec::with_capacity(kept.len());
    for v in kept {
        let coeffs: Vec<Poly> = v[..n].to_vec();
        let d = Derivation::new(&ring, coeffs)?;
        if d.is_zero() {
            continue;
        }
        debug_assert!(d.in_der(f)?.member);
        out.push(d);
    }
    Ok(out)
}

/// Grading shift of syzygy component k for the row (grad f, f):
/// derivation slots carry 1 - w_k, the trailing f slot carries 1.
fn shift(ring: &RingRef, k: usize) -> i64 {
    if k < ring.num_vars() {
        1 - ring.weight(k)
    } else {
        1
    }
}

fn split_graded(v: &VecPoly, ring: &RingRef) -> Vec<(i64, VecPoly)> {
    let m = v.len();
    let mut map: std::collections::BTreeMap<i64, VecPoly> = Default::default();
    for (k, p) in v.iter().enumerate() {
        for (d, piece) in p.graded_pieces() {
            let e = d + shift(ring, k);
            let entry = map.entry(e).or_insert_with(|| vec_zero(ring, m));
            entry[k] = entry[k].add(&piece).expect("same ring");
        }
    }
    map.into_iter().collect()
}

fn vec_key(v: &VecPoly) -> String {
    v.iter()
        .map(|p| p.to_string())
        .collect::<Vec<_>>()
        .join(";")
}

/// Independent freeness verdict: free iff Der(f) has exactly n+1 minimal
/// generators whose Saito determinant is a unit multiple of f.
#[derive(Debug, Clone)]
pub struct OracleOutcome {
    pub free: bool,
    pub degrees: Vec<i64>,
    pub certificate: Option<Certificate>,
    pub diagnostic: String,
}

pub fn is_free_oracle(f: &Poly, limits: Limits) -> Result<OracleOutcome> {
    let gens = der_generators(f, limits)?;
    let n = f.ring().num_vars();
    let mut degrees: Vec<i64> = gens
        .iter()
        .filter_map(|d| d.wdeg().degree.finite())
        .collect();
    degrees.sort_unstable();
    if gens.len() != n {
        return Ok(OracleOutcome {
            free: false,
            degrees,
            certificate: None,
            diagnostic: format!(
                "Der(f) needs {} minimal generators, free would need {n}",
                gens.len()
            ),
        });
    }
    match saito_check_with(f, &gens, Method::Oracle, None)? {
        CheckResult::Certified(cert) => Ok(OracleOutcome {
            free: true,
            degrees,
            certificate: Some(cert),
            diagnostic: "free".into(),
        }),
        CheckResult::Failed(msg) => Ok(OracleOutcome {
            free: false,
            degrees,
            certificate: None,
            diagnostic: msg,
        }),
    }
}

/// True when d lies in the submodule of the free module S^n generated by
/// the coefficient vectors of gens.
pub fn in_derivation_span(
    gens: &[Derivation],
    d: &Derivation,
    limits: Limits,
) -> Result<bool> {
    let order = MonomialOrder::GrevLex;
    let vectors: Vec<VecPoly> = gens.iter().map(|g| g.coeffs().to_vec()).collect();
    let gb = module_buchberger(&vectors, &order, limits)?;
    let rem = module_normal_form(&d.coeffs().to_vec(), &gb, &order)?;
    Ok(vec_is_zero(&rem))
}
