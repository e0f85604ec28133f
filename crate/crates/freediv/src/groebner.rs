//! Buchberger Groebner bases with division tracking, used as the
//! independent membership and codimension oracle.

use std::cmp::Ordering;

use num_traits::One;

use crate::error::{Error, Result};
use crate::poly::{Poly, Q};
use crate::ring::{Monomial, RingRef};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MonomialOrder {
    /// Graded reverse lexicographic (default; least intermediate blowup).
    GrevLex,
    /// Graded lexicographic.
    GrLex,
    /// Weighted degree first, then lexicographic.
    WGrLex(Vec<i64>),
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::GrevLex => {
                let da = a.total_degree();
                let db = b.total_degree();
                if da != db {
                    return da.cmp(&db);
                }
                // last nonzero entry of a - b negative means a > b
                for i in (0..a.0.len()).rev() {
                    if a.0[i] != b.0[i] {
                        return b.0[i].cmp(&a.0[i]);
                    }
                }
                Ordering::Equal
            }
            MonomialOrder::GrLex => {
                let da = a.total_degree();
                let db = b.total_degree();
                if da != db {
                    return da.cmp(&db);
                }
                a.0.cmp(&b.0)
            }
            MonomialOrder::WGrLex(w) => {
                let da = a.weighted_degree(w);
                let db = b.weighted_degree(w);
                if da != db {
                    return da.cmp(&db);
                }
                a.0.cmp(&b.0)
            }
        }
    }
}

/// Hard caps for Buchberger; overruns surface as ResourceLimit, never as a
/// wrong answer.
#[derive(Debug, Clone, Copy)]
pub struct Limits {
    pub max_basis: usize,
    pub max_degree: i64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_basis: 600,
            max_degree: 60,
        }
    }
}

pub fn leading_monomial<'a>(f: &'a Poly, order: &MonomialOrder) -> Option<(&'a Monomial, &'a Q)> {
    f.terms().max_by(|(a, _), (b, _)| order.cmp(a, b))
}

/// A reduced Groebner basis together with each element's representation in
/// terms of the original generators.
#[derive(Debug, Clone)]
pub struct GroebnerBasis {
    pub ring: RingRef,
    pub order: MonomialOrder,
    pub generators: Vec<Poly>,
    /// reps[i] satisfies generators[i] = sum_j reps[i][j] * input[j].
    pub reps: Vec<Vec<Poly>>,
    pub num_inputs: usize,
}

#[derive(Clone)]
struct Tracked {
    poly: Poly,
    rep: Vec<Poly>,
}

fn divide_tracked(
    f: &Poly,
    basis: &[Tracked],
    order: &MonomialOrder,
    ninputs: usize,
) -> Result<(Poly, Vec<Poly>)> {
    // returns (remainder, cofactors over the ORIGINAL inputs)
    let ring = f.ring().clone();
    let mut rem = Poly::zero(&ring);
    let mut work = f.clone();
    let mut reps = vec![Poly::zero(&ring); ninputs];
    'outer: while let Some((lm, lc)) = leading_monomial(&work, order) {
        let lm = lm.clone();
        let lc = lc.clone();
        for t in basis {
            let (blm, blc) = leading_monomial(&t.poly, order).expect("nonzero basis");
            if let Some(q) = lm.checked_div(blm) {
                let c = &lc / blc;
                let step = t.poly.mul_monomial(&q).scale(&c);
                work = work.sub(&step)?;
                for (r, tr) in reps.iter_mut().zip(&t.rep) {
                    *r = r.add(&tr.mul_monomial(&q).scale(&c))?;
                }
                continue 'outer;
            }
        }
        rem = rem.add(&Poly::monomial(&ring, lm.clone(), lc.clone()))?;
        work = work.sub(&Poly::monomial(&ring, lm, lc))?;
    }
    Ok((rem, reps))
}

/// Multivariate division: f = sum cofactors[i] * divisors[i] + remainder,
/// no remainder term divisible by any divisor's leading monomial.
pub fn divide(
    f: &Poly,
    divisors: &[Poly],
    order: &MonomialOrder,
) -> Result<(Poly, Vec<Poly>)> {
    let ring = f.ring().clone();
    let tracked: Vec<Tracked> = divisors
        .iter()
        .enumerate()
        .filter(|(_, p)| !p.is_zero())
        .map(|(i, p)| {
            let mut rep = vec![Poly::zero(&ring); divisors.len()];
            rep[i] = Poly::one(&ring);
            Tracked {
                poly: p.clone(),
                rep,
            }
        })
        .collect();
    divide_tracked(f, &tracked, order, divisors.len())
}

pub fn buchberger(gens: &[Poly], order: MonomialOrder, limits: Limits) -> Result<GroebnerBasis> {
    let ring = gens
        .first()
        .ok_or(Error::ZeroPolynomial)?
        .ring()
        .clone();
    let n_inputs = gens.len();
    let mut basis: Vec<Tracked> = Vec::new();
    for (i, g) in gens.iter().enumerate() {
        if g.ring() != &ring {
            return Err(Error::RingMismatch);
        }
        if g.is_zero() {
            continue;
        }
        let mut rep = vec![Poly::zero(&ring); n_inputs];
        rep[i] = Poly::one(&ring);
        basis.push(Tracked {
            poly: g.clone(),
            rep,
        });
    }
    if basis.is_empty() {
        return Err(Error::ZeroPolynomial);
    }
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            pairs.push((i, j));
        }
    }
    while let Some((i, j)) = pairs.pop() {
        let (lmi, lci) = {
            let (m, c) = leading_monomial(&basis[i].poly, &order).unwrap();
            (m.clone(), c.clone())
        };
        let (lmj, lcj) = {
            let (m, c) = leading_monomial(&basis[j].poly, &order).unwrap();
            (m.clone(), c.clone())
        };
        let lcm = lmi.lcm(&lmj);
        // product criterion
        if lcm == lmi.mul(&lmj) {
            continue;
        }
        let qi = lcm.checked_div(&lmi).unwrap();
        let qj = lcm.checked_div(&lmj).unwrap();
        let si = basis[i].poly.mul_monomial(&qi).scale(&(Q::one() / &lci));
        let sj = basis[j].poly.mul_monomial(&qj).scale(&(Q::one() / &lcj));
        let spoly = si.sub(&sj)?;
        if spoly.is_zero() {
            continue;
        }
        let mut srep = vec![Poly::zero(&ring); n_inputs];
        for k in 0..n_inputs {
            let a = basis[i].rep[k]
                .mul_monomial(&qi)
                .scale(&(Q::one() / &lci));
            let b = basis[j].rep[k]
                .mul_monomial(&qj)
                .scale(&(Q::one() / &lcj));
            srep[k] = a.sub(&b)?;
        }
        let (rem, cof) = divide_tracked(&spoly, &basis, &order, n_inputs)?;
        if rem.is_zero() {
            continue;
        }
        if let Some(d) = rem.total_degree() {
            if d > limits.max_degree {
                return Err(Error::ResourceLimit(format!(
                    "basis element degree {d} exceeds cap"
                )));
            }
        }
        let mut rep = srep;
        for (k, r) in rep.iter_mut().enumerate() {
            *r = r.sub(&cof[k])?;
        }
        let new_idx = basis.len();
        if new_idx >= limits.max_basis {
            return Err(Error::ResourceLimit(format!(
                "basis size {new_idx} exceeds cap"
            )));
        }
        for k in 0..new_idx {
            pairs.push((k, new_idx));
        }
        basis.push(Tracked { poly: rem, rep });
    }
    // minimalize: drop elements whose leading monomial is divisible by
    // another's
    let mut keep = vec![true; basis.len()];
    for i in 0..basis.len() {
        if !keep[i] {
            continue;
        }
        let lmi = leading_monomial(&basis[i].poly, &order).unwrap().0.clone();
        for j in 0..basis.len() {
            if i == j || !keep[j] {
                continue;
            }
            let lmj = leading_monomial(&basis[j].poly, &order).unwrap().0;
            if lmi.checked_div(lmj).is_some() && (lmj != &lmi || j < i) {
                keep[i] = false;
                break;
            }
        }
    }
    let minimal: Vec<Tracked> = basis
        .into_iter()
        .zip(keep)
        .filter_map(|(t, k)| if k { Some(t) } else { None })
        .collect();
    // fully reduce each element against the others and make it monic
    let mut reduced: Vec<Tracked> = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<Tracked> = minimal
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, t)| t.clone())
            .collect();
        let (rem, cof) = divide_tracked(&minimal[i].poly, &others, &order, n_inputs)?;
        let mut rep = minimal[i].rep.clone();
        for (k, r) in rep.iter_mut().enumerate() {
            *r = r.sub(&cof[k])?;
        }
        let lc = leading_monomial(&rem, &order).unwrap().1.clone();
        let inv = Q::one() / lc;
        reduced.push(Tracked {
            poly: rem.scale(&inv),
            rep: rep.iter().map(|r| r.scale(&inv)).collect(),
        });
    }
    // canonical order for determinism
    reduced.sort_by(|a, b| {
        let la = leading_monomial(&a.poly, &order).unwrap().0;
        let lb = leading_monomial(&b.poly, &order).unwrap().0;
        order.cmp(la, lb)
    });
    Ok(GroebnerBasis {
        ring,
        order,
        generators: reduced.iter().map(|t| t.poly.clone()).collect(),
        reps: reduced.into_iter().map(|t| t.rep).collect(),
        num_inputs: n_inputs,
    })
}

/// Remainder of f against the basis, plus cofactors over the ORIGINAL
/// generators: f = sum_j cofactors[j] * input[j] + remainder.
pub fn normal_form(f: &Poly, gb: &GroebnerBasis) -> Result<(Poly, Vec<Poly>)> {
    let tracked: Vec<Tracked> = gb
        .generators
        .iter()
        .zip(&gb.reps)
        .map(|(p, r)| Tracked {
            poly: p.clone(),
            rep: r.clone(),
        })
        .collect();
    let (rem, cof) = divide_tracked(f, &tracked, &gb.order, gb.num_inputs)?;
    Ok((rem, cof))
}

/// Cofactors h with f = sum h_j gens_j, when f lies in the ideal.
pub fn ideal_membership(f: &Poly, gens: &[Poly], limits: Limits) -> Result<Option<Vec<Poly>>> {
    let gb = buchberger(gens, MonomialOrder::GrevLex, limits)?;
    let (rem, cof) = normal_form(f, &gb)?;
    if rem.is_zero() {
        debug_assert!({
            let mut acc = Poly::zero(f.ring());
            for (h, g) in cof.iter().zip(gens) {
                acc = acc.add(&h.mul(g)?)?;
            }
            acc == *f
        });
        Ok(Some(cof))
    } else {
        Ok(None)
    }
}

/// Codimension of V(gens): number of variables minus the maximal size of a
/// variable subset meeting no leading monomial's support.
pub fn ideal_codim(gens: &[Poly], limits: Limits) -> Result<usize> {
    let nonzero: Vec<Poly> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    if nonzero.is_empty() {
        return Ok(0);
    }
    let ring = nonzero[0].ring().clone();
    let n = ring.num_vars();
    let gb = buchberger(&nonzero, MonomialOrder::GrevLex, limits)?;
    let lms: Vec<Monomial> = gb
        .generators
        .iter()
        .map(|g| leading_monomial(g, &gb.order).unwrap().0.clone())
        .collect();
    if lms.iter().any(|m| m.is_one()) {
        return Ok(n);
    }
    let mut best = 0usize;
    for mask in 0u32..(1 << n) {
        let size = mask.count_ones() as usize;
        if size <= best {
            continue;
        }
        let independent = lms.iter().all(|m| {
            // support not contained in the subset
            m.0.iter()
                .enumerate()
                .any(|(i, &e)| e > 0 && mask & (1 << i) == 0)
        });
        if independent {
            best = size;
        }
    }
    Ok(n - best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_poly, parse_ring};

    fn limits() -> Limits {
        Limits::default()
    }

    #[test]
    fn already_reduced() {
        let r = parse_ring("x,y").unwrap();
        let gens = vec![
            parse_poly("x", &r).unwrap(),
            parse_poly("y", &r).unwrap(),
        ];
        let gb = buchberger(&gens, MonomialOrder::GrevLex, limits()).unwrap();
        assert_eq!(gb.generators.len(), 2);
    }

    #[test]
    fn edge_ideal_is_its_own_basis() {
        let r = parse_ring("x,y,z").unwrap();
        let gens = vec![
            parse_poly("x*y", &r).unwrap(),
            parse_poly("x*z", &r).unwrap(),
            parse_poly("y*z", &r).unwrap(),
        ];
        let gb = buchberger(&gens, MonomialOrder::GrevLex, limits()).unwrap();
        let mut lead: Vec<String> = gb.generators.iter().map(|g| g.to_string()).collect();
        lead.sort();
        assert_eq!(lead, vec!["x*y", "x*z", "y*z"]);
    }

    #[test]
    fn membership_with_cofactors() {
        let r = parse_ring("x:4,y:2,z:4").unwrap();
        let gens = vec![
            parse_poly("x*y", &r).unwrap(),
            parse_poly("x*z", &r).unwrap(),
            parse_poly("y*z", &r).unwrap(),
        ];
        let f = parse_poly("x^2 - y^2*z", &r).unwrap();
        let z = parse_poly("z", &r).unwrap();
        let zf = z.mul(&f).unwrap();
        let cof = ideal_membership(&zf, &gens, limits()).unwrap().unwrap();
        let mut acc = Poly::zero(&r);
        for (h, g) in cof.iter().zip(&gens) {
            acc = acc.add(&h.mul(g).unwrap()).unwrap();
        }
        assert_eq!(acc, zf);
        // f itself is not in the ideal
        assert!(ideal_membership(&f, &gens, limits()).unwrap().is_none());
    }

    #[test]
    fn nonmember_remainder() {
        let r = parse_ring("x,y").unwrap();
        let gens = vec![parse_poly("y", &r).unwrap()];
        let gb = buchberger(&gens, MonomialOrder::GrevLex, limits()).unwrap();
        let (rem, _) = normal_form(&parse_poly("x", &r).unwrap(), &gb).unwrap();
        assert_eq!(rem, parse_poly("x", &r).unwrap());
    }

    #[test]
    fn codim_cases() {
        let r = parse_ring("x,y,z").unwrap();
        let edge = vec![
            parse_poly("x*y", &r).unwrap(),
            parse_poly("x*z", &r).unwrap(),
            parse_poly("y*z", &r).unwrap(),
        ];
        assert_eq!(ideal_codim(&edge, limits()).unwrap(), 2);
        let principal = vec![parse_poly("x", &r).unwrap()];
        assert_eq!(ideal_codim(&principal, limits()).unwrap(), 1);
        let zero = vec![Poly::zero(&r)];
        assert_eq!(ideal_codim(&zero, limits()).unwrap(), 0);
        let unit = vec![parse_poly("x + 1", &r).unwrap(), parse_poly("x", &r).unwrap()];
        assert_eq!(ideal_codim(&unit, limits()).unwrap(), 3);
    }

    #[test]
    fn katsura_like_nontrivial_spair() {
        // (x^2 - y, x*y - z): Buchberger must add new elements
        let r = parse_ring("x,y,z").unwrap();
        let gens = vec![
            parse_poly("x^2 - y", &r).unwrap(),
            parse_poly("x*y - z", &r).unwrap(),
        ];
        let gb = buchberger(&gens, MonomialOrder::GrevLex, limits()).unwrap();
        // y^2 - x z lies in the ideal
        let f = parse_poly("y^2 - x*z", &r).unwrap();
        let (rem, _) = normal_form(&f, &gb).unwrap();
        assert!(rem.is_zero());
        // rerun is byte-identical
        let gb2 = buchberger(&gens, MonomialOrder::GrevLex, limits()).unwrap();
        assert_eq!(gb.generators, gb2.generators);
    }

    #[test]
    fn resource_limit_fires() {
        let r = parse_ring("x,y,z").unwrap();
        let gens = vec![
            parse_poly("x^5 + y^4*z - x*y*z^2 + 1", &r).unwrap(),
            parse_poly("x^2*y^3 - z^4 + x", &r).unwrap(),
            parse_poly("y^5 - x^3*z + y", &r).unwrap(),
        ];
        let tight = Limits {
            max_basis: 4,
            max_degree: 6,
        };
        match buchberger(&gens, MonomialOrder::GrevLex, tight) {
            Err(Error::ResourceLimit(_)) => {}
            Ok(gb) => assert!(gb.generators.len() <= 4),
            Err(e) => panic!("unexpected error {e:?}"),
        }
    }
}
