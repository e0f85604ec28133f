//! Weight normalization (well-forming) and search for a weight vector
//! making a set of polynomials weighted homogeneous.

use num_integer::Integer;

use crate::error::Result;
use crate::poly::Poly;
use crate::ring::RingRef;

/// Result of the well-forming reduction, with a human-readable log of the
/// steps applied.
#[derive(Debug, Clone)]
pub struct NormalizedWeights {
    pub ring: RingRef,
    pub steps: Vec<String>,
}

/// Divides all weights by their gcd, then repeatedly applies the reduction
/// "divide the weights other than index i by q = gcd of the weights
/// omitting i" until no index admits q > 1.
pub fn normalize_weights(ring: &RingRef) -> Result<NormalizedWeights> {
    let mut w: Vec<i64> = ring.weights().to_vec();
    let mut steps = Vec::new();
    let g = w.iter().fold(0i64, |a, &b| a.gcd(&b));
    if g > 1 {
        for wi in w.iter_mut() {
            *wi /= g;
        }
        steps.push(format!("divided all weights by {g}"));
    }
    loop {
        let mut changed = false;
        for i in 0..w.len() {
            let q = w
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .fold(0i64, |a, (_, &b)| a.gcd(&b));
            if q > 1 {
                for (j, wj) in w.iter_mut().enumerate() {
                    if j != i {
                        *wj /= q;
                    }
                }
                steps.push(format!("divided weights omitting index {i} by {q}"));
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    Ok(NormalizedWeights {
        ring: ring.with_weights(w)?,
        steps,
    })
}

/// Searches for the smallest positive integer weight vector making every
/// input polynomial weighted homogeneous (of a common degree when
/// `same_degree` is set). Smallest means minimal weight sum, ties broken
/// lexicographically. Returns None when no positive solution exists within
/// the search bound.
pub fn find_weight_vector(polys: &[Poly], same_degree: bool) -> Option<Vec<i64>> {
    let ring = polys.first()?.ring();
    let n = ring.num_vars();
    // Each constraint is an integer vector c with c . w = 0 required.
    let mut constraints: Vec<Vec<i64>> = Vec::new();
    let mut reference: Option<Vec<i64>> = None;
    for p in polys {
        if p.ring() != ring {
            return None;
        }
        let monos: Vec<Vec<i64>> = p
            .terms()
            .map(|(m, _)| m.0.iter().map(|&e| e as i64).collect())
            .collect();
        if monos.is_empty() {
            continue;
        }
        let base = &monos[0];
        for m in &monos[1..] {
            constraints.push(diff(m, base));
        }
        if same_degree {
            match &reference {
                None => reference = Some(base.clone()),
                Some(r) => constraints.push(diff(base, r)),
            }
        }
    }
    constraints.retain(|c| c.iter().any(|&x| x != 0));
    if constraints.is_empty() {
        return Some(vec![1; n]);
    }
    // Split the variables into connected components of the constraint
    // graph; unconstrained variables get weight 1.
    let comps = components(&constraints, n);
    let mut w = vec![1i64; n];
    for comp in comps {
        let local: Vec<Vec<i64>> = constraints
            .iter()
            .filter(|c| comp.iter().any(|&v| c[v] != 0))
            .map(|c| comp.iter().map(|&v| c[v]).collect())
            .collect();
        if local.is_empty() {
            continue;
        }
        let sol = minimal_positive_solution(&local, comp.len())?;
        for (k, &v) in comp.iter().enumerate() {
            w[v] = sol[k];
        }
    }
    Some(w)
}

fn diff(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn components(constraints: &[Vec<i64>], n: usize) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, i: usize) -> usize {
        if parent[i] != i {
            let r = find(parent, parent[i]);
            parent[i] = r;
        }
        parent[i]
    }
    for c in constraints {
        let involved: Vec<usize> = (0..n).filter(|&i| c[i] != 0).collect();
        for pair in involved.windows(2) {
            let a = find(&mut parent, pair[0]);
            let b = find(&mut parent, pair[1]);
            parent[a] = b;
        }
    }
    let mut buckets: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for i in 0..n {
        let r = find(&mut parent, i);
        buckets.entry(r).or_default().push(i);
    }
    buckets.into_values().collect()
}

/// Smallest positive integer solution of c . w = 0 for every constraint,
/// by increasing weight sum then lexicographic order. Bounded search; the
/// per-variable cap keeps the enumeration finite.
fn minimal_positive_solution(constraints: &[Vec<i64>], n: usize) -> Option<Vec<i64>> {
    const MAX_SUM: i64 = 120;
    let mut w = vec![1i64; n];
    for sum in n as i64..=MAX_SUM {
        if search(constraints, &mut w, 0, sum) {
            return Some(w.clone());
        }
    }
    None
}

fn search(constraints: &[Vec<i64>], w: &mut Vec<i64>, idx: usize, budget: i64) -> bool {
    let n = w.len();
    if idx == n {
        return budget == 0 && constraints.iter().all(|c| dot(c, w) == 0);
    }
    let remaining = (n - idx - 1) as i64;
    // each later variable needs at least 1
    for v in 1..=(budget - remaining) {
        w[idx] = v;
        if search(constraints, w, idx + 1, budget - v) {
            return true;
        }
    }
    w[idx] = 1;
    false
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_poly, parse_ring};

    #[test]
    fn normalize_common_factor() {
        let r = parse_ring("x:2,y:4,z:6").unwrap();
        let n = normalize_weights(&r).unwrap();
        assert_eq!(n.ring.weights(), &[1, 2, 3]);
    }

    #[test]
    fn normalize_fixpoint() {
        let r = parse_ring("x,y,z").unwrap();
        let n = normalize_weights(&r).unwrap();
        assert_eq!(n.ring.weights(), &[1, 1, 1]);
        assert!(n.steps.is_empty());
    }

    #[test]
    fn normalize_well_forming() {
        // (1,2,2): q = gcd(2,2) = 2 at index 0 reduces to (1,1,1)
        let r = parse_ring("x:1,y:2,z:2").unwrap();
        let n = normalize_weights(&r).unwrap();
        assert_eq!(n.ring.weights(), &[1, 1, 1]);
        // idempotent
        let again = normalize_weights(&n.ring).unwrap();
        assert_eq!(again.ring.weights(), &[1, 1, 1]);
    }

    #[test]
    fn weight_search_linear() {
        let r = parse_ring("x,y").unwrap();
        let f = parse_poly("x + y", &r).unwrap();
        assert_eq!(find_weight_vector(&[f], false), Some(vec![1, 1]));
    }

    #[test]
    fn weight_search_whitney() {
        // x^2 - y^2 z has a two-parameter solution cone; the minimal
        // positive point is (2, 1, 2), and the scaled (4, 2, 4) used
        // elsewhere also validates.
        let r = parse_ring("x,y,z").unwrap();
        let f = parse_poly("x^2 - y^2*z", &r).unwrap();
        let w = find_weight_vector(&[f.clone()], false).unwrap();
        assert_eq!(w, vec![2, 1, 2]);
        let wr = r.with_weights(w).unwrap();
        assert!(f.cast_into(&wr).unwrap().is_weighted_homogeneous());
        let scaled = r.with_weights(vec![4, 2, 4]).unwrap();
        assert!(f.cast_into(&scaled).unwrap().is_weighted_homogeneous());
    }

    #[test]
    fn weight_search_same_degree() {
        // x^2 and y^3 individually homogeneous for any weights; equal
        // degree forces (3, 2)
        let r = parse_ring("x,y").unwrap();
        let a = parse_poly("x^2", &r).unwrap();
        let b = parse_poly("y^3", &r).unwrap();
        assert_eq!(
            find_weight_vector(&[a.clone(), b.clone()], true),
            Some(vec![3, 2])
        );
        assert_eq!(find_weight_vector(&[a, b], false), Some(vec![1, 1]));
    }

    #[test]
    fn weight_search_no_solution() {
        let r = parse_ring("x,y").unwrap();
        // x^2 + x y + x forces w0 impossible: degrees 2w0, w0+w1, w0 equal
        // means w1 = 0 and w0 = 0
        let f = parse_poly("x^2 + x*y + x", &r).unwrap();
        assert_eq!(find_weight_vector(&[f], false), None);
    }
}
