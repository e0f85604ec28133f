use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::ring::{Monomial, RingRef, WeightedDegree};

pub type Q = BigRational;

pub fn q_int(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_ratio(p: i64, q: i64) -> Q {
    Q::new(BigInt::from(p), BigInt::from(q))
}

/// Sparse multivariate polynomial over the rationals. Terms are stored in
/// ascending canonical order; zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    ring: RingRef,
    terms: BTreeMap<Monomial, Q>,
}

impl Poly {
    pub fn zero(ring: &RingRef) -> Self {
        Poly {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ring: &RingRef, c: Q) -> Self {
        let mut p = Poly::zero(ring);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(ring.num_vars()), c);
        }
        p
    }

    pub fn one(ring: &RingRef) -> Self {
        Poly::constant(ring, Q::one())
    }

    pub fn var(ring: &RingRef, i: usize) -> Self {
        let mut p = Poly::zero(ring);
        p.terms.insert(Monomial::var(ring.num_vars(), i), Q::one());
        p
    }

    pub fn monomial(ring: &RingRef, m: Monomial, c: Q) -> Self {
        let mut p = Poly::zero(ring);
        if !c.is_zero() {
            assert_eq!(m.0.len(), ring.num_vars());
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms(ring: &RingRef, terms: impl IntoIterator<Item = (Monomial, Q)>) -> Self {
        let mut p = Poly::zero(ring);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Q)> {
        self.terms.iter()
    }

    /// Terms in canonical display order (graded-lex descending).
    pub fn terms_desc(&self) -> impl Iterator<Item = (&Monomial, &Q)> {
        self.terms.iter().rev()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    /// Leading term in the canonical (graded-lex) order.
    pub fn leading_term(&self) -> Option<(&Monomial, &Q)> {
        self.terms.iter().next_back()
    }

    pub fn as_constant(&self) -> Option<Q> {
        if self.is_zero() {
            return Some(Q::zero());
        }
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            if m.is_one() {
                return Some(c.clone());
            }
        }
        None
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    fn add_term(&mut self, m: Monomial, c: Q) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    fn check_ring(&self, other: &Poly) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn add(&self, other: &Poly) -> Result<Poly> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Poly) -> Result<Poly> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Poly {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -c.clone();
        }
        out
    }

    pub fn mul(&self, other: &Poly) -> Result<Poly> {
        self.check_ring(other)?;
        let mut out = Poly::zero(&self.ring);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Q) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.ring);
        }
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v = &*v * c;
        }
        out
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Poly {
        let mut out = Poly::zero(&self.ring);
        for (ma, ca) in &self.terms {
            out.terms.insert(ma.mul(m), ca.clone());
        }
        out
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut out = Poly::one(&self.ring);
        for _ in 0..e {
            out = out.mul(self).expect("same ring");
        }
        out
    }

    /// Quotient q with self = q * other, or an error when the division is
    /// not exact. Early abort is sound: any partial remainder stays a
    /// multiple of `other` when the division is exact.
    pub fn exact_divide(&self, other: &Poly) -> Result<Poly> {
        self.check_ring(other)?;
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (lm, lc) = {
            let (m, c) = other.leading_term().unwrap();
            (m.clone(), c.clone())
        };
        let mut rem = self.clone();
        let mut quot = Poly::zero(&self.ring);
        while let Some((rm, rc)) = rem.leading_term() {
            let qm = rm.checked_div(&lm).ok_or_else(|| {
                Error::NotDivisible(self.to_string(), other.to_string())
            })?;
            let qc = rc / &lc;
            quot.add_term(qm.clone(), qc.clone());
            let step = other.mul_monomial(&qm).scale(&qc);
            rem = rem.sub(&step)?;
        }
        Ok(quot)
    }

    pub fn divides(&self, other: &Poly) -> bool {
        other.exact_divide(self).is_ok()
    }

    pub fn wdeg(&self) -> WeightedDegree {
        let w = self.ring.weights();
        self.terms
            .keys()
            .map(|m| m.weighted_degree(w))
            .max()
            .map_or(WeightedDegree::Bottom, WeightedDegree::Finite)
    }

    pub fn total_degree(&self) -> Option<i64> {
        self.terms.keys().map(|m| m.total_degree()).max()
    }

    /// Returns `Some(d)` when every monomial has weighted degree d. The zero
    /// polynomial is homogeneous of every degree and reports `Bottom`.
    pub fn homogeneous_wdeg(&self) -> Option<WeightedDegree> {
        if self.is_zero() {
            return Some(WeightedDegree::Bottom);
        }
        let w = self.ring.weights();
        let mut it = self.terms.keys();
        let d = it.next().unwrap().weighted_degree(w);
        if it.all(|m| m.weighted_degree(w) == d) {
            Some(WeightedDegree::Finite(d))
        } else {
            None
        }
    }

    pub fn is_weighted_homogeneous(&self) -> bool {
        self.homogeneous_wdeg().is_some()
    }

    /// The weighted-degree-d piece of self.
    pub fn graded_piece(&self, d: i64) -> Poly {
        let w = self.ring.weights().to_vec();
        let mut out = Poly::zero(&self.ring);
        for (m, c) in &self.terms {
            if m.weighted_degree(&w) == d {
                out.terms.insert(m.clone(), c.clone());
            }
        }
        out
    }

    /// All nonzero graded pieces, ascending by weighted degree.
    pub fn graded_pieces(&self) -> Vec<(i64, Poly)> {
        let w = self.ring.weights().to_vec();
        let mut map: BTreeMap<i64, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let d = m.weighted_degree(&w);
            map.entry(d)
                .or_insert_with(|| Poly::zero(&self.ring))
                .terms
                .insert(m.clone(), c.clone());
        }
        map.into_iter().collect()
    }

    pub fn partial_derivative(&self, i: usize) -> Result<Poly> {
        if i >= self.ring.num_vars() {
            return Err(Error::IndexOutOfRange(i));
        }
        let mut out = Poly::zero(&self.ring);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut em = m.clone();
            em.0[i] = e - 1;
            out.add_term(em, c * q_int(e as i64));
        }
        Ok(out)
    }

    /// Substitutes the given polynomial (over the same ring) for variable i.
    pub fn substitute(&self, i: usize, value: &Poly) -> Result<Poly> {
        self.check_ring(value)?;
        if i >= self.ring.num_vars() {
            return Err(Error::IndexOutOfRange(i));
        }
        let mut out = Poly::zero(&self.ring);
        for (m, c) in &self.terms {
            let e = m.0[i];
            let mut base = m.clone();
            base.0[i] = 0;
            let term = Poly::monomial(&self.ring, base, c.clone()).mul(&value.pow(e))?;
            out = out.add(&term)?;
        }
        Ok(out)
    }

    /// Standard-degree homogenization by a fresh weight-1 variable appended
    /// to the ring.
    pub fn homogenize(&self, new_var: &str) -> Result<Poly> {
        let ext = self.ring.extend(new_var)?;
        let d = self.total_degree().unwrap_or(0);
        let mut out = Poly::zero(&ext);
        let k = ext.num_vars();
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            e.push((d - m.total_degree()) as u32);
            debug_assert_eq!(e.len(), k);
            out.terms.insert(Monomial(e), c.clone());
        }
        Ok(out)
    }

    /// Sets the named variable to 1 and drops it from the ring.
    pub fn dehomogenize(&self, var: &str) -> Result<Poly> {
        let (small, idx) = self.ring.remove(var)?;
        let mut out = Poly::zero(&small);
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            e.remove(idx);
            out.add_term(Monomial(e), c.clone());
        }
        Ok(out)
    }

    /// Maps self into a ring that contains all of self's variables by name.
    pub fn cast_into(&self, target: &RingRef) -> Result<Poly> {
        let map: Vec<usize> = self
            .ring
            .vars()
            .iter()
            .map(|v| {
                target
                    .var_index(v)
                    .ok_or_else(|| Error::UnknownVariable(v.clone()))
            })
            .collect::<Result<_>>()?;
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut e = vec![0u32; target.num_vars()];
            for (j, &ej) in m.0.iter().enumerate() {
                e[map[j]] += ej;
            }
            out.add_term(Monomial(e), c.clone());
        }
        Ok(out)
    }

    pub fn degree_in(&self, i: usize) -> i64 {
        self.terms.keys().map(|m| m.0[i] as i64).max().unwrap_or(-1)
    }

    /// Coefficient of x_i^k as a polynomial with the x_i exponent cleared.
    pub fn coeff_in(&self, i: usize, k: u32) -> Poly {
        let mut out = Poly::zero(&self.ring);
        for (m, c) in &self.terms {
            if m.0[i] == k {
                let mut e = m.clone();
                e.0[i] = 0;
                out.terms.insert(e, c.clone());
            }
        }
        out
    }

    /// Highest variable index actually present, if any.
    fn main_var(&self) -> Option<usize> {
        let n = self.ring.num_vars();
        (0..n).rev().find(|&i| self.degree_in(i) > 0)
    }

    /// Clears denominators and integer content; makes the canonical leading
    /// coefficient positive.
    pub fn normalize(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut denom_lcm = BigInt::one();
        for c in self.terms.values() {
            denom_lcm = num_integer::lcm(denom_lcm, c.denom().clone());
        }
        let mut content = BigInt::zero();
        for c in self.terms.values() {
            let int = c.numer() * &denom_lcm / c.denom();
            content = num_integer::gcd(content, int);
        }
        let mut scale = Q::new(denom_lcm, content);
        if self.leading_term().unwrap().1.is_negative() {
            scale = -scale;
        }
        self.scale(&scale)
    }

    /// gcd, normalized to integer content 1 with positive canonical leading
    /// coefficient. Primitive PRS in the highest present variable with
    /// recursive content extraction.
    pub fn gcd(&self, other: &Poly) -> Result<Poly> {
        self.check_ring(other)?;
        if self.is_zero() && other.is_zero() {
            return Err(Error::GcdOfZeros);
        }
        Ok(gcd_inner(self, other).normalize())
    }

    /// Squarefree part: f / gcd(f, df/dx0, ..., df/dxn), gcd folded over f
    /// and every partial jointly. Valid over a characteristic-zero field.
    pub fn squarefree_part(&self) -> Result<Poly> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut g = self.clone();
        for i in 0..self.ring.num_vars() {
            let di = self.partial_derivative(i)?;
            if !di.is_zero() {
                g = g.gcd(&di)?;
            }
        }
        Ok(self.exact_divide(&g)?.normalize())
    }

    /// True when f has no repeated irreducible factor.
    pub fn is_reduced(&self) -> Result<bool> {
        let red = self.squarefree_part()?;
        Ok(red.total_degree() == self.total_degree())
    }
}

fn gcd_inner(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one(a.ring());
    }
    let x = a.main_var().max(b.main_var()).unwrap();
    let da = a.degree_in(x);
    let db = b.degree_in(x);
    if da == 0 || db == 0 {
        // One operand does not involve x; gcd divides its x-content.
        let (with_x, without) = if da == 0 { (b, a) } else { (a, b) };
        let content = content_in(with_x, x);
        return gcd_inner(&content, without);
    }
    let ca = content_in(a, x);
    let cb = content_in(b, x);
    let c = gcd_inner(&ca, &cb);
    let mut p = a.exact_divide(&ca).expect("content divides");
    let mut q = b.exact_divide(&cb).expect("content divides");
    if p.degree_in(x) < q.degree_in(x) {
        std::mem::swap(&mut p, &mut q);
    }
    loop {
        let r = pseudo_rem(&p, &q, x);
        if r.is_zero() {
            let pp = q
                .exact_divide(&content_in(&q, x))
                .expect("content divides");
            return c.mul(&pp).expect("same ring");
        }
        if r.degree_in(x) == 0 {
            return c;
        }
        p = q;
        q = r.exact_divide(&content_in(&r, x)).expect("content divides");
    }
}

/// gcd of the x-coefficients (a polynomial free of x).
fn content_in(f: &Poly, x: usize) -> Poly {
    let mut g = Poly::zero(f.ring());
    for k in 0..=f.degree_in(x) {
        let ck = f.coeff_in(x, k as u32);
        if !ck.is_zero() {
            g = gcd_inner(&g, &ck);
        }
    }
    g.normalize()
}

/// Pseudo-remainder of p by q in variable x; differs from the true
/// remainder by a power of lc_x(q), which the primitive PRS removes.
fn pseudo_rem(p: &Poly, q: &Poly, x: usize) -> Poly {
    let dq = q.degree_in(x);
    let lq = q.coeff_in(x, dq as u32);
    let mut r = p.clone();
    while !r.is_zero() && r.degree_in(x) >= dq {
        let dr = r.degree_in(x);
        let lr = r.coeff_in(x, dr as u32);
        let shift = Monomial({
            let mut e = vec![0u32; p.ring().num_vars()];
            e[x] = (dr - dq) as u32;
            e
        });
        let step = q.mul(&lr).expect("ring").mul_monomial(&shift);
        r = r
            .mul(&lq)
            .expect("ring")
            .sub(&step)
            .expect("ring");
    }
    r
}

impl fmt::Display for Poly {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(out, "0");
        }
        let vars = self.ring.vars();
        let mut first = true;
        for (m, c) in self.terms_desc() {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(out, "-")?;
                }
                first = false;
            } else if neg {
                write!(out, " - ")?;
            } else {
                write!(out, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(vars[i].clone()),
                    _ => factors.push(format!("{}^{}", vars[i], e)),
                }
            }
            if factors.is_empty() {
                write!(out, "{mag}")?;
            } else if mag.is_one() {
                write!(out, "{}", factors.join("*"))?;
            } else {
                write!(out, "{}*{}", mag, factors.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::GradedRing;

    fn ring3() -> RingRef {
        GradedRing::new(
            vec!["x".into(), "y".into(), "z".into()],
            vec![4, 2, 4],
        )
        .unwrap()
    }

    fn whitney(r: &RingRef) -> Poly {
        // x^2 - y^2*z
        let x = Poly::var(r, 0);
        let y = Poly::var(r, 1);
        let z = Poly::var(r, 2);
        x.pow(2).sub(&y.pow(2).mul(&z).unwrap()).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let r = GradedRing::standard(vec!["x".into(), "y".into()]).unwrap();
        let x = Poly::var(&r, 0);
        let y = Poly::var(&r, 1);
        let lhs = x.add(&y).unwrap().mul(&x.sub(&y).unwrap()).unwrap();
        let rhs = x.pow(2).sub(&y.pow(2)).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn exact_divide_cases() {
        let r = GradedRing::standard(vec!["x".into(), "y".into()]).unwrap();
        let x = Poly::var(&r, 0);
        let y = Poly::var(&r, 1);
        let x2y = x.pow(2).mul(&y).unwrap();
        let xy = x.mul(&y).unwrap();
        assert_eq!(x2y.exact_divide(&xy).unwrap(), x);
        let bad = x.pow(2).add(&y).unwrap();
        assert!(matches!(
            bad.exact_divide(&x),
            Err(Error::NotDivisible(_, _))
        ));
    }

    #[test]
    fn wdeg_whitney() {
        let r = ring3();
        let f = whitney(&r);
        assert_eq!(f.wdeg(), WeightedDegree::Finite(8));
        assert_eq!(f.homogeneous_wdeg(), Some(WeightedDegree::Finite(8)));
        assert_eq!(Poly::zero(&r).wdeg(), WeightedDegree::Bottom);
    }

    #[test]
    fn inhomogeneous_detection() {
        let r = GradedRing::standard(vec!["x".into(), "y".into()]).unwrap();
        let f = Poly::var(&r, 0).pow(2).add(&Poly::var(&r, 1)).unwrap();
        assert!(f.homogeneous_wdeg().is_none());
        let r2 = GradedRing::new(vec!["x".into(), "y".into()], vec![2, 3]).unwrap();
        let g = Poly::var(&r2, 0)
            .pow(3)
            .add(&Poly::var(&r2, 1).pow(2))
            .unwrap();
        assert_eq!(g.homogeneous_wdeg(), Some(WeightedDegree::Finite(6)));
    }

    #[test]
    fn partials() {
        let r = ring3();
        let f = whitney(&r);
        let two_x = Poly::var(&r, 0).scale(&q_int(2));
        assert_eq!(f.partial_derivative(0).unwrap(), two_x);
        let minus_y2 = Poly::var(&r, 1).pow(2).neg();
        assert_eq!(f.partial_derivative(2).unwrap(), minus_y2);
        assert!(Poly::var(&r, 0)
            .pow(3)
            .partial_derivative(1)
            .unwrap()
            .is_zero());
    }

    #[test]
    fn gcd_monomials_and_fold() {
        let r = ring3();
        let x = Poly::var(&r, 0);
        let y = Poly::var(&r, 1);
        let z = Poly::var(&r, 2);
        let xy = x.mul(&y).unwrap();
        let xz = x.mul(&z).unwrap();
        let yz = y.mul(&z).unwrap();
        assert_eq!(xy.gcd(&xz).unwrap(), x);
        let g = yz.gcd(&xz).unwrap().gcd(&xy).unwrap();
        assert_eq!(g, Poly::one(&r));
    }

    #[test]
    fn gcd_with_common_factor() {
        let r = GradedRing::standard(vec!["x".into(), "y".into()]).unwrap();
        let x = Poly::var(&r, 0);
        let y = Poly::var(&r, 1);
        let xy = x.mul(&y).unwrap();
        // gcd(x^2 y - x y^2, x^2 y + x y^2) = xy
        let a = x.pow(2).mul(&y).unwrap().sub(&x.mul(&y.pow(2)).unwrap()).unwrap();
        let b = x.pow(2).mul(&y).unwrap().add(&x.mul(&y.pow(2)).unwrap()).unwrap();
        assert_eq!(a.gcd(&b).unwrap(), xy);
    }

    #[test]
    fn gcd_product_identity() {
        let r = GradedRing::standard(vec!["x".into(), "y".into()]).unwrap();
        let x = Poly::var(&r, 0);
        let y = Poly::var(&r, 1);
        let f = x.add(&y).unwrap();
        let a = x.pow(2).add(&Poly::one(&r)).unwrap();
        let b = y.clone();
        let g = f.mul(&a).unwrap().gcd(&f.mul(&b).unwrap()).unwrap();
        // gcd(a, b) = 1, so the result is f up to normalization
        assert_eq!(g, f.normalize());
    }

    #[test]
    fn squarefree() {
        let r = GradedRing::standard(vec!["x".into(), "y".into(), "z".into()]).unwrap();
        let x = Poly::var(&r, 0);
        let y = Poly::var(&r, 1);
        let z = Poly::var(&r, 2);
        let f = x.add(&y).unwrap().pow(2).mul(&z).unwrap();
        let red = f.squarefree_part().unwrap();
        let expect = x.add(&y).unwrap().mul(&z).unwrap();
        assert_eq!(red, expect.normalize());
        // idempotent
        assert_eq!(red.squarefree_part().unwrap(), red);
        assert!(!f.is_reduced().unwrap());
        assert!(expect.is_reduced().unwrap());
    }

    #[test]
    fn homogenize_roundtrip() {
        let r = GradedRing::standard(vec!["x".into(), "y".into(), "z".into()]).unwrap();
        let f = whitney_std(&r);
        let fh = f.homogenize("t").unwrap();
        assert_eq!(fh.to_string(), "x^2*t - y^2*z");
        assert!(fh.homogeneous_wdeg().is_some());
        assert_eq!(fh.dehomogenize("t").unwrap(), f);
    }

    fn whitney_std(r: &RingRef) -> Poly {
        let x = Poly::var(r, 0);
        let y = Poly::var(r, 1);
        let z = Poly::var(r, 2);
        x.pow(2).sub(&y.pow(2).mul(&z).unwrap()).unwrap()
    }

    #[test]
    fn display_canonical() {
        let r = ring3();
        let f = whitney(&r);
        assert_eq!(f.to_string(), "-y^2*z + x^2");
        let c = Poly::constant(&r, q_ratio(-3, 2));
        assert_eq!(c.to_string(), "-3/2");
    }

    #[test]
    fn normalize_makes_integer_primitive() {
        let r = GradedRing::standard(vec!["x".into(), "y".into()]).unwrap();
        let x = Poly::var(&r, 0);
        let y = Poly::var(&r, 1);
        let f = x.scale(&q_ratio(2, 3)).add(&y.scale(&q_ratio(4, 3))).unwrap();
        let n = f.normalize();
        let expect = x.add(&y.scale(&q_int(2))).unwrap();
        assert_eq!(n, expect);
        assert_eq!(f.neg().normalize(), expect);
    }

    #[test]
    fn substitute_eval() {
        let r = GradedRing::standard(vec!["x".into(), "y".into()]).unwrap();
        let x = Poly::var(&r, 0);
        let y = Poly::var(&r, 1);
        let f = x.pow(2).add(&y).unwrap();
        let g = f.substitute(0, &y).unwrap();
        assert_eq!(g, y.pow(2).add(&y).unwrap());
    }
}
