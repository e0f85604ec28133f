//! Constructors for the explicit divisor families: complete
//! reflection-style arrangements D_l^k, Brieskorn-Pham products, pencils
//! of hypersurfaces, and the cone construction lifting an affine free
//! divisor to projective space.

use num_integer::Integer;
use num_traits::Zero;

use crate::cert::Method;
use crate::deriv::Derivation;
use crate::error::{Error, Result};
use crate::groebner::{Limits, MonomialOrder};
use crate::poly::{q_int, Poly, Q};
use crate::ring::{GradedRing, RingRef};
use crate::saito::{saito_check, saito_check_with, CheckResult};
use crate::syzygy::{module_buchberger, module_normal_form};
use crate::wme::wme_pipeline;

/// Which certification pipeline the instance is pre-wired for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Route {
    /// `derivations` is a full Saito basis.
    Saito,
    /// `derivations` are n-2 tensors for the Euler-row determinantal check.
    Wme,
    /// `derivations` are n-1 rows for the general determinantal check.
    WmeGeneral,
}

/// A family member with everything needed to certify it and to cross-check
/// the certified exponents against the paper formulas.
#[derive(Debug, Clone)]
pub struct FamilyInstance {
    pub ring: RingRef,
    pub divisor: Poly,
    pub derivations: Vec<Derivation>,
    pub route: Route,
    /// Sorted degrees of the full expected basis (Euler slot included).
    pub expected_exponents: Vec<i64>,
    /// The theorem's exponent list (Der_0 convention), sorted.
    pub expected_der0: Vec<i64>,
    pub provenance: String,
}

impl FamilyInstance {
    pub fn certify(&self, limits: Limits) -> Result<CheckResult> {
        let prov = Some(self.provenance.clone());
        match self.route {
            Route::Saito => {
                saito_check_with(&self.divisor, &self.derivations, Method::Saito, prov)
            }
            Route::Wme => wme_pipeline(
                &self.divisor,
                &self.derivations,
                true,
                limits,
                Method::Wme,
                prov,
            ),
            Route::WmeGeneral => wme_pipeline(
                &self.divisor,
                &self.derivations,
                false,
                limits,
                Method::WmeGeneral,
                prov,
            ),
        }
    }
}

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidFamily(msg.into())
}

fn check_positive(vals: &[i64], what: &str) -> Result<()> {
    if vals.iter().any(|&v| v < 1) {
        return Err(bad(format!("{what} must all be positive")));
    }
    Ok(())
}

fn product_omitting(vals: &[i64], skip: usize) -> i64 {
    vals.iter()
        .enumerate()
        .filter(|&(j, _)| j != skip)
        .map(|(_, &v)| v)
        .product()
}

/// Products-of-the-others weight vector, divided by its overall gcd so the
/// all-equal case lands on the standard grading.
fn complementary_weights(vals: &[i64]) -> Vec<i64> {
    let mut w: Vec<i64> = (0..vals.len()).map(|i| product_omitting(vals, i)).collect();
    let g = w.iter().fold(0i64, |a, &b| a.gcd(&b));
    if g > 1 {
        for wi in &mut w {
            *wi /= g;
        }
    }
    w
}

fn numbered_ring(prefix: &str, start: usize, count: usize, weights: Vec<i64>) -> Result<RingRef> {
    let vars = (start..start + count).map(|i| format!("{prefix}{i}")).collect();
    GradedRing::new(vars, weights)
}

fn sorted(mut v: Vec<i64>) -> Vec<i64> {
    v.sort_unstable();
    v
}

fn with_euler_slot(der0: &[i64]) -> Vec<i64> {
    let mut full = der0.to_vec();
    full.push(1);
    sorted(full)
}

// ---------------------------------------------------------------------------
// Reflection-style arrangements D_l^k({n_i}) (section 6.1).

fn validate_reflection(k: usize, n: &[i64]) -> Result<()> {
    if n.len() < 2 {
        return Err(bad("reflection family needs at least two n_i"));
    }
    check_positive(n, "n_i")?;
    if k > n.len() {
        return Err(bad(format!("k = {k} exceeds l = {}", n.len())));
    }
    Ok(())
}

fn reflection_ring(n: &[i64], weighted: bool) -> Result<RingRef> {
    let l = n.len();
    let weights = if weighted {
        // w_i = prod_{j != i} n_j, kept exactly as the paper writes it so
        // the Thm 6.5 exponent formula applies verbatim.
        (0..l).map(|i| product_omitting(n, i)).collect()
    } else {
        vec![1; l]
    };
    numbered_ring("x", 1, l, weights)
}

/// F_k = p * prod_{i<j} (x_i^{n_i} - x_j^{n_j}), p = x_1..x_k (1 if k = 0).
fn reflection_divisor(ring: &RingRef, n: &[i64], k: usize) -> Result<Poly> {
    let l = n.len();
    let mut f = Poly::one(ring);
    for i in 0..k {
        f = f.mul(&Poly::var(ring, i))?;
    }
    for i in 0..l {
        for j in i + 1..l {
            let fac = Poly::var(ring, i)
                .pow(n[i] as u32)
                .sub(&Poly::var(ring, j).pow(n[j] as u32))?;
            f = f.mul(&fac)?;
        }
    }
    Ok(f)
}

/// delta_m = sum_i w_i x_i^{m n_i + 1} d/dx_i (Lemma 6.1); m = 0 is Euler.
fn reflection_delta(ring: &RingRef, n: &[i64], m: i64) -> Result<Derivation> {
    let coeffs = (0..n.len())
        .map(|i| {
            Poly::var(ring, i)
                .pow((m * n[i] + 1) as u32)
                .scale(&q_int(product_omitting(n, i)))
        })
        .collect();
    Derivation::new(ring, coeffs)
}

/// mu = sum_i p w_i x_1^{n_1-1} ... (omit i) ... x_l^{n_l-1} d/dx_i
/// (Lemma 6.4), p = x_1..x_k.
fn reflection_mu(ring: &RingRef, n: &[i64], k: usize) -> Result<Derivation> {
    let l = n.len();
    let mut p = Poly::one(ring);
    for i in 0..k {
        p = p.mul(&Poly::var(ring, i))?;
    }
    let mut coeffs = Vec::with_capacity(l);
    for i in 0..l {
        let mut g = p.scale(&q_int(product_omitting(n, i)));
        for j in 0..l {
            if j != i {
                g = g.mul(&Poly::var(ring, j).pow((n[j] - 1) as u32))?;
            }
        }
        coeffs.push(g);
    }
    Derivation::new(ring, coeffs)
}

/// zeta_m = sum_{i<=m} w_i x_i prod_{j>m} (x_i^{n_i} - x_j^{n_j}) d/dx_i
/// (Lemma 6.9); m is 1-based, m = l gives the weighted Euler derivation.
fn reflection_zeta(ring: &RingRef, n: &[i64], m: usize) -> Result<Derivation> {
    let l = n.len();
    let mut coeffs = Vec::with_capacity(l);
    for i in 0..l {
        if i >= m {
            coeffs.push(Poly::zero(ring));
            continue;
        }
        let mut g = Poly::var(ring, i).scale(&q_int(product_omitting(n, i)));
        for j in m..l {
            g = g.mul(
                &Poly::var(ring, i)
                    .pow(n[i] as u32)
                    .sub(&Poly::var(ring, j).pow(n[j] as u32))?,
            )?;
        }
        coeffs.push(g);
    }
    Derivation::new(ring, coeffs)
}

/// The weighted D_l^k divisor with the Theorem 6.5 basis
/// (Euler, delta_1..delta_{l-2}, mu).
pub fn reflection(k: usize, n: &[i64]) -> Result<FamilyInstance> {
    validate_reflection(k, n)?;
    let l = n.len();
    let ring = reflection_ring(n, true)?;
    let divisor = reflection_divisor(&ring, n, k)?;
    let mut derivations = vec![Derivation::euler(&ring)];
    for m in 1..=l as i64 - 2 {
        derivations.push(reflection_delta(&ring, n, m)?);
    }
    derivations.push(reflection_mu(&ring, n, k)?);
    let big_n: i64 = n.iter().product();
    let tail_w: i64 = (k..l).map(|j| product_omitting(n, j)).sum();
    let mut der0: Vec<i64> = (1..=l as i64 - 2).map(|m| m * big_n + 1).collect();
    der0.push((l as i64 - 1) * big_n + 1 - tail_w);
    let der0 = sorted(der0);
    Ok(FamilyInstance {
        ring,
        divisor,
        derivations,
        route: Route::Saito,
        expected_exponents: with_euler_slot(&der0),
        expected_der0: der0,
        provenance: "Theorem 6.5".into(),
    })
}

/// The k = l divisor F with the pure Lemma 6.1 basis delta_0..delta_{l-1}
/// (Theorem 6.2).
pub fn reflection_pure(n: &[i64]) -> Result<FamilyInstance> {
    let l = n.len();
    validate_reflection(l, n)?;
    let ring = reflection_ring(n, true)?;
    let divisor = reflection_divisor(&ring, n, l)?;
    let derivations = (0..l as i64)
        .map(|m| reflection_delta(&ring, n, m))
        .collect::<Result<Vec<_>>>()?;
    let big_n: i64 = n.iter().product();
    let der0 = sorted((1..=l as i64 - 1).map(|m| m * big_n + 1).collect());
    Ok(FamilyInstance {
        ring,
        divisor,
        derivations,
        route: Route::Saito,
        expected_exponents: with_euler_slot(&der0),
        expected_der0: der0,
        provenance: "Theorem 6.2".into(),
    })
}

/// The Lemma 6.9 basis zeta_l, ..., zeta_1 of Der(F) for k = l, ordered by
/// increasing degree (zeta_l is the weighted Euler derivation).
pub fn reflection_alt_basis(n: &[i64]) -> Result<Vec<Derivation>> {
    validate_reflection(n.len(), n)?;
    let ring = reflection_ring(n, true)?;
    (1..=n.len())
        .rev()
        .map(|m| reflection_zeta(&ring, n, m))
        .collect()
}

/// Cone of D_l^k over the standard grading: x_0 F_k^h with the lifted
/// Lemma 6.9 basis plus mu_k (Theorems 6.10 and 6.12). Needs sorted n_i.
pub fn reflection_cone(k: usize, n: &[i64], cone_var: &str) -> Result<FamilyInstance> {
    validate_reflection(k, n)?;
    if n.windows(2).any(|w| w[0] > w[1]) {
        return Err(bad("cone construction needs n_1 <= ... <= n_l"));
    }
    let l = n.len();
    let affine = reflection_ring(n, false)?;
    let fk = reflection_divisor(&affine, n, k)?;
    let fh = fk.homogenize(cone_var)?;
    let ext = fh.ring().clone();
    let divisor = fh.mul(&Poly::var(&ext, l))?;
    let mut derivations = vec![Derivation::euler(&ext)];
    for m in (2..=l).rev() {
        derivations.push(
            reflection_zeta(&affine, n, m)?
                .homogenize(cone_var)?
                .cast_into(&ext)?,
        );
    }
    derivations.push(
        reflection_mu(&affine, n, k)?
            .homogenize(cone_var)?
            .cast_into(&ext)?,
    );
    let total: i64 = n.iter().sum();
    // zeta_m lifts to degree 1 + n_{m+1} + ... + n_l; mu_k to
    // n_2 + ... + n_l + 1 - l + k (Theorem 6.12).
    let mut der0: Vec<i64> = (2..=l)
        .rev()
        .map(|m| 1 + n[m..].iter().sum::<i64>())
        .collect();
    der0.push(total - n[0] + 1 - l as i64 + k as i64);
    let der0 = sorted(der0);
    Ok(FamilyInstance {
        ring: ext,
        divisor,
        derivations,
        route: Route::Saito,
        expected_exponents: with_euler_slot(&der0),
        expected_der0: der0,
        provenance: if k == l {
            "Theorem 6.10".into()
        } else {
            "Theorem 6.12".into()
        },
    })
}

// ---------------------------------------------------------------------------
// Brieskorn-Pham products F_Lambda (section 6.2).

fn validate_lambda(lambda: &[Q]) -> Result<()> {
    for (i, a) in lambda.iter().enumerate() {
        if a.is_zero() {
            return Err(bad("Lambda entries must be nonzero"));
        }
        if lambda[..i].contains(a) {
            return Err(bad("Lambda entries must be distinct"));
        }
    }
    Ok(())
}

fn bp_divisor(ring: &RingRef, r: &[i64; 3], lambda: &[Q]) -> Result<Poly> {
    let base = Poly::var(ring, 0)
        .pow(r[0] as u32)
        .add(&Poly::var(ring, 1).pow(r[1] as u32))?;
    let mut f = base.clone();
    for a in lambda {
        f = f.mul(&base.add(&Poly::var(ring, 2).pow(r[2] as u32).scale(a))?)?;
    }
    Ok(f)
}

/// delta_1 = -r_1 y^{r_1-1} d/dx + r_0 x^{r_0-1} d/dy, which annihilates
/// every factor of F_Lambda.
fn bp_delta(ring: &RingRef, r: &[i64; 3]) -> Result<Derivation> {
    Derivation::new(
        ring,
        vec![
            Poly::var(ring, 1)
                .pow(r[1] as u32 - 1)
                .scale(&q_int(-r[1])),
            Poly::var(ring, 0).pow(r[0] as u32 - 1).scale(&q_int(r[0])),
            Poly::zero(ring),
        ],
    )
}

/// F_Lambda over weights proportional to (r_1 r_2, r_0 r_2, r_0 r_1)
/// (Theorem 6.15), or its cone t F_Lambda^h in P^3 (Theorem 6.18).
pub fn brieskorn_pham(r: &[i64; 3], lambda: &[Q], cone: bool, cone_var: &str) -> Result<FamilyInstance> {
    check_positive(r, "r_i")?;
    validate_lambda(lambda)?;
    let nlam = lambda.len() as i64;
    if !cone {
        let w = complementary_weights(r);
        let ring = GradedRing::new(
            vec!["x".into(), "y".into(), "z".into()],
            w.clone(),
        )?;
        let divisor = bp_divisor(&ring, r, lambda)?;
        let d = r[0] * w[0];
        let der0 = sorted(vec![d + 1 - w[0] - w[1], nlam * d - w[2] + 1]);
        return Ok(FamilyInstance {
            ring: ring.clone(),
            divisor,
            derivations: vec![bp_delta(&ring, r)?],
            route: Route::Wme,
            expected_exponents: with_euler_slot(&der0),
            expected_der0: der0,
            provenance: "Theorem 6.15".into(),
        });
    }
    let affine = GradedRing::standard(vec!["x".into(), "y".into(), "z".into()])?;
    let fh = bp_divisor(&affine, r, lambda)?.homogenize(cone_var)?;
    let ext = fh.ring().clone();
    let divisor = fh.mul(&Poly::var(&ext, 3))?;
    let der0 = sorted(vec![
        1,
        r[0].max(r[1]) - 1,
        nlam * r[0].max(r[1]).max(r[2]),
    ]);
    let w = complementary_weights(r);
    if w.iter().all(|&wi| wi == 1) {
        // Equal weights make the weighted Euler row redundant against the
        // ambient Euler row and every maximal minor picks up the cone
        // variable, so the determinantal gate degenerates. Certify the
        // weighted instance and lift its basis instead (Prop 5.6).
        let aff = brieskorn_pham(r, lambda, false, cone_var)?;
        return lift_certified(&aff, cone_var, der0, "Theorem 6.18");
    }
    // Rows of the Theorem 6.18 matrix: the standard Euler derivation, the
    // weighted Euler row, and the homogenized delta_1.
    let weighted_euler = Derivation::new(
        &ext,
        vec![
            Poly::var(&ext, 0).scale(&q_int(w[0])),
            Poly::var(&ext, 1).scale(&q_int(w[1])),
            Poly::var(&ext, 2).scale(&q_int(w[2])),
            Poly::zero(&ext),
        ],
    )?;
    let derivations = vec![
        Derivation::euler(&ext),
        weighted_euler,
        bp_delta(&affine, r)?.homogenize(cone_var)?.cast_into(&ext)?,
    ];
    Ok(FamilyInstance {
        ring: ext,
        divisor,
        derivations,
        route: Route::WmeGeneral,
        expected_exponents: with_euler_slot(&der0),
        expected_der0: der0,
        provenance: "Theorem 6.18".into(),
    })
}

// ---------------------------------------------------------------------------
// Pencils of hypersurfaces (section 6.3).

/// The raw pencil data: f~_1, f~_2 and the reduced product.
#[derive(Debug, Clone)]
pub struct PencilData {
    pub ring: RingRef,
    pub f1: Poly,
    pub f2: Poly,
    pub reduced: Poly,
}

fn validate_pencil(n: usize, m: usize, r: &[i64]) -> Result<()> {
    if n < 1 {
        return Err(bad("pencil needs n >= 1"));
    }
    if r.len() != n + 1 {
        return Err(bad(format!("expected {} exponents r_i, got {}", n + 1, r.len())));
    }
    check_positive(r, "r_i")?;
    if m >= n {
        return Err(bad(format!("m = {m} must satisfy 0 <= m <= n-1")));
    }
    Ok(())
}

/// h~_i = prod_{j != i} x_j^{r_j} restricted to a block of indices.
fn hat_monomial(ring: &RingRef, r: &[i64], block: std::ops::Range<usize>, skip: usize) -> Poly {
    let mut g = Poly::one(ring);
    for j in block {
        if j != skip {
            g = g.mul(&Poly::var(ring, j).pow(r[j] as u32)).expect("same ring");
        }
    }
    g
}

fn pencil_parts(n: usize, m: usize, r: &[i64], weighted: bool) -> Result<PencilData> {
    validate_pencil(n, m, r)?;
    let weights = if weighted {
        complementary_weights(r)
    } else {
        vec![1; n + 1]
    };
    let ring = numbered_ring("x", 0, n + 1, weights)?;
    let mut f1 = Poly::zero(&ring);
    for i in m + 1..=n {
        f1 = f1.add(&hat_monomial(&ring, r, 0..n + 1, i))?;
    }
    let mut f2 = Poly::zero(&ring);
    for i in 0..=m {
        f2 = f2.add(&hat_monomial(&ring, r, 0..n + 1, i))?;
    }
    // (f1 f2)^red = x_0..x_n * (sum over the first block) * (sum over the
    // second block), per the closed form in Theorem 6.21.
    let mut reduced = Poly::one(&ring);
    for i in 0..=n {
        reduced = reduced.mul(&Poly::var(&ring, i))?;
    }
    let mut left = Poly::zero(&ring);
    for i in 0..=m {
        left = left.add(&hat_monomial(&ring, r, 0..m + 1, i))?;
    }
    let mut right = Poly::zero(&ring);
    for i in m + 1..=n {
        right = right.add(&hat_monomial(&ring, r, m + 1..n + 1, i))?;
    }
    reduced = reduced.mul(&left)?.mul(&right)?;
    Ok(PencilData { ring, f1, f2, reduced })
}

/// f~_1, f~_2 and the reduced product over the canonical weights.
pub fn pencil(n: usize, m: usize, r: &[i64]) -> Result<PencilData> {
    pencil_parts(n, m, r, true)
}

/// (1/r_a) x_a^{r_a+1} d/dx_a - (1/r_b) x_b^{r_b+1} d/dx_b.
fn pencil_pair(ring: &RingRef, r: &[i64], a: usize, b: usize) -> Result<Derivation> {
    let mut coeffs = vec![Poly::zero(ring); ring.num_vars()];
    coeffs[a] = Poly::var(ring, a)
        .pow(r[a] as u32 + 1)
        .scale(&(q_int(1) / q_int(r[a])));
    coeffs[b] = Poly::var(ring, b)
        .pow(r[b] as u32 + 1)
        .scale(&(q_int(-1) / q_int(r[b])));
    Derivation::new(ring, coeffs)
}

/// The n-1 pair derivations delta_j (j = 1..m) and eta_t (t = m+2..n) of
/// the Theorem 6.21 proof.
fn pencil_tensors(ring: &RingRef, n: usize, m: usize, r: &[i64]) -> Result<Vec<Derivation>> {
    let mut out = Vec::with_capacity(n - 1);
    for j in 1..=m {
        out.push(pencil_pair(ring, r, 0, j)?);
    }
    for t in m + 2..=n {
        out.push(pencil_pair(ring, r, m + 1, t)?);
    }
    Ok(out)
}

/// mu = sum_{i=m+1}^n (1/r_i) x_i d/dx_i, the degree-one completion for
/// the bare reduced product.
fn pencil_mu(ring: &RingRef, n: usize, m: usize, r: &[i64]) -> Result<Derivation> {
    let mut coeffs = vec![Poly::zero(ring); ring.num_vars()];
    for (i, c) in coeffs.iter_mut().enumerate().take(n + 1).skip(m + 1) {
        *c = Poly::var(ring, i).scale(&(q_int(1) / q_int(r[i])));
    }
    Derivation::new(ring, coeffs)
}

fn validate_scalars(scalars: &[(Q, Q)]) -> Result<()> {
    for (i, (a, b)) in scalars.iter().enumerate() {
        if a.is_zero() || b.is_zero() {
            return Err(bad("pencil scalars must be nonzero pairs"));
        }
        for (c, d) in &scalars[..i] {
            if a.clone() * d.clone() == b.clone() * c.clone() {
                return Err(bad("pencil scalars must be distinct points of P^1"));
            }
        }
    }
    Ok(())
}

fn pencil_member(data: &PencilData, a: &Q, b: &Q) -> Result<Poly> {
    data.f1.scale(a).add(&data.f2.scale(b))
}

/// (f~_1 f~_2)^red * prod (a_i f~_1 + b_i f~_2) with the Theorem 6.21
/// basis (empty scalars = the bare reduced product, k = 2).
pub fn pencil_divisor(n: usize, m: usize, r: &[i64], scalars: &[(Q, Q)]) -> Result<FamilyInstance> {
    validate_scalars(scalars)?;
    let data = pencil_parts(n, m, r, true)?;
    let ring = data.ring.clone();
    let mut divisor = data.reduced.clone();
    for (a, b) in scalars {
        divisor = divisor.mul(&pencil_member(&data, a, b)?)?;
    }
    let k = 2 + scalars.len() as i64;
    let d = r[0] * ring.weight(0); // common value r_i w_i
    if scalars.is_empty() {
        let mut derivations = vec![Derivation::euler(&ring)];
        derivations.extend(pencil_tensors(&ring, n, m, r)?);
        derivations.push(pencil_mu(&ring, n, m, r)?);
        let mut der0 = vec![1];
        der0.extend(std::iter::repeat(d + 1).take(n - 1));
        let der0 = sorted(der0);
        return Ok(FamilyInstance {
            ring,
            divisor,
            derivations,
            route: Route::Saito,
            expected_exponents: with_euler_slot(&der0),
            expected_der0: der0,
            provenance: "Theorem 6.21".into(),
        });
    }
    if n < 2 {
        return Err(bad("pencil with extra members needs n >= 2"));
    }
    let derivations = pencil_tensors(&ring, n, m, r)?;
    let mut der0: Vec<i64> = std::iter::repeat(d + 1).take(n - 1).collect();
    der0.push((k - 2) * n as i64 * d + 1);
    let der0 = sorted(der0);
    Ok(FamilyInstance {
        ring,
        divisor,
        derivations,
        route: Route::Wme,
        expected_exponents: with_euler_slot(&der0),
        expected_der0: der0,
        provenance: "Theorem 6.21".into(),
    })
}

/// Cone of the pencil divisor in P^{n+1} (Theorem 6.23). Needs sorted r_i.
pub fn pencil_cone(
    n: usize,
    m: usize,
    r: &[i64],
    scalars: &[(Q, Q)],
    cone_var: &str,
) -> Result<FamilyInstance> {
    validate_scalars(scalars)?;
    if r.windows(2).any(|w| w[0] > w[1]) {
        return Err(bad("cone construction needs r_0 <= ... <= r_n"));
    }
    let data = pencil_parts(n, m, r, false)?;
    let affine = data.ring.clone();
    let mut fh = data.reduced.homogenize(cone_var)?;
    let ext = fh.ring().clone();
    for (a, b) in scalars {
        fh = fh.mul(&pencil_member(&data, a, b)?.homogenize(cone_var)?.cast_into(&ext)?)?;
    }
    let divisor = fh.mul(&Poly::var(&ext, n + 1))?;
    let w = complementary_weights(r);
    // Lifted pair-derivation degrees: r_j + 1 for j != m+1 (sorted r).
    let pair_degs: Vec<i64> = (1..=n).filter(|&j| j != m + 1).map(|j| r[j] + 1).collect();
    let k = 2 + scalars.len() as i64;
    if !scalars.is_empty() {
        // The determinantal matrix of lifted rows degenerates here: the cone
        // variable only enters the Euler row and the homogenization padding,
        // so every maximal minor picks it up as a common factor. Certify the
        // weighted affine pencil and lift its full basis instead (Prop 5.6).
        let mut der0 = vec![1];
        der0.extend(&pair_degs);
        der0.push((k - 2) * r[1..].iter().sum::<i64>() + 1);
        let aff = pencil_divisor(n, m, r, scalars)?;
        return lift_certified(&aff, cone_var, sorted(der0), "Theorem 6.23");
    }
    let weighted_euler = Derivation::new(
        &affine,
        (0..=n)
            .map(|i| Poly::var(&affine, i).scale(&q_int(w[i])))
            .collect(),
    )?;
    let mut zetas = vec![weighted_euler];
    zetas.extend(pencil_tensors(&affine, n, m, r)?);
    let lifted = zetas
        .iter()
        .map(|z| Ok(z.homogenize(cone_var)?.cast_into(&ext)?))
        .collect::<Result<Vec<_>>>()?;
    let mut derivations = vec![
        Derivation::euler(&ext),
        pencil_mu(&affine, n, m, r)?.homogenize(cone_var)?.cast_into(&ext)?,
    ];
    derivations.extend(lifted);
    let mut der0 = vec![1, 1];
    der0.extend(&pair_degs);
    let der0 = sorted(der0);
    Ok(FamilyInstance {
        ring: ext,
        divisor,
        derivations,
        route: Route::Saito,
        expected_exponents: with_euler_slot(&der0),
        expected_der0: der0,
        provenance: "Theorem 6.23".into(),
    })
}

/// Certifies the affine instance, then lifts its full certified basis to
/// the cone (Prop 5.6): divisor x_{n+1} f^h, basis Euler plus the
/// homogenized affine basis. Used where a theorem's determinantal matrix
/// degenerates but the affine side certifies directly.
fn lift_certified(
    aff: &FamilyInstance,
    cone_var: &str,
    der0: Vec<i64>,
    provenance: &str,
) -> Result<FamilyInstance> {
    let cert = match aff.certify(Limits::default())? {
        CheckResult::Certified(c) => c,
        CheckResult::Failed(msg) => {
            return Err(bad(format!("affine instance failed to certify: {msg}")))
        }
    };
    let nv = aff.ring.num_vars();
    let std_ring = aff.ring.with_weights(vec![1; nv])?;
    let mut basis: Vec<Derivation> = cert
        .basis
        .iter()
        .map(|d| d.cast_into(&std_ring))
        .collect::<Result<_>>()?;
    // The completing element is minimal in the weighted grading but may
    // carry standard-degree parts generated by the other rows. Stripping
    // them is a row operation, so the Saito determinant is unchanged.
    if let Some((last, rest)) = basis.split_last_mut() {
        let order = MonomialOrder::GrevLex;
        let gens: Vec<Vec<Poly>> = rest.iter().map(|d| d.coeffs().to_vec()).collect();
        let gb = module_buchberger(&gens, &order, Limits::default())?;
        let rem = module_normal_form(&last.coeffs().to_vec(), &gb, &order)?;
        if !rem.iter().all(|p| p.is_zero()) {
            *last = Derivation::new(&std_ring, rem)?;
        }
    }
    let fh = aff.divisor.cast_into(&std_ring)?.homogenize(cone_var)?;
    let ext = fh.ring().clone();
    let divisor = fh.mul(&Poly::var(&ext, nv))?;
    let mut derivations = vec![Derivation::euler(&ext)];
    for d in &basis {
        derivations.push(d.homogenize(cone_var)?.cast_into(&ext)?);
    }
    Ok(FamilyInstance {
        ring: ext,
        divisor,
        derivations,
        route: Route::Saito,
        expected_exponents: with_euler_slot(&der0),
        expected_der0: der0,
        provenance: provenance.into(),
    })
}

// ---------------------------------------------------------------------------
// Cone construction for arbitrary certified affine divisors (Prop 5.6).

/// Result of attempting the cone lift: the Proposition 5.6 hypothesis
/// requires the basis degrees to sum to deg f exactly.
#[derive(Debug, Clone)]
pub enum ConeOutcome {
    Lifted(FamilyInstance),
    Refused { degree_sum: i64, divisor_degree: i64 },
}

pub fn cone_check(f: &Poly, basis: &[Derivation], cone_var: &str) -> Result<ConeOutcome> {
    if !f.ring().is_standard() {
        return Err(bad("cone lift expects a standard-graded affine ring"));
    }
    match saito_check(f, basis)? {
        CheckResult::Certified(_) => {}
        CheckResult::Failed(msg) => {
            return Err(bad(format!("input basis does not certify f: {msg}")))
        }
    }
    let degs: Vec<i64> = basis
        .iter()
        .map(|d| d.wdeg().degree.finite().unwrap_or(0))
        .collect();
    let degree_sum: i64 = degs.iter().sum();
    let divisor_degree = f.total_degree().unwrap_or(0);
    if degree_sum != divisor_degree {
        return Ok(ConeOutcome::Refused { degree_sum, divisor_degree });
    }
    let fh = f.homogenize(cone_var)?;
    let ext = fh.ring().clone();
    let divisor = fh.mul(&Poly::var(&ext, f.ring().num_vars()))?;
    let mut derivations = vec![Derivation::euler(&ext)];
    for d in basis {
        derivations.push(d.homogenize(cone_var)?.cast_into(&ext)?);
    }
    let der0 = sorted(degs);
    Ok(ConeOutcome::Lifted(FamilyInstance {
        ring: ext,
        divisor,
        derivations,
        route: Route::Saito,
        expected_exponents: with_euler_slot(&der0),
        expected_der0: der0,
        provenance: "Proposition 5.6".into(),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_derivation, parse_poly, parse_ring};
    use crate::saito::verify_certificate;

    fn limits() -> Limits {
        Limits::default()
    }

    fn certified(inst: &FamilyInstance) -> crate::cert::Certificate {
        let res = inst.certify(limits()).unwrap();
        let cert = res
            .certificate()
            .unwrap_or_else(|| panic!("{} instance must certify", inst.provenance))
            .clone();
        assert_eq!(cert.exponents, inst.expected_exponents, "{}", inst.provenance);
        assert_eq!(cert.der0_exponents, inst.expected_der0, "{}", inst.provenance);
        assert!(verify_certificate(&cert).unwrap().pass);
        cert
    }

    #[test]
    fn braid_via_reflection() {
        let inst = reflection(3, &[1, 1, 1]).unwrap();
        assert_eq!(inst.ring.weights(), &[1, 1, 1]);
        let cert = certified(&inst);
        assert_eq!(cert.exponents, vec![1, 2, 3]);
        assert_eq!(
            inst.divisor,
            parse_poly("x1*x2*x3*(x1-x2)*(x1-x3)*(x2-x3)", &inst.ring).unwrap()
        );
    }

    #[test]
    fn reflection_degenerate_line() {
        let inst = reflection(0, &[1, 1]).unwrap();
        assert_eq!(
            inst.divisor,
            parse_poly("x1 - x2", &inst.ring).unwrap()
        );
        let cert = certified(&inst);
        assert_eq!(cert.der0_exponents, vec![0]);
    }

    #[test]
    fn reflection_mixed_weights() {
        // l=3, k=1, n=(1,2,3): w = (6,3,2), N = 6
        let inst = reflection(1, &[1, 2, 3]).unwrap();
        assert_eq!(inst.ring.weights(), &[6, 3, 2]);
        // der0 = (N+1, 2N+1 - (w_2 + w_3)) = (7, 8)
        assert_eq!(inst.expected_der0, vec![7, 8]);
        certified(&inst);
    }

    #[test]
    fn pure_and_alt_bases_agree() {
        let n = [1, 2, 2];
        let pure = reflection_pure(&n).unwrap();
        certified(&pure);
        let alt = reflection_alt_basis(&n).unwrap();
        let res = saito_check(&pure.divisor, &alt).unwrap();
        let cert = res.certificate().expect("Lemma 6.9 basis certifies");
        assert_eq!(cert.exponents, pure.expected_exponents);
    }

    #[test]
    fn reflection_cone_table() {
        // P^3 table at n = (1,2,3)
        for (k, expect) in [(3usize, vec![1, 4, 6]), (2, vec![1, 4, 5]), (1, vec![1, 4, 4]), (0, vec![1, 3, 4])] {
            let inst = reflection_cone(k, &[1, 2, 3], "x0").unwrap();
            assert_eq!(inst.expected_der0, expect, "k = {k}");
            certified(&inst);
        }
    }

    #[test]
    fn reflection_cone_small() {
        let inst = reflection_cone(2, &[1, 1], "x0").unwrap();
        assert_eq!(inst.expected_der0, vec![1, 2]);
        certified(&inst);
        assert!(reflection_cone(2, &[2, 1], "x0").is_err());
    }

    #[test]
    fn bp_weighted() {
        // r = (1,1,1), Lambda = {1}: F = (x+y)(x+y+z), exponents (0,1)
        let inst = brieskorn_pham(&[1, 1, 1], &[q_int(1)], false, "t").unwrap();
        assert_eq!(inst.ring.weights(), &[1, 1, 1]);
        assert_eq!(inst.expected_der0, vec![0, 1]);
        certified(&inst);
    }

    #[test]
    fn bp_homogeneous_case() {
        // r_i = r: weights collapse to (1,1,1); exponents (r-1, r|Lambda|)
        let inst = brieskorn_pham(&[2, 2, 2], &[q_int(1)], false, "t").unwrap();
        assert_eq!(inst.ring.weights(), &[1, 1, 1]);
        assert_eq!(inst.expected_der0, vec![1, 2]);
        certified(&inst);
    }

    #[test]
    fn bp_cone() {
        let inst = brieskorn_pham(&[2, 3, 4], &[q_int(1), q_int(2)], true, "t").unwrap();
        assert_eq!(inst.expected_der0, vec![1, 2, 8]);
        certified(&inst);
    }

    #[test]
    fn bp_bad_lambda() {
        assert!(brieskorn_pham(&[1, 1, 1], &[q_int(0)], false, "t").is_err());
        assert!(brieskorn_pham(&[1, 1, 1], &[q_int(2), q_int(2)], false, "t").is_err());
    }

    #[test]
    fn pencil_parts_match_example() {
        let data = pencil(2, 0, &[1, 1, 1]).unwrap();
        let r = &data.ring;
        assert_eq!(data.f1, parse_poly("x0*x2 + x0*x1", r).unwrap());
        assert_eq!(data.f2, parse_poly("x1*x2", r).unwrap());
        assert_eq!(data.reduced, parse_poly("x0*x1*x2*(x1+x2)", r).unwrap());
        // closed form vs squarefree part of the raw product
        let raw = data.f1.mul(&data.f2).unwrap();
        assert_eq!(raw.squarefree_part().unwrap(), data.reduced.normalize());
    }

    #[test]
    fn pencil_k2_homogeneous() {
        let inst = pencil_divisor(2, 0, &[2, 2, 2], &[]).unwrap();
        assert_eq!(inst.ring.weights(), &[1, 1, 1]);
        assert_eq!(inst.expected_der0, vec![1, 3]);
        certified(&inst);
    }

    #[test]
    fn pencil_k3() {
        let inst = pencil_divisor(3, 1, &[1, 1, 1, 1], &[(q_int(1), q_int(1))]).unwrap();
        assert_eq!(inst.expected_der0, vec![2, 2, 4]);
        certified(&inst);
    }

    #[test]
    fn pencil_cone_cases() {
        let inst = pencil_cone(2, 0, &[1, 1, 1], &[], "x3").unwrap();
        assert_eq!(inst.expected_der0, vec![1, 1, 2]);
        certified(&inst);
        let inst = pencil_cone(2, 0, &[1, 1, 1], &[(q_int(1), q_int(1))], "x3").unwrap();
        assert_eq!(inst.expected_der0, vec![1, 2, 3]);
        certified(&inst);
    }

    #[test]
    fn pencil_scalar_validation() {
        assert!(pencil_divisor(2, 0, &[1, 1, 1], &[(q_int(0), q_int(1))]).is_err());
        assert!(pencil_divisor(
            2,
            0,
            &[1, 1, 1],
            &[(q_int(1), q_int(1)), (q_int(2), q_int(2))]
        )
        .is_err());
    }

    #[test]
    fn cone_check_normal_crossing() {
        let r = parse_ring("x,y").unwrap();
        let f = parse_poly("x*y", &r).unwrap();
        let basis = vec![
            parse_derivation("x; 0", &r).unwrap(),
            parse_derivation("0; y", &r).unwrap(),
        ];
        match cone_check(&f, &basis, "t").unwrap() {
            ConeOutcome::Lifted(inst) => {
                assert_eq!(inst.expected_exponents, vec![1, 1, 1]);
                certified(&inst);
            }
            ConeOutcome::Refused { .. } => panic!("normal crossing cone must lift"),
        }
    }

    #[test]
    fn cone_check_refusal() {
        // the Lemma 6.1 basis with these n_i has degree sum 9 but deg F = 8
        let n = [1, 1, 2];
        let affine = reflection_ring(&n, false).unwrap();
        let f = reflection_divisor(&affine, &n, 3).unwrap();
        let basis = (0..3)
            .map(|m| reflection_delta(&affine, &n, m))
            .collect::<Result<Vec<_>>>()
            .unwrap();
        match cone_check(&f, &basis, "t").unwrap() {
            ConeOutcome::Refused { degree_sum, divisor_degree } => {
                assert_ne!(degree_sum, divisor_degree);
            }
            ConeOutcome::Lifted(_) => panic!("Remark 6.11 case must refuse"),
        }
    }
}
