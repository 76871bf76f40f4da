//! Perturbation polynomials `Π_{n,C}^{σ,τ}(z) = C^n z^{σn} (1−z)^{τn}`, their
//! exact partial-sum identities, the constant selection for the two smallness
//! inequalities, the certified constructor of partial-sum-controlled
//! polynomials, and the finite staged builder on top of it.

use num_complex::Complex;

use crate::geometry::{k_alpha_member, r_k_alpha, CompactFamily, RationalExponent};
use crate::poly::ComplexPolynomial;
use crate::potential::{m_k, MkMethod};
use crate::util::scan_then_golden;
use crate::weighted_approx::weighted_fit_monomial;
use crate::{lit, Error, Result, Scalar};

/// Hard cap on the perturbation order `n` explored by the constructor.
pub const N_CAP: u32 = 64;

/// Per-instance numeric verification of the constructor's four conclusions:
/// closeness on `L`, smallness on `D̄(0,r)`, large partial sums at `1`, and
/// large coefficients.
#[derive(Clone, Debug)]
pub struct ConstructionCertificate<T> {
    pub n_used: u32,
    pub c_used: T,
    /// `sup_L |P − φ|`.
    pub bound1: T,
    /// `sup over D̄(0,r) of |P|` (measured on `|z| = r` by maximum modulus).
    pub bound2: T,
    /// `min over val ≤ j ≤ deg−1 of |Re S_j(P)(1)|`.
    pub min_partial_real_abs: T,
    /// `min over val ≤ k ≤ deg of |a_k|`.
    pub min_coeff_abs: T,
    pub epsilon: T,
    pub b: T,
    pub pass: bool,
}

/// One stage of the staged builder.
#[derive(Clone, Debug)]
pub struct StageRecord<T> {
    pub stage: u32,
    /// This stage's polynomial in structured form for stable point
    /// evaluation; `None` when the stage failed.
    pub part: Option<ConstructedPoly<T>>,
    pub p: ComplexPolynomial<T>,
    pub epsilon_n: T,
    pub s_n: T,
    pub b_n: T,
    pub target_id: usize,
    /// `Re S_j(f)(1) ∈ (−∞,−1] ∪ [0,∞)` over this stage's index range.
    pub halfspace_ok: bool,
    /// Populated when the stage could not be built; `p` is then zero.
    pub failure: Option<String>,
}

/// Behaviour of the staged builder's lower-bound parameter `B_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StageMode {
    /// `B_n = |Re Σ_{k<n} P_k(1)| + 1`: keeps every partial sum at `1` out of
    /// the open strip `(−1, 0)`.
    Halfspace,
    /// `B_n = n`: coefficient moduli grow without bound across stages.
    GrowingCoeffs,
}

/// `Π_{n,C}^{σ,τ}` as an explicit coefficient list,
/// `b_k = C^n binom(τn, k−σn) (−1)^{k−σn}` for `σn ≤ k ≤ (σ+τ)n`.
///
/// Magnitudes are assembled in the log domain; exponents beyond the scalar's
/// representable range are a precision error (use [`exact`] instead).
pub fn pi_poly<T: Scalar>(n: u32, c: T, sigma: u32, tau: u32) -> Result<ComplexPolynomial<T>> {
    if n < 1 {
        return Err(Error::Config("pi_poly needs n ≥ 1".into()));
    }
    if !(c > T::zero()) || !c.is_finite() {
        return Err(Error::Config(format!("pi_poly needs C > 0, got {c}")));
    }
    if sigma == 0 || tau == 0 {
        return Err(Error::Config("pi_poly needs positive sigma and tau".into()));
    }
    let tn = (tau * n) as usize;
    // ln k! table up to τn.
    let mut lf = Vec::with_capacity(tn + 1);
    let mut acc = T::zero();
    lf.push(acc);
    for k in 1..=tn {
        acc = acc + lit::<T>(k as f64).ln();
        lf.push(acc);
    }
    let ln_cn = lit::<T>(n as f64) * c.ln();
    let ln_max = T::max_value().ln();
    let mut coeffs = vec![Complex::new(T::zero(), T::zero()); (sigma * n) as usize + tn + 1];
    for i in 0..=tn {
        let ln_mag = ln_cn + lf[tn] - lf[i] - lf[tn - i];
        if ln_mag > ln_max {
            return Err(Error::Precision(format!(
                "|b_{i}| has log-magnitude {ln_mag}; use the exact integer path"
            )));
        }
        let mag = ln_mag.exp();
        let signed = if i % 2 == 0 { mag } else { -mag };
        coeffs[(sigma * n) as usize + i] = Complex::new(signed, T::zero());
    }
    Ok(ComplexPolynomial::from_coeffs(coeffs))
}

/// `Π_{n,C}^{σ,τ}(z) = (C z^σ (1−z)^τ)^n` in product form. The expanded
/// coefficients reach `C^n binom(τn, ·)`, so Horner evaluation of the
/// coefficient list loses all significance to cancellation wherever the true
/// value is small; every point evaluation must go through this form.
pub fn pi_eval<T: Scalar>(n: u32, c: T, sigma: u32, tau: u32, z: Complex<T>) -> Complex<T> {
    let one = Complex::new(T::one(), T::zero());
    let base = Complex::new(c, T::zero()) * z.powu(sigma) * (one - z).powu(tau);
    base.powu(n)
}

/// The constructor's output `P = z^{nσ} Q_{nτ} + Π_{n,C}^{σ,τ}`, kept in
/// parts: point evaluation goes through the product form of `Π` (see
/// [`pi_eval`]), while coefficient-level queries (partial sums at `1`,
/// coefficient magnitudes, valuation) use the expanded sum, whose individual
/// coefficients are accurate even though they are astronomically large.
#[derive(Clone, Debug)]
pub struct ConstructedPoly<T> {
    q_weighted: ComplexPolynomial<T>,
    expanded: ComplexPolynomial<T>,
    n: u32,
    c: T,
    sigma: u32,
    tau: u32,
}

impl<T: Scalar> ConstructedPoly<T> {
    pub fn new(
        q_weighted: ComplexPolynomial<T>,
        n: u32,
        c: T,
        sigma: u32,
        tau: u32,
    ) -> Result<Self> {
        let pi = pi_poly(n, c, sigma, tau)?;
        let expanded = q_weighted.add(&pi);
        Ok(Self { q_weighted, expanded, n, c, sigma, tau })
    }

    /// Numerically stable `P(z)`.
    pub fn eval(&self, z: Complex<T>) -> Complex<T> {
        self.q_weighted.eval(z) + pi_eval(self.n, self.c, self.sigma, self.tau, z)
    }

    /// The expanded coefficient form (valid for coefficient-level queries
    /// only; use [`ConstructedPoly::eval`] for point values).
    pub fn poly(&self) -> &ComplexPolynomial<T> {
        &self.expanded
    }

    /// The fitted weighted factor `z^{nσ} Q_{nτ}`.
    pub fn q_weighted(&self) -> &ComplexPolynomial<T> {
        &self.q_weighted
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn c(&self) -> T {
        self.c
    }
}

/// Exact integer identities behind the perturbation polynomial's partial
/// sums at `1`.
pub mod exact {
    use num_bigint::BigInt;

    use crate::{Error, Result};

    fn binom(n: u64, k: u64) -> BigInt {
        if k > n {
            return BigInt::from(0);
        }
        let mut acc = BigInt::from(1);
        for i in 0..k.min(n - k) {
            acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
        }
        acc
    }

    fn check_range(n: u32, sigma: u32, tau: u32, j: u32) -> Result<()> {
        if n < 1 || sigma == 0 || tau == 0 {
            return Err(Error::Config("need n ≥ 1 and positive sigma, tau".into()));
        }
        let lo = sigma * n;
        let hi = (sigma + tau) * n - 1;
        if j < lo || j > hi {
            return Err(Error::Domain(format!("j = {j} outside [{lo}, {hi}]")));
        }
        Ok(())
    }

    /// The exact integer multiplying `C^n` in `S_j(Π_{n,C}^{σ,τ})(1)`:
    /// `(−1)^{j−σn} binom(τn−1, j−σn)`, for `σn ≤ j ≤ (σ+τ)n − 1`.
    pub fn pi_partial_sum_factor(n: u32, sigma: u32, tau: u32, j: u32) -> Result<BigInt> {
        check_range(n, sigma, tau, j)?;
        let i = (j - sigma * n) as u64;
        let b = binom((tau * n - 1) as u64, i);
        Ok(if i % 2 == 0 { b } else { -b })
    }

    /// The same factor from first principles: the alternating sum
    /// `Σ_{k=0}^{j−σn} binom(τn, k) (−1)^k` of the expanded coefficients.
    pub fn alternating_sum(n: u32, sigma: u32, tau: u32, j: u32) -> Result<BigInt> {
        check_range(n, sigma, tau, j)?;
        let top = (tau * n) as u64;
        let mut acc = BigInt::from(0);
        for k in 0..=(j - sigma * n) as u64 {
            let term = binom(top, k);
            if k % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        Ok(acc)
    }
}

/// The constant `C` of the two smallness inequalities: the geometric mean of
/// `M^τ` and `U = min(r^{−σ}(1+r)^{−τ}, 1/sup_L |z|^σ|1−z|^τ)`, which
/// satisfies `M^τ < C < U` whenever the instance is feasible.
pub fn choose_c<T: Scalar>(
    m: T,
    sigma: u32,
    tau: u32,
    r: T,
    l_samples: &[Complex<T>],
) -> Result<T> {
    if sigma == 0 || tau == 0 {
        return Err(Error::Config("choose_c needs positive sigma and tau".into()));
    }
    if !(m > T::one()) {
        return Err(Error::Config(format!("choose_c needs M > 1, got {m}")));
    }
    if !(r > T::zero() && r < T::one()) {
        return Err(Error::Config(format!("choose_c needs r in (0,1), got {r}")));
    }
    if l_samples.is_empty() {
        return Err(Error::Config("choose_c needs at least one L sample".into()));
    }
    let (si, ti) = (sigma as i32, tau as i32);
    let sup_l = l_samples
        .iter()
        .map(|&z| z.norm().powi(si) * (Complex::new(T::one(), T::zero()) - z).norm().powi(ti))
        .fold(T::zero(), T::max);
    let u = (r.powi(si) * (T::one() + r).powi(ti)).recip().min(sup_l.recip());
    let mt = m.powi(ti);
    if !(u > mt) {
        return Err(Error::Infeasible(format!(
            "no admissible C: U = {u} does not exceed M^tau = {mt} (r or L too large)"
        )));
    }
    Ok((mt * u).sqrt())
}

/// Measure the four certificate quantities for a candidate `P` against the
/// target `φ` on the given `L` samples and the circle `|z| = r` (where the
/// sup over the disc is attained), with local refinement of the circle sup.
pub fn measure_certificate<T: Scalar>(
    p: &ConstructedPoly<T>,
    phi: impl Fn(Complex<T>) -> Complex<T>,
    l_samples: &[Complex<T>],
    r: T,
    circle_samples: usize,
    epsilon: T,
    b: T,
) -> ConstructionCertificate<T> {
    let bound1 = l_samples
        .iter()
        .map(|&z| (p.eval(z) - phi(z)).norm())
        .fold(T::zero(), T::max);

    let modulus = |theta: T| {
        p.eval(Complex::from_polar(r, theta)).norm()
    };
    let (_, neg) = scan_then_golden(|t| -modulus(t), T::zero(), T::PI() + T::PI(), circle_samples, lit(1e-10));
    let bound2 = -neg;

    let coeffs = p.poly();
    let one = Complex::new(T::one(), T::zero());
    let sums = coeffs.partial_sums_at(one);
    let (val, deg) = match (coeffs.valuation(), coeffs.degree()) {
        (Some(v), Some(d)) => (v, d),
        _ => (0, 0),
    };
    let mut min_partial = T::infinity();
    if !coeffs.is_zero() {
        // The range val ≤ j ≤ deg−1 may be empty; the bound is then vacuous.
        for j in val..deg {
            min_partial = min_partial.min(sums[j].re.abs());
        }
    }
    let mut min_coeff = T::infinity();
    if !coeffs.is_zero() {
        for k in val..=deg {
            min_coeff = min_coeff.min(coeffs.coeff(k).norm());
        }
    }

    let pass = bound1 < epsilon && bound2 < epsilon && min_partial >= b && min_coeff >= b;
    ConstructionCertificate {
        n_used: p.n(),
        c_used: p.c(),
        bound1,
        bound2,
        min_partial_real_abs: min_partial,
        min_coeff_abs: min_coeff,
        epsilon,
        b,
        pass,
    }
}

/// Insert `factor − 1` midpoints into every gap of an ordered sample list.
pub fn densify<T: Scalar>(points: &[Complex<T>], factor: usize) -> Vec<Complex<T>> {
    if points.len() < 2 || factor <= 1 {
        return points.to_vec();
    }
    let mut out = Vec::with_capacity((points.len() - 1) * factor + 1);
    for w in points.windows(2) {
        for k in 0..factor {
            let t = lit::<T>(k as f64) / lit::<T>(factor as f64);
            out.push(w[0] + (w[1] - w[0]) * Complex::new(t, T::zero()));
        }
    }
    out.push(points[points.len() - 1]);
    out
}

/// Construct `P = z^{nσ} Q_{nτ} + Π_{n,C}^{σ,τ}` with a passing certificate:
/// `P` is `ε`-close to the polynomial target `φ` on the `L` samples, `ε`-small
/// on `D̄(0,r)`, has valuation at least `N`, and all coefficients and interior
/// partial sums at `1` of modulus at least `B`.
///
/// Candidates `n` are scanned in increasing order from the smallest order not
/// excluded by the Π-only decay estimates; each candidate is fitted on a
/// densified copy of the `L` samples and measured, then re-verified on a 4×
/// denser set within 10% before being accepted. Orders beyond 64 are a scale
/// error.
#[allow(clippy::too_many_arguments)]
pub fn lemma_construct<T: Scalar>(
    family: &CompactFamily<T>,
    exp: &RationalExponent,
    epsilon: T,
    target: &ComplexPolynomial<T>,
    n_valuation: u32,
    b: T,
    r: T,
    l_samples: &[Complex<T>],
) -> Result<(ConstructedPoly<T>, ConstructionCertificate<T>)> {
    lemma_construct_with(family, exp, epsilon, &|z| target.eval(z), n_valuation, b, r, l_samples)
}

/// [`lemma_construct`] against a target given as an evaluation callback;
/// needed when the target itself must be evaluated in a structured form (the
/// staged builder's residual targets contain earlier `Π` terms).
#[allow(clippy::too_many_arguments)]
pub fn lemma_construct_with<T: Scalar>(
    family: &CompactFamily<T>,
    exp: &RationalExponent,
    epsilon: T,
    target: &dyn Fn(Complex<T>) -> Complex<T>,
    n_valuation: u32,
    b: T,
    r: T,
    l_samples: &[Complex<T>],
) -> Result<(ConstructedPoly<T>, ConstructionCertificate<T>)> {
    if !(epsilon > T::zero()) {
        return Err(Error::Config(format!("epsilon must be positive, got {epsilon}")));
    }
    if b < T::zero() {
        return Err(Error::Config(format!("B must be nonnegative, got {b}")));
    }
    if n_valuation < 1 {
        return Err(Error::Config("the valuation floor N must be at least 1".into()));
    }
    let mk = m_k(family, MkMethod::ClosedForm)?.value;
    for &z in l_samples {
        if !k_alpha_member(family, exp, mk, z)? {
            return Err(Error::Config(format!("L sample {z} violates the K(alpha) inequality")));
        }
    }
    let r_star = r_k_alpha(exp, mk)?;
    if !(r > T::zero() && r < r_star) {
        return Err(Error::Infeasible(format!("r = {r} must lie in (0, r(K,alpha) = {r_star})")));
    }
    let (sigma, tau) = (exp.sigma(), exp.tau());
    let c = choose_c(mk, sigma, tau, r, l_samples)?;

    let (si, ti) = (sigma as i32, tau as i32);
    let sup_l = l_samples
        .iter()
        .map(|&z| z.norm().powi(si) * (Complex::new(T::one(), T::zero()) - z).norm().powi(ti))
        .fold(T::zero(), T::max);
    // Smallest orders at which the Π terms alone decay below ε (both bases
    // are < 1 by the choice of C) and at which C^n reaches B.
    let need = |base: T, goal: T| -> u32 {
        if goal >= T::one() || base <= T::zero() {
            return 1;
        }
        let n = (goal.ln() / base.ln()).ceil();
        n.to_f64().map(|v| v as u32).unwrap_or(1).max(1)
    };
    let n_eps1 = need(c * sup_l, epsilon);
    let n_eps2 = need(c * r.powi(si) * (T::one() + r).powi(ti), epsilon);
    let n_b = if b <= T::one() {
        1
    } else {
        ((b.ln() / c.ln()).ceil().to_f64().map(|v| v as u32).unwrap_or(1)).max(1)
    };
    let n_val = (n_valuation + sigma - 1) / sigma;
    let n_start = n_val.max(n_eps1).max(n_eps2).max(n_b).max(1);

    let dense_l = densify(l_samples, 4);
    let mut last_fail = String::from("no candidate evaluated");
    let mut n = n_start;
    loop {
        if n > N_CAP {
            return Err(Error::Scale(format!(
                "no passing certificate up to n = {N_CAP} (started at {n_start}); last candidate: {last_fail}"
            )));
        }
        // Fit on a densification of L that satisfies the sample floor.
        let cols = (n * tau) as usize + 1;
        let mut factor = 1usize;
        while (l_samples.len() - 1) * factor + 1 < (4 * cols).max(256) {
            factor *= 2;
        }
        let fit_samples = densify(l_samples, factor);
        let values: Vec<Complex<T>> = fit_samples.iter().map(|&z| target(z)).collect();
        let fit = weighted_fit_monomial(&fit_samples, exp, n, &values)?;
        let p = ConstructedPoly::new(fit.weighted_poly(), n, c, sigma, tau)?;
        let cert = measure_certificate(&p, target, l_samples, r, 256, epsilon, b);
        if cert.pass {
            let dense = measure_certificate(&p, target, &dense_l, r, 1024, epsilon, b);
            if dense.pass && certs_within_slack(&cert, &dense, lit(0.1)) {
                return Ok((p, cert));
            }
            last_fail = format!(
                "n = {n} passed on the base samples but drifted on the 4x refinement"
            );
        } else {
            last_fail = format!(
                "n = {n}: bound1 {} bound2 {} min_partial {} min_coeff {} vs eps {epsilon}, B {b}",
                cert.bound1, cert.bound2, cert.min_partial_real_abs, cert.min_coeff_abs
            );
        }
        n += 1;
    }
}

fn certs_within_slack<T: Scalar>(
    base: &ConstructionCertificate<T>,
    dense: &ConstructionCertificate<T>,
    slack: T,
) -> bool {
    let close = |a: T, b: T| {
        let scale = a.abs().max(b.abs());
        scale == T::zero() || (a - b).abs() <= slack * scale
    };
    close(base.bound1, dense.bound1)
        && close(base.bound2, dense.bound2)
        && close(base.min_partial_real_abs, dense.min_partial_real_abs)
        && close(base.min_coeff_abs, dense.min_coeff_abs)
}

/// Run the constructor stage by stage: stage `n` approximates
/// `target_n − Σ_{k<n} P_k` to `ε_n = 2^{−n}` on the sub-level slice `L_n`,
/// is `ε_n`-small on `D̄(0, s_n)` with `s_n = r(K,α)(1 − 2^{−n})`, and starts
/// above the previous degree. An infeasible stage terminates the run with a
/// failure record; earlier stages are kept.
pub fn stage_build<T: Scalar>(
    family: &CompactFamily<T>,
    exp: &RationalExponent,
    targets: &[ComplexPolynomial<T>],
    stages: u32,
    mode: StageMode,
) -> Result<(ComplexPolynomial<T>, Vec<StageRecord<T>>)> {
    if targets.is_empty() {
        return Err(Error::Config("need at least one target".into()));
    }
    if stages < 1 || stages > 8 {
        return Err(Error::Config(format!("stages must lie in 1..=8, got {stages}")));
    }
    let one = Complex::new(T::one(), T::zero());
    if mode == StageMode::Halfspace {
        for (i, t) in targets.iter().enumerate() {
            if !(t.eval(one).re > T::zero()) {
                return Err(Error::Config(format!(
                    "halfspace mode needs Re target(1) > 0, violated by target {i}"
                )));
            }
        }
    }
    let mk = m_k(family, MkMethod::ClosedForm)?.value;
    let r_star = r_k_alpha(exp, mk)?;
    let mk_pow = mk.powi(-(exp.tau() as i32));

    let mut f = ComplexPolynomial::zero();
    let mut parts: Vec<ConstructedPoly<T>> = Vec::new();
    let mut records = Vec::with_capacity(stages as usize);
    for stage in 1..=stages {
        let half_pow = lit::<T>(0.5).powi(stage as i32);
        let epsilon_n = half_pow;
        let s_n = r_star * (T::one() - half_pow);
        let level = (T::one() - (lit::<T>(stage as f64) + T::one()).recip()) * mk_pow;
        let l_n = family.sublevel_slice(exp, level, 512)?;
        let b_n = match mode {
            StageMode::Halfspace => f.eval(one).re.abs() + T::one(),
            StageMode::GrowingCoeffs => lit(stage as f64),
        };
        let target_id = ((stage - 1) as usize) % targets.len();
        // Residual target, evaluated through the structured stage parts.
        let target = &targets[target_id];
        let parts_so_far = &parts;
        let phi = move |z: Complex<T>| {
            let mut v = target.eval(z);
            for part in parts_so_far {
                v = v - part.eval(z);
            }
            v
        };
        let n_valuation = f.degree().map_or(1, |d| d as u32 + 1);
        match lemma_construct_with(family, exp, epsilon_n, &phi, n_valuation, b_n, s_n, &l_n) {
            Ok((p, _cert)) => {
                let expanded = p.poly().clone();
                let val = expanded.valuation().unwrap_or(0);
                let deg = expanded.degree().unwrap_or(0);
                f = f.add(&expanded);
                let sums = f.partial_sums_at(one);
                let tol = lit::<T>(1e-9);
                let mut halfspace_ok = true;
                for j in val..=deg {
                    let re = sums[j].re;
                    if !(re >= -tol || re <= -T::one() + tol) {
                        halfspace_ok = false;
                        break;
                    }
                }
                records.push(StageRecord {
                    stage,
                    part: Some(p.clone()),
                    p: expanded,
                    epsilon_n,
                    s_n,
                    b_n,
                    target_id,
                    halfspace_ok,
                    failure: None,
                });
                parts.push(p);
            }
            Err(e) => {
                records.push(StageRecord {
                    stage,
                    part: None,
                    p: ComplexPolynomial::zero(),
                    epsilon_n,
                    s_n,
                    b_n,
                    target_id,
                    halfspace_ok: false,
                    failure: Some(e.to_string()),
                });
                break;
            }
        }
    }
    Ok((f, records))
}

/// Partial sums `S_j(P)(z)` for `j = 0..deg P`.
pub fn partial_sums_at<T: Scalar>(p: &ComplexPolynomial<T>, z: Complex<T>) -> Vec<Complex<T>> {
    p.partial_sums_at(z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cx;
    use num_bigint::BigInt;

    #[test]
    fn pi_poly_small_cases() {
        let p = pi_poly::<f64>(1, 1.0, 1, 1).unwrap();
        assert_eq!(p.coeffs().len(), 3);
        assert!((p.coeff(1) - cx(1.0, 0.0)).norm() < 1e-15);
        assert!((p.coeff(2) - cx(-1.0, 0.0)).norm() < 1e-15);

        let p = pi_poly::<f64>(1, 2.0, 2, 3).unwrap();
        let expect = [2.0, -6.0, 6.0, -2.0];
        for (i, e) in expect.iter().enumerate() {
            assert!((p.coeff(2 + i) - cx(*e, 0.0)).norm() < 1e-12);
        }
        assert_eq!(p.valuation(), Some(2));
        assert_eq!(p.degree(), Some(5));
    }

    #[test]
    fn pi_poly_coeffs_dominate_cn() {
        let c: f64 = 3.0;
        let p = pi_poly::<f64>(5, c, 1, 2).unwrap();
        let floor = c.powi(5) * (1.0 - 1e-12);
        for k in p.valuation().unwrap()..=p.degree().unwrap() {
            assert!(p.coeff(k).norm() >= floor);
        }
    }

    #[test]
    fn exact_partial_sum_identity() {
        let f = exact::pi_partial_sum_factor(1, 1, 1, 1).unwrap();
        assert_eq!(f, BigInt::from(1));
        let f = exact::pi_partial_sum_factor(2, 1, 2, 4).unwrap();
        assert_eq!(f, BigInt::from(3));
        let f = exact::pi_partial_sum_factor(2, 1, 2, 3).unwrap();
        assert_eq!(f, BigInt::from(-3));
        assert!(exact::pi_partial_sum_factor(2, 1, 2, 6).is_err());
    }

    #[test]
    fn pi_partial_sums_match_expansion() {
        let p = pi_poly::<f64>(2, 1.0, 1, 2).unwrap();
        let sums = p.partial_sums_at(cx(1.0, 0.0));
        let expect = [0.0, 0.0, 1.0, -3.0, 3.0, -1.0, 0.0];
        for (j, e) in expect.iter().enumerate() {
            assert!((sums[j].re - e).abs() < 1e-12, "j = {j}");
        }
    }

    #[test]
    fn choose_c_formula() {
        // One sample with |z||1−z| exactly 0.1: the smaller root of z(1−z) = 0.1.
        let z = 0.5 - (0.15f64).sqrt();
        let c = choose_c(2.0, 1, 1, 0.2, &[cx(z, 0.0)]).unwrap();
        assert!((c - (2.0f64 * (1.0 / 0.24f64).min(10.0)).sqrt()).abs() < 1e-9);
        // r at the defining root is infeasible.
        let exp = RationalExponent::new(1, 1).unwrap();
        let r_star = r_k_alpha(&exp, 2.0).unwrap();
        assert!(choose_c(2.0, 1, 1, r_star, &[cx(z, 0.0)]).is_err());
    }

    #[test]
    fn construct_pi_only() {
        // target ≡ 0, B = 0: Π alone passes with sup_L |Π| < ε.
        let fam = CompactFamily::Segment { x0: 3.0 };
        let exp = RationalExponent::new(1, 2).unwrap();
        let l = crate::geometry::uniform_segment(1.0, 1.1, 48);
        let mk = m_k(&fam, MkMethod::ClosedForm).unwrap().value;
        let r = 0.5 * r_k_alpha(&exp, mk).unwrap();
        let (p, cert) = lemma_construct(
            &fam,
            &exp,
            0.1,
            &ComplexPolynomial::zero(),
            1,
            0.0,
            r,
            &l,
        )
        .unwrap();
        assert!(cert.pass);
        assert!(cert.bound1 < 0.1);
        assert!(p.poly().valuation().unwrap() >= 1);
    }
}
