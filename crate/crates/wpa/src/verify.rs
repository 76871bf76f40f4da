//! Machine-checkable verification suite: each criterion runs the public API
//! against pinned expected values and tolerances and reports pass/fail with
//! a human-readable detail string. Backs `wpa verify` and the acceptance
//! integration test.

use std::time::Instant;

use crate::conformal::{ExtPoint, ExteriorMap};
use crate::construction::{
    densify, exact, lemma_construct, measure_certificate, stage_build, StageMode,
};
use crate::geometry::{
    boundary_sample, r_k_alpha, uniform_segment, CompactFamily, DomainSpec, RationalExponent,
};
use crate::poly::ComplexPolynomial;
use crate::potential::{
    alpha_k, alpha_threshold, harnack_alpha_bound, m_k, poisson_kernel, solynin_bound,
    solynin_phi, AlphaKMethod, MkMethod,
};
use crate::report::family_report_json;
use crate::weighted_approx::{convergence_scan, weighted_fit};
use crate::{cx, Error, Real, Result};

const PI: Real = std::f64::consts::PI;

/// Outcome of one acceptance criterion.
#[derive(Clone, Debug)]
pub struct CriterionResult {
    pub id: usize,
    pub slug: &'static str,
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
    pub seconds: f64,
}

type CriterionFn = fn() -> (bool, String);

const CRITERIA: [(usize, &str, &str, CriterionFn); 11] = [
    (1, "alpha-k-limits", "alpha_K closed forms vs shrinking-domain limits", c01),
    (2, "disc-threshold", "open-disc threshold (x0-rho)/(2rho)", c02),
    (3, "m-k", "M_K closed forms and numeric sup", c03),
    (4, "solynin", "Solynin bound equality and strictness", c04),
    (5, "pi-identities", "exact partial-sum identities", c05),
    (6, "r-k-alpha", "r(K,alpha) defining residual", c06),
    (7, "weighted-fit", "weighted minimax fit quality", c07),
    (8, "lemma-constructor", "certified constructor instance", c08),
    (9, "stage-builder", "staged builder halfspace and coefficient growth", c09),
    (10, "monotonicity", "threshold monotonicity in the domain", c10),
    (11, "infrastructure", "round-trips, normalization, determinism", c11),
];

/// The (id, slug, name) table of all criteria.
pub fn list() -> Vec<(usize, &'static str, &'static str)> {
    CRITERIA.iter().map(|(i, s, n, _)| (*i, *s, *n)).collect()
}

/// Run all criteria, or the one selected by slug.
pub fn run(only: Option<&str>) -> Result<Vec<CriterionResult>> {
    if let Some(slug) = only {
        if !CRITERIA.iter().any(|(_, s, _, _)| *s == slug) {
            return Err(Error::Config(format!(
                "unknown criterion '{slug}'; available: {}",
                CRITERIA.iter().map(|(_, s, _, _)| *s).collect::<Vec<_>>().join(", ")
            )));
        }
    }
    let mut out = Vec::new();
    for (id, slug, name, f) in CRITERIA {
        if only.is_some_and(|s| s != slug) {
            continue;
        }
        let t = Instant::now();
        let (pass, detail) = f();
        out.push(CriterionResult { id, slug, name, pass, detail, seconds: t.elapsed().as_secs_f64() });
    }
    Ok(out)
}

struct Checker {
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Checker {
    fn new() -> Self {
        Self { failures: Vec::new(), notes: Vec::new() }
    }

    fn check(&mut self, ok: bool, label: impl Into<String>) {
        if !ok {
            self.failures.push(label.into());
        }
    }

    fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    fn finish(self) -> (bool, String) {
        if self.failures.is_empty() {
            let detail = if self.notes.is_empty() { "ok".to_string() } else { self.notes.join("; ") };
            (true, detail)
        } else {
            (false, self.failures.join("; "))
        }
    }
}

fn c01() -> (bool, String) {
    let mut ck = Checker::new();
    for x0 in [2.0f64, 4.0, 9.0] {
        let t = Instant::now();
        let fam = CompactFamily::Segment { x0 };
        match alpha_k(&fam, AlphaKMethod::Limit) {
            Ok(limit) => {
                let closed = 1.0 / (x0.sqrt() - 1.0);
                ck.check(
                    (limit - closed).abs() <= 1e-3,
                    format!("segment x0={x0}: limit {limit} vs closed {closed}"),
                );
            }
            Err(e) => ck.check(false, format!("segment x0={x0}: {e}")),
        }
        ck.check(t.elapsed().as_secs_f64() < 5.0, format!("segment x0={x0} exceeded 5 s"));
    }
    for theta0 in [PI / 2.0, PI, 3.0 * PI / 2.0] {
        let t = Instant::now();
        let fam = CompactFamily::Arc { theta0 };
        match alpha_k(&fam, AlphaKMethod::Limit) {
            Ok(limit) => {
                let s = (theta0 / 4.0).sin();
                let closed = (1.0 - s) / (2.0 * s);
                ck.check(
                    (limit - closed).abs() <= 1e-3,
                    format!("arc theta0={theta0}: limit {limit} vs closed {closed}"),
                );
            }
            Err(e) => ck.check(false, format!("arc theta0={theta0}: {e}")),
        }
        ck.check(t.elapsed().as_secs_f64() < 5.0, format!("arc theta0={theta0} exceeded 5 s"));
    }
    ck.finish()
}

fn c02() -> (bool, String) {
    let mut ck = Checker::new();
    for (x0, rho) in [(2.0f64, 1.2f64), (3.0, 1.5), (1.5, 0.4)] {
        let spec = DomainSpec::new(CompactFamily::TangentDisc { x0 }, rho - (x0 - 1.0));
        match alpha_threshold(&spec, 4096) {
            Ok(a) => {
                let expect = (x0 - rho) / (2.0 * rho);
                ck.check(
                    (a - expect).abs() <= 1e-9,
                    format!("disc ({x0},{rho}): threshold {a} vs {expect}"),
                );
                // The closed form 1/(2x0−1) is reported, not asserted.
                ck.note(format!(
                    "disc ({x0},{rho}): threshold {a:.12}, closed-form value {:.12}",
                    1.0 / (2.0 * x0 - 1.0)
                ));
            }
            Err(e) => ck.check(false, format!("disc ({x0},{rho}): {e}")),
        }
    }
    ck.finish()
}

fn c03() -> (bool, String) {
    let mut ck = Checker::new();
    for x0 in [2.0f64, 3.0, 5.0] {
        let fam = CompactFamily::TangentDisc { x0 };
        let closed = (x0 + 1.0) / (x0 - 1.0);
        match m_k(&fam, MkMethod::Numeric) {
            Ok(v) => ck.check(
                (v.value - closed).abs() <= 1e-12,
                format!("disc x0={x0}: numeric {} vs {closed}", v.value),
            ),
            Err(e) => ck.check(false, format!("disc x0={x0}: {e}")),
        }
    }
    for x0 in [3.0f64, 5.0] {
        let fam = CompactFamily::Segment { x0 };
        let closed = solynin_phi(2.0 / (x0 - 1.0)).unwrap().exp();
        match m_k(&fam, MkMethod::Numeric) {
            Ok(v) => ck.check(
                (v.value - closed).abs() <= 1e-6,
                format!("segment x0={x0}: numeric {} vs {closed}", v.value),
            ),
            Err(e) => ck.check(false, format!("segment x0={x0}: {e}")),
        }
    }
    let fam = CompactFamily::Arc { theta0: PI };
    match m_k(&fam, MkMethod::Numeric) {
        Ok(v) => {
            let expect = 1.0 + 2f64.sqrt();
            ck.check(
                (v.value - expect).abs() <= 1e-6,
                format!("arc pi: numeric {} vs {expect}", v.value),
            );
            let envelope = solynin_bound(&fam, cx(-1.0, 0.0)).unwrap().exp();
            ck.check(
                v.value <= envelope + 1e-12,
                format!("arc pi: M_K {} above its Solynin envelope {envelope}", v.value),
            );
        }
        Err(e) => ck.check(false, format!("arc pi: {e}")),
    }
    ck.finish()
}

fn c04() -> (bool, String) {
    let mut ck = Checker::new();
    let fam: CompactFamily<Real> = CompactFamily::Segment { x0: 3.0 };
    let map = match ExteriorMap::for_domain(&DomainSpec::new(fam.clone(), 0.0)) {
        Ok(m) => m,
        Err(e) => return (false, e.to_string()),
    };
    let g = map.green_infinity(ExtPoint::Finite(cx(-1.0, 0.0))).unwrap();
    let phi = solynin_phi(2.0 / (3.0 - 1.0)).unwrap();
    ck.check((g - phi).abs() <= 1e-9, format!("equality at -1: g {g} vs Phi(1) {phi}"));
    // Strictness off the line: 100 exterior points with positive imaginary part.
    for j in 0..100 {
        let r = 1.5 + 3.0 * (j as f64) / 99.0;
        let t = 0.15 + (PI - 0.3) * (j as f64) / 99.0;
        let z = cx(2.0 + r * t.cos(), 0.2 + r * t.sin());
        let g = match map.forward(ExtPoint::Finite(z)) {
            Ok(_) => map.green_infinity(ExtPoint::Finite(z)).unwrap(),
            Err(_) => continue,
        };
        let bound = solynin_bound(&fam, z).unwrap();
        ck.check(g < bound, format!("strictness fails at {z}: g {g} vs bound {bound}"));
    }
    ck.finish()
}

fn c05() -> (bool, String) {
    let mut ck = Checker::new();
    let t = Instant::now();
    for n in 1..=12u32 {
        for sigma in 1..=4u32 {
            for tau in 1..=4u32 {
                for j in sigma * n..=(sigma + tau) * n - 1 {
                    let lhs = exact::alternating_sum(n, sigma, tau, j).unwrap();
                    let rhs = exact::pi_partial_sum_factor(n, sigma, tau, j).unwrap();
                    ck.check(
                        lhs == rhs,
                        format!("n={n} sigma={sigma} tau={tau} j={j}: {lhs} != {rhs}"),
                    );
                }
            }
        }
    }
    ck.check(t.elapsed().as_secs_f64() < 10.0, "exact identities exceeded 10 s");
    ck.finish()
}

fn c06() -> (bool, String) {
    let mut ck = Checker::new();
    let ms = [1.1f64, 1.35, 1.7, 2.0, 2.6, 3.3, 4.1, 5.5, 8.0, 13.0];
    let pairs = [(1u32, 1u32), (1, 2), (2, 1), (3, 4), (5, 2)];
    for &m in &ms {
        for &(s, t) in &pairs {
            let exp = RationalExponent::new(s, t).unwrap();
            let r = r_k_alpha(&exp, m).unwrap();
            let residual = (m.powi(t as i32) * r.powi(s as i32) * (1.0 + r).powi(t as i32) - 1.0).abs();
            ck.check(
                residual <= 1e-12,
                format!("M={m} sigma={s} tau={t}: residual {residual}"),
            );
        }
    }
    ck.finish()
}

fn c07() -> (bool, String) {
    let mut ck = Checker::new();
    // Exactly representable target: z²(3 − z) with n = 2, sigma = 1, tau = 2.
    let exp = RationalExponent::new(1, 2).unwrap();
    let fam = CompactFamily::Segment { x0: 3.0 };
    let target = ComplexPolynomial::from_real_coeffs(&[0.0, 0.0, 3.0, -1.0]);
    match weighted_fit(&fam.sample_k(512).unwrap(), &exp, 2, &target) {
        Ok(fit) => ck.check(
            fit.sup_residual < 1e-8,
            format!("representable target residual {}", fit.sup_residual),
        ),
        Err(e) => ck.check(false, format!("representable fit: {e}")),
    }
    // Convergence on the segment [1,4] with alpha = 1/2, target 1.
    let fam = CompactFamily::Segment { x0: 4.0 };
    let one = ComplexPolynomial::from_real_coeffs(&[1.0]);
    match convergence_scan(&fam, &exp, &one, &[4, 16]) {
        Ok(table) => {
            let (r4, r16) = (table[0].1, table[1].1);
            ck.check(
                r16 < 0.5 * r4,
                format!("residual(16) {r16} not below half of residual(4) {r4}"),
            );
            ck.note(format!("residual(4) {r4:.3e}, residual(16) {r16:.3e}"));
        }
        Err(e) => ck.check(false, format!("convergence scan: {e}")),
    }
    ck.finish()
}

fn c08() -> (bool, String) {
    let mut ck = Checker::new();
    let t = Instant::now();
    let fam = CompactFamily::Segment { x0: 3.0 };
    let exp = RationalExponent::new(1, 2).unwrap();
    let mk = m_k(&fam, MkMethod::ClosedForm).unwrap().value;
    let r = 0.9 * r_k_alpha(&exp, mk).unwrap();
    let l = uniform_segment(1.0, 1.15, 64);
    let one = ComplexPolynomial::from_real_coeffs(&[1.0]);
    match lemma_construct(&fam, &exp, 0.1, &one, 5, 10.0, r, &l) {
        Ok((p, cert)) => {
            ck.check(cert.pass, "certificate does not pass");
            ck.check(p.poly().valuation().unwrap_or(0) >= 5, "valuation below N = 5");
            // Independent re-verification on 4x denser samples, 10% slack.
            let dense = measure_certificate(
                &p,
                |z| one.eval(z),
                &densify(&l, 4),
                r,
                1024,
                cert.epsilon,
                cert.b,
            );
            ck.check(dense.pass, "dense re-verification does not pass");
            let within = |a: Real, b: Real| (a - b).abs() <= 0.1 * a.abs().max(b.abs());
            ck.check(within(cert.bound1, dense.bound1), "bound1 drifts beyond 10%");
            ck.check(within(cert.bound2, dense.bound2), "bound2 drifts beyond 10%");
            ck.check(
                within(cert.min_partial_real_abs, dense.min_partial_real_abs),
                "min partial sum drifts beyond 10%",
            );
            ck.check(within(cert.min_coeff_abs, dense.min_coeff_abs), "min coefficient drifts beyond 10%");
            ck.note(format!(
                "n = {}, C = {:.4}, bound1 {:.3e}, bound2 {:.3e}",
                cert.n_used, cert.c_used, cert.bound1, cert.bound2
            ));
        }
        Err(e) => ck.check(false, format!("constructor: {e}")),
    }
    let secs = t.elapsed().as_secs_f64();
    ck.check(secs < 60.0, format!("constructor took {secs:.1} s"));
    ck.finish()
}

fn c09() -> (bool, String) {
    let mut ck = Checker::new();
    let fam: CompactFamily<Real> = CompactFamily::Segment { x0: 3.0 };
    let exp = RationalExponent::new(1, 2).unwrap();
    let mk = m_k(&fam, MkMethod::ClosedForm).unwrap().value;
    let targets = [
        ComplexPolynomial::from_real_coeffs(&[1.0]),
        ComplexPolynomial::from_real_coeffs(&[2.0, -1.0]),
        ComplexPolynomial::from_real_coeffs(&[1.0, 0.0, 0.5]),
    ];
    match stage_build(&fam, &exp, &targets, 3, StageMode::Halfspace) {
        Ok((f, records)) => {
            ck.check(records.len() == 3, format!("built {} of 3 stages", records.len()));
            let mut prev_deg: Option<usize> = None;
            let mut parts = Vec::new();
            for rec in &records {
                ck.check(
                    rec.failure.is_none(),
                    format!("stage {} failed: {:?}", rec.stage, rec.failure),
                );
                if rec.failure.is_some() {
                    continue;
                }
                ck.check(rec.halfspace_ok, format!("stage {} halfspace violated", rec.stage));
                if let (Some(pd), Some(v)) = (prev_deg, rec.p.valuation()) {
                    ck.check(v > pd, format!("stage {} valuation {v} not above degree {pd}", rec.stage));
                }
                prev_deg = rec.p.degree();
                parts.push(rec.part.as_ref().unwrap());
                // Per-stage target error on a denser slice of L_n, evaluated
                // through the structured stage parts.
                let level = (1.0 - 1.0 / (rec.stage as f64 + 1.0)) * mk.powi(-2);
                let l_dense = fam.sublevel_slice(&exp, level, 2048).unwrap();
                let err = l_dense
                    .iter()
                    .map(|&z| {
                        let mut v = targets[rec.target_id].eval(z);
                        for part in &parts {
                            v = v - part.eval(z);
                        }
                        v.norm()
                    })
                    .fold(0.0, Real::max);
                ck.check(
                    err < rec.epsilon_n,
                    format!("stage {} error {err} vs eps {}", rec.stage, rec.epsilon_n),
                );
            }
            // Halfspace property over the full constructed support.
            let sums = f.partial_sums_at(cx(1.0, 0.0));
            for (j, s) in sums.iter().enumerate() {
                ck.check(
                    s.re >= -1e-9 || s.re <= -1.0 + 1e-9,
                    format!("Re S_{j}(f)(1) = {} in the forbidden strip", s.re),
                );
            }
        }
        Err(e) => ck.check(false, format!("halfspace build: {e}")),
    }
    match stage_build(&fam, &exp, &targets, 3, StageMode::GrowingCoeffs) {
        Ok((_, records)) => {
            for rec in &records {
                ck.check(
                    rec.failure.is_none(),
                    format!("growing stage {} failed: {:?}", rec.stage, rec.failure),
                );
                if rec.failure.is_some() {
                    continue;
                }
                let mut min_nonzero = Real::INFINITY;
                for c in rec.p.coeffs() {
                    let m = c.norm();
                    if m > 0.0 {
                        min_nonzero = min_nonzero.min(m);
                    }
                }
                ck.check(
                    min_nonzero >= rec.stage as f64,
                    format!("growing stage {}: min |a_k| = {min_nonzero}", rec.stage),
                );
            }
        }
        Err(e) => ck.check(false, format!("growing build: {e}")),
    }
    ck.finish()
}

fn c10() -> (bool, String) {
    let mut ck = Checker::new();
    let mut prev: Option<Real> = None;
    for rho in [1.1, 1.3, 1.6] {
        let spec = DomainSpec::new(CompactFamily::TangentDisc { x0: 2.0 }, rho - 1.0);
        let a = alpha_threshold(&spec, 1024).unwrap();
        if let Some(p) = prev {
            ck.check(p - a > 1e-6, format!("disc rho={rho}: {a} not below {p} by 1e-6"));
        }
        prev = Some(a);
    }
    prev = None;
    for eps in [0.05, 0.1, 0.2] {
        let spec = DomainSpec::new(CompactFamily::Segment { x0: 3.0 }, eps);
        let a = alpha_threshold(&spec, 1024).unwrap();
        if let Some(p) = prev {
            ck.check(p - a > 1e-6, format!("segment eps={eps}: {a} not below {p} by 1e-6"));
        }
        prev = Some(a);
    }
    ck.finish()
}

fn c11() -> (bool, String) {
    let mut ck = Checker::new();
    // Conformal round-trips both ways.
    let specs = [
        DomainSpec::new(CompactFamily::TangentDisc { x0: 2.0 }, 0.2),
        DomainSpec::new(CompactFamily::Segment { x0: 3.0 }, 0.1),
        DomainSpec::new(CompactFamily::Arc { theta0: PI }, 0.05),
    ];
    for spec in &specs {
        let map = ExteriorMap::for_domain(spec).unwrap();
        let mut tested = 0;
        for k in 0..100 {
            let t = 2.0 * PI * (k as f64) / 100.0;
            let r = 1.5 + 3.0 * ((k % 9) as f64) / 9.0;
            let z = cx(2.0 + r * t.cos(), r * t.sin());
            let w = match map.forward(ExtPoint::Finite(z)) {
                Ok(w) => w,
                Err(_) => continue,
            };
            tested += 1;
            match map.inverse(w).unwrap() {
                ExtPoint::Finite(back) => ck.check(
                    (back - z).norm() < 1e-10,
                    format!("round-trip failure at {z}: back {back}"),
                ),
                ExtPoint::Infinity => ck.check(false, format!("{z} round-tripped to infinity")),
            }
        }
        ck.check(tested >= 50, "too few exterior grid points survived");
        for k in 0..50 {
            let t = 2.0 * PI * (k as f64) / 50.0;
            let r = [1e-3, 0.3, 0.7, 1.0][k % 4];
            let w = cx(r * t.cos(), r * t.sin());
            match map.inverse(w) {
                Ok(ExtPoint::Finite(z)) => {
                    let back = map.forward(ExtPoint::Finite(z)).unwrap();
                    ck.check(
                        (back - w).norm() < 1e-10,
                        format!("inverse round-trip failure at w = {w}"),
                    );
                }
                Ok(ExtPoint::Infinity) => ck.check(false, format!("{w} inverted to infinity")),
                Err(e) => ck.check(false, format!("inverse at {w}: {e}")),
            }
        }
        // Boundary samples sit outside K.
        let pts = boundary_sample(spec, 64).unwrap();
        for z in pts {
            let (_, d) = spec.family.diam_and_dist(z).unwrap();
            ck.check(d > 0.0, format!("boundary sample {z} touches K"));
        }
    }
    // Poisson normalization.
    let z = cx::<Real>(0.3, 0.2);
    let m = 4096;
    let mut sum = 0.0;
    for k in 0..m {
        let theta = 2.0 * PI * (k as f64) / (m as f64);
        sum += poisson_kernel(z, cx(theta.cos(), theta.sin())).unwrap();
    }
    sum *= 2.0 * PI / (m as f64);
    ck.check((sum - 1.0).abs() < 1e-8, format!("Poisson normalization {sum}"));
    // Harnack bound equals the threshold on built-in maps.
    for spec in &specs {
        let a = alpha_threshold(spec, 1024).unwrap();
        let h = harnack_alpha_bound(spec, 1024).unwrap();
        ck.check((a - h).abs() <= 1e-9, format!("harnack {h} vs threshold {a}"));
    }
    // Byte-identical reports across thread counts.
    let fam = CompactFamily::Segment { x0: 4.0 };
    let pool1 = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let pool4 = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap();
    let rep1 = pool1.install(|| family_report_json(&fam)).unwrap();
    let rep4 = pool4.install(|| family_report_json(&fam)).unwrap();
    ck.check(rep1 == rep4, "report differs across thread counts");
    ck.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn listing_and_unknown_slug() {
        assert_eq!(list().len(), 11);
        assert!(run(Some("no-such-criterion")).is_err());
    }

    #[test]
    fn single_criterion_runs() {
        let results = run(Some("r-k-alpha")).unwrap();
        assert_eq!(results.len(), 1);
        assert!(results[0].pass, "{}", results[0].detail);
    }
}
