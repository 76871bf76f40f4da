//! Deterministic report assembly: 12-significant-digit numeric formatting and
//! a small ordered JSON writer, so identical configurations produce
//! byte-identical output regardless of thread count.

use crate::conformal::{ExtPoint, ExteriorMap};
use crate::construction::ConstructionCertificate;
use crate::geometry::{CompactFamily, DomainSpec};
use crate::potential::{
    alpha_k, m_k, solynin_bound, AlphaKMethod, CriterionReport, MkMethod,
};
use crate::weighted_approx::FitResult;
use crate::{cx, Real, Result};

/// Format with 12 significant digits.
pub fn fmt_g12(x: Real) -> String {
    format!("{x:.11e}")
}

/// Minimal ordered JSON value; object keys keep insertion order.
#[derive(Clone, Debug)]
pub enum Json {
    Null,
    Bool(bool),
    Int(i64),
    Num(Real),
    Str(String),
    Arr(Vec<Json>),
    Obj(Vec<(String, Json)>),
}

impl Json {
    pub fn obj(fields: Vec<(&str, Json)>) -> Json {
        Json::Obj(fields.into_iter().map(|(k, v)| (k.to_string(), v)).collect())
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        self.write(&mut out, 0);
        out.push('\n');
        out
    }

    fn write(&self, out: &mut String, indent: usize) {
        match self {
            Json::Null => out.push_str("null"),
            Json::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
            Json::Int(i) => out.push_str(&i.to_string()),
            Json::Num(x) => {
                if x.is_finite() {
                    out.push_str(&fmt_g12(*x));
                } else {
                    out.push_str("null");
                }
            }
            Json::Str(s) => {
                out.push('"');
                for ch in s.chars() {
                    match ch {
                        '"' => out.push_str("\\\""),
                        '\\' => out.push_str("\\\\"),
                        '\n' => out.push_str("\\n"),
                        '\t' => out.push_str("\\t"),
                        c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
                        c => out.push(c),
                    }
                }
                out.push('"');
            }
            Json::Arr(items) => {
                if items.is_empty() {
                    out.push_str("[]");
                    return;
                }
                out.push_str("[\n");
                for (i, item) in items.iter().enumerate() {
                    pad(out, indent + 1);
                    item.write(out, indent + 1);
                    if i + 1 < items.len() {
                        out.push(',');
                    }
                    out.push('\n');
                }
                pad(out, indent);
                out.push(']');
            }
            Json::Obj(fields) => {
                if fields.is_empty() {
                    out.push_str("{}");
                    return;
                }
                out.push_str("{\n");
                for (i, (k, v)) in fields.iter().enumerate() {
                    pad(out, indent + 1);
                    out.push('"');
                    out.push_str(k);
                    out.push_str("\": ");
                    v.write(out, indent + 1);
                    if i + 1 < fields.len() {
                        out.push(',');
                    }
                    out.push('\n');
                }
                pad(out, indent);
                out.push('}');
            }
        }
    }
}

fn pad(out: &mut String, indent: usize) {
    for _ in 0..indent {
        out.push_str("  ");
    }
}

/// The `report` document for a compact family: closed-form and limit α_K,
/// both M_K paths, the Solynin bound at −1, and (for the arc) the two
/// competing distance values at −1.
pub fn family_report_json(family: &CompactFamily<Real>) -> Result<String> {
    let closed = alpha_k(family, AlphaKMethod::ClosedForm)?;
    let limit = alpha_k(family, AlphaKMethod::Limit)?;
    let mk_closed = m_k(family, MkMethod::ClosedForm)?;
    let mk_numeric = m_k(family, MkMethod::Numeric)?;
    let minus1 = cx::<Real>(-1.0, 0.0);
    let bound = solynin_bound(family, minus1)?;
    let (_, dist) = family.diam_and_dist(minus1)?;
    let green_minus1 = match family {
        CompactFamily::SampledJordan { .. } => Json::Null,
        _ => {
            let map = ExteriorMap::for_domain(&DomainSpec::new(family.clone(), 0.0))?;
            Json::Num(map.green_infinity(ExtPoint::Finite(minus1))?)
        }
    };
    let mut fields = vec![
        ("alpha_k_closed_form", Json::Num(closed)),
        ("alpha_k_limit", Json::Num(limit)),
        (
            "m_k_closed_form",
            if mk_closed.numeric_fallback { Json::Null } else { Json::Num(mk_closed.value) },
        ),
        ("m_k_numeric", Json::Num(mk_numeric.value)),
        ("green_at_minus1", green_minus1),
        ("solynin_bound_at_minus1", Json::Num(bound)),
    ];
    if let CompactFamily::Arc { theta0 } = family {
        // The closed-form candidate √(1 + 2cos(θ0/2)) is reported alongside
        // the numerically computed distance; they disagree in general and no
        // reconciliation is attempted here.
        let inside = 1.0 + 2.0 * (theta0 / 2.0).cos();
        let paper = if inside >= 0.0 { Json::Num(inside.sqrt()) } else { Json::Null };
        fields.push(("dist_minus1_paper_formula", paper));
    }
    fields.push(("dist_minus1_numeric", Json::Num(dist)));
    Ok(Json::obj(fields).render())
}

/// Serialize a criterion report.
pub fn criterion_report_json(rep: &CriterionReport<Real>) -> String {
    Json::obj(vec![
        ("alpha", Json::Num(rep.alpha)),
        ("min_density", Json::Num(rep.min_density)),
        ("argmin_zeta_re", Json::Num(rep.argmin_zeta.re)),
        ("argmin_zeta_im", Json::Num(rep.argmin_zeta.im)),
        ("sample_count", Json::Int(rep.sample_count as i64)),
        ("pass", Json::Bool(rep.pass)),
    ])
    .render()
}

/// Serialize a fit result (coefficients as [re, im] pairs).
pub fn fit_result_json(fit: &FitResult<Real>) -> String {
    let coeffs = fit
        .q
        .coeffs()
        .iter()
        .map(|c| Json::Arr(vec![Json::Num(c.re), Json::Num(c.im)]))
        .collect();
    Json::obj(vec![
        ("n", Json::Int(fit.n as i64)),
        ("sigma", Json::Int(fit.exp.sigma() as i64)),
        ("tau", Json::Int(fit.exp.tau() as i64)),
        ("sup_residual", Json::Num(fit.sup_residual)),
        ("sample_count", Json::Int(fit.residuals.len() as i64)),
        ("q_coeffs", Json::Arr(coeffs)),
    ])
    .render()
}

/// Serialize a construction certificate.
pub fn certificate_json(cert: &ConstructionCertificate<Real>) -> String {
    certificate_value(cert).render()
}

pub fn certificate_value(cert: &ConstructionCertificate<Real>) -> Json {
    Json::obj(vec![
        ("n_used", Json::Int(cert.n_used as i64)),
        ("c_used", Json::Num(cert.c_used)),
        ("bound1", Json::Num(cert.bound1)),
        ("bound2", Json::Num(cert.bound2)),
        ("min_partial_real_abs", Json::Num(cert.min_partial_real_abs)),
        ("min_coeff_abs", Json::Num(cert.min_coeff_abs)),
        ("epsilon", Json::Num(cert.epsilon)),
        ("B", Json::Num(cert.b)),
        ("pass", Json::Bool(cert.pass)),
    ])
}
