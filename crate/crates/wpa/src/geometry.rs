//! Compact sets `K` touching the unit circle at `1`, their inflated domains
//! `G ⊃ K`, parameter-uniform sampling, and the derived quantities `r(K,α)`
//! and the sub-level region `K(α)`.

use num_complex::Complex;
use num_integer::Integer;

use crate::conformal::ExteriorMap;
use crate::util::{bisect_increasing, scan_then_golden};
use crate::{lit, Error, Result, Scalar};

/// Tolerance for "z lies on K" membership checks on sampled inputs.
pub const MEMBERSHIP_TOL: f64 = 1e-9;

/// Parametric description of the compact set `K`.
#[derive(Clone, Debug, PartialEq)]
pub enum CompactFamily<T> {
    /// Closed disc of centre `x0` and radius `x0 − 1`, tangent to the unit
    /// circle at `1` from outside.
    TangentDisc { x0: T },
    /// Real segment `[1, x0]`.
    Segment { x0: T },
    /// Circular arc `{e^{iθ} : |θ| ≤ θ0/2}` on the unit circle.
    Arc { theta0: T },
    /// Closed polyline through the given vertices; the caller is responsible
    /// for supplying a matching exterior map (see [`crate::conformal`]).
    SampledJordan { points: Vec<Complex<T>> },
}

impl<T: Scalar> CompactFamily<T> {
    pub fn validate(&self) -> Result<()> {
        match self {
            CompactFamily::TangentDisc { x0 } | CompactFamily::Segment { x0 } => {
                if !(*x0 > T::one()) || !x0.is_finite() {
                    return Err(Error::Config(format!("x0 must exceed 1, got {x0}")));
                }
            }
            CompactFamily::Arc { theta0 } => {
                let two_pi = T::PI() + T::PI();
                if !(*theta0 > T::zero() && *theta0 < two_pi) {
                    return Err(Error::Config(format!("theta0 must lie in (0, 2π), got {theta0}")));
                }
            }
            CompactFamily::SampledJordan { points } => {
                if points.len() < 3 {
                    return Err(Error::Config("sampled boundary needs at least 3 points".into()));
                }
                for p in points {
                    if p.norm() < T::one() - lit(MEMBERSHIP_TOL) {
                        return Err(Error::Config(format!(
                            "sampled point {p} lies inside the open unit disc"
                        )));
                    }
                    if p.im.abs() < lit(MEMBERSHIP_TOL) && p.re <= T::zero() {
                        return Err(Error::Config(format!(
                            "sampled point {p} lies on the cut (−∞, 0]"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Euclidean diameter of `K` and distance from `z` to `K`.
    ///
    /// Disc and segment use closed forms; the arc minimizes over the angle
    /// parameter (coarse scan plus golden-section, tolerance 1e−10), which
    /// also covers the endpoint cases.
    pub fn diam_and_dist(&self, z: Complex<T>) -> Result<(T, T)> {
        self.validate()?;
        let zero = T::zero();
        match self {
            CompactFamily::TangentDisc { x0 } => {
                let r = *x0 - T::one();
                let d = (z - Complex::new(*x0, zero)).norm() - r;
                Ok((r + r, d.max(zero)))
            }
            CompactFamily::Segment { x0 } => {
                let xc = z.re.max(T::one()).min(*x0);
                let d = (z - Complex::new(xc, zero)).norm();
                Ok((*x0 - T::one(), d))
            }
            CompactFamily::Arc { theta0 } => {
                let half = *theta0 * lit(0.5);
                let diam = if *theta0 <= T::PI() {
                    lit::<T>(2.0) * (half).sin()
                } else {
                    lit(2.0)
                };
                let f = |t: T| (z - Complex::new(t.cos(), t.sin())).norm();
                let (_, d) = scan_then_golden(f, -half, half, 512, lit(1e-10));
                Ok((diam, d))
            }
            CompactFamily::SampledJordan { points } => {
                let mut diam = zero;
                for i in 0..points.len() {
                    for j in i + 1..points.len() {
                        diam = diam.max((points[i] - points[j]).norm());
                    }
                }
                if point_in_polygon(points, z) {
                    return Ok((diam, zero));
                }
                let mut d = T::infinity();
                for i in 0..points.len() {
                    let a = points[i];
                    let b = points[(i + 1) % points.len()];
                    d = d.min(point_segment_dist(z, a, b));
                }
                Ok((diam, d))
            }
        }
    }

    /// `m` parameter-uniform points on `K`, suitable for discrete sup-norms.
    /// For the disc the points trace `∂K` (where the sup of any analytic
    /// function's modulus over `K` is attained).
    pub fn sample_k(&self, m: usize) -> Result<Vec<Complex<T>>> {
        self.validate()?;
        if m < 2 {
            return Err(Error::Config("need at least 2 samples of K".into()));
        }
        match self {
            CompactFamily::TangentDisc { x0 } => {
                let r = *x0 - T::one();
                Ok((0..m)
                    .map(|k| {
                        let t = lit::<T>(2.0) * T::PI() * lit::<T>(k as f64) / lit::<T>(m as f64);
                        Complex::new(*x0 + r * t.cos(), r * t.sin())
                    })
                    .collect())
            }
            CompactFamily::Segment { x0 } => Ok(uniform_segment(T::one(), *x0, m)),
            CompactFamily::Arc { theta0 } => {
                let half = *theta0 * lit(0.5);
                Ok((0..m)
                    .map(|k| {
                        let t = -half
                            + (half + half) * lit::<T>(k as f64) / lit::<T>((m - 1) as f64);
                        Complex::new(t.cos(), t.sin())
                    })
                    .collect())
            }
            CompactFamily::SampledJordan { points } => Ok(points.clone()),
        }
    }

    /// Parameter-uniform samples of a one-dimensional slice of the sub-level
    /// set `{z ∈ K : |z|^σ |1−z|^τ < level}`, starting at `1`.
    ///
    /// For the segment and disc the slice is the maximal real interval
    /// `[1, x_max] ⊆ K`; for the arc it is the symmetric sub-arc. The slice
    /// endpoint is found by bisection on the (monotone) level function and is
    /// kept strictly inside the sub-level set, so every returned sample
    /// satisfies the strict inequality. For sampled boundaries the input
    /// points satisfying the inequality are returned.
    pub fn sublevel_slice(
        &self,
        exp: &RationalExponent,
        level: T,
        m: usize,
    ) -> Result<Vec<Complex<T>>> {
        self.validate()?;
        if !(level > T::zero()) {
            return Err(Error::Config(format!("sub-level threshold must be positive, got {level}")));
        }
        if m < 2 {
            return Err(Error::Config("need at least 2 sub-level samples".into()));
        }
        let (sigma, tau) = (exp.sigma() as i32, exp.tau() as i32);
        let h = |z: Complex<T>| z.norm().powi(sigma) * (Complex::new(T::one(), T::zero()) - z).norm().powi(tau);
        match self {
            CompactFamily::TangentDisc { x0 } | CompactFamily::Segment { x0 } => {
                // h(x) = x^σ (x−1)^τ is strictly increasing on the real slice.
                let x_top = match self {
                    CompactFamily::TangentDisc { x0 } => *x0 + *x0 - T::one(),
                    _ => *x0,
                };
                let f = |x: T| h(Complex::new(x, T::zero())) - level;
                let x_max = if f(x_top) <= T::zero() {
                    x_top
                } else {
                    bisect_increasing(f, T::one(), x_top, 200)
                };
                Ok(uniform_segment(T::one(), x_max, m))
            }
            CompactFamily::Arc { theta0 } => {
                // On the arc |z| = 1 and |1−z| = 2 sin(|θ|/2), increasing in |θ|.
                let half = *theta0 * lit(0.5);
                let f = |t: T| h(Complex::new(t.cos(), t.sin())) - level;
                let t_max = if f(half) <= T::zero() {
                    half
                } else {
                    bisect_increasing(f, T::zero(), half, 200)
                };
                Ok((0..m)
                    .map(|k| {
                        let t = -t_max
                            + (t_max + t_max) * lit::<T>(k as f64) / lit::<T>((m - 1) as f64);
                        Complex::new(t.cos(), t.sin())
                    })
                    .collect())
            }
            CompactFamily::SampledJordan { points } => {
                Ok(points.iter().copied().filter(|&z| h(z) < level).collect())
            }
        }
    }
}

/// Domain `G ⊃ K` obtained by inflating the family: `ρ = (x0 − 1) + inflation`
/// for the disc, `ε = inflation` for segment and arc.
///
/// For the disc variant a negative inflation is accepted (down to `ρ > 0` and
/// `x0 − ρ > 0`): the threshold computations operate on the disc `D(x0, ρ)`
/// itself, which need not contain the nominal tangent disc.
#[derive(Clone, Debug, PartialEq)]
pub struct DomainSpec<T> {
    pub family: CompactFamily<T>,
    pub inflation: T,
}

impl<T: Scalar> DomainSpec<T> {
    pub fn new(family: CompactFamily<T>, inflation: T) -> Self {
        Self { family, inflation }
    }

    /// Disc radius `ρ` for the disc variant.
    pub fn rho(&self) -> Option<T> {
        match &self.family {
            CompactFamily::TangentDisc { x0 } => Some(*x0 - T::one() + self.inflation),
            _ => None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.family.validate()?;
        if !self.inflation.is_finite() {
            return Err(Error::Config("inflation must be finite".into()));
        }
        match &self.family {
            CompactFamily::TangentDisc { x0 } => {
                let rho = self.rho().unwrap();
                if !(rho > T::zero()) {
                    return Err(Error::Config(format!("disc radius must be positive, got {rho}")));
                }
                if !(*x0 - rho > T::zero()) {
                    return Err(Error::Config(format!(
                        "disc D({x0}, {rho}) meets the cut (−∞, 0]"
                    )));
                }
            }
            CompactFamily::Segment { x0 } => {
                let eps = self.inflation;
                if eps < T::zero() || eps >= T::one() {
                    return Err(Error::Config(format!("segment inflation must lie in [0, 1), got {eps}")));
                }
                if eps > T::zero() {
                    // Leftmost point of ∂G_ε (an ellipse with foci 1 and x0)
                    // must stay off the cut (−∞, 0].
                    let delta = T::one() - eps;
                    let left = (*x0 + T::one()) * lit::<T>(0.5)
                        - (*x0 - T::one()) * lit::<T>(0.25) * (delta + delta.recip());
                    if !(left > T::zero()) {
                        return Err(Error::Config(format!(
                            "segment inflation {eps} pushes G_eps onto the cut (−∞, 0]"
                        )));
                    }
                }
            }
            CompactFamily::Arc { theta0 } => {
                let s = (*theta0 * lit(0.25)).sin();
                if self.inflation < T::zero() || !(self.inflation < T::one() - s) {
                    return Err(Error::Config(format!(
                        "arc inflation must lie in [0, {}), got {}",
                        T::one() - s,
                        self.inflation
                    )));
                }
            }
            CompactFamily::SampledJordan { .. } => {
                if self.inflation != T::zero() {
                    return Err(Error::Config(
                        "sampled boundaries do not support inflation".into(),
                    ));
                }
            }
        }
        Ok(())
    }
}

/// Positive rational exponent `α = σ/τ`, kept in lowest terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RationalExponent {
    sigma: u32,
    tau: u32,
}

impl RationalExponent {
    pub fn new(sigma: u32, tau: u32) -> Result<Self> {
        if sigma == 0 || tau == 0 {
            return Err(Error::Config(format!(
                "exponent numerator and denominator must be positive, got {sigma}/{tau}"
            )));
        }
        let g = sigma.gcd(&tau);
        Ok(Self { sigma: sigma / g, tau: tau / g })
    }

    pub fn sigma(&self) -> u32 {
        self.sigma
    }

    pub fn tau(&self) -> u32 {
        self.tau
    }

    pub fn alpha<T: Scalar>(&self) -> T {
        lit::<T>(self.sigma as f64) / lit::<T>(self.tau as f64)
    }
}

/// `m` points tracing `∂G` once, uniformly in the map parameter: images of
/// `m` equispaced unit-circle points under the exterior map's inverse.
pub fn boundary_sample<T: Scalar>(domain: &DomainSpec<T>, m: usize) -> Result<Vec<Complex<T>>> {
    if m < 16 {
        return Err(Error::Config(format!("need at least 16 boundary samples, got {m}")));
    }
    let map = ExteriorMap::for_domain(domain)?;
    (0..m)
        .map(|k| {
            let theta = lit::<T>(2.0) * T::PI() * lit::<T>(k as f64) / lit::<T>(m as f64);
            map.boundary_point(theta)
        })
        .collect()
}

/// `r(K,α)`: the supremum of `r ∈ [0,1)` with `M^τ r^σ (1+r)^τ < 1`.
///
/// The level function is strictly increasing in `r` and exceeds 1 at `r = 1`
/// whenever `M > 1`, so the sup is the unique interior root, found by
/// bisection in the log domain to residual below 1e−12. The returned value
/// sits on the admissible side of the root.
pub fn r_k_alpha<T: Scalar>(exp: &RationalExponent, m: T) -> Result<T> {
    if !(m > T::one()) {
        return Err(Error::Config(format!("M must exceed 1, got {m}")));
    }
    let sigma = lit::<T>(exp.sigma() as f64);
    let tau = lit::<T>(exp.tau() as f64);
    let f = |r: T| tau * m.ln() + sigma * r.ln() + tau * r.ln_1p();
    Ok(bisect_increasing(f, T::zero(), T::one(), 200))
}

/// Membership in `K(α) = {z ∈ K : |z|^σ |1−z|^τ < M^{−τ}}`.
///
/// `z` must lie on `K` to tolerance 1e−9.
pub fn k_alpha_member<T: Scalar>(
    family: &CompactFamily<T>,
    exp: &RationalExponent,
    m: T,
    z: Complex<T>,
) -> Result<bool> {
    let (_, dist) = family.diam_and_dist(z)?;
    if dist > lit(MEMBERSHIP_TOL) {
        return Err(Error::Domain(format!("point {z} is off K by {dist}")));
    }
    let lhs = z.norm().powi(exp.sigma() as i32)
        * (Complex::new(T::one(), T::zero()) - z).norm().powi(exp.tau() as i32);
    Ok(lhs < m.powi(-(exp.tau() as i32)))
}

/// `m` equispaced points of the real segment `[a, b]`, endpoints included.
pub fn uniform_segment<T: Scalar>(a: T, b: T, m: usize) -> Vec<Complex<T>> {
    (0..m)
        .map(|k| {
            let t = lit::<T>(k as f64) / lit::<T>((m - 1) as f64);
            Complex::new(a + (b - a) * t, T::zero())
        })
        .collect()
}

fn point_segment_dist<T: Scalar>(z: Complex<T>, a: Complex<T>, b: Complex<T>) -> T {
    let ab = b - a;
    let len2 = ab.norm_sqr();
    if len2 == T::zero() {
        return (z - a).norm();
    }
    let t = ((z - a).re * ab.re + (z - a).im * ab.im) / len2;
    let t = t.max(T::zero()).min(T::one());
    (z - (a + ab * Complex::new(t, T::zero()))).norm()
}

fn point_in_polygon<T: Scalar>(points: &[Complex<T>], z: Complex<T>) -> bool {
    let mut inside = false;
    let n = points.len();
    for i in 0..n {
        let a = points[i];
        let b = points[(i + 1) % n];
        if (a.im > z.im) != (b.im > z.im) {
            let x = a.re + (z.im - a.im) / (b.im - a.im) * (b.re - a.re);
            if z.re < x {
                inside = !inside;
            }
        }
    }
    inside
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cx;

    #[test]
    fn segment_distances() {
        let k = CompactFamily::Segment { x0: 3.0 };
        let (diam, dist) = k.diam_and_dist(cx(-1.0, 0.0)).unwrap();
        assert_eq!(diam, 2.0);
        assert_eq!(dist, 2.0);
    }

    #[test]
    fn arc_diameter_and_distance() {
        let k = CompactFamily::Arc { theta0: std::f64::consts::PI };
        let (diam, dist) = k.diam_and_dist(cx(-1.0, 0.0)).unwrap();
        assert!((diam - 2.0).abs() < 1e-15);
        // Nearest arc points to −1 are the endpoints ±i.
        assert!((dist - 2f64.sqrt()).abs() < 1e-10);
    }

    #[test]
    fn r_k_alpha_quadratic_case() {
        // 2 r (1+r) = 1 has root (−1+√3)/2.
        let exp = RationalExponent::new(1, 1).unwrap();
        let r = r_k_alpha(&exp, 2.0).unwrap();
        assert!((r - (3f64.sqrt() - 1.0) / 2.0).abs() < 1e-12);
        assert!((2.0 * r * (1.0 + r) - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn r_k_alpha_segment_case() {
        let exp = RationalExponent::new(1, 2).unwrap();
        let m = 3.0 + 2.0 * 2f64.sqrt();
        let r = r_k_alpha(&exp, m).unwrap();
        assert!((r - 0.0279).abs() < 5e-4);
        assert!((m.powi(2) * r * (1.0 + r).powi(2) - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn k_alpha_membership() {
        let k = CompactFamily::Segment { x0: 3.0 };
        let exp = RationalExponent::new(1, 2).unwrap();
        let m = 3.0 + 2.0 * 2f64.sqrt();
        assert!(k_alpha_member(&k, &exp, m, cx(1.0, 0.0)).unwrap());
        assert!(k_alpha_member(&k, &exp, m, cx(1.1, 0.0)).unwrap());
        assert!(!k_alpha_member(&k, &exp, m, cx(3.0, 0.0)).unwrap());
        assert!(k_alpha_member(&k, &exp, m, cx(0.5, 0.0)).is_err());
    }

    #[test]
    fn exponent_reduces() {
        let exp = RationalExponent::new(2, 4).unwrap();
        assert_eq!((exp.sigma(), exp.tau()), (1, 2));
        assert!(RationalExponent::new(0, 3).is_err());
    }

    #[test]
    fn sublevel_slice_stays_strict() {
        let k = CompactFamily::Segment { x0: 3.0 };
        let exp = RationalExponent::new(1, 2).unwrap();
        let m = 3.0 + 2.0 * 2f64.sqrt();
        let level = 0.9 * m.powi(-2);
        let pts = k.sublevel_slice(&exp, level, 64).unwrap();
        assert_eq!(pts.len(), 64);
        assert_eq!(pts[0], cx(1.0, 0.0));
        for z in &pts {
            assert!(z.norm() * (cx::<f64>(1.0, 0.0) - z).norm_sqr() < level);
        }
    }
}
