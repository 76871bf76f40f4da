//! Exterior conformal maps `φ : ℂ̄ ∖ Ḡ → 𝔻̄` with `φ(∞) = 0` for the built-in
//! domain families, plus a tabulated escape hatch for user-supplied
//! boundaries. Provides inverses, boundary-derivative magnitudes, and the
//! Green function with pole at infinity, `g = −log|φ|`.

use num_complex::Complex;
use num_traits::Zero;

use crate::geometry::{CompactFamily, DomainSpec};
use crate::{lit, Error, Result, Scalar};

/// Modulus slack accepted on `|φ(z)| ≤ 1` for exterior points.
const MOD_TOL: f64 = 1e-9;
/// Boundary-membership slack for derivative evaluation.
const BOUNDARY_TOL: f64 = 1e-8;
/// Derivatives below this magnitude are reported as degenerate.
const DERIV_FLOOR: f64 = 1e-12;

/// Point of the extended plane: the exterior maps send `∞` to `0`, so the
/// pole is represented explicitly rather than by overflow.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ExtPoint<T> {
    Finite(Complex<T>),
    Infinity,
}

impl<T> From<Complex<T>> for ExtPoint<T> {
    fn from(z: Complex<T>) -> Self {
        ExtPoint::Finite(z)
    }
}

#[derive(Clone, Debug)]
enum MapKind<T> {
    /// `φ(z) = ρ/(z − x0)` for the disc `G = D(x0, ρ)`.
    DiscMoebius { x0: T, rho: T },
    /// `φ(z) = φ̃^{-1}(z)/(1−ε)` where `φ̃(w) = (x0−1)(w + 1/w)/4 + (x0+1)/2`
    /// maps the punctured unit disc onto the complement of `[1, x0]`.
    SegmentJoukowski { x0: T, eps: T },
    /// `φ(z) = (s+ε)/ψ(z)`, `s = sin(θ0/4)`,
    /// `ψ(z) = (z − 1 + √((z−e^{iθ0/2})(z−e^{−iθ0/2})))/2` on the branch with
    /// `ψ(z) = z + O(1)` at infinity.
    ArcRadial { theta0: T, eps: T },
    /// Piecewise-linear boundary correspondence `θ ↦ ζ(θ)`; accuracy of
    /// off-boundary evaluation is limited to roughly the table resolution.
    UserSupplied { thetas: Vec<T>, zetas: Vec<Complex<T>> },
}

/// Conformal homeomorphism of `ℂ̄ ∖ Ḡ` onto the closed unit disc.
#[derive(Clone, Debug)]
pub struct ExteriorMap<T> {
    kind: MapKind<T>,
    phi_zero: Complex<T>,
}

impl<T: Scalar> ExteriorMap<T> {
    /// Exterior map of the inflated domain described by `domain`.
    pub fn for_domain(domain: &DomainSpec<T>) -> Result<Self> {
        domain.validate()?;
        let kind = match &domain.family {
            CompactFamily::TangentDisc { x0 } => MapKind::DiscMoebius {
                x0: *x0,
                rho: domain.rho().unwrap(),
            },
            CompactFamily::Segment { x0 } => MapKind::SegmentJoukowski {
                x0: *x0,
                eps: domain.inflation,
            },
            CompactFamily::Arc { theta0 } => MapKind::ArcRadial {
                theta0: *theta0,
                eps: domain.inflation,
            },
            CompactFamily::SampledJordan { .. } => {
                return Err(Error::Unsupported(
                    "sampled boundaries need a user-supplied exterior map".into(),
                ))
            }
        };
        let phi_zero = raw_forward(&kind, Complex::zero())?;
        Ok(Self { kind, phi_zero })
    }

    /// Map from a tabulated boundary correspondence: `pairs` lists
    /// `(θ, ζ(θ))` with strictly increasing `θ ∈ [0, 2π)`, where
    /// `φ(ζ(θ)) = e^{iθ}`. `phi_zero` is the caller-computed `φ(0)`.
    pub fn user_supplied(pairs: Vec<(T, Complex<T>)>, phi_zero: Complex<T>) -> Result<Self> {
        if pairs.len() < 16 {
            return Err(Error::Config("need at least 16 correspondence nodes".into()));
        }
        let two_pi = T::PI() + T::PI();
        for win in pairs.windows(2) {
            if !(win[0].0 < win[1].0) {
                return Err(Error::Config("correspondence angles must increase".into()));
            }
        }
        if pairs[0].0 < T::zero() || pairs[pairs.len() - 1].0 >= two_pi {
            return Err(Error::Config("correspondence angles must lie in [0, 2π)".into()));
        }
        if !(phi_zero.norm() < T::one()) {
            return Err(Error::Config("phi(0) must lie in the open unit disc".into()));
        }
        let (thetas, zetas) = pairs.into_iter().unzip();
        Ok(Self { kind: MapKind::UserSupplied { thetas, zetas }, phi_zero })
    }

    /// Cached `φ(0)`.
    pub fn phi_zero(&self) -> Complex<T> {
        self.phi_zero
    }

    /// `φ(∞) = 0` by normalization.
    pub fn phi_infinity(&self) -> Complex<T> {
        Complex::zero()
    }

    /// `w = φ(z)`, `|w| ≤ 1`. Points strictly inside `G` are rejected.
    pub fn forward(&self, z: ExtPoint<T>) -> Result<Complex<T>> {
        match z {
            ExtPoint::Infinity => Ok(Complex::zero()),
            ExtPoint::Finite(z) => {
                let w = raw_forward(&self.kind, z)?;
                if w.norm() > T::one() + lit(MOD_TOL) {
                    return Err(Error::Domain(format!("point {z} lies inside G")));
                }
                Ok(w)
            }
        }
    }

    /// `z = φ^{-1}(w)` for `|w| ≤ 1`; `w = 0` maps to the point at infinity.
    pub fn inverse(&self, w: Complex<T>) -> Result<ExtPoint<T>> {
        if w.norm() > T::one() + lit(MOD_TOL) {
            return Err(Error::Domain(format!("{w} lies outside the closed unit disc")));
        }
        if w.is_zero() {
            return Ok(ExtPoint::Infinity);
        }
        let z = match &self.kind {
            MapKind::DiscMoebius { x0, rho } => {
                Complex::new(*x0, T::zero()) + Complex::new(*rho, T::zero()) / w
            }
            MapKind::SegmentJoukowski { x0, eps } => {
                let wt = w * Complex::new(T::one() - *eps, T::zero());
                let quarter = Complex::new((*x0 - T::one()) * lit::<T>(0.25), T::zero());
                quarter * (wt + wt.inv()) + Complex::new((*x0 + T::one()) * lit::<T>(0.5), T::zero())
            }
            MapKind::ArcRadial { theta0, eps } => {
                let s = (*theta0 * lit::<T>(0.25)).sin();
                let c = (*theta0 * lit::<T>(0.5)).cos();
                let psi = Complex::new(s + *eps, T::zero()) / w;
                let one = Complex::new(T::one(), T::zero());
                let two = Complex::new(lit::<T>(2.0), T::zero());
                two * psi * (psi + one) / (two * psi + one - Complex::new(c, T::zero()))
            }
            MapKind::UserSupplied { .. } => {
                if (w.norm() - T::one()).abs() > lit(1e-6) {
                    return Err(Error::Unsupported(
                        "tabulated maps invert boundary values only".into(),
                    ));
                }
                let two_pi = T::PI() + T::PI();
                let mut theta = w.arg();
                if theta < T::zero() {
                    theta = theta + two_pi;
                }
                return Ok(ExtPoint::Finite(self.boundary_point(theta)?));
            }
        };
        Ok(ExtPoint::Finite(z))
    }

    /// Boundary point `ζ(θ) = φ^{-1}(e^{iθ})`, so that `φ(ζ(θ)) = e^{iθ}`
    /// exactly in the map parameter.
    pub fn boundary_point(&self, theta: T) -> Result<Complex<T>> {
        if let MapKind::UserSupplied { thetas, zetas } = &self.kind {
            let two_pi = T::PI() + T::PI();
            let mut t = theta % two_pi;
            if t < T::zero() {
                t = t + two_pi;
            }
            let n = thetas.len();
            // Locate the bracketing table interval (wrapping at 2π).
            let mut i = n - 1;
            for k in 0..n {
                if thetas[k] > t {
                    i = if k == 0 { n - 1 } else { k - 1 };
                    break;
                }
            }
            let j = (i + 1) % n;
            let span = if j == 0 { two_pi - thetas[i] + thetas[0] } else { thetas[j] - thetas[i] };
            let mut off = t - thetas[i];
            if off < T::zero() {
                off = off + two_pi;
            }
            let lam = Complex::new(off / span, T::zero());
            return Ok(zetas[i] + (zetas[j] - zetas[i]) * lam);
        }
        match self.inverse(Complex::from_polar(T::one(), theta))? {
            ExtPoint::Finite(z) => Ok(z),
            ExtPoint::Infinity => Err(Error::Domain("boundary point mapped to infinity".into())),
        }
    }

    /// `|φ′(ζ)|` for `ζ ∈ ∂G`, from the closed-form derivative for built-in
    /// kinds and a central difference on the tabulated correspondence
    /// otherwise.
    pub fn boundary_derivative_abs(&self, zeta: Complex<T>) -> Result<T> {
        let d = match &self.kind {
            MapKind::DiscMoebius { x0, rho } => {
                let dz = (zeta - Complex::new(*x0, T::zero())).norm();
                self.check_on_boundary(zeta)?;
                *rho / (dz * dz)
            }
            MapKind::SegmentJoukowski { x0, eps } => {
                let w = self.forward(ExtPoint::Finite(zeta))?;
                self.check_on_boundary(zeta)?;
                let wt = w * Complex::new(T::one() - *eps, T::zero());
                let quarter = Complex::new((*x0 - T::one()) * lit::<T>(0.25), T::zero());
                let one = Complex::new(T::one(), T::zero());
                // φ = φ̃^{-1}/(1−ε), so |φ′(ζ)| = 1/((1−ε)|φ̃′(φ̃^{-1}(ζ))|).
                let dtilde = (quarter * (one - (wt * wt).inv())).norm();
                if dtilde < lit(DERIV_FLOOR) {
                    return Err(Error::Degeneracy(format!(
                        "Joukowski derivative vanishes near {zeta}"
                    )));
                }
                ((T::one() - *eps) * dtilde).recip()
            }
            MapKind::ArcRadial { theta0, eps } => {
                let w = self.forward(ExtPoint::Finite(zeta))?;
                self.check_on_boundary(zeta)?;
                let s = (*theta0 * lit::<T>(0.25)).sin();
                let c = (*theta0 * lit::<T>(0.5)).cos();
                let se = Complex::new(s + *eps, T::zero());
                let psi = se / w;
                let one = Complex::new(T::one(), T::zero());
                let two = Complex::new(lit::<T>(2.0), T::zero());
                // ψ = (z − 1 + q)/2 gives q = 2ψ + 1 − z and ψ′ = (1 + (z−c)/q)/2.
                let q = two * psi + one - zeta;
                if q.norm() < lit(DERIV_FLOOR) {
                    return Err(Error::Degeneracy(format!(
                        "branch square root vanishes at {zeta}"
                    )));
                }
                let dpsi = (one + (zeta - Complex::new(c, T::zero())) / q) / two;
                (se * dpsi / (psi * psi)).norm()
            }
            MapKind::UserSupplied { thetas, zetas } => {
                let n = zetas.len();
                let mut best = 0usize;
                let mut best_d = T::infinity();
                for (k, zk) in zetas.iter().enumerate() {
                    let dk = (zeta - zk).norm();
                    if dk < best_d {
                        best_d = dk;
                        best = k;
                    }
                }
                let prev = (best + n - 1) % n;
                let next = (best + 1) % n;
                let dz = (zetas[next] - zetas[prev]).norm();
                if dz < lit(DERIV_FLOOR) {
                    return Err(Error::Degeneracy("coincident correspondence nodes".into()));
                }
                let two_pi = T::PI() + T::PI();
                let mut dt = thetas[next] - thetas[prev];
                if dt < T::zero() {
                    dt = dt + two_pi;
                }
                let dw = (Complex::from_polar(T::one(), thetas[prev] + dt)
                    - Complex::from_polar(T::one(), thetas[prev]))
                .norm();
                dw / dz
            }
        };
        if !d.is_finite() || d < lit(DERIV_FLOOR) {
            return Err(Error::Degeneracy(format!("|phi'| = {d} at {zeta}")));
        }
        Ok(d)
    }

    /// Finite-difference `|φ′(ζ(θ))| = 1/|ζ′(θ)|` with a central difference in
    /// the boundary parameter; self-consistency oracle for the closed forms.
    pub fn boundary_derivative_abs_fd(&self, theta: T, h: T) -> Result<T> {
        let zp = self.boundary_point(theta + h)?;
        let zm = self.boundary_point(theta - h)?;
        let dz = (zp - zm).norm();
        if dz < lit(DERIV_FLOOR) {
            return Err(Error::Degeneracy("stationary boundary parametrization".into()));
        }
        Ok(lit::<T>(2.0) * h.sin() / dz)
    }

    /// Green function of `ℂ̄ ∖ Ḡ` with pole at infinity: `g(z) = −log|φ(z)|`.
    pub fn green_infinity(&self, z: ExtPoint<T>) -> Result<T> {
        match z {
            ExtPoint::Infinity => Ok(T::infinity()),
            ExtPoint::Finite(_) => {
                if let MapKind::UserSupplied { .. } = &self.kind {
                    return Err(Error::Unsupported(
                        "tabulated maps evaluate the Green function on the boundary only (where it is 0)"
                            .into(),
                    ));
                }
                Ok(-self.forward(z)?.norm().ln())
            }
        }
    }

    fn check_on_boundary(&self, zeta: Complex<T>) -> Result<()> {
        if let MapKind::UserSupplied { .. } = &self.kind {
            return Ok(());
        }
        let w = raw_forward(&self.kind, zeta)?;
        if (w.norm() - T::one()).abs() > lit(BOUNDARY_TOL) {
            return Err(Error::Domain(format!("{zeta} is off the domain boundary")));
        }
        Ok(())
    }
}

fn raw_forward<T: Scalar>(kind: &MapKind<T>, z: Complex<T>) -> Result<Complex<T>> {
    match kind {
        MapKind::DiscMoebius { x0, rho } => {
            let d = z - Complex::new(*x0, T::zero());
            if d.is_zero() {
                return Err(Error::Domain("disc centre lies inside G".into()));
            }
            Ok(Complex::new(*rho, T::zero()) / d)
        }
        MapKind::SegmentJoukowski { x0, eps } => {
            let centre = (*x0 + T::one()) * lit::<T>(0.5);
            let scale = lit::<T>(4.0) / (*x0 - T::one());
            let u = (z - Complex::new(centre, T::zero())) * Complex::new(scale, T::zero());
            let four = Complex::new(lit::<T>(4.0), T::zero());
            let q = (u * u - four).sqrt();
            let half = Complex::new(lit::<T>(0.5), T::zero());
            let w1 = (u + q) * half;
            let w2 = (u - q) * half;
            // Roots of w² − uw + 1 = 0 multiply to 1; the inverse Joukowski
            // branch is the one inside the closed unit disc. Taking the
            // reciprocal of the larger root avoids the u − √(u²−4)
            // cancellation far from the segment.
            let wt = if w1.norm() > w2.norm() {
                w1.inv()
            } else if w2.norm() > w1.norm() {
                w2.inv()
            } else if w1.im >= T::zero() {
                w1
            } else {
                w2
            };
            Ok(wt / Complex::new(T::one() - *eps, T::zero()))
        }
        MapKind::ArcRadial { theta0, eps } => {
            let s = (*theta0 * lit::<T>(0.25)).sin();
            let half_t = *theta0 * lit::<T>(0.5);
            let a = Complex::new(half_t.cos(), half_t.sin());
            let q = ((z - a) * (z - a.conj())).sqrt();
            let one = Complex::new(T::one(), T::zero());
            let half = Complex::new(lit::<T>(0.5), T::zero());
            let p1 = (z - one + q) * half;
            let p2 = (z - one - q) * half;
            // ψ(z) = z + O(1) at infinity forces |ψ| ≥ sin(θ0/4); ties are
            // broken toward Re(ψ/z) ≥ 0.
            let psi = if p1.norm() > p2.norm() {
                p1
            } else if p2.norm() > p1.norm() {
                p2
            } else if (p1 * z.conj()).re >= T::zero() {
                p1
            } else {
                p2
            };
            if psi.norm() < lit(1e-300) {
                return Err(Error::Domain(format!("psi vanishes at {z}")));
            }
            Ok(Complex::new(s + *eps, T::zero()) / psi)
        }
        MapKind::UserSupplied { thetas, zetas } => {
            // Off-boundary evaluation is not defined by a table; accept only
            // points within the documented ~1e−3 resolution of the polyline.
            let n = zetas.len();
            let mut best = 0usize;
            let mut best_d = T::infinity();
            for (k, zk) in zetas.iter().enumerate() {
                let dk = (z - zk).norm();
                if dk < best_d {
                    best_d = dk;
                    best = k;
                }
            }
            let spacing = (zetas[(best + 1) % n] - zetas[best]).norm();
            if best_d > spacing + lit(1e-3) {
                return Err(Error::Unsupported(
                    "tabulated maps evaluate near the boundary only".into(),
                ));
            }
            Ok(Complex::from_polar(T::one(), thetas[best]))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cx;

    fn disc(x0: f64, rho: f64) -> ExteriorMap<f64> {
        let spec = DomainSpec::new(CompactFamily::TangentDisc { x0 }, rho - (x0 - 1.0));
        ExteriorMap::for_domain(&spec).unwrap()
    }

    fn segment(x0: f64, eps: f64) -> ExteriorMap<f64> {
        let spec = DomainSpec::new(CompactFamily::Segment { x0 }, eps);
        ExteriorMap::for_domain(&spec).unwrap()
    }

    fn arc(theta0: f64, eps: f64) -> ExteriorMap<f64> {
        let spec = DomainSpec::new(CompactFamily::Arc { theta0 }, eps);
        ExteriorMap::for_domain(&spec).unwrap()
    }

    #[test]
    fn disc_map_basics() {
        let map = disc(2.0, 1.2);
        assert_eq!(map.forward(ExtPoint::Infinity).unwrap(), cx(0.0, 0.0));
        match map.inverse(cx(1.0, 0.0)).unwrap() {
            ExtPoint::Finite(z) => assert!((z - cx(3.2, 0.0)).norm() < 1e-14),
            _ => panic!("finite expected"),
        }
        assert!((map.phi_zero() - cx(-0.6, 0.0)).norm() < 1e-14);
        let zeta = cx(0.8, 0.0);
        assert!((map.boundary_derivative_abs(zeta).unwrap() - 1.0 / 1.2).abs() < 1e-14);
    }

    #[test]
    fn segment_map_anchors() {
        let map = segment(4.0, 0.0);
        // φ̃^{-1}(0) = −(√x0−1)/(√x0+1).
        assert!((map.phi_zero() - cx(-1.0 / 3.0, 0.0)).norm() < 1e-12);
        match map.inverse(cx(-1.0, 0.0)).unwrap() {
            ExtPoint::Finite(z) => assert!((z - cx(1.0, 0.0)).norm() < 1e-12),
            _ => panic!("finite expected"),
        }
        match map.inverse(cx(1.0, 0.0)).unwrap() {
            ExtPoint::Finite(z) => assert!((z - cx(4.0, 0.0)).norm() < 1e-12),
            _ => panic!("finite expected"),
        }
    }

    #[test]
    fn arc_map_anchors() {
        let theta0 = std::f64::consts::PI;
        let s = (theta0 / 4.0).sin();
        let map = arc(theta0, 0.05);
        // ψ(0) = −1.
        assert!((map.phi_zero() - cx(-(s + 0.05), 0.0)).norm() < 1e-12);
        let g = map.green_infinity(ExtPoint::Finite(cx(-1.0, 0.0))).unwrap();
        let g0 = arc(theta0, 0.0)
            .green_infinity(ExtPoint::Finite(cx(-1.0, 0.0)))
            .unwrap();
        assert!((g0 - (1.0 + 2f64.sqrt()).ln()).abs() < 1e-12);
        assert!(g < g0);
    }

    #[test]
    fn green_disc_closed_form() {
        let map = disc(3.0, 2.0);
        let g = map.green_infinity(ExtPoint::Finite(cx(-1.0, 0.0))).unwrap();
        assert!((g - 2f64.ln()).abs() < 1e-14);
        let zeta = map.boundary_point(1.234).unwrap();
        assert!(map.green_infinity(ExtPoint::Finite(zeta)).unwrap().abs() < 1e-9);
    }

    #[test]
    fn round_trips() {
        for map in [disc(2.0, 1.2), segment(3.0, 0.1), arc(2.0, 0.05)] {
            for k in 0..100 {
                let t = 2.0 * std::f64::consts::PI * (k as f64) / 100.0;
                let r = 1.5 + 3.0 * ((k % 7) as f64) / 7.0;
                let z = cx(4.5 + r * t.cos(), r * t.sin());
                let w = match map.forward(ExtPoint::Finite(z)) {
                    Ok(w) => w,
                    Err(_) => continue,
                };
                match map.inverse(w).unwrap() {
                    ExtPoint::Finite(back) => assert!((back - z).norm() < 1e-10 * z.norm().max(1.0)),
                    ExtPoint::Infinity => panic!("unexpected infinity"),
                }
            }
        }
    }

    #[test]
    fn segment_derivative_self_consistency() {
        let map = segment(3.0, 0.1);
        for k in 0..64 {
            let theta = 2.0 * std::f64::consts::PI * (k as f64) / 64.0;
            let zeta = map.boundary_point(theta).unwrap();
            let analytic = map.boundary_derivative_abs(zeta).unwrap();
            let fd = map.boundary_derivative_abs_fd(theta, 1e-6).unwrap();
            assert!((analytic - fd).abs() < 1e-6 * analytic.max(1.0));
            assert!(analytic > 0.0);
        }
    }
}
