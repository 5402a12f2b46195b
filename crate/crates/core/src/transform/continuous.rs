use std::fmt;
use std::sync::Arc;

use super::lambert::lambert_f_ln;
use super::TransformResult;
use crate::error::{Error, Result};

pub type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// A continuous lower model `g` for a growth function.
///
/// All evaluation goes through `ln g` and its derivatives so that
/// stretched exponentials stay finite far beyond `f64::MAX`.
#[derive(Clone)]
pub enum GrowthModel {
    /// `g(r) = c·r^d`.
    Polynomial { c: f64, d: f64 },
    /// `g(r) = c·exp(b·r^α)`.
    StretchedExp { c: f64, b: f64, alpha: f64 },
    /// User-supplied `ln g` and `(ln g)' = g'/g`.
    Custom {
        name: String,
        ln_g: RealFn,
        dln_g: RealFn,
    },
}

impl fmt::Debug for GrowthModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GrowthModel::Polynomial { c, d } => write!(f, "Polynomial {{ c: {c}, d: {d} }}"),
            GrowthModel::StretchedExp { c, b, alpha } => {
                write!(f, "StretchedExp {{ c: {c}, b: {b}, alpha: {alpha} }}")
            }
            GrowthModel::Custom { name, .. } => write!(f, "Custom({name})"),
        }
    }
}

impl GrowthModel {
    pub fn polynomial(c: f64, d: f64) -> Result<GrowthModel> {
        if !(c > 0.0 && c.is_finite() && d >= 1.0 && d.is_finite()) {
            return Err(Error::Domain(format!("polynomial model needs c > 0, d >= 1 (got c={c}, d={d})")));
        }
        Ok(GrowthModel::Polynomial { c, d })
    }

    pub fn stretched_exp(c: f64, b: f64, alpha: f64) -> Result<GrowthModel> {
        if !(c > 0.0 && c.is_finite() && b > 0.0 && b.is_finite() && alpha > 0.0 && alpha <= 1.0) {
            return Err(Error::Domain(format!(
                "stretched exponential needs c, b > 0 and 0 < alpha <= 1 (got c={c}, b={b}, alpha={alpha})"
            )));
        }
        Ok(GrowthModel::StretchedExp { c, b, alpha })
    }

    /// `g(r) = e^r`.
    pub fn exponential() -> GrowthModel {
        GrowthModel::StretchedExp { c: 1.0, b: 1.0, alpha: 1.0 }
    }

    /// A model from `g` and `g'` evaluated directly.
    pub fn custom<G, D>(name: &str, g: G, dg: D) -> GrowthModel
    where
        G: Fn(f64) -> f64 + Send + Sync + 'static,
        D: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        let g = Arc::new(g);
        let g2 = g.clone();
        GrowthModel::Custom {
            name: name.to_string(),
            ln_g: Arc::new(move |r| g(r).ln()),
            dln_g: Arc::new(move |r| dg(r) / g2(r)),
        }
    }

    /// A model from `ln g` and `(ln g)'`.
    pub fn custom_log<G, D>(name: &str, ln_g: G, dln_g: D) -> GrowthModel
    where
        G: Fn(f64) -> f64 + Send + Sync + 'static,
        D: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        GrowthModel::Custom {
            name: name.to_string(),
            ln_g: Arc::new(ln_g),
            dln_g: Arc::new(dln_g),
        }
    }

    /// The model `h(r) = scale·g(stretch·r)`.
    pub fn rescaled(&self, scale: f64, stretch: f64) -> GrowthModel {
        match self {
            GrowthModel::Polynomial { c, d } => GrowthModel::Polynomial {
                c: c * scale * stretch.powf(*d),
                d: *d,
            },
            GrowthModel::StretchedExp { c, b, alpha } => GrowthModel::StretchedExp {
                c: c * scale,
                b: b * stretch.powf(*alpha),
                alpha: *alpha,
            },
            GrowthModel::Custom { name, ln_g, dln_g } => {
                let (ln_g, dln_g) = (ln_g.clone(), dln_g.clone());
                GrowthModel::Custom {
                    name: format!("{scale}*{name}({stretch}r)"),
                    ln_g: Arc::new(move |r| scale.ln() + ln_g(stretch * r)),
                    dln_g: Arc::new(move |r| stretch * dln_g(stretch * r)),
                }
            }
        }
    }

    pub fn ln_g(&self, r: f64) -> f64 {
        match self {
            GrowthModel::Polynomial { c, d } => c.ln() + d * r.ln(),
            GrowthModel::StretchedExp { c, b, alpha } => c.ln() + b * r.powf(*alpha),
            GrowthModel::Custom { ln_g, .. } => ln_g(r),
        }
    }

    pub fn g(&self, r: f64) -> f64 {
        self.ln_g(r).exp()
    }

    /// `g'(r)/g(r)`.
    pub fn dln_g(&self, r: f64) -> f64 {
        match self {
            GrowthModel::Polynomial { d, .. } => d / r,
            GrowthModel::StretchedExp { b, alpha, .. } => b * alpha * r.powf(alpha - 1.0),
            GrowthModel::Custom { dln_g, .. } => dln_g(r),
        }
    }

    /// `(ln g)''(r)`; central differences for custom models.
    pub fn d2ln_g(&self, r: f64) -> f64 {
        match self {
            GrowthModel::Polynomial { d, .. } => -d / (r * r),
            GrowthModel::StretchedExp { b, alpha, .. } => {
                b * alpha * (alpha - 1.0) * r.powf(alpha - 2.0)
            }
            GrowthModel::Custom { dln_g, .. } => {
                let h = 1e-5 * r;
                (dln_g(r + h) - dln_g(r - h)) / (2.0 * h)
            }
        }
    }

    /// Limit of `ln g` as r → 0⁺, estimated where no closed form exists.
    fn ln_g_at_zero(&self) -> f64 {
        match self {
            GrowthModel::Polynomial { .. } => f64::NEG_INFINITY,
            GrowthModel::StretchedExp { c, .. } => c.ln(),
            GrowthModel::Custom { ln_g, .. } => ln_g(1e-300),
        }
    }
}

/// `ln τ(r) = ln g(r) - ln(1 + r·g'(r)/g(r))`.
pub fn ln_tau(model: &GrowthModel, r: f64) -> Result<f64> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::Domain(format!("tau needs r > 0, got {r}")));
    }
    let v = model.ln_g(r) - (r * model.dln_g(r)).ln_1p();
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Numeric(format!("tau is not finite at r = {r}")))
    }
}

/// `τ(r) = g(r) / (1 + r·g'(r)/g(r))`.
pub fn tau(model: &GrowthModel, r: f64) -> Result<f64> {
    let v = ln_tau(model, r)?.exp();
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Numeric(format!("tau overflows at r = {r}")))
    }
}

/// Options for [`u_continuous_with`].
#[derive(Clone, Debug)]
pub struct ContinuousOptions {
    /// Compare the root-finding answer with a direct grid scan.
    pub cross_check: bool,
    /// Grid density of the scan, in points per decade of r.
    pub points_per_decade: usize,
    /// Relative tolerance of the cross-check.
    pub tolerance: f64,
}

impl Default for ContinuousOptions {
    fn default() -> Self {
        ContinuousOptions {
            cross_check: false,
            points_per_decade: 1024,
            tolerance: 1e-9,
        }
    }
}

enum Solve {
    Root(f64),
    Scan(TransformResult),
    AtZero(TransformResult),
}

const R_MAX: f64 = 1e300;
const R_MIN: f64 = 1e-12;

fn h_at(model: &GrowthModel, ln_t: f64, r: f64) -> Result<f64> {
    Ok(ln_tau(model, r)? - ln_t)
}

/// `(ln τ)'(r)`.
fn dh_at(model: &GrowthModel, r: f64) -> f64 {
    let p = model.dln_g(r);
    let q = model.d2ln_g(r);
    p - (p + r * q) / (1.0 + r * p)
}

fn solve(model: &GrowthModel, t: f64, opts: &ContinuousOptions) -> Result<Solve> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::Domain(format!("t must be positive and finite, got {t}")));
    }
    let ln_t = t.ln();
    let mut monotone = true;
    let v1 = h_at(model, ln_t, 1.0)?;
    let (mut lo, mut hi);
    if v1 < 0.0 {
        let (mut r, mut prev) = (1.0, v1);
        loop {
            r *= 2.0;
            if r > R_MAX {
                return Err(Error::Domain(format!("tau never reaches t = {t}")));
            }
            let w = h_at(model, ln_t, r)?;
            if w < prev {
                monotone = false;
            }
            if w >= 0.0 {
                (lo, hi) = (r / 2.0, r);
                break;
            }
            prev = w;
        }
    } else {
        let (mut r, mut prev) = (1.0, v1);
        loop {
            r /= 2.0;
            if r < R_MIN {
                return at_zero(model, t).map(Solve::AtZero);
            }
            let w = h_at(model, ln_t, r)?;
            if w > prev {
                monotone = false;
            }
            if w < 0.0 {
                (lo, hi) = (r, 2.0 * r);
                break;
            }
            prev = w;
        }
    }
    if monotone {
        // sample ln τ on and just past the bracket
        let (a, b) = (lo.ln(), (4.0 * hi).ln());
        let mut prev = f64::NEG_INFINITY;
        for k in 0..=64 {
            let r = (a + (b - a) * k as f64 / 64.0).exp();
            let v = ln_tau(model, r)?;
            if v < prev {
                monotone = false;
                break;
            }
            prev = v;
        }
    }
    if !monotone {
        let mut res = scan_objective(model, t, opts.points_per_decade)?;
        res.diagnostic = Some("non-injective-tau: value from a direct scan of the objective".into());
        res.certified = false;
        return Ok(Solve::Scan(res));
    }

    while hi - lo > 1e-4 * hi {
        let mid = (lo * hi).sqrt();
        if h_at(model, ln_t, mid)? < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let tol = 4.0 * f64::EPSILON * ln_t.abs().max(1.0);
    let mut r = 0.5 * (lo + hi);
    for _ in 0..200 {
        let v = h_at(model, ln_t, r)?;
        if v.abs() <= tol {
            break;
        }
        if v < 0.0 {
            lo = r;
        } else {
            hi = r;
        }
        let slope = dh_at(model, r);
        let mut next = r - v / slope;
        if !(slope > 0.0 && next > lo && next < hi) {
            next = 0.5 * (lo + hi);
        }
        if (next - r).abs() <= 1e-15 * r || hi - lo <= 1e-15 * hi {
            r = next;
            break;
        }
        r = next;
    }
    Ok(Solve::Root(r))
}

/// Supremum approached as r → 0⁺, which happens when t is at or below
/// `g(0⁺)`.
fn at_zero(model: &GrowthModel, t: f64) -> Result<TransformResult> {
    let ln_t = t.ln();
    let value = if ln_t < model.ln_g_at_zero() - 1e-12 {
        f64::INFINITY
    } else {
        objective(model, ln_t, R_MIN)
    };
    Ok(TransformResult {
        value,
        argmax: 0.0,
        certified: false,
        diagnostic: Some("supremum is approached as r -> 0+ and is not attained".into()),
    })
}

fn objective(model: &GrowthModel, ln_t: f64, r: f64) -> f64 {
    -(ln_t - model.ln_g(r)).exp_m1() / r
}

/// The largest solution of `τ(r) = t`.
///
/// When τ is detected to be non-monotone the largest maximiser of the
/// objective found by a direct scan is returned instead.
pub fn rho(model: &GrowthModel, t: f64) -> Result<f64> {
    match solve(model, t, &ContinuousOptions::default())? {
        Solve::Root(r) => Ok(r),
        Solve::Scan(res) => Ok(res.argmax),
        Solve::AtZero(_) => Err(Error::Domain(format!("t = {t} is not above g(0+)"))),
    }
}

/// Continuous transform `U_g(t) = (1/ρ)(1 - t/g(ρ))` with `ρ = rho(t)`.
pub fn u_continuous(model: &GrowthModel, t: f64) -> Result<TransformResult> {
    u_continuous_with(model, t, &ContinuousOptions::default())
}

pub fn u_continuous_with(
    model: &GrowthModel,
    t: f64,
    opts: &ContinuousOptions,
) -> Result<TransformResult> {
    let mut res = match solve(model, t, opts)? {
        Solve::Scan(res) | Solve::AtZero(res) => return Ok(res),
        Solve::Root(r) => {
            // at the root, 1 - t/g = r·p/(1 + r·p) with p = g'/g
            let p = model.dln_g(r);
            TransformResult {
                value: p / (1.0 + r * p),
                argmax: r,
                certified: true,
                diagnostic: None,
            }
        }
    };
    if opts.cross_check {
        let scan = scan_objective(model, t, opts.points_per_decade)?;
        let rel = (scan.value - res.value).abs() / res.value.abs().max(f64::MIN_POSITIVE);
        if rel > opts.tolerance {
            res.certified = false;
            res.diagnostic = Some(format!(
                "cross-check mismatch: scan gives {} at r = {} (relative gap {rel:e})",
                scan.value, scan.argmax
            ));
        }
    }
    Ok(res)
}

/// Least r with `g(r) ≥ t`; zero when `t ≤ g(0⁺)`.
pub fn g_inverse(model: &GrowthModel, t: f64) -> Result<f64> {
    if !(t > 0.0) {
        return Err(Error::Domain(format!("g_inverse needs t > 0, got {t}")));
    }
    let ln_t = t.ln();
    match model {
        GrowthModel::Polynomial { c, d } => Ok(((ln_t - c.ln()) / d).exp()),
        GrowthModel::StretchedExp { c, b, alpha } => {
            Ok(((ln_t - c.ln()).max(0.0) / b).powf(1.0 / alpha))
        }
        GrowthModel::Custom { .. } => {
            let (mut lo, mut hi) = (1.0, 1.0);
            if model.ln_g(1.0) < ln_t {
                while model.ln_g(hi) < ln_t {
                    lo = hi;
                    hi *= 2.0;
                    if hi > R_MAX {
                        return Err(Error::Domain(format!("g never reaches t = {t}")));
                    }
                }
            } else {
                while model.ln_g(lo) >= ln_t {
                    hi = lo;
                    lo /= 2.0;
                    if lo < 1e-300 {
                        return Ok(0.0);
                    }
                }
            }
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if mid <= lo || mid >= hi {
                    break;
                }
                if model.ln_g(mid) < ln_t {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            Ok(hi)
        }
    }
}

fn golden_max(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> (f64, f64) {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..200 {
        if b - a <= 1e-15 * b.abs().max(1e-300) {
            break;
        }
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    if fc > fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

/// Direct scan of `(1/r)(1 - t/g(r))` on a log grid starting at `g⁻¹(t)`,
/// stopped once `1/r` drops below the best value, then refined by golden
/// section around every grid peak close to the best. Among equal peaks the
/// largest r wins.
pub fn scan_objective(model: &GrowthModel, t: f64, points_per_decade: usize) -> Result<TransformResult> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::Domain(format!("t must be positive and finite, got {t}")));
    }
    let ln_t = t.ln();
    let start = g_inverse(model, t)?;
    if start <= R_MIN {
        return at_zero(model, t);
    }
    let factor = 10f64.powf(1.0 / points_per_decade.max(1) as f64);
    let f = |r: f64| objective(model, ln_t, r);
    let mut grid: Vec<(f64, f64)> = Vec::new();
    let mut best = f64::NEG_INFINITY;
    let mut r = start;
    let max_points = points_per_decade * 600;
    loop {
        let v = f(r);
        grid.push((r, v));
        if v >= best {
            best = v;
        }
        if best > 0.0 && 1.0 / r < best {
            break;
        }
        if grid.len() > max_points || r > R_MAX {
            return Err(Error::Numeric(format!("objective scan did not terminate for t = {t}")));
        }
        r *= factor;
    }
    let mut peaks: Vec<(f64, f64)> = Vec::new();
    for i in 0..grid.len() {
        let (ri, vi) = grid[i];
        let left = if i > 0 { grid[i - 1].1 } else { f64::NEG_INFINITY };
        let right = grid.get(i + 1).map_or(f64::NEG_INFINITY, |p| p.1);
        if vi < left || vi < right || vi < best - 1e-6 * best.abs() {
            continue;
        }
        let (rr, vv) = golden_max(f, ri / factor, ri * factor);
        peaks.push(if vv >= vi { (rr, vv) } else { (ri, vi) });
    }
    let top = peaks.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max);
    let winner = peaks
        .into_iter()
        .filter(|p| p.1 >= top - 1e-12 * top.abs())
        .fold((0.0, top), |acc, p| if p.0 > acc.0 { (p.0, top) } else { acc });
    Ok(TransformResult {
        value: winner.1,
        argmax: winner.0,
        certified: false,
        diagnostic: None,
    })
}

/// `U_g(t)` for `g(r) = c·r^d` in closed form.
pub fn u_poly_closed(c: f64, d: f64, t: f64) -> f64 {
    d * c.powf(1.0 / d) / (d + 1.0).powf(1.0 + 1.0 / d) * t.powf(-1.0 / d)
}

/// `U_g(t)` for `g(r) = c·exp(b·r^α)` in closed form, using
/// `λ = (α/c)·e^{1/α}` and `F = f(λt)`.
pub fn u_stretched_closed(c: f64, b: f64, alpha: f64, t: f64) -> Result<f64> {
    GrowthModel::stretched_exp(c, b, alpha)?;
    if !(t > 0.0) {
        return Err(Error::Domain(format!("t must be positive, got {t}")));
    }
    let ln_x = (alpha / c).ln() + 1.0 / alpha + t.ln();
    if ln_x < 1.0 {
        return Err(Error::Domain(format!("lambda*t < e for t = {t}")));
    }
    let f = lambert_f_ln(ln_x)?;
    if alpha * f <= 1.0 {
        return Err(Error::Domain(format!("t = {t} is not above g(0+) = {c}")));
    }
    Ok((b / f).powf(1.0 / alpha) * (1.0 - 1.0 / (alpha * f)).powf(1.0 - 1.0 / alpha))
}

/// `(c/(α·e·b))·exp(b·n^α)/n^α`, the Følner lower bound for stretched
/// exponential growth.
pub fn folner_lower_exp(c: f64, b: f64, alpha: f64, n: f64) -> f64 {
    let na = n.powf(alpha);
    ((c / (alpha * b)).ln() - 1.0 + b * na - na.ln()).exp()
}

/// `(c·u^α/(α·b))·exp(b/u^α - 1)`: the size beyond which the stretched
/// exponential transform drops below `u` (exactly at `u` when α = 1).
pub fn inverse_exp_bound(c: f64, b: f64, alpha: f64, u: f64) -> f64 {
    let ua = u.powf(alpha);
    ((c * ua / (alpha * b)).ln() + b / ua - 1.0).exp()
}

#[cfg(test)]
mod tests {
    use std::f64::consts::E;

    use super::*;
    use crate::transform::lambert_f;

    fn close(a: f64, b: f64, rel: f64) -> bool {
        (a - b).abs() <= rel * b.abs().max(f64::MIN_POSITIVE)
    }

    #[test]
    fn tau_examples() {
        let p = GrowthModel::polynomial(2.0, 1.0).unwrap();
        assert!(close(tau(&p, 1.0).unwrap(), 1.0, 1e-15));
        let p3 = GrowthModel::polynomial(3.0, 2.0).unwrap();
        assert!(close(tau(&p3, 2.0).unwrap(), 4.0, 1e-14));
        let e = GrowthModel::exponential();
        assert!(close(tau(&e, 3.0).unwrap(), 3f64.exp() / 4.0, 1e-14));
        assert!(tau(&e, 0.0).is_err());
    }

    #[test]
    fn rho_examples() {
        let p = GrowthModel::polynomial(2.0, 1.0).unwrap();
        assert!(close(rho(&p, 4.0).unwrap(), 4.0, 1e-12));
        let q = GrowthModel::polynomial(1.5, 3.0).unwrap();
        let want = (4.0 * 10.0 / 1.5f64).powf(1.0 / 3.0);
        assert!(close(rho(&q, 10.0).unwrap(), want, 1e-12));
        let e = GrowthModel::exponential();
        let r = rho(&e, E).unwrap();
        assert!(close(r, lambert_f(E * E).unwrap() - 1.0, 1e-12));
        assert!((r - 2.14619).abs() < 1e-5);
    }

    #[test]
    fn u_examples() {
        let e = GrowthModel::exponential();
        let u = u_continuous(&e, E).unwrap();
        assert!(close(u.value, 1.0 / lambert_f(E * E).unwrap(), 1e-12));
        assert!((u.value - 0.31785).abs() < 1e-5);
        assert!(close(u_stretched_closed(1.0, 1.0, 1.0, E).unwrap(), u.value, 1e-12));

        for d in [1.0, 2.0, 3.0] {
            let m = GrowthModel::polynomial(d + 1.0, d).unwrap();
            for t in [2.0f64, 17.0, 1e6] {
                let want = d / (d + 1.0) * t.powf(-1.0 / d);
                assert!(close(u_continuous(&m, t).unwrap().value, want, 1e-12));
                assert!(close(u_poly_closed(d + 1.0, d, t), want, 1e-13));
            }
        }
        assert!(close(u_poly_closed(2.0, 1.0, 4.0), 0.125, 1e-15));
    }

    #[test]
    fn cross_check_agrees() {
        let opts = ContinuousOptions {
            cross_check: true,
            ..Default::default()
        };
        for m in [
            GrowthModel::polynomial(1.0, 2.0).unwrap(),
            GrowthModel::stretched_exp(1.0, 0.7, 0.5).unwrap(),
            GrowthModel::exponential(),
        ] {
            for t in [3.0, 100.0, 1e8] {
                let u = u_continuous_with(&m, t, &opts).unwrap();
                assert!(u.certified, "{m:?} at {t}: {:?}", u.diagnostic);
            }
        }
    }

    #[test]
    fn left_inverse_far_out() {
        let m = GrowthModel::stretched_exp(1.0, 1.0, 0.5).unwrap();
        for t in [10.0, 1e50, 1e150, 1e300] {
            let r = rho(&m, t).unwrap();
            assert!((ln_tau(&m, r).unwrap() - t.ln()).abs() < 1e-10);
        }
    }

    #[test]
    fn below_g_at_zero() {
        let e = GrowthModel::exponential();
        assert!(rho(&e, 1.0).is_err());
        let u = u_continuous(&e, 1.0).unwrap();
        assert!((u.value - 1.0).abs() < 1e-6);
        assert!(!u.certified);
        assert!(u_continuous(&e, 0.5).unwrap().value.is_infinite());
        assert!(u_stretched_closed(1.0, 1.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn non_injective_tau_falls_back_to_scan() {
        // ln g has a plateau-like wiggle that makes τ dip
        let m = GrowthModel::custom_log(
            "wiggle",
            |r: f64| r + 3.0 * (r / 3.0).sin(),
            |r: f64| 1.0 + (r / 3.0).cos(),
        );
        let u = u_continuous(&m, 50.0).unwrap();
        assert!(u.diagnostic.as_deref().unwrap_or("").starts_with("non-injective"));
        let direct = scan_objective(&m, 50.0, 4096).unwrap();
        assert!(close(u.value, direct.value, 1e-9));
    }

    #[test]
    fn stretched_closed_bounds() {
        for t in [5.0, 50.0, 1e4, 1e9] {
            let (c, b, a) = (1.0, 1.0, 0.5f64);
            let lam = a / c * (1.0 / a).exp();
            let f = lambert_f(lam * t).unwrap();
            let v = u_stretched_closed(c, b, a, t).unwrap();
            assert!(v >= (b / f).powf(1.0 / a));
            let m = GrowthModel::stretched_exp(c, b, a).unwrap();
            assert!(close(u_continuous(&m, t).unwrap().value, v, 1e-10));
        }
    }

    #[test]
    fn folner_lower_exp_values() {
        let v = folner_lower_exp(0.5, 2f64.ln(), 1.0, 10.0);
        assert!(close(v, 0.5 / (E * 2f64.ln()) * 1024.0 / 10.0, 1e-13));
        assert!((v - 27.17).abs() < 0.01);
        let b = 0.8;
        assert!(close(folner_lower_exp(E * b, b, 1.0, 1.0), b.exp(), 1e-14));
        for n in [2.0, 5.0, 20.0] {
            let t = folner_lower_exp(1.0, 1.0, 1.0, n);
            assert!(close(u_stretched_closed(1.0, 1.0, 1.0, t).unwrap(), 1.0 / n, 1e-11));
            assert!(close(inverse_exp_bound(1.0, 1.0, 1.0, 1.0 / n), t, 1e-12));
        }
    }

    #[test]
    fn g_inverse_matches_models() {
        let p = GrowthModel::polynomial(2.0, 2.0).unwrap();
        assert!(close(g_inverse(&p, 50.0).unwrap(), 5.0, 1e-14));
        let c = GrowthModel::custom("square", |r| r * r, |r| 2.0 * r);
        assert!(close(g_inverse(&c, 49.0).unwrap(), 7.0, 1e-12));
    }
}
