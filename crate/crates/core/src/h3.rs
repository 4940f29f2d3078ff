//! Upper half-space model of hyperbolic 3-space and the action of
//! `PSL(2, C)` on it and on the sphere at infinity.
//!
//! A point is `(z, t)` with `z` complex and height `t > 0`. Isometries are
//! determinant-one complex 2x2 matrices acting by the Poincaré extension of
//! the Möbius map `ζ ↦ (aζ + b)/(cζ + d)`.

use std::fmt;
use std::ops::Mul;

use num_complex::Complex64;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Tolerance for `|tr^2 - 4|` below which a map counts as parabolic.
pub const DEFAULT_TOL_PARABOLIC: f64 = 1e-9;
/// Reports flag maps with `|tr^2 - 4|` below this as near-parabolic.
pub const NEAR_PARABOLIC: f64 = 1e-6;
/// Products are rescaled to determinant one every this many factors.
pub const RENORMALIZE_EVERY: usize = 32;
/// Matrix entries beyond this magnitude are treated as overflow.
pub const OVERFLOW_LIMIT: f64 = 1e150;

const IDENTITY_TOL: f64 = 1e-9;
const SINGULAR_TOL: f64 = 1e-14;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct H3Point {
    z: Complex64,
    t: f64,
}

impl H3Point {
    pub fn new(z: Complex64, t: f64) -> Result<Self> {
        if !(t > 0.0) || !t.is_finite() || !z.re.is_finite() || !z.im.is_finite() {
            return Err(Error::NonPositiveHeight(t));
        }
        Ok(H3Point { z, t })
    }

    /// The point `(0, 1)`.
    pub fn origin() -> Self {
        H3Point {
            z: Complex64::new(0.0, 0.0),
            t: 1.0,
        }
    }

    pub fn z(&self) -> Complex64 {
        self.z
    }

    pub fn t(&self) -> f64 {
        self.t
    }
}

/// A point of the Riemann sphere `C ∪ {∞}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SpherePoint {
    Finite(Complex64),
    Infinity,
}

impl SpherePoint {
    /// Chordal distance; antipodal points are at distance 2.
    pub fn chordal_distance(&self, other: &SpherePoint) -> f64 {
        match (self, other) {
            (SpherePoint::Infinity, SpherePoint::Infinity) => 0.0,
            (SpherePoint::Finite(p), SpherePoint::Infinity) | (SpherePoint::Infinity, SpherePoint::Finite(p)) => {
                2.0 / (1.0 + p.norm_sqr()).sqrt()
            }
            (SpherePoint::Finite(p), SpherePoint::Finite(q)) => {
                2.0 * (p - q).norm() / ((1.0 + p.norm_sqr()) * (1.0 + q.norm_sqr())).sqrt()
            }
        }
    }
}

impl Serialize for SpherePoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            SpherePoint::Finite(z) => [z.re, z.im].serialize(s),
            SpherePoint::Infinity => s.serialize_str("inf"),
        }
    }
}

impl fmt::Display for SpherePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpherePoint::Finite(z) => write!(f, "{z}"),
            SpherePoint::Infinity => write!(f, "inf"),
        }
    }
}

/// A determinant-one Möbius map; `M` and `-M` are the same isometry.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MoebiusMap {
    a: Complex64,
    b: Complex64,
    c: Complex64,
    d: Complex64,
}

fn c64(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

impl MoebiusMap {
    pub fn identity() -> Self {
        MoebiusMap {
            a: c64(1.0),
            b: c64(0.0),
            c: c64(0.0),
            d: c64(1.0),
        }
    }

    /// Divide a nonsingular matrix by a square root of its determinant.
    /// Matrices already at determinant one (to rounding) are kept verbatim.
    pub fn normalize(rows: [[Complex64; 2]; 2]) -> Result<Self> {
        let [[a, b], [c, d]] = rows;
        let det = a * d - b * c;
        if !det.is_finite() || det.norm() <= SINGULAR_TOL {
            return Err(Error::Singular(det.norm()));
        }
        if (det - 1.0).norm() <= 4.0 * f64::EPSILON {
            return Ok(MoebiusMap { a, b, c, d });
        }
        let s = det.sqrt();
        Ok(MoebiusMap {
            a: a / s,
            b: b / s,
            c: c / s,
            d: d / s,
        })
    }

    pub fn from_real(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        Self::normalize([[c64(a), c64(b)], [c64(c), c64(d)]])
    }

    pub fn rows(&self) -> [[Complex64; 2]; 2] {
        [[self.a, self.b], [self.c, self.d]]
    }

    pub fn det(&self) -> Complex64 {
        self.a * self.d - self.b * self.c
    }

    pub fn trace(&self) -> Complex64 {
        self.a + self.d
    }

    pub fn inverse(&self) -> Self {
        MoebiusMap {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
        }
    }

    /// Rescale by a square root of the determinant to remove drift.
    pub fn renormalized(&self) -> Result<Self> {
        let det = self.det();
        if !det.is_finite() || det.norm() <= SINGULAR_TOL {
            return Err(Error::Singular(det.norm()));
        }
        let s = det.sqrt();
        Ok(MoebiusMap {
            a: self.a / s,
            b: self.b / s,
            c: self.c / s,
            d: self.d / s,
        })
    }

    pub fn max_abs_entry(&self) -> f64 {
        [self.a, self.b, self.c, self.d]
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    fn check_range(&self) -> Result<()> {
        let m = self.max_abs_entry();
        if !m.is_finite() || m > OVERFLOW_LIMIT {
            return Err(Error::Overflow);
        }
        Ok(())
    }

    /// Equal as elements of `PSL(2, C)` within `tol` (entrywise, up to sign).
    pub fn approx_eq(&self, other: &MoebiusMap, tol: f64) -> bool {
        let close = |s: f64| {
            [
                (self.a, other.a),
                (self.b, other.b),
                (self.c, other.c),
                (self.d, other.d),
            ]
            .iter()
            .all(|(x, y)| (x - s * y).norm() <= tol)
        };
        close(1.0) || close(-1.0)
    }

    pub fn act_boundary(&self, p: SpherePoint) -> SpherePoint {
        match p {
            SpherePoint::Infinity => {
                if self.c == c64(0.0) {
                    SpherePoint::Infinity
                } else {
                    SpherePoint::Finite(self.a / self.c)
                }
            }
            SpherePoint::Finite(z) => {
                let den = self.c * z + self.d;
                if den == c64(0.0) {
                    SpherePoint::Infinity
                } else {
                    SpherePoint::Finite((self.a * z + self.b) / den)
                }
            }
        }
    }
}

impl Mul for MoebiusMap {
    type Output = MoebiusMap;

    fn mul(self, o: MoebiusMap) -> MoebiusMap {
        MoebiusMap {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }
}

impl Serialize for MoebiusMap {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let pair = |z: Complex64| [z.re, z.im];
        [[pair(self.a), pair(self.b)], [pair(self.c), pair(self.d)]].serialize(s)
    }
}

/// Left-to-right product with a determinant renormalization every
/// [`RENORMALIZE_EVERY`] factors (skipped while the determinant cannot be
/// evaluated accurately) and an overflow check after each step.
#[derive(Clone, Debug)]
pub struct ProductAccumulator {
    value: MoebiusMap,
    since_renormalize: usize,
}

impl Default for ProductAccumulator {
    fn default() -> Self {
        ProductAccumulator {
            value: MoebiusMap::identity(),
            since_renormalize: 0,
        }
    }
}

impl ProductAccumulator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, m: &MoebiusMap) -> Result<&MoebiusMap> {
        self.value = self.value * *m;
        self.since_renormalize += 1;
        if self.since_renormalize == RENORMALIZE_EVERY {
            self.since_renormalize = 0;
            // once |ad| ~ |bc| >> 1 the computed determinant is dominated by
            // cancellation error, and dividing by it would add drift
            let MoebiusMap { a, b, c, d } = self.value;
            let det = self.value.det();
            let bound = 8.0 * f64::EPSILON * (a.norm() * d.norm() + b.norm() * c.norm());
            if det.is_finite() && bound <= 1e-6 * det.norm() {
                self.value = self.value.renormalized().map_err(|_| Error::Overflow)?;
            }
        }
        self.value.check_range()?;
        Ok(&self.value)
    }

    pub fn value(&self) -> &MoebiusMap {
        &self.value
    }
}

pub fn product<'a>(maps: impl IntoIterator<Item = &'a MoebiusMap>) -> Result<MoebiusMap> {
    let mut acc = ProductAccumulator::new();
    for m in maps {
        acc.push(m)?;
    }
    Ok(acc.value)
}

/// Poincaré extension of `m` applied to `p`.
pub fn act_h3(m: &MoebiusMap, p: &H3Point) -> H3Point {
    let MoebiusMap { a, b, c, d } = *m;
    let (z, t) = (p.z, p.t);
    let cz_d = c * z + d;
    let den = cz_d.norm_sqr() + c.norm_sqr() * t * t;
    H3Point {
        z: ((a * z + b) * cz_d.conj() + a * c.conj() * t * t) / den,
        t: t / den,
    }
}

/// Hyperbolic distance, via `cosh d = 1 + (|Δz|^2 + Δt^2) / (2 t1 t2)`
/// rewritten as `sinh(d/2) = |Δ| / (2 sqrt(t1 t2))` to keep precision near 0.
pub fn dist_h3(p: &H3Point, q: &H3Point) -> f64 {
    let euclid = ((p.z - q.z).norm_sqr() + (p.t - q.t).powi(2)).sqrt();
    2.0 * (euclid / (2.0 * (p.t * q.t).sqrt())).asinh()
}

/// `d(p, m p)`, evaluated from the entries of `m` conjugated so that `p`
/// becomes `(0, 1)`; avoids forming the (possibly far away) point `m p`.
pub fn displacement(m: &MoebiusMap, p: &H3Point) -> f64 {
    let s = p.t.sqrt();
    let to_p = MoebiusMap {
        a: c64(s),
        b: p.z / s,
        c: c64(0.0),
        d: c64(1.0 / s),
    };
    let n = to_p.inverse() * *m * to_p;
    let spread = (n.a - n.d.conj()).norm_sqr() + (n.b + n.c.conj()).norm_sqr();
    2.0 * (spread.sqrt() / 2.0).asinh()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum IsometryClass {
    Identity,
    Parabolic,
    Elliptic,
    Loxodromic,
}

impl fmt::Display for IsometryClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            IsometryClass::Identity => "identity",
            IsometryClass::Parabolic => "parabolic",
            IsometryClass::Elliptic => "elliptic",
            IsometryClass::Loxodromic => "loxodromic",
        })
    }
}

pub fn classify(m: &MoebiusMap) -> IsometryClass {
    classify_with(m, DEFAULT_TOL_PARABOLIC)
}

/// Classification by the sign-invariant `tr^2`.
pub fn classify_with(m: &MoebiusMap, tol_parabolic: f64) -> IsometryClass {
    if m.approx_eq(&MoebiusMap::identity(), IDENTITY_TOL) {
        return IsometryClass::Identity;
    }
    let tau = m.trace() * m.trace();
    if (tau - 4.0).norm() < tol_parabolic {
        IsometryClass::Parabolic
    } else if tau.im.abs() < tol_parabolic && tau.re >= 0.0 && tau.re < 4.0 {
        IsometryClass::Elliptic
    } else {
        IsometryClass::Loxodromic
    }
}

pub fn is_near_parabolic(m: &MoebiusMap) -> bool {
    let tau = m.trace() * m.trace();
    (tau - 4.0).norm() < NEAR_PARABOLIC
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum FixedPoints {
    /// Parabolic: one double fixed point.
    Double(SpherePoint),
    Pair(SpherePoint, SpherePoint),
}

impl FixedPoints {
    pub fn points(&self) -> Vec<SpherePoint> {
        match *self {
            FixedPoints::Double(p) => vec![p],
            FixedPoints::Pair(p, q) => vec![p, q],
        }
    }
}

/// Roots of `c ζ^2 + (d - a) ζ - b = 0`, with `∞` when `c` vanishes.
pub fn fixed_points(m: &MoebiusMap) -> Result<FixedPoints> {
    let class = classify(m);
    if class == IsometryClass::Identity {
        return Err(Error::IdentityFixedPoints);
    }
    let MoebiusMap { a, b, c, d } = *m;
    let scale = m.max_abs_entry().max(1.0);
    let c_vanishes = c.norm() <= 1e-15 * scale;
    if class == IsometryClass::Parabolic {
        return Ok(FixedPoints::Double(if c_vanishes {
            SpherePoint::Infinity
        } else {
            SpherePoint::Finite((a - d) / (2.0 * c))
        }));
    }
    if c_vanishes {
        return Ok(FixedPoints::Pair(
            SpherePoint::Infinity,
            SpherePoint::Finite(b / (d - a)),
        ));
    }
    let lin = d - a;
    let root = (m.trace() * m.trace() - 4.0).sqrt();
    // pick the sign that avoids cancellation in lin + root
    let root = if (lin.conj() * root).re >= 0.0 { root } else { -root };
    let q = -0.5 * (lin + root);
    Ok(FixedPoints::Pair(
        SpherePoint::Finite(q / c),
        SpherePoint::Finite(-b / q),
    ))
}

/// Translation length along the axis: `2 ln |λ|` for the eigenvalue with
/// `|λ| >= 1` (equivalently `2 Re arccosh(tr/2)`); zero for parabolics.
pub fn translation_length(m: &MoebiusMap) -> Result<f64> {
    match classify(m) {
        IsometryClass::Identity | IsometryClass::Parabolic => Ok(0.0),
        IsometryClass::Elliptic => Err(Error::NoTranslationLength),
        IsometryClass::Loxodromic => Ok(loxodromic_length(m)),
    }
}

pub(crate) fn loxodromic_length(m: &MoebiusMap) -> f64 {
    let tr = m.trace();
    let root = (tr * tr - 4.0).sqrt();
    let lambda = [(tr + root) / 2.0, (tr - root) / 2.0]
        .into_iter()
        .map(|l| l.norm())
        .fold(0.0, f64::max);
    2.0 * lambda.ln()
}

/// A geodesic of H³ given by its two endpoints on the sphere.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BoundaryGeodesic {
    p: SpherePoint,
    q: SpherePoint,
}

impl BoundaryGeodesic {
    pub fn new(p: SpherePoint, q: SpherePoint) -> Result<Self> {
        if !(p.chordal_distance(&q) > 1e-12) {
            return Err(Error::CoincidentEndpoints);
        }
        Ok(BoundaryGeodesic { p, q })
    }

    pub fn endpoints(&self) -> (SpherePoint, SpherePoint) {
        (self.p, self.q)
    }

    pub fn image(&self, m: &MoebiusMap) -> Result<Self> {
        Self::new(m.act_boundary(self.p), m.act_boundary(self.q))
    }

    /// A map sending this geodesic to the vertical axis over 0, with `p ↦ 0`
    /// and `q ↦ ∞`.
    fn straightening_map(&self) -> Result<MoebiusMap> {
        let one = c64(1.0);
        let zero = c64(0.0);
        match (self.p, self.q) {
            (SpherePoint::Finite(p), SpherePoint::Finite(q)) => MoebiusMap::normalize([[one, -p], [one, -q]]),
            (SpherePoint::Finite(p), SpherePoint::Infinity) => MoebiusMap::normalize([[one, -p], [zero, one]]),
            (SpherePoint::Infinity, SpherePoint::Finite(q)) => MoebiusMap::normalize([[zero, one], [one, -q]]),
            (SpherePoint::Infinity, SpherePoint::Infinity) => Err(Error::CoincidentEndpoints),
        }
    }
}

/// Axis of a loxodromic (or elliptic) map: the geodesic between its two
/// fixed points.
pub fn axis(m: &MoebiusMap) -> Result<BoundaryGeodesic> {
    match fixed_points(m)? {
        FixedPoints::Pair(p, q) => BoundaryGeodesic::new(p, q),
        FixedPoints::Double(_) => Err(Error::CoincidentEndpoints),
    }
}

/// Distance from a point to a geodesic: straighten the geodesic to the
/// vertical axis over 0 and use `sinh d = |z| / t`.
pub fn dist_to_geodesic(p: &H3Point, g: &BoundaryGeodesic) -> Result<f64> {
    let moved = act_h3(&g.straightening_map()?, p);
    Ok((moved.z.norm() / moved.t).asinh())
}
