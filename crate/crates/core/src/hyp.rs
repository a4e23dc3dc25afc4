//! The upper half-plane model of the hyperbolic plane.
//!
//! Isometries are real 2x2 matrices of determinant one taken up to sign.
//! Every constructor rescales to `det = 1` and picks the representative with
//! non-negative trace (ties broken by making the first nonzero entry
//! positive), so projective comparisons reduce to entrywise ones.
//!
//! Ideal points are projective pairs `(p : q)`, so `∞ = (1 : 0)` needs no
//! special casing. Unit tangent vectors are stored as frames: the vector is
//! the image under `frame` of the upward unit vector based at `i`.

use std::fmt;
use std::ops::Mul;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Tolerance for geometric identities (distances, incidences).
pub const GEOMETRIC_TOL: f64 = 1e-9;
/// Tolerance for algebraic identities (matrix entries, determinants).
pub const ALGEBRAIC_TOL: f64 = 1e-12;

/// Anything an isometry of the hyperbolic plane can act on.
pub trait Isometry: Sized {
    fn moved_by(&self, m: &MoebiusTransform) -> Self;
}

#[derive(Clone, Copy, PartialEq)]
pub struct MoebiusTransform {
    a: f64,
    b: f64,
    c: f64,
    d: f64,
}

impl fmt::Debug for MoebiusTransform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{:?}, {:?}], [{:?}, {:?}]]", self.a, self.b, self.c, self.d)
    }
}

impl MoebiusTransform {
    pub const IDENTITY: Self = Self {
        a: 1.0,
        b: 0.0,
        c: 0.0,
        d: 1.0,
    };

    /// Builds the transform `z ↦ (az + b)/(cz + d)`; the matrix only has to
    /// have positive determinant, it is rescaled here.
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        let det = a * d - b * c;
        if !(det.is_finite() && det > 0.0) || ![a, b, c, d].iter().all(|x| x.is_finite()) {
            return Err(Error::NonPositiveDeterminant { det });
        }
        Ok(Self::normalized(a, b, c, d, det))
    }

    /// Internal constructor for products of valid matrices.
    pub(crate) fn from_raw(a: f64, b: f64, c: f64, d: f64) -> Self {
        let det = a * d - b * c;
        debug_assert!(det > 0.0, "product of PSL(2,R) elements lost its determinant");
        Self::normalized(a, b, c, d, det)
    }

    fn normalized(a: f64, b: f64, c: f64, d: f64, det: f64) -> Self {
        let s = if det == 1.0 { 1.0 } else { det.sqrt().recip() };
        let (a, b, c, d) = (a * s, b * s, c * s, d * s);
        let tr = a + d;
        let flip = if tr != 0.0 {
            tr < 0.0
        } else {
            [a, b, c, d]
                .into_iter()
                .find(|x| *x != 0.0)
                .is_some_and(|x| x < 0.0)
        };
        if flip {
            Self {
                a: -a,
                b: -b,
                c: -c,
                d: -d,
            }
        } else {
            Self { a, b, c, d }
        }
    }

    pub fn entries(&self) -> [f64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn a(&self) -> f64 {
        self.a
    }
    pub fn b(&self) -> f64 {
        self.b
    }
    pub fn c(&self) -> f64 {
        self.c
    }
    pub fn d(&self) -> f64 {
        self.d
    }

    pub fn trace(&self) -> f64 {
        self.a + self.d
    }

    pub fn det(&self) -> f64 {
        self.a * self.d - self.b * self.c
    }

    /// Unipotent `(1 t; 0 1)`: horocycle flow fixing `∞`.
    pub fn parabolic(t: f64) -> Self {
        Self {
            a: 1.0,
            b: t,
            c: 0.0,
            d: 1.0,
        }
    }

    /// Unipotent `(1 0; t 1)`: horocycle flow fixing `0`.
    pub fn lower_parabolic(t: f64) -> Self {
        Self {
            a: 1.0,
            b: 0.0,
            c: t,
            d: 1.0,
        }
    }

    /// `diag(e^{t/2}, e^{-t/2})`: translation by `t` along the imaginary axis
    /// towards `∞`.
    pub fn geodesic_flow(t: f64) -> Self {
        let h = (0.5 * t).exp();
        Self::from_raw(h, 0.0, 0.0, h.recip())
    }

    /// Rotation about `i` turning tangent vectors at `i` counterclockwise by
    /// `angle`.
    pub fn rotation(angle: f64) -> Self {
        let (s, c) = (0.5 * angle).sin_cos();
        Self::from_raw(c, s, -s, c)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        Self::from_raw(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )
    }

    pub fn inverse(&self) -> Self {
        Self::from_raw(self.d, -self.b, -self.c, self.a)
    }

    /// `g ∘ self ∘ g⁻¹`.
    pub fn conjugated_by(&self, g: &Self) -> Self {
        g.compose(self).compose(&g.inverse())
    }

    pub fn powi(&self, n: i32) -> Self {
        let base = if n < 0 { self.inverse() } else { *self };
        let mut acc = Self::IDENTITY;
        for _ in 0..n.unsigned_abs() {
            acc = acc.compose(&base);
        }
        acc
    }

    pub fn apply<T: Isometry>(&self, x: &T) -> T {
        x.moved_by(self)
    }

    /// Frobenius norm of `M - I` for the canonical representative. Since the
    /// canonical sign has non-negative trace this is also the minimum over
    /// both signs.
    pub fn deviation(&self) -> f64 {
        let (a, b, c, d) = (self.a - 1.0, self.b, self.c, self.d - 1.0);
        (a * a + b * b + c * c + d * d).sqrt()
    }

    /// Frobenius distance between the two matrices, minimized over sign.
    pub fn distance(&self, other: &Self) -> f64 {
        let plus = self
            .entries()
            .iter()
            .zip(other.entries())
            .map(|(x, y)| (x - y).powi(2))
            .sum::<f64>();
        let minus = self
            .entries()
            .iter()
            .zip(other.entries())
            .map(|(x, y)| (x + y).powi(2))
            .sum::<f64>();
        plus.min(minus).sqrt()
    }

    /// Projective equality: largest entry difference, minimized over sign.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        let plus = self
            .entries()
            .iter()
            .zip(other.entries())
            .fold(0.0f64, |m, (x, y)| m.max((x - y).abs()));
        let minus = self
            .entries()
            .iter()
            .zip(other.entries())
            .fold(0.0f64, |m, (x, y)| m.max((x + y).abs()));
        plus.min(minus) <= tol
    }

    /// `2·arccosh(|tr|/2)`, zero for parabolic elements and the identity.
    pub fn translation_length(&self) -> Result<f64> {
        self.translation_length_with_tol(ALGEBRAIC_TOL)
    }

    pub fn translation_length_with_tol(&self, tol: f64) -> Result<f64> {
        let tr = self.trace().abs();
        if tr < 2.0 - tol {
            return Err(Error::Elliptic { trace: tr });
        }
        if tr <= 2.0 {
            return Ok(0.0);
        }
        Ok(2.0 * (0.5 * tr).acosh())
    }

    /// Axis of a hyperbolic element, oriented from the repelling to the
    /// attracting fixed point, so that `self` translates towards `end`.
    pub fn axis(&self) -> Result<Geodesic> {
        let tr = self.trace();
        if tr <= 2.0 + ALGEBRAIC_TOL {
            return Err(Error::Elliptic { trace: tr });
        }
        let disc = (tr * tr - 4.0).sqrt();
        let big = 0.5 * (tr + disc);
        let small = 1.0 / big;
        let eigvec = |lambda: f64| {
            // (M - λ) v = 0; take the better-conditioned row.
            let r1 = (self.b, lambda - self.a);
            let r2 = (lambda - self.d, self.c);
            let n1 = r1.0.hypot(r1.1);
            let n2 = r2.0.hypot(r2.1);
            if n1 >= n2 {
                BoundaryPoint::new(r1.0, r1.1)
            } else {
                BoundaryPoint::new(r2.0, r2.1)
            }
        };
        Geodesic::new(eigvec(small)?, eigvec(big)?)
    }
}

impl Mul for MoebiusTransform {
    type Output = MoebiusTransform;

    fn mul(self, rhs: Self) -> Self::Output {
        self.compose(&rhs)
    }
}

impl Mul<&MoebiusTransform> for &MoebiusTransform {
    type Output = MoebiusTransform;

    fn mul(self, rhs: &MoebiusTransform) -> Self::Output {
        self.compose(rhs)
    }
}

pub fn compose(a: &MoebiusTransform, b: &MoebiusTransform) -> MoebiusTransform {
    a.compose(b)
}

/// A point `x + iy` with `y > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HPoint {
    x: f64,
    y: f64,
}

impl HPoint {
    pub const I: HPoint = HPoint { x: 0.0, y: 1.0 };

    pub fn new(x: f64, y: f64) -> Result<Self> {
        if !(x.is_finite() && y.is_finite() && y > 0.0) {
            return Err(Error::NotInHalfPlane { x, y });
        }
        Ok(Self { x, y })
    }

    pub fn from_complex(z: Complex64) -> Result<Self> {
        Self::new(z.re, z.im)
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn y(&self) -> f64 {
        self.y
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(self.x, self.y)
    }

    /// Hyperbolic distance, via `2·asinh(|p - q| / (2√(y₁y₂)))`.
    pub fn distance(&self, other: &HPoint) -> f64 {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        let chord = dx.hypot(dy);
        2.0 * (0.5 * chord / (self.y * other.y).sqrt()).asinh()
    }

    pub fn approx_eq(&self, other: &HPoint, tol: f64) -> bool {
        self.distance(other) <= tol
    }
}

impl Isometry for HPoint {
    fn moved_by(&self, m: &MoebiusTransform) -> Self {
        let (a, b, c, d) = (m.a, m.b, m.c, m.d);
        let den_re = c * self.x + d;
        let den_im = c * self.y;
        let den = den_re * den_re + den_im * den_im;
        let num_re = a * self.x + b;
        let x = (num_re * den_re + a * self.y * den_im) / den;
        let y = self.y / den;
        HPoint { x, y }
    }
}

pub fn hyp_distance(p: &HPoint, q: &HPoint) -> f64 {
    p.distance(q)
}

/// A point `(p : q)` of the circle at infinity `ℝ ∪ {∞}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryPoint {
    p: f64,
    q: f64,
}

impl BoundaryPoint {
    pub const INFINITY: BoundaryPoint = BoundaryPoint { p: 1.0, q: 0.0 };

    pub fn new(p: f64, q: f64) -> Result<Self> {
        let m = p.abs().max(q.abs());
        if !(m.is_finite() && m > 0.0) {
            return Err(Error::DegenerateBoundaryPoint);
        }
        let (mut p, mut q) = (p / m, q / m);
        if q < 0.0 || (q == 0.0 && p < 0.0) {
            p = -p;
            q = -q;
        }
        Ok(Self { p, q })
    }

    /// `x`, or `∞` when `x` is infinite.
    pub fn from_real(x: f64) -> Self {
        if x.is_infinite() {
            Self::INFINITY
        } else {
            Self::new(x, 1.0).expect("finite real is a boundary point")
        }
    }

    pub fn components(&self) -> (f64, f64) {
        (self.p, self.q)
    }

    /// The affine coordinate, `None` at `∞`.
    pub fn to_real(&self) -> Option<f64> {
        if self.q == 0.0 {
            None
        } else {
            Some(self.p / self.q)
        }
    }

    pub fn is_infinity(&self) -> bool {
        self.q.abs() <= ALGEBRAIC_TOL
    }

    /// The 2x2 determinant `p₁q₂ - p₂q₁`; zero iff the points coincide.
    pub fn cross(&self, other: &BoundaryPoint) -> f64 {
        self.p * other.q - other.p * self.q
    }

    pub fn approx_eq(&self, other: &BoundaryPoint, tol: f64) -> bool {
        self.cross(other).abs() <= tol
    }
}

impl Isometry for BoundaryPoint {
    fn moved_by(&self, m: &MoebiusTransform) -> Self {
        BoundaryPoint::new(m.a * self.p + m.b * self.q, m.c * self.p + m.d * self.q)
            .expect("invertible map sends nonzero vectors to nonzero vectors")
    }
}

/// Sign of the cyclic order of three ideal points: positive when `a, b, c`
/// run counterclockwise (increasing along `ℝ ∪ {∞}`). The value is
/// independent of the lifts chosen and invariant under `PSL(2,ℝ)`.
pub fn cyclic_orientation(a: &BoundaryPoint, b: &BoundaryPoint, c: &BoundaryPoint) -> f64 {
    a.cross(b) * b.cross(c) * c.cross(a)
}

/// An oriented geodesic; equality as unordered pairs is available through
/// [`Geodesic::same_line`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Geodesic {
    start: BoundaryPoint,
    end: BoundaryPoint,
}

impl Geodesic {
    pub fn new(start: BoundaryPoint, end: BoundaryPoint) -> Result<Self> {
        if start.cross(&end).abs() <= ALGEBRAIC_TOL {
            return Err(Error::DegenerateGeodesic);
        }
        Ok(Self { start, end })
    }

    pub fn from_reals(start: f64, end: f64) -> Result<Self> {
        Self::new(BoundaryPoint::from_real(start), BoundaryPoint::from_real(end))
    }

    /// The imaginary axis, oriented from `0` to `∞`.
    pub fn imaginary_axis() -> Self {
        Self {
            start: BoundaryPoint::from_real(0.0),
            end: BoundaryPoint::INFINITY,
        }
    }

    pub fn start(&self) -> BoundaryPoint {
        self.start
    }

    pub fn end(&self) -> BoundaryPoint {
        self.end
    }

    pub fn reversed(&self) -> Self {
        Self {
            start: self.end,
            end: self.start,
        }
    }

    pub fn same_line(&self, other: &Geodesic, tol: f64) -> bool {
        (self.start.approx_eq(&other.start, tol) && self.end.approx_eq(&other.end, tol))
            || (self.start.approx_eq(&other.end, tol) && self.end.approx_eq(&other.start, tol))
    }

    /// A transform sending `0 ↦ start` and `∞ ↦ end`.
    pub fn frame(&self) -> MoebiusTransform {
        let (sp, sq) = (self.start.p, self.start.q);
        let (ep, eq) = (self.end.p, self.end.q);
        let det = ep * sq - sp * eq;
        if det > 0.0 {
            MoebiusTransform::from_raw(ep, sp, eq, sq)
        } else {
            MoebiusTransform::from_raw(-ep, sp, -eq, sq)
        }
    }

    /// The hyperbolic element with this axis moving points a signed distance
    /// `t` towards `end`.
    pub fn translation(&self, t: f64) -> MoebiusTransform {
        MoebiusTransform::geodesic_flow(t).conjugated_by(&self.frame())
    }

    /// Scale-free signed offset of `z` from the line: negative on the left
    /// (looking from `start` to `end`), positive on the right, zero on it.
    pub fn side_of(&self, z: &HPoint) -> f64 {
        let w = self.frame().inverse().apply(z);
        w.x / w.x.hypot(w.y)
    }

    pub fn contains(&self, z: &HPoint, tol: f64) -> bool {
        self.side_of(z).abs() <= tol
    }

    /// True when the two geodesics cross transversally. Shared endpoints do
    /// not count as crossing.
    pub fn crosses(&self, other: &Geodesic) -> bool {
        let o1 = cyclic_orientation(&self.start, &self.end, &other.start);
        let o2 = cyclic_orientation(&self.start, &self.end, &other.end);
        let scale = ALGEBRAIC_TOL;
        (o1 > scale && o2 < -scale) || (o1 < -scale && o2 > scale)
    }

    /// Foot on `self` of the common perpendicular with an ultraparallel
    /// geodesic.
    pub fn common_perpendicular_foot(&self, other: &Geodesic) -> Result<HPoint> {
        let inv = self.frame().inverse();
        let p = inv.apply(&other.start).to_real();
        let q = inv.apply(&other.end).to_real();
        match (p, q) {
            (Some(p), Some(q)) if p * q > 0.0 => {
                let foot = HPoint::new(0.0, (p * q).sqrt())?;
                Ok(self.frame().apply(&foot))
            }
            _ => Err(Error::Range(
                "geodesics are not ultraparallel".to_string(),
            )),
        }
    }

    /// Nearest point on the line to `z`.
    pub fn project(&self, z: &HPoint) -> HPoint {
        let f = self.frame();
        let w = f.inverse().apply(z);
        let r = w.x.hypot(w.y);
        f.apply(&HPoint { x: 0.0, y: r })
    }
}

impl Isometry for Geodesic {
    fn moved_by(&self, m: &MoebiusTransform) -> Self {
        Self {
            start: m.apply(&self.start),
            end: m.apply(&self.end),
        }
    }
}

pub fn translation_along(g: &Geodesic, t: f64) -> MoebiusTransform {
    g.translation(t)
}

pub fn translation_length(m: &MoebiusTransform) -> Result<f64> {
    m.translation_length()
}

/// Height of `z` above the horocycle family centred at `center`, in the
/// normalization where a fixed rotation about `i` sends `center` to `∞`.
/// Differences of `ln` heights are signed distances between horocycles.
pub fn horocycle_height(center: &BoundaryPoint, z: &HPoint) -> f64 {
    let (p, q) = center.components();
    // Rotation about i with (1 : 0) ↦ (p : q).
    let rot = MoebiusTransform::from_raw(p, -q, q, p);
    rot.inverse().apply(z).y
}

/// A unit tangent vector, stored as the isometry carrying the upward unit
/// vector at `i` to it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitTangent {
    frame: MoebiusTransform,
}

impl UnitTangent {
    pub fn new(frame: MoebiusTransform) -> Self {
        Self { frame }
    }

    /// The upward unit vector at `i`.
    pub fn reference() -> Self {
        Self::new(MoebiusTransform::IDENTITY)
    }

    /// Vector based at `point` making Euclidean angle `angle` with the
    /// positive real direction.
    pub fn at(point: &HPoint, angle: f64) -> Self {
        let s = point.y.sqrt();
        let lift = MoebiusTransform::from_raw(s, point.x / s, 0.0, 1.0 / s);
        let turn = MoebiusTransform::rotation(angle - std::f64::consts::FRAC_PI_2);
        Self::new(lift.compose(&turn))
    }

    /// The vector tangent to `g` at `z`, pointing towards `g.end()`.
    pub fn on_geodesic(g: &Geodesic, z: &HPoint, tol: f64) -> Result<Self> {
        let f = g.frame();
        let w = f.inverse().apply(z);
        let r = w.x.hypot(w.y);
        if (w.x / r).abs() > tol {
            return Err(Error::Range("point is not on the geodesic".to_string()));
        }
        let s = r.sqrt();
        Ok(Self::new(f.compose(&MoebiusTransform::from_raw(s, 0.0, 0.0, 1.0 / s))))
    }

    pub fn frame(&self) -> &MoebiusTransform {
        &self.frame
    }

    pub fn basepoint(&self) -> HPoint {
        self.frame.apply(&HPoint::I)
    }

    /// Euclidean unit direction of the vector.
    pub fn direction(&self) -> Complex64 {
        let den = Complex64::new(self.frame.d, self.frame.c);
        let v = Complex64::i() / (den * den);
        v / v.norm()
    }

    /// The oriented geodesic the vector is tangent to.
    pub fn geodesic(&self) -> Geodesic {
        Geodesic::imaginary_axis().moved_by(&self.frame)
    }

    pub fn flowed(&self, t: f64) -> Self {
        Self::new(self.frame.compose(&MoebiusTransform::geodesic_flow(t)))
    }

    pub fn horocycle_flowed(&self, s: f64) -> Self {
        Self::new(self.frame.compose(&MoebiusTransform::parabolic(s)))
    }

    pub fn rotated(&self, angle: f64) -> Self {
        Self::new(self.frame.compose(&MoebiusTransform::rotation(angle)))
    }

    pub fn reversed(&self) -> Self {
        self.rotated(std::f64::consts::PI)
    }
}

impl Isometry for UnitTangent {
    fn moved_by(&self, m: &MoebiusTransform) -> Self {
        Self::new(m.compose(&self.frame))
    }
}

/// Left-invariant distance on the unit tangent bundle:
/// `‖frame(v)⁻¹·frame(w) − I‖_F`, minimized over sign.
pub fn frame_distance(v: &UnitTangent, w: &UnitTangent) -> f64 {
    v.frame.inverse().compose(&w.frame).deviation()
}

/// The unique isometry carrying `v` to `w`.
pub fn moebius_between(v: &UnitTangent, w: &UnitTangent) -> MoebiusTransform {
    w.frame.compose(&v.frame.inverse())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{E, PI};

    fn diag(t: f64) -> MoebiusTransform {
        MoebiusTransform::new((t / 2.0).exp(), 0.0, 0.0, (-t / 2.0).exp()).unwrap()
    }

    #[test]
    fn compose_examples() {
        let m = MoebiusTransform::new(2.0, 1.0, 3.0, 2.0).unwrap();
        assert!(MoebiusTransform::IDENTITY.compose(&m).approx_eq(&m, 1e-15));
        let uv = MoebiusTransform::parabolic(0.7).compose(&MoebiusTransform::parabolic(-2.2));
        assert!(uv.approx_eq(&MoebiusTransform::parabolic(-1.5), 1e-15));
        assert!(diag(1.0).compose(&diag(2.0)).approx_eq(&diag(3.0), 1e-14));
    }

    #[test]
    fn normalization_is_canonical() {
        let m = MoebiusTransform::new(-4.0, -2.0, -6.0, -4.0).unwrap();
        assert!((m.det() - 1.0).abs() < 1e-14);
        assert!(m.trace() > 0.0);
        let r = MoebiusTransform::new(0.0, -1.0, 1.0, 0.0).unwrap();
        assert_eq!(r.entries(), [0.0, 1.0, -1.0, 0.0]);
        assert!(MoebiusTransform::new(1.0, 0.0, 0.0, -1.0).is_err());
        assert!(MoebiusTransform::new(f64::NAN, 0.0, 0.0, 1.0).is_err());
    }

    #[test]
    fn apply_examples() {
        assert_eq!(MoebiusTransform::IDENTITY.apply(&HPoint::I), HPoint::I);
        let inf = MoebiusTransform::parabolic(1.0).apply(&BoundaryPoint::INFINITY);
        assert!(inf.approx_eq(&BoundaryPoint::INFINITY, 1e-15));
        for t in [-2.0, 0.3, 1.0, 4.0] {
            let z = diag(t).apply(&HPoint::I);
            assert!(z.x().abs() < 1e-15);
            assert!((z.y() - f64::exp(t)).abs() < 1e-12 * f64::exp(t));
        }
    }

    #[test]
    fn distance_examples() {
        assert_eq!(HPoint::I.distance(&HPoint::I), 0.0);
        let ie = HPoint::new(0.0, E).unwrap();
        assert!((HPoint::I.distance(&ie) - 1.0).abs() < 1e-15);
        // arccosh(1 + |Δ|²/(2 y₁ y₂)) with Δ = 1, y₁ = y₂ = 1
        let oracle = (1.0f64 + 1.0 / 2.0).acosh();
        let q = HPoint::new(1.0, 1.0).unwrap();
        assert!((HPoint::I.distance(&q) - oracle).abs() < 1e-15);
    }

    #[test]
    fn translation_along_examples() {
        let axis = Geodesic::imaginary_axis();
        assert!(axis.translation(1.3).approx_eq(&diag(1.3), 1e-14));
        assert!(axis.translation(0.0).approx_eq(&MoebiusTransform::IDENTITY, 1e-15));
        let rev = axis.reversed().translation(1.3);
        assert!(rev.approx_eq(&diag(-1.3), 1e-14));
    }

    #[test]
    fn translation_length_examples() {
        assert!((diag(2.5).translation_length().unwrap() - 2.5).abs() < 1e-14);
        assert_eq!(MoebiusTransform::parabolic(1.0).translation_length().unwrap(), 0.0);
        // trace 3: 2·arccosh(1.5) = 1.9248473002384139
        let m = MoebiusTransform::new(2.0, 1.0, 1.0, 1.0).unwrap();
        assert!((m.translation_length().unwrap() - 1.924_847_300_238_413_9).abs() < 1e-15);
        let rot = MoebiusTransform::rotation(1.0);
        assert!(matches!(rot.translation_length(), Err(Error::Elliptic { .. })));
    }

    #[test]
    fn axis_recovers_translation() {
        let g = Geodesic::from_reals(-0.4, 3.0).unwrap();
        let m = g.translation(0.8);
        let axis = m.axis().unwrap();
        assert!(axis.start().approx_eq(&g.start(), 1e-12));
        assert!(axis.end().approx_eq(&g.end(), 1e-12));
        assert!(axis.translation(0.8).approx_eq(&m, 1e-12));
    }

    #[test]
    fn frame_distance_basics() {
        let v = UnitTangent::at(&HPoint::new(0.3, 2.0).unwrap(), 0.4);
        assert_eq!(frame_distance(&v, &v), 0.0);
        assert!(frame_distance(&v, &v.rotated(2.0 * PI)) < 1e-12);
        assert!(frame_distance(&v, &v.flowed(0.5)) > 0.1);
    }

    #[test]
    fn frame_distance_is_linear_for_small_horocycle_moves() {
        let v = UnitTangent::at(&HPoint::new(-1.0, 0.5).unwrap(), 2.0);
        let slopes: Vec<f64> = [1e-3, 1e-4, 1e-5]
            .iter()
            .map(|&eps| {
                let w = MoebiusTransform::parabolic(eps).apply(&v);
                frame_distance(&v, &w) / eps
            })
            .collect();
        assert!(slopes[0] > 0.0);
        assert!((slopes[1] - slopes[2]).abs() < 1e-3 * slopes[2]);
    }

    #[test]
    fn moebius_between_is_a_torsor_map() {
        let v = UnitTangent::at(&HPoint::new(0.3, 2.0).unwrap(), 0.4);
        assert!(moebius_between(&v, &v).approx_eq(&MoebiusTransform::IDENTITY, 1e-14));
        let m = MoebiusTransform::new(1.0, 2.0, -0.5, 0.3).unwrap();
        assert!(moebius_between(&v, &m.apply(&v)).approx_eq(&m, 1e-12));
    }

    #[test]
    fn unit_tangent_geometry() {
        let p = HPoint::new(1.0, 2.0).unwrap();
        let v = UnitTangent::at(&p, 0.0);
        assert!(v.basepoint().approx_eq(&p, 1e-14));
        assert!((v.direction() - Complex64::new(1.0, 0.0)).norm() < 1e-14);
        let g = Geodesic::from_reals(-1.0, 2.0).unwrap();
        let z = g.project(&p);
        let t = UnitTangent::on_geodesic(&g, &z, 1e-12).unwrap();
        assert!(t.geodesic().same_line(&g, 1e-12));
        assert!(t.geodesic().end().approx_eq(&g.end(), 1e-12));
    }

    #[test]
    fn sides_and_crossings() {
        let axis = Geodesic::imaginary_axis();
        assert!(axis.side_of(&HPoint::new(-1.0, 1.0).unwrap()) < 0.0);
        assert!(axis.side_of(&HPoint::new(1.0, 1.0).unwrap()) > 0.0);
        assert!(axis.crosses(&Geodesic::from_reals(-1.0, 1.0).unwrap()));
        assert!(!axis.crosses(&Geodesic::from_reals(1.0, 2.0).unwrap()));
        assert!(!axis.crosses(&Geodesic::from_reals(0.0, 2.0).unwrap()));
        let o = cyclic_orientation(
            &BoundaryPoint::from_real(-1.0),
            &BoundaryPoint::from_real(0.0),
            &BoundaryPoint::INFINITY,
        );
        assert!(o > 0.0);
    }

    #[test]
    fn common_perpendicular() {
        let axis = Geodesic::imaginary_axis();
        let other = Geodesic::from_reals(1.0, 4.0).unwrap();
        let foot = axis.common_perpendicular_foot(&other).unwrap();
        assert!(foot.approx_eq(&HPoint::new(0.0, 2.0).unwrap(), 1e-14));
        assert!(axis
            .common_perpendicular_foot(&Geodesic::from_reals(-1.0, 1.0).unwrap())
            .is_err());
    }
}
