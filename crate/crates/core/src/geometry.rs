//! Poincaré-ball model of hyperbolic 3-space.
//!
//! Isometries are built from the ball-model translation
//! `T_c(p) = (−c) ⊕ p` (Möbius addition) followed by a Euclidean rotation
//! about the origin. Möbius addition extends continuously to the boundary
//! sphere, which is how ideal endpoints are transported.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::C64;
use crate::asdet::{DirectionMatrix, ExtendedComplex};
use crate::error::{Error, Result};
use crate::tolerance::Tolerances;

type Vec3 = [f64; 3];

fn dot(a: &Vec3, b: &Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn norm(a: &Vec3) -> f64 {
    dot(a, a).sqrt()
}

fn scale(a: &Vec3, s: f64) -> Vec3 {
    [a[0] * s, a[1] * s, a[2] * s]
}

fn sub(a: &Vec3, b: &Vec3) -> Vec3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

/// Möbius addition `a ⊕ b`; valid for `|a| < 1` and `|b| ≤ 1`.
fn mobius_add(a: &Vec3, b: &Vec3) -> Vec3 {
    let ab = dot(a, b);
    let aa = dot(a, a);
    let bb = dot(b, b);
    let ca = 1.0 + 2.0 * ab + bb;
    let cb = 1.0 - aa;
    let den = 1.0 + 2.0 * ab + aa * bb;
    [
        (ca * a[0] + cb * b[0]) / den,
        (ca * a[1] + cb * b[1]) / den,
        (ca * a[2] + cb * b[2]) / den,
    ]
}

/// A point of the open unit ball.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BallPoint {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl BallPoint {
    /// Checked constructor; the point must lie strictly inside the ball.
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        let p = Self { x, y, z };
        let r = p.norm();
        if !(r < 1.0) {
            return Err(Error::InvalidPoint(format!(
                "({x}, {y}, {z}) has norm {r} >= 1"
            )));
        }
        Ok(p)
    }

    pub const fn origin() -> Self {
        Self {
            x: 0.0,
            y: 0.0,
            z: 0.0,
        }
    }

    pub fn coords(&self) -> Vec3 {
        [self.x, self.y, self.z]
    }

    fn from_coords(c: Vec3) -> Self {
        Self {
            x: c[0],
            y: c[1],
            z: c[2],
        }
    }

    pub fn norm(&self) -> f64 {
        norm(&self.coords())
    }

    pub fn distance(&self, other: &BallPoint) -> f64 {
        norm(&sub(&self.coords(), &other.coords()))
    }

    /// Hyperbolic distance from the origin.
    pub fn hyperbolic_radius(&self) -> f64 {
        2.0 * self.norm().atanh()
    }
}

/// A point of the boundary sphere.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SphereDirection {
    pub u: f64,
    pub v: f64,
    pub w: f64,
}

impl SphereDirection {
    pub fn new(u: f64, v: f64, w: f64, tol: &Tolerances) -> Result<Self> {
        let r = norm(&[u, v, w]);
        if (r - 1.0).abs() > tol.eps_unit {
            return Err(Error::NumericalDegeneracy(format!(
                "direction ({u}, {v}, {w}) has norm {r}, not 1"
            )));
        }
        Ok(Self { u, v, w })
    }

    pub fn coords(&self) -> Vec3 {
        [self.u, self.v, self.w]
    }

    pub fn norm(&self) -> f64 {
        norm(&self.coords())
    }
}

/// An ordered list of at least two pairwise distinct ball points.
#[derive(Debug, Clone, PartialEq)]
pub struct Configuration {
    points: Vec<BallPoint>,
}

impl Configuration {
    pub fn new(points: Vec<BallPoint>, tol: &Tolerances) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::InvalidPoint(format!(
                "a configuration needs at least 2 points, got {}",
                points.len()
            )));
        }
        for (i, p) in points.iter().enumerate() {
            if p.norm() >= 1.0 - tol.eps_boundary {
                return Err(Error::InvalidPoint(format!(
                    "point {} has norm {} (boundary tolerance {:e})",
                    i + 1,
                    p.norm(),
                    tol.eps_boundary
                )));
            }
        }
        for a in 0..points.len() {
            for b in a + 1..points.len() {
                let d = points[a].distance(&points[b]);
                if d <= tol.eps_sep {
                    return Err(Error::DegenerateRay {
                        a: a + 1,
                        b: b + 1,
                        distance: d,
                    });
                }
            }
        }
        Ok(Self { points })
    }

    pub fn points(&self) -> &[BallPoint] {
        &self.points
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    /// True when every point has |y| within the plane tolerance.
    pub fn is_coplanar(&self, tol: &Tolerances) -> bool {
        self.points.iter().all(|p| p.y.abs() <= tol.eps_plane)
    }

    /// `(x, z)` disk coordinates of a configuration lying in the y = 0 plane.
    pub fn disk_points(&self, tol: &Tolerances) -> Result<Vec<[f64; 2]>> {
        self.points
            .iter()
            .enumerate()
            .map(|(i, p)| {
                if p.y.abs() > tol.eps_plane {
                    Err(Error::NotCoplanar { index: i + 1, y: p.y })
                } else {
                    Ok([p.x, p.z])
                }
            })
            .collect()
    }

    /// Same points, relabeled so that new point `i` is old point `perm[i]`.
    pub fn relabeled(&self, perm: &[usize]) -> Self {
        Self {
            points: perm.iter().map(|&i| self.points[i]).collect(),
        }
    }
}

/// The ball isometry sending `center` to the origin, applied to `p`.
pub fn mobius_translate(center: &BallPoint, p: &BallPoint, tol: &Tolerances) -> Result<BallPoint> {
    for (what, q) in [("center", center), ("point", p)] {
        if q.norm() >= 1.0 - tol.eps_boundary {
            return Err(Error::NumericalDegeneracy(format!(
                "{what} {:?} is within {:e} of the boundary",
                q.coords(),
                tol.eps_boundary
            )));
        }
    }
    Ok(BallPoint::from_coords(mobius_add(
        &scale(&center.coords(), -1.0),
        &p.coords(),
    )))
}

/// Ideal endpoint of the geodesic ray from `a` through `b`.
///
/// Translate `a` to the origin, where geodesics through it are diameters,
/// push the image of `b` radially to the sphere, and translate back.
pub fn ideal_endpoint(a: &BallPoint, b: &BallPoint, tol: &Tolerances) -> Result<SphereDirection> {
    let d = a.distance(b);
    if d <= tol.eps_sep {
        return Err(Error::DegenerateRay { a: 1, b: 2, distance: d });
    }
    let q = mobius_translate(a, b, tol)?.coords();
    let r = norm(&q);
    if r == 0.0 {
        return Err(Error::DegenerateRay { a: 1, b: 2, distance: d });
    }
    let e = mobius_add(&a.coords(), &scale(&q, 1.0 / r));
    let e = scale(&e, 1.0 / norm(&e));
    SphereDirection::new(e[0], e[1], e[2], tol)
}

/// Stereographic projection `(u, v, w) ↦ (u + iv)/(1 − w)` as a homogeneous
/// pair.
///
/// On the southern hemisphere the pair is `[u + iv : 1 − w]`; on the northern
/// one the equivalent `[1 + w : u − iv]` is used, which stays well conditioned
/// near the north pole and gives `[2 : 0]` exactly there.
pub fn stereographic(d: &SphereDirection) -> ExtendedComplex {
    let pair = if d.w <= 0.0 {
        (C64::new(d.u, d.v), C64::new(1.0 - d.w, 0.0))
    } else {
        (C64::new(1.0 + d.w, 0.0), C64::new(d.u, -d.v))
    };
    ExtendedComplex::new(pair.0, pair.1).expect("a unit vector never maps to [0:0]")
}

/// Inverse stereographic projection of an affine value.
pub fn inverse_stereographic(t: C64) -> SphereDirection {
    let m = t.norm_sqr();
    SphereDirection {
        u: 2.0 * t.re / (m + 1.0),
        v: 2.0 * t.im / (m + 1.0),
        w: (m - 1.0) / (m + 1.0),
    }
}

/// Ideal endpoints `e_ab` of the rays from `x_a` through `x_b`.
pub fn endpoint_matrix(
    cfg: &Configuration,
    tol: &Tolerances,
) -> Result<crate::asdet::OffDiagonal<SphereDirection>> {
    let pts = cfg.points();
    crate::asdet::OffDiagonal::try_from_fn(cfg.n(), |a, b| {
        ideal_endpoint(&pts[a], &pts[b], tol).map_err(|e| match e {
            Error::DegenerateRay { distance, .. } => Error::DegenerateRay {
                a: a + 1,
                b: b + 1,
                distance,
            },
            other => other,
        })
    })
}

/// The direction array `t_ab = s(endpoint of the ray x_a → x_b)`.
pub fn direction_matrix(cfg: &Configuration, tol: &Tolerances) -> Result<DirectionMatrix> {
    Ok(endpoint_matrix(cfg, tol)?.map(|_, _, d| stereographic(d)))
}

/// Configuration in the y = 0 plane from `(x, z)` disk coordinates.
pub fn embed_h2(disk_points: &[[f64; 2]], tol: &Tolerances) -> Result<Configuration> {
    if disk_points.len() < 2 {
        return Err(Error::InvalidPoint(format!(
            "a configuration needs at least 2 points, got {}",
            disk_points.len()
        )));
    }
    let pts = disk_points
        .iter()
        .enumerate()
        .map(|(i, &[x, z])| {
            if !(x * x + z * z < 1.0) {
                Err(Error::InvalidPoint(format!(
                    "disk point {} ({x}, {z}) is outside the open unit disk",
                    i + 1
                )))
            } else {
                Ok(BallPoint { x, y: 0.0, z })
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Configuration::new(pts, tol)
}

/// Unit quaternion `(w, x, y, z)`, normalized on construction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Rotation {
    q: [f64; 4],
}

impl Rotation {
    pub fn identity() -> Self {
        Self {
            q: [1.0, 0.0, 0.0, 0.0],
        }
    }

    pub fn from_quaternion(q: [f64; 4]) -> Self {
        let n = (q.iter().map(|c| c * c).sum::<f64>()).sqrt();
        assert!(n > 0.0, "zero quaternion");
        Self {
            q: [q[0] / n, q[1] / n, q[2] / n, q[3] / n],
        }
    }

    /// Rotation by `angle` about the unit axis `axis`.
    pub fn about_axis(axis: Vec3, angle: f64) -> Self {
        let n = norm(&axis);
        let (s, c) = (angle / 2.0).sin_cos();
        Self::from_quaternion([c, s * axis[0] / n, s * axis[1] / n, s * axis[2] / n])
    }

    pub fn inverse(&self) -> Self {
        let [w, x, y, z] = self.q;
        Self { q: [w, -x, -y, -z] }
    }

    pub fn apply(&self, v: &Vec3) -> Vec3 {
        let [w, x, y, z] = self.q;
        let u = [x, y, z];
        // v' = v + 2w (u × v) + 2 u × (u × v)
        let cross = |a: &Vec3, b: &Vec3| -> Vec3 {
            [
                a[1] * b[2] - a[2] * b[1],
                a[2] * b[0] - a[0] * b[2],
                a[0] * b[1] - a[1] * b[0],
            ]
        };
        let t = scale(&cross(&u, v), 2.0);
        let ut = cross(&u, &t);
        [
            v[0] + w * t[0] + ut[0],
            v[1] + w * t[1] + ut[1],
            v[2] + w * t[2] + ut[2],
        ]
    }
}

/// Isometry `p ↦ R(T_c(p))`: translate `center` to the origin, then rotate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Isometry {
    pub center: BallPoint,
    pub rotation: Rotation,
}

impl Isometry {
    pub fn identity() -> Self {
        Self {
            center: BallPoint::origin(),
            rotation: Rotation::identity(),
        }
    }

    /// Random isometry of the ball: centre uniform in direction with
    /// Euclidean radius up to 0.9, rotation uniform on SO(3).
    pub fn random(seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let dir = random_unit_vector(&mut rng);
        let r = 0.9 * rng.gen::<f64>().cbrt();
        let q: [f64; 4] = std::array::from_fn(|_| gaussian(&mut rng));
        Self {
            center: BallPoint::from_coords(scale(&dir, r)),
            rotation: Rotation::from_quaternion(q),
        }
    }

    /// Random isometry preserving the y = 0 plane (orientation preserving on it).
    pub fn random_planar(seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let theta = rng.gen::<f64>() * std::f64::consts::TAU;
        let r = 0.9 * rng.gen::<f64>().sqrt();
        let angle = rng.gen::<f64>() * std::f64::consts::TAU;
        Self {
            center: BallPoint {
                x: r * theta.cos(),
                y: 0.0,
                z: r * theta.sin(),
            },
            rotation: Rotation::about_axis([0.0, 1.0, 0.0], angle),
        }
    }

    pub fn inverse(&self) -> Self {
        let rc = self.rotation.apply(&self.center.coords());
        Self {
            center: BallPoint::from_coords(scale(&rc, -1.0)),
            rotation: self.rotation.inverse(),
        }
    }

    pub fn apply_point(&self, p: &BallPoint) -> BallPoint {
        let moved = mobius_add(&scale(&self.center.coords(), -1.0), &p.coords());
        BallPoint::from_coords(self.rotation.apply(&moved))
    }

    pub fn apply_direction(&self, d: &SphereDirection) -> SphereDirection {
        let moved = mobius_add(&scale(&self.center.coords(), -1.0), &d.coords());
        let r = self.rotation.apply(&moved);
        let n = norm(&r);
        SphereDirection {
            u: r[0] / n,
            v: r[1] / n,
            w: r[2] / n,
        }
    }
}

/// Descriptor for [`apply_isometry`]; seeded for reproducibility.
pub fn random_isometry(seed: u64) -> Isometry {
    Isometry::random(seed)
}

/// Image of every point of `cfg` under `iso`.
pub fn apply_isometry(iso: &Isometry, cfg: &Configuration) -> Configuration {
    Configuration {
        points: cfg.points.iter().map(|p| iso.apply_point(p)).collect(),
    }
}

pub(crate) fn gaussian(rng: &mut impl Rng) -> f64 {
    // Box–Muller
    let u1: f64 = 1.0 - rng.gen::<f64>();
    let u2: f64 = rng.gen();
    (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
}

pub(crate) fn random_unit_vector(rng: &mut impl Rng) -> Vec3 {
    loop {
        let v = [gaussian(rng), gaussian(rng), gaussian(rng)];
        let n = norm(&v);
        if n > 1e-12 {
            return scale(&v, 1.0 / n);
        }
    }
}

/// On-disk configuration format.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "lowercase", deny_unknown_fields)]
pub enum ConfigurationFile {
    /// `{"model":"ball","points":[[x,y,z],...]}`
    Ball { points: Vec<[f64; 3]> },
    /// `{"model":"disk","points":[[x,z],...]}`, embedded at y = 0.
    Disk { points: Vec<[f64; 2]> },
}

impl ConfigurationFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_configuration(&self, tol: &Tolerances) -> Result<Configuration> {
        match self {
            ConfigurationFile::Ball { points } => {
                let pts = points
                    .iter()
                    .map(|&[x, y, z]| BallPoint::new(x, y, z))
                    .collect::<Result<Vec<_>>>()?;
                Configuration::new(pts, tol)
            }
            ConfigurationFile::Disk { points } => embed_h2(points, tol),
        }
    }

    pub fn from_configuration(cfg: &Configuration) -> Self {
        ConfigurationFile::Ball {
            points: cfg.points().iter().map(|p| p.coords()).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    fn close(a: Vec3, b: Vec3, eps: f64) -> bool {
        norm(&sub(&a, &b)) < eps
    }

    #[test]
    fn translate_examples() {
        let p = BallPoint::new(0.2, -0.3, 0.1).unwrap();
        let o = BallPoint::origin();
        assert!(close(mobius_translate(&o, &p, &tol()).unwrap().coords(), p.coords(), 1e-15));
        let c = BallPoint::new(0.5, 0.0, 0.0).unwrap();
        assert!(close(mobius_translate(&c, &c, &tol()).unwrap().coords(), [0.0; 3], 1e-15));
        assert!(close(mobius_translate(&p, &p, &tol()).unwrap().coords(), [0.0; 3], 1e-15));
    }

    #[test]
    fn translate_rejects_boundary() {
        let edge = BallPoint { x: 1.0, y: 0.0, z: 0.0 };
        let err = mobius_translate(&edge, &BallPoint::origin(), &tol()).unwrap_err();
        assert!(matches!(err, Error::NumericalDegeneracy(_)));
    }

    #[test]
    fn endpoint_examples() {
        let o = BallPoint::origin();
        let e = ideal_endpoint(&o, &BallPoint::new(0.4, 0.0, 0.0).unwrap(), &tol()).unwrap();
        assert!(close(e.coords(), [1.0, 0.0, 0.0], 1e-15));
        let e = ideal_endpoint(&BallPoint::new(0.5, 0.0, 0.0).unwrap(), &o, &tol()).unwrap();
        assert!(close(e.coords(), [-1.0, 0.0, 0.0], 1e-15));
        let e = ideal_endpoint(&o, &BallPoint::new(0.0, 0.0, 0.3).unwrap(), &tol()).unwrap();
        assert!(close(e.coords(), [0.0, 0.0, 1.0], 1e-15));
    }

    #[test]
    fn endpoint_lies_on_the_geodesic_circle() {
        // the geodesic through a and b is a circle orthogonal to the sphere;
        // its endpoint e, a and b must be concyclic with the inverse of a
        let a = BallPoint::new(0.3, 0.2, -0.1).unwrap();
        let b = BallPoint::new(-0.1, 0.5, 0.4).unwrap();
        let e = ideal_endpoint(&a, &b, &tol()).unwrap();
        // moving a to the origin must send b and e onto the same ray
        let tb = mobius_translate(&a, &b, &tol()).unwrap().coords();
        let te = mobius_add(&scale(&a.coords(), -1.0), &e.coords());
        let tb = scale(&tb, 1.0 / norm(&tb));
        assert!(close(tb, te, 1e-12));
    }

    #[test]
    fn coincident_points_are_degenerate() {
        let p = BallPoint::new(0.1, 0.1, 0.1).unwrap();
        assert!(matches!(
            ideal_endpoint(&p, &p, &tol()),
            Err(Error::DegenerateRay { .. })
        ));
    }

    #[test]
    fn stereographic_examples() {
        let t = tol();
        let north = stereographic(&SphereDirection::new(0.0, 0.0, 1.0, &t).unwrap());
        assert!(north.is_infinite());
        assert_eq!(north.z(), C64::new(2.0, 0.0));
        let east = stereographic(&SphereDirection::new(1.0, 0.0, 0.0, &t).unwrap());
        assert_eq!(east.value(), Some(C64::new(1.0, 0.0)));
        let south = stereographic(&SphereDirection::new(0.0, 0.0, -1.0, &t).unwrap());
        assert_eq!(south.value(), Some(C64::new(0.0, 0.0)));
    }

    #[test]
    fn stereographic_round_trip() {
        for t in [C64::new(0.3, -2.0), C64::new(-5.0, 0.1), C64::new(0.0, 0.0)] {
            let back = stereographic(&inverse_stereographic(t)).value().unwrap();
            assert!((back - t).norm() < 1e-12 * (1.0 + t.norm()));
        }
    }

    #[test]
    fn two_point_directions() {
        let cfg = embed_h2(&[[-0.3, 0.0], [0.3, 0.0]], &tol()).unwrap();
        let dm = direction_matrix(&cfg, &tol()).unwrap();
        assert!((dm.get(0, 1).value().unwrap() - C64::new(1.0, 0.0)).norm() < 1e-15);
        assert!((dm.get(1, 0).value().unwrap() - C64::new(-1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn embed_examples() {
        let cfg = embed_h2(&[[0.0, 0.0], [0.5, 0.0]], &tol()).unwrap();
        assert_eq!(cfg.points()[1], BallPoint { x: 0.5, y: 0.0, z: 0.0 });
        assert!(matches!(embed_h2(&[], &tol()), Err(Error::InvalidPoint(_))));
        assert!(matches!(embed_h2(&[[0.1, 0.1]], &tol()), Err(Error::InvalidPoint(_))));
        assert!(matches!(
            embed_h2(&[[0.1, 0.1], [0.8, 0.8]], &tol()),
            Err(Error::InvalidPoint(_))
        ));
    }

    #[test]
    fn duplicate_points_name_the_pair() {
        let err = embed_h2(&[[0.1, 0.0], [0.2, 0.0], [0.1, 0.0]], &tol()).unwrap_err();
        assert_eq!(
            err,
            Error::DegenerateRay {
                a: 1,
                b: 3,
                distance: 0.0
            }
        );
    }

    #[test]
    fn identity_isometry_is_identity() {
        let cfg = embed_h2(&[[0.1, 0.2], [-0.4, 0.3], [0.0, -0.6]], &tol()).unwrap();
        assert_eq!(apply_isometry(&Isometry::identity(), &cfg), cfg);
    }

    #[test]
    fn isometry_inverse_recovers_points() {
        for seed in 0..20 {
            let iso = random_isometry(seed);
            let inv = iso.inverse();
            let p = BallPoint::new(0.3, -0.5, 0.2).unwrap();
            let back = inv.apply_point(&iso.apply_point(&p));
            assert!(close(back.coords(), p.coords(), 1e-12), "seed {seed}");
        }
    }

    #[test]
    fn planar_isometry_keeps_plane() {
        let cfg = embed_h2(&[[0.1, 0.2], [-0.4, 0.3], [0.0, -0.6]], &tol()).unwrap();
        let iso = Isometry::random_planar(7);
        let moved = apply_isometry(&iso, &cfg);
        assert!(moved.points().iter().all(|p| p.y.abs() < 1e-15));
        // a rotation about the x-axis tilts the plane unless it is a half turn
        let tilt = Isometry {
            center: BallPoint::origin(),
            rotation: Rotation::about_axis([1.0, 0.0, 0.0], 0.3),
        };
        assert!(!apply_isometry(&tilt, &cfg).is_coplanar(&tol()));
        let half = Isometry {
            center: BallPoint::origin(),
            rotation: Rotation::about_axis([1.0, 0.0, 0.0], std::f64::consts::PI),
        };
        let flipped = apply_isometry(&half, &cfg);
        assert!(flipped.points().iter().all(|p| p.y.abs() < 1e-15));
    }

    #[test]
    fn isometry_moves_endpoints_consistently() {
        let a = BallPoint::new(0.3, 0.2, -0.1).unwrap();
        let b = BallPoint::new(-0.1, 0.5, 0.4).unwrap();
        let iso = random_isometry(3);
        let e = ideal_endpoint(&a, &b, &tol()).unwrap();
        let moved = ideal_endpoint(&iso.apply_point(&a), &iso.apply_point(&b), &tol()).unwrap();
        assert!(close(iso.apply_direction(&e).coords(), moved.coords(), 1e-12));
    }

    #[test]
    fn configuration_file_formats() {
        let t = tol();
        let ball = ConfigurationFile::parse(r#"{"model":"ball","points":[[0,0,0],[0.1,0.2,0.3]]}"#)
            .unwrap()
            .to_configuration(&t)
            .unwrap();
        assert_eq!(ball.n(), 2);
        let disk = ConfigurationFile::parse(r#"{"model":"disk","points":[[0.1,0.2],[0.3,-0.4]]}"#)
            .unwrap()
            .to_configuration(&t)
            .unwrap();
        assert_eq!(disk.points()[1], BallPoint { x: 0.3, y: 0.0, z: -0.4 });
        assert!(ConfigurationFile::parse(r#"{"model":"ball","points":[],"extra":1}"#).is_err());
        assert!(ConfigurationFile::parse(r#"{"model":"hyperboloid","points":[]}"#).is_err());
    }
}
