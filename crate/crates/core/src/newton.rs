//! Rational Newton polygons: convex hulls of shifted quadrants
//! `(x, y) + R^2_{>=0}`, their vertices, integral normals, and the two
//! lattice choices `beta_can` / `beta_res` of the normal fan.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};

use crate::algebra::{fmt_rational, int, Rational};

/// A point `(x, y)` carrying the weight `d` of the weighted monomial it came
/// from. For GL(2) data, `(x, y) = ((r + b) / d, b / d)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedPoint {
    pub x: Rational,
    pub y: Rational,
    pub weight: u64,
}

impl WeightedPoint {
    pub fn new(x: Rational, y: Rational, weight: u64) -> Self {
        WeightedPoint { x, y, weight }
    }

    /// The point `((r + b) / d, b / d)` of a summand `Sym^{a-b} (x) det^b`
    /// whose form vanishes to order `r`; `d = a + b` must be positive.
    pub fn from_summand(a: i64, b: i64, r: u32) -> Self {
        let d = a + b;
        assert!(d > 0, "summand weight must be positive");
        WeightedPoint {
            x: Rational::new(BigInt::from(r as i64 + b), BigInt::from(d)),
            y: Rational::new(BigInt::from(b), BigInt::from(d)),
            weight: d as u64,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FaceKind {
    /// The ray `lambda(0) + R_{>=0} (1, 0)`.
    Horizontal,
    /// The segment from `lambda(j-1)` to `lambda(j)`.
    Edge,
    /// The ray `lambda(k) + R_{>=0} (0, 1)`.
    Vertical,
}

/// A one-dimensional face with its primitive inner normal and the minimum
/// value of that normal on the polygon.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub kind: FaceKind,
    pub normal: [i64; 2],
    pub value: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolygonError {
    Empty,
    ZeroWeight,
    IndexOutOfRange { index: usize, max: usize },
    /// An integral normal does not fit in 64 bits.
    Overflow,
    /// The twist would make a weight non-positive.
    NonPositiveTwist { n: i64 },
}

impl fmt::Display for PolygonError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolygonError::Empty => f.write_str("no defining points"),
            PolygonError::ZeroWeight => f.write_str("point weights must be positive"),
            PolygonError::IndexOutOfRange { index, max } => {
                write!(f, "vertex index {} out of range 0..={}", index, max)
            }
            PolygonError::Overflow => f.write_str("normal vector exceeds 64-bit range"),
            PolygonError::NonPositiveTwist { n } => {
                write!(f, "twist by {} gives non-positive weights", n)
            }
        }
    }
}

/// The lower-left hull of a finite union of shifted quadrants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPolygon {
    /// Ordered bottom-right to top-left: `x` strictly decreasing, `y`
    /// strictly increasing.
    vertices: Vec<(Rational, Rational)>,
    /// Weight of a defining point sitting at each vertex (the smallest one
    /// if several coincide).
    vertex_weights: Vec<u64>,
    /// `k + 2` faces: horizontal ray, the `k` edges, vertical ray.
    faces: Vec<Face>,
    defining: Vec<WeightedPoint>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexNormals {
    /// Normal of the face toward the previous vertex (horizontal ray at 0).
    pub eta: [i64; 2],
    /// Normal of the face toward the next vertex (vertical ray at `k`).
    pub zeta: [i64; 2],
    /// `det(eta, zeta)`.
    pub det: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolygonScalars {
    /// `lambda(0)_2`, the smallest `y` over the defining points.
    pub b_local: Rational,
    /// Smallest `x` over the defining points.
    pub r: Rational,
    /// `lambda(0)_1`.
    pub lambda0_x: Rational,
    /// `1 - (lambda(0)_1 - lambda(1)_1) / (lambda(0)_2 - lambda(1)_2)`, or 1
    /// for a single vertex.
    pub s: Rational,
    /// Number of vertices minus one.
    pub k: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BetaRay {
    pub kind: FaceKind,
    /// Primitive integral normal.
    pub can: [i64; 2],
    /// Smallest multiple of `can` taking an integral value on the face.
    pub res: [i64; 2],
    /// Value of `can` on the face.
    pub face_value: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BetaData {
    pub rays: Vec<BetaRay>,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisibilityReport {
    pub passed: bool,
    /// Whether `<beta_res, vertex> >= 0` was checked; skipped when some
    /// defining point has a negative coordinate.
    pub nonnegativity_checked: bool,
    pub failures: Vec<String>,
}

fn to_i64(x: &BigInt) -> Result<i64, PolygonError> {
    x.to_i64().ok_or(PolygonError::Overflow)
}

/// Primitive integer vector on the ray through the nonzero rational `(p, q)`.
fn primitive(p: &Rational, q: &Rational) -> Result<[i64; 2], PolygonError> {
    let l = p.denom().lcm(q.denom());
    let a = (p * Rational::from_integer(l.clone())).to_integer();
    let b = (q * Rational::from_integer(l)).to_integer();
    let g = a.gcd(&b);
    Ok([to_i64(&(a / &g))?, to_i64(&(b / &g))?])
}

fn dot(n: &[i64; 2], p: &(Rational, Rational)) -> Rational {
    int(n[0]) * &p.0 + int(n[1]) * &p.1
}

fn cross(o: &(Rational, Rational), a: &(Rational, Rational), b: &(Rational, Rational)) -> Rational {
    (&a.0 - &o.0) * (&b.1 - &o.1) - (&a.1 - &o.1) * (&b.0 - &o.0)
}

/// Builds the polygon spanned by the quadrants at `points`.
pub fn build_polygon(points: &[WeightedPoint]) -> Result<NewtonPolygon, PolygonError> {
    if points.is_empty() {
        return Err(PolygonError::Empty);
    }
    if points.iter().any(|p| p.weight == 0) {
        return Err(PolygonError::ZeroWeight);
    }
    let mut sorted: Vec<&WeightedPoint> = points.iter().collect();
    sorted.sort_by(|a, b| {
        a.y.cmp(&b.y)
            .then_with(|| a.x.cmp(&b.x))
            .then_with(|| a.weight.cmp(&b.weight))
    });
    // staircase of points not dominated by an earlier (lower) point
    let mut stair: Vec<&WeightedPoint> = Vec::new();
    for p in sorted {
        if let Some(last) = stair.last() {
            if p.x >= last.x {
                continue;
            }
        }
        stair.push(p);
    }
    // convex part of the staircase; collinear points are dropped
    let mut hull: Vec<&WeightedPoint> = Vec::new();
    for p in stair {
        while hull.len() >= 2 {
            let o = hull[hull.len() - 2];
            let a = hull[hull.len() - 1];
            let c = cross(
                &(o.x.clone(), o.y.clone()),
                &(a.x.clone(), a.y.clone()),
                &(p.x.clone(), p.y.clone()),
            );
            if !c.is_negative() {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    let vertices: Vec<(Rational, Rational)> =
        hull.iter().map(|p| (p.x.clone(), p.y.clone())).collect();
    let vertex_weights = hull.iter().map(|p| p.weight).collect();

    let mut faces = Vec::with_capacity(vertices.len() + 1);
    faces.push(Face {
        kind: FaceKind::Horizontal,
        normal: [0, 1],
        value: vertices[0].1.clone(),
    });
    for w in vertices.windows(2) {
        let (p, q) = (&w[0], &w[1]);
        let normal = primitive(&(&q.1 - &p.1), &(&p.0 - &q.0))?;
        faces.push(Face {
            kind: FaceKind::Edge,
            value: dot(&normal, p),
            normal,
        });
    }
    let last = vertices.last().expect("non-empty");
    faces.push(Face {
        kind: FaceKind::Vertical,
        normal: [1, 0],
        value: last.0.clone(),
    });
    Ok(NewtonPolygon {
        vertices,
        vertex_weights,
        faces,
        defining: points.to_vec(),
    })
}

impl NewtonPolygon {
    pub fn vertices(&self) -> &[(Rational, Rational)] {
        &self.vertices
    }

    pub fn vertex_weights(&self) -> &[u64] {
        &self.vertex_weights
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn defining_points(&self) -> &[WeightedPoint] {
        &self.defining
    }

    /// Index of the top-left vertex.
    pub fn k(&self) -> usize {
        self.vertices.len() - 1
    }

    /// True if `(x, y)` lies in the polygon.
    pub fn contains(&self, x: &Rational, y: &Rational) -> bool {
        let p = (x.clone(), y.clone());
        self.faces.iter().all(|f| dot(&f.normal, &p) >= f.value)
    }

    /// The normals of the two faces meeting at vertex `j`.
    pub fn vertex_normals(&self, j: usize) -> Result<VertexNormals, PolygonError> {
        if j > self.k() {
            return Err(PolygonError::IndexOutOfRange {
                index: j,
                max: self.k(),
            });
        }
        let eta = self.faces[j].normal;
        let zeta = self.faces[j + 1].normal;
        Ok(VertexNormals {
            eta,
            zeta,
            det: eta[0] * zeta[1] - eta[1] * zeta[0],
        })
    }

    pub fn scalars(&self) -> PolygonScalars {
        let v = &self.vertices;
        let s = if v.len() >= 2 {
            Rational::one() - (&v[0].0 - &v[1].0) / (&v[0].1 - &v[1].1)
        } else {
            Rational::one()
        };
        let r = self
            .defining
            .iter()
            .map(|p| p.x.clone())
            .min()
            .expect("non-empty");
        PolygonScalars {
            b_local: v[0].1.clone(),
            r,
            lambda0_x: v[0].0.clone(),
            s,
            k: self.k(),
        }
    }

    /// Canonical and resolving normal-fan generators, one per face.
    pub fn beta_vectors(&self) -> BetaData {
        let mut notes = Vec::new();
        let rays = self
            .faces
            .iter()
            .map(|f| {
                let m = f.value.denom().to_i64().unwrap_or(i64::MAX);
                BetaRay {
                    kind: f.kind,
                    can: f.normal,
                    res: [f.normal[0].saturating_mul(m), f.normal[1].saturating_mul(m)],
                    face_value: f.value.clone(),
                }
            })
            .collect();
        let w0 = self.vertex_weights[0];
        if self.faces[0].value.denom().is_one() && w0 > 1 {
            notes.push(format!(
                "horizontal ray: beta_res = (0,1) because the face value {} is already integral; \
                 scaling by the vertex weight would give (0,{})",
                fmt_rational(&self.faces[0].value),
                w0
            ));
        }
        BetaData { rays, notes }
    }

    /// Checks that `<beta_res, v>` is a (non-negative) integer at every
    /// vertex, and that every defining point `q/e` sits in the vertex cone
    /// `v + a_1 r_1 + a_2 r_2` with `e * a_i` non-negative integers, where
    /// `r_1, r_2` is the basis dual to the two incident `beta_res`.
    pub fn divisibility_check(&self) -> DivisibilityReport {
        let beta = self.beta_vectors();
        let nonneg = self
            .defining
            .iter()
            .all(|p| !p.x.is_negative() && !p.y.is_negative());
        let mut failures = Vec::new();
        for (j, v) in self.vertices.iter().enumerate() {
            let pair = [&beta.rays[j], &beta.rays[j + 1]];
            for b in pair {
                let val = dot(&b.res, v);
                if !val.is_integer() || (nonneg && val.is_negative()) {
                    failures.push(format!(
                        "vertex {} ({}, {}): <{:?}, v> = {}",
                        j,
                        fmt_rational(&v.0),
                        fmt_rational(&v.1),
                        b.res,
                        fmt_rational(&val)
                    ));
                }
            }
            for q in &self.defining {
                let e = int(q.weight as i64);
                let diff = (&q.x - &v.0, &q.y - &v.1);
                for b in pair {
                    let ea = dot(&b.res, &diff) * &e;
                    if !ea.is_integer() || ea.is_negative() {
                        failures.push(format!(
                            "vertex {}, point ({}, {}) weight {}: e*a = {} along {:?}",
                            j,
                            fmt_rational(&q.x),
                            fmt_rational(&q.y),
                            q.weight,
                            fmt_rational(&ea),
                            b.res
                        ));
                    }
                }
            }
        }
        DivisibilityReport {
            passed: failures.is_empty(),
            nonnegativity_checked: nonneg,
            failures,
        }
    }

    /// The polygon of the twisted datum: every defining point maps by
    /// `(x, y) -> ((x + n) / (2n + 1), (y + n) / (2n + 1))` and its weight
    /// is multiplied by `2n + 1`.
    pub fn shear(&self, n: i64) -> Result<NewtonPolygon, PolygonError> {
        let m = 2 * n + 1;
        if m <= 0 {
            return Err(PolygonError::NonPositiveTwist { n });
        }
        let nn = int(n);
        let mm = int(m);
        let pts: Vec<WeightedPoint> = self
            .defining
            .iter()
            .map(|p| WeightedPoint {
                x: (&p.x + &nn) / &mm,
                y: (&p.y + &nn) / &mm,
                weight: p.weight * m as u64,
            })
            .collect();
        build_polygon(&pts)
    }
}
