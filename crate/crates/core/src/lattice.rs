//! Rational plane geometry for Newton polygons and toric surfaces:
//! lattice points, rational triangles with a canonical vertex order,
//! normal fans, and weighted projective space weights.
//!
//! Triangles are stored counterclockwise with the lexicographically
//! smallest vertex first, so structural equality is geometric equality.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::arith::{format_rational, parse_rational, rational_ceil_i64, rational_floor_i64};

/// An exponent vector / integral point of the plane.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct LatticePoint {
    pub i: i64,
    pub j: i64,
}

impl LatticePoint {
    pub fn new(i: i64, j: i64) -> Self {
        LatticePoint { i, j }
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.i, self.j)
    }
}

/// A point of the rational plane.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RationalPoint {
    pub x: BigRational,
    pub y: BigRational,
}

impl RationalPoint {
    pub fn new(x: BigRational, y: BigRational) -> Self {
        RationalPoint { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        RationalPoint {
            x: BigRational::from_integer(BigInt::from(x)),
            y: BigRational::from_integer(BigInt::from(y)),
        }
    }

    pub fn from_lattice(p: &LatticePoint) -> Self {
        Self::from_ints(p.i, p.j)
    }

    /// Integral points convert to lattice points, others do not.
    pub fn to_lattice(&self) -> Option<LatticePoint> {
        use num_traits::ToPrimitive;
        if self.x.is_integer() && self.y.is_integer() {
            Some(LatticePoint {
                i: self.x.to_integer().to_i64()?,
                j: self.y.to_integer().to_i64()?,
            })
        } else {
            None
        }
    }

    fn lex_key(&self) -> (BigRational, BigRational) {
        (self.x.clone(), self.y.clone())
    }
}

impl fmt::Display for RationalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", format_rational(&self.x), format_rational(&self.y))
    }
}

fn cross(u: (&BigRational, &BigRational), v: (&BigRational, &BigRational)) -> BigRational {
    u.0 * v.1 - u.1 * v.0
}

/// Signed double area of the triangle `a, b, c`.
fn orient(a: &RationalPoint, b: &RationalPoint, c: &RationalPoint) -> BigRational {
    cross(
        (&(&b.x - &a.x), &(&b.y - &a.y)),
        (&(&c.x - &a.x), &(&c.y - &a.y)),
    )
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum LatticeError {
    DegenerateTriangle,
    /// Interval endpoints out of order or equal.
    InvalidInterval,
    /// Triangle cannot be read as a base plus two positive-slope edges.
    NonCanonicalShape(String),
    /// Fan rays that are parallel or fail to span the plane positively.
    DegenerateFan,
    Parse(String),
}

impl fmt::Display for LatticeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatticeError::DegenerateTriangle => write!(f, "degenerate (collinear) triangle"),
            LatticeError::InvalidInterval => write!(f, "invalid interval: need a < b"),
            LatticeError::NonCanonicalShape(why) => write!(f, "non-canonical triangle shape: {why}"),
            LatticeError::DegenerateFan => write!(f, "degenerate fan: rays must pairwise span and positively span the plane"),
            LatticeError::Parse(why) => write!(f, "parse error: {why}"),
        }
    }
}

impl std::error::Error for LatticeError {}

/// A nondegenerate triangle with rational vertices.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RationalTriangle {
    v: [RationalPoint; 3],
}

impl RationalTriangle {
    /// Builds a triangle, reordering the vertices counterclockwise with the
    /// lexicographically smallest first. Collinear input is rejected.
    pub fn new(
        a: RationalPoint,
        b: RationalPoint,
        c: RationalPoint,
    ) -> Result<Self, LatticeError> {
        let d = orient(&a, &b, &c);
        if d.is_zero() {
            return Err(LatticeError::DegenerateTriangle);
        }
        let mut v = if d.is_negative() { [a, c, b] } else { [a, b, c] };
        let min_idx = (0..3)
            .min_by_key(|&k| v[k].lex_key())
            .expect("three vertices");
        v.rotate_left(min_idx);
        Ok(RationalTriangle { v })
    }

    pub fn from_int_vertices(pts: [(i64, i64); 3]) -> Result<Self, LatticeError> {
        let [a, b, c] = pts;
        Self::new(
            RationalPoint::from_ints(a.0, a.1),
            RationalPoint::from_ints(b.0, b.1),
            RationalPoint::from_ints(c.0, c.1),
        )
    }

    pub fn vertices(&self) -> &[RationalPoint; 3] {
        &self.v
    }

    /// Exact area (positive).
    pub fn area(&self) -> BigRational {
        let two = BigRational::from_integer(BigInt::from(2));
        orient(&self.v[0], &self.v[1], &self.v[2]) / two
    }

    /// Closed-triangle membership.
    pub fn contains(&self, p: &RationalPoint) -> bool {
        for k in 0..3 {
            let a = &self.v[k];
            let b = &self.v[(k + 1) % 3];
            if orient(a, b, p).is_negative() {
                return false;
            }
        }
        true
    }

    pub fn contains_lattice(&self, p: &LatticePoint) -> bool {
        self.contains(&RationalPoint::from_lattice(p))
    }

    /// True when every vertex of the (convex) polygon lies in the triangle.
    pub fn contains_polygon(&self, vertices: &[LatticePoint]) -> bool {
        vertices.iter().all(|p| self.contains_lattice(p))
    }

    /// All integral points of the closed triangle, lexicographically sorted.
    pub fn lattice_points(&self) -> Vec<LatticePoint> {
        let xs: Vec<&BigRational> = self.v.iter().map(|p| &p.x).collect();
        let ys: Vec<&BigRational> = self.v.iter().map(|p| &p.y).collect();
        let x_lo = rational_ceil_i64(xs.iter().copied().min().expect("vertex"));
        let x_hi = rational_floor_i64(xs.iter().copied().max().expect("vertex"));
        let y_lo = rational_ceil_i64(ys.iter().copied().min().expect("vertex"));
        let y_hi = rational_floor_i64(ys.iter().copied().max().expect("vertex"));
        let mut out = Vec::new();
        for i in x_lo..=x_hi {
            for j in y_lo..=y_hi {
                let p = LatticePoint::new(i, j);
                if self.contains_lattice(&p) {
                    out.push(p);
                }
            }
        }
        out
    }

    /// Inward primitive normals, one per edge, ordered opposite v0, v1, v2.
    pub fn normal_fan_rays(&self) -> [PrimitiveRay; 3] {
        let edge = |a: &RationalPoint, b: &RationalPoint| {
            let dx = &b.x - &a.x;
            let dy = &b.y - &a.y;
            // Rotating the CCW edge direction by +90 degrees points inward.
            PrimitiveRay::from_direction(-dy, dx).expect("nondegenerate edge")
        };
        [
            edge(&self.v[1], &self.v[2]),
            edge(&self.v[2], &self.v[0]),
            edge(&self.v[0], &self.v[1]),
        ]
    }

    /// Scales the triangle about the origin by a positive factor.
    pub fn scaled(&self, factor: &BigRational) -> Result<Self, LatticeError> {
        if !factor.is_positive() {
            return Err(LatticeError::InvalidInterval);
        }
        let s = |p: &RationalPoint| RationalPoint::new(&p.x * factor, &p.y * factor);
        RationalTriangle::new(s(&self.v[0]), s(&self.v[1]), s(&self.v[2]))
    }

    /// Reads the triangle as a bottom edge plus left and right edges of
    /// positive slope meeting at the apex.
    pub fn frame(&self) -> Result<TriangleFrame, LatticeError> {
        let apex_idx = (0..3)
            .max_by_key(|&k| self.v[k].y.clone())
            .expect("three vertices");
        for k in 0..3 {
            if k != apex_idx && self.v[k].y == self.v[apex_idx].y {
                return Err(LatticeError::NonCanonicalShape(
                    "apex is not unique".to_string(),
                ));
            }
        }
        let apex = self.v[apex_idx].clone();
        let mut bottom: Vec<RationalPoint> = (0..3)
            .filter(|&k| k != apex_idx)
            .map(|k| self.v[k].clone())
            .collect();
        bottom.sort_by_key(|p| p.lex_key());
        let (bl, br) = (bottom[0].clone(), bottom[1].clone());
        if bl.x == br.x {
            return Err(LatticeError::NonCanonicalShape(
                "bottom edge is vertical".to_string(),
            ));
        }
        let slope = |from: &RationalPoint| -> Result<BigRational, LatticeError> {
            let run = &apex.x - &from.x;
            if !run.is_positive() {
                return Err(LatticeError::NonCanonicalShape(
                    "apex must lie strictly right of both bottom vertices".to_string(),
                ));
            }
            let s = (&apex.y - &from.y) / run;
            if !s.is_positive() {
                return Err(LatticeError::NonCanonicalShape(
                    "edge slopes must be positive".to_string(),
                ));
            }
            Ok(s)
        };
        let s_left = slope(&bl)?;
        let s_right = slope(&br)?;
        if s_left >= s_right {
            return Err(LatticeError::NonCanonicalShape(
                "left edge slope must be smaller than right edge slope".to_string(),
            ));
        }
        Ok(TriangleFrame {
            apex,
            bottom_left: bl,
            bottom_right: br,
            s_left,
            s_right,
        })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "vertices": self.v.iter()
                .map(|p| vec![format_rational(&p.x), format_rational(&p.y)])
                .collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self, LatticeError> {
        let verts = v
            .get("vertices")
            .and_then(Value::as_array)
            .ok_or_else(|| LatticeError::Parse("missing `vertices` array".to_string()))?;
        if verts.len() != 3 {
            return Err(LatticeError::Parse("need exactly 3 vertices".to_string()));
        }
        let mut pts = Vec::with_capacity(3);
        for entry in verts {
            let pair = entry
                .as_array()
                .filter(|a| a.len() == 2)
                .ok_or_else(|| LatticeError::Parse("vertex must be a [x, y] pair".to_string()))?;
            let coord = |v: &Value| -> Result<BigRational, LatticeError> {
                let s = v
                    .as_str()
                    .ok_or_else(|| LatticeError::Parse("coordinates must be strings".to_string()))?;
                parse_rational(s).map_err(LatticeError::Parse)
            };
            pts.push(RationalPoint::new(coord(&pair[0])?, coord(&pair[1])?));
        }
        let c = pts.pop().expect("len 3");
        let b = pts.pop().expect("len 3");
        let a = pts.pop().expect("len 3");
        RationalTriangle::new(a, b, c)
    }
}

impl fmt::Display for RationalTriangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.v[0], self.v[1], self.v[2])
    }
}

impl FromStr for RationalTriangle {
    type Err = LatticeError;

    /// Parses `"x0,y0 x1,y1 x2,y2"` with rational coordinates.
    fn from_str(s: &str) -> Result<Self, LatticeError> {
        let toks: Vec<&str> = s.split_whitespace().collect();
        if toks.len() != 3 {
            return Err(LatticeError::Parse(format!(
                "expected 3 vertices, got {}",
                toks.len()
            )));
        }
        let mut pts = Vec::with_capacity(3);
        for t in toks {
            let (x, y) = t
                .split_once(',')
                .ok_or_else(|| LatticeError::Parse(format!("vertex `{t}` is not `x,y`")))?;
            pts.push(RationalPoint::new(
                parse_rational(x).map_err(LatticeError::Parse)?,
                parse_rational(y).map_err(LatticeError::Parse)?,
            ));
        }
        let c = pts.pop().expect("len 3");
        let b = pts.pop().expect("len 3");
        let a = pts.pop().expect("len 3");
        RationalTriangle::new(a, b, c)
    }
}

/// Canonical reading of a triangle: apex on top, base below, and the two
/// non-base edges of positive slope with the left one the shallower.
#[derive(Clone, Debug)]
pub struct TriangleFrame {
    pub apex: RationalPoint,
    pub bottom_left: RationalPoint,
    pub bottom_right: RationalPoint,
    pub s_left: BigRational,
    pub s_right: BigRational,
}

impl TriangleFrame {
    /// x-intercept of the line of slope `s_left` through `p`.
    pub fn left_intercept(&self, x: &BigRational, y: &BigRational) -> BigRational {
        x - y / &self.s_left
    }

    /// x-intercept of the line of slope `s_right` through `p`.
    pub fn right_intercept(&self, x: &BigRational, y: &BigRational) -> BigRational {
        x - y / &self.s_right
    }
}

/// A primitive integer direction vector.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct PrimitiveRay {
    pub u: (BigInt, BigInt),
}

impl PrimitiveRay {
    /// Primitivizes a nonzero rational direction, keeping its orientation.
    pub fn from_direction(x: BigRational, y: BigRational) -> Result<Self, LatticeError> {
        if x.is_zero() && y.is_zero() {
            return Err(LatticeError::DegenerateFan);
        }
        let scale = BigRational::from_integer(x.denom().lcm(y.denom()));
        let xi = (&x * &scale).to_integer();
        let yi = (&y * &scale).to_integer();
        let g = xi.gcd(&yi);
        Ok(PrimitiveRay { u: (xi / &g, yi / &g) })
    }

    pub fn from_ints(x: i64, y: i64) -> Result<Self, LatticeError> {
        Self::from_direction(
            BigRational::from_integer(BigInt::from(x)),
            BigRational::from_integer(BigInt::from(y)),
        )
    }
}

impl fmt::Display for PrimitiveRay {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.u.0, self.u.1)
    }
}

/// Result of reading weights off a complete fan with three rays.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum WpsOutcome {
    /// The unique primitive positive relation among the rays.
    Weights(BigInt, BigInt, BigInt),
    /// The rays positively span the plane but generate a proper sublattice,
    /// so the surface is a fake weighted projective plane.
    NotAWps,
}

/// Weights of the weighted projective plane with the given fan rays.
///
/// The weights are the cofactors of the 2x3 ray matrix, normalized to the
/// primitive positive relation `a r1 + b r2 + c r3 = 0`. The rays must be
/// pairwise independent and positively span the plane.
pub fn wps_weights(rays: &[PrimitiveRay; 3]) -> Result<WpsOutcome, LatticeError> {
    let det = |a: &PrimitiveRay, b: &PrimitiveRay| -> BigInt { &a.u.0 * &b.u.1 - &a.u.1 * &b.u.0 };
    let k = [
        det(&rays[1], &rays[2]),
        -det(&rays[0], &rays[2]),
        det(&rays[0], &rays[1]),
    ];
    if k.iter().any(|v| v.is_zero()) {
        return Err(LatticeError::DegenerateFan);
    }
    let all_pos = k.iter().all(|v| v.is_positive());
    let all_neg = k.iter().all(|v| v.is_negative());
    if !all_pos && !all_neg {
        return Err(LatticeError::DegenerateFan);
    }
    let mut ray_matrix = crate::sections::IntMatrix::zeros(2, 3);
    for (c, r) in rays.iter().enumerate() {
        *ray_matrix.at_mut(0, c) = r.u.0.clone();
        *ray_matrix.at_mut(1, c) = r.u.1.clone();
    }
    let snf = crate::sections::smith_normal_form(&ray_matrix);
    if snf.divisors.iter().any(|d| !d.is_one()) {
        return Ok(WpsOutcome::NotAWps);
    }
    let mut k = k;
    if all_neg {
        for v in k.iter_mut() {
            *v = -std::mem::take(v);
        }
    }
    let g = k[0].gcd(&k[1]).gcd(&k[2]);
    let [a, b, c] = k;
    Ok(WpsOutcome::Weights(a / &g, b / &g, c / &g))
}

/// The triangle with base `[a, b]` on the x-axis whose non-base edges are
/// parallel to those of `triangle`.
pub fn parallel_triangle(
    triangle: &RationalTriangle,
    a: &BigRational,
    b: &BigRational,
) -> Result<RationalTriangle, LatticeError> {
    if a >= b {
        return Err(LatticeError::InvalidInterval);
    }
    let frame = triangle.frame()?;
    let apex_x = (&frame.s_right * b - &frame.s_left * a) / (&frame.s_right - &frame.s_left);
    let apex_y = &frame.s_left * (&apex_x - a);
    RationalTriangle::new(
        RationalPoint::new(a.clone(), BigRational::zero()),
        RationalPoint::new(b.clone(), BigRational::zero()),
        RationalPoint::new(apex_x, apex_y),
    )
}

/// Convex hull of a nonempty set of lattice points: vertices in
/// counterclockwise order starting from the lexicographically smallest.
/// Collinear input yields the two extreme points, a single point itself.
pub fn convex_hull(points: &BTreeSet<LatticePoint>) -> Vec<LatticePoint> {
    let pts: Vec<LatticePoint> = points.iter().copied().collect();
    assert!(!pts.is_empty(), "hull of an empty set");
    if pts.len() == 1 {
        return pts;
    }
    let turn = |o: &LatticePoint, a: &LatticePoint, b: &LatticePoint| -> i128 {
        let (ax, ay) = ((a.i - o.i) as i128, (a.j - o.j) as i128);
        let (bx, by) = ((b.i - o.i) as i128, (b.j - o.j) as i128);
        ax * by - ay * bx
    };
    let mut lower: Vec<LatticePoint> = Vec::new();
    for p in &pts {
        while lower.len() >= 2 && turn(&lower[lower.len() - 2], &lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(*p);
    }
    let mut upper: Vec<LatticePoint> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2 && turn(&upper[upper.len() - 2], &upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(*p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}
