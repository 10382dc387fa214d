//! Divisor classes on the blowup of a toric surface at the general torus
//! point: degree intervals relative to a reference triangle, numeric
//! classes, exact intersection numbers, and negativity reports.
//!
//! The Picard-rank-two lattice is spanned by the pullback of the toric
//! hyperplane class H and the exceptional class E, with H.H = 2 area,
//! E.E = -1, H.E = 0.

use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;
use serde_json::{json, Value};

use crate::arith::format_rational;
use crate::lattice::{LatticeError, RationalPoint, RationalTriangle};
use crate::laurent::LaurentPoly;

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum BlowupError {
    ZeroPolynomial,
    /// The reference triangle cannot be framed (base plus two positive
    /// slopes) or does not match the requested special shape.
    WrongShape(String),
    /// Degree intervals are defined for supports in the upper half plane.
    SupportBelowBase,
}

impl fmt::Display for BlowupError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BlowupError::ZeroPolynomial => write!(f, "the zero polynomial has no class"),
            BlowupError::WrongShape(why) => write!(f, "wrong triangle shape: {why}"),
            BlowupError::SupportBelowBase => {
                write!(f, "support has negative y-exponents, below the base line")
            }
        }
    }
}

impl std::error::Error for BlowupError {}

fn shape_err(e: LatticeError) -> BlowupError {
    BlowupError::WrongShape(e.to_string())
}

/// The class h pi*H - e E in the rank-two numeric lattice.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NumericClass {
    pub h: BigRational,
    pub e: BigRational,
}

impl NumericClass {
    pub fn new(h: BigRational, e: BigRational) -> Self {
        NumericClass { h, e }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "h": format_rational(&self.h),
            "e": format_rational(&self.e),
        })
    }
}

impl fmt::Display for NumericClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {})",
            format_rational(&self.h),
            format_rational(&self.e)
        )
    }
}

/// Base interval [a, b] of the smallest triangle with edges parallel to the
/// reference triangle containing a given support.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DegreeInterval {
    pub a: BigRational,
    pub b: BigRational,
}

impl DegreeInterval {
    /// Endpointwise sum, matching multiplication of polynomials.
    pub fn sum(&self, other: &DegreeInterval) -> DegreeInterval {
        DegreeInterval {
            a: &self.a + &other.a,
            b: &self.b + &other.b,
        }
    }

    pub fn length(&self) -> BigRational {
        &self.b - &self.a
    }

    pub fn contained_in(&self, lo: &BigRational, hi: &BigRational) -> bool {
        &self.a >= lo && &self.b <= hi
    }

    pub fn to_json(&self) -> Value {
        json!({
            "a": format_rational(&self.a),
            "b": format_rational(&self.b),
        })
    }
}

impl fmt::Display for DegreeInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}, {}]",
            format_rational(&self.a),
            format_rational(&self.b)
        )
    }
}

fn interval_of_points<'a, I>(points: I, triangle: &RationalTriangle) -> Result<DegreeInterval, BlowupError>
where
    I: Iterator<Item = (&'a BigRational, &'a BigRational)>,
{
    let frame = triangle.frame().map_err(shape_err)?;
    let mut a: Option<BigRational> = None;
    let mut b: Option<BigRational> = None;
    for (x, y) in points {
        let left = frame.left_intercept(x, y);
        let right = frame.right_intercept(x, y);
        a = Some(match a {
            None => left,
            Some(cur) => cur.min(left),
        });
        b = Some(match b {
            None => right,
            Some(cur) => cur.max(right),
        });
    }
    match (a, b) {
        (Some(a), Some(b)) => Ok(DegreeInterval { a, b }),
        _ => Err(BlowupError::ZeroPolynomial),
    }
}

/// Degree interval of a nonzero polynomial with respect to a reference
/// triangle: a = min (i - j / s_left), b = max (i - j / s_right) over the
/// support, the x-intercepts of the two supporting edge directions.
pub fn degree_interval(
    f: &LaurentPoly,
    triangle: &RationalTriangle,
) -> Result<DegreeInterval, BlowupError> {
    if f.is_zero() {
        return Err(BlowupError::ZeroPolynomial);
    }
    if f.terms().any(|(pt, _)| pt.j < 0) {
        return Err(BlowupError::SupportBelowBase);
    }
    let pts: Vec<(BigRational, BigRational)> = f
        .terms()
        .map(|(pt, _)| {
            (
                BigRational::from_integer(pt.i.into()),
                BigRational::from_integer(pt.j.into()),
            )
        })
        .collect();
    interval_of_points(pts.iter().map(|(x, y)| (x, y)), triangle)
}

/// Degree interval of the reference triangle itself; its length is the
/// normalizing base length for class computations.
pub fn base_interval(triangle: &RationalTriangle) -> Result<DegreeInterval, BlowupError> {
    interval_of_points(
        triangle.vertices().iter().map(|p| (&p.x, &p.y)),
        triangle,
    )
}

/// Numeric class of the curve cut out by f: h is the degree-interval length
/// over the base length of the triangle, e the vanishing order at (1, 1).
pub fn class_of(f: &LaurentPoly, triangle: &RationalTriangle) -> Result<NumericClass, BlowupError> {
    let own = degree_interval(f, triangle)?;
    let base = base_interval(triangle)?;
    let mult = f.multiplicity_at_t0().map_err(|_| BlowupError::ZeroPolynomial)?;
    Ok(NumericClass {
        h: own.length() / base.length(),
        e: BigRational::from_integer(mult.into()),
    })
}

/// Intersection number of two classes: h1 h2 (2 area) - e1 e2.
pub fn intersect(c1: &NumericClass, c2: &NumericClass, triangle: &RationalTriangle) -> BigRational {
    let two = BigRational::from_integer(2.into());
    &c1.h * &c2.h * two * triangle.area() - &c1.e * &c2.e
}

/// Length of the vertical segment from the lower-right vertex of the
/// triangle up to the edge through the origin and the apex. The triangle
/// must have a vertex at the origin, its apex strictly above and to the
/// right, and the third vertex at positive x on or below the x-axis.
pub fn vertical_segment_height(triangle: &RationalTriangle) -> Result<BigRational, BlowupError> {
    let vs = triangle.vertices();
    let origin = RationalPoint::from_ints(0, 0);
    if !vs.contains(&origin) {
        return Err(BlowupError::WrongShape(
            "no vertex at the origin".to_string(),
        ));
    }
    let apex = vs
        .iter()
        .max_by_key(|p| p.y.clone())
        .expect("three vertices");
    if apex.y <= BigRational::zero() || apex.x <= BigRational::zero() {
        return Err(BlowupError::WrongShape(
            "apex must lie strictly inside the upper right quadrant".to_string(),
        ));
    }
    let lower = vs
        .iter()
        .find(|p| **p != origin && *p != apex)
        .expect("three vertices");
    if lower.y > BigRational::zero() || lower.x <= BigRational::zero() {
        return Err(BlowupError::WrongShape(
            "lower-right vertex must have positive x and nonpositive y".to_string(),
        ));
    }
    if lower.x > apex.x {
        return Err(BlowupError::WrongShape(
            "lower-right vertex must not pass the apex".to_string(),
        ));
    }
    Ok(&apex.y / &apex.x * &lower.x - &lower.y)
}

/// Negativity report for the curve cut out by f.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NegativityReport {
    pub class: NumericClass,
    pub self_intersection: BigRational,
    /// Self-intersection <= 0, the blown-up surface's notion of negative.
    pub negative: bool,
    /// Exactly zero: negative in the weak sense only.
    pub zero_curve: bool,
}

impl NegativityReport {
    pub fn to_json(&self) -> Value {
        json!({
            "class": self.class.to_json(),
            "self_intersection": format_rational(&self.self_intersection),
            "negative": self.negative,
            "zero_curve": self.zero_curve,
        })
    }
}

pub fn is_negative_curve(
    f: &LaurentPoly,
    triangle: &RationalTriangle,
) -> Result<NegativityReport, BlowupError> {
    let class = class_of(f, triangle)?;
    let self_intersection = intersect(&class, &class, triangle);
    let negative = self_intersection <= BigRational::zero();
    let zero_curve = self_intersection.is_zero();
    Ok(NegativityReport {
        class,
        self_intersection,
        negative,
        zero_curve,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, rint};
    use crate::curves::{fgh, xi};
    use crate::laurent::{FieldSpec, LaurentPoly};

    fn tri(s: &str) -> RationalTriangle {
        s.parse().expect("triangle")
    }

    fn p(s: &str) -> LaurentPoly {
        LaurentPoly::parse(s, FieldSpec::Rationals).expect("poly")
    }

    /// The main negative-curve triangle: (-alpha, 0), (m-1+beta, 0), (m, m+1).
    fn negative_curve_triangle(m: i64, alpha: &BigRational, beta: &BigRational) -> RationalTriangle {
        RationalTriangle::new(
            RationalPoint::new(-alpha.clone(), rint(0)),
            RationalPoint::new(rint(m - 1) + beta.clone(), rint(0)),
            RationalPoint::from_ints(m, m + 1),
        )
        .expect("nondegenerate")
    }

    #[test]
    fn figure_triangle_class_and_negativity() {
        let t = tri("0,0 2,3 125/101,-5/101");
        let c = class_of(&xi(2), &t).unwrap();
        assert_eq!(c, NumericClass::new(rint(1), rint(2)));
        let report = is_negative_curve(&xi(2), &t).unwrap();
        assert_eq!(report.self_intersection, rat(-19, 101));
        assert!(report.negative);
        assert!(!report.zero_curve);
    }

    #[test]
    fn exceptional_class_normalization() {
        let t = tri("0,0 1,0 1,1");
        let e = NumericClass::new(rint(0), rint(1));
        assert_eq!(intersect(&e, &e, &t), rint(-1));
        let zero = NumericClass::new(rint(0), rint(0));
        assert_eq!(intersect(&zero, &e, &t), rint(0));
    }

    #[test]
    fn constant_has_zero_class() {
        let t = tri("0,0 1,0 2,3");
        assert_eq!(
            class_of(&p("1"), &t).unwrap(),
            NumericClass::new(rint(0), rint(0))
        );
    }

    #[test]
    fn interval_labels_for_the_negative_curve_family() {
        for (m, an, ad, bn, bd) in [(1i64, 1i64, 9i64, 5i64, 14i64), (2, 1, 16, 17, 65)] {
            let alpha = rat(an, ad);
            let beta = rat(bn, bd);
            let t = negative_curve_triangle(m, &alpha, &beta);
            let (f, _, h) = fgh();
            let mu = m as u32;
            let mr = rint(m);

            let top = rint(m) + ((rint(m + 2) * &beta - rint(1)) / rint(m + 1));
            let checks: Vec<(LaurentPoly, BigRational, BigRational)> = vec![
                (xi(mu), -alpha.clone(), rint(m - 1) + &beta),
                (xi(mu + 1), rint(0), top.clone()),
                (&f * &xi(mu), -alpha.clone(), top.clone()),
                (
                    &p(&format!("x^{m}")) * &h.pow(mu + 1),
                    -alpha.clone(),
                    mr.clone(),
                ),
                (
                    &(&p("x") * &h) * &xi(mu),
                    (rint(1) - rint(m + 2) * &alpha) / rint(m + 1),
                    mr.clone() + &beta,
                ),
                (f.pow(mu + 1), rint(0), mr.clone() + &beta),
            ];
            for (poly, a, b) in checks {
                let iv = degree_interval(&poly, &t).unwrap();
                assert_eq!(iv.a, a, "lower endpoint at m={m}");
                assert_eq!(iv.b, b, "upper endpoint at m={m}");
            }

            // The family member has class (1, m) and is a negative curve.
            let c = class_of(&xi(mu), &t).unwrap();
            assert_eq!(c, NumericClass::new(rint(1), rint(m)));
            let report = is_negative_curve(&xi(mu), &t).unwrap();
            assert!(report.negative && !report.zero_curve);

            // The degree-m curve class D meets C in zero.
            let d = NumericClass::new(
                rint(m) / (rint(m - 1) + &alpha + &beta),
                rint(m + 1),
            );
            assert_eq!(intersect(&c, &d, &t), rint(0));
        }
    }

    #[test]
    fn interval_additivity_on_a_product() {
        let t = negative_curve_triangle(2, &rat(1, 16), &rat(17, 65));
        let (f, _, h) = fgh();
        let prod = &f * &h;
        let sum = degree_interval(&f, &t)
            .unwrap()
            .sum(&degree_interval(&h, &t).unwrap());
        assert_eq!(degree_interval(&prod, &t).unwrap(), sum);
    }

    #[test]
    fn vertical_segment_examples() {
        // Base case with the lower-right vertex on the axis.
        let t = tri("0,0 1,0 2,3");
        assert_eq!(vertical_segment_height(&t).unwrap(), rat(3, 2));

        // Lower-right vertex strictly below the axis.
        let t = tri("0,0 11/10,-1/10 2,3");
        assert_eq!(vertical_segment_height(&t).unwrap(), rat(7, 4));
        // Consistency: (2/h) area = m for this shape (m = 2).
        let h = vertical_segment_height(&t).unwrap();
        assert_eq!(rint(2) / &h * t.area(), rint(2));

        assert!(matches!(
            vertical_segment_height(&tri("1,0 2,0 3,3")),
            Err(BlowupError::WrongShape(_))
        ));
    }

    #[test]
    fn error_paths() {
        let t = tri("0,0 1,0 2,3");
        assert_eq!(
            degree_interval(&LaurentPoly::zero(FieldSpec::Rationals), &t),
            Err(BlowupError::ZeroPolynomial)
        );
        assert_eq!(
            degree_interval(&p("y^-1"), &t),
            Err(BlowupError::SupportBelowBase)
        );
        // Triangle with a horizontal top edge cannot be framed.
        let bad = tri("0,1 2,1 1,0");
        assert!(matches!(
            degree_interval(&p("1"), &bad),
            Err(BlowupError::WrongShape(_))
        ));
    }

    #[test]
    fn not_negative_when_area_is_large() {
        // xi_1 inside a triangle scaled up enough: self-intersection > 0.
        let t = tri("0,0 4,0 6,8");
        let report = is_negative_curve(&xi(1), &t).unwrap();
        assert!(!report.negative);
    }
}
