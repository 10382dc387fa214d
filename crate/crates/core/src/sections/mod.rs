//! Section spaces of divisor classes as kernels of integer constraint
//! matrices, membership in the semigroup of classes with sections avoiding
//! the negative curve, and the containment checks on the auxiliary big
//! triangle used by the characteristic-p argument.

pub mod linalg;
mod zeta;

pub use linalg::{good_prime, kernel, smith_normal_form, IntMatrix, SnfResult};
pub use zeta::{build_zeta_p, ZetaReport};

use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;
use serde_json::{json, Value};

use crate::arith::{format_rational, rint};
use crate::curves::xi;
use crate::lattice::{parallel_triangle, LatticePoint, RationalPoint, RationalTriangle};
use crate::laurent::{FieldSpec, LaurentPoly};

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SectionsError {
    InvalidInput(String),
    /// Parameters outside the negative-curve family bounds.
    InvalidParameters(String),
    /// No admissible split index j for this prime; expected for small p.
    NoValidJ { p: u64, k: u64 },
    /// A constructed section failed its own checks; an implementation bug.
    PostVerificationFailed(String),
    /// A named clause of a validator failed.
    ValidationFailed { clause: String },
}

impl fmt::Display for SectionsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SectionsError::InvalidInput(why) => write!(f, "invalid input: {why}"),
            SectionsError::InvalidParameters(why) => write!(f, "invalid parameters: {why}"),
            SectionsError::NoValidJ { p, k } => {
                write!(f, "no valid split index j in 0..={k} for p = {p}")
            }
            SectionsError::PostVerificationFailed(why) => {
                write!(f, "post-verification failed: {why}")
            }
            SectionsError::ValidationFailed { clause } => {
                write!(f, "validation failed at clause: {clause}")
            }
        }
    }
}

impl std::error::Error for SectionsError {}

/// The data determining a section space: lattice points of a triangle as
/// monomials, constrained to vanish to the given order at (1, 1).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SectionProblem {
    pub triangle: RationalTriangle,
    pub order: u64,
    pub vertex: RationalPoint,
}

impl SectionProblem {
    pub fn new(
        triangle: RationalTriangle,
        order: u64,
        vertex: RationalPoint,
    ) -> Result<Self, SectionsError> {
        if !triangle.vertices().contains(&vertex) {
            return Err(SectionsError::InvalidInput(
                "distinguished point must be a vertex of the triangle".to_string(),
            ));
        }
        Ok(SectionProblem {
            triangle,
            order,
            vertex,
        })
    }
}

/// Vanishing constraints as an integer matrix: one row per derivative
/// index (a, b) with a + b < order, ordered by total degree then by b;
/// one column per lattice point of the triangle in lexicographic order.
/// The entry at ((a, b), (i, j)) is C(i, a) C(j, b), the coefficient of
/// u^a v^b in (1+u)^i (1+v)^j, so the matrix is field-independent.
pub fn constraint_matrix(problem: &SectionProblem) -> IntMatrix {
    let points = problem.triangle.lattice_points();
    let order = problem.order;
    let rows: usize = (order * (order + 1) / 2) as usize;
    let mut m = IntMatrix::zeros(rows, points.len());
    let mut r = 0usize;
    for d in 0..order {
        for b in 0..=d {
            let a = (d - b) as u32;
            for (c, pt) in points.iter().enumerate() {
                *m.at_mut(r, c) =
                    crate::arith::binomial(pt.i, a) * crate::arith::binomial(pt.j, b as u32);
            }
            r += 1;
        }
    }
    m
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum HcReason {
    /// The scaled distinguished vertex is not a lattice point.
    NonIntegralVertex,
    /// Every section vanishes at the vertex monomial.
    VertexCoordinateForcedZero,
    WitnessFound,
}

impl fmt::Display for HcReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HcReason::NonIntegralVertex => write!(f, "non-integral vertex"),
            HcReason::VertexCoordinateForcedZero => write!(f, "vertex coordinate forced zero"),
            HcReason::WitnessFound => write!(f, "witness found"),
        }
    }
}

/// Outcome of the membership test for one multiple l of the class.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HcReport {
    pub l: u32,
    pub field: FieldSpec,
    pub member: bool,
    pub reason: HcReason,
    pub witness: Option<LaurentPoly>,
    /// Dimension of the section space, when it was computed.
    pub kernel_dim: Option<usize>,
}

impl HcReport {
    pub fn to_json(&self) -> Value {
        json!({
            "l": self.l,
            "field": self.field.to_string(),
            "member": self.member,
            "reason": self.reason.to_string(),
            "witness": self.witness.as_ref().map(|w| w.to_string()),
            "kernel_dim": self.kernel_dim,
        })
    }
}

/// Tests whether l lies in the section semigroup of the class with triangle
/// `delta_prime` and multiplicity n at the blown-up point: the class l D has
/// a section not vanishing at the distinguished vertex monomial exactly when
/// some kernel vector of the scaled constraint problem has a nonzero
/// coordinate there.
pub fn hc_member(
    l: u32,
    delta_prime: &RationalTriangle,
    n: u64,
    vertex: &RationalPoint,
    field: FieldSpec,
) -> HcReport {
    assert!(l >= 1, "membership is asked for positive multiples");
    assert!(
        delta_prime.vertices().contains(vertex),
        "distinguished point must be a vertex of the triangle"
    );
    let factor = rint(l as i64);
    let scaled = delta_prime.scaled(&factor).expect("positive factor");
    let scaled_vertex = RationalPoint::new(&vertex.x * &factor, &vertex.y * &factor);
    let Some(vertex_point) = scaled_vertex.to_lattice() else {
        return HcReport {
            l,
            field,
            member: false,
            reason: HcReason::NonIntegralVertex,
            witness: None,
            kernel_dim: None,
        };
    };

    let problem = SectionProblem::new(scaled, l as u64 * n, scaled_vertex)
        .expect("scaled vertex stays a vertex");
    let points = problem.triangle.lattice_points();
    let col = points
        .iter()
        .position(|p| *p == vertex_point)
        .expect("integral vertex is a lattice point of the triangle");
    let matrix = constraint_matrix(&problem);
    let basis = kernel(&matrix, field);
    let kernel_dim = basis.len();

    let witness_vec = basis.iter().find(|v| !v[col].is_zero());
    match witness_vec {
        Some(v) => {
            let poly = LaurentPoly::from_terms(
                field,
                points
                    .iter()
                    .zip(v.iter())
                    .map(|(pt, c)| ((pt.i, pt.j), c.clone())),
            );
            HcReport {
                l,
                field,
                member: true,
                reason: HcReason::WitnessFound,
                witness: Some(poly),
                kernel_dim: Some(kernel_dim),
            }
        }
        None => HcReport {
            l,
            field,
            member: false,
            reason: HcReason::VertexCoordinateForcedZero,
            witness: None,
            kernel_dim: Some(kernel_dim),
        },
    }
}

/// One verified containment or inequality inside a validator report.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ClauseCheck {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

/// Exact data backing the big-triangle containment argument.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DeltaBarReport {
    pub m: u32,
    pub alpha: BigRational,
    pub beta: BigRational,
    /// The big triangle with base [0, m^2].
    pub bar: RationalTriangle,
    /// Triangle of the m^2-fold class, parallel to the family triangle.
    pub delta1: RationalTriangle,
    /// Newton polygon of xi_(m+1)^m.
    pub delta2: Vec<LatticePoint>,
    pub x_left: BigRational,
    pub x_right: BigRational,
    pub apex: RationalPoint,
    pub area: BigRational,
    pub clauses: Vec<ClauseCheck>,
}

impl DeltaBarReport {
    pub fn to_json(&self) -> Value {
        json!({
            "m": self.m,
            "alpha": format_rational(&self.alpha),
            "beta": format_rational(&self.beta),
            "bar": self.bar.to_json(),
            "delta1": self.delta1.to_json(),
            "delta2": self.delta2.iter().map(|p| json!([p.i, p.j])).collect::<Vec<_>>(),
            "x_left": format_rational(&self.x_left),
            "x_right": format_rational(&self.x_right),
            "apex": [format_rational(&self.apex.x), format_rational(&self.apex.y)],
            "area": format_rational(&self.area),
            "clauses": self.clauses.iter()
                .map(|c| json!({"name": c.name, "pass": c.pass, "detail": c.detail}))
                .collect::<Vec<_>>(),
        })
    }
}

/// Builds the auxiliary triangle with base [0, m^2], left edge through
/// (m^2+1, m(m+1)+1) and right edge of slope m+2, and verifies the
/// containments that trap a hypothetical section: it must hold the lattice
/// points of the m^2-fold class triangle and the Newton polygon of
/// xi_(m+1)^m, stay lower than (m+1)^2, have area below m^2(m+1)^2/2, and
/// exclude the power's apex from the class triangle.
pub fn delta_bar_validator(
    m: u32,
    alpha: &BigRational,
    beta: &BigRational,
) -> Result<DeltaBarReport, SectionsError> {
    let params = crate::certify::Main2Params::new(m, alpha.clone(), beta.clone())
        .map_err(|e| SectionsError::InvalidParameters(e.to_string()))?;
    let delta = params.triangle();
    let mi = m as i64;
    let m_sq = rint(mi * mi);

    // Left edge through the origin and (m^2+1, m(m+1)+1); right edge of
    // slope m+2 through (m^2, 0).
    let q_slope = rint(mi * (mi + 1) + 1) / rint(mi * mi + 1);
    let right_slope = rint(mi + 2);
    let apex_x = &right_slope * &m_sq / (&right_slope - &q_slope);
    let apex_y = &q_slope * &apex_x;
    let apex = RationalPoint::new(apex_x, apex_y);
    let bar = RationalTriangle::new(
        RationalPoint::from_ints(0, 0),
        RationalPoint::new(m_sq.clone(), BigRational::zero()),
        apex.clone(),
    )
    .expect("big triangle is nondegenerate");

    let delta1 = parallel_triangle(&delta, &BigRational::zero(), &m_sq)
        .expect("family triangle frames");
    let delta2 = xi(m + 1)
        .pow(m)
        .newton_polygon()
        .expect("xi powers are nonzero");
    let delta2_apex = RationalPoint::from_ints(mi * (mi + 1), mi * (mi + 2));

    let x_left = rint((mi + 1) * (mi + 1)) * rint(mi * mi + 1) / rint(mi * mi + mi + 1);
    let x_right = rint(mi * mi) + rint((mi + 1) * (mi + 1)) / rint(mi + 2);
    let height_bound = rint((mi + 1) * (mi + 1));
    let area = bar.area();
    let area_bound = rint(mi * mi) * rint((mi + 1) * (mi + 1)) / rint(2);

    let mut clauses = Vec::new();
    let mut check = |name: &str, pass: bool, detail: String| -> Result<(), SectionsError> {
        clauses.push(ClauseCheck {
            name: name.to_string(),
            pass,
            detail,
        });
        if pass {
            Ok(())
        } else {
            Err(SectionsError::ValidationFailed {
                clause: name.to_string(),
            })
        }
    };

    check(
        "x_right < x_left",
        x_right < x_left,
        format!(
            "{} < {}",
            format_rational(&x_right),
            format_rational(&x_left)
        ),
    )?;
    let stray = delta1
        .lattice_points()
        .into_iter()
        .find(|p| !bar.contains_lattice(p));
    check(
        "big triangle holds every lattice point of the class triangle",
        stray.is_none(),
        match stray {
            None => format!("{} lattice points", delta1.lattice_points().len()),
            Some(p) => format!("{p} escapes"),
        },
    )?;
    check(
        "big triangle holds the Newton polygon of the power",
        bar.contains_polygon(&delta2),
        format!("{} hull vertices", delta2.len()),
    )?;
    check(
        "apex of the power lies outside the class triangle",
        !delta1.contains(&delta2_apex),
        format!("apex ({}, {})", delta2_apex.x, delta2_apex.y),
    )?;
    check(
        "height stays below (m+1)^2",
        apex.y < height_bound,
        format!(
            "{} < {}",
            format_rational(&apex.y),
            format_rational(&height_bound)
        ),
    )?;
    check(
        "area stays below m^2 (m+1)^2 / 2",
        area < area_bound,
        format!(
            "{} < {}",
            format_rational(&area),
            format_rational(&area_bound)
        ),
    )?;

    Ok(DeltaBarReport {
        m,
        alpha: alpha.clone(),
        beta: beta.clone(),
        bar,
        delta1,
        delta2,
        x_left,
        x_right,
        apex,
        area,
        clauses,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::laurent::Coeff;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    fn family_triangle(m: i64, alpha: &BigRational, beta: &BigRational) -> RationalTriangle {
        RationalTriangle::new(
            RationalPoint::new(-alpha.clone(), BigRational::zero()),
            RationalPoint::new(rint(m - 1) + beta.clone(), BigRational::zero()),
            RationalPoint::from_ints(m, m + 1),
        )
        .unwrap()
    }

    #[test]
    fn constraint_matrix_shapes() {
        let t: RationalTriangle = "0,0 1,0 1,1".parse().unwrap();
        let v = RationalPoint::from_ints(0, 0);
        let p0 = SectionProblem::new(t.clone(), 0, v.clone()).unwrap();
        let m0 = constraint_matrix(&p0);
        assert_eq!((m0.rows(), m0.cols()), (0, 3));

        let p1 = SectionProblem::new(t, 1, v).unwrap();
        let m1 = constraint_matrix(&p1);
        assert_eq!(m1.to_csv(), "1,1,1\n");
    }

    #[test]
    fn vertex_must_be_a_vertex() {
        let t: RationalTriangle = "0,0 1,0 1,1".parse().unwrap();
        assert!(SectionProblem::new(t, 1, RationalPoint::from_ints(5, 5)).is_err());
    }

    #[test]
    fn unipotent_system_for_the_small_class() {
        // Class triangle of the m=1 family at (1/9, 5/14), base [0, 1].
        let delta = family_triangle(1, &rat(1, 9), &rat(5, 14));
        let dp = parallel_triangle(&delta, &rint(0), &rint(1)).unwrap();
        assert_eq!(
            dp.lattice_points(),
            vec![
                LatticePoint::new(0, 0),
                LatticePoint::new(1, 0),
                LatticePoint::new(1, 1)
            ]
        );
        let problem =
            SectionProblem::new(dp.clone(), 2, RationalPoint::from_ints(0, 0)).unwrap();
        let m = constraint_matrix(&problem);
        assert_eq!(m.to_csv(), "1,1,1\n0,1,1\n0,0,1\n");

        let report = hc_member(1, &dp, 2, &RationalPoint::from_ints(0, 0), q());
        assert!(!report.member);
        assert_eq!(report.reason, HcReason::VertexCoordinateForcedZero);
        assert_eq!(report.kernel_dim, Some(0));
    }

    #[test]
    fn non_integral_vertex_is_reported() {
        let delta = family_triangle(1, &rat(1, 9), &rat(5, 14));
        let dp = parallel_triangle(&delta, &rint(0), &rint(1)).unwrap();
        let apex = dp.vertices()[2].clone();
        let report = hc_member(1, &dp, 2, &apex, q());
        assert!(!report.member);
        assert_eq!(report.reason, HcReason::NonIntegralVertex);
        assert_eq!(report.kernel_dim, None);
    }

    #[test]
    fn order_zero_membership_is_monomial() {
        let dp: RationalTriangle = "0,0 2,0 3,4".parse().unwrap();
        let report = hc_member(1, &dp, 0, &RationalPoint::from_ints(0, 0), q());
        assert!(report.member);
        let w = report.witness.unwrap();
        assert_eq!(w.coefficient(0, 0), Coeff::Rat(rat(1, 1)));
    }

    #[test]
    fn witness_for_the_boundary_configuration() {
        // beta = 1/(m+2) at m = 1: the next family member is the witness.
        let delta = family_triangle(1, &rat(1, 9), &rat(1, 3));
        let dp = parallel_triangle(&delta, &rint(0), &rint(1)).unwrap();
        let report = hc_member(1, &dp, 2, &RationalPoint::from_ints(0, 0), q());
        assert!(report.member);
        assert_eq!(report.reason, HcReason::WitnessFound);
        assert_eq!(report.kernel_dim, Some(1));
        assert_eq!(report.witness.unwrap(), xi(2));
    }

    #[test]
    fn semigroup_property_when_witnesses_exist() {
        // Two witnesses multiply to a witness for the sum of multiples:
        // supports add (Minkowski) and vanishing orders add.
        let delta = family_triangle(1, &rat(1, 9), &rat(1, 3));
        let dp = parallel_triangle(&delta, &rint(0), &rint(1)).unwrap();
        let r1 = hc_member(1, &dp, 2, &RationalPoint::from_ints(0, 0), q());
        let r2 = hc_member(2, &dp, 2, &RationalPoint::from_ints(0, 0), q());
        assert!(r1.member && r2.member);
        let w1 = r1.witness.unwrap();
        let w2 = r2.witness.unwrap();
        let prod = &w1 * &w2;
        assert_eq!(prod.multiplicity_at_t0().unwrap(), 6);
        let scaled = dp.scaled(&rint(3)).unwrap();
        for (pt, _) in prod.terms() {
            assert!(scaled.contains_lattice(pt));
        }
        assert!(!prod.coefficient(0, 0).is_zero());
    }

    #[test]
    fn big_triangle_validator_small() {
        let report = delta_bar_validator(1, &rat(1, 9), &rat(5, 14)).unwrap();
        assert_eq!(report.x_left, rat(8, 3));
        assert_eq!(report.x_right, rat(7, 3));
        assert_eq!(report.apex, RationalPoint::from_ints(2, 3));
        assert_eq!(report.area, rat(3, 2));
        assert!(report.clauses.iter().all(|c| c.pass));

        assert!(matches!(
            delta_bar_validator(1, &rat(1, 2), &rat(5, 14)),
            Err(SectionsError::InvalidParameters(_))
        ));
    }
}
