//! The family of plane curves cut out by the polynomials xi_m: closed
//! formula, the two product recursions, and irreducibility certificates
//! (a shifted Eisenstein argument and a lattice-parallelogram criterion).

use std::fmt;

use serde_json::{json, Value};

use crate::arith::binomial_u;
use crate::lattice::LatticePoint;
use crate::laurent::{FieldSpec, LaurentPoly};

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum CurvesError {
    CertificateFails { condition: String },
}

impl fmt::Display for CurvesError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurvesError::CertificateFails { condition } => {
                write!(f, "certificate condition failed: {condition}")
            }
        }
    }
}

impl std::error::Error for CurvesError {}

/// The fixed polynomials f = 1 - xy, g = 1 - xy^2, h = 1 - y over a field.
pub fn fgh_over(field: FieldSpec) -> (LaurentPoly, LaurentPoly, LaurentPoly) {
    let one = field.one();
    let m = |i, j| LaurentPoly::monomial(field, i, j, one.clone());
    let f = &LaurentPoly::one(field) - &m(1, 1);
    let g = &LaurentPoly::one(field) - &m(1, 2);
    let h = &LaurentPoly::one(field) - &m(0, 1);
    (f, g, h)
}

pub fn fgh() -> (LaurentPoly, LaurentPoly, LaurentPoly) {
    fgh_over(FieldSpec::Rationals)
}

/// xi_m from the closed formula: the monomial (-1)^m x^m y^(m+1) plus, for
/// 0 <= j <= i <= m-1, the terms (-1)^j C(m+1, j) x^i y^j.
pub fn xi_over(m: u32, field: FieldSpec) -> LaurentPoly {
    assert!(m >= 1, "xi is defined for m >= 1");
    let mut terms: Vec<((i64, i64), _)> = Vec::new();
    let top = if m % 2 == 0 {
        field.one()
    } else {
        field.coeff_from_int(-1)
    };
    terms.push(((m as i64, m as i64 + 1), top));
    for j in 0..m {
        let mut b = binomial_u(m as u64 + 1, j as u64);
        if j % 2 == 1 {
            b = -b;
        }
        let c = field.coeff_from_bigint(&b);
        for i in j..m {
            terms.push(((i as i64, j as i64), c.clone()));
        }
    }
    LaurentPoly::from_terms(field, terms)
}

pub fn xi(m: u32) -> LaurentPoly {
    xi_over(m, FieldSpec::Rationals)
}

/// xi_m bundled with its two defining invariants, which are re-verified on
/// construction: vanishing order m at (1,1) and Newton polygon equal to the
/// hull of (0,0), (m-1,0), (m,m+1).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct XiFamily {
    m: u32,
    poly: LaurentPoly,
}

impl XiFamily {
    pub fn new(m: u32) -> Self {
        let poly = xi(m);
        assert_eq!(
            poly.multiplicity_at_t0().expect("xi is nonzero"),
            m as u64,
            "vanishing order of xi_{m}"
        );
        assert_eq!(
            poly.newton_polygon().expect("xi is nonzero"),
            expected_hull(m),
            "Newton polygon of xi_{m}"
        );
        XiFamily { m, poly }
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn poly(&self) -> &LaurentPoly {
        &self.poly
    }
}

fn expected_hull(m: u32) -> Vec<LatticePoint> {
    let m = m as i64;
    if m == 1 {
        // (0,0) and (m-1,0) coincide; the hull is a segment.
        vec![LatticePoint::new(0, 0), LatticePoint::new(1, 2)]
    } else {
        vec![
            LatticePoint::new(0, 0),
            LatticePoint::new(m - 1, 0),
            LatticePoint::new(m, m + 1),
        ]
    }
}

/// xi_(m+1) = f xi_m + x^m h^(m+1), checked exactly.
pub fn check_recursion_b(m: u32, field: FieldSpec) -> bool {
    let (f, _, h) = fgh_over(field);
    let xm = LaurentPoly::monomial(field, m as i64, 0, field.one());
    let rhs = &(&f * &xi_over(m, field)) + &(&xm * &h.pow(m + 1));
    xi_over(m + 1, field) == rhs
}

/// xi_(m+1) = x h xi_m + f^(m+1), checked exactly.
pub fn check_recursion_c(m: u32, field: FieldSpec) -> bool {
    let (f, _, h) = fgh_over(field);
    let x = LaurentPoly::variable_x(field);
    let rhs = &(&(&x * &h) * &xi_over(m, field)) + &f.pow(m + 1);
    xi_over(m + 1, field) == rhs
}

/// One named check inside a certificate.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CertCondition {
    pub name: String,
    pub pass: bool,
}

/// Eisenstein-style irreducibility certificate for xi_m, obtained after the
/// shear x^i y^j -> x^(i-j+1) y^j which turns xi_m into a monic-in-y
/// polynomial with x-divisible lower coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EisensteinCertificate {
    pub m: u32,
    pub field: FieldSpec,
    /// The sheared polynomial x * xi_m(x, y/x).
    pub sheared: LaurentPoly,
    /// Coefficient of y^t as a polynomial in x, for t = 0 .. m+1.
    pub rows: Vec<(u32, LaurentPoly)>,
    pub conditions: Vec<CertCondition>,
}

impl EisensteinCertificate {
    pub fn to_json(&self) -> Value {
        json!({
            "m": self.m,
            "field": self.field.to_string(),
            "sheared": self.sheared.to_string(),
            "rows": self.rows.iter()
                .map(|(t, a)| json!([t, a.to_string()]))
                .collect::<Vec<_>>(),
            "conditions": self.conditions.iter()
                .map(|c| json!({"name": c.name, "pass": c.pass}))
                .collect::<Vec<_>>(),
        })
    }
}

/// Certifies irreducibility of xi_m over the given field: writes
/// x * xi_m(x, y/x) = (-1)^m y^(m+1) + a_m(x) y^m + ... + a_0(x) and checks
/// that the leading coefficient is a unit, x divides a_0 through a_m, and
/// x^2 does not divide a_0.
pub fn eisenstein_certificate(
    m: u32,
    field: FieldSpec,
) -> Result<EisensteinCertificate, CurvesError> {
    assert!(m >= 1, "xi is defined for m >= 1");
    let sheared = xi_over(m, field)
        .substitute_unimodular([[1, -1], [0, 1]], (1, 0))
        .expect("shear matrix is unimodular");

    let fail = |condition: &str| CurvesError::CertificateFails {
        condition: condition.to_string(),
    };

    for (pt, _) in sheared.terms() {
        if pt.i < 0 || pt.j < 0 || pt.j > m as i64 + 1 {
            return Err(fail("sheared polynomial has y-degree m+1 and no negative exponents"));
        }
    }

    let mut rows = Vec::new();
    for t in 0..=m + 1 {
        let mut row = LaurentPoly::zero(field);
        for (pt, c) in sheared.terms() {
            if pt.j == t as i64 {
                row = &row + &LaurentPoly::monomial(field, pt.i, 0, c.clone());
            }
        }
        rows.push((t, row));
    }

    let mut conditions = Vec::new();
    let mut check = |name: String, pass: bool| -> Result<(), CurvesError> {
        conditions.push(CertCondition {
            name: name.clone(),
            pass,
        });
        if pass {
            Ok(())
        } else {
            Err(fail(&name))
        }
    };

    let lead = &rows[(m + 1) as usize].1;
    check(
        "leading y-coefficient is a unit".to_string(),
        !lead.is_zero() && lead.terms().all(|(pt, _)| pt.i == 0),
    )?;
    for t in (1..=m).rev() {
        let a_t = &rows[t as usize].1;
        check(
            format!("x divides a_{t}"),
            a_t.terms().all(|(pt, _)| pt.i >= 1),
        )?;
    }
    let a_0 = &rows[0].1;
    check(
        "x divides a_0".to_string(),
        !a_0.is_zero() && a_0.terms().all(|(pt, _)| pt.i >= 1),
    )?;
    check(
        "x^2 does not divide a_0".to_string(),
        a_0.terms().any(|(pt, _)| pt.i == 1),
    )?;

    Ok(EisensteinCertificate {
        m,
        field,
        sheared,
        rows,
        conditions,
    })
}

/// Sufficient irreducibility criterion for a polynomial whose support sits
/// in the lattice parallelogram {w + s u + t v : 0 <= s <= m, 0 <= t <= n}:
/// requires det(u, v) = +-1, x and y both not dividing f, the coefficients
/// at w, w+v, .., w+(n-1)v and at w+nv+u, .., w+nv+mu all zero, and the
/// coefficients at w+u and w+nv nonzero. False means inconclusive.
pub fn parallelogram_irreducible(
    f: &LaurentPoly,
    u: (i64, i64),
    v: (i64, i64),
    w: (i64, i64),
    m: u32,
    n: u32,
) -> bool {
    let det = u.0 * v.1 - u.1 * v.0;
    if det != 1 && det != -1 {
        return false;
    }
    if f.is_zero() {
        return false;
    }
    // Support inside the parallelogram, in (s, t) coordinates.
    for (pt, _) in f.terms() {
        let dx = pt.i - w.0;
        let dy = pt.j - w.1;
        let s = (v.1 * dx - v.0 * dy) * det;
        let t = (-u.1 * dx + u.0 * dy) * det;
        if s < 0 || s > m as i64 || t < 0 || t > n as i64 {
            return false;
        }
    }
    // A polynomial not divisible by x or y.
    let min_i = f.terms().map(|(pt, _)| pt.i).min().expect("nonzero");
    let min_j = f.terms().map(|(pt, _)| pt.j).min().expect("nonzero");
    if min_i != 0 || min_j != 0 {
        return false;
    }
    let at = |s: i64, t: i64| f.coefficient(w.0 + s * u.0 + t * v.0, w.1 + s * u.1 + t * v.1);
    for t in 0..n as i64 {
        if !at(0, t).is_zero() {
            return false;
        }
    }
    for s in 1..=m as i64 {
        if !at(s, n as i64).is_zero() {
            return false;
        }
    }
    !at(1, 0).is_zero() && !at(0, n as i64).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn p(s: &str) -> LaurentPoly {
        LaurentPoly::parse(s, Q).expect("parse")
    }

    #[test]
    fn fixed_polynomials() {
        let (f, g, h) = fgh();
        assert_eq!(f, p("1 - x*y"));
        assert_eq!(g, p("1 - x*y^2"));
        assert_eq!(h, p("1 - y"));
    }

    #[test]
    fn xi_small_values() {
        assert_eq!(xi(1), p("1 - x*y^2"));
        assert_eq!(xi(2).to_string(), "1 + x - 3*x*y + x^2*y^3");
        // Degree-3 member against the first recursion as an oracle.
        let (f, _, h) = fgh();
        let oracle = &(&f * &xi(2)) + &(&p("x^2") * &h.pow(3));
        assert_eq!(xi(3), oracle);
        assert_eq!(xi(3), p("1 + x + x^2 - 4xy - 4x^2y + 6x^2y^2 - x^3y^4"));
    }

    #[test]
    fn family_invariants_small() {
        for m in 1..=6 {
            let fam = XiFamily::new(m);
            assert_eq!(fam.m(), m);
            assert_eq!(fam.poly().coefficient(0, 0), Q.one());
        }
    }

    #[test]
    fn recursions_hold() {
        for m in 1..=5 {
            assert!(check_recursion_b(m, Q), "recursion b at m={m}");
            assert!(check_recursion_c(m, Q), "recursion c at m={m}");
            for p in [2u64, 3, 7] {
                let fp = FieldSpec::prime(p).unwrap();
                assert!(check_recursion_b(m, fp), "recursion b at m={m} mod {p}");
                assert!(check_recursion_c(m, fp), "recursion c at m={m} mod {p}");
            }
        }
    }

    #[test]
    fn recursion_negative_control() {
        // Dropping the x^m h^(m+1) summand breaks the identity.
        let (f, _, _) = fgh();
        assert_ne!(xi(2), &f * &xi(1));
    }

    #[test]
    fn line_y_equals_one() {
        for m in 1..=6 {
            let collapsed = xi(m).substitute_y_one();
            let mut expect = p("x - 1").pow(m);
            if m % 2 == 1 {
                expect = expect.negated();
            }
            assert_eq!(collapsed, expect, "xi_{m} on y=1");
        }
    }

    #[test]
    fn eisenstein_small() {
        let cert = eisenstein_certificate(1, Q).unwrap();
        assert_eq!(cert.sheared, p("x - y^2"));
        assert!(cert.conditions.iter().all(|c| c.pass));

        let cert = eisenstein_certificate(2, Q).unwrap();
        assert!(cert.conditions.iter().all(|c| c.pass));
        // a_0 of the m=2 shear is x + x^2 with a linear term surviving.
        assert_eq!(cert.rows[0].1, p("x + x^2"));

        for prime in [2u64, 3, 5] {
            let fp = FieldSpec::prime(prime).unwrap();
            for m in 1..=5 {
                assert!(
                    eisenstein_certificate(m, fp).is_ok(),
                    "certificate at m={m} over F_{prime}"
                );
            }
        }
    }

    #[test]
    fn parallelogram_criterion() {
        // Inconclusive: corner coefficient at w is nonzero.
        let f = p("1 + x + y + x*y + x^2*y");
        assert!(!parallelogram_irreducible(&f, (1, 0), (0, 1), (0, 0), 2, 1));

        // Inconclusive: a prescribed-zero coefficient is hit.
        let g = p("y + x + x^2");
        assert!(!parallelogram_irreducible(&g, (1, 0), (-1, 1), (0, 0), 2, 1));

        // Divisible by x.
        let h = p("x + x^2*y");
        assert!(!parallelogram_irreducible(&h, (1, 0), (0, 1), (0, 0), 2, 1));

        // Non-unimodular pair.
        assert!(!parallelogram_irreducible(&g, (2, 0), (0, 1), (0, 0), 2, 1));

        // A positive case.
        let k = p("x + y^2 + x*y");
        assert!(parallelogram_irreducible(&k, (1, 0), (0, 1), (0, 0), 1, 2));
    }
}
