//! Sparse Laurent polynomials in two variables over Q or a prime field,
//! with Newton polygons, monomial substitutions, and the order of
//! vanishing at the point (1, 1) of the torus.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::arith::{
    add_mod, bigint_mod, binomial, format_rational, inv_mod, is_prime_u64, mul_mod,
    parse_rational, sub_mod,
};
use crate::lattice::{convex_hull, LatticePoint};

/// Coefficient domain: the rationals or a prime field of small order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum FieldSpec {
    Rationals,
    PrimeField(u64),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum LaurentError {
    FieldMismatch,
    ZeroPolynomial,
    /// Substitution matrix with determinant other than +-1.
    NonUnimodular,
    NotPrime(u64),
    /// Reduction mod p of a rational with p dividing the denominator.
    DenominatorNotCoprime { prime: u64 },
    Parse(String),
}

impl fmt::Display for LaurentError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LaurentError::FieldMismatch => write!(f, "operands live over different fields"),
            LaurentError::ZeroPolynomial => write!(f, "the zero polynomial has no Newton polygon"),
            LaurentError::NonUnimodular => write!(f, "substitution matrix must have determinant +-1"),
            LaurentError::NotPrime(p) => write!(f, "{p} is not prime"),
            LaurentError::DenominatorNotCoprime { prime } => {
                write!(f, "a denominator is divisible by {prime}")
            }
            LaurentError::Parse(why) => write!(f, "parse error: {why}"),
        }
    }
}

impl std::error::Error for LaurentError {}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self, LaurentError> {
        if is_prime_u64(p) {
            Ok(FieldSpec::PrimeField(p))
        } else {
            Err(LaurentError::NotPrime(p))
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::PrimeField(p) => *p,
        }
    }

    pub fn zero(&self) -> Coeff {
        match self {
            FieldSpec::Rationals => Coeff::Rat(BigRational::zero()),
            FieldSpec::PrimeField(_) => Coeff::Fp(0),
        }
    }

    pub fn one(&self) -> Coeff {
        match self {
            FieldSpec::Rationals => Coeff::Rat(BigRational::one()),
            FieldSpec::PrimeField(_) => Coeff::Fp(1),
        }
    }

    pub fn coeff_from_int(&self, n: i64) -> Coeff {
        match self {
            FieldSpec::Rationals => Coeff::Rat(BigRational::from_integer(BigInt::from(n))),
            FieldSpec::PrimeField(p) => {
                let r = n.rem_euclid(*p as i64);
                Coeff::Fp(r as u64)
            }
        }
    }

    pub fn coeff_from_bigint(&self, n: &BigInt) -> Coeff {
        match self {
            FieldSpec::Rationals => Coeff::Rat(BigRational::from_integer(n.clone())),
            FieldSpec::PrimeField(p) => Coeff::Fp(bigint_mod(n, *p)),
        }
    }

    pub fn coeff_from_rational(&self, r: &BigRational) -> Result<Coeff, LaurentError> {
        match self {
            FieldSpec::Rationals => Ok(Coeff::Rat(r.clone())),
            FieldSpec::PrimeField(p) => {
                let den = bigint_mod(r.denom(), *p);
                if den == 0 {
                    return Err(LaurentError::DenominatorNotCoprime { prime: *p });
                }
                let num = bigint_mod(r.numer(), *p);
                Ok(Coeff::Fp(mul_mod(num, inv_mod(den, *p), *p)))
            }
        }
    }

    fn add(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (self, a, b) {
            (FieldSpec::Rationals, Coeff::Rat(x), Coeff::Rat(y)) => Coeff::Rat(x + y),
            (FieldSpec::PrimeField(p), Coeff::Fp(x), Coeff::Fp(y)) => Coeff::Fp(add_mod(*x, *y, *p)),
            _ => unreachable!("coefficient does not match field"),
        }
    }

    fn mul(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (self, a, b) {
            (FieldSpec::Rationals, Coeff::Rat(x), Coeff::Rat(y)) => Coeff::Rat(x * y),
            (FieldSpec::PrimeField(p), Coeff::Fp(x), Coeff::Fp(y)) => Coeff::Fp(mul_mod(*x, *y, *p)),
            _ => unreachable!("coefficient does not match field"),
        }
    }

    fn neg(&self, a: &Coeff) -> Coeff {
        match (self, a) {
            (FieldSpec::Rationals, Coeff::Rat(x)) => Coeff::Rat(-x),
            (FieldSpec::PrimeField(p), Coeff::Fp(x)) => Coeff::Fp(sub_mod(0, *x, *p)),
            _ => unreachable!("coefficient does not match field"),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::PrimeField(p) => write!(f, "F_{p}"),
        }
    }
}

impl std::str::FromStr for FieldSpec {
    type Err = LaurentError;

    fn from_str(s: &str) -> Result<Self, LaurentError> {
        if s == "Q" {
            return Ok(FieldSpec::Rationals);
        }
        if let Some(p) = s.strip_prefix("F_") {
            let p: u64 = p
                .parse()
                .map_err(|_| LaurentError::Parse(format!("bad field `{s}`")))?;
            return FieldSpec::prime(p);
        }
        Err(LaurentError::Parse(format!(
            "bad field `{s}`: expected Q or F_<prime>"
        )))
    }
}

/// A coefficient, tagged by representation rather than by field; the
/// enclosing polynomial knows which field it belongs to.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Coeff {
    Rat(BigRational),
    Fp(u64),
}

impl Coeff {
    pub fn is_zero(&self) -> bool {
        match self {
            Coeff::Rat(r) => r.is_zero(),
            Coeff::Fp(v) => *v == 0,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Coeff::Rat(r) => Some(r),
            Coeff::Fp(_) => None,
        }
    }

    pub fn as_fp(&self) -> Option<u64> {
        match self {
            Coeff::Fp(v) => Some(*v),
            Coeff::Rat(_) => None,
        }
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coeff::Rat(r) => write!(f, "{}", format_rational(r)),
            Coeff::Fp(v) => write!(f, "{v}"),
        }
    }
}

/// A Laurent polynomial in x, y with coefficients in a fixed field.
/// Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LaurentPoly {
    field: FieldSpec,
    terms: BTreeMap<LatticePoint, Coeff>,
}

impl LaurentPoly {
    pub fn zero(field: FieldSpec) -> Self {
        LaurentPoly {
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(field: FieldSpec) -> Self {
        Self::monomial(field, 0, 0, field.one())
    }

    pub fn monomial(field: FieldSpec, i: i64, j: i64, c: Coeff) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(LatticePoint::new(i, j), c);
        }
        LaurentPoly { field, terms }
    }

    pub fn variable_x(field: FieldSpec) -> Self {
        Self::monomial(field, 1, 0, field.one())
    }

    pub fn variable_y(field: FieldSpec) -> Self {
        Self::monomial(field, 0, 1, field.one())
    }

    pub fn from_terms<I>(field: FieldSpec, terms: I) -> Self
    where
        I: IntoIterator<Item = ((i64, i64), Coeff)>,
    {
        let mut out = LaurentPoly::zero(field);
        for ((i, j), c) in terms {
            out.add_term(LatticePoint::new(i, j), c);
        }
        out
    }

    fn add_term(&mut self, pt: LatticePoint, c: Coeff) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(pt) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = self.field.add(e.get(), &c);
                if sum.is_zero() {
                    e.remove();
                } else {
                    e.insert(sum);
                }
            }
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Term iterator in lexicographic exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&LatticePoint, &Coeff)> {
        self.terms.iter()
    }

    pub fn support(&self) -> BTreeSet<LatticePoint> {
        self.terms.keys().copied().collect()
    }

    pub fn coefficient(&self, i: i64, j: i64) -> Coeff {
        self.terms
            .get(&LatticePoint::new(i, j))
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, LaurentError> {
        if self.field != other.field {
            return Err(LaurentError::FieldMismatch);
        }
        let mut out = self.clone();
        for (pt, c) in other.terms.iter() {
            out.add_term(*pt, c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, LaurentError> {
        if self.field != other.field {
            return Err(LaurentError::FieldMismatch);
        }
        let mut out = self.clone();
        for (pt, c) in other.terms.iter() {
            out.add_term(*pt, self.field.neg(c));
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, LaurentError> {
        if self.field != other.field {
            return Err(LaurentError::FieldMismatch);
        }
        let mut out = LaurentPoly::zero(self.field);
        for (p, a) in self.terms.iter() {
            for (q, b) in other.terms.iter() {
                out.add_term(
                    LatticePoint::new(p.i + q.i, p.j + q.j),
                    self.field.mul(a, b),
                );
            }
        }
        Ok(out)
    }

    pub fn negated(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = self.field.neg(c);
        }
        out
    }

    pub fn scaled(&self, s: &Coeff) -> Self {
        let mut out = LaurentPoly::zero(self.field);
        for (pt, c) in self.terms.iter() {
            out.add_term(*pt, self.field.mul(c, s));
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = LaurentPoly::one(self.field);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.try_mul(&base).expect("same field");
            }
            e >>= 1;
            if e > 0 {
                base = base.try_mul(&base).expect("same field");
            }
        }
        acc
    }

    /// Vertices of the Newton polygon, counterclockwise starting at the
    /// lexicographically smallest. Segments and points degenerate gracefully.
    pub fn newton_polygon(&self) -> Result<Vec<LatticePoint>, LaurentError> {
        if self.terms.is_empty() {
            return Err(LaurentError::ZeroPolynomial);
        }
        Ok(convex_hull(&self.support()))
    }

    /// Order of vanishing at the torus point (1, 1): the least total degree
    /// of a nonzero term after centering coordinates there. Zero means the
    /// polynomial does not vanish at (1, 1).
    pub fn multiplicity_at_t0(&self) -> Result<u64, LaurentError> {
        if self.terms.is_empty() {
            return Err(LaurentError::ZeroPolynomial);
        }
        // Kill negative exponents by a monomial factor; monomials are units
        // at (1, 1) and do not change the vanishing order.
        let i0 = self.terms.keys().map(|p| p.i).min().expect("nonzero");
        let j0 = self.terms.keys().map(|p| p.j).min().expect("nonzero");
        let i1 = self.terms.keys().map(|p| p.i).max().expect("nonzero");
        let j1 = self.terms.keys().map(|p| p.j).max().expect("nonzero");
        let bound = (i1 - i0) + (j1 - j0);
        for d in 0..=bound {
            for a in 0..=d {
                let b = d - a;
                // Coefficient of u^a v^b in f(1+u, 1+v), with f shifted to
                // nonnegative exponents.
                let mut sum = self.field.zero();
                for (pt, c) in self.terms.iter() {
                    let factor =
                        binomial(pt.i - i0, a as u32) * binomial(pt.j - j0, b as u32);
                    let f = self.field.coeff_from_bigint(&factor);
                    sum = self.field.add(&sum, &self.field.mul(&f, c));
                }
                if !sum.is_zero() {
                    return Ok(d as u64);
                }
            }
        }
        unreachable!("a nonzero polynomial has a nonzero Taylor coefficient")
    }

    /// Applies the monomial substitution sending x^i y^j to
    /// x^(a00 i + a01 j + s0) y^(a10 i + a11 j + s1).
    /// The matrix must be unimodular so the map permutes monomials.
    pub fn substitute_unimodular(
        &self,
        a: [[i64; 2]; 2],
        shift: (i64, i64),
    ) -> Result<Self, LaurentError> {
        let det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
        if det != 1 && det != -1 {
            return Err(LaurentError::NonUnimodular);
        }
        let mut out = LaurentPoly::zero(self.field);
        for (pt, c) in self.terms.iter() {
            let ni = a[0][0] * pt.i + a[0][1] * pt.j + shift.0;
            let nj = a[1][0] * pt.i + a[1][1] * pt.j + shift.1;
            out.add_term(LatticePoint::new(ni, nj), c.clone());
        }
        Ok(out)
    }

    /// Sets y = 1, collapsing to a univariate Laurent polynomial in x.
    pub fn substitute_y_one(&self) -> Self {
        let mut out = LaurentPoly::zero(self.field);
        for (pt, c) in self.terms.iter() {
            out.add_term(LatticePoint::new(pt.i, 0), c.clone());
        }
        out
    }

    /// Reduces a polynomial over Q modulo a prime, provided no denominator
    /// is divisible by it.
    pub fn reduce_mod_p(&self, p: u64) -> Result<Self, LaurentError> {
        if self.field != FieldSpec::Rationals {
            return Err(LaurentError::FieldMismatch);
        }
        let field = FieldSpec::prime(p)?;
        let mut out = LaurentPoly::zero(field);
        for (pt, c) in self.terms.iter() {
            let r = c.as_rational().expect("rational field");
            out.add_term(*pt, field.coeff_from_rational(r)?);
        }
        Ok(out)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "field": self.field.to_string(),
            "terms": self.terms.iter()
                .map(|(pt, c)| json!([pt.i, pt.j, c.to_string()]))
                .collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self, LaurentError> {
        let field: FieldSpec = v
            .get("field")
            .and_then(Value::as_str)
            .ok_or_else(|| LaurentError::Parse("missing `field`".to_string()))?
            .parse()?;
        let terms = v
            .get("terms")
            .and_then(Value::as_array)
            .ok_or_else(|| LaurentError::Parse("missing `terms` array".to_string()))?;
        let mut out = LaurentPoly::zero(field);
        for t in terms {
            let triple = t
                .as_array()
                .filter(|a| a.len() == 3)
                .ok_or_else(|| LaurentError::Parse("term must be [i, j, coeff]".to_string()))?;
            let i = triple[0]
                .as_i64()
                .ok_or_else(|| LaurentError::Parse("exponent must be an integer".to_string()))?;
            let j = triple[1]
                .as_i64()
                .ok_or_else(|| LaurentError::Parse("exponent must be an integer".to_string()))?;
            let c = triple[2]
                .as_str()
                .ok_or_else(|| LaurentError::Parse("coefficient must be a string".to_string()))?;
            let r = parse_rational(c).map_err(LaurentError::Parse)?;
            out.add_term(LatticePoint::new(i, j), field.coeff_from_rational(&r)?);
        }
        Ok(out)
    }

    /// Parses expressions like `1 + x - 3*x*y + x^2*y^3`, `2/3x^-1y`, `-y`.
    /// Multiplication signs are optional.
    pub fn parse(s: &str, field: FieldSpec) -> Result<Self, LaurentError> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(LaurentError::Parse("empty expression".to_string()));
        }
        let bytes = compact.as_bytes();
        let mut chunks: Vec<(i32, &str)> = Vec::new();
        let mut start = 0usize;
        let mut sign = 1i32;
        let mut k = 0usize;
        if bytes[0] == b'+' || bytes[0] == b'-' {
            sign = if bytes[0] == b'-' { -1 } else { 1 };
            start = 1;
            k = 1;
        }
        while k < bytes.len() {
            let c = bytes[k];
            if (c == b'+' || c == b'-') && bytes[k - 1] != b'^' {
                chunks.push((sign, &compact[start..k]));
                sign = if c == b'-' { -1 } else { 1 };
                start = k + 1;
            }
            k += 1;
        }
        chunks.push((sign, &compact[start..]));

        let mut out = LaurentPoly::zero(field);
        for (sign, chunk) in chunks {
            let (pt, coeff) = Self::parse_term(chunk, &field)?;
            let signed = if sign < 0 { field.neg(&coeff) } else { coeff };
            out.add_term(pt, signed);
        }
        Ok(out)
    }

    fn parse_term(term: &str, field: &FieldSpec) -> Result<(LatticePoint, Coeff), LaurentError> {
        if term.is_empty() {
            return Err(LaurentError::Parse("empty term".to_string()));
        }
        let bytes = term.as_bytes();
        let mut k = 0usize;
        let scan_digits = |k: &mut usize| -> Option<&str> {
            let s = *k;
            while *k < bytes.len() && bytes[*k].is_ascii_digit() {
                *k += 1;
            }
            if *k > s {
                Some(&term[s..*k])
            } else {
                None
            }
        };
        let coeff = if bytes[0].is_ascii_digit() {
            let num = scan_digits(&mut k).expect("digit checked");
            let mut text = num.to_string();
            if k < bytes.len() && bytes[k] == b'/' {
                k += 1;
                let den = scan_digits(&mut k)
                    .ok_or_else(|| LaurentError::Parse(format!("bad coefficient in `{term}`")))?;
                text.push('/');
                text.push_str(den);
            }
            let r = parse_rational(&text).map_err(LaurentError::Parse)?;
            field.coeff_from_rational(&r)?
        } else {
            field.one()
        };
        let mut i = 0i64;
        let mut j = 0i64;
        while k < bytes.len() {
            if bytes[k] == b'*' {
                k += 1;
                continue;
            }
            let var = bytes[k];
            if var != b'x' && var != b'y' {
                return Err(LaurentError::Parse(format!(
                    "unexpected `{}` in term `{term}`",
                    &term[k..=k]
                )));
            }
            k += 1;
            let mut e = 1i64;
            if k < bytes.len() && bytes[k] == b'^' {
                k += 1;
                let mut neg = false;
                if k < bytes.len() && (bytes[k] == b'-' || bytes[k] == b'+') {
                    neg = bytes[k] == b'-';
                    k += 1;
                }
                let digits = scan_digits(&mut k)
                    .ok_or_else(|| LaurentError::Parse(format!("bad exponent in `{term}`")))?;
                e = digits
                    .parse::<i64>()
                    .map_err(|_| LaurentError::Parse(format!("bad exponent in `{term}`")))?;
                if neg {
                    e = -e;
                }
            }
            if var == b'x' {
                i += e;
            } else {
                j += e;
            }
        }
        Ok((LatticePoint::new(i, j), coeff))
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (pt, c) in self.terms.iter() {
            let (neg, mag) = match c {
                Coeff::Rat(r) if r.is_negative() => (true, Coeff::Rat(-r)),
                other => (false, other.clone()),
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut parts: Vec<String> = Vec::new();
            let is_one = match &mag {
                Coeff::Rat(r) => r.is_one(),
                Coeff::Fp(v) => *v == 1,
            };
            if !is_one || (pt.i == 0 && pt.j == 0) {
                parts.push(mag.to_string());
            }
            if pt.i != 0 {
                parts.push(if pt.i == 1 {
                    "x".to_string()
                } else {
                    format!("x^{}", pt.i)
                });
            }
            if pt.j != 0 {
                parts.push(if pt.j == 1 {
                    "y".to_string()
                } else {
                    format!("y^{}", pt.j)
                });
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.try_add(rhs).expect("field mismatch in +")
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.try_sub(rhs).expect("field mismatch in -")
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.try_mul(rhs).expect("field mismatch in *")
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.negated()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn p(s: &str) -> LaurentPoly {
        LaurentPoly::parse(s, Q).expect("parse")
    }

    #[test]
    fn parse_and_display() {
        let f = p("1 + x - 3*x*y + x^2*y^3");
        assert_eq!(f.to_string(), "1 + x - 3*x*y + x^2*y^3");
        assert_eq!(p("1+x-3xy+x^2y^3"), f);
        assert_eq!(p("x - 3/2"), LaurentPoly::parse("-3/2 + x", Q).unwrap());
        assert_eq!(p("x*x*y"), p("x^2*y"));
        assert_eq!(p("2x^-1y - 2yx^-1").to_string(), "0");
        assert_eq!(p("x^-2").to_string(), "x^-2");
        assert_eq!(p("-x + 1").to_string(), "1 - x");
        assert_eq!(p("-1 - x").to_string(), "-1 - x");
        assert!(LaurentPoly::parse("x + z", Q).is_err());
        assert!(LaurentPoly::parse("x^", Q).is_err());
        assert!(LaurentPoly::parse("", Q).is_err());
    }

    #[test]
    fn parse_over_prime_field() {
        let f5 = FieldSpec::prime(5).unwrap();
        let f = LaurentPoly::parse("7x + 1/2", f5).unwrap();
        assert_eq!(f.coefficient(1, 0), Coeff::Fp(2));
        // 1/2 = 3 mod 5
        assert_eq!(f.coefficient(0, 0), Coeff::Fp(3));
        assert_eq!(FieldSpec::prime(6), Err(LaurentError::NotPrime(6)));
    }

    #[test]
    fn ring_operations() {
        let f = p("1 - x*y");
        let g = p("1 - y");
        assert_eq!(&f * &g, p("1 - y - x*y + x*y^2"));
        assert_eq!(&f + &g, p("2 - y - x*y"));
        assert_eq!(&f - &f, LaurentPoly::zero(Q));
        assert_eq!(f.pow(0), LaurentPoly::one(Q));
        assert_eq!(f.pow(3), p("1 - 3xy + 3x^2y^2 - x^3y^3"));
        let h = LaurentPoly::parse("1 + x", FieldSpec::prime(2).unwrap()).unwrap();
        assert_eq!(
            h.pow(2),
            LaurentPoly::parse("1 + x^2", FieldSpec::prime(2).unwrap()).unwrap()
        );
        assert_eq!(f.try_add(&h), Err(LaurentError::FieldMismatch));
    }

    #[test]
    fn newton_polygons() {
        let f = p("1 + x - 3*x*y + x^2*y^3");
        assert_eq!(
            f.newton_polygon().unwrap(),
            vec![
                LatticePoint::new(0, 0),
                LatticePoint::new(1, 0),
                LatticePoint::new(2, 3)
            ]
        );
        assert_eq!(
            p("x^-1 + x^2").newton_polygon().unwrap(),
            vec![LatticePoint::new(-1, 0), LatticePoint::new(2, 0)]
        );
        assert_eq!(
            p("5").newton_polygon().unwrap(),
            vec![LatticePoint::new(0, 0)]
        );
        assert_eq!(
            LaurentPoly::zero(Q).newton_polygon(),
            Err(LaurentError::ZeroPolynomial)
        );
    }

    #[test]
    fn vanishing_order_at_the_unit() {
        assert_eq!(p("1 - x*y").multiplicity_at_t0().unwrap(), 1);
        assert_eq!(p("2 - x - y").multiplicity_at_t0().unwrap(), 1);
        assert_eq!(p("3").multiplicity_at_t0().unwrap(), 0);
        let f = &p("1 - x").pow(2) * &p("1 - y").pow(3);
        assert_eq!(f.multiplicity_at_t0().unwrap(), 5);
        // Laurent support.
        let g = p("x^-1 - 2 + x");
        assert_eq!(g.multiplicity_at_t0().unwrap(), 2);
        // Characteristic matters: (1-x)^2 = 1 + x^2 over F_2 still has order 2.
        let h = LaurentPoly::parse("1 + x^2", FieldSpec::prime(2).unwrap()).unwrap();
        assert_eq!(h.multiplicity_at_t0().unwrap(), 2);
    }

    #[test]
    fn unimodular_substitution() {
        // x * f(x, y/x) on exponents: (i, j) -> (i - j + 1, j).
        let f = p("1 - x*y^2");
        let g = f.substitute_unimodular([[1, -1], [0, 1]], (1, 0)).unwrap();
        assert_eq!(g, p("x - y^2"));
        assert_eq!(
            f.substitute_unimodular([[2, 0], [0, 1]], (0, 0)),
            Err(LaurentError::NonUnimodular)
        );
        // Unimodular maps preserve the term count.
        let s = p("1 + x + y + x^5*y^3");
        let t = s.substitute_unimodular([[2, 1], [1, 1]], (-1, 4)).unwrap();
        assert_eq!(t.num_terms(), s.num_terms());
    }

    #[test]
    fn collapse_y() {
        let f = p("1 + x - 3*x*y + x^2*y^3");
        assert_eq!(f.substitute_y_one(), p("1 - 2x + x^2"));
    }

    #[test]
    fn reduction_mod_p() {
        let f = p("1/3 + 5x");
        let r = f.reduce_mod_p(7).unwrap();
        assert_eq!(r.coefficient(0, 0), Coeff::Fp(5)); // 3*5 = 15 = 1 mod 7
        assert_eq!(r.coefficient(1, 0), Coeff::Fp(5));
        assert_eq!(
            f.reduce_mod_p(3),
            Err(LaurentError::DenominatorNotCoprime { prime: 3 })
        );
        assert_eq!(f.reduce_mod_p(4), Err(LaurentError::NotPrime(4)));
        assert_eq!(
            r.reduce_mod_p(7),
            Err(LaurentError::FieldMismatch)
        );
    }

    #[test]
    fn json_round_trip() {
        for s in ["0", "1 + x - 3*x*y + x^2*y^3", "x^-5*y^-2 - 7/3"] {
            let f = p(s);
            assert_eq!(LaurentPoly::from_json(&f.to_json()).unwrap(), f);
        }
        let f2 = FieldSpec::prime(2).unwrap();
        let g = LaurentPoly::parse("1 + x^2", f2).unwrap();
        assert_eq!(LaurentPoly::from_json(&g.to_json()).unwrap(), g);
    }

    #[test]
    fn coefficient_lookup() {
        let f = p("1 - 3xy");
        assert_eq!(f.coefficient(1, 1), Coeff::Rat(rat(-3, 1)));
        assert_eq!(f.coefficient(4, 4), Coeff::Rat(rat(0, 1)));
    }
}
