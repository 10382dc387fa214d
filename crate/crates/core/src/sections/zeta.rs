//! Construction of the mod-p sections that certify effectivity of high
//! multiples of the boundary class. For each good prime the section is an
//! explicit polynomial combination of the two adjacent family members,
//! assembled on dense coefficient grids so that large primes stay cheap.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use serde_json::{json, Value};

use super::SectionsError;
use crate::arith::{add_mod, bigint_mod, binomial_u, format_rational, is_prime_u64, rint};
use crate::blowup::DegreeInterval;
use crate::curves::{fgh_over, xi_over};
use crate::laurent::{FieldSpec, LaurentPoly};

/// Polynomial over F_p with nonnegative exponents, stored as a coefficient
/// grid indexed by c[j * nx + i] for the monomial x^i y^j.
#[derive(Clone, Debug)]
struct DensePoly {
    p: u64,
    nx: usize,
    ny: usize,
    c: Vec<u64>,
}

impl DensePoly {
    fn constant(p: u64, value: u64) -> DensePoly {
        DensePoly {
            p,
            nx: 1,
            ny: 1,
            c: vec![value % p],
        }
    }

    fn from_laurent(f: &LaurentPoly) -> DensePoly {
        let FieldSpec::PrimeField(p) = f.field() else {
            panic!("dense grids hold prime-field coefficients");
        };
        let mut nx = 1usize;
        let mut ny = 1usize;
        for (pt, _) in f.terms() {
            assert!(pt.i >= 0 && pt.j >= 0, "dense grids need nonnegative exponents");
            nx = nx.max(pt.i as usize + 1);
            ny = ny.max(pt.j as usize + 1);
        }
        let mut c = vec![0u64; nx * ny];
        for (pt, coeff) in f.terms() {
            c[pt.j as usize * nx + pt.i as usize] = coeff.as_fp().expect("prime field");
        }
        DensePoly { p, nx, ny, c }
    }

    fn to_laurent(&self) -> LaurentPoly {
        let field = FieldSpec::PrimeField(self.p);
        LaurentPoly::from_terms(
            field,
            self.iter_nonzero()
                .map(|(i, j, v)| ((i as i64, j as i64), field.coeff_from_int(v as i64))),
        )
    }

    fn iter_nonzero(&self) -> impl Iterator<Item = (usize, usize, u64)> + '_ {
        self.c.iter().enumerate().filter_map(move |(idx, &v)| {
            if v == 0 {
                None
            } else {
                Some((idx % self.nx, idx / self.nx, v))
            }
        })
    }

    fn nnz(&self) -> usize {
        self.c.iter().filter(|v| **v != 0).count()
    }

    fn constant_term(&self) -> u64 {
        self.c[0]
    }

    /// Drops zero fringes so later passes scan only the live rectangle.
    fn shrink(&mut self) {
        let mut max_i = 0usize;
        let mut max_j = 0usize;
        let mut any = false;
        for (i, j, _) in self.iter_nonzero() {
            max_i = max_i.max(i);
            max_j = max_j.max(j);
            any = true;
        }
        if !any {
            *self = DensePoly::constant(self.p, 0);
            return;
        }
        let (nx, ny) = (max_i + 1, max_j + 1);
        if nx == self.nx && ny == self.ny {
            return;
        }
        let mut c = vec![0u64; nx * ny];
        for j in 0..ny {
            c[j * nx..(j + 1) * nx].copy_from_slice(&self.c[j * self.nx..j * self.nx + nx]);
        }
        *self = DensePoly { p: self.p, nx, ny, c };
    }

    fn frobenius(&self) -> DensePoly {
        let p = self.p;
        let s = p as usize;
        let nx = (self.nx - 1) * s + 1;
        let ny = (self.ny - 1) * s + 1;
        let mut c = vec![0u64; nx * ny];
        for (i, j, v) in self.iter_nonzero() {
            c[j * s * nx + i * s] = v;
        }
        DensePoly { p, nx, ny, c }
    }
}

fn mul(a: &DensePoly, b: &DensePoly) -> DensePoly {
    assert_eq!(a.p, b.p);
    let p = a.p;
    // Iterate the sparser factor on the outside; grids produced by the
    // Frobenius are almost all zeros.
    let (dense, sparse) = if a.nnz() <= b.nnz() { (b, a) } else { (a, b) };
    let nx = a.nx + b.nx - 1;
    let ny = a.ny + b.ny - 1;
    let mut c = vec![0u64; nx * ny];
    for (si, sj, sv) in sparse.iter_nonzero() {
        for dj in 0..dense.ny {
            let src = &dense.c[dj * dense.nx..(dj + 1) * dense.nx];
            let dst = &mut c[(sj + dj) * nx + si..(sj + dj) * nx + si + dense.nx];
            for (d, s) in dst.iter_mut().zip(src) {
                if *s != 0 {
                    *d = (*d + *s * sv) % p;
                }
            }
        }
    }
    DensePoly { p, nx, ny, c }
}

/// a + scale * b.
fn add_scaled(a: &DensePoly, b: &DensePoly, scale: u64) -> DensePoly {
    assert_eq!(a.p, b.p);
    let p = a.p;
    let nx = a.nx.max(b.nx);
    let ny = a.ny.max(b.ny);
    let mut c = vec![0u64; nx * ny];
    for (i, j, v) in a.iter_nonzero() {
        c[j * nx + i] = v;
    }
    for (i, j, v) in b.iter_nonzero() {
        let cell = &mut c[j * nx + i];
        *cell = add_mod(*cell, v * scale % p, p);
    }
    DensePoly { p, nx, ny, c }
}

fn sub(a: &DensePoly, b: &DensePoly) -> DensePoly {
    add_scaled(a, b, b.p - 1)
}

fn pow(base: &DensePoly, e: u64) -> DensePoly {
    let mut acc = DensePoly::constant(base.p, 1);
    for _ in 0..e {
        acc = mul(&acc, base);
    }
    acc
}

/// In-place substitution x -> x + 1 along every row, then y -> y + 1 along
/// every column, by repeated coefficient folding. The order of the terms of
/// the shifted polynomial around the origin is then the order of the
/// original at (1, 1).
fn taylor_shift(g: &mut DensePoly) {
    let p = g.p;
    let (nx, ny) = (g.nx, g.ny);
    for j in 0..ny {
        let row = &mut g.c[j * nx..(j + 1) * nx];
        for start in 0..nx.saturating_sub(1) {
            for t in (start..nx - 1).rev() {
                row[t] = add_mod(row[t], row[t + 1], p);
            }
        }
    }
    for i in 0..nx {
        for start in 0..ny.saturating_sub(1) {
            for t in (start..ny - 1).rev() {
                let up = g.c[(t + 1) * nx + i];
                let cell = &mut g.c[t * nx + i];
                *cell = add_mod(*cell, up, p);
            }
        }
    }
}

fn min_total_degree(g: &DensePoly) -> Option<u64> {
    let mut best: Option<u64> = None;
    for (i, j, _) in g.iter_nonzero() {
        let d = (i + j) as u64;
        if best.map_or(true, |b| d < b) {
            best = Some(d);
        }
    }
    best
}

/// Degree interval of the grid polynomial against the edge slopes, computed
/// with cross-multiplied integers. Both slopes are positive so minimizing
/// i*num - j*den is minimizing the left intercept, and symmetrically on the
/// right.
fn grid_degree_interval(g: &DensePoly, s_left: &BigRational, s_right: &BigRational) -> DegreeInterval {
    let (ln, ld) = (s_left.numer().clone(), s_left.denom().clone());
    let (rn, rd) = (s_right.numer().clone(), s_right.denom().clone());
    let mut min_l: Option<BigInt> = None;
    let mut max_r: Option<BigInt> = None;
    for (i, j, _) in g.iter_nonzero() {
        let (bi, bj) = (BigInt::from(i), BigInt::from(j));
        let vl = &bi * &ln - &bj * &ld;
        let vr = &bi * &rn - &bj * &rd;
        if min_l.as_ref().map_or(true, |m| vl < *m) {
            min_l = Some(vl);
        }
        if max_r.as_ref().map_or(true, |m| vr > *m) {
            max_r = Some(vr);
        }
    }
    DegreeInterval {
        a: BigRational::new(min_l.expect("nonzero grid"), ln),
        b: BigRational::new(max_r.expect("nonzero grid"), rn),
    }
}

/// The constructed section for one prime: the split p = (m+1)k + l_rem, the
/// chosen index j, the polynomial itself, and the three facts that make it
/// a section of the p-fold class: degree interval inside [0, pm], order at
/// least p(m+1) at (1, 1), nonzero constant term.
#[derive(Clone, Debug)]
pub struct ZetaReport {
    pub m: u32,
    pub p: u64,
    pub k: u64,
    pub l_rem: u64,
    pub j: u64,
    pub zeta: LaurentPoly,
    pub degree: DegreeInterval,
    pub multiplicity: u64,
    pub constant_term: u64,
}

impl ZetaReport {
    pub fn to_json(&self) -> Value {
        json!({
            "m": self.m,
            "p": self.p,
            "k": self.k,
            "l_rem": self.l_rem,
            "j": self.j,
            "zeta": self.zeta.to_json(),
            "degree": self.degree.to_json(),
            "multiplicity": self.multiplicity,
            "constant_term": self.constant_term,
        })
    }
}

/// Signed binomial C(k, i) (-1)^i reduced mod p.
fn signed_binomial_mod(k: u64, i: u64, p: u64) -> u64 {
    let b = bigint_mod(&binomial_u(k, i), p);
    if i % 2 == 1 && b != 0 {
        p - b
    } else {
        b
    }
}

/// Builds the section mod p for the family member at (m, alpha, beta):
///
///   zeta = xi_(m+1)^p - sum_{i=j+1}^{k} C(k,i) (-1)^i
///            xi_(m+1)^(k-i) (x h xi_m)^i f^l_rem xi_m^p
///
/// with p = (m+1)k + l_rem and j the smallest index satisfying the two
/// slope inequalities below; both p-th powers collapse through the
/// Frobenius and the inner sum folds by Horner's rule.
pub fn build_zeta_p(
    m: u32,
    p: u64,
    alpha: &BigRational,
    beta: &BigRational,
) -> Result<ZetaReport, SectionsError> {
    let params = crate::certify::Main2Params::new(m, alpha.clone(), beta.clone())
        .map_err(|e| SectionsError::InvalidParameters(e.to_string()))?;
    if !is_prime_u64(p) {
        return Err(SectionsError::InvalidInput(format!("{p} is not prime")));
    }
    if p >= 1 << 31 {
        return Err(SectionsError::InvalidInput(
            "prime too large for dense coefficient grids".to_string(),
        ));
    }

    let md = m as u64;
    let k = p / (md + 1);
    let l_rem = p % (md + 1);

    // Left inequality keeps the shifted supports right of the left edge:
    //   p alpha <= (j+1)(1 - (m+2) alpha) / (m+1).
    // Right inequality keeps them left of the right edge:
    //   p((m+2) beta - 1) / (m+1) <= (k-j)(1 - beta) / (m+1).
    let mi = m as i64;
    let pq = rint(p as i64);
    let left_need = &pq * alpha * rint(mi + 1);
    let left_room = rint(1) - rint(mi + 2) * alpha;
    let right_need = &pq * (rint(mi + 2) * beta - rint(1));
    let right_room = rint(1) - beta;
    let mut chosen = None;
    for j in 0..=k {
        let jq = rint(j as i64);
        let ok_left = left_need <= (&jq + rint(1)) * &left_room;
        let ok_right = right_need <= (rint(k as i64) - &jq) * &right_room;
        if ok_left && ok_right {
            chosen = Some(j);
            break;
        }
    }
    let Some(j) = chosen else {
        return Err(SectionsError::NoValidJ { p, k });
    };

    let field = FieldSpec::PrimeField(p);
    let (f, _, h) = fgh_over(field);
    let xi_m = xi_over(m, field);
    let xi_next = xi_over(m + 1, field);
    let x = LaurentPoly::variable_x(field);

    let a = DensePoly::from_laurent(&xi_next);
    let b = DensePoly::from_laurent(&(&(&x * &h) * &xi_m));
    let frob_next = a.frobenius();
    let frob_m = DensePoly::from_laurent(&xi_m).frobenius();

    // P = sum_{r=0}^{n} d_r A^(n-r) B^r with n = k - j - 1 and
    // d_r = C(k, j+1+r) (-1)^(j+1+r); the subtracted sum is B^(j+1) P f^l xi_m^p.
    let n = k - j - 1;
    let mut a_pows = vec![DensePoly::constant(p, 1)];
    for i in 1..=n as usize {
        a_pows.push(mul(&a_pows[i - 1], &a));
    }
    let mut acc = DensePoly::constant(p, signed_binomial_mod(k, k, p));
    for r in (0..n).rev() {
        acc = mul(&acc, &b);
        let d_r = signed_binomial_mod(k, j + 1 + r, p);
        acc = add_scaled(&acc, &a_pows[(n - r) as usize], d_r);
    }
    let mut tail = mul(&pow(&b, j + 1), &acc);
    if l_rem > 0 {
        tail = mul(&tail, &DensePoly::from_laurent(&f.pow(l_rem as u32)));
    }
    tail = mul(&tail, &frob_m);
    let mut zeta = sub(&frob_next, &tail);
    zeta.shrink();

    if zeta.nnz() == 0 {
        return Err(SectionsError::PostVerificationFailed(
            "section vanished identically".to_string(),
        ));
    }
    let constant_term = zeta.constant_term();
    if constant_term == 0 {
        return Err(SectionsError::PostVerificationFailed(
            "constant term vanished".to_string(),
        ));
    }

    let frame = params.triangle().frame().expect("family triangle frames");
    let degree = grid_degree_interval(&zeta, &frame.s_left, &frame.s_right);
    let top = rint((m as i64) * (p as i64));
    if degree.a.is_negative() || degree.b > top {
        return Err(SectionsError::PostVerificationFailed(format!(
            "degree interval {degree} escapes [0, {}]",
            format_rational(&top)
        )));
    }

    let sparse = zeta.to_laurent();
    let mut shifted = zeta;
    taylor_shift(&mut shifted);
    let multiplicity = min_total_degree(&shifted).expect("nonzero section");
    if multiplicity < p * (md + 1) {
        return Err(SectionsError::PostVerificationFailed(format!(
            "order {multiplicity} at (1, 1) is below {}",
            p * (md + 1)
        )));
    }

    Ok(ZetaReport {
        m,
        p,
        k,
        l_rem,
        j,
        zeta: sparse,
        degree,
        multiplicity,
        constant_term,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn fam(m: u32) -> (BigRational, BigRational) {
        match m {
            1 => (rat(1, 9), rat(5, 14)),
            2 => (rat(1, 16), rat(17, 65)),
            _ => unreachable!(),
        }
    }

    /// The defining alternating sum, assembled term by term on sparse
    /// polynomials. Slow but entirely independent of the grid pipeline.
    fn naive_zeta(m: u32, p: u64, j: u64) -> LaurentPoly {
        let field = FieldSpec::PrimeField(p);
        let md = m as u64;
        let k = p / (md + 1);
        let l_rem = p % (md + 1);
        let (f, _, h) = fgh_over(field);
        let xi_m = xi_over(m, field);
        let xi_next = xi_over(m + 1, field);
        let x = LaurentPoly::variable_x(field);
        let bee = &(&x * &h) * &xi_m;

        let mut sum = LaurentPoly::zero(field);
        for i in (j + 1)..=k {
            let coeff = signed_binomial_mod(k, i, p);
            let term = &xi_next.pow((k - i) as u32) * &bee.pow(i as u32);
            sum = &sum + &term.scaled(&field.coeff_from_int(coeff as i64));
        }
        let tail = &(&sum * &f.pow(l_rem as u32)) * &xi_m.pow(p as u32);
        &xi_next.pow(p as u32) - &tail
    }

    #[test]
    fn smallest_prime_section_is_exact() {
        let (alpha, beta) = fam(1);
        let r = build_zeta_p(1, 2, &alpha, &beta).unwrap();
        assert_eq!((r.k, r.l_rem, r.j), (1, 0, 0));
        let expected: LaurentPoly = LaurentPoly::parse(
            "1 + x + x^2 + x*y + x^2*y^3 + x^3*y^4 + x^3*y^5 + x^4*y^7",
            FieldSpec::PrimeField(2),
        )
        .unwrap();
        assert_eq!(r.zeta, expected);
        assert_eq!(r.constant_term, 1);
        assert_eq!(r.degree.a, rat(0, 1));
        assert_eq!(r.degree.b, rat(2, 1));
        assert_eq!(r.multiplicity, 4);
        assert_eq!(r.zeta.multiplicity_at_t0().unwrap(), 4);
    }

    #[test]
    fn small_primes_below_threshold_have_no_split() {
        let (alpha, beta) = fam(2);
        match build_zeta_p(2, 2, &alpha, &beta) {
            Err(SectionsError::NoValidJ { p: 2, k: 0 }) => {}
            other => panic!("expected NoValidJ, got {other:?}"),
        }
        let r = build_zeta_p(2, 3, &alpha, &beta).unwrap();
        assert_eq!((r.k, r.l_rem, r.j), (1, 0, 0));
        assert!(r.multiplicity >= 9);

        // The window misses isolated primes past the first success too.
        for p in [5, 17] {
            match build_zeta_p(2, p, &alpha, &beta) {
                Err(SectionsError::NoValidJ { .. }) => {}
                other => panic!("expected NoValidJ at {p}, got {other:?}"),
            }
        }
    }

    #[test]
    fn grid_pipeline_matches_sparse_construction() {
        for (m, p) in [(1u32, 2u64), (1, 3), (1, 5), (2, 3), (2, 7)] {
            let (alpha, beta) = fam(m);
            let r = build_zeta_p(m, p, &alpha, &beta).unwrap();
            assert_eq!(r.zeta, naive_zeta(m, p, r.j), "m = {m}, p = {p}");
        }
    }

    #[test]
    fn grid_order_matches_sparse_order() {
        for (m, p) in [(1u32, 3u64), (2, 3)] {
            let (alpha, beta) = fam(m);
            let r = build_zeta_p(m, p, &alpha, &beta).unwrap();
            assert_eq!(r.multiplicity, r.zeta.multiplicity_at_t0().unwrap());
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        let (alpha, beta) = fam(1);
        assert!(matches!(
            build_zeta_p(1, 4, &alpha, &beta),
            Err(SectionsError::InvalidInput(_))
        ));
        assert!(matches!(
            build_zeta_p(1, 5, &rat(1, 2), &beta),
            Err(SectionsError::InvalidParameters(_))
        ));
    }

    #[test]
    fn taylor_shift_matches_binomial_expansion() {
        // (x + y)^2 shifted is ((x+1) + (y+1))^2 over F_7.
        let field = FieldSpec::PrimeField(7);
        let g = LaurentPoly::parse("x^2 + 2*x*y + y^2", field).unwrap();
        let mut d = DensePoly::from_laurent(&g);
        taylor_shift(&mut d);
        let expected =
            LaurentPoly::parse("x^2 + 2*x*y + y^2 + 4*x + 4*y + 4", field).unwrap();
        assert_eq!(d.to_laurent(), expected);
    }
}
