//! Exact integer matrices: Smith normal form, kernels over a chosen field,
//! and the good-prime test that compares kernels across characteristics.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::laurent::{Coeff, FieldSpec};

/// Dense integer matrix, row major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        let mut m = IntMatrix::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                *m.at_mut(i, j) = BigInt::from(*v);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut BigInt {
        &mut self.data[r * self.cols + c]
    }

    /// Plain integer CSV, one line per row.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for r in 0..self.rows {
            let line: Vec<String> = (0..self.cols).map(|c| self.at(r, c).to_string()).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }

    /// Determinant by fraction-free (Bareiss) elimination. Square only.
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.data.clone();
        let idx = |r: usize, c: usize| r * n + c;
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[idx(k, k)].is_zero() {
                match (k + 1..n).find(|&r| !a[idx(r, k)].is_zero()) {
                    Some(r) => {
                        for c in 0..n {
                            a.swap(idx(k, c), idx(r, c));
                        }
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[idx(i, j)] * &a[idx(k, k)] - &a[idx(i, k)] * &a[idx(k, j)];
                    a[idx(i, j)] = &v / &prev;
                }
                a[idx(i, k)] = BigInt::zero();
            }
            prev = a[idx(k, k)].clone();
        }
        sign * a[idx(n - 1, n - 1)].clone()
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let line: Vec<String> = (0..self.cols).map(|c| self.at(r, c).to_string()).collect();
            writeln!(f, "[{}]", line.join(", "))?;
        }
        Ok(())
    }
}

/// Elementary divisors d1 | d2 | ... (zeros trailing) and the rank.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SnfResult {
    pub divisors: Vec<BigInt>,
    pub rank: usize,
}

impl SnfResult {
    pub fn to_json(&self) -> Value {
        json!({
            "divisors": self.divisors.iter().map(|d| d.to_string()).collect::<Vec<_>>(),
            "rank": self.rank,
        })
    }
}

/// Smith normal form over Z. Pivots are chosen by smallest nonzero absolute
/// value to keep entries small; the divisors are sign-normalized and satisfy
/// the divisibility chain.
pub fn smith_normal_form(m: &IntMatrix) -> SnfResult {
    let rows = m.rows;
    let cols = m.cols;
    let n = rows.min(cols);
    let mut a = m.data.clone();
    let idx = |r: usize, c: usize| r * cols + c;

    let mut divisors = vec![BigInt::zero(); n];
    for t in 0..n {
        'outer: loop {
            let mut pivot: Option<(usize, usize)> = None;
            for r in t..rows {
                for c in t..cols {
                    if a[idx(r, c)].is_zero() {
                        continue;
                    }
                    let better = match pivot {
                        None => true,
                        Some((pr, pc)) => a[idx(r, c)].abs() < a[idx(pr, pc)].abs(),
                    };
                    if better {
                        pivot = Some((r, c));
                    }
                }
            }
            let (pr, pc) = match pivot {
                Some(p) => p,
                None => break 'outer,
            };
            if pr != t {
                for c in 0..cols {
                    a.swap(idx(t, c), idx(pr, c));
                }
            }
            if pc != t {
                for r in 0..rows {
                    a.swap(idx(r, t), idx(r, pc));
                }
            }

            let mut dirty = false;
            for r in t + 1..rows {
                if !a[idx(r, t)].is_zero() {
                    let q = div_nearest(&a[idx(r, t)], &a[idx(t, t)]);
                    if !q.is_zero() {
                        for c in t..cols {
                            let v = &a[idx(r, c)] - &q * &a[idx(t, c)];
                            a[idx(r, c)] = v;
                        }
                    }
                    if !a[idx(r, t)].is_zero() {
                        dirty = true;
                    }
                }
            }
            for c in t + 1..cols {
                if !a[idx(t, c)].is_zero() {
                    let q = div_nearest(&a[idx(t, c)], &a[idx(t, t)]);
                    if !q.is_zero() {
                        for r in t..rows {
                            let v = &a[idx(r, c)] - &q * &a[idx(r, t)];
                            a[idx(r, c)] = v;
                        }
                    }
                    if !a[idx(t, c)].is_zero() {
                        dirty = true;
                    }
                }
            }
            if dirty {
                continue 'outer;
            }

            // Row and column are clear; enforce that the pivot divides the
            // rest of the submatrix, else fold an offending row in and redo.
            for r in t + 1..rows {
                for c in t + 1..cols {
                    if !(&a[idx(r, c)] % &a[idx(t, t)]).is_zero() {
                        for k in t..cols {
                            let v = &a[idx(t, k)] + &a[idx(r, k)];
                            a[idx(t, k)] = v;
                        }
                        continue 'outer;
                    }
                }
            }
            divisors[t] = a[idx(t, t)].abs();
            break;
        }
        if divisors[t].is_zero() {
            break;
        }
    }
    let rank = divisors.iter().filter(|d| !d.is_zero()).count();
    SnfResult { divisors, rank }
}

/// Quotient rounded to nearest, which halves remainders in the SNF loop.
fn div_nearest(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_rem(b);
    let two_r = r.abs() * BigInt::from(2);
    if two_r > b.abs() {
        if (a.is_negative()) == (b.is_negative()) {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

/// True when p divides no nonzero elementary divisor, which makes the kernel
/// dimension over F_p agree with the one over Q.
pub fn good_prime(m: &IntMatrix, p: u64) -> bool {
    let p = BigInt::from(p);
    smith_normal_form(m)
        .divisors
        .iter()
        .all(|d| d.is_zero() || !(d % &p).is_zero())
}

/// Kernel basis over the given field, canonicalized: vectors are ordered by
/// their free column and scaled so the first nonzero coordinate is 1.
pub fn kernel(m: &IntMatrix, field: FieldSpec) -> Vec<Vec<Coeff>> {
    let rows = m.rows;
    let cols = m.cols;
    let mut a: Vec<Vec<Coeff>> = (0..rows)
        .map(|r| (0..cols).map(|c| field.coeff_from_bigint(m.at(r, c))).collect())
        .collect();

    let inv = |c: &Coeff| -> Coeff {
        match c {
            Coeff::Rat(r) => Coeff::Rat(r.recip()),
            Coeff::Fp(v) => Coeff::Fp(crate::arith::inv_mod(*v, field.characteristic())),
        }
    };

    let mut pivot_of_col: Vec<Option<usize>> = vec![None; cols];
    let mut pivot_row = 0usize;
    for col in 0..cols {
        let Some(r) = (pivot_row..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(pivot_row, r);
        let scale = inv(&a[pivot_row][col]);
        for c in col..cols {
            a[pivot_row][c] = field_mul(&field, &a[pivot_row][c], &scale);
        }
        for r in 0..rows {
            if r != pivot_row && !a[r][col].is_zero() {
                let factor = a[r][col].clone();
                for c in col..cols {
                    let sub = field_mul(&field, &a[pivot_row][c], &factor);
                    a[r][c] = field_sub(&field, &a[r][c], &sub);
                }
            }
        }
        pivot_of_col[col] = Some(pivot_row);
        pivot_row += 1;
        if pivot_row == rows {
            break;
        }
    }

    let mut basis = Vec::new();
    for free in 0..cols {
        if pivot_of_col[free].is_some() {
            continue;
        }
        let mut v = vec![field.zero(); cols];
        v[free] = field.one();
        for col in 0..free {
            if let Some(pr) = pivot_of_col[col] {
                v[col] = field_neg(&field, &a[pr][free]);
            }
        }
        // Scale so the first nonzero coordinate is 1.
        let lead = v
            .iter()
            .position(|c| !c.is_zero())
            .expect("kernel vector is nonzero");
        let scale = inv(&v[lead]);
        for c in v.iter_mut() {
            *c = field_mul(&field, c, &scale);
        }
        basis.push(v);
    }
    basis
}

fn field_mul(f: &FieldSpec, a: &Coeff, b: &Coeff) -> Coeff {
    match (a, b) {
        (Coeff::Rat(x), Coeff::Rat(y)) => Coeff::Rat(x * y),
        (Coeff::Fp(x), Coeff::Fp(y)) => Coeff::Fp(crate::arith::mul_mod(*x, *y, f.characteristic())),
        _ => unreachable!("mixed coefficients"),
    }
}

fn field_sub(f: &FieldSpec, a: &Coeff, b: &Coeff) -> Coeff {
    match (a, b) {
        (Coeff::Rat(x), Coeff::Rat(y)) => Coeff::Rat(x - y),
        (Coeff::Fp(x), Coeff::Fp(y)) => Coeff::Fp(crate::arith::sub_mod(*x, *y, f.characteristic())),
        _ => unreachable!("mixed coefficients"),
    }
}

fn field_neg(f: &FieldSpec, a: &Coeff) -> Coeff {
    match a {
        Coeff::Rat(x) => Coeff::Rat(-x),
        Coeff::Fp(x) => Coeff::Fp(crate::arith::sub_mod(0, *x, f.characteristic())),
    }
}
