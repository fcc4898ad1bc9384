//! Exact checks of the relations among the type A one-parameter subgroups
//! `x_i(t) = I + t E_{i,i+1}`, and of total nonnegativity.

use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};

/// Largest matrix accepted by [`is_totally_nonnegative`].
pub const MAX_MINOR_DIM: usize = 6;

/// Square matrix of exact rationals, row-major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RationalMatrix {
    n: usize,
    entries: Vec<BigRational>,
}

impl RationalMatrix {
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.entries[i * n + i] = BigRational::one();
        }
        m
    }

    pub fn zero(n: usize) -> Self {
        RationalMatrix { n, entries: vec![BigRational::zero(); n * n] }
    }

    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Precondition("matrix rows must have equal length n".into()));
        }
        Ok(RationalMatrix { n, entries: rows.into_iter().flatten().collect() })
    }

    pub fn from_integers(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect())
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Entry at 0-based `(row, col)`.
    pub fn get(&self, row: usize, col: usize) -> &BigRational {
        &self.entries[row * self.n + col]
    }

    fn set(&mut self, row: usize, col: usize, v: BigRational) {
        self.entries[row * self.n + col] = v;
    }

    pub fn mul(&self, other: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.n, other.n, "dimension mismatch");
        let n = self.n;
        let mut out = Self::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * n + j] += a * b;
                    }
                }
            }
        }
        out
    }

    /// Determinant of the submatrix on the given 0-based rows and columns.
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> BigRational {
        let k = rows.len();
        let mut a: Vec<Vec<BigRational>> =
            rows.iter().map(|&r| cols.iter().map(|&c| self.get(r, c).clone()).collect()).collect();
        let mut det = BigRational::one();
        for col in 0..k {
            let Some(p) = (col..k).find(|&r| !a[r][col].is_zero()) else {
                return BigRational::zero();
            };
            if p != col {
                a.swap(p, col);
                det = -det;
            }
            let pivot = a[col][col].clone();
            det *= &pivot;
            for r in col + 1..k {
                if a[r][col].is_zero() {
                    continue;
                }
                let factor = &a[r][col] / &pivot;
                for c in col..k {
                    let delta = &factor * &a[col][c];
                    a[r][c] -= delta;
                }
            }
        }
        det
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            let row = (0..self.n).map(|j| self.get(i, j).to_string()).join(" ");
            writeln!(f, "[{row}]")?;
        }
        Ok(())
    }
}

fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// `x_i(t) = I_n + t E_{i,i+1}`, with `i` 1-based.
pub fn chevalley(n: usize, i: usize, t: &BigRational) -> Result<RationalMatrix> {
    if i == 0 || i >= n {
        return Err(Error::Precondition(format!("chevalley index {i} out of range 1..{n}")));
    }
    let mut m = RationalMatrix::identity(n);
    m.set(i - 1, i, t.clone());
    Ok(m)
}

/// `x_i(t1) x_i(t2) = x_i(t1 + t2)`.
pub fn verify_additive(n: usize, i: usize, t1: &BigRational, t2: &BigRational) -> Result<bool> {
    let lhs = chevalley(n, i, t1)?.mul(&chevalley(n, i, t2)?);
    Ok(lhs == chevalley(n, i, &(t1 + t2))?)
}

/// Parameters `(t2 t3 / (t1 + t3), t1 + t3, t1 t2 / (t1 + t3))` of the
/// right-hand side of the braid relation.
pub fn braid_parameters(
    t1: &BigRational,
    t2: &BigRational,
    t3: &BigRational,
) -> Result<(BigRational, BigRational, BigRational)> {
    let s = t1 + t3;
    if s.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok((t2 * t3 / &s, s.clone(), t1 * t2 / &s))
}

/// `x_i(t1) x_{i+1}(t2) x_i(t3) = x_{i+1}(t2 t3/(t1+t3)) x_i(t1+t3) x_{i+1}(t1 t2/(t1+t3))`.
pub fn verify_braid_identity(
    n: usize,
    i: usize,
    t1: &BigRational,
    t2: &BigRational,
    t3: &BigRational,
) -> Result<bool> {
    if i == 0 || i + 1 >= n {
        return Err(Error::Precondition(format!("braid index {i} needs 1 <= i <= n - 2 with n = {n}")));
    }
    let (a, b, c) = braid_parameters(t1, t2, t3)?;
    let lhs = chevalley(n, i, t1)?.mul(&chevalley(n, i + 1, t2)?).mul(&chevalley(n, i, t3)?);
    let rhs = chevalley(n, i + 1, &a)?.mul(&chevalley(n, i, &b)?).mul(&chevalley(n, i + 1, &c)?);
    Ok(lhs == rhs)
}

/// Every minor nonnegative. Exponential in `n`, so limited to [`MAX_MINOR_DIM`].
pub fn is_totally_nonnegative(m: &RationalMatrix) -> Result<bool> {
    Ok(first_negative_minor(m)?.is_none())
}

/// Rows and columns (0-based) of some negative minor, if one exists.
pub fn first_negative_minor(m: &RationalMatrix) -> Result<Option<(Vec<usize>, Vec<usize>)>> {
    let n = m.dim();
    if n > MAX_MINOR_DIM {
        return Err(Error::Precondition(format!("minor enumeration limited to n <= {MAX_MINOR_DIM}")));
    }
    for k in 1..=n {
        for rows in (0..n).combinations(k) {
            for cols in (0..n).combinations(k) {
                if m.minor(&rows, &cols).is_negative() {
                    return Ok(Some((rows, cols)));
                }
            }
        }
    }
    Ok(None)
}

/// Random rational with numerator in `[-20, 20]` (or `[0, 20]`) and
/// denominator in `[1, 12]`.
pub fn random_rational<R: Rng>(rng: &mut R, nonnegative: bool) -> BigRational {
    let lo = if nonnegative { 0 } else { -20 };
    BigRational::new(BigInt::from(rng.gen_range(lo..=20i64)), BigInt::from(rng.gen_range(1..=12i64)))
}

/// Product of `factors` random `x_i(t)` with `t >= 0`, and the word of indices used.
pub fn random_chevalley_product<R: Rng>(rng: &mut R, n: usize, factors: usize) -> Result<(RationalMatrix, Vec<usize>)> {
    let mut m = RationalMatrix::identity(n);
    let mut word = Vec::with_capacity(factors);
    for _ in 0..factors {
        let i = rng.gen_range(1..n);
        word.push(i);
        m = m.mul(&chevalley(n, i, &random_rational(rng, true))?);
    }
    Ok((m, word))
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct TrialSummary {
    pub additive_trials: usize,
    pub braid_trials: usize,
    pub nonnegative_trials: usize,
    /// Descriptions of failing trials.
    pub failures: Vec<String>,
}

impl TrialSummary {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Seeded batch: `triples` additive and braid trials over random rationals
/// (signed, with `t1 + t3 = 0` resampled), and `products` total
/// nonnegativity trials on `n x n` Chevalley products.
pub fn run_trials(seed: u64, triples: usize, products: usize, n: usize) -> Result<TrialSummary> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut summary = TrialSummary::default();
    for _ in 0..triples {
        let (t1, t2) = (random_rational(&mut rng, false), random_rational(&mut rng, false));
        let t3 = loop {
            let t = random_rational(&mut rng, false);
            if !(&t1 + &t).is_zero() {
                break t;
            }
        };
        summary.additive_trials += 1;
        if !verify_additive(3, 1, &t1, &t2)? {
            summary.failures.push(format!("additive relation failed for t1={t1}, t2={t2}"));
        }
        summary.braid_trials += 1;
        if !verify_braid_identity(3, 1, &t1, &t2, &t3)? {
            summary.failures.push(format!("braid identity failed for ({t1}, {t2}, {t3})"));
        }
    }
    for _ in 0..products {
        let factors = rng.gen_range(1..=8);
        let (m, word) = random_chevalley_product(&mut rng, n, factors)?;
        summary.nonnegative_trials += 1;
        if let Some((rows, cols)) = first_negative_minor(&m)? {
            summary.failures.push(format!("product of x_i over {word:?} has negative minor rows {rows:?} cols {cols:?}"));
        }
    }
    Ok(summary)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn generators() {
        assert_eq!(chevalley(3, 1, &q(0, 1)).unwrap(), RationalMatrix::identity(3));
        assert_eq!(chevalley(2, 1, &q(5, 1)).unwrap(), RationalMatrix::from_integers(&[&[1, 5], &[0, 1]]).unwrap());
        assert!(chevalley(3, 3, &q(1, 1)).is_err());
        assert!(chevalley(3, 0, &q(1, 1)).is_err());
        let prod = chevalley(2, 1, &q(2, 1)).unwrap().mul(&chevalley(2, 1, &q(3, 1)).unwrap());
        assert_eq!(prod, chevalley(2, 1, &q(5, 1)).unwrap());
    }

    #[test]
    fn braid_at_ones() {
        let one = q(1, 1);
        assert_eq!(braid_parameters(&one, &one, &one).unwrap(), (q(1, 2), q(2, 1), q(1, 2)));
        assert!(verify_braid_identity(3, 1, &one, &one, &one).unwrap());
        assert!(verify_braid_identity(4, 2, &q(3, 7), &q(-2, 5), &q(1, 9)).unwrap());
    }

    #[test]
    fn degenerate_braid() {
        let (t1, t3) = (q(2, 3), q(5, 4));
        let zero = q(0, 1);
        assert!(verify_braid_identity(3, 1, &t1, &zero, &t3).unwrap());
        let (a, b, c) = braid_parameters(&t1, &zero, &t3).unwrap();
        assert!(a.is_zero() && c.is_zero());
        assert_eq!(b, &t1 + &t3);
    }

    #[test]
    fn pole_is_an_error() {
        assert!(matches!(verify_braid_identity(3, 1, &q(1, 1), &q(1, 1), &q(-1, 1)), Err(Error::DivisionByZero)));
        assert!(verify_braid_identity(3, 2, &q(1, 1), &q(1, 1), &q(1, 1)).is_err());
    }

    #[test]
    fn nonnegativity() {
        assert!(is_totally_nonnegative(&RationalMatrix::identity(4)).unwrap());
        assert!(!is_totally_nonnegative(&RationalMatrix::from_integers(&[&[1, -1], &[0, 1]]).unwrap()).unwrap());
        // positive entries but a negative 2x2 minor
        let m = RationalMatrix::from_integers(&[&[1, 2], &[3, 1]]).unwrap();
        assert_eq!(first_negative_minor(&m).unwrap(), Some((vec![0, 1], vec![0, 1])));
        assert!(is_totally_nonnegative(&RationalMatrix::identity(7)).is_err());
    }

    #[test]
    fn minors() {
        let m = RationalMatrix::from_integers(&[&[2, 0, 1], &[1, 3, 2], &[1, 1, 2]]).unwrap();
        assert_eq!(m.minor(&[0, 1, 2], &[0, 1, 2]), q(6, 1));
        assert_eq!(m.minor(&[0, 2], &[0, 2]), q(3, 1));
        let swapped = RationalMatrix::from_integers(&[&[0, 1], &[1, 0]]).unwrap();
        assert_eq!(swapped.minor(&[0, 1], &[0, 1]), q(-1, 1));
    }

    #[test]
    fn seeded_trials_pass_and_repeat() {
        let a = run_trials(42, 100, 50, 4).unwrap();
        assert!(a.passed(), "{:?}", a.failures);
        assert_eq!((a.additive_trials, a.braid_trials, a.nonnegative_trials), (100, 100, 50));
        let b = run_trials(42, 100, 50, 4).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }
}
