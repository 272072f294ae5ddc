//! Exact rational linear algebra.
//!
//! Everything here works over `BigRational`, so equality tests are exact and
//! subspaces can be compared syntactically once they are put in canonical
//! form. A *canonical basis* of a subspace is the list of nonzero rows of the
//! reduced row echelon form of any spanning set: each vector has a leading 1
//! at its pivot, every other basis vector is zero at that pivot, and vectors
//! are ordered by pivot position.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// `n / d` as an exact rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rvec(values: &[i64]) -> Vec<Rational> {
    values.iter().map(|&v| int(v)).collect()
}

pub fn dot(u: &[Rational], v: &[Rational]) -> Rational {
    u.iter().zip(v).fold(Rational::zero(), |acc, (a, b)| acc + a * b)
}

/// Complex number with rational real and imaginary parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        Self { re, im }
    }

    pub fn real(re: Rational) -> Self {
        Self { re, im: Rational::zero() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::real(int(n))
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(Self::new(&self.re / &n, -(&self.im / &n)))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (rat_to_f64(&self.re), rat_to_f64(&self.im))
    }
}

impl<'a> Add<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn add(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re + &o.re, &self.im + &o.im)
    }
}

impl<'a> Sub<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn sub(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re - &o.re, &self.im - &o.im)
    }
}

impl<'a> Mul<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn mul(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re * &o.re - &self.im * &o.im, &self.re * &o.im + &self.im * &o.re)
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-self.re.clone(), -self.im.clone())
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "{}i", self.im)
        } else if self.im.is_negative() {
            write!(f, "{}-{}i", self.re, -self.im.clone())
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

/// Parses `p` or `p/q` with an optional leading minus sign.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("'{s}' is not a rational number"));
    let int_part = |t: &str| -> Result<BigInt> {
        let t = t.strip_prefix('+').unwrap_or(t);
        if t.is_empty() || t.starts_with(['+', '-']) && t.len() == 1 {
            return Err(bad());
        }
        t.parse::<BigInt>().map_err(|_| bad())
    };
    match s.split_once('/') {
        None => Ok(Rational::from_integer(int_part(s)?)),
        Some((n, d)) => {
            let d = int_part(d)?;
            if d.is_zero() || d.is_negative() {
                return Err(Error::Parse(format!("'{s}' has a zero or negative denominator")));
            }
            Ok(Rational::new(int_part(n)?, d))
        }
    }
}

/// Accepts `re`, `im i`, `re+im i` and `re-im i`, where each part is a
/// rational; the imaginary unit may be written `i`, `*i` or `·i`, and a bare
/// `i` or `-i` stands for `±1`.
impl std::str::FromStr for GaussianRational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let Some(body) = s.strip_suffix('i') else {
            return Ok(Self::real(parse_rational(&s)?));
        };
        let body = body.strip_suffix(['*', '\u{b7}']).unwrap_or(body);
        let split = body.char_indices().skip(1).filter(|&(_, c)| c == '+' || c == '-').map(|(i, _)| i).last();
        let (re, im) = match split {
            Some(i) => (parse_rational(&body[..i])?, &body[i..]),
            None => (Rational::zero(), body),
        };
        let im = match im {
            "" | "+" => Rational::one(),
            "-" => -Rational::one(),
            t => parse_rational(t)?,
        };
        Ok(Self::new(re, im))
    }
}

pub fn rat_to_f64(q: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or(f64::NAN)
}

/// Dense rectangular matrix of rationals, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// Builds a matrix from rows; all rows must share a length.
    pub fn from_rows(rows: &[Vec<Rational>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, found: row.len() });
            }
            data.extend(row.iter().cloned());
        }
        Ok(Self { rows: rows.len(), cols, data })
    }

    /// Matrix whose columns are the given vectors (each of length `dim`).
    pub fn from_columns(dim: usize, columns: &[Vec<Rational>]) -> Result<Self> {
        let mut m = Self::zeros(dim, columns.len());
        for (j, col) in columns.iter().enumerate() {
            if col.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: col.len() });
            }
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        Ok(m)
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let rows: Vec<Vec<Rational>> = rows.iter().map(|r| rvec(r)).collect();
        Self::from_rows(&rows).expect("ragged integer matrix literal")
    }

    pub fn diagonal(entries: &[Rational]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m.set(i, i, e.clone());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<Rational> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|v| v * s).collect() }
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, found: v.len() });
        }
        Ok((0..self.rows).map(|i| dot(&self.data[i * self.cols..(i + 1) * self.cols], v)).collect())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, found: other.rows });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.data[idx] = &out.data[idx] + a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let v = self.get(i, j);
                    if i == j {
                        v.is_one()
                    } else {
                        v.is_zero()
                    }
                })
            })
    }

    pub fn is_integral(&self) -> bool {
        self.data.iter().all(|v| v.is_integer())
    }

    /// Reduced row echelon form and the pivot column of each nonzero row.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(p, r);
            let inv = m.get(r, c).recip();
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let v = m.get(i, j) - &f * m.get(r, j);
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn determinant(&self) -> Result<Rational> {
        if !self.is_square() {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Rational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
                return Ok(Rational::zero());
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let piv = m.get(c, c).clone();
            det = &det * &piv;
            for i in c + 1..n {
                let f = m.get(i, c) / &piv;
                if f.is_zero() {
                    continue;
                }
                for j in c..n {
                    let v = m.get(i, j) - &f * m.get(c, j);
                    m.set(i, j, v);
                }
            }
        }
        Ok(det)
    }

    /// Exact inverse, or `None` when singular.
    pub fn inverse(&self) -> Result<Option<Self>> {
        if !self.is_square() {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, Rational::one());
        }
        let (red, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Ok(None);
        }
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, red.get(i, n + j).clone());
            }
        }
        Ok(Some(inv))
    }
}

impl Add for &RatMatrix {
    type Output = RatMatrix;
    fn add(self, o: &RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "matrix shape mismatch");
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &RatMatrix {
    type Output = RatMatrix;
    fn sub(self, o: &RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "matrix shape mismatch");
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &RatMatrix {
    type Output = RatMatrix;
    fn mul(self, o: &RatMatrix) -> RatMatrix {
        self.try_mul(o).expect("matrix shape mismatch")
    }
}

impl Neg for &RatMatrix {
    type Output = RatMatrix;
    fn neg(self) -> RatMatrix {
        self.scale(&int(-1))
    }
}

impl fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Canonical basis of the span of `vectors` (reduced echelon rows).
pub fn canonical_basis(vectors: &[Vec<Rational>]) -> Result<Vec<Vec<Rational>>> {
    if vectors.is_empty() {
        return Ok(Vec::new());
    }
    let m = RatMatrix::from_rows(vectors)?;
    let (red, pivots) = m.rref();
    Ok((0..pivots.len()).map(|i| red.row(i)).collect())
}

/// Rank of a list of equal-length vectors.
pub fn span_rank(vectors: &[Vec<Rational>]) -> Result<usize> {
    Ok(canonical_basis(vectors)?.len())
}

/// Canonical basis of the null space of `m`.
pub fn kernel(m: &RatMatrix) -> Vec<Vec<Rational>> {
    let (red, pivots) = m.rref();
    let n = m.cols();
    let raw: Vec<Vec<Rational>> = (0..n)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![Rational::zero(); n];
            v[free] = Rational::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -red.get(row, free).clone();
            }
            v
        })
        .collect();
    canonical_basis(&raw).expect("kernel vectors share a length")
}

/// General solution `particular + span(directions)` of `a x = b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSolution {
    pub particular: Vec<Rational>,
    pub directions: Vec<Vec<Rational>>,
}

/// Solves `a x = b` exactly; `Ok(None)` when the system is inconsistent.
pub fn solve(a: &RatMatrix, b: &[Rational]) -> Result<Option<AffineSolution>> {
    if b.len() != a.rows() {
        return Err(Error::DimensionMismatch { expected: a.rows(), found: b.len() });
    }
    let n = a.cols();
    let mut aug = RatMatrix::zeros(a.rows(), n + 1);
    for (i, bi) in b.iter().enumerate() {
        for j in 0..n {
            aug.set(i, j, a.get(i, j).clone());
        }
        aug.set(i, n, bi.clone());
    }
    let (red, pivots) = aug.rref();
    if pivots.last() == Some(&n) {
        return Ok(None);
    }
    let mut particular = vec![Rational::zero(); n];
    for (row, &p) in pivots.iter().enumerate() {
        particular[p] = red.get(row, n).clone();
    }
    Ok(Some(AffineSolution { particular, directions: kernel(a) }))
}

/// A linear map `S` with `S * S = I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearInvolution {
    matrix: RatMatrix,
}

impl LinearInvolution {
    pub fn new(matrix: RatMatrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::NotSquare { rows: matrix.rows(), cols: matrix.cols() });
        }
        if !(&matrix * &matrix).is_identity() {
            return Err(Error::NotInvolution);
        }
        Ok(Self { matrix })
    }

    pub fn identity(dim: usize) -> Self {
        Self { matrix: RatMatrix::identity(dim) }
    }

    pub fn negation(dim: usize) -> Self {
        Self { matrix: -&RatMatrix::identity(dim) }
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn negated(&self) -> Self {
        Self { matrix: -&self.matrix }
    }

    /// Canonical bases of the +1 and -1 eigenspaces, read off the column
    /// spaces of the projectors `(I + S)/2` and `(I - S)/2`.
    pub fn eigensplit(&self) -> (Vec<Vec<Rational>>, Vec<Vec<Rational>>) {
        let id = RatMatrix::identity(self.dim());
        let half = rat(1, 2);
        let plus = (&id + &self.matrix).scale(&half);
        let minus = (&id - &self.matrix).scale(&half);
        let col_span = |p: &RatMatrix| {
            let cols: Vec<Vec<Rational>> = (0..p.cols()).map(|j| p.column(j)).collect();
            canonical_basis(&cols).expect("square projector")
        };
        (col_span(&plus), col_span(&minus))
    }

    pub fn fixed_subspace(&self) -> Vec<Vec<Rational>> {
        self.eigensplit().0
    }
}

pub fn eigensplit(s: &LinearInvolution) -> (Vec<Vec<Rational>>, Vec<Vec<Rational>>) {
    s.eigensplit()
}

pub fn fixed_subspace(s: &LinearInvolution) -> Vec<Vec<Rational>> {
    s.fixed_subspace()
}

/// Constant antisymmetric nondegenerate bilinear form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymplecticForm {
    matrix: RatMatrix,
}

impl SymplecticForm {
    pub fn new(matrix: RatMatrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::NotSquare { rows: matrix.rows(), cols: matrix.cols() });
        }
        if matrix.rows() == 0 || !matrix.rows().is_multiple_of(2) {
            return Err(Error::OddDimension(matrix.rows()));
        }
        if matrix.transpose() != -&matrix {
            return Err(Error::InvalidSymplecticForm("matrix is not antisymmetric"));
        }
        if matrix.determinant()?.is_zero() {
            return Err(Error::InvalidSymplecticForm("matrix is degenerate"));
        }
        Ok(Self { matrix })
    }

    /// Darboux form on basis `(e_1..e_n, f_1..f_n)` with `omega(e_i, f_i) = 1`.
    pub fn standard(dim: usize) -> Result<Self> {
        if dim == 0 || !dim.is_multiple_of(2) {
            return Err(Error::OddDimension(dim));
        }
        let n = dim / 2;
        let mut m = RatMatrix::zeros(dim, dim);
        for i in 0..n {
            m.set(i, n + i, int(1));
            m.set(n + i, i, int(-1));
        }
        Ok(Self { matrix: m })
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn eval(&self, u: &[Rational], v: &[Rational]) -> Result<Rational> {
        Ok(dot(u, &self.matrix.mul_vec(v)?))
    }

    /// `S^T Omega S == -Omega`.
    pub fn is_reversed_by(&self, s: &RatMatrix) -> bool {
        s.rows() == self.dim() && s.is_square() && &(&s.transpose() * &self.matrix) * s == -&self.matrix
    }

    /// `T^T Omega T == Omega`.
    pub fn is_preserved_by(&self, t: &RatMatrix) -> bool {
        t.rows() == self.dim() && t.is_square() && &(&t.transpose() * &self.matrix) * t == self.matrix
    }
}

/// Whether `span(basis)` is Lagrangian: isotropic and of half dimension.
pub fn is_lagrangian(basis: &[Vec<Rational>], omega: &SymplecticForm) -> Result<bool> {
    let dim = omega.dim();
    if let Some(bad) = basis.iter().find(|v| v.len() != dim) {
        return Err(Error::DimensionMismatch { expected: dim, found: bad.len() });
    }
    for (i, u) in basis.iter().enumerate() {
        for v in &basis[i + 1..] {
            if !omega.eval(u, v)?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(span_rank(basis)? * 2 == dim)
}

/// `T^{-1} diag(I, -I) T`: antisymplectic whenever `T` is symplectic.
pub fn antisymplectic_conjugate(t: &RatMatrix, t_inv: &RatMatrix) -> Result<LinearInvolution> {
    if !t.is_square() {
        return Err(Error::NotSquare { rows: t.rows(), cols: t.cols() });
    }
    let dim = t.rows();
    if dim == 0 || !dim.is_multiple_of(2) {
        return Err(Error::OddDimension(dim));
    }
    if !(t * t_inv).is_identity() {
        return Err(Error::InvalidSymplecticForm("conjugator and inverse do not match"));
    }
    let n = dim / 2;
    let signs: Vec<Rational> = (0..dim).map(|i| if i < n { int(1) } else { int(-1) }).collect();
    let d = RatMatrix::diagonal(&signs);
    LinearInvolution::new(&(t_inv * &d) * t)
}

const SHEAR_BOUND: i64 = 9;

/// One elementary symplectic shear for the standard Darboux form, with its
/// inverse. Kinds: `[[I, S], [0, I]]`, `[[I, 0], [S, I]]` for elementary
/// symmetric `S`, and `diag(A, A^{-T})` for an elementary transvection `A`.
fn symplectic_shear(n: usize, rng: &mut ChaCha8Rng) -> (RatMatrix, RatMatrix) {
    let dim = 2 * n;
    let mut p = 0;
    while p == 0 {
        p = rng.random_range(-SHEAR_BOUND..=SHEAR_BOUND);
    }
    let i = rng.random_range(0..n);
    let j = rng.random_range(0..n);
    let mut fwd = RatMatrix::identity(dim);
    let mut back = RatMatrix::identity(dim);
    match rng.random_range(0..3) {
        kind @ (0 | 1) => {
            let (ro, co) = if kind == 0 { (0, n) } else { (n, 0) };
            fwd.set(ro + i, co + j, int(p));
            fwd.set(ro + j, co + i, int(p));
            back.set(ro + i, co + j, int(-p));
            back.set(ro + j, co + i, int(-p));
        }
        _ => {
            let j = if i == j { (i + 1) % n } else { j };
            if i != j {
                fwd.set(i, j, int(p));
                fwd.set(n + j, n + i, int(-p));
                back.set(i, j, int(-p));
                back.set(n + j, n + i, int(p));
            }
        }
    }
    (fwd, back)
}

/// Seeded random antisymplectic involution on `Q^dim` for the standard
/// Darboux form, built as `T^{-1} diag(I, -I) T` with `T` a product of
/// `2 * dim` random elementary symplectic shears.
pub fn random_antisymplectic_involution(dim: usize, seed: u64) -> Result<LinearInvolution> {
    if dim < 2 || !dim.is_multiple_of(2) {
        return Err(Error::OddDimension(dim));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = dim / 2;
    let mut t = RatMatrix::identity(dim);
    let mut t_inv = RatMatrix::identity(dim);
    for _ in 0..2 * dim {
        let (f, b) = symplectic_shear(n, &mut rng);
        t = &f * &t;
        t_inv = &t_inv * &b;
    }
    antisymplectic_conjugate(&t, &t_inv)
}
