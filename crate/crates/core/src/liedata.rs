//! Weight lattice, chamber and involution data for `SU(2)` and `SU(2) x SU(2)`,
//! plus 2x2 group elements used to move points of `CP^1 x CP^1` around.
//!
//! Weights are recorded in units of the simple weight `alpha`, one coordinate
//! per `SU(2)` factor, so the lattice is `Z^rank` and the closed positive
//! chamber is the nonnegative orthant.

use num_complex::Complex64;
use num_traits::{Signed, Zero};
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::exactlin::{int, GaussianRational, LinearInvolution, RatMatrix, Rational};
use crate::polytope::LinearSubspace;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightVector {
    pub coords: Vec<Rational>,
}

impl WeightVector {
    pub fn new(coords: Vec<Rational>) -> Self {
        Self { coords }
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }
}

/// Integer weight `n * alpha` (one entry per factor).
pub fn weight_embed(n: &[i64]) -> WeightVector {
    WeightVector::new(n.iter().map(|&v| int(v)).collect())
}

pub fn is_dominant(w: &WeightVector) -> bool {
    w.coords.iter().all(|c| !c.is_negative())
}

/// Restriction from the product torus to the diagonal torus: the dual of
/// `u -> (u, u)` adds the two coordinates.
pub fn diagonal_project(w: &WeightVector) -> Result<WeightVector> {
    if w.rank() != 2 {
        return Err(Error::WrongRank { expected: 2, found: w.rank() });
    }
    Ok(WeightVector::new(vec![&w.coords[0] + &w.coords[1]]))
}

/// Maximal torus data in alpha-coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TorusData {
    pub rank: usize,
}

impl TorusData {
    pub fn diagonal() -> Self {
        Self { rank: 1 }
    }

    pub fn product() -> Self {
        Self { rank: 2 }
    }

    pub fn in_lattice(&self, w: &WeightVector) -> bool {
        w.rank() == self.rank && w.coords.iter().all(|c| c.is_integer())
    }

    pub fn in_chamber(&self, w: &WeightVector) -> bool {
        w.rank() == self.rank && is_dominant(w)
    }

    pub fn is_dominant_weight(&self, w: &WeightVector) -> bool {
        self.in_lattice(w) && self.in_chamber(w)
    }
}

/// The involution `gamma` restricted to `t*`, in the alpha basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvolutionSpec {
    action: LinearInvolution,
    label: String,
}

impl InvolutionSpec {
    pub fn new(matrix: RatMatrix, label: impl Into<String>) -> Result<Self> {
        let action = LinearInvolution::new(matrix)?;
        if !action.matrix().is_integral() {
            return Err(Error::LatticeNotPreserved);
        }
        Ok(Self { action, label: label.into() })
    }

    /// Complex conjugation on `SU(2)`: `t` is purely imaginary, so `gamma`
    /// acts on `t*` by `-1`.
    pub fn negation(rank: usize) -> Self {
        Self { action: LinearInvolution::negation(rank), label: "negation".into() }
    }

    pub fn identity(rank: usize) -> Self {
        Self { action: LinearInvolution::identity(rank), label: "identity".into() }
    }

    /// Factor swap on the product torus.
    pub fn swap() -> Self {
        Self::new(RatMatrix::from_i64(&[&[0, 1], &[1, 0]]), "swap").expect("swap is an involution")
    }

    pub fn action(&self) -> &LinearInvolution {
        &self.action
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn rank(&self) -> usize {
        self.action.dim()
    }

    /// `(k* ∩ t*, q* ∩ t*)`: the +1 and -1 eigenspaces.
    pub fn eigenspaces(&self) -> (LinearSubspace, LinearSubspace) {
        let (plus, minus) = self.action.eigensplit();
        let n = self.rank();
        (
            LinearSubspace::new(n, plus).expect("canonical basis is independent"),
            LinearSubspace::new(n, minus).expect("canonical basis is independent"),
        )
    }
}

pub fn involution_eigenspaces(gamma: &InvolutionSpec) -> (LinearSubspace, LinearSubspace) {
    gamma.eigenspaces()
}

/// Complex 2x2 matrix, used both for group elements and Lie algebra elements.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mat2(pub [[Complex64; 2]; 2]);

impl Mat2 {
    pub fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Self {
        Self([[a, b], [c, d]])
    }

    pub fn real(a: f64, b: f64, c: f64, d: f64) -> Self {
        Self::new(a.into(), b.into(), c.into(), d.into())
    }

    pub fn identity() -> Self {
        Self::real(1.0, 0.0, 0.0, 1.0)
    }

    pub fn det(&self) -> Complex64 {
        self.0[0][0] * self.0[1][1] - self.0[0][1] * self.0[1][0]
    }

    pub fn trace(&self) -> Complex64 {
        self.0[0][0] + self.0[1][1]
    }

    pub fn mul(&self, o: &Self) -> Self {
        let a = &self.0;
        let b = &o.0;
        Self([
            [a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]],
            [a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]],
        ])
    }

    pub fn scale(&self, s: Complex64) -> Self {
        let m = &self.0;
        Self([[m[0][0] * s, m[0][1] * s], [m[1][0] * s, m[1][1] * s]])
    }

    pub fn add(&self, o: &Self) -> Self {
        let (a, b) = (&self.0, &o.0);
        Self([[a[0][0] + b[0][0], a[0][1] + b[0][1]], [a[1][0] + b[1][0], a[1][1] + b[1][1]]])
    }

    pub fn dagger(&self) -> Self {
        let m = &self.0;
        Self([[m[0][0].conj(), m[1][0].conj()], [m[0][1].conj(), m[1][1].conj()]])
    }

    pub fn apply(&self, v: [Complex64; 2]) -> [Complex64; 2] {
        let m = &self.0;
        [m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1]]
    }

    /// Matrix exponential of a traceless matrix:
    /// `exp(X) = cosh(mu) I + sinh(mu)/mu X` with `mu^2 = -det X`.
    pub fn exp_traceless(&self) -> Self {
        let mu = (-self.det()).sqrt();
        let cosh = mu.cosh();
        let sinhc = if mu.norm() < 1e-4 {
            let m2 = mu * mu;
            Complex64::new(1.0, 0.0) + m2 / 6.0 + m2 * m2 / 120.0
        } else {
            mu.sinh() / mu
        };
        Self::identity().scale(cosh).add(&self.scale(sinhc))
    }

    pub fn max_abs_diff(&self, o: &Self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..2 {
            for j in 0..2 {
                worst = worst.max((self.0[i][j] - o.0[i][j]).norm());
            }
        }
        worst
    }
}

pub const DET_TOLERANCE: f64 = 1e-12;

/// Element of `SL(2, C)` with float entries, acting on both factors of
/// `CP^1 x CP^1` at once (the diagonal action).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GroupElement2x2 {
    m: Mat2,
}

impl GroupElement2x2 {
    pub fn new(m: Mat2) -> Result<Self> {
        let det = m.det();
        if (det - Complex64::new(1.0, 0.0)).norm() > DET_TOLERANCE * (1.0 + max_entry(&m).powi(2)) {
            return Err(Error::InvalidPoint(format!("determinant {det} is not 1")));
        }
        Ok(Self { m })
    }

    pub fn identity() -> Self {
        Self { m: Mat2::identity() }
    }

    pub fn matrix(&self) -> &Mat2 {
        &self.m
    }

    pub fn apply(&self, v: [Complex64; 2]) -> [Complex64; 2] {
        self.m.apply(v)
    }

    pub fn compose(&self, o: &Self) -> Self {
        Self { m: self.m.mul(&o.m) }
    }

    /// Upper triangular: member of `B`.
    pub fn is_borel(&self) -> bool {
        self.m.0[1][0] == Complex64::zero()
    }

    /// Strictly upper unipotent: member of `N`.
    pub fn is_unipotent(&self) -> bool {
        let one = Complex64::new(1.0, 0.0);
        self.is_borel() && self.m.0[0][0] == one && self.m.0[1][1] == one
    }

    pub fn is_real(&self) -> bool {
        self.m.0.iter().flatten().all(|z| z.im == 0.0)
    }

    /// Real upper triangular with positive diagonal: member of `H`.
    pub fn is_real_borel(&self) -> bool {
        self.is_borel() && self.is_real() && self.m.0[0][0].re > 0.0 && self.m.0[1][1].re > 0.0
    }

    pub fn is_special_unitary(&self, tol: f64) -> bool {
        self.m.mul(&self.m.dagger()).max_abs_diff(&Mat2::identity()) < tol
    }
}

fn max_entry(m: &Mat2) -> f64 {
    m.0.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max)
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn normal<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    StandardNormal.sample(rng)
}

/// Random element of `B`: `[[a, b], [0, 1/a]]` with log-uniform `|a|`.
pub fn sample_borel<R: Rng + ?Sized>(rng: &mut R) -> GroupElement2x2 {
    let a = Complex64::from_polar(rng.random_range(-3.0..3.0f64).exp(), rng.random_range(0.0..std::f64::consts::TAU));
    let b = c(heavy(rng), heavy(rng));
    GroupElement2x2 { m: Mat2::new(a, b, Complex64::zero(), a.inv()) }
}

/// Random element of `H`, the identity component of the real Borel subgroup.
pub fn sample_real_borel<R: Rng + ?Sized>(rng: &mut R) -> GroupElement2x2 {
    let a = rng.random_range(-3.0..3.0f64).exp();
    let b = heavy(rng);
    GroupElement2x2 { m: Mat2::real(a, b, 0.0, 1.0 / a) }
}

/// Haar-random element of `SU(2)` from a uniform unit quaternion.
pub fn sample_su2<R: Rng + ?Sized>(rng: &mut R) -> GroupElement2x2 {
    let mut q = [normal(rng), normal(rng), normal(rng), normal(rng)];
    let n = q.iter().map(|v| v * v).sum::<f64>().sqrt();
    q.iter_mut().for_each(|v| *v /= n);
    let a = c(q[0], q[1]);
    let b = c(q[2], q[3]);
    GroupElement2x2 { m: Mat2::new(a, -b.conj(), b, a.conj()) }
}

/// Random element of `SL(2, R)` as rotation * stretch * rotation.
pub fn sample_sl2r<R: Rng + ?Sized>(rng: &mut R) -> GroupElement2x2 {
    let rot = |t: f64| Mat2::real(t.cos(), -t.sin(), t.sin(), t.cos());
    let s = rng.random_range(-4.0..4.0f64).exp();
    let k1 = rot(rng.random_range(0.0..std::f64::consts::TAU));
    let k2 = rot(rng.random_range(0.0..std::f64::consts::TAU));
    GroupElement2x2 { m: k1.mul(&Mat2::real(s, 0.0, 0.0, 1.0 / s)).mul(&k2) }
}

/// Spread-out real number: `sinh` of a uniform variable.
fn heavy<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.random_range(-5.0..5.0f64).sinh()
}

/// Element of `SL(2, Q(i))`, acting exactly on flag points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactGroupElement {
    pub m: [[GaussianRational; 2]; 2],
}

impl ExactGroupElement {
    pub fn new(m: [[GaussianRational; 2]; 2]) -> Result<Self> {
        let det = &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0]);
        if det != GaussianRational::one() {
            return Err(Error::InvalidPoint(format!("determinant {det} is not 1")));
        }
        Ok(Self { m })
    }

    /// `[[a, b], [0, 1/a]]`; `None` when `a == 0`.
    pub fn borel(a: GaussianRational, b: GaussianRational) -> Option<Self> {
        let d = a.inv()?;
        Some(Self { m: [[a, b], [GaussianRational::zero(), d]] })
    }

    pub fn apply(&self, v: &[GaussianRational; 2]) -> [GaussianRational; 2] {
        let m = &self.m;
        [&(&m[0][0] * &v[0]) + &(&m[0][1] * &v[1]), &(&m[1][0] * &v[0]) + &(&m[1][1] * &v[1])]
    }

    pub fn is_borel(&self) -> bool {
        self.m[1][0].is_zero()
    }
}
