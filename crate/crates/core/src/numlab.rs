//! Floating-point checks on `CP^1 x CP^1`: the moment map, seeded orbit
//! samplers, sampled moment images, the coadjoint fixed-set comparison and a
//! finite-difference test of the gradient identity for `||s||^2`.
//!
//! `su(2)*` is identified with `R^3` in alpha units; the positive chamber is
//! the positive third axis. Complex conjugation on `SU(2)` fixes `SO(2)`,
//! whose dual direction is the second axis, so real points map into the
//! plane spanned by the first and third axes.

use std::f64::consts::PI;
use std::fmt;
use std::io::Write;
use std::str::FromStr;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::liedata::{sample_borel, sample_real_borel, sample_sl2r, sample_su2, GroupElement2x2, Mat2};
use crate::momentpoly::FlagPoint;
use crate::reps::{highest_weight_vector, SectionSpaceSpec};

/// Default angular tolerance for the chamber filter, in radians.
pub const DEFAULT_EPSILON: f64 = 0.05;
/// Central-difference step for the gradient identity.
pub const FD_STEP: f64 = 1e-5;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct R3Vector(pub [f64; 3]);

impl R3Vector {
    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn dot(&self, o: &Self) -> f64 {
        self.0.iter().zip(&o.0).map(|(a, b)| a * b).sum()
    }

    pub fn scale(&self, s: f64) -> Self {
        Self(self.0.map(|v| v * s))
    }

    pub fn add(&self, o: &Self) -> Self {
        Self([self.0[0] + o.0[0], self.0[1] + o.0[1], self.0[2] + o.0[2]])
    }

    pub fn dist(&self, o: &Self) -> f64 {
        self.add(&o.scale(-1.0)).norm()
    }

    /// Angle to the positive chamber ray; the origin counts as on the ray.
    pub fn chamber_angle(&self) -> f64 {
        let n = self.norm();
        if n < 1e-12 {
            return 0.0;
        }
        self.0[0].hypot(self.0[1]).atan2(self.0[2])
    }
}

/// Flag point with float coordinates, each factor scaled to unit length.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FloatFlagPoint {
    pub p1: [Complex64; 2],
    pub p2: [Complex64; 2],
}

fn normalize(p: [Complex64; 2]) -> Option<[Complex64; 2]> {
    let n = (p[0].norm_sqr() + p[1].norm_sqr()).sqrt();
    (n.is_finite() && n > 0.0).then(|| [p[0] / n, p[1] / n])
}

impl FloatFlagPoint {
    pub fn new(p1: [Complex64; 2], p2: [Complex64; 2]) -> Result<Self> {
        match (normalize(p1), normalize(p2)) {
            (Some(p1), Some(p2)) => Ok(Self { p1, p2 }),
            _ => Err(Error::InvalidPoint("zero or non-finite coordinate pair".into())),
        }
    }

    pub fn act(&self, g: &GroupElement2x2) -> Result<Self> {
        Self::new(g.apply(self.p1), g.apply(self.p2))
    }

    pub fn is_real(&self, tol: f64) -> bool {
        self.p1.iter().chain(&self.p2).all(|z| z.im.abs() <= tol)
    }

    pub fn coordinates(&self) -> [Complex64; 4] {
        [self.p1[0], self.p1[1], self.p2[0], self.p2[1]]
    }
}

impl From<&FlagPoint> for FloatFlagPoint {
    fn from(x: &FlagPoint) -> Self {
        let c = |g: &crate::exactlin::GaussianRational| {
            let (re, im) = g.to_f64();
            Complex64::new(re, im)
        };
        Self::new([c(&x.p1[0]), c(&x.p1[1])], [c(&x.p2[0]), c(&x.p2[1])]).expect("flag points have nonzero factors")
    }
}

/// Unit Hopf vector of `(a : c)`: `(-2 Re(a c*), 2 Im(a c*), |c|^2 - |a|^2)`
/// over `|a|^2 + |c|^2`, so `(0:1)` maps to the chamber direction.
pub fn hopf(p: [Complex64; 2]) -> Result<R3Vector> {
    let [a, c] = p;
    let n = a.norm_sqr() + c.norm_sqr();
    if !(n.is_finite() && n > 0.0) {
        return Err(Error::InvalidPoint("zero or non-finite coordinate pair".into()));
    }
    let ac = a * c.conj();
    Ok(R3Vector([-2.0 * ac.re / n, 2.0 * ac.im / n, (c.norm_sqr() - a.norm_sqr()) / n]))
}

/// `l1 h(p1) + l2 h(p2)`.
pub fn moment_map(p: &FloatFlagPoint, l1: f64, l2: f64) -> Result<R3Vector> {
    Ok(hopf(p.p1)?.scale(l1).add(&hopf(p.p2)?.scale(l2)))
}

/// Rotation of `R^3` induced by `g` in `SU(2)`, in the same identification
/// as [`hopf`]: `h(g p) = rotation(g) h(p)`.
pub fn rotation(g: &GroupElement2x2) -> [[f64; 3]; 3] {
    let i = Complex64::i();
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let sigma = [Mat2::new(zero, one, one, zero), Mat2::new(zero, -i, i, zero), Mat2::new(one, zero, zero, -one)];
    let m = g.matrix();
    let mut out = [[0.0; 3]; 3];
    for (j, sj) in sigma.iter().enumerate() {
        for (k, sk) in sigma.iter().enumerate() {
            out[j][k] = 0.5 * sj.mul(m).mul(sk).mul(&m.dagger()).trace().re;
        }
    }
    out
}

fn rotate(r: &[[f64; 3]; 3], v: &R3Vector) -> R3Vector {
    R3Vector(r.map(|row| row.iter().zip(&v.0).map(|(a, b)| a * b).sum()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Subgroup {
    /// Complex upper triangular, determinant one.
    B,
    /// Real upper triangular with positive diagonal.
    H,
    /// `SU(2)`.
    G,
    /// `SL(2, R)`.
    GPrime,
}

impl Subgroup {
    pub fn tag(&self) -> &'static str {
        match self {
            Self::B => "B",
            Self::H => "H",
            Self::G => "G",
            Self::GPrime => "G'",
        }
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> GroupElement2x2 {
        match self {
            Self::B => sample_borel(rng),
            Self::H => sample_real_borel(rng),
            Self::G => sample_su2(rng),
            Self::GPrime => sample_sl2r(rng),
        }
    }
}

impl fmt::Display for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Subgroup {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "B" | "b" => Ok(Self::B),
            "H" | "h" => Ok(Self::H),
            "G" | "g" => Ok(Self::G),
            "G'" | "g'" | "Gprime" | "gprime" => Ok(Self::GPrime),
            _ => Err(Error::UnknownSubgroup(s.to_string())),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Sample {
    pub point: FloatFlagPoint,
    pub phi: R3Vector,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SampleSet {
    pub seed: u64,
    pub subgroup: Subgroup,
    pub base: FloatFlagPoint,
    pub weights: (f64, f64),
    pub samples: Vec<Sample>,
}

impl SampleSet {
    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// CSV with one row per sample, in sample order.
    pub fn write_csv<W: Write>(&self, out: W) -> std::io::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let io = |e: csv::Error| match e.into_kind() {
            csv::ErrorKind::Io(e) => e,
            other => std::io::Error::other(format!("{other:?}")),
        };
        w.write_record([
            "a1re", "a1im", "c1re", "c1im", "a2re", "a2im", "c2re", "c2im", "phi1", "phi2", "phi3", "norm",
        ])
        .map_err(io)?;
        for s in &self.samples {
            let mut row: Vec<String> = Vec::with_capacity(12);
            for z in s.point.coordinates() {
                row.push(z.re.to_string());
                row.push(z.im.to_string());
            }
            row.extend(s.phi.0.iter().map(f64::to_string));
            row.push(s.phi.norm().to_string());
            w.write_record(&row).map_err(io)?;
        }
        w.flush()
    }
}

/// Random stream for sample `index`, independent of how work is sharded.
fn stream(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// `n` points `g x` with `g` drawn from `subgroup`; sample 0 uses `g = 1`.
pub fn sample_orbit(
    x: &FloatFlagPoint,
    l1: f64,
    l2: f64,
    subgroup: Subgroup,
    n: usize,
    seed: u64,
) -> Result<SampleSet> {
    if n == 0 {
        return Err(Error::ZeroSamples);
    }
    let samples = (0..n as u64)
        .into_par_iter()
        .map(|i| {
            let g = if i == 0 { GroupElement2x2::identity() } else { subgroup.sample(&mut stream(seed, i)) };
            let point = x.act(&g)?;
            Ok(Sample { point, phi: moment_map(&point, l1, l2)? })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SampleSet { seed, subgroup, base: *x, weights: (l1, l2), samples })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum DeltaMode {
    /// `[min |phi|, max |phi|]`; valid when the image is rotation invariant
    /// about the second axis.
    Radial,
    /// Hull of `|phi|` over samples within this angle of the chamber ray.
    AngularFilter(f64),
}

/// Estimate of the moment polytope from samples, as an interval of
/// chamber coordinates; `None` when no sample qualifies.
pub fn sampled_delta(samples: &SampleSet, mode: DeltaMode) -> Result<Option<(f64, f64)>> {
    if samples.is_empty() {
        return Err(Error::EmptySamples);
    }
    let keep = |s: &&Sample| match mode {
        DeltaMode::Radial => true,
        DeltaMode::AngularFilter(eps) => s.phi.chamber_angle() < eps,
    };
    Ok(samples.samples.iter().filter(keep).map(|s| s.phi.norm()).fold(None, |acc, r| match acc {
        None => Some((r, r)),
        Some((lo, hi)) => Some((f64::min(lo, r), f64::max(hi, r))),
    }))
}

/// Which plane of `R^3` is intersected with the sphere.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlaneChoice {
    /// The `-1` eigenspace of conjugation: first and third axes.
    Q,
    /// The fixed line of conjugation, the second axis.
    K,
}

/// Symmetric Hausdorff distance between two finite point clouds.
pub fn hausdorff(a: &[R3Vector], b: &[R3Vector]) -> f64 {
    directed_hausdorff(a, b).max(directed_hausdorff(b, a))
}

fn distinct(points: &[R3Vector]) -> Vec<R3Vector> {
    let mut v = points.to_vec();
    v.sort_by(|p, q| {
        p.0.iter().zip(&q.0).map(|(a, b)| a.total_cmp(b)).find(|o| o.is_ne()).unwrap_or(std::cmp::Ordering::Equal)
    });
    v.dedup();
    v
}

/// `max_{p in from} min_{q in to} |p - q|`, by a sweep over `to` sorted on
/// its most spread-out coordinate.
fn directed_hausdorff(from: &[R3Vector], to: &[R3Vector]) -> f64 {
    if from.is_empty() {
        return 0.0;
    }
    if to.is_empty() {
        return f64::INFINITY;
    }
    let from = distinct(from);
    let mut sorted = distinct(to);
    let spread = |axis: usize| {
        let (lo, hi) = sorted
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), q| (lo.min(q.0[axis]), hi.max(q.0[axis])));
        hi - lo
    };
    let axis = (0..3).max_by(|&a, &b| spread(a).total_cmp(&spread(b))).unwrap();
    sorted.sort_by(|p, q| p.0[axis].total_cmp(&q.0[axis]));
    from.par_iter()
        .map(|p| {
            let x = p.0[axis];
            let start = sorted.partition_point(|q| q.0[axis] < x);
            let mut best = f64::INFINITY;
            for q in &sorted[start..] {
                if q.0[axis] - x >= best {
                    break;
                }
                best = best.min(p.dist(q));
            }
            for q in sorted[..start].iter().rev() {
                if x - q.0[axis] >= best {
                    break;
                }
                best = best.min(p.dist(q));
            }
            best
        })
        .reduce(|| 0.0, f64::max)
}

/// Hausdorff distance between samples of `S_lambda ∩ plane` and samples of
/// the `SO(2)`-orbit of `lambda e3` under the coadjoint action.
pub fn coadjoint_fixed_check_plane(lambda: f64, n: usize, seed: u64, plane: PlaneChoice) -> Result<f64> {
    if n == 0 {
        return Err(Error::ZeroSamples);
    }
    if !(lambda >= 0.0 && lambda.is_finite()) {
        return Err(Error::InvalidPoint(format!("radius {lambda} must be finite and nonnegative")));
    }
    let top = R3Vector([0.0, 0.0, lambda]);
    let (sphere, orbit): (Vec<R3Vector>, Vec<R3Vector>) = (0..n as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = stream(seed, i);
            let mut v = loop {
                let g: [f64; 3] = std::array::from_fn(|_| StandardNormal.sample(&mut rng));
                let v = match plane {
                    PlaneChoice::Q => R3Vector([g[0], 0.0, g[2]]),
                    PlaneChoice::K => R3Vector([0.0, g[1], 0.0]),
                };
                if v.norm() > 1e-9 {
                    break v;
                }
            };
            v = v.scale(lambda / v.norm());
            let t: f64 = rand::Rng::random_range(&mut rng, 0.0..std::f64::consts::TAU);
            let k = GroupElement2x2::new(Mat2::real(t.cos(), -t.sin(), t.sin(), t.cos())).expect("rotation");
            (v, rotate(&rotation(&k), &top))
        })
        .unzip();
    Ok(hausdorff(&sphere, &orbit))
}

pub fn coadjoint_fixed_check(lambda: f64, n: usize, seed: u64) -> Result<f64> {
    coadjoint_fixed_check_plane(lambda, n, seed, PlaneChoice::Q)
}

/// Coefficients `b` with `B = -2 pi i sum_j b_j sigma_j` for `B` in `su(2)`.
fn su2_coordinates(b: &Mat2) -> R3Vector {
    let i = Complex64::i();
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let sigma = [Mat2::new(zero, one, one, zero), Mat2::new(zero, -i, i, zero), Mat2::new(one, zero, zero, -one)];
    R3Vector(sigma.map(|s| (b.mul(&s).trace() / (-4.0 * PI * i)).re))
}

/// Imaginary part of `xi = A + i B` with `A, B` in `su(2)`: `B = (xi + xi^†) / 2i`.
pub fn imaginary_part(xi: &Mat2) -> Mat2 {
    xi.add(&xi.dagger()).scale(Complex64::new(0.0, -0.5))
}

/// `log ||s||^2` at `p` for the section `f` of `L^r`, `r l_i = degree_i`.
fn log_norm_sq(f: &crate::reps::BiHomogPoly, p: &FloatFlagPoint) -> f64 {
    let (d1, d2) = f.bidegree();
    let n1 = p.p1[0].norm_sqr() + p.p1[1].norm_sqr();
    let n2 = p.p2[0].norm_sqr() + p.p2[1].norm_sqr();
    f.eval_c64(&p.coordinates()).norm_sqr().ln() - d1 as f64 * n1.ln() - d2 as f64 * n2.ln()
}

/// Both sides of the gradient identity, divided by `||s||^2`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GradientSides {
    pub lhs: f64,
    pub rhs: f64,
}

impl GradientSides {
    pub fn residual(&self) -> f64 {
        (self.lhs - self.rhs).abs() / self.rhs.abs().max(1.0)
    }
}

/// Derivative of `log ||s||^2` along `exp(t xi) p`, and the model value
/// `4 pi r (kappa phi^B - lambda(B))` with `B` the imaginary part of `xi`.
pub fn gradient_sides(
    kappa: f64,
    p: &FloatFlagPoint,
    xi: &Mat2,
    spec: &SectionSpaceSpec,
    k: i64,
) -> Result<GradientSides> {
    let f = highest_weight_vector(spec, k)?;
    let at = |t: f64| -> Result<f64> {
        let g = GroupElement2x2::new(xi.scale(t.into()).exp_traceless())?;
        Ok(log_norm_sq(&f, &p.act(&g)?))
    };
    let base = at(0.0)?;
    if !base.is_finite() || base < (1e-10f64).ln() {
        return Err(Error::SectionVanishes);
    }
    let lhs = (at(FD_STEP)? - at(-FD_STEP)?) / (2.0 * FD_STEP);
    let (l1, l2, r) = (spec.l1 as f64, spec.l2 as f64, spec.r as f64);
    let lambda = l1 + l2 - 2.0 * k as f64 / r;
    let b = su2_coordinates(&imaginary_part(xi));
    let phi = moment_map(p, l1, l2)?;
    let rhs = 4.0 * PI * r * (kappa * b.dot(&phi) - lambda * b.0[2]);
    Ok(GradientSides { lhs, rhs })
}

/// Normalization constant between the moment map and the curvature term,
/// fixed once at a torus-fixed point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GradientCalibration {
    pub kappa: f64,
}

impl GradientCalibration {
    /// Solves the identity for `kappa` at `((0:1),(0:1))` with the section
    /// `F_{1,0}`, weights `(2, 1)` and `xi = diag(1, -1)`.
    pub fn calibrate() -> Result<Self> {
        let zero = Complex64::new(0.0, 0.0);
        let one = Complex64::new(1.0, 0.0);
        let p = FloatFlagPoint::new([zero, one], [zero, one])?;
        let spec = SectionSpaceSpec::new(1, 2, 1)?;
        let xi = Mat2::real(1.0, 0.0, 0.0, -1.0);
        // rhs is affine in kappa
        let s0 = gradient_sides(0.0, &p, &xi, &spec, 0)?;
        let s1 = gradient_sides(1.0, &p, &xi, &spec, 0)?;
        Ok(Self { kappa: (s0.lhs - s0.rhs) / (s1.rhs - s0.rhs) })
    }
}

/// Relative residual of the gradient identity at `p` along `xi`.
pub fn gradient_identity_residual(
    calibration: Option<&GradientCalibration>,
    p: &FloatFlagPoint,
    xi: &Mat2,
    spec: &SectionSpaceSpec,
    k: i64,
) -> Result<f64> {
    let cal = calibration.ok_or(Error::NormalizationUncalibrated)?;
    Ok(gradient_sides(cal.kappa, p, xi, spec, k)?.residual())
}

/// Random real traceless upper triangular matrix.
pub fn random_real_borel_algebra(rng: &mut ChaCha8Rng) -> Mat2 {
    let h: f64 = StandardNormal.sample(rng);
    let e: f64 = StandardNormal.sample(rng);
    Mat2::real(h, e, 0.0, -h)
}

/// Random point with Gaussian coordinates.
pub fn random_point(rng: &mut ChaCha8Rng) -> FloatFlagPoint {
    let mut z = || Complex64::new(StandardNormal.sample(rng), StandardNormal.sample(rng));
    FloatFlagPoint::new([z(), z()], [z(), z()]).expect("Gaussian coordinates are nonzero")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::momentpoly::OrbitClass;
    use rand::Rng;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn real_point(a1: f64, c1: f64, a2: f64, c2: f64) -> FloatFlagPoint {
        FloatFlagPoint::new([c(a1), c(c1)], [c(a2), c(c2)]).unwrap()
    }

    fn rep(class: OrbitClass) -> FloatFlagPoint {
        (&class.representative()).into()
    }

    #[test]
    fn moment_map_values() {
        let top = moment_map(&real_point(0.0, 1.0, 0.0, 1.0), 2.0, 1.0).unwrap();
        assert!(top.dist(&R3Vector([0.0, 0.0, 3.0])) < 1e-12);
        let bottom = moment_map(&real_point(1.0, 0.0, 1.0, 0.0), 2.0, 1.0).unwrap();
        assert!(bottom.dist(&R3Vector([0.0, 0.0, -3.0])) < 1e-12);
        assert!(FloatFlagPoint::new([c(0.0), c(0.0)], [c(1.0), c(0.0)]).is_err());
    }

    #[test]
    fn hopf_is_unit_and_equivariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let p = random_point(&mut rng);
            let h = hopf(p.p1).unwrap();
            assert!((h.scale(3.0).norm() - 3.0).abs() < 1e-12);
            let g = sample_su2(&mut rng);
            let moved = hopf(g.apply(p.p1)).unwrap();
            assert!(moved.dist(&rotate(&rotation(&g), &h)) < 1e-12);
        }
    }

    #[test]
    fn real_points_have_no_second_component() {
        let x = rep(OrbitClass::Dense);
        for sub in [Subgroup::H, Subgroup::GPrime] {
            let s = sample_orbit(&x, 2.0, 1.0, sub, 1000, 4).unwrap();
            for smp in &s.samples {
                assert!(smp.point.is_real(0.0));
                assert!(smp.phi.0[1].abs() < 1e-9);
            }
        }
    }

    #[test]
    fn first_sample_is_the_base_point() {
        let x = rep(OrbitClass::Dense);
        let s = sample_orbit(&x, 2.0, 1.0, Subgroup::H, 1, 0).unwrap();
        assert_eq!(s.samples[0].phi, moment_map(&x, 2.0, 1.0).unwrap());
        assert_eq!(sample_orbit(&x, 2.0, 1.0, Subgroup::H, 0, 0), Err(Error::ZeroSamples));
        assert_eq!("K".parse::<Subgroup>(), Err(Error::UnknownSubgroup("K".into())));
        assert_eq!("G'".parse::<Subgroup>(), Ok(Subgroup::GPrime));
    }

    #[test]
    fn sampling_is_deterministic_and_shard_independent() {
        let x = rep(OrbitClass::Dense);
        let a = sample_orbit(&x, 2.0, 1.0, Subgroup::B, 500, 9).unwrap();
        let b = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap()
            .install(|| sample_orbit(&x, 2.0, 1.0, Subgroup::B, 500, 9).unwrap());
        assert_eq!(a, b);
        let longer = sample_orbit(&x, 2.0, 1.0, Subgroup::B, 800, 9).unwrap();
        assert_eq!(&longer.samples[..500], &a.samples[..]);
        assert_ne!(sample_orbit(&x, 2.0, 1.0, Subgroup::B, 500, 10).unwrap(), a);
    }

    #[test]
    fn sampled_delta_small_cases() {
        let diag = sample_orbit(&rep(OrbitClass::Diagonal), 2.0, 1.0, Subgroup::H, 2000, 1).unwrap();
        let (lo, hi) = sampled_delta(&diag, DeltaMode::Radial).unwrap().unwrap();
        assert!((lo - 3.0).abs() < 1e-9 && (hi - 3.0).abs() < 1e-9);
        let point = sample_orbit(&rep(OrbitClass::Point), 2.0, 1.0, Subgroup::H, 100, 1).unwrap();
        assert_eq!(sampled_delta(&point, DeltaMode::AngularFilter(DEFAULT_EPSILON)).unwrap(), None);
        let mut empty = point.clone();
        empty.samples.clear();
        assert_eq!(sampled_delta(&empty, DeltaMode::Radial), Err(Error::EmptySamples));
    }

    #[test]
    fn orbit_images_match_exact_dense_interval() {
        let x = FloatFlagPoint::new([Complex64::new(0.3, 0.2), c(1.0)], [c(1.0), Complex64::new(-0.7, 0.5)]).unwrap();
        let sphere = sample_orbit(&x, 2.0, 1.0, Subgroup::G, 2000, 2).unwrap();
        let (lo, hi) = sampled_delta(&sphere, DeltaMode::Radial).unwrap().unwrap();
        assert!(hi - lo < 1e-9);
        let open = sample_orbit(&x, 2.0, 1.0, Subgroup::B, 20_000, 2).unwrap();
        let (lo, hi) = sampled_delta(&open, DeltaMode::AngularFilter(DEFAULT_EPSILON)).unwrap().unwrap();
        assert!(lo > 1.0 - 0.02 && hi < 3.0 + 0.02, "({lo}, {hi})");
        assert!(hi > 2.9, "({lo}, {hi})");
    }

    #[test]
    fn real_dense_orbit_covers_interval() {
        let s = sample_orbit(&rep(OrbitClass::Dense), 2.0, 1.0, Subgroup::H, 100_000, 0).unwrap();
        let (lo, hi) = sampled_delta(&s, DeltaMode::Radial).unwrap().unwrap();
        assert!((lo - 1.0).abs() < 0.02 && (hi - 3.0).abs() < 0.02, "({lo}, {hi})");
        let s = sample_orbit(&rep(OrbitClass::FirstFactor), 3.0, 1.0, Subgroup::H, 100_000, 0).unwrap();
        let (lo, hi) = sampled_delta(&s, DeltaMode::AngularFilter(DEFAULT_EPSILON)).unwrap().unwrap();
        assert!((lo - 2.0).abs() < 0.05 && (hi - 2.0).abs() < 0.05, "({lo}, {hi})");
    }

    #[test]
    fn sweep_matches_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let mut cloud = |n: usize| -> Vec<R3Vector> {
            (0..n).map(|_| R3Vector(std::array::from_fn(|_| rng.random_range(-1.0..1.0)))).collect()
        };
        let (a, b) = (cloud(300), cloud(200));
        let brute = |from: &[R3Vector], to: &[R3Vector]| {
            from.iter().map(|p| to.iter().map(|q| p.dist(q)).fold(f64::INFINITY, f64::min)).fold(0.0, f64::max)
        };
        assert_eq!(hausdorff(&a, &b), brute(&a, &b).max(brute(&b, &a)));
        assert_eq!(hausdorff(&a, &a), 0.0);
    }

    #[test]
    fn coadjoint_examples() {
        assert_eq!(coadjoint_fixed_check(0.0, 100, 1).unwrap(), 0.0);
        assert!(coadjoint_fixed_check(2.0, 2000, 1).unwrap() < 0.1);
        assert!(coadjoint_fixed_check_plane(1.0, 2000, 1, PlaneChoice::K).unwrap() > 0.5);
        assert!(coadjoint_fixed_check(1.0, 0, 1).is_err());
    }

    #[test]
    fn calibration_gives_unit_constant() {
        let cal = GradientCalibration::calibrate().unwrap();
        assert!((cal.kappa - 1.0).abs() < 1e-6, "{}", cal.kappa);
    }

    #[test]
    fn gradient_identity_examples() {
        let cal = GradientCalibration::calibrate().unwrap();
        let spec = SectionSpaceSpec::new(1, 2, 1).unwrap();
        let top = real_point(0.0, 1.0, 0.0, 1.0);
        let zero = Mat2::real(0.0, 0.0, 0.0, 0.0);
        let p = real_point(0.4, 1.0, -2.0, 1.0);
        assert_eq!(gradient_identity_residual(Some(&cal), &p, &zero, &spec, 1).unwrap(), 0.0);
        let h = Mat2::real(1.0, 0.0, 0.0, -1.0);
        assert!(gradient_identity_residual(Some(&cal), &top, &h, &spec, 0).unwrap() < 1e-5);
        assert_eq!(gradient_identity_residual(None, &top, &h, &spec, 0), Err(Error::NormalizationUncalibrated));
        // F_{1,1} vanishes on the diagonal
        assert_eq!(
            gradient_identity_residual(Some(&cal), &real_point(1.0, 1.0, 1.0, 1.0), &h, &spec, 1),
            Err(Error::SectionVanishes)
        );
    }

    #[test]
    fn gradient_identity_at_random_points() {
        let cal = GradientCalibration::calibrate().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let mut worst = 0.0f64;
        for _ in 0..50 {
            let r = rng.random_range(1..=2);
            let spec = SectionSpaceSpec::new(r, 2, 1).unwrap();
            let k = rng.random_range(0..=spec.max_k() as i64);
            let xi = random_real_borel_algebra(&mut rng);
            let p = random_point(&mut rng);
            match gradient_identity_residual(Some(&cal), &p, &xi, &spec, k) {
                Ok(res) => worst = worst.max(res),
                Err(Error::SectionVanishes) => {}
                Err(e) => panic!("{e}"),
            }
        }
        assert!(worst < 1e-4, "{worst}");
    }

    #[test]
    fn csv_layout() {
        let s = sample_orbit(&rep(OrbitClass::Dense), 2.0, 1.0, Subgroup::H, 3, 0).unwrap();
        let mut buf = Vec::new();
        s.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "a1re,a1im,c1re,c1im,a2re,a2im,c2re,c2im,phi1,phi2,phi3,norm");
        assert_eq!(lines.len(), 4);
        assert!(lines[1..].iter().all(|l| l.split(',').count() == 12));
    }
}
