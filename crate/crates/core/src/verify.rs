//! Named verification suites. Every check is deterministic given its seed,
//! and reports never contain timings, so rerunning produces identical output.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactlin::{int, is_lagrangian, random_antisymplectic_involution, SymplecticForm};
use crate::liedata::InvolutionSpec;
use crate::momentpoly::{
    enumerate_polytope_catalog, gamma_highest_weight_polytope, moment_polytope, real_moment_polytope_routes,
    OrbitClass, RealFormCase, DEFAULT_R_MAX,
};
use crate::numlab::{
    coadjoint_fixed_check_plane, gradient_identity_residual, random_point, random_real_borel_algebra, sample_orbit,
    sampled_delta, DeltaMode, FloatFlagPoint, GradientCalibration, PlaneChoice, Subgroup, DEFAULT_EPSILON,
};
use crate::polytope::RationalPolytope;
use crate::reps::{
    clebsch_gordan_highest_weights, highest_weight_vector, n_invariant_subspace, section_space_dim, SectionSpaceSpec,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &str, passed: bool, detail: impl Into<String>) -> Self {
        Self { name: name.to_string(), passed, detail: detail.into() }
    }

    fn from_result(name: &str, r: Result<(bool, String)>) -> Self {
        match r {
            Ok((passed, detail)) => Self::new(name, passed, detail),
            Err(e) => Self::new(name, false, format!("error: {e}")),
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{tag} {}: {}", self.name, self.detail)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    /// Exact polytope, representation and catalog checks; named `section5`.
    #[serde(rename = "section5")]
    Exact,
    Lagrangian,
    Coadjoint,
    Gradcheck,
    Sampling,
    All,
}

impl Suite {
    pub const NAMES: [&'static str; 6] = ["section5", "lagrangian", "coadjoint", "gradcheck", "sampling", "all"];
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "section5" | "exact" => Self::Exact,
            "lagrangian" => Self::Lagrangian,
            "coadjoint" => Self::Coadjoint,
            "gradcheck" => Self::Gradcheck,
            "sampling" => Self::Sampling,
            "all" => Self::All,
            _ => return Err(Error::Parse(format!("unknown suite '{s}' (expected one of {})", Self::NAMES.join(", ")))),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub seed: u64,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

pub fn run_suite(suite: Suite, seed: u64) -> SuiteReport {
    let checks = match suite {
        Suite::Exact => vec![
            polytope_table(),
            route_equality(),
            clebsch_gordan_completeness(),
            highest_weight_oracle(seed),
            highest_weight_identities(),
            catalog_finiteness(),
        ],
        Suite::Lagrangian => vec![lagrangian_fixed_sets(seed)],
        Suite::Coadjoint => vec![coadjoint_fixed_sets(seed)],
        Suite::Gradcheck => vec![gradient_identity(seed)],
        Suite::Sampling => vec![numeric_exact_agreement(seed)],
        Suite::All => [Suite::Exact, Suite::Lagrangian, Suite::Coadjoint, Suite::Gradcheck, Suite::Sampling]
            .into_iter()
            .flat_map(|s| run_suite(s, seed).checks)
            .collect(),
    };
    SuiteReport { suite, seed, checks }
}

fn grid() -> impl Iterator<Item = (i64, i64)> {
    (1..=4).flat_map(|a| (1..=4).map(move |b| (a, b)))
}

/// The table of moment polytopes, written out independently of the
/// classifier.
pub fn expected_polytope(class: OrbitClass, l1: i64, l2: i64) -> RationalPolytope {
    let none = RationalPolytope::empty(1);
    let at = |v: i64| RationalPolytope::point(vec![int(v)]);
    match class {
        OrbitClass::Dense => RationalPolytope::interval(int((l1 - l2).abs()), int(l1 + l2)),
        OrbitClass::Diagonal => at(l1 + l2),
        OrbitClass::FirstFactor => {
            if l1 >= l2 {
                at(l1 - l2)
            } else {
                none
            }
        }
        OrbitClass::SecondFactor => {
            if l2 >= l1 {
                at(l2 - l1)
            } else {
                none
            }
        }
        OrbitClass::Point => none,
    }
}

pub fn polytope_table() -> Check {
    let run = || -> Result<(bool, String)> {
        let mut bad = Vec::new();
        for (l1, l2) in grid() {
            for class in OrbitClass::ALL {
                let got = moment_polytope(&class.representative(), l1, l2)?;
                if got != expected_polytope(class, l1, l2) {
                    bad.push(format!("{class} ({l1},{l2}) gave {got}"));
                }
            }
        }
        Ok((bad.is_empty(), if bad.is_empty() { "80 cases exact".into() } else { bad.join("; ") }))
    };
    Check::from_result("polytope-table", run())
}

pub fn route_equality() -> Check {
    let run = || -> Result<(bool, String)> {
        let gamma = InvolutionSpec::negation(1);
        let mut bad = Vec::new();
        for (l1, l2) in grid() {
            for class in OrbitClass::ALL {
                let case = RealFormCase::new(class.representative(), gamma.clone())?;
                let routes = real_moment_polytope_routes(&case, l1, l2, DEFAULT_R_MAX)?;
                if !routes.agree() {
                    bad.push(format!("{class} ({l1},{l2}): {} vs {}", routes.intersection, routes.membership));
                }
            }
        }
        Ok((bad.is_empty(), if bad.is_empty() { "80 cases agree".into() } else { bad.join("; ") }))
    };
    Check::from_result("two-route-equality", run())
}

pub fn clebsch_gordan_completeness() -> Check {
    let run = || -> Result<(bool, String)> {
        let mut n = 0;
        for r in 1..=4 {
            for (l1, l2) in grid() {
                let spec = SectionSpaceSpec::new(r, l1, l2)?;
                let sum: i64 = clebsch_gordan_highest_weights(&spec).iter().map(|w| w + 1).sum();
                let direct = (r * l1 + 1) * (r * l2 + 1);
                if sum != direct || section_space_dim(&spec) != direct as u64 {
                    return Ok((false, format!("r={r} ({l1},{l2}): {sum} != {direct}")));
                }
                n += 1;
            }
        }
        Ok((true, format!("{n} dimension identities")))
    };
    Check::from_result("clebsch-gordan", run())
}

pub fn highest_weight_oracle(seed: u64) -> Check {
    let run = || -> Result<(bool, String)> {
        let mut specs = Vec::new();
        for r in 1..=3 {
            for l1 in 1..=3 {
                for l2 in 1..=3 {
                    specs.push(SectionSpaceSpec::new(r, l1, l2)?);
                }
            }
        }
        let mut lines = 0;
        for spec in &specs {
            for (k, w) in clebsch_gordan_highest_weights(spec).into_iter().enumerate() {
                let basis = n_invariant_subspace(spec, w);
                let f = highest_weight_vector(spec, k as i64)?;
                if basis.len() != 1 || !basis[0].is_proportional_to(&f) {
                    return Ok((false, format!("{spec:?} weight {w}: basis of size {}", basis.len())));
                }
                lines += 1;
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut misses = 0;
        while misses < 20 {
            let spec = specs[rng.random_range(0..specs.len())];
            let top = (spec.r * (spec.l1 + spec.l2)) as i64;
            let w = rng.random_range(-top - 2..=top + 2);
            if clebsch_gordan_highest_weights(&spec).contains(&w) {
                continue;
            }
            if !n_invariant_subspace(&spec, w).is_empty() {
                return Ok((false, format!("{spec:?} weight {w} has invariants")));
            }
            misses += 1;
        }
        Ok((true, format!("{lines} highest weight lines, 20 empty weights")))
    };
    Check::from_result("highest-weight-oracle", run())
}

pub fn highest_weight_identities() -> Check {
    let run = || -> Result<(bool, String)> {
        let mut n = 0;
        for r in 1..=4 {
            for (l1, l2) in grid() {
                let spec = SectionSpaceSpec::new(r, l1, l2)?;
                for k in 0..=spec.max_k() as i64 {
                    let f = highest_weight_vector(&spec, k)?;
                    let w = f.torus_weight()?;
                    if !f.is_n_invariant() || w != r * (l1 + l2) - 2 * k {
                        return Ok((false, format!("{spec:?} k={k}")));
                    }
                    n += 1;
                }
            }
        }
        Ok((true, format!("{n} sections")))
    };
    Check::from_result("highest-weight-identities", run())
}

pub fn catalog_finiteness() -> Check {
    let run = || -> Result<(bool, String)> {
        for gamma in [InvolutionSpec::negation(1), InvolutionSpec::identity(1)] {
            for (l1, l2) in grid() {
                let n = enumerate_polytope_catalog(l1, l2, &gamma)?.len();
                if n > 5 {
                    return Ok((false, format!("{} ({l1},{l2}): {n} polytopes", gamma.label())));
                }
            }
        }
        let got = enumerate_polytope_catalog(2, 1, &InvolutionSpec::negation(1))?;
        let want: BTreeSet<RationalPolytope> = [
            RationalPolytope::interval(int(1), int(3)),
            RationalPolytope::point(vec![int(3)]),
            RationalPolytope::point(vec![int(1)]),
            RationalPolytope::empty(1),
        ]
        .into();
        let listing = got.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ");
        Ok((got == want, format!("(2,1) negation: {listing}")))
    };
    Check::from_result("catalog", run())
}

pub fn lagrangian_fixed_sets(seed: u64) -> Check {
    let run = || -> Result<(bool, String)> {
        for i in 0..100u64 {
            let dim = 2 + 2 * (i % 4) as usize;
            let s = random_antisymplectic_involution(dim, seed.wrapping_add(i))?;
            let omega = SymplecticForm::standard(dim)?;
            if !omega.is_reversed_by(s.matrix()) || !is_lagrangian(&s.fixed_subspace(), &omega)? {
                return Ok((false, format!("dimension {dim}, draw {i}")));
            }
        }
        Ok((true, "100 involutions in dimensions 2-8".into()))
    };
    Check::from_result("lagrangian", run())
}

pub fn coadjoint_fixed_sets(seed: u64) -> Check {
    let run = || -> Result<(bool, String)> {
        let mut parts = Vec::new();
        let mut ok = true;
        for lambda in [1.0, 2.0, 3.0] {
            let d = coadjoint_fixed_check_plane(lambda, 10_000, seed, PlaneChoice::Q)?;
            let wrong = coadjoint_fixed_check_plane(lambda, 10_000, seed, PlaneChoice::K)?;
            ok &= d < 0.05 && wrong > 0.5;
            parts.push(format!("lambda={lambda}: {d:.4} (wrong plane {wrong:.3})"));
        }
        Ok((ok, parts.join("; ")))
    };
    Check::from_result("coadjoint", run())
}

pub fn numeric_exact_agreement(seed: u64) -> Check {
    let run = || -> Result<(bool, String)> {
        let gamma = InvolutionSpec::negation(1);
        let cases = [
            (OrbitClass::Dense, 2, 1, DeltaMode::Radial, 0.02),
            (OrbitClass::Diagonal, 2, 1, DeltaMode::Radial, 0.02),
            (OrbitClass::FirstFactor, 3, 1, DeltaMode::AngularFilter(DEFAULT_EPSILON), 0.05),
        ];
        let mut ok = true;
        let mut parts = Vec::new();
        for (class, l1, l2, mode, tol) in cases {
            let case = RealFormCase::new(class.representative(), gamma.clone())?;
            let exact = gamma_highest_weight_polytope(&case, l1, l2, DEFAULT_R_MAX)?;
            let (lo, hi) = match (exact.vertices().first(), exact.vertices().last()) {
                (Some(a), Some(b)) => (crate::exactlin::rat_to_f64(&a[0]), crate::exactlin::rat_to_f64(&b[0])),
                _ => return Ok((false, format!("{class}: exact polytope is empty"))),
            };
            let x = FloatFlagPoint::from(case.point());
            let samples = sample_orbit(&x, l1 as f64, l2 as f64, Subgroup::H, 100_000, seed)?;
            match sampled_delta(&samples, mode)? {
                Some((a, b)) => {
                    ok &= (a - lo).abs() < tol && (b - hi).abs() < tol;
                    parts.push(format!("{class} ({l1},{l2}): [{a:.4}, {b:.4}] vs {exact}"));
                }
                None => {
                    ok = false;
                    parts.push(format!("{class} ({l1},{l2}): no samples near the chamber"));
                }
            }
        }
        Ok((ok, parts.join("; ")))
    };
    Check::from_result("numeric-exact-agreement", run())
}

pub fn gradient_identity(seed: u64) -> Check {
    let run = || -> Result<(bool, String)> {
        let cal = GradientCalibration::calibrate()?;
        let top = FloatFlagPoint::new([0.0.into(), 1.0.into()], [0.0.into(), 1.0.into()])?;
        let h = crate::liedata::Mat2::real(1.0, 0.0, 0.0, -1.0);
        let at_fixed = gradient_identity_residual(Some(&cal), &top, &h, &SectionSpaceSpec::new(1, 2, 1)?, 0)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut worst = 0.0f64;
        let mut done = 0;
        while done < 100 {
            let spec = SectionSpaceSpec::new(1 + (done % 2) as i64, 2, 1)?;
            let k = rng.random_range(0..=spec.max_k() as i64);
            let xi = random_real_borel_algebra(&mut rng);
            let p = random_point(&mut rng);
            match gradient_identity_residual(Some(&cal), &p, &xi, &spec, k) {
                Ok(r) => worst = worst.max(r),
                Err(Error::SectionVanishes) => continue,
                Err(e) => return Err(e),
            }
            done += 1;
        }
        let ok = at_fixed < 1e-5 && worst < 1e-4;
        Ok((ok, format!("kappa={:.6}, fixed point {at_fixed:.2e}, worst of 100 {worst:.2e}", cal.kappa)))
    };
    Check::from_result("gradient-identity", run())
}
