//! Exact moment polytopes of Borel orbit closures in `CP^1 x CP^1` under the
//! diagonal `SU(2)`.
//!
//! A point `x = ((a1:c1), (a2:c2))` falls into one of five orbit classes,
//! decided by whether `c1`, `c2` and `a1 c2 - a2 c1` vanish. The N-invariant
//! section of weight `r(l1 + l2) - 2k` is
//! `F_{r,k} = y1^(r l1 - k) y2^(r l2 - k) (x1 y2 - x2 y1)^k`, so it vanishes
//! on the orbit closure of `x` exactly when it vanishes at `x`, and
//!
//! ```text
//! F_{r,k}(x) != 0  <=>  (k = r l1 or c1 != 0) and (k = r l2 or c2 != 0)
//!                       and (k = 0 or a1 c2 - a2 c1 != 0)
//! ```
//!
//! Reading off the achievable `k` per class gives the closed-form polytopes:
//!
//! | class        | condition                  | polytope                    |
//! |--------------|----------------------------|-----------------------------|
//! | Dense        | c1, c2, det all nonzero    | `[abs(l1 - l2), l1 + l2]`   |
//! | Diagonal     | c1, c2 nonzero, det zero   | `{l1 + l2}`                 |
//! | FirstFactor  | c1 nonzero, c2 zero        | `{l1 - l2}` if `l1 >= l2`   |
//! | SecondFactor | c1 zero, c2 nonzero        | `{l2 - l1}` if `l2 >= l1`   |
//! | Point        | c1, c2 both zero           | empty                       |
//!
//! For FirstFactor, `c2 = 0` forces `k = r l2`, and then `k <= r l1` needs
//! `l1 >= l2`; since `c1 != 0` and `a2 != 0` the determinant is nonzero. At
//! a Point both `k = r l1` and `k = r l2` are forced along with `k = 0`,
//! which is impossible.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactlin::{int, GaussianRational, Rational};
use crate::liedata::InvolutionSpec;
use crate::polytope::RationalPolytope;
use crate::reps::{hwv_values, SectionSpaceSpec};

/// Default bound on the line-bundle power searched by the membership route.
pub const DEFAULT_R_MAX: u32 = 6;

/// Point of `CP^1 x CP^1` in homogeneous Gaussian-rational coordinates.
#[derive(Clone, Debug)]
pub struct FlagPoint {
    pub p1: [GaussianRational; 2],
    pub p2: [GaussianRational; 2],
}

impl FlagPoint {
    pub fn new(p1: [GaussianRational; 2], p2: [GaussianRational; 2]) -> Result<Self> {
        for (i, p) in [&p1, &p2].into_iter().enumerate() {
            if p[0].is_zero() && p[1].is_zero() {
                return Err(Error::InvalidPoint(format!("factor {} has coordinates (0, 0)", i + 1)));
            }
        }
        Ok(Self { p1, p2 })
    }

    pub fn from_ints(a1: i64, c1: i64, a2: i64, c2: i64) -> Result<Self> {
        let g = GaussianRational::from_int;
        Self::new([g(a1), g(c1)], [g(a2), g(c2)])
    }

    /// `(x1, y1, x2, y2) = (a1, c1, a2, c2)`.
    pub fn coordinates(&self) -> [GaussianRational; 4] {
        [self.p1[0].clone(), self.p1[1].clone(), self.p2[0].clone(), self.p2[1].clone()]
    }

    pub fn is_real(&self) -> bool {
        self.p1.iter().chain(&self.p2).all(GaussianRational::is_real)
    }

    /// `a1 c2 - a2 c1`.
    pub fn cross(&self) -> GaussianRational {
        &(&self.p1[0] * &self.p2[1]) - &(&self.p2[0] * &self.p1[1])
    }
}

impl PartialEq for FlagPoint {
    fn eq(&self, o: &Self) -> bool {
        let same = |p: &[GaussianRational; 2], q: &[GaussianRational; 2]| (&p[0] * &q[1]) == (&p[1] * &q[0]);
        same(&self.p1, &o.p1) && same(&self.p2, &o.p2)
    }
}

impl Eq for FlagPoint {}

impl fmt::Display for FlagPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{};{},{}", self.p1[0], self.p1[1], self.p2[0], self.p2[1])
    }
}

/// `a1,c1;a2,c2` with each coordinate a Gaussian rational literal.
impl FromStr for FlagPoint {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let factors: Vec<&str> = s.split(';').collect();
        if factors.len() != 2 {
            return Err(Error::Parse(format!("expected two ';'-separated factors in '{s}'")));
        }
        let mut pairs = Vec::with_capacity(2);
        for factor in factors {
            let coords: Vec<&str> = factor.split(',').collect();
            if coords.len() != 2 {
                return Err(Error::Parse(format!("expected 'a,c' in '{factor}'")));
            }
            pairs.push([coords[0].parse()?, coords[1].parse()?]);
        }
        let p2 = pairs.pop().unwrap();
        let p1 = pairs.pop().unwrap();
        Self::new(p1, p2)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OrbitClass {
    Dense,
    Diagonal,
    FirstFactor,
    SecondFactor,
    Point,
}

impl OrbitClass {
    pub const ALL: [OrbitClass; 5] = [Self::Dense, Self::Diagonal, Self::FirstFactor, Self::SecondFactor, Self::Point];

    pub fn name(&self) -> &'static str {
        match self {
            Self::Dense => "Dense",
            Self::Diagonal => "Diagonal",
            Self::FirstFactor => "FirstFactor",
            Self::SecondFactor => "SecondFactor",
            Self::Point => "Point",
        }
    }

    /// A real point of the class with small integer coordinates.
    pub fn representative(&self) -> FlagPoint {
        let (a1, c1, a2, c2) = match self {
            Self::Dense => (0, 1, 1, 1),
            Self::Diagonal => (1, 1, 1, 1),
            Self::FirstFactor => (1, 1, 1, 0),
            Self::SecondFactor => (1, 0, 1, 1),
            Self::Point => (1, 0, 1, 0),
        };
        FlagPoint::from_ints(a1, c1, a2, c2).expect("nonzero coordinates")
    }
}

impl fmt::Display for OrbitClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for OrbitClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|c| c.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Parse(format!("unknown orbit class '{s}'")))
    }
}

pub fn classify_borel_orbit_closure(x: &FlagPoint) -> OrbitClass {
    let z1 = x.p1[1].is_zero();
    let z2 = x.p2[1].is_zero();
    match (z1, z2) {
        (true, true) => OrbitClass::Point,
        (false, true) => OrbitClass::FirstFactor,
        (true, false) => OrbitClass::SecondFactor,
        (false, false) if x.cross().is_zero() => OrbitClass::Diagonal,
        (false, false) => OrbitClass::Dense,
    }
}

/// A real point together with the involution data on the torus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealFormCase {
    x: FlagPoint,
    gamma: InvolutionSpec,
}

impl RealFormCase {
    pub fn new(x: FlagPoint, gamma: InvolutionSpec) -> Result<Self> {
        if !x.is_real() {
            return Err(Error::NotReal);
        }
        if gamma.rank() != 1 {
            return Err(Error::WrongRank { expected: 1, found: gamma.rank() });
        }
        Ok(Self { x, gamma })
    }

    pub fn point(&self) -> &FlagPoint {
        &self.x
    }

    pub fn gamma(&self) -> &InvolutionSpec {
        &self.gamma
    }
}

fn check_weights(l1: i64, l2: i64) -> Result<(u32, u32)> {
    match (u32::try_from(l1), u32::try_from(l2)) {
        (Ok(a), Ok(b)) if a >= 1 && b >= 1 => Ok((a, b)),
        _ => Err(Error::InvalidWeights(l1, l2)),
    }
}

/// Closed-form nonvanishing of `F_{r,k}` at `x`, with `d1 = r l1`, `d2 = r l2`.
pub fn section_nonvanishing(x: &FlagPoint, d1: u64, d2: u64, k: u64) -> bool {
    k <= d1.min(d2)
        && (k == d1 || !x.p1[1].is_zero())
        && (k == d2 || !x.p2[1].is_zero())
        && (k == 0 || !x.cross().is_zero())
}

/// Whether `lambda` lies in the highest weight set of the orbit closure of
/// `x`. Returns the smallest witnessing power `r`, searched over multiples
/// of the denominator of `lambda` up to `2 den (l1 + l2)`.
pub fn membership_in_c(x: &FlagPoint, l1: i64, l2: i64, lambda: &Rational) -> Result<Option<u64>> {
    let (l1, l2) = check_weights(l1, l2)?;
    let den = lambda.denom().to_u64().ok_or_else(|| Error::Parse(format!("{lambda} is too large")))?;
    let total = Rational::from_integer((l1 + l2).into());
    let bound = 2 * den * u64::from(l1 + l2);
    let mut r = den;
    while r <= bound {
        // 2k = r (l1 + l2 - lambda)
        let twice_k = (&total - lambda) * Rational::from_integer(r.into());
        if twice_k.is_integer() && !twice_k.is_negative() {
            let twice_k = twice_k.to_integer();
            if (&twice_k % 2u32).is_zero() {
                if let Some(k) = (twice_k / 2u32).to_u64() {
                    if section_nonvanishing(x, r * u64::from(l1), r * u64::from(l2), k) {
                        return Ok(Some(r));
                    }
                }
            }
        }
        r += den;
    }
    Ok(None)
}

/// Closed form of the moment polytope of the orbit closure of `x`, in alpha
/// units on the diagonal torus.
pub fn moment_polytope(x: &FlagPoint, l1: i64, l2: i64) -> Result<RationalPolytope> {
    check_weights(l1, l2)?;
    Ok(match classify_borel_orbit_closure(x) {
        OrbitClass::Dense => RationalPolytope::interval(int((l1 - l2).abs()), int(l1 + l2)),
        OrbitClass::Diagonal => RationalPolytope::point(vec![int(l1 + l2)]),
        OrbitClass::FirstFactor if l1 >= l2 => RationalPolytope::point(vec![int(l1 - l2)]),
        OrbitClass::SecondFactor if l2 >= l1 => RationalPolytope::point(vec![int(l2 - l1)]),
        _ => RationalPolytope::empty(1),
    })
}

/// Convex hull of the weights `l1 + l2 - 2k/r`, `r <= r_max`, for which the
/// section `F_{r,k}` does not vanish at `x`. The sections are expanded and
/// evaluated exactly, independently of the closed-form case analysis.
pub fn highest_weight_polytope(x: &FlagPoint, l1: i64, l2: i64, r_max: u32) -> Result<RationalPolytope> {
    let (l1u, l2u) = check_weights(l1, l2)?;
    let coords = x.coordinates();
    let mut weights: BTreeSet<Rational> = BTreeSet::new();
    for r in 1..=r_max.max(1) {
        let spec = SectionSpaceSpec { r, l1: l1u, l2: l2u };
        for (k, value) in hwv_values(&spec, &coords).into_iter().enumerate() {
            if !value.is_zero() {
                weights.insert(int(l1 + l2) - Rational::new((2 * k as u32).into(), r.into()));
            }
        }
    }
    let points: Vec<Vec<Rational>> = weights.into_iter().map(|w| vec![w]).collect();
    RationalPolytope::hull(1, &points)
}

/// Membership route: the highest weight polytope of the orbit closure,
/// intersected with `q*`.
pub fn gamma_highest_weight_polytope(case: &RealFormCase, l1: i64, l2: i64, r_max: u32) -> Result<RationalPolytope> {
    let (_, q) = case.gamma.eigenspaces();
    highest_weight_polytope(&case.x, l1, l2, r_max)?.intersect_subspace(&q)
}

/// Both routes to the moment polytope of the real locus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RouteComparison {
    pub intersection: RationalPolytope,
    pub membership: RationalPolytope,
}

impl RouteComparison {
    pub fn agree(&self) -> bool {
        self.intersection == self.membership
    }
}

pub fn real_moment_polytope_routes(case: &RealFormCase, l1: i64, l2: i64, r_max: u32) -> Result<RouteComparison> {
    let (_, q) = case.gamma.eigenspaces();
    Ok(RouteComparison {
        intersection: moment_polytope(&case.x, l1, l2)?.intersect_subspace(&q)?,
        membership: gamma_highest_weight_polytope(case, l1, l2, r_max)?,
    })
}

/// Moment polytope of the real locus, `moment_polytope(x) ∩ q*`. The
/// membership route is computed as well and any disagreement is an error.
pub fn real_moment_polytope(case: &RealFormCase, l1: i64, l2: i64) -> Result<RationalPolytope> {
    let routes = real_moment_polytope_routes(case, l1, l2, DEFAULT_R_MAX)?;
    if !routes.agree() {
        return Err(Error::RouteDisagreement);
    }
    Ok(routes.intersection)
}

/// Distinct real moment polytopes over the five orbit classes.
pub fn enumerate_polytope_catalog(l1: i64, l2: i64, gamma: &InvolutionSpec) -> Result<BTreeSet<RationalPolytope>> {
    OrbitClass::ALL
        .iter()
        .map(|c| {
            let case = RealFormCase::new(c.representative(), gamma.clone())?;
            real_moment_polytope(&case, l1, l2)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::rat;
    use crate::liedata::Mat2;
    use crate::reps::highest_weight_vector;
    use num_complex::Complex64;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn pt(s: &str) -> FlagPoint {
        s.parse().unwrap()
    }

    fn interval(a: i64, b: i64) -> RationalPolytope {
        RationalPolytope::interval(int(a), int(b))
    }

    fn single(a: i64) -> RationalPolytope {
        RationalPolytope::point(vec![int(a)])
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify_borel_orbit_closure(&pt("0,1;1,1")), OrbitClass::Dense);
        assert_eq!(classify_borel_orbit_closure(&pt("1,1;1,1")), OrbitClass::Diagonal);
        assert_eq!(classify_borel_orbit_closure(&pt("1,0;1,0")), OrbitClass::Point);
        assert_eq!(classify_borel_orbit_closure(&pt("2+i,3;5,0")), OrbitClass::FirstFactor);
        assert_eq!(classify_borel_orbit_closure(&pt("7,0;1/2,i")), OrbitClass::SecondFactor);
        for c in OrbitClass::ALL {
            assert_eq!(classify_borel_orbit_closure(&c.representative()), c);
        }
    }

    #[test]
    fn point_literals() {
        assert!("0,0;1,1".parse::<FlagPoint>().is_err());
        assert!("1,1".parse::<FlagPoint>().is_err());
        assert!("1,1,1;1,1".parse::<FlagPoint>().is_err());
        assert_eq!(pt("0/1,1/1;1/1,1/1"), pt("0,1;1,1"));
        assert_eq!(pt("2,2;3,3"), pt("1,1;1,1"));
        assert_ne!(pt("1,2;1,1"), pt("1,1;1,1"));
        let x = pt("1/2-i,3;5,2/7i");
        assert_eq!(x.to_string().parse::<FlagPoint>().unwrap(), x);
    }

    #[test]
    fn classification_is_borel_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut q = || {
            GaussianRational::new(
                rat(rng.random_range(-9..=9), rng.random_range(1..=5)),
                rat(rng.random_range(-9..=9), rng.random_range(1..=5)),
            )
        };
        for class in OrbitClass::ALL {
            let x = class.representative();
            for _ in 0..30 {
                let a = loop {
                    let a = q();
                    if !a.is_zero() {
                        break a;
                    }
                };
                let b = crate::liedata::ExactGroupElement::borel(a, q()).unwrap();
                let y = FlagPoint::new(b.apply(&x.p1), b.apply(&x.p2)).unwrap();
                assert_eq!(classify_borel_orbit_closure(&y), class);
            }
        }
    }

    /// Real dimension of the orbit through `x`, from the rank of the
    /// infinitesimal action of the four real directions of `b`.
    fn orbit_dimension(x: &FlagPoint) -> usize {
        let to_c = |g: &GaussianRational| {
            let (re, im) = g.to_f64();
            Complex64::new(re, im)
        };
        let gens = [
            Mat2::real(1.0, 0.0, 0.0, -1.0),
            Mat2::new(Complex64::i(), 0.0.into(), 0.0.into(), -Complex64::i()),
            Mat2::real(0.0, 1.0, 0.0, 0.0),
            Mat2::new(0.0.into(), Complex64::i(), 0.0.into(), 0.0.into()),
        ];
        // chart derivative of (a:c) -> a/c or c/a
        let chart = |p: [Complex64; 2], dp: [Complex64; 2]| {
            if p[1].norm() >= p[0].norm() {
                (dp[0] * p[1] - p[0] * dp[1]) / (p[1] * p[1])
            } else {
                (dp[1] * p[0] - p[1] * dp[0]) / (p[0] * p[0])
            }
        };
        let p1 = [to_c(&x.p1[0]), to_c(&x.p1[1])];
        let p2 = [to_c(&x.p2[0]), to_c(&x.p2[1])];
        let mut rows: Vec<[f64; 4]> = gens
            .iter()
            .map(|g| {
                let t1 = chart(p1, g.apply(p1));
                let t2 = chart(p2, g.apply(p2));
                [t1.re, t1.im, t2.re, t2.im]
            })
            .collect();
        let mut rank = 0;
        for col in 0..4 {
            let Some(piv) = (rank..rows.len()).max_by(|&a, &b| rows[a][col].abs().total_cmp(&rows[b][col].abs()))
            else {
                break;
            };
            if rows[piv][col].abs() < 1e-9 {
                continue;
            }
            rows.swap(rank, piv);
            for i in 0..rows.len() {
                if i != rank {
                    let f = rows[i][col] / rows[rank][col];
                    let pivot_row = rows[rank];
                    for (x, p) in rows[i].iter_mut().zip(pivot_row) {
                        *x -= f * p;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    #[test]
    fn classes_match_numeric_orbit_dimension() {
        let expected = [4, 2, 2, 2, 0];
        for (class, dim) in OrbitClass::ALL.iter().zip(expected) {
            assert_eq!(orbit_dimension(&class.representative()), dim, "{class}");
        }
        assert_eq!(orbit_dimension(&pt("3,1/2;-1,2+i")), 4);
    }

    #[test]
    fn membership_examples() {
        let dense = OrbitClass::Dense.representative();
        let diag = OrbitClass::Diagonal.representative();
        assert_eq!(membership_in_c(&dense, 2, 1, &int(1)).unwrap(), Some(1));
        assert_eq!(membership_in_c(&diag, 2, 1, &int(1)).unwrap(), None);
        assert_eq!(membership_in_c(&dense, 2, 1, &rat(1, 2)).unwrap(), None);
        assert_eq!(membership_in_c(&dense, 2, 1, &rat(3, 2)).unwrap(), Some(4));
        assert!(membership_in_c(&dense, 0, 1, &int(1)).is_err());
    }

    #[test]
    fn closed_form_nonvanishing_matches_polynomial_evaluation() {
        let points = ["0,1;1,1", "1,1;1,1", "1,1;1,0", "1,0;1,1", "1,0;1,0", "2-i,3;1/2,5i", "4,0;0,3", "0,3;2,0"];
        for s in points {
            let x = pt(s);
            for (r, l1, l2) in [(1, 1, 1), (1, 2, 1), (2, 1, 3), (3, 2, 2)] {
                let spec = SectionSpaceSpec::new(r, l1, l2).unwrap();
                for k in 0..=spec.max_k() {
                    let f = highest_weight_vector(&spec, k.into()).unwrap();
                    let (d1, d2) = spec.bidegree();
                    assert_eq!(
                        !f.eval_exact(&x.coordinates()).is_zero(),
                        section_nonvanishing(&x, d1.into(), d2.into(), k.into()),
                        "{s} r={r} l=({l1},{l2}) k={k}"
                    );
                }
            }
        }
    }

    #[test]
    fn moment_polytope_examples() {
        let rep = |c: OrbitClass| c.representative();
        assert_eq!(moment_polytope(&rep(OrbitClass::Dense), 2, 1).unwrap(), interval(1, 3));
        assert_eq!(moment_polytope(&rep(OrbitClass::Diagonal), 2, 1).unwrap(), single(3));
        assert_eq!(moment_polytope(&rep(OrbitClass::Point), 2, 1).unwrap(), RationalPolytope::empty(1));
        assert_eq!(moment_polytope(&rep(OrbitClass::FirstFactor), 3, 1).unwrap(), single(2));
        assert!(moment_polytope(&rep(OrbitClass::SecondFactor), 3, 1).unwrap().is_empty());
        assert_eq!(moment_polytope(&rep(OrbitClass::SecondFactor), 1, 3).unwrap(), single(2));
        assert_eq!(moment_polytope(&rep(OrbitClass::FirstFactor), 2, 2).unwrap(), single(0));
    }

    #[test]
    fn real_polytope_examples() {
        let neg = InvolutionSpec::negation(1);
        let case = |c: OrbitClass, g: &InvolutionSpec| RealFormCase::new(c.representative(), g.clone()).unwrap();
        assert_eq!(gamma_highest_weight_polytope(&case(OrbitClass::Dense, &neg), 2, 1, 6).unwrap(), interval(1, 3));
        assert_eq!(gamma_highest_weight_polytope(&case(OrbitClass::Diagonal, &neg), 2, 1, 6).unwrap(), single(3));
        let id = InvolutionSpec::identity(1);
        assert!(gamma_highest_weight_polytope(&case(OrbitClass::Dense, &id), 2, 1, 6).unwrap().is_empty());
        assert_eq!(real_moment_polytope(&case(OrbitClass::Dense, &neg), 2, 1).unwrap(), interval(1, 3));
        assert_eq!(real_moment_polytope(&case(OrbitClass::FirstFactor, &neg), 3, 1).unwrap(), single(2));
        assert!(real_moment_polytope(&case(OrbitClass::SecondFactor, &neg), 3, 1).unwrap().is_empty());
        assert_eq!(RealFormCase::new(pt("i,1;1,1"), neg.clone()), Err(Error::NotReal));
        assert!(RealFormCase::new(pt("1,1;1,1"), InvolutionSpec::swap()).is_err());
    }

    #[test]
    fn catalog_examples() {
        let neg = InvolutionSpec::negation(1);
        let got = enumerate_polytope_catalog(2, 1, &neg).unwrap();
        let want = BTreeSet::from([interval(1, 3), single(3), single(1), RationalPolytope::empty(1)]);
        assert_eq!(got, want);
        let got = enumerate_polytope_catalog(1, 1, &neg).unwrap();
        let want = BTreeSet::from([interval(0, 2), single(2), single(0), RationalPolytope::empty(1)]);
        assert_eq!(got, want);
        let got = enumerate_polytope_catalog(1, 1, &InvolutionSpec::identity(1)).unwrap();
        assert_eq!(got, BTreeSet::from([single(0), RationalPolytope::empty(1)]));
    }

    #[test]
    fn routes_agree_on_grid() {
        for l1 in 1..=4 {
            for l2 in 1..=4 {
                for g in [InvolutionSpec::negation(1), InvolutionSpec::identity(1)] {
                    for c in OrbitClass::ALL {
                        let case = RealFormCase::new(c.representative(), g.clone()).unwrap();
                        assert!(
                            real_moment_polytope_routes(&case, l1, l2, 3).unwrap().agree(),
                            "{c} ({l1},{l2}) {}",
                            g.label()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn r_one_hull_matches_closed_form() {
        for l1 in 1..=4 {
            for l2 in 1..=4 {
                for c in OrbitClass::ALL {
                    let x = c.representative();
                    assert_eq!(highest_weight_polytope(&x, l1, l2, 1).unwrap(), moment_polytope(&x, l1, l2).unwrap());
                }
            }
        }
    }

    #[test]
    fn every_class_sits_inside_dense() {
        for l1 in 1..=4 {
            for l2 in 1..=4 {
                let dense = moment_polytope(&OrbitClass::Dense.representative(), l1, l2).unwrap();
                for c in OrbitClass::ALL {
                    for v in moment_polytope(&c.representative(), l1, l2).unwrap().vertices() {
                        assert!(dense.contains(v).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn membership_is_exactly_the_rational_points_of_the_polytope() {
        for (l1, l2) in [(1, 1), (2, 1), (1, 3), (3, 2)] {
            let bound = l1 + l2 + 1;
            for c in OrbitClass::ALL {
                let x = c.representative();
                let p = moment_polytope(&x, l1, l2).unwrap();
                for q in 1..=4i64 {
                    for n in -bound * q..=bound * q {
                        let lambda = rat(n, q);
                        let member = membership_in_c(&x, l1, l2, &lambda).unwrap().is_some();
                        let inside = p.contains(std::slice::from_ref(&lambda)).unwrap();
                        assert_eq!(member, inside, "{c} ({l1},{l2}) lambda={lambda}");
                    }
                }
            }
        }
    }
}
