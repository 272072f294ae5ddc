//! Exact convex polytopes in low dimension.
//!
//! Polytopes are stored by their vertices in lexicographic order, so two
//! polytopes are equal exactly when their vertex lists are. Inequality
//! descriptions are rebuilt on demand from the vertices: points are first
//! expressed in coordinates on their affine hull, where the hull is
//! full-dimensional.

use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactlin::{canonical_basis, dot, int, kernel, solve, RatMatrix, Rational};

/// Convex hull of finitely many rational points; possibly empty.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "PolytopeJson", into = "PolytopeJson")]
pub struct RationalPolytope {
    dim: usize,
    vertices: Vec<Vec<Rational>>,
}

/// `normal . x <= offset` (or `==` for equalities).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub normal: Vec<Rational>,
    pub offset: Rational,
}

impl Constraint {
    fn value(&self, x: &[Rational]) -> Rational {
        dot(&self.normal, x) - &self.offset
    }
}

/// Inequality description of a nonempty polytope.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HRepresentation {
    pub equalities: Vec<Constraint>,
    pub inequalities: Vec<Constraint>,
}

/// Point set expressed in coordinates on its own affine hull.
struct AffineFrame {
    base: Vec<Rational>,
    directions: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl AffineFrame {
    fn new(points: &[Vec<Rational>]) -> Self {
        let base = points[0].clone();
        let diffs: Vec<Vec<Rational>> =
            points[1..].iter().map(|p| p.iter().zip(&base).map(|(a, b)| a - b).collect()).collect();
        let directions = canonical_basis(&diffs).expect("points share a dimension");
        let pivots =
            directions.iter().map(|d| d.iter().position(|v| !v.is_zero()).expect("nonzero basis row")).collect();
        Self { base, directions, pivots }
    }

    fn rank(&self) -> usize {
        self.directions.len()
    }

    fn coords(&self, x: &[Rational]) -> Vec<Rational> {
        self.pivots.iter().map(|&p| &x[p] - &self.base[p]).collect()
    }

    /// Lifts `n . y <= c` in frame coordinates to ambient coordinates.
    fn lift(&self, n: &[Rational], c: &Rational) -> Constraint {
        let mut normal = vec![Rational::zero(); self.base.len()];
        let mut offset = c.clone();
        for (ni, &p) in n.iter().zip(&self.pivots) {
            normal[p] = ni.clone();
            offset += ni * &self.base[p];
        }
        Constraint { normal, offset }
    }

    fn equalities(&self) -> Vec<Constraint> {
        let dim = self.base.len();
        if self.directions.is_empty() {
            return (0..dim)
                .map(|i| {
                    let mut normal = vec![Rational::zero(); dim];
                    normal[i] = Rational::one();
                    Constraint { normal, offset: self.base[i].clone() }
                })
                .collect();
        }
        let m = RatMatrix::from_rows(&self.directions).expect("uniform rows");
        kernel(&m)
            .into_iter()
            .map(|normal| {
                let offset = dot(&normal, &self.base);
                Constraint { normal, offset }
            })
            .collect()
    }
}

fn cross(o: &[Rational], a: &[Rational], b: &[Rational]) -> Rational {
    (&a[0] - &o[0]) * (&b[1] - &o[1]) - (&a[1] - &o[1]) * (&b[0] - &o[0])
}

/// Andrew's monotone chain on distinct planar points; returns hull indices
/// in counterclockwise order with collinear points dropped.
fn monotone_chain(pts: &[Vec<Rational>]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..pts.len()).collect();
    order.sort_by(|&i, &j| pts[i].cmp(&pts[j]));
    let mut hull: Vec<usize> = Vec::with_capacity(2 * pts.len());
    for pass in 0..2 {
        let start = hull.len();
        let seq: Box<dyn Iterator<Item = &usize>> =
            if pass == 0 { Box::new(order.iter()) } else { Box::new(order.iter().rev()) };
        for &i in seq {
            while hull.len() >= start + 2 {
                let a = hull[hull.len() - 2];
                let b = hull[hull.len() - 1];
                if cross(&pts[a], &pts[b], &pts[i]).is_positive() {
                    break;
                }
                hull.pop();
            }
            hull.push(i);
        }
        hull.pop();
    }
    hull
}

/// Integer normal of the hyperplane spanned by `k - 1` difference vectors in
/// `Z^k`, primitive with a positive leading entry; `None` when they are
/// dependent.
fn cofactor_normal(rows: &[Vec<BigInt>], k: usize) -> Option<Vec<BigInt>> {
    let n: Vec<BigInt> = match rows {
        [u, v] if k == 3 => {
            vec![&u[1] * &v[2] - &u[2] * &v[1], &u[2] * &v[0] - &u[0] * &v[2], &u[0] * &v[1] - &u[1] * &v[0]]
        }
        _ => (0..k)
            .map(|j| {
                let minor: Vec<Vec<Rational>> = rows
                    .iter()
                    .map(|r| {
                        r.iter().enumerate().filter(|(i, _)| *i != j).map(|(_, v)| Rational::from(v.clone())).collect()
                    })
                    .collect();
                let d = RatMatrix::from_rows(&minor).and_then(|m| m.determinant()).expect("square minor").to_integer();
                if j % 2 == 0 {
                    d
                } else {
                    -d
                }
            })
            .collect(),
    };
    let lead = n.iter().find(|v| !v.is_zero())?;
    let g = n.iter().fold(BigInt::zero(), |g, v| g.gcd(v));
    let g = if lead.is_negative() { -g } else { g };
    Some(n.into_iter().map(|v| v / &g).collect())
}

fn int_dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Facets `n . y <= c` of a full-dimensional point set in `Q^k`, `k >= 3`,
/// found by testing every hyperplane through `k` of the points. The points are
/// first scaled onto a common integer lattice.
fn facets_by_enumeration(pts: &[Vec<Rational>], k: usize) -> Vec<(Vec<Rational>, Rational)> {
    let scale = pts.iter().flatten().fold(BigInt::one(), |l, v| l.lcm(v.denom()));
    let lattice: Vec<Vec<BigInt>> = pts.iter().map(|p| p.iter().map(|v| (v * &scale).to_integer()).collect()).collect();
    let mut found: BTreeSet<(Vec<BigInt>, BigInt)> = BTreeSet::new();
    for combo in (0..lattice.len()).combinations(k) {
        let p0 = &lattice[combo[0]];
        let rows: Vec<Vec<BigInt>> =
            combo[1..].iter().map(|&i| lattice[i].iter().zip(p0).map(|(a, b)| a - b).collect()).collect();
        let Some(mut n) = cofactor_normal(&rows, k) else {
            continue;
        };
        let mut c = int_dot(&n, p0);
        let (mut pos, mut neg) = (false, false);
        for p in &lattice {
            let s = int_dot(&n, p) - &c;
            pos |= s.is_positive();
            neg |= s.is_negative();
            if pos && neg {
                break;
            }
        }
        if pos && neg {
            continue;
        }
        if pos {
            n.iter_mut().for_each(|v| *v = -&*v);
            c = -c;
        }
        found.insert((n, c));
    }
    let scale = Rational::from(scale);
    found.into_iter().map(|(n, c)| (n.into_iter().map(Rational::from).collect(), Rational::from(c) / &scale)).collect()
}

impl RationalPolytope {
    pub fn empty(dim: usize) -> Self {
        Self { dim, vertices: Vec::new() }
    }

    pub fn point(p: Vec<Rational>) -> Self {
        Self { dim: p.len(), vertices: vec![p] }
    }

    /// One-dimensional interval `[lo, hi]` (a point when equal).
    pub fn interval(lo: Rational, hi: Rational) -> Self {
        Self::hull(1, &[vec![lo], vec![hi]]).expect("one-dimensional points")
    }

    /// Convex hull with redundant points removed.
    pub fn hull(dim: usize, points: &[Vec<Rational>]) -> Result<Self> {
        if let Some(bad) = points.iter().find(|p| p.len() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, found: bad.len() });
        }
        let distinct: Vec<Vec<Rational>> = points.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
        if distinct.len() <= 1 {
            return Ok(Self { dim, vertices: distinct });
        }
        let frame = AffineFrame::new(&distinct);
        let local: Vec<Vec<Rational>> = distinct.iter().map(|p| frame.coords(p)).collect();
        let keep: Vec<usize> = match frame.rank() {
            0 => vec![0],
            1 => {
                let lo = (0..local.len()).min_by(|&a, &b| local[a].cmp(&local[b])).unwrap();
                let hi = (0..local.len()).max_by(|&a, &b| local[a].cmp(&local[b])).unwrap();
                vec![lo, hi]
            }
            2 => monotone_chain(&local),
            k => {
                let facets = facets_by_enumeration(&local, k);
                (0..local.len())
                    .filter(|&i| {
                        let tight: Vec<Vec<Rational>> =
                            facets.iter().filter(|(n, c)| dot(n, &local[i]) == *c).map(|(n, _)| n.clone()).collect();
                        !tight.is_empty() && canonical_basis(&tight).map(|b| b.len()).unwrap_or(0) == k
                    })
                    .collect()
            }
        };
        let mut vertices: Vec<Vec<Rational>> = keep.into_iter().map(|i| distinct[i].clone()).collect();
        vertices.sort();
        vertices.dedup();
        Ok(Self { dim, vertices })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vec<Rational>] {
        &self.vertices
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Inequality description; `None` for the empty polytope.
    pub fn h_representation(&self) -> Option<HRepresentation> {
        if self.vertices.is_empty() {
            return None;
        }
        let frame = AffineFrame::new(&self.vertices);
        let local: Vec<Vec<Rational>> = self.vertices.iter().map(|p| frame.coords(p)).collect();
        let local_facets: Vec<(Vec<Rational>, Rational)> = match frame.rank() {
            0 => Vec::new(),
            1 => {
                let lo = local.iter().min().unwrap()[0].clone();
                let hi = local.iter().max().unwrap()[0].clone();
                vec![(vec![int(1)], hi), (vec![int(-1)], -lo)]
            }
            2 => {
                let ring = monotone_chain(&local);
                (0..ring.len())
                    .map(|e| {
                        let a = &local[ring[e]];
                        let b = &local[ring[(e + 1) % ring.len()]];
                        let n = vec![&b[1] - &a[1], &a[0] - &b[0]];
                        let c = dot(&n, a);
                        (n, c)
                    })
                    .collect()
            }
            k => facets_by_enumeration(&local, k),
        };
        Some(HRepresentation {
            equalities: frame.equalities(),
            inequalities: local_facets.iter().map(|(n, c)| frame.lift(n, c)).collect(),
        })
    }

    /// Exact membership in the closed polytope.
    pub fn contains(&self, x: &[Rational]) -> Result<bool> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: x.len() });
        }
        let Some(h) = self.h_representation() else {
            return Ok(false);
        };
        Ok(h.equalities.iter().all(|c| c.value(x).is_zero())
            && h.inequalities.iter().all(|c| !c.value(x).is_positive()))
    }

    /// `self` intersected with a linear subspace through the origin.
    pub fn intersect_subspace(&self, sub: &LinearSubspace) -> Result<Self> {
        if sub.ambient != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: sub.ambient });
        }
        let Some(h) = self.h_representation() else {
            return Ok(Self::empty(self.dim));
        };
        let origin = vec![Rational::zero(); self.dim];
        if sub.basis.is_empty() {
            return Ok(if self.contains(&origin)? { Self::point(origin) } else { Self::empty(self.dim) });
        }
        let b = RatMatrix::from_columns(self.dim, &sub.basis)?;
        // x = B t; equalities pin t to an affine family t0 + K s.
        let restrict = |c: &Constraint| b.transpose().mul_vec(&c.normal).expect("shape");
        let eq_rows: Vec<Vec<Rational>> = h.equalities.iter().map(restrict).collect();
        let eq_rhs: Vec<Rational> = h.equalities.iter().map(|c| c.offset.clone()).collect();
        let m = sub.basis.len();
        let (t0, kdirs) = if eq_rows.is_empty() {
            (vec![Rational::zero(); m], (0..m).map(|i| unit(m, i)).collect::<Vec<_>>())
        } else {
            match solve(&RatMatrix::from_rows(&eq_rows)?, &eq_rhs)? {
                None => return Ok(Self::empty(self.dim)),
                Some(sol) => (sol.particular, sol.directions),
            }
        };
        let to_ambient = |s: &[Rational]| -> Vec<Rational> {
            let mut t = t0.clone();
            for (si, d) in s.iter().zip(&kdirs) {
                for (tj, dj) in t.iter_mut().zip(d) {
                    *tj += si * dj;
                }
            }
            b.mul_vec(&t).expect("shape")
        };
        // Inequalities in s-coordinates: g . s <= e.
        let ineqs: Vec<(Vec<Rational>, Rational)> = h
            .inequalities
            .iter()
            .map(|c| {
                let row = restrict(c);
                let g: Vec<Rational> = kdirs.iter().map(|d| dot(&row, d)).collect();
                (g, &c.offset - dot(&row, &t0))
            })
            .collect();
        let feasible = |s: &[Rational]| ineqs.iter().all(|(g, e)| !(dot(g, s) - e).is_positive());
        let mdim = kdirs.len();
        if mdim == 0 {
            let s: Vec<Rational> = Vec::new();
            return Ok(if feasible(&s) { Self::point(to_ambient(&s)) } else { Self::empty(self.dim) });
        }
        let mut candidates = Vec::new();
        for combo in (0..ineqs.len()).combinations(mdim) {
            let rows: Vec<Vec<Rational>> = combo.iter().map(|&i| ineqs[i].0.clone()).collect();
            let rhs: Vec<Rational> = combo.iter().map(|&i| ineqs[i].1.clone()).collect();
            let Some(sol) = solve(&RatMatrix::from_rows(&rows)?, &rhs)? else {
                continue;
            };
            if sol.directions.is_empty() && feasible(&sol.particular) {
                candidates.push(to_ambient(&sol.particular));
            }
        }
        Self::hull(self.dim, &candidates)
    }

    /// Canonical equality; errors on dimension mismatch.
    pub fn equals(&self, other: &Self) -> Result<bool> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        Ok(self.vertices == other.vertices)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("polytope serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}

fn unit(n: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); n];
    v[i] = Rational::one();
    v
}

pub fn hull(dim: usize, points: &[Vec<Rational>]) -> Result<RationalPolytope> {
    RationalPolytope::hull(dim, points)
}

pub fn contains(p: &RationalPolytope, x: &[Rational]) -> Result<bool> {
    p.contains(x)
}

pub fn intersect_subspace(p: &RationalPolytope, sub: &LinearSubspace) -> Result<RationalPolytope> {
    p.intersect_subspace(sub)
}

pub fn equals(p: &RationalPolytope, q: &RationalPolytope) -> Result<bool> {
    p.equals(q)
}

impl fmt::Display for RationalPolytope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |v: &Vec<Rational>| {
            if v.len() == 1 {
                v[0].to_string()
            } else {
                format!("({})", v.iter().join(", "))
            }
        };
        match self.vertices.as_slice() {
            [] => write!(f, "empty"),
            [p] => write!(f, "{{{}}}", show(p)),
            [a, b] if self.dim == 1 => write!(f, "[{}, {}]", show(a), show(b)),
            vs => write!(f, "conv{{{}}}", vs.iter().map(show).join(", ")),
        }
    }
}

/// Wire format: each vertex is the flat list `[num_1, den_1, num_2, den_2, ...]`
/// of decimal strings.
#[derive(Serialize, Deserialize)]
struct PolytopeJson {
    dim: usize,
    vertices: Vec<Vec<String>>,
}

impl From<RationalPolytope> for PolytopeJson {
    fn from(p: RationalPolytope) -> Self {
        let vertices = p
            .vertices
            .iter()
            .map(|v| v.iter().flat_map(|q| [q.numer().to_string(), q.denom().to_string()]).collect())
            .collect();
        PolytopeJson { dim: p.dim, vertices }
    }
}

impl TryFrom<PolytopeJson> for RationalPolytope {
    type Error = Error;

    fn try_from(j: PolytopeJson) -> Result<Self> {
        let mut points = Vec::with_capacity(j.vertices.len());
        for flat in &j.vertices {
            if flat.len() != 2 * j.dim {
                return Err(Error::Parse(format!("vertex has {} entries, expected {}", flat.len(), 2 * j.dim)));
            }
            let coords =
                flat.chunks(2).map(|pair| parse_rational_parts(&pair[0], &pair[1])).collect::<Result<Vec<_>>>()?;
            points.push(coords);
        }
        let p = Self::hull(j.dim, &points)?;
        if p.vertices.len() != points.len() {
            return Err(Error::Parse("vertex list contains non-extreme points".into()));
        }
        Ok(p)
    }
}

fn parse_rational_parts(num: &str, den: &str) -> Result<Rational> {
    let n: num_bigint::BigInt = num.parse().map_err(|_| Error::Parse(format!("bad numerator '{num}'")))?;
    let d: num_bigint::BigInt = den.parse().map_err(|_| Error::Parse(format!("bad denominator '{den}'")))?;
    if !d.is_positive() {
        return Err(Error::Parse(format!("denominator must be positive, got '{den}'")));
    }
    Ok(Rational::new(n, d))
}

/// Linear subspace through the origin, given by an independent basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSubspace {
    ambient: usize,
    basis: Vec<Vec<Rational>>,
}

impl LinearSubspace {
    pub fn new(ambient: usize, basis: Vec<Vec<Rational>>) -> Result<Self> {
        if let Some(bad) = basis.iter().find(|v| v.len() != ambient) {
            return Err(Error::DimensionMismatch { expected: ambient, found: bad.len() });
        }
        if canonical_basis(&basis)?.len() != basis.len() {
            return Err(Error::DependentBasis);
        }
        Ok(Self { ambient, basis })
    }

    pub fn full(ambient: usize) -> Self {
        Self { ambient, basis: (0..ambient).map(|i| unit(ambient, i)).collect() }
    }

    pub fn zero(ambient: usize) -> Self {
        Self { ambient, basis: Vec::new() }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, v: &[Rational]) -> Result<bool> {
        if v.len() != self.ambient {
            return Err(Error::DimensionMismatch { expected: self.ambient, found: v.len() });
        }
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        Ok(canonical_basis(&rows)?.len() == self.basis.len())
    }
}
