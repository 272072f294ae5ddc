//! Sections of `L^r` over `CP^1 x CP^1` as bi-homogeneous polynomials.
//!
//! A section is a polynomial `F(x1, y1, x2, y2)` homogeneous of degree
//! `r*l1` in `(x1, y1)` and `r*l2` in `(x2, y2)`. Groups act on polynomials
//! through the inverse, `(g.F)(v) = F(g^{-1} v)`. With that convention the
//! monomial `x1^a y1^b x2^c y2^d` has torus weight `(b - a) + (d - c)` and a
//! strictly upper unipotent `u` with parameter `t` acts by the substitution
//! `x_i -> x_i - t y_i`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exactlin::{kernel, GaussianRational, RatMatrix, Rational};

/// Exponents of `x1, y1, x2, y2`.
pub type Exponents = [u32; 4];

pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Torus weight of a monomial under the dual action.
pub fn monomial_weight(e: &Exponents) -> i64 {
    (e[1] as i64 - e[0] as i64) + (e[3] as i64 - e[2] as i64)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BiHomogPoly {
    bidegree: (u32, u32),
    terms: BTreeMap<Exponents, BigInt>,
}

impl BiHomogPoly {
    pub fn zero(bidegree: (u32, u32)) -> Self {
        Self { bidegree, terms: BTreeMap::new() }
    }

    pub fn new(bidegree: (u32, u32), terms: impl IntoIterator<Item = (Exponents, BigInt)>) -> Result<Self> {
        let mut p = Self::zero(bidegree);
        for (e, c) in terms {
            p.add_term(e, c)?;
        }
        Ok(p)
    }

    pub fn monomial(e: Exponents, coeff: impl Into<BigInt>) -> Self {
        Self::new((e[0] + e[1], e[2] + e[3]), [(e, coeff.into())]).expect("bidegree read off exponents")
    }

    fn add_term(&mut self, e: Exponents, c: BigInt) -> Result<()> {
        if e[0] + e[1] != self.bidegree.0 || e[2] + e[3] != self.bidegree.1 {
            return Err(Error::BidegreeMismatch(self.bidegree.0, self.bidegree.1));
        }
        let slot = self.terms.entry(e).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
        Ok(())
    }

    pub fn bidegree(&self) -> (u32, u32) {
        self.bidegree
    }

    pub fn terms(&self) -> &BTreeMap<Exponents, BigInt> {
        &self.terms
    }

    pub fn coefficient(&self, e: &Exponents) -> BigInt {
        self.terms.get(e).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero((self.bidegree.0 + o.bidegree.0, self.bidegree.1 + o.bidegree.1));
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e = [e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2], e1[3] + e2[3]];
                out.add_term(e, c1 * c2).expect("degrees add");
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::monomial([0, 0, 0, 0], 1);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn scale(&self, s: &BigInt) -> Self {
        let mut out = Self::zero(self.bidegree);
        if !s.is_zero() {
            out.terms = self.terms.iter().map(|(e, c)| (*e, c * s)).collect();
        }
        out
    }

    /// True when `self = c * other` for some nonzero rational `c`.
    pub fn is_proportional_to(&self, other: &Self) -> bool {
        if self.bidegree != other.bidegree || self.is_zero() || other.is_zero() {
            return false;
        }
        if self.terms.len() != other.terms.len() || !self.terms.keys().eq(other.terms.keys()) {
            return false;
        }
        let (e0, a0) = self.terms.iter().next().unwrap();
        let b0 = &other.terms[e0];
        self.terms.iter().all(|(e, a)| a * b0 == &other.terms[e] * a0)
    }

    /// Exact value at `(x1, y1, x2, y2)`.
    pub fn eval_exact(&self, v: &[GaussianRational; 4]) -> GaussianRational {
        let (d1, d2) = self.bidegree;
        let powers: Vec<Vec<GaussianRational>> = v
            .iter()
            .zip([d1, d1, d2, d2])
            .map(|(base, d)| {
                let mut row = vec![GaussianRational::one()];
                for _ in 0..d {
                    let next = &row[row.len() - 1] * base;
                    row.push(next);
                }
                row
            })
            .collect();
        let mut acc = GaussianRational::zero();
        for (e, c) in &self.terms {
            let mut t = GaussianRational::real(Rational::from_integer(c.clone()));
            for (row, &p) in powers.iter().zip(e) {
                t = &t * &row[p as usize];
            }
            acc = &acc + &t;
        }
        acc
    }

    pub fn eval_c64(&self, v: &[Complex64; 4]) -> Complex64 {
        self.terms
            .iter()
            .map(|(e, c)| {
                let mut t = Complex64::new(c.to_f64().unwrap_or(f64::NAN), 0.0);
                for (base, &p) in v.iter().zip(e) {
                    t *= base.powu(p);
                }
                t
            })
            .sum()
    }

    /// `f(x1 - t y1, y1, x2 - t y2, y2)` as a map from
    /// `(power of t, exponents)` to coefficient.
    pub fn unipotent_substitution(&self) -> BTreeMap<(u32, Exponents), BigInt> {
        let mut out: BTreeMap<(u32, Exponents), BigInt> = BTreeMap::new();
        for (e, coef) in &self.terms {
            let [a, b, c, d] = *e;
            for i in 0..=a {
                for j in 0..=c {
                    let sign = if (i + j) % 2 == 0 { BigInt::one() } else { -BigInt::one() };
                    let v = coef * binomial(a, i) * binomial(c, j) * sign;
                    let key = (i + j, [a - i, b + i, c - j, d + j]);
                    let slot = out.entry(key).or_insert_with(BigInt::zero);
                    *slot += v;
                    if slot.is_zero() {
                        out.remove(&key);
                    }
                }
            }
        }
        out
    }

    /// Symbolic check that `f` is fixed by every strictly upper unipotent.
    pub fn is_n_invariant(&self) -> bool {
        self.unipotent_substitution().keys().all(|(tdeg, _)| *tdeg == 0)
    }

    /// Randomized evaluation version of [`Self::is_n_invariant`]: compares
    /// `f(u^{-1} v)` with `f(v)` at `deg + 1` random unipotent parameters.
    /// Never reports a false negative; a false positive requires hitting a
    /// root of a nonzero polynomial.
    pub fn is_n_invariant_randomized(&self, seed: u64) -> bool {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let deg = self.bidegree.0 + self.bidegree.1;
        let mut draw = || GaussianRational::from_int(rng.random_range(-1000..=1000));
        for _ in 0..=deg {
            let (x1, y1, x2, y2, t) = (draw(), draw(), draw(), draw(), draw());
            let moved = [&x1 - &(&t * &y1), y1.clone(), &x2 - &(&t * &y2), y2.clone()];
            if self.eval_exact(&moved) != self.eval_exact(&[x1, y1, x2, y2]) {
                return false;
            }
        }
        true
    }

    /// Common torus weight of all terms.
    pub fn torus_weight(&self) -> Result<i64> {
        let mut weights = self.terms.keys().map(monomial_weight);
        let first = weights.next().ok_or(Error::ZeroPolynomial)?;
        match weights.find(|&w| w != first) {
            Some(second) => Err(Error::MixedWeights { first, second }),
            None => Ok(first),
        }
    }

    /// Integer multiple with coprime coefficients whose lexicographically
    /// largest monomial has a positive coefficient.
    pub fn primitive(&self) -> Self {
        let g = self.terms.values().fold(BigInt::zero(), |g, c| g.gcd(c));
        if g.is_zero() {
            return self.clone();
        }
        let sign = if self.terms.values().next_back().unwrap().is_negative() { -1 } else { 1 };
        let mut out = Self::zero(self.bidegree);
        out.terms = self.terms.iter().map(|(e, c)| (*e, c / &g * sign)).collect();
        out
    }
}

pub fn verify_n_invariance(f: &BiHomogPoly) -> bool {
    f.is_n_invariant()
}

pub fn torus_weight(f: &BiHomogPoly) -> Result<i64> {
    f.torus_weight()
}

impl fmt::Display for BiHomogPoly {
    /// Terms in descending lexicographic order of `(a, b, c, d)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        const VARS: [&str; 4] = ["x1", "y1", "x2", "y2"];
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let mag = c.abs();
            match (i, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let factors: Vec<String> = VARS
                .iter()
                .zip(e)
                .filter(|(_, &p)| p > 0)
                .map(|(v, &p)| if p == 1 { v.to_string() } else { format!("{v}^{p}") })
                .collect();
            if factors.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{mag}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

/// Line bundle power `r` over `CP^1 x CP^1` with weights `(l1, l2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SectionSpaceSpec {
    pub r: u32,
    pub l1: u32,
    pub l2: u32,
}

impl SectionSpaceSpec {
    pub fn new(r: i64, l1: i64, l2: i64) -> Result<Self> {
        if r < 1 || l1 < 1 || l2 < 1 {
            return Err(Error::InvalidSpec(format!("need r, l1, l2 >= 1, got ({r}, {l1}, {l2})")));
        }
        let cast = |v: i64| u32::try_from(v).map_err(|_| Error::InvalidSpec(format!("{v} is too large")));
        Ok(Self { r: cast(r)?, l1: cast(l1)?, l2: cast(l2)? })
    }

    pub fn bidegree(&self) -> (u32, u32) {
        (self.r * self.l1, self.r * self.l2)
    }

    pub fn max_k(&self) -> u32 {
        let (d1, d2) = self.bidegree();
        d1.min(d2)
    }

    /// All monomials of the section space, in ascending lexicographic order.
    pub fn monomials(&self) -> Vec<Exponents> {
        let (d1, d2) = self.bidegree();
        let mut out = Vec::with_capacity(((d1 + 1) * (d2 + 1)) as usize);
        for a in 0..=d1 {
            for c in 0..=d2 {
                out.push([a, d1 - a, c, d2 - c]);
            }
        }
        out.sort();
        out
    }
}

pub fn section_space_dim(spec: &SectionSpaceSpec) -> u64 {
    let (d1, d2) = spec.bidegree();
    (d1 as u64 + 1) * (d2 as u64 + 1)
}

/// Highest weights `r(l1 + l2) - 2k`, `k = 0..=min(r l1, r l2)`, descending.
pub fn clebsch_gordan_highest_weights(spec: &SectionSpaceSpec) -> Vec<i64> {
    let (d1, d2) = spec.bidegree();
    (0..=spec.max_k()).map(|k| (d1 + d2) as i64 - 2 * k as i64).collect()
}

fn check_k(spec: &SectionSpaceSpec, k: i64) -> Result<u32> {
    let max = spec.max_k() as i64;
    if !(0..=max).contains(&k) {
        return Err(Error::KOutOfRange { k, max });
    }
    Ok(k as u32)
}

/// `sum_j (-1)^(k-j) C(k,j) x1^j y1^(r l1 - j) x2^(k-j) y2^(r l2 - k + j)`.
pub fn hwv_sum_form(spec: &SectionSpaceSpec, k: i64) -> Result<BiHomogPoly> {
    let k = check_k(spec, k)?;
    let (d1, d2) = spec.bidegree();
    let terms = (0..=k).map(|j| {
        let sign = if (k - j) % 2 == 0 { BigInt::one() } else { -BigInt::one() };
        ([j, d1 - j, k - j, d2 - k + j], sign * binomial(k, j))
    });
    BiHomogPoly::new((d1, d2), terms)
}

/// `y1^(r l1 - k) y2^(r l2 - k) (x1 y2 - x2 y1)^k`.
pub fn hwv_product_form(spec: &SectionSpaceSpec, k: i64) -> Result<BiHomogPoly> {
    let k = check_k(spec, k)?;
    let (d1, d2) = spec.bidegree();
    let det = BiHomogPoly::new((1, 1), [([1, 0, 0, 1], BigInt::one()), ([0, 1, 1, 0], -BigInt::one())])?;
    let prefix = BiHomogPoly::monomial([0, d1 - k, 0, d2 - k], 1);
    Ok(prefix.mul(&det.pow(k)))
}

/// The N-invariant vector `F_{r,k}` of weight `r(l1 + l2) - 2k`. Both closed
/// forms are expanded and must agree exactly.
pub fn highest_weight_vector(spec: &SectionSpaceSpec, k: i64) -> Result<BiHomogPoly> {
    let sum = hwv_sum_form(spec, k)?;
    if sum != hwv_product_form(spec, k)? {
        return Err(Error::ClosedFormMismatch);
    }
    Ok(sum)
}

/// Values `F_{r,k}(v)` for `k = 0..=min(r l1, r l2)`, by the sum form with
/// shared power tables.
pub fn hwv_values(spec: &SectionSpaceSpec, v: &[GaussianRational; 4]) -> Vec<GaussianRational> {
    let (d1, d2) = spec.bidegree();
    let powers = |base: &GaussianRational, d: u32| {
        let mut row = vec![GaussianRational::one()];
        for _ in 0..d {
            let next = &row[row.len() - 1] * base;
            row.push(next);
        }
        row
    };
    let (x1, y1, x2, y2) = (powers(&v[0], d1), powers(&v[1], d1), powers(&v[2], d2), powers(&v[3], d2));
    let mut pascal = vec![BigInt::one()];
    let mut out = Vec::with_capacity(spec.max_k() as usize + 1);
    for k in 0..=spec.max_k() {
        if k > 0 {
            let mut next = vec![BigInt::one(); k as usize + 1];
            for j in 1..k as usize {
                next[j] = &pascal[j - 1] + &pascal[j];
            }
            pascal = next;
        }
        let mut acc = GaussianRational::zero();
        for j in 0..=k {
            let mut c = Rational::from_integer(pascal[j as usize].clone());
            if (k - j) % 2 == 1 {
                c = -c;
            }
            let (j, k) = (j as usize, k as usize);
            let t = &(&x1[j] * &y1[d1 as usize - j]) * &(&x2[k - j] * &y2[d2 as usize - k + j]);
            acc = &acc + &(&GaussianRational::real(c) * &t);
        }
        out.push(acc);
    }
    out
}

/// Multiplicity of each torus weight, by monomial count.
pub fn weight_decomposition(spec: &SectionSpaceSpec) -> BTreeMap<i64, u64> {
    let mut out = BTreeMap::new();
    for e in spec.monomials() {
        *out.entry(monomial_weight(&e)).or_insert(0) += 1;
    }
    out
}

/// Basis of the N-invariant polynomials of a given weight, found by brute
/// force: every coefficient of a positive power of `t` in the unipotent
/// substitution must vanish. Basis elements are primitive integer polynomials.
pub fn n_invariant_subspace(spec: &SectionSpaceSpec, weight: i64) -> Vec<BiHomogPoly> {
    let bidegree = spec.bidegree();
    let mons: Vec<Exponents> = spec.monomials().into_iter().filter(|e| monomial_weight(e) == weight).collect();
    if mons.is_empty() {
        return Vec::new();
    }
    let mut rows: BTreeMap<(u32, Exponents), Vec<Rational>> = BTreeMap::new();
    for (col, e) in mons.iter().enumerate() {
        let single = BiHomogPoly::monomial(*e, 1);
        for (key, coef) in single.unipotent_substitution() {
            if key.0 == 0 {
                continue;
            }
            rows.entry(key).or_insert_with(|| vec![Rational::zero(); mons.len()])[col] = Rational::from_integer(coef);
        }
    }
    let null = if rows.is_empty() {
        kernel(&RatMatrix::zeros(1, mons.len()))
    } else {
        let rows: Vec<Vec<Rational>> = rows.into_values().collect();
        kernel(&RatMatrix::from_rows(&rows).expect("uniform rows"))
    };
    null.into_iter()
        .map(|v| {
            let lcm = v.iter().fold(BigInt::one(), |l, q| l.lcm(q.denom()));
            let terms = mons.iter().zip(&v).map(|(e, q)| (*e, (q * Rational::from_integer(lcm.clone())).to_integer()));
            BiHomogPoly::new(bidegree, terms).expect("monomials of the spec").primitive()
        })
        .collect()
}
