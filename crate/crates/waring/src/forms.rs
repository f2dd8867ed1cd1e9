//! Binary forms: real bivariate homogeneous polynomials with exact rational
//! coefficients, plus the root machinery built on them.
//!
//! A degree-d form is stored in the normalized basis,
//!
//! ```text
//!     f = sum_{i=0}^{d} C(d, i) * a_i * x^i * y^(d-i),
//! ```
//!
//! so the pure power (ax + by)^d has normalized coefficients a_i = a^i b^(d-i)
//! and catalecticant matrices are plain Hankel matrices in the a_i. The
//! monomial coefficients are p_i = C(d, i) * a_i.
//!
//! Roots live on the projective line: the affine roots are the roots of the
//! dehomogenization u(x) = f(x, 1), and f has a root at infinity, the point
//! (1 : 0), exactly when the top monomial coefficient p_d vanishes. A nonzero
//! form is hyperbolic when it has d distinct real projective roots.

use crate::error::{Error, Result};
use crate::rat::{binomial, q_from_string, q_int, q_pow, q_to_string, Q};
use crate::univariate::{self, Isolated, QPoly, SturmChain};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Coefficient basis used when exchanging coefficient lists.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Basis {
    Monomial,
    Normalized,
}

/// Denominator granularity of random coefficients: numerators are drawn
/// uniformly from [-2^GRANULARITY_BITS, 2^GRANULARITY_BITS].
pub const GRANULARITY_BITS: u32 = 20;

/// Coefficient distribution for random forms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Distribution {
    /// Each monomial coefficient is k / 2^20 with k uniform on
    /// [-2^20, 2^20].
    Uniform,
    /// Each monomial coefficient is a sum of 12 independent uniform draws
    /// (a cheap symmetric bell-shaped surrogate).
    GaussApprox,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryForm {
    degree: usize,
    norm: Vec<Q>,
}

impl BinaryForm {
    /// Builds a degree-`degree` form from `degree + 1` coefficients in the
    /// given basis, ordered by ascending power of x.
    pub fn new(degree: usize, coeffs: Vec<Q>, basis: Basis) -> Result<Self> {
        if coeffs.len() != degree + 1 {
            return Err(Error::CoeffLength {
                degree,
                expected: degree + 1,
                got: coeffs.len(),
            });
        }
        let norm = match basis {
            Basis::Normalized => coeffs,
            Basis::Monomial => coeffs
                .into_iter()
                .enumerate()
                .map(|(i, p)| p / Q::from_integer(binomial(degree, i)))
                .collect(),
        };
        Ok(BinaryForm { degree, norm })
    }

    pub fn zero(degree: usize) -> Self {
        BinaryForm {
            degree,
            norm: vec![Q::zero(); degree + 1],
        }
    }

    /// (ax + by)^d.
    pub fn pure_power(a: &Q, b: &Q, degree: usize) -> Self {
        let norm = (0..=degree)
            .map(|i| q_pow(a, i) * q_pow(b, degree - i))
            .collect();
        BinaryForm { degree, norm }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.norm.iter().all(|c| c.is_zero())
    }

    /// Coefficients a_i in the normalized basis, ascending in the power of x.
    pub fn normalized_coeffs(&self) -> &[Q] {
        &self.norm
    }

    /// Monomial coefficients p_i = C(d, i) a_i, ascending in the power of x.
    pub fn monomial_coeffs(&self) -> Vec<Q> {
        self.norm
            .iter()
            .enumerate()
            .map(|(i, a)| a * Q::from_integer(binomial(self.degree, i)))
            .collect()
    }

    pub fn coeffs(&self, basis: Basis) -> Vec<Q> {
        match basis {
            Basis::Normalized => self.norm.clone(),
            Basis::Monomial => self.monomial_coeffs(),
        }
    }

    pub fn eval(&self, x: &Q, y: &Q) -> Q {
        let mut acc = Q::zero();
        let mut xp = Q::one();
        let powers_y: Vec<Q> = {
            let mut v = vec![Q::one(); self.degree + 1];
            for i in 1..=self.degree {
                v[i] = &v[i - 1] * y;
            }
            v
        };
        for (i, p) in self.monomial_coeffs().iter().enumerate() {
            if !p.is_zero() {
                acc += p * &xp * &powers_y[self.degree - i];
            }
            if i < self.degree {
                xp *= x;
            }
        }
        acc
    }

    /// u(x) = f(x, 1) as a univariate polynomial (monomial coefficients).
    pub fn dehomogenize(&self) -> QPoly {
        QPoly::new(self.monomial_coeffs())
    }

    /// Degree of the dehomogenization; None for the zero form.
    pub fn affine_degree(&self) -> Option<usize> {
        self.dehomogenize().degree()
    }

    /// Partial derivative with respect to x as a degree d-1 form. In the
    /// normalized basis this is the coefficient shift b_j = d * a_(j+1).
    /// Errors on degree-0 forms.
    pub fn x_derivative(&self) -> Result<BinaryForm> {
        if self.degree == 0 {
            return Err(Error::BadArgument("cannot differentiate a constant form".into()));
        }
        let d = Q::from_integer(BigInt::from(self.degree));
        let coeffs = self.norm[1..].iter().map(|a| a * &d).collect();
        BinaryForm::new(self.degree - 1, coeffs, Basis::Normalized)
    }

    /// Partial derivative with respect to y: b_j = d * a_j for j < d.
    pub fn y_derivative(&self) -> Result<BinaryForm> {
        if self.degree == 0 {
            return Err(Error::BadArgument("cannot differentiate a constant form".into()));
        }
        let d = Q::from_integer(BigInt::from(self.degree));
        let coeffs = self.norm[..self.degree].iter().map(|a| a * &d).collect();
        BinaryForm::new(self.degree - 1, coeffs, Basis::Normalized)
    }

    /// Multiplicity of the root at infinity (1 : 0); zero when absent.
    /// Errors on the zero form.
    pub fn infinity_multiplicity(&self) -> Result<usize> {
        let e = self.affine_degree().ok_or(Error::ZeroForm)?;
        Ok(self.degree - e)
    }

    pub fn add(&self, other: &BinaryForm) -> Result<BinaryForm> {
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch(self.degree, other.degree));
        }
        Ok(BinaryForm {
            degree: self.degree,
            norm: self
                .norm
                .iter()
                .zip(&other.norm)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn scale(&self, s: &Q) -> BinaryForm {
        BinaryForm {
            degree: self.degree,
            norm: self.norm.iter().map(|a| a * s).collect(),
        }
    }

    pub fn mul(&self, other: &BinaryForm) -> BinaryForm {
        let degree = self.degree + other.degree;
        let pa = self.monomial_coeffs();
        let pb = other.monomial_coeffs();
        let mut pm = vec![Q::zero(); degree + 1];
        for (i, a) in pa.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in pb.iter().enumerate() {
                if !b.is_zero() {
                    pm[i + j] += a * b;
                }
            }
        }
        BinaryForm::new(degree, pm, Basis::Monomial).expect("product length")
    }

    /// True when other = c * self for some nonzero rational c. Zero forms are
    /// proportional only to zero forms of the same degree.
    pub fn proportional(&self, other: &BinaryForm) -> bool {
        if self.degree != other.degree {
            return false;
        }
        match (
            self.norm.iter().position(|c| !c.is_zero()),
            other.norm.iter().position(|c| !c.is_zero()),
        ) {
            (None, None) => true,
            (Some(i), Some(j)) if i == j => {
                let (ai, bi) = (&self.norm[i], &other.norm[i]);
                self.norm
                    .iter()
                    .zip(&other.norm)
                    .all(|(a, b)| a * bi == b * ai)
            }
            _ => false,
        }
    }

    /// Number of distinct real affine roots, via an exact Sturm sequence on
    /// the squarefree part of the dehomogenization. `interval` restricts the
    /// count to a closed interval [lo, hi]. The root at infinity is never
    /// included; see `isolate_real_roots`. Errors on the zero form.
    pub fn sturm_count(&self, interval: Option<(&Q, &Q)>) -> Result<usize> {
        let u = self.dehomogenize();
        if u.is_zero() {
            return Err(Error::ZeroForm);
        }
        if u.degree() == Some(0) {
            return Ok(0);
        }
        let chain = SturmChain::new(&u);
        match interval {
            None => Ok(chain.count_all()),
            Some((lo, hi)) => {
                if lo > hi {
                    return Err(Error::InvalidInterval);
                }
                Ok(chain.count_closed(lo, hi))
            }
        }
    }

    /// Isolates the distinct real projective roots: disjoint rational
    /// intervals (or exact rational points) for the affine roots in ascending
    /// order, plus a flag for the root at infinity. Errors on the zero form.
    pub fn isolate_real_roots(&self) -> Result<RootIsolation> {
        let u = self.dehomogenize();
        if u.is_zero() {
            return Err(Error::ZeroForm);
        }
        let affine = if u.degree() == Some(0) {
            Vec::new()
        } else {
            univariate::isolate_real_roots(&u)
        };
        Ok(RootIsolation {
            affine,
            at_infinity: self.degree > u.degree().unwrap(),
        })
    }

    /// True when the form has d distinct real projective roots. A nonzero
    /// degree-0 form counts as hyperbolic (no roots required). Errors on the
    /// zero form.
    pub fn is_hyperbolic(&self) -> Result<bool> {
        let u = self.dehomogenize();
        let e = u.degree().ok_or(Error::ZeroForm)?;
        // More than a simple root at infinity disqualifies immediately.
        if self.degree - e >= 2 {
            return Ok(false);
        }
        if e == 0 {
            return Ok(true);
        }
        let chain = SturmChain::new(&u);
        // Squarefree test: the squarefree part must keep the full degree.
        if chain.squarefree().degree() != Some(e) {
            return Ok(false);
        }
        Ok(chain.count_all() == e)
    }

    /// Discriminant-style squarefreeness certificate:
    /// - degree <= 1 forms return 1 (always squarefree);
    /// - if the top two monomial coefficients vanish, the root at infinity is
    ///   repeated and the result is 0;
    /// - otherwise Res(u, u') of the dehomogenization at its exact degree.
    /// Nonzero iff the form has no repeated projective root. Errors on the
    /// zero form.
    pub fn discriminant(&self) -> Result<Q> {
        if self.is_zero() {
            return Err(Error::ZeroForm);
        }
        if self.degree <= 1 {
            return Ok(Q::one());
        }
        let u = self.dehomogenize();
        let e = u.degree().unwrap();
        if self.degree - e >= 2 {
            return Ok(Q::zero());
        }
        Ok(univariate::discriminant_resultant(&u))
    }

    pub fn is_squarefree(&self) -> Result<bool> {
        Ok(!self.discriminant()?.is_zero())
    }

    /// Resultant of two nonzero forms, computed as the Sylvester determinant
    /// of their dehomogenizations at exact degrees (leading coefficients are
    /// the lowest nonvanishing monomial coefficients from the top). Shared
    /// affine roots make it vanish; roots at infinity do not participate.
    pub fn resultant(&self, other: &BinaryForm) -> Result<Q> {
        let u = self.dehomogenize();
        let v = other.dehomogenize();
        if u.is_zero() || v.is_zero() {
            return Err(Error::ZeroForm);
        }
        Ok(univariate::resultant(&u, &v))
    }
}

/// Isolated real projective roots of a form.
#[derive(Clone, Debug)]
pub struct RootIsolation {
    /// Affine roots, ascending, pairwise disjoint.
    pub affine: Vec<Isolated>,
    /// Whether (1 : 0) is a root.
    pub at_infinity: bool,
}

impl RootIsolation {
    pub fn count(&self) -> usize {
        self.affine.len() + usize::from(self.at_infinity)
    }
}

fn helper_coeff_strings(f: &BinaryForm) -> Vec<String> {
    f.normalized_coeffs().iter().map(q_to_string).collect()
}

impl Serialize for BinaryForm {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            degree: usize,
            basis: Basis,
            coeffs: Vec<String>,
        }
        Repr {
            degree: self.degree,
            basis: Basis::Normalized,
            coeffs: helper_coeff_strings(self),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for BinaryForm {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            degree: usize,
            basis: Basis,
            coeffs: Vec<String>,
        }
        let repr = Repr::deserialize(deserializer)?;
        let coeffs = repr
            .coeffs
            .iter()
            .map(|s| q_from_string(s))
            .collect::<std::result::Result<Vec<Q>, String>>()
            .map_err(D::Error::custom)?;
        BinaryForm::new(repr.degree, coeffs, repr.basis).map_err(D::Error::custom)
    }
}

/// A point on the real projective line, stored in canonical coordinates:
/// (a, 1) for affine points and (1, 0) for the point at infinity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectivePoint {
    alpha: Q,
    beta: Q,
}

impl ProjectivePoint {
    pub fn new(alpha: Q, beta: Q) -> Result<Self> {
        if beta.is_zero() {
            if alpha.is_zero() {
                return Err(Error::InvalidPoint);
            }
            Ok(ProjectivePoint {
                alpha: Q::one(),
                beta: Q::zero(),
            })
        } else {
            Ok(ProjectivePoint {
                alpha: alpha / &beta,
                beta: Q::one(),
            })
        }
    }

    pub fn affine(rho: Q) -> Self {
        ProjectivePoint {
            alpha: rho,
            beta: Q::one(),
        }
    }

    pub fn infinity() -> Self {
        ProjectivePoint {
            alpha: Q::one(),
            beta: Q::zero(),
        }
    }

    pub fn is_infinity(&self) -> bool {
        self.beta.is_zero()
    }

    pub fn alpha(&self) -> &Q {
        &self.alpha
    }

    pub fn beta(&self) -> &Q {
        &self.beta
    }

    /// The linear form vanishing at this point: beta*x - alpha*y.
    pub fn vanishing_factor(&self) -> BinaryForm {
        BinaryForm {
            degree: 1,
            norm: vec![-self.alpha.clone(), self.beta.clone()],
        }
    }

    /// (alpha*x + beta*y)^d, the degree-d power supported at this point.
    pub fn power_form(&self, degree: usize) -> BinaryForm {
        BinaryForm::pure_power(&self.alpha, &self.beta, degree)
    }
}

impl Serialize for ProjectivePoint {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            alpha: String,
            beta: String,
        }
        Repr {
            alpha: q_to_string(&self.alpha),
            beta: q_to_string(&self.beta),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ProjectivePoint {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            alpha: String,
            beta: String,
        }
        let repr = Repr::deserialize(deserializer)?;
        let alpha = q_from_string(&repr.alpha).map_err(D::Error::custom)?;
        let beta = q_from_string(&repr.beta).map_err(D::Error::custom)?;
        ProjectivePoint::new(alpha, beta).map_err(D::Error::custom)
    }
}

/// A squarefree form given by its factorization into distinct real points and
/// distinct definite quadratics: the constructor is the only way to build one,
/// so the factorization is trusted downstream.
#[derive(Clone, Debug, Serialize)]
pub struct PointSetForm {
    form: BinaryForm,
    points: Vec<ProjectivePoint>,
    quadratics: Vec<(String, String)>,
    #[serde(skip)]
    quads: Vec<(Q, Q)>,
}

impl PointSetForm {
    pub fn form(&self) -> &BinaryForm {
        &self.form
    }

    pub fn degree(&self) -> usize {
        self.form.degree()
    }

    pub fn points(&self) -> &[ProjectivePoint] {
        &self.points
    }

    pub fn quadratics(&self) -> &[(Q, Q)] {
        &self.quads
    }

    pub fn real_root_count(&self) -> usize {
        self.points.len()
    }
}

impl<'de> Deserialize<'de> for PointSetForm {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            points: Vec<ProjectivePoint>,
            quadratics: Vec<(String, String)>,
        }
        let repr = Repr::deserialize(deserializer)?;
        let quads = repr
            .quadratics
            .iter()
            .map(|(b, c)| {
                Ok((
                    q_from_string(b).map_err(D::Error::custom)?,
                    q_from_string(c).map_err(D::Error::custom)?,
                ))
            })
            .collect::<std::result::Result<Vec<(Q, Q)>, D::Error>>()?;
        make_pointset(repr.points, quads).map_err(D::Error::custom)
    }
}

/// Builds the squarefree form with the given distinct real roots and definite
/// quadratic factors x^2 + b*xy + c*y^2 (each requiring b^2 - 4c < 0).
pub fn make_pointset(points: Vec<ProjectivePoint>, quadratics: Vec<(Q, Q)>) -> Result<PointSetForm> {
    if points.is_empty() && quadratics.is_empty() {
        return Err(Error::BadArgument("empty point set".into()));
    }
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            if points[i] == points[j] {
                return Err(Error::RepeatedPoint);
            }
        }
    }
    let four = q_int(4);
    for (b, c) in &quadratics {
        if &(b * b) - &(&four * c) >= Q::zero() {
            return Err(Error::IndefiniteQuadratic {
                b: q_to_string(b),
                c: q_to_string(c),
            });
        }
    }
    for i in 0..quadratics.len() {
        for j in i + 1..quadratics.len() {
            if quadratics[i] == quadratics[j] {
                return Err(Error::RepeatedQuadratic);
            }
        }
    }
    let mut form = BinaryForm::new(0, vec![Q::one()], Basis::Monomial)?;
    for p in &points {
        form = form.mul(&p.vanishing_factor());
    }
    for (b, c) in &quadratics {
        let quad = BinaryForm::new(2, vec![c.clone(), b.clone(), Q::one()], Basis::Monomial)?;
        form = form.mul(&quad);
    }
    let quadratics_str = quadratics
        .iter()
        .map(|(b, c)| (q_to_string(b), q_to_string(c)))
        .collect();
    Ok(PointSetForm {
        form,
        points,
        quadratics: quadratics_str,
        quads: quadratics,
    })
}

/// Seeded random form: monomial coefficients drawn from `dist` with
/// denominators 2^20, deterministic for a given (degree, dist, seed) across
/// platforms. An all-zero draw is redrawn from the same stream, so the result
/// is never the zero form. Requires degree >= 1.
pub fn random_form(degree: usize, dist: Distribution, seed: u64) -> Result<BinaryForm> {
    random_form_granular(degree, dist, seed, GRANULARITY_BITS)
}

/// `random_form` with explicit granularity (numerator bound 2^bits).
pub fn random_form_granular(
    degree: usize,
    dist: Distribution,
    seed: u64,
    bits: u32,
) -> Result<BinaryForm> {
    if degree == 0 {
        return Err(Error::BadArgument("random forms need degree >= 1".into()));
    }
    if bits == 0 || bits > 40 {
        return Err(Error::BadArgument("granularity bits must be in 1..=40".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bound = 1i64 << bits;
    let denom = Q::from_integer(bound.into());
    loop {
        let coeffs: Vec<Q> = (0..=degree)
            .map(|_| {
                let draws = match dist {
                    Distribution::Uniform => 1,
                    Distribution::GaussApprox => 12,
                };
                let mut numer = 0i64;
                for _ in 0..draws {
                    numer += rng.random_range(-bound..=bound);
                }
                Q::from_integer(numer.into()) / &denom
            })
            .collect();
        if coeffs.iter().any(|c| !c.is_zero()) {
            return BinaryForm::new(degree, coeffs, Basis::Monomial);
        }
    }
}
