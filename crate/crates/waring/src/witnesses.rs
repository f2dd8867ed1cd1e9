//! Certified constructions of forms with prescribed real rank. Each of the
//! four families returns the form together with its rank certificate, the
//! construction parameters, and the full list of hypothesis checks that make
//! the construction sound; every check runs in exact arithmetic during
//! construction, fails loudly, and can be re-run later from the serialized
//! output alone via [`WitnessForm::verify`].
//!
//! The families (d the degree, m = (d-1)/2 for odd d):
//! - [`witness_hyperbolic`]: d distinct real roots, real rank exactly d;
//! - [`witness_generic_span`]: odd d, complex and real rank both m+1, the
//!   generic situation, supported on a drawn hyperbolic form of degree m+1;
//! - [`witness_intersection`]: odd d, complex rank m+1 evinced only by a
//!   support with complex points, so the real rank is m+2: a certified
//!   strict gap between the two ranks;
//! - [`witness_dminus1`]: any d >= 5, real rank exactly d-1, built by
//!   lifting a hyperbolic form of degree d-1 through an antiderivative and
//!   pushing the lift off the hyperbolic locus with a large multiple of y^d.

use serde::{Deserialize, Serialize};

use crate::apolarity::{annihilator_space, apolar_kernel, contract};
use crate::error::{Error, Result};
use crate::forms::{make_pointset, Basis, BinaryForm, PointSetForm, ProjectivePoint, GRANULARITY_BITS};
use crate::hypdecide::{decide, Verdict, DEFAULT_TRIALS};
use crate::linalg::ExactMatrix;
use crate::rank::{
    assemble, complex_rank, rank_certificate, Direction, Evidence, ExclusionKind, RankCertificate,
};
use crate::rat::{q, q_int, q_pow, Q};
use crate::seeds::{derive_seed, TAG_SEARCH, TAG_WITNESS};
use crate::SCHEMA_VERSION;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Which construction produced a witness.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    HyperbolicD,
    GenericSpan,
    Intersection,
    Dminus1Family,
}

/// One named boolean hypothesis, recorded with the value it took during
/// construction.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HypothesisCheck {
    pub name: String,
    pub passed: bool,
}

/// Construction inputs recorded for audit. Fields a family does not use are
/// omitted from the JSON.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct ConstructionParams {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub attempts: Option<u32>,
    /// Roots of a drawn product of linear factors (hyperbolic family).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<Vec<ProjectivePoint>>,
    /// Directions b_i of the lifted powers (x + b_i y)^d (rank d-1 family).
    #[serde(
        default,
        skip_serializing_if = "Option::is_none",
        with = "crate::rat::qstr_vec_opt"
    )]
    pub directions: Option<Vec<Q>>,
    /// Combination coefficients: of the annihilator basis (generic span) or
    /// of the lifted powers (rank d-1 family).
    #[serde(
        default,
        skip_serializing_if = "Option::is_none",
        with = "crate::rat::qstr_vec_opt"
    )]
    pub coefficients: Option<Vec<Q>>,
    /// The hyperbolic degree d-1 form equal to sum c_i (x + b_i y)^(d-1)
    /// (rank d-1 family); the witness's x-derivative is d times this.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base: Option<BinaryForm>,
    /// Multiple of y^d added to push the lift off the hyperbolic locus.
    #[serde(
        default,
        skip_serializing_if = "Option::is_none",
        with = "crate::rat::qstr_opt"
    )]
    pub shift: Option<Q>,
    /// All critical points of the lift's affine part lie in
    /// [-window, window].
    #[serde(
        default,
        skip_serializing_if = "Option::is_none",
        with = "crate::rat::qstr_opt"
    )]
    pub window: Option<Q>,
    /// Upper bound for the affine part's magnitude on [-window, window]; any
    /// shift beyond it leaves at most two affine real roots.
    #[serde(
        default,
        skip_serializing_if = "Option::is_none",
        with = "crate::rat::qstr_opt"
    )]
    pub height_bound: Option<Q>,
    /// Generator of the target-degree apolar kernel, carrying a definite
    /// quadratic factor (intersection family).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kernel_support: Option<PointSetForm>,
    /// Hyperbolic support certifying the upper bound (generic span and
    /// intersection families).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub real_support: Option<PointSetForm>,
}

/// A constructed form with certified rank and the audit trail justifying it.
/// `complex_rank`/`real_rank` restate what the embedded certificate proves;
/// [`WitnessForm::verify`] re-derives everything from scratch.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WitnessForm {
    pub schema: u32,
    pub provenance: Provenance,
    pub form: BinaryForm,
    pub complex_rank: u32,
    pub real_rank: u32,
    pub certificate: RankCertificate,
    pub checked_hypotheses: Vec<HypothesisCheck>,
    pub params: ConstructionParams,
}

/// Accumulates named hypothesis checks; the first failed check aborts the
/// construction with `HypothesisFailed` naming it.
struct Checks(Vec<HypothesisCheck>);

impl Checks {
    fn new() -> Self {
        Checks(Vec::new())
    }

    fn require(&mut self, name: &str, passed: bool) -> Result<()> {
        self.0.push(HypothesisCheck {
            name: name.into(),
            passed,
        });
        if passed {
            Ok(())
        } else {
            Err(Error::HypothesisFailed(name.into()))
        }
    }
}

/// Draws `count` distinct rationals k/4 with |k| <= max(2*count, 6). The
/// coarse spacing (>= 1/4 between any two draws) keeps every constructed root
/// separation far above the 2^-16 coefficient perturbations used by the
/// stability probes.
fn draw_distinct_quarters(rng: &mut ChaCha8Rng, count: usize) -> Result<Vec<Q>> {
    let span = (2 * count as i64).max(6);
    let mut out: Vec<Q> = Vec::with_capacity(count);
    let mut budget = 64 * count.max(1);
    while out.len() < count {
        if budget == 0 {
            return Err(Error::ResampleExhausted("distinct lattice roots".into()));
        }
        budget -= 1;
        let v = q(rng.random_range(-span..=span), 4);
        if !out.contains(&v) {
            out.push(v);
        }
    }
    Ok(out)
}

/// Seeded combination coefficients with denominators 2^20 (the same lattice
/// the random form draws use); redrawn while all-zero.
fn draw_granular_coeffs(rng: &mut ChaCha8Rng, n: usize) -> Vec<Q> {
    let bound = 1i64 << GRANULARITY_BITS;
    loop {
        let coeffs: Vec<Q> = (0..n)
            .map(|_| q(rng.random_range(-bound..=bound), bound))
            .collect();
        if coeffs.iter().any(|c| !c.is_zero()) {
            return coeffs;
        }
    }
}

fn all_distinct(xs: &[Q]) -> bool {
    xs.iter()
        .enumerate()
        .all(|(i, x)| xs[i + 1..].iter().all(|y| y != x))
}

/// The value of a degree-0 form.
fn scalar(f: &BinaryForm) -> Q {
    f.normalized_coeffs()[0].clone()
}

/// Rows of the linear system contract(h, .) = 0 on degree-d forms, acting on
/// normalized coefficient vectors (the same convention as
/// `annihilator_space`).
fn contraction_rows(h: &BinaryForm, d: usize) -> Vec<Vec<Q>> {
    let b = h.monomial_coeffs();
    (0..=(d - h.degree()))
        .map(|j| {
            let mut row = vec![Q::zero(); d + 1];
            for (k, bk) in b.iter().enumerate() {
                row[j + k] = bk.clone();
            }
            row
        })
        .collect()
}

/// Solves sum_i c_i cols[i] = target exactly via the normal equations,
/// confirming the solution reproduces the target; None when the system is
/// singular or inconsistent.
fn solve_exact_combination(cols: &[Vec<Q>], target: &[Q]) -> Option<Vec<Q>> {
    fn dot(a: &[Q], b: &[Q]) -> Q {
        a.iter().zip(b).map(|(x, y)| x * y).sum()
    }
    let n = cols.len();
    let mut normal = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            normal.push(dot(&cols[i], &cols[j]));
        }
    }
    let rhs: Vec<Q> = cols.iter().map(|c| dot(c, target)).collect();
    let sol = ExactMatrix::new(n, n, normal).solve(&rhs)?;
    for (row, t) in target.iter().enumerate() {
        let mut acc = Q::zero();
        for (i, c) in sol.iter().enumerate() {
            acc += c * &cols[i][row];
        }
        if &acc != t {
            return None;
        }
    }
    Some(sol)
}

fn product_of_factors(points: &[ProjectivePoint]) -> BinaryForm {
    let mut acc = BinaryForm::new(0, vec![Q::one()], Basis::Monomial).expect("unit form");
    for p in points {
        acc = acc.mul(&p.vanishing_factor());
    }
    acc
}

/// A form with `degree` distinct seeded rational roots: the maximal-rank
/// family, real rank exactly `degree`. Requires degree >= 3.
pub fn witness_hyperbolic(degree: usize, seed: u64) -> Result<WitnessForm> {
    if degree < 3 {
        return Err(Error::BadArgument(
            "hyperbolic witnesses need degree >= 3".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, TAG_WITNESS));
    let roots = draw_distinct_quarters(&mut rng, degree)?;
    let distinct = all_distinct(&roots);
    let points: Vec<ProjectivePoint> = roots.into_iter().map(ProjectivePoint::affine).collect();
    let f = product_of_factors(&points);

    let mut checks = Checks::new();
    checks.require("roots_distinct", distinct)?;
    checks.require("form_hyperbolic", f.is_hyperbolic()?)?;
    let certificate = rank_certificate(&f, DEFAULT_TRIALS, seed)?;
    checks.require(
        "certificate_exact_degree",
        certificate.exact && certificate.real_lo == degree as u32,
    )?;
    certificate.verify()?;
    checks.require("certificate_verifies", true)?;

    Ok(WitnessForm {
        schema: SCHEMA_VERSION,
        provenance: Provenance::HyperbolicD,
        form: f,
        complex_rank: certificate.complex_rank,
        real_rank: degree as u32,
        certificate,
        checked_hypotheses: checks.0,
        params: ConstructionParams {
            seed: Some(seed),
            attempts: Some(1),
            points: Some(points),
            ..ConstructionParams::default()
        },
    })
}

/// For odd d = 2m+1: a form whose complex and real ranks are both m+1, the
/// generic situation. Draws a hyperbolic support s of degree m+1 and a seeded
/// combination f of the forms annihilated by s, then checks exactly that the
/// apolar kernels of f below degree m+1 are trivial (so neither rank can be
/// smaller) while s itself certifies the upper bound. Any failed check moves
/// to the next attempt, up to 10.
pub fn witness_generic_span(degree: usize, seed: u64) -> Result<WitnessForm> {
    if degree < 5 || degree % 2 == 0 {
        return Err(Error::BadArgument(
            "generic span witnesses need odd degree >= 5".into(),
        ));
    }
    let m = (degree - 1) / 2;
    for attempt in 0..10u32 {
        match generic_span_attempt(degree, m, seed, attempt) {
            Ok(w) => return Ok(w),
            Err(Error::HypothesisFailed(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::ResampleExhausted(
        "generic span witness after 10 attempts".into(),
    ))
}

fn generic_span_attempt(degree: usize, m: usize, seed: u64, attempt: u32) -> Result<WitnessForm> {
    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, TAG_WITNESS + attempt as u64));
    let roots = draw_distinct_quarters(&mut rng, m + 1)?;
    let points: Vec<ProjectivePoint> = roots.into_iter().map(ProjectivePoint::affine).collect();
    let support = make_pointset(points, vec![])?;
    let space = annihilator_space(support.form(), degree)?;
    let coefficients = draw_granular_coeffs(&mut rng, space.dim());
    let f = space.element(&coefficients)?;

    let mut checks = Checks::new();
    checks.require("support_hyperbolic", support.form().is_hyperbolic()?)?;
    checks.require("support_apolar", contract(support.form(), &f)?.is_zero())?;
    let mut trivial = true;
    for r in 1..=m {
        if apolar_kernel(&f, r)?.dim() != 0 {
            trivial = false;
            break;
        }
    }
    checks.require("kernel_trivial_below_target", trivial)?;
    checks.require("form_squarefree", f.is_squarefree()?)?;

    let (csr, complex_item) = complex_rank(&f)?;
    checks.require("complex_rank_matches", csr == (m + 1) as u32)?;

    let mut evidence = vec![complex_item, Evidence::ComplexBound];
    for r in 1..=m as u32 {
        evidence.push(Evidence::Excluded {
            r,
            by: ExclusionKind::TrivialKernel,
        });
    }
    evidence.push(Evidence::UpperWitness {
        r: (m + 1) as u32,
        witness: support.form().clone(),
    });
    let certificate = assemble(&f, csr, evidence, false)?;
    certificate.verify()?;
    checks.require("certificate_verifies", true)?;

    Ok(WitnessForm {
        schema: SCHEMA_VERSION,
        provenance: Provenance::GenericSpan,
        form: f,
        complex_rank: csr,
        real_rank: (m + 1) as u32,
        certificate,
        checked_hypotheses: checks.0,
        params: ConstructionParams {
            seed: Some(seed),
            attempts: Some(attempt + 1),
            coefficients: Some(coefficients),
            real_support: Some(support),
            ..ConstructionParams::default()
        },
    })
}

/// For odd d = 2m+1 and a chosen pair (w, s): w a squarefree form of degree
/// m+1 with at least one definite quadratic factor, s a hyperbolic form of
/// degree m+2, sharing no root with w. The stacked linear system
/// {contract(w, .) = 0, contract(s, .) = 0} on degree-d forms has d equations
/// in d+1 unknowns; when its kernel is one-dimensional (checked), the kernel
/// form f has complex rank m+1 evinced only by w's partly-complex support,
/// while every real decomposition needs m+2 powers: a certified strict gap
/// between complex and real rank.
///
/// Every hypothesis is checked exactly; a failure aborts with
/// `HypothesisFailed` naming the check, and the caller varies w and s.
pub fn witness_intersection(
    degree: usize,
    w: &PointSetForm,
    s: &PointSetForm,
) -> Result<WitnessForm> {
    if degree < 5 || degree % 2 == 0 {
        return Err(Error::BadArgument(
            "intersection witnesses need odd degree >= 5".into(),
        ));
    }
    let m = (degree - 1) / 2;
    if w.degree() != m + 1 {
        return Err(Error::Precondition(format!(
            "w must have degree {} for degree {degree}, got {}",
            m + 1,
            w.degree()
        )));
    }
    if w.quadratics().is_empty() {
        return Err(Error::Precondition(
            "w needs at least one definite quadratic factor".into(),
        ));
    }
    if s.degree() != m + 2 {
        return Err(Error::Precondition(format!(
            "s must have degree {} for degree {degree}, got {}",
            m + 2,
            s.degree()
        )));
    }
    if !s.form().is_hyperbolic()? {
        return Err(Error::Precondition("s must be hyperbolic".into()));
    }
    let shared_affine = crate::univariate::QPoly::gcd(
        &w.form().dehomogenize(),
        &s.form().dehomogenize(),
    )
    .degree()
        != Some(0);
    let shared_infinity =
        w.form().infinity_multiplicity()? > 0 && s.form().infinity_multiplicity()? > 0;
    if shared_affine || shared_infinity {
        return Err(Error::Precondition("w and s must share no root".into()));
    }

    let mut rows = contraction_rows(w.form(), degree);
    rows.extend(contraction_rows(s.form(), degree));
    let kernel_vecs = ExactMatrix::from_rows(rows).kernel_vectors();

    let mut checks = Checks::new();
    checks.require("intersection_dimension_one", kernel_vecs.len() == 1)?;
    let f = BinaryForm::new(
        degree,
        kernel_vecs.into_iter().next().expect("one kernel vector"),
        Basis::Normalized,
    )?;

    let mut trivial = true;
    for r in 1..=m {
        if apolar_kernel(&f, r)?.dim() != 0 {
            trivial = false;
            break;
        }
    }
    checks.require("kernel_trivial_below_target", trivial)?;
    let target = apolar_kernel(&f, m + 1)?;
    checks.require(
        "kernel_at_target_spans_support",
        target.dim() == 1 && target.basis()[0].proportional(w.form()),
    )?;
    checks.require("kernel_support_not_hyperbolic", !w.form().is_hyperbolic()?)?;
    checks.require("real_support_apolar", contract(s.form(), &f)?.is_zero())?;
    checks.require("real_support_hyperbolic", s.form().is_hyperbolic()?)?;
    checks.require("form_squarefree", f.is_squarefree()?)?;

    let (csr, complex_item) = complex_rank(&f)?;
    checks.require("complex_rank_matches", csr == (m + 1) as u32)?;

    let mut evidence = vec![complex_item, Evidence::ComplexBound];
    for r in 1..=m as u32 {
        evidence.push(Evidence::Excluded {
            r,
            by: ExclusionKind::TrivialKernel,
        });
    }
    evidence.push(Evidence::Excluded {
        r: (m + 1) as u32,
        by: ExclusionKind::GeneratorNotHyperbolic,
    });
    evidence.push(Evidence::UpperWitness {
        r: (m + 2) as u32,
        witness: s.form().clone(),
    });
    let certificate = assemble(&f, csr, evidence, false)?;
    certificate.verify()?;
    checks.require("certificate_verifies", true)?;

    Ok(WitnessForm {
        schema: SCHEMA_VERSION,
        provenance: Provenance::Intersection,
        form: f,
        complex_rank: (m + 1) as u32,
        real_rank: (m + 2) as u32,
        certificate,
        checked_hypotheses: checks.0,
        params: ConstructionParams {
            kernel_support: Some(w.clone()),
            real_support: Some(s.clone()),
            ..ConstructionParams::default()
        },
    })
}

/// Ready-made (w, s) inputs for [`witness_intersection`] at odd degrees: w
/// takes the roots 1..m-1 plus the definite quadratic x^2 + y^2, s takes the
/// m+2 roots 0, -1, ..., disjoint from w's.
pub fn default_intersection_pair(degree: usize) -> Result<(PointSetForm, PointSetForm)> {
    if degree < 5 || degree % 2 == 0 {
        return Err(Error::BadArgument(
            "intersection pairs need odd degree >= 5".into(),
        ));
    }
    let m = (degree - 1) as i64 / 2;
    let w_points: Vec<ProjectivePoint> = (1..=(m - 1))
        .map(|k| ProjectivePoint::affine(q_int(k)))
        .collect();
    let w = make_pointset(w_points, vec![(Q::zero(), Q::one())])?;
    let s_points: Vec<ProjectivePoint> = (0..(m + 2))
        .map(|k| ProjectivePoint::affine(q_int(-k)))
        .collect();
    let s = make_pointset(s_points, vec![])?;
    Ok((w, s))
}

/// For d >= 5: a form of real rank exactly d-1.
///
/// Strategy: draw d-1 distinct directions L_i = x + b_i y (never proportional
/// to y) and a hyperbolic base of degree d-1 inside span{L_i^(d-1)}; the span
/// membership is a single linear condition, so all but one root of the base
/// are drawn freely and the last is solved for. The exact combination
/// base = sum c_i L_i^(d-1) then lifts to
///
///   g = sum c_i L_i^d + shift * y^d,
///
/// whose x-derivative is d * base: hyperbolic of degree d-1, which forces
/// real rank >= d-1 (differentiating any decomposition of g termwise
/// presents d * base with the same number of powers). The shift is chosen
/// past an exact height bound so g keeps at most two affine real roots,
/// hence is not hyperbolic, capping the rank at d-1.
pub fn witness_dminus1(degree: usize, seed: u64) -> Result<WitnessForm> {
    if degree < 5 {
        return Err(Error::BadArgument(
            "rank d-1 witnesses need degree >= 5".into(),
        ));
    }
    for attempt in 0..32u32 {
        match dminus1_attempt(degree, seed, attempt) {
            Ok(w) => return Ok(w),
            Err(Error::HypothesisFailed(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::ResampleExhausted(
        "rank d-1 witness after 32 attempts".into(),
    ))
}

fn dminus1_attempt(degree: usize, seed: u64, attempt: u32) -> Result<WitnessForm> {
    let d = degree;
    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, TAG_WITNESS + attempt as u64));
    let directions = draw_distinct_quarters(&mut rng, d - 1)?;
    let sigma = draw_distinct_quarters(&mut rng, d - 2)?;

    // span{(x + b_i y)^(d-1)} is exactly the kernel of contract(k, .) with
    // k = prod_i (b_i x - y), since k vanishes at every direction point.
    let mut k = BinaryForm::new(0, vec![Q::one()], Basis::Monomial)?;
    for b in &directions {
        k = k.mul(&BinaryForm::new(
            1,
            vec![-Q::one(), b.clone()],
            Basis::Monomial,
        )?);
    }

    // base(t) = (x - t y) * prod_j (x - sigma_j y); containment in the span
    // is linear in t, so interpolate from t = 0 and t = 1.
    let mut fixed = BinaryForm::new(0, vec![Q::one()], Basis::Monomial)?;
    for s in &sigma {
        fixed = fixed.mul(&ProjectivePoint::affine(s.clone()).vanishing_factor());
    }
    let at0 = BinaryForm::new(1, vec![Q::zero(), Q::one()], Basis::Monomial)?.mul(&fixed);
    let at1 = ProjectivePoint::affine(Q::one())
        .vanishing_factor()
        .mul(&fixed);
    let val0 = scalar(&contract(&k, &at0)?);
    let slope = scalar(&contract(&k, &at1)?) - &val0;
    if slope.is_zero() {
        return Err(Error::HypothesisFailed(
            "span constraint degenerate in the last root".into(),
        ));
    }
    let t_star = -val0 / slope;
    // Keep the solved root well separated and moderate so the stability
    // probes' perturbations cannot merge roots of the derivative.
    let quarter = q(1, 4);
    if t_star.abs() > q_int(8) || sigma.iter().any(|s| (s - &t_star).abs() < quarter) {
        return Err(Error::HypothesisFailed(
            "solved root too close to a fixed root".into(),
        ));
    }
    let base = ProjectivePoint::affine(t_star)
        .vanishing_factor()
        .mul(&fixed);

    let cols: Vec<Vec<Q>> = directions
        .iter()
        .map(|b| BinaryForm::pure_power(&Q::one(), b, d - 1).normalized_coeffs().to_vec())
        .collect();
    let coefficients = solve_exact_combination(&cols, base.normalized_coeffs())
        .ok_or_else(|| Error::HypothesisFailed("power basis solve failed".into()))?;

    let mut powers = BinaryForm::zero(d);
    for (c, b) in coefficients.iter().zip(&directions) {
        powers = powers.add(&BinaryForm::pure_power(&Q::one(), b, d).scale(c))?;
    }

    // Threshold: all critical points of the affine part u lie inside
    // [-window, window] (window exceeds the Cauchy root bound of u'), and
    // |u| <= height there, so adding any shift > height leaves at most one
    // root on each monotone tail and none inside the window.
    let u = powers.dehomogenize();
    let window = Q::one() + u.derivative().cauchy_bound();
    let height: Q = u
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, a)| a.abs() * q_pow(&window, i))
        .sum();
    let mut shift = height.clone() + Q::one();

    let y_power = BinaryForm::pure_power(&Q::zero(), &Q::one(), d);
    let mut g = powers.add(&y_power.scale(&shift))?;
    let mut bumps = 0;
    while !g.is_squarefree()? {
        // Only finitely many shifts give a repeated root; larger shifts keep
        // the threshold argument valid.
        bumps += 1;
        if bumps > 32 {
            return Err(Error::ResampleExhausted("squarefree shift bump".into()));
        }
        shift += Q::one();
        g = powers.add(&y_power.scale(&shift))?;
    }

    let mut checks = Checks::new();
    checks.require("lift_directions_distinct", all_distinct(&directions))?;
    checks.require("base_in_power_span", scalar(&contract(&k, &base)?).is_zero())?;
    checks.require("base_hyperbolic", base.is_hyperbolic()?)?;
    checks.require(
        "derivative_matches_base",
        g.x_derivative()? == base.scale(&q_int(d as i64)),
    )?;
    checks.require("shift_exceeds_height_bound", shift > height)?;
    checks.require("affine_roots_at_most_two", g.sturm_count(None)? <= 2)?;
    checks.require("form_squarefree", g.is_squarefree()?)?;
    checks.require("form_not_hyperbolic", !g.is_hyperbolic()?)?;

    let (csr, complex_item) = complex_rank(&g)?;
    let mut evidence = vec![
        complex_item,
        Evidence::ComplexBound,
        Evidence::NonhyperbolicCap {
            bound: (d - 1) as u32,
        },
        Evidence::DerivativeHyperbolic {
            direction: Direction::X,
        },
    ];
    // The certificate is already exact; attach an independent hyperbolic
    // apolar witness too when a short search finds one.
    let space = apolar_kernel(&g, d - 1)?;
    if space.dim() > 0 {
        let dec = decide(
            &space,
            DEFAULT_TRIALS,
            derive_seed(seed, TAG_SEARCH + (d - 1) as u64),
        )?;
        if dec.verdict == Verdict::Exists {
            if let Some(h) = dec.witness {
                evidence.push(Evidence::UpperWitness {
                    r: (d - 1) as u32,
                    witness: h,
                });
            }
        }
    }
    let certificate = assemble(&g, csr, evidence, false)?;
    certificate.verify()?;
    checks.require("certificate_verifies", true)?;

    Ok(WitnessForm {
        schema: SCHEMA_VERSION,
        provenance: Provenance::Dminus1Family,
        form: g,
        complex_rank: csr,
        real_rank: (d - 1) as u32,
        certificate,
        checked_hypotheses: checks.0,
        params: ConstructionParams {
            seed: Some(seed),
            attempts: Some(attempt + 1),
            directions: Some(directions),
            coefficients: Some(coefficients),
            base: Some(base),
            shift: Some(shift),
            window: Some(window),
            height_bound: Some(height),
            ..ConstructionParams::default()
        },
    })
}

impl WitnessForm {
    /// Full audit from the serialized data alone: schema, recorded hypothesis
    /// values, certificate re-verification, agreement between the recorded
    /// ranks and what the certificate proves, and a family-specific
    /// reconstruction from the recorded parameters.
    pub fn verify(&self) -> Result<()> {
        if self.schema != SCHEMA_VERSION {
            return Err(Error::SchemaVersion(self.schema));
        }
        for check in &self.checked_hypotheses {
            if !check.passed {
                return Err(Error::VerifyFailed(format!(
                    "recorded hypothesis {} is false",
                    check.name
                )));
            }
        }
        self.certificate.verify()?;
        if self.certificate.form != self.form {
            return Err(Error::VerifyFailed(
                "certificate form differs from witness form".into(),
            ));
        }
        if !(self.certificate.exact && self.certificate.real_lo == self.real_rank) {
            return Err(Error::VerifyFailed(
                "certificate does not certify the recorded real rank".into(),
            ));
        }
        if self.certificate.complex_rank != self.complex_rank {
            return Err(Error::VerifyFailed(
                "certificate complex rank differs from the recorded one".into(),
            ));
        }
        match self.provenance {
            Provenance::HyperbolicD => self.verify_hyperbolic(),
            Provenance::GenericSpan => self.verify_generic_span(),
            Provenance::Intersection => self.verify_intersection(),
            Provenance::Dminus1Family => self.verify_dminus1(),
        }
    }

    fn param<'a, T>(field: &'a Option<T>, name: &str) -> Result<&'a T> {
        field
            .as_ref()
            .ok_or_else(|| Error::VerifyFailed(format!("missing construction parameter {name}")))
    }

    fn verify_hyperbolic(&self) -> Result<()> {
        let points = Self::param(&self.params.points, "points")?;
        if points.len() != self.form.degree() {
            return Err(Error::VerifyFailed(
                "point count differs from the degree".into(),
            ));
        }
        if product_of_factors(points) != self.form {
            return Err(Error::VerifyFailed(
                "recorded points do not rebuild the form".into(),
            ));
        }
        if self.real_rank != self.form.degree() as u32 {
            return Err(Error::VerifyFailed(
                "hyperbolic witness must have real rank equal to its degree".into(),
            ));
        }
        Ok(())
    }

    fn verify_generic_span(&self) -> Result<()> {
        let d = self.form.degree();
        if d < 5 || d % 2 == 0 {
            return Err(Error::VerifyFailed(
                "generic span witnesses have odd degree >= 5".into(),
            ));
        }
        let m = (d - 1) / 2;
        let support = Self::param(&self.params.real_support, "real_support")?;
        let coefficients = Self::param(&self.params.coefficients, "coefficients")?;
        if support.degree() != m + 1 || !support.form().is_hyperbolic()? {
            return Err(Error::VerifyFailed(
                "support is not hyperbolic of the target degree".into(),
            ));
        }
        if !contract(support.form(), &self.form)?.is_zero() {
            return Err(Error::VerifyFailed("support is not apolar".into()));
        }
        let space = annihilator_space(support.form(), d)?;
        if coefficients.len() != space.dim() || space.element(coefficients)? != self.form {
            return Err(Error::VerifyFailed(
                "recorded coefficients do not rebuild the form".into(),
            ));
        }
        if self.real_rank != (m + 1) as u32 || self.complex_rank != (m + 1) as u32 {
            return Err(Error::VerifyFailed(
                "generic span witness must have both ranks m + 1".into(),
            ));
        }
        Ok(())
    }

    fn verify_intersection(&self) -> Result<()> {
        let d = self.form.degree();
        if d < 5 || d % 2 == 0 {
            return Err(Error::VerifyFailed(
                "intersection witnesses have odd degree >= 5".into(),
            ));
        }
        let m = (d - 1) / 2;
        let w = Self::param(&self.params.kernel_support, "kernel_support")?;
        let s = Self::param(&self.params.real_support, "real_support")?;
        if w.degree() != m + 1 || w.quadratics().is_empty() || w.form().is_hyperbolic()? {
            return Err(Error::VerifyFailed(
                "kernel support must have degree m + 1 with a definite quadratic factor".into(),
            ));
        }
        if s.degree() != m + 2 || !s.form().is_hyperbolic()? {
            return Err(Error::VerifyFailed(
                "real support must be hyperbolic of degree m + 2".into(),
            ));
        }
        let mut rows = contraction_rows(w.form(), d);
        rows.extend(contraction_rows(s.form(), d));
        let kernel_vecs = ExactMatrix::from_rows(rows).kernel_vectors();
        if kernel_vecs.len() != 1 {
            return Err(Error::VerifyFailed(
                "stacked contraction kernel is not one-dimensional".into(),
            ));
        }
        let rebuilt = BinaryForm::new(d, kernel_vecs.into_iter().next().unwrap(), Basis::Normalized)?;
        if !rebuilt.proportional(&self.form) {
            return Err(Error::VerifyFailed(
                "stacked kernel does not contain the form".into(),
            ));
        }
        let target = apolar_kernel(&self.form, m + 1)?;
        if target.dim() != 1 || !target.basis()[0].proportional(w.form()) {
            return Err(Error::VerifyFailed(
                "target-degree kernel is not spanned by the kernel support".into(),
            ));
        }
        if !contract(s.form(), &self.form)?.is_zero() {
            return Err(Error::VerifyFailed("real support is not apolar".into()));
        }
        if self.complex_rank != (m + 1) as u32 || self.real_rank != (m + 2) as u32 {
            return Err(Error::VerifyFailed(
                "intersection witness must certify the strict gap (m + 1, m + 2)".into(),
            ));
        }
        Ok(())
    }

    fn verify_dminus1(&self) -> Result<()> {
        let d = self.form.degree();
        if d < 5 {
            return Err(Error::VerifyFailed(
                "rank d - 1 witnesses have degree >= 5".into(),
            ));
        }
        let directions = Self::param(&self.params.directions, "directions")?;
        let coefficients = Self::param(&self.params.coefficients, "coefficients")?;
        let base = Self::param(&self.params.base, "base")?;
        let shift = Self::param(&self.params.shift, "shift")?;
        let window = Self::param(&self.params.window, "window")?;
        let height_bound = Self::param(&self.params.height_bound, "height_bound")?;
        if directions.len() != d - 1
            || coefficients.len() != d - 1
            || !all_distinct(directions)
        {
            return Err(Error::VerifyFailed(
                "lift directions must be d - 1 distinct rationals".into(),
            ));
        }
        let mut powers = BinaryForm::zero(d);
        let mut rebuilt_base = BinaryForm::zero(d - 1);
        for (c, b) in coefficients.iter().zip(directions) {
            powers = powers.add(&BinaryForm::pure_power(&Q::one(), b, d).scale(c))?;
            rebuilt_base =
                rebuilt_base.add(&BinaryForm::pure_power(&Q::one(), b, d - 1).scale(c))?;
        }
        let y_power = BinaryForm::pure_power(&Q::zero(), &Q::one(), d);
        if powers.add(&y_power.scale(shift))? != self.form {
            return Err(Error::VerifyFailed(
                "recorded lift data do not rebuild the form".into(),
            ));
        }
        if &rebuilt_base != base {
            return Err(Error::VerifyFailed(
                "recorded coefficients do not rebuild the base".into(),
            ));
        }
        if self.form.x_derivative()? != base.scale(&q_int(d as i64)) {
            return Err(Error::VerifyFailed(
                "x-derivative of the form is not d times the base".into(),
            ));
        }
        if !base.is_hyperbolic()? {
            return Err(Error::VerifyFailed("base is not hyperbolic".into()));
        }
        // The threshold chain, rechecked with the recorded window: the window
        // must cover all critical points of the affine part u, and the shift
        // must clear the recomputed height of u on it.
        let u = powers.dehomogenize();
        if window < &u.derivative().cauchy_bound() {
            return Err(Error::VerifyFailed(
                "window does not cover the critical points of the affine part".into(),
            ));
        }
        let recomputed_height: Q = u
            .coeffs()
            .iter()
            .enumerate()
            .map(|(i, a)| a.abs() * q_pow(window, i))
            .sum();
        if height_bound < &recomputed_height || shift <= height_bound {
            return Err(Error::VerifyFailed(
                "shift does not clear the height bound on the window".into(),
            ));
        }
        if self.form.sturm_count(None)? > 2 {
            return Err(Error::VerifyFailed(
                "form has more than two affine real roots".into(),
            ));
        }
        if self.real_rank != (d - 1) as u32 {
            return Err(Error::VerifyFailed(
                "rank d - 1 witness must record real rank d - 1".into(),
            ));
        }
        Ok(())
    }
}
