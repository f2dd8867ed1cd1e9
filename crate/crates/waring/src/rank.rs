//! The rank engine: complex Waring rank via the Sylvester dichotomy, real
//! rank brackets assembled from certified evidence, exact classifiers for
//! degrees 5 and 6, the degree-7 bracket, numeric decomposition extraction,
//! and the union-support bound for uniqueness arguments.
//!
//! Every certificate is a list of evidence items, each re-checkable from the
//! form alone by exact arithmetic. The bracket [real_lo, real_hi] printed in
//! a certificate is *recomputed* from the verified items both at construction
//! and in `verify`, so the two can never drift apart.
//!
//! Evidence semantics (d = degree of f, all forms real):
//! - a hyperbolic apolar form of degree r witnesses Rsr(f) <= r (take the
//!   decomposition at its roots);
//! - conversely Rsr(f) <= r forces a hyperbolic element in the degree-r
//!   apolar kernel, so an exact no-hyperbolic-element decision at r proves
//!   Rsr(f) > r;
//! - complex rank bounds real rank from below (a real decomposition is a
//!   complex one);
//! - a squarefree f with d distinct real roots has Rsr(f) = d, and a
//!   squarefree f *without* d real roots has Rsr(f) <= d - 1;
//! - if a partial derivative of f is hyperbolic of degree d - 1, then
//!   Rsr(f) >= d - 1: differentiating a decomposition with s powers yields at
//!   most s powers of degree d - 1 presenting the derivative, whose rank is
//!   exactly d - 1 by the distinct-real-roots characterization.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::apolarity::{apolar_kernel, contract, FormSubspace};
use crate::error::{Error, Result};
use crate::forms::BinaryForm;
use crate::hypdecide::{decide, decide_dim2, Verdict};
use crate::rat::{binomial, q_int, q_pow, q_pow2_neg, Q};
use crate::seeds::{derive_seed, TAG_SEARCH};
use crate::univariate::refine_root;
use crate::SCHEMA_VERSION;
use num_traits::{Signed, Zero};

/// Coordinate direction of a partial derivative.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    X,
    Y,
}

/// Why degree r is excluded (no hyperbolic apolar form of degree r exists,
/// hence Rsr > r). All three kinds are exact decisions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExclusionKind {
    /// The degree-r apolar kernel is zero.
    TrivialKernel,
    /// The kernel is a line whose generator is not hyperbolic.
    GeneratorNotHyperbolic,
    /// The kernel is a pencil and the exact pencil decision says no element
    /// is hyperbolic.
    PencilNotExists,
}

/// One re-checkable piece of a rank certificate.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Evidence {
    /// Sylvester data: r0 is the least degree with a nonzero apolar kernel,
    /// kernel_dim its dimension. A squarefree kernel element certifies
    /// Csr = r0; its certified absence forces Csr = d - r0 + 2.
    Complex {
        r0: u32,
        kernel_dim: u32,
        squarefree_witness: Option<BinaryForm>,
    },
    /// Csr <= Rsr, so the complex rank is a lower bound on real_lo.
    ComplexBound,
    /// Exact exclusion at degree r: Rsr > r.
    Excluded { r: u32, by: ExclusionKind },
    /// Hyperbolic h of degree r with contract(h, f) = 0: Rsr <= r.
    UpperWitness { r: u32, witness: BinaryForm },
    /// f itself has d distinct real roots: Rsr = d exactly.
    HyperbolicInput,
    /// f squarefree without d distinct real roots: Rsr <= bound = d - 1.
    NonhyperbolicCap { bound: u32 },
    /// The partial derivative of f in this direction is hyperbolic of degree
    /// d - 1, so Rsr >= d - 1 (see module docs).
    DerivativeHyperbolic { direction: Direction },
    /// A witness search at degree r ran out of trials: no claim either way.
    Inconclusive { r: u32 },
}

/// Certified rank data for one form. `real_lo`/`real_hi` always come from
/// `implied_bounds` over the evidence list; `exact` means they coincide.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RankCertificate {
    pub schema: u32,
    pub degree: u32,
    pub complex_rank: u32,
    pub real_lo: u32,
    pub real_hi: u32,
    pub exact: bool,
    /// True when the form fell outside the generic kernel-dimension stratum
    /// of its degree's classifier and was routed to the general bracket.
    #[serde(default)]
    pub nongeneric_stratum: bool,
    pub form: BinaryForm,
    pub evidence: Vec<Evidence>,
}

/// The bracket implied by an evidence list. Starts from the universal bounds
/// 1 <= Rsr <= d and tightens with each item; exclusions raise the lower
/// bound only as a contiguous chain 1..=k.
pub(crate) fn implied_bounds(degree: u32, complex_rank: u32, evidence: &[Evidence]) -> (u32, u32) {
    let d = degree;
    let mut lo = 1u32;
    let mut hi = d;
    let mut excluded = BTreeSet::new();
    for item in evidence {
        match item {
            Evidence::Complex { .. } => {}
            Evidence::ComplexBound => lo = lo.max(complex_rank),
            Evidence::Excluded { r, .. } => {
                excluded.insert(*r);
            }
            Evidence::UpperWitness { r, .. } => hi = hi.min(*r),
            Evidence::HyperbolicInput => lo = lo.max(d),
            Evidence::NonhyperbolicCap { bound } => hi = hi.min(*bound),
            Evidence::DerivativeHyperbolic { .. } => lo = lo.max(d - 1),
            Evidence::Inconclusive { .. } => {}
        }
    }
    let mut chain = 0u32;
    while excluded.contains(&(chain + 1)) {
        chain += 1;
    }
    (lo.max(chain + 1), hi)
}

/// Builds the certificate for `f` from an evidence list, recomputing the
/// bracket and checking overall consistency.
pub(crate) fn assemble(
    f: &BinaryForm,
    complex_rank: u32,
    evidence: Vec<Evidence>,
    nongeneric_stratum: bool,
) -> Result<RankCertificate> {
    let d = f.degree() as u32;
    let (lo, hi) = implied_bounds(d, complex_rank, &evidence);
    if !(complex_rank <= lo && lo <= hi && hi <= d) {
        return Err(Error::Internal(format!(
            "inconsistent rank bounds Csr={complex_rank} lo={lo} hi={hi} d={d}"
        )));
    }
    Ok(RankCertificate {
        schema: SCHEMA_VERSION,
        degree: d,
        complex_rank,
        real_lo: lo,
        real_hi: hi,
        exact: lo == hi,
        nongeneric_stratum,
        form: f.clone(),
        evidence,
    })
}

/// Exact decision: does `space` contain a squarefree element?
///
/// The discriminant of a general element sum t_i g_i is a polynomial of
/// degree 2(deg - 1) in each t_i, so it vanishes identically iff it vanishes
/// on the grid {0, ..., 2 deg - 2}^dim (a nonzero polynomial of per-variable
/// degree < n cannot vanish on an n-point-per-axis grid). The first grid
/// element found squarefree is returned; None means no squarefree element
/// exists in the whole space.
pub fn squarefree_kernel_element(space: &FormSubspace) -> Result<Option<BinaryForm>> {
    if space.dim() == 0 {
        return Err(Error::EmptySpace);
    }
    let n_vals = (2 * space.degree()).saturating_sub(1).max(2);
    let k = space.dim();
    let mut digits = vec![0usize; k];
    loop {
        // Advance the odometer; the all-zero combination is skipped.
        let mut i = 0;
        loop {
            if i == k {
                return Ok(None);
            }
            digits[i] += 1;
            if digits[i] < n_vals {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
        let coeffs: Vec<Q> = digits.iter().map(|&t| q_int(t as i64)).collect();
        let candidate = space.element(&coeffs)?;
        if candidate.is_squarefree()? {
            return Ok(Some(candidate));
        }
    }
}

/// Complex Waring rank with its dichotomy evidence.
///
/// r0 is the least degree with a nonzero apolar kernel. If the kernel
/// contains a squarefree form w then f = sum of r0 powers at the roots of w,
/// so Csr = r0; otherwise Csr = d - r0 + 2.
pub fn complex_rank(f: &BinaryForm) -> Result<(u32, Evidence)> {
    if f.is_zero() {
        return Err(Error::ZeroForm);
    }
    let d = f.degree();
    if d == 0 {
        return Err(Error::BadArgument("degree must be at least 1".into()));
    }
    for r in 1..=d {
        let space = apolar_kernel(f, r)?;
        if space.dim() == 0 {
            continue;
        }
        let witness = squarefree_kernel_element(&space)?;
        let rank = match &witness {
            Some(_) => r as u32,
            None => (d - r + 2) as u32,
        };
        let evidence = Evidence::Complex {
            r0: r as u32,
            kernel_dim: space.dim() as u32,
            squarefree_witness: witness,
        };
        return Ok((rank, evidence));
    }
    // The kernel at r = d has dimension d >= 1, so the loop always returns.
    Err(Error::Internal("no nonzero apolar kernel up to degree d".into()))
}

/// Shared tail of the bracket builders: when the bracket is still open after
/// the exclusion/search phase, a hyperbolic partial derivative pins the lower
/// bound at d - 1.
fn try_derivative_upgrade(f: &BinaryForm, evidence: &mut Vec<Evidence>) -> Result<()> {
    for (direction, derivative) in [
        (Direction::X, f.x_derivative()?),
        (Direction::Y, f.y_derivative()?),
    ] {
        if !derivative.is_zero() && derivative.is_hyperbolic()? {
            evidence.push(Evidence::DerivativeHyperbolic { direction });
            return Ok(());
        }
    }
    Ok(())
}

/// General real-rank bracket engine, any degree >= 1.
///
/// Walks r = 1, 2, ... deciding at each degree whether a hyperbolic apolar
/// form exists: exact exclusions push the lower bound up, the first witness
/// closes the upper bound. Hyperbolic inputs short-circuit to exactly d.
/// Non-hyperbolic squarefree inputs are capped at d - 1 (degree >= 3), so
/// inconclusive searches still leave a finite bracket.
pub fn real_rank_bracket(f: &BinaryForm, trials: u32, seed: u64) -> Result<RankCertificate> {
    bracket_with(f, trials, seed, false)
}

fn bracket_with(
    f: &BinaryForm,
    trials: u32,
    seed: u64,
    nongeneric_stratum: bool,
) -> Result<RankCertificate> {
    if f.is_zero() {
        return Err(Error::ZeroForm);
    }
    if !f.is_squarefree()? {
        return Err(Error::NotSquarefree);
    }
    let d = f.degree();
    let (csr, complex_evidence) = complex_rank(f)?;
    let mut evidence = vec![complex_evidence, Evidence::ComplexBound];
    if f.is_hyperbolic()? {
        evidence.push(Evidence::HyperbolicInput);
        return assemble(f, csr, evidence, nongeneric_stratum);
    }
    let cap = if d >= 3 {
        evidence.push(Evidence::NonhyperbolicCap { bound: (d - 1) as u32 });
        d - 1
    } else {
        d
    };
    for r in 1..=cap {
        let space = apolar_kernel(f, r)?;
        let dim = space.dim();
        let decision = decide(&space, trials, derive_seed(seed, TAG_SEARCH + r as u64))?;
        match decision.verdict {
            Verdict::NotExists => {
                let by = match dim {
                    0 => ExclusionKind::TrivialKernel,
                    1 => ExclusionKind::GeneratorNotHyperbolic,
                    2 => ExclusionKind::PencilNotExists,
                    n => {
                        return Err(Error::Internal(format!(
                            "exact non-existence reported in dimension {n}"
                        )))
                    }
                };
                evidence.push(Evidence::Excluded { r: r as u32, by });
            }
            Verdict::Exists => {
                let witness = decision
                    .witness
                    .ok_or_else(|| Error::Internal("EXISTS verdict without witness".into()))?;
                evidence.push(Evidence::UpperWitness { r: r as u32, witness });
                break;
            }
            Verdict::Unknown => evidence.push(Evidence::Inconclusive { r: r as u32 }),
        }
    }
    let (lo, hi) = implied_bounds(d as u32, csr, &evidence);
    if lo < hi {
        try_derivative_upgrade(f, &mut evidence)?;
    }
    assemble(f, csr, evidence, nongeneric_stratum)
}

/// Exact rank classification for squarefree quintics on the generic stratum
/// (trivial kernel at degree 2, a line at degree 3). The kernel cubic h
/// decides everything: h hyperbolic gives rank 3; otherwise rank 4, unless f
/// itself is hyperbolic, which gives rank 5. Off-stratum forms fall back to
/// the general bracket with `nongeneric_stratum` set.
pub fn classify_d5(f: &BinaryForm, trials: u32, seed: u64) -> Result<RankCertificate> {
    classify_with_stratum(f, 5, trials, seed)
}

/// Exact rank classification for squarefree sextics on the generic stratum
/// (trivial kernel at degree 3, a pencil at degree 4). The exact pencil
/// decision at degree 4 gives rank 4 on success; otherwise rank 6 for
/// hyperbolic f and rank 5 for everything else.
pub fn classify_d6(f: &BinaryForm, trials: u32, seed: u64) -> Result<RankCertificate> {
    classify_with_stratum(f, 6, trials, seed)
}

/// Rank bracket for squarefree septics on the generic stratum (trivial kernel
/// at degree 3, a line at degree 4, a 3-space at degree 5). Hyperbolic f is
/// exactly 7; a hyperbolic kernel quartic gives exactly 4; otherwise the
/// lower bound 5 is exact and a degree-5 search either lands exactly 5 or
/// leaves [5, 6].
pub fn bracket_d7(f: &BinaryForm, trials: u32, seed: u64) -> Result<RankCertificate> {
    classify_with_stratum(f, 7, trials, seed)
}

/// Common wrapper: degree gate, squarefree gate, stratum check, fallback.
fn classify_with_stratum(
    f: &BinaryForm,
    expected_degree: usize,
    trials: u32,
    seed: u64,
) -> Result<RankCertificate> {
    if f.is_zero() {
        return Err(Error::ZeroForm);
    }
    let d = f.degree();
    if d != expected_degree {
        return Err(Error::BadArgument(format!(
            "classifier expects degree {expected_degree}, got {d}"
        )));
    }
    if !f.is_squarefree()? {
        return Err(Error::NotSquarefree);
    }
    let on_stratum = match d {
        5 => apolar_kernel(f, 2)?.dim() == 0 && apolar_kernel(f, 3)?.dim() == 1,
        6 => apolar_kernel(f, 3)?.dim() == 0 && apolar_kernel(f, 4)?.dim() == 2,
        7 => {
            apolar_kernel(f, 3)?.dim() == 0
                && apolar_kernel(f, 4)?.dim() == 1
                && apolar_kernel(f, 5)?.dim() == 3
        }
        _ => unreachable!(),
    };
    if !on_stratum {
        return bracket_with(f, trials, seed, true);
    }
    let (csr, complex_evidence) = complex_rank(f)?;
    let mut evidence = vec![complex_evidence, Evidence::ComplexBound];
    match d {
        5 => {
            evidence.push(Evidence::Excluded { r: 1, by: ExclusionKind::TrivialKernel });
            evidence.push(Evidence::Excluded { r: 2, by: ExclusionKind::TrivialKernel });
            let h = apolar_kernel(f, 3)?.basis()[0].clone();
            if h.is_hyperbolic()? {
                evidence.push(Evidence::UpperWitness { r: 3, witness: h });
            } else {
                evidence.push(Evidence::Excluded {
                    r: 3,
                    by: ExclusionKind::GeneratorNotHyperbolic,
                });
                if f.is_hyperbolic()? {
                    evidence.push(Evidence::HyperbolicInput);
                } else {
                    evidence.push(Evidence::NonhyperbolicCap { bound: 4 });
                }
            }
        }
        6 => {
            for r in 1..=3 {
                evidence.push(Evidence::Excluded { r, by: ExclusionKind::TrivialKernel });
            }
            let pencil = apolar_kernel(f, 4)?;
            let decision = decide_dim2(&pencil.basis()[0], &pencil.basis()[1])?;
            match decision.verdict {
                Verdict::Exists => {
                    let witness = decision
                        .witness
                        .ok_or_else(|| Error::Internal("EXISTS verdict without witness".into()))?;
                    evidence.push(Evidence::UpperWitness { r: 4, witness });
                }
                Verdict::NotExists => {
                    evidence.push(Evidence::Excluded {
                        r: 4,
                        by: ExclusionKind::PencilNotExists,
                    });
                    if f.is_hyperbolic()? {
                        evidence.push(Evidence::HyperbolicInput);
                    } else {
                        evidence.push(Evidence::NonhyperbolicCap { bound: 5 });
                    }
                }
                Verdict::Unknown => {
                    return Err(Error::Internal("pencil decision returned UNKNOWN".into()))
                }
            }
        }
        7 => {
            for r in 1..=3 {
                evidence.push(Evidence::Excluded { r, by: ExclusionKind::TrivialKernel });
            }
            if f.is_hyperbolic()? {
                evidence.push(Evidence::HyperbolicInput);
                return assemble(f, csr, evidence, false);
            }
            evidence.push(Evidence::NonhyperbolicCap { bound: 6 });
            let h4 = apolar_kernel(f, 4)?.basis()[0].clone();
            if h4.is_hyperbolic()? {
                evidence.push(Evidence::UpperWitness { r: 4, witness: h4 });
            } else {
                evidence.push(Evidence::Excluded {
                    r: 4,
                    by: ExclusionKind::GeneratorNotHyperbolic,
                });
                let space = apolar_kernel(f, 5)?;
                let decision =
                    decide(&space, trials, derive_seed(seed, TAG_SEARCH + 5))?;
                match decision.verdict {
                    Verdict::Exists => {
                        let witness = decision.witness.ok_or_else(|| {
                            Error::Internal("EXISTS verdict without witness".into())
                        })?;
                        evidence.push(Evidence::UpperWitness { r: 5, witness });
                    }
                    Verdict::NotExists => {
                        return Err(Error::Internal(
                            "exact non-existence reported in dimension 3".into(),
                        ))
                    }
                    Verdict::Unknown => {
                        evidence.push(Evidence::Inconclusive { r: 5 });
                        try_derivative_upgrade(f, &mut evidence)?;
                    }
                }
            }
        }
        _ => unreachable!(),
    }
    assemble(f, csr, evidence, false)
}

/// Degree dispatcher: exact classifiers at 5 and 6, the degree-7 bracket, and
/// the general engine elsewhere.
pub fn rank_certificate(f: &BinaryForm, trials: u32, seed: u64) -> Result<RankCertificate> {
    match f.degree() {
        5 => classify_d5(f, trials, seed),
        6 => classify_d6(f, trials, seed),
        7 => bracket_d7(f, trials, seed),
        _ => real_rank_bracket(f, trials, seed),
    }
}

impl RankCertificate {
    /// Re-checks every evidence item from the stored form by fresh exact
    /// computation, then recomputes the bracket and compares it to the stored
    /// one. Fails on the first discrepancy.
    pub fn verify(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::VerifyFailed(msg));
        if self.schema != SCHEMA_VERSION {
            return Err(Error::SchemaVersion(self.schema));
        }
        let f = &self.form;
        if f.is_zero() {
            return fail("certificate form is zero".into());
        }
        let d = f.degree();
        if d as u32 != self.degree {
            return fail(format!("stored degree {} vs form degree {d}", self.degree));
        }
        if !f.is_squarefree()? {
            return fail("certificate form is not squarefree".into());
        }
        let complex_items = self
            .evidence
            .iter()
            .filter(|e| matches!(e, Evidence::Complex { .. }))
            .count();
        if complex_items != 1 {
            return fail(format!("expected 1 complex evidence item, found {complex_items}"));
        }
        for item in &self.evidence {
            match item {
                Evidence::Complex { r0, kernel_dim, squarefree_witness } => {
                    let r0u = *r0 as usize;
                    if r0u < 1 || r0u > d {
                        return fail(format!("complex evidence degree {r0} out of range"));
                    }
                    for r in 1..r0u {
                        if apolar_kernel(f, r)?.dim() != 0 {
                            return fail(format!(
                                "apolar kernel below r0 is nonzero at degree {r}"
                            ));
                        }
                    }
                    let space = apolar_kernel(f, r0u)?;
                    if space.dim() != *kernel_dim as usize || space.dim() == 0 {
                        return fail(format!(
                            "kernel dimension at r0={r0} is {}, certificate says {kernel_dim}",
                            space.dim()
                        ));
                    }
                    match squarefree_witness {
                        Some(w) => {
                            if w.degree() != r0u {
                                return fail("complex witness degree mismatch".into());
                            }
                            if !contract(w, f)?.is_zero() {
                                return fail("complex witness is not apolar".into());
                            }
                            if !w.is_squarefree()? {
                                return fail("complex witness is not squarefree".into());
                            }
                            if self.complex_rank != *r0 {
                                return fail("complex rank does not match witness branch".into());
                            }
                        }
                        None => {
                            if squarefree_kernel_element(&space)?.is_some() {
                                return fail(
                                    "kernel contains a squarefree element but certificate \
                                     claims none"
                                        .into(),
                                );
                            }
                            if self.complex_rank as usize != d - r0u + 2 {
                                return fail(
                                    "complex rank does not match complement branch".into(),
                                );
                            }
                        }
                    }
                }
                Evidence::ComplexBound => {}
                Evidence::Excluded { r, by } => {
                    let ru = *r as usize;
                    if ru < 1 || ru > d {
                        return fail(format!("exclusion degree {r} out of range"));
                    }
                    let space = apolar_kernel(f, ru)?;
                    let ok = match by {
                        ExclusionKind::TrivialKernel => space.dim() == 0,
                        ExclusionKind::GeneratorNotHyperbolic => {
                            space.dim() == 1 && !space.basis()[0].is_hyperbolic()?
                        }
                        ExclusionKind::PencilNotExists => {
                            space.dim() == 2
                                && decide_dim2(&space.basis()[0], &space.basis()[1])?.verdict
                                    == Verdict::NotExists
                        }
                    };
                    if !ok {
                        return fail(format!("exclusion at degree {r} does not re-verify"));
                    }
                }
                Evidence::UpperWitness { r, witness } => {
                    if witness.degree() != *r as usize {
                        return fail("upper witness degree mismatch".into());
                    }
                    if !contract(witness, f)?.is_zero() {
                        return fail("upper witness is not apolar".into());
                    }
                    if !witness.is_hyperbolic()? {
                        return fail("upper witness is not hyperbolic".into());
                    }
                }
                Evidence::HyperbolicInput => {
                    if !f.is_hyperbolic()? {
                        return fail("form is not hyperbolic".into());
                    }
                }
                Evidence::NonhyperbolicCap { bound } => {
                    if d < 3 || *bound as usize != d - 1 {
                        return fail("cap bound is not degree - 1 (degree >= 3)".into());
                    }
                    if f.is_hyperbolic()? {
                        return fail("cap recorded for a hyperbolic form".into());
                    }
                }
                Evidence::DerivativeHyperbolic { direction } => {
                    let derivative = match direction {
                        Direction::X => f.x_derivative()?,
                        Direction::Y => f.y_derivative()?,
                    };
                    if derivative.is_zero() || !derivative.is_hyperbolic()? {
                        return fail("partial derivative is not hyperbolic".into());
                    }
                }
                Evidence::Inconclusive { .. } => {}
            }
        }
        let (lo, hi) = implied_bounds(self.degree, self.complex_rank, &self.evidence);
        if lo != self.real_lo || hi != self.real_hi {
            return fail(format!(
                "stored bracket [{}, {}] but evidence implies [{lo}, {hi}]",
                self.real_lo, self.real_hi
            ));
        }
        if self.exact != (lo == hi) {
            return fail("exactness flag disagrees with the bracket".into());
        }
        if !(self.complex_rank <= lo && lo <= hi && hi <= self.degree) {
            return fail("bracket violates Csr <= lo <= hi <= d".into());
        }
        Ok(())
    }
}

/// One power term c * (alpha x + beta y)^d of a numeric decomposition.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DecompositionTerm {
    #[serde(with = "crate::rat::qstr")]
    pub coefficient: Q,
    #[serde(with = "crate::rat::qstr")]
    pub alpha: Q,
    #[serde(with = "crate::rat::qstr")]
    pub beta: Q,
}

/// A numeric Waring decomposition extracted from a hyperbolic apolar witness.
/// All data is rational: points are exact roots or isolating-interval
/// midpoints at the requested precision, coefficients solve the normal
/// equations exactly at those points, and the residual is the exact max-norm
/// error on monomial coefficients.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Decomposition {
    pub schema: u32,
    pub degree: u32,
    pub rank: u32,
    pub precision_bits: u32,
    pub terms: Vec<DecompositionTerm>,
    #[serde(with = "crate::rat::qstr")]
    pub residual: Q,
    #[serde(with = "crate::rat::qstr")]
    pub tolerance: Q,
}

/// Extracts f = sum c_i (alpha_i x + beta_i y)^d from a hyperbolic apolar
/// witness h whose roots locate the points. Roots are isolated and refined to
/// width 2^-precision_bits; the linear system for the c_i is solved exactly
/// at the refined rational points via the normal equations. The residual must
/// come in under 2^(-precision_bits/2) * max |monomial coefficient of f|;
/// otherwise the roots are refined (precision doubling, three retries) before
/// giving up.
pub fn decompose(
    f: &BinaryForm,
    witness_h: &BinaryForm,
    precision_bits: u32,
) -> Result<Decomposition> {
    if f.is_zero() {
        return Err(Error::ZeroForm);
    }
    if !contract(witness_h, f)?.is_zero() {
        return Err(Error::NotApolar(
            "decomposition witness must annihilate the form".into(),
        ));
    }
    if !witness_h.is_hyperbolic()? {
        return Err(Error::Precondition("decomposition witness must be hyperbolic".into()));
    }
    let d = f.degree();
    let r = witness_h.degree();
    if r == 0 {
        return Err(Error::BadArgument("decomposition witness must have degree >= 1".into()));
    }
    let u = witness_h.dehomogenize();
    let isolation = witness_h.isolate_real_roots()?;
    let monomials = f.monomial_coeffs();
    let scale = monomials
        .iter()
        .map(|p| p.abs())
        .max()
        .expect("nonzero form has coefficients");
    let tolerance = q_pow2_neg(precision_bits / 2) * &scale;
    let mut roots = isolation.affine.clone();
    for attempt in 0..=3u32 {
        let width = q_pow2_neg(precision_bits.saturating_mul(1 << attempt));
        roots = roots.iter().map(|iso| refine_root(&u, iso, &width)).collect();
        // Points: one per affine root, plus (1 : 0) if h vanishes at infinity.
        let mut points: Vec<(Q, Q)> = roots
            .iter()
            .map(|iso| (iso.sample(), Q::from_integer(1.into())))
            .collect();
        if isolation.at_infinity {
            points.push((Q::from_integer(1.into()), Q::zero()));
        }
        debug_assert_eq!(points.len(), r);
        // Normalized coordinates: a_j = sum_i c_i alpha_i^j beta_i^(d-j).
        let a = f.normalized_coeffs();
        let design: Vec<Vec<Q>> = (0..=d)
            .map(|j| {
                points
                    .iter()
                    .map(|(alpha, beta)| q_pow(alpha, j) * q_pow(beta, d - j))
                    .collect()
            })
            .collect();
        let mut normal = Vec::with_capacity(r);
        let mut rhs = Vec::with_capacity(r);
        for i in 0..points.len() {
            let mut row = Vec::with_capacity(r);
            for l in 0..points.len() {
                row.push((0..=d).map(|j| &design[j][i] * &design[j][l]).sum::<Q>());
            }
            normal.push(row);
            rhs.push((0..=d).map(|j| &design[j][i] * &a[j]).sum::<Q>());
        }
        let coeffs = crate::linalg::ExactMatrix::from_rows(normal)
            .solve(&rhs)
            .ok_or_else(|| Error::Internal("normal equations are singular".into()))?;
        let residual = (0..=d)
            .map(|j| {
                let predicted: Q =
                    coeffs.iter().enumerate().map(|(i, c)| c * &design[j][i]).sum();
                (&monomials[j] - Q::from_integer(binomial(d, j)) * predicted).abs()
            })
            .max()
            .unwrap();
        if residual <= tolerance {
            let terms = points
                .into_iter()
                .zip(coeffs)
                .map(|((alpha, beta), coefficient)| DecompositionTerm { coefficient, alpha, beta })
                .collect();
            return Ok(Decomposition {
                schema: SCHEMA_VERSION,
                degree: d as u32,
                rank: r as u32,
                precision_bits,
                terms,
                residual,
                tolerance,
            });
        }
        if attempt == 3 {
            return Err(Error::IllConditioned {
                residual: crate::rat::q_to_string(&residual),
                tolerance: crate::rat::q_to_string(&tolerance),
            });
        }
    }
    unreachable!()
}

/// Support-union bound: two squarefree forms viewed as root sets either are
/// equal up to scale or together carry at least d + 2 distinct projective
/// roots. Used to certify uniqueness of minimal decompositions: two distinct
/// minimal supports of one rank-d form would need a union of size >= d + 2.
pub fn check_union_bound(a: &BinaryForm, b: &BinaryForm, d: usize) -> Result<bool> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroForm);
    }
    if !a.is_squarefree()? || !b.is_squarefree()? {
        return Err(Error::NotSquarefree);
    }
    if a.proportional(b) {
        return Ok(true);
    }
    let ua = a.dehomogenize();
    let ub = b.dehomogenize();
    let shared_affine = crate::univariate::QPoly::gcd(&ua, &ub).degree().unwrap_or(0);
    let shared_infinity =
        usize::from(a.infinity_multiplicity()? >= 1 && b.infinity_multiplicity()? >= 1);
    let union = a.degree() + b.degree() - shared_affine - shared_infinity;
    Ok(union >= d + 2)
}
