//! Deciding whether a subspace of forms contains a hyperbolic element (a
//! form with all roots real and distinct).
//!
//! Dimensions 1 and 2 are decided exactly. For a pencil g1 + t*g2 the
//! distinct-real-root count of the form can only change at parameter values
//! where roots collide (the interpolated resultant D(t) of the dehomogenized
//! pencil and its x-derivative vanishes) or where the top coefficient l(t)
//! vanishes (roots enter or leave infinity). Outside the real roots of
//! B = D * l the count is locally constant, so testing one exact rational
//! sample per component, the rational root of l, and t = infinity decides
//! existence. At a root of D with l nonzero the element has a repeated root
//! and cannot be hyperbolic, so irrational boundary values need no test.
//!
//! Dimension 3 and above fall back to seeded random search: EXISTS results
//! carry an exact witness, but a failed search is only UNKNOWN, never
//! NOT_EXISTS.

use crate::apolarity::FormSubspace;
use crate::error::{Error, Result};
use crate::forms::{BinaryForm, GRANULARITY_BITS};
use crate::linalg::ExactMatrix;
use crate::rat::{q_int, Q};
use crate::univariate::{self, QPoly};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

pub const DEFAULT_TRIALS: u32 = 200;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Exists,
    NotExists,
    Unknown,
}

/// Whether a NOT_EXISTS answer from this method is conclusive.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Exactness {
    Exact,
    SearchOnly,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HypDecision {
    pub verdict: Verdict,
    /// Hyperbolic element found; present exactly when verdict is EXISTS.
    pub witness: Option<BinaryForm>,
    pub trials_used: u32,
    pub exactness: Exactness,
}

impl HypDecision {
    fn exists(witness: BinaryForm, trials_used: u32, exactness: Exactness) -> Self {
        HypDecision {
            verdict: Verdict::Exists,
            witness: Some(witness),
            trials_used,
            exactness,
        }
    }
}

/// Exact decision for the span of a single nonzero form.
pub fn decide_dim1(g: &BinaryForm) -> Result<HypDecision> {
    if g.is_zero() {
        return Err(Error::ZeroForm);
    }
    Ok(if g.is_hyperbolic()? {
        HypDecision::exists(g.clone(), 0, Exactness::Exact)
    } else {
        HypDecision {
            verdict: Verdict::NotExists,
            witness: None,
            trials_used: 0,
            exactness: Exactness::Exact,
        }
    })
}

/// Exact decision for the projective pencil spanned by two independent forms
/// of equal degree: is some g1 + t*g2 (t rational or infinite) hyperbolic?
pub fn decide_dim2(g1: &BinaryForm, g2: &BinaryForm) -> Result<HypDecision> {
    let r = g1.degree();
    if g2.degree() != r {
        return Err(Error::DegreeMismatch(r, g2.degree()));
    }
    let p1 = g1.monomial_coeffs();
    let p2 = g2.monomial_coeffs();
    let pencil_rows = ExactMatrix::from_rows(vec![p1.clone(), p2.clone()]);
    if pencil_rows.rank() != 2 {
        return Err(Error::DependentPencil);
    }
    let not_exists = || HypDecision {
        verdict: Verdict::NotExists,
        witness: None,
        trials_used: 0,
        exactness: Exactness::Exact,
    };
    // Degree-1 pencils: every nonzero linear form is hyperbolic.
    if r == 1 {
        return Ok(HypDecision::exists(g1.clone(), 0, Exactness::Exact));
    }
    // Top coefficient index of the pencil.
    let k_top = (0..=r)
        .rev()
        .find(|&k| !p1[k].is_zero() || !p2[k].is_zero())
        .expect("independent pencil is nonzero");
    if r - k_top >= 2 {
        // Every element has a repeated root at infinity.
        return Ok(not_exists());
    }
    // l(t) = p1[k_top] + p2[k_top] * t.
    let ell = QPoly::new(vec![p1[k_top].clone(), p2[k_top].clone()]);
    // D(t) = Sylvester determinant of (U_t, U_t') at nominal degrees
    // (k_top, k_top - 1), where U_t(x) = sum_k (p1[k] + p2[k] t) x^k.
    // Polynomial in t of degree <= 2*k_top - 1; recover it by interpolation.
    let u_at = |t: &Q| -> QPoly {
        QPoly::new(
            (0..=k_top)
                .map(|k| &p1[k] + &p2[k] * t)
                .collect(),
        )
    };
    let npoints = 2 * k_top;
    let dpoly = univariate::lagrange_interpolate(
        &(0..npoints)
            .map(|i| {
                let t = q_int(i as i64);
                let u = u_at(&t);
                let du = u.derivative();
                (t, univariate::sylvester_det(&u, &du, k_top, k_top - 1))
            })
            .collect::<Vec<(Q, Q)>>(),
    );
    let boundary = &dpoly * &ell;

    // Candidate parameters, in pinned order: one exact rational per connected
    // component of R minus the boundary roots (ascending), then the rational
    // root of l, then t = infinity (the element g2).
    let mut candidates: Vec<Q> = Vec::new();
    if boundary.is_zero() {
        // D vanishes identically: wherever l(t) != 0 the element has a
        // repeated affine root, so only l's root and infinity remain.
    } else {
        let isos = univariate::isolate_real_roots(&boundary);
        if isos.is_empty() {
            candidates.push(Q::zero());
        } else {
            candidates.push(isos[0].low().floor() - Q::one());
            for pair in isos.windows(2) {
                let hi = pair[0].high();
                let lo = pair[1].low();
                // Isolating intervals have non-root endpoints (exact roots
                // are points), so a shared endpoint is itself a valid sample
                // strictly between the two roots.
                if hi < lo {
                    candidates.push((hi + lo) / q_int(2));
                } else {
                    candidates.push(hi.clone());
                }
            }
            candidates.push(isos.last().unwrap().high().ceil() + Q::one());
        }
    }
    if ell.degree() == Some(1) {
        candidates.push(-ell.coeff(0) / ell.coeff(1));
    }
    for t in &candidates {
        let g = g1.add(&g2.scale(t))?;
        debug_assert!(!g.is_zero());
        if g.is_hyperbolic()? {
            return Ok(HypDecision::exists(g, 0, Exactness::Exact));
        }
    }
    if g2.is_hyperbolic()? {
        return Ok(HypDecision::exists(g2.clone(), 0, Exactness::Exact));
    }
    Ok(not_exists())
}

/// Seeded random search for a hyperbolic element: tries the basis elements
/// first, then uniform rational combinations (numerators k / 2^20). EXISTS
/// carries the witness found; exhausting the budget yields UNKNOWN.
pub fn search_witness(space: &FormSubspace, trials: u32, seed: u64) -> Result<HypDecision> {
    if space.dim() == 0 {
        return Err(Error::EmptySpace);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bound = 1i64 << GRANULARITY_BITS;
    let denom = Q::from_integer(bound.into());
    let mut trials_used = 0;
    while trials_used < trials {
        let candidate = if (trials_used as usize) < space.dim() {
            space.basis()[trials_used as usize].clone()
        } else {
            loop {
                let coeffs: Vec<Q> = (0..space.dim())
                    .map(|_| Q::from_integer(rng.random_range(-bound..=bound).into()) / &denom)
                    .collect();
                if coeffs.iter().any(|c| !c.is_zero()) {
                    break space.element(&coeffs)?;
                }
            }
        };
        trials_used += 1;
        if !candidate.is_zero() && candidate.is_hyperbolic()? {
            debug_assert!(space.contains(&candidate));
            return Ok(HypDecision::exists(
                candidate,
                trials_used,
                Exactness::SearchOnly,
            ));
        }
    }
    Ok(HypDecision {
        verdict: Verdict::Unknown,
        witness: None,
        trials_used,
        exactness: Exactness::SearchOnly,
    })
}

/// Dispatch on dimension: 0 is exactly NOT_EXISTS, 1 and 2 are decided
/// exactly, higher dimensions use seeded search (EXISTS or UNKNOWN).
pub fn decide(space: &FormSubspace, trials: u32, seed: u64) -> Result<HypDecision> {
    match space.dim() {
        0 => Ok(HypDecision {
            verdict: Verdict::NotExists,
            witness: None,
            trials_used: 0,
            exactness: Exactness::Exact,
        }),
        1 => decide_dim1(&space.basis()[0]),
        2 => decide_dim2(&space.basis()[0], &space.basis()[1]),
        _ => search_witness(space, trials, seed),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::Basis;
    use crate::rat::q;

    fn form(degree: usize, monomial: &[i64]) -> BinaryForm {
        BinaryForm::new(
            degree,
            monomial.iter().map(|&c| q_int(c)).collect(),
            Basis::Monomial,
        )
        .unwrap()
    }

    #[test]
    fn dim1_is_a_hyperbolicity_test() {
        let hyp = form(2, &[-1, 0, 1]); // x^2 - y^2
        let d = decide_dim1(&hyp).unwrap();
        assert_eq!(d.verdict, Verdict::Exists);
        assert_eq!(d.exactness, Exactness::Exact);
        assert_eq!(d.witness.unwrap(), hyp);
        let not = decide_dim1(&form(2, &[1, 0, 1])).unwrap();
        assert_eq!(not.verdict, Verdict::NotExists);
        assert!(decide_dim1(&BinaryForm::zero(2)).is_err());
    }

    #[test]
    fn dim2_finds_witnesses_outside_the_gap() {
        // x^2 + t xy + y^2 is hyperbolic iff |t| > 2.
        let g1 = form(2, &[1, 0, 1]);
        let g2 = form(2, &[0, 1, 0]);
        let d = decide_dim2(&g1, &g2).unwrap();
        assert_eq!(d.verdict, Verdict::Exists);
        let w = d.witness.unwrap();
        assert!(w.is_hyperbolic().unwrap());
        // The pinned candidate order scans components left to right, so the
        // witness lies left of t = -2.
        let t = w.monomial_coeffs()[1].clone();
        assert!(t < q_int(-2));
    }

    #[test]
    fn dim2_always_hyperbolic_pencil() {
        // x^2 + t xy - y^2: discriminant t^2 + 4 > 0 for all t.
        let d = decide_dim2(&form(2, &[-1, 0, 1]), &form(2, &[0, 1, 0])).unwrap();
        assert_eq!(d.verdict, Verdict::Exists);
    }

    #[test]
    fn dim2_not_exists_with_common_definite_factor() {
        // (x^2 + y^2) * (x^2 + t xy + y^2): never 4 distinct real roots.
        let base = form(2, &[1, 0, 1]);
        let g1 = base.mul(&base);
        let g2 = base.mul(&form(2, &[0, 1, 0]));
        let d = decide_dim2(&g1, &g2).unwrap();
        assert_eq!(d.verdict, Verdict::NotExists);
        assert_eq!(d.exactness, Exactness::Exact);
        assert!(d.witness.is_none());
    }

    #[test]
    fn dim2_double_infinity_drop_is_not_exists() {
        // x^2 y^2 and y^4: every element divisible by y^2.
        let d = decide_dim2(&form(4, &[0, 0, 1, 0, 0]), &form(4, &[1, 0, 0, 0, 0])).unwrap();
        assert_eq!(d.verdict, Verdict::NotExists);
    }

    #[test]
    fn dim2_hyperbolic_generator_dominates_at_large_t() {
        // g1 = (x^2+y^2)^2 is definite but g2 = xy(x-y)(x+y) is hyperbolic;
        // far enough out in t the pencil element must be hyperbolic too.
        let g1 = form(4, &[1, 0, 2, 0, 1]);
        let g2 = form(4, &[0, -1, 0, 1, 0]);
        let d = decide_dim2(&g1, &g2).unwrap();
        assert_eq!(d.verdict, Verdict::Exists);
        assert!(d.witness.unwrap().is_hyperbolic().unwrap());
    }

    #[test]
    fn dim2_rejects_dependent_generators() {
        let g = form(2, &[1, 2, 3]);
        assert!(matches!(
            decide_dim2(&g, &g.scale(&q(3, 7))),
            Err(Error::DependentPencil)
        ));
        assert!(decide_dim2(&g, &form(3, &[1, 2, 3, 4])).is_err());
    }

    #[test]
    fn dim2_degree_one_pencils_are_trivially_exists() {
        let d = decide_dim2(&form(1, &[1, 0]), &form(1, &[0, 1])).unwrap();
        assert_eq!(d.verdict, Verdict::Exists);
    }

    #[test]
    fn search_finds_basis_witness_first() {
        let space = FormSubspace::new(
            3,
            vec![
                form(3, &[0, -1, 0, 1]), // x^3 - xy^2? roots 0, 1, -1: hyperbolic
                form(3, &[1, 0, 0, 1]),
                form(3, &[0, 0, 1, 0]),
            ],
        )
        .unwrap();
        let d = search_witness(&space, 10, 99).unwrap();
        assert_eq!(d.verdict, Verdict::Exists);
        assert_eq!(d.trials_used, 1);
        assert_eq!(d.exactness, Exactness::SearchOnly);
        assert_eq!(d.witness.unwrap(), space.basis()[0]);
    }

    #[test]
    fn search_reports_unknown_when_exhausted() {
        // Space spanned by (x^2+y^2)^2 and (x^2+y^2)xy: no element is
        // hyperbolic, but search alone cannot prove it.
        let base = form(2, &[1, 0, 1]);
        let pair = FormSubspace::new(
            4,
            vec![base.mul(&base), base.mul(&form(2, &[0, 1, 0]))],
        )
        .unwrap();
        let d = search_witness(&pair, 25, 7).unwrap();
        assert_eq!(d.verdict, Verdict::Unknown);
        assert_eq!(d.trials_used, 25);
        assert!(d.witness.is_none());
    }

    #[test]
    fn decide_dispatches_by_dimension() {
        let empty = FormSubspace::new(2, vec![]).unwrap();
        assert_eq!(decide(&empty, 10, 0).unwrap().verdict, Verdict::NotExists);
        assert_eq!(
            decide(&empty, 10, 0).unwrap().exactness,
            Exactness::Exact
        );
        let one = FormSubspace::new(2, vec![form(2, &[1, 0, 1])]).unwrap();
        assert_eq!(decide(&one, 10, 0).unwrap().verdict, Verdict::NotExists);
        let two = FormSubspace::new(2, vec![form(2, &[1, 0, 1]), form(2, &[0, 1, 0])]).unwrap();
        assert_eq!(decide(&two, 10, 0).unwrap().verdict, Verdict::Exists);
        let three = FormSubspace::new(
            2,
            vec![form(2, &[1, 0, 0]), form(2, &[0, 1, 0]), form(2, &[0, 0, 1])],
        )
        .unwrap();
        let d = decide(&three, 10, 0).unwrap();
        assert_eq!(d.verdict, Verdict::Exists);
        assert_eq!(d.exactness, Exactness::SearchOnly);
    }

    #[test]
    fn dim2_decision_agrees_with_dense_scan() {
        // Cross-check NOT_EXISTS against a brute scan on a tricky pencil:
        // (x^2+2y^2)(x^2+y^2) and (x^2 + 2y^2) xy.
        let a = form(2, &[2, 0, 1]);
        let g1 = a.mul(&form(2, &[1, 0, 1]));
        let g2 = a.mul(&form(2, &[0, 1, 0]));
        let d = decide_dim2(&g1, &g2).unwrap();
        assert_eq!(d.verdict, Verdict::NotExists);
        for k in -400..=400 {
            let t = q(k, 16);
            let g = g1.add(&g2.scale(&t)).unwrap();
            assert!(!g.is_hyperbolic().unwrap());
        }
        assert!(!g2.is_hyperbolic().unwrap());
    }
}
