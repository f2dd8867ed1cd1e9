//! Univariate polynomials over the rationals: exact root counting (Sturm
//! sequences), root isolation and refinement, resultants via Sylvester
//! determinants, and Lagrange interpolation.
//!
//! Polynomials are coefficient vectors in ascending powers, always trimmed so
//! the last stored coefficient is nonzero; the zero polynomial is the empty
//! vector. Sturm chain elements are rescaled to primitive integer vectors
//! (positive rescaling only, which preserves every sign needed by the
//! variation counts) to keep coefficient growth polynomial.

use crate::linalg::ExactMatrix;
use crate::rat::{primitive_integer_vector, sign, Q};
use num_traits::{One, Signed, Zero};
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QPoly {
    coeffs: Vec<Q>,
}

impl QPoly {
    pub fn new(mut coeffs: Vec<Q>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn zero() -> Self {
        QPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Q) -> Self {
        Self::new(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(Q::one())
    }

    pub fn from_integer_coeffs(cs: &[i64]) -> Self {
        Self::new(cs.iter().map(|&c| crate::rat::q_int(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    /// Coefficient of x^i, zero-padded beyond the degree.
    pub fn coeff(&self, i: usize) -> Q {
        self.coeffs.get(i).cloned().unwrap_or_else(Q::zero)
    }

    pub fn leading(&self) -> Option<&Q> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Q) -> Q {
        let mut acc = Q::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> QPoly {
        if self.coeffs.len() <= 1 {
            return QPoly::zero();
        }
        QPoly::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c * Q::from_integer((i + 1).into()))
                .collect(),
        )
    }

    pub fn scale(&self, s: &Q) -> QPoly {
        QPoly::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// Euclidean division: self = q * d + r with deg r < deg d. Panics on a
    /// zero divisor.
    pub fn div_rem(&self, d: &QPoly) -> (QPoly, QPoly) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let dn = d.degree().unwrap();
        let lead_inv = Q::one() / d.leading().unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Q::zero(); self.coeffs.len().saturating_sub(dn)];
        while rem.len() > dn {
            let k = rem.len() - 1 - dn;
            let factor = rem.last().unwrap() * &lead_inv;
            if !factor.is_zero() {
                for (i, dc) in d.coeffs.iter().enumerate() {
                    let sub = dc * &factor;
                    rem[k + i] -= sub;
                }
                quot[k] = factor;
            }
            rem.pop();
            while rem.last().is_some_and(|c| c.is_zero()) {
                rem.pop();
            }
            if rem.len() <= dn {
                break;
            }
        }
        (QPoly::new(quot), QPoly::new(rem))
    }

    /// Primitive integer rescaling: the unique positive rational multiple of
    /// self with coprime integer coefficients (sign preserved).
    pub fn primitive(&self) -> QPoly {
        QPoly::new(
            primitive_integer_vector(&self.coeffs)
                .into_iter()
                .map(Q::from_integer)
                .collect(),
        )
    }

    /// Primitive gcd with positive leading coefficient; gcd(0, 0) = 0.
    pub fn gcd(a: &QPoly, b: &QPoly) -> QPoly {
        let mut a = a.primitive();
        let mut b = b.primitive();
        while !b.is_zero() {
            let r = a.div_rem(&b).1.primitive();
            a = b;
            b = r;
        }
        if a.leading().is_some_and(|l| l.is_negative()) {
            a = a.scale(&-Q::one());
        }
        a
    }

    /// The squarefree part self / gcd(self, self'), primitive with positive
    /// leading coefficient. Panics on the zero polynomial.
    pub fn squarefree_part(&self) -> QPoly {
        assert!(!self.is_zero(), "squarefree part of the zero polynomial");
        if self.degree() == Some(0) {
            return QPoly::one();
        }
        let g = QPoly::gcd(self, &self.derivative());
        let (q, r) = self.div_rem(&g);
        debug_assert!(r.is_zero());
        let mut p = q.primitive();
        if p.leading().is_some_and(|l| l.is_negative()) {
            p = p.scale(&-Q::one());
        }
        p
    }

    /// Strict bound on the absolute value of every (real or complex) root:
    /// 1 + max |a_i| / |a_n|. Requires degree >= 1.
    pub fn cauchy_bound(&self) -> Q {
        let n = self.degree().expect("cauchy bound of the zero polynomial");
        assert!(n >= 1, "cauchy bound needs degree >= 1");
        let lead = self.coeffs[n].abs();
        let mut m = Q::zero();
        for c in &self.coeffs[..n] {
            let ratio = c.abs() / &lead;
            if ratio > m {
                m = ratio;
            }
        }
        m + Q::one()
    }
}

impl Neg for &QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        QPoly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

impl Add for &QPoly {
    type Output = QPoly;
    fn add(self, rhs: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        QPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &QPoly {
    type Output = QPoly;
    fn sub(self, rhs: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        QPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &QPoly {
    type Output = QPoly;
    fn mul(self, rhs: &QPoly) -> QPoly {
        if self.is_zero() || rhs.is_zero() {
            return QPoly::zero();
        }
        let mut out = vec![Q::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        QPoly::new(out)
    }
}

/// An isolated real root: either an exact rational value, or an open interval
/// (a, b) with non-root rational endpoints containing exactly one root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Isolated {
    Exact(Q),
    Interval(Q, Q),
}

impl Isolated {
    /// A rational point at the root (exact case) or inside the interval.
    pub fn sample(&self) -> Q {
        match self {
            Isolated::Exact(r) => r.clone(),
            Isolated::Interval(a, b) => (a + b) / crate::rat::q_int(2),
        }
    }

    pub fn low(&self) -> &Q {
        match self {
            Isolated::Exact(r) => r,
            Isolated::Interval(a, _) => a,
        }
    }

    pub fn high(&self) -> &Q {
        match self {
            Isolated::Exact(r) => r,
            Isolated::Interval(_, b) => b,
        }
    }

    pub fn width(&self) -> Q {
        match self {
            Isolated::Exact(_) => Q::zero(),
            Isolated::Interval(a, b) => b - a,
        }
    }
}

/// Sturm chain of the squarefree part of a nonzero polynomial.
pub struct SturmChain {
    chain: Vec<QPoly>,
}

impl SturmChain {
    pub fn new(p: &QPoly) -> Self {
        assert!(!p.is_zero(), "sturm chain of the zero polynomial");
        let p0 = p.squarefree_part();
        let mut chain = vec![p0.clone()];
        if p0.degree().unwrap_or(0) >= 1 {
            chain.push(p0.derivative().primitive());
            loop {
                let k = chain.len();
                let r = chain[k - 2].div_rem(&chain[k - 1]).1;
                if r.is_zero() {
                    break;
                }
                chain.push((-&r).primitive());
            }
        }
        SturmChain { chain }
    }

    pub fn squarefree(&self) -> &QPoly {
        &self.chain[0]
    }

    fn variations(signs: impl Iterator<Item = i8>) -> usize {
        let mut count = 0;
        let mut last: i8 = 0;
        for s in signs {
            if s != 0 {
                if last != 0 && s != last {
                    count += 1;
                }
                last = s;
            }
        }
        count
    }

    fn variations_at(&self, x: &Q) -> usize {
        Self::variations(self.chain.iter().map(|p| sign(&p.eval(x))))
    }

    fn variations_at_pos_inf(&self) -> usize {
        Self::variations(self.chain.iter().map(|p| p.leading().map_or(0, sign)))
    }

    fn variations_at_neg_inf(&self) -> usize {
        Self::variations(self.chain.iter().map(|p| {
            let s = p.leading().map_or(0, sign);
            if p.degree().unwrap_or(0) % 2 == 1 {
                -s
            } else {
                s
            }
        }))
    }

    /// Number of distinct real roots.
    pub fn count_all(&self) -> usize {
        self.variations_at_neg_inf() - self.variations_at_pos_inf()
    }

    /// Number of distinct real roots in the half-open interval (a, b].
    pub fn count_half_open(&self, a: &Q, b: &Q) -> usize {
        assert!(a <= b);
        if a == b {
            return 0;
        }
        self.variations_at(a) - self.variations_at(b)
    }

    /// Number of distinct real roots in the closed interval [a, b].
    pub fn count_closed(&self, a: &Q, b: &Q) -> usize {
        let at_a = usize::from(self.squarefree().eval(a).is_zero());
        self.count_half_open(a, b) + at_a
    }

    /// Number of distinct real roots in the open interval (a, b).
    pub fn count_open(&self, a: &Q, b: &Q) -> usize {
        if a >= b {
            return 0;
        }
        let at_b = usize::from(self.squarefree().eval(b).is_zero());
        self.count_half_open(a, b) - at_b
    }
}

/// Counts distinct real roots of a nonzero polynomial.
pub fn count_distinct_real_roots(p: &QPoly) -> usize {
    SturmChain::new(p).count_all()
}

/// Isolates every distinct real root of a nonzero polynomial, ascending.
/// Interval endpoints are never roots and every interval contains exactly one
/// root of the squarefree part.
pub fn isolate_real_roots(p: &QPoly) -> Vec<Isolated> {
    let chain = SturmChain::new(p);
    let sf = chain.squarefree().clone();
    if sf.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let bound = sf.cauchy_bound();
    let mut out = Vec::new();
    let total = chain.count_all();
    bisect(&chain, &sf, &(-bound.clone()), &bound, total, &mut out);
    out
}

fn bisect(chain: &SturmChain, sf: &QPoly, a: &Q, b: &Q, count: usize, out: &mut Vec<Isolated>) {
    debug_assert!(!sf.eval(a).is_zero() && !sf.eval(b).is_zero());
    match count {
        0 => {}
        1 => out.push(Isolated::Interval(a.clone(), b.clone())),
        _ => {
            let two = crate::rat::q_int(2);
            let mid = (a + b) / &two;
            if sf.eval(&mid).is_zero() {
                // Shrink a punctured neighborhood around the exact root until
                // it contains no other root, then recurse on the outside.
                let mut eps = (b - a) / crate::rat::q_int(4);
                loop {
                    let lo = &mid - &eps;
                    let hi = &mid + &eps;
                    if !sf.eval(&lo).is_zero()
                        && !sf.eval(&hi).is_zero()
                        && chain.count_half_open(&lo, &hi) == 1
                    {
                        let left = chain.count_half_open(a, &lo);
                        let right = chain.count_half_open(&hi, b);
                        debug_assert_eq!(left + right + 1, count);
                        bisect(chain, sf, a, &lo, left, out);
                        out.push(Isolated::Exact(mid.clone()));
                        bisect(chain, sf, &hi, b, right, out);
                        return;
                    }
                    eps /= &two;
                }
            }
            let left = chain.count_half_open(a, &mid);
            bisect(chain, sf, a, &mid, left, out);
            bisect(chain, sf, &mid, b, count - left, out);
        }
    }
}

/// Shrinks an isolating interval until its width is at most `width`. The
/// interval must bracket exactly one simple root with non-root endpoints.
pub fn refine_root(p: &QPoly, iso: &Isolated, width: &Q) -> Isolated {
    let (mut a, mut b) = match iso {
        Isolated::Exact(r) => return Isolated::Exact(r.clone()),
        Isolated::Interval(a, b) => (a.clone(), b.clone()),
    };
    let two = crate::rat::q_int(2);
    let sign_a = sign(&p.eval(&a));
    debug_assert!(sign_a != 0 && sign(&p.eval(&b)) != 0 && sign_a != sign(&p.eval(&b)));
    while &(&b - &a) > width {
        let mid = (&a + &b) / &two;
        let sm = sign(&p.eval(&mid));
        if sm == 0 {
            return Isolated::Exact(mid);
        }
        // The sign at the low end never changes: the bracket keeps the root.
        if sm == sign_a {
            a = mid;
        } else {
            b = mid;
        }
    }
    Isolated::Interval(a, b)
}

/// Determinant of the Sylvester matrix of u and v at nominal degrees (m, n):
/// an (m + n) x (m + n) matrix whose first n rows hold u's coefficients from
/// leading down to constant, each row shifted one column right of the
/// previous, followed by m rows holding v's likewise. Coefficients above a
/// polynomial's actual degree enter as zeros.
pub fn sylvester_det(u: &QPoly, v: &QPoly, m: usize, n: usize) -> Q {
    assert!(u.degree().unwrap_or(0) <= m && v.degree().unwrap_or(0) <= n);
    let size = m + n;
    if size == 0 {
        return Q::one();
    }
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut row = vec![Q::zero(); size];
        for k in 0..=m {
            row[i + k] = u.coeff(m - k);
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![Q::zero(); size];
        for k in 0..=n {
            row[i + k] = v.coeff(n - k);
        }
        rows.push(row);
    }
    ExactMatrix::from_rows(rows).det()
}

/// Resultant at the exact degrees of u and v; zero if either is zero.
pub fn resultant(u: &QPoly, v: &QPoly) -> Q {
    let (Some(m), Some(n)) = (u.degree(), v.degree()) else {
        return Q::zero();
    };
    sylvester_det(u, v, m, n)
}

/// Res(u, u') at u's exact degree; nonzero iff u is squarefree.
/// Requires degree >= 1.
pub fn discriminant_resultant(u: &QPoly) -> Q {
    let n = u.degree().expect("discriminant of the zero polynomial");
    assert!(n >= 1);
    if n == 1 {
        return Q::one();
    }
    sylvester_det(u, &u.derivative(), n, n - 1)
}

/// Unique polynomial of degree < points.len() through the given points.
/// The x-values must be pairwise distinct.
pub fn lagrange_interpolate(points: &[(Q, Q)]) -> QPoly {
    let mut acc = QPoly::zero();
    for (i, (xi, yi)) in points.iter().enumerate() {
        if yi.is_zero() {
            continue;
        }
        let mut term = QPoly::constant(yi.clone());
        for (j, (xj, _)) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            let denom = xi - xj;
            assert!(!denom.is_zero(), "repeated interpolation node");
            let factor = QPoly::new(vec![-xj / &denom, Q::one() / &denom]);
            term = &term * &factor;
        }
        acc = &acc + &term;
    }
    acc
}
