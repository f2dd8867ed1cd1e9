//! Apolarity machinery: catalecticant matrices, contraction, and the kernel
//! spaces that certify rank bounds.
//!
//! With f stored in the normalized basis (coefficients a_i) and a degree-r
//! form h given by its monomial coefficients b_k, the contraction is
//!
//! ```text
//!     contract(h, f)_j = sum_k b_k * a_(j+k),   j = 0..d-r,
//! ```
//!
//! a degree-(d - r) form in the normalized basis. This pairing satisfies
//! contract(h, (ax + by)^d) = h(a, b) * (ax + by)^(d-r), so a form h
//! annihilates a power sum supported on points exactly when h vanishes on
//! those points; that is the bridge between kernels and decompositions.
//!
//! `catalecticant(f, r)` is the matrix of h -> contract(h, f) in these
//! coordinates: the Hankel matrix with entry (j, k) = a_(j+k). Its kernel
//! vectors are monomial coefficient vectors of apolar forms.

use crate::error::{Error, Result};
use crate::forms::{Basis, BinaryForm};
pub use crate::linalg::ExactMatrix;
use crate::linalg::in_row_span;
use crate::rat::Q;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

/// A finite-dimensional space of forms of one degree, held as a linearly
/// independent basis.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FormSubspace {
    degree: usize,
    basis: Vec<BinaryForm>,
}

impl FormSubspace {
    /// Wraps a basis after checking equal degrees and linear independence.
    pub fn new(degree: usize, basis: Vec<BinaryForm>) -> Result<Self> {
        for b in &basis {
            if b.degree() != degree {
                return Err(Error::DegreeMismatch(b.degree(), degree));
            }
        }
        let rows: Vec<Vec<Q>> = basis.iter().map(|b| b.normalized_coeffs().to_vec()).collect();
        if !rows.is_empty() {
            let rank = ExactMatrix::from_rows(rows).rank();
            if rank != basis.len() {
                return Err(Error::Precondition(
                    "subspace basis is linearly dependent".into(),
                ));
            }
        }
        Ok(FormSubspace { degree, basis })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BinaryForm] {
        &self.basis
    }

    /// Membership test, exact.
    pub fn contains(&self, f: &BinaryForm) -> bool {
        if f.degree() != self.degree {
            return false;
        }
        let rows: Vec<Vec<Q>> = self
            .basis
            .iter()
            .map(|b| b.normalized_coeffs().to_vec())
            .collect();
        in_row_span(&rows, f.normalized_coeffs())
    }

    /// The element sum_i coeffs[i] * basis[i].
    pub fn element(&self, coeffs: &[Q]) -> Result<BinaryForm> {
        if coeffs.len() != self.basis.len() {
            return Err(Error::BadArgument(format!(
                "expected {} combination coefficients, got {}",
                self.basis.len(),
                coeffs.len()
            )));
        }
        let mut acc = BinaryForm::zero(self.degree);
        for (c, b) in coeffs.iter().zip(&self.basis) {
            if !c.is_zero() {
                acc = acc.add(&b.scale(c))?;
            }
        }
        Ok(acc)
    }
}

/// Catalecticant matrix of f in degree r: (d - r + 1) x (r + 1) with entry
/// (j, k) = a_(j+k) in the normalized basis. Requires 1 <= r <= d and f
/// nonzero.
pub fn catalecticant(f: &BinaryForm, r: usize) -> Result<ExactMatrix> {
    let d = f.degree();
    if r < 1 || r > d {
        return Err(Error::BadArgument(format!(
            "catalecticant degree r = {r} outside 1..={d}"
        )));
    }
    if f.is_zero() {
        return Err(Error::ZeroForm);
    }
    let a = f.normalized_coeffs();
    let mut entries = Vec::with_capacity((d - r + 1) * (r + 1));
    for j in 0..=(d - r) {
        for k in 0..=r {
            entries.push(a[j + k].clone());
        }
    }
    Ok(ExactMatrix::new(d - r + 1, r + 1, entries))
}

/// Kernel of a contraction-style matrix, packaged as a space of forms: a
/// kernel vector of length r + 1 is read as the monomial coefficients of a
/// degree-r form. Basis vectors are coprime integers with positive leading
/// nonzero entry, ordered by free column, so the output is deterministic.
pub fn kernel(m: &ExactMatrix) -> Result<FormSubspace> {
    if m.cols() == 0 {
        return Err(Error::BadArgument("kernel of a matrix with no columns".into()));
    }
    let degree = m.cols() - 1;
    let basis = m
        .kernel_vectors()
        .into_iter()
        .map(|v| BinaryForm::new(degree, v, Basis::Monomial))
        .collect::<Result<Vec<_>>>()?;
    FormSubspace::new(degree, basis)
}

/// contract(h, f) for deg h <= deg f; see the module docs for the pairing.
pub fn contract(h: &BinaryForm, f: &BinaryForm) -> Result<BinaryForm> {
    let r = h.degree();
    let d = f.degree();
    if r > d {
        return Err(Error::DegreeMismatch(r, d));
    }
    let b = h.monomial_coeffs();
    let a = f.normalized_coeffs();
    let coeffs = (0..=(d - r))
        .map(|j| {
            let mut acc = Q::zero();
            for (k, bk) in b.iter().enumerate() {
                if !bk.is_zero() {
                    acc += bk * &a[j + k];
                }
            }
            acc
        })
        .collect();
    BinaryForm::new(d - r, coeffs, Basis::Normalized)
}

/// The space of degree-r apolar forms of f: the kernel of `catalecticant`.
pub fn apolar_kernel(f: &BinaryForm, r: usize) -> Result<FormSubspace> {
    kernel(&catalecticant(f, r)?)
}

/// All degree-d forms annihilated by w: {f of degree d : contract(w, f) = 0}.
/// Requires w nonzero of degree <= d; the result has dimension deg w, and its
/// basis forms' coefficient vectors (normalized basis) are exact kernel
/// vectors of the shifted-coefficient matrix of w.
pub fn annihilator_space(w: &BinaryForm, d: usize) -> Result<FormSubspace> {
    let r = w.degree();
    if w.is_zero() {
        return Err(Error::ZeroForm);
    }
    if r > d {
        return Err(Error::DegreeMismatch(r, d));
    }
    let b = w.monomial_coeffs();
    // Row j expresses contract(w, f)_j = sum_i b_(i-j) a_i = 0.
    let mut rows = Vec::with_capacity(d - r + 1);
    for j in 0..=(d - r) {
        let mut row = vec![Q::zero(); d + 1];
        for (k, bk) in b.iter().enumerate() {
            row[j + k] = bk.clone();
        }
        rows.push(row);
    }
    let m = ExactMatrix::from_rows(rows);
    let basis = m
        .kernel_vectors()
        .into_iter()
        .map(|v| BinaryForm::new(d, v, Basis::Normalized))
        .collect::<Result<Vec<_>>>()?;
    let space = FormSubspace::new(d, basis)?;
    debug_assert_eq!(space.dim(), r);
    Ok(space)
}
