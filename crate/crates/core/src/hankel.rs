//! Hankel operators in two realizations and their finite truncations.
//!
//! The function realization sends an analytic-type polynomial `f` to
//! `P₋(φf)`; its matrix over the character bases has entries
//! `φ^(ξ - χ)` for a negative row index `ξ` and nonnegative column index
//! `χ`, so it reads only the negative-frequency part of the symbol. The
//! sequence realization is a matrix on the nonnegative cone whose entries
//! `a(χ + ξ)` depend only on the index sum. When the order has a least
//! positive element `χ₁`, reflecting row indices by `χ ↦ -χ - χ₁`
//! identifies the two realizations entry for entry.
//!
//! Truncated operator norms computed here are certified lower bounds on the
//! norms of the untruncated operators: truncation compresses the operator,
//! and the returned value is a Rayleigh quotient of the truncation.

use std::collections::BTreeMap;

use ndarray::Array2;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::order::{CharacterIndex, ConeSelect, IndexBox, OrderSpec};
use crate::poly::TrigPoly;
use crate::transforms::p_minus;

/// Which realization a truncation was assembled in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TruncationForm {
    /// Rows in the negative cone, entries `φ^(row - col)`.
    Hankel,
    /// Rows in the nonnegative cone, entries `a(row + col)`.
    Gamma,
}

/// A dense finite slice of a Hankel operator with explicit index lists.
#[derive(Clone, Debug, PartialEq)]
pub struct HankelTruncation {
    form: TruncationForm,
    rows: Vec<CharacterIndex>,
    cols: Vec<CharacterIndex>,
    entries: Array2<Complex64>,
}

/// Certified singular-value estimate with witness vectors.
#[derive(Clone, Debug)]
pub struct SingularEstimate {
    /// Largest singular value found; always a valid lower bound on the
    /// operator norm of the untruncated operator.
    pub value: f64,
    /// Right singular vector witness, indexed like the columns.
    pub right: Vec<Complex64>,
    /// Left singular vector witness, indexed like the rows.
    pub left: Vec<Complex64>,
    /// Iterations actually performed.
    pub iterations: usize,
}

/// A kernel on the nonnegative cone with finite support.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ConeKernel {
    n: usize,
    values: BTreeMap<CharacterIndex, Complex64>,
}

impl ConeKernel {
    pub fn new(n: usize) -> Self {
        ConeKernel {
            n,
            values: BTreeMap::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn set(&mut self, k: CharacterIndex, v: Complex64) {
        assert_eq!(k.dim(), self.n);
        if v != Complex64::new(0.0, 0.0) {
            self.values.insert(k, v);
        }
    }

    /// Kernel value; zero off the stored support.
    pub fn eval(&self, k: &CharacterIndex) -> Complex64 {
        self.values
            .get(k)
            .copied()
            .unwrap_or_else(|| Complex64::new(0.0, 0.0))
    }

    pub fn support(&self) -> impl Iterator<Item = (&CharacterIndex, Complex64)> {
        self.values.iter().map(|(k, &v)| (k, v))
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }
}

impl HankelTruncation {
    pub fn form(&self) -> TruncationForm {
        self.form
    }

    pub fn rows(&self) -> &[CharacterIndex] {
        &self.rows
    }

    pub fn cols(&self) -> &[CharacterIndex] {
        &self.cols
    }

    pub fn entries(&self) -> &Array2<Complex64> {
        &self.entries
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.entries[[i, j]]
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    /// Largest singular value by power iteration on `T*T`; see
    /// [`matrix_operator_norm`].
    pub fn operator_norm(&self, tol: f64, max_iters: usize) -> Result<SingularEstimate> {
        matrix_operator_norm(&self.entries, tol, max_iters)
    }

    /// JSON export `{form, rows, cols, re, im}` for external inspection.
    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Export<'a> {
            form: TruncationForm,
            rows: Vec<&'a [i64]>,
            cols: Vec<&'a [i64]>,
            re: Vec<Vec<f64>>,
            im: Vec<Vec<f64>>,
        }
        let re = (0..self.nrows())
            .map(|i| (0..self.ncols()).map(|j| self.entries[[i, j]].re).collect())
            .collect();
        let im = (0..self.nrows())
            .map(|i| (0..self.ncols()).map(|j| self.entries[[i, j]].im).collect())
            .collect();
        serde_json::to_string(&Export {
            form: self.form,
            rows: self.rows.iter().map(|k| k.coords()).collect(),
            cols: self.cols.iter().map(|k| k.coords()).collect(),
            re,
            im,
        })
        .expect("truncation serialization")
    }
}

/// Apply the Hankel operator with symbol `phi` to an analytic-type
/// polynomial: `f ↦ P₋(φf)`.
pub fn apply_hankel(order: &OrderSpec, phi: &TrigPoly, f: &TrigPoly) -> Result<TrigPoly> {
    if phi.dim() != f.dim() {
        return Err(Error::DimensionMismatch {
            expected: phi.dim(),
            found: f.dim(),
        });
    }
    if !p_minus(order, f)?.is_zero() {
        return Err(Error::NotAnalytic);
    }
    p_minus(order, &phi.multiply(f)?)
}

/// Assemble the function-realization truncation: rows must lie in the
/// negative cone, columns in the nonnegative cone, and
/// `entry(i, j) = φ^(rows[i] - cols[j])`, exactly.
pub fn hankel_matrix(
    order: &OrderSpec,
    phi: &TrigPoly,
    rows: &[CharacterIndex],
    cols: &[CharacterIndex],
) -> Result<HankelTruncation> {
    for xi in rows {
        if order.cone_sign(xi)? >= 0 {
            return Err(Error::WrongCone {
                index: xi.coords().to_vec(),
                required: "negative",
            });
        }
    }
    for chi in cols {
        if order.cone_sign(chi)? < 0 {
            return Err(Error::WrongCone {
                index: chi.coords().to_vec(),
                required: "nonnegative",
            });
        }
    }
    let mut entries = Array2::from_elem((rows.len(), cols.len()), Complex64::new(0.0, 0.0));
    entries
        .outer_iter_mut()
        .into_par_iter()
        .enumerate()
        .for_each(|(i, mut row)| {
            for (j, chi) in cols.iter().enumerate() {
                row[j] = phi.coeff(&rows[i].sub(chi));
            }
        });
    Ok(HankelTruncation {
        form: TruncationForm::Hankel,
        rows: rows.to_vec(),
        cols: cols.to_vec(),
        entries,
    })
}

/// Kernel of the sequence realization for the symbol `phi`:
/// `a(χ) = φ^(-χ - χ₁)` on the nonnegative cone. The support is finite and
/// computed exactly as the reflection of the symbol's negative-frequency
/// support; requires a least positive element.
pub fn gamma_kernel(order: &OrderSpec, phi: &TrigPoly) -> Result<ConeKernel> {
    order.minimal_positive()?;
    if phi.dim() != order.dim() {
        return Err(Error::DimensionMismatch {
            expected: order.dim(),
            found: phi.dim(),
        });
    }
    let mut kernel = ConeKernel::new(phi.dim());
    let negative_part = p_minus(order, phi)?;
    for (s, c) in negative_part.terms() {
        let chi = order.mirror_to_nonnegative(s)?;
        kernel.set(chi, c);
    }
    Ok(kernel)
}

/// Kernel of the bilinear-form realization for the symbol `phi`:
/// `k(χ) = φ^(-χ)` on the nonnegative cone (unit character included).
pub fn form_kernel(order: &OrderSpec, phi: &TrigPoly) -> Result<ConeKernel> {
    if phi.dim() != order.dim() {
        return Err(Error::DimensionMismatch {
            expected: order.dim(),
            found: phi.dim(),
        });
    }
    let mut kernel = ConeKernel::new(phi.dim());
    for (s, c) in phi.terms() {
        let chi = s.negate();
        if order.cone_sign(&chi)? >= 0 {
            kernel.set(chi, c);
        }
    }
    Ok(kernel)
}

/// Assemble the sequence-realization truncation over the nonnegative
/// indices of the box: `entry(χ, ξ) = a(χ + ξ)`. The result is symmetric
/// because the entry depends only on the index sum.
pub fn gamma_matrix(
    order: &OrderSpec,
    kernel: &ConeKernel,
    pos_box: &IndexBox,
) -> Result<HankelTruncation> {
    if kernel.dim() != order.dim() {
        return Err(Error::DimensionMismatch {
            expected: order.dim(),
            found: kernel.dim(),
        });
    }
    let indices = order.enumerate_cone(pos_box, ConeSelect::NonNegative)?;
    let m = indices.len();
    let mut entries = Array2::from_elem((m, m), Complex64::new(0.0, 0.0));
    for i in 0..m {
        for j in 0..m {
            entries[[i, j]] = kernel.eval(&indices[i].add(&indices[j]));
        }
    }
    Ok(HankelTruncation {
        form: TruncationForm::Gamma,
        rows: indices.clone(),
        cols: indices,
        entries,
    })
}

/// Re-index a truncation between the two realizations by reflecting its
/// rows with `χ ↦ -χ - χ₁`. Entries are untouched, so the singular values
/// are preserved exactly. Requires a least positive element.
pub fn unitary_transfer(order: &OrderSpec, t: &HankelTruncation) -> Result<HankelTruncation> {
    let (mapped, form) = match t.form {
        TruncationForm::Gamma => (
            t.rows
                .iter()
                .map(|chi| order.mirror_to_negative(chi))
                .collect::<Result<Vec<_>>>()?,
            TruncationForm::Hankel,
        ),
        TruncationForm::Hankel => (
            t.rows
                .iter()
                .map(|xi| order.mirror_to_nonnegative(xi))
                .collect::<Result<Vec<_>>>()?,
            TruncationForm::Gamma,
        ),
    };
    Ok(HankelTruncation {
        form,
        rows: mapped,
        cols: t.cols.clone(),
        entries: t.entries.clone(),
    })
}

/// Both sides of the shift intertwining relation, assembled as products of
/// matrices compressed to the same index boxes.
#[derive(Clone, Debug)]
pub struct ShiftIntertwining {
    /// Truncation of (Hankel ∘ shift).
    pub lhs: Array2<Complex64>,
    /// Truncation of (P₋ ∘ shift ∘ Hankel).
    pub rhs: Array2<Complex64>,
    /// Interior mask: true where neither compressed factor lost mass, so
    /// the two sides must agree exactly.
    pub interior: Array2<bool>,
}

/// Compress both sides of `H_φ S_χ = P₋ S_χ H_φ` (with `S_χ: f ↦ χ·f`,
/// `χ` nonnegative) to the given row/column index lists and record where
/// the compression is leak-free.
pub fn shift_compress(
    order: &OrderSpec,
    chi: &CharacterIndex,
    phi: &TrigPoly,
    rows: &[CharacterIndex],
    cols: &[CharacterIndex],
) -> Result<ShiftIntertwining> {
    if order.cone_sign(chi)? < 0 {
        return Err(Error::WrongCone {
            index: chi.coords().to_vec(),
            required: "nonnegative",
        });
    }
    let hankel = hankel_matrix(order, phi, rows, cols)?;
    let (r, c) = (rows.len(), cols.len());
    let col_pos: BTreeMap<&CharacterIndex, usize> =
        cols.iter().enumerate().map(|(i, k)| (k, i)).collect();
    let row_pos: BTreeMap<&CharacterIndex, usize> =
        rows.iter().enumerate().map(|(i, k)| (k, i)).collect();

    // Compressed shift on the column space: the basis vector at `col` maps
    // to the basis vector at `col + χ` when that index is still in the box.
    let mut lhs = Array2::from_elem((r, c), Complex64::new(0.0, 0.0));
    for j in 0..c {
        let shifted = cols[j].add(chi);
        if let Some(&jj) = col_pos.get(&shifted) {
            for i in 0..r {
                lhs[[i, j]] = hankel.entries[[i, jj]];
            }
        }
    }

    // Compressed (P₋ ∘ shift) on the row space: row `ξ` receives the row
    // `ξ - χ` of the Hankel factor when that index is still in the box.
    // (Shifting a negative index by `-χ` stays negative, so the projection
    // only acts through the box compression.)
    let mut rhs = Array2::from_elem((r, c), Complex64::new(0.0, 0.0));
    for i in 0..r {
        let source = rows[i].sub(chi);
        if let Some(&ii) = row_pos.get(&source) {
            for j in 0..c {
                rhs[[i, j]] = hankel.entries[[ii, j]];
            }
        }
    }

    let mut interior = Array2::from_elem((r, c), false);
    for i in 0..r {
        let row_ok = row_pos.contains_key(&rows[i].sub(chi));
        for j in 0..c {
            interior[[i, j]] = row_ok && col_pos.contains_key(&cols[j].add(chi));
        }
    }
    Ok(ShiftIntertwining { lhs, rhs, interior })
}

/// Norm of the bilinear form with the given kernel over the nonnegative
/// indices of the box: largest singular value of `B[χ, η] = k(χ + η)`.
pub fn form_norm(
    order: &OrderSpec,
    kernel: &ConeKernel,
    pos_box: &IndexBox,
    tol: f64,
    max_iters: usize,
) -> Result<f64> {
    let matrix = gamma_matrix(order, kernel, pos_box)?;
    Ok(matrix.operator_norm(tol, max_iters)?.value)
}

/// Largest singular value of a dense matrix by power iteration on `T*T`.
///
/// The start vector is the normalized all-ones vector; convergence is
/// declared when the relative Rayleigh-quotient change stays below `tol`
/// for three consecutive iterations. The returned value is `‖T v‖` for the
/// final unit iterate `v`, hence always a valid lower bound on `‖T‖`.
pub fn matrix_operator_norm(
    entries: &Array2<Complex64>,
    tol: f64,
    max_iters: usize,
) -> Result<SingularEstimate> {
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument(
            "power iteration tolerance must be positive".into(),
        ));
    }
    let (r, c) = entries.dim();
    if r == 0 || c == 0 {
        return Ok(SingularEstimate {
            value: 0.0,
            right: vec![Complex64::new(0.0, 0.0); c],
            left: vec![Complex64::new(0.0, 0.0); r],
            iterations: 0,
        });
    }

    let zero = Complex64::new(0.0, 0.0);
    // w = T v, fixed summation order within each row; rows in parallel.
    let apply = |v: &[Complex64]| -> Vec<Complex64> {
        (0..r)
            .into_par_iter()
            .map(|i| {
                let mut acc = zero;
                for j in 0..c {
                    acc += entries[[i, j]] * v[j];
                }
                acc
            })
            .collect()
    };
    // z = T* w.
    let apply_adjoint = |w: &[Complex64]| -> Vec<Complex64> {
        (0..c)
            .into_par_iter()
            .map(|j| {
                let mut acc = zero;
                for i in 0..r {
                    acc += entries[[i, j]].conj() * w[i];
                }
                acc
            })
            .collect()
    };

    let norm = |v: &[Complex64]| v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();

    let mut v = vec![Complex64::new(1.0 / (c as f64).sqrt(), 0.0); c];
    let mut lambda_prev = f64::NAN;
    let mut last_gap = f64::INFINITY;
    let mut stable = 0usize;
    let mut performed = 0usize;
    let mut converged = false;
    for it in 1..=max_iters {
        performed = it;
        let w = apply(&v);
        let lambda: f64 = w.iter().map(|z| z.norm_sqr()).sum();
        if !lambda.is_finite() {
            return Err(Error::NonFinite {
                context: "power iteration",
            });
        }
        if lambda == 0.0 {
            // T annihilates the iterate: report the (sound) trivial bound.
            return Ok(SingularEstimate {
                value: 0.0,
                right: v,
                left: vec![zero; r],
                iterations: it,
            });
        }
        let z = apply_adjoint(&w);
        let zn = norm(&z);
        if zn == 0.0 {
            return Ok(SingularEstimate {
                value: 0.0,
                right: v,
                left: vec![zero; r],
                iterations: it,
            });
        }
        for (slot, zi) in v.iter_mut().zip(&z) {
            *slot = *zi / zn;
        }
        let gap = if lambda_prev.is_nan() {
            f64::INFINITY
        } else {
            (lambda - lambda_prev).abs() / lambda.max(f64::MIN_POSITIVE)
        };
        lambda_prev = lambda;
        last_gap = gap;
        if gap < tol {
            stable += 1;
            if stable >= 3 {
                converged = true;
                break;
            }
        } else {
            stable = 0;
        }
    }

    let w = apply(&v);
    let sigma = norm(&w);
    if !converged {
        return Err(Error::NoConvergence {
            iterations: performed,
            last: sigma,
            gap: last_gap,
        });
    }
    let left = if sigma > 0.0 {
        w.iter().map(|z| z / sigma).collect()
    } else {
        vec![zero; r]
    };
    Ok(SingularEstimate {
        value: sigma,
        right: v,
        left,
        iterations: performed,
    })
}
