//! Hilbert transform and Hardy projections on coefficient maps.
//!
//! The Hilbert transform is defined as the Fourier multiplier
//! `f^(k) ↦ -i · sign(k) · f^(k)` with the sign taken in the active order;
//! the projection/transform interconversion formulas are then verified
//! against it rather than the other way round, since the multiplier is the
//! only computable description available.

use num_complex::Complex64;

use crate::error::Result;
use crate::order::OrderSpec;
use crate::poly::TrigPoly;

/// Conjugate-function transform: multiplies each coefficient by
/// `-i · sign(k)`. The mean (coefficient at the unit character) maps to zero.
pub fn hilbert(order: &OrderSpec, f: &TrigPoly) -> Result<TrigPoly> {
    let mut out = TrigPoly::zero(f.dim());
    for (k, c) in f.terms() {
        let sign = order.cone_sign(k)?;
        if sign != 0 {
            out.set_coeff(k.clone(), Complex64::new(0.0, -(sign as f64)) * c);
        }
    }
    Ok(out)
}

/// Projection onto the nonnegative cone (the analytic Hardy space; the unit
/// character is kept).
pub fn p_plus(order: &OrderSpec, f: &TrigPoly) -> Result<TrigPoly> {
    let mut out = TrigPoly::zero(f.dim());
    for (k, c) in f.terms() {
        if order.cone_sign(k)? >= 0 {
            out.set_coeff(k.clone(), c);
        }
    }
    Ok(out)
}

/// Projection onto the strictly negative cone, the orthogonal complement of
/// [`p_plus`].
pub fn p_minus(order: &OrderSpec, f: &TrigPoly) -> Result<TrigPoly> {
    let mut out = TrigPoly::zero(f.dim());
    for (k, c) in f.terms() {
        if order.cone_sign(k)? < 0 {
            out.set_coeff(k.clone(), c);
        }
    }
    Ok(out)
}

/// Rebuild the conjugate function from the projections:
/// `-i (P₊ψ - P₋ψ - ψ^(0)·𝟏)`. Coefficient-exactly equal to [`hilbert`].
pub fn conjugate_via_projections(order: &OrderSpec, psi: &TrigPoly) -> Result<TrigPoly> {
    let n = psi.dim();
    let plus = p_plus(order, psi)?;
    let minus = p_minus(order, psi)?;
    let mean = TrigPoly::constant(n, psi.coeff(&crate::order::CharacterIndex::zero(n)));
    let combination = plus.sub(&minus)?.sub(&mean)?;
    Ok(combination.scale(Complex64::new(0.0, -1.0)))
}

/// Recover both projections from the conjugate function:
/// `P₋h = (h - i h̃ - h^(0)·𝟏)/2` and `P₊h = (h + i h̃ + h^(0)·𝟏)/2`.
/// Returns `(P₋h, P₊h)`, coefficient-exactly equal to the projections.
pub fn projections_via_hilbert(order: &OrderSpec, h: &TrigPoly) -> Result<(TrigPoly, TrigPoly)> {
    let n = h.dim();
    let transformed = hilbert(order, h)?;
    let i_transformed = transformed.scale(Complex64::new(0.0, 1.0));
    let mean = TrigPoly::constant(n, h.coeff(&crate::order::CharacterIndex::zero(n)));
    let half = Complex64::new(0.5, 0.0);
    let minus = h.sub(&i_transformed)?.sub(&mean)?.scale(half);
    let plus = h.add(&i_transformed)?.add(&mean)?.scale(half);
    Ok((minus, plus))
}
