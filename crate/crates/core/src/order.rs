//! Character-lattice arithmetic with a pluggable linear order.
//!
//! Characters of the n-torus are indexed additively by `ℤⁿ`: the index
//! `k` stands for `x ↦ e^{2πi k·x}`, the zero vector is the unit character,
//! and negation is pointwise inversion. A linear order on the lattice is
//! specified by a cone-sign rule; the nonnegative cone `X₊` contains the
//! unit character, is closed under addition, and meets its own reflection
//! only at zero.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Denominator used to rationalize the coefficients of a linear-functional
/// order. Signs are then computed in exact integer arithmetic; the
/// approximation is only as good as this bound and exactness is not claimed.
pub const FUNCTIONAL_DENOMINATOR: f64 = 1e9;

/// A character of the n-torus, written additively: `k` is the character
/// `x ↦ e^{2πi k·x}`, `k + j` is the pointwise product and `-k` the
/// conjugate. All indices in one session share a fixed dimension.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CharacterIndex {
    coords: Vec<i64>,
}

impl CharacterIndex {
    pub fn new(coords: Vec<i64>) -> Self {
        assert!(!coords.is_empty(), "character index needs dimension >= 1");
        CharacterIndex { coords }
    }

    /// The unit character of dimension `n`.
    pub fn zero(n: usize) -> Self {
        CharacterIndex::new(vec![0; n])
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn negate(&self) -> Self {
        CharacterIndex::new(self.coords.iter().map(|&c| -c).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim(), other.dim(), "character dimension mismatch");
        CharacterIndex::new(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.dim(), other.dim(), "character dimension mismatch");
        CharacterIndex::new(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }
}

impl From<Vec<i64>> for CharacterIndex {
    fn from(coords: Vec<i64>) -> Self {
        CharacterIndex::new(coords)
    }
}

impl From<&[i64]> for CharacterIndex {
    fn from(coords: &[i64]) -> Self {
        CharacterIndex::new(coords.to_vec())
    }
}

impl fmt::Debug for CharacterIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CharacterIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coords.len() == 1 {
            write!(f, "{}", self.coords[0])
        } else {
            write!(f, "(")?;
            for (i, c) in self.coords.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{c}")?;
            }
            write!(f, ")")
        }
    }
}

/// A finite per-coordinate box of lattice points, `lo[i] ..= hi[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexBox {
    lo: Vec<i64>,
    hi: Vec<i64>,
}

impl IndexBox {
    pub fn new(lo: Vec<i64>, hi: Vec<i64>) -> Result<Self> {
        if lo.len() != hi.len() || lo.is_empty() {
            return Err(Error::InvalidArgument(format!(
                "box bounds must share a positive dimension (got {} and {})",
                lo.len(),
                hi.len()
            )));
        }
        if lo.iter().zip(&hi).any(|(l, h)| l > h) {
            return Err(Error::InvalidArgument(
                "box lower bound exceeds upper bound".into(),
            ));
        }
        Ok(IndexBox { lo, hi })
    }

    /// The box `[-radius, radius]ⁿ`.
    pub fn symmetric(n: usize, radius: i64) -> Self {
        assert!(n >= 1 && radius >= 0);
        IndexBox {
            lo: vec![-radius; n],
            hi: vec![radius; n],
        }
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn lo(&self) -> &[i64] {
        &self.lo
    }

    pub fn hi(&self) -> &[i64] {
        &self.hi
    }

    pub fn contains(&self, k: &CharacterIndex) -> bool {
        k.dim() == self.dim()
            && k.coords()
                .iter()
                .zip(self.lo.iter().zip(&self.hi))
                .all(|(c, (l, h))| l <= c && c <= h)
    }

    /// Number of lattice points in the box.
    pub fn point_count(&self) -> usize {
        self.lo
            .iter()
            .zip(&self.hi)
            .map(|(l, h)| (h - l + 1) as usize)
            .product()
    }

    /// All lattice points, row-major (first coordinate slowest).
    pub fn points(&self) -> Vec<CharacterIndex> {
        let n = self.dim();
        let mut out = Vec::with_capacity(self.point_count());
        let mut cur: Vec<i64> = self.lo.clone();
        'outer: loop {
            out.push(CharacterIndex::new(cur.clone()));
            let mut axis = n;
            loop {
                if axis == 0 {
                    break 'outer;
                }
                axis -= 1;
                if cur[axis] < self.hi[axis] {
                    cur[axis] += 1;
                    for i in axis + 1..n {
                        cur[i] = self.lo[i];
                    }
                    break;
                }
            }
        }
        out
    }

    /// Grow the box by `by` in every direction.
    pub fn inflate(&self, by: i64) -> Self {
        IndexBox {
            lo: self.lo.iter().map(|l| l - by).collect(),
            hi: self.hi.iter().map(|h| h + by).collect(),
        }
    }

    /// Smallest box containing both operands.
    pub fn hull(&self, other: &IndexBox) -> Result<IndexBox> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(IndexBox {
            lo: self
                .lo
                .iter()
                .zip(&other.lo)
                .map(|(a, b)| *a.min(b))
                .collect(),
            hi: self
                .hi
                .iter()
                .zip(&other.hi)
                .map(|(a, b)| *a.max(b))
                .collect(),
        })
    }
}

/// Which part of the lattice to enumerate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConeSelect {
    /// The nonnegative cone `X₊`, unit character included.
    NonNegative,
    /// The strictly negative cone `X₋`.
    Negative,
}

/// A linear, translation-invariant order on the character lattice `ℤⁿ`,
/// given by its cone-sign rule.
///
/// `lex` compares coordinates most-significant-first, so `(0,…,0,1)` is the
/// least positive element. `functional` orders by the sign of `α·k` for a
/// fixed coefficient vector `α` with at least one irrational ratio; its
/// positive cone has no least element, which this crate reports as
/// [`Error::NoMinimalPositive`] wherever a least element is required.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum OrderSpec {
    Lex { n: usize },
    Functional { alpha: Vec<f64>, n: usize },
}

impl OrderSpec {
    /// Lexicographic order on `ℤⁿ`.
    pub fn lex(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("dimension must be >= 1".into()));
        }
        Ok(OrderSpec::Lex { n })
    }

    /// Order by the sign of `α·k`. The coefficients are rationalized with
    /// denominator [`FUNCTIONAL_DENOMINATOR`] so that signs are computed in
    /// exact integer arithmetic.
    pub fn functional(alpha: Vec<f64>) -> Result<Self> {
        let n = alpha.len();
        if n == 0 {
            return Err(Error::InvalidArgument("dimension must be >= 1".into()));
        }
        if alpha.iter().any(|a| !a.is_finite()) {
            return Err(Error::InvalidArgument(
                "functional coefficients must be finite".into(),
            ));
        }
        if alpha.iter().all(|&a| a == 0.0) {
            return Err(Error::InvalidArgument(
                "functional coefficients must not all vanish".into(),
            ));
        }
        Ok(OrderSpec::Functional { alpha, n })
    }

    pub fn dim(&self) -> usize {
        match self {
            OrderSpec::Lex { n } => *n,
            OrderSpec::Functional { n, .. } => *n,
        }
    }

    /// Check a deserialized spec for internal consistency.
    pub fn validate(&self) -> Result<()> {
        match self {
            OrderSpec::Lex { n } => {
                OrderSpec::lex(*n)?;
            }
            OrderSpec::Functional { alpha, n } => {
                if alpha.len() != *n {
                    return Err(Error::InvalidArgument(format!(
                        "functional order: alpha has {} entries for dimension {}",
                        alpha.len(),
                        n
                    )));
                }
                OrderSpec::functional(alpha.clone())?;
            }
        }
        Ok(())
    }

    fn check_dim(&self, k: &CharacterIndex) -> Result<()> {
        if k.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: k.dim(),
            });
        }
        Ok(())
    }

    /// Sign of `k` in this order: `+1` on `X₊ \ {0}`, `0` at the unit
    /// character, `-1` on `X₋`.
    pub fn cone_sign(&self, k: &CharacterIndex) -> Result<i8> {
        self.check_dim(k)?;
        Ok(match self {
            OrderSpec::Lex { .. } => k
                .coords()
                .iter()
                .find(|&&c| c != 0)
                .map_or(0, |&c| if c > 0 { 1 } else { -1 }),
            OrderSpec::Functional { alpha, .. } => {
                let value: i128 = alpha
                    .iter()
                    .zip(k.coords())
                    .map(|(a, &c)| {
                        let scaled = (a * FUNCTIONAL_DENOMINATOR).round() as i128;
                        scaled * c as i128
                    })
                    .sum();
                match value.cmp(&0) {
                    Ordering::Greater => 1,
                    Ordering::Equal => 0,
                    Ordering::Less => -1,
                }
            }
        })
    }

    /// Total order induced by the cone: `j <= k` iff `k - j` is nonnegative.
    pub fn compare(&self, j: &CharacterIndex, k: &CharacterIndex) -> Result<Ordering> {
        self.check_dim(j)?;
        Ok(match self.cone_sign(&k.sub(j))? {
            1 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        })
    }

    /// The least element of `X₊ \ {0}`, when one exists.
    pub fn minimal_positive(&self) -> Result<CharacterIndex> {
        match self {
            OrderSpec::Lex { n } => {
                let mut coords = vec![0; *n];
                coords[*n - 1] = 1;
                Ok(CharacterIndex::new(coords))
            }
            // A functional order with an irrational coefficient ratio admits
            // integer points with arbitrarily small positive value.
            OrderSpec::Functional { .. } => Err(Error::NoMinimalPositive),
        }
    }

    /// All points of the box lying in the selected cone, sorted ascending.
    pub fn enumerate_cone(
        &self,
        bound: &IndexBox,
        which: ConeSelect,
    ) -> Result<Vec<CharacterIndex>> {
        if bound.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: bound.dim(),
            });
        }
        let mut out = Vec::new();
        for k in bound.points() {
            let sign = self.cone_sign(&k)?;
            let keep = match which {
                ConeSelect::NonNegative => sign >= 0,
                ConeSelect::Negative => sign < 0,
            };
            if keep {
                out.push(k);
            }
        }
        self.sort_ascending(&mut out)?;
        Ok(out)
    }

    /// Sort indices ascending in this order.
    pub fn sort_ascending(&self, indices: &mut [CharacterIndex]) -> Result<()> {
        for k in indices.iter() {
            self.check_dim(k)?;
        }
        indices.sort_by(|a, b| self.compare(a, b).expect("dimensions checked"));
        Ok(())
    }

    /// Reflect a nonnegative index into the negative cone: `k ↦ -k - χ₁`
    /// where `χ₁` is the least positive element. This is a bijection from
    /// `X₊` onto `X₋`; its inverse is [`OrderSpec::mirror_to_nonnegative`].
    pub fn mirror_to_negative(&self, k: &CharacterIndex) -> Result<CharacterIndex> {
        self.check_dim(k)?;
        let chi1 = self.minimal_positive()?;
        if self.cone_sign(k)? < 0 {
            return Err(Error::WrongCone {
                index: k.coords().to_vec(),
                required: "nonnegative",
            });
        }
        Ok(k.negate().sub(&chi1))
    }

    /// Inverse of [`OrderSpec::mirror_to_negative`]: `ξ ↦ -ξ - χ₁` for `ξ`
    /// in the negative cone.
    pub fn mirror_to_nonnegative(&self, xi: &CharacterIndex) -> Result<CharacterIndex> {
        self.check_dim(xi)?;
        let chi1 = self.minimal_positive()?;
        if self.cone_sign(xi)? >= 0 {
            return Err(Error::WrongCone {
                index: xi.coords().to_vec(),
                required: "negative",
            });
        }
        Ok(xi.negate().sub(&chi1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lex(n: usize) -> OrderSpec {
        OrderSpec::lex(n).unwrap()
    }

    fn ci(coords: &[i64]) -> CharacterIndex {
        CharacterIndex::from(coords)
    }

    #[test]
    fn cone_sign_lex_examples() {
        assert_eq!(lex(2).cone_sign(&ci(&[0, 0])).unwrap(), 0);
        assert_eq!(lex(2).cone_sign(&ci(&[-1, 1000])).unwrap(), -1);
        assert_eq!(lex(3).cone_sign(&ci(&[0, 0, 1])).unwrap(), 1);
    }

    #[test]
    fn cone_sign_dimension_mismatch() {
        assert!(matches!(
            lex(2).cone_sign(&ci(&[1, 2, 3])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn minimal_positive_lex() {
        assert_eq!(lex(1).minimal_positive().unwrap(), ci(&[1]));
        assert_eq!(lex(3).minimal_positive().unwrap(), ci(&[0, 0, 1]));
    }

    #[test]
    fn minimal_positive_functional_fails() {
        let order = OrderSpec::functional(vec![1.0, std::f64::consts::SQRT_2]).unwrap();
        assert_eq!(order.minimal_positive(), Err(Error::NoMinimalPositive));
    }

    /// Independent confirmation that the functional order `α = (1, √2)` has
    /// no least positive element: the continued-fraction convergents of √2
    /// produce integer points whose value under `α` is positive and shrinks
    /// below any given candidate.
    #[test]
    fn functional_order_has_arbitrarily_small_positive_points() {
        let order = OrderSpec::functional(vec![1.0, std::f64::consts::SQRT_2]).unwrap();
        // Convergents p/q of √2 from the recurrence p' = p + 2q, q' = p + q.
        let (mut p, mut q) = (1i64, 1i64);
        let mut last_value = f64::INFINITY;
        let mut shrinking_positives = 0;
        // Depth 10 keeps q small enough that the rationalized cone sign
        // still agrees with the true irrational sign.
        for _ in 0..10 {
            let (np, nq) = (p + 2 * q, p + q);
            p = np;
            q = nq;
            // Value of the point (p, -q) or (-p, q), whichever is positive.
            let v = p as f64 - (q as f64) * std::f64::consts::SQRT_2;
            let (point, value) = if v > 0.0 {
                (ci(&[p, -q]), v)
            } else {
                (ci(&[-p, q]), -v)
            };
            assert_eq!(order.cone_sign(&point).unwrap(), 1, "point must be positive");
            if value < last_value {
                shrinking_positives += 1;
                last_value = value;
            }
        }
        assert!(
            shrinking_positives >= 9,
            "convergents must keep producing smaller positive points"
        );
        assert!(last_value < 1e-3);
    }

    #[test]
    fn compare_examples() {
        assert_eq!(
            lex(2).compare(&ci(&[0, 5]), &ci(&[1, -100])).unwrap(),
            Ordering::Less
        );
        assert_eq!(
            lex(2).compare(&ci(&[2, 3]), &ci(&[2, 3])).unwrap(),
            Ordering::Equal
        );
        assert_eq!(
            lex(1).compare(&ci(&[4]), &ci(&[-1])).unwrap(),
            Ordering::Greater
        );
    }

    #[test]
    fn enumerate_cone_examples() {
        let b1 = IndexBox::new(vec![-3], vec![3]).unwrap();
        let pos: Vec<_> = lex(1)
            .enumerate_cone(&b1, ConeSelect::NonNegative)
            .unwrap()
            .iter()
            .map(|k| k.coords()[0])
            .collect();
        assert_eq!(pos, vec![0, 1, 2, 3]);
        let neg: Vec<_> = lex(1)
            .enumerate_cone(&b1, ConeSelect::Negative)
            .unwrap()
            .iter()
            .map(|k| k.coords()[0])
            .collect();
        assert_eq!(neg, vec![-3, -2, -1]);

        let b2 = IndexBox::symmetric(2, 1);
        let pos2 = lex(2).enumerate_cone(&b2, ConeSelect::NonNegative).unwrap();
        let expect: Vec<CharacterIndex> = [[0, 0], [0, 1], [1, -1], [1, 0], [1, 1]]
            .iter()
            .map(|c| ci(c))
            .collect();
        assert_eq!(pos2, expect);
    }

    #[test]
    fn mirror_examples() {
        assert_eq!(lex(1).mirror_to_negative(&ci(&[0])).unwrap(), ci(&[-1]));
        assert_eq!(
            lex(2).mirror_to_negative(&ci(&[0, 0])).unwrap(),
            ci(&[0, -1])
        );
        let image = lex(2).mirror_to_negative(&ci(&[1, -2])).unwrap();
        assert_eq!(image, ci(&[-1, 1]));
        assert_eq!(lex(2).cone_sign(&image).unwrap(), -1);
        assert_eq!(lex(2).mirror_to_nonnegative(&image).unwrap(), ci(&[1, -2]));
    }

    #[test]
    fn mirror_rejects_wrong_cone() {
        assert!(matches!(
            lex(1).mirror_to_negative(&ci(&[-2])),
            Err(Error::WrongCone { .. })
        ));
        assert!(matches!(
            lex(1).mirror_to_nonnegative(&ci(&[3])),
            Err(Error::WrongCone { .. })
        ));
    }

    #[test]
    fn mirror_gated_for_functional_order() {
        let order = OrderSpec::functional(vec![1.0, std::f64::consts::SQRT_2]).unwrap();
        assert_eq!(
            order.mirror_to_negative(&ci(&[1, 0])),
            Err(Error::NoMinimalPositive)
        );
    }

    #[test]
    fn minimal_positive_is_least_among_enumerated() {
        for n in 1..=3 {
            let order = lex(n);
            let chi1 = order.minimal_positive().unwrap();
            let bound = IndexBox::symmetric(n, 2);
            let zero = CharacterIndex::zero(n);
            for k in order.enumerate_cone(&bound, ConeSelect::NonNegative).unwrap() {
                if k.is_zero() {
                    continue;
                }
                assert_ne!(
                    order.compare(&k, &chi1).unwrap(),
                    Ordering::Less,
                    "{k} sits strictly between {zero} and {chi1}"
                );
            }
        }
    }

    #[test]
    fn order_spec_json_round_trip() {
        let lex2 = lex(2);
        let s = serde_json::to_string(&lex2).unwrap();
        assert_eq!(s, r#"{"kind":"lex","n":2}"#);
        assert_eq!(serde_json::from_str::<OrderSpec>(&s).unwrap(), lex2);

        let f = OrderSpec::functional(vec![1.0, 2.5]).unwrap();
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(s, r#"{"kind":"functional","alpha":[1.0,2.5],"n":2}"#);
        assert_eq!(serde_json::from_str::<OrderSpec>(&s).unwrap(), f);
    }

    #[test]
    fn box_points_row_major() {
        let b = IndexBox::new(vec![0, -1], vec![1, 0]).unwrap();
        let pts: Vec<Vec<i64>> = b.points().iter().map(|k| k.coords().to_vec()).collect();
        assert_eq!(
            pts,
            vec![vec![0, -1], vec![0, 0], vec![1, -1], vec![1, 0]]
        );
        assert_eq!(b.point_count(), 4);
    }

    fn sampled_orders() -> Vec<OrderSpec> {
        vec![
            lex(1),
            lex(2),
            lex(3),
            OrderSpec::functional(vec![1.0, std::f64::consts::SQRT_2]).unwrap(),
        ]
    }

    proptest! {
        #[test]
        fn cone_sign_antisymmetric(coords in proptest::collection::vec(-20i64..=20, 1..=3)) {
            for order in sampled_orders() {
                if order.dim() != coords.len() {
                    continue;
                }
                let k = CharacterIndex::new(coords.clone());
                let s = order.cone_sign(&k).unwrap();
                let sn = order.cone_sign(&k.negate()).unwrap();
                prop_assert_eq!(s, -sn);
                prop_assert_eq!(s == 0, k.is_zero());
            }
        }

        #[test]
        fn cone_is_closed_under_addition(
            a in proptest::collection::vec(-20i64..=20, 2),
            b in proptest::collection::vec(-20i64..=20, 2),
        ) {
            for order in sampled_orders() {
                if order.dim() != 2 {
                    continue;
                }
                let (j, k) = (CharacterIndex::new(a.clone()), CharacterIndex::new(b.clone()));
                if order.cone_sign(&j).unwrap() >= 0 && order.cone_sign(&k).unwrap() >= 0 {
                    prop_assert!(order.cone_sign(&j.add(&k)).unwrap() >= 0);
                }
            }
        }

        #[test]
        fn mirror_is_a_bijection_on_boxes(radius in 1i64..=3, n in 1usize..=3) {
            let order = lex(n);
            let bound = IndexBox::symmetric(n, radius);
            let positives = order.enumerate_cone(&bound, ConeSelect::NonNegative).unwrap();
            let mut images = std::collections::BTreeSet::new();
            for k in &positives {
                let xi = order.mirror_to_negative(k).unwrap();
                prop_assert_eq!(order.cone_sign(&xi).unwrap(), -1);
                prop_assert!(images.insert(xi.clone()), "mirror must be injective");
                prop_assert_eq!(order.mirror_to_nonnegative(&xi).unwrap(), k.clone());
            }
            // Every negative index whose preimage lies in the box is hit.
            let chi1 = order.minimal_positive().unwrap();
            let big = bound.inflate(2);
            for xi in order.enumerate_cone(&big, ConeSelect::Negative).unwrap() {
                let pre = xi.negate().sub(&chi1);
                if bound.contains(&pre) && order.cone_sign(&pre).unwrap() >= 0 {
                    prop_assert!(images.contains(&xi), "missed negative index {}", xi);
                }
            }
        }

        #[test]
        fn enumeration_is_sorted_and_partitioned(radius in 1i64..=3) {
            let order = lex(2);
            let bound = IndexBox::symmetric(2, radius);
            let pos = order.enumerate_cone(&bound, ConeSelect::NonNegative).unwrap();
            let neg = order.enumerate_cone(&bound, ConeSelect::Negative).unwrap();
            prop_assert_eq!(pos.len() + neg.len(), bound.point_count());
            for w in pos.windows(2) {
                prop_assert_eq!(order.compare(&w[0], &w[1]).unwrap(), Ordering::Less);
            }
            for w in neg.windows(2) {
                prop_assert_eq!(order.compare(&w[0], &w[1]).unwrap(), Ordering::Less);
            }
        }
    }
}
