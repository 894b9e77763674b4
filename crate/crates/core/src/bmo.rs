//! Bounded-mean-oscillation norm machinery.
//!
//! The BMO-type norms are infima over decompositions and are never claimed
//! to be computed exactly. The module's contract is:
//!
//! - sound *upper* bounds from explicit decompositions — either
//!   `φ = f + g̃` with bound `‖f‖∞ + ‖g‖∞`, or `φ = P₋f₁ + P₊g₁` with bound
//!   `max(‖f₁‖∞, ‖g₁‖∞)` — where sup norms are grid estimates;
//! - sound *lower* bounds from truncated Hankel operator norms,
//!   `‖H_φ̄‖ + ‖H_φ‖`;
//! - the constructive conversions between the two decomposition styles,
//!   coefficient-exact in both directions;
//! - a verifier that checks every inequality of the norm-equivalence
//!   sandwich in its sound direction, with a declared slack covering the
//!   grid's underestimate of the sup norm.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hankel::hankel_matrix;
use crate::order::{CharacterIndex, ConeSelect, IndexBox, OrderSpec};
use crate::poly::{GridSpec, SymbolFile, TrigPoly};
use crate::transforms::{hilbert, p_minus, p_plus};

const I: Complex64 = Complex64::new(0.0, 1.0);
const HALF: Complex64 = Complex64::new(0.5, 0.0);

/// An explicit decomposition witnessing a BMO-type upper bound.
#[derive(Clone, Debug)]
pub enum BmoDecomposition {
    /// `φ = f + g̃`; bound `‖f‖∞ + ‖g‖∞` (grid estimate).
    Def2 { f: TrigPoly, g: TrigPoly, bound: f64 },
    /// `φ = P₋f₁ + P₊g₁`; bound `max(‖f₁‖∞, ‖g₁‖∞)` (grid estimate).
    Star {
        f1: TrigPoly,
        g1: TrigPoly,
        bound: f64,
    },
}

impl BmoDecomposition {
    /// Rebuild the decomposed function, coefficient-exactly.
    pub fn reconstruct(&self, order: &OrderSpec) -> Result<TrigPoly> {
        match self {
            BmoDecomposition::Def2 { f, g, .. } => f.add(&hilbert(order, g)?),
            BmoDecomposition::Star { f1, g1, .. } => {
                p_minus(order, f1)?.add(&p_plus(order, g1)?)
            }
        }
    }

    pub fn bound(&self) -> f64 {
        match self {
            BmoDecomposition::Def2 { bound, .. } | BmoDecomposition::Star { bound, .. } => *bound,
        }
    }

    /// Recompute the induced bound on another grid.
    pub fn bound_on(&self, grid: &GridSpec) -> Result<f64> {
        match self {
            BmoDecomposition::Def2 { f, g, .. } => {
                Ok(f.sup_norm_lower(grid)? + g.sup_norm_lower(grid)?)
            }
            BmoDecomposition::Star { f1, g1, .. } => {
                Ok(f1.sup_norm_lower(grid)?.max(g1.sup_norm_lower(grid)?))
            }
        }
    }
}

/// Assemble `φ = f + g̃` and its bound `‖f‖∞ + ‖g‖∞` (grid estimates).
pub fn def2_upper(
    order: &OrderSpec,
    f: &TrigPoly,
    g: &TrigPoly,
    grid: &GridSpec,
) -> Result<BmoDecomposition> {
    let _ = hilbert(order, g)?; // validate dimensions up front
    let bound = f.sup_norm_lower(grid)? + g.sup_norm_lower(grid)?;
    Ok(BmoDecomposition::Def2 {
        f: f.clone(),
        g: g.clone(),
        bound,
    })
}

fn check_pair_dims(order: &OrderSpec, a: &TrigPoly, b: &TrigPoly) -> Result<()> {
    for p in [a, b] {
        if p.dim() != order.dim() {
            return Err(Error::DimensionMismatch {
                expected: order.dim(),
                found: p.dim(),
            });
        }
    }
    Ok(())
}

/// Convert a `φ = f + g̃` decomposition into a projection-style one:
/// `f₁ = f + i g`, `g₁ = f - i g + i ĝ(0)·𝟏`. Then `P₋f₁ + P₊g₁ = f + g̃`
/// coefficient-exactly, and the bound inflates by at most a factor 2.
pub fn to_star(order: &OrderSpec, f: &TrigPoly, g: &TrigPoly) -> Result<(TrigPoly, TrigPoly)> {
    check_pair_dims(order, f, g)?;
    let n = f.dim();
    let ig = g.scale(I);
    let f1 = f.add(&ig)?;
    let mean_term = TrigPoly::constant(n, I * g.coeff(&CharacterIndex::zero(n)));
    let g1 = f.sub(&ig)?.add(&mean_term)?;
    Ok((f1, g1))
}

/// Convert a projection-style decomposition back:
/// `f = (f₁ + g₁ - f̂₁(0)·𝟏 + ĝ₁(0)·𝟏)/2`, `g = (i g₁ - i f₁)/2`. Then
/// `f + g̃ = P₋f₁ + P₊g₁` coefficient-exactly, and
/// `‖f‖∞ + ‖g‖∞ <= (3/2)(‖f₁‖∞ + ‖g₁‖∞)` at estimate level.
pub fn from_star(
    order: &OrderSpec,
    f1: &TrigPoly,
    g1: &TrigPoly,
) -> Result<(TrigPoly, TrigPoly)> {
    check_pair_dims(order, f1, g1)?;
    let n = f1.dim();
    let zero = CharacterIndex::zero(n);
    let means = TrigPoly::constant(n, g1.coeff(&zero) - f1.coeff(&zero));
    let f = f1.add(g1)?.add(&means)?.scale(HALF);
    let g = g1.sub(f1)?.scale(I * HALF);
    Ok((f, g))
}

/// Projection-style witnesses for the conjugate: if `φ = P₋f₁ + P₊g₁`,
/// then `conj(φ) = P₋f₁' + P₊g₁'` with `f₁' = conj(g₁)` and `g₁' = conj(f₁)`
/// except that the mean of `g₁'` is replaced by `conj(ĝ₁(0))`. When the
/// inputs carry the same mean coefficient both witnesses are plain
/// conjugates, so their grid sup norms equal those of the inputs.
pub fn conj_closure_witness(
    order: &OrderSpec,
    f1: &TrigPoly,
    g1: &TrigPoly,
) -> Result<(TrigPoly, TrigPoly)> {
    check_pair_dims(order, f1, g1)?;
    let zero = CharacterIndex::zero(f1.dim());
    let f1_new = g1.conj();
    let mut g1_new = f1.conj();
    g1_new.set_coeff(zero.clone(), g1.coeff(&zero).conj());
    Ok((f1_new, g1_new))
}

/// Configuration of the subgradient solver behind [`star_upper_optimize`].
#[derive(Clone, Debug, Serialize)]
pub struct SolverConfig {
    /// Subgradient iterations to perform.
    pub iterations: usize,
    /// Scale `c` of the step schedule `c/√t`; defaults to the initial
    /// objective value.
    pub step_scale: Option<f64>,
    /// Early exit once the best objective drops to this value.
    pub tol: f64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            iterations: 2000,
            step_scale: None,
            tol: 0.0,
        }
    }
}

/// Summary of one solver run.
#[derive(Clone, Debug, Serialize)]
pub struct SolverTrace {
    pub iterations: usize,
    pub initial_objective: f64,
    pub final_objective: f64,
}

/// Result of [`star_upper_optimize`].
#[derive(Clone, Debug)]
pub struct StarUpper {
    pub f1: TrigPoly,
    pub g1: TrigPoly,
    /// `max(‖f₁‖∞, ‖g₁‖∞)` recomputed on the solver grid from the returned
    /// polynomials.
    pub bound: f64,
    pub trace: SolverTrace,
}

struct GridTable {
    m: usize,
    n: usize,
    roots: Vec<Complex64>,
}

impl GridTable {
    fn new(grid: &GridSpec) -> Self {
        let m = grid.points_per_dim();
        let roots = (0..m)
            .map(|j| Complex64::from_polar(1.0, std::f64::consts::TAU * (j as f64 / m as f64)))
            .collect();
        GridTable {
            m,
            n: grid.dim(),
            roots,
        }
    }

    fn decode(&self, mut flat: usize, point: &mut [usize]) {
        for axis in (0..self.n).rev() {
            point[axis] = flat % self.m;
            flat /= self.m;
        }
    }

    fn character_value(&self, k: &CharacterIndex, point: &[usize]) -> Complex64 {
        let m = self.m as i64;
        let mut root_index = 0i64;
        for (axis, &ki) in k.coords().iter().enumerate() {
            root_index += ki.rem_euclid(m) * point[axis] as i64;
        }
        self.roots[(root_index % m) as usize]
    }

    /// Point-major table of character values: entry `p * indices.len() + i`
    /// holds `e_{indices[i]}(x_p)`.
    fn point_major_table(&self, total: usize, indices: &[CharacterIndex]) -> Vec<Complex64> {
        let width = indices.len();
        if width == 0 {
            return Vec::new();
        }
        let mut table = vec![Complex64::new(0.0, 0.0); total * width];
        table
            .par_chunks_mut(width)
            .enumerate()
            .for_each(|(flat, row)| {
                let mut point = vec![0usize; self.n];
                self.decode(flat, &mut point);
                for (slot, k) in row.iter_mut().zip(indices) {
                    *slot = self.character_value(k, &point);
                }
            });
        table
    }
}

/// `values[p] += Σ_i deltas[i] · table[p, i]` over the whole grid. The
/// per-point sum runs in a fixed order, so the result does not depend on
/// the parallel split.
fn accumulate_from_table(values: &mut [Complex64], table: &[Complex64], deltas: &[Complex64]) {
    let width = deltas.len();
    if width == 0 {
        return;
    }
    values
        .par_iter_mut()
        .enumerate()
        .for_each(|(p, slot)| {
            let row = &table[p * width..(p + 1) * width];
            let mut acc = Complex64::new(0.0, 0.0);
            for (d, e) in deltas.iter().zip(row) {
                acc += d * e;
            }
            *slot += acc;
        });
}

fn sup_argmax(values: &[Complex64]) -> (f64, usize) {
    let mut best = 0.0f64;
    let mut at = 0usize;
    for (i, v) in values.iter().enumerate() {
        let norm_sqr = v.norm_sqr();
        if norm_sqr > best {
            best = norm_sqr;
            at = i;
        }
    }
    (best.sqrt(), at)
}

/// Minimize `max(‖f₁‖∞, ‖g₁‖∞)` over decompositions `φ = P₋f₁ + P₊g₁`
/// by subgradient descent on the grid sup norms.
///
/// The constrained coefficients are fixed (`f̂₁ = φ̂` on the negative cone,
/// `ĝ₁ = φ̂` on the nonnegative cone); the free coefficients of `f₁` range
/// over the nonnegative cone and those of `g₁` over the negative cone,
/// inside `free_box` (default: the support box of `φ` inflated by 2, so
/// cancellation mass can sit near the constrained frequencies). The
/// parametrization keeps the two free cones disjoint by construction.
///
/// The subgradient is taken at the maximizing grid point of the active
/// part; the step schedule is `c/√t` with `c` the initial objective. The
/// returned bound is an upper estimate of the projection-style BMO norm up
/// to grid slack, and the run is deterministic for a fixed configuration.
pub fn star_upper_optimize(
    order: &OrderSpec,
    phi: &TrigPoly,
    free_box: Option<&IndexBox>,
    grid: &GridSpec,
    solver: &SolverConfig,
) -> Result<StarUpper> {
    if phi.dim() != order.dim() || grid.dim() != order.dim() {
        return Err(Error::DimensionMismatch {
            expected: order.dim(),
            found: if phi.dim() != order.dim() {
                phi.dim()
            } else {
                grid.dim()
            },
        });
    }
    let n = phi.dim();
    let fbox = match free_box {
        Some(b) => {
            if b.dim() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: b.dim(),
                });
            }
            b.clone()
        }
        None => phi
            .support_box()
            .map(|b| b.inflate(2))
            .unwrap_or_else(|| IndexBox::symmetric(n, 2)),
    };
    let free_f = order.enumerate_cone(&fbox, ConeSelect::NonNegative)?;
    let free_g = order.enumerate_cone(&fbox, ConeSelect::Negative)?;

    let base_f = p_minus(order, phi)?;
    let base_g = p_plus(order, phi)?;
    let mut vals_f = base_f.evaluate_grid(grid)?;
    let mut vals_g = base_g.evaluate_grid(grid)?;
    let table = GridTable::new(grid);
    let total = grid.total_points();
    let table_f = table.point_major_table(total, &free_f);
    let table_g = table.point_major_table(total, &free_g);

    let mut u = vec![Complex64::new(0.0, 0.0); free_f.len()];
    let mut w = vec![Complex64::new(0.0, 0.0); free_g.len()];
    let (sup_f0, _) = sup_argmax(&vals_f);
    let (sup_g0, _) = sup_argmax(&vals_g);
    let initial_objective = sup_f0.max(sup_g0);
    if !initial_objective.is_finite() {
        return Err(Error::NonFinite {
            context: "star decomposition objective",
        });
    }

    let mut best = initial_objective;
    let mut best_u = u.clone();
    let mut best_w = w.clone();
    let step_scale = solver.step_scale.unwrap_or(if initial_objective > 0.0 {
        initial_objective
    } else {
        1.0
    });

    let mut performed = 0usize;
    for t in 1..=solver.iterations {
        performed = t;
        let (sup_f, at_f) = sup_argmax(&vals_f);
        let (sup_g, at_g) = sup_argmax(&vals_g);
        let objective = sup_f.max(sup_g);
        if !objective.is_finite() {
            return Err(Error::NonFinite {
                context: "star decomposition objective",
            });
        }
        if objective < best {
            best = objective;
            best_u = u.clone();
            best_w = w.clone();
        }
        if best <= solver.tol || objective == 0.0 {
            break;
        }
        let step = step_scale / (t as f64).sqrt();
        // Subgradient of the max at the maximizing grid point of the
        // active part; the inactive part keeps its coefficients.
        let (values, char_table, coeffs, at) = if sup_f >= sup_g {
            (&mut vals_f, &table_f, &mut u, at_f)
        } else {
            (&mut vals_g, &table_g, &mut w, at_g)
        };
        let width = coeffs.len();
        if width == 0 {
            break;
        }
        let z = values[at];
        let zeta = z / z.norm();
        let at_row = &char_table[at * width..(at + 1) * width];
        let deltas: Vec<Complex64> = at_row.iter().map(|e| -step * (zeta * e.conj())).collect();
        for (slot, d) in coeffs.iter_mut().zip(&deltas) {
            *slot += d;
        }
        accumulate_from_table(values, char_table, &deltas);
    }

    let mut f1 = base_f;
    for (k, c) in free_f.iter().zip(&best_u) {
        f1.set_coeff(k.clone(), *c);
    }
    let mut g1 = base_g;
    for (k, c) in free_g.iter().zip(&best_w) {
        g1.set_coeff(k.clone(), *c);
    }
    // Bound recomputed from the returned polynomials, not from the
    // incrementally updated buffers.
    let bound = f1.sup_norm_lower(grid)?.max(g1.sup_norm_lower(grid)?);
    Ok(StarUpper {
        f1,
        g1,
        bound,
        trace: SolverTrace {
            iterations: performed,
            initial_objective,
            final_objective: best,
        },
    })
}

/// The two truncated Hankel norms behind the seminorm `‖H_φ̄‖ + ‖H_φ‖`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HankelSeminorm {
    /// Truncated `‖H_φ̄‖` (certified lower bound).
    pub conj_part: f64,
    /// Truncated `‖H_φ‖` (certified lower bound).
    pub direct_part: f64,
    /// Their sum.
    pub value: f64,
    /// The analytic-type seminorm `‖H_φ̄‖` when `φ` has no negative
    /// frequencies, else `None`.
    pub analytic_value: Option<f64>,
}

/// Truncated seminorm `‖H_φ̄‖ + ‖H_φ‖` over the cone slices of `trunc`.
/// Requires the order to have a least positive element.
pub fn hankel_seminorm(
    order: &OrderSpec,
    phi: &TrigPoly,
    trunc: &IndexBox,
    tol: f64,
    max_iters: usize,
) -> Result<HankelSeminorm> {
    order.minimal_positive()?;
    let rows = order.enumerate_cone(trunc, ConeSelect::Negative)?;
    let cols = order.enumerate_cone(trunc, ConeSelect::NonNegative)?;
    let direct = hankel_matrix(order, phi, &rows, &cols)?
        .operator_norm(tol, max_iters)?
        .value;
    let conj = hankel_matrix(order, &phi.conj(), &rows, &cols)?
        .operator_norm(tol, max_iters)?
        .value;
    let analytic = p_minus(order, phi)?.is_zero();
    Ok(HankelSeminorm {
        conj_part: conj,
        direct_part: direct,
        value: conj + direct,
        analytic_value: analytic.then_some(conj),
    })
}

/// Analytic-type membership report: the analytic flag together with the
/// truncated `‖H_φ̄‖`. For trigonometric polynomials boundedness is
/// automatic, so the flag plus the value is the whole story.
#[derive(Clone, Debug, Serialize)]
pub struct BmoaReport {
    pub analytic: bool,
    pub conj_norm: f64,
}

pub fn bmoa_check(
    order: &OrderSpec,
    phi: &TrigPoly,
    trunc: &IndexBox,
    tol: f64,
    max_iters: usize,
) -> Result<BmoaReport> {
    let rows = order.enumerate_cone(trunc, ConeSelect::Negative)?;
    let cols = order.enumerate_cone(trunc, ConeSelect::NonNegative)?;
    let conj = hankel_matrix(order, &phi.conj(), &rows, &cols)?
        .operator_norm(tol, max_iters)?
        .value;
    Ok(BmoaReport {
        analytic: p_minus(order, phi)?.is_zero(),
        conj_norm: conj,
    })
}

/// One verified inequality of the sandwich.
#[derive(Clone, Debug, Serialize)]
pub struct InequalityCheck {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    /// Absolute slack allowance (`slack_fraction · rhs`).
    pub allowed_slack: f64,
    pub pass: bool,
}

impl InequalityCheck {
    fn new(name: &str, lhs: f64, rhs: f64, slack_fraction: f64) -> Self {
        let allowed_slack = slack_fraction * rhs;
        InequalityCheck {
            name: name.to_string(),
            lhs,
            rhs,
            allowed_slack,
            pass: lhs <= rhs + allowed_slack,
        }
    }
}

/// Witness decompositions embedded in a report as symbol files.
#[derive(Clone, Debug, Serialize)]
pub struct BmoWitnesses {
    pub def2_f: SymbolFile,
    pub def2_g: SymbolFile,
    pub star_f1: SymbolFile,
    pub star_g1: SymbolFile,
}

/// Full lower/upper bound report for one symbol.
#[derive(Clone, Debug, Serialize)]
pub struct BmoReport {
    pub n: usize,
    pub symbol: SymbolFile,
    pub analytic: bool,
    /// Truncated `‖H_φ‖`.
    pub hankel_direct: f64,
    /// Truncated `‖H_φ̄‖`.
    pub hankel_conj: f64,
    /// Truncated seminorm `‖H_φ̄‖ + ‖H_φ‖` — the lower-bound side of the
    /// equivalence chain.
    pub hankel_total: f64,
    /// Analytic-type seminorm when the symbol is of analytic type.
    pub analytic_seminorm: Option<f64>,
    /// Best projection-style upper bound found by the solver.
    pub star_upper: f64,
    /// Projection-style bound obtained constructively from the `f + g̃`
    /// witness.
    pub star_constructive: f64,
    /// `‖f‖∞ + ‖g‖∞` estimate of the `f + g̃` witness.
    pub def2_upper: f64,
    /// Declared slack fraction used by every inequality check.
    pub slack_fraction: f64,
    pub checks: Vec<InequalityCheck>,
    pub witnesses: BmoWitnesses,
    pub solver: SolverTrace,
}

impl BmoReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    /// Error out on the first violated inequality.
    pub fn ensure_passed(&self) -> Result<()> {
        for c in &self.checks {
            if !c.pass {
                return Err(Error::InequalityViolated {
                    name: c.name.clone(),
                    lhs: c.lhs,
                    rhs: c.rhs,
                    allowed: c.allowed_slack,
                });
            }
        }
        Ok(())
    }
}

/// Configuration for [`sandwich_verify`].
#[derive(Clone, Debug)]
pub struct SandwichConfig {
    /// Grid for the reported sup-norm estimates.
    pub grid: GridSpec,
    /// Grid for the solver's internal objective (defaults to `grid`).
    pub solver_grid: Option<GridSpec>,
    /// Truncation box for the Hankel lower bounds.
    pub trunc: IndexBox,
    /// Free-coefficient box for the solver (defaults per symbol).
    pub free_box: Option<IndexBox>,
    pub solver: SolverConfig,
    pub power_tol: f64,
    pub power_max_iters: usize,
    /// Slack fraction for every inequality check (default 0.02). This is a
    /// declared test parameter covering the grid's sup-norm underestimate,
    /// not a mathematical constant.
    pub slack_fraction: f64,
}

impl SandwichConfig {
    pub fn default_for_dim(n: usize) -> Result<Self> {
        let radius = match n {
            0 => return Err(Error::InvalidArgument("dimension must be >= 1".into())),
            1 => 8,
            2 => 4,
            _ => 2,
        };
        Ok(SandwichConfig {
            grid: GridSpec::default_for_dim(n)?,
            solver_grid: None,
            trunc: IndexBox::symmetric(n, radius),
            free_box: None,
            solver: SolverConfig::default(),
            power_tol: 1e-10,
            power_max_iters: 500_000,
            slack_fraction: 0.02,
        })
    }
}

/// Run the full sandwich for one symbol: truncated seminorm lower bound,
/// decomposition upper bounds, and every inequality of the chain in its
/// sound direction. Violations are reported as failed checks, never
/// clamped. Requires a least positive element.
pub fn sandwich_verify(
    order: &OrderSpec,
    phi: &TrigPoly,
    cfg: &SandwichConfig,
) -> Result<BmoReport> {
    order.minimal_positive()?;
    let seminorm = hankel_seminorm(order, phi, &cfg.trunc, cfg.power_tol, cfg.power_max_iters)?;

    // f + g̃ witness derived from the projection feasible point.
    let f1_feasible = p_minus(order, phi)?;
    let g1_feasible = p_plus(order, phi)?;
    let (f, g) = from_star(order, &f1_feasible, &g1_feasible)?;
    let def2 = def2_upper(order, &f, &g, &cfg.grid)?;
    let def2_bound = def2.bound();

    // Constructive projection-style bound from the same witness.
    let (f1c, g1c) = to_star(order, &f, &g)?;
    let star_constructive = f1c
        .sup_norm_lower(&cfg.grid)?
        .max(g1c.sup_norm_lower(&cfg.grid)?);

    // Optimized projection-style bound, reported on the main grid.
    let solver_grid = cfg.solver_grid.unwrap_or(cfg.grid);
    let opt = star_upper_optimize(order, phi, cfg.free_box.as_ref(), &solver_grid, &cfg.solver)?;
    let star_upper = opt
        .f1
        .sup_norm_lower(&cfg.grid)?
        .max(opt.g1.sup_norm_lower(&cfg.grid)?);

    let checks = vec![
        InequalityCheck::new(
            "seminorm-le-two-star",
            seminorm.value,
            2.0 * star_upper,
            cfg.slack_fraction,
        ),
        InequalityCheck::new(
            "seminorm-le-four-def2",
            seminorm.value,
            4.0 * def2_bound,
            cfg.slack_fraction,
        ),
        InequalityCheck::new(
            "constructive-star-le-two-def2",
            star_constructive,
            2.0 * def2_bound,
            cfg.slack_fraction,
        ),
    ];

    Ok(BmoReport {
        n: phi.dim(),
        symbol: phi.to_symbol_file(),
        analytic: seminorm.analytic_value.is_some(),
        hankel_direct: seminorm.direct_part,
        hankel_conj: seminorm.conj_part,
        hankel_total: seminorm.value,
        analytic_seminorm: seminorm.analytic_value,
        star_upper,
        star_constructive,
        def2_upper: def2_bound,
        slack_fraction: cfg.slack_fraction,
        checks,
        witnesses: BmoWitnesses {
            def2_f: f.to_symbol_file(),
            def2_g: g.to_symbol_file(),
            star_f1: opt.f1.to_symbol_file(),
            star_g1: opt.g1.to_symbol_file(),
        },
        solver: opt.trace,
    })
}
