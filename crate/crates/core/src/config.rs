//! Run configuration shared by the CLI commands and the verification suite.

use serde::{Deserialize, Serialize};

use crate::bmo::{SandwichConfig, SolverConfig};
use crate::error::{Error, Result};
use crate::order::{IndexBox, OrderSpec};
use crate::poly::GridSpec;

/// Desk-scale cap on the side length of any assembled truncation matrix.
pub const MAX_MATRIX_SIDE: usize = 4096;

/// Default truncation box radius per dimension.
pub fn default_box_radius(n: usize) -> i64 {
    match n {
        1 => 8,
        2 => 4,
        _ => 2,
    }
}

/// Knobs for one command invocation. Flags override a config file, which
/// overrides these defaults.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default)]
pub struct RunConfig {
    pub order: OrderSpec,
    /// Grid points per dimension; `None` picks the per-dimension default.
    pub grid_points: Option<usize>,
    /// Truncation box radius; `None` picks the per-dimension default.
    pub box_radius: Option<i64>,
    /// Relative tolerance of the singular-value iteration.
    pub power_tol: f64,
    pub power_max_iters: usize,
    /// Subgradient iterations; `None` picks the command default.
    pub solver_iters: Option<usize>,
    pub seed: u64,
    /// Slack fraction for inequality checks.
    pub slack_fraction: f64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            order: OrderSpec::Lex { n: 1 },
            grid_points: None,
            box_radius: None,
            power_tol: 1e-10,
            power_max_iters: 500_000,
            solver_iters: None,
            seed: 17,
            slack_fraction: 0.02,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        self.order.validate()?;
        if let Some(g) = self.grid_points {
            if g < 2 {
                return Err(Error::InvalidArgument(
                    "grid points must be >= 2".into(),
                ));
            }
        }
        if let Some(r) = self.box_radius {
            if r < 0 {
                return Err(Error::InvalidArgument(
                    "box radius must be nonnegative".into(),
                ));
            }
        }
        if !(self.power_tol > 0.0) {
            return Err(Error::InvalidArgument(
                "power iteration tolerance must be positive".into(),
            ));
        }
        if self.power_max_iters == 0 {
            return Err(Error::InvalidArgument(
                "power iteration budget must be positive".into(),
            ));
        }
        if !(self.slack_fraction >= 0.0) {
            return Err(Error::InvalidArgument(
                "slack fraction must be nonnegative".into(),
            ));
        }
        // Matrix side = number of cone points in the box, at most
        // ((2r+1)^n + 1)/2.
        let n = self.order.dim() as u32;
        let r = self.box_radius.unwrap_or(default_box_radius(self.order.dim()));
        let side = (2 * r + 1)
            .checked_pow(n)
            .map(|p| (p as usize + 1) / 2)
            .unwrap_or(usize::MAX);
        if side > MAX_MATRIX_SIDE {
            return Err(Error::InvalidArgument(format!(
                "truncation box radius {r} gives matrix side {side} > {MAX_MATRIX_SIDE}"
            )));
        }
        Ok(())
    }

    pub fn grid(&self) -> Result<GridSpec> {
        let n = self.order.dim();
        match self.grid_points {
            Some(points) => GridSpec::new(n, points),
            None => GridSpec::default_for_dim(n),
        }
    }

    pub fn trunc_box(&self) -> IndexBox {
        let n = self.order.dim();
        IndexBox::symmetric(n, self.box_radius.unwrap_or(default_box_radius(n)))
    }

    /// Assemble a sandwich configuration, supplying the fallback solver
    /// iteration count used when the config leaves it open.
    pub fn sandwich(&self, default_solver_iters: usize) -> Result<SandwichConfig> {
        self.validate()?;
        let n = self.order.dim();
        // The solver works on a coarser grid for throughput; reported
        // bounds are recomputed on the main grid.
        let solver_grid = if n >= 2 {
            Some(GridSpec::new(n, 64.min(self.grid()?.points_per_dim()))?)
        } else {
            None
        };
        Ok(SandwichConfig {
            grid: self.grid()?,
            solver_grid,
            trunc: self.trunc_box(),
            free_box: None,
            solver: SolverConfig {
                iterations: self.solver_iters.unwrap_or(default_solver_iters),
                ..SolverConfig::default()
            },
            power_tol: self.power_tol,
            power_max_iters: self.power_max_iters,
            slack_fraction: self.slack_fraction,
        })
    }
}
