//! Dense revised simplex for standard-form linear programs
//!
//! ```text
//! minimize  cᵀy   subject to   M y = r,  y >= 0
//! ```
//!
//! Columns are supplied by a [`ColumnOracle`], so a problem may have far more
//! columns than could be stored: the oracle only has to produce one column on
//! demand and to price all of them against the current simplex multipliers.
//! The basis inverse is kept explicitly (the row count stays below ~100 in
//! this crate) and is rebuilt from scratch every few pivots.
//!
//! Pricing uses Dantzig's most-negative rule; after a run of degenerate pivots
//! the solver switches to Bland's smallest-index rule, which cannot cycle, and
//! returns to Dantzig only once the objective has dropped by more than the
//! optimality tolerance.

use thiserror::Error;

use crate::linalg::Dense;
use crate::scalar::Real;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LpError {
    #[error("problem is unbounded")]
    Unbounded,
    #[error("problem is infeasible")]
    Infeasible,
    #[error("singular basis")]
    SingularBasis,
    #[error("initial basis is not primal feasible")]
    InfeasibleStart,
    #[error("iteration limit {0} reached")]
    IterationLimit(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PricingRule {
    /// Most negative reduced cost.
    Dantzig,
    /// Smallest column index with negative reduced cost.
    Bland,
}

/// Source of columns for [`revised_simplex`].
pub trait ColumnOracle<S: Real> {
    /// Number of equality rows.
    fn rows(&self) -> usize;

    /// Right-hand side `r`.
    fn rhs(&self) -> Vec<S>;

    /// Writes column `id` into `out` (length [`rows`](Self::rows)) and returns its cost.
    fn column(&self, id: usize, out: &mut [S]) -> S;

    /// Returns an entering column with reduced cost `c_j - πᵀ M_j < -tol`, chosen
    /// according to `rule`, or `None` when no such column exists.
    fn price(&self, duals: &[S], rule: PricingRule, tol: S) -> Option<(usize, S)>;
}

#[derive(Debug, Clone)]
pub struct SimplexOptions<S> {
    pub max_iterations: usize,
    pub refactor_every: usize,
    /// Reduced costs above `-optimality_tol` count as nonnegative.
    pub optimality_tol: S,
    /// Smallest admissible pivot magnitude in the ratio test.
    pub pivot_tol: S,
    /// Consecutive degenerate pivots tolerated before switching to Bland's rule.
    pub degenerate_limit: usize,
}

impl<S: Real> Default for SimplexOptions<S> {
    fn default() -> Self {
        let eps = S::epsilon();
        Self {
            max_iterations: 200_000,
            refactor_every: 40,
            optimality_tol: eps.powf(S::lit(2.0 / 3.0)),
            pivot_tol: eps.powf(S::lit(0.6)),
            degenerate_limit: 30,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimplexSolution<S> {
    /// Basic column ids, one per row.
    pub basis: Vec<usize>,
    /// Values of the basic variables.
    pub basic_values: Vec<S>,
    /// Simplex multipliers `π` with `Bᵀπ = c_B`.
    pub duals: Vec<S>,
    pub objective: S,
    pub iterations: usize,
    pub bland_pivots: usize,
}

struct Factor<S> {
    binv: Dense<S>,
    costs: Vec<S>,
}

fn factor<S: Real, O: ColumnOracle<S>>(oracle: &O, basis: &[usize]) -> Result<Factor<S>, LpError> {
    let m = oracle.rows();
    let mut b = Dense::zeros(m);
    let mut col = vec![S::zero(); m];
    let mut costs = Vec::with_capacity(m);
    for (j, &id) in basis.iter().enumerate() {
        costs.push(oracle.column(id, &mut col));
        for i in 0..m {
            b[(i, j)] = col[i];
        }
    }
    let binv = b.inverse(S::epsilon() * S::lit(16.0)).ok_or(LpError::SingularBasis)?;
    Ok(Factor { binv, costs })
}

/// Runs the revised simplex from a primal feasible starting `basis`.
pub fn revised_simplex<S: Real, O: ColumnOracle<S>>(
    oracle: &O,
    mut basis: Vec<usize>,
    opts: &SimplexOptions<S>,
) -> Result<SimplexSolution<S>, LpError> {
    let m = oracle.rows();
    assert_eq!(basis.len(), m, "basis must have one column per row");
    let rhs = oracle.rhs();
    let feas_tol = opts.optimality_tol * S::lit(1e3);

    let Factor { mut binv, mut costs } = factor(oracle, &basis)?;
    let mut xb = binv.mul_vec(&rhs);
    if xb.iter().any(|&x| x < -feas_tol) {
        return Err(LpError::InfeasibleStart);
    }

    let mut aq = vec![S::zero(); m];
    let mut since_refactor = 0usize;
    let mut degenerate_run = 0usize;
    let mut bland_pivots = 0usize;
    let objective = |costs: &[S], xb: &[S]| costs.iter().zip(xb).map(|(&c, &x)| c * x).sum::<S>();
    let mut obj = objective(&costs, &xb);
    // objective when Bland's rule was switched on
    let mut bland_from: Option<S> = None;

    for iteration in 0..opts.max_iterations {
        if since_refactor >= opts.refactor_every {
            let f = factor(oracle, &basis)?;
            binv = f.binv;
            costs = f.costs;
            xb = binv.mul_vec(&rhs);
            obj = objective(&costs, &xb);
            since_refactor = 0;
        }
        let duals = binv.tr_mul_vec(&costs);
        let progress = opts.optimality_tol * (S::one() + obj.abs());
        match bland_from {
            None if degenerate_run >= opts.degenerate_limit => bland_from = Some(obj),
            Some(from) if obj < from - progress => {
                bland_from = None;
                degenerate_run = 0;
            }
            _ => {}
        }
        let rule = if bland_from.is_some() { PricingRule::Bland } else { PricingRule::Dantzig };

        // a basic column priced as improving is rounding noise
        let entering = oracle.price(&duals, rule, opts.optimality_tol).filter(|(q, _)| !basis.contains(q));
        let Some((q, reduced)) = entering else {
            if since_refactor == 0 {
                return Ok(SimplexSolution {
                    basis,
                    basic_values: xb,
                    duals,
                    objective: obj,
                    iterations: iteration,
                    bland_pivots,
                });
            }
            // confirm optimality on a fresh factorization
            since_refactor = opts.refactor_every;
            continue;
        };

        let cq = oracle.column(q, &mut aq);
        let alpha = binv.mul_vec(&aq);

        // ratio test
        let mut leave: Option<(usize, S)> = None;
        for (i, &a) in alpha.iter().enumerate() {
            if a <= opts.pivot_tol {
                continue;
            }
            let theta = xb[i].max(S::zero()) / a;
            leave = match leave {
                None => Some((i, theta)),
                Some((r, best)) => {
                    let tie = (theta - best).abs() <= S::lit(1e-12) * (S::one() + best);
                    let better = if tie {
                        match rule {
                            PricingRule::Dantzig => a > alpha[r],
                            PricingRule::Bland => basis[i] < basis[r],
                        }
                    } else {
                        theta < best
                    };
                    if better {
                        Some((i, theta))
                    } else {
                        Some((r, best))
                    }
                }
            };
        }
        let Some((r, theta)) = leave else {
            if since_refactor == 0 {
                return Err(LpError::Unbounded);
            }
            since_refactor = opts.refactor_every;
            continue;
        };

        if rule == PricingRule::Bland {
            bland_pivots += 1;
        }
        if theta * (-reduced) <= progress {
            degenerate_run += 1;
        } else {
            degenerate_run = 0;
        }
        obj = obj + theta * reduced;

        // pivot on (r, q)
        let piv = alpha[r];
        {
            let row_r = binv.row_mut(r);
            for v in row_r.iter_mut() {
                *v = *v / piv;
            }
        }
        let row_r: Vec<S> = binv.row(r).to_vec();
        for (i, &a) in alpha.iter().enumerate() {
            if i == r || a.is_zero() {
                continue;
            }
            for (v, &p) in binv.row_mut(i).iter_mut().zip(&row_r) {
                *v = *v - a * p;
            }
            xb[i] = xb[i] - theta * a;
        }
        xb[r] = theta;
        basis[r] = q;
        costs[r] = cq;
        since_refactor += 1;
    }
    Err(LpError::IterationLimit(opts.max_iterations))
}

/// Explicit standard-form problem `min cᵀy, A y = b, y >= 0`, solved in two phases.
#[derive(Debug, Clone)]
pub struct DenseLp<S> {
    /// Column-major constraint matrix: `columns[j][i] = A[i][j]`.
    pub columns: Vec<Vec<S>>,
    pub costs: Vec<S>,
    pub rhs: Vec<S>,
}

struct PhaseOracle<'a, S> {
    lp: &'a DenseLp<S>,
    /// Row sign flips making the right-hand side nonnegative.
    signs: Vec<S>,
    phase_one: bool,
}

impl<S: Real> PhaseOracle<'_, S> {
    fn n_orig(&self) -> usize {
        self.lp.columns.len()
    }

    fn reduced(&self, duals: &[S], j: usize) -> S {
        let mut col = vec![S::zero(); self.rows()];
        let c = self.column(j, &mut col);
        c - col.iter().zip(duals).map(|(&a, &p)| a * p).sum::<S>()
    }
}

impl<S: Real> ColumnOracle<S> for PhaseOracle<'_, S> {
    fn rows(&self) -> usize {
        self.lp.rhs.len()
    }

    fn rhs(&self) -> Vec<S> {
        self.lp.rhs.iter().zip(&self.signs).map(|(&b, &s)| b * s).collect()
    }

    fn column(&self, id: usize, out: &mut [S]) -> S {
        let n = self.n_orig();
        if id < n {
            for (o, (&a, &s)) in out.iter_mut().zip(self.lp.columns[id].iter().zip(&self.signs)) {
                *o = a * s;
            }
            if self.phase_one {
                S::zero()
            } else {
                self.lp.costs[id]
            }
        } else {
            out.iter_mut().for_each(|o| *o = S::zero());
            out[id - n] = S::one();
            if self.phase_one {
                S::one()
            } else {
                S::zero()
            }
        }
    }

    fn price(&self, duals: &[S], rule: PricingRule, tol: S) -> Option<(usize, S)> {
        // artificial columns never re-enter
        let candidates = 0..self.n_orig();
        match rule {
            PricingRule::Bland => candidates.map(|j| (j, self.reduced(duals, j))).find(|&(_, d)| d < -tol),
            PricingRule::Dantzig => candidates
                .map(|j| (j, self.reduced(duals, j)))
                .filter(|&(_, d)| d < -tol)
                .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap_or(std::cmp::Ordering::Equal)),
        }
    }
}

/// Solution of a [`DenseLp`].
#[derive(Debug, Clone, PartialEq)]
pub struct DenseSolution<S> {
    pub x: Vec<S>,
    pub objective: S,
    pub duals: Vec<S>,
}

impl<S: Real> DenseLp<S> {
    pub fn solve(&self, opts: &SimplexOptions<S>) -> Result<DenseSolution<S>, LpError> {
        let m = self.rhs.len();
        let n = self.columns.len();
        let signs: Vec<S> = self.rhs.iter().map(|&b| if b < S::zero() { -S::one() } else { S::one() }).collect();
        let mut oracle = PhaseOracle { lp: self, signs, phase_one: true };
        let start: Vec<usize> = (n..n + m).collect();
        let p1 = revised_simplex(&oracle, start, opts)?;
        let scale = S::one() + self.rhs.iter().fold(S::zero(), |a, &b| a.max(b.abs()));
        if p1.objective > opts.optimality_tol * S::lit(1e3) * scale {
            return Err(LpError::Infeasible);
        }
        oracle.phase_one = false;
        let p2 = revised_simplex(&oracle, p1.basis, opts)?;
        let mut x = vec![S::zero(); n];
        for (&id, &v) in p2.basis.iter().zip(&p2.basic_values) {
            if id < n {
                x[id] = v;
            }
        }
        let duals = p2.duals.iter().zip(&oracle.signs).map(|(&d, &s)| d * s).collect();
        Ok(DenseSolution { x, objective: p2.objective, duals })
    }
}
