//! The one-dimensional line model.
//!
//! Cells `z_0 … z_N` sit on a line, `z_0` is frozen at `t = 0` and `z_N` is an
//! edge cell held at `beta`. Only one boundary cell exists at a time, so the
//! frozen front advances one cell per growth period and the latencies can be
//! compared against the steady-state predictors
//!
//! ```text
//! μ(i|k)  = (i − k) / (N − k) · β
//! Δŝ(k)   = α/4 · β / (N − k) + γ
//! L̂(k)    = (1 − β / (N − k + 1)) / Δŝ(k)
//! ```

use crate::error::{OneDimError, ParamError};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LineParams {
    /// Index of the edge cell.
    pub n: usize,
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub max_steps: u64,
}

impl Default for LineParams {
    fn default() -> Self {
        Self { n: 50, alpha: 1.0, beta: 0.4, gamma: 0.001, max_steps: 1_000_000 }
    }
}

impl LineParams {
    pub fn validate(&self) -> Result<(), ParamError> {
        if self.n < 2 {
            return Err(ParamError::LineLength(self.n));
        }
        if !(self.alpha > 0.0 && self.alpha.is_finite()) {
            return Err(ParamError::Alpha(self.alpha));
        }
        if !(self.beta > 0.0 && self.beta < 1.0) {
            return Err(ParamError::Beta(self.beta));
        }
        if !(self.gamma >= 0.0 && self.gamma.is_finite()) {
            return Err(ParamError::Gamma(self.gamma));
        }
        Ok(())
    }
}

/// Linear steady-state profile between `μ(k|k) = 0` and `μ(N|k) = β`.
pub fn mu(i: usize, k: usize, n: usize, beta: f64) -> Result<f64, OneDimError> {
    if !(k <= i && i <= n && k < n) {
        return Err(OneDimError::Domain { i, k, n });
    }
    Ok((i - k) as f64 / (n - k) as f64 * beta)
}

/// Solve `μ(i) = ½(μ(i−1) + μ(i+1))` for `k < i < N` with the same boundary
/// values as [`mu`], by over-relaxed Gauss–Seidel sweeps from a zero start.
/// Iterates until the largest residual drops below `tol`.
///
/// Returns `μ(k|k) … μ(N|k)`.
pub fn steady_state_oracle(k: usize, n: usize, beta: f64, tol: f64) -> Result<Vec<f64>, OneDimError> {
    const MAX_SWEEPS: usize = 1_000_000;
    if k >= n {
        return Err(OneDimError::Domain { i: k, k, n });
    }
    let m = n - k;
    let mut prof = vec![0.0; m + 1];
    prof[m] = beta;
    if m == 1 {
        return Ok(prof);
    }
    let omega = 2.0 / (1.0 + (std::f64::consts::PI / m as f64).sin());
    for _ in 0..MAX_SWEEPS {
        for i in 1..m {
            let target = 0.5 * (prof[i - 1] + prof[i + 1]);
            prof[i] += omega * (target - prof[i]);
        }
        let residual = (1..m)
            .map(|i| (prof[i] - 0.5 * (prof[i - 1] + prof[i + 1])).abs())
            .fold(0.0, f64::max);
        if residual < tol {
            return Ok(prof);
        }
    }
    Err(OneDimError::NoConvergence(MAX_SWEEPS))
}

/// Predicted per-step accumulation at the growing cell `z_k`.
pub fn delta_hat(k: usize, n: usize, alpha: f64, beta: f64, gamma: f64) -> Result<f64, OneDimError> {
    if k >= n {
        return Err(OneDimError::Domain { i: k, k, n });
    }
    Ok(alpha / 4.0 * beta / (n - k) as f64 + gamma)
}

/// Predicted growth latency of `z_k`.
pub fn latency_hat(k: usize, n: usize, alpha: f64, beta: f64, gamma: f64) -> Result<f64, OneDimError> {
    let rate = delta_hat(k, n, alpha, beta, gamma)?;
    if rate <= 0.0 {
        return Err(OneDimError::ZeroDenominator);
    }
    Ok((1.0 - beta / (n - k + 1) as f64) / rate)
}

/// History of a line run.
#[derive(Clone, Debug, PartialEq)]
pub struct LineTrace {
    pub params: LineParams,
    pub steps: u64,
    pub boundary: Vec<Option<u64>>,
    pub frozen: Vec<Option<u64>>,
    /// `s_t(z_k)` for `t` in `[B(z_k), T(z_k)]`.
    pub windows: Vec<Vec<f64>>,
}

impl LineTrace {
    pub fn latency(&self, k: usize) -> Option<u64> {
        Some(self.frozen.get(k).copied()?? - self.boundary.get(k).copied()??)
    }

    /// `Δs_t(z_k)` for `t` in `[B(z_k), T(z_k))`.
    pub fn delta_s(&self, k: usize) -> Vec<f64> {
        self.windows[k].windows(2).map(|w| w[1] - w[0]).collect()
    }

    /// Highest index that froze.
    pub fn last_frozen(&self) -> usize {
        self.frozen.iter().rposition(Option::is_some).unwrap_or(0)
    }

    pub fn frozen_count(&self) -> usize {
        self.frozen.iter().filter(|f| f.is_some()).count()
    }
}

/// Run the line automaton until every non-edge cell has frozen.
pub fn simulate_line(params: LineParams) -> Result<LineTrace, OneDimError> {
    params.validate()?;
    let n = params.n;
    let LineParams { alpha, beta, gamma, .. } = params;
    let mut s = vec![beta; n + 1];
    s[0] = 1.0;
    let mut boundary = vec![None; n + 1];
    let mut frozen = vec![None; n + 1];
    let mut windows = vec![Vec::new(); n + 1];
    frozen[0] = Some(0);
    boundary[0] = Some(0);
    boundary[1] = Some(0);
    windows[0].push(1.0);
    windows[1].push(beta);

    let mut u = vec![0.0; n + 1];
    let mut v = vec![0.0; n + 1];
    let mut is_frozen = vec![false; n + 1];
    let mut t = 0u64;
    while frozen[n - 1].is_none() {
        if t >= params.max_steps {
            return Err(OneDimError::BudgetExhausted(params.max_steps));
        }
        for i in 0..=n {
            is_frozen[i] = i < n && s[i] >= 1.0;
        }
        for i in 0..=n {
            let receptive = i < n
                && (is_frozen[i] || (i > 0 && is_frozen[i - 1]) || is_frozen[i + 1]);
            u[i] = if receptive { 0.0 } else { s[i] };
            v[i] = if receptive { s[i] + gamma } else { 0.0 };
        }
        let mut next = vec![0.0; n + 1];
        for i in 0..n {
            let mean = if i == 0 { u[1] } else { 0.5 * (u[i - 1] + u[i + 1]) };
            let u_plus = u[i] + 0.5 * alpha * (mean - u[i]);
            next[i] = u_plus + v[i];
        }
        next[n] = beta;
        t += 1;
        s = next;
        for i in 1..n {
            if frozen[i].is_none() && s[i] >= 1.0 {
                frozen[i] = Some(t);
            }
        }
        for i in 1..=n {
            if boundary[i].is_none() && (frozen[i - 1] == Some(t) || (i < n && frozen[i + 1] == Some(t))) {
                boundary[i] = Some(t);
            }
        }
        for i in 1..n {
            if let Some(b) = boundary[i] {
                if b <= t && frozen[i].is_none_or(|f| f == t) {
                    windows[i].push(s[i]);
                }
            }
        }
    }
    Ok(LineTrace { params, steps: t, boundary, frozen, windows })
}

/// One row of the simulation-versus-prediction table.
#[derive(Clone, Debug, PartialEq)]
pub struct ComparisonRow {
    pub k: usize,
    pub latency_sim: u64,
    pub latency_hat: f64,
    pub delta_s_sim: Vec<f64>,
    pub delta_s_hat: f64,
    /// Observed `s` at the moment `z_k` became boundary.
    pub s_at_boundary: f64,
}

impl ComparisonRow {
    pub fn latency_below_prediction(&self) -> bool {
        (self.latency_sim as f64) < self.latency_hat
    }

    /// Whether every observed step accumulates at least the predicted amount.
    pub fn accumulation_above_prediction(&self) -> bool {
        self.delta_s_sim.iter().all(|&d| d >= self.delta_s_hat)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Comparison {
    pub trace: LineTrace,
    pub rows: Vec<ComparisonRow>,
}

impl Comparison {
    /// Indices `k` where the simulated latency is not below the prediction.
    pub fn latency_violations(&self) -> Vec<usize> {
        self.rows.iter().filter(|r| !r.latency_below_prediction()).map(|r| r.k).collect()
    }

    /// Indices `k` where some step accumulated less than predicted.
    pub fn accumulation_violations(&self) -> Vec<usize> {
        self.rows.iter().filter(|r| !r.accumulation_above_prediction()).map(|r| r.k).collect()
    }

    /// Index of the largest simulated latency (first one on ties).
    pub fn peak_index(&self) -> Option<usize> {
        let max = self.rows.iter().map(|r| r.latency_sim).max()?;
        self.rows.iter().find(|r| r.latency_sim == max).map(|r| r.k)
    }
}

/// Simulate the line and tabulate every frozen cell against the predictors.
pub fn compare(params: LineParams) -> Result<Comparison, OneDimError> {
    let trace = simulate_line(params)?;
    let LineParams { n, alpha, beta, gamma, .. } = params;
    let mut rows = Vec::new();
    for k in 1..=trace.last_frozen() {
        rows.push(ComparisonRow {
            k,
            latency_sim: trace.latency(k).expect("frozen cells have both times"),
            latency_hat: latency_hat(k, n, alpha, beta, gamma)?,
            delta_s_sim: trace.delta_s(k),
            delta_s_hat: delta_hat(k, n, alpha, beta, gamma)?,
            s_at_boundary: trace.windows[k][0],
        });
    }
    Ok(Comparison { trace, rows })
}
