//! Numerov shooting on the original radial equation `u''(r) = q(r, E) u(r)`.
//!
//! The equation is integrated on a logarithmic grid, `x = ln r`,
//! `u = e^{x/2} w`, which turns it into `w'' = (r² q + 1/4) w` with no
//! first-derivative term. Levels are isolated by counting the nodes of the
//! outward solution and refined with Brent's method on the normalized
//! Numerov Wronskian of the outward and inward solutions.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::formula::{EigenResult, Engine};
use crate::roots::brent;

pub const DEFAULT_POINTS: usize = 4000;
/// WKB decay exponent `∫ √q dr` demanded beyond the outer turning point.
const TAIL_ACTION: f64 = 30.0;
const RESCALE_ABOVE: f64 = 1e100;
const MAX_BISECTIONS: usize = 200;
/// Relative width at which node-count bisection hands over to Brent.
const WINDOW_TOL: f64 = 1e-6;
const MAX_WIDENINGS: usize = 24;

/// Integration weight of the normalization integral.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Measure {
    /// `∫ |u|² dr` for a reduced radial function.
    Dr,
    /// `∫ |R|² r² dr` for a full radial function.
    R2Dr,
}

impl Measure {
    pub fn as_str(self) -> &'static str {
        match self {
            Measure::Dr => "dr",
            Measure::R2Dr => "r2dr",
        }
    }

    fn weight(self, r: f64) -> f64 {
        match self {
            Measure::Dr => 1.0,
            Measure::R2Dr => r * r,
        }
    }
}

type QFn = dyn Fn(f64, f64) -> f64 + Send + Sync;

/// A radial equation in the form `u'' = q(r, E) u` on `(r_min, r_max)`.
#[derive(Clone)]
pub struct RadialProblem {
    q: Arc<QFn>,
    pub r_min: f64,
    pub r_max: f64,
    /// Measure of the *canonical* eigenfunction this problem is compared with.
    pub measure: Measure,
    /// How the first-derivative term was removed, for reports.
    pub substitution: &'static str,
}

impl fmt::Debug for RadialProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RadialProblem")
            .field("r_min", &self.r_min)
            .field("r_max", &self.r_max)
            .field("measure", &self.measure)
            .field("substitution", &self.substitution)
            .finish_non_exhaustive()
    }
}

impl RadialProblem {
    pub fn new<Q>(q: Q, r_min: f64, r_max: f64, measure: Measure, substitution: &'static str) -> Result<Self>
    where
        Q: Fn(f64, f64) -> f64 + Send + Sync + 'static,
    {
        if !(r_min > 0.0 && r_max > r_min && r_max.is_finite()) {
            return Err(Error::InvalidBracket { lo: r_min, hi: r_max });
        }
        Ok(Self {
            q: Arc::new(q),
            r_min,
            r_max,
            measure,
            substitution,
        })
    }

    pub fn q(&self, r: f64, e: f64) -> f64 {
        (self.q)(r, e)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ShootingOptions {
    pub points: usize,
    /// Fixed outer boundary; by default it is placed where the WKB decay
    /// exponent past the outer turning point reaches 30.
    pub r_max: Option<f64>,
}

impl Default for ShootingOptions {
    fn default() -> Self {
        Self {
            points: DEFAULT_POINTS,
            r_max: None,
        }
    }
}

/// Logarithmic grid with spacing `h` in `x = ln r`.
#[derive(Debug, Clone, PartialEq)]
struct LogGrid {
    x0: f64,
    h: f64,
    points: usize,
}

impl LogGrid {
    fn new(r_min: f64, r_max: f64, points: usize) -> Self {
        let (a, b) = (r_min.ln(), r_max.ln());
        Self {
            x0: a,
            h: (b - a) / (points - 1) as f64,
            points,
        }
    }

    fn r(&self, i: usize) -> f64 {
        (self.x0 + self.h * i as f64).exp()
    }

    /// `F(x) = r² q + 1/4` at every node.
    fn f_values(&self, p: &RadialProblem, e: f64) -> Vec<f64> {
        (0..self.points)
            .map(|i| {
                let r = self.r(i);
                r * r * p.q(r, e) + 0.25
            })
            .collect()
    }
}

/// Direction of a Numerov sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Outward,
    Inward,
}

/// Fourth-order Numerov recurrence for `y'' = f y` on a uniform grid of
/// step `h`, seeded with the first two values in the sweep direction.
/// Values are rescaled whenever they exceed `1e100`; only ratios and signs
/// are meaningful.
pub fn numerov(f: &[f64], h: f64, seed: (f64, f64), direction: Direction) -> Vec<f64> {
    let n = f.len();
    let mut y = vec![0.0; n];
    if n == 0 {
        return y;
    }
    let h12 = h * h / 12.0;
    let idx = |j: usize| match direction {
        Direction::Outward => j,
        Direction::Inward => n - 1 - j,
    };
    y[idx(0)] = seed.0;
    if n == 1 {
        return y;
    }
    y[idx(1)] = seed.1;
    for j in 1..n - 1 {
        let (a, b, c) = (idx(j - 1), idx(j), idx(j + 1));
        let next = (2.0 * (1.0 + 5.0 * h12 * f[b]) * y[b] - (1.0 - h12 * f[a]) * y[a]) / (1.0 - h12 * f[c]);
        y[c] = next;
        if next.abs() > RESCALE_ABOVE {
            for k in 0..=j + 1 {
                y[idx(k)] /= RESCALE_ABOVE;
            }
        }
    }
    y
}

fn sign_changes(y: &[f64]) -> usize {
    let mut count = 0;
    let mut prev = 0.0_f64;
    for &v in y {
        if v != 0.0 {
            if prev != 0.0 && v.signum() != prev.signum() {
                count += 1;
            }
            prev = v;
        }
    }
    count
}

/// Integrates `p` at energy `e` over its domain on `points` logarithmic
/// nodes and returns `(r_i, u(r_i))`.
pub fn numerov_integrate(
    p: &RadialProblem,
    e: f64,
    direction: Direction,
    points: usize,
) -> Vec<(f64, f64)> {
    let grid = LogGrid::new(p.r_min, p.r_max, points);
    let f = grid.f_values(p, e);
    let w = sweep(&grid, &f, p, e, direction);
    (0..points)
        .map(|i| {
            let r = grid.r(i);
            (r, r.sqrt() * w[i])
        })
        .collect()
}

fn sweep(grid: &LogGrid, f: &[f64], p: &RadialProblem, e: f64, direction: Direction) -> Vec<f64> {
    match direction {
        Direction::Outward => {
            // u ~ r^p with p(p - 1) = r² q near the origin
            let lambda = grid.r(0).powi(2) * p.q(grid.r(0), e);
            let rad = 0.25 + lambda;
            let power = if rad > 0.0 { rad.sqrt() } else { 0.0 };
            numerov(f, grid.h, (1.0, (power * grid.h).exp()), Direction::Outward)
        }
        Direction::Inward => numerov(f, grid.h, (0.0, 1e-20), Direction::Inward),
    }
}

/// Number of nodes of the outward solution up to the decay radius at `e`.
/// Stopping there also keeps `h² F / 12` small enough for Numerov to stay
/// stable deep in the forbidden region.
fn node_count(p: &RadialProblem, e: f64, points: usize, r_max: Option<f64>) -> usize {
    let r_max = r_max.unwrap_or_else(|| decay_radius(p, e, points)).min(p.r_max);
    let grid = LogGrid::new(p.r_min, r_max, points);
    let f = grid.f_values(p, e);
    sign_changes(&sweep(&grid, &f, p, e, Direction::Outward))
}

/// Outermost point where `q < 0` (classically allowed), or `None`.
fn outer_turning_point(p: &RadialProblem, e: f64, grid: &LogGrid) -> Option<usize> {
    (0..grid.points).rev().find(|&i| p.q(grid.r(i), e) < 0.0)
}

/// Radius at which `∫ √q dr` past the outer turning point reaches the
/// tail action, capped at the problem's own boundary.
fn decay_radius(p: &RadialProblem, e: f64, points: usize) -> f64 {
    let grid = LogGrid::new(p.r_min, p.r_max, points);
    let start = outer_turning_point(p, e, &grid).unwrap_or(0);
    let mut action = 0.0;
    let mut prev = (grid.r(start), p.q(grid.r(start), e).max(0.0).sqrt());
    for i in start + 1..grid.points {
        let r = grid.r(i);
        let k = p.q(r, e).max(0.0).sqrt();
        action += 0.5 * (k + prev.1) * (r - prev.0);
        if action >= TAIL_ACTION {
            return r;
        }
        prev = (r, k);
    }
    p.r_max
}

/// Outward and inward sweeps on a fixed grid with a fixed matching index.
struct Matcher<'a> {
    p: &'a RadialProblem,
    grid: LogGrid,
    m: usize,
}

impl Matcher<'_> {
    fn solutions(&self, e: f64) -> (Vec<f64>, Vec<f64>, Vec<f64>) {
        let f = self.grid.f_values(self.p, e);
        let out = sweep(&self.grid, &f, self.p, e, Direction::Outward);
        let inw = sweep(&self.grid, &f, self.p, e, Direction::Inward);
        (f, out, inw)
    }

    /// Normalized discrete Wronskian at the matching point; it has no poles
    /// and vanishes exactly when the two sweeps are proportional.
    fn mismatch(&self, e: f64) -> f64 {
        let (f, out, inw) = self.solutions(e);
        let h12 = self.grid.h * self.grid.h / 12.0;
        let z = |y: &[f64], j: usize| (1.0 - h12 * f[j]) * y[j];
        let m = self.m;
        let (o0, o1, i0, i1) = (z(&out, m), z(&out, m + 1), z(&inw, m), z(&inw, m + 1));
        (o0 * i1 - o1 * i0) / (o0.hypot(o1) * i0.hypot(i1))
    }

    /// `(r, u(r))` with the inward branch scaled onto the outward one.
    fn eigenfunction(&self, e: f64) -> Vec<(f64, f64)> {
        let (_, out, inw) = self.solutions(e);
        let m = self.m;
        let scale = if inw[m] != 0.0 { out[m] / inw[m] } else { 1.0 };
        (0..self.grid.points)
            .map(|i| {
                let r = self.grid.r(i);
                let w = if i <= m { out[i] } else { inw[i] * scale };
                (r, r.sqrt() * w)
            })
            .collect()
    }
}

/// Finds the level with `n` nodes inside `bracket`.
pub fn shoot_eigenvalue(
    p: &RadialProblem,
    n: u32,
    bracket: (f64, f64),
    opts: &ShootingOptions,
) -> Result<EigenResult> {
    let (lo, hi) = bracket;
    if !(lo < hi) {
        return Err(Error::InvalidBracket { lo, hi });
    }
    let points = opts.points.max(16);
    let nn = n as usize;
    let (n_lo, n_hi) = (node_count(p, lo, points, opts.r_max), node_count(p, hi, points, opts.r_max));
    // Node counts normally grow with the spectral value; some relativistic
    // branches run the other way.
    let rising = n_hi >= n_lo;
    if n_lo.min(n_hi) > nn || n_lo.max(n_hi) <= nn {
        return Err(Error::BracketExhausted {
            n,
            detail: format!("node counts {n_lo}..{n_hi} over [{lo}, {hi}] do not straddle {n}"),
        });
    }

    // a: at most n nodes on the low-count side; b: more than n.
    let (mut a, mut b) = if rising { (lo, hi) } else { (hi, lo) };
    let (mut ca, mut cb) = if rising { (n_lo, n_hi) } else { (n_hi, n_lo) };
    let mut iterations = 0;
    // A tight window keeps the tail grid sized for this level only.
    while !(ca == nn && cb == nn + 1 && (b - a).abs() <= WINDOW_TOL * a.abs().max(b.abs()).max(1.0)) {
        iterations += 1;
        if iterations > MAX_BISECTIONS {
            return Err(Error::BracketExhausted {
                n,
                detail: format!("could not isolate the level, last window [{a}, {b}]"),
            });
        }
        let mid = 0.5 * (a + b);
        let count = node_count(p, mid, points, opts.r_max);
        if count <= nn {
            (a, ca) = (mid, count);
        } else {
            (b, cb) = (mid, count);
        }
    }
    let (wlo, whi) = (a.min(b), a.max(b));
    log::debug!("shooting: n = {n} isolated in [{wlo}, {whi}]");

    let r_max = opts
        .r_max
        .unwrap_or_else(|| decay_radius(p, wlo, points).max(decay_radius(p, whi, points)))
        .min(p.r_max);
    let mut local = p.clone();
    local.r_max = r_max;
    let grid = LogGrid::new(local.r_min, r_max, points);
    let m = outer_turning_point(&local, 0.5 * (wlo + whi), &grid)
        .unwrap_or(points / 2)
        .clamp(2, points - 3);
    let matcher = Matcher { p: &local, grid, m };

    // The node window and the Wronskian root come from slightly different
    // discrete problems; widen a little if the window misses the root.
    let (mut x0, mut x1) = (wlo, whi);
    let (mut f0, mut f1) = (matcher.mismatch(x0), matcher.mismatch(x1));
    let mut widen = 0;
    while !(f0.is_finite() && f1.is_finite()) || (f0.signum() == f1.signum() && f0 != 0.0 && f1 != 0.0) {
        widen += 1;
        if widen > MAX_WIDENINGS || !(f0.is_finite() && f1.is_finite()) {
            return Err(Error::NonConvergent {
                engine: "shooting",
                detail: format!("matching mismatch keeps one sign on [{x0}, {x1}]"),
            });
        }
        let w = x1 - x0;
        x0 -= 0.5 * w;
        x1 += 0.5 * w;
        f0 = matcher.mismatch(x0);
        f1 = matcher.mismatch(x1);
    }
    let (e, residual) = brent(|e| matcher.mismatch(e), x0, x1, f0, f1, 1e-13, 1.0);

    let u = matcher.eigenfunction(e);
    let peak = u.iter().fold(0.0_f64, |acc, &(_, v)| acc.max(v.abs()));
    let significant: Vec<f64> = u
        .iter()
        .map(|&(_, v)| if v.abs() > 1e-10 * peak { v } else { 0.0 })
        .collect();
    Ok(EigenResult {
        value: e,
        n,
        params: None,
        residual,
        residual_ode: None,
        node_count: Some(sign_changes(&significant) as u32),
        engine: Engine::Shooting,
    })
}

/// Unnormalized eigenfunction samples `(r, u)` at a converged value `e`.
pub fn shoot_wavefunction(p: &RadialProblem, e: f64, opts: &ShootingOptions) -> Vec<(f64, f64)> {
    let points = opts.points.max(16);
    let r_max = opts.r_max.unwrap_or_else(|| decay_radius(p, e, points)).min(p.r_max);
    let mut local = p.clone();
    local.r_max = r_max;
    let grid = LogGrid::new(local.r_min, r_max, points);
    let m = outer_turning_point(&local, e, &grid)
        .unwrap_or(points / 2)
        .clamp(2, points - 3);
    Matcher { p: &local, grid, m }.eigenfunction(e)
}

/// Normalization constant `N` with `N² ∫ |f|² w(r) dr = 1` over `[lo, hi]`,
/// by composite Simpson quadrature, doubling the panel count until the
/// integral changes by less than `1e-8` relative.
pub fn normalize<F>(f: F, lo: f64, hi: f64, measure: Measure) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    if !(lo < hi) {
        return Err(Error::InvalidBracket { lo, hi });
    }
    let density = |r: f64| {
        let v = f(r);
        v * v * measure.weight(r)
    };
    let probe = 256;
    let peak = (0..=probe)
        .map(|i| f(lo + (hi - lo) * i as f64 / probe as f64).abs())
        .fold(0.0_f64, f64::max);
    let tail = f(hi).abs();
    if peak == 0.0 || tail > 1e-6 * peak {
        return Err(Error::NonDecayingTail {
            ratio: if peak == 0.0 { f64::INFINITY } else { tail / peak },
        });
    }

    let mut panels = 64usize;
    let mut last = simpson(&density, lo, hi, panels);
    loop {
        panels *= 2;
        let next = simpson(&density, lo, hi, panels);
        if (next - last).abs() <= 1e-8 * next.abs() {
            return Ok(1.0 / next.sqrt());
        }
        if panels >= 1 << 22 {
            return Err(Error::NonConvergent {
                engine: "quadrature",
                detail: format!("normalization integral still changing at {panels} panels"),
            });
        }
        last = next;
    }
}

fn simpson<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64, panels: usize) -> f64 {
    let h = (hi - lo) / panels as f64;
    let mut sum = f(lo) + f(hi);
    for i in 1..panels {
        let x = lo + h * i as f64;
        sum += if i % 2 == 1 { 4.0 * f(x) } else { 2.0 * f(x) };
    }
    sum * h / 3.0
}
