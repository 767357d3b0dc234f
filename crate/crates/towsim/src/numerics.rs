//! Reusable numerical kernels: Gauss-Legendre quadrature, dense linear
//! solve with partial pivoting, and a fixed-step classical RK4 stage.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum NumericsError {
    #[error("quadrature requires at least one point, got {0}")]
    InvalidPointCount(usize),
    #[error("matrix is singular at elimination column {column} (pivot {pivot:.3e})")]
    SingularMatrix { column: usize, pivot: f64 },
    #[error("matrix/vector dimensions do not agree")]
    DimensionMismatch,
}

/// Nodes and weights of an n-point Gauss-Legendre rule on [-1, 1],
/// optionally applied as a composite rule over several equal panels.
#[derive(Debug, Clone)]
pub struct Quadrature {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub panels: usize,
}

impl Quadrature {
    /// Composite variant of the same base rule with `panels` subdivisions.
    pub fn with_panels(mut self, panels: usize) -> Self {
        self.panels = panels.max(1);
        self
    }
}

/// Build the n-point Gauss-Legendre rule.
///
/// Nodes are the roots of the degree-n Legendre polynomial, found by
/// Newton iteration from the Chebyshev-like initial guess; weights follow
/// from w = 2 / ((1 - x^2) P'_n(x)^2).
pub fn gauss_legendre(n: usize) -> Result<Quadrature, NumericsError> {
    if n < 1 {
        return Err(NumericsError::InvalidPointCount(n));
    }
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    // Roots come in +/- pairs; iterate on the upper half.
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let (_, dp) = legendre_with_derivative(n, x);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        // Exact midpoint for odd rules.
        nodes[n / 2] = 0.0;
        let (_, d) = legendre_with_derivative(n, 0.0);
        weights[n / 2] = 2.0 / (d * d);
    }
    Ok(Quadrature {
        nodes,
        weights,
        panels: 1,
    })
}

/// P_n(x) and P'_n(x) by the three-term recurrence.
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p_prev = 1.0;
    let mut p = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p_next = ((2.0 * kf - 1.0) * x * p - (kf - 1.0) * p_prev) / kf;
        p_prev = p;
        p = p_next;
    }
    // (1 - x^2) P'_n = n (P_{n-1} - x P_n)
    let d = n as f64 * (p_prev - x * p) / (1.0 - x * x);
    (p, d)
}

/// Integrate `f` over [a, b] with the given (possibly composite) rule.
pub fn integrate<F: FnMut(f64) -> f64>(q: &Quadrature, mut f: F, a: f64, b: f64) -> f64 {
    let panels = q.panels.max(1);
    let panel_width = (b - a) / panels as f64;
    let half = 0.5 * panel_width;
    let mut total = 0.0;
    for p in 0..panels {
        let mid = a + (p as f64 + 0.5) * panel_width;
        let mut acc = 0.0;
        for (&x, &w) in q.nodes.iter().zip(&q.weights) {
            acc += w * f(mid + half * x);
        }
        total += acc * half;
    }
    total
}

/// Solve M x = b by Gaussian elimination with partial pivoting.
///
/// A pivot below 1e-14 * ||M||_inf is treated as singular.
pub fn solve_dense(matrix: &[Vec<f64>], rhs: &[f64]) -> Result<Vec<f64>, NumericsError> {
    let n = matrix.len();
    if n == 0 || rhs.len() != n || matrix.iter().any(|row| row.len() != n) {
        return Err(NumericsError::DimensionMismatch);
    }
    let norm_inf = matrix
        .iter()
        .map(|row| row.iter().map(|v| v.abs()).sum::<f64>())
        .fold(0.0_f64, f64::max);
    let pivot_floor = 1e-14 * norm_inf.max(f64::MIN_POSITIVE);

    let mut a: Vec<Vec<f64>> = matrix.to_vec();
    let mut x = rhs.to_vec();
    for col in 0..n {
        let pivot_row = (col..n)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .expect("non-empty range");
        let pivot = a[pivot_row][col];
        if pivot.abs() < pivot_floor {
            return Err(NumericsError::SingularMatrix { column: col, pivot });
        }
        a.swap(col, pivot_row);
        x.swap(col, pivot_row);
        for row in col + 1..n {
            let factor = a[row][col] / a[col][col];
            if factor != 0.0 {
                for k in col..n {
                    a[row][k] -= factor * a[col][k];
                }
                x[row] -= factor * x[col];
            }
        }
    }
    for col in (0..n).rev() {
        let mut acc = x[col];
        for k in col + 1..n {
            acc -= a[col][k] * x[k];
        }
        x[col] = acc / a[col][col];
    }
    Ok(x)
}

/// One classical fourth-order Runge-Kutta step.
///
/// Stage evaluations at t, t+dt/2, t+dt/2, t+dt; the derivative function
/// may fail (e.g. trajectory range or singular system) and the error is
/// propagated.
pub fn rk4_step<E, F>(mut f: F, t: f64, y: &[f64], dt: f64) -> Result<Vec<f64>, E>
where
    F: FnMut(f64, &[f64]) -> Result<Vec<f64>, E>,
{
    let n = y.len();
    let k1 = f(t, y)?;
    let mut stage = vec![0.0; n];
    for i in 0..n {
        stage[i] = y[i] + 0.5 * dt * k1[i];
    }
    let k2 = f(t + 0.5 * dt, &stage)?;
    for i in 0..n {
        stage[i] = y[i] + 0.5 * dt * k2[i];
    }
    let k3 = f(t + 0.5 * dt, &stage)?;
    for i in 0..n {
        stage[i] = y[i] + dt * k3[i];
    }
    let k4 = f(t + dt, &stage)?;
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        out.push(y[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]));
    }
    Ok(out)
}
