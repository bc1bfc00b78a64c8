//! Numerical integration: adaptive Gauss-Kronrod (7/15) on finite intervals with
//! dyadic block summation toward 0 and infinity, and an independent
//! tanh-sinh rule used by the verification oracles.

/// Result of a numerical integral.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quad {
    pub value: f64,
    pub error: f64,
    /// False when the tolerance was not reached within the evaluation budget.
    pub converged: bool,
}

impl Quad {
    fn exact(value: f64) -> Self {
        Quad { value, error: 0.0, converged: true }
    }
}

const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = fc * WGK[7];
    let mut g = fc * WG[3];
    for j in 0..7 {
        let x = h * XGK[j];
        let s = f(c - x) + f(c + x);
        k += WGK[j] * s;
        if j % 2 == 1 {
            g += WG[j / 2] * s;
        }
    }
    (k * h, ((k - g) * h).abs())
}

const MAX_SUBDIVISIONS: usize = 400;

/// Globally adaptive Gauss-Kronrod on a finite interval.
pub fn adaptive<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, rel_tol: f64, abs_tol: f64) -> Quad {
    if a >= b {
        return Quad::exact(0.0);
    }
    let (v, e) = gk15(f, a, b);
    let mut parts = vec![(a, b, v, e)];
    let mut total = v;
    let mut err = e;
    let mut n = 0;
    while err > abs_tol.max(rel_tol * total.abs()) && n < MAX_SUBDIVISIONS {
        if !total.is_finite() {
            break;
        }
        let (i, _) = parts
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .3.partial_cmp(&y.1 .3).unwrap_or(std::cmp::Ordering::Equal))
            .unwrap();
        if parts[i].3 == 0.0 {
            // only rounding drift in the running sum is left
            break;
        }
        let (lo, hi, pv, pe) = parts.swap_remove(i);
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            // cannot split further; keep the piece as is
            parts.push((lo, hi, pv, 0.0));
            err -= pe;
            n += 1;
            continue;
        }
        let (v1, e1) = gk15(f, lo, mid);
        let (v2, e2) = gk15(f, mid, hi);
        total += v1 + v2 - pv;
        err += e1 + e2 - pe;
        parts.push((lo, mid, v1, e1));
        parts.push((mid, hi, v2, e2));
        n += 1;
    }
    let total: f64 = parts.iter().map(|p| p.2).sum();
    let err: f64 = parts.iter().map(|p| p.3).sum();
    Quad {
        value: total,
        error: err,
        converged: total.is_finite() && err <= abs_tol.max(rel_tol * total.abs()) * 10.0,
    }
}

const MAX_BLOCKS: usize = 1000;
const DIVERGENCE_RATIO: f64 = 0.999;
const DIVERGENCE_WINDOW: usize = 8;

/// Sum integrals over a sequence of blocks running off to a singular end.
/// Diverging sums return `+-inf`; sums stopped by the block cap add a
/// geometric remainder estimate.
fn sum_blocks<F, B>(f: &F, mut next_block: B, rel_tol: f64) -> Quad
where
    F: Fn(f64) -> f64,
    B: FnMut() -> Option<(f64, f64)>,
{
    let mut total = 0.0;
    let mut err = 0.0;
    let mut converged = true;
    let mut history: Vec<f64> = Vec::new();
    let mut small_run = 0;
    while let Some((a, b)) = next_block() {
        let q = adaptive(f, a, b, rel_tol * 0.1, 0.0);
        converged &= q.converged;
        total += q.value;
        err += q.error;
        if !total.is_finite() {
            return Quad { value: total, error: f64::INFINITY, converged: false };
        }
        history.push(q.value);
        // leading zero blocks say nothing about the rest of the range
        if total != 0.0 && q.value.abs() <= 1e-3 * rel_tol * total.abs() {
            small_run += 1;
            if small_run >= 3 {
                return Quad { value: total, error: err, converged };
            }
        } else {
            small_run = 0;
        }
        let n = history.len();
        if n > DIVERGENCE_WINDOW {
            let w = &history[n - DIVERGENCE_WINDOW - 1..];
            let growing = w
                .windows(2)
                .all(|p| p[0] != 0.0 && p[1] / p[0] >= DIVERGENCE_RATIO);
            if growing && history[n - 1].abs() > 1e-3 * rel_tol * total.abs() {
                return Quad { value: total.signum() * f64::INFINITY, error: 0.0, converged: true };
            }
        }
        if n >= MAX_BLOCKS {
            break;
        }
    }
    let n = history.len();
    if n >= 2 {
        let k = n.min(DIVERGENCE_WINDOW + 1);
        let w = &history[n - k..];
        let ratios: Vec<f64> = w
            .windows(2)
            .filter(|p| p[0] != 0.0)
            .map(|p| (p[1] / p[0]).abs())
            .collect();
        if !ratios.is_empty() {
            let r = ratios.iter().sum::<f64>() / ratios.len() as f64;
            if r < 1.0 {
                let rem = history[n - 1] * r / (1.0 - r);
                if rem.abs() > rel_tol * total.abs() {
                    converged = false;
                }
                total += rem;
                err += rem.abs();
            }
        }
    }
    Quad { value: total, error: err, converged }
}

/// `∫_0^b f` for finite `b`, summing blocks `[b 2^{-k-1}, b 2^{-k}]`.
fn toward_zero<F: Fn(f64) -> f64>(f: &F, b: f64, rel_tol: f64) -> Quad {
    let mut hi = b;
    sum_blocks(
        f,
        move || {
            let lo = 0.5 * hi;
            if lo < f64::MIN_POSITIVE * 4.0 {
                return None;
            }
            let blk = (lo, hi);
            hi = lo;
            Some(blk)
        },
        rel_tol,
    )
}

/// `∫_a^inf f` for `a > 0`, blocks `[a_k, a_{k+1}]` with `a_{k+1} = max(2 a_k, a_k + 1)`.
fn toward_infinity<F: Fn(f64) -> f64>(f: &F, a: f64, rel_tol: f64) -> Quad {
    let mut lo = a;
    sum_blocks(
        f,
        move || {
            let hi = (2.0 * lo).max(lo + 1.0);
            if !hi.is_finite() || hi > 1e300 {
                return None;
            }
            let blk = (lo, hi);
            lo = hi;
            Some(blk)
        },
        rel_tol,
    )
}

fn add(a: Quad, b: Quad) -> Quad {
    Quad {
        value: a.value + b.value,
        error: a.error + b.error,
        converged: a.converged && b.converged,
    }
}

/// `∫_a^b f` on `0 <= a <= b <= inf`. Integrable singularities are allowed at 0
/// and at infinity; interior points must be regular.
pub fn integrate<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, rel_tol: f64) -> Quad {
    if !(a < b) {
        return Quad::exact(0.0);
    }
    match (a == 0.0, b.is_finite()) {
        (false, true) => adaptive(f, a, b, rel_tol, 0.0),
        (true, true) => toward_zero(f, b, rel_tol),
        (false, false) => toward_infinity(f, a, rel_tol),
        (true, false) => add(toward_zero(f, 1.0, rel_tol), toward_infinity(f, 1.0, rel_tol)),
    }
}

/// Integrate over a list of subintervals (e.g. between breakpoints) and add up.
pub fn integrate_split<F: Fn(f64) -> f64>(f: &F, cuts: &[f64], rel_tol: f64) -> Quad {
    cuts.windows(2)
        .map(|w| integrate(f, w[0], w[1], rel_tol))
        .fold(Quad::exact(0.0), add)
}

const TS_UMAX: f64 = 6.0;
const TS_LEVELS: u32 = 8;

/// Tanh-sinh rule for `∫_0^1 g(s, 1 - s) ds`; `g` receives both `s` and `1 - s`
/// computed without cancellation so endpoint singularities stay resolved.
fn tanh_sinh_unit<G: Fn(f64, f64) -> f64>(g: &G, rel_tol: f64) -> Quad {
    let half_pi = std::f64::consts::FRAC_PI_2;
    let node = |u: f64| -> f64 {
        let v = half_pi * u.sinh();
        let s = 1.0 / (1.0 + (-2.0 * v).exp());
        let sc = 1.0 / (1.0 + (2.0 * v).exp());
        let w = std::f64::consts::PI * u.cosh() * s * sc;
        if w == 0.0 || s == 0.0 || sc == 0.0 {
            return 0.0;
        }
        let y = g(s, sc) * w;
        if y.is_finite() {
            y
        } else {
            0.0
        }
    };
    let mut h = 1.0;
    let mut sum = node(0.0);
    let mut k = 1;
    while (k as f64) * h <= TS_UMAX {
        let u = k as f64 * h;
        sum += node(u) + node(-u);
        k += 1;
    }
    let mut estimate = sum * h;
    let mut err = f64::INFINITY;
    for level in 1..=TS_LEVELS {
        h *= 0.5;
        let mut add = 0.0;
        let mut k = 1;
        while (k as f64) * h <= TS_UMAX {
            let u = k as f64 * h;
            add += node(u) + node(-u);
            k += 2;
        }
        sum += add;
        let next = sum * h;
        err = (next - estimate).abs();
        estimate = next;
        if level >= 3 && err <= rel_tol * estimate.abs().max(1e-300) {
            return Quad { value: estimate, error: err, converged: true };
        }
    }
    Quad {
        value: estimate,
        error: err,
        converged: err <= 1e3 * rel_tol * estimate.abs().max(1e-300),
    }
}

/// Independent tanh-sinh integration of `f` over `[a, b]`, `b` possibly infinite.
pub fn tanh_sinh<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, rel_tol: f64) -> Quad {
    if !(a < b) {
        return Quad::exact(0.0);
    }
    if b.is_finite() {
        let w = b - a;
        tanh_sinh_unit(
            &|s, sc| {
                let x = if s <= 0.5 { a + w * s } else { b - w * sc };
                w * f(x)
            },
            rel_tol,
        )
    } else {
        tanh_sinh_unit(&|s, sc| f(a + s / sc) / (sc * sc), rel_tol)
    }
}
