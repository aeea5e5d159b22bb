//! Independent numerical oracles for the integration tests.
//!
//! Everything here is deliberately built from first principles (composite
//! Simpson quadrature, bisection, brute-force grids) and shares no code with
//! the library: agreement between the two is evidence, not tautology. The
//! oracles are slow but run at test scale only.

#![allow(dead_code)]

/// Composite Simpson rule with `n` panels (`n` even).
pub fn simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, n: usize) -> f64 {
    assert!(n >= 2 && n % 2 == 0);
    let h = (b - a) / n as f64;
    let mut acc = f(a) + f(b);
    let mut comp = 0.0f64;
    let mut add = |x: f64| {
        // Neumaier-style compensation; the panel counts here are large
        // enough for naive summation to cost digits.
        let t = acc + x;
        comp += if acc.abs() >= x.abs() {
            (acc - t) + x
        } else {
            (x - t) + acc
        };
        acc = t;
    };
    for i in 1..n {
        let x = a + i as f64 * h;
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        add(w * f(x));
    }
    (acc + comp) * h / 3.0
}

/// Simpson with interval doubling until two successive refinements agree to
/// `rel` or the panel budget runs out.
pub fn simpson_auto<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, rel: f64) -> f64 {
    let mut n = 64;
    let mut prev = simpson(f, a, b, n);
    loop {
        n *= 2;
        let next = simpson(f, a, b, n);
        let scale = next.abs().max(1e-300);
        if ((next - prev) / scale).abs() <= rel || n >= 1 << 22 {
            return next;
        }
        prev = next;
    }
}

/// ln Γ(a) for a ≥ 1 through the defining integral ∫₀^∞ t^(a−1)e^(−t) dt.
pub fn oracle_ln_gamma(a: f64) -> f64 {
    assert!(a >= 1.0);
    // The integrand peaks near t = a−1 and is below 1e-30 of the peak by
    // t = 3a + 80.
    let cut = 3.0 * a + 80.0;
    let val = simpson_auto(&|t: f64| t.powf(a - 1.0) * (-t).exp(), 0.0, cut, 1e-14);
    val.ln()
}

/// Regularized lower incomplete gamma P(a, x) for a ≥ 1, by direct
/// quadrature of both numerator and denominator.
pub fn oracle_reg_lower_gamma(a: f64, x: f64) -> f64 {
    assert!(a >= 1.0 && x >= 0.0);
    if x == 0.0 {
        return 0.0;
    }
    let num = simpson_auto(&|t: f64| t.powf(a - 1.0) * (-t).exp(), 0.0, x, 1e-14);
    num / oracle_ln_gamma(a).exp()
}

/// ψ(x) by Richardson-extrapolated central differences of the ln Γ oracle.
pub fn oracle_digamma(x: f64) -> f64 {
    assert!(x > 1.2, "differencing needs room on both sides of x");
    let d = |h: f64| (oracle_ln_gamma(x + h) - oracle_ln_gamma(x - h)) / (2.0 * h);
    let h = 0.02;
    let d1 = d(h);
    let d2 = d(h / 2.0);
    let d4 = d(h / 4.0);
    let r1 = (4.0 * d2 - d1) / 3.0;
    let r2 = (4.0 * d4 - d2) / 3.0;
    (16.0 * r2 - r1) / 15.0
}

/// K_ν(x) through the integral representation ∫₀^∞ e^(−x·cosh t)·cosh(νt) dt.
pub fn oracle_bessel_k(nu: u32, x: f64) -> f64 {
    assert!(x > 0.0);
    // Past x·cosh(T) ≈ 760 the integrand is flushed to zero even after the
    // cosh(νt) growth for the small orders used in tests.
    let r = 760.0 / x;
    let t_cut = (r + (r * r - 1.0).max(0.0).sqrt()).ln();
    simpson_auto(
        &|t: f64| (-x * t.cosh()).exp() * (nu as f64 * t).cosh(),
        0.0,
        t_cut,
        1e-14,
    )
}

/// Principal-branch Lambert W by bisection of w·e^w = x; exact to the last
/// bit within the bracket after 200 halvings.
pub fn oracle_lambert_w0(x: f64) -> f64 {
    assert!(x >= -(-1.0f64).exp());
    let (mut lo, mut hi) = if x >= 0.0 {
        (0.0, x.max(1.0).ln() + 1.0 + x.min(1.0))
    } else {
        (-1.0, 0.0)
    };
    let g = |w: f64| w * w.exp() - x;
    assert!(g(lo) <= 0.0 && g(hi) >= 0.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if g(mid) <= 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Ergodic capacity E[log₂(1 + c·X·Y)] with X, Y independent sums of N
/// unit-mean exponentials, by two-dimensional composite Simpson over the
/// joint density. Accurate to roughly 1e-7 relative; used as a coarse
/// independent cross-check of the library quadrature.
pub fn oracle_capacity_2d(n_antennas: u32, c: f64) -> f64 {
    let n = n_antennas as f64;
    let ln_fact = {
        // (N−1)! exactly for the small N used in tests.
        let mut f = 1.0f64;
        for k in 2..n_antennas {
            f *= k as f64;
        }
        f.ln()
    };
    let cut = 3.0 * n + 80.0;
    let panels = 6000usize;
    let h = cut / panels as f64;
    let weight = |i: usize| -> f64 {
        if i == 0 || i == panels {
            1.0
        } else if i % 2 == 1 {
            4.0
        } else {
            2.0
        }
    };
    // Marginal factor g(x) = x^(N−1)e^(−x)/(N−1)! tabulated once.
    let g: Vec<f64> = (0..=panels)
        .map(|i| {
            let x = i as f64 * h;
            if x == 0.0 {
                if n_antennas == 1 {
                    1.0
                } else {
                    0.0
                }
            } else {
                ((n - 1.0) * x.ln() - x - ln_fact).exp()
            }
        })
        .collect();
    let mut acc = 0.0f64;
    let mut comp = 0.0f64;
    for i in 0..=panels {
        let x = i as f64 * h;
        let gi = weight(i) * g[i];
        if gi == 0.0 {
            continue;
        }
        let mut row = 0.0f64;
        for j in 0..=panels {
            let y = j as f64 * h;
            row += weight(j) * g[j] * (c * x * y).ln_1p();
        }
        let term = gi * row;
        let t = acc + term;
        comp += if acc.abs() >= term.abs() {
            (acc - t) + term
        } else {
            (term - t) + acc
        };
        acc = t;
    }
    (acc + comp) * h * h / 9.0 / core::f64::consts::LN_2
}

/// Erlang(n, 1) CDF through the exact finite sum 1 − e^(−t)·Σ_{k<n} t^k/k!.
pub fn erlang_cdf(n: u32, t: f64) -> f64 {
    assert!(n >= 1);
    if t <= 0.0 {
        return 0.0;
    }
    if t > 750.0 {
        return 1.0;
    }
    let mut term = 1.0f64;
    let mut sum = 1.0f64;
    for k in 1..n {
        term *= t / k as f64;
        sum += term;
    }
    (1.0 - (-t).exp() * sum).clamp(0.0, 1.0)
}

/// CDF of the product X·Y of two independent Erlang(n, 1) variables at w,
/// as the one-dimensional mixture ∫₀^∞ f_n(x)·F_n(w/x) dx. Everything in
/// the integrand is in closed form, so this is an independent check of the
/// Bessel-series CDF (which equals F(w·c) of the scaled SNR).
pub fn oracle_product_cdf(n_antennas: u32, w: f64) -> f64 {
    assert!(w >= 0.0);
    if w == 0.0 {
        return 0.0;
    }
    let n = n_antennas as f64;
    let ln_fact = {
        let mut f = 1.0f64;
        for k in 2..n_antennas {
            f *= k as f64;
        }
        f.ln()
    };
    let density = |x: f64| -> f64 {
        if x == 0.0 {
            if n_antennas == 1 {
                1.0
            } else {
                0.0
            }
        } else {
            ((n - 1.0) * x.ln() - x - ln_fact).exp()
        }
    };
    let cut = 3.0 * n + 80.0;
    simpson_auto(
        &|x: f64| {
            let d = density(x);
            if d == 0.0 {
                0.0
            } else {
                d * erlang_cdf(n_antennas, w / x)
            }
        },
        0.0,
        cut,
        1e-13,
    )
}

/// Exhaustive τ-grid maximizer at fixed step, for cross-checking the
/// closed-form and golden-section optimizers against brute force.
pub fn grid_argmax_tau<F: Fn(f64) -> f64>(f: &F, step: f64) -> f64 {
    let mut best_tau = step;
    let mut best_val = f64::NEG_INFINITY;
    let steps = (1.0 / step).round() as usize;
    for i in 1..steps {
        let tau = i as f64 * step;
        let v = f(tau);
        if v > best_val {
            best_val = v;
            best_tau = tau;
        }
    }
    best_tau
}
