//! Closed-form theory of the maximal Seidel index: the parameters
//! `(d, t, a, b, r)`, the extremal constructions, the 3x3 quotient matrix,
//! the characteristic cubic and its transformed form, and the bisection
//! solver for the defect `xi` with `rho = n - 1 - xi`.

use thiserror::Error;

use crate::graph::{are_isomorphic, Graph, GraphError, ISO_CAP};

#[derive(Debug, Error, PartialEq)]
pub enum ExtremalError {
    #[error("order must be at least 2, got {0}")]
    OrderTooSmall(usize),
    #[error("m exceeds floor(n^2/4): m = {m}, cap = {cap}")]
    SizeTooLarge { m: usize, cap: usize },
    #[error("star size {t} out of range [{lo}, {hi}]")]
    StarSizeOutOfRange { t: usize, lo: usize, hi: usize },
    #[error("bisection bracket failure: g({lo}) = {glo:e}, g({hi}) = {ghi:e}")]
    BracketFailure { lo: f64, hi: f64, glo: f64, ghi: f64 },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// The parameter tuple driving the extremal construction for `(n, m)`.
///
/// `d(n-d)` is the product closest to `m` over `d <= floor(n/2)`, `t` the
/// distance to it, `r` the largest `j` with `j(n-j) <= m`, and
/// `a = m - r(n-r)`, `b = (r+1)(n-r-1) - m` the distances to the two
/// surrounding products (`b` is absent at the top product).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtremalParams {
    pub n: usize,
    pub m: usize,
    pub d: usize,
    pub t: usize,
    pub r: usize,
    pub a: usize,
    pub b: Option<usize>,
    /// True when two values of `d` are equidistant from `m`; the reported
    /// `d` is then the smaller one.
    pub tie: bool,
}

/// Smallest root of `g(y) = 4t(n-1-t) - y(n-y)^2` with its bracketing
/// bounds, and the resulting maximal index `rho = n - 1 - xi`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CubicSolution {
    pub xi: f64,
    pub xi_lo: f64,
    pub xi_hi: f64,
    pub rho: f64,
}

/// Largest admissible size for order `n`.
pub fn size_cap(n: usize) -> usize {
    (n / 2) * (n - n / 2)
}

pub fn extremal_params(n: usize, m: usize) -> Result<ExtremalParams, ExtremalError> {
    if n < 2 {
        return Err(ExtremalError::OrderTooSmall(n));
    }
    let cap = size_cap(n);
    if m > cap {
        return Err(ExtremalError::SizeTooLarge { m, cap });
    }
    let half = n / 2;
    let mut d = 0;
    let mut t = m; // distance to j = 0
    let mut tie = false;
    for j in 1..=half {
        let dist = m.abs_diff(j * (n - j));
        if dist < t {
            d = j;
            t = dist;
            tie = false;
        } else if dist == t {
            tie = true;
        }
    }
    let r = (0..=half).rev().find(|&j| j * (n - j) <= m).unwrap();
    let a = m - r * (n - r);
    let b = if m < cap {
        Some((r + 1) * (n - r - 1) - m)
    } else {
        None
    };
    debug_assert!(2 * t <= n - 1);
    if let Some(b) = b {
        debug_assert_eq!(t, a.min(b));
        debug_assert_eq!(a + b, n - 2 * r - 1);
    }
    Ok(ExtremalParams {
        n,
        m,
        d,
        t,
        r,
        a,
        b,
        tie,
    })
}

/// Builds one extremal graph: `K_{d,n-d}` with a `t`-star removed from the
/// cross edges or added inside a part.
///
/// `host` selects which part carries the star center (add) or the star
/// leaves' opposite side (remove); returns None when the star does not fit.
fn build_variant(n: usize, d: usize, m: usize, host_first: bool) -> Option<Graph> {
    let prod = d * (n - d);
    let t = m.abs_diff(prod);
    let (lo_len, hi_len) = (d, n - d); // parts {0..d} and {d..n}
    let mut g = Graph::complete_bipartite(d, n).expect("valid bipartite parameters");
    if m >= prod {
        // Add a star inside one part; the part needs t + 1 vertices.
        let (start, len) = if host_first { (0, lo_len) } else { (d, hi_len) };
        if len < t + 1 {
            return None;
        }
        for leaf in 1..=t {
            g.set_edge(start, start + leaf, true);
        }
    } else {
        // Remove a star from the cross edges: center in the host part,
        // leaves in the other part.
        let (center, other_start, other_len) = if host_first {
            (0, d, hi_len)
        } else {
            (d, 0, lo_len)
        };
        if (host_first && lo_len == 0) || other_len < t {
            return None;
        }
        for leaf in 0..t {
            g.set_edge(center, other_start + leaf, false);
        }
    }
    Some(g)
}

/// Every extremal construction for `(n, m)`, deduplicated up to isomorphism:
/// the star center may sit in either part where it fits, and on a tie both
/// values of `d` are emitted.
pub fn construct_hnm(n: usize, m: usize) -> Result<Vec<Graph>, ExtremalError> {
    let p = extremal_params(n, m)?;
    let mut ds = vec![p.d];
    if p.tie {
        ds.push(p.d + 1);
    }
    let mut out: Vec<Graph> = Vec::new();
    for d in ds {
        for host_first in [true, false] {
            let Some(g) = build_variant(n, d, m, host_first) else {
                continue;
            };
            debug_assert_eq!(g.size(), m);
            let mut dup = false;
            for seen in &out {
                if n <= ISO_CAP {
                    if are_isomorphic(seen, &g)? {
                        dup = true;
                        break;
                    }
                } else {
                    // Above the isomorphism cap a degree-sequence match
                    // suffices: distinct non-isomorphic variants of the same
                    // (n, m) always differ in their degree multiset.
                    let mut a = seen.degrees();
                    let mut b = g.degrees();
                    a.sort_unstable();
                    b.sort_unstable();
                    if a == b {
                        dup = true;
                        break;
                    }
                }
            }
            if !dup {
                out.push(g);
            }
        }
    }
    Ok(out)
}

/// The 3x3 quotient matrix of the degree partition of `S_{n,t}` (center,
/// leaves, isolated vertices). Not symmetric.
pub fn quotient_matrix(n: usize, t: usize) -> Result<[[f64; 3]; 3], ExtremalError> {
    if t < 1 || t > n - 2 {
        return Err(ExtremalError::StarSizeOutOfRange {
            t,
            lo: 1,
            hi: n - 2,
        });
    }
    let (nf, tf) = (n as f64, t as f64);
    Ok([
        [0.0, -tf, nf - tf - 1.0],
        [-1.0, tf - 1.0, nf - tf - 1.0],
        [1.0, tf, nf - tf - 2.0],
    ])
}

/// Coefficients of the characteristic cubic of the quotient matrix,
/// `x^3 + (3-n)x^2 + (3-2n)x - 4t^2 + 4nt - 4t - n + 1`,
/// highest degree first.
pub fn char_cubic(n: usize, t: usize) -> [i64; 4] {
    let (ni, ti) = (n as i64, t as i64);
    [1, 3 - ni, 3 - 2 * ni, -4 * ti * ti + 4 * ni * ti - 4 * ti - ni + 1]
}

fn g_eval(n: usize, t: usize, y: f64) -> f64 {
    let c = 4.0 * t as f64 * (n as f64 - 1.0 - t as f64);
    c - y * (n as f64 - y) * (n as f64 - y)
}

/// The printed bracketing bounds `4t(n-1-t)/n^2 <= xi <= 4t(n-1-t)/(n-1)^2`.
pub fn xi_bounds(n: usize, t: usize) -> (f64, f64) {
    let c = 4.0 * t as f64 * (n as f64 - 1.0 - t as f64);
    (c / (n as f64 * n as f64), c / ((n as f64 - 1.0) * (n as f64 - 1.0)))
}

const BISECT_TOL: f64 = 1e-12;
const BISECT_CAP: usize = 200;

/// Solves for the smallest root of `g` by bisection inside the printed
/// bounds. `t = 0` short-circuits to `xi = 0`, `rho = n - 1`.
pub fn solve_xi(n: usize, t: usize) -> Result<CubicSolution, ExtremalError> {
    if t == 0 {
        return Ok(CubicSolution {
            xi: 0.0,
            xi_lo: 0.0,
            xi_hi: 0.0,
            rho: n as f64 - 1.0,
        });
    }
    if 2 * t > n - 1 {
        return Err(ExtremalError::StarSizeOutOfRange {
            t,
            lo: 0,
            hi: (n - 1) / 2,
        });
    }
    let (xi_lo, xi_hi) = xi_bounds(n, t);
    // The endpoints themselves can be roots (t = (n-1)/2 gives g(xi_hi) = 0),
    // so widen relatively before the sign test.
    let mut lo = xi_lo - 1e-15 * (1.0 + xi_lo);
    let mut hi = xi_hi + 1e-15 * (1.0 + xi_hi);
    let glo = g_eval(n, t, lo);
    let ghi = g_eval(n, t, hi);
    let scale = 4.0 * t as f64 * (n as f64);
    if glo < -1e-9 * scale || ghi > 1e-9 * scale {
        return Err(ExtremalError::BracketFailure {
            lo,
            hi,
            glo,
            ghi,
        });
    }
    for _ in 0..BISECT_CAP {
        if hi - lo <= BISECT_TOL {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if g_eval(n, t, mid) >= 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let xi = (0.5 * (lo + hi)).clamp(xi_lo.max(0.0), xi_hi);
    Ok(CubicSolution {
        xi,
        xi_lo,
        xi_hi,
        rho: n as f64 - 1.0 - xi,
    })
}

/// Maximal Seidel index over graphs of order `n` and size `m`:
/// `rho = n - 1 - xi` with `t` from [`extremal_params`].
pub fn max_index(n: usize, m: usize) -> Result<CubicSolution, ExtremalError> {
    let p = extremal_params(n, m)?;
    solve_xi(n, p.t)
}

/// Index of `S_{n,t}` for any `0 <= t <= n-1`, folding `t` into the
/// equivalent `min(t, n-1-t)` before solving the cubic.
pub fn star_rho(n: usize, t: usize) -> Result<f64, ExtremalError> {
    if t > n - 1 {
        return Err(ExtremalError::StarSizeOutOfRange {
            t,
            lo: 0,
            hi: n - 1,
        });
    }
    Ok(solve_xi(n, t.min(n - 1 - t))?.rho)
}

/// The three roots of the characteristic cubic for `1 <= t <= n-2`, sorted
/// descending. Each is obtained by bisecting `g` on its own bracket
/// (`[xi_lo, xi_hi]`, `(n/3, n)`, and above `n`), independently of the
/// eigensolver.
pub fn cubic_roots(n: usize, t: usize) -> Result<[f64; 3], ExtremalError> {
    if t < 1 || t > n - 2 {
        return Err(ExtremalError::StarSizeOutOfRange {
            t,
            lo: 1,
            hi: n - 2,
        });
    }
    let t_eff = t.min(n - 1 - t);
    let xi = solve_xi(n, t_eff)?.xi;
    let nf = n as f64;
    let c = 4.0 * t as f64 * (nf - 1.0 - t as f64);
    // Middle root of g in (n/3, n): g goes from negative to positive.
    let mut lo = nf / 3.0;
    let mut hi = nf;
    for _ in 0..BISECT_CAP {
        let mid = 0.5 * (lo + hi);
        if g_eval(n, t_eff, mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= BISECT_TOL * nf {
            break;
        }
    }
    let y_mid = 0.5 * (lo + hi);
    // Largest root of g, above n: g goes from positive to negative.
    let mut lo = nf;
    let mut hi = nf + c.sqrt() + 1.0;
    for _ in 0..BISECT_CAP {
        let mid = 0.5 * (lo + hi);
        if g_eval(n, t_eff, mid) >= 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= BISECT_TOL * nf {
            break;
        }
    }
    let y_big = 0.5 * (lo + hi);
    Ok([nf - 1.0 - xi, nf - 1.0 - y_mid, nf - 1.0 - y_big])
}
