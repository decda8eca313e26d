//! Exact re-ranking support for the exhaustive oracle: integer
//! characteristic polynomials (Faddeev-LeVerrier) and exact comparison of
//! largest roots via Sturm sequences with rational sign evaluations.
//!
//! All polynomials here are characteristic polynomials of real symmetric
//! integer matrices, so every root is real. Monic integer polynomials have
//! only integer rational roots; those are stripped off exactly first, after
//! which every dyadic bisection probe is guaranteed not to hit a root.

use std::cmp::Ordering;

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::graph::Graph;

/// Characteristic polynomial of the Seidel matrix of `g`, as exact integer
/// coefficients `coeffs[k]` of `x^k` (monic, length `n + 1`).
pub fn seidel_charpoly(g: &Graph) -> Vec<i128> {
    let n = g.order();
    let a: Vec<i128> = (0..n * n)
        .map(|idx| {
            let (i, j) = (idx / n, idx % n);
            if i == j {
                0
            } else if g.has_edge(i, j) {
                -1
            } else {
                1
            }
        })
        .collect();
    charpoly(n, &a)
}

/// Faddeev-LeVerrier over exact integers. `a` is row-major `n x n`.
pub fn charpoly(n: usize, a: &[i128]) -> Vec<i128> {
    assert_eq!(a.len(), n * n);
    let mut coeffs = vec![0i128; n + 1];
    coeffs[n] = 1;
    let trace = |m: &[i128]| -> i128 { (0..n).map(|i| m[i * n + i]).sum() };
    let mut m = a.to_vec(); // M_1 = A
    coeffs[n - 1] = -trace(&m);
    for k in 2..=n {
        // M_k = A (M_{k-1} + c_{n-k+1} I)
        for i in 0..n {
            m[i * n + i] += coeffs[n - k + 1];
        }
        let mut next = vec![0i128; n * n];
        for i in 0..n {
            for l in 0..n {
                let ail = a[i * n + l];
                if ail == 0 {
                    continue;
                }
                for j in 0..n {
                    next[i * n + j] += ail * m[l * n + j];
                }
            }
        }
        m = next;
        let tr = trace(&m);
        debug_assert_eq!(tr % (k as i128), 0);
        coeffs[n - k] = -tr / k as i128;
    }
    coeffs
}

// --- rational polynomial helpers -----------------------------------------

/// Coefficients of `x^k` at position `k`; normalized (leading coeff nonzero
/// unless the polynomial is zero).
type QPoly = Vec<BigRational>;

fn trim(p: &mut QPoly) {
    while p.len() > 1 && p.last().unwrap().is_zero() {
        p.pop();
    }
}

fn degree(p: &QPoly) -> usize {
    p.len() - 1
}

fn eval(p: &QPoly, x: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for c in p.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

fn derivative(p: &QPoly) -> QPoly {
    if p.len() == 1 {
        return vec![BigRational::zero()];
    }
    let mut d: QPoly = p
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * BigRational::from(BigInt::from(k)))
        .collect();
    trim(&mut d);
    d
}

/// Remainder of `a / b`, `b` nonzero.
fn rem(a: &QPoly, b: &QPoly) -> QPoly {
    let mut r = a.clone();
    trim(&mut r);
    let db = degree(b);
    let lead_b = b.last().unwrap().clone();
    while !is_zero_poly(&r) && degree(&r) >= db {
        let dr = degree(&r);
        let factor = r.last().unwrap() / &lead_b;
        let shift = dr - db;
        for (k, c) in b.iter().enumerate() {
            let idx = k + shift;
            let v = &r[idx] - &factor * c;
            r[idx] = v;
        }
        r[dr] = BigRational::zero();
        trim(&mut r);
    }
    r
}

fn is_zero_poly(p: &QPoly) -> bool {
    p.iter().all(|c| c.is_zero())
}

fn make_monic(p: &mut QPoly) {
    trim(p);
    let lead = p.last().unwrap().clone();
    if !lead.is_zero() && !lead.is_one() {
        for c in p.iter_mut() {
            *c = &*c / &lead;
        }
    }
}

fn gcd(a: &QPoly, b: &QPoly) -> QPoly {
    let mut x = a.clone();
    let mut y = b.clone();
    trim(&mut x);
    trim(&mut y);
    while !is_zero_poly(&y) {
        let r = rem(&x, &y);
        x = y;
        y = r;
        make_monic(&mut x);
    }
    make_monic(&mut x);
    x
}

fn sturm_chain(p: &QPoly) -> Vec<QPoly> {
    let mut chain = vec![p.clone(), derivative(p)];
    loop {
        let k = chain.len();
        if is_zero_poly(&chain[k - 1]) || degree(&chain[k - 1]) == 0 {
            break;
        }
        let mut r = rem(&chain[k - 2], &chain[k - 1]);
        if is_zero_poly(&r) {
            break;
        }
        for c in r.iter_mut() {
            *c = -c.clone();
        }
        chain.push(r);
    }
    chain
}

fn sign_variations(chain: &[QPoly], x: &BigRational) -> usize {
    let mut last: Option<bool> = None;
    let mut variations = 0;
    for p in chain {
        let v = eval(p, x);
        if v.is_zero() {
            continue;
        }
        let positive = v.is_positive();
        if let Some(prev) = last {
            if prev != positive {
                variations += 1;
            }
        }
        last = Some(positive);
    }
    variations
}

/// Number of distinct roots of the (squarefree) chain polynomial in `(a, b]`.
/// Endpoints must not be roots of the head polynomial.
fn count_roots(chain: &[QPoly], a: &BigRational, b: &BigRational) -> usize {
    sign_variations(chain, a) - sign_variations(chain, b)
}

/// Exact location of the largest real root of a monic integer polynomial:
/// either an exact rational (necessarily an integer) or an open isolating
/// interval around an irrational root.
pub struct LargestRoot {
    exact: Option<BigRational>,
    /// Squarefree, rational-root-free tail of the polynomial, with its Sturm
    /// chain and the isolating interval of its largest root.
    interval: Option<IsolatedRoot>,
}

struct IsolatedRoot {
    chain: Vec<QPoly>,
    lo: BigRational,
    hi: BigRational,
}

impl IsolatedRoot {
    fn refine(&mut self) {
        let mid = (&self.lo + &self.hi) / BigRational::from(BigInt::from(2));
        // mid is never a root: the chain head has no rational roots.
        if count_roots(&self.chain, &mid, &self.hi) >= 1 {
            self.lo = mid;
        } else {
            self.hi = mid;
        }
    }

    fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }
}

/// Isolates the largest real root of a monic integer polynomial with all
/// roots real (degree >= 1).
pub fn largest_root(coeffs: &[i128]) -> LargestRoot {
    assert!(coeffs.len() >= 2, "constant polynomial has no roots");
    assert_eq!(*coeffs.last().unwrap(), 1, "polynomial must be monic");
    let mut p: Vec<BigInt> = coeffs.iter().map(|&c| BigInt::from(c)).collect();

    // Cauchy bound: all roots lie in (-bound, bound).
    let max_abs: u128 = coeffs[..coeffs.len() - 1]
        .iter()
        .map(|c| c.unsigned_abs())
        .max()
        .unwrap_or(0);
    let bound = BigInt::from(max_abs) + BigInt::from(1);

    // Strip integer roots exactly (monic => rational roots are integers).
    let mut best_int: Option<BigInt> = None;
    let mut r = -bound.clone();
    while r <= bound && p.len() > 1 {
        let val = eval_int(&p, &r);
        if val.is_zero() {
            p = deflate(&p, &r);
            best_int = Some(match best_int {
                Some(prev) => prev.max(r.clone()),
                None => r.clone(),
            });
            continue; // same r again, multiplicities
        }
        r += 1;
    }

    let interval = if p.len() > 1 {
        let q: QPoly = p
            .iter()
            .map(|c| BigRational::from(c.clone()))
            .collect();
        let dq = derivative(&q);
        let g = gcd(&q, &dq);
        let mut sf = if degree(&g) == 0 {
            q
        } else {
            poly_div_exact(&q, &g)
        };
        make_monic(&mut sf);
        let chain = sturm_chain(&sf);
        let mut iso = IsolatedRoot {
            chain,
            lo: BigRational::from(-bound.clone() - BigInt::one()),
            hi: BigRational::from(bound.clone() + BigInt::one()),
        };
        // Shrink until the interval holds exactly the largest root.
        while count_roots(&iso.chain, &iso.lo, &iso.hi) > 1 {
            iso.refine();
        }
        Some(iso)
    } else {
        None
    };

    LargestRoot {
        exact: if interval.is_none() {
            Some(BigRational::from(best_int.expect("nonconstant polynomial")))
        } else {
            best_int.map(BigRational::from)
        },
        interval,
    }
}

fn eval_int(p: &[BigInt], x: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for c in p.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// Exact synthetic division of `p` by `(x - r)`.
fn deflate(p: &[BigInt], r: &BigInt) -> Vec<BigInt> {
    let n = p.len() - 1;
    let mut q = vec![BigInt::zero(); n];
    let mut carry = BigInt::zero();
    for k in (0..n).rev() {
        carry = &p[k + 1] + r * &carry;
        q[k] = carry.clone();
    }
    debug_assert!((&p[0] + r * &carry).is_zero());
    q
}

/// Exact quotient `a / b` when `b` divides `a`.
fn poly_div_exact(a: &QPoly, b: &QPoly) -> QPoly {
    let mut r = a.clone();
    trim(&mut r);
    let db = degree(b);
    let da = degree(&r);
    let lead_b = b.last().unwrap().clone();
    let mut q = vec![BigRational::zero(); da - db + 1];
    while !is_zero_poly(&r) && degree(&r) >= db {
        let dr = degree(&r);
        let factor = r.last().unwrap() / &lead_b;
        let shift = dr - db;
        q[shift] = factor.clone();
        for (k, c) in b.iter().enumerate() {
            let v = &r[k + shift] - &factor * c;
            r[k + shift] = v;
        }
        r[dr] = BigRational::zero();
        trim(&mut r);
    }
    debug_assert!(is_zero_poly(&r), "division was not exact");
    q
}

/// Compares the largest real roots of two monic integer polynomials with all
/// roots real, exactly.
pub fn cmp_largest_roots(p: &[i128], q: &[i128]) -> Ordering {
    if p == q {
        return Ordering::Equal;
    }
    let a = largest_root(p).resolve();
    let b = largest_root(q).resolve();
    match (a, b) {
        (Resolved::Exact(x), Resolved::Exact(y)) => x.cmp(&y),
        (Resolved::Exact(e), Resolved::Irrational(mut i)) => {
            // The irrational root is never equal to e; shrink until decided.
            loop {
                if e <= i.lo {
                    return Ordering::Less;
                }
                if e >= i.hi {
                    return Ordering::Greater;
                }
                i.refine();
            }
        }
        (Resolved::Irrational(mut i), Resolved::Exact(e)) => loop {
            if e <= i.lo {
                return Ordering::Greater;
            }
            if e >= i.hi {
                return Ordering::Less;
            }
            i.refine();
        },
        (Resolved::Irrational(mut ia), Resolved::Irrational(mut ib)) => {
            let g = gcd(&ia.chain[0], &ib.chain[0]);
            let gchain = if degree(&g) >= 1 {
                Some(sturm_chain(&g))
            } else {
                None
            };
            loop {
                if ia.hi <= ib.lo {
                    return Ordering::Less;
                }
                if ib.hi <= ia.lo {
                    return Ordering::Greater;
                }
                // Overlapping isolating intervals: equal iff a common root of
                // both squarefree parts lies in the intersection (it is then
                // the unique root of each side there).
                if let Some(gchain) = &gchain {
                    let lo = ia.lo.clone().max(ib.lo.clone());
                    let hi = ia.hi.clone().min(ib.hi.clone());
                    if lo < hi && count_roots(gchain, &lo, &hi) >= 1 {
                        return Ordering::Equal;
                    }
                }
                ia.refine();
                ib.refine();
            }
        }
    }
}

enum Resolved {
    Exact(BigRational),
    Irrational(IsolatedRoot),
}

impl LargestRoot {
    /// Decides whether the overall largest root is the exact integer root or
    /// the isolated irrational one, refining until the two candidates
    /// separate.
    fn resolve(self) -> Resolved {
        match (self.exact, self.interval) {
            (Some(e), None) => Resolved::Exact(e),
            (None, Some(i)) => Resolved::Irrational(i),
            (Some(e), Some(mut i)) => loop {
                if e >= i.hi {
                    return Resolved::Exact(e);
                }
                if e <= i.lo {
                    return Resolved::Irrational(i);
                }
                i.refine();
            },
            (None, None) => unreachable!("a nonconstant polynomial has roots"),
        }
    }

}

/// Approximate value of the located largest root, for reporting.
pub fn approximate(l: LargestRoot) -> f64 {
    let to_f64 = |r: &BigRational| -> f64 { bigint_to_f64(r.numer()) / bigint_to_f64(r.denom()) };
    match l.resolve() {
        Resolved::Exact(e) => to_f64(&e),
        Resolved::Irrational(mut i) => {
            let tiny = BigRational::new(BigInt::one(), BigInt::from(1u64 << 50));
            while i.width() > tiny {
                i.refine();
            }
            0.5 * (to_f64(&i.lo) + to_f64(&i.hi))
        }
    }
}

fn bigint_to_f64(x: &BigInt) -> f64 {
    use num::ToPrimitive;
    x.to_f64().unwrap_or(f64::INFINITY)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    #[test]
    fn charpoly_of_empty_graph() {
        // S(empty_n) = J - I with charpoly (x - (n-1))(x + 1)^(n-1).
        let g = Graph::empty(4).unwrap();
        assert_eq!(seidel_charpoly(&g), vec![-3, -8, -6, 0, 1]);
        let g = Graph::empty(2).unwrap();
        assert_eq!(seidel_charpoly(&g), vec![-1, 0, 1]);
    }

    #[test]
    fn charpoly_matches_cubic_factor() {
        // S(S_{6,1}): (x^3 - 3x^2 - 9x + 11)(x + 1)^3
        let g = Graph::star_union(6, 1).unwrap();
        let p = seidel_charpoly(&g);
        // Expand (x^3 - 3x^2 - 9x + 11)(x^3 + 3x^2 + 3x + 1):
        let a = [11i128, -9, -3, 1];
        let b = [1i128, 3, 3, 1];
        let mut want = [0i128; 7];
        for (i, &ai) in a.iter().enumerate() {
            for (j, &bj) in b.iter().enumerate() {
                want[i + j] += ai * bj;
            }
        }
        assert_eq!(p, want.to_vec());
    }

    #[test]
    fn charpoly_trace_laws() {
        for n in 2..=7 {
            let g = Graph::star_union(n, n / 2).unwrap();
            let p = seidel_charpoly(&g);
            // Sum of eigenvalues is zero: coefficient of x^(n-1) vanishes.
            assert_eq!(p[n - 1], 0);
            // Sum of squares n(n-1): e1^2 - 2 e2 with e1 = 0.
            let e2 = p[n - 2];
            assert_eq!(-2 * e2, (n * (n - 1)) as i128);
        }
    }

    #[test]
    fn cmp_examples() {
        // x^2 - 2x - 11 (root 1 + 2*sqrt(3) ~ 4.46) vs x^2 - 12 (~3.46).
        let p = vec![-11, -2, 1];
        let q = vec![-12, 0, 1];
        assert_eq!(cmp_largest_roots(&p, &q), Ordering::Greater);
        assert_eq!(cmp_largest_roots(&q, &p), Ordering::Less);
        assert_eq!(cmp_largest_roots(&p, &p), Ordering::Equal);

        // Shared irrational largest root through a common factor:
        // (x^2 - 2x - 11) vs (x^2 - 2x - 11)(x^2 - 2).
        let mut prod = vec![0i128; 5];
        for (i, &a) in [-11i128, -2, 1].iter().enumerate() {
            for (j, &b) in [-2i128, 0, 1].iter().enumerate() {
                prod[i + j] += a * b;
            }
        }
        assert_eq!(cmp_largest_roots(&p, &prod), Ordering::Equal);

        // Exact integer roots: (x - 5)(x + 1) vs
        // (x - 5)(x + 2)(x - 1) = x^3 - 4x^2 - 7x + 10.
        let p5 = vec![-5, -4, 1];
        let q5 = vec![10, -7, -4, 1];
        assert_eq!(cmp_largest_roots(&p5, &q5), Ordering::Equal);

        // Integer vs irrational: x - 5 has root 5 > (3 + sqrt(65))/2 ~ 5.53? No:
        // 5.53 > 5, so x^2 - 3x - 14 wins.
        let lin5 = vec![-5, 1];
        let quad = vec![-14, -3, 1];
        assert_eq!(cmp_largest_roots(&lin5, &quad), Ordering::Less);
        assert_eq!(cmp_largest_roots(&quad, &lin5), Ordering::Greater);
    }

    #[test]
    fn cmp_star_vs_conjecture_shape() {
        // rho(S_{7,1}) = (3 + sqrt(65))/2 beats rho = 5 of S_{7,3}.
        let s71 = seidel_charpoly(&Graph::star_union(7, 1).unwrap());
        let s73 = seidel_charpoly(&Graph::star_union(7, 3).unwrap());
        assert_eq!(cmp_largest_roots(&s71, &s73), Ordering::Greater);
        let l = largest_root(&s73);
        assert!((approximate(l) - 5.0).abs() < 1e-9);
        let l = largest_root(&s71);
        assert!((approximate(l) - (3.0 + 65.0f64.sqrt()) / 2.0).abs() < 1e-9);
    }

    #[test]
    fn switching_preserves_charpoly() {
        let g = Graph::new(6, &[(0, 1), (1, 2), (3, 4), (0, 5)]).unwrap();
        let h = crate::spectra::switch(&g, &[0, 3]).unwrap();
        assert_eq!(seidel_charpoly(&g), seidel_charpoly(&h));
    }
}
