//! Seidel matrices, a dense symmetric eigensolver, Seidel switching,
//! quadratic forms, and the sign-pattern counting identity.
//!
//! The eigensolver is cyclic Jacobi with threshold sweeping. It is
//! unconditionally stable for symmetric input and produces orthonormal
//! eigenvectors as a by-product; at order <= 64 the O(n^3) sweep cost is
//! irrelevant.

use thiserror::Error;

use crate::graph::{Graph, GraphError};

/// Eigenvalues closer than this are treated as one cluster when deciding
/// multiplicities and the simplicity of the index.
pub const CLUSTER_TOL: f64 = 1e-7;

/// Components of magnitude at or below this are rejected as "zero" by
/// [`negative_term_count`].
pub const ZERO_COMPONENT_TOL: f64 = 1e-12;

const SWEEP_CAP: usize = 100;

#[derive(Debug, Error, PartialEq)]
pub enum SpectraError {
    #[error("Jacobi sweep cap reached with off-diagonal norm {off_norm:e}")]
    NotConverged { off_norm: f64 },
    #[error("vector length {got} does not match graph order {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("component {index} is zero (|x| <= {ZERO_COMPONENT_TOL:e})")]
    ZeroComponent { index: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Dense real symmetric matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct SymMatrix {
    n: usize,
    a: Vec<f64>,
}

impl SymMatrix {
    pub fn zeros(n: usize) -> SymMatrix {
        assert!(n >= 1);
        SymMatrix {
            n,
            a: vec![0.0; n * n],
        }
    }

    /// Builds from `f(i, j)`; only `i <= j` is sampled, the lower triangle
    /// mirrors it.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> SymMatrix {
        let mut m = SymMatrix::zeros(n);
        for i in 0..n {
            for j in i..n {
                let v = f(i, j);
                m.a[i * n + j] = v;
                m.a[j * n + i] = v;
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.a[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.a[i * self.n + j] = v;
        self.a[j * self.n + i] = v;
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    pub fn frobenius(&self) -> f64 {
        self.a.iter().map(|x| x * x).sum::<f64>().sqrt()
    }
}

/// Full sorted eigendecomposition of a symmetric matrix.
#[derive(Clone, Debug)]
pub struct Spectrum {
    /// Eigenvalues, descending.
    pub eigenvalues: Vec<f64>,
    /// Orthonormal eigenvectors aligned with `eigenvalues`, each
    /// sign-normalized so the entry of largest magnitude is positive.
    pub eigenvectors: Vec<Vec<f64>>,
}

impl Spectrum {
    /// The largest eigenvalue.
    pub fn index(&self) -> f64 {
        self.eigenvalues[0]
    }

    /// Multiplicity of the cluster containing the largest eigenvalue.
    pub fn index_multiplicity(&self) -> usize {
        let top = self.eigenvalues[0];
        self.eigenvalues
            .iter()
            .take_while(|&&ev| top - ev <= CLUSTER_TOL)
            .count()
    }
}

/// The Seidel matrix of `g`: zero diagonal, -1 on adjacent pairs, +1 on
/// non-adjacent pairs. Coincides with the adjacency matrix of the complete
/// signed graph whose negative edges induce `g`.
pub fn seidel_matrix(g: &Graph) -> SymMatrix {
    let n = g.order();
    SymMatrix::from_fn(n, |i, j| {
        if i == j {
            0.0
        } else if g.has_edge(i, j) {
            -1.0
        } else {
            1.0
        }
    })
}

fn offdiag_norm(n: usize, a: &[f64]) -> f64 {
    let mut s = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            s += 2.0 * a[i * n + j] * a[i * n + j];
        }
    }
    s.sqrt()
}

/// Cyclic Jacobi on a row-major symmetric buffer. On success `a`'s diagonal
/// holds the eigenvalues; if `v` is given it accumulates the rotations, so
/// its columns end up as the eigenvectors.
pub(crate) fn jacobi(n: usize, a: &mut [f64], mut v: Option<&mut [f64]>) -> Result<(), SpectraError> {
    if let Some(v) = v.as_deref_mut() {
        v.fill(0.0);
        for i in 0..n {
            v[i * n + i] = 1.0;
        }
    }
    if n == 1 {
        return Ok(());
    }
    let frob = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let target = 1e-12 * (frob + 1.0);
    for sweep in 0..SWEEP_CAP {
        let off = offdiag_norm(n, a);
        if off <= target {
            return Ok(());
        }
        // Small rotations early in a sweep can be skipped; the threshold
        // shrinks with the remaining off-diagonal mass.
        let thresh = if sweep < 3 { 0.2 * off / (n * n) as f64 } else { 0.0 };
        for p in 0..(n - 1) {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq.abs() <= thresh || apq == 0.0 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = if theta.abs() > 1e12 {
                    1.0 / (2.0 * theta)
                } else {
                    let s = theta.signum();
                    s / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                let tau = s / (1.0 + c);

                a[p * n + p] = app - t * apq;
                a[q * n + q] = aqq + t * apq;
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
                for r in 0..n {
                    if r == p || r == q {
                        continue;
                    }
                    let arp = a[r * n + p];
                    let arq = a[r * n + q];
                    let new_p = arp - s * (arq + tau * arp);
                    let new_q = arq + s * (arp - tau * arq);
                    a[r * n + p] = new_p;
                    a[p * n + r] = new_p;
                    a[r * n + q] = new_q;
                    a[q * n + r] = new_q;
                }
                if let Some(v) = v.as_deref_mut() {
                    for r in 0..n {
                        let vrp = v[r * n + p];
                        let vrq = v[r * n + q];
                        v[r * n + p] = vrp - s * (vrq + tau * vrp);
                        v[r * n + q] = vrq + s * (vrp - tau * vrq);
                    }
                }
            }
        }
    }
    let off = offdiag_norm(n, a);
    if off <= target {
        Ok(())
    } else {
        Err(SpectraError::NotConverged { off_norm: off })
    }
}

/// Largest eigenvalue only, skipping eigenvector accumulation. Used by the
/// exhaustive scans.
pub(crate) fn largest_eigenvalue_into(n: usize, a: &mut [f64]) -> Result<f64, SpectraError> {
    jacobi(n, a, None)?;
    let mut best = a[0];
    for i in 1..n {
        if a[i * n + i] > best {
            best = a[i * n + i];
        }
    }
    Ok(best)
}

/// Full eigendecomposition, eigenvalues descending, eigenvectors orthonormal
/// and sign-normalized. Deterministic for identical input.
pub fn eigen_decompose(m: &SymMatrix) -> Result<Spectrum, SpectraError> {
    let n = m.dim();
    let mut a = m.a.clone();
    let mut v = vec![0.0; n * n];
    jacobi(n, &mut a, Some(&mut v))?;
    let mut order: Vec<usize> = (0..n).collect();
    // Stable descending sort keeps tied eigenvalues in column order.
    order.sort_by(|&i, &j| a[j * n + j].partial_cmp(&a[i * n + i]).unwrap());
    let eigenvalues: Vec<f64> = order.iter().map(|&k| a[k * n + k]).collect();
    let eigenvectors: Vec<Vec<f64>> = order
        .iter()
        .map(|&k| {
            let mut col: Vec<f64> = (0..n).map(|r| v[r * n + k]).collect();
            sign_normalize(&mut col);
            col
        })
        .collect();
    Ok(Spectrum {
        eigenvalues,
        eigenvectors,
    })
}

/// Flips a vector so its entry of largest magnitude is positive; magnitude
/// ties break toward the lowest index.
fn sign_normalize(x: &mut [f64]) {
    let mut best = 0;
    for i in 1..x.len() {
        if x[i].abs() > x[best].abs() {
            best = i;
        }
    }
    if x[best] < 0.0 {
        for xi in x.iter_mut() {
            *xi = -*xi;
        }
    }
}

/// Index of the Seidel matrix of `g` (its largest eigenvalue).
pub fn seidel_index(g: &Graph) -> Result<f64, SpectraError> {
    Ok(eigen_decompose(&seidel_matrix(g))?.index())
}

/// Unit eigenvector for the index, with a simplicity flag derived from the
/// eigenvalue gap.
#[derive(Clone, Debug)]
pub struct PrincipalEigenvector {
    pub eigenvalue: f64,
    pub vector: Vec<f64>,
    /// False when the index eigenvalue is within [`CLUSTER_TOL`] of the next
    /// one, in which case the returned vector is one of many.
    pub simple: bool,
}

pub fn principal_eigenvector(g: &Graph) -> Result<PrincipalEigenvector, SpectraError> {
    let spec = eigen_decompose(&seidel_matrix(g))?;
    Ok(PrincipalEigenvector {
        eigenvalue: spec.index(),
        vector: spec.eigenvectors[0].clone(),
        simple: spec.index_multiplicity() == 1,
    })
}

/// Seidel switching with respect to the vertex set `u`: edges inside `u` and
/// outside `u` are untouched, cross edges are complemented.
pub fn switch(g: &Graph, u: &[usize]) -> Result<Graph, SpectraError> {
    let n = g.order();
    let mut in_u = vec![false; n];
    for &v in u {
        if v >= n {
            return Err(GraphError::VertexOutOfRange { v, n }.into());
        }
        in_u[v] = true;
    }
    let mut h = g.clone();
    for i in 0..n {
        for j in (i + 1)..n {
            if in_u[i] != in_u[j] {
                h.set_edge(i, j, !g.has_edge(i, j));
            }
        }
    }
    Ok(h)
}

/// The quadratic form `x S(g) x^T`, computed directly from the edge set
/// (no eigendecomposition).
pub fn quadratic_form(g: &Graph, x: &[f64]) -> Result<f64, SpectraError> {
    let n = g.order();
    if x.len() != n {
        return Err(SpectraError::LengthMismatch {
            expected: n,
            got: x.len(),
        });
    }
    let mut sum = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            let s = if g.has_edge(i, j) { -1.0 } else { 1.0 };
            sum += 2.0 * s * x[i] * x[j];
        }
    }
    Ok(sum)
}

/// Number of pairs `{i, j}` with `s_ij * x_i * x_j < 0`. Equals
/// `|E(K_{P,Q}) symmetric-difference E(g)|` where `P`, `Q` collect the
/// positive and negative components of `x`.
pub fn negative_term_count(g: &Graph, x: &[f64]) -> Result<usize, SpectraError> {
    let n = g.order();
    if x.len() != n {
        return Err(SpectraError::LengthMismatch {
            expected: n,
            got: x.len(),
        });
    }
    if let Some(i) = x.iter().position(|&xi| xi.abs() <= ZERO_COMPONENT_TOL) {
        return Err(SpectraError::ZeroComponent { index: i });
    }
    let mut count = 0;
    for i in 0..n {
        for j in (i + 1)..n {
            let product_positive = (x[i] > 0.0) == (x[j] > 0.0);
            // s_ij = -1 on edges: the term is negative exactly when the edge
            // status disagrees with the sign of x_i * x_j.
            if g.has_edge(i, j) == product_positive {
                count += 1;
            }
        }
    }
    Ok(count)
}
