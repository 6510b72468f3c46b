//! One-dimensional Gauss rules.
//!
//! Nodes and weights come from the Golub–Welsch eigenproblem on the Jacobi
//! matrix of the three-term recurrence for weight `(1+x)^β` on `[-1, 1]`.
//! `β = 0` is Gauss–Legendre; `β = 1, 2` absorb the `r` and `r²` Jacobians of
//! polar and spherical radii.

use nalgebra::{DMatrix, SymmetricEigen};

/// Nodes and weights on `[-1, 1]`, nodes ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussRule {
    pub fn legendre(n: usize) -> Self {
        Self::jacobi_beta(n, 0)
    }

    /// Rule for `∫_{-1}^{1} f(x) (1+x)^β dx`, exact for polynomials of degree `2n-1`.
    pub fn jacobi_beta(n: usize, beta: u32) -> Self {
        assert!(n >= 1, "a Gauss rule needs at least one node");
        let b = beta as f64;
        // μ0 = ∫ (1+x)^β dx = 2^{β+1}/(β+1)
        let mu0 = 2f64.powi(beta as i32 + 1) / (b + 1.0);
        let mut jac = DMatrix::<f64>::zeros(n, n);
        for k in 0..n {
            let kf = k as f64;
            let s = 2.0 * kf + b;
            let diag = if k == 0 { b / (b + 2.0) } else { b * b / (s * (s + 2.0)) };
            jac[(k, k)] = diag;
            if k + 1 < n {
                let j = kf + 1.0;
                let s = 2.0 * j + b;
                let off2 = 4.0 * j * j * (j + b) * (j + b) / (s * s * (s + 1.0) * (s - 1.0));
                let off = off2.sqrt();
                jac[(k, k + 1)] = off;
                jac[(k + 1, k)] = off;
            }
        }
        let eig = SymmetricEigen::new(jac);
        let mut pairs: Vec<(f64, f64)> = (0..n)
            .map(|i| {
                let v0 = eig.eigenvectors[(0, i)];
                (eig.eigenvalues[i], mu0 * v0 * v0)
            })
            .collect();
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        Self {
            nodes: pairs.iter().map(|p| p.0).collect(),
            weights: pairs.iter().map(|p| p.1).collect(),
        }
    }

    /// Map onto `[a, b]`. For `β > 0` the `(1+x)^β` Jacobian rescales by
    /// `((b-a)/2)^{β+1}`, giving a rule for `∫_a^b f(r) (r-a)^β dr`.
    pub fn mapped(&self, a: f64, b: f64, beta: u32) -> (Vec<f64>, Vec<f64>) {
        let half = 0.5 * (b - a);
        let scale = half.powi(beta as i32 + 1);
        let nodes = self.nodes.iter().map(|x| a + half * (x + 1.0)).collect();
        let weights = self.weights.iter().map(|w| w * scale).collect();
        (nodes, weights)
    }
}
