//! Dense complex operators over an explicitly labelled basis.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::{Error, Result};

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

/// A complex matrix together with labels for the basis it acts on.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseOperator {
    pub matrix: CMatrix,
    pub labels: Vec<String>,
}

impl DenseOperator {
    pub fn new(matrix: CMatrix, labels: Vec<String>) -> Result<Self> {
        if matrix.nrows() != labels.len() {
            return Err(Error::Invalid(format!(
                "{} labels for a matrix with {} rows",
                labels.len(),
                matrix.nrows()
            )));
        }
        Ok(DenseOperator { matrix, labels })
    }

    /// `Σ_v |v⟩⟨v|`; a projector when the vectors are orthonormal.
    pub fn from_vectors(vectors: &[CVector], labels: Vec<String>) -> Result<Self> {
        let dim = labels.len();
        let mut matrix = CMatrix::zeros(dim, dim);
        for v in vectors {
            if v.len() != dim {
                return Err(Error::Invalid(format!("vector of length {} in dimension {dim}", v.len())));
            }
            matrix += v * v.adjoint();
        }
        Ok(DenseOperator { matrix, labels })
    }

    pub fn identity(labels: Vec<String>) -> Self {
        let dim = labels.len();
        DenseOperator {
            matrix: CMatrix::identity(dim, dim),
            labels,
        }
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn trace(&self) -> Complex64 {
        self.matrix.trace()
    }

    pub fn adjoint(&self) -> Self {
        DenseOperator {
            matrix: self.matrix.adjoint(),
            labels: self.labels.clone(),
        }
    }

    pub fn kron(&self, other: &DenseOperator) -> Self {
        let labels = self
            .labels
            .iter()
            .flat_map(|a| other.labels.iter().map(move |b| format!("{a}{b}")))
            .collect();
        DenseOperator {
            matrix: self.matrix.kronecker(&other.matrix),
            labels,
        }
    }

    /// `‖P² - P‖_max` and `‖P - P†‖_max` both below `tol`.
    pub fn is_projector(&self, tol: f64) -> bool {
        let p = &self.matrix;
        max_abs(&(p * p - p)) <= tol && max_abs(&(p - p.adjoint())) <= tol
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        let u = &self.matrix;
        let id = CMatrix::identity(u.nrows(), u.ncols());
        max_abs(&(u.adjoint() * u - id)) <= tol
    }
}

pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// `½ tr|A - B|` for Hermitian `A`, `B`.
pub fn trace_distance(a: &CMatrix, b: &CMatrix) -> f64 {
    let diff = a - b;
    let hermitian = (&diff + diff.adjoint()) * Complex64::new(0.5, 0.0);
    let eig = hermitian.symmetric_eigenvalues();
    0.5 * eig.iter().map(|x| x.abs()).sum::<f64>()
}

/// `v ⊗ w` with the first factor most significant.
pub fn kron_vec(v: &CVector, w: &CVector) -> CVector {
    let mut out = CVector::zeros(v.len() * w.len());
    for (i, a) in v.iter().enumerate() {
        for (j, b) in w.iter().enumerate() {
            out[i * w.len() + j] = a * b;
        }
    }
    out
}

/// `tr_B` of `|Ψ⟩⟨Ψ|` for `Ψ ∈ C^{dim_a} ⊗ C^{dim_b}`.
pub fn partial_trace_second(psi: &CVector, dim_a: usize, dim_b: usize) -> CMatrix {
    assert_eq!(psi.len(), dim_a * dim_b);
    CMatrix::from_fn(dim_a, dim_a, |i, j| {
        (0..dim_b)
            .map(|k| psi[i * dim_b + k] * psi[j * dim_b + k].conj())
            .sum()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn trace_distance_of_orthogonal_pure_states_is_one() {
        let a = CMatrix::from_diagonal(&CVector::from_vec(vec![c(1.0), c(0.0)]));
        let b = CMatrix::from_diagonal(&CVector::from_vec(vec![c(0.0), c(1.0)]));
        assert!((trace_distance(&a, &b) - 1.0).abs() < 1e-14);
        assert!(trace_distance(&a, &a).abs() < 1e-14);
    }

    #[test]
    fn trace_distance_of_plus_and_zero() {
        let zero = CVector::from_vec(vec![c(1.0), c(0.0)]);
        let plus = CVector::from_vec(vec![c(1.0 / 2f64.sqrt()), c(1.0 / 2f64.sqrt())]);
        let d = trace_distance(&(&zero * zero.adjoint()), &(&plus * plus.adjoint()));
        // √(1 - |⟨0|+⟩|²)
        assert!((d - 0.5f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn projector_and_unitary_checks() {
        let labels = vec!["0".to_string(), "1".to_string()];
        let v = CVector::from_vec(vec![c(0.6), Complex64::new(0.0, 0.8)]);
        let p = DenseOperator::from_vectors(&[v], labels.clone()).unwrap();
        assert!(p.is_projector(1e-12));
        assert!((p.trace().re - 1.0).abs() < 1e-14);
        assert!(DenseOperator::identity(labels.clone()).is_unitary(1e-14));
        let not_p = DenseOperator::new(p.matrix.clone() * c(2.0), labels).unwrap();
        assert!(!not_p.is_projector(1e-12));
    }

    #[test]
    fn partial_trace_of_product_state() {
        let a = CVector::from_vec(vec![c(0.6), c(0.8)]);
        let b = CVector::from_vec(vec![c(0.0), c(1.0), c(0.0)]);
        let rho = partial_trace_second(&kron_vec(&a, &b), 2, 3);
        assert!(max_abs(&(rho - &a * a.adjoint())) < 1e-15);
    }
}
