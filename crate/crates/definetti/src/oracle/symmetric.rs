//! Dense symmetric-subspace oracle. Basis vectors are built by expanding
//! type classes letter by letter; nothing here uses the closed forms.

use std::collections::HashMap;

use definetti_core::symmetric::SymTriple;
use definetti_core::Weight;
use itertools::Itertools;
use num_complex::Complex64;

use crate::dense::{kron_vec, CMatrix, CVector, DenseOperator};
use crate::{Error, Result};

/// Largest `d^n` the dense oracles will touch.
pub const PRODUCT_DIM_GUARD: u64 = 1_000_000;

/// Orthonormal basis of `Sym^n(C^d)` inside `(C^d)^{⊗n}`, one vector per
/// weight. Letter `0` plays the role of `|1⟩`.
#[derive(Debug, Clone)]
pub struct SymBasis {
    pub n: u64,
    pub d: usize,
    pub weights: Vec<Weight>,
    pub vectors: Vec<CVector>,
}

impl SymBasis {
    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn product_dim(&self) -> usize {
        self.d.pow(self.n as u32)
    }

    pub fn labels(&self) -> Vec<String> {
        self.weights.iter().map(|w| format!("|{w}>")).collect()
    }

    /// `Σ_w |w⟩⟨w|` on the full tensor product.
    pub fn projector(&self) -> DenseOperator {
        let dim = self.product_dim();
        let labels = (0..dim).map(|i| product_label(i, self.n, self.d)).collect();
        DenseOperator::from_vectors(&self.vectors, labels).expect("basis vectors have product length")
    }
}

pub(crate) fn product_dim(n: u64, d: usize) -> Result<usize> {
    let dim = (d as u64).checked_pow(n as u32).filter(|&x| x <= PRODUCT_DIM_GUARD);
    dim.map(|x| x as usize).ok_or_else(|| {
        Error::SizeGuard(format!("d^n = {d}^{n} exceeds {PRODUCT_DIM_GUARD}"))
    })
}

/// Letters of product basis index `idx`, first tensor factor first.
pub fn letters(mut idx: usize, n: u64, d: usize) -> Vec<usize> {
    let mut out = vec![0; n as usize];
    for slot in out.iter_mut().rev() {
        *slot = idx % d;
        idx /= d;
    }
    out
}

pub fn product_label(idx: usize, n: u64, d: usize) -> String {
    let body: String = letters(idx, n, d).iter().map(|l| (l + 1).to_string()).join(",");
    format!("|{body}>")
}

pub fn sym_basis(n: u64, d: usize) -> Result<SymBasis> {
    if d < 2 {
        return Err(Error::Invalid(format!("local dimension must be >= 2, got {d}")));
    }
    let dim = product_dim(n, d)?;
    let mut index: HashMap<Vec<i64>, usize> = HashMap::new();
    let mut weights = Vec::new();
    let mut members: Vec<Vec<usize>> = Vec::new();
    for idx in 0..dim {
        let mut counts = vec![0i64; d];
        for l in letters(idx, n, d) {
            counts[l] += 1;
        }
        let slot = *index.entry(counts.clone()).or_insert_with(|| {
            weights.push(Weight::new(counts).expect("d >= 2"));
            members.push(Vec::new());
            weights.len() - 1
        });
        members[slot].push(idx);
    }
    // highest weight first, matching the closed-form enumeration order
    let mut order: Vec<usize> = (0..weights.len()).collect();
    order.sort_by(|&a, &b| weights[b].entries().cmp(weights[a].entries()));
    let vectors = order
        .iter()
        .map(|&slot| {
            let amp = Complex64::new(1.0 / (members[slot].len() as f64).sqrt(), 0.0);
            let mut v = CVector::zeros(dim);
            for &i in &members[slot] {
                v[i] = amp;
            }
            v
        })
        .collect();
    let weights = order.iter().map(|&slot| weights[slot].clone()).collect();
    Ok(SymBasis {
        n,
        d,
        weights,
        vectors,
    })
}

/// `(1/n!) Σ_π π` built from explicit permutations of tensor factors.
pub fn permutation_average_projector(n: u64, d: usize) -> Result<DenseOperator> {
    let dim = product_dim(n, d)?;
    if n > 8 {
        return Err(Error::SizeGuard(format!("n! permutations for n = {n}")));
    }
    let mut matrix = CMatrix::zeros(dim, dim);
    let mut count = 0usize;
    for perm in (0..n as usize).permutations(n as usize) {
        count += 1;
        for idx in 0..dim {
            let ls = letters(idx, n, d);
            let target = perm.iter().fold(0usize, |acc, &p| acc * d + ls[p]);
            matrix[(target, idx)] += Complex64::new(1.0, 0.0);
        }
    }
    matrix /= Complex64::new(count as f64, 0.0);
    let labels = (0..dim).map(|i| product_label(i, n, d)).collect();
    DenseOperator::new(matrix, labels)
}

/// `|1⟩^{⊗m}` in `(C^d)^{⊗m}`.
pub fn first_letter_power(m: u64, d: usize) -> Result<CVector> {
    let dim = product_dim(m, d)?;
    let mut v = CVector::zeros(dim);
    v[0] = Complex64::new(1.0, 0.0);
    Ok(v)
}

/// `|⟨c|x ⊗ ψ⟩|²` for every `c` in the `Sym^n` basis and `x` in the
/// `Sym^k` basis, `ψ = |1⟩^{⊗(n-k)}`. Rows follow `c`, columns `x`.
fn overlap_table(n: u64, k: u64, d: usize) -> Result<(SymBasis, SymBasis, Vec<Vec<f64>>)> {
    let big = sym_basis(n, d)?;
    let small = sym_basis(k, d)?;
    let psi = first_letter_power(n - k, d)?;
    let embedded: Vec<CVector> = small.vectors.iter().map(|x| kron_vec(x, &psi)).collect();
    let table = big
        .vectors
        .iter()
        .map(|c| embedded.iter().map(|v| c.dotc(v).norm_sqr()).collect())
        .collect();
    Ok((big, small, table))
}

fn check_triple(n: u64, k: u64, d: usize) -> Result<()> {
    if k > n || d < 2 {
        return Err(Error::Invalid(format!("need k <= n and d >= 2, got n={n} k={k} d={d}")));
    }
    Ok(())
}

/// `δ_ψ(W^r)` for every `r = 0..=k`, from one overlap table.
pub fn brute_delta_symmetric_curve(n: u64, k: u64, d: usize) -> Result<Vec<f64>> {
    check_triple(n, k, d)?;
    let (big, small, table) = overlap_table(n, k, d)?;
    let d_b = sym_basis(n - k, d)?.len() as f64;
    let d_c = big.len() as f64;
    Ok((0..=k)
        .map(|r| {
            let threshold = k as i64 - r as i64;
            let trace: f64 = small
                .weights
                .iter()
                .enumerate()
                .filter(|(_, w)| w.entries()[0] >= threshold)
                .map(|(col, _)| table.iter().map(|row| row[col]).sum::<f64>())
                .sum();
            d_b / d_c * trace
        })
        .collect())
}

/// `(d_B/d_C)·tr[P_C (P_X ⊗ |ψ⟩⟨ψ|)]` with `X` spanned by the `Sym^k`
/// basis vectors with `w_1 ≥ k - r`.
pub fn brute_delta_symmetric(t: &SymTriple) -> Result<f64> {
    let curve = brute_delta_symmetric_curve(t.n(), t.k(), t.d() as usize)?;
    Ok(curve[t.r() as usize])
}

/// Dense `tr(P_Sym (|w⟩⟨w| ⊗ |1⟩⟨1|^{⊗(n-k)}))` for each weight `w` of
/// `Sym^k`, in basis order.
pub fn brute_term_overlaps(n: u64, k: u64, d: usize) -> Result<Vec<(Weight, f64)>> {
    check_triple(n, k, d)?;
    let (_, small, table) = overlap_table(n, k, d)?;
    Ok(small
        .weights
        .iter()
        .enumerate()
        .map(|(col, w)| (w.clone(), table.iter().map(|row| row[col]).sum()))
        .collect())
}
