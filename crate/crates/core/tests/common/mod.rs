//! Independent reference computations for the integration tests.
//!
//! Everything here is built from the raw arrow set and cocycle table with
//! dense `nalgebra` matrices; none of it calls the crate's convolution,
//! involution or spectral routines.

#![allow(dead_code)]

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::sync::Arc;

use cartan_core::spec_file::{self, Model};
use cartan_core::{AlgebraElement, Arrow, CMatrix, FiniteTwistedGroupoid, PointId};
use nalgebra::DMatrix;
use num_complex::Complex64;

pub type Dense = DMatrix<Complex64>;

pub const CORPUS: [&str; 11] = [
    "taf2",
    "taf3",
    "taf4",
    "taf6",
    "graph_edge",
    "graph_tree",
    "graph_diamond",
    "twisted4",
    "diamond4",
    "two_block",
    "semicrossed3",
];

pub fn fixtures_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

pub fn load(name: &str) -> Model {
    let path = fixtures_dir().join(format!("{name}.toml"));
    spec_file::load(&path)
        .unwrap_or_else(|e| panic!("cannot read {}: {e}", path.display()))
        .unwrap_or_else(|e| panic!("cannot load {name}: {e}"))
}

pub fn groupoid(name: &str) -> Arc<FiniteTwistedGroupoid> {
    load(name).groupoid
}

/// Left regular representation on l2 of all arrows, from the defining
/// formula `λ(a) δ_β = Σ_α σ(α, β) a(α) δ_{αβ}`.
pub struct RegularModel {
    pub groupoid: Arc<FiniteTwistedGroupoid>,
    pub arrows: Vec<Arrow>,
    pub index: BTreeMap<Arrow, usize>,
}

impl RegularModel {
    pub fn new(g: &Arc<FiniteTwistedGroupoid>) -> Self {
        let arrows: Vec<Arrow> = g.arrows().iter().copied().collect();
        let index = arrows.iter().enumerate().map(|(i, a)| (*a, i)).collect();
        RegularModel {
            groupoid: Arc::clone(g),
            arrows,
            index,
        }
    }

    fn sigma(&self, a: Arrow, b: Arrow) -> Complex64 {
        self.groupoid
            .cocycle_table()
            .get(&(a, b))
            .copied()
            .unwrap_or(Complex64::new(1.0, 0.0))
    }

    pub fn matrix(&self, a: &AlgebraElement) -> Dense {
        let n = self.arrows.len();
        let mut m = Dense::zeros(n, n);
        for (&alpha, &value) in a.coeffs() {
            for &beta in &self.arrows {
                if beta.range == alpha.source {
                    let gamma = Arrow::new(alpha.range, beta.source);
                    m[(self.index[&gamma], self.index[&beta])] += self.sigma(alpha, beta) * value;
                }
            }
        }
        m
    }

    /// Reads an element back from its action on the unit vectors, using
    /// `λ(a) δ_{s(γ)} = a(γ) δ_γ` up to the normalized cocycle.
    pub fn element(&self, m: &Dense) -> AlgebraElement {
        let coeffs = self.arrows.iter().map(|&gamma| {
            let unit = Arrow::unit(gamma.source);
            (gamma, m[(self.index[&gamma], self.index[&unit])])
        });
        AlgebraElement::from_coeffs(&self.groupoid, coeffs).unwrap()
    }

    pub fn norm(&self, a: &AlgebraElement) -> f64 {
        spectral_norm(&self.matrix(a))
    }

    pub fn unit_vector(&self, x: PointId) -> nalgebra::DVector<Complex64> {
        let mut v = nalgebra::DVector::zeros(self.arrows.len());
        v[self.index[&Arrow::unit(x)]] = Complex64::new(1.0, 0.0);
        v
    }
}

pub fn spectral_norm(m: &Dense) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    m.clone().svd(false, false).singular_values.max()
}

pub fn to_dense(m: &CMatrix) -> Dense {
    Dense::from_fn(m.rows(), m.cols(), |i, j| m[(i, j)])
}

pub fn max_abs(m: &Dense) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// The GNS construction for `ρ₀(a) = ⟨λ(a) δ_{x₀}, δ_{x₀}⟩` done by brute
/// force: the classes of all arrow indicators, Gram–Schmidt with the null
/// space discarded, then left multiplication in the resulting basis.
pub struct GnsOracle {
    pub model: RegularModel,
    pub base_point: PointId,
    /// Orthonormal basis of the GNS space, as vectors in l2 of the arrows.
    pub basis: Vec<nalgebra::DVector<Complex64>>,
}

impl GnsOracle {
    pub fn new(g: &Arc<FiniteTwistedGroupoid>, base_point: PointId) -> Self {
        let model = RegularModel::new(g);
        let xi = model.unit_vector(base_point);
        let mut basis: Vec<nalgebra::DVector<Complex64>> = Vec::new();
        for &gamma in &model.arrows {
            let e = AlgebraElement::basis(g, gamma).unwrap();
            let mut v = &model.matrix(&e) * &xi;
            for q in &basis {
                let c = q.dotc(&v);
                v -= q * c;
            }
            let norm = v.norm();
            if norm > 1e-9 {
                basis.push(v / Complex64::new(norm, 0.0));
            }
        }
        GnsOracle {
            model,
            base_point,
            basis,
        }
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn matrix(&self, a: &AlgebraElement) -> Dense {
        let la = self.model.matrix(a);
        let k = self.basis.len();
        Dense::from_fn(k, k, |i, j| self.basis[i].dotc(&(&la * &self.basis[j])))
    }

    /// Coordinates of the class of `b`, i.e. of `λ(b) δ_{x₀}`.
    pub fn vector(&self, b: &AlgebraElement) -> nalgebra::DVector<Complex64> {
        let v = &self.model.matrix(b) * &self.model.unit_vector(self.base_point);
        nalgebra::DVector::from_fn(self.basis.len(), |i, _| self.basis[i].dotc(&v))
    }
}

/// True when `w` has exactly one unimodular entry in each row and column.
pub fn is_monomial_unitary(w: &Dense, tol: f64) -> bool {
    let rows_ok = (0..w.nrows()).all(|i| {
        let big: Vec<f64> = w.row(i).iter().map(|z| z.norm()).filter(|n| *n > tol).collect();
        big.len() == 1 && (big[0] - 1.0).abs() <= tol
    });
    let cols_ok = (0..w.ncols()).all(|j| w.column(j).iter().filter(|z| z.norm() > tol).count() == 1);
    rows_ok && cols_ok
}

/// Transitive-reflexive closure of a relation on `0..n`, by repeated
/// squaring of the boolean adjacency matrix.
pub fn closure(n: usize, related: impl Fn(usize, usize) -> bool) -> Vec<Vec<bool>> {
    let mut r: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| i == j || related(i, j)).collect()).collect();
    loop {
        let next: Vec<Vec<bool>> = (0..n)
            .map(|i| (0..n).map(|j| (0..n).any(|k| r[i][k] && r[k][j])).collect())
            .collect();
        if next == r {
            return r;
        }
        r = next;
    }
}
