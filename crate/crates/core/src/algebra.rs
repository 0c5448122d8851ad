//! The twisted groupoid C*-algebra of a finite groupoid.
//!
//! Elements are finitely supported functions on arrows. Products use the
//! twisted convolution
//!
//! ```text
//! (f * g)(γ) = Σ_{s(τ) = s(γ)} σ(γτ⁻¹, τ) f(γτ⁻¹) g(τ)
//! ```
//!
//! and the involution `f*(γ) = conj(σ(γ, γ⁻¹)) conj(f(γ⁻¹))`. Functions
//! supported on the units form the diagonal masa; the conditional expectation
//! is restriction to the units.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Sub};
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::AlgebraError;
use crate::groupoid::{Arrow, FiniteTwistedGroupoid, PartialBijection, PointId};
use crate::linalg::CMatrix;
use crate::tolerance::{ELEMENT_EQ, PRUNE};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// A finitely supported complex function on the arrows of a groupoid.
#[derive(Clone)]
pub struct AlgebraElement {
    groupoid: Arc<FiniteTwistedGroupoid>,
    coeffs: BTreeMap<Arrow, Complex64>,
}

pub(crate) fn same_groupoid(a: &Arc<FiniteTwistedGroupoid>, b: &Arc<FiniteTwistedGroupoid>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl AlgebraElement {
    pub fn zero(groupoid: &Arc<FiniteTwistedGroupoid>) -> Self {
        AlgebraElement {
            groupoid: Arc::clone(groupoid),
            coeffs: BTreeMap::new(),
        }
    }

    /// The unit of the algebra: the indicator of the unit space.
    pub fn identity(groupoid: &Arc<FiniteTwistedGroupoid>) -> Self {
        Self::diagonal(groupoid, |_| ONE)
    }

    /// The indicator `e_γ` of a single arrow.
    pub fn basis(groupoid: &Arc<FiniteTwistedGroupoid>, arrow: Arrow) -> Result<Self, AlgebraError> {
        Self::from_coeffs(groupoid, [(arrow, ONE)])
    }

    /// Builds an element from arrow coefficients; repeated arrows accumulate.
    pub fn from_coeffs(
        groupoid: &Arc<FiniteTwistedGroupoid>,
        coeffs: impl IntoIterator<Item = (Arrow, Complex64)>,
    ) -> Result<Self, AlgebraError> {
        let mut map = BTreeMap::new();
        for (a, c) in coeffs {
            if !groupoid.contains(&a) {
                return Err(AlgebraError::ArrowNotInGroupoid(a.to_string()));
            }
            *map.entry(a).or_insert(ZERO) += c;
        }
        Ok(Self::pruned(groupoid, map))
    }

    /// A function on the unit space, viewed as an element of the masa.
    pub fn diagonal(groupoid: &Arc<FiniteTwistedGroupoid>, f: impl Fn(PointId) -> Complex64) -> Self {
        let map = groupoid.units().points().map(|x| (Arrow::unit(x), f(x))).collect();
        Self::pruned(groupoid, map)
    }

    fn pruned(groupoid: &Arc<FiniteTwistedGroupoid>, mut coeffs: BTreeMap<Arrow, Complex64>) -> Self {
        coeffs.retain(|_, c| c.norm() >= PRUNE);
        AlgebraElement {
            groupoid: Arc::clone(groupoid),
            coeffs,
        }
    }

    pub fn groupoid(&self) -> &Arc<FiniteTwistedGroupoid> {
        &self.groupoid
    }

    /// Coefficient at an arrow (zero off the support).
    pub fn get(&self, a: Arrow) -> Complex64 {
        self.coeffs.get(&a).copied().unwrap_or(ZERO)
    }

    /// Value of the unit-space part at `x`.
    pub fn unit_value(&self, x: PointId) -> Complex64 {
        self.get(Arrow::unit(x))
    }

    pub fn coeffs(&self) -> &BTreeMap<Arrow, Complex64> {
        &self.coeffs
    }

    pub fn support(&self) -> impl Iterator<Item = Arrow> + '_ {
        self.coeffs.keys().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// True when supported on the unit space.
    pub fn is_diagonal(&self) -> bool {
        self.coeffs.keys().all(Arrow::is_unit)
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        if !same_groupoid(&self.groupoid, &other.groupoid) {
            return false;
        }
        let keys = self.coeffs.keys().chain(other.coeffs.keys());
        keys.into_iter().all(|a| (self.get(*a) - other.get(*a)).norm() <= tol)
    }

    /// Largest coefficient modulus.
    pub fn max_coeff(&self) -> f64 {
        self.coeffs.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    fn check_same(&self, other: &Self) -> Result<(), AlgebraError> {
        if same_groupoid(&self.groupoid, &other.groupoid) {
            Ok(())
        } else {
            Err(AlgebraError::GroupoidMismatch)
        }
    }

    pub fn scale(&self, c: Complex64) -> Self {
        let map = self.coeffs.iter().map(|(a, v)| (*a, v * c)).collect();
        Self::pruned(&self.groupoid, map)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_same(other)?;
        let mut map = self.coeffs.clone();
        for (a, v) in &other.coeffs {
            *map.entry(*a).or_insert(ZERO) += v;
        }
        Ok(Self::pruned(&self.groupoid, map))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.checked_add(&other.scale(-ONE))
    }

    /// Twisted convolution product.
    pub fn convolve(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_same(other)?;
        let g = &self.groupoid;
        let mut out: BTreeMap<Arrow, Complex64> = BTreeMap::new();
        for (&alpha, &fa) in &self.coeffs {
            // β ranges over the support of `other` with r(β) = s(α)
            let lo = Arrow::new(alpha.source, PointId(0));
            let hi = Arrow::new(alpha.source, PointId(usize::MAX));
            for (&beta, &gb) in other.coeffs.range(lo..=hi) {
                let gamma = Arrow::new(alpha.range, beta.source);
                *out.entry(gamma).or_insert(ZERO) += g.sigma(alpha, beta) * fa * gb;
            }
        }
        Ok(Self::pruned(g, out))
    }

    pub fn involute(&self) -> Self {
        let g = &self.groupoid;
        let map = self
            .coeffs
            .iter()
            .map(|(&a, &v)| {
                let inv = a.inverse();
                (inv, g.sigma(inv, a).conj() * v.conj())
            })
            .collect();
        Self::pruned(g, map)
    }

    /// Conditional expectation onto the diagonal: restriction to units.
    pub fn expect(&self) -> Self {
        let map = self
            .coeffs
            .iter()
            .filter(|(a, _)| a.is_unit())
            .map(|(a, v)| (*a, *v))
            .collect();
        Self::pruned(&self.groupoid, map)
    }

    /// Accepts the element as a normalizer of the diagonal iff its support is a
    /// bisection, returning the induced partial bijection of the unit space.
    pub fn as_normalizer(&self) -> Result<Normalizer, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::ZeroNormalizer);
        }
        let g = &self.groupoid;
        let action = PartialBijection::from_pairs(self.support().map(|a| (a.range, a.source))).map_err(
            |((r1, s1), (r2, s2))| AlgebraError::NotBisection {
                first: g.arrow_label(&Arrow::new(r1, s1)),
                second: g.arrow_label(&Arrow::new(r2, s2)),
            },
        )?;
        Ok(Normalizer {
            element: self.clone(),
            action,
        })
    }

    /// Checks `n* m n` and `n m n*` are diagonal for every unit indicator `m`,
    /// which span the masa. Independent of the bisection test.
    pub fn normalizes_diagonal(&self) -> bool {
        let g = &self.groupoid;
        let adj = self.involute();
        g.units().points().all(|x| {
            let delta = AlgebraElement::diagonal(g, |y| if y == x { ONE } else { ZERO });
            let left = adj.convolve(&delta).and_then(|t| t.convolve(self));
            let right = self.convolve(&delta).and_then(|t| t.convolve(&adj));
            matches!((left, right), (Ok(l), Ok(r)) if l.is_diagonal() && r.is_diagonal())
        })
    }

    /// Left regular representation on l2 of the arrows with source `y`,
    /// assembled column by column from products `a * e_τ`.
    pub fn regular_matrix(&self, y: PointId) -> CMatrix {
        let g = &self.groupoid;
        let fibre = g.arrows_from(y);
        let mut m = CMatrix::zeros(fibre.len(), fibre.len());
        for (j, &tau) in fibre.iter().enumerate() {
            let column = AlgebraElement::basis(g, tau)
                .and_then(|e| self.convolve(&e))
                .expect("fibre arrows belong to the groupoid");
            for (i, &rho) in fibre.iter().enumerate() {
                m[(i, j)] = column.get(rho);
            }
        }
        m
    }

    /// Reduced norm: the largest regular-representation norm over one
    /// representative per orbit (orbits in unit-space order).
    pub fn operator_norm(&self) -> f64 {
        self.groupoid
            .orbits()
            .iter()
            .map(|orbit| self.regular_matrix(orbit[0]).spectral_norm())
            .fold(0.0, f64::max)
    }
}

impl PartialEq for AlgebraElement {
    /// Support-wise comparison with a per-coefficient tolerance.
    fn eq(&self, other: &Self) -> bool {
        self.approx_eq(other, ELEMENT_EQ)
    }
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = f.debug_map();
        for (a, v) in &self.coeffs {
            m.entry(&self.groupoid.arrow_label(a), v);
        }
        m.finish()
    }
}

impl Add for &AlgebraElement {
    type Output = AlgebraElement;

    /// # Panics
    /// When the operands live over different groupoids.
    fn add(self, rhs: &AlgebraElement) -> AlgebraElement {
        self.checked_add(rhs).expect("groupoid mismatch")
    }
}

impl Sub for &AlgebraElement {
    type Output = AlgebraElement;

    fn sub(self, rhs: &AlgebraElement) -> AlgebraElement {
        self.checked_sub(rhs).expect("groupoid mismatch")
    }
}

impl Mul for &AlgebraElement {
    type Output = AlgebraElement;

    /// Convolution. Panics on a groupoid mismatch; use
    /// [`AlgebraElement::convolve`] for the fallible form.
    fn mul(self, rhs: &AlgebraElement) -> AlgebraElement {
        self.convolve(rhs).expect("groupoid mismatch")
    }
}

/// An element whose support is a bisection, with its Weyl partial bijection.
#[derive(Debug, Clone)]
pub struct Normalizer {
    element: AlgebraElement,
    action: PartialBijection,
}

impl Normalizer {
    pub fn element(&self) -> &AlgebraElement {
        &self.element
    }

    /// The partial bijection sending `s(γ)` to `r(γ)` along the support.
    pub fn action(&self) -> &PartialBijection {
        &self.action
    }

    /// `f ∘ α` on the domain of `α`, zero elsewhere.
    pub fn pullback(&self, f: &AlgebraElement) -> Result<AlgebraElement, AlgebraError> {
        if !f.is_diagonal() {
            return Err(AlgebraError::NotDiagonal);
        }
        self.element.check_same(f)?;
        Ok(AlgebraElement::diagonal(f.groupoid(), |x| {
            self.action.apply(x).map_or(ZERO, |y| f.unit_value(y))
        }))
    }

    /// Checks `f n = n (f ∘ α)` for `f` supported on units.
    pub fn weyl_covariance_check(&self, f: &AlgebraElement) -> Result<bool, AlgebraError> {
        let pulled = self.pullback(f)?;
        let lhs = f.convolve(&self.element)?;
        let rhs = self.element.convolve(&pulled)?;
        Ok(lhs.approx_eq(&rhs, ELEMENT_EQ))
    }
}
