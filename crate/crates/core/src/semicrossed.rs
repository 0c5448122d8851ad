//! Crossed products `C(X) ⋊_φ ℤ` of a finite set by a permutation.
//!
//! Elements are finite Laurent sums `Σ_k U^k f_k` subject to
//! `U⁻¹ f U = f ∘ φ`. Every point of a finite system is periodic, so every
//! point has non-trivial isotropy and the evaluation state at `x₀` has a
//! second extension `φ₀ = ρ₀ + ½(φ + φ*)` built from the witness `U^p`.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::DynamicsError;
use crate::groupoid::{PointId, UnitSpace};
use crate::linalg::CMatrix;
use crate::tolerance::PRUNE;

/// Initial size of the circle grid used by [`CrossedElement::norm`].
pub const NORM_GRID_START: usize = 4096;
/// Hard cap on the circle grid.
pub const NORM_GRID_CAP: usize = 1 << 20;
/// Refinement stops once successive grid maxima differ by less than this.
pub const NORM_GRID_TOL: f64 = 1e-8;

/// A finite set with a permutation `φ`.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteDynamicalSystem {
    units: UnitSpace,
    forward: Vec<usize>,
    backward: Vec<usize>,
}

impl FiniteDynamicalSystem {
    /// `images[i]` names `φ(points[i])`.
    pub fn new<S: AsRef<str>>(points: &[S], images: &[S]) -> Result<Self, DynamicsError> {
        if points.is_empty() {
            return Err(DynamicsError::Empty);
        }
        let units = UnitSpace::new(points.iter().map(|s| s.as_ref().to_string())).map_err(|e| match e {
            crate::error::GroupoidError::DuplicatePoint(name) => DynamicsError::DuplicatePoint(name),
            _ => DynamicsError::Empty,
        })?;
        if images.len() != points.len() {
            return Err(DynamicsError::WrongLength {
                expected: points.len(),
                got: images.len(),
            });
        }
        let forward = images
            .iter()
            .map(|name| {
                units
                    .lookup(name.as_ref())
                    .map(|p| p.0)
                    .map_err(|_| DynamicsError::UnknownPoint(name.as_ref().to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_indices(units, forward)
    }

    fn from_indices(units: UnitSpace, forward: Vec<usize>) -> Result<Self, DynamicsError> {
        let mut backward = vec![usize::MAX; forward.len()];
        for (i, &j) in forward.iter().enumerate() {
            if backward[j] != usize::MAX {
                return Err(DynamicsError::NotBijective(units.name(PointId(j)).to_string()));
            }
            backward[j] = i;
        }
        Ok(FiniteDynamicalSystem {
            units,
            forward,
            backward,
        })
    }

    /// Points `1..=size` and a permutation in cycle notation: `"1 2 3"` or
    /// `"(1 2)(3 4)"`. Points not mentioned are fixed.
    pub fn from_cycles(size: usize, cycles: &str) -> Result<Self, DynamicsError> {
        if size == 0 {
            return Err(DynamicsError::Empty);
        }
        let units = UnitSpace::new((1..=size).map(|i| i.to_string())).expect("distinct names");
        let mut forward: Vec<usize> = (0..size).collect();
        let mut seen = vec![false; size];
        let text = cycles.trim();
        let groups: Vec<&str> = if text.contains('(') {
            let mut out = Vec::new();
            let mut rest = text;
            while !rest.is_empty() {
                let body = rest
                    .strip_prefix('(')
                    .ok_or_else(|| DynamicsError::BadCycle(format!("expected '(' at {rest:?}")))?;
                let end = body
                    .find(')')
                    .ok_or_else(|| DynamicsError::BadCycle("unclosed '('".to_string()))?;
                out.push(&body[..end]);
                rest = body[end + 1..].trim_start();
            }
            out
        } else {
            vec![text]
        };
        for group in groups {
            let members = group
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| {
                    units
                        .lookup(t)
                        .map(|p| p.0)
                        .map_err(|_| DynamicsError::UnknownPoint(t.to_string()))
                })
                .collect::<Result<Vec<_>, _>>()?;
            for (i, &m) in members.iter().enumerate() {
                if std::mem::replace(&mut seen[m], true) {
                    return Err(DynamicsError::BadCycle(format!("point {} appears twice", m + 1)));
                }
                forward[m] = members[(i + 1) % members.len()];
            }
        }
        Self::from_indices(units, forward)
    }

    pub fn units(&self) -> &UnitSpace {
        &self.units
    }

    pub fn len(&self) -> usize {
        self.forward.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forward.is_empty()
    }

    pub fn phi(&self, x: PointId) -> PointId {
        PointId(self.forward[x.0])
    }

    /// `φ^k(x)` for any integer `k`.
    pub fn phi_pow(&self, x: PointId, k: i64) -> PointId {
        let p = self.period(x) as i64;
        let steps = k.rem_euclid(p);
        (0..steps).fold(x, |y, _| self.phi(y))
    }

    /// Images `φ(x)` in point order.
    pub fn images(&self) -> &[usize] {
        &self.forward
    }

    pub fn phi_inverse(&self, x: PointId) -> PointId {
        PointId(self.backward[x.0])
    }

    /// Least `p ≥ 1` with `φ^p(x) = x`.
    pub fn period(&self, x: PointId) -> usize {
        self.orbit(x).len()
    }

    /// `x, φ(x), φ²(x), …` up to the period.
    pub fn orbit(&self, x: PointId) -> Vec<PointId> {
        let mut out = vec![x];
        let mut y = self.phi(x);
        while y != x {
            out.push(y);
            y = self.phi(y);
        }
        out
    }

    /// One orbit per cycle, each starting at its least point.
    pub fn orbits(&self) -> Vec<Vec<PointId>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for i in 0..self.len() {
            if !seen[i] {
                let orbit = self.orbit(PointId(i));
                for y in &orbit {
                    seen[y.0] = true;
                }
                out.push(orbit);
            }
        }
        out
    }

    pub fn point(&self, name: &str) -> Result<PointId, DynamicsError> {
        self.units.lookup(name).map_err(|_| DynamicsError::UnknownPoint(name.to_string()))
    }

    /// Nonzero powers `k` whose arrow `(x, k, x)` is isotropy; the minimal
    /// positive one, the period, is reported.
    pub fn isotropy_witnesses(&self, x: PointId) -> Vec<i64> {
        vec![self.period(x) as i64]
    }

    /// Evaluation at `x` extends uniquely iff `x` has trivial isotropy, which
    /// never happens for a finite system.
    pub fn unique_extension(&self, x: PointId) -> ExtensionVerdict {
        let witnesses = self.isotropy_witnesses(x);
        ExtensionVerdict {
            point: x,
            unique: witnesses.is_empty(),
            second_state: witnesses.first().map(|&p| CrossedState {
                base_point: x,
                kind: StateKind::Phi0,
                witness_power: p,
            }),
        }
    }
}

/// `Σ_k U^k f_k` with finitely many nonzero `f_k`.
#[derive(Clone)]
pub struct CrossedElement {
    system: Arc<FiniteDynamicalSystem>,
    fourier: BTreeMap<i64, Vec<Complex64>>,
}

fn same_system(a: &Arc<FiniteDynamicalSystem>, b: &Arc<FiniteDynamicalSystem>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl CrossedElement {
    fn build(system: &Arc<FiniteDynamicalSystem>, fourier: BTreeMap<i64, Vec<Complex64>>) -> Self {
        let fourier = fourier
            .into_iter()
            .filter(|(_, f)| f.iter().any(|z| z.norm() > PRUNE))
            .collect();
        CrossedElement {
            system: Arc::clone(system),
            fourier,
        }
    }

    pub fn zero(system: &Arc<FiniteDynamicalSystem>) -> Self {
        Self::build(system, BTreeMap::new())
    }

    pub fn one(system: &Arc<FiniteDynamicalSystem>) -> Self {
        Self::u_power(system, 0)
    }

    /// `U^k`.
    pub fn u_power(system: &Arc<FiniteDynamicalSystem>, k: i64) -> Self {
        Self::monomial(system, k, vec![Complex64::new(1.0, 0.0); system.len()])
            .expect("length matches the system")
    }

    /// `U^k f`.
    pub fn monomial(system: &Arc<FiniteDynamicalSystem>, k: i64, f: Vec<Complex64>) -> Result<Self, DynamicsError> {
        Self::from_fourier(system, [(k, f)])
    }

    /// `U⁰ f`, an element of `C(X)`.
    pub fn function(system: &Arc<FiniteDynamicalSystem>, f: Vec<Complex64>) -> Result<Self, DynamicsError> {
        Self::monomial(system, 0, f)
    }

    pub fn from_fourier(
        system: &Arc<FiniteDynamicalSystem>,
        terms: impl IntoIterator<Item = (i64, Vec<Complex64>)>,
    ) -> Result<Self, DynamicsError> {
        let n = system.len();
        let mut fourier: BTreeMap<i64, Vec<Complex64>> = BTreeMap::new();
        for (k, f) in terms {
            if f.len() != n {
                return Err(DynamicsError::WrongLength {
                    expected: n,
                    got: f.len(),
                });
            }
            let slot = fourier.entry(k).or_insert_with(|| vec![Complex64::new(0.0, 0.0); n]);
            for (s, v) in slot.iter_mut().zip(f) {
                *s += v;
            }
        }
        Ok(Self::build(system, fourier))
    }

    pub fn system(&self) -> &Arc<FiniteDynamicalSystem> {
        &self.system
    }

    pub fn fourier(&self) -> &BTreeMap<i64, Vec<Complex64>> {
        &self.fourier
    }

    /// `f_k`, zero when absent.
    pub fn coefficient(&self, k: i64) -> Vec<Complex64> {
        self.fourier
            .get(&k)
            .cloned()
            .unwrap_or_else(|| vec![Complex64::new(0.0, 0.0); self.system.len()])
    }

    pub fn coefficient_at(&self, k: i64, x: PointId) -> Complex64 {
        self.fourier.get(&k).map_or(Complex64::new(0.0, 0.0), |f| f[x.0])
    }

    /// Largest `|k|` with `f_k ≠ 0`.
    pub fn degree(&self) -> u64 {
        self.fourier.keys().map(|k| k.unsigned_abs()).max().unwrap_or(0)
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        let keys: std::collections::BTreeSet<i64> = self.fourier.keys().chain(other.fourier.keys()).copied().collect();
        keys.into_iter().all(|k| {
            let a = self.coefficient(k);
            let b = other.coefficient(k);
            a.iter().zip(&b).all(|(x, y)| (x - y).norm() <= tol)
        })
    }

    pub fn scale(&self, c: Complex64) -> Self {
        let fourier = self
            .fourier
            .iter()
            .map(|(&k, f)| (k, f.iter().map(|v| v * c).collect()))
            .collect();
        Self::build(&self.system, fourier)
    }

    pub fn add(&self, other: &Self) -> Result<Self, DynamicsError> {
        if !same_system(&self.system, &other.system) {
            return Err(DynamicsError::SystemMismatch);
        }
        Self::from_fourier(
            &self.system,
            self.fourier.iter().chain(&other.fourier).map(|(&k, f)| (k, f.clone())),
        )
    }

    /// `(U^k f)(U^m g) = U^{k+m} (f ∘ φ^m) g`.
    pub fn multiply(&self, other: &Self) -> Result<Self, DynamicsError> {
        if !same_system(&self.system, &other.system) {
            return Err(DynamicsError::SystemMismatch);
        }
        let sys = &self.system;
        let n = sys.len();
        let mut out: BTreeMap<i64, Vec<Complex64>> = BTreeMap::new();
        for (&m, g) in &other.fourier {
            let shift: Vec<usize> = (0..n).map(|x| sys.phi_pow(PointId(x), m).0).collect();
            for (&k, f) in &self.fourier {
                let slot = out.entry(k + m).or_insert_with(|| vec![Complex64::new(0.0, 0.0); n]);
                for x in 0..n {
                    slot[x] += f[shift[x]] * g[x];
                }
            }
        }
        Ok(Self::build(sys, out))
    }

    /// `(U^k f)* = U^{-k} (f̄ ∘ φ^{-k})`.
    pub fn involute(&self) -> Self {
        let sys = &self.system;
        let fourier = self
            .fourier
            .iter()
            .map(|(&k, f)| {
                let g = (0..sys.len()).map(|x| f[sys.phi_pow(PointId(x), -k).0].conj()).collect();
                (-k, g)
            })
            .collect();
        Self::build(sys, fourier)
    }

    /// The zeroth Fourier coefficient `f₀`.
    pub fn expect(&self) -> Vec<Complex64> {
        self.coefficient(0)
    }

    /// The representation `π_{x,z}` on `ℓ²` of the orbit of `x`: basis
    /// `δ_j = δ_{φ^j x}`, `U δ_j = δ_{j+1}` with the last vector wrapping to
    /// `z δ_0`, and `f` acting as `diag(f(φ^j x))`.
    pub fn pi(&self, x: PointId, z: Complex64) -> CMatrix {
        let orbit = self.system.orbit(x);
        let p = orbit.len() as i64;
        let mut m = CMatrix::zeros(orbit.len(), orbit.len());
        for (&k, f) in &self.fourier {
            for (j, &y) in orbit.iter().enumerate() {
                let target = j as i64 + k;
                let wraps = target.div_euclid(p);
                let phase = z.powi(wraps as i32);
                m[(target.rem_euclid(p) as usize, j)] += phase * f[y.0];
            }
        }
        m
    }

    /// `max_orbit sup_{|z|=1} ‖π_{x,z}(a)‖`, on a doubling grid of the circle.
    pub fn norm(&self) -> f64 {
        self.system
            .orbits()
            .iter()
            .map(|orbit| self.orbit_norm(orbit[0]))
            .fold(0.0, f64::max)
    }

    fn orbit_norm(&self, x: PointId) -> f64 {
        let at = |t: usize, n: usize| {
            let theta = 2.0 * PI * t as f64 / n as f64;
            self.pi(x, Complex64::from_polar(1.0, theta)).spectral_norm()
        };
        let mut n = NORM_GRID_START;
        let mut best = (0..n).map(|t| at(t, n)).fold(0.0, f64::max);
        while n < NORM_GRID_CAP {
            let refined = (0..n).map(|t| at(2 * t + 1, 2 * n)).fold(best, f64::max);
            n *= 2;
            let settled = (refined - best).abs() < NORM_GRID_TOL;
            best = refined;
            if settled {
                break;
            }
        }
        best
    }
}

impl std::fmt::Debug for CrossedElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_map().entries(self.fourier.iter()).finish()
    }
}

/// `ρ₀(a) = f₀(x₀)`.
pub fn rho0(a: &CrossedElement, x0: PointId) -> Complex64 {
    a.coefficient_at(0, x0)
}

/// `φ(a) = f_p(x₀)` with `p` the period of `x₀`: the coefficient of `a` at
/// the isotropy arrow `(x₀, p, x₀)` picked out by the witness `U^p`.
pub fn phi_functional(a: &CrossedElement, x0: PointId) -> Complex64 {
    a.coefficient_at(a.system().period(x0) as i64, x0)
}

/// `φ*(a) = conj(φ(a*))`, which is `f_{-p}(x₀)`.
pub fn phi_star(a: &CrossedElement, x0: PointId) -> Complex64 {
    phi_functional(&a.involute(), x0).conj()
}

/// `φ₀ = ρ₀ + ½(φ + φ*)`.
pub fn phi0_state(a: &CrossedElement, x0: PointId) -> Complex64 {
    rho0(a, x0) + 0.5 * (phi_functional(a, x0) + phi_star(a, x0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StateKind {
    Rho0,
    Phi0,
}

/// A state of the crossed product extending evaluation at `base_point`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CrossedState {
    pub base_point: PointId,
    pub kind: StateKind,
    /// Period of the base point; only meaningful for `Phi0`.
    pub witness_power: i64,
}

impl CrossedState {
    pub fn evaluate(&self, a: &CrossedElement) -> Complex64 {
        match self.kind {
            StateKind::Rho0 => rho0(a, self.base_point),
            StateKind::Phi0 => phi0_state(a, self.base_point),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionVerdict {
    pub point: PointId,
    pub unique: bool,
    /// An extension different from `ρ₀`, when one exists.
    pub second_state: Option<CrossedState>,
}
