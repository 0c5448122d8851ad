//! GNS representations at points of the unit space.
//!
//! For a point `x₀` with trivial isotropy the state `a ↦ E(a)(x₀)` is pure and
//! its GNS space has the orthonormal basis `[e_(y,x₀)]`, one vector per orbit
//! point `y`. In that basis
//!
//! ```text
//! π₀(a)[y', y] = σ((y', y), (y, x₀)) · a(y', y)
//! ```
//!
//! Diagonal elements act diagonally, so the invariant subspaces of the image
//! of a Dirichlet subalgebra are coordinate subspaces indexed by up-sets of
//! the order restricted to the orbit.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

use num_complex::Complex64;

use crate::algebra::{same_groupoid, AlgebraElement};
use crate::dirichlet::ArrowOrder;
use crate::error::{AlgebraError, GroupoidError};
use crate::groupoid::{Arrow, FiniteTwistedGroupoid, PointId};
use crate::linalg::{rank, CMatrix};
use crate::sample;
use crate::tolerance::MATRIX;

/// Orbits up to this size get their lattice by exhaustive subset enumeration.
pub const EXHAUSTIVE_LATTICE_LIMIT: usize = 20;

/// Non-unit arrows from `x` to itself. Empty for every point of a finite
/// principal groupoid.
pub fn isotropy_witnesses(g: &FiniteTwistedGroupoid, x: PointId) -> Result<Vec<Arrow>, GroupoidError> {
    g.orbit(x)?;
    Ok(g.arrows_from(x)
        .iter()
        .filter(|a| a.range == x && !a.is_unit())
        .copied()
        .collect())
}

/// The evaluation state at `x0` extends uniquely iff `x0` has trivial isotropy.
pub fn unique_extension_check(g: &FiniteTwistedGroupoid, x0: PointId) -> Result<bool, GroupoidError> {
    Ok(isotropy_witnesses(g, x0)?.is_empty())
}

/// The GNS representation of the state `a ↦ E(a)(x₀)`.
#[derive(Debug, Clone)]
pub struct GnsRep {
    groupoid: Arc<FiniteTwistedGroupoid>,
    base_point: PointId,
    orbit: Vec<PointId>,
    position: HashMap<PointId, usize>,
}

impl GnsRep {
    pub fn new(groupoid: &Arc<FiniteTwistedGroupoid>, base_point: PointId) -> Result<Self, GroupoidError> {
        let orbit = groupoid.orbit(base_point)?.to_vec();
        let position = orbit.iter().enumerate().map(|(i, &y)| (y, i)).collect();
        Ok(GnsRep {
            groupoid: Arc::clone(groupoid),
            base_point,
            orbit,
            position,
        })
    }

    pub fn groupoid(&self) -> &Arc<FiniteTwistedGroupoid> {
        &self.groupoid
    }

    pub fn base_point(&self) -> PointId {
        self.base_point
    }

    /// Orbit of the base point, indexing rows and columns.
    pub fn orbit(&self) -> &[PointId] {
        &self.orbit
    }

    pub fn dimension(&self) -> usize {
        self.orbit.len()
    }

    /// Position of `y` in the basis, if it lies in the orbit.
    pub fn position(&self, y: PointId) -> Option<usize> {
        self.position.get(&y).copied()
    }

    /// Basis representatives: the arrows `(y, x₀)` in orbit order.
    pub fn basis(&self) -> Vec<Arrow> {
        self.orbit.iter().map(|&y| Arrow::new(y, self.base_point)).collect()
    }

    pub fn matrix(&self, a: &AlgebraElement) -> Result<CMatrix, AlgebraError> {
        if !same_groupoid(a.groupoid(), &self.groupoid) {
            return Err(AlgebraError::GroupoidMismatch);
        }
        let n = self.dimension();
        let mut m = CMatrix::zeros(n, n);
        for (&gamma, &value) in a.coeffs() {
            let (Some(i), Some(j)) = (self.position(gamma.range), self.position(gamma.source)) else {
                continue;
            };
            let leg = Arrow::new(gamma.source, self.base_point);
            m[(i, j)] += self.groupoid.sigma(gamma, leg) * value;
        }
        Ok(m)
    }

    /// Coordinates of the GNS vector `[b]`: the values `b(y, x₀)`.
    pub fn vector(&self, b: &AlgebraElement) -> Result<Vec<Complex64>, AlgebraError> {
        if !same_groupoid(b.groupoid(), &self.groupoid) {
            return Err(AlgebraError::GroupoidMismatch);
        }
        Ok(self.basis().into_iter().map(|arrow| b.get(arrow)).collect())
    }

    /// `⟨[b], [c]⟩ = E(c* b)(x₀)`, computed inside the algebra.
    pub fn inner_product(&self, b: &AlgebraElement, c: &AlgebraElement) -> Result<Complex64, AlgebraError> {
        Ok(c.involute().convolve(b)?.expect().unit_value(self.base_point))
    }

    /// Gram matrix of the basis representatives under the GNS inner product.
    pub fn gram_matrix(&self) -> CMatrix {
        let vectors: Vec<AlgebraElement> = self
            .basis()
            .into_iter()
            .map(|a| AlgebraElement::basis(&self.groupoid, a).expect("basis arrows exist"))
            .collect();
        let n = vectors.len();
        CMatrix::from_fn(n, n, |i, j| {
            self.inner_product(&vectors[j], &vectors[i]).expect("same groupoid")
        })
    }

    /// The diagonal element acting as the projection onto `δ_y`.
    fn point_projection(&self, y: PointId) -> AlgebraElement {
        AlgebraElement::diagonal(&self.groupoid, |x| {
            if x == y {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
    }
}

/// `π₀(a) = 0`, decided from the matrix.
pub fn kernel_test(a: &AlgebraElement, rep: &GnsRep) -> Result<bool, AlgebraError> {
    Ok(rep.matrix(a)?.max_abs() <= MATRIX)
}

/// Support test for the kernel: no arrow of `a` has its source in the orbit.
pub fn vanishes_on_orbit(a: &AlgebraElement, rep: &GnsRep) -> bool {
    a.support().all(|arrow| rep.position(arrow.source).is_none())
}

/// Invariant coordinate subspaces of `π₀(𝒜)` on one orbit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantLattice {
    pub orbit: Vec<PointId>,
    /// Up-sets in (size, lexicographic) order. Left empty when the orbit is
    /// too large to list a non-chain lattice.
    pub subspaces: Vec<BTreeSet<PointId>>,
    pub count: u128,
    pub is_nest: bool,
    /// First incomparable pair of up-sets, when the lattice is not a nest.
    pub incomparable: Option<(BTreeSet<PointId>, BTreeSet<PointId>)>,
    pub exhaustive: bool,
}

pub fn invariant_lattice(rep: &GnsRep, order: &ArrowOrder) -> Result<InvariantLattice, AlgebraError> {
    invariant_lattice_with_limit(rep, order, EXHAUSTIVE_LATTICE_LIMIT)
}

/// As [`invariant_lattice`], choosing exhaustive enumeration only for orbits
/// of at most `exhaustive_limit` points.
pub fn invariant_lattice_with_limit(
    rep: &GnsRep,
    order: &ArrowOrder,
    exhaustive_limit: usize,
) -> Result<InvariantLattice, AlgebraError> {
    if !same_groupoid(rep.groupoid(), order.groupoid()) {
        return Err(AlgebraError::GroupoidMismatch);
    }
    let orbit = rep.orbit().to_vec();
    if orbit.len() <= exhaustive_limit.min(63) {
        Ok(exhaustive_lattice(orbit, order))
    } else {
        Ok(condensed_lattice(orbit, order))
    }
}

fn exhaustive_lattice(orbit: Vec<PointId>, order: &ArrowOrder) -> InvariantLattice {
    let n = orbit.len();
    // above[j]: the points that must join any up-set containing orbit[j]
    let above: Vec<u64> = (0..n)
        .map(|j| {
            (0..n)
                .filter(|&i| order.relates(orbit[i], orbit[j]))
                .fold(0u64, |m, i| m | (1 << i))
        })
        .collect();
    let mut masks: Vec<u64> = (0..(1u64 << n))
        .filter(|&mask| (0..n).all(|j| mask & (1 << j) == 0 || above[j] & !mask == 0))
        .collect();
    masks.sort_by_key(|&m| (m.count_ones(), member_key(m, n)));

    let to_set = |m: u64| -> BTreeSet<PointId> { (0..n).filter(|&i| m & (1 << i) != 0).map(|i| orbit[i]).collect() };
    let incomparable = first_incomparable(&masks).map(|(a, b)| (to_set(a), to_set(b)));
    InvariantLattice {
        subspaces: masks.iter().map(|&m| to_set(m)).collect(),
        count: masks.len() as u128,
        is_nest: incomparable.is_none(),
        incomparable,
        exhaustive: true,
        orbit,
    }
}

// members in increasing position, for lexicographic tie-breaking
fn member_key(mask: u64, n: usize) -> Vec<usize> {
    (0..n).filter(|&i| mask & (1 << i) != 0).collect()
}

fn first_incomparable(masks: &[u64]) -> Option<(u64, u64)> {
    for (i, &a) in masks.iter().enumerate() {
        for &b in &masks[i + 1..] {
            if a & !b != 0 && b & !a != 0 {
                return Some((a, b));
            }
        }
    }
    None
}

// Large orbits: collapse the preorder to its classes, list the chain when the
// quotient is total, otherwise count up-sets with the recursion
// N(P) = N(P minus up(x)) + N(P minus down(x)).
fn condensed_lattice(orbit: Vec<PointId>, order: &ArrowOrder) -> InvariantLattice {
    let n = orbit.len();
    let mut reach = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            reach[i][j] = i == j || order.relates(orbit[i], orbit[j]);
        }
    }
    for k in 0..n {
        for i in 0..n {
            if reach[i][k] {
                for j in 0..n {
                    if reach[k][j] {
                        reach[i][j] = true;
                    }
                }
            }
        }
    }

    let mut class_of = vec![usize::MAX; n];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for i in 0..n {
        if class_of[i] != usize::MAX {
            continue;
        }
        let members: Vec<usize> = (i..n).filter(|&j| reach[i][j] && reach[j][i]).collect();
        for &j in &members {
            class_of[j] = classes.len();
        }
        classes.push(members);
    }
    let k = classes.len();
    // above(c, d): class c sits above class d
    let above = |c: usize, d: usize| reach[classes[c][0]][classes[d][0]];
    let points = orbit.clone();
    let members_of = |cs: &[usize]| -> BTreeSet<PointId> {
        cs.iter().flat_map(|&c| classes[c].iter().map(|&i| points[i])).collect()
    };

    let mut witness = None;
    'scan: for c in 0..k {
        for d in c + 1..k {
            if !above(c, d) && !above(d, c) {
                witness = Some((c, d));
                break 'scan;
            }
        }
    }

    match witness {
        None => {
            let mut chain: Vec<usize> = (0..k).collect();
            chain.sort_by_key(|&c| (0..k).filter(|&d| above(d, c)).count());
            let mut subspaces = vec![BTreeSet::new()];
            for end in 1..=k {
                subspaces.push(members_of(&chain[..end]));
            }
            InvariantLattice {
                orbit,
                count: subspaces.len() as u128,
                subspaces,
                is_nest: true,
                incomparable: None,
                exhaustive: false,
            }
        }
        Some((c, d)) => {
            let up = |x: usize| -> Vec<usize> { (0..k).filter(|&y| above(y, x)).collect() };
            let count = count_upsets(k, &|x, y| above(x, y));
            InvariantLattice {
                orbit,
                subspaces: Vec::new(),
                count,
                is_nest: false,
                incomparable: Some((members_of(&up(c)), members_of(&up(d)))),
                exhaustive: false,
            }
        }
    }
}

fn count_upsets(k: usize, above: &dyn Fn(usize, usize) -> bool) -> u128 {
    type Bits = Vec<u64>;
    fn rec(live: &Bits, k: usize, above: &dyn Fn(usize, usize) -> bool, memo: &mut HashMap<Bits, u128>) -> u128 {
        let Some(x) = (0..k).find(|&i| live[i / 64] & (1 << (i % 64)) != 0) else {
            return 1;
        };
        if let Some(&v) = memo.get(live) {
            return v;
        }
        let mut without_up = live.clone();
        let mut without_down = live.clone();
        for y in 0..k {
            if above(y, x) {
                without_up[y / 64] &= !(1 << (y % 64));
            }
            if above(x, y) {
                without_down[y / 64] &= !(1 << (y % 64));
            }
        }
        let total = rec(&without_up, k, above, memo) + rec(&without_down, k, above, memo);
        memo.insert(live.clone(), total);
        total
    }
    let mut live = vec![0u64; k.div_ceil(64)];
    for i in 0..k {
        live[i / 64] |= 1 << (i % 64);
    }
    rec(&live, k, above, &mut HashMap::new())
}

/// Operator norm against the supremum over one GNS representation per orbit.
#[derive(Debug, Clone, PartialEq)]
pub struct NormAchievement {
    pub lhs: f64,
    pub rhs: f64,
    /// `(representative, ‖π_y(a)‖)` per orbit.
    pub per_orbit: Vec<(PointId, f64)>,
}

impl NormAchievement {
    pub fn deviation(&self) -> f64 {
        (self.lhs - self.rhs).abs()
    }
}

pub fn norm_achievement(a: &AlgebraElement) -> NormAchievement {
    let g = a.groupoid();
    let per_orbit: Vec<(PointId, f64)> = g
        .orbits()
        .iter()
        .filter_map(|orbit| {
            orbit
                .iter()
                .copied()
                .find(|&y| unique_extension_check(g, y).unwrap_or(false))
        })
        .map(|y| {
            let rep = GnsRep::new(g, y).expect("orbit point");
            let norm = rep.matrix(a).expect("same groupoid").spectral_norm();
            (y, norm)
        })
        .collect();
    NormAchievement {
        lhs: a.operator_norm(),
        rhs: per_orbit.iter().map(|(_, n)| *n).fold(0.0, f64::max),
        per_orbit,
    }
}

/// Outcome of verifying that the image pair is again a Cartan pair.
#[derive(Debug, Clone, PartialEq)]
pub struct CartanReport {
    pub dimension: usize,
    /// Dimension of the span of all `π₀(e_γ)`; full is `dimension²`.
    pub image_dimension: usize,
    pub masa_dimension: usize,
    /// Dimension of the commutant of `π₀(𝔐)` inside the image.
    pub commutant_dimension: usize,
    pub masa_is_diagonal: bool,
    pub normalizers_normalize: bool,
    pub normalizer_span: usize,
    pub expectation_consistent: bool,
    pub expectation_idempotent: bool,
    pub expectation_bimodular: bool,
    pub expectation_faithful: bool,
    pub samples: usize,
}

impl CartanReport {
    pub fn masa_ok(&self) -> bool {
        self.masa_is_diagonal && self.commutant_dimension == self.masa_dimension && self.masa_dimension == self.dimension
    }

    pub fn regular_ok(&self) -> bool {
        self.normalizers_normalize && self.normalizer_span == self.image_dimension
    }

    pub fn expectation_ok(&self) -> bool {
        self.expectation_consistent
            && self.expectation_idempotent
            && self.expectation_bimodular
            && self.expectation_faithful
    }

    pub fn passed(&self) -> bool {
        self.image_dimension == self.dimension * self.dimension
            && self.masa_ok()
            && self.regular_ok()
            && self.expectation_ok()
    }
}

const CARTAN_SAMPLE_SEED: u64 = 0x00C4_7A11;
const CARTAN_RANDOM_SAMPLES: usize = 16;

fn flatten(m: &CMatrix) -> Vec<Complex64> {
    m.as_slice().to_vec()
}

/// Checks, on the image algebra, that the diagonal is a masa, that images of
/// normalizers normalize it and span, and that diagonal extraction is a
/// faithful conditional expectation compatible with `E`.
pub fn gns_cartan_check(rep: &GnsRep) -> CartanReport {
    let g = rep.groupoid();
    let n = rep.dimension();

    let normalizer_images: Vec<CMatrix> = g
        .arrows()
        .iter()
        .map(|&a| rep.matrix(&AlgebraElement::basis(g, a).expect("groupoid arrow")).expect("same groupoid"))
        .collect();
    let image_dimension = rank(&normalizer_images.iter().map(flatten).collect::<Vec<_>>(), MATRIX);

    let masa_images: Vec<CMatrix> = g
        .units()
        .points()
        .map(|y| rep.matrix(&rep.point_projection(y)).expect("same groupoid"))
        .collect();
    let masa_dimension = rank(&masa_images.iter().map(flatten).collect::<Vec<_>>(), MATRIX);
    let masa_is_diagonal = masa_images.iter().all(|m| m.is_diagonal(MATRIX));

    // commutant of π₀(𝔐) in M_n: kernel of X ↦ ([X, D_y])_y
    let generators: Vec<&CMatrix> = masa_images.iter().filter(|m| m.max_abs() > MATRIX).collect();
    let columns: Vec<Vec<Complex64>> = (0..n * n)
        .map(|k| {
            let mut x = CMatrix::zeros(n, n);
            x[(k / n, k % n)] = Complex64::new(1.0, 0.0);
            generators.iter().flat_map(|d| flatten(&x.commutator(d))).collect()
        })
        .collect();
    let commutant_dimension = if generators.is_empty() { n * n } else { n * n - rank(&columns, MATRIX) };

    let normalizers_normalize = normalizer_images.iter().all(|v| {
        masa_images.iter().all(|d| {
            (&(&v.adjoint() * d) * v).is_diagonal(MATRIX) && (&(v * d) * &v.adjoint()).is_diagonal(MATRIX)
        })
    });

    // expectation audits over basis arrows plus seeded random elements
    let mut rng = sample::rng_from_seed(CARTAN_SAMPLE_SEED ^ rep.base_point().0 as u64);
    let mut elements: Vec<AlgebraElement> = g
        .arrows()
        .iter()
        .map(|&a| AlgebraElement::basis(g, a).expect("groupoid arrow"))
        .collect();
    for _ in 0..CARTAN_RANDOM_SAMPLES {
        elements.push(sample::random_element(g, &mut rng, 0.6));
    }
    let left = sample::random_diagonal(g, &mut rng);
    let right = sample::random_diagonal(g, &mut rng);
    let dl = rep.matrix(&left).expect("same groupoid");
    let dr = rep.matrix(&right).expect("same groupoid");

    let mut consistent = true;
    let mut idempotent = true;
    let mut bimodular = true;
    let mut faithful = true;
    for a in &elements {
        let m = rep.matrix(a).expect("same groupoid");
        let e0 = m.diagonal_part();
        consistent &= rep.matrix(&a.expect()).expect("same groupoid").approx_eq(&e0, MATRIX);
        idempotent &= e0.diagonal_part().approx_eq(&e0, MATRIX);
        let sandwiched = &(&dl * &m) * &dr;
        bimodular &= sandwiched.diagonal_part().approx_eq(&(&(&dl * &e0) * &dr), MATRIX);
        let positive = &m.adjoint() * &m;
        let e0p = positive.diagonal_part();
        if positive.max_abs() > MATRIX {
            faithful &= e0p.max_abs() > MATRIX;
        }
        faithful &= (e0p.trace() - positive.trace()).norm() <= MATRIX * positive.max_abs().max(1.0);
    }

    CartanReport {
        dimension: n,
        image_dimension,
        masa_dimension,
        commutant_dimension,
        masa_is_diagonal,
        normalizers_normalize,
        normalizer_span: image_dimension,
        expectation_consistent: consistent,
        expectation_idempotent: idempotent,
        expectation_bimodular: bimodular,
        expectation_faithful: faithful,
        samples: elements.len(),
    }
}

/// Lattices for every orbit, keyed by the orbit's first point.
pub fn lattices_by_orbit(
    g: &Arc<FiniteTwistedGroupoid>,
    order: &ArrowOrder,
) -> Result<BTreeMap<PointId, InvariantLattice>, AlgebraError> {
    g.orbits()
        .iter()
        .map(|orbit| {
            let rep = GnsRep::new(g, orbit[0]).expect("orbit point");
            invariant_lattice(&rep, order).map(|l| (orbit[0], l))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{build_full_relation, upper_triangular_order};
    use crate::dirichlet::validate_order;

    fn p(i: usize) -> PointId {
        PointId(i)
    }

    fn set(ids: &[usize]) -> BTreeSet<PointId> {
        ids.iter().map(|&i| p(i)).collect()
    }

    #[test]
    fn identity_maps_to_identity() {
        let g = Arc::new(build_full_relation(3).unwrap());
        let rep = GnsRep::new(&g, p(1)).unwrap();
        assert!(rep
            .matrix(&AlgebraElement::identity(&g))
            .unwrap()
            .approx_eq(&CMatrix::identity(3), 1e-15));
    }

    #[test]
    fn diagonal_elements_act_diagonally() {
        let g = Arc::new(build_full_relation(4).unwrap());
        let rep = GnsRep::new(&g, p(2)).unwrap();
        let f = AlgebraElement::diagonal(&g, |x| Complex64::new(x.0 as f64, 1.0));
        let m = rep.matrix(&f).unwrap();
        let expected: Vec<Complex64> = (0..4).map(|i| Complex64::new(i as f64, 1.0)).collect();
        assert!(m.approx_eq(&CMatrix::from_diagonal(&expected), 1e-15));
    }

    #[test]
    fn taf3_lattice_is_the_standard_chain() {
        let g = Arc::new(build_full_relation(3).unwrap());
        let order = validate_order(upper_triangular_order(&g)).unwrap();
        let rep = GnsRep::new(&g, p(0)).unwrap();
        let lattice = invariant_lattice(&rep, &order).unwrap();
        assert!(lattice.is_nest);
        assert_eq!(lattice.subspaces, vec![set(&[]), set(&[0]), set(&[0, 1]), set(&[0, 1, 2])]);
    }

    #[test]
    fn whole_algebra_has_trivial_lattice() {
        let g = Arc::new(build_full_relation(3).unwrap());
        let all = validate_order(ArrowOrder::new(&g, g.arrows().iter().copied()).unwrap()).unwrap();
        let rep = GnsRep::new(&g, p(2)).unwrap();
        let lattice = invariant_lattice(&rep, &all).unwrap();
        assert!(lattice.is_nest);
        assert_eq!(lattice.subspaces, vec![set(&[]), set(&[0, 1, 2])]);
    }

    fn diamond(g: &Arc<FiniteTwistedGroupoid>) -> ArrowOrder {
        // 1 on top, 3 and 4 incomparable, 2 at the bottom
        let pairs = [(0, 2), (0, 3), (0, 1), (2, 1), (3, 1)];
        ArrowOrder::new(g, g.units_iter().chain(pairs.iter().map(|&(x, y)| Arrow::new(p(x), p(y))))).unwrap()
    }

    #[test]
    fn diamond_order_is_not_a_nest() {
        let g = Arc::new(build_full_relation(4).unwrap());
        let order = diamond(&g);
        let rep = GnsRep::new(&g, p(0)).unwrap();
        let lattice = invariant_lattice(&rep, &order).unwrap();
        assert!(!lattice.is_nest);
        assert_eq!(lattice.incomparable, Some((set(&[0, 2]), set(&[0, 3]))));
        assert_eq!(lattice.count, 6);
    }

    #[test]
    fn condensed_counting_matches_exhaustive() {
        let g = Arc::new(build_full_relation(4).unwrap());
        let rep = GnsRep::new(&g, p(0)).unwrap();
        for order in [diamond(&g), upper_triangular_order(&g)] {
            let exhaustive = invariant_lattice_with_limit(&rep, &order, 20).unwrap();
            let condensed = invariant_lattice_with_limit(&rep, &order, 0).unwrap();
            assert_eq!(exhaustive.count, condensed.count);
            assert_eq!(exhaustive.is_nest, condensed.is_nest);
            if exhaustive.is_nest {
                assert_eq!(exhaustive.subspaces, condensed.subspaces);
            }
        }
        let units_only = ArrowOrder::new(&g, g.units_iter()).unwrap();
        assert_eq!(invariant_lattice_with_limit(&rep, &units_only, 0).unwrap().count, 16);
    }

    #[test]
    fn large_orbit_uses_condensation() {
        let g = Arc::new(build_full_relation(24).unwrap());
        let order = validate_order(upper_triangular_order(&g)).unwrap();
        let rep = GnsRep::new(&g, p(5)).unwrap();
        let lattice = invariant_lattice(&rep, &order).unwrap();
        assert!(!lattice.exhaustive);
        assert!(lattice.is_nest);
        assert_eq!(lattice.count, 25);
        assert_eq!(lattice.subspaces[1], set(&[0]));
    }

    #[test]
    fn kernel_examples() {
        let units = crate::groupoid::UnitSpace::new(["1", "2", "3"]).unwrap();
        let arrows = [
            Arrow::unit(p(0)),
            Arrow::unit(p(1)),
            Arrow::unit(p(2)),
            Arrow::new(p(0), p(1)),
            Arrow::new(p(1), p(0)),
        ];
        let g = Arc::new(FiniteTwistedGroupoid::untwisted(units, arrows).unwrap());
        let rep = GnsRep::new(&g, p(0)).unwrap();
        let outside = AlgebraElement::basis(&g, Arrow::unit(p(2))).unwrap();
        assert!(kernel_test(&outside, &rep).unwrap());
        assert!(vanishes_on_orbit(&outside, &rep));
        let inside = AlgebraElement::basis(&g, Arrow::new(p(1), p(0))).unwrap();
        assert!(!kernel_test(&inside, &rep).unwrap());
        assert!(!vanishes_on_orbit(&inside, &rep));
    }

    #[test]
    fn finite_points_have_unique_extensions() {
        let g = build_full_relation(3).unwrap();
        for x in g.units().points() {
            assert!(isotropy_witnesses(&g, x).unwrap().is_empty());
            assert!(unique_extension_check(&g, x).unwrap());
        }
        assert!(unique_extension_check(&g, p(9)).is_err());
    }

    #[test]
    fn cartan_check_on_full_relation() {
        let g = Arc::new(build_full_relation(4).unwrap());
        for x in g.units().points() {
            let report = gns_cartan_check(&GnsRep::new(&g, x).unwrap());
            assert!(report.passed(), "{report:?}");
            assert_eq!(report.image_dimension, 16);
            assert_eq!(report.commutant_dimension, 4);
        }
    }
}
