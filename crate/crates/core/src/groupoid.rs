//! Finite principal groupoids (equivalence relations) carrying a circle-valued
//! 2-cocycle.
//!
//! At finite scale an arrow is determined by its endpoints, so arrows are
//! ordered pairs `(range, source)` of unit-space points. The twist is stored
//! as a sparse table over composable pairs; missing entries are `1`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_complex::Complex64;

use crate::error::GroupoidError;
use crate::tolerance::UNIT_MODULUS;

/// Index of a point in the unit space. The order of indices is the declared
/// unit-space order and drives every deterministic iteration in the crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PointId(pub usize);

impl fmt::Display for PointId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// The finite unit space: point names in their declared order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitSpace {
    names: Vec<String>,
    index: HashMap<String, PointId>,
}

impl UnitSpace {
    pub fn new<I, S>(names: I) -> Result<Self, GroupoidError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(GroupoidError::EmptyUnitSpace);
        }
        let mut index = HashMap::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            if index.insert(name.clone(), PointId(i)).is_some() {
                return Err(GroupoidError::DuplicatePoint(name.clone()));
            }
        }
        Ok(UnitSpace { names, index })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, p: PointId) -> &str {
        &self.names[p.0]
    }

    pub fn lookup(&self, name: &str) -> Result<PointId, GroupoidError> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| GroupoidError::UnknownPoint(name.to_string()))
    }

    pub fn contains(&self, p: PointId) -> bool {
        p.0 < self.names.len()
    }

    pub fn points(&self) -> impl Iterator<Item = PointId> + '_ {
        (0..self.names.len()).map(PointId)
    }
}

/// An arrow `y -> x`, written `(x, y)` with `x` the range and `y` the source.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Arrow {
    pub range: PointId,
    pub source: PointId,
}

impl Arrow {
    pub fn new(range: PointId, source: PointId) -> Self {
        Arrow { range, source }
    }

    pub fn unit(x: PointId) -> Self {
        Arrow { range: x, source: x }
    }

    pub fn is_unit(&self) -> bool {
        self.range == self.source
    }

    pub fn inverse(self) -> Self {
        Arrow {
            range: self.source,
            source: self.range,
        }
    }

    pub fn is_composable_with(&self, next: &Arrow) -> bool {
        self.source == next.range
    }
}

impl fmt::Display for Arrow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.range.0, self.source.0)
    }
}

/// A partial bijection of the unit space, stored as its graph.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PartialBijection {
    forward: BTreeMap<PointId, PointId>,
    backward: BTreeMap<PointId, PointId>,
}

impl PartialBijection {
    /// Builds a partial bijection from `(image, preimage)` pairs. Fails with the
    /// two clashing pairs when the graph is not single-valued both ways.
    pub fn from_pairs(
        pairs: impl IntoIterator<Item = (PointId, PointId)>,
    ) -> Result<Self, ((PointId, PointId), (PointId, PointId))> {
        let mut pb = PartialBijection::default();
        for (image, pre) in pairs {
            if let Some(&other) = pb.forward.get(&pre) {
                if other != image {
                    return Err(((other, pre), (image, pre)));
                }
                continue;
            }
            if let Some(&other) = pb.backward.get(&image) {
                return Err(((image, other), (image, pre)));
            }
            pb.forward.insert(pre, image);
            pb.backward.insert(image, pre);
        }
        Ok(pb)
    }

    pub fn apply(&self, x: PointId) -> Option<PointId> {
        self.forward.get(&x).copied()
    }

    pub fn apply_inverse(&self, x: PointId) -> Option<PointId> {
        self.backward.get(&x).copied()
    }

    pub fn domain(&self) -> impl Iterator<Item = PointId> + '_ {
        self.forward.keys().copied()
    }

    pub fn image(&self) -> impl Iterator<Item = PointId> + '_ {
        self.backward.keys().copied()
    }

    /// Graph as `(image, preimage)` pairs in preimage order.
    pub fn graph(&self) -> Vec<(PointId, PointId)> {
        self.forward.iter().map(|(&pre, &img)| (img, pre)).collect()
    }

    pub fn inverse(&self) -> PartialBijection {
        PartialBijection {
            forward: self.backward.clone(),
            backward: self.forward.clone(),
        }
    }

    pub fn len(&self) -> usize {
        self.forward.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forward.is_empty()
    }
}

/// One violated groupoid invariant.
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    ArrowOutOfRange(Arrow),
    MissingUnit(PointId),
    MissingInverse(Arrow),
    MissingComposite(Arrow, Arrow),
    CocycleOnUnknownArrow(Arrow, Arrow),
    CocycleNotComposable(Arrow, Arrow),
    CocycleModulus { pair: (Arrow, Arrow), value: Complex64 },
    CocycleNotNormalized { pair: (Arrow, Arrow), value: Complex64 },
    CocycleIdentity { triple: (Arrow, Arrow, Arrow), lhs: Complex64, rhs: Complex64 },
}

/// Every violated invariant of a candidate groupoid. Empty iff valid.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    /// Human-readable lines using point names.
    pub fn describe(&self, units: &UnitSpace) -> Vec<String> {
        let label = |a: &Arrow| {
            let name = |p: PointId| {
                if units.contains(p) {
                    units.name(p).to_string()
                } else {
                    format!("{p}")
                }
            };
            format!("({},{})", name(a.range), name(a.source))
        };
        self.violations
            .iter()
            .map(|v| match v {
                Violation::ArrowOutOfRange(a) => format!("arrow {a} refers to a point outside the unit space"),
                Violation::MissingUnit(p) => format!("missing unit arrow at {}", units.name(*p)),
                Violation::MissingInverse(a) => format!("arrow {} has no inverse", label(a)),
                Violation::MissingComposite(a, b) => {
                    format!("composite of {} and {} is not an arrow", label(a), label(b))
                }
                Violation::CocycleOnUnknownArrow(a, b) => {
                    format!("cocycle entry ({}, {}) uses an arrow outside the groupoid", label(a), label(b))
                }
                Violation::CocycleNotComposable(a, b) => {
                    format!("cocycle entry ({}, {}) is not a composable pair", label(a), label(b))
                }
                Violation::CocycleModulus { pair, value } => format!(
                    "cocycle value {} at ({}, {}) has modulus {}",
                    value,
                    label(&pair.0),
                    label(&pair.1),
                    value.norm()
                ),
                Violation::CocycleNotNormalized { pair, value } => format!(
                    "cocycle value {} at ({}, {}) involves a unit but is not 1",
                    value,
                    label(&pair.0),
                    label(&pair.1)
                ),
                Violation::CocycleIdentity { triple, lhs, rhs } => format!(
                    "cocycle identity fails on ({}, {}, {}): {} != {}",
                    label(&triple.0),
                    label(&triple.1),
                    label(&triple.2),
                    lhs,
                    rhs
                ),
            })
            .collect()
    }
}

/// A finite principal groupoid with a normalized circle-valued 2-cocycle.
///
/// Values are immutable once built. [`FiniteTwistedGroupoid::new`] refuses
/// invalid data; [`FiniteTwistedGroupoid::from_parts_unchecked`] keeps it so
/// that [`FiniteTwistedGroupoid::validate`] can explain what is wrong.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteTwistedGroupoid {
    units: UnitSpace,
    arrows: BTreeSet<Arrow>,
    cocycle: BTreeMap<(Arrow, Arrow), Complex64>,
    by_source: Vec<Vec<Arrow>>,
    orbit_index: Vec<usize>,
    orbits: Vec<Vec<PointId>>,
}

impl FiniteTwistedGroupoid {
    pub fn new(
        units: UnitSpace,
        arrows: impl IntoIterator<Item = Arrow>,
        cocycle: impl IntoIterator<Item = ((Arrow, Arrow), Complex64)>,
    ) -> Result<Self, GroupoidError> {
        let g = Self::from_parts_unchecked(units, arrows, cocycle);
        let report = g.validate();
        if report.is_valid() {
            Ok(g)
        } else {
            Err(GroupoidError::Invalid(report))
        }
    }

    /// Untwisted groupoid (cocycle identically one).
    pub fn untwisted(units: UnitSpace, arrows: impl IntoIterator<Item = Arrow>) -> Result<Self, GroupoidError> {
        Self::new(units, arrows, std::iter::empty())
    }

    pub fn from_parts_unchecked(
        units: UnitSpace,
        arrows: impl IntoIterator<Item = Arrow>,
        cocycle: impl IntoIterator<Item = ((Arrow, Arrow), Complex64)>,
    ) -> Self {
        let arrows: BTreeSet<Arrow> = arrows.into_iter().collect();
        let cocycle: BTreeMap<(Arrow, Arrow), Complex64> = cocycle.into_iter().collect();
        let n = units.len();

        let mut by_source = vec![Vec::new(); n];
        for a in &arrows {
            if a.source.0 < n && a.range.0 < n {
                by_source[a.source.0].push(*a);
            }
        }

        // connected components; these are the equivalence classes once valid
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for a in &arrows {
            if a.source.0 < n && a.range.0 < n {
                let (ra, rb) = (find(&mut parent, a.range.0), find(&mut parent, a.source.0));
                if ra != rb {
                    parent[ra.max(rb)] = ra.min(rb);
                }
            }
        }
        let mut orbit_index = vec![usize::MAX; n];
        let mut orbits: Vec<Vec<PointId>> = Vec::new();
        let mut root_to_orbit: HashMap<usize, usize> = HashMap::new();
        for x in 0..n {
            let root = find(&mut parent, x);
            let next = orbits.len();
            let k = *root_to_orbit.entry(root).or_insert(next);
            if k == orbits.len() {
                orbits.push(Vec::new());
            }
            orbits[k].push(PointId(x));
            orbit_index[x] = k;
        }

        FiniteTwistedGroupoid {
            units,
            arrows,
            cocycle,
            by_source,
            orbit_index,
            orbits,
        }
    }

    pub fn units(&self) -> &UnitSpace {
        &self.units
    }

    pub fn point(&self, name: &str) -> Result<PointId, GroupoidError> {
        self.units.lookup(name)
    }

    pub fn point_name(&self, p: PointId) -> &str {
        self.units.name(p)
    }

    pub fn arrow_label(&self, a: &Arrow) -> String {
        format!("({},{})", self.point_name(a.range), self.point_name(a.source))
    }

    pub fn arrows(&self) -> &BTreeSet<Arrow> {
        &self.arrows
    }

    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn contains(&self, a: &Arrow) -> bool {
        self.arrows.contains(a)
    }

    /// Arrows with the given source, in arrow order.
    pub fn arrows_from(&self, source: PointId) -> &[Arrow] {
        &self.by_source[source.0]
    }

    pub fn units_iter(&self) -> impl Iterator<Item = Arrow> + '_ {
        self.units.points().map(Arrow::unit)
    }

    /// Explicit (non-default) cocycle entries.
    pub fn cocycle_table(&self) -> &BTreeMap<(Arrow, Arrow), Complex64> {
        &self.cocycle
    }

    pub fn is_untwisted(&self) -> bool {
        self.cocycle.values().all(|v| (v - Complex64::new(1.0, 0.0)).norm() <= UNIT_MODULUS)
    }

    /// The cocycle value on a composable pair (one when not tabulated).
    #[inline]
    pub fn sigma(&self, a: Arrow, b: Arrow) -> Complex64 {
        self.cocycle.get(&(a, b)).copied().unwrap_or(Complex64::new(1.0, 0.0))
    }

    pub fn compose(&self, a: Arrow, b: Arrow) -> Result<Arrow, GroupoidError> {
        for x in [a, b] {
            if !self.contains(&x) {
                return Err(GroupoidError::ArrowNotInGroupoid(self.arrow_label(&x)));
            }
        }
        if !a.is_composable_with(&b) {
            return Err(GroupoidError::NotComposable {
                first: self.arrow_label(&a),
                second: self.arrow_label(&b),
            });
        }
        let c = Arrow::new(a.range, b.source);
        if !self.contains(&c) {
            return Err(GroupoidError::ArrowNotInGroupoid(self.arrow_label(&c)));
        }
        Ok(c)
    }

    pub fn inverse(&self, a: Arrow) -> Arrow {
        a.inverse()
    }

    /// The equivalence class of `x` in unit-space order.
    pub fn orbit(&self, x: PointId) -> Result<&[PointId], GroupoidError> {
        if !self.units.contains(x) {
            return Err(GroupoidError::PointOutOfRange(x.0));
        }
        Ok(&self.orbits[self.orbit_index[x.0]])
    }

    /// Orbits ordered by their first point.
    pub fn orbits(&self) -> &[Vec<PointId>] {
        &self.orbits
    }

    pub fn same_orbit(&self, x: PointId, y: PointId) -> bool {
        self.orbit_index[x.0] == self.orbit_index[y.0]
    }

    /// Checks relation axioms and cocycle conditions, reporting every failure.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        let n = self.units.len();
        let in_range = |a: &Arrow| a.range.0 < n && a.source.0 < n;

        for a in &self.arrows {
            if !in_range(a) {
                violations.push(Violation::ArrowOutOfRange(*a));
            }
        }
        for x in self.units.points() {
            if !self.arrows.contains(&Arrow::unit(x)) {
                violations.push(Violation::MissingUnit(x));
            }
        }
        for a in self.arrows.iter().filter(|a| in_range(a)) {
            if !self.arrows.contains(&a.inverse()) {
                violations.push(Violation::MissingInverse(*a));
            }
        }
        for a in self.arrows.iter().filter(|a| in_range(a)) {
            for c in self.arrows_with_range(a.source) {
                let comp = Arrow::new(a.range, c.source);
                if !self.arrows.contains(&comp) {
                    violations.push(Violation::MissingComposite(*a, c));
                }
            }
        }

        let one = Complex64::new(1.0, 0.0);
        for (&(a, b), &v) in &self.cocycle {
            if !self.arrows.contains(&a) || !self.arrows.contains(&b) {
                violations.push(Violation::CocycleOnUnknownArrow(a, b));
                continue;
            }
            if !a.is_composable_with(&b) {
                violations.push(Violation::CocycleNotComposable(a, b));
                continue;
            }
            if (v.norm() - 1.0).abs() > UNIT_MODULUS {
                violations.push(Violation::CocycleModulus { pair: (a, b), value: v });
            }
            if (a.is_unit() || b.is_unit()) && (v - one).norm() > UNIT_MODULUS {
                violations.push(Violation::CocycleNotNormalized { pair: (a, b), value: v });
            }
        }

        // the identity only needs checking when some entry is non-trivial
        if !self.cocycle.is_empty() {
            for &a in &self.arrows {
                if !in_range(&a) {
                    continue;
                }
                for b in self.arrows_with_range(a.source) {
                    let ab = Arrow::new(a.range, b.source);
                    if !self.arrows.contains(&ab) {
                        continue;
                    }
                    for c in self.arrows_with_range(b.source) {
                        let bc = Arrow::new(b.range, c.source);
                        if !self.arrows.contains(&bc) || !self.arrows.contains(&Arrow::new(a.range, c.source)) {
                            continue;
                        }
                        let lhs = self.sigma(a, b) * self.sigma(ab, c);
                        let rhs = self.sigma(b, c) * self.sigma(a, bc);
                        if (lhs - rhs).norm() > UNIT_MODULUS {
                            violations.push(Violation::CocycleIdentity { triple: (a, b, c), lhs, rhs });
                        }
                    }
                }
            }
        }

        ValidationReport { violations }
    }

    fn arrows_with_range(&self, x: PointId) -> Vec<Arrow> {
        self.arrows
            .range(Arrow::new(x, PointId(0))..=Arrow::new(x, PointId(usize::MAX)))
            .copied()
            .collect()
    }
}
