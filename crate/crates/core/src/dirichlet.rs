//! Dirichlet subalgebras cut out by sub-pseudogroups of arrows.
//!
//! A set `S` of arrows containing the units and closed under composition is a
//! preorder on each orbit; the elements supported in `S` form a subalgebra `𝒜`
//! containing the diagonal. When `S ∪ S⁻¹` is every arrow, `𝒜 + 𝒜*` is the
//! whole algebra. `S ∩ S⁻¹ = units` is the strict case; length orders on path
//! groupoids are not strict.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::algebra::{same_groupoid, AlgebraElement};
use crate::error::AlgebraError;
use crate::groupoid::{Arrow, FiniteTwistedGroupoid, PointId};

/// At most this many witnesses are reported per violated condition.
pub const MAX_WITNESSES: usize = 3;

/// A subset of arrows, not necessarily satisfying any order axiom.
#[derive(Debug, Clone)]
pub struct ArrowOrder {
    groupoid: Arc<FiniteTwistedGroupoid>,
    arrows: BTreeSet<Arrow>,
}

impl ArrowOrder {
    pub fn new(
        groupoid: &Arc<FiniteTwistedGroupoid>,
        arrows: impl IntoIterator<Item = Arrow>,
    ) -> Result<Self, AlgebraError> {
        let arrows: BTreeSet<Arrow> = arrows.into_iter().collect();
        if let Some(bad) = arrows.iter().find(|a| !groupoid.contains(a)) {
            return Err(AlgebraError::ArrowNotInGroupoid(bad.to_string()));
        }
        Ok(ArrowOrder {
            groupoid: Arc::clone(groupoid),
            arrows,
        })
    }

    pub fn groupoid(&self) -> &Arc<FiniteTwistedGroupoid> {
        &self.groupoid
    }

    pub fn arrows(&self) -> &BTreeSet<Arrow> {
        &self.arrows
    }

    pub fn contains(&self, a: &Arrow) -> bool {
        self.arrows.contains(a)
    }

    /// `(x, y) ∈ S`: read as "x sits above y".
    pub fn relates(&self, x: PointId, y: PointId) -> bool {
        self.arrows.contains(&Arrow::new(x, y))
    }

    /// Support of `a` lies in `S`.
    pub fn is_member(&self, a: &AlgebraElement) -> Result<bool, AlgebraError> {
        if !same_groupoid(a.groupoid(), &self.groupoid) {
            return Err(AlgebraError::GroupoidMismatch);
        }
        Ok(a.support().all(|arrow| self.arrows.contains(&arrow)))
    }

    /// `(dim 𝒜 + 𝒜*, dim C*(G))` over the arrow basis.
    pub fn density_dimension(&self) -> (usize, usize) {
        let sym: BTreeSet<Arrow> = self
            .arrows
            .iter()
            .flat_map(|a| [*a, a.inverse()])
            .collect();
        (sym.len(), self.groupoid.num_arrows())
    }

    /// `S ∩ S⁻¹`, the support of `𝒜 ∩ 𝒜*`.
    pub fn diagonal_intersection(&self) -> BTreeSet<Arrow> {
        self.arrows
            .iter()
            .filter(|a| self.arrows.contains(&a.inverse()))
            .copied()
            .collect()
    }

    /// True when every pair of points in the orbit is comparable.
    pub fn is_total_on(&self, orbit: &[PointId]) -> bool {
        orbit
            .iter()
            .all(|&x| orbit.iter().all(|&y| self.relates(x, y) || self.relates(y, x)))
    }

    fn report(&self) -> OrderReport {
        let g = &self.groupoid;
        let missing_units: Vec<Arrow> = g
            .units_iter()
            .filter(|u| !self.arrows.contains(u))
            .take(MAX_WITNESSES)
            .collect();

        let mut not_closed = Vec::new();
        'outer: for &a in &self.arrows {
            let lo = Arrow::new(a.source, PointId(0));
            let hi = Arrow::new(a.source, PointId(usize::MAX));
            for &b in self.arrows.range(lo..=hi) {
                if !self.arrows.contains(&Arrow::new(a.range, b.source)) {
                    not_closed.push((a, b));
                    if not_closed.len() == MAX_WITNESSES {
                        break 'outer;
                    }
                }
            }
        }

        let not_total: Vec<Arrow> = g
            .arrows()
            .iter()
            .filter(|a| !self.arrows.contains(a) && !self.arrows.contains(&a.inverse()))
            .take(MAX_WITNESSES)
            .copied()
            .collect();

        OrderReport {
            missing_units,
            not_closed,
            not_total,
        }
    }
}

/// Violated conditions of a candidate order, with up to three witnesses each.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct OrderReport {
    pub missing_units: Vec<Arrow>,
    /// Composable pairs in `S` whose composite is not in `S`.
    pub not_closed: Vec<(Arrow, Arrow)>,
    /// Arrows with neither themselves nor their inverse in `S`.
    pub not_total: Vec<Arrow>,
}

impl OrderReport {
    pub fn is_valid(&self) -> bool {
        self.missing_units.is_empty() && self.not_closed.is_empty() && self.not_total.is_empty()
    }

    pub fn describe(&self, g: &FiniteTwistedGroupoid) -> Vec<String> {
        let mut out = Vec::new();
        for u in &self.missing_units {
            out.push(format!("unit {} is not in the order", g.arrow_label(u)));
        }
        for (a, b) in &self.not_closed {
            out.push(format!(
                "order not closed: {} then {} composes outside it",
                g.arrow_label(a),
                g.arrow_label(b)
            ));
        }
        for a in &self.not_total {
            out.push(format!("neither {} nor its inverse is in the order", g.arrow_label(a)));
        }
        out
    }
}

/// A validated order: units, composition-closed and total.
#[derive(Debug, Clone)]
pub struct DirichletOrder {
    order: ArrowOrder,
    strong: bool,
}

impl DirichletOrder {
    pub fn order(&self) -> &ArrowOrder {
        &self.order
    }

    /// `S ∩ S⁻¹` is exactly the units.
    pub fn is_strong(&self) -> bool {
        self.strong
    }
}

impl std::ops::Deref for DirichletOrder {
    type Target = ArrowOrder;

    fn deref(&self) -> &ArrowOrder {
        &self.order
    }
}

/// Accepts `order` iff it contains the units, is closed under composition and
/// `S ∪ S⁻¹` covers every arrow.
pub fn validate_order(order: ArrowOrder) -> Result<DirichletOrder, OrderReport> {
    let report = order.report();
    if !report.is_valid() {
        return Err(report);
    }
    let units: BTreeSet<Arrow> = order.groupoid().units_iter().collect();
    let strong = order.diagonal_intersection() == units;
    Ok(DirichletOrder { order, strong })
}
