//! The on-disk model description: a TOML document holding a groupoid, an
//! optional cocycle table, an optional order and an optional permutation.
//!
//! ```toml
//! version = 1
//! name = "taf2"
//! points = ["1", "2"]
//! arrows = [["1", "1"], ["1", "2"], ["2", "1"], ["2", "2"]]
//!
//! [order]
//! arrows = [["1", "1"], ["1", "2"], ["2", "2"]]
//! ```
//!
//! Arrows are `[range, source]` pairs of point names. Serialization is
//! canonical: arrows in sorted order, cocycle entries sorted by pair.

use std::path::Path;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::dirichlet::{validate_order, ArrowOrder, DirichletOrder, OrderReport};
use crate::error::{GroupoidError, SpecError};
use crate::groupoid::{Arrow, FiniteTwistedGroupoid, UnitSpace};
use crate::semicrossed::FiniteDynamicalSystem;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupoidSpec {
    pub version: u32,
    pub name: String,
    pub points: Vec<String>,
    pub arrows: Vec<[String; 2]>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub cocycle: Vec<CocycleEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<OrderBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dynamics: Option<DynamicsBlock>,
}

/// `σ(first, second) = re + i·im`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CocycleEntry {
    pub first: [String; 2],
    pub second: [String; 2],
    pub re: f64,
    pub im: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrderBlock {
    pub arrows: Vec<[String; 2]>,
}

/// `images[i]` is the image of `points[i]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DynamicsBlock {
    pub points: Vec<String>,
    pub images: Vec<String>,
}

impl GroupoidSpec {
    pub fn parse(text: &str) -> Result<Self, SpecError> {
        let spec: GroupoidSpec = toml::from_str(text).map_err(|e| SpecError::Parse {
            offset: e.span().map_or(text.len(), |s| s.start),
            message: e.message().to_string(),
        })?;
        if spec.version != FORMAT_VERSION {
            return Err(SpecError::Version(spec.version));
        }
        Ok(spec)
    }

    pub fn serialize(&self) -> Result<String, SpecError> {
        toml::to_string(self).map_err(|e| SpecError::Serialize(e.to_string()))
    }

    /// Canonical description of a model.
    pub fn from_parts(
        name: &str,
        g: &FiniteTwistedGroupoid,
        order: Option<&ArrowOrder>,
        dynamics: Option<&FiniteDynamicalSystem>,
    ) -> Self {
        let pair = |a: &Arrow| [g.point_name(a.range).to_string(), g.point_name(a.source).to_string()];
        GroupoidSpec {
            version: FORMAT_VERSION,
            name: name.to_string(),
            points: g.units().names().to_vec(),
            arrows: g.arrows().iter().map(pair).collect(),
            cocycle: g
                .cocycle_table()
                .iter()
                .map(|((a, b), v)| CocycleEntry {
                    first: pair(a),
                    second: pair(b),
                    re: v.re,
                    im: v.im,
                })
                .collect(),
            order: order.map(|o| OrderBlock {
                arrows: o.arrows().iter().map(pair).collect(),
            }),
            dynamics: dynamics.map(|d| DynamicsBlock {
                points: d.units().names().to_vec(),
                images: d.images().iter().map(|&i| d.units().names()[i].clone()).collect(),
            }),
        }
    }

    /// Builds and validates the objects described by this document. An
    /// invalid groupoid is an error; an order is kept even when it fails
    /// validation, together with its report.
    pub fn to_model(&self) -> Result<Model, SpecError> {
        let units = UnitSpace::new(self.points.iter().cloned())?;
        let arrow = |[r, s]: &[String; 2]| -> Result<Arrow, GroupoidError> {
            Ok(Arrow::new(units.lookup(r)?, units.lookup(s)?))
        };
        let arrows = self.arrows.iter().map(arrow).collect::<Result<Vec<_>, _>>()?;
        let cocycle = self
            .cocycle
            .iter()
            .map(|c| Ok(((arrow(&c.first)?, arrow(&c.second)?), Complex64::new(c.re, c.im))))
            .collect::<Result<Vec<_>, GroupoidError>>()?;
        let g = FiniteTwistedGroupoid::from_parts_unchecked(units.clone(), arrows, cocycle);
        let report = g.validate();
        if !report.is_valid() {
            return Err(SpecError::Validation(report.describe(&units)));
        }
        let g = Arc::new(g);

        let order = match &self.order {
            None => None,
            Some(block) => {
                let arrows = block.arrows.iter().map(arrow).collect::<Result<Vec<_>, _>>()?;
                let raw = ArrowOrder::new(&g, arrows).map_err(|e| SpecError::Validation(vec![e.to_string()]))?;
                let validated = validate_order(raw.clone());
                Some(LoadedOrder { raw, validated })
            }
        };
        let dynamics = match &self.dynamics {
            None => None,
            Some(block) => Some(Arc::new(FiniteDynamicalSystem::new(&block.points, &block.images)?)),
        };
        Ok(Model {
            name: self.name.clone(),
            groupoid: g,
            order,
            dynamics,
        })
    }
}

/// An order as read from a file, with the outcome of validating it.
#[derive(Debug, Clone)]
pub struct LoadedOrder {
    pub raw: ArrowOrder,
    pub validated: Result<DirichletOrder, OrderReport>,
}

#[derive(Debug, Clone)]
pub struct Model {
    pub name: String,
    pub groupoid: Arc<FiniteTwistedGroupoid>,
    pub order: Option<LoadedOrder>,
    pub dynamics: Option<Arc<FiniteDynamicalSystem>>,
}

impl Model {
    pub fn to_spec(&self) -> GroupoidSpec {
        GroupoidSpec::from_parts(
            &self.name,
            &self.groupoid,
            self.order.as_ref().map(|o| &o.raw),
            self.dynamics.as_deref(),
        )
    }
}

pub fn parse(text: &str) -> Result<Model, SpecError> {
    GroupoidSpec::parse(text)?.to_model()
}

/// Reads and builds a model; IO failures surface as `std::io::Error`.
pub fn load(path: &Path) -> std::io::Result<Result<Model, SpecError>> {
    Ok(parse(&std::fs::read_to_string(path)?))
}
