//! The JSON monoid specification accepted by the command line tool.

use serde::{Deserialize, Serialize};

use crate::cones::{Budget, DualVector, RationalCone, DEFAULT_POINT_BUDGET};
use crate::error::Error;
use crate::monoid::MonoidStructure;
use crate::points::DEFAULT_DEGREE_BOUND;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Budgets {
    #[serde(default)]
    pub points: Option<u64>,
    #[serde(default)]
    pub degree_bound: Option<u32>,
    #[serde(default)]
    pub root_bound: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonoidSpec {
    pub dim: usize,
    pub rays: Vec<Vec<i64>>,
    pub distinguished_ray: usize,
    pub e1: Vec<i64>,
    pub e2: Vec<i64>,
    #[serde(default)]
    pub generator_names: Option<Vec<String>>,
    #[serde(default)]
    pub budgets: Option<Budgets>,
}

#[derive(Debug, thiserror::Error)]
pub enum SpecError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("schema error in `{field}`: {message}")]
    Schema { field: String, message: String },
    #[error("validation error: {0}")]
    Validation(#[from] Error),
}

/// Parse and shape-check a spec. Geometric validation happens in
/// [`MonoidSpec::build`].
pub fn parse_spec(text: &str) -> Result<MonoidSpec, SpecError> {
    let spec: MonoidSpec = serde_json::from_str(text).map_err(|e| {
        use serde_json::error::Category;
        match e.classify() {
            Category::Data => SpecError::Schema { field: "spec".into(), message: e.to_string() },
            _ => SpecError::Parse { line: e.line(), column: e.column(), message: e.to_string() },
        }
    })?;
    spec.check_shape()?;
    Ok(spec)
}

impl MonoidSpec {
    fn check_shape(&self) -> Result<(), SpecError> {
        let schema = |field: String, message: String| Err(SpecError::Schema { field, message });
        if self.dim == 0 {
            return schema("dim".into(), "must be at least 1".into());
        }
        if self.rays.is_empty() {
            return schema("rays".into(), "at least one ray is required".into());
        }
        for (i, r) in self.rays.iter().enumerate() {
            if r.len() != self.dim {
                return schema(format!("rays[{i}]"), format!("has length {}, expected {}", r.len(), self.dim));
            }
        }
        if self.distinguished_ray >= self.rays.len() {
            return schema(
                "distinguished_ray".into(),
                format!("index {} out of range for {} rays", self.distinguished_ray, self.rays.len()),
            );
        }
        for (name, v) in [("e1", &self.e1), ("e2", &self.e2)] {
            if v.len() != self.dim {
                return schema(name.into(), format!("has length {}, expected {}", v.len(), self.dim));
            }
        }
        Ok(())
    }

    /// Point budget: `override_points` wins over the spec, which wins over
    /// the default.
    pub fn budget(&self, override_points: Option<u64>) -> Budget {
        let spec = self.budgets.as_ref().and_then(|b| b.points);
        Budget::new(override_points.or(spec).unwrap_or(DEFAULT_POINT_BUDGET))
    }

    pub fn degree_bound(&self) -> u32 {
        self.budgets.as_ref().and_then(|b| b.degree_bound).unwrap_or(DEFAULT_DEGREE_BOUND)
    }

    pub fn root_bound(&self) -> Option<u32> {
        self.budgets.as_ref().and_then(|b| b.root_bound)
    }

    pub fn build(&self, budget: Budget) -> Result<MonoidStructure, SpecError> {
        let cone = RationalCone::new(&self.rays)?;
        Ok(MonoidStructure::build(
            cone,
            self.distinguished_ray,
            DualVector(self.e1.clone()),
            DualVector(self.e2.clone()),
            budget,
        )?)
    }

    /// Display names for the Hilbert generators, plus a warning when the
    /// supplied names do not fit.
    pub fn names(&self, generators: usize) -> (Vec<String>, Option<String>) {
        let auto = || (1..=generators).map(|i| format!("x{i}")).collect();
        match &self.generator_names {
            Some(n) if n.len() == generators => (n.clone(), None),
            Some(n) => (
                auto(),
                Some(format!(
                    "{} generator names given but the Hilbert basis has {generators} elements; using x1..x{generators}",
                    n.len()
                )),
            ),
            None => (auto(), None),
        }
    }
}
