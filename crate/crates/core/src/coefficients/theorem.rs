use std::time::Instant;

use serde_json::{json, Map, Value};

use super::instance::QuiverInstance;
use super::routes::{Quantity, RouteRegistry};
use crate::error::Result;
use crate::poly::coeff_to_json;
use crate::poly::{Coeff, Theory};
use crate::shapes::PartitionSequence;

/// Route names for the three quantities; `auto` lets the registry choose.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RouteSelection {
    pub quiver: String,
    pub decomposition: String,
    pub structure: String,
}

impl Default for RouteSelection {
    fn default() -> Self {
        RouteSelection {
            quiver: "auto".into(),
            decomposition: "auto".into(),
            structure: "auto".into(),
        }
    }
}

impl RouteSelection {
    fn name(&self, q: Quantity) -> &str {
        match q {
            Quantity::Quiver => &self.quiver,
            Quantity::Decomposition => &self.decomposition,
            Quantity::StructureConstant => &self.structure,
        }
    }
}

#[derive(Clone, Debug)]
pub struct RouteValue {
    pub quantity: Quantity,
    pub route: String,
    pub value: Coeff,
    pub seconds: f64,
}

#[derive(Clone, Debug)]
pub struct TheoremReport {
    pub ranks: Value,
    pub mu: PartitionSequence,
    pub theory: Theory,
    pub values: Vec<RouteValue>,
    pub verdict: bool,
}

impl TheoremReport {
    /// JSON with sorted keys; wall-clock timings only when asked for, so
    /// that repeated runs are byte-identical by default.
    pub fn to_json(&self, timing: bool) -> Value {
        let mut values = Map::new();
        for v in &self.values {
            let mut entry = json!({ "route": v.route, "value": coeff_to_json(&v.value) });
            if timing {
                entry["seconds"] = json!(v.seconds);
            }
            values.insert(v.quantity.label().into(), entry);
        }
        json!({
            "ranks": self.ranks,
            "mu": self.mu,
            "theory": self.theory.name(),
            "values": values,
            "verdict": self.verdict,
        })
    }
}

/// Computes `(I)`, `(II)` and `(III)` at `μ` by the selected routes and
/// reports whether they coincide.
pub fn theorem_check(
    instance: &QuiverInstance,
    mu: &PartitionSequence,
    theory: Theory,
    selection: &RouteSelection,
    registry: &RouteRegistry,
) -> Result<TheoremReport> {
    instance.mu_tilde(mu)?;
    let mut values = Vec::with_capacity(3);
    for quantity in Quantity::ALL {
        let route = registry.resolve(selection.name(quantity), quantity, theory, instance)?;
        let start = Instant::now();
        let value = route.evaluate(instance, mu, theory)?;
        values.push(RouteValue {
            quantity,
            route: route.name().into(),
            value,
            seconds: start.elapsed().as_secs_f64(),
        });
    }
    let verdict = values.windows(2).all(|p| p[0].value == p[1].value);
    Ok(TheoremReport {
        ranks: instance.ranks.to_json(),
        mu: mu.clone(),
        theory,
        values,
        verdict,
    })
}
