use super::instance::QuiverInstance;
use super::kogan::schubert_constant_kogan;
use super::tableau::decomposition_coefficients_tableau;
use crate::error::{Error, Result};
use crate::poly::{Coeff, Theory};
use crate::shapes::PartitionSequence;

/// Products above this degree are left to the chain search.
const PRODUCT_DEGREE_LIMIT: usize = 40;

/// The three numbers the main theorem identifies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Quantity {
    /// `c_μ(r)`
    Quiver,
    /// `b_{μ̃}(v(r))`
    Decomposition,
    /// `C^{w(ρ(μ),d)}_{v(r), w(ρ,d)}`
    StructureConstant,
}

impl Quantity {
    pub fn label(self) -> &'static str {
        match self {
            Quantity::Quiver => "I",
            Quantity::Decomposition => "II",
            Quantity::StructureConstant => "III",
        }
    }

    pub const ALL: [Quantity; 3] = [Quantity::Quiver, Quantity::Decomposition, Quantity::StructureConstant];
}

/// One way of computing one of the three quantities at a given `μ`.
pub trait CoefficientRoute: Send + Sync {
    fn name(&self) -> &'static str;
    fn quantity(&self) -> Quantity;
    fn supports(&self, theory: Theory) -> bool;
    /// Whether the route is expected to finish on this instance; used when
    /// the route is picked automatically.
    fn feasible(&self, _instance: &QuiverInstance) -> bool {
        true
    }
    fn evaluate(&self, instance: &QuiverInstance, mu: &PartitionSequence, theory: Theory) -> Result<Coeff>;
}

struct Ratio;

impl CoefficientRoute for Ratio {
    fn name(&self) -> &'static str {
        "ratio"
    }
    fn quantity(&self) -> Quantity {
        Quantity::Quiver
    }
    fn supports(&self, _: Theory) -> bool {
        true
    }
    fn evaluate(&self, q: &QuiverInstance, mu: &PartitionSequence, theory: Theory) -> Result<Coeff> {
        q.mu_tilde(mu)?;
        Ok(q.ratio_table(theory, Some(mu.total_size()))?.table.get(mu))
    }
}

struct Decomposition;

impl CoefficientRoute for Decomposition {
    fn name(&self) -> &'static str {
        "decomposition"
    }
    fn quantity(&self) -> Quantity {
        Quantity::Decomposition
    }
    fn supports(&self, _: Theory) -> bool {
        true
    }
    fn evaluate(&self, q: &QuiverInstance, mu: &PartitionSequence, theory: Theory) -> Result<Coeff> {
        let tilde = q.mu_tilde(mu)?;
        Ok(q.decomposition_table(theory, Some(tilde.total_size()))?.table.get(&tilde))
    }
}

struct TableauRule;

impl CoefficientRoute for TableauRule {
    fn name(&self) -> &'static str {
        "tableau"
    }
    fn quantity(&self) -> Quantity {
        Quantity::Decomposition
    }
    fn supports(&self, theory: Theory) -> bool {
        theory == Theory::Cohomology
    }
    fn evaluate(&self, q: &QuiverInstance, mu: &PartitionSequence, theory: Theory) -> Result<Coeff> {
        require(self, theory)?;
        let tilde = q.mu_tilde(mu)?;
        let blocks = q.derived.decomposition_blocks();
        Ok(decomposition_coefficients_tableau(q.zelevinsky(), &blocks, &tilde)?.into())
    }
}

struct Product;

impl CoefficientRoute for Product {
    fn name(&self) -> &'static str {
        "product"
    }
    fn quantity(&self) -> Quantity {
        Quantity::StructureConstant
    }
    fn supports(&self, _: Theory) -> bool {
        true
    }
    fn feasible(&self, q: &QuiverInstance) -> bool {
        q.zelevinsky().length() + q.derived.rho.size() as usize <= PRODUCT_DEGREE_LIMIT
    }
    fn evaluate(&self, q: &QuiverInstance, mu: &PartitionSequence, theory: Theory) -> Result<Coeff> {
        let w = q.target_permutation(mu)?;
        Ok(q.product_table(theory, Some(w.length() as u32))?.table.get(&w))
    }
}

struct Kogan;

impl CoefficientRoute for Kogan {
    fn name(&self) -> &'static str {
        "kogan"
    }
    fn quantity(&self) -> Quantity {
        Quantity::StructureConstant
    }
    fn supports(&self, theory: Theory) -> bool {
        theory == Theory::Cohomology
    }
    fn evaluate(&self, q: &QuiverInstance, mu: &PartitionSequence, theory: Theory) -> Result<Coeff> {
        require(self, theory)?;
        let w = q.target_permutation(mu)?;
        Ok(schubert_constant_kogan(q.zelevinsky(), &q.derived.rho, q.d(), &w)?.into())
    }
}

fn require(route: &dyn CoefficientRoute, theory: Theory) -> Result<()> {
    if route.supports(theory) {
        Ok(())
    } else {
        Err(Error::Unsupported {
            route: route.name().into(),
            what: theory.name().into(),
        })
    }
}

/// Routes by name. Registration order doubles as the preference order for
/// `auto`.
pub struct RouteRegistry {
    routes: Vec<Box<dyn CoefficientRoute>>,
}

impl Default for RouteRegistry {
    fn default() -> Self {
        let mut reg = RouteRegistry::empty();
        reg.register(Box::new(Ratio));
        reg.register(Box::new(TableauRule));
        reg.register(Box::new(Decomposition));
        reg.register(Box::new(Product));
        reg.register(Box::new(Kogan));
        reg
    }
}

impl RouteRegistry {
    pub fn empty() -> Self {
        RouteRegistry { routes: Vec::new() }
    }

    /// Adds a route, replacing any route of the same name.
    pub fn register(&mut self, route: Box<dyn CoefficientRoute>) {
        self.routes.retain(|r| r.name() != route.name());
        self.routes.push(route);
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.routes.iter().map(|r| r.name()).collect()
    }

    pub fn get(&self, name: &str) -> Result<&dyn CoefficientRoute> {
        self.routes
            .iter()
            .find(|r| r.name() == name)
            .map(|r| r.as_ref())
            .ok_or_else(|| Error::UnknownRoute(name.into()))
    }

    /// Looks up `name` for `quantity`; `auto` picks the first registered
    /// route that supports the theory and is feasible on the instance.
    pub fn resolve(
        &self,
        name: &str,
        quantity: Quantity,
        theory: Theory,
        instance: &QuiverInstance,
    ) -> Result<&dyn CoefficientRoute> {
        if name == "auto" {
            return self
                .routes
                .iter()
                .find(|r| r.quantity() == quantity && r.supports(theory) && r.feasible(instance))
                .map(|r| r.as_ref())
                .ok_or_else(|| Error::Unsupported {
                    route: "auto".into(),
                    what: format!("quantity {} in {}", quantity.label(), theory.name()),
                });
        }
        let route = self.get(name)?;
        if route.quantity() != quantity {
            return Err(Error::Unsupported {
                route: name.into(),
                what: format!("quantity {}", quantity.label()),
            });
        }
        require(route, theory)?;
        Ok(route)
    }
}
