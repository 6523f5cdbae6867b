//! Instances, allocations and solver reports.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quantile::Quantile;

/// Item values. Chores store non-negative disutility magnitudes.
pub type Value = u32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Goods,
    Chores,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Goods => "goods",
            Kind::Chores => "chores",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Kind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "goods" => Ok(Kind::Goods),
            "chores" => Ok(Kind::Chores),
            other => Err(Error::InvalidInstance(format!(
                "unknown kind `{other}` (expected goods or chores)"
            ))),
        }
    }
}

/// `n` agents, `m` items, one quantile per agent and an `n x m` value matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    kind: Kind,
    quantiles: Vec<Quantile>,
    values: Vec<Vec<Value>>,
}

impl Instance {
    pub fn new(kind: Kind, quantiles: Vec<Quantile>, values: Vec<Vec<Value>>) -> Result<Self> {
        if quantiles.is_empty() {
            return Err(Error::InvalidInstance("at least one agent required".into()));
        }
        if values.len() != quantiles.len() {
            return Err(Error::InvalidInstance(format!(
                "{} quantiles but {} value rows",
                quantiles.len(),
                values.len()
            )));
        }
        let m = values[0].len();
        if m == 0 {
            return Err(Error::InvalidInstance("at least one item required".into()));
        }
        if let Some((i, row)) = values.iter().enumerate().find(|(_, r)| r.len() != m) {
            return Err(Error::InvalidInstance(format!(
                "row {i} has {} entries, expected {m}",
                row.len()
            )));
        }
        Ok(Self {
            kind,
            quantiles,
            values,
        })
    }

    /// Every agent shares `tau`.
    pub fn homogeneous(kind: Kind, tau: Quantile, values: Vec<Vec<Value>>) -> Result<Self> {
        let n = values.len();
        Self::new(kind, vec![tau; n], values)
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn agents(&self) -> usize {
        self.quantiles.len()
    }

    pub fn items(&self) -> usize {
        self.values[0].len()
    }

    pub fn quantiles(&self) -> &[Quantile] {
        &self.quantiles
    }

    pub fn quantile(&self, agent: usize) -> Quantile {
        self.quantiles[agent]
    }

    pub fn values(&self) -> &[Vec<Value>] {
        &self.values
    }

    pub fn row(&self, agent: usize) -> &[Value] {
        &self.values[agent]
    }

    pub fn value(&self, agent: usize, item: usize) -> Value {
        self.values[agent][item]
    }

    pub fn is_binary(&self) -> bool {
        self.values.iter().flatten().all(|&v| v <= 1)
    }

    pub fn is_identical(&self) -> bool {
        let first = (&self.values[0], self.quantiles[0]);
        self.values
            .iter()
            .zip(&self.quantiles)
            .all(|(row, &tau)| (row, tau) == first)
    }

    /// The shared quantile, if every agent has the same one.
    pub fn common_quantile(&self) -> Option<Quantile> {
        let tau = self.quantiles[0];
        self.quantiles.iter().all(|&t| t == tau).then_some(tau)
    }

    /// `m / n` when `n` divides `m`.
    pub fn bundle_size(&self) -> Option<usize> {
        let (n, m) = (self.agents(), self.items());
        (m % n == 0).then_some(m / n)
    }

    pub(crate) fn require_kind(&self, kind: Kind, operation: &'static str) -> Result<()> {
        if self.kind == kind {
            Ok(())
        } else {
            Err(Error::KindMismatch {
                operation,
                expected: kind.as_str(),
            })
        }
    }

    pub(crate) fn require_balanced(&self) -> Result<usize> {
        self.bundle_size().ok_or(Error::NotDivisible {
            agents: self.agents(),
            items: self.items(),
        })
    }

    pub(crate) fn require_binary(&self, operation: &'static str) -> Result<()> {
        if self.is_binary() {
            Ok(())
        } else {
            Err(Error::NotBinary(operation))
        }
    }

    pub(crate) fn require_quantile(&self, tau: Quantile, operation: &'static str) -> Result<()> {
        match self.quantiles.iter().find(|&&t| t != tau) {
            None => Ok(()),
            Some(found) => Err(Error::QuantileMismatch {
                operation,
                expected: tau.to_string(),
                found: found.to_string(),
            }),
        }
    }

    /// Sorted distinct entries of the matrix.
    pub fn distinct_values(&self) -> Vec<Value> {
        let mut all: Vec<Value> = self.values.iter().flatten().copied().collect();
        all.sort_unstable();
        all.dedup();
        all
    }
}

/// A total assignment of items to agents: `owner[g]` holds item `g`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Allocation {
    owner: Vec<usize>,
}

impl Allocation {
    pub fn new(owner: Vec<usize>, agents: usize) -> Result<Self> {
        if let Some((g, &a)) = owner.iter().enumerate().find(|(_, &a)| a >= agents) {
            return Err(Error::InvalidAllocation(format!(
                "item {g} owned by agent {a}, but there are only {agents} agents"
            )));
        }
        Ok(Self { owner })
    }

    /// Checks that the allocation fits `instance` (one owner per item, owners in range).
    pub fn for_instance(owner: Vec<usize>, instance: &Instance) -> Result<Self> {
        if owner.len() != instance.items() {
            return Err(Error::InvalidAllocation(format!(
                "{} owners for {} items",
                owner.len(),
                instance.items()
            )));
        }
        Self::new(owner, instance.agents())
    }

    /// Builds an allocation from explicit bundles; every item must appear exactly once.
    pub fn from_bundles(bundles: &[Vec<usize>], items: usize) -> Result<Self> {
        let mut owner = vec![usize::MAX; items];
        for (agent, bundle) in bundles.iter().enumerate() {
            for &g in bundle {
                if g >= items {
                    return Err(Error::ItemOutOfRange { item: g, items });
                }
                if owner[g] != usize::MAX {
                    return Err(Error::InvalidAllocation(format!("item {g} assigned twice")));
                }
                owner[g] = agent;
            }
        }
        if let Some(g) = owner.iter().position(|&a| a == usize::MAX) {
            return Err(Error::InvalidAllocation(format!("item {g} unassigned")));
        }
        Ok(Self { owner })
    }

    /// Everything to agent 0.
    pub(crate) fn all_to_first(items: usize) -> Self {
        Self {
            owner: vec![0; items],
        }
    }

    /// Contiguous blocks of `k` items per agent.
    pub(crate) fn blocks(agents: usize, k: usize) -> Self {
        Self {
            owner: (0..agents * k).map(|g| g / k).collect(),
        }
    }

    pub(crate) fn from_owner_unchecked(owner: Vec<usize>) -> Self {
        Self { owner }
    }

    pub fn owner(&self) -> &[usize] {
        &self.owner
    }

    pub fn owner_of(&self, item: usize) -> usize {
        self.owner[item]
    }

    pub fn items(&self) -> usize {
        self.owner.len()
    }

    pub fn bundles(&self, agents: usize) -> Vec<Vec<usize>> {
        let mut bundles = vec![Vec::new(); agents];
        for (g, &a) in self.owner.iter().enumerate() {
            bundles[a].push(g);
        }
        bundles
    }

    pub fn bundle_sizes(&self, agents: usize) -> Vec<usize> {
        let mut sizes = vec![0; agents];
        for &a in &self.owner {
            sizes[a] += 1;
        }
        sizes
    }

    pub fn is_balanced(&self, agents: usize) -> bool {
        let m = self.owner.len();
        m.is_multiple_of(agents) && self.bundle_sizes(agents).iter().all(|&s| s == m / agents)
    }

    pub fn into_owner(self) -> Vec<usize> {
        self.owner
    }
}

/// Welfare for goods instances, social cost for chores.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Welfare(pub i64);

impl Welfare {
    pub fn get(self) -> i64 {
        self.0
    }
}

impl fmt::Display for Welfare {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Result of a solver run. `feasible` is meaningful for decision-style solvers
/// (binary ESW/ESC); optimizing solvers always set it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveReport {
    pub allocation: Allocation,
    pub welfare: Welfare,
    pub algorithm: &'static str,
    pub feasible: bool,
}
