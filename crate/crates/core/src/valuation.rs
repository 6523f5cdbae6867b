//! Quantile bundle evaluation, welfare aggregation and the binary threshold reduction.
//!
//! Chores are held as disutility magnitudes `d >= 0`. Their quantile is read on
//! `v = -d`, so the zero quantile picks the *worst* chore and quantile one the
//! *best*. Concretely the disutility of a bundle of size `s` is the
//! `(s - index + 1)`-th lowest disutility.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Allocation, Instance, Kind, Value, Welfare};
use crate::quantile::Quantile;

/// Reads the quantile value of `scratch` in place (the slice is reordered).
/// Empty bundles are worth 0 for goods and cost 0 for chores.
pub(crate) fn quantile_value(scratch: &mut [Value], tau: Quantile, kind: Kind) -> Value {
    let s = scratch.len();
    if s == 0 {
        return 0;
    }
    let idx = tau.index(s);
    let pos = match kind {
        Kind::Goods => idx - 1,
        Kind::Chores => s - idx,
    };
    let (_, v, _) = scratch.select_nth_unstable(pos);
    *v
}

/// Value (goods) or disutility (chores) that `agent` assigns to `bundle`.
pub fn bundle_value(instance: &Instance, agent: usize, bundle: &[usize]) -> Result<Value> {
    if agent >= instance.agents() {
        return Err(Error::AgentOutOfRange {
            agent,
            agents: instance.agents(),
        });
    }
    let row = instance.row(agent);
    let mut scratch = Vec::with_capacity(bundle.len());
    for &g in bundle {
        let v = *row.get(g).ok_or(Error::ItemOutOfRange {
            item: g,
            items: instance.items(),
        })?;
        scratch.push(v);
    }
    Ok(quantile_value(&mut scratch, instance.quantile(agent), instance.kind()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Objective {
    Usw,
    Esw,
    Usc,
    Esc,
}

impl Objective {
    pub const ALL: [Objective; 4] = [Objective::Usw, Objective::Esw, Objective::Usc, Objective::Esc];

    pub fn kind(self) -> Kind {
        match self {
            Objective::Usw | Objective::Esw => Kind::Goods,
            Objective::Usc | Objective::Esc => Kind::Chores,
        }
    }

    /// Costs are minimized, welfare maximized.
    pub fn is_cost(self) -> bool {
        self.kind() == Kind::Chores
    }

    pub fn is_utilitarian(self) -> bool {
        matches!(self, Objective::Usw | Objective::Usc)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Objective::Usw => "usw",
            Objective::Esw => "esw",
            Objective::Usc => "usc",
            Objective::Esc => "esc",
        }
    }

    /// Whether `a` is strictly better than `b` under this objective.
    pub fn improves(self, a: Welfare, b: Welfare) -> bool {
        if self.is_cost() {
            a < b
        } else {
            a > b
        }
    }

    pub fn evaluate(self, instance: &Instance, allocation: &Allocation) -> Result<Welfare> {
        instance.require_kind(self.kind(), self.as_str())?;
        check_fits(instance, allocation)?;
        Ok(Evaluator::new(instance).evaluate(self, allocation.owner()))
    }
}

impl fmt::Display for Objective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Objective {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "usw" => Ok(Objective::Usw),
            "esw" => Ok(Objective::Esw),
            "usc" => Ok(Objective::Usc),
            "esc" => Ok(Objective::Esc),
            other => Err(Error::Unsupported(format!("unknown objective `{other}`"))),
        }
    }
}

fn check_fits(instance: &Instance, allocation: &Allocation) -> Result<()> {
    if allocation.items() != instance.items() {
        return Err(Error::InvalidAllocation(format!(
            "{} owners for {} items",
            allocation.items(),
            instance.items()
        )));
    }
    if let Some(&a) = allocation.owner().iter().find(|&&a| a >= instance.agents()) {
        return Err(Error::AgentOutOfRange {
            agent: a,
            agents: instance.agents(),
        });
    }
    Ok(())
}

/// Utilitarian welfare: sum of bundle values.
pub fn usw(instance: &Instance, allocation: &Allocation) -> Result<Welfare> {
    Objective::Usw.evaluate(instance, allocation)
}

/// Egalitarian welfare: minimum bundle value.
pub fn esw(instance: &Instance, allocation: &Allocation) -> Result<Welfare> {
    Objective::Esw.evaluate(instance, allocation)
}

/// Utilitarian social cost: sum of bundle disutilities.
pub fn usc(instance: &Instance, allocation: &Allocation) -> Result<Welfare> {
    Objective::Usc.evaluate(instance, allocation)
}

/// Egalitarian social cost: maximum bundle disutility.
pub fn esc(instance: &Instance, allocation: &Allocation) -> Result<Welfare> {
    Objective::Esc.evaluate(instance, allocation)
}

/// Per-agent bundle values of an allocation (goods values or chore disutilities).
pub fn agent_values(instance: &Instance, allocation: &Allocation) -> Result<Vec<Value>> {
    check_fits(instance, allocation)?;
    let mut ev = Evaluator::new(instance);
    ev.fill(allocation.owner());
    Ok(ev.values())
}

/// Reusable evaluator that keeps per-agent scratch buffers; used by the
/// oracle's inner loop. Does not validate owners.
pub(crate) struct Evaluator<'a> {
    instance: &'a Instance,
    scratch: Vec<Vec<Value>>,
}

impl<'a> Evaluator<'a> {
    pub(crate) fn new(instance: &'a Instance) -> Self {
        Self {
            instance,
            scratch: vec![Vec::with_capacity(instance.items()); instance.agents()],
        }
    }

    fn fill(&mut self, owner: &[usize]) {
        for s in &mut self.scratch {
            s.clear();
        }
        for (g, &a) in owner.iter().enumerate() {
            self.scratch[a].push(self.instance.value(a, g));
        }
    }

    fn values(&mut self) -> Vec<Value> {
        let kind = self.instance.kind();
        let quantiles = self.instance.quantiles();
        self.scratch
            .iter_mut()
            .zip(quantiles)
            .map(|(s, &tau)| quantile_value(s, tau, kind))
            .collect()
    }

    pub(crate) fn evaluate(&mut self, objective: Objective, owner: &[usize]) -> Welfare {
        self.fill(owner);
        let kind = self.instance.kind();
        let quantiles = self.instance.quantiles();
        let vals = self
            .scratch
            .iter_mut()
            .zip(quantiles)
            .map(|(s, &tau)| quantile_value(s, tau, kind) as i64);
        Welfare(match objective {
            Objective::Usw | Objective::Usc => vals.sum(),
            Objective::Esw => vals.min().unwrap_or(0),
            Objective::Esc => vals.max().unwrap_or(0),
        })
    }
}

/// Binary instance with entry 1 exactly where the original entry is `>= nu`.
/// Kind and quantiles are preserved.
///
/// For goods, an allocation has ESW `>= nu` iff it has ESW 1 on the result.
/// For chores, ESC `<= nu - 1` iff ESC 0 on the result.
pub fn threshold_binary(instance: &Instance, nu: Value) -> Instance {
    debug_assert!(nu > 0);
    let values = instance
        .values()
        .iter()
        .map(|row| row.iter().map(|&v| Value::from(v >= nu)).collect())
        .collect();
    Instance::new(instance.kind(), instance.quantiles().to_vec(), values)
        .expect("thresholding preserves dimensions")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(s: &str) -> Quantile {
        s.parse().unwrap()
    }

    #[test]
    fn bundle_value_examples() {
        let goods = Instance::homogeneous(Kind::Goods, q("1/2"), vec![vec![3, 7, 2]]).unwrap();
        assert_eq!(bundle_value(&goods, 0, &[0, 1, 2]).unwrap(), 3);
        assert_eq!(bundle_value(&goods, 0, &[]).unwrap(), 0);

        let chores = Instance::homogeneous(Kind::Chores, Quantile::ZERO, vec![vec![3, 7, 2]]).unwrap();
        assert_eq!(bundle_value(&chores, 0, &[0, 1, 2]).unwrap(), 7);
        assert_eq!(bundle_value(&chores, 0, &[]).unwrap(), 0);

        let optimist = Instance::homogeneous(Kind::Chores, Quantile::ONE, vec![vec![3, 7, 2]]).unwrap();
        assert_eq!(bundle_value(&optimist, 0, &[0, 1, 2]).unwrap(), 2);

        assert!(matches!(
            bundle_value(&goods, 1, &[0]),
            Err(Error::AgentOutOfRange { agent: 1, agents: 1 })
        ));
        assert!(bundle_value(&goods, 0, &[3]).is_err());
    }

    #[test]
    fn chores_half_pair_is_its_maximum() {
        let chores = Instance::homogeneous(Kind::Chores, q("1/2"), vec![vec![4, 1]]).unwrap();
        assert_eq!(bundle_value(&chores, 0, &[0, 1]).unwrap(), 4);
    }

    #[test]
    fn welfare_examples() {
        let inst = Instance::homogeneous(
            Kind::Goods,
            q("1/2"),
            vec![vec![5, 4, 1, 0], vec![5, 1, 3, 2]],
        )
        .unwrap();
        let a = Allocation::new(vec![0, 0, 1, 1], 2).unwrap();
        assert_eq!(usw(&inst, &a).unwrap(), Welfare(6));
        assert_eq!(esw(&inst, &a).unwrap(), Welfare(2));
        assert!(usc(&inst, &a).is_err());

        let zeros = Instance::homogeneous(Kind::Goods, q("1/3"), vec![vec![0; 3]; 2]).unwrap();
        let b = Allocation::new(vec![0, 1, 1], 2).unwrap();
        assert_eq!(usw(&zeros, &b).unwrap(), Welfare(0));
        assert_eq!(esw(&zeros, &b).unwrap(), Welfare(0));

        let single = Instance::homogeneous(Kind::Goods, q("2/3"), vec![vec![4, 9, 1]]).unwrap();
        let all = Allocation::new(vec![0, 0, 0], 1).unwrap();
        assert_eq!(usw(&single, &all).unwrap(), Welfare(4));
        assert_eq!(esw(&single, &all).unwrap(), Welfare(4));
    }

    #[test]
    fn cost_examples() {
        // tau = 1, one zero chore: that agent takes everything at cost 0.
        let inst = Instance::homogeneous(Kind::Chores, Quantile::ONE, vec![vec![2, 5], vec![0, 3]]).unwrap();
        let a = Allocation::new(vec![1, 1], 2).unwrap();
        assert_eq!(esc(&inst, &a).unwrap(), Welfare(0));
        assert_eq!(usc(&inst, &a).unwrap(), Welfare(0));

        let setcover = Instance::homogeneous(Kind::Chores, Quantile::ZERO, vec![vec![1, 1, 9], vec![9, 9, 2]]).unwrap();
        let b = Allocation::new(vec![0, 0, 1], 2).unwrap();
        assert_eq!(usc(&setcover, &b).unwrap(), Welfare(3));
        assert_eq!(esc(&setcover, &b).unwrap(), Welfare(2));
        assert!(usw(&setcover, &b).is_err());
    }

    #[test]
    fn threshold_examples() {
        let inst = Instance::homogeneous(Kind::Goods, q("1/2"), vec![vec![5, 4, 1, 0]]).unwrap();
        assert_eq!(threshold_binary(&inst, 2).values(), &[vec![1, 1, 0, 0]]);
        let ones = Instance::homogeneous(Kind::Goods, q("1/2"), vec![vec![3, 1, 2]]).unwrap();
        assert_eq!(threshold_binary(&ones, 1).values(), &[vec![1, 1, 1]]);
        assert_eq!(threshold_binary(&ones, 4).values(), &[vec![0, 0, 0]]);
        assert_eq!(threshold_binary(&ones, 4).quantiles(), ones.quantiles());
    }

    fn arb_tau() -> impl Strategy<Value = Quantile> {
        (0u32..=6, 1u32..=6).prop_filter_map("tau <= 1", |(p, q)| Quantile::new(p, q).ok())
    }

    proptest! {
        #[test]
        fn value_is_member_and_order_free(
            row in prop::collection::vec(0u32..20, 1..8),
            tau in arb_tau(),
            chores in any::<bool>(),
            seed in any::<u64>(),
        ) {
            let kind = if chores { Kind::Chores } else { Kind::Goods };
            let m = row.len();
            let inst = Instance::homogeneous(kind, tau, vec![row.clone()]).unwrap();
            let bundle: Vec<usize> = (0..m).collect();
            let v = bundle_value(&inst, 0, &bundle).unwrap();
            prop_assert!(row.contains(&v));
            let mut shuffled = bundle.clone();
            let rot = (seed as usize) % m;
            shuffled.rotate_left(rot);
            shuffled.reverse();
            prop_assert_eq!(bundle_value(&inst, 0, &shuffled).unwrap(), v);
        }

        #[test]
        fn monotone_in_tau(row in prop::collection::vec(0u32..20, 1..8), a in arb_tau(), b in arb_tau()) {
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            let bundle: Vec<usize> = (0..row.len()).collect();
            let g = |t| bundle_value(&Instance::homogeneous(Kind::Goods, t, vec![row.clone()]).unwrap(), 0, &bundle).unwrap();
            let c = |t| bundle_value(&Instance::homogeneous(Kind::Chores, t, vec![row.clone()]).unwrap(), 0, &bundle).unwrap();
            prop_assert!(g(lo) <= g(hi));
            prop_assert!(c(lo) >= c(hi));
        }

        #[test]
        fn scaling_scales_value(row in prop::collection::vec(0u32..50, 1..8), tau in arb_tau(), c in 1u32..10) {
            let bundle: Vec<usize> = (0..row.len()).collect();
            let scaled: Vec<u32> = row.iter().map(|v| v * c).collect();
            let base = bundle_value(&Instance::homogeneous(Kind::Goods, tau, vec![row]).unwrap(), 0, &bundle).unwrap();
            let big = bundle_value(&Instance::homogeneous(Kind::Goods, tau, vec![scaled]).unwrap(), 0, &bundle).unwrap();
            prop_assert_eq!(big, base * c);
        }

        /// Chores disutility equals minus the goods quantile of the negated row.
        #[test]
        fn chores_sign_convention(row in prop::collection::vec(0u32..20, 1..8), tau in arb_tau()) {
            let bundle: Vec<usize> = (0..row.len()).collect();
            let d = bundle_value(&Instance::homogeneous(Kind::Chores, tau, vec![row.clone()]).unwrap(), 0, &bundle).unwrap();
            let mut neg: Vec<i64> = row.iter().map(|&x| -(x as i64)).collect();
            neg.sort_unstable();
            let v = neg[tau.index(neg.len()) - 1];
            prop_assert_eq!(d as i64, -v);
        }
    }
}
