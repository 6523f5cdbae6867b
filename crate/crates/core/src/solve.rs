//! Algorithm selection shared by the command line and the C interface.

use std::fmt;
use std::str::FromStr;

use crate::chores::{balanced_esc, esc_tau0, esc_tau1, usc_tau0_setcover};
use crate::error::{Error, Result};
use crate::esw::{balanced_esw, identical_unbalanced_esw, unbalanced_esw, EswRule};
use crate::model::{Allocation, Instance, SolveReport};
use crate::usw::{greedy_balanced_usw, identical_binary_usw_unbalanced, optimistic_exact_usw, scapegoat_usw};
use crate::valuation::Objective;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Algorithm {
    #[default]
    Auto,
    Greedy,
    Scapegoat,
    Optimistic,
    Matching,
    Frac,
    Third,
    Tau0,
    Tau1,
    Setcover,
    Identical,
}

impl Algorithm {
    pub const ALL: [Algorithm; 11] = [
        Self::Auto,
        Self::Greedy,
        Self::Scapegoat,
        Self::Optimistic,
        Self::Matching,
        Self::Frac,
        Self::Third,
        Self::Tau0,
        Self::Tau1,
        Self::Setcover,
        Self::Identical,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Auto => "auto",
            Self::Greedy => "greedy",
            Self::Scapegoat => "scapegoat",
            Self::Optimistic => "optimistic",
            Self::Matching => "matching",
            Self::Frac => "frac",
            Self::Third => "third",
            Self::Tau0 => "tau0",
            Self::Tau1 => "tau1",
            Self::Setcover => "setcover",
            Self::Identical => "identical",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|a| a.as_str() == s)
            .ok_or_else(|| Error::Unsupported(format!("unknown algorithm `{s}`")))
    }
}

fn unsupported(algorithm: Algorithm, objective: Objective, balanced: bool) -> Error {
    let scope = if balanced { "balanced" } else { "unbalanced" };
    Error::Unsupported(format!("algorithm {algorithm} does not solve {scope} {objective}"))
}

fn single_agent(instance: &Instance, objective: Objective) -> Result<SolveReport> {
    let allocation = Allocation::all_to_first(instance.items());
    let welfare = objective.evaluate(instance, &allocation)?;
    Ok(SolveReport {
        allocation,
        welfare,
        algorithm: "single-agent",
        feasible: true,
    })
}

fn auto(instance: &Instance, objective: Objective, balanced: bool) -> Result<SolveReport> {
    use Objective::*;
    if instance.agents() == 1 {
        return single_agent(instance, objective);
    }
    let tau = instance.common_quantile();
    match (objective, balanced) {
        (Usw, true) => greedy_balanced_usw(instance),
        (Usw, false) if instance.quantiles().iter().any(|t| t.is_one()) => optimistic_exact_usw(instance),
        (Usw, false) => scapegoat_usw(instance),
        (Esw, true) => balanced_esw(instance),
        (Esw, false) => match unbalanced_esw(instance) {
            Err(Error::IntractableQuantile(_) | Error::HeterogeneousQuantiles(_)) if instance.is_identical() => {
                identical_unbalanced_esw(instance)
            }
            other => other,
        },
        (Esc, true) => balanced_esc(instance),
        (Esc, false) if tau.is_some_and(|t| t.is_zero()) => esc_tau0(instance),
        (Esc, false) if tau.is_some_and(|t| t.is_one()) => esc_tau1(instance),
        (Usc, false) if tau.is_some_and(|t| t.is_zero()) => usc_tau0_setcover(instance),
        _ => Err(Error::Unsupported(format!(
            "no solver for {} {objective} with these quantiles",
            if balanced { "balanced" } else { "unbalanced" }
        ))),
    }
}

/// Runs `algorithm` for `objective`, restricted to balanced allocations when
/// `balanced` is set. The instance kind must match the objective.
pub fn solve(instance: &Instance, objective: Objective, balanced: bool, algorithm: Algorithm) -> Result<SolveReport> {
    use Algorithm as A;
    use Objective::*;
    instance.require_kind(objective.kind(), objective.as_str())?;
    if balanced {
        instance.require_balanced()?;
    }
    let rule = |rule: EswRule| {
        if balanced {
            Err(unsupported(algorithm, objective, balanced))
        } else {
            rule.solve(instance)
        }
    };
    match (algorithm, objective, balanced) {
        (A::Auto, _, _) => auto(instance, objective, balanced),
        (A::Greedy, Usw, true) => greedy_balanced_usw(instance),
        (A::Scapegoat, Usw, false) => scapegoat_usw(instance),
        (A::Optimistic, Usw, false) => optimistic_exact_usw(instance),
        (A::Identical, Usw, false) => identical_binary_usw_unbalanced(instance),
        (A::Matching, Esw, true) => balanced_esw(instance),
        (A::Matching, Esw, false) => unbalanced_esw(instance),
        (A::Matching, Esc, true) => balanced_esc(instance),
        (A::Identical, Esw, false) => identical_unbalanced_esw(instance),
        (A::Frac, Esw, _) => {
            let tau = instance.quantile(0);
            let t = tau
                .as_t_over_t_plus_one()
                .ok_or_else(|| Error::QuantileMismatch {
                    operation: "esw-frac",
                    expected: "t/(t+1)".into(),
                    found: tau.to_string(),
                })?;
            rule(EswRule::Frac(t))
        }
        (A::Third, Esw, _) => rule(EswRule::Third),
        (A::Tau0, Esw, _) => rule(EswRule::Tau0),
        (A::Tau1, Esw, _) => rule(EswRule::Tau1),
        (A::Tau0, Esc, false) => esc_tau0(instance),
        (A::Tau1, Esc, false) => esc_tau1(instance),
        (A::Setcover, Usc, false) => usc_tau0_setcover(instance),
        _ => Err(unsupported(algorithm, objective, balanced)),
    }
}
