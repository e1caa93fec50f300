//! Variant selection: cost criterion, walk type and strictness.

use std::fmt;

use crate::error::{Error, Result};
use crate::Time;

/// Optimality criterion for walks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Cost {
    /// Minimum number of transitions.
    Shortest,
    /// Minimum number of transitions among walks whose consecutive
    /// transition times differ by at most `k`.
    Restless(Time),
    /// Earliest arrival, then minimum number of transitions.
    Foremost,
}

impl Cost {
    /// Restless cost with an optional bound; `None` (unbounded) is
    /// the plain shortest criterion.
    pub fn restless(k: Option<Time>) -> Result<Cost> {
        match k {
            None => Ok(Cost::Shortest),
            Some(0) => Err(Error::Argument("restless bound k must be positive".into())),
            Some(k) => Ok(Cost::Restless(k)),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WalkType {
    /// A walk occupies an intermediate node only at its arrival instant.
    Passive,
    /// A walk occupies every instant between arrival and departure, and
    /// its last node until the horizon.
    Active,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct VariantConfig {
    cost: Cost,
    walk_type: WalkType,
    strict: bool,
}

impl VariantConfig {
    /// Builds a config; active foremost is rejected since it lacks prefix
    /// optimality.
    pub fn new(cost: Cost, walk_type: WalkType, strict: bool) -> Result<Self> {
        let cost = match cost {
            Cost::Restless(0) => {
                return Err(Error::Argument("restless bound k must be positive".into()))
            }
            Cost::Restless(Time::MAX) => Cost::Shortest,
            c => c,
        };
        if cost == Cost::Foremost && walk_type == WalkType::Active {
            return Err(Error::Argument(
                "active shortest-foremost is not supported".into(),
            ));
        }
        Ok(VariantConfig {
            cost,
            walk_type,
            strict,
        })
    }

    pub fn passive_shortest() -> Self {
        VariantConfig {
            cost: Cost::Shortest,
            walk_type: WalkType::Passive,
            strict: false,
        }
    }

    pub fn active_shortest() -> Self {
        VariantConfig {
            cost: Cost::Shortest,
            walk_type: WalkType::Active,
            strict: false,
        }
    }

    pub fn cost(&self) -> Cost {
        self.cost
    }

    pub fn walk_type(&self) -> WalkType {
        self.walk_type
    }

    pub fn strict(&self) -> bool {
        self.strict
    }

    pub fn is_active(&self) -> bool {
        self.walk_type == WalkType::Active
    }

    /// Maximum waiting time between consecutive transitions, `None` if unbounded.
    pub fn k_bound(&self) -> Option<Time> {
        match self.cost {
            Cost::Restless(k) => Some(k),
            _ => None,
        }
    }

    pub fn with_strict(mut self, strict: bool) -> Self {
        self.strict = strict;
        self
    }

    /// Same criterion on passive walks.
    pub fn as_passive(mut self) -> Self {
        self.walk_type = WalkType::Passive;
        self
    }

    /// Normalizes against a horizon: a restless bound `k >= horizon` admits
    /// every walk and is therefore the shortest criterion.
    pub fn effective(self, horizon: Time) -> Self {
        match self.cost {
            Cost::Restless(k) if k >= horizon => VariantConfig {
                cost: Cost::Shortest,
                ..self
            },
            _ => self,
        }
    }

    /// Every supported configuration for a given restless bound, in a fixed order.
    pub fn all(k: Time) -> Vec<VariantConfig> {
        let mut out = Vec::new();
        for strict in [false, true] {
            for (cost, wt) in [
                (Cost::Shortest, WalkType::Passive),
                (Cost::Shortest, WalkType::Active),
                (Cost::Restless(k), WalkType::Passive),
                (Cost::Restless(k), WalkType::Active),
                (Cost::Foremost, WalkType::Passive),
            ] {
                out.push(VariantConfig::new(cost, wt, strict).expect("valid config"));
            }
        }
        out
    }
}

impl fmt::Display for VariantConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wt = match self.walk_type {
            WalkType::Passive => "passive",
            WalkType::Active => "active",
        };
        match self.cost {
            Cost::Shortest => write!(f, "{wt} shortest")?,
            Cost::Restless(k) => write!(f, "{wt} restless(k={k})")?,
            Cost::Foremost => write!(f, "{wt} foremost")?,
        }
        if self.strict {
            write!(f, " strict")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn active_foremost_rejected() {
        assert!(VariantConfig::new(Cost::Foremost, WalkType::Active, false).is_err());
        assert!(VariantConfig::new(Cost::Foremost, WalkType::Passive, true).is_ok());
    }

    #[test]
    fn unbounded_restless_is_shortest() {
        assert_eq!(Cost::restless(None).unwrap(), Cost::Shortest);
        let c = VariantConfig::new(Cost::Restless(Time::MAX), WalkType::Active, false).unwrap();
        assert_eq!(c, VariantConfig::active_shortest());
        assert!(Cost::restless(Some(0)).is_err());
    }

    #[test]
    fn bound_at_horizon_normalizes() {
        let c = VariantConfig::new(Cost::Restless(5), WalkType::Active, true).unwrap();
        assert_eq!(c.effective(5).cost(), Cost::Shortest);
        assert_eq!(c.effective(6).cost(), Cost::Restless(5));
    }
}
