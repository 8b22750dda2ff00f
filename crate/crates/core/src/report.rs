use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::moncat::Mor;

/// One named verdict in a report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub id: String,
    pub holds: bool,
}

impl Check {
    pub fn new(id: impl Into<String>, holds: bool) -> Check {
        Check { id: id.into(), holds }
    }

    /// Holds iff every morphism in `sides` equals the first one.
    pub fn chain(id: impl Into<String>, sides: &[Mor]) -> Check {
        let holds = sides.windows(2).all(|w| w[0] == w[1]);
        Check::new(id, holds)
    }

    /// Same as [`Check::chain`] with the sides still to be built.
    pub fn build(id: impl Into<String>, sides: impl FnOnce() -> Result<Vec<Mor>>) -> Result<Check> {
        Ok(Check::chain(id, &sides()?))
    }
}

pub fn all_hold(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.holds)
}

pub fn failures(checks: &[Check]) -> Vec<String> {
    checks.iter().filter(|c| !c.holds).map(|c| c.id.clone()).collect()
}
