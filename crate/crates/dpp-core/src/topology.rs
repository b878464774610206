//! The five converter architectures under comparison: two fully-coupled DPP
//! topologies, two ladder DPP topologies, and the N:1 dual-active-bridge
//! baseline. Each carries an output-resistance law under a shared resource
//! budget, a per-trial loss multiplier, and a switching-loss port count.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::loads::SystemDimensions;

/// Normalized semiconductor (`g_sw`) and magnetic-winding (`g_m`) conductance
/// budgets shared by all compared topologies, plus an optional per-port
/// switching-loss shunt conductance `coss_fsw` (Coss * fsw, in siemens;
/// zero disables switching loss).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResourceBudget {
    pub g_sw: f64,
    pub g_m: f64,
    pub coss_fsw: f64,
}

impl ResourceBudget {
    pub fn new(g_sw: f64, g_m: f64, coss_fsw: f64) -> Result<Self> {
        if !g_sw.is_finite() || !g_m.is_finite() || g_sw <= 0.0 || g_m <= 0.0 {
            return Err(Error::InvalidBudget(format!(
                "conductance budgets must be positive and finite, got Gsw={g_sw}, Gm={g_m}"
            )));
        }
        if !coss_fsw.is_finite() || coss_fsw < 0.0 {
            return Err(Error::InvalidBudget(format!(
                "switching shunt must be nonnegative and finite, got Coss*fsw={coss_fsw}"
            )));
        }
        Ok(Self {
            g_sw,
            g_m,
            coss_fsw,
        })
    }

    /// Unit budgets, no switching loss.
    pub fn normalized() -> Self {
        Self {
            g_sw: 1.0,
            g_m: 1.0,
            coss_fsw: 0.0,
        }
    }

    pub fn with_switching(self, coss_fsw: f64) -> Result<Self> {
        Self::new(self.g_sw, self.g_m, coss_fsw)
    }

    /// Same conductance budgets with switching loss disabled.
    pub fn without_switching(self) -> Self {
        Self {
            coss_fsw: 0.0,
            ..self
        }
    }
}

/// Converter architecture.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Topology {
    /// Ac fully-coupled DPP (multiwinding ac transformer link).
    #[serde(rename = "ac")]
    AcCoupled,
    /// Dc fully-coupled DPP.
    #[serde(rename = "dc")]
    DcCoupled,
    /// Ladder DPP with dual-active-bridge cells between adjacent domains.
    #[serde(rename = "ladder-dab")]
    LadderDab,
    /// Ladder DPP with buck-boost cells between adjacent domains.
    #[serde(rename = "ladder-bb")]
    LadderBuckBoost,
    /// N:1 dual-active-bridge converter processing the full array power.
    #[serde(rename = "dab-n1")]
    BulkDabN1,
}

/// Structural class that determines which per-trial loss expression applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ArchitectureClass {
    /// Direct power path between any two domains.
    FullyCoupled,
    /// Power between distant domains traverses every intermediate cell.
    Ladder,
    /// Full load power processed by one N:1 converter.
    Bulk,
}

impl ArchitectureClass {
    pub fn name(self) -> &'static str {
        match self {
            ArchitectureClass::FullyCoupled => "fully-coupled",
            ArchitectureClass::Ladder => "ladder",
            ArchitectureClass::Bulk => "bulk",
        }
    }
}

impl fmt::Display for ArchitectureClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.name())
    }
}

impl Topology {
    /// All topologies in canonical report order.
    pub const ALL: [Topology; 5] = [
        Topology::AcCoupled,
        Topology::DcCoupled,
        Topology::LadderDab,
        Topology::LadderBuckBoost,
        Topology::BulkDabN1,
    ];

    pub fn architecture_class(self) -> ArchitectureClass {
        match self {
            Topology::AcCoupled | Topology::DcCoupled => ArchitectureClass::FullyCoupled,
            Topology::LadderDab | Topology::LadderBuckBoost => ArchitectureClass::Ladder,
            Topology::BulkDabN1 => ArchitectureClass::Bulk,
        }
    }

    /// Per-trial multiplier on the differential-current conduction loss,
    /// relative to the base expression of the architecture class. The
    /// buck-boost ladder dissipates 4x the DAB-cell ladder at equal output
    /// resistance structure; all other topologies carry the base expression.
    pub fn loss_multiplier(self) -> f64 {
        match self {
            Topology::LadderBuckBoost => 4.0,
            _ => 1.0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Topology::AcCoupled => "ac",
            Topology::DcCoupled => "dc",
            Topology::LadderDab => "ladder-dab",
            Topology::LadderBuckBoost => "ladder-bb",
            Topology::BulkDabN1 => "dab-n1",
        }
    }

    /// Per-port output resistance in ohms under the shared budgets.
    ///
    /// Fully-coupled resistances grow linearly in N, ladder resistances in
    /// N-1 (a single domain has no cells and zero resistance), and the N:1
    /// converter is independent of N.
    pub fn output_resistance(self, dims: &SystemDimensions, budget: &ResourceBudget) -> f64 {
        let n = f64::from(dims.n_domains);
        let (g_sw, g_m) = (budget.g_sw, budget.g_m);
        match self {
            Topology::AcCoupled => 8.0 * n / g_sw + 4.0 * n / g_m,
            Topology::DcCoupled => 32.0 * n / g_sw + 16.0 * n / g_m,
            Topology::LadderDab => (32.0 * n - 32.0) / g_sw + (16.0 * n - 16.0) / g_m,
            Topology::LadderBuckBoost => (8.0 * n - 8.0) / g_sw + (4.0 * n - 4.0) / g_m,
            Topology::BulkDabN1 => 32.0 / g_sw + 16.0 / g_m,
        }
    }

    /// Number of ports carrying the `1/(Coss*fsw)` switching-loss shunt:
    /// one per domain for fully-coupled topologies, two per cell for ladder
    /// topologies, and the input/output pair for the N:1 converter.
    pub fn switching_port_count(self, dims: &SystemDimensions) -> u32 {
        let n = dims.n_domains;
        match self.architecture_class() {
            ArchitectureClass::FullyCoupled => n,
            ArchitectureClass::Ladder => 2 * (n - 1),
            ArchitectureClass::Bulk => 2,
        }
    }
}

impl fmt::Display for Topology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.name())
    }
}

impl FromStr for Topology {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ac" => Ok(Topology::AcCoupled),
            "dc" => Ok(Topology::DcCoupled),
            "ladder-dab" => Ok(Topology::LadderDab),
            "ladder-bb" => Ok(Topology::LadderBuckBoost),
            "dab-n1" => Ok(Topology::BulkDabN1),
            other => Err(Error::UnknownTopology(other.to_string())),
        }
    }
}

/// Parses a comma-separated topology list, e.g. `"ac,dc,ladder-dab"`.
pub fn parse_topology_list(s: &str) -> Result<Vec<Topology>> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(Topology::from_str)
        .collect()
}
