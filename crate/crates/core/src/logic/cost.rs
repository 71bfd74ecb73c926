use std::ops::{Add, AddAssign};

use rayon::prelude::*;

use super::{anf, cost_anf, minimize_fill, minimize_sop, LogicError};
use crate::machine::{BinaryMachine, DcPolicy};

/// Two-input gate counts.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct GateCount {
    pub and2: usize,
    pub xor2: usize,
}

impl Add for GateCount {
    type Output = GateCount;

    fn add(self, rhs: GateCount) -> GateCount {
        GateCount { and2: self.and2 + rhs.and2, xor2: self.xor2 + rhs.xor2 }
    }
}

impl AddAssign for GateCount {
    fn add_assign(&mut self, rhs: GateCount) {
        *self = *self + rhs;
    }
}

impl std::iter::Sum for GateCount {
    fn sum<I: Iterator<Item = GateCount>>(iter: I) -> GateCount {
        iter.fold(GateCount::default(), Add::add)
    }
}

/// Unit cost per AND2, XOR2 and register stage. Defaults are 1, 1 and 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct UnitCosts {
    pub and2: u64,
    pub xor2: u64,
    pub register: u64,
}

impl Default for UnitCosts {
    fn default() -> Self {
        Self { and2: 1, xor2: 1, register: 2 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CostReport {
    pub and2_count: usize,
    pub xor2_count: usize,
    pub register_stages: usize,
    pub total_units: u64,
    /// Literal count of the two-level covers, when computed.
    pub sop_literals: Option<usize>,
}

impl CostReport {
    pub fn new(gates: GateCount, register_stages: usize, units: &UnitCosts) -> Self {
        let total_units =
            gates.and2 as u64 * units.and2 + gates.xor2 as u64 * units.xor2 + register_stages as u64 * units.register;
        Self { and2_count: gates.and2, xor2_count: gates.xor2, register_stages, total_units, sop_literals: None }
    }
}

/// Completes every stage function under `policy`, costs it through its
/// algebraic normal form, and adds one register per stage. The SOP literal
/// count is reported alongside: of the completed functions for the constant
/// policies, of the don't-care-aware covers for `minimize`.
pub fn machine_cost(bm: &BinaryMachine, policy: DcPolicy, units: &UnitCosts) -> Result<CostReport, LogicError> {
    let per_stage: Vec<(GateCount, usize)> = bm
        .tables()
        .par_iter()
        .map(|t| match policy {
            DcPolicy::Zero | DcPolicy::One => {
                let completed = t.fill_constant(policy == DcPolicy::One);
                let gates = cost_anf(&anf(&completed)?);
                Ok((gates, minimize_sop(&completed)?.literal_count()))
            }
            DcPolicy::Minimize => {
                let c = minimize_fill(t)?;
                Ok((c.gates, c.cover.literal_count()))
            }
        })
        .collect::<Result<_, LogicError>>()?;

    let gates = per_stage.iter().map(|(g, _)| *g).sum();
    let mut report = CostReport::new(gates, bm.stage_count(), units);
    report.sop_literals = Some(per_stage.iter().map(|(_, l)| l).sum());
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn totals() {
        let r = CostReport::new(GateCount { and2: 6, xor2: 3 }, 3, &UnitCosts::default());
        assert_eq!(r.total_units, 15);
        let r = CostReport::new(GateCount { and2: 24, xor2: 7 }, 7, &UnitCosts::default());
        assert_eq!(r.total_units, 45);
        let units = UnitCosts { and2: 2, xor2: 3, register: 5 };
        let r = CostReport::new(GateCount { and2: 1, xor2: 1 }, 1, &units);
        assert_eq!(r.total_units, 10);
    }

    #[test]
    fn identity_machine_costs_only_registers() {
        let bm = BinaryMachine::identity(4, 1).unwrap();
        for policy in [DcPolicy::Zero, DcPolicy::One, DcPolicy::Minimize] {
            let r = machine_cost(&bm, policy, &UnitCosts::default()).unwrap();
            assert_eq!((r.and2_count, r.xor2_count, r.register_stages, r.total_units), (0, 0, 4, 8));
        }
    }
}
