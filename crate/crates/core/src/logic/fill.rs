use super::{anf, cost_anf, interpolate_anf, minimize_completion, BoolTable, Cover, GateCount, LogicError};

/// Result of filling the don't cares of one stage function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Completion {
    /// The filled table.
    pub table: BoolTable,
    /// Two-level cover found for the incompletely specified table.
    pub cover: Cover,
    pub gates: GateCount,
}

fn gate_total(g: &GateCount) -> usize {
    g.and2 + g.xor2
}

/// Fills the don't cares of `t` with the candidate whose ANF needs the
/// fewest two-input gates: all zeros, all ones, the cheapest two-level
/// cover, or a low-degree ANF interpolant. Ties keep the earlier candidate
/// in that order.
pub fn minimize_fill(t: &BoolTable) -> Result<Completion, LogicError> {
    let (cover, sop_filled) = minimize_completion(t)?;
    if t.is_fully_specified() {
        let gates = cost_anf(&anf(t)?);
        return Ok(Completion { table: t.clone(), cover, gates });
    }
    let interpolant = interpolate_anf(t)?;
    let candidates = [t.fill_constant(false), t.fill_constant(true), sop_filled];
    let mut best_gates = cost_anf(&interpolant);
    let mut best_table = None;
    for cand in candidates.into_iter().rev() {
        let g = cost_anf(&anf(&cand)?);
        if gate_total(&g) <= gate_total(&best_gates) {
            best_gates = g;
            best_table = Some(cand);
        }
    }
    let table = best_table.unwrap_or_else(|| interpolant.to_table());
    Ok(Completion { table, cover, gates: best_gates })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::{minimize_sop, Ternary};

    #[test]
    fn never_worse_than_constant_fills() {
        let mut s = 0x9E37_79B9_7F4A_7C15u64;
        for vars in 1..=9 {
            let t = BoolTable::from_fn(vars, |_| {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                match (s >> 40) % 4 {
                    0 => Ternary::Zero,
                    1 => Ternary::One,
                    _ => Ternary::DontCare,
                }
            })
            .unwrap();
            let c = minimize_fill(&t).unwrap();
            assert!(c.table.is_fully_specified());
            for x in 0..t.vertex_count() as u32 {
                if t.get(x) != Ternary::DontCare {
                    assert_eq!(c.table.get(x), t.get(x));
                }
            }
            assert_eq!(c.gates, cost_anf(&anf(&c.table).unwrap()));
            for v in [false, true] {
                assert!(gate_total(&c.gates) <= gate_total(&cost_anf(&anf(&t.fill_constant(v)).unwrap())));
            }
            let zero_cover = minimize_sop(&t.fill_constant(false)).unwrap();
            assert!(c.cover.literal_count() <= zero_cover.literal_count());
        }
    }

    #[test]
    fn sparse_function_gets_cheap_fill() {
        // four specified vertices in 8 inputs
        let mut t = BoolTable::dont_care(8).unwrap();
        for (x, v) in [(3, true), (200, false), (77, true), (128, false)] {
            t.set(x, Ternary::from(v));
        }
        let c = minimize_fill(&t).unwrap();
        assert!(gate_total(&c.gates) <= 4);
    }
}
