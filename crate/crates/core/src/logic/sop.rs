//! Greedy two-level minimisation: each uncovered on-vertex is expanded one
//! literal at a time, in ascending variable order, as long as the cube stays
//! clear of the off-set; redundant cubes are then dropped. One expansion
//! pass yields primes, since a literal that could not be dropped from a
//! cube cannot be dropped from any larger one either.

use std::fmt;

use super::{BoolTable, LogicError, MAX_TABLE_VARS};

/// Product term: inputs in `mask` are fixed to the matching bits of `value`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cube {
    pub mask: u32,
    pub value: u32,
}

impl Cube {
    pub fn minterm(vars: u32, x: u32) -> Self {
        let mask = if vars == 32 { u32::MAX } else { (1u32 << vars) - 1 };
        Self { mask, value: x & mask }
    }

    pub fn universe() -> Self {
        Self { mask: 0, value: 0 }
    }

    #[inline]
    pub fn contains(&self, x: u32) -> bool {
        x & self.mask == self.value
    }

    pub fn literal_count(&self) -> usize {
        self.mask.count_ones() as usize
    }

    /// Calls `f` on every vertex of the cube within `vars` inputs.
    pub fn for_each_vertex<F: FnMut(u32)>(&self, vars: u32, mut f: F) {
        let all = if vars == 32 { u32::MAX } else { (1u32 << vars) - 1 };
        let free = all & !self.mask;
        let mut sub = 0u32;
        loop {
            f(self.value | sub);
            sub = sub.wrapping_sub(free) & free;
            if sub == 0 {
                break;
            }
        }
    }

    /// Pattern over `vars` inputs, input 0 first: `0`, `1` or `-`.
    pub fn pattern(&self, vars: u32) -> String {
        (0..vars)
            .map(|i| {
                if (self.mask >> i) & 1 == 0 {
                    '-'
                } else if (self.value >> i) & 1 == 1 {
                    '1'
                } else {
                    '0'
                }
            })
            .collect()
    }

    pub fn parse_pattern(s: &str) -> Option<Self> {
        let mut cube = Cube::universe();
        for (i, ch) in s.chars().enumerate() {
            if i >= 32 {
                return None;
            }
            match ch {
                '0' => cube.mask |= 1 << i,
                '1' => {
                    cube.mask |= 1 << i;
                    cube.value |= 1 << i;
                }
                '-' | '~' | '2' => {}
                _ => return None,
            }
        }
        Some(cube)
    }
}

impl fmt::Debug for Cube {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vars = 32 - self.mask.leading_zeros();
        write!(f, "Cube({})", self.pattern(vars.max(1)))
    }
}

/// Sum of products over `vars` inputs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cover {
    pub vars: u32,
    pub cubes: Vec<Cube>,
}

impl Cover {
    pub fn eval(&self, x: u32) -> bool {
        self.cubes.iter().any(|c| c.contains(x))
    }

    pub fn literal_count(&self) -> usize {
        self.cubes.iter().map(Cube::literal_count).sum()
    }

    /// Covers every on-vertex and no off-vertex of `t`.
    pub fn is_consistent_with(&self, t: &BoolTable) -> bool {
        (0..t.vertex_count() as u32).all(|x| {
            let v = self.eval(x);
            !(t.is_on(x) && !v || t.is_off(x) && v)
        })
    }
}

fn cube_hits_off(t: &BoolTable, cube: Cube) -> bool {
    let mut hit = false;
    cube.for_each_vertex(t.vars(), |x| hit |= t.is_off(x));
    hit
}

/// Don't-care-aware cover of `t`; heuristic, each cube prime.
pub fn minimize_sop(t: &BoolTable) -> Result<Cover, LogicError> {
    let vars = t.vars();
    if vars > MAX_TABLE_VARS {
        return Err(LogicError::TooManyVars(vars));
    }
    let n = t.vertex_count();
    let mut covered = vec![0u64; n.div_ceil(64)];
    let mut cubes = Vec::new();

    for x in t.on_set().collect::<Vec<_>>() {
        if (covered[x as usize / 64] >> (x % 64)) & 1 == 1 {
            continue;
        }
        let mut cube = Cube::minterm(vars, x);
        for var in 0..vars {
            let bit = 1u32 << var;
            let other_half = Cube { mask: cube.mask, value: cube.value ^ bit };
            if !cube_hits_off(t, other_half) {
                cube.mask &= !bit;
                cube.value &= !bit;
            }
        }
        cube.for_each_vertex(vars, |y| covered[y as usize / 64] |= 1 << (y % 64));
        cubes.push(cube);
    }

    // irredundant: drop the smallest cubes first when everything they
    // cover on the on-set is covered elsewhere
    let mut counts: Vec<u32> = vec![0; if cubes.len() > 1 { n } else { 0 }];
    if cubes.len() > 1 {
        for c in &cubes {
            c.for_each_vertex(vars, |y| {
                if t.is_on(y) {
                    counts[y as usize] += 1;
                }
            });
        }
        let mut order: Vec<usize> = (0..cubes.len()).collect();
        order.sort_by_key(|&i| (std::cmp::Reverse(cubes[i].literal_count()), std::cmp::Reverse(i)));
        let mut keep = vec![true; cubes.len()];
        for i in order {
            let mut redundant = true;
            cubes[i].for_each_vertex(vars, |y| {
                if t.is_on(y) && counts[y as usize] < 2 {
                    redundant = false;
                }
            });
            if redundant {
                keep[i] = false;
                cubes[i].for_each_vertex(vars, |y| {
                    if t.is_on(y) {
                        counts[y as usize] -= 1;
                    }
                });
            }
        }
        let mut k = keep.iter();
        cubes.retain(|_| *k.next().unwrap());
    }

    Ok(Cover { vars, cubes })
}

/// Picks the cheapest of the covers found for `t` itself and for its
/// constant-0 and constant-1 completions (each is a valid cover of `t`),
/// and fills the don't cares of `t` from it.
pub fn minimize_completion(t: &BoolTable) -> Result<(Cover, BoolTable), LogicError> {
    let direct = minimize_sop(t)?;
    if t.is_fully_specified() {
        return Ok((direct, t.clone()));
    }
    let mut best = direct;
    for value in [false, true] {
        let cand = minimize_sop(&t.fill_constant(value))?;
        if (cand.literal_count(), cand.cubes.len()) < (best.literal_count(), best.cubes.len()) {
            best = cand;
        }
    }
    let filled = t.fill_from_cover(&best);
    Ok((best, filled))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::Ternary;
    use proptest::prelude::*;

    #[test]
    fn and_function() {
        let t = BoolTable::from_bits(2, &[0, 0, 0, 1]).unwrap();
        let c = minimize_sop(&t).unwrap();
        assert_eq!(c.cubes, vec![Cube { mask: 0b11, value: 0b11 }]);
        assert_eq!(c.cubes[0].pattern(2), "11");
    }

    #[test]
    fn all_dont_care() {
        let t = BoolTable::dont_care(3).unwrap();
        let c = minimize_sop(&t).unwrap();
        assert!(c.cubes.is_empty());
    }

    #[test]
    fn uses_dont_cares() {
        // on {1}, dc {3}, off {0, 2}: the cover is just x0
        let mut t = BoolTable::from_bits(2, &[0, 1, 0, 0]).unwrap();
        t.set(3, Ternary::DontCare);
        let c = minimize_sop(&t).unwrap();
        assert_eq!(c.cubes, vec![Cube { mask: 0b01, value: 0b01 }]);
    }

    #[test]
    fn octal_middle_bit_cover() {
        let t = BoolTable::from_bits(3, &[0, 0, 1, 0, 0, 1, 1, 1]).unwrap();
        let c = minimize_sop(&t).unwrap();
        assert!(c.is_consistent_with(&t));
        for cube in &c.cubes {
            assert!(is_prime(&t, *cube));
        }
    }

    #[test]
    fn vertex_enumeration() {
        let mut seen = Vec::new();
        Cube { mask: 0b010, value: 0b010 }.for_each_vertex(3, |x| seen.push(x));
        assert_eq!(seen, vec![2, 3, 6, 7]);
        let mut n = 0;
        Cube::universe().for_each_vertex(0, |_| n += 1);
        assert_eq!(n, 1);
    }

    #[test]
    fn pattern_round_trip() {
        let c = Cube { mask: 0b101, value: 0b001 };
        assert_eq!(c.pattern(3), "1-0");
        assert_eq!(Cube::parse_pattern("1-0"), Some(c));
        assert_eq!(Cube::parse_pattern("1x0"), None);
    }

    #[test]
    fn completion_never_worse_than_constant_fill() {
        let mut t = BoolTable::from_bits(3, &[1, 0, 1, 0, 0, 1, 0, 1]).unwrap();
        t.set(7, Ternary::DontCare);
        t.set(4, Ternary::DontCare);
        let (cover, filled) = minimize_completion(&t).unwrap();
        assert!(filled.is_fully_specified());
        assert!(cover.is_consistent_with(&filled));
        let zero = minimize_sop(&t.fill_constant(false)).unwrap();
        assert!(cover.literal_count() <= zero.literal_count());
    }

    fn is_prime(t: &BoolTable, cube: Cube) -> bool {
        (0..t.vars()).filter(|v| (cube.mask >> v) & 1 == 1).all(|v| {
            let bigger = Cube { mask: cube.mask & !(1 << v), value: cube.value & !(1 << v) };
            cube_hits_off(t, bigger)
        })
    }

    fn random_table(vars: u32, seed: u64) -> BoolTable {
        let mut s = seed | 1;
        BoolTable::from_fn(vars, |_| {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            match (s >> 33) % 3 {
                0 => Ternary::Zero,
                1 => Ternary::One,
                _ => Ternary::DontCare,
            }
        })
        .unwrap()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn cover_is_sound_and_prime(vars in 0u32..=10, seed in any::<u64>()) {
            let t = random_table(vars, seed);
            let c = minimize_sop(&t).unwrap();
            prop_assert!(c.is_consistent_with(&t));
            for cube in &c.cubes {
                prop_assert!(is_prime(&t, *cube));
            }
        }
    }
}
