use std::fmt;

use super::cost::GateCount;
use super::{BoolTable, LogicError, Ternary, MAX_TABLE_VARS};

/// XOR of AND-monomials over uncomplemented inputs. Monomial `m` is the
/// product of the inputs whose bits are set in `m`; `0` is the constant 1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AnfPoly {
    vars: u32,
    monomials: Vec<u32>,
}

impl AnfPoly {
    /// Builds a polynomial, cancelling repeated monomials in pairs.
    pub fn new(vars: u32, monomials: impl IntoIterator<Item = u32>) -> Result<Self, LogicError> {
        if vars > MAX_TABLE_VARS {
            return Err(LogicError::TooManyVars(vars));
        }
        let mut ms: Vec<u32> = monomials.into_iter().collect();
        if let Some(&bad) = ms.iter().find(|&&m| u64::from(m) >> vars != 0) {
            return Err(LogicError::VarOutOfRange { var: 31 - bad.leading_zeros(), vars });
        }
        ms.sort_unstable();
        let mut out: Vec<u32> = Vec::with_capacity(ms.len());
        for m in ms {
            if out.last() == Some(&m) {
                out.pop();
            } else {
                out.push(m);
            }
        }
        Ok(Self { vars, monomials: out })
    }

    pub fn vars(&self) -> u32 {
        self.vars
    }

    pub fn monomials(&self) -> &[u32] {
        &self.monomials
    }

    pub fn is_zero(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.monomials.iter().map(|m| m.count_ones()).max().unwrap_or(0)
    }

    pub fn eval(&self, x: u32) -> bool {
        self.monomials.iter().filter(|&&m| m & x == m).count() % 2 == 1
    }

    /// Truth table of the polynomial.
    pub fn to_table(&self) -> BoolTable {
        let mut t = BoolTable::zero(self.vars).expect("vars checked at construction");
        for &m in &self.monomials {
            t.set(m, Ternary::One);
        }
        moebius(t.on_words_mut(), self.vars);
        t
    }
}

impl fmt::Display for AnfPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.monomials.is_empty() {
            return f.write_str("0");
        }
        for (i, &m) in self.monomials.iter().enumerate() {
            if i > 0 {
                f.write_str(" ^ ")?;
            }
            if m == 0 {
                f.write_str("1")?;
            }
            let mut first = true;
            for v in 0..32 {
                if (m >> v) & 1 == 1 {
                    if !first {
                        f.write_str("*")?;
                    }
                    write!(f, "x{v}")?;
                    first = false;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for AnfPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AnfPoly({self})")
    }
}

const IN_WORD_MASKS: [u64; 6] = [
    0xAAAA_AAAA_AAAA_AAAA,
    0xCCCC_CCCC_CCCC_CCCC,
    0xF0F0_F0F0_F0F0_F0F0,
    0xFF00_FF00_FF00_FF00,
    0xFFFF_0000_FFFF_0000,
    0xFFFF_FFFF_0000_0000,
];

/// In-place Möbius transform over GF(2); it is its own inverse.
fn moebius(w: &mut [u64], vars: u32) {
    for i in 0..vars.min(6) {
        let shift = 1u32 << i;
        for word in w.iter_mut() {
            *word ^= (*word << shift) & IN_WORD_MASKS[i as usize];
        }
    }
    for i in 6..vars {
        let stride = 1usize << (i - 6);
        for block in (0..w.len()).step_by(2 * stride) {
            for j in block..block + stride {
                w[j + stride] ^= w[j];
            }
        }
    }
    if vars < 6 {
        w[0] &= (1u64 << (1u32 << vars)) - 1;
    }
}

/// Positive-polarity Reed-Muller (Möbius) transform of a fully specified table.
pub fn anf(t: &BoolTable) -> Result<AnfPoly, LogicError> {
    if let Some(x) = t.dc_set().next() {
        return Err(LogicError::DontCare(x));
    }
    let vars = t.vars();
    let mut w = t.on_words().to_vec();
    moebius(&mut w, vars);
    let mut monomials = Vec::new();
    for (wi, &word) in w.iter().enumerate() {
        let mut bits = word;
        while bits != 0 {
            let b = bits.trailing_zeros();
            monomials.push((wi as u32) * 64 + b);
            bits &= bits - 1;
        }
    }
    Ok(AnfPoly { vars, monomials })
}

/// Low-degree ANF agreeing with `t` on its specified vertices.
///
/// Monomials are tried by increasing degree (then numerically) and kept
/// when their values on the specified vertices are independent of those
/// already kept; the target is solved over the kept set as soon as it lies
/// in their span. Don't cares take whatever value the result gives them.
/// Fully specified tables return their ANF.
pub fn interpolate_anf(t: &BoolTable) -> Result<AnfPoly, LogicError> {
    let vars = t.vars();
    if vars > MAX_TABLE_VARS {
        return Err(LogicError::TooManyVars(vars));
    }
    if t.is_fully_specified() {
        return anf(t);
    }
    let points: Vec<u32> = (0..t.vertex_count() as u32).filter(|&x| t.get(x) != Ternary::DontCare).collect();
    let pw = points.len().div_ceil(64);
    let column = |m: u32| {
        let mut v = vec![0u64; pw];
        for (j, &x) in points.iter().enumerate() {
            if x & m == m {
                v[j / 64] |= 1 << (j % 64);
            }
        }
        v
    };
    let mut residual = vec![0u64; pw];
    for (j, &x) in points.iter().enumerate() {
        if t.is_on(x) {
            residual[j / 64] |= 1 << (j % 64);
        }
    }
    let first_set =
        |v: &[u64]| v.iter().enumerate().find(|(_, w)| **w != 0).map(|(i, w)| i * 64 + w.trailing_zeros() as usize);

    // reduced basis vectors with their pivot and the kept monomials they sum
    let mut basis: Vec<(usize, Vec<u64>, Vec<u64>)> = Vec::new();
    let mut kept: Vec<u32> = Vec::new();
    // combination of kept monomials already folded into the residual
    let mut solution: Vec<u64> = Vec::new();

    'degrees: for degree in 0..=vars {
        for m in monomials_of_degree(vars, degree) {
            if first_set(&residual).is_none() {
                break 'degrees;
            }
            let mut v = column(m);
            let idx = kept.len();
            let mut combo = vec![0u64; idx / 64 + 1];
            combo[idx / 64] |= 1 << (idx % 64);
            for (pivot, b, bc) in &basis {
                if (v[pivot / 64] >> (pivot % 64)) & 1 == 1 {
                    v.iter_mut().zip(b).for_each(|(a, b)| *a ^= b);
                    combo.iter_mut().zip(bc).for_each(|(a, b)| *a ^= b);
                }
            }
            let Some(pivot) = first_set(&v) else { continue };
            kept.push(m);
            if (residual[pivot / 64] >> (pivot % 64)) & 1 == 1 {
                residual.iter_mut().zip(&v).for_each(|(a, b)| *a ^= b);
                solution.resize(solution.len().max(combo.len()), 0);
                solution.iter_mut().zip(&combo).for_each(|(a, b)| *a ^= b);
            }
            basis.push((pivot, v, combo));
        }
    }
    debug_assert!(first_set(&residual).is_none());
    let monomials = kept
        .iter()
        .enumerate()
        .filter(|(i, _)| solution.get(i / 64).is_some_and(|w| (w >> (i % 64)) & 1 == 1))
        .map(|(_, &m)| m);
    AnfPoly::new(vars, monomials)
}

/// Masks over `vars` bits with `degree` bits set, ascending.
fn monomials_of_degree(vars: u32, degree: u32) -> impl Iterator<Item = u32> {
    let limit = 1u64 << vars;
    let first = if degree == 0 { 0u64 } else { (1u64 << degree) - 1 };
    std::iter::successors(Some(first), move |&m| {
        if m == 0 {
            return None;
        }
        // next integer with the same popcount
        let c = m & m.wrapping_neg();
        let r = m + c;
        Some((((r ^ m) >> 2) / c) | r)
    })
    .take_while(move |&m| m < limit)
    .map(|m| m as u32)
}

/// Two-input gate count of an XOR-of-products: `degree - 1` ANDs per
/// monomial and `terms - 1` XORs.
pub fn cost_anf(p: &AnfPoly) -> GateCount {
    product_xor_cost(p.monomials.iter().map(|m| m.count_ones() as usize))
}

fn product_xor_cost(degrees: impl Iterator<Item = usize>) -> GateCount {
    let mut and2 = 0;
    let mut terms = 0usize;
    for d in degrees {
        and2 += d.saturating_sub(1);
        terms += 1;
    }
    GateCount { and2, xor2: terms.saturating_sub(1) }
}

/// Possibly complemented input.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Literal {
    pub var: u32,
    pub positive: bool,
}

impl Literal {
    pub fn pos(var: u32) -> Self {
        Self { var, positive: true }
    }

    pub fn neg(var: u32) -> Self {
        Self { var, positive: false }
    }
}

/// Product of literals; empty is the constant 1.
pub type EsopTerm = Vec<Literal>;

/// Mixed-polarity XOR of products. Complemented literals are free in the
/// cost model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EsopExpr {
    pub terms: Vec<EsopTerm>,
}

impl EsopExpr {
    pub fn new(terms: Vec<EsopTerm>) -> Self {
        Self { terms }
    }

    pub fn eval(&self, x: u32) -> bool {
        self.terms.iter().filter(|term| term.iter().all(|l| ((x >> l.var) & 1 == 1) == l.positive)).count() % 2 == 1
    }

    pub fn cost(&self) -> GateCount {
        product_xor_cost(self.terms.iter().map(Vec::len))
    }
}
