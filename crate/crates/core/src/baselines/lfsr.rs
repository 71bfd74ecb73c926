use std::fmt::Write as _;

use super::bits;
use super::BaselineError;
use crate::sequence::DigitSequence;

/// Fibonacci LFSR: `s_t = c_1 s_{t-1} + .. + c_L s_{t-L}` over GF(2) for
/// `t >= L`, with `s_0 .. s_{L-1}` taken from the fill.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LfsrSpec {
    coeffs: Vec<bool>,
    fill: Vec<bool>,
}

impl LfsrSpec {
    /// `coeffs[i]` is `c_{i+1}`, `fill[i]` is `s_i`.
    pub fn new(coeffs: Vec<bool>, fill: Vec<bool>) -> Result<Self, BaselineError> {
        if coeffs.len() != fill.len() {
            return Err(BaselineError::FillLength { length: coeffs.len(), fill: fill.len() });
        }
        Ok(Self { coeffs, fill })
    }

    /// Register of length `degree` with taps at the nonzero terms of a
    /// connection polynomial `1 + c_1 x + .. + c_L x^L` given as exponents.
    pub fn from_exponents(degree: usize, exponents: &[usize], fill: Vec<bool>) -> Result<Self, BaselineError> {
        let mut coeffs = vec![false; degree];
        for &e in exponents {
            match e {
                0 => {}
                e if e <= degree => coeffs[e - 1] ^= true,
                e => return Err(BaselineError::TapOutOfRange { tap: e, length: degree }),
            }
        }
        Self::new(coeffs, fill)
    }

    pub fn length(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[bool] {
        &self.coeffs
    }

    pub fn fill(&self) -> &[bool] {
        &self.fill
    }

    /// Exponents `i` with `c_i = 1`, ascending.
    pub fn taps(&self) -> Vec<usize> {
        (1..=self.length()).filter(|&i| self.coeffs[i - 1]).collect()
    }

    /// Whether the connection polynomial has full degree `L`.
    pub fn is_full_degree(&self) -> bool {
        self.coeffs.last().copied().unwrap_or(true)
    }

    pub fn generate(&self, len: usize) -> Vec<bool> {
        let l = self.length();
        let mut out: Vec<bool> = self.fill.iter().copied().take(len).collect();
        let taps = self.taps();
        while out.len() < len {
            let t = out.len();
            out.push(taps.iter().fold(false, |acc, &i| acc ^ out[t - i]));
        }
        debug_assert!(len < l || out[..l] == self.fill[..]);
        out
    }

    /// Whether this register reproduces `a2` over its whole length.
    pub fn generates(&self, a2: &DigitSequence) -> bool {
        self.generate(a2.len()).iter().zip(a2.digits()).all(|(&b, &d)| u32::from(b) == d)
    }

    /// Three-line text form:
    ///
    /// ```text
    /// LFSR 4
    /// poly 9
    /// fill 1
    /// ```
    ///
    /// `poly` is the hex value of `c_L .. c_1` (`c_1` least significant),
    /// `fill` the hex value of `s_{L-1} .. s_0` (`s_0` least significant).
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "LFSR {}", self.length());
        let _ = writeln!(out, "poly {}", to_hex(&self.coeffs));
        let _ = writeln!(out, "fill {}", to_hex(&self.fill));
        out
    }

    pub fn parse_text(text: &str) -> Result<Self, BaselineError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let mut field = |key: &str| -> Result<(usize, String), BaselineError> {
            let (line, content) =
                lines.next().ok_or_else(|| BaselineError::Text { line: 0, msg: format!("missing `{key}` line") })?;
            let mut tok = content.split_whitespace();
            match (tok.next(), tok.next(), tok.next()) {
                (Some(k), Some(v), None) if k == key => Ok((line, v.to_string())),
                _ => Err(BaselineError::Text { line, msg: format!("expected `{key} <value>`, found `{content}`") }),
            }
        };
        let (line, len) = field("LFSR")?;
        let length: usize =
            len.parse().map_err(|_| BaselineError::Text { line, msg: format!("bad length `{len}`") })?;
        let (line, poly) = field("poly")?;
        let coeffs = from_hex(&poly, length).ok_or_else(|| BaselineError::Text {
            line,
            msg: format!("`{poly}` is not a hex value of at most {length} bits"),
        })?;
        let (line, fill) = field("fill")?;
        let fill = from_hex(&fill, length).ok_or_else(|| BaselineError::Text {
            line,
            msg: format!("`{fill}` is not a hex value of at most {length} bits"),
        })?;
        if let Some((line, content)) = lines.next() {
            return Err(BaselineError::Text { line, msg: format!("unexpected line `{content}`") });
        }
        Self::new(coeffs, fill)
    }
}

/// Hex of bits given least significant first, without leading zeros.
fn to_hex(bits_lsb_first: &[bool]) -> String {
    let nibbles: Vec<u32> =
        bits_lsb_first.chunks(4).map(|c| c.iter().enumerate().map(|(i, &b)| u32::from(b) << i).sum()).collect();
    let s: String =
        nibbles.iter().rev().skip_while(|&&n| n == 0).map(|&n| char::from_digit(n, 16).expect("nibble")).collect();
    if s.is_empty() {
        "0".to_string()
    } else {
        s
    }
}

fn from_hex(s: &str, width: usize) -> Option<Vec<bool>> {
    let s = s.strip_prefix("0x").unwrap_or(s);
    if s.is_empty() {
        return None;
    }
    let mut out = vec![false; width];
    for (pos, ch) in s.chars().rev().enumerate() {
        let n = ch.to_digit(16)?;
        for b in 0..4 {
            if (n >> b) & 1 == 1 {
                *out.get_mut(pos * 4 + b)? = true;
            }
        }
    }
    Some(out)
}

/// Shortest LFSR generating `a2`, with its first `L` bits as the fill.
pub fn berlekamp_massey(a2: &DigitSequence) -> Result<LfsrSpec, BaselineError> {
    if !a2.is_binary() {
        return Err(BaselineError::NotBinary(a2.alphabet()));
    }
    let s = a2.digits();
    let n = s.len();
    // reversed copy so that the discrepancy sum is a word-aligned dot product
    let rev = bits::pack(s.iter().rev().map(|&b| b == 1));
    let words = bits::words_for(n + 1);
    let mut c = vec![0u64; words];
    let mut b = vec![0u64; words];
    c[0] = 1;
    b[0] = 1;
    let mut l = 0usize;
    let mut shift = 1usize;

    for t in 0..n {
        // sum_{i=0}^{L} c_i s_{t-i}, where s_{t-i} = rev[n-1-t+i]
        let base = n - 1 - t;
        let mut acc = 0u64;
        for (w, &cw) in c.iter().enumerate().take(bits::words_for(l + 1)) {
            acc ^= cw & bits::window(&rev, base + 64 * w);
        }
        if acc.count_ones() & 1 == 0 {
            shift += 1;
        } else if 2 * l <= t {
            let prev = c.clone();
            bits::xor_shifted(&mut c, &b, shift);
            l = t + 1 - l;
            b = prev;
            shift = 1;
        } else {
            bits::xor_shifted(&mut c, &b, shift);
            shift += 1;
        }
    }

    let coeffs = (1..=l).map(|i| bits::get(&c, i)).collect();
    let fill = s[..l].iter().map(|&d| d == 1).collect();
    LfsrSpec::new(coeffs, fill)
}
