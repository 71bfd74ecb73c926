//! Independent reference implementations used as test oracles.
#![allow(dead_code)]

use std::collections::HashMap;

pub fn a2_bits() -> Vec<u32> {
    vec![0, 0, 1, 1, 0, 1, 1, 1, 0, 0, 1, 0, 1, 1, 1, 0, 1, 1, 0, 0]
}

/// Smallest e with 2^e >= x.
pub fn ceil_log2(x: usize) -> usize {
    let mut e = 0;
    while (1usize << e) < x {
        e += 1;
    }
    e
}

/// Groups bits into p-bit values MSB first; the final short group is
/// completed by trying every pad in increasing order.
pub fn encode_oracle(bits: &[u32], p: usize) -> (Vec<u32>, Vec<u32>) {
    let value = |g: &[u32]| g.iter().fold(0u32, |a, &b| a * 2 + b);
    let full: Vec<u32> = bits.chunks(p).filter(|c| c.len() == p).map(value).collect();
    let rem = bits.len() % p;
    if rem == 0 {
        return (full, vec![]);
    }
    let tail = &bits[bits.len() - rem..];
    let mut best: Option<(usize, Vec<u32>)> = None;
    for pad in 0..(1u32 << (p - rem)) {
        let pad_bits: Vec<u32> = (0..p - rem).rev().map(|i| (pad >> i) & 1).collect();
        let mut digits = full.clone();
        let mut g = tail.to_vec();
        g.extend(&pad_bits);
        digits.push(value(&g));
        let nmax = n_max(&digits);
        if best.as_ref().is_none_or(|(b, _)| nmax < *b) {
            best = Some((nmax, pad_bits));
        }
    }
    let (_, pad) = best.unwrap();
    let mut g = tail.to_vec();
    g.extend(&pad);
    let mut digits = full;
    digits.push(value(&g));
    (digits, pad)
}

pub fn counts(digits: &[u32]) -> HashMap<u32, usize> {
    let mut h = HashMap::new();
    for &d in digits {
        *h.entry(d).or_insert(0) += 1;
    }
    h
}

pub fn n_max(digits: &[u32]) -> usize {
    counts(digits).values().copied().max().unwrap_or(0)
}

/// Textbook Berlekamp-Massey on a byte vector, returning the linear complexity.
pub fn bm_oracle(s: &[u8]) -> usize {
    let n = s.len();
    let mut c = vec![0u8; n + 1];
    let mut b = vec![0u8; n + 1];
    c[0] = 1;
    b[0] = 1;
    let (mut l, mut m) = (0usize, 1usize);
    for i in 0..n {
        let mut d = s[i];
        for j in 1..=l {
            d ^= c[j] & s[i - j];
        }
        if d == 0 {
            m += 1;
        } else if 2 * l <= i {
            let t = c.clone();
            for j in 0..=n - m {
                c[j + m] ^= b[j];
            }
            l = i + 1 - l;
            b = t;
            m = 1;
        } else {
            for j in 0..=n - m {
                c[j + m] ^= b[j];
            }
            m += 1;
        }
    }
    l
}

/// Whether some Fibonacci LFSR of length `len` (fill = first `len` bits)
/// generates the `k`-bit sequence packed in `s` (bit i = s_i).
pub fn some_lfsr_generates(s: u32, k: usize, len: usize) -> bool {
    if len >= k {
        return true;
    }
    (0u32..1 << len).any(|c| {
        (len..k).all(|t| {
            let mut v = 0;
            for i in 1..=len {
                if (c >> (i - 1)) & 1 == 1 {
                    v ^= (s >> (t - i)) & 1;
                }
            }
            v == (s >> t) & 1
        })
    })
}

/// Aperiodic autocorrelation with bits mapped 0 -> +1, 1 -> -1.
pub fn autocorr(bits: &[u32], u: usize) -> i64 {
    let x = |b: u32| if b == 0 { 1i64 } else { -1 };
    (0..bits.len().saturating_sub(u)).map(|i| x(bits[i]) * x(bits[i + u])).sum()
}

/// Legendre bits by squaring every residue: a_0 = 1, residue -> 0, non-residue -> 1.
pub fn legendre_oracle(l: u64) -> Vec<u32> {
    let squares: std::collections::HashSet<u64> = (1..l).map(|x| x * x % l).collect();
    (0..l)
        .map(|i| {
            if i == 0 {
                1
            } else if squares.contains(&i) {
                0
            } else {
                1
            }
        })
        .collect()
}
