//! Packed GF(2) vectors, bit `i` in word `i / 64` at position `i % 64`.

#[inline]
pub(crate) fn words_for(bits: usize) -> usize {
    bits.div_ceil(64)
}

#[inline]
pub(crate) fn get(v: &[u64], i: usize) -> bool {
    (v[i / 64] >> (i % 64)) & 1 == 1
}

#[inline]
pub(crate) fn set(v: &mut [u64], i: usize, b: bool) {
    let mask = 1u64 << (i % 64);
    if b {
        v[i / 64] |= mask;
    } else {
        v[i / 64] &= !mask;
    }
}

#[inline]
pub(crate) fn flip(v: &mut [u64], i: usize) {
    v[i / 64] ^= 1u64 << (i % 64);
}

pub(crate) fn pack(bits: impl IntoIterator<Item = bool>) -> Vec<u64> {
    let mut v = Vec::new();
    for (i, b) in bits.into_iter().enumerate() {
        if i % 64 == 0 {
            v.push(0);
        }
        if b {
            v[i / 64] |= 1 << (i % 64);
        }
    }
    v
}

/// 64 bits of `v` starting at bit `offset`; bits past the end read as 0.
#[inline]
pub(crate) fn window(v: &[u64], offset: usize) -> u64 {
    let (w, s) = (offset / 64, offset % 64);
    let lo = v.get(w).copied().unwrap_or(0);
    if s == 0 {
        lo
    } else {
        let hi = v.get(w + 1).copied().unwrap_or(0);
        (lo >> s) | (hi << (64 - s))
    }
}

/// `dst ^= src << shift`, truncated to the length of `dst`.
pub(crate) fn xor_shifted(dst: &mut [u64], src: &[u64], shift: usize) {
    let (ws, bs) = (shift / 64, shift % 64);
    for (i, &word) in src.iter().enumerate() {
        let j = i + ws;
        if j >= dst.len() {
            break;
        }
        dst[j] ^= word << bs;
        if bs != 0 && j + 1 < dst.len() {
            dst[j + 1] ^= word >> (64 - bs);
        }
    }
}

pub(crate) fn count_ones(v: &[u64]) -> usize {
    v.iter().map(|w| w.count_ones() as usize).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn window_and_shift() {
        let v = vec![u64::MAX << 60, 0b1011];
        assert_eq!(window(&v, 60) & 0xFF, 0b1011_1111);
        assert_eq!(window(&v, 130), 0);
        let mut d = vec![0u64; 3];
        xor_shifted(&mut d, &[0b11 << 62], 1);
        assert_eq!(d, vec![1 << 63, 1, 0]);
        xor_shifted(&mut d, &[1], 128);
        assert_eq!(d[2], 1);
    }

    #[test]
    fn pack_get_set() {
        let mut v = pack((0..70).map(|i| i % 3 == 0));
        assert_eq!(v.len(), 2);
        assert!(get(&v, 69));
        set(&mut v, 69, false);
        assert!(!get(&v, 69));
        flip(&mut v, 1);
        assert!(get(&v, 1));
        assert_eq!(count_ones(&v), 24);
    }
}
