//! Self-delimiting binary encoding of advice triples.
//!
//! A triple `(a1, a2, a3)` with `a1 > 0` and nonzero `a2`, `a3` is written as
//! `s2 s3 B1 000 B2 000 B3`: two sign bits (1 for positive), then the binary
//! magnitudes (most significant bit first) with every `1` doubled to `10` and
//! every `0` to `01`. Payloads never contain three zeros in a row, so the two
//! separators are recoverable.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodecError {
    #[error("a1 must be positive (got {0})")]
    NonPositiveScale(i64),
    #[error("a{0} must be nonzero")]
    ZeroIndex(u8),
    #[error("expected exactly two zero runs of length >= 3, found {0}")]
    SeparatorCount(usize),
    #[error("zero run of length {0} at bit {1}; runs longer than 4 are malformed")]
    LongZeroRun(usize, usize),
    #[error("payload {0} has odd length")]
    OddPayload(u8),
    #[error("payload {0} contains the pair {1}")]
    BadPair(u8, &'static str),
    #[error("payload {0} is empty")]
    EmptyPayload(u8),
    #[error("payload {0} has a leading zero")]
    NonCanonical(u8),
    #[error("payload {0} does not fit in 63 bits")]
    Overflow(u8),
    #[error("invalid character {0:?} in advice text")]
    BadChar(char),
    #[error("packed advice is truncated")]
    Truncated,
    #[error("string too short to hold sign bits")]
    TooShort,
}

/// The integers conveyed by the oracle: tiling scale, column and row.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AdviceTriple {
    a1: i64,
    a2: i64,
    a3: i64,
}

impl AdviceTriple {
    pub fn new(a1: i64, a2: i64, a3: i64) -> Result<Self, CodecError> {
        if a1 <= 0 {
            return Err(CodecError::NonPositiveScale(a1));
        }
        if a2 == 0 {
            return Err(CodecError::ZeroIndex(2));
        }
        if a3 == 0 {
            return Err(CodecError::ZeroIndex(3));
        }
        Ok(AdviceTriple { a1, a2, a3 })
    }

    pub fn a1(&self) -> i64 {
        self.a1
    }

    pub fn a2(&self) -> i64 {
        self.a2
    }

    pub fn a3(&self) -> i64 {
        self.a3
    }
}

impl fmt::Display for AdviceTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a1, self.a2, self.a3)
    }
}

/// Bits held inline before spilling to the heap.
const INLINE: usize = 128;

/// A bit string. Text form is ASCII `0`/`1`.
///
/// The first 128 bits live in a word (bit `i` at position `i`), so every
/// codeword of a modest triple is built and parsed without allocating.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct AdviceString {
    len: usize,
    head: u128,
    tail: Vec<bool>,
}

impl AdviceString {
    pub fn from_bits(bits: Vec<bool>) -> Self {
        let mut s = AdviceString::default();
        for b in bits {
            s.push_word(u128::from(b), 1);
        }
        s
    }

    /// Appends the low `n > 0` bits of `word`, lowest first.
    #[inline]
    fn push_word(&mut self, word: u128, n: usize) {
        debug_assert!(n > 0 && n <= INLINE && (n == INLINE || word >> n == 0));
        if self.len + n <= INLINE {
            self.head |= word << self.len;
            self.len += n;
        } else {
            self.spill(word, n);
        }
    }

    #[cold]
    fn spill(&mut self, word: u128, n: usize) {
        for i in 0..n {
            let b = word >> i & 1 == 1;
            if self.len < INLINE {
                self.head |= u128::from(b) << self.len;
            } else {
                self.tail.push(b);
            }
            self.len += 1;
        }
    }

    pub fn bit(&self, i: usize) -> bool {
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        if i < INLINE {
            self.head >> i & 1 == 1
        } else {
            self.tail[i - INLINE]
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len.min(INLINE)).map(|i| self.head >> i & 1 == 1).chain(self.tail.iter().copied())
    }

    pub fn to_bits(&self) -> Vec<bool> {
        self.iter().collect()
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Packed form: a 32-bit big-endian bit count followed by the bits,
    /// most significant first, zero-padded to a whole byte.
    pub fn to_packed(&self) -> Vec<u8> {
        let mut out = (self.len as u32).to_be_bytes().to_vec();
        out.resize(4 + self.len.div_ceil(8), 0);
        for (i, b) in self.iter().enumerate() {
            if b {
                out[4 + i / 8] |= 0x80 >> (i % 8);
            }
        }
        out
    }

    pub fn from_packed(bytes: &[u8]) -> Result<Self, CodecError> {
        let header: [u8; 4] = bytes.get(..4).ok_or(CodecError::Truncated)?.try_into().unwrap();
        let n = u32::from_be_bytes(header) as usize;
        let body = &bytes[4..];
        if body.len() != n.div_ceil(8) {
            return Err(CodecError::Truncated);
        }
        Ok(AdviceString::from_bits((0..n).map(|i| body[i / 8] & (0x80 >> (i % 8)) != 0).collect()))
    }
}

impl fmt::Display for AdviceString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.iter().map(|b| if b { '1' } else { '0' }).collect();
        f.write_str(&s)
    }
}

impl FromStr for AdviceString {
    type Err = CodecError;
    fn from_str(s: &str) -> Result<Self, CodecError> {
        s.trim()
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(CodecError::BadChar(other)),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(AdviceString::from_bits)
    }
}

impl Serialize for AdviceString {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for AdviceString {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

fn width(magnitude: u64) -> usize {
    (u64::BITS - magnitude.leading_zeros()) as usize
}

/// Moves bit `j` of `x` to bit `2j`.
fn spread32(x: u32) -> u64 {
    let mut v = u64::from(x);
    v = (v | v << 16) & 0x0000_FFFF_0000_FFFF;
    v = (v | v << 8) & 0x00FF_00FF_00FF_00FF;
    v = (v | v << 4) & 0x0F0F_0F0F_0F0F_0F0F;
    v = (v | v << 2) & 0x3333_3333_3333_3333;
    (v | v << 1) & 0x5555_5555_5555_5555
}

fn spread(x: u64) -> u128 {
    u128::from(spread32(x as u32)) | u128::from(spread32((x >> 32) as u32)) << 64
}

/// Appends `magnitude` MSB first as 1 -> 10, 0 -> 01.
#[inline]
fn push_payload(out: &mut AdviceString, magnitude: u64) {
    let w = width(magnitude);
    let mask = u64::MAX >> (u64::BITS as usize - w);
    let ones = magnitude.reverse_bits() >> (u64::BITS as usize - w);
    out.push_word(spread(ones) | spread(!ones & mask) << 1, 2 * w);
}

pub fn encode(t: &AdviceTriple) -> AdviceString {
    let mut s = AdviceString::default();
    s.push_word(u128::from(t.a2 > 0) | u128::from(t.a3 > 0) << 1, 2);
    push_payload(&mut s, t.a1.unsigned_abs());
    s.push_word(0, 3);
    push_payload(&mut s, t.a2.unsigned_abs());
    s.push_word(0, 3);
    push_payload(&mut s, t.a3.unsigned_abs());
    s
}

fn read_payload(bits: &[bool], which: u8) -> Result<i64, CodecError> {
    if bits.is_empty() {
        return Err(CodecError::EmptyPayload(which));
    }
    if !bits.len().is_multiple_of(2) {
        return Err(CodecError::OddPayload(which));
    }
    if bits.len() / 2 > 63 {
        return Err(CodecError::Overflow(which));
    }
    let mut value: i64 = 0;
    for pair in bits.chunks(2) {
        let bit = match (pair[0], pair[1]) {
            (true, false) => 1,
            (false, true) => 0,
            (true, true) => return Err(CodecError::BadPair(which, "11")),
            (false, false) => return Err(CodecError::BadPair(which, "00")),
        };
        if value == 0 && bit == 0 {
            return Err(CodecError::NonCanonical(which));
        }
        value = value << 1 | bit;
    }
    Ok(value)
}

pub fn decode(s: &AdviceString) -> Result<AdviceTriple, CodecError> {
    if let Some(t) = decode_inline(s) {
        return Ok(t);
    }
    decode_checked(&s.to_bits())
}

/// Inverse of `spread32`: keeps the even bits of `v`, packed.
fn compact32(v: u64) -> u32 {
    let mut v = v & 0x5555_5555_5555_5555;
    v = (v | v >> 1) & 0x3333_3333_3333_3333;
    v = (v | v >> 2) & 0x0F0F_0F0F_0F0F_0F0F;
    v = (v | v >> 4) & 0x00FF_00FF_00FF_00FF;
    v = (v | v >> 8) & 0x0000_FFFF_0000_FFFF;
    ((v | v >> 16) & 0xFFFF_FFFF) as u32
}

/// Word-parallel parse of a well-formed inline codeword; `None` on any
/// irregularity so the checked path can name the error.
fn decode_inline(s: &AdviceString) -> Option<AdviceTriple> {
    const EVEN: u128 = 0x5555_5555_5555_5555_5555_5555_5555_5555;
    if s.len > INLINE || s.len < 2 {
        return None;
    }
    let mut x = s.head >> 2;
    let mut left = s.len - 2;
    let mut mags = [0i64; 3];
    for (k, mag) in mags.iter_mut().enumerate() {
        // A payload opens with the pair 10, i.e. low bit set.
        if x & 3 != 0b01 {
            return None;
        }
        // Bit 2j of `live` is set when pair j is not 00; bits past the end
        // are zero, so the payload stops at the first 00 pair.
        let live = (x | x >> 1) & EVEN;
        let used = ((!live & EVEN).trailing_zeros() / 2) as usize;
        let span = 2 * used;
        let tail = if k < 2 { 3 } else { 0 };
        if span + tail > left || (k == 2 && span != left) {
            return None;
        }
        let low = (1u128 << span) - 1;
        if x & x >> 1 & EVEN & low != 0 || (k < 2 && x >> (span + 2) & 1 != 0) {
            return None;
        }
        let firsts = x & EVEN & low;
        let packed = u64::from(compact32(firsts as u64)) | u64::from(compact32((firsts >> 64) as u64)) << 32;
        *mag = (packed.reverse_bits() >> (64 - used)) as i64;
        if k < 2 {
            x >>= span + tail;
            left -= span + tail;
        }
    }
    let sign = |b: u128, m: i64| if b == 1 { m } else { -m };
    AdviceTriple::new(mags[0], sign(s.head & 1, mags[1]), sign(s.head >> 1 & 1, mags[2])).ok()
}

fn decode_checked(bits: &[bool]) -> Result<AdviceTriple, CodecError> {
    if bits.len() < 2 {
        return Err(CodecError::TooShort);
    }
    // Maximal zero runs of length >= 3, as (start, end) half-open.
    let mut runs = [(0usize, 0usize); 2];
    let mut found = 0;
    let mut i = 0;
    while i < bits.len() {
        if bits[i] {
            i += 1;
            continue;
        }
        let start = i;
        while i < bits.len() && !bits[i] {
            i += 1;
        }
        let len = i - start;
        if len >= 5 {
            return Err(CodecError::LongZeroRun(len, start));
        }
        if len >= 3 {
            if found < 2 {
                runs[found] = (start, i);
            }
            found += 1;
        }
    }
    if found != 2 {
        return Err(CodecError::SeparatorCount(found));
    }
    let [(_, end1), (_, end2)] = runs;
    // Separators are the length-3 suffixes of the runs.
    let sep1 = end1 - 3;
    let sep2 = end2 - 3;
    if sep1 < 2 {
        return Err(CodecError::EmptyPayload(1));
    }
    let a1 = read_payload(&bits[2..sep1], 1)?;
    let m2 = read_payload(&bits[end1..sep2], 2)?;
    let m3 = read_payload(&bits[end2..], 3)?;
    let a2 = if bits[0] { m2 } else { -m2 };
    let a3 = if bits[1] { m3 } else { -m3 };
    AdviceTriple::new(a1, a2, a3)
}

/// Codeword length for a triple without materializing it.
pub fn encoded_len(t: &AdviceTriple) -> usize {
    8 + 2 * [t.a1, t.a2, t.a3].iter().map(|v| width(v.unsigned_abs())).sum::<usize>()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(text: &str) -> AdviceString {
        text.parse().unwrap()
    }

    fn triple(a1: i64, a2: i64, a3: i64) -> AdviceTriple {
        AdviceTriple::new(a1, a2, a3).unwrap()
    }

    #[test]
    fn worked_example() {
        let t = triple(3, -4, 5);
        assert_eq!(encode(&t).to_string(), "011010000100101000100110");
        assert_eq!(decode(&s("011010000100101000100110")).unwrap(), t);
    }

    #[test]
    fn hand_encoded_examples() {
        assert_eq!(encode(&triple(1, 1, 1)).to_string(), ["11", "10", "000", "10", "000", "10"].concat());
        assert_eq!(encode(&triple(2, -1, -1)).to_string(), ["00", "1001", "000", "10", "000", "10"].concat());
        assert_eq!(decode(&encode(&triple(1, 1, 1))).unwrap(), triple(1, 1, 1));
        assert_eq!(encoded_len(&triple(3, -4, 5)), 24);
    }

    #[test]
    fn truncated_codewords() {
        // Dropping a whole pair leaves a well-formed codeword for a different triple.
        assert_eq!(decode(&s("0110100001001010001001")).unwrap(), triple(3, -4, 2));
        assert_eq!(decode(&s("01101000010010100010011")), Err(CodecError::OddPayload(3)));
    }

    #[test]
    fn malformed_strings() {
        assert_eq!(decode(&s("1")), Err(CodecError::TooShort));
        assert_eq!(decode(&s("111010")), Err(CodecError::SeparatorCount(0)));
        assert!(matches!(decode(&s("11100000100010")), Err(CodecError::LongZeroRun(5, 3))));
        assert_eq!(decode(&s("1111000100010")), Err(CodecError::BadPair(1, "11")));
        assert_eq!(decode(&s("11000100010")), Err(CodecError::EmptyPayload(1)));
        assert_eq!(decode(&s(&["11", "0110", "000", "10", "000", "10"].concat())), Err(CodecError::NonCanonical(1)));
        assert!("10a".parse::<AdviceString>().is_err());
    }

    #[test]
    fn triple_validation() {
        assert_eq!(AdviceTriple::new(0, 1, 1), Err(CodecError::NonPositiveScale(0)));
        assert_eq!(AdviceTriple::new(-3, 1, 1), Err(CodecError::NonPositiveScale(-3)));
        assert_eq!(AdviceTriple::new(1, 0, 1), Err(CodecError::ZeroIndex(2)));
        assert_eq!(AdviceTriple::new(1, 1, 0), Err(CodecError::ZeroIndex(3)));
    }

    #[test]
    fn packed_form() {
        let a = encode(&triple(3, -4, 5));
        let packed = a.to_packed();
        assert_eq!(&packed[..4], &[0, 0, 0, 24]);
        assert_eq!(&packed[4..], &[0b0110_1000, 0b0100_1010, 0b0010_0110]);
        assert_eq!(AdviceString::from_packed(&packed).unwrap(), a);
        assert_eq!(AdviceString::from_packed(&packed[..5]), Err(CodecError::Truncated));
    }

    #[test]
    fn long_strings_spill_past_the_inline_word() {
        let big = triple(i64::MAX, -(1 << 62), 1 << 40);
        let a = encode(&big);
        assert_eq!(a.len(), encoded_len(&big));
        assert!(a.len() > INLINE);
        assert_eq!(decode(&a).unwrap(), big);
        assert_eq!(AdviceString::from_bits(a.to_bits()), a);
        assert_eq!(a.to_string().parse::<AdviceString>().unwrap(), a);
        assert_eq!(AdviceString::from_packed(&a.to_packed()).unwrap(), a);
        assert!(a.bit(INLINE + 1) == a.to_bits()[INLINE + 1]);
    }
}
