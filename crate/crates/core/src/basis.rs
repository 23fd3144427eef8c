//! Bitstring bases for tensor-product modules and GF(2) vectors over them.
//!
//! A quadrangulation with `I` squares indexes module bases by length-`I`
//! bitstrings: bit `i` records the basic suture type on square `i`
//! (`1` for positive, `0` for negative). Gradings count ones minus zeros.

use std::collections::BTreeSet;
use std::fmt;

/// A basis label: a bitstring of fixed length, bit `i` for square `i`.
///
/// Lengths up to 64 are supported, which is far beyond anything a desk-scale
/// surface produces.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct BitString {
    len: u8,
    bits: u64,
}

impl Ord for BitString {
    /// Lexicographic in display order (bit 0 is the leftmost character).
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        let key = |b: &BitString| {
            (
                b.len,
                if b.len == 0 {
                    0
                } else {
                    b.bits.reverse_bits() >> (64 - b.len as u32)
                },
            )
        };
        key(self).cmp(&key(other))
    }
}

impl PartialOrd for BitString {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl BitString {
    pub fn new(len: usize) -> Self {
        assert!(len <= 64, "bitstring length {len} exceeds 64");
        BitString {
            len: len as u8,
            bits: 0,
        }
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        let mut b = BitString::new(bits.len());
        for (i, &v) in bits.iter().enumerate() {
            b.set(i, v);
        }
        b
    }

    /// Parse from a string of `0`/`1` characters, leftmost character first.
    pub fn parse(s: &str) -> Option<Self> {
        if s.len() > 64 {
            return None;
        }
        let mut b = BitString::new(s.len());
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => b.set(i, true),
                _ => return None,
            }
        }
        Some(b)
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len());
        (self.bits >> i) & 1 == 1
    }

    pub fn set(&mut self, i: usize, v: bool) {
        assert!(i < self.len());
        if v {
            self.bits |= 1 << i;
        } else {
            self.bits &= !(1 << i);
        }
    }

    pub fn ones(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn zeros(&self) -> usize {
        self.len() - self.ones()
    }

    /// Euler grading: number of ones minus number of zeros.
    pub fn grading(&self) -> i64 {
        self.ones() as i64 - self.zeros() as i64
    }

    /// Append a bit at the end (a new last tensor slot).
    pub fn push(&self, v: bool) -> Self {
        let mut b = BitString {
            len: self.len + 1,
            bits: self.bits,
        };
        b.set(self.len(), v);
        b
    }

    /// Remove the bit at `slot`, shifting later slots down.
    pub fn delete(&self, slot: usize) -> Self {
        assert!(slot < self.len());
        let mut out = BitString::new(self.len() - 1);
        let mut j = 0;
        for i in 0..self.len() {
            if i != slot {
                out.set(j, self.get(i));
                j += 1;
            }
        }
        out
    }

    pub fn flipped(&self, i: usize) -> Self {
        let mut b = *self;
        b.set(i, !b.get(i));
        b
    }

    /// The bare digit string, without the ket brackets.
    pub fn digits(&self) -> String {
        (0..self.len())
            .map(|i| if self.get(i) { '1' } else { '0' })
            .collect()
    }

    /// All bitstrings of the given length, in increasing numeric order.
    pub fn all(len: usize) -> impl Iterator<Item = BitString> {
        assert!(len <= 20, "basis enumeration capped at 2^20");
        (0u64..(1 << len)).map(move |bits| BitString {
            len: len as u8,
            bits,
        })
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "|")?;
        for i in 0..self.len() {
            write!(f, "{}", if self.get(i) { '1' } else { '0' })?;
        }
        write!(f, ">")
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A vector over GF(2) with bitstring basis, stored as its support.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Gf2Vector {
    support: BTreeSet<BitString>,
}

impl Gf2Vector {
    pub fn zero() -> Self {
        Gf2Vector::default()
    }

    pub fn basis(b: BitString) -> Self {
        let mut s = BTreeSet::new();
        s.insert(b);
        Gf2Vector { support: s }
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }

    pub fn support(&self) -> impl Iterator<Item = &BitString> {
        self.support.iter()
    }

    pub fn contains(&self, b: &BitString) -> bool {
        self.support.contains(b)
    }

    /// Toggle a basis vector (addition of one basis element over GF(2)).
    pub fn toggle(&mut self, b: BitString) {
        if !self.support.remove(&b) {
            self.support.insert(b);
        }
    }

    pub fn add(&self, other: &Gf2Vector) -> Gf2Vector {
        let mut out = self.clone();
        for b in &other.support {
            out.toggle(*b);
        }
        out
    }

    /// Common grading of the support, if homogeneous.
    pub fn grading(&self) -> Grading {
        let mut it = self.support.iter();
        let first = match it.next() {
            None => return Grading::Zero,
            Some(b) => b.grading(),
        };
        if it.all(|b| b.grading() == first) {
            Grading::Homogeneous(first)
        } else {
            Grading::Mixed
        }
    }
}

/// Grading of a vector: zero vectors grade vacuously.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Grading {
    Zero,
    Homogeneous(i64),
    Mixed,
}

impl fmt::Display for Gf2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.support.is_empty() {
            return write!(f, "0");
        }
        for (i, b) in self.support.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Gf2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bitstring_display_and_grading() {
        let b = BitString::parse("011").unwrap();
        assert_eq!(b.to_string(), "|011>");
        assert_eq!(b.grading(), 1);
        assert_eq!(BitString::parse("00").unwrap().grading(), -2);
    }

    #[test]
    fn delete_shifts() {
        let b = BitString::parse("011").unwrap();
        assert_eq!(b.delete(0).to_string(), "|11>");
        assert_eq!(b.delete(1).to_string(), "|01>");
    }

    #[test]
    fn gf2_addition_cancels() {
        let b = BitString::parse("01").unwrap();
        let v = Gf2Vector::basis(b);
        assert!(v.add(&v).is_zero());
        let w = v.add(&Gf2Vector::basis(BitString::parse("10").unwrap()));
        assert_eq!(w.to_string(), "|01> + |10>");
        assert_eq!(w.grading(), Grading::Homogeneous(0));
    }
}
