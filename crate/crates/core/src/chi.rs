//! Characteristic bit vectors of orders.
//!
//! Coordinates are the off-diagonal pairs `(a, b)` in row-major order, so for
//! `n = 3` the bit positions are `(0,1) (0,2) (1,0) (1,2) (2,0) (2,1)`.
//!
//! File format:
//!
//! ```text
//! chi <n> <side>
//! <bits>
//! <bits>
//! ...
//! ```
//!
//! One ASCII `0`/`1` line per order; for `n = 1` each order is an empty line.
//! Lines starting with `#` are comments.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::magma::{parse_index, Magma};
use crate::order::{verify_order, OrderRelation, Side, Violation};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChiVector {
    size: usize,
    bits: Vec<bool>,
}

pub fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1)
}

/// Position of `(a, b)` among the off-diagonal pairs in row-major order.
pub fn pair_index(a: usize, b: usize, n: usize) -> Result<usize> {
    if a == b {
        return Err(Error::DiagonalPair(a));
    }
    for x in [a, b] {
        if x >= n {
            return Err(Error::ElementOutOfRange { element: x, size: n });
        }
    }
    Ok(a * (n - 1) + if b < a { b } else { b - 1 })
}

/// Inverse of [`pair_index`].
pub fn pair_at(index: usize, n: usize) -> (usize, usize) {
    let a = index / (n - 1);
    let r = index % (n - 1);
    (a, if r < a { r } else { r + 1 })
}

impl ChiVector {
    pub fn new(size: usize, bits: Vec<bool>) -> Result<Self> {
        if bits.len() != pair_count(size) {
            return Err(Error::LengthMismatch { expected: pair_count(size), found: bits.len() });
        }
        Ok(ChiVector { size, bits })
    }

    /// Bits of the integer `value`, most significant bit first.
    pub fn from_index(size: usize, value: u64) -> Self {
        let len = pair_count(size);
        let bits = (0..len).map(|i| (value >> (len - 1 - i)) & 1 == 1).collect();
        ChiVector { size, bits }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn bit(&self, a: usize, b: usize) -> Result<bool> {
        Ok(self.bits[pair_index(a, b, self.size)?])
    }

    pub fn to_bit_string(&self) -> String {
        self.bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
    }

    pub fn parse_bits(size: usize, text: &str) -> Result<Self> {
        let bits = text
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::InvalidArgument(format!("`{other}` is not a bit"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(size, bits)
    }

    /// The relation with `(a, b)` in it exactly when its bit is set.
    pub fn to_relation(&self) -> OrderRelation {
        let n = self.size;
        OrderRelation::from_fn(n, |a, b| self.bits[pair_index(a, b, n).expect("off-diagonal")])
    }
}

pub fn encode(r: &OrderRelation) -> Result<ChiVector> {
    if let Some((a, b)) = r.first_undecided() {
        return Err(Error::Incomplete(a, b));
    }
    let n = r.size();
    let bits = (0..pair_count(n)).map(|i| {
        let (a, b) = pair_at(i, n);
        r.holds(a, b)
    });
    Ok(ChiVector { size: n, bits: bits.collect() })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decoded {
    Accepted(OrderRelation),
    Rejected(Violation),
}

/// Accepts a bit vector iff it is the characteristic vector of a `side`-invariant
/// strict total order of `m`.
pub fn decode(chi: &ChiVector, m: &Magma, side: Side) -> Result<Decoded> {
    if chi.size() != m.size() {
        return Err(Error::LengthMismatch { expected: pair_count(m.size()), found: chi.bits.len() });
    }
    let r = chi.to_relation();
    Ok(match verify_order(m, &r, side)? {
        None => Decoded::Accepted(r),
        Some(v) => Decoded::Rejected(v),
    })
}

/// Membership of the encoded order in the subbasis set of orders containing `(a, b)`.
pub fn subbasis_bit(chi: &ChiVector, a: usize, b: usize) -> Result<bool> {
    chi.bit(a, b)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChiFile {
    pub size: usize,
    pub side: Side,
    pub vectors: Vec<ChiVector>,
}

impl ChiFile {
    pub fn to_text(&self) -> String {
        let mut out = format!("chi {} {}\n", self.size, self.side);
        for v in &self.vectors {
            let _ = writeln!(out, "{}", v.to_bit_string());
        }
        out
    }

    pub fn parse(text: &str, source: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.starts_with('#'));
        let (hline, header) = loop {
            match lines.next() {
                Some((_, "")) => continue,
                Some(h) => break h,
                None => return Err(Error::parse(source, 1, "", "empty file, expected `chi <n> <side>`")),
            }
        };
        let toks: Vec<&str> = header.split_whitespace().collect();
        if toks.first() != Some(&"chi") {
            return Err(Error::parse(source, hline, toks.first().copied().unwrap_or(""), "expected `chi`"));
        }
        if toks.len() != 3 {
            return Err(Error::parse(source, hline, header, "expected `chi <n> <side>`"));
        }
        let size = parse_index(source, hline, toks[1])?;
        if size == 0 {
            return Err(Error::parse(source, hline, toks[1], "size must be positive"));
        }
        let side: Side = toks[2].parse().map_err(|_| Error::parse(source, hline, toks[2], "unknown side"))?;
        let mut vectors = Vec::new();
        for (lno, line) in lines {
            if line.is_empty() && size > 1 {
                continue;
            }
            let v = ChiVector::parse_bits(size, line).map_err(|e| Error::parse(source, lno, line, e.to_string()))?;
            vectors.push(v);
        }
        if vectors.is_empty() && size == 1 {
            vectors.push(ChiVector { size: 1, bits: vec![] });
        }
        Ok(ChiFile { size, side, vectors })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quandle::trivial_quandle;

    #[test]
    fn pair_indices_for_three() {
        assert_eq!(pair_index(0, 1, 3).unwrap(), 0);
        assert_eq!(pair_index(1, 0, 3).unwrap(), 2);
        assert_eq!(pair_index(2, 1, 3).unwrap(), 5);
        assert_eq!(pair_index(1, 1, 3), Err(Error::DiagonalPair(1)));
        for n in 2..7 {
            for i in 0..pair_count(n) {
                let (a, b) = pair_at(i, n);
                assert_eq!(pair_index(a, b, n).unwrap(), i);
            }
        }
    }

    #[test]
    fn encode_small_orders() {
        let up = OrderRelation::from_ranking(&[0, 1, 2]).unwrap();
        assert_eq!(encode(&up).unwrap().to_bit_string(), "110100");
        let down = OrderRelation::from_ranking(&[2, 1, 0]).unwrap();
        assert_eq!(encode(&down).unwrap().to_bit_string(), "001011");
        assert_eq!(encode(&OrderRelation::from_ranking(&[0]).unwrap()).unwrap().to_bit_string(), "");
        assert_eq!(encode(&OrderRelation::empty(2)), Err(Error::Incomplete(0, 1)));
    }

    #[test]
    fn decode_rejections() {
        let t3 = trivial_quandle(3).unwrap().into_magma();
        let flipped = ChiVector::parse_bits(3, "111100").unwrap();
        assert_eq!(
            decode(&flipped, &t3, Side::Right).unwrap(),
            Decoded::Rejected(Violation::Asymmetry { a: 0, b: 1, both: true })
        );
        let intransitive = ChiVector::parse_bits(3, "100110").unwrap();
        assert_eq!(
            decode(&intransitive, &t3, Side::Right).unwrap(),
            Decoded::Rejected(Violation::Transitivity { a: 0, b: 1, c: 2 })
        );
        let up = ChiVector::parse_bits(3, "110100").unwrap();
        assert_eq!(
            decode(&up, &t3, Side::Right).unwrap(),
            Decoded::Accepted(OrderRelation::from_ranking(&[0, 1, 2]).unwrap())
        );
        assert!(ChiVector::parse_bits(3, "11010").is_err());
    }

    #[test]
    fn subbasis_bits() {
        let chi = encode(&OrderRelation::from_ranking(&[0, 1, 2]).unwrap()).unwrap();
        assert!(subbasis_bit(&chi, 0, 2).unwrap());
        assert!(!subbasis_bit(&chi, 2, 0).unwrap());
        assert!(subbasis_bit(&chi, 1, 1).is_err());
    }

    #[test]
    fn file_round_trip() {
        let file = ChiFile {
            size: 3,
            side: Side::Right,
            vectors: vec![ChiVector::parse_bits(3, "110100").unwrap(), ChiVector::parse_bits(3, "001011").unwrap()],
        };
        let text = file.to_text();
        assert_eq!(text, "chi 3 right\n110100\n001011\n");
        assert_eq!(ChiFile::parse(&text, "f").unwrap(), file);
        let single = ChiFile::parse("chi 1 left\n\n", "f").unwrap();
        assert_eq!(single.vectors.len(), 1);
        let err = ChiFile::parse("chi 3 right\n1102\n", "bad.chi").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        assert!(ChiFile::parse("chi 3 up\n", "f").is_err());
    }
}
