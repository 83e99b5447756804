use num_bigint::BigInt;

use super::{render_power, GroupOracle};
use crate::error::{Error, Result};

/// `G(n,m) = ⟨x, y | xⁿ = yᵐ⟩` with `z = xⁿ` central.
///
/// Normal form: `z^k` times an alternating word of syllables `x^a`
/// (`1 ≤ a < n`) and `y^b` (`1 ≤ b < m`). Modulo `z` this is the free product
/// `ℤ/n ∗ ℤ/m`, so the form is unique.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusKnot {
    n: u32,
    m: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    X,
    Y,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Syllable {
    pub letter: Letter,
    pub exp: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TorusElement {
    pub z: BigInt,
    pub syllables: Vec<Syllable>,
}

impl TorusElement {
    pub fn is_central_power(&self) -> bool {
        self.syllables.is_empty()
    }
}

impl TorusKnot {
    pub fn new(n: u32, m: u32) -> Result<Self> {
        if n < 2 || m < 2 {
            return Err(Error::InvalidArgument(format!("torus:{n}:{m} needs both exponents at least 2")));
        }
        Ok(TorusKnot { n, m })
    }

    fn modulus(&self, l: Letter) -> u32 {
        match l {
            Letter::X => self.n,
            Letter::Y => self.m,
        }
    }

    pub fn central(&self) -> TorusElement {
        TorusElement { z: BigInt::from(1), syllables: Vec::new() }
    }
}

impl GroupOracle for TorusKnot {
    type Elem = TorusElement;

    fn name(&self) -> String {
        format!("torus:{}:{}", self.n, self.m)
    }

    fn identity(&self) -> TorusElement {
        TorusElement { z: BigInt::from(0), syllables: Vec::new() }
    }

    fn mul(&self, a: &TorusElement, b: &TorusElement) -> TorusElement {
        let mut z = &a.z + &b.z;
        let mut left = a.syllables.clone();
        let mut right = b.syllables.iter().copied().peekable();
        while let (Some(&last), Some(&first)) = (left.last(), right.peek()) {
            if last.letter != first.letter {
                break;
            }
            left.pop();
            right.next();
            let modulus = self.modulus(last.letter);
            let mut exp = last.exp + first.exp;
            if exp >= modulus {
                exp -= modulus;
                z += 1;
            }
            if exp != 0 {
                left.push(Syllable { letter: last.letter, exp });
                break;
            }
        }
        left.extend(right);
        TorusElement { z, syllables: left }
    }

    fn inv(&self, a: &TorusElement) -> TorusElement {
        // (x^a)⁻¹ = x^(n−a) z⁻¹
        let syllables: Vec<Syllable> = a
            .syllables
            .iter()
            .rev()
            .map(|s| Syllable { letter: s.letter, exp: self.modulus(s.letter) - s.exp })
            .collect();
        TorusElement { z: -&a.z - BigInt::from(syllables.len()), syllables }
    }

    fn generators(&self) -> Vec<(char, TorusElement)> {
        let gen = |letter| TorusElement { z: BigInt::from(0), syllables: vec![Syllable { letter, exp: 1 }] };
        vec![('x', gen(Letter::X)), ('y', gen(Letter::Y))]
    }

    /// The `z` power is folded into the first syllable, e.g. `z·xy` on
    /// `torus:2:3` renders as `xxxy`.
    fn render(&self, a: &TorusElement) -> String {
        let letter_char = |l| if l == Letter::X { 'x' } else { 'y' };
        let mut s = String::new();
        let z: i64 = match i64::try_from(&a.z) {
            Ok(z) => z,
            Err(_) => return format!("z^{}·{}", a.z, self.render(&TorusElement { z: 0.into(), ..a.clone() })),
        };
        let first_letter = a.syllables.first().map_or(Letter::X, |s| s.letter);
        let mut first = a.syllables.first().map_or(0, |s| s.exp as i64);
        first += z * self.modulus(first_letter) as i64;
        render_power(&mut s, letter_char(first_letter), first);
        for syl in a.syllables.iter().skip(1) {
            render_power(&mut s, letter_char(syl.letter), syl.exp as i64);
        }
        if s.is_empty() {
            "e".into()
        } else {
            s
        }
    }

    fn structurally_central(&self, a: &TorusElement) -> bool {
        a.is_central_power()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defining_relation() {
        let g = TorusKnot::new(2, 3).unwrap();
        let x = g.parse_element("x").unwrap();
        let y = g.parse_element("y").unwrap();
        assert_eq!(g.pow(&x, 2), g.central());
        assert_eq!(g.pow(&y, 3), g.central());
        assert!(!g.commutes(&x, &y));
        let w = g.parse_element("xyxYYx").unwrap();
        assert!(g.commutes(&g.central(), &w));
        assert_eq!(g.mul(&w, &g.inv(&w)), g.identity());
        assert_eq!(g.mul(&g.inv(&w), &w), g.identity());
    }

    #[test]
    fn render_folds_central_power() {
        let g = TorusKnot::new(2, 3).unwrap();
        let w = g.parse_element("xxxy").unwrap();
        assert_eq!(w.z, BigInt::from(1));
        assert_eq!(g.render(&w), "xxxy");
        for word in ["e", "X", "YxyyX", "x^5y^-4x"] {
            let e = g.parse_element(word).unwrap();
            assert_eq!(g.parse_element(&g.render(&e)).unwrap(), e, "{word}");
        }
    }

    #[test]
    fn rejects_degenerate_exponents() {
        assert!(TorusKnot::new(1, 3).is_err());
    }
}
