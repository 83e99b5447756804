use super::{numbered_letter, render_power, GroupOracle, NUMBERED_LETTERS};
use crate::error::{Error, Result};

fn render_or_identity(s: String) -> String {
    if s.is_empty() {
        "e".to_string()
    } else {
        s
    }
}

/// `ℤ^k` with the standard basis as generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeAbelian {
    rank: usize,
}

impl FreeAbelian {
    pub fn new(rank: usize) -> Result<Self> {
        if rank == 0 || rank > NUMBERED_LETTERS.len() {
            return Err(Error::InvalidArgument(format!("rank must be in 1..={}", NUMBERED_LETTERS.len())));
        }
        Ok(FreeAbelian { rank })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }
}

impl GroupOracle for FreeAbelian {
    type Elem = Vec<i64>;

    fn name(&self) -> String {
        format!("Z^{}", self.rank)
    }

    fn identity(&self) -> Vec<i64> {
        vec![0; self.rank]
    }

    fn mul(&self, a: &Vec<i64>, b: &Vec<i64>) -> Vec<i64> {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    fn inv(&self, a: &Vec<i64>) -> Vec<i64> {
        a.iter().map(|x| -x).collect()
    }

    fn generators(&self) -> Vec<(char, Vec<i64>)> {
        (0..self.rank)
            .map(|i| {
                let mut v = vec![0; self.rank];
                v[i] = 1;
                (numbered_letter(i), v)
            })
            .collect()
    }

    fn render(&self, a: &Vec<i64>) -> String {
        let mut s = String::new();
        for (i, &x) in a.iter().enumerate() {
            render_power(&mut s, numbered_letter(i), x);
        }
        render_or_identity(s)
    }

    fn coordinate_names(&self) -> Vec<String> {
        (1..=self.rank).map(|i| format!("x{i}")).collect()
    }

    fn coordinates(&self, a: &Vec<i64>) -> Option<Vec<i64>> {
        Some(a.clone())
    }

    fn element_at(&self, c: &[i64]) -> Option<Vec<i64>> {
        (c.len() == self.rank).then(|| c.to_vec())
    }

    fn structurally_central(&self, _a: &Vec<i64>) -> bool {
        true
    }

    fn lex_biorderable(&self) -> bool {
        true
    }
}

/// Integer Heisenberg group: `(a,b,c)(x,y,z) = (a+x, b+y, c+z+a·y)`.
///
/// Generators `x = (1,0,0)` and `y = (0,1,0)`; their commutator is `(0,0,1)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Heisenberg;

pub type Triple = (i64, i64, i64);

impl GroupOracle for Heisenberg {
    type Elem = Triple;

    fn name(&self) -> String {
        "heisenberg".into()
    }

    fn identity(&self) -> Triple {
        (0, 0, 0)
    }

    fn mul(&self, &(a, b, c): &Triple, &(x, y, z): &Triple) -> Triple {
        (a + x, b + y, c + z + a * y)
    }

    fn inv(&self, &(a, b, c): &Triple) -> Triple {
        (-a, -b, a * b - c)
    }

    fn generators(&self) -> Vec<(char, Triple)> {
        vec![('x', (1, 0, 0)), ('y', (0, 1, 0))]
    }

    fn render(&self, &(x, y, z): &Triple) -> String {
        format!("({x},{y},{z})")
    }

    fn coordinate_names(&self) -> Vec<String> {
        vec!["x".into(), "y".into(), "z".into()]
    }

    fn coordinates(&self, &(x, y, z): &Triple) -> Option<Vec<i64>> {
        Some(vec![x, y, z])
    }

    fn element_at(&self, c: &[i64]) -> Option<Triple> {
        match *c {
            [x, y, z] => Some((x, y, z)),
            _ => None,
        }
    }

    fn structurally_central(&self, &(x, y, _): &Triple) -> bool {
        x == 0 && y == 0
    }

    fn lex_biorderable(&self) -> bool {
        true
    }
}

/// Fundamental group of the Klein bottle, `⟨a, b | a⁻¹ba = b⁻¹⟩`, with
/// normal forms `a^p b^q` and `(p,q)(r,s) = (p+r, (−1)^r q + s)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Klein;

pub type Pair = (i64, i64);

fn sign_of_parity(r: i64) -> i64 {
    if r.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

impl GroupOracle for Klein {
    type Elem = Pair;

    fn name(&self) -> String {
        "klein".into()
    }

    fn identity(&self) -> Pair {
        (0, 0)
    }

    fn mul(&self, &(p, q): &Pair, &(r, s): &Pair) -> Pair {
        (p + r, sign_of_parity(r) * q + s)
    }

    fn inv(&self, &(p, q): &Pair) -> Pair {
        (-p, -sign_of_parity(p) * q)
    }

    fn generators(&self) -> Vec<(char, Pair)> {
        vec![('a', (1, 0)), ('b', (0, 1))]
    }

    fn render(&self, &(p, q): &Pair) -> String {
        let mut s = String::new();
        render_power(&mut s, 'a', p);
        render_power(&mut s, 'b', q);
        render_or_identity(s)
    }

    fn coordinate_names(&self) -> Vec<String> {
        vec!["p".into(), "q".into()]
    }

    fn coordinates(&self, &(p, q): &Pair) -> Option<Vec<i64>> {
        Some(vec![p, q])
    }

    fn element_at(&self, c: &[i64]) -> Option<Pair> {
        match *c {
            [p, q] => Some((p, q)),
            _ => None,
        }
    }
}

/// Free group on `rank` letters; elements are freely reduced words with
/// letter `i` stored as `i+1` and its inverse as `-(i+1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeGroup {
    rank: usize,
}

impl FreeGroup {
    pub fn new(rank: usize) -> Result<Self> {
        if rank == 0 || rank > NUMBERED_LETTERS.len() {
            return Err(Error::InvalidArgument(format!("rank must be in 1..={}", NUMBERED_LETTERS.len())));
        }
        Ok(FreeGroup { rank })
    }
}

impl GroupOracle for FreeGroup {
    type Elem = Vec<i32>;

    fn name(&self) -> String {
        format!("free:{}", self.rank)
    }

    fn identity(&self) -> Vec<i32> {
        Vec::new()
    }

    fn mul(&self, a: &Vec<i32>, b: &Vec<i32>) -> Vec<i32> {
        let mut out = a.clone();
        for &x in b {
            if out.last() == Some(&-x) {
                out.pop();
            } else {
                out.push(x);
            }
        }
        out
    }

    fn inv(&self, a: &Vec<i32>) -> Vec<i32> {
        a.iter().rev().map(|x| -x).collect()
    }

    fn generators(&self) -> Vec<(char, Vec<i32>)> {
        (0..self.rank).map(|i| (numbered_letter(i), vec![i as i32 + 1])).collect()
    }

    fn render(&self, a: &Vec<i32>) -> String {
        let mut s = String::new();
        let mut i = 0;
        while i < a.len() {
            let j = (i..a.len()).find(|&j| a[j] != a[i]).unwrap_or(a.len());
            let letter = numbered_letter(a[i].unsigned_abs() as usize - 1);
            render_power(&mut s, letter, a[i].signum() as i64 * (j - i) as i64);
            i = j;
        }
        render_or_identity(s)
    }
}

/// Cyclic group `ℤ/n` written multiplicatively with generator `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cyclic {
    order: u64,
}

impl Cyclic {
    pub fn new(order: u64) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidArgument("cyclic order must be positive".into()));
        }
        Ok(Cyclic { order })
    }

    pub fn order(&self) -> u64 {
        self.order
    }
}

impl GroupOracle for Cyclic {
    type Elem = u64;

    fn name(&self) -> String {
        format!("cyclic:{}", self.order)
    }

    fn identity(&self) -> u64 {
        0
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.order
    }

    fn inv(&self, a: &u64) -> u64 {
        (self.order - a) % self.order
    }

    fn generators(&self) -> Vec<(char, u64)> {
        vec![('x', 1 % self.order)]
    }

    fn render(&self, a: &u64) -> String {
        let mut s = String::new();
        render_power(&mut s, 'x', *a as i64);
        render_or_identity(s)
    }

    fn coordinate_names(&self) -> Vec<String> {
        vec!["k".into()]
    }

    fn coordinates(&self, a: &u64) -> Option<Vec<i64>> {
        Some(vec![*a as i64])
    }

    fn element_at(&self, c: &[i64]) -> Option<u64> {
        match *c {
            [k] if (0..self.order as i64).contains(&k) => Some(k as u64),
            _ => None,
        }
    }

    fn elements(&self) -> Option<Vec<u64>> {
        Some((0..self.order).collect())
    }

    fn structurally_central(&self, _a: &u64) -> bool {
        true
    }
}
