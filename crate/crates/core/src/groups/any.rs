use std::fmt;
use std::str::FromStr;

use super::families::{Pair, Triple};
use super::{Cyclic, FreeAbelian, FreeGroup, GroupOracle, Heisenberg, Klein, TorusElement, TorusKnot};
use crate::error::{Error, Result};

/// Any supported family, selected at run time from a spec string:
/// `Z^<k>`, `heisenberg`, `klein`, `free:<k>`, `torus:<n>:<m>`, `cyclic:<n>`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnyGroup {
    FreeAbelian(FreeAbelian),
    Heisenberg(Heisenberg),
    Klein(Klein),
    Free(FreeGroup),
    Torus(TorusKnot),
    Cyclic(Cyclic),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AnyElement {
    FreeAbelian(Vec<i64>),
    Heisenberg(Triple),
    Klein(Pair),
    Free(Vec<i32>),
    Torus(TorusElement),
    Cyclic(u64),
}

impl FromStr for AnyGroup {
    type Err = Error;

    fn from_str(spec: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("unknown group spec `{spec}`"));
        let number = |t: &str| t.parse::<u32>().map_err(|_| bad());
        let spec = spec.trim();
        if let Some(k) = spec.strip_prefix("Z^") {
            return Ok(AnyGroup::FreeAbelian(FreeAbelian::new(number(k)? as usize)?));
        }
        let parts: Vec<&str> = spec.split(':').collect();
        match parts.as_slice() {
            ["heisenberg"] => Ok(AnyGroup::Heisenberg(Heisenberg)),
            ["klein"] => Ok(AnyGroup::Klein(Klein)),
            ["free", k] => Ok(AnyGroup::Free(FreeGroup::new(number(k)? as usize)?)),
            ["torus", n, m] => Ok(AnyGroup::Torus(TorusKnot::new(number(n)?, number(m)?)?)),
            ["cyclic", n] => Ok(AnyGroup::Cyclic(Cyclic::new(number(n)? as u64)?)),
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for AnyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

macro_rules! dispatch {
    ($self:ident, $g:ident => $body:expr) => {
        match $self {
            AnyGroup::FreeAbelian($g) => $body,
            AnyGroup::Heisenberg($g) => $body,
            AnyGroup::Klein($g) => $body,
            AnyGroup::Free($g) => $body,
            AnyGroup::Torus($g) => $body,
            AnyGroup::Cyclic($g) => $body,
        }
    };
}

/// Applies a family operation to elements of the matching variant and wraps the result.
macro_rules! lift {
    ($self:ident, ($($x:ident),*), $g:ident, ($($v:ident),*) => $body:expr) => {
        match ($self, $($x),*) {
            (AnyGroup::FreeAbelian($g), $(AnyElement::FreeAbelian($v)),*) => AnyElement::FreeAbelian($body),
            (AnyGroup::Heisenberg($g), $(AnyElement::Heisenberg($v)),*) => AnyElement::Heisenberg($body),
            (AnyGroup::Klein($g), $(AnyElement::Klein($v)),*) => AnyElement::Klein($body),
            (AnyGroup::Free($g), $(AnyElement::Free($v)),*) => AnyElement::Free($body),
            (AnyGroup::Torus($g), $(AnyElement::Torus($v)),*) => AnyElement::Torus($body),
            (AnyGroup::Cyclic($g), $(AnyElement::Cyclic($v)),*) => AnyElement::Cyclic($body),
            _ => panic!("element does not belong to {}", $self.name()),
        }
    };
}

macro_rules! read {
    ($self:ident, $x:ident, $g:ident, $v:ident => $body:expr) => {
        match ($self, $x) {
            (AnyGroup::FreeAbelian($g), AnyElement::FreeAbelian($v)) => $body,
            (AnyGroup::Heisenberg($g), AnyElement::Heisenberg($v)) => $body,
            (AnyGroup::Klein($g), AnyElement::Klein($v)) => $body,
            (AnyGroup::Free($g), AnyElement::Free($v)) => $body,
            (AnyGroup::Torus($g), AnyElement::Torus($v)) => $body,
            (AnyGroup::Cyclic($g), AnyElement::Cyclic($v)) => $body,
            _ => panic!("element does not belong to {}", $self.name()),
        }
    };
}

impl GroupOracle for AnyGroup {
    type Elem = AnyElement;

    fn name(&self) -> String {
        dispatch!(self, g => g.name())
    }

    fn identity(&self) -> AnyElement {
        match self {
            AnyGroup::FreeAbelian(g) => AnyElement::FreeAbelian(g.identity()),
            AnyGroup::Heisenberg(g) => AnyElement::Heisenberg(g.identity()),
            AnyGroup::Klein(g) => AnyElement::Klein(g.identity()),
            AnyGroup::Free(g) => AnyElement::Free(g.identity()),
            AnyGroup::Torus(g) => AnyElement::Torus(g.identity()),
            AnyGroup::Cyclic(g) => AnyElement::Cyclic(g.identity()),
        }
    }

    fn mul(&self, a: &AnyElement, b: &AnyElement) -> AnyElement {
        lift!(self, (a, b), g, (x, y) => g.mul(x, y))
    }

    fn inv(&self, a: &AnyElement) -> AnyElement {
        lift!(self, (a), g, (x) => g.inv(x))
    }

    fn generators(&self) -> Vec<(char, AnyElement)> {
        match self {
            AnyGroup::FreeAbelian(g) => {
                g.generators().into_iter().map(|(c, e)| (c, AnyElement::FreeAbelian(e))).collect()
            }
            AnyGroup::Heisenberg(g) => {
                g.generators().into_iter().map(|(c, e)| (c, AnyElement::Heisenberg(e))).collect()
            }
            AnyGroup::Klein(g) => g.generators().into_iter().map(|(c, e)| (c, AnyElement::Klein(e))).collect(),
            AnyGroup::Free(g) => g.generators().into_iter().map(|(c, e)| (c, AnyElement::Free(e))).collect(),
            AnyGroup::Torus(g) => g.generators().into_iter().map(|(c, e)| (c, AnyElement::Torus(e))).collect(),
            AnyGroup::Cyclic(g) => g.generators().into_iter().map(|(c, e)| (c, AnyElement::Cyclic(e))).collect(),
        }
    }

    fn render(&self, a: &AnyElement) -> String {
        read!(self, a, g, x => g.render(x))
    }

    fn coordinate_names(&self) -> Vec<String> {
        dispatch!(self, g => g.coordinate_names())
    }

    fn coordinates(&self, a: &AnyElement) -> Option<Vec<i64>> {
        read!(self, a, g, x => g.coordinates(x))
    }

    fn element_at(&self, c: &[i64]) -> Option<AnyElement> {
        match self {
            AnyGroup::FreeAbelian(g) => g.element_at(c).map(AnyElement::FreeAbelian),
            AnyGroup::Heisenberg(g) => g.element_at(c).map(AnyElement::Heisenberg),
            AnyGroup::Klein(g) => g.element_at(c).map(AnyElement::Klein),
            AnyGroup::Free(g) => g.element_at(c).map(AnyElement::Free),
            AnyGroup::Torus(g) => g.element_at(c).map(AnyElement::Torus),
            AnyGroup::Cyclic(g) => g.element_at(c).map(AnyElement::Cyclic),
        }
    }

    fn elements(&self) -> Option<Vec<AnyElement>> {
        match self {
            AnyGroup::Cyclic(g) => g.elements().map(|v| v.into_iter().map(AnyElement::Cyclic).collect()),
            _ => None,
        }
    }

    fn structurally_central(&self, a: &AnyElement) -> bool {
        read!(self, a, g, x => g.structurally_central(x))
    }

    fn lex_biorderable(&self) -> bool {
        dispatch!(self, g => g.lex_biorderable())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_strings() {
        for spec in ["Z^2", "heisenberg", "klein", "free:3", "torus:2:3", "cyclic:5"] {
            let g: AnyGroup = spec.parse().unwrap();
            assert_eq!(g.to_string(), spec);
        }
        for bad in ["Z^0", "torus:2", "torus:1:3", "cyclic:0", "klein:2", "sl2"] {
            assert!(bad.parse::<AnyGroup>().is_err(), "{bad}");
        }
    }

    #[test]
    fn delegated_arithmetic() {
        let g: AnyGroup = "klein".parse().unwrap();
        let w = g.parse_element("aBB").unwrap();
        assert_eq!(w, AnyElement::Klein((1, -2)));
        assert_eq!(g.render(&g.inv(&w)), "ABB");
        assert_eq!(g.coordinates(&w), Some(vec![1, -2]));
    }
}
