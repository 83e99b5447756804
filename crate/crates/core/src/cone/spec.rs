use std::ops::RangeInclusive;

use crate::error::{Error, Result};
use crate::groups::{AnyElement, AnyGroup, GroupOracle};

/// A cone search read from a file:
///
/// ```text
/// group klein
/// seed bb a aBB
/// witness-max 3
/// radius 4..8
/// ```
///
/// `radius` takes one value or an inclusive range `lo..hi`. Several `seed`
/// lines append to one seed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeSpec {
    pub group: AnyGroup,
    pub seed_words: Vec<String>,
    pub seed: Vec<AnyElement>,
    pub witness_max: Option<usize>,
    pub radii: Option<RangeInclusive<usize>>,
}

impl ConeSpec {
    pub fn parse(text: &str, source: &str) -> Result<Self> {
        let mut group: Option<AnyGroup> = None;
        let mut pending_seed: Vec<(usize, String)> = Vec::new();
        let mut witness_max = None;
        let mut radii = None;
        for (i, raw) in text.lines().enumerate() {
            let lno = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            let mut toks = line.split_whitespace();
            let Some(key) = toks.next() else { continue };
            let rest: Vec<&str> = toks.collect();
            let single = |what: &str| -> Result<&str> {
                match rest.as_slice() {
                    [v] => Ok(v),
                    _ => Err(Error::parse(source, lno, line, format!("`{key}` takes one {what}"))),
                }
            };
            match key {
                "group" => {
                    let spec = single("group spec")?;
                    group = Some(spec.parse().map_err(|e: Error| Error::parse(source, lno, spec, e.to_string()))?);
                }
                "seed" => pending_seed.extend(rest.iter().map(|w| (lno, w.to_string()))),
                "witness-max" => {
                    let v = single("integer")?;
                    witness_max = Some(v.parse().map_err(|_| Error::parse(source, lno, v, "expected an integer"))?);
                }
                "radius" => {
                    let v = single("radius or range")?;
                    radii = Some(parse_radii(v).map_err(|m| Error::parse(source, lno, v, m))?);
                }
                other => return Err(Error::parse(source, lno, other, "expected group, seed, witness-max or radius")),
            }
        }
        let group = group.ok_or_else(|| Error::parse(source, 1, "", "missing `group` line"))?;
        let mut seed = Vec::with_capacity(pending_seed.len());
        for (lno, word) in &pending_seed {
            seed.push(parse_seed_word(&group, word).map_err(|e| Error::parse(source, *lno, word, e.to_string()))?);
        }
        if seed.is_empty() {
            return Err(Error::parse(source, 1, "", "missing `seed` line"));
        }
        Ok(ConeSpec { group, seed_words: pending_seed.into_iter().map(|(_, w)| w).collect(), seed, witness_max, radii })
    }
}

/// `r` or `lo..hi`.
pub fn parse_radii(text: &str) -> std::result::Result<RangeInclusive<usize>, String> {
    let num = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("`{t}` is not a radius"));
    match text.split_once("..") {
        Some((lo, hi)) => {
            let (lo, hi) = (num(lo)?, num(hi.trim_start_matches('='))?);
            if lo > hi {
                return Err(format!("empty range {lo}..{hi}"));
            }
            Ok(lo..=hi)
        }
        None => num(text).map(|r| r..=r),
    }
}

/// Reads a seed element, refusing the identity since a cone never contains it.
pub fn parse_seed_word<G: GroupOracle>(group: &G, word: &str) -> Result<G::Elem> {
    let g = group.parse_element(word)?;
    if group.is_identity(&g) {
        return Err(Error::InvalidArgument(format!("seed word `{word}` is the identity")));
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_a_full_spec() {
        let text = "# klein seed\ngroup klein\nseed bb a\nseed aBB\nwitness-max 3\nradius 4..8\n";
        let s = ConeSpec::parse(text, "k.cone").unwrap();
        assert_eq!(s.group.to_string(), "klein");
        assert_eq!(s.seed_words, ["bb", "a", "aBB"]);
        assert_eq!(s.seed[2], AnyElement::Klein((1, -2)));
        assert_eq!(s.witness_max, Some(3));
        assert_eq!(s.radii, Some(4..=8));
    }

    #[test]
    fn identity_seed_names_line_and_token() {
        let err = ConeSpec::parse("group klein\nseed a\nseed bB\n", "k.cone").unwrap_err();
        match err {
            Error::Parse { line, token, .. } => assert_eq!((line, token.as_str()), (3, "bB")),
            other => panic!("{other}"),
        }
    }

    #[test]
    fn rejects_malformed_lines() {
        assert!(ConeSpec::parse("seed a\n", "x").is_err());
        assert!(ConeSpec::parse("group klein\n", "x").is_err());
        assert!(ConeSpec::parse("group klein\nseed a\nradius 5..2\n", "x").is_err());
        assert!(ConeSpec::parse("group klein\nseed a\ncolour red\n", "x").is_err());
        assert!(ConeSpec::parse("group mystery\nseed a\n", "x").is_err());
        assert_eq!(parse_radii("3").unwrap(), 3..=3);
        assert_eq!(parse_radii("2..=4").unwrap(), 2..=4);
    }
}
