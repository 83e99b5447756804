use std::io::Write;
use std::path::{Path, PathBuf};

use invorder::chi::{decode as decode_chi, encode as encode_chi, ChiFile, Decoded};
use invorder::magma::{FiniteGroup, Magma, TableFile};
use invorder::order::{
    count_par, enumerate_par, fip_check, lex_order, orders as order_stream, parse_families, verify_order,
    ConstraintSet, OrderRelation, Side,
};
use invorder::product::ProductMagma;
use invorder::quandle::{check_quandle, check_rack, left_cancellative, quandle_order_obstruction, right_cancellative};
use invorder::Error;

use crate::input::{self, source_name};
use crate::{Failure, Outcome, Status};

fn ranking_text(r: &OrderRelation) -> String {
    match r.ranking() {
        Some(rank) => rank.iter().map(usize::to_string).collect::<Vec<_>>().join("<"),
        None => "(not a total order)".into(),
    }
}

pub fn check(out: &mut dyn Write, file: &Path, rack: bool, group: bool) -> Outcome {
    let table = input::table(file)?;
    writeln!(out, "size {}", table.magma().size())?;
    if group {
        let result = match table {
            TableFile::Group(g) => Ok(g),
            TableFile::Magma(m) => FiniteGroup::from_magma(m),
        };
        return match result {
            Ok(g) => {
                writeln!(out, "identity {}", g.identity())?;
                writeln!(out, "abelian {}", g.is_abelian())?;
                writeln!(out, "group yes")?;
                Ok(Status::Success)
            }
            Err(Error::NotAGroup(why)) => {
                writeln!(out, "group no: {why}")?;
                Ok(Status::Refuted)
            }
            Err(e) => Err(e.into()),
        };
    }
    let m = table.magma();
    let (report, what) = if rack { (check_rack(m), "rack") } else { (check_quandle(m), "quandle") };
    let verdict = if rack { report.is_rack() } else { report.is_quandle() };
    if verdict {
        writeln!(out, "{what} yes")?;
        Ok(Status::Success)
    } else {
        writeln!(out, "{what} no: {}", report.describe_failure())?;
        Ok(Status::Refuted)
    }
}

fn chi_line(r: &OrderRelation) -> Result<String, Failure> {
    Ok(encode_chi(r)?.to_bit_string())
}

pub fn orders(
    out: &mut dyn Write,
    file: &Path,
    side: Side,
    count: bool,
    limit: Option<usize>,
    constrain: Option<&Path>,
) -> Outcome {
    let m = input::magma(file)?;
    let constraints = match constrain {
        Some(p) => ConstraintSet::parse(&input::read(p)?, &source_name(p))?,
        None => ConstraintSet::default(),
    };
    for &(a, b) in constraints.pairs() {
        m.check_element(a)?;
        m.check_element(b)?;
    }
    if count && limit.is_none() {
        writeln!(out, "{}", count_par(&m, side, &constraints)?)?;
        return Ok(Status::Success);
    }
    if !count {
        writeln!(out, "chi {} {side}", m.size())?;
    }
    let mut emitted = 0usize;
    let truncated = match limit {
        None => {
            for r in enumerate_par(&m, side, &constraints)? {
                writeln!(out, "{}", chi_line(&r)?)?;
            }
            false
        }
        Some(limit) => {
            let mut stream = order_stream(&m, side, &constraints)?;
            loop {
                if emitted == limit {
                    break stream.next().is_some();
                }
                let Some(r) = stream.next() else { break false };
                if !count {
                    writeln!(out, "{}", chi_line(&r)?)?;
                }
                emitted += 1;
            }
        }
    };
    if count {
        writeln!(out, "{emitted}")?;
    }
    if truncated {
        writeln!(out, "# truncated after {emitted} orders")?;
        return Ok(Status::Inconclusive);
    }
    Ok(Status::Success)
}

pub fn query(out: &mut dyn Write, file: &Path, side: Side, fip: &Path, max_orders: usize) -> Outcome {
    let m = input::magma(file)?;
    let families = parse_families(&input::read(fip)?, &source_name(fip))?;
    let report = fip_check(&m, side, &families, max_orders)?;
    writeln!(out, "families {}", families.len())?;
    writeln!(out, "all-finite-intersections-nonempty {}", report.all_finite_nonempty)?;
    writeln!(out, "whole-intersection-nonempty {}", report.whole_nonempty)?;
    if let Some(w) = &report.witness {
        writeln!(out, "witness {}", ranking_text(w))?;
    }
    if let Some(sub) = &report.empty_subfamily {
        let ids: Vec<String> = sub.iter().map(usize::to_string).collect();
        writeln!(out, "empty-subfamily {}", if ids.is_empty() { "(none)".into() } else { ids.join(" ") })?;
    }
    Ok(Status::Success)
}

pub fn obstruct(out: &mut dyn Write, file: &Path) -> Outcome {
    let m = input::magma(file)?;
    let mut found = false;
    if let Some((c, a, b)) = left_cancellative(&m) {
        writeln!(out, "left-cancellation {c}*{a} = {c}*{b}")?;
        writeln!(out, "LO=EMPTY")?;
        found = true;
    }
    if let Some(w) = quandle_order_obstruction(&m) {
        writeln!(out, "{} {} n={}", w.a, w.b, w.n)?;
        writeln!(out, "RO=EMPTY")?;
        found = true;
    } else if let Some((c, a, b)) = right_cancellative(&m) {
        writeln!(out, "right-cancellation {a}*{c} = {b}*{c}")?;
        writeln!(out, "RO=EMPTY")?;
        found = true;
    }
    if found {
        Ok(Status::Success)
    } else {
        writeln!(out, "no obstruction found")?;
        Ok(Status::Inconclusive)
    }
}

fn single_order(path: &Path) -> Result<(Side, OrderRelation), Failure> {
    let chi = ChiFile::parse(&input::read(path)?, &source_name(path))?;
    match chi.vectors.as_slice() {
        [v] => Ok((chi.side, v.to_relation())),
        _ => {
            Err(Failure::Usage(format!("{}: expected exactly one order, found {}", path.display(), chi.vectors.len())))
        }
    }
}

fn parse_factor(item: &str) -> Result<(PathBuf, usize), Failure> {
    match item.rsplit_once('@') {
        Some((file, base)) => {
            let base = base.parse().map_err(|_| Failure::Usage(format!("bad basepoint in `{item}`")))?;
            Ok((PathBuf::from(file), base))
        }
        None => Ok((PathBuf::from(item), 0)),
    }
}

pub fn lex(out: &mut dyn Write, product: &str, order_files: &[PathBuf], side: Option<Side>) -> Outcome {
    let mut factors = Vec::new();
    let mut bases = Vec::new();
    for item in product.split(',').filter(|s| !s.is_empty()) {
        let (file, base) = parse_factor(item)?;
        factors.push(input::magma(&file)?);
        bases.push(base);
    }
    let mut sides = Vec::new();
    let mut orders = Vec::new();
    for f in order_files {
        let (s, r) = single_order(f)?;
        sides.push(s);
        orders.push(r);
    }
    let side = match side {
        Some(s) => s,
        None if sides.windows(2).all(|w| w[0] == w[1]) => sides[0],
        None => return Err(Failure::Usage("factor orders name different sides; pass --side".into())),
    };
    let p = ProductMagma::new(factors, bases)?;
    let r = lex_order(&p, &orders, side)?;
    writeln!(out, "chi {} {side}", p.size())?;
    writeln!(out, "{}", chi_line(&r)?)?;
    Ok(Status::Success)
}

fn parse_rankings(text: &str, source: &str) -> Result<Vec<OrderRelation>, Failure> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let ranking = line
            .split(|c: char| c.is_whitespace() || c == '<')
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<usize>().map_err(|_| Error::parse(source, i + 1, t, "expected an element index")))
            .collect::<Result<Vec<_>, _>>()?;
        let r = OrderRelation::from_ranking(&ranking).map_err(|e| Error::parse(source, i + 1, line, e.to_string()))?;
        if let Some(first) = out.first().map(OrderRelation::size) {
            if first != r.size() {
                return Err(Error::parse(source, i + 1, line, format!("expected {first} elements")).into());
            }
        }
        out.push(r);
    }
    if out.is_empty() {
        return Err(Error::parse(source, 1, "", "no rankings").into());
    }
    Ok(out)
}

pub fn encode(out: &mut dyn Write, file: &Path, side: Side, magma: Option<&Path>) -> Outcome {
    let orders = parse_rankings(&input::read(file)?, &source_name(file))?;
    let m: Option<Magma> = magma.map(input::magma).transpose()?;
    if let Some(m) = &m {
        for (i, r) in orders.iter().enumerate() {
            if let Some(v) = verify_order(m, r, side)? {
                writeln!(out, "order {i} rejected: {v}")?;
                return Ok(Status::Refuted);
            }
        }
    }
    let vectors = orders.iter().map(encode_chi).collect::<Result<Vec<_>, _>>()?;
    let file = ChiFile { size: orders[0].size(), side, vectors };
    write!(out, "{}", file.to_text())?;
    Ok(Status::Success)
}

pub fn decode(out: &mut dyn Write, chi: &Path, magma: &Path, side: Option<Side>) -> Outcome {
    let file = ChiFile::parse(&input::read(chi)?, &source_name(chi))?;
    let m = input::magma(magma)?;
    let side = side.unwrap_or(file.side);
    let mut rejected = 0usize;
    for v in &file.vectors {
        match decode_chi(v, &m, side)? {
            Decoded::Accepted(r) => writeln!(out, "accept {}", ranking_text(&r))?,
            Decoded::Rejected(violation) => {
                rejected += 1;
                writeln!(out, "reject {violation}")?
            }
        }
    }
    writeln!(out, "accepted {} rejected {rejected}", file.vectors.len() - rejected)?;
    Ok(if rejected == 0 { Status::Success } else { Status::Refuted })
}
