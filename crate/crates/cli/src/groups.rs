use std::io::Write;

use invorder::groups::{
    biorder_violations, conj_obstruction_oracle, induce_conj_order, induced_violations_exhaustive,
    induced_violations_sampled, neumann_scan, AnyGroup, Ball, GroupOracle, LexBiOrder,
};

use crate::{Failure, InduceArgs, Outcome, Status};

pub fn parse_group(spec: &str) -> Result<AnyGroup, Failure> {
    spec.parse().map_err(Failure::Library)
}

pub fn obstruct(out: &mut dyn Write, spec: &str, radius: usize, n_max: u32) -> Outcome {
    let g = parse_group(spec)?;
    let ball = Ball::new(&g, radius)?;
    writeln!(out, "group {g} radius {radius} ball {}", ball.len())?;
    match conj_obstruction_oracle(&g, &ball, n_max) {
        Some(w) => {
            writeln!(out, "{} {} n={}", g.render(&w.a), g.render(&w.b), w.n)?;
            writeln!(out, "power {} centrality {}", g.render(&g.pow(&w.a, w.n as i64)), w.centrality.as_str())?;
            writeln!(out, "RO(Conj)=EMPTY")?;
            Ok(Status::Success)
        }
        None => {
            writeln!(out, "no witness with n <= {n_max}")?;
            Ok(Status::Inconclusive)
        }
    }
}

pub fn induce(out: &mut dyn Write, args: &InduceArgs, seed: u64) -> Outcome {
    if args.biorder != "lex" {
        return Err(Failure::Usage(format!("unknown bi-order `{}` (only `lex`)", args.biorder)));
    }
    let g = parse_group(&args.group)?;
    let order = LexBiOrder::new(&g)?;
    let induced = induce_conj_order(&g, &order);
    writeln!(out, "group {g} biorder lex")?;

    let small = Ball::new(&g, args.exhaustive_radius)?;
    let elems = small.elements();
    let elems = &elems;
    let triples = elems
        .iter()
        .flat_map(|a| elems.iter().flat_map(move |b| elems.iter().map(move |c| (a.clone(), b.clone(), c.clone()))));
    let bad_biorder = biorder_violations(&g, &order, triples);
    writeln!(out, "biorder radius {} violations {}", args.exhaustive_radius, bad_biorder.len())?;

    let exhaustive = induced_violations_exhaustive(&induced, &small);
    writeln!(
        out,
        "exhaustive radius {} triples {} premises {} violations {}",
        args.exhaustive_radius,
        exhaustive.checked,
        exhaustive.premises,
        exhaustive.violations.len()
    )?;

    let big = Ball::new(&g, args.radius)?;
    let sampled = induced_violations_sampled(&induced, &big, args.samples, seed);
    writeln!(
        out,
        "sampled radius {} ball {} samples {} prng chacha8 seed {seed} premises {} violations {}",
        args.radius,
        big.len(),
        sampled.checked,
        sampled.premises,
        sampled.violations.len()
    )?;

    let scan_ball = Ball::new(&g, args.neumann_radius)?;
    let neumann = neumann_scan(&g, &scan_ball, args.n_max)?;
    writeln!(out, "commuting-powers radius {} n-max {} violations {}", args.neumann_radius, args.n_max, neumann.len())?;

    let show = |(a, b, c): &(_, _, _)| format!("{} {} {}", g.render(a), g.render(b), g.render(c));
    for t in bad_biorder.iter().chain(&exhaustive.violations).chain(&sampled.violations).take(10) {
        writeln!(out, "violation {}", show(t))?;
    }
    for v in neumann.iter().take(10) {
        writeln!(out, "violation {}^{} commutes with {}", g.render(&v.a), v.n, g.render(&v.b))?;
    }
    let clean = bad_biorder.is_empty()
        && exhaustive.violations.is_empty()
        && sampled.violations.is_empty()
        && neumann.is_empty();
    writeln!(out, "verdict {}", if clean { "RIGHT-INVARIANT" } else { "VIOLATED" })?;
    Ok(if clean { Status::Success } else { Status::Refuted })
}
