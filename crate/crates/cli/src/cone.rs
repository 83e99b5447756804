use std::io::Write;
use std::ops::RangeInclusive;

use invorder::cone::{
    adjudicate, conrad_test, find_nonextend_witness, greedy_extend, lex_cone_catalog, parse_radii, parse_seed_word,
    purity_check, render_word, sgr_closure, verify_cone_total, AdjudicationConfig, Certificate, ConePredicate,
    ConeSpec, Factor, GreedyOutcome, Purity, TotalityReport, VectorResult, Verdict,
};
use invorder::groups::{AnyElement, AnyGroup, Ball, GroupOracle};
use invorder::Error;

use crate::groups::parse_group;
use crate::input::{self, source_name};
use crate::{ConradArgs, Failure, Outcome, Status};

struct Job {
    group: AnyGroup,
    seed_names: Vec<String>,
    seed: Vec<AnyElement>,
    radii: RangeInclusive<usize>,
    witness_max: Option<usize>,
}

fn words(group: &AnyGroup, words: &[String], source: &str) -> Result<Vec<AnyElement>, Failure> {
    words
        .iter()
        .map(|w| parse_seed_word(group, w).map_err(|e| Error::parse(source, 1, w.as_str(), e.to_string()).into()))
        .collect()
}

fn resolve(args: &ConradArgs) -> Result<Job, Failure> {
    let spec = match &args.spec {
        Some(p) => Some(ConeSpec::parse(&input::read(p)?, &source_name(p))?),
        None => None,
    };
    let group = match (&args.group, &spec) {
        (Some(g), _) => parse_group(g)?,
        (None, Some(s)) => s.group.clone(),
        (None, None) => return Err(Failure::Usage("--group or --spec is required".into())),
    };
    let (seed_names, seed) = match &spec {
        Some(s) if args.seed.is_empty() && s.group == group => (s.seed_words.clone(), s.seed.clone()),
        Some(s) if args.seed.is_empty() => (s.seed_words.clone(), words(&group, &s.seed_words, "seed")?),
        _ if !args.seed.is_empty() => (args.seed.clone(), words(&group, &args.seed, "--seed")?),
        _ => (Vec::new(), Vec::new()),
    };
    let radii = match (&args.radius, &spec) {
        (Some(r), _) => parse_radii(r).map_err(|m| Error::parse("--radius", 1, r.as_str(), m))?,
        (None, Some(ConeSpec { radii: Some(r), .. })) => r.clone(),
        _ => return Err(Failure::Usage("--radius is required".into())),
    };
    let witness_max = args.witness_max.or(spec.as_ref().and_then(|s| s.witness_max));
    Ok(Job { group, seed_names, seed, radii, witness_max })
}

pub fn conrad(out: &mut dyn Write, args: &ConradArgs) -> Outcome {
    let job = resolve(args)?;
    let g = &job.group;
    writeln!(out, "group {g}")?;
    for (i, name) in job.seed_names.iter().enumerate() {
        writeln!(out, "seed s{i} = {name} = {}", g.render(&job.seed[i]))?;
    }
    if args.adjudicate {
        return run_adjudication(out, args, &job);
    }
    let mut status = Status::Success;
    for radius in job.radii.clone() {
        let ball = Ball::with_budget(g, radius, args.ball_budget)?;
        writeln!(out, "radius {radius} ball {}", ball.len())?;
        let step = if let Some(path) = &args.verify_cone {
            verify(out, &job, &ball, path)?
        } else if args.extend {
            extend(out, args, &job, &ball)?
        } else if !args.test.is_empty() {
            test(out, args, &job, &ball)?
        } else if let Some(k) = job.witness_max {
            certificate_search(out, args, &job, &ball, k)?
        } else {
            closure_report(out, args, &job, &ball)?
        };
        if step == Status::Refuted {
            return Ok(step);
        }
        if step == Status::Inconclusive {
            status = step;
        }
    }
    Ok(status)
}

fn closure_report(out: &mut dyn Write, args: &ConradArgs, job: &Job, ball: &Ball<AnyElement>) -> Outcome {
    let g = &job.group;
    let cone = sgr_closure(g, &job.seed, ball, args.closure_budget)?;
    writeln!(out, "closure {} partial {}", cone.members.len(), cone.partial)?;
    match purity_check(g, &cone) {
        Purity::Pure => {
            writeln!(out, "purity pure at radius {}", ball.radius())?;
            Ok(if cone.partial { Status::Inconclusive } else { Status::Success })
        }
        Purity::ContainsIdentity { derivation } => {
            let word: Vec<Factor> = derivation.iter().map(|&i| Factor::Seed(i)).collect();
            writeln!(out, "purity contains-identity e = {}", render_word(&word, &job.seed_names, &[]))?;
            Ok(Status::Refuted)
        }
        Purity::Impure { g: x, inverse } => {
            writeln!(out, "purity impure {} and {}", g.render(&x), g.render(&inverse))?;
            Ok(Status::Refuted)
        }
    }
}

fn write_certificate(out: &mut dyn Write, job: &Job, cert: &Certificate<AnyElement>) -> Result<(), Failure> {
    let g = &job.group;
    let names: Vec<String> = cert.witnesses.iter().map(|x| g.render(x)).collect();
    writeln!(out, "certificate |X|={} found at radius {}", names.len(), cert.radius)?;
    for (j, name) in names.iter().enumerate() {
        writeln!(out, "x{} = {name}", j + 1)?;
    }
    for v in &cert.vectors {
        let signs: Vec<String> = v.signs.iter().map(ToString::to_string).collect();
        writeln!(out, "vector ({}) e = {}", signs.join(","), render_word(&v.word, &job.seed_names, &names))?;
    }
    writeln!(out, "verified {}", cert.verify(g))?;
    Ok(())
}

fn certificate_search(out: &mut dyn Write, args: &ConradArgs, job: &Job, ball: &Ball<AnyElement>, k: usize) -> Outcome {
    let report = find_nonextend_witness(&job.group, &job.seed, ball, k, args.closure_budget)?;
    writeln!(
        out,
        "search witness-max {k} candidates {} subsets {} closures {} partial {}",
        report.candidates, report.subsets_examined, report.closures_computed, report.partial
    )?;
    match &report.certificate {
        Some(cert) => {
            write_certificate(out, job, cert)?;
            if !cert.verify(&job.group) {
                return Err(Error::Internal("certificate does not re-evaluate to e".into()).into());
            }
            writeln!(out, "verdict NOT-EXTENDABLE")?;
            Ok(Status::Refuted)
        }
        None => {
            writeln!(out, "verdict NO-CERTIFICATE up to |X|={k} at radius {}", ball.radius())?;
            Ok(Status::Inconclusive)
        }
    }
}

fn greedy_line(g: &AnyGroup, outcome: &GreedyOutcome<AnyElement>) -> String {
    match outcome {
        GreedyOutcome::Extended { positives, decisions, nodes } => {
            format!("extended nodes {nodes} positives {} decisions {}", positives.len(), decisions.len())
        }
        GreedyOutcome::Failed { trapped, nodes } => {
            let path: Vec<String> = trapped.iter().map(|x| g.render(x)).collect();
            format!("failed nodes {nodes} dead-end [{}]", path.join(" "))
        }
        GreedyOutcome::Budget { nodes } => format!("budget nodes {nodes}"),
    }
}

fn extend(out: &mut dyn Write, args: &ConradArgs, job: &Job, ball: &Ball<AnyElement>) -> Outcome {
    let g = &job.group;
    let outcome = greedy_extend(g, &job.seed, ball, args.node_budget, args.closure_budget)?;
    writeln!(out, "extension {}", greedy_line(g, &outcome))?;
    match outcome {
        GreedyOutcome::Extended { positives, .. } => {
            let shown: Vec<String> = positives.iter().map(|x| g.render(x)).collect();
            writeln!(out, "positives {}", shown.join(" "))?;
            writeln!(out, "verdict EXTENDS at radius {}", ball.radius())?;
            Ok(Status::Success)
        }
        GreedyOutcome::Failed { .. } => {
            writeln!(out, "verdict NOT-EXTENDABLE (every sign assignment on the ball traps e)")?;
            Ok(Status::Refuted)
        }
        GreedyOutcome::Budget { .. } => {
            writeln!(out, "verdict INCONCLUSIVE (node budget)")?;
            Ok(Status::Inconclusive)
        }
    }
}

fn totality_line(g: &AnyGroup, r: &TotalityReport<AnyElement>) -> String {
    if r.passes() {
        return "pass".into();
    }
    let mut why = Vec::new();
    if r.contains_identity {
        why.push("contains e".to_string());
    }
    if let Some((x, y)) = &r.semigroup_failure {
        why.push(format!("not closed: {}·{}", g.render(x), g.render(y)));
    }
    if let Some(x) = &r.purity_failure {
        why.push(format!("impure: {}", g.render(x)));
    }
    if let Some(x) = &r.totality_failure {
        why.push(format!("not total: {}", g.render(x)));
    }
    format!("fail ({})", why.join("; "))
}

fn verify(out: &mut dyn Write, job: &Job, ball: &Ball<AnyElement>, path: &std::path::Path) -> Outcome {
    let g = &job.group;
    let pred = ConePredicate::parse(&input::read(path)?, &source_name(path), &g.coordinate_names())?;
    let missing: Vec<String> = job.seed.iter().filter(|s| !pred.contains(g, s)).map(|s| g.render(s)).collect();
    if missing.is_empty() {
        writeln!(out, "seed contained yes")?;
    } else {
        writeln!(out, "seed contained no: {}", missing.join(" "))?;
    }
    let report = verify_cone_total(g, ball, |x| pred.contains(g, x));
    writeln!(out, "cone {}", totality_line(g, &report))?;
    Ok(if report.passes() && missing.is_empty() { Status::Success } else { Status::Refuted })
}

fn test(out: &mut dyn Write, args: &ConradArgs, job: &Job, ball: &Ball<AnyElement>) -> Outcome {
    let g = &job.group;
    let xs = words(g, &args.test, "--test")?;
    let report = conrad_test(g, &job.seed, &xs, ball, args.closure_budget)?;
    let names: Vec<String> = xs.iter().map(|x| g.render(x)).collect();
    for (j, name) in names.iter().enumerate() {
        writeln!(out, "x{} = {name}", j + 1)?;
    }
    for o in &report.outcomes {
        let signs: Vec<String> = o.signs.iter().map(ToString::to_string).collect();
        let what = match &o.result {
            VectorResult::Found(word) => format!("trapped e = {}", render_word(word, &job.seed_names, &names)),
            VectorResult::Absent { partial: true, .. } => "absent (closure budget hit)".into(),
            VectorResult::Absent { .. } => "absent".into(),
        };
        writeln!(out, "vector ({}) {what}", signs.join(","))?;
    }
    if report.survives() {
        writeln!(out, "verdict SURVIVES at radius {}", ball.radius())?;
        Ok(Status::Success)
    } else {
        writeln!(out, "verdict TRAPPED")?;
        Ok(Status::Refuted)
    }
}

fn run_adjudication(out: &mut dyn Write, args: &ConradArgs, job: &Job) -> Outcome {
    let g = &job.group;
    let candidates = lex_cone_catalog(g);
    let config = AdjudicationConfig {
        radii: job.radii.clone().collect(),
        witness_max: job.witness_max.unwrap_or(3),
        ball_budget: args.ball_budget,
        closure_budget: args.closure_budget,
        node_budget: args.node_budget,
    };
    let result = adjudicate(g, &job.seed, &candidates, &config)?;
    for r in &result.records {
        let cert = if r.certificate.is_some() { "found" } else { "none" };
        writeln!(
            out,
            "radius {} ball {} certificate {cert} subsets {} extension {}",
            r.radius,
            r.ball_size,
            r.subsets_examined,
            greedy_line(g, &r.greedy)
        )?;
        for ((label, _), rep) in candidates.iter().zip(&r.candidate_reports) {
            writeln!(out, "  candidate {label} {}", totality_line(g, rep))?;
        }
    }
    let seeded: Vec<&str> = result.seeded_candidates.iter().map(|&i| candidates[i].0.as_str()).collect();
    writeln!(out, "candidates containing seed: {}", if seeded.is_empty() { "none".into() } else { seeded.join(" ") })?;
    match &result.verdict {
        Verdict::Certificate(cert) => {
            write_certificate(out, job, cert)?;
            writeln!(out, "verdict CERTIFICATE (no total left order contains the seed)")?;
            Ok(Status::Refuted)
        }
        Verdict::Extension { label, predicate } => {
            writeln!(out, "verdict EXTENSION {label}")?;
            write!(out, "{predicate}")?;
            Ok(Status::Success)
        }
        Verdict::Inconclusive => {
            writeln!(out, "verdict INCONCLUSIVE")?;
            Ok(Status::Inconclusive)
        }
        Verdict::Collision(why) => {
            writeln!(out, "verdict COLLISION {why}")?;
            Err(Error::Internal(format!("contradictory evidence: {why}")).into())
        }
    }
}
