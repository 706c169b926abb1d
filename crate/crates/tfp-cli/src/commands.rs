//! Command implementations. Each returns the process exit code: 0 for
//! yes/success, 1 for a no verdict or failed check, 2 for errors (mapped by
//! `main`).

use crate::format::{parse_instance, render_instance};
use crate::CliError;
use rayon::prelude::*;
use std::fs;
use std::path::Path;
use std::time::Instant;
use tfp_core::bracket::play;
use tfp_core::generator::{self, Enforce};
use tfp_core::params;
use tfp_core::reductions;
use tfp_core::solver::{solve_by_enumeration, Solver};
use tfp_core::structure;
use tfp_core::{Bracket, Tournament};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Method {
    Dp,
    Enum,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ReduceTarget {
    Sfasv,
    Sfasin,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GenKind {
    Random,
    NeighborAcyclic,
    Tight,
    SpecialSfasv,
    SpecialSfasin,
}

fn load(file: &Path) -> Result<Tournament, CliError> {
    let text = fs::read_to_string(file)
        .map_err(|e| CliError::Io(format!("{}: {e}", file.display())))?;
    parse_instance(&text)
}

fn write_out(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

/// `solve`: decide whether the favorite can be seeded to win; `result=yes`
/// exits 0, `result=no` exits 1.
pub fn cmd_solve(file: &Path, witness: bool, method: Method) -> Result<i32, CliError> {
    let t = load(file)?;
    let v = t.favorite();
    let field = t.players();
    let (yes, bracket) = match method {
        Method::Dp => {
            let mut solver = Solver::new(&t)?;
            let yes = solver.can_win(v, field)?;
            let bracket = if yes && witness {
                Some(solver.witness_bracket(v, field)?)
            } else {
                None
            };
            (yes, bracket)
        }
        Method::Enum => {
            let (yes, bracket) = solve_by_enumeration(&t, v, field)?;
            (yes, if witness { bracket } else { None })
        }
    };
    println!("result={}", if yes { "yes" } else { "no" });
    if let Some(b) = bracket {
        println!("bracket={}", b.to_line());
        let (_, seq) = play(&t, &b);
        for (r, round) in seq.rounds().iter().enumerate() {
            println!("round{}={}", r + 1, round.to_line());
        }
    }
    Ok(if yes { 0 } else { 1 })
}

/// `params`: the six parameter values plus the favorite's degrees, one
/// `key=value` per line.
pub fn cmd_params(file: &Path) -> Result<i32, CliError> {
    let t = load(file)?;
    let r = params::report(&t, t.favorite())?;
    println!("fas={}", r.fas);
    println!("fvs={}", r.fvs);
    println!("sfas_v={}", r.sfas_v);
    println!("sfvs_v={}", r.sfvs_v);
    println!("sfas_in={}", r.sfas_in);
    println!("sfas_out={}", r.sfas_out);
    println!("in_degree={}", r.in_degree);
    println!("out_degree={}", r.out_degree);
    Ok(0)
}

/// `conditions`: which sufficient conditions hold, plus the witness matching
/// and, when the recursive construction applies, its bracket.
pub fn cmd_conditions(file: &Path) -> Result<i32, CliError> {
    let t = load(file)?;
    let v = t.favorite();
    let r = structure::condition_report(&t, v);
    println!("is_king={}", r.is_king);
    println!("is_3king={}", r.is_3king);
    println!("neighbor_acyclic={}", r.neighbor_acyclic);
    println!("three_king_rule={}", r.three_king_rule);
    println!("king_matching_rule={}", r.king_matching_rule);
    println!("recursive_seed_rule={}", r.recursive_seed_rule);
    println!("king_degree_rule={}", r.king_degree_rule);
    if let Some(m) = &r.matching {
        if !m.is_empty() {
            let arcs: Vec<String> = m.iter().map(|(a, b)| format!("{a}>{b}")).collect();
            println!("matching={}", arcs.join(" "));
        }
    }
    if r.recursive_seed_rule {
        let bracket = structure::seed_neighbor_acyclic(&t, v)?;
        println!("bracket={}", bracket.to_line());
    }
    Ok(0)
}

/// `reduce`: write the gadget embedding of the instance, with the index
/// translation appended as a comment.
pub fn cmd_reduce(file: &Path, target: ReduceTarget, out: &Path) -> Result<i32, CliError> {
    let t = load(file)?;
    let gadget = match target {
        ReduceTarget::Sfasv => reductions::make_special_sfasv(&t, t.favorite())?,
        ReduceTarget::Sfasin => reductions::make_special_sfasin(&t, t.favorite())?,
    };
    let mut text = render_instance(&gadget.instance);
    let pairs: Vec<String> = gadget
        .embedding
        .iter()
        .enumerate()
        .map(|(orig, new)| format!("{orig}->{new}"))
        .collect();
    text.push_str(&format!("# embedding: {}\n", pairs.join(" ")));
    write_out(out, &text)?;
    println!("wrote={}", out.display());
    Ok(0)
}

/// `gen`: write a generated instance.
pub fn cmd_gen(
    kind: GenKind,
    n: usize,
    seed: u64,
    a_size: Option<usize>,
    enforce: Option<Enforce>,
    out: &Path,
) -> Result<i32, CliError> {
    let t = match kind {
        GenKind::Random => generator::random_tournament(n, seed)?,
        GenKind::NeighborAcyclic => {
            let a_size = a_size.ok_or_else(|| {
                CliError::Usage("--a-size is required for --kind neighbor-acyclic".into())
            })?;
            generator::gen_neighbor_acyclic(n, a_size, seed, enforce.unwrap_or(Enforce::None))?
        }
        GenKind::Tight => generator::tight_no_instance(n)?,
        GenKind::SpecialSfasv | GenKind::SpecialSfasin => {
            if !n.is_multiple_of(4) || !(n / 4).is_power_of_two() {
                return Err(CliError::Usage(format!(
                    "--kind special-* needs n = 4 * 2^p, got {n}"
                )));
            }
            let core = generator::random_tournament(n / 4, seed)?;
            let gadget = if kind == GenKind::SpecialSfasv {
                reductions::make_special_sfasv(&core, 0)?
            } else {
                reductions::make_special_sfasin(&core, 0)?
            };
            gadget.instance
        }
    };
    write_out(out, &render_instance(&t))?;
    println!("wrote={}", out.display());
    Ok(0)
}

/// `check`: replay a bracket file against an instance; prints validity and
/// the winner, exits 1 on an unusable bracket.
pub fn cmd_check(file: &Path, bracket_file: &Path) -> Result<i32, CliError> {
    let t = load(file)?;
    let text = fs::read_to_string(bracket_file)
        .map_err(|e| CliError::Io(format!("{}: {e}", bracket_file.display())))?;
    let line = text.lines().find(|l| !l.trim().is_empty()).unwrap_or("");
    let bracket = match Bracket::parse_line(line) {
        Ok(b) if b.leaves().iter().all(|&v| v < t.n()) => b,
        Ok(_) => {
            println!("valid=false reason=leaf index out of range");
            return Ok(1);
        }
        Err(e) => {
            println!("valid=false reason={e}");
            return Ok(1);
        }
    };
    let (winner, _) = play(&t, &bracket);
    println!("valid=true winner={winner}");
    Ok(0)
}

/// `bench`: one CSV row per (instance, method) over every `.tfp` file in the
/// directory. Enumeration runs only where it is feasible; instances that
/// cannot be played (field not a power of two) get `result=error` rows.
pub fn cmd_bench(dir: &Path, jobs: usize) -> Result<i32, CliError> {
    let mut files: Vec<_> = fs::read_dir(dir)
        .map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|ext| ext == "tfp"))
        .collect();
    files.sort();
    let run = || -> Vec<String> {
        files
            .par_iter()
            .map(|path| {
                let name = path
                    .file_name()
                    .map(|s| s.to_string_lossy().into_owned())
                    .unwrap_or_default();
                match load(path) {
                    Ok(t) => bench_rows(&name, &t),
                    Err(_) => vec![format!("{name},0,dp,error,0,0")],
                }
            })
            .reduce(Vec::new, |mut acc, mut rows| {
                acc.append(&mut rows);
                acc
            })
    };
    let rows = if jobs <= 1 {
        files
            .iter()
            .map(|path| {
                let name = path
                    .file_name()
                    .map(|s| s.to_string_lossy().into_owned())
                    .unwrap_or_default();
                match load(path) {
                    Ok(t) => bench_rows(&name, &t),
                    Err(_) => vec![format!("{name},0,dp,error,0,0")],
                }
            })
            .collect::<Vec<_>>()
            .concat()
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| CliError::Usage(format!("cannot build {jobs}-thread pool: {e}")))?
            .install(run)
    };
    println!("instance,n,method,result,millis,states");
    for row in rows {
        println!("{row}");
    }
    Ok(0)
}

fn bench_rows(name: &str, t: &Tournament) -> Vec<String> {
    let mut rows = Vec::new();
    let v = t.favorite();
    let field = t.players();

    let start = Instant::now();
    let dp = Solver::new(t).and_then(|mut s| {
        let verdict = s.can_win(v, field)?;
        Ok((verdict, s.states_touched()))
    });
    let millis = start.elapsed().as_millis();
    match dp {
        Ok((yes, states)) => rows.push(format!(
            "{name},{},dp,{},{millis},{states}",
            t.n(),
            if yes { "yes" } else { "no" }
        )),
        Err(_) => rows.push(format!("{name},{},dp,error,{millis},0", t.n())),
    }

    if t.n().is_power_of_two() && t.n() <= 10 {
        let start = Instant::now();
        let brackets = tfp_core::bracket::enumerate_brackets(field).expect("power of two");
        let mut yes = false;
        for b in &brackets {
            if play(t, b).0 == v {
                yes = true;
                break;
            }
        }
        let millis = start.elapsed().as_millis();
        rows.push(format!(
            "{name},{},enum,{},{millis},{}",
            t.n(),
            if yes { "yes" } else { "no" },
            brackets.len()
        ));
    }
    rows
}
