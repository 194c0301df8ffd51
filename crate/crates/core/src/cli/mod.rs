//! The `greedy-ldp` command line.
//!
//! Exit codes: 0 on success, 1 when a verification fails, 2 on usage or domain errors.

mod args;
mod path_file;

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};

use clap::Parser;
use serde_json::{json, Map, Value};

pub use args::Cli;
use args::{BoundsArgs, Command, DistArgs, DistMode, RateMode, SimulateArgs, SimulateMode, VerifyArgs};

use crate::chain::{exact_stop_time_distribution_with_cap, tail_log_prob, TailSide, DEFAULT_DP_CAP};
use crate::checks::{run_checks, VerifyOptions};
use crate::error::{Error, Result};
use crate::fluid::t_star;
use crate::ldp::rate::simplified_integrand;
use crate::ldp::{bound_rate, path_rate, rate_f, tail_rate, Bound, HamTrajectory};
use crate::model::{ExtReal, ModelParams};
use crate::output::{Cell, Format, Table};
use crate::{par, replicas};

/// Environment variable overriding the size cap of the exact DP.
pub const DP_CAP_ENV: &str = "GREEDY_LDP_DP_CAP";

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Parse `args` (including the program name) and run the command; returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match dispatch(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}

struct Output {
    table: Table,
    code: i32,
}

impl Output {
    fn ok(table: Table) -> Self {
        Self { table, code: EXIT_OK }
    }
}

fn dispatch(cli: &Cli) -> Result<i32> {
    let format: Format = cli.format.into();
    if let Command::Verify(v) = &cli.command {
        return verify(v, format, cli);
    }
    let out = match &cli.command {
        Command::Simulate { mode } => match mode {
            SimulateMode::Chain(a) => simulate(a, false)?,
            SimulateMode::Graph(a) => simulate(a, true)?,
        },
        Command::Dist { mode: DistMode::Exact(a) } => dist(a)?,
        Command::Rate { mode } => rate(mode)?,
        Command::Bounds(a) => bounds(a)?,
        Command::Verify(_) => unreachable!(),
    };
    emit(cli, format, &out.table)?;
    Ok(out.code)
}

fn emit(cli: &Cli, format: Format, table: &Table) -> Result<()> {
    match &cli.output {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            table.write(format, &mut w)?;
            w.flush()?;
        }
        None => {
            let stdout = io::stdout();
            let mut w = BufWriter::new(stdout.lock());
            table.write(format, &mut w)?;
            w.flush()?;
        }
    }
    Ok(())
}

fn meta(command: &str, flags: Value) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("command".into(), json!(command));
    m.insert("flags".into(), flags);
    m
}

fn ext_cell(v: ExtReal) -> Cell {
    match v {
        ExtReal::Finite(x) => Cell::Float(x),
        ExtReal::PosInf => Cell::Float(f64::INFINITY),
    }
}

fn grid(lo: f64, hi: f64, steps: usize, what: &str) -> Result<Vec<f64>> {
    if steps == 0 {
        return Err(Error::param(format!("{what}: --steps must be at least 1")));
    }
    if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
        return Err(Error::param(format!("{what}: need finite min <= max, got [{lo}, {hi}]")));
    }
    if steps == 1 {
        return Ok(vec![lo]);
    }
    Ok((0..steps)
        .map(|i| lo + (hi - lo) * i as f64 / (steps - 1) as f64)
        .collect())
}

fn simulate(a: &SimulateArgs, graph: bool) -> Result<Output> {
    let params = ModelParams::finite(a.n, a.c)?;
    if a.reps == 0 {
        return Err(Error::param("--reps must be at least 1"));
    }
    let mode = if graph { "graph" } else { "chain" };
    let mut code = EXIT_OK;
    let mut table = if a.paths {
        Table::new(&["replica", "k", "z"])
    } else if graph {
        Table::new(&["replica", "stop_time", "independent", "maximal"])
    } else {
        Table::new(&["replica", "stop_time"])
    };
    table.meta = meta(
        &format!("simulate {mode}"),
        json!({"n": a.n, "c": a.c, "seed": a.seed, "reps": a.reps, "paths": a.paths}),
    );
    if graph {
        let reps = replicas::graph_replicas(&params, a.seed, a.reps)?;
        let mut failures = 0usize;
        for (i, r) in reps.iter().enumerate() {
            if !(r.independent && r.maximal) {
                failures += 1;
            }
            if a.paths {
                for (k, &z) in r.record.z_steps.iter().enumerate() {
                    table.push(vec![i.into(), k.into(), z.into()]);
                }
            } else {
                table.push(vec![
                    i.into(),
                    r.record.stop_time.into(),
                    Cell::Bool(r.independent),
                    Cell::Bool(r.maximal),
                ]);
            }
        }
        if failures > 0 {
            eprintln!("error: {failures} replica(s) produced a set that is not independent and maximal");
            code = EXIT_VERIFY_FAILED;
        }
    } else if a.paths {
        for (i, t) in replicas::chain_trajectories(&params, a.seed, a.reps)?.iter().enumerate() {
            for (k, &z) in t.z.iter().enumerate() {
                table.push(vec![i.into(), k.into(), z.into()]);
            }
        }
    } else {
        for (i, t) in replicas::chain_stop_times(&params, a.seed, a.reps)?.into_iter().enumerate() {
            table.push(vec![i.into(), t.into()]);
        }
    }
    Ok(Output { table, code })
}

fn dp_cap() -> Result<usize> {
    match std::env::var(DP_CAP_ENV) {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| Error::param(format!("{DP_CAP_ENV} must be a positive integer, got {s:?}"))),
        Err(_) => Ok(DEFAULT_DP_CAP),
    }
}

fn dist(a: &DistArgs) -> Result<Output> {
    let params = ModelParams::finite(a.n, a.c)?;
    let dist = exact_stop_time_distribution_with_cap(&params, dp_cap()?)?;
    let mut table = Table::new(&["k", "pmf", "log_pmf"]);
    table.meta = meta(
        "dist exact",
        json!({"n": a.n, "c": a.c, "tail": a.tail, "side": TailSide::from(a.side).to_string()}),
    );
    for k in 1..=dist.n {
        table.push(vec![k.into(), dist.pmf[k - 1].into(), dist.log_pmf[k - 1].into()]);
    }
    if let Some(theta) = a.tail {
        let side: TailSide = a.side.into();
        let lp = tail_log_prob(&dist, theta, side)?;
        table.notes.push(("tail_threshold".into(), theta.into()));
        table.notes.push(("tail_side".into(), Cell::Text(side.to_string())));
        table.notes.push(("tail_log_prob".into(), lp.into()));
    }
    Ok(Output::ok(table))
}

fn rate(mode: &RateMode) -> Result<Output> {
    match mode {
        RateMode::Traj { c, alpha0, grid: k } => {
            let traj = HamTrajectory::new(*c, *alpha0)?;
            if *k < 2 {
                return Err(Error::param("--grid must be at least 2"));
            }
            let mut table = Table::new(&["t", "x", "alpha", "L_integrand"]);
            table.meta = meta("rate traj", json!({"c": c, "alpha0": alpha0, "grid": k}));
            for t in grid(0.0, 1.0, *k, "rate traj")? {
                if t < traj.exit_time {
                    table.push(vec![
                        t.into(),
                        traj.clipped_position(t).into(),
                        traj.momentum(t).into(),
                        simplified_integrand(&traj, t).into(),
                    ]);
                } else {
                    table.push(vec![t.into(), 1.0.into(), Cell::Missing, 0.0.into()]);
                }
            }
            table.notes.push(("exit_time".into(), traj.exit_time.into()));
            table.notes.push(("t_star".into(), t_star(*c).into()));
            Ok(Output::ok(table))
        }
        RateMode::F { c, alpha0_min, alpha0_max, steps } => {
            let alphas = grid(*alpha0_min, *alpha0_max, *steps, "rate F")?;
            let values = par::collect_results(par::map_slice(&alphas, |&a| rate_f(*c, a)))?;
            let mut table = Table::new(&["alpha0", "F"]);
            table.meta = meta(
                "rate F",
                json!({"c": c, "alpha0_min": alpha0_min, "alpha0_max": alpha0_max, "steps": steps}),
            );
            for (a, v) in alphas.iter().zip(values) {
                table.push(vec![(*a).into(), ext_cell(v.value)]);
            }
            Ok(Output::ok(table))
        }
        RateMode::Tail { c, eps, side } => {
            let side: TailSide = (*side).into();
            let v = tail_rate(*c, *eps, side)?;
            let mut table = Table::new(&["c", "eps", "side", "alpha0", "rate"]);
            table.meta = meta("rate tail", json!({"c": c, "eps": eps, "side": side.to_string()}));
            table.push(vec![
                (*c).into(),
                (*eps).into(),
                Cell::Text(side.to_string()),
                v.optimizer.map_or(Cell::Missing, Cell::Float),
                ext_cell(v.value),
            ]);
            Ok(Output::ok(table))
        }
        RateMode::Path { c, path_file } => {
            let path = path_file::read_path(path_file)?;
            let v = path_rate(*c, &path)?;
            let mut table = Table::new(&["rate"]);
            table.meta = meta(
                "rate path",
                json!({"c": c, "path_file": path_file.display().to_string()}),
            );
            table.push(vec![ext_cell(v.value)]);
            Ok(Output::ok(table))
        }
    }
}

fn bounds(a: &BoundsArgs) -> Result<Output> {
    let bound: Bound = a.which.into();
    let cs = grid(a.c_min, a.c_max, a.steps, "bounds")?;
    let rows = par::collect_results(par::map_slice(&cs, |&c| bound_rate(c, bound)))?;
    let mut table = Table::new(&["c", "sigma_star", "rate"]);
    table.meta = meta(
        "bounds",
        json!({"c_min": a.c_min, "c_max": a.c_max, "steps": a.steps, "which": bound.to_string()}),
    );
    for (c, (sigma, r)) in cs.iter().zip(rows) {
        table.push(vec![(*c).into(), sigma.into(), ext_cell(r.value)]);
    }
    Ok(Output::ok(table))
}

fn verify(v: &VerifyArgs, format: Format, cli: &Cli) -> Result<i32> {
    let opts = VerifyOptions {
        quick: v.quick,
        only: v.check.clone(),
        c: v.c,
        alpha0: v.alpha0,
    };
    let outcomes = run_checks(&opts)?;
    let all = outcomes.iter().all(|o| o.passed);
    for o in &outcomes {
        println!("{}", o.line());
    }
    if cli.output.is_some() || matches!(format, Format::Json) {
        let mut table = Table::new(&["check", "passed", "detail"]);
        table.meta = meta(
            "verify",
            json!({"quick": v.quick, "check": v.check, "c": v.c, "alpha0": v.alpha0}),
        );
        for o in &outcomes {
            table.push(vec![Cell::Text(o.name.clone()), Cell::Bool(o.passed), Cell::Text(o.detail.clone())]);
        }
        if let Some(path) = &cli.output {
            let mut w = BufWriter::new(File::create(path)?);
            table.write(format, &mut w)?;
            w.flush()?;
        } else {
            table.write(format, io::stdout().lock())?;
        }
    }
    Ok(if all { EXIT_OK } else { EXIT_VERIFY_FAILED })
}
