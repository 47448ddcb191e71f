//! Command dispatch. Exit codes: 0 success, 1 invalid configuration,
//! 2 dual-method mismatch, 3 numeric self-test failure, 4 precision
//! exhaustion.

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::config::{load_path, LoadedConfig};
use crate::error::Error;
use crate::geodesic::oracle_coeff;
use crate::pell::{brute_force_tp_unit, fundamental_tp_unit};
use crate::quad::totally_positive;
use crate::ratio::format_rational;
use crate::series::{elliptic_coeff, hilbert_coeffs, report};

#[derive(Parser)]
#[command(
    name = "geodesic-theta",
    about = "Intersection numbers of real quadratic geodesics, two ways"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Method {
    Theta,
    Oracle,
    Both,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Tsv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Run all construction-time invariants of a configuration
    Verify { config: PathBuf },
    /// Coefficient table for n = 1..n-max
    Coeffs {
        config: PathBuf,
        #[arg(long = "n-max")]
        n_max: Option<u32>,
        #[arg(long, value_enum, default_value = "both")]
        method: Method,
        #[arg(long, value_enum, default_value = "tsv")]
        format: Format,
    },
    /// Hilbert coefficients c(beta) for totally positive beta up to a trace bound
    Hilbert {
        config: PathBuf,
        #[arg(long = "trace-max", default_value = "20")]
        trace_max: u32,
    },
    /// Numeric and unit self-tests
    Selftest {
        /// quadrature tolerance (tighten to force failure)
        #[arg(long, default_value = "1e-9")]
        tol: f64,
    },
}

fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::PrecisionExhaustion(_) => 4,
        Error::ToleranceNotAchieved(_) => 3,
        Error::MethodMismatch(_) => 2,
        _ => 1,
    }
}

fn cmd_verify(path: &PathBuf) -> Result<(), Error> {
    let loaded = load_path(path)?;
    let ctx = &loaded.ctx;
    println!("config           {}", loaded.config.name);
    println!("hash             {}", loaded.config_hash);
    println!(
        "algebra          ({}, {})",
        format_rational(&ctx.alg.a),
        format_rational(&ctx.alg.b)
    );
    println!("discriminant     {}", loaded.disc);
    println!("reduced disc     {}", ctx.order.reduced_disc);
    println!("level            {}", loaded.level);
    println!("order axioms     ok (unity, products, conjugation)");
    println!(
        "embedding 1      D1 = {}, conductor {}, w1^2 = D1 verified",
        ctx.d1, ctx.emb1.f
    );
    println!(
        "embedding 2      D2 = {}, conductor {}, w2^2 = D2 verified",
        ctx.d2, ctx.emb2.f
    );
    println!(
        "unit 1           {} + {} sqrt({})",
        format_rational(&ctx.u1.a),
        format_rational(&ctx.u1.b),
        ctx.d1
    );
    println!(
        "unit 2           {} + {} sqrt({})",
        format_rational(&ctx.u2.a),
        format_rational(&ctx.u2.b),
        ctx.d2
    );
    println!("M invertible     ok");
    println!(
        "alpha            {} + {} sqrt({})   (trace 1, totally positive: {})",
        format_rational(&ctx.alpha.a),
        format_rational(&ctx.alpha.b),
        ctx.d,
        ctx.alpha_totally_positive()
    );
    Ok(())
}

fn cmd_coeffs(
    path: &PathBuf,
    n_max: Option<u32>,
    method: Method,
    format: Format,
) -> Result<(), Error> {
    let loaded = load_path(path)?;
    let ctx = &loaded.ctx;
    let n_max = n_max.unwrap_or(loaded.config.options.n_max);
    let level_disc = loaded.level * loaded.disc;

    match method {
        Method::Both => {
            let table = report(ctx, n_max, level_disc)?;
            emit_rows(
                format,
                &loaded,
                Some(table.calibration_sign),
                table.rows.iter().map(|r| {
                    (
                        r.n,
                        Some(r.a_theta),
                        Some(r.a_oracle),
                        Some(r.matches),
                        r.coprime_to_level,
                    )
                }),
            );
            if !table.all_match() {
                return Err(Error::MethodMismatch(table.mismatches[0]));
            }
        }
        Method::Theta => {
            let rows = (1..=n_max).map(|n| {
                (
                    n,
                    Some(elliptic_coeff(ctx, n)),
                    None,
                    None,
                    num_integer::gcd(n as u64, level_disc) == 1,
                )
            });
            emit_rows(format, &loaded, None, rows);
        }
        Method::Oracle => {
            let mut rows = Vec::new();
            for n in 1..=n_max {
                rows.push((
                    n,
                    None,
                    Some(oracle_coeff(ctx, n)?),
                    None,
                    num_integer::gcd(n as u64, level_disc) == 1,
                ));
            }
            emit_rows(format, &loaded, None, rows.into_iter());
        }
    }
    Ok(())
}

type Row = (u32, Option<i64>, Option<i64>, Option<bool>, bool);

fn emit_rows(
    format: Format,
    loaded: &LoadedConfig,
    calibration_sign: Option<i32>,
    rows: impl Iterator<Item = Row>,
) {
    match format {
        Format::Tsv => {
            println!("n\ta_theta\ta_oracle\tmatch\tcoprime");
            for (n, t, o, m, c) in rows {
                let cell = |v: Option<i64>| v.map(|x| x.to_string()).unwrap_or_else(|| "NA".into());
                let mcell = m.map(|x| x.to_string()).unwrap_or_else(|| "NA".into());
                println!("{n}\t{}\t{}\t{mcell}\t{c}", cell(t), cell(o));
            }
        }
        Format::Json => {
            let rows: Vec<serde_json::Value> = rows
                .map(|(n, t, o, m, c)| {
                    serde_json::json!({
                        "n": n,
                        "a_theta": t,
                        "a_oracle": o,
                        "match": m,
                        "coprime": c,
                    })
                })
                .collect();
            let doc = serde_json::json!({
                "config_hash": loaded.config_hash,
                "calibration_sign": calibration_sign,
                "rows": rows,
            });
            println!("{}", serde_json::to_string_pretty(&doc).unwrap());
        }
    }
}

fn cmd_hilbert(path: &PathBuf, trace_max: u32) -> Result<(), Error> {
    let loaded = load_path(path)?;
    let ctx = &loaded.ctx;
    let table = hilbert_coeffs(ctx, trace_max);
    println!("trace\tbeta\tc");
    for ((tr, v), c) in table {
        let u = crate::ratio::rat(tr as i64, 2);
        let vs = format_rational(&v);
        let sign = if vs.starts_with('-') { "" } else { "+" };
        println!(
            "{tr}\t{}{}{}*sqrt({})\t{}",
            format_rational(&u),
            sign,
            vs,
            ctx.d,
            c
        );
    }
    Ok(())
}

fn cmd_selftest(tol: f64) -> Result<(), Error> {
    use crate::arch::{i_closed, i_quadrature};
    let grid = [-2.0, -1.0, -0.5, 0.25, 0.5, 1.0, 2.0];
    let mut worst: f64 = 0.0;
    for &x in &grid {
        for &y in &grid {
            let q = i_quadrature(x, y, tol)?;
            let diff = (q - i_closed(x, y)).abs();
            worst = worst.max(diff);
            if diff >= tol {
                return Err(Error::ToleranceNotAchieved(diff));
            }
        }
    }
    println!("quadrature grid  ok (49 points, worst residual {worst:.3e})");

    for (d, f) in [(2u64, 1u64), (3, 1), (5, 1), (5, 2), (13, 1), (15, 1), (21, 2)] {
        let cf = fundamental_tp_unit(d, f);
        let bf = brute_force_tp_unit(d, f, 500_000)
            .ok_or_else(|| Error::ToleranceNotAchieved(f64::NAN))?;
        if cf != bf || !totally_positive(&cf) {
            return Err(Error::InvalidConfig(format!(
                "unit mismatch for D = {d}, f = {f}"
            )));
        }
    }
    println!("unit cross-check ok (continued fraction vs brute force)");
    Ok(())
}

pub fn run() -> i32 {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Verify { config } => cmd_verify(config),
        Command::Coeffs {
            config,
            n_max,
            method,
            format,
        } => cmd_coeffs(config, *n_max, *method, *format),
        Command::Hilbert { config, trace_max } => cmd_hilbert(config, *trace_max),
        Command::Selftest { tol } => cmd_selftest(*tol),
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code_for(&e)
        }
    }
}
