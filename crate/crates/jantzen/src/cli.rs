//! Command line interface.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use crate::combinatorics::{enumerate_multipartitions, Multicharge, Multipartition};
use crate::decomp::{decomposition, DecompositionMatrix};
use crate::error::{Error, Result};
use crate::fixtures::{verify_fixtures, FixtureCheck, Fixtures};
use crate::jantzen::{jantzen_route, positive_coefficients, ComputedMatrices, JantzenCharacter, PositiveCoefficient, Route};
use crate::ring::ValuationContext;

#[derive(Parser, Debug)]
#[command(name = "jantzen", version, about = "Jantzen characters of Specht modules of cyclotomic Hecke algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Jantzen characters by one route.
    Character(CharacterArgs),
    /// Compare routes and list the positive coefficients (d_{λν})′(1).
    SumFormula(SumFormulaArgs),
    /// Characteristic zero graded decomposition matrix.
    Decomp(DecompArgs),
    /// Check the bundled example corpus.
    VerifyFixtures(VerifyArgs),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    #[default]
    Text,
}

#[derive(Args, Debug, Clone)]
pub struct ChargeArgs {
    #[arg(long, default_value_t = 1)]
    pub level: usize,
    #[arg(long)]
    pub n: usize,
    /// `auto` for the smallest separated lift of --residues, or a comma separated list.
    #[arg(long, default_value = "auto")]
    pub charge: String,
    /// Comma separated residues of the dominant weight; defaults to all zero.
    #[arg(long)]
    pub residues: Option<String>,
}

impl ChargeArgs {
    pub fn multicharge(&self, e: u32) -> Result<Multicharge> {
        if self.charge == "auto" {
            let residues = match &self.residues {
                Some(r) => parse_list::<u32>(r)?,
                None => vec![0; self.level],
            };
            if residues.len() != self.level {
                return Err(Error::Mismatch(format!("{} residues for level {}", residues.len(), self.level)));
            }
            Multicharge::canonical(&residues, e, self.n)
        } else {
            let kappa = parse_list::<i64>(&self.charge)?;
            if kappa.len() != self.level {
                return Err(Error::Mismatch(format!("{} charges for level {}", kappa.len(), self.level)));
            }
            Multicharge::new(kappa, e, self.n)
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct ShapeArgs {
    #[command(flatten)]
    pub charge: ChargeArgs,
    #[arg(long)]
    pub e: u32,
    #[arg(long, default_value_t = 0)]
    pub p: u32,
    /// A multipartition such as `3,2|1`; repeatable, or `all`.
    #[arg(long = "shape", default_value = "all")]
    pub shapes: Vec<String>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

impl ShapeArgs {
    fn shapes(&self) -> Result<Vec<Multipartition>> {
        let (level, n) = (self.charge.level, self.charge.n);
        if self.shapes.iter().any(|s| s == "all") {
            return Ok(enumerate_multipartitions(level, n));
        }
        let mut out = Vec::new();
        for s in &self.shapes {
            let m: Multipartition = s.parse()?;
            if m.level() != level || m.size() != n {
                return Err(Error::Mismatch(format!("{m} is not a {level}-multipartition of {n}")));
            }
            out.push(m);
        }
        Ok(out)
    }
}

#[derive(Args, Debug, Clone)]
pub struct CharacterArgs {
    #[command(flatten)]
    pub shape: ShapeArgs,
    #[arg(long, default_value = "gamma")]
    pub route: Route,
}

#[derive(Args, Debug, Clone)]
pub struct SumFormulaArgs {
    #[command(flatten)]
    pub shape: ShapeArgs,
    /// Routes to compare; all four by default.
    #[arg(long = "route")]
    pub routes: Vec<Route>,
}

#[derive(Args, Debug, Clone)]
pub struct DecompArgs {
    #[command(flatten)]
    pub charge: ChargeArgs,
    #[arg(long)]
    pub f: u32,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct VerifyArgs {
    /// Read fixtures from this directory instead of the bundled copies.
    #[arg(long)]
    pub fixtures_dir: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn parse_list<T: std::str::FromStr>(s: &str) -> Result<Vec<T>> {
    s.split(',')
        .map(|x| x.trim().parse().map_err(|_| Error::Parse(format!("bad list entry {x:?} in {s:?}"))))
        .collect()
}

/// Rendered output and whether every check passed.
pub struct Report {
    pub body: String,
    pub ok: bool,
}

pub fn run(cli: &Cli) -> Result<Report> {
    let report = match &cli.command {
        Command::Character(a) => character(a)?,
        Command::SumFormula(a) => sum_formula(a)?,
        Command::Decomp(a) => decomp(a)?,
        Command::VerifyFixtures(a) => verify(a)?,
    };
    let out = match &cli.command {
        Command::Character(a) => &a.shape.out,
        Command::SumFormula(a) => &a.shape.out,
        Command::Decomp(a) => &a.out,
        Command::VerifyFixtures(a) => &a.out,
    };
    if let Some(path) = out {
        std::fs::write(path, &report.body)?;
    }
    Ok(report)
}

fn residues(i: &[u16]) -> String {
    i.iter().map(u16::to_string).collect::<Vec<_>>().join("")
}

fn render_characters(chars: &[JantzenCharacter], format: Format) -> Result<String> {
    Ok(match format {
        Format::Json => serde_json::to_string_pretty(chars)? + "\n",
        Format::Csv => {
            let mut s = String::from("lambda,route,residues,value\n");
            for c in chars {
                for (i, v) in c.entries() {
                    writeln!(s, "\"{}\",{},{},{v}", c.lambda, c.route, residues(&i.values)).unwrap();
                }
            }
            s
        }
        Format::Text => {
            let mut s = String::new();
            for c in chars {
                writeln!(s, "J({}) [{}]:", c.lambda, c.route).unwrap();
                if c.is_zero() {
                    writeln!(s, "  0").unwrap();
                }
                for (i, v) in c.entries() {
                    writeln!(s, "  {v} · {}", residues(&i.values)).unwrap();
                }
            }
            s
        }
    })
}

fn character(a: &CharacterArgs) -> Result<Report> {
    let sh = &a.shape;
    let charge = sh.charge.multicharge(sh.e)?;
    let ctx = ValuationContext::new(sh.e, sh.p)?;
    let chars = sh
        .shapes()?
        .par_iter()
        .map(|lam| jantzen_route(a.route, lam, &ctx, &charge, &ComputedMatrices))
        .collect::<Result<Vec<_>>>()?;
    Ok(Report { body: render_characters(&chars, sh.format)?, ok: true })
}

#[derive(Serialize)]
struct SumFormulaRow {
    lambda: Multipartition,
    agree: bool,
    characters: Vec<JantzenCharacter>,
    coefficients: Vec<PositiveCoefficient>,
}

fn sum_formula(a: &SumFormulaArgs) -> Result<Report> {
    let sh = &a.shape;
    let charge = sh.charge.multicharge(sh.e)?;
    let ctx = ValuationContext::new(sh.e, sh.p)?;
    let routes: Vec<Route> = if a.routes.is_empty() { Route::ALL.to_vec() } else { a.routes.clone() };
    let rows = sh
        .shapes()?
        .par_iter()
        .map(|lam| {
            let characters = routes
                .iter()
                .map(|&r| jantzen_route(r, lam, &ctx, &charge, &ComputedMatrices))
                .collect::<Result<Vec<_>>>()?;
            let agree = characters.windows(2).all(|w| w[0].character == w[1].character);
            let coefficients = positive_coefficients(lam, &ctx, &charge, &ComputedMatrices)?;
            Ok(SumFormulaRow { lambda: lam.clone(), agree, characters, coefficients })
        })
        .collect::<Result<Vec<_>>>()?;
    let ok = rows.iter().all(|r| r.agree);
    let body = match sh.format {
        Format::Json => serde_json::to_string_pretty(&rows)? + "\n",
        Format::Csv => {
            let mut s = String::from("lambda,agree,f,weight,nu,derivative\n");
            for r in &rows {
                for c in &r.coefficients {
                    writeln!(s, "\"{}\",{},{},{},\"{}\",{}", r.lambda, r.agree, c.f, c.weight, c.nu, c.derivative).unwrap();
                }
                if r.coefficients.is_empty() {
                    writeln!(s, "\"{}\",{},,,,", r.lambda, r.agree).unwrap();
                }
            }
            s
        }
        Format::Text => {
            let mut s = String::new();
            for r in &rows {
                let names: Vec<&str> = routes.iter().map(|r| r.name()).collect();
                writeln!(s, "{}: {} ({})", r.lambda, if r.agree { "agree" } else { "DISAGREE" }, names.join(", ")).unwrap();
                for c in &r.coefficients {
                    writeln!(s, "  f={} ν(Φ_f)={} ν={} d′(1)={}", c.f, c.weight, c.nu, c.derivative).unwrap();
                }
                if !r.agree {
                    s.push_str(&render_characters(&r.characters, Format::Text)?);
                }
            }
            s
        }
    };
    Ok(Report { body, ok })
}

fn render_matrix(m: &DecompositionMatrix, format: Format) -> Result<String> {
    Ok(match format {
        Format::Json => m.to_json()? + "\n",
        Format::Csv => {
            let mut s = String::from("lambda");
            for c in &m.cols {
                write!(s, ",\"{c}\"").unwrap();
            }
            s.push('\n');
            for (r, lam) in m.rows.iter().enumerate() {
                write!(s, "\"{lam}\"").unwrap();
                for c in 0..m.cols.len() {
                    let d = m.get(r, c);
                    if d.is_zero() {
                        s.push(',');
                    } else {
                        write!(s, ",{d}").unwrap();
                    }
                }
                s.push('\n');
            }
            s
        }
        Format::Text => {
            let mut s = String::new();
            for lam in &m.rows {
                let row: Vec<String> = m.row(lam).into_iter().map(|(mu, d)| format!("({d})·[{mu}]")).collect();
                writeln!(s, "{lam}: {}", row.join(" + ")).unwrap();
            }
            s
        }
    })
}

fn decomp(a: &DecompArgs) -> Result<Report> {
    let charge = a.charge.multicharge(a.f)?;
    let dec = decomposition(a.charge.level, a.charge.n, a.f, &charge)?;
    Ok(Report { body: render_matrix(&dec.matrix, a.format)?, ok: true })
}

fn render_checks(checks: &[FixtureCheck], format: Format) -> Result<String> {
    Ok(match format {
        Format::Json => serde_json::to_string_pretty(checks)? + "\n",
        Format::Csv => {
            let mut s = String::from("name,passed,detail\n");
            for c in checks {
                writeln!(s, "\"{}\",{},\"{}\"", c.name, c.passed, c.detail.replace('"', "'")).unwrap();
            }
            s
        }
        Format::Text => {
            let mut s = String::new();
            for c in checks {
                writeln!(s, "{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail).unwrap();
            }
            s
        }
    })
}

fn verify(a: &VerifyArgs) -> Result<Report> {
    let fx = match &a.fixtures_dir {
        Some(dir) => Fixtures::from_dir(dir)?,
        None => Fixtures::bundled()?,
    };
    let checks = verify_fixtures(&fx);
    let ok = checks.iter().all(|c| c.passed);
    Ok(Report { body: render_checks(&checks, a.format)?, ok })
}
