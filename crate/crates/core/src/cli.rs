//! Command-line front end. [`run`] takes the argument list and two sinks and
//! returns the process exit code: 0 on success, 1 when a computation fails,
//! 2 for bad usage.

use std::io::Write;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::braid::BraidWord;
use crate::complex::{jones_polynomial, Coefficients, GradedComplex, Theory};
use crate::cube::SignedCube;
use crate::grid::{Direction, GridDiagram};
use crate::homology::{format_report, homology, to_json, ReportOptions};
use crate::invariant::{invariant_status_over, status_in, survey};
use crate::tikz::{render_diagram, DiagramSource, RenderKind};
use crate::{Error, Result};

/// Environment variable holding the default worker count.
pub const THREADS_ENV: &str = "ODDKH_THREADS";

#[derive(Debug, Parser)]
#[command(name = "oddkh", version, about = "Odd Khovanov homology and the transverse invariant of braid closures")]
struct Cli {
    /// Worker threads (default: $ODDKH_THREADS, else all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Refuse braids with more crossings than this.
    #[arg(long, global = true, default_value_t = 20)]
    max_crossings: usize,
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Bigraded homology of the closure.
    Homology {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value = "odd")]
        theory: Theory,
        #[arg(long = "coeff", default_value = "Z")]
        coefficients: Coefficients,
        /// Signature to print in the summary line.
        #[arg(long, allow_hyphen_values = true)]
        sigma: Option<i64>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Whether the transverse invariant vanishes, and its order.
    Invariant {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value = "odd")]
        theory: Theory,
        #[arg(long = "coeff", default_value = "Z")]
        coefficients: Coefficients,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Braid word of a grid diagram.
    GridToBraid {
        #[arg(long)]
        grid: GridDiagram,
        #[arg(long, default_value = "right")]
        direction: Direction,
    },
    /// Word operations: mirror and connected sum.
    Braid {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        mirror: bool,
        #[arg(long, allow_hyphen_values = true)]
        connect_sum: Option<BraidWord>,
    },
    /// Jones polynomial (unknot = q^-1 + q).
    Jones {
        #[command(flatten)]
        input: Input,
    },
    /// TikZ picture.
    Tex {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value = "braid")]
        what: RenderKind,
    },
    /// Invariant statuses for every entry of a JSON-lines corpus.
    Survey {
        #[arg(long)]
        corpus: std::path::PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Structural checks on a built-in set of braids.
    Selfcheck,
}

#[derive(Debug, Args)]
struct Input {
    #[command(flatten)]
    source: Source,
    /// Braiding direction used for a grid.
    #[arg(long, default_value = "right")]
    direction: Direction,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct Source {
    /// Braid word, e.g. "1,-2,1" or "1,1@3" for an explicit strand count.
    #[arg(long, allow_hyphen_values = true)]
    braid: Option<BraidWord>,
    /// Grid diagram "x0,x1,...;o0,o1,...".
    #[arg(long)]
    grid: Option<GridDiagram>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

struct Context<'a> {
    max_crossings: usize,
    verbose: u8,
    out: &'a mut (dyn Write + Send),
    err: &'a mut (dyn Write + Send),
}

impl Input {
    fn braid(&self) -> BraidWord {
        match (&self.source.braid, &self.source.grid) {
            (Some(b), _) => b.clone(),
            (None, Some(g)) => g.to_braid(self.direction),
            (None, None) => unreachable!("clap enforces one input"),
        }
    }
}

impl Context<'_> {
    fn checked(&mut self, braid: BraidWord) -> Result<BraidWord> {
        if braid.len() > self.max_crossings {
            return Err(Error::TooManyCrossings { crossings: braid.len(), limit: self.max_crossings });
        }
        if self.verbose > 0 {
            let _ = writeln!(self.err, "braid {braid}: {} strands, {} crossings", braid.strands(), braid.len());
        }
        Ok(braid)
    }

    fn emit(&mut self, text: &str) -> Result<()> {
        self.out.write_all(text.as_bytes()).map_err(|e| Error::Parse(format!("write failed: {e}")))
    }
}

pub fn run<I, T>(args: I, out: &mut (dyn Write + Send), err: &mut (dyn Write + Send)) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    0
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    2
                }
            };
        }
    };
    let threads = cli.threads.or_else(|| std::env::var(THREADS_ENV).ok().and_then(|v| v.parse().ok()));
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(threads.unwrap_or(0)).build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: cannot start worker threads: {e}");
            return 1;
        }
    };
    let mut ctx = Context { max_crossings: cli.max_crossings, verbose: cli.verbose, out, err };
    let started = Instant::now();
    let result = pool.install(|| dispatch(cli.command, &mut ctx));
    if ctx.verbose > 0 {
        let _ = writeln!(ctx.err, "done in {:.2?}", started.elapsed());
    }
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(ctx.err, "error: {e}");
            1
        }
    }
}

fn dispatch(command: Command, ctx: &mut Context<'_>) -> Result<i32> {
    match command {
        Command::Homology { input, theory, coefficients, sigma, format } => {
            let braid = ctx.checked(input.braid())?;
            let groups = homology(&GradedComplex::from_braid(&braid, theory, coefficients));
            let text = match format {
                Format::Json => {
                    let mut js = to_json(&groups);
                    js["sl"] = json!(braid.self_linking());
                    if let Some(s) = sigma {
                        js["sigma"] = json!(s);
                    }
                    format!("{js}\n")
                }
                Format::Text => {
                    let wide = match theory {
                        Theory::Even => None,
                        Theory::OddReduced => Some(groups.diagonals().len() > 1),
                        Theory::Odd => {
                            let reduced = GradedComplex::from_braid(&braid, Theory::OddReduced, coefficients);
                            Some(homology(&reduced).diagonals().len() > 1)
                        }
                    };
                    let options = ReportOptions { self_linking: Some(braid.self_linking()), sigma, wide };
                    format_report(&groups, &options)
                }
            };
            ctx.emit(&text)?;
        }
        Command::Invariant { input, theory, coefficients, format } => {
            let braid = ctx.checked(input.braid())?;
            let status = invariant_status_over(&braid, theory, coefficients);
            let text = match format {
                Format::Text => format!("{status}\n"),
                Format::Json => {
                    let mut js = status.to_json();
                    js["theory"] = json!(theory.to_string());
                    js["coefficients"] = json!(coefficients.to_string());
                    js["sl"] = json!(braid.self_linking());
                    format!("{js}\n")
                }
            };
            ctx.emit(&text)?;
        }
        Command::GridToBraid { grid, direction } => {
            ctx.emit(&format!("{}\n", grid.to_braid(direction)))?;
        }
        Command::Braid { input, mirror, connect_sum } => {
            let mut braid = input.braid();
            if let Some(other) = connect_sum {
                braid = braid.connect_sum(&other);
            }
            if mirror {
                braid = braid.mirror();
            }
            ctx.emit(&format!("{braid}\nstrands = {}, sl = {}\n", braid.strands(), braid.self_linking()))?;
        }
        Command::Jones { input } => {
            let braid = ctx.checked(input.braid())?;
            ctx.emit(&format!("{}\n", jones_polynomial(&braid)))?;
        }
        Command::Tex { input, what } => {
            let text = match (&input.source.braid, &input.source.grid) {
                (Some(b), _) => render_diagram(DiagramSource::Braid(b), what)?,
                (None, Some(g)) => render_diagram(DiagramSource::Grid(g), what)?,
                (None, None) => unreachable!("clap enforces one input"),
            };
            ctx.emit(&text)?;
        }
        Command::Survey { corpus, format } => {
            let text = std::fs::read_to_string(&corpus)
                .map_err(|e| Error::Parse(format!("cannot read {}: {e}", corpus.display())))?;
            let report = survey(&text, ctx.max_crossings);
            for d in &report.diagnostics {
                let _ = writeln!(ctx.err, "skipped {d}");
            }
            let body = match format {
                Format::Text => report.to_table(),
                Format::Json => report.rows.iter().map(|r| format!("{}\n", r.to_json())).collect(),
            };
            ctx.emit(&body)?;
        }
        Command::Selfcheck => return selfcheck(ctx),
    }
    Ok(0)
}

const SAMPLES: &[&[i32]] = &[&[], &[1], &[1, 1, 1], &[-1, -1, -1], &[1, -2, 1, -2], &[1, 2, 1, 2], &[1, 1, -2, 1, 3, -2, 3], &[2, -1, 2, -1, 2]];

fn selfcheck(ctx: &mut Context<'_>) -> Result<i32> {
    let mut failures = 0;
    for letters in SAMPLES {
        let braid = BraidWord::new(letters.to_vec(), None)?;
        let mut checks: Vec<(&str, bool)> = vec![("skew cube", SignedCube::build(&braid).verify_skew())];
        for theory in [Theory::Odd, Theory::OddReduced, Theory::Even] {
            let c = GradedComplex::from_braid(&braid, theory, Coefficients::Integers);
            let psi_ok = c.psi_chain().is_some_and(|p| c.apply_differential(&p).is_zero());
            checks.push(("d^2 = 0", c.d_squared_vanishes()));
            checks.push(("invariant is a cycle", psi_ok));
            // status_in asserts the grading
            let _ = status_in(&c);
        }
        let splitting = [Coefficients::Rationals, Coefficients::PrimeField(2)].into_iter().all(|k| {
            let full = homology(&GradedComplex::from_braid(&braid, Theory::Odd, k));
            let red = homology(&GradedComplex::from_braid(&braid, Theory::OddReduced, k));
            let ok = full.iter().map(|(b, _)| b).chain(red.iter().map(|((r, q), _)| (r, q + 1))).all(|(r, q)| {
                full.get((r, q)).free == red.get((r, q - 1)).free + red.get((r, q + 1)).free
            });
            ok
        });
        checks.push(("reduced splitting", splitting));
        for (name, ok) in checks {
            if !ok {
                failures += 1;
                let _ = writeln!(ctx.err, "FAIL {name} on [{braid}]");
            }
        }
        ctx.emit(&format!("checked [{braid}]\n"))?;
    }
    ctx.emit(if failures == 0 { "selfcheck ok\n" } else { "selfcheck FAILED\n" })?;
    Ok(if failures == 0 { 0 } else { 1 })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let mut argv = vec!["oddkh"];
        argv.extend_from_slice(args);
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(call(&["homology"]).0, 2);
        assert_eq!(call(&["homology", "--braid", "1", "--grid", "0,1;1,0"]).0, 2);
        assert_eq!(call(&["homology", "--braid", "1", "--theory", "weird"]).0, 2);
        assert_eq!(call(&["frobnicate"]).0, 2);
        assert_eq!(call(&["--help"]).0, 0);
    }

    #[test]
    fn computation_errors_exit_one() {
        let (code, _, err) = call(&["homology", "--braid", "1,1,1", "--max-crossings", "2"]);
        assert_eq!(code, 1);
        assert!(err.contains("limit is 2"));
        assert_eq!(call(&["tex", "--braid", "1", "--what", "grid"]).0, 1);
    }

    #[test]
    fn unknot_report() {
        let (code, out, _) = call(&["homology", "--braid", "1"]);
        assert_eq!(code, 0);
        assert_eq!(out, "KH'_( 0)(L) = Z^1[ 1] + Z^1[-1]\nsl = -1.\n");
        let (_, out, _) = call(&["invariant", "--braid", "-1"]);
        assert_eq!(out, "Inv Zero\n");
    }

    #[test]
    fn word_operations() {
        let (_, out, _) = call(&["braid", "--braid", "1,1,1", "--connect-sum", "-1,-1,-1"]);
        assert!(out.starts_with("1,1,1,-2,-2,-2\n"));
        let (_, out, _) = call(&["braid", "--braid", "1,-2", "--mirror"]);
        assert!(out.starts_with("-1,2\n"));
        let (_, out, _) = call(&["jones", "--braid", "1,1,1"]);
        assert_eq!(out, "q + q^3 + q^5 - q^9\n");
    }
}
