use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use superpoly::check::{run_checks, CHECK_NAMES};
use superpoly::complex::{build_torus_complex, DotComplex};
use superpoly::dataset::load_dataset;
use superpoly::render::{render, Format};
use superpoly::stable::{stable_d0_homology, stable_khr2, stable_khr2_generic, stable_super};
use superpoly::structchecks::thin_super;
use superpoly::torus::{homfly_torus, super_t2, super_t3, t3_reduced, unreduce, HomflyForm, TorusKnotId};
use superpoly::{Error, Poly3};

#[derive(Parser)]
#[command(name = "superpoly", version, about = "Superpolynomials of knots and their d_N reductions")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// HOMFLY polynomial
    Homfly {
        #[command(subcommand)]
        what: HomflyCmd,
    },
    /// Reduced superpolynomial
    Super {
        #[command(subcommand)]
        what: SuperCmd,
    },
    /// Homology of d_N, from a torus knot or a complex file
    Reduce {
        #[arg(long, num_args = 2, value_names = ["N", "M"], conflicts_with = "complex")]
        torus: Option<Vec<i64>>,
        #[arg(long, required_unless_present = "torus")]
        complex: Option<String>,
        #[arg(long = "n")]
        n: i64,
    },
    /// Stable limit of T(n, m) as m grows
    Stable {
        #[arg(long = "n")]
        n: i64,
        #[arg(long)]
        qmax: i64,
        #[arg(long, value_parser = ["2", "0"])]
        reduce: Option<String>,
    },
    /// Run the invariant checks over a knot table
    Check {
        #[arg(long)]
        dataset: String,
        #[arg(long)]
        only: Option<String>,
    },
    /// Draw a dot diagram
    Render {
        #[arg(long)]
        complex: String,
        #[arg(long, value_enum, default_value = "text")]
        format: RenderFormat,
    },
    /// Check the axioms of a complex file
    Verify {
        #[arg(long)]
        complex: String,
    },
}

#[derive(Subcommand)]
enum HomflyCmd {
    Torus {
        n: i64,
        m: i64,
        #[arg(long, value_enum, default_value = "jones")]
        form: FormArg,
    },
}

#[derive(Subcommand)]
enum SuperCmd {
    Torus {
        n: i64,
        m: i64,
        #[arg(long)]
        unreduced: bool,
    },
    /// Thin knot superpolynomial from HOMFLY and S
    Thin {
        #[arg(long, allow_hyphen_values = true)]
        homfly: String,
        #[arg(long, allow_hyphen_values = true)]
        s: i64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FormArg {
    Jones,
    Product,
}

#[derive(Clone, Copy, ValueEnum)]
enum RenderFormat {
    Text,
    Svg,
}

enum Failure {
    Usage(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. }
            | Error::ParseLine { .. }
            | Error::Precondition(_)
            | Error::Io(_)
            | Error::Dataset(_) => Failure::Usage(e.to_string()),
            other => Failure::Check(other.to_string()),
        }
    }
}

type Out = Result<(String, bool), Failure>;

fn read_arg(arg: &str) -> Result<String, Failure> {
    if arg == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| Failure::Usage(format!("stdin: {e}")))?;
        Ok(s)
    } else {
        Ok(arg.to_string())
    }
}

fn read_file(path: &str) -> Result<String, Failure> {
    if path == "-" {
        read_arg("-")
    } else {
        std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{path}: {e}")))
    }
}

fn load_complex(path: &str) -> Result<DotComplex, Failure> {
    Ok(DotComplex::from_text(&read_file(path)?)?)
}

fn torus_super(n: i64, m: i64) -> Result<(TorusKnotId, Poly3), Failure> {
    let id = TorusKnotId::new(n, m)?;
    let p = match n {
        2 => super_t2((m - 1) / 2)?,
        3 => super_t3(m)?,
        _ => return Err(Failure::Usage("superpolynomials are available for n = 2 and n = 3".into())),
    };
    Ok((id, p))
}

fn run(cmd: Cmd) -> Out {
    let ok = |s: String| Ok((s, true));
    match cmd {
        Cmd::Homfly { what: HomflyCmd::Torus { n, m, form } } => {
            let form = match form {
                FormArg::Jones => HomflyForm::Jones,
                FormArg::Product => HomflyForm::Product,
            };
            ok(format!("{}\n", homfly_torus(TorusKnotId::new(n, m)?, form)?))
        }
        Cmd::Super { what: SuperCmd::Torus { n, m, unreduced } } => {
            let (id, p) = torus_super(n, m)?;
            let p = if unreduced { unreduce(&p, id.s_invariant())? } else { p };
            ok(format!("{p}\n"))
        }
        Cmd::Super { what: SuperCmd::Thin { homfly, s } } => {
            let h: Poly3 = read_arg(&homfly)?.trim().parse()?;
            ok(format!("{}\n", thin_super(&h, s)?.superpoly))
        }
        Cmd::Reduce { torus, complex, n } => {
            if n < 0 {
                return Err(Failure::Usage("--n must be nonnegative".into()));
            }
            let p = match (torus, complex) {
                (Some(t), _) => {
                    let id = TorusKnotId::new(t[0], t[1])?;
                    match build_torus_complex(id) {
                        Ok(c) => c.homology(n)?.poincare,
                        Err(Error::ConstructionFailed(_)) if id.n == 3 && (n == 0 || n == 2) => {
                            t3_reduced(id.m, n)?
                        }
                        Err(e) => return Err(e.into()),
                    }
                }
                (None, Some(f)) => load_complex(&f)?.homology(n)?.poincare,
                (None, None) => return Err(Failure::Usage("give --torus or --complex".into())),
            };
            ok(format!("{p}\n"))
        }
        Cmd::Stable { n, qmax, reduce } => {
            let s = match reduce.as_deref() {
                None => stable_super(n, qmax)?,
                Some("0") => stable_d0_homology(n, qmax)?,
                Some(_) if n <= 4 => stable_khr2(n, qmax)?,
                Some(_) => stable_khr2_generic(n, qmax)?,
            };
            ok(s.to_text())
        }
        Cmd::Check { dataset, only } => {
            if let Some(o) = &only {
                if !CHECK_NAMES.contains(&o.as_str()) {
                    return Err(Failure::Usage(format!("unknown check '{o}', expected one of {CHECK_NAMES:?}")));
                }
            }
            let d = load_dataset(&dataset)?;
            let lines = run_checks(&d, only.as_deref())?;
            let failures = lines.iter().filter(|l| !l.pass).count();
            let mut out: String = lines.iter().map(|l| format!("{l}\n")).collect();
            out.push_str(&format!("{} checks, {failures} failures\n", lines.len()));
            Ok((out, failures == 0))
        }
        Cmd::Render { complex, format } => {
            let c = load_complex(&complex)?;
            let f = match format {
                RenderFormat::Text => Format::Text,
                RenderFormat::Svg => Format::Svg,
            };
            ok(render(&c, f))
        }
        Cmd::Verify { complex } => {
            let c = load_complex(&complex)?;
            let r = c.verify();
            let mut out = format!("generators: {}\n", c.len());
            for v in &r.violations {
                out.push_str(&format!("violation: {v:?}\n"));
            }
            let spectrum: Vec<String> = r.delta_spectrum.iter().map(|(d, k)| format!("{d}:{k}")).collect();
            out.push_str(&format!("2delta spectrum: {}\n", spectrum.join(" ")));
            out.push_str(&format!("thin: {}\nsymmetric: {}\n", r.thin, r.symmetric));
            if r.ok() {
                match c.s_invariant() {
                    Ok(s) => out.push_str(&format!("S: {s}\n")),
                    Err(e) => out.push_str(&format!("S: unavailable ({e})\n")),
                }
            }
            out.push_str(if r.ok() { "OK\n" } else { "FAILED\n" });
            Ok((out, r.ok()))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.cmd) {
        Ok((out, pass)) => {
            print!("{out}");
            ExitCode::from(if pass { 0 } else { 1 })
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Check(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
