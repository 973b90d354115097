use std::io::{Read, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use orbclass::{run, run_command, CliError, Command, JobSpec, OutputFormat};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "orbclass", version, about = "Equivariant classes of orbit closures")]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Args, Clone)]
struct Io {
    /// JSON payload file, or `-` for stdin.
    #[arg(long)]
    input: Option<String>,
    #[arg(long, conflicts_with = "text")]
    json: bool,
    #[arg(long)]
    text: bool,
}

impl Io {
    fn format(&self) -> Option<OutputFormat> {
        if self.text {
            Some(OutputFormat::Text)
        } else if self.json {
            Some(OutputFormat::Json)
        } else {
            None
        }
    }
}

#[derive(Subcommand)]
enum Sub {
    /// GL(2) orbit class from a representation and orbit datum.
    Class(Io),
    /// Orbit degree of Weierstrass data of an elliptic fibration.
    Elliptic {
        #[command(flatten)]
        io: Io,
        #[arg(long, conflicts_with = "input")]
        n: Option<i64>,
        /// `ord_A,ord_B` of a marked fiber; repeatable.
        #[arg(long = "fiber", value_name = "A,B")]
        fibers: Vec<String>,
        /// Kodaira type realized by its minimal witness; repeatable.
        #[arg(long = "type", value_name = "TYPE")]
        types: Vec<String>,
    },
    /// Orbit class and degree for rational maps of the projective line.
    Ratmap {
        #[command(flatten)]
        io: Io,
        #[arg(long, conflicts_with = "input")]
        n: Option<i64>,
        /// Fixed-point multiplicities, e.g. `1,1,2`.
        #[arg(long, value_delimiter = ',')]
        profile: Option<Vec<u32>>,
        /// `r:j` per fixed point, e.g. `0:1,1:2`.
        #[arg(long, value_delimiter = ',')]
        orders: Option<Vec<String>>,
        /// Coefficients of F, from `x^n` down to `y^n`.
        #[arg(long = "F", value_delimiter = ',', allow_hyphen_values = true)]
        f: Option<Vec<String>>,
        /// Coefficients of G, from `x^n` down to `y^n`.
        #[arg(long = "G", value_delimiter = ',', allow_hyphen_values = true)]
        g: Option<Vec<String>>,
        /// Fixed points `p:q` or `p:q^m`, e.g. `1:0,0:1,1:1`.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        roots: Option<Vec<String>>,
    },
    /// Torus orbit class from a list of characters.
    Torus(Io),
    /// Newton polygon data for weighted points or per point of a GL(2) datum.
    Polygon(Io),
    /// Consistency checks for a class computation.
    Verify {
        #[command(flatten)]
        io: Io,
        /// Build the engine with the alternative F-term (negative control).
        #[arg(long)]
        as_printed: bool,
    },
    /// A job file `{"command", "payload", "output"}`.
    Job(Io),
}

impl Sub {
    fn io(&self) -> &Io {
        match self {
            Sub::Class(io) | Sub::Torus(io) | Sub::Polygon(io) | Sub::Job(io) => io,
            Sub::Elliptic { io, .. } | Sub::Ratmap { io, .. } | Sub::Verify { io, .. } => io,
        }
    }
}

fn read_payload(input: Option<&str>) -> Result<Value, CliError> {
    let text = match input {
        None | Some("-") => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s)?;
            s
        }
        Some(path) => std::fs::read_to_string(path)?,
    };
    serde_json::from_str(&text).map_err(|e| CliError::schema("<input>", e.to_string()))
}

fn pair(s: &str, sep: char) -> Result<(String, String), CliError> {
    s.split_once(sep)
        .map(|(a, b)| (a.trim().to_string(), b.trim().to_string()))
        .ok_or_else(|| CliError::Validation(format!("expected `a{}b`, got {:?}", sep, s)))
}

fn number(s: &str) -> Result<u32, CliError> {
    s.parse().map_err(|_| CliError::Validation(format!("{:?} is not a non-negative integer", s)))
}

fn elliptic_payload(n: Option<i64>, fibers: &[String], types: &[String]) -> Result<Value, CliError> {
    let n = n.ok_or_else(|| CliError::Validation(String::from("--n is required")))?;
    let fibers = fibers
        .iter()
        .map(|f| {
            let (a, b) = pair(f, ',')?;
            Ok(json!({"ord_a": number(&a)?, "ord_b": number(&b)?}))
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(json!({"n": n, "fibers": fibers, "types": types}))
}

fn ratmap_payload(
    n: Option<i64>,
    profile: Option<Vec<u32>>,
    orders: Option<Vec<String>>,
    f: Option<Vec<String>>,
    g: Option<Vec<String>>,
    roots: Option<Vec<String>>,
) -> Result<Value, CliError> {
    let n = n.ok_or_else(|| CliError::Validation(String::from("--n is required")))?;
    let mut p = json!({"n": n});
    if let Some(pr) = profile {
        p["profile"] = json!(pr);
    }
    if let Some(o) = orders {
        let o = o
            .iter()
            .map(|e| {
                let (r, j) = pair(e, ':')?;
                Ok(json!([number(&r)?, number(&j)?]))
            })
            .collect::<Result<Vec<_>, CliError>>()?;
        p["orders"] = json!(o);
    }
    if let Some(f) = f {
        p["F"] = json!(f);
    }
    if let Some(g) = g {
        p["G"] = json!(g);
    }
    if let Some(r) = roots {
        let r = r
            .iter()
            .map(|e| {
                let (pt, mult) = match e.split_once('^') {
                    Some((pt, m)) => (pt, number(m)?),
                    None => (e.as_str(), 1),
                };
                let (a, b) = pair(pt, ':')?;
                Ok(json!({"root": [a, b], "mult": mult}))
            })
            .collect::<Result<Vec<_>, CliError>>()?;
        p["roots"] = json!(r);
    }
    Ok(p)
}

fn execute(cli: Cli) -> Result<(String, OutputFormat), (CliError, OutputFormat)> {
    let mut format = cli.command.io().format().unwrap_or(OutputFormat::Json);
    let result = (|| {
        let (command, payload) = match cli.command {
            Sub::Class(io) => (Command::Class, read_payload(io.input.as_deref())?),
            Sub::Torus(io) => (Command::Torus, read_payload(io.input.as_deref())?),
            Sub::Polygon(io) => (Command::Polygon, read_payload(io.input.as_deref())?),
            Sub::Verify { io, as_printed } => {
                let mut p = read_payload(io.input.as_deref())?;
                if as_printed {
                    if let Some(m) = p.as_object_mut() {
                        m.insert(String::from("f_variant"), json!("as_printed"));
                    }
                }
                (Command::Verify, p)
            }
            Sub::Elliptic { io, n, fibers, types } => {
                let p = if io.input.is_some() {
                    read_payload(io.input.as_deref())?
                } else {
                    elliptic_payload(n, &fibers, &types)?
                };
                (Command::Elliptic, p)
            }
            Sub::Ratmap { io, n, profile, orders, f, g, roots } => {
                let p = if io.input.is_some() {
                    read_payload(io.input.as_deref())?
                } else {
                    ratmap_payload(n, profile, orders, f, g, roots)?
                };
                (Command::Ratmap, p)
            }
            Sub::Job(io) => {
                let job: JobSpec = orbclass::schema::parse(read_payload(io.input.as_deref())?)?;
                format = io.format().unwrap_or(job.output);
                let report = run(&job)?;
                return Ok(report.render(format));
            }
        };
        Ok(run_command(command, payload)?.render(format))
    })();
    result.map(|s| (s, format)).map_err(|e| (e, format))
}

fn main() -> ExitCode {
    match execute(Cli::parse()) {
        Ok((out, _)) => {
            let mut stdout = std::io::stdout().lock();
            match writeln!(stdout, "{}", out.trim_end()) {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
                Err(e) => {
                    eprintln!("error (io): {}", e);
                    ExitCode::from(1)
                }
            }
        }
        Err((e, format)) => {
            match format {
                OutputFormat::Json => {
                    let mut err = json!({"kind": e.kind(), "message": e.to_string()});
                    if let CliError::Schema { path, .. } = &e {
                        err["path"] = json!(path);
                    }
                    let body = json!({"error": err, "exit_code": e.exit_code()});
                    eprintln!("{}", serde_json::to_string_pretty(&body).expect("serializes"));
                }
                OutputFormat::Text => eprintln!("error ({}): {}", e.kind(), e),
            }
            ExitCode::from(e.exit_code())
        }
    }
}
