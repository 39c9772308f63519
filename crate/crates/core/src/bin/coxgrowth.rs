use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use coxeter_growth::analysis::{self, check, oracle_report};
use coxeter_growth::automata::Automaton;
use coxeter_growth::config::{AnalysisConfig, OutputFormat, CONFIG_ENV};
use coxeter_growth::diagram::{parse_diagram, ParsedDiagram};
use coxeter_growth::error::{Error, Result};
use coxeter_growth::roots::small_roots;

#[derive(Parser)]
#[command(name = "coxgrowth", version, about = "Growth rates of Coxeter groups via small-root automata")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a diagram and report connectivity, infinity-spanning and labelling.
    Check(Common),
    /// List the small roots with exact and decimal coordinates.
    Roots(Common),
    /// Build an automaton; prints a summary, a JSON dump, or DOT with --dot.
    Automaton {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = Kind::Geo)]
        kind: Kind,
    },
    /// Word and geodesic counts up to length K.
    Growth(Common),
    /// Full analysis: counts, growth rates, Perron certificates, delta report.
    Analyze(Common),
    /// Brute-force element and geodesic counts.
    Oracle(Common),
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Geo,
    Shortlex,
}

#[derive(Args)]
struct Common {
    /// Diagram file.
    path: PathBuf,
    /// Counting horizon (oracle depth for the `oracle` command).
    #[arg(long)]
    k: Option<usize>,
    /// Width target for growth-rate enclosures, in (0, 1).
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long, value_parser = ["text", "json", "csv"])]
    format: Option<String>,
    /// Cross-check the automata against brute-force enumeration.
    #[arg(long)]
    oracle: bool,
    /// Emit Graphviz DOT (diagram for `check`, automaton for `automaton`).
    #[arg(long)]
    dot: bool,
    /// Characteristic-polynomial corroboration and rational growth series.
    #[arg(long)]
    corroborate: bool,
    #[arg(long)]
    cap_states: Option<usize>,
    #[arg(long)]
    cap_sigma: Option<usize>,
    #[arg(long)]
    cap_degree: Option<usize>,
    /// TOML configuration file (defaults to the file named by the environment variable).
    #[arg(long, env = CONFIG_ENV)]
    config: Option<PathBuf>,
}

impl Common {
    fn config(&self) -> Result<AnalysisConfig> {
        let mut cfg = match &self.config {
            Some(p) if !p.as_os_str().is_empty() => AnalysisConfig::load(p)?,
            _ => AnalysisConfig::default(),
        };
        cfg.input = Some(self.path.clone());
        if let Some(k) = self.k {
            cfg.k = k;
        }
        if let Some(t) = self.tol {
            cfg.tol = t;
        }
        if let Some(f) = &self.format {
            cfg.format = f.parse()?;
        }
        cfg.oracle |= self.oracle;
        cfg.dot |= self.dot;
        cfg.corroborate |= self.corroborate;
        if let Some(c) = self.cap_states {
            cfg.caps.states = c;
        }
        if let Some(c) = self.cap_sigma {
            cfg.caps.sigma = c;
        }
        if let Some(c) = self.cap_degree {
            cfg.caps.degree = c;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    fn diagram(&self) -> Result<ParsedDiagram> {
        let text = std::fs::read_to_string(&self.path)
            .map_err(|e| Error::Io(format!("{}: {e}", self.path.display())))?;
        parse_diagram(&text)
    }
}

fn json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable report") + "\n"
}

fn automaton_text(a: &Automaton) -> String {
    let mut s = format!("{} automaton: {} states\n", a.kind(), a.state_count());
    for q in 0..a.state_count() {
        let set: Vec<String> = a.state(q).iter().map(|r| format!("r{r}")).collect();
        let moves: Vec<String> = (0..a.alphabet())
            .map(|l| match a.transition(q, l) {
                Some(t) => format!("s{}->q{t}", l + 1),
                None => format!("s{}->fail", l + 1),
            })
            .collect();
        s.push_str(&format!("q{q} {{{}}}: {}\n", set.join(","), moves.join(" ")));
    }
    s
}

fn run(cli: Cli) -> Result<String> {
    match cli.command {
        Command::Check(c) => {
            let cfg = c.config()?;
            let parsed = c.diagram()?;
            if cfg.dot {
                return Ok(parsed.to_dot());
            }
            let r = check(&parsed)?;
            Ok(match cfg.format {
                OutputFormat::Json => json(&r),
                _ => r.to_text(),
            })
        }
        Command::Roots(c) => {
            let cfg = c.config()?;
            let d = c.diagram()?.to_coxeter();
            d.require_connected()?;
            let r = small_roots(&d, cfg.caps.degree, cfg.caps.sigma)?.report(cfg.digits);
            Ok(match cfg.format {
                OutputFormat::Json => json(&r),
                _ => r.to_text(),
            })
        }
        Command::Automaton { common, kind } => {
            let cfg = common.config()?;
            let d = common.diagram()?.to_coxeter();
            let p = analysis::Pipeline::new(&d, &cfg)?;
            let a = match kind {
                Kind::Geo => &p.geo,
                Kind::Shortlex => &p.shortlex,
            };
            if cfg.dot {
                return a.export_dot();
            }
            Ok(match cfg.format {
                OutputFormat::Json => json(&a.dump()),
                _ => automaton_text(a),
            })
        }
        Command::Growth(c) => {
            let cfg = c.config()?;
            let d = c.diagram()?.to_coxeter();
            let r = analysis::counts(&d, &cfg)?;
            Ok(match cfg.format {
                OutputFormat::Json => json(&r),
                OutputFormat::Csv => r.to_csv(),
                OutputFormat::Text => r.to_text(),
            })
        }
        Command::Analyze(c) => {
            let cfg = c.config()?;
            let d = c.diagram()?.to_coxeter();
            let r = analysis::analyze(&d, &cfg)?;
            Ok(match cfg.format {
                OutputFormat::Json => r.to_json(),
                OutputFormat::Csv => r.to_csv(),
                OutputFormat::Text => r.to_text(),
            })
        }
        Command::Oracle(c) => {
            let cfg = c.config()?;
            let d = c.diagram()?.to_coxeter();
            let depth = c.k.unwrap_or(cfg.oracle_depth);
            let r = oracle_report(&d, depth, &cfg)?;
            Ok(match cfg.format {
                OutputFormat::Json => json(&r),
                OutputFormat::Csv => r.to_csv(),
                OutputFormat::Text => r.to_text(),
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
