//! Command-line front end. [`run`] takes the argument list and output streams
//! so it can be driven in-process by tests; `main.rs` only forwards to it.
//!
//! Exit codes: 0 ok, 1 check failure, 2 invalid input, 3 genericity failure,
//! 4 consistency mismatch, 5 invariant violation of a user-supplied point.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::json;

use crate::correspondence::{full_correspondence, CorrespondenceTable, SamplingConfig};
use crate::error::Error;
use crate::exotic::{
    classify_exotic_point, dim_exotic_orbit, enumerate_pi2k, mu_of, render_striped_diagram, Ambient, ExoticOrbitLabel,
    ExoticPoint,
};
use crate::linalg::DEFAULT_BOUND;
use crate::sweep::{run_sweep, HEALTHY_SHARE};
use crate::tableaux::{classify_flag_pair, enumerate_theta2k, render_tableau, FlagPair, MarkedTableau};
use crate::RenderFormat;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INVALID_INPUT: i32 = 2;
pub const EXIT_GENERICITY: i32 = 3;
pub const EXIT_CONSISTENCY: i32 = 4;
pub const EXIT_INVARIANT: i32 = 5;

#[derive(Parser, Debug)]
#[command(name = "exotic-orbits", version, about = "K-orbits on the exotic Grassmannian and exotic nilpotent cone")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
    Latex,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Space {
    /// exotic nilpotent cone, labels ((r,s),mu)
    Cone,
    /// Gr_k(V) x P(V1), marked tableaux
    Grassmannian,
}

#[derive(clap::Args, Debug, Clone, Copy)]
pub struct AmbientArgs {
    #[arg(short = 'p')]
    pub p: usize,
    #[arg(short = 'q')]
    pub q: usize,
    #[arg(short = 'k')]
    pub k: usize,
}

#[derive(clap::Args, Debug, Clone, Copy)]
pub struct SamplingArgs {
    #[arg(long, env = "EXOTIC_ORBITS_SEED", default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = crate::correspondence::DEFAULT_SAMPLES)]
    pub samples: usize,
    #[arg(long, default_value_t = DEFAULT_BOUND)]
    pub bound: i64,
}

impl SamplingArgs {
    fn config(&self) -> SamplingConfig {
        SamplingConfig { samples: self.samples, bound: self.bound }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List the orbits of one side
    Enumerate {
        #[arg(value_enum)]
        space: Space,
        #[command(flatten)]
        ambient: AmbientArgs,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
    /// Compute the map from tableaux to exotic orbits
    Correspond {
        #[command(flatten)]
        ambient: AmbientArgs,
        #[command(flatten)]
        sampling: SamplingArgs,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
    /// Classify a point given as tagged JSON ("kind": "exotic_point" | "flag_pair")
    Classify {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
    /// Run every consistency check over all ambients with n <= max-n
    Check {
        #[arg(long)]
        max_n: usize,
        #[command(flatten)]
        sampling: SamplingArgs,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
}

/// Input of `classify`.
#[derive(Deserialize, Debug)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ClassifyInput {
    ExoticPoint(ExoticPoint),
    FlagPair(FlagPair),
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidAmbient(_)
        | Error::Parse(_)
        | Error::InvalidLabel(_)
        | Error::InvalidTableau(_)
        | Error::InvalidPartition(_)
        | Error::Precondition(_) => EXIT_INVALID_INPUT,
        Error::NoMajority(_) | Error::BudgetExhausted(_) | Error::EmptyStratum(_) => EXIT_GENERICITY,
        Error::Consistency(_) => EXIT_CONSISTENCY,
        Error::InvariantViolation(_) | Error::DimensionMismatch(_) | Error::NotSquare { .. } | Error::NotNilpotent => {
            EXIT_INVARIANT
        }
    }
}

pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID_INPUT } else { EXIT_OK };
            let rendered = e.render().to_string();
            if code == EXIT_OK {
                let _ = write!(out, "{rendered}");
            } else {
                let _ = write!(err, "{rendered}");
            }
            return code;
        }
    };
    let result = match cli.command {
        Command::Enumerate { space, ambient, format } => cmd_enumerate(space, ambient, format, out),
        Command::Correspond { ambient, sampling, format } => cmd_correspond(ambient, sampling, format, out, err),
        Command::Classify { path, format } => cmd_classify(&path, format, out),
        Command::Check { max_n, sampling, format } => cmd_check(max_n, sampling, format, out, err),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

type CmdResult = crate::Result<i32>;

fn io(e: std::io::Error) -> Error {
    Error::Parse(format!("write failed: {e}"))
}

fn ambient_of(a: AmbientArgs) -> crate::Result<Ambient> {
    Ambient::new(a.p, a.q, a.k)
}

fn fmt_mu(mu: &[i32]) -> String {
    let parts: Vec<String> = mu.iter().map(i32::to_string).collect();
    format!("({})", parts.join(","))
}

fn one_line(lab: &ExoticOrbitLabel) -> String {
    render_striped_diagram(lab, RenderFormat::Ascii).replace('\n', " / ")
}

fn latex_type(lab: &ExoticOrbitLabel) -> String {
    use crate::exotic::RefinedType::*;
    match lab.refined() {
        I => "\\mathrm{(I)}",
        II0 => "\\mathrm{(II)}^0",
        IIstar => "\\mathrm{(II)}^*",
        III => "\\mathrm{(III)}",
    }
    .to_string()
}

const LATEX_PREAMBLE: &str = "\\documentclass{article}\n\\usepackage{amsmath}\n\\usepackage{youngtab}\n\\newcommand{\\thickline}{\\hspace*{-.1pt}\\rule[-2pt]{1.4pt}{2.55ex}\\hspace*{.8pt}}\n\\begin{document}\n";
const LATEX_END: &str = "\\end{document}\n";

pub fn cmd_enumerate(space: Space, a: AmbientArgs, format: OutputFormat, out: &mut dyn Write) -> CmdResult {
    let amb = ambient_of(a)?;
    let text = match space {
        Space::Cone => enumerate_cone(amb, format),
        Space::Grassmannian => enumerate_grassmannian(amb, format),
    };
    out.write_all(text.as_bytes()).map_err(io)?;
    Ok(EXIT_OK)
}

fn enumerate_cone(amb: Ambient, format: OutputFormat) -> String {
    let labels = enumerate_pi2k(amb);
    match format {
        OutputFormat::Text => {
            let mut s = format!("# {amb}: {} exotic orbits\n", labels.len());
            for l in &labels {
                s += &format!("{l}\tmu={}\tdim={}\t{}\n", fmt_mu(&mu_of(l)), dim_exotic_orbit(l), one_line(l));
            }
            s
        }
        OutputFormat::Json => {
            let orbits: Vec<_> =
                labels.iter().map(|l| json!({"label": l, "mu": mu_of(l), "dim": dim_exotic_orbit(l)})).collect();
            pretty(&json!({"ambient": amb, "orbits": orbits}))
        }
        OutputFormat::Csv => {
            let mut s = "p,q,k,r,s,type,mu,dim\n".to_string();
            for l in &labels {
                let mu: Vec<String> = mu_of(l).iter().map(i32::to_string).collect();
                s += &format!("{},{},{},{},{},{},{},{}\n", amb.p, amb.q, amb.k, l.r, l.s, l.refined(), mu.join(" "), dim_exotic_orbit(l));
            }
            s
        }
        OutputFormat::Latex => {
            let items: Vec<String> = labels
                .iter()
                .map(|l| format!("{}\\;\\;{{}}^{{{}}}", render_striped_diagram(l, RenderFormat::Latex), latex_type(l)))
                .collect();
            format!("{LATEX_PREAMBLE}\\[\n{}\n\\]\n{LATEX_END}", items.join(",\\quad\n"))
        }
    }
}

fn enumerate_grassmannian(amb: Ambient, format: OutputFormat) -> String {
    let tableaux = enumerate_theta2k(amb);
    match format {
        OutputFormat::Text => {
            let mut s = format!("# {amb}: {} tableaux\n", tableaux.len());
            for t in &tableaux {
                s += &format!("{t}\tn1={} n2={} ell={}\n", t.n1, t.n2, t.ell);
            }
            s
        }
        OutputFormat::Json => pretty(&json!({"ambient": amb, "tableaux": tableaux})),
        OutputFormat::Csv => {
            let mut s = "p,q,k,n1,n2,ell,mark\n".to_string();
            for t in &tableaux {
                s += &format!("{},{},{},{},{},{},{}\n", amb.p, amb.q, amb.k, t.n1, t.n2, t.ell, t.mark);
            }
            s
        }
        OutputFormat::Latex => {
            let items: Vec<String> = tableaux.iter().map(|t| render_tableau(t, RenderFormat::Latex)).collect();
            format!("{LATEX_PREAMBLE}\\[\n{}\n\\]\n{LATEX_END}", items.join(",\\ \n"))
        }
    }
}

fn pretty(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

pub fn cmd_correspond(a: AmbientArgs, sampling: SamplingArgs, format: OutputFormat, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let amb = ambient_of(a)?;
    let table = full_correspondence(amb, sampling.seed, sampling.config())?;
    crate::correspondence::check_bijectivity_criterion(amb, &table)?;
    if table.stats.min_share() < HEALTHY_SHARE {
        let _ = writeln!(
            err,
            "warning: weakest majority took {:.0}% of samples; consider raising --bound",
            100.0 * table.stats.min_share()
        );
    }
    out.write_all(render_table(&table, &sampling, format).as_bytes()).map_err(io)?;
    Ok(EXIT_OK)
}

/// Renders a table in the requested format.
pub fn render_table(table: &CorrespondenceTable, sampling: &SamplingArgs, format: OutputFormat) -> String {
    let amb = table.ambient;
    let fibers = table.fibers();
    match format {
        OutputFormat::Text => {
            let mut s = format!(
                "# correspondence for {amb}, seed {}, {} samples, bound {}\n",
                sampling.seed, sampling.samples, sampling.bound
            );
            for (lab, fiber) in &fibers {
                let pre: Vec<String> = fiber.iter().map(|e| format!("{} [lambda {}]", e.tableau, e.lambda)).collect();
                s += &format!("{lab}\t{}\t<- {}\n", one_line(lab), pre.join(", "));
            }
            let iistar = fibers.iter().filter(|(_, f)| f.len() == 2).count();
            s += &format!(
                "# |Theta| = {}, |Pi| = {}, two-element fibers = {}, bijective = {}\n",
                table.entries.len(),
                fibers.len(),
                iistar,
                table.bijective
            );
            s
        }
        OutputFormat::Json => pretty(&serde_json::to_value(table).expect("table serializes")),
        OutputFormat::Csv => {
            let mut s = "p,q,k,n1,n2,ell,mark,r,s,type,lambda\n".to_string();
            for e in &table.entries {
                let t = &e.tableau;
                let lam: Vec<String> = e.lambda.parts().iter().map(usize::to_string).collect();
                s += &format!(
                    "{},{},{},{},{},{},{},{},{},{},{}\n",
                    amb.p,
                    amb.q,
                    amb.k,
                    t.n1,
                    t.n2,
                    t.ell,
                    t.mark,
                    e.label.r,
                    e.label.s,
                    e.label.refined(),
                    lam.join(" ")
                );
            }
            s
        }
        OutputFormat::Latex => {
            let cols = "c".repeat(fibers.len());
            let diagrams: Vec<String> = fibers
                .iter()
                .map(|(l, _)| format!("{}\\;{{}}^{{{}}}", render_striped_diagram(l, RenderFormat::Latex), latex_type(l)))
                .collect();
            let preimages: Vec<String> = fibers
                .iter()
                .map(|(_, f)| f.iter().map(|e| render_tableau(&e.tableau, RenderFormat::Latex)).collect::<Vec<_>>().join(",\\ "))
                .collect();
            format!(
                "{LATEX_PREAMBLE}% correspondence for {amb}, seed {}\n\\[\n\\begin{{array}}{{c|{cols}}}\n\\mathfrak{{E}}/K & {} \\\\\n\\hline\n\\phi^{{-1}} & {} \\\\\n\\end{{array}}\n\\]\n{LATEX_END}",
                sampling.seed,
                diagrams.join(" &\n"),
                preimages.join(" &\n")
            )
        }
    }
}

pub fn cmd_classify(path: &std::path::Path, format: OutputFormat, out: &mut dyn Write) -> CmdResult {
    let raw = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    let input: ClassifyInput = serde_json::from_str(&raw)?;
    let text = match input {
        ClassifyInput::ExoticPoint(pt) => {
            let l = classify_exotic_point(&pt)?;
            match format {
                OutputFormat::Text => format!("{l}\tmu={}\tdim={}\t{}\n", fmt_mu(&mu_of(&l)), dim_exotic_orbit(&l), one_line(&l)),
                OutputFormat::Json => pretty(&serde_json::to_value(l)?),
                OutputFormat::Csv => format!("p,q,k,r,s,type\n{},{},{},{},{},{}\n", l.ambient.p, l.ambient.q, l.ambient.k, l.r, l.s, l.refined()),
                OutputFormat::Latex => format!("{}\n", render_striped_diagram(&l, RenderFormat::Latex)),
            }
        }
        ClassifyInput::FlagPair(fp) => {
            let t: MarkedTableau = classify_flag_pair(&fp)?;
            match format {
                OutputFormat::Text => format!("{t}\tn1={} n2={} ell={}\n", t.n1, t.n2, t.ell),
                OutputFormat::Json => pretty(&serde_json::to_value(t)?),
                OutputFormat::Csv => format!(
                    "p,q,k,n1,n2,ell,mark\n{},{},{},{},{},{},{}\n",
                    t.ambient.p, t.ambient.q, t.ambient.k, t.n1, t.n2, t.ell, t.mark
                ),
                OutputFormat::Latex => format!("{}\n", render_tableau(&t, RenderFormat::Latex)),
            }
        }
    };
    out.write_all(text.as_bytes()).map_err(io)?;
    Ok(EXIT_OK)
}

pub fn cmd_check(max_n: usize, sampling: SamplingArgs, format: OutputFormat, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    if max_n < 2 {
        return Err(Error::Precondition(format!("--max-n must be at least 2, got {max_n}")));
    }
    let stream = format == OutputFormat::Text;
    if stream {
        writeln!(out, "# check max_n={max_n} seed={} samples={} bound={}", sampling.seed, sampling.samples, sampling.bound)
            .map_err(io)?;
    }
    let mut write_err = None;
    let report = run_sweep(max_n, sampling.seed, sampling.config(), |r| {
        if stream && write_err.is_none() {
            if let Err(e) = writeln!(out, "{}", r.render_text()) {
                write_err = Some(e);
            }
        }
    })?;
    if let Some(e) = write_err {
        return Err(io(e));
    }
    match format {
        OutputFormat::Text => writeln!(out, "{}", report.summary_line()).map_err(io)?,
        OutputFormat::Json => out.write_all(pretty(&serde_json::to_value(&report)?).as_bytes()).map_err(io)?,
        OutputFormat::Csv => {
            let mut s = "p,q,k,theta,pi,iistar,bijective,passed\n".to_string();
            for r in &report.ambients {
                let a = r.ambient;
                let bij = r.bijective.map_or(String::new(), |b| b.to_string());
                s += &format!("{},{},{},{},{},{},{},{}\n", a.p, a.q, a.k, r.theta, r.pi, r.iistar, bij, r.passed());
            }
            out.write_all(s.as_bytes()).map_err(io)?;
        }
        OutputFormat::Latex => return Err(Error::Precondition("check has no LaTeX output".into())),
    }
    let _ = writeln!(err, "check finished in {:.1} s", report.elapsed.as_secs_f64());
    if let Some((amb, c)) = report.first_failure() {
        let _ = writeln!(err, "first failing check: {amb} {}: {}", c.name, c.detail.as_deref().unwrap_or(""));
        return Ok(EXIT_CHECK_FAILED);
    }
    Ok(EXIT_OK)
}
