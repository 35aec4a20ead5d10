use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use vknot::analysis::{certify_parallel, surface_bracket, Certificate};
use vknot::bracket::{f_polynomial_parallel, jones_parallel, BracketValue, Convention};
use vknot::diagram::{catalog, catalog_description, catalog_names, p_family, VirtualLinkDiagram};
use vknot::surface::build_carter_surface;
use vknot::tangle::{
    double_virtualization_report, expand_tangle, tangle_catalog, virtualization_report, Tangle,
};

const DEFAULT_MAX_CROSSINGS: usize = 20;

#[derive(Parser, Debug)]
#[command(name = "vknot", version, about = "Bracket invariants and non-classicality certificates for virtual knots")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Worker threads for state sums.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..=256))]
    parallel: u64,

    /// Bracket normalization.
    #[arg(long, global = true, value_enum, default_value_t = ConventionArg::Reduced)]
    convention: ConventionArg,

    /// Largest number of classical crossings accepted by state sums.
    #[arg(long, global = true, env = "VKNOT_MAX_CROSSINGS", default_value_t = DEFAULT_MAX_CROSSINGS)]
    max_crossings: usize,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum ConventionArg {
    Reduced,
    Unreduced,
}

impl From<ConventionArg> for Convention {
    fn from(c: ConventionArg) -> Self {
        match c {
            ConventionArg::Reduced => Convention::Reduced,
            ConventionArg::Unreduced => Convention::Unreduced,
        }
    }
}

/// Exactly one of a code, a file or a catalog name.
#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct Input {
    /// Signed Gauss code, e.g. "O1+U2+O3+U1+O2+U3+".
    code: Option<String>,

    /// File holding a signed Gauss code.
    #[arg(long)]
    file: Option<PathBuf>,

    /// Catalog entry (see `vknot catalog list`).
    #[arg(long)]
    catalog: Option<String>,
}

#[derive(Args, Debug)]
struct DiagramArgs {
    #[command(flatten)]
    input: Input,

    /// Family member for `--catalog p_family`.
    #[arg(long)]
    n: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Kauffman bracket.
    Bracket(DiagramArgs),
    /// Writhe-normalized bracket.
    Fpoly(DiagramArgs),
    /// Jones polynomial in t.
    Jones(DiagramArgs),
    /// Genus of the Carter surface.
    Genus(DiagramArgs),
    /// Surface bracket grouped by homology classes.
    SurfaceBracket(DiagramArgs),
    /// Non-classicality certificate.
    Certify(DiagramArgs),
    /// Temperley-Lieb expansion of a classical tangle.
    TangleExpand(TangleArgs),
    /// Virtualize one crossing and report alpha, beta and the verdict.
    VirtualizeReport {
        #[command(flatten)]
        diagram: DiagramArgs,
        #[arg(long)]
        crossing: u32,
    },
    /// Virtualize two crossings and report the four-state expansion.
    DoubleVirtualizeReport {
        #[command(flatten)]
        diagram: DiagramArgs,
        #[arg(long, num_args = 2, required = true)]
        crossing: Vec<u32>,
        /// Complementary tangle, as a code or a tangle catalog name.
        #[arg(long)]
        tangle: Option<String>,
    },
    /// Catalog of named diagrams.
    #[command(subcommand)]
    Catalog(CatalogCommand),
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct TangleInput {
    /// Tangle code, e.g. "B1 O1+ B3; B2 U1+ B4".
    code: Option<String>,
    #[arg(long)]
    file: Option<PathBuf>,
    /// Named tangle: crossing, identity2, tprime.
    #[arg(long)]
    catalog: Option<String>,
}

#[derive(Args, Debug)]
struct TangleArgs {
    #[command(flatten)]
    input: TangleInput,
}

#[derive(Subcommand, Debug)]
enum CatalogCommand {
    List,
    Show {
        name: String,
        #[arg(long)]
        n: Option<usize>,
    },
}

/// Failure reported on stderr with exit code 2.
struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

struct Output {
    text: String,
    json: Value,
}

fn read_source(code: &Option<String>, file: &Option<PathBuf>) -> Result<Option<String>, Failure> {
    if let Some(c) = code {
        return Ok(Some(c.clone()));
    }
    match file {
        Some(p) => std::fs::read_to_string(p)
            .map(|s| Some(s.trim().to_string()))
            .map_err(|e| Failure(format!("cannot read {}: {e}", p.display()))),
        None => Ok(None),
    }
}

fn named_diagram(name: &str, n: Option<usize>) -> Result<VirtualLinkDiagram, Failure> {
    if name == "p_family" {
        let n = n.ok_or_else(|| Failure("--catalog p_family needs --n".into()))?;
        return Ok(p_family(n));
    }
    if n.is_some() {
        return Err(Failure(format!("--n applies only to p_family, not '{name}'")));
    }
    Ok(catalog(name)?)
}

fn load_diagram(args: &DiagramArgs) -> Result<VirtualLinkDiagram, Failure> {
    if let Some(name) = &args.input.catalog {
        return named_diagram(name, args.n);
    }
    if args.n.is_some() {
        return Err(Failure("--n needs --catalog p_family".into()));
    }
    let text = read_source(&args.input.code, &args.input.file)?.expect("clap enforces one input");
    Ok(VirtualLinkDiagram::parse(&text)?)
}

fn load_tangle(input: &TangleInput) -> Result<Tangle, Failure> {
    if let Some(name) = &input.catalog {
        return Ok(tangle_catalog(name)?);
    }
    let text = read_source(&input.code, &input.file)?.expect("clap enforces one input");
    Ok(Tangle::parse(&text)?)
}

fn check_size(n: usize, max: usize) -> Result<(), Failure> {
    if n > max {
        return Err(Failure(format!(
            "diagram has {n} classical crossings; the limit is {max} (set VKNOT_MAX_CROSSINGS to raise it)"
        )));
    }
    Ok(())
}

fn certificate_text(c: &Certificate) -> String {
    let mut s = format!("verdict: {}\ngenus: {}\n", c.verdict, c.genus);
    for cr in &c.criteria {
        let _ = writeln!(s, "criterion {}: {}", cr.name, if cr.satisfied { "satisfied" } else { "not satisfied" });
    }
    s
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    let parallel = cli.parallel as usize;
    let diagram = |args: &DiagramArgs| -> Result<VirtualLinkDiagram, Failure> {
        let d = load_diagram(args)?;
        check_size(d.num_crossings(), cli.max_crossings)?;
        Ok(d)
    };
    let out = match &cli.command {
        Command::Bracket(args) => {
            let b = BracketValue::of(&diagram(args)?, cli.convention.into(), parallel);
            Output {
                text: b.value.to_string(),
                json: serde_json::to_value(&b.value)?,
            }
        }
        Command::Fpoly(args) => {
            let f = f_polynomial_parallel(&diagram(args)?, parallel);
            Output {
                text: f.to_string(),
                json: serde_json::to_value(&f)?,
            }
        }
        Command::Jones(args) => {
            let v = jones_parallel(&diagram(args)?, parallel);
            let json = match v.in_t() {
                Some(t) => serde_json::to_value(&t)?,
                None => json!({ "in_a": v.in_a }),
            };
            Output { text: v.render(), json }
        }
        Command::Genus(args) => {
            let g = build_carter_surface(&diagram(args)?).genus();
            Output {
                text: g.to_string(),
                json: json!(g),
            }
        }
        Command::SurfaceBracket(args) => {
            let rep = build_carter_surface(&diagram(args)?);
            let sb = surface_bracket(&rep, parallel);
            let mut text = format!("genus: {}\n", sb.genus);
            for (k, v) in &sb.terms {
                let classes: Vec<String> = k.classes.iter().map(|c| format!("{:?}", c.coords)).collect();
                let _ = writeln!(text, "[{}] null_essential={}: {v}", classes.join(", "), k.null_essential);
            }
            Output {
                text: text.trim_end().to_string(),
                json: serde_json::to_value(&sb)?,
            }
        }
        Command::Certify(args) => {
            let c = certify_parallel(&diagram(args)?, parallel);
            Output {
                text: certificate_text(&c).trim_end().to_string(),
                json: serde_json::to_value(&c)?,
            }
        }
        Command::TangleExpand(args) => {
            let t = load_tangle(&args.input)?;
            check_size(t.num_crossings(), cli.max_crossings)?;
            let e = expand_tangle(&t)?;
            let text = e
                .terms
                .iter()
                .map(|(m, c)| format!("{m}: {c}"))
                .collect::<Vec<_>>()
                .join("\n");
            Output {
                text,
                json: serde_json::to_value(&e)?,
            }
        }
        Command::VirtualizeReport { diagram: args, crossing } => {
            let r = virtualization_report(&diagram(args)?, *crossing, true)?;
            let mut text = format!(
                "alpha: {}\nbeta: {}\nzero check: {:?}\nverdict: {}\n",
                r.alpha, r.beta, r.zero_check, r.verdict
            );
            if let Some(c) = &r.certificate {
                let _ = write!(text, "certify: {}", c.verdict);
            }
            Output {
                text,
                json: serde_json::to_value(&r)?,
            }
        }
        Command::DoubleVirtualizeReport {
            diagram: args,
            crossing,
            tangle,
        } => {
            let d = diagram(args)?;
            let t = match (tangle, args.input.catalog.as_deref()) {
                (Some(code), _) => Some(tangle_catalog(code).or_else(|_| Tangle::parse(code))?),
                (None, Some("kprime")) => Some(tangle_catalog("tprime")?),
                _ => None,
            };
            let r = double_virtualization_report(&d, crossing[0], crossing[1], t.as_ref())?;
            let mut text = String::new();
            for s in &r.states {
                let _ = writeln!(
                    text,
                    "{:?}/{:?}: {} * ({}) genus {}",
                    s.smoothing.0, s.smoothing.1, s.coefficient, s.bracket, s.genus
                );
            }
            let _ = write!(
                text,
                "genus: {}\nverdict: {}",
                r.genus_virtualized, r.certificate.verdict
            );
            Output {
                text,
                json: serde_json::to_value(&r)?,
            }
        }
        Command::Catalog(CatalogCommand::List) => {
            let mut names = catalog_names();
            names.push("p_family");
            let text = names
                .iter()
                .map(|n| format!("{n}\t{}", catalog_description(n).unwrap_or("family P_n, use --n")))
                .collect::<Vec<_>>()
                .join("\n");
            Output {
                text,
                json: json!(names),
            }
        }
        Command::Catalog(CatalogCommand::Show { name, n }) => {
            let d = named_diagram(name, *n)?;
            Output {
                text: d.to_string(),
                json: json!({
                    "name": name,
                    "code": d.to_string(),
                    "crossings": d.num_crossings(),
                    "components": d.num_components(),
                }),
            }
        }
    };
    Ok(out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            match cli.format {
                Format::Text => println!("{}", out.text),
                Format::Json => println!(
                    "{}",
                    serde_json::to_string(&out.json).expect("values serialize")
                ),
            }
            ExitCode::SUCCESS
        }
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
