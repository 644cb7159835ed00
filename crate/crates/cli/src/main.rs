mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;

use posetbocs::bocs::PosetBocs;
use posetbocs::burt_butler::{BasicLeft, RealizedAlgebra, Side};
use posetbocs::gallery;
use posetbocs::incidence::{incidence_algebra, RowBalanced};
use posetbocs::quiver::{hasse_presentation, left_quiver, right_quiver, QuiverPresentation};
use posetbocs::suite::{verify_poset, Record, SuiteConfig};
use posetbocs::{Field, Marking, OrbitData, Poset, F101, F2, F3, F5, F7, Q};

use report::Report;

#[derive(Parser)]
#[command(name = "posetbocs", version, about = "Right and left algebras of the bocs of a finite poset")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Q, or F<p> for p in 2, 3, 5, 7, 101.
    #[arg(long, global = true, default_value = "Q")]
    field: String,
    /// `default`, or a file of `j:i` entries meaning m(j) = i.
    #[arg(long, global = true, default_value = "default")]
    marking: String,
    /// Overridden by POSETBOCS_SEED when set.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Build the algebras and quivers of one poset and print the requested artifact.
    Build {
        #[command(flatten)]
        input: Input,
        /// dims, algebras, or quiver=right|left|hasse.
        #[arg(long, default_value = "dims")]
        emit: String,
    },
    /// Run the verification suite; the exit code is 0 iff every check passes.
    Verify {
        #[command(flatten)]
        input: Input,
        /// Run the example gallery.
        #[arg(long)]
        examples: bool,
        /// Random posets: largest size and how many.
        #[arg(long, num_args = 2, value_names = ["N_MAX", "COUNT"])]
        random: Option<Vec<usize>>,
        /// Random A-modules per side for the module checks.
        #[arg(long, default_value_t = 10)]
        modules: usize,
    },
    /// Regenerate the example gallery and compare it with the committed fixtures.
    Examples {
        /// Also write the renderings into this directory.
        #[arg(long)]
        write: Option<PathBuf>,
    },
}

#[derive(clap::Args)]
struct Input {
    /// Poset file: `n=<count>` and `i<j` entries, or JSON.
    #[arg(long)]
    poset: Option<PathBuf>,
    /// A gallery poset by name (p_b, p_c, p_d, p_e, antichain2, antichain3, chain3).
    #[arg(long, conflicts_with = "poset")]
    example: Option<String>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Clone, Copy)]
enum FieldArg {
    Q,
    F2,
    F3,
    F5,
    F7,
    F101,
}

impl FieldArg {
    fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "Q" | "q" => FieldArg::Q,
            "F2" => FieldArg::F2,
            "F3" => FieldArg::F3,
            "F5" => FieldArg::F5,
            "F7" => FieldArg::F7,
            "F101" => FieldArg::F101,
            _ => bail!("unsupported field `{s}`: use Q, F2, F3, F5, F7 or F101"),
        })
    }
}

macro_rules! with_field {
    ($arg:expr, $f:ident => $body:expr) => {
        match $arg {
            FieldArg::Q => {
                type $f = Q;
                $body
            }
            FieldArg::F2 => {
                type $f = F2;
                $body
            }
            FieldArg::F3 => {
                type $f = F3;
                $body
            }
            FieldArg::F5 => {
                type $f = F5;
                $body
            }
            FieldArg::F7 => {
                type $f = F7;
                $body
            }
            FieldArg::F101 => {
                type $f = F101;
                $body
            }
        }
    };
}

fn seed(cli: &Cli) -> Result<u64> {
    match std::env::var("POSETBOCS_SEED") {
        Ok(s) => s.trim().parse().with_context(|| format!("POSETBOCS_SEED is not an integer: `{s}`")),
        Err(_) => Ok(cli.seed),
    }
}

fn read_poset(path: &Path) -> Result<(String, Poset)> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let (p, labels) = Poset::parse_relabel(&text).with_context(|| format!("parsing {}", path.display()))?;
    if labels.iter().enumerate().any(|(k, l)| *l != (k + 1).to_string()) {
        let map: Vec<String> = labels.iter().enumerate().map(|(k, l)| format!("{}={l}", k + 1)).collect();
        eprintln!("relabelled: {}", map.join(" "));
    }
    let name = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "poset".into());
    Ok((name, p))
}

fn load(input: &Input) -> Result<Option<(String, Poset)>> {
    if let Some(path) = &input.poset {
        return read_poset(path).map(Some);
    }
    if let Some(name) = &input.example {
        let e = gallery::find(name).ok_or_else(|| anyhow!("no example named `{name}`"))?;
        return Ok(Some((e.name.to_string(), e.poset)));
    }
    Ok(None)
}

fn marking(spec: &str, p: &Poset) -> Result<Marking> {
    if spec == "default" {
        return Ok(Marking::default_for(p));
    }
    let text = fs::read_to_string(spec).with_context(|| format!("reading marking {spec}"))?;
    Ok(Marking::parse(p, &text)?)
}

fn quiver_text<F: Field>(q: &QuiverPresentation<F>) -> String {
    let mut s = format!("quiver {}\nvertices: {}\narrows:\n", q.name, q.vertices.join(" "));
    for a in &q.arrows {
        s.push_str(&format!("  {}: {} -> {}\n", a.name, q.vertices[a.source], q.vertices[a.target]));
    }
    s.push_str("relations:\n");
    for r in &q.relations {
        s.push_str(&format!("  {} = 0\n", q.relation_text(r)));
    }
    for n in &q.notes {
        s.push_str(&format!("note: {n}\n"));
    }
    s
}

fn build<F: Field>(p: &Poset, mk: &Marking, emit: &str, format: Format) -> Result<String> {
    if let Some(side) = emit.strip_prefix("quiver=") {
        let q = match side {
            "right" => right_quiver::<F>(p)?,
            "left" => left_quiver::<F>(p, mk, &OrbitData::new(p, mk))?,
            "hasse" => hasse_presentation::<F>(p)?,
            _ => bail!("unknown quiver `{side}`: use right, left or hasse"),
        };
        return Ok(match format {
            Format::Dot => q.quiver.to_dot(),
            Format::Json => serde_json::to_string_pretty(&q.quiver.to_json())? + "\n",
            Format::Text => quiver_text(&q.quiver),
        });
    }
    let b = PosetBocs::<F>::new(p)?;
    let r = RealizedAlgebra::new(&b, Side::Right, mk)?;
    let l = RealizedAlgebra::new(&b, Side::Left, mk)?;
    let lb = BasicLeft::new(&l, p, mk)?;
    match (emit, format) {
        ("dims", Format::Text) => Ok(format!("R: {}\nL: {}\nL': {}\nA: {}\n", r.dim(), l.dim(), lb.algebra.dim(), b.a.dim())),
        ("dims", Format::Json) => {
            Ok(serde_json::to_string_pretty(&json!({"R": r.dim(), "L": l.dim(), "L'": lb.algebra.dim(), "A": b.a.dim()}))? + "\n")
        }
        ("algebras", Format::Text | Format::Json) => {
            let rb = RowBalanced::<F>::new(p, mk)?;
            let v = json!({
                "field": F::name(),
                "poset": p.to_json(),
                "A": b.a.to_json(),
                "KP": incidence_algebra::<F>(p).to_json(),
                "K1P": rb.algebra.to_json(),
                "R": r.to_json(),
                "L": l.to_json(),
                "L'": lb.to_json(),
            });
            Ok(serde_json::to_string_pretty(&v)? + "\n")
        }
        ("dims" | "algebras", Format::Dot) => bail!("--format dot only applies to quivers"),
        _ => bail!("unknown --emit `{emit}`: use dims, algebras or quiver=right|left|hasse"),
    }
}

fn verify_all<F: Field>(cases: &[(String, Poset)], mk_spec: &str, cfg: &SuiteConfig) -> Result<Vec<Record>> {
    let markings: Vec<Marking> = cases.iter().map(|(_, p)| marking(mk_spec, p)).collect::<Result<_>>()?;
    // collect keeps the input order, so the report does not depend on scheduling
    let per: Vec<Vec<Record>> = cases.par_iter().zip(markings.par_iter()).map(|((name, p), mk)| verify_poset::<F>(name, p, mk, cfg)).collect();
    Ok(per.into_iter().flatten().collect())
}

fn run(cli: &Cli) -> Result<bool> {
    let field = FieldArg::parse(&cli.field)?;
    let seed = seed(cli)?;
    match &cli.command {
        Command::Build { input, emit } => {
            let (_, p) = load(input)?.ok_or_else(|| anyhow!("build needs --poset or --example"))?;
            let mk = marking(&cli.marking, &p)?;
            let out = with_field!(field, F => build::<F>(&p, &mk, emit, cli.format))?;
            print!("{out}");
            Ok(true)
        }
        Command::Verify { input, examples, random, modules } => {
            let mut cases: Vec<(String, Poset)> = load(input)?.into_iter().collect();
            if *examples {
                cases.extend(gallery::examples().into_iter().map(|e| (e.name.to_string(), e.poset)));
            }
            if let Some(r) = random {
                let (n_max, count) = (r[0], r[1]);
                if n_max == 0 {
                    bail!("--random needs N_MAX >= 1");
                }
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                for k in 0..count {
                    let p = Poset::random(rng.gen_range(1..=n_max), &mut rng);
                    cases.push((format!("random{k}[{}]", p.to_text_inline()), p));
                }
            }
            if cases.is_empty() {
                bail!("verify needs --poset, --example, --examples or --random");
            }
            let cfg = SuiteConfig { seed, modules: *modules, ..SuiteConfig::default() };
            let field_name = with_field!(field, F => F::name());
            let records = with_field!(field, F => verify_all::<F>(&cases, &cli.marking, &cfg))?;
            let report = Report::new("verify", &field_name, seed, records);
            match cli.format {
                Format::Json => print!("{}", report.to_json()),
                Format::Text => print!("{}", report.to_text()),
                Format::Dot => bail!("--format dot only applies to build and examples"),
            }
            Ok(report.passed())
        }
        Command::Examples { write } => {
            let mut ok = true;
            let mut rows = Vec::new();
            for e in gallery::examples() {
                let dot = gallery::render(&e.poset)?;
                if let Some(dir) = write {
                    fs::create_dir_all(dir)?;
                    fs::write(dir.join(format!("{}.dot", e.name)), &dot)?;
                }
                let matches = gallery::fixture(e.name) == Some(dot.as_str());
                ok &= matches;
                rows.push((e.name, dot, matches));
            }
            match cli.format {
                Format::Dot => rows.iter().for_each(|(_, dot, _)| print!("{dot}")),
                Format::Text => {
                    for (name, _, m) in &rows {
                        println!("{name}: {}", if *m { "matches fixture" } else { "DIFFERS from fixture" });
                    }
                }
                Format::Json => {
                    let v: Vec<_> = rows.iter().map(|(name, dot, m)| json!({"name": name, "matches": m, "dot": dot})).collect();
                    println!("{}", serde_json::to_string_pretty(&json!({"schema": report::SCHEMA_VERSION, "examples": v}))?);
                }
            }
            Ok(ok)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
