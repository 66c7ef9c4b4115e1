use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use bricks::decomposition::{decompose, refinement_check, verify_identity};
use bricks::{
    build_from, export_off, export_scene, import_scene, lattice_cover_check_auto, verify_tiling,
    Error, LabeledTree, Rational, StartRequest,
};

#[derive(Parser)]
#[command(name = "bricks", version, about = "Build boxes out of binomial-basis bricks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Roots {
    /// Number of variables.
    #[arg(long)]
    n: usize,
    /// Comma-separated integer roots s_1..s_n of p = (x_1 + s_1)...(x_n + s_n); defaults to zeros.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    s: Vec<i64>,
}

impl Roots {
    fn resolve(&self) -> Result<Vec<i64>, Error> {
        if self.s.is_empty() {
            return Ok(vec![0; self.n]);
        }
        if self.s.len() != self.n {
            return Err(Error::InvalidInput(format!(
                "--n is {} but --s has {} values",
                self.n,
                self.s.len()
            )));
        }
        Ok(self.s.clone())
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Text,
    Lines,
}

#[derive(Subcommand)]
enum Command {
    /// Print the labeled tree as a table.
    Tree {
        #[command(flatten)]
        roots: Roots,
        #[arg(long, value_enum, default_value = "text")]
        format: TableFormat,
    },
    /// Print basis elements and coefficients.
    Decompose {
        #[command(flatten)]
        roots: Roots,
    },
    /// Check the basis expansion exactly; exit 1 if it fails.
    Identity {
        #[command(flatten)]
        roots: Roots,
    },
    /// Build the brick construction and write the scene document.
    Build {
        #[command(flatten)]
        roots: Roots,
        /// Comma-separated edge parameters x_1..x_n (integers or p/q).
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        x: Vec<String>,
        /// auto, root, or a 1-based node index.
        #[arg(long, default_value = "auto")]
        start: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Scene document path; printed to stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        /// OFF mesh path.
        #[arg(long)]
        off: Option<PathBuf>,
    },
    /// Certify that a scene document is an exact tiling.
    Verify {
        #[arg(long)]
        scene: PathBuf,
        /// Also run the brute-force lattice oracle.
        #[arg(long)]
        lattice: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: ReportFormat,
    },
    /// Compare coefficient sums by subset size with Eulerian numbers.
    Eulerian {
        #[arg(long)]
        n: usize,
    },
}

enum Failure {
    /// Bad input or an instance with no construction.
    Input(String),
    /// The check ran and said no.
    Check,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn write_file(path: &PathBuf, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display())))
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Tree { roots, format } => {
            let tree = LabeledTree::generate(&roots.resolve()?)?;
            match format {
                TableFormat::Text => print!("{}", tree.table()),
                TableFormat::Json => print!("{}", tree.to_json()),
            }
        }
        Command::Decompose { roots } => {
            let d = decompose(&roots.resolve()?)?;
            for e in &d.elements {
                let subset: Vec<String> = e.subset().iter().map(|i| i.to_string()).collect();
                let offsets: Vec<String> = e.roots.iter().map(|r| r.to_string()).collect();
                println!(
                    "{}\t{{{}}}\t({})\t{}\t{}",
                    e.bits,
                    subset.join(","),
                    offsets.join(","),
                    e.q_formula(),
                    e.coefficient
                );
            }
        }
        Command::Identity { roots } => {
            let s = roots.resolve()?;
            let holds = verify_identity(&s)?;
            println!("identity {} for s = {s:?}", if holds { "holds" } else { "FAILS" });
            if !holds {
                return Err(Failure::Check);
            }
        }
        Command::Build { roots, x, start, seed, out, off } => {
            let s = roots.resolve()?;
            let x = x
                .iter()
                .map(|v| v.parse::<Rational>())
                .collect::<Result<Vec<_>, _>>()?;
            let tree = LabeledTree::generate(&s)?;
            let requested: StartRequest = start.parse()?;
            let mut scene = build_from(&tree, &x, requested)?;
            scene.palette_seed = seed;
            let document = export_scene(&scene);
            match &out {
                Some(path) => {
                    write_file(path, &document)?;
                    let extent: Vec<String> = scene.target.extent.iter().map(|e| e.to_string()).collect();
                    println!(
                        "{} bricks, m = {}, start = {}, target extent ({})",
                        scene.bricks.len(),
                        scene.m,
                        scene.start,
                        extent.join(", ")
                    );
                }
                None => print!("{document}"),
            }
            if let Some(path) = &off {
                write_file(path, &export_off(&scene)?)?;
            }
        }
        Command::Verify { scene, lattice, format } => {
            let text = fs::read_to_string(&scene)
                .map_err(|e| Failure::Input(format!("cannot read {}: {e}", scene.display())))?;
            let scene = import_scene(&text)?;
            let report = verify_tiling(&scene)?;
            let mut exact = report.is_exact_tiling();
            match format {
                ReportFormat::Text => print!("{report}"),
                ReportFormat::Lines => print!("{}", report.to_lines()),
            }
            if lattice {
                let covered = lattice_cover_check_auto(&scene)?;
                match format {
                    ReportFormat::Text => println!(
                        "  lattice cover: {}",
                        if covered { "ok" } else { "FAILED" }
                    ),
                    ReportFormat::Lines => println!("lattice={covered}"),
                }
                exact &= covered;
            }
            if !exact {
                return Err(Failure::Check);
            }
        }
        Command::Eulerian { n } => {
            let r = refinement_check(n)?;
            println!("|S|\tsum C_S\tA(n,|S|-1)");
            for (k, sum) in r.group_sums.iter().enumerate() {
                let eulerian = k
                    .checked_sub(1)
                    .and_then(|i| r.eulerian.get(i))
                    .map_or_else(|| "-".to_string(), |a| a.to_string());
                println!("{k}\t{sum}\t{eulerian}");
            }
            println!("total\t{}", r.total);
            println!("refinement {}", if r.holds() { "holds" } else { "FAILS" });
            if !r.holds() {
                return Err(Failure::Check);
            }
        }
    }
    Ok(())
}
