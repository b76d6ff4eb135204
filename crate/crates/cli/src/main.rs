use std::fs;
use std::io::{self, Read};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use pentagon::algebra::parse_semigroup;
use pentagon::census::{
    census, classify_result, construction_round_trips, theorem_audit, CensusConfig, Execution,
};
use pentagon::construct::{
    cosimpo_construction, cyclic_solution, ea2_solution, endo_solution, extension_construction,
    extension_decompose, group_solution, identify_group, left_zero_construction, proj_solution,
    sigma_construction, Cocycle, GroupSpec, SigmaFamily,
};
use pentagon::format::{parse_solution_text, write_json, write_pesol};
use pentagon::retraction::retract;
use pentagon::{Error, Partition, Permutation, RawTables, Solution};

const GRAMMAR: &str = "\
Group names: C<n> (cyclic), C<p>:C<q> (semidirect, q of multiplicative order q mod p),
D<n> (dihedral of order 2n), Q8, products joined by x (e.g. C2xC2xC2),
or @<file> holding an explicit Cayley table (size line, then rows).
Solutions are read as PESOL v1 or its JSON mirror; `-` reads stdin.
Exit status: 0 success/true, 1 property false, 2 usage or format error.";

#[derive(Parser)]
#[command(name = "pentagon", version, about = "Finite solutions of the pentagon equation", after_help = GRAMMAR)]
struct Cli {
    /// Output encoding for solutions.
    #[arg(long, value_enum, global = true, default_value_t = Format::Pesol)]
    format: Format,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Pesol,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check the pentagon identity and report structural properties.
    Verify { file: String },
    /// Build a solution with one of the factories.
    Construct {
        #[command(subcommand)]
        factory: Factory,
        /// Write to a file instead of stdout.
        #[arg(short, long, global = true)]
        output: Option<PathBuf>,
    },
    /// Print the retract classes and the retraction.
    Retract { file: String },
    /// Decide isomorphism and print a witness.
    Iso { a: String, b: String },
    /// Write a solution as an extension of its retraction's group.
    Decompose { file: String },
    /// Enumerate solutions on the left-zero semigroup of size n.
    Census {
        n: usize,
        /// Worker threads.
        #[arg(long)]
        jobs: Option<usize>,
        /// Compare against the predicted classification list.
        #[arg(long)]
        report: bool,
        /// Minimum number of search partitions.
        #[arg(long, default_value_t = 0)]
        partitions: usize,
        /// Try every first row instead of conjugacy representatives.
        #[arg(long)]
        no_symmetry_breaking: bool,
        #[arg(long)]
        sequential: bool,
        /// Permit sizes above 9 (up to 10); size 10 takes about 30 s in a release build.
        #[arg(long)]
        allow_large: bool,
        /// Print every representative.
        #[arg(long)]
        list: bool,
    },
    /// Run the structural audits on every census representative.
    Audit {
        n: usize,
        #[arg(long)]
        jobs: Option<usize>,
    },
}

#[derive(Subcommand)]
enum Factory {
    /// s(g, h) = (g, g⁻¹h).
    Group { spec: String },
    /// Cyclic associated group with m orbits of size n.
    Cyclic { m: usize, n: usize },
    /// s(x, y) = (x, y).
    Identity { n: usize },
    /// s(x, y) = (x, x + y) on (Z/2)^k.
    Ea2 { k: usize },
    /// Semi-regular group on a left-zero semigroup.
    LeftZero {
        n: usize,
        /// Group generator as space-separated images; repeatable.
        #[arg(long = "gen")]
        gens: Vec<String>,
        /// One point per orbit, comma-separated.
        #[arg(long, value_delimiter = ',')]
        reps: Vec<usize>,
    },
    /// Semi-regular automorphism group on a weak commutative semigroup.
    Cosimpo {
        /// Semigroup table file.
        semigroup: PathBuf,
        /// Congruence classes, e.g. "0 1|2 3".
        #[arg(long)]
        classes: String,
        #[arg(long = "gen")]
        gens: Vec<String>,
        /// Index of the class carrying identity theta.
        #[arg(long, default_value_t = 0)]
        class: usize,
    },
    /// Extension of X by G through a cocycle file (trivial when omitted).
    Extension {
        group: String,
        x_size: usize,
        #[arg(long)]
        cocycle: Option<PathBuf>,
    },
    /// Extension with pi_{a,b} = sigma_{a⁻¹b} sigma_b⁻¹.
    Sigma { group: String, sigma: PathBuf },
    /// s(x, y) = (xy, f(y)) for an idempotent endomorphism f.
    Endo {
        semigroup: PathBuf,
        #[arg(long, value_delimiter = ',')]
        f: Vec<usize>,
    },
    /// s(x, y) = (f(x), g(y)) for commuting idempotents f, g.
    Proj {
        n: usize,
        #[arg(long, value_delimiter = ',')]
        f: Vec<usize>,
        #[arg(long, value_delimiter = ',')]
        g: Vec<usize>,
    },
}

/// Failure classes mapped to exit status.
enum Failure {
    False(String),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. } | Error::InvalidGroupSpec(..) | Error::Budget { .. } => {
                Failure::Usage(format!("{e}\n\n{GRAMMAR}"))
            }
            other => Failure::False(other.to_string()),
        }
    }
}

type Outcome = Result<bool, Failure>;

fn read_input(path: &str) -> Result<String, Failure> {
    if path == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Usage(format!("stdin: {e}")))?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{path}: {e}")))
    }
}

fn read_raw(path: &str) -> Result<RawTables, Failure> {
    parse_solution_text(&read_input(path)?).map_err(|e| Failure::Usage(format!("{path}: {e}")))
}

fn read_solution(path: &str) -> Result<Solution, Failure> {
    Solution::new(read_raw(path)?).map_err(|e| Failure::False(format!("{path}: {e}")))
}

fn encode(raw: &RawTables, format: Format) -> String {
    match format {
        Format::Pesol => write_pesol(raw),
        Format::Json => write_json(raw),
    }
}

fn group_spec(text: &str) -> Result<GroupSpec, Failure> {
    match text.strip_prefix('@') {
        Some(path) => Ok(GroupSpec::from_table_text(&read_input(path)?)?),
        None => Ok(GroupSpec::parse(text)?),
    }
}

fn perms(gens: &[String]) -> Result<Vec<Permutation>, Failure> {
    gens.iter()
        .map(|g| g.parse::<Permutation>().map_err(Failure::from))
        .collect()
}

fn read_file(path: &Path) -> Result<String, Failure> {
    read_input(&path.to_string_lossy())
}

fn config(jobs: Option<usize>) -> CensusConfig {
    CensusConfig {
        jobs,
        ..CensusConfig::default()
    }
}

fn verify(file: &str) -> Outcome {
    let raw = read_raw(file)?;
    let report = raw.verify_component_equations();
    let (e1, e2, e3) = report.flags();
    println!("associativity: {e1}");
    println!("theta product identity: {e2}");
    println!("theta composition identity: {e3}");
    match raw.pentagon_violation() {
        Some(w) => {
            println!("pentagon: fails at {w:?}");
            Ok(false)
        }
        None => {
            println!("pentagon: holds");
            let sol = Solution::new(raw)?;
            print!("{}", sol.profile()?);
            Ok(true)
        }
    }
}

fn construct(factory: Factory, output: Option<PathBuf>, format: Format) -> Outcome {
    let raw = match factory {
        Factory::Group { spec } => group_solution(&group_spec(&spec)?)?.into_raw(),
        Factory::Cyclic { m, n } => cyclic_solution(m, n)?.into_raw(),
        Factory::Identity { n } => Solution::identity(n).into_raw(),
        Factory::Ea2 { k } => {
            if k > 6 {
                return Err(Failure::Usage("ea2 supports k <= 6".into()));
            }
            ea2_solution(k).into_raw()
        }
        Factory::LeftZero { n, gens, reps } => {
            left_zero_construction(n, &perms(&gens)?, &reps)?.into_raw()
        }
        Factory::Cosimpo {
            semigroup,
            classes,
            gens,
            class,
        } => {
            let s = parse_semigroup(&read_file(&semigroup)?)?;
            let parts = classes
                .split('|')
                .map(|c| {
                    c.split_whitespace()
                        .map(|t| t.parse::<usize>())
                        .collect::<Result<Vec<_>, _>>()
                })
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| Failure::Usage(format!("--classes: {e}")))?;
            let c = s.congruence(Partition::new(s.n(), parts)?)?;
            cosimpo_construction(&s, &c, &perms(&gens)?, class)?.into_raw()
        }
        Factory::Extension {
            group,
            x_size,
            cocycle,
        } => {
            let g = group_spec(&group)?.resolve()?;
            let pi = match cocycle {
                Some(p) => Cocycle::parse(&g, &read_file(&p)?)?,
                None => Cocycle::trivial(&g, x_size),
            };
            extension_construction(x_size, &g, &pi)?.into_raw()
        }
        Factory::Sigma { group, sigma } => {
            let g = group_spec(&group)?.resolve()?;
            let sig = SigmaFamily::parse(&read_file(&sigma)?)?;
            sigma_construction(sig.x_size(), &g, &sig)?.into_raw()
        }
        Factory::Endo { semigroup, f } => {
            endo_solution(&parse_semigroup(&read_file(&semigroup)?)?, &f)?
        }
        Factory::Proj { n, f, g } => proj_solution(n, &f, &g)?,
    };
    let text = encode(&raw, format);
    match output {
        Some(path) => fs::write(&path, text)
            .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?,
        None => print!("{text}"),
    }
    Ok(true)
}

fn run(cli: Cli) -> Outcome {
    let format = cli.format;
    match cli.cmd {
        Cmd::Verify { file } => verify(&file),
        Cmd::Construct { factory, output } => construct(factory, output, format),
        Cmd::Retract { file } => {
            let ret = retract(&read_solution(&file)?)?;
            println!("classes: {}", ret.classes());
            print!("{}", encode(ret.quotient().raw(), format));
            Ok(true)
        }
        Cmd::Iso { a, b } => {
            let (a, b) = (read_solution(&a)?, read_solution(&b)?);
            match a.isomorphic(&b) {
                Some(w) => {
                    println!("isomorphic: {w:?}");
                    Ok(true)
                }
                None => {
                    println!("not isomorphic");
                    Ok(false)
                }
            }
        }
        Cmd::Decompose { file } => {
            let d = extension_decompose(&read_solution(&file)?)?;
            println!("group: {}", identify_group(&d.group));
            println!("relabel: {:?}", d.relabel);
            print!("{}", d.cocycle.to_text());
            Ok(true)
        }
        Cmd::Census {
            n,
            jobs,
            report,
            partitions,
            no_symmetry_breaking,
            sequential,
            allow_large,
            list,
        } => {
            let cfg = CensusConfig {
                symmetry_breaking: !no_symmetry_breaking,
                partitions,
                allow_large,
                execution: if sequential {
                    Execution::Sequential
                } else {
                    CensusConfig::default().execution
                },
                ..config(jobs)
            };
            let result = census(n, &cfg)?;
            if list {
                for (k, rep) in result.representatives.iter().enumerate() {
                    println!("# representative {k}: {}", result.info[k].group_tag);
                    print!("{}", encode(rep.raw(), format));
                }
            }
            println!("{result}");
            if report {
                let r = classify_result(&result)?;
                println!("{r}");
                return Ok(r.expected.is_none() || r.matches());
            }
            Ok(true)
        }
        Cmd::Audit { n, jobs } => {
            let result = census(n, &config(jobs))?;
            let audit = theorem_audit(&result);
            let trips = construction_round_trips(&result);
            println!("{audit}");
            println!("{trips}");
            Ok(audit.passed() && trips.passed())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::False(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
