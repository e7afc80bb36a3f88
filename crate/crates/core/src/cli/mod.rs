//! Command-line front end. [`run`] parses arguments, dispatches and maps
//! errors to exit codes: 0 success, 1 computational failure, 2 invalid input.

mod csv;
mod repfile;
mod verify;

pub use csv::emit_csv;
pub use repfile::{load_rep_arg, RepFile};
pub use verify::{verify_lemmas, LemmaCheck};

use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;

use crate::config::Config;
use crate::error::{Error, Result};
use crate::grouprep::catalog::CATALOG_NAMES;
use crate::grouprep::{catalog_entry, catalog_rep, character_of_rep, CatalogEntry};
use crate::lattice::{upper_bound_witness, FamilySpec};
use crate::repdecomp::{exponent_k_report, k_from_character_table, q_split, split_mod_p};
use crate::rfgrowth::{lower_bound_certificate, rf_profile};

#[derive(Parser, Debug)]
#[command(
    name = "vabgrowth",
    version,
    about = "Residual finiteness growth of virtually abelian groups"
)]
struct Cli {
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Largest group order accepted when closing the generators.
    #[arg(long, global = true, default_value_t = 20_000)]
    element_bound: usize,
    /// Largest sublattice index a family scan may reach.
    #[arg(long, global = true, default_value_t = 10_000)]
    index_budget: u64,
    /// Primes are never searched beyond this value.
    #[arg(long, global = true, default_value_t = 10_000_000)]
    prime_search_bound: u64,
    /// Write the report to this file instead of standard output.
    #[arg(long, global = true)]
    output: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exponent k and the constituent dimensions at each splitting prime.
    K {
        /// `catalog:NAME` or the path of a representation file.
        rep: String,
    },
    /// Irreducible decomposition over Q or a prime field.
    Decompose {
        /// `catalog:NAME` or the path of a representation file.
        rep: String,
        /// `q` or `fp:P`.
        #[arg(long, default_value = "q")]
        field: String,
    },
    /// Character of the representation, and its decomposition against the
    /// character table with `--table`.
    Char {
        /// `catalog:NAME` or the path of a representation file.
        rep: String,
        /// Also decompose against the shipped character table.
        #[arg(long)]
        table: bool,
    },
    /// Residual finiteness profile RF(1..=rmax).
    Rf {
        /// A representation or `z:m` for the free abelian group of rank m.
        target: String,
        #[arg(long, value_enum, default_value_t = FamilyArg::Nu)]
        family: FamilyArg,
        /// Largest radius to report.
        #[arg(long)]
        rmax: u64,
        /// CSV destination, `-` for standard output.
        #[arg(long)]
        csv: Option<String>,
        /// Coefficient box for the commutant family.
        #[arg(long = "box", default_value_t = 2)]
        coefficient_box: i64,
    },
    /// Invariant sublattice of index p^d omitting a vector.
    Witness {
        /// `catalog:NAME` or the path of a representation file.
        rep: String,
        /// Comma-separated integer entries.
        #[arg(long, allow_hyphen_values = true)]
        vector: String,
    },
    /// Run a verification suite.
    Verify {
        /// `catalog:NAME` or the path of a representation file.
        rep: String,
        #[arg(long, value_enum)]
        suite: SuiteArg,
        /// Largest s for the lower bound certificate.
        #[arg(long, default_value_t = 4)]
        smax: u64,
        /// Vectors sampled per s.
        #[arg(long, default_value_t = 200)]
        samples: usize,
        /// Coefficient box for sampled vectors.
        #[arg(long = "box", default_value_t = 2)]
        coefficient_box: i64,
    },
    /// List catalog names or dump one as a representation file.
    Catalog {
        #[command(subcommand)]
        action: Option<CatalogAction>,
    },
}

#[derive(Subcommand, Debug)]
enum CatalogAction {
    /// Print every catalog name.
    List,
    /// Print one entry as a representation file.
    Dump { name: String },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum FamilyArg {
    /// All finite-index sublattices.
    Nu,
    /// Invariant sublattices.
    Inv,
    /// Images of integer commutant elements.
    Com,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum SuiteArg {
    /// Structural identities on the representation.
    Lemmas,
    /// Sampled lower bound certificate.
    Lowerbound,
}

/// Run the command line `argv` (including the program name), writing
/// reports to `out` and diagnostics to `err`. Returns the exit code.
pub fn run(argv: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let _ = write!(err, "{e}");
                    2
                }
            };
        }
    };
    let config = Config {
        seed: cli.seed,
        element_bound: cli.element_bound,
        index_budget: cli.index_budget,
        prime_search_bound: cli.prime_search_bound,
        ..Config::default()
    };
    if config.element_bound == 0 || config.index_budget == 0 || config.prime_search_bound == 0 {
        let _ = writeln!(err, "error: bounds must be positive");
        return 2;
    }
    let mut report = Vec::new();
    let result = dispatch(&cli.command, &config, &mut report, out, err);
    let written = match &cli.output {
        Some(path) => std::fs::write(path, &report).map_err(Error::from),
        None => out.write_all(&report).map_err(Error::from),
    };
    match written.and(result) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_input_error() {
                2
            } else {
                1
            }
        }
    }
}

/// Runs one subcommand. `report` collects the human-readable output; `out`
/// is standard output, used directly only for `--csv -`.
fn dispatch(
    cmd: &Command,
    config: &Config,
    report: &mut Vec<u8>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32> {
    match cmd {
        Command::K { rep } => {
            let entry = load_rep_arg(rep, config)?;
            write!(report, "{}", exponent_k_report(&entry.rep, config)?)?;
        }
        Command::Decompose { rep, field } => {
            let entry = load_rep_arg(rep, config)?;
            decompose(&entry, field, config, report)?;
        }
        Command::Char { rep, table } => {
            let entry = load_rep_arg(rep, config)?;
            character(&entry, *table, report)?;
        }
        Command::Rf {
            target,
            family,
            rmax,
            csv,
            coefficient_box,
        } => {
            let (m, spec) = family_for(target, *family, *coefficient_box, config)?;
            let profile = rf_profile(&spec, m, *rmax, config.index_budget)?;
            match csv.as_deref() {
                Some("-") => emit_csv(&profile, out)?,
                Some(path) => {
                    let mut f = std::fs::File::create(path)?;
                    emit_csv(&profile, &mut f)?;
                }
                None => write!(report, "{profile}")?,
            }
            if let Some(r) = profile.partial_from() {
                writeln!(
                    err,
                    "index budget {} exceeded from r = {r}; rf values from there on are lower bounds",
                    config.index_budget
                )?;
                return Ok(1);
            }
        }
        Command::Witness { rep, vector } => {
            let entry = load_rep_arg(rep, config)?;
            let v = parse_vector(vector)?;
            write!(report, "{}", upper_bound_witness(&entry.rep, &v, config)?)?;
            writeln!(report)?;
        }
        Command::Verify {
            rep,
            suite,
            smax,
            samples,
            coefficient_box,
        } => {
            let entry = load_rep_arg(rep, config)?;
            let ok = match suite {
                SuiteArg::Lemmas => {
                    let checks = verify_lemmas(&entry, config)?;
                    for c in &checks {
                        writeln!(report, "{c}")?;
                    }
                    checks.iter().all(|c| c.passed)
                }
                SuiteArg::Lowerbound => {
                    let r = lower_bound_certificate(&entry.rep, *smax, *samples, *coefficient_box, config)?;
                    writeln!(report, "{r}")?;
                    r.passed()
                }
            };
            return Ok(if ok { 0 } else { 1 });
        }
        Command::Catalog { action } => match action {
            None | Some(CatalogAction::List) => {
                for (name, about) in CATALOG_NAMES {
                    writeln!(report, "{name:<24} {about}")?;
                }
            }
            Some(CatalogAction::Dump { name }) => {
                let entry = catalog_entry(name, config.element_bound)?;
                writeln!(report, "{}", RepFile::from_entry(&entry)?.to_json())?;
            }
        },
    }
    Ok(0)
}

fn decompose(entry: &CatalogEntry, field: &str, config: &Config, report: &mut Vec<u8>) -> Result<()> {
    if field == "q" {
        write!(report, "{}", q_split(&entry.rep, config)?)?;
        return Ok(());
    }
    let p = field
        .strip_prefix("fp:")
        .and_then(|p| p.parse::<u64>().ok())
        .ok_or_else(|| Error::Invalid(format!("field must be `q` or `fp:P`, got `{field}`")))?;
    let split = split_mod_p(&entry.rep, p, config)?;
    writeln!(report, "{split}")?;
    for (i, c) in split.parts.iter().enumerate() {
        for (j, copy) in c.copies.iter().enumerate() {
            writeln!(report, "  type {} copy {}: basis {:?}", i + 1, j + 1, copy)?;
        }
    }
    Ok(())
}

fn character(entry: &CatalogEntry, with_table: bool, report: &mut Vec<u8>) -> Result<()> {
    let rep = &entry.rep;
    let chi = character_of_rep(rep)?;
    writeln!(report, "classes (representative word, size, χ_φ):")?;
    for (c, value) in rep.classes().classes().iter().zip(chi.values()) {
        writeln!(
            report,
            "  {:?} {} {}",
            rep.word(c.representative),
            c.members.len(),
            value
        )?;
    }
    if with_table {
        let table = entry
            .table
            .as_ref()
            .ok_or_else(|| Error::Invalid(format!("no character table for {}", rep.name())))?;
        let d = k_from_character_table(rep, table)?;
        writeln!(report, "χ_φ in table order: {}", tuple(&d.chi))?;
        writeln!(report, "multiplicities: {}", tuple(&d.multiplicities))?;
        writeln!(report, "k = {}", d.k)?;
    }
    Ok(())
}

fn tuple<T: ToString>(xs: &[T]) -> String {
    let parts: Vec<String> = xs.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(","))
}

fn family_for(target: &str, family: FamilyArg, coefficient_box: i64, config: &Config) -> Result<(usize, FamilySpec)> {
    let rep = match target.strip_prefix("z:") {
        Some(m) => {
            let m: usize = m
                .parse()
                .ok()
                .filter(|&m| m > 0)
                .ok_or_else(|| Error::Invalid(format!("bad rank in `{target}`")))?;
            catalog_rep(&format!("trivial({m})"), config.element_bound)?
        }
        None => load_rep_arg(target, config)?.rep,
    };
    let m = rep.degree();
    let spec = match family {
        FamilyArg::Nu => FamilySpec::AllFiniteIndex,
        FamilyArg::Inv => FamilySpec::Invariant(rep),
        FamilyArg::Com => FamilySpec::CommutantImages { rep, coefficient_box },
    };
    Ok((m, spec))
}

fn parse_vector(s: &str) -> Result<Vec<BigInt>> {
    s.split(',')
        .map(|x| {
            x.trim()
                .parse::<BigInt>()
                .map_err(|_| Error::Invalid(format!("`{x}` is not an integer")))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let argv: Vec<String> = std::iter::once("vabgrowth")
            .chain(args.iter().copied())
            .map(String::from)
            .collect();
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(&argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn k_subcommand() {
        let (code, out, _) = run_args(&["k", "catalog:d4_paper"]);
        assert_eq!(code, 0);
        assert!(out.starts_with("k = 2"));
    }

    #[test]
    fn char_with_table() {
        let (code, out, _) = run_args(&["char", "catalog:d4_paper", "--table"]);
        assert_eq!(code, 0);
        assert!(out.contains("multiplicities: (1,0,0,0,1)"), "{out}");
        assert!(out.contains("χ_φ in table order: (3,1,-1,1,1)"));
        let (code, _, err) = run_args(&["char", "catalog:rot(3)", "--table"]);
        assert_eq!(code, 2, "{err}");
    }

    #[test]
    fn rf_csv_on_z() {
        let (code, out, _) = run_args(&["rf", "z:1", "--family", "nu", "--rmax", "6", "--csv", "-"]);
        assert_eq!(code, 0);
        let last = out.lines().last().unwrap();
        assert!(last.starts_with("6,4"), "{last}");
        assert_eq!(out.lines().next(), Some("r,rf,witness_vector,witness_index"));
    }

    #[test]
    fn rf_partial_exits_one() {
        let (code, out, _) = run_args(&["rf", "z:1", "--rmax", "12", "--csv", "-", "--index-budget", "4"]);
        assert_eq!(code, 1);
        assert!(out.lines().last().unwrap().ends_with(",partial=1"));
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run_args(&["k", "catalog:nope"]).0, 2);
        assert_eq!(run_args(&["bogus"]).0, 2);
        assert_eq!(run_args(&["witness", "catalog:d4_paper", "--vector", "0,0,0"]).0, 2);
        assert_eq!(run_args(&["witness", "catalog:d4_paper", "--vector", "1,x,0"]).0, 2);
        assert_eq!(run_args(&["decompose", "catalog:d4_paper", "--field", "fp:13"]).0, 2);
        assert_eq!(
            run_args(&[
                "witness",
                "catalog:d4_paper",
                "--vector",
                "1,0,0",
                "--prime-search-bound",
                "10"
            ])
            .0,
            1
        );
        assert_eq!(run_args(&["--help"]).0, 0);
    }

    #[test]
    fn witness_and_decompose() {
        let (code, out, _) = run_args(&["witness", "catalog:d4_paper", "--vector", "-1,0,0"]);
        assert_eq!(code, 0);
        assert!(out.starts_with("p = 17"));
        let (code, out, _) = run_args(&["decompose", "catalog:quaternion_paper", "--field", "fp:17"]);
        assert_eq!(code, 0);
        assert!(out.starts_with("p = 17: dims {2 (x2)}"), "{out}");
        let (code, out, _) = run_args(&["decompose", "catalog:d4_paper"]);
        assert_eq!(code, 0);
        assert!(out.starts_with("2 rational constituent(s)"));
    }

    #[test]
    fn catalog_dump_reloads() {
        let (code, out, _) = run_args(&["catalog", "dump", "d4_paper"]);
        assert_eq!(code, 0);
        let entry = RepFile::from_json(&out)
            .unwrap()
            .into_entry(&Config::default())
            .unwrap();
        assert_eq!(entry.rep, catalog_rep("d4_paper", 100).unwrap());
        let (code, out, _) = run_args(&["catalog", "list"]);
        assert_eq!(code, 0);
        assert!(out.contains("quaternion_paper"));
    }
}
