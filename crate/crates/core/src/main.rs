use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand};

use artin_twist::brauer::{
    brauer_decompose, dimension_identity_check, irreducible_characters, parse_group,
};
use artin_twist::characters::enumerate;
use artin_twist::gauss::gauss_sum;
use artin_twist::lvalues::{
    classify_criticality, l_value_nonpositive, l_value_numeric, ParitySignature,
};
use artin_twist::verifier::{run_sweep_file, verify_case, Status, TheoremCase};
use artin_twist::{DirichletCharacter, Error};

#[derive(Parser)]
#[command(
    name = "artin-twist",
    version,
    about = "Exact checks of twisted Dirichlet L-value relations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the characters mod q.
    Chars {
        #[arg(long)]
        modulus: u64,
        #[arg(long)]
        even_only: bool,
    },
    /// Gauss sum τ(χ, a) of the primitive character inducing χ.
    Gauss {
        #[arg(long = "char")]
        character: String,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        shift: i64,
    },
    /// L(χ, m): exact for integers m ≤ 0, or numeric with --numeric.
    Lvalue {
        #[arg(long = "char")]
        character: String,
        #[arg(long, allow_hyphen_values = true)]
        at: String,
        #[arg(long)]
        numeric: bool,
    },
    /// Criticality of m for a sum of characters.
    Critical {
        #[arg(long, value_delimiter = ',')]
        chars: Vec<String>,
        #[arg(long, allow_hyphen_values = true)]
        m: i64,
    },
    /// Verify one twisted case.
    Verify {
        #[arg(long, value_delimiter = ',')]
        rho: Vec<String>,
        #[arg(long)]
        twist: String,
        #[arg(long, allow_hyphen_values = true)]
        m: i64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run every case described by a TOML config.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Brauer decomposition of an irreducible character of a group file.
    Brauer {
        #[arg(long)]
        group: PathBuf,
        #[arg(long = "char")]
        index: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            let usage = matches!(
                e,
                Error::BadLabel(_)
                    | Error::Parse(_)
                    | Error::OutOfRange(_)
                    | Error::InvalidGroup(_)
            );
            ExitCode::from(if usage { 2 } else { 1 })
        }
    }
}

fn character(label: &str) -> Result<DirichletCharacter, Error> {
    DirichletCharacter::parse_label(label)
}

fn write_json<T: serde::Serialize>(value: &T, out: Option<&PathBuf>) -> Result<(), Error> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Error::Parse(e.to_string()))?;
    match out {
        Some(path) => std::fs::write(path, text + "\n")
            .map_err(|e| Error::Parse(format!("{}: {e}", path.display()))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn run(command: Command) -> Result<u8, Error> {
    match command {
        Command::Chars { modulus, even_only } => {
            if modulus == 0 {
                return Err(Error::OutOfRange("modulus must be positive".into()));
            }
            println!(
                "{:<10} {:>6} {:>10} {:>7} {:>10}",
                "label", "order", "conductor", "parity", "primitive"
            );
            for chi in enumerate(modulus)
                .into_iter()
                .filter(|c| !even_only || c.is_even())
            {
                println!(
                    "{:<10} {:>6} {:>10} {:>7} {:>10}",
                    chi.label(),
                    chi.order(),
                    chi.conductor(),
                    if chi.is_even() { "even" } else { "odd" },
                    chi.is_primitive()
                );
            }
            Ok(0)
        }
        Command::Gauss {
            character: c,
            shift,
        } => {
            let g = gauss_sum(&character(&c)?, shift);
            if g.primitivized {
                println!("# replaced by primitive character {}", g.label);
            }
            let z = g.value.embed_complex();
            println!("tau({}, {}) = {}", g.label, shift, g.value);
            println!("approx = {:.15} {:+.15}i", z.re, z.im);
            Ok(0)
        }
        Command::Lvalue {
            character: c,
            at,
            numeric,
        } => {
            let chi = character(&c)?;
            if numeric {
                let s: f64 = at
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad s: {at}")))?;
                let v = l_value_numeric(&chi, s)?;
                println!("L({}, {s}) ~ {:.15} {:+.15}i", chi.label(), v.re, v.im);
            } else {
                let m: i64 = at
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad m: {at}")))?;
                let v = l_value_nonpositive(&chi, m)?;
                let z = v.embed_complex();
                println!("L({}, {m}) = {v}", chi.label());
                println!("approx = {:.15} {:+.15}i", z.re, z.im);
            }
            Ok(0)
        }
        Command::Critical { chars, m } => {
            let list = chars
                .iter()
                .map(|l| character(l))
                .collect::<Result<Vec<_>, _>>()?;
            let sig = ParitySignature::of(&list);
            let v = classify_criticality(sig, m)?;
            println!(
                "m = {m}: {} (signature {sig:?}, condition {:?})",
                if v.critical {
                    "critical"
                } else {
                    "not critical"
                },
                v.condition
            );
            Ok(0)
        }
        Command::Verify { rho, twist, m, out } => {
            let case = TheoremCase::new(&rho, &twist, m)?;
            let report = verify_case(&case);
            let ratio = report
                .ratio
                .as_ref()
                .map(|r| r.to_string())
                .unwrap_or_else(|| "-".into());
            println!("status: {:?}", report.status);
            println!("ratio: {ratio}");
            if let Some(e) = &report.error {
                println!("note: {e}");
            }
            if let Some(path) = &out {
                write_json(&report, Some(path))?;
            }
            Ok(u8::from(matches!(report.status, Status::Fail)))
        }
        Command::Sweep { config, out } => {
            let report = run_sweep_file(&config)?;
            let s = &report.summary;
            println!(
                "total {} passed {} failed {} skipped {} degenerate {}",
                s.total, s.passed, s.failed, s.skipped, s.degenerate
            );
            write_json(&report, out.as_ref())?;
            Ok(u8::from(!report.all_passed()))
        }
        Command::Brauer { group, index } => {
            let text = std::fs::read_to_string(&group)
                .map_err(|e| Error::Parse(format!("{}: {e}", group.display())))?;
            let g = Arc::new(parse_group(&text)?);
            let irr = irreducible_characters(&g)?;
            let target = irr.get(index).ok_or_else(|| {
                Error::OutOfRange(format!("character index {index}, group has {}", irr.len()))
            })?;
            let dec = brauer_decompose(target)?;
            println!("|G| = {}, {} irreducible characters", g.order(), irr.len());
            let values: Vec<String> = target.values().iter().map(|v| v.to_string()).collect();
            println!("chi_{index} = [{}]", values.join(", "));
            for t in dec.summary(&g) {
                println!(
                    "{} * Ind from subgroup #{} (order {}, index {}) of [{}]",
                    t.coefficient,
                    t.subgroup,
                    t.subgroup_order,
                    t.index,
                    t.character.join(" ")
                );
            }
            let ok = dec.reconstruct(&g)?.values() == target.values()
                && dimension_identity_check(&g, &dec, target);
            println!("reconstruction: {}", if ok { "exact" } else { "FAILED" });
            Ok(u8::from(!ok))
        }
    }
}
