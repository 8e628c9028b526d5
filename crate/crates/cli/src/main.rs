mod render;

use std::collections::BTreeMap;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use drinfeld_core::carlitz::Carlitz;
use drinfeld_core::eigencoeff::{closed_form_coeff, universal_solution, vanishing_predicate, Multiset};
use drinfeld_core::forms::{double_cuspidal_basis, eigenform_search, FormExpr, Forms};
use drinfeld_core::hecke::{eigen_check, hecke_apply, DegOnePrime};
use drinfeld_core::{parse_poly, parse_ratk, Error, PolyA, PrimeField, TSeries};
use serde_json::json;

use render::Render;

#[derive(Parser, Debug)]
#[command(name = "drinfeld", version, about = "Exact t-expansions of Drinfeld modular forms over F_q[θ]")]
struct Cli {
    /// Size of the constant field (a prime).
    #[arg(long, global = true, default_value_t = 3)]
    q: u32,
    /// Working precision: series are exact below t^prec.
    #[arg(long, global = true, default_value_t = 32, value_parser = clap::value_parser!(u64).range(2..))]
    prec: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Render θ as "T" in text output.
    #[arg(long, global = true)]
    ascii: bool,
    /// Worker threads (defaults to the number of cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Expand a form such as "Delta", "h^2 g^2" or "f_{22,4}".
    Expand { form: String },
    /// Apply the Hecke operator at the prime θ + c.
    Hecke {
        form: String,
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        prime: i64,
    },
    /// Check T_𝔭 f = λ f below the certified precision.
    EigenCheck {
        form: String,
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        prime: i64,
        /// Eigenvalue exponents N; λ = 𝔭^{1 + Σ q^{N_i}}.
        #[arg(long = "N", conflicts_with = "lambda")]
        n: Option<Multiset>,
        /// Explicit eigenvalue in A.
        #[arg(long)]
        lambda: Option<String>,
    },
    /// Closed-form value of a_{1+q^ν} from a_{1+ℓ}.
    Eigencoeff {
        #[arg(long)]
        nu: Multiset,
        #[arg(long = "N")]
        n: Multiset,
        /// The base coefficient a_{1+ℓ}.
        #[arg(long, default_value = "1")]
        base: String,
    },
    /// Whether the closed form forces a_{1+q^ν} = 0.
    Vanish {
        #[arg(long)]
        nu: Multiset,
        #[arg(long = "N")]
        n: Multiset,
    },
    /// The universal polynomial solution of the coefficient recurrence.
    Universal {
        #[arg(long)]
        nu: Multiset,
        /// Also verify the recurrence and translation invariance.
        #[arg(long)]
        check: bool,
    },
    /// The Goss polynomial G_n of the Carlitz lattice.
    Goss {
        #[arg(long)]
        n: usize,
    },
    /// Normalized eigenforms in the double-cuspidal space of weight k, type m.
    Search {
        #[arg(long)]
        k: u32,
        #[arg(long, default_value_t = 0)]
        m: u32,
        #[arg(long = "N")]
        n: Multiset,
    },
}

/// A failure carrying the process exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. } | Error::NotPrime(_) => 2,
            Error::InsufficientPrecision { .. } => 4,
            _ => 3,
        };
        Failure { code, message: e.to_string() }
    }
}

fn eigenvalue(field: PrimeField, p: DegOnePrime, n: &Multiset) -> Result<PolyA, Error> {
    let exp = 1 + n.q_power_sum(field.q())?;
    Ok(p.poly().pow(exp))
}

fn run(cli: &Cli) -> Result<(String, bool), Failure> {
    let field = PrimeField::new(cli.q)?;
    let prec = cli.prec as usize;
    let out = Render { format: cli.format, var: if cli.ascii { "T" } else { "θ" } };
    let forms = || Forms::new(field);
    let eval = |text: &str| -> Result<TSeries, Error> { FormExpr::parse(field, text)?.eval(&forms(), prec) };
    let text = match &cli.command {
        Command::Expand { form } => out.series(&eval(form)?),
        Command::Hecke { form, prime } => {
            let f = eval(form)?;
            let p = DegOnePrime::new(field, *prime);
            let weight = f.meta().map_or(0, |m| m.weight);
            out.hecke(&hecke_apply(&f, p, weight)?)
        }
        Command::EigenCheck { form, prime, n, lambda } => {
            let f = eval(form)?;
            let p = DegOnePrime::new(field, *prime);
            let lam = match (n, lambda) {
                (Some(n), None) => eigenvalue(field, p, n)?,
                (None, Some(text)) => parse_poly(field, text)?,
                _ => return Err(Failure { code: 2, message: "give exactly one of --N and --lambda".into() }),
            };
            let weight = f.meta().map_or(0, |m| m.weight);
            let report = eigen_check(&f, p, weight, &lam)?;
            return Ok((out.eigen_check(&report, &lam), report.holds()));
        }
        Command::Eigencoeff { nu, n, base } => {
            let base = parse_ratk(field, base)?;
            out.value(&closed_form_coeff(field, nu, n, &base)?.to_text(out.var_or_json()))
        }
        Command::Vanish { nu, n } => {
            let vanishes = vanishing_predicate(nu, n)?;
            match out.format {
                Format::Text => format!("{vanishes}\n"),
                Format::Json => format!("{}\n", json!(vanishes)),
            }
        }
        Command::Universal { nu, check } => {
            if nu.len() >= cli.q as usize {
                return Err(Error::LengthExceedsQMinus1 { len: nu.len(), q: cli.q }.into());
            }
            let solution = universal_solution(field, nu)?;
            let verdict = if *check {
                let mut family = BTreeMap::new();
                for mask in 0..(1u32 << nu.len()) {
                    let m = nu.nu_plus(mask);
                    let s = universal_solution(field, &m)?;
                    family.insert(m, s);
                }
                let recurrence = drinfeld_core::eigencoeff::recurrence_check(field, &family, nu)?;
                Some(recurrence && solution.d1().is_zero())
            } else {
                None
            };
            let text = out.universal(&solution, verdict);
            return Ok((text, verdict != Some(false)));
        }
        Command::Goss { n } => {
            let g = Carlitz::new(field).goss_poly(*n)?;
            match out.format {
                Format::Text => format!("{}\n", g.to_text(out.var)),
                Format::Json => format!("{}\n", serde_json::to_string(&g.to_json()).expect("serializable")),
            }
        }
        Command::Search { k, m, n } => {
            let basis = double_cuspidal_basis(&forms(), *k, *m, prec)?;
            let lam = eigenvalue(field, DegOnePrime::theta(field), n)?;
            let found = eigenform_search(&basis, &lam)?;
            out.forms(&found.into_iter().map(|e| e.series).collect::<Vec<_>>())
        }
    };
    Ok((text, true))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok((text, passed)) => {
            print!("{text}");
            if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
