use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use seshadri_core::fan::FanOfMonoids;
use seshadri_core::gorenstein::LinearBondData;
use seshadri_core::valuation::{BasisExpansionBackend, RingElement, TableBackend};

use crate::error::CliError;
use crate::io::{load_stratification, read_json, OracleFile, ValuationTableFile};
use crate::report::{
    GammaReport, GbReport, GorensteinReport, KoszulReport, LiftReport, Sl3Report, ToricReport,
    ValidateReport, ValuateReport, WpsReport,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "seshadri",
    version,
    about = "Seshadri stratifications, fans of monoids and their algebras"
)]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Print subduction traces.
    #[arg(short, long, global = true)]
    pub verbose: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the axioms of a stratification file.
    Validate {
        #[arg(long)]
        input: PathBuf,
    },
    /// Indecomposables of the fan and per-chain saturation.
    Gamma {
        #[arg(long)]
        input: PathBuf,
        /// Degree bound for the saturation check.
        #[arg(long, default_value_t = 3)]
        bound: u32,
    },
    /// Reduced Groebner basis of the fan algebra presentation.
    SemitoricGb {
        #[arg(long)]
        input: PathBuf,
        /// Relations are generated up to this degree [default: twice the
        /// largest generator degree].
        #[arg(long)]
        degree: Option<u32>,
    },
    /// Lift the semi-toric basis to relations of a ring given by an evaluation oracle.
    Lift {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        oracle: PathBuf,
        /// As for `semitoric-gb`.
        #[arg(long)]
        degree: Option<u32>,
    },
    /// Decide whether the reduced Groebner basis is quadratic.
    Koszul {
        #[arg(long)]
        input: PathBuf,
        /// Relations are generated up to this degree [default: three times
        /// the largest generator degree].
        #[arg(long)]
        degree: Option<u32>,
    },
    /// Gorenstein criterion for a linear poset, bonds listed from the top.
    Gorenstein {
        #[arg(long, value_delimiter = ',', required = true)]
        bonds: Vec<u32>,
    },
    /// Gorenstein Fano weighted projective 3-spaces and their singular loci.
    Wps,
    /// The SL3/B example end to end.
    Sl3Demo,
    /// The toric example end to end.
    ToricDemo,
    /// Quasi-valuation of a ring element, from a table of generator values
    /// (monomials only) or from an evaluation oracle.
    Valuate {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, conflicts_with = "oracle", required_unless_present = "oracle")]
        table: Option<PathBuf>,
        #[arg(long)]
        oracle: Option<PathBuf>,
        /// Polynomial in the generator variables, e.g. `y_a*y_b - 2 y_c^2`.
        #[arg(long)]
        element: String,
    },
}

/// Text and JSON output of a command.
pub struct Output {
    pub text: String,
    pub json: serde_json::Value,
    /// Exit status 1 without an error message, e.g. an invalid stratification.
    pub failed: bool,
}

fn out<T: Serialize>(r: &T, text: String) -> Output {
    Output {
        text,
        json: serde_json::to_value(r).expect("reports serialize"),
        failed: false,
    }
}

fn backend_images(
    fan: &FanOfMonoids,
    oracle: &Path,
    degree: u32,
) -> Result<BasisExpansionBackend, CliError> {
    let file: OracleFile = read_json(oracle)?;
    let images = file.images_for(fan)?;
    Ok(BasisExpansionBackend::new(fan.clone(), images, degree)?)
}

fn table_backend(fan: &FanOfMonoids, path: &Path) -> Result<TableBackend, CliError> {
    let file: ValuationTableFile = read_json(path)?;
    let poset = fan.poset();
    let ids: Vec<String> = fan.monoids().iter().map(|m| m.chain.id(poset)).collect();
    if let Some(g) = file.keys().find(|g| fan.index_of_name(g).is_none()) {
        return Err(CliError::Input(format!(
            "table names unknown generator `{g}`"
        )));
    }
    let mut table = Vec::new();
    for name in fan.names() {
        let row = file
            .get(name)
            .ok_or_else(|| CliError::Input(format!("table has no row for `{name}`")))?;
        if let Some(c) = row.keys().find(|c| !ids.contains(c)) {
            return Err(CliError::Input(format!("`{c}` is not a maximal chain")));
        }
        let vals = ids
            .iter()
            .map(|id| {
                row.get(id)
                    .ok_or_else(|| {
                        CliError::Input(format!("no value of `{name}` on chain `{id}`"))
                    })?
                    .to_element(poset)
            })
            .collect::<Result<Vec<_>, _>>()?;
        table.push(vals);
    }
    Ok(TableBackend::new(fan.clone(), table))
}

fn max_weight(fan: &FanOfMonoids) -> u32 {
    fan.weights().iter().copied().max().unwrap_or(1)
}

pub fn execute(cli: &Cli) -> Result<Output, CliError> {
    let verbose = cli.verbose;
    match &cli.command {
        Command::Validate { input } => {
            let l = load_stratification(input)?;
            let r = ValidateReport::new(&l.poset);
            let mut o = out(&r, r.to_string());
            o.failed = !r.valid;
            Ok(o)
        }
        Command::Gamma { input, bound } => {
            let fan = load_stratification(input)?.fan(*bound)?;
            let r = GammaReport::new(&fan, *bound);
            Ok(out(&r, r.to_string()))
        }
        Command::SemitoricGb { input, degree } => {
            let fan = load_stratification(input)?.fan(3)?;
            let (r, _) = GbReport::new(&fan, degree.unwrap_or(2 * max_weight(&fan)))?;
            Ok(out(&r, r.to_string()))
        }
        Command::Lift {
            input,
            oracle,
            degree,
        } => {
            let fan = load_stratification(input)?.fan(3)?;
            let (_, gb) = GbReport::new(&fan, degree.unwrap_or(2 * max_weight(&fan)))?;
            let top = gb
                .polys
                .iter()
                .filter_map(|p| p.homogeneous_degree(fan.weights()))
                .max()
                .unwrap_or(1);
            let top = u32::try_from(top).map_err(|_| CliError::Domain("degree overflow".into()))?;
            let backend = backend_images(&fan, oracle, top)?;
            let r = LiftReport::new(&gb, &backend)?;
            Ok(out(&r, r.text(verbose)))
        }
        Command::Koszul { input, degree } => {
            let fan = load_stratification(input)?.fan(3)?;
            let r = KoszulReport::new(&fan, degree.unwrap_or(3 * max_weight(&fan)))?;
            Ok(out(&r, r.to_string()))
        }
        Command::Gorenstein { bonds } => {
            let r = GorensteinReport::new(
                &LinearBondData::new(bonds.clone()).map_err(|e| CliError::Input(e.to_string()))?,
            );
            Ok(out(&r, r.to_string()))
        }
        Command::Wps => {
            let r = WpsReport::new();
            Ok(out(&r, r.to_string()))
        }
        Command::Sl3Demo => {
            let r = Sl3Report::new()?;
            Ok(out(&r, r.text(verbose)))
        }
        Command::ToricDemo => {
            let r = ToricReport::new()?;
            Ok(out(&r, r.text(verbose)))
        }
        Command::Valuate {
            input,
            table,
            oracle,
            element,
        } => {
            let fan = load_stratification(input)?.fan(3)?;
            let poly = fan
                .variable_set()
                .parse(element)
                .map_err(|e| CliError::Input(format!("element: {e}")))?;
            let g = RingElement::new(poly, fan.weights())
                .map_err(|e| CliError::Input(format!("element: {e}")))?;
            let r = match (table, oracle) {
                (Some(t), _) => ValuateReport::new(&table_backend(&fan, t)?, &g, element)?,
                (None, Some(o)) => {
                    let d = u32::try_from(g.degree().max(1))
                        .map_err(|_| CliError::Input("element degree too large".into()))?;
                    ValuateReport::new(&backend_images(&fan, o, d)?, &g, element)?
                }
                (None, None) => return Err(CliError::Input("give --table or --oracle".into())),
            };
            Ok(out(&r, r.to_string()))
        }
    }
}

pub fn render(cli: &Cli, o: &Output) -> String {
    match cli.format {
        Format::Text => o.text.clone(),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&o.json).expect("json values print");
            s.push('\n');
            s
        }
    }
}

/// Parses the arguments, runs the command and prints the result. Exit codes:
/// 0 success, 1 domain failure, 2 bad input.
pub fn run() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(o) => {
            print!("{}", render(&cli, &o));
            ExitCode::from(u8::from(o.failed))
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
