//! `disres`: exact discrete residues, summability certificates, and
//! telescoping over Q(x) from the command line.

mod parser;
mod render;

use clap::{Parser as ClapParser, Subcommand};
use serde_json::json;

use disres_core::qpoly::Rat;
use disres_core::{dispersion, galois, qpoly, residues, telescope, Error as CoreError, Poly, RatFun};
use parser::{parse_ratfun, ParseError};
use render::Rendered;

#[derive(ClapParser)]
#[command(
    name = "disres",
    version,
    about = "Discrete residues, rational summability, and creative telescoping over Q(x)",
    arg_required_else_help = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Emit JSON on stdout instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Variable name used in the input expressions.
    #[arg(long, global = true, default_value = "x")]
    var: String,
}

#[derive(Subcommand)]
enum Command {
    /// Split into pole-order components f_1, ..., f_m.
    Hermite { expr: String },
    /// Autodispersion set of a polynomial.
    Shiftset { expr: String },
    /// Reduced form and certificate of a simple-pole rational function.
    Reduce { expr: String },
    /// Rational system of discrete residues (B_k, D_k).
    Dres { expr: String },
    /// Shared residue system of several inputs over one common B.
    Dresplus {
        #[arg(required = true, num_args = 1..)]
        exprs: Vec<String>,
    },
    /// Decide rational summability, with certificate.
    Summable { expr: String },
    /// Basis of the rational vectors v with sum_i v_i f_i summable.
    Vspace {
        #[arg(required = true, num_args = 1..)]
        exprs: Vec<String>,
    },
    /// Differential creative telescoping operator tuples.
    Telescope {
        #[arg(required = true, num_args = 1..)]
        exprs: Vec<String>,
        /// Uniform order bound; omit to compute the generating set with the
        /// per-coordinate bounds ord(L_i) <= m - m_i.
        #[arg(long)]
        beta: Option<u32>,
    },
    /// Relation lattice and witnesses of a diagonal difference system.
    #[command(name = "galois-diag")]
    GaloisDiag {
        #[arg(required = true, num_args = 1..)]
        exprs: Vec<String>,
        /// Trial division bound used to factor the epsilon constants.
        #[arg(long, default_value_t = galois::DEFAULT_TRIAL_DIVISION_BOUND)]
        trial_division_bound: u64,
    },
}

enum CliError {
    Parse(ParseError),
    Core(CoreError),
    Domain(String),
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> CliError {
        CliError::Parse(e)
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> CliError {
        CliError::Core(e)
    }
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Core(e) if e.is_internal() => 4,
            CliError::Core(_) | CliError::Domain(_) => 3,
        }
    }

    fn code(&self) -> &'static str {
        match self {
            CliError::Parse(e) => e.code(),
            CliError::Core(e) => e.code(),
            CliError::Domain(_) => "invalid_input",
        }
    }

    fn detail(&self) -> String {
        match self {
            CliError::Parse(e) => e.to_string(),
            CliError::Core(e) => e.to_string(),
            CliError::Domain(d) => d.clone(),
        }
    }
}

fn parse_all(exprs: &[String], var: &str) -> Result<Vec<RatFun>, CliError> {
    exprs.iter().map(|e| Ok(parse_ratfun(e, var)?)).collect()
}

/// Strips the polynomial part, requiring a nonzero proper remainder.
fn proper_nonzero(f: &RatFun) -> Result<(Poly, RatFun), CliError> {
    let (pp, proper) = f.proper_split();
    if proper.is_zero() {
        return Err(CliError::Core(CoreError::ZeroInput));
    }
    Ok((pp, proper))
}

fn run(cli: &Cli) -> Result<Rendered, CliError> {
    let var = cli.var.as_str();
    match &cli.command {
        Command::Hermite { expr } => {
            let f = parse_ratfun(expr, var)?;
            let (pp, proper) = proper_nonzero(&f)?;
            let list = disres_core::hermite::hermite_list(&proper)?;
            Ok(render::render_hermite(&list.components, &pp, var))
        }
        Command::Shiftset { expr } => {
            let f = parse_ratfun(expr, var)?;
            if !f.is_polynomial() {
                return Err(CliError::Domain(
                    "shiftset expects a polynomial input".into(),
                ));
            }
            let b = f.num().clone();
            if b.is_zero() {
                return Err(CliError::Core(CoreError::ZeroInput));
            }
            let sf = qpoly::squarefree_part(&b)?;
            let set = dispersion::shift_set(&sf)?;
            Ok(render::render_shiftset(&set.shifts))
        }
        Command::Reduce { expr } => {
            let f = parse_ratfun(expr, var)?;
            let out = disres_core::reduce::simple_reduction(&f)?;
            Ok(render::render_reduce(&out.reduced, &out.certificate, var))
        }
        Command::Dres { expr } => {
            let f = parse_ratfun(expr, var)?;
            let (pp, proper) = proper_nonzero(&f)?;
            let sys = residues::discrete_residues(&proper)?;
            Ok(render::render_dres(&sys, &pp, var))
        }
        Command::Dresplus { exprs } => {
            let fs = parse_all(exprs, var)?;
            let mut parts = Vec::with_capacity(fs.len());
            let mut propers = Vec::with_capacity(fs.len());
            for (i, f) in fs.iter().enumerate() {
                let (pp, proper) = f.proper_split();
                if proper.is_zero() {
                    return Err(CliError::Core(CoreError::ZeroInputAt(i)));
                }
                parts.push(pp);
                propers.push(proper);
            }
            let sys = residues::discrete_residues_plus(&propers)?;
            Ok(render::render_dresplus(&sys, &parts, var))
        }
        Command::Summable { expr } => {
            let f = parse_ratfun(expr, var)?;
            let (pp, proper) = f.proper_split();
            let verdict = telescope::is_summable(&proper)?;
            Ok(render::render_summable(&verdict, &pp, var))
        }
        Command::Vspace { exprs } => {
            let fs = parse_all(exprs, var)?;
            let propers: Vec<RatFun> = fs.iter().map(|f| f.proper_split().1).collect();
            let basis = telescope::vspace_basis(&propers)?;
            let rows: Vec<Vec<String>> = basis
                .iter()
                .map(|row| row.iter().map(Rat::to_string).collect())
                .collect();
            Ok(render::render_vspace(&rows))
        }
        Command::Telescope { exprs, beta } => {
            let fs = parse_all(exprs, var)?;
            let propers: Vec<RatFun> = fs.iter().map(|f| f.proper_split().1).collect();
            let (tuples, label) = match beta {
                Some(b) => (telescope::wspace_bounded(&propers, *b)?, "bounded basis"),
                None => (telescope::wspace_generators(&propers)?, "generators"),
            };
            Ok(render::render_telescope(&tuples, label))
        }
        Command::GaloisDiag {
            exprs,
            trial_division_bound,
        } => {
            let rs = parse_all(exprs, var)?;
            let sys = galois::DiagonalSystem { rs };
            let data = galois::diagonal_relations(&sys)?;
            let eps: Vec<Rat> = data.witnesses.iter().map(|w| w.epsilon.clone()).collect();
            let relations = galois::multiplicative_relations(&eps, *trial_division_bound)?;
            Ok(render::render_galois_diag(&data, &relations, var))
        }
    }
}

fn main() {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(rendered) => {
            if cli.json {
                println!("{}", serde_json::to_string(&rendered.json).expect("serialize"));
            } else {
                print!("{}", rendered.text);
            }
        }
        Err(err) => {
            if cli.json {
                let obj = json!({ "error": err.code(), "detail": err.detail() });
                eprintln!("{}", serde_json::to_string(&obj).expect("serialize"));
            } else {
                eprintln!("error: {}", err.detail());
            }
            std::process::exit(err.exit_code());
        }
    }
}
