use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use ribbon_core::field::FieldSpec;

mod commands;

#[derive(Parser, Debug)]
#[command(name = "ribbon", version, about = "Complete gentle quivers, ribbon graph orders and Brauer graph algebras")]
struct Cli {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for the oracle's random search.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Largest algebra dimension the oracle will attempt.
    #[arg(long, global = true, default_value_t = 256)]
    budget: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Input {
    /// Spec file path, or `corpus:NAME` for a built-in instance.
    file: String,
}

#[derive(Args, Debug, Clone)]
struct AlgebraArgs {
    #[command(flatten)]
    input: Input,
    /// gf2, gf3, gf5, any gfP, or Q.
    #[arg(long, value_parser = parse_field)]
    field: FieldSpec,
    /// Uniform multiplicity, overriding the file.
    #[arg(short = 'm', long = "multiplicity")]
    multiplicity: Option<u32>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check that the input is a complete gentle quiver.
    Validate(Input),
    /// Ribbon graph: nodes, cyclic orders and a bipartiteness certificate.
    Graph {
        #[command(flatten)]
        input: Input,
        /// Print the graph as a `ribbon_graph` block.
        #[arg(long)]
        ribbon: bool,
    },
    /// Canonical basis of the order and the rank formula.
    Basis(Input),
    /// Nonzero values of the Frobenius form on basis pairs and the ν-symmetry check.
    Frobenius(Input),
    /// Cartan matrix, its rank and the bipartiteness criterion.
    Cartan(Input),
    /// Build a finite-dimensional quotient and run the symmetry oracle.
    Quotient {
        #[command(flatten)]
        args: AlgebraArgs,
        /// Λ/zΛ with anticommuting cycle powers (default).
        #[arg(long, conflicts_with = "untwisted")]
        twisted: bool,
        /// The Brauer graph algebra, with commuting cycle powers.
        #[arg(long)]
        untwisted: bool,
    },
    /// Evaluate the six symmetry conditions.
    Decide(AlgebraArgs),
    /// Run the decider over the built-in instances.
    Corpus {
        /// Fields to run, comma separated.
        #[arg(long, value_delimiter = ',', value_parser = parse_field, default_value = "gf2,gf3,gf5,Q")]
        fields: Vec<FieldSpec>,
        /// Uniform multiplicities to run, comma separated.
        #[arg(short = 'm', long = "multiplicities", value_delimiter = ',', default_value = "1")]
        multiplicities: Vec<u32>,
    },
    /// Period of every arrow under a ↦ ι(σ(a)).
    Resolve(Input),
}

fn parse_field(s: &str) -> Result<FieldSpec, String> {
    s.parse().map_err(|e: ribbon_core::field::FieldError| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let opts = commands::Options { json: cli.json, seed: cli.seed, budget: cli.budget };
    let result = match cli.command {
        Command::Validate(i) => commands::validate(&i.file, &opts),
        Command::Graph { input, ribbon } => commands::graph(&input.file, ribbon, &opts),
        Command::Basis(i) => commands::basis(&i.file, &opts),
        Command::Frobenius(i) => commands::frobenius(&i.file, &opts),
        Command::Cartan(i) => commands::cartan(&i.file, &opts),
        Command::Quotient { args, untwisted, .. } => {
            commands::quotient(&args.input.file, args.field, args.multiplicity, untwisted, &opts)
        }
        Command::Decide(args) => commands::decide(&args.input.file, args.field, args.multiplicity, &opts),
        Command::Corpus { fields, multiplicities } => commands::corpus(&fields, &multiplicities, &opts),
        Command::Resolve(i) => commands::resolve(&i.file, &opts),
    };
    match result {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}
