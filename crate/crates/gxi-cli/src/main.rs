mod commands;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(name = "gxi", version, about = "Exact G-crossed braided categories and twisted induction")]
struct Cli {
    #[command(flatten)]
    opts: GlobalOpts,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalOpts {
    /// Emit one machine-readable JSON document on stdout.
    #[arg(long, global = true)]
    pub json: bool,
    /// Floating-point mode with tolerance --tol.
    #[arg(long, global = true)]
    pub approx: bool,
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tol: f64,
    /// Skip structural validation on load.
    #[arg(long, global = true)]
    pub no_validate: bool,
    /// Setting name; defaults to the first one in the file.
    #[arg(long, global = true)]
    pub setting: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run every structural check, plus the expected-results table if present.
    Validate { file: String },
    /// Build an induced sector and show its half-braiding.
    Induce {
        file: String,
        #[arg(long)]
        g: Option<String>,
        #[arg(long)]
        lambda: String,
        #[arg(long, default_value = "+", value_parser = ["+", "-"])]
        chirality: String,
    },
    /// Dimension of the intertwiner space between two induced sectors.
    Homdim {
        file: String,
        #[arg(long)]
        g: Option<String>,
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        mu: String,
        #[arg(long, default_value = "+", value_parser = ["+", "-"])]
        chirality: String,
    },
    /// Irreducible g-twisted representations of the extension.
    Sectors {
        file: String,
        #[arg(long)]
        g: String,
    },
    /// Run the induction theorem suites.
    Theorems {
        file: String,
        #[arg(long, default_value = "all")]
        suite: String,
    },
    /// Built-in instances.
    Catalog {
        #[command(subcommand)]
        action: CatalogCmd,
    },
}

#[derive(Subcommand, Debug)]
enum CatalogCmd {
    List,
    /// Write an entry's instance file; `-` for stdout.
    Export { name: String, path: PathBuf },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    if let Some(n) = std::env::var("GXI_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    let o = &cli.opts;
    let started = std::time::Instant::now();
    let res = match cli.cmd {
        Command::Validate { file } => commands::validate(o, &file),
        Command::Induce {
            file,
            g,
            lambda,
            chirality,
        } => commands::induce(o, &file, g.as_deref(), &lambda, &chirality),
        Command::Homdim {
            file,
            g,
            lambda,
            mu,
            chirality,
        } => commands::homdim(o, &file, g.as_deref(), &lambda, &mu, &chirality),
        Command::Sectors { file, g } => commands::sectors(o, &file, &g),
        Command::Theorems { file, suite } => commands::theorems(o, &file, &suite),
        Command::Catalog { action } => match action {
            CatalogCmd::List => commands::catalog_list(o),
            CatalogCmd::Export { name, path } => commands::catalog_export(o, &name, &path),
        },
    };
    let code = match res {
        Ok(out) => {
            let code = if out.passed { 0 } else { 1 };
            out.emit(o.json);
            code
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            e.code
        }
    };
    if !o.json {
        eprintln!("elapsed: {:.2}s", started.elapsed().as_secs_f64());
    }
    ExitCode::from(code)
}
