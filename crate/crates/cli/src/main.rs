use std::io::{self, BufWriter, Write};
use std::path::Path;
use std::process::ExitCode;

use capsid_core::fixed::{
    count_fixed_trees_direct, enumerate_block_systems, generate_fixed_trees_on,
};
use capsid_core::lattice::SubgroupLattice;
use capsid_core::pathways::{
    icosahedral_report, pathway_probabilities, pathway_size_distribution_bounded,
};
use capsid_core::perm::{builtin, parse_group, PermGroup, Permutation, DEFAULT_MAX_GROUP_ORDER};
use capsid_core::series::{tree_count, SeriesSolver};
use capsid_core::stabilizer::{fixes, stabilizer};
use capsid_core::trees::{enumerate_all_trees, AssemblyTree};
use capsid_core::Error;
use clap::{Parser, Subcommand, ValueEnum};

const BOUND_VAR: &str = "CAPSID_MAX_GROUP_ORDER";

/// Symmetry analysis of assembly trees under permutation groups.
///
/// GROUP is a builtin name (klein4, icosahedral, cyclic:k, trivial:n) or
/// the path of a file holding a `degree N` line followed by one generator
/// per line in cycle notation, e.g. `(1 2)(3 4)`. Lines starting with `#`
/// are comments.
///
/// Trees are written with nested parentheses and comma-separated leaves,
/// e.g. `((1,2),3,4)`. Big integers are printed in full.
///
/// The environment variable CAPSID_MAX_GROUP_ORDER overrides the largest
/// group order for which subgroups are enumerated (default 120).
#[derive(Parser, Debug)]
#[command(name = "capsid", version)]
struct Cli {
    /// Output format of tabular commands.
    #[arg(long, value_enum, global = true, default_value_t = Format::Plain)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    /// Space-aligned columns.
    Plain,
    /// Comma-separated values with a header row.
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Prints `true` if PERM fixes TREE, `false` otherwise.
    Fixes {
        #[arg(long)]
        group: String,
        /// Permutation in cycle notation.
        #[arg(long)]
        perm: String,
        #[arg(long)]
        tree: String,
    },
    /// Generators, order and orbit size of the stabilizer of TREE.
    Stabilizer {
        #[arg(long)]
        group: String,
        #[arg(long)]
        tree: String,
    },
    /// All trees on the group's points fixed by the whole group.
    FixedTrees {
        #[arg(long)]
        group: String,
        /// Print only the number of trees.
        #[arg(long)]
        count_only: bool,
        /// Give up once more than this many trees are produced.
        #[arg(long, default_value_t = 1_000_000)]
        limit: usize,
    },
    /// Table of n and t_n(G), the number of trees on n orbits fixed by G.
    Series {
        #[arg(long)]
        group: String,
        #[arg(long)]
        order: usize,
        /// Also print the EGF coefficient t_n/n! as an exact fraction.
        #[arg(long)]
        egf: bool,
    },
    /// Pathway sizes m, their counts N(m) and the probability of each.
    Pathways {
        #[arg(long)]
        group: String,
    },
    /// Stabilizer table and pathway distribution of the icosahedral group,
    /// followed by the Möbius matrix as CSV.
    IcosaReport {
        /// T-number of the capsid; the group acts on 60·T facets.
        #[arg(long, default_value_t = 1)]
        t: usize,
    },
    /// Block systems compatible with the group.
    Blocks {
        #[arg(long)]
        group: String,
    },
    /// Möbius function of the subgroup lattice.
    Mobius {
        #[arg(long)]
        group: String,
    },
    /// All assembly trees on 1..=N (at most 9 leaves unless counting).
    EnumerateTrees {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        count_only: bool,
    },
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("cannot read group file `{path}`: {source}")]
    GroupFile { path: String, source: io::Error },
    #[error("{BOUND_VAR} must be a positive integer, found `{0}`")]
    BadBound(String),
    #[error("{0}")]
    Usage(String),
    #[error("write failed: {0}")]
    Io(#[from] io::Error),
}

type CliResult<T> = Result<T, CliError>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let text = e.to_string();
            let line = text.lines().next().unwrap_or("error: invalid arguments");
            eprintln!("{line}");
            return ExitCode::from(2);
        }
    };

    std::panic::set_hook(Box::new(|_| {}));
    let outcome = std::panic::catch_unwind(|| {
        let stdout = io::stdout();
        let mut out = BufWriter::new(stdout.lock());
        run(&cli, &mut out).and_then(|()| Ok(out.flush()?))
    });
    match outcome {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(CliError::Io(e))) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Ok(Err(e)) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
        Err(_) => {
            eprintln!("error: internal failure");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: &Cli, out: &mut impl Write) -> CliResult<()> {
    let bound = group_order_bound()?;
    let format = cli.format;
    match &cli.command {
        Command::Fixes { group, perm, tree } => {
            let g = load_group(group)?;
            let tau = parse_tree(tree)?;
            let x = Permutation::parse(perm, g.degree())?;
            if !g.contains(&x) {
                return Err(CliError::Usage(format!(
                    "{x} is not an element of the group"
                )));
            }
            writeln!(out, "{}", fixes(&x, &tau)?)?;
        }
        Command::Stabilizer { group, tree } => {
            let g = load_group(group)?;
            let tau = parse_tree(tree)?;
            let res = stabilizer(&g, &tau)?;
            let gens: Vec<String> = res.generators.iter().map(ToString::to_string).collect();
            let gens = if gens.is_empty() {
                "()".to_string()
            } else {
                gens.join(" ")
            };
            writeln!(out, "generators: {gens}")?;
            writeln!(out, "order: {}", res.group.order())?;
            writeln!(out, "orbit size: {}", res.orbit_size(&g))?;
        }
        Command::FixedTrees {
            group,
            count_only,
            limit,
        } => {
            let g = load_group(group)?;
            check_bound(&g, bound.min(DEFAULT_MAX_GROUP_ORDER))?;
            if *count_only {
                writeln!(out, "{}", count_fixed_trees_direct(&g, *limit)?)?;
            } else {
                let points: Vec<u32> = (1..=g.degree() as u32).collect();
                for tau in generate_fixed_trees_on(&g, &points, *limit)?.trees {
                    writeln!(out, "{tau}")?;
                }
            }
        }
        Command::Series { group, order, egf } => {
            let g = load_group(group)?;
            check_bound(&g, bound)?;
            if *order == 0 {
                return Err(CliError::Usage("--order must be at least 1".into()));
            }
            if !g.is_simple_action() {
                return Err(Error::NonSimpleAction.into());
            }
            let mut solver = SeriesSolver::new(bound);
            let series = solver.series(&g, *order)?;
            let counts = series.counts()?;
            let mut header = vec!["n", "t_n"];
            if *egf {
                header.push("egf");
            }
            let rows = (1..=*order)
                .map(|n| {
                    let mut row = vec![n.to_string(), counts[n].to_string()];
                    if *egf {
                        row.push(series.coeff(n).to_string());
                    }
                    row
                })
                .collect::<Vec<_>>();
            write_table(out, format, &header, &rows)?;
        }
        Command::Pathways { group } => {
            let g = load_group(group)?;
            check_bound(&g, bound)?;
            let d = pathway_size_distribution_bounded(&g, bound)?;
            let rows: Vec<Vec<String>> = pathway_probabilities(&d)
                .into_iter()
                .map(|p| {
                    vec![
                        p.size.to_string(),
                        p.multiplicity.to_string(),
                        p.probability.to_string(),
                    ]
                })
                .collect();
            write_table(out, format, &["m", "N(m)", "probability"], &rows)?;
            if format == Format::Plain {
                writeln!(out, "total pathways: {}", d.pathway_count())?;
            }
        }
        Command::IcosaReport { t } => {
            check_bound(&builtin::alternating5(), bound)?;
            let report = icosahedral_report(*t)?;
            write!(out, "{}", report.render())?;
            writeln!(out)?;
            writeln!(out, "mobius")?;
            write!(out, "{}", report.mobius_csv())?;
        }
        Command::Blocks { group } => {
            let g = load_group(group)?;
            check_bound(&g, bound.min(DEFAULT_MAX_GROUP_ORDER))?;
            let systems = enumerate_block_systems(&g)?;
            let mut blocks: Vec<&Vec<u32>> = systems.iter().flat_map(|s| s.blocks()).collect();
            blocks.sort();
            blocks.dedup();
            for s in &systems {
                writeln!(out, "{s}")?;
            }
            writeln!(
                out,
                "{} block systems, {} distinct blocks",
                systems.len(),
                blocks.len()
            )?;
        }
        Command::Mobius { group } => {
            let g = load_group(group)?;
            check_bound(&g, bound)?;
            let lattice = SubgroupLattice::build_bounded(&g, bound)?;
            let csv = lattice.mobius_csv();
            match format {
                Format::Csv => write!(out, "{csv}")?,
                Format::Plain => {
                    let mut lines = csv
                        .lines()
                        .map(|l| l.split(',').map(str::to_string).collect::<Vec<_>>());
                    let header = lines.next().unwrap_or_default();
                    let header: Vec<&str> = header.iter().map(String::as_str).collect();
                    let rows: Vec<Vec<String>> = lines.collect();
                    write_table(out, format, &header, &rows)?;
                }
            }
        }
        Command::EnumerateTrees { n, count_only } => {
            if *n == 0 {
                return Err(CliError::Usage("--n must be at least 1".into()));
            }
            if *count_only {
                writeln!(out, "{}", tree_count(*n))?;
            } else {
                let labels: Vec<u32> = (1..=*n as u32).collect();
                for tau in enumerate_all_trees(&labels)? {
                    writeln!(out, "{tau}")?;
                }
            }
        }
    }
    Ok(())
}

fn group_order_bound() -> CliResult<usize> {
    match std::env::var(BOUND_VAR) {
        Err(_) => Ok(DEFAULT_MAX_GROUP_ORDER),
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|&b| b > 0)
            .ok_or(CliError::BadBound(v)),
    }
}

fn check_bound(g: &PermGroup, bound: usize) -> CliResult<()> {
    if g.order() > bound {
        return Err(Error::OrderBoundExceeded {
            order: g.order(),
            bound,
        }
        .into());
    }
    Ok(())
}

/// A builtin name, or else a group file.
fn load_group(spec: &str) -> CliResult<PermGroup> {
    match builtin::by_name(spec) {
        Ok(g) => Ok(g),
        Err(e) => {
            let path = Path::new(spec);
            if !path.exists() {
                return Err(e.into());
            }
            let text = std::fs::read_to_string(path).map_err(|source| CliError::GroupFile {
                path: spec.to_string(),
                source,
            })?;
            Ok(parse_group(&text)?)
        }
    }
}

fn parse_tree(text: &str) -> CliResult<AssemblyTree> {
    Ok(AssemblyTree::parse(text)?)
}

fn write_table(
    out: &mut impl Write,
    format: Format,
    header: &[&str],
    rows: &[Vec<String>],
) -> io::Result<()> {
    match format {
        Format::Csv => {
            writeln!(out, "{}", header.join(","))?;
            for row in rows {
                writeln!(out, "{}", row.join(","))?;
            }
        }
        Format::Plain => {
            let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
            for row in rows {
                for (i, cell) in row.iter().enumerate() {
                    widths[i] = widths[i].max(cell.chars().count());
                }
            }
            let line = |cells: Vec<&str>| {
                let last = cells.len().saturating_sub(1);
                let mut s = String::new();
                for (i, c) in cells.into_iter().enumerate() {
                    s.push_str(c);
                    if i < last {
                        let pad = widths[i] - c.chars().count() + 2;
                        s.extend(std::iter::repeat_n(' ', pad));
                    }
                }
                s.trim_end().to_string()
            };
            writeln!(out, "{}", line(header.to_vec()))?;
            for row in rows {
                writeln!(out, "{}", line(row.iter().map(String::as_str).collect()))?;
            }
        }
    }
    Ok(())
}
