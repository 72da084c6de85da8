//! The `zf` command line.
//!
//! Exit codes: 0 on success, 2 for malformed input or parameters outside a
//! case's hypotheses, 3 when a search hits its budget (the partial result is
//! still written as JSON).

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;
use thiserror::Error;
use zf_core::minrank::{matches_pattern, p2_ph_graph, p2_ph_witness_matrix, rank_exact};
use zf_core::solver::zero_forcing_number_from;
use zf_core::theorems::{acceptance_grid, sweep, tables, verify_construction, SweepGrid};
use zf_core::{
    all_minimum_sets, are_isomorphic, forcing_closure, AbortReason, CaseId, ConstructionSpec,
    Factor, Graph, Instance, IsoOutcome, ProductExpression, RootSet, SearchBudget, VertexId,
    VertexLabel,
};

pub const EXIT_OK: u8 = 0;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_ABORTED: u8 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] zf_core::Error),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error("{0}")]
    Usage(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(zf_core::Error::SearchAborted { .. }) => EXIT_ABORTED,
            _ => EXIT_INPUT,
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

#[derive(Parser, Debug)]
#[command(
    name = "zf",
    version,
    about = "Zero forcing on hierarchical products of graphs"
)]
struct Cli {
    /// Machine-readable JSON output for every subcommand.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a graph and print it as DOT (default) or an edge list.
    Build {
        /// Product expression such as `P4({1,3}) x P3`, or an edge-list file.
        graph: String,
        #[arg(long, conflicts_with = "edge_list")]
        dot: bool,
        #[arg(long)]
        edge_list: bool,
    },
    /// Compute the zero forcing number with the exhaustive solver.
    Solve {
        graph: String,
        #[command(flatten)]
        budget: BudgetArgs,
        /// Also list every minimum forcing set.
        #[arg(long)]
        all_min: bool,
        /// A known lower bound on Z; smaller sizes are skipped.
        #[arg(long, default_value_t = 1)]
        lower_bound: usize,
    },
    /// Run the forcing process from an explicit set.
    Force {
        graph: String,
        /// `(i,j),(i,j),...` for products, `1,3,...` for plain graphs.
        #[arg(long)]
        set: String,
    },
    /// Build and check the explicit forcing set of one case.
    Theorem(TheoremArgs),
    /// Check a case over a parameter grid.
    Sweep {
        case: CaseId,
        /// Inclusive range `a..b`; defaults to the acceptance grid.
        #[arg(long)]
        w_range: Option<String>,
        #[arg(long)]
        h_range: Option<String>,
        #[arg(long)]
        m_range: Option<String>,
        #[arg(long)]
        all_placements: bool,
        /// Write the report here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Rank of the witness matrix for `P2({1}) x Ph`.
    Minrank {
        #[arg(long)]
        h: usize,
        /// Write the matrix as CSV of rationals.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Decide whether two graphs are isomorphic.
    Iso {
        a: String,
        b: String,
        #[arg(long, default_value_t = 24)]
        max_order: usize,
    },
    /// Compare observed bounds and propagation times with the summary
    /// tables over the acceptance grids.
    Tables {
        #[arg(long)]
        all_placements: bool,
        #[arg(long)]
        markdown_out: Option<PathBuf>,
        #[arg(long)]
        json_out: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct BudgetArgs {
    /// Wall-clock budget for the search.
    #[arg(long, env = "ZF_BUDGET_SECONDS")]
    budget_seconds: Option<f64>,
    /// Largest order the search accepts.
    #[arg(long, default_value_t = 24)]
    max_order: usize,
}

impl BudgetArgs {
    fn budget(&self) -> Result<SearchBudget> {
        let mut b = SearchBudget::default().with_max_order(self.max_order);
        if let Some(s) = self.budget_seconds {
            let limit = Duration::try_from_secs_f64(s)
                .map_err(|_| CliError::Usage(format!("invalid budget {s} seconds")))?;
            b = b.with_time_limit(limit);
        }
        Ok(b)
    }
}

#[derive(Args, Debug)]
struct TheoremArgs {
    case: CaseId,
    #[arg(long)]
    w: Option<usize>,
    #[arg(long)]
    h: Option<usize>,
    /// First root column, for two-column cases.
    #[arg(long, requires = "j")]
    i: Option<usize>,
    /// Second root column, for two-column cases.
    #[arg(long, requires = "i")]
    j: Option<usize>,
    /// Block size for PC_END_BLOCK.
    #[arg(long)]
    m: Option<usize>,
    /// Root size for KK.
    #[arg(long)]
    r: Option<usize>,
    /// Explicit root set, e.g. `1,3`.
    #[arg(long, conflicts_with = "i")]
    root: Option<String>,
    /// Outer factor for the general cases, e.g. `C4`.
    #[arg(long)]
    outer: Option<Factor>,
    /// Inner factor for the general cases.
    #[arg(long)]
    inner: Option<Factor>,
}

/// Parses `argv` (program name first), runs the command and returns the
/// process exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(()) => EXIT_OK,
        Err(CliError::Core(zf_core::Error::SearchAborted {
            reason,
            lower,
            upper,
        })) => {
            let _ = writeln!(
                err,
                "zf: search aborted ({}); Z lies in {lower}..={upper}",
                reason_name(reason)
            );
            EXIT_ABORTED
        }
        Err(e) => {
            let _ = writeln!(err, "zf: {e}");
            e.exit_code()
        }
    }
}

fn reason_name(reason: AbortReason) -> &'static str {
    match reason {
        AbortReason::TimeLimit => "time_limit",
        AbortReason::OrderLimit => "order_limit",
    }
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<()> {
    match &cli.command {
        Command::Build {
            graph,
            dot: _,
            edge_list,
        } => {
            let (name, inst) = load(graph)?;
            let g = inst.graph();
            if cli.json {
                emit(
                    out,
                    &json!({
                        "graph": name,
                        "order": g.order(),
                        "edges": g.edge_count(),
                        "dot": inst.to_dot(&name),
                        "edge_list": g.to_edge_list(),
                    }),
                )
            } else if *edge_list {
                put(out, &g.to_edge_list())
            } else {
                put(out, &inst.to_dot(&name))
            }
        }
        Command::Solve {
            graph,
            budget,
            all_min,
            lower_bound,
        } => {
            let (name, inst) = load(graph)?;
            solve(out, &name, &inst, &budget.budget()?, *all_min, *lower_bound)
        }
        Command::Force { graph, set } => {
            let (name, inst) = load(graph)?;
            let initial = inst.parse_set(set)?;
            let record = forcing_closure(inst.graph(), &initial).record(|v| inst.label(v));
            #[derive(Serialize)]
            struct ForceOutput<'a, R: Serialize> {
                graph: &'a str,
                order: usize,
                #[serde(flatten)]
                record: R,
            }
            emit(
                out,
                &ForceOutput {
                    graph: &name,
                    order: inst.graph().order(),
                    record,
                },
            )
        }
        Command::Theorem(args) => {
            let spec = theorem_spec(args)?;
            emit(out, &verify_construction(&spec)?)
        }
        Command::Sweep {
            case,
            w_range,
            h_range,
            m_range,
            all_placements,
            out: path,
        } => {
            let base = acceptance_grid(*case);
            let grid = SweepGrid::new(
                parse_range(w_range.as_deref(), base.w)?,
                parse_range(h_range.as_deref(), base.h)?,
            )
            .with_m(parse_range(m_range.as_deref(), base.m)?)
            .with_all_placements(*all_placements);
            let report = sweep(*case, &grid);
            match path {
                Some(p) => {
                    write_file(p, &to_json(&report)?)?;
                    let s = &report.summary;
                    put(
                        out,
                        &format!(
                            "{}: {} rows, {} verified, {} out of hypothesis, {} errors; written to {}\n",
                            case,
                            s.rows,
                            s.verified,
                            s.out_of_hypothesis,
                            s.errors,
                            p.display()
                        ),
                    )
                }
                None => emit(out, &report),
            }
        }
        Command::Minrank { h, emit: path } => {
            let g = p2_ph_graph(*h)?;
            let m = p2_ph_witness_matrix(*h)?;
            let rank = rank_exact(&m);
            let pattern_matches = matches_pattern(&m, &g)?;
            if let Some(p) = path {
                write_file(p, &m.to_csv())?;
            }
            let mut value = json!({
                "h": h,
                "n": g.order(),
                "rank": rank,
                "lower_bound": g.order() - rank,
                "pattern_matches": pattern_matches,
            });
            if let Some(p) = path {
                value["emitted"] = json!(p.display().to_string());
            }
            emit(out, &value)
        }
        Command::Iso { a, b, max_order } => {
            let (name_a, ia) = load(a)?;
            let (name_b, ib) = load(b)?;
            let budget = SearchBudget::default().with_max_order(*max_order);
            let mut value = json!({ "a": name_a, "b": name_b });
            match are_isomorphic(ia.graph(), ib.graph(), &budget)? {
                IsoOutcome::Isomorphic(w) => {
                    if !w.verify(ia.graph(), ib.graph()) {
                        return Err(CliError::Usage(
                            "internal error: isomorphism witness failed verification".into(),
                        ));
                    }
                    let pairs: Vec<[VertexLabel; 2]> = w
                        .mapping
                        .iter()
                        .enumerate()
                        .map(|(v, &t)| [ia.label(VertexId(v)), ib.label(t)])
                        .collect();
                    value["isomorphic"] = json!(true);
                    value["witness"] = json!(pairs);
                }
                IsoOutcome::NotIsomorphic(r) => {
                    value["isomorphic"] = json!(false);
                    value["refutation"] = json!(r);
                }
            }
            emit(out, &value)
        }
        Command::Tables {
            all_placements,
            markdown_out,
            json_out,
        } => {
            let report = tables(*all_placements);
            if let Some(p) = markdown_out {
                write_file(p, &report.to_markdown())?;
            }
            if let Some(p) = json_out {
                write_file(p, &to_json(&report)?)?;
            }
            if cli.json {
                emit(out, &report)
            } else if markdown_out.is_none() && json_out.is_none() {
                put(out, &report.to_markdown())
            } else {
                put(
                    out,
                    &format!(
                        "{} rows: {} MATCH, {} MISMATCH, {} OUT_OF_HYPOTHESIS\n",
                        report.rows.len(),
                        report.matches,
                        report.mismatches,
                        report.out_of_hypothesis
                    ),
                )
            }
        }
    }
}

fn solve(
    out: &mut dyn Write,
    name: &str,
    inst: &Instance,
    budget: &SearchBudget,
    all_min: bool,
    lower_bound: usize,
) -> Result<()> {
    let g = inst.graph();
    let started = Instant::now();
    let elapsed = |s: Instant| s.elapsed().as_secs_f64() * 1e3;
    let outcome = zero_forcing_number_from(g, budget, lower_bound).and_then(|cert| {
        let all = if all_min {
            Some(all_minimum_sets(g, budget)?)
        } else {
            None
        };
        Ok((cert, all))
    });
    match outcome {
        Ok((cert, all)) => {
            let mut value = json!({
                "graph": name,
                "order": g.order(),
                "edges": g.edge_count(),
                "z": cert.z,
                "witness": inst.labels(&cert.witness),
                "exhausted_below": cert.exhausted_below,
                "elapsed_ms": elapsed(started),
            });
            if let Some(sets) = all {
                let sets: Vec<_> = sets.iter().map(|s| inst.labels(s)).collect();
                value["all_minimum"] = json!(sets);
            }
            emit(out, &value)
        }
        Err(zf_core::Error::SearchAborted {
            reason,
            lower,
            upper,
        }) => {
            emit(
                out,
                &json!({
                    "error": "search aborted",
                    "reason": reason_name(reason),
                    "lower": lower,
                    "upper": upper,
                    "elapsed_ms": elapsed(started),
                }),
            )?;
            Err(zf_core::Error::SearchAborted {
                reason,
                lower,
                upper,
            }
            .into())
        }
        Err(e) => Err(e.into()),
    }
}

fn theorem_spec(args: &TheoremArgs) -> Result<ConstructionSpec> {
    let root_members = match (&args.root, args.i, args.j) {
        (Some(text), _, _) => Some(parse_list(text)?),
        (None, Some(i), Some(j)) => Some(vec![i, j]),
        _ => None,
    };
    let mut spec = if args.case.is_general() {
        let (Some(outer), Some(inner)) = (args.outer.clone(), args.inner.clone()) else {
            return Err(CliError::Usage(format!(
                "{} needs --outer and --inner",
                args.case
            )));
        };
        let root = root_members.take_root(outer.order())?;
        ConstructionSpec::general(args.case, outer, root, inner)?
    } else {
        let (Some(w), Some(h)) = (args.w, args.h) else {
            return Err(CliError::Usage(format!("{} needs --w and --h", args.case)));
        };
        let mut spec = ConstructionSpec::new(args.case, w, h);
        if let Some(root) = root_members.take_root(w)? {
            spec = spec.with_root(root);
        }
        spec
    };
    if let Some(m) = args.m {
        spec = spec.with_m(m);
    }
    if let Some(r) = args.r {
        spec = spec.with_r(r);
    }
    Ok(spec)
}

trait TakeRoot {
    fn take_root(self, w: usize) -> Result<Option<RootSet>>;
}

impl TakeRoot for Option<Vec<usize>> {
    fn take_root(self, w: usize) -> Result<Option<RootSet>> {
        Ok(self.map(|m| RootSet::new(m, w)).transpose()?)
    }
}

fn parse_list(text: &str) -> Result<Vec<usize>> {
    let body = text.trim().trim_start_matches('{').trim_end_matches('}');
    body.split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("expected a column number, got {t:?}")))
        })
        .collect()
}

fn parse_range(text: Option<&str>, default: (usize, usize)) -> Result<(usize, usize)> {
    let Some(text) = text else {
        return Ok(default);
    };
    let bad = || CliError::Usage(format!("range {text:?} must look like 4..7"));
    let (a, b) = text.split_once("..").ok_or_else(bad)?;
    let b = b.strip_prefix('=').unwrap_or(b);
    let (a, b): (usize, usize) = (
        a.trim().parse().map_err(|_| bad())?,
        b.trim().parse().map_err(|_| bad())?,
    );
    if a > b {
        return Err(bad());
    }
    Ok((a, b))
}

/// A product expression, or the path of an edge-list file.
fn load(arg: &str) -> Result<(String, Instance)> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let g = Graph::parse_edge_list(&text)?;
        return Ok((arg.to_string(), Instance::Plain(g)));
    }
    let expr: ProductExpression = arg.parse()?;
    Ok((expr.to_string(), expr.build()?))
}

fn to_json<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    serde_json::to_string_pretty(value)
        .map_err(|e| CliError::Usage(format!("serialization failed: {e}")))
}

fn emit<T: Serialize + ?Sized>(out: &mut dyn Write, value: &T) -> Result<()> {
    let mut text = to_json(value)?;
    text.push('\n');
    put(out, &text)
}

fn put(out: &mut dyn Write, text: &str) -> Result<()> {
    out.write_all(text.as_bytes())
        .map_err(|source| CliError::Io {
            path: PathBuf::from("<stdout>"),
            source,
        })
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (u8, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let mut argv = vec!["zf"];
        argv.extend_from_slice(args);
        let code = run(argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn ranges() {
        assert_eq!(parse_range(Some("4..7"), (0, 0)).unwrap(), (4, 7));
        assert_eq!(parse_range(Some("4..=7"), (0, 0)).unwrap(), (4, 7));
        assert_eq!(parse_range(None, (1, 2)).unwrap(), (1, 2));
        assert!(parse_range(Some("7..4"), (0, 0)).is_err());
        assert!(parse_range(Some("7"), (0, 0)).is_err());
    }

    #[test]
    fn parse_errors_exit_two() {
        let (code, _, err) = run_str(&["solve", "Q4 x P3"]);
        assert_eq!(code, EXIT_INPUT);
        assert!(err.contains("unknown factor"));
        let (code, _, _) = run_str(&["frobnicate"]);
        assert_eq!(code, EXIT_INPUT);
    }

    #[test]
    fn order_limit_exits_three_with_partial_json() {
        let (code, out, _) = run_str(&["solve", "P5 x P5", "--max-order", "10"]);
        assert_eq!(code, EXIT_ABORTED);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["reason"], "order_limit");
    }

    #[test]
    fn theorem_needs_dimensions() {
        let (code, _, err) = run_str(&["theorem", "KK", "--w", "4"]);
        assert_eq!(code, EXIT_INPUT);
        assert!(err.contains("--w and --h"));
    }

    #[test]
    fn help_exits_zero() {
        let (code, out, _) = run_str(&["--help"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("solve"));
    }
}
