use std::fmt;
use std::fs;
use std::io::{self, Write as _};
use std::path::{Path, PathBuf};
use std::time::Instant;

use knitgraph::fda::{self, RunReport};
use knitgraph::metrics::{csv_field, evaluate};
use knitgraph::pattern::{gen_triangle, parse, TriangleParams};
use knitgraph::planar::{grid_layout, GridOptions};
use knitgraph::render::to_svg;
use knitgraph::stitches::ComplexityClass;
use knitgraph::{graph, Error, KnitGraph, Layout, StitchDictionary};

use crate::{Command, GenKind, LayoutArgs, LengthArgs};

pub const DICT_ENV: &str = "KNITGRAPH_STITCH_DICT";

const BENCH_HEADER: &str =
    "pattern,nodes,edges,class,initial_del,del,crossings,max_crossings,iterations,seconds";

#[derive(Debug)]
pub enum CliError {
    Io {
        path: PathBuf,
        source: io::Error,
    },
    Knit {
        path: Option<PathBuf>,
        source: Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Io { .. } => 4,
            CliError::Knit {
                source: Error::NotPlanar { .. },
                ..
            } => 3,
            CliError::Knit { .. } => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Io { path, source } => write!(f, "{}: {source}", path.display()),
            CliError::Knit {
                path: Some(p),
                source,
            } => write!(f, "{}: {source}", p.display()),
            CliError::Knit { path: None, source } => write!(f, "{source}"),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

trait Context<T> {
    fn at(self, path: &Path) -> CliResult<T>;
    fn plain(self) -> CliResult<T>;
}

impl<T> Context<T> for knitgraph::Result<T> {
    fn at(self, path: &Path) -> CliResult<T> {
        self.map_err(|source| CliError::Knit {
            path: Some(path.to_path_buf()),
            source,
        })
    }

    fn plain(self) -> CliResult<T> {
        self.map_err(|source| CliError::Knit { path: None, source })
    }
}

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Writes to `path`, or to stdout when there is none.
fn write(path: Option<&Path>, text: &str) -> CliResult<()> {
    match path {
        Some(p) => fs::write(p, text).map_err(|source| CliError::Io {
            path: p.to_path_buf(),
            source,
        }),
        None => io::stdout()
            .write_all(text.as_bytes())
            .map_err(|source| CliError::Io {
                path: "<stdout>".into(),
                source,
            }),
    }
}

fn dictionary() -> CliResult<StitchDictionary> {
    match std::env::var_os(DICT_ENV) {
        Some(p) => {
            let path = PathBuf::from(p);
            StitchDictionary::with_overrides(&read(&path)?).at(&path)
        }
        None => Ok(StitchDictionary::default()),
    }
}

fn convert_pattern(path: &Path, lengths: &LengthArgs) -> CliResult<(KnitGraph, ComplexityClass)> {
    let pattern = parse(&read(path)?).at(path)?;
    let dict = dictionary()?;
    let lengths = lengths.config();
    lengths.validate().plain()?;
    let class = dict.classify_pattern(&pattern).at(path)?;
    let g = graph::convert(&pattern, &dict, &lengths).at(path)?;
    Ok((g, class))
}

fn layout_graph(g: &KnitGraph, args: &LayoutArgs, source: &Path) -> CliResult<(Layout, RunReport)> {
    let cfg = args.fda();
    cfg.validate().plain()?;
    let opts = GridOptions {
        outer_face: args.outer_face,
        seed_scale: args.seed_scale,
    };
    let initial = grid_layout(g, &opts).at(source)?;
    let (layout, report) = fda::run_from(g, &cfg, &initial).at(source)?;
    if let Some(p) = &args.report {
        write(Some(p), &report.to_csv(!args.no_timing))?;
    }
    Ok((layout, report))
}

fn summary(report: &RunReport) -> String {
    format!(
        "{} iterations, DEL {:.4} -> {:.4}, crossings {}",
        report.iterations(),
        report.initial_del(),
        report.final_del(),
        report.rows.last().map_or(0, |r| r.crossings)
    )
}

pub fn dispatch(cmd: Command) -> CliResult<()> {
    match cmd {
        Command::Convert {
            pattern,
            output,
            lengths,
        } => {
            let (g, class) = convert_pattern(&pattern, &lengths)?;
            write(output.as_deref(), &g.to_json())?;
            let line = format!(
                "complexity class {class}: {} nodes, {} edges",
                g.node_count(),
                g.edge_count()
            );
            if output.is_some() {
                println!("{line}");
            } else {
                eprintln!("{line}");
            }
        }
        Command::Layout {
            graph,
            output,
            layout,
        } => {
            let g = KnitGraph::from_json(&read(&graph)?).at(&graph)?;
            let (result, report) = layout_graph(&g, &layout, &graph)?;
            write(output.as_deref(), &result.to_json())?;
            eprintln!("layout: {}", summary(&report));
        }
        Command::Render {
            layout,
            graph,
            output,
            style,
        } => {
            let g = KnitGraph::from_json(&read(&graph)?).at(&graph)?;
            let l = Layout::from_json(&read(&layout)?).at(&layout)?;
            write(
                output.as_deref(),
                &to_svg(&l, &g, &style.style()).at(&layout)?,
            )?;
        }
        Command::Eval {
            layout,
            graph,
            seconds,
        } => {
            let g = KnitGraph::from_json(&read(&graph)?).at(&graph)?;
            let l = Layout::from_json(&read(&layout)?).at(&layout)?;
            if !(seconds.is_finite() && seconds >= 0.0) {
                return Err(Error::InvalidParameter(
                    "seconds must be non-negative".into(),
                ))
                .plain();
            }
            let name = graph
                .file_stem()
                .map_or_else(String::new, |s| s.to_string_lossy().into_owned());
            let r =
                evaluate(&l, &g, &name, std::time::Duration::from_secs_f64(seconds)).at(&layout)?;
            write(
                None,
                &format!("{}\n{}\n", knitgraph::EvalReport::CSV_HEADER, r.csv_row()),
            )?;
        }
        Command::Gen {
            kind:
                GenKind::Triangle {
                    rows,
                    cast_on,
                    every,
                    output,
                },
        } => {
            let params = TriangleParams {
                rows,
                cast_on,
                increase_every: every,
            };
            let pattern = gen_triangle(params).plain()?;
            let mut text = pattern.to_string();
            if !text.ends_with('\n') {
                text.push('\n');
            }
            write(output.as_deref(), &text)?;
        }
        Command::Preview {
            pattern,
            output,
            graph_out,
            layout_out,
            lengths,
            layout,
            style,
        } => {
            let (g, class) = convert_pattern(&pattern, &lengths)?;
            if let Some(p) = &graph_out {
                write(Some(p), &g.to_json())?;
            }
            let (result, report) = layout_graph(&g, &layout, &pattern)?;
            if let Some(p) = &layout_out {
                write(Some(p), &result.to_json())?;
            }
            write(
                output.as_deref(),
                &to_svg(&result, &g, &style.style()).at(&pattern)?,
            )?;
            eprintln!(
                "class {class}, {} nodes: {}; final DEL {:.4}",
                g.node_count(),
                summary(&report),
                report.final_del()
            );
        }
        Command::Bench {
            suite,
            output,
            lengths,
            layout,
        } => bench(&suite, output.as_deref(), &lengths, &layout)?,
    }
    Ok(())
}

fn bench(
    suite: &Path,
    output: Option<&Path>,
    lengths: &LengthArgs,
    args: &LayoutArgs,
) -> CliResult<()> {
    let io_err = |source| CliError::Io {
        path: suite.to_path_buf(),
        source,
    };
    let mut files = Vec::new();
    for entry in fs::read_dir(suite).map_err(io_err)? {
        let path = entry.map_err(io_err)?.path();
        if path.extension().is_some_and(|e| e == "knit") {
            files.push(path);
        }
    }
    files.sort();

    // per-pattern iteration reports make no sense in a batch run
    let args = LayoutArgs {
        report: None,
        ..args.clone()
    };
    let mut out = format!("{BENCH_HEADER}\n");
    for path in &files {
        let name = path
            .file_stem()
            .map_or_else(String::new, |s| s.to_string_lossy().into_owned());
        let start = Instant::now();
        let (g, class) = convert_pattern(path, lengths)?;
        let (layout, report) = layout_graph(&g, &args, path)?;
        let elapsed = if args.no_timing {
            std::time::Duration::ZERO
        } else {
            start.elapsed()
        };
        let r = evaluate(&layout, &g, &name, elapsed).at(path)?;
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{}\n",
            csv_field(&r.pattern),
            r.nodes,
            r.edges,
            class,
            report.initial_del(),
            r.del,
            r.crossings,
            report.max_crossings(),
            report.iterations(),
            r.seconds
        ));
        eprintln!("{name}: {} nodes, {}", r.nodes, summary(&report));
    }
    write(output, &out)
}
