//! `knitgraph`: knit patterns to planar graphs, layouts and SVG previews.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use knitgraph::fda::FdaConfig;
use knitgraph::render::RenderStyle;
use knitgraph::EdgeLengthConfig;

#[derive(Debug, Parser)]
#[command(
    name = "knitgraph",
    version,
    about = "Compile knitting patterns into planar graphs and lay them out without crossings"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse a pattern and write its knit graph as JSON; prints the complexity class.
    Convert {
        pattern: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        lengths: LengthArgs,
    },
    /// Lay out a graph: crossing-free grid drawing, then guarded force-directed steps.
    Layout {
        graph: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        layout: LayoutArgs,
    },
    /// Draw a layout as SVG.
    Render {
        layout: PathBuf,
        graph: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        style: StyleArgs,
    },
    /// Print a CSV evaluation row (DEL, crossings) for a layout.
    Eval {
        layout: PathBuf,
        graph: PathBuf,
        /// Layout time to record in the `seconds` column.
        #[arg(long, default_value_t = 0.0)]
        seconds: f64,
    },
    /// Generate a pattern.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// Pattern to SVG in one go; same result as convert, layout and render chained.
    Preview {
        pattern: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Also write the knit graph here.
        #[arg(long)]
        graph_out: Option<PathBuf>,
        /// Also write the final layout here.
        #[arg(long)]
        layout_out: Option<PathBuf>,
        #[command(flatten)]
        lengths: LengthArgs,
        #[command(flatten)]
        layout: LayoutArgs,
        #[command(flatten)]
        style: StyleArgs,
    },
    /// Run every `.knit` file in a directory and write one CSV row per pattern.
    Bench {
        #[arg(long)]
        suite: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        lengths: LengthArgs,
        #[command(flatten)]
        layout: LayoutArgs,
    },
}

#[derive(Debug, Subcommand)]
enum GenKind {
    /// Top-down triangle shawl with increases on every `--every`th row.
    Triangle {
        #[arg(long)]
        rows: usize,
        #[arg(long, default_value_t = 7)]
        cast_on: usize,
        #[arg(long, default_value_t = 2)]
        every: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Args)]
struct LengthArgs {
    #[arg(long, default_value_t = EdgeLengthConfig::default().base_yarn_length)]
    yarn_length: f64,
    #[arg(long, default_value_t = EdgeLengthConfig::default().base_loop_length)]
    loop_length: f64,
    /// Extra yarn per dropped stitch, as a multiple of the yarn edge.
    #[arg(long, default_value_t = EdgeLengthConfig::default().drop_multiplier)]
    drop_multiplier: f64,
}

impl LengthArgs {
    fn config(&self) -> EdgeLengthConfig {
        EdgeLengthConfig {
            base_yarn_length: self.yarn_length,
            base_loop_length: self.loop_length,
            drop_multiplier: self.drop_multiplier,
        }
    }
}

fn fda_default() -> FdaConfig {
    FdaConfig::for_lengths(&EdgeLengthConfig::default())
}

#[derive(Debug, Clone, Args)]
struct LayoutArgs {
    #[arg(long, default_value_t = fda_default().iterations)]
    iterations: usize,
    /// Scale of the initial grid drawing relative to the desired lengths.
    #[arg(long, default_value_t = 1.0)]
    seed_scale: f64,
    /// Index of the face to draw as the outer face.
    #[arg(long)]
    outer_face: Option<usize>,
    /// Write per-iteration DEL and crossing counts as CSV.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Write 0 instead of wall-clock seconds so reports are reproducible.
    #[arg(long)]
    no_timing: bool,
    #[arg(long, default_value_t = fda_default().spring_k)]
    spring_k: f64,
    #[arg(long, default_value_t = fda_default().collision_radius)]
    collision_radius: f64,
    #[arg(long, default_value_t = fda_default().collision_k)]
    collision_k: f64,
    #[arg(long, default_value_t = fda_default().repulse_k)]
    repulse_k: f64,
    #[arg(long, default_value_t = fda_default().repulse_decay)]
    repulse_decay: f64,
    #[arg(long, default_value_t = fda_default().max_step)]
    max_step: f64,
    #[arg(long, default_value_t = fda_default().del_tolerance)]
    del_tolerance: f64,
    /// Iterations over which DEL must improve by `--del-tolerance`; 0 never stops early.
    #[arg(long, default_value_t = fda_default().plateau_window)]
    plateau_window: usize,
    /// Retry a rejected move at half the distance (recommended for large patterns).
    #[arg(long)]
    bisect_moves: bool,
}

impl LayoutArgs {
    fn fda(&self) -> FdaConfig {
        FdaConfig {
            spring_k: self.spring_k,
            collision_radius: self.collision_radius,
            collision_k: self.collision_k,
            repulse_k: self.repulse_k,
            repulse_decay: self.repulse_decay,
            max_step: self.max_step,
            iterations: self.iterations,
            del_tolerance: self.del_tolerance,
            plateau_window: self.plateau_window,
            bisect_moves: self.bisect_moves,
        }
    }
}

#[derive(Debug, Clone, Args)]
struct StyleArgs {
    #[arg(long, default_value_t = RenderStyle::default().node_radius)]
    node_radius: f64,
    #[arg(long, default_value_t = RenderStyle::default().node_color)]
    node_color: String,
    #[arg(long, default_value_t = RenderStyle::default().yarn_color)]
    yarn_color: String,
    #[arg(long, default_value_t = RenderStyle::default().yarn_width)]
    yarn_width: f64,
    #[arg(long, default_value_t = RenderStyle::default().loop_color)]
    loop_color: String,
    #[arg(long, default_value_t = RenderStyle::default().loop_width)]
    loop_width: f64,
    #[arg(long, default_value_t = RenderStyle::default().padding)]
    padding: f64,
    /// Canvas color, or `none` for transparent.
    #[arg(long, default_value = "#ffffff")]
    background: String,
    /// SVG pixels per stitch unit.
    #[arg(long, default_value_t = RenderStyle::default().pixels_per_unit)]
    scale: f64,
}

impl StyleArgs {
    fn style(&self) -> RenderStyle {
        RenderStyle {
            node_radius: self.node_radius,
            node_color: self.node_color.clone(),
            yarn_color: self.yarn_color.clone(),
            yarn_width: self.yarn_width,
            loop_color: self.loop_color.clone(),
            loop_width: self.loop_width,
            padding: self.padding,
            background: (self.background != "none").then(|| self.background.clone()),
            pixels_per_unit: self.scale,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
