//! The `copnum` command line: JSON documents in, JSON results out.

mod doc;
mod dot;

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::drawing::Drawing;
use crate::fixtures;
use crate::graph::{Graph, Subgraph, UNREACHABLE};
use crate::par::Execution;
use crate::solver::{
    cop_number, cop_win, default_max_states, play, CopStrategy, GameConfig, GreedyRobber, OptimalRobber, SolveTables,
    SolverError, StrategyError, Transcript,
};
use crate::strategy::{crossing_guard_team, orchestrate, Alpha, Kind};
use crate::transform::{
    boxtimes, gen_far_crossings, gen_large_x_drawing, kite_augment, map_from_witness, one_planarise, subdivide,
};
use crate::verify::{check_many, gen_corpus, CheckId, CorpusParams, EntryKind, VerifyOptions};

pub use doc::{CorpusDocument, CrossingDoc, DrawingDocument, EntryDoc, WitnessDoc, VERSION};
pub use dot::to_dot;

#[derive(Parser, Debug)]
#[command(name = "copnum", version, about = "Distance-d cops and robbers on drawn graphs")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Decide whether `--cops` cops win, or find the cop number up to `--p-max`.
    Solve {
        drawing: PathBuf,
        #[arg(long)]
        cops: Option<usize>,
        #[arg(long, default_value_t = 0)]
        dist: u64,
        #[arg(long, default_value_t = 3)]
        p_max: usize,
        #[arg(long)]
        max_states: Option<usize>,
    },
    /// x, X, profile and crossing classification.
    Params { drawing: PathBuf },
    /// subdivide K | planarise | kite | boxtimes | map-witness PART
    Transform {
        drawing: PathBuf,
        #[arg(long, num_args = 1..=2, required = true, value_names = ["OP", "ARG"])]
        op: Vec<String>,
    },
    /// Emit a corpus or a generator output.
    Generate {
        #[arg(long = "gen", value_enum)]
        generator: Gen,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        count: Option<usize>,
        #[arg(long)]
        n_min: Option<usize>,
        #[arg(long)]
        n_max: Option<usize>,
        #[arg(long)]
        density: Option<f64>,
        #[arg(long)]
        drop: Option<f64>,
        /// Comma-separated corpus kinds.
        #[arg(long)]
        kinds: Option<String>,
        #[arg(long, default_value_t = 0)]
        dist: u64,
        #[arg(long, default_value_t = 1)]
        f: u64,
        #[arg(long, default_value_t = 6)]
        mu: usize,
        /// `c4`, `petersen` or a drawing file.
        #[arg(long, default_value = "petersen")]
        base: String,
    },
    /// Run checks over a corpus document.
    Verify {
        corpus: PathBuf,
        /// A check id or `all`.
        #[arg(long, default_value = "all")]
        check: String,
        #[arg(long)]
        max_states: Option<usize>,
        /// Print the table on stdout instead of the JSON report.
        #[arg(long)]
        table: bool,
    },
    /// Play one game and print its transcript.
    Play {
        drawing: PathBuf,
        /// optimal | orchestrate KIND ALPHA | team KIND ALPHA
        #[arg(long, num_args = 1..=3, default_values_t = ["optimal".to_string()])]
        cop: Vec<String>,
        #[arg(long, value_enum, default_value_t = RobberKind::Greedy)]
        robber: RobberKind,
        #[arg(long, default_value_t = 100)]
        rounds: u32,
        /// Cop count for optimal cops.
        #[arg(long, default_value_t = 1)]
        cops: usize,
        /// Capture distance for optimal cops.
        #[arg(long, default_value_t = 0)]
        dist: u64,
        /// Comma-separated shortest path guarded by `team`.
        #[arg(long)]
        path: Option<String>,
        #[arg(long)]
        max_states: Option<usize>,
    },
    /// Graphviz export with crossings as point nodes.
    ExportDot { drawing: PathBuf },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Gen {
    Corpus,
    FarCrossings,
    #[value(name = "large-X", alias = "large-x")]
    LargeX,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum RobberKind {
    Optimal,
    Greedy,
}

/// Runs the command line, writing results to stdout and diagnostics to
/// stderr. Returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

/// As [`run`], with explicit output streams.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    match dispatch(cli.cmd, out, err) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            exit_code(&e)
        }
    }
}

fn exit_code(e: &anyhow::Error) -> i32 {
    let budget = e
        .chain()
        .any(|c| matches!(c.downcast_ref::<SolverError>(), Some(SolverError::Budget { .. })));
    if budget {
        2
    } else {
        1
    }
}

fn read_text(path: &Path) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        return Ok(s);
    }
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

pub fn load_drawing(path: &Path) -> Result<Drawing> {
    let text = read_text(path)?;
    let doc: DrawingDocument = serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    doc.to_drawing()
}

fn emit<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    writeln!(out, "{text}")?;
    Ok(())
}

fn budget(flag: Option<usize>) -> usize {
    flag.unwrap_or_else(default_max_states)
}

fn dispatch(cmd: Cmd, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    match cmd {
        Cmd::Solve {
            drawing,
            cops,
            dist,
            p_max,
            max_states,
        } => {
            let d = load_drawing(&drawing)?;
            let g = d.graph();
            let max = budget(max_states);
            match cops {
                Some(p) => {
                    let (win, _) = cop_win(&GameConfig::new(g, p, dist).max_states(max))?;
                    emit(out, &json!({ "cop_win": win, "cops": p, "dist": dist }))
                }
                None => {
                    let c = cop_number(g, dist, p_max, max, Execution::Parallel)?;
                    emit(out, &json!({ "cop_number": c, "dist": dist, "p_max": p_max }))
                }
            }
        }
        Cmd::Params { drawing } => {
            let d = load_drawing(&drawing)?;
            emit(out, &params_json(&d))
        }
        Cmd::Transform { drawing, op } => {
            let d = load_drawing(&drawing)?;
            let result = transform(&d, &op)?;
            emit(out, &DrawingDocument::from_drawing(&result))
        }
        Cmd::Generate {
            generator,
            seed,
            count,
            n_min,
            n_max,
            density,
            drop,
            kinds,
            dist,
            f,
            mu,
            base,
        } => match generator {
            Gen::Corpus => {
                let mut p = CorpusParams::default();
                p.count = count.unwrap_or(p.count);
                p.n_min = n_min.unwrap_or(p.n_min);
                p.n_max = n_max.unwrap_or(p.n_max);
                p.crossing_density = density.unwrap_or(p.crossing_density);
                p.drop_rate = drop.unwrap_or(p.drop_rate);
                if let Some(k) = kinds {
                    p.kinds = k
                        .split(',')
                        .map(|s| s.trim().parse::<EntryKind>().map_err(|e| anyhow!(e)))
                        .collect::<Result<_>>()?;
                }
                p.check().map_err(|e| anyhow!(e))?;
                emit(out, &CorpusDocument::from_corpus(&gen_corpus(seed, &p)))
            }
            Gen::FarCrossings => {
                let r = gen_far_crossings(&base_drawing(&base)?, dist, f)?;
                emit(out, &DrawingDocument::from_drawing(&r.drawing))
            }
            Gen::LargeX => {
                let r = gen_large_x_drawing(&base_drawing(&base)?, mu)?;
                emit(out, &DrawingDocument::from_drawing(&r.drawing))
            }
        },
        Cmd::Verify {
            corpus,
            check,
            max_states,
            table,
        } => {
            let text = read_text(&corpus)?;
            let doc: CorpusDocument =
                serde_json::from_str(&text).with_context(|| format!("parsing {}", corpus.display()))?;
            let corpus = doc.to_corpus()?;
            let checks = if check.eq_ignore_ascii_case("all") {
                CheckId::ALL.to_vec()
            } else {
                check
                    .split(',')
                    .map(|c| c.trim().parse::<CheckId>().map_err(|e| anyhow!(e)))
                    .collect::<Result<_>>()?
            };
            let mut opts = VerifyOptions::default();
            if let Some(m) = max_states {
                opts.max_states = m;
                opts.generator_max_states = opts.generator_max_states.max(m);
            }
            let report = check_many(&corpus, &checks, &opts);
            if table {
                write!(out, "{}", report.render_table())?;
            } else {
                emit(out, &report)?;
                writeln!(
                    err,
                    "{} passed, {} failed, {} skipped over {} instances",
                    report.passed, report.failed, report.skipped, report.instances
                )?;
            }
            Ok(())
        }
        Cmd::Play {
            drawing,
            cop,
            robber,
            rounds,
            cops,
            dist,
            path,
            max_states,
        } => {
            let d = load_drawing(&drawing)?;
            let t = play_game(
                &d,
                &cop,
                robber,
                rounds,
                cops,
                dist,
                path.as_deref(),
                budget(max_states),
            )?;
            emit(out, &t)
        }
        Cmd::ExportDot { drawing } => {
            let d = load_drawing(&drawing)?;
            write!(out, "{}", to_dot(&d))?;
            Ok(())
        }
    }
}

fn base_drawing(base: &str) -> Result<Drawing> {
    match base {
        "c4" => Ok(fixtures::bowtie_c4()),
        "petersen" => Ok(fixtures::petersen_star()),
        path => load_drawing(Path::new(path)),
    }
}

fn params_json(d: &Drawing) -> serde_json::Value {
    let xx = d.xx_params();
    let prof = d.profile();
    let dist = d.graph().all_pairs(Execution::Parallel);
    let crossings: Vec<serde_json::Value> = (0..d.crossings().len())
        .map(|c| {
            let cr = d.crossing(c);
            json!({
                "id": c,
                "e1": cr.e1,
                "e2": cr.e2,
                "kind": d.classify_crossing(c),
                "pairs": d.consecutive_pairs(c),
                "distances": d.pair_distances(c, &dist),
            })
        })
        .collect();
    json!({
        "x": xx.x,
        "X": xx.big_x,
        "all_full": prof.all_full,
        "no_x_crossings": prof.no_x_crossings,
        "is_k_plane": prof.is_k_plane,
        "is_k_framed": prof.is_k_framed,
        "is_kite_augmented": prof.is_kite_augmented,
        "crossings": crossings,
    })
}

/// Two-colours each component from its lowest vertex.
fn colour_classes(h: &Graph) -> Result<Vec<u8>> {
    let mut colour = vec![u8::MAX; h.n()];
    for s in 0..h.n() {
        if colour[s] != u8::MAX {
            continue;
        }
        colour[s] = 0;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &w in h.neighbors(u) {
                if colour[w] == u8::MAX {
                    colour[w] = 1 - colour[u];
                    stack.push(w);
                } else if colour[w] == colour[u] {
                    bail!("witness is not bipartite");
                }
            }
        }
    }
    Ok(colour)
}

fn transform(d: &Drawing, op: &[String]) -> Result<Drawing> {
    let arg = op.get(1).map(String::as_str);
    let no_arg = |name: &str| -> Result<()> {
        if arg.is_some() {
            bail!("`{name}` takes no argument");
        }
        Ok(())
    };
    Ok(match op[0].as_str() {
        "subdivide" => {
            let k: usize = arg
                .ok_or_else(|| anyhow!("`subdivide` needs a factor"))?
                .parse()
                .context("subdivision factor")?;
            subdivide(d, k)?.drawing
        }
        "planarise" | "planarize" => {
            no_arg("planarise")?;
            one_planarise(d)?.drawing
        }
        "kite" => {
            no_arg("kite")?;
            kite_augment(d)?.drawing
        }
        "boxtimes" => {
            no_arg("boxtimes")?;
            boxtimes(d)?.drawing
        }
        "map-witness" => {
            let part: u8 = arg
                .ok_or_else(|| anyhow!("`map-witness` needs the nation part, 0 or 1"))?
                .parse()
                .context("nation part")?;
            if part > 1 {
                bail!("nation part must be 0 or 1");
            }
            let colour = colour_classes(d.graph())?;
            let is_face: Vec<bool> = colour.iter().map(|&c| c != part).collect();
            Drawing::plain(map_from_witness(d.graph(), &is_face)?.0)
        }
        other => bail!("unknown transform `{other}`"),
    })
}

fn parse_kind(s: &str) -> Result<Kind> {
    match s {
        "x" => Ok(Kind::Small),
        "X" => Ok(Kind::Big),
        _ => bail!("kind must be `x` or `X`, got `{s}`"),
    }
}

fn kind_alpha(cop: &[String]) -> Result<(Kind, Alpha)> {
    let kind = parse_kind(cop.get(1).map(String::as_str).unwrap_or("X"))?;
    let alpha = match cop.get(2) {
        Some(a) => a.parse::<Alpha>().map_err(|e| anyhow!("alpha: {e}"))?,
        None => Alpha::ONE,
    };
    Ok((kind, alpha))
}

/// Optimal play from the solved tables, starting from the best placement
/// (or every cop on vertex 0 when the cops lose).
struct OptimalCops<'t> {
    tables: &'t SolveTables,
}

impl CopStrategy for OptimalCops<'_> {
    type State = Vec<usize>;

    fn initial(&self) -> Result<Vec<usize>, StrategyError> {
        Ok(self
            .tables
            .placement()
            .map(|(c, _)| c)
            .unwrap_or_else(|| vec![0; self.tables.p()]))
    }

    fn positions(&self, state: &Vec<usize>) -> Vec<usize> {
        state.clone()
    }

    fn respond(&self, state: &Vec<usize>, robber: usize) -> Result<Vec<usize>, StrategyError> {
        Ok(self.tables.best_cop_move(state, robber))
    }
}

#[derive(Serialize)]
struct PlayConfig {
    cop: String,
    robber: String,
    cops: usize,
    dist: u64,
    rounds: u32,
}

#[derive(Serialize)]
struct RoundRecord {
    round: u32,
    cops: Vec<usize>,
    robber: usize,
    captured: bool,
    /// Distance from the robber to the nearest cop, `None` if unreachable.
    distance: Option<u32>,
}

#[derive(Serialize)]
struct TranscriptDoc {
    config: PlayConfig,
    records: Vec<RoundRecord>,
    outcome: &'static str,
    captured_in: Option<u32>,
}

fn transcript_doc(g: &Graph, config: PlayConfig, t: &Transcript) -> TranscriptDoc {
    let dist = g.all_pairs(Execution::Sequential);
    let near = |cops: &[usize], r: usize| cops.iter().map(|&c| dist[c][r]).filter(|&x| x != UNREACHABLE).min();
    let records = std::iter::once(&t.placement)
        .chain(&t.rounds)
        .enumerate()
        .map(|(i, r)| {
            let distance = near(&r.cops, r.robber);
            RoundRecord {
                round: i as u32,
                cops: r.cops.clone(),
                robber: r.robber,
                captured: distance.is_some_and(|x| x as u64 <= config.dist),
                distance,
            }
        })
        .collect();
    TranscriptDoc {
        outcome: if t.captured_in.is_some() {
            "captured"
        } else {
            "not_captured"
        },
        captured_in: t.captured_in,
        config,
        records,
    }
}

#[allow(clippy::too_many_arguments)]
fn play_game(
    d: &Drawing,
    cop: &[String],
    robber: RobberKind,
    rounds: u32,
    p: usize,
    dist: u64,
    path: Option<&str>,
    max_states: usize,
) -> Result<TranscriptDoc> {
    let g = d.graph();
    let robber_name = match robber {
        RobberKind::Optimal => "optimal",
        RobberKind::Greedy => "greedy",
    };
    fn go<S: CopStrategy>(
        g: &Graph,
        s: &S,
        robber: RobberKind,
        p: usize,
        d: u64,
        rounds: u32,
        max_states: usize,
    ) -> Result<Transcript> {
        Ok(match robber {
            RobberKind::Greedy => play(g, s, &mut GreedyRobber::new(g), d, rounds)?,
            RobberKind::Optimal => {
                let (_, tables) = cop_win(&GameConfig::new(g, p, d).max_states(max_states))?;
                play(g, s, &mut OptimalRobber { tables: &tables }, d, rounds)?
            }
        })
    }
    let (label, cops, capture, t) = match cop[0].as_str() {
        "optimal" => {
            if cop.len() > 1 {
                bail!("`optimal` takes no arguments");
            }
            let (_, tables) = cop_win(&GameConfig::new(g, p, dist).max_states(max_states))?;
            let s = OptimalCops { tables: &tables };
            let t = match robber {
                RobberKind::Greedy => play(g, &s, &mut GreedyRobber::new(g), dist, rounds)?,
                RobberKind::Optimal => play(g, &s, &mut OptimalRobber { tables: &tables }, dist, rounds)?,
            };
            ("optimal".to_string(), p, dist, t)
        }
        "orchestrate" => {
            let (kind, alpha) = kind_alpha(cop)?;
            let o = orchestrate(d, kind, alpha)?;
            let t = go(g, &o, robber, o.cop_count(), o.capture(), rounds, max_states)?;
            (format!("orchestrate {kind} {alpha}"), o.cop_count(), o.capture(), t)
        }
        "team" => {
            let (kind, alpha) = kind_alpha(cop)?;
            let path: Vec<usize> = path
                .ok_or_else(|| anyhow!("`team` needs --path"))?
                .split(',')
                .map(|v| v.trim().parse::<usize>().context("path vertex"))
                .collect::<Result<_>>()?;
            let all = Subgraph {
                vertices: (0..g.n()).collect(),
                edges: (0..g.m()).collect(),
            };
            let team = crossing_guard_team(d, &all, &path, kind, alpha)?;
            let t = go(g, &team, robber, team.size(), team.capture(), rounds, max_states)?;
            (format!("team {kind} {alpha}"), team.size(), team.capture(), t)
        }
        other => bail!("unknown cop strategy `{other}`"),
    };
    let config = PlayConfig {
        cop: label,
        robber: robber_name.into(),
        cops,
        dist: capture,
        rounds,
    };
    Ok(transcript_doc(g, config, &t))
}

#[cfg(test)]
mod tests;
