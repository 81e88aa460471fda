use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use annulus_core::analysis::eigenvalues;
use annulus_core::corpus::annulus_corpus;
use annulus_core::heights::{flip_components, tilings_by_flux};
use annulus_core::homology::Homology;
use annulus_core::io::{parse_surface, poly_to_json, to_gluing_text};
use annulus_core::kasteleyn::{flux_polynomial_with, Engine};
use annulus_core::oracle::{enumerate_tilings, visit_matchings, Tiling};
use annulus_core::track::{block_at_q, connection_matrix, trace_polynomial};
use annulus_core::QuadSurface;

mod verify;

use verify::Status;

#[derive(Parser)]
#[command(name = "annulus", version, about = "Flux and volume counting of domino tilings of quadriculated annuli")]
struct Cli {
    /// Seed for anything random (corpus, bench).
    #[arg(long, global = true, default_value_t = 2024)]
    seed: u64,
    /// Square-count cap for brute-force enumeration.
    #[arg(long, global = true, default_value_t = annulus_core::oracle::DEFAULT_CAP)]
    cap: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum EngineArg {
    Det,
    Interp,
}

#[derive(Subcommand)]
enum Command {
    /// Load and validate a region or gluing file.
    Load {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Flux polynomial as JSON triples.
    Phi {
        file: PathBuf,
        /// Compute for the n-fold cover instead.
        #[arg(long, default_value_t = 1)]
        cover: usize,
        #[arg(long, value_enum, default_value_t = EngineArg::Det)]
        engine: EngineArg,
    },
    /// Connection matrix of the annulus cut open along its default cut.
    Transfer {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        flux: Option<i64>,
        /// Evaluate entries at this positive q.
        #[arg(long)]
        q: Option<f64>,
    },
    /// Flip classes among the tilings of a given flux.
    Flips {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        flux: Option<i64>,
    },
    /// List tilings with flux, volume and sign relative to the first.
    Enumerate {
        file: PathBuf,
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Check the theorems on one annulus.
    Verify {
        file: PathBuf,
        #[arg(long)]
        all: bool,
    },
    /// List the seeded corpus, optionally writing gluing files.
    Corpus {
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// CSV timings of the determinant engines and the transfer matrix on covers.
    Bench {
        #[arg(long, default_value_t = 3)]
        max_cover: usize,
    },
}

/// A check failed; input errors travel as `anyhow::Error`.
struct Failed;

fn load(path: &Path) -> anyhow::Result<QuadSurface> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_surface(&text).with_context(|| format!("loading {}", path.display()))
}

fn load_annulus(path: &Path) -> anyhow::Result<QuadSurface> {
    let s = load(path)?;
    if !s.is_annulus() {
        bail!("{}: {}", path.display(), annulus_core::Error::NotAnAnnulus);
    }
    Ok(s)
}

fn print_json(v: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("json"));
}

fn cover_of(a: &QuadSurface, n: usize) -> anyhow::Result<QuadSurface> {
    if n == 1 {
        return Ok(a.clone());
    }
    Ok(a.cut_open(&a.find_cut()?)?.n_fold(n)?.close_up()?)
}

fn engine(e: EngineArg) -> Engine {
    match e {
        EngineArg::Det => Engine::Det,
        EngineArg::Interp => Engine::Interp,
    }
}

fn cmd_load(path: &Path, as_json: bool) -> anyhow::Result<()> {
    let s = load(path)?;
    let (black, white) = s.color_counts();
    let topology = if s.is_annulus() { "annulus" } else { "disk" };
    let curvatures: Vec<i64> = (0..s.boundary_components().len()).map(|c| s.component_curvature(c)).collect();
    let walls = s.find_walls().len();
    let cut = if s.is_annulus() { Some(s.find_cut()?.len()) } else { None };
    if as_json {
        print_json(&json!({
            "squares": s.num_squares(),
            "black": black,
            "white": white,
            "topology": topology,
            "boundary_curvatures": curvatures,
            "walls": walls,
            "cut_length": cut,
        }));
        return Ok(());
    }
    let rows = [
        ("squares", s.num_squares().to_string()),
        ("black / white", format!("{black} / {white}")),
        ("topology", topology.to_string()),
        ("boundary curvature", format!("{curvatures:?}")),
        ("walls", walls.to_string()),
        ("shortest cut", cut.map_or("-".into(), |c| c.to_string())),
    ];
    for (k, v) in rows {
        println!("{k:<20}{v}");
    }
    Ok(())
}

fn cmd_transfer(path: &Path, flux: Option<i64>, q: Option<f64>) -> anyhow::Result<()> {
    let a = load_annulus(path)?;
    let c = connection_matrix(&a.cut_open(&a.find_cut()?)?)?;
    let mut blocks = Vec::new();
    for b in c.blocks.values().filter(|b| flux.is_none_or(|f| f == b.flux)) {
        let entries = match q {
            Some(q) => {
                let m = block_at_q(&b.entries, q);
                let rows: Vec<Vec<f64>> = m.row_iter().map(|r| r.iter().copied().collect()).collect();
                let ev: Vec<[f64; 2]> =
                    if m.is_square() { eigenvalues(&m).iter().map(|z| [z.re, z.im]).collect() } else { Vec::new() };
                json!({ "values": rows, "eigenvalues": ev })
            }
            None => serde_json::to_value(&b.entries)?,
        };
        blocks.push(json!({ "flux": b.flux, "rows": b.rows, "cols": b.cols, "entries": entries }));
    }
    print_json(&json!({
        "imbalance": c.imbalance,
        "trace": poly_to_json(&trace_polynomial(&c)),
        "blocks": blocks,
    }));
    Ok(())
}

fn cmd_flips(path: &Path, flux: Option<i64>, cap: usize) -> anyhow::Result<()> {
    let a = load_annulus(path)?;
    let classes = tilings_by_flux(&a, cap)?;
    let mut out = Vec::new();
    for (f, ts) in classes.iter().filter(|(f, _)| flux.is_none_or(|g| g == **f)) {
        let sizes = flip_components(&a, ts)?;
        out.push(json!({ "flux": f, "tilings": ts.len(), "components": sizes, "connected": sizes.len() <= 1 }));
    }
    print_json(&json!(out));
    Ok(())
}

fn dominoes(s: &QuadSurface, t: &Tiling) -> Vec<[usize; 2]> {
    t.edges.iter().map(|&e| [s.adjacency()[e].black, s.adjacency()[e].white]).collect()
}

fn cmd_enumerate(path: &Path, limit: Option<usize>, cap: usize) -> anyhow::Result<()> {
    let s = load(path)?;
    let tilings = match limit {
        Some(n) => {
            let mut out = Vec::new();
            if n == 0 {
                return {
                    print_json(&json!({ "count": 0, "tilings": [] }));
                    Ok(())
                };
            }
            visit_matchings(&s, &vec![true; s.num_squares()], |e| {
                out.push(Tiling::new(e.to_vec()));
                out.len() < n
            });
            out
        }
        None => enumerate_tilings(&s, cap)?,
    };
    let hom = Homology::new(&s)?;
    let mut rows = Vec::new();
    if let Some(t0) = tilings.first() {
        for t in &tilings {
            let inv = hom.tiling_invariants(t, t0)?;
            rows.push(json!({
                "dominoes": dominoes(&s, t),
                "flux": inv.flux,
                "volume": inv.volume,
                "sign": inv.sign,
            }));
        }
    }
    print_json(&json!({ "count": tilings.len(), "tilings": rows }));
    Ok(())
}

fn cmd_verify(path: &Path, all: bool, cap: usize) -> anyhow::Result<Result<(), Failed>> {
    let a = load_annulus(path)?;
    if !a.is_balanced() {
        bail!("{}: {}", path.display(), annulus_core::Error::UnbalancedAnnulus);
    }
    let verdicts = verify::verify(&a, cap, all)?;
    for v in &verdicts {
        let status = match v.status {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::Skipped => "skip",
        };
        eprintln!("{:<14}{status:<6}{}", v.check, v.detail);
    }
    print_json(&serde_json::to_value(&verdicts)?);
    if verdicts.iter().any(|v| v.status == Status::Fail) {
        Ok(Err(Failed))
    } else {
        Ok(Ok(()))
    }
}

fn cmd_corpus(seed: u64, out: Option<&Path>) -> anyhow::Result<()> {
    let corpus = annulus_corpus(seed);
    if let Some(dir) = out {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    let mut out_stream = io::stdout().lock();
    writeln!(out_stream, "{:<28}{:<20}{:>8}{:>7}", "name", "kind", "squares", "walls")?;
    for e in &corpus {
        let walls = e.surface.find_walls().len();
        writeln!(out_stream, "{:<28}{:<20}{:>8}{:>7}", e.name, format!("{:?}", e.kind), e.surface.num_squares(), walls)?;
        if let Some(dir) = out {
            let path = dir.join(format!("{}.glu", e.name));
            fs::write(&path, to_gluing_text(&e.surface)).with_context(|| format!("writing {}", path.display()))?;
        }
    }
    Ok(())
}

fn millis(t: Instant) -> String {
    format!("{:.3}", t.elapsed().as_secs_f64() * 1e3)
}

fn cmd_bench(seed: u64, max_cover: usize) -> anyhow::Result<()> {
    let mut out = io::stdout().lock();
    writeln!(out, "name,cover,squares,det_ms,interp_ms,transfer_ms,agree")?;
    for e in annulus_corpus(seed) {
        let seg = e.segment()?;
        for n in 1..=max_cover {
            let cover_seg = seg.n_fold(n)?;
            let a = cover_seg.close_up()?;
            let t = Instant::now();
            let det = flux_polynomial_with(&a, Engine::Det)?;
            let det_ms = millis(t);
            let t = Instant::now();
            let interp = flux_polynomial_with(&a, Engine::Interp)?;
            let interp_ms = millis(t);
            // the transfer matrix of the cover is the n-th power of the base one
            let t = Instant::now();
            let c = connection_matrix(&seg)?;
            let mut blocks = c.clone();
            for b in blocks.blocks.values_mut() {
                b.entries = annulus_core::track::mat_pow(&b.entries, n as u32);
            }
            let tr = trace_polynomial(&blocks);
            let transfer_ms = millis(t);
            let agree = det == interp && tr.equals_up_to_unit(&det);
            writeln!(out, "{},{n},{},{det_ms},{interp_ms},{transfer_ms},{agree}", e.name, a.num_squares())?;
        }
    }
    Ok(())
}

fn run(cli: Cli) -> anyhow::Result<Result<(), Failed>> {
    match cli.command {
        Command::Load { file, json } => cmd_load(&file, json)?,
        Command::Phi { file, cover, engine: e } => {
            if cover == 0 {
                bail!("--cover must be at least 1");
            }
            let a = cover_of(&load_annulus(&file)?, cover)?;
            println!("{}", poly_to_json(&flux_polynomial_with(&a, engine(e))?));
        }
        Command::Transfer { file, flux, q } => cmd_transfer(&file, flux, q)?,
        Command::Flips { file, flux } => cmd_flips(&file, flux, cli.cap)?,
        Command::Enumerate { file, limit } => cmd_enumerate(&file, limit, cli.cap)?,
        Command::Verify { file, all } => return cmd_verify(&file, all, cli.cap),
        Command::Corpus { out } => cmd_corpus(cli.seed, out.as_deref())?,
        Command::Bench { max_cover } => cmd_bench(cli.seed, max_cover)?,
    }
    Ok(Ok(()))
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(Failed)) => ExitCode::from(1),
        Err(e) if e.downcast_ref::<io::Error>().is_some_and(|e| e.kind() == io::ErrorKind::BrokenPipe) => {
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
