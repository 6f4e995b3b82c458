use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use wirecx::format::{
    arrangement_from_specs, parse_graph, read_text, resolve_link, write_presentation, write_wired, ComplexFile,
};
use wirecx::iso::{canonical_key, complexes_isomorphic, IsoGroup, DEFAULT_GROUP_BOUND};
use wirecx::presentation::{positively_orientable_strict, wired_to_presentation};
use wirecx::{fixtures, graph::DEFAULT_AUT_BOUND, FacePattern, Graph, SearchConfig, WiredComplex};

#[derive(Parser)]
#[command(name = "wirecx", version, about = "Enumerate and check triangle complexes with prescribed links")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OnOff {
    On,
    Off,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate complete wired complexes over the given links.
    Enumerate {
        /// Link specs (builtin names or graph files), comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        links: Vec<String>,
        /// Corner link indices `i,j,k`; repeatable. Default: all triples.
        #[arg(long, value_parser = parse_pattern)]
        pattern: Vec<FacePattern>,
        /// Wired file whose faces seed the search.
        #[arg(long)]
        seed_file: Option<PathBuf>,
        #[arg(long)]
        max_solutions: Option<usize>,
        #[arg(long, value_enum, default_value = "on")]
        dedup: OnOff,
        #[arg(long, env = "WIRECX_JOBS", default_value_t = 1)]
        jobs: usize,
        #[arg(long, default_value_t = 2)]
        split_depth: usize,
        #[arg(long, default_value_t = DEFAULT_GROUP_BOUND)]
        group_bound: u128,
        /// Directory receiving one wired file per class (or per solution).
        #[arg(long)]
        out: Option<PathBuf>,
        /// File receiving the key=value run summary.
        #[arg(long)]
        stats: Option<PathBuf>,
    },
    /// Exit 0 if the two wired complexes are isomorphic, 1 if not.
    Isomorphic {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        witness: bool,
        #[arg(long, default_value_t = DEFAULT_GROUP_BOUND)]
        group_bound: u128,
    },
    /// Print the canonical key of a wired complex as lowercase hex.
    Canonical {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_GROUP_BOUND)]
        group_bound: u128,
    },
    /// Convert a wired complex to a presentation complex.
    Convert {
        #[arg(long)]
        wired: PathBuf,
        /// Print the words as a bracketed list instead of a presentation file.
        #[arg(long)]
        list: bool,
    },
    /// Infer vertices of a presentation from its face words.
    InferVertices { file: PathBuf },
    /// Check every vertex link against target graphs.
    Verify {
        file: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        targets: Vec<String>,
    },
    /// Decide whether all faces can be made positively oriented.
    Orientable {
        file: PathBuf,
        /// Forbid reading faces backwards.
        #[arg(long)]
        strict: bool,
    },
    /// Print vertex and edge counts, regularity, girth and automorphism group order.
    GraphInfo { graph: String },
    /// Inspect the bundled fixtures.
    Fixtures {
        #[arg(long)]
        check: bool,
        #[arg(long)]
        list: bool,
        /// Write every fixture into this directory.
        #[arg(long)]
        extract: Option<PathBuf>,
    },
}

fn parse_pattern(s: &str) -> Result<FacePattern, String> {
    let parts: Vec<usize> =
        s.split(',').map(|p| p.trim().parse().map_err(|_| format!("bad pattern `{s}`"))).collect::<Result<_, _>>()?;
    match parts[..] {
        [a, b, c] => Ok(FacePattern::new(a, b, c)),
        _ => Err(format!("pattern `{s}` needs three link indices")),
    }
}

/// Reads a complex file; a missing path whose last component names a
/// bundled fixture falls back to the bundled copy.
fn load_complex(path: &Path) -> Result<ComplexFile> {
    if !path.exists() {
        if let Some(f) = path.file_name().and_then(|n| n.to_str()).and_then(fixtures::get) {
            return ComplexFile::parse(f.text).with_context(|| format!("bundled fixture {}", f.id));
        }
    }
    Ok(ComplexFile::load(path)?)
}

fn load_wired(path: &Path) -> Result<WiredComplex> {
    match load_complex(path)? {
        ComplexFile::Wired(w) => Ok(w.complex(path.parent())?),
        _ => bail!("{}: expected a wired complex file", path.display()),
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Enumerate {
            links,
            pattern,
            seed_file,
            max_solutions,
            dedup,
            jobs,
            split_depth,
            group_bound,
            out,
            stats,
        } => {
            let arr = Arc::new(arrangement_from_specs(&links, None)?);
            let seed_faces = match seed_file {
                Some(p) => match load_complex(&p)? {
                    ComplexFile::Wired(w) => w.faces,
                    _ => bail!("{}: seed file must be a wired complex file", p.display()),
                },
                None => Vec::new(),
            };
            let cfg = SearchConfig {
                patterns: pattern,
                seed_faces,
                max_solutions,
                dedup: matches!(dedup, OnOff::On),
                group_bound,
                jobs,
                split_depth,
                ..Default::default()
            };
            let result = wirecx::enumerate(arr.clone(), &cfg)?;
            if let Some(dir) = out {
                fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
                let names = arr.names().to_vec();
                if cfg.dedup {
                    for (i, c) in result.classes.iter().enumerate() {
                        let mut text = format!("# class {} multiplicity={}\n", i + 1, c.multiplicity);
                        text.push_str(&write_wired(&names, c.representative.faces()));
                        fs::write(dir.join(format!("class-{:04}.wired", i + 1)), text)?;
                    }
                } else {
                    for (i, c) in result.solutions.iter().enumerate() {
                        fs::write(dir.join(format!("solution-{:06}.wired", i + 1)), write_wired(&names, c.faces()))?;
                    }
                }
            }
            let summary = result.stats.to_key_values();
            if let Some(path) = stats {
                fs::write(&path, &summary).with_context(|| format!("writing {}", path.display()))?;
            }
            print!("{summary}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Isomorphic { a, b, witness, group_bound } => {
            let (ca, cb) = (load_wired(&a)?, load_wired(&b)?);
            match complexes_isomorphic(&ca, &cb, group_bound) {
                Some(map) => {
                    println!("isomorphic=true");
                    if witness {
                        let images: Vec<String> = map.iter().map(u32::to_string).collect();
                        println!("witness={}", images.join(" "));
                    }
                    Ok(ExitCode::SUCCESS)
                }
                None => {
                    println!("isomorphic=false");
                    Ok(ExitCode::from(1))
                }
            }
        }
        Command::Canonical { file, group_bound } => {
            let c = load_wired(&file)?;
            let group = IsoGroup::new(c.arrangement().clone())?;
            println!("{}", canonical_key(&c, &group, group_bound)?.to_hex());
            Ok(ExitCode::SUCCESS)
        }
        Command::Convert { wired, list } => {
            let p = wired_to_presentation(&load_wired(&wired)?);
            if list {
                println!("{}", p.words_bracketed());
            } else {
                print!("{}", write_presentation(&p));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::InferVertices { file } => {
            let p = match load_complex(&file)? {
                ComplexFile::Presentation(p) => p.with_inferred_vertices(),
                other => other.presentation(file.parent())?.with_inferred_vertices(),
            };
            println!("# vertices={}", p.vertex_count().unwrap_or(0));
            print!("{}", write_presentation(&p));
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { file, targets } => {
            let p = load_complex(&file)?.presentation(file.parent())?;
            let targets = targets.iter().map(|t| resolve_link(t, None)).collect::<Result<Vec<_>, _>>()?;
            let v = p.verify_links(&targets)?;
            for verdict in &v.verdicts {
                let name = verdict.matched.map_or("none", |i| v.names[i].as_str());
                println!("vertex={} link={name}", verdict.vertex);
            }
            let tally: Vec<String> = v.tally().iter().map(|(k, n)| format!("{k}:{n}")).collect();
            println!("tally={}", tally.join(","));
            println!("result={}", if v.passed() { "pass" } else { "fail" });
            Ok(if v.passed() { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Orientable { file, strict } => {
            let ok = match load_complex(&file)? {
                ComplexFile::Wired(w) => {
                    let c = w.complex(file.parent())?;
                    if strict {
                        positively_orientable_strict(&c)
                    } else {
                        wirecx::positively_orientable(&c)
                    }
                }
                other => other.presentation(file.parent())?.positive_orientation(!strict).is_some(),
            };
            println!("orientable={ok}");
            Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::GraphInfo { graph } => {
            let g = match Graph::builtin(&graph) {
                Ok(g) => g,
                Err(_) => parse_graph(&read_text(Path::new(&graph))?).map_err(|e| anyhow!("{graph}: {e}"))?.1,
            };
            let regular = g.regular_degree().map_or("-".to_string(), |d| d.to_string());
            let aut = g.automorphisms(DEFAULT_AUT_BOUND)?.len();
            println!(
                "vertices={} edges={} regular={regular} girth={} aut={aut}",
                g.n(),
                g.edge_count(),
                g.girth()
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Fixtures { check, list, extract } => {
            if let Some(dir) = &extract {
                fs::create_dir_all(dir)?;
                for f in fixtures::all() {
                    fs::write(dir.join(f.id), f.text)?;
                }
            }
            if list {
                for f in fixtures::all() {
                    println!("{} {:?}", f.id, f.format);
                }
            }
            if check {
                let mut failed = 0;
                for r in fixtures::check_all() {
                    match r.result {
                        Ok(msg) => println!("ok {} {msg}", r.id),
                        Err(msg) => {
                            failed += 1;
                            println!("FAIL {} {msg}", r.id);
                        }
                    }
                }
                println!("result={}", if failed == 0 { "pass" } else { "fail" });
                if failed > 0 {
                    return Ok(ExitCode::from(1));
                }
            }
            if !check && !list && extract.is_none() {
                bail!("fixtures: pass --check, --list or --extract DIR");
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
