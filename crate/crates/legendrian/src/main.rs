use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use legendrian_core::augmentation::{partition_classes, Augmentation};
use legendrian_core::dga::{check_degrees, AlgebraElement, GeneratorKind};
use legendrian_core::moves::{parse_journal, replay, MoveInstance};
use legendrian_core::normal::{a_form, a_form_augmentation, psi, sr_bar_form, srg_form};
use legendrian_core::ruling::sum_two_to_nu;
use legendrian_core::{build_dga, check_d_squared, enumerate_augmentations, enumerate_rulings, nu, parse_front, reconstruct, MarkedFront, ResolvedDga};
use legendrian_dipped::{check_dipped_augmentation, mcs_to_dipped_aug};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "legendrian", version, about = "Invariants of Legendrian knot fronts over Z/2")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct Common {
    /// Print JSON instead of text
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for the parallel parts (default: all cores)
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generators, gradings and differential of the Ng resolution
    Dga {
        file: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Augmentations, chain homotopy classes, rulings and the 2^nu count
    Invariants {
        file: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Morse complex sequences given as marked fronts
    Mcs {
        #[command(subcommand)]
        op: McsOp,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Subcommand)]
enum McsOp {
    /// Check that the marked front is an MCS
    Validate { file: PathBuf },
    /// Move to S R-bar form, printing the journal
    Srbar { file: PathBuf },
    /// Move to A-form, printing the journal and the augmentation read off it
    Aform { file: PathBuf },
    /// Move to the S R-bar_g representative (2-bridge fronts)
    Srg { file: PathBuf },
    /// The augmentation class of the MCS
    Psi { file: PathBuf },
    /// Apply a move journal
    Replay {
        file: PathBuf,
        #[arg(long)]
        journal: PathBuf,
    },
}

/// Text and JSON forms of one report, plus whether its checks passed.
struct Report {
    text: String,
    json: Value,
    ok: bool,
}

fn read_front(path: &Path) -> Result<MarkedFront> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_front(&text).with_context(|| format!("parsing {}", path.display()))
}

fn word(dga: &ResolvedDga, w: &[usize]) -> String {
    if w.is_empty() {
        return "1".into();
    }
    w.iter().map(|&x| format!("q{}", dga.generators[x].id + 1)).collect::<Vec<_>>().join(" ")
}

fn element(dga: &ResolvedDga, e: &AlgebraElement) -> String {
    if e.is_zero() {
        return "0".into();
    }
    e.terms.iter().map(|w| word(dga, w)).collect::<Vec<_>>().join(" + ")
}

fn aug_text(a: &Augmentation) -> String {
    a.values.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

fn journal_text(journal: &[MoveInstance]) -> Vec<String> {
    journal.iter().map(|m| m.to_string()).collect()
}

fn pass(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn cmd_dga(path: &Path) -> Result<Report> {
    let front = read_front(path)?;
    let dga = build_dga(&front)?;
    let ok = check_d_squared(&dga) && check_degrees(&dga);
    let mut text = format!("front: {front}\ngenerators: {}\n", dga.len());
    let mut gens = Vec::new();
    for g in &dga.generators {
        let kind = match g.kind {
            GeneratorKind::Crossing => "crossing",
            GeneratorKind::RightCusp => "right cusp",
        };
        let d = element(&dga, &dga.differential[g.id]);
        writeln!(text, "  q{}  {kind} at event {}, grading {}", g.id + 1, g.source_event + 1, g.grading)?;
        gens.push(json!({
            "name": format!("q{}", g.id + 1),
            "kind": g.kind,
            "event": g.source_event + 1,
            "position": g.position,
            "grading": g.grading,
            "differential": dga.differential[g.id].terms.iter().map(|w| w.iter().map(|x| x + 1).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "differential_text": d,
        }));
    }
    text.push_str("differential:\n");
    for g in &dga.generators {
        writeln!(text, "  d q{} = {}", g.id + 1, element(&dga, &dga.differential[g.id]))?;
    }
    writeln!(text, "d^2 = 0: {}", pass(ok))?;
    let json = json!({ "schema": 1, "command": "dga", "front": front.to_word(), "generators": gens, "d_squared_zero": ok });
    Ok(Report { text, json, ok })
}

fn cmd_invariants(path: &Path) -> Result<Report> {
    let front = read_front(path)?;
    if front.has_marks() {
        bail!("{}: invariants need an unmarked front", path.display());
    }
    let dga = build_dga(&front)?;
    let augs = enumerate_augmentations(&dga);
    let classes = partition_classes(&dga);
    let rulings = enumerate_rulings(&front)?;
    let two_bridge = front.is_two_bridge();
    let mut text = format!("front: {front}\naugmentations: {}\nclasses: {}\nrulings: {}\n", augs.len(), classes.len(), rulings.len());
    let mut rj = Vec::new();
    for r in &rulings {
        let switches: Vec<usize> = r.switches.iter().copied().collect();
        let v = if two_bridge { Some(nu(&front, r)?) } else { None };
        let sw = switches.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(",");
        match v {
            Some(v) => writeln!(text, "  switches {{{sw}}}  nu {v}")?,
            None => writeln!(text, "  switches {{{sw}}}")?,
        }
        rj.push(json!({ "switches": switches, "nu": v }));
    }
    let (sum, ok, check) = if two_bridge {
        let s = sum_two_to_nu(&front, &rulings)?;
        let ok = s == classes.len() as u64;
        writeln!(text, "sum 2^nu: {s}\ncount check: {}", pass(ok))?;
        (Some(s), ok, pass(ok))
    } else {
        text.push_str("count check: skipped, front is not 2-bridge\n");
        (None, true, "skipped")
    };
    let json = json!({
        "schema": 1,
        "command": "invariants",
        "front": front.to_word(),
        "two_bridge": two_bridge,
        "augmentations": augs.len(),
        "augmentation_values": augs.iter().map(aug_text).collect::<Vec<_>>(),
        "classes": classes.len(),
        "class_representatives": classes.iter().map(|c| aug_text(&c[0])).collect::<Vec<_>>(),
        "rulings": rj,
        "sum_two_to_nu": sum,
        "count_check": check,
    });
    Ok(Report { text, json, ok })
}

fn normal_form_report(kind: &str, path: &Path, f: impl Fn(&legendrian_core::Mcs) -> Result<(legendrian_core::Mcs, Vec<MoveInstance>), legendrian_core::error::MoveError>) -> Result<Report> {
    let front = read_front(path)?;
    let mcs = reconstruct(&front)?;
    let (out, journal) = f(&mcs)?;
    let (dipped_ok, _) = dipped_check(&out)?;
    let mut text = format!("{kind}: {}\nmoves: {}\n", out.front, journal.len());
    for m in &journal {
        writeln!(text, "  {m}")?;
    }
    let mut json = json!({
        "schema": 1,
        "command": format!("mcs {kind}"),
        "input": front.to_word(),
        "result": out.front.to_word(),
        "journal": journal_text(&journal),
        "dipped_check": dipped_ok,
    });
    if kind == "aform" {
        let dga = build_dga(&front.underlying())?;
        let e = a_form_augmentation(&out.front, &dga);
        writeln!(text, "augmentation: {}", aug_text(&e))?;
        json["augmentation"] = json!(aug_text(&e));
    }
    Ok(Report { text, json, ok: dipped_ok })
}

/// The dipped augmentation of `mcs` passes the matrix equations.
fn dipped_check(mcs: &legendrian_core::Mcs) -> Result<(bool, usize)> {
    let (d, v) = mcs_to_dipped_aug(mcs)?;
    Ok((check_dipped_augmentation(&d, &v), d.dips()))
}

fn cmd_mcs(op: &McsOp) -> Result<Report> {
    match op {
        McsOp::Validate { file } => {
            let front = read_front(file)?;
            let (text, json, ok) = match reconstruct(&front) {
                Ok(mcs) => {
                    let (dipped, dips) = dipped_check(&mcs)?;
                    let text = format!("front: {front}\nvalid MCS, marks: {}\ndipped check ({dips} dips): {}\n", mcs.marks(), pass(dipped));
                    (text, json!({ "valid": true, "marks": mcs.marks(), "dipped_check": dipped }), dipped)
                }
                Err(e) => (format!("front: {front}\nFAIL: {e}\n"), json!({ "valid": false, "error": e.to_string() }), false),
            };
            let mut json = json;
            json["schema"] = json!(1);
            json["command"] = json!("mcs validate");
            json["front"] = json!(front.to_word());
            Ok(Report { text, json, ok })
        }
        McsOp::Srbar { file } => normal_form_report("srbar", file, sr_bar_form),
        McsOp::Aform { file } => normal_form_report("aform", file, a_form),
        McsOp::Srg { file } => normal_form_report("srg", file, srg_form),
        McsOp::Psi { file } => {
            let front = read_front(file)?;
            let mcs = reconstruct(&front)?;
            let dga = build_dga(&front.underlying())?;
            let rep = psi(&mcs, &dga)?;
            let classes = partition_classes(&dga);
            let idx = classes.iter().position(|c| c[0] == rep).context("class not found")?;
            let text = format!(
                "front: {front}\npsi: class {} of {}, representative {}\n",
                idx + 1,
                classes.len(),
                aug_text(&rep)
            );
            let json = json!({
                "schema": 1,
                "command": "mcs psi",
                "front": front.to_word(),
                "class": idx + 1,
                "classes": classes.len(),
                "representative": aug_text(&rep),
            });
            Ok(Report { text, json, ok: true })
        }
        McsOp::Replay { file, journal } => {
            let front = read_front(file)?;
            let jt = fs::read_to_string(journal).with_context(|| format!("reading {}", journal.display()))?;
            let moves = parse_journal(&jt)?;
            let out = replay(&front, &moves)?;
            let text = format!("replay: {out}\nmoves: {}\n", moves.len());
            let json = json!({
                "schema": 1,
                "command": "mcs replay",
                "input": front.to_word(),
                "result": out.to_word(),
                "moves": moves.len(),
            });
            Ok(Report { text, json, ok: true })
        }
    }
}

fn run(cli: Cli) -> Result<(Report, bool)> {
    let common = match &cli.cmd {
        Cmd::Dga { common, .. } | Cmd::Invariants { common, .. } | Cmd::Mcs { common, .. } => common.clone(),
    };
    if let Some(n) = common.jobs {
        rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global().context("setting up the thread pool")?;
    }
    let report = match &cli.cmd {
        Cmd::Dga { file, .. } => cmd_dga(file)?,
        Cmd::Invariants { file, .. } => cmd_invariants(file)?,
        Cmd::Mcs { op, .. } => cmd_mcs(op)?,
    };
    Ok((report, common.json))
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok((report, json)) => {
            let out = if json {
                format!("{}\n", serde_json::to_string_pretty(&report.json).expect("json"))
            } else {
                report.text
            };
            // a closed pipe is not an error worth reporting
            let _ = std::io::stdout().lock().write_all(out.as_bytes());
            if report.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
