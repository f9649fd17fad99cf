use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde_json::{json, Value};

use finstoch::bayes::bayesian_inverse;
use finstoch::document::{parse_document, to_text, Document, MapDecl};
use finstoch::harness::{run_suite_with, Execution, GenConfig, PropReport, SUITES};
use finstoch::measures::{
    closs_closed_form, conditional_entropy, conditional_information_loss, deviation_by_entropies,
    functoriality_deviation, shannon_entropy, LogBase,
};
use finstoch::morphism::{self, joint_distribution};
use finstoch::structure::{bloom_morphism, bloom_shriek_factorize, code_from_morphism, correct, search_mediator};
use finstoch::structure::{Coalescence, Correction};

use crate::render;
use crate::{Cli, Command, MapArg, PairArgs};

pub struct Output {
    pub text: String,
    pub status: u8,
}

type Res<T> = Result<T, String>;

fn ok(text: String) -> Res<Output> {
    Ok(Output { text, status: 0 })
}

fn load(path: &Path) -> Res<Document> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_document(&text).map_err(|e| format!("{}:{e}", path.display()))
}

fn map<'a>(doc: &'a Document, name: &str) -> Res<&'a MapDecl> {
    doc.map(name).ok_or_else(|| format!("no map named `{name}`"))
}

fn json_text(v: Value) -> String {
    let mut s = serde_json::to_string_pretty(&v).expect("serializable");
    s.push('\n');
    s
}

pub fn run(cli: &Cli) -> Res<Output> {
    let base = LogBase::new(cli.base).ok_or_else(|| format!("base must exceed 1, got {}", cli.base))?;
    let json = cli.json;
    match &cli.command {
        Command::Entropy { file, space } => {
            let doc = load(file)?;
            let p = doc.space(space).ok_or_else(|| format!("no space named `{space}`"))?;
            let h = shannon_entropy(p, base);
            if json {
                return ok(json_text(json!({ "space": space, "entropy": render::entropy_json(h, base) })));
            }
            ok(format!("H({space}) = {}\n", render::entropy(h, base)))
        }
        Command::Condent(MapArg { file, map: name }) => {
            let doc = load(file)?;
            let m = &map(&doc, name)?.morphism;
            let h = conditional_entropy(m, base);
            if json {
                return ok(json_text(json!({ "map": name, "conditional_entropy": render::entropy_json(h, base) })));
            }
            ok(format!("H({name}|{}) = {}\n", map(&doc, name)?.src, render::entropy(h, base)))
        }
        Command::Closs(MapArg { file, map: name }) => {
            let doc = load(file)?;
            let m = &map(&doc, name)?.morphism;
            let (diff, closed) = (conditional_information_loss(m, base), closs_closed_form(m, base));
            if json {
                return ok(json_text(json!({
                    "map": name,
                    "difference_form": render::entropy_json(diff, base),
                    "closed_form": render::entropy_json(closed, base),
                })));
            }
            let mut out = String::new();
            let _ = writeln!(out, "K({name}) = H(p) − H(q) + H(f|p) = {}", render::entropy(diff, base));
            let _ = writeln!(out, "K({name}) closed form            = {}", render::entropy(closed, base));
            ok(out)
        }
        Command::Invert(MapArg { file, map: name }) => invert(&load(file)?, name, json),
        Command::Compose(args) => compose(args, json),
        Command::Coalescable(args) => coalescable(args, json),
        Command::Deviation(PairArgs { file, first, second }) => {
            let doc = load(file)?;
            let (f, g) = (&map(&doc, first)?.morphism, &map(&doc, second)?.morphism);
            let dev = functoriality_deviation(f, g, base).map_err(|e| e.to_string())?;
            let by_entropies = deviation_by_entropies(f, g, base).map_err(|e| e.to_string())?;
            if json {
                return ok(json_text(json!({
                    "first": first,
                    "second": second,
                    "deviation": render::entropy_json(dev, base),
                    "by_entropies": render::entropy_json(by_entropies, base),
                })));
            }
            let mut out = String::new();
            let _ = writeln!(out, "deviation({first}, {second}) = {}", render::entropy(dev, base));
            let _ = writeln!(out, "H(g|q) + H(f|p) − H(g∘f|p) = {}", render::entropy(by_entropies, base));
            ok(out)
        }
        Command::Bloom(MapArg { file, map: name }) => {
            let doc = load(file)?;
            let b = bloom_morphism(&map(&doc, name)?.morphism);
            if json {
                return ok(json_text(json!({
                    "map": name,
                    "bloom": render::map_json(b.map()),
                    "joint": render::space_json(b.tgt()),
                })));
            }
            ok(format!("bloom of {name}\n{}joint {}\n", render::matrix(b.map()), render::space(b.tgt())))
        }
        Command::Factorize(MapArg { file, map: name }) => {
            let doc = load(file)?;
            let m = &map(&doc, name)?.morphism;
            let (bloom, proj) = bloom_shriek_factorize(m).map_err(|e| e.to_string())?;
            let joint = joint_distribution(m);
            if json {
                return ok(json_text(json!({
                    "map": name,
                    "bloom": render::map_json(bloom.map()),
                    "projection": render::map_json(proj.map()),
                    "joint": render::space_json(&joint),
                })));
            }
            ok(format!(
                "{name} = π ∘ bloom\nbloom\n{}projection\n{}joint {}\n",
                render::matrix(bloom.map()),
                render::matrix(proj.map()),
                render::space(&joint)
            ))
        }
        Command::Correctable(MapArg { file, map: name }) => {
            let doc = load(file)?;
            let code = code_from_morphism(&map(&doc, name)?.morphism);
            match correct(&code) {
                Correction::Recoverable(d) => {
                    let text = if json {
                        json_text(json!({ "map": name, "correctable": true, "recovery": render::recovery_json(&d) }))
                    } else {
                        format!("correctable\n{}", render::recovery(&d))
                    };
                    ok(text)
                }
                Correction::Overlap { output, messages } => {
                    let text = if json {
                        json_text(json!({
                            "map": name,
                            "correctable": false,
                            "overlap": { "output": output.as_str(), "messages": [messages.0.as_str(), messages.1.as_str()] },
                        }))
                    } else {
                        format!("not correctable\noutput {output} is reachable from both {} and {}\n", messages.0, messages.1)
                    };
                    Ok(Output { text, status: 1 })
                }
            }
        }
        Command::Propcheck { suite, trials, seed, size, sequential } => {
            let cfg = GenConfig {
                seed: *seed,
                trials: *trials,
                max_size: *size,
                ..GenConfig::default()
            };
            let exec = if *sequential { Execution::Sequential } else { Execution::Parallel };
            propcheck(suite.as_deref(), &cfg, exec, json)
        }
    }
}

fn invert(doc: &Document, name: &str, json: bool) -> Res<Output> {
    let decl = map(doc, name)?;
    let pair = bayesian_inverse(&decl.morphism);
    let filled = pair.uniform_filled();
    let inverse = pair.inverse();
    let inv_name = format!("{name}_bar");
    let mut out = Document::new();
    out.insert_space(decl.tgt.clone(), inverse.src().clone());
    out.insert_space(decl.src.clone(), inverse.tgt().clone());
    out.insert_map(inv_name.clone(), decl.tgt.clone(), decl.src.clone(), inverse.clone());
    let ys = inverse.map().src();
    if json {
        let fill: Vec<&str> = filled.iter().map(|&y| ys[y].as_str()).collect();
        return ok(json_text(json!({
            "map": name,
            "inverse": render::map_json(inverse.map()),
            "uniform_fill": fill,
        })));
    }
    let mut text = String::new();
    for (y, yl) in ys.iter().enumerate() {
        let how = if filled.contains(&y) { "uniform fill" } else { "Bayes rule" };
        let _ = writeln!(text, "# column {yl}: {how}");
    }
    text.push_str(&to_text(&out));
    ok(text)
}

fn compose(args: &PairArgs, json: bool) -> Res<Output> {
    let doc = load(&args.file)?;
    let (f, g) = (map(&doc, &args.first)?, map(&doc, &args.second)?);
    let gf = morphism::compose(&g.morphism, &f.morphism).map_err(|e| e.to_string())?;
    if json {
        return ok(json_text(json!({
            "first": args.first,
            "second": args.second,
            "composite": render::map_json(gf.map()),
            "target": render::space_json(gf.tgt()),
        })));
    }
    ok(format!(
        "{} ∘ {} : {} -> {}\n{}",
        args.second,
        args.first,
        f.src,
        g.tgt,
        render::matrix(gf.map())
    ))
}

fn coalescable(args: &PairArgs, json: bool) -> Res<Output> {
    let doc = load(&args.file)?;
    let (f, g) = (&map(&doc, &args.first)?.morphism, &map(&doc, &args.second)?.morphism);
    match search_mediator(f, g).map_err(|e| e.to_string())? {
        Coalescence::Mediated(h) => {
            let text = if json {
                json_text(json!({ "coalescable": true, "mediator": render::mediator_json(&h) }))
            } else {
                format!("coalescable\n{}", render::mediator(&h))
            };
            ok(text)
        }
        Coalescence::Obstructed(o) => {
            let text = if json {
                json_text(json!({
                    "coalescable": false,
                    "witness": { "z": o.z.as_str(), "x": o.x.as_str(), "ys": [o.ys.0.as_str(), o.ys.1.as_str()] },
                }))
            } else {
                format!("not coalescable\nwitness {o}\n")
            };
            Ok(Output { text, status: 1 })
        }
    }
}

fn propcheck(suite: Option<&str>, cfg: &GenConfig, exec: Execution, json: bool) -> Res<Output> {
    let names: Vec<&str> = match suite {
        Some(s) => vec![s],
        None => SUITES.to_vec(),
    };
    let mut reports: Vec<PropReport> = Vec::new();
    for name in names {
        reports.push(run_suite_with(name, cfg, exec).map_err(|e| e.to_string())?);
    }
    let failed = reports.iter().filter(|r| !r.passed()).count();
    let status = u8::from(failed > 0);
    if json {
        return Ok(Output {
            text: json_text(json!({ "config": cfg, "reports": reports, "failed": failed })),
            status,
        });
    }
    let mut out = String::new();
    for r in &reports {
        let verdict = if r.passed() { "PASS" } else { "FAIL" };
        let _ = writeln!(
            out,
            "{verdict} {}: {} trials, {} failures, max residual {:.3e}",
            r.suite,
            r.trials,
            r.failures.len(),
            r.max_residual
        );
        for f in &r.failures {
            let _ = writeln!(out, "  trial {}: {}: observed {}, expected {}", f.trial, f.check, f.observed, f.expected);
            let _ = writeln!(out, "  witness {}", f.witness.to_json());
        }
    }
    let _ = writeln!(
        out,
        "{} suites, {failed} failed (seed {}, {} trials each)",
        reports.len(),
        cfg.seed,
        cfg.trials
    );
    Ok(Output { text: out, status })
}
