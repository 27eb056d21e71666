use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use anyhow::{bail, ensure, Result};
use coarsekit_core::criteria::{
    asdim0_row, chain_components, detect_m2, detect_m32, divergence_row, ends_report, higson_from_separated,
    higson_max, separation_profile, split_witness, variation_report, HigsonFunction, PairReport, Separation,
    TowerOutcome, TowerParams, VariationReport,
};
use coarsekit_core::roe::{
    check_identities, cluster_rep, commutant_dimension, kernel_check, BandOperator, ClusterRealization,
};
use coarsekit_core::space::{check_metric, ulf_profile};
use coarsekit_core::zoo::Growth;
use coarsekit_core::{rational, verify, Epistemic, PointId, Rational, SpaceSpec, Window, WindowSpec};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::args::{AnalyzeCmd, DetectCmd, HigsonCmd, RoeCmd, SpaceCmd, WindowArgs};
use crate::input::{build_window, load_json, load_window_spec, GnsConfig, SetsFile};
use crate::report::{CommandEcho, Fingerprint, Report, Witness};
use crate::{Output, UsageError};

struct Loaded {
    spec: WindowSpec,
    w: Window,
    echo: BTreeMap<String, Value>,
}

impl Loaded {
    fn open(args: &WindowArgs) -> Result<Self> {
        let spec = load_window_spec(&args.space, args.horizon)?;
        let w = build_window(&spec)?;
        let mut echo = BTreeMap::new();
        echo.insert("space".to_string(), json!(args.space.display().to_string()));
        if let Some(h) = args.horizon {
            echo.insert("horizon".to_string(), json!(h));
        }
        Ok(Loaded { spec, w, echo })
    }

    fn param(mut self, key: &str, value: impl serde::Serialize) -> Self {
        self.echo.insert(key.to_string(), serde_json::to_value(value).expect("params serialize"));
        self
    }

    fn report(&self, name: &str, tag: Epistemic, results: Value) -> Report {
        let command = CommandEcho { name: name.to_string(), params: json!(self.echo) };
        Report::new(command, Some(Fingerprint::new(&self.spec, self.w.len())), tag, results)
    }
}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

fn rat(q: &Rational) -> Value {
    json!(rational::format(q))
}

/// Re-checks a certificate before it leaves the process.
fn checked(w: &Window, witness: Witness) -> Result<Witness> {
    let verdict = match &witness {
        Witness::Tower(t) => verify::tower(w, t),
        Witness::PairFamily(p) => verify::pair_family(w, p),
        Witness::Split(s) => verify::split(w, s),
    };
    if let Err(reason) = verdict {
        bail!(coarsekit_core::Error::Invariant(format!("search produced a rejected certificate: {reason}")));
    }
    Ok(witness)
}

fn csv_text(rows: impl IntoIterator<Item = (u64, PointId, String)>) -> Result<String> {
    let mut wr = csv::Writer::from_writer(Vec::new());
    wr.write_record(["r", "point", "value"])?;
    for (r, p, v) in rows {
        wr.write_record([r.to_string(), p.0.to_string(), v])?;
    }
    Ok(String::from_utf8(wr.into_inner()?)?)
}

fn output(report: Report) -> Output {
    Output { json: report.to_json(), csv: None, success: true }
}

pub fn space(cmd: &SpaceCmd) -> Result<(Output, Option<PathBuf>)> {
    match cmd {
        SpaceCmd::Build { window, points, out } => {
            let l = Loaded::open(window)?.param("points", points);
            let w = &l.w;
            let mut results = json!({
                "points": w.len(),
                "horizon": w.horizon(),
                "max_depth": w.ids().map(|x| w.depth(x)).max().unwrap_or(0),
                "basepoint": w.coords(w.basepoint()),
            });
            if *points {
                let list: Vec<Value> =
                    w.ids().map(|x| json!({"id": x, "coords": w.coords(x), "depth": w.depth(x)})).collect();
                results["point_list"] = json!(list);
            }
            Ok((output(l.report("space build", Epistemic::Profile, results)), out.out.clone()))
        }
        SpaceCmd::Info { window, samples, seed, rmax, out } => {
            let l = Loaded::open(window)?.param("samples", samples).param("seed", seed).param("rmax", rmax);
            let w = &l.w;
            let rmax = rmax.unwrap_or(w.horizon().min(4));
            let metric = check_metric(w, *samples, *seed)?;
            let ulf = ulf_profile(w, rmax)?;
            let clean = metric.is_clean();
            let results = json!({
                "points": w.len(),
                "metric": metric,
                "ball_sizes": ulf.iter().map(|(r, m)| json!({"r": r, "max_ball": m})).collect::<Vec<_>>(),
            });
            let mut o = output(l.report("space info", Epistemic::Profile, results));
            o.success = clean;
            Ok((o, out.out.clone()))
        }
    }
}

fn separation_value(s: &Separation) -> String {
    match s {
        Separation::Exact(v) => v.to_string(),
        Separation::ExceedsWindow(b) => format!(">={b}"),
    }
}

pub fn analyze(cmd: &AnalyzeCmd) -> Result<(Output, Option<PathBuf>)> {
    match cmd {
        AnalyzeCmd::Profile { window, radii, annuli, csv, out } => {
            let l = Loaded::open(window)?.param("r", radii).param("annuli", annuli);
            let w = &l.w;
            let rows = radii
                .par_iter()
                .map(|&r| {
                    let profile = separation_profile(w, r)?;
                    let row = divergence_row(&profile, w, *annuli)?;
                    Ok((profile, row))
                })
                .collect::<Result<Vec<_>>>()?;
            let summary: Vec<Value> = rows
                .iter()
                .map(|(p, row)| {
                    let exact: Vec<u64> = p.values.values().filter_map(|s| s.exact()).collect();
                    json!({
                        "r": p.r,
                        "interior_points": p.values.len(),
                        "exact": exact.len(),
                        "exceeds_window": p.values.len() - exact.len(),
                        "min_exact": exact.iter().min(),
                        "max_exact": exact.iter().max(),
                        "divergence": row,
                    })
                })
                .collect();
            let mut o = output(l.report("analyze profile", Epistemic::Profile, json!({ "rows": summary })));
            if let Some(path) = csv {
                let text = csv_text(
                    rows.iter().flat_map(|(p, _)| p.values.iter().map(|(&x, s)| (p.r, x, separation_value(s)))),
                )?;
                o.csv = Some((path.clone(), text));
            }
            Ok((o, out.out.clone()))
        }
        AnalyzeCmd::Asdim0 { window, scales, margin, csv, out } => {
            let l = Loaded::open(window)?.param("scales", scales).param("margin", margin);
            let w = &l.w;
            let top = *scales.iter().max().ok_or_else(|| usage("no scales given"))?;
            if top > w.horizon() {
                return Err(usage(format!("scale {top} exceeds the window horizon {}", w.horizon())));
            }
            let margin = margin.unwrap_or(top + 1);
            let all: Vec<PointId> = w.ids().collect();
            let decs: Vec<_> = scales.par_iter().map(|&r| chain_components(w, &all, r, margin)).collect();
            let rows: Vec<_> = decs.iter().map(|d| asdim0_row(d, w)).collect();
            let mut o =
                output(l.report("analyze asdim0", Epistemic::Profile, json!({ "margin": margin, "rows": rows })));
            if let Some(path) = csv {
                let mut lines = Vec::new();
                for d in &decs {
                    let mut per_point: Vec<(PointId, u64)> = d
                        .components
                        .iter()
                        .flat_map(|c| c.members.iter().map(move |&x| (x, c.diameter)))
                        .filter(|&(x, _)| w.is_interior(x, margin))
                        .collect();
                    per_point.sort_unstable();
                    lines.extend(per_point.into_iter().map(|(x, diam)| (d.r, x, diam.to_string())));
                }
                o.csv = Some((path.clone(), csv_text(lines)?));
            }
            Ok((o, out.out.clone()))
        }
        AnalyzeCmd::Ends { window, r, rho, margin, out } => {
            let l = Loaded::open(window)?.param("r", r).param("rho", rho).param("margin", margin);
            let w = &l.w;
            let rep = ends_report(w, *r, *rho, *margin)?;
            let comps: Vec<Value> = rep
                .components
                .iter()
                .map(|c| {
                    json!({
                        "size": c.members.len(),
                        "diameter": c.diameter,
                        "touches_horizon": c.touches_horizon,
                        "nearest": w.coords(c.members[0]),
                    })
                })
                .collect();
            let results = json!({"r": rep.r, "rho": rep.rho, "margin": rep.margin, "count": rep.count, "components": comps});
            Ok((output(l.report("analyze ends", Epistemic::Profile, results)), out.out.clone()))
        }
        AnalyzeCmd::Split { window, r, rho, margin, out } => {
            let l = Loaded::open(window)?.param("r", r).param("rho", rho).param("margin", margin);
            let w = &l.w;
            let report = match split_witness(w, *r, *rho, *margin)? {
                Some(wit) => {
                    let results = json!({"r": wit.r, "rho": wit.rho, "margin": wit.margin, "a_size": wit.a.len(), "b_size": wit.b.len()});
                    l.report("analyze split", Epistemic::Certificate, results)
                        .with_witness(checked(w, Witness::Split(wit))?)
                }
                None => {
                    let ends = ends_report(w, *r, *rho, *margin)?;
                    let results = json!({"r": r, "rho": rho, "margin": ends.margin, "ends": ends.count});
                    l.report("analyze split", Epistemic::NoWitnessAtScale, results)
                }
            };
            Ok((output(report), out.out.clone()))
        }
    }
}

pub fn detect(cmd: &DetectCmd) -> Result<(Output, Option<PathBuf>)> {
    match cmd {
        DetectCmd::M2 { window, levels, towers, s0, c, budget, out } => {
            let params = TowerParams { levels: *levels, towers: *towers, s0: *s0, c: *c, node_budget: *budget };
            let bounds = params.bounds()?;
            let l = Loaded::open(window)?
                .param("J", levels)
                .param("N", towers)
                .param("s0", s0)
                .param("c", c)
                .param("budget", budget);
            let w = &l.w;
            let report = match detect_m2(w, &params)? {
                TowerOutcome::Found { witness, nodes } => {
                    let results = json!({"outcome": "FOUND", "nodes": nodes, "bounds": bounds});
                    l.report("detect m2", Epistemic::Certificate, results)
                        .with_witness(checked(w, Witness::Tower(witness))?)
                }
                TowerOutcome::NoWitnessAtScale { exhaustive, nodes, viable_bases } => {
                    let results = json!({
                        "outcome": "NO_WITNESS_AT_SCALE",
                        "exhaustive": exhaustive,
                        "nodes": nodes,
                        "viable_bases": viable_bases,
                        "bounds": bounds,
                    });
                    l.report("detect m2", Epistemic::NoWitnessAtScale, results)
                }
            };
            Ok((output(report), out.out.clone()))
        }
        DetectCmd::M32 { window, scales, bound, count, out } => {
            ensure!(!scales.is_empty(), usage("no scales given"));
            let l = Loaded::open(window)?.param("scales", scales).param("B", bound).param("N", count);
            let w = &l.w;
            let parts = scales
                .par_iter()
                .map(|&r| Ok(detect_m32(w, &[r], *bound, *count)?))
                .collect::<Result<Vec<PairReport>>>()?;
            let merged = PairReport {
                bound: *bound,
                count: *count,
                scales: parts.into_iter().flat_map(|p| p.scales).collect(),
            };
            let summary: Vec<Value> = merged
                .scales
                .iter()
                .map(|s| match s {
                    coarsekit_core::criteria::ScaleOutcome::Found { family } => {
                        json!({"r": family.r, "outcome": "FOUND", "pairs": family.pairs.len()})
                    }
                    coarsekit_core::criteria::ScaleOutcome::NoWitnessAtScale { r, max_pairs } => {
                        json!({"r": r, "outcome": "NO_WITNESS_AT_SCALE", "max_pairs": max_pairs})
                    }
                })
                .collect();
            let results = json!({"bound": bound, "count": count, "scales": summary});
            let report = match merged.witness() {
                Some(wit) => l
                    .report("detect m32", Epistemic::Certificate, results)
                    .with_witness(checked(w, Witness::PairFamily(wit))?),
                None => l.report("detect m32", Epistemic::NoWitnessAtScale, results),
            };
            Ok((output(report), out.out.clone()))
        }
    }
}

fn build_higson(w: &Window, sets: &Path) -> Result<HigsonFunction> {
    let file: SetsFile = load_json(sets)?;
    let (a, b) = file.resolve(w).map_err(|e| usage(format!("{e:#}")))?;
    Ok(higson_from_separated(&a, &b, w)?)
}

fn variation_json(v: &VariationReport) -> Value {
    json!({
        "epsilon": rat(&v.epsilon),
        "r": v.r,
        "violations": v.violations.len(),
        "enclosing_radius": v.enclosing_radius,
        "max_variation": rat(&v.max_variation),
    })
}

pub fn higson(cmd: &HigsonCmd) -> Result<(Output, Option<PathBuf>)> {
    match cmd {
        HigsonCmd::Build { window, sets, out } => {
            let l = Loaded::open(window)?.param("sets", sets.display().to_string());
            let w = &l.w;
            let h = build_higson(w, sets)?;
            let pieces: BTreeMap<String, Vec<&[i64]>> =
                h.pieces.iter().map(|(n, ids)| (n.to_string(), ids.iter().map(|&x| w.coords(x)).collect())).collect();
            let support: Vec<Value> = w
                .ids()
                .filter(|&x| h.value(x) != rational::zero())
                .map(|x| json!({"point": w.coords(x), "value": rat(&h.value(x))}))
                .collect();
            let results = json!({
                "pieces": pieces,
                "summands": h.summands,
                "selected": h.selected().len(),
                "support": support,
            });
            Ok((output(l.report("higson build", Epistemic::Profile, results)), out.out.clone()))
        }
        HigsonCmd::Variation { window, sets, max_with, eps, r, out } => {
            let epsilon = rational::parse(eps)?;
            let l = Loaded::open(window)?
                .param("sets", sets.display().to_string())
                .param("max_with", max_with.as_ref().map(|p| p.display().to_string()))
                .param("eps", eps)
                .param("r", r);
            let w = &l.w;
            let h = build_higson(w, sets)?;
            let vh = variation_report(&h.values, epsilon, *r, w)?;
            let mut results = json!({ "h": variation_json(&vh) });
            if let Some(other) = max_with {
                let g = build_higson(w, other)?;
                let vg = variation_report(&g.values, epsilon, *r, w)?;
                let m = higson_max(&h.values, &g.values)?;
                let vm = variation_report(&m, epsilon, *r, w)?;
                results["g"] = variation_json(&vg);
                results["max"] = variation_json(&vm);
                results["max_bound_holds"] = json!(vm.max_variation <= vh.max_variation + vg.max_variation);
            }
            Ok((output(l.report("higson variation", Epistemic::Profile, results)), out.out.clone()))
        }
    }
}

pub fn roe(cmd: &RoeCmd) -> Result<(Output, Option<PathBuf>)> {
    match cmd {
        RoeCmd::Identities { window, samples, reach, seed, out } => {
            let l = Loaded::open(window)?.param("samples", samples).param("reach", reach).param("seed", seed);
            let rep = check_identities(&l.w, *samples, *reach, *seed)?;
            let ok = rep.all_passed();
            let results = json!({"all_passed": ok, "checks": rep.checks});
            let mut o = output(l.report("roe identities", Epistemic::Profile, results));
            o.success = ok;
            Ok((o, out.out.clone()))
        }
        RoeCmd::Gns { config, out } => {
            let cfg: GnsConfig = load_json(config)?;
            let diags = cfg.diagonal_values()?;
            let exprs = cfg.expressions.iter().map(|e| e.value()).collect::<Result<Vec<_>>>()?;
            let rep = cluster_rep(&cfg.pattern, &cfg.translations, &diags)?;
            let dim = commutant_dimension(&rep);
            let real = ClusterRealization::new(&cfg.pattern, cfg.stabilize)?;
            let mut blocks_match = true;
            for (t, m) in cfg.translations.iter().zip(&rep.translations) {
                let v = BandOperator::vf(&real.translation(t)?);
                blocks_match &= (real.stabilize..=real.probe()).all(|n| real.block(&v, n) == *m);
            }
            for (d, m) in diags.iter().zip(&rep.diagonals) {
                let v = real.diagonal(d);
                blocks_match &= (real.stabilize..=real.probe()).all(|n| real.block(&v, n) == *m);
            }
            let kernel = exprs
                .iter()
                .map(|e| kernel_check(e, &rep, &real, &cfg.translations, &diags))
                .collect::<coarsekit_core::Result<Vec<_>>>()?;
            let spec = WindowSpec {
                space: SpaceSpec::Clusters {
                    pattern: cfg.pattern.clone(),
                    gap: Growth::linear(cfg.pattern.diameter() + 1, 0),
                },
                horizon: real.probe(),
            };
            let results = json!({
                "k": rep.k,
                "commutant_dimension": dim,
                "irreducible": dim == 1,
                "blocks_match": blocks_match,
                "kernel": kernel,
            });
            let command = CommandEcho {
                name: "roe gns".to_string(),
                params: json!({"config": config.display().to_string()}),
            };
            let report = Report::new(command, Some(Fingerprint::new(&spec, real.window.len())), Epistemic::Profile, results);
            let mut o = output(report);
            o.success = blocks_match;
            Ok((o, out.out.clone()))
        }
    }
}
