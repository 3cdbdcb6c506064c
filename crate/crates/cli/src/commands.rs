use std::path::Path;

use serde_json::{json, Value};

use hbsums::certify::{certify_real_rooted_with_stats, certify_unit_circle_with_stats, squarefree_float_roots};
use hbsums::construct::{
    build_hn_recursive, build_hn_subset_at, exp_sum_build, lee_yang_poly, orthogonal_h2, three_term_step,
};
use hbsums::fuzz::{replay_report, run_fuzz, FuzzConfig, Report};
use hbsums::json::{
    cpoly_from_json, exact_poly_to_json, exp_sum_instance_from_json, exp_sum_to_json, instance_from_json,
    matrix_from_json, recurrence_from_json, rpoly_to_json,
};
use hbsums::numeric::parse_rational;
use hbsums::roots::count_zeros_box;
use hbsums::{CPoly, Certificate, ContourBox, Error, ExactPoly, ExpSum, RootSet, Verdict};

use crate::output::{emit, read_json, render, write_file, write_plot, CliError, Outcome};
use crate::{FuzzArgs, Global, LocusArg};

type CmdResult = Result<Outcome, CliError>;

fn root_rows(roots: &RootSet) -> Vec<(f64, f64)> {
    roots.roots.iter().map(|z| (z.re, z.im)).collect()
}

/// `(arg z, |z| - 1)` per root.
fn circle_rows(roots: &RootSet) -> Vec<(f64, f64)> {
    roots.roots.iter().map(|z| (z.arg(), z.norm() - 1.0)).collect()
}

/// Float roots for plotting; constants have none.
fn plot_roots(g: &Global, p: &ExactPoly, circle: bool) -> Result<(), CliError> {
    if g.plot_data.is_none() {
        return Ok(());
    }
    let rows = match p.degree() {
        Some(d) if d > 0 => {
            let roots = squarefree_float_roots(p, &g.policy())?;
            if circle {
                circle_rows(&roots)
            } else {
                root_rows(&roots)
            }
        }
        _ => vec![],
    };
    write_plot(g.plot_data.as_deref(), &rows)
}

pub fn construct(g: &Global, path: &Path, subset: bool, s: &str) -> CmdResult {
    let inst = instance_from_json(&read_json(path)?)?;
    let s = parse_rational(s)?;
    let limits = g.limits();
    let h = if subset { build_hn_subset_at(&inst, &s, &limits)? } else { build_hn_recursive(&inst, &s, &limits)? };
    emit(&exact_poly_to_json(&h), g.json_indent);
    plot_roots(g, &h, false)?;
    Ok(Outcome::Pass)
}

pub fn certify(g: &Global, path: &Path, locus: LocusArg) -> CmdResult {
    let p = match cpoly_from_json(&read_json(path)?)? {
        CPoly::Exact(p) => p,
        CPoly::Float(_) => return Err(Error::RequiresExact("certification").into()),
    };
    let circle = matches!(locus, LocusArg::Circle);
    let (cert, stats) = if circle { certify_unit_circle_with_stats(&p)? } else { certify_real_rooted_with_stats(&p)? };
    emit(
        &json!({ "certificate": cert, "sturm_bits": stats.sturm_bits, "max_multiplicity": stats.max_multiplicity }),
        g.json_indent,
    );
    plot_roots(g, &p, circle)?;
    Ok(Outcome::from_pass(cert.passed()))
}

pub fn leeyang(g: &Global, path: &Path) -> CmdResult {
    let m = matrix_from_json(&read_json(path)?)?;
    let p = lee_yang_poly(&m, &g.limits())?;
    let (cert, _) = certify_unit_circle_with_stats(&p)?;
    emit(&json!({ "polynomial": exact_poly_to_json(&p), "certificate": cert }), g.json_indent);
    plot_roots(g, &p, true)?;
    Ok(Outcome::from_pass(cert.passed()))
}

pub fn ortho(g: &Global, path: &Path) -> CmdResult {
    let rec = recurrence_from_json(&read_json(path)?)?;
    let (mut prev, mut cur) = (rec.p0.clone(), rec.p1.clone());
    let mut members = vec![
        json!({ "index": 0, "polynomial": rpoly_to_json(&prev) }),
        json!({ "index": 1, "polynomial": rpoly_to_json(&cur) }),
    ];
    let mut failed_step = None;
    let mut all_pass = true;
    for (k, step) in rec.steps.iter().enumerate() {
        let index = k + 2;
        let h2 = match orthogonal_h2(&prev, &cur, &step.a, &step.b, &step.c) {
            Ok(h) => h,
            Err(e @ (Error::NotInterlacing(_) | Error::WrongWronskianSign | Error::DegreeGap(_))) => {
                eprintln!("step {index}: {e}");
                members.push(json!({ "index": index, "error": e.to_string() }));
                failed_step = Some(index);
                break;
            }
            Err(e) => return Err(e.into()),
        };
        let next = three_term_step(&prev, &cur, &step.a, &step.b, &step.c);
        let identity = h2 == next.to_exact();
        let cert: Certificate = certify_real_rooted_with_stats(&h2)?.0;
        if !identity || !cert.passed() {
            all_pass = false;
            failed_step.get_or_insert(index);
        }
        members.push(json!({
            "index": index,
            "polynomial": rpoly_to_json(&next),
            "h2": exact_poly_to_json(&h2),
            "identity": identity,
            "certificate": cert,
        }));
        prev = std::mem::replace(&mut cur, next);
    }
    let pass = all_pass && failed_step.is_none();
    let verdict = if pass { Verdict::Pass } else { Verdict::Fail };
    emit(&json!({ "family": members, "verdict": verdict, "failed_step": failed_step }), g.json_indent);
    plot_roots(g, &cur.to_exact(), false)?;
    Ok(Outcome::from_pass(pass))
}

/// Box with every edge pushed outward by a few contour margins.
fn perturbed(b: &ContourBox, margin: f64) -> ContourBox {
    let d = 7.0 * margin;
    ContourBox { re_lo: b.re_lo - d, re_hi: b.re_hi + 1.3 * d, im_lo: b.im_lo - 0.7 * d, im_hi: b.im_hi + d }
}

fn count_in(g: &Global, f: &ExpSum, label: &str, b: &ContourBox) -> Result<i64, CliError> {
    let policy = g.policy();
    count_zeros_box(f, b, &policy).map_err(|e| {
        if let Error::ZeroNearContour { .. } = e {
            let p = perturbed(b, policy.contour_margin);
            eprintln!(
                "hint: retry the {label} box as re_lo={}, re_hi={}, im_lo={}, im_hi={}",
                p.re_lo, p.re_hi, p.im_lo, p.im_hi
            );
        }
        e.into()
    })
}

pub fn expsum(g: &Global, path: &Path) -> CmdResult {
    let inst = exp_sum_instance_from_json(&read_json(path)?)?;
    let f = exp_sum_build(&inst.g, &inst.a, &inst.b, &g.limits())?;
    if f.is_zero() {
        return Err(Error::ZeroFunction.into());
    }
    let upper = count_in(g, &f, "upper", &inst.upper)?;
    let lower = count_in(g, &f, "lower", &inst.lower)?;
    let axis = inst.axis.as_ref().map(|b| count_in(g, &f, "axis", b)).transpose()?;
    let pass = upper == 0 && lower == 0;
    let verdict = if pass { Verdict::Pass } else { Verdict::Fail };
    emit(
        &json!({
            "function": exp_sum_to_json(&f),
            "counts": { "upper": upper, "lower": lower, "axis": axis },
            "verdict": verdict,
        }),
        g.json_indent,
    );
    Ok(Outcome::from_pass(pass))
}

pub fn fuzz(g: &Global, args: &FuzzArgs) -> CmdResult {
    let limits = g.limits();
    if let Some(path) = &args.replay {
        let report: Report = serde_json::from_value(read_json(path)?)
            .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        let replayed = replay_report(&report, &limits)?;
        let originals: Vec<_> =
            if report.passed() { report.records.iter().collect() } else { report.failures().collect() };
        let mut reproduced = true;
        let mut rows = Vec::new();
        for (orig, new) in originals.iter().zip(&replayed) {
            let same = orig.verdict == new.verdict && orig.certificate == new.certificate;
            reproduced &= same;
            rows.push(json!({ "index": new.index, "digest": new.digest, "verdict": new.verdict, "reproduced": same }));
        }
        let all_pass = replayed.iter().all(|r| r.verdict == Verdict::Pass);
        emit(&json!({ "replayed": rows, "reproduced": reproduced }), g.json_indent);
        if !reproduced {
            eprintln!("replay diverged from the stored report");
        }
        return Ok(Outcome::from_pass(all_pass && reproduced));
    }
    let cfg = FuzzConfig {
        trials: args.trials,
        n_min: args.n_min,
        n_max: args.n_max,
        degree_max: args.degree_max,
        seed: g.seed,
        mode: args.mode.into(),
        g_roots_max: args.g_roots_max,
        float_tol: args.float_tol,
    };
    let report = run_fuzz(&cfg, &g.policy(), &limits)?;
    let s = &report.summary;
    match &args.report {
        Some(path) => {
            write_file(path, &render(&report, g.json_indent))?;
            emit(&summary_line(&report), g.json_indent);
        }
        None => emit(&report, g.json_indent),
    }
    eprintln!(
        "fuzz: {}/{} trials passed, max residual {:.3e}, worst Sturm bits {}",
        s.pass_count, s.trials, s.max_residual, s.worst_sturm_bits
    );
    let rows: Vec<(f64, f64)> = report.records.iter().map(|r| (r.index as f64, r.residuals.max())).collect();
    write_plot(g.plot_data.as_deref(), &rows)?;
    Ok(Outcome::from_pass(report.passed()))
}

fn summary_line(report: &Report) -> Value {
    json!({ "summary": report.summary, "failures": report.failures().map(|r| r.index).collect::<Vec<_>>() })
}
