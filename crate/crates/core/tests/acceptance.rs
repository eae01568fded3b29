//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on failure.
//! A disagreement between the two dependence tests exits with code 4.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use symgrass::campaign::{
    dimension_sweep, identity_campaign, injectivity_campaign, msg_campaign, pencil_campaign, residue_campaign,
    stratum_window, window_campaign, witness_campaign, PencilConfig, SweepConfig, SweepReport,
};
use symgrass::grassmann::CountOptions;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn first(xs: &[String]) -> String {
    xs.iter().take(3).cloned().collect::<Vec<_>>().join("; ")
}

fn dimension_law(sweep: &SweepReport, elapsed: Duration) -> Outcome {
    let v = sweep.violations();
    let max_q = sweep
        .entries
        .iter()
        .filter_map(|e| e.samples.last().map(|s| s.params.q))
        .max()
        .unwrap_or(0);
    let within = elapsed < Duration::from_secs(600);
    outcome(
        v.is_empty() && within && !sweep.entries.is_empty(),
        format!(
            "{} configurations, largest sample q = {max_q}, {:.1}s{}",
            sweep.entries.len(),
            elapsed.as_secs_f64(),
            if v.is_empty() { String::new() } else { format!(", {} violations: {}", v.len(), first(&v)) }
        ),
    )
}

fn nonemptiness(sweep: &SweepReport) -> Outcome {
    let mut exceptions = Vec::new();
    let mut checked = 0;
    for e in &sweep.entries {
        let (lo, hi) = stratum_window(e.r, e.delta, e.k);
        for s in &e.samples {
            checked += 1;
            for i in 0..=e.k {
                let populated = s.strata.get(&i).is_some_and(|&c| c > 0);
                if populated != (lo <= i && i <= hi) {
                    exceptions.push(format!("r={} delta={} k={} q={} i={i}", e.r, e.delta, e.k, s.params.q));
                }
            }
        }
    }
    let w = match window_campaign(6, 4, &[2, 3, 5, 7], CountOptions::default()) {
        Ok(w) => w,
        Err(e) => return outcome(false, format!("window campaign failed: {e}")),
    };
    exceptions.extend(w.exceptions);
    outcome(
        exceptions.is_empty(),
        format!(
            "{} sweep samples and {} window reports (k up to min(4, r)), {} exceptions {}",
            checked,
            w.reports_checked,
            exceptions.len(),
            first(&exceptions)
        ),
    )
}

fn main() -> ExitCode {
    let mut results: Vec<(usize, Outcome)> = Vec::new();
    let mut invariant_failure = false;

    let cfg = SweepConfig::default();
    let t = Instant::now();
    let sweep = dimension_sweep(&cfg, 1);
    let elapsed = t.elapsed();
    match &sweep {
        Ok(s) => {
            results.push((1, dimension_law(s, elapsed)));
            results.push((2, nonemptiness(s)));
        }
        Err(e) => {
            results.push((1, outcome(false, format!("sweep failed: {e}"))));
            results.push((2, outcome(false, format!("sweep failed: {e}"))));
        }
    }

    results.push((
        3,
        match witness_campaign(5, &[2, 3], 3) {
            Ok(w) => outcome(
                w.exceptions.is_empty() && w.witnesses_checked > 0,
                format!(
                    "{} subspaces, {} isotropic, {} witness families checked, {} exceptions {}",
                    w.subspaces_enumerated,
                    w.isotropic,
                    w.witnesses_checked,
                    w.exceptions.len(),
                    first(&w.exceptions)
                ),
            ),
            Err(e) => outcome(false, e.to_string()),
        },
    ));

    let pencils = pencil_campaign(&PencilConfig::default());
    match &pencils {
        Ok(p) => {
            let counts_ok = p.fields.iter().all(|f| {
                let need = if f.field == "Q" { 100 } else { 500 };
                f.random >= need
            }) && p.fields.iter().map(|f| f.adversarial).sum::<usize>() >= 50;
            if !p.disagreements.is_empty() {
                invariant_failure = true;
            }
            let tallies: Vec<String> = p
                .fields
                .iter()
                .map(|f| {
                    format!(
                        "{}: {} random + {} planted + {} adversarial, {} dependent",
                        f.field, f.random, f.planted, f.adversarial, f.dependent
                    )
                })
                .collect();
            results.push((
                4,
                outcome(
                    counts_ok && p.disagreements.is_empty() && p.certificate_failures.is_empty(),
                    format!(
                        "{}; {} disagreements, {} bad certificates {}",
                        tallies.join("; "),
                        p.disagreements.len(),
                        p.certificate_failures.len(),
                        first(&p.disagreements)
                    ),
                ),
            ));
            let x = &p.extraction;
            results.push((
                6,
                outcome(
                    x.exceptions.is_empty() && x.checked > 0,
                    format!(
                        "{} dependent instances, {} extracted ({} vectors), {} with unsplit characteristic polynomial over Q, {} exceptions {}",
                        x.dependent_instances,
                        x.checked,
                        x.vectors_checked,
                        x.skipped_unsplit,
                        x.exceptions.len(),
                        first(&x.exceptions)
                    ),
                ),
            ));
        }
        Err(e) => {
            results.push((4, outcome(false, e.to_string())));
            results.push((6, outcome(false, e.to_string())));
        }
    }

    results.push((
        5,
        match msg_campaign(40, 5) {
            Ok(m) => {
                if !m.disagreements.is_empty() {
                    invariant_failure = true;
                }
                outcome(
                    m.disagreements.is_empty() && m.planes_checked > 0,
                    format!(
                        "{} pairs, {} common isotropic planes ({} smooth, {} singular), {} disagreements {}",
                        m.pairs,
                        m.planes_checked,
                        m.smooth,
                        m.singular,
                        m.disagreements.len(),
                        first(&m.disagreements)
                    ),
                )
            }
            Err(e) => outcome(false, e.to_string()),
        },
    ));

    results.push((
        7,
        match residue_campaign(15, 7) {
            Ok(r) => outcome(
                r.exceptions.is_empty() && r.cases.len() >= 20,
                format!("{} models, {} exceptions {}", r.cases.len(), r.exceptions.len(), first(&r.exceptions)),
            ),
            Err(e) => outcome(false, e.to_string()),
        },
    ));

    results.push((
        8,
        match injectivity_campaign(12, 8) {
            Ok(r) => {
                let per_field_ok = ["Q", "F_7"]
                    .iter()
                    .all(|f| r.cases.iter().filter(|c| c.field == *f).count() >= 10);
                outcome(
                    r.failures.is_empty() && per_field_ok,
                    format!("{} divisors, {} failures {}", r.cases.len(), r.failures.len(), first(&r.failures)),
                )
            }
            Err(e) => outcome(false, e.to_string()),
        },
    ));

    let t = Instant::now();
    let ids = identity_campaign();
    let elapsed = t.elapsed();
    results.push((
        9,
        outcome(
            ids.exceptions.is_empty() && elapsed < Duration::from_secs(1),
            format!(
                "{} identities in {:.3}s, {} exceptions {}",
                ids.checked,
                elapsed.as_secs_f64(),
                ids.exceptions.len(),
                first(&ids.exceptions)
            ),
        ),
    ));

    let runs: Vec<Result<String, String>> = [1usize, 8]
        .iter()
        .map(|&jobs| {
            dimension_sweep(&cfg, jobs)
                .map_err(|e| e.to_string())
                .and_then(|r| serde_json::to_string(&r).map_err(|e| e.to_string()))
        })
        .collect();
    let baseline = sweep.as_ref().map_err(|e| e.to_string()).and_then(|r| serde_json::to_string(r).map_err(|e| e.to_string()));
    results.push((
        10,
        match (&baseline, &runs[0], &runs[1]) {
            (Ok(a), Ok(b), Ok(c)) => outcome(
                a == b && b == c,
                format!("reports of {} bytes at widths 1, 1 and 8, identical = {}", a.len(), a == b && b == c),
            ),
            _ => outcome(false, "a sweep run failed".to_string()),
        },
    ));

    results.sort_by_key(|r| r.0);
    let mut all = true;
    for (n, o) in &results {
        println!("{} criterion {n}: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        all &= o.pass;
    }
    if invariant_failure {
        ExitCode::from(4)
    } else if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
