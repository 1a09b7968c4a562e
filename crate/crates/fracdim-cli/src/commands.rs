//! Subcommand bodies. Each validates its whole grid first, evaluates grid
//! points on the rayon pool, and collects rows in grid order.

use crate::config::{config_error, SweepConfig};
use crate::output::{mode_label, Cell, Table};
use fracdim::clifford::build_gammas;
use fracdim::dixmier::{dixmier_partial_sums, ratio_check, RATIO_TOLERANCE};
use fracdim::loops::{self, FeynmanRegion, LoopResult};
use fracdim::params::DeformationParams;
use fracdim::triple::{self, FourierSeries, JunkVerdict, ModeLattice};
use fracdim::zeta::{self, DEFAULT_K_MAX};
use fracdim::Error;
use rayon::prelude::*;

/// Rows plus the gate failures that decide the exit code.
#[derive(Debug, Default)]
pub struct Outcome {
    pub table: Table,
    pub failures: Vec<String>,
}

type Rows = (Vec<Vec<Cell>>, Vec<String>);

fn collect(columns: &[&'static str], parts: Vec<Rows>) -> Outcome {
    let mut out = Outcome {
        table: Table::new(columns),
        failures: Vec::new(),
    };
    for (rows, fails) in parts {
        for r in rows {
            out.table.push(r);
        }
        out.failures.extend(fails);
    }
    out
}

fn require_triple_alpha(a: f64) -> anyhow::Result<()> {
    if !(a.abs() < 0.5) {
        return Err(config_error(format!("alpha = {a}: operator constructions need |alpha| < 1/2")));
    }
    if (1.0 - 2.0 * a).abs() < 0.1 {
        return Err(config_error(format!("alpha = {a}: 1 - 2 alpha is within 0.1 of zero")));
    }
    Ok(())
}

fn require_loop_alpha(a: f64) -> anyhow::Result<()> {
    if !(a.abs() < 1.0) || a == 0.5 {
        return Err(config_error(format!("alpha = {a}: loop integrals need |alpha| < 1, alpha != 1/2")));
    }
    Ok(())
}

fn require_n(n: usize, max: usize) -> anyhow::Result<()> {
    if n == 0 || n > max {
        return Err(config_error(format!("n = {n} outside 1..={max}")));
    }
    Ok(())
}

fn params(n: usize, a: f64, cfg: &SweepConfig, m0_sq: f64) -> anyhow::Result<DeformationParams<f64>> {
    let p = DeformationParams::new(n, a)?.with_mass_scale(cfg.mass_scale)?.with_m0_sq(m0_sq)?;
    Ok(p)
}

/// m₀² from the config, or the sweep default 1 + max(0, −m²).
fn loop_params(n: usize, a: f64, cfg: &SweepConfig) -> anyhow::Result<DeformationParams<f64>> {
    let m0 = match cfg.m0_sq {
        Some(m) => m,
        None => loops::sweep_m0_sq(n, a, cfg.mass_scale)?,
    };
    let p = params(n, a, cfg, m0)?;
    if !(p.effective_mass_squared() > 0.0) {
        return Err(config_error(format!(
            "n = {n}, alpha = {a}: effective mass squared {} is not positive",
            p.effective_mass_squared()
        )));
    }
    Ok(p)
}

fn status_of(e: &Error) -> String {
    match e {
        Error::PoleArgument { .. } => "pole-argument".into(),
        Error::OutsideConvergence(_) => "outside-domain".into(),
        other => format!("error: {other}"),
    }
}

// ---------------------------------------------------------------- spectrum

pub const SPECTRUM_COLUMNS: &[&str] = &[
    "n", "alpha", "d", "k", "predicted_location", "predicted_residue", "location", "fitted_residue",
    "location_error", "residue_spread", "fit_residual", "confirmed", "status",
];
pub const LOCATION_TOLERANCE: f64 = 1e-3;
const PROBED_K: usize = 1;

pub fn dimension_spectrum(cfg: &SweepConfig) -> anyhow::Result<Outcome> {
    let ns = cfg.n_or(&[1, 2, 3]);
    let alphas = cfg.alpha_or(&[0.1, -0.1, 0.3, -0.3]);
    let mut grid = Vec::new();
    for &n in &ns {
        require_n(n, 8)?;
        for &a in &alphas {
            require_triple_alpha(a)?;
            grid.push(DeformationParams::new(n, a)?);
        }
    }
    let parts: Vec<Rows> = grid
        .par_iter()
        .map(|p| {
            let (n, a) = (p.n(), p.alpha());
            let mut rows = Vec::new();
            let mut fails = Vec::new();
            let zs = zeta::dimension_spectrum(p, PROBED_K);
            for (k, &zk) in zs.iter().enumerate() {
                let pred = zeta::predicted_residue(p, k);
                let vanishing = pred.abs() < 1e-12;
                let head: Vec<Cell> = vec![
                    n.into(),
                    a.into(),
                    p.spectral_dimension().into(),
                    k.into(),
                    zk.into(),
                    pred.into(),
                ];
                let (tail, status): (Vec<Cell>, String) = match zeta::locate_deformed_pole(p, k, DEFAULT_K_MAX) {
                    Ok(r) => {
                        let ok = r.confirmed && r.location_error <= LOCATION_TOLERANCE;
                        let status = match (vanishing, ok) {
                            (true, _) => "unexpected-pole",
                            (false, true) => "confirmed",
                            (false, false) => "unconfirmed",
                        };
                        (
                            vec![
                                r.location.into(),
                                r.fitted_residue.re.into(),
                                r.location_error.into(),
                                r.residue_spread.into(),
                                r.fit_residual.into(),
                                ok.into(),
                            ],
                            status.into(),
                        )
                    }
                    Err(Error::NoPoleDetected { .. }) if vanishing => {
                        (vec![Cell::Empty; 5].into_iter().chain([false.into()]).collect(), "vanishing-residue".into())
                    }
                    Err(e) => (
                        vec![Cell::Empty; 5].into_iter().chain([false.into()]).collect(),
                        if matches!(e, Error::NoPoleDetected { .. }) { "no-pole".into() } else { status_of(&e) },
                    ),
                };
                if !matches!(status.as_str(), "confirmed" | "vanishing-residue") {
                    fails.push(format!("n={n} alpha={a} k={k}: {status}"));
                }
                rows.push(head.into_iter().chain(tail).chain([status.into()]).collect());
            }
            (rows, fails)
        })
        .collect();
    Ok(collect(SPECTRUM_COLUMNS, parts))
}

// ---------------------------------------------------------------- loops

pub const TADPOLE_COLUMNS: &[&str] = &[
    "n", "alpha", "M", "m0_sq", "d", "method", "value", "error_estimate", "status", "reference", "rel_diff", "agrees",
];
pub const BUBBLE_COLUMNS: &[&str] = &[
    "n", "alpha", "M", "m0_sq", "k_sq", "method", "variant", "value", "error_estimate", "status", "reference",
    "rel_diff", "agrees",
];

/// Agreement within the combined error estimates plus a rounding allowance.
fn agree(a: &LoopResult<f64>, b: &LoopResult<f64>, magnitudes: bool, tol: f64) -> (f64, bool) {
    let (x, y) = if magnitudes { (a.value.abs(), b.value.abs()) } else { (a.value, b.value) };
    let diff = (x - y).abs();
    let scale = x.abs().max(y.abs());
    let rel = if scale > 0.0 { diff / scale } else { diff };
    (rel, diff <= a.error_estimate + b.error_estimate + 100.0 * tol * scale)
}

struct LoopRow {
    method: &'static str,
    variant: &'static str,
    result: Result<LoopResult<f64>, Error>,
    // index of the earlier row to compare with, and whether to compare |·|
    reference: Option<(usize, bool)>,
}

fn loop_rows(head: Vec<Cell>, list: Vec<LoopRow>, tol: f64, with_variant: bool, label: &str) -> Rows {
    let mut rows = Vec::new();
    let mut fails = Vec::new();
    for r in &list {
        let mut row = head.clone();
        row.push(r.method.into());
        if with_variant {
            row.push(r.variant.into());
        }
        match &r.result {
            Ok(v) => {
                row.extend([v.value.into(), v.error_estimate.into(), "ok".into()]);
                match r.reference.and_then(|(i, m)| list[i].result.as_ref().ok().map(|w| (i, m, w))) {
                    Some((i, mag, w)) => {
                        let (rel, ok) = agree(v, w, mag, tol);
                        let name = if mag { format!("|{}|", list[i].method) } else { list[i].method.to_string() };
                        row.extend([name.clone().into(), rel.into(), ok.into()]);
                        if !ok {
                            let what = if r.variant.is_empty() { r.method.to_string() } else { format!("{} ({})", r.method, r.variant) };
                            fails.push(format!("{label}: {what} vs {name}: relative difference {rel:.3e}"));
                        }
                    }
                    None => row.extend([Cell::Empty, Cell::Empty, Cell::Empty]),
                }
            }
            Err(e) => {
                let s = status_of(e);
                if s.starts_with("error") {
                    fails.push(format!("{label}: {} {s}", r.method));
                }
                row.extend([Cell::Empty, Cell::Empty, s.into(), Cell::Empty, Cell::Empty, Cell::Empty]);
            }
        }
        rows.push(row);
    }
    (rows, fails)
}

pub fn tadpole(cfg: &SweepConfig) -> anyhow::Result<Outcome> {
    let ns = cfg.n_or(&[1, 2, 3]);
    let alphas = cfg.alpha_or(&[-0.4, -0.2, -0.05, 0.1, 0.2, 0.4]);
    let mut grid = Vec::new();
    for &n in &ns {
        require_n(n, 8)?;
        for &a in &alphas {
            require_loop_alpha(a)?;
            grid.push(loop_params(n, a, cfg)?);
        }
    }
    let tol = cfg.tol;
    let parts: Vec<Rows> = grid
        .par_iter()
        .map(|p| {
            let (n, a) = (p.n(), p.alpha());
            let head: Vec<Cell> = vec![
                n.into(),
                a.into(),
                p.mass_scale().into(),
                p.m0_sq().into(),
                (n as f64 + 2.0 * a).into(),
            ];
            let mut list = Vec::new();
            if a == 0.0 {
                list.push(LoopRow {
                    method: "dimreg-limit",
                    variant: "",
                    result: loops::tadpole_dimreg_limit(n, p.m0_sq()),
                    reference: None,
                });
            } else {
                list.push(LoopRow {
                    method: "closed-form",
                    variant: "",
                    result: loops::tadpole_closed(p),
                    reference: None,
                });
                if a < 0.0 {
                    list.push(LoopRow {
                        method: "feynman-quadrature",
                        variant: "",
                        result: loops::tadpole_feynman(p, tol),
                        reference: Some((0, false)),
                    });
                }
                if (n as f64) + 2.0 * a < 2.0 {
                    list.push(LoopRow {
                        method: "direct-quadrature",
                        variant: "",
                        result: loops::tadpole_direct(p, tol),
                        reference: Some((0, false)),
                    });
                }
            }
            loop_rows(head, list, tol, false, &format!("n={n} alpha={a}"))
        })
        .collect();
    Ok(collect(TADPOLE_COLUMNS, parts))
}

pub fn bubble(cfg: &SweepConfig) -> anyhow::Result<Outcome> {
    let ns = cfg.n_or(&[2, 3]);
    let alphas = cfg.alpha_or(&[-0.2]);
    let ks = cfg.k_sq_or(&[0.5, 1.0, 4.0]);
    let mut grid = Vec::new();
    for &n in &ns {
        require_n(n, 8)?;
        for &a in &alphas {
            require_loop_alpha(a)?;
            let p = loop_params(n, a, cfg)?;
            for &k in &ks {
                grid.push((p, k));
            }
        }
    }
    let tol = cfg.tol;
    let parts: Vec<Rows> = grid
        .par_iter()
        .map(|(p, k)| {
            let (n, a, k) = (p.n(), p.alpha(), *k);
            let head: Vec<Cell> = vec![
                n.into(),
                a.into(),
                p.mass_scale().into(),
                p.m0_sq().into(),
                k.into(),
            ];
            let mut list = Vec::new();
            if a == 0.0 {
                list.push(LoopRow {
                    method: "dimreg-limit",
                    variant: "",
                    result: loops::bubble_dimreg_limit(n, p.m0_sq(), k, tol),
                    reference: None,
                });
            } else {
                list.push(LoopRow {
                    method: "closed-form",
                    variant: "",
                    result: loops::bubble_closed(p, k, tol),
                    reference: None,
                });
                if a < 0.0 {
                    list.push(LoopRow {
                        method: "feynman-quadrature",
                        variant: "nested",
                        result: loops::bubble_feynman(p, k, FeynmanRegion::Nested, tol),
                        reference: Some((0, true)),
                    });
                }
                if (n as f64) + 4.0 * a < 4.0 {
                    list.push(LoopRow {
                        method: "direct-quadrature",
                        variant: "",
                        result: loops::bubble_direct(p, k, tol),
                        reference: Some((0, true)),
                    });
                    if a < 0.0 {
                        let direct = list.len() - 1;
                        list.push(LoopRow {
                            method: "feynman-quadrature",
                            variant: "simplex",
                            result: loops::bubble_feynman(p, k, FeynmanRegion::Simplex, tol),
                            reference: Some((direct, false)),
                        });
                    }
                }
            }
            loop_rows(head, list, tol, true, &format!("n={n} alpha={a} k_sq={k}"))
        })
        .collect();
    Ok(collect(BUBBLE_COLUMNS, parts))
}

// ---------------------------------------------------------------- dixmier

pub const DIXMIER_COLUMNS: &[&str] = &[
    "record", "n", "alpha", "q", "q_ref", "cutoff", "states", "partial_sum", "slope", "intercept", "fit_residual",
    "measured_ratio", "predicted_ratio", "discrepancy", "window_spread", "passed",
];

fn parse_mode(s: &str, n: usize) -> anyhow::Result<Vec<i64>> {
    let v: Result<Vec<i64>, _> = s.split([',', ' ']).filter(|t| !t.is_empty()).map(str::parse).collect();
    let v = v.map_err(|e| config_error(format!("q = {s:?}: {e}")))?;
    if v.len() != n {
        return Err(config_error(format!("q = {s:?} has {} components, n = {n}", v.len())));
    }
    Ok(v)
}

pub fn dixmier(cfg: &SweepConfig) -> anyhow::Result<Outcome> {
    let ns = cfg.n_or(&[1]);
    let alphas = cfg.alpha_or(&[0.1, 0.2]);
    let cutoffs = cfg.cutoff_or(&[64, 128, 256, 512]);
    if cutoffs.len() < 4 || cutoffs.windows(2).any(|w| w[0] >= w[1]) {
        return Err(config_error("dixmier needs at least 4 strictly increasing cutoffs"));
    }
    let mut grid = Vec::new();
    for &n in &ns {
        require_n(n, 2)?;
        let qs: Vec<Vec<i64>> = if cfg.q.is_empty() {
            (1..=3).map(|c| (0..n).map(|i| if i == 0 { c } else { 0 }).collect()).collect()
        } else {
            cfg.q.iter().map(|s| parse_mode(s, n)).collect::<anyhow::Result<_>>()?
        };
        if qs.len() < 2 {
            return Err(config_error("dixmier needs at least two momenta"));
        }
        if qs.iter().any(|q| q.iter().all(|&c| c == 0)) {
            return Err(config_error("q = 0 has no ratio to test"));
        }
        let qmax = qs.iter().flatten().map(|c| c.unsigned_abs() as usize).max().unwrap_or(0);
        if cutoffs[0] < qmax + 4 {
            return Err(config_error(format!("cutoff {} below |q|_max + 4 = {}", cutoffs[0], qmax + 4)));
        }
        if n == 2 && *cutoffs.last().unwrap_or(&0) > 2000 {
            return Err(config_error("cutoff above 2000 in n = 2 exceeds the state budget"));
        }
        for &a in &alphas {
            require_triple_alpha(a)?;
            grid.push((DeformationParams::new(n, a)?, qs.clone()));
        }
    }
    let parts: Vec<Rows> = grid
        .par_iter()
        .map(|(p, qs)| {
            let (n, a) = (p.n(), p.alpha());
            let mut rows = Vec::new();
            let mut fails = Vec::new();
            let base = |rec: &str, q: &[i64]| -> Vec<Cell> { vec![rec.into(), n.into(), a.into(), mode_label(q).into()] };
            for q in qs {
                match dixmier_partial_sums(q, p, &cutoffs) {
                    Ok(f) => {
                        for i in 0..f.cutoffs.len() {
                            let mut r = base("partial-sum", q);
                            r.extend([Cell::Empty, f.cutoffs[i].into(), f.states[i].into(), f.partial_sums[i].into()]);
                            r.extend(vec![Cell::Empty; 8]);
                            rows.push(r);
                        }
                        let mut r = base("fit", q);
                        r.extend([Cell::Empty, (*f.cutoffs.last().unwrap_or(&0)).into(), (*f.states.last().unwrap_or(&0)).into()]);
                        r.extend([Cell::Empty, f.slope.into(), f.intercept.into(), f.fit_residual.into()]);
                        r.extend(vec![Cell::Empty; 5]);
                        rows.push(r);
                    }
                    Err(e) => fails.push(format!("n={n} alpha={a} q={q:?}: {e}")),
                }
            }
            for q in &qs[1..] {
                let q_ref = &qs[0];
                let mut r = base("ratio", q);
                r.push(mode_label(q_ref).into());
                r.extend(vec![Cell::Empty; 6]);
                // ratio of slopes: q_ref over q
                match ratio_check(q_ref, q, p, &cutoffs) {
                    Ok(c) => {
                        r.extend([
                            c.measured_ratio.into(),
                            c.predicted_ratio.into(),
                            c.discrepancy.into(),
                            c.window_spread.into(),
                            c.passed.into(),
                        ]);
                        if !c.passed {
                            fails.push(format!(
                                "n={n} alpha={a} q={q:?}: slope ratio {:.6} vs predicted {:.6} ({:.1}% > {:.0}%)",
                                c.measured_ratio,
                                c.predicted_ratio,
                                100.0 * c.discrepancy,
                                100.0 * RATIO_TOLERANCE
                            ));
                        }
                    }
                    Err(e) => {
                        r.extend(vec![Cell::Empty; 4]);
                        r.push(false.into());
                        fails.push(format!("n={n} alpha={a} q={q:?}: {e}"));
                    }
                }
                rows.push(r);
            }
            (rows, fails)
        })
        .collect();
    Ok(collect(DIXMIER_COLUMNS, parts))
}

// ---------------------------------------------------------------- triple

pub const TRIPLE_COLUMNS: &[&str] = &["n", "alpha", "cutoff", "check", "value", "threshold", "comparison", "passed"];
const JUNK_RADIUS: i64 = 3;

fn unit(n: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    v[0] = 1;
    v
}

struct Check {
    name: &'static str,
    value: f64,
    threshold: f64,
    // true: value must not exceed the threshold; false: value must exceed it
    at_most: bool,
}

fn triple_checks(p: &DeformationParams<f64>, cutoff: usize) -> fracdim::Result<Vec<Check>> {
    let n = p.n();
    let a = p.alpha();
    let rep = build_gammas::<f64>(n)?;
    let lat = ModeLattice::new(n, cutoff)?;
    let e1 = unit(n);
    let phase = FourierSeries::phase(&e1);
    let cos = FourierSeries::cos_axis(n, 0);
    let mut out = Vec::new();

    let d = triple::build_deformed_dirac(&lat, &rep, p)?;
    out.push(Check { name: "self-adjoint", value: d.adjoint_deviation(), threshold: 1e-14, at_most: true });

    let mut agreement = 0.0f64;
    for f in [&phase, &cos] {
        let df = triple::differential(f, p, &lat, &rep)?;
        let cf = triple::differential_closed_form(f, p, &lat, &rep)?;
        agreement = agreement.max(df.max_abs_diff_interior(&cf, f.support_radius()));
    }
    out.push(Check { name: "differential-agreement", value: agreement, threshold: 1e-12, at_most: true });

    let dev = triple::canonical_deviation(&phase, p, &lat, &rep)?;
    let wit = triple::non_multiplicativity_witness(&phase, &phase, p, &lat, &rep)?;
    let classical = a == 0.0;
    out.push(Check { name: "canonical-deviation", value: dev, threshold: 1e-13, at_most: classical });
    out.push(Check { name: "non-multiplicativity", value: wit, threshold: 1e-13, at_most: classical });

    let (mut worst_dev, mut min_norm, mut max_norm) = (0.0f64, f64::INFINITY, 0.0f64);
    let side = 2 * JUNK_RADIUS + 1;
    for idx in 0..side.pow(n as u32) {
        let mode: Vec<i64> = (0..n).map(|k| (idx / side.pow(k as u32)) % side - JUNK_RADIUS).collect();
        if mode.iter().all(|&c| c == 0) {
            continue;
        }
        let r = triple::junk_residual(&mode, p, &rep)?;
        worst_dev = worst_dev.max(r.deviation);
        let norm = r.direct.frobenius();
        min_norm = min_norm.min(norm);
        max_norm = max_norm.max(norm);
    }
    out.push(Check { name: "junk-closed-vs-direct", value: worst_dev, threshold: 1e-12, at_most: true });
    if classical {
        out.push(Check { name: "junk-residual-max", value: max_norm, threshold: 1e-13, at_most: true });
    } else {
        out.push(Check { name: "junk-residual-min", value: min_norm, threshold: 1e-6, at_most: false });
    }

    let small = ModeLattice::new(n, 3.min(cutoff).max(2))?;
    let rep_small = build_gammas::<f64>(n)?;
    let v = triple::vanishing_one_form_check(&small, &rep_small, p)?;
    let expected = if classical { JunkVerdict::ResidualVanishes } else { JunkVerdict::NonvanishingResidual };
    out.push(Check { name: "one-form-deviation", value: v.one_form_deviation, threshold: 1e-12, at_most: true });
    out.push(Check {
        name: "one-form-verdict",
        value: if v.verdict == expected { 0.0 } else { 1.0 },
        threshold: 0.0,
        at_most: true,
    });
    Ok(out)
}

pub fn triple_check(cfg: &SweepConfig) -> anyhow::Result<Outcome> {
    let ns = cfg.n_or(&[1, 2]);
    let alphas = cfg.alpha_or(&[0.0, 0.1, 0.3]);
    if cfg.cutoff.len() > 1 {
        return Err(config_error("triple-check takes a single cutoff"));
    }
    let mut grid = Vec::new();
    for &n in &ns {
        require_n(n, 3)?;
        let cutoff = cfg.cutoff.first().copied().unwrap_or(if n == 1 { 12 } else { 8 });
        if cutoff < 4 {
            return Err(config_error(format!("cutoff {cutoff} below 4")));
        }
        if ((2 * cutoff + 1) as f64).powi(n as i32) > 2e4 {
            return Err(config_error(format!("cutoff {cutoff} too large for n = {n}")));
        }
        for &a in &alphas {
            require_triple_alpha(a)?;
            grid.push((DeformationParams::new(n, a)?, cutoff));
        }
    }
    let parts: Vec<Rows> = grid
        .par_iter()
        .map(|(p, cutoff)| {
            let (n, a) = (p.n(), p.alpha());
            let head = |name: &str| -> Vec<Cell> { vec![n.into(), a.into(), (*cutoff).into(), name.into()] };
            match triple_checks(p, *cutoff) {
                Ok(checks) => {
                    let mut rows = Vec::new();
                    let mut fails = Vec::new();
                    for c in checks {
                        let passed = if c.at_most { c.value <= c.threshold } else { c.value > c.threshold };
                        if !passed {
                            fails.push(format!("n={n} alpha={a}: {} = {:e}", c.name, c.value));
                        }
                        let mut r = head(c.name);
                        r.extend([
                            c.value.into(),
                            c.threshold.into(),
                            if c.at_most { "<=" } else { ">" }.into(),
                            passed.into(),
                        ]);
                        rows.push(r);
                    }
                    (rows, fails)
                }
                Err(e) => {
                    let mut r = head("error");
                    r.extend([Cell::Empty, Cell::Empty, e.to_string().into(), false.into()]);
                    (vec![r], vec![format!("n={n} alpha={a}: {e}")])
                }
            }
        })
        .collect();
    Ok(collect(TRIPLE_COLUMNS, parts))
}

// ---------------------------------------------------------------- exponents

pub const EXPONENT_COLUMNS: &[&str] = &[
    "n", "alpha", "M", "m_sq", "q", "action_form", "propagator_form", "ratio", "deviation",
];

/// Tabulates (q²+m²)(1+q²)^{−2α} against (q²+m²)(M²+q²)^{−α}.
pub fn exponent_compare(cfg: &SweepConfig) -> anyhow::Result<Outcome> {
    let ns = cfg.n_or(&[1]);
    let alphas = cfg.alpha_or(&[0.0, 0.1, 0.2]);
    let qs: Vec<f64> = if cfg.q.is_empty() {
        (0..=8).map(|i| 0.5 * i as f64).collect()
    } else {
        cfg.q
            .iter()
            .map(|s| {
                s.trim()
                    .parse::<f64>()
                    .ok()
                    .filter(|q| *q >= 0.0 && q.is_finite())
                    .ok_or_else(|| config_error(format!("q = {s:?} is not a nonnegative number")))
            })
            .collect::<anyhow::Result<_>>()?
    };
    let mut grid = Vec::new();
    for &n in &ns {
        require_n(n, 8)?;
        for &a in &alphas {
            require_loop_alpha(a)?;
            grid.push(params(n, a, cfg, 0.0)?);
        }
    }
    let parts: Vec<Rows> = grid
        .iter()
        .map(|p| {
            let (a, m2, big) = (p.alpha(), p.mass_squared(), p.mass_scale());
            let rows = qs
                .iter()
                .map(|&q| {
                    let q2 = q * q;
                    let action = (q2 + m2) * (1.0 + q2).powf(-2.0 * a);
                    let prop = (q2 + m2) * (big * big + q2).powf(-a);
                    let ratio = (1.0 + q2).powf(-2.0 * a) * (big * big + q2).powf(a);
                    vec![
                        p.n().into(),
                        a.into(),
                        big.into(),
                        m2.into(),
                        q.into(),
                        action.into(),
                        prop.into(),
                        ratio.into(),
                        (ratio - 1.0).abs().into(),
                    ]
                })
                .collect();
            (rows, Vec::new())
        })
        .collect();
    Ok(collect(EXPONENT_COLUMNS, parts))
}
