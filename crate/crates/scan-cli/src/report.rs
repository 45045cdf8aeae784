//! Report rows and their CSV / JSON emission.

use num_complex::Complex64;
use rayon::prelude::*;
use rotor_phase::finite::{FiniteSpace, ShiftParam};
use rotor_phase::infinite;
use rotor_phase::linalg::commutator;
use serde::Serialize;

use crate::{Route, ScanConfig, ScanError};

/// One `(l, s)` point of a limit scan.
///
/// `element` is the naive `(1/(i s)) <n|R|k>` normalization, `normalized` the
/// one dividing by the shift actually produced on column `k`. They coincide
/// except on the wrap column `k = l`, where the naive column diverges like
/// `d/s` while the sigma-normalized one converges. The final row per `l`
/// carries the extrapolated limit at `s = 0`; its `element` field is absent
/// on the wrap column.
#[derive(Debug, Clone, PartialEq)]
pub struct ReportRow {
    pub route: Route,
    pub l: Option<u32>,
    pub s: f64,
    pub sigma: Option<f64>,
    pub n: i64,
    pub k: i64,
    pub element: Option<Complex64>,
    pub normalized: Complex64,
}

/// CSV header shared by both scan routes.
pub const SCAN_HEADER: &str =
    "route,l,s,sigma,n,k,element_re,element_im,normalized_re,normalized_im";

fn finite_rows_for_l(l: u32, config: &ScanConfig) -> Result<Vec<ReportRow>, ScanError> {
    let schedule = config.schedule()?;
    let space = FiniteSpace::new(l);
    let (n, k) = (config.n, config.k);
    let on_wrap_column = k == space.l();
    let mut rows = Vec::with_capacity(schedule.values().len() + 1);
    for &s in schedule.values() {
        let sp = ShiftParam::new(s).expect("schedule values lie in (0, 1]");
        let naive = space.naive_normalized_element(n, k, sp)?;
        let correct = space.normalized_element(n, k, sp)?;
        rows.push(ReportRow {
            route: Route::Finite,
            l: Some(l),
            s,
            sigma: on_wrap_column.then(|| space.effective_shift(sp)),
            n,
            k,
            element: Some(naive),
            normalized: correct,
        });
    }
    let estimate = space.normalized_limit(n, k, &schedule)?;
    rows.push(ReportRow {
        route: Route::Finite,
        l: Some(l),
        s: 0.0,
        sigma: on_wrap_column.then(|| -(space.dim() as f64)),
        n,
        k,
        element: (!on_wrap_column).then_some(estimate.value),
        normalized: estimate.value,
    });
    Ok(rows)
}

fn sorted_l_values(config: &ScanConfig) -> Vec<u32> {
    let mut ls = config.l_values.clone();
    ls.sort_unstable();
    ls.dedup();
    ls
}

/// Finite-route scan: per `(l, s)` the naive and correctly normalized
/// elements, then the extrapolated limit row. Rows are ordered `l`
/// ascending, `s` descending.
pub fn finite_limit_rows(config: &ScanConfig) -> Result<Vec<ReportRow>, ScanError> {
    let mut rows = Vec::new();
    for l in sorted_l_values(config) {
        rows.extend(finite_rows_for_l(l, config)?);
    }
    Ok(rows)
}

/// Same rows as [`finite_limit_rows`], evaluated by a worker pool with
/// order-restoring assembly.
pub fn finite_limit_rows_parallel(config: &ScanConfig) -> Result<Vec<ReportRow>, ScanError> {
    let per_l: Vec<Result<Vec<ReportRow>, ScanError>> = sorted_l_values(config)
        .into_par_iter()
        .map(|l| finite_rows_for_l(l, config))
        .collect();
    let mut rows = Vec::new();
    for chunk in per_l {
        rows.extend(chunk?);
    }
    Ok(rows)
}

/// Infinite-route scan of `(1/(i s)) (n, R m)` with `m = k`.
pub fn infinite_limit_rows(config: &ScanConfig) -> Result<Vec<ReportRow>, ScanError> {
    let schedule = config.schedule()?;
    let (n, m) = (config.n, config.k);
    let mut rows = Vec::with_capacity(schedule.values().len() + 1);
    for &s in schedule.values() {
        let value = infinite::r_element_infinite(n, m, s) / Complex64::new(0.0, s);
        rows.push(ReportRow {
            route: Route::Infinite,
            l: None,
            s,
            sigma: None,
            n,
            k: m,
            element: Some(value),
            normalized: value,
        });
    }
    let estimate = infinite::canonical_limit_element(n, m, &schedule);
    rows.push(ReportRow {
        route: Route::Infinite,
        l: None,
        s: 0.0,
        sigma: None,
        n,
        k: m,
        element: Some(estimate.value),
        normalized: estimate.value,
    });
    Ok(rows)
}

/// One entry of the commutator table.
#[derive(Debug, Clone, PartialEq)]
pub struct CommutatorRow {
    pub l: u32,
    pub m_row: i64,
    pub m_col: i64,
    pub entry: Complex64,
    /// `|closed - direct|` for this entry, direct being the multiplied
    /// `[phi_l, L_z]`.
    pub deviation: f64,
}

pub const COMMUTATOR_HEADER: &str = "l,m_row,m_col,entry_re,entry_im,deviation";

/// Full `d x d` closed-form commutator with per-entry deviations from the
/// directly multiplied commutator.
pub fn commutator_rows(l: u32) -> Vec<CommutatorRow> {
    let space = FiniteSpace::new(l);
    let closed = space.commutator_closed_form().matrix;
    let direct = commutator(&space.phase_operator(), &space.lz_operator());
    let mut rows = Vec::with_capacity(space.dim() * space.dim());
    for i in 0..space.dim() {
        for j in 0..space.dim() {
            rows.push(CommutatorRow {
                l,
                m_row: i as i64 - space.l(),
                m_col: j as i64 - space.l(),
                entry: closed[(i, j)],
                deviation: (closed[(i, j)] - direct[(i, j)]).norm(),
            });
        }
    }
    rows
}

/// 17-significant-digit scientific notation with an explicit exponent sign.
pub fn fmt_sci(x: f64) -> String {
    let x = x + 0.0; // collapse -0.0
    let s = format!("{:.16e}", x);
    match s.find('e') {
        Some(pos) if s.as_bytes().get(pos + 1) != Some(&b'-') => {
            format!("{}e+{}", &s[..pos], &s[pos + 1..])
        }
        _ => s,
    }
}

fn opt_sci(x: Option<f64>) -> String {
    x.map(fmt_sci).unwrap_or_default()
}

fn opt_int(x: Option<u32>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

pub fn scan_csv(rows: &[ReportRow]) -> String {
    let mut out = String::from(SCAN_HEADER);
    out.push('\n');
    for row in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{}\n",
            row.route.as_str(),
            opt_int(row.l),
            fmt_sci(row.s),
            opt_sci(row.sigma),
            row.n,
            row.k,
            opt_sci(row.element.map(|c| c.re)),
            opt_sci(row.element.map(|c| c.im)),
            fmt_sci(row.normalized.re),
            fmt_sci(row.normalized.im),
        ));
    }
    out
}

#[derive(Serialize)]
struct ScanRowJson<'a> {
    route: &'a str,
    l: Option<u32>,
    s: f64,
    sigma: Option<f64>,
    n: i64,
    k: i64,
    element_re: Option<f64>,
    element_im: Option<f64>,
    normalized_re: f64,
    normalized_im: f64,
}

pub fn scan_json(rows: &[ReportRow]) -> String {
    let mirror: Vec<ScanRowJson> = rows
        .iter()
        .map(|row| ScanRowJson {
            route: row.route.as_str(),
            l: row.l,
            s: row.s,
            sigma: row.sigma,
            n: row.n,
            k: row.k,
            element_re: row.element.map(|c| c.re),
            element_im: row.element.map(|c| c.im),
            normalized_re: row.normalized.re,
            normalized_im: row.normalized.im,
        })
        .collect();
    let mut out = serde_json::to_string_pretty(&mirror).expect("rows serialize");
    out.push('\n');
    out
}

pub fn commutator_csv(rows: &[CommutatorRow]) -> String {
    let mut out = String::from(COMMUTATOR_HEADER);
    out.push('\n');
    for row in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            row.l,
            row.m_row,
            row.m_col,
            fmt_sci(row.entry.re),
            fmt_sci(row.entry.im),
            fmt_sci(row.deviation),
        ));
    }
    out
}

#[derive(Serialize)]
struct CommutatorRowJson {
    l: u32,
    m_row: i64,
    m_col: i64,
    entry_re: f64,
    entry_im: f64,
    deviation: f64,
}

pub fn commutator_json(rows: &[CommutatorRow]) -> String {
    let mirror: Vec<CommutatorRowJson> = rows
        .iter()
        .map(|row| CommutatorRowJson {
            l: row.l,
            m_row: row.m_row,
            m_col: row.m_col,
            entry_re: row.entry.re,
            entry_im: row.entry.im,
            deviation: row.deviation,
        })
        .collect();
    let mut out = serde_json::to_string_pretty(&mirror).expect("rows serialize");
    out.push('\n');
    out
}
