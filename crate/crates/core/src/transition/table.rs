use std::fmt;

use super::fingerprint::Fingerprint;
use super::record::{TransitionRecord, TypeTag};
use super::simplicity::dim_image_lambda_report;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Role {
    /// The small resolution `Y`.
    Resolution,
    /// The singular variety `Ȳ`.
    Singular,
    /// The nodal variety reached by a splitting-family witness.
    NodalPartner,
    /// The smoothing `Ỹ`.
    Smoothing,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub variety: String,
    pub role: Role,
    pub fingerprint: Fingerprint,
}

/// Invariants of the three varieties of a transition, plus the nodal partner
/// when the record carries a witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransitionTable {
    pub rows: Vec<TableRow>,
}

impl TransitionTable {
    pub fn row(&self, role: Role) -> Option<&Fingerprint> {
        self.rows.iter().find(|r| r.role == role).map(|r| &r.fingerprint)
    }

    pub fn resolution(&self) -> &Fingerprint {
        self.row(Role::Resolution).expect("every table has a resolution row")
    }

    pub fn singular(&self) -> Option<&Fingerprint> {
        self.row(Role::Singular)
    }

    pub fn smoothing(&self) -> &Fingerprint {
        self.row(Role::Smoothing).expect("every table has a smoothing row")
    }

    pub const CSV_HEADER: &'static str = "variety,h1_theta,b2,rho,b3,b4,chi";

    /// Columns `h1Θ, b2, ρ, b3, b4, χ`, with `ρ` echoed equal to `b2`.
    pub fn to_csv(&self) -> String {
        let mut s = format!("{}\n", Self::CSV_HEADER);
        for r in &self.rows {
            let f = &r.fingerprint;
            let h = f.h1_theta.map(|h| h.to_string()).unwrap_or_default();
            s.push_str(&format!(
                "{},{h},{},{},{},{},{}\n",
                r.variety, f.b[2], f.b[2], f.b[3], f.b[4], f.chi
            ));
        }
        s
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for r in &self.rows {
            let f = &r.fingerprint;
            let h = f.h1_theta.map_or("?".to_string(), |h| h.to_string());
            s.push_str(&format!(
                "{:<12} h1Θ={h} b2={} rho={} b3={} b4={} chi={}\n",
                r.variety, f.b[2], f.b[2], f.b[3], f.b[4], f.chi
            ));
        }
        s
    }
}

fn to_u64(v: i64, what: &str, record: &str) -> Result<u64> {
    u64::try_from(v).map_err(|_| Error::Inconsistent(format!("{record}: derived {what} = {v} is negative")))
}

/// `(Y, Ȳ)` from the smoothing invariants, the Milnor numbers and the
/// exceptional-curve data:
///
/// ```text
/// χ(Ȳ) = χ(Ỹ) + Σ μ_i        χ(Y) = χ(Ȳ) + Σ e_i
/// b2(Y) = b2(Ỹ) + k          b4(Y) = b2(Y)          b3(Y) = 2 + 2 b2(Y) − χ(Y)
/// b2(Ȳ) = b2(Ỹ)              b4(Ȳ) = b2(Y)          b3(Ȳ) = 2 + b2(Ȳ) + b4(Ȳ) − χ(Ȳ)
/// ```
pub fn derive_pair(
    smoothing: &Fingerprint,
    milnor_total: u64,
    curve_total: u64,
    k: u64,
    record: &str,
) -> Result<(Fingerprint, Fingerprint)> {
    let chi_bar = smoothing.chi + milnor_total as i64;
    let chi_y = chi_bar + curve_total as i64;
    let b2_y = smoothing.b[2] + k;
    let b3_y = to_u64(2 + 2 * b2_y as i64 - chi_y, "b3(Y)", record)?;
    let b2_bar = smoothing.b[2];
    let b3_bar = to_u64(2 + b2_bar as i64 + b2_y as i64 - chi_bar, "b3(Ybar)", record)?;
    let mut y = Fingerprint::from_betti(b2_y, b3_y, b2_y, true);
    y.h11 = Some(b2_y);
    y.h21 = y.expected_h21();
    y.kahler = smoothing.kahler;
    let bar = Fingerprint::from_betti(b2_bar, b3_bar, b2_y, false);
    debug_assert_eq!(y.chi, chi_y);
    debug_assert_eq!(bar.chi, chi_bar);
    Ok((y, bar))
}

pub fn compute_table(t: &TransitionRecord) -> Result<TransitionTable> {
    let pair = t.h1_theta_pair;
    let (mut y, mut bar) = if t.type_tag == TypeTag::TypeII {
        let y = t
            .resolution_fp
            .clone()
            .ok_or_else(|| Error::InvalidRecord("type II record without resolution fingerprint".into()))?;
        (y, t.singular_fp.clone())
    } else {
        let (y, bar) = derive_pair(
            &t.smoothing,
            t.singular.milnor_total(),
            t.resolution.curve_total(),
            t.resolution.k_independent,
            &t.name,
        )?;
        (y, Some(bar))
    };
    if let Some((a, b)) = pair {
        y.h1_theta = Some(b);
        if let Some(bar) = bar.as_mut() {
            bar.h1_theta = Some(a);
        }
    }
    if let Some(p) = t.pi1_of_resolution() {
        y.pi1 = Some(p.to_string());
    }
    let mut rows = vec![TableRow {
        variety: t.resolution_name.clone(),
        role: Role::Resolution,
        fingerprint: y,
    }];
    if let Some(bar) = bar {
        rows.push(TableRow {
            variety: t.singular_name.clone(),
            role: Role::Singular,
            fingerprint: bar,
        });
    }
    if let Some(w) = &t.witness {
        let nodes = (t.singular.count * w.family.expected_nodes_per_point()) as u64;
        let (_, mut partner) = derive_pair(&t.smoothing, nodes, nodes, t.resolution.k_independent, &t.name)?;
        partner.h1_theta = w.h1_theta_singular;
        let name = w
            .conifold_name
            .clone()
            .unwrap_or_else(|| format!("{}_alpha", t.singular_name));
        rows.push(TableRow {
            variety: name,
            role: Role::NodalPartner,
            fingerprint: partner,
        });
    }
    rows.push(TableRow {
        variety: t.smoothing_name.clone(),
        role: Role::Smoothing,
        fingerprint: t.smoothing.clone(),
    });
    Ok(TransitionTable { rows })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Severity {
    Info,
    Warning,
    Error,
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Severity::Info => "INFO",
            Severity::Warning => "WARNING",
            Severity::Error => "ERROR",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Finding {
    pub severity: Severity,
    pub message: String,
}

impl Finding {
    pub fn new(severity: Severity, message: impl Into<String>) -> Self {
        Finding {
            severity,
            message: message.into(),
        }
    }
}

impl fmt::Display for Finding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.severity, self.message)
    }
}

/// Checks on a single fingerprint.
pub fn fingerprint_findings(name: &str, f: &Fingerprint) -> Vec<Finding> {
    let mut out = Vec::new();
    let err = |m: String| Finding::new(Severity::Error, format!("{name}: {m}"));
    if f.chi != f.alternating_sum() {
        out.push(err(format!(
            "chi={} differs from the alternating Betti sum {}",
            f.chi,
            f.alternating_sum()
        )));
    }
    if f.smooth {
        for (i, j) in [(0, 6), (1, 5), (2, 4)] {
            if f.b[i] != f.b[j] {
                out.push(err(format!(
                    "Poincaré duality violated: b{i}={} b{j}={}",
                    f.b[i], f.b[j]
                )));
            }
        }
        if let Some(h11) = f.h11 {
            if h11 != f.b[2] {
                out.push(err(format!("h11={h11} differs from b2={}", f.b[2])));
            }
        }
        if let Some(h21) = f.h21 {
            if 2 + 2 * h21 != f.b[3] {
                out.push(err(format!("h21={h21} does not match b3={}", f.b[3])));
            }
        }
        if let (Some(h11), Some(h21)) = (f.h11, f.h21) {
            if f.chi != 2 * (h11 as i64 - h21 as i64) {
                out.push(err(format!(
                    "chi={} differs from 2(h11 - h21)={}",
                    f.chi,
                    2 * (h11 as i64 - h21 as i64)
                )));
            }
        }
        if let (Some(h), Some(expected)) = (f.h1_theta, f.expected_h21()) {
            if h != expected {
                out.push(Finding::new(
                    Severity::Warning,
                    format!("{name}: h1Θ={h} vs expected h21={expected}"),
                ));
            }
        }
    }
    out
}

fn compare_supplied(name: &str, supplied: &Fingerprint, derived: &Fingerprint, out: &mut Vec<Finding>) {
    if !supplied.same_topology(derived) {
        let fmt = |f: &Fingerprint| format!("b2={} b3={} b4={} chi={}", f.b[2], f.b[3], f.b[4], f.chi);
        out.push(Finding::new(
            Severity::Error,
            format!(
                "{name}: supplied {} disagrees with derived {}",
                fmt(supplied),
                fmt(derived)
            ),
        ));
    }
}

/// Findings about a record, in a fixed order: derivation failures, then each
/// table row, then supplied fingerprints, the witness partner, `π_1` and the
/// `h^1(Θ)` pair.
pub fn consistency_check(t: &TransitionRecord) -> Vec<Finding> {
    let mut out = Vec::new();
    let table = match compute_table(t) {
        Ok(table) => table,
        Err(e) => return vec![Finding::new(Severity::Error, e.to_string())],
    };
    for r in &table.rows {
        out.extend(fingerprint_findings(&r.variety, &r.fingerprint));
    }
    if t.type_tag != TypeTag::TypeII {
        if let Some(s) = &t.resolution_fp {
            compare_supplied(&t.resolution_name, s, table.resolution(), &mut out);
            out.extend(fingerprint_findings(&format!("{} (supplied)", t.resolution_name), s));
        }
        if let (Some(s), Some(d)) = (&t.singular_fp, table.singular()) {
            compare_supplied(&t.singular_name, s, d, &mut out);
        }
    }
    if let Some(w) = &t.witness {
        // the nodal partner must resolve to a deformation of Y
        let nodes = (t.singular.count * w.family.expected_nodes_per_point()) as u64;
        let partner = derive_pair(&t.smoothing, nodes, nodes, t.resolution.k_independent, &t.name);
        if partner.map_or(true, |(y_alpha, _)| !y_alpha.same_topology(table.resolution())) {
            out.push(Finding::new(
                Severity::Error,
                format!(
                    "{}: the nodal partner resolves to different Betti numbers",
                    t.resolution_name
                ),
            ));
        }
    }
    if t.type_tag == TypeTag::Conifold {
        if let (Some(a), Some(b)) = (t.pi1_of_resolution(), t.smoothing.pi1.as_deref()) {
            if a != b {
                out.push(Finding::new(
                    Severity::Error,
                    format!("conifold transition changes the fundamental group: {a} vs {b}"),
                ));
            }
        }
    }
    if let Err(e) = dim_image_lambda_report(t) {
        out.push(Finding::new(Severity::Error, e.to_string()));
    }
    out
}
