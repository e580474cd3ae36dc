//! Convergence comparison across certificates.

use std::time::Instant;

use serde::Serialize;

use crate::derive::SeriesCertificate;

use super::{digits_per_term, pi_from_certificate, GUARD_TERMS};

const BENCH_DIGITS: usize = 1000;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceRow {
    /// Equation name and class.
    pub label: String,
    pub level: u32,
    /// Exact `z` as text.
    pub z: String,
    pub abs_z: f64,
    pub digits_per_term: f64,
    pub terms_for_1000: u64,
    pub wall_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceReport {
    pub rows: Vec<ConvergenceRow>,
    /// Level-3 labels, fastest first.
    pub level3_ranking: Vec<String>,
}

impl ConvergenceReport {
    /// The fastest level-3 series, if it is strictly faster than the rest.
    pub fn fastest_level3(&self) -> Option<&str> {
        let lvl3: Vec<&ConvergenceRow> = self.level3_ranking.iter().filter_map(|l| self.rows.iter().find(|r| &r.label == l)).collect();
        match lvl3.as_slice() {
            [] => None,
            [only] => Some(&only.label),
            [first, second, ..] => (first.digits_per_term > second.digits_per_term).then_some(&first.label),
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{:<32} {:>5} {:>16} {:>12} {:>10} {:>10}\n", "series", "level", "|z|", "digits/term", "terms@1000", "ms@1000");
        for r in &self.rows {
            out.push_str(&format!(
                "{:<32} {:>5} {:>16.6e} {:>12.5} {:>10} {:>10.1}\n",
                r.label, r.level, r.abs_z, r.digits_per_term, r.terms_for_1000, r.wall_ms
            ));
        }
        if self.level3_ranking.len() > 1 {
            out.push_str(&format!("level 3 ranking: {}\n", self.level3_ranking.join(" > ")));
        }
        out
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

/// Theoretical rate and a timed 1000-digit evaluation per certificate.
/// Certificates whose series does not converge are skipped.
pub fn convergence_report(certs: &[SeriesCertificate]) -> ConvergenceReport {
    let mut rows = Vec::new();
    for cert in certs {
        let Some(rate) = digits_per_term(cert) else { continue };
        let start = Instant::now();
        let terms = pi_from_certificate(cert, BENCH_DIGITS).map(|p| p.terms);
        let wall_ms = start.elapsed().as_secs_f64() * 1e3;
        rows.push(ConvergenceRow {
            label: format!("{} ({})", cert.name(), cert.class),
            level: cert.trace.l,
            z: cert.z.to_string(),
            abs_z: 10f64.powf(-rate),
            digits_per_term: rate,
            terms_for_1000: terms.unwrap_or_else(|_| (BENCH_DIGITS as f64 / rate).ceil() as u64 + GUARD_TERMS),
            wall_ms,
        });
    }
    let mut lvl3: Vec<&ConvergenceRow> = rows.iter().filter(|r| r.level == 3).collect();
    lvl3.sort_by(|a, b| b.digits_per_term.total_cmp(&a.digits_per_term));
    let level3_ranking = lvl3.into_iter().map(|r| r.label.clone()).collect();
    ConvergenceReport { rows, level3_ranking }
}
