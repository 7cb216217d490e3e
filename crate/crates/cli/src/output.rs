use std::fmt::Write as _;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::study::StudyRow;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Hex SHA-256 of the configuration bytes.
pub fn config_hash(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().fold(String::with_capacity(64), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}

fn float(v: Option<f64>) -> String {
    v.map(|x| format!("{x:.15e}")).unwrap_or_default()
}

pub fn render_csv(rows: &[StudyRow], hash: &str) -> String {
    let mut out = format!("# gjf {VERSION} config={hash}\nkind,nu,N,error_l2,error_frac,rate_frac\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            r.kind,
            float(Some(r.nu)),
            r.n,
            float(r.error_l2),
            float(r.error_frac),
            float(r.rate_frac)
        );
    }
    out
}

#[derive(Serialize)]
struct JsonDoc<'a, T: Serialize> {
    version: &'a str,
    config_hash: &'a str,
    rows: &'a [StudyRow],
    #[serde(skip_serializing_if = "Option::is_none")]
    solution: Option<T>,
}

/// Coefficients of a single solve, as written by `gjf solve --format json`.
#[derive(Debug, Serialize)]
pub struct SolutionDump {
    pub family: String,
    pub start: usize,
    pub coeffs: Vec<f64>,
}

pub fn render_json(rows: &[StudyRow], hash: &str, solution: Option<&SolutionDump>) -> String {
    let doc = JsonDoc {
        version: VERSION,
        config_hash: hash,
        rows,
        solution,
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("rows serialize");
    s.push('\n');
    s
}
