//! Output documents. Every report serializes to one JSON object tagged by
//! `command` and deserializes back into [`Report`].

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

/// Rounds to 12 significant digits.
pub fn sig12(v: f64) -> f64 {
    if v == 0.0 || !v.is_finite() {
        return v + 0.0;
    }
    format!("{v:.11e}").parse().unwrap_or(v)
}

pub fn sig12_all(vs: &[f64]) -> Vec<f64> {
    vs.iter().copied().map(sig12).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Base {
    Bits,
    Nats,
}

impl Base {
    /// Converts an entropy given in bits.
    pub fn scale(self, bits: f64) -> f64 {
        match self {
            Base::Bits => bits,
            Base::Nats => bits * std::f64::consts::LN_2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Order {
    Original,
    Sorted,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GlbReport {
    pub base: Base,
    pub z: Vec<f64>,
    pub entropy: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoupleReport {
    pub base: Base,
    pub order: Order,
    pub rows: usize,
    pub cols: usize,
    pub matrix: Vec<Vec<f64>>,
    pub entropy: f64,
    pub glb_entropy: f64,
    pub gap: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Entry {
    pub value: f64,
    pub index: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoupleKReport {
    pub base: Base,
    pub order: Order,
    pub dims: Vec<usize>,
    pub entries: Vec<Entry>,
    pub entropy: f64,
    pub glb_entropy: f64,
    pub bound: f64,
    pub dense: Option<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundsReport {
    pub base: Base,
    pub h_p: f64,
    pub h_q: f64,
    pub h_glb: f64,
    pub mi_upper_improved: f64,
    pub mi_upper_classic: f64,
    pub joint_lower_classic: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistanceReport {
    pub base: Base,
    pub lower: f64,
    pub upper: f64,
    pub estimate: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleReport {
    pub base: Base,
    pub order: Order,
    pub opt: f64,
    pub rows: usize,
    pub cols: usize,
    pub matrix: Vec<Vec<f64>>,
    pub support_size: usize,
    pub vertices: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Report {
    Glb(GlbReport),
    Couple(CoupleReport),
    CoupleK(CoupleKReport),
    Bounds(BoundsReport),
    Distance(DistanceReport),
    Oracle(OracleReport),
}

fn join(vs: &[f64]) -> String {
    vs.iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn order_name(o: Order) -> &'static str {
    match o {
        Order::Original => "original",
        Order::Sorted => "sorted",
    }
}

fn base_name(b: Base) -> &'static str {
    match b {
        Base::Bits => "bits",
        Base::Nats => "nats",
    }
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports contain only finite numbers")
    }

    /// Plain `key: value` lines; matrices one row per line.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = match self {
            Report::Glb(r) => writeln!(s, "z: {}\nentropy: {} {}", join(&r.z), r.entropy, base_name(r.base)),
            Report::Couple(r) => {
                let _ = writeln!(s, "matrix ({} x {}, {} order):", r.rows, r.cols, order_name(r.order));
                for row in &r.matrix {
                    let _ = writeln!(s, "  {}", join(row));
                }
                writeln!(
                    s,
                    "entropy: {}\nglb_entropy: {}\ngap: {}\nbase: {}",
                    r.entropy,
                    r.glb_entropy,
                    r.gap,
                    base_name(r.base)
                )
            }
            Report::CoupleK(r) => {
                let _ = writeln!(s, "dims: {:?}\nentries ({}):", r.dims, r.entries.len());
                for e in &r.entries {
                    let _ = writeln!(s, "  {:?} {}", e.index, e.value);
                }
                if let Some(d) = &r.dense {
                    let _ = writeln!(s, "dense: {}", join(d));
                }
                writeln!(
                    s,
                    "entropy: {}\nglb_entropy: {}\nbound: {}\nbase: {}",
                    r.entropy,
                    r.glb_entropy,
                    r.bound,
                    base_name(r.base)
                )
            }
            Report::Bounds(r) => writeln!(
                s,
                "h_p: {}\nh_q: {}\nh_glb: {}\nmi_upper_improved: {}\nmi_upper_classic: {}\njoint_lower_classic: {}\nbase: {}",
                r.h_p,
                r.h_q,
                r.h_glb,
                r.mi_upper_improved,
                r.mi_upper_classic,
                r.joint_lower_classic,
                base_name(r.base)
            ),
            Report::Distance(r) => writeln!(
                s,
                "lower: {}\nupper: {}\nestimate: {}\nbase: {}",
                r.lower,
                r.upper,
                r.estimate,
                base_name(r.base)
            ),
            Report::Oracle(r) => {
                let _ = writeln!(s, "argmin ({} x {}, {} order):", r.rows, r.cols, order_name(r.order));
                for row in &r.matrix {
                    let _ = writeln!(s, "  {}", join(row));
                }
                writeln!(
                    s,
                    "opt: {}\nsupport_size: {}\nvertices: {}\nbase: {}",
                    r.opt,
                    r.support_size,
                    r.vertices,
                    base_name(r.base)
                )
            }
        };
        s
    }
}
