use serde_json::{json, Map, Value};

use finstoch::measures::LogBase;
use finstoch::rational;
use finstoch::structure::{Mediator, PossMap};
use finstoch::{ProbSpace, StochMap};

// Values within this of zero print as zero, so that float noise never shows
// up as "-0.000000".
const PRINT_EPS: f64 = 5e-7;

pub fn entropy(v: f64, base: LogBase) -> String {
    let v = if v.abs() < PRINT_EPS { 0.0 } else { v };
    format!("{v:.6} {}", base.unit())
}

pub fn entropy_json(v: f64, base: LogBase) -> Value {
    json!({ "value": v, "base": base.value(), "unit": base.unit() })
}

/// A table with target labels down the side and source labels across.
pub fn matrix(f: &StochMap) -> String {
    let mut rows: Vec<Vec<String>> = Vec::new();
    let mut header = vec![String::new()];
    header.extend(f.src().iter().map(|l| l.to_string()));
    rows.push(header);
    for (y, yl) in f.tgt().iter().enumerate() {
        let mut row = vec![yl.to_string()];
        row.extend((0..f.src().len()).map(|x| rational::format(f.entry(y, x))));
        rows.push(row);
    }
    let widths: Vec<usize> = (0..rows[0].len())
        .map(|c| rows.iter().map(|r| r[c].chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for row in rows {
        let cells: Vec<String> = row
            .iter()
            .zip(&widths)
            .map(|(cell, w)| format!("{cell:<w$}"))
            .collect();
        out.push_str(cells.join("  ").trim_end());
        out.push('\n');
    }
    out
}

pub fn space(p: &ProbSpace) -> String {
    let body: Vec<String> = p
        .labels()
        .iter()
        .zip(p.probs())
        .map(|(l, v)| format!("{l}: {}", rational::format(v)))
        .collect();
    format!("{{ {} }}", body.join(", "))
}

pub fn space_json(p: &ProbSpace) -> Value {
    let body: Map<String, Value> = p
        .labels()
        .iter()
        .zip(p.probs())
        .map(|(l, v)| (l.to_string(), Value::String(rational::format(v))))
        .collect();
    Value::Object(body)
}

/// Columns keyed by source label, each a map from target label to entry.
pub fn map_json(f: &StochMap) -> Value {
    let cols: Map<String, Value> = f
        .src()
        .iter()
        .enumerate()
        .map(|(x, xl)| {
            let col: Map<String, Value> = f
                .tgt()
                .iter()
                .enumerate()
                .map(|(y, yl)| (yl.to_string(), Value::String(rational::format(f.entry(y, x)))))
                .collect();
            (xl.to_string(), Value::Object(col))
        })
        .collect();
    Value::Object(cols)
}

pub fn mediator(h: &Mediator) -> String {
    let mut out = String::from("mediator h : Z×X → Y\n");
    for (z, zl) in h.z_labels().iter().enumerate() {
        for (x, xl) in h.x_labels().iter().enumerate() {
            out.push_str(&format!("  h({zl}, {xl}) = {}\n", h.y_labels()[h.get(z, x)]));
        }
    }
    out
}

pub fn mediator_json(h: &Mediator) -> Value {
    let rows: Vec<Value> = h
        .z_labels()
        .iter()
        .enumerate()
        .flat_map(|(z, zl)| {
            h.x_labels().iter().enumerate().map(move |(x, xl)| {
                json!({ "z": zl.as_str(), "x": xl.as_str(), "y": h.y_labels()[h.get(z, x)].as_str() })
            })
        })
        .collect();
    Value::Array(rows)
}

fn image(d: &PossMap, y: usize) -> Vec<&str> {
    d.image(y).iter().map(|&a| d.tgt()[a].as_str()).collect()
}

pub fn recovery(d: &PossMap) -> String {
    let mut out = String::from("recovery map\n");
    for (y, yl) in d.src().iter().enumerate() {
        out.push_str(&format!("  {yl} ↦ {{{}}}\n", image(d, y).join(", ")));
    }
    out
}

pub fn recovery_json(d: &PossMap) -> Value {
    let rows: Map<String, Value> = d
        .src()
        .iter()
        .enumerate()
        .map(|(y, yl)| (yl.to_string(), json!(image(d, y))))
        .collect();
    Value::Object(rows)
}
