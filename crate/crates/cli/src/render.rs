// Text and JSON renderings. Terms always come out in rendering order, so two
// runs print the same bytes.

use serde_json::{json, Value};

use dyson_core::algebra::{Basis, LinComb};
use dyson_core::dse::GreenFunction;
use dyson_core::functor::EnumResult;
use dyson_core::trees::Grading;

use crate::Format;

pub fn json_doc(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("plain data");
    s.push('\n');
    s
}

fn terms<K: Basis>(x: &LinComb<K>) -> Value {
    Value::Array(
        x.sorted_terms()
            .into_iter()
            .map(|(basis, coef)| json!({"coef": coef.to_string(), "tree": basis}))
            .collect(),
    )
}

/// Lines `k: c*t + ...` for k = 0, 1, ....
fn lines<K: Basis>(xs: &[LinComb<K>], skip_zero: bool) -> String {
    let mut out = String::new();
    for (k, x) in xs.iter().enumerate() {
        if !(skip_zero && x.is_zero()) {
            out.push_str(&format!("{k}: {x}\n"));
        }
    }
    out
}

fn graded<K: Basis>(xs: &[LinComb<K>], skip_zero: bool) -> Value {
    Value::Array(
        xs.iter()
            .enumerate()
            .filter(|(_, x)| !(skip_zero && x.is_zero()))
            .map(|(k, x)| json!({"k": k, "terms": terms(x)}))
            .collect(),
    )
}

/// A sequence of graded components, such as a solver's output.
pub fn components<K: Basis>(kind: &str, xs: &[LinComb<K>], format: Format) -> String {
    match format {
        Format::Text => lines(xs, false),
        Format::Json => json_doc(&json!({
            "kind": kind,
            "order": xs.len().saturating_sub(1),
            "components": graded(xs, false),
        })),
    }
}

pub fn green(g: &GreenFunction, format: Format) -> String {
    match format {
        Format::Text => g.to_string(),
        Format::Json => {
            let colors: Vec<Value> = g
                .components
                .iter()
                .map(|(c, gs)| json!({"color": c.as_str(), "components": graded(gs, true)}))
                .collect();
            json_doc(&json!({"kind": "green", "order": g.order, "colors": colors}))
        }
    }
}

fn grading_name(mode: Grading) -> &'static str {
    match mode {
        Grading::Leaves => "leaves",
        Grading::Nodes => "nodes",
        Grading::Operadic => "operadic",
    }
}

pub fn enumeration(result: &EnumResult, counts_only: bool, format: Format) -> String {
    let from = result.entries.first().map_or(0, |e| e.grade);
    let counts = result.counts(from);
    match format {
        Format::Text if counts_only => {
            let words: Vec<String> = counts.iter().map(usize::to_string).collect();
            format!("{}\n", words.join(" "))
        }
        Format::Text => {
            let mut out = String::new();
            for e in &result.entries {
                out.push_str(&format!("{}: {} aut={}\n", e.grade, e.tree, e.aut_order));
            }
            if let Some(cap) = result.arity_cap {
                out.push_str(&format!("note: operation families cut at arity {cap}\n"));
            }
            out
        }
        Format::Json => {
            let mut doc = json!({
                "kind": "enumerate",
                "grade": grading_name(result.mode),
                "bound": result.bound,
                "from": from,
                "counts": counts,
                "arity_cap": result.arity_cap,
            });
            if !counts_only {
                doc["trees"] = Value::Array(
                    result
                        .entries
                        .iter()
                        .map(|e| json!({"grade": e.grade, "tree": e.tree.as_str(), "aut": e.aut_order.to_string()}))
                        .collect(),
                );
            }
            json_doc(&doc)
        }
    }
}
