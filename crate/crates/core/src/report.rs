//! CSV/JSON rendering of breakdowns and comparisons. Numbers are written in
//! decimal at the requested precision with '.' separators; JSON carries them
//! as strings so no precision is lost to binary doubles. JSON field names
//! mirror the CSV headers.

use crate::expansions::ExpansionBreakdown;
use crate::precision::format_float;
use crate::zerosum::CompareOutcome;
use serde_json::{json, Map, Value};

pub fn breakdown_csv(b: &ExpansionBreakdown) -> String {
    let d = b.meta.digits;
    let mut out = String::from("term,re,im\n");
    for (label, v) in &b.terms {
        out.push_str(&format!(
            "{label},{},{}\n",
            format_float(v.re(), d),
            format_float(v.im(), d)
        ));
    }
    out.push_str(&format!(
        "total,{},{}\n",
        format_float(b.total.re(), d),
        format_float(b.total.im(), d)
    ));
    out.push_str(&format!(
        "error_scale,{},\n",
        format_float(&b.error_scale, d)
    ));
    out
}

pub fn breakdown_json(b: &ExpansionBreakdown) -> Value {
    let d = b.meta.digits;
    let mut terms = Map::new();
    for (label, v) in &b.terms {
        terms.insert(
            label.clone(),
            json!({
                "re": format_float(v.re(), d),
                "im": format_float(v.im(), d),
            }),
        );
    }
    json!({
        "meta": {
            "formula": b.meta.formula,
            "n": b.meta.n,
            "X": b.meta.x,
            "T": b.meta.t,
            "digits": d,
            "error_shape": b.meta.error_shape,
        },
        "terms": Value::Object(terms),
        "total": {
            "re": format_float(b.total.re(), d),
            "im": format_float(b.total.im(), d),
        },
        "error_scale": format_float(&b.error_scale, d),
    })
}

pub fn compare_json(outcome: &CompareOutcome, digits: u32) -> Value {
    let rows: Vec<Value> = outcome
        .reports
        .iter()
        .map(|r| {
            json!({
                "T_effective": format_float(&r.meta.effective_t, digits),
                "zero_count": r.meta.zero_count,
                "lhs_re": format_float(r.lhs.re(), digits),
                "lhs_im": format_float(r.lhs.im(), digits),
                "rhs_re": format_float(r.rhs.re(), digits),
                "rhs_im": format_float(r.rhs.im(), digits),
                "resid_abs": format_float(&r.residual.abs(), digits),
                "resid_norm": format_float(&r.normalized_residual, digits),
                "meta": {
                    "formula": r.meta.formula,
                    "n": r.meta.n,
                    "X": r.meta.x,
                    "digits": r.meta.digits,
                },
            })
        })
        .collect();
    json!({
        "rows": rows,
        "summary": {
            "c_hat": format_float(&outcome.summary.c_hat, digits),
            "trend": if outcome.summary.increasing { "increasing" } else { "bounded" },
            "trend_ratio": format_float(&outcome.summary.trend_ratio, digits),
        },
    })
}
