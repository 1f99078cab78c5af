//! JSON serialization helpers. Rationals become `p/q` strings, integer
//! vectors become number arrays, and vector lists are emitted in their
//! stored (lexicographic) order so output is byte-stable.

use crate::eutaxy::EutaxyCertificate;
use crate::lattice::{Lattice, MinimalVectorSet};
use crate::optimality::{EutaxyOutcome, OptimalityReport};
use crate::qmat::QMat;
use crate::rat::{is_integer, rat_str, Rat};
use serde_json::{json, Map, Value};

pub fn rat_value(r: &Rat) -> Value {
    Value::String(rat_str(r))
}

pub fn rat_vec_value(v: &[Rat]) -> Value {
    Value::Array(v.iter().map(rat_value).collect())
}

pub fn qmat_value(m: &QMat) -> Value {
    Value::Array((0..m.rows()).map(|i| rat_vec_value(m.row(i))).collect())
}

/// Integer vectors serialize as plain number arrays; anything with a
/// denominator falls back to `p/q` strings.
pub fn vector_value(v: &[Rat]) -> Value {
    if v.iter().all(is_integer) {
        Value::Array(
            v.iter()
                .map(|x| json!(i64::try_from(x.to_integer()).expect("entry fits i64")))
                .collect(),
        )
    } else {
        rat_vec_value(v)
    }
}

pub fn basis_value(lattice: &Lattice) -> Value {
    Value::Array(lattice.basis().iter().map(|row| vector_value(row)).collect())
}

pub fn minimal_vectors_value(sv: &MinimalVectorSet) -> Value {
    let mut obj = Map::new();
    obj.insert("min_norm_sq".into(), rat_value(sv.min_norm_sq()));
    obj.insert("count".into(), json!(sv.len()));
    obj.insert(
        "vectors".into(),
        Value::Array(sv.vectors().iter().map(|v| vector_value(v)).collect()),
    );
    Value::Object(obj)
}

/// Certificate document for the strong-eutaxy check.
pub fn eutaxy_certificate_value(cert: &EutaxyCertificate) -> Value {
    let mut obj = Map::new();
    obj.insert("schema".into(), json!(1));
    obj.insert("verdict".into(), json!(cert.verdict));
    obj.insert("r".into(), json!(cert.rank));
    obj.insert("m".into(), json!(cert.vector_count));
    obj.insert("min_norm_sq".into(), rat_value(&cert.min_norm_sq));
    obj.insert("constant".into(), rat_value(&cert.constant));
    obj.insert(
        "discrepancy_max_abs".into(),
        rat_value(&cert.discrepancy.max_abs_entry()),
    );
    Value::Object(obj)
}

/// Report document for the extremality certificate. Weights are keyed by
/// the lexicographically least representative of each sign class.
pub fn optimality_value(report: &OptimalityReport) -> Value {
    let mut obj = Map::new();
    obj.insert("schema".into(), json!(1));
    obj.insert("perfect".into(), json!(report.perfect));
    obj.insert("perfection_rank".into(), json!(report.perfection_rank));
    obj.insert("perfection_target".into(), json!(report.perfection_target));
    match &report.eutactic {
        EutaxyOutcome::Eutactic(weights) => {
            obj.insert("eutactic".into(), json!(true));
            let mut wmap = Map::new();
            for (rep, rho) in weights {
                wmap.insert(vector_key(rep), rat_value(rho));
            }
            obj.insert("eutaxy_weights".into(), Value::Object(wmap));
        }
        EutaxyOutcome::NotEutactic => {
            obj.insert("eutactic".into(), json!(false));
        }
        EutaxyOutcome::BudgetExceeded => {
            obj.insert("eutactic".into(), json!("budget-exceeded"));
        }
    }
    obj.insert(
        "extreme".into(),
        match report.extreme {
            Some(v) => json!(v),
            None => json!("inconclusive"),
        },
    );
    Value::Object(obj)
}

fn vector_key(v: &[Rat]) -> String {
    v.iter().map(rat_str).collect::<Vec<_>>().join(",")
}
