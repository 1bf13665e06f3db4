use qorders::catalog::CatalogRecord;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use std::collections::BTreeSet;

const DIM3: &str = include_str!("../golden/dim3.json");
const DIM4: &str = include_str!("../golden/dim4.json");
const DIM5: &str = include_str!("../golden/dim5.json");

/// One classify output row: the catalog record and, for dim 5, every
/// nrm(u) attained by a normalized covering vector.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ClassRecord {
    #[serde(flatten)]
    pub record: CatalogRecord,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub nrm_u_set: Option<Vec<String>>,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize, PartialEq)]
pub struct GoldenDiff {
    pub missing: Vec<Value>,
    pub unexpected: Vec<Value>,
    /// Keys outside the golden range (not compared).
    pub uncompared: usize,
}

impl GoldenDiff {
    pub fn is_empty(&self) -> bool {
        self.missing.is_empty() && self.unexpected.is_empty()
    }
}

#[derive(Deserialize)]
struct Dim4Golden {
    n_bound: i64,
    entries: Vec<Value>,
    /// Isomorphic to an entry of another family; may be folded.
    folded: Vec<Value>,
}

/// What to compare: the dim, the classify bound and an optional family filter.
pub struct Scope {
    pub dim: u8,
    pub bound: i64,
    pub family_a: Option<i64>,
    pub family_n: Option<i64>,
}

fn int(s: &str) -> i64 {
    s.parse::<i64>().unwrap_or_else(|_| qarith::parse_q(s).map(|q| q.to_integer().try_into().unwrap_or(0)).unwrap_or(0))
}

fn key(dim: u8, r: &ClassRecord) -> Value {
    let rec = &r.record;
    let a = int(&qarith::fmt_q(&rec.sig.a));
    match dim {
        3 => json!({"n": -a, "disc": int(&rec.discrd), "nrm_u": int(&rec.nrm_u)}),
        4 => json!({"a": a, "n": int(&qarith::fmt_q(&rec.sig.bq())), "discrd": int(&rec.discrd)}),
        _ => {
            let set: Vec<i64> = r.nrm_u_set.as_deref().unwrap_or(&[]).iter().map(|s| int(s)).collect();
            json!({"a": a, "b": int(&qarith::fmt_q(&rec.sig.bq())), "discrd": int(&rec.discrd), "nrm_u": set})
        }
    }
}

fn in_scope(s: &Scope, v: &Value) -> bool {
    let g = |k: &str| v[k].as_i64().unwrap_or(0);
    match s.dim {
        3 => g("n") <= s.bound,
        4 => g("n").abs() <= s.bound && s.family_a.map_or(true, |a| a == g("a")) && s.family_n.map_or(true, |n| n == g("n")),
        _ => g("discrd") <= s.bound,
    }
}

/// Compare classify output with the committed tables.
pub fn golden_diff(scope: &Scope, rows: &[ClassRecord]) -> GoldenDiff {
    let mut optional = BTreeSet::new();
    let (golden, limit): (Vec<Value>, Option<i64>) = match scope.dim {
        3 => (serde_json::from_str(DIM3).unwrap(), Some(200)),
        4 => {
            let g: Dim4Golden = serde_json::from_str(DIM4).unwrap();
            for f in &g.folded {
                optional.insert(json!({"a": f["a"], "n": f["n"], "discrd": f["discrd"]}).to_string());
            }
            (g.entries, Some(g.n_bound))
        }
        _ => (serde_json::from_str(DIM5).unwrap(), None),
    };
    let covered = |v: &Value| match (scope.dim, limit) {
        (3, Some(l)) => v["n"].as_i64().unwrap_or(0) <= l,
        (4, Some(l)) => v["n"].as_i64().unwrap_or(0).abs() <= l,
        _ => true,
    };
    let want: BTreeSet<String> = golden.iter().filter(|v| in_scope(scope, v)).map(|v| v.to_string()).collect();
    let mut diff = GoldenDiff::default();
    let mut got = BTreeSet::new();
    for r in rows {
        let k = key(scope.dim, r);
        if !covered(&k) {
            diff.uncompared += 1;
            continue;
        }
        got.insert(k.to_string());
    }
    let parse = |s: &String| serde_json::from_str::<Value>(s).unwrap();
    diff.missing = want.difference(&got).filter(|k| !optional.contains(*k)).map(parse).collect();
    diff.unexpected = got.difference(&want).map(parse).collect();
    diff
}
