//! File formats and exact-number serialization.
//!
//! Sets use the core text form `{1, 2, 5/3}`. Polynomials use the
//! lowest-degree-first form `[1, 0, -2]`; a polynomial-vector file holds one
//! polynomial per line (a single line is replicated across all `2s`
//! positions). Weight files hold `element weight` pairs, one per line.
//! Exact rationals are serialized as `"num/den"` strings.

use std::path::Path;
use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};
use serde_json::{json, Value};

use spl_core::ground::WeightFn;
use spl_core::structure::QueryStrategy;
use spl_core::{GroundSet, PolyQ, PolyVec, Rat};

pub fn rat_str(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn parse_rat(s: &str) -> Result<Rat> {
    Rat::from_str(s.trim()).map_err(|e| anyhow!("bad rational {s:?}: {e}"))
}

pub fn read_set(path: &Path) -> Result<GroundSet> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    text.trim()
        .parse()
        .map_err(|e| anyhow!("{}: {e}", path.display()))
}

pub fn write_set(path: &Path, a: &GroundSet) -> Result<()> {
    std::fs::write(path, format!("{a}\n")).with_context(|| format!("writing {}", path.display()))
}

pub fn read_poly(path: &Path) -> Result<PolyQ> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    text.trim()
        .parse()
        .map_err(|e| anyhow!("{}: {e}", path.display()))
}

/// One polynomial per non-empty line; a single line is replicated to `2s`.
pub fn read_polys(path: &Path, s: u32) -> Result<PolyVec> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let polys: Vec<PolyQ> = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(|l| l.parse().map_err(|e| anyhow!("{}: {e}", path.display())))
        .collect::<Result<_>>()?;
    match polys.len() {
        0 => bail!("{}: no polynomials", path.display()),
        1 => Ok(PolyVec::uniform(polys.into_iter().next().unwrap(), s)),
        n if n == 2 * s as usize => {
            PolyVec::new(polys).map_err(|e| anyhow!("{}: {e}", path.display()))
        }
        n => bail!(
            "{}: expected 1 or {} polynomials, found {n}",
            path.display(),
            2 * s
        ),
    }
}

/// Lines of `element weight`; elements missing from the file get weight 0.
pub fn read_weights(path: &Path) -> Result<WeightFn> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let mut entries = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut it = line.split_whitespace();
        let (e, w) = (it.next(), it.next());
        match (e, w, it.next()) {
            (Some(e), Some(w), None) => entries.push((parse_rat(e)?, parse_rat(w)?)),
            _ => bail!("{}:{}: expected `element weight`", path.display(), i + 1),
        }
    }
    WeightFn::new(entries).map_err(|e| anyhow!("{}: {e}", path.display()))
}

/// Nested strategy JSON: `{"prime": p, "children": {"<valuation>": null | {...}}}`.
pub fn strategy_to_json(s: &QueryStrategy) -> Value {
    let children: serde_json::Map<String, Value> = s
        .children
        .iter()
        .map(|(v, child)| {
            (
                v.to_string(),
                child.as_ref().map(strategy_to_json).unwrap_or(Value::Null),
            )
        })
        .collect();
    json!({ "prime": s.prime, "children": children })
}

pub fn strategy_from_json(v: &Value) -> Result<QueryStrategy> {
    let prime = v
        .get("prime")
        .and_then(Value::as_u64)
        .ok_or_else(|| anyhow!("strategy missing prime"))?;
    let mut children = std::collections::BTreeMap::new();
    let map = v
        .get("children")
        .and_then(Value::as_object)
        .ok_or_else(|| anyhow!("strategy missing children"))?;
    for (k, child) in map {
        let val: i64 = k.parse().with_context(|| format!("bad valuation key {k:?}"))?;
        let sub = if child.is_null() {
            None
        } else {
            Some(strategy_from_json(child)?)
        };
        children.insert(val, sub);
    }
    Ok(QueryStrategy { prime, children })
}

/// Writes to `path`, or stdout when no path is given.
pub fn emit(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use spl_core::arith::{rat, ratio};

    #[test]
    fn rat_roundtrip() {
        assert_eq!(rat_str(&rat(3)), "3/1");
        assert_eq!(rat_str(&ratio(-5, 10)), "-1/2");
        assert_eq!(parse_rat("-1/2").unwrap(), ratio(-1, 2));
    }

    #[test]
    fn file_roundtrips() {
        let dir = tempfile::tempdir().unwrap();
        let sp = dir.path().join("set.txt");
        let a: GroundSet = "{1, 2, 5/3}".parse().unwrap();
        write_set(&sp, &a).unwrap();
        assert_eq!(read_set(&sp).unwrap(), a);

        let pp = dir.path().join("poly.txt");
        std::fs::write(&pp, "[1, 0, -2]\n").unwrap();
        assert_eq!(read_poly(&pp).unwrap(), PolyQ::from_ints([1, 0, -2]));
        let pv = read_polys(&pp, 2).unwrap();
        assert_eq!(pv.polys().len(), 4);

        let wp = dir.path().join("weights.txt");
        std::fs::write(&wp, "1 2\n5/3 1\n").unwrap();
        let w = read_weights(&wp).unwrap();
        assert_eq!(w.get(&rat(1)), rat(2));
        assert_eq!(w.get(&rat(7)), rat(0));
    }

    #[test]
    fn strategy_json_roundtrip() {
        let a = GroundSet::from_ints([6, 10, 15]);
        let (_, s) = spl_core::structure::query_complexity_exact(&a).unwrap();
        let v = strategy_to_json(&s);
        let back = strategy_from_json(&v).unwrap();
        assert_eq!(back, s);
    }
}
