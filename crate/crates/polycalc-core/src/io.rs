//! Canonical JSON file formats for every domain type.
//!
//! Serialization is canonical: object keys are emitted in sorted order,
//! labels encode as nested arrays of strings and integers, and label-keyed
//! tables use the compact key encoding from `Label::to_key`. Parsing a
//! canonical file and re-serializing it reproduces the bytes exactly.
//! Schemas are documented in `docs/formats.md`.

use crate::budget::Budget;
use crate::bicomodule::{Bicomodule, TypedPoly};
use crate::coalgebra::Coalgebra;
use crate::comonoid::{Comonoid, InternalCategory};
use crate::error::{Error, Result};
use crate::fincat::FinCat;
use crate::finset::{FinFn, FinSet};
use crate::label::Label;
use crate::poly::{Poly, PolyMor};
use crate::presheaf::{Presheaf, PshMor};
use crate::pshpoly::PshPoly;
use serde_json::{json, Map, Value};
use std::collections::BTreeMap;
use std::path::Path;

/// Canonical byte form of a JSON value: pretty-printed with sorted keys
/// and a trailing newline.
pub fn to_canonical_bytes(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

pub fn parse_file(path: &Path) -> Result<Value> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::schema(path.display().to_string(), e.to_string()))
}

fn field<'a>(v: &'a Value, path: &str, key: &str) -> Result<&'a Value> {
    v.get(key)
        .ok_or_else(|| Error::schema(format!("{path}.{key}"), "missing field"))
}

fn as_array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>> {
    v.as_array()
        .ok_or_else(|| Error::schema(path, "expected an array"))
}

fn as_object<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>> {
    v.as_object()
        .ok_or_else(|| Error::schema(path, "expected an object"))
}

// ---------------------------------------------------------------- finset

pub fn finset_to_value(s: &FinSet) -> Value {
    json!({ "elements": s.iter().map(Label::to_value).collect::<Vec<_>>() })
}

pub fn finset_from_value(v: &Value, path: &str) -> Result<FinSet> {
    let elems = as_array(field(v, path, "elements")?, &format!("{path}.elements"))?;
    let labels = elems
        .iter()
        .map(Label::from_value)
        .collect::<Result<Vec<_>>>()?;
    FinSet::new(labels).map_err(|e| Error::schema(format!("{path}.elements"), e.to_string()))
}

// ----------------------------------------------------------------- finfn

fn table_to_value(map: &BTreeMap<Label, Label>) -> Value {
    let mut obj = Map::new();
    for (k, v) in map {
        obj.insert(k.to_key(), v.to_value());
    }
    Value::Object(obj)
}

fn table_from_value(v: &Value, path: &str) -> Result<BTreeMap<Label, Label>> {
    let obj = as_object(v, path)?;
    let mut map = BTreeMap::new();
    for (k, val) in obj {
        map.insert(Label::parse_key(k)?, Label::from_value(val)?);
    }
    Ok(map)
}

pub fn finfn_to_value(f: &FinFn) -> Value {
    json!({
        "dom": finset_to_value(f.dom()),
        "cod": finset_to_value(f.cod()),
        "map": table_to_value(f.map()),
    })
}

pub fn finfn_from_value(v: &Value, path: &str) -> Result<FinFn> {
    let dom = finset_from_value(field(v, path, "dom")?, &format!("{path}.dom"))?;
    let cod = finset_from_value(field(v, path, "cod")?, &format!("{path}.cod"))?;
    let map = table_from_value(field(v, path, "map")?, &format!("{path}.map"))?;
    FinFn::new(dom, cod, map).map_err(|e| Error::schema(format!("{path}.map"), e.to_string()))
}

/// A bare assignment table, for contexts where dom and cod are implied.
fn bare_fn_from_value(
    v: &Value,
    dom: &FinSet,
    cod: &FinSet,
    path: &str,
) -> Result<FinFn> {
    let map = table_from_value(v, path)?;
    FinFn::new(dom.clone(), cod.clone(), map)
        .map_err(|e| Error::schema(path, e.to_string()))
}

// ---------------------------------------------------------------- fincat

pub fn fincat_to_value(c: &FinCat) -> Value {
    let compose: Vec<Value> = c
        .compose
        .iter()
        .map(|((g, f), gf)| Value::Array(vec![g.to_value(), f.to_value(), gf.to_value()]))
        .collect();
    json!({
        "objects": finset_to_value(&c.objects),
        "morphisms": finset_to_value(&c.morphisms),
        "src": table_to_value(c.src.map()),
        "tgt": table_to_value(c.tgt.map()),
        "id": table_to_value(c.ident.map()),
        "compose": compose,
    })
}

pub fn fincat_from_value(v: &Value, path: &str) -> Result<FinCat> {
    let objects = finset_from_value(field(v, path, "objects")?, &format!("{path}.objects"))?;
    let morphisms =
        finset_from_value(field(v, path, "morphisms")?, &format!("{path}.morphisms"))?;
    let src = bare_fn_from_value(
        field(v, path, "src")?,
        &morphisms,
        &objects,
        &format!("{path}.src"),
    )?;
    let tgt = bare_fn_from_value(
        field(v, path, "tgt")?,
        &morphisms,
        &objects,
        &format!("{path}.tgt"),
    )?;
    let ident = bare_fn_from_value(
        field(v, path, "id")?,
        &objects,
        &morphisms,
        &format!("{path}.id"),
    )?;
    let rows = as_array(field(v, path, "compose")?, &format!("{path}.compose"))?;
    let mut compose = BTreeMap::new();
    for (i, row) in rows.iter().enumerate() {
        let triple = as_array(row, &format!("{path}.compose[{i}]"))?;
        if triple.len() != 3 {
            return Err(Error::schema(
                format!("{path}.compose[{i}]"),
                "expected a [g, f, gf] triple",
            ));
        }
        compose.insert(
            (Label::from_value(&triple[0])?, Label::from_value(&triple[1])?),
            Label::from_value(&triple[2])?,
        );
    }
    // Name the offending pair when the table is incomplete.
    for f in morphisms.iter() {
        for g in morphisms.iter() {
            if tgt.apply(f) == src.apply(g) && !compose.contains_key(&(g.clone(), f.clone())) {
                return Err(Error::schema(
                    format!("{path}.compose"),
                    format!("missing composition entry for ({g},{f})"),
                ));
            }
        }
    }
    FinCat::new(objects, morphisms, src, tgt, ident, compose)
        .map_err(|e| Error::schema(path, e.to_string()))
}

// -------------------------------------------------------------- presheaf

pub fn presheaf_to_value(p: &Presheaf) -> Value {
    let mut at = Map::new();
    for (k, s) in &p.at {
        at.insert(
            k.to_key(),
            Value::Array(s.iter().map(Label::to_value).collect()),
        );
    }
    let mut action = Map::new();
    for (k, f) in &p.action {
        action.insert(k.to_key(), table_to_value(f.map()));
    }
    json!({
        "base": fincat_to_value(&p.base),
        "at": Value::Object(at),
        "action": Value::Object(action),
    })
}

pub fn presheaf_from_value(v: &Value, path: &str) -> Result<Presheaf> {
    let base = fincat_from_value(field(v, path, "base")?, &format!("{path}.base"))?;
    let at_obj = as_object(field(v, path, "at")?, &format!("{path}.at"))?;
    let mut at = BTreeMap::new();
    for (k, val) in at_obj {
        let labels = as_array(val, &format!("{path}.at.{k}"))?
            .iter()
            .map(Label::from_value)
            .collect::<Result<Vec<_>>>()?;
        at.insert(
            Label::parse_key(k)?,
            FinSet::new(labels).map_err(|e| Error::schema(format!("{path}.at.{k}"), e.to_string()))?,
        );
    }
    let action_obj = as_object(field(v, path, "action")?, &format!("{path}.action"))?;
    let mut action = BTreeMap::new();
    for (k, val) in action_obj {
        let m = Label::parse_key(k)?;
        let x = base.src.apply(&m).clone();
        let y = base.tgt.apply(&m).clone();
        let dom = at
            .get(&y)
            .ok_or_else(|| Error::schema(format!("{path}.at"), format!("no set at {y}")))?;
        let cod = at
            .get(&x)
            .ok_or_else(|| Error::schema(format!("{path}.at"), format!("no set at {x}")))?;
        action.insert(
            m.clone(),
            bare_fn_from_value(val, dom, cod, &format!("{path}.action.{k}"))?,
        );
    }
    Presheaf::new(base, at, action).map_err(|e| Error::schema(path, e.to_string()))
}

pub fn pshmor_to_value(m: &PshMor) -> Value {
    let mut comps = Map::new();
    for (k, f) in &m.components {
        comps.insert(k.to_key(), table_to_value(f.map()));
    }
    json!({
        "dom": presheaf_to_value(&m.dom),
        "cod": presheaf_to_value(&m.cod),
        "components": Value::Object(comps),
    })
}

pub fn pshmor_from_value(v: &Value, path: &str) -> Result<PshMor> {
    let dom = presheaf_from_value(field(v, path, "dom")?, &format!("{path}.dom"))?;
    let cod = presheaf_from_value(field(v, path, "cod")?, &format!("{path}.cod"))?;
    let obj = as_object(field(v, path, "components")?, &format!("{path}.components"))?;
    let mut components = BTreeMap::new();
    for (k, val) in obj {
        let x = Label::parse_key(k)?;
        let d = dom
            .at
            .get(&x)
            .ok_or_else(|| Error::schema(format!("{path}.components.{k}"), "unknown object"))?;
        let c = cod
            .at
            .get(&x)
            .ok_or_else(|| Error::schema(format!("{path}.components.{k}"), "unknown object"))?;
        components.insert(x, bare_fn_from_value(val, d, c, &format!("{path}.components.{k}"))?);
    }
    PshMor::new(dom, cod, components).map_err(|e| Error::schema(path, e.to_string()))
}

// ------------------------------------------------------------------ poly

/// Either base flavor of polynomial.
#[derive(Debug, Clone)]
pub enum AnyPoly {
    FinSet(Poly),
    Presheaf(Box<PshPoly>),
}

pub fn poly_to_value(p: &Poly) -> Value {
    let positions: Vec<Value> = p
        .positions()
        .iter()
        .map(|pos| {
            json!({
                "id": pos.to_value(),
                "dirs": p.dirs(pos).iter().map(Label::to_value).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({ "base": "finset", "positions": positions })
}

pub fn psh_poly_to_value(p: &PshPoly) -> Value {
    json!({
        "base": { "presheaf": fincat_to_value(p.base()) },
        "positions": presheaf_to_value(&p.positions),
        "total": presheaf_to_value(&p.total),
        "proj": pshmor_to_value(&p.proj),
    })
}

pub fn any_poly_to_value(p: &AnyPoly) -> Value {
    match p {
        AnyPoly::FinSet(p) => poly_to_value(p),
        AnyPoly::Presheaf(p) => psh_poly_to_value(p),
    }
}

pub fn poly_from_value(v: &Value, path: &str) -> Result<Poly> {
    match any_poly_from_value(v, path)? {
        AnyPoly::FinSet(p) => Ok(p),
        AnyPoly::Presheaf(_) => Err(Error::schema(path, "expected a finset-base polynomial")),
    }
}

pub fn any_poly_from_value(v: &Value, path: &str) -> Result<AnyPoly> {
    let base = field(v, path, "base")?;
    if base == &json!("finset") {
        let rows = as_array(field(v, path, "positions")?, &format!("{path}.positions"))?;
        let mut entries = Vec::new();
        for (i, row) in rows.iter().enumerate() {
            let rp = format!("{path}.positions[{i}]");
            let id = Label::from_value(field(row, &rp, "id")?)?;
            let dirs = as_array(field(row, &rp, "dirs")?, &format!("{rp}.dirs"))?
                .iter()
                .map(Label::from_value)
                .collect::<Result<Vec<_>>>()?;
            entries.push((id, dirs));
        }
        return Ok(AnyPoly::FinSet(
            Poly::from_table(entries).map_err(|e| Error::schema(path, e.to_string()))?,
        ));
    }
    if base.get("presheaf").is_some() {
        let proj = pshmor_from_value(field(v, path, "proj")?, &format!("{path}.proj"))?;
        let p = PshPoly::new(proj).map_err(|e| Error::schema(path, e.to_string()))?;
        return Ok(AnyPoly::Presheaf(Box::new(p)));
    }
    Err(Error::schema(
        format!("{path}.base"),
        "expected \"finset\" or {{\"presheaf\": fincat}}",
    ))
}

// --------------------------------------------------------------- polymor

pub fn polymor_to_value(m: &PolyMor) -> Value {
    let mut sharp = Map::new();
    for (pos, f) in m.on_dir_map() {
        sharp.insert(pos.to_key(), table_to_value(f.map()));
    }
    json!({
        "dom": poly_to_value(m.dom()),
        "cod": poly_to_value(m.cod()),
        "phi1": table_to_value(m.on_pos().map()),
        "phiSharp": Value::Object(sharp),
    })
}

pub fn polymor_from_value(v: &Value, path: &str) -> Result<PolyMor> {
    let dom = poly_from_value(field(v, path, "dom")?, &format!("{path}.dom"))?;
    let cod = poly_from_value(field(v, path, "cod")?, &format!("{path}.cod"))?;
    let phi1 = bare_fn_from_value(
        field(v, path, "phi1")?,
        dom.positions(),
        cod.positions(),
        &format!("{path}.phi1"),
    )?;
    let sharp_obj = as_object(field(v, path, "phiSharp")?, &format!("{path}.phiSharp"))?;
    let mut on_dir = BTreeMap::new();
    for (k, val) in sharp_obj {
        let pos = Label::parse_key(k)?;
        if !dom.positions().contains(&pos) {
            return Err(Error::schema(
                format!("{path}.phiSharp.{k}"),
                "unknown position",
            ));
        }
        let target = phi1.apply(&pos).clone();
        on_dir.insert(
            pos.clone(),
            bare_fn_from_value(
                val,
                cod.dirs(&target),
                dom.dirs(&pos),
                &format!("{path}.phiSharp.{k}"),
            )?,
        );
    }
    PolyMor::new(dom, cod, phi1, on_dir).map_err(|e| Error::schema(path, e.to_string()))
}

// -------------------------------------------------------------- comonoid

pub fn comonoid_to_value(c: &Comonoid) -> Value {
    json!({
        "carrier": poly_to_value(&c.carrier),
        "counit": polymor_to_value(&c.counit),
        "comult": polymor_to_value(&c.comult),
    })
}

pub fn comonoid_from_value(v: &Value, path: &str, budget: Budget) -> Result<Comonoid> {
    let carrier = poly_from_value(field(v, path, "carrier")?, &format!("{path}.carrier"))?;
    let counit = polymor_from_value(field(v, path, "counit")?, &format!("{path}.counit"))?;
    let comult = polymor_from_value(field(v, path, "comult")?, &format!("{path}.comult"))?;
    Comonoid::new(carrier, counit, comult, budget).map_err(|e| Error::schema(path, e.to_string()))
}

/// A comonoid either inline or referenced by file path.
pub fn comonoid_ref_from_value(
    v: &Value,
    path: &str,
    dir: &Path,
    budget: Budget,
) -> Result<Comonoid> {
    if let Some(file) = v.get("file") {
        let rel = file
            .as_str()
            .ok_or_else(|| Error::schema(format!("{path}.file"), "expected a path string"))?;
        let resolved = dir.join(rel);
        let value = parse_file(&resolved)?;
        let c = comonoid_from_value(&value, &resolved.display().to_string(), budget)?;
        // Referenced comonoids are revalidated against the laws.
        let report = crate::comonoid::comonoid_check(&c, budget)?;
        if let Some(first) = report.first_failure() {
            return Err(Error::schema(resolved.display().to_string(), first));
        }
        return Ok(c);
    }
    comonoid_from_value(v, path, budget)
}

// ----------------------------------------------------- internal category

pub fn internal_cat_to_value(c: &InternalCategory) -> Value {
    let k: Vec<Value> = c
        .comp
        .iter()
        .map(|(pair, out)| {
            let (f, g) = pair.expect_pair();
            Value::Array(vec![f.to_value(), g.to_value(), out.to_value()])
        })
        .collect();
    json!({
        "objects": finset_to_value(&c.objects),
        "morphisms": finset_to_value(&c.morphisms),
        "src": table_to_value(c.src.map()),
        "tgt": table_to_value(c.tgt.map()),
        "id": table_to_value(c.ident.map()),
        "k": k,
    })
}

pub fn internal_cat_from_value(v: &Value, path: &str) -> Result<InternalCategory> {
    let objects = finset_from_value(field(v, path, "objects")?, &format!("{path}.objects"))?;
    let morphisms =
        finset_from_value(field(v, path, "morphisms")?, &format!("{path}.morphisms"))?;
    let src = bare_fn_from_value(
        field(v, path, "src")?,
        &morphisms,
        &objects,
        &format!("{path}.src"),
    )?;
    let tgt = bare_fn_from_value(
        field(v, path, "tgt")?,
        &morphisms,
        &objects,
        &format!("{path}.tgt"),
    )?;
    let ident = bare_fn_from_value(
        field(v, path, "id")?,
        &objects,
        &morphisms,
        &format!("{path}.id"),
    )?;
    let rows = as_array(field(v, path, "k")?, &format!("{path}.k"))?;
    let mut comp = BTreeMap::new();
    for (i, row) in rows.iter().enumerate() {
        let triple = as_array(row, &format!("{path}.k[{i}]"))?;
        if triple.len() != 3 {
            return Err(Error::schema(
                format!("{path}.k[{i}]"),
                "expected an [f, g, k] triple",
            ));
        }
        comp.insert(
            Label::pair(
                Label::from_value(&triple[0])?,
                Label::from_value(&triple[1])?,
            ),
            Label::from_value(&triple[2])?,
        );
    }
    Ok(InternalCategory {
        objects,
        morphisms,
        src,
        tgt,
        ident,
        comp,
    })
}

// ------------------------------------------------------------- typedpoly

pub fn typedpoly_to_value(t: &TypedPoly) -> Value {
    json!({
        "m": poly_to_value(&t.m),
        "src": finfn_to_value(&t.src_type),
        "tgt": finfn_to_value(&t.tgt_type),
    })
}

pub fn typedpoly_from_value(v: &Value, path: &str) -> Result<TypedPoly> {
    let m = poly_from_value(field(v, path, "m")?, &format!("{path}.m"))?;
    let src = finfn_from_value(field(v, path, "src")?, &format!("{path}.src"))?;
    let tgt = finfn_from_value(field(v, path, "tgt")?, &format!("{path}.tgt"))?;
    TypedPoly::new(m, src, tgt).map_err(|e| Error::schema(path, e.to_string()))
}

// ------------------------------------------------------------ bicomodule

pub fn bicomodule_to_value(b: &Bicomodule) -> Value {
    json!({
        "m": poly_to_value(&b.m),
        "left": polymor_to_value(&b.left),
        "right": polymor_to_value(&b.right),
        "c": comonoid_to_value(&b.c),
        "d": comonoid_to_value(&b.d),
    })
}

pub fn bicomodule_from_value(
    v: &Value,
    path: &str,
    dir: &Path,
    budget: Budget,
) -> Result<Bicomodule> {
    let m = poly_from_value(field(v, path, "m")?, &format!("{path}.m"))?;
    let left = polymor_from_value(field(v, path, "left")?, &format!("{path}.left"))?;
    let right = polymor_from_value(field(v, path, "right")?, &format!("{path}.right"))?;
    let c = comonoid_ref_from_value(field(v, path, "c")?, &format!("{path}.c"), dir, budget)?;
    let d = comonoid_ref_from_value(field(v, path, "d")?, &format!("{path}.d"), dir, budget)?;
    Bicomodule::new(c, d, m, left, right, budget).map_err(|e| Error::schema(path, e.to_string()))
}

// ------------------------------------------------------------- coalgebra

pub fn coalgebra_to_value(x: &Coalgebra) -> Value {
    // kappaSharp is presented as a function on the canonical pullback
    // S ×_C C_*, with elements (s, (x, f)).
    let total = x.comonoid.carrier.total();
    let mut dom_elems = Vec::new();
    let mut map = BTreeMap::new();
    for s in x.carrier.iter() {
        let xs = x.pos.apply(s);
        for f in x.comonoid.carrier.dirs(xs).iter() {
            let key = Label::pair(s.clone(), Label::pair(xs.clone(), f.clone()));
            dom_elems.push(key.clone());
            map.insert(key, x.step(s, f).clone());
        }
    }
    let _ = total;
    let dom = FinSet::new(dom_elems).expect("distinct");
    let sharp = FinFn::new(dom, x.carrier.clone(), map).expect("total");
    json!({
        "c": comonoid_to_value(&x.comonoid),
        "S": finset_to_value(&x.carrier),
        "kappa1": finfn_to_value(&x.pos),
        "kappaSharp": finfn_to_value(&sharp),
    })
}

pub fn coalgebra_from_value(
    v: &Value,
    path: &str,
    dir: &Path,
    budget: Budget,
) -> Result<Coalgebra> {
    let c = comonoid_ref_from_value(field(v, path, "c")?, &format!("{path}.c"), dir, budget)?;
    let carrier = finset_from_value(field(v, path, "S")?, &format!("{path}.S"))?;
    let pos = finfn_from_value(field(v, path, "kappa1")?, &format!("{path}.kappa1"))?;
    let sharp = finfn_from_value(field(v, path, "kappaSharp")?, &format!("{path}.kappaSharp"))?;
    let mut act = BTreeMap::new();
    for (key, out) in sharp.map() {
        let (s, xf) = key
            .as_pair()
            .ok_or_else(|| Error::schema(format!("{path}.kappaSharp"), "key is not a pair"))?;
        let (_, f) = xf.as_pair().ok_or_else(|| {
            Error::schema(
                format!("{path}.kappaSharp"),
                "key's second component is not a (position, direction) pair",
            )
        })?;
        act.insert(Label::pair(s.clone(), f.clone()), out.clone());
    }
    Coalgebra::new(c, carrier, pos, act).map_err(|e| Error::schema(path, e.to_string()))
}
