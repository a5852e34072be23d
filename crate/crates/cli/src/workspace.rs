//! The JSON workspace document: a lattice, a group, and named derived data
//! (element sets, L-subsets, L-points, flagged assertions, an optional
//! homomorphism). Parsing is a hand-rolled walk over `serde_json::Value` so
//! that every complaint carries a JSON-pointer-style path.

use crate::error::{CliError, Result};
use lgroup_core::group::{EltSet, FiniteGroup, GElt, GroupHom};
use lgroup_core::lattice::Lattice;
use lgroup_core::lsubset::{LPoint, LSubset};
use lgroup_core::verify::Instance;
use serde_json::{Map, Value};
use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

#[derive(Debug)]
pub struct Workspace {
    pub group: Arc<FiniteGroup>,
    pub lattice: Arc<Lattice>,
    pub sets: BTreeMap<String, EltSet>,
    pub lsubsets: BTreeMap<String, LSubset>,
    pub points: BTreeMap<String, LPoint>,
    pub flags: Flags,
    pub hom: Option<GroupHom>,
}

#[derive(Debug, Default)]
pub struct Flags {
    pub lsubgroup: Vec<String>,
    pub lsubgroup_of: Vec<(String, String)>,
    pub normal_in: Vec<(String, String)>,
}

/// Outcome of one flagged assertion, for `validate` output.
#[derive(Debug, serde::Serialize)]
pub struct FlagCheck {
    pub check: String,
    pub names: Vec<String>,
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

pub fn parse_workspace(text: &str) -> Result<Workspace> {
    let value: Value = serde_json::from_str(text)?;
    build(&value)
}

// ---------------------------------------------------------------------------
// Path plumbing

fn escape(segment: &str) -> String {
    segment.replace('~', "~0").replace('/', "~1")
}

fn join(path: &str, segment: &str) -> String {
    format!("{path}/{}", escape(segment))
}

fn as_object<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>> {
    v.as_object()
        .ok_or_else(|| CliError::schema(path, "expected an object"))
}

fn as_array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>> {
    v.as_array()
        .ok_or_else(|| CliError::schema(path, "expected an array"))
}

fn as_str<'a>(v: &'a Value, path: &str) -> Result<&'a str> {
    v.as_str()
        .ok_or_else(|| CliError::schema(path, "expected a string"))
}

fn as_usize(v: &Value, path: &str) -> Result<usize> {
    v.as_u64()
        .map(|n| n as usize)
        .ok_or_else(|| CliError::schema(path, "expected a non-negative integer"))
}

fn required<'a>(obj: &'a Map<String, Value>, path: &str, key: &str) -> Result<&'a Value> {
    obj.get(key)
        .ok_or_else(|| CliError::schema(path, format!("missing required field `{key}`")))
}

fn reject_unknown(obj: &Map<String, Value>, path: &str, allowed: &[&str]) -> Result<()> {
    for key in obj.keys() {
        if !allowed.contains(&key.as_str()) {
            return Err(CliError::schema(
                join(path, key),
                format!("unknown field (allowed: {})", allowed.join(", ")),
            ));
        }
    }
    Ok(())
}

fn str_list(v: &Value, path: &str) -> Result<Vec<String>> {
    let arr = as_array(v, path)?;
    arr.iter()
        .enumerate()
        .map(|(i, item)| Ok(as_str(item, &join(path, &i.to_string()))?.to_string()))
        .collect()
}

// ---------------------------------------------------------------------------
// Section builders

fn build(v: &Value) -> Result<Workspace> {
    let obj = as_object(v, "")?;
    reject_unknown(
        obj,
        "",
        &["lattice", "group", "sets", "lsubsets", "points", "flags", "hom"],
    )?;
    let lattice = Arc::new(build_lattice(required(obj, "", "lattice")?, "/lattice")?);
    let group = build_group(required(obj, "", "group")?, "/group")?;
    let sets = match obj.get("sets") {
        Some(v) => build_sets(v, "/sets", &group)?,
        None => BTreeMap::new(),
    };
    let lsubsets = match obj.get("lsubsets") {
        Some(v) => build_lsubsets(v, "/lsubsets", &group, &lattice, &sets)?,
        None => BTreeMap::new(),
    };
    let points = match obj.get("points") {
        Some(v) => build_points(v, "/points", &group, &lattice, &lsubsets)?,
        None => BTreeMap::new(),
    };
    let flags = match obj.get("flags") {
        Some(v) => build_flags(v, "/flags", &lsubsets)?,
        None => Flags::default(),
    };
    let hom = match obj.get("hom") {
        Some(v) => Some(build_hom(v, "/hom", &group)?),
        None => None,
    };
    Ok(Workspace {
        group,
        lattice,
        sets,
        lsubsets,
        points,
        flags,
        hom,
    })
}

fn build_lattice(v: &Value, path: &str) -> Result<Lattice> {
    let obj = as_object(v, path)?;
    let engine = |e: lgroup_core::error::Error| CliError::schema(path, e.to_string());
    if obj.contains_key("chain") {
        reject_unknown(obj, path, &["chain"])?;
        let labels = str_list(required(obj, path, "chain")?, &join(path, "chain"))?;
        return Lattice::chain(&labels).map_err(engine);
    }
    let labels = str_list(required(obj, path, "labels")?, &join(path, "labels"))?;
    match (obj.get("covers"), obj.get("leq")) {
        (Some(c), None) => {
            reject_unknown(obj, path, &["labels", "covers"])?;
            let cpath = join(path, "covers");
            let mut covers = Vec::new();
            for (i, pair) in as_array(c, &cpath)?.iter().enumerate() {
                let ppath = join(&cpath, &i.to_string());
                let pair = as_array(pair, &ppath)?;
                if pair.len() != 2 {
                    return Err(CliError::schema(ppath, "expected a [lower, upper] pair"));
                }
                covers.push((
                    as_str(&pair[0], &join(&ppath, "0"))?.to_string(),
                    as_str(&pair[1], &join(&ppath, "1"))?.to_string(),
                ));
            }
            Lattice::from_covers(&labels, &covers).map_err(engine)
        }
        (None, Some(l)) => {
            reject_unknown(obj, path, &["labels", "leq"])?;
            let lpath = join(path, "leq");
            let mut rows = Vec::new();
            for (i, row) in as_array(l, &lpath)?.iter().enumerate() {
                let rpath = join(&lpath, &i.to_string());
                let row = as_array(row, &rpath)?
                    .iter()
                    .enumerate()
                    .map(|(j, b)| {
                        b.as_bool().ok_or_else(|| {
                            CliError::schema(join(&rpath, &j.to_string()), "expected a boolean")
                        })
                    })
                    .collect::<Result<Vec<bool>>>()?;
                rows.push(row);
            }
            Lattice::from_leq(&labels, &rows).map_err(engine)
        }
        _ => Err(CliError::schema(
            path,
            "provide `chain`, or `labels` with exactly one of `covers` / `leq`",
        )),
    }
}

fn build_group(v: &Value, path: &str) -> Result<Arc<FiniteGroup>> {
    let obj = as_object(v, path)?;
    let kind = as_str(required(obj, path, "kind")?, &join(path, "kind"))?;
    let engine = |e: lgroup_core::error::Error| CliError::schema(path, e.to_string());
    let group = match kind {
        "symmetric" => {
            reject_unknown(obj, path, &["kind", "n"])?;
            let n = as_usize(required(obj, path, "n")?, &join(path, "n"))?;
            FiniteGroup::symmetric(n).map_err(engine)?
        }
        "dihedral" => {
            reject_unknown(obj, path, &["kind", "order"])?;
            let order = as_usize(required(obj, path, "order")?, &join(path, "order"))?;
            FiniteGroup::dihedral(order).map_err(engine)?
        }
        "cyclic" => {
            reject_unknown(obj, path, &["kind", "n"])?;
            let n = as_usize(required(obj, path, "n")?, &join(path, "n"))?;
            FiniteGroup::cyclic(n).map_err(engine)?
        }
        "permutation" => {
            reject_unknown(obj, path, &["kind", "degree", "generators"])?;
            let degree = as_usize(required(obj, path, "degree")?, &join(path, "degree"))?;
            let gens = str_list(
                required(obj, path, "generators")?,
                &join(path, "generators"),
            )?;
            let refs: Vec<&str> = gens.iter().map(String::as_str).collect();
            FiniteGroup::from_permutations(degree, &refs, None).map_err(engine)?
        }
        "table" => {
            reject_unknown(obj, path, &["kind", "labels", "mul"])?;
            let labels = str_list(required(obj, path, "labels")?, &join(path, "labels"))?;
            let mpath = join(path, "mul");
            let mut rows = Vec::new();
            for (i, row) in as_array(required(obj, path, "mul")?, &mpath)?.iter().enumerate() {
                rows.push(str_list(row, &join(&mpath, &i.to_string()))?);
            }
            FiniteGroup::from_table(&labels, &rows).map_err(engine)?
        }
        other => {
            return Err(CliError::schema(
                join(path, "kind"),
                format!(
                    "unknown group kind `{other}` (expected symmetric, dihedral, cyclic, permutation, table)"
                ),
            ))
        }
    };
    Ok(Arc::new(group))
}

fn build_sets(
    v: &Value,
    path: &str,
    group: &Arc<FiniteGroup>,
) -> Result<BTreeMap<String, EltSet>> {
    let obj = as_object(v, path)?;
    let mut done: BTreeMap<String, EltSet> = BTreeMap::new();
    let mut active: BTreeSet<String> = BTreeSet::new();
    for name in obj.keys() {
        resolve_set(name, obj, path, group, &mut done, &mut active)?;
    }
    Ok(done)
}

fn resolve_set(
    name: &str,
    raw: &Map<String, Value>,
    path: &str,
    group: &Arc<FiniteGroup>,
    done: &mut BTreeMap<String, EltSet>,
    active: &mut BTreeSet<String>,
) -> Result<EltSet> {
    if let Some(set) = done.get(name) {
        return Ok(set.clone());
    }
    if !active.insert(name.to_string()) {
        return Err(CliError::schema(
            join(path, name),
            format!("set definitions form a cycle through `{name}`"),
        ));
    }
    let spath = join(path, name);
    let spec = raw
        .get(name)
        .ok_or_else(|| CliError::schema(&spath, format!("no set named `{name}`")))?;
    let elements = |labels: &[String], lpath: &str| -> Result<Vec<GElt>> {
        labels
            .iter()
            .map(|l| {
                group
                    .resolve(l)
                    .map_err(|e| CliError::schema(lpath, e.to_string()))
            })
            .collect()
    };
    let set = match spec {
        Value::Array(_) => elements(&str_list(spec, &spath)?, &spath)?
            .into_iter()
            .collect::<EltSet>(),
        Value::Object(o) => {
            if o.len() != 1 {
                return Err(CliError::schema(
                    &spath,
                    "expected exactly one of `generated`, `union`, `difference`",
                ));
            }
            let (op, arg) = o.iter().next().expect("len checked");
            let apath = join(&spath, op);
            match op.as_str() {
                "generated" => {
                    let gens = elements(&str_list(arg, &apath)?, &apath)?;
                    group.subgroup_generated(gens)
                }
                "union" => {
                    let mut acc = EltSet::new();
                    for operand in str_list(arg, &apath)? {
                        let part = resolve_set(&operand, raw, path, group, done, active)?;
                        acc.extend(part);
                    }
                    acc
                }
                "difference" => {
                    let operands = str_list(arg, &apath)?;
                    if operands.len() != 2 {
                        return Err(CliError::schema(
                            &apath,
                            "expected exactly two set names [keep, remove]",
                        ));
                    }
                    let keep = resolve_set(&operands[0], raw, path, group, done, active)?;
                    let remove = resolve_set(&operands[1], raw, path, group, done, active)?;
                    keep.difference(&remove).copied().collect()
                }
                other => {
                    return Err(CliError::schema(
                        join(&spath, other),
                        "unknown set operation (expected generated, union, difference)",
                    ))
                }
            }
        }
        _ => {
            return Err(CliError::schema(
                &spath,
                "expected an array of element labels or a set-operation object",
            ))
        }
    };
    active.remove(name);
    done.insert(name.to_string(), set.clone());
    Ok(set)
}

fn build_lsubsets(
    v: &Value,
    path: &str,
    group: &Arc<FiniteGroup>,
    lattice: &Arc<Lattice>,
    sets: &BTreeMap<String, EltSet>,
) -> Result<BTreeMap<String, LSubset>> {
    let obj = as_object(v, path)?;
    let mut out = BTreeMap::new();
    for (name, spec) in obj {
        let spath = join(path, name);
        let spec = as_object(spec, &spath)?;
        reject_unknown(spec, &spath, &["default", "assign"])?;
        let default = match spec.get("default") {
            Some(d) => {
                let dpath = join(&spath, "default");
                lattice
                    .elt(as_str(d, &dpath)?)
                    .map_err(|e| CliError::schema(dpath, e.to_string()))?
            }
            None => lattice.bottom(),
        };
        let mut values = vec![default; group.order()];
        // Where each element got its value, for the duplicate diagnostic.
        let mut assigned_at: BTreeMap<GElt, String> = BTreeMap::new();
        if let Some(assign) = spec.get("assign") {
            let apath = join(&spath, "assign");
            for (value_label, members) in as_object(assign, &apath)? {
                let vpath = join(&apath, value_label);
                let value = lattice
                    .elt(value_label)
                    .map_err(|e| CliError::schema(&vpath, e.to_string()))?;
                for (i, entry) in as_array(members, &vpath)?.iter().enumerate() {
                    let epath = join(&vpath, &i.to_string());
                    let entry = as_str(entry, &epath)?;
                    let elts: Vec<GElt> = if let Some(set_name) = entry.strip_prefix('@') {
                        sets.get(set_name)
                            .ok_or_else(|| {
                                CliError::schema(&epath, format!("no set named `{set_name}`"))
                            })?
                            .iter()
                            .copied()
                            .collect()
                    } else {
                        vec![group
                            .resolve(entry)
                            .map_err(|e| CliError::schema(&epath, e.to_string()))?]
                    };
                    for x in elts {
                        if let Some(prior) = assigned_at.get(&x) {
                            return Err(CliError::schema(
                                &epath,
                                format!(
                                    "element `{}` is already assigned under `{prior}`",
                                    group.label(x)
                                ),
                            ));
                        }
                        assigned_at.insert(x, value_label.clone());
                        values[x.0] = value;
                    }
                }
            }
        }
        let subset = LSubset::new(group.clone(), lattice.clone(), values)
            .map_err(|e| CliError::schema(&spath, e.to_string()))?;
        out.insert(name.clone(), subset);
    }
    Ok(out)
}

fn build_points(
    v: &Value,
    path: &str,
    group: &Arc<FiniteGroup>,
    lattice: &Arc<Lattice>,
    lsubsets: &BTreeMap<String, LSubset>,
) -> Result<BTreeMap<String, LPoint>> {
    let obj = as_object(v, path)?;
    let mut out = BTreeMap::new();
    for (name, spec) in obj {
        let ppath = join(path, name);
        let spec = as_object(spec, &ppath)?;
        reject_unknown(spec, &ppath, &["value", "at", "member_of"])?;
        let vpath = join(&ppath, "value");
        let value = lattice
            .elt(as_str(required(spec, &ppath, "value")?, &vpath)?)
            .map_err(|e| CliError::schema(vpath, e.to_string()))?;
        let apath = join(&ppath, "at");
        let at = group
            .resolve(as_str(required(spec, &ppath, "at")?, &apath)?)
            .map_err(|e| CliError::schema(apath, e.to_string()))?;
        let point = LPoint::new(value, at);
        if let Some(member_of) = spec.get("member_of") {
            let mpath = join(&ppath, "member_of");
            let target_name = as_str(member_of, &mpath)?;
            let target = lsubsets.get(target_name).ok_or_else(|| {
                CliError::schema(&mpath, format!("no L-subset named `{target_name}`"))
            })?;
            if !target.has_point(&point) {
                return Err(CliError::schema(
                    &mpath,
                    format!(
                        "point {}@{} does not lie within `{target_name}`",
                        lattice.label(value),
                        group.label(at)
                    ),
                ));
            }
        }
        out.insert(name.clone(), point);
    }
    Ok(out)
}

fn build_flags(
    v: &Value,
    path: &str,
    lsubsets: &BTreeMap<String, LSubset>,
) -> Result<Flags> {
    let obj = as_object(v, path)?;
    reject_unknown(obj, path, &["lsubgroup", "lsubgroup_of", "normal_in"])?;
    let known = |name: &str, npath: &str| -> Result<String> {
        if lsubsets.contains_key(name) {
            Ok(name.to_string())
        } else {
            Err(CliError::schema(npath, format!("no L-subset named `{name}`")))
        }
    };
    let mut flags = Flags::default();
    if let Some(v) = obj.get("lsubgroup") {
        let fpath = join(path, "lsubgroup");
        for (i, name) in str_list(v, &fpath)?.iter().enumerate() {
            flags
                .lsubgroup
                .push(known(name, &join(&fpath, &i.to_string()))?);
        }
    }
    for (key, target) in [
        ("lsubgroup_of", &mut flags.lsubgroup_of),
        ("normal_in", &mut flags.normal_in),
    ] {
        if let Some(v) = obj.get(key) {
            let fpath = join(path, key);
            for (i, pair) in as_array(v, &fpath)?.iter().enumerate() {
                let ppath = join(&fpath, &i.to_string());
                let pair = str_list(pair, &ppath)?;
                if pair.len() != 2 {
                    return Err(CliError::schema(ppath, "expected a [subject, ambient] pair"));
                }
                target.push((
                    known(&pair[0], &join(&ppath, "0"))?,
                    known(&pair[1], &join(&ppath, "1"))?,
                ));
            }
        }
    }
    Ok(flags)
}

fn build_hom(v: &Value, path: &str, group: &Arc<FiniteGroup>) -> Result<GroupHom> {
    let obj = as_object(v, path)?;
    reject_unknown(obj, path, &["target", "map", "generator_images"])?;
    let target = build_group(required(obj, path, "target")?, &join(path, "target"))?;
    let pairs = |v: &Value, vpath: &str| -> Result<Vec<(GElt, GElt)>> {
        let map = as_object(v, vpath)?;
        map.iter()
            .map(|(from, to)| {
                let epath = join(vpath, from);
                let x = group
                    .resolve(from)
                    .map_err(|e| CliError::schema(&epath, e.to_string()))?;
                let y = target
                    .resolve(as_str(to, &epath)?)
                    .map_err(|e| CliError::schema(&epath, e.to_string()))?;
                Ok((x, y))
            })
            .collect()
    };
    match (obj.get("map"), obj.get("generator_images")) {
        (Some(m), None) => {
            let mpath = join(path, "map");
            let assignments = pairs(m, &mpath)?;
            GroupHom::from_map(group.clone(), target, &assignments)
                .map_err(|e| CliError::schema(mpath, e.to_string()))
        }
        (None, Some(g)) => {
            let gpath = join(path, "generator_images");
            let assignments = pairs(g, &gpath)?;
            GroupHom::from_generator_images(group.clone(), target, &assignments)
                .map_err(|e| CliError::schema(gpath, e.to_string()))
        }
        _ => Err(CliError::schema(
            path,
            "provide exactly one of `map` / `generator_images`",
        )),
    }
}

// ---------------------------------------------------------------------------
// Name resolution for command arguments

impl Workspace {
    /// An L-subset by name: a declared L-subset, a declared point, or a
    /// `VALUE@ELT` literal (the latter two as single-point L-subsets).
    pub fn subset(&self, name: &str) -> Result<LSubset> {
        if let Some(s) = self.lsubsets.get(name) {
            return Ok(s.clone());
        }
        if let Ok(p) = self.point(name) {
            return Ok(LSubset::from_point(
                self.group.clone(),
                self.lattice.clone(),
                p,
            ));
        }
        Err(CliError::Usage(format!(
            "no L-subset named `{name}` (and it is not a point name or VALUE@ELT literal)"
        )))
    }

    /// An L-point: a declared point by name, or a `VALUE@ELT` literal.
    pub fn point(&self, spec: &str) -> Result<LPoint> {
        if let Some(p) = self.points.get(spec) {
            return Ok(*p);
        }
        if let Some((value, at)) = spec.split_once('@') {
            let value = self
                .lattice
                .elt(value)
                .map_err(|e| CliError::Usage(e.to_string()))?;
            let at = self
                .group
                .resolve(at)
                .map_err(|e| CliError::Usage(e.to_string()))?;
            return Ok(LPoint::new(value, at));
        }
        Err(CliError::Usage(format!(
            "no point named `{spec}` (expected a name or VALUE@ELT)"
        )))
    }

    /// Run every flagged assertion. Engine-side precondition failures count
    /// as failed checks with the engine's message as detail.
    pub fn run_flag_checks(&self) -> Vec<FlagCheck> {
        let mut out = Vec::new();
        let get = |name: &str| self.lsubsets.get(name).expect("flag names were validated");
        for name in &self.flags.lsubgroup {
            out.push(FlagCheck {
                check: "lsubgroup".into(),
                names: vec![name.clone()],
                ok: get(name).is_l_subgroup(),
                detail: None,
            });
        }
        for (subject, ambient) in &self.flags.lsubgroup_of {
            let (ok, detail) = match get(subject).is_l_subgroup_of(get(ambient)) {
                Ok(b) => (b, None),
                Err(e) => (false, Some(e.to_string())),
            };
            out.push(FlagCheck {
                check: "lsubgroup_of".into(),
                names: vec![subject.clone(), ambient.clone()],
                ok,
                detail,
            });
        }
        for (subject, ambient) in &self.flags.normal_in {
            let (ok, detail) = match get(subject).is_normal_in(get(ambient)) {
                Ok(b) => (b, None),
                Err(e) => (false, Some(e.to_string())),
            };
            out.push(FlagCheck {
                check: "normal_in".into(),
                names: vec![subject.clone(), ambient.clone()],
                ok,
                detail,
            });
        }
        out
    }

    /// Package the workspace as a verification instance. Requires L-subsets
    /// named `mu` and `eta`; uses `nu` and the homomorphism when present.
    pub fn instance(&self, label: &str) -> Result<Instance> {
        let mu = self
            .lsubsets
            .get("mu")
            .ok_or_else(|| {
                CliError::Usage("verifying a workspace needs an L-subset named `mu`".into())
            })?
            .clone();
        let eta = self
            .lsubsets
            .get("eta")
            .ok_or_else(|| {
                CliError::Usage("verifying a workspace needs an L-subset named `eta`".into())
            })?
            .clone();
        let points: Vec<LPoint> = if self.points.is_empty() {
            vec![LPoint::new(mu.tip(), self.group.identity())]
        } else {
            self.points.values().copied().collect()
        };
        Ok(Instance {
            seed: 0,
            descriptor: format!("workspace {label}"),
            lattice: self.lattice.clone(),
            group: self.group.clone(),
            mu,
            eta,
            nu: self.lsubsets.get("nu").cloned(),
            points,
            hom: self.hom.clone(),
        })
    }
}
