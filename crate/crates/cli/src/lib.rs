//! Command runners behind the `dslice` binary. Every runner returns a JSON
//! value; object keys come out sorted, so output is byte-for-byte stable.

use std::collections::HashMap;

use dslice::classifier::EmbedWitness;
use dslice::lattice::{detection_residues, ObstructionWitness};
use dslice::montesinos::{mutant_weak_ds, weak_ds_certificate};
use dslice::{
    classify_4strand_pretzel, component_count, double_branched_cover, embeds_in_ZHS1xS3,
    enumerate_factorizations, paired_normal_form, parse_expression, slice_verdict,
    torsion_image_test, weak_ds_orientation_filter, AbelianGroup, EmbedVerdict, Expr,
    Factorization, IntMatrix, LinkData, MatrixJson, MontesinosLink, PairedPlumbing, ParseError,
    PretzelVerdict, SeifertInvariants, StrongDs, WeakDs,
};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde_json::{json, Value};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error {0}")]
    Parse(#[from] ParseError),
    #[error("invalid input: {0}")]
    Input(String),
    #[error("{0}")]
    Precondition(#[from] dslice::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) | CliError::Input(_) => 1,
            CliError::Precondition(_) => 2,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            CliError::Parse(e) => json!({"error": {
                "kind": "parse", "position": e.pos, "message": e.message,
            }}),
            CliError::Input(m) => json!({"error": {"kind": "input", "message": m}}),
            CliError::Precondition(e) => json!({"error": {
                "kind": "precondition", "message": e.to_string(),
            }}),
        }
    }
}

pub type CliResult = Result<Value, CliError>;

/// Integers that fit in 64 bits become JSON numbers, the rest strings.
pub fn big(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(v) => json!(v),
        None => json!(n.to_string()),
    }
}

fn bigs(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(big).collect())
}

fn group_json(g: &AbelianGroup) -> Value {
    json!({"free_rank": g.free_rank, "torsion": bigs(&g.torsion), "text": g.to_string()})
}

fn embed_witness_json(w: &EmbedWitness) -> Value {
    match w {
        EmbedWitness::NonZeroEuler(e) => json!({"kind": "nonzero_euler", "euler": e.to_string()}),
        EmbedWitness::Unpaired(c) => json!({"kind": "unpaired", "coefficient": c.to_string()}),
        EmbedWitness::CommonFactor { first, second, gcd } => json!({
            "kind": "common_factor",
            "first": first.to_string(),
            "second": second.to_string(),
            "gcd": big(gcd),
        }),
    }
}

fn embed_json(v: &EmbedVerdict) -> Value {
    match v {
        EmbedVerdict::Yes { classes } => json!({
            "answer": "YES",
            "certificate": paired_normal_form(classes).to_string(),
        }),
        EmbedVerdict::No { witness } => json!({
            "answer": "NO",
            "witness": embed_witness_json(witness),
        }),
    }
}

fn weak_str(w: WeakDs) -> &'static str {
    match w {
        WeakDs::YesBoth => "YES-both",
        WeakDs::Unknown => "UNKNOWN",
    }
}

pub fn expect_seifert(text: &str) -> Result<SeifertInvariants, CliError> {
    match parse_expression(text)? {
        Expr::Seifert(y) => Ok(y),
        other => Err(CliError::Input(format!(
            "expected an S2(...) expression, got {other}"
        ))),
    }
}

pub fn expect_montesinos(text: &str) -> Result<MontesinosLink, CliError> {
    match parse_expression(text)? {
        Expr::Montesinos(m) => Ok(m),
        Expr::Pretzel(a) => Ok(MontesinosLink::pretzel(&a)),
        other => Err(CliError::Input(format!(
            "expected an M(...) expression, got {other}"
        ))),
    }
}

pub fn expect_pretzel(text: &str) -> Result<Vec<i64>, CliError> {
    match parse_expression(text)? {
        Expr::Pretzel(a) => Ok(a),
        other => Err(CliError::Input(format!(
            "expected a P(...) expression, got {other}"
        ))),
    }
}

/// Invariants of a Seifert space. Depends only on the homeomorphism type.
pub fn sfs(y: &SeifertInvariants) -> Value {
    let verdict = embeds_in_ZHS1xS3(y);
    json!({
        "canonical_form": y.canonical_form().to_string(),
        "euler": y.euler_number().to_string(),
        "b1": y.first_betti(),
        "homology": group_json(&y.homology()),
        "embeds_ZHS1xS3": embed_json(&verdict),
        "bounds_QHS1xB3": dslice::bounds_QHS1xB3(y),
    })
}

pub fn montesinos(m: &MontesinosLink) -> CliResult {
    let dbc = double_branched_cover(m)?;
    let verdict = slice_verdict(m);
    let strong = match &verdict.strong_ds {
        StrongDs::Yes => json!({"answer": "YES"}),
        StrongDs::No { witness } => json!({"answer": "NO", "witness": embed_witness_json(witness)}),
        StrongDs::Unknown => json!({"answer": "UNKNOWN"}),
    };
    Ok(json!({
        "link": m.to_string(),
        "components": verdict.components,
        "dbc": dbc.to_string(),
        "weak_ds": weak_str(weak_ds_certificate(m)),
        "mutant_weak_ds": weak_str(mutant_weak_ds(m)),
        "strong_ds": strong,
        "reasons": verdict.reasons,
    }))
}

pub fn pretzel(strands: &[i64]) -> CliResult {
    let link = MontesinosLink::pretzel(strands);
    let components = component_count(&link);
    let [a, b, c, d] = strands[..] else {
        return Err(CliError::Input(format!(
            "need 4 strands, got {}",
            strands.len()
        )));
    };
    let class = match classify_4strand_pretzel([a, b, c, d])? {
        PretzelVerdict::SliceWeakDsBoth => "slice+WDS-both",
        PretzelVerdict::NotSlice => "not-slice",
    };
    Ok(json!({
        "link": link.to_string(),
        "components": components,
        "classification": class,
    }))
}

fn factorization_json(f: &Factorization) -> Value {
    json!(f.transpose().to_rows())
}

fn obstruction_json(w: &ObstructionWitness, refuted_all: bool) -> Value {
    json!({
        "classes": [w.first_class, w.second_class],
        "gcd": big(&w.gcd),
        "x": bigs(&w.x),
        "wbar": bigs(&w.wbar),
        "modulus": big(&w.modulus),
        "residue": big(&w.residue),
        "fails_torsion_image_test": refuted_all,
    })
}

/// Factorizations of a plumbing Gram matrix plus the obstruction data of a
/// paired space.
pub fn lattice_search_space(y: &SeifertInvariants) -> CliResult {
    let pp = PairedPlumbing::new(y)?;
    let q = pp.gram_matrix()?;
    let v0 = pp.kernel_vector()?;
    let fs = pp.factorizations()?;
    let mut central = Vec::with_capacity(fs.len());
    for f in &fs {
        central.push(json!(pp.central_row_structure(f)?.classes));
    }
    let mut wbars = Vec::new();
    for (j, class) in pp.classes().iter().enumerate() {
        let w = pp.image_detection_vector(j)?;
        let vanishes = fs.iter().all(|f| {
            detection_residues(&w, f, &class.p)
                .iter()
                .all(num_traits::Zero::is_zero)
        });
        wbars.push(json!({
            "class": class.to_string(),
            "wbar": bigs(&w),
            "modulus": big(&class.p),
            "annihilates_all": vanishes,
        }));
    }
    let witness = match pp.coprimality_obstruction()? {
        Some(w) => {
            let refuted = fs
                .iter()
                .all(|a1| fs.iter().all(|a2| !torsion_image_test(a1, a2, &v0, &w.x)));
            obstruction_json(&w, refuted)
        }
        None => Value::Null,
    };
    Ok(json!({
        "space": pp.space().to_string(),
        "gram": MatrixJson::try_from(&q)?,
        "kernel_vector": bigs(&v0.entries),
        "rows": q.rows() - 1,
        "factorizations": fs.iter().map(factorization_json).collect::<Vec<_>>(),
        "central_row_structure": central,
        "detection_vectors": wbars,
        "witness": witness,
    }))
}

pub fn lattice_search_matrix(q: &IntMatrix, rows: Option<usize>) -> CliResult {
    let m = rows.unwrap_or(q.rows());
    let fs = enumerate_factorizations(q, m)?;
    Ok(json!({
        "gram": MatrixJson::try_from(q)?,
        "rows": m,
        "factorizations": fs.iter().map(factorization_json).collect::<Vec<_>>(),
    }))
}

pub fn parse_matrix(text: &str) -> Result<IntMatrix, CliError> {
    let m: MatrixJson = serde_json::from_str(text).map_err(|e| CliError::Input(e.to_string()))?;
    Ok(IntMatrix::try_from(m)?)
}

pub fn parse_link_data(text: &str) -> Result<LinkData, CliError> {
    let d: LinkData = serde_json::from_str(text).map_err(|e| CliError::Input(e.to_string()))?;
    d.validate()?;
    Ok(d)
}

pub fn partitions(data: &LinkData) -> CliResult {
    let passing = weak_ds_orientation_filter(data)?;
    Ok(json!({
        "necessary_conditions_only": true,
        "quasi_orientations": passing,
    }))
}

/// One unit of work from a batch line.
#[derive(Clone, Debug)]
enum Job {
    Expr(Expr),
    Partitions(LinkData),
    Matrix(IntMatrix),
}

impl Job {
    /// Homeomorphic Seifert spaces share a key, so they are computed once.
    fn cache_key(&self) -> String {
        match self {
            Job::Expr(Expr::Seifert(y)) => format!("sfs {}", y.canonical_form()),
            Job::Expr(e) => format!("expr {e}"),
            Job::Partitions(d) => format!(
                "partitions {}",
                serde_json::to_string(d).expect("plain data")
            ),
            Job::Matrix(q) => format!("matrix {:?}", q.entries()),
        }
    }

    fn run(&self) -> CliResult {
        match self {
            Job::Expr(Expr::Seifert(y)) => Ok(sfs(y)),
            Job::Expr(Expr::Montesinos(m)) => montesinos(m),
            Job::Expr(Expr::Pretzel(a)) => pretzel(a),
            Job::Partitions(d) => partitions(d),
            Job::Matrix(q) => lattice_search_matrix(q, None),
        }
    }
}

/// A line is a JSON string holding an expression, a JSON object
/// (`{"expr": ...}`, link data, or matrix data), or a bare expression.
fn parse_line(line: &str) -> Result<Job, CliError> {
    let trimmed = line.trim();
    match serde_json::from_str::<Value>(trimmed) {
        Ok(Value::String(s)) => Ok(Job::Expr(parse_expression(&s)?)),
        Ok(Value::Object(map)) => {
            if let Some(Value::String(s)) = map.get("expr") {
                Ok(Job::Expr(parse_expression(s)?))
            } else if map.contains_key("lk") {
                Ok(Job::Partitions(parse_link_data(trimmed)?))
            } else if map.contains_key("entries") {
                Ok(Job::Matrix(parse_matrix(trimmed)?))
            } else {
                Err(CliError::Input(
                    "object needs \"expr\", link data or matrix data".into(),
                ))
            }
        }
        _ => Ok(Job::Expr(parse_expression(trimmed)?)),
    }
}

fn wrap(line: &str, result: &CliResult) -> Value {
    match result {
        Ok(v) => json!({"input": line, "result": v}),
        Err(e) => {
            let mut obj = e.to_json();
            obj["input"] = json!(line);
            obj
        }
    }
}

/// One output object per input line, in input order. Failures become error
/// objects; they never stop the batch.
pub fn batch(lines: &[String]) -> Vec<Value> {
    let jobs: Vec<Result<Job, CliError>> = lines.par_iter().map(|l| parse_line(l)).collect();
    let mut unique: Vec<(&Job, String)> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    for job in jobs.iter().flatten() {
        let key = job.cache_key();
        if !index.contains_key(&key) {
            index.insert(key.clone(), unique.len());
            unique.push((job, key));
        }
    }
    let results: Vec<CliResult> = unique.par_iter().map(|(job, _)| job.run()).collect();
    lines
        .iter()
        .zip(&jobs)
        .map(|(line, job)| match job {
            Ok(job) => wrap(line, &results[index[&job.cache_key()]]),
            Err(e) => wrap(line, &Err(clone_error(e))),
        })
        .collect()
}

fn clone_error(e: &CliError) -> CliError {
    match e {
        CliError::Parse(p) => CliError::Parse(p.clone()),
        CliError::Input(m) => CliError::Input(m.clone()),
        CliError::Precondition(p) => CliError::Precondition(p.clone()),
    }
}

/// Indented `key: value` rendering for `--human`.
pub fn render_human(v: &Value) -> String {
    fn go(v: &Value, indent: usize, out: &mut String) {
        let pad = "  ".repeat(indent);
        match v {
            Value::Object(map) => {
                for (k, x) in map {
                    match x {
                        Value::Object(_) => {
                            out.push_str(&format!("{pad}{k}:\n"));
                            go(x, indent + 1, out);
                        }
                        Value::Array(items) if items.iter().any(|i| i.is_object()) => {
                            out.push_str(&format!("{pad}{k}:\n"));
                            for item in items {
                                out.push_str(&format!("{pad}  -\n"));
                                go(item, indent + 2, out);
                            }
                        }
                        _ => out.push_str(&format!("{pad}{k}: {}\n", scalar(x))),
                    }
                }
            }
            other => out.push_str(&format!("{pad}{}\n", scalar(other))),
        }
    }
    fn scalar(v: &Value) -> String {
        match v {
            Value::String(s) => s.clone(),
            other => other.to_string(),
        }
    }
    let mut out = String::new();
    go(v, 0, &mut out);
    out
}
