use std::collections::BTreeSet;
use std::fmt::Write as _;

use macloops_core::generators::generator_cycle_table;
use macloops_core::linalg::Rational;
use macloops_core::presets::reference_cohomology;
use macloops_core::relations::{hexagon_printed_assignment, hexagon_vanishing_assignment};
use macloops_core::{
    hochster_cohomology, solve_coefficients, zk_homology, CohomologyClass, KoszulAlgebra, LoopAlgebra, RelationTemplate,
    SimplicialComplex, TensorElement,
};
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::input::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Coefficients {
    Integer,
    Rational,
}

/// Output of one command in both formats. `violation` is set when the
/// computation finished but an internal cross-check disagreed.
pub struct Report {
    pub json: Value,
    pub text: String,
    pub violation: Option<String>,
}

fn coeff(x: &Rational, mode: Coefficients) -> Result<Value, CliError> {
    match mode {
        Coefficients::Rational => Ok(Value::String(x.to_string())),
        Coefficients::Integer => {
            let n = x
                .is_integer()
                .then(|| x.to_integer().to_i64())
                .flatten()
                .ok_or_else(|| CliError::Input(format!("value {} is not an integer; use --coefficients rational", x)))?;
            Ok(json!(n))
        }
    }
}

fn coeff_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn keep(degrees: &[usize], d: usize) -> bool {
    degrees.is_empty() || degrees.contains(&d)
}

pub fn betti(complex: &SimplicialComplex, degrees: &[usize]) -> Result<Report, CliError> {
    let hochster = hochster_cohomology(complex);
    let cellular = zk_homology(complex);
    let agree = hochster == cellular.ranks && cellular.torsion.values().all(Vec::is_empty);
    let all: BTreeSet<i64> = hochster.iter().chain(cellular.ranks.iter()).map(|(d, _)| d).collect();
    let rows: Vec<(i64, usize, usize)> = all
        .into_iter()
        .filter(|&d| keep(degrees, d as usize))
        .map(|d| (d, hochster.get(d), cellular.ranks.get(d)))
        .collect();
    let torsion: Vec<Value> = cellular
        .torsion
        .iter()
        .filter(|(_, t)| !t.is_empty())
        .map(|(d, t)| json!({"degree": d, "coefficients": t.iter().map(|x| x.to_string()).collect::<Vec<_>>()}))
        .collect();
    let json = json!({
        "m": complex.m(),
        "degrees": rows.iter().map(|(d, h, c)| json!({"degree": d, "hochster": h, "cellular": c})).collect::<Vec<_>>(),
        "torsion": torsion,
        "agree": agree,
    });
    let mut text = String::from("degree  hochster  cellular\n");
    for (d, h, c) in &rows {
        writeln!(text, "{:>6}  {:>8}  {:>8}", d, h, c).unwrap();
    }
    writeln!(text, "agree: {}", agree).unwrap();
    let violation = (!agree).then(|| format!("Hochster ranks {} differ from cellular ranks {}", hochster, cellular.ranks));
    Ok(Report { json, text, violation })
}

fn class_json(c: &CohomologyClass) -> Value {
    json!({"degree": c.degree, "representative": c.representative.to_string(), "terms": c.representative.to_records()})
}

pub fn cohomology_ring(complex: &SimplicialComplex, p: usize, q: usize, mode: Coefficients) -> Result<Report, CliError> {
    let alg = KoszulAlgebra::new(complex);
    let preset = reference_cohomology(complex).and_then(|r| {
        let pairing = r.pairing(p, q)?;
        Some((pairing.left, pairing.right, r.top))
    });
    let (left, right, top) = match preset {
        Some(t) => t,
        None => {
            let t = alg.product_pairing_table(p, q)?;
            (t.left, t.right, t.top)
        }
    };
    let entries = alg.pairing_matrix(&left, &right, &top)?;
    let matrix: Vec<Vec<Value>> =
        entries.iter().map(|row| row.iter().map(|x| coeff(x, mode)).collect()).collect::<Result<_, _>>()?;
    let json = json!({
        "p": p,
        "q": q,
        "top": class_json(&top),
        "left": left.iter().map(class_json).collect::<Vec<_>>(),
        "right": right.iter().map(class_json).collect::<Vec<_>>(),
        "pairing": matrix,
    });
    let mut text = format!("top: {}\n", top);
    for (name, classes, d) in [("a", &left, p), ("b", &right, q)] {
        writeln!(text, "H^{}:", d).unwrap();
        for (n, c) in classes.iter().enumerate() {
            writeln!(text, "  {}{} = {}", name, n + 1, c).unwrap();
        }
    }
    writeln!(text, "pairing:").unwrap();
    let width = matrix.iter().flatten().map(|v| coeff_text(v).len()).max().unwrap_or(1).max(3);
    let header: String = (1..=right.len()).map(|b| format!(" {:>w$}", format!("b{}", b), w = width)).collect();
    writeln!(text, "     {}", header).unwrap();
    for (a, row) in matrix.iter().enumerate() {
        let cells: String = row.iter().map(|v| format!(" {:>w$}", coeff_text(v), w = width)).collect();
        writeln!(text, "  {:<3}{}", format!("a{}", a + 1), cells).unwrap();
    }
    Ok(Report { json, text, violation: None })
}

pub fn generators(complex: &SimplicialComplex, degrees: &[usize], mode: Coefficients) -> Result<Report, CliError> {
    let rows = generator_cycle_table(complex)?;
    let rows: Vec<_> = rows.into_iter().filter(|r| keep(degrees, r.descriptor.degree())).collect();
    let mut records = Vec::with_capacity(rows.len());
    let mut text = String::new();
    for r in &rows {
        let coords: Vec<Value> = r.coords.iter().map(|x| coeff(x, mode)).collect::<Result<_, _>>()?;
        let coords_text: Vec<String> = coords.iter().map(coeff_text).collect();
        writeln!(
            text,
            "{:<16} degree {}  cycle {}  coords ({})  chain {}",
            r.expr.to_string(),
            r.descriptor.degree(),
            r.is_cycle,
            coords_text.join(", "),
            r.chain
        )
        .unwrap();
        records.push(json!({
            "commutator": r.expr.to_string(),
            "degree": r.descriptor.degree(),
            "chain": r.chain.to_records(),
            "is_cycle": r.is_cycle,
            "coords": coords,
        }));
    }
    writeln!(text, "{} generators", rows.len()).unwrap();
    let bad: Vec<String> = rows.iter().filter(|r| !r.is_cycle).map(|r| r.expr.to_string()).collect();
    let violation = (!bad.is_empty()).then(|| format!("Hurewicz images are not cycles: {}", bad.join(", ")));
    Ok(Report { json: json!({"count": rows.len(), "generators": records}), text, violation })
}

fn element_json(e: &TensorElement) -> Vec<Value> {
    e.terms().map(|(w, n)| json!({"word": w.letters(), "coeff": n})).collect()
}

pub fn verify_relation(complex: &SimplicialComplex, template: &RelationTemplate) -> Result<Report, CliError> {
    let alg = LoopAlgebra::new(complex)?;
    let missing: Vec<String> = template.unknown_ids().into_iter().filter(|id| !template.values.contains_key(id)).collect();
    if !missing.is_empty() {
        return Err(CliError::Input(format!("no values given for {}", missing.join(", "))));
    }
    let element = template.expand(&alg)?;
    let zero = element.is_zero();
    let json = json!({"zero": zero, "surviving": element.len(), "residue": element_json(&element)});
    let text = if zero {
        "zero\n".to_string()
    } else {
        format!("nonzero: {} surviving monomials\n{}\n", element.len(), element)
    };
    Ok(Report { json, text, violation: None })
}

pub fn solve(complex: &SimplicialComplex, template: &RelationTemplate, mode: Coefficients) -> Result<Report, CliError> {
    let alg = LoopAlgebra::new(complex)?;
    let Some(sol) = solve_coefficients(template, &alg)? else {
        return Ok(Report { json: json!({"consistent": false}), text: "no solution\n".to_string(), violation: None });
    };
    let particular: Vec<Value> = sol.particular.iter().map(|x| coeff(x, mode)).collect::<Result<_, _>>()?;
    let directions: Vec<Vec<Value>> = sol
        .homogeneous
        .iter()
        .map(|h| h.iter().map(|x| coeff(x, mode)).collect())
        .collect::<Result<_, _>>()?;
    let mut checks = Vec::new();
    if !template.values.is_empty() {
        checks.push(template.values.clone());
    }
    if template.values == hexagon_vanishing_assignment() {
        checks.push(hexagon_printed_assignment());
    }
    let membership: Vec<(Vec<i64>, bool)> = checks
        .iter()
        .map(|v| (sol.ids.iter().map(|id| v.get(id).copied().unwrap_or(0)).collect(), sol.contains_integers(v)))
        .collect();
    let json = json!({
        "consistent": true,
        "unknowns": sol.ids,
        "particular": particular,
        "directions": directions,
        "dimension": sol.dimension(),
        "assignments": membership.iter().map(|(v, c)| json!({"values": v, "contained": c})).collect::<Vec<_>>(),
    });
    let mut text = String::new();
    for (id, v) in sol.ids.iter().zip(&particular) {
        writeln!(text, "{} = {}", id, coeff_text(v)).unwrap();
    }
    writeln!(text, "dimension: {}", sol.dimension()).unwrap();
    for (n, d) in directions.iter().enumerate() {
        let parts: Vec<String> = d.iter().map(coeff_text).collect();
        writeln!(text, "direction {}: ({})", n + 1, parts.join(", ")).unwrap();
    }
    for (values, contained) in &membership {
        let parts: Vec<String> = values.iter().map(i64::to_string).collect();
        writeln!(text, "assignment ({}) contained: {}", parts.join(", "), contained).unwrap();
    }
    Ok(Report { json, text, violation: None })
}
