//! Text and JSON rendering of computation results.
//!
//! JSON conventions: polynomials are arrays of coefficient strings in
//! ascending order (`"num/den"` in lowest terms), rational functions are
//! canonical expression strings that the parser reads back, residue systems
//! are arrays of `{"k": order, "B": poly, "D": poly}` objects, lattices are
//! arrays of integer rows, and verdicts are `{"summable": bool,
//! "certificate": string?}`. Objects serialize with sorted keys, so output
//! is byte-deterministic.

use disres_core::galois::{IntLattice, MultRelationData};
use disres_core::residues::{ResidueSystem, SharedResidueSystem};
use disres_core::telescope::{OperatorTuple, SummabilityVerdict};
use disres_core::{Poly, RatFun};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

pub fn poly_json(p: &Poly) -> Value {
    Value::Array(p.coeffs().iter().map(|c| Value::String(c.to_string())).collect())
}

pub fn bigint_json(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(v) => json!(v),
        None => Value::String(n.to_string()),
    }
}

pub fn lattice_json(l: &IntLattice) -> Value {
    Value::Array(
        l.basis
            .iter()
            .map(|row| Value::Array(row.iter().map(bigint_json).collect()))
            .collect(),
    )
}

pub fn vector_text(row: &[String]) -> String {
    format!("({})", row.join(", "))
}

pub fn operator_tuple_json(t: &OperatorTuple) -> Value {
    Value::Array(
        t.ops
            .iter()
            .map(|op| {
                Value::Array(
                    op.coeffs()
                        .iter()
                        .map(|c| Value::String(c.to_string()))
                        .collect(),
                )
            })
            .collect(),
    )
}

pub fn operator_tuple_text(t: &OperatorTuple) -> String {
    let parts: Vec<String> = t.ops.iter().map(|op| op.to_string_op()).collect();
    format!("({})", parts.join(", "))
}

pub struct Rendered {
    pub text: String,
    pub json: Value,
}

pub fn render_hermite(components: &[RatFun], poly_part: &Poly, var: &str) -> Rendered {
    let mut json = json!({
        "components": components.iter().map(|f| f.to_string_var(var)).collect::<Vec<_>>(),
        "m": components.len(),
    });
    let mut text = String::new();
    if !poly_part.is_zero() {
        json["polynomial_part"] = poly_json(poly_part);
        text.push_str(&format!("polynomial part: {}\n", poly_part.to_string_var(var)));
    }
    text.push_str(&format!("m = {}\n", components.len()));
    for (k, f) in components.iter().enumerate() {
        text.push_str(&format!("f_{} = {}\n", k + 1, f.to_string_var(var)));
    }
    Rendered { text, json }
}

pub fn render_shiftset(shifts: &[i64]) -> Rendered {
    let inner: Vec<String> = shifts.iter().map(|s| s.to_string()).collect();
    Rendered {
        text: format!("{{{}}}\n", inner.join(", ")),
        json: json!({ "shifts": shifts }),
    }
}

pub fn render_reduce(reduced: &RatFun, certificate: &RatFun, var: &str) -> Rendered {
    Rendered {
        text: format!(
            "reduced = {}\ncertificate = {}\n",
            reduced.to_string_var(var),
            certificate.to_string_var(var)
        ),
        json: json!({
            "reduced": reduced.to_string_var(var),
            "certificate": certificate.to_string_var(var),
        }),
    }
}

pub fn render_dres(sys: &ResidueSystem, poly_part: &Poly, var: &str) -> Rendered {
    let pairs: Vec<Value> = sys
        .pairs
        .iter()
        .enumerate()
        .map(|(k, pair)| {
            json!({
                "k": k + 1,
                "B": poly_json(&pair.b),
                "D": poly_json(&pair.d),
            })
        })
        .collect();
    let mut json = json!({ "pairs": pairs });
    let mut text = String::new();
    if !poly_part.is_zero() {
        json["polynomial_part"] = poly_json(poly_part);
        text.push_str(&format!("polynomial part: {}\n", poly_part.to_string_var(var)));
    }
    for (k, pair) in sys.pairs.iter().enumerate() {
        text.push_str(&format!(
            "B_{} = {}\nD_{} = {}\n",
            k + 1,
            pair.b.to_string_var(var),
            k + 1,
            pair.d.to_string_var(var)
        ));
    }
    Rendered { text, json }
}

pub fn render_dresplus(sys: &SharedResidueSystem, poly_parts: &[Poly], var: &str) -> Rendered {
    let d: Vec<Value> = sys
        .d
        .iter()
        .map(|row| Value::Array(row.iter().map(poly_json).collect()))
        .collect();
    let mut json = json!({
        "B": poly_json(&sys.b),
        "D": d,
    });
    let mut text = format!("B = {}\n", sys.b.to_string_var(var));
    if poly_parts.iter().any(|p| !p.is_zero()) {
        json["polynomial_parts"] = Value::Array(poly_parts.iter().map(poly_json).collect());
        for (i, p) in poly_parts.iter().enumerate() {
            if !p.is_zero() {
                text.push_str(&format!(
                    "polynomial part of input {}: {}\n",
                    i + 1,
                    p.to_string_var(var)
                ));
            }
        }
    }
    for (i, row) in sys.d.iter().enumerate() {
        for (k, dk) in row.iter().enumerate() {
            text.push_str(&format!(
                "D_{},{} = {}\n",
                i + 1,
                k + 1,
                dk.to_string_var(var)
            ));
        }
    }
    Rendered { text, json }
}

pub fn render_summable(v: &SummabilityVerdict, poly_part: &Poly, var: &str) -> Rendered {
    let mut json = json!({ "summable": v.summable });
    let mut text = String::new();
    if !poly_part.is_zero() {
        json["polynomial_part"] = poly_json(poly_part);
        text.push_str(&format!("polynomial part: {}\n", poly_part.to_string_var(var)));
    }
    match &v.certificate {
        Some(cert) => {
            json["certificate"] = Value::String(cert.to_string_var(var));
            text.push_str(&format!("summable\ncertificate = {}\n", cert.to_string_var(var)));
        }
        None => text.push_str("not summable\n"),
    }
    Rendered { text, json }
}

pub fn render_vspace(basis: &[Vec<String>]) -> Rendered {
    let mut text = format!("dim V = {}\n", basis.len());
    for (i, row) in basis.iter().enumerate() {
        text.push_str(&format!("v_{} = {}\n", i + 1, vector_text(row)));
    }
    text.push_str(
        "additive difference Galois group: defined by the equations sum_i v_i*eta_i = 0 \
         for each basis vector v above\n",
    );
    Rendered {
        text,
        json: json!({ "basis": basis }),
    }
}

pub fn render_telescope(tuples: &[OperatorTuple], label: &str) -> Rendered {
    let mut text = format!("{} count = {} (D = d/dx)\n", label, tuples.len());
    for (i, t) in tuples.iter().enumerate() {
        text.push_str(&format!("L_{} = {}\n", i + 1, operator_tuple_text(t)));
    }
    Rendered {
        text,
        json: json!({ "generators": tuples.iter().map(operator_tuple_json).collect::<Vec<_>>() }),
    }
}

pub fn render_galois_diag(data: &MultRelationData, relations: &IntLattice, var: &str) -> Rendered {
    let witnesses: Vec<Value> = data
        .witnesses
        .iter()
        .map(|w| {
            json!({
                "p": w.p.to_string_var(var),
                "epsilon": w.epsilon.to_string(),
            })
        })
        .collect();
    let mut text = format!("lattice rank = {}\n", data.lattice.rank());
    for (e, w) in data.lattice.basis.iter().zip(&data.witnesses) {
        let row: Vec<String> = e.iter().map(|n| n.to_string()).collect();
        text.push_str(&format!(
            "e = {}  with p = {}, epsilon = {}\n",
            vector_text(&row),
            w.p.to_string_var(var),
            w.epsilon
        ));
    }
    text.push_str(&format!("epsilon relation lattice rank = {}\n", relations.rank()));
    for m in &relations.basis {
        let row: Vec<String> = m.iter().map(|n| n.to_string()).collect();
        text.push_str(&format!("m = {}\n", vector_text(&row)));
    }
    Rendered {
        text,
        json: json!({
            "lattice": lattice_json(&data.lattice),
            "witnesses": witnesses,
            "epsilon_relations": lattice_json(relations),
        }),
    }
}
