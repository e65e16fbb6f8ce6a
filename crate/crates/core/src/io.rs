//! JSON documents for rationals, polynomials, rational functions, matrices,
//! assembled solutions and check reports. Rationals are always `"p/q"`
//! strings; polynomial terms keep the canonical graded-lexicographic order.

use serde_json::{json, Map, Value};

use crate::arith::{format_rational, parse_rational, MultiPoly, RFMatrix, RatFunc, Rational};
use crate::assembly::AssembledSolution;
use crate::error::{KzError, Result};
use crate::report::{Report, Status};

fn perr(location: &str, message: impl Into<String>) -> KzError {
    KzError::Parse { location: location.to_string(), message: message.into() }
}

pub fn rational_to_json(q: &Rational) -> Value {
    Value::String(format_rational(q))
}

pub fn rational_from_json(v: &Value, at: &str) -> Result<Rational> {
    let s = v.as_str().ok_or_else(|| perr(at, "expected a rational string"))?;
    parse_rational(s).ok_or_else(|| perr(at, format!("malformed rational {s:?}")))
}

pub fn poly_to_json(p: &MultiPoly) -> Value {
    Value::Array(
        p.terms()
            .iter()
            .map(|(e, c)| json!({ "exp": e.iter().map(|&x| x as u64).collect::<Vec<_>>(), "coef": format_rational(c) }))
            .collect(),
    )
}

pub fn poly_from_json(v: &Value, nvars: usize, at: &str) -> Result<MultiPoly> {
    let terms = v.as_array().ok_or_else(|| perr(at, "expected a term list"))?;
    let mut out = Vec::with_capacity(terms.len());
    for (i, t) in terms.iter().enumerate() {
        let here = format!("{at}[{i}]");
        let exp = t.get("exp").and_then(Value::as_array).ok_or_else(|| perr(&here, "missing exponent array"))?;
        if exp.len() != nvars {
            return Err(perr(&format!("{here}.exp"), format!("expected {nvars} exponents, found {}", exp.len())));
        }
        let mono = exp
            .iter()
            .map(|x| x.as_u64().filter(|&d| d <= u16::MAX as u64).map(|d| d as u16))
            .collect::<Option<_>>()
            .ok_or_else(|| perr(&format!("{here}.exp"), "exponents must be small non-negative integers"))?;
        let coef = rational_from_json(t.get("coef").unwrap_or(&Value::Null), &format!("{here}.coef"))?;
        out.push((mono, coef));
    }
    Ok(MultiPoly::from_terms(nvars, out))
}

pub fn ratfunc_to_json(f: &RatFunc) -> Value {
    json!({ "num": poly_to_json(&f.numer()), "den": poly_to_json(&f.denom()) })
}

pub fn ratfunc_from_json(v: &Value, nvars: usize, at: &str) -> Result<RatFunc> {
    let num = poly_from_json(v.get("num").ok_or_else(|| perr(at, "missing num"))?, nvars, &format!("{at}.num"))?;
    let den = poly_from_json(v.get("den").ok_or_else(|| perr(at, "missing den"))?, nvars, &format!("{at}.den"))?;
    RatFunc::normalize(&num, &den).map_err(|e| perr(at, e.to_string()))
}

pub fn matrix_to_json(m: &RFMatrix) -> Value {
    let rows: Vec<Value> =
        (0..m.rows()).map(|i| Value::Array((0..m.cols()).map(|j| ratfunc_to_json(m.get(i, j))).collect())).collect();
    json!({ "nvars": m.nvars(), "rows": rows })
}

pub fn matrix_from_json(v: &Value, at: &str) -> Result<RFMatrix> {
    let nvars = v.get("nvars").and_then(Value::as_u64).ok_or_else(|| perr(at, "missing nvars"))? as usize;
    let rows = v.get("rows").and_then(Value::as_array).ok_or_else(|| perr(at, "missing rows"))?;
    let ncols = rows.first().and_then(Value::as_array).map_or(0, Vec::len);
    let mut data = Vec::with_capacity(rows.len() * ncols);
    for (i, r) in rows.iter().enumerate() {
        let here = format!("{at}.rows[{i}]");
        let r = r.as_array().ok_or_else(|| perr(&here, "expected a row"))?;
        if r.len() != ncols {
            return Err(perr(&here, format!("expected {ncols} entries, found {}", r.len())));
        }
        for (j, e) in r.iter().enumerate() {
            data.push(ratfunc_from_json(e, nvars, &format!("{here}[{j}]"))?);
        }
    }
    Ok(RFMatrix::new(rows.len(), ncols, nvars, data))
}

pub fn solution_to_json(s: &AssembledSolution) -> Value {
    json!({
        "n": s.n,
        "rho": s.rho,
        "base": s.base.iter().map(rational_to_json).collect::<Vec<_>>(),
        "factors": s.factors.iter().map(matrix_to_json).collect::<Vec<_>>(),
        "product": matrix_to_json(&s.product),
    })
}

pub fn solution_from_json(v: &Value) -> Result<AssembledSolution> {
    let n = v.get("n").and_then(Value::as_u64).ok_or_else(|| perr("n", "missing or not an integer"))? as usize;
    let rho = v.get("rho").and_then(Value::as_i64).ok_or_else(|| perr("rho", "missing or not an integer"))?;
    let base = v
        .get("base")
        .and_then(Value::as_array)
        .ok_or_else(|| perr("base", "missing"))?
        .iter()
        .enumerate()
        .map(|(i, x)| rational_from_json(x, &format!("base[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    let factors = v
        .get("factors")
        .and_then(Value::as_array)
        .ok_or_else(|| perr("factors", "missing"))?
        .iter()
        .enumerate()
        .map(|(i, m)| matrix_from_json(m, &format!("factors[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    let product = matrix_from_json(v.get("product").ok_or_else(|| perr("product", "missing"))?, "product")?;
    if product.rows() != n || product.cols() != n {
        return Err(perr("product", format!("expected a {n} x {n} matrix")));
    }
    Ok(AssembledSolution { n, rho, base, factors, product })
}

/// Parses text, reporting JSON syntax errors by line and column.
pub fn parse_document(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| perr(&format!("line {}, column {}", e.line(), e.column()), e.to_string()))
}

pub fn write_document(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

pub fn report_to_json(command: &str, reports: &[Report]) -> Value {
    let sections: Vec<Value> = reports
        .iter()
        .map(|r| {
            let entries: Vec<Value> = r
                .entries
                .iter()
                .map(|e| {
                    let mut m = Map::new();
                    m.insert("name".into(), Value::String(e.name.clone()));
                    let status = match e.status {
                        Status::Pass => "pass",
                        Status::Fail => "fail",
                        Status::Skipped => "skipped",
                    };
                    m.insert("status".into(), Value::String(status.into()));
                    if let Some(w) = &e.witness {
                        m.insert("witness".into(), Value::String(w.clone()));
                    }
                    m.insert("seconds".into(), json!(e.elapsed.as_secs_f64()));
                    Value::Object(m)
                })
                .collect();
            json!({ "title": r.title, "entries": entries })
        })
        .collect();
    json!({ "command": command, "reports": sections })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};
    use crate::assembly::{assemble_product, BasePointConfig};

    #[test]
    fn rational_strings() {
        assert_eq!(rational_to_json(&rat(22, 7)), json!("22/7"));
        assert_eq!(rational_from_json(&json!("22/7"), "x").unwrap(), rat(22, 7));
        assert_eq!(rational_to_json(&int(-3)), json!("-3"));
        assert!(matches!(rational_from_json(&json!("1/0"), "x"), Err(KzError::Parse { .. })));
        assert!(rational_from_json(&json!(0.5), "x").is_err());
    }

    #[test]
    fn term_records() {
        let p = MultiPoly::from_terms(3, [(smallvec::smallvec![2, 0, 1], int(3))]);
        assert_eq!(poly_to_json(&p), json!([{ "exp": [2, 0, 1], "coef": "3" }]));
        assert_eq!(poly_from_json(&poly_to_json(&p), 3, "p").unwrap(), p);
        let err = poly_from_json(&json!([{ "exp": [1, 0], "coef": "3" }]), 3, "p").unwrap_err();
        assert!(err.to_string().contains("p[0].exp"));
    }

    #[test]
    fn solution_round_trip() {
        let sol = assemble_product(3, -1, &BasePointConfig::default_for(3)).unwrap();
        let doc = write_document(&solution_to_json(&sol));
        let back = solution_from_json(&parse_document(&doc).unwrap()).unwrap();
        assert_eq!(back.product, sol.product);
        assert_eq!(back.factors, sol.factors);
        assert_eq!(back.base, sol.base);
        assert_eq!(write_document(&solution_to_json(&back)), doc);
    }

    #[test]
    fn syntax_errors_have_locations() {
        let err = parse_document("{\n  \"n\": 3,\n  oops\n}").unwrap_err();
        assert!(err.to_string().contains("line 3"), "{err}");
        let err = solution_from_json(&json!({ "n": 3, "rho": -1, "base": ["0", "x", "2"] })).unwrap_err();
        assert!(err.to_string().contains("base[1]"), "{err}");
    }
}
