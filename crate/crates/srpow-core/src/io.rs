//! Text and JSON input formats for complexes and monomial ideals.
//!
//! Complex text format: first non-comment line `n <int>`, then one facet
//! per line as space-separated vertex integers; `#` starts a comment. The
//! JSON equivalent is `{"n": int, "facets": [[int, ...], ...]}`.
//!
//! Ideal text format: one generator per line (or comma-separated) in the
//! `x1^2*x3` syntax, with an optional leading `vars <int>` line. The JSON
//! form is `{"n_vars": int, "gens": [[exp, ...], ...]}` with one exponent
//! vector per generator.

use serde::{Deserialize, Serialize};

use crate::complex::{Face, SimplicialComplex};
use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialIdeal};

#[derive(Serialize, Deserialize)]
struct ComplexJson {
    n: u32,
    facets: Vec<Vec<u32>>,
}

pub fn parse_complex(input: &str) -> Result<SimplicialComplex> {
    let trimmed = input.trim_start();
    if trimmed.starts_with('{') {
        let parsed: ComplexJson =
            serde_json::from_str(trimmed).map_err(|e| Error::Parse(e.to_string()))?;
        return SimplicialComplex::from_facet_lists(parsed.n, &parsed.facets);
    }
    let mut n: Option<u32> = None;
    let mut facets: Vec<Vec<u32>> = Vec::new();
    for raw_line in input.lines() {
        let line = raw_line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if n.is_none() {
            let mut parts = line.split_whitespace();
            match (parts.next(), parts.next(), parts.next()) {
                (Some("n"), Some(v), None) => {
                    n = Some(
                        v.parse::<u32>()
                            .map_err(|e| Error::Parse(format!("bad vertex count: {e}")))?,
                    );
                    continue;
                }
                _ => return Err(Error::Parse("first line must be `n <int>`".into())),
            }
        }
        let verts: std::result::Result<Vec<u32>, _> =
            line.split_whitespace().map(str::parse::<u32>).collect();
        facets.push(verts.map_err(|e| Error::Parse(format!("bad facet line `{line}`: {e}")))?);
    }
    let n = n.ok_or_else(|| Error::Parse("missing `n <int>` line".into()))?;
    SimplicialComplex::from_facet_lists(n, &facets)
}

pub fn complex_to_text(c: &SimplicialComplex) -> String {
    let mut out = format!("n {}\n", c.n());
    for f in c.facets() {
        let verts: Vec<String> = f.vertices().map(|v| v.to_string()).collect();
        out.push_str(&verts.join(" "));
        out.push('\n');
    }
    out
}

pub fn complex_to_json(c: &SimplicialComplex) -> String {
    let facets: Vec<Vec<u32>> = c.facets().iter().map(|f| f.vertices().collect()).collect();
    serde_json::to_string(&ComplexJson { n: c.n(), facets }).expect("serializable")
}

#[derive(Serialize, Deserialize)]
struct IdealJson {
    n_vars: u32,
    gens: Vec<Vec<u32>>,
}

fn parse_monomial_text(token: &str) -> Result<Monomial> {
    let token = token.trim();
    if token == "1" {
        return Ok(Monomial::one());
    }
    let mut exps: Vec<(u32, u32)> = Vec::new();
    for factor in token.split('*') {
        let factor = factor.trim();
        let rest = factor
            .strip_prefix('x')
            .ok_or_else(|| Error::Parse(format!("bad factor `{factor}`: expected x<i>[^e]")))?;
        let (var, exp) = match rest.split_once('^') {
            Some((v, e)) => (v, e.parse::<u32>().map_err(|e| Error::Parse(e.to_string()))?),
            None => (rest, 1),
        };
        let v: u32 = var
            .parse()
            .map_err(|e| Error::Parse(format!("bad variable `{factor}`: {e}")))?;
        if v == 0 {
            return Err(Error::Parse("variables are 1-based".into()));
        }
        exps.push((v - 1, exp));
    }
    Ok(Monomial::from_exps(exps))
}

pub fn parse_ideal(input: &str) -> Result<MonomialIdeal> {
    let trimmed = input.trim_start();
    if trimmed.starts_with('{') {
        let parsed: IdealJson =
            serde_json::from_str(trimmed).map_err(|e| Error::Parse(e.to_string()))?;
        let gens: Vec<Monomial> = parsed
            .gens
            .iter()
            .map(|v| Monomial::from_exps(v.iter().enumerate().map(|(i, e)| (i as u32, *e))))
            .collect();
        return Ok(MonomialIdeal::new(parsed.n_vars, gens));
    }
    let mut n_vars: Option<u32> = None;
    let mut gens: Vec<Monomial> = Vec::new();
    for raw_line in input.lines() {
        let line = raw_line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("vars ") {
            n_vars = Some(
                rest.trim()
                    .parse()
                    .map_err(|e| Error::Parse(format!("bad vars line: {e}")))?,
            );
            continue;
        }
        for token in line.split(',') {
            if !token.trim().is_empty() {
                gens.push(parse_monomial_text(token)?);
            }
        }
    }
    let max_var = gens
        .iter()
        .flat_map(|g| g.exps().iter().map(|&(v, _)| v + 1))
        .max()
        .unwrap_or(0);
    let n = n_vars.unwrap_or(max_var).max(max_var);
    Ok(MonomialIdeal::new(n, gens))
}

pub fn ideal_to_text(ideal: &MonomialIdeal) -> String {
    ideal.render(&|v| format!("x{}", v + 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip() {
        let input = "# path on four vertices\nn 4\n1 2\n2 3\n3 4 # last facet\n";
        let c = parse_complex(input).unwrap();
        assert_eq!(c.n(), 4);
        assert_eq!(c.facets().len(), 3);
        let again = parse_complex(&complex_to_text(&c)).unwrap();
        assert_eq!(c, again);
        let json = parse_complex(&complex_to_json(&c)).unwrap();
        assert_eq!(c, json);
    }

    #[test]
    fn parse_errors() {
        assert!(parse_complex("1 2\n").is_err());
        assert!(parse_complex("n 3\n1 5\n").is_err());
        assert!(parse_complex("{\"n\":3,\"facets\":[[1,2]]}").is_err()); // uncovered 3
    }

    #[test]
    fn ideal_parsing() {
        let i = parse_ideal("x1*x7, x2*x3*x6\nx4*x5\n").unwrap();
        assert_eq!(i.n_vars(), 7);
        assert_eq!(i.gens().len(), 3);
        let j = parse_ideal("vars 3\nx1^2*x3\n").unwrap();
        assert_eq!(j.n_vars(), 3);
        assert_eq!(ideal_to_text(&j), "(x1^2*x3)");
        let k = parse_ideal("{\"n_vars\":2,\"gens\":[[1,1],[2,0]]}").unwrap();
        assert_eq!(ideal_to_text(&k), "(x1^2, x1*x2)");
    }
}
