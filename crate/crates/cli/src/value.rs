//! Parsing of ℚ(β) elements from the command line.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use pisot_core::{lattice, AlgebraicNumber, Error, PisotPolynomial, Result};

/// Accepts: "xi0", "beta", an integer, "p/q", or a JSON object
/// {"num":[n0,...,n_{m-1}],"den":d}.
pub fn parse_value(field: &Arc<PisotPolynomial>, text: &str) -> Result<AlgebraicNumber> {
    let t = text.trim();
    match t {
        "xi0" => return Ok(lattice::xi0(field)),
        "beta" => return Ok(AlgebraicNumber::beta(field)),
        _ => {}
    }
    if t.starts_with('{') {
        return parse_json_value(field, t);
    }
    if let Some((num, den)) = t.split_once('/') {
        let n: BigInt = num
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad numerator '{num}'")))?;
        let d: BigInt = den
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad denominator '{den}'")))?;
        if d == BigInt::from(0) {
            return Err(Error::DivisionByZero);
        }
        return Ok(AlgebraicNumber::from_rational(field, BigRational::new(n, d)));
    }
    let n: BigInt = t.parse().map_err(|_| Error::Parse(format!("cannot parse value '{t}'")))?;
    Ok(AlgebraicNumber::from_integer(field, n))
}

fn parse_json_value(field: &Arc<PisotPolynomial>, t: &str) -> Result<AlgebraicNumber> {
    let v: serde_json::Value =
        serde_json::from_str(t).map_err(|e| Error::Parse(format!("bad JSON value: {e}")))?;
    let num = v
        .get("num")
        .and_then(|x| x.as_array())
        .ok_or_else(|| Error::Parse("JSON value needs a \"num\" array".into()))?;
    let mut nums = Vec::with_capacity(num.len());
    for item in num {
        let s = json_int_text(item).ok_or_else(|| Error::Parse("non-integer in \"num\"".into()))?;
        nums.push(s.parse::<BigInt>().map_err(|_| Error::Parse("bad integer in \"num\"".into()))?);
    }
    let den = match v.get("den") {
        None => BigInt::from(1),
        Some(d) => json_int_text(d)
            .ok_or_else(|| Error::Parse("non-integer \"den\"".into()))?
            .parse::<BigInt>()
            .map_err(|_| Error::Parse("bad \"den\"".into()))?,
    };
    AlgebraicNumber::from_num_den(field, &nums, &den)
}

fn json_int_text(v: &serde_json::Value) -> Option<String> {
    match v {
        serde_json::Value::Number(n) => Some(n.to_string()),
        serde_json::Value::String(s) => Some(s.clone()),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field() -> Arc<PisotPolynomial> {
        Arc::new(PisotPolynomial::parse("x^2-x-1").unwrap())
    }

    #[test]
    fn forms() {
        let f = field();
        assert!(parse_value(&f, "beta").unwrap() == AlgebraicNumber::beta(&f));
        assert!(parse_value(&f, "xi0").unwrap() == lattice::xi0(&f));
        assert!(parse_value(&f, "3").unwrap().as_rational().is_some());
        let half = parse_value(&f, "1/2").unwrap();
        assert_eq!(half.as_rational().unwrap().to_string(), "1/2");
        let j = parse_value(&f, r#"{"num":[-1,2],"den":5}"#).unwrap();
        assert!(j == lattice::xi0(&f));
        assert!(parse_value(&f, "x").is_err());
        assert!(parse_value(&f, "1/0").is_err());
    }
}
