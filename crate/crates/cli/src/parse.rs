//! Value parsers for list arguments.

/// Parses a decimal or an exact `a/b` rational token.
pub fn number(token: &str) -> Result<f64, String> {
    let t = token.trim();
    if let Some((num, den)) = t.split_once('/') {
        let num: i64 = num
            .trim()
            .parse()
            .map_err(|_| format!("bad numerator in {t:?}"))?;
        let den: i64 = den
            .trim()
            .parse()
            .map_err(|_| format!("bad denominator in {t:?}"))?;
        if den == 0 {
            return Err(format!("zero denominator in {t:?}"));
        }
        // Both parts are exact below 2^53, so this is a single rounding.
        return Ok(num as f64 / den as f64);
    }
    let v: f64 = t.parse().map_err(|_| format!("not a number: {t:?}"))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("not a finite number: {t:?}"))
    }
}

/// Comma-separated numbers.
#[derive(Debug, Clone, PartialEq)]
pub struct List(pub Vec<f64>);

/// Comma-separated list of [`number`] tokens.
pub fn list(s: &str) -> Result<List, String> {
    if s.trim().is_empty() {
        return Err("empty list".into());
    }
    s.split(',').map(number).collect::<Result<_, _>>().map(List)
}
