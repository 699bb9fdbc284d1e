//! Scalar literals for `--q`: sums of terms `[±][a[/b]][*]w[^k]`, e.g.
//! `-1`, `2/3`, `w^2`, `-w`, `1+w`, `3*w^-1`.

use gca_core::{Rational, Scalar, ScalarContext};

pub fn parse_scalar(text: &str, ctx: &ScalarContext) -> Result<Scalar, String> {
    let cleaned: String = text
        .chars()
        .filter(|c| !c.is_whitespace())
        .map(|c| if c == '−' { '-' } else { c })
        .collect();
    if cleaned.is_empty() {
        return Err("empty scalar literal".into());
    }
    let mut terms = Vec::new();
    let mut start = 0;
    let bytes = cleaned.as_bytes();
    for i in 1..bytes.len() {
        if (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'^' {
            terms.push(&cleaned[start..i]);
            start = i;
        }
    }
    terms.push(&cleaned[start..]);
    terms
        .into_iter()
        .map(|t| parse_term(t, ctx).map_err(|e| format!("`{text}`: {e}")))
        .try_fold(Scalar::zero(ctx), |acc, t| Ok(&acc + &t?))
}

fn parse_term(term: &str, ctx: &ScalarContext) -> Result<Scalar, String> {
    let (negative, body) = match term.as_bytes().first() {
        Some(b'-') => (true, &term[1..]),
        Some(b'+') => (false, &term[1..]),
        _ => (false, term),
    };
    let (coeff_text, root_text) = match body.find('w') {
        Some(pos) => (body[..pos].trim_end_matches('*'), Some(&body[pos + 1..])),
        None => (body, None),
    };
    let mut coeff = if coeff_text.is_empty() {
        if root_text.is_none() {
            return Err("missing value".into());
        }
        Rational::one()
    } else {
        parse_rational(coeff_text)?
    };
    if negative {
        coeff = -coeff;
    }
    let k = match root_text {
        None => 0,
        Some("") => 1,
        Some(rest) => rest
            .strip_prefix('^')
            .ok_or_else(|| format!("unexpected `{rest}` after w"))?
            .parse::<i64>()
            .map_err(|e| format!("root exponent: {e}"))?,
    };
    let zeros = vec![0; ctx.arity()];
    Scalar::root_monomial(ctx, &coeff, k, &zeros).map_err(|e| e.to_string())
}

fn parse_rational(text: &str) -> Result<Rational, String> {
    let (num, den) = text.split_once('/').unwrap_or((text, "1"));
    let p = num.parse::<i64>().map_err(|e| format!("numerator `{num}`: {e}"))?;
    let q = den.parse::<i64>().map_err(|e| format!("denominator `{den}`: {e}"))?;
    Rational::new(p, q).map_err(|e| e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn literals() {
        let c = ScalarContext::new(3, 0).unwrap();
        let w = Scalar::omega_pow(&c, 1);
        assert_eq!(parse_scalar("-1", &c).unwrap(), Scalar::from_integer(&c, -1));
        assert_eq!(
            parse_scalar("2/3", &c).unwrap(),
            Scalar::from_rational(&c, Rational::new(2, 3).unwrap())
        );
        assert_eq!(parse_scalar("w^2", &c).unwrap(), Scalar::omega_pow(&c, 2));
        assert_eq!(parse_scalar("-w", &c).unwrap(), w.neg());
        assert_eq!(parse_scalar("1 + w + w^2", &c).unwrap(), Scalar::zero(&c));
        assert_eq!(
            parse_scalar("3*w^-1", &c).unwrap(),
            Scalar::omega_pow(&c, 2).scale(&Rational::from_integer(3))
        );
        assert_eq!(parse_scalar("−1", &c).unwrap(), Scalar::from_integer(&c, -1));
        for bad in ["", "x", "1/0", "w2", "--"] {
            assert!(parse_scalar(bad, &c).is_err(), "{bad}");
        }
    }
}
