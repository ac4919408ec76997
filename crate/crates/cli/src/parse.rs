//! Input parsing: curves, points, representations, fiber files.

use anyhow::{bail, Context};
use num_bigint::BigInt;
use num_rational::BigRational;
use orthoeps::ellcurve::{RationalPoint, WeierstrassModel};
use orthoeps::exactmath::characters::MultCharacter;
use orthoeps::exactmath::field::FieldSpec;
use orthoeps::fibermodel::FiberDescription;
use orthoeps::groupsrep::VirtualRep;
use std::collections::BTreeMap;
use std::str::FromStr;

/// "[a1,a2,a3,a4,a6]" with integer entries.
pub fn curve(text: &str) -> anyhow::Result<WeierstrassModel> {
    let values: Vec<String> = serde_json::from_str(&normalize_list(text))
        .with_context(|| format!("curve must be [a1,a2,a3,a4,a6], got {text}"))?;
    if values.len() != 5 {
        bail!("curve needs exactly five coefficients, got {}", values.len());
    }
    let ints: Vec<BigInt> = values
        .iter()
        .map(|v| BigInt::from_str(v).with_context(|| format!("bad integer {v}")))
        .collect::<anyhow::Result<_>>()?;
    Ok(WeierstrassModel::from_bigints(
        ints[0].clone(),
        ints[1].clone(),
        ints[2].clone(),
        ints[3].clone(),
        ints[4].clone(),
    ))
}

/// Turn "[1,2,3]" into a JSON string list so big integers survive parsing.
fn normalize_list(text: &str) -> String {
    let inner = text.trim().trim_start_matches('[').trim_end_matches(']');
    let parts: Vec<String> = inner
        .split(',')
        .map(|p| format!("\"{}\"", p.trim()))
        .collect();
    format!("[{}]", parts.join(","))
}

/// "O", "[x,y]" or "(x,y)" with rational entries like "-3/4".
pub fn point(text: &str) -> anyhow::Result<RationalPoint> {
    let t = text.trim();
    if t == "O" || t == "o" || t == "inf" {
        return Ok(RationalPoint::Infinity);
    }
    let inner = t
        .trim_start_matches(['[', '('])
        .trim_end_matches([']', ')']);
    let parts: Vec<&str> = inner.split(',').map(|p| p.trim()).collect();
    if parts.len() != 2 {
        bail!("point must be O, [x,y] or (x,y), got {text}");
    }
    Ok(RationalPoint::affine(rational(parts[0])?, rational(parts[1])?))
}

fn rational(text: &str) -> anyhow::Result<BigRational> {
    match text.split_once('/') {
        Some((n, d)) => {
            let num = BigInt::from_str(n.trim()).with_context(|| format!("bad numerator {n}"))?;
            let den =
                BigInt::from_str(d.trim()).with_context(|| format!("bad denominator {d}"))?;
            if den == BigInt::from(0) {
                bail!("zero denominator in {text}");
            }
            Ok(BigRational::new(num, den))
        }
        None => Ok(BigRational::from(
            BigInt::from_str(text.trim()).with_context(|| format!("bad rational {text}"))?,
        )),
    }
}

/// Inline JSON or @file for a virtual representation.
pub fn rep(text: &str) -> anyhow::Result<VirtualRep> {
    let body = if let Some(path) = text.strip_prefix('@') {
        std::fs::read_to_string(path).with_context(|| format!("reading {path}"))?
    } else {
        text.to_string()
    };
    serde_json::from_str(&body).context("representation JSON")
}

/// "+1" or "-1".
pub fn sign(text: &str) -> anyhow::Result<i8> {
    match text.trim() {
        "+1" | "1" => Ok(1),
        "-1" => Ok(-1),
        other => bail!("sign must be +1 or -1, got {other}"),
    }
}

/// A JSON list of fiber descriptions, keyed by their primes.
pub fn fiber_overrides(
    path: &std::path::Path,
) -> anyhow::Result<BTreeMap<u64, FiberDescription>> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let list: Vec<FiberDescription> = serde_json::from_str(&text)
        .or_else(|_| {
            FiberDescription::from_json(&text)
                .map(|fd| vec![fd])
                .map_err(|e| anyhow::anyhow!("{e}"))
        })
        .context("fiber override file")?;
    let mut map = BTreeMap::new();
    for fd in list {
        if map.insert(fd.p, fd).is_some() {
            bail!("two fiber overrides for the same prime");
        }
    }
    Ok(map)
}

/// Character of F_p^*: "quadratic", "cubic", "trivial", "N" or "N:K".
pub fn character(p: u64, text: &str) -> anyhow::Result<MultCharacter> {
    let spec = FieldSpec::prime(p).map_err(anyhow::Error::new)?;
    let (order, exponent) = match text.trim() {
        "trivial" => (1, 0),
        "quadratic" => (2, 1),
        "cubic" => (3, 1),
        other => match other.split_once(':') {
            Some((n, k)) => (
                n.trim().parse::<u64>().context("character order")?,
                k.trim().parse::<u64>().context("character exponent")?,
            ),
            None => (other.parse::<u64>().context("character order")?, 1),
        },
    };
    MultCharacter::new(spec, order, exponent).map_err(anyhow::Error::new)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn curves_and_points() {
        let w = curve("[1,0,1,0,0]").unwrap();
        assert_eq!(w, WeierstrassModel::new([1, 0, 1, 0, 0]));
        assert!(curve("[1,0,1]").is_err());
        assert_eq!(point("O").unwrap(), RationalPoint::Infinity);
        assert_eq!(point("(0,0)").unwrap(), RationalPoint::from_ints(0, 0));
        assert_eq!(point("[0,-1]").unwrap(), RationalPoint::from_ints(0, -1));
        let half = point("[1/2,-3/4]").unwrap();
        match half {
            RationalPoint::Affine { x, y } => {
                assert_eq!(x, BigRational::new(BigInt::from(1), BigInt::from(2)));
                assert_eq!(y, BigRational::new(BigInt::from(-3), BigInt::from(4)));
            }
            _ => panic!(),
        }
    }

    #[test]
    fn reps_and_signs() {
        let v = rep(r#"{"group":[3],"terms":[{"exps":[1],"mult":1},{"exps":[2],"mult":1},{"exps":[0],"mult":-2}]}"#)
            .unwrap();
        assert_eq!(v.dimension(), 0);
        assert_eq!(sign("+1").unwrap(), 1);
        assert_eq!(sign("-1").unwrap(), -1);
        assert!(sign("2").is_err());
    }

    #[test]
    fn characters() {
        assert_eq!(character(13, "quadratic").unwrap().order(), 2);
        assert_eq!(character(13, "cubic").unwrap().order(), 3);
        assert_eq!(character(13, "6:5").unwrap().exponent(), 5);
        assert!(character(13, "5").is_err()); // 5 does not divide 12
    }
}
