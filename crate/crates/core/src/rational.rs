//! Exact rational helpers shared by the static analysis modules.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn to_f64(x: &Q) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Parses `p/q`, an integer, or a finite decimal such as `-0.25` exactly.
pub fn parse(s: &str) -> Option<Q> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(Q::new(n, d));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().all(|c| c.is_ascii_digit()) || !frac_part.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let num: BigInt = if digits.is_empty() { BigInt::zero() } else { digits.parse().ok()? };
    let den = num_traits::pow(BigInt::from(10), frac_part.len());
    let v = Q::new(num, den);
    Some(if neg { -v } else { v })
}

/// Canonical text form: integers as `n`, everything else as `p/q`.
pub fn format(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// `c₁x₁ + c₂x₂ − …` with signs folded into the operators; zero terms are skipped.
pub fn linear<'a>(terms: impl IntoIterator<Item = (&'a Q, String)>) -> String {
    let mut out = String::new();
    for (c, x) in terms.into_iter().filter(|(c, _)| !c.is_zero()) {
        let mag = format(&c.abs());
        let body = if x.is_empty() { mag } else if c.abs().is_one() { x } else { std::format!("{mag}*{x}") };
        match (out.is_empty(), c.is_negative()) {
            (true, false) => out.push_str(&body),
            (true, true) => out.push_str(&std::format!("-{body}")),
            (false, false) => out.push_str(&std::format!(" + {body}")),
            (false, true) => out.push_str(&std::format!(" - {body}")),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

pub fn sum<'a, I: IntoIterator<Item = &'a Q>>(it: I) -> Q {
    it.into_iter().fold(Q::zero(), |acc, x| acc + x)
}

pub fn is_distribution(v: &[Q]) -> bool {
    !v.is_empty() && v.iter().all(|x| !x.is_negative()) && sum(v).is_one()
}

pub fn max<'a, I: IntoIterator<Item = &'a Q>>(it: I) -> Option<Q> {
    it.into_iter().fold(None, |m: Option<Q>, x| match m {
        Some(m) if m >= *x => Some(m),
        _ => Some(x.clone()),
    })
}

pub fn min<'a, I: IntoIterator<Item = &'a Q>>(it: I) -> Option<Q> {
    it.into_iter().fold(None, |m: Option<Q>, x| match m {
        Some(m) if m <= *x => Some(m),
        _ => Some(x.clone()),
    })
}
