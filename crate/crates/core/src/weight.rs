//! Exact rational edge weights.
//!
//! The lower-bound construction only ever uses the weights 1 and 1/epsilon
//! with integral 1/epsilon, so exact rationals make every girth comparison
//! exact with no floating-point tolerance.

use num::rational::Ratio;
use num::ToPrimitive;

use crate::error::{Error, Result};

/// Exact rational weight. `Ratio` keeps values reduced, so equality and
/// ordering are exact.
pub type Weight = Ratio<i64>;

/// Weight from an integer.
pub fn w_int(n: i64) -> Weight {
    Ratio::from_integer(n)
}

/// Weight from a numerator/denominator pair; fails on zero or negative values.
pub fn w_frac(num: i64, den: i64) -> Result<Weight> {
    if den == 0 {
        return Err(Error::Parameter("weight denominator is zero".into()));
    }
    let w = Ratio::new(num, den);
    if w <= Ratio::from_integer(0) {
        return Err(Error::NonPositiveWeight(format_weight(&w)));
    }
    Ok(w)
}

/// Renders a weight as `num` or `num/den`.
pub fn format_weight(w: &Weight) -> String {
    if *w.denom() == 1 {
        format!("{}", w.numer())
    } else {
        format!("{}/{}", w.numer(), w.denom())
    }
}

/// Parses "num" or "num/den" into a positive weight.
pub fn parse_weight(s: &str) -> Result<Weight> {
    let bad = |m: &str| Error::Parameter(format!("invalid weight {s:?}: {m}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let num: i64 = num.trim().parse().map_err(|_| bad("bad numerator"))?;
    let den: i64 = den.trim().parse().map_err(|_| bad("bad denominator"))?;
    w_frac(num, den)
}

/// Lossy conversion for report columns.
pub fn weight_to_f64(w: &Weight) -> f64 {
    w.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["1", "3/2", "7", "22/7"] {
            let w = parse_weight(s).unwrap();
            assert_eq!(format_weight(&w), s);
        }
    }

    #[test]
    fn rejects_nonpositive() {
        assert!(parse_weight("0").is_err());
        assert!(parse_weight("-3/2").is_err());
        assert!(w_frac(1, 0).is_err());
    }

    #[test]
    fn reduces_fractions() {
        assert_eq!(parse_weight("4/2").unwrap(), w_int(2));
    }
}
