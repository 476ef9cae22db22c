//! Distance factor functions: strictly decreasing positive weights on
//! distance, with `f(unreachable) = 0` in every variant.

use crate::rational::Rational;
use crate::topology::Distance;
use crate::validate::Violation;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DffError {
    #[error("distance factor function is undefined at distance 0")]
    ZeroDistance,
    #[error("distance {distance} is beyond the table of length {table_len}")]
    TableOutOfRange { distance: usize, table_len: usize },
}

/// The weighting `f` applied to the utility between two agents at a given
/// topology distance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DistanceFactorFunction {
    /// Explicit values `f(1), f(2), ..., f(len)`; evaluation beyond the table
    /// is a hard error rather than extrapolation.
    Table(Vec<Rational>),
    /// `f(d) = 1/d`.
    Reciprocal,
    /// `f(d) = base^d` for a base strictly between 0 and 1.
    Exponential(Rational),
    /// Explicit values `f(1), ..., f(cutoff)` with `f(d) = 0` for `d > cutoff`.
    BoundedTable { values: Vec<Rational>, cutoff: usize },
}

impl DistanceFactorFunction {
    /// Evaluates the function; unreachable maps to exactly 0.
    pub fn eval(&self, d: Distance) -> Result<Rational, DffError> {
        let d = match d {
            Distance::Unreachable => return Ok(Rational::zero()),
            Distance::Finite(0) => return Err(DffError::ZeroDistance),
            Distance::Finite(d) => d,
        };
        match self {
            DistanceFactorFunction::Table(values) => values
                .get(d - 1)
                .cloned()
                .ok_or(DffError::TableOutOfRange { distance: d, table_len: values.len() }),
            DistanceFactorFunction::Reciprocal => {
                Ok(Rational::ratio(1, i64::try_from(d).expect("distance fits i64")))
            }
            DistanceFactorFunction::Exponential(base) => {
                Ok(base.pow(u32::try_from(d).expect("distance fits u32")))
            }
            DistanceFactorFunction::BoundedTable { values, cutoff } => {
                if d > *cutoff {
                    Ok(Rational::zero())
                } else {
                    values
                        .get(d - 1)
                        .cloned()
                        .ok_or(DffError::TableOutOfRange { distance: d, table_len: values.len() })
                }
            }
        }
    }

    /// Violations of the variant's own invariants (strict decrease, strict
    /// positivity, base range, table/cutoff consistency).
    pub fn violations(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        match self {
            DistanceFactorFunction::Table(values) => {
                check_table(values, "/dff/values", &mut out);
            }
            DistanceFactorFunction::Reciprocal => {}
            DistanceFactorFunction::Exponential(base) => {
                if !(base.is_positive() && base < &Rational::one()) {
                    out.push(Violation::new(
                        "/dff/base",
                        format!("exponential base must satisfy 0 < base < 1, got {base}"),
                    ));
                }
            }
            DistanceFactorFunction::BoundedTable { values, cutoff } => {
                check_table(values, "/dff/values", &mut out);
                if values.len() != *cutoff {
                    out.push(Violation::new(
                        "/dff/cutoff",
                        format!(
                            "bounded table must list exactly one value per distance up to the \
                             cutoff: cutoff is {cutoff} but {} values are given",
                            values.len()
                        ),
                    ));
                }
            }
        }
        out
    }
}

fn check_table(values: &[Rational], location: &str, out: &mut Vec<Violation>) {
    for (i, v) in values.iter().enumerate() {
        if !v.is_positive() {
            out.push(Violation::new(
                format!("{location}/{i}"),
                format!("table values must be strictly positive, got {v}"),
            ));
        }
    }
    for i in 1..values.len() {
        if values[i] >= values[i - 1] {
            out.push(Violation::new(
                format!("{location}/{i}"),
                "not strictly decreasing".to_string(),
            ));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn reciprocal_at_two() {
        let f = DistanceFactorFunction::Reciprocal;
        assert_eq!(f.eval(Distance::Finite(2)).unwrap(), rat("1/2"));
    }

    #[test]
    fn unreachable_is_zero_for_every_variant() {
        let variants = [
            DistanceFactorFunction::Table(vec![rat("1")]),
            DistanceFactorFunction::Reciprocal,
            DistanceFactorFunction::Exponential(rat("1/2")),
            DistanceFactorFunction::BoundedTable { values: vec![rat("1")], cutoff: 1 },
        ];
        for f in variants {
            assert_eq!(f.eval(Distance::Unreachable).unwrap(), Rational::zero());
        }
    }

    #[test]
    fn bounded_table_beyond_cutoff_is_zero() {
        let f = DistanceFactorFunction::BoundedTable {
            values: vec![rat("1"), rat("1/2")],
            cutoff: 2,
        };
        assert_eq!(f.eval(Distance::Finite(3)).unwrap(), Rational::zero());
        assert_eq!(f.eval(Distance::Finite(2)).unwrap(), rat("1/2"));
        assert!(f.violations().is_empty());
    }

    #[test]
    fn table_out_of_range_is_an_error() {
        let f = DistanceFactorFunction::Table(vec![rat("1"), rat("1/2")]);
        assert_eq!(
            f.eval(Distance::Finite(3)).unwrap_err(),
            DffError::TableOutOfRange { distance: 3, table_len: 2 }
        );
    }

    #[test]
    fn exponential_eval() {
        let f = DistanceFactorFunction::Exponential(rat("1/3"));
        assert_eq!(f.eval(Distance::Finite(2)).unwrap(), rat("1/9"));
        assert!(f.violations().is_empty());
        assert!(!DistanceFactorFunction::Exponential(rat("1")).violations().is_empty());
        assert!(!DistanceFactorFunction::Exponential(rat("-1/2")).violations().is_empty());
    }

    #[test]
    fn non_decreasing_table_is_flagged() {
        let f = DistanceFactorFunction::Table(vec![rat("1"), rat("1")]);
        let violations = f.violations();
        assert!(violations.iter().any(|v| v.message.contains("not strictly decreasing")));
    }
}
