//! Textual form of symbols. `parse_symbol(&p.to_string(), n)` reproduces
//! `p` exactly; the property suite pins this round trip.

use std::fmt;

use num_traits::{One, Signed, Zero};

use super::{MultiIndex, PolynomialSymbol};
use crate::numeric::{format_rat, GaussRat, Rat};

fn monomial_string(alpha: &MultiIndex) -> String {
    let mut parts = Vec::new();
    for (j, &e) in alpha.components().iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(format!("x{}", j + 1)),
            _ => parts.push(format!("x{}^{}", j + 1, e)),
        }
    }
    parts.join("*")
}

fn imaginary_magnitude(im: &Rat) -> String {
    let mag = im.abs();
    if mag.is_one() {
        "i".to_string()
    } else {
        format!("{}*i", format_rat(&mag))
    }
}

/// (sign, magnitude text) for a coefficient; mixed real/imaginary
/// coefficients always carry a `+` sign and parenthesize themselves.
fn coefficient_parts(c: &GaussRat) -> (bool, String) {
    let re_zero = c.re.is_zero();
    let im_zero = c.im.is_zero();
    if im_zero {
        (c.re.is_negative(), format_rat(&c.re.abs()))
    } else if re_zero {
        (c.im.is_negative(), imaginary_magnitude(&c.im))
    } else {
        let im_text = if c.im.is_negative() {
            format!(" - {}", imaginary_magnitude(&c.im))
        } else {
            format!(" + {}", imaginary_magnitude(&c.im))
        };
        (false, format!("({}{})", format_rat(&c.re), im_text))
    }
}

impl fmt::Display for PolynomialSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (alpha, coeff) in self.terms() {
            let (negative, magnitude) = coefficient_parts(coeff);
            let mono = monomial_string(alpha);
            let body = if mono.is_empty() {
                magnitude
            } else if magnitude == "1" {
                mono
            } else {
                format!("{magnitude}*{mono}")
            };
            if first {
                if negative {
                    write!(f, "-{body}")?;
                } else {
                    write!(f, "{body}")?;
                }
                first = false;
            } else if negative {
                write!(f, " - {body}")?;
            } else {
                write!(f, " + {body}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbol::parse_symbol;

    fn round_trips(text: &str, n: usize) {
        let p = parse_symbol(text, n).unwrap();
        let printed = p.to_string();
        let q = parse_symbol(&printed, n).unwrap();
        assert_eq!(p, q, "printed form was `{printed}`");
    }

    #[test]
    fn printing_round_trips() {
        round_trips("x1^2 - x2^2", 2);
        round_trips("i*x1 + x2^2", 2);
        round_trips("-i", 1);
        round_trips("(1 - 2*i)*x1 + 3/2", 1);
        round_trips("0", 3);
        round_trips("-x1 - x2 - 1", 2);
        round_trips("1/2 - 2/3*i", 2);
    }

    #[test]
    fn unit_coefficients_are_elided() {
        let p = parse_symbol("x1^2 + x2", 2).unwrap();
        assert_eq!(p.to_string(), "x2 + x1^2");
    }

    #[test]
    fn zero_symbol_prints_zero() {
        assert_eq!(PolynomialSymbol::zero(2).to_string(), "0");
    }
}
