//! File formats, output records and number formatting for the `stardisc`
//! command-line tool.

pub mod io;
pub mod records;

/// `x` with 9 significant digits, trailing zeros removed.
///
/// Fixed notation is used for decimal exponents in `-5..9`, scientific
/// notation otherwise.
pub fn fmt9(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{x:.8e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..9).contains(&exp) {
        let decimals = (8 - exp).max(0) as usize;
        trim_zeros(format!("{x:.decimals$}"))
    } else {
        format!("{}e{exp}", trim_zeros(mantissa.to_string()))
    }
}

fn trim_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::fmt9;

    #[test]
    fn nine_significant_digits() {
        assert_eq!(fmt9(0.065664679583), "0.0656646796");
        assert_eq!(fmt9(0.5), "0.5");
        assert_eq!(fmt9(11.0 / 30.0), "0.366666667");
        assert_eq!(fmt9(3.6207955698), "3.62079557");
        assert_eq!(fmt9(-2.0), "-2");
        assert_eq!(fmt9(1.5e-7), "1.5e-7");
        assert_eq!(fmt9(123456789012.0), "1.23456789e11");
        assert_eq!(fmt9(0.0), "0");
        assert_eq!(fmt9(9.9999999999), "10");
    }
}
