/// Six significant digits, trailing zeros dropped, no exponent for
/// moderate magnitudes.
pub(crate) fn sig6(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { "0".into() } else { x.to_string() };
    }
    let magnitude = x.abs().log10().floor() as i32;
    if !(-5..=15).contains(&magnitude) {
        return format!("{x:.5e}");
    }
    let decimals = (5 - magnitude).max(0) as usize;
    let s = format!("{x:.decimals$}");
    let s = if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    };
    if s == "-0" {
        "0".into()
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::sig6;

    #[test]
    fn samples() {
        assert_eq!(sig6(0.0), "0");
        assert_eq!(sig6(1.0), "1");
        assert_eq!(sig6(2.5), "2.5");
        assert_eq!(sig6(1.0 / 3.0), "0.333333");
        assert_eq!(sig6(123456.7), "123457");
        assert_eq!(sig6(-0.000000001), "-1.00000e-9");
        assert_eq!(sig6(-1e-12 + 1e-12), "0");
        assert_eq!(sig6(2.0 / 3.0 * 100.0), "66.6667");
    }
}
