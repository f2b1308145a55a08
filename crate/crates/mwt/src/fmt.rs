//! Stable number formatting for report artifacts.

/// Format with 9 significant digits, the precision every TSV artifact
/// uses so golden files stay stable.
pub fn sig9(x: f64) -> String {
    significant(x, 9)
}

/// Format `x` with `digits` significant digits in plain decimal
/// notation, falling back to scientific notation for huge magnitudes.
pub fn significant(x: f64, digits: usize) -> String {
    assert!(digits >= 1);
    if x == 0.0 {
        return format!("{:.*}", digits - 1, 0.0);
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = digits as i32 - 1 - magnitude;
    if decimals < 0 {
        format!("{:.*e}", digits - 1, x)
    } else {
        format!("{:.*}", decimals as usize, x)
    }
}

/// Round to 9 significant digits, for floats that end up in JSON.
pub fn round_sig9(x: f64) -> f64 {
    if !x.is_finite() {
        return x;
    }
    format!("{x:.8e}").parse().unwrap_or(x)
}
