/// Shortest decimal form of `v` with at most `precision` fraction digits.
///
/// Rounds ties to even on the exact binary value, never uses exponent
/// notation, drops trailing zeros and prints negative zero as `0`.
pub fn format_number(v: f64, precision: usize) -> String {
    if !v.is_finite() {
        return "0".to_string();
    }
    let mut s = format!("{v:.precision$}");
    if s.contains('.') {
        let trimmed = s.trim_end_matches('0').trim_end_matches('.').len();
        s.truncate(trimmed);
    }
    if s == "-0" {
        s = "0".to_string();
    }
    s
}
