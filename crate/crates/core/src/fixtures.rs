//! Arc fixtures bundled with the library.

/// Arc pair on the 5-punctured disc with vanishing pairing (50 crossings).
pub const D5: &str = include_str!("../fixtures/d5.arcs");
/// Arc pair on the 6-punctured disc with vanishing pairing.
pub const D6: &str = include_str!("../fixtures/d6.arcs");
/// Images of the arc `q1 -> q2` under short braids in `B_4`.
pub const CALIBRATION: &str = include_str!("../fixtures/calibration.arcs");

/// Looks up a bundled fixture by file name (`d5.arcs`) or stem (`d5`).
pub fn builtin(name: &str) -> Option<&'static str> {
    match name.strip_suffix(".arcs").unwrap_or(name) {
        "d5" => Some(D5),
        "d6" => Some(D6),
        "calibration" => Some(CALIBRATION),
        _ => None,
    }
}

pub const NAMES: [&str; 3] = ["d5.arcs", "d6.arcs", "calibration.arcs"];
