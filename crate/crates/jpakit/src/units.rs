//! Power and ratio unit conversions.
//!
//! All internal math is linear (Works in watts and linear power ratios);
//! dB and dBm appear only at interfaces.

/// Linear power ratio to dB.
pub fn linear_to_db(g: f64) -> f64 {
    10.0 * g.log10()
}

/// dB to linear power ratio.
pub fn db_to_linear(db: f64) -> f64 {
    10.0_f64.powf(db / 10.0)
}

/// dBm to watts: P(W) = 10^((dBm − 30)/10).
pub fn dbm_to_watts(dbm: f64) -> f64 {
    10.0_f64.powf((dbm - 30.0) / 10.0)
}

/// Watts to dBm. Non-positive powers are clamped to [`DBM_FLOOR`] so that
/// zero-power bins survive a round trip through text formats.
pub fn watts_to_dbm(w: f64) -> f64 {
    if w <= DBM_FLOOR_WATTS {
        DBM_FLOOR
    } else {
        10.0 * (w / 1e-3).log10()
    }
}

/// Floor used when formatting vanishing powers in dBm.
pub const DBM_FLOOR: f64 = -300.0;

/// Watt value corresponding to [`DBM_FLOOR`].
pub const DBM_FLOOR_WATTS: f64 = 1e-33;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn db_round_trip() {
        for &g in &[1e-6, 0.5, 1.0, 100.0, 4.7863e9] {
            let back = db_to_linear(linear_to_db(g));
            assert!((back - g).abs() / g < 1e-12);
        }
    }

    #[test]
    fn dbm_reference_points() {
        assert!((dbm_to_watts(0.0) - 1e-3).abs() < 1e-18);
        assert!((dbm_to_watts(-125.0) - 3.1623e-16).abs() / 3.1623e-16 < 1e-3);
        assert!((watts_to_dbm(1e-3) - 0.0).abs() < 1e-12);
    }

    #[test]
    fn zero_power_clamps_to_floor() {
        assert_eq!(watts_to_dbm(0.0), DBM_FLOOR);
        assert_eq!(watts_to_dbm(-1.0), DBM_FLOOR);
    }
}
