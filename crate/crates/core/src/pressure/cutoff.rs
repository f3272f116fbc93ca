//! C¹ cutoff `1_{s<=k}`: one below `k`, zero above `2k`, cubic Hermite
//! bridge in between.

#[inline]
fn bridge(s: f64, k: f64) -> Option<f64> {
    if s <= k {
        None
    } else if s >= 2.0 * k {
        Some(1.0)
    } else {
        let t = (s - k) / k;
        Some(t * t * (3.0 - 2.0 * t))
    }
}

/// `1_{s<=k}`; requires `k > 0`.
#[inline]
pub fn smooth_cutoff_leq(s: f64, k: f64) -> f64 {
    debug_assert!(k > 0.0);
    bridge(s, k).map_or(1.0, |h| 1.0 - h)
}

/// `1_{s>=k} := 1 - 1_{s<=k}`.
#[inline]
pub fn smooth_cutoff_geq(s: f64, k: f64) -> f64 {
    1.0 - smooth_cutoff_leq(s, k)
}

/// `d/ds 1_{s<=k}`.
#[inline]
pub fn smooth_cutoff_leq_deriv(s: f64, k: f64) -> f64 {
    if s <= k || s >= 2.0 * k {
        0.0
    } else {
        let t = (s - k) / k;
        -6.0 * t * (1.0 - t) / k
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn endpoints_and_midpoint() {
        let k = 0.3;
        assert_eq!(smooth_cutoff_leq(0.5 * k, k), 1.0);
        assert_eq!(smooth_cutoff_leq(3.0 * k, k), 0.0);
        assert!((smooth_cutoff_leq(1.5 * k, k) - 0.5).abs() < 1e-15);
        assert_eq!(smooth_cutoff_leq(k, k), 1.0);
        assert_eq!(smooth_cutoff_leq(2.0 * k, k), 0.0);
    }

    #[test]
    fn monotone_and_c1() {
        let k = 1.0;
        let mut prev = 1.0;
        for i in 0..=400 {
            let s = i as f64 * 0.01;
            let v = smooth_cutoff_leq(s, k);
            assert!(v <= prev + 1e-15);
            prev = v;
            if s > 0.02 {
                let h = 1e-6;
                let fd = (smooth_cutoff_leq(s + h, k) - smooth_cutoff_leq(s - h, k)) / (2.0 * h);
                assert!((fd - smooth_cutoff_leq_deriv(s, k)).abs() < 1e-5);
            }
        }
    }
}
