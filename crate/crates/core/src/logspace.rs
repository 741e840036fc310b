//! Log-domain arithmetic. The scale function and the hitting-time integrals
//! routinely span hundreds of orders of magnitude, so everything downstream
//! of the potential is carried as logarithms.

/// `ln(e^a + e^b)`, exact when either side is `-inf`.
#[inline]
pub fn log_add_exp(a: f64, b: f64) -> f64 {
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    if lo == f64::NEG_INFINITY {
        return hi;
    }
    hi + (lo - hi).exp().ln_1p()
}

/// `ln(1 - e^x)` for `x <= 0`, accurate near both ends.
#[inline]
pub fn log1m_exp(x: f64) -> f64 {
    if x > -std::f64::consts::LN_2 {
        (-x.exp_m1()).ln()
    } else {
        (-x.exp()).ln_1p()
    }
}

/// `ln(e^a - e^b)` for `a >= b`.
#[inline]
pub fn log_sub_exp(a: f64, b: f64) -> f64 {
    if b == f64::NEG_INFINITY {
        return a;
    }
    a + log1m_exp(b - a)
}

/// Streaming log-sum-exp with a compensated (Neumaier) scaled sum.
///
/// The running value is `exp(shift) * (sum + carry)`.
#[derive(Debug, Clone, Copy)]
pub struct LogSum {
    shift: f64,
    sum: f64,
    carry: f64,
}

impl Default for LogSum {
    fn default() -> Self {
        Self::new()
    }
}

impl LogSum {
    pub fn new() -> Self {
        Self {
            shift: f64::NEG_INFINITY,
            sum: 0.0,
            carry: 0.0,
        }
    }

    #[inline]
    pub fn push(&mut self, log_term: f64) {
        if log_term == f64::NEG_INFINITY {
            return;
        }
        if log_term > self.shift {
            let rescale = (self.shift - log_term).exp();
            self.sum *= rescale;
            self.carry *= rescale;
            self.shift = log_term;
            self.add_scaled(1.0);
        } else {
            self.add_scaled((log_term - self.shift).exp());
        }
    }

    #[inline]
    fn add_scaled(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    /// Natural log of the accumulated sum (`-inf` when empty).
    #[inline]
    pub fn value(&self) -> f64 {
        if self.shift == f64::NEG_INFINITY {
            f64::NEG_INFINITY
        } else {
            self.shift + (self.sum + self.carry).ln()
        }
    }
}

/// Neumaier-compensated sum of plain values.
pub fn compensated_sum<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    let mut sum = 0.0_f64;
    let mut carry = 0.0_f64;
    for x in values {
        let t = sum + x;
        if sum.abs() >= x.abs() {
            carry += (sum - t) + x;
        } else {
            carry += (x - t) + sum;
        }
        sum = t;
    }
    sum + carry
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_add_exp_matches_direct() {
        let direct = (2.0_f64.exp() + 3.5_f64.exp()).ln();
        assert!((log_add_exp(2.0, 3.5) - direct).abs() < 1e-14);
        assert_eq!(log_add_exp(f64::NEG_INFINITY, 1.25), 1.25);
        assert_eq!(log_add_exp(1.25, f64::NEG_INFINITY), 1.25);
    }

    #[test]
    fn log_sub_exp_matches_direct() {
        let direct = (3.0_f64.exp() - 1.0_f64.exp()).ln();
        assert!((log_sub_exp(3.0, 1.0) - direct).abs() < 1e-14);
        assert!((log1m_exp(-1e-20) - (1e-20_f64).ln()).abs() < 1e-10);
    }

    #[test]
    fn log_sum_handles_huge_range() {
        let mut acc = LogSum::new();
        acc.push(1000.0);
        acc.push(1000.0);
        acc.push(-1000.0);
        assert!((acc.value() - (1000.0 + std::f64::consts::LN_2)).abs() < 1e-12);
        assert_eq!(LogSum::new().value(), f64::NEG_INFINITY);
    }

    #[test]
    fn compensated_sum_recovers_small_terms() {
        let xs = [1e16, 1.0, -1e16, 1.0];
        assert_eq!(compensated_sum(xs), 2.0);
    }
}
