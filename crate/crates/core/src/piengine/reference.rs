//! Reference π from Takano's arctangent formula
//! `π/4 = 12·atan(1/49) + 32·atan(1/57) − 5·atan(1/239) + 12·atan(1/110443)`,
//! in fixed-point integers.

use num_bigint::BigInt;
use num_traits::Zero;

const GUARD: usize = 12;

fn atan_inv(x: u64, scale: &BigInt) -> BigInt {
    let x2 = BigInt::from(x) * x;
    let mut power = scale / x;
    let mut sum = BigInt::zero();
    let mut k = 0u64;
    while !power.is_zero() {
        let term = &power / (2 * k + 1);
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        power /= &x2;
        k += 1;
    }
    sum
}

/// `"3."` and the first `digits` decimals of π, truncated.
pub fn reference_pi(digits: usize) -> String {
    let scale = BigInt::from(10).pow((digits + GUARD) as u32);
    let v: BigInt = (atan_inv(49, &scale) * 12 + atan_inv(57, &scale) * 32 - atan_inv(239, &scale) * 5 + atan_inv(110443, &scale) * 12) * 4;
    let s = (v / BigInt::from(10).pow(GUARD as u32)).to_string();
    format!("{}.{}", &s[..1], &s[1..])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn leading_digits() {
        assert_eq!(reference_pi(30), "3.141592653589793238462643383279");
        assert_eq!(reference_pi(1), "3.1");
    }
}
