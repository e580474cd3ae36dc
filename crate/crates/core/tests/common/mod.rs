#![allow(dead_code)]

use std::sync::OnceLock;

use ramanujan::derive::{derive, Class, SeriesCertificate};
use ramanujan::modeq::{builtin, ModularEquation};

pub const DERIVABLE: [(&str, Class); 5] = [
    ("berndt-2-7", Class::Alternating),
    ("berndt-3-11", Class::Alternating),
    ("berndt-3-5", Class::Alternating),
    ("berndt-3-5", Class::Positive),
    ("chan-liaw-3-23", Class::Alternating),
];

pub fn equation(name: &str) -> ModularEquation {
    builtin().into_iter().find(|e| e.name == name).unwrap_or_else(|| panic!("no equation {name}"))
}

/// Every certificate the shipped equations yield, derived once.
pub fn certificates() -> &'static [SeriesCertificate] {
    static CERTS: OnceLock<Vec<SeriesCertificate>> = OnceLock::new();
    CERTS.get_or_init(|| DERIVABLE.iter().map(|&(name, class)| derive(&equation(name), class).unwrap()).collect())
}

pub fn certificate(name: &str, class: Class) -> &'static SeriesCertificate {
    certificates().iter().find(|c| c.name() == name && c.class == class).unwrap()
}

/// `"3."` and `digits` decimals of π from Machin's formula
/// `π = 16·atan(1/5) − 4·atan(1/239)`, in fixed point with guard digits.
pub fn machin_pi(digits: usize) -> String {
    use num_bigint::BigInt;
    use num_traits::Zero;
    let guard = 10;
    let scale = BigInt::from(10).pow((digits + guard) as u32);
    let atan_inv = |x: u64| {
        let x2 = BigInt::from(x * x);
        let mut power = &scale / x;
        let mut sum = BigInt::zero();
        let mut n = 1u64;
        let mut add = true;
        while !power.is_zero() {
            let t = &power / n;
            if add {
                sum += t;
            } else {
                sum -= t;
            }
            add = !add;
            power /= &x2;
            n += 2;
        }
        sum
    };
    let pi: BigInt = atan_inv(5) * 16 - atan_inv(239) * 4;
    let s = (pi / BigInt::from(10).pow(guard as u32)).to_string();
    format!("{}.{}", &s[..1], &s[1..])
}
