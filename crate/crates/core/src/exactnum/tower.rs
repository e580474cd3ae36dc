use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::factor::squarefree_decompose;
use super::ExactError;

pub type Rational = BigRational;

/// A field generator: the imaginary unit or the square root of a prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Generator {
    I,
    Sqrt(u64),
}

/// Basis element `√(p₁⋯pⱼ) · iᵉ` with distinct primes in ascending order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    primes: Vec<u64>,
    imag: bool,
}

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn imag_unit() -> Self {
        Monomial { primes: Vec::new(), imag: true }
    }

    /// Caller guarantees the primes are distinct primes.
    pub fn new(mut primes: Vec<u64>, imag: bool) -> Self {
        primes.sort_unstable();
        primes.dedup();
        Monomial { primes, imag }
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn is_imag(&self) -> bool {
        self.imag
    }

    pub fn is_one(&self) -> bool {
        self.primes.is_empty() && !self.imag
    }

    /// Product of the primes, i.e. the radicand under the square root.
    pub fn radicand(&self) -> BigUint {
        self.primes.iter().fold(BigUint::one(), |acc, &p| acc * p)
    }

    pub fn contains(&self, g: Generator) -> bool {
        match g {
            Generator::I => self.imag,
            Generator::Sqrt(p) => self.primes.binary_search(&p).is_ok(),
        }
    }

    /// `self · other = factor · monomial`.
    fn mul(&self, other: &Monomial) -> (Monomial, BigInt) {
        let mut primes = Vec::with_capacity(self.primes.len() + other.primes.len());
        let mut factor = BigInt::one();
        let (mut i, mut j) = (0, 0);
        while i < self.primes.len() && j < other.primes.len() {
            match self.primes[i].cmp(&other.primes[j]) {
                Ordering::Less => {
                    primes.push(self.primes[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    primes.push(other.primes[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    factor *= self.primes[i];
                    i += 1;
                    j += 1;
                }
            }
        }
        primes.extend_from_slice(&self.primes[i..]);
        primes.extend_from_slice(&other.primes[j..]);
        if self.imag && other.imag {
            factor = -factor;
        }
        (Monomial { primes, imag: self.imag ^ other.imag }, factor)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.primes
            .len()
            .cmp(&other.primes.len())
            .then_with(|| self.primes.cmp(&other.primes))
            .then_with(|| self.imag.cmp(&other.imag))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// An exact element of ℚ(i, √p₁, …, √pₘ) in the multilinear basis.
///
/// Only nonzero coefficients are stored, so equality is structural.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct TowerElement {
    terms: BTreeMap<Monomial, Rational>,
}

impl TowerElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn imag_unit() -> Self {
        Self::from_term(Monomial::imag_unit(), Rational::one())
    }

    pub fn from_rational(q: Rational) -> Self {
        Self::from_term(Monomial::one(), q)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(n.into()))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_rational(Rational::new(num.into(), den.into()))
    }

    pub fn from_term(m: Monomial, q: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !q.is_zero() {
            terms.insert(m, q);
        }
        TowerElement { terms }
    }

    /// Exact `√q` for a rational `q`; negative `q` yields an imaginary root.
    pub fn sqrt_rational(q: &Rational) -> Result<Self, ExactError> {
        if q.is_zero() {
            return Ok(Self::zero());
        }
        let imag = q.is_negative();
        let num = q.numer().magnitude();
        let den = q.denom().magnitude();
        // √(n/d) = √(n·d)/d
        let sf = squarefree_decompose(&(num * den))?;
        let coeff = Rational::new(
            BigInt::from_biguint(Sign::Plus, sf.square),
            BigInt::from_biguint(Sign::Plus, den.clone()),
        );
        Ok(Self::from_term(Monomial::new(sf.primes, imag), coeff))
    }

    pub fn sqrt_int(n: i64) -> Result<Self, ExactError> {
        Self::sqrt_rational(&Rational::from_integer(n.into()))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_rational().is_some_and(|q| q.is_one())
    }

    pub fn as_rational(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn is_rational(&self) -> bool {
        self.as_rational().is_some()
    }

    /// True when no monomial carries the imaginary unit.
    pub fn is_real(&self) -> bool {
        self.terms.keys().all(|m| !m.imag)
    }

    pub fn generators(&self) -> BTreeSet<Generator> {
        let mut out = BTreeSet::new();
        for m in self.terms.keys() {
            if m.imag {
                out.insert(Generator::I);
            }
            out.extend(m.primes.iter().map(|&p| Generator::Sqrt(p)));
        }
        out
    }

    /// Positive radicands `p₁⋯pⱼ` of the monomials, including 1.
    pub fn radicands(&self) -> BTreeSet<BigUint> {
        self.terms.keys().map(Monomial::radicand).collect()
    }

    /// Complex conjugate.
    pub fn conj(&self) -> Self {
        self.galois(Generator::I)
    }

    pub fn real_part(&self) -> Self {
        self.filter(|m| !m.imag)
    }

    /// Imaginary part as a real element: `x = re + i·im`.
    pub fn imag_part(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.imag)
            .map(|(m, q)| (Monomial { primes: m.primes.clone(), imag: false }, q.clone()))
            .collect();
        TowerElement { terms }
    }

    fn filter(&self, keep: impl Fn(&Monomial) -> bool) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| keep(m))
            .map(|(m, q)| (m.clone(), q.clone()))
            .collect();
        TowerElement { terms }
    }

    /// The automorphism sending the generator `g` to `−g`.
    pub fn galois(&self, g: Generator) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(m, q)| (m.clone(), if m.contains(g) { -q } else { q.clone() }))
            .collect();
        TowerElement { terms }
    }

    /// Splits `self = a + b·γ` where `γ` is the generator and `a`, `b` are free of it.
    pub fn split(&self, g: Generator) -> (Self, Self) {
        let mut a = BTreeMap::new();
        let mut b = BTreeMap::new();
        for (m, q) in &self.terms {
            if m.contains(g) {
                let mut reduced = m.clone();
                match g {
                    Generator::I => reduced.imag = false,
                    Generator::Sqrt(p) => reduced.primes.retain(|&x| x != p),
                }
                b.insert(reduced, q.clone());
            } else {
                a.insert(m.clone(), q.clone());
            }
        }
        (TowerElement { terms: a }, TowerElement { terms: b })
    }

    pub fn generator_element(g: Generator) -> Self {
        match g {
            Generator::I => Self::imag_unit(),
            Generator::Sqrt(p) => Self::from_term(Monomial::new(vec![p], false), Rational::one()),
        }
    }

    pub fn scale(&self, q: &Rational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), c * q)).collect();
        TowerElement { terms }
    }

    fn accumulate(terms: &mut BTreeMap<Monomial, Rational>, m: Monomial, q: Rational) {
        use std::collections::btree_map::Entry;
        match terms.entry(m) {
            Entry::Vacant(e) => {
                if !q.is_zero() {
                    e.insert(q);
                }
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += q;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn add_ref(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (m, q) in &other.terms {
            Self::accumulate(&mut terms, m.clone(), q.clone());
        }
        TowerElement { terms }
    }

    fn sub_ref(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (m, q) in &other.terms {
            Self::accumulate(&mut terms, m.clone(), -q);
        }
        TowerElement { terms }
    }

    fn mul_ref(&self, other: &Self) -> Self {
        let mut acc: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (m1, q1) in &self.terms {
            for (m2, q2) in &other.terms {
                let (m, f) = m1.mul(m2);
                let prod = q1 * q2;
                let q = if f.is_one() { prod } else { prod * Rational::from_integer(f) };
                *acc.entry(m).or_insert_with(Rational::zero) += q;
            }
        }
        acc.retain(|_, q| !q.is_zero());
        TowerElement { terms: acc }
    }

    pub fn square(&self) -> Self {
        self.mul_ref(self)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = base.square();
            }
        }
        acc
    }

    /// Multiplicative inverse by iterated conjugate rationalization.
    pub fn inv(&self) -> Result<Self, ExactError> {
        if self.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        if let Some(q) = self.as_rational() {
            return Ok(Self::from_rational(q.recip()));
        }
        // Eliminate one generator: x·σ(x) no longer involves it.
        let gens = self.generators();
        let g = if gens.contains(&Generator::I) {
            Generator::I
        } else {
            *gens.iter().next_back().expect("non-rational element has a generator")
        };
        let sigma = self.galois(g);
        let norm = self * &sigma;
        Ok(&sigma * &norm.inv()?)
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, ExactError> {
        Ok(self * &other.inv()?)
    }
}

impl From<Rational> for TowerElement {
    fn from(q: Rational) -> Self {
        Self::from_rational(q)
    }
}

impl From<i64> for TowerElement {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $inner:ident) => {
        impl $trait<&TowerElement> for &TowerElement {
            type Output = TowerElement;
            fn $method(self, rhs: &TowerElement) -> TowerElement {
                self.$inner(rhs)
            }
        }
        impl $trait<TowerElement> for TowerElement {
            type Output = TowerElement;
            fn $method(self, rhs: TowerElement) -> TowerElement {
                (&self).$inner(&rhs)
            }
        }
        impl $trait<&TowerElement> for TowerElement {
            type Output = TowerElement;
            fn $method(self, rhs: &TowerElement) -> TowerElement {
                (&self).$inner(rhs)
            }
        }
        impl $trait<TowerElement> for &TowerElement {
            type Output = TowerElement;
            fn $method(self, rhs: TowerElement) -> TowerElement {
                self.$inner(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, sub_ref);
forward_binop!(Mul, mul, mul_ref);

impl Neg for &TowerElement {
    type Output = TowerElement;
    fn neg(self) -> TowerElement {
        let terms = self.terms.iter().map(|(m, q)| (m.clone(), -q)).collect();
        TowerElement { terms }
    }
}

impl Neg for TowerElement {
    type Output = TowerElement;
    fn neg(self) -> TowerElement {
        -&self
    }
}
