//! Exact scalars over ℚ and prime fields.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported prime modulus; products fit comfortably in `u128`.
pub const MAX_MODULUS: u64 = 1 << 62;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldSpec {
    characteristic: u64,
}

impl FieldSpec {
    pub const RATIONALS: FieldSpec = FieldSpec { characteristic: 0 };

    pub fn prime(p: u64) -> Result<Self> {
        if p < 2 || p >= MAX_MODULUS || !is_prime(p) {
            return Err(Error::Invalid(format!("{p} is not a supported prime")));
        }
        Ok(FieldSpec { characteristic: p })
    }

    pub fn characteristic(&self) -> u64 {
        self.characteristic
    }

    pub fn is_rational(&self) -> bool {
        self.characteristic == 0
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self.characteristic {
            0 => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
            p => Scalar::Modular {
                value: (n as i128).rem_euclid(p as i128) as u64,
                modulus: p,
            },
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> Scalar {
        match self.characteristic {
            0 => Scalar::Rational(BigRational::from_integer(n.clone())),
            p => {
                let r = n.mod_floor(&BigInt::from(p));
                Scalar::Modular {
                    value: r.to_u64().expect("residue fits"),
                    modulus: p,
                }
            }
        }
    }

    /// The image of `num/den`; fails when `den` vanishes in the field.
    pub fn from_fraction(&self, num: &BigInt, den: &BigInt) -> Result<Scalar> {
        let d = self.from_bigint(den);
        if d.is_zero() {
            return Err(Error::Characteristic {
                characteristic: self.characteristic,
                reason: format!("denominator {den} vanishes"),
            });
        }
        Ok(&self.from_bigint(num) / &d)
    }

    pub fn from_rational(&self, q: &BigRational) -> Result<Scalar> {
        self.from_fraction(q.numer(), q.denom())
    }

    /// `n!` in the field.
    pub fn factorial(&self, n: u64) -> Scalar {
        let mut acc = self.one();
        for k in 2..=n {
            acc = &acc * &self.from_i64(k as i64);
        }
        acc
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.characteristic {
            0 => write!(f, "QQ"),
            p => write!(f, "Fp({p})"),
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 4 {
        return n >= 2;
    }
    if n % 2 == 0 {
        return false;
    }
    // deterministic Miller-Rabin for 64-bit inputs
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if a % n == 0 {
            continue;
        }
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    assert!(a % p != 0, "inverse of zero");
    pow_mod(a, p - 2, p)
}

/// An exact field element. Canonical form is enforced on construction so
/// derived equality is structural.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Modular { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Rational(_) => FieldSpec::RATIONALS,
            Scalar::Modular { modulus, .. } => FieldSpec {
                characteristic: *modulus,
            },
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Modular { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Modular { value, .. } => *value == 1,
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(q) => Scalar::Rational(q.recip()),
            Scalar::Modular { value, modulus } => Scalar::Modular {
                value: inv_mod(*value, *modulus),
                modulus: *modulus,
            },
        })
    }

    pub fn pow(&self, e: u32) -> Scalar {
        let mut acc = self.field().one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(q) => Some(q),
            _ => None,
        }
    }

    /// The value as an integer when it is one (always true in 𝔽p, as the residue).
    pub fn to_bigint(&self) -> Option<BigInt> {
        match self {
            Scalar::Rational(q) if q.is_integer() => Some(q.to_integer()),
            Scalar::Rational(_) => None,
            Scalar::Modular { value, .. } => Some(BigInt::from(*value)),
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_negative(),
            Scalar::Modular { .. } => false,
        }
    }

    fn check(&self, other: &Scalar) -> u64 {
        match (self, other) {
            (Scalar::Rational(_), Scalar::Rational(_)) => 0,
            (Scalar::Modular { modulus: p, .. }, Scalar::Modular { modulus: q, .. }) if p == q => *p,
            _ => panic!("scalars from different fields: {self:?} and {other:?}"),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => {
                if q.is_integer() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Scalar::Modular { value, .. } => write!(f, "{value}"),
        }
    }
}

impl Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Modular { value: a, .. }, Scalar::Modular { value: b, .. }) => {
                let p = self.check(rhs);
                let s = a + b;
                Scalar::Modular {
                    value: if s >= p { s - p } else { s },
                    modulus: p,
                }
            }
            _ => {
                self.check(rhs);
                unreachable!()
            }
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a - b),
            (Scalar::Modular { value: a, .. }, Scalar::Modular { value: b, .. }) => {
                let p = self.check(rhs);
                Scalar::Modular {
                    value: if a >= b { a - b } else { a + p - b },
                    modulus: p,
                }
            }
            _ => {
                self.check(rhs);
                unreachable!()
            }
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Modular { value: a, .. }, Scalar::Modular { value: b, .. }) => {
                let p = self.check(rhs);
                Scalar::Modular {
                    value: mul_mod(*a, *b, p),
                    modulus: p,
                }
            }
            _ => {
                self.check(rhs);
                unreachable!()
            }
        }
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        self * &rhs.inv().expect("division by zero")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Modular { value, modulus } => Scalar::Modular {
                value: if *value == 0 { 0 } else { modulus - value },
                modulus: *modulus,
            },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);
owned_ops!(Div, div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

/// Binomial coefficient as a big integer.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}
