//! Coefficient fields for the symbolic kernel.
//!
//! Everything above this module is written against [`Scalar`], an exact
//! field. Two implementations ship: [`Rational`](crate::Rational), the
//! arbitrary-precision rationals used for every reported result, and
//! [`Fp`], arithmetic modulo the Mersenne prime 2^61 - 1, which is only
//! used as an independent cross-check for rank computations.

use std::fmt::{self, Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Rem, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Num, One, Signed, Zero};

/// An exact field usable as a polynomial coefficient.
pub trait Scalar:
    Clone + Debug + Display + PartialEq + Num + Neg<Output = Self> + Send + Sync + 'static
{
    fn from_i64(v: i64) -> Self;

    /// Rescales a nonzero vector by a nonzero constant so that repeated
    /// cross-multiplication keeps entries small. The first entry must end up
    /// positive (or, for fields without order, equal to one).
    fn make_primitive<K>(entries: &mut [(K, Self)]);

    /// Parses the textual form produced by `Display`.
    fn parse_text(s: &str) -> Option<Self>;
}

impl Scalar for BigRational {
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn make_primitive<K>(entries: &mut [(K, Self)]) {
        if entries.is_empty() {
            return;
        }
        let mut den_lcm = BigInt::one();
        for (_, c) in entries.iter() {
            if !c.denom().is_one() {
                den_lcm = den_lcm.lcm(c.denom());
            }
        }
        let mut num_gcd = BigInt::zero();
        for (_, c) in entries.iter() {
            let n = if den_lcm.is_one() {
                c.numer().clone()
            } else {
                c.numer() * (&den_lcm / c.denom())
            };
            num_gcd = num_gcd.gcd(&n);
            if num_gcd.is_one() && den_lcm.is_one() {
                break;
            }
        }
        if num_gcd.is_zero() {
            return;
        }
        let negate = entries[0].1.is_negative();
        if den_lcm.is_one() && num_gcd.is_one() && !negate {
            return;
        }
        let mut scale = BigRational::new(den_lcm, num_gcd);
        if negate {
            scale = -scale;
        }
        for (_, c) in entries.iter_mut() {
            *c = &*c * &scale;
        }
    }

    fn parse_text(s: &str) -> Option<Self> {
        let s = s.trim();
        match s.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().ok()?;
                let d: BigInt = d.trim().parse().ok()?;
                if d.is_zero() {
                    None
                } else {
                    Some(BigRational::new(n, d))
                }
            }
            None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
        }
    }
}

const MERSENNE_61: u64 = (1 << 61) - 1;

/// An element of the prime field of order 2^61 - 1.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Fp(u64);

impl Fp {
    pub const MODULUS: u64 = MERSENNE_61;

    pub fn new(v: u64) -> Self {
        Fp(v % MERSENNE_61)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    fn reduce(v: u128) -> u64 {
        let lo = (v as u64) & MERSENNE_61;
        let hi = (v >> 61) as u64;
        let mut r = lo + (hi & MERSENNE_61) + ((v >> 122) as u64);
        while r >= MERSENNE_61 {
            r -= MERSENNE_61;
        }
        r
    }

    pub fn pow(self, mut e: u64) -> Fp {
        let mut base = self;
        let mut acc = Fp(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    /// Image of a rational under reduction mod p; `None` if p divides the denominator.
    pub fn from_rational(r: &BigRational) -> Option<Fp> {
        let m = BigInt::from(MERSENNE_61);
        let residue = |n: &BigInt| -> u64 {
            let r = n.mod_floor(&m);
            r.try_into().expect("reduced below modulus")
        };
        let num = Fp(residue(r.numer()));
        Fp(residue(r.denom())).inverse().map(|d| num * d)
    }

    pub fn inverse(self) -> Option<Fp> {
        if self.0 == 0 {
            None
        } else {
            Some(self.pow(MERSENNE_61 - 2))
        }
    }
}

impl Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Fp({})", self.0)
    }
}

impl Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        let s = self.0 + rhs.0;
        Fp(if s >= MERSENNE_61 { s - MERSENNE_61 } else { s })
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        if self.0 >= rhs.0 {
            Fp(self.0 - rhs.0)
        } else {
            Fp(self.0 + MERSENNE_61 - rhs.0)
        }
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        Fp(Fp::reduce(self.0 as u128 * rhs.0 as u128))
    }
}

impl Div for Fp {
    type Output = Fp;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Fp) -> Fp {
        self * rhs.inverse().expect("division by zero in Fp")
    }
}

// A field has no meaningful remainder; Num requires one anyway.
impl Rem for Fp {
    type Output = Fp;
    fn rem(self, rhs: Fp) -> Fp {
        assert!(rhs.0 != 0, "remainder by zero in Fp");
        Fp(0)
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        if self.0 == 0 {
            self
        } else {
            Fp(MERSENNE_61 - self.0)
        }
    }
}

impl Zero for Fp {
    fn zero() -> Self {
        Fp(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl One for Fp {
    fn one() -> Self {
        Fp(1)
    }
}

impl Num for Fp {
    type FromStrRadixErr = std::num::ParseIntError;
    fn from_str_radix(s: &str, radix: u32) -> Result<Self, Self::FromStrRadixErr> {
        u64::from_str_radix(s, radix).map(Fp::new)
    }
}

impl Scalar for Fp {
    fn from_i64(v: i64) -> Self {
        let r = v.rem_euclid(MERSENNE_61 as i64);
        Fp(r as u64)
    }

    fn make_primitive<K>(entries: &mut [(K, Self)]) {
        let Some((_, lead)) = entries.first() else {
            return;
        };
        let inv = lead.inverse().expect("leading entry is nonzero");
        for (_, c) in entries.iter_mut() {
            *c = *c * inv;
        }
    }

    fn parse_text(s: &str) -> Option<Self> {
        s.trim().parse::<u64>().ok().map(Fp::new)
    }
}
