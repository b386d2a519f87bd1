use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

/// Exact rational number. Values that fit in `i64/i64` stay on the fast path;
/// anything larger is promoted to an arbitrary precision ratio.
#[derive(Clone, Debug)]
pub enum Q {
    Small(Ratio<i64>),
    Big(Box<BigRational>),
}

fn demote(b: BigRational) -> Q {
    match (b.numer().to_i64(), b.denom().to_i64()) {
        (Some(n), Some(d)) => Q::Small(Ratio::new_raw(n, d)),
        _ => Q::Big(Box::new(b)),
    }
}

impl Q {
    pub fn zero() -> Q {
        Q::Small(Ratio::from_integer(0))
    }

    pub fn one() -> Q {
        Q::Small(Ratio::from_integer(1))
    }

    pub fn int(n: i64) -> Q {
        Q::Small(Ratio::from_integer(n))
    }

    pub fn frac(n: i64, d: i64) -> Q {
        Q::Small(Ratio::new(n, d))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Q::Small(r) => r.numer() == &0,
            Q::Big(b) => b.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Q::Small(r) => r.numer() == &1 && r.denom() == &1,
            Q::Big(b) => b.is_one(),
        }
    }

    pub fn is_integer(&self) -> bool {
        match self {
            Q::Small(r) => r.is_integer(),
            Q::Big(b) => b.is_integer(),
        }
    }

    pub fn to_big(&self) -> BigRational {
        match self {
            Q::Small(r) => BigRational::new_raw(BigInt::from(*r.numer()), BigInt::from(*r.denom())),
            Q::Big(b) => (**b).clone(),
        }
    }

    pub fn numer_big(&self) -> BigInt {
        self.to_big().numer().clone()
    }

    pub fn denom_big(&self) -> BigInt {
        self.to_big().denom().clone()
    }

    pub fn recip(&self) -> Q {
        assert!(!self.is_zero(), "division by zero");
        match self {
            Q::Small(r) => {
                if *r.numer() == i64::MIN {
                    demote(self.to_big().recip())
                } else {
                    Q::Small(r.recip())
                }
            }
            Q::Big(b) => demote(b.recip()),
        }
    }

    pub fn abs(&self) -> Q {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Q::Small(r) => r.numer() < &0,
            Q::Big(b) => b.is_negative(),
        }
    }

    /// Rough size of the representation, used for pivot choice.
    pub fn height(&self) -> u64 {
        match self {
            Q::Small(r) => r.numer().unsigned_abs().max(r.denom().unsigned_abs()),
            Q::Big(_) => u64::MAX,
        }
    }
}

impl From<i64> for Q {
    fn from(n: i64) -> Q {
        Q::int(n)
    }
}

impl From<BigRational> for Q {
    fn from(b: BigRational) -> Q {
        demote(b)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl<'a, 'b> $tr<&'b Q> for &'a Q {
            type Output = Q;
            fn $m(self, rhs: &'b Q) -> Q {
                if let (Q::Small(a), Q::Small(b)) = (self, rhs) {
                    if let Some(c) = a.$checked(b) {
                        return Q::Small(c);
                    }
                }
                demote(self.to_big().$m(rhs.to_big()))
            }
        }
        impl $tr<Q> for Q {
            type Output = Q;
            fn $m(self, rhs: Q) -> Q {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Q> for Q {
            type Output = Q;
            fn $m(self, rhs: &'a Q) -> Q {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<Q> for &'a Q {
            type Output = Q;
            fn $m(self, rhs: Q) -> Q {
                self.$m(&rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl<'b> Div<&'b Q> for &Q {
    type Output = Q;
    fn div(self, rhs: &'b Q) -> Q {
        assert!(!rhs.is_zero(), "division by zero");
        if let (Q::Small(a), Q::Small(b)) = (self, rhs) {
            if let Some(c) = a.checked_div(b) {
                return Q::Small(c);
            }
        }
        demote(self.to_big() / rhs.to_big())
    }
}

impl Div<Q> for Q {
    type Output = Q;
    fn div(self, rhs: Q) -> Q {
        &self / &rhs
    }
}

impl Neg for &Q {
    type Output = Q;
    fn neg(self) -> Q {
        match self {
            Q::Small(r) if *r.numer() != i64::MIN => Q::Small(-*r),
            _ => demote(-self.to_big()),
        }
    }
}

impl Neg for Q {
    type Output = Q;
    fn neg(self) -> Q {
        -&self
    }
}

impl PartialEq for Q {
    fn eq(&self, other: &Q) -> bool {
        match (self, other) {
            (Q::Small(a), Q::Small(b)) => a == b,
            _ => self.to_big() == other.to_big(),
        }
    }
}

impl Eq for Q {}

impl PartialOrd for Q {
    fn partial_cmp(&self, other: &Q) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Q {
    fn cmp(&self, other: &Q) -> Ordering {
        match (self, other) {
            (Q::Small(a), Q::Small(b)) => {
                let l = *a.numer() as i128 * *b.denom() as i128;
                let r = *b.numer() as i128 * *a.denom() as i128;
                l.cmp(&r)
            }
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl std::hash::Hash for Q {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        let b = self.to_big();
        b.numer().hash(state);
        b.denom().hash(state);
    }
}

impl fmt::Display for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Q::Small(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Q::Small(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Q::Big(b) if b.is_integer() => write!(f, "{}", b.numer()),
            Q::Big(b) => write!(f, "{}/{}", b.numer(), b.denom()),
        }
    }
}

#[derive(Debug, thiserror::Error)]
#[error("malformed rational literal {0:?}")]
pub struct ParseQError(pub String);

impl FromStr for Q {
    type Err = ParseQError;
    fn from_str(s: &str) -> Result<Q, ParseQError> {
        let err = || ParseQError(s.to_string());
        let s = s.trim();
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n: BigInt = n.parse().map_err(|_| err())?;
        let d: BigInt = d.parse().map_err(|_| err())?;
        if d.is_zero() {
            return Err(err());
        }
        Ok(demote(BigRational::new(n, d)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overflow_promotes() {
        let a = Q::int(i64::MAX);
        let b = &a + &Q::one();
        assert!(matches!(b, Q::Big(_)));
        let c = &b - &Q::one();
        assert!(matches!(c, Q::Small(_)));
        assert_eq!(c, a);
        let sq = &a * &a;
        assert_eq!(&sq / &a, a);
    }

    #[test]
    fn parse_and_print() {
        let q: Q = "-6/4".parse().unwrap();
        assert_eq!(q, Q::frac(-3, 2));
        assert_eq!(q.to_string(), "-3/2");
        assert_eq!(Q::int(5).to_string(), "5");
        assert!("1/0".parse::<Q>().is_err());
        let big: Q = "123456789012345678901234567890/7".parse().unwrap();
        assert_eq!(big.to_string().parse::<Q>().unwrap(), big);
    }

    #[test]
    fn ordering() {
        assert!(Q::frac(1, 3) < Q::frac(1, 2));
        assert!(Q::int(-1) < Q::zero());
    }
}
