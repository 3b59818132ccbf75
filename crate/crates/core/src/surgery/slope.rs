//! Reduced rational slopes with a point at infinity.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SlopeError {
    #[error("cannot parse slope `{0}`")]
    Parse(String),
    #[error("0/0 is not a slope")]
    ZeroOverZero,
}

/// `p/q` in lowest terms with `q >= 0`; infinity is `1/0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Slope {
    p: i64,
    q: i64,
}

fn gcd(mut a: i64, mut b: i64) -> i64 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl Slope {
    pub const INFINITY: Slope = Slope { p: 1, q: 0 };

    pub fn new(p: i64, q: i64) -> Result<Self, SlopeError> {
        if p == 0 && q == 0 {
            return Err(SlopeError::ZeroOverZero);
        }
        if q == 0 {
            return Ok(Self::INFINITY);
        }
        let g = gcd(p, q);
        let s = q.signum();
        Ok(Slope { p: s * p / g, q: s * q / g })
    }

    pub fn integer(n: i64) -> Self {
        Slope { p: n, q: 1 }
    }

    /// `1/k` for nonzero `k`.
    pub fn reciprocal_of(k: i64) -> Self {
        Slope::new(1, k).expect("k is nonzero")
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    pub fn is_infinite(&self) -> bool {
        self.q == 0
    }

    pub fn is_zero(&self) -> bool {
        self.p == 0
    }

    pub fn neg(&self) -> Self {
        if self.is_infinite() {
            *self
        } else {
            Slope { p: -self.p, q: self.q }
        }
    }

    /// Order on finite slopes; `None` if either is infinite.
    pub fn cmp_finite(&self, other: &Slope) -> Option<Ordering> {
        if self.is_infinite() || other.is_infinite() {
            return None;
        }
        let l = self.p as i128 * other.q as i128;
        let r = other.p as i128 * self.q as i128;
        Some(l.cmp(&r))
    }

    pub fn ge_int(&self, n: i64) -> bool {
        !self.is_infinite() && self.p as i128 >= n as i128 * self.q as i128
    }

    pub fn le_int(&self, n: i64) -> bool {
        !self.is_infinite() && self.p as i128 <= n as i128 * self.q as i128
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.q {
            0 => f.write_str("inf"),
            1 => write!(f, "{}", self.p),
            q => write!(f, "{}/{}", self.p, q),
        }
    }
}

impl Serialize for Slope {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl FromStr for Slope {
    type Err = SlopeError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let t = text.trim();
        if matches!(t, "inf" | "infinity" | "∞" | "1/0") {
            return Ok(Slope::INFINITY);
        }
        let bad = || SlopeError::Parse(text.to_string());
        let (p, q) = match t.split_once('/') {
            Some((p, q)) => (p.trim().parse::<i64>().map_err(|_| bad())?, q.trim().parse::<i64>().map_err(|_| bad())?),
            None => (t.parse::<i64>().map_err(|_| bad())?, 1),
        };
        Slope::new(p, q)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Bound {
    NegInf,
    Finite(Slope),
    PosInf,
}

impl Bound {
    fn neg(self) -> Bound {
        match self {
            Bound::NegInf => Bound::PosInf,
            Bound::PosInf => Bound::NegInf,
            Bound::Finite(s) => Bound::Finite(s.neg()),
        }
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::NegInf => f.write_str("-inf"),
            Bound::PosInf => f.write_str("+inf"),
            Bound::Finite(s) => write!(f, "{s}"),
        }
    }
}

/// Open interval of finite slopes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SlopeInterval {
    pub lo: Bound,
    pub hi: Bound,
}

impl SlopeInterval {
    pub fn new(lo: Bound, hi: Bound) -> Self {
        SlopeInterval { lo, hi }
    }

    pub fn int(lo: Option<i64>, hi: Option<i64>) -> Self {
        SlopeInterval {
            lo: lo.map_or(Bound::NegInf, |n| Bound::Finite(Slope::integer(n))),
            hi: hi.map_or(Bound::PosInf, |n| Bound::Finite(Slope::integer(n))),
        }
    }

    pub fn contains(&self, s: Slope) -> bool {
        if s.is_infinite() {
            return false;
        }
        let above = match self.lo {
            Bound::NegInf => true,
            Bound::PosInf => false,
            Bound::Finite(l) => s.cmp_finite(&l) == Some(Ordering::Greater),
        };
        let below = match self.hi {
            Bound::PosInf => true,
            Bound::NegInf => false,
            Bound::Finite(h) => s.cmp_finite(&h) == Some(Ordering::Less),
        };
        above && below
    }

    pub fn neg(&self) -> Self {
        SlopeInterval { lo: self.hi.neg(), hi: self.lo.neg() }
    }
}

impl fmt::Display for SlopeInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.lo, self.hi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_reduce() {
        assert_eq!("4/6".parse::<Slope>().unwrap(), Slope::new(2, 3).unwrap());
        assert_eq!("-3/-6".parse::<Slope>().unwrap().to_string(), "1/2");
        assert_eq!("2/-4".parse::<Slope>().unwrap().to_string(), "-1/2");
        assert_eq!("7".parse::<Slope>().unwrap().to_string(), "7");
        assert!("inf".parse::<Slope>().unwrap().is_infinite());
        assert!("5/0".parse::<Slope>().unwrap().is_infinite());
        assert_eq!("0/0".parse::<Slope>(), Err(SlopeError::ZeroOverZero));
        assert!("x".parse::<Slope>().is_err());
    }

    #[test]
    fn open_intervals() {
        let i = SlopeInterval::int(Some(-1), Some(1));
        assert!(i.contains(Slope::new(1, 2).unwrap()));
        assert!(!i.contains(Slope::integer(1)));
        assert!(!i.contains(Slope::integer(-1)));
        assert!(!i.contains(Slope::INFINITY));
        let j = SlopeInterval::int(Some(-1), None);
        assert_eq!(j.neg(), SlopeInterval::int(None, Some(1)));
    }

    #[test]
    fn reciprocal_membership() {
        let a = SlopeInterval::int(Some(-1), Some(1));
        for k in (-100i64..=100).filter(|&k| k != 0) {
            assert_eq!(a.contains(Slope::reciprocal_of(k)), k.abs() >= 2, "k = {k}");
        }
    }
}
