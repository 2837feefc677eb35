use crate::rational::{format_rational, parse_rational, Rational};
use std::cmp::Ordering;
use std::fmt;

/// Extended rational: the codomain of requirements. Total order
/// MinusInf < Finite(q) < PlusInf.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ExtRational {
    MinusInf,
    Finite(Rational),
    PlusInf,
}

pub use ExtRational::{Finite, MinusInf, PlusInf};

impl ExtRational {
    pub fn is_finite(&self) -> bool {
        matches!(self, Finite(_))
    }

    pub fn as_finite(&self) -> Option<&Rational> {
        match self {
            Finite(q) => Some(q),
            _ => None,
        }
    }

    /// Subtracts a finite rational; infinities absorb.
    pub fn sub_finite(&self, d: &Rational) -> ExtRational {
        match self {
            MinusInf => MinusInf,
            PlusInf => PlusInf,
            Finite(q) => Finite(q - d),
        }
    }

    /// Adds a finite rational; infinities absorb.
    pub fn add_finite(&self, d: &Rational) -> ExtRational {
        match self {
            MinusInf => MinusInf,
            PlusInf => PlusInf,
            Finite(q) => Finite(q + d),
        }
    }

    pub fn max(self, other: ExtRational) -> ExtRational {
        if self >= other {
            self
        } else {
            other
        }
    }

    pub fn min(self, other: ExtRational) -> ExtRational {
        if self <= other {
            self
        } else {
            other
        }
    }

    /// Parses `int`, `int/int`, `-inf`, or `+inf`.
    pub fn parse(s: &str) -> Option<ExtRational> {
        match s {
            "-inf" => Some(MinusInf),
            "+inf" | "inf" => Some(PlusInf),
            _ => parse_rational(s).map(Finite),
        }
    }
}

impl PartialOrd for ExtRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtRational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (MinusInf, MinusInf) | (PlusInf, PlusInf) => Ordering::Equal,
            (MinusInf, _) | (_, PlusInf) => Ordering::Less,
            (_, MinusInf) | (PlusInf, _) => Ordering::Greater,
            (Finite(a), Finite(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for ExtRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MinusInf => write!(f, "-inf"),
            PlusInf => write!(f, "+inf"),
            Finite(q) => write!(f, "{}", format_rational(q)),
        }
    }
}

impl From<Rational> for ExtRational {
    fn from(q: Rational) -> Self {
        Finite(q)
    }
}
