use std::fmt;
use std::ops::{Mul, Neg};

use serde::{Deserialize, Serialize};

use crate::field::Field;

/// A symbolic sign. Interpreted in a field only when arithmetic needs it,
/// so in characteristic two both values become `1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn is_plus(self) -> bool {
        self == Sign::Plus
    }

    pub fn from_parity(odd: bool) -> Self {
        if odd {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn to_elem<F: Field>(self, field: &F) -> F::Elem {
        match self {
            Sign::Plus => field.one(),
            Sign::Minus => -field.one(),
        }
    }

    /// The sign as seen by a field of the given characteristic.
    pub fn in_characteristic(self, characteristic: u64) -> Self {
        if characteristic == 2 {
            Sign::Plus
        } else {
            self
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Sign::Plus => "+",
            Sign::Minus => "\u{2212}",
        }
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Scalar};

    #[test]
    fn sign_algebra() {
        assert_eq!(Sign::Minus * Sign::Minus, Sign::Plus);
        assert_eq!(-Sign::Plus, Sign::Minus);
        assert_eq!(Sign::Minus.in_characteristic(2), Sign::Plus);
        let f2 = PrimeField::new(2).unwrap();
        assert!(Sign::Minus.to_elem(&f2).is_one());
    }
}
