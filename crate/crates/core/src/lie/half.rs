use std::fmt;
use std::str::FromStr;

use crate::error::GameError;

/// Non-negative multiple of 1/2, stored as twice its value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfInteger(u32);

impl HalfInteger {
    pub const fn from_twice(twice: u32) -> Self {
        Self(twice)
    }

    pub fn twice(self) -> u32 {
        self.0
    }

    pub fn value(self) -> f64 {
        self.0 as f64 / 2.0
    }

    pub fn try_from_f64(value: f64) -> Result<Self, GameError> {
        let twice = 2.0 * value;
        if !value.is_finite() || value < 0.0 || twice.fract() != 0.0 || twice > u32::MAX as f64 {
            return Err(GameError::Representation(format!(
                "κ must be half-integer (0, 1/2, 1, …), got {value}"
            )));
        }
        Ok(Self(twice as u32))
    }
}

impl FromStr for HalfInteger {
    type Err = GameError;

    /// Accepts `3/2`, `1.5` or `2`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || GameError::Representation(format!("κ must be half-integer (0, 1/2, 1, …), got {s}"));
        if let Some((num, den)) = s.split_once('/') {
            let num: u32 = num.trim().parse().map_err(|_| bad())?;
            match den.trim() {
                "1" => num.checked_mul(2).map(Self).ok_or_else(bad),
                "2" => Ok(Self(num)),
                _ => Err(bad()),
            }
        } else {
            let v: f64 = s.parse().map_err(|_| bad())?;
            Self::try_from_f64(v).map_err(|_| bad())
        }
    }
}

impl fmt::Display for HalfInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_multiple_of(2) {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_both_notations() {
        assert_eq!("3/2".parse::<HalfInteger>().unwrap().twice(), 3);
        assert_eq!("1.5".parse::<HalfInteger>().unwrap().twice(), 3);
        assert_eq!("2".parse::<HalfInteger>().unwrap().twice(), 4);
        assert_eq!("4/1".parse::<HalfInteger>().unwrap().twice(), 8);
    }

    #[test]
    fn rejects_non_half_integers() {
        for bad in ["0.3", "1/3", "-1/2", "x", "nan", "-1"] {
            assert!(matches!(bad.parse::<HalfInteger>(), Err(GameError::Representation(_))), "{bad}");
        }
    }

    #[test]
    fn display() {
        assert_eq!(HalfInteger::from_twice(3).to_string(), "3/2");
        assert_eq!(HalfInteger::from_twice(4).to_string(), "2");
    }
}
