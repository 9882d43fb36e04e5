use std::fmt;

/// Label of a vertex `v` with respect to a set `S` that is of type I for `v`.
///
/// * `Zero`: `v` is in `S`.
/// * `One`, `Two`: `v` is outside `S` with one or two neighbors in `S`.
/// * `MinusOne`: `v` has no neighbor in `S` and each of its neighbors has
///   exactly one neighbor in `S`.
/// * `MinusTwo`: `v` has no neighbor in `S` and some neighbor of `v` has two.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    MinusTwo,
    MinusOne,
    Zero,
    One,
    Two,
}

impl Label {
    pub const ALL: [Label; 5] = [
        Label::MinusTwo,
        Label::MinusOne,
        Label::Zero,
        Label::One,
        Label::Two,
    ];

    /// Labels that finish a whole tree: the root is in `S` or dominated.
    pub const FINAL: [Label; 3] = [Label::Zero, Label::One, Label::Two];

    pub fn value(self) -> i8 {
        self.index() as i8 - 2
    }

    pub fn from_value(value: i8) -> Option<Label> {
        match value {
            -2..=2 => Some(Label::ALL[(value + 2) as usize]),
            _ => None,
        }
    }

    pub(crate) fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn values_round_trip() {
        for l in Label::ALL {
            assert_eq!(Label::from_value(l.value()), Some(l));
        }
        assert_eq!(Label::from_value(3), None);
        assert_eq!(Label::MinusTwo.value(), -2);
    }
}
