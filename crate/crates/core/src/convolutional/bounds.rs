use std::fmt;

use serde::{Serialize, Serializer};

/// `(n - k)(⌊γ/k⌋ + 1) + γ + 1`; requires `k ≥ 1`.
pub fn generalized_singleton(n: usize, k: usize, gamma: usize) -> usize {
    assert!(k >= 1, "generalized Singleton bound needs k >= 1");
    (n - k) * (gamma / k + 1) + gamma + 1
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DefectClass {
    Mds,
    NearMds,
    AlmostNearMds,
    Other(usize),
}

impl DefectClass {
    pub fn from_defect(defect: usize) -> Self {
        match defect {
            0 => Self::Mds,
            1 => Self::NearMds,
            2 => Self::AlmostNearMds,
            d => Self::Other(d),
        }
    }
}

impl fmt::Display for DefectClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Mds => f.write_str("MDS"),
            Self::NearMds => f.write_str("near-MDS"),
            Self::AlmostNearMds => f.write_str("almost-near-MDS"),
            Self::Other(d) => write!(f, "defect-{d}"),
        }
    }
}

impl Serialize for DefectClass {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Defect `bound - d_f` over an interval of possible `d_f` values. `class`
/// is set only when the interval pins the defect down.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DefectInterval {
    pub min: usize,
    pub max: usize,
    pub class: Option<DefectClass>,
}

/// Defect range for `d_f ∈ [df_lower, df_upper]`, clipped to the bound.
pub fn classify_defect(bound: usize, df_lower: usize, df_upper: usize) -> DefectInterval {
    let min = bound.saturating_sub(df_upper);
    let max = bound.saturating_sub(df_lower);
    DefectInterval {
        min,
        max,
        class: (min == max).then(|| DefectClass::from_defect(min)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bound_values() {
        assert_eq!(generalized_singleton(8, 2, 1), 8);
        assert_eq!(generalized_singleton(32, 15, 1), 19);
        // γ = 0 gives the block bound.
        assert_eq!(generalized_singleton(8, 3, 0), 6);
        assert_eq!(generalized_singleton(4, 1, 2), 3 * 3 + 3);
    }

    #[test]
    fn classes() {
        assert_eq!(classify_defect(8, 7, 7).class, Some(DefectClass::NearMds));
        let iv = classify_defect(19, 15, 19);
        assert_eq!((iv.min, iv.max, iv.class), (0, 4, None));
        assert_eq!(DefectClass::from_defect(5).to_string(), "defect-5");
        assert_eq!(DefectClass::AlmostNearMds.to_string(), "almost-near-MDS");
    }
}
