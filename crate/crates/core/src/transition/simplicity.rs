use std::fmt;

use super::record::{TransitionRecord, TypeTag, WitnessStatus};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Rule {
    R1,
    R2,
    R3,
    R4,
    R5,
    R6,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Simple { rule: Rule, reason: String },
    NotSimple { rule: Rule, reason: String },
    Unknown { missing: Vec<String> },
}

impl Verdict {
    pub fn rule(&self) -> Rule {
        match self {
            Verdict::Simple { rule, .. } | Verdict::NotSimple { rule, .. } => *rule,
            Verdict::Unknown { .. } => Rule::R6,
        }
    }

    pub fn is_simple(&self) -> bool {
        matches!(self, Verdict::Simple { .. })
    }

    /// `Simple`, `NotSimple` or `Unknown`.
    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Simple { .. } => "Simple",
            Verdict::NotSimple { .. } => "NotSimple",
            Verdict::Unknown { .. } => "Unknown",
        }
    }

    pub fn parse_label(s: &str) -> Option<Verdict> {
        match s {
            "Simple" => Some(Verdict::Simple {
                rule: Rule::R1,
                reason: String::new(),
            }),
            "NotSimple" => Some(Verdict::NotSimple {
                rule: Rule::R2,
                reason: String::new(),
            }),
            "Unknown" => Some(Verdict::Unknown { missing: Vec::new() }),
            _ => None,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Simple { reason, .. } => write!(f, "Simple: {reason}"),
            Verdict::NotSimple { reason, .. } => write!(f, "NotSimple: {reason}"),
            Verdict::Unknown { missing } => write!(f, "Unknown: missing {}", missing.join(", ")),
        }
    }
}

/// First matching rule wins:
///
/// 1. conifold transitions are simple;
/// 2. type II transitions are never simple;
/// 3. a change of fundamental group between `Y` and `Ỹ` rules simplicity out;
/// 4. a small transition with `h^1(Θ_Ȳ) ≥ h^1(Θ_Y)` is not simple;
/// 5. a verified splitting-family witness makes it simple;
/// 6. otherwise the verdict is unknown.
///
/// A witness counts only after [`TransitionRecord::verify_witness`].
pub fn decide_simplicity(t: &TransitionRecord) -> Verdict {
    let not = |rule, reason: &str| Verdict::NotSimple {
        rule,
        reason: reason.to_string(),
    };
    match t.type_tag {
        TypeTag::Conifold => {
            return Verdict::Simple {
                rule: Rule::R1,
                reason: "conifold is simple by definition".into(),
            }
        }
        TypeTag::TypeII => return not(Rule::R2, "type II never simple"),
        _ => {}
    }
    let pi1_y = t.pi1_of_resolution();
    let pi1_t = t.smoothing.pi1.as_deref();
    if let (Some(a), Some(b)) = (pi1_y, pi1_t) {
        if a != b {
            return not(Rule::R3, "simple transitions preserve fundamental group");
        }
    }
    if t.type_tag == TypeTag::Small {
        if let Some((bar, y)) = t.h1_theta_pair {
            if bar >= y {
                return not(Rule::R4, "violates necessary cohomological condition");
            }
        }
    }
    if t.witness_status() == Some(WitnessStatus::Verified) {
        return Verdict::Simple {
            rule: Rule::R5,
            reason: "explicit def-equivalence to conifold".into(),
        };
    }
    let mut missing = Vec::new();
    if pi1_y.is_none() || pi1_t.is_none() {
        missing.push("fundamental-group labels of Y and the smoothing".to_string());
    }
    if t.type_tag == TypeTag::Small && t.h1_theta_pair.is_none() {
        missing.push("h1(Θ) pair".to_string());
    }
    missing.push(match t.witness_status() {
        None => "splitting-family witness".to_string(),
        Some(WitnessStatus::Unchecked) => "verification of the splitting-family witness".to_string(),
        Some(_) => "a splitting-family witness that verifies".to_string(),
    });
    Verdict::Unknown { missing }
}

/// `h^1(Θ_Y) − h^1(Θ_Ȳ)`, the dimension of the image of `λ` forced by the
/// exact sequence `0 → H^1(Θ_Ȳ) → T^1_Y → H^0(R^1φ_*Θ_Y)`.
pub fn dim_image_lambda(pair: (u64, u64)) -> Result<u64> {
    let (bar, y) = pair;
    y.checked_sub(bar).ok_or_else(|| {
        Error::Inconsistent(format!(
            "h1(Θ) pair ({bar}, {y}) would make H^1(Θ_Ybar) larger than T^1_Y"
        ))
    })
}

pub fn dim_image_lambda_report(t: &TransitionRecord) -> Result<Option<u64>> {
    t.h1_theta_pair.map(dim_image_lambda).transpose()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lambda() {
        assert_eq!(dim_image_lambda((17, 18)).unwrap(), 1);
        assert_eq!(dim_image_lambda((3, 3)).unwrap(), 0);
        assert!(dim_image_lambda((5, 3)).is_err());
    }

    #[test]
    fn verdict_text() {
        let v = Verdict::NotSimple {
            rule: Rule::R4,
            reason: "violates necessary cohomological condition".into(),
        };
        assert_eq!(v.to_string(), "NotSimple: violates necessary cohomological condition");
        assert_eq!(Verdict::parse_label("Unknown").unwrap().label(), "Unknown");
    }
}
