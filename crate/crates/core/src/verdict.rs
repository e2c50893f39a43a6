//! Uniform outcome type shared by every criterion.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::config::MARGINAL_BAND;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Holds,
    Violated,
    Marginal,
}

impl Status {
    pub fn from_margin(margin: f64, band: f64) -> Status {
        if margin.is_nan() {
            Status::Violated
        } else if margin.abs() <= band {
            Status::Marginal
        } else if margin > 0.0 {
            Status::Holds
        } else {
            Status::Violated
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Holds => "holds",
            Status::Violated => "violated",
            Status::Marginal => "marginal",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Which set of states a criterion is necessary for, and therefore which classes a
/// violation rules out.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scope {
    /// Violation excludes class 3.
    FullSeparability,
    /// Violation excludes classes 3 and 2.8.
    BipartitionSeparability,
    /// Violation excludes classes 3, 2.8 and 2.1.
    Biseparability,
    /// Bears on the GHZ/W split only.
    Slocc,
}

/// Rényi order; `f64::INFINITY` is the min-entropy limit. Ordered by `total_cmp`.
#[derive(Debug, Clone, Copy)]
pub struct Alpha(f64);

impl Alpha {
    pub const INFINITY: Alpha = Alpha(f64::INFINITY);

    pub fn new(alpha: f64) -> Result<Alpha> {
        if alpha.is_nan() || alpha < 0.0 {
            return Err(Error::InvalidArgument(format!(
                "Renyi order must be >= 0, got {alpha}"
            )));
        }
        Ok(Alpha(alpha))
    }

    pub fn value(&self) -> f64 {
        self.0
    }

    /// The orders swept by default: `0, 1/4, 1/2, 3/4, 1, 2, 3, 4, 5, 10, 20, ∞`.
    pub fn sweep() -> Vec<Alpha> {
        [
            0.0,
            0.25,
            0.5,
            0.75,
            1.0,
            2.0,
            3.0,
            4.0,
            5.0,
            10.0,
            20.0,
            f64::INFINITY,
        ]
        .into_iter()
        .map(Alpha)
        .collect()
    }
}

impl PartialEq for Alpha {
    fn eq(&self, other: &Self) -> bool {
        self.0.total_cmp(&other.0) == Ordering::Equal
    }
}

impl Eq for Alpha {}

impl PartialOrd for Alpha {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Alpha {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0)
    }
}

impl std::hash::Hash for Alpha {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.0.to_bits().hash(state);
    }
}

impl fmt::Display for Alpha {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_infinite() {
            f.write_str("inf")
        } else {
            write!(f, "{}", self.0)
        }
    }
}

impl FromStr for Alpha {
    type Err = Error;

    fn from_str(s: &str) -> Result<Alpha> {
        match s.trim() {
            "inf" | "infinity" | "∞" => Ok(Alpha::INFINITY),
            t => {
                let v: f64 = t
                    .parse()
                    .map_err(|_| Error::InvalidArgument(format!("bad Renyi order {t:?}")))?;
                Alpha::new(v)
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Marginal {
    Rho1,
    Rho23,
}

impl Marginal {
    fn as_str(&self) -> &'static str {
        match self {
            Marginal::Rho1 => "rho1",
            Marginal::Rho23 => "rho23",
        }
    }
}

/// Measurement setting for the spin-observable criteria.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Setting {
    I,
    II,
    III,
    /// A sampled or user-supplied triad assignment.
    Custom,
}

impl Setting {
    pub const PUBLISHED: [Setting; 3] = [Setting::I, Setting::II, Setting::III];

    fn as_str(&self) -> &'static str {
        match self {
            Setting::I => "I",
            Setting::II => "II",
            Setting::III => "III",
            Setting::Custom => "custom",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SuLevel {
    /// Necessary for biseparability.
    TwoSep,
    /// Necessary for classes 2.8 and 3, with the 1/4 cap.
    TwoEightCapThree,
    /// Necessary for full separability, with the 1/16 cap.
    ThreeSep,
}

impl SuLevel {
    pub const ALL: [SuLevel; 3] = [
        SuLevel::TwoSep,
        SuLevel::TwoEightCapThree,
        SuLevel::ThreeSep,
    ];

    fn as_str(&self) -> &'static str {
        match self {
            SuLevel::TwoSep => "2sep",
            SuLevel::TwoEightCapThree => "28cap3",
            SuLevel::ThreeSep => "3sep",
        }
    }
}

/// Detection vector for the two-copy swap criterion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Detector {
    /// `|000111>`
    Ghz,
    /// `H^⊗6 |000111>`
    W,
    Custom,
}

impl Detector {
    fn as_str(&self) -> &'static str {
        match self {
            Detector::Ghz => "ghz",
            Detector::W => "w",
            Detector::Custom => "custom",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CriterionId {
    Majorization(Marginal),
    Entropy(Marginal, Alpha),
    Ppt,
    Reduction,
    Reshuffling24,
    Permutation222,
    Su(SuLevel, Setting),
    Huber(Detector, u8),
    Gs2,
    Gs3,
    WitnessGhz,
    WitnessW1,
    WitnessW2,
}

impl CriterionId {
    pub fn scope(&self) -> Scope {
        use CriterionId::*;
        match self {
            Majorization(_) | Entropy(..) | Ppt | Reduction | Reshuffling24 => {
                Scope::BipartitionSeparability
            }
            Permutation222 | Gs3 => Scope::FullSeparability,
            Su(SuLevel::TwoSep, _) | Huber(_, 2) | Gs2 | WitnessW1 | WitnessW2 => {
                Scope::Biseparability
            }
            Su(SuLevel::TwoEightCapThree, _) => Scope::BipartitionSeparability,
            Su(SuLevel::ThreeSep, _) | Huber(..) => Scope::FullSeparability,
            WitnessGhz => Scope::Slocc,
        }
    }
}

impl fmt::Display for CriterionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use CriterionId::*;
        match self {
            Majorization(m) => write!(f, "majorization_{}", m.as_str()),
            Entropy(m, a) => write!(f, "entropy_{}:{a}", m.as_str()),
            Ppt => f.write_str("ppt"),
            Reduction => f.write_str("reduction"),
            Reshuffling24 => f.write_str("reshuffling_24"),
            Permutation222 => f.write_str("permutation_222"),
            Su(level, setting) => write!(f, "su_{}:{}", level.as_str(), setting.as_str()),
            Huber(det, k) => write!(f, "huber_k{k}:{}", det.as_str()),
            Gs2 => f.write_str("gs2"),
            Gs3 => f.write_str("gs3"),
            WitnessGhz => f.write_str("witness_ghz"),
            WitnessW1 => f.write_str("witness_w1"),
            WitnessW2 => f.write_str("witness_w2"),
        }
    }
}

impl FromStr for CriterionId {
    type Err = Error;

    fn from_str(s: &str) -> Result<CriterionId> {
        use CriterionId::*;
        let bad = || Error::InvalidArgument(format!("unknown criterion id {s:?}"));
        let marginal = |m: &str| match m {
            "rho1" => Ok(Marginal::Rho1),
            "rho23" => Ok(Marginal::Rho23),
            _ => Err(bad()),
        };
        let (head, tail) = match s.split_once(':') {
            Some((h, t)) => (h, Some(t)),
            None => (s, None),
        };
        let id = match (head, tail) {
            ("ppt", None) => Ppt,
            ("reduction", None) => Reduction,
            ("reshuffling_24", None) => Reshuffling24,
            ("permutation_222", None) => Permutation222,
            ("gs2", None) => Gs2,
            ("gs3", None) => Gs3,
            ("witness_ghz", None) => WitnessGhz,
            ("witness_w1", None) => WitnessW1,
            ("witness_w2", None) => WitnessW2,
            (h, None) if h.starts_with("majorization_") => {
                Majorization(marginal(&h["majorization_".len()..])?)
            }
            (h, Some(a)) if h.starts_with("entropy_") => {
                Entropy(marginal(&h["entropy_".len()..])?, a.parse()?)
            }
            (h, Some(t)) if h.starts_with("su_") => {
                let level = match &h[3..] {
                    "2sep" => SuLevel::TwoSep,
                    "28cap3" => SuLevel::TwoEightCapThree,
                    "3sep" => SuLevel::ThreeSep,
                    _ => return Err(bad()),
                };
                let setting = match t {
                    "I" => Setting::I,
                    "II" => Setting::II,
                    "III" => Setting::III,
                    "custom" => Setting::Custom,
                    _ => return Err(bad()),
                };
                Su(level, setting)
            }
            (h, Some(t)) if h.starts_with("huber_k") => {
                let k: u8 = h["huber_k".len()..].parse().map_err(|_| bad())?;
                if k != 2 && k != 3 {
                    return Err(bad());
                }
                let det = match t {
                    "ghz" => Detector::Ghz,
                    "w" => Detector::W,
                    "custom" => Detector::Custom,
                    _ => return Err(bad()),
                };
                Huber(det, k)
            }
            _ => return Err(bad()),
        };
        Ok(id)
    }
}

impl Serialize for CriterionId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for CriterionId {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A named sub-inequality of an aggregate criterion.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Component {
    pub label: String,
    pub margin: f64,
}

/// Outcome of one criterion at one point. `margin > 0` is slack on the satisfied side.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriterionVerdict {
    pub id: CriterionId,
    pub status: Status,
    pub margin: f64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub components: Vec<Component>,
}

impl CriterionVerdict {
    pub fn new(id: CriterionId, margin: f64) -> Self {
        CriterionVerdict {
            id,
            status: Status::from_margin(margin, MARGINAL_BAND),
            margin,
            components: Vec::new(),
        }
    }

    /// Aggregate verdict whose margin is the smallest component margin.
    pub fn from_components(id: CriterionId, components: Vec<Component>) -> Self {
        let margin = components
            .iter()
            .map(|c| c.margin)
            .fold(f64::INFINITY, f64::min);
        CriterionVerdict {
            components,
            ..CriterionVerdict::new(id, margin)
        }
    }

    pub fn holds(&self) -> bool {
        self.status == Status::Holds
    }

    pub fn violated(&self) -> bool {
        self.status == Status::Violated
    }

    pub fn marginal(&self) -> bool {
        self.status == Status::Marginal
    }

    /// True unless strictly violated.
    pub fn not_violated(&self) -> bool {
        self.status != Status::Violated
    }
}

/// Sign of a closed-form slack, with the same marginal band as the numeric verdicts.
pub(crate) fn closed_form_status(slack: f64) -> Status {
    Status::from_margin(slack, MARGINAL_BAND)
}

/// Two statuses disagree only when one holds and the other is violated; a marginal side on
/// either end is compatible with anything.
pub(crate) fn statuses_conflict(a: Status, b: Status) -> bool {
    matches!(
        (a, b),
        (Status::Holds, Status::Violated) | (Status::Violated, Status::Holds)
    )
}
