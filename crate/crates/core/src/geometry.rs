//! Yagi-Uda geometry and the three tabulated design rules.
//!
//! Every rule is stored as absolute dimensions at 900 MHz and rescaled
//! linearly with wavelength. The antenna is modelled as six elements
//! (reflector, driven element, four directors); the boom runs along +x
//! with the reflector at the origin.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Propagation speed used throughout, in m/s.
pub const SPEED_OF_LIGHT: f64 = 2.998e8;

/// Frequency at which the design tables are tabulated.
pub const TABLE_FREQUENCY_HZ: f64 = 900e6;

/// Element diameter used when none is given (5 mm rod stock).
pub const DEFAULT_DIAMETER_M: f64 = 5e-3;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeometryError {
    #[error("frequency must be positive and finite, got {0} Hz")]
    InvalidFrequency(f64),
    #[error("element diameter must be positive and finite, got {0} m")]
    InvalidDiameter(f64),
    #[error("unknown design rule `{0}` (expected balanis, nbs688 or ycope)")]
    UnknownRule(String),
    #[error("malformed design file: {0}")]
    Format(String),
}

/// Free-space wavelength for `frequency_hz`.
pub fn wavelength(frequency_hz: f64) -> Result<f64, GeometryError> {
    if !(frequency_hz.is_finite() && frequency_hz > 0.0) {
        return Err(GeometryError::InvalidFrequency(frequency_hz));
    }
    Ok(SPEED_OF_LIGHT / frequency_hz)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrequencyPlan {
    pub f0: f64,
    pub c: f64,
    pub lambda: f64,
}

impl FrequencyPlan {
    pub fn new(f0: f64) -> Result<Self, GeometryError> {
        Ok(Self {
            f0,
            c: SPEED_OF_LIGHT,
            lambda: wavelength(f0)?,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ElementRole {
    Reflector,
    Driven,
    Director,
}

impl fmt::Display for ElementRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ElementRole::Reflector => "reflector",
            ElementRole::Driven => "driven",
            ElementRole::Director => "director",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DesignRule {
    #[serde(rename = "balanis")]
    Balanis,
    #[serde(rename = "nbs688")]
    Nbs688,
    #[serde(rename = "ycope")]
    Ycope,
}

impl DesignRule {
    pub const ALL: [DesignRule; 3] = [DesignRule::Balanis, DesignRule::Nbs688, DesignRule::Ycope];

    pub fn id(self) -> &'static str {
        match self {
            DesignRule::Balanis => "balanis",
            DesignRule::Nbs688 => "nbs688",
            DesignRule::Ycope => "ycope",
        }
    }

    /// Tabulated dimensions at 900 MHz, in metres.
    fn table(self) -> &'static RuleTable {
        match self {
            DesignRule::Balanis => &BALANIS,
            DesignRule::Nbs688 => &NBS688,
            DesignRule::Ycope => &YCOPE,
        }
    }
}

impl fmt::Display for DesignRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for DesignRule {
    type Err = GeometryError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "balanis" => Ok(DesignRule::Balanis),
            "nbs" | "nbs688" | "nbs-688" => Ok(DesignRule::Nbs688),
            "ycope" | "yc0pe" => Ok(DesignRule::Ycope),
            _ => Err(GeometryError::UnknownRule(s.to_string())),
        }
    }
}

struct RuleTable {
    /// Reflector, driven, D1, D2, D3. D4 repeats D3.
    lengths: [f64; 5],
    /// Consecutive gaps R-DE, DE-D1, D1-D2, D2-D3, D3-D4, then the boom
    /// overhang past D4.
    separations: [f64; 6],
}

const BALANIS: RuleTable = RuleTable {
    lengths: [0.167, 0.157, 0.147, 0.143, 0.140],
    separations: [0.083, 0.100, 0.110, 0.120, 0.130, 0.130],
};

const NBS688: RuleTable = RuleTable {
    lengths: [0.170, 0.160, 0.140, 0.130, 0.120],
    separations: [0.047, 0.050, 0.043, 0.092, 0.130, 0.130],
};

const YCOPE: RuleTable = RuleTable {
    lengths: [0.169, 0.158, 0.150, 0.143, 0.137],
    separations: [0.075, 0.042, 0.058, 0.075, 0.092, 0.133],
};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ElementSpec {
    pub role: ElementRole,
    pub length: f64,
    pub position: f64,
    pub diameter: f64,
}

impl ElementSpec {
    pub fn radius(&self) -> f64 {
        0.5 * self.diameter
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct YagiDesign {
    pub plan: FrequencyPlan,
    pub rule: DesignRule,
    pub elements: Vec<ElementSpec>,
    pub boom_length: f64,
}

impl YagiDesign {
    /// Index of the first driven element, if any.
    pub fn driven_index(&self) -> Option<usize> {
        self.elements
            .iter()
            .position(|e| e.role == ElementRole::Driven)
    }

    /// Serialize to the JSON design-file format.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&DesignFile::from(self)).expect("design serializes")
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(DesignFile::from(self)).expect("design serializes")
    }

    /// Parse a JSON design file. The result is not validated; call
    /// [`validate_design`] for the structural invariants.
    pub fn from_json(text: &str) -> Result<Self, GeometryError> {
        let file: DesignFile =
            serde_json::from_str(text).map_err(|e| GeometryError::Format(e.to_string()))?;
        file.try_into()
    }
}

/// Builds the six-element design for `rule`, scaled from 900 MHz to `f0`.
pub fn build_design(rule: DesignRule, f0: f64, diameter: f64) -> Result<YagiDesign, GeometryError> {
    if !(diameter.is_finite() && diameter > 0.0) {
        return Err(GeometryError::InvalidDiameter(diameter));
    }
    let plan = FrequencyPlan::new(f0)?;
    let scale = plan.lambda / wavelength(TABLE_FREQUENCY_HZ)?;
    let table = rule.table();

    let lengths = [
        table.lengths[0],
        table.lengths[1],
        table.lengths[2],
        table.lengths[3],
        table.lengths[4],
        table.lengths[4],
    ];
    let mut elements = Vec::with_capacity(lengths.len());
    let mut position = 0.0;
    for (i, &length) in lengths.iter().enumerate() {
        let role = match i {
            0 => ElementRole::Reflector,
            1 => ElementRole::Driven,
            _ => ElementRole::Director,
        };
        if i > 0 {
            position += table.separations[i - 1];
        }
        elements.push(ElementSpec {
            role,
            length: length * scale,
            position: position * scale,
            diameter,
        });
    }
    let boom_length = (position + table.separations[5]) * scale;

    Ok(YagiDesign {
        plan,
        rule,
        elements,
        boom_length,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DesignRuleCheck {
    Frequency,
    PositiveLength,
    PositiveDiameter,
    DiameterBelowLength,
    DrivenUnique,
    ReflectorUnique,
    RoleOrder,
    MonotoneTaper,
    PositionsIncreasing,
    BoomLength,
}

impl DesignRuleCheck {
    pub fn name(self) -> &'static str {
        match self {
            DesignRuleCheck::Frequency => "positive frequency",
            DesignRuleCheck::PositiveLength => "positive length",
            DesignRuleCheck::PositiveDiameter => "positive diameter",
            DesignRuleCheck::DiameterBelowLength => "diameter below length",
            DesignRuleCheck::DrivenUnique => "driven-element uniqueness",
            DesignRuleCheck::ReflectorUnique => "reflector uniqueness",
            DesignRuleCheck::RoleOrder => "role order (reflector first, driven second)",
            DesignRuleCheck::MonotoneTaper => "monotone taper",
            DesignRuleCheck::PositionsIncreasing => "strictly increasing positions",
            DesignRuleCheck::BoomLength => "boom covers all elements",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DesignViolation {
    pub rule: DesignRuleCheck,
    pub element: Option<usize>,
    pub detail: String,
}

impl fmt::Display for DesignViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.element {
            Some(i) => write!(f, "element {i}: {} violated: {}", self.rule.name(), self.detail),
            None => write!(f, "{} violated: {}", self.rule.name(), self.detail),
        }
    }
}

/// Checks every structural invariant of a design. Never fails; an empty
/// result means the design is valid.
pub fn validate_design(design: &YagiDesign) -> Vec<DesignViolation> {
    let mut out = Vec::new();
    let mut push = |rule, element, detail: String| {
        out.push(DesignViolation {
            rule,
            element,
            detail,
        })
    };

    let f0 = design.plan.f0;
    if !(f0.is_finite() && f0 > 0.0) {
        push(DesignRuleCheck::Frequency, None, format!("f0 = {f0} Hz"));
    }

    for (i, e) in design.elements.iter().enumerate() {
        if !(e.length.is_finite() && e.length > 0.0) {
            push(DesignRuleCheck::PositiveLength, Some(i), format!("length = {} m", e.length));
        }
        if !(e.diameter.is_finite() && e.diameter > 0.0) {
            push(
                DesignRuleCheck::PositiveDiameter,
                Some(i),
                format!("diameter = {} m", e.diameter),
            );
        } else if e.diameter >= e.length {
            push(
                DesignRuleCheck::DiameterBelowLength,
                Some(i),
                format!("diameter {} m >= length {} m", e.diameter, e.length),
            );
        }
    }

    let driven: Vec<usize> = indices_of(design, ElementRole::Driven);
    let reflectors: Vec<usize> = indices_of(design, ElementRole::Reflector);
    if driven.len() != 1 {
        push(
            DesignRuleCheck::DrivenUnique,
            driven.get(1).copied(),
            format!("{} driven elements, expected exactly 1", driven.len()),
        );
    }
    if reflectors.len() != 1 {
        push(
            DesignRuleCheck::ReflectorUnique,
            reflectors.get(1).copied(),
            format!("{} reflectors, expected exactly 1", reflectors.len()),
        );
    }
    if let Some(first) = design.elements.first() {
        if first.role != ElementRole::Reflector && reflectors.len() == 1 {
            push(
                DesignRuleCheck::RoleOrder,
                Some(0),
                format!("first element is a {}", first.role),
            );
        }
    }
    if let Some(second) = design.elements.get(1) {
        if second.role != ElementRole::Driven && driven.len() == 1 {
            push(
                DesignRuleCheck::RoleOrder,
                Some(1),
                format!("second element is a {}", second.role),
            );
        }
    }

    if let (Some(&r), Some(&d)) = (reflectors.first(), driven.first()) {
        let reflector = design.elements[r].length;
        let driven_len = design.elements[d].length;
        if reflector <= driven_len {
            push(
                DesignRuleCheck::MonotoneTaper,
                Some(r),
                format!("reflector {reflector} m not longer than driven {driven_len} m"),
            );
        }
        for (i, e) in design.elements.iter().enumerate() {
            if e.role == ElementRole::Director && e.length >= driven_len {
                push(
                    DesignRuleCheck::MonotoneTaper,
                    Some(i),
                    format!("director {} m not shorter than driven {driven_len} m", e.length),
                );
            }
        }
    }

    for (i, pair) in design.elements.windows(2).enumerate() {
        if pair[1].position <= pair[0].position {
            push(
                DesignRuleCheck::PositionsIncreasing,
                Some(i + 1),
                format!("position {} m after {} m", pair[1].position, pair[0].position),
            );
        }
    }

    if let Some(last) = design.elements.last() {
        if design.boom_length < last.position {
            push(
                DesignRuleCheck::BoomLength,
                None,
                format!("boom {} m shorter than last position {} m", design.boom_length, last.position),
            );
        }
    }

    out
}

fn indices_of(design: &YagiDesign, role: ElementRole) -> Vec<usize> {
    design
        .elements
        .iter()
        .enumerate()
        .filter(|(_, e)| e.role == role)
        .map(|(i, _)| i)
        .collect()
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DesignFile {
    frequency_hz: f64,
    rule: DesignRule,
    elements: Vec<ElementFile>,
    boom_length_m: f64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ElementFile {
    role: ElementRole,
    length_m: f64,
    position_m: f64,
    diameter_m: f64,
}

impl From<&YagiDesign> for DesignFile {
    fn from(d: &YagiDesign) -> Self {
        DesignFile {
            frequency_hz: d.plan.f0,
            rule: d.rule,
            elements: d
                .elements
                .iter()
                .map(|e| ElementFile {
                    role: e.role,
                    length_m: e.length,
                    position_m: e.position,
                    diameter_m: e.diameter,
                })
                .collect(),
            boom_length_m: d.boom_length,
        }
    }
}

impl TryFrom<DesignFile> for YagiDesign {
    type Error = GeometryError;

    fn try_from(file: DesignFile) -> Result<Self, Self::Error> {
        Ok(YagiDesign {
            plan: FrequencyPlan::new(file.frequency_hz)?,
            rule: file.rule,
            elements: file
                .elements
                .into_iter()
                .map(|e| ElementSpec {
                    role: e.role,
                    length: e.length_m,
                    position: e.position_m,
                    diameter: e.diameter_m,
                })
                .collect(),
            boom_length: file.boom_length_m,
        })
    }
}
