//! Family names and parameters as accepted on the command line.

use eurb::{states, DensityMatrix64};

use crate::args::{Family, StateArgs};
use crate::CliError;

/// A fully specified member of one of the state families.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StateSpec {
    Werner { p: f64 },
    PureEntangled { alpha: f64 },
    BellDiagonal { p: f64 },
    MixedMarginal { cx: f64, cy: f64, cz: f64 },
    Classical { p: f64 },
}

impl Family {
    pub fn params(self) -> &'static [&'static str] {
        match self {
            Family::Werner | Family::Bd | Family::Classical => &["p"],
            Family::Pe => &["alpha"],
            Family::Mm => &["cx", "cy", "cz"],
        }
    }
}

const ALL_PARAMS: [&str; 5] = ["p", "alpha", "cx", "cy", "cz"];

impl StateArgs {
    fn get(&self, name: &str) -> Option<f64> {
        match name {
            "p" => self.p,
            "alpha" => self.alpha,
            "cx" => self.cx,
            "cy" => self.cy,
            "cz" => self.cz,
            _ => None,
        }
    }

    /// Resolves the flags into a state, with `free` naming a parameter
    /// supplied separately (by a sweep) rather than by its flag.
    pub fn resolve(&self, free: Option<(&str, f64)>) -> Result<StateSpec, CliError> {
        let family = self.state;
        let wanted = family.params();
        for name in ALL_PARAMS {
            if self.get(name).is_some() && !wanted.contains(&name) {
                return Err(CliError::Usage(format!("--{name} does not apply to --state {family}")));
            }
        }
        if let Some((name, _)) = free {
            if !wanted.contains(&name) {
                return Err(CliError::Usage(format!(
                    "--state {family} has no parameter {name:?} (expected one of {})",
                    wanted.join(", ")
                )));
            }
            if self.get(name).is_some() {
                return Err(CliError::Usage(format!("--{name} is swept and must not also be given")));
            }
        }
        let value = |name: &str| -> Result<f64, CliError> {
            match free {
                Some((n, v)) if n == name => Ok(v),
                _ => self
                    .get(name)
                    .ok_or_else(|| CliError::Usage(format!("--state {family} requires --{name}"))),
            }
        };
        let spec = match family {
            Family::Werner => StateSpec::Werner { p: value("p")? },
            Family::Pe => StateSpec::PureEntangled { alpha: value("alpha")? },
            Family::Bd => StateSpec::BellDiagonal { p: value("p")? },
            Family::Classical => StateSpec::Classical { p: value("p")? },
            Family::Mm => StateSpec::MixedMarginal { cx: value("cx")?, cy: value("cy")?, cz: value("cz")? },
        };
        Ok(spec)
    }

    /// Flag string for everything except `skip`.
    pub fn canonical(&self, skip: Option<&str>) -> String {
        let mut out = format!("--state {}", self.state);
        for name in self.state.params() {
            if Some(*name) == skip {
                continue;
            }
            if let Some(v) = self.get(name) {
                out.push_str(&format!(" --{name} {v}"));
            }
        }
        out
    }
}

impl StateSpec {
    pub fn build(&self) -> Result<DensityMatrix64, CliError> {
        let built = match *self {
            StateSpec::Werner { p } => states::werner(p),
            StateSpec::PureEntangled { alpha } => states::pure_entangled(alpha),
            StateSpec::BellDiagonal { p } => states::bell_diagonal(p),
            StateSpec::MixedMarginal { cx, cy, cz } => states::mixed_marginal(cx, cy, cz),
            StateSpec::Classical { p } => states::classical_state(p),
        };
        built.map_err(|e| CliError::Usage(e.to_string()))
    }

    /// Short label without commas, safe for a CSV cell.
    pub fn label(&self) -> String {
        match *self {
            StateSpec::Werner { p } => format!("werner(p={p})"),
            StateSpec::PureEntangled { alpha } => format!("pe(alpha={alpha})"),
            StateSpec::BellDiagonal { p } => format!("bd(p={p})"),
            StateSpec::MixedMarginal { cx, cy, cz } => format!("mm(cx={cx};cy={cy};cz={cz})"),
            StateSpec::Classical { p } => format!("classical(p={p})"),
        }
    }
}
