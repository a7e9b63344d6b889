use bonafide::families::FamilySpec;
use clap::{Args, ValueEnum};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum FamilyName {
    Vacuum,
    Thermal,
    TwoModeSqueezed,
    SimonVx,
    RandomPhysical,
    RandomSymmetric,
}

#[derive(Debug, Clone, Args)]
pub struct FamilyArgs {
    /// Matrix family.
    #[arg(long)]
    pub family: FamilyName,
    /// Parameter x of simon_vx (x > 0).
    #[arg(long)]
    pub x: Option<f64>,
    /// Squeezing r of two_mode_squeezed (r >= 0).
    #[arg(long)]
    pub r: Option<f64>,
    /// Symplectic eigenvalues of thermal, comma separated (each >= 1).
    #[arg(long, value_delimiter = ',')]
    pub nu: Vec<f64>,
    /// Seed of random_physical and random_symmetric.
    #[arg(long)]
    pub seed: Option<u64>,
}

fn required<T>(v: Option<T>, flag: &str, family: &str) -> Result<T, CliError> {
    v.ok_or_else(|| CliError::Usage(format!("{family} needs --{flag}")))
}

impl FamilyArgs {
    pub fn spec(&self) -> Result<FamilySpec, CliError> {
        Ok(match self.family {
            FamilyName::Vacuum => FamilySpec::Vacuum,
            FamilyName::Thermal => {
                if self.nu.is_empty() {
                    return Err(CliError::Usage("thermal needs --nu".into()));
                }
                FamilySpec::Thermal(self.nu.clone())
            }
            FamilyName::TwoModeSqueezed => {
                FamilySpec::TwoModeSqueezed(required(self.r, "r", "two_mode_squeezed")?)
            }
            FamilyName::SimonVx => FamilySpec::SimonVx(required(self.x, "x", "simon_vx")?),
            FamilyName::RandomPhysical => {
                FamilySpec::RandomPhysical(required(self.seed, "seed", "random_physical")?)
            }
            FamilyName::RandomSymmetric => {
                FamilySpec::RandomSymmetric(required(self.seed, "seed", "random_symmetric")?)
            }
        })
    }
}

/// The family member at sweep parameter `p`: `x` for simon_vx, `r` for
/// two_mode_squeezed, `ν` (both modes) for thermal, the seed for the random
/// families.
pub fn swept(name: FamilyName, p: f64) -> Result<FamilySpec, CliError> {
    let seed = || {
        if p >= 0.0 && p.fract() == 0.0 && p <= u64::MAX as f64 {
            Ok(p as u64)
        } else {
            Err(CliError::Usage(format!(
                "seed must be a nonnegative integer, got {p}"
            )))
        }
    };
    Ok(match name {
        FamilyName::Vacuum => {
            return Err(CliError::Usage("vacuum has no parameter to sweep".into()))
        }
        FamilyName::Thermal => FamilySpec::Thermal(vec![p, p]),
        FamilyName::TwoModeSqueezed => FamilySpec::TwoModeSqueezed(p),
        FamilyName::SimonVx => FamilySpec::SimonVx(p),
        FamilyName::RandomPhysical => FamilySpec::RandomPhysical(seed()?),
        FamilyName::RandomSymmetric => FamilySpec::RandomSymmetric(seed()?),
    })
}
