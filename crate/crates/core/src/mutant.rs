//! Deliberate faults that can be switched into the constructions and
//! oracles, to check that the verification suites notice them.

use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Mutant {
    #[default]
    None,
    /// The top-left block of the equivalence matrix is `1_A` instead of
    /// `1_A ∪ R°R`.
    DropRoRBlock,
    /// The decomposed pipeline hands the amalgamation step the stage-one
    /// legs directly, without the refactorisation that produces the monic
    /// leg `g′2` and without any monicity check on the amalgamated legs.
    SkipG2MonoCheck,
    /// Generated equivalences are closed reflexively and transitively but not
    /// symmetrically before quotienting.
    AsymmetricClosure,
    /// Pointed pushouts are computed with the apex basepoint removed, so the
    /// two basepoints are not glued.
    DropBasepointIdentification,
}

impl Mutant {
    pub const ALL: [Mutant; 4] = [
        Mutant::DropRoRBlock,
        Mutant::SkipG2MonoCheck,
        Mutant::AsymmetricClosure,
        Mutant::DropBasepointIdentification,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Mutant::None => "none",
            Mutant::DropRoRBlock => "drop-RoR-block",
            Mutant::SkipG2MonoCheck => "skip-g2-mono-check",
            Mutant::AsymmetricClosure => "asymmetric-closure",
            Mutant::DropBasepointIdentification => "drop-basepoint-identification",
        }
    }
}

impl fmt::Display for Mutant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Mutant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        std::iter::once(Mutant::None)
            .chain(Mutant::ALL)
            .find(|m| m.name() == s)
            .ok_or_else(|| {
                let known: Vec<_> = Mutant::ALL.iter().map(|m| m.name()).collect();
                format!("unknown mutant `{s}` (known: {})", known.join(", "))
            })
    }
}
