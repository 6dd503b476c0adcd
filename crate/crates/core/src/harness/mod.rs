//! Statement verifiers over concrete `(G, σ)` pairs, campaigns over a corpus, and the
//! report they produce.
//!
//! The covering statements have the form "if Σ contains a supplement to each maximal
//! subgroup of every Sylow subgroup and Σ ⊆ F, then G ∈ F". Quantifying over every Σ
//! is not finite, so the verifiers check the equivalent contrapositive: when G ∉ F
//! there is a maximal subgroup V of some Sylow subgroup all of whose supplements lie
//! outside F. Were there none, picking one supplement in F per V would give a Σ ⊆ F
//! with G ∉ F, and that choice is the counterexample witness.

mod campaign;
mod validate;
mod verify;

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::sigma::SigmaPartition;

pub use campaign::{campaign_sigmas, run_campaign, CampaignConfig, Report, Summary, SummaryRow};
pub use validate::validate_witness;
pub use verify::{
    search_lemma_2_5_converse, verify, verify_cor_1_1, verify_cor_1_2, verify_lemma_2_1,
    verify_lemma_2_2, verify_lemma_2_2_blocks, verify_lemma_2_3, verify_lemma_2_4,
    verify_lemma_2_5_converse, verify_lemma_2_5_forward, verify_theorem_a,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StatementId {
    ThmAI,
    ThmAII,
    ThmAIII,
    Cor11,
    Cor12,
    Lem21,
    Lem22,
    Lem23,
    Lem24,
    Lem25Fwd,
    Lem25Conv,
}

impl StatementId {
    pub const ALL: [StatementId; 11] = [
        StatementId::ThmAI,
        StatementId::ThmAII,
        StatementId::ThmAIII,
        StatementId::Cor11,
        StatementId::Cor12,
        StatementId::Lem21,
        StatementId::Lem22,
        StatementId::Lem23,
        StatementId::Lem24,
        StatementId::Lem25Fwd,
        StatementId::Lem25Conv,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            StatementId::ThmAI => "ThmA.i",
            StatementId::ThmAII => "ThmA.ii",
            StatementId::ThmAIII => "ThmA.iii",
            StatementId::Cor11 => "Cor1.1",
            StatementId::Cor12 => "Cor1.2",
            StatementId::Lem21 => "Lem2.1",
            StatementId::Lem22 => "Lem2.2",
            StatementId::Lem23 => "Lem2.3",
            StatementId::Lem24 => "Lem2.4",
            StatementId::Lem25Fwd => "Lem2.5.fwd",
            StatementId::Lem25Conv => "Lem2.5.conv",
        }
    }

    /// The class a covering statement is about, if it is one.
    pub fn class(self) -> Option<ClassSelector> {
        match self {
            StatementId::ThmAI => Some(ClassSelector::Soluble),
            StatementId::ThmAII => Some(ClassSelector::Nilpotent),
            StatementId::ThmAIII | StatementId::Cor11 | StatementId::Cor12 => {
                Some(ClassSelector::SolublePsigmaT)
            }
            _ => None,
        }
    }
}

impl fmt::Display for StatementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.as_str())
    }
}

impl FromStr for StatementId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        StatementId::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| {
                let known: Vec<&str> = StatementId::ALL.iter().map(|id| id.as_str()).collect();
                Error::input(format!(
                    "unknown statement '{}' (known: {})",
                    s,
                    known.join(", ")
                ))
            })
    }
}

impl Serialize for StatementId {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.as_str())
    }
}

/// The class F of a covering statement.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ClassSelector {
    Soluble,
    Nilpotent,
    SolublePsigmaT,
}

impl ClassSelector {
    pub fn statement(self) -> StatementId {
        match self {
            ClassSelector::Soluble => StatementId::ThmAI,
            ClassSelector::Nilpotent => StatementId::ThmAII,
            ClassSelector::SolublePsigmaT => StatementId::ThmAIII,
        }
    }
}

impl fmt::Display for ClassSelector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ClassSelector::Soluble => "σ-soluble",
            ClassSelector::Nilpotent => "σ-nilpotent",
            ClassSelector::SolublePsigmaT => "σ-soluble PσT",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Confirmed,
    Counterexample,
    Skipped,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Confirmed => "confirmed",
            Verdict::Counterexample => "counterexample",
            Verdict::Skipped => "skipped",
        })
    }
}

/// A subgroup as it appears in reports: its order and generators in cycle notation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubgroupRef {
    pub order: u64,
    pub generators: Vec<String>,
}

/// Structured evidence attached to an outcome.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// A maximal subgroup of a Sylow subgroup none of whose supplements is in the class.
    UncoveredMaximal {
        prime: u64,
        sylow: SubgroupRef,
        maximal: SubgroupRef,
        supplements: Vec<SubgroupRef>,
    },
    /// One supplement in the class for each maximal subgroup of each Sylow subgroup,
    /// while the group itself is outside the class.
    CoveringChoice {
        covers: Vec<Cover>,
    },
    /// A subgroup that is not a D_{σ_i}-group although the group is σ-soluble.
    FullSylowFailure {
        subgroup: SubgroupRef,
        block: String,
    },
    /// Per-π evaluation of both sides of the separability criterion.
    Separability {
        cases: Vec<SeparabilityCase>,
    },
    ClosureFailure {
        property: String,
        subgroups: Vec<SubgroupRef>,
    },
    ResidualQuotient {
        normal: SubgroupRef,
        quotient_residual: SubgroupRef,
        projected_residual: SubgroupRef,
    },
    ResidualSplitting(SplittingFacts),
    ConversePairs {
        pairs_checked: usize,
        residual: Option<SubgroupRef>,
        complement: Option<SubgroupRef>,
        violation: Option<TransitivityFailure>,
    },
    TransitivityFailure(TransitivityFailure),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Cover {
    pub prime: u64,
    pub maximal: SubgroupRef,
    pub supplement: SubgroupRef,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeparabilityCase {
    pub pi: Vec<u64>,
    pub separable: bool,
    pub hall_conditions: bool,
}

/// `K` σ-permutable in `H`, `H` σ-permutable in `G`, `K` not σ-permutable in `G`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TransitivityFailure {
    pub inner: SubgroupRef,
    pub middle: SubgroupRef,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SplittingFacts {
    pub residual: SubgroupRef,
    pub complement: Option<SubgroupRef>,
    pub abelian: bool,
    pub hall: bool,
    pub odd_order: bool,
    pub power_automorphisms: bool,
    /// For every block some Hall σ_i-subgroup contains a normal complement to O_{σ_i}(D).
    pub condition_ii_exists: bool,
    /// The same holds for every Hall σ_i-subgroup.
    pub condition_ii_all: bool,
}

impl SplittingFacts {
    pub fn condition_i(&self) -> bool {
        self.complement.is_some()
            && self.abelian
            && self.hall
            && self.odd_order
            && self.power_automorphisms
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationOutcome {
    pub statement_id: StatementId,
    pub group: String,
    pub sigma: SigmaPartition,
    pub verdict: Verdict,
    /// The hypothesis did not apply, so the statement held trivially.
    pub vacuous: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub witness: Option<Witness>,
    pub millis: Option<u64>,
}

impl VerificationOutcome {
    pub fn is_counterexample(&self) -> bool {
        self.verdict == Verdict::Counterexample
    }

    /// Confirmed with the hypothesis actually exercised.
    pub fn is_substantive(&self) -> bool {
        self.verdict == Verdict::Confirmed && !self.vacuous
    }
}
