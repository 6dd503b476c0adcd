//! Partitions σ of the set of all primes.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::primes;

/// Identifier of one block σ_i.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BlockId {
    /// The i-th listed block.
    Listed(usize),
    /// The implicit block holding every prime not listed.
    Rest,
    /// The singleton block `{p}` of the classical partition σ¹.
    Prime(u64),
}

impl fmt::Display for BlockId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BlockId::Listed(i) => write!(f, "block{}", i + 1),
            BlockId::Rest => f.write_str("rest"),
            BlockId::Prime(p) => write!(f, "{{{}}}", p),
        }
    }
}

/// A partition of all primes: finitely many listed blocks plus an implicit rest block,
/// or the classical partition σ¹ in which every prime is its own block.
///
/// Listed blocks are kept sorted (primes ascending, blocks by least prime), so two
/// partitions compare equal exactly when they have the same blocks.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SigmaPartition {
    Classical,
    Blocks(Vec<BTreeSet<u64>>),
}

impl SigmaPartition {
    pub fn classical() -> Self {
        SigmaPartition::Classical
    }

    pub fn from_blocks(blocks: Vec<BTreeSet<u64>>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for b in &blocks {
            if b.is_empty() {
                return Err(Error::input("σ blocks must be nonempty"));
            }
            for &p in b {
                if !primes::is_prime(p) {
                    return Err(Error::input(format!("{} is not a prime", p)));
                }
                if !seen.insert(p) {
                    return Err(Error::input(format!("prime {} appears in two blocks", p)));
                }
            }
        }
        let mut blocks = blocks;
        blocks.sort_by_key(|b| *b.iter().next().unwrap());
        Ok(SigmaPartition::Blocks(blocks))
    }

    pub fn is_classical(&self) -> bool {
        matches!(self, SigmaPartition::Classical)
    }

    pub fn listed_blocks(&self) -> &[BTreeSet<u64>] {
        match self {
            SigmaPartition::Classical => &[],
            SigmaPartition::Blocks(b) => b,
        }
    }

    pub fn block_of(&self, p: u64) -> BlockId {
        match self {
            SigmaPartition::Classical => BlockId::Prime(p),
            SigmaPartition::Blocks(blocks) => blocks
                .iter()
                .position(|b| b.contains(&p))
                .map(BlockId::Listed)
                .unwrap_or(BlockId::Rest),
        }
    }

    pub fn in_block(&self, p: u64, block: BlockId) -> bool {
        self.block_of(p) == block
    }

    /// `σ(n)`: the blocks meeting `π(n)`.
    pub fn sigma_of(&self, n: u64) -> BTreeSet<BlockId> {
        primes::prime_divisors(n)
            .into_iter()
            .map(|p| self.block_of(p))
            .collect()
    }

    /// The primes of `n` lying in `block`.
    pub fn block_primes(&self, n: u64, block: BlockId) -> BTreeSet<u64> {
        primes::prime_divisors(n)
            .into_iter()
            .filter(|&p| self.block_of(p) == block)
            .collect()
    }

    /// The `σ_i`-part of `n`.
    pub fn part(&self, n: u64, block: BlockId) -> u64 {
        primes::part_of(n, |p| self.block_of(p) == block)
    }

    /// Whether `n` is a `σ_i`-number.
    pub fn is_block_number(&self, n: u64, block: BlockId) -> bool {
        primes::is_number_of(n, |p| self.block_of(p) == block)
    }

    /// Whether every σ-block agrees with σ¹ on the given primes (each prime alone).
    pub fn is_classical_on(&self, pi: &BTreeSet<u64>) -> bool {
        pi.iter().all(|&p| {
            pi.iter()
                .all(|&q| p == q || self.block_of(p) != self.block_of(q))
        })
    }

    /// Whether every block of `self`, restricted to `pi`, lies inside a block of `coarser`.
    pub fn refines_on(&self, coarser: &SigmaPartition, pi: &BTreeSet<u64>) -> bool {
        pi.iter().all(|&p| {
            pi.iter().all(|&q| {
                self.block_of(p) != self.block_of(q) || coarser.block_of(p) == coarser.block_of(q)
            })
        })
    }
}

impl fmt::Display for SigmaPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SigmaPartition::Classical => f.write_str("sigma1"),
            SigmaPartition::Blocks(blocks) if blocks.is_empty() => f.write_str("rest"),
            SigmaPartition::Blocks(blocks) => {
                for b in blocks {
                    let ps: Vec<String> = b.iter().map(|p| p.to_string()).collect();
                    write!(f, "[{}]", ps.join(","))?;
                }
                Ok(())
            }
        }
    }
}

/// Accepts `sigma1`, `rest` (no listed blocks), or bracketed blocks like `[2,3][5]`.
impl FromStr for SigmaPartition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("sigma1") {
            return Ok(SigmaPartition::Classical);
        }
        if s.is_empty() || s.eq_ignore_ascii_case("rest") {
            return Ok(SigmaPartition::Blocks(Vec::new()));
        }
        let mut blocks = Vec::new();
        let mut rest = s;
        while !rest.is_empty() {
            let open = rest
                .strip_prefix('[')
                .ok_or_else(|| Error::input(format!("expected '[' in partition '{}'", s)))?;
            let close = open
                .find(']')
                .ok_or_else(|| Error::input(format!("unterminated block in partition '{}'", s)))?;
            let block = open[..close]
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.parse::<u64>()
                        .map_err(|_| Error::input(format!("bad prime '{}' in partition", t)))
                })
                .collect::<Result<BTreeSet<u64>>>()?;
            blocks.push(block);
            rest = open[close + 1..].trim_start();
        }
        SigmaPartition::from_blocks(blocks)
    }
}

impl Serialize for SigmaPartition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}
