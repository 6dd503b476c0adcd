//! Named groups: the builtin catalog, the line-oriented corpus file format, and
//! enumeration of partitions of a prime set.
//!
//! ```text
//! # comment
//! group S3 deg 3
//! gen (1 2 3)
//! gen (1 2)
//! tags symmetric
//! order 6
//! ```
//!
//! `tags` is optional. Entries are separated by blank lines and closed by `order`.

use std::collections::{BTreeSet, HashSet};
use std::fmt::Write;

use crate::error::{Error, Result};
use crate::group::{Limits, PermGroup};
use crate::perm::Perm;
use crate::sigma::SigmaPartition;

const BUILTIN: &str = include_str!("../data/builtin.corpus");

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusEntry {
    pub name: String,
    pub degree: usize,
    pub generators: Vec<Perm>,
    pub expected_order: u64,
    pub tags: Vec<String>,
}

impl CorpusEntry {
    /// Builds the group and checks it against the declared order.
    pub fn build(&self, limits: Limits) -> Result<PermGroup> {
        let g = PermGroup::with_limits(self.degree, self.generators.clone(), limits)?;
        if g.order() != self.expected_order {
            return Err(Error::OrderMismatch {
                name: self.name.clone(),
                expected: self.expected_order,
                actual: g.order(),
            });
        }
        Ok(g)
    }
}

/// The curated catalog. Panics naming the entry if any entry fails its order check.
pub fn builtin_corpus() -> Vec<CorpusEntry> {
    parse_corpus_file(BUILTIN).unwrap_or_else(|e| panic!("builtin corpus is broken: {}", e))
}

pub fn find<'a>(entries: &'a [CorpusEntry], name: &str) -> Option<&'a CorpusEntry> {
    entries.iter().find(|e| e.name == name)
}

struct Pending {
    name: String,
    degree: usize,
    generators: Vec<Perm>,
    tags: Vec<String>,
    line: usize,
}

pub fn parse_corpus_file(text: &str) -> Result<Vec<CorpusEntry>> {
    let mut out: Vec<CorpusEntry> = Vec::new();
    let mut names = HashSet::new();
    let mut pending: Option<Pending> = None;

    for (k, raw) in text.lines().enumerate() {
        let line_no = k + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: String| Error::Parse { line: line_no, msg };
        let (keyword, rest) = line
            .split_once(char::is_whitespace)
            .map(|(a, b)| (a, b.trim()))
            .unwrap_or((line, ""));
        match keyword {
            "group" => {
                if let Some(p) = &pending {
                    return Err(err(format!(
                        "entry '{}' (line {}) has no 'order' line",
                        p.name, p.line
                    )));
                }
                let parts: Vec<&str> = rest.split_whitespace().collect();
                let (name, degree) = match parts.as_slice() {
                    [name, "deg", n] => (
                        name.to_string(),
                        n.parse::<usize>()
                            .map_err(|_| err(format!("bad degree '{}'", n)))?,
                    ),
                    _ => return Err(err("expected 'group <name> deg <n>'".into())),
                };
                if !names.insert(name.clone()) {
                    return Err(err(format!("duplicate group name '{}'", name)));
                }
                pending = Some(Pending {
                    name,
                    degree,
                    generators: Vec::new(),
                    tags: Vec::new(),
                    line: line_no,
                });
            }
            "gen" => {
                let p = pending
                    .as_mut()
                    .ok_or_else(|| err("'gen' outside a group entry".into()))?;
                let g = Perm::parse(rest, p.degree).map_err(|e| err(e.to_string()))?;
                p.generators.push(g);
            }
            "tags" => {
                let p = pending
                    .as_mut()
                    .ok_or_else(|| err("'tags' outside a group entry".into()))?;
                p.tags.extend(
                    rest.split(',')
                        .map(str::trim)
                        .filter(|t| !t.is_empty())
                        .map(String::from),
                );
            }
            "order" => {
                let p = pending
                    .take()
                    .ok_or_else(|| err("'order' outside a group entry".into()))?;
                let expected_order: u64 = rest
                    .parse()
                    .map_err(|_| err(format!("bad order '{}'", rest)))?;
                let entry = CorpusEntry {
                    name: p.name,
                    degree: p.degree,
                    generators: p.generators,
                    expected_order,
                    tags: p.tags,
                };
                entry.build(Limits::default())?;
                out.push(entry);
            }
            other => return Err(err(format!("unknown keyword '{}'", other))),
        }
    }
    if let Some(p) = pending {
        return Err(Error::Parse {
            line: p.line,
            msg: format!("entry '{}' has no 'order' line", p.name),
        });
    }
    Ok(out)
}

/// Serializes entries in the corpus file format.
pub fn to_corpus_text(entries: &[CorpusEntry]) -> String {
    let mut s = String::new();
    for (k, e) in entries.iter().enumerate() {
        if k > 0 {
            s.push('\n');
        }
        let _ = writeln!(s, "group {} deg {}", e.name, e.degree);
        for g in &e.generators {
            let _ = writeln!(s, "gen {}", g);
        }
        if !e.tags.is_empty() {
            let _ = writeln!(s, "tags {}", e.tags.join(","));
        }
        let _ = writeln!(s, "order {}", e.expected_order);
    }
    s
}

/// Every set partition of `pi` (Bell(|pi|) of them), as explicit block lists.
/// The all-singletons partition is the one that agrees with σ¹ on `pi`.
pub fn partitions_of_primes(pi: &BTreeSet<u64>) -> Result<Vec<SigmaPartition>> {
    if pi.len() > 6 {
        return Err(Error::Capacity {
            what: "prime set for partition enumeration",
            size: pi.len() as u64,
            bound: 6,
        });
    }
    let primes: Vec<u64> = pi.iter().copied().collect();
    let mut out = Vec::new();
    // restricted growth strings a[0] = 0, a[i] <= 1 + max(a[..i])
    let mut rgs = vec![0usize; primes.len()];
    loop {
        let nblocks = rgs.iter().map(|&b| b + 1).max().unwrap_or(0);
        let mut blocks = vec![BTreeSet::new(); nblocks];
        for (i, &b) in rgs.iter().enumerate() {
            blocks[b].insert(primes[i]);
        }
        out.push(SigmaPartition::from_blocks(blocks)?);

        // next string
        let mut i = primes.len();
        loop {
            if i <= 1 {
                return Ok(out);
            }
            i -= 1;
            let max_prefix = rgs[..i].iter().copied().max().unwrap_or(0);
            if rgs[i] <= max_prefix {
                rgs[i] += 1;
                for r in rgs.iter_mut().skip(i + 1) {
                    *r = 0;
                }
                break;
            }
        }
    }
}
