//! Catalogues of loops up to isomorphism.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::folder::envelope_of_loop;
use crate::loops::{fingerprint, Fingerprint, LoopTable};

/// Envelope type of an RCC loop of order `2p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Case {
    A,
    B,
    C,
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Case::A => "a",
            Case::B => "b",
            Case::C => "c",
        })
    }
}

/// Parameters of a wreath-type transversal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CaseALabel {
    pub p: u64,
    /// Involution (or identity) of `{0..p-2}`; index `j` of the 1-based
    /// range `1..p-1` corresponds to `j - 1`.
    pub tau: Vec<usize>,
    /// Exponent `z` of the outer element `(pi1 pi2)^z alpha`.
    pub z_exp: u64,
}

/// A block-swapping element of the affine normalizer.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CaseBCLabel {
    pub p: u64,
    /// Index of `tau` in the element order of `N_aff`.
    pub tau_index: usize,
    pub case_tag: Case,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Label {
    CaseA(CaseALabel),
    CaseBc(CaseBCLabel),
    /// Position in a brute-force search's survivor list.
    Search { index: usize },
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::CaseA(l) => write!(f, "a(tau={:?}, z={})", l.tau, l.z_exp),
            Label::CaseBc(l) => write!(f, "{}(tau#{})", l.case_tag, l.tau_index),
            Label::Search { index } => write!(f, "search#{index}"),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Flags {
    pub rcc: bool,
    pub lcc: bool,
    pub associative: bool,
}

impl Flags {
    pub fn of(l: &LoopTable) -> Self {
        Flags {
            rcc: l.is_rcc(),
            lcc: l.is_lcc(),
            associative: l.is_associative(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnvelopeStats {
    pub group_order: usize,
    pub soluble: bool,
    pub block_found: bool,
}

impl EnvelopeStats {
    pub fn of(l: &LoopTable) -> Result<Self> {
        let env = envelope_of_loop(l)?;
        Ok(EnvelopeStats {
            group_order: env.group.order(),
            soluble: env.group.is_soluble()?,
            block_found: env.group.block_system()?.is_some(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InventoryEntry {
    pub label: Label,
    pub case: Option<Case>,
    pub table: LoopTable,
    pub fingerprint: Option<Fingerprint>,
    pub flags: Flags,
    pub envelope: Option<EnvelopeStats>,
}

impl InventoryEntry {
    pub fn new(label: Label, case: Option<Case>, table: LoopTable) -> Self {
        let flags = Flags::of(&table);
        InventoryEntry {
            label,
            case,
            table,
            fingerprint: None,
            flags,
            envelope: None,
        }
    }

    /// Fills in the fingerprint and envelope statistics.
    pub fn enrich(&mut self) -> Result<()> {
        self.fingerprint = Some(fingerprint(&self.table)?);
        self.envelope = Some(EnvelopeStats::of(&self.table)?);
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsoInventory {
    /// Loop order.
    pub order: usize,
    /// The prime for order-`2p` inventories.
    pub p: Option<u64>,
    pub entries: Vec<InventoryEntry>,
}

impl IsoInventory {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn count_case(&self, case: Case) -> usize {
        self.entries.iter().filter(|e| e.case == Some(case)).count()
    }

    pub fn tables(&self) -> impl Iterator<Item = &LoopTable> {
        self.entries.iter().map(|e| &e.table)
    }

    /// File name and text for each entry, numbered within its case.
    pub fn table_files(&self) -> Vec<(String, String)> {
        let mut counters = std::collections::HashMap::new();
        self.entries
            .iter()
            .map(|e| {
                let tag = e.case.map(|c| c.to_string()).unwrap_or_else(|| "x".into());
                let i = counters.entry(tag.clone()).or_insert(0usize);
                let name = match self.p {
                    Some(p) => format!("rcc_2p_{p}_{tag}_{i}.tbl"),
                    None => format!("loop_{}_{i}.tbl", self.order),
                };
                *i += 1;
                (name, e.table.to_text())
            })
            .collect()
    }
}
