//! Exhaustive enumeration of normalized Cayley tables, optionally restricted
//! to RCC loops, and the cross-check against the constructive classification.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::constructions::{enumerate_2p, VerifyMode};
use crate::error::{Error, Result};
use crate::inventory::{InventoryEntry, IsoInventory, Label};
use crate::loops::{are_isomorphic, classify, LoopTable};

pub const MAX_UNCONSTRAINED_ORDER: usize = 7;
pub const MAX_RCC_ORDER: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub order: usize,
    pub rcc_only: bool,
    /// Wall-clock budget in seconds; `None` for unlimited.
    pub time_budget: Option<u64>,
    /// Worker threads for the split subtrees; 0 uses the global pool.
    pub parallel_width: usize,
}

impl SearchConfig {
    pub fn new(order: usize, rcc_only: bool) -> Self {
        SearchConfig {
            order,
            rcc_only,
            time_budget: None,
            parallel_width: 0,
        }
    }
}

const EMPTY: u8 = u8::MAX;
/// Columns completed before the tree is split into parallel subtrees.
const SPLIT_COLUMNS: usize = 1;

/// Search state. Cells are filled column by column (rows ascending, values
/// ascending), so every completed column is a full right translation.
#[derive(Clone)]
struct State {
    n: usize,
    rcc: bool,
    /// Column-major: `cols[a * n + x] = x * a`.
    cols: Vec<u8>,
    row_used: Vec<u32>,
    col_used: Vec<u32>,
    /// Column contents implied by conjugates of completed columns.
    forced: Vec<Vec<u8>>,
}

struct Shared {
    deadline: Option<Instant>,
    expired: AtomicBool,
    nodes: AtomicU64,
}

impl Shared {
    fn out_of_time(&self) -> bool {
        if self.expired.load(Ordering::Relaxed) {
            return true;
        }
        let k = self.nodes.fetch_add(1, Ordering::Relaxed);
        if k % 4096 == 0 {
            if let Some(d) = self.deadline {
                if Instant::now() > d {
                    self.expired.store(true, Ordering::Relaxed);
                    return true;
                }
            }
        }
        false
    }
}

impl State {
    fn new(n: usize, rcc: bool) -> Self {
        let mut s = State {
            n,
            rcc,
            cols: vec![EMPTY; n * n],
            row_used: vec![0; n],
            col_used: vec![0; n],
            forced: vec![Vec::new(); n],
        };
        for i in 0..n {
            s.set(0, i, i as u8);
            if i > 0 {
                s.set(i, 0, i as u8);
            }
        }
        s
    }

    fn set(&mut self, a: usize, x: usize, v: u8) {
        self.cols[a * self.n + x] = v;
        self.row_used[x] |= 1 << v;
        self.col_used[a] |= 1 << v;
    }

    fn unset(&mut self, a: usize, x: usize) {
        let v = self.cols[a * self.n + x];
        self.cols[a * self.n + x] = EMPTY;
        self.row_used[x] &= !(1 << v);
        self.col_used[a] &= !(1 << v);
    }

    fn col(&self, a: usize) -> &[u8] {
        &self.cols[a * self.n..(a + 1) * self.n]
    }

    /// After column `k` is complete: every conjugate `R_b^-1 R_a R_b` with
    /// `a, b <= k` must be the column it maps 0 to. Returns the columns newly
    /// forced, or `None` on a contradiction.
    fn close_column(&mut self, k: usize) -> Option<Vec<usize>> {
        let n = self.n;
        let mut newly = Vec::new();
        let mut inv = vec![0u8; n];
        let mut p = vec![0u8; n];
        for b in 1..=k {
            let rb = self.col(b).to_vec();
            for (x, &v) in rb.iter().enumerate() {
                inv[v as usize] = x as u8;
            }
            for a in 1..=k {
                if a != k && b != k {
                    continue;
                }
                let ra = self.col(a);
                for x in 0..n {
                    p[x] = rb[ra[inv[x] as usize] as usize];
                }
                let c = p[0] as usize;
                let ok = if c <= k {
                    self.col(c) == p.as_slice()
                } else if !self.forced[c].is_empty() {
                    self.forced[c] == p
                } else {
                    let fits = (1..n).all(|x| self.row_used[x] & (1 << p[x]) == 0);
                    if fits {
                        self.forced[c] = p.clone();
                        newly.push(c);
                    }
                    fits
                };
                if !ok {
                    for &c in &newly {
                        self.forced[c].clear();
                    }
                    return None;
                }
            }
        }
        Some(newly)
    }

    fn to_table(&self) -> LoopTable {
        let n = self.n;
        let mut cells = vec![0u16; n * n];
        for a in 0..n {
            for x in 0..n {
                cells[x * n + a] = self.cols[a * n + x] as u16;
            }
        }
        LoopTable::from_cells_unchecked(n, cells)
    }

    /// Fills cell `pos` (column-major over the non-identity block) onwards,
    /// stopping after column `stop_col` is complete.
    fn search(&mut self, pos: usize, stop_col: usize, shared: &Shared, out: &mut Vec<State>) -> bool {
        let n = self.n;
        let a = 1 + pos / (n - 1);
        if a > stop_col || a == n {
            out.push(self.clone());
            return true;
        }
        if shared.out_of_time() {
            return false;
        }
        let x = 1 + pos % (n - 1);
        let forced = self.forced[a].get(x).copied();
        let free = !(self.row_used[x] | self.col_used[a]) & ((1u32 << n) - 1);
        let mut cand = match forced {
            Some(v) => free & (1 << v),
            None => free,
        };
        while cand != 0 {
            let v = cand.trailing_zeros() as u8;
            cand &= cand - 1;
            self.set(a, x, v);
            let mut ok = true;
            let mut newly = Vec::new();
            if x == n - 1 && self.rcc {
                match self.close_column(a) {
                    Some(f) => newly = f,
                    None => ok = false,
                }
            }
            if ok && !self.search(pos + 1, stop_col, shared, out) {
                self.unset(a, x);
                return false;
            }
            for c in newly {
                self.forced[c].clear();
            }
            self.unset(a, x);
        }
        true
    }
}

/// Raw survivors of the search in deterministic order.
pub fn search_tables(cfg: &SearchConfig) -> Result<Vec<LoopTable>> {
    let n = cfg.order;
    let max = if cfg.rcc_only {
        MAX_RCC_ORDER
    } else {
        MAX_UNCONSTRAINED_ORDER
    };
    if n > max {
        return Err(Error::DegreeTooLarge { n, max });
    }
    if n == 0 {
        return Err(Error::OutOfRange {
            what: "order",
            value: 0,
            bound: 1,
        });
    }
    if n == 1 {
        return Ok(vec![LoopTable::from_cells_unchecked(1, vec![0])]);
    }
    let shared = Shared {
        deadline: cfg.time_budget.map(|s| Instant::now() + Duration::from_secs(s)),
        expired: AtomicBool::new(false),
        nodes: AtomicU64::new(0),
    };
    let budget_error = || Error::BudgetExceeded {
        seconds: cfg.time_budget.unwrap_or(0),
    };
    let mut prefixes = Vec::new();
    let split = SPLIT_COLUMNS.min(n - 1);
    if !State::new(n, cfg.rcc_only).search(0, split, &shared, &mut prefixes) {
        return Err(budget_error());
    }
    let start = split * (n - 1);
    let run = || {
        prefixes
            .into_par_iter()
            .map(|mut s| {
                let mut done = Vec::new();
                if s.search(start, n - 1, &shared, &mut done) {
                    Ok(done.iter().map(State::to_table).collect::<Vec<_>>())
                } else {
                    Err(budget_error())
                }
            })
            .collect::<Result<Vec<Vec<LoopTable>>>>()
    };
    let nested = if cfg.parallel_width > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.parallel_width)
            .build()
            .map_err(|e| Error::Io(e.to_string()))?
            .install(run)?
    } else {
        run()?
    };
    let mut tables: Vec<LoopTable> = nested.into_iter().flatten().collect();
    if cfg.rcc_only {
        tables.retain(LoopTable::is_rcc);
    }
    Ok(tables)
}

/// Survivors classified up to isomorphism; one entry per class, labelled by
/// the survivor index of its first member.
pub fn enumerate_loops(cfg: &SearchConfig) -> Result<IsoInventory> {
    let tables = search_tables(cfg)?;
    inventory_of(cfg.order, &tables)
}

fn inventory_of(order: usize, tables: &[LoopTable]) -> Result<IsoInventory> {
    let classes = classify(tables)?;
    let mut entries: Vec<InventoryEntry> = classes
        .into_iter()
        .map(|c| {
            let mut e = InventoryEntry::new(
                Label::Search {
                    index: c.representative,
                },
                None,
                tables[c.representative].clone(),
            );
            e.fingerprint = Some(c.fingerprint);
            e
        })
        .collect();
    entries
        .par_iter_mut()
        .map(|e| {
            e.envelope = Some(crate::inventory::EnvelopeStats::of(&e.table)?);
            Ok(())
        })
        .collect::<Result<Vec<()>>>()?;
    Ok(IsoInventory {
        order,
        p: None,
        entries,
    })
}

/// `order=N classes=K rcc=K' assoc=K''`.
pub fn summary_line(inv: &IsoInventory) -> String {
    let rcc = inv.entries.iter().filter(|e| e.flags.rcc).count();
    let assoc = inv.entries.iter().filter(|e| e.flags.associative).count();
    format!(
        "order={} classes={} rcc={rcc} assoc={assoc}",
        inv.order,
        inv.len()
    )
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossCheckReport {
    pub p: u64,
    pub brute_classes: usize,
    pub constructed: usize,
    /// `(brute entry, constructed entry)` index pairs of the bijection.
    pub matching: Vec<(usize, usize)>,
}

/// Matches brute-force RCC classes of order `2p` with the constructed
/// inventory; anything short of a bijection is a hard failure.
pub fn cross_check_2p(p: u64, time_budget: Option<u64>) -> Result<CrossCheckReport> {
    if p != 3 && p != 5 {
        return Err(Error::OutOfRange {
            what: "p",
            value: p,
            bound: 5,
        });
    }
    let constructed = enumerate_2p(p, VerifyMode::CountsOnly)?;
    let cfg = SearchConfig {
        time_budget,
        ..SearchConfig::new(2 * p as usize, true)
    };
    let brute = enumerate_loops(&cfg)?;
    match_inventories(p, &brute, &constructed)
}

pub fn match_inventories(p: u64, brute: &IsoInventory, constructed: &IsoInventory) -> Result<CrossCheckReport> {
    let mut used = vec![false; constructed.len()];
    let mut matching = Vec::new();
    for (i, e) in brute.entries.iter().enumerate() {
        let hits: Vec<usize> = constructed
            .entries
            .iter()
            .enumerate()
            .filter(|(_, c)| are_isomorphic(&e.table, &c.table))
            .map(|(j, _)| j)
            .collect();
        match hits.as_slice() {
            [j] if !used[*j] => {
                used[*j] = true;
                matching.push((i, *j));
            }
            _ => {
                return Err(Error::MismatchFound(format!(
                    "brute-force class {i} matches constructed entries {hits:?}"
                )))
            }
        }
    }
    if let Some(j) = used.iter().position(|u| !u) {
        return Err(Error::MismatchFound(format!(
            "constructed entry {} has no brute-force counterpart",
            constructed.entries[j].label
        )));
    }
    Ok(CrossCheckReport {
        p,
        brute_classes: brute.len(),
        constructed: constructed.len(),
        matching,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_orders_unconstrained() {
        // reduced Latin squares of orders 1..=5
        for (n, count) in [(1, 1), (2, 1), (3, 1), (4, 4), (5, 56)] {
            assert_eq!(search_tables(&SearchConfig::new(n, false)).unwrap().len(), count);
        }
    }

    #[test]
    fn loops_up_to_isomorphism() {
        // 1, 1, 1, 2, 6 loops of orders 1..=5
        for (n, classes) in [(1, 1), (2, 1), (3, 1), (4, 2), (5, 6)] {
            assert_eq!(enumerate_loops(&SearchConfig::new(n, false)).unwrap().len(), classes);
        }
    }

    #[test]
    fn order5_rcc_is_cyclic() {
        let inv = enumerate_loops(&SearchConfig::new(5, true)).unwrap();
        assert_eq!(inv.len(), 1);
        assert!(inv.entries[0].flags.associative);
        assert_eq!(summary_line(&inv), "order=5 classes=1 rcc=1 assoc=1");
    }

    #[test]
    fn rcc_propagation_is_sound_at_order_6() {
        let mut filtered = search_tables(&SearchConfig::new(6, false)).unwrap();
        filtered.retain(LoopTable::is_rcc);
        let constrained = search_tables(&SearchConfig::new(6, true)).unwrap();
        assert_eq!(filtered, constrained);
    }

    #[test]
    fn bounds_and_budget() {
        assert!(matches!(
            search_tables(&SearchConfig::new(8, false)),
            Err(Error::DegreeTooLarge { .. })
        ));
        assert!(matches!(
            search_tables(&SearchConfig::new(11, true)),
            Err(Error::DegreeTooLarge { .. })
        ));
        let cfg = SearchConfig {
            time_budget: Some(0),
            ..SearchConfig::new(7, false)
        };
        assert_eq!(search_tables(&cfg).unwrap_err(), Error::BudgetExceeded { seconds: 0 });
    }

    #[test]
    fn split_width_does_not_change_output() {
        let one = SearchConfig {
            parallel_width: 1,
            ..SearchConfig::new(6, true)
        };
        let two = SearchConfig {
            parallel_width: 2,
            ..one
        };
        assert_eq!(search_tables(&one).unwrap(), search_tables(&two).unwrap());
    }
}
