//! Loops as Cayley tables with the identity at index 0.

mod iso;

pub use iso::{
    are_isomorphic, classify, fingerprint, isomorphism, Fingerprint, IsoClass,
};

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// A finite loop given by its Cayley table; entry `(i, j)` is `i * j`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "TableJson", into = "TableJson")]
pub struct LoopTable {
    n: usize,
    cells: Vec<u16>,
}

/// JSON mirror of the text format.
#[derive(Serialize, Deserialize)]
struct TableJson {
    order: usize,
    table: Vec<Vec<usize>>,
}

impl TryFrom<TableJson> for LoopTable {
    type Error = Error;

    fn try_from(t: TableJson) -> Result<Self> {
        if t.table.len() != t.order {
            return Err(Error::InvalidTable(format!(
                "order {} but {} rows",
                t.order,
                t.table.len()
            )));
        }
        LoopTable::from_rows(t.table)
    }
}

impl From<LoopTable> for TableJson {
    fn from(l: LoopTable) -> Self {
        TableJson {
            order: l.n,
            table: l.rows(),
        }
    }
}

impl fmt::Debug for LoopTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LoopTable({:?})", self.rows())
    }
}

impl LoopTable {
    /// Validates the Latin property and the identity at index 0.
    pub fn from_rows(rows: Vec<Vec<usize>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidTable("empty table".into()));
        }
        if n > u16::MAX as usize {
            return Err(Error::InvalidTable(format!("order {n} too large")));
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidTable(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
        }
        let is_perm = |vals: &mut dyn Iterator<Item = usize>| {
            let mut seen = vec![false; n];
            for v in vals {
                if v >= n || std::mem::replace(&mut seen[v], true) {
                    return false;
                }
            }
            true
        };
        for (i, row) in rows.iter().enumerate() {
            if !is_perm(&mut row.iter().copied()) {
                return Err(Error::InvalidTable(format!("row {i} not a permutation")));
            }
        }
        for j in 0..n {
            if !is_perm(&mut rows.iter().map(|r| r[j])) {
                return Err(Error::InvalidTable(format!("column {j} not a permutation")));
            }
        }
        if rows[0].iter().enumerate().any(|(j, &v)| v != j) {
            return Err(Error::InvalidTable("row 0 is not the identity".into()));
        }
        if rows.iter().enumerate().any(|(i, r)| r[0] != i) {
            return Err(Error::InvalidTable("column 0 is not the identity".into()));
        }
        Ok(LoopTable {
            n,
            cells: rows.into_iter().flatten().map(|v| v as u16).collect(),
        })
    }

    /// Table from a product function; the caller guarantees the loop axioms.
    pub(crate) fn from_fn_unchecked(n: usize, f: impl Fn(usize, usize) -> usize) -> Self {
        let mut cells = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                cells.push(f(i, j) as u16);
            }
        }
        let t = LoopTable { n, cells };
        debug_assert!(LoopTable::from_rows(t.rows()).is_ok());
        t
    }

    pub(crate) fn from_cells_unchecked(n: usize, cells: Vec<u16>) -> Self {
        LoopTable { n, cells }
    }

    /// Cayley table of a permutation group, elements in the given order.
    pub fn from_group(elements: &[Permutation]) -> Result<Self> {
        let index: std::collections::HashMap<&Permutation, usize> =
            elements.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let rows = elements
            .iter()
            .map(|a| {
                elements
                    .iter()
                    .map(|b| {
                        index
                            .get(&a.then(b))
                            .copied()
                            .ok_or_else(|| Error::InvalidTable("elements not closed".into()))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        LoopTable::from_rows(rows)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.cells[a * self.n + b] as usize
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.cells
            .chunks(self.n)
            .map(|r| r.iter().map(|&v| v as usize).collect())
            .collect()
    }

    /// `R_a: x -> x * a`.
    pub fn right_translation(&self, a: usize) -> Permutation {
        Permutation::from_raw((0..self.n).map(|x| self.cells[x * self.n + a]).collect())
    }

    /// `L_a: x -> a * x`.
    pub fn left_translation(&self, a: usize) -> Permutation {
        Permutation::from_raw(self.cells[a * self.n..(a + 1) * self.n].to_vec())
    }

    pub fn right_translations(&self) -> Vec<Permutation> {
        (0..self.n).map(|a| self.right_translation(a)).collect()
    }

    pub fn left_translations(&self) -> Vec<Permutation> {
        (0..self.n).map(|a| self.left_translation(a)).collect()
    }

    /// The `y` with `y * b = x`.
    pub fn right_div(&self, x: usize, b: usize) -> usize {
        (0..self.n)
            .find(|&y| self.mul(y, b) == x)
            .expect("columns are permutations")
    }

    /// `R_b^-1 R_a R_b = R_c` requires `c = ((e/b) a) b`; checks
    /// `(y a) b = (y b) c` for all `y`.
    pub fn is_rcc(&self) -> bool {
        let n = self.n;
        let zero_div: Vec<usize> = (0..n).map(|b| self.right_div(0, b)).collect();
        for b in 0..n {
            for a in 0..n {
                let c = self.mul(self.mul(zero_div[b], a), b);
                if (0..n).any(|y| self.mul(self.mul(y, a), b) != self.mul(self.mul(y, b), c)) {
                    return false;
                }
            }
        }
        true
    }

    /// Left translations closed under conjugation by each other.
    pub fn is_lcc(&self) -> bool {
        let lefts = self.left_translations();
        let set: HashSet<&Permutation> = lefts.iter().collect();
        lefts
            .iter()
            .all(|la| lefts.iter().all(|lb| set.contains(&la.conjugate_by(lb))))
    }

    pub fn is_associative(&self) -> bool {
        let n = self.n;
        (0..n).all(|a| {
            (0..n).all(|b| {
                let ab = self.mul(a, b);
                (0..n).all(|c| self.mul(ab, c) == self.mul(a, self.mul(b, c)))
            })
        })
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.n).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Transposed table: `x *op y = y * x`.
    pub fn opposite(&self) -> LoopTable {
        LoopTable::from_fn_unchecked(self.n, |i, j| self.mul(j, i))
    }

    /// Relabels the elements by the bijection `phi` (which must fix 0).
    pub fn relabel(&self, phi: &[usize]) -> Result<LoopTable> {
        let n = self.n;
        if phi.len() != n || phi[0] != 0 {
            return Err(Error::InvalidTable("relabeling must fix the identity".into()));
        }
        let mut rows = vec![vec![0; n]; n];
        for a in 0..n {
            for b in 0..n {
                rows[phi[a]][phi[b]] = phi[self.mul(a, b)];
            }
        }
        LoopTable::from_rows(rows)
    }

    /// Text format: the order on the first line, then one row per line.
    pub fn to_text(&self) -> String {
        let mut s = format!("{}\n", self.n);
        for row in self.rows() {
            let line: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            s.push_str(&line.join(" "));
            s.push('\n');
        }
        s
    }

    /// Parses the text format, falling back to the JSON mirror when the
    /// input starts with `{`.
    pub fn parse(input: &str) -> Result<LoopTable> {
        if input.trim_start().starts_with('{') {
            return serde_json::from_str(input).map_err(|e| match e.classify() {
                serde_json::error::Category::Data => {
                    Error::InvalidTable(e.to_string().split(" at line").next().unwrap_or("").to_string())
                }
                _ => Error::Parse(e.to_string()),
            });
        }
        input.parse()
    }
}

impl FromStr for LoopTable {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut lines = s.lines().map(str::trim).filter(|l| !l.is_empty());
        let n: usize = lines
            .next()
            .ok_or_else(|| Error::Parse("empty input".into()))?
            .parse()
            .map_err(|e| Error::Parse(format!("bad order line: {e}")))?;
        let rows = lines
            .map(|l| {
                l.split_whitespace()
                    .map(|t| t.parse::<usize>().map_err(|e| Error::Parse(format!("bad entry {t:?}: {e}"))))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        if rows.len() != n {
            return Err(Error::Parse(format!("expected {n} rows, found {}", rows.len())));
        }
        LoopTable::from_rows(rows)
    }
}

/// Cyclic group `Z_n` as a loop.
pub fn cyclic(n: usize) -> LoopTable {
    LoopTable::from_fn_unchecked(n, |a, b| (a + b) % n)
}
