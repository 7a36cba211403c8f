//! Increasing tableaux and set-valued tableaux.
//!
//! An increasing tableau is a filling of a (possibly skew) shape with
//! letters that strictly increase left to right along rows and top to
//! bottom down columns. Entries may repeat across different rows and
//! columns, so an increasing tableau is generally not standard.
//!
//! Wire formats: a straight tableau serializes as an array of rows
//! (`[[1,3],[5]]`); a skew tableau as an object
//! `{"outer": [...], "inner": [...], "rows": [...]}` where each row lists
//! only the filled cells. Set-valued tableaux serialize as an array of
//! rows of arrays (`[[[1],[2,5]],[[3,4]]]`).

use crate::shape::{Partition, ShapeError, SkewShape};
use crate::word::{Letter, Word};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// Errors raised while validating tableaux.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TableauError {
    #[error(transparent)]
    Shape(#[from] ShapeError),
    #[error("entries must be in 1..=255 (found 0 in row {row})")]
    ZeroEntry { row: usize },
    #[error("row {row} must strictly increase (violated at column {col})")]
    RowNotIncreasing { row: usize, col: usize },
    #[error("column {col} must strictly increase (violated at row {row})")]
    ColumnNotIncreasing { row: usize, col: usize },
    #[error("declared outer shape {declared} does not match the rows (which give {actual})")]
    OuterMismatch { declared: Partition, actual: Partition },
    #[error("set-valued cell at row {row}, column {col} is empty")]
    EmptySetCell { row: usize, col: usize },
    #[error("row {row} must weakly increase cell to cell (violated at column {col})")]
    RowNotWeaklyIncreasing { row: usize, col: usize },
}

/// An increasing tableau of straight or skew shape.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "TableauRepr", into = "TableauRepr")]
pub struct IncreasingTableau {
    shape: SkewShape,
    // rows[i] holds the entries of row i+1, columns inner_{i+1}+1 ..= outer_{i+1}.
    rows: Vec<Vec<Letter>>,
}

impl IncreasingTableau {
    /// Builds a straight-shape tableau from its rows.
    pub fn new_straight(rows: Vec<Vec<Letter>>) -> Result<Self, TableauError> {
        Self::new_skew(Partition::empty(), rows)
    }

    /// Builds a skew tableau: `rows[i]` lists the entries of row `i+1`
    /// strictly to the right of the inner shape.
    pub fn new_skew(inner: Partition, mut rows: Vec<Vec<Letter>>) -> Result<Self, TableauError> {
        let mut inner_parts: Vec<u32> = inner.parts().to_vec();
        // Rows entirely covered by the inner shape may trail; drop them so
        // equal tableaux have equal representations.
        while rows.last().is_some_and(|r| r.is_empty()) {
            rows.pop();
        }
        inner_parts.truncate(rows.len());
        let outer_parts: Vec<u32> = rows
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let inner_i = inner_parts.get(i).copied().unwrap_or(0);
                inner_i + r.len() as u32
            })
            .collect();
        let outer = Partition::new(outer_parts)?;
        let inner = Partition::new(inner_parts)?;
        let shape = SkewShape::new(outer, inner)?;

        let tableau = IncreasingTableau { shape, rows };
        tableau.validate()?;
        Ok(tableau)
    }

    fn validate(&self) -> Result<(), TableauError> {
        for (i, row) in self.rows.iter().enumerate() {
            if row.contains(&0) {
                return Err(TableauError::ZeroEntry { row: i + 1 });
            }
            let start = self.shape.inner().row(i + 1) as usize;
            for (k, pair) in row.windows(2).enumerate() {
                if pair[0] >= pair[1] {
                    return Err(TableauError::RowNotIncreasing {
                        row: i + 1,
                        col: start + k + 2,
                    });
                }
            }
        }
        for i in 2..=self.rows.len() {
            for j in self.shape.row_cols(i) {
                if let (Some(above), Some(here)) = (self.get(i - 1, j), self.get(i, j)) {
                    if above >= here {
                        return Err(TableauError::ColumnNotIncreasing { row: i, col: j });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn empty() -> Self {
        IncreasingTableau {
            shape: SkewShape::straight(Partition::empty()),
            rows: Vec::new(),
        }
    }

    pub fn shape(&self) -> &SkewShape {
        &self.shape
    }

    pub fn is_straight(&self) -> bool {
        self.shape.is_straight()
    }

    pub fn is_empty(&self) -> bool {
        self.shape.size() == 0
    }

    pub fn num_cells(&self) -> usize {
        self.shape.size()
    }

    pub fn rows(&self) -> &[Vec<Letter>] {
        &self.rows
    }

    /// Entry at `(row, col)` (1-indexed), or `None` outside the shape.
    pub fn get(&self, row: usize, col: usize) -> Option<Letter> {
        if !self.shape.contains_cell(row, col) {
            return None;
        }
        let inner = self.shape.inner().row(row) as usize;
        Some(self.rows[row - 1][col - inner - 1])
    }

    /// The row reading word: rows bottom to top, each left to right.
    pub fn reading_word(&self) -> Word {
        let letters: Vec<Letter> = self
            .rows
            .iter()
            .rev()
            .flat_map(|r| r.iter().copied())
            .collect();
        Word::new(letters).expect("tableau entries are valid letters")
    }

    /// The set of distinct entries.
    pub fn support(&self) -> BTreeSet<Letter> {
        self.rows.iter().flatten().copied().collect()
    }

    /// The subtableau of entries `≤ k`. Those cells always form a valid
    /// (sub-)shape because entries increase along rows and columns.
    pub fn restrict_le(&self, k: Letter) -> IncreasingTableau {
        let rows: Vec<Vec<Letter>> = self
            .rows
            .iter()
            .map(|r| r.iter().copied().take_while(|&x| x <= k).collect())
            .collect();
        IncreasingTableau::new_skew(self.shape.inner().clone(), rows)
            .expect("restriction of an increasing tableau is an increasing tableau")
    }

    /// Relabels every entry by its rank among the distinct entries, so the
    /// support becomes an initial interval. The shape is unchanged, and the
    /// reading word of the result is the flattened reading word.
    pub fn flatten(&self) -> IncreasingTableau {
        let ranks: BTreeMap<Letter, Letter> = self.support().into_iter().zip(1..).collect();
        let rows = self
            .rows
            .iter()
            .map(|r| r.iter().map(|x| ranks[x]).collect())
            .collect();
        IncreasingTableau {
            shape: self.shape.clone(),
            rows,
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum TableauRepr {
    Straight(Vec<Vec<Letter>>),
    Skew {
        outer: Vec<u32>,
        inner: Vec<u32>,
        rows: Vec<Vec<Letter>>,
    },
}

impl From<IncreasingTableau> for TableauRepr {
    fn from(t: IncreasingTableau) -> TableauRepr {
        if t.is_straight() {
            TableauRepr::Straight(t.rows)
        } else {
            TableauRepr::Skew {
                outer: t.shape.outer().parts().to_vec(),
                inner: t.shape.inner().parts().to_vec(),
                rows: t.rows,
            }
        }
    }
}

impl TryFrom<TableauRepr> for IncreasingTableau {
    type Error = TableauError;
    fn try_from(repr: TableauRepr) -> Result<Self, Self::Error> {
        match repr {
            TableauRepr::Straight(rows) => IncreasingTableau::new_straight(rows),
            TableauRepr::Skew { outer, inner, rows } => {
                let declared = Partition::new(outer)?;
                let tableau = IncreasingTableau::new_skew(Partition::new(inner)?, rows)?;
                if tableau.shape.outer() != &declared {
                    return Err(TableauError::OuterMismatch {
                        declared,
                        actual: tableau.shape.outer().clone(),
                    });
                }
                Ok(tableau)
            }
        }
    }
}

impl fmt::Display for IncreasingTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "∅");
        }
        let width = self
            .rows
            .iter()
            .flatten()
            .map(|x| x.to_string().len())
            .max()
            .unwrap_or(1);
        for i in 1..=self.rows.len() {
            if i > 1 {
                writeln!(f)?;
            }
            let inner = self.shape.inner().row(i) as usize;
            let mut first = true;
            for _ in 0..inner {
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{:>width$}", ".")?;
                first = false;
            }
            for x in &self.rows[i - 1] {
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{x:>width$}")?;
                first = false;
            }
        }
        Ok(())
    }
}

// Debug prints on one line so tableaux stay readable inside collections.
impl fmt::Debug for IncreasingTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.shape.inner().is_empty() {
            write!(f, "{:?}", self.rows)
        } else {
            write!(f, "{:?}/{}", self.rows, self.shape.inner())
        }
    }
}

/// The tableau of the given shape whose `(i, j)` entry is `i + j - 1`,
/// the smallest value an increasing tableau admits in that cell. Its
/// entries are as small as possible, so it is the minimal increasing
/// tableau of its shape.
pub fn minimal_tableau(shape: &Partition) -> IncreasingTableau {
    let rows: Vec<Vec<Letter>> = shape
        .parts()
        .iter()
        .enumerate()
        .map(|(i, &p)| {
            (1..=p as usize)
                .map(|j| {
                    Letter::try_from(i + j).expect("minimal tableau entries stay within 1..=255")
                })
                .collect()
        })
        .collect();
    IncreasingTableau::new_straight(rows).expect("minimal filling is increasing")
}

/// The standard tableau of the given shape whose first row is
/// `1..=λ₁`, second row the next `λ₂` values, and so on.
pub fn superstandard_tableau(shape: &Partition) -> IncreasingTableau {
    let mut next = 1usize;
    let rows: Vec<Vec<Letter>> = shape
        .parts()
        .iter()
        .map(|&p| {
            let row: Vec<Letter> = (0..p as usize)
                .map(|k| {
                    Letter::try_from(next + k)
                        .expect("superstandard tableau entries stay within 1..=255")
                })
                .collect();
            next += p as usize;
            row
        })
        .collect();
    IncreasingTableau::new_straight(rows).expect("row-consecutive filling is increasing")
}

/// Calls `f` on every straight-shape increasing tableau whose entries are
/// drawn from `alphabet`, including the empty tableau. Tableaux are built
/// cell by cell in row-major order, so every tableau is visited exactly
/// once; there are finitely many because a tableau on `k` letters fits
/// inside the staircase with `k` rows.
pub fn for_each_straight_tableau(
    alphabet: &BTreeSet<Letter>,
    mut f: impl FnMut(&IncreasingTableau),
) {
    let letters: Vec<Letter> = alphabet.iter().copied().collect();
    let mut rows: Vec<Vec<Letter>> = Vec::new();
    emit_and_extend(&letters, &mut rows, &mut f);
}

fn emit_and_extend(
    letters: &[Letter],
    rows: &mut Vec<Vec<Letter>>,
    f: &mut impl FnMut(&IncreasingTableau),
) {
    let tableau = IncreasingTableau::new_straight(rows.clone())
        .expect("search tree states are increasing tableaux");
    f(&tableau);

    // Extend the last row by one cell.
    if let Some(i) = rows.len().checked_sub(1) {
        let j = rows[i].len(); // 0-indexed column of the new cell
        let fits_shape = i == 0 || j < rows[i - 1].len();
        if fits_shape {
            let left = rows[i][j - 1]; // rows are started non-empty below
            let above = if i > 0 { rows[i - 1][j] } else { 0 };
            let lower = left.max(above);
            for &x in letters.iter().filter(|&&x| x > lower) {
                rows[i].push(x);
                emit_and_extend(letters, rows, f);
                rows[i].pop();
            }
        }
    }

    // Start a new row (the first row from the empty state).
    let can_start = rows.last().is_none_or(|r| !r.is_empty());
    if can_start {
        let above = rows.last().map_or(0, |r| r[0]);
        for &x in letters.iter().filter(|&&x| x > above) {
            rows.push(vec![x]);
            emit_and_extend(letters, rows, f);
            rows.pop();
        }
    }
}

/// Collects every straight increasing tableau with support exactly
/// `alphabet` (every letter of `alphabet` used at least once).
pub fn straight_tableaux_with_support(alphabet: &BTreeSet<Letter>) -> Vec<IncreasingTableau> {
    let mut out = Vec::new();
    for_each_straight_tableau(alphabet, |t| {
        if t.support() == *alphabet {
            out.push(t.clone());
        }
    });
    out
}

/// Calls `f` on every increasing filling of the given (possibly skew)
/// shape with entries in `1..=max_letter`, in row-major lexicographic
/// order of the entry sequence. The stream may be empty: some shapes
/// admit no filling with a given alphabet.
pub fn for_each_increasing_filling(
    shape: &SkewShape,
    max_letter: Letter,
    mut f: impl FnMut(&IncreasingTableau),
) {
    let cells = shape.cells();
    let mut rows: Vec<Vec<Letter>> = vec![Vec::new(); shape.num_rows()];
    fill_shape_cell(shape, max_letter, &cells, 0, &mut rows, &mut f);
}

fn fill_shape_cell(
    shape: &SkewShape,
    max_letter: Letter,
    cells: &[(usize, usize)],
    idx: usize,
    rows: &mut Vec<Vec<Letter>>,
    f: &mut impl FnMut(&IncreasingTableau),
) {
    if idx == cells.len() {
        let filled = IncreasingTableau::new_skew(shape.inner().clone(), rows.clone())
            .expect("cell-by-cell construction yields an increasing tableau");
        f(&filled);
        return;
    }
    let (i, j) = cells[idx];
    let inner_i = shape.inner().row(i) as usize;
    let mut lo: Letter = 1;
    if j > inner_i + 1 {
        let left = rows[i - 1][j - inner_i - 2];
        if left == Letter::MAX {
            return;
        }
        lo = lo.max(left + 1);
    }
    if i > 1 && shape.contains_cell(i - 1, j) {
        let above = rows[i - 2][j - shape.inner().row(i - 1) as usize - 1];
        if above == Letter::MAX {
            return;
        }
        lo = lo.max(above + 1);
    }
    for x in lo..=max_letter {
        rows[i - 1].push(x);
        fill_shape_cell(shape, max_letter, cells, idx + 1, rows, f);
        rows[i - 1].pop();
    }
}

/// Collects the increasing fillings of a shape over `1..=max_letter`.
pub fn increasing_fillings(shape: &SkewShape, max_letter: Letter) -> Vec<IncreasingTableau> {
    let mut out = Vec::new();
    for_each_increasing_filling(shape, max_letter, |t| out.push(t.clone()));
    out
}

/// A set-valued tableau of straight shape: every cell holds a nonempty
/// set of letters, rows weakly increase (`max` of a cell ≤ `min` of its
/// right neighbor), and columns strictly increase (`max` above < `min`
/// below).
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<Vec<Letter>>>", into = "Vec<Vec<Vec<Letter>>>")]
pub struct SetValuedTableau {
    shape: Partition,
    cells: Vec<Vec<BTreeSet<Letter>>>,
}

impl SetValuedTableau {
    pub fn new(cells: Vec<Vec<BTreeSet<Letter>>>) -> Result<Self, TableauError> {
        let shape = Partition::new(cells.iter().map(|r| r.len() as u32).collect())?;
        for (i, row) in cells.iter().enumerate() {
            for (j, cell) in row.iter().enumerate() {
                if cell.is_empty() {
                    return Err(TableauError::EmptySetCell {
                        row: i + 1,
                        col: j + 1,
                    });
                }
                if cell.contains(&0) {
                    return Err(TableauError::ZeroEntry { row: i + 1 });
                }
                if j > 0 {
                    let left_max = *row[j - 1].iter().next_back().unwrap();
                    let here_min = *cell.iter().next().unwrap();
                    if left_max > here_min {
                        return Err(TableauError::RowNotWeaklyIncreasing {
                            row: i + 1,
                            col: j + 1,
                        });
                    }
                }
                if i > 0 && j < cells[i - 1].len() {
                    let above_max = *cells[i - 1][j].iter().next_back().unwrap();
                    let here_min = *cell.iter().next().unwrap();
                    if above_max >= here_min {
                        return Err(TableauError::ColumnNotIncreasing {
                            row: i + 1,
                            col: j + 1,
                        });
                    }
                }
            }
        }
        Ok(SetValuedTableau { shape, cells })
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn cells(&self) -> &[Vec<BTreeSet<Letter>>] {
        &self.cells
    }

    /// Total number of letters over all cells, counted with multiplicity
    /// across cells.
    pub fn num_entries(&self) -> usize {
        self.cells.iter().flatten().map(|c| c.len()).sum()
    }

    /// How many times each letter appears (once per cell containing it).
    pub fn content(&self) -> BTreeMap<Letter, u32> {
        let mut out = BTreeMap::new();
        for cell in self.cells.iter().flatten() {
            for &x in cell {
                *out.entry(x).or_insert(0) += 1;
            }
        }
        out
    }
}

impl TryFrom<Vec<Vec<Vec<Letter>>>> for SetValuedTableau {
    type Error = TableauError;
    fn try_from(rows: Vec<Vec<Vec<Letter>>>) -> Result<Self, Self::Error> {
        SetValuedTableau::new(
            rows.into_iter()
                .map(|row| row.into_iter().map(|cell| cell.into_iter().collect()).collect())
                .collect(),
        )
    }
}

impl From<SetValuedTableau> for Vec<Vec<Vec<Letter>>> {
    fn from(t: SetValuedTableau) -> Self {
        t.cells
            .into_iter()
            .map(|row| row.into_iter().map(|cell| cell.into_iter().collect()).collect())
            .collect()
    }
}

impl fmt::Display for SetValuedTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.cells.is_empty() {
            return write!(f, "∅");
        }
        for (i, row) in self.cells.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            for (j, cell) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{{")?;
                for (k, x) in cell.iter().enumerate() {
                    if k > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, "}}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for SetValuedTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.cells)
    }
}

/// Calls `f` on every set-valued tableau of the given shape with letters
/// in `1..=max_letter` and at most `max_entries` letters in total.
pub fn for_each_set_valued_tableau(
    shape: &Partition,
    max_letter: Letter,
    max_entries: usize,
    mut f: impl FnMut(&SetValuedTableau),
) {
    let cells_list: Vec<(usize, usize)> = shape.cells().collect();
    if cells_list.len() > max_entries {
        return;
    }
    let mut cells: Vec<Vec<BTreeSet<Letter>>> = shape
        .parts()
        .iter()
        .map(|&p| vec![BTreeSet::new(); p as usize])
        .collect();
    fill_svt_cell(
        shape,
        max_letter,
        max_entries,
        &cells_list,
        0,
        &mut cells,
        &mut f,
    );
}

fn fill_svt_cell(
    shape: &Partition,
    max_letter: Letter,
    budget: usize,
    cells_list: &[(usize, usize)],
    idx: usize,
    cells: &mut Vec<Vec<BTreeSet<Letter>>>,
    f: &mut impl FnMut(&SetValuedTableau),
) {
    if idx == cells_list.len() {
        f(&SetValuedTableau {
            shape: shape.clone(),
            cells: cells.clone(),
        });
        return;
    }
    let remaining_cells = cells_list.len() - idx;
    if budget < remaining_cells {
        return;
    }
    let (i, j) = cells_list[idx];
    // Smallest letter this cell may contain: at least max of the left
    // neighbor (weak rows) and strictly above the upper neighbor.
    let mut lo: Letter = 1;
    if j > 1 {
        lo = lo.max(*cells[i - 1][j - 2].iter().next_back().unwrap());
    }
    if i > 1 {
        let above = *cells[i - 2][j - 1].iter().next_back().unwrap();
        if above == Letter::MAX {
            return;
        }
        lo = lo.max(above + 1);
    }
    // Every later cell still needs at least one letter.
    let max_size = budget - (remaining_cells - 1);
    if lo > max_letter {
        return;
    }
    grow_svt_set(
        shape, max_letter, budget, cells_list, idx, cells, f, (i, j), lo, max_size,
    )
}

#[allow(clippy::too_many_arguments)]
fn grow_svt_set(
    shape: &Partition,
    max_letter: Letter,
    budget: usize,
    cells_list: &[(usize, usize)],
    idx: usize,
    cells: &mut Vec<Vec<BTreeSet<Letter>>>,
    f: &mut impl FnMut(&SetValuedTableau),
    cell: (usize, usize),
    lo: Letter,
    remaining: usize,
) {
    let (i, j) = cell;
    for x in lo..=max_letter {
        cells[i - 1][j - 1].insert(x);
        let used = cells[i - 1][j - 1].len();
        fill_svt_cell(shape, max_letter, budget - used, cells_list, idx + 1, cells, f);
        if remaining > 1 && x < max_letter {
            grow_svt_set(
                shape,
                max_letter,
                budget,
                cells_list,
                idx,
                cells,
                f,
                cell,
                x + 1,
                remaining - 1,
            );
        }
        cells[i - 1][j - 1].remove(&x);
    }
}

/// A weak set-valued tableau: every cell holds a nonempty *multiset* of
/// letters, under the same comparisons as a set-valued tableau (rows
/// weakly increasing, columns strictly increasing, with multiset min and
/// max). Cell contents are kept sorted.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<Vec<Letter>>>", into = "Vec<Vec<Vec<Letter>>>")]
pub struct WeakSetValuedTableau {
    shape: Partition,
    cells: Vec<Vec<Vec<Letter>>>,
}

impl WeakSetValuedTableau {
    pub fn new(mut cells: Vec<Vec<Vec<Letter>>>) -> Result<Self, TableauError> {
        let shape = Partition::new(cells.iter().map(|r| r.len() as u32).collect())?;
        for row in &mut cells {
            for cell in row.iter_mut() {
                cell.sort_unstable();
            }
        }
        for (i, row) in cells.iter().enumerate() {
            for (j, cell) in row.iter().enumerate() {
                if cell.is_empty() {
                    return Err(TableauError::EmptySetCell {
                        row: i + 1,
                        col: j + 1,
                    });
                }
                if cell.contains(&0) {
                    return Err(TableauError::ZeroEntry { row: i + 1 });
                }
                if j > 0 && *row[j - 1].last().unwrap() > cell[0] {
                    return Err(TableauError::RowNotWeaklyIncreasing {
                        row: i + 1,
                        col: j + 1,
                    });
                }
                if i > 0 && j < cells[i - 1].len() && *cells[i - 1][j].last().unwrap() >= cell[0] {
                    return Err(TableauError::ColumnNotIncreasing {
                        row: i + 1,
                        col: j + 1,
                    });
                }
            }
        }
        Ok(WeakSetValuedTableau { shape, cells })
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn cells(&self) -> &[Vec<Vec<Letter>>] {
        &self.cells
    }

    /// Total number of letters over all cells, with multiplicity.
    pub fn num_entries(&self) -> usize {
        self.cells.iter().flatten().map(|c| c.len()).sum()
    }

    /// How many times each letter appears, with multiplicity.
    pub fn content(&self) -> BTreeMap<Letter, u32> {
        let mut out = BTreeMap::new();
        for x in self.cells.iter().flatten().flatten() {
            *out.entry(*x).or_insert(0) += 1;
        }
        out
    }
}

impl TryFrom<Vec<Vec<Vec<Letter>>>> for WeakSetValuedTableau {
    type Error = TableauError;
    fn try_from(rows: Vec<Vec<Vec<Letter>>>) -> Result<Self, Self::Error> {
        WeakSetValuedTableau::new(rows)
    }
}

impl From<WeakSetValuedTableau> for Vec<Vec<Vec<Letter>>> {
    fn from(t: WeakSetValuedTableau) -> Self {
        t.cells
    }
}

impl fmt::Display for WeakSetValuedTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.cells.is_empty() {
            return write!(f, "∅");
        }
        for (i, row) in self.cells.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            for (j, cell) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{{")?;
                for (k, x) in cell.iter().enumerate() {
                    if k > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, "}}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for WeakSetValuedTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.cells)
    }
}

/// Standardizes a weak set-valued tableau with `N` total entries into a
/// set-valued tableau on `{1, …, N}`: values are processed in increasing
/// order, and the copies of each value are replaced by the next unused
/// labels from southwest to northeast (lower rows first, then left to
/// right; repeats inside one cell take consecutive labels).
pub fn standardize_weak_tableau(weak: &WeakSetValuedTableau) -> SetValuedTableau {
    // occurrences[v] = cells containing v, with multiplicities.
    let mut occurrences: BTreeMap<Letter, Vec<(usize, usize, usize)>> = BTreeMap::new();
    for (i, row) in weak.cells().iter().enumerate() {
        for (j, cell) in row.iter().enumerate() {
            for &v in cell {
                let list = occurrences.entry(v).or_default();
                match list.last_mut() {
                    Some(entry) if (entry.0, entry.1) == (i, j) => entry.2 += 1,
                    _ => list.push((i, j, 1)),
                }
            }
        }
    }
    let mut out: Vec<Vec<BTreeSet<Letter>>> = weak
        .cells()
        .iter()
        .map(|row| vec![BTreeSet::new(); row.len()])
        .collect();
    let mut next: usize = 1;
    for (_, mut cells) in occurrences {
        // Southwest to northeast: descending row, then ascending column.
        cells.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        for (i, j, multiplicity) in cells {
            for _ in 0..multiplicity {
                out[i][j].insert(Letter::try_from(next).expect("standardized entries fit a byte"));
                next += 1;
            }
        }
    }
    SetValuedTableau::new(out).expect("standardization preserves row and column comparisons")
}

/// Calls `f` on every weak set-valued tableau of the given shape with
/// letters in `1..=max_letter` and at most `max_entries` letters in total
/// (with multiplicity).
pub fn for_each_weak_set_valued_tableau(
    shape: &Partition,
    max_letter: Letter,
    max_entries: usize,
    mut f: impl FnMut(&WeakSetValuedTableau),
) {
    let cells_list: Vec<(usize, usize)> = shape.cells().collect();
    if cells_list.len() > max_entries {
        return;
    }
    let mut cells: Vec<Vec<Vec<Letter>>> = shape
        .parts()
        .iter()
        .map(|&p| vec![Vec::new(); p as usize])
        .collect();
    fill_weak_cell(
        shape,
        max_letter,
        max_entries,
        &cells_list,
        0,
        &mut cells,
        &mut f,
    );
}

fn fill_weak_cell(
    shape: &Partition,
    max_letter: Letter,
    budget: usize,
    cells_list: &[(usize, usize)],
    idx: usize,
    cells: &mut Vec<Vec<Vec<Letter>>>,
    f: &mut impl FnMut(&WeakSetValuedTableau),
) {
    if idx == cells_list.len() {
        f(&WeakSetValuedTableau {
            shape: shape.clone(),
            cells: cells.clone(),
        });
        return;
    }
    let remaining_cells = cells_list.len() - idx;
    if budget < remaining_cells {
        return;
    }
    let (i, j) = cells_list[idx];
    let mut lo: Letter = 1;
    if j > 1 {
        lo = lo.max(*cells[i - 1][j - 2].last().unwrap());
    }
    if i > 1 {
        let above = *cells[i - 2][j - 1].last().unwrap();
        if above == Letter::MAX {
            return;
        }
        lo = lo.max(above + 1);
    }
    if lo > max_letter {
        return;
    }
    let max_size = budget - (remaining_cells - 1);
    grow_weak_multiset(
        shape, max_letter, budget, cells_list, idx, cells, f, (i, j), lo, max_size,
    )
}

#[allow(clippy::too_many_arguments)]
fn grow_weak_multiset(
    shape: &Partition,
    max_letter: Letter,
    budget: usize,
    cells_list: &[(usize, usize)],
    idx: usize,
    cells: &mut Vec<Vec<Vec<Letter>>>,
    f: &mut impl FnMut(&WeakSetValuedTableau),
    cell: (usize, usize),
    lo: Letter,
    remaining: usize,
) {
    let (i, j) = cell;
    for x in lo..=max_letter {
        cells[i - 1][j - 1].push(x);
        let used = cells[i - 1][j - 1].len();
        fill_weak_cell(shape, max_letter, budget - used, cells_list, idx + 1, cells, f);
        if remaining > 1 {
            // Multisets may repeat a letter, so the next element is ≥ x.
            grow_weak_multiset(
                shape,
                max_letter,
                budget,
                cells_list,
                idx,
                cells,
                f,
                cell,
                x,
                remaining - 1,
            );
        }
        cells[i - 1][j - 1].pop();
    }
}
