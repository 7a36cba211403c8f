//! Hecke row insertion, recording tableaux, and reverse insertion.
//!
//! Inserting a letter `x` into a straight increasing tableau proceeds row
//! by row. In the current row `R`:
//!
//! - if `x` is weakly larger than every entry of `R`, it is adjoined to
//!   the end of `R` when that keeps the tableau increasing (a new box,
//!   `α = 1`); otherwise the tableau is left unchanged and the insertion
//!   terminates at the box at the bottom of the column containing the
//!   rightmost box of `R` (`α = 0`);
//! - otherwise the smallest entry `y > x` is replaced by `x` when that
//!   keeps the tableau increasing (the row is left unchanged when not),
//!   and `y` is carried into the next row.
//!
//! Either way the insertion reports the resulting tableau, a corner cell
//! `c`, and the flag `α`. The map `(Y, x) ↦ (Z, c, α)` is a bijection
//! onto triples where `c` is any outer corner of `Z`; [`reverse_insert`]
//! computes its inverse. Recording the step number of every insertion in
//! a set-valued tableau alongside makes words recoverable:
//! [`insert_word`] and [`reverse_word`] are mutually inverse.

use crate::shape::{Composition, Partition};
use crate::tableau::IncreasingTableau;
use crate::word::{Letter, Word};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;

/// Errors raised by insertion and reverse insertion.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum InsertionError {
    #[error("insertion requires a straight-shape tableau")]
    SkewShapeInput,
    #[error("cell ({0}, {1}) is outside the tableau")]
    CellOutsideShape(usize, usize),
    #[error("cell ({0}, {1}) is not an outer corner")]
    NotACorner(usize, usize),
    #[error("row {row} has no entry smaller than {value}, so the bump cannot be reversed")]
    NoReverseCandidate { row: usize, value: Letter },
    #[error("recording tableau cell at row {row}, column {col} is empty")]
    EmptyRecordingCell { row: usize, col: usize },
    #[error("recording labels must be exactly 1..={size} (label {label} is missing)")]
    MissingLabel { label: u32, size: u32 },
    #[error("recording label {0} appears more than once")]
    DuplicateLabel(u32),
    #[error("recording tableau shape {q} does not match insertion tableau shape {p}")]
    RecordingShapeMismatch { p: Partition, q: Partition },
    #[error(transparent)]
    Shape(#[from] crate::shape::ShapeError),
}

/// The result of inserting one letter: the new tableau, the corner cell
/// where the insertion terminated (1-indexed `(row, col)`), and whether a
/// box was added (`alpha`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InsertionOutcome {
    pub tableau: IncreasingTableau,
    pub corner: (usize, usize),
    pub alpha: bool,
}

/// Inserts a single letter into a straight-shape increasing tableau.
pub fn insert_letter(
    tableau: &IncreasingTableau,
    letter: Letter,
) -> Result<InsertionOutcome, InsertionError> {
    if !tableau.is_straight() {
        return Err(InsertionError::SkewShapeInput);
    }
    let mut rows: Vec<Vec<Letter>> = tableau.rows().to_vec();
    let (corner, alpha) = insert_into_rows(&mut rows, letter);
    let tableau = IncreasingTableau::new_straight(rows)
        .expect("insertion rules preserve increasing tableaux");
    Ok(InsertionOutcome {
        tableau,
        corner,
        alpha,
    })
}

/// Core row-bumping loop on raw rows. Returns the corner and `alpha`.
fn insert_into_rows(rows: &mut Vec<Vec<Letter>>, letter: Letter) -> ((usize, usize), bool) {
    let mut x = letter;
    let mut r = 0; // 0-indexed row currently receiving x
    loop {
        if r == rows.len() {
            // A fresh empty row below the tableau. The carried letter always
            // adjoins: it either exceeds the replaced entry above it or came
            // from a column strictly left of column 1, which cannot happen.
            assert!(
                r == 0 || rows[r - 1][0] < x,
                "a letter bumped into an empty row always adjoins"
            );
            rows.push(vec![x]);
            return ((r + 1, 1), true);
        }
        let row_max = *rows[r].last().expect("tableau rows are nonempty");
        if x >= row_max {
            let j = rows[r].len(); // 0-indexed column of the would-be new box
            let row_ok = x > row_max;
            let col_ok = r == 0 || (j < rows[r - 1].len() && rows[r - 1][j] < x);
            if row_ok && col_ok {
                rows[r].push(x);
                return ((r + 1, j + 1), true);
            }
            // Terminal case: the tableau keeps its shape and the corner is
            // the bottom of the column through the rightmost box of this row.
            let col = rows[r].len();
            let bottom = (r..rows.len())
                .take_while(|&i| rows[i].len() >= col)
                .last()
                .expect("the current row reaches this column");
            return ((bottom + 1, col), false);
        }
        // Bump the smallest entry larger than x.
        let pos = rows[r].partition_point(|&e| e <= x);
        let y = rows[r][pos];
        let left_ok = pos == 0 || rows[r][pos - 1] < x;
        let above_ok = r == 0 || rows[r - 1][pos] < x;
        if left_ok && above_ok {
            rows[r][pos] = x;
        }
        x = y;
        r += 1;
    }
}

/// A recording tableau: the same shape as its insertion tableau, with
/// every box holding the (nonempty) set of step numbers that terminated
/// there. Step `k` starts a new box exactly when the `k`-th insertion
/// added one. Serializes as an array of rows of arrays, e.g.
/// `[[[1],[2,5]],[[3,4]]]`.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<Vec<u32>>>", into = "Vec<Vec<Vec<u32>>>")]
pub struct RecordingTableau {
    cells: Vec<Vec<BTreeSet<u32>>>,
}

impl RecordingTableau {
    /// Validates shape, nonempty boxes, and that the labels are exactly
    /// `1..=n` with no repeats.
    pub fn new(cells: Vec<Vec<BTreeSet<u32>>>) -> Result<Self, InsertionError> {
        Partition::new(cells.iter().map(|r| r.len() as u32).collect())?;
        let mut labels = BTreeSet::new();
        let mut total: u32 = 0;
        for (i, row) in cells.iter().enumerate() {
            for (j, cell) in row.iter().enumerate() {
                if cell.is_empty() {
                    return Err(InsertionError::EmptyRecordingCell {
                        row: i + 1,
                        col: j + 1,
                    });
                }
                for &label in cell {
                    if !labels.insert(label) {
                        return Err(InsertionError::DuplicateLabel(label));
                    }
                    total += 1;
                }
            }
        }
        for (expected, &found) in (1..=total).zip(labels.iter()) {
            if found != expected {
                return Err(InsertionError::MissingLabel {
                    label: expected,
                    size: total,
                });
            }
        }
        Ok(RecordingTableau { cells })
    }

    pub fn empty() -> Self {
        RecordingTableau { cells: Vec::new() }
    }

    pub fn cells(&self) -> &[Vec<BTreeSet<u32>>] {
        &self.cells
    }

    pub fn shape(&self) -> Partition {
        Partition::new(self.cells.iter().map(|r| r.len() as u32).collect())
            .expect("recording rows form a partition")
    }

    /// Total number of labels, i.e. the length of the recorded word.
    pub fn num_labels(&self) -> u32 {
        self.cells
            .iter()
            .flatten()
            .map(|c| c.len() as u32)
            .sum()
    }

    /// The box containing `label`, as 1-indexed `(row, col)`.
    pub fn position_of(&self, label: u32) -> Option<(usize, usize)> {
        for (i, row) in self.cells.iter().enumerate() {
            for (j, cell) in row.iter().enumerate() {
                if cell.contains(&label) {
                    return Some((i + 1, j + 1));
                }
            }
        }
        None
    }

    /// The labels `k` whose successor `k + 1` sits in a strictly lower row.
    pub fn descent_set(&self) -> BTreeSet<usize> {
        let mut row_of = vec![0usize; self.num_labels() as usize + 1];
        for (i, row) in self.cells.iter().enumerate() {
            for cell in row {
                for &label in cell {
                    row_of[label as usize] = i + 1;
                }
            }
        }
        (1..row_of.len().saturating_sub(1))
            .filter(|&k| row_of[k + 1] > row_of[k])
            .collect()
    }

    /// The composition of the label count cut at the descents. Recording
    /// tableaux transport descents: this equals the descent composition of
    /// the recorded word.
    pub fn descent_composition(&self) -> Composition {
        Composition::from_descent_set(&self.descent_set(), self.num_labels() as usize)
            .expect("descents lie strictly inside the label range")
    }
}

impl TryFrom<Vec<Vec<Vec<u32>>>> for RecordingTableau {
    type Error = InsertionError;
    fn try_from(rows: Vec<Vec<Vec<u32>>>) -> Result<Self, Self::Error> {
        RecordingTableau::new(
            rows.into_iter()
                .map(|row| row.into_iter().map(|cell| cell.into_iter().collect()).collect())
                .collect(),
        )
    }
}

impl From<RecordingTableau> for Vec<Vec<Vec<u32>>> {
    fn from(t: RecordingTableau) -> Self {
        t.cells
            .into_iter()
            .map(|row| row.into_iter().map(|cell| cell.into_iter().collect()).collect())
            .collect()
    }
}

impl fmt::Display for RecordingTableau {
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

impl fmt::Debug for RecordingTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.cells)
    }
}

/// Inserts a word letter by letter, producing the insertion tableau `P`
/// and the recording tableau `Q`.
pub fn insert_word(word: &Word) -> (IncreasingTableau, RecordingTableau) {
    let mut rows: Vec<Vec<Letter>> = Vec::new();
    let mut record: Vec<Vec<BTreeSet<u32>>> = Vec::new();
    for (k, x) in word.iter().enumerate() {
        let ((r, c), alpha) = insert_into_rows(&mut rows, x);
        let label = (k + 1) as u32;
        if alpha {
            if r > record.len() {
                record.push(Vec::new());
            }
            record[r - 1].push(BTreeSet::from([label]));
            debug_assert_eq!(record[r - 1].len(), c);
        } else {
            record[r - 1][c - 1].insert(label);
        }
    }
    let p = IncreasingTableau::new_straight(rows)
        .expect("insertion rules preserve increasing tableaux");
    let q = RecordingTableau { cells: record };
    (p, q)
}

/// The insertion tableau of a word.
pub fn p_tableau(word: &Word) -> IncreasingTableau {
    insert_word(word).0
}

/// Reverses one insertion step. `corner` must be an outer corner of the
/// tableau; every such triple `(tableau, corner, alpha)` is the image of
/// exactly one insertion `(Y, x)`, which this returns.
pub fn reverse_insert(
    tableau: &IncreasingTableau,
    corner: (usize, usize),
    alpha: bool,
) -> Result<(IncreasingTableau, Letter), InsertionError> {
    if !tableau.is_straight() {
        return Err(InsertionError::SkewShapeInput);
    }
    let (r, c) = corner;
    if tableau.get(r, c).is_none() {
        return Err(InsertionError::CellOutsideShape(r, c));
    }
    let outer = tableau.shape().outer();
    if c != outer.row(r) as usize || outer.row(r + 1) as usize >= c {
        return Err(InsertionError::NotACorner(r, c));
    }

    let mut rows: Vec<Vec<Letter>> = tableau.rows().to_vec();
    let mut y = rows[r - 1][c - 1];
    if alpha {
        rows[r - 1].pop();
        if rows[r - 1].is_empty() {
            rows.pop();
        }
    }
    for i in (1..r).rev() {
        // Largest entry smaller than y; column strictness guarantees one
        // exists in every valid tableau.
        let pos = rows[i - 1].partition_point(|&e| e < y);
        if pos == 0 {
            return Err(InsertionError::NoReverseCandidate { row: i, value: y });
        }
        let pos = pos - 1;
        let x = rows[i - 1][pos];
        let right_ok = pos + 1 >= rows[i - 1].len() || rows[i - 1][pos + 1] > y;
        let below_ok = i >= rows.len() || rows[i].len() <= pos || rows[i][pos] > y;
        if right_ok && below_ok {
            rows[i - 1][pos] = y;
        }
        y = x;
    }
    let tableau = IncreasingTableau::new_straight(rows)
        .expect("reverse insertion rules preserve increasing tableaux");
    Ok((tableau, y))
}

/// Recovers the word from an insertion/recording tableau pair by
/// reversing the steps in descending label order: the label's box gives
/// the corner, and `alpha` is 1 exactly when the label is alone there.
pub fn reverse_word(
    p: &IncreasingTableau,
    q: &RecordingTableau,
) -> Result<Word, InsertionError> {
    if !p.is_straight() {
        return Err(InsertionError::SkewShapeInput);
    }
    if *p.shape().outer() != q.shape() {
        return Err(InsertionError::RecordingShapeMismatch {
            p: p.shape().outer().clone(),
            q: q.shape(),
        });
    }
    let mut p = p.clone();
    let mut cells = q.cells.clone();
    let n = q.num_labels();
    let mut letters = Vec::with_capacity(n as usize);
    for label in (1..=n).rev() {
        let (r, c) = q
            .position_of(label)
            .expect("validated recording tableaux contain every label");
        let alone = cells[r - 1][c - 1].len() == 1;
        let (next, x) = reverse_insert(&p, (r, c), alone)?;
        p = next;
        if alone {
            cells[r - 1].pop();
            if cells[r - 1].is_empty() {
                cells.pop();
            }
        } else {
            cells[r - 1][c - 1].remove(&label);
        }
        letters.push(x);
    }
    letters.reverse();
    Ok(Word::new(letters).expect("reverse insertion emits valid letters"))
}
