//! Integer partitions, semistandard Young tableaux, and the bishapes that
//! index blocks of the reduced programs.
//!
//! The symmetry reduction decomposes `(R^q)^{⊗n}` as a module over the
//! wreath product `S_2 ≀ S_n`.  Isotypic components are indexed by pairs of
//! partitions with `n` cells in total ("bishapes"), and a basis of each
//! component by pairs of semistandard tableaux whose entries are bounded by
//! the dimensions of the two pieces of the base decomposition
//! `R^q = U_1 ⊕ U_2`.

use crate::{Error, Result};

/// An integer partition: a weakly decreasing list of positive parts.
///
/// The empty partition is allowed; it carries the trivial factor of a
/// bishape and has exactly one (empty) semistandard tableau.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Partition> {
        if parts.iter().any(|&p| p == 0) {
            return Err(Error::InvalidArgument("partition with a zero part".into()));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidArgument(format!("parts {parts:?} not weakly decreasing")));
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Partition {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Number of cells.
    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of rows.
    pub fn height(&self) -> usize {
        self.parts.len()
    }

    /// Heights of the columns of the Young diagram (the conjugate shape).
    pub fn column_heights(&self) -> Vec<usize> {
        let width = self.parts.first().copied().unwrap_or(0);
        (0..width)
            .map(|c| self.parts.iter().take_while(|&&p| p > c).count())
            .collect()
    }

    /// Cells of the diagram in row-major order as `(row, col)` pairs.
    pub fn cells(&self) -> Vec<(usize, usize)> {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(r, &len)| (0..len).map(move |c| (r, c)))
            .collect()
    }
}

impl std::fmt::Display for Partition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// All partitions of `n` in descending lexicographic order, `(n)` first.
pub fn partitions_of(n: usize) -> Vec<Partition> {
    partitions_with_height(n, n)
}

/// All partitions of `n` with at most `max_height` rows.
pub fn partitions_with_height(n: usize, max_height: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    rec_partitions(n, usize::MAX, max_height, &mut cur, &mut out);
    out
}

fn rec_partitions(
    left: usize,
    max_part: usize,
    rows_left: usize,
    cur: &mut Vec<usize>,
    out: &mut Vec<Partition>,
) {
    if left == 0 {
        out.push(Partition { parts: cur.clone() });
        return;
    }
    if rows_left == 0 {
        return;
    }
    for p in (1..=left.min(max_part)).rev() {
        cur.push(p);
        rec_partitions(left - p, p, rows_left - 1, cur, out);
        cur.pop();
    }
}

/// A semistandard Young tableau: entries in `1..=m`, rows weakly
/// increasing, columns strictly increasing.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Tableau {
    shape: Partition,
    rows: Vec<Vec<u8>>,
}

impl Tableau {
    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn rows(&self) -> &[Vec<u8>] {
        &self.rows
    }

    pub fn entry(&self, r: usize, c: usize) -> u8 {
        self.rows[r][c]
    }

    /// Entries concatenated row by row — the order in which the cells of
    /// the shape are matched with tensor positions.
    pub fn word(&self) -> Vec<u8> {
        self.rows.iter().flatten().copied().collect()
    }
}

impl std::fmt::Display for Tableau {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, "/")?;
            }
            for e in row {
                write!(f, "{e}")?;
            }
        }
        write!(f, "]")
    }
}

/// All semistandard tableaux of the given shape with entries in `1..=m`,
/// in lexicographic order of their row-major words.  Empty shape gives the
/// single empty tableau; a shape taller than `m` gives none.
pub fn semistandard_tableaux(shape: &Partition, m: usize) -> Vec<Tableau> {
    let cells = shape.cells();
    let mut rows: Vec<Vec<u8>> = shape.parts().iter().map(|&len| vec![0; len]).collect();
    let mut out = Vec::new();
    fill(shape, &cells, m, 0, &mut rows, &mut out);
    out
}

fn fill(
    shape: &Partition,
    cells: &[(usize, usize)],
    m: usize,
    at: usize,
    rows: &mut Vec<Vec<u8>>,
    out: &mut Vec<Tableau>,
) {
    if at == cells.len() {
        out.push(Tableau { shape: shape.clone(), rows: rows.clone() });
        return;
    }
    let (r, c) = cells[at];
    let mut lo = 1u8;
    if c > 0 {
        lo = lo.max(rows[r][c - 1]); // weakly increasing along the row
    }
    if r > 0 {
        lo = lo.max(rows[r - 1][c] + 1); // strictly increasing down the column
    }
    for e in lo..=(m as u8) {
        rows[r][c] = e;
        fill(shape, cells, m, at + 1, rows, out);
    }
    rows[r][c] = 0;
}

/// Number of semistandard tableaux by the hook content formula; used to
/// cross-check the explicit enumeration.
pub fn hook_content_count(shape: &Partition, m: usize) -> u128 {
    let cols = shape.column_heights();
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for (r, &len) in shape.parts().iter().enumerate() {
        for c in 0..len {
            let content = m + c;
            if content < r + 1 {
                return 0; // shape taller than the alphabet
            }
            num *= (content - r) as u128;
            let hook = (len - c) + (cols[c] - r) - 1;
            den *= hook as u128;
        }
    }
    num / den
}

/// A pair of partitions indexing one block of the reduced program.  The
/// left shape is filled with entries bounded by `m1 = ⌊q/2⌋ + 1`, the right
/// by `m2 = ⌊(q-1)/2⌋`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct BiShape {
    pub left: Partition,
    pub right: Partition,
}

impl BiShape {
    /// Total number of cells, `|left| + |right|`.
    pub fn total(&self) -> usize {
        self.left.size() + self.right.size()
    }
}

impl std::fmt::Display for BiShape {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}x{}", self.left, self.right)
    }
}

/// All bishapes with `n` cells in total whose parts can actually be filled:
/// the left shape at most `m1` rows tall, the right at most `m2`.
pub fn enumerate_bishapes(n: usize, m1: usize, m2: usize) -> Vec<BiShape> {
    let mut out = Vec::new();
    for n1 in (0..=n).rev() {
        for left in partitions_with_height(n1, m1) {
            for right in partitions_with_height(n - n1, m2) {
                out.push(BiShape { left: left.clone(), right });
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn partition_basics() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
        assert_eq!(p(&[3, 1]).size(), 4);
        assert_eq!(p(&[3, 1]).height(), 2);
        assert_eq!(p(&[3, 1]).column_heights(), vec![2, 1, 1]);
        assert_eq!(Partition::empty().column_heights(), Vec::<usize>::new());
        assert_eq!(p(&[2, 2, 1]).cells().len(), 5);
    }

    #[test]
    fn partition_counts() {
        // 1, 1, 2, 3, 5, 7, 11, 15, 22 partitions of 0..=8
        let expect = [1, 1, 2, 3, 5, 7, 11, 15, 22];
        for (n, &e) in expect.iter().enumerate() {
            assert_eq!(partitions_of(n).len(), e, "partitions of {n}");
        }
        assert_eq!(partitions_with_height(4, 2).len(), 3); // (4), (3,1), (2,2)
        assert_eq!(partitions_of(3)[0], p(&[3])); // descending order
    }

    #[test]
    fn ssyt_enumeration_matches_hook_content() {
        for (shape, m) in [
            (p(&[2, 1]), 3usize),
            (p(&[3]), 2),
            (p(&[1, 1, 1]), 3),
            (p(&[2, 2]), 4),
            (p(&[3, 2, 1]), 4),
        ] {
            let listed = semistandard_tableaux(&shape, m).len() as u128;
            assert_eq!(listed, hook_content_count(&shape, m), "shape {shape} m {m}");
        }
        // the classical count for shape (2,1) with three letters
        assert_eq!(semistandard_tableaux(&p(&[2, 1]), 3).len(), 8);
    }

    #[test]
    fn ssyt_constraints_hold() {
        for t in semistandard_tableaux(&p(&[3, 2]), 3) {
            for (r, row) in t.rows().iter().enumerate() {
                for c in 0..row.len() {
                    assert!((1..=3).contains(&row[c]));
                    if c > 0 {
                        assert!(row[c - 1] <= row[c]);
                    }
                    if r > 0 {
                        assert!(t.entry(r - 1, c) < row[c]);
                    }
                }
            }
        }
    }

    #[test]
    fn ssyt_degenerate_shapes() {
        assert_eq!(semistandard_tableaux(&Partition::empty(), 3).len(), 1);
        assert_eq!(semistandard_tableaux(&p(&[1, 1, 1]), 2).len(), 0);
        let t = &semistandard_tableaux(&p(&[2]), 1)[0];
        assert_eq!(t.word(), vec![1, 1]);
    }

    #[test]
    fn bishape_counts() {
        // q = 5 gives m1 = 3, m2 = 2
        assert_eq!(enumerate_bishapes(1, 3, 2).len(), 2); // ((1),()) and ((),(1))
        assert_eq!(enumerate_bishapes(2, 3, 2).len(), 5);
        // q = 2 gives m2 = 0: the right shape must stay empty
        assert_eq!(enumerate_bishapes(2, 2, 0).len(), 2);
        for bs in enumerate_bishapes(4, 3, 2) {
            assert_eq!(bs.total(), 4);
            assert!(bs.left.height() <= 3 && bs.right.height() <= 2);
        }
    }
}
