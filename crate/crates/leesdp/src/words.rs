//! Words over `Z_q`, codes, the Lee and Lee-infinity metrics, and exact
//! brute-force optima at small parameters.
//!
//! The two metrics share the circular distance on `Z_q`,
//! `min(|a-b|, q-|a-b|)`: the Lee distance sums it over coordinates, the
//! Lee-infinity distance takes the maximum.  A code with minimum
//! Lee-infinity distance at least `d` is exactly an independent set in the
//! `n`-th strong power of the circular graph `C(d, q)`.

use crate::clique::BitGraph;
use crate::{Error, Result};

/// Default cap on `q^n` for the exhaustive searches below.
pub const DEFAULT_CAP: u128 = 2500;

/// Which of the two circular metrics to use.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Metric {
    /// Sum of circular coordinate distances.
    Lee,
    /// Maximum circular coordinate distance.
    LeeInf,
}

impl Metric {
    pub fn name(self) -> &'static str {
        match self {
            Metric::Lee => "lee",
            Metric::LeeInf => "lee-inf",
        }
    }
}

/// Minimum distance of a code: infinite when there is no pair to measure.
///
/// A distinct tagged value rather than a numeric sentinel, so that
/// comparisons like `dmin >= d` read correctly for singletons and the empty
/// code.  The derived order places every finite value below `Infinite`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Distance {
    Finite(u32),
    Infinite,
}

impl Distance {
    pub fn at_least(self, d: u32) -> bool {
        match self {
            Distance::Infinite => true,
            Distance::Finite(x) => x >= d,
        }
    }
}

impl std::fmt::Display for Distance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Distance::Finite(x) => write!(f, "{x}"),
            Distance::Infinite => write!(f, "inf"),
        }
    }
}

/// Circular distance on `Z_q`.
pub fn circular_distance(q: u32, a: u32, b: u32) -> u32 {
    let d = a.abs_diff(b);
    d.min(q - d)
}

/// A word in `(Z_q)^n`.  Symbols are reduced residues `0..q`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Word {
    q: u32,
    symbols: Vec<u32>,
}

impl Word {
    pub fn new(q: u32, symbols: Vec<u32>) -> Result<Word> {
        if q < 2 {
            return Err(Error::InvalidArgument(format!("alphabet size {q} < 2")));
        }
        if let Some(&s) = symbols.iter().find(|&&s| s >= q) {
            return Err(Error::InvalidArgument(format!("symbol {s} not in Z_{q}")));
        }
        Ok(Word { q, symbols })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn n(&self) -> usize {
        self.symbols.len()
    }

    pub fn symbols(&self) -> &[u32] {
        &self.symbols
    }

    /// The all-zero word of length `n`.
    pub fn zero(q: u32, n: usize) -> Word {
        Word { q, symbols: vec![0; n] }
    }

    fn check_compatible(&self, other: &Word) -> Result<()> {
        if self.q != other.q || self.symbols.len() != other.symbols.len() {
            return Err(Error::Mismatch(format!(
                "words over Z_{}^{} and Z_{}^{}",
                self.q,
                self.n(),
                other.q,
                other.n()
            )));
        }
        Ok(())
    }
}

impl std::fmt::Display for Word {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, s) in self.symbols.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, ")")
    }
}

/// Lee distance: sum of circular coordinate distances.
pub fn lee_distance(u: &Word, v: &Word) -> Result<u32> {
    u.check_compatible(v)?;
    Ok(u.symbols
        .iter()
        .zip(&v.symbols)
        .map(|(&a, &b)| circular_distance(u.q, a, b))
        .sum())
}

/// Lee-infinity distance: maximum circular coordinate distance.
pub fn lee_inf_distance(u: &Word, v: &Word) -> Result<u32> {
    u.check_compatible(v)?;
    Ok(u.symbols
        .iter()
        .zip(&v.symbols)
        .map(|(&a, &b)| circular_distance(u.q, a, b))
        .max()
        .unwrap_or(0))
}

/// Distance in the chosen metric.
pub fn distance(m: Metric, u: &Word, v: &Word) -> Result<u32> {
    match m {
        Metric::Lee => lee_distance(u, v),
        Metric::LeeInf => lee_inf_distance(u, v),
    }
}

/// A code: a sorted, duplicate-free set of words sharing `q` and `n`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Code {
    words: Vec<Word>,
}

impl Code {
    pub fn new(mut words: Vec<Word>) -> Result<Code> {
        if let Some(first) = words.first() {
            let (q, n) = (first.q, first.n());
            for w in &words {
                if w.q != q || w.n() != n {
                    return Err(Error::Mismatch("code mixes word parameters".into()));
                }
            }
        }
        words.sort();
        words.dedup();
        Ok(Code { words })
    }

    pub fn empty() -> Code {
        Code { words: Vec::new() }
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn size(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn q(&self) -> Option<u32> {
        self.words.first().map(|w| w.q)
    }

    pub fn n(&self) -> Option<usize> {
        self.words.first().map(|w| w.n())
    }
}

impl std::fmt::Display for Code {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{")?;
        for (i, w) in self.words.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{w}")?;
        }
        write!(f, "}}")
    }
}

/// Minimum pairwise distance of a code; `Infinite` for sizes 0 and 1.
pub fn min_distance(c: &Code, m: Metric) -> Distance {
    let ws = c.words();
    let mut best: Option<u32> = None;
    for i in 0..ws.len() {
        for j in i + 1..ws.len() {
            // words in one code are compatible by construction
            let d = distance(m, &ws[i], &ws[j]).expect("code invariant");
            best = Some(best.map_or(d, |b| b.min(d)));
        }
    }
    match best {
        Some(d) => Distance::Finite(d),
        None => Distance::Infinite,
    }
}

/// Enumerate all of `(Z_q)^n` in lexicographic order.
pub fn all_words(q: u32, n: usize) -> Vec<Word> {
    let total = (q as u128).pow(n as u32);
    let mut out = Vec::with_capacity(total as usize);
    let mut cur = vec![0u32; n];
    loop {
        out.push(Word { q, symbols: cur.clone() });
        // increment little-endian on the rightmost coordinate
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            cur[i] += 1;
            if cur[i] < q {
                break;
            }
            cur[i] = 0;
        }
    }
}

/// Exact optimum `A_q(n, d)` in the chosen metric.  Errors out when `q^n`
/// exceeds the cap.  Returns the optimum size with one witness code.
///
/// The optimum is a maximum clique in the compatibility graph on `(Z_q)^n`
/// (words adjacent when their distance is at least `d`).  For the
/// Lee-infinity metric at `n ≥ 2` and `2 ≤ d ≤ ⌊q/2⌋` the clique search is
/// run through the layer decomposition of [`crate::layered`], which handles
/// parameters — `q = 7, n = 3, d = 2` most prominently — where plain
/// branch-and-bound stalls; in the remaining cases the compatibility graph
/// is searched directly, anchored at the all-zero word (sound because the
/// graph is translation-invariant).
pub fn brute_force_optimum(
    q: u32,
    n: usize,
    d: u32,
    m: Metric,
    cap: Option<u128>,
) -> Result<(usize, Vec<Word>)> {
    let cap = cap.unwrap_or(DEFAULT_CAP);
    let size = (q as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if size > cap {
        return Err(Error::CapExceeded { size, cap });
    }
    let (best, mut witness) = exact_optimum(q, n, d, m);
    witness.sort();
    debug_assert_eq!(best, witness.len());
    Ok((best, witness))
}

/// Dispatch between the layer decomposition and the direct clique search.
/// Callers have already checked the size cap; the recursive subproblems
/// here only shrink `n`.
fn exact_optimum(q: u32, n: usize, d: u32, m: Metric) -> (usize, Vec<Word>) {
    if m == Metric::LeeInf && n >= 2 && d >= 2 && d <= q / 2 {
        let prev = exact_optimum(q, n - 1, d, m).0;
        return crate::layered::layered_alpha(q, n, d, prev);
    }
    let words = all_words(q, n);
    let nv = words.len();
    let mut g = BitGraph::new(nv);
    for i in 0..nv {
        for j in i + 1..nv {
            let dist = distance(m, &words[i], &words[j]).expect("uniform word parameters");
            if dist >= d {
                g.add_edge(i, j);
            }
        }
    }
    let (best, clique) = g.max_clique_containing(0);
    (best, clique.into_iter().map(|i| words[i].clone()).collect())
}

/// Independence number of the `n`-th strong power of the circular graph
/// `C(d, q)` (vertices `Z_q`, edges between distinct vertices at circular
/// distance below `d`).  Independent sets of the strong power are exactly
/// codes with minimum Lee-infinity distance at least `d`.
pub fn alpha_circular_power(d: u32, q: u32, n: usize, cap: Option<u128>) -> Result<(usize, Vec<Word>)> {
    brute_force_optimum(q, n, d, Metric::LeeInf, cap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(q: u32, s: &[u32]) -> Word {
        Word::new(q, s.to_vec()).unwrap()
    }

    #[test]
    fn circular_distance_wraps() {
        assert_eq!(circular_distance(5, 0, 4), 1);
        assert_eq!(circular_distance(5, 1, 4), 2);
        assert_eq!(circular_distance(6, 0, 3), 3);
        assert_eq!(circular_distance(7, 2, 6), 3);
        assert_eq!(circular_distance(7, 0, 0), 0);
    }

    #[test]
    fn lee_distance_examples() {
        // d((0,0), (1,4)) over Z_5: 1 + 1
        assert_eq!(lee_distance(&w(5, &[0, 0]), &w(5, &[1, 4])).unwrap(), 2);
        assert_eq!(lee_inf_distance(&w(5, &[0, 0]), &w(5, &[1, 4])).unwrap(), 1);
        assert_eq!(lee_distance(&w(7, &[0, 0, 0]), &w(7, &[3, 4, 1])).unwrap(), 7);
        assert_eq!(lee_inf_distance(&w(7, &[0, 0, 0]), &w(7, &[3, 4, 1])).unwrap(), 3);
    }

    #[test]
    fn mismatched_words_error() {
        assert!(lee_distance(&w(5, &[0]), &w(7, &[0])).is_err());
        assert!(lee_distance(&w(5, &[0]), &w(5, &[0, 0])).is_err());
        assert!(Word::new(5, vec![5]).is_err());
    }

    #[test]
    fn min_distance_small_codes() {
        let c = Code::new(vec![w(5, &[0, 0])]).unwrap();
        assert_eq!(min_distance(&c, Metric::Lee), Distance::Infinite);
        assert_eq!(min_distance(&Code::empty(), Metric::Lee), Distance::Infinite);
        let c = Code::new(vec![w(5, &[0, 0]), w(5, &[1, 4]), w(5, &[2, 2])]).unwrap();
        assert_eq!(min_distance(&c, Metric::Lee), Distance::Finite(2));
        assert_eq!(min_distance(&c, Metric::LeeInf), Distance::Finite(1));
        assert!(Distance::Infinite.at_least(1000));
        assert!(Distance::Finite(3) < Distance::Infinite);
    }

    #[test]
    fn code_sorts_and_dedups() {
        let c = Code::new(vec![w(5, &[1, 0]), w(5, &[0, 1]), w(5, &[1, 0])]).unwrap();
        assert_eq!(c.size(), 2);
        assert_eq!(c.words()[0], w(5, &[0, 1]));
    }

    #[test]
    fn cap_is_enforced() {
        let err = brute_force_optimum(7, 5, 2, Metric::LeeInf, None).unwrap_err();
        assert!(matches!(err, Error::CapExceeded { .. }));
        let err = brute_force_optimum(5, 3, 2, Metric::LeeInf, Some(100)).unwrap_err();
        assert!(matches!(err, Error::CapExceeded { .. }));
    }

    #[test]
    fn distance_one_admits_everything() {
        let (a, _) = brute_force_optimum(5, 2, 1, Metric::Lee, None).unwrap();
        assert_eq!(a, 25);
        let (a, _) = brute_force_optimum(3, 3, 1, Metric::LeeInf, None).unwrap();
        assert_eq!(a, 27);
    }

    #[test]
    fn lee_optima_at_q5_n2() {
        // Exhaustively verified values for Z_5^2 (independent search).
        let (a, code) = brute_force_optimum(5, 2, 2, Metric::Lee, None).unwrap();
        assert_eq!(a, 10);
        let c = Code::new(code).unwrap();
        assert!(min_distance(&c, Metric::Lee).at_least(2));

        let (a, code) = brute_force_optimum(5, 2, 3, Metric::Lee, None).unwrap();
        assert_eq!(a, 5);
        let c = Code::new(code).unwrap();
        assert!(min_distance(&c, Metric::Lee).at_least(3));
    }

    #[test]
    fn circular_independence_small() {
        assert_eq!(alpha_circular_power(2, 5, 1, None).unwrap().0, 2);
        assert_eq!(alpha_circular_power(2, 5, 2, None).unwrap().0, 5);
        assert_eq!(alpha_circular_power(2, 7, 1, None).unwrap().0, 3);
        assert_eq!(alpha_circular_power(3, 7, 2, None).unwrap().0, 4);
        assert_eq!(alpha_circular_power(2, 4, 1, None).unwrap().0, 2);
    }

    #[test]
    fn witness_matches_reported_size() {
        let (a, code) = alpha_circular_power(2, 7, 2, None).unwrap();
        assert_eq!(a, 10);
        assert_eq!(code.len(), 10);
        let c = Code::new(code).unwrap();
        assert!(min_distance(&c, Metric::LeeInf).at_least(2));
    }

    proptest! {
        #[test]
        fn metric_axioms(q in 2u32..9, n in 1usize..5, seed in any::<u64>()) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let rand_word = |rng: &mut rand_chacha::ChaCha8Rng| {
                Word::new(q, (0..n).map(|_| rng.gen_range(0..q)).collect()).unwrap()
            };
            let u = rand_word(&mut rng);
            let v = rand_word(&mut rng);
            let t = rand_word(&mut rng);
            for m in [Metric::Lee, Metric::LeeInf] {
                let duv = distance(m, &u, &v).unwrap();
                let dvu = distance(m, &v, &u).unwrap();
                prop_assert_eq!(duv, dvu);
                prop_assert_eq!(duv == 0, u == v);
                let dut = distance(m, &u, &t).unwrap();
                let dtv = distance(m, &t, &v).unwrap();
                prop_assert!(duv <= dut + dtv);
            }
            // the two metrics bracket each other
            let dl = distance(Metric::Lee, &u, &v).unwrap();
            let di = distance(Metric::LeeInf, &u, &v).unwrap();
            prop_assert!(di <= dl);
            prop_assert!(dl <= di * n as u32);
        }

        #[test]
        fn optimum_monotone_in_d(q in 3u32..6, n in 1usize..3) {
            let mut prev = usize::MAX;
            for d in 1..=(q / 2) {
                let (a, _) = brute_force_optimum(q, n, d, Metric::LeeInf, None).unwrap();
                prop_assert!(a <= prev);
                prev = a;
            }
        }
    }
}
