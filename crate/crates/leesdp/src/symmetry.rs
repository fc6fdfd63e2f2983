//! Canonical forms and orbit enumeration under the full symmetry group of
//! the circular metrics, the wreath product `D_q^n ⋊ S_n`.
//!
//! The group acts on words by an independent dihedral symmetry of `Z_q` in
//! each coordinate followed by a permutation of the coordinates; both
//! metrics are invariant.  Variables of the reduced programs are indexed by
//! orbits of codes of size at most three, so everything here revolves
//! around a canonical form for such codes:
//!
//! * a column of a code (the triple of symbols the words share at one
//!   coordinate) is canonicalized to the lexicographically least element of
//!   its diagonal `D_q`-orbit,
//! * columns are sorted to canonicalize the coordinate permutation,
//! * and the minimum over the at most `3!` orderings of the words removes
//!   the arbitrary row order.
//!
//! Orbits are enumerated without ever touching all of `(Z_q^n)^3`: every
//! orbit of a nonempty code of size at most three has a representative
//! `{0, α, β}`, which is determined by the multiset of canonical column
//! classes of the matrix with rows `0, α, β`.  Walking over the multisets
//! of `n` column classes (`r`, and its restriction `r'` to pairs) is
//! polynomial in `n` and reaches every orbit.

use crate::words::{min_distance, Code, Distance, Metric, Word};
use crate::{Error, Result};
use std::collections::HashMap;
use std::io::Write;

/// Apply one dihedral symmetry `x ↦ shift ± x` of `Z_q` to a symbol.
pub fn dihedral_apply(q: u32, shift: u32, reflect: bool, x: u32) -> u32 {
    if reflect {
        (shift + q - x) % q
    } else {
        (shift + x) % q
    }
}

/// The `2q` images of a tuple under the diagonal dihedral action
/// (the same group element applied to every entry).
pub fn dihedral_images(q: u32, t: &[u32]) -> Vec<Vec<u32>> {
    let mut out = Vec::with_capacity(2 * q as usize);
    for reflect in [false, true] {
        for shift in 0..q {
            out.push(t.iter().map(|&x| dihedral_apply(q, shift, reflect, x)).collect());
        }
    }
    out
}

/// Lexicographically least image of a tuple under the diagonal dihedral
/// action — the canonical representative of its orbit.  Always starts
/// with symbol 0 for nonempty tuples.
pub fn lex_min_image(q: u32, t: &[u32]) -> Vec<u32> {
    dihedral_images(q, t).into_iter().min().unwrap_or_default()
}

/// The diagonal `D_q`-orbits of `Z_q^3`, each named by its lexicographically
/// least element ("column classes").
///
/// The representatives all start with 0: a code containing the zero word
/// has columns of the form `(0, a, b)`, and the class of such a column is
/// the data that survives the group action.  Classes of the form
/// `(0, 0, t)` double as the classes of unordered symbol pairs at circular
/// distance `t`; there are `⌊q/2⌋ + 1` of those.
pub struct ColumnClasses {
    q: u32,
    reps: Vec<[u32; 3]>,
    lookup: Vec<u16>,
    pair_ids: Vec<u16>,
}

impl ColumnClasses {
    pub fn new(q: u32) -> ColumnClasses {
        let qq = q as usize;
        let mut lookup = vec![u16::MAX; qq * qq * qq];
        let mut reps: Vec<[u32; 3]> = Vec::new();
        // triples in lexicographic order, so representatives come out sorted
        for a in 0..q {
            for b in 0..q {
                for c in 0..q {
                    let packed = ((a as usize * qq) + b as usize) * qq + c as usize;
                    if lookup[packed] != u16::MAX {
                        continue;
                    }
                    let id = reps.len() as u16;
                    reps.push([a, b, c]);
                    for img in dihedral_images(q, &[a, b, c]) {
                        let p = ((img[0] as usize * qq) + img[1] as usize) * qq + img[2] as usize;
                        lookup[p] = id;
                    }
                }
            }
        }
        let pair_ids = (0..=q / 2)
            .map(|t| {
                let packed = t as usize; // (0, 0, t)
                lookup[packed]
            })
            .collect();
        ColumnClasses { q, reps, lookup, pair_ids }
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Number of classes: `(q² + 1)/2` for odd `q`, `q²/2 + 2` for even —
    /// the dimension of the centralizer algebra of the dihedral action.
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn rep(&self, id: u16) -> [u32; 3] {
        self.reps[id as usize]
    }

    pub fn class_of(&self, t: [u32; 3]) -> u16 {
        let qq = self.q as usize;
        self.lookup[((t[0] as usize * qq) + t[1] as usize) * qq + t[2] as usize]
    }

    /// Class of the symbol pair `(a, b)`: the class of the triple
    /// `(a, a, b)`, which canonicalizes to `(0, 0, circ(a, b))`.
    pub fn pair_class_of(&self, a: u32, b: u32) -> u16 {
        self.class_of([a, a, b])
    }

    /// Class id of `(0, 0, t)` for a circular distance `t ≤ ⌊q/2⌋`.
    pub fn pair_class(&self, t: u32) -> u16 {
        self.pair_ids[t as usize]
    }

    /// Number of pair classes, `⌊q/2⌋ + 1`.
    pub fn pair_count(&self) -> usize {
        self.pair_ids.len()
    }
}

/// Canonical representatives of all diagonal `D_q`-orbits of `Z_q^3`,
/// sorted lexicographically.
pub fn enumerate_pi(q: u32) -> Vec<[u32; 3]> {
    ColumnClasses::new(q).reps
}

/// Canonical representatives of the symbol-pair classes: `(0, 0, t)` for
/// `t = 0..=⌊q/2⌋`.
pub fn enumerate_pi_prime(q: u32) -> Vec<[u32; 3]> {
    (0..=q / 2).map(|t| [0, 0, t]).collect()
}

const ORDERINGS: [&[usize]; 3] = [
    &[0],
    &[0, 1],
    &[0, 1, 2],
];

/// Canonical form of a code of size at most 3 under `D_q^n ⋊ S_n`.
///
/// For each ordering of the words, every column is replaced by the least
/// element of its dihedral orbit and the columns are then sorted; the
/// overall minimum over orderings is returned.  Two codes have the same
/// canonical form exactly when some group element maps one onto the other.
pub fn canonical_code(code: &Code) -> Code {
    let k = code.size();
    if k == 0 {
        return Code::empty();
    }
    assert!(k <= 3, "canonical form only defined for codes of size <= 3, got {k}");
    let q = code.q().expect("nonempty code");
    let n = code.n().expect("nonempty code");
    let words: Vec<&[u32]> = code.words().iter().map(|w| w.symbols()).collect();

    let mut best: Option<Vec<Vec<u32>>> = None;
    let mut perm: Vec<usize> = ORDERINGS[k - 1].to_vec();
    loop {
        let mut cols: Vec<Vec<u32>> = (0..n)
            .map(|j| {
                let col: Vec<u32> = perm.iter().map(|&r| words[r][j]).collect();
                lex_min_image(q, &col)
            })
            .collect();
        cols.sort();
        if best.as_ref().is_none_or(|b| cols < *b) {
            best = Some(cols);
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }

    let cols = best.expect("at least one ordering");
    let rebuilt: Vec<Word> = (0..k)
        .map(|r| Word::new(q, cols.iter().map(|col| col[r]).collect()).expect("symbols stay reduced"))
        .collect();
    Code::new(rebuilt).expect("uniform parameters")
}

/// Advance to the next lexicographic permutation; false after the last.
fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// One orbit of codes under `D_q^n ⋊ S_n`.
#[derive(Clone, Debug)]
pub struct Orbit {
    /// Canonical representative.
    pub rep: Code,
    /// Minimum Lee distance of the representative (orbit invariant).
    pub dist_lee: Distance,
    /// Minimum Lee-infinity distance (orbit invariant).
    pub dist_lee_inf: Distance,
}

impl Orbit {
    /// Number of words in the codes of this orbit.
    pub fn words(&self) -> usize {
        self.rep.size()
    }

    pub fn dist(&self, m: Metric) -> Distance {
        match m {
            Metric::Lee => self.dist_lee,
            Metric::LeeInf => self.dist_lee_inf,
        }
    }
}

/// All orbits of nonempty codes of size at most 3 in `(Z_q)^n`, reached by
/// realizing every multiset of `n` column classes.
///
/// Keeps the two monomial maps used by the symbolic expansion: `r` sends a
/// multiset of column classes to the orbit of `{0, α, β}` with those
/// columns, and `r'` sends a multiset of pair classes to the orbit of
/// `{α, β}`.
pub struct OrbitTable {
    pub q: u32,
    pub n: usize,
    pub classes: ColumnClasses,
    /// Orbits sorted by (size, representative); index 0 is the singleton
    /// orbit, whose variable carries the objective.
    pub orbits: Vec<Orbit>,
    index: HashMap<Code, usize>,
    r_map: HashMap<Vec<u16>, usize>,
    r_prime_map: HashMap<Vec<u16>, usize>,
}

impl OrbitTable {
    pub fn build(q: u32, n: usize) -> Result<OrbitTable> {
        if n == 0 {
            return Err(Error::InvalidArgument("orbit table needs n >= 1".into()));
        }
        let classes = ColumnClasses::new(q);

        // realize every multiset of column classes as a code {0, α, β}
        let monos = multisets(classes.len(), n);
        let mut reached: Vec<(Vec<u16>, Code)> = Vec::with_capacity(monos.len());
        let mut seen: HashMap<Code, (Distance, Distance)> = HashMap::new();
        for mono in monos {
            let mut alpha = vec![0u32; n];
            let mut beta = vec![0u32; n];
            for (i, &id) in mono.iter().enumerate() {
                let rep = classes.rep(id);
                alpha[i] = rep[1];
                beta[i] = rep[2];
            }
            let code = Code::new(vec![
                Word::zero(q, n),
                Word::new(q, alpha)?,
                Word::new(q, beta)?,
            ])?;
            let canon = canonical_code(&code);
            seen.entry(canon.clone()).or_insert_with(|| {
                (min_distance(&canon, Metric::Lee), min_distance(&canon, Metric::LeeInf))
            });
            reached.push((mono, canon));
        }

        let mut orbits: Vec<Orbit> = seen
            .into_iter()
            .map(|(rep, (dist_lee, dist_lee_inf))| Orbit { rep, dist_lee, dist_lee_inf })
            .collect();
        orbits.sort_by(|a, b| (a.words(), &a.rep).cmp(&(b.words(), &b.rep)));
        let index: HashMap<Code, usize> =
            orbits.iter().enumerate().map(|(i, o)| (o.rep.clone(), i)).collect();

        let mut r_map = HashMap::with_capacity(reached.len());
        for (mono, canon) in reached {
            r_map.insert(mono, index[&canon]);
        }

        // pair monomials: multisets of circular distances, realized as {0, β}
        let mut r_prime_map = HashMap::new();
        for mono in multisets(classes.pair_count(), n) {
            let beta: Vec<u32> = mono.iter().map(|&t| t as u32).collect();
            let code = Code::new(vec![Word::zero(q, n), Word::new(q, beta)?])?;
            let canon = canonical_code(&code);
            let idx = *index
                .get(&canon)
                .expect("every pair orbit is a degenerate triple orbit");
            r_prime_map.insert(mono, idx);
        }

        let table = OrbitTable { q, n, classes, orbits, index, r_map, r_prime_map };
        debug_assert_eq!(table.orbits[table.zero_orbit()].words(), 1);
        Ok(table)
    }

    /// Index of the singleton orbit (canonical form of any `{w}`).
    pub fn zero_orbit(&self) -> usize {
        0
    }

    /// Orbit of an arbitrary code of size 1..=3, if its parameters match.
    pub fn orbit_of(&self, code: &Code) -> Option<usize> {
        self.index.get(&canonical_code(code)).copied()
    }

    /// The map `r`: a sorted multiset of `n` column-class ids to the orbit
    /// of a code realizing those columns.
    pub fn r(&self, mono: &[u16]) -> usize {
        self.r_map[mono]
    }

    /// The map `r'`: a sorted multiset of `n` pair-class indices
    /// (`0..=⌊q/2⌋`, as circular distances) to the orbit of a pair
    /// realizing them.
    pub fn r_prime(&self, mono: &[u16]) -> usize {
        self.r_prime_map[mono]
    }

    /// Indices of the orbits whose minimum distance is at least `d`.
    pub fn feasible(&self, d: u32, m: Metric) -> Vec<usize> {
        (0..self.orbits.len()).filter(|&i| self.orbits[i].dist(m).at_least(d)).collect()
    }

    /// Indices of the feasible orbits of codes with at most `k` words.
    pub fn feasible_up_to(&self, d: u32, m: Metric, k: usize) -> Vec<usize> {
        self.feasible(d, m).into_iter().filter(|&i| self.orbits[i].words() <= k).collect()
    }

    /// One line per orbit: index, words, Lee distance, Lee-infinity
    /// distance, orbit size (blank if the group is too large to expand),
    /// representative.
    pub fn dump_tsv(&self, out: &mut dyn Write, size_cap: Option<u128>) -> std::io::Result<()> {
        writeln!(out, "orbit\twords\td_lee\td_lee_inf\tsize\trep")?;
        for (i, o) in self.orbits.iter().enumerate() {
            let size = match orbit_size(&o.rep, size_cap) {
                Ok(s) => s.to_string(),
                Err(_) => String::new(),
            };
            writeln!(
                out,
                "{i}\t{}\t{}\t{}\t{size}\t{}",
                o.words(),
                o.dist_lee,
                o.dist_lee_inf,
                o.rep
            )?;
        }
        Ok(())
    }
}

/// All sorted multisets of length `n` over `0..alphabet`, in lexicographic
/// order.
pub fn multisets(alphabet: usize, n: usize) -> Vec<Vec<u16>> {
    let mut out = Vec::new();
    let mut cur = vec![0u16; n];
    rec_multisets(alphabet as u16, n, 0, 0, &mut cur, &mut out);
    out
}

fn rec_multisets(k: u16, n: usize, at: usize, lo: u16, cur: &mut Vec<u16>, out: &mut Vec<Vec<u16>>) {
    if at == n {
        out.push(cur.clone());
        return;
    }
    for v in lo..k {
        cur[at] = v;
        rec_multisets(k, n, at + 1, v, cur, out);
    }
}

/// Default cap on `|D_q^n ⋊ S_n| = (2q)^n · n!` for explicit orbit
/// expansion.
pub const DEFAULT_GROUP_CAP: u128 = 20_000_000;

/// Exact size of the orbit of a code, by counting its stabilizer inside
/// the full group.  Errors out when `(2q)^n · n!` exceeds the cap.
pub fn orbit_size(rep: &Code, cap: Option<u128>) -> Result<u128> {
    let cap = cap.unwrap_or(DEFAULT_GROUP_CAP);
    let q = rep.q().ok_or_else(|| Error::InvalidArgument("empty code has no orbit".into()))?;
    let n = rep.n().expect("nonempty code");
    let group = group_order(q, n);
    if group > cap {
        return Err(Error::CapExceeded { size: group, cap });
    }

    let words: Vec<&[u32]> = rep.words().iter().map(|w| w.symbols()).collect();
    let target: std::collections::BTreeSet<Vec<u32>> =
        words.iter().map(|w| w.to_vec()).collect();

    let mut stab: u128 = 0;
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        // all (2q)^n dihedral tuples on top of this coordinate permutation
        let mut elem = vec![(0u32, false); n];
        loop {
            let image: std::collections::BTreeSet<Vec<u32>> = words
                .iter()
                .map(|w| {
                    (0..n)
                        .map(|j| {
                            let (shift, reflect) = elem[j];
                            dihedral_apply(q, shift, reflect, w[perm[j]])
                        })
                        .collect()
                })
                .collect();
            if image == target {
                stab += 1;
            }
            // odometer over dihedral tuples
            let mut j = 0;
            loop {
                if j == n {
                    break;
                }
                let (ref mut shift, ref mut reflect) = elem[j];
                *shift += 1;
                if *shift < q {
                    break;
                }
                *shift = 0;
                if !*reflect {
                    *reflect = true;
                    break;
                }
                *reflect = false;
                j += 1;
            }
            if j == n {
                break;
            }
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    debug_assert_eq!(group % stab, 0, "stabilizer order divides the group order");
    Ok(group / stab)
}

fn group_order(q: u32, n: usize) -> u128 {
    let mut g: u128 = 1;
    for i in 1..=n {
        g = g.saturating_mul(2 * q as u128).saturating_mul(i as u128);
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::all_words;
    use rand::{Rng, SeedableRng};

    fn w(q: u32, s: &[u32]) -> Word {
        Word::new(q, s.to_vec()).unwrap()
    }

    fn code(q: u32, words: &[&[u32]]) -> Code {
        Code::new(words.iter().map(|s| w(q, s)).collect()).unwrap()
    }

    #[test]
    fn column_class_counts_match_centralizer_dimension() {
        for q in 2..=12u32 {
            let expect = if q % 2 == 1 {
                (q * q + 1) / 2
            } else {
                q * q / 2 + 2
            } as usize;
            assert_eq!(enumerate_pi(q).len(), expect, "q = {q}");
            assert_eq!(enumerate_pi_prime(q).len(), (q / 2 + 1) as usize);
        }
        // odd q: one class per (0, j, h) with j ≤ ⌊q/2⌋, plus the (0,0,t)
        assert_eq!(enumerate_pi(5).len(), 13);
        assert_eq!(enumerate_pi(7).len(), 25);
    }

    #[test]
    fn column_class_representatives_are_minimal() {
        for q in [4u32, 5, 6, 7] {
            let classes = ColumnClasses::new(q);
            for id in 0..classes.len() as u16 {
                let rep = classes.rep(id);
                let v = rep.to_vec();
                assert_eq!(lex_min_image(q, &v), v, "rep {rep:?} q {q}");
                assert_eq!(rep[0], 0);
            }
            // lookup is constant on orbits
            for a in 0..q {
                for b in 0..q {
                    for c in 0..q {
                        let id = classes.class_of([a, b, c]);
                        for img in dihedral_images(q, &[a, b, c]) {
                            assert_eq!(classes.class_of([img[0], img[1], img[2]]), id);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn pair_classes_are_circular_distances() {
        let classes = ColumnClasses::new(7);
        for a in 0..7 {
            for b in 0..7 {
                let t = crate::words::circular_distance(7, a, b);
                assert_eq!(classes.pair_class_of(a, b), classes.pair_class(t));
            }
        }
    }

    #[test]
    fn lex_min_examples() {
        assert_eq!(lex_min_image(5, &[0, 4, 3]), vec![0, 1, 2]);
        assert_eq!(lex_min_image(5, &[2, 2, 2]), vec![0, 0, 0]);
        assert_eq!(lex_min_image(6, &[0, 3, 5]), vec![0, 3, 1]);
        assert_eq!(dihedral_images(5, &[0, 1]).len(), 10);
    }

    fn random_group_image(
        rng: &mut rand_chacha::ChaCha8Rng,
        q: u32,
        n: usize,
        c: &Code,
    ) -> Code {
        // random permutation
        let mut perm: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            let j = rng.gen_range(0..=i);
            perm.swap(i, j);
        }
        let elem: Vec<(u32, bool)> =
            (0..n).map(|_| (rng.gen_range(0..q), rng.gen_bool(0.5))).collect();
        let words: Vec<Word> = c
            .words()
            .iter()
            .map(|wd| {
                let syms: Vec<u32> = (0..n)
                    .map(|j| {
                        let (s, r) = elem[j];
                        dihedral_apply(q, s, r, wd.symbols()[perm[j]])
                    })
                    .collect();
                Word::new(q, syms).unwrap()
            })
            .collect();
        Code::new(words).unwrap()
    }

    #[test]
    fn canonical_form_is_orbit_invariant() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5EED);
        for q in [5u32, 6, 7] {
            for n in 1..=5usize {
                for _ in 0..1000 {
                    let k = rng.gen_range(1..=3usize);
                    let words: Vec<Word> = (0..k)
                        .map(|_| {
                            Word::new(q, (0..n).map(|_| rng.gen_range(0..q)).collect()).unwrap()
                        })
                        .collect();
                    let c = Code::new(words).unwrap();
                    let g = random_group_image(&mut rng, q, n, &c);
                    assert_eq!(canonical_code(&c), canonical_code(&g), "q={q} n={n} {c}");
                    // the group preserves both metrics
                    assert_eq!(min_distance(&c, Metric::Lee), min_distance(&g, Metric::Lee));
                    assert_eq!(
                        min_distance(&c, Metric::LeeInf),
                        min_distance(&g, Metric::LeeInf)
                    );
                }
            }
        }
    }

    #[test]
    fn canonical_form_is_idempotent_and_canonical_words() {
        let c = code(7, &[&[1, 2, 3], &[4, 5, 6], &[0, 0, 2]]);
        let canon = canonical_code(&c);
        assert_eq!(canonical_code(&canon), canon);
        assert_eq!(canon.size(), c.size());
        // a singleton always canonicalizes to the zero word
        let s = code(7, &[&[3, 1, 4]]);
        assert_eq!(canonical_code(&s), code(7, &[&[0, 0, 0]]));
    }

    /// Exhaustive cross-check at small parameters: the orbit table indexes
    /// every code of size ≤ 3, distinct canonical forms partition the
    /// codes, and orbit sizes add up to the number of codes.
    fn exhaustive_check(q: u32, n: usize) {
        let table = OrbitTable::build(q, n).unwrap();
        let words = all_words(q, n);
        let mut counts: HashMap<usize, u128> = HashMap::new();
        let nw = words.len();
        // count each distinct set once via subsets of sizes 1..=3
        let mut subset = |ids: &[usize]| {
            let c = Code::new(ids.iter().map(|&i| words[i].clone()).collect()).unwrap();
            let idx = table.orbit_of(&c).expect("indexed");
            *counts.entry(idx).or_insert(0) += 1;
        };
        for i in 0..nw {
            subset(&[i]);
            for j in i + 1..nw {
                subset(&[i, j]);
                for k in j + 1..nw {
                    subset(&[i, j, k]);
                }
            }
        }
        for (idx, count) in counts {
            let size = orbit_size(&table.orbits[idx].rep, None).unwrap();
            assert_eq!(size, count, "orbit {} of {q}^{n}", table.orbits[idx].rep);
        }
    }

    #[test]
    fn orbit_tables_are_complete_at_small_parameters() {
        exhaustive_check(3, 2);
        exhaustive_check(5, 1);
        exhaustive_check(4, 2);
    }

    #[test]
    fn orbit_sizes_sum_to_subset_counts() {
        // sum of orbit sizes over orbits of j-sets = C(q^n, j)
        for (q, n) in [(5u32, 2usize), (7, 2), (5, 3)] {
            let table = OrbitTable::build(q, n).unwrap();
            let total = (q as u128).pow(n as u32);
            let choose = |m: u128, k: u128| -> u128 {
                let mut num = 1u128;
                for i in 0..k {
                    num = num * (m - i) / (i + 1);
                }
                num
            };
            let mut by_words = [0u128; 4];
            for o in &table.orbits {
                by_words[o.words()] += orbit_size(&o.rep, None).unwrap();
            }
            assert_eq!(by_words[1], total);
            assert_eq!(by_words[2], choose(total, 2));
            assert_eq!(by_words[3], choose(total, 3), "q={q} n={n}");
        }
    }

    #[test]
    fn singleton_orbit_has_size_q_to_the_n() {
        let table = OrbitTable::build(7, 2).unwrap();
        let z = table.zero_orbit();
        assert_eq!(table.orbits[z].words(), 1);
        assert_eq!(orbit_size(&table.orbits[z].rep, None).unwrap(), 49);
    }

    #[test]
    fn feasible_counts_match_reference_table() {
        // orbit counts of codes with minimum Lee-infinity distance ≥ d
        let cases = [
            (5u32, 1usize, 2u32, 2usize),
            (5, 2, 2, 9),
            (5, 3, 2, 48),
            (7, 2, 2, 43),
            (7, 2, 3, 12),
            (7, 1, 3, 2),
        ];
        for (q, n, d, expect) in cases {
            let table = OrbitTable::build(q, n).unwrap();
            let got = table.feasible(d, Metric::LeeInf).len();
            assert_eq!(got, expect, "q={q} n={n} d={d}");
        }
        // q = 7, n = 1, d = 2: the feasible orbits are {0}, {0,2}, {0,3}
        // and the triple {0,2,4} (gaps 2,2,3); published tabulations of
        // this cell list 3, which misses the triple.
        let table = OrbitTable::build(7, 1).unwrap();
        assert_eq!(table.feasible(2, Metric::LeeInf).len(), 4);
    }

    #[test]
    fn monomial_maps_cover_all_orbits() {
        for (q, n) in [(5u32, 2usize), (7, 2), (6, 2)] {
            let table = OrbitTable::build(q, n).unwrap();
            let mut hit = vec![false; table.orbits.len()];
            for mono in multisets(table.classes.len(), n) {
                hit[table.r(&mono)] = true;
            }
            assert!(hit.iter().all(|&h| h), "r reaches every orbit");
            // r' reaches exactly the orbits of codes with ≤ 2 words
            let mut hit2 = vec![false; table.orbits.len()];
            for mono in multisets(table.classes.pair_count(), n) {
                hit2[table.r_prime(&mono)] = true;
            }
            for (i, o) in table.orbits.iter().enumerate() {
                assert_eq!(hit2[i], o.words() <= 2, "orbit {}", o.rep);
            }
        }
    }

    #[test]
    fn tsv_dump_has_one_line_per_orbit() {
        let table = OrbitTable::build(5, 2).unwrap();
        let mut buf = Vec::new();
        table.dump_tsv(&mut buf, None).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), table.orbits.len() + 1);
        assert!(text.lines().nth(1).unwrap().starts_with("0\t1\tinf\tinf"));
    }
}
