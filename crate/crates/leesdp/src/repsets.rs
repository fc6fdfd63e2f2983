//! Representative sets and the symbolic expansion of reduced block entries
//! into orbit variables.
//!
//! Under the reflection `x ↦ -x` the space `R^q` splits into an even part
//! of dimension `m1 = ⌊q/2⌋ + 1` (spanned by `e_0` and `e_j + e_{q-j}`) and
//! an odd part of dimension `m2 = ⌊(q-1)/2⌋` (spanned by `e_j - e_{q-j}`).
//! A block of the reduced program is indexed by a bishape and a pair of
//! semistandard tableaux, and its entry is a polynomial
//!
//! ```text
//! p_{τ,σ} = ∏_{i=1,2}  Σ_{τ'~τ_i, σ'~σ_i}  Σ_{c,c' ∈ C_λ} sgn(cc')
//!              ∏_{cells y}  B_i(τ'(c(y))) ⊗ B_i(σ'(c'(y)))
//! ```
//!
//! where `τ' ~ τ` runs over the distinct row rearrangements and `C_λ` is
//! the column stabilizer.  Each elementary tensor `B_i(j) ⊗ B_i(h)` is a
//! linear combination of the invariant basis elements of the relevant
//! centralizer algebra — column classes for blocks anchored at the zero
//! word, circular-distance classes for the unanchored blocks — so the whole
//! entry expands into an integer polynomial whose monomials are multisets
//! of classes, one per coordinate.
//!
//! The inner double sum over the column stabilizer factors over columns
//! into determinants: for a column with cells `y_1..y_r`,
//! `Σ_{π,ρ ∈ S_r} sgn(πρ) ∏_t A_{π(t),ρ(t)} = r! · det A` with
//! `A_{t,u} = B(τ'(y_t)) ⊗ B(σ'(y_u))`.  [`expand_factor`] uses that
//! factorization; [`expand_factor_naive`] evaluates the definition
//! literally and exists to keep the fast path honest.

use crate::symmetry::ColumnClasses;
use crate::tableaux::{Partition, Tableau};
use crate::{Error, Result};
use std::collections::{BTreeMap, HashMap};

/// Representative data of the base decomposition for one alphabet size.
#[derive(Clone, Debug)]
pub struct ReprData {
    pub q: u32,
    /// Dimension of the reflection-even part, `⌊q/2⌋ + 1`.
    pub m1: usize,
    /// Dimension of the reflection-odd part, `⌊(q-1)/2⌋`.
    pub m2: usize,
    /// Columns spanning the even part: `e_0`, then `e_j + e_{q-j}`.
    pub b1: Vec<Vec<i64>>,
    /// Columns spanning the odd part: `e_j - e_{q-j}`.
    pub b2: Vec<Vec<i64>>,
    /// Scaled cosine vectors, one per irreducible constituent of the
    /// dihedral action on `R^q`: entry `t` of column `i` is
    /// `√(dim V_i) · cos(2π i t / q)`.
    pub cosine: Vec<Vec<f64>>,
}

/// Number of irreducible constituents of the dihedral action on `R^q`,
/// `⌊q/2⌋ + 1`.
pub fn irreducible_count(q: u32) -> usize {
    (q / 2 + 1) as usize
}

pub fn representative_data(q: u32) -> ReprData {
    let qq = q as usize;
    let m1 = qq / 2 + 1;
    let m2 = (qq - 1) / 2;

    let mut b1 = Vec::with_capacity(m1);
    let mut e0 = vec![0i64; qq];
    e0[0] = 1;
    b1.push(e0);
    for j in 1..=qq / 2 {
        let mut col = vec![0i64; qq];
        col[j] += 1;
        col[qq - j] += 1; // j = q/2 for even q doubles up to a single 2
        b1.push(col);
    }

    let mut b2 = Vec::with_capacity(m2);
    for j in 1..=m2 {
        let mut col = vec![0i64; qq];
        col[j] += 1;
        col[qq - j] -= 1;
        b2.push(col);
    }

    let cosine = (0..irreducible_count(q))
        .map(|i| {
            let dim = if i == 0 || 2 * i == qq { 1.0f64 } else { 2.0 };
            (0..qq)
                .map(|t| {
                    dim.sqrt()
                        * (2.0 * std::f64::consts::PI * (i * t) as f64 / qq as f64).cos()
                })
                .collect()
        })
        .collect();

    ReprData { q, m1, m2, b1, b2, cosine }
}

/// Which centralizer basis a factor `B_i(j) ⊗ B_i(h)` is rewritten in.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Subst {
    /// Blocks anchored at the zero word: classes of columns `(0, j, h)`,
    /// identified by their ids in [`ColumnClasses`].
    ZeroAnchored,
    /// Unanchored blocks: classes of symbol pairs, identified by their
    /// circular distance `0..=⌊q/2⌋`.
    PairDistance,
}

/// Rewrite `B_factor(j) ⊗ B_factor(h)` in the invariant basis selected by
/// `which`.  Entries `j`, `h` are 1-based column indices (tableau entries).
/// Returns `(class id, coefficient)` pairs with distinct ids.
pub fn substitute(
    classes: &ColumnClasses,
    which: Subst,
    factor: u8,
    j: u8,
    h: u8,
) -> Vec<(u16, i64)> {
    let q = classes.q();
    let mut terms: Vec<(u16, i64)> = Vec::with_capacity(2);
    let mut push = |id: u16, c: i64| {
        if let Some(t) = terms.iter_mut().find(|t| t.0 == id) {
            t.1 += c;
        } else {
            terms.push((id, c));
        }
    };
    match (which, factor) {
        (Subst::ZeroAnchored, 1) => match (j, h) {
            (1, 1) => push(classes.class_of([0, 0, 0]), 1),
            (1, _) => push(classes.class_of([0, 0, h as u32 - 1]), 2),
            (_, 1) => push(classes.class_of([0, j as u32 - 1, 0]), 2),
            (_, _) => {
                let (jj, hh) = (j as u32 - 1, h as u32 - 1);
                push(classes.class_of([0, jj, hh]), 2);
                push(classes.class_of([0, jj, q - hh]), 2);
            }
        },
        (Subst::ZeroAnchored, 2) => {
            let (jj, hh) = (j as u32, h as u32);
            push(classes.class_of([0, jj, hh]), 2);
            push(classes.class_of([0, jj, q - hh]), -2);
        }
        (Subst::PairDistance, 1) => match (j, h) {
            (1, 1) => push(0, 1),
            (1, _) => push(h as u16 - 1, 2),
            (_, 1) => push(j as u16 - 1, 2),
            (_, _) => {
                let (jj, hh) = (j as u32 - 1, h as u32 - 1);
                push(jj.abs_diff(hh) as u16, 2);
                push((jj + hh).min(q - (jj + hh)) as u16, 2);
            }
        },
        (Subst::PairDistance, 2) => {
            let (jj, hh) = (j as u32, h as u32);
            push(jj.abs_diff(hh) as u16, 2);
            push((jj + hh).min(q - (jj + hh)) as u16, -2);
        }
        _ => panic!("factor must be 1 or 2"),
    }
    terms.retain(|t| t.1 != 0);
    terms
}

/// An integer polynomial whose monomials are sorted multisets of class
/// ids.  Coefficients are checked `i128`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct OrbitPolynomial {
    terms: BTreeMap<Vec<u16>, i128>,
}

impl OrbitPolynomial {
    pub fn zero() -> OrbitPolynomial {
        OrbitPolynomial::default()
    }

    /// The empty product: the constant 1 (a single degree-0 monomial).
    pub fn one() -> OrbitPolynomial {
        let mut terms = BTreeMap::new();
        terms.insert(Vec::new(), 1);
        OrbitPolynomial { terms }
    }

    pub fn linear(terms: &[(u16, i64)]) -> OrbitPolynomial {
        let mut p = OrbitPolynomial::zero();
        for &(id, c) in terms {
            p.add_term(&[id], c as i128).expect("linear forms cannot overflow");
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u16>, i128)> + '_ {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn add_term(&mut self, mono: &[u16], c: i128) -> Result<()> {
        debug_assert!(mono.windows(2).all(|w| w[0] <= w[1]), "monomials are sorted");
        if c == 0 {
            return Ok(());
        }
        let slot = self.terms.entry(mono.to_vec()).or_insert(0);
        *slot = slot.checked_add(c).ok_or(Error::Overflow)?;
        if *slot == 0 {
            self.terms.remove(mono);
        }
        Ok(())
    }

    pub fn add_assign(&mut self, other: &OrbitPolynomial) -> Result<()> {
        for (m, c) in other.terms() {
            self.add_term(m, c)?;
        }
        Ok(())
    }

    pub fn scale(&mut self, k: i128) -> Result<()> {
        if k == 0 {
            self.terms.clear();
            return Ok(());
        }
        for c in self.terms.values_mut() {
            *c = c.checked_mul(k).ok_or(Error::Overflow)?;
        }
        Ok(())
    }

    pub fn mul(&self, other: &OrbitPolynomial) -> Result<OrbitPolynomial> {
        let mut out = OrbitPolynomial::zero();
        for (ma, ca) in self.terms() {
            for (mb, cb) in other.terms() {
                let c = ca.checked_mul(cb).ok_or(Error::Overflow)?;
                out.add_term(&merge_sorted(ma, mb), c)?;
            }
        }
        Ok(out)
    }

    /// Fold the coefficients through a monomial-to-orbit map, producing a
    /// dense coefficient vector over `n_orbits` orbits.
    pub fn fold_orbits(
        &self,
        n_orbits: usize,
        map: impl Fn(&[u16]) -> usize,
    ) -> Result<Vec<i128>> {
        let mut out = vec![0i128; n_orbits];
        for (m, c) in self.terms() {
            let idx = map(m);
            out[idx] = out[idx].checked_add(c).ok_or(Error::Overflow)?;
        }
        Ok(out)
    }
}

fn merge_sorted(a: &[u16], b: &[u16]) -> Vec<u16> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        if a[i] <= b[j] {
            out.push(a[i]);
            i += 1;
        } else {
            out.push(b[j]);
            j += 1;
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// Distinct row rearrangements of a tableau, as row-major entry words.
pub fn row_equivalents(t: &Tableau) -> Vec<Vec<u8>> {
    let mut rows: Vec<Vec<Vec<u8>>> = Vec::new();
    for row in t.rows() {
        let mut sorted = row.clone();
        sorted.sort_unstable();
        let mut perms = Vec::new();
        loop {
            perms.push(sorted.clone());
            if !next_permutation_u8(&mut sorted) {
                break;
            }
        }
        rows.push(perms);
    }
    // cartesian product of the per-row rearrangements
    let mut out: Vec<Vec<u8>> = vec![Vec::new()];
    for perms in rows {
        let mut next = Vec::with_capacity(out.len() * perms.len());
        for prefix in &out {
            for p in &perms {
                let mut w = prefix.clone();
                w.extend_from_slice(p);
                next.push(w);
            }
        }
        out = next;
    }
    out
}

fn next_permutation_u8(p: &mut [u8]) -> bool {
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

/// Row-major cell indices of each column of a shape.
pub(crate) fn column_cells(shape: &Partition) -> Vec<Vec<usize>> {
    let cells = shape.cells();
    let width = shape.parts().first().copied().unwrap_or(0);
    let mut cols = vec![Vec::new(); width];
    for (idx, &(_, c)) in cells.iter().enumerate() {
        cols[c].push(idx);
    }
    cols
}

pub(crate) fn permutations_with_sign(r: usize) -> Vec<(Vec<usize>, i128)> {
    let mut p: Vec<usize> = (0..r).collect();
    let mut out = Vec::new();
    loop {
        let mut inversions = 0;
        for i in 0..r {
            for j in i + 1..r {
                if p[i] > p[j] {
                    inversions += 1;
                }
            }
        }
        out.push((p.clone(), if inversions % 2 == 0 { 1 } else { -1 }));
        if !next_permutation_usize(&mut p) {
            break;
        }
    }
    out
}

fn next_permutation_usize(p: &mut [usize]) -> bool {
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

fn factorial(k: usize) -> i128 {
    (1..=k as i128).product()
}

/// Determinant of the column matrix `A_{t,u} = B(τ_t) ⊗ B(σ_u)` after
/// substitution, as a polynomial of degree `r`.
fn column_det(
    classes: &ColumnClasses,
    which: Subst,
    factor: u8,
    tentries: &[u8],
    sentries: &[u8],
) -> Result<OrbitPolynomial> {
    let r = tentries.len();
    let linear: Vec<Vec<OrbitPolynomial>> = (0..r)
        .map(|t| {
            (0..r)
                .map(|u| {
                    OrbitPolynomial::linear(&substitute(
                        classes, which, factor, tentries[t], sentries[u],
                    ))
                })
                .collect()
        })
        .collect();
    let mut det = OrbitPolynomial::zero();
    for (perm, sign) in permutations_with_sign(r) {
        let mut prod = OrbitPolynomial::one();
        for (t, &u) in perm.iter().enumerate() {
            prod = prod.mul(&linear[t][u])?;
        }
        prod.scale(sign)?;
        det.add_assign(&prod)?;
    }
    Ok(det)
}

/// One factor of a block entry: the double sum over row rearrangements and
/// column-stabilizer pairs for a single shape, with the column sums folded
/// into determinants.
pub fn expand_factor(
    classes: &ColumnClasses,
    which: Subst,
    factor: u8,
    tau: &Tableau,
    sigma: &Tableau,
) -> Result<OrbitPolynomial> {
    assert_eq!(tau.shape(), sigma.shape(), "paired tableaux share their shape");
    let shape = tau.shape();
    if shape.size() == 0 {
        return Ok(OrbitPolynomial::one());
    }
    let cols = column_cells(shape);
    let fact_product: i128 = cols.iter().map(|c| factorial(c.len())).product();

    let taus = row_equivalents(tau);
    let sigmas = row_equivalents(sigma);
    let mut memo: HashMap<(Vec<u8>, Vec<u8>), OrbitPolynomial> = HashMap::new();
    let mut acc = OrbitPolynomial::zero();
    for tw in &taus {
        for sw in &sigmas {
            let mut prod = OrbitPolynomial::one();
            for col in &cols {
                let tkey: Vec<u8> = col.iter().map(|&y| tw[y]).collect();
                let skey: Vec<u8> = col.iter().map(|&y| sw[y]).collect();
                let det = match memo.get(&(tkey.clone(), skey.clone())) {
                    Some(d) => d.clone(),
                    None => {
                        let d = column_det(classes, which, factor, &tkey, &skey)?;
                        memo.insert((tkey, skey), d.clone());
                        d
                    }
                };
                prod = prod.mul(&det)?;
                if prod.is_zero() {
                    break;
                }
            }
            acc.add_assign(&prod)?;
        }
    }
    acc.scale(fact_product)?;
    Ok(acc)
}

/// Literal evaluation of the defining double sum, without the determinant
/// factorization.  Exponential in the column heights; only for testing the
/// fast path at small shapes.
pub fn expand_factor_naive(
    classes: &ColumnClasses,
    which: Subst,
    factor: u8,
    tau: &Tableau,
    sigma: &Tableau,
) -> Result<OrbitPolynomial> {
    assert_eq!(tau.shape(), sigma.shape());
    let shape = tau.shape();
    let ncells = shape.size();
    if ncells == 0 {
        return Ok(OrbitPolynomial::one());
    }
    let cols = column_cells(shape);

    // the column stabilizer as explicit cell permutations with signs
    let mut stab: Vec<(Vec<usize>, i128)> = vec![((0..ncells).collect(), 1)];
    for col in &cols {
        let mut next = Vec::new();
        for (perm, sign) in permutations_with_sign(col.len()) {
            for (base, base_sign) in &stab {
                let mut cellmap = base.clone();
                for (t, &u) in perm.iter().enumerate() {
                    cellmap[col[t]] = base[col[u]];
                }
                next.push((cellmap, base_sign * sign));
            }
        }
        stab = next;
    }

    let taus = row_equivalents(tau);
    let sigmas = row_equivalents(sigma);
    let mut acc = OrbitPolynomial::zero();
    for tw in &taus {
        for sw in &sigmas {
            for (c, sc) in &stab {
                for (cp, scp) in &stab {
                    let mut prod = OrbitPolynomial::one();
                    for y in 0..ncells {
                        let lin = OrbitPolynomial::linear(&substitute(
                            classes,
                            which,
                            factor,
                            tw[c[y]],
                            sw[cp[y]],
                        ));
                        prod = prod.mul(&lin)?;
                    }
                    prod.scale(sc * scp)?;
                    acc.add_assign(&prod)?;
                }
            }
        }
    }
    Ok(acc)
}

/// Full block entry for a bishape: the product of the two factors.
pub fn expand_p_tau_sigma(
    classes: &ColumnClasses,
    which: Subst,
    tau: (&Tableau, &Tableau),
    sigma: (&Tableau, &Tableau),
) -> Result<OrbitPolynomial> {
    let f1 = expand_factor(classes, which, 1, tau.0, sigma.0)?;
    let f2 = expand_factor(classes, which, 2, tau.1, sigma.1)?;
    f1.mul(&f2)
}

/// All compositions of `n` into `parts` nonnegative parts, lexicographic.
pub fn compositions(n: usize, parts: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0usize; parts];
    fn rec(n: usize, at: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if at + 1 == cur.len() {
            cur[at] = n;
            out.push(cur.clone());
            return;
        }
        for v in 0..=n {
            cur[at] = v;
            rec(n - v, at + 1, cur, out);
        }
    }
    if parts == 0 {
        if n == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(n, 0, &mut cur, &mut out);
    out
}

/// Coefficients of `C_{i} ⊗ C_{i}` on the circular-distance classes
/// `t = 0..=⌊q/2⌋`, for the 0-based irreducible index `i`.
pub fn cosine_pair_profile(q: u32, i: usize) -> Vec<f64> {
    let qq = q as usize;
    let s = qq / 2 + 1;
    let mut w = vec![0.0f64; s];
    w[0] = q as f64;
    for (t, slot) in w.iter_mut().enumerate().skip(1) {
        let c = (2.0 * std::f64::consts::PI * (i * t) as f64 / qq as f64).cos();
        *slot = if 2 * t == qq { q as f64 * c } else { 2.0 * q as f64 * c };
    }
    w
}

/// Diagonal entry of the unanchored part for one composition
/// `(n_0, …, n_{s-1})`: the product `∏ (C_i ⊗ C_i)^{n_i}` expanded over
/// multisets of circular-distance classes.
pub fn expand_p_n_float(q: u32, comp: &[usize]) -> Vec<(Vec<u16>, f64)> {
    let s = (q / 2 + 1) as usize;
    assert_eq!(comp.len(), s, "one exponent per irreducible constituent");
    let mut acc: BTreeMap<Vec<u16>, f64> = BTreeMap::new();
    acc.insert(Vec::new(), 1.0);
    for (i, &e) in comp.iter().enumerate() {
        let w = cosine_pair_profile(q, i);
        for _ in 0..e {
            let mut next: BTreeMap<Vec<u16>, f64> = BTreeMap::new();
            for (mono, c) in &acc {
                for (t, &wt) in w.iter().enumerate() {
                    if wt == 0.0 {
                        continue;
                    }
                    let m = merge_sorted(mono, &[t as u16]);
                    *next.entry(m).or_insert(0.0) += c * wt;
                }
            }
            acc = next;
        }
    }
    acc.into_iter().collect()
}

/// Whether `2·cos(2πk/q)` is an integer for every `k` — exactly the
/// alphabet sizes where the cosine route stays in exact arithmetic.
pub fn cosine_exact(q: u32) -> bool {
    matches!(q, 1 | 2 | 3 | 4 | 6)
}

/// Exact integer version of [`expand_p_n_float`]; errors out unless
/// [`cosine_exact`] holds.
pub fn expand_p_n_exact(q: u32, comp: &[usize]) -> Result<OrbitPolynomial> {
    if !cosine_exact(q) {
        return Err(Error::InvalidArgument(format!(
            "cosine coefficients are irrational for q = {q}"
        )));
    }
    let s = (q / 2 + 1) as usize;
    assert_eq!(comp.len(), s);
    let mut acc = OrbitPolynomial::one();
    for (i, &e) in comp.iter().enumerate() {
        let w = cosine_pair_profile(q, i);
        let terms: Vec<(u16, i64)> = w
            .iter()
            .enumerate()
            .map(|(t, &wt)| (t as u16, wt.round() as i64))
            .filter(|&(_, c)| c != 0)
            .collect();
        debug_assert!(w
            .iter()
            .all(|&wt| (wt - wt.round()).abs() < 1e-9));
        let lin = OrbitPolynomial::linear(&terms);
        for _ in 0..e {
            acc = acc.mul(&lin)?;
        }
    }
    Ok(acc)
}

/// The all-ones diagonal entry `(C_0 ⊗ C_0)^n`: exact for every `q`, since
/// the trivial constituent has integer profile `q·(1, 2, …, 2[, 1])`.
/// This is the bottom-right entry of the 2×2 block that couples the empty
/// code with the all-ones direction.
pub fn expand_all_ones_diag(q: u32, n: usize) -> Result<OrbitPolynomial> {
    let w = cosine_pair_profile(q, 0);
    let terms: Vec<(u16, i64)> =
        w.iter().enumerate().map(|(t, &wt)| (t as u16, wt.round() as i64)).collect();
    let lin = OrbitPolynomial::linear(&terms);
    let mut acc = OrbitPolynomial::one();
    for _ in 0..n {
        acc = acc.mul(&lin)?;
    }
    Ok(acc)
}
