//! Independent oracles that rebuild the reduction from explicit tensors.
//!
//! The symbolic expansion in [`crate::repsets`] and the block assembly in
//! [`crate::sdp`] go through several layers of combinatorics — canonical
//! forms, substitution tables, determinant factorizations, monomial folds.
//! This module re-derives the same objects the slow, literal way and
//! compares:
//!
//! * [`check_block_coefficients`] rebuilds every reduced block entry as
//!   `vᵀ N_ω v` with explicit integer tensors `v` and the explicit
//!   pair-to-orbit index, and demands exact agreement with the symbolic
//!   fold — for the anchored blocks, the unanchored blocks, the coupling
//!   block `T`, and (with a float tolerance) the cosine diagonal;
//! * [`reduction_soundness`] samples variable assignments and checks that
//!   the full invariant matrices and their reduced blocks always agree on
//!   positive semidefiniteness;
//! * [`feasibility_transfer`] takes an exact optimum from the brute-force
//!   search, converts it to the moment vector it induces, and checks in
//!   exact rational arithmetic that every block of the generated program
//!   accepts it and that the objective recovers the code size.
//!
//! None of these share code with the fast path beyond the type definitions:
//! the explicit vectors come from the defining double sum, the pair index
//! from canonical forms of literal two- and three-word codes.

use crate::repsets::{
    column_cells, compositions, expand_all_ones_diag, expand_p_n_float, irreducible_count,
    permutations_with_sign, representative_data, row_equivalents, ReprData, Subst,
};
use crate::sdp::{anchored_blocks, unanchored_blocks, RawBlock};
use crate::symmetry::{orbit_size, OrbitTable};
use crate::tableaux::Tableau;
use crate::words::{all_words, brute_force_optimum, Code, Metric, Word};
use crate::{Error, Result};
use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn kron_i64(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for &x in a {
        for &y in b {
            out.push(x * y);
        }
    }
    out
}

fn kron_f64(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for &x in a {
        for &y in b {
            out.push(x * y);
        }
    }
    out
}

/// The column stabilizer of a shape as explicit cell permutations with
/// signs, cells numbered row-major.
fn cell_stabilizer(shape: &crate::tableaux::Partition) -> Vec<(Vec<usize>, i64)> {
    let ncells = shape.size();
    let mut stab: Vec<(Vec<usize>, i64)> = vec![((0..ncells).collect(), 1)];
    for col in &column_cells(shape) {
        let mut next = Vec::new();
        for (perm, sign) in permutations_with_sign(col.len()) {
            for (base, base_sign) in &stab {
                let mut cellmap = base.clone();
                for (t, &u) in perm.iter().enumerate() {
                    cellmap[col[t]] = base[col[u]];
                }
                next.push((cellmap, base_sign * sign as i64));
            }
        }
        stab = next;
    }
    stab
}

/// The explicit representative vector of one factor,
///
/// ```text
/// u_τ = Σ_{τ' ~ τ} Σ_{c ∈ C_λ} sgn(c) ⊗_y columns[τ'(c(y)) - 1],
/// ```
///
/// as a dense tensor of length `q^cells` with big-endian coordinate order
/// (cell 0, row-major, is the most significant digit).
pub fn explicit_u(q: u32, columns: &[Vec<i64>], tableau: &Tableau) -> Vec<i64> {
    let ncells = tableau.shape().size();
    if ncells == 0 {
        return vec![1];
    }
    let len = (q as usize).pow(ncells as u32);
    let mut acc = vec![0i64; len];
    let stab = cell_stabilizer(tableau.shape());
    for word in row_equivalents(tableau) {
        for (cellmap, sign) in &stab {
            let mut tensor = vec![*sign];
            for y in 0..ncells {
                tensor = kron_i64(&tensor, &columns[word[cellmap[y]] as usize - 1]);
            }
            for (slot, t) in acc.iter_mut().zip(&tensor) {
                *slot += t;
            }
        }
    }
    acc
}

/// The explicit vector of a bishape index: the first factor over the even
/// columns tensored with the second over the odd columns, so coordinates
/// `0..n1` come from the left tableau and `n1..n` from the right.
pub fn explicit_v(q: u32, repr: &ReprData, left: &Tableau, right: &Tableau) -> Vec<i64> {
    kron_i64(&explicit_u(q, &repr.b1, left), &explicit_u(q, &repr.b2, right))
}

/// Orbit ids of all word pairs, by literal canonicalization: entry
/// `ia·qⁿ + ib` is the orbit of `{0, α, β}` (anchored) or `{α, β}`
/// (unanchored), with `ia`, `ib` the positions of `α`, `β` in the
/// lexicographic word order.
pub struct PairIndex {
    pub qn: usize,
    anchored: Vec<u32>,
    unanchored: Vec<u32>,
}

impl PairIndex {
    pub fn build(table: &OrbitTable) -> Result<PairIndex> {
        let (q, n) = (table.q, table.n);
        let words = all_words(q, n);
        let qn = words.len();
        let zero = Word::zero(q, n);
        let mut anchored = vec![0u32; qn * qn];
        let mut unanchored = vec![0u32; qn * qn];
        let miss = || Error::VerificationFailed("pair orbit missing from the table".into());
        for ia in 0..qn {
            for ib in ia..qn {
                let pair = Code::new(vec![words[ia].clone(), words[ib].clone()])?;
                let triple =
                    Code::new(vec![zero.clone(), words[ia].clone(), words[ib].clone()])?;
                let a = table.orbit_of(&triple).ok_or_else(miss)? as u32;
                let u = table.orbit_of(&pair).ok_or_else(miss)? as u32;
                anchored[ia * qn + ib] = a;
                anchored[ib * qn + ia] = a;
                unanchored[ia * qn + ib] = u;
                unanchored[ib * qn + ia] = u;
            }
        }
        Ok(PairIndex { qn, anchored, unanchored })
    }

    pub fn anchored(&self) -> &[u32] {
        &self.anchored
    }

    pub fn unanchored(&self) -> &[u32] {
        &self.unanchored
    }
}

/// What [`check_block_coefficients`] went through.
#[derive(Debug, Default, Clone, Copy)]
pub struct CoefficientReport {
    pub anchored_entries: usize,
    pub unanchored_entries: usize,
    pub cosine_entries: usize,
    /// Cross-bishape pairs checked for isotypic orthogonality.
    pub cross_pairs: usize,
}

fn fold_explicit(vrow: &[i64], vcol: &[i64], idx: &[u32], n_orbits: usize) -> Vec<i128> {
    let qn = vrow.len();
    let mut acc = vec![0i128; n_orbits];
    for (ia, &r) in vrow.iter().enumerate() {
        if r == 0 {
            continue;
        }
        let row = &idx[ia * qn..(ia + 1) * qn];
        for (ib, &c) in vcol.iter().enumerate() {
            if c != 0 {
                acc[row[ib] as usize] += r as i128 * c as i128;
            }
        }
    }
    acc
}

/// Rebuild every reduced block entry from explicit tensors and compare it,
/// coefficient by coefficient, with the symbolic expansion.
pub fn check_block_coefficients(q: u32, n: usize) -> Result<CoefficientReport> {
    let table = OrbitTable::build(q, n)?;
    let repr = representative_data(q);
    let pairs = PairIndex::build(&table)?;
    let n_orbits = table.orbits.len();
    let qn = pairs.qn;
    let mut report = CoefficientReport::default();

    // the two integer block families; the explicit vectors are shared, only
    // the pair-to-orbit index differs
    for (which, idx) in
        [(Subst::ZeroAnchored, pairs.anchored()), (Subst::PairDistance, pairs.unanchored())]
    {
        let raws = match which {
            Subst::ZeroAnchored => anchored_blocks(&table, repr.m1, repr.m2)?,
            Subst::PairDistance => unanchored_blocks(&table, repr.m1, repr.m2)?,
        };
        let mut block_vectors: Vec<Vec<Vec<i64>>> = Vec::new();
        for raw in &raws {
            let vs: Vec<Vec<i64>> =
                raw.tableaux.iter().map(|(l, r)| explicit_v(q, &repr, l, r)).collect();
            for i in 0..raw.dim() {
                for j in 0..raw.dim() {
                    let expect = fold_explicit(&vs[i], &vs[j], idx, n_orbits);
                    if expect.as_slice() != raw.entry(i, j) {
                        return Err(Error::VerificationFailed(format!(
                            "q={q} n={n}: block {} entry ({i},{j}) disagrees with the \
                             explicit expansion",
                            raw.bishape
                        )));
                    }
                    match which {
                        Subst::ZeroAnchored => report.anchored_entries += 1,
                        Subst::PairDistance => report.unanchored_entries += 1,
                    }
                }
            }
            block_vectors.push(vs);
        }

        // vectors from different bishapes lie in inequivalent isotypic
        // components, so their pairing vanishes for every orbit variable
        if qn <= 216 {
            for a in 0..block_vectors.len() {
                for b in a + 1..block_vectors.len() {
                    for va in &block_vectors[a] {
                        for vb in &block_vectors[b] {
                            let x = fold_explicit(va, vb, idx, n_orbits);
                            if x.iter().any(|&c| c != 0) {
                                return Err(Error::VerificationFailed(format!(
                                    "q={q} n={n}: bishapes {} and {} are not orthogonal",
                                    raws[a].bishape, raws[b].bishape
                                )));
                            }
                            report.cross_pairs += 1;
                        }
                    }
                }
            }
        }
    }

    // T₂₂: the all-ones diagonal entry counts pairs per orbit
    let allones =
        expand_all_ones_diag(q, n)?.fold_orbits(n_orbits, |m| table.r_prime(m))?;
    let mut counts = vec![0i128; n_orbits];
    for &w in pairs.unanchored() {
        counts[w as usize] += 1;
    }
    if counts != allones {
        return Err(Error::VerificationFailed(format!(
            "q={q} n={n}: all-ones diagonal fold does not count pairs"
        )));
    }
    // T₁₂ = qⁿ·z(ω₀) rests on every diagonal pair collapsing to a singleton
    for ia in 0..qn {
        if pairs.unanchored()[ia * qn + ia] != table.zero_orbit() as u32 {
            return Err(Error::VerificationFailed(format!(
                "q={q} n={n}: diagonal pair {ia} is not in the singleton orbit"
            )));
        }
    }

    // cosine diagonal: one fixed constituent assignment per composition
    for comp in compositions(n, irreducible_count(q)) {
        let mut v = vec![1.0f64];
        for (i, &e) in comp.iter().enumerate() {
            for _ in 0..e {
                v = kron_f64(&v, &repr.cosine[i]);
            }
        }
        let mut expect = vec![0.0f64; n_orbits];
        for (ia, &r) in v.iter().enumerate() {
            let row = &pairs.unanchored()[ia * qn..(ia + 1) * qn];
            for (ib, &c) in v.iter().enumerate() {
                expect[row[ib] as usize] += r * c;
            }
        }
        let mut sym = vec![0.0f64; n_orbits];
        for (mono, c) in expand_p_n_float(q, &comp) {
            sym[table.r_prime(&mono)] += c;
        }
        let scale = 1.0 + expect.iter().fold(0.0f64, |m, &x| m.max(x.abs()));
        for w in 0..n_orbits {
            if (expect[w] - sym[w]).abs() > 1e-6 * scale {
                return Err(Error::VerificationFailed(format!(
                    "q={q} n={n}: cosine entry for {comp:?} is off at orbit {w}: \
                     {} vs {}",
                    expect[w], sym[w]
                )));
            }
        }
        report.cosine_entries += 1;
    }

    Ok(report)
}

/// `(min eigenvalue ≥ -tol, min eigenvalue)` of a symmetric matrix.
pub fn psd_check_float(mat: &DMatrix<f64>, tol: f64) -> (bool, f64) {
    let min = mat
        .clone()
        .symmetric_eigen()
        .eigenvalues
        .iter()
        .fold(f64::INFINITY, |m, &x| m.min(x));
    (min >= -tol, min)
}

/// Exact positive-semidefiniteness via pivoted rational elimination: pick
/// the largest remaining diagonal entry; once none is positive, the matrix
/// is PSD exactly when nothing nonzero remains.
pub fn psd_check_exact(mat: &[Vec<BigRational>]) -> bool {
    let n = mat.len();
    let mut a = mat.to_vec();
    let mut live: Vec<usize> = (0..n).collect();
    while !live.is_empty() {
        let &p = live
            .iter()
            .max_by(|&&i, &&j| a[i][i].cmp(&a[j][j]))
            .expect("nonempty");
        if !a[p][p].is_positive() {
            return live.iter().all(|&i| live.iter().all(|&j| a[i][j].is_zero()));
        }
        let d = a[p][p].clone();
        live.retain(|&i| i != p);
        for &i in &live {
            if a[i][p].is_zero() {
                continue;
            }
            let ratio = &a[i][p] / &d;
            for &j in &live {
                let sub = &ratio * &a[p][j];
                a[i][j] = &a[i][j] - &sub;
            }
        }
    }
    true
}

/// What [`reduction_soundness`] went through.
#[derive(Debug, Default, Clone, Copy)]
pub struct SoundnessReport {
    /// Conclusive trials, each agreeing on both the anchored and the
    /// unanchored side.
    pub trials: usize,
    /// Samples discarded because an eigenvalue fell inside the numerical
    /// gray band around zero.
    pub resampled: usize,
}

fn min_eigenvalue(mat: DMatrix<f64>) -> f64 {
    mat.symmetric_eigen().eigenvalues.iter().fold(f64::INFINITY, |m, &x| m.min(x))
}

fn eval_raw_block(raw: &RawBlock, z: &[f64]) -> DMatrix<f64> {
    let dim = raw.dim();
    DMatrix::from_fn(dim, dim, |i, j| {
        raw.entry(i, j).iter().zip(z).map(|(&c, &zv)| c as f64 * zv).sum()
    })
}

/// One side of a soundness trial: compare the sign of the minimum
/// eigenvalue of the full matrix with the worst block.  `None` when the
/// sample is too close to the boundary to call.
fn agree(full: DMatrix<f64>, blocks: &[DMatrix<f64>], context: &str) -> Result<Option<()>> {
    let band_of = |m: &DMatrix<f64>| 1e-7 * (1.0 + m.amax());
    let full_band = band_of(&full);
    let lam_full = min_eigenvalue(full);
    let mut lam_blocks = f64::INFINITY;
    let mut block_band = 0.0f64;
    for b in blocks {
        block_band = block_band.max(band_of(b));
        lam_blocks = lam_blocks.min(min_eigenvalue(b.clone()));
    }
    if lam_full.abs() < full_band || lam_blocks.abs() < block_band {
        return Ok(None);
    }
    if (lam_full > 0.0) != (lam_blocks > 0.0) {
        return Err(Error::VerificationFailed(format!(
            "{context}: full matrix has min eigenvalue {lam_full:.3e} but the reduced \
             blocks have {lam_blocks:.3e}"
        )));
    }
    Ok(Some(()))
}

/// Sample variable assignments and check that the full invariant matrices
/// and the reduced blocks agree on positive semidefiniteness — the anchored
/// matrix against the anchored bishape blocks, and the unanchored matrix
/// (bordered by the empty-code row) against the unanchored blocks plus `T`.
///
/// Three samplers alternate: raw uniform noise (almost surely indefinite),
/// orbit averages of a random rank-one matrix (positive semidefinite by
/// construction on the unanchored side, near the boundary on the anchored
/// side), and the average with added noise.  Samples whose minimum
/// eigenvalue lands inside the gray band around zero are discarded.
pub fn reduction_soundness(q: u32, n: usize, trials: usize, seed: u64) -> Result<SoundnessReport> {
    let table = OrbitTable::build(q, n)?;
    let repr = representative_data(q);
    let pairs = PairIndex::build(&table)?;
    let n_orbits = table.orbits.len();
    let qn = pairs.qn;
    let anchored = anchored_blocks(&table, repr.m1, repr.m2)?;
    let unanchored = unanchored_blocks(&table, repr.m1, repr.m2)?;
    let allones =
        expand_all_ones_diag(q, n)?.fold_orbits(n_orbits, |m| table.r_prime(m))?;
    let z0 = table.zero_orbit();
    let qn_f = qn as f64;

    let mut cnt_a = vec![0f64; n_orbits];
    let mut cnt_u = vec![0f64; n_orbits];
    for i in 0..qn * qn {
        cnt_a[pairs.anchored()[i] as usize] += 1.0;
        cnt_u[pairs.unanchored()[i] as usize] += 1.0;
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = SoundnessReport::default();
    let mut attempts = 0usize;
    while report.trials < trials {
        attempts += 1;
        if attempts > 50 * trials + 100 {
            return Err(Error::VerificationFailed(format!(
                "q={q} n={n}: soundness sampling keeps hitting the gray band"
            )));
        }

        // averaged samplers: bucket a random rank-one matrix by orbit
        let avg = |idx: &[u32], cnt: &[f64], y: &[f64]| -> Vec<f64> {
            let mut z = vec![0f64; n_orbits];
            for (ia, &r) in y.iter().enumerate() {
                for (ib, &c) in y.iter().enumerate() {
                    z[idx[ia * qn + ib] as usize] += r * c;
                }
            }
            for (zi, &ci) in z.iter_mut().zip(cnt) {
                if ci > 0.0 {
                    *zi /= ci;
                }
            }
            z
        };
        let (za, zu) = match attempts % 3 {
            0 => {
                let z: Vec<f64> = (0..n_orbits).map(|_| rng.gen_range(-1.0..1.0)).collect();
                (z.clone(), z)
            }
            1 => {
                let y: Vec<f64> = (0..qn).map(|_| rng.gen_range(0.0..1.0)).collect();
                (avg(pairs.anchored(), &cnt_a, &y), avg(pairs.unanchored(), &cnt_u, &y))
            }
            _ => {
                let y: Vec<f64> = (0..qn).map(|_| rng.gen_range(0.0..1.0)).collect();
                let eps = if attempts % 2 == 0 { 0.5 } else { 0.05 };
                let mut za = avg(pairs.anchored(), &cnt_a, &y);
                let mut zu = avg(pairs.unanchored(), &cnt_u, &y);
                for z in za.iter_mut().chain(zu.iter_mut()) {
                    *z += eps * rng.gen_range(-1.0..1.0);
                }
                (za, zu)
            }
        };

        let big_a =
            DMatrix::from_fn(qn, qn, |a, b| za[pairs.anchored()[a * qn + b] as usize]);
        let blocks_a: Vec<DMatrix<f64>> =
            anchored.iter().map(|r| eval_raw_block(r, &za)).collect();
        let ok_a = agree(big_a, &blocks_a, &format!("q={q} n={n} anchored"))?;

        let big_u = DMatrix::from_fn(qn + 1, qn + 1, |a, b| match (a, b) {
            (0, 0) => 1.0,
            (0, _) | (_, 0) => zu[z0],
            (a, b) => zu[pairs.unanchored()[(a - 1) * qn + (b - 1)] as usize],
        });
        let mut blocks_u: Vec<DMatrix<f64>> =
            unanchored.iter().map(|r| eval_raw_block(r, &zu)).collect();
        let t22: f64 = allones.iter().zip(&zu).map(|(&c, &zv)| c as f64 * zv).sum();
        blocks_u.push(DMatrix::from_row_slice(
            2,
            2,
            &[1.0, qn_f * zu[z0], qn_f * zu[z0], t22],
        ));
        let ok_u = agree(big_u, &blocks_u, &format!("q={q} n={n} unanchored"))?;

        if ok_a.is_some() && ok_u.is_some() {
            report.trials += 1;
        } else {
            report.resampled += 1;
        }
    }
    Ok(report)
}

/// What [`feasibility_transfer`] verified.
#[derive(Debug, Clone, Copy)]
pub struct TransferReport {
    /// Size of the brute-force optimum.
    pub optimum: usize,
    /// Orbits that carry a nonzero moment.
    pub orbits_hit: usize,
    /// Blocks accepted in exact arithmetic (including `T`).
    pub blocks_checked: usize,
}

/// Convert an exact optimum into its moment vector
/// `z(ω) = |{S ⊆ C : S ∈ ω}| / |ω|` and certify, in exact rational
/// arithmetic, that every block of the reduced program accepts it and that
/// the objective `qⁿ·z(ω₀)` equals the code size.
pub fn feasibility_transfer(q: u32, n: usize, d: u32, metric: Metric) -> Result<TransferReport> {
    let (optimum, words) = brute_force_optimum(q, n, d, metric, None)?;
    let table = OrbitTable::build(q, n)?;
    let repr = representative_data(q);
    let n_orbits = table.orbits.len();

    let mut counts = vec![0u64; n_orbits];
    let mut bump = |subset: Vec<Word>| -> Result<()> {
        let code = Code::new(subset)?;
        let w = table
            .orbit_of(&code)
            .ok_or_else(|| Error::VerificationFailed("witness orbit missing".into()))?;
        counts[w] += 1;
        Ok(())
    };
    for i in 0..words.len() {
        bump(vec![words[i].clone()])?;
        for j in i + 1..words.len() {
            bump(vec![words[i].clone(), words[j].clone()])?;
            for k in j + 1..words.len() {
                bump(vec![words[i].clone(), words[j].clone(), words[k].clone()])?;
            }
        }
    }

    let mut z = vec![BigRational::zero(); n_orbits];
    let mut orbits_hit = 0;
    for (w, &c) in counts.iter().enumerate() {
        if c == 0 {
            continue;
        }
        if !table.orbits[w].dist(metric).at_least(d) {
            return Err(Error::VerificationFailed(format!(
                "witness contains an infeasible subset in orbit {w}"
            )));
        }
        let size = orbit_size(&table.orbits[w].rep, None)?;
        z[w] = BigRational::new(BigInt::from(c), BigInt::from(size));
        orbits_hit += 1;
    }

    // the objective recovers the code size exactly
    let qn_big = BigInt::from(q).pow(n as u32);
    if &z[table.zero_orbit()] * BigRational::from_integer(qn_big.clone())
        != BigRational::from_integer(BigInt::from(optimum))
    {
        return Err(Error::VerificationFailed(format!(
            "objective mismatch: qⁿ·z(ω₀) ≠ {optimum}"
        )));
    }

    let eval_exact = |raw: &RawBlock| -> Vec<Vec<BigRational>> {
        let dim = raw.dim();
        (0..dim)
            .map(|i| {
                (0..dim)
                    .map(|j| {
                        raw.entry(i, j)
                            .iter()
                            .zip(&z)
                            .filter(|(&c, _)| c != 0)
                            .map(|(&c, zv)| BigRational::from_integer(BigInt::from(c)) * zv)
                            .sum()
                    })
                    .collect()
            })
            .collect()
    };

    let mut blocks_checked = 0;
    for raws in [
        anchored_blocks(&table, repr.m1, repr.m2)?,
        unanchored_blocks(&table, repr.m1, repr.m2)?,
    ] {
        for raw in &raws {
            let m = eval_exact(raw);
            if !psd_check_exact(&m) {
                return Err(Error::VerificationFailed(format!(
                    "witness moment vector rejected by block {}",
                    raw.bishape
                )));
            }
            blocks_checked += 1;
        }
    }

    // the coupling block T
    let allones =
        expand_all_ones_diag(q, n)?.fold_orbits(n_orbits, |m| table.r_prime(m))?;
    let t12 = BigRational::from_integer(qn_big) * &z[table.zero_orbit()];
    let t22: BigRational = allones
        .iter()
        .zip(&z)
        .filter(|(&c, _)| c != 0)
        .map(|(&c, zv)| BigRational::from_integer(BigInt::from(c)) * zv)
        .sum();
    let t = vec![
        vec![BigRational::one(), t12.clone()],
        vec![t12, t22],
    ];
    if !psd_check_exact(&t) {
        return Err(Error::VerificationFailed("witness moment vector rejected by T".into()));
    }
    blocks_checked += 1;

    Ok(TransferReport { optimum, orbits_hit, blocks_checked })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tableaux::Partition;

    #[test]
    fn explicit_single_cell_is_the_column() {
        let repr = representative_data(5);
        let shape = Partition::new(vec![1]).unwrap();
        for (m, cols) in [(repr.m1, &repr.b1), (repr.m2, &repr.b2)] {
            for t in crate::tableaux::semistandard_tableaux(&shape, m) {
                let entry = t.entry(0, 0) as usize;
                assert_eq!(explicit_u(5, cols, &t), cols[entry - 1]);
            }
        }
    }

    fn find_tableau(shape: Vec<usize>, m: usize, word: &[u8]) -> Tableau {
        let shape = Partition::new(shape).unwrap();
        crate::tableaux::semistandard_tableaux(&shape, m)
            .into_iter()
            .find(|t| t.word() == word)
            .expect("tableau exists")
    }

    #[test]
    fn explicit_row_symmetrizes_and_column_antisymmetrizes() {
        let repr = representative_data(5);
        let a = kron_i64(&repr.b1[0], &repr.b1[1]);
        let b = kron_i64(&repr.b1[1], &repr.b1[0]);
        // shape (2): u = B(1)⊗B(2) + B(2)⊗B(1)
        let row = find_tableau(vec![2], repr.m1, &[1, 2]);
        let sym: Vec<i64> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
        assert_eq!(explicit_u(5, &repr.b1, &row), sym);
        // shape (1,1): u = B(1)⊗B(2) - B(2)⊗B(1)
        let col = find_tableau(vec![1, 1], repr.m1, &[1, 2]);
        let alt: Vec<i64> = a.iter().zip(&b).map(|(x, y)| x - y).collect();
        assert_eq!(explicit_u(5, &repr.b1, &col), alt);
    }

    #[test]
    fn pair_index_matches_hand_examples() {
        let table = OrbitTable::build(5, 1).unwrap();
        let pairs = PairIndex::build(&table).unwrap();
        // (0,0) is the singleton orbit on the unanchored side and the pair
        // {0} ∪ {0} = {0} anchored
        assert_eq!(pairs.unanchored()[0] as usize, table.zero_orbit());
        assert_eq!(pairs.anchored()[0] as usize, table.zero_orbit());
        // spot-check a few entries against literal codes
        let w = all_words(5, 1);
        for (ia, ib) in [(1usize, 4usize), (2, 3), (0, 2)] {
            let code = Code::new(vec![w[ia].clone(), w[ib].clone()]).unwrap();
            assert_eq!(
                pairs.unanchored()[ia * 5 + ib] as usize,
                table.orbit_of(&code).unwrap()
            );
        }
    }

    #[test]
    fn psd_exact_accepts_and_rejects() {
        let r = |x: i64| BigRational::from_integer(BigInt::from(x));
        let psd = vec![vec![r(2), r(1)], vec![r(1), r(2)]];
        assert!(psd_check_exact(&psd));
        let not = vec![vec![r(1), r(2)], vec![r(2), r(1)]];
        assert!(!psd_check_exact(&not));
        let zero = vec![vec![r(0), r(0)], vec![r(0), r(0)]];
        assert!(psd_check_exact(&zero));
        let offdiag = vec![vec![r(0), r(1)], vec![r(1), r(0)]];
        assert!(!psd_check_exact(&offdiag));
        let neg = vec![vec![r(-1)]];
        assert!(!psd_check_exact(&neg));
        // singular but PSD
        let sing = vec![vec![r(1), r(1)], vec![r(1), r(1)]];
        assert!(psd_check_exact(&sing));
    }

    #[test]
    fn coefficients_match_at_small_parameters() {
        for (q, n) in [(5u32, 1usize), (5, 2), (6, 2), (7, 1)] {
            let report = check_block_coefficients(q, n).unwrap();
            assert!(report.anchored_entries > 0, "q={q} n={n}");
            assert!(report.unanchored_entries > 0);
            assert!(report.cosine_entries > 0);
            assert!(report.cross_pairs > 0);
        }
    }

    #[test]
    fn soundness_sampling_agrees() {
        let report = reduction_soundness(5, 2, 25, 0xbead).unwrap();
        assert_eq!(report.trials, 25);
    }

    #[test]
    fn transfer_accepts_brute_force_optimum() {
        let report = feasibility_transfer(5, 2, 2, Metric::LeeInf).unwrap();
        assert_eq!(report.optimum, 5);
        assert!(report.orbits_hit > 0);
        assert!(report.blocks_checked > 0);
    }
}
