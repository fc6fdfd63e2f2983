//! Assembly of the reduced programs and their SDPA-format emission.
//!
//! The hierarchy level generated here bounds the maximum code size by
//!
//! ```text
//! maximize  qⁿ·z(ω₀)   over orbit variables z(ω) ≥ 0, ω ∈ Ω (feasible),
//! ```
//!
//! subject to a family of positive-semidefiniteness constraints, each of
//! which is a symmetry-reduced block of a moment matrix:
//!
//! * **anchored blocks** — the moment matrix of codes containing the zero
//!   word, block diagonalized per bishape, with entries expanded by
//!   [`crate::repsets::expand_p_tau_sigma`] over column classes;
//! * **unanchored blocks** — the moment matrix over all pairs, either as
//!   integer bishape blocks ([`Route::Integer`]) or as 1×1 diagonal
//!   entries per composition of cosine constituents ([`Route::Cosine`]);
//! * **the coupling block `T`** — the 2×2 compression of the unanchored
//!   moment matrix onto the empty code and the all-ones direction, with
//!   `T₁₁ = 1`, `T₁₂ = qⁿ·z(ω₀)` and `T₂₂` the all-ones diagonal entry;
//! * **nonnegativity** — one diagonal block with `z(ω) ≥ 0`.
//!
//! Orbits whose minimum distance falls below `d` have their variables
//! fixed to zero and removed; rows and columns of a block that become
//! identically zero are dropped.
//!
//! Emission follows the sparse SDPA conventions (`.dat-s`): the file
//! states the primal *minimization* of `-qⁿ·z(ω₀)`, so the bound is the
//! negated optimum.  Output is deterministic: same parameters, same bytes.

use crate::repsets::{compositions, expand_all_ones_diag, expand_factor, OrbitPolynomial, Subst};
use crate::symmetry::OrbitTable;
use crate::tableaux::{enumerate_bishapes, semistandard_tableaux, BiShape, Tableau};
use crate::words::Metric;
use crate::{Error, Result};
use std::collections::HashMap;
use std::fmt::Write as _;

/// A coefficient: exact integer where the construction stays integral,
/// floating point on the cosine route and under output scaling.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Coeff {
    Int(i128),
    Float(f64),
}

impl Coeff {
    pub fn zero() -> Coeff {
        Coeff::Int(0)
    }

    pub fn is_zero(self) -> bool {
        match self {
            Coeff::Int(v) => v == 0,
            Coeff::Float(v) => v == 0.0,
        }
    }

    pub fn to_f64(self) -> f64 {
        match self {
            Coeff::Int(v) => v as f64,
            Coeff::Float(v) => v,
        }
    }

    fn add(self, other: Coeff) -> Coeff {
        match (self, other) {
            (Coeff::Int(a), Coeff::Int(b)) => {
                Coeff::Int(a.checked_add(b).expect("coefficient overflow"))
            }
            (a, b) => Coeff::Float(a.to_f64() + b.to_f64()),
        }
    }
}

impl std::fmt::Display for Coeff {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Coeff::Int(v) => write!(f, "{v}"),
            Coeff::Float(v) => write!(f, "{v}"),
        }
    }
}

/// An affine form `constant + Σ coeff·z(var)` over program variables.
#[derive(Clone, Debug, Default)]
pub struct LinForm {
    constant: Option<Coeff>,
    terms: std::collections::BTreeMap<usize, Coeff>,
}

impl LinForm {
    pub fn new() -> LinForm {
        LinForm::default()
    }

    pub fn with_constant(c: Coeff) -> LinForm {
        LinForm { constant: (!c.is_zero()).then_some(c), terms: Default::default() }
    }

    pub fn add_term(&mut self, var: usize, c: Coeff) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(var).or_insert(Coeff::zero());
        *slot = slot.add(c);
        if slot.is_zero() {
            self.terms.remove(&var);
        }
    }

    pub fn constant(&self) -> Coeff {
        self.constant.unwrap_or(Coeff::zero())
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, Coeff)> + '_ {
        self.terms.iter().map(|(&v, &c)| (v, c))
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_none() && self.terms.is_empty()
    }

    pub fn eval(&self, z: &[f64]) -> f64 {
        self.constant().to_f64() + self.terms().map(|(v, c)| c.to_f64() * z[v]).sum::<f64>()
    }

    fn scale_by(&mut self, inv: f64) {
        if let Some(c) = self.constant {
            self.constant = Some(Coeff::Float(c.to_f64() * inv));
        }
        for c in self.terms.values_mut() {
            *c = Coeff::Float(c.to_f64() * inv);
        }
    }
}

static ZERO_FORM: LinForm = LinForm { constant: None, terms: std::collections::BTreeMap::new() };

/// One constraint block: a `dim × dim` symmetric matrix of affine forms.
/// Diagonal blocks store only their diagonal and are emitted with negative
/// size, per the SDPA convention.
#[derive(Clone, Debug)]
pub struct SdpBlock {
    pub label: String,
    pub dim: usize,
    pub diagonal: bool,
    entries: Vec<LinForm>,
}

impl SdpBlock {
    fn new(label: String, dim: usize, diagonal: bool) -> SdpBlock {
        let len = if diagonal { dim } else { dim * dim };
        SdpBlock { label, dim, diagonal, entries: vec![LinForm::new(); len] }
    }

    pub fn entry(&self, i: usize, j: usize) -> &LinForm {
        if self.diagonal {
            if i == j {
                &self.entries[i]
            } else {
                &ZERO_FORM
            }
        } else {
            &self.entries[i * self.dim + j]
        }
    }

    fn entry_mut(&mut self, i: usize, j: usize) -> &mut LinForm {
        if self.diagonal {
            assert_eq!(i, j, "diagonal block has no off-diagonal entries");
            &mut self.entries[i]
        } else {
            &mut self.entries[i * self.dim + j]
        }
    }

    /// Drop rows (and matching columns) whose entries are all zero.
    /// Returns the retained row indices.
    fn prune_zero_rows(&mut self) -> Vec<usize> {
        let keep: Vec<usize> = (0..self.dim)
            .filter(|&i| (0..self.dim).any(|j| !self.entry(i, j).is_zero()))
            .collect();
        if keep.len() != self.dim {
            let mut pruned = Vec::new();
            if self.diagonal {
                pruned.extend(keep.iter().map(|&i| self.entries[i].clone()));
            } else {
                for &i in &keep {
                    for &j in &keep {
                        pruned.push(self.entry(i, j).clone());
                    }
                }
            }
            self.dim = keep.len();
            self.entries = pruned;
        }
        keep
    }

    /// Evaluate the block at a variable assignment.
    pub fn eval(&self, z: &[f64]) -> Vec<Vec<f64>> {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.entry(i, j).eval(z)).collect())
            .collect()
    }

    /// Upper-triangle entries with their 0-based coordinates; for diagonal
    /// blocks only the diagonal itself.
    fn upper_triangle(&self) -> impl Iterator<Item = (usize, usize, &LinForm)> + '_ {
        let diag = self.diagonal;
        (0..self.dim)
            .flat_map(move |i| {
                let lo = i;
                let hi = if diag { i + 1 } else { self.dim };
                (lo..hi).map(move |j| (i, j))
            })
            .map(|(i, j)| (i, j, self.entry(i, j)))
    }
}

/// Which relaxation to generate.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Variant {
    /// Pair relaxation: unanchored blocks and `T` only — a linear program
    /// on the cosine route.
    B2,
    /// Triple relaxation: anchored blocks as well.
    B3,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::B2 => "b2",
            Variant::B3 => "b3",
        }
    }
}

/// How to reduce the unanchored moment matrix.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Route {
    /// Integer bishape blocks for `B3`, cosine diagonal for `B2`.
    Auto,
    /// Bishape blocks with integer entries; exact for every `q`.
    Integer,
    /// One diagonal entry per composition of cosine constituents; exact
    /// arithmetic only when `2cos(2πk/q)` is integral (`q ∈ {2,3,4,6}`),
    /// floating point otherwise.
    Cosine,
}

impl Route {
    fn resolve(self, variant: Variant) -> Route {
        match self {
            Route::Auto => match variant {
                Variant::B2 => Route::Cosine,
                Variant::B3 => Route::Integer,
            },
            r => r,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Route::Auto => "auto",
            Route::Integer => "integer",
            Route::Cosine => "cosine",
        }
    }
}

/// Parameters of one generated program.
#[derive(Clone, Copy, Debug)]
pub struct BoundParams {
    pub q: u32,
    pub n: usize,
    pub d: u32,
    pub metric: Metric,
    pub variant: Variant,
    pub route: Route,
    /// Divide the all-ones direction (second row and column of `T`, the
    /// corner by `q^{2n}`) and the objective by `qⁿ`; improves solver
    /// conditioning at larger `n` at the price of float coefficients.
    pub scale: bool,
}

/// A bishape block before variable selection: per-entry coefficient
/// vectors over *all* orbits of the table.  The verification oracles work
/// at this level, the program builder prunes it down to feasible
/// variables.
pub struct RawBlock {
    pub bishape: BiShape,
    /// Index set of the block: pairs of semistandard tableaux.
    pub tableaux: Vec<(Tableau, Tableau)>,
    /// Row-major `dim²` entries, each a dense orbit-coefficient vector.
    pub entries: Vec<Vec<i128>>,
}

impl RawBlock {
    pub fn dim(&self) -> usize {
        self.tableaux.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &[i128] {
        &self.entries[i * self.dim() + j]
    }
}

fn factor_matrix(
    table: &OrbitTable,
    which: Subst,
    factor: u8,
    tabs: &[Tableau],
) -> Result<Vec<OrbitPolynomial>> {
    let dim = tabs.len();
    let mut out = Vec::with_capacity(dim * dim);
    for a in tabs {
        for b in tabs {
            out.push(expand_factor(&table.classes, which, factor, a, b)?);
        }
    }
    Ok(out)
}

/// Blocks of the moment matrix anchored at the zero word (`D = {0}`), one
/// per bishape, with entries folded through the monomial-to-orbit map `r`.
pub fn anchored_blocks(table: &OrbitTable, repr_m1: usize, repr_m2: usize) -> Result<Vec<RawBlock>> {
    bishape_blocks(table, repr_m1, repr_m2, Subst::ZeroAnchored)
}

/// Integer blocks of the unanchored moment matrix (`D = ∅`), folded
/// through the pair map `r'`.
pub fn unanchored_blocks(
    table: &OrbitTable,
    repr_m1: usize,
    repr_m2: usize,
) -> Result<Vec<RawBlock>> {
    bishape_blocks(table, repr_m1, repr_m2, Subst::PairDistance)
}

/// Expand a single bishape block, with the two shape factors memoized so
/// every entry is one polynomial product.
pub fn bishape_raw_block(
    table: &OrbitTable,
    m1: usize,
    m2: usize,
    which: Subst,
    bs: BiShape,
) -> Result<RawBlock> {
    let n_orbits = table.orbits.len();
    let t1 = semistandard_tableaux(&bs.left, m1);
    let t2 = semistandard_tableaux(&bs.right, m2);
    let f1 = factor_matrix(table, which, 1, &t1)?;
    let f2 = factor_matrix(table, which, 2, &t2)?;
    let tableaux: Vec<(Tableau, Tableau)> =
        t1.iter().flat_map(|a| t2.iter().map(move |b| (a.clone(), b.clone()))).collect();
    let dim = tableaux.len();
    let mut entries = Vec::with_capacity(dim * dim);
    for (a1, a2) in itertools::iproduct!(0..t1.len(), 0..t2.len()) {
        for (b1, b2) in itertools::iproduct!(0..t1.len(), 0..t2.len()) {
            let poly = f1[a1 * t1.len() + b1].mul(&f2[a2 * t2.len() + b2])?;
            let folded = match which {
                Subst::ZeroAnchored => poly.fold_orbits(n_orbits, |m| table.r(m))?,
                Subst::PairDistance => poly.fold_orbits(n_orbits, |m| table.r_prime(m))?,
            };
            entries.push(folded);
        }
    }
    Ok(RawBlock { bishape: bs, tableaux, entries })
}

fn bishape_blocks(
    table: &OrbitTable,
    m1: usize,
    m2: usize,
    which: Subst,
) -> Result<Vec<RawBlock>> {
    enumerate_bishapes(table.n, m1, m2)
        .into_iter()
        .map(|bs| bishape_raw_block(table, m1, m2, which, bs))
        .collect()
}

/// The generated program.
pub struct SdpProgram {
    pub params: BoundParams,
    /// Route actually used after resolving [`Route::Auto`].
    pub route: Route,
    pub table: OrbitTable,
    /// Orbit index of each variable, ascending; variable 0 is always the
    /// singleton orbit carrying the objective.
    pub vars: Vec<usize>,
    /// Objective to maximize.
    pub objective: LinForm,
    /// Multiply the solver optimum by this to undo output scaling.
    pub objective_scale: f64,
    pub blocks: Vec<SdpBlock>,
}

pub fn build_program(params: &BoundParams) -> Result<SdpProgram> {
    let BoundParams { q, n, d, metric, variant, scale, .. } = *params;
    let route = params.route.resolve(variant);
    let table = OrbitTable::build(q, n)?;
    let repr = crate::repsets::representative_data(q);

    let max_words = match variant {
        Variant::B2 => 2,
        Variant::B3 => 3,
    };
    let vars = table.feasible_up_to(d, metric, max_words);
    if table.orbits[vars[0]].words() != 1 {
        return Err(Error::Mismatch("singleton orbit missing from the program".into()));
    }
    let var_of: HashMap<usize, usize> = vars.iter().enumerate().map(|(v, &o)| (o, v)).collect();

    let fold_to_linform = |coeffs: &[i128]| {
        let mut lf = LinForm::new();
        for (orbit, &c) in coeffs.iter().enumerate() {
            if c != 0 {
                if let Some(&v) = var_of.get(&orbit) {
                    lf.add_term(v, Coeff::Int(c));
                }
            }
        }
        lf
    };

    let mut blocks = Vec::new();

    // one bishape at a time: the dense orbit vectors are dropped as soon
    // as the block is converted to affine forms over program variables
    let push_bishape_blocks = |blocks: &mut Vec<SdpBlock>, which: Subst| -> Result<()> {
        let kind = match which {
            Subst::ZeroAnchored => "anchored",
            Subst::PairDistance => "unanchored",
        };
        for bs in enumerate_bishapes(n, repr.m1, repr.m2) {
            let raw = bishape_raw_block(&table, repr.m1, repr.m2, which, bs)?;
            let dim = raw.dim();
            let mut block = SdpBlock::new(format!("{kind} {}", raw.bishape), dim, false);
            for i in 0..dim {
                for j in 0..dim {
                    *block.entry_mut(i, j) = fold_to_linform(raw.entry(i, j));
                }
            }
            block.prune_zero_rows();
            if block.dim > 0 {
                blocks.push(block);
            }
        }
        Ok(())
    };

    if variant == Variant::B3 {
        push_bishape_blocks(&mut blocks, Subst::ZeroAnchored)?;
    }

    match route {
        Route::Integer => {
            push_bishape_blocks(&mut blocks, Subst::PairDistance)?;
        }
        Route::Cosine => {
            let s = repr.m1;
            for comp in compositions(n, s) {
                // the all-ones composition is subsumed by the corner of T
                if comp[0] == n {
                    continue;
                }
                let mut lf = LinForm::new();
                for (mono, c) in crate::repsets::expand_p_n_float(q, &comp) {
                    if let Some(&v) = var_of.get(&table.r_prime(&mono)) {
                        lf.add_term(v, Coeff::Float(c));
                    }
                }
                if lf.is_zero() {
                    continue;
                }
                let label = format!(
                    "diag ({})",
                    comp.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(",")
                );
                let mut block = SdpBlock::new(label, 1, true);
                *block.entry_mut(0, 0) = lf;
                blocks.push(block);
            }
        }
        Route::Auto => unreachable!("resolved above"),
    }

    // the 2×2 coupling of the empty code with the all-ones direction
    let qn: i128 = (q as i128).pow(n as u32);
    let mut t_block = SdpBlock::new("T".into(), 2, false);
    *t_block.entry_mut(0, 0) = LinForm::with_constant(Coeff::Int(1));
    let mut off = LinForm::new();
    off.add_term(0, Coeff::Int(qn));
    *t_block.entry_mut(0, 1) = off.clone();
    *t_block.entry_mut(1, 0) = off;
    *t_block.entry_mut(1, 1) = fold_to_linform(&expand_all_ones_diag(q, n)?.fold_orbits(
        table.orbits.len(),
        |m| table.r_prime(m),
    )?);
    let mut objective = LinForm::new();
    objective.add_term(0, Coeff::Int(qn));
    let mut objective_scale = 1.0;
    if scale {
        // congruence by diag(1, q⁻ⁿ) keeps the block PSD-equivalent
        let inv = 1.0 / qn as f64;
        t_block.entry_mut(0, 1).scale_by(inv);
        t_block.entry_mut(1, 0).scale_by(inv);
        t_block.entry_mut(1, 1).scale_by(inv * inv);
        objective.scale_by(inv);
        objective_scale = qn as f64;
    }
    blocks.push(t_block);

    let mut nonneg = SdpBlock::new("nonneg".into(), vars.len(), true);
    for v in 0..vars.len() {
        nonneg.entry_mut(v, v).add_term(v, Coeff::Int(1));
    }
    blocks.push(nonneg);

    Ok(SdpProgram {
        params: *params,
        route,
        table,
        vars,
        objective,
        objective_scale,
        blocks,
    })
}

impl SdpProgram {
    pub fn num_vars(&self) -> usize {
        self.vars.len()
    }

    /// Emit the program in sparse SDPA format.  The objective is negated
    /// (SDPA minimizes); constant parts land in the `F₀` matrix with the
    /// sign flipped, so that `X = Σ Fᵢ·zᵢ − F₀` reproduces each block.
    pub fn emit_sdpa(&self) -> String {
        let mut out = String::new();
        let m = self.num_vars();
        writeln!(out, "{m}").unwrap();
        writeln!(out, "{}", self.blocks.len()).unwrap();
        let sizes: Vec<String> = self
            .blocks
            .iter()
            .map(|b| if b.diagonal { format!("-{}", b.dim) } else { format!("{}", b.dim) })
            .collect();
        writeln!(out, "{}", sizes.join(" ")).unwrap();

        let mut cvec = vec![Coeff::zero(); m];
        for (v, c) in self.objective.terms() {
            cvec[v] = match c {
                Coeff::Int(x) => Coeff::Int(-x),
                Coeff::Float(x) => Coeff::Float(-x),
            };
        }
        writeln!(out, "{}", cvec.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" "))
            .unwrap();

        // quintuples `matno blkno i j value`, grouped by matrix number;
        // F₀ holds the negated constants so that X = Σ Fᵥ·zᵥ − F₀
        let mut quints: Vec<(usize, String)> = Vec::new();
        for (bno, block) in self.blocks.iter().enumerate() {
            for (i, j, e) in block.upper_triangle() {
                let c = e.constant();
                if !c.is_zero() {
                    let neg = match c {
                        Coeff::Int(x) => Coeff::Int(-x),
                        Coeff::Float(x) => Coeff::Float(-x),
                    };
                    quints.push((0, format!("0 {} {} {} {neg}", bno + 1, i + 1, j + 1)));
                }
                for (v, c) in e.terms() {
                    quints.push((
                        v + 1,
                        format!("{} {} {} {} {c}", v + 1, bno + 1, i + 1, j + 1),
                    ));
                }
            }
        }
        quints.sort_by_key(|&(v, _)| v);
        for (_, line) in quints {
            writeln!(out, "{line}").unwrap();
        }
        out
    }

    /// Machine-readable description of the generated program.
    pub fn summary_json(&self) -> String {
        #[derive(serde::Serialize)]
        struct BlockSummary<'a> {
            label: &'a str,
            dim: usize,
            diagonal: bool,
        }
        #[derive(serde::Serialize)]
        struct Summary<'a> {
            q: u32,
            n: usize,
            d: u32,
            metric: &'a str,
            variant: &'a str,
            route: &'a str,
            scaled: bool,
            num_vars: usize,
            objective_scale: f64,
            blocks: Vec<BlockSummary<'a>>,
        }
        let s = Summary {
            q: self.params.q,
            n: self.params.n,
            d: self.params.d,
            metric: self.params.metric.name(),
            variant: self.params.variant.name(),
            route: self.route.name(),
            scaled: self.params.scale,
            num_vars: self.num_vars(),
            objective_scale: self.objective_scale,
            blocks: self
                .blocks
                .iter()
                .map(|b| BlockSummary { label: &b.label, dim: b.dim, diagonal: b.diagonal })
                .collect(),
        };
        serde_json::to_string_pretty(&s).expect("summary serializes")
    }
}

/// A parsed sparse SDPA file.
#[derive(Debug, PartialEq)]
pub struct ParsedSdpa {
    pub m: usize,
    pub block_sizes: Vec<i64>,
    pub objective: Vec<f64>,
    /// `(matno, blkno, i, j, value)`, 1-based as in the file.
    pub entries: Vec<(usize, usize, usize, usize, f64)>,
}

/// Read back a sparse SDPA file.  Comment lines (`"`, `*`) are skipped and
/// the optional punctuation `{} () ,` is treated as whitespace.
pub fn parse_sdpa(text: &str) -> Result<ParsedSdpa> {
    let mut lines = text
        .lines()
        .filter(|l| {
            let t = l.trim_start();
            !t.is_empty() && !t.starts_with('"') && !t.starts_with('*')
        })
        .map(|l| l.replace(['{', '}', '(', ')', ','], " "));
    let bad = |what: &str| Error::SolverOutput(format!("malformed SDPA input: {what}"));

    let m: usize = lines
        .next()
        .ok_or_else(|| bad("missing mDIM"))?
        .split_whitespace()
        .next()
        .ok_or_else(|| bad("empty mDIM line"))?
        .parse()
        .map_err(|_| bad("mDIM not a number"))?;
    let nblocks: usize = lines
        .next()
        .ok_or_else(|| bad("missing nBLOCK"))?
        .split_whitespace()
        .next()
        .ok_or_else(|| bad("empty nBLOCK line"))?
        .parse()
        .map_err(|_| bad("nBLOCK not a number"))?;
    let block_sizes: Vec<i64> = lines
        .next()
        .ok_or_else(|| bad("missing block sizes"))?
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| bad("block size not a number")))
        .collect::<Result<_>>()?;
    if block_sizes.len() != nblocks {
        return Err(bad("block size count"));
    }
    let objective: Vec<f64> = lines
        .next()
        .ok_or_else(|| bad("missing objective"))?
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| bad("objective not a number")))
        .collect::<Result<_>>()?;
    if objective.len() != m {
        return Err(bad("objective length"));
    }
    let mut entries = Vec::new();
    for line in lines {
        let tok: Vec<&str> = line.split_whitespace().collect();
        if tok.is_empty() {
            continue;
        }
        if tok.len() != 5 {
            return Err(bad("entry arity"));
        }
        entries.push((
            tok[0].parse().map_err(|_| bad("matno"))?,
            tok[1].parse().map_err(|_| bad("blkno"))?,
            tok[2].parse().map_err(|_| bad("row"))?,
            tok[3].parse().map_err(|_| bad("col"))?,
            tok[4].parse().map_err(|_| bad("value"))?,
        ));
    }
    Ok(ParsedSdpa { m, block_sizes, objective, entries })
}

/// Outcome of an external solve.
#[derive(Debug, Clone, Copy)]
pub struct SolveReport {
    /// Solver's primal optimum of the emitted minimization.
    pub primal: f64,
    pub dual: f64,
    /// The bound: negated optimum, un-scaled.
    pub bound: f64,
    /// `⌊bound + 10⁻⁵⌋` — the integer bound on the code size.
    pub floored: i128,
    /// Whether the primal-dual gap was small enough to trust the floor.
    pub trusted: bool,
}

/// Extract `objValPrimal` / `objValDual` from solver output and negate
/// back into a maximization bound.  `objective_scale` undoes the output
/// scaling of [`BoundParams::scale`].
pub fn parse_solution_and_floor(
    text: &str,
    objective_scale: f64,
    gap_tol: f64,
) -> Result<SolveReport> {
    let grab = |key: &str| -> Result<f64> {
        text.lines()
            .filter_map(|l| {
                let l = l.trim();
                let rest = l.strip_prefix(key)?.trim_start();
                let rest = rest.strip_prefix('=')?.trim();
                let tok = rest.split_whitespace().next()?;
                tok.parse::<f64>().ok()
            })
            .next()
            .ok_or_else(|| Error::SolverOutput(format!("missing {key}")))
    };
    let primal = grab("objValPrimal")?;
    let dual = grab("objValDual")?;
    let bound = -primal * objective_scale;
    let gap = (primal - dual).abs();
    let trusted = gap <= gap_tol * (1.0 + primal.abs());
    let floored = (bound + 1e-5).floor() as i128;
    Ok(SolveReport { primal, dual, bound, floored, trusted })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(q: u32, n: usize, d: u32, metric: Metric, variant: Variant) -> BoundParams {
        BoundParams { q, n, d, metric, variant, route: Route::Auto, scale: false }
    }

    #[test]
    fn tiny_program_shape() {
        let p = build_program(&params(5, 1, 2, Metric::LeeInf, Variant::B3)).unwrap();
        assert_eq!(p.num_vars(), 2); // {0} and {0,2}
        assert_eq!(p.route, Route::Integer);
        // variable 0 is the singleton orbit and carries the objective
        assert_eq!(p.table.orbits[p.vars[0]].words(), 1);
        let obj: Vec<(usize, f64)> =
            p.objective.terms().map(|(v, c)| (v, c.to_f64())).collect();
        assert_eq!(obj, vec![(0, 5.0)]);
        // blocks end with T and the nonnegativity diagonal
        let labels: Vec<&str> = p.blocks.iter().map(|b| b.label.as_str()).collect();
        assert_eq!(labels[labels.len() - 2], "T");
        assert_eq!(labels[labels.len() - 1], "nonneg");
        assert!(p.blocks.iter().all(|b| b.dim > 0));
    }

    #[test]
    fn blocks_are_symmetric() {
        for variant in [Variant::B3, Variant::B2] {
            let p = build_program(&params(5, 2, 2, Metric::LeeInf, variant)).unwrap();
            for b in &p.blocks {
                for i in 0..b.dim {
                    for j in 0..b.dim {
                        let a: Vec<_> = b.entry(i, j).terms().collect();
                        let c: Vec<_> = b.entry(j, i).terms().collect();
                        assert_eq!(a, c, "block {} entry ({i},{j})", b.label);
                    }
                }
            }
        }
    }

    #[test]
    fn emission_is_deterministic_and_parses_back() {
        let p = build_program(&params(5, 2, 2, Metric::LeeInf, Variant::B3)).unwrap();
        let text = p.emit_sdpa();
        assert_eq!(text, p.emit_sdpa());
        let parsed = parse_sdpa(&text).unwrap();
        assert_eq!(parsed.m, p.num_vars());
        assert_eq!(parsed.block_sizes.len(), p.blocks.len());
        for (size, block) in parsed.block_sizes.iter().zip(&p.blocks) {
            assert_eq!(*size, if block.diagonal { -(block.dim as i64) } else { block.dim as i64 });
        }
        // the objective minimizes -qⁿ·z(ω₀)
        assert_eq!(parsed.objective[0], -25.0);
        assert!(parsed.objective[1..].iter().all(|&c| c == 0.0));
        // exactly one constant entry: T₁₁
        let consts: Vec<_> = parsed.entries.iter().filter(|e| e.0 == 0).collect();
        assert_eq!(consts.len(), 1);
        assert_eq!(consts[0].4, -1.0);
    }

    #[test]
    fn scaling_rescales_t_and_objective() {
        let mut pr = params(5, 2, 2, Metric::LeeInf, Variant::B3);
        pr.scale = true;
        let p = build_program(&pr).unwrap();
        assert_eq!(p.objective_scale, 25.0);
        let t = p.blocks.iter().find(|b| b.label == "T").unwrap();
        let off: Vec<(usize, f64)> = t.entry(0, 1).terms().map(|(v, c)| (v, c.to_f64())).collect();
        assert_eq!(off, vec![(0, 1.0)]);
        let unscaled = build_program(&params(5, 2, 2, Metric::LeeInf, Variant::B3)).unwrap();
        let tu = unscaled.blocks.iter().find(|b| b.label == "T").unwrap();
        // corner scales by q^{2n}
        let a = tu.entry(1, 1).eval(&vec![1.0; unscaled.num_vars()]);
        let b = t.entry(1, 1).eval(&vec![1.0; p.num_vars()]);
        assert!((a / 625.0 - b).abs() < 1e-9);
    }

    #[test]
    fn b2_is_diagonal_apart_from_t() {
        let p = build_program(&params(5, 3, 2, Metric::LeeInf, Variant::B2)).unwrap();
        assert_eq!(p.route, Route::Cosine);
        assert!(p.table.orbits[*p.vars.last().unwrap()].words() <= 2);
        for b in &p.blocks {
            assert!(b.diagonal || b.label == "T", "unexpected block {}", b.label);
        }
    }

    #[test]
    fn infeasible_orbits_are_dropped() {
        // Lee distance 4 on Z_5²: far fewer feasible orbits than d = 2
        let loose = build_program(&params(5, 2, 2, Metric::Lee, Variant::B3)).unwrap();
        let tight = build_program(&params(5, 2, 4, Metric::Lee, Variant::B3)).unwrap();
        assert!(tight.num_vars() < loose.num_vars());
        for b in &tight.blocks {
            for i in 0..b.dim {
                assert!((0..b.dim).any(|j| !b.entry(i, j).is_zero()), "zero row survived");
            }
        }
    }

    #[test]
    fn solution_parsing_and_flooring() {
        let out = "phase.value  = pdOPT\nobjValPrimal = -1.0260e+01\nobjValDual   = -1.0260001e+01\n";
        let r = parse_solution_and_floor(out, 1.0, 1e-5).unwrap();
        assert!((r.bound - 10.26).abs() < 1e-9);
        assert_eq!(r.floored, 10);
        assert!(r.trusted);
        let r = parse_solution_and_floor(out, 10.0, 1e-12).unwrap();
        assert_eq!(r.floored, 102);
        assert!(!r.trusted);
        assert!(parse_solution_and_floor("nothing here", 1.0, 1e-5).is_err());
    }

    #[test]
    fn summary_json_mentions_every_block() {
        let p = build_program(&params(5, 1, 2, Metric::LeeInf, Variant::B3)).unwrap();
        let js: serde_json::Value = serde_json::from_str(&p.summary_json()).unwrap();
        assert_eq!(js["q"], 5);
        assert_eq!(js["num_vars"], 2);
        assert_eq!(js["blocks"].as_array().unwrap().len(), p.blocks.len());
    }
}
