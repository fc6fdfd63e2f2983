//! Exact independence numbers of strong powers of circular graphs, computed
//! by layer decomposition.
//!
//! A code in ℤ_q^n with minimum Lee∞ distance ≥ d splits by first symbol
//! into layers S_0, …, S_{q−1} ⊆ ℤ_q^{n−1}.  Two words whose first symbols
//! are circularly closer than d must get their distance from the remaining
//! coordinates, so the restriction of the code to any window of d
//! consecutive layers (cyclically) projects injectively to a code with Lee∞
//! distance ≥ d in dimension n−1 — in particular it has at most A(n−1)
//! words, where A(n−1) is the (recursively computed) optimum one dimension
//! down.  Summing this cap over all q sliding windows counts every word d
//! times and bounds the code size by ⌊q·A(n−1)/d⌋.
//!
//! The search tries candidate sizes t from that bound downward.  For a
//! fixed t it enumerates the possible layer-size profiles (x_0, …, x_{q−1})
//! — nonnegative integers summing to t — and for each profile tries to
//! realize actual layer sets by depth-first search, placing whole layers at
//! a time.  Near the counting bound the profiles are almost rigid (every
//! window must be nearly full), which is what makes instances like
//! q = 7, n = 3, d = 2 tractable: a branch-and-bound over single words has
//! no cheap way to see that the scattered remnants of a window are mutually
//! conflicting, while the profile search commits to whole layers and fails
//! fast.  Several reductions keep the layer search itself small:
//!
//! * the placement order is chosen per profile: whenever a placed layer
//!   and an unplaced neighbor have sizes summing to the window cap (or one
//!   less), their union must be a near-maximum clique of the tail graph,
//!   so the neighbor is filled from a table of all such cliques — a
//!   handful of candidates — while loosely constrained layers sink to the
//!   last steps; after every placed layer the remaining free region of
//!   each unplaced neighbor is checked to still contain a clique of the
//!   profiled size (exactly, when the tail space fits one machine word);
//! * symmetries that map codes to codes of the same size cut duplicates:
//!   rotation of the first coordinate makes layer 0 a maximal layer,
//!   translation in the tail coordinates pins the all-zero tail into layer
//!   0, reflection of the first coordinate orders the profile against its
//!   mirror image, and the stabilizer of the zero tail (per-coordinate
//!   reflections and coordinate permutations) keeps only the
//!   lexicographically least image of the layer-0 set.

use crate::words::{all_words, circular_distance, Word};

/// Exact maximum size of a Lee∞ code in ℤ_q^n with minimum distance ≥ d,
/// given the exact optimum `prev` one dimension down, with a witness code.
/// Requires n ≥ 2 and 2 ≤ d ≤ ⌊q/2⌋.
pub(crate) fn layered_alpha(q: u32, n: usize, d: u32, prev: usize) -> (usize, Vec<Word>) {
    assert!(n >= 2 && d >= 2 && d <= q / 2, "layer decomposition needs n >= 2, 2 <= d <= q/2");
    let tails = all_words(q, n - 1);
    let m = tails.len();
    let stride = m.div_ceil(64);
    let width = d as usize;
    let layers = q as usize;

    // compat[u]: tails at Lee∞ distance ≥ d from tail u, as a bitset row;
    // ball[u] is its complement (tails at distance ≤ d−1, including u).
    let mut compat = vec![0u64; m * stride];
    let mut ball = vec![0u64; m * stride];
    for u in 0..m {
        for v in 0..m {
            let far = tails[u]
                .symbols()
                .iter()
                .zip(tails[v].symbols())
                .map(|(&a, &b)| circular_distance(q, a, b))
                .max()
                .is_some_and(|dist| dist >= d);
            if far {
                compat[u * stride + v / 64] |= 1 << (v % 64);
            } else {
                ball[u * stride + v / 64] |= 1 << (v % 64);
            }
        }
    }

    let group = zero_stabilizer(q, n - 1, &tails);

    // For single-word tail spaces, tables of all cliques of the two largest
    // sizes, each with per-tail membership bitsets.  Two layers within the
    // window whose sizes sum to s form a clique of size s in the tail
    // graph, so once one of them is placed the other is the complement of
    // the placed set inside one of the few size-s cliques containing it —
    // a handful of table lookups instead of an in-layer subset search.
    // Near the counting bound almost every transition is of this kind.
    let tables: Vec<CliqueTable> =
        if stride == 1 { clique_tables_one_word(&compat, m, prev) } else { Vec::new() };

    let upper = layers * prev / width;
    let mut search = Realize {
        q: layers,
        d: width,
        stride,
        compat: &compat,
        ball: &ball,
        cap: prev,
        group,
        seq: Vec::new(),
        linked: Vec::new(),
        ahead: Vec::new(),
        tables: &tables,
        profile: vec![0; layers],
        chosen: vec![Vec::new(); layers],
        ball_union: vec![vec![0u64; stride]; layers],
        full: full_mask(m, stride),
        region: vec![0u64; stride],
        scratch: vec![vec![0u64; stride]; upper.max(1) + 1],
        sp: 0,
    };
    for t in (1..=upper).rev() {
        if search.any_profile(t) {
            let mut words = Vec::with_capacity(t);
            for (a, layer) in search.chosen.iter().enumerate() {
                for &u in layer {
                    let mut symbols = vec![a as u32];
                    symbols.extend_from_slice(tails[u].symbols());
                    words.push(Word::new(q, symbols).expect("symbols are reduced mod q"));
                }
            }
            debug_assert_eq!(words.len(), t);
            return (t, words);
        }
    }
    unreachable!("a single word always realizes t = 1")
}

fn full_mask(m: usize, stride: usize) -> Vec<u64> {
    let mut mask = vec![!0u64; stride];
    if m % 64 != 0 {
        mask[stride - 1] = (1u64 << (m % 64)) - 1;
    }
    mask
}

/// The stabilizer of the all-zero tail inside the isometry group of the
/// tail space: per-coordinate reflections combined with coordinate
/// permutations, as index maps on the lexicographic tail order.  The
/// identity is omitted.
fn zero_stabilizer(q: u32, coords: usize, tails: &[Word]) -> Vec<Vec<u32>> {
    let mut perms: Vec<Vec<usize>> = Vec::new();
    let mut idx: Vec<usize> = (0..coords).collect();
    permutations(&mut idx, 0, &mut perms);
    let rank = |symbols: &[u32]| -> u32 {
        let mut r = 0u32;
        for &s in symbols {
            r = r * q + s;
        }
        r
    };
    let mut maps = Vec::new();
    for perm in &perms {
        for signs in 0..1u32 << coords {
            if signs == 0 && perm.iter().enumerate().all(|(i, &p)| i == p) {
                continue;
            }
            let map: Vec<u32> = tails
                .iter()
                .map(|w| {
                    let symbols: Vec<u32> = (0..coords)
                        .map(|i| {
                            let s = w.symbols()[perm[i]];
                            if signs >> i & 1 == 1 {
                                (q - s) % q
                            } else {
                                s
                            }
                        })
                        .collect();
                    rank(&symbols)
                })
                .collect();
            maps.push(map);
        }
    }
    maps
}

fn permutations(idx: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == idx.len() {
        out.push(idx.clone());
        return;
    }
    for i in k..idx.len() {
        idx.swap(k, i);
        permutations(idx, k + 1, out);
        idx.swap(k, i);
    }
}

/// All tail-graph cliques of one size, with per-tail membership bitsets.
struct CliqueTable {
    size: usize,
    cliques: Vec<u64>,
    /// per tail, bitset over `cliques` of the cliques through it
    member: Vec<u64>,
    /// words per `member` row
    words: usize,
}

impl CliqueTable {
    fn new(size: usize, cliques: Vec<u64>, m: usize) -> Self {
        let words = cliques.len().div_ceil(64).max(1);
        let mut member = vec![0u64; m * words];
        for (id, &k) in cliques.iter().enumerate() {
            let mut tails = k;
            while tails != 0 {
                let u = tails.trailing_zeros() as usize;
                tails &= tails - 1;
                member[u * words + id / 64] |= 1 << (id % 64);
            }
        }
        CliqueTable { size, cliques, member, words }
    }

    /// Ids of the cliques containing every tail in `set`.
    fn through(&self, set: &[usize]) -> Vec<usize> {
        let mut ids = Vec::new();
        for w in 0..self.words {
            let mut acc = if (w + 1) * 64 <= self.cliques.len() {
                !0u64
            } else if self.cliques.len() % 64 == 0 {
                0
            } else {
                (1u64 << (self.cliques.len() % 64)) - 1
            };
            for &u in set {
                acc &= self.member[u * self.words + w];
            }
            while acc != 0 {
                ids.push(w * 64 + acc.trailing_zeros() as usize);
                acc &= acc - 1;
            }
        }
        ids
    }
}

/// Tables of all cliques of the two largest sizes of a graph on at most
/// 64 vertices, biggest (= `cap`) first.  `cap` is the independently
/// computed clique number; the two must agree, which cross-checks the
/// recursion one dimension down.  Smaller sizes are not worth tabulating:
/// their per-anchor candidate lists outgrow what a direct region-bounded
/// enumeration visits.
fn clique_tables_one_word(compat: &[u64], m: usize, cap: usize) -> Vec<CliqueTable> {
    // All maximal cliques by Bron-Kerbosch with pivoting; every clique of
    // size s is an s-subset of some maximal clique.
    fn extend(compat: &[u64], r: u64, p: u64, x: u64, out: &mut Vec<u64>) {
        if p == 0 && x == 0 {
            out.push(r);
            return;
        }
        let mut pivot_cand = 0u64;
        let mut pivot_deg = usize::MAX;
        let mut px = p | x;
        while px != 0 {
            let u = px.trailing_zeros() as usize;
            px &= px - 1;
            let outside = (p & !compat[u]).count_ones() as usize;
            if outside < pivot_deg {
                pivot_deg = outside;
                pivot_cand = p & !compat[u];
            }
        }
        let mut p = p;
        let mut x = x;
        while pivot_cand != 0 {
            let v = pivot_cand.trailing_zeros() as usize;
            pivot_cand &= pivot_cand - 1;
            extend(compat, r | 1 << v, p & compat[v], x & compat[v], out);
            p &= !(1 << v);
            x |= 1 << v;
        }
    }
    let full = if m == 64 { !0u64 } else { (1u64 << m) - 1 };
    let mut maximal = Vec::new();
    extend(compat, 0, full, 0, &mut maximal);
    let found = maximal.iter().map(|k| k.count_ones() as usize).max().unwrap_or(0);
    assert_eq!(found, cap, "tail clique number disagrees with the recursive optimum");

    let mut tables = Vec::new();
    for size in (cap.saturating_sub(1).max(1)..=cap).rev() {
        let mut seen = std::collections::HashSet::new();
        for &k in maximal.iter().filter(|k| k.count_ones() as usize >= size) {
            subsets_of_size(k, size, &mut |sub| {
                seen.insert(sub);
            });
        }
        let mut cliques: Vec<u64> = seen.into_iter().collect();
        cliques.sort_unstable();
        tables.push(CliqueTable::new(size, cliques, m));
    }
    tables
}

/// Call `emit` with every subset of `mask` having exactly `size` bits.
fn subsets_of_size(mask: u64, size: usize, emit: &mut dyn FnMut(u64)) {
    if size == 0 {
        emit(0);
        return;
    }
    if (mask.count_ones() as usize) < size {
        return;
    }
    let low = mask & mask.wrapping_neg();
    subsets_of_size(mask & !low, size - 1, &mut |sub| emit(sub | low));
    subsets_of_size(mask & !low, size, emit);
}

/// Is the ascending set its own lexicographic minimum under the group?
fn least_image(set: &[usize], group: &[Vec<u32>]) -> bool {
    'outer: for g in group {
        let mut img: Vec<u32> = set.iter().map(|&v| g[v]).collect();
        img.sort_unstable();
        for (&x, &y) in img.iter().zip(set) {
            match (x as usize).cmp(&y) {
                std::cmp::Ordering::Less => return false,
                std::cmp::Ordering::Greater => continue 'outer,
                std::cmp::Ordering::Equal => {}
            }
        }
    }
    true
}

/// Does `cand` contain a clique of `want - size` more vertices?  Only
/// meaningful when the tail space fits one machine word, so that `compat[v]`
/// is exactly the adjacency row of v.
fn clique_of_size_exists(compat: &[u64], cand: u64, want: usize, size: usize) -> bool {
    if size >= want {
        return true;
    }
    let mut rest = cand;
    while rest != 0 {
        if size + (rest.count_ones() as usize) < want {
            return false;
        }
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        if clique_of_size_exists(compat, rest & compat[v], want, size + 1) {
            return true;
        }
    }
    false
}

/// Can the masked tails still hold a clique of the wanted size?  Exact when
/// the tail space fits one machine word, a popcount bound otherwise.
fn admits_clique(compat: &[u64], stride: usize, mask: &[u64], want: usize) -> bool {
    if count_bits(mask) < want {
        return false;
    }
    stride != 1 || clique_of_size_exists(compat, mask[0], want, 0)
}

fn split_pair(chosen: &mut [Vec<usize>], b: usize, c: usize) -> (&mut Vec<usize>, &mut Vec<usize>) {
    if b < c {
        let (lo, hi) = chosen.split_at_mut(c);
        (&mut lo[b], &mut hi[0])
    } else {
        let (lo, hi) = chosen.split_at_mut(b);
        (&mut hi[0], &mut lo[c])
    }
}

/// Find a clique with `need_b` vertices inside `region_b` and `need_c`
/// inside `region_c` (a vertex in both regions may serve either side),
/// writing the two halves into `sb` and `sc`.  Only for single-word tail
/// spaces, where `compat[v]` is the adjacency row of v.
fn split_clique(
    compat: &[u64],
    region_b: u64,
    region_c: u64,
    need_b: usize,
    need_c: usize,
    sb: &mut Vec<usize>,
    sc: &mut Vec<usize>,
) -> bool {
    let mut rest = region_b | region_c;
    if need_b + need_c == 0 {
        return true;
    }
    loop {
        if ((rest & region_b).count_ones() as usize) < need_b - sb.len()
            || ((rest & region_c).count_ones() as usize) < need_c - sc.len()
            || (rest.count_ones() as usize) < need_b + need_c - sb.len() - sc.len()
        {
            return false;
        }
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        let extended = rest & compat[v];
        if region_b >> v & 1 == 1 && sb.len() < need_b {
            sb.push(v);
            if sb.len() + sc.len() == need_b + need_c
                || split_clique(compat, extended & region_b, extended & region_c, need_b, need_c, sb, sc)
            {
                return true;
            }
            sb.pop();
        }
        if region_c >> v & 1 == 1 && sc.len() < need_c {
            sc.push(v);
            if sb.len() + sc.len() == need_b + need_c
                || split_clique(compat, extended & region_b, extended & region_c, need_b, need_c, sb, sc)
            {
                return true;
            }
            sc.pop();
        }
    }
}

struct Realize<'a> {
    q: usize,
    d: usize,
    stride: usize,
    compat: &'a [u64],
    ball: &'a [u64],
    /// maximum total size of any d consecutive layers
    cap: usize,
    /// tail maps fixing the zero tail, for layer-0 canonicity
    group: Vec<Vec<u32>>,
    /// placement order of the layers
    seq: Vec<usize>,
    /// per placement step, the already placed layers linked to it
    linked: Vec<Vec<usize>>,
    /// per placement step, the unplaced neighbors to look ahead into
    ahead: Vec<Vec<(usize, Vec<usize>)>>,
    /// all tail-graph cliques of the two largest sizes, biggest first
    /// (single-word tail spaces only)
    tables: &'a [CliqueTable],
    profile: Vec<usize>,
    /// chosen tail indices per layer; holds the witness on success
    chosen: Vec<Vec<usize>>,
    /// union of the balls of the chosen tails, per placed layer
    ball_union: Vec<Vec<u64>>,
    full: Vec<u64>,
    region: Vec<u64>,
    /// candidate buffers for the in-layer clique enumeration, one per live
    /// recursion frame across all layers (at most one per clique vertex)
    scratch: Vec<Vec<u64>>,
    /// index of the next free scratch buffer
    sp: usize,
}

impl<'a> Realize<'a> {
    fn row<'s>(&self, table: &'s [u64], u: usize) -> &'s [u64] {
        &table[u * self.stride..(u + 1) * self.stride]
    }

    /// Enumerate layer-size profiles summing to t and try to realize each.
    /// Layer 0 is normalized to hold a maximal layer (rotation symmetry).
    fn any_profile(&mut self, t: usize) -> bool {
        let x0_min = t.div_ceil(self.q).max(1);
        let x0_max = t.min(self.cap);
        for x0 in (x0_min..=x0_max).rev() {
            self.profile[0] = x0;
            if self.next_profile_entry(1, t - x0) {
                return true;
            }
        }
        false
    }

    /// Extend the profile at position a with `remaining` size left to place.
    fn next_profile_entry(&mut self, a: usize, remaining: usize) -> bool {
        if a == self.q {
            if remaining != 0 || !self.profile_admissible() {
                return false;
            }
            self.build_order();
            return self.place_layer(0);
        }
        // layer 0 is maximal, so every open slot takes at most profile[0]
        let per_slot = self.profile[0];
        if remaining > (self.q - a) * per_slot {
            return false;
        }
        for x in (0..=remaining.min(per_slot)).rev() {
            self.profile[a] = x;
            // check the window ending at a once it is fully assigned
            if a >= self.d - 1 {
                let sum: usize = (0..self.d).map(|k| self.profile[a - k]).sum();
                if sum > self.cap {
                    continue;
                }
            }
            if self.next_profile_entry(a + 1, remaining - x) {
                return true;
            }
        }
        false
    }

    /// Wrap-around checks that could not run incrementally, plus the
    /// reflection normalization: the first coordinate can be reflected
    /// without moving layer 0, so only profiles at most their mirror image
    /// lexicographically need realizing.
    fn profile_admissible(&self) -> bool {
        for start in self.q - self.d + 1..self.q {
            let sum: usize = (0..self.d).map(|k| self.profile[(start + k) % self.q]).sum();
            if sum > self.cap {
                return false;
            }
        }
        let mut i = 1;
        let mut j = self.q - 1;
        while i < j {
            match self.profile[i].cmp(&self.profile[j]) {
                std::cmp::Ordering::Less => break,
                std::cmp::Ordering::Greater => return false,
                std::cmp::Ordering::Equal => {
                    i += 1;
                    j -= 1;
                }
            }
        }
        true
    }

    /// Choose the placement order for the current profile, then derive the
    /// per-step link and lookahead structures from it.  The root is layer 0
    /// (a maximal one, so the fewest choices; tail 0 is pinned there and
    /// canonicity enforced); empty layers go next since they constrain
    /// nothing; every further step places a layer linked to an already
    /// placed one, preferring anchors whose sizes sum to a table size —
    /// those fills are near-rigid, a handful of candidates each — so the
    /// loosely constrained layers sink to the deepest steps, where the
    /// first viable fill ends the search instead of multiplying it.
    fn build_order(&mut self) {
        let q = self.q;
        let circ = |a: usize, b: usize| a.abs_diff(b).min(q - a.abs_diff(b));
        let mut placed = vec![false; q];
        let mut seq = Vec::with_capacity(q);
        seq.push(0);
        placed[0] = true;
        for a in 1..q {
            if self.profile[a] == 0 {
                seq.push(a);
                placed[a] = true;
            }
        }
        let grade = self.cap + 1;
        while seq.len() < q {
            let mut best: Option<(usize, usize)> = None;
            for b in 0..q {
                if placed[b] {
                    continue;
                }
                let mut anchors = 0usize;
                let mut rigidity = usize::MAX;
                for a in 0..q {
                    if placed[a] && circ(a, b) < self.d {
                        anchors += 1;
                        let sum = self.profile[a] + self.profile[b];
                        if self.tables.iter().any(|t| t.size == sum) {
                            // prefer larger table sizes, then larger anchors
                            let key = (self.cap - sum) * grade + (self.cap - self.profile[a]);
                            rigidity = rigidity.min(key);
                        }
                    }
                }
                if anchors == 0 {
                    continue;
                }
                // fills with no table rank below all table fills; among them
                // prefer more constraining neighbors, then larger layers
                let key = if rigidity == usize::MAX {
                    grade * grade + (q - anchors) * grade + (self.cap - self.profile[b])
                } else {
                    rigidity
                };
                if best.is_none_or(|(k, _)| key < k) {
                    best = Some((key, b));
                }
            }
            let (_, b) = best.expect("every boundary layer has a placed neighbor");
            seq.push(b);
            placed[b] = true;
        }
        self.linked = (0..q)
            .map(|s| seq[..s].iter().copied().filter(|&b| circ(b, seq[s]) < self.d).collect())
            .collect();
        self.ahead = (0..q)
            .map(|s| {
                seq[s + 1..]
                    .iter()
                    .map(|&b| {
                        (b, seq[..=s].iter().copied().filter(|&c| circ(b, c) < self.d).collect())
                    })
                    .filter(|(b, links): &(usize, Vec<usize>)| {
                        circ(*b, seq[s]) < self.d && !links.is_empty()
                    })
                    .collect()
            })
            .collect();
        self.seq = seq;
    }

    /// Try to realize the layers from placement step `step` on.
    fn place_layer(&mut self, step: usize) -> bool {
        if step == self.q {
            return true;
        }
        if step + 2 == self.q && self.stride == 1 {
            let (b, c) = (self.seq[step], self.seq[step + 1]);
            if b.abs_diff(c).min(self.q - b.abs_diff(c)) < self.d {
                return self.place_last_two(step);
            }
        }
        let a = self.seq[step];
        let need = self.profile[a];
        self.chosen[a].clear();
        if need == 0 {
            for word in &mut self.ball_union[a] {
                *word = 0;
            }
            return self.place_layer(step + 1);
        }
        let mut allowed = self.full.clone();
        for b in &self.linked[step] {
            for (word, forbidden) in allowed.iter_mut().zip(&self.ball_union[*b]) {
                *word &= !forbidden;
            }
        }
        if let Some((table, anchor)) = self.anchor_table(&self.linked[step], need) {
            return self.place_via_table(table, step, anchor, allowed[0]);
        }
        if step == 0 {
            // translation symmetry in the tail coordinates: pin tail 0
            self.chosen[0].push(0);
            for (word, compat) in allowed.iter_mut().zip(self.row(self.compat, 0)) {
                *word &= compat;
            }
            if admits_clique(self.compat, self.stride, &allowed, need - 1)
                && self.pick(0, &allowed, need - 1, 0)
            {
                return true;
            }
            self.chosen[0].clear();
            return false;
        }
        if !admits_clique(self.compat, self.stride, &allowed, need) {
            return false;
        }
        self.pick(step, &allowed, need, 0)
    }

    /// The most rigid clique table usable to fill a layer of size `need`:
    /// a placed layer among `linked` whose size plus `need` equals a table
    /// size, preferring larger sizes (fewer candidate cliques per anchor).
    fn anchor_table(&self, linked: &[usize], need: usize) -> Option<(&'a CliqueTable, usize)> {
        for table in self.tables {
            for &b in linked {
                if self.profile[b] + need == table.size {
                    return Some((table, b));
                }
            }
        }
        None
    }

    /// Fill the layer at `step` given a placed neighbor `anchor` whose size
    /// plus this layer's size equals the table's clique size: their union
    /// must be such a clique, so the layer is the complement of the anchor
    /// inside one of the few table cliques containing it.
    fn place_via_table(
        &mut self,
        table: &CliqueTable,
        step: usize,
        anchor: usize,
        allowed: u64,
    ) -> bool {
        let a = self.seq[step];
        let anchor_mask = self.chosen[anchor].iter().fold(0u64, |mask, &u| mask | 1 << u);
        for id in table.through(&self.chosen[anchor]) {
            let layer = table.cliques[id] & !anchor_mask;
            if layer & !allowed != 0 {
                continue;
            }
            debug_assert_eq!(layer.count_ones() as usize, self.profile[a]);
            self.chosen[a].clear();
            self.ball_union[a][0] = 0;
            let mut members = layer;
            while members != 0 {
                let u = members.trailing_zeros() as usize;
                members &= members - 1;
                self.chosen[a].push(u);
                self.ball_union[a][0] |= self.ball[u];
            }
            if self.lookahead(step) && self.place_layer(step + 1) {
                return true;
            }
        }
        self.chosen[a].clear();
        false
    }

    /// Choose `need` more pairwise-compatible tails for the layer placed at
    /// `step`, in ascending index order starting at `floor`.
    fn pick(&mut self, step: usize, allowed: &[u64], need: usize, floor: usize) -> bool {
        let a = self.seq[step];
        if need == 0 {
            if step == 0 && !least_image(&self.chosen[0], &self.group) {
                return false;
            }
            let stride = self.stride;
            let ball = self.ball;
            {
                let union = &mut self.ball_union[a];
                for word in union.iter_mut() {
                    *word = 0;
                }
                for &u in &self.chosen[a] {
                    for (word, b) in union.iter_mut().zip(&ball[u * stride..(u + 1) * stride]) {
                        *word |= b;
                    }
                }
            }
            return self.lookahead(step) && self.place_layer(step + 1);
        }
        if count_bits(allowed) < need {
            return false;
        }
        let mut from = floor;
        let slot = self.sp;
        self.sp += 1;
        let mut rest = std::mem::take(&mut self.scratch[slot]);
        debug_assert_eq!(rest.len(), self.stride);
        while let Some(v) = next_bit(allowed, from) {
            rest.copy_from_slice(allowed);
            for (word, compat) in rest.iter_mut().zip(self.row(self.compat, v)) {
                *word &= compat;
            }
            clear_below(&mut rest, v + 1);
            self.chosen[a].push(v);
            if self.pick(step, &rest, need - 1, v + 1) {
                self.scratch[slot] = rest;
                self.sp = slot;
                return true;
            }
            self.chosen[a].pop();
            from = v + 1;
        }
        self.scratch[slot] = rest;
        self.sp = slot;
        false
    }

    /// Realize the final two layers in one solve when they are linked:
    /// every tail chosen for either must then be at distance ≥ d from
    /// every other, so their union is a single clique, split so that each
    /// half avoids the balls of its own placed neighbors.  Solving for
    /// that clique directly skips the two widest enumeration levels.
    fn place_last_two(&mut self, step: usize) -> bool {
        let b = self.seq[step];
        let c = self.seq[step + 1];
        debug_assert!(b.abs_diff(c).min(self.q - b.abs_diff(c)) < self.d);
        let mut region_b = self.full[0];
        for &e in &self.linked[step] {
            region_b &= !self.ball_union[e][0];
        }
        let mut region_c = self.full[0];
        for &e in self.linked[step + 1].iter().filter(|&&e| e != b) {
            region_c &= !self.ball_union[e][0];
        }
        self.chosen[b].clear();
        self.chosen[c].clear();
        let (need_b, need_c) = (self.profile[b], self.profile[c]);
        if let Some(table) = self.tables.iter().find(|t| t.size == need_b + need_c && t.size == self.cap)
        {
            // the union of the two layers must be a maximum clique
            for &k in &table.cliques {
                if k & !(region_b | region_c) != 0 {
                    continue;
                }
                let fixed_b = k & !region_c;
                let fixed_c = k & !region_b;
                if fixed_b.count_ones() as usize > need_b
                    || fixed_c.count_ones() as usize > need_c
                {
                    continue;
                }
                let mut members = k;
                while members != 0 {
                    let u = members.trailing_zeros() as usize;
                    members &= members - 1;
                    if fixed_c >> u & 1 == 1 || (fixed_b >> u & 1 == 0 && self.chosen[b].len() == need_b)
                    {
                        self.chosen[c].push(u);
                    } else {
                        self.chosen[b].push(u);
                    }
                }
                return true;
            }
            return false;
        }
        let (sb, sc) = split_pair(&mut self.chosen, b, c);
        split_clique(self.compat, region_b, region_c, need_b, need_c, sb, sc)
    }

    /// After completing the layer at `step`, every unplaced neighboring
    /// layer must still have enough free tails left.
    fn lookahead(&mut self, step: usize) -> bool {
        for idx in 0..self.ahead[step].len() {
            let b = self.ahead[step][idx].0;
            let want = self.profile[b];
            if want == 0 {
                continue;
            }
            self.region.copy_from_slice(&self.full);
            for j in 0..self.ahead[step][idx].1.len() {
                let c = self.ahead[step][idx].1[j];
                for (word, forbidden) in self.region.iter_mut().zip(&self.ball_union[c]) {
                    *word &= !forbidden;
                }
            }
            if let Some((table, c)) = self.anchor_table(&self.ahead[step][idx].1, want) {
                if !self.table_extension_exists(table, c, self.region[0]) {
                    return false;
                }
                continue;
            }
            if !admits_clique(self.compat, self.stride, &self.region, want) {
                return false;
            }
        }
        true
    }

    /// Is there a table clique through the chosen tails of layer `c` whose
    /// remaining tails all lie in `region`?
    fn table_extension_exists(&self, table: &CliqueTable, c: usize, region: u64) -> bool {
        let set_mask = self.chosen[c].iter().fold(0u64, |mask, &u| mask | 1 << u);
        table
            .through(&self.chosen[c])
            .into_iter()
            .any(|id| table.cliques[id] & !set_mask & !region == 0)
    }
}

fn count_bits(mask: &[u64]) -> usize {
    mask.iter().map(|w| w.count_ones() as usize).sum()
}

/// Lowest set bit with index ≥ from, if any.
fn next_bit(mask: &[u64], from: usize) -> Option<usize> {
    let mut idx = from / 64;
    if idx >= mask.len() {
        return None;
    }
    let mut word = mask[idx] & (!0u64).checked_shl((from % 64) as u32).unwrap_or(0);
    loop {
        if word != 0 {
            return Some(idx * 64 + word.trailing_zeros() as usize);
        }
        idx += 1;
        if idx == mask.len() {
            return None;
        }
        word = mask[idx];
    }
}

/// Clear all bits with index < limit.
fn clear_below(mask: &mut [u64], limit: usize) {
    let full_words = (limit / 64).min(mask.len());
    for word in mask.iter_mut().take(full_words) {
        *word = 0;
    }
    if full_words < mask.len() && limit % 64 != 0 {
        mask[full_words] &= !0u64 << (limit % 64);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clique::BitGraph;
    use crate::words::lee_inf_distance;

    /// Reference optimum: plain maximum clique in the compatibility graph
    /// (anchored at the zero word, which translation symmetry allows).
    fn reference_alpha(q: u32, n: usize, d: u32) -> usize {
        let words = all_words(q, n);
        let mut g = BitGraph::new(words.len());
        for i in 0..words.len() {
            for j in i + 1..words.len() {
                if lee_inf_distance(&words[i], &words[j]).unwrap() >= d {
                    g.add_edge(i, j);
                }
            }
        }
        g.max_clique_containing(0).0
    }

    /// Run the layer decomposition bottom-up and validate the witness.
    fn check(q: u32, n: usize, d: u32) -> usize {
        let mut prev = reference_alpha(q, 1, d);
        for k in 2..n {
            prev = layered_alpha(q, k, d, prev).0;
        }
        let (size, words) = layered_alpha(q, n, d, prev);
        assert_eq!(words.len(), size);
        for (i, u) in words.iter().enumerate() {
            for v in &words[..i] {
                assert!(lee_inf_distance(u, v).unwrap() >= d, "{u} vs {v}");
            }
        }
        size
    }

    #[test]
    fn matches_plain_branch_and_bound() {
        let cases = [
            (4, 2, 2),
            (5, 2, 2),
            (6, 2, 2),
            (6, 2, 3),
            (7, 2, 2),
            (7, 2, 3),
            (4, 3, 2),
            (5, 3, 2),
            (6, 3, 3),
        ];
        for (q, n, d) in cases {
            assert_eq!(check(q, n, d), reference_alpha(q, n, d), "q={q} n={n} d={d}");
        }
    }

    #[test]
    fn known_independence_numbers() {
        assert_eq!(check(5, 2, 2), 5);
        assert_eq!(check(5, 3, 2), 10);
        assert_eq!(check(7, 2, 2), 10);
        assert_eq!(check(7, 3, 3), 8);
    }

    #[test]
    fn seven_cubed_distance_two_is_thirty_three() {
        assert_eq!(check(7, 3, 2), 33);
    }
}
