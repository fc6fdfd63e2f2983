//! Exact maximum clique on small dense graphs.
//!
//! Branch and bound with a greedy-coloring bound (the MCQ algorithm of
//! Tomita and Seki): at every node the candidate set is greedily colored,
//! candidates are branched on in decreasing color order, and the node is
//! abandoned as soon as `size + color ≤ best`, since a clique inside the
//! candidates can never use more vertices than colors.  Color classes that
//! the bound will never branch on are additionally repaired by the
//! recoloring rule of Tomita's later MCS: an overflow vertex with a single
//! conflict in some low class trades places with that conflict when the
//! conflict fits elsewhere.
//!
//! Candidate sets are u64 bitsets kept in per-depth buffers so the inner
//! loop allocates nothing; vertices are relabeled into smallest-last
//! (degeneracy) order, which markedly improves the greedy colorings; and
//! the bound starts from a greedy clique grown from every vertex.
//!
//! When the graph is known to be vertex-transitive the caller can anchor
//! the search at a fixed vertex with [`BitGraph::max_clique_containing`],
//! which shrinks the root candidate set to one neighborhood.

/// Undirected graph with bitset adjacency rows.
pub struct BitGraph {
    n: usize,
    stride: usize,
    adj: Vec<u64>,
}

impl BitGraph {
    pub fn new(n: usize) -> BitGraph {
        let stride = n.div_ceil(64).max(1);
        BitGraph { n, stride, adj: vec![0; n * stride] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v && u < self.n && v < self.n);
        self.adj[u * self.stride + v / 64] |= 1 << (v % 64);
        self.adj[v * self.stride + u / 64] |= 1 << (u % 64);
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u * self.stride + v / 64] >> (v % 64) & 1 == 1
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    fn row(&self, v: usize) -> &[u64] {
        &self.adj[v * self.stride..(v + 1) * self.stride]
    }

    /// Maximum clique: returns (size, one witness).
    pub fn max_clique(&self) -> (usize, Vec<usize>) {
        self.search(None)
    }

    /// Maximum clique among the cliques that contain `anchor`.  Sound as a
    /// global optimum only when the caller knows some maximum clique passes
    /// through the anchor — e.g. any vertex of a vertex-transitive graph.
    /// The anchor is part of the count and the witness.
    pub fn max_clique_containing(&self, anchor: usize) -> (usize, Vec<usize>) {
        assert!(anchor < self.n);
        self.search(Some(anchor))
    }

    /// Smallest-last vertex order: repeatedly remove a minimum-degree
    /// vertex; the vertex removed last is listed first.  Cliques live in
    /// dense cores, so this order tends to give small greedy colorings.
    fn degeneracy_order(&self) -> Vec<usize> {
        let mut deg: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        let mut alive = vec![true; self.n];
        let mut order = Vec::with_capacity(self.n);
        for _ in 0..self.n {
            let v = (0..self.n).filter(|&v| alive[v]).min_by_key(|&v| deg[v]).unwrap();
            alive[v] = false;
            order.push(v);
            for u in 0..self.n {
                if alive[u] && self.has_edge(u, v) {
                    deg[u] -= 1;
                }
            }
        }
        order.reverse();
        order
    }

    fn search(&self, anchor: Option<usize>) -> (usize, Vec<usize>) {
        if self.n == 0 {
            return (0, Vec::new());
        }
        // relabel into degeneracy order
        let order = self.degeneracy_order();
        let mut pos = vec![0usize; self.n];
        for (idx, &v) in order.iter().enumerate() {
            pos[v] = idx;
        }
        let mut g2 = BitGraph::new(self.n);
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.has_edge(u, v) {
                    g2.add_edge(pos[u], pos[v]);
                }
            }
        }
        let mut s = Search {
            g: &g2,
            best: 0,
            witness: Vec::new(),
            cur: Vec::new(),
            bufs: vec![vec![0u64; g2.stride]; self.n + 1],
            order: vec![Vec::new(); self.n + 1],
            uncolored: vec![0u64; g2.stride],
            class: vec![0u64; g2.stride],
            classes: vec![vec![0u64; g2.stride]; self.n + 1],
            overflow: Vec::new(),
        };
        // greedy lower bound: one run per start vertex (or per anchor edge)
        let mut cand = vec![0u64; g2.stride];
        let starts: Vec<Vec<usize>> = match anchor {
            Some(a) => {
                let a = pos[a];
                let mut st = vec![vec![a]];
                for u in iter_bits(g2.row(a)) {
                    st.push(vec![a, u]);
                }
                st
            }
            None => (0..self.n).map(|v| vec![v]).collect(),
        };
        for start in starts {
            let mut clique = start.clone();
            for k in 0..g2.stride {
                cand[k] = !0u64;
            }
            clear_from(&mut cand, self.n);
            for &v in &start {
                clear_bit(&mut cand, v);
                for (c, r) in cand.iter_mut().zip(g2.row(v)) {
                    *c &= r;
                }
            }
            while let Some(u) = first_bit(&cand) {
                clique.push(u);
                for (c, r) in cand.iter_mut().zip(g2.row(u)) {
                    *c &= r;
                }
            }
            if clique.len() > s.best {
                s.best = clique.len();
                s.witness = clique;
            }
        }
        // exact search
        match anchor {
            Some(a) => {
                let a = pos[a];
                s.bufs[0].copy_from_slice(g2.row(a));
                s.cur.push(a);
                s.extend(0, 1);
            }
            None => {
                for k in 0..g2.stride {
                    s.bufs[0][k] = !0u64;
                }
                clear_from(&mut s.bufs[0], self.n);
                s.extend(0, 0);
            }
        }
        let witness: Vec<usize> = s.witness.iter().map(|&v| order[v]).collect();
        debug_assert!(self.is_clique(&witness));
        (s.best, witness)
    }

    pub fn is_clique(&self, vs: &[usize]) -> bool {
        vs.iter().enumerate().all(|(i, &u)| vs[i + 1..].iter().all(|&v| self.has_edge(u, v)))
    }
}

struct Search<'g> {
    g: &'g BitGraph,
    best: usize,
    witness: Vec<usize>,
    cur: Vec<usize>,
    /// candidate bitset per recursion depth, reused across the whole run
    bufs: Vec<Vec<u64>>,
    /// per-depth candidate list, sorted by color number (ascending)
    order: Vec<Vec<(u32, u32)>>,
    /// scratch for the greedy coloring
    uncolored: Vec<u64>,
    class: Vec<u64>,
    /// per-class bitmasks for the current node's coloring
    classes: Vec<Vec<u64>>,
    overflow: Vec<usize>,
}

impl Search<'_> {
    /// Extend the current clique (size `size`) within the candidate set
    /// `bufs[depth]`.
    fn extend(&mut self, depth: usize, size: usize) {
        if size > self.best {
            self.best = size;
            self.witness = self.cur.clone();
        }
        self.color(depth, self.best.saturating_sub(size));
        let mut j = self.order[depth].len();
        while j > 0 {
            j -= 1;
            let (v, color) = self.order[depth][j];
            let v = v as usize;
            // colors are ascending in the list, so every remaining candidate
            // is bounded by this one
            if size + color as usize <= self.best {
                return;
            }
            clear_bit(&mut self.bufs[depth], v);
            {
                let (head, tail) = self.bufs.split_at_mut(depth + 1);
                let row = self.g.row(v);
                for (k, dst) in tail[0].iter_mut().enumerate() {
                    *dst = head[depth][k] & row[k];
                }
            }
            self.cur.push(v);
            self.extend(depth + 1, size + 1);
            self.cur.pop();
        }
    }

    /// Greedy coloring of `bufs[depth]`: fills `order[depth]` with the
    /// candidates sorted by color number (ascending).  Colors up to
    /// `threshold` never get branched on, so overflow vertices are first
    /// re-slotted into a low class where possible: if an overflow vertex v
    /// has a single conflict w in some low class, and w itself fits into
    /// another low class, swap them.
    fn color(&mut self, depth: usize, threshold: usize) {
        self.uncolored.copy_from_slice(&self.bufs[depth]);
        let mut ncls = 0usize;
        while ncls < threshold && first_bit(&self.uncolored).is_some() {
            self.build_class(ncls);
            ncls += 1;
        }
        if ncls == threshold && threshold >= 2 {
            let mut overflow = std::mem::take(&mut self.overflow);
            overflow.clear();
            overflow.extend(iter_bits(&self.uncolored));
            'next: for &v in &overflow {
                let row_v = self.g.row(v);
                for c1 in 0..ncls {
                    if count_and(&self.classes[c1], row_v) != 1 {
                        continue;
                    }
                    let w = first_bit_and(&self.classes[c1], row_v).unwrap();
                    let row_w = self.g.row(w);
                    for c2 in 0..ncls {
                        if c2 != c1 && count_and(&self.classes[c2], row_w) == 0 {
                            clear_bit(&mut self.classes[c1], w);
                            set_bit(&mut self.classes[c1], v);
                            set_bit(&mut self.classes[c2], w);
                            clear_bit(&mut self.uncolored, v);
                            continue 'next;
                        }
                    }
                }
            }
            self.overflow = overflow;
        }
        while first_bit(&self.uncolored).is_some() {
            self.build_class(ncls);
            ncls += 1;
        }
        let mut list = std::mem::take(&mut self.order[depth]);
        list.clear();
        for c in 0..ncls {
            for v in iter_bits(&self.classes[c]) {
                list.push((v as u32, (c + 1) as u32));
            }
        }
        self.order[depth] = list;
    }

    /// Carve the next greedy color class out of `uncolored` into
    /// `classes[idx]`.
    fn build_class(&mut self, idx: usize) {
        self.class.copy_from_slice(&self.uncolored);
        for w in self.classes[idx].iter_mut() {
            *w = 0;
        }
        while let Some(v) = first_bit(&self.class) {
            clear_bit(&mut self.class, v);
            clear_bit(&mut self.uncolored, v);
            set_bit(&mut self.classes[idx], v);
            for (c, a) in self.class.iter_mut().zip(self.g.row(v)) {
                *c &= !a;
            }
        }
    }
}

fn clear_bit(words: &mut [u64], v: usize) {
    words[v / 64] &= !(1u64 << (v % 64));
}

fn set_bit(words: &mut [u64], v: usize) {
    words[v / 64] |= 1u64 << (v % 64);
}

/// Clear all bits at positions `lo` and above.
fn clear_from(words: &mut [u64], lo: usize) {
    let w = lo / 64;
    if w < words.len() {
        if lo % 64 == 0 {
            words[w] = 0;
        } else {
            words[w] &= !(!0u64 << (lo % 64));
        }
        for word in words.iter_mut().skip(w + 1) {
            *word = 0;
        }
    }
}

fn count_and(a: &[u64], b: &[u64]) -> usize {
    a.iter().zip(b).map(|(x, y)| (x & y).count_ones() as usize).sum()
}

fn first_bit(words: &[u64]) -> Option<usize> {
    for (i, &w) in words.iter().enumerate() {
        if w != 0 {
            return Some(i * 64 + w.trailing_zeros() as usize);
        }
    }
    None
}

fn first_bit_and(a: &[u64], b: &[u64]) -> Option<usize> {
    for (i, (&x, &y)) in a.iter().zip(b).enumerate() {
        if x & y != 0 {
            return Some(i * 64 + (x & y).trailing_zeros() as usize);
        }
    }
    None
}

fn iter_bits(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(i, &w)| {
        std::iter::successors((w != 0).then_some(w), |&w| {
            let rest = w & (w - 1);
            (rest != 0).then_some(rest)
        })
        .map(move |w| i * 64 + w.trailing_zeros() as usize)
    })
}
