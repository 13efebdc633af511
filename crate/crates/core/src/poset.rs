//! Finite graded posets presented by cover relations.
//!
//! A `Poset` stores its elements (opaque string ids, held in sorted order so
//! that indices are canonical), the transitively reduced cover relation, and
//! a rank function recomputed at construction as longest-path length from the
//! minimal elements. Construction rejects cycles, redundant covers, and
//! covers that skip ranks, so every `Poset` value is graded.
//!
//! All operations are pure; a `Poset` is immutable after construction and
//! safe to share across threads.

use alloc::collections::BTreeMap;
use alloc::collections::VecDeque;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PosetError {
    Empty,
    DuplicateElement(String),
    UnknownElement(String),
    SelfCover(String),
    DuplicateCover(String, String),
    /// The cover digraph has a directed cycle.
    Cycle,
    /// A cover skips a rank under the longest-path rank function.
    NotGraded(String, String),
    /// A supplied cover is implied by a longer directed path.
    NotReduced(String, String),
    NotComparable(String, String),
}

impl fmt::Display for PosetError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PosetError::Empty => write!(f, "poset must have at least one element"),
            PosetError::DuplicateElement(x) => write!(f, "duplicate element {x:?}"),
            PosetError::UnknownElement(x) => write!(f, "cover references unknown element {x:?}"),
            PosetError::SelfCover(x) => write!(f, "self-cover on {x:?}"),
            PosetError::DuplicateCover(x, y) => write!(f, "duplicate cover ({x:?}, {y:?})"),
            PosetError::Cycle => write!(f, "cover relations contain a directed cycle"),
            PosetError::NotGraded(x, y) => {
                write!(f, "cover ({x:?}, {y:?}) skips a rank; poset is not graded")
            }
            PosetError::NotReduced(x, y) => {
                write!(f, "cover ({x:?}, {y:?}) is transitively implied")
            }
            PosetError::NotComparable(x, y) => write!(f, "{x:?} and {y:?} are not comparable"),
        }
    }
}

/// A saturated chain, as a rank-increasing sequence of element indices.
pub type Chain = Vec<usize>;

/// A closed interval `[bottom, top]` with its member set (sorted indices).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub bottom: usize,
    pub top: usize,
    pub members: Vec<usize>,
}

impl Interval {
    /// `rk(top) - rk(bottom)`.
    pub fn length(&self, p: &Poset) -> usize {
        p.rank(self.top) - p.rank(self.bottom)
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Poset {
    ids: Vec<String>,
    covers: Vec<(usize, usize)>,
    up: Vec<Vec<usize>>,
    down: Vec<Vec<usize>>,
    rank: Vec<usize>,
}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Poset({} elements, {} covers)",
            self.ids.len(),
            self.covers.len()
        )
    }
}

impl Poset {
    /// Builds a graded poset from element ids and cover pairs.
    ///
    /// Ranks are recomputed as longest-path lengths from the minimal
    /// elements; the input is rejected if any cover then skips a rank
    /// (`NotGraded`) or is implied by a longer path (`NotReduced`).
    pub fn from_cover_relations<S: AsRef<str>>(
        elements: &[S],
        covers: &[(S, S)],
    ) -> Result<Poset, PosetError> {
        if elements.is_empty() {
            return Err(PosetError::Empty);
        }
        let mut ids: Vec<String> = elements.iter().map(|s| s.as_ref().to_string()).collect();
        ids.sort();
        for w in ids.windows(2) {
            if w[0] == w[1] {
                return Err(PosetError::DuplicateElement(w[0].clone()));
            }
        }
        let index = |id: &str| -> Result<usize, PosetError> {
            ids.binary_search_by(|probe| probe.as_str().cmp(id))
                .map_err(|_| PosetError::UnknownElement(id.to_string()))
        };
        let mut pairs: Vec<(usize, usize)> = Vec::with_capacity(covers.len());
        for (x, y) in covers {
            let (xi, yi) = (index(x.as_ref())?, index(y.as_ref())?);
            if xi == yi {
                return Err(PosetError::SelfCover(ids[xi].clone()));
            }
            pairs.push((xi, yi));
        }
        pairs.sort();
        for w in pairs.windows(2) {
            if w[0] == w[1] {
                return Err(PosetError::DuplicateCover(
                    ids[w[0].0].clone(),
                    ids[w[0].1].clone(),
                ));
            }
        }

        let n = ids.len();
        let mut up = vec![Vec::new(); n];
        let mut down = vec![Vec::new(); n];
        for &(x, y) in &pairs {
            up[x].push(y);
            down[y].push(x);
        }

        // Kahn's algorithm: detects cycles and yields a topological order.
        let mut indeg: Vec<usize> = down.iter().map(Vec::len).collect();
        let mut queue: VecDeque<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut topo = Vec::with_capacity(n);
        while let Some(v) = queue.pop_front() {
            topo.push(v);
            for &w in &up[v] {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    queue.push_back(w);
                }
            }
        }
        if topo.len() != n {
            return Err(PosetError::Cycle);
        }

        let mut rank = vec![0usize; n];
        for &v in &topo {
            for &w in &up[v] {
                rank[w] = rank[w].max(rank[v] + 1);
            }
        }

        for &(x, y) in &pairs {
            if rank[y] != rank[x] + 1 {
                // Distinguish a redundant cover from a genuine grading gap:
                // redundant means some longer directed path x -> y exists.
                let mut stack: Vec<usize> = up[x].iter().copied().filter(|&z| z != y).collect();
                let mut seen = vec![false; n];
                let mut implied = false;
                while let Some(z) = stack.pop() {
                    if z == y {
                        implied = true;
                        break;
                    }
                    if seen[z] || rank[z] >= rank[y] {
                        continue;
                    }
                    seen[z] = true;
                    stack.extend(up[z].iter().copied());
                }
                return Err(if implied {
                    PosetError::NotReduced(ids[x].clone(), ids[y].clone())
                } else {
                    PosetError::NotGraded(ids[x].clone(), ids[y].clone())
                });
            }
        }

        Ok(Poset {
            ids,
            covers: pairs,
            up,
            down,
            rank,
        })
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        false // construction rejects the empty poset
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn id(&self, x: usize) -> &str {
        &self.ids[x]
    }

    pub fn index(&self, id: &str) -> Option<usize> {
        self.ids
            .binary_search_by(|probe| probe.as_str().cmp(id))
            .ok()
    }

    pub fn rank(&self, x: usize) -> usize {
        self.rank[x]
    }

    pub fn max_rank(&self) -> usize {
        self.rank.iter().copied().max().unwrap_or(0)
    }

    /// Cover pairs, sorted by (lower, upper) index; index order coincides
    /// with lexicographic id order.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    /// Position of the cover `(x, y)` in `covers()`, if present.
    pub fn cover_position(&self, x: usize, y: usize) -> Option<usize> {
        self.covers.binary_search(&(x, y)).ok()
    }

    pub fn upper_covers(&self, x: usize) -> &[usize] {
        &self.up[x]
    }

    pub fn lower_covers(&self, x: usize) -> &[usize] {
        &self.down[x]
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&x| self.down[x].is_empty())
            .collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.up[x].is_empty()).collect()
    }

    /// The unique minimal element, if there is one.
    pub fn bottom(&self) -> Option<usize> {
        let mins = self.minimal_elements();
        (mins.len() == 1).then(|| mins[0])
    }

    /// The unique maximal element, if there is one.
    pub fn top(&self) -> Option<usize> {
        let maxes = self.maximal_elements();
        (maxes.len() == 1).then(|| maxes[0])
    }

    /// `x <= y` in the partial order, by upward search.
    pub fn leq(&self, x: usize, y: usize) -> bool {
        if x == y {
            return true;
        }
        if self.rank[x] >= self.rank[y] {
            return false;
        }
        let mut seen = vec![false; self.len()];
        let mut stack = vec![x];
        while let Some(v) = stack.pop() {
            if v == y {
                return true;
            }
            for &w in &self.up[v] {
                if !seen[w] && self.rank[w] <= self.rank[y] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        false
    }

    /// Sorted up-set `{z : x <= z}`.
    pub fn up_set(&self, x: usize) -> Vec<usize> {
        self.closed_reach(x, true)
    }

    /// Sorted down-set `{z : z <= y}`.
    pub fn down_set(&self, y: usize) -> Vec<usize> {
        self.closed_reach(y, false)
    }

    fn closed_reach(&self, start: usize, upward: bool) -> Vec<usize> {
        let adj = if upward { &self.up } else { &self.down };
        let mut seen = vec![false; self.len()];
        seen[start] = true;
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        (0..self.len()).filter(|&v| seen[v]).collect()
    }

    /// Upward closure of a set of generators.
    pub fn upper_ideal(&self, generators: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.len()];
        let mut stack: Vec<usize> = generators.to_vec();
        for &g in generators {
            seen[g] = true;
        }
        while let Some(v) = stack.pop() {
            for &w in &self.up[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        (0..self.len()).filter(|&v| seen[v]).collect()
    }

    /// The closed interval `[x, y]`, computed fresh as up-set of `x`
    /// intersected with down-set of `y`.
    pub fn interval(&self, x: usize, y: usize) -> Result<Interval, PosetError> {
        if !self.leq(x, y) {
            return Err(PosetError::NotComparable(
                self.ids[x].clone(),
                self.ids[y].clone(),
            ));
        }
        let upper = self.up_set(x);
        let mut in_down = vec![false; self.len()];
        for z in self.down_set(y) {
            in_down[z] = true;
        }
        let members: Vec<usize> = upper.into_iter().filter(|&z| in_down[z]).collect();
        Ok(Interval {
            bottom: x,
            top: y,
            members,
        })
    }

    /// All saturated chains from `x` to `y`, in lexicographic order of their
    /// index sequences.
    pub fn maximal_chains(&self, x: usize, y: usize) -> Result<Vec<Chain>, PosetError> {
        let interval = self.interval(x, y)?;
        let mut in_interval = vec![false; self.len()];
        for &z in &interval.members {
            in_interval[z] = true;
        }
        let mut chains = Vec::new();
        let mut current = vec![x];
        self.chain_dfs(y, &in_interval, &mut current, &mut chains);
        Ok(chains)
    }

    fn chain_dfs(
        &self,
        target: usize,
        in_interval: &[bool],
        current: &mut Chain,
        out: &mut Vec<Chain>,
    ) {
        let last = *current.last().unwrap();
        if last == target {
            out.push(current.clone());
            return;
        }
        for &w in &self.up[last] {
            if in_interval[w] {
                current.push(w);
                self.chain_dfs(target, in_interval, current, out);
                current.pop();
            }
        }
    }

    /// Checks that `chain` is saturated: consecutive entries are covers.
    pub fn is_saturated_chain(&self, chain: &[usize]) -> bool {
        !chain.is_empty()
            && chain
                .windows(2)
                .all(|w| self.cover_position(w[0], w[1]).is_some())
    }

    /// Thinness: every closed interval of length 2 must have exactly 4
    /// elements. Returns the first violating `(x, y)` pair, or None.
    ///
    /// In a graded poset `[x, y]` of length 2 is `{x, y}` plus the middle
    /// elements `z` with `x < z < y`, and those are exactly the common
    /// neighbors `x .< z .< y`, so only middle counts need checking.
    pub fn thinness_violation(&self) -> Option<(usize, usize)> {
        let mut witness: Option<(usize, usize)> = None;
        for x in 0..self.len() {
            let mut middle_count: BTreeMap<usize, usize> = BTreeMap::new();
            for &z in &self.up[x] {
                for &y in &self.up[z] {
                    *middle_count.entry(y).or_insert(0) += 1;
                }
            }
            for (y, count) in middle_count {
                if count != 2 && witness.map_or(true, |w| (x, y) < w) {
                    witness = Some((x, y));
                }
            }
        }
        witness
    }

    pub fn is_thin(&self) -> bool {
        self.thinness_violation().is_none()
    }

    /// Möbius function of the interval `[x, y]`.
    pub fn mobius(&self, x: usize, y: usize) -> Result<i64, PosetError> {
        let interval = self.interval(x, y)?;
        Ok(self.mobius_on_members(x, &interval.members)[&y])
    }

    /// Möbius values `mu(x, z)` for all z in `members` (which must be the
    /// members of an interval starting at x, or any down-closed-in-interval
    /// superset of them).
    fn mobius_on_members(&self, x: usize, members: &[usize]) -> BTreeMap<usize, i64> {
        let mut by_rank: Vec<usize> = members.to_vec();
        by_rank.sort_by_key(|&z| (self.rank[z], z));
        let mut in_members = vec![false; self.len()];
        for &z in members {
            in_members[z] = true;
        }
        let mut mu: BTreeMap<usize, i64> = BTreeMap::new();
        for &z in &by_rank {
            if z == x {
                mu.insert(z, 1);
                continue;
            }
            // Down-set of z within the interval, found by downward search.
            let mut seen = vec![false; self.len()];
            let mut stack = vec![z];
            seen[z] = true;
            let mut sum = 0i64;
            while let Some(v) = stack.pop() {
                if v != z {
                    sum += mu[&v];
                }
                for &w in &self.down[v] {
                    if in_members[w] && !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            mu.insert(z, -sum);
        }
        mu
    }

    /// Eulerian test: every nontrivial interval has equally many elements of
    /// even and odd rank. The equivalent Möbius criterion
    /// `mu(x,y) = (-1)^{rk(y)-rk(x)}` is computed alongside; the two global
    /// verdicts must agree (they are equivalent poset-wide, not on each
    /// interval separately). Returns the first parity-violating interval.
    pub fn eulerian_violation(&self) -> Option<(usize, usize)> {
        let reach = self.reachability();
        let mut parity_witness: Option<(usize, usize)> = None;
        let mut mobius_witness: Option<(usize, usize)> = None;
        for x in 0..self.len() {
            let mut mu: Vec<Option<i64>> = vec![None; self.len()];
            mu[x] = Some(1);
            let mut above: Vec<usize> = (0..self.len())
                .filter(|&z| z != x && reach.leq(x, z))
                .collect();
            above.sort_by_key(|&z| (self.rank[z], z));
            for &y in &above {
                let mut sum = 0i64;
                let mut even = 0usize;
                let mut odd = 0usize;
                for z in 0..self.len() {
                    if reach.leq(x, z) && reach.leq(z, y) {
                        if z != y {
                            sum += mu[z].expect("processed in rank order");
                        }
                        if (self.rank[z] - self.rank[x]) % 2 == 0 {
                            even += 1;
                        } else {
                            odd += 1;
                        }
                    }
                }
                mu[y] = Some(-sum);
                let gap = self.rank[y] - self.rank[x];
                if even != odd && parity_witness.map_or(true, |w| (x, y) < w) {
                    parity_witness = Some((x, y));
                }
                if -sum != if gap % 2 == 0 { 1 } else { -1 }
                    && mobius_witness.map_or(true, |w| (x, y) < w)
                {
                    mobius_witness = Some((x, y));
                }
            }
        }
        assert_eq!(
            parity_witness.is_some(),
            mobius_witness.is_some(),
            "parity-count and Mobius Eulerian verdicts disagree",
        );
        parity_witness
    }

    pub fn is_eulerian(&self) -> bool {
        self.eulerian_violation().is_none()
    }

    /// Precomputed reachability oracle (bit matrix of the order relation).
    pub fn reachability(&self) -> Reachability {
        let n = self.len();
        let words = n.div_ceil(64);
        let mut bits = vec![0u64; n * words];
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&v| core::cmp::Reverse(self.rank[v]));
        for &v in &order {
            bits[v * words + v / 64] |= 1 << (v % 64);
            // Rank-descending order is reverse-topological, so the rows of
            // all upper covers are already complete.
            for ui in 0..self.up[v].len() {
                let u = self.up[v][ui];
                for w in 0..words {
                    let val = bits[u * words + w];
                    bits[v * words + w] |= val;
                }
            }
        }
        Reachability { n, words, bits }
    }

    /// Rebuilds the induced subposet on `members` (covers of `self` with
    /// both endpoints in `members`). Ranks are recomputed, so this is only
    /// graded (and only succeeds) when the member set is rank-convex, e.g.
    /// an interval or an ideal whose minima share a rank.
    pub fn induced_subposet(&self, members: &[usize]) -> Result<Poset, PosetError> {
        let mut in_members = vec![false; self.len()];
        for &z in members {
            in_members[z] = true;
        }
        let ids: Vec<&str> = members.iter().map(|&z| self.id(z)).collect();
        let covers: Vec<(&str, &str)> = self
            .covers
            .iter()
            .filter(|&&(x, y)| in_members[x] && in_members[y])
            .map(|&(x, y)| (self.id(x), self.id(y)))
            .collect();
        Poset::from_cover_relations(&ids, &covers)
    }

    /// The poset with its unique minimum removed. Fails when there is no
    /// unique minimum or the result is empty or not graded.
    pub fn without_bottom(&self) -> Result<Poset, PosetError> {
        let bot = self.bottom().ok_or(PosetError::Empty)?;
        let members: Vec<usize> = (0..self.len()).filter(|&z| z != bot).collect();
        if members.is_empty() {
            return Err(PosetError::Empty);
        }
        self.induced_subposet(&members)
    }

    /// Emits `(elements, covers)` as id strings, both sorted; feeding them
    /// back to `from_cover_relations` reproduces the poset.
    pub fn to_cover_relations(&self) -> (Vec<String>, Vec<(String, String)>) {
        let covers = self
            .covers
            .iter()
            .map(|&(x, y)| (self.ids[x].clone(), self.ids[y].clone()))
            .collect();
        (self.ids.clone(), covers)
    }
}

/// Bit-matrix reachability oracle: `leq(x, y)` iff a cover path runs from
/// `x` up to `y` (reflexive).
pub struct Reachability {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl Reachability {
    pub fn leq(&self, x: usize, y: usize) -> bool {
        debug_assert!(x < self.n && y < self.n);
        self.bits[x * self.words + y / 64] >> (y % 64) & 1 == 1
    }
}
