//! Diamonds of a thin poset and their action on saturated chains.
//!
//! A diamond is a closed length-2 interval `{bottom, left, right, top}`. A
//! diamond move reroutes a saturated chain across the other side of a
//! diamond it traverses; two chains are in the same orbit when a sequence of
//! moves connects them. The poset is diamond transitive when every interval
//! has a single orbit. The group generated by the moves is never
//! materialized; orbits are explored by breadth-first search.
//!
//! The diamond space is the 2-complex with the elements as 0-cells, covers
//! as 1-cells, and diamonds as 2-cells; its mod-2 homology gives a necessary
//! condition for transitivity (trivial fundamental group forces trivial H1)
//! and a solvability criterion for balanced colorings.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::gf2::Gf2Mat;
use crate::poset::{Chain, Poset};

/// Orbit search stops after this many chain-move steps in one interval.
pub const MAX_MOVE_STEPS: u64 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DiamondError {
    NotThin {
        bottom: String,
        top: String,
    },
    IntervalTooLarge {
        bottom: String,
        top: String,
    },
    /// The poset is not transitive but no orbit pair has the clean
    /// two-point intersection that certifies a pinch product.
    NoCleanWitness {
        bottom: String,
        top: String,
        chain_a: Chain,
        chain_b: Chain,
    },
}

impl fmt::Display for DiamondError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DiamondError::NotThin { bottom, top } => {
                write!(
                    f,
                    "poset is not thin: interval [{bottom}, {top}] is not a diamond"
                )
            }
            DiamondError::IntervalTooLarge { bottom, top } => {
                write!(
                    f,
                    "orbit search on [{bottom}, {top}] exceeded the step budget"
                )
            }
            DiamondError::NoCleanWitness { bottom, top, .. } => {
                write!(f, "no clean pinch witness in [{bottom}, {top}]")
            }
        }
    }
}

/// A length-2 interval; `left < right` as indices, so the tuple is canonical.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Diamond {
    pub bottom: usize,
    pub left: usize,
    pub right: usize,
    pub top: usize,
}

fn not_thin(p: &Poset) -> Result<(), DiamondError> {
    match p.thinness_violation() {
        None => Ok(()),
        Some((x, y)) => Err(DiamondError::NotThin {
            bottom: p.id(x).into(),
            top: p.id(y).into(),
        }),
    }
}

/// One `Diamond` per length-2 interval, sorted by `(bottom, top)`.
pub fn enumerate_diamonds(p: &Poset) -> Result<Vec<Diamond>, DiamondError> {
    not_thin(p)?;
    let mut out = Vec::new();
    for bottom in 0..p.len() {
        let mut mids: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for &z in p.upper_covers(bottom) {
            for &top in p.upper_covers(z) {
                mids.entry(top).or_default().push(z);
            }
        }
        for (top, mut pair) in mids {
            pair.sort();
            debug_assert_eq!(pair.len(), 2);
            out.push(Diamond {
                bottom,
                left: pair[0],
                right: pair[1],
                top,
            });
        }
    }
    out.sort();
    Ok(out)
}

/// Applies the diamond move: if the chain runs `bottom .< left .< top`,
/// reroute through `right` (and vice versa); otherwise the chain is fixed.
pub fn diamond_move(d: &Diamond, chain: &[usize]) -> Chain {
    let mut out = chain.to_vec();
    for i in 0..chain.len().saturating_sub(2) {
        if chain[i] == d.bottom && chain[i + 2] == d.top {
            if chain[i + 1] == d.left {
                out[i + 1] = d.right;
            } else if chain[i + 1] == d.right {
                out[i + 1] = d.left;
            }
            break;
        }
    }
    out
}

/// Partitions `chains` into diamond-move orbits (lists of indices into
/// `chains`, each sorted; seeds in lexicographic chain order).
fn orbit_partition(
    chains: &[Chain],
    diamonds: &[Diamond],
    budget: &mut u64,
) -> Option<Vec<Vec<usize>>> {
    let index: BTreeMap<&[usize], usize> = chains
        .iter()
        .enumerate()
        .map(|(i, c)| (c.as_slice(), i))
        .collect();
    let mut seen = vec![false; chains.len()];
    let mut orbits = Vec::new();
    for seed in 0..chains.len() {
        if seen[seed] {
            continue;
        }
        seen[seed] = true;
        let mut orbit = vec![seed];
        let mut queue = VecDeque::from([seed]);
        while let Some(cur) = queue.pop_front() {
            for d in diamonds {
                if *budget == 0 {
                    return None;
                }
                *budget -= 1;
                let moved = diamond_move(d, &chains[cur]);
                let &j = index
                    .get(moved.as_slice())
                    .expect("move left the chain set");
                if !seen[j] {
                    seen[j] = true;
                    orbit.push(j);
                    queue.push_back(j);
                }
            }
        }
        orbit.sort();
        orbits.push(orbit);
    }
    Some(orbits)
}

/// Result of the transitivity decision: either every interval is a single
/// orbit, or a witness pair of chains in distinct orbits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Transitivity {
    Transitive,
    NotTransitive(OrbitWitness),
}

impl Transitivity {
    pub fn is_transitive(&self) -> bool {
        matches!(self, Transitivity::Transitive)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitWitness {
    pub bottom: usize,
    pub top: usize,
    pub chain_a: Chain,
    pub chain_b: Chain,
}

/// Decides diamond transitivity by orbit BFS on every interval of length at
/// least 3 (shorter intervals are transitive automatically in a thin poset).
/// Intervals are scanned in index order, so the reported witness is the
/// lexicographically smallest one.
pub fn is_diamond_transitive(p: &Poset) -> Result<Transitivity, DiamondError> {
    let diamonds = enumerate_diamonds(p)?;
    let reach = p.reachability();
    for x in 0..p.len() {
        for y in 0..p.len() {
            if p.rank(y) < p.rank(x) + 3 || !reach.leq(x, y) {
                continue;
            }
            let local = local_diamonds(&diamonds, &reach, x, y);
            let chains = enumerate_interval_chains(p, &reach, x, y, local.len())?;
            if chains.len() <= 1 {
                continue;
            }
            let mut budget = MAX_MOVE_STEPS;
            let orbits = orbit_partition(&chains, &local, &mut budget).ok_or(
                DiamondError::IntervalTooLarge {
                    bottom: p.id(x).into(),
                    top: p.id(y).into(),
                },
            )?;
            if orbits.len() > 1 {
                return Ok(Transitivity::NotTransitive(OrbitWitness {
                    bottom: x,
                    top: y,
                    chain_a: chains[orbits[0][0]].clone(),
                    chain_b: chains[orbits[1][0]].clone(),
                }));
            }
        }
    }
    Ok(Transitivity::Transitive)
}

/// Counts the chains of `[x, y]` by dynamic programming and refuses to
/// materialize them when the orbit search would blow the move budget
/// anyway; the count is cheap, so huge intervals fail fast instead of
/// exhausting memory first.
fn enumerate_interval_chains(
    p: &Poset,
    reach: &crate::poset::Reachability,
    x: usize,
    y: usize,
    n_local_diamonds: usize,
) -> Result<Vec<Chain>, DiamondError> {
    let mut count: BTreeMap<usize, u64> = BTreeMap::new();
    count.insert(x, 1);
    let mut members: Vec<usize> = (0..p.len())
        .filter(|&z| reach.leq(x, z) && reach.leq(z, y))
        .collect();
    members.sort_by_key(|&z| (p.rank(z), z));
    for &z in members.iter().skip(1) {
        let total: u64 = p
            .lower_covers(z)
            .iter()
            .filter_map(|w| count.get(w))
            .fold(0u64, |acc, &c| acc.saturating_add(c));
        count.insert(z, total);
    }
    let n_chains = count[&y];
    if n_chains.saturating_mul(n_local_diamonds.max(1) as u64) > MAX_MOVE_STEPS {
        return Err(DiamondError::IntervalTooLarge {
            bottom: p.id(x).into(),
            top: p.id(y).into(),
        });
    }
    Ok(p.maximal_chains(x, y).expect("comparable"))
}

/// Diamonds lying inside `[x, y]`; a move only applies to a chain in the
/// interval when its bottom and top do, and then the middles do as well.
fn local_diamonds(
    diamonds: &[Diamond],
    reach: &crate::poset::Reachability,
    x: usize,
    y: usize,
) -> Vec<Diamond> {
    diamonds
        .iter()
        .filter(|d| reach.leq(x, d.bottom) && reach.leq(d.top, y))
        .copied()
        .collect()
}

/// Necessary condition for transitivity from the shape of length-3
/// intervals: the cover graph between the two middle ranks must be one
/// cycle through all middle elements. Two-regularity is automatic from
/// thinness, so the content is connectedness.
pub fn interval_shape_check(p: &Poset) -> Result<bool, DiamondError> {
    not_thin(p)?;
    let reach = p.reachability();
    for x in 0..p.len() {
        for y in 0..p.len() {
            if p.rank(y) != p.rank(x) + 3 || !reach.leq(x, y) {
                continue;
            }
            let members = p.interval(x, y).expect("comparable").members;
            let mids: Vec<usize> = members
                .iter()
                .copied()
                .filter(|&z| z != x && z != y)
                .collect();
            if mids.is_empty() {
                continue;
            }
            let low_rank = p.rank(x) + 1;
            let lows = mids.iter().filter(|&&z| p.rank(z) == low_rank).count();
            if 2 * lows != mids.len() {
                return Ok(false);
            }
            // BFS over middle covers; a single cycle reaches everything.
            let in_mid: BTreeSet<usize> = mids.iter().copied().collect();
            let mut seen = BTreeSet::from([mids[0]]);
            let mut queue = VecDeque::from([mids[0]]);
            while let Some(v) = queue.pop_front() {
                let step = p
                    .upper_covers(v)
                    .iter()
                    .chain(p.lower_covers(v))
                    .filter(|z| in_mid.contains(z));
                for &w in step {
                    if seen.insert(w) {
                        queue.push_back(w);
                    }
                }
            }
            if seen.len() != mids.len() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The diamond space: 0-cells the elements, 1-cells the covers, 2-cells the
/// diamonds, with mod-2 boundary maps.
pub struct DiamondSpace {
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
    pub diamonds: Vec<Diamond>,
    d1: Gf2Mat,
    d2: Gf2Mat,
}

impl DiamondSpace {
    /// Mod-2 Betti numbers (b0, b1, b2).
    pub fn betti(&self) -> (usize, usize, usize) {
        let r1 = self.d1.rank();
        let r2 = self.d2.rank();
        (
            self.vertices - r1,
            self.edges.len() - r1 - r2,
            self.diamonds.len() - r2,
        )
    }

    pub fn h1(&self) -> usize {
        self.betti().1
    }

    pub fn h2(&self) -> usize {
        self.betti().2
    }
}

pub fn diamond_space(p: &Poset) -> Result<DiamondSpace, DiamondError> {
    let diamonds = enumerate_diamonds(p)?;
    let edges = p.covers().to_vec();
    let mut d1 = Gf2Mat::zero(p.len(), edges.len());
    for (e, &(x, y)) in edges.iter().enumerate() {
        d1.set(x, e, true);
        d1.set(y, e, true);
    }
    let mut d2 = Gf2Mat::zero(edges.len(), diamonds.len());
    for (c, d) in diamonds.iter().enumerate() {
        for (x, y) in [
            (d.bottom, d.left),
            (d.bottom, d.right),
            (d.left, d.top),
            (d.right, d.top),
        ] {
            let e = p.cover_position(x, y).expect("diamond edge is a cover");
            d2.set(e, c, true);
        }
    }
    // d1 . d2 = 0 over GF(2): each diamond boundary hits every corner twice.
    for c in 0..diamonds.len() {
        let col: Vec<bool> = (0..diamonds.len()).map(|j| j == c).collect();
        let boundary = d2.apply(&col);
        assert!(
            d1.apply(&boundary).iter().all(|&b| !b),
            "diamond space boundary maps do not compose to zero",
        );
    }
    Ok(DiamondSpace {
        vertices: p.len(),
        edges,
        diamonds,
        d1,
        d2,
    })
}

/// Two diamond-complete subposets certifying a pinch product: the orbit
/// closures of two chains in distinct orbits, meeting only in the interval
/// endpoints. `None` when the poset is diamond transitive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PinchWitness {
    pub bottom: usize,
    pub top: usize,
    pub side_a: Vec<usize>,
    pub side_b: Vec<usize>,
}

pub fn pinch_witness(p: &Poset) -> Result<Option<PinchWitness>, DiamondError> {
    let diamonds = enumerate_diamonds(p)?;
    let reach = p.reachability();
    let mut raw: Option<(usize, usize, Chain, Chain)> = None;
    for x in 0..p.len() {
        for y in 0..p.len() {
            if p.rank(y) < p.rank(x) + 3 || !reach.leq(x, y) {
                continue;
            }
            let local = local_diamonds(&diamonds, &reach, x, y);
            let chains = enumerate_interval_chains(p, &reach, x, y, local.len())?;
            if chains.len() <= 1 {
                continue;
            }
            let mut budget = MAX_MOVE_STEPS;
            let orbits = orbit_partition(&chains, &local, &mut budget).ok_or(
                DiamondError::IntervalTooLarge {
                    bottom: p.id(x).into(),
                    top: p.id(y).into(),
                },
            )?;
            if orbits.len() < 2 {
                continue;
            }
            if raw.is_none() {
                raw = Some((
                    x,
                    y,
                    chains[orbits[0][0]].clone(),
                    chains[orbits[1][0]].clone(),
                ));
            }
            let closures: Vec<BTreeSet<usize>> = orbits
                .iter()
                .map(|orbit| {
                    orbit
                        .iter()
                        .flat_map(|&i| chains[i].iter().copied())
                        .collect()
                })
                .collect();
            for i in 0..closures.len() {
                for j in i + 1..closures.len() {
                    let meet: Vec<usize> =
                        closures[i].intersection(&closures[j]).copied().collect();
                    if meet == [x.min(y), x.max(y)] || meet == [x, y] {
                        return Ok(Some(PinchWitness {
                            bottom: x,
                            top: y,
                            side_a: closures[i].iter().copied().collect(),
                            side_b: closures[j].iter().copied().collect(),
                        }));
                    }
                }
            }
        }
    }
    match raw {
        None => Ok(None),
        Some((x, y, chain_a, chain_b)) => Err(DiamondError::NoCleanWitness {
            bottom: p.id(x).into(),
            top: p.id(y).into(),
            chain_a,
            chain_b,
        }),
    }
}
