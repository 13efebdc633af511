//! Builders for the standard poset families: Boolean lattices, Bruhat
//! orders on symmetric groups, face posets of simplicial complexes and
//! polygons, top/bottom adjunction, and pinch products.

use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::coloring::EdgeColoring;
use crate::poset::{Poset, PosetError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConstructError {
    /// Parameter exceeds the practical bound for the family.
    TooLarge {
        what: &'static str,
        max: usize,
        got: usize,
    },
    /// A polygon needs at least 3 sides.
    PolygonTooSmall(usize),
    /// Simplicial input must list at least one facet.
    NoFacets,
    /// Vertex labels must be below 36 to fit the digit-string encoding.
    BadVertex(u32),
    /// The poset is missing a unique bottom or top where one is required.
    MissingBounds,
    /// Pinch factors must have equal rank.
    RankMismatch {
        left: usize,
        right: usize,
    },
    /// Pinch factors must have rank at least 3.
    RankTooSmall(usize),
    /// Adjoining a top/bottom requires all maxima/minima at one rank.
    NotGraded,
    /// The reserved id ("TOP" or "BOT") is already taken.
    ReservedId(String),
    /// Element ids are not sorted digit strings with single-digit covers.
    NotSubsetCoded(String, String),
    Poset(PosetError),
}

impl fmt::Display for ConstructError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConstructError::TooLarge { what, max, got } => {
                write!(f, "{what} limited to {max}, got {got}")
            }
            ConstructError::PolygonTooSmall(k) => write!(f, "polygon needs k >= 3, got {k}"),
            ConstructError::NoFacets => write!(f, "at least one facet is required"),
            ConstructError::BadVertex(v) => write!(f, "vertex label {v} exceeds 35"),
            ConstructError::MissingBounds => {
                write!(f, "operand must have a unique minimum and maximum")
            }
            ConstructError::RankMismatch { left, right } => {
                write!(f, "pinch factors have ranks {left} and {right}")
            }
            ConstructError::RankTooSmall(r) => {
                write!(f, "pinch factors must have rank >= 3, got {r}")
            }
            ConstructError::NotGraded => {
                write!(f, "extremal elements sit at different ranks")
            }
            ConstructError::ReservedId(id) => write!(f, "element id {id:?} is reserved"),
            ConstructError::NotSubsetCoded(x, y) => {
                write!(f, "cover ({x:?}, {y:?}) is not a single digit insertion")
            }
            ConstructError::Poset(e) => write!(f, "{e}"),
        }
    }
}

impl From<PosetError> for ConstructError {
    fn from(e: PosetError) -> Self {
        ConstructError::Poset(e)
    }
}

/// Encodes a set of ground elements `1..=n` (bit i-1 of the mask) as a
/// sorted digit string, base 36 so that labels run 1-9 then a-z.
pub fn subset_id(mask: u64) -> String {
    let mut s = String::new();
    for i in 0..64 {
        if mask >> i & 1 == 1 {
            s.push(char::from_digit(i as u32 + 1, 36).unwrap());
        }
    }
    s
}

fn vertex_set_id(vertices: &BTreeSet<u32>) -> Result<String, ConstructError> {
    let mut s = String::new();
    for &v in vertices {
        s.push(char::from_digit(v, 36).ok_or(ConstructError::BadVertex(v))?);
    }
    Ok(s)
}

/// The Boolean lattice of subsets of `{1, ..., n}`, ordered by inclusion.
/// The empty set has the empty string as id.
pub fn boolean_lattice(n: usize) -> Result<Poset, ConstructError> {
    if n > 20 {
        return Err(ConstructError::TooLarge {
            what: "boolean lattice",
            max: 20,
            got: n,
        });
    }
    let size = 1u64 << n;
    let mut elements = Vec::with_capacity(size as usize);
    let mut covers = Vec::new();
    for mask in 0..size {
        elements.push(subset_id(mask));
        for i in 0..n {
            if mask >> i & 1 == 0 {
                covers.push((subset_id(mask), subset_id(mask | 1 << i)));
            }
        }
    }
    Ok(Poset::from_cover_relations(&elements, &covers)?)
}

fn inversions(perm: &[u8]) -> usize {
    let mut inv = 0;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                inv += 1;
            }
        }
    }
    inv
}

fn perm_id(perm: &[u8]) -> String {
    perm.iter()
        .map(|&v| char::from_digit(v as u32, 36).unwrap())
        .collect()
}

/// The Bruhat order on the symmetric group S_n. Elements are permutations
/// in one-line notation; rank is the inversion count; u is covered by v
/// exactly when v = u * t for a transposition t with one more inversion.
pub fn bruhat_order(n: usize) -> Result<Poset, ConstructError> {
    if n == 0 || n > 6 {
        return Err(ConstructError::TooLarge {
            what: "bruhat order",
            max: 6,
            got: n,
        });
    }
    let mut perms: Vec<Vec<u8>> = Vec::new();
    let mut current: Vec<u8> = (1..=n as u8).collect();
    loop {
        perms.push(current.clone());
        // Next permutation in lexicographic order.
        let Some(i) = (0..n.saturating_sub(1))
            .rev()
            .find(|&i| current[i] < current[i + 1])
        else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| current[j] > current[i]).unwrap();
        current.swap(i, j);
        current[i + 1..].reverse();
    }
    let mut elements = Vec::with_capacity(perms.len());
    let mut covers = Vec::new();
    for u in &perms {
        elements.push(perm_id(u));
        let len_u = inversions(u);
        for i in 0..n {
            for j in i + 1..n {
                let mut v = u.clone();
                v.swap(i, j);
                if inversions(&v) == len_u + 1 {
                    covers.push((perm_id(u), perm_id(&v)));
                }
            }
        }
    }
    Ok(Poset::from_cover_relations(&elements, &covers)?)
}

/// Face poset of the simplicial complex generated by the given facets
/// (all subsets of each facet, ordered by inclusion). The empty face is
/// included exactly when `include_empty` is set.
pub fn face_poset_simplicial(
    facets: &[Vec<u32>],
    include_empty: bool,
) -> Result<Poset, ConstructError> {
    if facets.is_empty() {
        return Err(ConstructError::NoFacets);
    }
    let mut faces: BTreeSet<BTreeSet<u32>> = BTreeSet::new();
    for facet in facets {
        let facet: BTreeSet<u32> = facet.iter().copied().collect();
        // Downward closure: every subset of the facet is a face.
        let verts: Vec<u32> = facet.iter().copied().collect();
        for mask in 0u64..(1 << verts.len()) {
            let sub: BTreeSet<u32> = verts
                .iter()
                .enumerate()
                .filter(|&(i, _)| mask >> i & 1 == 1)
                .map(|(_, &v)| v)
                .collect();
            faces.insert(sub);
        }
    }
    if !include_empty {
        faces.remove(&BTreeSet::new());
    }
    let mut elements = Vec::new();
    let mut covers = Vec::new();
    for face in &faces {
        elements.push(vertex_set_id(face)?);
        for sup in &faces {
            if sup.len() == face.len() + 1 && face.is_subset(sup) {
                covers.push((vertex_set_id(face)?, vertex_set_id(sup)?));
            }
        }
    }
    Ok(Poset::from_cover_relations(&elements, &covers)?)
}

/// Face poset of a single k-gon as a polygonal complex: one empty face,
/// k vertices `v1..vk`, k edges `e1..ek` (edge `ei` joins `vi` and its
/// cyclic successor), and one 2-cell `f`.
pub fn polygon_face_poset(k: usize) -> Result<Poset, ConstructError> {
    if k < 3 {
        return Err(ConstructError::PolygonTooSmall(k));
    }
    let mut elements = vec![String::new(), "f".to_string()];
    let mut covers = Vec::new();
    for i in 1..=k {
        let v = alloc::format!("v{i}");
        let e = alloc::format!("e{i}");
        let succ = alloc::format!("v{}", i % k + 1);
        elements.push(v.clone());
        elements.push(e.clone());
        covers.push((String::new(), v.clone()));
        covers.push((v, e.clone()));
        covers.push((succ, e.clone()));
        covers.push((e, "f".to_string()));
    }
    Ok(Poset::from_cover_relations(&elements, &covers)?)
}

fn adjoin(p: &Poset, top: bool) -> Result<Poset, ConstructError> {
    let fresh = if top { "TOP" } else { "BOT" };
    if p.index(fresh).is_some() {
        return Err(ConstructError::ReservedId(fresh.to_string()));
    }
    let extremal = if top {
        p.maximal_elements()
    } else {
        p.minimal_elements()
    };
    let ranks: BTreeSet<usize> = extremal.iter().map(|&x| p.rank(x)).collect();
    if ranks.len() != 1 {
        return Err(ConstructError::NotGraded);
    }
    let (mut elements, mut covers) = p.to_cover_relations();
    elements.push(fresh.to_string());
    for x in extremal {
        if top {
            covers.push((p.id(x).to_string(), fresh.to_string()));
        } else {
            covers.push((fresh.to_string(), p.id(x).to_string()));
        }
    }
    Ok(Poset::from_cover_relations(&elements, &covers)?)
}

/// Adds a fresh maximum "TOP" covering every maximal element. Fails when
/// the maxima do not share a rank (the result would not be graded).
pub fn adjoin_top(p: &Poset) -> Result<Poset, ConstructError> {
    adjoin(p, true)
}

/// Adds a fresh minimum "BOT" covered by every minimal element.
pub fn adjoin_bottom(p: &Poset) -> Result<Poset, ConstructError> {
    adjoin(p, false)
}

/// The standard orientation signs on a subset-coded poset (Boolean
/// lattices and simplicial face posets as built here): the cover inserting
/// digit v into face F gets `(-1)^{#digits of F below v}`. These are the
/// simplicial boundary signs, so the constant functor under this coloring
/// is literally the (co)chain complex of the complex; the coloring is
/// balanced on every such poset.
pub fn orientation_coloring(p: &Poset) -> Result<EdgeColoring, ConstructError> {
    let mut signs = Vec::with_capacity(p.covers().len());
    for &(x, y) in p.covers() {
        let lo: Vec<char> = p.id(x).chars().collect();
        let hi: Vec<char> = p.id(y).chars().collect();
        let bad = || ConstructError::NotSubsetCoded(p.id(x).into(), p.id(y).into());
        if hi.len() != lo.len() + 1 {
            return Err(bad());
        }
        // hi must be lo with exactly one digit inserted (both sorted).
        let mut inserted = None;
        let mut i = 0;
        for &h in &hi {
            if i < lo.len() && lo[i] == h {
                i += 1;
            } else if inserted.replace(h).is_some() {
                return Err(bad());
            }
        }
        if i != lo.len() {
            return Err(bad());
        }
        let v = inserted.ok_or_else(bad)?;
        let below = lo.iter().filter(|&&c| c < v).count();
        signs.push(if below % 2 == 0 { 1 } else { -1 });
    }
    Ok(EdgeColoring::from_signs(p, signs).expect("signs are +-1"))
}

/// The pinch product of two bounded posets of equal rank n >= 3: both
/// interiors side by side, with fresh shared bounds "BOT" and "TOP".
/// Interior ids are prefixed "P:" and "Q:" so the two copies never collide.
pub fn pinch_product(p: &Poset, q: &Poset) -> Result<Poset, ConstructError> {
    let (p_bot, p_top) = p
        .bottom()
        .zip(p.top())
        .ok_or(ConstructError::MissingBounds)?;
    let (q_bot, q_top) = q
        .bottom()
        .zip(q.top())
        .ok_or(ConstructError::MissingBounds)?;
    let (rank_p, rank_q) = (p.rank(p_top), q.rank(q_top));
    if rank_p != rank_q {
        return Err(ConstructError::RankMismatch {
            left: rank_p,
            right: rank_q,
        });
    }
    if rank_p < 3 {
        return Err(ConstructError::RankTooSmall(rank_p));
    }
    let mut elements = vec!["BOT".to_string(), "TOP".to_string()];
    let mut covers: Vec<(String, String)> = Vec::new();
    let mut side = |poset: &Poset, bot: usize, top: usize, prefix: &str| {
        let name = |x: usize| alloc::format!("{prefix}{}", poset.id(x));
        for x in 0..poset.len() {
            if x != bot && x != top {
                elements.push(name(x));
            }
        }
        for &(x, y) in poset.covers() {
            let lo = if x == bot { "BOT".to_string() } else { name(x) };
            let hi = if y == top { "TOP".to_string() } else { name(y) };
            covers.push((lo, hi));
        }
    };
    side(p, p_bot, p_top, "P:");
    side(q, q_bot, q_top, "Q:");
    Ok(Poset::from_cover_relations(&elements, &covers)?)
}
