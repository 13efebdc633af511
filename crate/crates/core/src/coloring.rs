//! {+1, -1} edge colorings of thin posets.
//!
//! A coloring is balanced when every diamond carries an odd number of -1
//! edges, central when every diamond carries an even number. Colorings form
//! an elementary abelian 2-group under pointwise product; central colorings
//! are the kernel of the diamond-parity map and act freely transitively on
//! the balanced ones. Existence questions are GF(2) linear systems: one
//! equation per diamond, one variable per cover, encoding +1 as 0 and -1
//! as 1.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::diamonds::{enumerate_diamonds, is_diamond_transitive, Diamond, DiamondError};
use crate::gf2::Gf2Mat;
use crate::poset::Poset;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ColoringError {
    WrongLength {
        expected: usize,
        got: usize,
    },
    BadSign(i8),
    NoBottom,
    NotCentral,
    NotDiamondTransitive,
    NotEmbedding(&'static str),
    /// Neither sign keeps the named element coherent in the greedy sweep;
    /// unreachable once the transitivity and centrality checks pass.
    Incoherent(String),
    Diamond(DiamondError),
}

impl fmt::Display for ColoringError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ColoringError::WrongLength { expected, got } => {
                write!(f, "coloring has {got} values, poset needs {expected}")
            }
            ColoringError::BadSign(v) => write!(f, "sign must be +1 or -1, got {v}"),
            ColoringError::NoBottom => write!(f, "poset has no unique minimum"),
            ColoringError::NotCentral => write!(f, "coloring is not central"),
            ColoringError::NotDiamondTransitive => {
                write!(f, "poset is not diamond transitive")
            }
            ColoringError::NotEmbedding(why) => {
                write!(f, "not a cover-preserving order embedding: {why}")
            }
            ColoringError::Incoherent(id) => {
                write!(f, "greedy coloring became incoherent at {id:?}")
            }
            ColoringError::Diamond(e) => write!(f, "{e}"),
        }
    }
}

impl From<DiamondError> for ColoringError {
    fn from(e: DiamondError) -> Self {
        ColoringError::Diamond(e)
    }
}

fn check_signs(values: &[i8]) -> Result<(), ColoringError> {
    match values.iter().find(|&&v| v != 1 && v != -1) {
        Some(&v) => Err(ColoringError::BadSign(v)),
        None => Ok(()),
    }
}

/// A total {+1,-1} function on the covers of a poset, stored in cover-index
/// order (see `Poset::covers`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeColoring {
    values: Vec<i8>,
}

impl EdgeColoring {
    pub fn all_plus(p: &Poset) -> Self {
        EdgeColoring {
            values: vec![1; p.covers().len()],
        }
    }

    pub fn from_signs(p: &Poset, values: Vec<i8>) -> Result<Self, ColoringError> {
        if values.len() != p.covers().len() {
            return Err(ColoringError::WrongLength {
                expected: p.covers().len(),
                got: values.len(),
            });
        }
        check_signs(&values)?;
        Ok(EdgeColoring { values })
    }

    pub fn sign(&self, cover: usize) -> i8 {
        self.values[cover]
    }

    pub fn signs(&self) -> &[i8] {
        &self.values
    }

    /// Pointwise product; the group operation on colorings.
    pub fn product(&self, other: &EdgeColoring) -> Result<EdgeColoring, ColoringError> {
        if self.values.len() != other.values.len() {
            return Err(ColoringError::WrongLength {
                expected: self.values.len(),
                got: other.values.len(),
            });
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a * b)
            .collect();
        Ok(EdgeColoring { values })
    }
}

/// A total {+1,-1} function on the elements of a poset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Potential {
    values: Vec<i8>,
}

impl Potential {
    pub fn one(p: &Poset) -> Self {
        Potential {
            values: vec![1; p.len()],
        }
    }

    pub fn from_signs(p: &Poset, values: Vec<i8>) -> Result<Self, ColoringError> {
        if values.len() != p.len() {
            return Err(ColoringError::WrongLength {
                expected: p.len(),
                got: values.len(),
            });
        }
        check_signs(&values)?;
        Ok(Potential { values })
    }

    pub fn value(&self, x: usize) -> i8 {
        self.values[x]
    }

    pub fn values(&self) -> &[i8] {
        &self.values
    }

    pub fn product(&self, other: &Potential) -> Result<Potential, ColoringError> {
        if self.values.len() != other.values.len() {
            return Err(ColoringError::WrongLength {
                expected: self.values.len(),
                got: other.values.len(),
            });
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a * b)
            .collect();
        Ok(Potential { values })
    }
}

fn diamond_sign(p: &Poset, c: &EdgeColoring, d: &Diamond) -> i8 {
    [
        (d.bottom, d.left),
        (d.bottom, d.right),
        (d.left, d.top),
        (d.right, d.top),
    ]
    .iter()
    .map(|&(x, y)| c.sign(p.cover_position(x, y).expect("diamond edge")))
    .product()
}

/// Balanced: every diamond has sign product -1 (odd number of -1 edges).
pub fn is_balanced(p: &Poset, c: &EdgeColoring) -> Result<bool, ColoringError> {
    let diamonds = enumerate_diamonds(p)?;
    Ok(diamonds.iter().all(|d| diamond_sign(p, c, d) == -1))
}

/// Central: every diamond has sign product +1 (even number of -1 edges).
pub fn is_central(p: &Poset, c: &EdgeColoring) -> Result<bool, ColoringError> {
    let diamonds = enumerate_diamonds(p)?;
    Ok(diamonds.iter().all(|d| diamond_sign(p, c, d) == 1))
}

/// The diamond-parity matrix: one GF(2) row per diamond, one column per
/// cover, with 1 on the four edges of the diamond.
fn parity_matrix(p: &Poset, diamonds: &[Diamond]) -> Gf2Mat {
    let mut m = Gf2Mat::zero(diamonds.len(), p.covers().len());
    for (r, d) in diamonds.iter().enumerate() {
        for (x, y) in [
            (d.bottom, d.left),
            (d.bottom, d.right),
            (d.left, d.top),
            (d.right, d.top),
        ] {
            m.set(r, p.cover_position(x, y).expect("diamond edge"), true);
        }
    }
    m
}

fn bits_to_coloring(bits: Vec<bool>) -> EdgeColoring {
    EdgeColoring {
        values: bits.into_iter().map(|b| if b { -1 } else { 1 }).collect(),
    }
}

/// Solves for a balanced coloring (right-hand side all ones over GF(2)).
/// Free variables are fixed to +1, so the answer is deterministic. `None`
/// means the poset is not balanced colorable.
pub fn find_balanced_coloring(p: &Poset) -> Result<Option<EdgeColoring>, ColoringError> {
    let diamonds = enumerate_diamonds(p)?;
    let m = parity_matrix(p, &diamonds);
    let rhs = vec![true; diamonds.len()];
    Ok(m.solve(&rhs).map(bits_to_coloring))
}

/// GF(2) kernel basis of the diamond-parity map: every central coloring is
/// a product of basis members.
pub fn central_coloring_basis(p: &Poset) -> Result<Vec<EdgeColoring>, ColoringError> {
    let diamonds = enumerate_diamonds(p)?;
    let m = parity_matrix(p, &diamonds);
    Ok(m.kernel_basis().into_iter().map(bits_to_coloring).collect())
}

/// The coboundary of a potential: `(df)(x .< y) = f(x) f(y)`.
pub fn coboundary(p: &Poset, f: &Potential) -> EdgeColoring {
    let values = p
        .covers()
        .iter()
        .map(|&(x, y)| f.value(x) * f.value(y))
        .collect();
    EdgeColoring { values }
}

/// The greedy potential for a central coloring `c` on a diamond-transitive
/// poset with a unique minimum: rank by rank, each element takes +1 when
/// that keeps every already-colored cover coherent (`c(z .< x) = f(z)f(x)`),
/// and -1 otherwise. The result satisfies `coboundary(f) = c` and
/// `f(bottom) = +1`, and does not depend on the within-rank order.
pub fn greedy_potential(p: &Poset, c: &EdgeColoring) -> Result<Potential, ColoringError> {
    let order: Vec<usize> = (0..p.len()).collect();
    greedy_potential_ordered(p, c, &order)
}

/// `greedy_potential` with an explicit processing order: elements are
/// handled by rank, and within a rank in the order they appear in `order`
/// (which must be a permutation of all element indices).
pub fn greedy_potential_ordered(
    p: &Poset,
    c: &EdgeColoring,
    order: &[usize],
) -> Result<Potential, ColoringError> {
    if c.values.len() != p.covers().len() {
        return Err(ColoringError::WrongLength {
            expected: p.covers().len(),
            got: c.values.len(),
        });
    }
    if order.len() != p.len() {
        return Err(ColoringError::WrongLength {
            expected: p.len(),
            got: order.len(),
        });
    }
    p.bottom().ok_or(ColoringError::NoBottom)?;
    if !is_central(p, c)? {
        return Err(ColoringError::NotCentral);
    }
    if !is_diamond_transitive(p)?.is_transitive() {
        return Err(ColoringError::NotDiamondTransitive);
    }

    let mut by_rank: Vec<usize> = order.to_vec();
    by_rank.sort_by_key(|&x| p.rank(x)); // stable: keeps within-rank order
    let mut values: Vec<i8> = vec![0; p.len()];
    for &x in &by_rank {
        if p.rank(x) == 0 {
            values[x] = 1;
            continue;
        }
        let coherent_with = |sign: i8| {
            p.lower_covers(x).iter().all(|&z| {
                let e = p.cover_position(z, x).expect("cover");
                c.sign(e) == values[z] * sign
            })
        };
        if coherent_with(1) {
            values[x] = 1;
        } else if coherent_with(-1) {
            values[x] = -1;
        } else {
            // Unreachable once the preconditions hold: diamond transitivity
            // makes every down-cover force the same sign.
            return Err(ColoringError::Incoherent(p.id(x).into()));
        }
    }
    Ok(Potential { values })
}

/// A cover-preserving order embedding between two posets, stored as the
/// element map plus the induced map on cover indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverEmbedding {
    map: Vec<usize>,
    cover_map: Vec<usize>,
}

impl CoverEmbedding {
    /// Validates that `map` (indexed by source element) is injective,
    /// reflects the order in both directions, and sends covers to covers.
    pub fn new(src: &Poset, tgt: &Poset, map: Vec<usize>) -> Result<Self, ColoringError> {
        if map.len() != src.len() {
            return Err(ColoringError::WrongLength {
                expected: src.len(),
                got: map.len(),
            });
        }
        if map.iter().any(|&t| t >= tgt.len()) {
            return Err(ColoringError::NotEmbedding("image out of range"));
        }
        let mut seen = vec![false; tgt.len()];
        for &t in &map {
            if seen[t] {
                return Err(ColoringError::NotEmbedding("not injective"));
            }
            seen[t] = true;
        }
        let src_reach = src.reachability();
        let tgt_reach = tgt.reachability();
        for x in 0..src.len() {
            for y in 0..src.len() {
                if src_reach.leq(x, y) != tgt_reach.leq(map[x], map[y]) {
                    return Err(ColoringError::NotEmbedding("order not reflected"));
                }
            }
        }
        let mut cover_map = Vec::with_capacity(src.covers().len());
        for &(x, y) in src.covers() {
            let e = tgt
                .cover_position(map[x], map[y])
                .ok_or(ColoringError::NotEmbedding("cover not preserved"))?;
            cover_map.push(e);
        }
        Ok(CoverEmbedding { map, cover_map })
    }

    pub fn identity(p: &Poset) -> Self {
        CoverEmbedding {
            map: (0..p.len()).collect(),
            cover_map: (0..p.covers().len()).collect(),
        }
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn cover_image(&self, e: usize) -> usize {
        self.cover_map[e]
    }
}

/// Pullback of a target coloring along the embedding:
/// `(pullback d)(x .< y) = d(f(x) .< f(y))`. Preserves balanced and central.
pub fn pullback(emb: &CoverEmbedding, d: &EdgeColoring) -> EdgeColoring {
    let values = emb.cover_map.iter().map(|&e| d.sign(e)).collect();
    EdgeColoring { values }
}

/// Pushforward of a source coloring onto the image covers: the partial
/// coloring `{(f(x) .< f(y), c(x .< y))}`, as (target cover index, sign)
/// pairs sorted by cover index.
pub fn push_forward(emb: &CoverEmbedding, c: &EdgeColoring) -> Vec<(usize, i8)> {
    let mut out: Vec<(usize, i8)> = emb
        .cover_map
        .iter()
        .zip(c.signs())
        .map(|(&e, &s)| (e, s))
        .collect();
    out.sort();
    out
}
