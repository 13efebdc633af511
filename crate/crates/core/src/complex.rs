//! Free-module-valued functors on thin posets and their cochain complexes.
//!
//! A `FreeFunctor` labels each element with a graded free module (a list of
//! q-degrees; ungraded means all zero) and each cover with an integer
//! matrix. When the labeling commutes on every diamond it determines a
//! functor, and together with a balanced coloring it assembles into a
//! cochain complex: degree k is the direct sum over rank-k elements (blocks
//! in id order), and the differential is the signed sum of edge matrices.
//! The square of the differential vanishes precisely because every diamond
//! commutes and carries an odd number of -1 signs.
//!
//! Cohomology is computed from Smith normal forms, per q-degree block, with
//! Betti numbers and torsion invariant factors over the integers, and plain
//! ranks over the rationals or a prime field.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::coloring::{
    greedy_potential, is_balanced, is_central, ColoringError, CoverEmbedding, EdgeColoring,
};
use crate::diamonds::{enumerate_diamonds, is_diamond_transitive, Diamond};
use crate::laurent::LaurentPoly;
use crate::matrix::{rank_mod_p, rank_over_q, smith_invariant_factors, Mat, MatError};
use crate::poset::{Chain, Poset};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BaseRing {
    Integers,
    Rationals,
    PrimeField(u32),
}

impl BaseRing {
    pub fn validate(self) -> Result<(), ComplexError> {
        if let BaseRing::PrimeField(p) = self {
            // Bounded below 2^31 so products of two reduced residues fit
            // in the i64 elimination arithmetic.
            let prime = p >= 2 && p < 1 << 31 && (2..=p / 2).all(|d| p % d != 0);
            if !prime {
                return Err(ComplexError::BadModulus(p));
            }
        }
        Ok(())
    }
}

impl fmt::Display for BaseRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseRing::Integers => write!(f, "Z"),
            BaseRing::Rationals => write!(f, "Q"),
            BaseRing::PrimeField(p) => write!(f, "F{p}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ComplexError {
    ShapeMismatch(String),
    BadModulus(u32),
    NotThin,
    NotFunctorial(FunctorialityWitness),
    NotBalanced,
    NotUpperIdeal(String),
    NaturalityViolated {
        lower: String,
        upper: String,
    },
    ColoringIncompatible {
        lower: String,
        upper: String,
    },
    RankShiftInconsistent,
    /// Internal consistency failures; these indicate a bug, never expected
    /// on input that passed the precondition checks.
    DSquaredNonzero {
        degree: i64,
    },
    ChainMapViolated {
        degree: i64,
    },
    Coloring(ColoringError),
    Matrix(MatError),
}

impl fmt::Display for ComplexError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComplexError::ShapeMismatch(what) => write!(f, "shape mismatch: {what}"),
            ComplexError::BadModulus(p) => write!(f, "{p} is not prime"),
            ComplexError::NotThin => write!(f, "poset is not thin"),
            ComplexError::NotFunctorial(_) => {
                write!(f, "edge labeling does not commute; not a functor")
            }
            ComplexError::NotBalanced => write!(f, "coloring is not balanced"),
            ComplexError::NotUpperIdeal(id) => {
                write!(
                    f,
                    "set is not an upper order ideal (misses cover above {id:?})"
                )
            }
            ComplexError::NaturalityViolated { lower, upper } => {
                write!(f, "naturality square fails on cover ({lower:?}, {upper:?})")
            }
            ComplexError::ColoringIncompatible { lower, upper } => {
                write!(
                    f,
                    "coloring compatibility fails on cover ({lower:?}, {upper:?})"
                )
            }
            ComplexError::RankShiftInconsistent => {
                write!(f, "embedding shifts ranks by different amounts")
            }
            ComplexError::DSquaredNonzero { degree } => {
                write!(f, "differential does not square to zero at degree {degree}")
            }
            ComplexError::ChainMapViolated { degree } => {
                write!(f, "chain map identity fails at degree {degree}")
            }
            ComplexError::Coloring(e) => write!(f, "{e}"),
            ComplexError::Matrix(e) => write!(f, "{e}"),
        }
    }
}

impl From<ColoringError> for ComplexError {
    fn from(e: ColoringError) -> Self {
        ComplexError::Coloring(e)
    }
}

impl From<MatError> for ComplexError {
    fn from(e: MatError) -> Self {
        ComplexError::Matrix(e)
    }
}

/// Assignment of graded free modules to elements and integer matrices to
/// covers. The q-degree list of an element fixes its basis order; matrix
/// rows and columns follow those orders.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeFunctor {
    poset: Poset,
    dims: Vec<Vec<i64>>,
    maps: Vec<Mat>,
    ring: BaseRing,
}

impl FreeFunctor {
    pub fn new(
        poset: Poset,
        dims: Vec<Vec<i64>>,
        maps: Vec<Mat>,
        ring: BaseRing,
    ) -> Result<Self, ComplexError> {
        ring.validate()?;
        if dims.len() != poset.len() {
            return Err(ComplexError::ShapeMismatch(alloc::format!(
                "{} dimension lists for {} elements",
                dims.len(),
                poset.len()
            )));
        }
        if maps.len() != poset.covers().len() {
            return Err(ComplexError::ShapeMismatch(alloc::format!(
                "{} edge maps for {} covers",
                maps.len(),
                poset.covers().len()
            )));
        }
        for (e, &(x, y)) in poset.covers().iter().enumerate() {
            let m = &maps[e];
            if m.rows() != dims[y].len() || m.cols() != dims[x].len() {
                return Err(ComplexError::ShapeMismatch(alloc::format!(
                    "edge ({}, {}) carries a {}x{} matrix between modules of ranks {} and {}",
                    poset.id(x),
                    poset.id(y),
                    m.rows(),
                    m.cols(),
                    dims[x].len(),
                    dims[y].len()
                )));
            }
            for r in 0..m.rows() {
                for c in 0..m.cols() {
                    if m.get(r, c) != 0 && dims[y][r] != dims[x][c] {
                        return Err(ComplexError::ShapeMismatch(alloc::format!(
                            "edge ({}, {}) maps q-degree {} to q-degree {}",
                            poset.id(x),
                            poset.id(y),
                            dims[x][c],
                            dims[y][r]
                        )));
                    }
                }
            }
        }
        Ok(FreeFunctor {
            poset,
            dims,
            maps,
            ring,
        })
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn ring(&self) -> BaseRing {
        self.ring
    }

    pub fn with_ring(mut self, ring: BaseRing) -> Result<Self, ComplexError> {
        ring.validate()?;
        self.ring = ring;
        Ok(self)
    }

    /// q-degrees of the module at `x`; its length is the module rank.
    pub fn q_degrees(&self, x: usize) -> &[i64] {
        &self.dims[x]
    }

    pub fn rank_at(&self, x: usize) -> usize {
        self.dims[x].len()
    }

    pub fn edge_map(&self, cover: usize) -> &Mat {
        &self.maps[cover]
    }

    /// Graded rank as a Laurent polynomial in q.
    pub fn q_rank(&self, x: usize) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for &d in &self.dims[x] {
            out = out + LaurentPoly::monomial(1, d);
        }
        out
    }

    pub fn is_graded(&self) -> bool {
        self.dims.iter().any(|qs| qs.iter().any(|&q| q != 0))
    }

    /// Composite of edge maps along a saturated chain.
    pub fn composite(&self, chain: &[usize]) -> Result<Mat, ComplexError> {
        let mut acc = Mat::identity(self.rank_at(chain[0]));
        for w in chain.windows(2) {
            let e = self
                .poset
                .cover_position(w[0], w[1])
                .ok_or_else(|| ComplexError::ShapeMismatch("chain is not saturated".into()))?;
            acc = self.maps[e].mul(&acc)?;
        }
        Ok(acc)
    }
}

/// The constant functor: rank `dim` in q-degree 0 everywhere, identity
/// edge maps.
pub fn constant_functor(p: &Poset, dim: usize, ring: BaseRing) -> FreeFunctor {
    let dims = vec![vec![0i64; dim]; p.len()];
    let maps = vec![Mat::identity(dim); p.covers().len()];
    FreeFunctor::new(p.clone(), dims, maps, ring).expect("constant functor is well formed")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FunctorialityWitness {
    Diamond(Diamond),
    ChainPair {
        bottom: usize,
        top: usize,
        chain_a: Chain,
        chain_b: Chain,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Functoriality {
    Functorial,
    Violation(FunctorialityWitness),
}

impl Functoriality {
    pub fn is_functorial(&self) -> bool {
        matches!(self, Functoriality::Functorial)
    }
}

/// Checks that the labeling commutes. On a diamond-transitive poset only
/// the diamonds need checking; otherwise composites are compared along all
/// pairs of maximal chains of every interval.
pub fn check_functoriality(f: &FreeFunctor) -> Result<Functoriality, ComplexError> {
    let p = f.poset();
    if !p.is_thin() {
        return Err(ComplexError::NotThin);
    }
    let transitive = is_diamond_transitive(p)
        .map_err(|e| ComplexError::Coloring(ColoringError::Diamond(e)))?
        .is_transitive();
    if transitive {
        for d in enumerate_diamonds(p).map_err(|e| ComplexError::Coloring(e.into()))? {
            let via_left = f.composite(&[d.bottom, d.left, d.top])?;
            let via_right = f.composite(&[d.bottom, d.right, d.top])?;
            if via_left != via_right {
                return Ok(Functoriality::Violation(FunctorialityWitness::Diamond(d)));
            }
        }
        return Ok(Functoriality::Functorial);
    }
    let reach = p.reachability();
    for x in 0..p.len() {
        for y in 0..p.len() {
            if p.rank(y) < p.rank(x) + 2 || !reach.leq(x, y) {
                continue;
            }
            let chains = p.maximal_chains(x, y).expect("comparable");
            let composites: Vec<Mat> = chains
                .iter()
                .map(|c| f.composite(c))
                .collect::<Result<_, _>>()?;
            for i in 1..composites.len() {
                if composites[i] != composites[0] {
                    return Ok(Functoriality::Violation(FunctorialityWitness::ChainPair {
                        bottom: x,
                        top: y,
                        chain_a: chains[0].clone(),
                        chain_b: chains[i].clone(),
                    }));
                }
            }
        }
    }
    Ok(Functoriality::Functorial)
}

/// One direct summand inside a complex degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockInfo {
    pub element: String,
    pub offset: usize,
    pub dim: usize,
}

/// A bounded cochain complex of free modules with integer differentials
/// and an optional q-grading. Degree slots run `min_degree ..`, one block
/// per poset element in id order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CochainComplex {
    pub ring: BaseRing,
    min_degree: i64,
    dims: Vec<usize>,
    q_degrees: Vec<Vec<i64>>,
    blocks: Vec<Vec<BlockInfo>>,
    diffs: Vec<Mat>,
}

impl CochainComplex {
    pub fn n_slots(&self) -> usize {
        self.dims.len()
    }

    pub fn min_degree(&self) -> i64 {
        self.min_degree
    }

    pub fn degree_of_slot(&self, slot: usize) -> i64 {
        self.min_degree + slot as i64
    }

    pub fn dim(&self, slot: usize) -> usize {
        self.dims[slot]
    }

    pub fn q_degrees(&self, slot: usize) -> &[i64] {
        &self.q_degrees[slot]
    }

    pub fn blocks(&self, slot: usize) -> &[BlockInfo] {
        &self.blocks[slot]
    }

    /// Differential out of `slot` (into `slot + 1`); there are
    /// `n_slots() - 1` of them.
    pub fn differential(&self, slot: usize) -> &Mat {
        &self.diffs[slot]
    }

    /// The same complex regarded over a different base ring.
    pub fn into_ring(mut self, ring: BaseRing) -> Result<Self, ComplexError> {
        ring.validate()?;
        self.ring = ring;
        Ok(self)
    }

    /// Shifts homological degree by `dh` and every q-degree by `dq`.
    pub fn shift(&mut self, dh: i64, dq: i64) {
        self.min_degree += dh;
        for qs in &mut self.q_degrees {
            for q in qs {
                *q += dq;
            }
        }
    }

    /// The contravariant companion: reverses degree slots (degree k becomes
    /// -k) and transposes every differential.
    pub fn dualized(&self) -> CochainComplex {
        let l = self.dims.len();
        let max_degree = self.min_degree + l as i64 - 1;
        CochainComplex {
            ring: self.ring,
            min_degree: -max_degree,
            dims: self.dims.iter().rev().copied().collect(),
            q_degrees: self.q_degrees.iter().rev().cloned().collect(),
            blocks: self.blocks.iter().rev().cloned().collect(),
            diffs: self.diffs.iter().rev().map(Mat::transpose).collect(),
        }
    }

    /// Graded Euler characteristic: alternating sum of graded ranks of the
    /// chain modules.
    pub fn euler_characteristic(&self) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for slot in 0..self.dims.len() {
            let sign = if self.degree_of_slot(slot).rem_euclid(2) == 0 {
                1
            } else {
                -1
            };
            for &q in &self.q_degrees[slot] {
                out = out + LaurentPoly::monomial(sign, q);
            }
        }
        out
    }
}

/// Builds `C^k = direct sum of F(x) over rank-k x` with the signed
/// differential and verifies that it squares to zero.
pub fn assemble(f: &FreeFunctor, c: &EdgeColoring) -> Result<CochainComplex, ComplexError> {
    match check_functoriality(f)? {
        Functoriality::Functorial => {}
        Functoriality::Violation(w) => return Err(ComplexError::NotFunctorial(w)),
    }
    if !is_balanced(f.poset(), c)? {
        return Err(ComplexError::NotBalanced);
    }
    assemble_unchecked(f, c, None)
}

/// Shared assembly path; `restrict` keeps only the given elements (used for
/// ideal splits, where degrees must stay the ambient ranks).
fn assemble_unchecked(
    f: &FreeFunctor,
    c: &EdgeColoring,
    restrict: Option<&[bool]>,
) -> Result<CochainComplex, ComplexError> {
    let p = f.poset();
    let keep = |x: usize| restrict.map_or(true, |m| m[x]);
    let n_slots = p.max_rank() + 1;
    let mut dims = vec![0usize; n_slots];
    let mut q_degrees = vec![Vec::new(); n_slots];
    let mut blocks: Vec<Vec<BlockInfo>> = vec![Vec::new(); n_slots];
    let mut offset_of = vec![usize::MAX; p.len()];
    for x in 0..p.len() {
        if !keep(x) {
            continue;
        }
        let k = p.rank(x);
        offset_of[x] = dims[k];
        blocks[k].push(BlockInfo {
            element: p.id(x).to_string(),
            offset: dims[k],
            dim: f.rank_at(x),
        });
        dims[k] += f.rank_at(x);
        q_degrees[k].extend_from_slice(f.q_degrees(x));
    }
    let mut diffs: Vec<Mat> = (0..n_slots.saturating_sub(1))
        .map(|k| Mat::zero(dims[k + 1], dims[k]))
        .collect();
    for (e, &(x, y)) in p.covers().iter().enumerate() {
        if !keep(x) || !keep(y) {
            continue;
        }
        let k = p.rank(x);
        let block = f.edge_map(e).scale(c.sign(e) as i64)?;
        diffs[k].set_block(offset_of[y], offset_of[x], &block);
    }
    for k in 0..diffs.len().saturating_sub(1) {
        if !diffs[k + 1].mul(&diffs[k])?.is_zero() {
            return Err(ComplexError::DSquaredNonzero { degree: k as i64 });
        }
    }
    Ok(CochainComplex {
        ring: f.ring(),
        min_degree: 0,
        dims,
        q_degrees,
        blocks,
        diffs,
    })
}

/// Betti number and torsion of one q-homogeneous piece of one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QBlockCohomology {
    pub q: i64,
    pub betti: usize,
    pub torsion: Vec<BigInt>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeCohomology {
    pub degree: i64,
    pub betti: usize,
    pub torsion: Vec<BigInt>,
    pub q_blocks: Vec<QBlockCohomology>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyResult {
    pub ring: BaseRing,
    pub degrees: Vec<DegreeCohomology>,
}

impl CohomologyResult {
    /// Graded Euler characteristic of the cohomology (torsion is invisible
    /// in the Grothendieck group).
    pub fn euler_characteristic(&self) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for d in &self.degrees {
            let sign = if d.degree.rem_euclid(2) == 0 { 1 } else { -1 };
            for qb in &d.q_blocks {
                out = out + LaurentPoly::monomial(sign * qb.betti as i64, qb.q);
            }
        }
        out
    }

    pub fn betti_vector(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.betti).collect()
    }

    pub fn total_torsion(&self) -> Vec<BigInt> {
        let mut out: Vec<BigInt> = self
            .degrees
            .iter()
            .flat_map(|d| d.torsion.iter().cloned())
            .collect();
        out.sort();
        out
    }
}

fn q_partition(qs: &[i64]) -> BTreeMap<i64, Vec<usize>> {
    let mut map: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for (i, &q) in qs.iter().enumerate() {
        map.entry(q).or_default().push(i);
    }
    map
}

/// Cohomology of the complex, per degree and per q-degree block. Over the
/// integers this yields Betti numbers and torsion invariant factors from
/// Smith normal forms; over a field, ranks of the appropriate reductions.
pub fn cohomology(cx: &CochainComplex) -> CohomologyResult {
    let n = cx.n_slots();
    let empty = Mat::zero(0, 0);
    let mut degrees = Vec::with_capacity(n);
    for k in 0..n {
        let qs_here = q_partition(cx.q_degrees(k));
        let qs_prev = if k > 0 {
            q_partition(cx.q_degrees(k - 1))
        } else {
            BTreeMap::new()
        };
        let qs_next = if k + 1 < n {
            q_partition(cx.q_degrees(k + 1))
        } else {
            BTreeMap::new()
        };
        let mut q_blocks = Vec::new();
        for (&q, cols) in &qs_here {
            let none = Vec::new();
            let rows_next = qs_next.get(&q).unwrap_or(&none);
            let cols_prev = qs_prev.get(&q).unwrap_or(&none);
            let d_out = if k + 1 < n {
                cx.differential(k).submatrix(rows_next, cols)
            } else {
                empty.clone()
            };
            let d_in = if k > 0 {
                cx.differential(k - 1).submatrix(cols, cols_prev)
            } else {
                empty.clone()
            };
            let (rank_out, rank_in, torsion) = match cx.ring {
                BaseRing::Integers => {
                    let f_in = smith_invariant_factors(&d_in);
                    let torsion: Vec<BigInt> =
                        f_in.iter().filter(|d| !d.is_one()).cloned().collect();
                    (rank_over_q(&d_out), f_in.len(), torsion)
                }
                BaseRing::Rationals => (rank_over_q(&d_out), rank_over_q(&d_in), Vec::new()),
                BaseRing::PrimeField(p) => {
                    (rank_mod_p(&d_out, p), rank_mod_p(&d_in, p), Vec::new())
                }
            };
            q_blocks.push(QBlockCohomology {
                q,
                betti: cols.len() - rank_out - rank_in,
                torsion,
            });
        }
        let betti = q_blocks.iter().map(|b| b.betti).sum();
        let mut torsion: Vec<BigInt> = q_blocks
            .iter()
            .flat_map(|b| b.torsion.iter().cloned())
            .collect();
        torsion.sort();
        degrees.push(DegreeCohomology {
            degree: cx.degree_of_slot(k),
            betti,
            torsion,
            q_blocks,
        });
    }
    CohomologyResult {
        ring: cx.ring,
        degrees,
    }
}

/// The poset-level alternating sum `sum over x of (-1)^{rk x} f(x)`.
pub fn rank_alternator<F: Fn(usize) -> LaurentPoly>(p: &Poset, f: F) -> LaurentPoly {
    let mut out = LaurentPoly::zero();
    for x in 0..p.len() {
        let term = f(x);
        out = if p.rank(x) % 2 == 0 {
            out + term
        } else {
            out - term
        };
    }
    out
}

/// A degreewise map of complexes. `maps[i]` sends source slot `i` into
/// target slot `i + slot_offset`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    pub slot_offset: usize,
    pub maps: Vec<Mat>,
}

/// Checks the chain-map identity `T d_src = d_tgt T` degreewise, plus all
/// shape constraints.
pub fn verify_chain_map(
    src: &CochainComplex,
    tgt: &CochainComplex,
    cm: &ChainMap,
) -> Result<(), ComplexError> {
    let s = cm.slot_offset;
    if cm.maps.len() != src.n_slots() {
        return Err(ComplexError::ShapeMismatch(
            "one map per source degree".into(),
        ));
    }
    for (i, m) in cm.maps.iter().enumerate() {
        if m.cols() != src.dim(i) || i + s >= tgt.n_slots() || m.rows() != tgt.dim(i + s) {
            return Err(ComplexError::ShapeMismatch(alloc::format!(
                "chain map block at slot {i} has shape {}x{}",
                m.rows(),
                m.cols()
            )));
        }
    }
    for i in 0..src.n_slots().saturating_sub(1) {
        let lhs = cm.maps[i + 1].mul(src.differential(i))?;
        let rhs = tgt.differential(i + s).mul(&cm.maps[i])?;
        if lhs != rhs {
            return Err(ComplexError::ChainMapViolated {
                degree: src.degree_of_slot(i),
            });
        }
    }
    Ok(())
}

/// The recoloring isomorphism between the complexes of one functor under
/// two balanced colorings: diagonal blocks `gr^{c1 c2}(x) * identity`.
/// Requires a diamond-transitive poset with a unique minimum (these are the
/// hypotheses under which the greedy potential exists).
pub fn recolor_map(
    f: &FreeFunctor,
    c1: &EdgeColoring,
    c2: &EdgeColoring,
) -> Result<ChainMap, ComplexError> {
    let p = f.poset();
    if !is_balanced(p, c1)? || !is_balanced(p, c2)? {
        return Err(ComplexError::NotBalanced);
    }
    let d = c1.product(c2)?;
    let gr = greedy_potential(p, &d)?;
    let src = assemble(f, c1)?;
    let tgt = assemble(f, c2)?;
    let mut maps = Vec::with_capacity(src.n_slots());
    for slot in 0..src.n_slots() {
        let mut m = Mat::zero(src.dim(slot), src.dim(slot));
        for block in src.blocks(slot) {
            let x = p.index(&block.element).expect("block element");
            let sign = gr.value(x) as i64;
            for i in 0..block.dim {
                m.set(block.offset + i, block.offset + i, sign);
            }
        }
        maps.push(m);
    }
    let cm = ChainMap {
        slot_offset: 0,
        maps,
    };
    verify_chain_map(&src, &tgt, &cm)?;
    Ok(cm)
}

/// The chain map induced by a cover-preserving order embedding whose
/// functor component is the identity: block `gr^b(x) * eta_x` from the
/// source complex into the target complex.
///
/// `eta` gives one matrix per source element (naturality squares are
/// checked); `b` is a central coloring on the source satisfying
/// `push(c_src * b) = c_tgt` on the image covers.
///
/// The intertwining identity is verified along every image cover; the full
/// matrix equation `T d_src = d_tgt T` is verified in addition whenever the
/// image is closed under upward covers (upper ideals, isomorphisms) - for
/// other embeddings the target differential also feeds non-image blocks,
/// which no choice of signs can cancel.
#[allow(clippy::too_many_arguments)]
pub fn induced_chain_map(
    emb: &CoverEmbedding,
    f_src: &FreeFunctor,
    c_src: &EdgeColoring,
    f_tgt: &FreeFunctor,
    c_tgt: &EdgeColoring,
    eta: &[Mat],
    b: &EdgeColoring,
) -> Result<ChainMap, ComplexError> {
    let p = f_src.poset();
    let q = f_tgt.poset();
    if eta.len() != p.len() {
        return Err(ComplexError::ShapeMismatch(
            "one eta matrix per source element".into(),
        ));
    }
    for x in 0..p.len() {
        let img = emb.apply(x);
        if eta[x].rows() != f_tgt.rank_at(img) || eta[x].cols() != f_src.rank_at(x) {
            return Err(ComplexError::ShapeMismatch(alloc::format!(
                "eta at {} has shape {}x{}",
                p.id(x),
                eta[x].rows(),
                eta[x].cols()
            )));
        }
    }
    if !is_central(p, b)? {
        return Err(ComplexError::Coloring(ColoringError::NotCentral));
    }
    // The embedding must shift every rank by the same amount for the block
    // map to be degree-homogeneous.
    let shift = q.rank(emb.apply(0)) as i64 - p.rank(0) as i64;
    for x in 1..p.len() {
        if q.rank(emb.apply(x)) as i64 - p.rank(x) as i64 != shift {
            return Err(ComplexError::RankShiftInconsistent);
        }
    }
    if shift < 0 {
        return Err(ComplexError::RankShiftInconsistent);
    }
    for (e, &(x, y)) in p.covers().iter().enumerate() {
        // phi(c_src * b) = c_tgt restricted to the image.
        if c_src.sign(e) * b.sign(e) != c_tgt.sign(emb.cover_image(e)) {
            return Err(ComplexError::ColoringIncompatible {
                lower: p.id(x).into(),
                upper: p.id(y).into(),
            });
        }
        let lhs = eta[y].mul(f_src.edge_map(e))?;
        let rhs = f_tgt.edge_map(emb.cover_image(e)).mul(&eta[x])?;
        if lhs != rhs {
            return Err(ComplexError::NaturalityViolated {
                lower: p.id(x).into(),
                upper: p.id(y).into(),
            });
        }
    }
    let gr = greedy_potential(p, b)?;
    let src = assemble(f_src, c_src)?;
    let tgt = assemble(f_tgt, c_tgt)?;
    let mut maps = Vec::with_capacity(src.n_slots());
    for slot in 0..src.n_slots() {
        let tgt_slot = slot + shift as usize;
        let mut m = Mat::zero(tgt.dim(tgt_slot), src.dim(slot));
        for block in src.blocks(slot) {
            let x = p.index(&block.element).expect("block element");
            let img = emb.apply(x);
            let img_offset = tgt
                .blocks(tgt_slot)
                .iter()
                .find(|b| b.element == q.id(img))
                .expect("image block")
                .offset;
            let signed = eta[x].scale(gr.value(x) as i64)?;
            m.set_block(img_offset, block.offset, &signed);
        }
        maps.push(m);
    }
    let cm = ChainMap {
        slot_offset: shift as usize,
        maps,
    };
    // The intertwining identity along every image cover; this is what the
    // block map satisfies for an arbitrary embedding.
    for (e, &(x, y)) in p.covers().iter().enumerate() {
        let lhs = eta[y]
            .scale((gr.value(y) * c_src.sign(e)) as i64)?
            .mul(f_src.edge_map(e))?;
        let rhs = f_tgt
            .edge_map(emb.cover_image(e))
            .scale(c_tgt.sign(emb.cover_image(e)) as i64)?
            .mul(&eta[x].scale(gr.value(x) as i64)?)?;
        if lhs != rhs {
            return Err(ComplexError::ChainMapViolated {
                degree: p.rank(x) as i64,
            });
        }
    }
    // When every upper cover of an image element stays inside the image
    // (upper ideals, isomorphisms), the target differential cannot leave
    // the image blocks and the full matrix chain-map equation holds too.
    let in_image = {
        let mut mask = vec![false; q.len()];
        for x in 0..p.len() {
            mask[emb.apply(x)] = true;
        }
        mask
    };
    let up_closed = (0..q.len())
        .filter(|&u| in_image[u])
        .all(|u| q.upper_covers(u).iter().all(|&w| in_image[w]));
    if up_closed {
        verify_chain_map(&src, &tgt, &cm)?;
    }
    Ok(cm)
}

/// The short exact sequence of complexes attached to an upper order ideal:
/// the ideal's complex includes into the total complex, which projects onto
/// the complement's complex. Degrees stay the ambient ranks throughout.
#[derive(Clone, Debug)]
pub struct IdealSplit {
    pub sub: CochainComplex,
    pub total: CochainComplex,
    pub quotient: CochainComplex,
    pub inclusion: ChainMap,
    pub projection: ChainMap,
}

pub fn ideal_split(
    f: &FreeFunctor,
    c: &EdgeColoring,
    ideal: &[usize],
) -> Result<IdealSplit, ComplexError> {
    let p = f.poset();
    let mut in_ideal = vec![false; p.len()];
    for &x in ideal {
        in_ideal[x] = true;
    }
    for &x in ideal {
        for &y in p.upper_covers(x) {
            if !in_ideal[y] {
                return Err(ComplexError::NotUpperIdeal(p.id(x).into()));
            }
        }
    }
    let total = assemble(f, c)?;
    let complement: Vec<bool> = in_ideal.iter().map(|&b| !b).collect();
    let sub = assemble_unchecked(f, c, Some(&in_ideal))?;
    let quotient = assemble_unchecked(f, c, Some(&complement))?;

    let selection = |part: &CochainComplex, slot: usize, rows_from_total: bool| -> Mat {
        // 0/1 matrix matching part blocks with their positions in total.
        let (rows, cols) = if rows_from_total {
            (total.dim(slot), part.dim(slot))
        } else {
            (part.dim(slot), total.dim(slot))
        };
        let mut m = Mat::zero(rows, cols);
        for block in part.blocks(slot) {
            let tot_offset = total
                .blocks(slot)
                .iter()
                .find(|b| b.element == block.element)
                .expect("shared element")
                .offset;
            for i in 0..block.dim {
                if rows_from_total {
                    m.set(tot_offset + i, block.offset + i, 1);
                } else {
                    m.set(block.offset + i, tot_offset + i, 1);
                }
            }
        }
        m
    };
    let inclusion = ChainMap {
        slot_offset: 0,
        maps: (0..total.n_slots())
            .map(|k| selection(&sub, k, true))
            .collect(),
    };
    let projection = ChainMap {
        slot_offset: 0,
        maps: (0..total.n_slots())
            .map(|k| selection(&quotient, k, false))
            .collect(),
    };
    verify_chain_map(&sub, &total, &inclusion)?;
    verify_chain_map(&total, &quotient, &projection)?;
    for k in 0..total.n_slots() {
        // Exactness of 0 -> sub -> total -> quotient -> 0 is structural
        // once the dimensions add up (complementary block sets).
        if sub.dim(k) + quotient.dim(k) != total.dim(k) {
            return Err(ComplexError::ShapeMismatch("ideal split dimensions".into()));
        }
    }
    Ok(IdealSplit {
        sub,
        total,
        quotient,
        inclusion,
        projection,
    })
}
