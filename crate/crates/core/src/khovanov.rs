//! The Kauffman cube of a link diagram as a functor on a Boolean lattice,
//! and Khovanov homology as its cohomology.
//!
//! A diagram is a PD code: one 4-tuple of arc labels per crossing, listed
//! counterclockwise from the incoming under-strand, plus a sign per
//! crossing. Resolving crossing `(a, b, c, d)` joins `(a, b)` and `(c, d)`
//! outside the chosen subset (0-smoothing) and `(a, d)` and `(b, c)` inside
//! it (1-smoothing); circles are the classes of the resulting arc
//! identification.
//!
//! The cube assigns each state the tensor power `V^{circles}` of the rank
//! two algebra V = span(1, x) with deg 1 = +1, deg x = -1, globally shifted
//! by q^{|state|}; a cover map merges two circles through
//! `m(1,1)=1, m(1,x)=m(x,1)=x, m(x,x)=0` or splits one through
//! `Delta(1)=1*x+x*1, Delta(x)=x*x`. Tensor factors are ordered by each
//! circle's minimal arc label. The Kauffman bracket state sum is kept as an
//! independent oracle; the homology-level grading shifts are the usual
//! `(-n_minus, n_plus - 2 n_minus)`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::coloring::{find_balanced_coloring, ColoringError};
use crate::complex::{assemble, cohomology, BaseRing, CohomologyResult, ComplexError, FreeFunctor};
use crate::constructors::{boolean_lattice, subset_id, ConstructError};
use crate::laurent::LaurentPoly;
use crate::matrix::Mat;

/// Largest crossing count for the cube construction. The functoriality
/// check walks chain orbits of the Boolean lattice, which stays inside the
/// move budget only up to this size.
pub const MAX_CUBE_CROSSINGS: usize = 6;

/// Largest crossing count for the direct state-sum bracket.
pub const MAX_BRACKET_CROSSINGS: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KhovanovError {
    MalformedPd(PdFault),
    TooManyCrossings { max: usize, got: usize },
    Construct(ConstructError),
    Coloring(ColoringError),
    Complex(ComplexError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PdFault {
    /// Every arc label must appear exactly twice.
    ArcCount {
        arc: u32,
        count: usize,
    },
    SignCount {
        crossings: usize,
        signs: usize,
    },
    BadSign(i8),
    /// A resolution change must merge or split exactly one circle pair;
    /// anything else means the code is not a planar diagram.
    NonPlanar {
        crossing: usize,
    },
}

impl fmt::Display for KhovanovError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KhovanovError::MalformedPd(fault) => write!(f, "malformed PD code: {fault:?}"),
            KhovanovError::TooManyCrossings { max, got } => {
                write!(f, "diagram has {got} crossings, limit is {max}")
            }
            KhovanovError::Construct(e) => write!(f, "{e}"),
            KhovanovError::Coloring(e) => write!(f, "{e}"),
            KhovanovError::Complex(e) => write!(f, "{e}"),
        }
    }
}

impl From<ConstructError> for KhovanovError {
    fn from(e: ConstructError) -> Self {
        KhovanovError::Construct(e)
    }
}

impl From<ColoringError> for KhovanovError {
    fn from(e: ColoringError) -> Self {
        KhovanovError::Coloring(e)
    }
}

impl From<ComplexError> for KhovanovError {
    fn from(e: ComplexError) -> Self {
        KhovanovError::Complex(e)
    }
}

/// A link diagram: PD code, crossing signs, and optionally extra
/// crossing-free loop components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkDiagram {
    crossings: Vec<[u32; 4]>,
    signs: Vec<i8>,
    loops: usize,
}

impl LinkDiagram {
    pub fn new(crossings: Vec<[u32; 4]>, signs: Vec<i8>) -> Result<Self, KhovanovError> {
        Self::with_loops(crossings, signs, 0)
    }

    pub fn with_loops(
        crossings: Vec<[u32; 4]>,
        signs: Vec<i8>,
        loops: usize,
    ) -> Result<Self, KhovanovError> {
        if signs.len() != crossings.len() {
            return Err(KhovanovError::MalformedPd(PdFault::SignCount {
                crossings: crossings.len(),
                signs: signs.len(),
            }));
        }
        if let Some(&s) = signs.iter().find(|&&s| s != 1 && s != -1) {
            return Err(KhovanovError::MalformedPd(PdFault::BadSign(s)));
        }
        let mut arcs: Vec<u32> = crossings.iter().flatten().copied().collect();
        arcs.sort_unstable();
        let mut i = 0;
        while i < arcs.len() {
            let run = arcs[i..].iter().take_while(|&&a| a == arcs[i]).count();
            if run != 2 {
                return Err(KhovanovError::MalformedPd(PdFault::ArcCount {
                    arc: arcs[i],
                    count: run,
                }));
            }
            i += run;
        }
        Ok(LinkDiagram {
            crossings,
            signs,
            loops,
        })
    }

    /// The 0-crossing unknot: no PD entries, one loop.
    pub fn unknot() -> Self {
        LinkDiagram {
            crossings: Vec::new(),
            signs: Vec::new(),
            loops: 1,
        }
    }

    pub fn n_crossings(&self) -> usize {
        self.crossings.len()
    }

    pub fn crossings(&self) -> &[[u32; 4]] {
        &self.crossings
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn loops(&self) -> usize {
        self.loops
    }

    pub fn n_plus(&self) -> usize {
        self.signs.iter().filter(|&&s| s == 1).count()
    }

    pub fn n_minus(&self) -> usize {
        self.signs.iter().filter(|&&s| s == -1).count()
    }

    /// Sorted distinct arc labels.
    pub fn arcs(&self) -> Vec<u32> {
        let mut arcs: Vec<u32> = self.crossings.iter().flatten().copied().collect();
        arcs.sort_unstable();
        arcs.dedup();
        arcs
    }

    /// The mirror image: rotating each PD tuple by one swaps the roles of
    /// the 0- and 1-smoothings, and every crossing sign flips.
    pub fn mirror(&self) -> LinkDiagram {
        LinkDiagram {
            crossings: self
                .crossings
                .iter()
                .map(|&[a, b, c, d]| [d, a, b, c])
                .collect(),
            signs: self.signs.iter().map(|s| -s).collect(),
            loops: self.loops,
        }
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let root = self.find(self.parent[x]);
            self.parent[x] = root;
        }
        self.parent[x]
    }

    fn union(&mut self, x: usize, y: usize) {
        let (rx, ry) = (self.find(x), self.find(y));
        // Keep the smaller index as root so classes sort by minimal member.
        let (lo, hi) = (rx.min(ry), rx.max(ry));
        self.parent[hi] = lo;
    }
}

/// A Kauffman state: a crossing subset (bitmask) together with its circles,
/// each circle the sorted list of arcs it traverses. Circles are ordered by
/// minimal arc label; crossing-free loops come last with empty arc lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KauffmanState {
    pub subset: u64,
    pub circles: Vec<Vec<u32>>,
}

impl KauffmanState {
    pub fn circle_count(&self) -> usize {
        self.circles.len()
    }
}

/// Smooths every crossing (0 outside `subset`, 1 inside) and collects the
/// circles by union-find over the arc identifications.
pub fn resolve(d: &LinkDiagram, subset: u64) -> KauffmanState {
    let arcs = d.arcs();
    let arc_index = |a: u32| arcs.binary_search(&a).expect("arc present");
    let mut uf = UnionFind::new(arcs.len());
    for (i, &[a, b, c, e]) in d.crossings.iter().enumerate() {
        if subset >> i & 1 == 0 {
            uf.union(arc_index(a), arc_index(b));
            uf.union(arc_index(c), arc_index(e));
        } else {
            uf.union(arc_index(a), arc_index(e));
            uf.union(arc_index(b), arc_index(c));
        }
    }
    let mut classes: Vec<Vec<u32>> = vec![Vec::new(); arcs.len()];
    for (i, &a) in arcs.iter().enumerate() {
        classes[uf.find(i)].push(a);
    }
    let mut circles: Vec<Vec<u32>> = classes.into_iter().filter(|c| !c.is_empty()).collect();
    circles.sort_by_key(|c| c[0]);
    circles.extend(core::iter::repeat_n(Vec::new(), d.loops));
    KauffmanState { subset, circles }
}

/// The Kauffman bracket by direct state sum:
/// `sum over subsets I of (-1)^{|I|} q^{|I|} (q + q^{-1})^{circles(I)}`.
/// This is the decategorification oracle; it never touches the cube.
pub fn kauffman_bracket(d: &LinkDiagram) -> Result<LaurentPoly, KhovanovError> {
    let n = d.n_crossings();
    if n > MAX_BRACKET_CROSSINGS {
        return Err(KhovanovError::TooManyCrossings {
            max: MAX_BRACKET_CROSSINGS,
            got: n,
        });
    }
    let v = LaurentPoly::q_plus_q_inv();
    let mut total = LaurentPoly::zero();
    for subset in 0u64..1 << n {
        let weight = subset.count_ones();
        let sign = if weight % 2 == 0 { 1 } else { -1 };
        let circles = resolve(d, subset).circle_count() as u32;
        let term = v.pow(circles).shifted(weight as i64).scaled(sign);
        total = total + term;
    }
    Ok(total)
}

/// The bracket with the orientation shifts applied:
/// `(-1)^{n_minus} q^{n_plus - 2 n_minus} <L>`. Equals the graded Euler
/// characteristic of Khovanov homology.
pub fn shifted_bracket(d: &LinkDiagram) -> Result<LaurentPoly, KhovanovError> {
    let sign = if d.n_minus() % 2 == 0 { 1 } else { -1 };
    let shift = d.n_plus() as i64 - 2 * d.n_minus() as i64;
    Ok(kauffman_bracket(d)?.shifted(shift).scaled(sign))
}

/// Builds the cube functor on the Boolean lattice of crossing subsets.
pub fn cube_functor(d: &LinkDiagram) -> Result<FreeFunctor, KhovanovError> {
    let n = d.n_crossings();
    if n > MAX_CUBE_CROSSINGS {
        return Err(KhovanovError::TooManyCrossings {
            max: MAX_CUBE_CROSSINGS,
            got: n,
        });
    }
    let poset = boolean_lattice(n)?;
    // Index -> subset mask, via the shared id encoding.
    let mut mask_of = vec![0u64; poset.len()];
    let mut states: Vec<Option<KauffmanState>> = vec![None; poset.len()];
    for mask in 0u64..1 << n {
        let idx = poset.index(&subset_id(mask)).expect("subset id");
        mask_of[idx] = mask;
        states[idx] = Some(resolve(d, mask));
    }
    let states: Vec<KauffmanState> = states.into_iter().map(Option::unwrap).collect();

    let mut dims = Vec::with_capacity(poset.len());
    for (idx, state) in states.iter().enumerate() {
        let k = state.circle_count();
        let weight = mask_of[idx].count_ones() as i64;
        let qs: Vec<i64> = (0u64..1 << k)
            .map(|b| weight + k as i64 - 2 * b.count_ones() as i64)
            .collect();
        dims.push(qs);
    }

    let mut maps = Vec::with_capacity(poset.covers().len());
    for &(x, y) in poset.covers() {
        let crossing = (mask_of[y] ^ mask_of[x]).trailing_zeros() as usize;
        maps.push(edge_matrix(&states[x], &states[y], crossing)?);
    }
    Ok(FreeFunctor::new(poset, dims, maps, BaseRing::Integers)?)
}

/// Matrix of the merge/split map between two adjacent states. Basis index
/// bit i is the label of circle i (0 for the unit, 1 for x).
fn edge_matrix(
    src: &KauffmanState,
    tgt: &KauffmanState,
    crossing: usize,
) -> Result<Mat, KhovanovError> {
    let (ks, kt) = (src.circle_count(), tgt.circle_count());
    let nonplanar = KhovanovError::MalformedPd(PdFault::NonPlanar { crossing });

    // For each source circle, the sorted target circles sharing its arcs.
    // Loops (empty arc lists) are in positional correspondence at the tail.
    let mut tgt_of_arc: alloc::collections::BTreeMap<u32, usize> =
        alloc::collections::BTreeMap::new();
    for (j, circle) in tgt.circles.iter().enumerate() {
        for &a in circle {
            tgt_of_arc.insert(a, j);
        }
    }
    let src_arcful = src.circles.iter().filter(|c| !c.is_empty()).count();
    let tgt_arcful = tgt.circles.iter().filter(|c| !c.is_empty()).count();
    let mut images: Vec<Vec<usize>> = Vec::with_capacity(ks);
    for (i, circle) in src.circles.iter().enumerate() {
        if circle.is_empty() {
            images.push(vec![tgt_arcful + (i - src_arcful)]);
            continue;
        }
        let mut js: Vec<usize> = circle.iter().map(|a| tgt_of_arc[a]).collect();
        js.sort_unstable();
        js.dedup();
        images.push(js);
    }

    let mut m = Mat::zero(1 << kt, 1 << ks);
    if kt + 1 == ks {
        // Merge: exactly two source circles share one target.
        let mut merged: Option<(usize, usize, usize)> = None;
        let mut seen: alloc::collections::BTreeMap<usize, usize> =
            alloc::collections::BTreeMap::new();
        for (i, js) in images.iter().enumerate() {
            if js.len() != 1 {
                return Err(nonplanar);
            }
            if let Some(&first) = seen.get(&js[0]) {
                if merged.is_some() {
                    return Err(nonplanar);
                }
                merged = Some((first, i, js[0]));
            } else {
                seen.insert(js[0], i);
            }
        }
        let (i1, i2, j0) = merged.ok_or(nonplanar)?;
        for b in 0u64..1 << ks {
            let (l1, l2) = (b >> i1 & 1, b >> i2 & 1);
            if l1 == 1 && l2 == 1 {
                continue; // m(x, x) = 0
            }
            let mut out = 0u64;
            for (i, js) in images.iter().enumerate() {
                if i != i1 && i != i2 && b >> i & 1 == 1 {
                    out |= 1 << js[0];
                }
            }
            if l1 | l2 == 1 {
                out |= 1 << j0; // m(1, x) = m(x, 1) = x
            }
            m.set(out as usize, b as usize, 1);
        }
    } else if kt == ks + 1 {
        // Split: exactly one source circle covers two targets.
        let mut split: Option<(usize, usize, usize)> = None;
        for (i, js) in images.iter().enumerate() {
            match js.len() {
                1 => {}
                2 => {
                    if split.is_some() {
                        return Err(nonplanar);
                    }
                    split = Some((i, js[0], js[1]));
                }
                _ => return Err(nonplanar),
            }
        }
        let (i0, j1, j2) = split.ok_or(nonplanar)?;
        for b in 0u64..1 << ks {
            let mut base = 0u64;
            for (i, js) in images.iter().enumerate() {
                if i != i0 && b >> i & 1 == 1 {
                    base |= 1 << js[0];
                }
            }
            if b >> i0 & 1 == 1 {
                // Delta(x) = x tensor x
                m.set((base | 1 << j1 | 1 << j2) as usize, b as usize, 1);
            } else {
                // Delta(1) = 1 tensor x + x tensor 1
                m.set((base | 1 << j2) as usize, b as usize, 1);
                m.set((base | 1 << j1) as usize, b as usize, 1);
            }
        }
    } else {
        return Err(nonplanar);
    }
    Ok(m)
}

/// Khovanov homology over the integers: cube complex with a solver-found
/// balanced coloring, homological degrees shifted by `-n_minus` and
/// q-degrees by `n_plus - 2 n_minus`.
pub fn khovanov_homology(d: &LinkDiagram) -> Result<CohomologyResult, KhovanovError> {
    Ok(cohomology(&khovanov_complex(d)?))
}

/// The shifted Khovanov cochain complex itself.
pub fn khovanov_complex(d: &LinkDiagram) -> Result<crate::complex::CochainComplex, KhovanovError> {
    let f = cube_functor(d)?;
    let c = find_balanced_coloring(f.poset())?.expect("Boolean lattices are balanced colorable");
    let mut cx = assemble(&f, &c)?;
    cx.shift(
        -(d.n_minus() as i64),
        d.n_plus() as i64 - 2 * d.n_minus() as i64,
    );
    Ok(cx)
}

/// A left-handed trefoil PD code (all crossings negative).
pub fn trefoil() -> LinkDiagram {
    LinkDiagram::new(
        vec![[1, 4, 2, 5], [3, 6, 4, 1], [5, 2, 6, 3]],
        vec![-1, -1, -1],
    )
    .expect("valid")
}

/// The mirror (right-handed) trefoil, all crossings positive.
pub fn trefoil_right() -> LinkDiagram {
    LinkDiagram::new(
        vec![[5, 1, 4, 2], [1, 3, 6, 4], [3, 5, 2, 6]],
        vec![1, 1, 1],
    )
    .expect("valid")
}

/// A negative Hopf link PD code.
pub fn hopf_link() -> LinkDiagram {
    LinkDiagram::new(vec![[1, 3, 2, 4], [2, 4, 1, 3]], vec![-1, -1]).expect("valid")
}

/// A figure-eight PD code (two positive, two negative crossings).
pub fn figure_eight() -> LinkDiagram {
    LinkDiagram::new(
        vec![[4, 2, 5, 1], [8, 6, 1, 5], [6, 3, 7, 4], [2, 7, 3, 8]],
        vec![1, -1, 1, -1],
    )
    .expect("valid")
}

/// A left-handed cinquefoil (five negative crossings).
pub fn cinquefoil() -> LinkDiagram {
    LinkDiagram::new(
        vec![
            [1, 6, 2, 7],
            [3, 8, 4, 9],
            [5, 10, 6, 1],
            [7, 2, 8, 3],
            [9, 4, 10, 5],
        ],
        vec![-1; 5],
    )
    .expect("valid")
}
