//! The wire formats.
//!
//! Poset: `{"elements": [...], "covers": [["x","y"], ...]}` — elements and
//! covers are emitted sorted, so identical inputs produce identical bytes.
//!
//! Coloring: `{"edges": [["x","y",1], ...]}` with every cover present.
//!
//! Functor: `{"poset": {...}, "dims": {"x": [q,...]}, "maps":
//! {"x,y": [[...]]}, "ring": "Z"|"Q"|"Fp:p"}` — a map key is the cover's
//! two element ids joined by a comma (ids containing commas are rejected),
//! the matrix has `dims[y].len()` rows and `dims[x].len()` columns.
//!
//! PD code: `{"pd": [[a,b,c,d], ...], "signs": [1,-1,...], "loops": 0}`.
//!
//! Laurent polynomials serialize as `{exponent: coefficient}` objects with
//! the exponents as (string) integer keys in increasing order.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use thincoh_core::coloring::{EdgeColoring, Potential};
use thincoh_core::complex::{BaseRing, CochainComplex, CohomologyResult, FreeFunctor};
use thincoh_core::khovanov::LinkDiagram;
use thincoh_core::laurent::LaurentPoly;
use thincoh_core::matrix::Mat;
use thincoh_core::poset::Poset;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PosetJson {
    pub elements: Vec<String>,
    pub covers: Vec<(String, String)>,
}

impl PosetJson {
    pub fn from_poset(p: &Poset) -> Self {
        let (elements, covers) = p.to_cover_relations();
        PosetJson { elements, covers }
    }

    pub fn to_poset(&self) -> Result<Poset, String> {
        Poset::from_cover_relations(&self.elements, &self.covers).map_err(|e| e.to_string())
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ColoringJson {
    pub edges: Vec<(String, String, i8)>,
}

impl ColoringJson {
    pub fn from_coloring(p: &Poset, c: &EdgeColoring) -> Self {
        let edges = p
            .covers()
            .iter()
            .enumerate()
            .map(|(e, &(x, y))| (p.id(x).to_string(), p.id(y).to_string(), c.sign(e)))
            .collect();
        ColoringJson { edges }
    }

    pub fn to_coloring(&self, p: &Poset) -> Result<EdgeColoring, String> {
        let mut signs = vec![0i8; p.covers().len()];
        if self.edges.len() != signs.len() {
            return Err(format!(
                "coloring lists {} edges, poset has {} covers",
                self.edges.len(),
                signs.len()
            ));
        }
        for (x, y, s) in &self.edges {
            let xi = p.index(x).ok_or_else(|| format!("unknown element {x:?}"))?;
            let yi = p.index(y).ok_or_else(|| format!("unknown element {y:?}"))?;
            let e = p
                .cover_position(xi, yi)
                .ok_or_else(|| format!("({x:?}, {y:?}) is not a cover"))?;
            if signs[e] != 0 {
                return Err(format!("duplicate edge ({x:?}, {y:?})"));
            }
            signs[e] = *s;
        }
        EdgeColoring::from_signs(p, signs).map_err(|e| e.to_string())
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PotentialJson {
    pub values: Vec<(String, i8)>,
}

impl PotentialJson {
    pub fn from_potential(p: &Poset, f: &Potential) -> Self {
        let values = (0..p.len())
            .map(|x| (p.id(x).to_string(), f.value(x)))
            .collect();
        PotentialJson { values }
    }

    pub fn to_potential(&self, p: &Poset) -> Result<Potential, String> {
        let mut signs = vec![0i8; p.len()];
        if self.values.len() != signs.len() {
            return Err(format!(
                "potential lists {} values, poset has {} elements",
                self.values.len(),
                signs.len()
            ));
        }
        for (x, s) in &self.values {
            let xi = p.index(x).ok_or_else(|| format!("unknown element {x:?}"))?;
            if signs[xi] != 0 {
                return Err(format!("duplicate value for {x:?}"));
            }
            signs[xi] = *s;
        }
        Potential::from_signs(p, signs).map_err(|e| e.to_string())
    }
}

pub fn ring_to_string(r: BaseRing) -> String {
    match r {
        BaseRing::Integers => "Z".to_string(),
        BaseRing::Rationals => "Q".to_string(),
        BaseRing::PrimeField(p) => format!("Fp:{p}"),
    }
}

pub fn parse_ring(s: &str) -> Result<BaseRing, String> {
    let ring = match s {
        "Z" => BaseRing::Integers,
        "Q" => BaseRing::Rationals,
        _ => {
            let p = s
                .strip_prefix("Fp:")
                .and_then(|p| p.parse::<u32>().ok())
                .ok_or_else(|| format!("ring must be Z, Q, or Fp:<prime>, got {s:?}"))?;
            BaseRing::PrimeField(p)
        }
    };
    ring.validate().map_err(|e| e.to_string())?;
    Ok(ring)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FunctorJson {
    pub poset: PosetJson,
    pub dims: BTreeMap<String, Vec<i64>>,
    pub maps: BTreeMap<String, Vec<Vec<i64>>>,
    pub ring: String,
}

impl FunctorJson {
    pub fn to_functor(&self) -> Result<FreeFunctor, String> {
        let poset = self.poset.to_poset()?;
        if let Some(id) = poset.ids().iter().find(|id| id.contains(',')) {
            return Err(format!(
                "element id {id:?} contains a comma; not addressable in maps"
            ));
        }
        let mut dims = Vec::with_capacity(poset.len());
        for x in 0..poset.len() {
            let qs = self
                .dims
                .get(poset.id(x))
                .ok_or_else(|| format!("missing dims for element {:?}", poset.id(x)))?;
            dims.push(qs.clone());
        }
        if let Some(extra) = self.dims.keys().find(|k| poset.index(k).is_none()) {
            return Err(format!("dims for unknown element {extra:?}"));
        }
        let mut maps = Vec::with_capacity(poset.covers().len());
        for &(x, y) in poset.covers() {
            let key = format!("{},{}", poset.id(x), poset.id(y));
            let rows = self
                .maps
                .get(&key)
                .ok_or_else(|| format!("missing edge map {key:?}"))?;
            if rows.len() != dims[y].len() {
                return Err(format!(
                    "edge map {key:?} has {} rows, expected {}",
                    rows.len(),
                    dims[y].len()
                ));
            }
            let m = Mat::from_rows(rows.clone(), dims[x].len()).map_err(|e| e.to_string())?;
            maps.push(m);
        }
        if self.maps.len() != poset.covers().len() {
            return Err("maps must list exactly the covers".to_string());
        }
        let ring = parse_ring(&self.ring)?;
        FreeFunctor::new(poset, dims, maps, ring).map_err(|e| e.to_string())
    }

    pub fn from_functor(f: &FreeFunctor) -> Self {
        let p = f.poset();
        let dims = (0..p.len())
            .map(|x| (p.id(x).to_string(), f.q_degrees(x).to_vec()))
            .collect();
        let maps = p
            .covers()
            .iter()
            .enumerate()
            .map(|(e, &(x, y))| {
                let m = f.edge_map(e);
                let rows: Vec<Vec<i64>> = (0..m.rows()).map(|r| m.row(r).to_vec()).collect();
                (format!("{},{}", p.id(x), p.id(y)), rows)
            })
            .collect();
        FunctorJson {
            poset: PosetJson::from_poset(p),
            dims,
            maps,
            ring: ring_to_string(f.ring()),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PdJson {
    pub pd: Vec<[u32; 4]>,
    pub signs: Vec<i8>,
    #[serde(default)]
    pub loops: usize,
}

impl PdJson {
    pub fn to_diagram(&self) -> Result<LinkDiagram, String> {
        LinkDiagram::with_loops(self.pd.clone(), self.signs.clone(), self.loops)
            .map_err(|e| e.to_string())
    }
}

pub fn laurent_to_json(p: &LaurentPoly) -> BTreeMap<i64, i64> {
    p.terms().collect()
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct QBlockOut {
    pub q: i64,
    pub betti: usize,
    pub torsion: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DegreeOut {
    pub degree: i64,
    pub betti: usize,
    pub torsion: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub q_blocks: Vec<QBlockOut>,
}

/// `with_q` controls whether the per-q-degree tables are included (they
/// are redundant for ungraded functors, where everything sits in q = 0).
pub fn cohomology_to_json(res: &CohomologyResult, with_q: bool) -> Vec<DegreeOut> {
    res.degrees
        .iter()
        .map(|d| DegreeOut {
            degree: d.degree,
            betti: d.betti,
            torsion: d.torsion.iter().map(|t| t.to_string()).collect(),
            q_blocks: if with_q {
                d.q_blocks
                    .iter()
                    .map(|b| QBlockOut {
                        q: b.q,
                        betti: b.betti,
                        torsion: b.torsion.iter().map(|t| t.to_string()).collect(),
                    })
                    .collect()
            } else {
                Vec::new()
            },
        })
        .collect()
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BlockOut {
    pub element: String,
    pub offset: usize,
    pub dim: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ComplexDegreeOut {
    pub degree: i64,
    pub dim: usize,
    pub q_degrees: Vec<i64>,
    pub blocks: Vec<BlockOut>,
    /// Differential out of this degree (absent at the top degree).
    pub differential: Option<Vec<Vec<i64>>>,
}

pub fn complex_to_json(cx: &CochainComplex) -> Vec<ComplexDegreeOut> {
    (0..cx.n_slots())
        .map(|slot| {
            let differential = (slot + 1 < cx.n_slots()).then(|| {
                let m = cx.differential(slot);
                (0..m.rows()).map(|r| m.row(r).to_vec()).collect()
            });
            ComplexDegreeOut {
                degree: cx.degree_of_slot(slot),
                dim: cx.dim(slot),
                q_degrees: cx.q_degrees(slot).to_vec(),
                blocks: cx
                    .blocks(slot)
                    .iter()
                    .map(|b| BlockOut {
                        element: b.element.clone(),
                        offset: b.offset,
                        dim: b.dim,
                    })
                    .collect(),
                differential,
            }
        })
        .collect()
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WitnessOut {
    pub bottom: String,
    pub top: String,
    pub chain_a: Vec<String>,
    pub chain_b: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AnalyzeOut {
    pub graded: bool,
    pub thin: bool,
    pub eulerian: bool,
    pub diamond_transitive: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessOut>,
    pub balanced_colorable: Option<bool>,
    pub h1_z2: Option<usize>,
    pub h2_z2: Option<usize>,
    pub n_diamonds: Option<usize>,
    pub h1_cross_check: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CohomologyOut {
    pub ring: String,
    pub degrees: Vec<DegreeOut>,
    pub euler_complex: BTreeMap<i64, i64>,
    pub euler_cohomology: BTreeMap<i64, i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rank_alternator: Option<BTreeMap<i64, i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub euler_matches_rank_alternator: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bracket_shifted: Option<BTreeMap<i64, i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub jones_check: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub complex: Option<Vec<ComplexDegreeOut>>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use thincoh_core::coloring::{coboundary, find_balanced_coloring};
    use thincoh_core::constructors::boolean_lattice;

    #[test]
    fn coloring_and_potential_round_trip() {
        let p = boolean_lattice(3).unwrap();
        let c = find_balanced_coloring(&p).unwrap().unwrap();
        let cj = ColoringJson::from_coloring(&p, &c);
        let text = serde_json::to_string(&cj).unwrap();
        let back: ColoringJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_coloring(&p).unwrap(), c);

        let mut vals = vec![1i8; p.len()];
        vals[p.index("12").unwrap()] = -1;
        let f = Potential::from_signs(&p, vals).unwrap();
        let fj = PotentialJson::from_potential(&p, &f);
        let text = serde_json::to_string(&fj).unwrap();
        let back: PotentialJson = serde_json::from_str(&text).unwrap();
        let f2 = back.to_potential(&p).unwrap();
        assert_eq!(f2, f);
        // Wire format consistency: the coboundary of the decoded potential
        // matches coboundary of the original.
        assert_eq!(coboundary(&p, &f2), coboundary(&p, &f));
    }

    #[test]
    fn functor_round_trip() {
        let p = boolean_lattice(2).unwrap();
        let f = thincoh_core::complex::constant_functor(&p, 2, BaseRing::Rationals);
        let fj = FunctorJson::from_functor(&f);
        let text = serde_json::to_string(&fj).unwrap();
        let back: FunctorJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_functor().unwrap(), f);
    }

    #[test]
    fn ring_strings() {
        assert_eq!(parse_ring("Z").unwrap(), BaseRing::Integers);
        assert_eq!(parse_ring("Fp:7").unwrap(), BaseRing::PrimeField(7));
        assert!(parse_ring("Fp:9").is_err());
        assert!(parse_ring("R").is_err());
        assert_eq!(ring_to_string(BaseRing::PrimeField(5)), "Fp:5");
    }
}
