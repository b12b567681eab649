//! Brute-force multigraded Betti numbers.
//!
//! `β_{i,a}(I) = dim H̃_{i-1}(K^a(I))` where `K^a(I)` is the upper Koszul complex
//! `{F ⊆ supp(a) squarefree : x^{a-F} ∈ I}`. Nonzero values only occur at
//! multidegrees in the lcm lattice of the minimal generators.

use std::collections::{BTreeMap, HashSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{rank_bareiss, rank_mod_p, DEFAULT_PRIME};
use crate::monomial::{IdealJson, Monomial, MonomialIdeal};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Field {
    /// Characteristic zero, via fraction-free integer elimination.
    Rational,
    Prime(u64),
}

#[derive(Clone, Copy, Debug)]
pub struct OracleConfig {
    /// Largest lcm lattice the oracle will scan.
    pub lattice_cap: usize,
    pub field: Field,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            lattice_cap: 50_000,
            field: Field::Rational,
        }
    }
}

/// A simplicial complex on a set of vertex labels, stored by facets as bitmasks
/// over the positions of `ground`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    ground: Vec<usize>,
    facets: Vec<u32>,
}

impl SimplicialComplex {
    /// The complex generated by `faces` (given as vertex-label lists). An empty
    /// list gives the void complex; `[[]]` gives `{∅}`.
    pub fn from_faces(ground: Vec<usize>, faces: &[Vec<usize>]) -> Self {
        let masks = faces
            .iter()
            .map(|f| f.iter().fold(0u32, |m, v| m | 1 << ground.iter().position(|g| g == v).expect("vertex in ground set")))
            .collect();
        Self::from_masks(ground, masks)
    }

    fn from_masks(ground: Vec<usize>, mut faces: Vec<u32>) -> Self {
        faces.sort_unstable_by_key(|m| std::cmp::Reverse(m.count_ones()));
        let mut facets: Vec<u32> = Vec::new();
        for f in faces {
            if !facets.iter().any(|&g| g & f == f) {
                facets.push(f);
            }
        }
        facets.sort_unstable();
        SimplicialComplex { ground, facets }
    }

    pub fn ground(&self) -> &[usize] {
        &self.ground
    }

    /// No faces at all, not even `∅`.
    pub fn is_void(&self) -> bool {
        self.facets.is_empty()
    }

    pub fn facets(&self) -> Vec<Vec<usize>> {
        self.facets.iter().map(|&m| self.labels(m)).collect()
    }

    fn labels(&self, mask: u32) -> Vec<usize> {
        (0..self.ground.len()).filter(|&k| mask >> k & 1 == 1).map(|k| self.ground[k]).collect()
    }

    /// Faces of dimension `d` (`d = -1` is `∅`), as sorted bitmasks.
    fn faces_of_dim(&self, d: isize) -> Vec<u32> {
        if d < -1 {
            return Vec::new();
        }
        let size = (d + 1) as u32;
        (0u32..1 << self.ground.len())
            .filter(|m| m.count_ones() == size && self.facets.iter().any(|&f| f & m == *m))
            .collect()
    }

    fn boundary_rank(&self, d: isize, field: Field) -> usize {
        let cols = self.faces_of_dim(d);
        let rows = self.faces_of_dim(d - 1);
        if cols.is_empty() || rows.is_empty() {
            return 0;
        }
        let matrix: Vec<Vec<i64>> = rows
            .iter()
            .map(|&r| {
                cols.iter()
                    .map(|&c| {
                        if c & r != r {
                            return 0;
                        }
                        // sign (-1)^position of the removed vertex within c
                        let removed = c ^ r;
                        let pos = (c & (removed - 1)).count_ones();
                        if pos % 2 == 0 {
                            1
                        } else {
                            -1
                        }
                    })
                    .collect()
            })
            .collect();
        match field {
            Field::Rational => rank_bareiss(&matrix),
            Field::Prime(p) => rank_mod_p(&matrix, p),
        }
    }
}

/// `dim H̃_i(c)` over `field`.
pub fn reduced_homology_rank(c: &SimplicialComplex, i: isize, field: Field) -> usize {
    let faces = c.faces_of_dim(i).len();
    if faces == 0 {
        return 0;
    }
    faces - c.boundary_rank(i, field) - c.boundary_rank(i + 1, field)
}

/// `K^a(I)`.
pub fn upper_koszul(ideal: &MonomialIdeal, a: &Monomial) -> SimplicialComplex {
    let ground = a.support();
    let faces = (0u32..1 << ground.len())
        .filter(|&mask| {
            let mut exps = a.exponents().to_vec();
            for (k, &v) in ground.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    exps[v - 1] -= 1;
                }
            }
            ideal.contains(&Monomial::from_exponents(exps))
        })
        .collect();
    SimplicialComplex::from_masks(ground, faces)
}

/// `β_{i,a}(I)`.
pub fn betti(ideal: &MonomialIdeal, i: usize, a: &Monomial, field: Field) -> usize {
    reduced_homology_rank(&upper_koszul(ideal, a), i as isize - 1, field)
}

/// All lcms of nonempty subsets of the minimal generators.
pub fn lcm_lattice(ideal: &MonomialIdeal, cap: usize) -> Result<Vec<Monomial>> {
    let mut seen: HashSet<Monomial> = HashSet::new();
    let mut order: Vec<Monomial> = Vec::new();
    for g in ideal.generators() {
        let mut fresh = Vec::new();
        if !seen.contains(g) {
            fresh.push(g.clone());
        }
        for l in &order {
            let j = l.lcm(g);
            if !seen.contains(&j) {
                fresh.push(j);
            }
        }
        for m in fresh {
            if seen.insert(m.clone()) {
                order.push(m);
                if order.len() > cap {
                    return Err(Error::LatticeCap { cap });
                }
            }
        }
    }
    order.sort();
    Ok(order)
}

/// Nonzero multigraded Betti numbers of an ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    nvars: usize,
    entries: BTreeMap<(usize, Monomial), usize>,
}

impl BettiTable {
    pub fn compute(ideal: &MonomialIdeal, cfg: &OracleConfig) -> Result<Self> {
        let lattice = lcm_lattice(ideal, cfg.lattice_cap)?;
        let entries = lattice
            .par_iter()
            .flat_map_iter(|a| {
                let k = upper_koszul(ideal, a);
                let top = a.support().len();
                (0..=top)
                    .filter_map(|i| {
                        let b = reduced_homology_rank(&k, i as isize - 1, cfg.field);
                        (b > 0).then(|| ((i, a.clone()), b))
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
        Ok(BettiTable {
            nvars: ideal.nvars(),
            entries,
        })
    }

    pub fn get(&self, i: usize, a: &Monomial) -> usize {
        self.entries.get(&(i, a.clone())).copied().unwrap_or(0)
    }

    /// `(i, a, β_{i,a})` sorted by `i`, then lexicographically by `a`.
    pub fn iter(&self) -> impl Iterator<Item = (usize, &Monomial, usize)> {
        self.entries.iter().map(|((i, a), b)| (*i, a, *b))
    }

    /// Largest `i` with a nonzero entry; `None` for the zero ideal.
    pub fn max_index(&self) -> Option<usize> {
        self.entries.keys().map(|(i, _)| *i).max()
    }

    /// `HS_i(I) = (x^a : β_{i,a} ≠ 0)`.
    pub fn hs(&self, i: usize) -> MonomialIdeal {
        MonomialIdeal::from_generators(self.nvars, self.iter().filter(|(j, _, _)| *j == i).map(|(_, a, _)| a.clone()))
    }

    /// Total Betti numbers `β_i = Σ_a β_{i,a}`, indexed by `i`.
    pub fn totals(&self) -> Vec<usize> {
        let mut out = vec![0; self.max_index().map_or(0, |m| m + 1)];
        for (i, _, b) in self.iter() {
            out[i] += b;
        }
        out
    }

    pub fn to_json(&self, ideal: &MonomialIdeal) -> BettiJson {
        BettiJson {
            ideal: ideal.to_json(),
            entries: self
                .iter()
                .map(|(i, a, beta)| BettiEntry {
                    i,
                    deg: a.exponents().to_vec(),
                    beta,
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BettiJson {
    pub ideal: IdealJson,
    pub entries: Vec<BettiEntry>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BettiEntry {
    pub i: usize,
    pub deg: Vec<u32>,
    pub beta: usize,
}

pub fn hs_oracle(ideal: &MonomialIdeal, i: usize, cfg: &OracleConfig) -> Result<MonomialIdeal> {
    Ok(BettiTable::compute(ideal, cfg)?.hs(i))
}

pub fn pd_oracle(ideal: &MonomialIdeal, cfg: &OracleConfig) -> Result<usize> {
    if ideal.is_zero() {
        return Err(Error::precondition("the zero ideal has no projective dimension"));
    }
    Ok(BettiTable::compute(ideal, cfg)?.max_index().unwrap_or(0))
}

/// `β_{i,a}(J) ≤ β_{i,a}(I)` for every `i` and `a`. Both tables cover their lcm
/// lattices, and Betti numbers vanish off the lattice, so comparing over the
/// support of `J`'s table covers the union.
pub fn betti_monotonicity_check(j: &MonomialIdeal, i: &MonomialIdeal, cfg: &OracleConfig) -> Result<bool> {
    let tj = BettiTable::compute(j, cfg)?;
    let ti = BettiTable::compute(i, cfg)?;
    let ok = tj.iter().all(|(k, a, b)| b <= ti.get(k, a));
    Ok(ok)
}

/// Rational and prime-field homology agree for every multidegree of the lattice.
pub fn characteristic_agrees(ideal: &MonomialIdeal, cap: usize) -> Result<bool> {
    let lattice = lcm_lattice(ideal, cap)?;
    Ok(lattice.par_iter().all(|a| {
        let k = upper_koszul(ideal, a);
        (-1..a.support().len() as isize)
            .all(|d| reduced_homology_rank(&k, d, Field::Rational) == reduced_homology_rank(&k, d, Field::Prime(DEFAULT_PRIME)))
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::comp_edge::comp_edge_ideal;
    use crate::graph::Graph;

    fn sq(n: usize, support: &[usize]) -> Monomial {
        Monomial::squarefree(n, support.iter().copied())
    }

    fn ideal(n: usize, gens: &[&[usize]]) -> MonomialIdeal {
        MonomialIdeal::from_generators(n, gens.iter().map(|g| sq(n, g)))
    }

    const Q: Field = Field::Rational;

    #[test]
    fn koszul_complexes() {
        let i = ideal(3, &[&[1], &[3]]);
        let k = upper_koszul(&i, &sq(3, &[1, 3]));
        assert_eq!(k.facets(), vec![vec![1], vec![3]]);
        let k = upper_koszul(&i, &sq(3, &[1]));
        assert_eq!(k.facets(), vec![Vec::<usize>::new()]);
        assert!(upper_koszul(&i, &sq(3, &[2])).is_void());
    }

    #[test]
    fn homology_of_small_complexes() {
        let two_points = SimplicialComplex::from_faces(vec![1, 2], &[vec![1], vec![2]]);
        assert_eq!(reduced_homology_rank(&two_points, 0, Q), 1);
        assert_eq!(reduced_homology_rank(&two_points, -1, Q), 0);
        let hollow = SimplicialComplex::from_faces(vec![1, 2, 3], &[vec![1, 2], vec![1, 3], vec![2, 3]]);
        assert_eq!(reduced_homology_rank(&hollow, 1, Q), 1);
        assert_eq!(reduced_homology_rank(&hollow, 0, Q), 0);
        let full = SimplicialComplex::from_faces(vec![1, 2, 3], &[vec![1, 2, 3]]);
        assert!((-1..=2).all(|i| reduced_homology_rank(&full, i, Q) == 0));
        let empty_face = SimplicialComplex::from_faces(vec![], &[vec![]]);
        assert_eq!(reduced_homology_rank(&empty_face, -1, Q), 1);
        let void = SimplicialComplex::from_faces(vec![], &[]);
        assert_eq!(reduced_homology_rank(&void, -1, Q), 0);
    }

    #[test]
    fn projective_plane_depends_on_characteristic() {
        // six-vertex triangulation of RP^2: H̃_1 = Z/2
        let faces = [
            [1, 2, 3], [1, 3, 4], [1, 4, 5], [1, 5, 6], [1, 2, 6],
            [2, 3, 5], [3, 4, 6], [2, 4, 5], [2, 4, 6], [3, 5, 6],
        ];
        let rp2 = SimplicialComplex::from_faces((1..=6).collect(), &faces.map(|f| f.to_vec()));
        assert_eq!(reduced_homology_rank(&rp2, 1, Q), 0);
        assert_eq!(reduced_homology_rank(&rp2, 1, Field::Prime(2)), 1);
        assert_eq!(reduced_homology_rank(&rp2, 2, Field::Prime(2)), 1);
    }

    #[test]
    fn betti_numbers() {
        let i = ideal(3, &[&[1], &[3]]);
        assert_eq!(betti(&i, 1, &sq(3, &[1, 3]), Q), 1);
        assert_eq!(betti(&i, 0, &sq(3, &[1]), Q), 1);
        let j = ideal(3, &[&[1, 2], &[2, 3]]);
        assert_eq!(betti(&j, 0, &sq(3, &[1, 2, 3]), Q), 0);
    }

    #[test]
    fn oracle_hs_and_pd() {
        let cfg = OracleConfig::default();
        let i = ideal(3, &[&[1], &[3]]);
        assert_eq!(hs_oracle(&i, 1, &cfg).unwrap(), ideal(3, &[&[1, 3]]));
        assert_eq!(pd_oracle(&i, &cfg).unwrap(), 1);
        let c4 = comp_edge_ideal(&Graph::cycle(4).unwrap()).unwrap();
        assert_eq!(hs_oracle(&c4, 0, &cfg).unwrap(), c4);
        assert_eq!(hs_oracle(&c4, 2, &cfg).unwrap(), MonomialIdeal::principal(Monomial::alpha(4)));
        assert_eq!(pd_oracle(&c4, &cfg).unwrap(), 2);
        assert_eq!(pd_oracle(&MonomialIdeal::principal(sq(3, &[1, 2])), &cfg).unwrap(), 0);
        assert!(pd_oracle(&MonomialIdeal::zero(3), &cfg).is_err());
    }

    #[test]
    fn lattice_cap_is_enforced() {
        let m = MonomialIdeal::maximal(6);
        assert_eq!(lcm_lattice(&m, 100).unwrap().len(), 63);
        assert!(matches!(lcm_lattice(&m, 10), Err(Error::LatticeCap { cap: 10 })));
    }

    #[test]
    fn table_json_is_sorted() {
        let i = ideal(3, &[&[1], &[3]]);
        let t = BettiTable::compute(&i, &OracleConfig::default()).unwrap();
        let json = serde_json::to_string(&t.to_json(&i)).unwrap();
        assert_eq!(
            json,
            r#"{"ideal":{"n":3,"gens":[[1,0,0],[0,0,1]]},"entries":[{"i":0,"deg":[0,0,1],"beta":1},{"i":0,"deg":[1,0,0],"beta":1},{"i":1,"deg":[1,0,1],"beta":1}]}"#
        );
        assert_eq!(t.totals(), vec![2, 1]);
    }

    #[test]
    fn monotone_under_inclusion() {
        let cfg = OracleConfig::default();
        let c4 = comp_edge_ideal(&Graph::cycle(4).unwrap()).unwrap();
        let u = c4.generators()[0].clone();
        let square = c4.power(2);
        assert!(betti_monotonicity_check(&c4.mul_monomial(&u), &square, &cfg).unwrap());
        assert!(betti_monotonicity_check(&c4, &c4, &cfg).unwrap());
        let p4 = comp_edge_ideal(&Graph::path(4)).unwrap();
        let x1 = Monomial::var(4, 1);
        // x1·I_c(P3 on {2,3,4}) ⊆ I_c(P4)
        let sub = ideal(4, &[&[2], &[4]]).mul_monomial(&x1);
        assert!(betti_monotonicity_check(&sub, &p4, &cfg).unwrap());
    }

    #[test]
    fn linear_resolutions_are_concentrated() {
        let cfg = OracleConfig::default();
        for g in [Graph::cycle(5).unwrap(), Graph::path(5), Graph::complete(4)] {
            let i = comp_edge_ideal(&g).unwrap().power(2);
            let d = i.single_degree().unwrap();
            let t = BettiTable::compute(&i, &cfg).unwrap();
            assert!(t.iter().all(|(k, a, _)| a.degree() == d + k as u32));
            assert!(characteristic_agrees(&i, cfg.lattice_cap).unwrap());
        }
    }
}
