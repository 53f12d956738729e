//! Integral homology of the partial configuration spaces `rConf(k, R^n)`:
//! complements in `(R^n)^k` of the subspaces where some `r` of the `k`
//! points coincide.
//!
//! Two independent pipelines produce the answer from interval homology of
//! the partition lattice in [`crate::poset`]:
//!
//! * a lattice sum placing the reduced homology of each open interval
//!   `(bottom, x)` into complement degree `codim(x) - 2 - q`, and
//! * a wedge model joining each interval complex with a sphere of dimension
//!   `n * blocks(x) - 1` and translating model degree `j` to complement
//!   degree `nk - 2 - j`.
//!
//! [`rconf_homology`] runs both and refuses to answer unless they agree.
//! Interval homology depends only on the multiset of non-singleton block
//! sizes and not on `n`, so it is memoized process-wide by `(r, shape)`.

use dashmap::DashMap;
use once_cell::sync::Lazy;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::calculus::ConnValue;
use crate::complex::SimplicialComplex;
use crate::homology::{homological_connectivity, reduced_homology, BettiTable, HomologyGroup};
use crate::poset::{canonical_open_interval, r_equal_poset, Partition, PosetError};

/// Largest predicted simplex count for which a wedge summand is built as an
/// explicit join and run through elimination; larger summands reuse the
/// interval homology shifted by the sphere dimension.
const DIRECT_JOIN_SIMPLEX_CAP: u128 = 12_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArrangementError {
    #[error("invalid arrangement parameters: {0}")]
    InvalidParams(String),
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error("lattice sum and wedge model disagree for (k, n, r) = ({k}, {n}, {r}): {detail}")]
    ModelMismatch {
        k: u32,
        n: u32,
        r: u32,
        detail: String,
    },
}

fn validate_params(k: u32, n: u32, r: u32) -> Result<(), ArrangementError> {
    if k < 1 {
        return Err(ArrangementError::InvalidParams(
            "need at least one point (k >= 1)".into(),
        ));
    }
    if n < 1 {
        return Err(ArrangementError::InvalidParams(
            "ambient factor must have positive dimension (n >= 1)".into(),
        ));
    }
    if r < 2 {
        return Err(ArrangementError::InvalidParams(
            "coincidence multiplicity must be at least 2".into(),
        ));
    }
    Ok(())
}

/// Codimension in `(R^n)^k` of the subspace where the points are grouped
/// according to `p`: `n * (k - blocks(p))`.
pub fn codimension(p: &Partition, n: u32) -> u32 {
    n * (p.ground_size() - p.block_count())
}

#[derive(Clone)]
struct IntervalData {
    complex: SimplicialComplex,
    table: BettiTable,
    simplices: u128,
}

type ShapeKey = (u32, Vec<u32>);

static INTERVALS: Lazy<DashMap<ShapeKey, IntervalData>> = Lazy::new(DashMap::new);
static SUMMANDS: Lazy<DashMap<(ShapeKey, i64), BettiTable>> = Lazy::new(DashMap::new);

/// Order complex and reduced homology of the canonical open interval below
/// a partition of the given non-singleton block shape.
fn interval_data(r: u32, shape: &[u32]) -> IntervalData {
    let key = (r, shape.to_vec());
    if let Some(hit) = INTERVALS.get(&key) {
        return hit.clone();
    }
    let complex = canonical_open_interval(r, shape).order_complex();
    let table = reduced_homology(&complex);
    let simplices = complex.simplex_count() as u128;
    let data = IntervalData {
        complex,
        table,
        simplices,
    };
    INTERVALS.insert(key, data.clone());
    data
}

/// How a wedge summand's homology was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SummandStrategy {
    /// The join with the sphere was built and eliminated directly.
    DirectJoin,
    /// The interval table was shifted by the sphere dimension plus one.
    SuspensionShift,
}

fn predicted_join_size(interval_simplices: u128, d: i64) -> u128 {
    debug_assert!(d >= 1);
    if d >= 64 {
        return u128::MAX;
    }
    // Join simplex counts multiply after adjoining the empty face; the
    // boundary-of-simplex model of S^(d-1) has 2^(d+1) - 2 faces.
    let sphere_with_empty = (1u128 << (d as u32 + 1)) - 1;
    (interval_simplices + 1).saturating_mul(sphere_with_empty) - 1
}

/// Reduced homology of `interval * S^(d-1)` in model degrees, either by an
/// explicit join below [`DIRECT_JOIN_SIMPLEX_CAP`] or by shifting.
fn summand_model(r: u32, shape: &[u32], d: i64) -> (BettiTable, SummandStrategy) {
    let data = interval_data(r, shape);
    if predicted_join_size(data.simplices, d) > DIRECT_JOIN_SIMPLEX_CAP {
        return (data.table.shifted(d), SummandStrategy::SuspensionShift);
    }
    let key = ((r, shape.to_vec()), d);
    if let Some(hit) = SUMMANDS.get(&key) {
        return (hit.clone(), SummandStrategy::DirectJoin);
    }
    let sphere =
        SimplicialComplex::sphere_model(d - 1).expect("wedge spheres have dimension at least zero");
    let table = reduced_homology(&data.complex.join(&sphere));
    SUMMANDS.insert(key, table.clone());
    (table, SummandStrategy::DirectJoin)
}

/// One lattice element's contribution to the complement homology.
#[derive(Clone, Debug, Serialize)]
pub struct GmSummand {
    pub partition: String,
    pub shape: Vec<u32>,
    pub codim: u32,
    /// Reduced homology of the open interval below the partition.
    pub interval: BettiTable,
    /// The same groups placed in complement degrees `codim - 2 - q`.
    pub contribution: BettiTable,
}

/// The lattice-sum answer: reduced complement homology as a direct sum of
/// reindexed interval homology over all non-bottom lattice elements.
#[derive(Clone, Debug, Serialize)]
pub struct GmHomology {
    pub k: u32,
    pub n: u32,
    pub r: u32,
    pub reduced: BettiTable,
    pub summands: Vec<GmSummand>,
}

pub fn gm_homology(k: u32, n: u32, r: u32) -> Result<GmHomology, ArrangementError> {
    validate_params(k, n, r)?;
    let mut summands = Vec::new();
    if k >= r {
        let poset = r_equal_poset(k, r)?;
        let bottom = poset.bottom().expect("discrete partition is the bottom");
        summands = (0..poset.len())
            .into_par_iter()
            .filter(|&i| i != bottom)
            .map(|i| {
                let p = poset.element(i);
                let shape = p.big_block_shape();
                let codim = codimension(p, n);
                let interval = interval_data(r, &shape).table;
                let contribution = interval.reindexed(|q| codim as i64 - 2 - q);
                GmSummand {
                    partition: p.to_string(),
                    shape,
                    codim,
                    interval,
                    contribution,
                }
            })
            .collect();
    }
    let mut reduced = BettiTable::new(true);
    for s in &summands {
        reduced.add_table(&s.contribution);
    }
    Ok(GmHomology {
        k,
        n,
        r,
        reduced,
        summands,
    })
}

/// One sphere-join summand of the wedge model, in model degrees.
#[derive(Clone, Debug, Serialize)]
pub struct WedgeSummand {
    pub partition: String,
    pub shape: Vec<u32>,
    /// Dimension of the joined sphere, `n * blocks(p) - 1`.
    pub sphere_dim: i64,
    pub strategy: SummandStrategy,
    pub model: BettiTable,
}

/// The wedge-model answer: one sphere join per non-bottom lattice element,
/// with model degree `j` translating to complement degree `nk - 2 - j`.
#[derive(Clone, Debug, Serialize)]
pub struct WedgeModel {
    pub k: u32,
    pub n: u32,
    pub r: u32,
    pub total_dim: u32,
    pub model: BettiTable,
    pub translated: BettiTable,
    pub summands: Vec<WedgeSummand>,
}

pub fn zz_wedge_model(k: u32, n: u32, r: u32) -> Result<WedgeModel, ArrangementError> {
    validate_params(k, n, r)?;
    let mut summands = Vec::new();
    if k >= r {
        let poset = r_equal_poset(k, r)?;
        let bottom = poset.bottom().expect("discrete partition is the bottom");
        summands = (0..poset.len())
            .into_par_iter()
            .filter(|&i| i != bottom)
            .map(|i| {
                let p = poset.element(i);
                let shape = p.big_block_shape();
                let d = (n * p.block_count()) as i64;
                let (model, strategy) = summand_model(r, &shape, d);
                WedgeSummand {
                    partition: p.to_string(),
                    shape,
                    sphere_dim: d - 1,
                    strategy,
                    model,
                }
            })
            .collect();
    }
    let mut model = BettiTable::new(true);
    for s in &summands {
        model.add_table(&s.model);
    }
    let translated = model.reindexed(|j| (n * k) as i64 - 2 - j);
    Ok(WedgeModel {
        k,
        n,
        r,
        total_dim: n * k,
        model,
        translated,
        summands,
    })
}

/// Connectivity of `rConf(k, R^n)`: infinite below the multiplicity bound
/// (the complement is all of `(R^n)^k`), and `(r-1)n - 2` from there on.
pub fn rconf_connectivity(k: u32, n: u32, r: u32) -> Result<ConnValue, ArrangementError> {
    validate_params(k, n, r)?;
    if k < r {
        Ok(ConnValue::Infinite)
    } else {
        Ok(ConnValue::Finite(((r - 1) * n) as i64 - 2))
    }
}

/// Which pipeline produced an [`ArrangementHomology`] answer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum HomologyRoute {
    /// `k < r`: the arrangement is empty and the complement contractible.
    Contractible,
    /// `k = r`: the complement of the thin diagonal, a sphere.
    SphereAtMultiplicity,
    /// `k > r`: the full lattice sum, crosschecked against the wedge model.
    LatticeSum,
}

/// Integral homology of `rConf(k, R^n)` with its provenance: route taken,
/// connectivity, reduced and unreduced tables, and per-summand records.
#[derive(Clone, Debug, Serialize)]
pub struct ArrangementHomology {
    pub k: u32,
    pub n: u32,
    pub r: u32,
    pub ambient_dim: u32,
    pub route: HomologyRoute,
    pub connectivity: ConnValue,
    pub reduced: BettiTable,
    pub unreduced: BettiTable,
    pub torsion_present: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub summands: Vec<GmSummand>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

pub fn rconf_homology(k: u32, n: u32, r: u32) -> Result<ArrangementHomology, ArrangementError> {
    validate_params(k, n, r)?;
    let ambient_dim = n * k;
    if k < r {
        let reduced = BettiTable::new(true);
        let unreduced = reduced.to_unreduced();
        return Ok(ArrangementHomology {
            k,
            n,
            r,
            ambient_dim,
            route: HomologyRoute::Contractible,
            connectivity: ConnValue::Infinite,
            reduced,
            unreduced,
            torsion_present: false,
            summands: Vec::new(),
            notes: vec![format!(
                "fewer than r = {r} points cannot realize an r-fold coincidence; the \
                 complement is all of (R^n)^k"
            )],
        });
    }
    let gm = gm_homology(k, n, r)?;
    let zz = zz_wedge_model(k, n, r)?;
    if gm.reduced != zz.translated {
        return Err(ArrangementError::ModelMismatch {
            k,
            n,
            r,
            detail: format!(
                "lattice sum {} vs translated wedge model {}",
                serde_json::to_string(&gm.reduced).unwrap_or_else(|_| "<unprintable>".into()),
                serde_json::to_string(&zz.translated).unwrap_or_else(|_| "<unprintable>".into()),
            ),
        });
    }
    let mut notes = Vec::new();
    let route = if k == r {
        let sphere_degree = ((r - 1) * n) as i64 - 1;
        let mut sphere = BettiTable::new(true);
        sphere.add_group(sphere_degree, HomologyGroup::free(1));
        if gm.reduced != sphere {
            return Err(ArrangementError::ModelMismatch {
                k,
                n,
                r,
                detail: format!(
                    "the complement of the thin diagonal must be a {sphere_degree}-sphere, got {}",
                    serde_json::to_string(&gm.reduced).unwrap_or_else(|_| "<unprintable>".into()),
                ),
            });
        }
        notes.push(format!(
            "complement of the thin diagonal: homotopy equivalent to S^{sphere_degree}"
        ));
        HomologyRoute::SphereAtMultiplicity
    } else {
        HomologyRoute::LatticeSum
    };
    let connectivity = rconf_connectivity(k, n, r)?;
    let observed = homological_connectivity(&gm.reduced);
    if observed < connectivity {
        return Err(ArrangementError::ModelMismatch {
            k,
            n,
            r,
            detail: format!(
                "reduced homology appears in degree {} below the connectivity bound {}",
                match observed {
                    ConnValue::Finite(c) => (c + 1).to_string(),
                    ConnValue::Infinite => "infinity".into(),
                },
                connectivity
            ),
        });
    }
    let torsion_present = gm.reduced.has_torsion();
    if torsion_present {
        notes.push(
            "integral torsion detected; each torsion class is reported in the degree of \
             the lattice summand that produces it"
                .to_string(),
        );
    }
    let unreduced = gm.reduced.to_unreduced();
    Ok(ArrangementHomology {
        k,
        n,
        r,
        ambient_dim,
        route,
        connectivity,
        reduced: gm.reduced,
        unreduced,
        torsion_present,
        summands: gm.summands,
        notes,
    })
}

/// Coefficients of the Poincare polynomial of `2Conf(k, R^n)`: the product
/// of `(1 + i t^(n-1))` for `i = 1, .., k-1`.
pub fn conf_poincare(k: u32, n: u32) -> Result<Vec<u128>, ArrangementError> {
    if k < 1 || n < 1 {
        return Err(ArrangementError::InvalidParams(
            "Poincare polynomial needs k >= 1 and n >= 1".into(),
        ));
    }
    let step = (n - 1) as usize;
    let mut coeffs = vec![0u128; (k as usize - 1) * step + 1];
    coeffs[0] = 1;
    for i in 1..k as u128 {
        if step == 0 {
            coeffs[0] *= 1 + i;
            continue;
        }
        for d in (0..coeffs.len()).rev() {
            if coeffs[d] != 0 && d + step < coeffs.len() {
                coeffs[d + step] += i * coeffs[d];
            }
        }
    }
    Ok(coeffs)
}

/// Comparison of computed pairwise-configuration-space homology against the
/// closed-form Poincare polynomial.
#[derive(Clone, Debug, Serialize)]
pub struct PoincareCheck {
    pub k: u32,
    pub n: u32,
    pub expected: Vec<u128>,
    pub computed: Vec<u128>,
    pub torsion_free: bool,
    pub matches: bool,
}

/// Betti numbers of an unreduced table as a dense vector from degree zero.
pub fn betti_vector(table: &BettiTable) -> Vec<u128> {
    let top = table.max_degree().unwrap_or(0).max(0);
    (0..=top).map(|d| table.betti(d) as u128).collect()
}

pub fn conf_poincare_check(k: u32, n: u32) -> Result<PoincareCheck, ArrangementError> {
    if n < 2 {
        return Err(ArrangementError::InvalidParams(
            "the product formula comparison needs n >= 2".into(),
        ));
    }
    if k > 6 {
        return Err(ArrangementError::InvalidParams(format!(
            "pairwise comparison is capped at k = 6 (the lattice for k = {k} has {} \
             elements)",
            crate::poset::count_r_valid_partitions(k, 2)
        )));
    }
    let expected = conf_poincare(k, n)?;
    let answer = rconf_homology(k, n, 2)?;
    let computed = betti_vector(&answer.unreduced);
    let torsion_free = !answer.torsion_present;
    let matches = torsion_free && expected == computed;
    Ok(PoincareCheck {
        k,
        n,
        expected,
        computed,
        torsion_free,
        matches,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::Partition;

    fn unreduced_vec(k: u32, n: u32, r: u32) -> Vec<u128> {
        let answer = rconf_homology(k, n, r).unwrap();
        assert!(
            !answer.torsion_present,
            "unexpected torsion at ({k}, {n}, {r})"
        );
        betti_vector(&answer.unreduced)
    }

    #[test]
    fn codimension_counts_merged_points() {
        let p = Partition::new(4, vec![vec![1, 2], vec![3], vec![4]]).unwrap();
        assert_eq!(codimension(&p, 2), 2);
        assert_eq!(codimension(&Partition::single_block(5), 3), 12);
        assert_eq!(codimension(&Partition::discrete(6), 7), 0);
    }

    #[test]
    fn contractible_below_multiplicity() {
        for (k, n, r) in [(2, 3, 3), (1, 2, 2), (3, 1, 4), (4, 2, 5)] {
            let answer = rconf_homology(k, n, r).unwrap();
            assert_eq!(answer.route, HomologyRoute::Contractible);
            assert_eq!(answer.connectivity, ConnValue::Infinite);
            assert!(answer.reduced.is_trivial());
            assert_eq!(betti_vector(&answer.unreduced), vec![1]);
        }
    }

    #[test]
    fn sphere_at_the_multiplicity_bound() {
        for (r, n) in [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (3, 3), (4, 2)] {
            let answer = rconf_homology(r, n, r).unwrap();
            assert_eq!(answer.route, HomologyRoute::SphereAtMultiplicity);
            let degree = ((r - 1) * n) as i64 - 1;
            assert_eq!(answer.reduced.betti(degree), 1);
            assert_eq!(
                answer.reduced.degrees().collect::<Vec<_>>(),
                vec![degree],
                "r = {r}, n = {n}"
            );
            assert_eq!(
                answer.connectivity,
                ConnValue::Finite(degree - 1),
                "r = {r}, n = {n}"
            );
        }
    }

    #[test]
    fn pairwise_complements_on_the_line_are_permutations() {
        assert_eq!(unreduced_vec(2, 1, 2), vec![2]);
        assert_eq!(unreduced_vec(3, 1, 2), vec![6]);
        assert_eq!(unreduced_vec(4, 1, 2), vec![24]);
        assert_eq!(unreduced_vec(5, 1, 2), vec![120]);
    }

    #[test]
    fn pairwise_complements_in_the_plane() {
        assert_eq!(unreduced_vec(3, 2, 2), vec![1, 3, 2]);
        assert_eq!(unreduced_vec(4, 2, 2), vec![1, 6, 11, 6]);
    }

    #[test]
    fn threefold_complements_on_the_line() {
        assert_eq!(unreduced_vec(3, 1, 3), vec![1, 1]);
        assert_eq!(unreduced_vec(4, 1, 3), vec![1, 7]);
        assert_eq!(unreduced_vec(5, 1, 3), vec![1, 31]);
        assert_eq!(unreduced_vec(6, 1, 3), vec![1, 111, 20]);
    }

    #[test]
    fn threefold_complements_in_higher_ambient_dimension() {
        assert_eq!(unreduced_vec(3, 2, 3), vec![1, 0, 0, 1]);
        assert_eq!(unreduced_vec(4, 2, 3), vec![1, 0, 0, 4, 3]);
        assert_eq!(unreduced_vec(5, 2, 3), vec![1, 0, 0, 10, 15, 6]);
        assert_eq!(unreduced_vec(4, 3, 3), vec![1, 0, 0, 0, 0, 4, 0, 3]);
    }

    #[test]
    fn fourfold_complement_on_the_line() {
        assert_eq!(unreduced_vec(5, 1, 4), vec![1, 0, 9]);
    }

    #[test]
    fn lattice_sum_matches_wedge_model_summand_by_summand() {
        let gm = gm_homology(5, 2, 3).unwrap();
        let zz = zz_wedge_model(5, 2, 3).unwrap();
        assert_eq!(gm.summands.len(), zz.summands.len());
        let total: i64 = 2 * 5 - 2;
        for (a, b) in gm.summands.iter().zip(&zz.summands) {
            assert_eq!(a.partition, b.partition);
            assert_eq!(a.shape, b.shape);
            assert_eq!(
                a.contribution,
                b.model.reindexed(|j| total - j),
                "summand {}",
                a.partition
            );
        }
    }

    #[test]
    fn both_summand_strategies_appear() {
        INTERVALS.clear();
        SUMMANDS.clear();
        let zz = zz_wedge_model(6, 1, 2).unwrap();
        let strategies: Vec<SummandStrategy> = zz.summands.iter().map(|s| s.strategy).collect();
        assert!(strategies.contains(&SummandStrategy::DirectJoin));
        assert!(strategies.contains(&SummandStrategy::SuspensionShift));
        assert_eq!(
            betti_vector(&rconf_homology(6, 1, 2).unwrap().unreduced),
            vec![720]
        );
    }

    #[test]
    fn direct_join_and_shift_agree_on_small_summands() {
        let cases: &[(u32, &[u32])] = &[
            (2, &[2]),
            (2, &[3]),
            (2, &[2, 2]),
            (2, &[4]),
            (2, &[3, 2]),
            (2, &[5]),
            (3, &[3]),
            (3, &[4]),
            (3, &[5]),
            (4, &[4]),
            (4, &[5]),
        ];
        for &(r, shape) in cases {
            let data = interval_data(r, shape);
            for d in 1..=3i64 {
                let sphere = SimplicialComplex::sphere_model(d - 1).unwrap();
                let direct = reduced_homology(&data.complex.join(&sphere));
                let shifted = data.table.shifted(d);
                assert_eq!(direct, shifted, "r = {r}, shape = {shape:?}, d = {d}");
            }
        }
    }

    #[test]
    fn connectivity_matches_homology_exactly_in_range() {
        for r in 2..=4u32 {
            for k in r..=5 {
                for n in 1..=2u32 {
                    let answer = rconf_homology(k, n, r).unwrap();
                    assert_eq!(
                        homological_connectivity(&answer.reduced),
                        answer.connectivity,
                        "k = {k}, n = {n}, r = {r}"
                    );
                }
            }
        }
        assert_eq!(rconf_connectivity(2, 3, 3).unwrap(), ConnValue::Infinite);
        assert_eq!(rconf_connectivity(5, 2, 3).unwrap(), ConnValue::Finite(2));
    }

    #[test]
    fn poincare_polynomial_coefficients() {
        assert_eq!(conf_poincare(1, 3).unwrap(), vec![1]);
        assert_eq!(conf_poincare(4, 2).unwrap(), vec![1, 6, 11, 6]);
        assert_eq!(conf_poincare(3, 3).unwrap(), vec![1, 0, 3, 0, 2]);
        assert_eq!(conf_poincare(3, 1).unwrap(), vec![6]);
    }

    #[test]
    fn poincare_check_agrees_with_homology() {
        for (k, n) in [(2, 2), (3, 2), (4, 2), (3, 3), (4, 3)] {
            let check = conf_poincare_check(k, n).unwrap();
            assert!(check.matches, "k = {k}, n = {n}: {check:?}");
            assert!(check.torsion_free);
        }
    }

    #[test]
    fn poincare_check_rejects_out_of_range_parameters() {
        assert!(matches!(
            conf_poincare_check(3, 1),
            Err(ArrangementError::InvalidParams(_))
        ));
        let err = conf_poincare_check(7, 2).unwrap_err();
        let ArrangementError::InvalidParams(msg) = err else {
            panic!("expected a parameter error");
        };
        assert!(msg.contains("877"), "estimate missing from: {msg}");
    }

    #[test]
    fn parameter_validation() {
        assert!(matches!(
            rconf_homology(0, 2, 2),
            Err(ArrangementError::InvalidParams(_))
        ));
        assert!(matches!(
            rconf_homology(3, 0, 2),
            Err(ArrangementError::InvalidParams(_))
        ));
        assert!(matches!(
            rconf_homology(3, 2, 1),
            Err(ArrangementError::InvalidParams(_))
        ));
    }

    #[test]
    fn summand_records_are_complete() {
        let answer = rconf_homology(4, 1, 3).unwrap();
        assert_eq!(answer.route, HomologyRoute::LatticeSum);
        assert_eq!(answer.summands.len(), 5);
        let mut total = BettiTable::new(true);
        for s in &answer.summands {
            total.add_table(&s.contribution);
        }
        assert_eq!(total, answer.reduced);
        let atom_count = answer
            .summands
            .iter()
            .filter(|s| s.shape == vec![3])
            .count();
        assert_eq!(atom_count, 4);
    }
}
