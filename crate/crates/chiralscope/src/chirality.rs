//! Classification of generating pairs `(x, t)` for chirality.
//!
//! A pair gives a chiral polyhedron exactly when it generates, `t` is an
//! involution, and no automorphism of the generated group inverts `x` while
//! fixing `t`. The last condition is decided algebraically by the D-test:
//! glue `(x, x⁻¹)` and `(t, t)` into the direct square acting on two copies
//! of the domain; the subgroup `D` they generate has the order of `H` if and
//! only if it is the graph of such an automorphism. This sees all of
//! `Aut(H)`, inner or outer, with no auxiliary representation of the
//! automorphism group.
//!
//! An automorphism α fixing `t` and inverting `x` has α² fixing both
//! generators, so α² = 1; when `order(x) ≥ 3` it is automatically an
//! involution and bare existence decides reflexibility.

use std::collections::{BTreeMap, HashSet};

use num_bigint::BigUint;
use rand::SeedableRng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::group::{BuildOutcome, PermGroup, StabilizerChain};
use crate::perm::Permutation;

/// A candidate pair: `x` the rotation, `t` the flipping involution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenPair {
    pub x: Permutation,
    pub t: Permutation,
}

impl GenPair {
    pub fn new(x: Permutation, t: Permutation) -> GenPair {
        GenPair { x, t }
    }

    /// From rotations `(x, y)`, with `t := x·y`.
    pub fn from_rotations(x: Permutation, y: Permutation) -> GenPair {
        let t = x.compose(&y);
        GenPair { x, t }
    }

    /// The second rotation `y = x⁻¹·t`.
    pub fn y(&self) -> Permutation {
        self.x.inverse().compose(&self.t)
    }

    /// The mirror pair `(x⁻¹, t)`.
    pub fn enantiomorph(&self) -> GenPair {
        GenPair {
            x: self.x.inverse(),
            t: self.t.clone(),
        }
    }
}

/// Full classification record for a pair against an ambient group.
#[derive(Clone, Debug)]
pub struct PairVerdict {
    pub generates: bool,
    pub t_is_involution: bool,
    pub x_order: u128,
    pub y_order: u128,
    /// Some automorphism of `⟨x,t⟩` inverts `x` and fixes `t`.
    pub reflexible: bool,
    pub chiral: bool,
    pub schlafli_type: (u128, u128),
    /// `⟨x⟩ ∩ ⟨y⟩` is trivial (the polytopality condition; recorded, not
    /// required for `chiral`).
    pub intersection_ok: bool,
}

/// Decides whether some automorphism of `H = ⟨x1,t1⟩` maps `(x1,t1)` to
/// `(x2,t2)`. Returns false immediately if `(x2,t2)` does not generate `H`.
pub fn tuple_equivalent(
    x1: &Permutation,
    t1: &Permutation,
    x2: &Permutation,
    t2: &Permutation,
) -> Result<bool> {
    let degree = x1.degree();
    for p in [t1, x2, t2] {
        if p.degree() != degree {
            return Err(Error::DegreeMismatch {
                expected: degree,
                got: p.degree(),
            });
        }
    }
    let h = StabilizerChain::build(degree, &[x1.clone(), t1.clone()], &[]);
    if !(h.contains(x2) && h.contains(t2)) {
        return Ok(false);
    }
    let h2 = StabilizerChain::build(degree, &[x2.clone(), t2.clone()], &[]);
    if h2.order() != h.order() {
        return Ok(false);
    }
    Ok(graph_test(&h, x1, t1, x2, t2))
}

/// Core of the D-test, assuming `⟨x2,t2⟩ = ⟨x1,t1⟩ = H` (caller-checked):
/// true iff `|⟨(x1,x2),(t1,t2)⟩| = |H|` in the direct square.
fn graph_test(
    h: &StabilizerChain,
    x1: &Permutation,
    t1: &Permutation,
    x2: &Permutation,
    t2: &Permutation,
) -> bool {
    let glued = [x1.glue(x2), t1.glue(t2)];
    match h.order_u128() {
        Some(order) => {
            match StabilizerChain::build_with_threshold(2 * h.degree(), &glued, &[], Some(order)) {
                BuildOutcome::ExceededThreshold => false,
                // |D| ≥ |H| always (D projects onto H); completion under the
                // threshold forces equality.
                BuildOutcome::Complete(_) => true,
            }
        }
        None => {
            let d = StabilizerChain::build(2 * h.degree(), &glued, &[]);
            d.order() == h.order()
        }
    }
}

/// Classifies `(x, t)` against the ambient group `G`.
pub fn classify_pair(g: &PermGroup, pair: &GenPair) -> Result<PairVerdict> {
    if !(g.contains(&pair.x)? && g.contains(&pair.t)?) {
        return Err(Error::NotInGroup {
            what: "classify_pair",
        });
    }
    let h = StabilizerChain::build(g.degree(), &[pair.x.clone(), pair.t.clone()], &[]);
    Ok(classify_with_chain(g, pair, &h))
}

fn classify_with_chain(g: &PermGroup, pair: &GenPair, h: &StabilizerChain) -> PairVerdict {
    let x_order = pair.x.order();
    let y = pair.y();
    let y_order = y.order();
    let t_is_involution = pair.t.order() == 2;
    let generates = h.order() == *g.order();
    let reflexible = if x_order <= 2 {
        // x = x⁻¹: the identity automorphism witnesses reflexibility.
        true
    } else {
        let x_inv = pair.x.inverse();
        graph_test(h, &pair.x, &pair.t, &x_inv, &pair.t)
    };
    let chiral = generates && t_is_involution && x_order >= 3 && !reflexible;
    let intersection_ok = cyclic_intersection_trivial(&pair.x, &y);
    PairVerdict {
        generates,
        t_is_involution,
        x_order,
        y_order,
        reflexible,
        chiral,
        schlafli_type: (x_order, y_order),
        intersection_ok,
    }
}

/// `⟨a⟩ ∩ ⟨b⟩ = 1`, by listing powers. Element orders at desk scale are
/// tiny; guard anyway.
fn cyclic_intersection_trivial(a: &Permutation, b: &Permutation) -> bool {
    let (oa, ob) = (a.order(), b.order());
    assert!(
        oa <= 1_000_000 && ob <= 1_000_000,
        "cyclic subgroup too large to list"
    );
    let mut powers: HashSet<Permutation> = HashSet::new();
    let mut p = b.clone();
    while !p.is_identity() {
        powers.insert(p.clone());
        p = p.compose(b);
    }
    let mut q = a.clone();
    while !q.is_identity() {
        if powers.contains(&q) {
            return false;
        }
        q = q.compose(a);
    }
    true
}

/// Exhaustive census of chiral pairs in `G`, counted up to isomorphism of
/// the resulting polyhedra.
#[derive(Clone, Debug)]
pub struct ChiralCensus {
    pub group_name: String,
    pub group_order: BigUint,
    /// Order of the outer automorphism group (supplied metadata).
    pub out_order: u64,
    /// Ordered pairs `(x, t)` satisfying the three chirality conditions.
    pub total_chiral_pairs: u128,
    /// Non-isomorphic chiral polyhedra in the published counting
    /// convention: automorphism orbits of pairs, i.e. the pair total divided
    /// by `|G|·out_order`. Mirror-image forms count separately; they pair
    /// orbits up, so this is always even (see `enantiomorph_classes`).
    pub polyhedra_count: u64,
    /// Orbits up to enantiomorphy: `polyhedra_count / 2`.
    pub enantiomorph_classes: u64,
    /// Polyhedra by Schläfli type `{p, q}`.
    pub by_type: BTreeMap<(u128, u128), u64>,
    /// Same census restricted to pairs with trivial `⟨x⟩ ∩ ⟨y⟩`. Recorded
    /// for comparison with the unrestricted convention.
    pub polyhedra_count_polytopal: u64,
}

/// Counts chiral pairs by scanning (class representative, involution)
/// candidates; all three conditions are invariant under simultaneous
/// conjugation, so each class representative stands for its whole class.
///
/// `Aut(G)` acts freely on generating pairs (an automorphism fixing both
/// generators is the identity), so orbits have size `|Aut(G)| =
/// |G|·out_order` exactly and the division by it is exact; a remainder is
/// reported as an integrity error. The two enantiomorphic orbits of a
/// chiral pair are always distinct (an automorphism joining them would make
/// the pair reflexible), so the orbit count is even; the published censuses
/// count orbits, not enantiomorph classes.
pub fn count_chiral_pairs(g: &PermGroup, name: &str, out_order: u64) -> Result<ChiralCensus> {
    let order = g
        .order_u128()
        .ok_or_else(|| Error::integrity("group order exceeds u128"))?;
    if out_order == 0 {
        return Err(Error::argument("out_order must be positive"));
    }
    let classes = g.conjugacy_classes()?;
    let involutions = g.involutions()?;
    let transitive = orbit_size(g) == g.degree();

    let mut total: u128 = 0;
    let mut total_polytopal: u128 = 0;
    let mut by_type_pairs: BTreeMap<(u128, u128), u128> = BTreeMap::new();

    for class in classes.classes.iter().filter(|c| c.element_order >= 3) {
        let x = &class.representative;
        let x_order = class.element_order;
        let per_t: Vec<(u64, u64, BTreeMap<(u128, u128), u64>)> = involutions
            .par_iter()
            .with_min_len(8)
            .map(|t| {
                let mut chiral_n = 0u64;
                let mut polytopal_n = 0u64;
                let mut types: BTreeMap<(u128, u128), u64> = BTreeMap::new();
                if !transitive || pair_orbit_spans(x, t, g.degree()) {
                    let h = StabilizerChain::build(g.degree(), &[x.clone(), t.clone()], &[]);
                    if h.order_u128() == Some(order) {
                        let x_inv = x.inverse();
                        if !graph_test(&h, x, t, &x_inv, t) {
                            chiral_n = 1;
                            let y = x.inverse().compose(t);
                            *types.entry((x_order, y.order())).or_insert(0) += 1;
                            if cyclic_intersection_trivial(x, &y) {
                                polytopal_n = 1;
                            }
                        }
                    }
                }
                (chiral_n, polytopal_n, types)
            })
            .collect();
        let mut chiral_for_rep = 0u64;
        let mut polytopal_for_rep = 0u64;
        for (c, pn, types) in per_t {
            chiral_for_rep += c;
            polytopal_for_rep += pn;
            for (ty, n) in types {
                *by_type_pairs.entry(ty).or_insert(0) += n as u128 * class.size as u128;
            }
        }
        total += chiral_for_rep as u128 * class.size as u128;
        total_polytopal += polytopal_for_rep as u128 * class.size as u128;
    }

    let divisor = order * out_order as u128;
    let exact_div = |what: &str, n: u128| -> Result<u64> {
        if n % divisor != 0 {
            return Err(Error::integrity(format!(
                "{what} count {n} is not divisible by |G|·out = {divisor}; \
                 wrong out_order or a counting bug"
            )));
        }
        Ok((n / divisor) as u64)
    };
    let polyhedra_count = exact_div("chiral pair", total)?;
    if polyhedra_count % 2 != 0 {
        return Err(Error::integrity(format!(
            "orbit count {polyhedra_count} is odd; enantiomorphic orbits must pair up"
        )));
    }
    let polyhedra_count_polytopal = exact_div("polytopal chiral pair", total_polytopal)?;
    let mut by_type = BTreeMap::new();
    for (ty, n) in by_type_pairs {
        by_type.insert(ty, exact_div("typed chiral pair", n)?);
    }
    debug_assert_eq!(by_type.values().sum::<u64>(), polyhedra_count);
    Ok(ChiralCensus {
        group_name: name.to_string(),
        group_order: g.order().clone(),
        out_order,
        total_chiral_pairs: total,
        polyhedra_count,
        enantiomorph_classes: polyhedra_count / 2,
        by_type,
        polyhedra_count_polytopal,
    })
}

fn orbit_size(g: &PermGroup) -> usize {
    let mut seen = vec![false; g.degree()];
    let mut stack = vec![0u16];
    seen[0] = true;
    let mut count = 1;
    while let Some(p) = stack.pop() {
        for gen in g.generators() {
            let q = gen.image(p);
            if !seen[q as usize] {
                seen[q as usize] = true;
                count += 1;
                stack.push(q);
            }
        }
    }
    count
}

/// Cheap pre-filter: `⟨x,t⟩` can only generate a transitive group if the
/// joint orbit of point 0 is the whole domain.
fn pair_orbit_spans(x: &Permutation, t: &Permutation, degree: usize) -> bool {
    let mut seen = vec![false; degree];
    let mut stack = vec![0u16];
    seen[0] = true;
    let mut count = 1;
    while let Some(p) = stack.pop() {
        for gen in [x, t] {
            let q = gen.image(p);
            if !seen[q as usize] {
                seen[q as usize] = true;
                count += 1;
                stack.push(q);
            }
        }
    }
    count == degree
}

/// Seeded random search for a chiral pair: uniform random `x`, and `t`
/// obtained by powering a uniform random element to an involution.
/// `warm_start` pairs are tried first and count against `trials`.
pub fn random_chiral_search(
    g: &PermGroup,
    trials: u64,
    seed: u64,
    warm_start: &[GenPair],
) -> Result<Option<(GenPair, PairVerdict)>> {
    if trials < 1 {
        return Err(Error::argument("trials must be at least 1"));
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let attempt = |pair: &GenPair| -> Result<Option<PairVerdict>> {
        let verdict = classify_pair(g, pair)?;
        Ok(if verdict.chiral { Some(verdict) } else { None })
    };
    let mut used = 0u64;
    for pair in warm_start {
        if used >= trials {
            return Ok(None);
        }
        used += 1;
        if let Some(v) = attempt(pair)? {
            return Ok(Some((pair.clone(), v)));
        }
    }
    while used < trials {
        used += 1;
        let x = g.chain().random_element(&mut rng);
        let e = g.chain().random_element(&mut rng);
        if x.order() < 3 {
            continue;
        }
        let eo = e.order();
        if eo % 2 != 0 {
            continue;
        }
        let t = e.pow((eo / 2) as i64);
        let pair = GenPair::new(x, t);
        if let Some(v) = attempt(&pair)? {
            return Ok(Some((pair, v)));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(degree: usize, s: &str) -> Permutation {
        Permutation::parse(degree, s).unwrap()
    }

    fn a5() -> PermGroup {
        PermGroup::from_generators(5, vec![p(5, "(1,2,3,4,5)"), p(5, "(1,2)(3,4)")]).unwrap()
    }

    #[test]
    fn tuple_equivalent_identity_map() {
        let x = p(5, "(1,2,3,4,5)");
        let t = p(5, "(1,2)(3,4)");
        assert!(tuple_equivalent(&x, &t, &x, &t).unwrap());
    }

    #[test]
    fn tuple_equivalent_dihedral_inversion() {
        // In D_10 conjugation by t inverts x and fixes t.
        let x = p(5, "(1,2,3,4,5)");
        let t = p(5, "(2,5)(3,4)");
        assert!(tuple_equivalent(&x, &t, &x.inverse(), &t).unwrap());
    }

    #[test]
    fn tuple_equivalent_a5_pair_is_reflexible() {
        let x = p(5, "(1,2,3,4,5)");
        let t = p(5, "(1,2)(3,4)");
        assert!(tuple_equivalent(&x, &t, &x.inverse(), &t).unwrap());
    }

    #[test]
    fn tuple_equivalent_rejects_non_generating_target() {
        let x = p(5, "(1,2,3,4,5)");
        let t = p(5, "(1,2)(3,4)");
        // (x, x²) generates only the cyclic group, not A_5.
        let x2 = x.compose(&x);
        assert!(!tuple_equivalent(&x, &t, &x, &x2).unwrap());
    }

    #[test]
    fn classify_a5_pair_reflexible() {
        let g = a5();
        let pair = GenPair::new(p(5, "(1,2,3,4,5)"), p(5, "(1,2)(3,4)"));
        let v = classify_pair(&g, &pair).unwrap();
        assert!(v.generates);
        assert!(v.t_is_involution);
        assert!(v.reflexible);
        assert!(!v.chiral);
        assert_eq!(v.schlafli_type, (5, 3));
        assert!(v.intersection_ok);
    }

    #[test]
    fn classify_two_involutions_pair() {
        let g = a5();
        let pair = GenPair::new(p(5, "(1,2)(3,4)"), p(5, "(1,3)(2,4)"));
        let v = classify_pair(&g, &pair).unwrap();
        assert!(!v.generates); // two involutions generate a dihedral group
        assert!(!v.chiral);
        assert!(v.reflexible);
    }

    #[test]
    fn classify_rejects_outsiders() {
        let g = a5();
        let pair = GenPair::new(p(5, "(1,2)"), p(5, "(1,2)(3,4)"));
        assert!(classify_pair(&g, &pair).is_err());
    }

    #[test]
    fn enantiomorph_examples() {
        let pair = GenPair::new(p(5, "(1,2,3,4,5)"), p(5, "(1,2)(3,4)"));
        let e = pair.enantiomorph();
        assert_eq!(e.x, p(5, "(1,5,4,3,2)"));
        assert_eq!(e.t, pair.t);
        assert_eq!(e.enantiomorph(), pair);

        let invol = GenPair::new(p(5, "(1,2)(3,4)"), p(5, "(1,3)(2,4)"));
        assert_eq!(invol.enantiomorph(), invol);
    }

    #[test]
    fn t_inverting_x_forces_reflexible() {
        // Whenever x^t = x⁻¹, conjugation by t is the witnessing
        // automorphism.
        let g = a5();
        let x = p(5, "(1,2,3,4,5)");
        let t = p(5, "(2,5)(3,4)");
        assert_eq!(x.conjugate(&t), x.inverse());
        let v = classify_pair(&g, &GenPair::new(x, t)).unwrap();
        assert!(v.reflexible);
    }

    #[test]
    fn freeness_on_small_groups() {
        // Only central elements fix a generating pair under conjugation;
        // in A_5 and A_6 that means only the identity.
        for (degree, gens) in [
            (5usize, vec!["(1,2,3,4,5)", "(1,2)(3,4)"]),
            (6, vec!["(1,2,3)", "(2,3,4,5,6)"]),
        ] {
            let g = PermGroup::from_generators(
                degree,
                gens.iter().map(|s| p(degree, s)).collect(),
            )
            .unwrap();
            let x = p(degree, gens[0]);
            let t = p(degree, gens[1]);
            let mut fixers = 0;
            for e in g.elements().unwrap() {
                if x.conjugate(&e) == x && t.conjugate(&e) == t {
                    fixers += 1;
                }
            }
            assert_eq!(fixers, 1);
        }
    }

    #[test]
    fn conjugation_invariance_of_chirality() {
        let g = a5();
        let x = p(5, "(1,2,3,4,5)");
        let t = p(5, "(1,2)(3,4)");
        let v0 = classify_pair(&g, &GenPair::new(x.clone(), t.clone())).unwrap();
        for seed in 1..=10 {
            let c = g.random_element(seed);
            let v = classify_pair(&g, &GenPair::new(x.conjugate(&c), t.conjugate(&c))).unwrap();
            assert_eq!(v.chiral, v0.chiral);
            assert_eq!(v.reflexible, v0.reflexible);
            assert_eq!(v.schlafli_type, v0.schlafli_type);
        }
    }

    #[test]
    fn a5_census_is_empty() {
        let g = a5();
        let census = count_chiral_pairs(&g, "A5", 2).unwrap();
        assert_eq!(census.polyhedra_count, 0);
        assert_eq!(census.total_chiral_pairs, 0);
        assert!(census.by_type.is_empty());
    }

    #[test]
    fn random_search_is_deterministic() {
        let g = a5();
        let r1 = random_chiral_search(&g, 50, 7, &[]).unwrap();
        let r2 = random_chiral_search(&g, 50, 7, &[]).unwrap();
        assert_eq!(r1.map(|x| x.0), r2.map(|x| x.0));
    }
}
