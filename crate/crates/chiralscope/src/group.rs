//! Permutation groups backed by a deterministic Schreier–Sims stabilizer
//! chain with explicit transversals.
//!
//! Orders computed here are exact: the chain is verified by construction
//! (every Schreier generator sifts to the identity), so `order()` is a proof,
//! not a Monte Carlo estimate. Groups are immutable once built and safe to
//! share across threads.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::One;
use rand::Rng;

use crate::error::{Error, Result};
use crate::perm::{Permutation, Point};

/// Exhaustive element listing (conjugacy classes, involution lists,
/// brute-force subgroup scans) is refused above this many elements.
/// Single-pair verification never enumerates and has no such limit.
pub const DEFAULT_ENUMERATION_LIMIT: u64 = 1_000_000;

/// Current enumeration limit; `CHIRALSCOPE_LIMIT` overrides the default.
pub fn enumeration_limit() -> u64 {
    std::env::var("CHIRALSCOPE_LIMIT")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_ENUMERATION_LIMIT)
}

type Table = Box<[Point]>;

fn is_identity_table(t: &[Point]) -> bool {
    t.iter().enumerate().all(|(i, &p)| i == p as usize)
}

fn compose_tables(a: &[Point], b: &[Point], out: &mut Vec<Point>) {
    out.clear();
    out.extend(a.iter().map(|&p| b[p as usize]));
}

fn invert_table(a: &[Point]) -> Table {
    let mut out = vec![0 as Point; a.len()];
    for (i, &p) in a.iter().enumerate() {
        out[p as usize] = i as Point;
    }
    out.into_boxed_slice()
}

struct Level {
    base: Point,
    /// Strong generators for this level's group (they fix all shallower base
    /// points).
    gens: Vec<Table>,
    orbit: Vec<Point>,
    /// `trans[p]` maps `base` to `p`; `trans_inv[p]` is its inverse.
    trans: Vec<Option<Table>>,
    trans_inv: Vec<Option<Table>>,
    verified: bool,
}

impl Level {
    fn new(base: Point, degree: usize) -> Self {
        Level {
            base,
            gens: Vec::new(),
            orbit: Vec::new(),
            trans: vec![None; degree],
            trans_inv: vec![None; degree],
            verified: false,
        }
    }

    fn recompute_orbit(&mut self, degree: usize) {
        self.orbit.clear();
        self.trans.iter_mut().for_each(|t| *t = None);
        self.trans_inv.iter_mut().for_each(|t| *t = None);
        let identity: Table = (0..degree as Point).collect();
        self.trans[self.base as usize] = Some(identity.clone());
        self.trans_inv[self.base as usize] = Some(identity);
        self.orbit.push(self.base);
        let mut scratch = Vec::with_capacity(degree);
        let mut head = 0;
        while head < self.orbit.len() {
            let p = self.orbit[head];
            head += 1;
            for g in &self.gens {
                let q = g[p as usize];
                if self.trans[q as usize].is_none() {
                    let up = self.trans[p as usize].as_ref().unwrap();
                    compose_tables(up, g, &mut scratch);
                    let uq: Table = scratch.as_slice().into();
                    self.trans_inv[q as usize] = Some(invert_table(&uq));
                    self.trans[q as usize] = Some(uq);
                    self.orbit.push(q);
                }
            }
        }
    }
}

/// Outcome of a chain build when an order threshold was supplied.
pub enum BuildOutcome {
    Complete(StabilizerChain),
    /// Construction stopped early because the partial order (a lower bound
    /// for the final order) already exceeded the threshold.
    ExceededThreshold,
}

pub struct StabilizerChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabilizerChain {
    pub fn build(degree: usize, gens: &[Permutation], base_hint: &[Point]) -> StabilizerChain {
        match Self::build_with_threshold(degree, gens, base_hint, None) {
            BuildOutcome::Complete(chain) => chain,
            BuildOutcome::ExceededThreshold => unreachable!("no threshold supplied"),
        }
    }

    /// Builds the chain; with `order_exceeds` set, stops as soon as the
    /// partial order passes the threshold (used when only "bigger than N?"
    /// is needed, e.g. the tuple-equivalence test).
    pub fn build_with_threshold(
        degree: usize,
        gens: &[Permutation],
        base_hint: &[Point],
        order_exceeds: Option<u128>,
    ) -> BuildOutcome {
        let mut base: Vec<Point> = Vec::new();
        for &b in base_hint {
            if !base.contains(&b) {
                base.push(b);
            }
        }
        let tables: Vec<Table> = gens
            .iter()
            .filter(|g| !g.is_identity())
            .map(|g| Table::from(g.images()))
            .collect();
        for t in &tables {
            if base.iter().all(|&b| t[b as usize] == b) {
                let moved = t.iter().enumerate().find(|(i, &p)| *i != p as usize);
                base.push(moved.unwrap().0 as Point);
            }
        }
        let mut chain = StabilizerChain {
            degree,
            levels: base.iter().map(|&b| Level::new(b, degree)).collect(),
        };
        // A generator fixing base[0..j] belongs to levels 0..=j.
        for t in &tables {
            let mut j = 0;
            while j < chain.levels.len() {
                chain.levels[j].gens.push(t.clone());
                if t[chain.levels[j].base as usize] != chain.levels[j].base {
                    break;
                }
                j += 1;
            }
        }
        if chain.close(order_exceeds) {
            BuildOutcome::ExceededThreshold
        } else {
            BuildOutcome::Complete(chain)
        }
    }

    /// Closes every level bottom-up; returns true if the threshold tripped.
    fn close(&mut self, order_exceeds: Option<u128>) -> bool {
        if self.levels.is_empty() {
            return false;
        }
        let mut i = self.levels.len() - 1;
        loop {
            if !self.levels[i].verified {
                let jumped = self.close_level(i);
                if let Some(threshold) = order_exceeds {
                    if self.partial_order_u128() > threshold {
                        return true;
                    }
                }
                match jumped {
                    Some(j) => {
                        i = j;
                        continue;
                    }
                    None => self.levels[i].verified = true,
                }
            }
            if i == 0 {
                return false;
            }
            i -= 1;
        }
    }

    /// Runs one closure pass at `level`. On finding a Schreier generator
    /// whose residue does not sift away, installs the residue as a strong
    /// generator for the deeper levels and returns the level to resume from.
    fn close_level(&mut self, level: usize) -> Option<usize> {
        self.levels[level].recompute_orbit(self.degree);
        let mut sg = Vec::with_capacity(self.degree);
        let mut tmp = Vec::with_capacity(self.degree);
        let mut buf = Vec::with_capacity(self.degree);
        for oi in 0..self.levels[level].orbit.len() {
            let p = self.levels[level].orbit[oi];
            for gi in 0..self.levels[level].gens.len() {
                {
                    let lv = &self.levels[level];
                    let g = &lv.gens[gi];
                    let q = g[p as usize];
                    let up = lv.trans[p as usize].as_ref().unwrap();
                    let uq_inv = lv.trans_inv[q as usize].as_ref().unwrap();
                    compose_tables(up, g, &mut tmp);
                    compose_tables(&tmp, uq_inv, &mut sg);
                }
                if is_identity_table(&sg) {
                    continue;
                }
                let stop = self.sift_tables(level + 1, &mut sg, &mut buf);
                if !is_identity_table(&sg) {
                    let residue: Table = sg.as_slice().into();
                    let j = match stop {
                        Some(j) => j,
                        None => {
                            let b = residue
                                .iter()
                                .enumerate()
                                .find(|(i, &p)| *i != p as usize)
                                .unwrap()
                                .0 as Point;
                            self.levels.push(Level::new(b, self.degree));
                            self.levels.len() - 1
                        }
                    };
                    for l in level + 1..=j {
                        self.levels[l].gens.push(residue.clone());
                        self.levels[l].verified = false;
                    }
                    return Some(j);
                }
            }
        }
        None
    }

    /// Strips the table in `g` through levels `from..`; afterwards `g` holds
    /// the residue. Returns the level where stripping stopped, or `None` if
    /// all levels were passed.
    fn sift_tables(&self, from: usize, g: &mut Vec<Point>, buf: &mut Vec<Point>) -> Option<usize> {
        for (i, lv) in self.levels.iter().enumerate().skip(from) {
            if is_identity_table(g) {
                return Some(i);
            }
            let p = g[lv.base as usize];
            match lv.trans_inv[p as usize].as_ref() {
                Some(u_inv) => {
                    compose_tables(g, u_inv, buf);
                    std::mem::swap(g, buf);
                }
                None => return Some(i),
            }
        }
        None
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn base(&self) -> Vec<Point> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn order(&self) -> BigUint {
        let mut order = BigUint::one();
        for lv in &self.levels {
            order *= BigUint::from(lv.orbit.len());
        }
        order
    }

    fn partial_order_u128(&self) -> u128 {
        let mut order: u128 = 1;
        for lv in &self.levels {
            order = order.saturating_mul(lv.orbit.len().max(1) as u128);
        }
        order
    }

    pub fn order_u128(&self) -> Option<u128> {
        let mut order: u128 = 1;
        for lv in &self.levels {
            order = order.checked_mul(lv.orbit.len() as u128)?;
        }
        Some(order)
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        let mut g: Vec<Point> = p.images().to_vec();
        let mut buf = Vec::with_capacity(self.degree);
        self.sift_tables(0, &mut g, &mut buf);
        is_identity_table(&g)
    }

    /// Strong generators fixing the first `prefix` base points; they generate
    /// the pointwise stabilizer of those points.
    pub fn stabilizer_generators(&self, prefix: usize) -> Vec<Permutation> {
        if prefix >= self.levels.len() {
            return Vec::new();
        }
        self.levels[prefix]
            .gens
            .iter()
            .map(|t| Permutation::from_images(t.to_vec()).unwrap())
            .collect()
    }

    /// Streams every group element (as a raw image table) in a fixed
    /// deterministic order. The callback may stop the walk by returning
    /// `false`.
    pub fn for_each_element(&self, mut f: impl FnMut(&[Point]) -> bool) {
        let k = self.levels.len();
        if k == 0 {
            let id: Vec<Point> = (0..self.degree as Point).collect();
            f(&id);
            return;
        }
        // suffix[j] = picks at levels k-1 ..= j composed deepest-first; the
        // element emitted is suffix[0]. Index 0 advances fastest.
        let rep = |lvl: usize, i: usize| {
            let lv = &self.levels[lvl];
            lv.trans[lv.orbit[i] as usize].as_deref().unwrap()
        };
        let mut idx = vec![0usize; k];
        let mut suffix: Vec<Vec<Point>> = vec![Vec::new(); k];
        suffix[k - 1] = rep(k - 1, 0).to_vec();
        for j in (0..k - 1).rev() {
            let mut out = Vec::new();
            compose_tables(&suffix[j + 1], rep(j, 0), &mut out);
            suffix[j] = out;
        }
        let mut scratch = Vec::with_capacity(self.degree);
        loop {
            if !f(&suffix[0]) {
                return;
            }
            // advance odometer
            let mut j = 0;
            loop {
                idx[j] += 1;
                if idx[j] < self.levels[j].orbit.len() {
                    break;
                }
                idx[j] = 0;
                j += 1;
                if j == k {
                    return;
                }
            }
            // recompute suffixes j..0
            for l in (0..=j).rev() {
                if l == k - 1 {
                    suffix[l] = rep(l, idx[l]).to_vec();
                } else {
                    compose_tables(&suffix[l + 1], rep(l, idx[l]), &mut scratch);
                    std::mem::swap(&mut suffix[l], &mut scratch);
                }
            }
        }
    }

    /// Uniformly random element, deterministic for a fixed RNG state: one
    /// independent uniform transversal pick per level.
    pub fn random_element(&self, rng: &mut impl Rng) -> Permutation {
        let mut acc: Vec<Point> = (0..self.degree as Point).collect();
        let mut scratch = Vec::with_capacity(self.degree);
        for lv in self.levels.iter().rev() {
            let p = lv.orbit[rng.gen_range(0..lv.orbit.len())];
            let u = lv.trans[p as usize].as_ref().unwrap();
            compose_tables(&acc, u, &mut scratch);
            std::mem::swap(&mut acc, &mut scratch);
        }
        Permutation::from_images(acc).unwrap()
    }
}

/// A finite permutation group: generators plus a verified stabilizer chain.
pub struct PermGroup {
    degree: usize,
    gens: Vec<Permutation>,
    chain: StabilizerChain,
    order: BigUint,
    order_u128: Option<u128>,
}

/// One conjugacy class: lexicographically least representative, exact size,
/// common element order.
#[derive(Clone, Debug)]
pub struct ConjClass {
    pub representative: Permutation,
    pub size: u64,
    pub element_order: u128,
}

#[derive(Clone, Debug)]
pub struct ConjClassTable {
    pub classes: Vec<ConjClass>,
}

impl PermGroup {
    /// Builds the group generated by `gens` acting on `1..=degree`.
    pub fn from_generators(degree: usize, gens: Vec<Permutation>) -> Result<PermGroup> {
        Self::with_base_hint(degree, gens, &[])
    }

    /// Same, but seeds the stabilizer chain's base with the given points
    /// (useful for extracting point stabilizers).
    pub fn with_base_hint(
        degree: usize,
        gens: Vec<Permutation>,
        base_hint: &[Point],
    ) -> Result<PermGroup> {
        if degree == 0 {
            return Err(Error::EmptyDomain);
        }
        for g in &gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    got: g.degree(),
                });
            }
        }
        let chain = StabilizerChain::build(degree, &gens, base_hint);
        let order = chain.order();
        let order_u128 = chain.order_u128();
        Ok(PermGroup {
            degree,
            gens,
            chain,
            order,
            order_u128,
        })
    }

    pub fn trivial(degree: usize) -> PermGroup {
        PermGroup::from_generators(degree, Vec::new()).expect("degree must be positive")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.gens
    }

    pub fn chain(&self) -> &StabilizerChain {
        &self.chain
    }

    pub fn order(&self) -> &BigUint {
        &self.order
    }

    pub fn order_u128(&self) -> Option<u128> {
        self.order_u128
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    /// Membership test by sifting through the chain.
    pub fn contains(&self, p: &Permutation) -> Result<bool> {
        if p.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                got: p.degree(),
            });
        }
        Ok(self.chain.contains(p))
    }

    fn check_capacity(&self, what: &str) -> Result<u64> {
        let limit = enumeration_limit();
        match self.order_u128 {
            Some(n) if n <= limit as u128 => Ok(n as u64),
            _ => Err(Error::Capacity {
                order: format!("{} ({what})", self.order),
                limit,
            }),
        }
    }

    /// All elements, in the chain's deterministic order. Capacity-checked.
    pub fn elements(&self) -> Result<Vec<Permutation>> {
        let n = self.check_capacity("element enumeration")? as usize;
        let mut out = Vec::with_capacity(n);
        self.chain.for_each_element(|t| {
            out.push(Permutation::from_images(t.to_vec()).unwrap());
            true
        });
        Ok(out)
    }

    /// Exactly the elements of order 2, sorted. Capacity-checked.
    pub fn involutions(&self) -> Result<Vec<Permutation>> {
        self.check_capacity("involution listing")?;
        let mut out = Vec::new();
        self.chain.for_each_element(|t| {
            if is_involution_table(t) {
                out.push(Permutation::from_images(t.to_vec()).unwrap());
            }
            true
        });
        out.sort();
        Ok(out)
    }

    /// Number of involutions, computed by streaming (no element storage).
    pub fn involution_count(&self) -> Result<u64> {
        self.check_capacity("involution count")?;
        let mut count = 0u64;
        self.chain.for_each_element(|t| {
            if is_involution_table(t) {
                count += 1;
            }
            true
        });
        Ok(count)
    }

    /// Complete conjugacy class table. Capacity-checked.
    pub fn conjugacy_classes(&self) -> Result<ConjClassTable> {
        let order = self.check_capacity("conjugacy classes")?;
        let elements = self.elements()?;
        let mut index: HashMap<&[Point], u32> = HashMap::with_capacity(elements.len());
        for (i, e) in elements.iter().enumerate() {
            index.insert(e.images(), i as u32);
        }
        let mut class_of: Vec<Option<u32>> = vec![None; elements.len()];
        let mut classes = Vec::new();
        for start in 0..elements.len() {
            if class_of[start].is_some() {
                continue;
            }
            let cid = classes.len() as u32;
            let mut members = vec![start as u32];
            class_of[start] = Some(cid);
            let mut head = 0;
            while head < members.len() {
                let e = &elements[members[head] as usize];
                head += 1;
                for g in &self.gens {
                    let conj = e.conjugate(g);
                    let j = *index.get(conj.images()).expect("class member outside group");
                    if class_of[j as usize].is_none() {
                        class_of[j as usize] = Some(cid);
                        members.push(j);
                    }
                }
            }
            let rep = members
                .iter()
                .map(|&i| &elements[i as usize])
                .min()
                .unwrap()
                .clone();
            let element_order = rep.order();
            classes.push(ConjClass {
                representative: rep,
                size: members.len() as u64,
                element_order,
            });
        }
        let total: u64 = classes.iter().map(|c| c.size).sum();
        if total != order {
            return Err(Error::integrity(format!(
                "class sizes sum to {total}, group order is {order}"
            )));
        }
        classes.sort_by(|a, b| {
            (a.element_order, &a.representative).cmp(&(b.element_order, &b.representative))
        });
        Ok(ConjClassTable { classes })
    }

    /// Centralizer of `h`, by brute-force scan. Capacity-checked.
    pub fn centralizer(&self, h: &Permutation) -> Result<PermGroup> {
        if h.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                got: h.degree(),
            });
        }
        self.check_capacity("centralizer")?;
        let ht = h.images();
        let mut members = Vec::new();
        self.chain.for_each_element(|t| {
            if commutes(t, ht) {
                members.push(Permutation::from_images(t.to_vec()).unwrap());
            }
            true
        });
        PermGroup::from_members_reduced(self.degree, members.into_iter())
    }

    /// Builds a group from a (possibly huge) member list, keeping only
    /// members that enlarge the group as generators.
    pub fn from_members_reduced(
        degree: usize,
        members: impl Iterator<Item = Permutation>,
    ) -> Result<PermGroup> {
        let mut gens: Vec<Permutation> = Vec::new();
        let mut chain = StabilizerChain::build(degree, &gens, &[]);
        for m in members {
            if m.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    got: m.degree(),
                });
            }
            if !m.is_identity() && !chain.contains(&m) {
                gens.push(m);
                chain = StabilizerChain::build(degree, &gens, &[]);
            }
        }
        PermGroup::from_generators(degree, gens)
    }

    /// Uniformly random element; deterministic for a fixed seed.
    pub fn random_element(&self, seed: u64) -> Permutation {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        self.chain.random_element(&mut rng)
    }
}

#[inline]
pub(crate) fn is_involution_table(t: &[Point]) -> bool {
    let mut non_fixed = false;
    for (i, &p) in t.iter().enumerate() {
        if i != p as usize {
            non_fixed = true;
            if t[p as usize] != i as Point {
                return false;
            }
        }
    }
    non_fixed
}

#[inline]
fn commutes(a: &[Point], b: &[Point]) -> bool {
    (0..a.len()).all(|i| b[a[i] as usize] == a[b[i] as usize])
}

/// Subgroup of the direct product of two groups acting on the disjoint union
/// of their domains, generated by gluing each pair componentwise.
pub fn diagonal_pair_group(pairs: &[(Permutation, Permutation)]) -> Result<PermGroup> {
    if pairs.is_empty() {
        return Err(Error::argument("diagonal_pair_group needs at least one pair"));
    }
    let n1 = pairs[0].0.degree();
    let n2 = pairs[0].1.degree();
    for (a, b) in pairs {
        if a.degree() != n1 {
            return Err(Error::DegreeMismatch {
                expected: n1,
                got: a.degree(),
            });
        }
        if b.degree() != n2 {
            return Err(Error::DegreeMismatch {
                expected: n2,
                got: b.degree(),
            });
        }
    }
    let glued: Vec<Permutation> = pairs.iter().map(|(a, b)| a.glue(b)).collect();
    PermGroup::from_generators(n1 + n2, glued)
}

/// Executable form of the inverting-coset fact: given `x^t = x⁻¹`, every
/// `y` with `x^y = x⁻¹` lies in the coset `C_G(x)·t`. Scans all of `G`.
pub fn inverting_coset_check(g: &PermGroup, x: &Permutation, t: &Permutation) -> Result<bool> {
    if !(g.contains(x)? && g.contains(t)?) {
        return Err(Error::NotInGroup {
            what: "inverting_coset_check",
        });
    }
    let x_inv = x.inverse();
    if x.conjugate(t) != x_inv {
        return Err(Error::argument("t does not invert x"));
    }
    g.check_capacity("inverting coset check")?;
    let t_inv = t.inverse();
    let mut ok = true;
    g.chain.for_each_element(|yt| {
        let y = Permutation::from_images(yt.to_vec()).unwrap();
        if x.conjugate(&y) == x_inv {
            // y ∈ C_G(x)·t  ⟺  y·t⁻¹ centralizes x
            let c = y.compose(&t_inv);
            if x.conjugate(&c) != *x {
                ok = false;
                return false;
            }
        }
        true
    });
    Ok(ok)
}

/// The set `{ y ∈ G : x^y = x⁻¹ }`, by brute force. Used by the coset
/// property tests.
pub fn inverting_set(g: &PermGroup, x: &Permutation) -> Result<Vec<Permutation>> {
    g.check_capacity("inverting set")?;
    let x_inv = x.inverse();
    let mut out = Vec::new();
    g.chain.for_each_element(|yt| {
        let y = Permutation::from_images(yt.to_vec()).unwrap();
        if x.conjugate(&y) == x_inv {
            out.push(y);
        }
        true
    });
    out.sort();
    Ok(out)
}

/// Order of the normalizer `N_G(A)`, by brute-force scan of `G`.
pub fn normalizer_order(g: &PermGroup, a: &PermGroup) -> Result<u64> {
    g.check_capacity("normalizer")?;
    let mut count = 0u64;
    let a_gens: Vec<&Permutation> = a.generators().iter().collect();
    g.chain.for_each_element(|t| {
        let y = Permutation::from_images(t.to_vec()).unwrap();
        if a_gens.iter().all(|ag| a.chain.contains(&ag.conjugate(&y))) {
            count += 1;
        }
        true
    });
    Ok(count)
}

/// Count of `G`-conjugates of a maximal subgroup `M` that contain `A`,
/// computed as `|N_G(A) : N_M(A)|`. The caller asserts `A ≤ M ≤ G` with `M`
/// maximal and any two `G`-conjugates of `A` inside `M` being `M`-conjugate;
/// only `A ≤ M ≤ G` is checked.
pub fn conjugate_overgroup_count(g: &PermGroup, a: &PermGroup, m: &PermGroup) -> Result<u64> {
    for ag in a.generators() {
        if !m.contains(ag)? {
            return Err(Error::argument("A is not contained in M"));
        }
    }
    for mg in m.generators() {
        if !g.contains(mg)? {
            return Err(Error::argument("M is not contained in G"));
        }
    }
    let ng = normalizer_order(g, a)?;
    let nm = normalizer_order(m, a)?;
    if nm == 0 || ng % nm != 0 {
        return Err(Error::integrity(format!(
            "normalizer orders do not divide: |N_G(A)| = {ng}, |N_M(A)| = {nm}"
        )));
    }
    Ok(ng / nm)
}

/// Slow reference algorithms, deliberately independent of the stabilizer
/// chain. Test suites compare the engine against these.
pub mod oracle {
    use std::collections::BTreeSet;

    use super::*;

    /// Full closure of a generating set by repeated multiplication.
    /// Exponential-memory brute force; keep inputs small.
    pub fn closure(degree: usize, gens: &[Permutation]) -> BTreeSet<Permutation> {
        let mut set: BTreeSet<Permutation> = BTreeSet::new();
        set.insert(Permutation::identity(degree));
        let mut frontier: Vec<Permutation> = vec![Permutation::identity(degree)];
        while let Some(e) = frontier.pop() {
            for g in gens {
                let next = e.compose(g);
                if set.insert(next.clone()) {
                    frontier.push(next);
                }
            }
        }
        set
    }

    pub fn closure_order(degree: usize, gens: &[Permutation]) -> u64 {
        closure(degree, gens).len() as u64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(degree: usize, s: &str) -> Permutation {
        Permutation::parse(degree, s).unwrap()
    }

    fn group(degree: usize, gens: &[&str]) -> PermGroup {
        let gens: Vec<Permutation> = gens.iter().map(|s| p(degree, s)).collect();
        PermGroup::from_generators(degree, gens).unwrap()
    }

    #[test]
    fn a5_order_is_60() {
        let g = group(5, &["(1,2,3,4,5)", "(1,2)(3,4)"]);
        assert_eq!(g.order(), &BigUint::from(60u32));
    }

    #[test]
    fn empty_generators_give_trivial_group() {
        let g = PermGroup::from_generators(4, vec![]).unwrap();
        assert_eq!(g.order(), &BigUint::from(1u32));
        assert_eq!(g.elements().unwrap().len(), 1);
    }

    #[test]
    fn chain_order_matches_brute_force_closure() {
        // The chain order must equal the closure size for a spread of small
        // groups: cyclic, dihedral, symmetric, alternating, quaternion-like.
        let cases: Vec<(usize, Vec<&str>)> = vec![
            (5, vec!["(1,2,3,4,5)"]),
            (5, vec!["(1,2,3,4,5)", "(2,5)(3,4)"]),
            (4, vec!["(1,2,3,4)", "(1,2)"]),
            (5, vec!["(1,2,3,4,5)", "(1,2)(3,4)"]),
            (6, vec!["(1,2,3)", "(2,3,4,5,6)"]),
            (7, vec!["(1,2,3,4,5,6,7)", "(1,2,3)"]),
            (8, vec!["(1,2,3,8)(4,5,6,7)", "(1,4,3,6)(2,7,8,5)"]),
            (6, vec!["(1,2)(3,4)", "(3,4)(5,6)", "(1,3)(2,4)"]),
        ];
        for (degree, gens) in cases {
            let perms: Vec<Permutation> = gens.iter().map(|s| p(degree, s)).collect();
            let expect = oracle::closure_order(degree, &perms);
            let g = PermGroup::from_generators(degree, perms).unwrap();
            assert_eq!(
                g.order(),
                &BigUint::from(expect),
                "order mismatch for gens {gens:?}"
            );
        }
    }

    #[test]
    fn membership_examples() {
        let a5 = group(5, &["(1,2,3,4,5)", "(1,2)(3,4)"]);
        assert!(a5.contains(&p(5, "(1,2,3)")).unwrap());
        assert!(!a5.contains(&p(5, "(1,2)")).unwrap());
        let c5 = group(5, &["(1,2,3,4,5)"]);
        assert!(c5.contains(&p(5, "(1,3,5,2,4)")).unwrap());
        assert!(!c5.contains(&p(5, "(1,2)(3,4)")).unwrap());
    }

    #[test]
    fn membership_for_random_words_and_outside_points() {
        let g = group(7, &["(1,2,3,4,5,6,7)", "(1,2,3)"]);
        // A_7: random words always belong.
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let mut w = Permutation::identity(7);
            for _ in 0..rng.gen_range(1..12) {
                let gi = rng.gen_range(0..g.generators().len());
                w = w.compose(&g.generators()[gi]);
            }
            assert!(g.contains(&w).unwrap());
        }
        // A permutation moving a point outside every generator orbit fails.
        let h = group(9, &["(1,2,3,4,5,6,7)", "(1,2,3)"]);
        assert!(!h.contains(&p(9, "(8,9)")).unwrap());
        assert!(!h.contains(&p(9, "(1,2)(8,9)")).unwrap());
    }

    #[test]
    fn rebuilding_with_different_base_gives_same_order() {
        let gens = vec![p(8, "(1,2,3,4,5,6,7,8)"), p(8, "(1,2)")];
        let g1 = PermGroup::from_generators(8, gens.clone()).unwrap();
        let g2 = PermGroup::with_base_hint(8, gens.clone(), &[7, 3, 0]).unwrap();
        let g3 = PermGroup::with_base_hint(8, gens, &[5]).unwrap();
        assert_eq!(g1.order(), g2.order());
        assert_eq!(g1.order(), g3.order());
    }

    #[test]
    fn a5_conjugacy_classes() {
        let g = group(5, &["(1,2,3,4,5)", "(1,2)(3,4)"]);
        let table = g.conjugacy_classes().unwrap();
        let mut sizes: Vec<u64> = table.classes.iter().map(|c| c.size).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 12, 12, 15, 20]);
        for c in &table.classes {
            assert_eq!(60 % c.size, 0);
            assert_eq!(c.representative.order(), c.element_order);
        }
    }

    #[test]
    fn trivial_group_has_one_class() {
        let g = PermGroup::trivial(3);
        let table = g.conjugacy_classes().unwrap();
        assert_eq!(table.classes.len(), 1);
        assert_eq!(table.classes[0].size, 1);
    }

    #[test]
    fn a5_has_15_involutions_and_c3_none() {
        let a5 = group(5, &["(1,2,3,4,5)", "(1,2)(3,4)"]);
        assert_eq!(a5.involutions().unwrap().len(), 15);
        assert_eq!(a5.involution_count().unwrap(), 15);
        let c3 = group(3, &["(1,2,3)"]);
        assert!(c3.involutions().unwrap().is_empty());
    }

    #[test]
    fn inverting_coset_examples() {
        let d10 = group(5, &["(1,2,3,4,5)", "(2,5)(3,4)"]);
        let x = p(5, "(1,2,3,4,5)");
        let t = p(5, "(2,5)(3,4)");
        assert!(inverting_coset_check(&d10, &x, &t).unwrap());

        let s4 = group(4, &["(1,2,3,4)", "(1,2)"]);
        assert!(inverting_coset_check(&s4, &p(4, "(1,2,3,4)"), &p(4, "(1,3)")).unwrap());

        let a5 = group(5, &["(1,2,3,4,5)", "(1,2)(3,4)"]);
        assert!(inverting_coset_check(&a5, &x, &t).unwrap());
    }

    #[test]
    fn inverting_coset_rejects_non_inverting_t() {
        let a5 = group(5, &["(1,2,3,4,5)", "(1,2)(3,4)"]);
        let err = inverting_coset_check(&a5, &p(5, "(1,2,3,4,5)"), &p(5, "(1,2)(3,4)"));
        assert!(err.is_err());
    }

    #[test]
    fn inverting_set_equals_centralizer_coset() {
        // On the small corpus the inverting set is exactly C_G(x)·t.
        let cases = [
            ("(1,2,3,4,5)", "(2,5)(3,4)", vec!["(1,2,3,4,5)", "(1,2)(3,4)"]),
            ("(1,2,3)", "(2,3)(4,5)", vec!["(1,2,3,4,5)", "(1,2)(3,4)"]),
        ];
        for (xs, ts, gens) in cases {
            let g = group(5, &gens);
            let x = p(5, xs);
            let t = p(5, ts);
            if x.conjugate(&t) != x.inverse() {
                continue;
            }
            let inverting = inverting_set(&g, &x).unwrap();
            let cent = g.centralizer(&x).unwrap();
            let mut coset: Vec<Permutation> = cent
                .elements()
                .unwrap()
                .iter()
                .map(|c| c.compose(&t))
                .collect();
            coset.sort();
            assert_eq!(inverting, coset);
        }
    }

    #[test]
    fn conjugate_overgroup_count_examples() {
        // A = M = G gives 1.
        let g = group(5, &["(1,2,3,4,5)", "(1,2)(3,4)"]);
        let a = group(5, &["(1,2,3,4,5)", "(1,2)(3,4)"]);
        let m = group(5, &["(1,2,3,4,5)", "(1,2)(3,4)"]);
        assert_eq!(conjugate_overgroup_count(&g, &a, &m).unwrap(), 1);

        // G = A_5, A = ⟨(1,2,3,4,5)⟩, M = N_G(A) ≅ D_10.
        let a = group(5, &["(1,2,3,4,5)"]);
        let m = group(5, &["(1,2,3,4,5)", "(2,5)(3,4)"]);
        assert_eq!(conjugate_overgroup_count(&g, &a, &m).unwrap(), 1);

        // G = S_4, A = ⟨(1,2,3)⟩, M = S_3 fixing 4.
        let g = group(4, &["(1,2,3,4)", "(1,2)"]);
        let a = group(4, &["(1,2,3)"]);
        let m = group(4, &["(1,2,3)", "(1,2)"]);
        assert_eq!(conjugate_overgroup_count(&g, &a, &m).unwrap(), 1);
    }

    #[test]
    fn conjugate_overgroup_count_against_direct_enumeration() {
        // Direct oracle: count distinct conjugates of M (as element sets)
        // containing A.
        let g = group(4, &["(1,2,3,4)", "(1,2)"]);
        let a = group(4, &["(1,2,3)"]);
        let m = group(4, &["(1,2,3)", "(1,2)"]);
        let a_elems = a.elements().unwrap();
        let m_set: std::collections::BTreeSet<Permutation> =
            m.elements().unwrap().into_iter().collect();
        let mut found: std::collections::BTreeSet<Vec<Permutation>> = Default::default();
        for y in g.elements().unwrap() {
            let conj: std::collections::BTreeSet<Permutation> =
                m_set.iter().map(|e| e.conjugate(&y)).collect();
            if a_elems.iter().all(|e| conj.contains(e)) {
                found.insert(conj.into_iter().collect());
            }
        }
        assert_eq!(
            found.len() as u64,
            conjugate_overgroup_count(&g, &a, &m).unwrap()
        );
    }

    #[test]
    fn diagonal_pair_group_examples() {
        let c3 = p(3, "(1,2,3)");
        let d = diagonal_pair_group(&[(c3.clone(), c3.clone())]).unwrap();
        assert_eq!(d.order(), &BigUint::from(3u32));

        let inv = diagonal_pair_group(&[(c3.clone(), c3.inverse())]).unwrap();
        assert_eq!(inv.order(), &BigUint::from(3u32));

        let x = p(5, "(1,2,3,4,5)");
        let t = p(5, "(1,2)(3,4)");
        let d = diagonal_pair_group(&[(x.clone(), x), (t.clone(), t)]).unwrap();
        assert_eq!(d.order(), &BigUint::from(60u32));
    }

    #[test]
    fn diagonal_pair_group_order_bounds() {
        // |D| divides |G1|·|G2| and is at least max when both projections are
        // onto.
        let x1 = p(5, "(1,2,3,4,5)");
        let t1 = p(5, "(1,2)(3,4)");
        let x2 = p(3, "(1,2,3)");
        let t2 = p(3, "(1,2,3)");
        let d = diagonal_pair_group(&[(x1.clone(), x2), (t1.clone(), t2)]).unwrap();
        let g1 = group(5, &["(1,2,3,4,5)", "(1,2)(3,4)"]);
        let g2 = group(3, &["(1,2,3)"]);
        let prod = g1.order() * g2.order();
        assert_eq!(&prod % d.order(), BigUint::from(0u32));
        assert!(*d.order() >= g1.order().clone().max(g2.order().clone()));
    }

    #[test]
    fn random_element_is_deterministic_and_supported() {
        let trivial = PermGroup::trivial(4);
        assert!(trivial.random_element(17).is_identity());

        let c2 = group(2, &["(1,2)"]);
        let mut seen = std::collections::BTreeSet::new();
        for seed in 1..=100 {
            seen.insert(c2.random_element(seed));
        }
        assert_eq!(seen.len(), 2);

        let a5 = group(5, &["(1,2,3,4,5)", "(1,2)(3,4)"]);
        assert_eq!(a5.random_element(42), a5.random_element(42));
    }

    #[test]
    fn random_element_roughly_uniform_on_a5() {
        let a5 = group(5, &["(1,2,3,4,5)", "(1,2)(3,4)"]);
        let mut counts: HashMap<Permutation, u32> = HashMap::new();
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(99);
        for _ in 0..6000 {
            *counts.entry(a5.chain().random_element(&mut rng)).or_insert(0) += 1;
        }
        assert_eq!(counts.len(), 60);
        // expectation 100 per element; 5x tolerance each way
        for (_, c) in counts {
            assert!(c >= 20 && c <= 500, "count {c} outside 5x uniform band");
        }
    }

    #[test]
    fn element_stream_covers_group_exactly() {
        let g = group(6, &["(1,2,3)", "(2,3,4,5,6)"]); // A_6? order 360
        let elems = g.elements().unwrap();
        assert_eq!(elems.len(), 360);
        let set: std::collections::BTreeSet<_> = elems.into_iter().collect();
        assert_eq!(set.len(), 360);
        for e in &set {
            assert!(g.contains(e).unwrap());
        }
    }

    #[test]
    fn stabilizer_generators_fix_prefix() {
        let g = PermGroup::with_base_hint(
            5,
            vec![p(5, "(1,2,3,4,5)"), p(5, "(1,2)(3,4)")],
            &[0],
        )
        .unwrap();
        let stab = g.chain().stabilizer_generators(1);
        assert!(!stab.is_empty());
        for s in &stab {
            assert_eq!(s.image(0), 0);
        }
        let h = PermGroup::from_generators(5, stab).unwrap();
        assert_eq!(h.order(), &BigUint::from(12u32)); // A_4 point stabilizer
    }

    #[test]
    fn threshold_abort_triggers() {
        let gens = vec![p(8, "(1,2,3,4,5,6,7,8)"), p(8, "(1,2)")];
        match StabilizerChain::build_with_threshold(8, &gens, &[], Some(1000)) {
            BuildOutcome::ExceededThreshold => {}
            BuildOutcome::Complete(c) => panic!("S_8 of order {} not aborted", c.order()),
        }
        match StabilizerChain::build_with_threshold(8, &gens, &[], Some(50_000)) {
            BuildOutcome::Complete(c) => assert_eq!(c.order_u128(), Some(40_320)),
            BuildOutcome::ExceededThreshold => panic!("threshold should not trip at 50k"),
        }
    }
}
