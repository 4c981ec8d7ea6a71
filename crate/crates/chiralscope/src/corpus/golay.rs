//! The extended binary Golay code and the Mathieu groups derived from it.
//!
//! Everything here is built from scratch and certified on the spot:
//!
//! * `x²³ − 1` is factored over GF(2) by trial division; a degree-11 factor
//!   generates the cyclic [23,12] code, which extends by a parity bit to the
//!   [24,12,8] code. The weight distribution (759 octads, 2576 dodecads) is
//!   asserted.
//! * Coordinates are labelled by the projective line over GF(23): positions
//!   0..=22 are the field elements, position 23 is ∞. The maps `z ↦ z+1` and
//!   `z ↦ −1/z` preserve the extended code; a third map of the shape
//!   `z ↦ a·z³ / b·z³` (split by quadratic residuosity) is found by search.
//! * Any coordinate permutation preserving the code lies in its automorphism
//!   group, which is the 24-point Mathieu group; a stabilizer-chain order
//!   equal to 244,823,040 therefore certifies that the three maps generate
//!   the whole of it. Point stabilizers give the 23- and 22-point groups, a
//!   dodecad stabilizer gives the 12-point group, and its point stabilizer
//!   the 11-point one.

use std::collections::HashSet;

use rand::SeedableRng;

use crate::error::{Error, Result};
use crate::group::{PermGroup, StabilizerChain};
use crate::perm::{Permutation, Point};

const P: u64 = 23;

pub struct GolayCode {
    /// All 4096 extended codewords as 24-bit masks (bit i = coordinate i).
    pub codewords: Vec<u32>,
    set: HashSet<u32>,
    /// Twelve basis words of the extended code.
    pub basis: Vec<u32>,
}

fn poly_divides_gf2(divisor: u32, mut a: u64, deg_div: u32, mut deg_a: u32) -> bool {
    // Binary polynomials as bitmasks, bit i = coefficient of x^i.
    while deg_a >= deg_div {
        if a >> deg_a & 1 == 1 {
            a ^= (divisor as u64) << (deg_a - deg_div);
        }
        if deg_a == 0 {
            break;
        }
        deg_a -= 1;
    }
    a == 0
}

/// The two monic irreducible degree-11 factors of x²³−1 over GF(2),
/// lexicographically ordered by mask.
pub fn golay_generator_polynomials() -> Vec<u32> {
    let x23_minus_1: u64 = (1 << 23) | 1;
    let mut factors = Vec::new();
    for low in 0..(1u32 << 10) {
        // monic degree 11 with constant term 1
        let candidate = (1 << 11) | (low << 1) | 1;
        if poly_divides_gf2(candidate, x23_minus_1, 11, 23) {
            factors.push(candidate);
        }
    }
    assert_eq!(factors.len(), 2, "x^23-1 must have two degree-11 factors");
    factors
}

impl GolayCode {
    /// Deterministic construction from the lexicographically first generator
    /// polynomial.
    pub fn extended() -> GolayCode {
        let g = golay_generator_polynomials()[0];
        Self::from_generator(g)
    }

    pub fn from_generator(g: u32) -> GolayCode {
        // Basis of the cyclic code: x^i·g(x) for i = 0..12, then extend each
        // word with a parity bit in position 23.
        let mut basis = Vec::with_capacity(12);
        for i in 0..12 {
            let word = (g as u32) << i;
            debug_assert!(word < 1 << 23);
            basis.push(extend_parity(word));
        }
        let mut codewords = Vec::with_capacity(4096);
        for m in 0u32..4096 {
            let mut w = 0u32;
            for (i, b) in basis.iter().enumerate() {
                if m >> i & 1 == 1 {
                    w ^= b;
                }
            }
            codewords.push(w);
        }
        let set: HashSet<u32> = codewords.iter().copied().collect();
        let code = GolayCode {
            codewords,
            set,
            basis,
        };
        code.assert_weight_distribution();
        code
    }

    fn assert_weight_distribution(&self) {
        let mut dist = [0u32; 25];
        for &w in &self.codewords {
            dist[w.count_ones() as usize] += 1;
        }
        assert_eq!(dist[0], 1);
        assert_eq!(dist[8], 759, "octad count");
        assert_eq!(dist[12], 2576, "dodecad count");
        assert_eq!(dist[16], 759);
        assert_eq!(dist[24], 1);
    }

    pub fn contains(&self, w: u32) -> bool {
        self.set.contains(&w)
    }

    /// True if the coordinate permutation maps the code onto itself
    /// (checked on the basis; the rest follows by linearity).
    pub fn admits(&self, perm: &Permutation) -> bool {
        debug_assert_eq!(perm.degree(), 24);
        self.basis.iter().all(|&b| self.contains(permute_mask(b, perm)))
    }

    /// Lexicographically least weight-12 codeword.
    pub fn first_dodecad(&self) -> u32 {
        *self
            .codewords
            .iter()
            .filter(|w| w.count_ones() == 12)
            .min()
            .unwrap()
    }
}

fn extend_parity(word: u32) -> u32 {
    if word.count_ones() % 2 == 1 {
        word | 1 << 23
    } else {
        word
    }
}

pub fn permute_mask(mask: u32, perm: &Permutation) -> u32 {
    let mut out = 0u32;
    for i in 0..perm.degree() {
        if mask >> i & 1 == 1 {
            out |= 1 << perm.image(i as Point);
        }
    }
    out
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // p is tiny; brute force.
    (1..p).find(|&b| a * b % p == 1).expect("a invertible")
}

/// `z ↦ z + 1` on the projective line (∞ fixed).
fn translation() -> Permutation {
    let mut images: Vec<Point> = (0..24).collect();
    for z in 0..P {
        images[z as usize] = ((z + 1) % P) as Point;
    }
    Permutation::from_images(images).unwrap()
}

/// `z ↦ −1/z` on the projective line (0 and ∞ swapped).
fn negated_inversion() -> Permutation {
    let mut images: Vec<Point> = (0..24).collect();
    images[0] = 23;
    images[23] = 0;
    for z in 1..P {
        images[z as usize] = ((P - inv_mod(z, P)) % P) as Point;
    }
    Permutation::from_images(images).unwrap()
}

fn quadratic_residues() -> HashSet<u64> {
    (1..P).map(|z| z * z % P).collect()
}

/// Searches the family `z ↦ a·zᵉ (z a residue), b·zᵉ (z a non-residue)` for
/// coordinate permutations preserving the code. Returns the first hit.
fn find_power_twist(code: &GolayCode) -> Option<Permutation> {
    let residues = quadratic_residues();
    for e in [3u32, 5, 9, 15] {
        for a in 1..P {
            for b in 1..P {
                let mut images: Vec<Point> = (0..24).collect();
                let mut seen = [false; 24];
                seen[0] = true;
                seen[23] = true;
                let mut ok = true;
                for z in 1..P {
                    let mut w = 1u64;
                    for _ in 0..e {
                        w = w * z % P;
                    }
                    let img = if residues.contains(&z) { a * w % P } else { b * w % P };
                    if img == 0 || seen[img as usize] {
                        ok = false;
                        break;
                    }
                    seen[img as usize] = true;
                    images[z as usize] = img as Point;
                }
                if !ok {
                    continue;
                }
                let perm = Permutation::from_images(images).unwrap();
                if code.admits(&perm) {
                    return Some(perm);
                }
            }
        }
    }
    None
}

pub const M24_ORDER: u64 = 244_823_040;
pub const M23_ORDER: u64 = 10_200_960;
pub const M22_ORDER: u64 = 443_520;
pub const M12_ORDER: u64 = 95_040;
pub const M11_ORDER: u64 = 7_920;

/// Generators for the five Mathieu groups, each acting on `1..=degree`.
pub struct DerivedMathieu {
    pub m24: Vec<Permutation>,
    pub m23: Vec<Permutation>,
    pub m22: Vec<Permutation>,
    pub m12: Vec<Permutation>,
    pub m11: Vec<Permutation>,
}

/// Re-labels permutations that fix `points` setwise to act on
/// `1..=points.len()` via the sorted order of `points`.
pub fn restrict_to_points(gens: &[Permutation], points: &[Point]) -> Result<Vec<Permutation>> {
    let mut sorted = points.to_vec();
    sorted.sort_unstable();
    let pos = |p: Point| sorted.binary_search(&p).ok();
    let mut out = Vec::with_capacity(gens.len());
    for g in gens {
        let mut images = vec![0 as Point; sorted.len()];
        for (i, &p) in sorted.iter().enumerate() {
            let q = g.image(p);
            match pos(q) {
                Some(j) => images[i] = j as Point,
                None => {
                    return Err(Error::argument(format!(
                        "generator {g} does not stabilize the point set"
                    )))
                }
            }
        }
        out.push(Permutation::from_images(images)?);
    }
    Ok(out)
}

fn mask_points(mask: u32) -> Vec<Point> {
    (0..24).filter(|&i| mask >> i & 1 == 1).collect()
}

/// Derives all five groups from the code. Deterministic, including the
/// seeded sampling used for the dodecad stabilizer.
pub fn derive_mathieu_groups() -> Result<DerivedMathieu> {
    let code = GolayCode::extended();
    let sigma = translation();
    let rho = negated_inversion();
    if !code.admits(&sigma) || !code.admits(&rho) {
        return Err(Error::integrity(
            "projective maps fail to preserve the code",
        ));
    }
    let delta = find_power_twist(&code).ok_or_else(|| {
        Error::integrity("no power-twist automorphism of the code found")
    })?;
    let m24_gens = vec![sigma, rho, delta];

    // Base seeded with 23 (∞) then 22, so levels 1 and 2 of the chain hold
    // strong generators for the one- and two-point stabilizers.
    let chain = StabilizerChain::build(24, &m24_gens, &[23, 22]);
    if chain.order_u128() != Some(M24_ORDER as u128) {
        return Err(Error::integrity(format!(
            "24-point group has order {}, expected {M24_ORDER}",
            chain.order()
        )));
    }
    let m23_gens = restrict_to_points(&chain.stabilizer_generators(1), &(0..23).collect::<Vec<_>>())?;
    let m22_gens = restrict_to_points(&chain.stabilizer_generators(2), &(0..22).collect::<Vec<_>>())?;

    // Dodecad stabilizer: collect code-certified elements fixing the first
    // dodecad setwise, by seeded uniform sampling, until the order is right.
    let dodecad = code.first_dodecad();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(24);
    let mut stab_gens: Vec<Permutation> = Vec::new();
    let mut stab_chain = StabilizerChain::build(24, &stab_gens, &[]);
    let mut attempts = 0u32;
    while stab_chain.order_u128() != Some(M12_ORDER as u128) {
        attempts += 1;
        if attempts > 2_000_000 {
            return Err(Error::integrity("dodecad stabilizer search stalled"));
        }
        let g = chain.random_element(&mut rng);
        if permute_mask(dodecad, &g) == dodecad && !stab_chain.contains(&g) {
            stab_gens.push(g);
            stab_chain = StabilizerChain::build(24, &stab_gens, &[]);
        }
    }
    let m12_points = mask_points(dodecad);
    let m12_gens = restrict_to_points(&stab_gens, &m12_points)?;

    // Its point stabilizer, relabelled to 11 points.
    let m12_chain = StabilizerChain::build(12, &m12_gens, &[11]);
    if m12_chain.order_u128() != Some(M12_ORDER as u128) {
        return Err(Error::integrity(
            "restricted dodecad action is not faithful",
        ));
    }
    let m11_gens = restrict_to_points(
        &m12_chain.stabilizer_generators(1),
        &(0..11).collect::<Vec<_>>(),
    )?;

    let derived = DerivedMathieu {
        m24: m24_gens,
        m23: m23_gens,
        m22: m22_gens,
        m12: m12_gens,
        m11: m11_gens,
    };
    for (gens, degree, order) in [
        (&derived.m23, 23usize, M23_ORDER),
        (&derived.m22, 22, M22_ORDER),
        (&derived.m11, 11, M11_ORDER),
    ] {
        let g = PermGroup::from_generators(degree, gens.clone())?;
        if g.order_u128() != Some(order as u128) {
            return Err(Error::integrity(format!(
                "{degree}-point stabilizer has order {}, expected {order}",
                g.order()
            )));
        }
    }
    Ok(derived)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_polynomials_are_reciprocal_pair() {
        let f = golay_generator_polynomials();
        // The two factors are mutual reciprocals: reversing the 12 bits of
        // one gives the other.
        let reverse = |p: u32| -> u32 {
            let mut out = 0;
            for i in 0..12 {
                if p >> i & 1 == 1 {
                    out |= 1 << (11 - i);
                }
            }
            out
        };
        assert_eq!(reverse(f[0]), f[1]);
    }

    #[test]
    fn extended_code_has_golay_parameters() {
        let code = GolayCode::extended();
        assert_eq!(code.codewords.len(), 4096);
        // weight distribution asserted in the constructor
        assert_eq!(code.first_dodecad().count_ones(), 12);
    }

    #[test]
    fn projective_maps_preserve_code() {
        let code = GolayCode::extended();
        assert!(code.admits(&translation()));
        assert!(code.admits(&negated_inversion()));
    }

    #[test]
    fn power_twist_exists() {
        let code = GolayCode::extended();
        let delta = find_power_twist(&code).expect("a power twist must exist");
        assert!(code.admits(&delta));
    }
}
