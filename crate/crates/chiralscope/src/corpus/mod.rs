//! Built-in test groups and published generator data: alternating groups,
//! projective special linear groups via the projective-line action, the five
//! Mathieu groups, and the known chirality witness pairs.
//!
//! Every named group is certified on construction: the stabilizer-chain
//! order must equal the published order or construction fails loudly.

pub mod data;
pub mod field;
pub mod golay;
pub mod parse;

use num_bigint::BigUint;
use num_traits::One;

use crate::chirality::GenPair;
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::{Permutation, Point};

use field::Field;

/// A group with published metadata attached.
pub struct NamedGroup {
    pub name: String,
    pub group: PermGroup,
    pub known_order: BigUint,
    /// Order of the outer automorphism group (metadata, never computed).
    pub out_order: u64,
}

impl NamedGroup {
    fn certified(
        name: impl Into<String>,
        degree: usize,
        gens: Vec<Permutation>,
        known_order: BigUint,
        out_order: u64,
    ) -> Result<NamedGroup> {
        let name = name.into();
        let group = PermGroup::from_generators(degree, gens)?;
        if group.order() != &known_order {
            return Err(Error::integrity(format!(
                "{name}: constructed order {} differs from the published order {known_order}",
                group.order()
            )));
        }
        Ok(NamedGroup {
            name,
            group,
            known_order,
            out_order,
        })
    }
}

fn factorial(n: u64) -> BigUint {
    let mut out = BigUint::one();
    for i in 2..=n {
        out *= BigUint::from(i);
    }
    out
}

/// The alternating group A_n in its natural action.
pub fn alternating(n: usize) -> Result<NamedGroup> {
    if n < 3 {
        return Err(Error::argument("alternating groups need n >= 3"));
    }
    if n > 64 {
        return Err(Error::argument("alternating degree capped at 64"));
    }
    let three_cycle = Permutation::from_cycles(n, &[vec![1, 2, 3]])?;
    let long = if n % 2 == 1 {
        Permutation::from_cycles(n, &[(1..=n).collect()])?
    } else {
        Permutation::from_cycles(n, &[(2..=n).collect()])?
    };
    let known_order = factorial(n as u64) / BigUint::from(2u32);
    let out_order = if n == 6 { 4 } else { 2 };
    NamedGroup::certified(
        format!("A{n}"),
        n,
        vec![three_cycle, long],
        known_order,
        out_order,
    )
}

/// PSL₂(q) acting on the q+1 points of the projective line. Points are
/// labelled: 1..=q are the field elements (index order), q+1 is ∞.
pub fn psl2(q: u64) -> Result<NamedGroup> {
    if !(4..=field::MAX_Q).contains(&q) {
        return Err(Error::argument(format!(
            "psl2 supports 4 <= q <= {}, got {q}",
            field::MAX_Q
        )));
    }
    let f = Field::new(q, data::irreducible_poly(q))?;
    let n = q as usize + 1;
    let infinity = q as Point; // 0-based index of ∞
    let mut gens = Vec::new();
    // One translation z ↦ z+a per basis element of the field.
    for a in f.basis() {
        let mut images: Vec<Point> = (0..n as Point).collect();
        for z in f.elements() {
            images[z as usize] = f.add(z, a) as Point;
        }
        images[infinity as usize] = infinity;
        gens.push(Permutation::from_images(images)?);
    }
    // The inversion z ↦ −1/z.
    let mut images: Vec<Point> = (0..n as Point).collect();
    images[0] = infinity;
    images[infinity as usize] = 0;
    for z in f.elements().skip(1) {
        images[z as usize] = f.neg(f.inv(z)?) as Point;
    }
    gens.push(Permutation::from_images(images)?);

    let d = if q % 2 == 0 { 1u64 } else { 2 };
    let known_order = BigUint::from(q) * BigUint::from(q * q - 1) / BigUint::from(d);
    let (_, k) = field::prime_power(q)?;
    let out_order = d * k as u64;
    NamedGroup::certified(format!("psl2:{q}"), n, gens, known_order, out_order)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MathieuName {
    M11,
    M12,
    M22,
    M23,
    M24,
}

impl MathieuName {
    fn as_str(self) -> &'static str {
        match self {
            MathieuName::M11 => "M11",
            MathieuName::M12 => "M12",
            MathieuName::M22 => "M22",
            MathieuName::M23 => "M23",
            MathieuName::M24 => "M24",
        }
    }

    fn known_order(self) -> u64 {
        match self {
            MathieuName::M11 => golay::M11_ORDER,
            MathieuName::M12 => golay::M12_ORDER,
            MathieuName::M22 => golay::M22_ORDER,
            MathieuName::M23 => golay::M23_ORDER,
            MathieuName::M24 => golay::M24_ORDER,
        }
    }

    fn out_order(self) -> u64 {
        match self {
            MathieuName::M11 | MathieuName::M23 | MathieuName::M24 => 1,
            MathieuName::M12 | MathieuName::M22 => 2,
        }
    }
}

/// One of the five Mathieu groups, from the shipped generator data.
pub fn mathieu(name: MathieuName) -> Result<NamedGroup> {
    let block = data::mathieu_generator_blocks()
        .get(name.as_str())
        .ok_or_else(|| Error::integrity(format!("no shipped generators for {}", name.as_str())))?;
    NamedGroup::certified(
        name.as_str(),
        block.degree,
        block.generators.clone(),
        BigUint::from(name.known_order()),
        name.out_order(),
    )
}

/// The published chiral pair for A_n: for even n ≥ 8 take
/// x = (2,…,n), t = (1,2)(3,4); for odd n ≥ 9 take x = (1,…,n),
/// t = (1,2)(3,6).
pub fn published_pair_alternating(n: usize) -> Result<GenPair> {
    if n < 8 {
        return Err(Error::argument(
            "published alternating pairs start at n = 8 (A_7 and below have no chiral pairs)",
        ));
    }
    let (x, t) = if n % 2 == 0 {
        (
            Permutation::from_cycles(n, &[(2..=n).collect()])?,
            Permutation::from_cycles(n, &[vec![1, 2], vec![3, 4]])?,
        )
    } else {
        (
            Permutation::from_cycles(n, &[(1..=n).collect()])?,
            Permutation::from_cycles(n, &[vec![1, 2], vec![3, 6]])?,
        )
    };
    Ok(GenPair::new(x, t))
}

/// The published M23 witness: rotations (x, y) of orders 11 and 15 with
/// t = x·y an involution; the polyhedron has type {11,15}.
pub fn published_pair_m23() -> GenPair {
    let p = &data::published_pairs()["M23"];
    GenPair::from_rotations(p.x.clone(), p.y.clone())
}

/// The published M24 witness: type {23,15}.
pub fn published_pair_m24() -> GenPair {
    let p = &data::published_pairs()["M24"];
    GenPair::from_rotations(p.x.clone(), p.y.clone())
}

/// Resolves a group spec: a Mathieu name (`M11`), an alternating name
/// (`A7`), or `psl2:q`.
pub fn by_name(spec: &str) -> Result<NamedGroup> {
    match spec {
        "M11" => mathieu(MathieuName::M11),
        "M12" => mathieu(MathieuName::M12),
        "M22" => mathieu(MathieuName::M22),
        "M23" => mathieu(MathieuName::M23),
        "M24" => mathieu(MathieuName::M24),
        _ => {
            if let Some(n) = spec.strip_prefix('A') {
                let n: usize = n
                    .parse()
                    .map_err(|_| Error::argument(format!("bad alternating degree in '{spec}'")))?;
                return alternating(n);
            }
            if let Some(q) = spec.strip_prefix("psl2:") {
                let q: u64 = q
                    .parse()
                    .map_err(|_| Error::argument(format!("bad field size in '{spec}'")))?;
                return psl2(q);
            }
            Err(Error::argument(format!(
                "unknown group spec '{spec}' (try M11..M24, A<n>, or psl2:<q>)"
            )))
        }
    }
}

/// Descriptors of the built-in groups, for the `corpus` listing.
pub fn builtin_descriptors() -> Vec<(String, String)> {
    let mut out = vec![
        ("M11".into(), "Mathieu group, degree 11, order 7920, out 1".into()),
        ("M12".into(), "Mathieu group, degree 12, order 95040, out 2".into()),
        ("M22".into(), "Mathieu group, degree 22, order 443520, out 2".into()),
        ("M23".into(), "Mathieu group, degree 23, order 10200960, out 1".into()),
        ("M24".into(), "Mathieu group, degree 24, order 244823040, out 1".into()),
        (
            "A<n>".into(),
            "alternating group, natural action, 3 <= n <= 64; out 2 (4 for n = 6)".into(),
        ),
        (
            "psl2:<q>".into(),
            "projective special linear group on q+1 points, 4 <= q <= 169".into(),
        ),
    ];
    out.sort();
    out
}

/// Builds a group from a parsed file, wrapping it as an anonymous named
/// group (no published order to certify against).
pub fn from_group_file(text: &str, out_order: u64) -> Result<NamedGroup> {
    let parsed = parse::parse_group_file(text)?;
    let group = PermGroup::from_generators(parsed.degree, parsed.generators)?;
    let known_order = group.order().clone();
    Ok(NamedGroup {
        name: "file".to_string(),
        group,
        known_order,
        out_order,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alternating_orders_and_out() {
        assert_eq!(alternating(5).unwrap().group.order_u128(), Some(60));
        let a7 = alternating(7).unwrap();
        assert_eq!(a7.group.order_u128(), Some(2520));
        assert_eq!(a7.out_order, 2);
        assert_eq!(alternating(6).unwrap().out_order, 4);
        assert!(alternating(2).is_err());
    }

    #[test]
    fn psl2_small_orders() {
        let g = psl2(5).unwrap();
        assert_eq!(g.group.order_u128(), Some(60));
        assert_eq!(g.group.degree(), 6);

        let g = psl2(8).unwrap();
        assert_eq!(g.group.order_u128(), Some(504));
        // three translations plus the inversion
        assert_eq!(g.group.generators().len(), 4);

        let g = psl2(9).unwrap();
        assert_eq!(g.group.order_u128(), Some(360));
        assert_eq!(g.out_order, 4);

        assert!(psl2(2).is_err());
        assert!(psl2(170).is_err());
    }

    #[test]
    fn psl2_generator_sanity() {
        // Translations commute pairwise; the inversion is an involution.
        for q in [4u64, 8, 9, 25, 27] {
            let g = psl2(q).unwrap();
            let gens = g.group.generators();
            let translations = &gens[..gens.len() - 1];
            let inversion = gens.last().unwrap();
            assert_eq!(inversion.order(), 2, "q={q}");
            for a in translations {
                for b in translations {
                    assert_eq!(a.compose(b), b.compose(a), "q={q}");
                }
            }
        }
    }

    #[test]
    fn psl2_largest_supported() {
        let g = psl2(169).unwrap();
        assert_eq!(g.group.degree(), 170);
        // 169·(169²−1)/2
        assert_eq!(g.group.order_u128(), Some(169 * (169 * 169 - 1) / 2));
    }

    #[test]
    fn mathieu_m11_certifies() {
        let m11 = mathieu(MathieuName::M11).unwrap();
        assert_eq!(m11.group.order_u128(), Some(7920));
        assert_eq!(m11.out_order, 1);
    }

    #[test]
    fn published_alternating_pairs() {
        let p8 = published_pair_alternating(8).unwrap();
        assert_eq!(p8.x.to_string(), "(2,3,4,5,6,7,8)");
        assert_eq!(p8.t.to_string(), "(1,2)(3,4)");
        let p9 = published_pair_alternating(9).unwrap();
        assert_eq!(p9.x.to_string(), "(1,2,3,4,5,6,7,8,9)");
        assert_eq!(p9.t.to_string(), "(1,2)(3,6)");
        assert!(published_pair_alternating(7).is_err());
    }

    #[test]
    fn by_name_resolves() {
        assert_eq!(by_name("A5").unwrap().group.order_u128(), Some(60));
        assert_eq!(by_name("psl2:7").unwrap().group.order_u128(), Some(168));
        assert!(by_name("B12").is_err());
    }
}
