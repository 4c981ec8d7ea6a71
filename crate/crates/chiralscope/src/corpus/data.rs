//! Shipped data tables: Mathieu generators, field polynomials, and the
//! published chirality witness pairs. Everything is validated on load.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::perm::Permutation;

const MATHIEU_GENERATORS: &str = include_str!("../../data/mathieu_generators.txt");
const IRREDUCIBLE_POLYS: &str = include_str!("../../data/irreducible_polys.txt");
const PUBLISHED_PAIRS: &str = include_str!("../../data/published_pairs.txt");

pub struct GeneratorBlock {
    pub degree: usize,
    pub generators: Vec<Permutation>,
}

fn parse_generator_blocks(text: &str, kind: &str) -> Result<BTreeMap<String, GeneratorBlock>> {
    let mut out = BTreeMap::new();
    let mut current: Option<(String, usize)> = None;
    for (ln, raw) in text.lines().enumerate() {
        let line = match raw.find('#') {
            Some(i) => raw[..i].trim(),
            None => raw.trim(),
        };
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("group ") {
            let mut parts = rest.split_whitespace();
            let (name, kw, degree) = (parts.next(), parts.next(), parts.next());
            match (name, kw, degree.and_then(|d| d.parse::<usize>().ok())) {
                (Some(name), Some("degree"), Some(d)) => {
                    out.insert(
                        name.to_string(),
                        GeneratorBlock {
                            degree: d,
                            generators: Vec::new(),
                        },
                    );
                    current = Some((name.to_string(), d));
                }
                _ => {
                    return Err(Error::Parse {
                        line: ln + 1,
                        col: 1,
                        msg: format!("malformed group header in {kind} data"),
                    })
                }
            }
        } else {
            let Some((name, degree)) = &current else {
                return Err(Error::Parse {
                    line: ln + 1,
                    col: 1,
                    msg: format!("generator before any group header in {kind} data"),
                });
            };
            let g = Permutation::parse(*degree, line)?;
            out.get_mut(name).unwrap().generators.push(g);
        }
    }
    Ok(out)
}

pub fn mathieu_generator_blocks() -> &'static BTreeMap<String, GeneratorBlock> {
    static CACHE: OnceLock<BTreeMap<String, GeneratorBlock>> = OnceLock::new();
    CACHE.get_or_init(|| {
        parse_generator_blocks(MATHIEU_GENERATORS, "mathieu").expect("shipped data parses")
    })
}

/// Reducing polynomial for GF(q) from the shipped table (proper prime
/// powers only).
pub fn irreducible_poly(q: u64) -> Option<Vec<u64>> {
    static CACHE: OnceLock<BTreeMap<u64, Vec<u64>>> = OnceLock::new();
    let table = CACHE.get_or_init(|| {
        let mut out = BTreeMap::new();
        for raw in IRREDUCIBLE_POLYS.lines() {
            let line = match raw.find('#') {
                Some(i) => raw[..i].trim(),
                None => raw.trim(),
            };
            if line.is_empty() {
                continue;
            }
            let mut parts = line.split_whitespace();
            let q: u64 = parts.next().unwrap().parse().expect("q parses");
            let coeffs: Vec<u64> = parts
                .next()
                .expect("coefficients present")
                .split(',')
                .map(|c| c.parse().expect("coefficient parses"))
                .collect();
            out.insert(q, coeffs);
        }
        out
    });
    table.get(&q).cloned()
}

pub struct PublishedPair {
    pub group: String,
    pub degree: usize,
    pub x: Permutation,
    pub y: Permutation,
    pub claimed_type: (u128, u128),
}

pub fn published_pairs() -> &'static BTreeMap<String, PublishedPair> {
    static CACHE: OnceLock<BTreeMap<String, PublishedPair>> = OnceLock::new();
    CACHE.get_or_init(|| {
        let mut out = BTreeMap::new();
        let mut header: Option<(String, usize, (u128, u128))> = None;
        let mut x: Option<Permutation> = None;
        for raw in PUBLISHED_PAIRS.lines() {
            let line = match raw.find('#') {
                Some(i) => raw[..i].trim(),
                None => raw.trim(),
            };
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("pair ") {
                let parts: Vec<&str> = rest.split_whitespace().collect();
                assert_eq!(parts.len(), 5, "pair header: name degree <n> type <p,q>");
                assert_eq!(parts[1], "degree");
                assert_eq!(parts[3], "type");
                let degree: usize = parts[2].parse().expect("degree parses");
                let ty: Vec<u128> = parts[4]
                    .split(',')
                    .map(|v| v.parse().expect("type parses"))
                    .collect();
                header = Some((parts[0].to_string(), degree, (ty[0], ty[1])));
                x = None;
            } else if let Some(rest) = line.strip_prefix("x ") {
                let (_, degree, _) = header.as_ref().expect("header before x");
                x = Some(Permutation::parse(*degree, rest).expect("x parses"));
            } else if let Some(rest) = line.strip_prefix("y ") {
                let (name, degree, ty) = header.clone().expect("header before y");
                let y = Permutation::parse(degree, rest).expect("y parses");
                out.insert(
                    name.clone(),
                    PublishedPair {
                        group: name,
                        degree,
                        x: x.clone().expect("x before y"),
                        y,
                        claimed_type: ty,
                    },
                );
            } else {
                panic!("unrecognized line in published pairs data: {line}");
            }
        }
        out
    })
}
