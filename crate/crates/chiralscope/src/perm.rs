//! Permutations of `{1..n}` stored as image tables.
//!
//! Internally points are `0`-based `u16` indices; everything user-facing
//! (cycle notation, parsing, display) is `1`-based, matching the usual
//! convention for permutation groups.
//!
//! Composition acts on the right: `(a * b)` means "apply `a`, then `b`",
//! so `p^(a*b) = (p^a)^b` for a point `p`.

use std::fmt;

use crate::error::{Error, Result};

pub type Point = u16;

/// A permutation of `{0..degree-1}` (printed 1-based).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<Point>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as Point).collect(),
        }
    }

    /// Builds a permutation from an image table (`images[i]` is the image of
    /// point `i`, 0-based). Fails unless the table is a bijection.
    pub fn from_images(images: Vec<Point>) -> Result<Self> {
        let n = images.len();
        if n == 0 {
            return Err(Error::EmptyDomain);
        }
        let mut seen = vec![false; n];
        for &img in &images {
            let img = img as usize;
            if img >= n || seen[img] {
                return Err(Error::argument("image table is not a bijection"));
            }
            seen[img] = true;
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation of the given degree from disjoint cycles of
    /// 1-based points.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        if degree == 0 {
            return Err(Error::EmptyDomain);
        }
        let mut images: Vec<Point> = (0..degree as Point).collect();
        let mut moved = vec![false; degree];
        for cycle in cycles {
            for i in 0..cycle.len() {
                let a = cycle[i];
                let b = cycle[(i + 1) % cycle.len()];
                if a == 0 || a > degree || b == 0 || b > degree {
                    return Err(Error::argument(format!(
                        "point {} out of range 1..{degree}",
                        a.max(b)
                    )));
                }
                if moved[a - 1] {
                    return Err(Error::argument(format!("point {a} repeated in cycles")));
                }
                moved[a - 1] = true;
                images[a - 1] = (b - 1) as Point;
            }
        }
        Permutation::from_images(images)
    }

    /// Parses disjoint cycle notation, e.g. `(1,2,3)(4,5)`. Whitespace is
    /// ignored anywhere; an empty string or `()` is the identity.
    pub fn parse(degree: usize, text: &str) -> Result<Self> {
        let cycles = parse_cycles(text, 1, 1)?;
        Permutation::from_cycles(degree, &cycles)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[Point] {
        &self.images
    }

    #[inline]
    pub fn image(&self, point: Point) -> Point {
        self.images[point as usize]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &p)| i == p as usize)
    }

    /// `self` then `other`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self
                .images
                .iter()
                .map(|&p| other.images[p as usize])
                .collect(),
        }
    }

    /// Writes `self` then `other` into `out` without allocating.
    pub fn compose_into(&self, other: &Permutation, out: &mut Vec<Point>) {
        out.clear();
        out.extend(self.images.iter().map(|&p| other.images[p as usize]));
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0 as Point; self.images.len()];
        for (i, &p) in self.images.iter().enumerate() {
            images[p as usize] = i as Point;
        }
        Permutation { images }
    }

    /// Conjugate `self^g = g⁻¹ · self · g`.
    pub fn conjugate(&self, g: &Permutation) -> Permutation {
        // (p^g)^(self^g) = (p^self)^g, so image table is g(self(g⁻¹(p))).
        let mut images = vec![0 as Point; self.images.len()];
        for p in 0..self.images.len() {
            images[g.images[p] as usize] = g.images[self.images[p] as usize];
        }
        Permutation { images }
    }

    pub fn pow(&self, mut e: i64) -> Permutation {
        let n = self.degree();
        let base = if e < 0 {
            e = -e;
            self.inverse()
        } else {
            self.clone()
        };
        let mut acc = Permutation::identity(n);
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&sq);
            }
            sq = sq.compose(&sq);
            e >>= 1;
        }
        acc
    }

    /// Decomposes into cycles (1-based), fixed points omitted, each cycle
    /// starting from its least point, cycles sorted by least point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.images[start] as usize == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                cycle.push(p + 1);
                p = self.images[p] as usize;
            }
            out.push(cycle);
        }
        out
    }

    /// Order of the permutation: lcm of its cycle lengths.
    pub fn order(&self) -> u128 {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut order: u128 = 1;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len: u128 = 0;
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                len += 1;
                p = self.images[p] as usize;
            }
            order = num_integer::lcm(order, len);
        }
        order
    }

    /// Smallest moved point, if any.
    pub fn first_moved(&self) -> Option<Point> {
        self.images
            .iter()
            .enumerate()
            .find(|(i, &p)| *i != p as usize)
            .map(|(i, _)| i as Point)
    }

    /// Glues `self` (on n₁ points) with `other` (on n₂ points) into a
    /// permutation of the disjoint union on n₁+n₂ points.
    pub fn glue(&self, other: &Permutation) -> Permutation {
        let n1 = self.degree() as Point;
        let mut images = self.images.clone();
        images.extend(other.images.iter().map(|&p| p + n1));
        Permutation { images }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for cycle in cycles {
            write!(f, "(")?;
            for (i, p) in cycle.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{p}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses cycle notation into lists of 1-based points. `line`/`col` seed the
/// position tracking used in error messages so files can report accurately.
pub(crate) fn parse_cycles(text: &str, line0: usize, col0: usize) -> Result<Vec<Vec<usize>>> {
    let mut cycles = Vec::new();
    let mut current: Option<Vec<usize>> = None;
    let mut digits = String::new();
    let mut line = line0;
    let mut col = col0;
    let err = |line: usize, col: usize, msg: &str| Error::Parse {
        line,
        col,
        msg: msg.to_string(),
    };

    let flush_digits =
        |digits: &mut String, current: &mut Option<Vec<usize>>, line: usize, col: usize| -> Result<()> {
            if digits.is_empty() {
                return Ok(());
            }
            let value: usize = digits
                .parse()
                .map_err(|_| err(line, col, "number too large"))?;
            digits.clear();
            match current {
                Some(cycle) => cycle.push(value),
                None => return Err(err(line, col, "point outside parentheses")),
            }
            Ok(())
        };

    for ch in text.chars() {
        match ch {
            '(' => {
                if current.is_some() {
                    return Err(err(line, col, "nested '(' inside a cycle"));
                }
                current = Some(Vec::new());
            }
            ')' => {
                flush_digits(&mut digits, &mut current, line, col)?;
                match current.take() {
                    Some(cycle) => {
                        if cycle.len() == 1 {
                            return Err(err(line, col, "cycle of length 1"));
                        }
                        if !cycle.is_empty() {
                            cycles.push(cycle);
                        }
                    }
                    None => return Err(err(line, col, "unmatched ')'")),
                }
            }
            ',' => {
                if current.is_none() {
                    return Err(err(line, col, "',' outside parentheses"));
                }
                if digits.is_empty() {
                    return Err(err(line, col, "expected a point before ','"));
                }
                flush_digits(&mut digits, &mut current, line, col)?;
            }
            '0'..='9' => digits.push(ch),
            '\n' => {
                line += 1;
                col = 0;
            }
            c if c.is_whitespace() => {}
            other => {
                return Err(err(line, col, &format!("unexpected character '{other}'")));
            }
        }
        col += 1;
    }
    if current.is_some() {
        return Err(err(line, col, "unterminated cycle"));
    }
    Ok(cycles)
}
