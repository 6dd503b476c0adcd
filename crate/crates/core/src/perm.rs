use std::fmt;

use crate::error::{Error, Result};

/// A permutation of the points `0..degree`, stored as its image list.
///
/// Products act on the right: `x.compose(y)` applies `x` first, then `y`.
/// Conjugation follows the same convention, `g^x = x⁻¹ g x`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Box<[u32]>,
}

impl Perm {
    pub fn identity(degree: usize) -> Perm {
        Perm {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from 0-based images, rejecting anything that is not a bijection.
    pub fn from_images(images: Vec<u32>) -> Result<Perm> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            let i = i as usize;
            if i >= n {
                return Err(Error::input(format!(
                    "image {} out of range for degree {}",
                    i + 1,
                    n
                )));
            }
            if seen[i] {
                return Err(Error::input(format!(
                    "image {} repeated; not a bijection",
                    i + 1
                )));
            }
            seen[i] = true;
        }
        Ok(Perm {
            images: images.into_boxed_slice(),
        })
    }

    /// Builds a permutation from 0-based cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Perm> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut used = vec![false; degree];
        for cycle in cycles {
            for (k, &p) in cycle.iter().enumerate() {
                if p >= degree {
                    return Err(Error::input(format!(
                        "point {} exceeds degree {}",
                        p + 1,
                        degree
                    )));
                }
                if used[p] {
                    return Err(Error::input(format!(
                        "point {} repeated in cycle notation",
                        p + 1
                    )));
                }
                used[p] = true;
                images[p] = cycle[(k + 1) % cycle.len()] as u32;
            }
        }
        Ok(Perm {
            images: images.into_boxed_slice(),
        })
    }

    /// Parses 1-based cycle notation such as `"(1 2 3)(4 5)"` or `"()"`.
    pub fn parse(text: &str, degree: usize) -> Result<Perm> {
        let cycles = parse_cycles(text)?;
        Perm::from_cycles(degree, &cycles)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn image(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// `self` then `other`.
    pub fn compose(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm {
            images: self
                .images
                .iter()
                .map(|&x| other.images[x as usize])
                .collect(),
        }
    }

    /// Checked product for callers that cannot guarantee equal degrees.
    pub fn try_compose(&self, other: &Perm) -> Result<Perm> {
        if self.degree() != other.degree() {
            return Err(Error::input(format!(
                "cannot compose permutations of degree {} and {}",
                self.degree(),
                other.degree()
            )));
        }
        Ok(self.compose(other))
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Perm {
            images: inv.into_boxed_slice(),
        }
    }

    /// `x⁻¹ self x`.
    pub fn conjugate_by(&self, x: &Perm) -> Perm {
        x.inverse().compose(self).compose(x)
    }

    pub fn pow(&self, mut e: u64) -> Perm {
        let mut base = self.clone();
        let mut acc = Perm::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&base);
            }
            base = base.compose(&base);
            e >>= 1;
        }
        acc
    }

    /// Element order, the lcm of the cycle lengths.
    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| lcm(acc, c.len() as u64))
    }

    pub fn first_moved_point(&self) -> Option<usize> {
        self.images
            .iter()
            .enumerate()
            .find(|(i, &x)| *i as u32 != x)
            .map(|(i, _)| i)
    }

    /// Nontrivial cycles, 0-based, each starting at its least point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.image(start) == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut p = self.image(start);
            while p != start {
                seen[p] = true;
                cycle.push(p);
                p = self.image(p);
            }
            out.push(cycle);
        }
        out
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            f.write_str("(")?;
            for (k, p) in c.iter().enumerate() {
                if k > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{}", p + 1)?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{}", self)
    }
}

/// Parses cycle notation into 0-based cycles. Whitespace and commas between points
/// are accepted; repeated points are rejected.
pub fn parse_cycles(text: &str) -> Result<Vec<Vec<usize>>> {
    let mut cycles = Vec::new();
    let mut current: Option<Vec<usize>> = None;
    let mut number = String::new();
    let mut seen = std::collections::HashSet::new();

    let mut flush = |number: &mut String, current: &mut Option<Vec<usize>>| -> Result<()> {
        if number.is_empty() {
            return Ok(());
        }
        let p: usize = number
            .parse()
            .map_err(|_| Error::input(format!("bad point '{}'", number)))?;
        number.clear();
        if p == 0 {
            return Err(Error::input("points are 1-based; 0 is not a point"));
        }
        if !seen.insert(p) {
            return Err(Error::input(format!(
                "point {} repeated in cycle notation",
                p
            )));
        }
        match current {
            Some(c) => c.push(p - 1),
            None => return Err(Error::input("point outside parentheses")),
        }
        Ok(())
    };

    for ch in text.chars() {
        match ch {
            '(' => {
                if current.is_some() {
                    return Err(Error::input("nested '('"));
                }
                current = Some(Vec::new());
            }
            ')' => {
                flush(&mut number, &mut current)?;
                match current.take() {
                    Some(c) => {
                        if c.len() > 1 {
                            cycles.push(c);
                        }
                    }
                    None => return Err(Error::input("unmatched ')'")),
                }
            }
            c if c.is_ascii_digit() => number.push(c),
            c if c.is_whitespace() || c == ',' => flush(&mut number, &mut current)?,
            other => return Err(Error::input(format!("unexpected character '{}'", other))),
        }
    }
    if current.is_some() {
        return Err(Error::input("unterminated cycle"));
    }
    if !number.is_empty() {
        return Err(Error::input("point outside parentheses"));
    }
    Ok(cycles)
}

/// Largest point (1-based) mentioned in cycle notation, or 0 for the identity.
pub fn max_point(text: &str) -> Result<usize> {
    Ok(parse_cycles(text)?
        .iter()
        .flatten()
        .map(|p| p + 1)
        .max()
        .unwrap_or(0))
}

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        let p = Perm::parse("(1 2 3)(4 5)", 5).unwrap();
        assert_eq!(p.to_string(), "(1 2 3)(4 5)");
        assert_eq!(p.order(), 6);
        assert_eq!(Perm::parse(" ( ) ", 3).unwrap(), Perm::identity(3));
        assert_eq!(Perm::identity(4).to_string(), "()");
        assert_eq!(
            Perm::parse("(3 1 2)", 3).unwrap(),
            Perm::parse("(1 2 3)", 3).unwrap()
        );
    }

    #[test]
    fn parse_rejects_bad_input() {
        assert!(Perm::parse("(1 2 1)", 3).is_err());
        assert!(Perm::parse("(1 2)(2 3)", 3).is_err());
        assert!(Perm::parse("(1 4)", 3).is_err());
        assert!(Perm::parse("(0 1)", 3).is_err());
        assert!(Perm::parse("(1 2", 3).is_err());
        assert!(Perm::parse("1 2)", 3).is_err());
        assert!(Perm::parse("(1 x)", 3).is_err());
        assert!(Perm::from_images(vec![0, 0, 1]).is_err());
        assert!(Perm::from_images(vec![0, 3, 1]).is_err());
    }

    #[test]
    fn right_action_convention() {
        let a = Perm::parse("(1 2)", 3).unwrap();
        let b = Perm::parse("(1 2 3)", 3).unwrap();
        // 1 -a-> 2 -b-> 3
        assert_eq!(a.compose(&b).image(0), 2);
        assert_eq!(a.conjugate_by(&b), Perm::parse("(2 3)", 3).unwrap());
        assert!(a.try_compose(&Perm::identity(4)).is_err());
    }

    #[test]
    fn pow_and_inverse() {
        let c = Perm::parse("(1 2 3 4 5)", 5).unwrap();
        assert!(c.pow(5).is_identity());
        assert_eq!(c.pow(4), c.inverse());
        assert_eq!(c.first_moved_point(), Some(0));
        assert_eq!(max_point("(2 7)").unwrap(), 7);
    }
}
