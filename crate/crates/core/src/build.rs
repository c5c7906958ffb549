//! Fixture constructors: one-object groups, pair groupoids, group bundles and
//! products `pair(n) × H`.
//!
//! Permutations multiply right to left, as functions: `(12)(13)` applies
//! `(13)` first and equals `(132)`.

use std::collections::{BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::groupoid::{validate, Groupoid, RawTable};

/// A finite group given by its Cayley table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Group {
    name: String,
    elements: Vec<String>,
    table: Vec<usize>,
    identity: usize,
}

impl Group {
    /// Builds a group from a full Cayley table, checking the group axioms by
    /// validating it as a one-object groupoid.
    pub fn from_table(name: &str, elements: Vec<String>, table: Vec<usize>) -> Result<Self> {
        let n = elements.len();
        if table.len() != n * n {
            return Err(Error::Builder(format!(
                "Cayley table for {name} has {} entries, expected {}",
                table.len(),
                n * n
            )));
        }
        let raw = RawTable::from_parts(
            elements.clone(),
            table.iter().enumerate().map(|(i, &z)| ((i / n, i % n), z)),
        )?;
        let g = validate(name, &raw)?;
        if g.identities().len() != 1 {
            return Err(Error::Builder(format!("{name} is not a group")));
        }
        let identity = g.identities()[0].0;
        Ok(Self {
            name: name.to_string(),
            elements,
            table,
            identity,
        })
    }

    /// `Zn` with elements `0..n` under addition mod `n`.
    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Builder(
                "cyclic group order must be at least 1".into(),
            ));
        }
        let elements = (0..n).map(|i| i.to_string()).collect();
        let table = (0..n * n).map(|i| (i / n + i % n) % n).collect();
        Self::from_table(&format!("Z{n}"), elements, table)
    }

    /// The symmetric group on `n` letters, elements in cycle notation.
    pub fn symmetric(n: usize) -> Result<Self> {
        if !(1..=6).contains(&n) {
            return Err(Error::Builder(format!("S{n} unsupported (1 ≤ n ≤ 6)")));
        }
        let mut gens = vec![Perm::identity(n)];
        if n >= 2 {
            gens.push(Perm::transposition(n, 0, 1));
            gens.push(Perm::rotation(n));
        }
        perm_group(&format!("S{n}"), &gens)
    }

    /// The dihedral group of order `2n`, acting on the vertices of an n-gon.
    pub fn dihedral(n: usize) -> Result<Self> {
        if !(3..=9).contains(&n) {
            return Err(Error::Builder(format!("D{n} unsupported (3 ≤ n ≤ 9)")));
        }
        let reflection = Perm((0..n).map(|i| n - 1 - i).collect());
        perm_group(&format!("D{n}"), &[Perm::rotation(n), reflection])
    }

    /// Parses `Zn`, `Sn` or `Dn`.
    pub fn named(name: &str) -> Result<Self> {
        let bad = || Error::Builder(format!("unknown group `{name}` (expected Zn, Sn or Dn)"));
        let (kind, digits) = name.split_at(name.char_indices().nth(1).ok_or_else(bad)?.0);
        let n: usize = digits.parse().map_err(|_| bad())?;
        match kind {
            "Z" => Self::cyclic(n),
            "S" => Self::symmetric(n),
            "D" => Self::dihedral(n),
            _ => Err(bad()),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order() + b]
    }
}

/// A permutation of `0..n`, stored as its image list.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm(pub Vec<usize>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n).collect())
    }

    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut p = Self::identity(n);
        p.0.swap(a, b);
        p
    }

    /// `i ↦ i + 1 mod n`.
    pub fn rotation(n: usize) -> Self {
        Perm((0..n).map(|i| (i + 1) % n).collect())
    }

    /// `self ∘ other`: apply `other` first.
    pub fn then_after(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        Perm(inv)
    }

    /// Cycle notation with 1-based points, `e` for the identity.
    pub fn cycle_notation(&self) -> String {
        let n = self.0.len();
        let mut seen = vec![false; n];
        let mut out = String::new();
        for start in 0..n {
            if seen[start] || self.0[start] == start {
                continue;
            }
            out.push('(');
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                out.push_str(&(i + 1).to_string());
                i = self.0[i];
            }
            out.push(')');
        }
        if out.is_empty() {
            "e".to_string()
        } else {
            out
        }
    }
}

fn perm_group(name: &str, gens: &[Perm]) -> Result<Group> {
    let n = gens[0].0.len();
    let mut found: BTreeSet<Perm> = BTreeSet::new();
    let mut queue = VecDeque::from([Perm::identity(n)]);
    while let Some(p) = queue.pop_front() {
        if !found.insert(p.clone()) {
            continue;
        }
        for g in gens {
            let q = g.then_after(&p);
            if !found.contains(&q) {
                queue.push_back(q);
            }
        }
    }
    let mut perms: Vec<Perm> = found.into_iter().collect();
    perms.sort_by_key(|p| {
        let s = p.cycle_notation();
        (s != "e", s.len(), s)
    });
    let index = |p: &Perm| perms.iter().position(|q| q == p).expect("closed");
    let table = perms
        .iter()
        .flat_map(|a| perms.iter().map(move |b| (a, b)))
        .map(|(a, b)| index(&a.then_after(b)))
        .collect();
    let elements = perms.iter().map(Perm::cycle_notation).collect();
    Group::from_table(name, elements, table)
}

/// A group as a groupoid with one identity.
pub fn one_object(group: &Group) -> Result<Groupoid> {
    let n = group.order();
    let raw = RawTable::from_parts(
        group.elements.clone(),
        (0..n).flat_map(|a| (0..n).map(move |b| ((a, b), group.mul(a, b)))),
    )?;
    validate(group.name(), &raw)
}

pub fn cyclic(n: usize) -> Result<Groupoid> {
    one_object(&Group::cyclic(n)?)
}

pub fn symmetric(n: usize) -> Result<Groupoid> {
    one_object(&Group::symmetric(n)?)
}

pub fn dihedral(n: usize) -> Result<Groupoid> {
    one_object(&Group::dihedral(n)?)
}

/// The pair groupoid on `{1..n}`: elements `(x,y)` with `(x,y)(y,z) = (x,z)`.
pub fn pair(n: usize) -> Result<Groupoid> {
    if n == 0 {
        return Err(Error::Builder("pair groupoid needs n ≥ 1".into()));
    }
    let elements = pair_tokens(n);
    let idx = |x: usize, y: usize| x * n + y;
    let products = (0..n).flat_map(|x| {
        (0..n).flat_map(move |y| (0..n).map(move |z| ((idx(x, y), idx(y, z)), idx(x, z))))
    });
    validate(
        format!("pair{n}"),
        &RawTable::from_parts(elements, products)?,
    )
}

fn pair_tokens(n: usize) -> Vec<String> {
    (1..=n)
        .flat_map(|x| (1..=n).map(move |y| format!("({x},{y})")))
        .collect()
}

/// Disjoint union of groups with no cross-fiber products. Tokens are
/// `k:t` for element `t` of the k-th fiber (1-based).
pub fn bundle(fibers: &[Group]) -> Result<Groupoid> {
    if fibers.is_empty() {
        return Err(Error::Builder("bundle needs at least one fiber".into()));
    }
    let mut elements = Vec::new();
    let mut products = Vec::new();
    for (k, group) in fibers.iter().enumerate() {
        let offset = elements.len();
        elements.extend(group.elements.iter().map(|t| format!("{}:{t}", k + 1)));
        let n = group.order();
        for a in 0..n {
            for b in 0..n {
                products.push(((offset + a, offset + b), offset + group.mul(a, b)));
            }
        }
    }
    let name = fibers
        .iter()
        .map(|g| g.name())
        .collect::<Vec<_>>()
        .join("_");
    validate(
        format!("bundle_{name}"),
        &RawTable::from_parts(elements, products)?,
    )
}

/// `pair(n) × H` with the componentwise product. Tokens are `(x,y):t`.
pub fn product(n: usize, group: &Group) -> Result<Groupoid> {
    if n == 0 {
        return Err(Error::Builder("pair groupoid needs n ≥ 1".into()));
    }
    let m = group.order();
    let elements = pair_tokens(n)
        .into_iter()
        .flat_map(|p| group.elements.iter().map(move |t| format!("{p}:{t}")))
        .collect();
    let idx = |x: usize, y: usize, s: usize| (x * n + y) * m + s;
    let mut products = Vec::new();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                for s in 0..m {
                    for t in 0..m {
                        products.push(((idx(x, y, s), idx(y, z, t)), idx(x, z, group.mul(s, t))));
                    }
                }
            }
        }
    }
    validate(
        format!("pair{n}x{}", group.name()),
        &RawTable::from_parts(elements, products)?,
    )
}

/// Builder request as accepted on the command line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BuildSpec {
    Group(String),
    Pair(usize),
    Bundle(Vec<String>),
    Product(usize, String),
}

impl BuildSpec {
    /// `group NAME`, `pair N`, `bundle NAME...`, `product N NAME`.
    pub fn parse(kind: &str, args: &[String]) -> Result<Self> {
        let num = |s: &String| {
            s.parse::<usize>()
                .map_err(|_| Error::Builder(format!("expected a number, got `{s}`")))
        };
        match (kind, args) {
            ("group", [name]) => Ok(BuildSpec::Group(name.clone())),
            ("pair", [n]) => Ok(BuildSpec::Pair(num(n)?)),
            ("bundle", names) if !names.is_empty() => Ok(BuildSpec::Bundle(names.to_vec())),
            ("product", [n, name]) => Ok(BuildSpec::Product(num(n)?, name.clone())),
            _ => Err(Error::Builder(format!(
                "bad builder `{kind} {}`",
                args.join(" ")
            ))),
        }
    }

    pub fn build(&self) -> Result<Groupoid> {
        match self {
            BuildSpec::Group(name) => one_object(&Group::named(name)?),
            BuildSpec::Pair(n) => pair(*n),
            BuildSpec::Bundle(names) => bundle(
                &names
                    .iter()
                    .map(|n| Group::named(n))
                    .collect::<Result<Vec<_>>>()?,
            ),
            BuildSpec::Product(n, name) => product(*n, &Group::named(name)?),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutation_products_compose_right_to_left() {
        let s3 = symmetric(3).unwrap();
        let e = |t: &str| s3.elem(t).unwrap();
        assert_eq!(s3.compose(e("(12)"), e("(13)")), Some(e("(132)")));
        assert_eq!(s3.compose(e("(13)"), e("(12)")), Some(e("(123)")));
        assert_eq!(
            s3.tokens(),
            &["e", "(12)", "(13)", "(23)", "(123)", "(132)"]
        );
    }

    #[test]
    fn fixture_sizes() {
        assert_eq!(pair(2).unwrap().len(), 4);
        let p3 = pair(3).unwrap();
        assert_eq!((p3.len(), p3.identities().len()), (9, 3));
        let b = bundle(&[Group::cyclic(4).unwrap(), Group::symmetric(3).unwrap()]).unwrap();
        assert_eq!((b.len(), b.identities().len()), (10, 2));
        let t6 = product(2, &Group::symmetric(3).unwrap()).unwrap();
        assert_eq!((t6.len(), t6.identities().len()), (24, 2));
        assert_eq!(dihedral(4).unwrap().len(), 8);
        for n in 1..=6 {
            assert_eq!(cyclic(n).unwrap().len(), n);
        }
    }

    #[test]
    fn named_groups() {
        assert_eq!(Group::named("Z5").unwrap().order(), 5);
        assert_eq!(Group::named("S4").unwrap().order(), 24);
        assert_eq!(Group::named("D4").unwrap().order(), 8);
        assert!(Group::named("Q8").is_err());
        assert!(Group::named("Z").is_err());
    }

    #[test]
    fn bad_cayley_table_is_rejected() {
        let elems = vec!["a".to_string(), "b".to_string()];
        assert!(Group::from_table("bad", elems, vec![0, 1, 1, 1]).is_err());
    }

    #[test]
    fn build_spec_parsing() {
        let args = |v: &[&str]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>();
        assert_eq!(
            BuildSpec::parse("product", &args(&["2", "S3"])).unwrap(),
            BuildSpec::Product(2, "S3".into())
        );
        assert!(BuildSpec::parse("pair", &args(&["x"])).is_err());
        assert!(BuildSpec::parse("bundle", &[]).is_err());
        let g = BuildSpec::parse("bundle", &args(&["Z2", "Z3"]))
            .unwrap()
            .build()
            .unwrap();
        assert_eq!(g.len(), 5);
    }
}
