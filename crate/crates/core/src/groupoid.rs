//! Carrier representation and the axiom validator.
//!
//! A groupoid is stored as a dense `n × n` table of optional products over
//! element indices. The source map `d`, target map `r` and inverses are not
//! part of the input: they are derived while validating and cached.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use crate::error::{Axiom, AxiomViolation, Error, Result};
use crate::subgroupoid::SubgroupoidView;

/// Index of an element in its groupoid's carrier (declaration order).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Elem(pub usize);

impl Elem {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// Subsets are index-ordered sets; equality is set equality.
pub type ElemSet = BTreeSet<Elem>;

/// Unvalidated partial multiplication table. An absent pair means the
/// product is undefined.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawTable {
    elements: Vec<String>,
    products: BTreeMap<(usize, usize), usize>,
}

impl RawTable {
    pub fn new(elements: Vec<String>) -> Result<Self> {
        let mut seen = HashMap::with_capacity(elements.len());
        for (i, tok) in elements.iter().enumerate() {
            if tok.is_empty() {
                return Err(Error::EmptyIdentifier);
            }
            if seen.insert(tok.as_str(), i).is_some() {
                return Err(Error::DuplicateElement(tok.clone()));
            }
        }
        Ok(Self {
            elements,
            products: BTreeMap::new(),
        })
    }

    pub fn from_parts(
        elements: Vec<String>,
        products: impl IntoIterator<Item = ((usize, usize), usize)>,
    ) -> Result<Self> {
        let mut table = Self::new(elements)?;
        for ((x, y), z) in products {
            table.set(x, y, z)?;
        }
        Ok(table)
    }

    /// Defines `xy = z`, replacing any previous entry.
    pub fn set(&mut self, x: usize, y: usize, z: usize) -> Result<()> {
        let len = self.elements.len();
        for index in [x, y, z] {
            if index >= len {
                return Err(Error::IndexOutOfRange { index, len });
            }
        }
        self.products.insert((x, y), z);
        Ok(())
    }

    pub fn unset(&mut self, x: usize, y: usize) -> Option<usize> {
        self.products.remove(&(x, y))
    }

    pub fn get(&self, x: usize, y: usize) -> Option<usize> {
        self.products.get(&(x, y)).copied()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn products(&self) -> &BTreeMap<(usize, usize), usize> {
        &self.products
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// A validated finite groupoid. Immutable after construction.
#[derive(Debug, Clone)]
pub struct Groupoid {
    name: String,
    elements: Vec<String>,
    index: HashMap<String, Elem>,
    table: Vec<Option<Elem>>,
    source: Vec<Elem>,
    target: Vec<Elem>,
    inverse: Vec<Elem>,
    identities: Vec<Elem>,
}

impl PartialEq for Groupoid {
    /// Element-wise identity: same name, same tokens in the same order and
    /// the same table.
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.elements == other.elements && self.table == other.table
    }
}

impl Eq for Groupoid {}

/// Checks every axiom exhaustively and derives `d`, `r` and inverses.
///
/// Triples are scanned in lexicographic index order, so the reported witness
/// is the first failing one.
pub fn validate(name: impl Into<String>, raw: &RawTable) -> Result<Groupoid> {
    let n = raw.len();
    if n == 0 {
        return Err(Error::EmptySet);
    }
    let mut table = vec![None; n * n];
    for (&(x, y), &z) in raw.products() {
        table[x * n + y] = Some(z);
    }
    let at = |x: usize, y: usize| table[x * n + y];
    let tok = |i: usize| raw.elements()[i].clone();
    let fail = |axiom, witness: &[usize]| {
        Err(Error::Axiom(AxiomViolation {
            axiom,
            witness: witness.iter().map(|&i| tok(i)).collect(),
        }))
    };

    for g in 0..n {
        for h in 0..n {
            let gh = at(g, h);
            for l in 0..n {
                let hl = at(h, l);
                let left = gh.and_then(|x| at(x, l));
                let right = hl.and_then(|y| at(g, y));
                if left != right {
                    return fail(Axiom::Associativity, &[g, h, l]);
                }
                if right.is_some() != (gh.is_some() && hl.is_some()) {
                    return fail(Axiom::Definedness, &[g, h, l]);
                }
            }
        }
    }

    let mut source = Vec::with_capacity(n);
    let mut target = Vec::with_capacity(n);
    for g in 0..n {
        let right_units: Vec<usize> = (0..n).filter(|&x| at(g, x) == Some(g)).collect();
        let left_units: Vec<usize> = (0..n).filter(|&x| at(x, g) == Some(g)).collect();
        match (right_units.as_slice(), left_units.as_slice()) {
            ([d], [r]) => {
                source.push(Elem(*d));
                target.push(Elem(*r));
            }
            _ => return fail(Axiom::Units, &[g]),
        }
    }

    let mut inverse = Vec::with_capacity(n);
    for g in 0..n {
        let (d, r) = (source[g].0, target[g].0);
        match (0..n).find(|&x| at(x, g) == Some(d) && at(g, x) == Some(r)) {
            Some(x) => inverse.push(Elem(x)),
            None => return fail(Axiom::Inverses, &[g]),
        }
    }

    for (g, dg) in source.iter().enumerate() {
        for (h, rh) in target.iter().enumerate() {
            if at(g, h).is_some() != (dg == rh) {
                return fail(Axiom::Composability, &[g, h]);
            }
        }
    }

    let identities: BTreeSet<Elem> = source.iter().copied().collect();
    let index = raw
        .elements()
        .iter()
        .enumerate()
        .map(|(i, t)| (t.clone(), Elem(i)))
        .collect();
    Ok(Groupoid {
        name: name.into(),
        elements: raw.elements().to_vec(),
        index,
        table: table.into_iter().map(|z| z.map(Elem)).collect(),
        source,
        target,
        inverse,
        identities: identities.into_iter().collect(),
    })
}

impl Groupoid {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// All elements in carrier order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.elements.len()).map(Elem)
    }

    pub fn tokens(&self) -> &[String] {
        &self.elements
    }

    pub fn token(&self, g: Elem) -> &str {
        &self.elements[g.0]
    }

    /// Looks an element up by its identifier.
    pub fn elem(&self, token: &str) -> Result<Elem> {
        self.index
            .get(token)
            .copied()
            .ok_or_else(|| Error::UnknownElement(token.to_string()))
    }

    pub fn d(&self, g: Elem) -> Elem {
        self.source[g.0]
    }

    pub fn r(&self, g: Elem) -> Elem {
        self.target[g.0]
    }

    pub fn inv(&self, g: Elem) -> Elem {
        self.inverse[g.0]
    }

    /// The product `gh`, or `None` when `d(g) ≠ r(h)`.
    pub fn compose(&self, g: Elem, h: Elem) -> Option<Elem> {
        self.table[g.0 * self.len() + h.0]
    }

    /// Product of a word read left to right; `None` if any step is undefined.
    pub fn compose_all(&self, word: &[Elem]) -> Option<Elem> {
        let (&first, rest) = word.split_first()?;
        rest.iter().try_fold(first, |acc, &x| self.compose(acc, x))
    }

    /// The identity set `G0`, in carrier order.
    pub fn identities(&self) -> &[Elem] {
        &self.identities
    }

    pub fn is_identity(&self, g: Elem) -> bool {
        self.source[g.0] == g
    }

    pub fn is_isotropic(&self, g: Elem) -> bool {
        self.source[g.0] == self.target[g.0]
    }

    /// The isotropy group at `e`.
    pub fn isotropy(&self, e: Elem) -> Result<IsotropyGroup> {
        if !self.is_identity(e) {
            return Err(Error::NotAnIdentity(self.token(e).to_string()));
        }
        let group = IsotropyGroup {
            base: e,
            members: self.isotropy_members(e),
        };
        assert!(
            group.satisfies_group_axioms(self),
            "isotropy group at {e} is not a group"
        );
        Ok(group)
    }

    pub(crate) fn isotropy_members(&self, e: Elem) -> Vec<Elem> {
        self.elements()
            .filter(|&g| self.d(g) == e && self.r(g) == e)
            .collect()
    }

    /// `Iso(G)`: the union of all isotropy groups, as a wide subgroupoid.
    pub fn iso_part(&self) -> SubgroupoidView<'_> {
        let members = self.elements().filter(|&g| self.is_isotropic(g)).collect();
        SubgroupoidView::new(self, members).expect("Iso(G) is a subgroupoid")
    }

    /// True iff every isotropy group is commutative.
    pub fn is_abelian(&self) -> bool {
        self.identities.iter().all(|&e| {
            let members = self.isotropy_members(e);
            members.iter().all(|&x| {
                members
                    .iter()
                    .all(|&y| self.compose(x, y) == self.compose(y, x))
            })
        })
    }

    /// Table form, suitable for serialization or re-validation.
    pub fn to_raw(&self) -> RawTable {
        let n = self.len();
        let products = (0..n)
            .flat_map(|x| (0..n).filter_map(move |y| self.table[x * n + y].map(|z| ((x, y), z.0))));
        RawTable::from_parts(self.elements.clone(), products).expect("validated table")
    }

    /// Number of defined products.
    pub fn defined_count(&self) -> usize {
        self.table.iter().filter(|z| z.is_some()).count()
    }

    /// Elements with `r(g) = a` and `d(g) = b`.
    pub fn hom_set(&self, a: Elem, b: Elem) -> impl Iterator<Item = Elem> + '_ {
        self.elements()
            .filter(move |&g| self.r(g) == a && self.d(g) == b)
    }
}

/// `G_e = {g | d(g) = r(g) = e}` with the restricted product.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsotropyGroup {
    pub base: Elem,
    pub members: Vec<Elem>,
}

impl IsotropyGroup {
    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, g: Elem) -> bool {
        self.members.binary_search(&g).is_ok()
    }

    /// Closure, identity and inverses within the member set.
    pub fn satisfies_group_axioms(&self, g: &Groupoid) -> bool {
        let closed = self.members.iter().all(|&x| {
            self.members
                .iter()
                .all(|&y| g.compose(x, y).is_some_and(|z| self.contains(z)))
        });
        let unit = self
            .members
            .iter()
            .all(|&x| g.compose(self.base, x) == Some(x) && g.compose(x, self.base) == Some(x));
        let inverses = self
            .members
            .iter()
            .all(|&x| self.contains(g.inv(x)) && g.compose(x, g.inv(x)) == Some(self.base));
        self.contains(self.base) && closed && unit && inverses
    }

    pub fn is_commutative(&self, g: &Groupoid) -> bool {
        self.members.iter().all(|&x| {
            self.members
                .iter()
                .all(|&y| g.compose(x, y) == g.compose(y, x))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::build;

    fn p2() -> Groupoid {
        build::pair(2).unwrap()
    }

    #[test]
    fn pair_groupoid_calculus() {
        let g = p2();
        let e = |t: &str| g.elem(t).unwrap();
        assert_eq!(g.identities().len(), 2);
        assert_eq!(g.d(e("(1,2)")), e("(2,2)"));
        assert_eq!(g.r(e("(1,2)")), e("(1,1)"));
        assert_eq!(g.inv(e("(1,2)")), e("(2,1)"));
        assert_eq!(g.compose(e("(1,2)"), e("(1,2)")), None);
        assert_eq!(g.compose(e("(1,2)"), e("(2,1)")), Some(e("(1,1)")));
    }

    #[test]
    fn unknown_token() {
        assert_eq!(
            p2().elem("(3,3)"),
            Err(Error::UnknownElement("(3,3)".into()))
        );
    }

    #[test]
    fn identity_squares_to_itself() {
        let g = build::symmetric(3).unwrap();
        for &e in g.identities() {
            assert_eq!(g.compose(e, e), Some(e));
            assert_eq!(g.inv(e), e);
        }
    }

    #[test]
    fn trivial_groupoid_validates() {
        let raw = RawTable::from_parts(vec!["e".into()], [((0, 0), 0)]).unwrap();
        let g = validate("triv", &raw).unwrap();
        assert_eq!(g.identities(), &[Elem(0)]);
    }

    #[test]
    fn mutated_pair_table_is_rejected() {
        let g = p2();
        let mut raw = g.to_raw();
        let (a, b, c) = (
            g.elem("(1,2)").unwrap().0,
            g.elem("(2,1)").unwrap().0,
            g.elem("(2,2)").unwrap().0,
        );
        raw.set(a, b, c).unwrap();
        assert!(matches!(validate("bad", &raw), Err(Error::Axiom(_))));
    }

    #[test]
    fn missing_unit_is_reported() {
        let raw = RawTable::from_parts(vec!["a".into(), "b".into()], [((0, 0), 0)]).unwrap();
        match validate("x", &raw) {
            Err(Error::Axiom(v)) => {
                assert_eq!(v.axiom, Axiom::Units);
                assert_eq!(v.witness, vec!["b".to_string()]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn raw_table_rejects_bad_input() {
        assert_eq!(
            RawTable::new(vec!["a".into(), "a".into()]),
            Err(Error::DuplicateElement("a".into()))
        );
        assert_eq!(RawTable::new(vec!["".into()]), Err(Error::EmptyIdentifier));
        let mut t = RawTable::new(vec!["a".into()]).unwrap();
        assert_eq!(
            t.set(0, 1, 0),
            Err(Error::IndexOutOfRange { index: 1, len: 1 })
        );
    }

    #[test]
    fn isotropy_of_non_identity_fails() {
        let g = p2();
        let x = g.elem("(1,2)").unwrap();
        assert!(matches!(g.isotropy(x), Err(Error::NotAnIdentity(_))));
    }

    #[test]
    fn isotropy_and_iso_part() {
        let g = p2();
        let e = g.elem("(1,1)").unwrap();
        assert_eq!(g.isotropy(e).unwrap().members, vec![e]);
        assert_eq!(g.iso_part().len(), 2);
        let s3 = build::symmetric(3).unwrap();
        assert_eq!(s3.isotropy(s3.identities()[0]).unwrap().order(), 6);
        assert_eq!(s3.iso_part().len(), 6);
        let t6 = build::product(2, &build::Group::symmetric(3).unwrap()).unwrap();
        for &e in t6.identities() {
            assert_eq!(t6.isotropy(e).unwrap().order(), 6);
        }
        assert_eq!(t6.iso_part().len(), 12);
    }

    #[test]
    fn abelian_flags() {
        assert!(p2().is_abelian());
        assert!(!build::symmetric(3).unwrap().is_abelian());
        let z2 = build::Group::cyclic(2).unwrap();
        assert!(build::bundle(&[z2.clone(), z2]).unwrap().is_abelian());
    }
}
