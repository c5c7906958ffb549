//! Groupoid homomorphisms, kernels, the first isomorphism theorem and a
//! backtracking isomorphism search.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::groupoid::{Elem, ElemSet, Groupoid};
use crate::normality::{self, Quotient};
use crate::subgroupoid::SubgroupoidView;

/// A total map between carriers with its homomorphism flags computed by an
/// exhaustive pair scan.
#[derive(Debug, Clone)]
pub struct GroupoidMap<'a> {
    source: &'a Groupoid,
    target: &'a Groupoid,
    mapping: Vec<Elem>,
    is_hom: bool,
    is_strong: bool,
    is_injective: bool,
    is_surjective: bool,
}

impl<'a> GroupoidMap<'a> {
    pub fn check(source: &'a Groupoid, target: &'a Groupoid, mapping: Vec<Elem>) -> Result<Self> {
        if mapping.len() != source.len() {
            return Err(Error::NotAFunction(format!(
                "{} images for {} elements",
                mapping.len(),
                source.len()
            )));
        }
        if let Some(bad) = mapping.iter().find(|y| y.0 >= target.len()) {
            return Err(Error::NotAFunction(format!(
                "image index {} out of range",
                bad.0
            )));
        }
        let mut is_hom = true;
        let mut reflects = true;
        for x in source.elements() {
            for y in source.elements() {
                let (fx, fy) = (mapping[x.0], mapping[y.0]);
                let image_product = target.compose(fx, fy);
                match source.compose(x, y) {
                    Some(xy) => {
                        if image_product != Some(mapping[xy.0]) {
                            is_hom = false;
                        }
                    }
                    None => {
                        if image_product.is_some() {
                            reflects = false;
                        }
                    }
                }
            }
        }
        let mut hit = vec![false; target.len()];
        let mut is_injective = true;
        for y in &mapping {
            if std::mem::replace(&mut hit[y.0], true) {
                is_injective = false;
            }
        }
        Ok(Self {
            source,
            target,
            is_hom,
            is_strong: is_hom && reflects,
            is_injective,
            is_surjective: hit.iter().all(|&b| b),
            mapping,
        })
    }

    /// Builds a map from `x -> y` token pairs; every source element must be
    /// mapped exactly once.
    pub fn from_tokens<S: AsRef<str>>(
        source: &'a Groupoid,
        target: &'a Groupoid,
        pairs: &[(S, S)],
    ) -> Result<Self> {
        let mut mapping: Vec<Option<Elem>> = vec![None; source.len()];
        for (x, y) in pairs {
            let x = source.elem(x.as_ref())?;
            let y = target
                .elem(y.as_ref())
                .map_err(|_| Error::NotAFunction(format!("`{}` not in target", y.as_ref())))?;
            if mapping[x.0].replace(y).is_some_and(|prev| prev != y) {
                return Err(Error::NotAFunction(format!(
                    "`{}` mapped twice",
                    source.token(x)
                )));
            }
        }
        let mapping = mapping
            .into_iter()
            .enumerate()
            .map(|(i, y)| {
                y.ok_or_else(|| {
                    Error::NotAFunction(format!("`{}` unmapped", source.token(Elem(i))))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::check(source, target, mapping)
    }

    pub fn identity(g: &'a Groupoid) -> Self {
        Self::check(g, g, g.elements().collect()).expect("identity map")
    }

    pub fn source(&self) -> &'a Groupoid {
        self.source
    }

    pub fn target(&self) -> &'a Groupoid {
        self.target
    }

    pub fn mapping(&self) -> &[Elem] {
        &self.mapping
    }

    pub fn apply(&self, x: Elem) -> Elem {
        self.mapping[x.0]
    }

    pub fn is_hom(&self) -> bool {
        self.is_hom
    }

    pub fn is_strong(&self) -> bool {
        self.is_strong
    }

    pub fn is_injective(&self) -> bool {
        self.is_injective
    }

    pub fn is_surjective(&self) -> bool {
        self.is_surjective
    }

    pub fn is_bijective(&self) -> bool {
        self.is_injective && self.is_surjective
    }

    /// A bijective strong homomorphism.
    pub fn is_strong_isomorphism(&self) -> bool {
        self.is_strong && self.is_bijective()
    }

    /// `other ∘ self`.
    pub fn then<'b>(&self, other: &GroupoidMap<'b>) -> Result<GroupoidMap<'b>>
    where
        'a: 'b,
    {
        if !std::ptr::eq(self.target, other.source) {
            return Err(Error::ParentMismatch);
        }
        GroupoidMap::check(
            self.source,
            other.target,
            self.mapping.iter().map(|&y| other.apply(y)).collect(),
        )
    }

    /// Preimage of the target's identities. Wide by construction; normal
    /// when the map is a strong homomorphism.
    pub fn kernel(&self) -> Result<SubgroupoidView<'a>> {
        if !self.is_hom {
            return Err(Error::NotHomomorphism);
        }
        let members: ElemSet = self
            .source
            .elements()
            .filter(|&x| self.target.is_identity(self.apply(x)))
            .collect();
        let k = SubgroupoidView::new(self.source, members)
            .map_err(|e| Error::TheoremViolated(format!("kernel not a subgroupoid: {e}")))?;
        if !k.is_wide() {
            return Err(Error::TheoremViolated("kernel is not wide".into()));
        }
        Ok(k)
    }

    /// Token pairs, in source order.
    pub fn to_tokens(&self) -> Vec<(String, String)> {
        self.source
            .elements()
            .map(|x| {
                (
                    self.source.token(x).to_string(),
                    self.target.token(self.apply(x)).to_string(),
                )
            })
            .collect()
    }
}

/// Output of the first isomorphism theorem: `G/Ker(φ)` and the induced
/// `φ̄(gK) = φ(g)`.
#[derive(Debug, Clone)]
pub struct FirstIso<'a> {
    pub quotient: Quotient<'a>,
    induced: Vec<Elem>,
    target: &'a Groupoid,
}

impl FirstIso<'_> {
    pub fn induced(&self) -> GroupoidMap<'_> {
        GroupoidMap::check(self.quotient.groupoid(), self.target, self.induced.clone())
            .expect("checked at construction")
    }
}

/// Factors a surjective strong homomorphism as `φ = φ̄ ∘ j` and verifies that
/// `φ̄` is a strong isomorphism.
pub fn first_iso<'a>(phi: &GroupoidMap<'a>) -> Result<FirstIso<'a>> {
    if !phi.is_strong() {
        return Err(Error::NotStrong);
    }
    if !phi.is_surjective() {
        return Err(Error::NotSurjective);
    }
    let kernel = phi.kernel()?;
    if !normality::is_normal(&kernel) {
        return Err(Error::NotNormalKernel);
    }
    let quotient = normality::quotient(&kernel)?;
    let induced: Vec<Elem> = quotient
        .cosets()
        .iter()
        .map(|c| phi.apply(c.representative))
        .collect();
    for x in phi.source().elements() {
        if induced[quotient.class_of(x).0] != phi.apply(x) {
            return Err(Error::TheoremViolated(format!(
                "φ is not constant on the coset of {}",
                phi.source().token(x)
            )));
        }
    }
    let out = FirstIso {
        quotient,
        induced,
        target: phi.target(),
    };
    if !out.induced().is_strong_isomorphism() {
        return Err(Error::TheoremViolated(
            "φ̄ is not a strong isomorphism".into(),
        ));
    }
    Ok(out)
}

/// Invariants compared before any backtracking: sizes, isotropy orders and
/// per-identity in/out degrees.
fn profile(g: &Groupoid) -> (usize, usize, Vec<(usize, usize, usize)>) {
    let mut per_identity: Vec<(usize, usize, usize)> = g
        .identities()
        .iter()
        .map(|&e| {
            let iso = g.isotropy_members(e).len();
            let out = g.elements().filter(|&x| g.d(x) == e).count();
            let inn = g.elements().filter(|&x| g.r(x) == e).count();
            (iso, out, inn)
        })
        .collect();
    per_identity.sort_unstable();
    (g.len(), g.identities().len(), per_identity)
}

struct Search<'s> {
    a: &'s Groupoid,
    b: &'s Groupoid,
    forward: Vec<Option<Elem>>,
    backward: Vec<Option<Elem>>,
    assigned: Vec<Elem>,
}

impl Search<'_> {
    /// Assigns `x ↦ y` and everything it forces through products with
    /// already assigned elements. Returns false on conflict; the caller
    /// rolls back to the previous length of `assigned`.
    fn assign(&mut self, x: Elem, y: Elem) -> bool {
        let mut pending = vec![(x, y)];
        while let Some((x, y)) = pending.pop() {
            match (self.forward[x.0], self.backward[y.0]) {
                (Some(fx), _) if fx == y => continue,
                (Some(_), _) | (_, Some(_)) => return false,
                _ => {}
            }
            if self.a.is_identity(x) != self.b.is_identity(y) {
                return false;
            }
            self.forward[x.0] = Some(y);
            self.backward[y.0] = Some(x);
            self.assigned.push(x);
            pending.push((self.a.d(x), self.b.d(y)));
            pending.push((self.a.r(x), self.b.r(y)));
            pending.push((self.a.inv(x), self.b.inv(y)));
            for i in 0..self.assigned.len() {
                let z = self.assigned[i];
                let fz = self.forward[z.0].expect("assigned");
                for (p, q) in [((x, z), (y, fz)), ((z, x), (fz, y))] {
                    match (self.a.compose(p.0, p.1), self.b.compose(q.0, q.1)) {
                        (Some(s), Some(t)) => pending.push((s, t)),
                        (None, None) => {}
                        _ => return false,
                    }
                }
            }
        }
        true
    }

    fn rollback(&mut self, len: usize) {
        for x in self.assigned.drain(len..) {
            let y = self.forward[x.0].take().expect("assigned");
            self.backward[y.0] = None;
        }
    }

    fn run(&mut self, order: &[Elem]) -> bool {
        let Some(pos) = order.iter().position(|x| self.forward[x.0].is_none()) else {
            return true;
        };
        let x = order[pos];
        let candidates: Vec<Elem> = self
            .b
            .elements()
            .filter(|&y| self.backward[y.0].is_none())
            .collect();
        for y in candidates {
            let mark = self.assigned.len();
            if self.assign(x, y) && self.run(&order[pos + 1..]) {
                return true;
            }
            self.rollback(mark);
        }
        false
    }
}

/// Searches for a strong isomorphism `A → B`. Identities are tried first,
/// then the remaining elements in carrier order; candidates are tried in
/// carrier order, so the witness is deterministic.
pub fn find_isomorphism<'a>(a: &'a Groupoid, b: &'a Groupoid) -> Option<GroupoidMap<'a>> {
    if profile(a) != profile(b) {
        return None;
    }
    let mut order: Vec<Elem> = a.identities().to_vec();
    order.extend(a.elements().filter(|&x| !a.is_identity(x)));
    let mut search = Search {
        a,
        b,
        forward: vec![None; a.len()],
        backward: vec![None; b.len()],
        assigned: Vec::new(),
    };
    if !search.run(&order) {
        return None;
    }
    let mapping = search
        .forward
        .into_iter()
        .map(|y| y.expect("total"))
        .collect();
    let map = GroupoidMap::check(a, b, mapping).expect("in range");
    debug_assert!(map.is_strong_isomorphism());
    map.is_strong_isomorphism().then_some(map)
}

/// Multiset of isotropy orders, keyed by order.
pub fn isotropy_order_counts(g: &Groupoid) -> BTreeMap<usize, usize> {
    let mut counts = BTreeMap::new();
    for &e in g.identities() {
        *counts.entry(g.isotropy_members(e).len()).or_insert(0) += 1;
    }
    counts
}
