//! Subgroupoids: certification, wideness, intersections, generated
//! subgroupoids, conjugates `g⁻¹Hg` and set products `HK`.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::groupoid::{Elem, ElemSet, Groupoid, RawTable};

/// An arbitrary subset of a groupoid's carrier. No closure is promised.
#[derive(Debug, Clone)]
pub struct ElementSet<'g> {
    parent: &'g Groupoid,
    members: ElemSet,
}

impl<'g> ElementSet<'g> {
    pub fn new(parent: &'g Groupoid, members: impl IntoIterator<Item = Elem>) -> Result<Self> {
        let members: ElemSet = members.into_iter().collect();
        if let Some(bad) = members.iter().find(|g| g.0 >= parent.len()) {
            return Err(Error::IndexOutOfRange {
                index: bad.0,
                len: parent.len(),
            });
        }
        Ok(Self { parent, members })
    }

    pub fn from_tokens<S: AsRef<str>>(parent: &'g Groupoid, tokens: &[S]) -> Result<Self> {
        let members = tokens
            .iter()
            .map(|t| parent.elem(t.as_ref()))
            .collect::<Result<ElemSet>>()?;
        Ok(Self { parent, members })
    }

    pub fn parent(&self) -> &'g Groupoid {
        self.parent
    }

    pub fn members(&self) -> &ElemSet {
        &self.members
    }

    pub fn into_members(self) -> ElemSet {
        self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, g: Elem) -> bool {
        self.members.contains(&g)
    }
}

impl PartialEq for ElementSet<'_> {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.parent, other.parent) && self.members == other.members
    }
}

/// A subset certified closed under inverses and defined products.
#[derive(Debug, Clone)]
pub struct SubgroupoidView<'g> {
    parent: &'g Groupoid,
    members: ElemSet,
    wide: bool,
}

impl PartialEq for SubgroupoidView<'_> {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.parent, other.parent) && self.members == other.members
    }
}

impl Eq for SubgroupoidView<'_> {}

/// First closure failure, if any: a member whose inverse is missing or a
/// pair whose defined product escapes the set.
fn closure_witness(g: &Groupoid, members: &ElemSet) -> Option<String> {
    for &x in members {
        if !members.contains(&g.inv(x)) {
            return Some(format!("inverse of {} missing", g.token(x)));
        }
    }
    for &x in members {
        for &y in members {
            if let Some(z) = g.compose(x, y) {
                if !members.contains(&z) {
                    return Some(format!(
                        "{} {} = {} missing",
                        g.token(x),
                        g.token(y),
                        g.token(z)
                    ));
                }
            }
        }
    }
    None
}

/// True iff `S` is closed under inverses and defined products.
pub fn is_subgroupoid(set: &ElementSet<'_>) -> Result<bool> {
    if set.is_empty() {
        return Err(Error::EmptySet);
    }
    Ok(closure_witness(set.parent, &set.members).is_none())
}

impl<'g> SubgroupoidView<'g> {
    /// Certifies `members` as a subgroupoid of `parent`.
    pub fn new(parent: &'g Groupoid, members: ElemSet) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::EmptySet);
        }
        if let Some(bad) = members.iter().find(|g| g.0 >= parent.len()) {
            return Err(Error::IndexOutOfRange {
                index: bad.0,
                len: parent.len(),
            });
        }
        if let Some(w) = closure_witness(parent, &members) {
            return Err(Error::NotASubgroupoid(w));
        }
        let wide = parent.identities().iter().all(|e| members.contains(e));
        Ok(Self {
            parent,
            members,
            wide,
        })
    }

    pub fn certify(set: ElementSet<'g>) -> Result<Self> {
        Self::new(set.parent, set.members)
    }

    pub fn from_tokens<S: AsRef<str>>(parent: &'g Groupoid, tokens: &[S]) -> Result<Self> {
        Self::certify(ElementSet::from_tokens(parent, tokens)?)
    }

    /// The whole groupoid.
    pub fn whole(parent: &'g Groupoid) -> Self {
        Self::new(parent, parent.elements().collect()).expect("G is a subgroupoid of itself")
    }

    /// `G0` as a wide subgroupoid.
    pub fn identities(parent: &'g Groupoid) -> Self {
        Self::new(parent, parent.identities().iter().copied().collect())
            .expect("G0 is a subgroupoid")
    }

    pub fn parent(&self) -> &'g Groupoid {
        self.parent
    }

    pub fn members(&self) -> &ElemSet {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, g: Elem) -> bool {
        self.members.contains(&g)
    }

    pub fn is_subset_of(&self, other: &SubgroupoidView<'_>) -> bool {
        self.members.is_subset(&other.members)
    }

    /// `G0 ⊆ H`.
    pub fn is_wide(&self) -> bool {
        self.wide
    }

    /// Every member satisfies `d(h) = r(h)`.
    pub fn is_isotropic(&self) -> bool {
        self.members.iter().all(|&h| self.parent.is_isotropic(h))
    }

    /// Identities of the subgroupoid itself: `H ∩ G0`.
    pub fn own_identities(&self) -> ElemSet {
        self.members
            .iter()
            .copied()
            .filter(|&h| self.parent.is_identity(h))
            .collect()
    }

    /// `H_e = {h ∈ H | d(h) = r(h) = e}`.
    pub fn at(&self, e: Elem) -> ElemSet {
        self.members
            .iter()
            .copied()
            .filter(|&h| self.parent.d(h) == e && self.parent.r(h) == e)
            .collect()
    }

    /// `H ∪ G0`.
    pub fn widen(&self) -> SubgroupoidView<'g> {
        let mut members = self.members.clone();
        members.extend(self.parent.identities().iter().copied());
        Self::new(self.parent, members).expect("H ∪ G0 is a subgroupoid")
    }

    pub fn as_element_set(&self) -> ElementSet<'g> {
        ElementSet {
            parent: self.parent,
            members: self.members.clone(),
        }
    }

    pub fn tokens(&self) -> Vec<&'g str> {
        self.members.iter().map(|&h| self.parent.token(h)).collect()
    }

    /// The subgroupoid as a groupoid in its own right, together with the
    /// embedding from its carrier into the parent's.
    pub fn to_groupoid(&self, name: &str) -> (Groupoid, Vec<Elem>) {
        let embedding: Vec<Elem> = self.members.iter().copied().collect();
        let local = |g: Elem| embedding.binary_search(&g).expect("closed");
        let elements = embedding
            .iter()
            .map(|&g| self.parent.token(g).to_string())
            .collect();
        let products = embedding.iter().enumerate().flat_map(|(i, &x)| {
            embedding
                .iter()
                .enumerate()
                .filter_map(move |(j, &y)| self.parent.compose(x, y).map(|z| ((i, j), local(z))))
        });
        let raw = RawTable::from_parts(elements, products).expect("tokens are distinct");
        let g = crate::groupoid::validate(name, &raw).expect("a subgroupoid is a groupoid");
        (g, embedding)
    }
}

fn same_parent(a: &Groupoid, b: &Groupoid) -> Result<()> {
    if std::ptr::eq(a, b) {
        Ok(())
    } else {
        Err(Error::ParentMismatch)
    }
}

/// Intersection of a nonempty family of subgroupoids with one parent.
pub fn intersect<'g>(family: &[SubgroupoidView<'g>]) -> Result<SubgroupoidView<'g>> {
    let (first, rest) = family.split_first().ok_or(Error::EmptySet)?;
    let mut members = first.members.clone();
    for h in rest {
        same_parent(first.parent, h.parent)?;
        members.retain(|g| h.contains(*g));
    }
    if members.is_empty() {
        return Err(Error::EmptyIntersection);
    }
    SubgroupoidView::new(first.parent, members)
}

/// Least subset containing `seed` closed under inverses and defined products.
pub(crate) fn close(g: &Groupoid, seed: impl IntoIterator<Item = Elem>) -> ElemSet {
    let mut set = ElemSet::new();
    let mut queue: VecDeque<Elem> = VecDeque::new();
    for x in seed {
        if set.insert(x) {
            queue.push_back(x);
        }
    }
    while let Some(x) = queue.pop_front() {
        let mut fresh = vec![g.inv(x)];
        for &y in &set {
            fresh.extend(g.compose(x, y));
            fresh.extend(g.compose(y, x));
        }
        for z in fresh {
            if set.insert(z) {
                queue.push_back(z);
            }
        }
    }
    set
}

/// `⟨B⟩`: the smallest subgroupoid containing `B`.
pub fn generate<'g>(set: &ElementSet<'g>) -> Result<SubgroupoidView<'g>> {
    if set.is_empty() {
        return Err(Error::EmptySet);
    }
    SubgroupoidView::new(set.parent, close(set.parent, set.members.iter().copied()))
}

/// `⟨B⟩_w = ⟨B⟩ ∪ G0`.
pub fn generate_wide<'g>(set: &ElementSet<'g>) -> Result<SubgroupoidView<'g>> {
    Ok(generate(set)?.widen())
}

/// `g⁻¹Hg = {g⁻¹hg | h ∈ H, r(h) = d(h) = r(g)}`, a subgroup of the
/// isotropy group at `d(g)`.
pub fn conjugate<'g>(h: &SubgroupoidView<'g>, g: Elem) -> Result<SubgroupoidView<'g>> {
    if !h.is_wide() {
        return Err(Error::NotWide);
    }
    let parent = h.parent;
    let members = conjugate_set(parent, &h.at(parent.r(g)), g);
    SubgroupoidView::new(parent, members)
}

/// `{g⁻¹xg | x ∈ set}` for a set of isotropy elements at `r(g)`.
pub(crate) fn conjugate_set(parent: &Groupoid, set: &ElemSet, g: Elem) -> ElemSet {
    set.iter()
        .map(|&x| {
            parent
                .compose_all(&[parent.inv(g), x, g])
                .expect("x is isotropic at r(g)")
        })
        .collect()
}

/// `HK = {hk | h ∈ H, k ∈ K, d(h) = r(k)}` (not necessarily closed).
pub fn set_product<'g>(h: &SubgroupoidView<'g>, k: &SubgroupoidView<'g>) -> Result<ElementSet<'g>> {
    same_parent(h.parent, k.parent)?;
    let g = h.parent;
    let members = h
        .members
        .iter()
        .flat_map(|&x| k.members.iter().filter_map(move |&y| g.compose(x, y)))
        .collect();
    Ok(ElementSet { parent: g, members })
}

/// Whether `HK` is a subgroupoid, computed by closure check on `HK`.
pub fn product_is_subgroupoid(h: &SubgroupoidView<'_>, k: &SubgroupoidView<'_>) -> Result<bool> {
    if !h.is_wide() || !k.is_wide() {
        return Err(Error::NotWide);
    }
    is_subgroupoid(&set_product(h, k)?)
}

/// Carriers up to this size get exhaustive wide-subgroupoid enumeration.
pub const ENUMERATION_LIMIT: usize = 12;

/// Every wide subgroupoid of `g`, ordered by the bit pattern of the
/// non-identity elements in carrier order (excluded before included).
///
/// Backtracks over include/exclude decisions; an element and its inverse
/// are decided together. Returns `None` above [`ENUMERATION_LIMIT`].
pub fn enumerate_wide(g: &Groupoid) -> Option<Vec<SubgroupoidView<'_>>> {
    if g.len() > ENUMERATION_LIMIT {
        return None;
    }
    let base: ElemSet = g.identities().iter().copied().collect();
    let free: Vec<Elem> = g
        .elements()
        .filter(|&x| !g.is_identity(x) && g.inv(x) >= x)
        .collect();
    let mut out = Vec::new();
    let mut chosen = base.clone();
    fn recurse<'g>(
        g: &'g Groupoid,
        free: &[Elem],
        chosen: &mut ElemSet,
        out: &mut Vec<SubgroupoidView<'g>>,
    ) {
        let Some((&x, rest)) = free.split_first() else {
            if closure_witness(g, chosen).is_none() {
                out.push(SubgroupoidView::new(g, chosen.clone()).expect("closed"));
            }
            return;
        };
        // Prune: the decided part must already be product-closed with
        // respect to decided elements.
        recurse(g, rest, chosen, out);
        chosen.insert(x);
        chosen.insert(g.inv(x));
        let decided_ok = chosen.iter().all(|&a| {
            chosen.iter().all(|&b| match g.compose(a, b) {
                Some(z) => chosen.contains(&z) || is_undecided(g, z, rest),
                None => true,
            })
        });
        if decided_ok {
            recurse(g, rest, chosen, out);
        }
        chosen.remove(&x);
        chosen.remove(&g.inv(x));
    }
    fn is_undecided(g: &Groupoid, z: Elem, rest: &[Elem]) -> bool {
        let rep = z.min(g.inv(z));
        rest.contains(&rep)
    }
    recurse(g, &free, &mut chosen, &mut out);
    Some(out)
}
