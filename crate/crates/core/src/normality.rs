//! Normal subgroupoids, the normalizer, normal closure, the congruence
//! `≡_H`, left cosets and the quotient groupoid.

use crate::error::{Error, Result};
use crate::groupoid::{validate, Elem, ElemSet, Groupoid, RawTable};
use crate::morphisms::GroupoidMap;
use crate::subgroupoid::{self, conjugate_set, ElementSet, SubgroupoidView};

fn check_same_parent(a: &Groupoid, b: &Groupoid) -> Result<()> {
    if std::ptr::eq(a, b) {
        Ok(())
    } else {
        Err(Error::ParentMismatch)
    }
}

/// Normality by inclusion: `H` wide and `g⁻¹Hg ⊆ H` for every `g`.
pub fn is_normal(h: &SubgroupoidView<'_>) -> bool {
    h.is_wide()
        && h.parent()
            .elements()
            .all(|g| subgroupoid::conjugate(h, g).expect("wide").is_subset_of(h))
}

/// Normality by equality: `H0 = G0` and `g⁻¹H_{r(g)}g = H_{d(g)}` for every `g`.
pub fn is_normal_by_equality(h: &SubgroupoidView<'_>) -> bool {
    let g = h.parent();
    h.is_wide() && g.elements().all(|x| normalizes(h, x))
}

/// `g⁻¹H_{r(g)}g = H_{d(g)}`.
fn normalizes(h: &SubgroupoidView<'_>, x: Elem) -> bool {
    let g = h.parent();
    conjugate_set(g, &h.at(g.r(x)), x) == h.at(g.d(x))
}

/// Whether `H` is normal inside the subgroupoid `T` (both over one parent):
/// `H ⊆ T`, `H` contains every identity of `T`, and `t⁻¹Ht ⊆ H` for `t ∈ T`.
pub fn is_normal_in(h: &SubgroupoidView<'_>, ambient: &SubgroupoidView<'_>) -> Result<bool> {
    check_same_parent(h.parent(), ambient.parent())?;
    let g = h.parent();
    let wide_in_t =
        h.is_subset_of(ambient) && ambient.own_identities().iter().all(|e| h.contains(*e));
    Ok(wide_in_t
        && ambient.members().iter().all(|&t| {
            conjugate_set(g, &h.at(g.r(t)), t)
                .iter()
                .all(|c| h.contains(*c))
        }))
}

/// `N_G(H) = {g | g⁻¹H_{r(g)}g = H_{d(g)}}`.
#[derive(Debug, Clone)]
pub struct NormalizerResult<'g> {
    pub members: ElemSet,
    pub as_subgroupoid: SubgroupoidView<'g>,
}

pub fn normalizer<'g>(h: &SubgroupoidView<'g>) -> Result<NormalizerResult<'g>> {
    if !h.is_wide() {
        return Err(Error::NotWide);
    }
    let g = h.parent();
    let members: ElemSet = g.elements().filter(|&x| normalizes(h, x)).collect();
    let view = SubgroupoidView::new(g, members.clone())
        .map_err(|e| Error::TheoremViolated(format!("normalizer not a subgroupoid: {e}")))?;
    if !view.is_wide() || !h.is_subset_of(&view) {
        return Err(Error::TheoremViolated(
            "normalizer must be wide and contain H".into(),
        ));
    }
    Ok(NormalizerResult {
        members,
        as_subgroupoid: view,
    })
}

/// Smallest normal subgroupoid containing `B`: alternate wide closure with
/// adding all conjugates until nothing changes.
pub fn normal_closure<'g>(set: &ElementSet<'g>) -> Result<SubgroupoidView<'g>> {
    if set.is_empty() {
        return Err(Error::EmptySet);
    }
    let g = set.parent();
    let mut current = subgroupoid::generate_wide(set)?;
    loop {
        let mut grown = current.members().clone();
        for x in g.elements() {
            grown.extend(conjugate_set(g, &current.at(g.r(x)), x));
        }
        if grown.len() == current.len() {
            return Ok(current);
        }
        current = subgroupoid::generate_wide(&ElementSet::new(g, grown)?)?;
    }
}

/// `HK` for normal `K` whose members are all isotropic. The result is a
/// subgroupoid; when `H` is normal as well it is normal.
pub fn product_with_normal<'g>(
    h: &SubgroupoidView<'g>,
    k: &SubgroupoidView<'g>,
) -> Result<SubgroupoidView<'g>> {
    if !is_normal(k) {
        return Err(Error::PreconditionFailed("K is not normal".into()));
    }
    if !k.is_isotropic() {
        return Err(Error::PreconditionFailed(
            "K has a member with d(k) ≠ r(k)".into(),
        ));
    }
    let g = h.parent();
    check_same_parent(g, k.parent())?;
    let members: ElemSet = h
        .members()
        .iter()
        .flat_map(|&x| k.members().iter().filter_map(move |&y| g.compose(x, y)))
        .collect();
    let hk = SubgroupoidView::new(g, members)
        .map_err(|e| Error::TheoremViolated(format!("HK not a subgroupoid: {e}")))?;
    if is_normal(h) && !is_normal(&hk) {
        return Err(Error::TheoremViolated(
            "HK of normal H, K is not normal".into(),
        ));
    }
    Ok(hk)
}

/// `H ∩ K` for wide `H` and normal `K`; normal inside `H`.
pub fn intersect_normal<'g>(
    h: &SubgroupoidView<'g>,
    k: &SubgroupoidView<'g>,
) -> Result<SubgroupoidView<'g>> {
    if !h.is_wide() {
        return Err(Error::NotWide);
    }
    if !is_normal(k) {
        return Err(Error::NotNormal);
    }
    let meet = subgroupoid::intersect(&[h.clone(), k.clone()])?;
    if !is_normal_in(&meet, h)? {
        return Err(Error::TheoremViolated("H ∩ K not normal in H".into()));
    }
    Ok(meet)
}

/// For normal `H`, `K` with `H ∩ K = G0`: checks `hk = kh` for every pair of
/// isotropic `h ∈ H`, `k ∈ K` at a common identity.
pub fn check_commuting_trivial_intersection(
    h: &SubgroupoidView<'_>,
    k: &SubgroupoidView<'_>,
) -> Result<bool> {
    check_same_parent(h.parent(), k.parent())?;
    let g = h.parent();
    if !is_normal(h) || !is_normal(k) {
        return Err(Error::PreconditionFailed("H and K must be normal".into()));
    }
    let meet: ElemSet = h.members().intersection(k.members()).copied().collect();
    let g0: ElemSet = g.identities().iter().copied().collect();
    if meet != g0 {
        return Err(Error::PreconditionFailed("H ∩ K ≠ G0".into()));
    }
    Ok(g.identities().iter().all(|&e| {
        let (he, ke) = (h.at(e), k.at(e));
        he.iter()
            .all(|&x| ke.iter().all(|&y| g.compose(x, y) == g.compose(y, x)))
    }))
}

/// `g ≡_H l` iff `l⁻¹g` is defined and lies in `H`.
pub fn congruent(h: &SubgroupoidView<'_>, g: Elem, l: Elem) -> bool {
    let p = h.parent();
    p.compose(p.inv(l), g).is_some_and(|x| h.contains(x))
}

/// A left coset `gH = {gh | h ∈ H, r(h) = d(g)}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coset {
    pub representative: Elem,
    pub members: ElemSet,
}

pub fn coset(h: &SubgroupoidView<'_>, g: Elem) -> Coset {
    let p = h.parent();
    let members = h
        .members()
        .iter()
        .filter_map(|&x| p.compose(g, x))
        .collect();
    Coset {
        representative: g,
        members,
    }
}

/// `G/H` for a normal subgroupoid `H`, with cosets named `[g]` after their
/// least-index member.
#[derive(Debug, Clone)]
pub struct Quotient<'g> {
    base: &'g Groupoid,
    normal: SubgroupoidView<'g>,
    cosets: Vec<Coset>,
    class_of: Vec<Elem>,
    groupoid: Groupoid,
}

/// Builds the quotient groupoid.
///
/// The induced product `(gH)(lH) = (gl)H`, defined iff `gl` is, must not
/// depend on the chosen representatives. This holds exactly when every
/// member of `H` is isotropic; otherwise an [`Error::IllDefinedQuotient`]
/// carries a concrete pair of disagreeing representatives.
pub fn quotient<'g>(h: &SubgroupoidView<'g>) -> Result<Quotient<'g>> {
    if !is_normal(h) {
        return Err(Error::NotNormal);
    }
    let g = h.parent();
    let mut class_of: Vec<Option<usize>> = vec![None; g.len()];
    let mut cosets: Vec<Coset> = Vec::new();
    for x in g.elements() {
        if class_of[x.0].is_some() {
            continue;
        }
        let c = coset(h, x);
        for m in &c.members {
            class_of[m.0] = Some(cosets.len());
        }
        cosets.push(c);
    }
    let class_of: Vec<Elem> = class_of
        .into_iter()
        .map(|c| Elem(c.expect("cosets partition G")))
        .collect();

    let cls = |x: Elem| class_of[x.0];
    let reps: Vec<Elem> = cosets.iter().map(|c| c.representative).collect();
    for x in g.elements() {
        for y in g.elements() {
            let (rx, ry) = (reps[cls(x).0], reps[cls(y).0]);
            let via_reps = g.compose(rx, ry).map(cls);
            let direct = g.compose(x, y).map(cls);
            if via_reps != direct {
                return Err(Error::IllDefinedQuotient(format!(
                    "{} ≡ {} and {} ≡ {}, but {}·{} is {} while {}·{} is {}",
                    g.token(x),
                    g.token(rx),
                    g.token(y),
                    g.token(ry),
                    g.token(x),
                    g.token(y),
                    describe(g, g.compose(x, y)),
                    g.token(rx),
                    g.token(ry),
                    describe(g, g.compose(rx, ry)),
                )));
            }
        }
    }

    let names = reps.iter().map(|&r| format!("[{}]", g.token(r))).collect();
    let n = cosets.len();
    let products = (0..n).flat_map(|a| {
        let reps = &reps;
        (0..n).filter_map(move |b| g.compose(reps[a], reps[b]).map(|z| ((a, b), cls(z).0)))
    });
    let raw = RawTable::from_parts(names, products)?;
    let groupoid = validate(format!("{}_mod", g.name()), &raw)
        .map_err(|e| Error::TheoremViolated(format!("quotient fails validation: {e}")))?;
    Ok(Quotient {
        base: g,
        normal: h.clone(),
        cosets,
        class_of,
        groupoid,
    })
}

fn describe(g: &Groupoid, x: Option<Elem>) -> String {
    x.map_or_else(|| "undefined".to_string(), |z| g.token(z).to_string())
}

impl<'g> Quotient<'g> {
    pub fn base(&self) -> &'g Groupoid {
        self.base
    }

    pub fn normal(&self) -> &SubgroupoidView<'g> {
        &self.normal
    }

    pub fn cosets(&self) -> &[Coset] {
        &self.cosets
    }

    /// The quotient as a groupoid; element `i` is coset `i`.
    pub fn groupoid(&self) -> &Groupoid {
        &self.groupoid
    }

    pub fn len(&self) -> usize {
        self.cosets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cosets.is_empty()
    }

    /// `j(g) = gH`.
    pub fn class_of(&self, g: Elem) -> Elem {
        self.class_of[g.0]
    }

    /// The canonical projection `j: G → G/H`.
    pub fn projection(&self) -> GroupoidMap<'_> {
        GroupoidMap::check(self.base, &self.groupoid, self.class_of.clone())
            .expect("class map is total")
    }
}
