//! Partial isomorphisms between isotropy groups, inner isomorphisms
//! `I_g(x) = gxg⁻¹`, and the groupoids `A(G)` and `I(G)`.
//!
//! Both groupoids are packaged as ordinary [`Groupoid`] values over
//! synthetic tokens, so every subgroupoid and normality operation applies to
//! them unchanged.

use crate::center;
use crate::error::{Error, Result};
use crate::groupoid::{validate, Elem, ElemSet, Groupoid, RawTable};
use crate::morphisms::{self, GroupoidMap};
use crate::normality;
use crate::subgroupoid::SubgroupoidView;

/// Default cap on isotropy-group order when enumerating `A(G)`.
pub const DEFAULT_BOUND: usize = 8;

/// A group isomorphism `G_e → G_e′`. Two values are equal iff they share
/// domain base, range base and every pointwise value.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PartialIso {
    pub domain_base: Elem,
    pub range_base: Elem,
    /// `(x, f(x))`, sorted by `x`.
    pub mapping: Vec<(Elem, Elem)>,
}

impl PartialIso {
    pub fn apply(&self, x: Elem) -> Option<Elem> {
        self.mapping
            .binary_search_by_key(&x, |&(a, _)| a)
            .ok()
            .map(|i| self.mapping[i].1)
    }

    /// `self ∘ other`, defined iff `D(self) = R(other)`.
    pub fn after(&self, other: &PartialIso) -> Option<PartialIso> {
        if self.domain_base != other.range_base {
            return None;
        }
        let mapping = other
            .mapping
            .iter()
            .map(|&(x, y)| (x, self.apply(y).expect("y in domain")))
            .collect();
        Some(PartialIso {
            domain_base: other.domain_base,
            range_base: self.range_base,
            mapping,
        })
    }

    pub fn inverse(&self) -> PartialIso {
        let mut mapping: Vec<(Elem, Elem)> = self.mapping.iter().map(|&(x, y)| (y, x)).collect();
        mapping.sort_unstable();
        PartialIso {
            domain_base: self.range_base,
            range_base: self.domain_base,
            mapping,
        }
    }

    pub fn identity_on(g: &Groupoid, e: Elem) -> PartialIso {
        PartialIso {
            domain_base: e,
            range_base: e,
            mapping: g.isotropy_members(e).into_iter().map(|x| (x, x)).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.domain_base == self.range_base && self.mapping.iter().all(|(x, y)| x == y)
    }

    /// Bijective onto `G_{range_base}` and product-preserving on
    /// `G_{domain_base}`.
    pub fn is_group_iso(&self, g: &Groupoid) -> bool {
        let domain = g.isotropy_members(self.domain_base);
        let range = g.isotropy_members(self.range_base);
        let keys: Vec<Elem> = self.mapping.iter().map(|p| p.0).collect();
        let mut images: Vec<Elem> = self.mapping.iter().map(|p| p.1).collect();
        images.sort_unstable();
        if keys != domain || images != range {
            return false;
        }
        domain.iter().all(|&x| {
            domain.iter().all(|&y| {
                let xy = g.compose(x, y).expect("isotropic");
                let (fx, fy) = (self.apply(x).unwrap(), self.apply(y).unwrap());
                g.compose(fx, fy) == self.apply(xy)
            })
        })
    }

    /// Image of a set, ignoring elements outside the domain.
    pub fn image(&self, set: &ElemSet) -> ElemSet {
        set.iter().filter_map(|&x| self.apply(x)).collect()
    }
}

/// `I_g: G_{d(g)} → G_{r(g)}`, `x ↦ gxg⁻¹`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InnerIso {
    pub witness: Elem,
    pub iso: PartialIso,
}

pub fn inner_iso(g: &Groupoid, x: Elem) -> Result<InnerIso> {
    let mapping = g
        .isotropy_members(g.d(x))
        .into_iter()
        .map(|m| {
            let y = g
                .compose_all(&[x, m, g.inv(x)])
                .expect("m is isotropic at d(x)");
            (m, y)
        })
        .collect();
    let iso = PartialIso {
        domain_base: g.d(x),
        range_base: g.r(x),
        mapping,
    };
    if !iso.is_group_iso(g) {
        return Err(Error::TheoremViolated(format!(
            "I_{} is not a group isomorphism",
            g.token(x)
        )));
    }
    Ok(InnerIso { witness: x, iso })
}

/// `I(G)`: distinct inner isomorphisms, in order of their first witness.
#[derive(Debug, Clone)]
pub struct InnerGroupoid {
    pub isos: Vec<PartialIso>,
    /// First element of `G` producing each entry.
    pub witnesses: Vec<Elem>,
    /// `g ↦` index of `I_g` in `isos`.
    pub class_of: Vec<Elem>,
    pub groupoid: Groupoid,
}

pub fn inner_groupoid(g: &Groupoid) -> Result<InnerGroupoid> {
    let mut isos: Vec<PartialIso> = Vec::new();
    let mut witnesses = Vec::new();
    let mut class_of = Vec::with_capacity(g.len());
    for x in g.elements() {
        let iso = inner_iso(g, x)?.iso;
        match isos.iter().position(|f| *f == iso) {
            Some(i) => class_of.push(Elem(i)),
            None => {
                class_of.push(Elem(isos.len()));
                isos.push(iso);
                witnesses.push(x);
            }
        }
    }
    let tokens = witnesses
        .iter()
        .map(|&w| format!("I[{}]", g.token(w)))
        .collect();
    let groupoid = package(&format!("I_{}", g.name()), tokens, &isos)?;
    Ok(InnerGroupoid {
        isos,
        witnesses,
        class_of,
        groupoid,
    })
}

/// Composition table over a list of partial isomorphisms, which must be
/// closed under defined composites.
fn package(name: &str, tokens: Vec<String>, isos: &[PartialIso]) -> Result<Groupoid> {
    let mut products = Vec::new();
    for (a, f) in isos.iter().enumerate() {
        for (b, h) in isos.iter().enumerate() {
            if let Some(c) = f.after(h) {
                let idx = isos.iter().position(|k| *k == c).ok_or_else(|| {
                    Error::TheoremViolated(format!("{name} not closed under composition"))
                })?;
                products.push(((a, b), idx));
            }
        }
    }
    validate(name, &RawTable::from_parts(tokens, products)?)
        .map_err(|e| Error::TheoremViolated(format!("{name} fails validation: {e}")))
}

/// All group isomorphisms `G_a → G_b`, in lexicographic order of image lists.
fn group_isomorphisms(g: &Groupoid, a: Elem, b: Elem) -> Vec<PartialIso> {
    let dom = g.isotropy_members(a);
    let ran = g.isotropy_members(b);
    let mut out = Vec::new();
    if dom.len() != ran.len() {
        return out;
    }
    let pos = |x: Elem| dom.binary_search(&x).expect("in domain");
    fn recurse(
        g: &Groupoid,
        dom: &[Elem],
        ran: &[Elem],
        pos: &dyn Fn(Elem) -> usize,
        images: &mut Vec<Elem>,
        used: &mut Vec<bool>,
        out: &mut Vec<Vec<Elem>>,
    ) {
        let k = images.len();
        if k == dom.len() {
            out.push(images.clone());
            return;
        }
        for (j, &y) in ran.iter().enumerate() {
            if used[j] {
                continue;
            }
            images.push(y);
            // Every product among the first k+1 elements that lands inside
            // the assigned prefix must be preserved.
            let ok = (0..=k).all(|i| {
                [(i, k), (k, i)].iter().all(|&(p, q)| {
                    let z = pos(g.compose(dom[p], dom[q]).expect("isotropic"));
                    z > k || g.compose(images[p], images[q]) == Some(images[z])
                })
            });
            if ok {
                used[j] = true;
                recurse(g, dom, ran, pos, images, used, out);
                used[j] = false;
            }
            images.pop();
        }
    }
    let mut lists = Vec::new();
    recurse(
        g,
        &dom,
        &ran,
        &pos,
        &mut Vec::new(),
        &mut vec![false; ran.len()],
        &mut lists,
    );
    for images in lists {
        let iso = PartialIso {
            domain_base: a,
            range_base: b,
            mapping: dom.iter().copied().zip(images).collect(),
        };
        if iso.is_group_iso(g) {
            out.push(iso);
        }
    }
    out
}

/// `A(G)`: every group isomorphism between every pair of isotropy groups.
#[derive(Debug, Clone)]
pub struct PartialIsoGroupoid {
    pub isos: Vec<PartialIso>,
    pub groupoid: Groupoid,
}

impl PartialIsoGroupoid {
    pub fn find(&self, f: &PartialIso) -> Option<Elem> {
        self.isos.iter().position(|k| k == f).map(Elem)
    }
}

pub fn partial_iso_groupoid(g: &Groupoid, bound: usize) -> Result<PartialIsoGroupoid> {
    for &e in g.identities() {
        let order = g.isotropy_members(e).len();
        if order > bound {
            return Err(Error::BoundExceeded { order, bound });
        }
    }
    let mut isos = Vec::new();
    for &a in g.identities() {
        for &b in g.identities() {
            isos.extend(group_isomorphisms(g, a, b));
        }
    }
    let tokens = (0..isos.len()).map(|i| format!("A{i}")).collect();
    let groupoid = package(&format!("A_{}", g.name()), tokens, &isos)?;
    Ok(PartialIsoGroupoid { isos, groupoid })
}

/// `I(G)` as a subgroupoid of the packaged `A(G)`.
pub fn inner_within<'a>(
    inner: &InnerGroupoid,
    ambient: &'a PartialIsoGroupoid,
) -> Result<SubgroupoidView<'a>> {
    let members = inner
        .isos
        .iter()
        .map(|f| {
            ambient
                .find(f)
                .ok_or_else(|| Error::TheoremViolated("inner iso missing from A(G)".into()))
        })
        .collect::<Result<ElemSet>>()?;
    SubgroupoidView::new(&ambient.groupoid, members)
}

/// `Θ: G → I(G)`, `g ↦ I_g`.
pub fn theta<'a>(g: &'a Groupoid, inner: &'a InnerGroupoid) -> GroupoidMap<'a> {
    GroupoidMap::check(g, &inner.groupoid, inner.class_of.clone()).expect("total")
}

/// Evidence that `G/Z(G) ≅ I(G)` by two independent routes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InnerIsoReport {
    pub quotient_size: usize,
    pub inner_size: usize,
    /// `Ker Θ = Z(G)`.
    pub kernel_is_center: bool,
    /// `Θ` is a surjective strong homomorphism.
    pub theta_strong_surjective: bool,
    /// `φ̄: G/Ker Θ → I(G)` from the first isomorphism theorem, as token pairs.
    pub first_iso_witness: Option<Vec<(String, String)>>,
    /// Independent isomorphism search `G/Z(G) → I(G)`, as token pairs.
    pub search_witness: Option<Vec<(String, String)>>,
}

impl InnerIsoReport {
    pub fn holds(&self) -> bool {
        self.quotient_size == self.inner_size
            && self.kernel_is_center
            && self.theta_strong_surjective
            && self.first_iso_witness.is_some()
            && self.search_witness.is_some()
    }
}

pub fn verify_inner_iso_theorem(g: &Groupoid) -> Result<InnerIsoReport> {
    let z = center::center(g)?;
    let gz = normality::quotient(&z.view)?;
    let inner = inner_groupoid(g)?;
    let th = theta(g, &inner);
    let kernel = th.kernel()?;
    let first_iso_witness = match morphisms::first_iso(&th) {
        Ok(fi) => Some(fi.induced().to_tokens()),
        Err(Error::NotStrong | Error::NotSurjective) => None,
        Err(e) => return Err(e),
    };
    let search_witness =
        morphisms::find_isomorphism(gz.groupoid(), &inner.groupoid).map(|m| m.to_tokens());
    Ok(InnerIsoReport {
        quotient_size: gz.len(),
        inner_size: inner.isos.len(),
        kernel_is_center: kernel == z.view,
        theta_strong_surjective: th.is_strong() && th.is_surjective(),
        first_iso_witness,
        search_witness,
    })
}

/// `I_g(H ∩ D(I_g)) = H ∩ R(I_g)`.
pub fn is_invariant(h: &SubgroupoidView<'_>, x: Elem) -> Result<bool> {
    if !h.is_wide() {
        return Err(Error::NotWide);
    }
    let g = h.parent();
    let ig = inner_iso(g, x)?.iso;
    Ok(ig.image(&h.at(g.d(x))) == h.at(g.r(x)))
}

/// Normality as invariance under every inner isomorphism.
pub fn normal_via_invariance(h: &SubgroupoidView<'_>) -> Result<bool> {
    if !h.is_wide() {
        return Ok(false);
    }
    for x in h.parent().elements() {
        if !is_invariant(h, x)? {
            return Ok(false);
        }
    }
    Ok(true)
}
