//! Center, commutators, the commutator subgroupoid and abelianization.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::groupoid::{Elem, ElemSet, Groupoid};
use crate::morphisms::GroupoidMap;
use crate::normality::{self, Quotient};
use crate::subgroupoid::{self, ElementSet, SubgroupoidView};

/// `Z(G)` together with its decomposition into the centers of the isotropy
/// groups.
#[derive(Debug, Clone)]
pub struct CenterView<'g> {
    pub view: SubgroupoidView<'g>,
    pub per_identity: BTreeMap<Elem, ElemSet>,
}

/// Members are isotropic `g` with `gh = hg` for every `h` satisfying
/// `d(g) = r(h) = d(h)`. The scan ranges over all of `G`, not only `Iso(G)`.
pub fn center(g: &Groupoid) -> Result<CenterView<'_>> {
    let members: ElemSet = g
        .elements()
        .filter(|&x| g.is_isotropic(x))
        .filter(|&x| {
            g.elements()
                .filter(|&h| g.r(h) == g.d(x) && g.d(h) == g.d(x))
                .all(|h| g.compose(x, h) == g.compose(h, x))
        })
        .collect();
    let per_identity: BTreeMap<Elem, ElemSet> = g
        .identities()
        .iter()
        .map(|&e| {
            let group = g.isotropy_members(e);
            let z = group
                .iter()
                .copied()
                .filter(|&x| group.iter().all(|&y| g.compose(x, y) == g.compose(y, x)))
                .collect();
            (e, z)
        })
        .collect();
    let union: ElemSet = per_identity.values().flatten().copied().collect();
    if union != members {
        return Err(Error::TheoremViolated(
            "center differs from the union of isotropy centers".into(),
        ));
    }
    let view = SubgroupoidView::new(g, members)
        .map_err(|e| Error::TheoremViolated(format!("center not a subgroupoid: {e}")))?;
    if !view.is_wide() || !normality::is_normal_in(&view, &g.iso_part())? {
        return Err(Error::TheoremViolated(
            "center is not a wide normal subgroupoid of Iso(G)".into(),
        ));
    }
    Ok(CenterView { view, per_identity })
}

/// `[x, y] = x⁻¹y⁻¹xy` for `x`, `y` in a common isotropy group.
pub fn commutator_elem(g: &Groupoid, x: Elem, y: Elem) -> Result<Elem> {
    let e = g.d(x);
    if g.r(x) != e || g.d(y) != e || g.r(y) != e {
        return Err(Error::NotCoIsotropic(
            g.token(x).to_string(),
            g.token(y).to_string(),
        ));
    }
    Ok(g.compose_all(&[g.inv(x), g.inv(y), x, y])
        .expect("co-isotropic elements compose"))
}

/// A commutator together with the pair and the identity it came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CommutatorWitness {
    pub commutator: Elem,
    pub x: Elem,
    pub y: Elem,
    pub base: Elem,
}

#[derive(Debug, Clone)]
pub struct CommutatorView<'g> {
    pub view: SubgroupoidView<'g>,
    pub witnesses: Vec<CommutatorWitness>,
}

fn commutators_of(
    g: &Groupoid,
    left: &SubgroupoidView<'_>,
    right: &SubgroupoidView<'_>,
) -> Vec<CommutatorWitness> {
    let mut out = Vec::new();
    for &e in g.identities() {
        let (he, ke) = (left.at(e), right.at(e));
        for &x in &he {
            for &y in &ke {
                let c = commutator_elem(g, x, y).expect("co-isotropic");
                out.push(CommutatorWitness {
                    commutator: c,
                    x,
                    y,
                    base: e,
                });
            }
        }
    }
    out
}

/// `[H, K] = ⟨[x, y] | x ∈ H_e, y ∈ K_e, e ∈ G0⟩`. Commutators are collected
/// object by object and closed once.
pub fn bracket<'g>(
    h: &SubgroupoidView<'g>,
    k: &SubgroupoidView<'g>,
) -> Result<SubgroupoidView<'g>> {
    Ok(bracket_with_witnesses(h, k)?.view)
}

fn bracket_with_witnesses<'g>(
    h: &SubgroupoidView<'g>,
    k: &SubgroupoidView<'g>,
) -> Result<CommutatorView<'g>> {
    if !h.is_wide() || !k.is_wide() {
        return Err(Error::NotWide);
    }
    if !std::ptr::eq(h.parent(), k.parent()) {
        return Err(Error::ParentMismatch);
    }
    let g = h.parent();
    let witnesses = commutators_of(g, h, k);
    let seed = ElementSet::new(g, witnesses.iter().map(|w| w.commutator))?;
    let view = subgroupoid::generate(&seed)?;
    Ok(CommutatorView { view, witnesses })
}

/// `G′ = [G, G]`.
pub fn commutator_subgroupoid(g: &Groupoid) -> CommutatorView<'_> {
    let whole = SubgroupoidView::whole(g);
    bracket_with_witnesses(&whole, &whole).expect("G is wide")
}

/// `G/G′`, after checking that `G′` is normal. The result is abelian.
pub fn abelianization(g: &Groupoid) -> Result<Quotient<'_>> {
    let derived = commutator_subgroupoid(g).view;
    if !normality::is_normal(&derived) {
        return Err(Error::TheoremViolated("G′ is not normal".into()));
    }
    let q = normality::quotient(&derived)?;
    if !q.groupoid().is_abelian() {
        return Err(Error::TheoremViolated("G/G′ is not abelian".into()));
    }
    Ok(q)
}

/// `G/H abelian ⟹ G′ ⊆ H` for normal `H`.
///
/// When the coset product is not well defined (some member of `H` is not
/// isotropic) there is no quotient to be abelian and the implication holds
/// vacuously.
pub fn largest_abelian_check(h: &SubgroupoidView<'_>) -> Result<bool> {
    if !normality::is_normal(h) {
        return Err(Error::NotNormal);
    }
    let quotient_abelian = match normality::quotient(h) {
        Ok(q) => q.groupoid().is_abelian(),
        Err(Error::IllDefinedQuotient(_)) => false,
        Err(e) => return Err(e),
    };
    let derived = commutator_subgroupoid(h.parent()).view;
    Ok(!quotient_abelian || derived.is_subset_of(h))
}

/// `θ: G/G′ → A` with `σ = θ ∘ j`.
#[derive(Debug, Clone)]
pub struct Abelianized<'a> {
    pub quotient: Quotient<'a>,
    theta: Vec<Elem>,
    target: &'a Groupoid,
}

impl Abelianized<'_> {
    pub fn theta(&self) -> GroupoidMap<'_> {
        GroupoidMap::check(self.quotient.groupoid(), self.target, self.theta.clone())
            .expect("checked at construction")
    }
}

/// Factors a homomorphism into an abelian groupoid through `G/G′`.
pub fn factor_through_abelianization<'a>(sigma: &GroupoidMap<'a>) -> Result<Abelianized<'a>> {
    if !sigma.is_hom() {
        return Err(Error::NotHomomorphism);
    }
    if !sigma.target().is_abelian() {
        return Err(Error::TargetNotAbelian);
    }
    let g = sigma.source();
    let kernel = sigma.kernel()?;
    let derived = commutator_subgroupoid(g).view;
    if !derived.is_subset_of(&kernel) {
        return Err(Error::TheoremViolated("G′ ⊄ Ker σ".into()));
    }
    let quotient = abelianization(g)?;
    let theta: Vec<Elem> = quotient
        .cosets()
        .iter()
        .map(|c| sigma.apply(c.representative))
        .collect();
    for x in g.elements() {
        if theta[quotient.class_of(x).0] != sigma.apply(x) {
            return Err(Error::TheoremViolated(format!(
                "σ is not constant on the coset of {}",
                g.token(x)
            )));
        }
    }
    let out = Abelianized {
        quotient,
        theta,
        target: sigma.target(),
    };
    if !out.theta().is_hom() {
        return Err(Error::TheoremViolated("θ is not a homomorphism".into()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::build::{self, Group};

    #[test]
    fn centers() {
        let s3 = build::symmetric(3).unwrap();
        assert_eq!(center(&s3).unwrap().view.tokens(), vec!["e"]);
        let b = build::bundle(&[Group::cyclic(4).unwrap(), Group::symmetric(3).unwrap()]).unwrap();
        let z = center(&b).unwrap();
        assert_eq!(z.view.tokens(), vec!["1:0", "1:1", "1:2", "1:3", "2:e"]);
        let z2 = Group::cyclic(2).unwrap();
        let b22 = build::bundle(&[z2.clone(), z2]).unwrap();
        assert_eq!(center(&b22).unwrap().view.len(), 4);
    }

    #[test]
    fn commutator_elements() {
        let s3 = build::symmetric(3).unwrap();
        let e = |t: &str| s3.elem(t).unwrap();
        assert_eq!(commutator_elem(&s3, e("e"), e("e")).unwrap(), e("e"));
        // (12)(13)(12)(13) right to left: (132)(132) = (123).
        assert_eq!(
            commutator_elem(&s3, e("(12)"), e("(13)")).unwrap(),
            e("(123)")
        );
        let p2 = build::pair(2).unwrap();
        let x = p2.elem("(1,2)").unwrap();
        assert!(matches!(
            commutator_elem(&p2, x, x),
            Err(Error::NotCoIsotropic(_, _))
        ));
    }

    #[test]
    fn derived_subgroupoids() {
        let s3 = build::symmetric(3).unwrap();
        assert_eq!(
            commutator_subgroupoid(&s3).view.tokens(),
            vec!["e", "(123)", "(132)"]
        );
        let p2 = build::pair(2).unwrap();
        assert_eq!(
            commutator_subgroupoid(&p2).view,
            SubgroupoidView::identities(&p2)
        );
        let t6 = build::product(2, &Group::symmetric(3).unwrap()).unwrap();
        assert_eq!(commutator_subgroupoid(&t6).view.len(), 6);
    }

    #[test]
    fn abelianizations() {
        let s3 = build::symmetric(3).unwrap();
        assert_eq!(abelianization(&s3).unwrap().len(), 2);
        let p2 = build::pair(2).unwrap();
        assert_eq!(abelianization(&p2).unwrap().len(), 4);
        let t6 = build::product(2, &Group::symmetric(3).unwrap()).unwrap();
        let q = abelianization(&t6).unwrap();
        assert_eq!(q.len(), 8);
        assert!(q.groupoid().is_abelian());
    }

    #[test]
    fn largest_abelian() {
        let s3 = build::symmetric(3).unwrap();
        let a3 = SubgroupoidView::from_tokens(&s3, &["e", "(123)", "(132)"]).unwrap();
        assert!(largest_abelian_check(&a3).unwrap());
        assert!(largest_abelian_check(&SubgroupoidView::whole(&s3)).unwrap());
        assert!(largest_abelian_check(&SubgroupoidView::identities(&s3)).unwrap());
    }

    #[test]
    fn factorization() {
        let s3 = build::symmetric(3).unwrap();
        let a3 = SubgroupoidView::from_tokens(&s3, &["e", "(123)", "(132)"]).unwrap();
        let q = normality::quotient(&a3).unwrap();
        let j = q.projection();
        let f = factor_through_abelianization(&j).unwrap();
        let theta = f.theta();
        assert!(theta.is_bijective());
        assert!(factor_through_abelianization(&GroupoidMap::identity(&s3)).is_err());
    }
}
