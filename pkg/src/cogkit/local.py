"""The local complex of groups over an object, with its morphisms to the
local group (Theta) and into the ambient complex (Sigma).

Over the star of gamma the local data is assembled family by family:

    local groups     G_i(c) on upper-link objects, G_gamma on the center
                     and on every lower-link object;
    homs             psi_d on upper-link edges, psi_c on gamma*c and b*c,
                     the identity of G_gamma on b*gamma and lower-link edges;
    twists           g_{d,d'} / g_{c,d} on the three upper families,
                     the identity on the four remaining families.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import groups
from .complexes import CogMorphism, ComplexOfGroups, MorphismToGroup, validate_cog
from .errors import TreeNotSpanning, UnknownObject
from .groups import FiniteGroup, GroupHom
from .scwols import StarScwol, is_spanning_tree, star_projection, star_scwol


@dataclass(frozen=True)
class LocalCog:
    star: StarScwol
    cog: ComplexOfGroups
    gamma: str
    parent: ComplexOfGroups

    @property
    def center_group(self) -> FiniteGroup:
        return self.parent.group_of[self.gamma]

    def star_tree(self) -> tuple[str, ...]:
        """The spanning tree {b*gamma} + {gamma*c} used by Theta."""
        tree = tuple(sorted(
            mid for mid, fam in self.star.mor_family.items()
            if fam[0] in ("gamma_c", "b_gamma")
        ))
        if not is_spanning_tree(self.star, tree):
            raise TreeNotSpanning("star tree {b*gamma, gamma*c} does not span the star")
        return tree


def build_local_cog(C: ComplexOfGroups, gamma: str) -> LocalCog:
    """Assemble the local complex of groups over gamma and validate it."""
    if gamma not in C.base.object_set:
        raise UnknownObject(f"object {gamma!r} not in {C.base.label}")
    S = C.base
    star = star_scwol(S, gamma)
    G_gamma = C.group_of[gamma]

    group_of: dict[str, FiniteGroup] = {star.center_id: G_gamma}
    for oid, c in star.upper.items():
        group_of[oid] = C.group_of[S.src(c)]
    for oid in star.lower:
        group_of[oid] = G_gamma

    lam: dict[str, GroupHom] = {}
    for mid, fam in star.mor_family.items():
        kind = fam[0]
        if kind == "lk_up":
            lam[mid] = C.psi[fam[2]]  # psi_d
        elif kind in ("gamma_c", "b_c"):
            lam[mid] = C.psi[fam[1] if kind == "gamma_c" else fam[2]]  # psi_c
        else:  # b_gamma, lk_dn
            lam[mid] = groups.identity_hom(G_gamma)

    twist: dict[tuple[str, str], int] = {}
    for (u, v) in star.comp:
        fu, fv = star.mor_family[u], star.mor_family[v]
        if fu[0] == "lk_up" and fv[0] == "lk_up":
            d1, d2 = fu[2], fv[2]
            twist[(u, v)] = C.twist[(d1, d2)]
        elif fu[0] in ("gamma_c", "b_c") and fv[0] == "lk_up":
            c, d = fv[1], fv[2]
            twist[(u, v)] = C.twist[(c, d)]
        else:
            twist[(u, v)] = group_of[star.tgt(u)].identity

    cog = ComplexOfGroups(
        base=star, group_of=group_of, psi=lam, twist=twist, label=f"L({S.label}({gamma}))"
    )
    rep = validate_cog(cog)
    assert rep.ok, f"local complex over {gamma!r} failed validation: {rep.failures[:1]}"
    return LocalCog(star=star, cog=cog, gamma=gamma, parent=C)


def build_theta(L: LocalCog) -> MorphismToGroup:
    """The morphism from the local complex to its center group.

    Local maps: lambda_{gamma*c} on upper objects, identities elsewhere.
    Edge elements read the local twists back:

        Theta((c,d))   = l_{gamma*c, (c,d)}
        Theta(b*c)     = l_{b*gamma, gamma*c}^-1
        Theta((a,b))   = l_{(a,b), b*gamma}
        Theta(gamma*c) = Theta(b*gamma) = e
    """
    star = L.star
    cog = L.cog
    G = L.center_group
    phi_local: dict[str, GroupHom] = {star.center_id: groups.identity_hom(G)}
    for oid, c in star.upper.items():
        phi_local[oid] = cog.psi[f"gc:{c}"]
    for oid in star.lower:
        phi_local[oid] = groups.identity_hom(G)

    phi_edge: dict[str, int] = {}
    for mid, fam in star.mor_family.items():
        kind = fam[0]
        if kind == "lk_up":
            c = fam[1]
            phi_edge[mid] = cog.twist[(f"gc:{c}", mid)]
        elif kind == "b_c":
            b, c = fam[1], fam[2]
            phi_edge[mid] = G.inv[cog.twist[(f"bg:{b}", f"gc:{c}")]]
        elif kind == "lk_dn":
            b = fam[2]
            phi_edge[mid] = cog.twist[(mid, f"bg:{b}")]
        else:  # gamma_c, b_gamma
            phi_edge[mid] = G.identity
    theta = MorphismToGroup(source=cog, target=G, phi_local=phi_local, phi_edge=phi_edge)
    from .complexes import validate_morphism_to_group

    rep = validate_morphism_to_group(theta)
    assert rep.ok, f"Theta failed validation: {rep.validation.failures[:1]}"
    assert rep.all_injective, "Theta must be injective on all local groups"
    return theta


def build_sigma(L: LocalCog) -> CogMorphism:
    """The morphism from the local complex into the ambient complex.

    Over the star projection: identities on upper objects and the center,
    psi_b on lower objects; edge elements are the ambient twists g_{b,c} on
    b*c, their inverses g_{a,b}^-1 on lower-link edges, identity elsewhere.
    """
    star = L.star
    C = L.parent
    S = C.base
    h = star_projection(star)
    phi_local: dict[str, GroupHom] = {
        star.center_id: groups.identity_hom(L.center_group)
    }
    for oid, c in star.upper.items():
        phi_local[oid] = groups.identity_hom(C.group_of[S.src(c)])
    for oid, b in star.lower.items():
        phi_local[oid] = C.psi[b]

    phi_edge: dict[str, int] = {}
    for mid, fam in star.mor_family.items():
        kind = fam[0]
        if kind == "b_c":
            b, c = fam[1], fam[2]
            phi_edge[mid] = C.twist[(b, c)]
        elif kind == "lk_dn":
            a, b = fam[1], fam[2]
            Gt = C.group_of[S.tgt(S.comp[(a, b)])]
            phi_edge[mid] = Gt.inv[C.twist[(a, b)]]
        else:
            Gt = C.group_of[h.obj(star.tgt(mid))]
            phi_edge[mid] = Gt.identity
    sigma = CogMorphism(source=L.cog, target=C, f=h, phi_local=phi_local, phi_edge=phi_edge)
    from .complexes import validate_cog_morphism

    rep = validate_cog_morphism(sigma)
    assert rep.ok, f"Sigma failed validation: {rep.failures[:1]}"
    return sigma
