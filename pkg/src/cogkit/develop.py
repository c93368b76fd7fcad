"""Developments of complexes of groups and local developments.

Both constructions index new objects by cosets of local-group images and are
fully deterministic: coset ids are canonical least-element representatives,
object ordering is (base object id, coset rep).
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Optional

from . import groups
from .complexes import CogMorphism, ComplexOfGroups, MorphismToGroup
from .errors import ActionInversion, CompositionUnderdetermined, UnknownObject
from .groups import CosetSpace, FiniteGroup
from .scwols import (
    Failure,
    Morphism,
    Scwol,
    ScwolMorphism,
    UPPER_EDGE_SEP,
    ValidationReport,
    is_nondegenerate,
    validate_scwol,
    validate_scwol_morphism,
)


def _pid(a: str, b: str) -> str:
    return f"{a}{UPPER_EDGE_SEP}{b}"


# -- local developments -------------------------------------------------------

@dataclass(frozen=True)
class LocalDevelopment:
    """The scwol over gamma whose upper link is fattened by cosets.

    ``upper_objects`` maps object ids to (coset rep, c); ``mor_family`` tags
    every morphism with its family and constituents:

    - ("lk_up", rep, c, d)    upper-link-development edges
    - ("gamma_c", rep, c)     center * (coset, c)
    - ("b_c", b, rep, c)      b * (coset, c)
    - ("b_gamma", b)          b * center
    - ("lk_dn", a, b)         lower-link edges
    """

    scwol: Scwol
    source: ComplexOfGroups
    gamma: str
    center_id: str
    upper_objects: dict[str, tuple[int, str]]
    lower_objects: dict[str, str]
    mor_family: dict[str, tuple]
    coset_spaces: dict[str, CosetSpace]  # per upper-link base morphism c


def build_local_development(C: ComplexOfGroups, gamma: str) -> LocalDevelopment:
    """Fatten the star of gamma by cosets of the psi_c-images in G_gamma."""
    if gamma not in C.base.object_set:
        raise UnknownObject(f"object {gamma!r} not in {C.base.label}")
    S = C.base
    G = C.group_of[gamma]
    ups = sorted(S.into(gamma))
    downs = sorted(S.out_of(gamma))

    spaces: dict[str, CosetSpace] = {}
    for c in ups:
        spaces[c] = groups.cosets(G, groups.hom_image(C.psi[c]))

    center_id = f"v:{gamma}"
    upper_objects: dict[str, tuple[int, str]] = {}
    lower_objects: dict[str, str] = {}
    objects: list[str] = []
    for c in ups:
        for rep in spaces[c].reps:
            oid = f"c:{c}@{rep}"
            upper_objects[oid] = (rep, c)
            objects.append(oid)
    objects.append(center_id)
    for b in downs:
        oid = f"b:{b}"
        lower_objects[oid] = b
        objects.append(oid)
    objects.sort()

    mors: list[Morphism] = []
    fam: dict[str, tuple] = {}

    def add(mid: str, i: str, t: str, family: tuple) -> None:
        mors.append(Morphism(mid, i, t))
        fam[mid] = family

    # upper-link-development edges (g K_{i(d)}, c, d)
    upper_pairs = [(a, b) for (a, b) in S.comp if S.tgt(a) == gamma]
    for c, d in sorted(upper_pairs):
        cd = S.comp[(c, d)]
        tw = C.twist[(c, d)]
        for rep in spaces[cd].reps:
            t_rep = spaces[c].rep_of(G.mul(rep, G.inv[tw]))
            add(
                f"cd:{_pid(c, d)}@{rep}",
                f"c:{cd}@{rep}",
                f"c:{c}@{t_rep}",
                ("lk_up", rep, c, d),
            )
    for c in ups:
        for rep in spaces[c].reps:
            add(f"gc:{c}@{rep}", f"c:{c}@{rep}", center_id, ("gamma_c", rep, c))
    for b in downs:
        for c in ups:
            for rep in spaces[c].reps:
                add(f"bc:{_pid(b, c)}@{rep}", f"c:{c}@{rep}", f"b:{b}", ("b_c", b, rep, c))
    for b in downs:
        add(f"bg:{b}", center_id, f"b:{b}", ("b_gamma", b))
    for b in downs:
        for a in S.out_of(S.tgt(b)):
            ab = S.comp[(a, b)]
            add(f"ab:{_pid(a, b)}", f"b:{b}", f"b:{ab}", ("lk_dn", a, b))

    by_i = defaultdict(list)
    for m in mors:
        by_i[m.i].append(m.id)
    comp: dict[tuple[str, str], str] = {}
    for v in mors:
        for uid in by_i[v.t]:
            fu, fv = fam[uid], fam[v.id]
            ku, kv = fu[0], fv[0]
            if ku == "lk_up" and kv == "lk_up":
                # (c, d) after (cd, d'): composite (c, dd') carrying v's coset
                _, c, d = fu[1:]
                rep2, _, d2 = fv[1:]
                comp[(uid, v.id)] = f"cd:{_pid(c, S.comp[(d, d2)])}@{rep2}"
            elif ku == "gamma_c" and kv == "lk_up":
                rep2, c2, d2 = fv[1:]
                comp[(uid, v.id)] = f"gc:{S.comp[(c2, d2)]}@{rep2}"
            elif ku == "b_c" and kv == "lk_up":
                b = fu[1]
                rep2, c2, d2 = fv[1:]
                comp[(uid, v.id)] = f"bc:{_pid(b, S.comp[(c2, d2)])}@{rep2}"
            elif ku == "lk_dn" and kv == "b_c":
                a, b = fu[1:]
                _, rep2, c2 = fv[1:]
                comp[(uid, v.id)] = f"bc:{_pid(S.comp[(a, b)], c2)}@{rep2}"
            elif ku == "b_gamma" and kv == "gamma_c":
                b = fu[1]
                rep2, c2 = fv[1:]
                comp[(uid, v.id)] = f"bc:{_pid(b, c2)}@{rep2}"
            elif ku == "lk_dn" and kv == "b_gamma":
                a, b = fu[1:]
                comp[(uid, v.id)] = f"bg:{S.comp[(a, b)]}"
            elif ku == "lk_dn" and kv == "lk_dn":
                a1 = fu[1]
                a2, b2 = fv[1:]
                comp[(uid, v.id)] = f"ab:{_pid(S.comp[(a1, a2)], b2)}"
            else:
                raise AssertionError(f"unclassified pair {uid}, {v.id}")

    scwol = Scwol(objects, mors, comp, label=f"{S.label}({gamma}~)")
    rep = validate_scwol(scwol)
    assert rep.ok, f"local development at {gamma!r} invalid: {rep.failures[:1]}"
    return LocalDevelopment(
        scwol=scwol,
        source=C,
        gamma=gamma,
        center_id=center_id,
        upper_objects=upper_objects,
        lower_objects=lower_objects,
        mor_family=fam,
        coset_spaces=spaces,
    )


# -- developments -------------------------------------------------------------

@dataclass(frozen=True)
class Development:
    """D(Y, phi): coset-indexed scwol with its group action and projection."""

    scwol: Scwol
    base: Scwol
    group: FiniteGroup
    morphism: MorphismToGroup
    projection: ScwolMorphism
    action: dict[int, tuple[dict[str, str], dict[str, str]]]
    obj_info: dict[str, tuple[int, str]]  # object id -> (coset rep, base object)
    mor_info: dict[str, tuple[int, str]]  # morphism id -> (coset rep, base morphism)
    coset_spaces: dict[str, CosetSpace]  # per base object


def development_size(C: ComplexOfGroups, phi: MorphismToGroup) -> tuple[int, int]:
    """Closed-form coset counts: (sum of [G : im phi_s], sum of [G : im phi_i(a)])."""
    G = phi.target
    n_obj = sum(G.order // len(set(phi.phi_local[o].image)) for o in C.base.objects)
    n_mor = sum(G.order // len(set(phi.phi_local[m.i].image)) for m in C.base.morphisms)
    return n_obj, n_mor


def build_development(C: ComplexOfGroups, phi: MorphismToGroup) -> Development:
    """Objects (g im(phi_s), s), morphisms (g im(phi_i(a)), a); G acts on the left."""
    S = C.base
    G = phi.target
    spaces = {o: groups.cosets(G, groups.hom_image(phi.phi_local[o])) for o in S.objects}

    obj_info: dict[str, tuple[int, str]] = {}
    objects: list[str] = []
    for o in sorted(S.objects):
        for rep in spaces[o].reps:
            oid = f"{o}@{rep}"
            obj_info[oid] = (rep, o)
            objects.append(oid)

    mors: list[Morphism] = []
    mor_info: dict[str, tuple[int, str]] = {}
    for m in sorted(S.morphisms, key=lambda m: m.id):
        space_i = spaces[m.i]
        e_inv = G.inv[phi.phi_edge[m.id]]
        for rep in space_i.reps:
            mid = f"{m.id}@{rep}"
            t_rep = spaces[m.t].rep_of(G.mul(rep, e_inv))
            mors.append(Morphism(mid, f"{m.i}@{rep}", f"{m.t}@{t_rep}"))
            mor_info[mid] = (rep, m.id)

    comp: dict[tuple[str, str], str] = {}
    dev_by_base = defaultdict(dict)  # base morphism -> {coset id -> dev morphism id}
    for mid, (rep, a) in mor_info.items():
        dev_by_base[a][spaces[S.src(a)].coset_of(rep)] = mid
    for (a, b), ab in S.comp.items():
        # v runs over lifts of b; the matching lift of a starts at t(v)
        e_b_inv = G.inv[phi.phi_edge[b]]
        for rep_v in spaces[S.src(b)].reps:
            v_id = f"{b}@{rep_v}"
            u_rep = G.mul(rep_v, e_b_inv)
            u_id = dev_by_base[a].get(spaces[S.src(a)].coset_of(u_rep))
            if u_id is None:
                raise CompositionUnderdetermined(
                    f"no lift of {a!r} over coset of {u_rep} meets lift {v_id!r}"
                )
            comp[(u_id, v_id)] = f"{ab}@{spaces[S.src(ab)].rep_of(rep_v)}"

    scwol = Scwol(objects, mors, comp, label=f"D({S.label})")
    rep = validate_scwol(scwol)
    if not rep.ok:
        raise CompositionUnderdetermined(
            f"development composition inconsistent: {rep.failures[0].message}"
        )

    projection = ScwolMorphism(
        source=scwol,
        target=S,
        on_objects={oid: o for oid, (_, o) in obj_info.items()},
        on_morphisms={mid: a for mid, (_, a) in mor_info.items()},
    )
    prep = validate_scwol_morphism(projection)
    assert prep.ok and is_nondegenerate(projection), "development projection must be non-degenerate"

    action: dict[int, tuple[dict[str, str], dict[str, str]]] = {}
    for g in G.elements():
        omap = {}
        for oid, (rep, o) in obj_info.items():
            omap[oid] = f"{o}@{spaces[o].rep_of(G.mul(g, rep))}"
        mmap = {}
        for mid, (rep, a) in mor_info.items():
            mmap[mid] = f"{a}@{spaces[S.src(a)].rep_of(G.mul(g, rep))}"
        action[g] = (omap, mmap)
    for g in G.elements():
        omap, mmap = action[g]
        for m in mors:
            if omap[m.i] == m.t:
                raise ActionInversion(f"element {g} sends i({m.id!r}) to t({m.id!r})")

    expected = development_size(C, phi)
    assert (len(objects), len(mors)) == expected, "size formula mismatch"
    return Development(
        scwol=scwol,
        base=S,
        group=G,
        morphism=phi,
        projection=projection,
        action=action,
        obj_info=obj_info,
        mor_info=mor_info,
        coset_spaces=spaces,
    )


def check_action(D: Development) -> ValidationReport:
    """Automorphism action without inversions, stabilizers and orbit bijection."""
    failures: list[Failure] = []
    G = D.group
    scwol = D.scwol
    mor_ids = [m.id for m in scwol.morphisms]
    for g in G.elements():
        omap, mmap = D.action[g]
        if sorted(omap.values()) != sorted(scwol.objects):
            failures.append(Failure("NotBijective", (g,), f"element {g} does not permute objects"))
            continue
        for m in scwol.morphisms:
            img = mmap[m.id]
            if scwol.src(img) != omap[m.i] or scwol.tgt(img) != omap[m.t]:
                failures.append(
                    Failure("NotFunctorial", (g, m.id), f"element {g} breaks i/t at {m.id!r}")
                )
                break
        for (u, v), uv in scwol.comp.items():
            if scwol.comp.get((mmap[u], mmap[v])) != mmap[uv]:
                failures.append(
                    Failure("NotFunctorial", (g, u, v), f"element {g} breaks composition at {(u, v)}")
                )
                break
    # group law g.(h.x) = (gh).x; checking h over a generating set is complete
    gens = _generating_set(G)
    done = False
    for g in G.elements():
        if done:
            break
        for h in gens:
            gh = G.mul(g, h)
            for oid in scwol.objects:
                if D.action[g][0][D.action[h][0][oid]] != D.action[gh][0][oid]:
                    failures.append(
                        Failure("NotAnAction", (g, h, oid), f"action law fails at ({g}, {h}, {oid!r})")
                    )
                    done = True
                    break
            if done:
                break
    # no inversions and the stabilizer condition
    for g in G.elements():
        omap, mmap = D.action[g]
        for m in scwol.morphisms:
            if omap[m.i] == m.t:
                failures.append(
                    Failure("ActionInversion", (g, m.id), f"element {g} inverts {m.id!r}")
                )
            if omap[m.i] == m.i and mmap[m.id] != m.id:
                failures.append(
                    Failure(
                        "StabilizerCondition",
                        (g, m.id),
                        f"element {g} fixes i({m.id!r}) but moves the morphism",
                    )
                )
    # orbits biject with base objects/morphisms under the projection
    obj_orbits = _orbits(scwol.objects, {g: D.action[g][0] for g in G.elements()})
    mor_orbits = _orbits(mor_ids, {g: D.action[g][1] for g in G.elements()})
    if len(obj_orbits) != len(D.base.objects):
        failures.append(
            Failure(
                "OrbitMismatch",
                (len(obj_orbits), len(D.base.objects)),
                "object orbit count differs from base object count",
            )
        )
    else:
        for orb in obj_orbits:
            bases = {D.projection.obj(x) for x in orb}
            if len(bases) != 1:
                failures.append(
                    Failure("OrbitMismatch", tuple(sorted(orb))[:2], "orbit projects onto several base objects")
                )
    if len(mor_orbits) != len(D.base.morphisms):
        failures.append(
            Failure(
                "OrbitMismatch",
                (len(mor_orbits), len(D.base.morphisms)),
                "morphism orbit count differs from base morphism count",
            )
        )
    return ValidationReport(not failures, tuple(failures))


def _generating_set(G: FiniteGroup) -> list[int]:
    gens: list[int] = []
    closure = {G.identity}
    for x in G.elements():
        if x not in closure:
            gens.append(x)
            closure = set(groups.subgroup_closure(G, gens))
            if len(closure) == G.order:
                break
    return gens


def _orbits(items, maps):
    seen = set()
    orbits = []
    for x in items:
        if x in seen:
            continue
        orb = {maps[g][x] for g in maps}
        orbits.append(orb)
        seen |= orb
    return orbits


def stabilizer_order(D: Development, oid: str) -> int:
    return sum(1 for g in D.group.elements() if D.action[g][0][oid] == oid)


# -- induced morphisms of local developments ----------------------------------

def build_local_dev_morphism(
    phi: CogMorphism,
    sigma: str,
    src: Optional[LocalDevelopment] = None,
    tgt: Optional[LocalDevelopment] = None,
) -> ScwolMorphism:
    """Phi_sigma from the local development at sigma to the one at f(sigma).

    On the fattened upper link the map sends the coset (h xi_c(H_i(c)), c)
    to (phi_sigma(h) phi(c) psi_f(c)(G_i(f(c))), f(c)); everywhere else it is
    the underlying scwol map.  Prebuilt local developments may be passed in.
    """
    H, Gx = phi.source, phi.target
    Y, X = H.base, Gx.base
    if sigma not in Y.object_set:
        raise UnknownObject(f"object {sigma!r} not in {Y.label}")
    if src is None:
        src = build_local_development(H, sigma)
    if tgt is None:
        tgt = build_local_development(Gx, phi.f.obj(sigma))
    G = Gx.group_of[phi.f.obj(sigma)]
    phi_sigma = phi.phi_local[sigma]

    def upper_image(rep: int, c: str) -> tuple[int, str]:
        fc = phi.f.mor(c)
        g = G.mul(phi_sigma(rep), phi.phi_edge[c])
        return tgt.coset_spaces[fc].rep_of(g), fc

    on_objects = {src.center_id: tgt.center_id}
    for oid, (rep, c) in src.upper_objects.items():
        irep, fc = upper_image(rep, c)
        on_objects[oid] = f"c:{fc}@{irep}"
    for oid, b in src.lower_objects.items():
        on_objects[oid] = f"b:{phi.f.mor(b)}"

    on_morphisms = {}
    for mid, fam in src.mor_family.items():
        kind = fam[0]
        if kind == "lk_up":
            rep, c, d = fam[1:]
            cd = Y.comp[(c, d)]
            irep, fcd = upper_image(rep, cd)
            on_morphisms[mid] = f"cd:{_pid(phi.f.mor(c), phi.f.mor(d))}@{irep}"
        elif kind == "gamma_c":
            rep, c = fam[1:]
            irep, fc = upper_image(rep, c)
            on_morphisms[mid] = f"gc:{fc}@{irep}"
        elif kind == "b_c":
            b, rep, c = fam[1:]
            irep, fc = upper_image(rep, c)
            on_morphisms[mid] = f"bc:{_pid(phi.f.mor(b), fc)}@{irep}"
        elif kind == "b_gamma":
            on_morphisms[mid] = f"bg:{phi.f.mor(fam[1])}"
        else:  # lk_dn
            a, b = fam[1:]
            on_morphisms[mid] = f"ab:{_pid(phi.f.mor(a), phi.f.mor(b))}"

    for mid, img in on_morphisms.items():
        if img not in tgt.scwol.mor_by_id:
            raise CompositionUnderdetermined(
                f"image of local-development morphism {mid!r} does not exist: {img!r}"
            )
    out = ScwolMorphism(
        source=src.scwol, target=tgt.scwol, on_objects=on_objects, on_morphisms=on_morphisms
    )
    rep = validate_scwol_morphism(out)
    if not rep.ok:
        first = rep.failures[0]
        raise CompositionUnderdetermined(
            f"Phi_sigma at {sigma!r} is not a scwol morphism: {first.message}"
        )
    return out


def local_dev_morphism_injectivity(
    phi: CogMorphism,
    sigma: str,
    src: Optional[LocalDevelopment] = None,
    tgt: Optional[LocalDevelopment] = None,
) -> dict[str, bool]:
    """Injectivity of Phi_sigma on objects, morphisms and the upper link."""
    if src is None:
        src = build_local_development(phi.source, sigma)
    f = build_local_dev_morphism(phi, sigma, src=src, tgt=tgt)
    obj_inj = len(set(f.on_objects.values())) == len(f.on_objects)
    mor_inj = len(set(f.on_morphisms.values())) == len(f.on_morphisms)
    upper = [f.on_objects[o] for o in src.upper_objects]
    return {
        "objects": obj_inj,
        "morphisms": mor_inj,
        "upper_link": len(set(upper)) == len(upper),
    }
