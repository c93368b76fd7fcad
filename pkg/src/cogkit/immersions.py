"""Immersion checks: algebraic injectivity, injectivity of the induced maps
of local developments, and the edge-wise coset criterion.

The geometric condition is implemented as injectivity of the induced map on
objects and morphisms of the local development; the coset criterion reduces
the upper-link part to coset arithmetic and must agree with it everywhere.
Metric conditions are out of scope and reported as not evaluated.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from . import groups
from .complexes import CogMorphism, ComplexOfGroups, MorphismToGroup, validate_morphism_to_group
from .develop import (
    Development,
    build_development,
    build_local_development,
    local_dev_morphism_injectivity,
)


@dataclass(frozen=True)
class ImmersionReport:
    algebraic: dict[str, bool]  # object -> phi_sigma injective
    geometric: dict[str, dict[str, bool]]  # object -> injectivity on V/E/upper link
    coset: dict[tuple[str, str], bool]  # (target morphism j, source object) -> verdict
    metric: str = field(default="not evaluated", compare=False)

    @property
    def overall(self) -> bool:
        return all(self.algebraic.values()) and all(
            v["objects"] and v["morphisms"] for v in self.geometric.values()
        )

    def coset_verdict_at(self, sigma: str) -> bool:
        return all(v for (j, s), v in self.coset.items() if s == sigma)


def check_coset_condition(phi: CogMorphism) -> dict[tuple[str, str], bool]:
    """For each j in E(X) and sigma = t(a) with a in f^-1(j): the map of the
    disjoint union of coset spaces H_sigma/xi_a(H_i(a)) into
    G_f(sigma)/psi_j(G_i(j)) induced by h -> phi_sigma(h)phi(a) is injective."""
    H, Gx = phi.source, phi.target
    Y, X = H.base, Gx.base
    preimages: dict[tuple[str, str], list[str]] = {}
    for m in Y.morphisms:
        key = (phi.f.mor(m.id), m.t)
        preimages.setdefault(key, []).append(m.id)
    verdicts: dict[tuple[str, str], bool] = {}
    for (j, sigma), mors in sorted(preimages.items()):
        Hs = H.group_of[sigma]
        Gf = Gx.group_of[X.tgt(j)]
        target_sub = groups.hom_image(Gx.psi[j])
        seen: set[int] = set()
        ok = True
        for a in sorted(mors):
            dom = groups.cosets(Hs, groups.hom_image(H.psi[a]))
            phi_sigma = phi.phi_local[sigma]
            e = phi.phi_edge[a]
            for rep in dom.reps:
                img = groups.left_coset_rep(Gf, Gf.mul(phi_sigma(rep), e), target_sub)
                if img in seen:
                    ok = False
                seen.add(img)
        verdicts[(j, sigma)] = ok
    return verdicts


def check_immersion(phi: CogMorphism) -> ImmersionReport:
    """Algebraic injectivity plus injectivity of every induced local-development map."""
    Y = phi.source.base
    algebraic = {o: groups.is_injective(phi.phi_local[o]) for o in Y.objects}
    tgt_cache: dict[str, object] = {}
    geometric: dict[str, dict[str, bool]] = {}
    for sigma in sorted(Y.objects):
        f_sigma = phi.f.obj(sigma)
        if f_sigma not in tgt_cache:
            tgt_cache[f_sigma] = build_local_development(phi.target, f_sigma)
        geometric[sigma] = local_dev_morphism_injectivity(
            phi, sigma, tgt=tgt_cache[f_sigma]
        )
    coset = check_coset_condition(phi)
    return ImmersionReport(algebraic=algebraic, geometric=geometric, coset=coset)


@dataclass(frozen=True)
class DevelopabilityVerdict:
    developable_certificate: bool
    witness: Optional[Development]


def check_developability_candidate(
    C: ComplexOfGroups, phi: MorphismToGroup
) -> DevelopabilityVerdict:
    """Injectivity on all local groups certifies developability; the witness
    action is the development.  A negative verdict decides nothing."""
    rep = validate_morphism_to_group(phi)
    if not rep.ok:
        raise ValueError(f"candidate morphism is invalid: {rep.validation.failures[:1]}")
    if not rep.all_injective:
        return DevelopabilityVerdict(False, None)
    return DevelopabilityVerdict(True, build_development(C, phi))
