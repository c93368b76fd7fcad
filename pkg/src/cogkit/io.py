"""Canonical on-disk formats (versioned JSON) and the workspace resolver.

Every document carries a ``schema`` field.  Cross-references are by id:
a workspace is a directory of ``*.json`` documents, each named by its ``id``
field (falling back to the file stem).  Fields that accept a reference also
accept the same object inline.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Union

from . import groups
from .complexes import CogMorphism, ComplexOfGroups, MorphismToGroup, validate_cog
from .develop import Development
from .errors import ParseError, UnresolvedReference
from .groups import FiniteGroup
from .scwols import (
    Morphism,
    PolyhedralComplexExport,
    Scwol,
    ScwolMorphism,
    validate_scwol,
)


def dumps(payload: dict) -> str:
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


# -- writers --------------------------------------------------------------------

def group_to_json(G: FiniteGroup, id: Optional[str] = None) -> dict:
    return {
        "schema": "group/1",
        "id": id or G.label,
        "cayley": [list(row) for row in G.mult],
        "identity": G.identity,
    }


def scwol_to_json(S: Scwol, id: Optional[str] = None) -> dict:
    return {
        "schema": "scwol/1",
        "id": id or S.label,
        "objects": list(S.objects),
        "morphisms": [{"id": m.id, "i": m.i, "t": m.t} for m in S.morphisms],
        "comp": sorted([a, b, ab] for (a, b), ab in S.comp.items()),
    }


def cog_to_json(C: ComplexOfGroups, id: Optional[str] = None, inline: bool = True) -> dict:
    return {
        "schema": "cog/1",
        "id": id or C.label,
        "base": scwol_to_json(C.base) if inline else C.base.label,
        "groups": {o: group_to_json(C.group_of[o]) if inline else C.group_of[o].label for o in C.base.objects},
        "psi": {m.id: list(C.psi[m.id].image) for m in C.base.morphisms},
        "twists": sorted([a, b, C.twist[(a, b)]] for (a, b) in C.twist),
    }


def morphism_to_group_to_json(phi: MorphismToGroup, id: Optional[str] = None) -> dict:
    return {
        "schema": "morphism-to-group/1",
        "id": id or "phi",
        "cog": cog_to_json(phi.source),
        "target": group_to_json(phi.target),
        "phi_local": {o: list(phi.phi_local[o].image) for o in phi.source.base.objects},
        "phi_edge": dict(sorted(phi.phi_edge.items())),
    }


def cog_morphism_to_json(phi: CogMorphism, id: Optional[str] = None) -> dict:
    return {
        "schema": "cog-morphism/1",
        "id": id or "phi",
        "source": cog_to_json(phi.source),
        "target": cog_to_json(phi.target),
        "f": {
            "objects": dict(sorted(phi.f.on_objects.items())),
            "morphisms": dict(sorted(phi.f.on_morphisms.items())),
        },
        "phi_local": {o: list(phi.phi_local[o].image) for o in phi.source.base.objects},
        "phi_edge": dict(sorted(phi.phi_edge.items())),
    }


def development_to_json(D: Development, id: Optional[str] = None) -> dict:
    return {
        "schema": "development/1",
        "id": id or D.scwol.label,
        "scwol": scwol_to_json(D.scwol),
        "group": group_to_json(D.group),
        "projection": {
            "objects": dict(sorted(D.projection.on_objects.items())),
            "morphisms": dict(sorted(D.projection.on_morphisms.items())),
        },
        "action": {
            str(g): {"objects": dict(sorted(om.items())), "morphisms": dict(sorted(mm.items()))}
            for g, (om, mm) in D.action.items()
        },
    }


def realization_to_json(ex: PolyhedralComplexExport, id: str = "realization") -> dict:
    return {
        "schema": "realization/1",
        "id": id,
        "cells": [list(level) for level in ex.cells],
        "faces": {cid: list(fs) for cid, fs in sorted(ex.faces.items())},
        "vertices": {cid: list(vs) for cid, vs in sorted(ex.vertices_of.items())},
    }


def realization_to_off(ex: PolyhedralComplexExport) -> str:
    """OFF-style export: vertices on a circle, 2-cells as faces."""
    import math

    verts = list(ex.cells[0])
    pos = {v: k for k, v in enumerate(verts)}
    n = len(verts)
    faces = list(ex.cells[2]) if len(ex.cells) > 2 else []
    edges = list(ex.cells[1]) if len(ex.cells) > 1 else []
    lines = ["OFF", f"{n} {len(faces)} {len(edges)}"]
    for k, v in enumerate(verts):
        angle = 2 * math.pi * k / max(n, 1)
        lines.append(f"{math.cos(angle):.6f} {math.sin(angle):.6f} 0.000000")
    for cid in faces:
        vs = ex.vertices_of[cid]
        lines.append(f"{len(vs)} " + " ".join(str(pos[v]) for v in vs))
    return "\n".join(lines) + "\n"


# -- parsers --------------------------------------------------------------------

def _need(payload: dict, key: str, kind: str):
    if key not in payload:
        raise ParseError(f"{kind} document is missing {key!r}")
    return payload[key]


def group_from_json(payload: dict) -> FiniteGroup:
    label = payload.get("id", "G")
    if "cayley" in payload:
        return groups.from_cayley_table(payload["cayley"], payload.get("identity", 0), label=label)
    if "perm_gens" in payload:
        return groups.from_permutation_generators(
            int(_need(payload, "degree", "group")), payload["perm_gens"], label=label
        )
    raise ParseError("group document needs either 'cayley' or 'perm_gens'")


def scwol_from_json(payload: dict) -> Scwol:
    mors = [Morphism(m["id"], m["i"], m["t"]) for m in _need(payload, "morphisms", "scwol")]
    comp = {(a, b): ab for a, b, ab in payload.get("comp", [])}
    S = Scwol(_need(payload, "objects", "scwol"), mors, comp, label=payload.get("id", "Y"))
    rep = validate_scwol(S)
    if not rep.ok:
        raise ParseError(f"scwol {S.label!r} invalid: {rep.failures[0].message}")
    return S


@dataclass
class Workspace:
    """Named documents loaded from a directory, resolved and validated lazily."""

    root: Path
    documents: dict[str, dict] = field(default_factory=dict)
    _groups: dict[str, FiniteGroup] = field(default_factory=dict)
    _scwols: dict[str, Scwol] = field(default_factory=dict)
    _cogs: dict[str, ComplexOfGroups] = field(default_factory=dict)

    @classmethod
    def load(cls, root: Union[str, Path]) -> "Workspace":
        root = Path(root)
        ws = cls(root=root)
        for path in sorted(root.glob("*.json")):
            try:
                payload = json.loads(path.read_text())
            except json.JSONDecodeError as exc:
                raise ParseError(f"{path.name}: line {exc.lineno}, column {exc.colno}: {exc.msg}")
            if not isinstance(payload, dict) or "schema" not in payload:
                raise ParseError(f"{path.name}: not a schema-tagged document")
            name = payload.get("id", path.stem)
            ws.documents[name] = payload
        return ws

    def _find(self, ref: str, schema_prefix: str) -> dict:
        doc = self.documents.get(ref)
        if doc is None or not doc.get("schema", "").startswith(schema_prefix):
            raise UnresolvedReference(f"no {schema_prefix!r} document named {ref!r}")
        return doc

    def group(self, ref: Union[str, dict]) -> FiniteGroup:
        if isinstance(ref, dict):
            return group_from_json(ref)
        if ref not in self._groups:
            self._groups[ref] = group_from_json(self._find(ref, "group/"))
        return self._groups[ref]

    def scwol(self, ref: Union[str, dict]) -> Scwol:
        if isinstance(ref, dict):
            return scwol_from_json(ref)
        if ref not in self._scwols:
            self._scwols[ref] = scwol_from_json(self._find(ref, "scwol/"))
        return self._scwols[ref]

    def cog(self, ref: Union[str, dict]) -> ComplexOfGroups:
        if isinstance(ref, str) and ref in self._cogs:
            return self._cogs[ref]
        payload = ref if isinstance(ref, dict) else self._find(ref, "cog/")
        base = self.scwol(_need(payload, "base", "cog"))
        group_of = {o: self.group(g) for o, g in _need(payload, "groups", "cog").items()}
        psi = {}
        for m in base.morphisms:
            image = _need(payload, "psi", "cog").get(m.id)
            if image is None:
                raise ParseError(f"cog document lacks psi[{m.id!r}]")
            psi[m.id] = groups.make_hom(group_of[m.i], group_of[m.t], image)
        twist = {(a, b): k for a, b, k in payload.get("twists", [])}
        C = ComplexOfGroups(
            base=base, group_of=group_of, psi=psi, twist=twist, label=payload.get("id", "G(Y)")
        )
        rep = validate_cog(C)
        if not rep.ok:
            raise ParseError(f"complex {C.label!r} invalid: {rep.failures[0].message}")
        if isinstance(ref, str):
            self._cogs[ref] = C
        return C

    def morphism_to_group(self, ref: Union[str, dict]) -> MorphismToGroup:
        payload = ref if isinstance(ref, dict) else self._find(ref, "morphism-to-group/")
        C = self.cog(_need(payload, "cog", "morphism-to-group"))
        G = self.group(_need(payload, "target", "morphism-to-group"))
        phi_local = {
            o: groups.make_hom(C.group_of[o], G, img)
            for o, img in _need(payload, "phi_local", "morphism-to-group").items()
        }
        phi = MorphismToGroup(
            source=C,
            target=G,
            phi_local=phi_local,
            phi_edge={a: int(v) for a, v in _need(payload, "phi_edge", "morphism-to-group").items()},
        )
        from .complexes import validate_morphism_to_group

        rep = validate_morphism_to_group(phi)
        if not rep.ok:
            raise ParseError(f"morphism-to-group invalid: {rep.validation.failures[0].message}")
        return phi

    def cog_morphism(self, ref: Union[str, dict]) -> CogMorphism:
        payload = ref if isinstance(ref, dict) else self._find(ref, "cog-morphism/")
        src = self.cog(_need(payload, "source", "cog-morphism"))
        tgt = self.cog(_need(payload, "target", "cog-morphism"))
        fdata = _need(payload, "f", "cog-morphism")
        f = ScwolMorphism(
            source=src.base,
            target=tgt.base,
            on_objects=dict(fdata["objects"]),
            on_morphisms=dict(fdata["morphisms"]),
        )
        phi_local = {
            o: groups.make_hom(src.group_of[o], tgt.group_of[f.obj(o)], img)
            for o, img in _need(payload, "phi_local", "cog-morphism").items()
        }
        phi = CogMorphism(
            source=src,
            target=tgt,
            f=f,
            phi_local=phi_local,
            phi_edge={a: int(v) for a, v in _need(payload, "phi_edge", "cog-morphism").items()},
        )
        from .complexes import validate_cog_morphism

        rep = validate_cog_morphism(phi)
        if not rep.ok:
            raise ParseError(f"cog-morphism invalid: {rep.failures[0].message}")
        return phi

    def resolve(self, name: str):
        """Dispatch a named document to its parser by schema."""
        doc = self.documents.get(name)
        if doc is None:
            raise UnresolvedReference(f"no document named {name!r}")
        schema = doc["schema"]
        if schema.startswith("group/"):
            return self.group(name)
        if schema.startswith("scwol/"):
            return self.scwol(name)
        if schema.startswith("cog/"):
            return self.cog(name)
        if schema.startswith("morphism-to-group/"):
            return self.morphism_to_group(name)
        if schema.startswith("cog-morphism/"):
            return self.cog_morphism(name)
        if schema.startswith("presentation/"):
            from .presentations import parse_structured

            return parse_structured(json.dumps(doc))
        if schema.startswith("development/"):
            # the embedded scwol must be valid; action tables are re-derived
            # rather than trusted, so only the combinatorial part is checked
            return self.scwol(doc["scwol"])
        if schema.startswith(("realization/", "immersion-report/", "iso-witness/")):
            return doc
        raise ParseError(f"unsupported schema {schema!r}")
