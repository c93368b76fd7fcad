"""Fundamental-group presentations over a maximal tree.

Generators are one symbol per local-group element plus one positive symbol
per morphism (the negative is encoded by exponent sign).  Relators are the
local multiplication tables, the pair relators a+ b+ = g_{a,b}(ab)+, the
conjugation relators psi_a(g) = a+ g a-, and a+ = 1 on tree edges.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence, Union

from . import groups
from .complexes import CogMorphism, ComplexOfGroups, MorphismToGroup
from .errors import RelatorNotKilled, TreeConditionViolated, TreeNotSpanning, UnknownFormat
from .groups import FiniteGroup
from .scwols import is_spanning_tree

# generators are tagged tuples:
#   ("v", object_id, element)  local-group element
#   ("e", morphism_id)         positive edge symbol
Gen = tuple
Word = tuple[tuple[int, int], ...]  # ((generator index, +1/-1), ...)


@dataclass(frozen=True)
class GroupPresentation:
    generators: tuple[Gen, ...]
    relators: tuple[Word, ...]
    tree: tuple[str, ...]
    label: str = field(default="pi1", compare=False)

    def gen_index(self) -> dict[Gen, int]:
        return {g: k for k, g in enumerate(self.generators)}

    def gen_name(self, k: int) -> str:
        g = self.generators[k]
        if g[0] == "v":
            return f"v[{g[1]}:{g[2]}]"
        return f"e[{g[1]}]"


def free_reduce(word: Word) -> Word:
    out: list[tuple[int, int]] = []
    for letter in word:
        if out and out[-1][0] == letter[0] and out[-1][1] == -letter[1]:
            out.pop()
        else:
            out.append(letter)
    return tuple(out)


def pi1_presentation(C: ComplexOfGroups, T: Iterable[str]) -> GroupPresentation:
    """Presentation of the fundamental group over the spanning tree T.

    Local-group relations are the full multiplication tables; at desk scale
    this stays small and needs no presentation search.
    """
    S = C.base
    tree = tuple(sorted(T))
    if len(S.objects) > 1 or tree:
        if not is_spanning_tree(S, tree):
            raise TreeNotSpanning(f"{tree} is not a spanning tree of {S.label}")

    gens: list[Gen] = []
    for o in sorted(S.objects):
        for x in C.group_of[o].elements():
            gens.append(("v", o, x))
    mor_ids = sorted(m.id for m in S.morphisms)
    for a in mor_ids:
        gens.append(("e", a))
    index = {g: k for k, g in enumerate(gens)}

    def v(o: str, x: int) -> int:
        return index[("v", o, x)]

    def e(a: str) -> int:
        return index[("e", a)]

    relators: list[Word] = []
    for o in sorted(S.objects):
        G = C.group_of[o]
        for x in G.elements():
            for y in G.elements():
                relators.append(((v(o, x), 1), (v(o, y), 1), (v(o, G.mul(x, y)), -1)))
    for (a, b) in sorted(S.comp):
        ab = S.comp[(a, b)]
        relators.append(
            ((e(a), 1), (e(b), 1), (e(ab), -1), (v(S.tgt(a), C.twist[(a, b)]), -1))
        )
    for a in mor_ids:
        m = S.mor_by_id[a]
        psi = C.psi[a]
        for x in C.group_of[m.i].elements():
            relators.append(((e(a), 1), (v(m.i, x), 1), (e(a), -1), (v(m.t, psi(x)), -1)))
    for a in tree:
        relators.append(((e(a), 1),))
    return GroupPresentation(
        generators=tuple(gens), relators=tuple(relators), tree=tree, label=f"pi1({C.label})"
    )


# -- induced homomorphisms ----------------------------------------------------

@dataclass(frozen=True)
class PresentationHom:
    """Generator images, either group elements or words in a target presentation.

    For finite-group targets every source relator has been verified trivial;
    for presentation targets the relator images are recorded as proof
    obligations, not certified.
    """

    source: GroupPresentation
    target: Union[GroupPresentation, FiniteGroup]
    element_images: Optional[tuple[int, ...]] = None
    word_images: Optional[tuple[Word, ...]] = None
    obligations: tuple[Word, ...] = ()


def evaluate_word(G: FiniteGroup, images: Sequence[int], word: Word) -> int:
    acc = G.identity
    for gen, sign in word:
        x = images[gen] if sign > 0 else G.inv[images[gen]]
        acc = G.mul(acc, x)
    return acc


def induced_hom_to_group(phi: MorphismToGroup, P: GroupPresentation) -> PresentationHom:
    """h -> phi_sigma(h), a+ -> phi(a); requires phi(a) = e on tree edges."""
    G = phi.target
    for a in P.tree:
        if phi.phi_edge[a] != G.identity:
            raise TreeConditionViolated(f"phi({a!r}) != identity on a tree edge")
    images = []
    for g in P.generators:
        if g[0] == "v":
            images.append(phi.phi_local[g[1]](g[2]))
        else:
            images.append(phi.phi_edge[g[1]])
    for word in P.relators:
        if evaluate_word(G, images, word) != G.identity:
            raise RelatorNotKilled(f"relator {word} does not map to the identity")
    return PresentationHom(source=P, target=G, element_images=tuple(images))


def hom_image_subgroup(hom: PresentationHom) -> tuple[int, ...]:
    assert isinstance(hom.target, FiniteGroup) and hom.element_images is not None
    return groups.subgroup_closure(hom.target, hom.element_images)


def is_surjective(hom: PresentationHom) -> bool:
    return len(hom_image_subgroup(hom)) == hom.target.order


def induced_hom(
    phi: CogMorphism, P_src: GroupPresentation, P_tgt: GroupPresentation
) -> PresentationHom:
    """h -> phi_sigma(h), a+ -> phi(a) f(a)+, as words in the target generators."""
    tgt_index = P_tgt.gen_index()
    Y = phi.source.base
    X = phi.target.base
    words: list[Word] = []
    for g in P_src.generators:
        if g[0] == "v":
            o, x = g[1], g[2]
            img = phi.phi_local[o](x)
            words.append(((tgt_index[("v", phi.f.obj(o), img)], 1),))
        else:
            a = g[1]
            fa = phi.f.mor(a)
            elt = phi.phi_edge[a]
            words.append(
                ((tgt_index[("v", X.tgt(fa), elt)], 1), (tgt_index[("e", fa)], 1))
            )
    word_images = tuple(words)
    obligations = []
    for rel in P_src.relators:
        image: list[tuple[int, int]] = []
        for gen, sign in rel:
            w = word_images[gen]
            if sign > 0:
                image.extend(w)
            else:
                image.extend((g, -s) for g, s in reversed(w))
        obligations.append(free_reduce(tuple(image)))
    return PresentationHom(
        source=P_src, target=P_tgt, word_images=word_images, obligations=tuple(obligations)
    )


# -- simplification ------------------------------------------------------------

def simplify(P: GroupPresentation) -> GroupPresentation:
    """Safe moves only: free reduction, duplicate removal, and elimination of
    generators forced trivial by a single-letter relator."""
    gens = list(P.generators)
    relators = [free_reduce(w) for w in P.relators]
    changed = True
    while changed:
        changed = False
        dead = None
        for w in relators:
            if len(w) == 1:
                dead = w[0][0]
                break
        if dead is not None:
            changed = True
            relators = [
                free_reduce(tuple(l for l in w if l[0] != dead)) for w in relators
            ]
            remap = {}
            new_gens = []
            for k, g in enumerate(gens):
                if k != dead:
                    remap[k] = len(new_gens)
                    new_gens.append(g)
            gens = new_gens
            relators = [tuple((remap[g], s) for g, s in w) for w in relators]
        # drop empties and duplicates; this never re-enables a move by itself
        seen = set()
        out = []
        for w in relators:
            if w and w not in seen:
                seen.add(w)
                out.append(w)
        relators = out
    return GroupPresentation(
        generators=tuple(gens), relators=tuple(relators), tree=P.tree, label=P.label
    )


# -- abelianization via Smith normal form --------------------------------------

def abelianization(P: GroupPresentation) -> list[int]:
    """Invariant factors of the abelianized presentation.

    Output is the nontrivial torsion coefficients in divisibility order
    followed by one zero per free rank.
    """
    ncols = len(P.generators)
    rows = []
    for w in P.relators:
        row: dict[int, int] = {}
        for gen, sign in w:
            row[gen] = row.get(gen, 0) + sign
        row = {c: v for c, v in row.items() if v}
        if row:
            rows.append(row)
    invariants, rank = snf_invariants(rows, ncols)
    torsion = [d for d in invariants if d != 1]
    return torsion + [0] * (ncols - rank)


def snf_invariants(rows: list[dict[int, int]], ncols: int) -> tuple[list[int], int]:
    """Invariant factors (with 1s) and the rank of a sparse integer matrix.

    Unit entries are eliminated sparsely first; the small remainder goes
    through the textbook Smith reduction.
    """
    rows = [dict(r) for r in rows if r]
    rank_units = 0
    while True:
        pick = None
        for ri, row in enumerate(rows):
            for c, val in row.items():
                if val in (1, -1):
                    pick = (ri, c)
                    break
            if pick:
                break
        if pick is None:
            break
        ri, c = pick
        base = rows[ri]
        coeff = base[c]
        if coeff == -1:
            base = {k: -v for k, v in base.items()}
        others = []
        for rj, row in enumerate(rows):
            if rj == ri or c not in row:
                if rj != ri:
                    others.append(row)
                continue
            q = row[c]
            new = dict(row)
            for k, v in base.items():
                new[k] = new.get(k, 0) - q * v
                if new[k] == 0:
                    del new[k]
            if new:
                others.append(new)
        rows = others
        rank_units += 1
    cols = sorted({c for row in rows for c in row})
    if not cols:
        return [1] * rank_units, rank_units
    pos = {c: k for k, c in enumerate(cols)}
    dense = [[0] * len(cols) for _ in rows]
    for k, row in enumerate(rows):
        for c, v in row.items():
            dense[k][pos[c]] = v
    diag = _dense_snf(dense)
    invariants = [1] * rank_units + [abs(d) for d in diag if d]
    return sorted(invariants), rank_units + sum(1 for d in diag if d)


def _dense_snf(mat: list[list[int]]) -> list[int]:
    """Textbook Smith reduction; returns the diagonal with divisibility chain."""
    m = len(mat)
    n = len(mat[0]) if m else 0
    t = 0
    diag = []
    while t < min(m, n):
        # smallest nonzero entry in the working submatrix
        best = None
        for i in range(t, m):
            for j in range(t, n):
                v = abs(mat[i][j])
                if v and (best is None or v < best[0]):
                    best = (v, i, j)
        if best is None:
            break
        _, bi, bj = best
        mat[t], mat[bi] = mat[bi], mat[t]
        for row in mat:
            row[t], row[bj] = row[bj], row[t]
        while True:
            dirty = False
            for i in range(t + 1, m):
                if mat[i][t]:
                    q = mat[i][t] // mat[t][t]
                    for j in range(t, n):
                        mat[i][j] -= q * mat[t][j]
                    if mat[i][t]:
                        mat[t], mat[i] = mat[i], mat[t]
                        dirty = True
            for j in range(t + 1, n):
                if mat[t][j]:
                    q = mat[t][j] // mat[t][t]
                    for row in mat:
                        row[j] -= q * row[t]
                    if mat[t][j]:
                        for row in mat:
                            row[t], row[j] = row[j], row[t]
                        dirty = True
            if not dirty:
                break
        # divisibility fixup: pivot must divide every remaining entry
        fix = None
        for i in range(t + 1, m):
            for j in range(t + 1, n):
                if mat[i][j] % mat[t][t]:
                    fix = i
                    break
            if fix is not None:
                break
        if fix is not None:
            for j in range(t, n):
                mat[t][j] += mat[fix][j]
            continue
        diag.append(abs(mat[t][t]))
        t += 1
    return diag


# -- exports --------------------------------------------------------------------

def export(P: GroupPresentation, fmt: str) -> str:
    if fmt == "plain":
        lines = [f"presentation {P.label}"]
        lines.append("generators: " + ", ".join(P.gen_name(k) for k in range(len(P.generators))))
        lines.append("relators:")
        for w in P.relators:
            lines.append("  " + word_str(P, w))
        lines.append("tree: " + ", ".join(P.tree))
        return "\n".join(lines) + "\n"
    if fmt in ("cas", "cas-fp-group"):
        n = len(P.generators)
        names = [f"g{k + 1}" for k in range(n)]
        lines = ["# free-group presentation script (GAP syntax)"]
        for k, nm in enumerate(names):
            lines.append(f"# {nm} = {P.gen_name(k)}")
        lines.append(f'F := FreeGroup({", ".join(repr(nm) for nm in names)});')
        rel_terms = []
        for w in P.relators:
            if not w:
                continue
            rel_terms.append("*".join(f"F.{g + 1}" + ("" if s > 0 else "^-1") for g, s in w))
        lines.append("rels := [" + ", ".join(rel_terms) + "];")
        lines.append("G := F / rels;")
        return "\n".join(lines) + "\n"
    if fmt in ("structured", "json"):
        payload = {
            "schema": "presentation/1",
            "label": P.label,
            "generators": [list(g) for g in P.generators],
            "relators": [[[g, s] for g, s in w] for w in P.relators],
            "tree": list(P.tree),
        }
        return json.dumps(payload, sort_keys=True, indent=2) + "\n"
    raise UnknownFormat(f"unknown presentation format {fmt!r}")


def word_str(P: GroupPresentation, w: Word) -> str:
    if not w:
        return "1"
    return " ".join(P.gen_name(g) + ("" if s > 0 else "^-1") for g, s in w)


def parse_structured(text: str) -> GroupPresentation:
    payload = json.loads(text)
    if payload.get("schema") != "presentation/1":
        raise UnknownFormat("not a presentation/1 document")
    gens = tuple(tuple(g) for g in payload["generators"])
    relators = tuple(tuple((int(g), int(s)) for g, s in w) for w in payload["relators"])
    return GroupPresentation(
        generators=gens,
        relators=relators,
        tree=tuple(payload["tree"]),
        label=payload.get("label", "pi1"),
    )
