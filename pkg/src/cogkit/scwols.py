"""Small categories without loops (scwols) as explicit finite data.

A scwol has labeled objects, labeled morphisms with source ``i`` and target
``t``, and an explicit composition table on composable pairs.  The adopted
composability convention: ``(a, b)`` is composable iff ``i(a) = t(b)``, and
the composite ``ab`` satisfies ``i(ab) = i(b)`` and ``t(ab) = t(a)``.
"""

from __future__ import annotations

import itertools
from collections import defaultdict, deque
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .errors import Disconnected, SearchBudgetExceeded, UnknownObject

DEFAULT_ISO_BUDGET = 10**6


@dataclass(frozen=True)
class Morphism:
    id: str
    i: str
    t: str


@dataclass(frozen=True)
class Failure:
    code: str
    witness: tuple
    message: str


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    failures: tuple[Failure, ...] = ()

    def first(self, code: str) -> Optional[Failure]:
        for f in self.failures:
            if f.code == code:
                return f
        return None

    def codes(self) -> set[str]:
        return {f.code for f in self.failures}


class Scwol:
    """Objects, non-identity morphisms and an explicit composition table."""

    def __init__(
        self,
        objects: Iterable[str],
        morphisms: Iterable[Morphism | tuple[str, str, str]],
        comp: dict[tuple[str, str], str],
        label: str = "Y",
    ):
        self.objects: tuple[str, ...] = tuple(objects)
        mors = []
        for m in morphisms:
            mors.append(m if isinstance(m, Morphism) else Morphism(*m))
        self.morphisms: tuple[Morphism, ...] = tuple(mors)
        self.comp: dict[tuple[str, str], str] = dict(comp)
        self.label = label
        self.mor_by_id = {m.id: m for m in self.morphisms}
        self.object_set = set(self.objects)
        self._out = defaultdict(list)  # i(a) = sigma
        self._in = defaultdict(list)  # t(a) = sigma
        for m in self.morphisms:
            self._out[m.i].append(m.id)
            self._in[m.t].append(m.id)
        for v in self._out.values():
            v.sort()
        for v in self._in.values():
            v.sort()

    def out_of(self, obj: str) -> list[str]:
        return self._out.get(obj, [])

    def into(self, obj: str) -> list[str]:
        return self._in.get(obj, [])

    def src(self, mor_id: str) -> str:
        return self.mor_by_id[mor_id].i

    def tgt(self, mor_id: str) -> str:
        return self.mor_by_id[mor_id].t

    def composable_pairs(self) -> list[tuple[str, str]]:
        """All (a, b) with i(a) = t(b), sorted."""
        pairs = []
        for b in self.morphisms:
            for a_id in self._out.get(b.t, []):
                pairs.append((a_id, b.id))
        return sorted(pairs)

    def composable_triples(self) -> list[tuple[str, str, str]]:
        """All (a, b, c) with i(a) = t(b) and i(b) = t(c), sorted."""
        triples = []
        for b in self.morphisms:
            outs = self._out.get(b.t, [])
            ins = self._in.get(b.i, [])
            for a_id in outs:
                for c_id in ins:
                    triples.append((a_id, b.id, c_id))
        return sorted(triples)

    def __repr__(self) -> str:
        return f"Scwol({self.label!r}, |V|={len(self.objects)}, |E|={len(self.morphisms)})"


def validate_scwol(S: Scwol) -> ValidationReport:
    """Check the four scwol axioms; each failure names its first witness."""
    failures: list[Failure] = []
    ids_seen = set()
    for m in S.morphisms:
        if m.id in ids_seen:
            failures.append(Failure("DuplicateMorphismId", (m.id,), f"morphism id {m.id!r} repeated"))
        ids_seen.add(m.id)
        if m.i not in S.object_set or m.t not in S.object_set:
            failures.append(Failure("UnknownObject", (m.id,), f"morphism {m.id!r} has endpoint outside V"))
        elif m.i == m.t:
            failures.append(Failure("LoopMorphism", (m.id,), f"morphism {m.id!r} has i = t = {m.i!r}"))
    if failures:
        return ValidationReport(False, tuple(failures))

    composable = set(S.composable_pairs())
    for pair in sorted(composable):
        if pair not in S.comp:
            failures.append(
                Failure("MissingComposite", pair, f"composable pair {pair} has no composite")
            )
    for (a, b), ab in sorted(S.comp.items()):
        if (a, b) not in composable:
            failures.append(
                Failure("CompositeSourceTargetWrong", (a, b), f"pair {(a, b)} is not composable")
            )
            continue
        if ab not in S.mor_by_id:
            failures.append(
                Failure("CompositeSourceTargetWrong", (a, b, ab), f"composite {ab!r} is not a morphism")
            )
            continue
        if S.src(ab) != S.src(b) or S.tgt(ab) != S.tgt(a):
            failures.append(
                Failure(
                    "CompositeSourceTargetWrong",
                    (a, b, ab),
                    f"composite {ab!r} of {(a, b)} violates i(ab)=i(b), t(ab)=t(a)",
                )
            )
    if not failures:
        for a, b, c in S.composable_triples():
            left = S.comp.get((S.comp[(a, b)], c))
            right = S.comp.get((a, S.comp[(b, c)]))
            if left is None or right is None or left != right:
                failures.append(
                    Failure("NonAssociative", (a, b, c), f"(ab)c != a(bc) at {(a, b, c)}")
                )
                break
    # reachability digraph must be acyclic
    indeg = {o: 0 for o in S.objects}
    succ = defaultdict(set)
    for m in S.morphisms:
        if m.t not in succ[m.i]:
            succ[m.i].add(m.t)
            indeg[m.t] += 1
    queue = deque(sorted(o for o in S.objects if indeg[o] == 0))
    seen = 0
    while queue:
        o = queue.popleft()
        seen += 1
        for n in sorted(succ[o]):
            indeg[n] -= 1
            if indeg[n] == 0:
                queue.append(n)
    if seen != len(S.objects):
        cyc = sorted(o for o in S.objects if indeg[o] > 0)
        failures.append(Failure("DirectedCycle", tuple(cyc), f"objects {cyc} lie on a directed cycle"))
    return ValidationReport(not failures, tuple(failures))


def chains(S: Scwol, k: int) -> list[tuple[str, ...]]:
    """Length-k composable chains (a_1, ..., a_k) with i(a_j) = t(a_{j+1})."""
    if k < 1:
        raise ValueError("k must be positive")
    out: list[tuple[str, ...]] = [(m.id,) for m in S.morphisms]
    for _ in range(k - 1):
        nxt = []
        for chain in out:
            last = chain[-1]
            for b in S.into(S.src(last)):
                nxt.append(chain + (b,))
        out = nxt
    return sorted(out)


# -- morphisms of scwols -----------------------------------------------------

@dataclass(frozen=True)
class ScwolMorphism:
    source: Scwol
    target: Scwol
    on_objects: dict[str, str]
    on_morphisms: dict[str, str]

    def obj(self, o: str) -> str:
        return self.on_objects[o]

    def mor(self, m: str) -> str:
        return self.on_morphisms[m]


def validate_scwol_morphism(f: ScwolMorphism, require_nondegenerate: bool = False) -> ValidationReport:
    """Functoriality check; i-fiber bijectivity only when requested.

    The bijectivity of ``{a : i(a)=s} -> {a' : i(a')=f(s)}`` holds for base
    maps of morphisms of complexes of groups and for development projections,
    but star projections are honest functors that may miss outgoing morphisms
    of the ambient scwol, so it is opt-in here.
    """
    S, X = f.source, f.target
    failures: list[Failure] = []
    for o in S.objects:
        if f.on_objects.get(o) not in X.object_set:
            failures.append(Failure("ObjectMapIncomplete", (o,), f"object {o!r} unmapped or mapped outside target"))
    for m in S.morphisms:
        img = f.on_morphisms.get(m.id)
        if img not in X.mor_by_id:
            failures.append(Failure("MorphismMapIncomplete", (m.id,), f"morphism {m.id!r} unmapped"))
            continue
        if X.src(img) != f.on_objects.get(m.i) or X.tgt(img) != f.on_objects.get(m.t):
            failures.append(
                Failure("SourceTargetNotPreserved", (m.id,), f"i/t of {m.id!r} not preserved by the map")
            )
    if not failures:
        for (a, b), ab in sorted(S.comp.items()):
            fa, fb = f.on_morphisms[a], f.on_morphisms[b]
            fab = X.comp.get((fa, fb))
            if fab is None or fab != f.on_morphisms[ab]:
                failures.append(
                    Failure("CompositionNotPreserved", (a, b), f"f(ab) != f(a)f(b) at pair {(a, b)}")
                )
        if require_nondegenerate:
            failures.extend(nondegeneracy_failures(f))
    return ValidationReport(not failures, tuple(failures))


def nondegeneracy_failures(f: ScwolMorphism) -> list[Failure]:
    """Witnesses where f fails to biject i-fibers onto the target i-fibers."""
    S, X = f.source, f.target
    failures = []
    for o in S.objects:
        fiber = [f.on_morphisms[a] for a in S.out_of(o)]
        target_fiber = X.out_of(f.on_objects[o])
        if sorted(fiber) != sorted(target_fiber):
            failures.append(
                Failure(
                    "Degenerate",
                    (o,),
                    f"outgoing morphisms at {o!r} do not biject onto those at {f.on_objects[o]!r}",
                )
            )
    return failures


def is_nondegenerate(f: ScwolMorphism) -> bool:
    return not nondegeneracy_failures(f)


def identity_scwol_morphism(S: Scwol) -> ScwolMorphism:
    return ScwolMorphism(
        source=S,
        target=S,
        on_objects={o: o for o in S.objects},
        on_morphisms={m.id: m.id for m in S.morphisms},
    )


# -- links and stars ---------------------------------------------------------

UPPER_EDGE_SEP = "⋅"  # joins (c, d) ids in constructed scwols


def _pair_id(a: str, b: str) -> str:
    return f"{a}{UPPER_EDGE_SEP}{b}"


def upper_link(S: Scwol, gamma: str) -> Scwol:
    """Scwol on the morphisms into gamma; edges are composable pairs (c, d)."""
    if gamma not in S.object_set:
        raise UnknownObject(f"object {gamma!r} not in {S.label}")
    objs = sorted(S.into(gamma))
    mors = []
    parts = {}  # edge id -> (c, d)
    for c in objs:
        for d in S.into(S.src(c)):
            mid = _pair_id(c, d)
            mors.append(Morphism(mid, S.comp[(c, d)], c))
            parts[mid] = (c, d)
    comp = {}
    for u, v in itertools.product(mors, repeat=2):
        if u.i == v.t:  # u = (c,d), v = (cd,d'): composite (c, dd')
            c, d = parts[u.id]
            d2 = parts[v.id][1]
            comp[(u.id, v.id)] = _pair_id(c, S.comp[(d, d2)])
    return Scwol(objs, mors, comp, label=f"Lk_{gamma}")


def lower_link(S: Scwol, gamma: str) -> Scwol:
    """Scwol on the morphisms out of gamma; edges are composable pairs (a, b)."""
    if gamma not in S.object_set:
        raise UnknownObject(f"object {gamma!r} not in {S.label}")
    objs = sorted(S.out_of(gamma))
    mors = []
    parts = {}
    for b in objs:
        for a in S.out_of(S.tgt(b)):
            mid = _pair_id(a, b)
            mors.append(Morphism(mid, b, S.comp[(a, b)]))
            parts[mid] = (a, b)
    comp = {}
    for u, v in itertools.product(mors, repeat=2):
        if u.i == v.t:  # u = (a', ab), v = (a, b): composite (a'a, b)
            a1 = parts[u.id][0]
            a2, b2 = parts[v.id]
            comp[(u.id, v.id)] = _pair_id(S.comp[(a1, a2)], b2)
    return Scwol(objs, mors, comp, label=f"Lk^{gamma}")


class StarScwol(Scwol):
    """The scwol whose realization is the closed star of an object.

    Objects: upper-link objects (morphisms c into the center), the center,
    and lower-link objects (morphisms b out of the center).  Side tables
    record which family every object and morphism belongs to:

    - ``("lk_up", c, d)``   edges of the upper link
    - ``("gamma_c", c)``    center * c
    - ``("b_c", b, c)``     b * c
    - ``("b_gamma", b)``    b * center
    - ``("lk_dn", a, b)``   edges of the lower link
    """

    def __init__(self, base: Scwol, center: str, objects, morphisms, comp,
                 center_id: str, upper: dict[str, str], lower: dict[str, str],
                 mor_family: dict[str, tuple]):
        super().__init__(objects, morphisms, comp, label=f"{base.label}({center})")
        self.base = base
        self.center = center
        self.center_id = center_id
        self.upper = dict(upper)  # star object id -> base morphism id c
        self.lower = dict(lower)  # star object id -> base morphism id b
        self.mor_family = dict(mor_family)


def star_scwol(S: Scwol, gamma: str) -> StarScwol:
    """Build the star of gamma from its five morphism families."""
    if gamma not in S.object_set:
        raise UnknownObject(f"object {gamma!r} not in {S.label}")
    ups = sorted(S.into(gamma))
    downs = sorted(S.out_of(gamma))
    center_id = f"v:{gamma}"
    upper = {f"c:{c}": c for c in ups}
    lower = {f"b:{b}": b for b in downs}
    objects = sorted(upper) + [center_id] + sorted(lower)

    mors: list[Morphism] = []
    fam: dict[str, tuple] = {}

    def add(mid: str, i: str, t: str, family: tuple) -> None:
        mors.append(Morphism(mid, i, t))
        fam[mid] = family

    for c in ups:
        for d in S.into(S.src(c)):
            cd = S.comp[(c, d)]
            add(f"cd:{_pair_id(c, d)}", f"c:{cd}", f"c:{c}", ("lk_up", c, d))
    for c in ups:
        add(f"gc:{c}", f"c:{c}", center_id, ("gamma_c", c))
    for b in downs:
        for c in ups:
            add(f"bc:{_pair_id(b, c)}", f"c:{c}", f"b:{b}", ("b_c", b, c))
    for b in downs:
        add(f"bg:{b}", center_id, f"b:{b}", ("b_gamma", b))
    for b in downs:
        for a in S.out_of(S.tgt(b)):
            ab = S.comp[(a, b)]
            add(f"ab:{_pair_id(a, b)}", f"b:{b}", f"b:{ab}", ("lk_dn", a, b))

    by_id = {m.id: m for m in mors}
    comp: dict[tuple[str, str], str] = {}
    for u in mors:
        for v in mors:
            if u.i != v.t:
                continue
            fu, fv = fam[u.id], fam[v.id]
            if fu[0] == "lk_up" and fv[0] == "lk_up":
                c, d = fu[1], fu[2]
                d2 = fv[2]
                comp[(u.id, v.id)] = f"cd:{_pair_id(c, S.comp[(d, d2)])}"
            elif fu[0] == "gamma_c" and fv[0] == "lk_up":
                comp[(u.id, v.id)] = f"gc:{S.comp[(fv[1], fv[2])]}"
            elif fu[0] == "b_c" and fv[0] == "lk_up":
                comp[(u.id, v.id)] = f"bc:{_pair_id(fu[1], S.comp[(fv[1], fv[2])])}"
            elif fu[0] == "lk_dn" and fv[0] == "b_c":
                a, b = fu[1], fu[2]
                comp[(u.id, v.id)] = f"bc:{_pair_id(S.comp[(a, b)], fv[2])}"
            elif fu[0] == "b_gamma" and fv[0] == "gamma_c":
                comp[(u.id, v.id)] = f"bc:{_pair_id(fu[1], fv[1])}"
            elif fu[0] == "lk_dn" and fv[0] == "b_gamma":
                a, b = fu[1], fu[2]
                comp[(u.id, v.id)] = f"bg:{S.comp[(a, b)]}"
            elif fu[0] == "lk_dn" and fv[0] == "lk_dn":
                a1 = fu[1]
                a2, b2 = fv[1], fv[2]
                comp[(u.id, v.id)] = f"ab:{_pair_id(S.comp[(a1, a2)], b2)}"
            else:
                raise AssertionError(f"unclassified composable pair {u.id}, {v.id}")
    for key, val in comp.items():
        assert val in by_id, f"composite {val} missing for {key}"
    return StarScwol(S, gamma, objects, mors, comp, center_id, upper, lower, fam)


def star_projection(star: StarScwol) -> ScwolMorphism:
    """The functor from the star back into the ambient scwol."""
    S = star.base
    on_objects = {star.center_id: star.center}
    for oid, c in star.upper.items():
        on_objects[oid] = S.src(c)
    for oid, b in star.lower.items():
        on_objects[oid] = S.tgt(b)
    on_morphisms = {}
    for mid, fam in star.mor_family.items():
        kind = fam[0]
        if kind == "lk_up":
            on_morphisms[mid] = fam[2]  # (c, d) -> d
        elif kind == "gamma_c":
            on_morphisms[mid] = fam[1]  # gamma*c -> c
        elif kind == "b_c":
            on_morphisms[mid] = S.comp[(fam[1], fam[2])]  # b*c -> bc
        elif kind == "b_gamma":
            on_morphisms[mid] = fam[1]  # b*gamma -> b
        else:
            on_morphisms[mid] = fam[1]  # (a, b) -> a
    return ScwolMorphism(source=star, target=S, on_objects=on_objects, on_morphisms=on_morphisms)


# -- geometric realization ---------------------------------------------------

@dataclass(frozen=True)
class PolyhedralComplexExport:
    """Cells graded by dimension with face incidences, all deterministic."""

    cells: tuple[tuple[str, ...], ...]  # cells[k] = ids of k-cells
    faces: dict[str, tuple[str, ...]]  # cell id -> ids of its codim-1 faces
    vertices_of: dict[str, tuple[str, ...]]  # cell id -> vertex ids

    @property
    def f_vector(self) -> tuple[int, ...]:
        return tuple(len(level) for level in self.cells)


def geometric_realization(S: Scwol) -> PolyhedralComplexExport:
    levels: list[tuple[str, ...]] = [tuple(sorted(S.objects))]
    faces: dict[str, tuple[str, ...]] = {o: () for o in S.objects}
    vertices_of: dict[str, tuple[str, ...]] = {o: (o,) for o in S.objects}
    k = 1
    while True:
        level = chains(S, k)
        if not level:
            break
        ids = []
        for chain in level:
            cid = _pair_id(*chain) if len(chain) > 1 else chain[0]
            ids.append(cid)
            fs = []
            if k == 1:
                fs = [S.src(chain[0]), S.tgt(chain[0])]
            else:
                fs.append(_chain_id(chain[1:]))
                for j in range(k - 1):
                    merged = chain[: j] + (S.comp[(chain[j], chain[j + 1])],) + chain[j + 2 :]
                    fs.append(_chain_id(merged))
                fs.append(_chain_id(chain[:-1]))
            faces[cid] = tuple(fs)
            verts = [S.src(chain[-1])]
            for a in reversed(chain):
                verts.append(S.tgt(a))
            vertices_of[cid] = tuple(verts)
        levels.append(tuple(ids))
        k += 1
    return PolyhedralComplexExport(cells=tuple(levels), faces=faces, vertices_of=vertices_of)


def _chain_id(chain: tuple[str, ...]) -> str:
    return _pair_id(*chain) if len(chain) > 1 else chain[0]


# -- spanning trees ----------------------------------------------------------

def connected_components(S: Scwol) -> list[list[str]]:
    adj = defaultdict(set)
    for m in S.morphisms:
        adj[m.i].add(m.t)
        adj[m.t].add(m.i)
    seen = set()
    comps = []
    for o in sorted(S.objects):
        if o in seen:
            continue
        comp = []
        stack = [o]
        seen.add(o)
        while stack:
            x = stack.pop()
            comp.append(x)
            for n in sorted(adj[x]):
                if n not in seen:
                    seen.add(n)
                    stack.append(n)
        comps.append(sorted(comp))
    return comps


def maximal_tree(S: Scwol) -> tuple[str, ...]:
    """Spanning tree of the 1-skeleton via BFS from the least object id.

    Neighbors are explored along incident morphisms in ascending id order, so
    the tree is reproducible.
    """
    comps = connected_components(S)
    if len(comps) > 1:
        raise Disconnected(f"scwol has {len(comps)} components: {comps}")
    if not S.objects:
        return ()
    incident = defaultdict(list)
    for m in S.morphisms:
        incident[m.i].append(m.id)
        incident[m.t].append(m.id)
    for v in incident.values():
        v.sort()
    root = min(S.objects)
    visited = {root}
    tree = []
    queue = deque([root])
    while queue:
        x = queue.popleft()
        for mid in incident[x]:
            m = S.mor_by_id[mid]
            other = m.t if m.i == x else m.i
            if other not in visited:
                visited.add(other)
                tree.append(mid)
                queue.append(other)
    return tuple(tree)


def is_spanning_tree(S: Scwol, tree: Iterable[str]) -> bool:
    tree = list(tree)
    if len(tree) != len(S.objects) - 1:
        return False
    parent = {o: o for o in S.objects}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for mid in tree:
        m = S.mor_by_id.get(mid)
        if m is None:
            return False
        ra, rb = find(m.i), find(m.t)
        if ra == rb:
            return False
        parent[ra] = rb
    return True


# -- isomorphism search ------------------------------------------------------

def scwol_isomorphic(
    S1: Scwol, S2: Scwol, budget: int = DEFAULT_ISO_BUDGET
) -> Optional[ScwolMorphism]:
    """Backtracking isomorphism search with degree-profile pruning.

    Returns the first witness found under a fixed deterministic search order
    (objects of S1 most-constrained first, candidates of S2 by ascending id),
    or None when no isomorphism exists.  Raises SearchBudgetExceeded after
    expanding more than ``budget`` assignment nodes.
    """
    if len(S1.objects) != len(S2.objects) or len(S1.morphisms) != len(S2.morphisms):
        return None
    if len(S1.comp) != len(S2.comp):
        return None

    objs1 = sorted(S1.objects)
    objs2 = sorted(S2.objects)
    n = len(objs1)
    idx1 = {o: k for k, o in enumerate(objs1)}
    idx2 = {o: k for k, o in enumerate(objs2)}

    def arc_counts(S, idx):
        counts = defaultdict(int)
        for m in S.morphisms:
            counts[(idx[m.i], idx[m.t])] += 1
        return counts

    arcs1 = arc_counts(S1, idx1)
    arcs2 = arc_counts(S2, idx2)
    out1, in1 = _adj_lists(arcs1, n)
    out2, in2 = _adj_lists(arcs2, n)

    colors1 = _refine_colors(n, arcs1, out1, in1)
    colors2 = _refine_colors(n, arcs2, out2, in2)
    if sorted(colors1) != sorted(colors2):
        return None
    by_color2 = defaultdict(list)
    for k, c in enumerate(colors2):
        by_color2[c].append(k)

    # assignment order: rarest color first, then by id
    order = sorted(range(n), key=lambda k: (len(by_color2[colors1[k]]), objs1[k]))
    mapping = [-1] * n
    used = [False] * n
    nodes = 0

    def consistent(k1: int, k2: int) -> bool:
        for j1 in out1[k1]:
            j2 = mapping[j1]
            if j2 >= 0 and arcs1[(k1, j1)] != arcs2.get((k2, j2), 0):
                return False
        for j1 in in1[k1]:
            j2 = mapping[j1]
            if j2 >= 0 and arcs1[(j1, k1)] != arcs2.get((j2, k2), 0):
                return False
        # degree profile must match exactly
        return True

    def extend(pos: int) -> Optional[ScwolMorphism]:
        nonlocal nodes
        if pos == n:
            return _match_morphisms(S1, S2, {objs1[k]: objs2[mapping[k]] for k in range(n)})
        k1 = order[pos]
        for k2 in by_color2[colors1[k1]]:
            if used[k2]:
                continue
            nodes += 1
            if nodes > budget:
                raise SearchBudgetExceeded(f"isomorphism search exceeded {budget} nodes")
            if not consistent(k1, k2):
                continue
            mapping[k1] = k2
            used[k2] = True
            found = extend(pos + 1)
            if found is not None:
                return found
            mapping[k1] = -1
            used[k2] = False
        return None

    return extend(0)


def _adj_lists(arcs, n):
    out = [[] for _ in range(n)]
    into = [[] for _ in range(n)]
    for (a, b) in arcs:
        out[a].append(b)
        into[b].append(a)
    return out, into


def _refine_colors(n, arcs, out, into, rounds: int = 3):
    colors = [0] * n
    for _ in range(rounds):
        sigs = []
        for k in range(n):
            outs = tuple(sorted((colors[j], arcs[(k, j)]) for j in out[k]))
            ins = tuple(sorted((colors[j], arcs[(j, k)]) for j in into[k]))
            sigs.append((colors[k], outs, ins))
        canon = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [canon[s] for s in sigs]
        if new == colors:
            break
        colors = new
    return colors


def _match_morphisms(S1: Scwol, S2: Scwol, obj_map: dict[str, str]) -> Optional[ScwolMorphism]:
    """Extend an object bijection to morphisms, backtracking over parallels."""
    blocks1 = defaultdict(list)
    blocks2 = defaultdict(list)
    for m in S1.morphisms:
        blocks1[(obj_map[m.i], obj_map[m.t])].append(m.id)
    for m in S2.morphisms:
        blocks2[(m.i, m.t)].append(m.id)
    if set(blocks1) != set(blocks2):
        return None
    mor_map: dict[str, str] = {}
    block_list = []
    for key in sorted(blocks1):
        b1, b2 = sorted(blocks1[key]), sorted(blocks2[key])
        if len(b1) != len(b2):
            return None
        if len(b1) == 1:
            mor_map[b1[0]] = b2[0]
        else:
            block_list.append((b1, b2))

    def check(final: dict[str, str]) -> bool:
        for (a, b), ab in S1.comp.items():
            img = S2.comp.get((final[a], final[b]))
            if img is None or img != final[ab]:
                return False
        return True

    def assign(i: int) -> Optional[dict[str, str]]:
        if i == len(block_list):
            return dict(mor_map) if check(mor_map) else None
        b1, b2 = block_list[i]
        for perm in itertools.permutations(b2):
            for x, y in zip(b1, perm):
                mor_map[x] = y
            found = assign(i + 1)
            if found is not None:
                return found
            for x in b1:
                del mor_map[x]
        return None

    final = assign(0)
    if final is None:
        return None
    return ScwolMorphism(source=S1, target=S2, on_objects=dict(obj_map), on_morphisms=final)


# -- constructions from posets ----------------------------------------------

def scwol_from_poset(strictly_greater: dict[str, set[str]], label: str = "Y") -> Scwol:
    """Scwol of a strict partial order: one morphism x -> y per relation x > y.

    The input must be transitively closed; composites are forced by
    uniqueness of parallel morphisms.
    """
    objects = sorted(strictly_greater)
    mors = []
    for x in objects:
        for y in sorted(strictly_greater[x]):
            mors.append(Morphism(f"{x}>{y}", x, y))
    comp = {}
    for x in objects:
        for y in sorted(strictly_greater[x]):
            for z in sorted(strictly_greater[y]):
                # a: y > z after b: x > y gives x > z
                comp[(f"{y}>{z}", f"{x}>{y}")] = f"{x}>{z}"
    return Scwol(objects, mors, comp, label=label)


def scwol_from_simplicial_complex(facets: Iterable[Iterable[str]], label: str = "K") -> Scwol:
    """Face poset of a simplicial complex, bigger faces mapping to smaller."""
    faces: set[frozenset[str]] = set()
    for facet in facets:
        fs = frozenset(facet)
        for r in range(1, len(fs) + 1):
            for sub in itertools.combinations(sorted(fs), r):
                faces.add(frozenset(sub))
    name = {f: ".".join(sorted(f)) for f in faces}
    greater = {name[f]: set() for f in faces}
    for f in faces:
        for g in faces:
            if g < f:
                greater[name[f]].add(name[g])
    return scwol_from_poset(greater, label=label)
