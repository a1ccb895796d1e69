"""Finite-depth lamination approximations by leaf pullback.

Depth 1 reads the equivalence classes off the chord diagrams at the critical
vertices of the pullback curve; deeper relations are generated by lifting
classes through the sectors of the certified portrait, keeping everything
from lower depths (the relation is a join over levels).  Within one color
every output is checked planar.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .circle import Angle, Leaf, q_preimages, sets_linked
from .errors import LaminationError
from .mapspec import BLACK, WHITE, CriticalVertex, MapSpec, TileComplex, chord_diagram, critical_vertices, faces
from .parameterize import PullbackParameters
from .portraits import CriticalPortrait, Sectors, sectors

JOIN = "join"

AngleSet = tuple[Angle, ...]


def _canon(sets: Iterable[Iterable[Angle]]) -> tuple[AngleSet, ...]:
    uniq = {tuple(sorted(set(s))) for s in sets}
    return tuple(sorted(uniq, key=lambda s: (s[0], len(s), s)))


@dataclass(frozen=True)
class AngleClasses:
    depth: int
    color: str
    classes: tuple[AngleSet, ...]
    sides: Optional[tuple[tuple[str, ...], ...]] = None  # per class, join only

    def angle_sets(self) -> list[set[Angle]]:
        return [set(c) for c in self.classes]

    def all_angles(self) -> set[Angle]:
        return {a for c in self.classes for a in c}


@dataclass(frozen=True)
class LeafSet:
    leaves: tuple[Leaf, ...]

    @classmethod
    def from_classes(cls, classes: AngleClasses) -> "LeafSet":
        leaves = set()
        for c in classes.classes:
            m = len(c)
            if m < 2:
                continue
            if m == 2:
                leaves.add(Leaf(c[0], c[1]))
                continue
            for i in range(m):
                leaves.add(Leaf(c[i], c[(i + 1) % m]))
        return cls(leaves=tuple(sorted(leaves, key=lambda l: (l.a, l.b))))

    def __len__(self) -> int:
        return len(self.leaves)


def check_planar(classes: Iterable[AngleSet]) -> Optional[tuple[AngleSet, AngleSet]]:
    """First pair of classes with crossing hulls, or None."""
    cl = list(classes)
    for i in range(len(cl)):
        for j in range(i + 1, len(cl)):
            if sets_linked(cl[i], cl[j]):
                return (cl[i], cl[j])
    return None


# ---------------------------------------------------------------------------
# depth 1: connection classes at critical vertices

def depth1(
    spec: MapSpec,
    pullback: PullbackParameters,
    criticals: Optional[list[CriticalVertex]] = None,
    tiles1: Optional[TileComplex] = None,
) -> tuple[AngleClasses, AngleClasses]:
    """White and black depth-1 classes from connections at critical vertices.

    Regular self-intersections of the pullback curve only replay the curve's
    own depth-0 identifications; the new identifications, the ones generating
    the portraits, happen where the map folds.
    """
    if tiles1 is None:
        tiles1 = faces(spec, 1)
    if criticals is None:
        criticals = critical_vertices(spec, tiles1)
    out: dict[str, list[set[Angle]]] = {WHITE: [], BLACK: []}
    for cv in criticals:
        diagram = chord_diagram(spec, cv.vertex, 1, tiles1.level_map)
        for region in diagram.regions:
            if len(region.passages) < 2:
                continue
            angles = {pullback.s[diagram.passages[p].visit] for p in region.passages}
            out[region.color].append(angles)
    white = AngleClasses(depth=1, color=WHITE, classes=_canon(out[WHITE]))
    black = AngleClasses(depth=1, color=BLACK, classes=_canon(out[BLACK]))
    return white, black


# ---------------------------------------------------------------------------
# pullback of classes through portrait sectors

def _in_closed_sector(x: Angle, sec: Sectors, label: int) -> bool:
    for lo, hi in sec.arcs_of(label):
        span = (hi.value - lo.value) % 1
        off = (x.value - lo.value) % 1
        if off <= span:
            return True
    return False


def _merge_overlapping(sets: list[set[Angle]]) -> list[set[Angle]]:
    merged: list[set[Angle]] = []
    for s in sets:
        bucket = set(s)
        keep = []
        for m in merged:
            if m & bucket:
                bucket |= m
            else:
                keep.append(m)
        keep.append(bucket)
        merged = keep
    return merged


def pullback_step(
    classes: AngleClasses, portrait: CriticalPortrait, d: int
) -> AngleClasses:
    """One inductive step: depth-(n+1) classes from depth-n classes.

    New classes are the sector-consistent lifts: preimages of a class that
    lie in a common closed sector, plus preimage sets of single angles of
    classes when a closed sector holds more than one preimage.  Lifts that
    meet (only possible through sector boundary angles) merge.  Lower-depth
    classes are retained, and the output must stay planar.
    """
    if classes.color not in (portrait.color, JOIN):
        raise LaminationError(
            f"cannot lift {classes.color} classes through a {portrait.color} portrait"
        )
    sec = sectors(portrait, d)
    candidates: list[set[Angle]] = []
    for cls in classes.classes:
        preimages = {u: q_preimages(u, d) for u in cls}
        for label in range(sec.count):
            lift = {
                x
                for u in cls
                for x in preimages[u]
                if _in_closed_sector(x, sec, label)
            }
            if len(lift) >= 2:
                candidates.append(lift)
        # preimage sets of single angles of a class, when a sector holds several
        for u in cls:
            for label in range(sec.count):
                hits = {x for x in preimages[u] if _in_closed_sector(x, sec, label)}
                if len(hits) >= 2:
                    candidates.append(hits)

    candidates.extend(set(c) for c in classes.classes)
    merged = _merge_overlapping(candidates)
    out = _canon(merged)

    crossing = check_planar(out)
    if crossing is not None:
        a, b = crossing
        raise LaminationError(
            "pullback produced crossing: "
            f"{{{', '.join(map(str, a))}}} links {{{', '.join(map(str, b))}}}"
        )
    return AngleClasses(depth=classes.depth + 1, color=classes.color, classes=out)


def pullback_to_depth(
    depth1_classes: AngleClasses, portrait: CriticalPortrait, d: int, depth: int
) -> AngleClasses:
    cur = depth1_classes
    while cur.depth < depth:
        cur = pullback_step(cur, portrait, d)
    return cur


# ---------------------------------------------------------------------------
# join and the Moore condition

def join(white: AngleClasses, black: AngleClasses) -> AngleClasses:
    """Smallest common refinement: merge classes across colors through shared
    angles (union-find via repeated merging)."""
    if white.depth != black.depth:
        raise LaminationError(
            f"join needs equal depths, got {white.depth} and {black.depth}"
        )
    tagged: list[tuple[set[Angle], set[str]]] = [
        (set(c), {WHITE}) for c in white.classes
    ] + [(set(c), {BLACK}) for c in black.classes]

    merged: list[tuple[set[Angle], set[str]]] = []
    for angles, side in tagged:
        bucket, bside = set(angles), set(side)
        keep = []
        for m_angles, m_side in merged:
            if m_angles & bucket:
                bucket |= m_angles
                bside |= m_side
            else:
                keep.append((m_angles, m_side))
        keep.append((bucket, bside))
        merged = keep

    order = sorted(merged, key=lambda pair: (min(pair[0]), len(pair[0])))
    return AngleClasses(
        depth=white.depth,
        color=JOIN,
        classes=tuple(tuple(sorted(a)) for a, _ in order),
        sides=tuple(tuple(sorted(s)) for _, s in order),
    )


def moore_check(joined: AngleClasses) -> dict:
    """Flag linked class hulls: same-side links are violations of the finite
    Moore criterion, links across the two sides are expected and reported as
    informational."""
    sides = joined.sides or tuple((joined.color,) for _ in joined.classes)
    violations = []
    informational = []
    cl = joined.classes
    for i in range(len(cl)):
        for j in range(i + 1, len(cl)):
            if not sets_linked(cl[i], cl[j]):
                continue
            entry = {
                "a": [str(x) for x in cl[i]],
                "b": [str(x) for x in cl[j]],
                "sides": sorted(set(sides[i]) | set(sides[j])),
            }
            same_side = sides[i] == sides[j] and len(sides[i]) == 1
            if same_side:
                violations.append(entry)
            else:
                entry["note"] = "two-sided crossing (informational)"
                informational.append(entry)
    return {
        "passed": not violations,
        "violations": violations,
        "informational": informational,
    }
