"""Exact forward orbits on P^1(Q) with cycle detection and stop conditions."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional

from ..errors import DomainError
from .ratmap import ProjPoint, RatMap, proj_eval


@dataclass(frozen=True)
class Certificate:
    """Finite evidence that a point is not preperiodic."""

    kind: str
    detail: str = ""


@dataclass(frozen=True)
class PreperiodicTail:
    tail: int
    period: int

    def __str__(self):
        return f"PreperiodicTail({self.tail},{self.period})"


@dataclass(frozen=True)
class HitFixed:
    which: str  # "0", "inf" or "other"
    step: int

    def __str__(self):
        return f"HitFixed({self.which},{self.step})"


@dataclass(frozen=True)
class EscapeCertified:
    kind: str
    step: int
    detail: str = ""

    def __str__(self):
        return f"EscapeCertified({self.kind},{self.step})"


@dataclass(frozen=True)
class Unresolved:
    max_steps: int
    reason: str = "max-steps"

    def __str__(self):
        return f"Unresolved({self.max_steps})"


@dataclass(frozen=True)
class OrbitRecord:
    """Orbit of ``seed``; ``points`` holds the distinct points visited in order.

    For ``PreperiodicTail(tail, period)`` the image of the last point is
    ``points[tail]``, so ``len(points) == tail + period``.
    """

    seed: ProjPoint
    points: tuple
    status: object
    certificate: Optional[Certificate] = field(default=None, compare=False)

    def to_dict(self) -> dict:
        st = self.status
        status = {"kind": type(st).__name__}
        if isinstance(st, PreperiodicTail):
            status.update(tail=st.tail, period=st.period)
        elif isinstance(st, HitFixed):
            status.update(which=st.which, step=st.step)
        elif isinstance(st, EscapeCertified):
            status.update(certificate=st.kind, step=st.step, detail=st.detail)
        else:
            status.update(max_steps=st.max_steps, reason=st.reason)
        return {
            "seed": str(self.seed),
            "points": [str(p) for p in self.points],
            "status": status,
            "status_text": str(st),
        }


EscapePredicate = Callable[[ProjPoint], Optional[Certificate]]


def _height_bits(p: ProjPoint) -> int:
    return p.x.numerator.bit_length() + p.x.denominator.bit_length()


def orbit(
    f: RatMap,
    seed,
    max_steps: int,
    stop_points: Iterable = (),
    escape: Optional[EscapePredicate] = None,
    max_height_bits: int = 1 << 20,
) -> OrbitRecord:
    """Iterate ``f`` from ``seed`` exactly.

    At each visited point, in this order: a repeat ends the orbit as
    PreperiodicTail; a member of ``stop_points`` (which must be fixed by
    ``f``) ends it as HitFixed; ``escape`` returning a certificate ends it as
    EscapeCertified.  After ``max_steps`` applications of ``f``, or when the
    coordinates outgrow ``max_height_bits``, the orbit is Unresolved.
    """
    if max_steps < 1:
        raise DomainError("max_steps must be >= 1")
    seed = ProjPoint.coerce(seed)
    stops = {}
    for s in stop_points:
        s = ProjPoint.coerce(s)
        if proj_eval(f, s) != s:
            raise DomainError(f"stop point {s} is not fixed by the map")
        stops[s] = "inf" if s.is_infinity else ("0" if s.x == 0 else "other")

    points: list[ProjPoint] = []
    index: dict[ProjPoint, int] = {}
    pt = seed
    for step in range(max_steps + 1):
        if pt in index:
            tail = index[pt]
            return OrbitRecord(seed, tuple(points), PreperiodicTail(tail, step - tail))
        index[pt] = step
        points.append(pt)
        if pt in stops:
            return OrbitRecord(seed, tuple(points), HitFixed(stops[pt], step))
        if escape is not None:
            cert = escape(pt)
            if cert is not None:
                return OrbitRecord(
                    seed, tuple(points), EscapeCertified(cert.kind, step, cert.detail), cert
                )
        if step == max_steps:
            break
        if _height_bits(pt) > max_height_bits:
            return OrbitRecord(seed, tuple(points), Unresolved(step, "height-cap"))
        pt = proj_eval(f, pt)
    return OrbitRecord(seed, tuple(points), Unresolved(max_steps))
