"""Verification suites: each returns a list of CheckRecords."""

from __future__ import annotations

import random
from fractions import Fraction

from . import general as gen
from . import legendre as leg
from . import weierstrass as wei
from .exact.orbit import EscapeCertified, HitFixed, PreperiodicTail, orbit
from .exact.poly import poly_gcd
from .exact.ratmap import INFINITY, ZERO
from .exact.text import parse_poly
from .padic import INF, rational_roots, root_valuations, val_of
from .reports import record

DEFAULT_LEVEL_CAP = 5
F = Fraction


def _levels(top: int, cap: int) -> range:
    return range(1, min(top, cap) + 1)


# ---------------------------------------------------------------------------
# weierstrass


def suite_coprime(cap: int = DEFAULT_LEVEL_CAP) -> list:
    out = []
    for a in (F(1), F(-1), F(2), F(-2), F(3), F(5), F(1, 3)):
        for n in _levels(5, cap):
            tp = wei.torsion_pair(a, n)
            D = wei.torsion_degree(n)
            inputs = {"a": a, "n": n}
            out.append(record(wei.FAMILY, "coprime-gcd", inputs, "1", str(poly_gcd(tp.A, tp.B))))
            out.append(record(wei.FAMILY, "coprime-degree", inputs, [D, D], [tp.A.degree, tp.B.degree]))
            out.append(record(wei.FAMILY, "print-parse-roundtrip", inputs, True,
                              parse_poly(str(tp.A)) == tp.A and parse_poly(str(tp.B)) == tp.B))
            if n <= 3:
                nxt = wei.torsion_pair(a, n + 1)
                out.append(record(wei.FAMILY, "divisibility", inputs, True,
                                  tp.A.divides(nxt.A) and tp.B.divides(nxt.B)))
    return out


def _root_checks(a: Fraction, n: int) -> list:
    """Rational roots of A_n, B_n: orbit reaches 0 / inf within n steps, the
    trichotomy class matches, and the orbit holds no other rational."""
    out = []
    tp = wei.torsion_pair(a, n)
    for which, poly, target, variant in (("A", tp.A, ZERO, "HitsZero"), ("B", tp.B, INFINITY, "HitsInfinity")):
        for lam, _ in rational_roots(poly):
            inputs = {"a": a, "n": n, "poly": which, "lambda": lam}
            rec = orbit(wei.f_lambda(lam), a, n, stop_points=(ZERO, INFINITY))
            st = rec.status
            hit = isinstance(st, HitFixed) and rec.points[-1] == target and st.step <= n
            out.append(record(wei.FAMILY, "root-orbit", inputs, f"reaches {target}", str(st), hit))
            cls = wei.classify_parameter(a, lam)
            out.append(record(wei.FAMILY, "root-class", inputs, variant, cls.variant))
            others = [p for p in rec.points if p not in (ZERO, INFINITY) and p.x != a]
            out.append(record(wei.FAMILY, "rational-orbit", inputs, [], others))
    return out


def suite_trichotomy(cap: int = DEFAULT_LEVEL_CAP) -> list:
    out = []
    for a in (F(1), F(2), F(1, 3)):
        for n in _levels(4, cap):
            out += wei.verify_spectrum(a, n).records()
    for a in (F(1), F(2)):
        for n in _levels(3, cap):
            out += _root_checks(a, n)
    return out


def suite_periodicity(cap: int = DEFAULT_LEVEL_CAP) -> list:
    out = []
    for a in (F(1), F(2)):
        target = 3 * val_of(a, 2) - 2
        for n in _levels(3, cap):
            for m in range(n):
                P_ = wei.periodicity_poly(a, n, m)
                spec = root_valuations(P_, 2)
                inputs = {"a": a, "n": n, "m": m}
                out.append(record(wei.FAMILY, "periodicity-spectrum", inputs,
                                  [[target, P_.degree]], [[v, k] for v, k in spec.entries]))
                for lam, _ in rational_roots(P_):
                    rec = wei.weierstrass_orbit(lam, a, max_steps=n + 1)
                    others = [p for p in rec.points if p.is_infinity or p.x not in (a,)]
                    out.append(record(wei.FAMILY, "periodicity-root",
                                      dict(inputs, **{"lambda": lam}),
                                      {"class": "Generic", "status": "PreperiodicTail", "others": []},
                                      {"class": wei.classify_parameter(a, lam).variant,
                                       "status": type(rec.status).__name__,
                                       "others": [str(p) for p in others]}))
    roots = [r for r, _ in rational_roots(wei.periodicity_poly(1, 1, 0))]
    out.append(record(wei.FAMILY, "periodicity-fixed-root", {"a": 1, "n": 1, "m": 0}, [F(-1, 4)], roots))
    for n in (1, 2):
        res = wei.periodic_units_check(n)
        out.append(record(wei.FAMILY, "periodic-units", {"n": n}, True, res["ok"]))
    return out


def suite_modp(cap: int = DEFAULT_LEVEL_CAP) -> list:
    out = []
    for n in _levels(5, cap):
        for a, p, b in ((7, 7, None), (3, 3, 1), (1, 3, -1), (-1, 3, 1)):
            out += wei.modp_closed_form_check(a, p, n, b).records()
    return out


def suite_intersections(cap: int = DEFAULT_LEVEL_CAP) -> list:
    out = []
    for n in _levels(4, cap):
        for a, b in ((1, 3), (1, -1), (2, 3), (1, 5)):
            rep = wei.intersection_report(a, b, n)
            out.append(record(wei.FAMILY, "intersection-gcds", {"a": a, "b": b, "n": n},
                              {"AA": "1", "BB": "1", "AB": "1", "BA": "1"},
                              {k: str(v) for k, v in rep.gcds.items()}))
        rep = wei.intersection_report(1, -2, n)
        out.append(record(wei.FAMILY, "intersection-gcds", {"a": 1, "b": -2, "n": n},
                          {"AA": "1", "BB": "1", "AB": "1", "BA": "t + 1"},
                          {k: str(v) for k, v in rep.gcds.items()}))
        out.append(record(wei.FAMILY, "intersection-common", {"a": 1, "b": -2, "n": n},
                          {"parameters": ["-1"], "orbits": [["-1", "HitFixed(inf,1)", "HitFixed(0,1)", True]]},
                          {"parameters": [str(x) for x in rep.common_parameters],
                           "orbits": [[str(l), sa, sb, ok] for l, sa, sb, ok in rep.verified]}))
    return out


def suite_local() -> list:
    return [r for r in wei.identity_suite() if r.check.startswith("local-")]


# ---------------------------------------------------------------------------
# legendre


def suite_legendre(cap: int = DEFAULT_LEVEL_CAP) -> list:
    out = []
    for n in _levels(3, cap):
        if n >= 2:
            rep = leg.t2_claim_verify(n)
            out += rep.records()
            out.append(record(leg.FAMILY, "claim-rational-roots", {"seed": 2, "n": n},
                              True, {F(4), F(4, 3)} <= set(rep.rational_roots)))
    for n in _levels(2, cap):
        if n >= 2:
            out += leg.half_claim_verify(n).records()
    for a, lam, expect in ((F(2), F(1, 2), True), (F(3), F(1, 4), True), (F(2), F(4), False)):
        cert = leg.stoll_escape_check(a, lam)
        out.append(record(leg.FAMILY, "stoll-example", {"alpha": a, "lambda": lam}, expect, cert is not None))
    for seed in (F(2), F(3), F(1, 2)):
        for n in _levels(3, cap):
            tp = leg.legendre_torsion_pair(seed, n)
            B = leg.strip_roots(tp.B, (0, 1))
            for lam, _ in rational_roots(B) if B.degree >= 1 else ():
                out.append(record(leg.FAMILY, "hits-infinity", {"seed": seed, "n": n, "lambda": lam},
                                  True, leg.hits_infinity_within(lam, seed, n)))
    for seed in (F(2), F(3), F(1, 3)):
        out += leg.stoll_root_check(seed, min(3, cap))
    for n in _levels(2, cap):
        tp = leg.legendre_torsion_pair(2, n)
        A, B = leg.raw_iterate(2, n)
        out.append(record(leg.FAMILY, "cancellation", {"seed": 2, "n": n}, True,
                          A == tp.A * tp.cancelled and B == tp.B * tp.cancelled))
    orb = leg.legendre_orbit(4, 2)
    out.append(record(leg.FAMILY, "orbit-example", {"seed": 2, "lambda": 4},
                      {"points": ["2", "0", "inf"], "status": "PreperiodicTail(2,1)"},
                      {"points": [str(p) for p in orb.points], "status": str(orb.status)}))
    out += leg.two_empty_grid()
    return out


# ---------------------------------------------------------------------------
# identities


def suite_identities(cap: int = DEFAULT_LEVEL_CAP) -> list:
    out = [r for r in wei.identity_suite() if r.check.startswith("identity-")]
    for n in (1, 2):
        out.append(record(leg.FAMILY, "reciprocal-identity", {"n": n}, True, leg.reciprocal_identity_check(n)))
    left, right = leg.reciprocal_spot_check()
    out.append(record(leg.FAMILY, "reciprocal-spot", {"lambda": 4, "x": 2}, [0, 0], [left, right]))
    out += gen.conjugation_examples()
    return out


# ---------------------------------------------------------------------------
# general family


GENERAL_CASES = ((2, 3, F(1)), (3, 2, F(1)), (2, 5, F(2)))


def suite_general(cap: int = DEFAULT_LEVEL_CAP) -> list:
    out = []
    for d, p, a in GENERAL_CASES:
        params = gen.GenFamilyParams(d, p)
        for n in _levels(3, cap):
            out += gen.shifted_spectrum_check(params, a, n).records()
        for name, f in gen.gen_torsion_polys(params, a, min(3, cap)):
            if not name.startswith("A_"):
                continue
            for lam, _ in rational_roots(f):
                rec = orbit(gen.gen_map(params, lam), a, 3, stop_points=(INFINITY,))
                reached = ZERO in rec.points
                v = val_of(a**d + lam, p)
                out.append(record(gen.FAMILY, "root-orbit", {"a": a, "poly": name, "lambda": lam},
                                  {"reaches_zero": True, "shift_small": True},
                                  {"reaches_zero": reached, "shift_small": v is INF or v >= 1}, d=d, p=p))
    for d in (2, 3, 4):
        params = gen.GenFamilyParams(d, 2)
        degs = [gen.gen_torsion_pair(params, 1, n).A.degree for n in _levels(4, cap)]
        out.append(record(gen.FAMILY, "degree-law", {"a": 1}, [d ** (n - 1) for n in _levels(4, cap)],
                          degs, d=d, p=2))
    rep = gen.disjointness_check(gen.GenFamilyParams(2, 5), 1, 2, min(2, cap))
    out.append(record(gen.FAMILY, "disjointness", {"a": 1, "b": 2, "n": rep.n}, True, rep.passed, d=2, p=5))
    rep = gen.disjointness_check(gen.GenFamilyParams(3, 2), 1, F(1, 2), min(2, cap))
    out.append(record(gen.FAMILY, "disjointness", {"a": 1, "b": F(1, 2), "n": rep.n}, True, rep.passed, d=3, p=2))
    rep = gen.disjointness_check(gen.GenFamilyParams(2, 3), 1, 2, min(2, cap))
    out.append(record(gen.FAMILY, "disjointness-refusal", {"a": 1, "b": 2, "n": rep.n},
                      {"refused": True, "reason": "residue equality: rho(a^d) = rho(b^d) = 1"},
                      {"refused": rep.refused, "reason": rep.reason}, d=2, p=3))
    for p in (3, 5, 7):
        for lam in (F(1), F(2), F(p - 1), F(-1, 2)):
            out.append(record(gen.FAMILY, "fixed-point-multiplier", {"lambda": lam},
                              F(2 - p, p), gen.fixed_point_multiplier(p, lam), d=2, p=p))
    return out


# ---------------------------------------------------------------------------
# certificate soundness on random pairs


# heights grow by a factor of d per step; six steps already reach ~4000 bits
CERT_STEPS = 6


def _rand_rat(rng: random.Random, num: int = 12, den: int = 8) -> Fraction:
    return F(rng.randint(-num, num), rng.randint(1, den))


def _evaluations_nonzero(polys, lam) -> bool:
    return all(f(lam) != 0 for f in polys)


def _wei_polys(a, level: int = 3) -> list:
    out = []
    pairs = [wei.torsion_pair(a, k) for k in range(level + 1)]
    for k in range(1, level + 1):
        out += [pairs[k].A, pairs[k].B]
        for m in range(k):
            out.append(pairs[k].A * pairs[m].B - pairs[m].A * pairs[k].B)
    return out


def _leg_polys(a, level: int = 3) -> list:
    out = []
    pairs = [leg.legendre_torsion_pair(a, k) for k in range(level + 1)]
    for k in range(1, level + 1):
        out += [pairs[k].A, pairs[k].B]
        for m in range(k):
            out.append(pairs[k].A * pairs[m].B - pairs[m].A * pairs[k].B)
    return out


def _gen_polys(params, a, level: int = 3) -> list:
    out = []
    pairs = [gen.gen_torsion_pair(params, a, k) for k in range(level + 1)]
    for k in range(1, level + 1):
        out += [pairs[k].A, pairs[k].B]
        for m in range(k):
            out.append(pairs[k].A * pairs[m].B - pairs[m].A * pairs[k].B)
    return out


def _periodic_relation(polys_pairs, st: PreperiodicTail, lam) -> bool:
    """A PreperiodicTail(tail, period) orbit puts lam on A_n B_m - A_m B_n, n = tail + period, m = tail."""
    n, m = st.tail + st.period, st.tail
    An, Bn = polys_pairs[n]
    Am, Bm = polys_pairs[m]
    return (An * Bm - Am * Bn)(lam) == 0


def _unresolved(family, inputs, st, **extra):
    # no certificate and no repeat: nothing to check, logged for coverage
    return record(family, "unresolved", inputs, "Unresolved", type(st).__name__, **extra)


def weierstrass_pair_check(a: Fraction, lam: Fraction) -> list:
    out = []
    rec = wei.weierstrass_orbit(lam, a, max_steps=CERT_STEPS)
    st = rec.status
    inputs = {"seed": a, "lambda": lam}
    if isinstance(st, EscapeCertified):
        out.append(record(wei.FAMILY, "certificate-sound", inputs, True,
                          _evaluations_nonzero(_wei_polys(a), lam)))
    elif isinstance(st, (PreperiodicTail, HitFixed)):
        cls = wei.classify_parameter(a, lam)
        out.append(record(wei.FAMILY, "preperiodic-classified", inputs, "not Impossible", cls.variant,
                          cls.variant != "Impossible"))
    else:
        out.append(_unresolved(wei.FAMILY, inputs, st))
    return out


def legendre_pair_check(a: Fraction, lam: Fraction) -> list:
    rec = leg.legendre_orbit(lam, a, max_steps=CERT_STEPS)
    st = rec.status
    inputs = {"seed": a, "lambda": lam}
    if isinstance(st, EscapeCertified):
        return [record(leg.FAMILY, "certificate-sound", inputs, True, _evaluations_nonzero(_leg_polys(a), lam))]
    if isinstance(st, PreperiodicTail):
        top = st.tail + st.period
        pairs = [(p.A, p.B) for p in (leg.legendre_torsion_pair(a, k) for k in range(top + 1))]
        return [record(leg.FAMILY, "preperiodic-relation", inputs, True, _periodic_relation(pairs, st, lam))]
    return [_unresolved(leg.FAMILY, inputs, st)]


def general_pair_check(params, a: Fraction, lam: Fraction) -> list:
    rec = gen.gen_orbit(params, lam, a, max_steps=CERT_STEPS)
    st = rec.status
    inputs = {"seed": a, "lambda": lam}
    extra = {"d": params.d, "p": params.p}
    if isinstance(st, EscapeCertified):
        return [record(gen.FAMILY, "certificate-sound", inputs, True,
                       _evaluations_nonzero(_gen_polys(params, a), lam), **extra)]
    if isinstance(st, HitFixed):
        # only infinity is a stop point; it is reached through 0
        return [record(gen.FAMILY, "reaches-infinity-via-zero", inputs, True, ZERO in rec.points, **extra)]
    if isinstance(st, PreperiodicTail):
        top = st.tail + st.period
        pairs = [(p.A, p.B) for p in (gen.gen_torsion_pair(params, a, k) for k in range(top + 1))]
        return [record(gen.FAMILY, "preperiodic-relation", inputs, True,
                       _periodic_relation(pairs, st, lam), **extra)]
    return [_unresolved(gen.FAMILY, inputs, st, **extra)]


def suite_certificates(count: int = 200, seed: int = 20240601) -> list:
    rng = random.Random(seed)
    out = []
    seen = set()
    while len(seen) < count:
        a = _rand_rat(rng)
        if a == 0:
            continue
        if rng.random() < 0.25:
            lam = rng.choice((-a**3, a**3 / 8, -a**3 / 4))
        else:
            lam = _rand_rat(rng)
        if lam == 0 or (a, lam) in seen:
            continue
        seen.add((a, lam))
        out += weierstrass_pair_check(a, lam)
    seen = set()
    while len(seen) < count:
        a, lam = _rand_rat(rng), _rand_rat(rng)
        if rng.random() < 0.2:
            lam = rng.choice((a, F(4), F(4, 3))) if a == 2 else a
        if a in (0, 1) or lam in (0, 1) or (a, lam) in seen:
            continue
        seen.add((a, lam))
        out += legendre_pair_check(a, lam)
    cases = [gen.GenFamilyParams(d, p) for d, p, _ in GENERAL_CASES]
    seen = set()
    while len(seen) < count:
        params = cases[len(seen) % len(cases)]
        a, lam = _rand_rat(rng), _rand_rat(rng)
        if rng.random() < 0.2:
            lam = -a**params.d
        if a == 0 or (params, a, lam) in seen:
            continue
        seen.add((params, a, lam))
        out += general_pair_check(params, a, lam)
    return out


SUITES = {
    "coprime": suite_coprime,
    "trichotomy": suite_trichotomy,
    "periodicity": suite_periodicity,
    "modp": suite_modp,
    "intersections": suite_intersections,
    "legendre": suite_legendre,
    "identities": suite_identities,
    "local": lambda cap=DEFAULT_LEVEL_CAP: suite_local(),
    "general": suite_general,
    "certificates": lambda cap=DEFAULT_LEVEL_CAP: suite_certificates(),
}


def run_suite(name: str, cap: int = DEFAULT_LEVEL_CAP) -> list:
    if name == "all":
        out = []
        for key in SUITES:
            out += SUITES[key](cap)
        return out
    return SUITES[name](cap)
