"""Certificates: canonical JSON transcripts of a pipeline run.

A certificate records its input, the stage outputs, every oracle call
(cone name, element, sign) and the ball certificates.  ``verify`` rebuilds
the cones from their descriptors, re-evaluates each recorded oracle call,
re-runs the pipeline from the recorded input and compares everything.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from fractions import Fraction

from .abelian import FlagCone, dense_approximation, discrete_approximation, is_discrete, rank_one_convex_construction
from .cones import (
    Sign,
    check_axioms_on_ball,
    check_biinvariance_on_ball,
    check_conradian_on_ball,
    density_witness,
    least_positive_on_ball,
)
from .descriptors import dumps, loads
from .elements import FreeGroup, parse_group
from .errors import DescriptorError
from .pl import PLHomeo

VERSION = 1

CHECKS = {
    "axioms": check_axioms_on_ball,
    "conradian": check_conradian_on_ball,
    "biinvariance": check_biinvariance_on_ball,
}


def _ftext(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def homeo_json(f: PLHomeo) -> dict:
    return {
        "points": [[_ftext(x), _ftext(y)] for x, y in f.points],
        "left_slope": _ftext(f.left_slope),
        "right_slope": _ftext(f.right_slope),
    }


def homeo_from_json(d: dict) -> PLHomeo:
    return PLHomeo(tuple((Fraction(x), Fraction(y)) for x, y in d["points"]), Fraction(d["left_slope"]), Fraction(d["right_slope"]))


def canonical(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=1, ensure_ascii=False) + "\n"


def _digest(body: dict) -> str:
    return hashlib.sha256(json.dumps(body, sort_keys=True, separators=(",", ":")).encode()).hexdigest()


def seal(body: dict) -> dict:
    body = dict(body)
    body.pop("digest", None)
    body["digest"] = _digest(body)
    return body


class OracleLog:
    """Classify through named cones and remember every call."""

    def __init__(self):
        self.cones: dict[str, object] = {}
        self.calls: list[dict] = []

    def add(self, name: str, cone) -> None:
        self.cones[name] = cone

    def classify(self, name: str, g) -> Sign:
        s = self.cones[name].classify(g)
        self.calls.append({"cone": name, "element": g.text(), "sign": s.symbol})
        return s

    def cone_table(self) -> dict:
        return {name: c.descriptor() for name, c in self.cones.items()}


# --------------------------------------------------------------- builders


def check_certificate(cone, prop: str, radius: int, seed: int = 0) -> dict:
    cert = CHECKS[prop](cone, radius)
    log = OracleLog()
    log.add("P", cone)
    for w in cert.witness:
        log.classify("P", w)
    return seal(
        {
            "pipeline": "check",
            "version": VERSION,
            "seed": seed,
            "input": {"cone": cone.descriptor(), "property": prop, "radius": radius},
            "cones": log.cone_table(),
            "oracle_calls": log.calls,
            "ball_certificates": [cert.to_json()],
            "verdict": cert.verdict,
        }
    )


def approximate_certificate(cone, target: str, require: list, seed: int = 0) -> dict:
    from .realization import finfty_approximation

    G = cone.group
    log = OracleLog()
    log.add("P", cone)
    for g in require:
        if log.classify("P", g) != Sign.POSITIVE:
            raise ValueError(f"{g.text()} is not positive in the input cone")
    stages: dict = {}
    if isinstance(cone, FlagCone):
        fn = {"discrete": discrete_approximation, "dense": dense_approximation, "rank-one": rank_one_convex_construction}.get(target)
        if fn is None:
            raise ValueError(f"target {target!r} is not available on {G.tag}")
        out = FlagCone(fn(cone.flag, [g.coords for g in require]))
        disc, least = is_discrete(out.flag)
        stages["discrete"] = disc
        stages["least_positive"] = None if least is None else list(least)
        outputs = {"Q": out}
    elif G == FreeGroup(None):
        res = finfty_approximation(cone, require)
        stages["split"] = res.split
        outputs = {"flip": res.flip, "dense": res.dense}
        if target not in outputs:
            raise ValueError("targets on f:inf are 'flip' and 'dense'")
        xk = G.generator(res.split)
        log.add("flip", res.flip)
        log.classify("P", xk)
        log.classify("flip", xk)
        out = outputs[target]
        outputs = {"Q": out}
    else:
        raise ValueError(f"approximate handles z:k flag cones and f:inf cones; use densify for {G.tag}")
    for name, c in outputs.items():
        log.add(name, c)
        for g in require:
            log.classify(name, g)
    ok = all(c["sign"] == "+" for c in log.calls if c["cone"] == "Q")
    return seal(
        {
            "pipeline": "approximate",
            "version": VERSION,
            "seed": seed,
            "input": {"cone": cone.descriptor(), "target": target, "require": [g.text() for g in require]},
            "stages": stages,
            "cones": log.cone_table(),
            "oracle_calls": log.calls,
            "output": out.descriptor(),
            "verdict": "verified-on-ball" if ok else "refuted",
        }
    )


def densify_certificate(cone, require: list, k: int, degree: int = 2, seed: int = 0, witness_radius: int = 3) -> dict:
    from .realization import dense_approximation_free

    pl = dense_approximation_free(cone, require, k, degree)
    log = OracleLog()
    for name, c in (("P", cone), ("Q", pl.Q), ("Q_prime", pl.Q_prime)):
        log.add(name, c)
    for g in require:
        for name in ("P", "Q", "Q_prime"):
            log.classify(name, g)
    for h in (pl.h1, pl.h2):
        log.classify("Q_prime", h)
    lp = least_positive_on_ball(pl.Q_prime, witness_radius)
    w = density_witness(pl.Q_prime, lp.element, witness_radius)
    density = {"radius": witness_radius, "ball_minimum": lp.element.text(), "witness": None if w is None else w.text()}
    if w is not None:
        log.classify("Q_prime", w)
        log.classify("Q_prime", w.inverse() * lp.element)
    evaluations = [
        {"word": x.text(), "at": "0", "value": _ftext(pl.rep.eval(x, 0))}
        for x in [pl.h1, pl.h2, pl.g_plus, *require]
    ]
    axioms = check_axioms_on_ball(pl.Q_prime, 2)
    stages = {
        "g_minus": pl.g_minus.text(),
        "g_plus": pl.g_plus.text(),
        "a": pl.choice.a.text(),
        "b": pl.choice.b.text(),
        "eps": list(pl.choice.eps),
        "j0": pl.choice.j0,
        "ell": pl.choice.ell,
        "h1": pl.h1.text(),
        "h2": pl.h2.text(),
        "key_points": {name: _ftext(v) for name, v in pl.key_points().items()},
        "f1": homeo_json(pl.f1),
        "f2": homeo_json(pl.f2),
        "t_range": [_ftext(pl.realization.t[pl.realization.order[0]]), _ftext(pl.realization.t[pl.realization.order[-1]])],
    }
    ok = all(pl.checks.values()) and axioms.ok and w is not None
    return seal(
        {
            "pipeline": "densify",
            "version": VERSION,
            "seed": seed,
            "input": {"cone": cone.descriptor(), "require": [g.text() for g in require], "k": k, "degree": degree, "witness_radius": witness_radius},
            "stages": stages,
            "checks": pl.checks,
            "density": density,
            "evaluations": evaluations,
            "cones": log.cone_table(),
            "oracle_calls": log.calls,
            "ball_certificates": [axioms.to_json()],
            "output": pl.Q_prime.descriptor(),
            "verdict": "verified-on-ball" if ok else "refuted",
        }
    )


# ------------------------------------------------------------------ verify


@dataclass
class VerifyResult:
    ok: bool
    problems: list[str]
    checked: int


def rebuild(cert: dict) -> dict:
    """Re-run the recorded pipeline from its input alone."""
    kind = cert["pipeline"]
    inp = cert["input"]
    cone = loads(dumps(inp["cone"]))
    seed = cert.get("seed", 0)
    if kind == "check":
        return check_certificate(cone, inp["property"], inp["radius"], seed)
    G = cone.group
    require = [G.parse(t) for t in inp["require"]]
    if kind == "approximate":
        return approximate_certificate(cone, inp["target"], require, seed)
    if kind == "densify":
        return densify_certificate(cone, require, inp["k"], inp["degree"], seed, inp.get("witness_radius", 3))
    raise DescriptorError(f"unknown pipeline {kind!r}")


def verify_certificate(cert: dict) -> VerifyResult:
    """Independent re-evaluation; every disagreement is reported with its location."""
    problems: list[str] = []
    for key in ("pipeline", "input", "cones", "oracle_calls", "verdict", "digest"):
        if key not in cert:
            raise DescriptorError(f"certificate lacks {key!r}")
    cones = {name: loads(dumps(d)) for name, d in cert["cones"].items()}
    checked = 0
    for i, call in enumerate(cert["oracle_calls"]):
        cone = cones[call["cone"]]
        g = cone.group.parse(call["element"])
        got = cone.classify(g).symbol
        checked += 1
        if got != call["sign"]:
            problems.append(f"oracle_calls[{i}]: {call['cone']}({call['element']}) recorded {call['sign']}, recomputed {got}")
    fresh = rebuild(cert)
    for key in sorted(set(fresh) | set(cert)):
        if key in ("digest", "oracle_calls"):
            continue
        checked += 1
        if fresh.get(key) != cert.get(key):
            problems.append(f"{key}: recorded value differs from the re-derived one")
    if fresh["oracle_calls"] != cert["oracle_calls"] and not any(p.startswith("oracle_calls") for p in problems):
        problems.append("oracle_calls: the re-run made a different sequence of calls")
    body = {k: v for k, v in cert.items() if k != "digest"}
    if _digest(body) != cert["digest"]:
        problems.append("digest: does not match the certificate body")
    return VerifyResult(not problems, problems, checked)


def parse_group_arg(tag: str):
    try:
        return parse_group(tag)
    except (ValueError, TypeError) as e:
        raise DescriptorError(str(e)) from None
