"""Exhaustive and randomised verification campaigns.

Each campaign walks a population of orders, checks one property per order
and collects every failure.  Work can be sharded over processes by item
index; shards are merged by sorting failures on that index, so the report
does not depend on the number of workers.
"""
from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable

import numpy as np

from posetlevels import finders, lifts
from posetlevels.levels import EmbeddingKind, LevelDecomposition
from posetlevels.oracle import (
    count_posets_bruteforce,
    enumerate_posets,
    enumerate_unlabeled,
    oracle_find,
    random_poset,
)
from posetlevels.poset import Poset, inverse
from posetlevels.recognition import (
    ALI_FORBIDDEN,
    NACLI_FORBIDDEN,
    ForbiddenPattern,
    binarize,
    compute_attributes,
    has_forbidden,
    modular_decomposition,
    nacli_structure,
    root_attributes,
    structural_class,
)

KNOWN_LABELED_COUNTS = (1, 1, 3, 19, 219, 4231)


@dataclass
class CampaignResult:
    name: str
    n: int
    checked: int = 0
    failures: list[dict] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json_dict(self) -> dict:
        return {
            "check": self.name,
            "n": self.n,
            "checked": self.checked,
            "ok": self.ok,
            "failures": self.failures[:20],
            "failure_count": len(self.failures),
            "seconds": round(self.seconds, 3),
        }


def _describe(p: Poset) -> dict:
    return {"elements": list(p.elements), "relations": sorted(map(list, p.relations))}


# -- per-order checks -------------------------------------------------------------
# Each returns a list of failure descriptions (empty when the order passes).


def check_ali_equivalence(p: Poset) -> list[str]:
    forb = not has_forbidden(p, ALI_FORBIDDEN)
    struct = structural_class(p) is not None
    if p.n == 0:
        grouped = binary = root_attributes(p)
    else:
        tree = modular_decomposition(p)
        grouped = compute_attributes(tree, "grouped")[tree]
        binary = compute_attributes(tree, "binary")[binarize(tree)]
    out = []
    if not forb == struct == grouped.is_ali:
        out.append(f"forbidden={forb} structural={struct} automaton={grouped.is_ali}")
    if grouped != binary:
        out.append("grouped and binary automaton states differ")
    return out


def check_nacli_equivalence(p: Poset) -> list[str]:
    forb = not has_forbidden(p, NACLI_FORBIDDEN)
    struct = nacli_structure(p) is not None
    grouped = root_attributes(p, "grouped").is_nacli
    binary = root_attributes(p, "binary").is_nacli
    if forb == struct == grouped == binary:
        return []
    return [f"forbidden={forb} structural={struct} grouped={grouped} binary={binary}"]


def check_ali_behavior(host: Poset) -> list[str]:
    """Every ali pattern with an induced copy is found, level-induced, by its finder.

    The ended families are not ali; for them the finder must simply succeed
    exactly when an induced copy exists.
    """
    l = LevelDecomposition.of(host)
    out = []
    for spec in finders.ali_specs(host.n) + finders.ended_specs(host.n):
        exists = oracle_find(spec.poset, host, EmbeddingKind.INDUCED, host_levels=l) is not None
        got = finders.find_pattern(host, spec, l)
        if got is not None and got.kind < spec.guaranteed_kind:
            out.append(f"{spec}: finder returned only {got.kind.cli_name}")
        if exists != (got is not None):
            out.append(f"{spec}: oracle={exists} finder={got is not None}")
    return out


def check_nacli_behavior(host: Poset) -> list[str]:
    l = LevelDecomposition.of(host)
    out = []
    for spec in finders.nacli_specs(host.n):
        exists = oracle_find(spec.poset, host, EmbeddingKind.LEVEL_INDUCED, host_levels=l) is not None
        got = finders.find_pattern(host, spec, l)
        if got is not None and got.kind < EmbeddingKind.CONSECUTIVE_LEVEL_INDUCED:
            out.append(f"{spec}: finder returned only {got.kind.cli_name}")
        if exists != (got is not None):
            out.append(f"{spec}: oracle={exists} finder={got is not None}")
    return out


def check_duality(p: Poset) -> list[str]:
    out = []
    q = inverse(p)
    if root_attributes(p).is_ali_inverse != root_attributes(q).is_ali:
        out.append("ali of the inverse disagrees with the inverse-ali flag")
    lp, lq = LevelDecomposition.of(p), LevelDecomposition.of(q)
    for variant in (11, 21):
        for k in range(3 if variant == 11 else 4, p.n + 1):
            ended = finders.find_ended(p, k, variant, lp) is not None
            based = finders.find_pattern(q, finders.PatternSpec(f"based{variant}", k), lq) is not None
            if ended != based:
                out.append(f"ended{variant}:{k}={ended} but based on the inverse={based}")
    return out


# -- populations ------------------------------------------------------------------


def _labeled(n: int) -> Iterable[Poset]:
    return enumerate_posets(n)


def _unlabeled_upto(n: int) -> Iterable[Poset]:
    for m in range(1, n + 1):
        yield from enumerate_unlabeled(m)


def _random(n: int, seed: int, count: int = 1000) -> Iterable[Poset]:
    rng = np.random.default_rng(seed)
    for _ in range(count):
        yield random_poset(int(rng.integers(1, n + 1)), rng)


CHECKS: dict[str, tuple[Callable[[Poset], list[str]], Callable[..., Iterable[Poset]]]] = {
    "ali-equivalence": (check_ali_equivalence, lambda n, seed: _labeled(n)),
    "nacli-equivalence": (check_nacli_equivalence, lambda n, seed: _labeled(n)),
    "ali-behavior": (check_ali_behavior, lambda n, seed: _unlabeled_upto(n)),
    "nacli-behavior": (check_nacli_behavior, lambda n, seed: _unlabeled_upto(n)),
    "duality": (check_duality, lambda n, seed: _random(n, seed)),
}
SPECIAL = ("enumeration", "counterexamples")
CHECK_NAMES = tuple(CHECKS) + SPECIAL


def _shard(name: str, n: int, seed: int, shard: int, jobs: int) -> tuple[int, list[dict]]:
    check, population = CHECKS[name]
    checked = 0
    failures = []
    for i, p in enumerate(population(n, seed)):
        if i % jobs != shard:
            continue
        checked += 1
        problems = check(p)
        if problems:
            failures.append({"index": i, "poset": _describe(p), "problems": problems})
    return checked, failures


def run_campaign(name: str, n: int, seed: int = 0, jobs: int = 1) -> CampaignResult:
    """Run one named campaign; ``n`` is the population size bound."""
    if name not in CHECK_NAMES:
        raise ValueError(f"unknown check {name!r}; choose from {', '.join(CHECK_NAMES)}")
    if jobs < 1:
        raise ValueError("jobs must be positive")
    start = time.perf_counter()
    res = CampaignResult(name, n)
    if name == "enumeration":
        _enumeration(res)
    elif name == "counterexamples":
        _counterexamples(res)
    elif jobs == 1:
        res.checked, res.failures = _shard(name, n, seed, 0, 1)
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_shard, [name] * jobs, [n] * jobs, [seed] * jobs, range(jobs), [jobs] * jobs))
        res.checked = sum(c for c, _ in parts)
        res.failures = sorted((f for _, fs in parts for f in fs), key=lambda f: f["index"])
    res.seconds = time.perf_counter() - start
    return res


def _enumeration(res: CampaignResult) -> None:
    for m in range(min(res.n, 5) + 1):
        a = sum(1 for _ in enumerate_posets(m))
        b = count_posets_bruteforce(m)
        res.checked += 1
        if not a == b == KNOWN_LABELED_COUNTS[m]:
            res.failures.append({"index": m, "problems": [f"enumerated {a}, brute force {b}"]})


# -- counterexample fixtures ---------------------------------------------------------


NON_ALI_FIXTURES = (ForbiddenPattern.ANTICHAIN3, ForbiddenPattern.OBS1, ForbiddenPattern.CHAIN3_PLUS_POINT)


def non_ali_lift_report(tag: ForbiddenPattern) -> dict:
    """Which of the width-2 and scatter lifts separate induced from level-induced copies."""
    p = tag.poset
    report = {"fixture": tag.value, "lifts": {}}
    for lift in (lifts.lift_width2, lifts.lift_scatter):
        host = lift(p)
        report["lifts"][lift.__name__] = {
            "induced": oracle_find(p, host, EmbeddingKind.INDUCED) is not None,
            "level_induced": oracle_find(p, host, EmbeddingKind.LEVEL_INDUCED) is not None,
        }
    report["separated"] = any(v["induced"] and not v["level_induced"] for v in report["lifts"].values())
    return report


def non_nacli_fixtures(max_n: int = 5) -> list[Poset]:
    """Every order (up to isomorphism) on at most ``max_n`` elements containing OBS2 or OBS3."""
    tags = (ForbiddenPattern.OBS2, ForbiddenPattern.OBS3)
    return [p for p in _unlabeled_upto(max_n) if has_forbidden(p, tags)]


def gap_lift_report(p: Poset) -> dict:
    host = lifts.lift_gap(p)
    return {
        "level_induced": oracle_find(p, host, EmbeddingKind.LEVEL_INDUCED) is not None,
        "consecutive": oracle_find(p, host, EmbeddingKind.CONSECUTIVE_LEVEL_INDUCED) is not None,
    }


def _counterexamples(res: CampaignResult) -> None:
    for i, tag in enumerate(NON_ALI_FIXTURES):
        rep = non_ali_lift_report(tag)
        res.checked += 1
        if not rep["separated"]:
            res.failures.append({"index": i, "problems": [f"no lift separates {tag.value}"], "report": rep})
    for i, p in enumerate(non_nacli_fixtures(min(res.n, 5)), start=len(NON_ALI_FIXTURES)):
        rep = gap_lift_report(p)
        res.checked += 1
        if not rep["level_induced"] or rep["consecutive"]:
            res.failures.append({"index": i, "poset": _describe(p), "problems": ["gap lift does not separate"]})
