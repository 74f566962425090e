"""Batch execution of suites over catalogs, optionally in worker processes."""

from __future__ import annotations

import signal
from concurrent.futures import ProcessPoolExecutor
from contextlib import contextmanager

from ..catalog.builtin import builtin_catalog
from ..catalog.io import CatalogEntry, load_catalog
from ..errors import CapExceeded, ClassificationError, InternalCheckError
from ..perm import PermGroup
from .suites import SUITE_FUNCTIONS, GroupContext
from .verdict import ERROR, SKIPPED, SuiteConfig, Verdict


class GroupTimeout(Exception):
    pass


@contextmanager
def _time_limit(seconds: float):
    if not seconds or not hasattr(signal, "setitimer"):
        yield
        return

    def fire(signum, frame):
        raise GroupTimeout()

    previous = signal.signal(signal.SIGALRM, fire)
    signal.setitimer(signal.ITIMER_REAL, seconds)
    try:
        yield
    finally:
        signal.setitimer(signal.ITIMER_REAL, 0)
        signal.signal(signal.SIGALRM, previous)


def _marker(name: str, order: int, suite: str, status: str, reason: str) -> Verdict:
    return Verdict(name, order, suite, "-", None, None, status, witness={"reason": reason})


def run_group(task: tuple) -> list[Verdict]:
    """Run every requested suite on one group; picklable entry point for workers."""
    name, degree, generators, suites, primes, pi_sets, seed, timeout = task
    G = PermGroup(degree, generators)
    out: list[Verdict] = []
    pending = list(suites)
    try:
        with _time_limit(timeout):
            ctx = GroupContext.build(name, G, primes, pi_sets, seed)
            while pending:
                suite = pending[0]
                try:
                    out += SUITE_FUNCTIONS[suite](ctx)
                except CapExceeded as exc:
                    out.append(_marker(name, G.order, suite, SKIPPED, f"cap: {exc}"))
                except (InternalCheckError, ClassificationError) as exc:
                    out.append(_marker(name, G.order, suite, ERROR, f"{type(exc).__name__}: {exc}"))
                pending.pop(0)
    except GroupTimeout:
        out += [_marker(name, G.order, s, SKIPPED, f"timeout after {timeout:g}s") for s in pending]
    return out


def collect_entries(config: SuiteConfig) -> list[CatalogEntry]:
    entries: list[CatalogEntry] = []
    if config.builtin:
        entries += builtin_catalog()
    for path in config.catalogs:
        entries += load_catalog(path)
    if config.max_order is not None:
        entries = [e for e in entries if e.group.order <= config.max_order]
    seen: set[str] = set()
    for e in entries:
        if e.name in seen:
            raise ValueError(f"duplicate group name {e.name!r} across catalogs")
        seen.add(e.name)
    return entries


def run_suite(config: SuiteConfig, entries: list[CatalogEntry] | None = None) -> list[Verdict]:
    """Verdicts for every (group, suite, params), sorted independently of ``jobs``."""
    if entries is None:
        entries = collect_entries(config)
    tasks = [
        (e.name, e.degree, e.generators, list(config.suites), config.primes, config.pi_sets,
         config.seed, config.timeout)
        for e in sorted(entries, key=lambda e: e.name)
    ]
    results: list[Verdict] = []
    if config.jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            for chunk in pool.map(run_group, tasks):
                results += chunk
    else:
        for task in tasks:
            results += run_group(task)
    return sorted(results, key=Verdict.sort_key)
