"""HLT coset enumeration over the trivial subgroup.

Columns are ``2*i`` for generator ``i`` and ``2*i + 1`` for its inverse;
cosets are numbered from 0 (the subgroup itself) in order of first
definition, and dead cosets are compacted away at the end.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import FusionLabError
from ..perm import Permutation, PermGroup
from .presentation import Presentation

DEFAULT_MAX_COSETS = 100_000


class CosetLimitExceeded(FusionLabError):
    """Enumeration stopped at the coset limit; the order is unknown, not infinite."""


@dataclass
class CosetTable:
    columns: tuple[str, ...]
    rows: list[list[int]]

    def __len__(self) -> int:
        return len(self.rows)

    def is_complete(self) -> bool:
        return all(e is not None for row in self.rows for e in row)

    def is_compatible(self, relators) -> bool:
        """Closed table whose inverse columns match and where every relator
        traces back to its starting coset from every row."""
        if not self.is_complete():
            return False
        for c, row in enumerate(self.rows):
            for x, target in enumerate(row):
                if self.rows[target][x ^ 1] != c:
                    return False
        for c in range(len(self.rows)):
            for w in relators:
                f = c
                for g, e in w:
                    f = self.rows[f][2 * g + (e < 0)]
                if f != c:
                    return False
        return True


@dataclass
class Enumeration:
    order: int
    table: CosetTable
    group: PermGroup


class _HLT:
    def __init__(self, ncols: int, max_cosets: int):
        self.ncols = ncols
        self.max_cosets = max_cosets
        self.table: list[list[int | None]] = [[None] * ncols]
        self.parent = [0]

    def alive(self, k: int) -> bool:
        return self.parent[k] == k

    def define(self, alpha: int, x: int) -> None:
        if len(self.table) >= self.max_cosets:
            raise CosetLimitExceeded(f"coset limit {self.max_cosets} reached; enumeration inconclusive")
        beta = len(self.table)
        self.table.append([None] * self.ncols)
        self.parent.append(beta)
        self.table[alpha][x] = beta
        self.table[beta][x ^ 1] = alpha

    def rep(self, k: int) -> int:
        root = k
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[k] != root:
            self.parent[k], k = root, self.parent[k]
        return root

    def merge(self, k: int, lam: int, queue: list[int]) -> None:
        phi, psi = self.rep(k), self.rep(lam)
        if phi != psi:
            mu, nu = min(phi, psi), max(phi, psi)
            self.parent[nu] = mu
            queue.append(nu)

    def coincidence(self, alpha: int, beta: int) -> None:
        queue: list[int] = []
        self.merge(alpha, beta, queue)
        i = 0
        while i < len(queue):
            gamma = queue[i]
            i += 1
            for x in range(self.ncols):
                delta = self.table[gamma][x]
                if delta is None:
                    continue
                self.table[delta][x ^ 1] = None
                mu, nu = self.rep(gamma), self.rep(delta)
                if self.table[mu][x] is not None:
                    self.merge(nu, self.table[mu][x], queue)
                elif self.table[nu][x ^ 1] is not None:
                    self.merge(mu, self.table[nu][x ^ 1], queue)
                else:
                    self.table[mu][x] = nu
                    self.table[nu][x ^ 1] = mu

    def scan_and_fill(self, alpha: int, word: list[int]) -> None:
        t = self.table
        f, b = alpha, alpha
        i, j = 0, len(word) - 1
        while True:
            while i <= j and t[f][word[i]] is not None:
                f = t[f][word[i]]
                i += 1
            if i > j:
                if f != alpha:
                    self.coincidence(f, alpha)
                return
            while j >= i and t[b][word[j] ^ 1] is not None:
                b = t[b][word[j] ^ 1]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if i == j:
                t[f][word[i]] = b
                t[b][word[i] ^ 1] = f
                return
            self.define(f, word[i])

    def run(self, relators: list[list[int]]) -> None:
        alpha = 0
        while alpha < len(self.table):
            for w in relators:
                if not self.alive(alpha):
                    break
                self.scan_and_fill(alpha, w)
            if self.alive(alpha):
                for x in range(self.ncols):
                    if self.table[alpha][x] is None:
                        self.define(alpha, x)
            alpha += 1


def todd_coxeter(pres: Presentation, max_cosets: int = DEFAULT_MAX_COSETS) -> Enumeration:
    if max_cosets < 1:
        raise ValueError("max_cosets must be at least 1")
    ngens = len(pres.generators)
    words = [[2 * g + (e < 0) for g, e in rel] for rel in pres.relators]
    hlt = _HLT(2 * ngens, max_cosets)
    hlt.run(words)
    live = [k for k in range(len(hlt.table)) if hlt.alive(k)]
    renumber = {k: i for i, k in enumerate(live)}
    rows = [[renumber[hlt.table[k][x]] for x in range(2 * ngens)] for k in live]
    columns = tuple(c for g in pres.generators for c in (g, g + "^-1"))
    table = CosetTable(columns, rows)
    degree = len(rows)
    perms = [Permutation._raw(row[2 * g] for row in rows) for g in range(ngens)]
    return Enumeration(degree, table, PermGroup(degree, perms))
