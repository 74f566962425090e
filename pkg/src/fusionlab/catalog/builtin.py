"""The built-in catalog: every named family at desk scale.

All groups have order at most 2000 except the PSL2(q) family, which runs up
to PSL2(29) of order 12180.
"""

from __future__ import annotations

from functools import lru_cache

from ..perm import PermGroup
from .families import GroupSpec, construct, parse_spec
from .io import CatalogEntry, entry_from_group

_SPECS = [
    # abelian
    "C2", "C3", "C4", "C5", "C6", "C7", "C8", "C9", "C12", "C15", "C16",
    "C2 x C2", "C3 x C3", "C2 x C4", "C5 x C5",
    # dihedral, including D_2p for p in 3, 5, 7, 11, 13
    "D6", "D8", "D10", "D12", "D14", "D16", "D18", "D20", "D22", "D26",
    # symmetric and alternating
    "S3", "S4", "S5", "S6", "A4", "A5", "A6",
    # G_m = <a, b | a^3 = b^(2^m) = 1, a^b = a^-1>
    "G_1", "G_2", "G_3", "G_4", "G_5", "G_6",
    # extraspecial 2-groups of both types
    "2^(1+2)+", "Q8", "2^(1+4)+", "2^(1+4)-", "2^(1+6)+", "2^(1+6)-",
    # linear groups
    "PSL2(4)", "PSL2(5)", "PSL2(7)", "PSL2(8)", "PSL2(9)", "PSL2(11)",
    "PSL2(13)", "PSL2(16)", "PSL2(19)", "PSL2(29)",
    "SL2(3)", "SL2(5)", "SL2(7)",
    # affine Frobenius groups
    "F(7,1,3)", "F(2,2,3)", "F(5,1,2)", "F(11,1,5)", "F(13,1,3)",
    "F(2,3,7)", "F(3,2,2)", "F(5,2,3)", "F(2,4,5)", "F(3,3,13)",
    # direct products
    "S3 x C2", "S3 x C3", "S3 x C4", "A4 x C2", "A4 x C3", "A5 x C2", "A5 x C3", "A5 x C5",
    "S3 x S3", "S4 x C2", "S4 x C3", "D8 x C2", "D8 x C3", "D8 x C5",
    "Q8 x C2", "Q8 x C3", "D10 x C3", "D10 x C5", "D14 x C7", "SL2(3) x C2",
    "G_2 x C3", "G_3 x C5", "2^(1+4)+ x C3", "PSL2(7) x C2", "S5 x C2", "A4 x A4",
]


def builtin_specs() -> list[GroupSpec]:
    return [parse_spec(s) for s in _SPECS]


@lru_cache(maxsize=None)
def _built(name_text: str) -> PermGroup:
    return construct(parse_spec(name_text))


def builtin_catalog(max_order: int | None = None) -> list[CatalogEntry]:
    """Entries sorted by name; groups are constructed lazily and cached."""
    out = []
    for text in _SPECS:
        spec = parse_spec(text)
        if max_order is not None and spec.expected_order > max_order:
            continue
        out.append(entry_from_group(spec.name, _built(text), spec.expected_order))
    return sorted(out, key=lambda e: e.name)
