"""
Finite target groups as multiplication tables.

Built-in groups come from sympy permutation groups; custom ones are read
from a small text format: the order n on the first line, then n rows of n
element indices. Index 0 is the identity.
"""

from functools import lru_cache
from pathlib import Path
from typing import Dict, List, Sequence, Union

from sympy.combinatorics import Permutation
from sympy.combinatorics.named_groups import AlternatingGroup, DihedralGroup, SymmetricGroup

from knotball.models.errors import FormatError, InvalidGroupTable, UnknownName


class FiniteGroup:
    """A finite group given by its multiplication table."""

    def __init__(self, name: str, table: Sequence[Sequence[int]], validate: bool = True):
        self.name = name
        self.table: List[List[int]] = [list(row) for row in table]
        self.order = len(self.table)
        if validate:
            self.validate()
        self.inverse: List[int] = [row.index(0) for row in self.table]

    @classmethod
    def from_permutations(cls, name: str, elements: Sequence[Permutation]) -> "FiniteGroup":
        ordered = sorted(elements, key=lambda p: p.array_form)
        index = {tuple(p.array_form): i for i, p in enumerate(ordered)}
        table = [[index[tuple((a * b).array_form)] for b in ordered] for a in ordered]
        return cls(name, table)

    def validate(self) -> None:
        """
        Raises:
            InvalidGroupTable: not closed, 0 not the identity, missing inverses,
                or not associative
        """
        n = self.order
        if n == 0 or any(len(row) != n for row in self.table):
            raise InvalidGroupTable(f"{self.name}: table must be n x n with n > 0")
        if any(not 0 <= x < n for row in self.table for x in row):
            raise InvalidGroupTable(f"{self.name}: entries must lie in 0..{n - 1}")
        if self.table[0] != list(range(n)) or [row[0] for row in self.table] != list(range(n)):
            raise InvalidGroupTable(f"{self.name}: index 0 is not the identity")
        if any(sorted(row) != list(range(n)) for row in self.table):
            raise InvalidGroupTable(f"{self.name}: some element has no inverse")
        t = self.table
        for a in range(n):
            for b in range(n):
                ab = t[a][b]
                for c in range(n):
                    if t[ab][c] != t[a][t[b][c]]:
                        raise InvalidGroupTable(f"{self.name}: not associative at ({a}, {b}, {c})")

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def commute(self, a: int, b: int) -> bool:
        return self.table[a][b] == self.table[b][a]

    def is_abelian(self) -> bool:
        return all(self.commute(a, b) for a in range(self.order) for b in range(a + 1, self.order))

    def to_text(self) -> str:
        lines = [str(self.order)]
        lines.extend(" ".join(str(x) for x in row) for row in self.table)
        return "\n".join(lines) + "\n"

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name!r}, order={self.order})"


def parse_group_table(text: str, name: str = "custom") -> FiniteGroup:
    tokens = [line.split() for line in text.splitlines() if line.strip() and not line.strip().startswith("#")]
    try:
        n = int(tokens[0][0])
        rows = [[int(x) for x in row] for row in tokens[1:]]
    except (IndexError, ValueError) as e:
        raise FormatError(f"{name}: group table must be n followed by n rows of n integers") from e
    if len(rows) != n:
        raise FormatError(f"{name}: expected {n} rows, found {len(rows)}")
    return FiniteGroup(name, rows)


def read_group_table(path: Union[str, Path]) -> FiniteGroup:
    path = Path(path)
    return parse_group_table(path.read_text(encoding="utf-8"), name=path.stem)


_BUILTIN = {
    "S3": lambda: SymmetricGroup(3),
    "A4": lambda: AlternatingGroup(4),
    "D4": lambda: DihedralGroup(4),
    "S4": lambda: SymmetricGroup(4),
}


@lru_cache(maxsize=None)
def _builtin(name: str) -> FiniteGroup:
    return FiniteGroup.from_permutations(name, list(_BUILTIN[name]().generate()))


def get_group(name: str) -> FiniteGroup:
    """
    Built-in group by name, or a table file path.

    Raises:
        UnknownName: neither a built-in name nor an existing file
    """
    if name in _BUILTIN:
        return _builtin(name)
    if Path(name).is_file():
        return read_group_table(name)
    raise UnknownName(f"Unknown group: {name}. Available: {', '.join(_BUILTIN)}")


def builtin_groups() -> Dict[str, FiniteGroup]:
    return {name: _builtin(name) for name in _BUILTIN}
