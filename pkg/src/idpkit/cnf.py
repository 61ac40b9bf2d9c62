"""3-CNF formulas: data type, DIMACS I/O and canonical enumeration."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, NamedTuple


class Literal(NamedTuple):
    var: int
    positive: bool

    def __str__(self) -> str:
        return f"z{self.var + 1}" if self.positive else f"~z{self.var + 1}"


@dataclass(frozen=True)
class CnfFormula:
    n: int
    clauses: tuple[tuple[Literal, Literal, Literal], ...]

    def __post_init__(self) -> None:
        cl = tuple(tuple(Literal(*lit) for lit in c) for c in self.clauses)
        object.__setattr__(self, "clauses", cl)
        for c in cl:
            if len(c) != 3:
                raise ValueError(f"clause {c} does not have exactly 3 literal slots")
            for lit in c:
                if not 0 <= lit.var < self.n:
                    raise ValueError(f"variable index {lit.var} outside 0..{self.n - 1}")

    @property
    def m(self) -> int:
        return len(self.clauses)

    def literals(self) -> list[Literal]:
        """The 3m literal occurrences in clause-major order."""
        return [lit for c in self.clauses for lit in c]

    def satisfied_by(self, assignment) -> bool:
        return all(any(assignment[lit.var] == lit.positive for lit in c) for c in self.clauses)

    def __str__(self) -> str:
        return " & ".join("(" + " | ".join(map(str, c)) + ")" for c in self.clauses)


def from_ints(n: int, clauses) -> CnfFormula:
    """Build from DIMACS-style signed 1-based integers."""
    return CnfFormula(n, tuple(tuple(Literal(abs(x) - 1, x > 0) for x in c) for c in clauses))


def to_dimacs(f: CnfFormula) -> str:
    lines = [f"p cnf {f.n} {f.m}"]
    for c in f.clauses:
        lines.append(" ".join(str(lit.var + 1 if lit.positive else -(lit.var + 1)) for lit in c) + " 0")
    return "\n".join(lines) + "\n"


def parse_dimacs(text: str) -> CnfFormula:
    n = None
    nums: list[int] = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            toks = line.split()
            if len(toks) != 4 or toks[1] != "cnf":
                raise ValueError(f"bad problem line {line!r}")
            n = int(toks[2])
            continue
        nums.extend(int(t) for t in line.split())
    if n is None:
        raise ValueError("missing 'p cnf' line")
    clauses, cur = [], []
    for x in nums:
        if x == 0:
            clauses.append(cur)
            cur = []
        else:
            cur.append(x)
    if cur:
        raise ValueError("last clause is not terminated by 0")
    return from_ints(n, clauses)


def _canonical(n: int, clauses: tuple[tuple[int, ...], ...]) -> tuple:
    """Smallest relabelling under variable permutations and sign flips."""
    best = None
    for perm in itertools.permutations(range(n)):
        for flips in itertools.product((False, True), repeat=n):
            mapped = []
            for c in clauses:
                lits = []
                for code in c:
                    var, pos = divmod(code, 2)
                    pos = bool(pos) ^ flips[var]
                    lits.append(2 * perm[var] + int(pos))
                mapped.append(tuple(sorted(lits)))
            key = tuple(sorted(mapped))
            if best is None or key < best:
                best = key
    return best


def enumerate_canonical(max_vars: int, max_clauses: int) -> Iterator[CnfFormula]:
    """All 3-CNFs with 1..max_vars variables (each used at least once) and
    1..max_clauses clauses, one per symmetry class under clause order,
    literal order within clauses, variable renaming and sign flips."""
    for n in range(1, max_vars + 1):
        codes = range(2 * n)
        clause_space = list(itertools.combinations_with_replacement(codes, 3))
        for m in range(1, max_clauses + 1):
            seen = set()
            for combo in itertools.combinations_with_replacement(clause_space, m):
                used = {code // 2 for c in combo for code in c}
                if len(used) != n:
                    continue
                key = _canonical(n, combo)
                if key in seen:
                    continue
                seen.add(key)
                yield CnfFormula(
                    n, tuple(tuple(Literal(code // 2, bool(code % 2)) for code in c) for c in key)
                )
