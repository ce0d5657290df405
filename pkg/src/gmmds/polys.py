"""Sparse multivariate polynomial tuples F = (f_1, ..., f_k) over a GF."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import MalformedInput
from .gf import GF

DEFAULT_MAX_DEGREE = 32

Term = tuple[tuple[int, ...], int]


def lex_key(exp: Sequence[int]) -> tuple[int, ...]:
    """Monomial order key: the last variable is the most significant."""
    return tuple(reversed(exp))


@dataclass(frozen=True)
class PolyTuple:
    field: GF
    r: int
    polys: tuple[tuple[Term, ...], ...]
    max_degree: int = DEFAULT_MAX_DEGREE

    @classmethod
    def from_terms(cls, field: GF, r: int, polys: Iterable[Mapping | Iterable], max_degree: int = DEFAULT_MAX_DEGREE):
        """Each poly is a mapping exp-tuple -> coeff, or an iterable of (exp, coeff).

        Repeated monomials are summed and zero coefficients dropped.
        """
        out = []
        for poly in polys:
            items = poly.items() if isinstance(poly, Mapping) else poly
            acc: dict[tuple[int, ...], int] = {}
            for exp, c in items:
                exp = (exp,) if isinstance(exp, int) else tuple(int(e) for e in exp)
                if len(exp) != r:
                    raise MalformedInput(f"exponent {exp} has {len(exp)} entries, expected {r}")
                if any(e < 0 for e in exp):
                    raise MalformedInput(f"negative exponent {exp}")
                if sum(exp) > max_degree:
                    raise MalformedInput(f"degree {sum(exp)} exceeds cap {max_degree}")
                acc[exp] = field.add(acc.get(exp, 0), field.element(c))
            terms = tuple(sorted(((e, c) for e, c in acc.items() if c), key=lambda t: lex_key(t[0])))
            out.append(terms)
        return cls(field, r, tuple(out), max_degree)

    @property
    def k(self) -> int:
        return len(self.polys)

    def monomials(self) -> list[tuple[int, ...]]:
        """Union of supports in increasing monomial order."""
        seen = {e for poly in self.polys for e, _ in poly}
        return sorted(seen, key=lex_key)

    def coefficient_rows(self, monos: Sequence[tuple[int, ...]] | None = None) -> list[list[int]]:
        """k x M coefficient matrix over the given monomial list."""
        monos = self.monomials() if monos is None else monos
        index = {e: t for t, e in enumerate(monos)}
        rows = []
        for poly in self.polys:
            row = [0] * len(monos)
            for e, c in poly:
                row[index[e]] = c
            rows.append(row)
        return rows

    def evaluate(self, point: Sequence[int]) -> list[int]:
        F = self.field
        if len(point) != self.r:
            raise MalformedInput(f"point {tuple(point)} has {len(point)} coordinates, expected {self.r}")
        out = []
        for poly in self.polys:
            acc = 0
            for exp, c in poly:
                term = c
                for x, e in zip(point, exp):
                    if e:
                        term = F.mul(term, F.pow(x, e))
                acc = F.add(acc, term)
            out.append(acc)
        return out

    def to_json(self) -> dict:
        from .jsonio import elem_to_json

        return {
            "r": self.r,
            "max_degree": self.max_degree,
            "polys": [
                {"terms": [{"exp": list(e), "coeff": elem_to_json(self.field, c)} for e, c in poly]}
                for poly in self.polys
            ],
        }
