"""Isomorphism types of finitely generated abelian groups."""

from __future__ import annotations

import json
import math
from collections import Counter
from dataclasses import dataclass
from typing import Dict, Iterable, List, Sequence, Tuple


def factorize(n: int) -> Dict[int, int]:
    """Prime factorization by trial division (torsion orders here are small)."""
    if n < 1:
        raise ValueError("factorize needs a positive integer")
    out: Dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def invariant_factor_chain(values: Iterable[int]) -> List[int]:
    """Normalize a multiset of cyclic orders into d_1 | d_2 | ... (units dropped)."""
    ds = sorted(abs(v) for v in values if abs(v) != 1)
    if any(v == 0 for v in ds):
        raise ValueError("zero is a free summand, not a torsion order")
    for i in range(len(ds)):
        for j in range(i + 1, len(ds)):
            a, b = ds[i], ds[j]
            if b % a:
                g = math.gcd(a, b)
                ds[i], ds[j] = g, a // g * b
    return [d for d in ds if d != 1]


def primary_parts(values: Iterable[int]) -> List[int]:
    """Prime-power decomposition of a torsion multiset, sorted."""
    out = []
    for v in values:
        for p, e in factorize(v).items():
            out.append(p ** e)
    return sorted(out)


@dataclass(frozen=True)
class AbelianInvariants:
    """Z^free_rank plus torsion, stored as an invariant-factor chain."""

    free_rank: int = 0
    torsion: Tuple[int, ...] = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        chain = tuple(invariant_factor_chain(self.torsion))
        object.__setattr__(self, "torsion", chain)

    @classmethod
    def from_diagonal(cls, free_rank: int, diagonal: Iterable[int]) -> "AbelianInvariants":
        return cls(free_rank, tuple(d for d in diagonal if d not in (0, 1, -1)))

    @classmethod
    def cyclic(cls, n: int, multiplicity: int = 1) -> "AbelianInvariants":
        """(Z/n)^multiplicity, with Z/0 meaning Z and Z/1 meaning 0."""
        if n == 0:
            return cls(multiplicity)
        return cls(0, (abs(n),) * multiplicity)

    @classmethod
    def vector_space(cls, p: int, dim: int) -> "AbelianInvariants":
        return cls(0, (p,) * dim)

    @classmethod
    def direct_sum(cls, parts: Iterable["AbelianInvariants"]) -> "AbelianInvariants":
        free, tors = 0, []
        for a in parts:
            free += a.free_rank
            tors.extend(a.torsion)
        return cls(free, tuple(tors))

    def __add__(self, other: "AbelianInvariants") -> "AbelianInvariants":
        return AbelianInvariants(self.free_rank + other.free_rank, self.torsion + other.torsion)

    def __mul__(self, k: int) -> "AbelianInvariants":
        return AbelianInvariants(self.free_rank * k, self.torsion * k)

    __rmul__ = __mul__

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    @property
    def is_free(self) -> bool:
        return not self.torsion

    @property
    def torsion_order(self) -> int:
        return math.prod(self.torsion)

    def primary(self) -> List[int]:
        return primary_parts(self.torsion)

    def torsion_subgroup(self) -> "AbelianInvariants":
        return AbelianInvariants(0, self.torsion)

    def free_part(self) -> "AbelianInvariants":
        return AbelianInvariants(self.free_rank)

    def count_cyclic(self, n: int) -> int:
        """Number of invariant factors equal to n."""
        return sum(1 for d in self.torsion if d == n)

    def p_rank(self, p: int) -> int:
        """dim over F_p of the p-torsion subgroup."""
        return sum(1 for d in self.torsion if d % p == 0)

    def tensor_mod(self, n: int) -> "AbelianInvariants":
        """This group tensored with Z/n."""
        parts = [n] * self.free_rank + [math.gcd(d, n) for d in self.torsion]
        return AbelianInvariants(0, tuple(parts))

    def tor_mod(self, n: int) -> "AbelianInvariants":
        """Tor(this group, Z/n)."""
        return AbelianInvariants(0, tuple(math.gcd(d, n) for d in self.torsion))

    def dim_over(self, p: int) -> int:
        """dim_{F_p} of this group tensored with F_p."""
        return self.free_rank + self.p_rank(p)

    # -- formats ----------------------------------------------------------
    def to_json_obj(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), sort_keys=True)

    @classmethod
    def from_json_obj(cls, obj: dict) -> "AbelianInvariants":
        return cls(int(obj["free_rank"]), tuple(int(t) for t in obj["torsion"]))

    def describe(self, primary: bool = False) -> str:
        """Compact form such as ``Z^5 + Z/2^3 + Z/6`` (``0`` for the trivial group)."""
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        tors = self.primary() if primary else list(self.torsion)
        for d, c in sorted(Counter(tors).items()):
            parts.append(f"Z/{d}" if c == 1 else f"Z/{d}^{c}")
        return " + ".join(parts) if parts else "0"

    def __str__(self):
        return self.describe()

    @classmethod
    def parse(cls, text: str) -> "AbelianInvariants":
        text = text.strip()
        if text == "0":
            return cls()
        free, tors = 0, []
        for part in text.split("+"):
            part = part.strip()
            if part.startswith("Z/"):
                body = part[2:]
                d, _, c = body.partition("^")
                tors.extend([int(d)] * (int(c) if c else 1))
            elif part.startswith("Z"):
                _, _, c = part.partition("^")
                free += int(c) if c else 1
            else:
                raise ValueError(f"cannot parse {part!r}")
        return cls(free, tuple(tors))


def quotient_invariants(pieces: Sequence[Tuple[int, int]]) -> AbelianInvariants:
    """Direct sum of (Z/n)^rank for (rank, n) pairs; n = 0 means free, n = 1 trivial."""
    return AbelianInvariants.direct_sum(AbelianInvariants.cyclic(n, r) for r, n in pieces)
