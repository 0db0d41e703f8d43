"""
Exact multivector arithmetic on the exterior algebra of R^{2g}.

Basis monomials are bitmasks: bit i set means e^i occurs.  Indices
1..2g carry the standard symplectic form

    omega = e^1 ^ e^2 + ... + e^{2g-1} ^ e^{2g},

and the optional index 0 (used for the (2g+1)-dimensional ambient space
H^1(Sigma_g x S^1)) pairs to zero with everything.

>>> w = omega_power(2, 1)
>>> print(w)
e{1,2} + e{3,4}
>>> print(w ^ w)
2 e{1,2,3,4}
>>> print(contract_form(w, w))
-2
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

MAX_INDEX = 62


class DimensionMismatch(ValueError):
    """Operands live in different exterior algebras or over different rings."""


# ---------------------------------------------------------------------------
# coefficient rings


@dataclass(frozen=True)
class CoefficientRing:
    """Z (modulus 0), Z/n, or the prime field F_p."""

    modulus: int = 0
    is_field: bool = False

    def __post_init__(self):
        if self.modulus < 0 or self.modulus == 1:
            raise ValueError(f"bad modulus {self.modulus}")
        if self.is_field and not _is_prime(self.modulus):
            raise ValueError(f"{self.modulus} is not prime")

    def reduce(self, c: int) -> int:
        return c % self.modulus if self.modulus else c

    @property
    def name(self) -> str:
        if self.modulus == 0:
            return "z"
        if self.is_field:
            return f"f{self.modulus}"
        return f"zmod:{self.modulus}"

    def __str__(self):
        if self.modulus == 0:
            return "Z"
        return f"F_{self.modulus}" if self.is_field else f"Z/{self.modulus}"


ZZ = CoefficientRing()


def prime_field(p: int) -> CoefficientRing:
    return CoefficientRing(p, True)


def integers_mod(n: int) -> CoefficientRing:
    return CoefficientRing(n, _is_prime(n))


def parse_ring(text: str) -> CoefficientRing:
    """Parse 'z', 'f2', 'fp:3', 'zmod:6' (the CLI spellings)."""
    t = text.strip().lower()
    if t in ("z", "zz", "int", "integers"):
        return ZZ
    m = re.fullmatch(r"f(?:p:)?(\d+)", t)
    if m:
        return prime_field(int(m.group(1)))
    m = re.fullmatch(r"zmod:(\d+)", t)
    if m:
        return integers_mod(int(m.group(1)))
    raise ValueError(f"unknown ring {text!r}")


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, math.isqrt(n) + 1))


# ---------------------------------------------------------------------------
# monomial primitives


def popcount(x: int) -> int:
    return bin(x).count("1")


def indices(mask: int) -> List[int]:
    """Indices of a monomial in increasing order."""
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def mask_of(idx: Iterable[int]) -> int:
    m = 0
    for i in idx:
        if m >> i & 1:
            raise ValueError(f"repeated index {i}")
        m |= 1 << i
    return m


def partner(i: int) -> int:
    """Symplectic partner of index i >= 1: 2j-1 <-> 2j."""
    return i + 1 if i % 2 else i - 1


def pairing(a: int, b: int) -> int:
    """omega(e^a, e^b) on basis vectors."""
    if a == 0 or b == 0:
        return 0
    if a % 2 and b == a + 1:
        return 1
    if b % 2 and a == b + 1:
        return -1
    return 0


def wedge_sign(a: int, b: int) -> int:
    """Sign of e^A ^ e^B relative to e^{A|B}; 0 if A and B overlap."""
    if a & b:
        return 0
    inv = 0
    while b:
        low = b & -b
        # elements of A above this element of B
        inv += popcount(a & ~((low << 1) - 1))
        b ^= low
    return -1 if inv & 1 else 1


def contract_index(j: int, s: int) -> Tuple[int, int]:
    """iota_{e^j}(e^S) as (sign, mask); sign 0 means the result vanishes."""
    if j == 0:
        return 0, 0
    p = partner(j)
    if not s >> p & 1:
        return 0, 0
    below = popcount(s & ((1 << p) - 1))
    sign = pairing(p, j) * (-1 if below & 1 else 1)
    return sign, s & ~(1 << p)


def contract_monomial(t: int, s: int) -> Tuple[int, int]:
    """iota_{e^T}(e^S) as (sign, mask); iota_{x^y} = iota_x o iota_y."""
    sign = 1
    for j in reversed(indices(t)):
        c, s = contract_index(j, s)
        if not c:
            return 0, 0
        sign *= c
    return sign, s


@lru_cache(maxsize=None)
def basis(n_indices: Tuple[int, ...], degrees: Tuple[int, ...]) -> Tuple[int, ...]:
    """Monomials over the given index set with the given degrees, ascending bitmask."""
    out = []
    for k in degrees:
        for c in combinations(n_indices, k):
            out.append(mask_of(c))
    return tuple(sorted(out))


def index_set(g: int, with_zero: bool = False) -> Tuple[int, ...]:
    return tuple(range(0 if with_zero else 1, 2 * g + 1))


def monomial_basis(g: int, degrees, with_zero: bool = False) -> Tuple[int, ...]:
    """Canonical basis of the span of Lambda^k, k in degrees; ascending bitmask."""
    if isinstance(degrees, int):
        degrees = (degrees,)
    n = 2 * g + (1 if with_zero else 0)
    degs = tuple(sorted(set(k for k in degrees if 0 <= k <= n)))
    return basis(index_set(g, with_zero), degs)


def parity_degrees(g: int, parity: int, with_zero: bool = False) -> Tuple[int, ...]:
    n = 2 * g + (1 if with_zero else 0)
    return tuple(range(parity % 2, n + 1, 2))


# ---------------------------------------------------------------------------
# multivectors


class Multivector:
    """A sparse element of Lambda^*(R^{2g}) or Lambda^*(R^{2g+1}).

    ``terms`` maps monomial bitmasks to nonzero coefficients.  Values are
    treated as immutable; every operation returns a new object.
    """

    __slots__ = ("g", "with_zero", "ring", "terms")

    def __init__(self, g: int, terms=None, ring: CoefficientRing = ZZ,
                 with_zero: bool = False):
        if g < 0 or 2 * g + 1 > MAX_INDEX:
            raise ValueError(f"genus {g} out of range")
        self.g = g
        self.with_zero = with_zero
        self.ring = ring
        clean: Dict[int, int] = {}
        top = 1 << (2 * g + 1)
        for m, c in (terms or {}).items():
            if m < 0 or m >= top or (m & 1 and not with_zero):
                raise ValueError(f"monomial {indices(m)} outside ambient space")
            c = ring.reduce(c)
            if c:
                clean[m] = c
        self.terms = clean

    # constructors
    @classmethod
    def one(cls, g, ring=ZZ, with_zero=False):
        return cls(g, {0: 1}, ring, with_zero)

    @classmethod
    def zero(cls, g, ring=ZZ, with_zero=False):
        return cls(g, {}, ring, with_zero)

    @classmethod
    def basis_vector(cls, g, idx: Sequence[int], coeff=1, ring=ZZ, with_zero=False):
        """coeff * e^{i_1} ^ ... ^ e^{i_k} in the given (not necessarily sorted) order."""
        sign = 1
        m = 0
        for i in idx:
            s = wedge_sign(m, 1 << i)
            if not s:
                return cls.zero(g, ring, with_zero)
            sign *= s
            m |= 1 << i
        return cls(g, {m: sign * coeff}, ring, with_zero)

    @classmethod
    def e(cls, g, *idx, ring=ZZ, with_zero=False):
        return cls.basis_vector(g, idx, 1, ring, with_zero)

    def _like(self, terms) -> "Multivector":
        return Multivector(self.g, terms, self.ring, self.with_zero)

    def _check(self, other: "Multivector"):
        if (self.g, self.with_zero, self.ring) != (other.g, other.with_zero, other.ring):
            raise DimensionMismatch(
                f"cannot combine Lambda(R^{self.ambient_dim}) over {self.ring} "
                f"with Lambda(R^{other.ambient_dim}) over {other.ring}")

    @property
    def ambient_dim(self) -> int:
        return 2 * self.g + (1 if self.with_zero else 0)

    # queries
    def degrees(self) -> List[int]:
        return sorted({popcount(m) for m in self.terms})

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    @property
    def degree(self) -> int:
        d = self.degrees()
        if len(d) != 1:
            raise ValueError("not a nonzero homogeneous element")
        return d[0]

    def component(self, k: int) -> "Multivector":
        return self._like({m: c for m, c in self.terms.items() if popcount(m) == k})

    def coefficient(self, idx: Sequence[int]) -> int:
        return self.terms.get(mask_of(idx), 0)

    def content(self) -> int:
        """gcd of the coefficients (0 for the zero vector)."""
        return math.gcd(*self.terms.values()) if self.terms else 0

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, int):
            return self.terms == ({0: self.ring.reduce(other)} if self.ring.reduce(other) else {})
        if not isinstance(other, Multivector):
            return NotImplemented
        return (self.g, self.with_zero, self.ring, self.terms) == (
            other.g, other.with_zero, other.ring, other.terms)

    def __hash__(self):
        return hash((self.g, self.with_zero, self.ring, frozenset(self.terms.items())))

    # linear structure
    def __add__(self, other):
        if isinstance(other, int):
            other = self._like({0: other})
        self._check(other)
        t = dict(self.terms)
        for m, c in other.terms.items():
            t[m] = t.get(m, 0) + c
        return self._like(t)

    __radd__ = __add__

    def __neg__(self):
        return self._like({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, k):
        if isinstance(k, Multivector):
            return wedge(self, k)
        return self._like({m: k * c for m, c in self.terms.items()})

    def __rmul__(self, k):
        return self._like({m: k * c for m, c in self.terms.items()})

    def exact_div(self, k: int) -> "Multivector":
        if self.ring.modulus:
            raise ValueError("exact division only over Z")
        for c in self.terms.values():
            if c % k:
                raise ArithmeticError(f"coefficient {c} not divisible by {k}")
        return self._like({m: c // k for m, c in self.terms.items()})

    def __xor__(self, other):
        return wedge(self, other)

    def reduce(self, ring: CoefficientRing) -> "Multivector":
        return Multivector(self.g, self.terms, ring, self.with_zero)

    def __iter__(self) -> Iterator[Tuple[int, int]]:
        return iter(sorted(self.terms.items()))

    def __repr__(self):
        return f"Multivector(g={self.g}, {format_multivector(self)!r})"

    def __str__(self):
        return format_multivector(self)


def wedge(a: Multivector, b: Multivector) -> Multivector:
    a._check(b)
    out: Dict[int, int] = {}
    for ma, ca in a.terms.items():
        for mb, cb in b.terms.items():
            s = wedge_sign(ma, mb)
            if s:
                m = ma | mb
                out[m] = out.get(m, 0) + s * ca * cb
    return a._like(out)


def contract_vector(v: Multivector, x: Multivector) -> Multivector:
    """iota_v(x) for a degree-one v, via the symplectic pairing."""
    v._check(x)
    if v and v.degrees() != [1]:
        raise ValueError("contract_vector needs a degree-one contractor")
    return contract_form(v, x)


def contract_form(x: Multivector, z: Multivector) -> Multivector:
    """iota_x(z), extended from vectors by iota_{a^b} = iota_a o iota_b.

    Linear in both arguments; x may be inhomogeneous.  Note iota_x is not a
    derivation once |x| > 1.
    """
    x._check(z)
    out: Dict[int, int] = {}
    for mt, ct in x.terms.items():
        for ms, cs in z.terms.items():
            s, m = contract_monomial(mt, ms)
            if s:
                out[m] = out.get(m, 0) + s * ct * cs
    return x._like(out)


def omega(g: int, ring: CoefficientRing = ZZ, with_zero: bool = False) -> Multivector:
    return Multivector(g, {(1 << (2 * i - 1)) | (1 << (2 * i)): 1 for i in range(1, g + 1)},
                       ring, with_zero)


def omega_power(g: int, r: int, ring: CoefficientRing = ZZ,
                with_zero: bool = False) -> Multivector:
    """The divided power omega^r / r!, computed over Z and then reduced."""
    if r < 0 or r > g:
        return Multivector.zero(g, ring, with_zero)
    return _omega_power_z(g, r, with_zero).reduce(ring)


@lru_cache(maxsize=None)
def _omega_power_z(g: int, r: int, with_zero: bool) -> Multivector:
    w = omega(g, ZZ, with_zero)
    p = Multivector.one(g, ZZ, with_zero)
    for _ in range(r):
        p = p ^ w
    try:
        return p.exact_div(math.factorial(r))
    except ArithmeticError as exc:  # pragma: no cover - would be an arithmetic bug
        raise AssertionError(f"omega^{r} not divisible by {r}!") from exc


def exp_omega_minus_one(g: int, ring: CoefficientRing = ZZ) -> Multivector:
    """e^omega - 1 = omega_1 + omega_2 + ... + omega_g."""
    out = Multivector.zero(g, ring)
    for r in range(1, g + 1):
        out = out + omega_power(g, r, ring)
    return out


def star(x: Multivector) -> Multivector:
    """Hodge-Lefschetz duality *x = iota_x(omega_g): Lambda^{g-k} -> Lambda^{g+k}."""
    if x.with_zero:
        raise DimensionMismatch("star is defined on Lambda(R^{2g}) only")
    return contract_form(x, omega_power(x.g, x.g, x.ring))


# ---------------------------------------------------------------------------
# symplectic group action


def transvection_matrix(g: int, v: Sequence[int], scale: int = 1) -> List[List[int]]:
    """Matrix of t(x) = x + scale * omega(x, v) v on R^{2g}, indices 1..2g."""
    n = 2 * g
    vv = [0] + list(v)
    if len(vv) != n + 1:
        raise ValueError("vector length must be 2g")
    mat = [[int(i == j) for j in range(n)] for i in range(n)]
    for j in range(1, n + 1):
        # column j is the image of e^j
        w = sum(pairing(j, b) * vv[b] for b in range(1, n + 1))
        if w:
            for i in range(1, n + 1):
                mat[i - 1][j - 1] += scale * w * vv[i]
    return mat


def act_on_monomial(mat: Sequence[Sequence[int]], g: int, m: int,
                    ring: CoefficientRing = ZZ) -> Multivector:
    """Image of e^S under the induced action of a (2g x 2g) matrix on Lambda^*."""
    out = Multivector.one(g, ring)
    for j in indices(m):
        col = {1 << (i + 1): mat[i][j - 1] for i in range(2 * g) if mat[i][j - 1]}
        out = out ^ Multivector(g, col, ring)
    return out


def act(mat, x: Multivector) -> Multivector:
    out = Multivector.zero(x.g, x.ring)
    for m, c in x.terms.items():
        out = out + c * act_on_monomial(mat, x.g, m, x.ring)
    return out


def is_symplectic(mat: Sequence[Sequence[int]], g: int, modulus: int = 0) -> bool:
    n = 2 * g
    for a in range(n):
        for b in range(n):
            s = 0
            for i in range(n):
                for j in range(n):
                    p = pairing(i + 1, j + 1)
                    if p:
                        s += mat[i][a] * mat[j][b] * p
            want = pairing(a + 1, b + 1)
            if (s - want) % modulus if modulus else s != want:
                return False
    return True


# ---------------------------------------------------------------------------
# operator matrices


def _coerce_degrees(g, degrees, with_zero=False):
    if degrees == "even":
        return parity_degrees(g, 0, with_zero)
    if degrees == "odd":
        return parity_degrees(g, 1, with_zero)
    if degrees == "all":
        return tuple(range(2 * g + 2 if with_zero else 2 * g + 1))
    if isinstance(degrees, int):
        return (degrees,)
    return tuple(degrees)


def operator_matrix(op: str, g: int, source, target=None, *, j: int = 1,
                    ring: CoefficientRing = ZZ, form: Optional[Multivector] = None,
                    mat=None, with_zero: bool = False):
    """Matrix of a named linear operator in the monomial bases.

    ``op`` is one of ``wedge_omega`` (wedge with omega_j), ``contract_omega``
    (contraction by omega_j), ``contract_exp`` (contraction by e^omega - 1),
    ``wedge_exp``, ``star``, ``wedge`` / ``contract`` (by an explicit ``form``),
    or ``action`` (pushforward by the 2g x 2g matrix ``mat``).

    Columns follow ``monomial_basis(g, source)``; rows follow
    ``monomial_basis(g, target)``, which defaults to every degree the operator
    can reach.  Entries are exact and reduced in ``ring``.
    """
    from .linalg.intmatrix import IntMatrix

    src_degrees = _coerce_degrees(g, source, with_zero)
    src = monomial_basis(g, src_degrees, with_zero)

    if op == "wedge_omega":
        form, kind = omega_power(g, j, ring, with_zero), "wedge"
    elif op == "contract_omega":
        form, kind = omega_power(g, j, ring, with_zero), "contract"
    elif op == "contract_exp":
        form, kind = exp_omega_minus_one(g, ring), "contract"
    elif op == "wedge_exp":
        form, kind = exp_omega_minus_one(g, ring), "wedge"
    elif op == "star":
        form, kind = omega_power(g, g, ring), "star"
    elif op in ("wedge", "contract"):
        if form is None:
            raise ValueError(f"operator {op!r} needs a form")
        kind = op
    elif op == "action":
        if mat is None:
            raise ValueError("operator 'action' needs a matrix")
        kind = "action"
    else:
        raise ValueError(f"unknown operator {op!r}")

    columns = []
    for s in src:
        if kind == "wedge":
            img = {}
            for m, c in form.terms.items():
                sg = wedge_sign(m, s)
                if sg:
                    img[m | s] = img.get(m | s, 0) + sg * c
        elif kind == "contract":
            img = {}
            for m, c in form.terms.items():
                sg, r = contract_monomial(m, s)
                if sg:
                    img[r] = img.get(r, 0) + sg * c
        elif kind == "star":
            top = next(iter(form.terms))
            sg, r = contract_monomial(s, top)
            img = {r: sg} if sg else {}
        else:
            img = act_on_monomial(mat, g, s, ring).terms
        columns.append({m: ring.reduce(c) for m, c in img.items() if ring.reduce(c)})

    if target is None:
        reached = sorted({popcount(m) for col in columns for m in col})
        if kind == "star":
            reached = sorted({2 * g - k for k in src_degrees})
        elif kind == "action":
            reached = list(src_degrees)
        tgt_degrees = tuple(reached)
    else:
        tgt_degrees = _coerce_degrees(g, target, with_zero)
    tgt = monomial_basis(g, tgt_degrees, with_zero)
    pos = {m: i for i, m in enumerate(tgt)}
    cols = []
    for col in columns:
        c = {}
        for m, v in col.items():
            if m not in pos:
                raise ValueError(f"image leaves the target degrees {tgt_degrees}")
            c[pos[m]] = v
        cols.append(c)
    return IntMatrix.from_columns(len(tgt), cols)


def to_vector(x: Multivector, basis_masks: Sequence[int]) -> Dict[int, int]:
    """Sparse coordinate vector of x in a monomial basis."""
    pos = {m: i for i, m in enumerate(basis_masks)}
    out = {}
    for m, c in x.terms.items():
        if m not in pos:
            raise ValueError(f"{indices(m)} not in the given basis")
        out[pos[m]] = c
    return out


def from_vector(g: int, vec, basis_masks: Sequence[int], ring=ZZ,
                with_zero=False) -> Multivector:
    if isinstance(vec, dict):
        items = vec.items()
    else:
        items = enumerate(vec)
    return Multivector(g, {basis_masks[i]: c for i, c in items if c}, ring, with_zero)


# ---------------------------------------------------------------------------
# text format:  2 e{1,2} - e{3,4} + 1

_TERM = re.compile(r"\s*([+-])?\s*(\d+)?\s*(?:\*\s*)?(e\{\s*[\d,\s]*\})?\s*")


def parse_multivector(text: str, g: int, ring: CoefficientRing = ZZ,
                      with_zero: bool = False) -> Multivector:
    """Parse the CLI text format, e.g. ``2 e{1,2} - e{3,4}`` or ``1``."""
    pos = 0
    out = Multivector.zero(g, ring, with_zero)
    text = text.strip()
    if not text:
        raise ValueError("empty multivector")
    first = True
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse {text[pos:]!r}")
        sign, num, mono = m.groups()
        if sign is None and not first:
            raise ValueError(f"missing operator before {text[pos:]!r}")
        if num is None and mono is None:
            raise ValueError(f"empty term in {text!r}")
        coeff = int(num) if num is not None else 1
        if sign == "-":
            coeff = -coeff
        if mono is None:
            out = out + coeff
        else:
            inner = mono[2:-1].strip()
            idx = [int(t) for t in inner.split(",") if t.strip()] if inner else []
            out = out + Multivector.basis_vector(g, idx, coeff, ring, with_zero)
        pos = m.end()
        first = False
    return out


def format_multivector(x: Multivector) -> str:
    if not x.terms:
        return "0"
    parts = []
    for m, c in sorted(x.terms.items(), key=lambda t: (popcount(t[0]), indices(t[0]))):
        mono = "e{" + ",".join(map(str, indices(m))) + "}" if m else ""
        a = abs(c)
        if mono:
            body = mono if a == 1 else f"{a} {mono}"
        else:
            body = str(a)
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(("- " if c < 0 else "+ ") + body)
    return " ".join(parts)


@lru_cache(maxsize=None)
def degree_operator(op: str, g: int, j: int, k: int, modulus: int = 0):
    """Cached matrix of wedge or contraction by omega_j from Lambda^k.

    ``op`` is ``"wedge"`` (target Lambda^{k+2j}) or ``"contract"`` (target
    Lambda^{k-2j}); an out-of-range target gives a matrix with no rows.
    """
    ring = CoefficientRing(modulus, _is_prime(modulus)) if modulus else ZZ
    if op == "wedge":
        return operator_matrix("wedge_omega", g, k, (k + 2 * j,), j=j, ring=ring)
    if op == "contract":
        return operator_matrix("contract_omega", g, k, (k - 2 * j,), j=j, ring=ring)
    raise ValueError(f"unknown operator {op!r}")


def dim_exterior(g: int, k: int) -> int:
    n = 2 * g
    return math.comb(n, k) if 0 <= k <= n else 0


def primitive_rank(g: int, k: int) -> int:
    """rank P^k = C(2g,k) - C(2g,k-2) for 0 <= k <= g, else 0."""
    if k < 0 or k > g:
        return 0
    return dim_exterior(g, k) - dim_exterior(g, k - 2)
