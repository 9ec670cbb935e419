"""Words of Q^n, Hamming distance, neighbor iteration, and explicit codes.

A word is an integer in [0, q^n): digit i of the base-q expansion is the
symbol at coordinate i (coordinate 0 is the lowest-order digit).  Display
strings list coordinate 0 first.  All reported member lists are sorted on
this encoding so output is reproducible.

Operations that materialize the full vertex set (one entry per vertex) check
the space against a configurable cap, 2^26 vertices by default, to keep
desk-scale memory within ~64 MB.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .algebra import Alphabet, GFMatrix, alphabet, gf_identity, nullspace_basis, rref
from .errors import (
    CapacityError,
    FieldRequiredError,
    NotAdditiveError,
    UndefinedMinimumDistanceError,
)

DEFAULT_VERTEX_CAP = 1 << 26
_TABLE_CAP = 1 << 17

_SYMBOLS = "0123456789abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ+/"


@dataclass(frozen=True)
class AmbientSpace:
    """The Hamming graph H(n, q): length-n words over a size-q alphabet."""

    n: int
    alphabet: Alphabet
    max_vertices: int = DEFAULT_VERTEX_CAP

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("word length must be >= 1")

    @property
    def q(self) -> int:
        return self.alphabet.q

    @property
    def size(self) -> int:
        return self.q**self.n

    @property
    def valency(self) -> int:
        return self.n * (self.q - 1)

    def require_materializable(self, what: str = "operation") -> None:
        if self.size > self.max_vertices:
            raise CapacityError(
                f"{what} would materialize {self.size} vertices "
                f"(cap {self.max_vertices}); raise max_vertices explicitly to proceed"
            )


def ambient(n: int, q: int, max_vertices: int = DEFAULT_VERTEX_CAP) -> AmbientSpace:
    return AmbientSpace(n=n, alphabet=alphabet(q), max_vertices=max_vertices)


def encode(digits: Sequence[int], q: int) -> int:
    word = 0
    for d in reversed(digits):
        if not (0 <= d < q):
            raise ValueError(f"symbol {d} out of range for q={q}")
        word = word * q + d
    return word


def decode(word: int, n: int, q: int) -> tuple[int, ...]:
    out = []
    for _ in range(n):
        word, d = divmod(word, q)
        out.append(d)
    if word:
        raise ValueError("encoding out of range")
    return tuple(out)


def word_string(word: int, space: AmbientSpace) -> str:
    return "".join(_SYMBOLS[d] for d in decode(word, space.n, space.q))


def weight(word: int, space: AmbientSpace) -> int:
    q, w = space.q, 0
    while word:
        word, d = divmod(word, q)
        if d:
            w += 1
    return w


def distance(u: int, v: int, space: AmbientSpace) -> int:
    """Number of coordinates where u and v differ."""
    q = space.q
    if q == 2:
        return bin(u ^ v).count("1")
    d = 0
    while u or v:
        u, du = divmod(u, q)
        v, dv = divmod(v, q)
        if du != dv:
            d += 1
    return d


def word_add(u: int, v: int, space: AmbientSpace) -> int:
    alpha = space.alphabet
    if alpha.is_field and alpha.p == 2:
        return u ^ v  # digit-wise GF(2^e) addition never carries
    q, out, mult = space.q, 0, 1
    for _ in range(space.n):
        u, du = divmod(u, q)
        v, dv = divmod(v, q)
        out += alpha.add(du, dv) * mult
        mult *= q
    return out


def word_neg(u: int, space: AmbientSpace) -> int:
    alpha = space.alphabet
    if alpha.is_field and alpha.p == 2:
        return u
    q, out, mult = space.q, 0, 1
    for _ in range(space.n):
        u, du = divmod(u, q)
        out += alpha.neg(du) * mult
        mult *= q
    return out


def word_sub(u: int, v: int, space: AmbientSpace) -> int:
    return word_add(u, word_neg(v, space), space)


def word_scale(u: int, c: int, space: AmbientSpace) -> int:
    alpha = space.alphabet
    q, out, mult = space.q, 0, 1
    for _ in range(space.n):
        u, du = divmod(u, q)
        out += alpha.mul(du, c) * mult
        mult *= q
    return out


def neighbors(u: int, space: AmbientSpace) -> list[int]:
    """The n(q-1) words at distance 1, coordinate-major then symbol-ascending."""
    q, n = space.q, space.n
    if q == 2:
        return [u ^ (1 << i) for i in range(n)]
    out = []
    base = u
    mult = 1
    for _ in range(n):
        base, d = divmod(base, q)
        anchor = u - d * mult
        out.extend(anchor + s * mult for s in range(q) if s != d)
        mult *= q
    return out


_neighbor_tables: dict[tuple[int, int], list] = {}


def neighbor_table(space: AmbientSpace):
    """Full adjacency table of H(n, q); cached, small spaces only."""
    key = (space.n, space.q)
    table = _neighbor_tables.get(key)
    if table is None:
        if space.size > _TABLE_CAP:
            raise CapacityError(f"refusing to tabulate {space.size} neighbor lists")
        table = [neighbors(v, space) for v in range(space.size)]
        _neighbor_tables[key] = table
    return table


def sphere_size(space: AmbientSpace, radius: int) -> int:
    from math import comb

    return sum(comb(space.n, i) * (space.q - 1) ** i for i in range(radius + 1))


# -- codes ---------------------------------------------------------------------


@dataclass(frozen=True)
class LinearStructure:
    parity_check: GFMatrix
    generators: GFMatrix
    rank: int


@dataclass(frozen=True)
class Code:
    """A nonempty set of words of H(n, q), optionally with linear structure."""

    ambient: AmbientSpace
    members: tuple[int, ...]
    linear: LinearStructure | None = None

    def __post_init__(self):
        if not self.members:
            raise ValueError("codes are nonempty")
        size = self.ambient.size
        prev = -1
        for w in self.members:
            if w <= prev:
                raise ValueError("members must be strictly sorted")
            prev = w
        if prev >= size:
            raise ValueError("member encoding out of range")
        object.__setattr__(self, "_member_set", frozenset(self.members))

    @property
    def size(self) -> int:
        return len(self.members)

    @property
    def is_linear(self) -> bool:
        return self.linear is not None

    def __contains__(self, word: int) -> bool:
        return word in self._member_set

    def member_set(self) -> frozenset:
        return self._member_set

    def word_strings(self) -> list[str]:
        return [word_string(w, self.ambient) for w in self.members]


def _normalize_words(space: AmbientSpace, words: Iterable) -> list[int]:
    out = []
    for w in words:
        if isinstance(w, int):
            if not (0 <= w < space.size):
                raise ValueError(f"encoding {w} out of range")
            out.append(w)
        else:
            digits = list(w)
            if len(digits) != space.n:
                raise ValueError(f"word {w} has length {len(digits)}, expected {space.n}")
            out.append(encode(digits, space.q))
    return out


def code_from_words(space: AmbientSpace, words: Iterable, *, additive: bool | None = None) -> Code:
    encs = _normalize_words(space, words)
    if len(set(encs)) != len(encs):
        raise ValueError("duplicate words")
    code = Code(space, tuple(sorted(encs)))
    if additive and not is_additive(code):
        raise NotAdditiveError("declared-additive word set is not closed under subtraction")
    return code


def is_additive(code: Code) -> bool:
    """Closure under subtraction (hence a subgroup of Q^n)."""
    if code.is_linear:
        return True
    if 0 not in code:
        return False
    members = code.members
    space = code.ambient
    return all(word_sub(u, v, space) in code for u in members for v in members)


def _span(space: AmbientSpace, basis: GFMatrix) -> list[int]:
    """All GF(q)-linear combinations of the basis rows, as encodings."""
    q = space.q
    basis_words = [encode(row, q) for row in basis.rows]
    span = [0]
    for b in basis_words:
        multiples = [word_scale(b, c, space) for c in range(q)]
        span = [word_add(w, m, space) for w in span for m in multiples]
    if len(set(span)) != len(span):
        raise ValueError("basis rows are linearly dependent")
    return sorted(span)


def code_from_parity_check(space: AmbientSpace, h: GFMatrix) -> Code:
    """The code {x : H x^T = 0}.  The given H is kept verbatim."""
    if not space.alphabet.is_field:
        raise FieldRequiredError("parity-check codes need a field alphabet")
    if h.alphabet != space.alphabet or h.ncols != space.n:
        raise ValueError("parity check does not match the ambient space")
    gens = nullspace_basis(h)
    rk = space.n - gens.nrows
    if space.q ** gens.nrows > space.max_vertices:
        raise CapacityError("code is too large to materialize")
    members = _span(space, gens)
    return Code(space, tuple(members), LinearStructure(h, gens, rk))


def code_from_generators(space: AmbientSpace, g: GFMatrix) -> Code:
    if not space.alphabet.is_field:
        raise FieldRequiredError("generator codes need a field alphabet")
    if g.alphabet != space.alphabet or g.ncols != space.n:
        raise ValueError("generator matrix does not match the ambient space")
    basis, k, _ = rref(g)
    basis = GFMatrix(g.alphabet, basis.rows[:k])
    h = nullspace_basis(basis) if k else nullspace_basis(g)
    if space.q**k > space.max_vertices:
        raise CapacityError("code is too large to materialize")
    members = _span(space, basis)
    return Code(space, tuple(members), LinearStructure(h, basis, space.n - k))


def linearize(code: Code) -> Code:
    """Attach linear structure to a word-listed code that is in fact linear.

    Computes a generator basis by row-reducing the member words; fails if the
    span does not reproduce the members exactly.
    """
    if code.is_linear:
        return code
    space = code.ambient
    if not space.alphabet.is_field:
        raise FieldRequiredError("linearization needs a field alphabet")
    rows = [decode(w, space.n, space.q) for w in code.members]
    reduced, k, _ = rref(GFMatrix(space.alphabet, tuple(rows)))
    basis = GFMatrix(space.alphabet, reduced.rows[:k])
    rebuilt = code_from_generators(space, basis) if k else code_from_words(space, [0])
    if rebuilt.members != code.members:
        raise ValueError("code is not linear")
    if k == 0:
        h = gf_identity(space.alphabet, space.n)
        return Code(space, code.members, LinearStructure(h, basis, space.n))
    return rebuilt


def minimum_distance(code: Code) -> int:
    """Least pairwise distance; weight enumeration in the linear case."""
    if code.size < 2:
        raise UndefinedMinimumDistanceError("need at least two codewords")
    space = code.ambient
    if code.is_linear or (0 in code and is_additive(code)):
        return min(weight(w, space) for w in code.members if w)
    members = code.members
    return min(
        distance(members[i], members[j], space)
        for i in range(len(members))
        for j in range(i + 1, len(members))
    )
