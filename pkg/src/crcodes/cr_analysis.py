"""Distance partitions, complete-regularity certificates, and exact spectra.

The spectrum of a certified code is computed entirely in integer arithmetic:
candidate eigenvalues are the ambient Hamming eigenvalues n(q-1) - q*j, and
the characteristic polynomial of the tridiagonal quotient matrix is evaluated
with the three-term recurrence

    p_{-1} = 1,  p_0 = a_0 - x,  p_i = (a_i - x) p_{i-1} - b_{i-1} g_i p_{i-2}

so there are no tolerances anywhere.  The candidate scan is complete because
the quotient matrix of an equitable partition only has graph eigenvalues.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .errors import SpectrumError, TheoremViolationError
from .hamming_space import (
    Code,
    code_from_words,
    neighbor_table,
    neighbors,
    ambient,
    _TABLE_CAP,
)


@dataclass(frozen=True)
class DistancePartition:
    """Classes C_0..C_rho of H(n,q) by distance to a code."""

    code: Code
    class_of: bytes
    rho: int
    class_sizes: tuple[int, ...]

    @property
    def ambient(self):
        return self.code.ambient

    def class_members(self, i: int) -> list[int]:
        return [v for v, c in enumerate(self.class_of) if c == i]


def distance_partition(code: Code) -> DistancePartition:
    """Multi-source BFS from all codewords; class_of[x] = d(x, C)."""
    space = code.ambient
    space.require_materializable("distance partition")
    size = space.size
    dist = bytearray([255]) * size
    frontier = deque(code.members)
    for w in code.members:
        dist[w] = 0
    use_table = size <= _TABLE_CAP
    table = neighbor_table(space) if use_table else None
    while frontier:
        v = frontier.popleft()
        d = dist[v] + 1
        for w in table[v] if use_table else neighbors(v, space):
            if dist[w] == 255:
                dist[w] = d
                frontier.append(w)
    rho = max(dist)
    sizes = [0] * (rho + 1)
    for d in dist:
        sizes[d] += 1
    return DistancePartition(code, bytes(dist), rho, tuple(sizes))


def covering_radius(code: Code) -> int:
    return distance_partition(code).rho


@dataclass(frozen=True)
class IntersectionNumbers:
    """Per-class neighbor counts (gamma into class i-1, alpha same, beta i+1)."""

    gamma: tuple[int, ...]
    alpha: tuple[int, ...]
    beta: tuple[int, ...]

    @property
    def rho(self) -> int:
        return len(self.gamma) - 1

    @property
    def k(self) -> int:
        return self.gamma[0] + self.alpha[0] + self.beta[0]

    def validate(self) -> None:
        k = self.k
        rho = self.rho
        assert self.gamma[0] == 0 and self.beta[rho] == 0
        for i in range(rho + 1):
            if self.gamma[i] + self.alpha[i] + self.beta[i] != k:
                raise TheoremViolationError(
                    f"row sum broken at class {i}", witness=self)
        assert all(g >= 1 for g in self.gamma[1:])
        assert all(b >= 1 for b in self.beta[:rho])


@dataclass(frozen=True)
class CrWitness:
    """Two vertices of one distance class with conflicting neighbor counts."""

    class_index: int
    direction: str  # "previous" | "same" | "next"
    vertex_a: int
    count_a: int
    vertex_b: int
    count_b: int

    def to_json(self) -> dict:
        return {
            "class": self.class_index,
            "direction": self.direction,
            "vertex_a": self.vertex_a,
            "count_a": self.count_a,
            "vertex_b": self.vertex_b,
            "count_b": self.count_b,
        }


@dataclass(frozen=True)
class CrCertificate:
    completely_regular: bool
    partition: DistancePartition
    numbers: IntersectionNumbers | None = None
    witness: CrWitness | None = None


_DIRECTIONS = ("previous", "same", "next")


def certify_completely_regular(code: Code, partition: DistancePartition | None = None) -> CrCertificate:
    """Check the distance partition is equitable; witness the first conflict."""
    part = partition if partition is not None else distance_partition(code)
    space = code.ambient
    dist = part.class_of
    rho = part.rho
    reference: list[tuple[int, int, int] | None] = [None] * (rho + 1)
    ref_vertex = [0] * (rho + 1)
    use_table = space.size <= _TABLE_CAP
    table = neighbor_table(space) if use_table else None
    for v in range(space.size):
        c = dist[v]
        prev = same = nxt = 0
        for w in table[v] if use_table else neighbors(v, space):
            dw = dist[w]
            if dw == c:
                same += 1
            elif dw == c - 1:
                prev += 1
            else:
                nxt += 1
        counts = (prev, same, nxt)
        ref = reference[c]
        if ref is None:
            reference[c] = counts
            ref_vertex[c] = v
        elif ref != counts:
            which = next(i for i in range(3) if ref[i] != counts[i])
            witness = CrWitness(
                class_index=c,
                direction=_DIRECTIONS[which],
                vertex_a=ref_vertex[c],
                count_a=ref[which],
                vertex_b=v,
                count_b=counts[which],
            )
            return CrCertificate(False, part, witness=witness)
    numbers = IntersectionNumbers(
        gamma=tuple(reference[i][0] for i in range(rho + 1)),
        alpha=tuple(reference[i][1] for i in range(rho + 1)),
        beta=tuple(reference[i][2] for i in range(rho + 1)),
    )
    numbers.validate()
    return CrCertificate(True, part, numbers=numbers)


def recount_witness(code: Code, witness: CrWitness) -> tuple[int, int]:
    """Replay a non-CR witness by direct neighbor counting, no class map reuse."""
    space = code.ambient
    members = code.members

    def dist_to_code(v):
        from .hamming_space import distance

        return min(distance(v, m, space) for m in members)

    offset = {"previous": -1, "same": 0, "next": 1}[witness.direction]
    target = witness.class_index + offset
    counts = []
    for v in (witness.vertex_a, witness.vertex_b):
        assert dist_to_code(v) == witness.class_index
        counts.append(sum(1 for w in neighbors(v, space) if dist_to_code(w) == target))
    return tuple(counts)


# -- quotient matrix and spectra -----------------------------------------------


@dataclass(frozen=True)
class QuotientMatrix:
    """The (rho+1)-square tridiagonal matrix of intersection numbers."""

    matrix: tuple[tuple[int, ...], ...]
    numbers: IntersectionNumbers

    @property
    def rho(self) -> int:
        return len(self.matrix) - 1

    @property
    def k(self) -> int:
        return self.numbers.k

    def to_lists(self) -> list[list[int]]:
        return [list(r) for r in self.matrix]


def quotient_matrix(numbers: IntersectionNumbers) -> QuotientMatrix:
    numbers.validate()
    rho = numbers.rho
    rows = []
    for i in range(rho + 1):
        row = [0] * (rho + 1)
        if i > 0:
            row[i - 1] = numbers.gamma[i]
        row[i] = numbers.alpha[i]
        if i < rho:
            row[i + 1] = numbers.beta[i]
        rows.append(tuple(row))
    return QuotientMatrix(tuple(rows), numbers)


def _charpoly_at(diag, sub, sup, x: int) -> int:
    """det(T - x I) for tridiagonal T given by its three bands."""
    p_prev, p = 1, diag[0] - x
    for i in range(1, len(diag)):
        p_prev, p = p, (diag[i] - x) * p - sup[i - 1] * sub[i - 1] * p_prev
    return p


def tridiagonal_eigenvalues(diag, sub, sup, candidates) -> list[int]:
    return [x for x in candidates if _charpoly_at(diag, sub, sup, x) == 0]


def code_spectrum(u: QuotientMatrix, space) -> tuple[int, ...]:
    """Eigenvalues of U by exact scan over the ambient eigenvalues n(q-1)-qj."""
    n, q = space.n, space.q
    numbers = u.numbers
    rho = u.rho
    diag = numbers.alpha
    sub = numbers.gamma[1:]
    sup = numbers.beta[:rho]
    candidates = [n * (q - 1) - q * j for j in range(n + 1)]
    roots = tridiagonal_eigenvalues(diag, sub, sup, candidates)
    if len(roots) != rho + 1:
        raise SpectrumError(
            f"found {len(roots)} ambient roots for a matrix of order {rho + 1}; "
            "the input is not the quotient matrix of a code in this space"
        )
    roots.sort(reverse=True)
    assert roots[0] == space.valency
    return tuple(roots)


def _charpoly_coefficients(diag, sub, sup) -> list[int]:
    """Coefficients of det(T - x I), ascending powers of x, exact integers."""
    p_prev = [1]
    p = [diag[0], -1]
    for i in range(1, len(diag)):
        # (diag[i] - x) * p  -  sup[i-1]*sub[i-1] * p_prev
        shifted = [0] + p
        term = [diag[i] * c for c in p] + [0]
        nxt = [t - s for t, s in zip(term, shifted)]
        w = sup[i - 1] * sub[i - 1]
        for j, c in enumerate(p_prev):
            nxt[j] -= w * c
        p_prev, p = p, nxt
    return p


def _poly_from_roots(roots) -> list[int]:
    out = [1]
    for r in roots:
        # multiply by (r - x), matching the det(T - xI) sign convention
        nxt = [0] * (len(out) + 1)
        for j, c in enumerate(out):
            nxt[j] += r * c
            nxt[j + 1] -= c
        out = nxt
    return out


def tridiagonal_formula_spectrum(k: int, gamma: int, beta: int, rho: int) -> tuple[int, ...]:
    """Spectrum {k - (gamma+beta)*i : 0 <= i <= rho} of the model tridiagonal
    matrix with sub-band i*gamma and super-band (rho-i)*beta, cross-verified
    against its exact characteristic polynomial.
    """
    if min(k, gamma, beta, rho) < 1:
        raise ValueError("k, gamma, beta, rho must be positive")
    diag = [k - i * gamma - (rho - i) * beta for i in range(rho + 1)]
    if min(diag) < 0:
        raise ValueError("parameters give a negative diagonal entry")
    sub = [i * gamma for i in range(1, rho + 1)]
    sup = [(rho - i) * beta for i in range(rho)]
    t = gamma + beta
    spectrum = tuple(k - t * i for i in range(rho + 1))
    for x in spectrum:
        if _charpoly_at(diag, sub, sup, x) != 0:
            raise TheoremViolationError(
                f"claimed eigenvalue {x} is not a root", witness=(k, gamma, beta, rho))
    if _charpoly_coefficients(diag, sub, sup) != _poly_from_roots(spectrum):
        raise TheoremViolationError(
            "characteristic polynomial does not factor over the claimed spectrum",
            witness=(k, gamma, beta, rho))
    return spectrum


def formula_matrix(k: int, gamma: int, beta: int, rho: int) -> tuple[tuple[int, ...], ...]:
    """The model matrix itself, for inspection and tests."""
    rows = []
    for i in range(rho + 1):
        row = [0] * (rho + 1)
        if i > 0:
            row[i - 1] = i * gamma
        row[i] = k - i * gamma - (rho - i) * beta
        if i < rho:
            row[i + 1] = (rho - i) * beta
        rows.append(tuple(row))
    return tuple(rows)


@dataclass(frozen=True)
class ArithmeticCertificate:
    """Whether the spectrum is an arithmetic progression with step q*t."""

    arithmetic: bool
    t: int | None
    degenerate: bool = False  # rho = 0: vacuously arithmetic, t unused

    def to_json(self) -> dict:
        return {"is": self.arithmetic, "t": self.t, "degenerate": self.degenerate}


def arithmetic_certificate(spectrum: tuple[int, ...], q: int) -> ArithmeticCertificate:
    if len(spectrum) == 1:
        return ArithmeticCertificate(True, 0, degenerate=True)
    gaps = {spectrum[i] - spectrum[i + 1] for i in range(len(spectrum) - 1)}
    if len(gaps) != 1:
        return ArithmeticCertificate(False, None)
    gap = gaps.pop()
    assert gap % q == 0  # eigenvalues all equal n(q-1) mod q
    return ArithmeticCertificate(True, gap // q)


@dataclass(frozen=True)
class BoundsReport:
    """Slack in the two eigenvalue inequalities (negative slack = violation).

    min_eigenvalue_slack:  alpha_0 - gamma_1 - eta_rho, the margin in the
        smallest-eigenvalue bound for completely regular partitions.
    arithmetic_covering_slack:  q*rho*t - (n(q-1) - alpha_0), defined only
        for arithmetic spectra with rho >= 1.
    """

    min_eigenvalue_slack: int | None
    arithmetic_covering_slack: int | None

    def to_json(self) -> dict:
        return {
            "min_eigenvalue_slack": self.min_eigenvalue_slack,
            "arithmetic_covering_slack": self.arithmetic_covering_slack,
        }


def eigenvalue_bounds(numbers: IntersectionNumbers, spectrum: tuple[int, ...],
                      arithmetic: ArithmeticCertificate, space) -> BoundsReport:
    rho = numbers.rho
    if rho == 0:
        return BoundsReport(None, None)
    eig_slack = numbers.alpha[0] - numbers.gamma[1] - spectrum[-1]
    arith_slack = None
    if arithmetic.arithmetic and not arithmetic.degenerate:
        arith_slack = space.q * rho * arithmetic.t - (space.valency - numbers.alpha[0])
    return BoundsReport(eig_slack, arith_slack)


# -- reduction -----------------------------------------------------------------


def free_coordinates(code: Code) -> list[int]:
    """Coordinates where the code is invariant under every symbol substitution."""
    space = code.ambient
    q = space.q
    out = []
    mult = 1
    for i in range(space.n):
        groups: dict[int, int] = {}
        for w in code.members:
            anchor = w - (w // mult % q) * mult
            groups[anchor] = groups.get(anchor, 0) + 1
        if all(c == q for c in groups.values()):
            out.append(i)
        mult *= q
    return out


def _drop_coordinate(word: int, i: int, q: int) -> int:
    mult = q**i
    low = word % mult
    high = word // (mult * q)
    return low + high * mult


def reduce_code(code: Code) -> tuple[Code, tuple[int, ...]]:
    """Strip free coordinates (lowest first) until none remain or n = 1.

    Returns the reduced code and the stripped coordinates as indices into the
    original word; is_reduced(C) iff the list is empty.
    """
    from .algebra import GFMatrix

    current = code
    stripped: list[int] = []
    index_map = list(range(code.ambient.n))
    while current.ambient.n >= 2:
        free = free_coordinates(current)
        if not free:
            break
        i = free[0]
        stripped.append(index_map.pop(i))
        space = current.ambient
        new_space = ambient(space.n - 1, space.q, space.max_vertices)
        members = sorted({_drop_coordinate(w, i, space.q) for w in current.members})
        if current.is_linear:
            h = current.linear.parity_check
            assert all(x == 0 for x in h.column(i))  # free coordinate has a zero column
            rows = tuple(r[:i] + r[i + 1:] for r in h.rows)
            if rows and rows[0]:
                reduced_h = GFMatrix(h.alphabet, rows)
                return_code = _relinearize(new_space, members, reduced_h)
                current = return_code
                continue
        current = code_from_words(new_space, members)
    return current, tuple(stripped)


def _relinearize(space, members, h):
    from .hamming_space import code_from_parity_check

    rebuilt = code_from_parity_check(space, h)
    assert list(rebuilt.members) == list(members)
    return rebuilt


def is_reduced(code: Code) -> bool:
    return not free_coordinates(code)


# -- one-stop analysis ----------------------------------------------------------


@dataclass(frozen=True)
class CodeAnalysis:
    """Everything the reports and classifiers consume, computed once."""

    code: Code
    certificate: CrCertificate
    delta: int | None
    reduced: bool
    quotient: QuotientMatrix | None
    spectrum: tuple[int, ...] | None
    arithmetic: ArithmeticCertificate | None
    bounds: BoundsReport | None

    @property
    def cr(self) -> bool:
        return self.certificate.completely_regular

    @property
    def numbers(self) -> IntersectionNumbers | None:
        return self.certificate.numbers

    @property
    def rho(self) -> int:
        return self.certificate.partition.rho


def analyze_code(code: Code) -> CodeAnalysis:
    from .hamming_space import minimum_distance

    cert = certify_completely_regular(code)
    delta = minimum_distance(code) if code.size >= 2 else None
    reduced = is_reduced(code)
    if not cert.completely_regular:
        return CodeAnalysis(code, cert, delta, reduced, None, None, None, None)
    u = quotient_matrix(cert.numbers)
    spectrum = code_spectrum(u, code.ambient)
    arith = arithmetic_certificate(spectrum, code.ambient.q)
    bounds = eigenvalue_bounds(cert.numbers, spectrum, arith, code.ambient)
    return CodeAnalysis(code, cert, delta, reduced, u, spectrum, arith, bounds)
