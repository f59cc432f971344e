"""Geometry of trivectors on a 10-dimensional space.

Contraction to skew matrices, the 45 quartic equations of the rank <= 6
degeneracy locus (principal 8x8 Pfaffians), flag verification, exact
rank at a point, restriction to a 6-dimensional subspace, extraction of
the distinguished cubic fourfold as a certified GCD, smoothness
certification through prime-field Jacobian checks, and the auxiliary
membership, kernel and line verifiers.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .ntheory import is_prime
from .polyring import (
    MultiPoly,
    buchberger,
    exact_div,
    gcd_multivariate,
    normal_form,
    only_zero_at_origin,
    primitive_part,
    substitute_linear,
)

DIM = 10
PESKINE_RANK_BOUND = 6


def _norm_coeff(c, p: int | None):
    if p is None:
        f = Fraction(c)
        return f.numerator if f.denominator == 1 else f
    if isinstance(c, Fraction):
        if c.denominator % p == 0:
            raise ValueError(f"coefficient {c} is not defined mod {p}")
        return c.numerator * pow(c.denominator, -1, p) % p
    return int(c) % p


def _sort_triple(i: int, j: int, k: int) -> tuple[tuple[int, int, int], int]:
    """Sorted index triple and the sign of the sorting permutation."""
    sign = 1
    t = [i, j, k]
    if t[0] > t[1]:
        t[0], t[1] = t[1], t[0]
        sign = -sign
    if t[1] > t[2]:
        t[1], t[2] = t[2], t[1]
        sign = -sign
    if t[0] > t[1]:
        t[0], t[1] = t[1], t[0]
        sign = -sign
    return (t[0], t[1], t[2]), sign


class Trivector:
    """An alternating 3-form on a 10-dimensional space.

    Coefficients are stored once per sorted triple 1 <= i < j < k <= 10
    (internally 0-based) and extended by antisymmetry; a repeated index
    gives zero.  Sign bookkeeping lives in one normalization routine.
    """

    __slots__ = ("coeffs", "p")

    def __init__(self, coeffs, p: int | None = None):
        """coeffs maps index triples (1-based) to coefficients."""
        self.p = p
        store: dict[tuple[int, int, int], object] = {}
        for (i, j, k), c in coeffs.items():
            if len({i, j, k}) != 3:
                raise ValueError(f"repeated index in triple {(i, j, k)}")
            if not all(1 <= t <= DIM for t in (i, j, k)):
                raise ValueError(f"index out of range in {(i, j, k)}")
            key, sign = _sort_triple(i - 1, j - 1, k - 1)
            c = _norm_coeff(sign * c, p)
            if key in store:
                raise ValueError(f"duplicate triple {(i, j, k)}")
            if c:
                store[key] = c
        self.coeffs = store

    def coefficient(self, i: int, j: int, k: int):
        """sigma(e_i, e_j, e_k) for 1-based indices, any order."""
        if len({i, j, k}) != 3:
            return 0
        key, sign = _sort_triple(i - 1, j - 1, k - 1)
        return _norm_coeff(sign * self.coeffs.get(key, 0), self.p)

    def is_zero(self) -> bool:
        return not self.coeffs

    def trilinear(self, u, v, w):
        """sigma(u, v, w) for coordinate vectors of length 10."""
        total = 0
        for (i, j, k), c in self.coeffs.items():
            det = (
                u[i] * (v[j] * w[k] - v[k] * w[j])
                - u[j] * (v[i] * w[k] - v[k] * w[i])
                + u[k] * (v[i] * w[j] - v[j] * w[i])
            )
            if det:
                total += c * det
        return _norm_coeff(total, self.p)


def contract(sigma: Trivector, v) -> list[list]:
    """The 10x10 skew matrix M[j][k] = sigma(v, e_j, e_k)."""
    if len(v) != DIM:
        raise ValueError("vector must have 10 coordinates")
    m = [[0] * DIM for _ in range(DIM)]
    for (i, j, k), c in sigma.coeffs.items():
        m[j][k] += v[i] * c
        m[k][j] -= v[i] * c
        m[i][k] -= v[j] * c
        m[k][i] += v[j] * c
        m[i][j] += v[k] * c
        m[j][i] -= v[k] * c
    return [[_norm_coeff(x, sigma.p) for x in row] for row in m]


def symbolic_contract(sigma: Trivector) -> list[list[MultiPoly]]:
    """The 10x10 skew matrix of linear forms sum_i sigma_ijk x_i."""
    entries: dict[tuple[int, int], dict] = {}

    def bump(j, k, var, c):
        exps = tuple(int(t == var) for t in range(DIM))
        d = entries.setdefault((j, k), {})
        d[exps] = d.get(exps, 0) + c

    for (i, j, k), c in sigma.coeffs.items():
        bump(j, k, i, c)
        bump(k, j, i, -c)
        bump(i, k, j, -c)
        bump(k, i, j, c)
        bump(i, j, k, c)
        bump(j, i, k, -c)
    zero = MultiPoly.zero(DIM, sigma.p)
    return [
        [
            MultiPoly(DIM, entries[(j, k)], sigma.p) if (j, k) in entries else zero
            for k in range(DIM)
        ]
        for j in range(DIM)
    ]


@dataclass(frozen=True)
class PeskineSystem:
    """The 45 quartics cutting the rank <= 6 locus of a trivector.

    quartics[t] is the Pfaffian of the principal 8x8 submatrix with the
    rows and columns removed_pairs[t] (1-based, lexicographic) deleted.
    """

    removed_pairs: tuple[tuple[int, int], ...]
    quartics: tuple[MultiPoly, ...]


def peskine_equations(sigma: Trivector) -> PeskineSystem:
    """All principal 8x8 Pfaffians of the symbolic contraction.

    A skew matrix has even rank, so rank <= 6 is rank < 8, which is the
    simultaneous vanishing of these 45 degree-4 forms.
    """
    m = symbolic_contract(sigma)
    memo: dict[tuple[int, ...], MultiPoly] = {}
    one = MultiPoly.constant(1, DIM, sigma.p)
    zero = MultiPoly.zero(DIM, sigma.p)

    def pf(idx: tuple[int, ...]) -> MultiPoly:
        if not idx:
            return one
        got = memo.get(idx)
        if got is not None:
            return got
        first = idx[0]
        acc = zero
        for t in range(1, len(idx)):
            entry = m[first][idx[t]]
            if entry.is_zero():
                continue
            term = entry * pf(idx[1:t] + idx[t + 1 :])
            acc = acc + term if t % 2 == 1 else acc - term
        memo[idx] = acc
        return acc

    pairs = []
    quartics = []
    for a, b in combinations(range(DIM), 2):
        idx = tuple(t for t in range(DIM) if t not in (a, b))
        pairs.append((a + 1, b + 1))
        quartics.append(pf(idx))
    return PeskineSystem(tuple(pairs), tuple(quartics))


@dataclass(frozen=True)
class Flag:
    """A marked flag: a line spanned by w1 inside the 6-space rows(w6)."""

    w1: tuple[int, ...]
    w6: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        w1 = tuple(int(x) for x in self.w1)
        w6 = tuple(tuple(int(x) for x in row) for row in self.w6)
        object.__setattr__(self, "w1", w1)
        object.__setattr__(self, "w6", w6)
        if len(w1) != DIM or any(len(r) != DIM for r in w6) or len(w6) != 6:
            raise ValueError("flag needs a 10-vector and a 6x10 matrix")
        if all(x == 0 for x in w1):
            raise ValueError("w1 must be nonzero")
        if _field_rank(w6, None) != 6:
            raise ValueError("w6 must have rank 6")
        if _field_rank(w6 + (w1,), None) != 6:
            raise ValueError("w1 must lie in the span of w6")


def standard_flag() -> Flag:
    """w1 = e1 inside w6 = span(e1..e6)."""
    w1 = tuple(int(i == 0) for i in range(DIM))
    w6 = tuple(tuple(int(i == j) for i in range(DIM)) for j in range(6))
    return Flag(w1, w6)


def verify_flag(sigma: Trivector, flag: Flag) -> bool:
    """Whether sigma(w1, w6, V10) vanishes identically.

    Checked as 60 trilinear evaluations: each row of w6 against each
    standard basis vector.
    """
    m = contract(sigma, flag.w1)
    for row in flag.w6:
        pair = [0] * DIM
        for j, rj in enumerate(row):
            if rj:
                mrow = m[j]
                for k in range(DIM):
                    pair[k] += rj * mrow[k]
        if any(_norm_coeff(x, sigma.p) for x in pair):
            return False
    return True


def _field_rank(rows, p: int | None) -> int:
    """Rank of a matrix over Q (p None) or F_p."""
    if p is None:
        a = [[Fraction(x) for x in row] for row in rows]
    else:
        a = [[int(x) % p for x in row] for row in rows]
    nrows = len(a)
    ncols = len(a[0]) if nrows else 0
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, nrows):
            if a[i][c]:
                piv = i
                break
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = (1 / a[r][c]) if p is None else pow(a[r][c], -1, p)
        a[r] = [x * inv % p if p else x * inv for x in a[r]]
        for i in range(nrows):
            if i != r and a[i][c]:
                f = a[i][c]
                if p is None:
                    a[i] = [x - f * y for x, y in zip(a[i], a[r])]
                else:
                    a[i] = [(x - f * y) % p for x, y in zip(a[i], a[r])]
        r += 1
        if r == nrows:
            break
    return r


def _field_kernel(rows, p: int | None) -> list[tuple]:
    """Basis of the right kernel over Q or F_p.

    Over Q the basis vectors are cleared to integer tuples.
    """
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    if p is None:
        a = [[Fraction(x) for x in row] for row in rows]
    else:
        a = [[int(x) % p for x in row] for row in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, nrows):
            if a[i][c]:
                piv = i
                break
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = (1 / a[r][c]) if p is None else pow(a[r][c], -1, p)
        a[r] = [x * inv % p if p else x * inv for x in a[r]]
        for i in range(nrows):
            if i != r and a[i][c]:
                f = a[i][c]
                if p is None:
                    a[i] = [x - f * y for x, y in zip(a[i], a[r])]
                else:
                    a[i] = [(x - f * y) % p for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * ncols if p is None else [0] * ncols
        vec[fc] = Fraction(1) if p is None else 1
        for ri, pc in enumerate(pivots):
            v = -a[ri][fc]
            vec[pc] = v if p is None else v % p
        if p is None:
            den = 1
            for x in vec:
                den = den * x.denominator // __import__("math").gcd(den, x.denominator)
            basis.append(tuple(int(x * den) for x in vec))
        else:
            basis.append(tuple(vec))
    return basis


def rank_at_point(sigma: Trivector, v) -> int:
    """Exact rank of the contraction at v; always even."""
    if all(x == 0 for x in v):
        raise ValueError("rank at the zero vector is undefined")
    return _field_rank(contract(sigma, v), sigma.p)


def restrict_to_subspace(system: PeskineSystem, w6) -> list[MultiPoly]:
    """Each quartic composed with the parameterization x = y . w6."""
    rows = [tuple(r) for r in w6]
    if len(rows) != 6 or _field_rank(rows, None) != 6:
        raise ValueError("w6 must be a rank-6 6x10 matrix")
    # substitution matrix: x_i = sum_j w6[j][i] y_j
    a = tuple(tuple(rows[j][i] for j in range(6)) for i in range(DIM))
    return [substitute_linear(q, a) for q in system.quartics]


class CubicExtractionError(RuntimeError):
    """The restricted quartics did not share a degree-3 factor."""

    def __init__(self, message: str, gcd_poly: MultiPoly | None = None):
        super().__init__(message)
        self.gcd_poly = gcd_poly


def extract_cubic(sigma: Trivector, flag: Flag) -> MultiPoly:
    """The distinguished cubic: common degree-3 factor of the restrictions.

    Requires the flag to annihilate sigma and sigma to live over Q.
    Returns the integer-primitive, positive-lead normalization of the
    GCD of the nonzero restricted quartics, after certifying that it is
    homogeneous of degree 3 and divides every restricted quartic with a
    degree-1 homogeneous quotient.
    """
    if sigma.p is not None:
        raise ValueError("cubic extraction needs rational coefficients")
    if not verify_flag(sigma, flag):
        raise ValueError("flag does not annihilate the trivector")
    system = peskine_equations(sigma)
    restricted = restrict_to_subspace(system, flag.w6)
    nonzero = [q for q in restricted if not q.is_zero()]
    if not nonzero:
        raise CubicExtractionError("all restricted quartics vanish identically")
    g = nonzero[0]
    for q in nonzero[1:]:
        g = gcd_multivariate(g, q)
        if g.is_constant():
            break
    g = primitive_part(g)
    if g.total_degree() != 3 or not g.is_homogeneous():
        raise CubicExtractionError(
            f"common factor has degree {g.total_degree()}, expected 3", g
        )
    for q in nonzero:
        quotient = exact_div(q, g)
        if quotient.total_degree() != 1 or not quotient.is_homogeneous():
            raise CubicExtractionError(
                "restricted quartic is not cubic times a linear form", g
            )
    return g


@dataclass(frozen=True)
class SmoothnessVerdict:
    """Outcome of a prime-field Jacobian check."""

    kind: str  # "smooth" | "singular" | "bad-prime"
    prime: int
    witness: tuple[int, ...] | None = None
    reason: str = ""

    def is_smooth(self) -> bool:
        return self.kind == "smooth"


WITNESS_PRIME_BOUND = 101


def smoothness_check(cubic: MultiPoly, p: int) -> SmoothnessVerdict:
    """Jacobian criterion for a cubic fourfold, over F_p.

    Reduces the cubic mod p (bad-prime if p is 2 or 3, not prime, or
    the reduction drops degree), forms the six partials, and reports
    smooth exactly when their only common zero over the closure is the
    origin.  When singular and p <= 101 a projective witness is hunted
    by brute enumeration (O(p^5) work).
    """
    if cubic.p is not None or cubic.nvars != 6:
        raise ValueError("expected a rational cubic in 6 variables")
    if cubic.total_degree() != 3 or not cubic.is_homogeneous():
        raise ValueError("polynomial is not a homogeneous cubic")
    if not is_prime(p):
        return SmoothnessVerdict("bad-prime", p, reason=f"{p} is not prime")
    if p in (2, 3):
        return SmoothnessVerdict(
            "bad-prime", p, reason=f"characteristic {p} is excluded"
        )
    reduced = primitive_part(cubic).reduce_mod(p)
    if reduced.total_degree() != 3:
        return SmoothnessVerdict(
            "bad-prime", p, reason=f"reduction mod {p} drops degree"
        )
    partials = [reduced.derivative(i) for i in range(6)]
    basis = buchberger([q for q in partials if not q.is_zero()])
    # internal consistency: 3f = sum x_i df/dx_i, so f lies in the ideal
    if not normal_form(reduced, basis).is_zero():
        raise RuntimeError("Euler relation failed against the Groebner basis")
    if only_zero_at_origin(partials):
        return SmoothnessVerdict("smooth", p)
    witness = None
    if p <= WITNESS_PRIME_BOUND:
        witness = _singular_point_search(partials, p)
    return SmoothnessVerdict("singular", p, witness=witness)


def _singular_point_search(partials, p: int) -> tuple[int, ...] | None:
    """First projective point killing every partial, scanning charts."""
    n = 6
    for chart in range(n):
        tail = n - chart - 1
        point = [0] * n
        point[chart] = 1
        counters = [0] * tail
        while True:
            for idx, c in enumerate(counters):
                point[chart + 1 + idx] = c
            if all(q.evaluate(point) == 0 for q in partials):
                return tuple(point)
            i = 0
            while i < tail:
                counters[i] += 1
                if counters[i] < p:
                    break
                counters[i] = 0
                i += 1
            else:
                break
            if tail == 0:
                break
    return None


def x6_membership(sigma: Trivector, v6) -> bool:
    """Whether sigma restricts to zero on the 6-space spanned by v6."""
    rows = [tuple(r) for r in v6]
    if len(rows) != 6 or _field_rank(rows, sigma.p) != 6:
        raise ValueError("v6 must be a rank-6 6x10 matrix")
    for a, b, c in combinations(range(6), 3):
        if sigma.trilinear(rows[a], rows[b], rows[c]) != 0:
            return False
    return True


def x7_kernel(sigma: Trivector, v7, domain: str = "v7") -> list[tuple]:
    """Kernel of v -> (sigma(v, b_i, b_j))_{i<j} for rows b of v7.

    domain "v7" restricts v to the span of v7 (vectors are returned in
    ambient coordinates); domain "v10" takes v through all of V10.
    """
    if domain not in ("v7", "v10"):
        raise ValueError("domain must be 'v7' or 'v10'")
    rows = [tuple(r) for r in v7]
    if len(rows) != 7 or _field_rank(rows, sigma.p) != 7:
        raise ValueError("v7 must be a rank-7 7x10 matrix")
    pair_rows = []
    for a, b in combinations(range(7), 2):
        # linear form v -> sigma(v, rows[a], rows[b])
        coeffs = [
            sigma.trilinear(
                tuple(int(t == e) for t in range(DIM)), rows[a], rows[b]
            )
            for e in range(DIM)
        ]
        pair_rows.append(coeffs)
    if domain == "v10":
        return _field_kernel(pair_rows, sigma.p)
    # compose with the inclusion of span(v7)
    composed = [
        [
            _norm_coeff(sum(row[t] * rows[s][t] for t in range(DIM)), sigma.p)
            for s in range(7)
        ]
        for row in pair_rows
    ]
    inside = _field_kernel(composed, sigma.p)
    out = []
    for vec in inside:
        amb = [0] * DIM
        for s in range(7):
            if vec[s]:
                for t in range(DIM):
                    amb[t] += vec[s] * rows[s][t]
        out.append(tuple(_norm_coeff(x, sigma.p) for x in amb))
    return out


def line_in_peskine(sigma: Trivector, v2) -> bool:
    """Whether the line through rows(v2) lies in the rank <= 6 locus.

    Substitutes the 2-parameter parameterization into every quartic of
    the degeneracy system and checks the binary quartics vanish.
    """
    rows = [tuple(r) for r in v2]
    if len(rows) != 2 or _field_rank(rows, sigma.p) != 2:
        raise ValueError("v2 must be a rank-2 2x10 matrix")
    system = peskine_equations(sigma)
    a = tuple((rows[0][i], rows[1][i]) for i in range(DIM))
    for q in system.quartics:
        if not substitute_linear(q, a).is_zero():
            return False
    return True


# -- trivector text format --------------------------------------------


def parse_trivector(text: str, p: int | None = None) -> Trivector:
    """Parse the line format `i j k c` with `#` comments.

    c is a nonzero integer or rational a/b; duplicate triples (up to
    reordering) are an error.
    """
    coeffs: dict[tuple[int, int, int], object] = {}
    seen: set[tuple[int, int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 4:
            raise ValueError(f"line {lineno}: expected 'i j k c', got {raw!r}")
        try:
            i, j, k = (int(x) for x in parts[:3])
            c = Fraction(parts[3])
        except ValueError as exc:
            raise ValueError(f"line {lineno}: {exc}") from exc
        if len({i, j, k}) != 3 or not all(1 <= t <= DIM for t in (i, j, k)):
            raise ValueError(f"line {lineno}: bad index triple {i} {j} {k}")
        if c == 0:
            raise ValueError(f"line {lineno}: zero coefficient")
        key = tuple(sorted((i, j, k)))
        if key in seen:
            raise ValueError(f"line {lineno}: duplicate triple {i} {j} {k}")
        seen.add(key)
        coeffs[(i, j, k)] = c
    return Trivector(coeffs, p)


def format_trivector(sigma: Trivector) -> str:
    """One `i j k c` line per stored triple, sorted."""
    lines = []
    for (i, j, k) in sorted(sigma.coeffs):
        c = sigma.coeffs[(i, j, k)]
        f = Fraction(c) if sigma.p is None else Fraction(int(c))
        cstr = str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"
        lines.append(f"{i + 1} {j + 1} {k + 1} {cstr}")
    return "\n".join(lines) + "\n"
