"""Exact sparse multivariate polynomials over Q or a prime field F_p.

Ring arithmetic, linear substitution, Pfaffians of skew matrices with
polynomial entries, multivariate GCD by primitive-part recursion with a
univariate subresultant PRS, and a small Buchberger engine (graded
reverse lexicographic order, fixed) strong enough to certify that a
homogeneous system only vanishes at the origin.
"""

from __future__ import annotations

import heapq
import re
from fractions import Fraction
from math import gcd

Exponents = tuple[int, ...]


def _coeff_normalize(c, p: int | None):
    if p is None:
        if isinstance(c, Fraction) and c.denominator == 1:
            return c.numerator
        return c
    if isinstance(c, Fraction):
        if c.denominator % p == 0:
            raise ValueError(f"coefficient {c} is not defined mod {p}")
        return c.numerator * pow(c.denominator, -1, p) % p
    return int(c) % p


def grevlex_key(exps: Exponents):
    """Sort key realizing graded reverse lexicographic order."""
    return (sum(exps), tuple(-e for e in reversed(exps)))


class MultiPoly:
    """A sparse polynomial: dict from exponent tuples to coefficients.

    field: p = None means Q (int or Fraction coefficients), otherwise
    coefficients live in F_p as ints in [1, p).  Instances are treated
    as immutable after construction.
    """

    __slots__ = ("nvars", "p", "terms")

    def __init__(self, nvars: int, terms=None, p: int | None = None):
        self.nvars = nvars
        self.p = p
        clean = {}
        for exps, c in (terms or {}).items():
            c = _coeff_normalize(c, p)
            if c:
                e = tuple(int(x) for x in exps)
                if len(e) != nvars or any(x < 0 for x in e):
                    raise ValueError(f"bad exponent tuple {e} for {nvars} variables")
                clean[e] = c
        self.terms = clean

    # -- constructors ------------------------------------------------

    @classmethod
    def zero(cls, nvars: int, p: int | None = None) -> "MultiPoly":
        return cls(nvars, {}, p)

    @classmethod
    def constant(cls, c, nvars: int, p: int | None = None) -> "MultiPoly":
        return cls(nvars, {(0,) * nvars: c}, p)

    @classmethod
    def variable(cls, i: int, nvars: int, p: int | None = None) -> "MultiPoly":
        exps = tuple(1 if j == i else 0 for j in range(nvars))
        return cls(nvars, {exps: 1}, p)

    # -- basic queries -----------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self.terms)

    def constant_value(self):
        return self.terms.get((0,) * self.nvars, 0)

    def total_degree(self) -> int:
        """Maximal total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    def leading_monomial(self) -> Exponents:
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self.terms, key=grevlex_key)

    def leading_coefficient(self):
        return self.terms[self.leading_monomial()]

    def sorted_terms(self):
        """Terms in descending grevlex order."""
        return sorted(self.terms.items(), key=lambda kv: grevlex_key(kv[0]), reverse=True)

    # -- arithmetic --------------------------------------------------

    def _check_compatible(self, other: "MultiPoly"):
        if self.nvars != other.nvars or self.p != other.p:
            raise ValueError("polynomials live in different rings")

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        self._check_compatible(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return MultiPoly(self.nvars, out, self.p)

    def __sub__(self, other: "MultiPoly") -> "MultiPoly":
        self._check_compatible(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) - c
        return MultiPoly(self.nvars, out, self.p)

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(self.nvars, {e: -c for e, c in self.terms.items()}, self.p)

    def __mul__(self, other: "MultiPoly") -> "MultiPoly":
        self._check_compatible(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return MultiPoly(self.nvars, out, self.p)

    def scalar_mul(self, c) -> "MultiPoly":
        return MultiPoly(
            self.nvars, {e: x * c for e, x in self.terms.items()}, self.p
        )

    def __pow__(self, n: int) -> "MultiPoly":
        if n < 0:
            raise ValueError("negative power")
        result = MultiPoly.constant(1, self.nvars, self.p)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, MultiPoly)
            and self.nvars == other.nvars
            and self.p == other.p
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.nvars, self.p, frozenset(self.terms.items())))

    def __repr__(self):
        return f"MultiPoly({format_poly(self)!r})"

    # -- calculus and evaluation ------------------------------------

    def evaluate(self, point):
        """Value at a point; Fraction-or-int over Q, int over F_p."""
        if len(point) != self.nvars:
            raise ValueError("point has the wrong number of coordinates")
        total = 0
        for exps, c in self.terms.items():
            v = c
            for x, e in zip(point, exps):
                if e:
                    v *= x**e
            total += v
        return _coeff_normalize(total, self.p)

    def derivative(self, i: int) -> "MultiPoly":
        out = {}
        for exps, c in self.terms.items():
            e = exps[i]
            if e:
                newe = exps[:i] + (e - 1,) + exps[i + 1 :]
                out[newe] = out.get(newe, 0) + e * c
        return MultiPoly(self.nvars, out, self.p)

    def reduce_mod(self, p: int) -> "MultiPoly":
        """Reduction of a Q-polynomial with p-integral coefficients."""
        if self.p is not None:
            raise ValueError("already over a prime field")
        out = {}
        for e, c in self.terms.items():
            f = Fraction(c)
            if f.denominator % p == 0:
                raise ValueError(f"coefficient {c} not p-integral at p = {p}")
            out[e] = f.numerator * pow(f.denominator, -1, p) % p
        return MultiPoly(self.nvars, out, p)


def substitute_linear(poly: MultiPoly, matrix) -> MultiPoly:
    """Compose poly with x_i -> sum_j matrix[i][j] * y_j.

    matrix has poly.nvars rows; the result lives in as many variables
    as the matrix has columns.
    """
    rows = [tuple(r) for r in matrix]
    if len(rows) != poly.nvars:
        raise ValueError(
            f"substitution needs {poly.nvars} rows, got {len(rows)}"
        )
    m = len(rows[0]) if rows else 0
    if any(len(r) != m for r in rows):
        raise ValueError("ragged substitution matrix")
    forms = [
        MultiPoly(m, {tuple(int(k == j) for k in range(m)): rows[i][j] for j in range(m)}, poly.p)
        for i in range(poly.nvars)
    ]
    powers: dict[tuple[int, int], MultiPoly] = {}

    def form_power(i: int, e: int) -> MultiPoly:
        key = (i, e)
        if key not in powers:
            powers[key] = forms[i] ** e
        return powers[key]

    result = MultiPoly.zero(m, poly.p)
    for exps, c in poly.terms.items():
        term = MultiPoly.constant(c, m, poly.p)
        for i, e in enumerate(exps):
            if e:
                term = term * form_power(i, e)
        result = result + term
    return result


def pfaffian(matrix) -> MultiPoly:
    """Pfaffian of an even-size skew-symmetric matrix of polynomials.

    Recursive expansion along the first row; pf of the empty matrix is
    the constant 1.  The skew check is exact and an odd size or a
    symmetric slip is an error.
    """
    rows = [list(r) for r in matrix]
    k = len(rows)
    if k % 2 != 0:
        raise ValueError(f"Pfaffian needs even size, got {k}")
    if k == 0:
        raise ValueError("cannot infer the ring of an empty matrix; use size >= 2")
    proto = rows[0][0]
    nvars, p = proto.nvars, proto.p
    for i in range(k):
        if not rows[i][i].is_zero():
            raise ValueError("matrix is not skew-symmetric (nonzero diagonal)")
        for j in range(i):
            if not (rows[i][j] + rows[j][i]).is_zero():
                raise ValueError("matrix is not skew-symmetric")

    memo: dict[tuple[int, ...], MultiPoly] = {}

    def pf(idx: tuple[int, ...]) -> MultiPoly:
        if not idx:
            return MultiPoly.constant(1, nvars, p)
        got = memo.get(idx)
        if got is not None:
            return got
        first = idx[0]
        acc = MultiPoly.zero(nvars, p)
        for t in range(1, len(idx)):
            entry = rows[first][idx[t]]
            if entry.is_zero():
                continue
            rest = idx[1:t] + idx[t + 1 :]
            term = entry * pf(rest)
            acc = acc + term if t % 2 == 1 else acc - term
        memo[idx] = acc
        return acc

    return pf(tuple(range(k)))


# -- exact division and GCD ------------------------------------------


def exact_div(num: MultiPoly, den: MultiPoly) -> MultiPoly:
    """Quotient num/den when the division is exact; raises otherwise."""
    num._check_compatible(den)
    if den.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    q: dict[Exponents, object] = {}
    rem = dict(num.terms)
    dlm = den.leading_monomial()
    dlc = den.leading_coefficient()
    p = num.p
    while rem:
        lm = max(rem, key=grevlex_key)
        qe = tuple(a - b for a, b in zip(lm, dlm))
        if any(x < 0 for x in qe):
            raise ValueError("division is not exact")
        if p is None:
            qc = Fraction(rem[lm]) / Fraction(dlc)
        else:
            qc = rem[lm] * pow(dlc, -1, p) % p
        q[qe] = qc
        for e, c in den.terms.items():
            te = tuple(a + b for a, b in zip(qe, e))
            v = rem.get(te, 0) - qc * c
            if p is not None:
                v %= p
            if v:
                rem[te] = v
            else:
                rem.pop(te, None)
    return MultiPoly(num.nvars, q, p)


def integer_content_and_primitive(poly: MultiPoly) -> tuple[Fraction, MultiPoly]:
    """Write a Q-polynomial as content * primitive-integer-polynomial.

    The primitive part has integer coefficients with gcd 1 and positive
    leading coefficient under grevlex; the content is a Fraction (signed).
    """
    if poly.p is not None:
        raise ValueError("content normalization is for Q-coefficients")
    if poly.is_zero():
        return Fraction(0), poly
    fracs = {e: Fraction(c) for e, c in poly.terms.items()}
    den_lcm = 1
    for f in fracs.values():
        den_lcm = den_lcm * f.denominator // gcd(den_lcm, f.denominator)
    num_gcd = 0
    for f in fracs.values():
        num_gcd = gcd(num_gcd, f.numerator * (den_lcm // f.denominator))
    content = Fraction(num_gcd, den_lcm)
    prim = MultiPoly(
        poly.nvars, {e: f / content for e, f in fracs.items()}, None
    )
    if prim.leading_coefficient() < 0:
        prim = -prim
        content = -content
    return content, prim


def primitive_part(poly: MultiPoly) -> MultiPoly:
    """Integer-primitive, positive-leading-coefficient normalization."""
    if poly.is_zero():
        return poly
    return integer_content_and_primitive(poly)[1]


def _poly_int_content(poly: MultiPoly) -> int:
    g = 0
    for c in poly.terms.values():
        g = gcd(g, int(c))
    return g


def _univar(poly: MultiPoly, var: int) -> dict[int, MultiPoly]:
    """View as a univariate polynomial in var with MultiPoly coefficients."""
    out: dict[int, dict] = {}
    for exps, c in poly.terms.items():
        d = exps[var]
        rest = exps[:var] + (0,) + exps[var + 1 :]
        out.setdefault(d, {})[rest] = c
    return {
        d: MultiPoly(poly.nvars, terms, poly.p) for d, terms in out.items()
    }


def _from_univar(coeffs: dict[int, MultiPoly], var: int, nvars: int) -> MultiPoly:
    terms = {}
    for d, cp in coeffs.items():
        for exps, c in cp.terms.items():
            e = exps[:var] + (d,) + exps[var + 1 :]
            terms[e] = c
    return MultiPoly(nvars, terms, None)


def _content_wrt(poly: MultiPoly, var: int) -> MultiPoly:
    cs = list(_univar(poly, var).values())
    g = cs[0]
    for c in cs[1:]:
        g = _gcd_zz(g, c)
        if g.is_constant() and g.constant_value() == 1:
            break
    return g


def _prem(a: dict[int, MultiPoly], b: dict[int, MultiPoly]):
    """Pseudo-remainder of univariate views: lc(b)^(da-db+1) * a mod b."""
    da, db = max(a), max(b)
    lb = b[db]
    r = dict(a)
    steps = 0
    while r and max(r) >= db:
        dr = max(r)
        lr = r[dr]
        shift = dr - db
        newr: dict[int, MultiPoly] = {d: c * lb for d, c in r.items()}
        for d, c in b.items():
            t = c * lr
            cur = newr.get(d + shift)
            newr[d + shift] = (cur - t) if cur is not None else -t
        r = {d: c for d, c in newr.items() if not c.is_zero()}
        steps += 1
    # match the exact subresultant scaling lc(b)^(da-db+1)
    for _ in range(da - db + 1 - steps):
        r = {d: c * lb for d, c in r.items()}
    return r


def _gcd_zz(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    """GCD of integer polynomials, including integer content."""
    if a.is_zero():
        return b if b.leading_coefficient() > 0 or b.is_zero() else -b
    if b.is_zero():
        return a if a.leading_coefficient() > 0 else -a
    if a.is_constant() or b.is_constant():
        ca = _poly_int_content(a)
        cb = _poly_int_content(b)
        if a.is_constant() and b.is_constant():
            return MultiPoly.constant(gcd(ca, cb), a.nvars)
        other = b if a.is_constant() else a
        const = ca if a.is_constant() else cb
        return MultiPoly.constant(gcd(const, _poly_int_content(other)), a.nvars)

    counts = [0] * a.nvars
    for poly in (a, b):
        for exps in poly.terms:
            for i, e in enumerate(exps):
                if e:
                    counts[i] += 1
    var = max(range(a.nvars), key=lambda i: counts[i])

    ua, ub = _univar(a, var), _univar(b, var)
    if max(ua) == 0 or max(ub) == 0:
        flat = a if max(ua) == 0 else b
        other = b if max(ua) == 0 else a
        return _gcd_zz(flat, _content_wrt(other, var))

    cont_a = _content_wrt(a, var)
    cont_b = _content_wrt(b, var)
    cont = _gcd_zz(cont_a, cont_b)
    ppa = {d: exact_div(c, cont_a) for d, c in ua.items()}
    ppb = {d: exact_div(c, cont_b) for d, c in ub.items()}
    if max(ppa) < max(ppb):
        ppa, ppb = ppb, ppa

    one = MultiPoly.constant(1, a.nvars)
    f1, f2 = ppa, ppb
    g = one
    h = one
    while True:
        delta = max(f1) - max(f2)
        r = _prem(f1, f2)
        if not r:
            break
        if max(r) == 0:
            f2 = {0: one}
            break
        divisor = g * h**delta
        f1, f2 = f2, {d: exact_div(c, divisor) for d, c in r.items()}
        g = f1[max(f1)]
        if delta == 0:
            pass
        elif delta == 1:
            h = g
        else:
            h = exact_div(g**delta, h ** (delta - 1))
    tail = _from_univar(f2, var, a.nvars)
    tail_pp = exact_div(tail, _content_wrt(tail, var))
    result = cont * tail_pp
    if result.leading_coefficient() < 0:
        result = -result
    return result


def gcd_multivariate(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    """A GCD over Q, normalized integer-primitive with positive lead.

    gcd(p, 0) is the normalization of p; the gcd of two nonzero
    constants is 1 (constants are units over a field).
    """
    a._check_compatible(b)
    if a.p is not None:
        raise ValueError("gcd_multivariate works over Q")
    if a.is_zero() and b.is_zero():
        return a
    if a.is_zero():
        return primitive_part(b)
    if b.is_zero():
        return primitive_part(a)
    return primitive_part(_gcd_zz(primitive_part(a), primitive_part(b)))


# -- text format ------------------------------------------------------

_TERM_RE = re.compile(r"^([+-]?\d+(?:/\d+)?)?((?:\*?[A-Za-z]+\d+(?:\^\d+)?)*)$")
_VAR_RE = re.compile(r"([A-Za-z]+)(\d+)(?:\^(\d+))?")


def format_poly(poly: MultiPoly, prefix: str = "x") -> str:
    """Canonical text: grevlex-descending sum of c*<prefix>i^e terms."""
    if poly.is_zero():
        return "0"
    pieces = []
    for exps, c in poly.sorted_terms():
        if poly.p is None:
            f = Fraction(c)
            mag = abs(f)
            sign = "-" if f < 0 else "+"
            cstr = str(mag.numerator) if mag.denominator == 1 else f"{mag.numerator}/{mag.denominator}"
        else:
            sign = "+"
            cstr = str(c)
        vars_part = "*".join(
            f"{prefix}{i + 1}" + (f"^{e}" if e > 1 else "")
            for i, e in enumerate(exps)
            if e
        )
        body = cstr if not vars_part else f"{cstr}*{vars_part}"
        pieces.append((sign, body))
    first_sign, first_body = pieces[0]
    out = ("-" if first_sign == "-" else "") + first_body
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out


def parse_poly(
    text: str, nvars: int, p: int | None = None, prefix: str | None = None
) -> MultiPoly:
    """Parse the text format; duplicate monomials accumulate."""
    compact = text.replace(" ", "").replace("\n", "")
    if compact in ("", "0"):
        return MultiPoly.zero(nvars, p)
    compact = compact.replace("-", "+-")
    if compact.startswith("+"):
        compact = compact[1:]
    terms: dict[Exponents, object] = {}
    for chunk in compact.split("+"):
        neg = chunk.startswith("-")
        if neg:
            chunk = chunk[1:]
        if not chunk:
            raise ValueError("empty term in polynomial text")
        m = _TERM_RE.match(chunk)
        if not m:
            raise ValueError(f"cannot parse term {chunk!r}")
        cstr, varpart = m.group(1), m.group(2) or ""
        if cstr in (None, ""):
            coeff = Fraction(1)
        else:
            coeff = Fraction(cstr)
        exps = [0] * nvars
        for name, idx, exp in _VAR_RE.findall(varpart):
            if prefix is not None and name != prefix:
                raise ValueError(f"unexpected variable {name}{idx}")
            i = int(idx) - 1
            if not 0 <= i < nvars:
                raise ValueError(f"variable index {idx} out of range")
            exps[i] += int(exp) if exp else 1
        if neg:
            coeff = -coeff
        e = tuple(exps)
        terms[e] = terms.get(e, 0) + coeff
    return MultiPoly(nvars, terms, p)


# -- Groebner engine (grevlex, F_p) -----------------------------------


class _Packed:
    """Bit-packed monomials whose integer order is grevlex.

    Layout, most significant first: total degree, then M - e[n-1], ...,
    M - e[0], each in a field of width B+1 bits with a guard bit.  With
    that complement encoding, larger packed value = larger in grevlex,
    monomial product is add-minus-offset, and divisibility shows up as
    clean guard bits in a single subtraction.
    """

    B = 12  # max exponent 4095, far beyond anything this engine sees

    def __init__(self, nvars: int):
        self.n = nvars
        self.w = self.B + 1
        self.mask = (1 << self.B) - 1
        self.zero = self.pack((0,) * nvars)
        guards = 0
        for i in range(nvars):
            guards |= 1 << (self.B + i * self.w)
        self.guards = guards

    def pack(self, exps: Exponents) -> int:
        v = sum(exps)
        if v > self.mask:
            raise ValueError(f"total degree {v} exceeds the packed-monomial bound")
        for i in range(self.n - 1, -1, -1):
            v = (v << self.w) | (self.mask - exps[i])
        return v

    def unpack(self, m: int) -> Exponents:
        out = []
        for _ in range(self.n):
            out.append(self.mask - (m & ((1 << self.w) - 1)))
            m >>= self.w
        return tuple(out)

    def mul(self, a: int, b: int) -> int:
        return a + b - self.zero

    def quotient(self, a: int, b: int) -> int | None:
        """a / b as monomials, or None when b does not divide a."""
        q = a + self.zero - b
        if q < 0 or (q & self.guards):
            return None
        return q

    def lcm(self, a: int, b: int) -> int:
        ea, eb = self.unpack(a), self.unpack(b)
        return self.pack(tuple(max(x, y) for x, y in zip(ea, eb)))

    def coprime(self, a: int, b: int) -> bool:
        ea, eb = self.unpack(a), self.unpack(b)
        return all(x == 0 or y == 0 for x, y in zip(ea, eb))


def _to_packed(poly: MultiPoly, pk: _Packed) -> dict[int, int]:
    return {pk.pack(e): c for e, c in poly.terms.items()}


def _from_packed(d: dict[int, int], pk: _Packed, nvars: int, p: int) -> MultiPoly:
    return MultiPoly(nvars, {pk.unpack(m): c for m, c in d.items()}, p)


def _reduce_packed(
    poly: dict[int, int], basis: list[tuple[int, dict[int, int]]], pk: _Packed, p: int
) -> dict[int, int]:
    """Full normal form of a packed polynomial against monic divisors."""
    work = dict(poly)
    out: dict[int, int] = {}
    while work:
        lm = max(work)
        lc = work[lm]
        for blm, bterms in basis:
            q = pk.quotient(lm, blm)
            if q is not None:
                # basis is monic, so the head cancels inside this loop
                for m, c in bterms.items():
                    mm = pk.mul(m, q)
                    v = (work.get(mm, 0) - lc * c) % p
                    if v:
                        work[mm] = v
                    else:
                        work.pop(mm, None)
                break
        else:
            out[lm] = lc
            del work[lm]
    return out


def _make_monic(terms: dict[int, int], p: int) -> dict[int, int]:
    lm = max(terms)
    inv = pow(terms[lm], -1, p)
    return {m: c * inv % p for m, c in terms.items()}


def buchberger(gens) -> list[MultiPoly]:
    """Reduced grevlex Groebner basis over F_p.

    Pair handling uses the coprime-leading-term criterion and the chain
    criterion; the returned basis is monic, autoreduced, and sorted by
    ascending leading monomial.  Empty or all-zero input gives [].
    """
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return []
    nvars, p = gens[0].nvars, gens[0].p
    if p is None:
        raise ValueError("the Groebner engine works over a prime field")
    for g in gens:
        if g.nvars != nvars or g.p != p:
            raise ValueError("generators live in different rings")
    pk = _Packed(nvars)

    basis: list[tuple[int, dict[int, int]]] = []
    for g in gens:
        t = _make_monic(_to_packed(g, pk), p)
        basis.append((max(t), t))

    pending: set[frozenset[int]] = set()
    heap: list[tuple[int, int, int]] = []
    for i in range(len(basis)):
        for j in range(i):
            pair = frozenset((i, j))
            pending.add(pair)
            heapq.heappush(heap, (pk.lcm(basis[i][0], basis[j][0]), j, i))

    def chain_criterion(i: int, j: int, lcm_ij: int) -> bool:
        for k in range(len(basis)):
            if k == i or k == j:
                continue
            if pk.quotient(lcm_ij, basis[k][0]) is None:
                continue
            if (
                frozenset((i, k)) not in pending
                and frozenset((j, k)) not in pending
            ):
                return True
        return False

    while heap:
        lcm_ij, j, i = heapq.heappop(heap)
        pair = frozenset((i, j))
        if pair not in pending:
            continue
        pending.discard(pair)
        lti, ltj = basis[i][0], basis[j][0]
        if pk.coprime(lti, ltj):
            continue
        if chain_criterion(i, j, lcm_ij):
            continue
        qi = pk.quotient(lcm_ij, lti)
        qj = pk.quotient(lcm_ij, ltj)
        s: dict[int, int] = {}
        for m, c in basis[i][1].items():
            mm = pk.mul(m, qi)
            s[mm] = (s.get(mm, 0) + c) % p
        for m, c in basis[j][1].items():
            mm = pk.mul(m, qj)
            v = (s.get(mm, 0) - c) % p
            if v:
                s[mm] = v
            else:
                s.pop(mm, None)
        s = {m: c for m, c in s.items() if c}
        r = _reduce_packed(s, basis, pk, p)
        if not r:
            continue
        r = _make_monic(r, p)
        new = len(basis)
        basis.append((max(r), r))
        for k in range(new):
            pending.add(frozenset((k, new)))
            heapq.heappush(heap, (pk.lcm(basis[k][0], basis[new][0]), k, new))

    # autoreduce: drop elements whose lead is divisible by another lead,
    # then fully reduce each survivor against the others
    keep: list[int] = []
    for i, (lt, _) in enumerate(basis):
        if any(
            k != i and pk.quotient(lt, basis[k][0]) is not None
            for k in range(len(basis))
            if (basis[k][0] != lt or k < i)
        ):
            continue
        keep.append(i)
    final: list[tuple[int, dict[int, int]]] = [basis[i] for i in keep]
    reduced: list[tuple[int, dict[int, int]]] = []
    for idx, (lt, terms) in enumerate(final):
        others = [final[k] for k in range(len(final)) if k != idx]
        r = _reduce_packed(terms, others, pk, p)
        if r:
            reduced.append((max(r), _make_monic(r, p)))
    reduced.sort(key=lambda t: t[0])
    return [_from_packed(t, pk, nvars, p) for _, t in reduced]


def normal_form(poly: MultiPoly, basis: list[MultiPoly]) -> MultiPoly:
    """Full remainder of poly on division by the basis."""
    if not basis:
        return poly
    nvars, p = poly.nvars, poly.p
    if p is None:
        raise ValueError("normal_form works over a prime field")
    pk = _Packed(nvars)
    packed_basis = []
    for g in basis:
        if g.is_zero():
            continue
        t = _make_monic(_to_packed(g, pk), p)
        packed_basis.append((max(t), t))
    r = _reduce_packed(_to_packed(poly, pk), packed_basis, pk, p)
    return _from_packed(r, pk, nvars, p)


def only_zero_at_origin(gens) -> bool:
    """Whether homogeneous generators vanish only at the origin.

    Computes a reduced grevlex basis and checks that every variable
    contributes a pure power among the leading terms (equivalently the
    quotient ring is finite-dimensional, so the zero set of the
    homogeneous ideal over the algebraic closure contains no nonzero
    point).  Non-homogeneous input is rejected.
    """
    gens = list(gens)
    for g in gens:
        if not g.is_homogeneous():
            raise ValueError("generators must be homogeneous")
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return False
    if any(g.is_constant() for g in gens):
        return True
    nvars = gens[0].nvars
    basis = buchberger(gens)
    if any(b.is_constant() for b in basis):
        return True
    seen = [False] * nvars
    for b in basis:
        lm = b.leading_monomial()
        support = [i for i, e in enumerate(lm) if e]
        if len(support) == 1:
            seen[support[0]] = True
    return all(seen)
