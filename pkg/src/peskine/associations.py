"""Associated K3 surfaces and cubic fourfolds for special trivectors.

For each admissible discriminant d the association questions are decided
twice, by independent routes that must agree:

  * a closed form in terms of the prime divisors of d, and
  * a brute-force congruence oracle that scans the full modulus for a
    solution of the gluing equation between discriminant forms.

The oracle congruences come from matching the generator value of the
marking complement's discriminant form against the K3 or cubic side.
The complement is an even lattice; in the branches with 22 | d its
generator value is 8/11 - 11/d mod 2Z (the even representative), which
fixes the integer constants below.  The resulting verdicts reproduce
every row of the reference table, which is shipped as a fixture.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from importlib import resources

from .markings import admissibility_reason, admissible
from .ntheory import factorize, is_square_mod, legendre


class CriterionMismatchError(RuntimeError):
    """Closed form and oracle disagree; always a bug, never data."""


def _require_admissible(d: int) -> None:
    if not admissible(d):
        raise ValueError(f"not an admissible discriminant: {admissibility_reason(d)}")


def k3_closed(d: int) -> bool:
    """Closed-form test for an associated K3 surface of degree d.

    True iff d is divisible by neither 4 nor 121 and every odd prime
    dividing d is a square modulo 11 (p = 11 itself counts as a square,
    which is what makes d = 22 succeed).
    """
    _require_admissible(d)
    if d % 4 == 0 or d % 121 == 0:
        return False
    return all(
        legendre(p, 11) >= 0 for p, _ in factorize(d) if p != 2
    )


def k3_witness(d: int) -> int | None:
    """Witness k for the K3 gluing congruence, or None.

    For d not divisible by 22 the congruence is k^2 = -11 (mod 2d).
    For 22 | d with d' = d/11 the discriminant group is cyclic only if
    121 does not divide d, and the congruence is k^2 = 8d' - 11
    (mod 2d).  The scan runs over the full modulus, with no CRT
    shortcut, so this route stays independent of k3_closed.
    """
    _require_admissible(d)
    if d % 22 != 0:
        return _scan_square(-11, 2 * d)
    if d % 121 == 0:
        return None
    return _scan_square(8 * (d // 11) - 11, 2 * d)


def k3_oracle(d: int) -> bool:
    """Brute-force counterpart of k3_closed."""
    return k3_witness(d) is not None


def cubic_closed(d: int) -> bool:
    """Closed-form test for an associated cubic fourfold of discriminant d.

    Conditions: (a) d = 0 or 2 mod 6; (b) d divisible by neither 9 nor
    121; (c) 33 a square modulo every prime divisor of d (0 counts, so
    p = 3 and p = 11 pass); (d) if 66 | d, the number of prime divisors
    of d congruent to 2 mod 3, counted with multiplicity and including
    2 and 11, is odd.
    """
    _require_admissible(d)
    if d % 6 not in (0, 2):
        return False
    if d % 9 == 0 or d % 121 == 0:
        return False
    factors = factorize(d)
    if not all(is_square_mod(33, p) for p, _ in factors):
        return False
    if d % 66 == 0:
        count = sum(e for p, e in factors if p % 3 == 2)
        if count % 2 == 0:
            return False
    return True


def cubic_witness(d: int) -> int | None:
    """Witness k for the cubic gluing congruence, or None.

    Case split on d mod 6 and divisibility by 22, with d' = d/11 in
    case 3 and d' = d/66 in case 4:

      1. d = 2 mod 6, 22 does not divide d:
             -33 k^2 = 2d - 1          (mod 6d)
      2. d = 0 mod 6, 22 does not divide d, 9 does not divide d:
             -11 k^2 = 2(d/3) - 3      (mod 2d)
      3. d = 2 mod 6, 22 | d, 121 does not divide d:
             ((2d-1)/3) k^2 = 8d' - 11 (mod 2d)
      4. 66 | d, neither 9 nor 121 divides d:
             (44d' - 3) k^2 = 48d' - 11 (mod 2d)

    Cyclicity failures (9 | d in cases 2 and 4, 121 | d in cases 3 and
    4) return None.  Scans run over the full modulus.
    """
    _require_admissible(d)
    r6 = d % 6
    if r6 not in (0, 2):
        return None
    if d % 22 != 0:
        if r6 == 2:
            return _scan_congruence(-33, 2 * d - 1, 6 * d)
        if d % 9 == 0:
            return None
        return _scan_congruence(-11, 2 * (d // 3) - 3, 2 * d)
    if d % 121 == 0:
        return None
    if r6 == 2:
        dp = d // 11
        return _scan_congruence((2 * d - 1) // 3, 8 * dp - 11, 2 * d)
    if d % 9 == 0:
        return None
    dp = d // 66
    return _scan_congruence(44 * dp - 3, 48 * dp - 11, 2 * d)


def cubic_oracle(d: int) -> bool:
    """Brute-force counterpart of cubic_closed."""
    return cubic_witness(d) is not None


def _scan_square(a: int, m: int) -> int | None:
    a %= m
    for k in range(m):
        if k * k % m == a:
            return k
    return None


def _scan_congruence(coeff: int, rhs: int, m: int) -> int | None:
    coeff %= m
    rhs %= m
    for k in range(m):
        if coeff * k * k % m == rhs:
            return k
    return None


@dataclass(frozen=True)
class AssociationRow:
    """One discriminant's association verdicts plus table fixtures.

    assoc_k3 and assoc_cubic are computed (closed form and oracle must
    agree before the row exists); hilb2_fixture and fano_fixture are
    read-only values from the shipped table and are None off-fixture.
    """

    d: int
    assoc_k3: bool
    assoc_cubic: bool
    hilb2_fixture: bool | None = None
    fano_fixture: bool | None = None


def association_row(d: int) -> AssociationRow:
    """Compute both verdicts for d, erroring on closed/oracle mismatch."""
    k3c, k3o = k3_closed(d), k3_oracle(d)
    if k3c != k3o:
        raise CriterionMismatchError(
            f"d = {d}: K3 closed form says {k3c}, oracle says {k3o}"
        )
    cc, co = cubic_closed(d), cubic_oracle(d)
    if cc != co:
        raise CriterionMismatchError(
            f"d = {d}: cubic closed form says {cc}, oracle says {co}"
        )
    fix = table1_fixture().get(d)
    return AssociationRow(
        d,
        k3c,
        cc,
        hilb2_fixture=fix.hilb2_fixture if fix else None,
        fano_fixture=fix.fano_fixture if fix else None,
    )


def table1(ds) -> list[AssociationRow]:
    """Association rows for the given discriminants, in input order."""
    return [association_row(d) for d in ds]


_FIXTURE_CACHE: dict[int, AssociationRow] | None = None


def table1_fixture() -> dict[int, AssociationRow]:
    """The shipped reference table, keyed by discriminant."""
    global _FIXTURE_CACHE
    if _FIXTURE_CACHE is None:
        text = (
            resources.files("peskine")
            .joinpath("fixtures/table1.fixture")
            .read_text(encoding="utf-8")
        )
        _FIXTURE_CACHE = parse_table(text)
    return _FIXTURE_CACHE


def parse_table(text: str) -> dict[int, AssociationRow]:
    rows = {}
    reader = csv.DictReader(io.StringIO(text))
    for rec in reader:
        d = int(rec["d"])
        rows[d] = AssociationRow(
            d,
            rec["assoc_k3"] == "1",
            rec["assoc_cubic"] == "1",
            hilb2_fixture=rec["hilb2_fixture"] == "1",
            fano_fixture=rec["fano_fixture"] == "1",
        )
    return rows


CSV_HEADER = "d,assoc_k3,assoc_cubic,hilb2_fixture,fano_fixture"


def render_csv(rows) -> str:
    """CSV rendering; fixture columns are empty off-fixture."""
    def cell(v):
        return "" if v is None else ("1" if v else "0")

    lines = [CSV_HEADER]
    for r in rows:
        lines.append(
            f"{r.d},{cell(r.assoc_k3)},{cell(r.assoc_cubic)},"
            f"{cell(r.hilb2_fixture)},{cell(r.fano_fixture)}"
        )
    return "\n".join(lines) + "\n"


def render_text(rows) -> str:
    """Aligned text rendering with yes/no/- cells."""
    def cell(v):
        return "-" if v is None else ("yes" if v else "no")

    header = ("d", "assoc_k3", "assoc_cubic", "hilb2", "fano")
    table = [header]
    for r in rows:
        table.append(
            (
                str(r.d),
                cell(r.assoc_k3),
                cell(r.assoc_cubic),
                cell(r.hilb2_fixture),
                cell(r.fano_fixture),
            )
        )
    widths = [max(len(row[i]) for row in table) for i in range(len(header))]
    lines = [
        "  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip()
        for row in table
    ]
    return "\n".join(lines) + "\n"


def check_fixture() -> list[str]:
    """Compare computed verdicts against the shipped table.

    Returns a list of mismatch descriptions; empty means every fixture
    row is reproduced.
    """
    problems = []
    for d, fix in sorted(table1_fixture().items()):
        row = association_row(d)
        if row.assoc_k3 != fix.assoc_k3:
            problems.append(
                f"d = {d}: computed assoc_k3 = {row.assoc_k3}, "
                f"fixture says {fix.assoc_k3}"
            )
        if row.assoc_cubic != fix.assoc_cubic:
            problems.append(
                f"d = {d}: computed assoc_cubic = {row.assoc_cubic}, "
                f"fixture says {fix.assoc_cubic}"
            )
    return problems
