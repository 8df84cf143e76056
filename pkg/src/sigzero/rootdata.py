"""Based root data with Cartan involutions.

A root datum is the quadruple (X*, roots, X_*, coroots) with its integral
pairing; a Cartan involution enters as an order-2 lattice map theta on X*
permuting the roots.  Roots fall into three classes:

    real       theta(alpha) = -alpha
    imaginary  theta(alpha) =  alpha
    complex    otherwise (these come in 4-tuples {a, theta a, -a, -theta a})

Two integer invariants of a parameter with infinitesimal character
$d\\gamma = d\\lambda + \\nu$ are computed here.  The length counts pairs
$(\\alpha, -\\theta\\alpha)$ of complex roots lying in the positive system
$R^+(d\\gamma)$, plus a contribution c_real of the real integral subsystem
(computed natively only for products of $A_1$'s, where it equals the number
of factors).  The orientation number counts nonintegral roots that are
positively oriented for $\\gamma$: complex pairs with both pairings positive,
and real roots whose pairing has integer part of the parity selected by the
$\\mathbb{Z}/2$ grading on real coroots.  Orientation numbers are locally
constant in $\\nu$ and jump by 1 across single reorienting hyperplanes.

All comparisons are exact over Fraction coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .errors import InvalidInvolution, UnsupportedRealSystem

__all__ = [
    "RootDatum",
    "Involution",
    "RootClass",
    "classify_roots",
    "integral_system",
    "length",
    "orientation_number",
    "dot",
    "norm_sq",
]

Vector = Tuple[Fraction, ...]


def _vec(v: Sequence) -> Vector:
    return tuple(Fraction(x) for x in v)


def dot(u: Sequence, v: Sequence) -> Fraction:
    return sum((Fraction(a) * Fraction(b) for a, b in zip(u, v)), Fraction(0))


def norm_sq(u: Sequence) -> Fraction:
    return dot(u, u)


def _lex_positive(v: Sequence[Fraction]) -> bool:
    for x in v:
        if x != 0:
            return x > 0
    return False


@dataclass(frozen=True)
class RootDatum:
    """Roots and coroots in dual lattices with an integer pairing matrix.

    pairing is applied as <x, y> = x^T B y; the default None means the
    standard dot product.
    """

    rank: int
    roots: Tuple[Vector, ...]
    coroots: Tuple[Vector, ...]
    pairing: Optional[Tuple[Tuple[int, ...], ...]] = None

    def __post_init__(self):
        object.__setattr__(self, "roots", tuple(_vec(r) for r in self.roots))
        object.__setattr__(self, "coroots", tuple(_vec(c) for c in self.coroots))
        if len(self.roots) != len(self.coroots):
            raise ValueError("roots and coroots must be in bijection")
        for i, (a, av) in enumerate(zip(self.roots, self.coroots)):
            if self.pair(a, av) != 2:
                raise ValueError("pairing <alpha, alpha^vee> != 2 at index %d" % i)
        for a in self.roots:
            if tuple(-x for x in a) not in self.roots:
                raise ValueError("root set not closed under negation")

    def pair(self, x: Sequence, y: Sequence) -> Fraction:
        if self.pairing is None:
            return dot(x, y)
        out = Fraction(0)
        for i, xi in enumerate(x):
            for j, yj in enumerate(y):
                out += Fraction(xi) * self.pairing[i][j] * Fraction(yj)
        return out

    def root_index(self, root: Sequence) -> int:
        return self.roots.index(_vec(root))

    def negation_index(self, i: int) -> int:
        return self.roots.index(tuple(-x for x in self.roots[i]))

    def to_json(self) -> dict:
        return {
            "rank": self.rank,
            "roots": [[str(x) for x in r] for r in self.roots],
            "coroots": [[str(x) for x in c] for c in self.coroots],
            "pairing": None if self.pairing is None else [list(row) for row in self.pairing],
        }

    @staticmethod
    def from_json(data: Mapping) -> "RootDatum":
        pairing = data.get("pairing")
        return RootDatum(
            rank=int(data["rank"]),
            roots=tuple(tuple(Fraction(x) for x in r) for r in data["roots"]),
            coroots=tuple(tuple(Fraction(x) for x in c) for c in data["coroots"]),
            pairing=None if pairing is None else tuple(tuple(int(x) for x in row) for row in pairing),
        )


@dataclass(frozen=True)
class Involution:
    """Order-2 lattice map theta on X*, stored as a matrix of rows."""

    theta: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(
            self, "theta", tuple(tuple(int(x) for x in row) for row in self.theta)
        )

    def apply(self, v: Sequence) -> Vector:
        n = len(self.theta)
        return tuple(
            sum((Fraction(self.theta[i][j]) * Fraction(v[j]) for j in range(n)), Fraction(0))
            for i in range(n)
        )

    def validate(self, rd: RootDatum) -> None:
        n = rd.rank
        if len(self.theta) != n or any(len(row) != n for row in self.theta):
            raise InvalidInvolution("theta has wrong shape")
        for j in range(n):
            e = tuple(Fraction(1) if i == j else Fraction(0) for i in range(n))
            if self.apply(self.apply(e)) != e:
                raise InvalidInvolution("theta^2 != identity")
        for a in rd.roots:
            if self.apply(a) not in rd.roots:
                raise InvalidInvolution("theta does not permute the roots")

    def to_json(self) -> list:
        return [list(row) for row in self.theta]


@dataclass(frozen=True)
class RootClass:
    """Per-root classification; noncompact flags for imaginary roots are
    supplied per Cartan by the params layer and stay None here."""

    tags: Tuple[str, ...]
    noncompact: Optional[frozenset] = None

    def real_indices(self) -> Tuple[int, ...]:
        return tuple(i for i, t in enumerate(self.tags) if t == "real")

    def imaginary_indices(self) -> Tuple[int, ...]:
        return tuple(i for i, t in enumerate(self.tags) if t == "imaginary")

    def complex_indices(self) -> Tuple[int, ...]:
        return tuple(i for i, t in enumerate(self.tags) if t == "complex")


def classify_roots(rd: RootDatum, inv: Involution) -> RootClass:
    """Tag every root real / imaginary / complex for the involution."""
    inv.validate(rd)
    tags: List[str] = []
    for a in rd.roots:
        ta = inv.apply(a)
        if ta == tuple(-x for x in a):
            tags.append("real")
        elif ta == a:
            tags.append("imaginary")
        else:
            tags.append("complex")
    return RootClass(tuple(tags))


def integral_system(rd: RootDatum, xi: Sequence) -> Tuple[int, ...]:
    """Indices of roots alpha with <xi, alpha^vee> an integer."""
    xi = _vec(xi)
    out = []
    for i, av in enumerate(rd.coroots):
        if rd.pair(xi, av).denominator == 1:
            out.append(i)
    return tuple(out)


def _positive_for(rd: RootDatum, dgamma: Vector, i: int) -> bool:
    # R^+(d gamma): strictly positive pairing wins; singular roots fall back
    # to lexicographic positivity of their coordinates.
    v = rd.pair(dgamma, rd.coroots[i])
    if v != 0:
        return v > 0
    return _lex_positive(rd.roots[i])


def length(
    rd: RootDatum,
    inv: Involution,
    rc: RootClass,
    dgamma: Sequence,
    c_real: Optional[int] = None,
) -> int:
    """Length of a parameter at infinitesimal character dgamma.

    Counts complex pairs (alpha, -theta alpha) inside R^+(dgamma) and adds
    c_real.  Natively c_real is the number of A_1 factors of the real
    integral system; anything larger must be supplied by the caller.
    """
    dgamma = _vec(dgamma)
    pos = [i for i in range(len(rd.roots)) if _positive_for(rd, dgamma, i)]
    pos_set = set(pos)
    pairs = set()
    for i in pos:
        if rc.tags[i] != "complex":
            continue
        mta = tuple(-x for x in inv.apply(rd.roots[i]))
        j = rd.root_index(mta)
        if j in pos_set:
            pairs.add(frozenset((i, j)))
    n_pairs = len(pairs)

    if c_real is None:
        real_int_pos = [
            i
            for i in pos
            if rc.tags[i] == "real"
            and rd.pair(dgamma, rd.coroots[i]).denominator == 1
        ]
        for a in real_int_pos:
            for b in real_int_pos:
                if a != b and rd.pair(rd.roots[a], rd.coroots[b]) != 0:
                    raise UnsupportedRealSystem(
                        "real integral system is not a product of A1's; "
                        "supply c_real"
                    )
        c_real = len(real_int_pos)
    return n_pairs + c_real


def orientation_number(
    rd: RootDatum,
    inv: Involution,
    grading: Mapping[int, int],
    dlambda: Sequence,
    nu: Sequence,
) -> int:
    """Orientation number of the parameter with gamma = dlambda + nu.

    Rule (a): complex pairs {alpha, -theta alpha}, nonintegral, with both
    pairings strictly positive.  Rule (b): real roots beta with
    <gamma, beta^vee> positive and nonintegral whose integer part is even
    when the grading on beta is +1 and odd when it is -1.
    """
    gamma = tuple(Fraction(a) + Fraction(b) for a, b in zip(_vec(dlambda), _vec(nu)))
    rc = classify_roots(rd, inv)
    count = 0

    seen = set()
    for i in rc.complex_indices():
        v1 = rd.pair(gamma, rd.coroots[i])
        if v1 <= 0 or v1.denominator == 1:
            continue
        j = rd.root_index(tuple(-x for x in inv.apply(rd.roots[i])))
        key = frozenset((i, j))
        if key in seen:
            continue
        v2 = rd.pair(gamma, rd.coroots[j])
        if v2 > 0:
            seen.add(key)
            count += 1

    for i in rc.real_indices():
        v = rd.pair(gamma, rd.coroots[i])
        if v <= 0 or v.denominator == 1:
            continue
        floor_parity = (v.numerator // v.denominator) % 2
        g = grading.get(i, 1)
        if (g == 1 and floor_parity == 0) or (g == -1 and floor_parity == 1):
            count += 1

    return count
