"""Exact Jantzen filtrations of rational matrix families, and the SL(2,R)
intertwining-operator oracle.

A family $L(t)$ of invertible-for-generic-$t$ matrices over $\\mathbb{Q}(t)$
filters its domain by vanishing order at $t_0$: $E^r$ is spanned by vectors
$v$ admitting a curve $f_v(t)$ with $L(t)f_v(t)$ vanishing to order $\\geq r$.
Elementary divisors over the local ring at $t_0$ compute the layer dimensions
$\\dim E^r/E^{r+1}$, and the valuation identity
$D = ord_{t_0} \\det L = \\sum_r r \\cdot \\dim E^r/E^{r+1}$ certifies the
computation.  For symmetric families the same elimination done by congruence
preserves the residual forms, whose signs give the layer signatures.

The oracle diagonalizes the long intertwining operator of SL(2,R) principal
series in the K-type basis.  With $K$-weights $n$ of one parity and level
coordinate $\\nu = \\langle\\nu, \\alpha^\\vee\\rangle$, the ladder recurrence
forces $c_{n+2}/c_n = (n+1-\\nu)/(n+1+\\nu)$, giving the closed forms

    even:  c_{2m} = prod_{j=0}^{m-1} (2j+1-nu)/(2j+1+nu)
    odd:   c_{2m+1} = prod_{j=1}^{m} (2j-nu)/(2j+nu)

normalized to $+1$ on each lowest K-type ($c_{-n} = c_n$).  The raw operator
is antisymmetric across the two odd half-ladders ($a_{-n} = -a_n$), which is
the twist applied when reading off invariant-form positivity.  The full
derivation from the rank-one integral lives in docs/intertwining.md; the
closed form is gated by the determinant identity above and by matching its
zero locus against the reducibility hyperplanes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

from .errors import DegenerateResidual, SchemaError, SingularFamily
from .sigring import WElem, W_ONE, W_S

__all__ = [
    "RatFn",
    "parse_ratmatrix",
    "ratmatrix_to_json_obj",
    "jantzen_levels",
    "level_signatures",
    "sl2_intertwining",
    "sl2_ktypes",
    "sl2_c_function",
    "oracle_signature",
    "oracle_unitary",
]

QPoly = Tuple[Fraction, ...]


def _q_trim(c: Sequence[Fraction]) -> QPoly:
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _q_add(a: QPoly, b: QPoly) -> QPoly:
    n = max(len(a), len(b))
    return _q_trim(
        [
            (a[i] if i < len(a) else Fraction(0))
            + (b[i] if i < len(b) else Fraction(0))
            for i in range(n)
        ]
    )


def _q_neg(a: QPoly) -> QPoly:
    return tuple(-x for x in a)


def _q_mul(a: QPoly, b: QPoly) -> QPoly:
    if not a or not b:
        return ()
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _q_trim(out)


def _q_divmod(a: QPoly, b: QPoly) -> Tuple[QPoly, QPoly]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    r = list(a)
    while len(r) >= len(b) and _q_trim(r):
        r = list(_q_trim(r))
        if len(r) < len(b):
            break
        k = len(r) - len(b)
        c = r[-1] / b[-1]
        q[k] = c
        for i, x in enumerate(b):
            r[i + k] -= c * x
        r = list(_q_trim(r))
    return _q_trim(q), _q_trim(r)


def _q_gcd(a: QPoly, b: QPoly) -> QPoly:
    while b:
        _, r = _q_divmod(a, b)
        a, b = b, r
    if a:
        lead = a[-1]
        a = tuple(x / lead for x in a)
    return a


def _q_eval(a: QPoly, x: Fraction) -> Fraction:
    out = Fraction(0)
    for c in reversed(a):
        out = out * x + c
    return out


def _q_from_ints(c: Sequence[int]) -> QPoly:
    return _q_trim([Fraction(x) for x in c])


@dataclass(frozen=True)
class RatFn:
    """Rational function num/den, integer coefficients ascending in t,
    gcd-reduced with positive leading denominator coefficient."""

    num: Tuple[int, ...]
    den: Tuple[int, ...] = (1,)

    def __post_init__(self):
        num = _q_from_ints(self.num)
        den = _q_from_ints(self.den)
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            object.__setattr__(self, "num", ())
            object.__setattr__(self, "den", (1,))
            return
        g = _q_gcd(num, den)
        if len(g) > 1:
            num, _ = _q_divmod(num, g)
            den, _ = _q_divmod(den, g)
        # jointly primitive integer representative, so num/den is unchanged
        scale = 1
        for x in num + den:
            scale = scale * x.denominator // gcd(scale, x.denominator)
        ni = [int(x * scale) for x in num]
        di = [int(x * scale) for x in den]
        g2 = 0
        for x in ni + di:
            g2 = gcd(g2, abs(x))
        if g2 > 1:
            ni = [x // g2 for x in ni]
            di = [x // g2 for x in di]
        if di[-1] < 0:
            ni = [-x for x in ni]
            di = [-x for x in di]
        object.__setattr__(self, "num", tuple(ni))
        object.__setattr__(self, "den", tuple(di))

    @staticmethod
    def const(x) -> "RatFn":
        x = Fraction(x)
        return RatFn((x.numerator,), (x.denominator,))

    @staticmethod
    def linear(a0: int, a1: int) -> "RatFn":
        """a0 + a1 t."""
        return RatFn((a0, a1))

    def is_zero(self) -> bool:
        return not self.num

    def __bool__(self) -> bool:
        return bool(self.num)

    def _qn(self) -> QPoly:
        return _q_from_ints(self.num)

    def _qd(self) -> QPoly:
        return _q_from_ints(self.den)

    def __add__(self, other: "RatFn") -> "RatFn":
        n = _q_add(
            _q_mul(self._qn(), other._qd()), _q_mul(other._qn(), self._qd())
        )
        return _ratfn_from_q(n, _q_mul(self._qd(), other._qd()))

    def __sub__(self, other: "RatFn") -> "RatFn":
        return self + (-other)

    def __neg__(self) -> "RatFn":
        return RatFn(tuple(-x for x in self.num), self.den)

    def __mul__(self, other: "RatFn") -> "RatFn":
        return _ratfn_from_q(
            _q_mul(self._qn(), other._qn()), _q_mul(self._qd(), other._qd())
        )

    def __truediv__(self, other: "RatFn") -> "RatFn":
        if other.is_zero():
            raise ZeroDivisionError("division by the zero function")
        return _ratfn_from_q(
            _q_mul(self._qn(), other._qd()), _q_mul(self._qd(), other._qn())
        )

    def valuation(self, t0: Fraction) -> Optional[int]:
        """Order of vanishing at t0 (negative at a pole, None for 0)."""
        if self.is_zero():
            return None
        t0 = Fraction(t0)
        return _q_val(self._qn(), t0) - _q_val(self._qd(), t0)

    def residual(self, t0: Fraction) -> Fraction:
        """Value of (t-t0)^{-val} f at t0; nonzero for nonzero f."""
        if self.is_zero():
            raise ZeroDivisionError("zero function has no residual")
        t0 = Fraction(t0)
        factor = (-t0, Fraction(1))
        n, d = self._qn(), self._qd()
        while _q_eval(n, t0) == 0:
            n, _ = _q_divmod(n, factor)
        while _q_eval(d, t0) == 0:
            d, _ = _q_divmod(d, factor)
        return _q_eval(n, t0) / _q_eval(d, t0)

    def evaluate(self, t0: Fraction) -> Fraction:
        t0 = Fraction(t0)
        dv = _q_eval(self._qd(), t0)
        if dv == 0:
            raise ZeroDivisionError("pole at t0")
        return _q_eval(self._qn(), t0) / dv

    def to_json_obj(self) -> dict:
        return {"num": list(self.num), "den": list(self.den)}

    def __str__(self) -> str:
        def poly(c):
            if not c:
                return "0"
            parts = []
            for i, x in enumerate(c):
                if x == 0:
                    continue
                if i == 0:
                    parts.append(str(x))
                else:
                    var = "t" if i == 1 else "t^%d" % i
                    if x == 1:
                        parts.append(var)
                    elif x == -1:
                        parts.append("-" + var)
                    else:
                        parts.append("%d %s" % (x, var))
            return " + ".join(parts).replace("+ -", "- ")

        if self.den == (1,):
            return poly(self.num)
        return "(%s)/(%s)" % (poly(self.num), poly(self.den))


def _ratfn_from_q(n: QPoly, d: QPoly) -> RatFn:
    if not n:
        return RAT_ZERO
    den_l = 1
    for x in n + d:
        den_l = den_l * x.denominator // gcd(den_l, x.denominator)
    return RatFn(
        tuple(int(x * den_l) for x in n), tuple(int(x * den_l) for x in d)
    )


def _q_val(a: QPoly, t0: Fraction) -> int:
    v = 0
    factor = (-t0, Fraction(1))
    while a and _q_eval(a, t0) == 0:
        a, _ = _q_divmod(a, factor)
        v += 1
    return v


RAT_ZERO = RatFn((), (1,))
RAT_ONE = RatFn((1,), (1,))

RatMatrix = List[List[RatFn]]


def parse_ratmatrix(data: Union[str, bytes, Sequence]) -> RatMatrix:
    """Square array of {"num": [...], "den": [...]} entries."""
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as e:
            raise SchemaError("not valid JSON: %s" % e)
    if isinstance(data, Mapping) and "entries" in data:
        data = data["entries"]
    if not isinstance(data, Sequence) or not data:
        raise SchemaError("matrix must be a nonempty square array")
    n = len(data)
    out: RatMatrix = []
    for row in data:
        if not isinstance(row, Sequence) or len(row) != n:
            raise SchemaError("matrix must be square")
        cells = []
        for cell in row:
            if not isinstance(cell, Mapping) or "num" not in cell:
                raise SchemaError('entries must be {"num": [...], "den": [...]}')
            for key in ("num", "den"):
                seq = cell.get(key, [1])
                if (
                    not isinstance(seq, Sequence)
                    or isinstance(seq, (str, bytes))
                    or any(
                        not isinstance(x, int) or isinstance(x, bool)
                        for x in seq
                    )
                ):
                    raise SchemaError("coefficients must be integers")
            try:
                cells.append(
                    RatFn(tuple(cell["num"]), tuple(cell.get("den", (1,))))
                )
            except (TypeError, ValueError, ZeroDivisionError) as e:
                raise SchemaError("bad entry: %s" % e)
        out.append(cells)
    return out


def ratmatrix_to_json_obj(m: RatMatrix) -> list:
    return [[f.to_json_obj() for f in row] for row in m]


# ---------------------------------------------------------------------------
# filtration

def _det(m: RatMatrix) -> RatFn:
    """Determinant by minor expansion with column-subset memoization."""
    n = len(m)
    memo: Dict[Tuple[int, int], RatFn] = {}

    def rec(row: int, cols: int) -> RatFn:
        if row == n:
            return RAT_ONE
        key = (row, cols)
        hit = memo.get(key)
        if hit is not None:
            return hit
        acc = RAT_ZERO
        sign = 1
        for j in range(n):
            if not (cols >> j) & 1:
                continue
            entry = m[row][j]
            if entry:
                term = entry * rec(row + 1, cols & ~(1 << j))
                acc = acc + (term if sign > 0 else -term)
            sign = -sign
        memo[key] = acc
        return acc

    return rec(0, (1 << n) - 1)


def _min_valuation_pivot(a: RatMatrix, k: int, t0: Fraction):
    """Position of minimal valuation in the trailing submatrix, row-major on
    ties; None when the submatrix vanishes identically."""
    n = len(a)
    best = None
    best_v = None
    for i in range(k, n):
        for j in range(k, n):
            if not a[i][j]:
                continue
            v = a[i][j].valuation(t0)
            if best_v is None or v < best_v:
                best, best_v = (i, j), v
    return best


def jantzen_levels(
    L: RatMatrix, t0
) -> List[Tuple[int, int, List[Tuple[Fraction, ...]]]]:
    """Layers (level r, dim E^r/E^{r+1}, basis vectors at t0) of the Jantzen
    filtration of L at t0, certified by D = ord det = sum r dim."""
    t0 = Fraction(t0)
    n = len(L)
    det = _det(L)
    if det.is_zero():
        raise SingularFamily("determinant vanishes identically")
    a: RatMatrix = [list(row) for row in L]
    # C tracks right (domain) column operations; its columns at the end are
    # the adapted basis, regular at t0 because every quotient has val >= 0
    C: RatMatrix = [
        [RAT_ONE if i == j else RAT_ZERO for j in range(n)] for i in range(n)
    ]
    orders = [0] * n
    for k in range(n):
        piv = _min_valuation_pivot(a, k, t0)
        if piv is None:
            raise SingularFamily("family is singular at every order")
        pi, pj = piv
        if pi != k:
            a[k], a[pi] = a[pi], a[k]
        if pj != k:
            for row in a:
                row[k], row[pj] = row[pj], row[k]
            for row in C:
                row[k], row[pj] = row[pj], row[k]
        p = a[k][k]
        for i in range(k + 1, n):
            if a[i][k]:
                f = a[i][k] / p
                for j in range(k, n):
                    a[i][j] = a[i][j] - f * a[k][j]
        for j in range(k + 1, n):
            if a[k][j]:
                f = a[k][j] / p
                for i in range(k, n):
                    a[i][j] = a[i][j] - f * a[i][k]
                for i in range(n):
                    C[i][j] = C[i][j] - f * C[i][k]
        orders[k] = p.valuation(t0)
    D = det.valuation(t0)
    if D != sum(orders):
        raise SingularFamily(
            "valuation bookkeeping failed: ord det = %d, sum of layer "
            "orders = %d" % (D, sum(orders))
        )
    layers: Dict[int, List[Tuple[Fraction, ...]]] = {}
    for k in range(n):
        vec = tuple(C[i][k].evaluate(t0) for i in range(n))
        layers.setdefault(orders[k], []).append(vec)
    return [(r, len(vs), vs) for r, vs in sorted(layers.items())]


def level_signatures(L: RatMatrix, t0) -> List[Tuple[int, WElem]]:
    """Signatures of the residual forms on the Jantzen layers of a symmetric
    family, via congruence diagonalization over the local ring at t0."""
    t0 = Fraction(t0)
    n = len(L)
    for i in range(n):
        for j in range(n):
            if L[i][j] != L[j][i]:
                raise ValueError("level_signatures needs a symmetric family")
    a: RatMatrix = [list(row) for row in L]

    def sym_swap(i, j):
        a[i], a[j] = a[j], a[i]
        for row in a:
            row[i], row[j] = row[j], row[i]

    def sym_transfer(i, j):
        # row_i += row_j then col_i += col_j
        for c in range(n):
            a[i][c] = a[i][c] + a[j][c]
        for r in range(n):
            a[r][i] = a[r][i] + a[r][j]

    for k in range(n):
        piv = _min_valuation_pivot(a, k, t0)
        if piv is None:
            raise DegenerateResidual(
                "form is identically zero on a Jantzen layer"
            )
        v = a[piv[0]][piv[1]].valuation(t0)
        diag = [
            i for i in range(k, n) if a[i][i] and a[i][i].valuation(t0) == v
        ]
        if diag:
            pi = diag[0]
        else:
            # strictly off-diagonal minimum: transfer it onto the diagonal;
            # the cross term 2 a_ij dominates a_ii + a_jj, so a_ii picks up
            # the minimal valuation regardless of signs
            sym_transfer(piv[0], piv[1])
            pi = piv[0]
        if pi != k:
            sym_swap(pi, k)
        p = a[k][k]
        for i in range(k + 1, n):
            if a[i][k]:
                f = a[i][k] / p
                for j in range(k, n):
                    a[i][j] = a[i][j] - f * a[k][j]
                for j in range(k, n):
                    a[j][i] = a[j][i] - f * a[j][k]
    levels: Dict[int, WElem] = {}
    for k in range(n):
        d = a[k][k]
        if d.is_zero():
            raise DegenerateResidual("zero diagonal after congruence")
        r = d.valuation(t0)
        sign = d.residual(t0)
        w = W_ONE if sign > 0 else W_S
        levels[r] = levels.get(r, WElem(0, 0)) + w
    return sorted(levels.items())


# ---------------------------------------------------------------------------
# SL(2,R) intertwining oracle

def sl2_ktypes(parity: int, cutoff: int) -> List[int]:
    """K-type weights of one parity up to |n| <= cutoff, ascending."""
    if parity not in (1, -1):
        raise ValueError("parity must be +1 (even) or -1 (odd)")
    start = 0 if parity == 1 else 1
    out = set()
    n = start
    while n <= cutoff:
        out.add(n)
        out.add(-n)
        n += 2
    return sorted(out)


def _c_ratio(n_mid: int) -> RatFn:
    """(n_mid - nu)/(n_mid + nu): the ladder ratio c_{n+2}/c_n at n+1 =
    n_mid."""
    return RatFn((n_mid, -1), (n_mid, 1))


def sl2_c_function(parity: int, n: int) -> RatFn:
    """Closed-form c_n(nu); c_{-n} = c_n by the per-half normalization."""
    if parity not in (1, -1):
        raise ValueError("parity must be +1 (even) or -1 (odd)")
    n = abs(n)
    if parity == 1:
        if n % 2:
            raise ValueError("even-parity K-types are even")
        out = RAT_ONE
        for j in range(n // 2):
            out = out * _c_ratio(2 * j + 1)
        return out
    if n % 2 == 0:
        raise ValueError("odd-parity K-types are odd")
    out = RAT_ONE
    for j in range(1, (n - 1) // 2 + 1):
        out = out * _c_ratio(2 * j)
    return out


def sl2_intertwining(parity: int, cutoff: int) -> RatMatrix:
    """Diagonal intertwining family in the K-type basis of sl2_ktypes,
    normalized to 1 on each lowest K-type."""
    kt = sl2_ktypes(parity, cutoff)
    n = len(kt)
    out = [[RAT_ZERO for _ in range(n)] for _ in range(n)]
    for i, w in enumerate(kt):
        out[i][i] = sl2_c_function(parity, w)
    return out


def _flip(w: WElem) -> WElem:
    return WElem(w.q, w.p)


def oracle_signature(parity: int, nu, cutoff: int) -> Dict[int, WElem]:
    """Sign of the c-form per K-type as 1 or s, as a limit from below: at a
    reducibility point the 1x1 Jantzen layer data (r, residual sign) is read
    off and the below-wall sign is residual times (-1)^r."""
    nu = Fraction(nu)
    out: Dict[int, WElem] = {}
    for n in sl2_ktypes(parity, cutoff):
        f = sl2_c_function(parity, n)
        ((r, sig),) = level_signatures([[f]], nu)
        out[n] = sig if r % 2 == 0 else _flip(sig)
    return out


def oracle_unitary(parity: int, nu, cutoff: int = 8) -> bool:
    """Classification by the raw operator: positivity of the invariant form
    on the K-types actually present in the quotient.

    The raw odd-parity operator is antisymmetric across the half-ladders
    (a_{-n} = -a_n), so the normalized oracle value is negated on n < 0.  At
    nu = 0 the operator degenerates and the form is the definite one."""
    nu = Fraction(nu)
    if nu == 0:
        return True
    signs = set()
    for n in sl2_ktypes(parity, cutoff):
        f = sl2_c_function(parity, n)
        v = f.evaluate(nu)
        if v == 0:
            continue
        if parity == -1 and n < 0:
            v = -v
        signs.add(v > 0)
        if len(signs) > 1:
            return False
    return True
