"""Left-invariant differential geometry from structure constants.

A :class:`LieAlgebra` is given by its dimension and the constants
c_{ij}^k with [e_i, e_j] = c_{ij}^k e_k in an orthonormal frame; the metric
is the identity in that frame (general metrics are expressed upstream by
changing frame, never threaded through the kernels).  On left-invariant
forms the exterior derivative reduces to the purely algebraic rule

    (d a)(X_0..X_k) = sum_{p<q} (-1)^{p+q} a([X_p, X_q], X_0..^p..^q..X_k),

the codifferential is delta = (-1)^{np+n+1} * d *  on p-forms, and the
Levi-Civita connection comes from the Koszul formula, which for a
left-invariant metric collapses to

    2 Gamma^g_{ijk} = c_{ij}^k - c_{jk}^i + c_{ki}^j.

Covariant derivatives of invariant tensors are algebraic as well:
(nabla_{e_i} t)(..e_j..) = - sum over slots Gamma_{ij}^m t(..e_m..).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Dict, List, Tuple

from .forms import DenseTensor, Index, KForm, hodge, increasing_indices


class StructureConstantError(ValueError):
    """Antisymmetry violation or malformed structure constants."""


class NonSkewTorsionError(ValueError):
    """A connection whose torsion is not totally skew-symmetric."""


class LieAlgebra:
    """Dimension + structure constants c_{ij}^k, with [e_i,e_j] = c_{ij}^k e_k.

    Constants are supplied for i < j (any order is accepted and folded with
    the sign); antisymmetry in (i, j) is enforced structurally.  Jacobi is
    NOT enforced at construction: call :func:`validate` and gate on a zero
    residual before trusting downstream geometry.
    """

    __slots__ = ("dim", "name", "_c")

    def __init__(self, dim: int, constants: Dict[Tuple[int, int, int], object] | None = None,
                 name: str = ""):
        if not 1 <= dim <= 8:
            raise StructureConstantError(f"dim must be 1..8, got {dim}")
        self.dim = dim
        self.name = name
        c: Dict[Tuple[int, int, int], object] = {}
        for (i, j, k), val in (constants or {}).items():
            if not (1 <= i <= dim and 1 <= j <= dim and 1 <= k <= dim):
                raise StructureConstantError(f"index out of range in c[{i},{j}]^{k}")
            if i == j:
                if val != 0:
                    raise StructureConstantError(f"c[{i},{i}]^{k} must vanish")
                continue
            if val == 0:
                continue
            key, sign = ((i, j, k), 1) if i < j else ((j, i, k), -1)
            prev = c.get(key)
            if prev is not None and prev != sign * val:
                raise StructureConstantError(
                    f"antisymmetry violation at c[{i},{j}]^{k}: {prev} vs {sign * val}")
            c[key] = sign * val
        self._c = c

    def c(self, i: int, j: int, k: int):
        """c_{ij}^k with full antisymmetry in (i, j)."""
        if i == j:
            return 0
        if i < j:
            return self._c.get((i, j, k), 0)
        return -self._c.get((j, i, k), 0)

    def items(self):
        """Nonzero (i, j, k) -> c_{ij}^k with i < j."""
        return self._c.items()

    def bracket_rows(self) -> Dict[Tuple[int, int], List[Tuple[int, object]]]:
        """(i, j) with i<j  ->  [(k, c_{ij}^k), ...]."""
        rows: Dict[Tuple[int, int], List[Tuple[int, object]]] = {}
        for (i, j, k), v in self._c.items():
            rows.setdefault((i, j), []).append((k, v))
        return rows

    def is_abelian(self) -> bool:
        return not self._c

    def unimodular_defect(self):
        """Max |tr ad_{e_i}|; zero iff the algebra is unimodular."""
        worst = 0
        for i in range(1, self.dim + 1):
            tr = sum(self.c(i, j, j) for j in range(1, self.dim + 1))
            worst = max(worst, abs(tr))
        return worst

    def __repr__(self):
        label = self.name or f"dim{self.dim}"
        return f"LieAlgebra({label}, nnz={len(self._c)})"


@dataclass(frozen=True)
class JacobiCertificate:
    """Max-norm of the Jacobi residual; zero is required downstream."""

    residual: object
    dim: int
    name: str = ""

    @property
    def ok(self) -> bool:
        return self.residual == 0

    def ok_within(self, tol: float) -> bool:
        return abs(self.residual) <= tol


def validate(L: LieAlgebra) -> JacobiCertificate:
    """Jacobi residual max_{i<j<k, l} |sum_cyc c_{ij}^m c_{mk}^l|."""
    worst = 0
    rows = L.bracket_rows()

    def comp(i, j, k, l):
        total = 0
        for pair, first in (((i, j), k), ((j, k), i), ((k, i), j)):
            a, b = pair
            row = rows.get((a, b) if a < b else (b, a))
            if not row:
                continue
            flip = 1 if a < b else -1
            for m, v in row:
                cm = L.c(m, first, l)
                if cm != 0:
                    total += flip * v * cm
        return total

    for i, j, k in combinations(range(1, L.dim + 1), 3):
        for l in range(1, L.dim + 1):
            worst = max(worst, abs(comp(i, j, k, l)))
    return JacobiCertificate(worst, L.dim, L.name)


def ce_d(L: LieAlgebra, a: KForm) -> KForm:
    """Exterior derivative of a left-invariant form.

    On 1-forms (d a)(X, Y) = -a([X, Y]), so d e^k reproduces the structure
    equations; d o d = 0 exactly when Jacobi holds.
    """
    if a.dim != L.dim:
        raise ValueError(f"form dim {a.dim} does not match algebra dim {L.dim}")
    k = a.degree
    if k >= L.dim:
        return KForm(L.dim, min(k + 1, 2 * L.dim), {})
    out: Dict[Index, object] = {}
    rows = L.bracket_rows()
    for jdx in increasing_indices(L.dim, k + 1):
        total = 0
        for p in range(k + 1):
            for q in range(p + 1, k + 1):
                row = rows.get((jdx[p], jdx[q]))
                if not row:
                    continue
                rest = jdx[:p] + jdx[p + 1:q] + jdx[q + 1:]
                s = -1 if (p + q) % 2 else 1
                for m, v in row:
                    av = a.coeff((m,) + rest)
                    if av != 0:
                        total += s * v * av
        if total != 0:
            out[jdx] = total
    return KForm._raw(L.dim, k + 1, out)


def codifferential(L: LieAlgebra, a: KForm) -> KForm:
    """delta = (-1)^{np+n+1} * d *  on p-forms.

    In dim 7 this is (-1)^p * d *, in dim 8 it is -* d *; the chosen
    specialization is reported by :func:`delta_rule_label`.
    """
    n, p = L.dim, a.degree
    if p == 0:
        return KForm(L.dim, 0, {})
    sign = -1 if (n * p + n + 1) % 2 else 1
    res = hodge(ce_d(L, hodge(a)))
    return res if sign == 1 else -res


def delta_rule_label(dim: int) -> str:
    if dim % 2:
        return "delta = (-1)^p * d *"
    return "delta = - * d *"


class ConnectionCoeffs:
    """Metric-connection coefficients Gamma_{ijk} = g(nabla_{e_i} e_j, e_k).

    Metric compatibility is the structural skew Gamma_{ijk} = -Gamma_{ikj},
    enforced at construction.
    """

    __slots__ = ("dim", "_g", "_by_third")

    def __init__(self, dim: int, gamma: Dict[Tuple[int, int, int], object] | None = None):
        self.dim = dim
        g: Dict[Tuple[int, int, int], object] = {}
        for (i, j, k), val in (gamma or {}).items():
            if val == 0:
                continue
            if j == k:
                raise NonSkewTorsionError(f"Gamma[{i},{j},{j}] must vanish (metric connection)")
            key, sign = ((i, j, k), 1) if j < k else ((i, k, j), -1)
            prev = g.get(key)
            if prev is not None and prev != sign * val:
                raise NonSkewTorsionError(f"skewness violation at Gamma[{i},{j},{k}]")
            g[key] = sign * val
        self._g = g
        self._by_third = None

    def gamma(self, i: int, j: int, k: int):
        if j == k:
            return 0
        if j < k:
            return self._g.get((i, j, k), 0)
        return -self._g.get((i, k, j), 0)

    def items_full(self):
        """All nonzero (i, j, k, Gamma_{ijk}) with both (j,k) orders."""
        for (i, j, k), v in self._g.items():
            yield i, j, k, v
            yield i, k, j, -v

    def rows_by_second(self) -> Dict[int, List[Tuple[int, int, object]]]:
        """j -> [(i, k, Gamma_{ijk})], both orientations included."""
        rows: Dict[int, List[Tuple[int, int, object]]] = {}
        for i, j, k, v in self.items_full():
            rows.setdefault(j, []).append((i, k, v))
        return rows

    def is_zero(self) -> bool:
        return not self._g

    def max_abs(self):
        return max((abs(v) for v in self._g.values()), default=0)

    def __add__(self, other: "ConnectionCoeffs") -> "ConnectionCoeffs":
        if self.dim != other.dim:
            raise ValueError("dim mismatch")
        g = dict(self._g)
        for key, val in other._g.items():
            v = g.get(key, 0) + val
            if v == 0:
                g.pop(key, None)
            else:
                g[key] = v
        out = ConnectionCoeffs(self.dim)
        out._g = g
        return out

    def __sub__(self, other: "ConnectionCoeffs") -> "ConnectionCoeffs":
        out = ConnectionCoeffs(other.dim)
        out._g = {k: -v for k, v in other._g.items()}
        return self + out

    def __eq__(self, other):
        if not isinstance(other, ConnectionCoeffs):
            return NotImplemented
        return self.dim == other.dim and self._g == other._g

    def __repr__(self):
        return f"ConnectionCoeffs(dim={self.dim}, nnz={len(self._g)})"


def levi_civita(L: LieAlgebra) -> ConnectionCoeffs:
    """Koszul connection of the left-invariant metric (identity in frame).

    Torsion-free (Gamma_{ijk} - Gamma_{jik} = c_{ij}^k) and metric; for a
    bi-invariant metric it reduces to Gamma_{ijk} = c_{ij}^k / 2.
    """
    from .scalars import qmul

    acc: Dict[Tuple[int, int, int], object] = {}
    n = L.dim
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            for k in range(j + 1, n + 1):
                two = L.c(i, j, k) - L.c(j, k, i) + L.c(k, i, j)
                if two != 0:
                    acc[(i, j, k)] = qmul(two, 1, 2)
    conn = ConnectionCoeffs(n)
    conn._g = acc
    return conn


def covariant_derivative(conn: ConnectionCoeffs, t: DenseTensor) -> DenseTensor:
    """nabla t of a left-invariant tensor; new first slot is the direction.

    (nabla_{e_i} t)(e_{j_1}..e_{j_r}) = - sum_s Gamma_{i j_s}^m t(..e_m..).
    """
    if conn.dim != t.dim:
        raise ValueError("dim mismatch")
    out: Dict[Index, object] = {}
    by_third: Dict[int, List[Tuple[int, int, object]]] = {}
    for i, j, k, v in conn.items_full():
        by_third.setdefault(k, []).append((i, j, v))
    for idx, val in t.items():
        for s, a in enumerate(idx):
            hits = by_third.get(a)
            if not hits:
                continue
            head, tail = idx[:s], idx[s + 1:]
            for i, b, gv in hits:
                # Gamma_{i b a} contributes -Gamma_{i b}^m t(..m..) with m = a:
                # accumulate into slot value b at direction i.
                key = (i,) + head + (b,) + tail
                w = out.get(key, 0) - gv * val
                if w == 0:
                    out.pop(key, None)
                else:
                    out[key] = w
    return DenseTensor._raw(t.dim, t.rank + 1, out)


def cov_deriv_form(conn: ConnectionCoeffs, a: KForm) -> DenseTensor:
    """nabla of a form as a rank-(k+1) tensor (direction slot first)."""
    from .forms import form_to_tensor

    return covariant_derivative(conn, form_to_tensor(a))


def directional_slice(t: DenseTensor, i: int, degree: int) -> KForm:
    """Extract the k-form t(e_i, ...) from a direction-first rank-(k+1) tensor."""
    coeffs: Dict[Index, object] = {}
    for idx, val in t.items():
        if idx[0] != i:
            continue
        rest = idx[1:]
        if all(rest[p] < rest[p + 1] for p in range(len(rest) - 1)):
            coeffs[rest] = val
    return KForm._raw(t.dim, degree, coeffs)
