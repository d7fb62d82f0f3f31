"""Exact multilinear algebra on an oriented orthonormal frame of R^n, n <= 8.

Alternating forms (:class:`KForm`) store one coefficient per strictly
increasing multi-index; every sign question is settled in one place
(:func:`normalize_index`), which removes the usual class of sign bugs.
General tensors (:class:`DenseTensor`) impose no symmetry; alternation and
contraction are explicit operations.

The frame is always orthonormal and orientation-positive (vol = e_1...e_n),
and vectors are identified with 1-forms through it.  Coefficients are exact
rationals by default; the same code runs on floats because the kernels only
use ring operations.

Conventions (n-dim, k-form alpha, 1-form v):

* ``wedge``: bilinear, graded-anticommutative, associative.
* ``hodge``: *(e_I) = sign(I, I^c) e_{I^c}; then alpha ^ *beta = (alpha,beta) vol
  and *^2 = (-1)^{k(n-k)} on k-forms.
* ``interior``: (v . T)(X, Y) = T(v, X, Y), i.e. contraction in the first slot.
* ``form_inner``: sum over increasing multi-indices of coefficient products
  (the basis monomials are orthonormal).
* ``alternate``: full antisymmetrization with 1/r! so a k-form's dense image
  alternates back to itself.
"""

from __future__ import annotations

from itertools import combinations, permutations
from typing import Dict, Iterable, Iterator, Tuple

from .scalars import qmul

Index = Tuple[int, ...]

MAX_DIM = 8


class DimensionMismatch(ValueError):
    """Operands live on spaces of different dimension."""


class DegreeError(ValueError):
    """Operation undefined for the given form degree."""


def normalize_index(idx: Iterable[int]) -> Tuple[Index | None, int]:
    """Sort a multi-index, returning (sorted tuple, permutation sign).

    A repeated index returns (None, 0).  Indices are 1-based.
    """
    seq = list(idx)
    sign = 1
    # insertion sort; multi-indices have length <= 8
    for i in range(1, len(seq)):
        j = i
        while j > 0 and seq[j - 1] > seq[j]:
            seq[j - 1], seq[j] = seq[j], seq[j - 1]
            sign = -sign
            j -= 1
    for a, b in zip(seq, seq[1:]):
        if a == b:
            return None, 0
    return tuple(seq), sign


def perm_sign(perm: Iterable[int]) -> int:
    """Sign of a permutation given as a sequence of distinct comparables."""
    key, sign = normalize_index(perm)
    if key is None:
        raise ValueError("not a permutation: repeated entry")
    return sign


def increasing_indices(dim: int, degree: int) -> Iterator[Index]:
    return combinations(range(1, dim + 1), degree)


class KForm:
    """Degree-k alternating form; absent multi-indices mean zero.

    Immutable by convention: no public mutators, all operations return new
    forms, so values are safe to share across threads.
    """

    __slots__ = ("dim", "degree", "_c")

    def __init__(self, dim: int, degree: int, coeffs: Dict | None = None):
        # degree > dim is tolerated as the canonical zero of Lambda^k = 0
        # (wedge products past top degree land there); it can hold no terms.
        if not (1 <= dim <= MAX_DIM and 0 <= degree <= 2 * MAX_DIM):
            raise DegreeError(f"need 0 <= k, n <= {MAX_DIM}, got k={degree}, n={dim}")
        self.dim = dim
        self.degree = degree
        c: Dict[Index, object] = {}
        if coeffs:
            for idx, val in coeffs.items():
                key, sign = normalize_index(idx)
                if key is None or val == 0:
                    continue
                if len(key) != degree:
                    raise DegreeError(f"index {idx} has length {len(key)}, degree is {degree}")
                if key and (key[0] < 1 or key[-1] > dim):
                    raise DimensionMismatch(f"index {idx} out of range for dim {dim}")
                v = c.get(key, 0) + sign * val
                if v == 0:
                    c.pop(key, None)
                else:
                    c[key] = v
        self._c = c

    # -- accessors ---------------------------------------------------------

    def coeff(self, idx: Iterable[int]):
        """Coefficient at an arbitrary-order index: sign * stored value."""
        key, sign = normalize_index(idx)
        if key is None:
            return 0
        v = self._c.get(key, 0)
        return sign * v if v != 0 else 0

    def items(self):
        """(increasing multi-index, coefficient) pairs, nonzero only."""
        return self._c.items()

    def sorted_items(self):
        return sorted(self._c.items())

    def is_zero(self) -> bool:
        return not self._c

    def support(self):
        return frozenset(self._c)

    def max_abs(self):
        """Max |coefficient|; exact scalar (0 for the zero form)."""
        return max((abs(v) for v in self._c.values()), default=0)

    # -- ring-module structure ---------------------------------------------

    def _check_same_space(self, other: "KForm"):
        if self.dim != other.dim:
            raise DimensionMismatch(f"dim {self.dim} vs {other.dim}")
        if self.degree != other.degree:
            raise DegreeError(f"degree {self.degree} vs {other.degree}")

    def __add__(self, other: "KForm") -> "KForm":
        self._check_same_space(other)
        c = dict(self._c)
        for idx, val in other._c.items():
            v = c.get(idx, 0) + val
            if v == 0:
                c.pop(idx, None)
            else:
                c[idx] = v
        return KForm._raw(self.dim, self.degree, c)

    def __sub__(self, other: "KForm") -> "KForm":
        return self + (-other)

    def __neg__(self) -> "KForm":
        return KForm._raw(self.dim, self.degree, {i: -v for i, v in self._c.items()})

    def __mul__(self, scalar) -> "KForm":
        if scalar == 0:
            return KForm._raw(self.dim, self.degree, {})
        return KForm._raw(self.dim, self.degree, {i: v * scalar for i, v in self._c.items()})

    __rmul__ = __mul__

    def qscale(self, num: int, den: int = 1) -> "KForm":
        """Multiply by the rational num/den, mode-safely."""
        if num == 0:
            return KForm._raw(self.dim, self.degree, {})
        return KForm._raw(
            self.dim, self.degree, {i: qmul(v, num, den) for i, v in self._c.items()}
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, KForm):
            return NotImplemented
        return (self.dim, self.degree, self._c) == (other.dim, other.degree, other._c)

    def __hash__(self):
        return hash((self.dim, self.degree, tuple(self.sorted_items())))

    def __repr__(self):
        return f"KForm({self.dim}, {self.degree}, {self})"

    def __str__(self):
        if not self._c:
            return "0"
        parts = []
        for idx, val in self.sorted_items():
            mono = "e" + "".join(str(i) for i in idx) if idx else "1"
            if val == 1 and idx:
                term = mono
            elif val == -1 and idx:
                term = "-" + mono
            else:
                term = f"{val}*{mono}" if idx else f"{val}"
            parts.append(term)
        out = parts[0]
        for term in parts[1:]:
            out += " - " + term[1:] if term.startswith("-") else " + " + term
        return out

    @classmethod
    def _raw(cls, dim: int, degree: int, coeffs: Dict[Index, object]) -> "KForm":
        f = cls.__new__(cls)
        f.dim = dim
        f.degree = degree
        f._c = coeffs
        return f


def zero_form(dim: int, degree: int) -> KForm:
    return KForm._raw(dim, degree, {})


def basis_form(dim: int, idx: Iterable[int]) -> KForm:
    idx = tuple(idx)
    return KForm(dim, len(idx), {idx: 1})


def scalar_form(dim: int, value) -> KForm:
    return KForm(dim, 0, {(): value})


def volume_form(dim: int) -> KForm:
    return basis_form(dim, range(1, dim + 1))


# -- exterior-algebra operations -------------------------------------------


def wedge(a: KForm, b: KForm) -> KForm:
    """Exterior product.  Returns the zero form when degrees sum past n."""
    if a.dim != b.dim:
        raise DimensionMismatch(f"dim {a.dim} vs {b.dim}")
    k = a.degree + b.degree
    if k > a.dim:
        return zero_form(a.dim, k)
    out: Dict[Index, object] = {}
    for ia, va in a.items():
        sa = set(ia)
        for ib, vb in b.items():
            if sa & set(ib):
                continue
            key, sign = normalize_index(ia + ib)
            v = out.get(key, 0) + sign * va * vb
            if v == 0:
                out.pop(key, None)
            else:
                out[key] = v
    return KForm._raw(a.dim, k, out)


def hodge(a: KForm) -> KForm:
    """Hodge star for the orthonormal frame with orientation e_1...e_n."""
    n = a.dim
    out: Dict[Index, object] = {}
    full = range(1, n + 1)
    for idx, val in a.items():
        comp = tuple(i for i in full if i not in idx)
        _, sign = normalize_index(idx + comp)
        out[comp] = sign * val
    return KForm._raw(n, n - a.degree, out)


def interior(v: KForm, a: KForm) -> KForm:
    """Interior product v . a of a 1-form v into a, contracting the first slot."""
    if v.dim != a.dim:
        raise DimensionMismatch(f"dim {v.dim} vs {a.dim}")
    if v.degree != 1:
        raise DegreeError("interior product needs a 1-form on the left")
    if a.degree == 0:
        raise DegreeError("cannot contract into a 0-form")
    out: Dict[Index, object] = {}
    for (i,), vi in v.items():
        for idx, va in a.items():
            if i not in idx:
                continue
            pos = idx.index(i)
            rest = idx[:pos] + idx[pos + 1:]
            sign = -1 if pos % 2 else 1
            val = out.get(rest, 0) + sign * vi * va
            if val == 0:
                out.pop(rest, None)
            else:
                out[rest] = val
    return KForm._raw(a.dim, a.degree - 1, out)


def contract(b: KForm, a: KForm) -> KForm:
    """Contraction b . a of a lower-degree form into a higher one.

    (b . a)_J = sum over increasing I of b_I a_{I,J}; for 1-forms this is
    :func:`interior`, for a 2-form beta into a 4-form it is the pairing
    (beta . a)_{kl} = 1/2 beta_{ij} a_{ijkl}.
    """
    if b.dim != a.dim:
        raise DimensionMismatch(f"dim {b.dim} vs {a.dim}")
    if b.degree > a.degree:
        raise DegreeError("contraction needs degree(b) <= degree(a)")
    out: Dict[Index, object] = {}
    res_deg = a.degree - b.degree
    for ib, vb in b.items():
        sb = set(ib)
        for ia, va in a.items():
            if not sb <= set(ia):
                continue
            rest = tuple(i for i in ia if i not in sb)
            _, sign = normalize_index(ib + rest)
            # a_{I,J} = sign(I,J -> sorted) * stored
            val = out.get(rest, 0) + sign * vb * va
            if val == 0:
                out.pop(rest, None)
            else:
                out[rest] = val
    return KForm._raw(a.dim, res_deg, out)


def form_inner(a: KForm, b: KForm):
    """Scalar product: sum of coefficient products over increasing indices."""
    if a.dim != b.dim:
        raise DimensionMismatch(f"dim {a.dim} vs {b.dim}")
    if a.degree != b.degree:
        raise DegreeError(f"degree {a.degree} vs {b.degree}")
    small, big = (a, b) if len(a._c) <= len(b._c) else (b, a)
    total = 0
    for idx, val in small.items():
        w = big._c.get(idx)
        if w is not None:
            total += val * w
    return total


# -- dense tensors ----------------------------------------------------------


class DenseTensor:
    """Rank-r tensor on R^n with no symmetry assumed.

    Stored sparsely (absent entries are zero) but semantically a full
    r-dimensional array; symmetrization/antisymmetrization are explicit.
    Immutable by convention once built.
    """

    __slots__ = ("dim", "rank", "_e")

    def __init__(self, dim: int, rank: int, entries: Dict[Index, object] | None = None):
        if dim < 1 or dim > MAX_DIM or rank < 0:
            raise DimensionMismatch(f"bad tensor shape dim={dim} rank={rank}")
        self.dim = dim
        self.rank = rank
        e: Dict[Index, object] = {}
        if entries:
            for idx, val in entries.items():
                idx = tuple(idx)
                if len(idx) != rank:
                    raise DegreeError(f"index {idx} has length {len(idx)}, rank is {rank}")
                if val != 0:
                    e[idx] = val
        self._e = e

    def value(self, idx: Iterable[int]):
        return self._e.get(tuple(idx), 0)

    def items(self):
        return self._e.items()

    def sorted_items(self):
        return sorted(self._e.items())

    def is_zero(self) -> bool:
        return not self._e

    def max_abs(self):
        return max((abs(v) for v in self._e.values()), default=0)

    def nnz(self) -> int:
        return len(self._e)

    def __add__(self, other: "DenseTensor") -> "DenseTensor":
        if (self.dim, self.rank) != (other.dim, other.rank):
            raise DimensionMismatch("tensor shape mismatch")
        e = dict(self._e)
        for idx, val in other._e.items():
            v = e.get(idx, 0) + val
            if v == 0:
                e.pop(idx, None)
            else:
                e[idx] = v
        return DenseTensor._raw(self.dim, self.rank, e)

    def __sub__(self, other: "DenseTensor") -> "DenseTensor":
        return self + (-other)

    def __neg__(self) -> "DenseTensor":
        return DenseTensor._raw(self.dim, self.rank, {i: -v for i, v in self._e.items()})

    def __mul__(self, scalar) -> "DenseTensor":
        if scalar == 0:
            return DenseTensor._raw(self.dim, self.rank, {})
        return DenseTensor._raw(self.dim, self.rank, {i: v * scalar for i, v in self._e.items()})

    __rmul__ = __mul__

    def qscale(self, num: int, den: int = 1) -> "DenseTensor":
        if num == 0:
            return DenseTensor._raw(self.dim, self.rank, {})
        return DenseTensor._raw(
            self.dim, self.rank, {i: qmul(v, num, den) for i, v in self._e.items()}
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, DenseTensor):
            return NotImplemented
        return (self.dim, self.rank, self._e) == (other.dim, other.rank, other._e)

    def __repr__(self):
        return f"DenseTensor(dim={self.dim}, rank={self.rank}, nnz={len(self._e)})"

    def transpose(self, perm: Tuple[int, ...]) -> "DenseTensor":
        """Reorder slots: result[idx] = self[idx[perm[0]], idx[perm[1]], ...].

        ``perm[s]`` names which output position slot ``s`` moves to, i.e.
        result[j_0..j_{r-1}] = self[i_0..i_{r-1}] with j_{perm[s]} = i_s.
        """
        if sorted(perm) != list(range(self.rank)):
            raise ValueError(f"bad permutation {perm}")
        out: Dict[Index, object] = {}
        for idx, val in self._e.items():
            j = [0] * self.rank
            for s, p in enumerate(perm):
                j[p] = idx[s]
            out[tuple(j)] = val
        return DenseTensor._raw(self.dim, self.rank, out)

    @classmethod
    def _raw(cls, dim: int, rank: int, entries: Dict[Index, object]) -> "DenseTensor":
        t = cls.__new__(cls)
        t.dim = dim
        t.rank = rank
        t._e = entries
        return t


def zero_tensor(dim: int, rank: int) -> DenseTensor:
    return DenseTensor._raw(dim, rank, {})


def form_to_tensor(a: KForm) -> DenseTensor:
    """Full antisymmetric component array of a form: t[i1..ik] = a(e_i1..e_ik)."""
    out: Dict[Index, object] = {}
    for idx, val in a.items():
        for p in permutations(range(len(idx))):
            jdx = tuple(idx[q] for q in p)
            out[jdx] = perm_sign(p) * val
    return DenseTensor._raw(a.dim, a.degree, out)


def alternate(t: DenseTensor) -> KForm:
    """Full antisymmetrization with 1/r!, returned as a form.

    alternate(form_to_tensor(a)) == a; symmetric tensors map to zero.
    """
    if t.rank > t.dim:
        raise DegreeError(f"rank {t.rank} exceeds dim {t.dim}")
    r = t.rank
    norm = 1
    for m in range(2, r + 1):
        norm *= m
    acc: Dict[Index, object] = {}
    for idx, val in t.items():
        key, sign = normalize_index(idx)
        if key is None:
            continue
        acc[key] = acc.get(key, 0) + sign * val
    return KForm(t.dim, r, {k: qmul(v, 1, norm) for k, v in acc.items() if v != 0})


# -- sparse contraction helpers ---------------------------------------------


def tcontract(spec: str, a: DenseTensor, b: DenseTensor) -> DenseTensor:
    """einsum-style contraction of two sparse tensors, e.g. 'abij,abk->ijk'.

    Each letter appears at most once per operand; letters shared between the
    operands are summed over, the rest must appear in the output.
    """
    lhs, _, out_l = spec.partition("->")
    la, _, lb = lhs.partition(",")
    if len(set(la)) != len(la) or len(set(lb)) != len(lb):
        raise ValueError(f"repeated letter within an operand in {spec!r} (use ttrace)")
    if len(la) != a.rank or len(lb) != b.rank:
        raise ValueError(f"spec {spec!r} does not match ranks {a.rank},{b.rank}")
    shared = [ch for ch in la if ch in lb]
    a_sh = [la.index(ch) for ch in shared]
    b_sh = [lb.index(ch) for ch in shared]
    out_from_a = [(pos, la.index(ch)) for pos, ch in enumerate(out_l) if ch in la]
    out_from_b = [(pos, lb.index(ch)) for pos, ch in enumerate(out_l) if ch in lb and ch not in la]
    if len(out_from_a) + len(out_from_b) != len(out_l):
        raise ValueError(f"output letters in {spec!r} not drawn from inputs")

    buckets: Dict[Index, list] = {}
    for ib, vb in b.items():
        buckets.setdefault(tuple(ib[p] for p in b_sh), []).append((ib, vb))

    out: Dict[Index, object] = {}
    idx_out = [0] * len(out_l)
    for ia, va in a.items():
        match = buckets.get(tuple(ia[p] for p in a_sh))
        if not match:
            continue
        for pos, src in out_from_a:
            idx_out[pos] = ia[src]
        for ib, vb in match:
            for pos, src in out_from_b:
                idx_out[pos] = ib[src]
            key = tuple(idx_out)
            v = out.get(key, 0) + va * vb
            if v == 0:
                out.pop(key, None)
            else:
                out[key] = v
    return DenseTensor._raw(a.dim, len(out_l), out)


def ttrace(spec: str, a: DenseTensor) -> DenseTensor:
    """Single-tensor trace over repeated letters, e.g. 'kijk->ij'."""
    lhs, _, out_l = spec.partition("->")
    if len(lhs) != a.rank:
        raise ValueError(f"spec {spec!r} does not match rank {a.rank}")
    groups: Dict[str, list] = {}
    for pos, ch in enumerate(lhs):
        groups.setdefault(ch, []).append(pos)
    out_pos = []
    for ch in out_l:
        if ch not in groups or len(groups[ch]) != 1:
            raise ValueError(f"output letter {ch!r} must appear exactly once on the left")
        out_pos.append(groups[ch][0])
    traced = [ps for ps in groups.values() if len(ps) > 1]
    out: Dict[Index, object] = {}
    for idx, val in a.items():
        ok = True
        for ps in traced:
            first = idx[ps[0]]
            for p in ps[1:]:
                if idx[p] != first:
                    ok = False
                    break
            if not ok:
                break
        if not ok:
            continue
        key = tuple(idx[p] for p in out_pos)
        v = out.get(key, 0) + val
        if v == 0:
            out.pop(key, None)
        else:
            out[key] = v
    return DenseTensor._raw(a.dim, len(out_l), out)


def frob2(t: DenseTensor):
    """Full-contraction squared norm: sum over all indices of entry^2."""
    return sum((v * v for _, v in t.items()), 0)


def full_norm2(a: KForm):
    """k! * (a, a): the squared norm of the full component array."""
    norm = 1
    for m in range(2, a.degree + 1):
        norm *= m
    return norm * form_inner(a, a)
