"""Metric connections with totally skew-symmetric torsion.

For a metric connection nabla with torsion 3-form T one has

    nabla^g = nabla - (1/2) T,        nabla^g T = nabla T + (1/2) sigma^T,

where the degeneracy 4-form is sigma^T = (1/2) sum_j (e_j . T) ^ (e_j . T),
and the exterior derivative of the torsion splits as

    dT = dnT + 2 sigma^T,   dnT(X,Y,Z,V) = (n_X T)(Y,Z,V) + (n_Y T)(Z,X,V)
                                         + (n_Z T)(X,Y,V) - (n_V T)(X,Y,Z),

with dnT = 4 Alt(nabla T).  Curvature convention:

    R(X,Y)Z = [n_X, n_Y] Z - n_{[X,Y]} Z,   R_{ijkl} = g(R(e_i,e_j)e_k, e_l),

so on a Lie algebra R_{ijkl} = G_{jkm} G_{iml} - G_{ikm} G_{jml} - c_{ij}^m G_{mkl}
(G = Gamma).  Ricci is Ric_{ij} = R_{kijk} (positive on the round sphere).

:func:`identity_suite` evaluates every universal identity of this setting as
an individually named residual; the identities hold for ANY metric connection
with skew torsion, so a nonzero residual always means an engine bug or a
deliberately corrupted input, never a property of the instance.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Optional, Tuple

from .forms import (
    DenseTensor,
    KForm,
    alternate,
    form_to_tensor,
    frob2,
    interior,
    tcontract,
    ttrace,
    wedge,
    zero_form,
)
from .lie import (
    ConnectionCoeffs,
    LieAlgebra,
    NonSkewTorsionError,
    ce_d,
    codifferential,
    covariant_derivative,
    delta_rule_label,
    levi_civita,
)
from .report import VerificationReport
from .scalars import ScalarMode, qmul, scalar_str


@dataclass(frozen=True)
class CurvatureTensor:
    """R_{ijkl} with the pair antisymmetries R_{ijkl} = -R_{jikl} = -R_{ijlk}."""

    R: DenseTensor

    @property
    def dim(self) -> int:
        return self.R.dim

    def value(self, i, j, k, l):
        return self.R.value((i, j, k, l))

    def pair_antisymmetry_defect(self):
        first = (self.R + self.R.transpose((1, 0, 2, 3))).max_abs()
        second = (self.R + self.R.transpose((0, 1, 3, 2))).max_abs()
        return max(first, second)

    def pair_symmetry_defect(self):
        """Max |R_{ijkl} - R_{klij}|: zero iff R lies in S^2(Lambda^2)."""
        return (self.R - self.R.transpose((2, 3, 0, 1))).max_abs()

    def is_zero(self) -> bool:
        return self.R.is_zero()


def connection_tensor(conn: ConnectionCoeffs) -> DenseTensor:
    return DenseTensor(conn.dim, 3, {(i, j, k): v for i, j, k, v in conn.items_full()})


def structure_tensor(L: LieAlgebra) -> DenseTensor:
    e: Dict[Tuple[int, int, int], object] = {}
    for (i, j, k), v in L.items():
        e[(i, j, k)] = v
        e[(j, i, k)] = -v
    return DenseTensor(L.dim, 3, e)


def with_torsion(lc: ConnectionCoeffs, T: KForm) -> ConnectionCoeffs:
    """The metric connection Gamma = Gamma^g + (1/2) T with torsion exactly T."""
    if T.degree != 3:
        raise NonSkewTorsionError(f"torsion must be a 3-form, got degree {T.degree}")
    if T.dim != lc.dim:
        raise ValueError("dim mismatch")
    half: Dict[Tuple[int, int, int], object] = {}
    for (i, j, k), v in T.items():
        for perm, sign in (((i, j, k), 1), ((j, k, i), 1), ((k, i, j), 1),
                           ((j, i, k), -1), ((i, k, j), -1), ((k, j, i), -1)):
            half[perm] = qmul(sign * v, 1, 2)
    add = ConnectionCoeffs(lc.dim, half)
    return lc + add


def torsion_of(L: LieAlgebra, conn: ConnectionCoeffs, atol: float | None = None) -> KForm:
    """Lowered torsion T_{ijk} = Gamma_{ijk} - Gamma_{jik} - c_{ij}^k.

    Raises NonSkewTorsionError unless the result is totally skew (a 3-form);
    ``atol`` loosens the skewness gate for float runs.
    """
    n = L.dim
    t: Dict[Tuple[int, int, int], object] = {}
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i == j:
                continue
            for k in range(1, n + 1):
                v = conn.gamma(i, j, k) - conn.gamma(j, i, k) - L.c(i, j, k)
                if v != 0:
                    t[(i, j, k)] = v
    tt = DenseTensor(n, 3, t)
    candidate = alternate(tt)
    defect = (tt - form_to_tensor(candidate)).max_abs()
    bad = defect != 0 if atol is None else abs(defect) > atol
    if bad:
        raise NonSkewTorsionError(
            f"connection has non-3-form torsion (skewness defect {defect})")
    return candidate


def curvature(L: LieAlgebra, conn: ConnectionCoeffs) -> CurvatureTensor:
    """R_{ijkl} = G_{jkm} G_{iml} - G_{ikm} G_{jml} - c_{ij}^m G_{mkl}."""
    G = connection_tensor(conn)
    c = structure_tensor(L)
    quad = tcontract("jkm,iml->ijkl", G, G)
    lin = tcontract("ijm,mkl->ijkl", c, G)
    R = quad - quad.transpose((1, 0, 2, 3)) - lin
    return CurvatureTensor(R)


def sigma_T(T: KForm) -> KForm:
    """sigma^T = (1/2) sum_j (e_j . T) ^ (e_j . T); quadratic degeneracy 4-form."""
    if T.degree != 3:
        raise NonSkewTorsionError(f"sigma_T needs a 3-form, got degree {T.degree}")
    from .forms import basis_form

    acc = zero_form(T.dim, 4)
    for j in range(1, T.dim + 1):
        ej = basis_form(T.dim, (j,))
        tj = interior(ej, T)
        if not tj.is_zero():
            acc = acc + wedge(tj, tj)
    return acc.qscale(1, 2)


def ricci(R: CurvatureTensor) -> DenseTensor:
    """Ric_{ij} = R_{kijk} (sum over k)."""
    return ttrace("kijk->ij", R.R)


def scalar_curvature(R: CurvatureTensor):
    ric = ricci(R)
    return ttrace("ii->", ric).value(())


def hull(lc: ConnectionCoeffs, T: KForm) -> ConnectionCoeffs:
    """The metric connection with torsion -T (the partner of with_torsion(lc, T))."""
    return with_torsion(lc, -T)


def hull_relation_residual(R: CurvatureTensor, R_h: CurvatureTensor, dT: KForm):
    """Max-norm of R(X,Y,Z,V) - R^h(Z,V,X,Y) - (1/2) dT(X,Y,Z,V)."""
    dT_t = form_to_tensor(dT)
    diff = R.R - R_h.R.transpose((2, 3, 0, 1)) - dT_t.qscale(1, 2)
    return diff.max_abs()


@dataclass(frozen=True)
class TorsionData:
    """Torsion T and every derived quantity the identities relate.

    nabla_T is direction-first: nabla_T[(i, j, k, l)] = (n_{e_i} T)(e_j,e_k,e_l).
    delta_T is the codifferential of T; delta_nabla_T the negative trace of
    nabla T.  The two always agree for metric connections with skew torsion.
    """

    torsion: KForm
    sigma: KForm
    nabla_T: DenseTensor
    d_nabla_T: KForm
    dT: KForm
    delta_T: KForm
    delta_nabla_T: KForm

    def dh_defect(self):
        """Max-norm of dT - dnT - 2 sigma^T (must vanish identically)."""
        return (self.dT - self.d_nabla_T - self.sigma.qscale(2)).max_abs()

    def delta_cross_defect(self):
        return (self.delta_T - self.delta_nabla_T).max_abs()


def torsion_data(L: LieAlgebra, conn: ConnectionCoeffs, T: Optional[KForm] = None,
                 atol: float | None = None) -> TorsionData:
    if T is None:
        T = torsion_of(L, conn, atol=atol)
    nabla_T = covariant_derivative(conn, form_to_tensor(T))
    d_nabla_T = alternate(nabla_T).qscale(4)
    sig = sigma_T(T)
    dT = ce_d(L, T)
    delta_T = codifferential(L, T)
    neg_trace = -ttrace("aaij->ij", nabla_T)
    delta_nabla_T = alternate(neg_trace)
    return TorsionData(T, sig, nabla_T, d_nabla_T, dT, delta_T, delta_nabla_T)


# -- the universal identity suite --------------------------------------------

_CYC_FIRST = ((1, 2, 0, 3), (2, 0, 1, 3))  # R_{jkil}, R_{kijl} as transposes
_CYC_LAST = ((3, 0, 1, 2), (3, 1, 2, 0), (3, 2, 0, 1))  # R_{lijk}, R_{ljki}, R_{lkij}


def identity_suite(L: LieAlgebra, conn: ConnectionCoeffs, T: Optional[KForm] = None,
                   mode: ScalarMode = ScalarMode(), instance: str = "instance",
                   corrupt_curvature: bool = False) -> VerificationReport:
    """Evaluate every universal identity as a named residual.

    ``corrupt_curvature`` bumps one curvature entry before checking: a
    sensitivity fixture that must flip the first-Bianchi residual to FAIL.
    """
    rep = VerificationReport(instance=instance, mode=mode)
    rep.conventions["delta_rule"] = delta_rule_label(L.dim)
    rep.conventions["curvature"] = "R(X,Y)Z = [nX,nY]Z - n[X,Y]Z; Ric(i,j) = R(k,i,j,k)"

    data = torsion_data(L, conn, T, atol=None if mode.is_exact else mode.eps)
    T = data.torsion
    T_t = form_to_tensor(T)
    sig_t = form_to_tensor(data.sigma)
    dT_t = form_to_tensor(data.dT)
    nT = data.nabla_T

    Rt = curvature(L, conn)
    if corrupt_curvature:
        bump = {idx: v for idx, v in Rt.R.items()}
        key = (1, 2, 1, 2)
        bump[key] = bump.get(key, 0) + 1
        Rt = CurvatureTensor(DenseTensor(L.dim, 4, bump))
        rep.info("corruption", "curvature entry R(1,2,1,2) bumped by 1",
                 anchor="engineered failure fixture")
    R = Rt.R

    rep.residual("curvature_pair_antisymmetry", Rt.pair_antisymmetry_defect(),
                 anchor="R(i,j,k,l) = -R(j,i,k,l) = -R(i,j,l,k)")

    rep.residual("torsion_split", data.dh_defect(),
                 anchor="dT = dnT + 2*sigmaT, dnT = 4*Alt(nabla T)")

    cyc1 = R + R.transpose(_CYC_FIRST[0]) + R.transpose(_CYC_FIRST[1])
    nT_last = nT.transpose((3, 0, 1, 2))  # (n_V T)(X,Y,Z) indexed (X,Y,Z,V)
    first_bi = cyc1 - dT_t + sig_t - nT_last
    rep.residual("first_bianchi", first_bi.max_abs(),
                 anchor="cyc R(X,Y,Z,V) = dT - sigmaT + (n_V T)(X,Y,Z)")

    cyc2 = R.transpose(_CYC_LAST[0]) + R.transpose(_CYC_LAST[1]) + R.transpose(_CYC_LAST[2])
    gen = cyc1 - cyc2 - dT_t.qscale(3, 2) + sig_t
    rep.residual("cyclic_difference", gen.max_abs(),
                 anchor="cyc R(X,Y,Z,V) - cyc R(V,.,.,.) = (3/2)dT - sigmaT")

    second_cyc = cyc2 + dT_t.qscale(1, 2) - nT_last
    rep.residual("second_cyclic", second_cyc.max_abs(),
                 anchor="cyc R(V,X,Y,Z) = -(1/2)dT + (n_V T)(X,Y,Z)")

    # pair-symmetry equivalence: the three conditions vanish together
    r_four_form = (nT + nT.transpose((1, 0, 2, 3))).max_abs()
    r_pair = Rt.pair_symmetry_defect()
    lc = levi_civita(L)
    nT_g = nT + sig_t.qscale(1, 2)
    r_lc4 = (dT_t - nT_g.qscale(4)).max_abs()
    z = [mode.is_zero(r_four_form), mode.is_zero(r_pair), mode.is_zero(r_lc4)]
    rep.info("nablaT_four_form_defect", scalar_str(r_four_form),
             anchor="(n_X T)(Y,Z,V) + (n_Y T)(X,Z,V)")
    rep.info("pair_symmetry_defect", scalar_str(r_pair),
             anchor="R(X,Y,Z,V) - R(Z,V,X,Y)")
    rep.info("lc_four_defect", scalar_str(r_lc4),
             anchor="dT - 4*nabla^g T")
    rep.expect("pair_symmetry_equivalence", z[0] == z[1] == z[2],
               detail=f"flags={['zero' if b else 'nonzero' for b in z]}",
               anchor="nabla T in Lambda^4  <=>  R in S^2 Lambda^2  <=>  dT = 4 nabla^g T")

    # Ricci relations against the Levi-Civita side
    R_g = curvature(L, lc)
    ric = ricci(Rt)
    ric_g = ricci(R_g)
    scal = ttrace("ii->", ric).value(())
    scal_g = ttrace("ii->", ric_g).value(())
    dT2 = form_to_tensor(data.delta_T)
    S = tcontract("ikl,jkl->ij", T_t, T_t)
    rics1 = (ric_g - ric - dT2.qscale(1, 2) - S.qscale(1, 4)).max_abs()
    rep.residual("ricci_relation", rics1,
                 anchor="Ric^g = Ric + (1/2)deltaT + (1/4) sum g(T(X,e_i),T(Y,e_i))")
    norm_T2 = frob2(T_t)
    rics2 = abs(scal_g - scal - qmul(norm_T2, 1, 4))
    rep.residual("scalar_relation", rics2, anchor="Scal^g = Scal + (1/4)||T||^2")
    rics3 = (ric - ric.transpose((1, 0)) + dT2).max_abs()
    rep.residual("ricci_antisymmetry", rics3, anchor="Ric(X,Y) - Ric(Y,X) = -deltaT(X,Y)")

    rep.residual("delta_T_trace", data.delta_cross_defect(),
                 anchor="deltaT = delta_n T = -(n_{e_i} T)(e_i,.,.)")

    # second Bianchi and its contraction
    nR = covariant_derivative(conn, R)
    bi22 = (nR + nR.transpose((1, 2, 0, 3, 4)) + nR.transpose((2, 0, 1, 3, 4))
            + tcontract("ijs,sklm->ijklm", T_t, R)
            + tcontract("jks,silm->ijklm", T_t, R)
            + tcontract("kis,sjlm->ijklm", T_t, R))
    rep.residual("second_bianchi", bi22.max_abs(),
                 anchor="cyc [ n_i R(j,k,l,m) + T(i,j,s) R(s,k,l,m) ] = 0")

    nRic = covariant_derivative(conn, ric)
    div_ric = ttrace("iji->j", nRic)
    term_dt = tcontract("ab,abj->j", dT2, T_t)
    term_tt = tcontract("abc,jabc->j", T_t, dT_t)
    # d(Scal) and d||T||^2 vanish identically: invariant scalars are constant
    e1 = (div_ric.qscale(-2) + term_dt + term_tt.qscale(1, 6)).max_abs()
    rep.residual("contracted_second_bianchi", e1,
                 anchor="d(Scal) - 2 div Ric + (1/6) d||T||^2 + deltaT.T + (1/6) T.dT = 0",
                 note="d(Scal) = d||T||^2 = 0 on invariant geometry")

    ndT2 = covariant_derivative(conn, dT2)
    div_dT = ttrace("iij->j", ndT2)
    rhs_iii = tcontract("ia,iaj->j", dT2, T_t)
    rep.residual("divergence_of_deltaT", (div_dT - rhs_iii.qscale(1, 2)).max_abs(),
                 anchor="n_i deltaT(i,j) = (1/2) deltaT(i,a) T(i,a,j)")

    comb = (nT - nT.transpose((1, 0, 2, 3)) - nT.transpose((2, 0, 1, 3))
            + nT.transpose((3, 0, 1, 2)))
    ins1 = (R - R.transpose((2, 3, 0, 1))).qscale(2) - comb
    rep.residual("pair_difference", ins1.max_abs(),
                 anchor="2R(X,Y,Z,V) - 2R(Z,V,X,Y) = (nT alternating combination)")

    rep.residual("sigmaT_contraction_first3",
                 tcontract("ijkl,ijk->l", sig_t, T_t).max_abs(),
                 anchor="sigmaT(i,j,k,l) T(i,j,k) = 0")
    rep.residual("sigmaT_contraction_last3",
                 tcontract("ijkl,jkl->i", sig_t, T_t).max_abs(),
                 anchor="sigmaT(i,j,k,l) T(j,k,l) = 0")
    # dT.T = 2 sigmaT.T only once dnT = 0 (it is NOT universal: e.g. dim 7,
    # [e1,e2]=e7, T=e134+e347 has dT.T != 0); asserted in its valid form.
    rep.implication("dT_T_contraction", mode.is_zero(data.d_nabla_T.max_abs()),
                    tcontract("jabc,abc->j", dT_t, T_t).max_abs(),
                    anchor="dnT = 0  =>  dT(j,a,b,c) T(a,b,c) = 2 sigmaT(j,a,b,c) T(a,b,c) = 0")

    R_h = curvature(L, hull(lc, T))
    rep.residual("hull_curvature_relation", hull_relation_residual(Rt, R_h, data.dT),
                 anchor="R(X,Y,Z,V) - R^h(Z,V,X,Y) = (1/2) dT(X,Y,Z,V)")

    return rep
