"""Canonical Spin(7) structure on dim-8 Lie algebras: the Omega operator and
Lambda^4 spectrum, the (unconditional) torsion connection, Lee form,
co-differential and Ricci formulas, instanton checks, the Hull connection
biconditional, theorem validators, and the dim-7 -> dim-8 extension.

The structure 4-form is the canonical self-dual

    Psi = -e0127 + e0236 - e0347 - e0567 + e0146 + e0245 - e0135
          - e3456 - e1457 - e1256 - e1234 - e2357 - e1367 + e2467

with the labels 0..7 relabelled to 1..8 internally (e0 -> e1); then
*Psi = Psi and Psi ^ Psi = 14 vol, and Psi = -e0 ^ phi - *phi on the nose for
the canonical G2 form phi on the last seven directions.  Unlike dim 7 there
is no integrability obstruction: every dim-8 host carries a unique metric
connection with skew torsion preserving Psi,

    T = -*d Psi + (7/6) * (theta ^ Psi),   theta = -(1/7) * ( *d Psi ^ Psi ).

Form-space decompositions used throughout:

    Lambda^2_7  = { *(a ^ Psi) = -3a },   Lambda^2_21 = { *(a ^ Psi) = a },
    Lambda^4    = 1 + 7 + 27 + 35, the eigenspaces of the operator
    Omega(s)_{ijkl} = s_{ijpq} Psi_{pqkl} + (five pair-partners)
    with eigenvalues -24, -12, 4, 0 and Lambda^4_+ = 1+7+27, Lambda^4_- = 35.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .connection import (
    CurvatureTensor,
    TorsionData,
    curvature,
    hull,
    ricci,
    torsion_data,
    with_torsion,
)
from .forms import (
    DenseTensor,
    KForm,
    alternate,
    basis_form,
    contract,
    form_inner,
    form_to_tensor,
    frob2,
    hodge,
    increasing_indices,
    interior,
    tcontract,
    ttrace,
    wedge,
    zero_form,
)
from .lie import (
    LieAlgebra,
    ce_d,
    codifferential,
    cov_deriv_form,
    covariant_derivative,
    levi_civita,
)
from .g2 import PHI as G2_PHI, NoCharacteristicConnection, integrability_residual, lambda_const, lee_form_g2
from .report import VerificationReport
from .scalars import ScalarMode, qmul, scalar_str

DIM = 8

# the canonical 4-form, written with the 0..7 labels it is usually given in
_PSI_MONOMIALS_0BASED = {
    (0, 1, 2, 7): -1,
    (0, 2, 3, 6): 1,
    (0, 3, 4, 7): -1,
    (0, 5, 6, 7): -1,
    (0, 1, 4, 6): 1,
    (0, 2, 4, 5): 1,
    (0, 1, 3, 5): -1,
    (3, 4, 5, 6): -1,
    (1, 4, 5, 7): -1,
    (1, 2, 5, 6): -1,
    (1, 2, 3, 4): -1,
    (2, 3, 5, 7): -1,
    (1, 3, 6, 7): -1,
    (2, 4, 6, 7): 1,
}


def canonical_psi() -> KForm:
    return KForm(DIM, 4, {tuple(i + 1 for i in idx): v
                          for idx, v in _PSI_MONOMIALS_0BASED.items()})


PSI = canonical_psi()
PSI_T = form_to_tensor(PSI)

OMEGA_EIGENVALUES = {"1": -24, "7": -12, "27": 4, "35": 0}


@dataclass(frozen=True)
class Spin7Structure:
    """The canonical Spin(7) structure carried by a dim-8 Lie algebra."""

    host: LieAlgebra
    psi: KForm = None

    def __post_init__(self):
        if self.host.dim != DIM:
            raise ValueError(f"Spin(7) structure needs a dim-8 algebra, got {self.host.dim}")
        if self.psi is None:
            object.__setattr__(self, "psi", canonical_psi())


# -- Lambda^2 projectors -------------------------------------------------------


def project2_spin7(alpha: KForm) -> Tuple[KForm, KForm]:
    """Split a 2-form into (Lambda^2_7, Lambda^2_21).

    L(a) = *(a ^ Psi) has eigenvalues -3 and +1: P7 = (1 - L)/4,
    P21 = (3 + L)/4.  Equivalently a_{ij}Psi_{ijkl} = -6 a_{kl} on the 7 and
    +2 a_{kl} on the 21.
    """
    if alpha.degree != 2 or alpha.dim != DIM:
        raise ValueError("project2_spin7 needs a 2-form on R^8")
    L = hodge(wedge(alpha, PSI))
    a7 = (alpha - L).qscale(1, 4)
    a21 = (alpha.qscale(3) + L).qscale(1, 4)
    return a7, a21


def lambda2_21_defect(alpha: KForm):
    """Max-norm of 2 alpha - alpha_{ij}Psi_{ij..}: zero iff alpha is in spin(7)."""
    return (contract(alpha, PSI) - alpha).max_abs()


# -- the Omega operator and the Lambda^4 spectrum ------------------------------

_OMEGA_PERMS = ((0, 2, 3, 1), (0, 3, 1, 2), (1, 2, 0, 3), (1, 3, 2, 0), (2, 3, 0, 1))


def omega_op(sigma: KForm) -> KForm:
    """The six-term pair-contraction operator on 4-forms."""
    if sigma.degree != 4 or sigma.dim != DIM:
        raise ValueError("omega_op needs a 4-form on R^8")
    s_t = form_to_tensor(sigma)
    A = tcontract("ijpq,pqkl->ijkl", s_t, PSI_T)
    total = A
    for perm in _OMEGA_PERMS:
        total = total + A.transpose(perm)
    # the six-term sum is alternating; alternate() reads off the form
    out = alternate(total)
    return out


_BASIS4: List[Tuple[int, ...]] = list(increasing_indices(DIM, 4))
_B4_POS = {idx: p for p, idx in enumerate(_BASIS4)}

_omega_columns: Optional[List[Dict[int, object]]] = None


def _omega_matrix() -> List[Dict[int, object]]:
    """Columns of Omega in the increasing-index basis of Lambda^4 (dim 70)."""
    global _omega_columns
    if _omega_columns is None:
        cols = []
        for idx in _BASIS4:
            w = omega_op(basis_form(DIM, idx))
            cols.append({_B4_POS[jdx]: val for jdx, val in w.items()})
        _omega_columns = cols
    return _omega_columns


def _omega_apply(vec: Dict[int, object]) -> Dict[int, object]:
    cols = _omega_matrix()
    out: Dict[int, object] = {}
    for j, c in vec.items():
        for k, m in cols[j].items():
            v = out.get(k, 0) + m * c
            if v == 0:
                out.pop(k, None)
            else:
                out[k] = v
    return out


def _vec_of(sigma: KForm) -> Dict[int, object]:
    return {_B4_POS[idx]: v for idx, v in sigma.items()}


def _form_of(vec: Dict[int, object]) -> KForm:
    return KForm(DIM, 4, {_BASIS4[p]: v for p, v in vec.items()})


def project4(sigma: KForm) -> Tuple[KForm, KForm, KForm, KForm]:
    """Eigenprojections of a 4-form onto (1, 7, 27, 35).

    Lagrange projectors P_l = prod_{m != l} (Omega - m) / (l - m) evaluated by
    three Omega matrix-vector applications.
    """
    if sigma.degree != 4 or sigma.dim != DIM:
        raise ValueError("project4 needs a 4-form on R^8")
    v0 = _vec_of(sigma)
    v1 = _omega_apply(v0)
    v2 = _omega_apply(v1)
    v3 = _omega_apply(v2)
    eigen = [-24, -12, 4, 0]
    powers = (v0, v1, v2, v3)
    parts = []
    for lam in eigen:
        others = [m for m in eigen if m != lam]
        # expand prod (x - m) = x^3 + c2 x^2 + c1 x + c0
        c2 = -(others[0] + others[1] + others[2])
        c1 = (others[0] * others[1] + others[0] * others[2] + others[1] * others[2])
        c0 = -(others[0] * others[1] * others[2])
        den = 1
        for m in others:
            den *= (lam - m)
        acc: Dict[int, object] = {}
        for coeff, vec in zip((c0, c1, c2, 1), powers):
            if coeff == 0:
                continue
            for p, val in vec.items():
                w = acc.get(p, 0) + coeff * val
                if w == 0:
                    acc.pop(p, None)
                else:
                    acc[p] = w
        num, d = (1, den) if den > 0 else (-1, -den)
        parts.append(_form_of({p: qmul(v, num, d) for p, v in acc.items()}))
    return tuple(parts)


# -- structure scalars ---------------------------------------------------------


def lee_form_spin7(L: LieAlgebra) -> KForm:
    """theta = -(1/7) * ( *d Psi ^ Psi )."""
    dpsi = ce_d(L, PSI)
    return hodge(wedge(hodge(dpsi), PSI)).qscale(-1, 7)


def spin7_torsion(L: LieAlgebra) -> KForm:
    """T = -*d Psi + (7/6) * (theta ^ Psi); exists for every dim-8 host."""
    dpsi = ce_d(L, PSI)
    theta = lee_form_spin7(L)
    return -hodge(dpsi) + hodge(wedge(theta, PSI)).qscale(7, 6)


def spin7_instanton_residuals(R: CurvatureTensor) -> Dict[str, object]:
    """First-pair (instanton) and second-pair (holonomy) spin(7) membership."""
    Rt = R.R
    return {
        "instanton": (tcontract("abij,abkl->klij", Rt, PSI_T) - Rt.qscale(2)).max_abs(),
        "holonomy": (tcontract("ijab,abkl->ijkl", Rt, PSI_T) - Rt.qscale(2)).max_abs(),
    }


def spin7_instanton_check(R: CurvatureTensor, mode: ScalarMode = ScalarMode()) -> bool:
    return mode.is_zero(spin7_instanton_residuals(R)["instanton"])


# -- extension of a G2 host ----------------------------------------------------


def extend_g2_to_spin7(L7: LieAlgebra, mode: ScalarMode = ScalarMode()) -> LieAlgebra:
    """Append a closed direction e1 in front of an integrable dim-7 host.

    Old e_k becomes e_{k+1}; the new first direction is central and closed,
    and the canonical Psi on the result equals -e1 ^ phi - *phi for the
    shifted canonical G2 form phi.
    """
    if L7.dim != 7:
        raise ValueError("extension needs a dim-7 host")
    if not mode.is_zero(integrability_residual(L7)):
        raise NoCharacteristicConnection(
            "extension requires an integrable G2 host (d*phi = theta ^ *phi)")
    constants = {(i + 1, j + 1, k + 1): v for (i, j, k), v in L7.items()}
    name = f"{L7.name}+R" if L7.name else "extension"
    return LieAlgebra(8, constants, name=name)


def shift_form(a: KForm) -> KForm:
    """Re-index a dim-7 form into the last seven directions of R^8."""
    return KForm(8, a.degree, {tuple(i + 1 for i in idx): v for idx, v in a.items()})


# -- full analysis --------------------------------------------------------------


@dataclass
class Spin7Analysis:
    """Everything the torsion-connection pipeline computes on one dim-8 host."""

    host: LieAlgebra
    mode: ScalarMode
    report: VerificationReport
    theta: KForm
    torsion: KForm
    connection: object
    curvature: CurvatureTensor
    data: TorsionData
    ric: DenseTensor
    scal: object
    instanton: bool
    hull_instanton: bool
    torsion_closed: bool
    nabla_T_zero: bool


def analyze_spin7(L: LieAlgebra, mode: ScalarMode = ScalarMode(),
                  instance: str = "spin7-instance") -> Spin7Analysis:
    """Run the full Spin(7) pipeline and record every check."""
    rep = VerificationReport(instance=instance, mode=mode)
    rep.conventions["structure"] = "canonical Psi on the declared frame"
    rep.conventions["psi_sign"] = "+(canonical); Psi = -e1 ^ phi - *phi on extensions"

    dpsi = ce_d(L, PSI)
    theta = lee_form_spin7(L)
    rep.info("lee_form", str(theta), anchor="theta = -(1/7)*(*dPsi ^ Psi)")

    # two routes to the torsion: star form and codifferential form
    T = -hodge(dpsi) + hodge(wedge(theta, PSI)).qscale(7, 6)
    delta_psi = codifferential(L, PSI)
    T_alt = delta_psi + interior(theta, PSI).qscale(7, 6)
    rep.residual("torsion_two_routes", (T - T_alt).max_abs(),
                 anchor="T = -*dPsi + (7/6)*(theta^Psi) = deltaPsi + (7/6) theta . Psi")
    rep.info("torsion", str(T), anchor="T = -*dPsi + (7/6)*(theta ^ Psi)")

    th_from_delta = contract(delta_psi, PSI).qscale(1, 7)
    rep.residual("lee_from_delta_psi", (th_from_delta - theta).max_abs(),
                 anchor="theta(a) = (1/42) deltaPsi(i,j,k) Psi(i,j,k,a)")

    lc = levi_civita(L)
    conn = with_torsion(lc, T)
    data = torsion_data(L, conn, T, atol=None if mode.is_exact else mode.eps)
    R = curvature(L, conn)
    ric = ricci(R)
    scal = ttrace("ii->", ric).value(())

    rep.residual("nabla_psi", cov_deriv_form(conn, PSI).max_abs(), anchor="nabla Psi = 0")

    T_t = form_to_tensor(T)
    th_t = form_to_tensor(theta)

    quad = tcontract("jsk,jslm->klm", T_t, PSI_T)
    rewrite = (T_t - quad.qscale(1, 2)
               - tcontract("jsl,jsmk->klm", T_t, PSI_T).qscale(1, 2)
               - tcontract("jsm,jskl->klm", T_t, PSI_T).qscale(1, 2)
               - tcontract("s,sklm->klm", th_t, PSI_T).qscale(7, 6))
    rep.residual("torsion_rewriting", rewrite.max_abs(),
                 anchor="T(k,l,m) = (1/2)T(j,s,k)Psi(j,s,l,m) + (1/2)T(j,s,l)Psi(j,s,m,k)"
                        " + (1/2)T(j,s,m)Psi(j,s,k,l) + (7/6)theta(s)Psi(s,k,l,m)")

    theta_from_T = tcontract("jkl,jkli->i", T_t, PSI_T).qscale(-1, 7)
    rep.residual("lee_from_torsion", (theta_from_T - th_t).max_abs(),
                 anchor="theta(i) = -(1/7) T(j,k,l) Psi(j,k,l,i)")

    # co-differential of the torsion, two independent ways
    dtheta = ce_d(L, theta)
    th_T = interior(theta, T)
    way1 = (contract(dtheta, PSI) - th_T).qscale(7, 6)
    rep.residual("delta_T_formula", (data.delta_T - way1).max_abs(),
                 anchor="deltaT = (7/6)(dtheta . Psi - theta . T)")
    n_th = covariant_derivative(conn, th_t)
    dn_theta = alternate(n_th - n_th.transpose((1, 0)))
    way2 = (contract(dn_theta, PSI) + contract(th_T, PSI) - th_T).qscale(7, 6)
    rep.residual("delta_T_formula_connection_form",
                 (data.delta_T - way2).max_abs(),
                 anchor="deltaT = (7/6)(dn theta . Psi + (theta . T) . Psi - theta . T)")
    rep.residual("dtheta_split", (dtheta - dn_theta - th_T).max_abs(),
                 anchor="d theta = dn theta + theta . T")

    # Ricci and scalar curvature, formula vs curvature trace
    dT_t = form_to_tensor(data.dT)
    ric_formula = (tcontract("iabc,jabc->ij", dT_t, PSI_T).qscale(-1, 12)
                   - n_th.qscale(7, 6))
    rep.residual("ricci_formula", (ric_formula - ric).max_abs(),
                 anchor="Ric(i,j) = -(1/12) dT(i,a,b,c) Psi(j,a,b,c) - (7/6) nabla_i theta(j)")
    delta_theta = codifferential(L, theta).coeff(())
    norm_th2 = form_inner(theta, theta)
    norm_T2 = frob2(T_t)
    scal_formula = (qmul(delta_theta, 7, 2) + qmul(norm_th2, 49, 18) - qmul(norm_T2, 1, 3))
    rep.residual("scalar_formula", abs(scal_formula - scal),
                 anchor="Scal = (7/2) delta theta + (49/18)||theta||^2 - (1/3)||T||^2")

    # holonomy in spin(7) and the Bianchi-type contraction it forces
    inst = spin7_instanton_residuals(R)
    rep.residual("holonomy_condition", inst["holonomy"],
                 anchor="nabla Psi = 0 => R(i,j,a,b)Psi(a,b,k,l) = 2R(i,j,k,l)")
    spbi1 = tcontract("ijkl,ijkm->ml", R.R, PSI_T) + ric.transpose((1, 0)).qscale(2)
    rep.residual("curvature_psi_contraction", spbi1.max_abs(),
                 anchor="R(i,j,k,l) Psi(i,j,k,m) = -2 Ric(m,l)")
    instanton = mode.is_zero(inst["instanton"])
    rep.flag("instanton", instanton, anchor="curvature 2-form in spin(7) (first pair)",
             note=f"residual {scalar_str(inst['instanton'])}")

    # conclusions
    nT = data.nabla_T
    r_nT = nT.max_abs()
    nabla_T_zero = mode.is_zero(r_nT)
    r_dnT = data.d_nabla_T.max_abs()
    dnT_zero = mode.is_zero(r_dnT)
    dT2 = form_to_tensor(data.delta_T)
    r_deltaT = dT2.max_abs()
    deltaT_zero = mode.is_zero(r_deltaT)
    r_ntheta = n_th.max_abs()
    ntheta_zero = mode.is_zero(r_ntheta)
    dn_theta_zero = mode.is_zero(dn_theta.max_abs())
    dtheta_zero = mode.is_zero(dtheta.max_abs())
    balanced = mode.is_zero(theta.max_abs())
    delta_theta_zero = mode.is_zero(abs(delta_theta))
    r_ric_sym = (ric - ric.transpose((1, 0))).max_abs()
    rep.flag("nabla_T_zero", nabla_T_zero, anchor="nabla T = 0",
             note=f"residual {scalar_str(r_nT)}")
    rep.flag("dnT_zero", dnT_zero, anchor="dnT = 0  <=>  dT = 2 sigmaT")
    rep.flag("delta_T_zero", deltaT_zero, anchor="delta T = 0")
    rep.flag("nabla_theta_zero", ntheta_zero, anchor="nabla theta = 0")
    rep.flag("dtheta_zero", dtheta_zero, anchor="d theta = 0")
    rep.flag("balanced", balanced, anchor="theta = 0")
    rep.flag("delta_theta_zero", delta_theta_zero, anchor="delta theta = 0 (Gauduchon)")

    torsion_closed = mode.is_zero(data.dT.max_abs())
    rep.flag("torsion_closed", torsion_closed, anchor="dT = 0")

    # membership statements under the instanton hypothesis
    rep.implication("instanton_deltaT_type", instanton, lambda2_21_defect(data.delta_T),
                    anchor="instanton => deltaT in Lambda^2_21")
    comb = dtheta.qscale(3) + th_T
    rep.implication("instanton_dtheta_type", instanton, lambda2_21_defect(comb),
                    anchor="instanton => 3 dtheta + theta . T in Lambda^2_21")
    Y = tcontract("ijkl,ijkm->lm", form_to_tensor(data.d_nabla_T), PSI_T)
    rep.implication("instanton_dtheta_zero_branch", instanton and dtheta_zero,
                    max(lambda2_21_defect(dn_theta),
                        (Y - Y.transpose((1, 0))).max_abs(),
                        (dT2 - form_to_tensor(dn_theta.qscale(7, 6))).max_abs()),
                    anchor="instanton, dtheta = 0 => dn theta = -theta.T in spin(7),"
                           " dnT-Psi contraction symmetric, deltaT = (7/6) dn theta")
    rep.implication("instanton_dn_theta_zero_branch", instanton and dn_theta_zero,
                    max(lambda2_21_defect(dtheta), r_deltaT),
                    anchor="instanton, dn theta = 0 => dtheta = theta.T in spin(7), deltaT = 0")

    killing = (n_th + n_th.transpose((1, 0))).max_abs()
    rep.implication("instanton_dnT_deltaT", instanton and dnT_zero,
                    max((dT2 - n_th.qscale(7, 3)).max_abs(), killing, abs(delta_theta)),
                    anchor="instanton, dnT = 0 => deltaT = (7/3) nabla theta (Killing),"
                           " delta theta = 0, d(Scal) = 0",
                    note="d(Scal) = 0 automatically: invariant scalar")

    # parallel-torsion theorems
    rep.implication("parallel_torsion_forward", nabla_T_zero,
                    max(r_dnT, r_deltaT, inst["instanton"], R.pair_symmetry_defect()),
                    anchor="nabla T = 0 => instanton, dnT = 0, deltaT = 0, R in S^2 Lambda^2")
    n_ric = covariant_derivative(conn, ric)
    n_dT = covariant_derivative(conn, dT_t)
    rep.implication("parallel_torsion_consequences", nabla_T_zero,
                    max(r_ric_sym, n_ric.max_abs(), n_dT.max_abs()),
                    anchor="nabla T = 0 => Ric symmetric, nabla Ric = 0, nabla dT = 0")
    rep.implication("constant_norm_converse", instanton and dnT_zero, r_nT,
                    anchor="instanton, dnT = 0, d||T||^2 = 0 => nabla T = 0",
                    note="d||T||^2 = 0 automatically: invariant scalar")
    rep.implication("instanton_dnT_deltaT_converse", instanton and dnT_zero and deltaT_zero,
                    r_nT,
                    anchor="instanton, dnT = 0, deltaT = 0 => nabla T = 0")
    rep.implication("closed_lee_instanton", dtheta_zero and instanton and dnT_zero, r_nT,
                    anchor="dtheta = 0, instanton, dnT = 0 => nabla T = 0")
    rep.implication("balanced_instanton", balanced and instanton and dnT_zero, r_nT,
                    anchor="balanced, instanton, dnT = 0 => nabla T = 0")
    if instanton and dnT_zero and not nabla_T_zero:
        rep.expect("compact_converse_consistency", False,
                   detail="instanton and dnT = 0 but nabla T != 0 on a homogeneous instance",
                   anchor="instanton, dnT = 0 <=> nabla T = 0 (compact statement)")
    else:
        rep.info("compact_converse_consistency", "consistent",
                 anchor="instanton, dnT = 0 <=> nabla T = 0 (compact statement)",
                 note="instance-consistent; compactness direction not asserted")

    # Gauduchon variant: evaluated, not asserted
    if dtheta_zero and delta_theta_zero and instanton:
        d4 = data.d_nabla_T
        gauduchon_res = max(r_ntheta,
                            tcontract("ijkl,mjkl->im", form_to_tensor(d4), PSI_T).max_abs(),
                            (hodge(d4) - d4).max_abs())
        rep.info("gauduchon_spin7", scalar_str(gauduchon_res),
                 anchor="dtheta = 0, delta theta = 0, instanton => nabla theta = 0,"
                        " dnT in Lambda^4_27, *dnT = dnT",
                 note="instance-consistent; compactness direction not asserted")
    else:
        rep.info("gauduchon_spin7", "-",
                 anchor="dtheta = 0, delta theta = 0, instanton => nabla theta = 0,"
                        " dnT in Lambda^4_27, *dnT = dnT",
                 note="hypotheses not met on this instance")

    # Hull connection: instanton iff the torsion is closed
    conn_h = hull(lc, T)
    R_h = curvature(L, conn_h)
    inst_h = spin7_instanton_residuals(R_h)
    hull_instanton = mode.is_zero(inst_h["instanton"])
    rep.flag("hull_instanton", hull_instanton,
             anchor="curvature of the torsion -T connection in spin(7)",
             note=f"residual {scalar_str(inst_h['instanton'])}")
    unimodular = L.unimodular_defect() == 0
    if unimodular:
        rep.expect("hull_biconditional", hull_instanton == torsion_closed,
                   detail=f"hull_instanton={hull_instanton}, dT=0 is {torsion_closed}",
                   anchor="Hull connection is a Spin(7) instanton  <=>  dT = 0")
    else:
        rep.implication("hull_biconditional", torsion_closed, inst_h["instanton"],
                        anchor="dT = 0 => Hull connection is a Spin(7) instanton",
                        note="converse needs integration by parts; host not unimodular")

    out = Spin7Analysis(host=L, mode=mode, report=rep, theta=theta, torsion=T,
                        connection=conn, curvature=R, data=data, ric=ric, scal=scal,
                        instanton=instanton, hull_instanton=hull_instanton,
                        torsion_closed=torsion_closed, nabla_T_zero=nabla_T_zero)
    return out


def extension_report(L7: LieAlgebra, mode: ScalarMode = ScalarMode(),
                     instance: str = "spin7-extension") -> Spin7Analysis:
    """Extend an integrable dim-7 host and tie its Lee data to the dim-8 one.

    Asserts theta8 = (7/6) theta7 + ((d phi, *phi)/7) e1 and reports whether
    the dim-8 torsion agrees with the dim-7 characteristic torsion.
    """
    L8 = extend_g2_to_spin7(L7, mode)
    out = analyze_spin7(L8, mode, instance=instance)
    rep = out.report
    theta7 = lee_form_g2(L7)
    lam7 = lambda_const(L7)
    expected = shift_form(theta7).qscale(7, 6) + basis_form(8, (1,)) * qmul(lam7, 6, 7)
    rep.residual("lee_extension_relation", (out.theta - expected).max_abs(),
                 anchor="theta8 = (7/6) theta7 + ((d phi,*phi)/7) e1")

    from .g2 import characteristic_torsion

    try:
        T7 = characteristic_torsion(L7, mode)
        same = (out.torsion - shift_form(T7)).max_abs()
        rep.info("torsion_matches_g2", scalar_str(same),
                 anchor="T8 vs characteristic T7 under the index shift")
    except NoCharacteristicConnection:
        pass
    return out


# -- canonical identity batteries ----------------------------------------------


def _delta8() -> DenseTensor:
    return DenseTensor(DIM, 2, {(i, i): 1 for i in range(1, DIM + 1)})


def canonical_identities_report(mode: ScalarMode = ScalarMode()) -> VerificationReport:
    """Contraction and wedge identities of the canonical Psi."""
    rep = VerificationReport(instance="spin7-canonical-identities", mode=mode)
    delta = _delta8()

    rep.expect("psi_psi_full", frob2(PSI_T) == 336, detail=scalar_str(frob2(PSI_T)),
               anchor="Psi(i,j,p,q)Psi(i,j,p,q) = 336")
    three = tcontract("ijpq,ajpq->ia", PSI_T, PSI_T)
    rep.residual("psi_psi_three_index", (three - delta.qscale(42)).max_abs(),
                 anchor="Psi(i,j,p,q)Psi(a,j,p,q) = 42 delta(i,a)")
    two = tcontract("ijpq,klpq->ijkl", PSI_T, PSI_T)
    rhs = (tcontract("ik,jl->ijkl", delta, delta).qscale(6)
           - tcontract("il,jk->ijkl", delta, delta).qscale(6) - PSI_T.qscale(4))
    rep.residual("psi_psi_two_index", (two - rhs).max_abs(),
                 anchor="Psi(i,j,p,q)Psi(k,l,p,q) = 6 d(i,k)d(j,l) - 6 d(i,l)d(j,k)"
                        " - 4 Psi(i,j,k,l)")

    rep.expect("psi_self_dual", hodge(PSI) == PSI, detail=str(hodge(PSI) - PSI),
               anchor="*Psi = Psi")
    vol = basis_form(DIM, range(1, DIM + 1))
    rep.expect("psi_wedge_psi", wedge(PSI, PSI) == vol.qscale(14),
               detail=str(wedge(PSI, PSI)), anchor="Psi ^ Psi = 14 vol")
    rep.expect("inner_psi", form_inner(PSI, PSI) == 14,
               detail=scalar_str(form_inner(PSI, PSI)), anchor="(Psi, Psi) = 14")

    # the canonical Psi restricted against the canonical G2 data
    phi8 = shift_form(G2_PHI)
    built = -wedge(basis_form(8, (1,)), phi8) - shift_form(hodge(G2_PHI))
    rep.expect("psi_from_g2", built == PSI, detail=str(built - PSI),
               anchor="Psi = -e1 ^ phi - *phi (shifted canonical G2 data)")
    return rep


def decomposition_report(mode: ScalarMode = ScalarMode()) -> VerificationReport:
    """Lambda^2 ranks and the full Lambda^4 spectrum of the Omega operator."""
    rep = VerificationReport(instance="spin7-decomposition", mode=mode)

    tr7 = tr21 = 0
    worst_eigen = 0
    worst_contract = 0
    for idx in increasing_indices(DIM, 2):
        b = basis_form(DIM, idx)
        a7, a21 = project2_spin7(b)
        tr7 += a7.coeff(idx)
        tr21 += a21.coeff(idx)
        worst_eigen = max(worst_eigen,
                          (hodge(wedge(a7, PSI)) + a7.qscale(3)).max_abs(),
                          (hodge(wedge(a21, PSI)) - a21).max_abs())
        worst_contract = max(worst_contract,
                             (contract(a7, PSI) + a7.qscale(3)).max_abs(),
                             (contract(a21, PSI) - a21).max_abs())
    rep.expect("lambda2_ranks", (tr7, tr21) == (7, 21), detail=f"tr P7={tr7}, tr P21={tr21}",
               anchor="Lambda^2 = 7 + 21")
    rep.residual("lambda2_eigen_equations", worst_eigen,
                 anchor="*(a7^Psi) = -3 a7, *(a21^Psi) = a21")
    rep.residual("lambda2_contractions", worst_contract,
                 anchor="a7(i,j)Psi(i,j,k,l) = -6 a7(k,l); a21(i,j)Psi(i,j,k,l) = 2 a21(k,l)")

    rep.residual("omega_on_psi", (omega_op(PSI) + PSI.qscale(24)).max_abs(),
                 anchor="Omega(Psi) = -24 Psi")

    eigen = [-24, -12, 4, 0]
    labels = ["1", "7", "27", "35"]
    traces = dict.fromkeys(labels, 0)
    worst = {"eigen": 0, "selfdual": 0, "contract27": 0}
    for idx in increasing_indices(DIM, 4):
        b = basis_form(DIM, idx)
        parts = project4(b)
        star_b = hodge(b)
        plus = (b + star_b).qscale(1, 2)
        minus = (b - star_b).qscale(1, 2)
        recomposed = zero_form(DIM, 4)
        for lam, lab, part in zip(eigen, labels, parts):
            traces[lab] += part.coeff(idx)
            worst["eigen"] = max(worst["eigen"], (omega_op(part) - part * lam).max_abs())
            recomposed = recomposed + part
        worst["selfdual"] = max(
            worst["selfdual"],
            (parts[0] + parts[1] + parts[2] - plus).max_abs(),
            (parts[3] - minus).max_abs(),
        )
        worst["contract27"] = max(
            worst["contract27"],
            tcontract("ijkl,mjkl->im", form_to_tensor(parts[2]), PSI_T).max_abs())
        if (recomposed - b).max_abs() != 0:
            rep.expect(f"completeness_{''.join(map(str, idx))}", False,
                       detail=str(recomposed - b), anchor="P1 + P7 + P27 + P35 = id")
    rep.expect("lambda4_multiplicities",
               tuple(traces[lab] for lab in labels) == (1, 7, 27, 35),
               detail=", ".join(f"{lab}: {traces[lab]}" for lab in labels),
               anchor="Omega eigenvalues {-24:1, -12:7, 4:27, 0:35}")
    rep.residual("lambda4_eigen_equations", worst["eigen"],
                 anchor="Omega = -24, -12, +4, 0 on the four summands")
    rep.residual("selfduality_split", worst["selfdual"],
                 anchor="P1+P7+P27 = (1+*)/2, P35 = (1-*)/2")
    rep.residual("lambda4_27_contraction", worst["contract27"],
                 anchor="sigma in Lambda^4_27 => sigma(i,j,k,l)Psi(m,j,k,l) = 0")
    return rep
