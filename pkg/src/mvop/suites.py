"""Named verification suites over the bundled weight families.

Each suite evaluates a group of identities numerically and returns a
list of Check records (id, relation, family, max residual, tolerance).
Families are built once per process and cached; `run_suite("all")`
executes every suite with checks sorted by id, so reports are
deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.polynomial import Polynomial

from . import deformation, duran_ismail, hermite_fast, ladder, pearson
from .linalg import rel_residual
from .oracle import (DEFAULT_GRID, MVOPFamily, christoffel_darboux_residual,
                     gram_schmidt_family, three_term_residual)
from .weights import (freud_weight, hermite_alpha_weight,
                      pearson_alpha_parameters, pearson_hermite_weight,
                      pearson_V_hermite, pearson_V_numeric, scalar_weight)

__all__ = ["Check", "SUITE_NAMES", "family", "clear_family_cache",
           "run_suite", "suite_report"]


@dataclass(frozen=True)
class Check:
    id: str
    relation: str
    family: str
    max_residual: float
    tolerance: float

    @property
    def ok(self) -> bool:
        return bool(self.max_residual < self.tolerance)

    def to_jsonable(self) -> dict:
        return {
            "id": self.id,
            "relation": self.relation,
            "family": self.family,
            "max_residual": self.max_residual,
            "tolerance": self.tolerance,
            "pass": self.ok,
        }


_BUILDERS = {
    "hermite-1": lambda: gram_schmidt_family(scalar_weight([0.0, 0.0, 1.0]), 12),
    "hermite-2": lambda: gram_schmidt_family(hermite_alpha_weight([1.0, 1.0]), 12),
    "hermite-3": lambda: gram_schmidt_family(hermite_alpha_weight([1.0, 1.0, 1.0]), 11),
    "gauss-ladder-2": lambda: gram_schmidt_family(pearson_hermite_weight(2), 12),
    "gauss-ladder-3": lambda: gram_schmidt_family(pearson_hermite_weight(3), 11),
    "freud-1": lambda: gram_schmidt_family(scalar_weight([0.0, 0.0, 0.0, 0.0, 1.0]), 14),
    "freud-2": lambda: gram_schmidt_family(freud_weight(2, 1.0, 1.0, 0.0), 14),
    "quartic-t1": lambda: gram_schmidt_family(scalar_weight([0.0, 0.0, 4.0, 0.0, 1.0]), 8),
}

_FAMILY_CACHE: dict[str, MVOPFamily] = {}


def family(name: str) -> MVOPFamily:
    """Cached oracle family for one of the bundled weights."""
    if name not in _BUILDERS:
        raise KeyError(f"unknown family {name!r}")
    if name not in _FAMILY_CACHE:
        _FAMILY_CACHE[name] = _BUILDERS[name]()
    return _FAMILY_CACHE[name]


def clear_family_cache() -> None:
    _FAMILY_CACHE.clear()


def _check(cid, relation, fam_name, residual, tol) -> Check:
    return Check(cid, relation, fam_name, float(residual), float(tol))


# ---------------------------------------------------------------- ladder

def suite_ladder() -> list[Check]:
    out = []
    for name in ("hermite-1", "hermite-2", "freud-1", "freud-2"):
        fam = family(name)
        m_low = ladder.lowering_operator(fam)
        m_raise = m_low.dagger(fam.H)
        r_low = r_raise = 0.0
        for n in range(9):
            for x in DEFAULT_GRID:
                lo, ra = ladder.ladder_residual(fam, x, n, m_low, m_raise)
                r_low = max(r_low, lo)
                r_raise = max(r_raise, ra)
        out.append(_check(f"ladder-lower-{name}",
                          "P.D = M.P with M = A + (v'(L))_-", name, r_low, 1e-8))
        out.append(_check(f"ladder-raise-{name}",
                          "P.D+ = M+.P, M+ = H(n) M* H(n)^-1", name, r_raise, 1e-8))
    for name in ("hermite-2", "freud-2"):
        fam = family(name)
        m_low = ladder.lowering_operator(fam)
        r = max(ladder.adjoint_pairing_residual(fam, m_low, n, m)
                for n in range(7) for m in range(7))
        out.append(_check(f"ladder-adjoint-{name}",
                          "<M.P_n, P_m> = <P_n, M+.P_m>", name, r, 1e-8))
    return out


# ---------------------------------------------------------------- string

def suite_string() -> list[Check]:
    out = []
    for name in ("hermite-1", "hermite-2", "freud-1", "freud-2"):
        fam = family(name)
        rows = ladder.string_residuals(fam, 0, 8)
        r1 = max(r for r, _ in rows)
        r2 = max(r for _, r in rows)
        out.append(_check(f"string-recurrence-{name}",
                          "[B(n),A] = I + G_{-1}(n) - G_{-1}(n+1), G = v'(L)",
                          name, r1, 1e-8))
        out.append(_check(f"string-norms-{name}",
                          "[C(n),A] = C(n) G_0(n-1) - G_0(n) C(n)",
                          name, r2, 1e-8))
        rz = max(ladder.zero_coeff_residual(fam, n) for n in range(9))
        out.append(_check(f"string-zerocoeff-{name}",
                          "G_0(n) = A + H(n) A* H(n)^-1", name, rz, 1e-8))
    for name in ("hermite-1", "hermite-2"):
        fam = family(name)
        rt = max(ladder.hermite_telescope_residual(fam, n) for n in range(1, 10))
        out.append(_check(f"string-telescope-{name}",
                          "sum_k [B(k),A] = n I - 2 C(n) (Gaussian potential)",
                          name, rt, 1e-8))
    return out


# ------------------------------------------------------------- dpainleve

def suite_dpainleve() -> list[Check]:
    out = []
    for cid, name, t in (("dpainleve-t0", "freud-1", 0.0),
                         ("dpainleve-t1", "quartic-t1", 1.0)):
        fam = family(name)
        r = max(ladder.dpainleve1_residual(fam.C, t, n) for n in range(1, 7))
        out.append(_check(cid,
                          "n = 4 C(n) (C(n-1) + C(n) + C(n+1) + 2t), v = x^4 + 4tx^2",
                          name, r, 1e-6))
    return out


# ----------------------------------------------------------- hermite-fast

def suite_hermite_fast() -> list[Check]:
    out = []
    fam1 = family("hermite-1")
    r_b = max(abs(complex(fam1.B[n][0, 0])) for n in range(10))
    out.append(_check("fast-oracle-scalar-offdiag",
                      "scalar Gaussian recurrence has B(n) = 0",
                      "hermite-1", r_b, 1e-10))
    r_c = max(abs(complex(fam1.C[n][0, 0]) - n / 2.0) / (n / 2.0)
              for n in range(1, 11))
    out.append(_check("fast-oracle-scalar-ratio",
                      "scalar Gaussian C(n) = n/2",
                      "hermite-1", r_c, 1e-9))
    r_h = abs(complex(fam1.H[0][0, 0]) - np.sqrt(np.pi)) / np.sqrt(np.pi)
    out.append(_check("fast-oracle-scalar-h0",
                      "scalar Gaussian H(0) = sqrt(pi)",
                      "hermite-1", r_h, 1e-12))
    r_tt = three_term_residual(fam1)
    out.append(_check("fast-oracle-three-term",
                      "x P_n = P_{n+1} + B(n) P_n + C(n) P_{n-1}",
                      "hermite-1", r_tt, 1e-9))

    for name, alpha in (("hermite-2", [1.0, 1.0]),
                        ("hermite-3", [1.0, 1.0, 1.0]),
                        ("gauss-ladder-2", pearson_alpha_parameters(2))):
        fam = family(name)
        h0 = hermite_fast.h0_closed_form(alpha, check=False)
        out.append(_check(f"fast-h0-{name}",
                          "closed-form H(0) matches the quadrature Gram matrix",
                          name, rel_residual(h0 - fam.H[0], fam.H[0]), 1e-10))

    for name, alpha in (("hermite-2", [1.0, 1.0]), ("hermite-3", [1.0, 1.0, 1.0])):
        fam = family(name)
        ff = hermite_fast.fast_family(alpha, 10, check_h0=False)
        r_h = max(rel_residual(ff.H[n] - fam.H[n], fam.H[n]) for n in range(11))
        r_b = max(rel_residual(ff.B[n] - fam.B[n], fam.B[n]) for n in range(10))
        r_p = max(rel_residual(ff.value(x, n) - fam.value(x, n), fam.value(x, n))
                  for n in range(11) for x in DEFAULT_GRID)
        out.append(_check(f"fast-vs-oracle-h-{name}",
                          "norm recursion matches quadrature norms", name, r_h, 1e-8))
        out.append(_check(f"fast-vs-oracle-b-{name}",
                          "recurrence from norms matches the oracle", name, r_b, 1e-8))
        out.append(_check(f"fast-vs-oracle-p-{name}",
                          "Hermite-combination assembly matches the oracle",
                          name, r_p, 1e-8))

    ff3 = hermite_fast.fast_family([1.0, 1.0, 1.0], 10, check_h0=False)
    r_diag = max(abs(complex(ff3.xi[n][-1, -1]) - 0.5 ** n) for n in range(11))
    out.append(_check("fast-xi-diagonal",
                      "boundary row has xi(n, N, N) = 2^-n", "hermite-3",
                      r_diag, 1e-12))
    r_zero = 0.0
    dim = 3
    for n in range(11):
        for j in range(1, dim + 1):
            for k in range(1, dim + 1):
                if n + j - k < 0:
                    r_zero = max(r_zero, abs(complex(ff3.xi[n][j - 1, k - 1])))
    out.append(_check("fast-xi-zero-pattern",
                      "xi(n, j, k) = 0 whenever n + j - k < 0",
                      "hermite-3", r_zero, 1e-14))
    return out


# --------------------------------------------------------------- casimir

def suite_casimir() -> list[Check]:
    out = []
    for name in ("hermite-2", "gauss-ladder-2"):
        fam = family(name)
        r_eig = max(hermite_fast.second_order_D_check(fam, x, n)
                    for n in range(9) for x in DEFAULT_GRID)
        out.append(_check(f"casimir-eigen-{name}",
                          "P.D = (n I + J) P, D = -d2/2 + (xI - A) d + J",
                          name, r_eig, 1e-8))
        alpha = np.asarray(fam.weight.meta["alpha"], dtype=float)
        br = hermite_fast.oscillator_bracket_checks(alpha)
        for key, val in sorted(br.items()):
            out.append(_check(f"casimir-bracket-{key.replace('_', '-')}-{name}",
                              "oscillator bracket relation " + key.replace("_", " "),
                              name, val, 1e-8))
        r_cas = max(hermite_fast.casimir_check(fam, x, n)
                    for n in range(9) for x in DEFAULT_GRID)
        out.append(_check(f"casimir-difference-{name}",
                          "P.(J - xA + A^2/2) equals its difference-operator image",
                          name, r_cas, 1e-8))
        r_gamma = hermite_fast.casimir_gamma_commutator(fam)
        out.append(_check(f"casimir-flag-commutator-{name}",
                          "[difference Casimir, n I + J] = 0",
                          name, r_gamma, 1e-8))
    fam = family("gauss-ladder-2")
    worst = {}
    for n in range(9):
        for x in DEFAULT_GRID:
            for key, val in hermite_fast.conjugation_checks(fam, x, n).items():
                worst[key] = max(worst.get(key, 0.0), val)
    for key in sorted(worst):
        out.append(_check(f"casimir-conjugation-{key.replace('_', '-')}",
                          "conjugated identity " + key.replace("_", " "),
                          "gauss-ladder-2", worst[key], 1e-8))
    return out


# --------------------------------------------------------------- pearson

def suite_pearson() -> list[Check]:
    out = []
    grid = DEFAULT_GRID
    for dim in (1, 2, 3):
        w = pearson_hermite_weight(dim)
        v_cl = pearson_V_hermite(pearson_alpha_parameters(dim))
        r = max(duran_ismail.pearson_residual(w, v_cl, x) for x in grid)
        out.append(_check(f"pearson-weight-n{dim}",
                          "W' = -W V with the closed quadratic V",
                          f"gauss-ladder-{dim}" if dim > 1 else "hermite-1",
                          r, 1e-10))
    wq = freud_weight(2, 1.0, 1.0, 0.0)
    v_fit = pearson_V_numeric(wq)
    r = max(duran_ismail.pearson_residual(wq, v_fit, x) for x in grid)
    out.append(_check("pearson-v-fit-quartic",
                      "W' = -W V with a fitted cubic V", "freud-2", r, 1e-8))

    fam = family("gauss-ladder-2")
    m2 = pearson.m2_closed_form(fam.H, fam.weight.A)
    r_m2 = 0.0
    for n in range(2, 9):
        exp = pearson.derivative_expansion(fam, n)
        r_m2 = max(r_m2, rel_residual(exp[2] - m2[n], m2[n]),
                   rel_residual(exp[1] - n * np.eye(fam.dim), exp[1]))
    out.append(_check("pearson-m2-closed",
                      "P' projections give M_{-1} = nI, M_{-2} = H(n) A* H(n-2)^-1",
                      "gauss-ladder-2", r_m2, 1e-8))
    r_comm = max(pearson.m2_commutator_residual(fam, n) for n in range(2, 9))
    out.append(_check("pearson-m2-commutator",
                      "[M_{-2}(n), A] = 2 (n-1) C(n) - 2 n C(n-1)",
                      "gauss-ladder-2", r_comm, 1e-8))
    r_rec = max(pearson.hrec2_residual(fam.H, fam.weight.A, n) for n in range(9))
    out.append(_check("pearson-norm-recursion",
                      "second-order recursion for inverse norms",
                      "gauss-ladder-2", r_rec, 1e-7))
    v_cl = pearson_V_hermite(pearson_alpha_parameters(2))
    r_adj = max(pearson.dx_adjoint_residual(fam, v_cl, n, m)
                for n in range(6) for m in range(6))
    out.append(_check("pearson-dx-adjoint",
                      "<P'_n, P_m> = <P_n, -P'_m + P_m V*>",
                      "gauss-ladder-2", r_adj, 1e-8))
    low = ladder.lowering_operator(fam)
    r_dx = max(pearson.lowering_dx_commutator_residual(fam, low, n)
               for n in range(1, 8))
    out.append(_check("pearson-derivative-operator",
                      "difference image of d/dx commutes with the lowering image",
                      "gauss-ladder-2", r_dx, 1e-8))
    return out


# ------------------------------------------------------------------ toda

def suite_toda() -> list[Check]:
    out = []

    def scalar_gauss(t):
        return scalar_weight(Polynomial([0.0, t, 1.0]))

    def scalar_gauss_quad(t):
        return scalar_weight(Polynomial([0.0, 0.0, 1.0 + t]))

    def matrix_gauss(t):
        w = pearson_hermite_weight(2)
        return w.with_potential(w.v + Polynomial([0.0, t]))

    def matrix_gauss_quad(t):
        w = pearson_hermite_weight(2)
        return w.with_potential(w.v + Polynomial([0.0, 0.0, t]))

    rows = [
        ("toda-flow-scalar", "hermite-1", scalar_gauss, [0.0, 1.0], 0.0),
        ("toda-flow-matrix", "gauss-ladder-2", matrix_gauss, [0.0, 1.0], 0.0),
        ("toda-langmuir-scalar", "hermite-1", scalar_gauss_quad, [0.0, 0.0, 1.0], 0.0),
        ("toda-langmuir-matrix", "gauss-ladder-2", matrix_gauss_quad, [0.0, 0.0, 1.0], 0.0),
        ("toda-quartic-direction", "freud-2",
         lambda t: freud_weight(2, 1.0, 1.0, t), [0.0, 0.0, -1.0], 0.2),
    ]
    for cid, fname, mk, u, t0 in rows:
        res = deformation.finite_diff_check(mk, u, t0)
        out.append(_check(cid,
                          "dB/dt, dC/dt match the deformation lattice for u(x)",
                          fname, max(res["B"], res["C"]), 1e-6))

    def two_times(t1, t2):
        w = pearson_hermite_weight(2)
        return w.with_potential(w.v + Polynomial([0.0, t1, t2]))

    r_mix = deformation.mixed_flow_residual(two_times, [0.0, 1.0],
                                            [0.0, 0.0, 1.0], 0.1, 0.05)
    out.append(_check("toda-mixed-flows",
                      "the linear and quadratic deformation flows commute",
                      "gauss-ladder-2", r_mix, 1e-5))
    return out


# ------------------------------------------------------------------- lax

def suite_lax() -> list[Check]:
    out = []
    fam = family("gauss-ladder-2")
    for j in (1, 2):
        r = deformation.lax_vs_lattice(fam, j, 4)
        out.append(_check(f"lax-vs-lattice-j{j}",
                          "interior blocks of [L, (L^j)_+] equal the lattice RHS",
                          "gauss-ladder-2", r, 1e-8))
        tri = deformation.BlockTridiag.from_family(fam, 4 + j + 3)
        r_pm = deformation.lax_minus_consistency(tri, j, 4)
        out.append(_check(f"lax-plus-minus-j{j}",
                          "[L, (L^j)_+] = -[L, (L^j)_-] on interior blocks",
                          "gauss-ladder-2", r_pm, 1e-10))

    tri_small = deformation.BlockTridiag.from_family(fam, 8)
    tri_large = deformation.BlockTridiag.from_family(fam, 12)
    j = 2
    small = deformation.lax_bracket(tri_small, j)
    large = deformation.lax_bracket(tri_large, j)
    dim = fam.dim
    keep = 4 * dim
    r_trunc = float(np.max(np.abs(small[:keep, :keep] - large[:keep, :keep])))
    out.append(_check("lax-truncation",
                      "interior bracket blocks are stable under enlargement",
                      "gauss-ladder-2", r_trunc, 1e-12))

    fam1 = family("hermite-1")
    tri1 = deformation.BlockTridiag.from_family(fam1, 10)
    br1 = deformation.lax_bracket(tri1, 1)
    r_pat = max(abs(br1[n, n] + 0.5) for n in range(7))
    out.append(_check("lax-scalar-pattern",
                      "scalar Gaussian j=1 bracket diagonal is -1/2",
                      "hermite-1", r_pat, 1e-12))

    famq = family("freud-1")
    triq = deformation.BlockTridiag.from_family(famq, 12)
    brq = deformation.lax_bracket(triq, 2)
    r_par = max(abs(brq[n, n]) for n in range(8))
    out.append(_check("lax-quartic-parity",
                      "even weight keeps the j=2 bracket diagonal at zero",
                      "freud-1", r_par, 1e-12))
    return out


# ----------------------------------------------------------- duran-ismail

def suite_duran_ismail() -> list[Check]:
    out = []
    fam = family("gauss-ladder-2")
    v_cl = pearson_V_hermite(pearson_alpha_parameters(2))
    r_lad = r_cl = r_sum = r_rho = 0.0
    for n in range(1, 7):
        for x in DEFAULT_GRID:
            e, f = duran_ismail.EF_coefficients(fam, v_cl, x, n)
            e_c, f_c = duran_ismail.hermite_pearson_EF_closed(
                fam.H, fam.weight.A, x, n)
            r_lad = max(r_lad, duran_ismail.ef_ladder_residual(fam, e, f, x, n))
            r_cl = max(r_cl, rel_residual(e - e_c, e_c),
                       rel_residual(f - f_c, f_c))
            r_sum = max(r_sum, duran_ismail.ef_sum_relation_residual(fam, e, f, x, n))
            r_rho = max(r_rho, duran_ismail.rho_commutator_residual(fam, x, n))
    out.append(_check("duran-ismail-ladder",
                      "P' = F P_n - E P_{n-1} with integral E, F",
                      "gauss-ladder-2", r_lad, 1e-8))
    out.append(_check("duran-ismail-closed-forms",
                      "closed Gaussian E, F match the integrals",
                      "gauss-ladder-2", r_cl, 1e-7))
    out.append(_check("duran-ismail-bridge",
                      "integral ladder minus commutator ladder is the "
                      "potential moment pair",
                      "gauss-ladder-2", r_sum, 1e-8))
    out.append(_check("duran-ismail-rho-collapse",
                      "kernel expansion of [A, P_n] via the rho divided difference",
                      "gauss-ladder-2", r_rho, 1e-8))

    fam1 = family("hermite-1")
    v1 = pearson_V_numeric(fam1.weight)
    r_sc = 0.0
    for n in range(1, 7):
        e, f = duran_ismail.EF_coefficients(fam1, v1, 0.7, n)
        r_sc = max(r_sc, abs(complex(e[0, 0]) + n), abs(complex(f[0, 0])))
    out.append(_check("duran-ismail-scalar",
                      "scalar Gaussian reduces to E = -n, F = 0",
                      "hermite-1", r_sc, 1e-10))

    r_cd = max(christoffel_darboux_residual(fam, x, y, n)
               for n in range(1, 9)
               for x, y in ((0.3, -0.7), (1.2, 0.4), (-1.5, 0.9)))
    out.append(_check("duran-ismail-christoffel-darboux",
                      "(x - y) K_n(x, y) telescopes to the boundary terms",
                      "gauss-ladder-2", r_cd, 1e-8))

    x0 = 0.6
    dd = duran_ismail.divided_difference_values(v_cl, x0, np.array([x0]))
    r_dd = float(np.max(np.abs(dd[0] - v_cl.deriv()(x0))))
    out.append(_check("duran-ismail-divided-difference",
                      "coincident-point divided difference equals V'",
                      "gauss-ladder-2", r_dd, 1e-12))
    return out


_SUITES = {
    "ladder": suite_ladder,
    "string": suite_string,
    "dpainleve": suite_dpainleve,
    "hermite-fast": suite_hermite_fast,
    "casimir": suite_casimir,
    "pearson": suite_pearson,
    "toda": suite_toda,
    "lax": suite_lax,
    "duran-ismail": suite_duran_ismail,
}

SUITE_NAMES = tuple(_SUITES) + ("all",)


def run_suite(name: str) -> list[Check]:
    """Run one suite (or "all") and return its checks sorted by id."""
    if name == "all":
        checks = []
        for fn in _SUITES.values():
            checks.extend(fn())
    elif name in _SUITES:
        checks = _SUITES[name]()
    else:
        raise KeyError(f"unknown suite {name!r}, expected one of "
                       f"{', '.join(SUITE_NAMES)}")
    return sorted(checks, key=lambda c: c.id)


def suite_report(name: str) -> dict:
    """JSON-ready report for a suite run."""
    checks = run_suite(name)
    failed = [c.id for c in checks if not c.ok]
    return {
        "suite": name,
        "n_checks": len(checks),
        "passed": not failed,
        "failed": failed,
        "checks": [c.to_jsonable() for c in checks],
    }
