"""Minimum-distance bounds for two-point codes C_Omega(D, G).

All bounds share the shape  d >= deg(G) - (2g - 2) + extra:

* designed:  extra = 0 (the Goppa designed distance).
* floor:     G = H + floor(H); extra = deg(H - floor(H)).
* kp:        F and t+1 consecutive P-gap indices alpha..alpha+t of F,
             with 1-alpha-t..1-alpha P-gaps of G - F; extra = t + 1.
* af:        G = A + B and Z >= 0 with L(A) = L(A - Z) and
             L(B) = L(B + Z); extra = deg(Z).

Because l(a*Pinf + b*P0) only depends on (a + b, b mod m) - multiplying
by the shift function moves poles between the two points - the af and
kp searches run over reduced coordinates (degree, residue class), which
keeps them complete over small windows:

* af: any nontrivial witness has deg(B) <= 2g-2 and deg(A-Z) <= 2g-2
  (otherwise both sides of an equality would be Riemann-Roch exact and
  differ), so deg(A) lives in a band of width about 4g and deg(Z) <= 2g.
* kp: gap runs end at degree 2g (exactness forces a jump), so the run
  start in degree terms lives in [deg(G) + 2 - 2g, 2g - 1].

The same shift invariance makes af and kp values equal on every
representative G + k*m*(P0 - Pinf); the floor decomposition couples G
to 2H and is genuinely representative-dependent, so floor_bound folds
over one period of representatives.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field

import numpy as np

from .curve import Curve, make_curve
from .rrspace import Divisor, P_INF, P_ORIGIN, dim, floor_divisor, shift_divisor

__all__ = [
    "BoundResult",
    "designed_distance",
    "af_bound",
    "floor_bound",
    "kp_bound",
    "best_bound",
    "improvement_table",
    "verify_witness",
]


@dataclass(frozen=True)
class BoundResult:
    """One lower bound on the minimum distance of C_Omega(D, G)."""

    method: str
    value: int
    designed: int
    curve: str
    divisor: Divisor
    representative_shift: int = 0
    witness: dict | None = None
    note: str = ""

    @property
    def improvement(self) -> int:
        return self.value - self.designed

    @property
    def meaningful(self) -> bool:
        return self.value > 0


def _require_two_point(G: Divisor, one_point: bool = False) -> None:
    if G.constraints:
        raise ValueError("bounds are defined for two-point divisors only")
    if one_point and G.inf != 0 and G.origin != 0:
        raise ValueError("one_point bounds need G supported at a single point")


def _representatives(m: int) -> list[int]:
    ks = list(range(-(m // 2), m - m // 2))
    ks.sort(key=lambda k: (abs(k), k < 0))
    return ks


class _Engine:
    """Per-curve scratch space: the reduced-dimension table l~(d, r)."""

    def __init__(self, curve: Curve):
        self.curve = curve
        self._lo = 0
        self._hi = -1
        self._lt = np.zeros((0, curve.shift_order), dtype=np.int16)

    def lt(self, d: int, r: int) -> int:
        return dim(self.curve, Divisor(d - r, r))

    def lt_block(self, lo: int, hi: int) -> tuple[np.ndarray, int]:
        """Dense l~ values for degrees lo..hi; returns (array, array_lo)."""
        if self._hi < self._lo:
            new_lo, new_hi = lo, hi
        else:
            if lo >= self._lo and hi <= self._hi:
                return self._lt, self._lo
            new_lo, new_hi = min(lo, self._lo), max(hi, self._hi)
        m = self.curve.shift_order
        arr = np.empty((new_hi - new_lo + 1, m), dtype=np.int16)
        for d in range(new_lo, new_hi + 1):
            if self._lo <= d <= self._hi:
                arr[d - new_lo] = self._lt[d - self._lo]
            else:
                for r in range(m):
                    arr[d - new_lo, r] = self.lt(d, r)
        self._lt, self._lo, self._hi = arr, new_lo, new_hi
        return arr, new_lo

    # -- asymmetric floor --------------------------------------------------

    def af_search(
        self, G: Divisor, one_point: bool = False
    ) -> tuple[int, Divisor | None, Divisor | None]:
        """Max deg(Z) over valid (A, Z); returns (zeta, A, Z).

        With one_point=True both A and Z are restricted to the support
        of G (the evaluation divisor absorbs the other point).
        """
        curve = self.curve
        g, m = curve.genus, curve.shift_order
        dG = G.degree
        gamma2 = G.origin % m
        # 4g-2-dG matches the longest possible kp gap run, so every kp
        # witness stays inside this search space (af >= kp).
        zmax = max(2 * g, 4 * g - 2 - dG)
        dA_lo = dG - (2 * g - 2)
        if zmax < 1 or dA_lo > 2 * g - 2 + zmax:
            return 0, None, None
        LT, off = self.lt_block(dG - 2 * g + 2 - zmax, 2 * g - 2 + zmax)
        if one_point:
            at_origin = G.inf == 0 and G.origin != 0
            best = (0, None, None)
            for zeta in range(1, zmax + 1):
                for dA in range(dA_lo, 2 * g - 2 + zeta + 1):
                    if at_origin:
                        ca = LT[dA - off, dA % m] == LT[dA - zeta - off, (dA - zeta) % m]
                        cb = (
                            LT[dG - dA - off, (gamma2 - dA) % m]
                            == LT[dG - dA + zeta - off, (gamma2 - dA + zeta) % m]
                        )
                    else:
                        ca = LT[dA - off, 0] == LT[dA - zeta - off, 0]
                        cb = LT[dG - dA - off, 0] == LT[dG - dA + zeta - off, 0]
                    if ca and cb:
                        A = Divisor(0, dA) if at_origin else Divisor(dA, 0)
                        Z = Divisor(0, zeta) if at_origin else Divisor(zeta, 0)
                        best = (zeta, A, Z)
                        break
            return best
        cols = np.arange(m)
        best = (0, None, None)
        for zeta in range(1, zmax + 1):
            hi = 2 * g - 2 + zeta
            if dA_lo > hi:
                continue
            band = np.arange(dA_lo, hi + 1)
            LA = LT[band - off]
            LB = LT[dG - band - off]
            for z2 in range(zeta + 1):
                ca = LA == LT[band - zeta - off][:, (cols - z2) % m]
                cb = (
                    LB[:, (gamma2 - cols) % m]
                    == LT[dG - band + zeta - off][:, (gamma2 - cols + z2) % m]
                )
                feasible = ca & cb
                if feasible.any():
                    i, r = np.argwhere(feasible)[0]
                    dA, rho = int(band[i]), int(r)
                    best = (zeta, Divisor(dA - rho, rho), Divisor(zeta - z2, z2))
                    break
        return best

    # -- consecutive-gap (kp) ----------------------------------------------

    def kp_search(self, G: Divisor, point: str, one_point: bool = False):
        """Best (t+1, class, e1) for consecutive-gap runs at `point`."""
        curve = self.curve
        g, m = curve.genus, curve.shift_order
        dG = G.degree
        e1_lo, e1_hi = dG + 2 - 2 * g, 2 * g - 1
        if e1_lo > e1_hi:
            return None
        # A run truncated at the array bottom counts at least pad+1 entries,
        # strictly more than any forward run, so min() never sees it.
        pad = (e1_hi - e1_lo) + 2
        e_min, e_max = e1_lo - pad, 2 * g
        LT, off = self.lt_block(e_min - 1, e_max)
        gamma2 = G.origin % m
        n = e_max - e_min + 1
        gap = np.empty((m, n), dtype=bool)
        for cls in range(m):
            for e in range(e_min, e_max + 1):
                if point == P_INF:
                    cur = LT[e - off, cls]
                    prv = LT[e - 1 - off, cls]
                else:
                    cur = LT[e - off, (cls + e) % m]
                    prv = LT[e - 1 - off, (cls + e - 1) % m]
                gap[cls, e - e_min] = cur == prv
        fwd = np.zeros((m, n + 1), dtype=np.int32)
        bwd = np.zeros((m, n + 1), dtype=np.int32)
        for i in range(n - 1, -1, -1):
            fwd[:, i] = np.where(gap[:, i], fwd[:, i + 1] + 1, 0)
        for i in range(n):
            bwd[:, i + 1] = np.where(gap[:, i], bwd[:, i] + 1, 0)
        best = None  # (t_plus_1, cls, e1)
        # class 0 realizes as F with support only at `point` (F = 0 works)
        for cls in [0] if one_point else range(m):
            mate = (gamma2 - cls) % m if point == P_INF else (gamma2 - dG - cls) % m
            for e1 in range(e1_lo, e1_hi + 1):
                run = min(
                    int(fwd[cls, e1 - e_min]),
                    int(bwd[mate, dG + 1 - e1 - e_min + 1]),
                )
                if run >= 1 and (best is None or run > best[0]):
                    best = (run, cls, e1)
        return best

    # -- floor ---------------------------------------------------------------

    def floor_search(self, G: Divisor, one_point: bool = False):
        """Best (deg E, H, E) with G = H + floor(H), E = H - floor(H).

        Any such H satisfies 2H = G + E, so H is enumerated from the
        parity-compatible splits of deg E; deg E <= g because
        l(floor(H)) = l(H) >= 1 forces deg floor(H) >= deg(H) - g.
        """
        curve = self.curve
        g1, g2 = G.inf, G.origin
        at_origin = one_point and G.inf == 0 and G.origin != 0
        for eps in range(self.curve.genus, -1, -1):
            if one_point:
                splits = [0] if at_origin else [eps]
            else:
                splits = range(eps + 1)
            for e1 in splits:
                e2 = eps - e1
                if (g1 + e1) % 2 or (g2 + e2) % 2:
                    continue
                H = Divisor((g1 + e1) // 2, (g2 + e2) // 2)
                if dim(curve, H) == 0:
                    continue
                if floor_divisor(curve, H) == Divisor(H.inf - e1, H.origin - e2):
                    return eps, H, Divisor(e1, e2)
        return None


def _engine(curve: Curve) -> _Engine:
    eng = getattr(curve, "_bounds_engine", None)
    if eng is None:
        eng = _Engine(curve)
        curve._bounds_engine = eng
    return eng


def _designed_value(curve: Curve, G: Divisor) -> int:
    return G.degree - (2 * curve.genus - 2)


def designed_distance(curve: Curve, G: Divisor) -> BoundResult:
    """Goppa designed distance deg(G) - (2g - 2) as a BoundResult."""
    _require_two_point(G)
    v = _designed_value(curve, G)
    return BoundResult("designed", v, v, curve.name, G)


def af_bound(curve: Curve, G: Divisor, one_point: bool = False) -> BoundResult:
    """Best bound from decompositions G = A + B with a slack divisor Z."""
    _require_two_point(G, one_point)
    zeta, A, Z = _engine(curve).af_search(G, one_point)
    designed = _designed_value(curve, G)
    if zeta == 0:
        witness = {"A": G, "B": Divisor(0, 0), "Z": Divisor(0, 0)}
        return BoundResult("af", designed, designed, curve.name, G, witness=witness)
    B = G - A
    if dim(curve, A) != dim(curve, A - Z) or dim(curve, B) != dim(curve, B + Z):
        raise RuntimeError("internal error: reduced af witness failed re-verification")
    witness = {"A": A, "B": B, "Z": Z}
    return BoundResult("af", designed + zeta, designed, curve.name, G, witness=witness)


def kp_bound(
    curve: Curve, G: Divisor, point: str = P_INF, one_point: bool = False
) -> BoundResult | None:
    """Consecutive-gap bound at P0 or Pinf; None when no run exists."""
    _require_two_point(G, one_point)
    if point not in (P_INF, P_ORIGIN):
        raise ValueError(f"point must be {P_INF!r} or {P_ORIGIN!r}")
    if one_point and G.degree != 0:
        support = P_INF if G.origin == 0 else P_ORIGIN
        if point != support:
            raise ValueError("one_point kp needs the gap point to carry G")
    best = _engine(curve).kp_search(G, point, one_point)
    if best is None:
        return None
    run, cls, e1 = best
    if point == P_INF:
        F = Divisor(0, cls)
    else:
        F = Divisor((-cls) % curve.shift_order, 0)
    alpha = e1 - F.degree
    designed = _designed_value(curve, G)
    witness = {"point": point, "F": F, "alpha": alpha, "t": run - 1}
    name = "kp_Pinf" if point == P_INF else "kp_P0"
    return BoundResult(name, designed + run, designed, curve.name, G, witness=witness)


def floor_bound(
    curve: Curve, G: Divisor, fold: bool = True, one_point: bool = False
) -> BoundResult | None:
    """Best floor decomposition over shift representatives of G.

    With fold=False only G itself is tried.  Returns None when no
    representative can be written as H + floor(H).
    """
    _require_two_point(G, one_point)
    if one_point:
        fold = False  # shifted representatives pick up support at the other point
    eng = _engine(curve)
    designed = _designed_value(curve, G)
    best = None
    ks = _representatives(curve.shift_order) if fold else [0]
    for k in ks:
        got = eng.floor_search(shift_divisor(curve, G, k), one_point)
        if got is not None and (best is None or got[0] > best[1][0]):
            best = (k, got)
    if best is None:
        return None
    k, (eps, H, E) = best
    witness = {"H": H, "E": E}
    return BoundResult(
        "floor", designed + eps, designed, curve.name, G,
        representative_shift=k, witness=witness,
    )


def best_bound(curve: Curve, G: Divisor, one_point: bool = False) -> BoundResult:
    """The strongest of af, kp (both points), floor and designed."""
    _require_two_point(G, one_point)
    if one_point:
        kp_points = [P_INF] if G.origin == 0 else [P_ORIGIN]
    else:
        kp_points = [P_INF, P_ORIGIN]
    candidates = [af_bound(curve, G, one_point)]
    candidates += [kp_bound(curve, G, p, one_point) for p in kp_points]
    candidates += [
        floor_bound(curve, G, one_point=one_point),
        designed_distance(curve, G),
    ]
    best = None
    for cand in candidates:
        if cand is not None and (best is None or cand.value > best.value):
            best = cand
    return best


def verify_witness(curve: Curve, result: BoundResult) -> bool:
    """Re-check a BoundResult's certificate with raw dimension computations."""
    G = shift_divisor(curve, result.divisor, result.representative_shift)
    designed = _designed_value(curve, G)
    w = result.witness or {}
    if result.method == "designed":
        return result.value == designed
    if result.method == "af":
        A, Z = w["A"], w["Z"]
        B = G - A
        return (
            Z.inf >= 0
            and Z.origin >= 0
            and B == w["B"]
            and dim(curve, A) == dim(curve, A - Z)
            and dim(curve, B) == dim(curve, B + Z)
            and result.value == designed + Z.degree
        )
    if result.method == "floor":
        H, E = w["H"], w["E"]
        if E.inf < 0 or E.origin < 0 or dim(curve, H) == 0:
            return False
        rest = G - H
        if H - E != rest:
            return False
        return (
            floor_divisor(curve, H) == rest
            and result.value == designed + E.degree
        )
    if result.method in ("kp_Pinf", "kp_P0"):
        F, alpha, t = w["F"], w["alpha"], w["t"]
        at_inf = result.method == "kp_Pinf"

        def step(base: Divisor, j: int) -> Divisor:
            return Divisor(base.inf + j, base.origin) if at_inf else Divisor(
                base.inf, base.origin + j
            )

        def gap_run(base: Divisor, lo: int, hi: int) -> bool:
            return all(
                dim(curve, step(base, j)) == dim(curve, step(base, j - 1))
                for j in range(lo, hi + 1)
            )

        return (
            t >= 0
            and gap_run(F, alpha, alpha + t)
            and gap_run(G - F, 1 - alpha - t, 1 - alpha)
            and result.value == designed + t + 1
        )
    raise ValueError(f"unknown bound method {result.method!r}")


# -- improvement tables -----------------------------------------------------


def _table_cell(curve: Curve, method: str, r: int, c: int):
    G = Divisor(c, r)
    if G.degree < 2 * curve.genus - 2:
        return None
    # a cell on an axis is a one-point code: the other point joins the
    # evaluation divisor and witnesses may not use it
    one_point = (r == 0) != (c == 0)
    afz = _engine(curve).af_search(G, one_point)[0]
    if method == "af":
        return afz if afz >= 1 else None
    # published floor tables rate each cell's own divisor, so no folding here
    fl = floor_bound(curve, G, fold=False, one_point=one_point)
    eps = fl.improvement if fl is not None else None
    if eps is not None and eps >= 1:
        return eps
    return "*" if afz >= 1 else None


def _table_chunk(args):
    curve_name, method, rs, clo, chi = args
    curve = make_curve(curve_name)
    return [(r, [_table_cell(curve, method, r, c) for c in range(clo, chi + 1)]) for r in rs]


def improvement_table(
    curve: Curve,
    method: str,
    rows: tuple[int, int],
    cols: tuple[int, int],
    threads: int = 1,
) -> dict:
    """Improvements over the designed distance for G = r*P0 + c*Pinf.

    Cells with deg(G) < 2g - 2 are blank (None).  For method="af" a cell
    holds deg(Z) of the best asymmetric-floor witness, blank when 0.
    For method="floor" a cell holds the floor improvement of the cell's
    own divisor (no representative folding), with "*" marking cells
    where only the af bound improves.
    """
    if method not in ("af", "floor"):
        raise ValueError("table method must be 'af' or 'floor'")
    rlo, rhi = rows
    clo, chi = cols
    rs = list(range(rlo, rhi + 1))
    cells: dict[tuple[int, int], object] = {}
    if threads <= 1:
        for r in rs:
            for c in range(clo, chi + 1):
                cells[(r, c)] = _table_cell(curve, method, r, c)
    else:
        chunks = [(curve.name, method, rs[i::threads], clo, chi) for i in range(threads)]
        with ProcessPoolExecutor(max_workers=threads) as pool:
            for part in pool.map(_table_chunk, chunks):
                for r, row_cells in part:
                    for c, val in zip(range(clo, chi + 1), row_cells):
                        cells[(r, c)] = val
    return {
        "curve": curve.name,
        "method": method,
        "rows": rs,
        "cols": list(range(clo, chi + 1)),
        "cells": cells,
    }
