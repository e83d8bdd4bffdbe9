"""Acceptance suite: one test per criterion, each printing a verdict line.

Run with ``pytest -s tests/test_acceptance.py -v`` to see the per-criterion
lines.  All arithmetic is exact; runtime bounds are wall-clock.
"""

import io
import random
import time
from fractions import Fraction

from knotdeform.charvariety import TraceReducer
from knotdeform.cli import factoring_battery, parse_args, run
from knotdeform.deform import (
    character_check,
    deformation_data,
    hensel_u,
    ramified_check,
)
from knotdeform.polynomials import BiPoly, UniPoly
from knotdeform.pseudorep import (
    WordSet,
    equivalence_harness,
    mutate_table,
    random_trace_table,
)
from knotdeform.riley import _riley_data, riley_data, valid_knots
from knotdeform.rings import PadicTruncRing, PrimeField, Rationals
from knotdeform.series import TruncSeries, eval_bipoly, x_series
from knotdeform.words import FreeWord, TwoBridgeKnot

Q = Rationals()
F7 = PrimeField(7)
TREFOIL = TwoBridgeKnot(3, 1)
FIG8 = TwoBridgeKnot(5, 3)


def _report(num, desc, ok):
    print(f"ACCEPTANCE {num:02d} {'PASS' if ok else 'FAIL'}: {desc}")
    assert ok, f"criterion {num} failed: {desc}"


def _cli(argv):
    out = io.StringIO()
    code = run(parse_args(argv), out, io.StringIO())
    return code, out.getvalue()


def _matches_up_to_sign(got, expected):
    return got == expected or got == -expected


def test_criterion_01_trefoil_riley():
    _riley_data.cache_clear()
    t0 = time.perf_counter()
    data = riley_data(TREFOIL)
    elapsed = time.perf_counter() - t0
    expected_phi = BiPoly({(2, 0): 1, (0, 1): 1, (0, 0): -3})
    ok = _matches_up_to_sign(data.Phi, expected_phi)
    ok &= data.Phi2 == UniPoly([1, 1]) or data.Phi2 == UniPoly([-1, -1])
    code, out = _cli(["riley", "3", "1"])
    ok &= code == 0
    ok &= out == "Phi(x,u) = x^2 + u - 3; Phi(2,u) = u + 1; disc = 1\n"
    ok &= elapsed < 0.1
    _report(1, f"trefoil Riley polynomial ({elapsed * 1000:.1f} ms)", ok)


def test_criterion_02_figure_eight_riley():
    _riley_data.cache_clear()
    t0 = time.perf_counter()
    data = riley_data(FIG8)
    elapsed = time.perf_counter() - t0
    expected_phi = BiPoly(
        {(0, 2): 1, (2, 1): 1, (0, 1): -5, (2, 0): -1, (0, 0): 5}
    )
    ok = _matches_up_to_sign(data.Phi, expected_phi)
    ok &= data.Phi2 in (UniPoly([1, -1, 1]), UniPoly([-1, 1, -1]))
    code, out = _cli(["riley", "5", "3"])
    ok &= code == 0 and "u^2 - u + 1" in out
    ok &= elapsed < 0.1
    _report(2, f"figure-eight Riley polynomial ({elapsed * 1000:.1f} ms)", ok)


def test_criterion_03_character_varieties():
    from knotdeform.charvariety import curve_model

    xy = ("x", "y")
    m31 = curve_model(TREFOIL)
    ok = m31.reducible_factor == BiPoly({(0, 1): 1, (2, 0): -1, (0, 0): 2}, xy)
    ok &= m31.irreducible_factor == BiPoly({(0, 1): 1, (0, 0): -1}, xy)
    m53 = curve_model(FIG8)
    ok &= m53.irreducible_factor == BiPoly(
        {(0, 2): 1, (0, 1): -1, (2, 1): -1, (2, 0): 2, (0, 0): -1}, xy
    )
    code31, _ = _cli(["charvar", "3", "1"])
    code53, _ = _cli(["charvar", "5", "3"])
    ok &= code31 == 0 and code53 == 0
    _report(3, "character variety equations for b(3,1) and b(5,3)", ok)


def test_criterion_04_residual_battery_m45():
    _riley_data.cache_clear()
    t0 = time.perf_counter()
    count = 0
    ok = True
    for knot in valid_knots(45):
        data = riley_data(knot)
        if data.Phi2.leading() not in (1, -1) or data.disc % 2 == 0:
            ok = False
            break
        count += 1
    elapsed = time.perf_counter() - t0
    ok &= elapsed < 60.0
    _report(
        4,
        f"unit leading coefficient and odd disc for {count} knots, m <= 45 "
        f"({elapsed:.1f} s)",
        ok,
    )


def test_criterion_05_factoring_brute_force():
    ok, detail = factoring_battery(
        [(3, 1), (5, 3), (5, 1), (7, 3)], [3, 5, 7, 11]
    )
    ok &= detail.startswith("686 pairs")
    _report(5, f"Riley vanishing iff relator factors ({detail})", ok)


def test_criterion_06_hensel_exactness():
    data = deformation_data(TREFOIL, Q(-1), Q, 16)
    expected = [-1, -4, -1] + [0] * 13
    ok = [c.value for c in data.u.coeffs] == expected
    phi = riley_data(TREFOIL).Phi
    residual = eval_bipoly(phi, {"x": x_series(Q, 16), "u": data.u})
    ok &= residual.is_zero() and residual.precision == 16
    code, out = _cli(
        ["deform", "3", "1", "--coeff", "rational", "--beta", "-1",
         "--prec", "16", "--verify"]
    )
    ok &= code == 0 and "u(x) = -1 - 4*z - z^2 + O(z^16)" in out
    _report(6, "trefoil Hensel lift is exactly 3 - x^2 at N = 16", ok)


def test_criterion_07_figure_eight_padic_deformation():
    ring = PadicTruncRing(7, 4)
    data = deformation_data(FIG8, F7(3), ring, 8)
    ok = data.passed
    for check in data.verification:
        if check.name in ("relator", "determinants"):
            ok &= check.precision >= 7
    x2 = TruncSeries.from_list(ring, "z", [4, 4, 1], 8)
    lhs = data.u * 2 + (x2 - 5)
    ok &= (lhs * lhs) == (x2 - 1) * (x2 - 5)
    _report(
        7,
        "figure-eight deformation over Z/7^4 at N = 8 with surd identity",
        ok,
    )


def test_criterion_08_ramified_identity():
    u = hensel_u(TREFOIL, Q(-1), Q, 8)
    checks = {c.name: c for c in ramified_check(u, 12)}
    ok = all(c.passed for c in checks.values())
    ok &= checks["U_C_Uinv_is_A"].precision >= 10
    ok &= checks["U_D_Uinv_is_B"].precision >= 10
    ok &= checks["t_plus_tinv_is_x"].passed
    _report(8, "U C(t) U^-1 = A, U D(t,u) U^-1 = B in O[[sqrt(x-2)]]", ok)


# --- criterion 9: the trace oracle at full scale ---

_INV = (2, 3, 0, 1)


def _word_tree(max_len):
    """BFS tree of freely reduced words: (parent, letter) per node."""
    nodes = [(-1, -1)]
    codes = [()]
    frontier = [0]
    for _ in range(max_len):
        nxt = []
        for idx in frontier:
            w = codes[idx]
            for c in range(4):
                if w and c == _INV[w[-1]]:
                    continue
                nodes.append((idx, c))
                codes.append(w + (c,))
                nxt.append(len(nodes) - 1)
        frontier = nxt
    return nodes, codes


def _codes_to_word(codes):
    return FreeWord(
        [("a" if c in (0, 2) else "b", 1 if c < 2 else -1) for c in codes]
    )


def _random_sl2_tuple(rng, p):
    while True:
        a, b, c, d = (rng.randrange(p) for _ in range(4))
        det = (a * d - b * c) % p
        if det:
            inv = pow(det, -1, p)
            return (a, b * inv % p, c, d * inv % p)


def _random_sl2_fraction(rng):
    while True:
        a, b, c, d = (Fraction(rng.randint(-5, 5)) for _ in range(4))
        det = a * d - b * c
        if det:
            return (a, b / det, c, d / det)


def test_criterion_09_trace_oracle_full():
    from knotdeform import _kernels

    mat2_mul, eval_poly3 = _kernels.mat2_mul, _kernels.eval_poly3
    nodes, codes = _word_tree(8)
    reducer = TraceReducer()
    polys = [reducer.reduce(_codes_to_word(c)) for c in codes]
    items = [tuple(p.terms.items()) for p in polys]

    rng = random.Random(2024)
    mismatches = 0
    checked = 0

    def run_pair(mats, p):
        nonlocal mismatches, checked
        ident = (
            (1, 0, 0, 1) if p else (Fraction(1), Fraction(0), Fraction(0), Fraction(1))
        )
        x = mats[0][0] + mats[0][3]
        z = mats[1][0] + mats[1][3]
        mab = mat2_mul(mats[0], mats[1], p)
        y = mab[0] + mab[3]
        if p:
            x, z, y = x % p, z % p, y % p
        powx, powz, powy = [1], [1], [1]
        for i in range(8):
            powx.append(powx[-1] * x % p if p else powx[-1] * x)
            powz.append(powz[-1] * z % p if p else powz[-1] * z)
            powy.append(powy[-1] * y % p if p else powy[-1] * y)
        powx, powz, powy = tuple(powx), tuple(powz), tuple(powy)
        node_mats = [ident]
        for parent, letter in nodes[1:]:
            node_mats.append(mat2_mul(node_mats[parent], mats[letter], p))
        for idx, mat in enumerate(node_mats):
            tr = (mat[0] + mat[3]) % p if p else mat[0] + mat[3]
            pv = eval_poly3(items[idx], powx, powz, powy, p)
            checked += 1
            if tr != pv:
                mismatches += 1

    for _ in range(200):
        ma = _random_sl2_tuple(rng, 7)
        mb = _random_sl2_tuple(rng, 7)
        ma_inv = (ma[3], -ma[1] % 7, -ma[2] % 7, ma[0])
        mb_inv = (mb[3], -mb[1] % 7, -mb[2] % 7, mb[0])
        run_pair((ma, mb, ma_inv, mb_inv), 7)
    for _ in range(50):
        ma = _random_sl2_fraction(rng)
        mb = _random_sl2_fraction(rng)
        ma_inv = (ma[3], -ma[1], -ma[2], ma[0])
        mb_inv = (mb[3], -mb[1], -mb[2], mb[0])
        run_pair((ma, mb, ma_inv, mb_inv), 0)

    commutator = reducer.reduce("a b a^-1 b^-1")
    from knotdeform.charvariety import TracePolynomial

    delta_plus_2 = TracePolynomial(
        {(2, 0, 0): 1, (0, 2, 0): 1, (0, 0, 2): 1, (1, 1, 1): -1, (0, 0, 0): -2}
    )
    ok = mismatches == 0 and commutator == delta_plus_2
    _report(
        9,
        f"trace oracle: {checked} evaluations over 250 pairs, "
        f"{mismatches} mismatches; commutator identity exact",
        ok,
    )


def test_criterion_10_equivalence_harness_fuzz():
    rng = random.Random(32)
    window = WordSet.ball(2)
    rings = [PrimeField(3), PrimeField(5), F7, PrimeField(11), Q]
    total = 0
    ok = True
    for ring in rings:
        for i in range(110):
            table = random_trace_table(rng, ring, window)
            if i % 2:
                table = mutate_table(rng, table)
            verdict = equivalence_harness(table)
            ok &= verdict.fully_covered and verdict.agree
            if i % 2 == 0:
                ok &= verdict.p_passed and verdict.c_passed
            total += 1
    ok &= total >= 500
    _report(10, f"(P) verdict == (C) verdict on {total} fuzzed tables", ok)


def test_criterion_11_deformation_character_consistency():
    from knotdeform.charvariety import curve_model

    ok = True
    data = deformation_data(TREFOIL, Q(-1), Q, 16)
    check = character_check(TREFOIL, data.A, data.B)
    ok &= check.passed and check.precision >= 15

    ring = PadicTruncRing(7, 4)
    d8 = deformation_data(FIG8, F7(3), ring, 8)
    check8 = character_check(FIG8, d8.A, d8.B)
    ok &= check8.passed and check8.precision >= 7

    # the identity behind it: tr(AB) = x^2 - 2 + u, i.e. y on the curve
    tr_ab = (d8.A * d8.B).trace()
    y_expected = TruncSeries.from_list(ring, "z", [2, 4, 1], 8) + d8.u
    ok &= tr_ab == y_expected
    _report(
        11,
        "deformation characters satisfy Phi(x, y - x^2 + 2) = 0 mod z^(N-1)",
        ok,
    )
