"""Explicit universal deformations of residual Riley representations.

Starting from a root beta of Phi(2, u) in the residue field, the Hensel
lift u(x) in O[[x-2]] and the unit v(x) = sqrt(1 + (x^2-4)/u(x)) produce
the deformation matrices

    A(x) = [[x/2, 1], [(x^2-4)/4, x/2]]
    B(x) = [[x/2, (1-v)^2 u / (x^2-4)], [(1+v)^2 u / 4, x/2]]

which reduce to C(1), D(1, beta) at x = 2 and satisfy the knot relator
wa = bw identically.  The off-diagonal of B costs one coefficient of
z-precision to the exact division by x^2 - 4 = z(z + 4); every check
records the precision at which it was verified.

ramified_check works in the quadratic extension O[[s]], s^2 = x - 2,
where t with t + 1/t = x exists, and confirms that conjugation by the
explicit matrix U(x) carries C(t), D(t, u) to A, B.  specialize
substitutes a ring value for x whose difference from 2 is nilpotent,
yielding honest representations over O itself.
"""

from dataclasses import dataclass

from .errors import (
    BadCharacteristic,
    NonUnitU,
    NotInMaximalIdeal,
    RingMismatch,
)
from .riley import Representation, c_matrix, d_matrix, riley_data
from .rings import make_ring, residue_field, to_residue
from .series import (
    TruncSeries,
    divide_by_var_power,
    eval_bipoly,
    newton_root,
    series_invert,
    series_sqrt,
    shift_up,
    to_ramified,
    x_series,
)
from .words import SL2Matrix, TwoBridgeKnot, evaluate_word, schubert_word


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    precision: int
    detail: str = ""

    def to_json(self):
        obj = {
            "check": self.name,
            "pass": self.passed,
            "precision": str(self.precision),
        }
        if self.detail:
            obj["detail"] = self.detail
        return obj


def _first_mismatch(m1, m2):
    """Entry and coefficient index where two series matrices first differ."""
    for i in range(2):
        for j in range(2):
            a, b = m1.entries[i][j], m2.entries[i][j]
            n = min(a.precision, b.precision)
            for k in range(n):
                if a.coeffs[k] != b.coeffs[k]:
                    return f"entry ({i},{j}), coefficient {k}"
    return ""


def _normalize_beta(beta, coeff_ring):
    k = residue_field(coeff_ring)
    beta_res = to_residue(beta) if beta.ring == coeff_ring else beta
    if beta_res.ring != k:
        raise RingMismatch(f"beta lives in {beta_res.ring}, expected {k}")
    return beta_res


def hensel_u(knot, beta, coeff_ring, N):
    """The unique unit series u with Phi(x, u) = 0 lifting beta."""
    data = riley_data(knot)
    beta_res = _normalize_beta(beta, coeff_ring)
    if beta_res.is_zero():
        raise NonUnitU("beta = 0 gives a reducible residual; rejected")
    p = residue_field(coeff_ring).char
    if p and data.disc % p == 0:
        raise BadCharacteristic(
            f"residue characteristic {p} divides disc = {data.disc}"
        )
    u = newton_root(data.Phi, beta_res, coeff_ring, N)
    if not u.constant_term().is_unit():
        raise NonUnitU("lifted series has non-unit constant term")
    return u


def deformation_matrices(u):
    """(v, A, B) from the lifted series u; B's off-diagonal loses one digit."""
    ring, N = u.ring, u.precision
    half = ring.from_int(2).inverse()
    quarter = half * half
    one = TruncSeries.constant(ring, "z", 1, N)
    w = TruncSeries.from_list(ring, "z", [0, 4, 1], N)  # x^2 - 4 = z(z+4)
    v = series_sqrt(one + w * series_invert(u))
    x_half = TruncSeries.from_list(ring, "z", [1, half], N)

    a_mat = SL2Matrix(((x_half, one), (w * quarter, x_half)))

    num = (one - v) * (one - v) * u
    z_plus_4 = TruncSeries.from_list(ring, "z", [4, 1], N - 1)
    b12 = divide_by_var_power(num, 1) * series_invert(z_plus_4)
    b21 = (one + v) * (one + v) * u * quarter
    b_mat = SL2Matrix(((x_half, b12), (b21, x_half)))
    return v, a_mat, b_mat


def _matrix_min_precision(*mats):
    return min(
        entry.precision for m in mats for row in m.entries for entry in row
    )


def verify_deformation(knot, a_mat, b_mat, beta):
    """The four deformation checks, each reported with its precision."""
    ring = a_mat.entries[0][0].ring
    k = residue_field(ring)
    beta_res = beta if beta.ring == k else to_residue(beta)
    checks = []

    word = schubert_word(knot)
    w_img = evaluate_word(word, a_mat, b_mat)
    lhs = w_img * a_mat
    rhs = b_mat * w_img
    prec = _matrix_min_precision(lhs, rhs)
    relator_ok = lhs == rhs
    checks.append(
        CheckResult(
            "relator",
            relator_ok,
            prec,
            "" if relator_ok else _first_mismatch(lhs, rhs),
        )
    )

    det_a = a_mat.det()
    det_b = b_mat.det()
    checks.append(
        CheckResult(
            "determinants",
            det_a == det_a.one_like() and det_b == det_b.one_like(),
            min(det_a.precision, det_b.precision),
        )
    )

    res_ok = True
    expected_a = c_matrix(k.one())
    expected_b = d_matrix(k.one(), beta_res)
    for mat, expect in ((a_mat, expected_a), (b_mat, expected_b)):
        for i in range(2):
            for j in range(2):
                got = to_residue(mat.entries[i][j].constant_term())
                if got != expect.entries[i][j]:
                    res_ok = False
    checks.append(CheckResult("residual_reduction", res_ok, 1))

    tr = a_mat.trace()
    x_exact = x_series(ring, tr.precision)
    checks.append(
        CheckResult("trace_of_a_is_x", tr.coeffs == x_exact.coeffs, tr.precision)
    )
    return checks


def character_series(a_mat, b_mat):
    """(tr A, tr AB) as series: the character point of the deformation."""
    return a_mat.trace(), (a_mat * b_mat).trace()


def character_check(knot, a_mat, b_mat):
    """The deformation's character lies on the irreducible curve factor."""
    from .charvariety import curve_model

    tr_a, tr_ab = character_series(a_mat, b_mat)
    model = curve_model(knot)
    val = eval_bipoly(model.irreducible_factor, {"x": tr_a, "y": tr_ab})
    return CheckResult("character_on_curve", val.is_zero(), val.precision)


def ramified_check(u, n_s):
    """Verify U C(t) U^-1 = A and U D(t, u) U^-1 = B in O[[s]], s^2 = x - 2.

    t = (x + s sqrt(s^2+4))/2 satisfies t + 1/t = x and t = 1 + s mod s^2;
    sqrt(s^2+4) is normalized to constant term 2.
    """
    ring = u.ring
    half = ring.from_int(2).inverse()
    quarter = half * half
    prec = min(n_s, 2 * u.precision)

    u_s = to_ramified(u).truncate(prec)
    one = TruncSeries.constant(ring, "s", 1, prec)
    x_s = TruncSeries.from_list(ring, "s", [2, 0, 1], prec)

    # sqrt(x^2 - 4) = s * sqrt(s^2 + 4), sqrt(s^2 + 4) = 2 sqrt(1 + s^2/4)
    root4 = series_sqrt(
        TruncSeries.from_list(ring, "s", [1, 0, quarter], prec)
    ) * ring.from_int(2)
    sqrt_x2m4 = shift_up(root4, 1).truncate(prec)

    t = (x_s + sqrt_x2m4) * half
    t_inv = series_invert(t)
    t_res_ok = t.coeffs[0] == ring.one() and (
        prec < 2 or t.coeffs[1] == ring.one()
    )
    checks = [
        CheckResult("t_plus_tinv_is_x", t + t_inv == x_s, prec),
        CheckResult("t_residual", t_res_ok, min(prec, 2)),
    ]

    v, a_mat, b_mat = deformation_matrices(u)
    v_s = to_ramified(v).truncate(prec)
    sqrt_v = series_sqrt(v_s)
    inv_sqrt_v = series_invert(sqrt_v)

    u11 = inv_sqrt_v
    u12 = divide_by_var_power((one - v_s) * inv_sqrt_v, 1) * series_invert(root4)
    u21 = sqrt_x2m4 * inv_sqrt_v * half
    u22 = (one + v_s) * inv_sqrt_v * half
    u_mat = SL2Matrix(((u11, u12), (u21, u22)))
    checks.append(
        CheckResult("det_U", u_mat.det() == u_mat.det().one_like(),
                    u_mat.det().precision)
    )
    consts = [u_mat.entries[i][j].constant_term() for i in range(2) for j in range(2)]
    checks.append(
        CheckResult(
            "U_at_s0_identity",
            consts[0] == ring.one()
            and consts[3] == ring.one()
            and consts[1].is_zero()
            and consts[2].is_zero(),
            1,
        )
    )

    zero = TruncSeries.constant(ring, "s", 0, prec)
    c_t = SL2Matrix(((t, one), (zero, t_inv)))
    d_t = SL2Matrix(((t, zero), (u_s, t_inv)))
    u_inv = u_mat.inverse()

    def ramify_matrix(m):
        return SL2Matrix(
            tuple(
                tuple(to_ramified(e).truncate(prec) for e in row)
                for row in m.entries
            ),
            check=False,
        )

    a_s = ramify_matrix(a_mat)
    b_s = ramify_matrix(b_mat)
    conj_a = u_mat * c_t * u_inv
    conj_b = u_mat * d_t * u_inv
    checks.append(
        CheckResult("U_C_Uinv_is_A", conj_a == a_s,
                    _matrix_min_precision(conj_a, a_s))
    )
    checks.append(
        CheckResult("U_D_Uinv_is_B", conj_b == b_s,
                    _matrix_min_precision(conj_b, b_s))
    )
    return checks


def specialize(a_mat, b_mat, x0, knot=None):
    """Substitute x = x0 with x0 - 2 nilpotent; returns a representation.

    The series tails must genuinely vanish: (x0 - 2)^P = 0 for the joint
    entry precision P, otherwise the substitution would depend on unknown
    coefficients.  When the knot is supplied the relator is verified in
    the target ring.
    """
    ring = x0.ring
    sample = a_mat.entries[0][0]
    if sample.ring != ring:
        raise RingMismatch(f"{sample.ring} series, {ring} point")
    c = x0 - ring.from_int(2)
    in_max = (
        ring.in_maximal_ideal(c)
        if hasattr(ring, "in_maximal_ideal")
        else c.is_zero()
    )
    if not in_max:
        raise NotInMaximalIdeal(f"x0 - 2 = {c} is not in the maximal ideal")
    prec = _matrix_min_precision(a_mat, b_mat)
    if not (c**prec).is_zero():
        raise NotInMaximalIdeal(
            f"(x0 - 2)^{prec} != 0: series precision too low to specialize"
        )

    def eval_series(f):
        acc = ring.zero()
        power = ring.one()
        for coeff in f.coeffs:
            acc = acc + coeff * power
            power = power * c
        return acc

    def eval_matrix(m):
        return SL2Matrix(
            tuple(tuple(eval_series(e) for e in row) for row in m.entries)
        )

    image_a = eval_matrix(a_mat)
    image_b = eval_matrix(b_mat)
    if knot is not None:
        w = evaluate_word(schubert_word(knot), image_a, image_b)
        if w * image_a != image_b * w:
            raise NotInMaximalIdeal("specialized matrices fail the relator")
    return Representation(ring, image_a, image_b)


def specialization_point(ring, n):
    """x0 = (1 + pi)^n + (1 + pi)^-n for the ring's uniformizer pi."""
    if not hasattr(ring, "uniformizer"):
        raise NotInMaximalIdeal(f"{ring} has no uniformizer to specialize along")
    g = ring.one() + ring.uniformizer()
    return g**n + g ** (-n)


@dataclass
class DeformationData:
    knot: TwoBridgeKnot
    coeff_ring: object
    beta: object  # residue-field element
    precision: int
    u: TruncSeries
    v: TruncSeries
    A: SL2Matrix
    B: SL2Matrix
    verification: list

    @property
    def passed(self):
        return all(c.passed for c in self.verification)

    def to_json(self):
        return {
            "knot": {"m": str(self.knot.m), "n": str(self.knot.n)},
            "coeff": self.coeff_ring.spec_string(),
            "beta": str(self.beta),
            "precision": str(self.precision),
            "u": self.u.to_json(),
            "v": self.v.to_json(),
            "A": [[e.to_json() for e in row] for row in self.A.entries],
            "B": [[e.to_json() for e in row] for row in self.B.entries],
            "verification": [c.to_json() for c in self.verification],
        }

    @classmethod
    def from_json(cls, obj):
        ring = make_ring(obj["coeff"])
        knot = TwoBridgeKnot(int(obj["knot"]["m"]), int(obj["knot"]["n"]))
        k = residue_field(ring)
        beta = k.parse_value(obj["beta"])
        u = TruncSeries.from_json(obj["u"])
        v = TruncSeries.from_json(obj["v"])
        a_mat = SL2Matrix(
            tuple(tuple(TruncSeries.from_json(e) for e in row) for row in obj["A"])
        )
        b_mat = SL2Matrix(
            tuple(tuple(TruncSeries.from_json(e) for e in row) for row in obj["B"])
        )
        verification = verify_deformation(knot, a_mat, b_mat, beta)
        return cls(
            knot, ring, beta, int(obj["precision"]), u, v, a_mat, b_mat,
            verification,
        )


def deformation_data(knot, beta, coeff_ring, N):
    """Full pipeline: Hensel lift, matrices, verification report."""
    beta_res = _normalize_beta(beta, coeff_ring)
    u = hensel_u(knot, beta_res, coeff_ring, N)
    v, a_mat, b_mat = deformation_matrices(u)
    verification = verify_deformation(knot, a_mat, b_mat, beta_res)
    return DeformationData(
        knot, coeff_ring, beta_res, N, u, v, a_mat, b_mat, verification
    )
