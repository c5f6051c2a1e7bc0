"""Golden vectors from a worked decoding instance over F_27 (x^3 + 2x + 1) and a
small product example over F_8 (x^3 + x + 1).

Elements are written as digit lists, constant term first.
"""
from .field import GF
from .skew import SkewPoly

F27 = GF(3, 3, [1, 2, 0, 1])


def e(*digits):
    return F27.from_digits(list(digits) + [0] * (3 - len(digits)))


A = e(0, 1)
PARTITION = (3, 3)
K = 3
S = 2
CLASSES = (1, A)
BETA = ((e(1), e(0, 1), e(0, 0, 1)), (e(1), e(0, 1), e(0, 0, 1)))

MSG = (SkewPoly(F27, [e(0, 0, 2)]),
       SkewPoly(F27, [e(0, 0, 1), e(0, 1, 2), e(1)]))

CODEWORD = [
    [e(0, 0, 2), e(1, 2), e(0, 1, 2), e(0, 0, 2), e(1, 2), e(0, 1, 2)],
    [e(1, 1), e(1, 0, 2), e(1, 0, 1), e(1, 1), e(2, 1, 1), 0],
]
ERROR = [
    [0, e(1, 0, 2), e(1, 0, 2), 0, 0, e(2)],
    [0, e(1, 1, 1), e(1, 1, 1), 0, 0, e(2, 0, 2)],
]
RECEIVED = [
    [e(0, 0, 2), e(2, 2, 2), e(1, 1, 1), e(0, 0, 2), e(1, 2), e(2, 1, 2)],
    [e(1, 1), e(2, 1), e(2, 1, 2), e(1, 1), e(2, 1, 1), e(2, 0, 2)],
]
KERNEL_H = (e(0, 1), e(1, 2, 2), e(2, 1, 1), e(1, 1), e(0, 1, 1), 0)
ERROR_PARTITION = (1, 1)

Q1 = (SkewPoly(F27, [e(2, 1, 1), e(2, 1, 2), e(0, 2, 1)]),
      SkewPoly(F27, [e(1, 2, 2), e(1)]),
      SkewPoly(F27, [e(0, 1, 2)]))
Q2 = (SkewPoly(F27, [e(2), e(0, 0, 1), e(1, 2, 2), e(2)]),
      SkewPoly(F27, [e(0, 2), e(2, 0, 2)]),
      SkewPoly(F27, [e(1, 1, 2), e(1)]))

ROOT_MATRIX = [
    [e(1, 2, 2), e(0, 1, 2), 0, 0, 0, 0],
    [e(0, 2), e(1, 1, 2), 0, 0, 0, 0],
    [e(1), 0, e(2, 0, 2), e(0, 2, 2), 0, 0],
    [e(1, 1, 2), e(1), e(2, 2), e(1, 2, 2), 0, 0],
    [0, 0, e(1), 0, e(1, 1, 2), e(1, 0, 2)],
    [0, 0, e(1, 2, 2), e(1), e(1, 2), e(2, 0, 2)],
    [0, 0, 0, 0, e(1), 0],
    [0, 0, 0, 0, e(2, 0, 2), e(1)],
]
Q0 = [e(2, 1, 1), e(2), e(2, 2, 2), e(1, 2, 1), e(2, 0, 1), e(1, 1, 2), 0, e(2)]
ROOT_VECTOR = [e(0, 0, 2), e(0, 0, 1), 0, e(0, 2, 2), 0, e(1)]

F8 = GF(2, 3, [1, 1, 0, 1])
# f = alpha x^2, g = alpha^2 x; f g = alpha^2 x^3 and g f = (alpha^2 + alpha) x^3
PRODUCT_F = SkewPoly(F8, [0, 0, F8.from_digits([0, 1, 0])])
PRODUCT_G = SkewPoly(F8, [0, F8.from_digits([0, 0, 1])])
PRODUCT_FG = SkewPoly(F8, [0, 0, 0, F8.from_digits([0, 0, 1])])
PRODUCT_GF = SkewPoly(F8, [0, 0, 0, F8.from_digits([0, 1, 1])])


def worked_code():
    from .codes import IlrsCode
    return IlrsCode.build(F27, PARTITION, K, S, a=CLASSES, beta=[b for blk in BETA for b in blk])


def run_checks() -> list[tuple[str, bool]]:
    """Evaluate every golden vector; returns (name, passed) pairs."""
    import numpy as np
    from .codes import encode_ilrs
    from .decoders import interp_decode_ilrs, lo_decode_ilrs, lo_matrix_ilrs
    from .interp import (InterpInstance, in_left_span, interpolate, root_find, root_matrix,
                         wdeg)

    code = worked_code()
    R = np.array(RECEIVED)
    out = [("skew product f*g", PRODUCT_F * PRODUCT_G == PRODUCT_FG),
           ("skew product g*f", PRODUCT_G * PRODUCT_F == PRODUCT_GF),
           ("codeword", np.array_equal(encode_ilrs(code, MSG).entries, np.array(CODEWORD))),
           ("received = codeword + error",
            np.array_equal(F27.vadd(np.array(CODEWORD), np.array(ERROR)), R))]
    L = lo_matrix_ilrs(code, R, 2)
    out.append(("LO matrix shape 5x6", L.shape == (5, 6)))
    h = np.array(KERNEL_H)
    out.append(("LO kernel vector", all(F27.sum(F27.vmul(row, h)) == 0 for row in L)))
    lo = lo_decode_ilrs(code, R)
    out.append(("LO decode", lo.kind == "unique" and lo.contains(MSG)
                and tuple(lo.diagnostics["error_ranks"]) == ERROR_PARTITION))
    blocks = [R[:, :3], R[:, 3:]]
    for backend in ("dense", "fast"):
        inst = InterpInstance.for_ilrs(F27, BETA, blocks, CLASSES, 4, K)
        basis = interpolate(inst, backend)
        good = (basis.s_prime == 2 and all(wdeg(Q, inst.w)[0] < 4 for Q in basis.polys)
                and all(in_left_span(Q, basis.polys, inst.w) for Q in (Q1, Q2)))
        out.append((f"interpolation ({backend})", good))
        roots = root_find(F27, [Q1, Q2], K, backend)
        out.append((f"root finding ({backend})", roots.dim == 0
                    and list(roots.particular) == ROOT_VECTOR))
    QR, q0 = root_matrix(F27, [Q1, Q2], K)
    out.append(("root-finding matrix", np.array_equal(QR, np.array(ROOT_MATRIX))
                and np.array_equal(q0, np.array(Q0))))
    un = interp_decode_ilrs(code, R, "unique")
    out.append(("interpolation decode", un.kind == "unique" and un.contains(MSG)))
    return out
