"""KKT systems: residuals, 4x4 assembly, condensation and step recovery.

The uncondensed system over ``(dx_s, dx_d, dy_g, dy_h)`` is::

    [ Q_s    0     Jsg^T  Jsh^T        ] [dx_s]   [r_xs]
    [ 0      Q_d   Jdg^T  Jdh^T        ] [dx_d] = [r_xd]
    [ Jsg    Jdg   -dc I  0            ] [dy_g]   [r_yg]
    [ Jsh    Jdh   0      -D_h^-1-dc I ] [dy_h]   [r_yh]

with diagonal ``Q_s``. Eliminating ``dx_s`` leaves a dense system over
``(dx_d, dy_g, dy_h)`` whose sparse-coupling blocks are ``-J Q_s^-1 J^T``.
"""

import numpy as np

from mdsipm.errors import AssemblyError, CompressionError, DimensionError
from mdsipm.linalg import (
    BackendSelector,
    DenseMatrix,
    DiagonalMatrix,
    LinearAlgebra,
    SequentialLinearAlgebra,
    Vector,
)
from mdsipm.model import EvalBundle, MdsNlpProblem

from .barrier import bound_blocks, jacobian_transpose_times
from .models import (
    BarrierDiagonals,
    CompressedKkt,
    IteratePoint,
    KktResiduals,
    KktSystem4,
)

_reference = SequentialLinearAlgebra(BackendSelector())

_DUAL_NAMES = {
    "x_d": ("z_lo_d", "z_up_d"),
    "x_s": ("z_lo_s", "z_up_s"),
    "s": ("v_lo", "v_up"),
}


def kkt_residuals(
    p: MdsNlpProblem,
    pt: IteratePoint,
    bundle: EvalBundle,
    mu: float,
    diagonals: BarrierDiagonals,
    linalg: LinearAlgebra = _reference,
) -> KktResiduals:
    """Right-hand side of the 4x4 system after eliminating bound duals and slacks.

    ``r_x = -(grad f + J^T y - mu / gap_lo + mu / gap_up)`` per variable block,
    ``r_s = y_h + mu / gap_lo - mu / gap_up`` on the slacks,
    ``r_yg = -(g - g_E)`` and ``r_yh = -(h - s) + D_h^-1 r_s``.
    """
    t_d, t_s = jacobian_transpose_times(bundle, pt.y_g, pt.y_h, linalg)
    grads = {"x_d": bundle.grad_d + t_d, "x_s": bundle.grad_s + t_s, "s": -pt.y_h}
    barrier = {}
    for block in bound_blocks(p, pt):
        gap_lo, gap_up = block.gaps()
        barrier[block.name] = grads[block.name] - mu / gap_lo + mu / gap_up
    r_s = -barrier["s"]
    r_yh = linalg.vec_axpy(1.0, r_s / diagonals.dh, pt.s - bundle.h_val)
    return KktResiduals(
        r_xs=-barrier["x_s"],
        r_xd=-barrier["x_d"],
        r_yg=p.bounds.g_E - bundle.g_val,
        r_yh=r_yh,
        r_s=r_s,
    )


def assemble_kkt4(
    bundle: EvalBundle,
    diagonals: BarrierDiagonals,
    residuals: KktResiduals,
    delta_w: float,
    delta_c: float,
) -> KktSystem4:
    """Collect the 4x4 blocks with barrier diagonals and regularization folded in.

    ``q_ss = qss + D_xs + delta_w`` and ``Qdd = Qdd_base + diag(D_xd) + delta_w I``;
    the constraint blocks receive ``-delta_c`` when the system is formed.

    Raises:
        AssemblyError: If some ``q_ss`` entry is not positive, ``D_h`` is not
            positive, or the regularizations are negative.
    """
    if delta_w < 0 or delta_c < 0:
        msg = f"negative regularization (delta_w={delta_w}, delta_c={delta_c})"
        raise AssemblyError(msg)
    q_ss = bundle.qss + diagonals.d_xs + delta_w
    if np.any(q_ss <= 0):
        msg = f"sparse Hessian diagonal not positive (min {q_ss.min():.3e})"
        raise AssemblyError(msg)
    if np.any(diagonals.dh <= 0):
        msg = "slack barrier diagonal D_h must be positive"
        raise AssemblyError(msg)
    Qdd = bundle.Qdd.copy()
    Qdd.array[np.diag_indices(Qdd.rows)] += diagonals.d_xd + delta_w
    return KktSystem4(
        q_ss=q_ss,
        Qdd=Qdd,
        Jsg=bundle.Jsg,
        Jsh=bundle.Jsh,
        Jdg=bundle.Jdg,
        Jdh=bundle.Jdh,
        dh=diagonals.dh,
        r_xs=residuals.r_xs,
        r_xd=residuals.r_xd,
        r_yg=residuals.r_yg,
        r_yh=residuals.r_yh,
        delta_w=delta_w,
        delta_c=delta_c,
    )


def compress(k4: KktSystem4, linalg: LinearAlgebra = _reference) -> CompressedKkt:
    """Eliminate ``dx_s`` and return the dense condensed system.

    Blocks of the result (full symmetric storage)::

        (1,1) Qdd            (1,2) Jdg^T                    (1,3) Jdh^T
        (2,2) -Jsg Q_s^-1 Jsg^T - dc I   (2,3) -Jsg Q_s^-1 Jsh^T
        (3,3) -Jsh Q_s^-1 Jsh^T - D_h^-1 - dc I

    with right-hand side ``(r_xd, r_yg - Jsg Q_s^-1 r_xs, r_yh - Jsh Q_s^-1 r_xs)``.
    Every ``Q_s^-1`` sandwich is one `fused_add_sdst` pass.

    Raises:
        CompressionError: If some ``q_ss`` entry is not positive.
    """
    if np.any(k4.q_ss <= 0):
        msg = "cannot eliminate the sparse block: q_ss has nonpositive entries"
        raise CompressionError(msg)
    n_d, m_E, m_I = k4.n_d, k4.m_E, k4.m_I
    g0, h0 = n_d, n_d + m_E
    dim = n_d + m_E + m_I

    M = DenseMatrix.zeros(dim, dim)
    Ma = M.array
    Ma[:n_d, :n_d] = k4.Qdd.array
    Ma[g0:h0, :n_d] = k4.Jdg.array
    Ma[:n_d, g0:h0] = k4.Jdg.array.T
    Ma[h0:, :n_d] = k4.Jdh.array
    Ma[:n_d, h0:] = k4.Jdh.array.T

    q_inv = DiagonalMatrix(1.0 / k4.q_ss)
    linalg.fused_add_sdst(M, k4.Jsg, q_inv, k4.Jsg, -1.0, row_offset=g0, col_offset=g0)
    linalg.fused_add_sdst(M, k4.Jsg, q_inv, k4.Jsh, -1.0, row_offset=g0, col_offset=h0)
    linalg.fused_add_sdst(M, k4.Jsh, q_inv, k4.Jsh, -1.0, row_offset=h0, col_offset=h0)
    Ma[h0:, g0:h0] = Ma[g0:h0, h0:].T

    rows = np.arange(dim)
    Ma[rows[g0:], rows[g0:]] -= k4.delta_c
    Ma[rows[h0:], rows[h0:]] -= 1.0 / k4.dh

    scaled = q_inv.d * k4.r_xs
    rhs_g = linalg.triplet_times_vec(1.0, k4.r_yg, -1.0, k4.Jsg, scaled)
    rhs_h = linalg.triplet_times_vec(1.0, k4.r_yh, -1.0, k4.Jsh, scaled)
    rhs = np.concatenate((k4.r_xd, rhs_g, rhs_h))
    return CompressedKkt(M=M, rhs=rhs, n_d=n_d, m_E=m_E, m_I=m_I)


def recover_sparse_step(
    k4: KktSystem4, dy_g: Vector, dy_h: Vector, linalg: LinearAlgebra = _reference
) -> Vector:
    """Back-substitute ``dx_s = Q_s^-1 (r_xs - Jsg^T dy_g - Jsh^T dy_h)``.

    Raises:
        DimensionError: If ``dy_g`` or ``dy_h`` has the wrong length.
    """
    if dy_g.shape != (k4.m_E,) or dy_h.shape != (k4.m_I,):
        msg = f"multiplier steps of length {dy_g.size}, {dy_h.size} do not match"
        raise DimensionError(msg)
    rhs = linalg.triplet_times_vec(1.0, k4.r_xs, -1.0, k4.Jsg, dy_g, transpose=True)
    rhs = linalg.triplet_times_vec(1.0, rhs, -1.0, k4.Jsh, dy_h, transpose=True)
    return rhs / k4.q_ss


def complete_direction(
    p: MdsNlpProblem,
    pt: IteratePoint,
    mu: float,
    steps: tuple[Vector, Vector, Vector, Vector],
    residuals: KktResiduals,
    diagonals: BarrierDiagonals,
) -> IteratePoint:
    """Expand ``(dx_s, dx_d, dy_g, dy_h)`` into a full primal-dual direction.

    ``ds = D_h^-1 (r_s + dy_h)``; for each finite bound
    ``dz_lo = mu / gap - z - (z / gap) dx`` and
    ``dz_up = mu / gap - z + (z / gap) dx``. Duals of infinite bounds stay put.
    """
    dx_s, dx_d, dy_g, dy_h = steps
    ds = (residuals.r_s + dy_h) / diagonals.dh
    moves = {"x_d": dx_d, "x_s": dx_s, "s": ds}
    duals: dict[str, Vector] = {}
    for block in bound_blocks(p, pt):
        gap_lo, gap_up = block.gaps()
        dx = moves[block.name]
        lo_name, up_name = _DUAL_NAMES[block.name]
        dz_lo = mu / gap_lo - block.z_lo - (block.z_lo / gap_lo) * dx
        dz_up = mu / gap_up - block.z_up + (block.z_up / gap_up) * dx
        duals[lo_name] = np.where(block.has_lo, dz_lo, 0.0)
        duals[up_name] = np.where(block.has_up, dz_up, 0.0)
    return IteratePoint(x_d=dx_d, x_s=dx_s, s=ds, y_g=dy_g, y_h=dy_h, **duals)


def full_kkt_matrix(k4: KktSystem4) -> DenseMatrix:
    """Densify the 4x4 system in unknown order ``(dx_s, dx_d, dy_g, dy_h)``."""
    n_s, n_d, m_E, m_I = k4.n_s, k4.n_d, k4.m_E, k4.m_I
    d0, g0, h0 = n_s, n_s + n_d, n_s + n_d + m_E
    dim = h0 + m_I
    K = np.zeros((dim, dim))
    K[np.arange(n_s), np.arange(n_s)] = k4.q_ss
    K[d0:g0, d0:g0] = k4.Qdd.array
    blocks = (
        (g0, 0, k4.Jsg.to_dense().array),
        (h0, 0, k4.Jsh.to_dense().array),
        (g0, d0, k4.Jdg.array),
        (h0, d0, k4.Jdh.array),
    )
    for row, col, block in blocks:
        K[row : row + block.shape[0], col : col + block.shape[1]] = block
        K[col : col + block.shape[1], row : row + block.shape[0]] = block.T
    diag = np.arange(g0, dim)
    K[diag, diag] -= k4.delta_c
    K[np.arange(h0, dim), np.arange(h0, dim)] -= 1.0 / k4.dh
    return DenseMatrix.from_array(K)


def full_kkt_rhs(k4: KktSystem4) -> Vector:
    """Right-hand side of the 4x4 system in unknown order."""
    return np.concatenate((k4.r_xs, k4.r_xd, k4.r_yg, k4.r_yh))
