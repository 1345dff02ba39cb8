"""Per-node dynamic cutoffs from soft neighbor ranks, with analytic derivatives.

For a node v with neighbors at distances r_u (u in N_v, all within the hard
cutoff h), each neighbor receives a soft rank

    R_u = sum_{t != u} S(alpha (r_u - r_t)) p(r_t / h),

a Gaussian weight omega(R_u) centered on the target neighbor count mu, and
the node's cutoff is the stabilized weighted average

    c_v = (sum_u omega(R_u) p(r_u/h) r_u + h eps) / (sum_u omega(R_u) p(r_u/h) + eps).

Because every quantity depends on atom positions only through the distances
r_u, first and second derivatives are computed in distance space (dc/dr_k and
d2c/dr_k dr_l per node) and mapped to Cartesian atom coordinates with the
chain rule.  This covers neighbors, the center atom, and atoms contributing
several periodic-image edges at once.  Neighbors sitting exactly at r = h
carry exactly zero gradient and Hessian: the envelope and its first two
derivatives vanish there.

The module-level functions are the readable reference implementation; the
MD hot path uses the numerically equivalent compiled kernels in
``dyncutoff._kernels``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ParamMismatch
from .smoothfn import (
    EnvelopeParams,
    WeightParams,
    envelope,
    envelope_d1,
    envelope_d2,
    gauss_weight,
    gauss_weight_d1,
    gauss_weight_d2,
    sigmoid,
    sigmoid_d1,
    sigmoid_d2,
)

__all__ = [
    "DynCutParams",
    "CutoffResult",
    "CutoffDerivatives",
    "soft_ranks",
    "dynamic_cutoff",
    "cutoff_gradient",
    "cutoff_hessian",
    "cutoff_hessian_blocks",
    "naive_max_neighbor_cutoff",
    "rank_parity",
]


@dataclass(frozen=True)
class DynCutParams:
    """Parameters of the dynamic cutoff.

    h is the hard cutoff the graph was built with; alpha the sigmoid
    sharpness; epsilon the stabilizer that pushes empty neighborhoods
    toward c = h.
    """

    h: float
    alpha: float = 10.0
    envelope: EnvelopeParams = field(default_factory=EnvelopeParams)
    weight: WeightParams = field(default_factory=WeightParams)
    epsilon: float = 1e-4

    def __post_init__(self):
        if not self.h > 0:
            raise ValueError("h must be positive")
        if not self.alpha > 0:
            raise ValueError("alpha must be positive")
        if not self.epsilon > 0:
            raise ValueError("epsilon must be positive")


@dataclass
class CutoffResult:
    """Per-node cutoffs plus per-edge ranks and weights.

    cutoffs      : (N,) c_v in angstrom, 0 < c_v <= h (h for empty nodes)
    ranks        : (E,) soft rank of each edge's source at its destination
    weights      : (E,) omega(R_u) * p(r_uv / h) per edge
    kept         : (E,) bool, True where r_uv <= c of the destination
    """

    cutoffs: np.ndarray
    ranks: np.ndarray
    weights: np.ndarray
    kept: np.ndarray

    @property
    def pruned_edges(self):
        """Indices of edges that survive pruning (r_uv <= c of dst)."""
        return np.nonzero(self.kept)[0]

    @property
    def n_kept(self):
        return int(self.kept.sum())


@dataclass
class CutoffDerivatives:
    """Analytic derivatives of every c_v.

    grad maps (node v, atom t) -> shape-(3,) d c_v / d x_t; hess maps the
    same keys to 3x3 same-atom Hessian blocks.  Entries exist only for
    t in N_v union {v}.
    """

    grad: dict
    hess: dict


def _check_params(graph, params):
    if graph.h != params.h:
        raise ParamMismatch(
            f"graph built with h={graph.h} but params have h={params.h}"
        )


def _pair_tables(r, params):
    """Sigmoid tables over neighbor distance differences, diagonals zeroed."""
    z = params.alpha * (r[:, None] - r[None, :])
    s = np.asarray(sigmoid(z))
    s1 = np.asarray(sigmoid_d1(z))
    s2 = np.asarray(sigmoid_d2(z))
    for m in (s, s1, s2):
        np.fill_diagonal(m, 0.0)
    return s, s1, s2


def _soft_ranks_from_distances(r, params):
    if r.size == 0:
        return np.zeros(0)
    pe = np.asarray(envelope(r / params.h, params.envelope))
    s, _, _ = _pair_tables(r, params)
    return (s * pe).sum(axis=1)


def _node_cutoff(r, params, order=0):
    """Cutoff of one node plus distance-space derivatives.

    Returns (c, g, H) where g[k] = dc/dr_k and H[k, l] = d2c/dr_k dr_l;
    g and H are None below the requested ``order``.
    """
    h = params.h
    eps = params.epsilon
    alpha = params.alpha
    m = r.size
    if m == 0:
        g = np.zeros(0) if order >= 1 else None
        hess = np.zeros((0, 0)) if order >= 2 else None
        return h, g, hess

    x = r / h
    pe = np.asarray(envelope(x, params.envelope))
    s, s1, s2 = _pair_tables(r, params)
    ranks = (s * pe).sum(axis=1)
    w = np.asarray(gauss_weight(ranks, params.weight))
    fv = pe * r
    a_sum = (w * fv).sum()
    b_sum = (w * pe).sum()
    denom = b_sum + eps
    a_til = a_sum + h * eps
    c = a_til / denom
    if order == 0:
        return c, None, None

    pdx = np.asarray(envelope_d1(x, params.envelope))
    w1 = np.asarray(gauss_weight_d1(ranks, params.weight))
    # D[u, k] = dR_u / dr_k
    d_mat = -alpha * s1 * pe[None, :] + s * pdx[None, :] / h
    np.fill_diagonal(d_mat, alpha * (s1 * pe).sum(axis=1))
    fp = pe + r * pdx / h
    gp = pdx / h
    a_r = (d_mat * (w1 * fv)[:, None]).sum(axis=0) + w * fp
    b_r = (d_mat * (w1 * pe)[:, None]).sum(axis=0) + w * gp
    g = a_r / denom - a_til * b_r / denom**2
    if order == 1:
        return c, g, None

    pddx = np.asarray(envelope_d2(x, params.envelope))
    w2 = np.asarray(gauss_weight_d2(ranks, params.weight))
    # Mixed and same-distance second derivatives of the ranks:
    #   M[u, t] = d2R_u / dr_u dr_t       (t != u)
    #   Q[u, k] = d2R_u / dr_k^2          (k != u)
    #   e_diag[u] = d2R_u / dr_u^2
    m_mat = -(alpha**2) * s2 * pe[None, :] + alpha * s1 * pdx[None, :] / h
    np.fill_diagonal(m_mat, 0.0)
    q_mat = (
        alpha**2 * s2 * pe[None, :]
        - 2.0 * alpha * s1 * pdx[None, :] / h
        + s * pddx[None, :] / h**2
    )
    np.fill_diagonal(q_mat, 0.0)
    e_diag = alpha**2 * (s2 * pe).sum(axis=1)
    fpp = pddx * r / h**2 + 2.0 * pdx / h
    gpp = pddx / h**2

    def second(xv, xp, xpp):
        w1x = w1 * xv
        core = np.einsum("u,uk,ul->kl", w2 * xv, d_mat, d_mat, optimize=False)
        t1 = w1x[:, None] * m_mat
        t1 = t1 + t1.T
        t1[np.diag_indices(m)] = (w1x[:, None] * q_mat).sum(axis=0) + w1x * e_diag
        v_mat = (w1 * xp)[:, None] * d_mat
        out = core + t1 + v_mat + v_mat.T
        out[np.diag_indices(m)] += w * xpp
        return out

    a_rr = second(fv, fp, fpp)
    b_rr = second(pe, gp, gpp)
    h_rr = (
        a_rr / denom
        - (np.outer(a_r, b_r) + np.outer(b_r, a_r)) / denom**2
        - a_til * b_rr / denom**2
        + 2.0 * a_til * np.outer(b_r, b_r) / denom**3
    )
    return c, g, h_rr


def soft_ranks(graph, node, params):
    """Soft ranks of every neighbor of ``node``, in edge order."""
    _check_params(graph, params)
    r = graph.distance[graph.edges_of(node)]
    return _soft_ranks_from_distances(r, params)


def dynamic_cutoff(graph, params):
    """Dynamic cutoff c_v for every node, with per-edge ranks and weights.

    Empty neighborhoods get exactly c_v = h.  Edges with r_uv <= c of their
    destination are marked as kept.
    """
    _check_params(graph, params)
    from ._kernels import cutoff_kernel

    cutoffs, _ = cutoff_kernel(
        graph.offsets,
        graph.distance,
        params.h,
        params.alpha,
        params.envelope.n,
        params.weight.mu,
        params.weight.sigma,
        params.epsilon,
        False,
    )
    ranks = np.empty(graph.n_edges)
    weights = np.empty(graph.n_edges)
    pe_all = np.asarray(envelope(graph.distance / params.h, params.envelope))
    for v in range(graph.n_atoms):
        sel = graph.edges_of(v)
        rv = _soft_ranks_from_distances(graph.distance[sel], params)
        ranks[sel] = rv
        weights[sel] = np.asarray(gauss_weight(rv, params.weight)) * pe_all[sel]
    kept = graph.distance <= cutoffs[graph.dst]
    return CutoffResult(np.asarray(cutoffs), ranks, weights, kept)


def cutoff_distance_gradients(graph, params):
    """Cutoffs plus dc_dst/dr per edge, the raw material for force chains."""
    _check_params(graph, params)
    from ._kernels import cutoff_kernel

    cutoffs, edge_grad = cutoff_kernel(
        graph.offsets,
        graph.distance,
        params.h,
        params.alpha,
        params.envelope.n,
        params.weight.mu,
        params.weight.sigma,
        params.epsilon,
        True,
    )
    return np.asarray(cutoffs), np.asarray(edge_grad)


def _accumulate_grad(graph, v, edge_grad, out):
    sel = graph.edges_of(v)
    center = np.zeros(3)
    for k in range(sel.start, sel.stop):
        contrib = edge_grad[k] * graph.unit[k]
        t = int(graph.src[k])
        if t != v:
            key = (v, t)
            out[key] = out.get(key, np.zeros(3)) + contrib
            center -= contrib
        # self-image edges: moving v moves both endpoints, net zero
    out[(v, v)] = out.get((v, v), np.zeros(3)) + center


def cutoff_gradient(graph, params):
    """Analytic gradient of every c_v with respect to every participating
    atom, including the center atom (chain rule through all distances)."""
    _, edge_grad = cutoff_distance_gradients(graph, params)
    grad = {}
    for v in range(graph.n_atoms):
        grad.setdefault((v, v), np.zeros(3))
        _accumulate_grad(graph, v, edge_grad, grad)
    return CutoffDerivatives(grad=grad, hess={})


def cutoff_hessian_blocks(graph, params, node):
    """Same-atom 3x3 Hessian blocks of c_node for every participating atom.

    Assembled from distance-space second derivatives:
        H_t = sum_{k,l} (d2c/dr_k dr_l) s_k s_l u_k u_l^T
            + sum_k (dc/dr_k) s_k^2 (I - u_k u_k^T) / r_k
    with s_k = +1 when atom t is the edge's source, -1 when it is the
    center, and 0 for self-image edges (which are translation invariant).
    """
    _check_params(graph, params)
    v = int(node)
    sel = graph.edges_of(v)
    r = graph.distance[sel]
    _, g, h_rr = _node_cutoff(r, params, order=2)
    units = graph.unit[sel]
    srcs = graph.src[sel]

    blocks = {}
    atoms = sorted(set(int(t) for t in srcs) | {v})
    eye = np.eye(3)
    for t in atoms:
        sign = np.where(srcs == t, 1.0, 0.0) - (1.0 if t == v else 0.0)
        active = np.nonzero(sign != 0.0)[0]
        if len(active) == 0:
            blocks[t] = np.zeros((3, 3))
            continue
        su = sign[active, None] * units[active]
        block = su.T @ h_rr[np.ix_(active, active)] @ su
        for k in active:
            proj = (eye - np.outer(units[k], units[k])) / r[k]
            block = block + g[k] * (sign[k] ** 2) * proj
        blocks[t] = block
    return blocks


def cutoff_hessian(graph, params, node, atom):
    """Analytic 3x3 block of second derivatives of c_node in atom ``atom``."""
    blocks = cutoff_hessian_blocks(graph, params, node)
    atom = int(atom)
    if atom not in blocks:
        raise ValueError(f"atom {atom} does not participate in node {node}")
    return blocks[atom]


def naive_max_neighbor_cutoff(graph, n_max):
    """Non-smooth baseline: truncate each node at its n_max nearest neighbors.

    The cutoff is the midpoint between the n_max-th and (n_max+1)-th
    neighbor distances (h when the degree is at most n_max).  Ranks are the
    integer distance-ascending positions; weights are kept indicators.  No
    derivatives are offered: downstream consumers treat these cutoffs as
    constants, which is exactly what makes the baseline non-smooth.
    """
    n_max = int(n_max)
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    cutoffs = np.full(graph.n_atoms, graph.h)
    ranks = np.empty(graph.n_edges)
    for v in range(graph.n_atoms):
        sel = graph.edges_of(v)
        m = sel.stop - sel.start
        ranks[sel] = np.arange(m, dtype=np.float64)
        if m > n_max:
            r = graph.distance[sel]
            cutoffs[v] = 0.5 * (r[n_max - 1] + r[n_max])
    kept = graph.distance <= cutoffs[graph.dst]
    return CutoffResult(cutoffs, ranks, kept.astype(np.float64), kept)


def rank_parity(graph, params, node):
    """Pairs (true rank, soft rank) for the neighbors of ``node``.

    True rank is the position in distance-ascending order; rows are sorted
    by true rank.  Returns an (m, 2) array.
    """
    ranks = soft_ranks(graph, node, params)
    true = np.arange(len(ranks), dtype=np.float64)
    return np.column_stack([true, ranks])
