"""Kantorovich solver: free norms, optimal couplings and norming functions.

The balanced transport problem between the positive and negative parts of
an element is solved with the transportation simplex on the bipartite graph
supp(lambda+) x supp(lambda-). Degeneracy is removed by Orden's
perturbation (supplies ``a_i + eps``, last demand ``b_n + m*eps``), carried
symbolically as ``(value, eps_coefficient)`` tuples so that every basic
flow stays strictly positive and no pivoting rule can cycle. In exact mode
all data is scaled to integers first and the pivots run on Python ints.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from operator import sub
from typing import Dict, List, Sequence, Tuple

from .free import (
    Coupling,
    DeLeeuwMeasure,
    FreeElement,
    LipschitzFunction,
    Measure,
    jordan_split,
)
from .metric import FiniteMetricSpace, Number


class TransportError(ValueError):
    """Invalid transport problem (unbalanced or negative marginals)."""


@dataclass(frozen=True, eq=False)
class TransportSolution:
    cost: Number
    coupling: Coupling
    potential: LipschitzFunction

    def to_json(self) -> dict:
        from .io import encode_number

        return {
            "cost": encode_number(self.cost),
            "coupling": self.coupling.to_json(),
            "potential": self.potential.to_json(),
        }


# transportation simplex -------------------------------------------------


def _lcm_denominator(values) -> int:
    L = 1
    for v in values:
        L = L * v.denominator // math.gcd(L, v.denominator)
    return L


def transportation_simplex(
    supply: Sequence[Number],
    demand: Sequence[Number],
    cost: Sequence[Sequence[Number]],
    exact: bool,
    tol: float = 1e-12,
):
    """Solve min sum c_ij x_ij over x >= 0 with the given row and column sums.

    Returns ``(flows, u, v)`` where ``flows`` maps cells to positive amounts
    and ``u_i + v_j <= c_ij`` with equality on every cell carrying flow.
    Totals must already be balanced.
    """
    m, n = len(supply), len(demand)
    if m == 0 or n == 0:
        return {}, [0] * m, [0] * n

    if exact:
        sup = [Fraction(a) for a in supply]
        dem = [Fraction(b) for b in demand]
        L = _lcm_denominator(sup + dem)
        C = _lcm_denominator(Fraction(c) for row in cost for c in row)
        a_int = [int(a * L) for a in sup]
        b_int = [int(b * L) for b in dem]
        c_int = [[int(Fraction(c) * C) for c in row] for row in cost]
        flows, u, v = _simplex_core(a_int, b_int, c_int, 0, 0)
        return (
            {cell: Fraction(x, L) for cell, x in flows.items()},
            [Fraction(x, C) for x in u],
            [Fraction(x, C) for x in v],
        )
    sup = [float(a) for a in supply]
    dem = [float(b) for b in demand]
    c = [[float(x) for x in row] for row in cost]
    scale = max(1.0, sum(sup))
    cscale = max([1.0] + [abs(x) for row in c for x in row])
    return _simplex_core(sup, dem, c, tol * scale, tol * cscale)


def _simplex_core(a, b, c, flow_snap, price_tol):
    m, n = len(a), len(b)
    # perturbed quantities as (value, eps-coefficient)
    ra = [(a[i], 1) for i in range(m)]
    rb = [(b[j], 0) for j in range(n)]
    rb[-1] = (b[-1], m)

    flow: Dict[Tuple[int, int], tuple] = {}
    i = j = 0
    cur_a, cur_b = ra[0], rb[0]
    while True:
        # the last row or column absorbs what is left, so float rounding in
        # the totals cannot push the corner rule off the end
        if i == m - 1:
            flow[(i, j)] = cur_b
            for jj in range(j + 1, n):
                flow[(i, jj)] = rb[jj]
            break
        if j == n - 1:
            flow[(i, j)] = cur_a
            for ii in range(i + 1, m):
                flow[(ii, j)] = ra[ii]
            break
        if cur_a < cur_b:
            flow[(i, j)] = cur_a
            cur_b = (cur_b[0] - cur_a[0], cur_b[1] - cur_a[1])
            i += 1
            cur_a = ra[i]
        elif cur_b < cur_a:
            flow[(i, j)] = cur_b
            cur_a = (cur_a[0] - cur_b[0], cur_a[1] - cur_b[1])
            j += 1
            cur_b = rb[j]
        else:
            raise AssertionError("perturbed corner rule hit a tie")
    flow = {cell: _snap(x, flow_snap) for cell, x in flow.items()}
    # row nodes 0..m-1, column nodes m..m+n-1
    adj: List[set] = [set() for _ in range(m + n)]
    for (i, j) in flow:
        adj[i].add(m + j)
        adj[m + j].add(i)

    max_pivots = 50 * (m + n) ** 2 + 1000
    for _ in range(max_pivots):
        u, v = _potentials(adj, c, m, n)
        # pricing: most negative reduced cost
        best = -price_tol
        enter = None
        for i in range(m):
            row = c[i]
            ui = u[i]
            red = list(map(sub, row, v))
            low = min(red)
            r = low - ui
            if r < best:
                best = r
                enter = (i, red.index(low))
        if enter is None:
            break
        ei, ej = enter
        path = _tree_path(adj, ei, m + ej, m)
        # path: [ei, col, row, col, ..., m+ej]; cells alternate -, +, -, ...
        cells = []
        for k in range(len(path) - 1):
            p, q = path[k], path[k + 1]
            cells.append((p, q - m) if p < m else (q, p - m))
        minus = cells[0::2]
        plus = cells[1::2]
        leave = min(minus, key=lambda cell: flow[cell])
        theta = flow[leave]
        for cell in minus:
            x = flow[cell]
            flow[cell] = _snap((x[0] - theta[0], x[1] - theta[1]), flow_snap)
        for cell in plus:
            x = flow[cell]
            flow[cell] = _snap((x[0] + theta[0], x[1] + theta[1]), flow_snap)
        flow[enter] = theta
        del flow[leave]
        li, lj = leave
        adj[li].discard(m + lj)
        adj[m + lj].discard(li)
        adj[ei].add(m + ej)
        adj[m + ej].add(ei)
    else:
        raise RuntimeError("transportation simplex exceeded its pivot budget")

    u, v = _potentials(adj, c, m, n)
    out = {}
    for cell, (val, _) in flow.items():
        if val > flow_snap:
            out[cell] = val
    return out, u, v


def _snap(x, snap):
    if snap and -snap <= x[0] <= snap:
        return (0.0, x[1])
    return x


def _potentials(adj, c, m, n):
    u = [None] * m
    v = [None] * n
    u[0] = 0 * c[0][0]
    stack = [0]
    while stack:
        node = stack.pop()
        if node < m:
            for col in adj[node]:
                j = col - m
                if v[j] is None:
                    v[j] = c[node][j] - u[node]
                    stack.append(col)
        else:
            j = node - m
            for i in adj[node]:
                if u[i] is None:
                    u[i] = c[i][j] - v[j]
                    stack.append(i)
    return u, v


def _tree_path(adj, start, goal, m):
    parent = {start: None}
    stack = [start]
    while stack:
        node = stack.pop()
        if node == goal:
            break
        for nb in adj[node]:
            if nb not in parent:
                parent[nb] = node
                stack.append(nb)
    path = [goal]
    while parent[path[-1]] is not None:
        path.append(parent[path[-1]])
    path.reverse()
    return path


# public operations -------------------------------------------------------


def _check_marginals(alpha: Measure, beta: Measure) -> None:
    if alpha.space != beta.space:
        raise TransportError("marginals live on different spaces")
    if not alpha.is_positive() or not beta.is_positive():
        raise TransportError("marginals must be nonnegative")
    space = alpha.space
    ta, tb = alpha.total(), beta.total()
    if not space.eq(ta, tb, max(abs(ta), abs(tb))):
        raise TransportError(f"unbalanced marginals: totals {ta} and {tb}")


def optimal_coupling(alpha: Measure, beta: Measure) -> TransportSolution:
    """Optimal transport plan from ``alpha`` to ``beta`` with a dual potential.

    The potential ``f`` is 1-Lipschitz, vanishes at the base point and
    satisfies ``sum f dalpha - sum f dbeta = cost``. It is the
    inf-convolution ``min_j (h_j + d(., y_j))`` of the dual values ``h`` on
    supp(beta), so it is defined on every point of the space.
    """
    _check_marginals(alpha, beta)
    space = alpha.space
    src = sorted(alpha.weights)
    dst = sorted(beta.weights)
    d = space.dist
    if not src or not dst:
        zero_f = LipschitzFunction(space, tuple(space.zero() for _ in range(space.n)))
        return TransportSolution(space.zero(), Coupling(space, {}), zero_f)
    supply = [alpha.weights[i] for i in src]
    demand = [beta.weights[j] for j in dst]
    if not space.exact:
        # absorb float rounding in the totals into the last demand
        demand[-1] += sum(supply) - sum(demand)
    cost = [[d[x][y] for y in dst] for x in src]
    flows, _u, v = transportation_simplex(supply, demand, cost, space.exact)
    coupling = Coupling.from_weights(space, {(src[i], dst[j]): w for (i, j), w in flows.items()})
    h = [-vj for vj in v]
    values = [min(h[j] + d[x][y] for j, y in enumerate(dst)) for x in range(space.n)]
    shift = values[space.base]
    potential = LipschitzFunction(space, tuple(val - shift for val in values))
    return TransportSolution(coupling.cost(), coupling, potential)


def free_norm(m: FreeElement) -> Tuple[Number, LipschitzFunction]:
    """Norm of ``m`` in the free space together with a norming function."""
    sol = optimal_coupling(*jordan_split(m))
    return sol.cost, sol.potential


def solve(m: FreeElement) -> TransportSolution:
    return optimal_coupling(*jordan_split(m))


def coupling_to_deleeuw(pi: Coupling) -> DeLeeuwMeasure:
    """mu(x, y) = d(x, y) * pi(x, y) off the diagonal."""
    space = pi.space
    d = space.dist
    return DeLeeuwMeasure.from_weights(
        space, {(x, y): d[x][y] * w for (x, y), w in pi.weights.items() if x != y}
    )


def decompose(m: FreeElement) -> DeLeeuwMeasure:
    """Optimal convex series of molecules for ``m`` with disjoint coordinates."""
    return coupling_to_deleeuw(solve(m).coupling)


def wasserstein1(alpha: Measure, beta: Measure) -> Number:
    return optimal_coupling(alpha, beta).cost


def line_norm(m: FreeElement) -> Number:
    """Free norm on a subset of the real line, as the L1 norm of a step density.

    The element corresponds to the step function whose value on
    (t_k, t_{k+1}) is the cumulative weight up to t_k, the base point
    carrying the balancing weight ``-sum(weights)``.
    """
    space = m.space
    if not space.is_line:
        raise ValueError("line_norm needs a space built from line points")
    t = space.coords
    w = [space.zero()] * space.n
    for i, a in m.weights.items():
        w[i] = a
    w[space.base] = -sum(m.weights.values(), space.zero())
    total = space.zero()
    running = space.zero()
    for k in range(space.n - 1):
        running += w[k]
        total += abs(running) * (t[k + 1] - t[k])
    return total
