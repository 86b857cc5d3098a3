"""Decorated dual graph of the embedded resolution of a standard-form curve.

The resolution is toric: at P0 = [0:0:1] (chart coordinates x, y) the fan is
subdivided so that it contains the ray (t, u); at P1 = [1:0:0] (chart
coordinates z, y) so that it contains (t, t-u).  A ray (p, q) is the monomial
valuation with v(first coordinate) = p, v(y) = q.  Nothing happens at
[0:1:0], where the lines x = 0 and z = 0 already cross transversally.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from math import gcd
from typing import Iterable, Optional

from .errors import DegenerateCone, HyperplaneArrangement, InternalInconsistency, InvalidGraph
from .standardform import StandardFormData

Ray = tuple[int, int]


@dataclass(frozen=True)
class ResNode:
    id: str
    kind: str  # "exceptional" | "strict_line" | "strict_branch"
    N: int
    nu: int
    ray: Optional[Ray] = None
    anchor: Optional[str] = None
    kappa: Optional[int] = None
    label: str = ""


@dataclass(frozen=True)
class ResolutionGraph:
    nodes: tuple[ResNode, ...]
    edges: tuple[tuple[str, str], ...]
    d: int
    n_exceptional: int
    e_id: Optional[str] = None
    e_prime_id: Optional[str] = None
    _index: dict = field(default=None, compare=False, repr=False)  # type: ignore[assignment]

    def __post_init__(self) -> None:
        object.__setattr__(self, "_index", {n.id: n for n in self.nodes})
        if len(self._index) != len(self.nodes):
            raise InvalidGraph("duplicate node ids")
        seen = set()
        for a, b in self.edges:
            if a == b or a not in self._index or b not in self._index:
                raise InvalidGraph(f"bad edge {a}-{b}")
            key = frozenset((a, b))
            if key in seen:
                raise InvalidGraph(f"repeated edge {a}-{b}")
            seen.add(key)
        if self.d < 1:
            raise InvalidGraph("degree must be positive")

    def node(self, node_id: str) -> ResNode:
        return self._index[node_id]

    def neighbors(self, node_id: str) -> list[str]:
        out = [b for a, b in self.edges if a == node_id] + [a for a, b in self.edges if b == node_id]
        return sorted(out, key=self._order)

    def _order(self, node_id: str) -> int:
        return next(i for i, n in enumerate(self.nodes) if n.id == node_id)

    def valence(self, node_id: str) -> int:
        return sum(node_id in e for e in self.edges)

    def replace_node(self, node_id: str, **changes) -> "ResolutionGraph":
        nodes = tuple(replace(n, **changes) if n.id == node_id else n for n in self.nodes)
        return replace(self, nodes=nodes)


def _det(v: Ray, w: Ray) -> int:
    return v[0] * w[1] - v[1] * w[0]


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    if b == 0:
        return (abs(a), 1 if a >= 0 else -1, 0)
    g, x, y = _ext_gcd(b, a % b)
    return g, y, x - (a // b) * y


def hj_rays(v: Ray, w: Ray) -> list[Ray]:
    """Interior rays of the minimal regular subdivision of cone(v, w), ordered from v to w."""
    if gcd(*v) != 1 or gcd(*w) != 1:
        raise DegenerateCone(f"rays {v}, {w} must be primitive")
    D = _det(v, w)
    if D == 0:
        raise DegenerateCone(f"rays {v}, {w} are dependent")
    sgn = 1 if D > 0 else -1

    def det(a: Ray, b: Ray) -> int:
        return sgn * _det(a, b)

    rays: list[Ray] = []
    cur = v
    while det(cur, w) > 1:
        # a lattice point p with det(cur, p) = 1, then slid along cur into the cone
        _, s, r = _ext_gcd(cur[0], cur[1])
        p0 = (-r * sgn, s * sgn)
        dcw = det(cur, w)
        k = (det(p0, w) % dcw - det(p0, w)) // dcw
        p = (p0[0] + k * cur[0], p0[1] + k * cur[1])
        if det(cur, p) != 1 or not 0 < det(p, w) < dcw:
            raise InternalInconsistency("continued fraction step failed")
        rays.append(p)
        cur = p
    return rays


def _chain(anchor: str, end0: Ray, mid: Ray, end1: Ray) -> list[Ray]:
    return [end0] + hj_rays(end0, mid) + [mid] + hj_rays(mid, end1) + [end1]


def _fan_kappa(prev: Ray, cur: Ray, nxt: Ray) -> int:
    s = (prev[0] + nxt[0], prev[1] + nxt[1])
    if _det(s, cur) != 0:
        raise InternalInconsistency(f"fan relation fails at {cur}")
    k = s[0] // cur[0] if cur[0] else s[1] // cur[1]
    if (k * cur[0], k * cur[1]) != s:
        raise InternalInconsistency(f"fan relation is not integral at {cur}")
    return k


def _to_global(anchor: str, ray: Ray) -> Ray:
    """P^2 fan with u_x = (1,0), u_y = (0,1), u_z = (-1,-1)."""
    p, q = ray
    return (p, q) if anchor == "P0" else (-p, q - p)


def closed_form_E(sf: StandardFormData) -> tuple[int, int]:
    return sf.t * sf.u * sf.sum_b + sf.t * sf.a1 + sf.u * sf.a2, sf.t + sf.u


def closed_form_E_prime(sf: StandardFormData) -> tuple[int, int]:
    t, u = sf.t, sf.u
    return t * (t - u) * sf.sum_b + t * sf.a3 + (t - u) * sf.a2, 2 * t - u


def _ray_id(anchor: str, ray: Ray) -> str:
    return f"{anchor}({ray[0]},{ray[1]})"


def build_resolution_graph(sf: StandardFormData) -> ResolutionGraph:
    if sf.u == 0:
        raise HyperplaneArrangement("u = 0: no pencil to resolve")
    t, u, sb = sf.t, sf.u, sf.sum_b
    chains = {
        "P0": _chain("P0", (1, 0), (t, u), (0, 1)),
        "P1": _chain("P1", (1, 0), (t, t - u), (0, 1)),
    }
    first_coeff = {"P0": sf.a1, "P1": sf.a3}
    branch_slope = {"P0": u, "P1": t - u}
    line_of_end0 = {"P0": "Ex", "P1": "Ez"}

    nodes: list[ResNode] = [
        ResNode("Ex", "strict_line", sf.a1, 1, label="x"),
        ResNode("Ey", "strict_line", sf.a2, 1, label="y"),
        ResNode("Ez", "strict_line", sf.a3, 1, label="z"),
    ]
    nodes += [ResNode(f"G{q + 1}", "strict_branch", bq, 1, label=f"branch {q + 1}") for q, bq in enumerate(sf.b)]
    edges: list[tuple[str, str]] = [("Ex", "Ez")]
    exc: dict[str, ResNode] = {}
    for anchor, rays in chains.items():
        ids = [line_of_end0[anchor]] + [_ray_id(anchor, r) for r in rays[1:-1]] + ["Ey"]
        for i, r in enumerate(rays[1:-1], start=1):
            p, q = r
            N = first_coeff[anchor] * p + sf.a2 * q + sb * min(t * q, branch_slope[anchor] * p)
            kappa = _fan_kappa(rays[i - 1], r, rays[i + 1])
            exc[ids[i]] = ResNode(ids[i], "exceptional", N, p + q, r, anchor, kappa)
        edges += list(zip(ids[:-1], ids[1:]))

    e_id = _ray_id("P0", (t, u))
    ep_id = _ray_id("P1", (t, t - u))
    for q in range(sf.m):
        edges += [(e_id, f"G{q + 1}"), (ep_id, f"G{q + 1}")]

    # load relation at E and E' (they carry the branches); must agree with the fan
    provisional = {n.id: n for n in nodes} | exc
    for node_id in (e_id, ep_id):
        node = exc[node_id]
        load = sum(provisional[b].N for a, b in edges if a == node_id) + sum(
            provisional[a].N for a, b in edges if b == node_id
        )
        if load % node.N:
            raise InternalInconsistency(f"load relation not integral at {node_id}")
        if load // node.N != node.kappa:
            raise InternalInconsistency(f"load relation and fan relation disagree at {node_id}")

    # lines: the global fan of the blown-up P^2; branches are fibres of the pencil
    g0 = [_to_global("P0", r) for r in chains["P0"]]
    g1 = [_to_global("P1", r) for r in chains["P1"]]
    line_kappa = {
        "Ex": _fan_kappa(g0[1], g0[0], g1[0]),
        "Ez": _fan_kappa(g1[1], g1[0], g0[0]),
        "Ey": _fan_kappa(g0[-2], g0[-1], g1[-2]),
    }
    nodes = [replace(n, kappa=line_kappa[n.id]) if n.kind == "strict_line" else replace(n, kappa=0) for n in nodes]

    ordered = nodes + [exc[k] for k in sorted(exc, key=lambda s: (s[:2], exc[s].ray))]
    g = ResolutionGraph(tuple(ordered), tuple(edges), sf.d, len(exc), e_id, ep_id)

    if (g.node(e_id).N, g.node(e_id).nu) != closed_form_E(sf):
        raise InternalInconsistency("numerical data of E differs from the closed form")
    if (g.node(ep_id).N, g.node(ep_id).nu) != closed_form_E_prime(sf):
        raise InternalInconsistency("numerical data of E' differs from the closed form")
    return g


def alpha_terms(g: ResolutionGraph) -> dict[str, Fraction]:
    """alpha_j = nu_j - (3/d) N_j; non-divisor lines (N = 0) come out as 1."""
    return {n.id: n.nu - Fraction(3 * n.N, g.d) for n in g.nodes}


@dataclass(frozen=True)
class IdentityReport:
    """`failures` covers the unconditional identities; adjacent alpha = 0 pairs are listed
    apart because their absence is only guaranteed under the vanishing hypotheses."""

    passed: bool
    failures: tuple[str, ...]
    checked: int
    adjacent_zero_pairs: tuple[tuple[str, str], ...] = ()


def verify_graph_identities(g: ResolutionGraph, *, extended: bool = True) -> IdentityReport:
    """Load and adjunction identities, alpha_E + alpha_E' = 0, chi count; also lists adjacent alpha = 0 pairs.

    With `extended`, adjunction kappa*alpha = sum alpha is also checked on 2-valent
    strict nodes whose kappa is known.
    """
    alpha = alpha_terms(g)
    failures: list[str] = []
    checked = 0
    for n in g.nodes:
        nb = [g.node(k) for k in g.neighbors(n.id)]
        if n.kind == "exceptional":
            checked += 1
            if n.kappa is None:
                failures.append(f"{n.id}: kappa missing")
                continue
            if n.kappa * n.N != sum(m.N for m in nb):
                failures.append(f"{n.id}: kappa*N != sum of neighbour N")
            if len(nb) == 2:
                if n.kappa * n.nu != sum(m.nu for m in nb):
                    failures.append(f"{n.id}: kappa*nu != sum of neighbour nu")
                if n.kappa * alpha[n.id] != sum(alpha[m.id] for m in nb):
                    failures.append(f"{n.id}: kappa*alpha != sum of neighbour alpha")
        elif extended and n.kappa is not None and len(nb) == 2:
            checked += 1
            if n.kappa * alpha[n.id] != sum(alpha[m.id] for m in nb):
                failures.append(f"{n.id}: adjunction kappa*alpha != sum alpha")
    zero_pairs = tuple((a, b) for a, b in g.edges if alpha[a] == 0 and alpha[b] == 0)
    if g.e_id is not None and g.e_prime_id is not None:
        checked += 1
        if alpha[g.e_id] + alpha[g.e_prime_id] != 0:
            failures.append("alpha_E + alpha_E' != 0")
    chi_f0 = 3 + g.n_exceptional
    if 2 * len(g.nodes) - len(g.edges) != chi_f0:
        failures.append("chi bookkeeping: sum of strata does not give chi(F0) with chi(complement) = 0")
    return IdentityReport(not failures, tuple(failures), checked, zero_pairs)


def two_conics_fixture() -> ResolutionGraph:
    """Two conics meeting in a single point; four blow-ups separate them."""
    data = [("E1", 2, 2), ("E2", 4, 3), ("E3", 6, 4), ("E4", 8, 5)]
    edges = (("E1", "E2"), ("E2", "E3"), ("E3", "E4"), ("E4", "C1"), ("E4", "C2"))
    strict = [ResNode("C1", "strict_branch", 1, 1, label="conic 1"), ResNode("C2", "strict_branch", 1, 1, label="conic 2")]
    Ns = {k: N for k, N, _ in data} | {"C1": 1, "C2": 1}
    nodes = []
    for k, N, nu in data:
        load = sum(Ns[b] for a, b in edges if a == k) + sum(Ns[a] for a, b in edges if b == k)
        if load % N:
            raise InternalInconsistency(f"fixture load relation not integral at {k}")
        nodes.append(ResNode(k, "exceptional", N, nu, kappa=load // N))
    return ResolutionGraph(tuple(nodes + strict), edges, 4, 4)


def graph_to_dict(g: ResolutionGraph) -> dict:
    alpha = alpha_terms(g)
    return {
        "d": g.d,
        "n_exceptional": g.n_exceptional,
        "E": g.e_id,
        "E_prime": g.e_prime_id,
        "nodes": [
            {
                "id": n.id,
                "kind": n.kind,
                "N": n.N,
                "nu": n.nu,
                "kappa": n.kappa,
                "ray": list(n.ray) if n.ray else None,
                "anchor": n.anchor,
                "alpha": alpha[n.id],
            }
            for n in g.nodes
        ],
        "edges": [list(e) for e in g.edges],
    }


def graph_to_dot(g: ResolutionGraph) -> str:
    alpha = alpha_terms(g)
    shape = {"exceptional": "ellipse", "strict_line": "box", "strict_branch": "diamond"}
    lines = ["graph resolution {"]
    for n in g.nodes:
        label = f"{n.id}\\n(N,nu)=({n.N},{n.nu})\\nalpha={alpha[n.id]}"
        if n.kappa is not None:
            label += f"\\nkappa={n.kappa}"
        lines.append(f'  "{n.id}" [shape={shape[n.kind]}, label="{label}"];')
    for a, b in g.edges:
        lines.append(f'  "{a}" -- "{b}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def node_ids(g: ResolutionGraph, kind: str) -> Iterable[str]:
    return [n.id for n in g.nodes if n.kind == kind]
