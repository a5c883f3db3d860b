"""Exact model of the link-buying network formation game.

Players 0..n-1 each buy a set of links at rational price alpha; the communication
graph is the undirected union of all purchases.  A player's cost is
alpha * (links bought) + sum of hop distances to every other player, with
disconnection costing infinity.  Everything here is exact: alpha is a
`fractions.Fraction`, distances are ints, and infinity is a saturating sentinel,
so equilibrium comparisons never touch floating point.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Union

import numpy as np

UNREACHABLE = -1  # sentinel in distance matrices


class GameError(Exception):
    pass


class ValidationError(GameError):
    pass


class FormatError(GameError):
    """Raised on malformed canonical-format input."""


class Infinity:
    """Signed saturating infinity, totally ordered against exact rationals.

    Disconnected usage costs are +inf; arithmetic saturates (inf - finite = inf,
    finite - inf = -inf, inf - inf = inf by convention: a deviation between two
    disconnected states is never an improvement).
    """

    __slots__ = ("sign",)

    def __init__(self, sign: int):
        self.sign = sign

    def __repr__(self) -> str:
        return "inf" if self.sign > 0 else "-inf"

    def __eq__(self, other) -> bool:
        return isinstance(other, Infinity) and other.sign == self.sign

    def __hash__(self) -> int:
        return hash(("Infinity", self.sign))

    def __lt__(self, other) -> bool:
        if isinstance(other, Infinity):
            return self.sign < other.sign
        return self.sign < 0

    def __le__(self, other) -> bool:
        return self == other or self < other

    def __gt__(self, other) -> bool:
        if isinstance(other, Infinity):
            return self.sign > other.sign
        return self.sign > 0

    def __ge__(self, other) -> bool:
        return self == other or self > other

    def __neg__(self) -> "Infinity":
        return NEG_INF if self.sign > 0 else INF

    def __add__(self, other) -> "Infinity":
        if isinstance(other, Infinity) and other.sign != self.sign:
            raise ArithmeticError("inf + -inf is undefined")
        return self

    __radd__ = __add__

    def __sub__(self, other) -> "Infinity":
        # Saturates: inf - inf = inf (deviating between disconnected states
        # never improves), inf - finite = inf.
        if isinstance(other, Infinity) and other.sign != self.sign:
            return self
        if isinstance(other, Infinity):
            return self
        return self

    def __rsub__(self, other) -> "Infinity":
        return -self


INF = Infinity(1)
NEG_INF = Infinity(-1)

Cost = Union[Fraction, Infinity]


def is_finite(x: Cost) -> bool:
    return not isinstance(x, Infinity)


def fmt_cost(x: Cost) -> str:
    """Render a cost as `p/q`, `inf` or `-inf` (exact, canonical)."""
    if isinstance(x, Infinity):
        return repr(x)
    f = Fraction(x)
    return f"{f.numerator}/{f.denominator}"


def parse_rational(text: str) -> Fraction:
    """Parse `p/q` or a bare integer into an exact Fraction."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise FormatError(f"bad rational {text!r}: {exc}") from None


@dataclass(frozen=True)
class GameConfig:
    """Instance parameters: player count n >= 1 and exact link price alpha > 0."""

    n: int
    alpha: Fraction

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise ValidationError(f"n must be an integer >= 1, got {self.n!r}")
        object.__setattr__(self, "alpha", Fraction(self.alpha))
        if self.alpha <= 0:
            raise ValidationError(f"alpha must be > 0, got {self.alpha}")


@dataclass(frozen=True)
class StrategyVector:
    """Per-player purchase sets; buys[u] is the set of targets u pays for."""

    buys: tuple[frozenset[int], ...]

    @classmethod
    def from_lists(cls, lists: Iterable[Iterable[int]]) -> "StrategyVector":
        return cls(tuple(frozenset(l) for l in lists))

    @property
    def n(self) -> int:
        return len(self.buys)

    def validate(self, n: int) -> None:
        if len(self.buys) != n:
            raise ValidationError(f"strategy vector has {len(self.buys)} players, expected {n}")
        for u, targets in enumerate(self.buys):
            for v in targets:
                if not isinstance(v, int) or not 0 <= v < n:
                    raise ValidationError(f"player {u} buys out-of-range target {v!r}")
                if v == u:
                    raise ValidationError(f"player {u} buys a self-loop")

    def owned_edges(self) -> list[tuple[int, int]]:
        return sorted((u, v) for u, targets in enumerate(self.buys) for v in targets)

    def replace(self, u: int, targets: Iterable[int]) -> "StrategyVector":
        buys = list(self.buys)
        buys[u] = frozenset(targets)
        return StrategyVector(tuple(buys))


def _iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def bfs_distances(adj_mask: tuple[int, ...] | list[int], n: int, src: int) -> list[int]:
    """Hop distances from src over adjacency bitmasks, UNREACHABLE where cut off."""
    dist = [UNREACHABLE] * n
    seen = 1 << src
    frontier = seen
    depth = 0
    while frontier:
        for v in _iter_bits(frontier):
            dist[v] = depth
        nxt = 0
        for v in _iter_bits(frontier):
            nxt |= adj_mask[v]
        frontier = nxt & ~seen
        seen |= nxt
        depth += 1
    return dist


@dataclass(frozen=True, eq=False)
class OwnedGraph:
    """Communication graph with edge ownership and an eager all-pairs distance matrix."""

    n: int
    owned_edges: frozenset[tuple[int, int]]
    adj_mask: tuple[int, ...]
    dist: np.ndarray  # int32 (n, n), UNREACHABLE sentinel

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, OwnedGraph)
            and self.n == other.n
            and self.owned_edges == other.owned_edges
        )

    def __hash__(self) -> int:
        return hash((self.n, self.owned_edges))

    def neighbors(self, v: int) -> list[int]:
        return list(_iter_bits(self.adj_mask[v]))

    def degree(self, v: int) -> int:
        return bin(self.adj_mask[v]).count("1")

    def has_undirected(self, u: int, v: int) -> bool:
        return bool(self.adj_mask[u] >> v & 1)

    def undirected_edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in _iter_bits(self.adj_mask[u]) if u < v]

    def d(self, u: int, v: int) -> int:
        return int(self.dist[u, v])

    def connected(self) -> bool:
        return self.n == 1 or bool((self.dist[0] != UNREACHABLE).all())

    def strategy(self) -> StrategyVector:
        """Extract the purchase sets; inverse of build_graph on ownership pairs."""
        buys: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.owned_edges:
            buys[u].add(v)
        return StrategyVector.from_lists(buys)

    def owner_mask(self, v: int) -> int:
        mask = 0
        for a, b in self.owned_edges:
            if a == v:
                mask |= 1 << b
        return mask


def build_graph(cfg: GameConfig, s: StrategyVector) -> OwnedGraph:
    """Build the communication graph of a strategy vector, distances included."""
    s.validate(cfg.n)
    n = cfg.n
    adj = [0] * n
    for u, targets in enumerate(s.buys):
        for v in targets:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
    dist = np.full((n, n), UNREACHABLE, dtype=np.int32)
    for src in range(n):
        dist[src] = bfs_distances(adj, n, src)
    dist.setflags(write=False)
    return OwnedGraph(
        n=n,
        owned_edges=frozenset((u, v) for u, targets in enumerate(s.buys) for v in targets),
        adj_mask=tuple(adj),
        dist=dist,
    )


def usage_cost(g: OwnedGraph, u: int) -> Cost:
    """Sum of distances from u to everyone else; INF if anyone is unreachable."""
    if not 0 <= u < g.n:
        raise ValidationError(f"player {u} out of range for n={g.n}")
    row = g.dist[u]
    if (row == UNREACHABLE).any():
        return INF
    return Fraction(int(row.sum()))


@dataclass(frozen=True)
class CostReport:
    """Exact per-player and social costs of a built graph."""

    creation: tuple[Fraction, ...]
    usage: tuple[Cost, ...]
    per_player: tuple[Cost, ...]
    social: Cost
    connected: bool


def cost(cfg: GameConfig, g: OwnedGraph) -> CostReport:
    creation = []
    counts = [0] * cfg.n
    for u, _ in g.owned_edges:
        counts[u] += 1
    creation = tuple(cfg.alpha * c for c in counts)
    usage = tuple(usage_cost(g, u) for u in range(cfg.n))
    per_player = tuple(c + d for c, d in zip(creation, usage))
    social: Cost = Fraction(0)
    for p in per_player:
        social = social + p
    return CostReport(
        creation=creation,
        usage=usage,
        per_player=per_player,
        social=social,
        connected=g.connected(),
    )


def player_cost(cfg: GameConfig, g: OwnedGraph, u: int) -> Cost:
    """Cost of a single player without building the full report."""
    bought = sum(1 for a, _ in g.owned_edges if a == u)
    return cfg.alpha * bought + usage_cost(g, u)


# -- canonical text format ---------------------------------------------------
#
# line 1: `ncg 1`
# line 2: `n=<int> alpha=<p>/<q>`   (reduced fraction, q >= 1)
# then one `buy <owner> <target>` line per bought edge, sorted by (owner, target)
# LF endings, no trailing whitespace.  Readers are strict: only canonical bytes
# parse, so round-trips are bit-exact.

MAGIC = "ncg 1"


def to_ncg_text(cfg: GameConfig, s: StrategyVector) -> str:
    a = cfg.alpha
    lines = [MAGIC, f"n={cfg.n} alpha={a.numerator}/{a.denominator}"]
    lines.extend(f"buy {u} {v}" for u, v in s.owned_edges())
    return "\n".join(lines) + "\n"


def from_ncg_text(text: str) -> tuple[GameConfig, StrategyVector]:
    if not text.endswith("\n"):
        raise FormatError("missing trailing newline")
    lines = text.split("\n")[:-1]
    if len(lines) < 2:
        raise FormatError("truncated file")
    if lines[0] != MAGIC:
        raise FormatError(f"bad magic line {lines[0]!r}, expected {MAGIC!r}")
    header = lines[1].split(" ")
    if len(header) != 2 or not header[0].startswith("n=") or not header[1].startswith("alpha="):
        raise FormatError(f"bad header line {lines[1]!r}")
    try:
        n = int(header[0][2:])
    except ValueError:
        raise FormatError(f"bad n in header {lines[1]!r}") from None
    alpha_txt = header[1][len("alpha=") :]
    if "/" not in alpha_txt:
        raise FormatError("alpha must be written as p/q")
    alpha = parse_rational(alpha_txt)
    if f"{alpha.numerator}/{alpha.denominator}" != alpha_txt:
        raise FormatError(f"alpha {alpha_txt!r} is not in reduced canonical form")
    try:
        cfg = GameConfig(n=n, alpha=alpha)
    except ValidationError as exc:
        raise FormatError(str(exc)) from None
    buys: list[set[int]] = [set() for _ in range(n)]
    prev: tuple[int, int] | None = None
    for line in lines[2:]:
        parts = line.split(" ")
        if len(parts) != 3 or parts[0] != "buy":
            raise FormatError(f"bad edge line {line!r}")
        try:
            u, v = int(parts[1]), int(parts[2])
        except ValueError:
            raise FormatError(f"bad edge line {line!r}") from None
        if not (0 <= u < n and 0 <= v < n) or u == v:
            raise FormatError(f"edge {u}->{v} out of range or self-loop")
        if prev is not None and (u, v) <= prev:
            raise FormatError(f"edge lines not in canonical sorted order at {line!r}")
        prev = (u, v)
        buys[u].add(v)
    s = StrategyVector.from_lists(buys)
    s.validate(n)
    return cfg, s


def read_ncg(path) -> tuple[GameConfig, StrategyVector]:
    with open(path, "r", encoding="ascii", newline="") as fh:
        return from_ncg_text(fh.read())


def write_ncg(path, cfg: GameConfig, s: StrategyVector) -> None:
    with open(path, "w", encoding="ascii", newline="") as fh:
        fh.write(to_ncg_text(cfg, s))
