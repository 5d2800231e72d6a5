"""Structural catalog of positive linear maps and their application.

Each map is described by what it does (congruence, Kraus sum, pinching,
normalized trace, nonnegative mixture) rather than by an abstract matrix
representation.  Positivity is a consequence of the structure; unitality is
checked, never assumed.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatchError
from .spectral import SymMatrix, as_sym, op_norm

UNITALITY_TOL = 1e-10


class MapSpec:
    """Base class for structurally described positive linear maps."""

    input_dim: int
    output_dim: int
    label: str

    def apply(self, X: SymMatrix) -> SymMatrix:
        raise NotImplementedError

    def _check_input(self, X: SymMatrix) -> SymMatrix:
        X = as_sym(X)
        if X.dim != self.input_dim:
            raise DimensionMismatchError(
                f"map {self.label!r} expects dim {self.input_dim}, got {X.dim}"
            )
        return X


@dataclass(frozen=True, eq=False)
class IdentityMap(MapSpec):
    dim: int
    label: str = "identity"

    @property
    def input_dim(self) -> int:
        return self.dim

    @property
    def output_dim(self) -> int:
        return self.dim

    def apply(self, X: SymMatrix) -> SymMatrix:
        return self._check_input(X)


@dataclass(frozen=True, eq=False)
class CongruenceMap(MapSpec):
    """X -> V^T X V for a full-column-rank rectangular V."""

    v: np.ndarray
    label: str = "congruence"

    def __post_init__(self):
        v = np.array(self.v, dtype=float)
        if v.ndim != 2 or v.shape[0] < 1 or v.shape[1] < 1:
            raise ValueError("V must be a nonempty 2-d matrix")
        sv = np.linalg.svd(v, compute_uv=False)
        if sv[-1] <= 1e-12 * max(1.0, sv[0]):
            raise ValueError("V must have full column rank")
        v.setflags(write=False)
        object.__setattr__(self, "v", v)

    @property
    def input_dim(self) -> int:
        return self.v.shape[0]

    @property
    def output_dim(self) -> int:
        return self.v.shape[1]

    def apply(self, X: SymMatrix) -> SymMatrix:
        X = self._check_input(X)
        return SymMatrix(self.v.T @ X.data @ self.v)


@dataclass(frozen=True, eq=False)
class KrausSumMap(MapSpec):
    """X -> sum_i V_i^T X V_i with all V_i of equal shape.

    The vertically stacked V_i must have trivial kernel so that positive
    definiteness is preserved.
    """

    vs: tuple
    label: str = "kraus"

    def __post_init__(self):
        vs = tuple(np.array(v, dtype=float) for v in self.vs)
        if not vs:
            raise ValueError("need at least one Kraus term")
        shape = vs[0].shape
        if any(v.ndim != 2 or v.shape != shape for v in vs):
            raise ValueError("all Kraus terms must share one rectangular shape")
        stacked = np.vstack(vs)
        sv = np.linalg.svd(stacked, compute_uv=False)
        if sv[-1] <= 1e-12 * max(1.0, sv[0]):
            raise ValueError("stacked Kraus terms must have full column rank")
        for v in vs:
            v.setflags(write=False)
        object.__setattr__(self, "vs", vs)

    @property
    def input_dim(self) -> int:
        return self.vs[0].shape[0]

    @property
    def output_dim(self) -> int:
        return self.vs[0].shape[1]

    def apply(self, X: SymMatrix) -> SymMatrix:
        X = self._check_input(X)
        acc = np.zeros((self.output_dim, self.output_dim))
        for v in self.vs:
            acc += v.T @ X.data @ v
        return SymMatrix(acc)


@dataclass(frozen=True, eq=False)
class PinchingMap(MapSpec):
    """Block-diagonal pinching for a partition of the index set."""

    blocks: tuple
    label: str = "pinching"
    _mask: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        blocks = tuple(tuple(int(i) for i in b) for b in self.blocks)
        flat = [i for b in blocks for i in b]
        n = len(flat)
        if n == 0 or sorted(flat) != list(range(n)):
            raise ValueError("blocks must partition the index range exactly")
        mask = np.zeros((n, n))
        for b in blocks:
            idx = np.array(b)
            mask[np.ix_(idx, idx)] = 1.0
        mask.setflags(write=False)
        object.__setattr__(self, "blocks", blocks)
        object.__setattr__(self, "_mask", mask)

    @property
    def input_dim(self) -> int:
        return self._mask.shape[0]

    @property
    def output_dim(self) -> int:
        return self._mask.shape[0]

    def apply(self, X: SymMatrix) -> SymMatrix:
        X = self._check_input(X)
        return SymMatrix(X.data * self._mask)


@dataclass(frozen=True, eq=False)
class NormalizedTraceMap(MapSpec):
    """X -> (tr X / n) * I_k."""

    in_dim: int
    out_dim: int
    label: str = "ntrace"

    def __post_init__(self):
        if self.in_dim < 1 or self.out_dim < 1:
            raise ValueError("dimensions must be positive")

    @property
    def input_dim(self) -> int:
        return self.in_dim

    @property
    def output_dim(self) -> int:
        return self.out_dim

    def apply(self, X: SymMatrix) -> SymMatrix:
        X = self._check_input(X)
        value = float(np.trace(X.data)) / self.in_dim
        return SymMatrix(value * np.eye(self.out_dim))


@dataclass(frozen=True, eq=False)
class MixtureMap(MapSpec):
    """Nonnegative combination of maps with matching dimensions.

    Weights need not sum to one: positive linear maps form a cone.
    """

    weights: tuple
    components: tuple
    label: str = "mixture"

    def __post_init__(self):
        weights = tuple(float(w) for w in self.weights)
        components = tuple(self.components)
        if len(weights) != len(components) or not components:
            raise ValueError("need matching, nonempty weights and components")
        if any(w < 0 for w in weights):
            raise ValueError("weights must be nonnegative")
        if sum(weights) <= 0:
            raise ValueError("weights must have positive sum")
        in_dims = {c.input_dim for c in components}
        out_dims = {c.output_dim for c in components}
        if len(in_dims) != 1 or len(out_dims) != 1:
            raise ValueError("components must share input and output dimensions")
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "components", components)

    @property
    def input_dim(self) -> int:
        return self.components[0].input_dim

    @property
    def output_dim(self) -> int:
        return self.components[0].output_dim

    def apply(self, X: SymMatrix) -> SymMatrix:
        X = self._check_input(X)
        acc = np.zeros((self.output_dim, self.output_dim))
        for w, comp in zip(self.weights, self.components):
            acc += w * comp.apply(X).data
        return SymMatrix(acc)


def apply_map(phi: MapSpec, X: SymMatrix) -> SymMatrix:
    """Apply a positive linear map to a symmetric matrix."""
    return phi.apply(X)


@dataclass(frozen=True)
class UnitalityVerdict:
    is_unital: bool
    deviation: float


def check_unital(phi: MapSpec) -> UnitalityVerdict:
    """Measure ||phi(I) - I||_op; unital iff it clears UNITALITY_TOL."""
    image = phi.apply(SymMatrix.identity(phi.input_dim))
    deviation = op_norm(image - SymMatrix.identity(phi.output_dim))
    return UnitalityVerdict(is_unital=deviation <= UNITALITY_TOL, deviation=deviation)


def _labelled(mapobj: MapSpec, label: str) -> MapSpec:
    object.__setattr__(mapobj, "label", label)
    return mapobj


def parse_map(spec: str, dim: int, rng=None) -> MapSpec:
    """Build a map from its CLI token for a given input dimension.

    Vocabulary: ``identity``, ``ntrace:k`` (``ntrace:full`` for k = dim),
    ``congruence:random:RxC``, ``kraus:n``, ``pinching:b1,b2,...`` (block
    sizes), ``mix:w@spec+w@spec``.  Random factors draw from ``rng``.
    """
    name, _, arg = spec.partition(":")
    name = name.strip().lower()
    if name == "identity":
        return IdentityMap(dim)
    if name == "ntrace":
        k = dim if arg.strip().lower() == "full" else int(arg)
        return _labelled(NormalizedTraceMap(dim, k), f"ntrace:{k}")
    if name == "congruence":
        sub, _, shape = arg.partition(":")
        if sub.strip().lower() != "random":
            raise ValueError(f"unknown congruence form {spec!r}")
        if shape:
            rows, _, cols = shape.partition("x")
            r, c = int(rows), int(cols)
        else:
            r, c = dim, dim
        if r != dim:
            raise ValueError(f"congruence rows {r} must equal the instance dim {dim}")
        if rng is None:
            raise ValueError("random congruence map needs an rng")
        v = rng.normal_matrix(r, c)
        return _labelled(CongruenceMap(v), f"congruence:random:{r}x{c}")
    if name == "kraus":
        n = int(arg)
        if rng is None:
            raise ValueError("random kraus map needs an rng")
        vs = tuple(rng.normal_matrix(dim, dim) for _ in range(n))
        return _labelled(KrausSumMap(vs), f"kraus:{n}")
    if name == "pinching":
        if arg.strip().lower() in ("", "halves"):
            first = max(1, dim // 2)
            sizes = [first, dim - first] if dim - first > 0 else [first]
        else:
            sizes = [int(x) for x in arg.split(",")]
        if sum(sizes) != dim:
            raise ValueError(f"pinching block sizes {sizes} must sum to dim {dim}")
        blocks, start = [], 0
        for size in sizes:
            blocks.append(tuple(range(start, start + size)))
            start += size
        return _labelled(PinchingMap(tuple(blocks)), f"pinching:{','.join(str(s) for s in sizes)}")
    if name == "mix":
        weights, comps = [], []
        for part in arg.split("+"):
            w, _, sub = part.partition("@")
            weights.append(float(w))
            comps.append(parse_map(sub, dim, rng))
        return _labelled(MixtureMap(tuple(weights), tuple(comps)), f"mix:{arg}")
    raise ValueError(f"unknown map {spec!r}")


DEFAULT_MAP_SPECS = (
    "identity",
    "ntrace:1",
    "ntrace:full",
    "pinching:halves",
    "congruence:random",
    "kraus:2",
)


def map_catalog(dim: int, rng) -> list[MapSpec]:
    """The default map pool for a given dimension."""
    return [parse_map(spec, dim, rng) for spec in DEFAULT_MAP_SPECS]
