# -*- coding: utf-8 -*-
"""Path events: predicates on trajectory nodes and the penalties used to reach them."""

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Optional

import numpy as np


class EventKind(str, Enum):
    TERMINAL_HIT = "terminal_hit"  # |x(T) - target| <= tol
    EXIT_BALL = "exit_ball"  # sup_t |x(t) - x(0)| > radius
    TUBE = "tube"  # sup_t |x(t) - phi(t)| <= delta
    LEVEL_CROSS = "level_cross"  # sup_t <direction, x(t)> >= level
    ALWAYS = "always"  # the whole path space


def _unit(v: np.ndarray) -> np.ndarray:
    norm = np.linalg.norm(v, axis=-1, keepdims=True)
    return np.divide(v, norm, out=np.zeros_like(v), where=norm > 0)


def _latest_argmin(values: np.ndarray) -> int:
    """Index of the minimum, ties resolved toward the latest node."""
    return len(values) - 1 - int(np.argmin(values[::-1]))


@dataclass(frozen=True, eq=False)
class PathEvent:
    """A set of paths, decided from node values alone.

    Parameters by kind: ``terminal_hit`` (``target``, ``tol``), ``exit_ball``
    (``radius``), ``tube`` (``phi`` as an array of node values on the simulation grid or a
    callable of time, ``delta``), ``level_cross`` (``level``, ``direction``, default
    ``e_1``).
    """

    kind: EventKind
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "kind", EventKind(self.kind))
        required = {
            EventKind.TERMINAL_HIT: ("target",),
            EventKind.EXIT_BALL: ("radius",),
            EventKind.TUBE: ("phi", "delta"),
            EventKind.LEVEL_CROSS: ("level",),
            EventKind.ALWAYS: (),
        }[self.kind]
        missing = [name for name in required if name not in self.params]
        if missing:
            raise ValueError(f"event `{self.kind.value}` is missing parameters {missing}")

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "PathEvent":
        data = dict(data)
        return cls(kind=data.pop("kind"), params=data)

    def to_dict(self) -> dict:
        params = {
            key: (value.tolist() if isinstance(value, np.ndarray) else value)
            for key, value in self.params.items()
            if not callable(value)
        }
        return {"kind": self.kind.value, **params}

    def _vector(self, name: str, dim: int, default=None) -> np.ndarray:
        value = self.params.get(name, default)
        vector = np.broadcast_to(np.asarray(value, dtype=float), (dim,))
        return vector

    def _direction(self, dim: int) -> np.ndarray:
        return _unit(self._vector("direction", dim, np.eye(dim)[0]))

    def _phi(self, times: np.ndarray, dim: int) -> np.ndarray:
        phi = self.params["phi"]
        if callable(phi):
            values = np.asarray(phi(times), dtype=float).reshape(len(times), -1)
        else:
            # node values on a uniform grid of [0, T], interpolated to the requested times
            values = np.asarray(phi, dtype=float).reshape(-1, 1 if np.ndim(phi) == 1 else np.shape(phi)[-1])
            if len(values) != len(times):
                nodes = np.linspace(0.0, times[-1], len(values))
                values = np.stack([np.interp(times, nodes, column) for column in values.T], axis=-1)
        return np.broadcast_to(values, (len(times), dim))

    def occurred(self, states: np.ndarray, times: np.ndarray) -> np.ndarray:
        """Event indicator for a batch of paths ``(B, n+1, d)``.

        Exploded rows hold ``inf`` from their exit node on; they leave every ball and every
        tube and never hit a terminal target.
        """
        count, _, dim = states.shape
        finite = np.all(np.isfinite(states), axis=(1, 2))
        p = self.params

        with np.errstate(invalid="ignore"):
            if self.kind is EventKind.ALWAYS:
                return np.ones(count, dtype=bool)
            if self.kind is EventKind.TERMINAL_HIT:
                distance = np.linalg.norm(states[:, -1] - self._vector("target", dim), axis=-1)
                return finite & (distance <= float(p.get("tol", 0.0)))
            if self.kind is EventKind.EXIT_BALL:
                distance = np.linalg.norm(states - states[:, :1], axis=-1)
                return ~finite | np.any(distance > float(p["radius"]), axis=1)
            if self.kind is EventKind.TUBE:
                distance = np.linalg.norm(states - self._phi(times, dim), axis=-1)
                return finite & np.all(distance <= float(p["delta"]), axis=1)
            # LEVEL_CROSS
            projection = np.nan_to_num(states @ self._direction(dim), nan=-np.inf)
            return np.any(projection >= float(p["level"]), axis=1)

    def residual(self, states: np.ndarray, times: np.ndarray) -> float:
        """Distance of one path ``(n+1, d)`` from the event; 0 inside it."""
        gaps = self._gaps(states, times)
        if gaps is None:
            return 0.0
        values, reduce = gaps
        if reduce == "last":
            return float(values[-1])
        return float(values.max() if reduce == "all" else values.min())

    def penalty(self, states: np.ndarray, times: np.ndarray) -> tuple[float, np.ndarray]:
        """Squared-hinge penalty of one path and its gradient with respect to every node.

        ``exit_ball`` and ``level_cross`` penalise the node closest to the event (latest
        node on ties), ``tube`` sums over all nodes.
        """
        grad = np.zeros_like(states)
        gaps = self._gaps(states, times)
        if gaps is None:
            return 0.0, grad
        values, reduce = gaps
        normals = self._normals(states, times)

        if reduce == "all":
            grad = 2 * values[:, None] * normals
            return float(np.sum(values**2)), grad

        k = _latest_argmin(values) if reduce == "any" else len(values) - 1
        grad[k] = 2 * values[k] * normals[k]
        return float(values[k] ** 2), grad

    def _gaps(self, states: np.ndarray, times: np.ndarray) -> Optional[tuple[np.ndarray, str]]:
        """Per-node hinge values and how they combine (``any`` node, ``all`` nodes, ``last``)."""
        dim = states.shape[1]
        p = self.params
        if self.kind is EventKind.ALWAYS:
            return None
        if self.kind is EventKind.TERMINAL_HIT:
            values = np.zeros(len(states))
            values[-1] = max(np.linalg.norm(states[-1] - self._vector("target", dim)) - float(p.get("tol", 0.0)), 0.0)
            return values, "last"
        if self.kind is EventKind.EXIT_BALL:
            distance = np.linalg.norm(states - states[0], axis=-1)
            return np.maximum(float(p["radius"]) - distance, 0.0), "any"
        if self.kind is EventKind.TUBE:
            distance = np.linalg.norm(states - self._phi(times, dim), axis=-1)
            return np.maximum(distance - float(p["delta"]), 0.0), "all"
        projection = states @ self._direction(dim)
        return np.maximum(float(p["level"]) - projection, 0.0), "any"

    def _normals(self, states: np.ndarray, times: np.ndarray) -> np.ndarray:
        """Gradient of every node's hinge value where it is positive."""
        dim = states.shape[1]
        if self.kind is EventKind.TERMINAL_HIT:
            normals = np.zeros_like(states)
            normals[-1] = _unit(states[-1] - self._vector("target", dim))
            return normals
        if self.kind is EventKind.EXIT_BALL:
            normals = -_unit(states - states[0])
            # paths still at the start leave along e_1
            at_start = ~np.any(normals, axis=-1)
            normals[at_start] = -np.eye(dim)[0]
            # the start node is fixed, its gradient is never used
            return normals
        if self.kind is EventKind.TUBE:
            return _unit(states - self._phi(times, dim))
        return -np.broadcast_to(self._direction(dim), states.shape)
