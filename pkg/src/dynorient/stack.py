"""Facade wiring one engine to its rounding, density, and application layers."""

from __future__ import annotations

from fractions import Fraction

from .applications import (
    ForestDecomposition,
    GreedyColoring,
    MatVecProduct,
    MaximalMatching,
)
from .basic import BasicEngine
from .config import OrientationConfig
from .density import DensityEstimator, DensityReport, DensityTracker
from .fast import FastEngine
from .rounding import RoundedOrientation


class OrientationStack:
    """A configured engine plus everything listening to it.

    Updates go through :meth:`insert`/:meth:`delete`; queries are read-only
    and must run between updates (single-writer discipline; the structure
    may move between threads at update boundaries).
    """

    def __init__(self, cfg: OrientationConfig, recorder=None,
                 audit_hooks: bool = False):
        self.cfg = cfg
        engine_cls = FastEngine if cfg.is_fast() else BasicEngine
        self.engine = engine_cls(cfg)
        self.engine.audit_hooks = audit_hooks
        self.rounding = RoundedOrientation(cfg.capacity)
        self.tracker = DensityTracker(cfg)
        self.engine.rounding = self.rounding
        self.engine.degree_listener = self.tracker
        self.engine.recorder = recorder
        self.density = DensityEstimator(self.engine, self.tracker)
        self.matching = None
        self.coloring = None
        self.forests = None
        self.matvec = None

    # -- updates -----------------------------------------------------------

    def insert(self, u: int, v: int) -> list:
        return self.engine.insert(u, v)

    def delete(self, u: int, v: int) -> list:
        return self.engine.delete(u, v)

    def has_edge(self, u: int, v: int) -> bool:
        return self.engine.has_edge(u, v)

    def edge_count(self) -> int:
        return self.engine.m_simple

    # -- queries -------------------------------------------------------------

    def density_value(self) -> Fraction:
        return self.density.value()

    def density_estimate(self) -> Fraction:
        return self.density.estimate()

    def extract_densest(self) -> DensityReport:
        return self.density.extract()

    def max_simple_out_degree(self) -> int:
        return self.rounding.max_simple_out_degree()

    def max_multigraph_out_degree(self) -> int:
        return self.tracker.delta

    # -- applications ---------------------------------------------------------
    # Listeners replay nothing: attach them before the first update.

    def attach_matching(self) -> MaximalMatching:
        if self.matching is None:
            self._check_attachable("matching")
            self.matching = MaximalMatching(self.rounding)
        return self.matching

    def attach_coloring(self) -> GreedyColoring:
        if self.coloring is None:
            self._check_attachable("coloring")
            self.coloring = GreedyColoring(self.rounding)
        return self.coloring

    def attach_forests(self) -> ForestDecomposition:
        if self.forests is None:
            self._check_attachable("forests")
            self.forests = ForestDecomposition(self.rounding)
        return self.forests

    def attach_matvec(self, default_entry: int = 1) -> MatVecProduct:
        if self.matvec is None:
            self._check_attachable("matvec")
            self.matvec = MatVecProduct(self, default_entry)
        return self.matvec

    def _check_attachable(self, name: str) -> None:
        if self.engine.m_simple:
            raise RuntimeError(
                f"attach {name} before the first update; listeners do not "
                "replay history")

    def attached_apps(self) -> list:
        return [a for a in (self.matching, self.coloring, self.forests,
                            self.matvec) if a is not None]
