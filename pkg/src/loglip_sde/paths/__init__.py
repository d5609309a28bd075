# -*- coding: utf-8 -*-
"""Time grids, Brownian drivers, controls, trajectories and their serialisation."""

from .brownian import BrownianDriver, brownian_paths, refine_brownian, refine_paths, refine_paths_to, sample_brownian
from .control import Control, energy, random_controls
from .grid import GridPath, TimeGrid, common_grid
from .io import from_bytes, read_csv, to_bytes, write_csv
from .trajectory import ExitRecord, Trajectory, restrict, sup_distance

__all__ = [
    "BrownianDriver",
    "Control",
    "ExitRecord",
    "GridPath",
    "TimeGrid",
    "Trajectory",
    "brownian_paths",
    "common_grid",
    "energy",
    "from_bytes",
    "random_controls",
    "read_csv",
    "refine_brownian",
    "refine_paths",
    "refine_paths_to",
    "restrict",
    "sample_brownian",
    "sup_distance",
    "to_bytes",
    "write_csv",
]
