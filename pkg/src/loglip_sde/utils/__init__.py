# -*- coding: utf-8 -*-
"""utils"""

import collections.abc
import copy

from .protocol import get_criteria, get_experiment_defaults, get_protocol

__all__ = [
    "get_protocol",
    "get_criteria",
    "get_experiment_defaults",
    "update_dict",
]


def update_dict(d, u):
    """update dict by another dict, update include all hierarchy
    return the update dict instead of change the input dict"""
    ret = copy.deepcopy(d)
    for k, v in u.items():
        if isinstance(v, collections.abc.Mapping):
            ret[k] = update_dict(ret.get(k, {}), v)
        else:
            ret[k] = v
    return ret
