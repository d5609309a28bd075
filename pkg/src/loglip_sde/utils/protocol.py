from functools import lru_cache
from importlib import resources

import yaml


@lru_cache(maxsize=None)
def _load_protocol(category: str) -> dict:
    import_path = resources.files("loglip_sde.protocol") / f"{category}.yml"
    with import_path.open("rb") as handle:
        return yaml.safe_load(handle)


def get_protocol(category: str, name: str | None = None) -> dict:
    """Load and read protocol from yaml file to a verbose dict
    if name not set, return whole protocol."""
    protocol_dict = _load_protocol(category)

    if name is None:
        return protocol_dict

    try:
        return protocol_dict[name]
    except KeyError as exc:
        raise ValueError(
            f"unknown protocol `{name}` for `{category}`, available: {sorted(protocol_dict)}"
        ) from exc


def get_criteria(section: str) -> dict:
    """Shortcut for one section of the ``default`` numeric criteria."""
    return get_protocol("criteria", "default")[section]


def get_experiment_defaults(protocol: str, kind: str) -> dict:
    """Experiment parameters of ``kind`` under ``protocol``, the ``base`` entry merged underneath."""
    protocol_dict = get_protocol("experiments", protocol)

    return {
        **protocol_dict["base"],
        **protocol_dict.get(kind, dict()),  # if kind not set, simply use base
    }
