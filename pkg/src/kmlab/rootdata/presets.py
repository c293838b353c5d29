"""Preset catalog of generalized Cartan matrices."""

import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Optional

import yaml

from kmlab.config import load_config
from kmlab.errors import NotGCM, UnknownPreset
from kmlab.rootdata.gcm import GCM, validate_gcm

logger = logging.getLogger(__name__)

BUNDLED_CATALOG = Path(__file__).with_name("presets.yaml")


def catalog_path() -> Path:
    """Resolve the catalog location, honouring KMLAB_PRESETS."""
    override = load_config()["presets_path"]
    return Path(override) if override else BUNDLED_CATALOG


def load_catalog(path: Optional[Path] = None) -> Dict[str, Dict[str, Any]]:
    """Read the YAML preset catalog.

    Args:
        path: Catalog file; defaults to :func:`catalog_path`

    Returns:
        Mapping of preset name to its raw entry
    """
    path = path or catalog_path()
    with open(path, "r", encoding="utf-8") as f:
        data = yaml.safe_load(f) or {}
    logger.debug("loaded %d presets from %s", len(data), path)
    return {str(name): entry for name, entry in data.items()}


def list_presets(path: Optional[Path] = None) -> List[str]:
    return list(load_catalog(path))


def get_preset(name: str, path: Optional[Path] = None) -> GCM:
    """Validate and return a named preset.

    Raises:
        UnknownPreset: If the name is not in the catalog
        NotGCM: If the catalog entry is malformed
    """
    catalog = load_catalog(path)
    if name not in catalog:
        raise UnknownPreset(name, sorted(catalog))
    entry = catalog[name]
    return validate_gcm(entry["matrix"], entry.get("labels"), name=name)


def load_gcm_file(path: Path) -> GCM:
    """Load a GCM from a JSON or YAML file of the form {"labels": [...], "matrix": [[...]]}."""
    text = Path(path).read_text(encoding="utf-8")
    data = json.loads(text) if Path(path).suffix == ".json" else yaml.safe_load(text)
    if not isinstance(data, dict) or "matrix" not in data:
        raise NotGCM("input must be an object with a 'matrix' field")
    return validate_gcm(data["matrix"], data.get("labels"), name=Path(path).stem)


def resolve_gcm(source: str) -> GCM:
    """Interpret a CLI source: an existing file path, otherwise a preset name."""
    if Path(source).is_file():
        return load_gcm_file(Path(source))
    return get_preset(source)
