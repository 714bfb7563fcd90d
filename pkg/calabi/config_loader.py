"""
calabi/config_loader.py
Simple utility functions to load configuration.
"""

import json
import logging
from pathlib import Path
from typing import Any, Dict, Optional, Type, TypeVar

from pydantic import BaseModel

from calabi.consts import CONFIG_PATH, CONFIG_ROOT_KEY

DEFAULT_CONFIG_PATH = CONFIG_PATH

logger = logging.getLogger(__name__)

ConfigT = TypeVar("ConfigT", bound=BaseModel)


def load_calabi_config(config_path: Path | str | None = DEFAULT_CONFIG_PATH) -> Dict[str, Any]:
    """
    Loads the full configuration dictionary from JSON.
    """
    if config_path is None:
        config_path = DEFAULT_CONFIG_PATH
    path = Path(config_path)
    if not path.exists():
        raise FileNotFoundError(f"Config file not found at: {path}")

    with open(path, "r", encoding="utf-8") as f:
        return json.load(f)


def get_module_config(full_config: Dict[str, Any], module_path: str) -> Dict[str, Any]:
    """
    Helper to extract a specific module's settings from the full config dict.
    """
    runtime_modules = full_config.get(CONFIG_ROOT_KEY, {})

    if module_path in runtime_modules:
        return runtime_modules[module_path]

    logger.warning(f"Config not found for '{module_path}', using defaults")
    return {}


def module_settings(
    schema: Type[ConfigT],
    module_path: str,
    full_config: Optional[Dict[str, Any]] = None,
) -> ConfigT:
    """
    Validate one module block against its schema.
    Falls back to the schema defaults when no config dict is given.
    """
    if full_config is None:
        return schema()
    return schema(**get_module_config(full_config, module_path))
