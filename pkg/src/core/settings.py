# -*- coding: utf-8 -*-
"""
FRLab - Forelli-Rudin 算子实验室
配置加载：内置默认值 < config.json < FRLAB_CONFIG < 命令行参数
"""

import json
import logging
import os

logger = logging.getLogger(__name__)

PROJECT_ROOT = os.path.abspath(os.path.join(os.path.dirname(__file__), '..', '..'))
CONFIG_FILE_PATH = os.path.join(PROJECT_ROOT, 'config.json')
CONFIG_ENV_VAR = 'FRLAB_CONFIG'
LOG_LEVEL_ENV_VAR = 'FRLAB_LOG_LEVEL'

DEFAULT_SETTINGS = {
    "radial_nodes": 16,
    "angular_nodes": 128,
    "mc_samples": 100000,
    "boundary_cutoff": 0.999999,
    "seed": 20240601,
    "series_max_terms": 200000,
    "series_rel_tol": 1e-14,
    "quad_nodes": 64,
    "quad_max_nodes": 4096,
    "quad_rel_tol": 1e-9,
    "workers": 4,
    "radii": [0.9, 0.99, 0.999],
    "region_grid": 101,
    "log_level": "WARNING",
    "output_dir": "",
}


def _load_config(config_path):
    """读取 JSON 配置文件，失败时返回空字典

    Args:
        config_path: 配置文件路径

    Returns:
        dict: 文件中的配置项；文件缺失或无法解析时为空
    """
    if not os.path.exists(config_path):
        logger.warning("Configuration file %s not found. Using default settings.", config_path)
        return {}
    try:
        with open(config_path, 'r', encoding='utf-8') as f:
            loaded = json.load(f)
    except json.JSONDecodeError:
        logger.warning("Error decoding %s. Using default settings.", config_path)
        return {}
    except OSError as e:
        logger.warning("Could not load %s: %s. Using default settings.", config_path, e)
        return {}
    if not isinstance(loaded, dict):
        logger.warning("Configuration file %s does not hold a JSON object; ignored.", config_path)
        return {}
    unknown = sorted(set(loaded) - set(DEFAULT_SETTINGS))
    if unknown:
        logger.warning("Ignoring unknown settings in %s: %s", config_path, ", ".join(unknown))
    return {k: v for k, v in loaded.items() if k in DEFAULT_SETTINGS}


def load_settings(overrides=None, config_path=None):
    """按优先级合并配置

    Args:
        overrides: 命令行等来源的覆盖值，值为 None 的项会被忽略
        config_path: 项目配置文件路径，默认为根目录下的 config.json

    Returns:
        dict: 合并后的完整配置
    """
    settings = dict(DEFAULT_SETTINGS)
    settings.update(_load_config(config_path or CONFIG_FILE_PATH))

    env_path = os.environ.get(CONFIG_ENV_VAR)
    if env_path:
        logger.debug("Loading settings from $%s=%s", CONFIG_ENV_VAR, env_path)
        settings.update(_load_config(env_path))

    if overrides:
        settings.update({k: v for k, v in overrides.items() if v is not None})
    return settings


def configure_logging(level=None):
    """Configure root logging once for command-line use."""
    level = level or os.environ.get(LOG_LEVEL_ENV_VAR) or DEFAULT_SETTINGS["log_level"]
    if isinstance(level, str):
        level = getattr(logging, level.upper(), logging.WARNING)
    logging.basicConfig(
        level=level,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    logging.getLogger().setLevel(level)
