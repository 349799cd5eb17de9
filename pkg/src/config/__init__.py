"""설정 모듈"""

from .presets import MODEL_PRESETS, preset_names, preset_params
from .settings import (
    RunConfig, build_config, merge_config, load_toml, load_env, resolve_model,
    default_output_dir, default_db_url, default_log_level
)

__all__ = [
    'MODEL_PRESETS',
    'preset_names',
    'preset_params',
    'RunConfig',
    'build_config',
    'merge_config',
    'load_toml',
    'load_env',
    'resolve_model',
    'default_output_dir',
    'default_db_url',
    'default_log_level',
]
