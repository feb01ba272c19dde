import os
import logging
from importlib.resources import files
from typing import Any, Dict, List, Union

from ruamel.yaml import YAML


def default_config_path() -> str:
    """Path of the config.yaml shipped with the package."""
    return str(files('lpdelta').joinpath('config.yaml'))


def load_config(config_file: str) -> Union[Dict, None]:
    """
    Load configuration settings from a YAML file using ruamel.yaml.

    Parameters:
        config_file (str): Path to the YAML configuration file.

    Returns:
        Union[Dict, None]: Dictionary containing the configuration settings, or None if an error occurs.
    """
    logging.info(f"Attempting to load configuration from {config_file}")

    try:
        yaml = YAML(typ='safe')
        with open(config_file, 'r') as cf:
            config_data = yaml.load(cf)
        logging.info(f"Successfully loaded configuration from {config_file}")
        return config_data or {}
    except FileNotFoundError:
        logging.error(f"Configuration file {config_file} not found")
    except PermissionError:
        logging.error(f"Permission denied: Cannot read {config_file}")
    except Exception as e:
        logging.error(f"Failed to load configuration from {config_file}. Exception: {e}")
    return None


def resolve_config_path(config_file: Union[str, None], project_path: Union[str, None] = None) -> str:
    """
    The config file to use: `config_file` resolved against `project_path`
    when given, otherwise the packaged default.
    """
    if not config_file:
        return default_config_path()
    if project_path and not os.path.isabs(config_file):
        return os.path.join(os.path.abspath(project_path), config_file)
    return config_file


def load_config_with_defaults(config_file: Union[str, None] = None,
                              project_path: Union[str, None] = None) -> Dict:
    """
    The packaged defaults overlaid with the user's config file. A config file
    that cannot be read is logged and the defaults are used.
    """
    defaults = load_config(default_config_path()) or {}
    if not config_file:
        return defaults
    path = resolve_config_path(config_file, project_path)
    user = load_config(path)
    if user is None:
        logging.warning(f"Falling back to packaged defaults; {path} could not be read")
        return defaults
    return merge_nested_dict(defaults, user)


def merge_nested_dict(base: Dict, override: Dict) -> Dict:
    """Copy of `base` with `override` merged in, recursing into nested mappings."""
    merged = dict(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = merge_nested_dict(merged[key], value)
        else:
            merged[key] = value
    return merged


def get_nested(config: Dict, dotted_key: str, default: Any = None) -> Any:
    """config['a']['b'] for 'a.b', or `default` when any level is missing."""
    node = config
    for key in dotted_key.split('.'):
        if not isinstance(node, dict) or key not in node:
            return default
        node = node[key]
    return node


# Update nested keys in a dictionary
def update_nested_dict(d, keys: List[str], value):
    for key in keys[:-1]:
        d = d.setdefault(key, {})
    d[keys[-1]] = value


def parse_config_value(raw: str) -> Any:
    """Interpret a command-line value the way YAML would (numbers, lists, booleans)."""
    yaml = YAML(typ='safe')
    return yaml.load(raw)


def update_config_value(config_file: str, variable: str, new_value: Any) -> bool:
    """
    Update a specific (dotted) variable in the config file, keeping comments.

    Parameters:
        config_file (str): Path of the config file to update.
        variable (str): The variable to update, e.g. 'search.budget'.
        new_value (Any): The new value to set for the variable.

    Returns:
        bool: True if the update was successful, False otherwise.
    """
    try:
        yaml = YAML()
        yaml.preserve_quotes = True
        with open(config_file, 'r') as f:
            config_data = yaml.load(f)

        update_nested_dict(config_data, variable.split('.'), new_value)

        with open(config_file, 'w') as f:
            yaml.dump(config_data, f)

        logging.info(f"Updated {variable} in config file to {new_value}.")
        return True
    except Exception as e:
        logging.error(f"Failed to update config file: {e}")
        return False
