import os
import json
import logging
from typing import Any, Dict, List, Union

import pandas as pd


def ensure_parent_dir(path: str) -> None:
    """Create the directory that will hold `path`, if needed."""
    parent = os.path.dirname(os.path.abspath(path))
    if not os.path.exists(parent):
        os.makedirs(parent)
        logging.info(f"Created output directory {parent}")


def read_json(json_file: str) -> Any:
    """
    Read a JSON document.

    Parameters:
        json_file (str): Path to the JSON file.

    Returns:
        Any: The decoded document.
    """
    try:
        with open(json_file, 'r') as f:
            return json.load(f)
    except FileNotFoundError:
        logging.error(f"Input file {json_file} not found")
        raise
    except PermissionError:
        logging.error(f"Permission denied: Cannot read {json_file}")
        raise
    except json.JSONDecodeError as e:
        logging.error(f"{json_file} is not valid JSON: {e}")
        raise ValueError(f"{json_file} is not valid JSON: {e}")


def dumps_report(report: Dict) -> str:
    """Canonical JSON text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def write_json(report: Dict, out_file: Union[str, None]) -> str:
    """
    Write a report as canonical JSON; print it when no output file is given.

    Returns:
        str: The JSON text written.
    """
    text = dumps_report(report)
    if out_file is None:
        print(text, end="")
        return text
    ensure_parent_dir(out_file)
    try:
        with open(out_file, 'w') as f:
            f.write(text)
    except PermissionError:
        logging.error(f"Permission denied: Cannot write {out_file}")
        raise
    logging.info(f"Report written to {out_file}")
    return text


def write_roots_csv(rows: List[Dict[str, float]], out_file: str) -> pd.DataFrame:
    """Write root coordinates as a CSV table with header re,im."""
    df = pd.DataFrame(rows, columns=["re", "im"])
    ensure_parent_dir(out_file)
    df.to_csv(out_file, index=False)
    logging.info(f"{len(df)} root(s) written to {out_file}")
    return df
