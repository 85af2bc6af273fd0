"""
Result tables on disk (CSV / JSON) and their summaries.
"""
import json
import logging
import math
from pathlib import Path

import numpy as np
import pandas as pd

from src import settings
from src.errors import SimulationError
from src.items import RESULT_COLUMNS, SWEEP_COLUMNS
from src.utils.io import ensure_parent

logger = logging.getLogger(__name__)

FORMATS = ("csv", "json")


def table_columns(table: pd.DataFrame):
    """Fixed column order: sweep columns (if any) then the result row fields."""
    lead = [c for c in SWEEP_COLUMNS if c in table.columns]
    rest = [c for c in table.columns if c not in lead and c not in RESULT_COLUMNS]
    known = [c for c in RESULT_COLUMNS if c in table.columns]
    return lead + known + rest


def emit_csv(table: pd.DataFrame, path):
    try:
        path = ensure_parent(path)
        table[table_columns(table)].to_csv(path, index=False,
                                           float_format=settings.FLOAT_FORMAT,
                                           lineterminator="\n")
    except OSError as e:
        raise SimulationError(f"cannot write {path}: {e}") from e
    logger.info(f"Wrote {len(table)} rows to {path}")
    return path


def _json_value(v):
    if isinstance(v, (float, np.floating)):
        v = float(v)
        if not math.isfinite(v):
            return None
        return float(settings.FLOAT_FORMAT % v)
    if isinstance(v, np.integer):
        return int(v)
    if isinstance(v, np.bool_):
        return bool(v)
    return v


def emit_json(table: pd.DataFrame, path):
    """Records in column order; floats carry 12 significant digits."""
    cols = table_columns(table)
    records = [{c: _json_value(v) for c, v in zip(cols, row)}
               for row in table[cols].itertuples(index=False, name=None)]
    try:
        path = ensure_parent(path)
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            json.dump({"columns": cols, "rows": records}, f, indent=1)
            f.write("\n")
    except OSError as e:
        raise SimulationError(f"cannot write {path}: {e}") from e
    logger.info(f"Wrote {len(table)} rows to {path}")
    return path


def emit(table: pd.DataFrame, path, fmt: str = "csv"):
    if fmt == "csv":
        return emit_csv(table, path)
    if fmt == "json":
        return emit_json(table, path)
    raise SimulationError(f"unknown output format '{fmt}'; expected one of {FORMATS}")


def load_table(path) -> pd.DataFrame:
    """Read a table written by emit_csv or emit_json (chosen by extension)."""
    path = Path(path)
    try:
        if path.suffix.lower() == ".json":
            with open(path, "r", encoding="utf-8") as f:
                doc = json.load(f)
            return pd.DataFrame(doc["rows"], columns=doc["columns"])
        return pd.read_csv(path)
    except OSError as e:
        raise SimulationError(f"cannot read {path}: {e}") from e
    except (ValueError, KeyError) as e:
        raise SimulationError(f"malformed result table {path}: {e}") from e


def summarize(table: pd.DataFrame, by=None) -> pd.DataFrame:
    """Mean, standard error and count of the sum rate per group.

    Groups default to (mode, snr_db), with the sweep axis columns in front
    when present.
    """
    if by is None:
        by = [c for c in SWEEP_COLUMNS if c in table.columns] + ["mode", "snr_db"]
    out_cols = list(by) + ["mean", "stderr", "count"]
    if len(table) == 0:
        return pd.DataFrame(columns=out_cols)
    g = table.groupby(list(by), sort=False)["sum_rate"]
    summary = g.agg(["mean", "std", "count"]).reset_index()
    summary["stderr"] = (summary["std"] / np.sqrt(summary["count"])).fillna(0.0)
    return summary[out_cols]
