import os
from pathlib import Path

from src.errors import SimulationError


def ensure_parent(path) -> Path:
    path = Path(path)
    if path.parent and str(path.parent) not in ("", "."):
        os.makedirs(path.parent, exist_ok=True)
    return path


def save_triplets(path, rows):
    """Write (rf_chain, antenna, pair_index) switch triplets as text."""
    try:
        path = ensure_parent(path)
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            f.write("rf_chain,antenna,pair_index\n")
            for r in rows:
                f.write(f"{r[0]},{r[1]},{r[2]}\n")
    except OSError as e:
        raise SimulationError(f"cannot write {path}: {e}") from e
    return path
