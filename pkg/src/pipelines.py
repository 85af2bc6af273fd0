import logging
import math

from src import settings
from src.errors import DropRow
from src.items import BOUND_SUFFIX, BOUND_TRIAL, ResultRow
from src.scheduler.config import MODES


class ResultPipeline:
    """Validates and normalizes result rows before they reach a table"""

    def __init__(self):
        self.logger = logging.getLogger(__name__)
        self.rows_processed = 0

    def process_row(self, row: ResultRow) -> ResultRow:
        mode = (row.mode or "").strip().lower()
        if not mode:
            raise DropRow(f"Missing mode in trial {row.trial}")
        base = mode[:-len(BOUND_SUFFIX)] if mode.endswith(BOUND_SUFFIX) else mode
        if base not in MODES:
            raise DropRow(f"Unknown mode '{row.mode}'")
        if mode.endswith(BOUND_SUFFIX) and row.trial != BOUND_TRIAL:
            raise DropRow(f"Bound row for {mode} carries trial {row.trial}")

        for name in ("snr_db", "sum_rate", "mean_users", "cpps_max_error"):
            value = getattr(row, name)
            if value is None or not math.isfinite(value):
                raise DropRow(f"Non-finite {name} in {mode} trial {row.trial}")
        if row.sum_rate < 0:
            raise DropRow(f"Negative sum rate in {mode} trial {row.trial}")

        row.mode = mode
        row.snr_db = float(row.snr_db)
        row.trial = int(row.trial)
        row.rank = int(row.rank)
        row.s_tilde = int(row.s_tilde)
        row.ps_pairs = int(row.ps_pairs)

        # Log progress
        self.rows_processed += 1
        if self.rows_processed % settings.PROGRESS_EVERY == 0:
            self.logger.info(f"Processed {self.rows_processed} rows")

        return row
