from dataclasses import asdict, dataclass, fields


@dataclass
class ResultRow:
    """One (mode, snr, trial) simulation result"""
    mode: str
    snr_db: float
    trial: int

    # Rates
    sum_rate: float
    mean_users: float

    # Structure of the stacked digital precoder
    rank: int
    s_tilde: int

    # Analog network
    ps_pairs: int
    cpps_max_error: float

    def to_dict(self):
        return asdict(self)


RESULT_COLUMNS = [f.name for f in fields(ResultRow)]

# Leading columns of a sweep table
SWEEP_COLUMNS = ["axis", "axis_value"]

BOUND_SUFFIX = "-bound"

# Trial index carried by bound rows
BOUND_TRIAL = -1
