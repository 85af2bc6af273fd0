import os

from dotenv import load_dotenv

load_dotenv()

# Desk-scale defaults; full-size runs pass --n-subcarriers 64 --trials 1000.
N_ANTENNAS = 64
N_RF = 16
N_SUBCARRIERS = 16
N_TAPS = 8
K_TOTAL = 16
K_MAX = 8
NOISE_VAR = 1.0
TRIALS = 100
SNR_DB = [0.0, 5.0, 10.0, 15.0, 20.0, 25.0]

N_SCATTERERS = 8
LEMMA2_THETA = 1.5707963267948966

POWER_POLICY = "waterfill"
MODES = ["asb", "hb", "db"]

# Relative singular-value threshold for rank(B^d) in the scheduler.
RANK_TOL = 1e-9

# Concurrent trial workers
WORKERS = int(os.getenv("HBSIM_WORKERS", "1"))

SEED = int(os.getenv("HBSIM_SEED", "2019"))

LOG_LEVEL = os.getenv("HBSIM_LOG_LEVEL", "INFO")

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"

# Log every N processed result rows
PROGRESS_EVERY = 10

FLOAT_FORMAT = "%.12g"
