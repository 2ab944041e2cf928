from scipy.constants import c as SPEED_OF_LIGHT

UWB_BANDWIDTH = 499.2e6

# one accumulator sample, roughly 1 ns or 30 cm of path length
DEFAULT_DELTA_T = 1.0016e-9
DEFAULT_K_TAPS = 992

LOT_SAMPLE_PITCH = 0.05
MIN_ELLIPSE_SAMPLES = 360
RAISED_COSINE_ROLLOFF = 0.5
PULSE_SUPPORT_WIDTHS = 3.0

CIR_FILE_MAGIC = "cirsense v1"
REPORT_COLUMNS = ("epoch", "mode", "lot", "d_r_est", "amplitude")
AMBIGUOUS_PREFIX = "ambiguous:"
