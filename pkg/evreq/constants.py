# Reports. The ordering NULL < LOW < HIGH is used wherever a canonical
# representative is needed.
NULL = 0
LOW = 1
HIGH = 2
REPORTS = (NULL, LOW, HIGH)
REPORT_NAMES = ('null', 'low', 'high')

# First- and second-period observations share the report codes: an observed
# state w is encoded as 1 + w.
NO_SIGNAL = 0
SAW0 = 1
SAW1 = 2
OBSERVATIONS = (NO_SIGNAL, SAW0, SAW1)
OBSERVATION_NAMES = ('none', 'saw0', 'saw1')

CONCEAL = 0
REVEAL = 1

# Mechanism bit layout (little-endian).
SIGMA1_BIT = 0
SIGMA2_OFFSET = 1
XHAT_OFFSET = 4
MECHANISM_BITS = 13
N_MECHANISMS = 1 << MECHANISM_BITS

# Region labels.
REGION_BOTH_LOW = 'BothLow'
REGION_CASE_I = 'Intermediate_CaseI'
REGION_CASE_II = 'Intermediate_CaseII'
REGION_BOUNDARY = 'Intermediate_Boundary'
REGION_HIGH_HIGH = 'HighHigh'
REGION_PI_ZERO = 'PiZero'
REGION_UNCOVERED = 'Uncovered'
REGIONS = (REGION_BOTH_LOW, REGION_CASE_I, REGION_CASE_II, REGION_BOUNDARY,
           REGION_HIGH_HIGH, REGION_PI_ZERO, REGION_UNCOVERED)

# Testing regimes of the no-agency baseline.
BASELINE_ALWAYS = 'always'
BASELINE_AFTER_NULL = 'after_null'
BASELINE_NEVER = 'never'

# Optimization modes.
MODE_STRATEGIC = 'strategic'
MODE_NO_AGENCY = 'no_agency'
MODES = (MODE_STRATEGIC, MODE_NO_AGENCY)

# Incentive constraints.
OB_SIGMA1_0 = 'OB_sigma1_0'
OB_SIGMA1_1 = 'OB_sigma1_1'
OB_SIGMA2_1 = 'OB_sigma2(r1)=1'
OB_SIGMA2_0 = 'OB_sigma2(r1)=0'
FD_OMEGA1 = 'FD_omega1'
FD_R1_OMEGA2 = 'FD_r1_omega2'

# Exit statuses used by the command-line interface.
EXIT_OK = 0
EXIT_INVALID = 1
EXIT_MISMATCH = 2

# Artifact formats.
FORMAT_JSON = 'json'
FORMAT_MSGPACK = 'msgpack'
FORMATS = (FORMAT_JSON, FORMAT_MSGPACK)
