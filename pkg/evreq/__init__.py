__version__ = '0.1.0'

from .constants import N_MECHANISMS

from .agent import AgentStrategy
from .agent import PrivateState
from .agent import best_response
from .agent import exhaustive_optimum
from .agent import obedient_strategy
from .core import Mechanism
from .core import Params
from .core import classify_region
from .core import decode
from .core import encode
from .core import thresholds
from .exceptions import ConfigError
from .exceptions import EvreqError
from .exceptions import ImproperlyConfigured
from .exceptions import MechanismError
from .exceptions import NotForcingError
from .exceptions import NotICError
from .exceptions import ParameterError
from .mechanisms import baseline_mechanism
from .mechanisms import ic_check
from .mechanisms import optimal_closed_form
from .mechanisms import revelation_transform
from .outcomes import play
from .outcomes import principal_payoff
from .search import brute_force_optimum
from .search import enumerate_all
from .search import scan_mechanisms
from .search import verify_claims
