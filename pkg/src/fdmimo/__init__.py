"""Link-level simulator for shared-antenna full-duplex massive MU-MIMO.

The package estimates, by Monte Carlo, how residual self-interference and
total interference-plus-noise powers fall with the base-station antenna
count under ZF and MRT/MRC linear processing, and numerically verifies the
almost-sure convergence statistics that explain the decay.
"""

__version__ = "0.1.0"

from .channel import (  # noqa: F401
    SCHEME_MRT,
    SCHEME_ZF,
    ChannelRealization,
    SystemParams,
    sample_realization,
)
from .errors import (  # noqa: F401
    ConfigError,
    FdmimoError,
    ParameterError,
    ShapeError,
    SingularMatrixError,
)
from .montecarlo import (  # noqa: F401
    PowerRow,
    PowerTable,
    SweepConfig,
    find_crossing,
    run_sweep,
)
from .numerics import RngStream, cscg_sample  # noqa: F401
from .processing import (  # noqa: F401
    TermBreakdown,
    build_precoder,
    build_receiver,
    downlink_terms,
    normalization_factor,
    processing_gain,
    uplink_terms,
)
