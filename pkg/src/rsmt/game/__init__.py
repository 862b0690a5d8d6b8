from .attacks import (
    ALL_VARIANTS,
    CATALOG,
    AttackCatalogEntry,
    BlockChannels,
    LengthTamper,
    MaskFraming,
    PassiveGuess,
    RandomGuessStrategy,
    SubstituteShares,
    SwapHalf,
    TagFraming,
    catalog_for,
    simulate_sender,
)
from .bounds import (
    BoundError,
    required_delta_rss,
    required_ell_p1,
    required_ell_p2,
    required_ell_p3,
    required_ell_pd,
    required_ell_pd_multi,
    required_ell_rss,
)
from .nash import CSV_COLUMNS, ReportRow, nash_catalog_check
from .play import (
    GameStats,
    estimate_utility,
    outcome_of,
    play_game,
    run_trials,
    trial_seed,
    utilities_of,
)
from .utility import (
    Outcome,
    UtilityError,
    UtilityTable,
    WITNESS_BASE,
    derive_u_values,
    witness_table,
)
