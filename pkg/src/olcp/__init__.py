"""On-line chain partitioning of semi-orders presented as unit intervals."""
from .adversary import Adversary, IllegalObservation, QueryAfterDone, Stage
from .arena import (
    AdversaryStuck,
    GameResult,
    GameStep,
    IllegalMove,
    SearchBudgetExceeded,
    batch_run,
    min_forced_chains,
    play_game,
    replay,
)
from .order import (
    ChainPartition,
    Relation,
    compare,
    format_rat,
    is_chain,
    offline_optimal_partition,
    parse_rat,
    validate_partition,
    width,
)
from .partitioners import BestFit, FirstFit, RandomLegal, Scripted, ScriptExhausted, make_algorithm

__version__ = "0.1.0"

__all__ = [
    "Adversary", "IllegalObservation", "QueryAfterDone", "Stage",
    "AdversaryStuck", "GameResult", "GameStep", "IllegalMove", "SearchBudgetExceeded",
    "batch_run", "min_forced_chains", "play_game", "replay",
    "ChainPartition", "Relation", "compare", "format_rat", "is_chain",
    "offline_optimal_partition", "parse_rat", "validate_partition", "width",
    "BestFit", "FirstFit", "RandomLegal", "Scripted", "ScriptExhausted", "make_algorithm",
]
