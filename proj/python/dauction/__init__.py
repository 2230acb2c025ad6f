"""Double-auction clearing policies, market simulation and experiments."""

from ._dauction import (
    AuctionError,
    IntervalMissing,
    InvalidArgument,
    MatchingSet,
    MatchPair,
    NoCross,
    OrderBook,
    ParseError,
    Shout,
    Side,
    TooLarge,
    Trade,
    UniformInapplicable,
    UnknownTrader,
    clear,
    efficiency_report,
    experiment,
    is_fair,
    is_orderly,
    is_valid_matching,
    make_fair,
    make_orderly,
    me_match,
    me_price_interval,
    me_quantity,
    mtheta_match,
    mtheta_quantity,
    mv_get_q,
    mv_get_q_polls,
    mv_match,
    oracle_max_reported_profit,
    oracle_max_volume,
    price_matching,
    reported_profit,
    simulate,
)

__all__ = [name for name in dir() if not name.startswith("_")]
