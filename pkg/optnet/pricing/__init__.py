"""Ground-truth label generators and their validation oracles."""

from optnet.pricing.black_scholes import (
    bs_scaled_call,
    bs_vega_scaled,
    implied_vol,
    intrinsic_value,
)
from optnet.pricing.heston import heston_char_fn, heston_cos_call, heston_cos_call_batch
from optnet.pricing.monte_carlo import mc_heston_oracle
from optnet.pricing.transforms import TIME_VALUE_FLOOR, time_value_forward, time_value_inverse
from optnet.pricing.types import BsInputs, CosSettings, HestonParams

__all__ = [
    "BsInputs",
    "CosSettings",
    "HestonParams",
    "TIME_VALUE_FLOOR",
    "bs_scaled_call",
    "bs_vega_scaled",
    "heston_char_fn",
    "heston_cos_call",
    "heston_cos_call_batch",
    "implied_vol",
    "intrinsic_value",
    "mc_heston_oracle",
    "time_value_forward",
    "time_value_inverse",
]
