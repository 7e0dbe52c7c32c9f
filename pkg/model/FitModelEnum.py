from enum import Enum


class FitModelEnum(str, Enum):
    inv_sqrt_n = "sqrt"
    inv_cbrt_n = "cbrt"
