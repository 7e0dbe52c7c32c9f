from enum import Enum


class FieldKindEnum(str, Enum):
    vdp_outer = "vdp_outer"
    vdp_inner = "vdp_inner"
    vdp_inner_eps = "vdp_inner_eps"
    brusselator_outer = "brusselator_outer"
    brusselator_inner = "brusselator_inner"
    linear_test = "linear_test"
    user_polynomial = "user_polynomial"
