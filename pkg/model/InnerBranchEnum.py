from enum import Enum


class InnerBranchEnum(str, Enum):
    plus = "plus"
    minus = "minus"
