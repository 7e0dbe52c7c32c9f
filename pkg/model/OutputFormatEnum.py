from enum import Enum


class OutputFormatEnum(str, Enum):
    json = "json"
    csv = "csv"
    svg = "svg"
    md = "md"
