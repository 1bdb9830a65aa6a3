from enum import Enum


class OutputFormat(Enum):
    TABLE = "TABLE"
    JSON = "JSON"
