from .run_report import RunReport
from .writers import to_jsonable, dumps, write_json, write_csv, write_profile_svg

__all__ = [
    'RunReport',
    'to_jsonable',
    'dumps',
    'write_json',
    'write_csv',
    'write_profile_svg',
]
