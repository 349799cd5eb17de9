from .connection import Database, resolve_db_url
from .queries import RunQueries
from .saver import RunSaver

__all__ = ['Database', 'resolve_db_url', 'RunQueries', 'RunSaver']
