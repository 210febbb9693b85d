from .table import *
from .commands import *
