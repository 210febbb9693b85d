from .analysis import *
from .matrix_status import *
