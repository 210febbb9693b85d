from .matrix_rep import *
from .rep_mixer import *
