from .grid_search import *
