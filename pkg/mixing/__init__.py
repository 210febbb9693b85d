from .probability import *
from .distribution import *
from .documents import *
from .sequence import *
from .engine import *
from .sampler import *
from .composers import *
from .constructors import *
