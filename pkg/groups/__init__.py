from .finite_group import *
from .finite_field import *
from .permutation_groups import *
from .matrix_groups import *
from .subgroups import *
from .actions import *
from .catalogue import *
from .group_spec import *
