from specsetlab.types.config_types import *
from specsetlab.types.geometry_types import *
from specsetlab.types.operator_types import *
from specsetlab.types.report_types import *
from specsetlab.types.tessellation_types import *
