from specsetlab.utils.logger import get_logger, set_loglevel
from specsetlab.utils.utils import as_lowercase, digest, get_args
