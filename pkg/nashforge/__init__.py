__version__ = "0.1.0"

from .utils import *
from .algebra import *
from .tasks import *
